//! Python bindings: a single `Instance` class wrapping the monoid with
//! methods for the word problem, cancellativity, growth, the group of
//! fractions, the universal-group checks, and the algebra computations.
//! Words cross the boundary as lists of 1-based letters.

use permrel_core::algebra::{is_nilpotent, radical_basis, torsion_group_algebra, AlgebraElement, FieldSpec, Scalar};
use permrel_core::embedding::{injectivity_check, relation_check};
use permrel_core::fractions::{all_torsion_tuples, centrality_check, from_word};
use permrel_core::rewriting::{Budget, GrowthClass, Side};
use permrel_core::{generate_closure, MonoidInstance, Permutation, Word};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Witness tuple (a, b, c, side) for a failed cancellation.
type Witness = (Vec<usize>, Vec<usize>, Vec<usize>, String);

fn field_for(p: Option<u64>) -> PyResult<FieldSpec> {
    match p {
        None => Ok(FieldSpec::Rational),
        Some(p) => FieldSpec::prime(p).map_err(err),
    }
}

/// A monoid defined by permutation relations of abelian type.
#[pyclass]
struct Instance {
    inner: MonoidInstance,
}

#[pymethods]
impl Instance {
    /// Instance(n, l, generators): generators are permutations of
    /// {1, …, n} given as image lists.
    #[new]
    #[pyo3(signature = (n, l, generators, budget=None))]
    fn new(n: usize, l: usize, generators: Vec<Vec<usize>>, budget: Option<u64>) -> PyResult<Self> {
        let gens = generators
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let group = generate_closure(&gens, n).map_err(err)?;
        let mut inner = MonoidInstance::new(group, l).map_err(err)?;
        if let Some(cap) = budget {
            inner = inner.with_budget(Budget {
                class_cap: cap,
                enum_cap: cap,
            });
        }
        Ok(Instance { inner })
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = self.inner.classification();
        let out = PyDict::new(py);
        out.set_item("n", self.inner.n())?;
        out.set_item("l", self.inner.l())?;
        out.set_item("group_order", self.inner.group().elements().len())?;
        out.set_item("is_abelian", c.is_abelian)?;
        out.set_item("is_semiregular", c.is_semiregular)?;
        out.set_item("is_transitive", c.is_transitive)?;
        out.set_item("is_regular", c.is_regular)?;
        out.set_item("orbits", c.orbits.clone())?;
        out.set_item("cancellative", c.is_semiregular && c.is_abelian)?;
        Ok(out)
    }

    fn words_equal(&self, u: Vec<usize>, v: Vec<usize>) -> PyResult<bool> {
        self.inner
            .words_equal(&Word::new(u), &Word::new(v))
            .map_err(err)
    }

    fn canonical_form(&self, w: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self
            .inner
            .canonical_form(&Word::new(w))
            .map_err(err)?
            .letters()
            .to_vec())
    }

    fn equivalence_class(&self, w: Vec<usize>) -> PyResult<Vec<Vec<usize>>> {
        Ok(self
            .inner
            .equivalence_class(&Word::new(w))
            .map_err(err)?
            .members()
            .iter()
            .map(|m| m.letters().to_vec())
            .collect())
    }

    fn count_elements(&self, length: usize) -> PyResult<u64> {
        self.inner.count_elements_of_length(length).map_err(err)
    }

    /// Returns ("linear" | "exponential", [(length, count), …]).
    fn growth(&self, max_length: usize) -> PyResult<(String, Vec<(usize, u64)>)> {
        let report = self.inner.growth_classify(max_length).map_err(err)?;
        let label = match report.classification {
            GrowthClass::Linear => "linear",
            GrowthClass::Exponential => "exponential",
        };
        Ok((label.to_string(), report.counts))
    }

    /// Returns (a, b, c, side) with a·b = a·c (side "left") or b·a = c·a
    /// (side "right") but b ≠ c, or None if no witness exists in bounds.
    fn cancellativity_witness(&self, max_total_length: usize) -> PyResult<Option<Witness>> {
        let witness = self
            .inner
            .cancellativity_witness(max_total_length)
            .map_err(err)?;
        Ok(witness.map(|w| {
            let side = match w.side {
                Side::Left => "left",
                Side::Right => "right",
            };
            (
                w.a.letters().to_vec(),
                w.b.letters().to_vec(),
                w.c.letters().to_vec(),
                side.to_string(),
            )
        }))
    }

    fn factorize<'py>(&self, py: Python<'py>, w: Vec<usize>) -> PyResult<Bound<'py, PyDict>> {
        let f = self.inner.factorize(&Word::new(w)).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("left_rep_word", f.left_rep_word.letters().to_vec())?;
        out.set_item("left_boundary", f.left_boundary.letters().to_vec())?;
        out.set_item("right_boundary", f.right_boundary.letters().to_vec())?;
        out.set_item("right_rep_word", f.right_rep_word.letters().to_vec())?;
        Ok(out)
    }

    /// Normal form in the group of fractions: (power, torsion component
    /// image lists).
    fn fraction(&self, w: Vec<usize>) -> PyResult<(i64, Vec<Vec<usize>>)> {
        let g = from_word(&self.inner, &Word::new(w)).map_err(err)?;
        let torsion = g
            .torsion
            .components()
            .iter()
            .map(|p| p.images().to_vec())
            .collect();
        Ok((g.power, torsion))
    }

    fn group_info<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let tuples = all_torsion_tuples(&self.inner).map_err(err)?;
        let centrality = centrality_check(&self.inner).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("torsion_subgroup_order", tuples.len())?;
        out.set_item("central_element_power", self.inner.l())?;
        out.set_item("central", centrality.central)?;
        out.set_item("central_subgroup_index", centrality.index)?;
        Ok(out)
    }

    #[pyo3(signature = (samples=100_000))]
    fn relation_check<'py>(&self, py: Python<'py>, samples: u64) -> PyResult<Bound<'py, PyDict>> {
        let report = relation_check(&self.inner, samples).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("holds", report.holds)?;
        out.set_item("exhaustive", report.exhaustive)?;
        out.set_item("tuples_checked", report.tuples_checked)?;
        out.set_item("probes", report.probes)?;
        Ok(out)
    }

    fn injectivity_check<'py>(
        &self,
        py: Python<'py>,
        max_length: usize,
    ) -> PyResult<Bound<'py, PyDict>> {
        let report = injectivity_check(&self.inner, max_length).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("injective", report.injective)?;
        out.set_item("max_length", report.max_length)?;
        out.set_item("words_checked", report.words_checked)?;
        Ok(out)
    }

    /// Dimension of the radical of the torsion group algebra over Q
    /// (p=None) or over F_p.
    #[pyo3(signature = (p=None))]
    fn radical_dimension(&self, p: Option<u64>) -> PyResult<usize> {
        let algebra = torsion_group_algebra(&self.inner, field_for(p)?).map_err(err)?;
        Ok(radical_basis(&algebra).map_err(err)?.dimension)
    }

    /// Least k <= max_power with a^k = 0 for a = sum of (word, integer
    /// coefficient) terms, or None. Field as in radical_dimension.
    #[pyo3(signature = (terms, max_power, p=None))]
    fn nilpotent_exponent(
        &self,
        terms: Vec<(Vec<usize>, i64)>,
        max_power: u32,
        p: Option<u64>,
    ) -> PyResult<Option<u32>> {
        let field = field_for(p)?;
        let element = AlgebraElement::from_terms(
            &self.inner,
            field,
            terms
                .into_iter()
                .map(|(w, c)| (Word::new(w), Scalar::from_integer(field, c))),
        )
        .map_err(err)?;
        let report = is_nilpotent(&self.inner, &element, max_power).map_err(err)?;
        Ok(report.nilpotent_at)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n={}, l={}, group_order={})",
            self.inner.n(),
            self.inner.l(),
            self.inner.group().elements().len()
        )
    }
}

#[pymodule]
fn permrel_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    Ok(())
}
