//! Arithmetic in the group of fractions of a monoid whose defining group is
//! transitive abelian (hence regular).
//!
//! Every group element is uniquely `x_1^k · t` with `k` an integer and `t` in
//! the torsion subgroup, which is isomorphic to `H^(l-1)`; a tuple
//! `(h_1, …, h_{l-1})` of group elements encodes `t`. The generator `x_j`
//! maps to `(1, (id, …, id, σ_j))` where `σ_j` is the unique element with
//! `σ_j(j) = 1`. Conjugation by `x_1` permutes the torsion coordinates by a
//! closed form with `c^l = id`, which is what makes `x_1^l` central.

use crate::permgroup::Permutation;
use crate::rewriting::{MonoidInstance, Word};
use num::integer::lcm;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Errors from group-of-fractions arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FractionError {
    #[error(
        "group of fractions requires a transitive abelian defining group \
         (transitive={transitive}, abelian={abelian})"
    )]
    RequiresTransitiveAbelian { transitive: bool, abelian: bool },
    #[error("torsion tuple has {got} components, expected {expected}")]
    TupleLength { got: usize, expected: usize },
    #[error("tuple component {index} is not an element of the defining group")]
    ComponentNotInGroup { index: usize },
    #[error("letter {letter} out of range 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("internal consistency check failed: {0}")]
    InternalCheckFailed(String),
}

/// An element of the torsion subgroup, encoded as `l - 1` elements of the
/// defining group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsionTuple {
    components: Vec<Permutation>,
}

impl TorsionTuple {
    /// Validates length and membership of every component.
    pub fn new(
        inst: &MonoidInstance,
        components: Vec<Permutation>,
    ) -> Result<Self, FractionError> {
        require_transitive_abelian(inst)?;
        if components.len() != inst.l() - 1 {
            return Err(FractionError::TupleLength {
                got: components.len(),
                expected: inst.l() - 1,
            });
        }
        for (index, p) in components.iter().enumerate() {
            if !inst.group().contains(p) {
                return Err(FractionError::ComponentNotInGroup { index });
            }
        }
        Ok(TorsionTuple { components })
    }

    pub fn identity(inst: &MonoidInstance) -> Result<Self, FractionError> {
        require_transitive_abelian(inst)?;
        let id = Permutation::identity(inst.n());
        Ok(TorsionTuple {
            components: vec![id; inst.l() - 1],
        })
    }

    pub fn components(&self) -> &[Permutation] {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(Permutation::is_identity)
    }

    pub fn inverse(&self) -> TorsionTuple {
        TorsionTuple {
            components: self.components.iter().map(Permutation::inverse).collect(),
        }
    }

    /// Multiplicative order: least common multiple of the component orders.
    pub fn order(&self) -> u64 {
        self.components
            .iter()
            .fold(1u64, |acc, p| lcm(acc, p.order()))
    }
}

impl fmt::Debug for TorsionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A group-of-fractions element `x_1^power · torsion`, a unique normal form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FractionElement {
    pub power: i64,
    pub torsion: TorsionTuple,
}

impl FractionElement {
    pub fn identity(inst: &MonoidInstance) -> Result<Self, FractionError> {
        Ok(FractionElement {
            power: 0,
            torsion: TorsionTuple::identity(inst)?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.power == 0 && self.torsion.is_identity()
    }
}

impl fmt::Debug for FractionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x1^{} * {:?}", self.power, self.torsion)
    }
}

/// Order of a group element: finite for pure torsion, infinite otherwise.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ElementOrder {
    Finite(u64),
    Infinite,
}

/// Result of checking centrality of `x_1^l` and the index of the subgroup it
/// generates.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct CentralityReport {
    /// Whether `x_1^l` commutes with every generator.
    pub central: bool,
    /// Index of the central subgroup generated by `x_1^l`, verified by coset
    /// enumeration; equals `l · |H|^(l-1)`.
    pub index: u64,
}

fn require_transitive_abelian(inst: &MonoidInstance) -> Result<(), FractionError> {
    let c = inst.classification();
    if !(c.is_transitive && c.is_abelian) {
        return Err(FractionError::RequiresTransitiveAbelian {
            transitive: c.is_transitive,
            abelian: c.is_abelian,
        });
    }
    debug_assert!(c.is_regular, "transitive abelian groups act regularly");
    Ok(())
}

/// Componentwise product of torsion tuples.
pub fn torsion_multiply(
    inst: &MonoidInstance,
    a: &TorsionTuple,
    b: &TorsionTuple,
) -> Result<TorsionTuple, FractionError> {
    require_transitive_abelian(inst)?;
    debug_assert_eq!(a.components.len(), b.components.len());
    let components = a
        .components
        .iter()
        .zip(&b.components)
        .map(|(p, q)| p.compose(q).expect("components share the group degree"))
        .collect();
    Ok(TorsionTuple { components })
}

/// Conjugate of a torsion tuple by `x_1^exponent`, i.e.
/// `x_1^exponent · t · x_1^(-exponent)`.
///
/// One conjugation step sends `(h_1, …, h_{l-1})` to
/// `(h_{l-1}^{-1}, h_{l-1}^{-1} h_1, …, h_{l-1}^{-1} h_{l-2})`; the step has
/// order dividing `l`, so the exponent is reduced mod `l` first.
pub fn conj_by_x1(
    inst: &MonoidInstance,
    t: &TorsionTuple,
    exponent: i64,
) -> Result<TorsionTuple, FractionError> {
    require_transitive_abelian(inst)?;
    let steps = exponent.rem_euclid(inst.l() as i64) as usize;
    let mut out = t.clone();
    for _ in 0..steps {
        let len = out.components.len();
        let last_inv = out.components[len - 1].inverse();
        let mut components = Vec::with_capacity(len);
        components.push(last_inv.clone());
        for h in &out.components[..len - 1] {
            components.push(last_inv.compose(h).expect("components share the group degree"));
        }
        out = TorsionTuple { components };
    }
    Ok(out)
}

/// Product in the group of fractions:
/// `x_1^a s · x_1^b t = x_1^(a+b) (x_1^(-b) s x_1^b) t`.
pub fn multiply(
    inst: &MonoidInstance,
    g: &FractionElement,
    h: &FractionElement,
) -> Result<FractionElement, FractionError> {
    let shifted = conj_by_x1(inst, &g.torsion, -h.power)?;
    Ok(FractionElement {
        power: g.power + h.power,
        torsion: torsion_multiply(inst, &shifted, &h.torsion)?,
    })
}

/// Inverse in the group of fractions:
/// `(x_1^k t)^{-1} = x_1^(-k) (x_1^k t^{-1} x_1^(-k))`.
pub fn inverse(
    inst: &MonoidInstance,
    g: &FractionElement,
) -> Result<FractionElement, FractionError> {
    Ok(FractionElement {
        power: -g.power,
        torsion: conj_by_x1(inst, &g.torsion.inverse(), g.power)?,
    })
}

/// The image of the generator `x_j`: `(1, (id, …, id, σ_j))`.
pub fn letter_element(inst: &MonoidInstance, letter: usize) -> Result<FractionElement, FractionError> {
    require_transitive_abelian(inst)?;
    if letter < 1 || letter > inst.n() {
        return Err(FractionError::LetterOutOfRange {
            letter,
            n: inst.n(),
        });
    }
    let sigma = inst.sigma_map().expect("regular instances carry a sigma map");
    let mut components = vec![Permutation::identity(inst.n()); inst.l() - 1];
    let last = components.len() - 1;
    components[last] = sigma[letter - 1].clone();
    Ok(FractionElement {
        power: 1,
        torsion: TorsionTuple { components },
    })
}

/// The image of a word under the embedding of the monoid into its group of
/// fractions: the product of its letter images, left to right. Two words map
/// to the same element exactly when they are equal in the monoid.
pub fn from_word(inst: &MonoidInstance, w: &Word) -> Result<FractionElement, FractionError> {
    let mut acc = FractionElement::identity(inst)?;
    for &letter in w.letters() {
        let x = letter_element(inst, letter)?;
        acc = multiply(inst, &acc, &x)?;
    }
    Ok(acc)
}

/// Order of a group element: infinite as soon as the `x_1` exponent is
/// nonzero, otherwise the torsion tuple's order.
pub fn torsion_order(
    inst: &MonoidInstance,
    g: &FractionElement,
) -> Result<ElementOrder, FractionError> {
    require_transitive_abelian(inst)?;
    if g.power != 0 {
        return Ok(ElementOrder::Infinite);
    }
    Ok(ElementOrder::Finite(g.torsion.order()))
}

/// All torsion tuples, ordered lexicographically by component indices in the
/// sorted element list. The identity tuple comes first.
pub fn all_torsion_tuples(inst: &MonoidInstance) -> Result<Vec<TorsionTuple>, FractionError> {
    require_transitive_abelian(inst)?;
    let elements = inst.group().elements();
    let len = inst.l() - 1;
    let mut out = Vec::new();
    let mut indices = vec![0usize; len];
    loop {
        out.push(TorsionTuple {
            components: indices.iter().map(|&i| elements[i].clone()).collect(),
        });
        let mut pos = len;
        loop {
            if pos == 0 {
                debug_assert!(out[0].is_identity(), "identity sorts first");
                return Ok(out);
            }
            if indices[pos - 1] + 1 < elements.len() {
                indices[pos - 1] += 1;
                break;
            }
            indices[pos - 1] = 0;
            pos -= 1;
        }
    }
}

/// Checks that `x_1^l` is central and computes the index of the subgroup it
/// generates by enumerating all `l · |H|^(l-1)` normal forms `(k, t)` with
/// `0 <= k < l` and verifying pairwise that distinct forms lie in distinct
/// cosets.
pub fn centrality_check(inst: &MonoidInstance) -> Result<CentralityReport, FractionError> {
    require_transitive_abelian(inst)?;
    let l = inst.l() as i64;
    let center_candidate = FractionElement {
        power: l,
        torsion: TorsionTuple::identity(inst)?,
    };
    let mut central = true;
    for letter in 1..=inst.n() {
        let x = letter_element(inst, letter)?;
        let left = multiply(inst, &center_candidate, &x)?;
        let right = multiply(inst, &x, &center_candidate)?;
        if left != right {
            central = false;
            break;
        }
    }

    // Coset representatives x_1^k t, 0 <= k < l. Two elements lie in the same
    // coset iff their quotient is x_1^(l m) with trivial torsion.
    let mut reps = Vec::new();
    for k in 0..l {
        for t in all_torsion_tuples(inst)? {
            reps.push(FractionElement { power: k, torsion: t });
        }
    }
    for (i, g) in reps.iter().enumerate() {
        for h in &reps[i + 1..] {
            let d = multiply(inst, g, &inverse(inst, h)?)?;
            let same_coset = d.power.rem_euclid(l) == 0 && d.torsion.is_identity();
            if same_coset {
                return Err(FractionError::InternalCheckFailed(format!(
                    "distinct normal forms {g:?} and {h:?} lie in the same coset"
                )));
            }
        }
    }
    Ok(CentralityReport {
        central,
        index: reps.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::generate_closure;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    fn word(letters: &[usize]) -> Word {
        Word::new(letters.to_vec())
    }

    /// n=3, l=2, cyclic group of order 3.
    fn inst_cyclic3() -> MonoidInstance {
        let group = generate_closure(&[perm(&[2, 3, 1])], 3).unwrap();
        MonoidInstance::new(group, 2).unwrap()
    }

    /// n=4, l=3, cyclic group of order 4.
    fn inst_cyclic4_l3() -> MonoidInstance {
        let group = generate_closure(&[perm(&[2, 3, 4, 1])], 4).unwrap();
        MonoidInstance::new(group, 3).unwrap()
    }

    fn tuple(inst: &MonoidInstance, images: &[&[usize]]) -> TorsionTuple {
        TorsionTuple::new(
            inst,
            images.iter().map(|im| perm(im)).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn power(inst: &MonoidInstance, g: &FractionElement, e: usize) -> FractionElement {
        let mut acc = FractionElement::identity(inst).unwrap();
        for _ in 0..e {
            acc = multiply(inst, &acc, g).unwrap();
        }
        acc
    }

    #[test]
    fn operations_require_transitive_abelian() {
        let sym3 = generate_closure(&[perm(&[2, 1, 3]), perm(&[2, 3, 1])], 3).unwrap();
        let nonabelian = MonoidInstance::new(sym3, 2).unwrap();
        assert!(matches!(
            from_word(&nonabelian, &word(&[1])),
            Err(FractionError::RequiresTransitiveAbelian {
                transitive: true,
                abelian: false,
            })
        ));

        let intransitive =
            MonoidInstance::new(generate_closure(&[perm(&[2, 1, 3])], 3).unwrap(), 2).unwrap();
        assert!(matches!(
            centrality_check(&intransitive),
            Err(FractionError::RequiresTransitiveAbelian {
                transitive: false,
                ..
            })
        ));
    }

    #[test]
    fn tuple_validation() {
        let inst = inst_cyclic4_l3();
        assert_eq!(
            TorsionTuple::new(&inst, vec![Permutation::identity(4)]).err(),
            Some(FractionError::TupleLength { got: 1, expected: 2 })
        );
        assert_eq!(
            TorsionTuple::new(&inst, vec![Permutation::identity(4), perm(&[2, 1, 3, 4])]).err(),
            Some(FractionError::ComponentNotInGroup { index: 1 })
        );
    }

    #[test]
    fn letter_images_cyclic3() {
        let inst = inst_cyclic3();
        let x1 = letter_element(&inst, 1).unwrap();
        assert_eq!(x1.power, 1);
        assert!(x1.torsion.is_identity());
        let x2 = letter_element(&inst, 2).unwrap();
        assert_eq!(x2.torsion, tuple(&inst, &[&[3, 1, 2]]));
        let x3 = letter_element(&inst, 3).unwrap();
        assert_eq!(x3.torsion, tuple(&inst, &[&[2, 3, 1]]));
        assert!(letter_element(&inst, 4).is_err());
    }

    #[test]
    fn from_word_cyclic3_frozen_values() {
        let inst = inst_cyclic3();
        let sigma_sq = tuple(&inst, &[&[3, 1, 2]]);
        let sigma = tuple(&inst, &[&[2, 3, 1]]);

        let g = from_word(&inst, &word(&[1, 2])).unwrap();
        assert_eq!(g.power, 2);
        assert_eq!(g.torsion, sigma_sq);
        assert_eq!(g, from_word(&inst, &word(&[2, 3])).unwrap());

        let h = from_word(&inst, &word(&[2, 1])).unwrap();
        assert_eq!(h.torsion, sigma);
        assert_eq!(h, from_word(&inst, &word(&[1, 3])).unwrap());
        assert_ne!(g, h);

        let p = from_word(&inst, &word(&[1, 1, 2, 2])).unwrap();
        assert_eq!(p, from_word(&inst, &word(&[1, 1, 1, 1])).unwrap());
        assert_eq!(p.power, 4);
        assert!(p.torsion.is_identity());
    }

    #[test]
    fn from_word_matches_word_equality() {
        for inst in [inst_cyclic3(), inst_cyclic4_l3()] {
            for len in 1..=3 {
                let words = crate::rewriting::enumerate_words(inst.n(), len);
                for u in &words {
                    for v in &words {
                        let same_image =
                            from_word(&inst, u).unwrap() == from_word(&inst, v).unwrap();
                        let equal = inst.words_equal(u, v).unwrap();
                        assert_eq!(same_image, equal, "u={u} v={v}");
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_closed_form() {
        let inst = inst_cyclic4_l3();
        // sigma_2 = sigma^3, sigma_3 = sigma^2, sigma_4 = sigma.
        let t = tuple(&inst, &[&[4, 1, 2, 3], &[3, 4, 1, 2]]);
        let once = conj_by_x1(&inst, &t, 1).unwrap();
        assert_eq!(once, tuple(&inst, &[&[3, 4, 1, 2], &[2, 3, 4, 1]]));
        // The step has order l, and negative exponents invert it.
        assert_eq!(conj_by_x1(&inst, &t, 3).unwrap(), t);
        let back = conj_by_x1(&inst, &once, -1).unwrap();
        assert_eq!(back, t);

        // For l = 2 conjugation is componentwise inversion.
        let inst2 = inst_cyclic3();
        let s = tuple(&inst2, &[&[2, 3, 1]]);
        assert_eq!(conj_by_x1(&inst2, &s, 1).unwrap(), s.inverse());
        assert_eq!(conj_by_x1(&inst2, &s, 2).unwrap(), s);
    }

    #[test]
    fn torsion_multiply_is_componentwise() {
        let inst = inst_cyclic4_l3();
        let a = tuple(&inst, &[&[4, 1, 2, 3], &[3, 4, 1, 2]]);
        let b = tuple(&inst, &[&[3, 4, 1, 2], &[2, 3, 4, 1]]);
        let prod = torsion_multiply(&inst, &a, &b).unwrap();
        assert_eq!(prod, tuple(&inst, &[&[2, 3, 4, 1], &[4, 1, 2, 3]]));
    }

    #[test]
    fn multiply_and_inverse_are_group_operations() {
        for inst in [inst_cyclic3(), inst_cyclic4_l3()] {
            let id = FractionElement::identity(&inst).unwrap();
            for len in 0..=3 {
                for w in crate::rewriting::enumerate_words(inst.n(), len) {
                    let g = from_word(&inst, &w).unwrap();
                    let ginv = inverse(&inst, &g).unwrap();
                    assert_eq!(multiply(&inst, &g, &ginv).unwrap(), id, "w={w}");
                    assert_eq!(multiply(&inst, &ginv, &g).unwrap(), id, "w={w}");
                }
            }
        }
    }

    /// In the group of fractions, `x_i^{-1} = x_i^{l-1} x_1^{-l}`.
    #[test]
    fn generator_inverse_identity()  {
        for inst in [inst_cyclic3(), inst_cyclic4_l3()] {
            let l = inst.l();
            let x1 = letter_element(&inst, 1).unwrap();
            let x1_inv_l = inverse(&inst, &power(&inst, &x1, l)).unwrap();
            for j in 1..=inst.n() {
                let xj = letter_element(&inst, j).unwrap();
                let lhs = inverse(&inst, &xj).unwrap();
                let rhs = multiply(&inst, &power(&inst, &xj, l - 1), &x1_inv_l).unwrap();
                assert_eq!(lhs, rhs, "j={j}");
            }
        }
    }

    #[test]
    fn torsion_order_examples() {
        let inst = inst_cyclic3();
        let g = from_word(&inst, &word(&[1, 2])).unwrap();
        assert_eq!(torsion_order(&inst, &g).unwrap(), ElementOrder::Infinite);

        // x_1 x_2 x_1^{-2} is pure torsion of order 3.
        let x1_sq = from_word(&inst, &word(&[1, 1])).unwrap();
        let t = multiply(&inst, &g, &inverse(&inst, &x1_sq).unwrap()).unwrap();
        assert_eq!(t.power, 0);
        assert_eq!(torsion_order(&inst, &t).unwrap(), ElementOrder::Finite(3));

        let id = FractionElement::identity(&inst).unwrap();
        assert_eq!(torsion_order(&inst, &id).unwrap(), ElementOrder::Finite(1));
    }

    #[test]
    fn all_torsion_tuples_enumerates_the_torsion_subgroup() {
        let inst = inst_cyclic4_l3();
        let tuples = all_torsion_tuples(&inst).unwrap();
        assert_eq!(tuples.len(), 16);
        assert!(tuples[0].is_identity());
        let distinct: std::collections::BTreeSet<_> = tuples.iter().cloned().collect();
        assert_eq!(distinct.len(), 16);
    }

    #[test]
    fn centrality_and_index() {
        let report = centrality_check(&inst_cyclic3()).unwrap();
        assert!(report.central);
        assert_eq!(report.index, 6);

        let report = centrality_check(&inst_cyclic4_l3()).unwrap();
        assert!(report.central);
        assert_eq!(report.index, 48);
    }
}
