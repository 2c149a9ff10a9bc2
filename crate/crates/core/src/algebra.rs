//! Semigroup algebras of the monoid and group algebras of its torsion
//! subgroup, over the rationals or a prime field.
//!
//! Monoid algebra elements are finitely supported sums of canonical words;
//! multiplication concatenates and recanonicalizes. For a transitive abelian
//! defining group the torsion subgroup of the group of fractions is finite,
//! and its group algebra is a commutative finite-dimensional algebra whose
//! radical is zero in characteristic zero or coprime characteristic, and is
//! spanned by `(g - 1)h` for `g` in the Sylow p-subgroup otherwise, of
//! dimension `|T| - |T| / |Syl_p(T)|`. The radical computation verifies
//! itself: every spanning vector must be nilpotent and group basis elements
//! must stay non-nilpotent modulo the radical.

use crate::fractions::{
    all_torsion_tuples, from_word, multiply as fraction_multiply, FractionElement, FractionError,
    TorsionTuple,
};
use crate::rewriting::{MonoidInstance, RewriteError, Word};
use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use thiserror::Error;

/// Errors from algebra computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("scalar fields differ: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("division by zero in {0}")]
    DivisionByZero(FieldSpec),
    #[error("denominator {den} vanishes in {field}")]
    DenominatorVanishes { den: i64, field: FieldSpec },
    #[error("vector has {got} coordinates, algebra dimension is {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("maximum power must be at least 1")]
    MaxPowerTooSmall,
    #[error("the multiplication table is not commutative")]
    NotCommutative,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Fraction(#[from] FractionError),
    #[error("internal consistency check failed: {0}")]
    InternalCheckFailed(String),
}

/// Coefficient field: the rationals or a prime field.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// Validates primality.
    pub fn prime(p: u64) -> Result<FieldSpec, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    if p.is_multiple_of(3) {
        return p == 3;
    }
    let mut d = 5u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= p) {
        if p.is_multiple_of(d) || p.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = (base % p) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// A field element: exact rational or residue modulo a prime.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Modular { p: u64, value: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Modular { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn zero(field: FieldSpec) -> Scalar {
        Scalar::from_integer(field, 0)
    }

    pub fn one(field: FieldSpec) -> Scalar {
        Scalar::from_integer(field, 1)
    }

    pub fn from_integer(field: FieldSpec, value: i64) -> Scalar {
        match field {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(value))),
            FieldSpec::Prime(p) => Scalar::Modular {
                p,
                value: value.rem_euclid(p as i64) as u64,
            },
        }
    }

    /// `num / den` in the field; fails when the denominator vanishes.
    pub fn from_ratio(field: FieldSpec, num: i64, den: i64) -> Result<Scalar, AlgebraError> {
        match field {
            FieldSpec::Rational => {
                if den == 0 {
                    return Err(AlgebraError::DenominatorVanishes { den, field });
                }
                Ok(Scalar::Rational(BigRational::new(
                    BigInt::from(num),
                    BigInt::from(den),
                )))
            }
            FieldSpec::Prime(_) => {
                let d = Scalar::from_integer(field, den);
                if d.is_zero() {
                    return Err(AlgebraError::DenominatorVanishes { den, field });
                }
                Scalar::from_integer(field, num).mul(&d.inverse()?)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    fn check_field(&self, other: &Scalar) -> Result<(), AlgebraError> {
        if self.field() != other.field() {
            return Err(AlgebraError::FieldMismatch {
                left: self.field(),
                right: other.field(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.check_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { p, value: a }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    p: *p,
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                }
            }
            _ => unreachable!("fields checked above"),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { p, value } => Scalar::Modular {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
        }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.check_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { p, value: a }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    p: *p,
                    value: (*a as u128 * *b as u128 % *p as u128) as u64,
                }
            }
            _ => unreachable!("fields checked above"),
        })
    }

    pub fn inverse(&self) -> Result<Scalar, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero(self.field()));
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Modular { p, value } => Scalar::Modular {
                p: *p,
                value: pow_mod(*value, p - 2, *p),
            },
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

/// An element of the monoid algebra: a finite sum of canonical words with
/// nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    field: FieldSpec,
    terms: BTreeMap<Word, Scalar>,
}

impl AlgebraElement {
    pub fn zero(field: FieldSpec) -> Self {
        AlgebraElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative identity: the empty word.
    pub fn one(field: FieldSpec) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Word::empty(), Scalar::one(field));
        AlgebraElement { field, terms }
    }

    /// A single term; the word is canonicalized.
    pub fn monomial(
        inst: &MonoidInstance,
        field: FieldSpec,
        word: &Word,
        coefficient: Scalar,
    ) -> Result<Self, AlgebraError> {
        AlgebraElement::from_terms(inst, field, [(word.clone(), coefficient)])
    }

    /// Builds an element from raw terms: canonicalizes each word, merges
    /// duplicates, and drops zero coefficients.
    pub fn from_terms(
        inst: &MonoidInstance,
        field: FieldSpec,
        raw: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Result<Self, AlgebraError> {
        let mut terms: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (word, coefficient) in raw {
            if coefficient.field() != field {
                return Err(AlgebraError::FieldMismatch {
                    left: field,
                    right: coefficient.field(),
                });
            }
            let canon = inst.canonical_form(&word)?;
            let entry = terms
                .entry(canon)
                .or_insert_with(|| Scalar::zero(field));
            *entry = entry.add(&coefficient)?;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(AlgebraElement { field, terms })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Terms keyed by canonical word; every coefficient is nonzero.
    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether all words in the support share one length.
    pub fn is_homogeneous(&self) -> bool {
        let mut lengths = self.terms.keys().map(Word::len);
        match lengths.next() {
            None => true,
            Some(first) => lengths.all(|len| len == first),
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        let mut terms = self.terms.clone();
        for (word, coefficient) in &other.terms {
            let entry = terms
                .entry(word.clone())
                .or_insert_with(|| Scalar::zero(self.field));
            *entry = entry.add(coefficient)?;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(AlgebraElement {
            field: self.field,
            terms,
        })
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, scalar: &Scalar) -> Result<AlgebraElement, AlgebraError> {
        if self.field != scalar.field() {
            return Err(AlgebraError::FieldMismatch {
                left: self.field,
                right: scalar.field(),
            });
        }
        if scalar.is_zero() {
            return Ok(AlgebraElement::zero(self.field));
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| Ok((w.clone(), c.mul(scalar)?)))
            .collect::<Result<_, AlgebraError>>()?;
        Ok(AlgebraElement {
            field: self.field,
            terms,
        })
    }
}

/// Product in the monoid algebra: concatenate supports pairwise and
/// recanonicalize.
pub fn multiply_elements(
    inst: &MonoidInstance,
    a: &AlgebraElement,
    b: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    if a.field != b.field {
        return Err(AlgebraError::FieldMismatch {
            left: a.field,
            right: b.field,
        });
    }
    let mut raw = Vec::with_capacity(a.terms.len() * b.terms.len());
    for (u, alpha) in &a.terms {
        for (v, beta) in &b.terms {
            raw.push((u.concat(v), alpha.mul(beta)?));
        }
    }
    AlgebraElement::from_terms(inst, a.field, raw)
}

/// Splits an element into its homogeneous (fixed word length) parts.
pub fn homogeneous_components(a: &AlgebraElement) -> BTreeMap<usize, AlgebraElement> {
    let mut out: BTreeMap<usize, AlgebraElement> = BTreeMap::new();
    for (word, coefficient) in &a.terms {
        let component = out
            .entry(word.len())
            .or_insert_with(|| AlgebraElement::zero(a.field));
        component
            .terms
            .insert(word.clone(), coefficient.clone());
    }
    out
}

/// Outcome of a bounded nilpotency test.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct NilpotencyReport {
    /// Least `k` with `a^k = 0`, if one exists within the bound.
    pub nilpotent_at: Option<u32>,
    pub checked_up_to: u32,
    /// Whether the element was homogeneous in the word-length grading.
    pub homogeneous: bool,
}

/// Tests whether `a^k = 0` for some `k <= k_max`.
pub fn is_nilpotent(
    inst: &MonoidInstance,
    a: &AlgebraElement,
    k_max: u32,
) -> Result<NilpotencyReport, AlgebraError> {
    if k_max < 1 {
        return Err(AlgebraError::MaxPowerTooSmall);
    }
    let homogeneous = a.is_homogeneous();
    // At the top of iteration k the accumulator holds a^k.
    let mut power = a.clone();
    for k in 1..=k_max {
        if power.is_zero() {
            return Ok(NilpotencyReport {
                nilpotent_at: Some(k),
                checked_up_to: k_max,
                homogeneous,
            });
        }
        if k < k_max {
            power = multiply_elements(inst, &power, a)?;
        }
    }
    Ok(NilpotencyReport {
        nilpotent_at: None,
        checked_up_to: k_max,
        homogeneous,
    })
}

/// An element of the group algebra of the group of fractions: a finite sum
/// of group elements in normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAlgebraElement {
    field: FieldSpec,
    terms: BTreeMap<FractionElement, Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero(field: FieldSpec) -> Self {
        GroupAlgebraElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: FieldSpec, g: FractionElement, coefficient: Scalar) -> Result<Self, AlgebraError> {
        if coefficient.field() != field {
            return Err(AlgebraError::FieldMismatch {
                left: field,
                right: coefficient.field(),
            });
        }
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(g, coefficient);
        }
        Ok(GroupAlgebraElement { field, terms })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<FractionElement, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &GroupAlgebraElement) -> Result<GroupAlgebraElement, AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        let mut terms = self.terms.clone();
        for (g, coefficient) in &other.terms {
            let entry = terms
                .entry(g.clone())
                .or_insert_with(|| Scalar::zero(self.field));
            *entry = entry.add(coefficient)?;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(GroupAlgebraElement {
            field: self.field,
            terms,
        })
    }
}

/// The linear extension of the embedding of the monoid into its group of
/// fractions, applied to a monoid algebra element.
pub fn to_group_algebra(
    inst: &MonoidInstance,
    a: &AlgebraElement,
) -> Result<GroupAlgebraElement, AlgebraError> {
    let mut out = GroupAlgebraElement::zero(a.field);
    for (word, coefficient) in &a.terms {
        let g = from_word(inst, word)?;
        out = out.add(&GroupAlgebraElement::monomial(
            a.field,
            g,
            coefficient.clone(),
        )?)?;
    }
    Ok(out)
}

/// Product in the group algebra.
pub fn group_multiply(
    inst: &MonoidInstance,
    a: &GroupAlgebraElement,
    b: &GroupAlgebraElement,
) -> Result<GroupAlgebraElement, AlgebraError> {
    if a.field != b.field {
        return Err(AlgebraError::FieldMismatch {
            left: a.field,
            right: b.field,
        });
    }
    let mut out = GroupAlgebraElement::zero(a.field);
    for (g, alpha) in &a.terms {
        for (h, beta) in &b.terms {
            let product = fraction_multiply(inst, g, h)?;
            out = out.add(&GroupAlgebraElement::monomial(
                a.field,
                product,
                alpha.mul(beta)?,
            )?)?;
        }
    }
    Ok(out)
}

/// The coefficient of the group identity, the trace form of the group
/// algebra in its regular representation (up to the dimension factor).
pub fn trace_identity(
    inst: &MonoidInstance,
    a: &GroupAlgebraElement,
) -> Result<Scalar, AlgebraError> {
    let identity = FractionElement::identity(inst)?;
    Ok(a.terms
        .get(&identity)
        .cloned()
        .unwrap_or_else(|| Scalar::zero(a.field)))
}

/// The group algebra of the finite torsion subgroup, with the torsion tuples
/// as basis (identity first) and a precomputed multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    field: FieldSpec,
    basis: Vec<TorsionTuple>,
    table: Vec<Vec<usize>>,
    orders: Vec<u64>,
}

/// Builds the group algebra of the torsion subgroup. Requires a transitive
/// abelian defining group.
pub fn torsion_group_algebra(
    inst: &MonoidInstance,
    field: FieldSpec,
) -> Result<FiniteDimAlgebra, AlgebraError> {
    let basis = all_torsion_tuples(inst)?;
    debug_assert!(basis[0].is_identity());
    let index: HashMap<&TorsionTuple, usize> =
        basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut table = Vec::with_capacity(basis.len());
    for a in &basis {
        let mut row = Vec::with_capacity(basis.len());
        for b in &basis {
            let product = crate::fractions::torsion_multiply(inst, a, b)?;
            let k = *index.get(&product).ok_or_else(|| {
                AlgebraError::InternalCheckFailed(
                    "torsion product escaped the enumerated subgroup".into(),
                )
            })?;
            row.push(k);
        }
        table.push(row);
    }
    let orders = basis.iter().map(TorsionTuple::order).collect();
    Ok(FiniteDimAlgebra {
        field,
        basis,
        table,
        orders,
    })
}

impl FiniteDimAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn basis(&self) -> &[TorsionTuple] {
        &self.basis
    }

    /// Index of the group identity in the basis.
    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn is_commutative(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|i| (i + 1..dim).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![Scalar::zero(self.field); self.dim()]
    }

    /// The coordinate vector of the `i`-th basis group element.
    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector();
        v[i] = Scalar::one(self.field);
        v
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<(), AlgebraError> {
        if v.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                got: v.len(),
                expected: self.dim(),
            });
        }
        Ok(())
    }

    /// Product of two coordinate vectors through the multiplication table.
    pub fn multiply_vectors(
        &self,
        a: &[Scalar],
        b: &[Scalar],
    ) -> Result<Vec<Scalar>, AlgebraError> {
        self.check_vector(a)?;
        self.check_vector(b)?;
        let mut out = self.zero_vector();
        for (i, alpha) in a.iter().enumerate() {
            if alpha.is_zero() {
                continue;
            }
            for (j, beta) in b.iter().enumerate() {
                if beta.is_zero() {
                    continue;
                }
                let k = self.table[i][j];
                out[k] = out[k].add(&alpha.mul(beta)?)?;
            }
        }
        Ok(out)
    }

    /// Least `k <= k_max` with `v^k = 0`, if any.
    pub fn is_nilpotent_vector(
        &self,
        v: &[Scalar],
        k_max: u32,
    ) -> Result<Option<u32>, AlgebraError> {
        if k_max < 1 {
            return Err(AlgebraError::MaxPowerTooSmall);
        }
        self.check_vector(v)?;
        // At the top of iteration k the accumulator holds v^k.
        let mut power = v.to_vec();
        for k in 1..=k_max {
            if power.iter().all(Scalar::is_zero) {
                return Ok(Some(k));
            }
            if k < k_max {
                power = self.multiply_vectors(&power, v)?;
            }
        }
        Ok(None)
    }
}

/// A basis of the Jacobson radical in coordinates over the algebra basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RadicalBasis {
    pub dimension: usize,
    /// Reduced row-echelon vectors spanning the radical.
    pub vectors: Vec<Vec<Scalar>>,
}

/// Row space in reduced echelon form over a field.
struct RowSpan {
    width: usize,
    /// Rows sorted by pivot column, each with pivot coefficient 1.
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    fn new(width: usize) -> Self {
        RowSpan {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Remainder of `v` after subtracting its projections on the rows.
    fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        let mut out = v.to_vec();
        for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
            if out[pivot].is_zero() {
                continue;
            }
            let factor = out[pivot].clone();
            for (slot, coeff) in out.iter_mut().zip(row) {
                *slot = slot.sub(&factor.mul(coeff)?)?;
            }
        }
        Ok(out)
    }

    /// Inserts a vector; returns whether the rank grew.
    fn insert(&mut self, v: &[Scalar]) -> Result<bool, AlgebraError> {
        debug_assert_eq!(v.len(), self.width);
        let mut reduced = self.reduce(v)?;
        let Some(pivot) = reduced.iter().position(|c| !c.is_zero()) else {
            return Ok(false);
        };
        let inv = reduced[pivot].inverse()?;
        for slot in &mut reduced {
            *slot = slot.mul(&inv)?;
        }
        // Back-eliminate to keep the rows fully reduced.
        for row in &mut self.rows {
            if row[pivot].is_zero() {
                continue;
            }
            let factor = row[pivot].clone();
            for (slot, coeff) in row.iter_mut().zip(&reduced) {
                *slot = slot.sub(&factor.mul(coeff)?)?;
            }
        }
        let at = self
            .pivots
            .iter()
            .position(|&p| p > pivot)
            .unwrap_or(self.pivots.len());
        self.pivots.insert(at, pivot);
        self.rows.insert(at, reduced);
        Ok(true)
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Computes a basis of the Jacobson radical of the (commutative) torsion
/// group algebra.
///
/// In characteristic zero, or characteristic `p` not dividing the group
/// order, the algebra is semisimple and the radical is zero. Otherwise the
/// radical is spanned by `(g - 1)h` with `g` in the Sylow p-subgroup and `h`
/// in the group, and has dimension `|T| - |T| / |Syl_p(T)|`. The result is
/// verified before returning: the dimension must match, every spanning
/// vector must be nilpotent, and no group basis element may become nilpotent
/// modulo the computed radical.
pub fn radical_basis(algebra: &FiniteDimAlgebra) -> Result<RadicalBasis, AlgebraError> {
    if !algebra.is_commutative() {
        return Err(AlgebraError::NotCommutative);
    }
    let dim = algebra.dim();
    let p = algebra.field.characteristic();
    if p == 0 || !(dim as u64).is_multiple_of(p) {
        return Ok(RadicalBasis {
            dimension: 0,
            vectors: Vec::new(),
        });
    }

    // Sylow p-subgroup: in an abelian group, all elements of p-power order.
    let sylow: Vec<usize> = (0..dim)
        .filter(|&i| {
            let mut order = algebra.orders[i];
            while order.is_multiple_of(p) {
                order /= p;
            }
            order == 1
        })
        .collect();
    let sylow_size = sylow.len() as u64;
    let mut s = sylow_size;
    while s.is_multiple_of(p) {
        s /= p;
    }
    if s != 1
        || !(dim as u64).is_multiple_of(sylow_size)
        || (dim as u64 / sylow_size).is_multiple_of(p)
    {
        return Err(AlgebraError::InternalCheckFailed(format!(
            "Sylow {p}-subgroup size {sylow_size} does not complement the group order {dim}"
        )));
    }

    let mut span = RowSpan::new(dim);
    for &g in &sylow {
        for h in 0..dim {
            let plus = algebra.table[g][h];
            if plus == h {
                continue;
            }
            let mut v = algebra.zero_vector();
            v[plus] = Scalar::one(algebra.field);
            v[h] = Scalar::one(algebra.field).neg();
            span.insert(&v)?;
        }
    }

    let expected = dim - dim / sylow_size as usize;
    if span.rank() != expected {
        return Err(AlgebraError::InternalCheckFailed(format!(
            "radical rank {} does not match |T| - |T|/|Syl_p| = {expected}",
            span.rank()
        )));
    }

    // Every spanning vector is nilpotent...
    let bound = dim as u32 + 1;
    for row in &span.rows {
        if algebra.is_nilpotent_vector(row, bound)?.is_none() {
            return Err(AlgebraError::InternalCheckFailed(
                "radical vector is not nilpotent".into(),
            ));
        }
    }
    // ...and group elements stay invertible modulo the radical.
    for i in 0..dim {
        let basis_vec = algebra.basis_vector(i);
        let mut power = basis_vec.clone();
        for _ in 0..=bound {
            if span.reduce(&power)?.iter().all(Scalar::is_zero) {
                return Err(AlgebraError::InternalCheckFailed(format!(
                    "group basis element {i} is nilpotent modulo the radical"
                )));
            }
            power = algebra.multiply_vectors(&power, &basis_vec)?;
        }
    }

    Ok(RadicalBasis {
        dimension: span.rank(),
        vectors: span.rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractions::inverse as fraction_inverse;
    use crate::permgroup::{generate_closure, Permutation};

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    fn word(letters: &[usize]) -> Word {
        Word::new(letters.to_vec())
    }

    fn inst_cyclic3() -> MonoidInstance {
        let group = generate_closure(&[perm(&[2, 3, 1])], 3).unwrap();
        MonoidInstance::new(group, 2).unwrap()
    }

    fn inst_cyclic4_l3() -> MonoidInstance {
        let group = generate_closure(&[perm(&[2, 3, 4, 1])], 4).unwrap();
        MonoidInstance::new(group, 3).unwrap()
    }

    const Q: FieldSpec = FieldSpec::Rational;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    /// x_2 - x_1 over the given field.
    fn generator_difference(inst: &MonoidInstance, field: FieldSpec) -> AlgebraElement {
        AlgebraElement::from_terms(
            inst,
            field,
            [
                (word(&[2]), Scalar::one(field)),
                (word(&[1]), Scalar::one(field).neg()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn field_spec_validation() {
        assert_eq!(FieldSpec::prime(4).err(), Some(AlgebraError::NotPrime(4)));
        assert_eq!(FieldSpec::prime(1).err(), Some(AlgebraError::NotPrime(1)));
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(97).is_ok());
        assert_eq!(f(3).characteristic(), 3);
        assert_eq!(Q.characteristic(), 0);
        assert_eq!(f(3).to_string(), "F_3");
        assert_eq!(Q.to_string(), "Q");
    }

    #[test]
    fn scalar_arithmetic() {
        let half = Scalar::from_ratio(Q, 1, 2).unwrap();
        assert!(half.add(&half).unwrap().is_one());
        assert!(Scalar::from_ratio(Q, 1, 0).is_err());

        let two = Scalar::from_ratio(f(3), 1, 2).unwrap();
        assert_eq!(two, Scalar::from_integer(f(3), 2));
        assert!(Scalar::from_ratio(f(3), 1, 3).is_err());
        assert_eq!(
            Scalar::from_integer(f(5), -1),
            Scalar::from_integer(f(5), 4)
        );
        let inv = Scalar::from_integer(f(7), 3).inverse().unwrap();
        assert_eq!(inv, Scalar::from_integer(f(7), 5));
        assert!(Scalar::zero(f(7)).inverse().is_err());

        assert!(matches!(
            Scalar::one(Q).add(&Scalar::one(f(3))),
            Err(AlgebraError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn elements_canonicalize_their_support() {
        let inst = inst_cyclic3();
        let a = AlgebraElement::monomial(&inst, Q, &word(&[2, 1]), Scalar::one(Q)).unwrap();
        assert!(a.terms().contains_key(&word(&[1, 3])));

        // [2,1] and [1,3] are the same element, so the difference vanishes.
        let b = AlgebraElement::from_terms(
            &inst,
            Q,
            [
                (word(&[2, 1]), Scalar::one(Q)),
                (word(&[1, 3]), Scalar::one(Q).neg()),
            ],
        )
        .unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn multiply_generator_difference() {
        let inst = inst_cyclic3();
        let a = generator_difference(&inst, Q);
        let sq = multiply_elements(&inst, &a, &a).unwrap();
        let expected = AlgebraElement::from_terms(
            &inst,
            Q,
            [
                (word(&[1, 1]), Scalar::from_integer(Q, 2)),
                (word(&[1, 3]), Scalar::from_integer(Q, -1)),
                (word(&[1, 2]), Scalar::from_integer(Q, -1)),
            ],
        )
        .unwrap();
        assert_eq!(sq, expected);

        let cube = multiply_elements(&inst, &sq, &a).unwrap();
        let expected = AlgebraElement::from_terms(
            &inst,
            Q,
            [
                (word(&[1, 1, 2]), Scalar::from_integer(Q, 3)),
                (word(&[1, 1, 1]), Scalar::from_integer(Q, -3)),
            ],
        )
        .unwrap();
        assert_eq!(cube, expected);
    }

    #[test]
    fn nilpotency_depends_on_characteristic() {
        let inst = inst_cyclic3();

        let a3 = generator_difference(&inst, f(3));
        let report = is_nilpotent(&inst, &a3, 6).unwrap();
        assert_eq!(report.nilpotent_at, Some(3));
        assert!(report.homogeneous);

        let aq = generator_difference(&inst, Q);
        let report = is_nilpotent(&inst, &aq, 6).unwrap();
        assert_eq!(report.nilpotent_at, None);
        assert_eq!(report.checked_up_to, 6);
        assert!(report.homogeneous);

        let zero = AlgebraElement::zero(Q);
        assert_eq!(is_nilpotent(&inst, &zero, 4).unwrap().nilpotent_at, Some(1));
        assert!(is_nilpotent(&inst, &aq, 0).is_err());
    }

    #[test]
    fn homogeneous_split() {
        let inst = inst_cyclic3();
        let mixed = AlgebraElement::from_terms(
            &inst,
            Q,
            [
                (word(&[1]), Scalar::one(Q)),
                (word(&[1, 2]), Scalar::one(Q)),
                (word(&[3]), Scalar::one(Q)),
            ],
        )
        .unwrap();
        assert!(!mixed.is_homogeneous());
        let parts = homogeneous_components(&mixed);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&1].terms().len(), 2);
        assert_eq!(parts[&2].terms().len(), 1);
        for part in parts.values() {
            assert!(part.is_homogeneous());
        }
    }

    #[test]
    fn group_algebra_morphism() {
        let inst = inst_cyclic3();
        let a = generator_difference(&inst, Q);
        let b = AlgebraElement::from_terms(
            &inst,
            Q,
            [
                (word(&[1, 2]), Scalar::one(Q)),
                (word(&[3]), Scalar::from_integer(Q, 2)),
            ],
        )
        .unwrap();
        let lhs = to_group_algebra(&inst, &multiply_elements(&inst, &a, &b).unwrap()).unwrap();
        let rhs = group_multiply(
            &inst,
            &to_group_algebra(&inst, &a).unwrap(),
            &to_group_algebra(&inst, &b).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_picks_the_identity_coefficient() {
        let inst = inst_cyclic3();
        // alpha = x_1^2 x_2; x_2 x_1^{-4} is its group inverse up to torsion.
        let alpha = AlgebraElement::monomial(&inst, Q, &word(&[1, 1, 2]), Scalar::one(Q)).unwrap();
        let alpha = to_group_algebra(&inst, &alpha).unwrap();

        let x2 = from_word(&inst, &word(&[2])).unwrap();
        let x1_pow4 = from_word(&inst, &word(&[1, 1, 1, 1])).unwrap();
        let m = fraction_multiply(&inst, &x2, &fraction_inverse(&inst, &x1_pow4).unwrap()).unwrap();
        let m = GroupAlgebraElement::monomial(Q, m, Scalar::one(Q)).unwrap();

        let product = group_multiply(&inst, &alpha, &m).unwrap();
        assert!(trace_identity(&inst, &product).unwrap().is_one());

        // Replacing x_1^2 x_2 by x_1^2 x_3 moves the product off the identity.
        let beta = AlgebraElement::monomial(&inst, Q, &word(&[1, 1, 3]), Scalar::one(Q)).unwrap();
        let beta = to_group_algebra(&inst, &beta).unwrap();
        let product = group_multiply(&inst, &beta, &m).unwrap();
        assert!(trace_identity(&inst, &product).unwrap().is_zero());
    }

    #[test]
    fn torsion_algebra_structure() {
        let inst = inst_cyclic3();
        let algebra = torsion_group_algebra(&inst, f(3)).unwrap();
        assert_eq!(algebra.dim(), 3);
        assert!(algebra.is_commutative());
        assert!(algebra.basis()[algebra.identity_index()].is_identity());

        // g - 1 is nilpotent of index 3 in characteristic 3.
        let mut v = algebra.zero_vector();
        v[1] = Scalar::one(f(3));
        v[0] = Scalar::one(f(3)).neg();
        assert_eq!(algebra.is_nilpotent_vector(&v, 4).unwrap(), Some(3));
        let one = algebra.basis_vector(0);
        assert_eq!(algebra.is_nilpotent_vector(&one, 10).unwrap(), None);
    }

    #[test]
    fn radical_dimensions() {
        let a = inst_cyclic3();
        let c = inst_cyclic4_l3();

        let rad = radical_basis(&torsion_group_algebra(&a, Q).unwrap()).unwrap();
        assert_eq!(rad.dimension, 0);

        let rad = radical_basis(&torsion_group_algebra(&a, f(3)).unwrap()).unwrap();
        assert_eq!(rad.dimension, 2);
        assert_eq!(rad.vectors.len(), 2);

        let rad = radical_basis(&torsion_group_algebra(&c, f(2)).unwrap()).unwrap();
        assert_eq!(rad.dimension, 15);

        let rad = radical_basis(&torsion_group_algebra(&c, f(3)).unwrap()).unwrap();
        assert_eq!(rad.dimension, 0);
    }

    #[test]
    fn radical_vectors_are_nilpotent() {
        let inst = inst_cyclic3();
        let algebra = torsion_group_algebra(&inst, f(3)).unwrap();
        let rad = radical_basis(&algebra).unwrap();
        for v in &rad.vectors {
            assert!(algebra
                .is_nilpotent_vector(v, algebra.dim() as u32 + 1)
                .unwrap()
                .is_some());
        }
    }

    #[test]
    fn field_mismatch_is_reported() {
        let inst = inst_cyclic3();
        let a = generator_difference(&inst, Q);
        let b = generator_difference(&inst, f(3));
        assert!(matches!(
            a.add(&b),
            Err(AlgebraError::FieldMismatch { .. })
        ));
        assert!(matches!(
            multiply_elements(&inst, &a, &b),
            Err(AlgebraError::FieldMismatch { .. })
        ));
    }
}
