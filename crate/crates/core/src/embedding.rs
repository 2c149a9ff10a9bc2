//! The action realizing the embedding of a monoid with semiregular abelian
//! defining group into its universal group.
//!
//! The universal group acts on configurations `(w, (σ_1, …, σ_{l-1}))` where
//! `w` is a reduced word in the free group on the orbit representatives and
//! the tail components are elements of the defining group. Semiregularity
//! makes every generator `x_k` decompose uniquely as `k = ν(i_j)` with `i_j`
//! an orbit representative, and `x_k` then acts by `f_{ν,j}`, which prepends
//! the free generator `j` and corrects one or all tail components depending
//! on the degree of `w` mod `l`. Products act with the rightmost letter
//! first. Injectivity of the whole embedding is visible on the single probe
//! configuration `(x_{i_1}, identity tail)`.

use crate::permgroup::Permutation;
use crate::rewriting::{enumerate_words, MonoidInstance, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Fixed seed for the sampled relation check, so repeated runs agree.
const SAMPLE_SEED: u64 = 0x70726f6265;

/// Errors from embedding computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error(
        "embedding check requires a semiregular abelian defining group \
         (semiregular={semiregular}, abelian={abelian})"
    )]
    RequiresSemiregularAbelian { semiregular: bool, abelian: bool },
    #[error("letter {letter} out of range 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("representative index {index} out of range 1..={count}")]
    RepIndexOutOfRange { index: usize, count: usize },
    #[error("configuration tail has {got} components, expected {expected}")]
    TailLength { got: usize, expected: usize },
    #[error("permutation is not an element of the defining group")]
    PermutationNotInGroup,
    #[error("enumeration needs at least {needed} words, budget is {cap}")]
    EnumerationBudgetExceeded { needed: u128, cap: u64 },
    #[error("internal consistency check failed: {0}")]
    InternalCheckFailed(String),
}

/// A reduced word in the free group on the orbit representatives, stored as
/// `(representative index, ±1)` factors with no adjacent cancellation.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeGroupWord {
    factors: Vec<(usize, i8)>,
}

impl FreeGroupWord {
    pub fn empty() -> Self {
        FreeGroupWord::default()
    }

    /// The free generator for a 1-based representative index.
    pub fn generator(rep_index: usize) -> Self {
        FreeGroupWord {
            factors: vec![(rep_index, 1)],
        }
    }

    /// Prepends one factor, cancelling against the current first factor when
    /// they are mutually inverse. `exponent` must be `1` or `-1`.
    pub fn prepend(&mut self, rep_index: usize, exponent: i8) {
        debug_assert!(exponent == 1 || exponent == -1);
        if let Some(&(first_index, first_exp)) = self.factors.first() {
            if first_index == rep_index && first_exp == -exponent {
                self.factors.remove(0);
                return;
            }
        }
        self.factors.insert(0, (rep_index, exponent));
    }

    /// Sum of exponents; constant on images of monoid words of one length.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(usize, i8)] {
        &self.factors
    }
}

impl fmt::Debug for FreeGroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord[")?;
        for (i, &(index, exp)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", exp as i64 * index as i64)?;
        }
        write!(f, "]")
    }
}

/// A point of the space the universal group acts on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Configuration {
    pub word: FreeGroupWord,
    pub tail: Vec<Permutation>,
}

/// The configuration `(empty word, identity tail)`.
pub fn identity_configuration(inst: &MonoidInstance) -> Result<Configuration, EmbeddingError> {
    require_semiregular_abelian(inst)?;
    Ok(Configuration {
        word: FreeGroupWord::empty(),
        tail: vec![Permutation::identity(inst.n()); inst.l() - 1],
    })
}

/// The probe configuration `(x_{i_1}, identity tail)` on which injectivity
/// of the embedding is visible.
pub fn probe_configuration(inst: &MonoidInstance) -> Result<Configuration, EmbeddingError> {
    require_semiregular_abelian(inst)?;
    Ok(Configuration {
        word: FreeGroupWord::generator(1),
        tail: vec![Permutation::identity(inst.n()); inst.l() - 1],
    })
}

/// The unique decomposition of a generator: `x_letter` acts as `f_{τ,j}`
/// where `letter = τ(i_j)` and `i_j` is the representative of its orbit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorAction {
    pub tau: Permutation,
    /// 1-based index into the orbit representative list.
    pub rep_index: usize,
}

fn require_semiregular_abelian(inst: &MonoidInstance) -> Result<(), EmbeddingError> {
    let c = inst.classification();
    if !(c.is_semiregular && c.is_abelian) {
        return Err(EmbeddingError::RequiresSemiregularAbelian {
            semiregular: c.is_semiregular,
            abelian: c.is_abelian,
        });
    }
    Ok(())
}

/// Decomposes a letter as `τ(i_j)`; the transporter `τ` is unique because
/// the group is semiregular.
pub fn decompose_letter(
    inst: &MonoidInstance,
    letter: usize,
) -> Result<GeneratorAction, EmbeddingError> {
    require_semiregular_abelian(inst)?;
    if letter < 1 || letter > inst.n() {
        return Err(EmbeddingError::LetterOutOfRange {
            letter,
            n: inst.n(),
        });
    }
    let classification = inst.classification();
    let rep_index = classification
        .rep_index_of(letter)
        .expect("letter range checked");
    let rep = classification.orbit_representatives[rep_index];
    let mut transporters = inst
        .group()
        .elements()
        .iter()
        .filter(|nu| nu.apply(rep) == letter);
    let tau = transporters
        .next()
        .expect("representative and letter share an orbit")
        .clone();
    if transporters.next().is_some() {
        return Err(EmbeddingError::InternalCheckFailed(format!(
            "letter {letter} has several transporters in a semiregular group"
        )));
    }
    Ok(GeneratorAction {
        tau,
        rep_index: rep_index + 1,
    })
}

fn check_action(inst: &MonoidInstance, action: &GeneratorAction) -> Result<(), EmbeddingError> {
    let count = inst.classification().orbit_representatives.len();
    if action.rep_index < 1 || action.rep_index > count {
        return Err(EmbeddingError::RepIndexOutOfRange {
            index: action.rep_index,
            count,
        });
    }
    if !inst.group().contains(&action.tau) {
        return Err(EmbeddingError::PermutationNotInGroup);
    }
    Ok(())
}

fn check_tail(inst: &MonoidInstance, config: &Configuration) -> Result<(), EmbeddingError> {
    if config.tail.len() != inst.l() - 1 {
        return Err(EmbeddingError::TailLength {
            got: config.tail.len(),
            expected: inst.l() - 1,
        });
    }
    Ok(())
}

/// Applies the generator action `f_{τ,j}` to a configuration.
///
/// With `d` the degree of the incoming free word mod `l`: if `d = 0` every
/// tail component `σ_t` becomes `τ^{-1} σ_t`; if `d = k` with
/// `1 <= k <= l-1` only component `k` changes, to `τ σ_k`. The free word
/// gains the factor `x_{i_j}` on the left.
pub fn f_apply(
    inst: &MonoidInstance,
    action: &GeneratorAction,
    config: &Configuration,
) -> Result<Configuration, EmbeddingError> {
    require_semiregular_abelian(inst)?;
    check_action(inst, action)?;
    check_tail(inst, config)?;
    let l = inst.l() as i64;
    let d = config.word.degree().rem_euclid(l) as usize;
    let mut tail = config.tail.clone();
    if d == 0 {
        let tau_inv = action.tau.inverse();
        for slot in &mut tail {
            *slot = tau_inv.compose(slot).expect("equal degrees");
        }
    } else {
        let slot = &mut tail[d - 1];
        *slot = action.tau.compose(slot).expect("equal degrees");
    }
    let mut word = config.word.clone();
    word.prepend(action.rep_index, 1);
    Ok(Configuration { word, tail })
}

/// Applies the inverse of `f_{τ,j}` to a configuration.
///
/// With `k = (degree - 1) mod l` for the incoming word: if `k = 0` every
/// tail component `σ_t` becomes `τ σ_t`, otherwise only component `k`
/// changes, to `τ^{-1} σ_k`. The free word gains `x_{i_j}^{-1}` on the left.
pub fn f_inverse(
    inst: &MonoidInstance,
    action: &GeneratorAction,
    config: &Configuration,
) -> Result<Configuration, EmbeddingError> {
    require_semiregular_abelian(inst)?;
    check_action(inst, action)?;
    check_tail(inst, config)?;
    let l = inst.l() as i64;
    let k = (config.word.degree() - 1).rem_euclid(l) as usize;
    let mut tail = config.tail.clone();
    if k == 0 {
        for slot in &mut tail {
            *slot = action.tau.compose(slot).expect("equal degrees");
        }
    } else {
        let slot = &mut tail[k - 1];
        *slot = action.tau.inverse().compose(slot).expect("equal degrees");
    }
    let mut word = config.word.clone();
    word.prepend(action.rep_index, -1);
    Ok(Configuration { word, tail })
}

/// The action of a monoid word: its letters act with the rightmost first.
pub fn phi_apply(
    inst: &MonoidInstance,
    w: &Word,
    config: &Configuration,
) -> Result<Configuration, EmbeddingError> {
    let mut current = config.clone();
    for &letter in w.letters().iter().rev() {
        let action = decompose_letter(inst, letter)?;
        current = f_apply(inst, &action, &current)?;
    }
    Ok(current)
}

/// Outcome of checking the defining relations against the action.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct RelationCheckReport {
    pub holds: bool,
    /// Whether every relation instance was checked rather than a sample.
    pub exhaustive: bool,
    pub tuples_checked: u64,
    pub probes: u64,
}

/// Outcome of comparing the action's point partition with word equality.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct InjectivityReport {
    pub injective: bool,
    pub max_length: usize,
    pub words_checked: u64,
}

fn all_tails(inst: &MonoidInstance) -> Vec<Vec<Permutation>> {
    let elements = inst.group().elements();
    let len = inst.l() - 1;
    let mut out = Vec::new();
    let mut indices = vec![0usize; len];
    loop {
        out.push(indices.iter().map(|&i| elements[i].clone()).collect());
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
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

/// All probe configurations: reduced free words of length at most 2 paired
/// with every tail.
fn probe_set(inst: &MonoidInstance) -> Vec<Configuration> {
    let rep_count = inst.classification().orbit_representatives.len();
    let mut words = vec![FreeGroupWord::empty()];
    for j in 1..=rep_count {
        for e in [1i8, -1] {
            let mut w = FreeGroupWord::empty();
            w.prepend(j, e);
            words.push(w);
        }
    }
    for j1 in 1..=rep_count {
        for e1 in [1i8, -1] {
            for j2 in 1..=rep_count {
                for e2 in [1i8, -1] {
                    if j1 == j2 && e1 == -e2 {
                        continue;
                    }
                    let mut w = FreeGroupWord::empty();
                    w.prepend(j2, e2);
                    w.prepend(j1, e1);
                    words.push(w);
                }
            }
        }
    }
    let mut probes = Vec::new();
    for tail in all_tails(inst) {
        for word in &words {
            probes.push(Configuration {
                word: word.clone(),
                tail: tail.clone(),
            });
        }
    }
    probes
}

/// Checks that the action respects the defining relations.
///
/// A relation instance is a length-`l` word together with `τ` in the group;
/// by the unique letter decomposition these are tuples
/// `(τ, ν_1..ν_l, j_1..j_l)`. Both sides act on every probe configuration
/// (free words of reduced length at most 2, all tails). All
/// `|H|^(l+1) · r^l` tuples are checked when that count is within
/// `sample_budget`, otherwise `sample_budget` tuples are drawn from a fixed
/// seed.
pub fn relation_check(
    inst: &MonoidInstance,
    sample_budget: u64,
) -> Result<RelationCheckReport, EmbeddingError> {
    require_semiregular_abelian(inst)?;
    let elements = inst.group().elements();
    let h = elements.len() as u128;
    let r = inst.classification().orbit_representatives.len() as u128;
    let l = inst.l();
    let total: u128 = h.pow((l + 1) as u32) * r.pow(l as u32);
    let probes = probe_set(inst);
    let exhaustive = total <= sample_budget as u128;

    let check_tuple = |tau_idx: usize,
                           nu_idx: &[usize],
                           rep_idx: &[usize]|
     -> Result<bool, EmbeddingError> {
        let tau = &elements[tau_idx];
        let mut lhs_actions = Vec::with_capacity(l);
        let mut rhs_actions = Vec::with_capacity(l);
        for i in 0..l {
            let nu = &elements[nu_idx[i]];
            lhs_actions.push(GeneratorAction {
                tau: nu.clone(),
                rep_index: rep_idx[i] + 1,
            });
            rhs_actions.push(GeneratorAction {
                tau: tau.compose(nu).expect("equal degrees"),
                rep_index: rep_idx[i] + 1,
            });
        }
        for probe in &probes {
            let mut lhs = probe.clone();
            let mut rhs = probe.clone();
            for i in (0..l).rev() {
                lhs = f_apply(inst, &lhs_actions[i], &lhs)?;
                rhs = f_apply(inst, &rhs_actions[i], &rhs)?;
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let mut tuples_checked = 0u64;
    let mut holds = true;
    if exhaustive {
        let h = elements.len();
        let r = r as usize;
        // Odometer over (tau, nu_1..nu_l, j_1..j_l).
        let mut state = vec![0usize; 1 + 2 * l];
        let radix: Vec<usize> = std::iter::once(h)
            .chain(std::iter::repeat_n(h, l))
            .chain(std::iter::repeat_n(r, l))
            .collect();
        'outer: loop {
            tuples_checked += 1;
            if !check_tuple(state[0], &state[1..=l], &state[l + 1..])? {
                holds = false;
                break;
            }
            let mut pos = state.len();
            loop {
                if pos == 0 {
                    break 'outer;
                }
                if state[pos - 1] + 1 < radix[pos - 1] {
                    state[pos - 1] += 1;
                    break;
                }
                state[pos - 1] = 0;
                pos -= 1;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let h = elements.len();
        let r = r as usize;
        for _ in 0..sample_budget {
            tuples_checked += 1;
            let tau_idx = rng.random_range(0..h);
            let nu_idx: Vec<usize> = (0..l).map(|_| rng.random_range(0..h)).collect();
            let rep_idx: Vec<usize> = (0..l).map(|_| rng.random_range(0..r)).collect();
            if !check_tuple(tau_idx, &nu_idx, &rep_idx)? {
                holds = false;
                break;
            }
        }
    }
    Ok(RelationCheckReport {
        holds,
        exhaustive,
        tuples_checked,
        probes: probes.len() as u64,
    })
}

/// Compares the partition of words by their action on the probe
/// configuration with the partition by word equality, over all words of
/// length at most `max_length`.
///
/// Equal words must act identically (the action is well defined) and
/// inequal words must act differently on the probe (the embedding is
/// injective); any violation reports `injective: false`.
pub fn injectivity_check(
    inst: &MonoidInstance,
    max_length: usize,
) -> Result<InjectivityReport, EmbeddingError> {
    require_semiregular_abelian(inst)?;
    let n = inst.n();
    let cap = inst.budget().enum_cap;
    let mut needed: u128 = 0;
    for m in 0..=max_length {
        needed += (n as u128).pow(m as u32);
        if needed > cap as u128 {
            return Err(EmbeddingError::EnumerationBudgetExceeded { needed, cap });
        }
    }

    let probe = probe_configuration(inst)?;
    let mut image_to_canon: HashMap<Configuration, Word> = HashMap::new();
    let mut canon_to_image: HashMap<Word, Configuration> = HashMap::new();
    let mut words_checked = 0u64;
    for m in 0..=max_length {
        for w in enumerate_words(n, m) {
            words_checked += 1;
            let image = phi_apply(inst, &w, &probe)?;
            let canon = inst.canonical_form(&w).map_err(|e| {
                EmbeddingError::InternalCheckFailed(format!("canonical form failed: {e}"))
            })?;
            if let Some(previous) = image_to_canon.get(&image) {
                if previous != &canon {
                    return Ok(InjectivityReport {
                        injective: false,
                        max_length,
                        words_checked,
                    });
                }
            } else {
                image_to_canon.insert(image.clone(), canon.clone());
            }
            if let Some(previous) = canon_to_image.get(&canon) {
                if previous != &image {
                    return Ok(InjectivityReport {
                        injective: false,
                        max_length,
                        words_checked,
                    });
                }
            } else {
                canon_to_image.insert(canon, image);
            }
        }
    }
    Ok(InjectivityReport {
        injective: true,
        max_length,
        words_checked,
    })
}
