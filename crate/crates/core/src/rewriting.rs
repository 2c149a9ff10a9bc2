//! Words, length-preserving rewriting, and the word problem for monoids
//! defined by permutation relations.
//!
//! A rewrite step applies some `σ` in the defining group letterwise to a
//! window of `l` consecutive letters. Two words represent the same monoid
//! element exactly when a chain of such steps connects them; since steps
//! preserve length, every equivalence class is finite and breadth-first
//! search decides the word problem for any defining group.
//!
//! When the defining group is abelian there is a one-pass decision procedure:
//! two words of length `t >= l` are equal iff some sequence of group elements
//! `τ_1, …, τ_{t-l+1}` applied at windows `1, …, t-l+1` from left to right
//! turns one into the other. Applying the window at position `k` is the last
//! step that can change letter `k`, so candidates for `τ_k` are exactly the
//! elements matching the target letter at position `k`; when the group is not
//! semiregular several candidates can match and the sweep backtracks over
//! them.

use crate::permgroup::{GroupClassification, Permutation, PermutationGroup};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use thiserror::Error;

/// Errors from word-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("relation length must be at least 2, got {0}")]
    RelationLengthTooSmall(usize),
    #[error("letter {letter} out of range 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("rewrite position {pos} out of range 1..={max}")]
    PositionOutOfRange { pos: usize, max: usize },
    #[error("permutation is not an element of the defining group")]
    PermutationNotInGroup,
    #[error("equivalence class exceeded the class budget of {cap} words")]
    ClassCapExceeded { cap: u64 },
    #[error("enumeration needs at least {needed} words, budget is {cap}")]
    EnumerationBudgetExceeded { needed: u128, cap: u64 },
    #[error("word has length {len}, operation needs at least {min}")]
    WordTooShort { len: usize, min: usize },
    #[error("maximum length {given} must be at least {min}")]
    MaxLengthTooSmall { given: usize, min: usize },
    #[error("the one-pass sweep decision applies only to abelian defining groups")]
    SweepRequiresAbelian,
    #[error("computed counts contradict the structure theorems: {0}")]
    GrowthInconsistency(String),
    #[error("internal consistency check failed: {0}")]
    InternalCheckFailed(String),
}

/// A word over the generators `x_1, …, x_n`, stored as 1-based letter
/// indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, letter) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[{self}]")
    }
}

/// All words of the given length over `{1, …, n}` in lexicographic order.
pub fn enumerate_words(n: usize, length: usize) -> Vec<Word> {
    if length == 0 {
        return vec![Word::empty()];
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![1usize; length];
    loop {
        out.push(Word::new(cur.clone()));
        let mut i = length;
        loop {
            if i == 0 {
                return out;
            }
            if cur[i - 1] < n {
                cur[i - 1] += 1;
                break;
            }
            cur[i - 1] = 1;
            i -= 1;
        }
    }
}

/// The full set of words equal to a given word, with the lexicographically
/// least member as canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivalenceClass {
    members: BTreeSet<Word>,
}

impl EquivalenceClass {
    pub fn members(&self) -> &BTreeSet<Word> {
        &self.members
    }

    /// Lexicographically least member.
    pub fn canonical(&self) -> &Word {
        self.members.iter().next().expect("class is never empty")
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains(w)
    }
}

/// Budgets that bound the exhaustive searches.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Budget {
    /// Largest equivalence class breadth-first search will materialize.
    pub class_cap: u64,
    /// Largest number of words an enumeration pass may touch.
    pub enum_cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            class_cap: 1_000_000,
            enum_cap: 10_000_000,
        }
    }
}

/// Left-or-right label for a cancellation counterexample.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Words with `ab = ac` (left) or `ba = ca` (right) but `b != c`,
/// witnessing failure of cancellativity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CancellationWitness {
    pub a: Word,
    pub b: Word,
    pub c: Word,
    pub side: Side,
}

/// Growth regime of the graded monoid.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthClass {
    Linear,
    Exponential,
}

/// Element counts by length together with the growth classification.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GrowthReport {
    pub classification: GrowthClass,
    /// Pairs `(m, number of elements of length m)` for `m = 1, …, m_max`.
    pub counts: Vec<(usize, u64)>,
}

/// Factorizations of a word class through words over orbit representatives.
///
/// Both are equalities of monoid elements: the class of the input equals the
/// class of `left_rep_word · left_boundary` and of
/// `right_boundary · right_rep_word`, where the rep words use only orbit
/// representatives and the boundary words have length `l - 1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RepFactorization {
    pub left_rep_word: Word,
    pub left_boundary: Word,
    pub right_boundary: Word,
    pub right_rep_word: Word,
}

/// A monoid defined by permutation relations: generators `x_1, …, x_n` and
/// relations `x_{i_1} ⋯ x_{i_l} = x_{σ(i_1)} ⋯ x_{σ(i_l)}` for all `σ` in the
/// defining group.
#[derive(Clone, Debug)]
pub struct MonoidInstance {
    l: usize,
    group: PermutationGroup,
    classification: GroupClassification,
    sigma: Option<Vec<Permutation>>,
    budget: Budget,
}

impl MonoidInstance {
    /// Builds an instance from the defining group and relation length.
    /// The number of generators is the degree of the group.
    pub fn new(group: PermutationGroup, l: usize) -> Result<Self, RewriteError> {
        if l < 2 {
            return Err(RewriteError::RelationLengthTooSmall(l));
        }
        let classification = group.classify();
        let sigma = if classification.is_regular {
            Some(crate::permgroup::sigma_map(&group).expect("regular groups have a sigma map"))
        } else {
            None
        };
        Ok(MonoidInstance {
            l,
            group,
            classification,
            sigma,
            budget: Budget::default(),
        })
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    /// Number of generators.
    pub fn n(&self) -> usize {
        self.group.degree()
    }

    /// Relation length.
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn classification(&self) -> &GroupClassification {
        &self.classification
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// For a regular defining group, the map `i -> σ_i` with `σ_i(i) = 1`.
    pub fn sigma_map(&self) -> Option<&[Permutation]> {
        self.sigma.as_deref()
    }

    fn check_word(&self, w: &Word) -> Result<(), RewriteError> {
        let n = self.n();
        for &letter in w.letters() {
            if letter < 1 || letter > n {
                return Err(RewriteError::LetterOutOfRange { letter, n });
            }
        }
        Ok(())
    }

    fn apply_window(&self, letters: &[usize], start: usize, sigma: &Permutation) -> Word {
        let mut out = letters.to_vec();
        for slot in &mut out[start..start + self.l] {
            *slot = sigma.apply(*slot);
        }
        Word::new(out)
    }

    /// Applies `σ` to the length-`l` window starting at 1-based position
    /// `pos`, which must satisfy `1 <= pos <= |w| - l + 1`.
    pub fn rewrite_step(
        &self,
        w: &Word,
        pos: usize,
        sigma: &Permutation,
    ) -> Result<Word, RewriteError> {
        self.check_word(w)?;
        let max = (w.len() + 1).saturating_sub(self.l);
        if pos < 1 || pos > max {
            return Err(RewriteError::PositionOutOfRange { pos, max });
        }
        if !self.group.contains(sigma) {
            return Err(RewriteError::PermutationNotInGroup);
        }
        Ok(self.apply_window(w.letters(), pos - 1, sigma))
    }

    /// Breadth-first closure of a word under single rewrite steps.
    pub fn equivalence_class(&self, w: &Word) -> Result<EquivalenceClass, RewriteError> {
        self.check_word(w)?;
        let mut members = BTreeSet::new();
        members.insert(w.clone());
        if w.len() >= self.l {
            let mut queue = VecDeque::new();
            queue.push_back(w.clone());
            while let Some(cur) = queue.pop_front() {
                for start in 0..=(cur.len() - self.l) {
                    for sigma in self.group.elements() {
                        if sigma.is_identity() {
                            continue;
                        }
                        let next = self.apply_window(cur.letters(), start, sigma);
                        if members.contains(&next) {
                            continue;
                        }
                        if members.len() as u64 >= self.budget.class_cap {
                            return Err(RewriteError::ClassCapExceeded {
                                cap: self.budget.class_cap,
                            });
                        }
                        members.insert(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(EquivalenceClass { members })
    }

    /// Lexicographically least word equal to `w`.
    pub fn canonical_form(&self, w: &Word) -> Result<Word, RewriteError> {
        Ok(self.equivalence_class(w)?.canonical().clone())
    }

    /// Decides equality of the monoid elements represented by two words.
    ///
    /// Words of different lengths are never equal. Abelian defining groups
    /// use the one-pass sweep, everything else breadth-first search; the two
    /// paths decide the same relation.
    pub fn words_equal(&self, u: &Word, v: &Word) -> Result<bool, RewriteError> {
        if self.classification.is_abelian {
            self.words_equal_sweep(u, v)
        } else {
            self.words_equal_bfs(u, v)
        }
    }

    /// Word equality via breadth-first search of the class of `u`.
    pub fn words_equal_bfs(&self, u: &Word, v: &Word) -> Result<bool, RewriteError> {
        self.check_word(u)?;
        self.check_word(v)?;
        if u.len() != v.len() {
            return Ok(false);
        }
        if u == v {
            return Ok(true);
        }
        if u.len() < self.l {
            return Ok(false);
        }
        let mut seen = BTreeSet::new();
        seen.insert(u.clone());
        let mut queue = VecDeque::new();
        queue.push_back(u.clone());
        while let Some(cur) = queue.pop_front() {
            for start in 0..=(cur.len() - self.l) {
                for sigma in self.group.elements() {
                    if sigma.is_identity() {
                        continue;
                    }
                    let next = self.apply_window(cur.letters(), start, sigma);
                    if next == *v {
                        return Ok(true);
                    }
                    if seen.contains(&next) {
                        continue;
                    }
                    if seen.len() as u64 >= self.budget.class_cap {
                        return Err(RewriteError::ClassCapExceeded {
                            cap: self.budget.class_cap,
                        });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(false)
    }

    /// Word equality via the left-to-right window sweep. Only valid for
    /// abelian defining groups; backtracks over the stabilizer choices that
    /// arise when the group is not semiregular.
    pub fn words_equal_sweep(&self, u: &Word, v: &Word) -> Result<bool, RewriteError> {
        self.check_word(u)?;
        self.check_word(v)?;
        if !self.classification.is_abelian {
            return Err(RewriteError::SweepRequiresAbelian);
        }
        if u.len() != v.len() {
            return Ok(false);
        }
        if u.len() < self.l {
            return Ok(u == v);
        }
        let mut cur = u.letters().to_vec();
        let last = u.len() - self.l;
        Ok(self.sweep_from(0, last, &mut cur, v.letters()))
    }

    fn sweep_from(&self, window: usize, last: usize, cur: &mut [usize], target: &[usize]) -> bool {
        if window == last {
            // Final window: a single element must match all remaining letters.
            'tau: for tau in self.group.elements() {
                for off in 0..self.l {
                    if tau.apply(cur[window + off]) != target[window + off] {
                        continue 'tau;
                    }
                }
                return true;
            }
            return false;
        }
        // The window at `window` is the last chance to fix that letter, so
        // only elements matching it are candidates.
        for tau in self.group.elements() {
            if tau.apply(cur[window]) != target[window] {
                continue;
            }
            for off in 0..self.l {
                cur[window + off] = tau.apply(cur[window + off]);
            }
            if self.sweep_from(window + 1, last, cur, target) {
                return true;
            }
            let inv = tau.inverse();
            for off in 0..self.l {
                cur[window + off] = inv.apply(cur[window + off]);
            }
        }
        false
    }

    /// Rewrites `w` into the two boundary forms: representatives first with a
    /// suffix of length `l - 1`, and a prefix of length `l - 1` followed by
    /// representatives. Requires `|w| >= l - 1`.
    pub fn factorize(&self, w: &Word) -> Result<RepFactorization, RewriteError> {
        self.check_word(w)?;
        let l = self.l;
        let t = w.len();
        if t < l - 1 {
            return Err(RewriteError::WordTooShort { len: t, min: l - 1 });
        }
        let rep_of = |letter: usize| -> usize {
            let idx = self.classification.rep_index_of(letter).expect("checked");
            self.classification.orbit_representatives[idx]
        };
        let move_to_rep = |letter: usize| -> &Permutation {
            let target = rep_of(letter);
            self.group
                .elements()
                .iter()
                .find(|s| s.apply(letter) == target)
                .expect("representative lies in the letter's orbit")
        };

        // Left form: finalize positions 0..t-l+1 from the left; the window
        // starting at the position being fixed never touches earlier ones.
        let mut left = w.letters().to_vec();
        if t >= l {
            for pos in 0..=(t - l) {
                let sigma = move_to_rep(left[pos]);
                for slot in &mut left[pos..pos + l] {
                    *slot = sigma.apply(*slot);
                }
            }
        }
        let boundary_at = t - (l - 1);
        let left_rep_word = Word::new(left[..boundary_at].to_vec());
        let left_boundary = Word::new(left[boundary_at..].to_vec());

        // Right form: finalize positions t-1 down to l-1 using the window
        // that ends at the position being fixed.
        let mut right = w.letters().to_vec();
        if t >= l {
            for pos in ((l - 1)..t).rev() {
                let sigma = move_to_rep(right[pos]);
                for slot in &mut right[pos + 1 - l..=pos] {
                    *slot = sigma.apply(*slot);
                }
            }
        }
        let right_boundary = Word::new(right[..l - 1].to_vec());
        let right_rep_word = Word::new(right[l - 1..].to_vec());

        let factorization = RepFactorization {
            left_rep_word,
            left_boundary,
            right_boundary,
            right_rep_word,
        };
        self.validate_factorization(w, &factorization)?;
        Ok(factorization)
    }

    fn validate_factorization(
        &self,
        w: &Word,
        f: &RepFactorization,
    ) -> Result<(), RewriteError> {
        let reps: BTreeSet<usize> = self
            .classification
            .orbit_representatives
            .iter()
            .copied()
            .collect();
        for part in [&f.left_rep_word, &f.right_rep_word] {
            if part.letters().iter().any(|letter| !reps.contains(letter)) {
                return Err(RewriteError::InternalCheckFailed(format!(
                    "factorization part {part} contains a non-representative letter"
                )));
            }
        }
        for (name, len) in [
            ("left boundary", f.left_boundary.len()),
            ("right boundary", f.right_boundary.len()),
        ] {
            if len != self.l - 1 {
                return Err(RewriteError::InternalCheckFailed(format!(
                    "{name} has length {len}, expected {}",
                    self.l - 1
                )));
            }
        }
        let left = f.left_rep_word.concat(&f.left_boundary);
        let right = f.right_boundary.concat(&f.right_rep_word);
        for rebuilt in [&left, &right] {
            if !self.words_equal(w, rebuilt)? {
                return Err(RewriteError::InternalCheckFailed(format!(
                    "factorization {rebuilt} is not equal to the input {w}"
                )));
            }
        }
        Ok(())
    }

    /// Number of distinct monoid elements of the given length, by exhaustive
    /// partition of all `n^m` words. Errors when `n^m` exceeds the
    /// enumeration budget.
    pub fn count_elements_of_length(&self, m: usize) -> Result<u64, RewriteError> {
        let n = self.n();
        if m == 0 {
            return Ok(1);
        }
        let cap = self.budget.enum_cap;
        let mut total: u128 = 1;
        for _ in 0..m {
            total *= n as u128;
            if total > cap as u128 {
                return Err(RewriteError::EnumerationBudgetExceeded { needed: total, cap });
            }
        }
        let total = total as usize;
        if n == 0 {
            return Ok(0);
        }

        // Words of length m are encoded base-n: index = Σ (letter_i - 1)·n^i.
        let mut pow = Vec::with_capacity(m);
        let mut p = 1usize;
        for _ in 0..m {
            pow.push(p);
            p *= n;
        }
        let decode = |mut idx: usize, letters: &mut [usize]| {
            for slot in letters.iter_mut() {
                *slot = idx % n + 1;
                idx /= n;
            }
        };

        let non_identity: Vec<&Permutation> = self
            .group
            .elements()
            .iter()
            .filter(|p| !p.is_identity())
            .collect();
        let mut visited = vec![false; total];
        let mut classes = 0u64;
        let mut letters = vec![0usize; m];
        let mut stack: Vec<usize> = Vec::new();
        for start in 0..total {
            if visited[start] {
                continue;
            }
            classes += 1;
            visited[start] = true;
            if m < self.l || non_identity.is_empty() {
                continue;
            }
            stack.push(start);
            while let Some(idx) = stack.pop() {
                decode(idx, &mut letters);
                for window in 0..=(m - self.l) {
                    for sigma in &non_identity {
                        let mut nidx = idx;
                        for off in window..window + self.l {
                            let old = letters[off];
                            let new = sigma.apply(old);
                            nidx = nidx - (old - 1) * pow[off] + (new - 1) * pow[off];
                        }
                        if !visited[nidx] {
                            visited[nidx] = true;
                            stack.push(nidx);
                        }
                    }
                }
            }
        }
        Ok(classes)
    }

    /// Counts elements of each length up to `m_max`, cross-checks the counts
    /// against the structure theorems, and classifies the growth.
    ///
    /// Growth is linear exactly when the defining group is transitive. The
    /// cross-checks are: below the relation length every word is alone in its
    /// class; transitive groups give at most `n^(l-1)` elements per length
    /// from `l - 1` on (exactly that many when also abelian); groups with
    /// `r >= 2` orbits give at least `r^m` elements of length `m`. Any
    /// violation reports an inconsistency error.
    pub fn growth_classify(&self, m_max: usize) -> Result<GrowthReport, RewriteError> {
        if m_max < self.l {
            return Err(RewriteError::MaxLengthTooSmall {
                given: m_max,
                min: self.l,
            });
        }
        let mut counts = Vec::with_capacity(m_max);
        for m in 1..=m_max {
            counts.push((m, self.count_elements_of_length(m)?));
        }
        let n = self.n() as u128;
        let r = self.classification.orbit_count() as u128;
        let stable = n.pow((self.l - 1) as u32);
        for &(m, count) in &counts {
            let count = count as u128;
            if m < self.l && count != n.pow(m as u32) {
                return Err(RewriteError::GrowthInconsistency(format!(
                    "length {m} is below the relation length, expected {} classes, got {count}",
                    n.pow(m as u32)
                )));
            }
            if self.classification.is_transitive && m >= self.l - 1 {
                if count > stable {
                    return Err(RewriteError::GrowthInconsistency(format!(
                        "transitive group allows at most {stable} elements of length {m}, got {count}"
                    )));
                }
                if self.classification.is_abelian && count != stable {
                    return Err(RewriteError::GrowthInconsistency(format!(
                        "transitive abelian group gives exactly {stable} elements of length {m}, got {count}"
                    )));
                }
            }
            if !self.classification.is_transitive && count < r.pow(m as u32) {
                return Err(RewriteError::GrowthInconsistency(format!(
                    "{r} orbits force at least {} elements of length {m}, got {count}",
                    r.pow(m as u32)
                )));
            }
        }
        let classification = if self.classification.is_transitive {
            GrowthClass::Linear
        } else {
            GrowthClass::Exponential
        };
        Ok(GrowthReport {
            classification,
            counts,
        })
    }

    /// Searches for a cancellation counterexample among all products with
    /// `|a| + |b| <= max_total_length`, `|b| = |c|`.
    ///
    /// Scan order is deterministic: `|a|` ascending, then `|b|`, then `a`
    /// lexicographic, then pairs `b < c` lexicographic, left side before
    /// right. Returns the first witness found, or `None` if every product up
    /// to the bound cancels; `None` is evidence, not a certificate, except
    /// that for semiregular abelian groups the monoid is cancellative
    /// outright.
    pub fn cancellativity_witness(
        &self,
        max_total_length: usize,
    ) -> Result<Option<CancellationWitness>, RewriteError> {
        let l = self.l;
        if max_total_length < l {
            return Err(RewriteError::MaxLengthTooSmall {
                given: max_total_length,
                min: l,
            });
        }
        let n = self.n();
        let cap = self.budget.enum_cap;
        let mut needed: u128 = 0;
        for len_a in 1..max_total_length {
            for len_b in 1..=(max_total_length - len_a) {
                needed += 2 * (n as u128).pow(len_a as u32) * (n as u128).pow(len_b as u32);
                if needed > cap as u128 {
                    return Err(RewriteError::EnumerationBudgetExceeded { needed, cap });
                }
            }
        }

        let mut canon_cache: HashMap<Word, Word> = HashMap::new();
        let mut canon = |inst: &MonoidInstance, w: &Word| -> Result<Word, RewriteError> {
            if let Some(c) = canon_cache.get(w) {
                return Ok(c.clone());
            }
            let class = inst.equivalence_class(w)?;
            let c = class.canonical().clone();
            for member in class.members() {
                canon_cache.insert(member.clone(), c.clone());
            }
            Ok(c)
        };

        for len_a in 1..max_total_length {
            let a_words = enumerate_words(n, len_a);
            for len_b in 1..=(max_total_length - len_a) {
                let b_words = enumerate_words(n, len_b);
                let b_canon: Vec<Word> = b_words
                    .iter()
                    .map(|b| canon(self, b))
                    .collect::<Result<_, _>>()?;
                for a in &a_words {
                    let left: Vec<Word> = b_words
                        .iter()
                        .map(|b| canon(self, &a.concat(b)))
                        .collect::<Result<_, _>>()?;
                    let right: Vec<Word> = b_words
                        .iter()
                        .map(|b| canon(self, &b.concat(a)))
                        .collect::<Result<_, _>>()?;
                    for bi in 0..b_words.len() {
                        for ci in (bi + 1)..b_words.len() {
                            if b_canon[bi] == b_canon[ci] {
                                continue;
                            }
                            if left[bi] == left[ci] {
                                return Ok(Some(CancellationWitness {
                                    a: a.clone(),
                                    b: b_words[bi].clone(),
                                    c: b_words[ci].clone(),
                                    side: Side::Left,
                                }));
                            }
                            if right[bi] == right[ci] {
                                return Ok(Some(CancellationWitness {
                                    a: a.clone(),
                                    b: b_words[bi].clone(),
                                    c: b_words[ci].clone(),
                                    side: Side::Right,
                                }));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}
