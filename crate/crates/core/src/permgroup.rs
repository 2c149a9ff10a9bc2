//! Permutations of `{1, …, n}`, finite permutation groups, and the
//! structural predicates (abelian, semiregular, transitive, regular) that
//! control which monoid algorithms apply.

use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

/// Errors from permutation and group construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image array has length {len}, expected degree {degree}")]
    WrongLength { len: usize, degree: usize },
    #[error("value {value} appears more than once in image array")]
    DuplicateValue { value: usize },
    #[error("value {value} out of range 1..={degree}")]
    ValueOutOfRange { value: usize, degree: usize },
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("cycle entries must be distinct within a cycle set, got {value} twice")]
    RepeatedCyclePoint { value: usize },
    #[error("group is not regular: point {point} has {count} elements mapping it to 1")]
    NotRegular { point: usize, count: usize },
}

/// A permutation of `{1, …, n}` stored by its image sequence:
/// `images[i - 1]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// The identity permutation on `{1, …, degree}`.
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (1..=degree).collect(),
        }
    }

    /// Builds a permutation from its image sequence, rejecting anything that
    /// is not a bijection of `{1, …, n}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &v in &images {
            if v < 1 || v > degree {
                return Err(PermError::ValueOutOfRange { value: v, degree });
            }
            if seen[v - 1] {
                return Err(PermError::DuplicateValue { value: v });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `{1, …, degree}` from disjoint cycles.
    /// Points absent from every cycle are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let from = cycle[window];
                let to = cycle[(window + 1) % cycle.len()];
                if from < 1 || from > degree {
                    return Err(PermError::ValueOutOfRange {
                        value: from,
                        degree,
                    });
                }
                if moved[from - 1] {
                    return Err(PermError::RepeatedCyclePoint { value: from });
                }
                moved[from - 1] = true;
                images[from - 1] = to;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// The image of a point; 1-based.
    pub fn apply(&self, point: usize) -> usize {
        debug_assert!(point >= 1 && point <= self.images.len());
        self.images[point - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Composition acting on points as `self(other(point))`: `other` is
    /// applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let images = (1..=self.degree())
            .map(|i| self.apply(other.apply(i)))
            .collect();
        Ok(Permutation { images })
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        let mut power = self.clone();
        let mut k = 1;
        while !power.is_identity() {
            power = power.compose(self).expect("equal degrees");
            k += 1;
        }
        k
    }

    /// Decomposition into cycles of length at least 2, each rotated to start
    /// at its minimum, ordered by that minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut visited = vec![false; self.images.len()];
        let mut cycles = Vec::new();
        for start in 1..=self.images.len() {
            if visited[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            visited[start - 1] = true;
            let mut point = self.apply(start);
            while point != start {
                visited[point - 1] = true;
                cycle.push(point);
                point = self.apply(point);
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, point) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{point}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

/// A finite permutation group given by its full, sorted element list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

/// Generates the closure of the given permutations under composition.
///
/// Breadth-first over left multiplication by generators; the element list is
/// sorted by image sequence, so equal generating sets of a group in any order
/// produce identical element lists. An empty generator list yields the
/// trivial group.
pub fn generate_closure(
    generators: &[Permutation],
    degree: usize,
) -> Result<PermutationGroup, PermError> {
    for g in generators {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch {
                left: g.degree(),
                right: degree,
            });
        }
    }
    let identity = Permutation::identity(degree);
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut queue: VecDeque<Permutation> = VecDeque::new();
    queue.push_back(identity);
    while let Some(current) = queue.pop_front() {
        for g in generators {
            let next = g.compose(&current)?;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(PermutationGroup {
        degree,
        elements: seen.into_iter().collect(),
        generators: generators.to_vec(),
    })
}

impl PermutationGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// All elements, sorted by image sequence.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Index of an element in the sorted element list.
    pub fn element_index(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// Structural predicates and the orbit decomposition.
    pub fn classify(&self) -> GroupClassification {
        let n = self.degree;
        let is_abelian = self.elements.iter().enumerate().all(|(i, p)| {
            self.elements[i + 1..]
                .iter()
                .all(|q| p.compose(q).unwrap() == q.compose(p).unwrap())
        });
        // Semiregular: only the identity fixes a point.
        let is_semiregular = self
            .elements
            .iter()
            .filter(|p| !p.is_identity())
            .all(|p| (1..=n).all(|i| p.apply(i) != i));

        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut orbit_index = vec![usize::MAX; n];
        for start in 1..=n {
            if orbit_index[start - 1] != usize::MAX {
                continue;
            }
            let orbit: BTreeSet<usize> = self.elements.iter().map(|p| p.apply(start)).collect();
            let idx = orbits.len();
            for &point in &orbit {
                orbit_index[point - 1] = idx;
            }
            orbits.push(orbit.into_iter().collect());
        }
        let orbit_representatives: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
        let is_transitive = orbits.len() == 1;

        GroupClassification {
            is_abelian,
            is_semiregular,
            is_transitive,
            is_regular: is_transitive && is_semiregular,
            orbits,
            orbit_representatives,
            orbit_index,
        }
    }

    /// Elements fixing the given point.
    pub fn stabilizer(&self, point: usize) -> Result<Vec<Permutation>, PermError> {
        if point < 1 || point > self.degree {
            return Err(PermError::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(self
            .elements
            .iter()
            .filter(|p| p.apply(point) == point)
            .cloned()
            .collect())
    }
}

/// Orbit structure and the predicates that gate the monoid algorithms.
///
/// Orbits are sorted ascending and listed by minimum element; the
/// representative of each orbit is its minimum.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GroupClassification {
    pub is_abelian: bool,
    pub is_semiregular: bool,
    pub is_transitive: bool,
    pub is_regular: bool,
    pub orbits: Vec<Vec<usize>>,
    pub orbit_representatives: Vec<usize>,
    #[serde(skip)]
    orbit_index: Vec<usize>,
}

impl GroupClassification {
    /// Index into `orbit_representatives` of the orbit containing `point`.
    pub fn rep_index_of(&self, point: usize) -> Option<usize> {
        self.orbit_index.get(point.checked_sub(1)?).copied()
    }

    /// Number of orbits.
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }
}

/// For a regular group, the map `i -> σ_i` where `σ_i` is the unique element
/// with `σ_i(i) = 1`; in particular `σ_1` is the identity.
///
/// Returned as a vector indexed by `i - 1`. Fails if some point has zero or
/// several elements mapping it to 1.
pub fn sigma_map(group: &PermutationGroup) -> Result<Vec<Permutation>, PermError> {
    let mut map = Vec::with_capacity(group.degree());
    for point in 1..=group.degree() {
        let mut matches = group.elements().iter().filter(|p| p.apply(point) == 1);
        let sigma = matches
            .next()
            .ok_or(PermError::NotRegular { point, count: 0 })?;
        if matches.next().is_some() {
            return Err(PermError::NotRegular { point, count: 2 });
        }
        map.push(sigma.clone());
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert_eq!(
            Permutation::from_images(vec![1, 1, 3]),
            Err(PermError::DuplicateValue { value: 1 })
        );
        assert_eq!(
            Permutation::from_images(vec![0, 1]),
            Err(PermError::ValueOutOfRange {
                value: 0,
                degree: 2
            })
        );
        assert_eq!(
            Permutation::from_images(vec![3, 1]),
            Err(PermError::ValueOutOfRange {
                value: 3,
                degree: 2
            })
        );
    }

    #[test]
    fn from_cycles_matches_images() {
        let three_cycle = Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(three_cycle, perm(&[2, 3, 1]));
        let double = Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(double, perm(&[2, 1, 4, 3]));
        let fixing = Permutation::from_cycles(4, &[vec![1, 3]]).unwrap();
        assert_eq!(fixing, perm(&[3, 2, 1, 4]));
        assert!(Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let sigma = perm(&[2, 3, 1]);
        assert_eq!(sigma.compose(&sigma).unwrap(), perm(&[3, 1, 2]));

        let p = perm(&[2, 1, 4, 3]);
        let q = perm(&[3, 4, 1, 2]);
        assert_eq!(p.compose(&q).unwrap(), perm(&[4, 3, 2, 1]));

        let r = perm(&[2, 1, 3]);
        assert!(p.compose(&r).is_err());
    }

    #[test]
    fn inverse_and_order() {
        let sigma = perm(&[2, 3, 1]);
        assert_eq!(sigma.inverse(), perm(&[3, 1, 2]));
        assert_eq!(sigma.order(), 3);
        assert_eq!(Permutation::identity(5).order(), 1);
        assert_eq!(perm(&[2, 1, 4, 3]).order(), 2);
    }

    #[test]
    fn display_uses_cycle_notation() {
        assert_eq!(perm(&[2, 3, 1]).to_string(), "(1 2 3)");
        assert_eq!(perm(&[2, 1, 4, 3]).to_string(), "(1 2)(3 4)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn closure_orders() {
        let cyclic = generate_closure(&[perm(&[2, 3, 1])], 3).unwrap();
        assert_eq!(cyclic.order(), 3);

        let klein = generate_closure(&[perm(&[2, 1, 4, 3]), perm(&[3, 4, 1, 2])], 4).unwrap();
        assert_eq!(klein.order(), 4);
        assert!(klein.contains(&perm(&[4, 3, 2, 1])));

        let trivial = generate_closure(&[], 5).unwrap();
        assert_eq!(trivial.order(), 1);

        let sym3 = generate_closure(&[perm(&[2, 1, 3]), perm(&[2, 3, 1])], 3).unwrap();
        assert_eq!(sym3.order(), 6);
    }

    #[test]
    fn closure_is_order_independent() {
        let a = perm(&[2, 1, 4, 3]);
        let b = perm(&[3, 4, 1, 2]);
        let g1 = generate_closure(&[a.clone(), b.clone()], 4).unwrap();
        let g2 = generate_closure(&[b, a], 4).unwrap();
        assert_eq!(g1.elements(), g2.elements());
    }

    #[test]
    fn classify_cyclic_three() {
        let group = generate_closure(&[perm(&[2, 3, 1])], 3).unwrap();
        let c = group.classify();
        assert!(c.is_abelian);
        assert!(c.is_semiregular);
        assert!(c.is_transitive);
        assert!(c.is_regular);
        assert_eq!(c.orbits, vec![vec![1, 2, 3]]);
        assert_eq!(c.orbit_representatives, vec![1]);
        assert_eq!(c.rep_index_of(2), Some(0));
    }

    #[test]
    fn classify_transposition_on_three_points() {
        let group = generate_closure(&[perm(&[2, 1, 3])], 3).unwrap();
        let c = group.classify();
        assert!(c.is_abelian);
        assert!(!c.is_semiregular);
        assert!(!c.is_transitive);
        assert!(!c.is_regular);
        assert_eq!(c.orbits, vec![vec![1, 2], vec![3]]);
        assert_eq!(c.orbit_representatives, vec![1, 3]);
        assert_eq!(c.rep_index_of(3), Some(1));
    }

    #[test]
    fn classify_trivial_group() {
        let group = generate_closure(&[], 2).unwrap();
        let c = group.classify();
        assert!(c.is_abelian);
        assert!(c.is_semiregular);
        assert!(!c.is_transitive);
        assert!(!c.is_regular);
        assert_eq!(c.orbits, vec![vec![1], vec![2]]);
    }

    #[test]
    fn classify_nonabelian_transitive() {
        let sym3 = generate_closure(&[perm(&[2, 1, 3]), perm(&[2, 3, 1])], 3).unwrap();
        let c = sym3.classify();
        assert!(!c.is_abelian);
        assert!(!c.is_semiregular);
        assert!(c.is_transitive);
        assert!(!c.is_regular);
    }

    #[test]
    fn stabilizer_sizes_obey_orbit_stabilizer() {
        let group = generate_closure(&[perm(&[2, 1, 3]), perm(&[1, 2, 3])], 3).unwrap();
        let c = group.classify();
        for point in 1..=3 {
            let stab = group.stabilizer(point).unwrap();
            let orbit_len = c.orbits[c.rep_index_of(point).unwrap()].len();
            assert_eq!(stab.len() * orbit_len, group.order());
        }
        assert!(group.stabilizer(4).is_err());
    }

    #[test]
    fn sigma_map_cyclic_three() {
        let group = generate_closure(&[perm(&[2, 3, 1])], 3).unwrap();
        let sigma = sigma_map(&group).unwrap();
        assert_eq!(sigma[0], Permutation::identity(3));
        assert_eq!(sigma[1], perm(&[3, 1, 2]));
        assert_eq!(sigma[2], perm(&[2, 3, 1]));
    }

    #[test]
    fn sigma_map_klein() {
        let group = generate_closure(&[perm(&[2, 1, 4, 3]), perm(&[3, 4, 1, 2])], 4).unwrap();
        let sigma = sigma_map(&group).unwrap();
        assert_eq!(sigma[0], Permutation::identity(4));
        assert_eq!(sigma[1], perm(&[2, 1, 4, 3]));
        assert_eq!(sigma[2], perm(&[3, 4, 1, 2]));
        assert_eq!(sigma[3], perm(&[4, 3, 2, 1]));
    }

    #[test]
    fn sigma_map_rejects_non_regular() {
        let group = generate_closure(&[perm(&[2, 1, 3])], 3).unwrap();
        assert!(sigma_map(&group).is_err());
    }

    /// For regular groups: σ_{σ_j^{-1}(k)} = σ_j σ_k, the identity behind
    /// conjugation by x_1 in the group of fractions.
    #[test]
    fn sigma_map_composition_identity() {
        let groups = vec![
            generate_closure(&[perm(&[2, 3, 1])], 3).unwrap(),
            generate_closure(&[perm(&[2, 1, 4, 3]), perm(&[3, 4, 1, 2])], 4).unwrap(),
            generate_closure(&[perm(&[2, 3, 4, 1])], 4).unwrap(),
        ];
        for group in groups {
            let n = group.degree();
            let sigma = sigma_map(&group).unwrap();
            for j in 1..=n {
                for k in 1..=n {
                    let point = sigma[j - 1].inverse().apply(k);
                    let lhs = &sigma[point - 1];
                    let rhs = sigma[j - 1].compose(&sigma[k - 1]).unwrap();
                    assert_eq!(*lhs, rhs, "j={j} k={k}");
                }
            }
        }
    }
}
