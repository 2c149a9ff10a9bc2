//! Shared fixtures for the integration suites: the worked instances used
//! across tests and a brute-force equivalence oracle that is independent of
//! the library's class search.

#![allow(dead_code)]

use permrel_core::{generate_closure, MonoidInstance, Permutation, Word};

pub fn perm(images: &[usize]) -> Permutation {
    Permutation::from_images(images.to_vec()).unwrap()
}

pub fn word(letters: &[usize]) -> Word {
    Word::new(letters.to_vec())
}

pub fn instance(generators: &[&[usize]], degree: usize, l: usize) -> MonoidInstance {
    let gens: Vec<Permutation> = generators.iter().map(|g| perm(g)).collect();
    let group = generate_closure(&gens, degree).unwrap();
    MonoidInstance::new(group, l).unwrap()
}

/// n = 3, l = 2, cyclic group of order 3: regular, so cancellative with a
/// group of fractions.
pub fn inst_a() -> MonoidInstance {
    instance(&[&[2, 3, 1]], 3, 2)
}

/// n = 4, l = 2, Klein four-group acting regularly.
pub fn inst_b() -> MonoidInstance {
    instance(&[&[2, 1, 4, 3], &[3, 4, 1, 2]], 4, 2)
}

/// n = 4, l = 3, cyclic group of order 4: regular with window length 3.
pub fn inst_c() -> MonoidInstance {
    instance(&[&[2, 3, 4, 1]], 4, 3)
}

/// n = 4, l = 2, generated by (1 2)(3 4): semiregular abelian but not
/// transitive, so cancellative with exponential growth.
pub fn inst_d() -> MonoidInstance {
    instance(&[&[2, 1, 4, 3]], 4, 2)
}

/// n = 3, l = 2, generated by (1 2): abelian but not semiregular, so not
/// cancellative.
pub fn inst_e() -> MonoidInstance {
    instance(&[&[2, 1, 3]], 3, 2)
}

/// n = 6, l = 2, the symmetric group on three letters acting on itself:
/// semiregular and transitive but not abelian, so not cancellative.
pub fn inst_f() -> MonoidInstance {
    instance(&[&[2, 1, 6, 5, 4, 3], &[5, 3, 4, 2, 6, 1]], 6, 2)
}

/// n = 2, l = 2, trivial group: the free monoid on two letters.
pub fn inst_g() -> MonoidInstance {
    instance(&[], 2, 2)
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(size: usize) -> Self {
        DisjointSets {
            parent: (0..size).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // Keep the smaller index as root so roots are lex-min members.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// The partition of all length-m words into equivalence classes, computed by
/// union-find over single rewrite steps rather than by per-word search.
pub struct BruteClasses {
    n: usize,
    m: usize,
    /// Word index -> index of the lex-least word in its class.
    root: Vec<usize>,
}

fn encode(letters: &[usize], n: usize) -> usize {
    letters.iter().fold(0, |acc, &letter| acc * n + (letter - 1))
}

fn decode(mut index: usize, n: usize, m: usize) -> Vec<usize> {
    let mut letters = vec![0usize; m];
    for slot in letters.iter_mut().rev() {
        *slot = index % n + 1;
        index /= n;
    }
    letters
}

pub fn brute_classes(inst: &MonoidInstance, m: usize) -> BruteClasses {
    let n = inst.n();
    let l = inst.l();
    let size = n.pow(m as u32);
    let mut sets = DisjointSets::new(size);
    if m >= l {
        for index in 0..size {
            let letters = decode(index, n, m);
            for pos in 0..=(m - l) {
                for sigma in inst.group().elements() {
                    if sigma.is_identity() {
                        continue;
                    }
                    let mut image = letters.clone();
                    for (offset, slot) in image[pos..pos + l].iter_mut().enumerate() {
                        *slot = sigma.apply(letters[pos + offset]);
                    }
                    sets.union(index, encode(&image, n));
                }
            }
        }
    }
    // Fixed-length base-n encoding is lexicographic, so the numerically
    // least root is the lex-least class member.
    let root = (0..size).map(|i| sets.find(i)).collect();
    BruteClasses { n, m, root }
}

impl BruteClasses {
    pub fn class_count(&self) -> u64 {
        self.root
            .iter()
            .enumerate()
            .filter(|(i, &r)| *i == r)
            .count() as u64
    }

    pub fn class_size(&self, w: &Word) -> u64 {
        assert_eq!(w.len(), self.m);
        let root = self.root[encode(w.letters(), self.n)];
        self.root.iter().filter(|&&r| r == root).count() as u64
    }

    pub fn same_class(&self, u: &Word, v: &Word) -> bool {
        assert_eq!(u.len(), self.m);
        assert_eq!(v.len(), self.m);
        self.root[encode(u.letters(), self.n)] == self.root[encode(v.letters(), self.n)]
    }

    /// The lex-least word equivalent to `w`.
    pub fn lex_min_of_class(&self, w: &Word) -> Word {
        assert_eq!(w.len(), self.m);
        let root = self.root[encode(w.letters(), self.n)];
        Word::new(decode(root, self.n, self.m))
    }
}
