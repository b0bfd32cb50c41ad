//! Reference implementations that share no code with the library's fast
//! paths: Hall's condition instead of augmenting paths, word filtering
//! instead of corridor search, and rank tables for closure.

#![allow(dead_code)]

use lpmkit::lattice_path::{precedes, LatticePath, PathPair};
use lpmkit::matroid::RankOracle;
use lpmkit::set::ElementSet;
use lpmkit::transversal::StrongLpm;

pub fn set(xs: &[usize]) -> ElementSet {
    ElementSet::from_elements(xs.iter().copied())
}

/// Every word over {N, E} of length `n`, in lexicographic order (E < N).
pub fn all_words(n: usize) -> Vec<LatticePath> {
    (0..=n)
        .flat_map(|k| LatticePath::all_with_norths(n, k))
        .collect()
}

/// `P[p, q]` by filtering every word with the right number of north steps.
pub fn paths_between_by_filter(pair: &PathPair) -> Vec<LatticePath> {
    let n = pair.len();
    let k = pair.q().north_count();
    let mut out: Vec<LatticePath> = LatticePath::all_with_norths(n, k)
        .into_iter()
        .filter(|r| precedes(pair.p(), r).unwrap() && precedes(r, pair.q()).unwrap())
        .collect();
    out.sort();
    out
}

/// North-step positions of a word, as a set.
pub fn norths(r: &LatticePath) -> ElementSet {
    (1..=r.len())
        .filter(|&i| r.step(i).symbol() == 'N')
        .collect()
}

/// Hall's condition: `x` is a partial transversal of `family` iff every
/// subset of `x` meets at least as many members of the family as it has
/// elements.
pub fn hall_independent(family: &[ElementSet], x: ElementSet) -> bool {
    x.subsets().all(|s| {
        let neighbours = family.iter().filter(|a| !a.is_disjoint(s)).count();
        neighbours >= s.len()
    })
}

/// Rank by maximal Hall-independent subset.
pub fn hall_rank(family: &[ElementSet], x: ElementSet) -> usize {
    x.subsets()
        .filter(|&s| hall_independent(family, s))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

/// A matroid given by its level sets, ranked through Hall's condition.
pub struct HallOracle {
    pub n: usize,
    pub family: Vec<ElementSet>,
}

impl HallOracle {
    pub fn of(m: &StrongLpm) -> Self {
        HallOracle {
            n: m.n(),
            family: m.level_sets(),
        }
    }
}

impl RankOracle for HallOracle {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn rank(&self, set: ElementSet) -> usize {
        hall_rank(&self.family, set)
    }
}

/// A full table of ranks, filled from any oracle.
pub struct Table {
    pub n: usize,
    pub ranks: Vec<u8>,
}

impl Table {
    pub fn of<O: RankOracle>(o: &O) -> Self {
        let n = o.ground_size();
        let ranks = (0..1u64 << n)
            .map(|b| o.rank(ElementSet::from_bits(b)) as u8)
            .collect();
        Table { n, ranks }
    }

    pub fn rank(&self, x: ElementSet) -> usize {
        self.ranks[x.bits() as usize] as usize
    }

    pub fn full_rank(&self) -> usize {
        self.rank(ElementSet::full(self.n))
    }

    pub fn closure(&self, x: ElementSet) -> ElementSet {
        let r = self.rank(x);
        (1..=self.n)
            .filter(|&e| self.rank(x.with(e)) == r)
            .collect()
    }

    pub fn is_flat(&self, x: ElementSet) -> bool {
        self.closure(x) == x
    }

    pub fn bases(&self) -> Vec<ElementSet> {
        let r = self.full_rank();
        (0..1u64 << self.n)
            .map(ElementSet::from_bits)
            .filter(|&b| b.len() == r && self.rank(b) == r)
            .collect()
    }

    /// Copoints containing the flat `w` of rank `r - 2`.
    pub fn copoints_over(&self, w: ElementSet) -> Vec<ElementSet> {
        let r = self.full_rank();
        let mut out: Vec<ElementSet> = (0..1u64 << self.n)
            .map(ElementSet::from_bits)
            .filter(|&y| w.is_subset(y) && self.rank(y) + 1 == r && self.is_flat(y))
            .collect();
        out.sort();
        out
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(set(&[e])) == 0
    }

    pub fn is_parallel(&self, j: usize, k: usize) -> bool {
        !self.is_loop(j) && !self.is_loop(k) && self.rank(set(&[j, k])) == 1
    }

    pub fn is_simple(&self) -> bool {
        (1..=self.n).all(|j| !self.is_loop(j))
            && (1..=self.n).all(|j| (j + 1..=self.n).all(|k| !self.is_parallel(j, k)))
    }
}

/// Quite-simple test straight from the definition.
pub fn quite_simple_by_definition(t: &Table, w: ElementSet) -> bool {
    let r = t.full_rank();
    if r < 2 || t.rank(w) + 2 != r || !t.is_flat(w) {
        return false;
    }
    let (simple, multiple) = t.copoints_over(w).iter().fold((0, 0), |(s, m), y| {
        if y.difference(w).len() == 1 {
            (s + 1, m)
        } else {
            (s, m + 1)
        }
    });
    simple > multiple
}

/// Every valid pair with ground set size `1..=nmax`.
pub fn all_pairs(nmax: usize) -> impl Iterator<Item = PathPair> {
    (1..=nmax).flat_map(PathPair::all_of_length)
}

/// Is `f` an integer combination of `generators`? Exhaustive over small
/// coefficient ranges; only meant for tiny instances.
pub fn in_span_small(f: &[i64], generators: &[Vec<i64>], bound: i64) -> bool {
    fn go(f: &[i64], acc: &mut Vec<i64>, gens: &[Vec<i64>], bound: i64) -> bool {
        let Some((g, rest)) = gens.split_first() else {
            return acc.as_slice() == f;
        };
        for c in -bound..=bound {
            for (a, x) in acc.iter_mut().zip(g) {
                *a += c * x;
            }
            let hit = go(f, acc, rest, bound);
            for (a, x) in acc.iter_mut().zip(g) {
                *a -= c * x;
            }
            if hit {
                return true;
            }
        }
        false
    }
    go(f, &mut vec![0; f.len()], generators, bound)
}
