//! Strong lattice path matroids as transversal matroids.
//!
//! `M[p, q]` is presented by level sets `A_1..A_m`, where `A_i` holds the
//! positions at which some path between `p` and `q` takes its `i`-th north
//! step. Each `A_i` is the interval from the `i`-th north step of `q` to the
//! `i`-th north step of `p`.

use serde::Serialize;
use thiserror::Error;

use crate::lattice_path::{enumerate_between, path_to_base, LatticePath, PathError, PathPair};
use crate::matroid::RankOracle;
use crate::set::{ElementSet, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpmError {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("ground set of size {0} exceeds {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("element set {set} not contained in {{1..{n}}}")]
    OutOfRange { set: ElementSet, n: usize },
}

/// Closed integer interval `[lo, hi]` of element ids.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn contains(self, j: usize) -> bool {
        self.lo <= j && j <= self.hi
    }

    pub fn to_set(self) -> ElementSet {
        ElementSet::range(self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongLpm {
    pair: PathPair,
    presentation: Vec<Interval>,
}

impl StrongLpm {
    pub fn pair(&self) -> &PathPair {
        &self.pair
    }

    pub fn p(&self) -> &LatticePath {
        self.pair.p()
    }

    pub fn q(&self) -> &LatticePath {
        self.pair.q()
    }

    pub fn n(&self) -> usize {
        self.pair.len()
    }

    /// Number of level sets, which is also the rank.
    pub fn m(&self) -> usize {
        self.presentation.len()
    }

    pub fn presentation(&self) -> &[Interval] {
        &self.presentation
    }

    pub fn level_sets(&self) -> Vec<ElementSet> {
        self.presentation.iter().map(|a| a.to_set()).collect()
    }

    pub fn parse(p: &str, q: &str) -> Result<Self, LpmError> {
        build_lpm(PathPair::parse(p, q)?)
    }

    fn check(&self, x: ElementSet) -> Result<(), LpmError> {
        if x.is_subset(ElementSet::full(self.n())) {
            Ok(())
        } else {
            Err(LpmError::OutOfRange {
                set: x,
                n: self.n(),
            })
        }
    }

    /// Size of a maximum matching of `x` into the level sets.
    fn matching_size(&self, x: ElementSet) -> usize {
        // owner[i] = element currently matched to level i
        let mut owner: Vec<Option<usize>> = vec![None; self.m()];
        let mut size = 0;
        for e in x {
            let mut visited = vec![false; self.m()];
            if self.augment(e, &mut owner, &mut visited) {
                size += 1;
            }
        }
        size
    }

    fn augment(&self, e: usize, owner: &mut [Option<usize>], visited: &mut [bool]) -> bool {
        for (i, a) in self.presentation.iter().enumerate() {
            if !a.contains(e) || visited[i] {
                continue;
            }
            visited[i] = true;
            let free = match owner[i] {
                None => true,
                Some(other) => self.augment(other, owner, visited),
            };
            if free {
                owner[i] = Some(e);
                return true;
            }
        }
        false
    }

    pub fn to_json(&self) -> LpmDump {
        LpmDump {
            n: self.n(),
            p: self.p().to_string(),
            q: self.q().to_string(),
            presentation: self.presentation.iter().map(|a| [a.lo, a.hi]).collect(),
        }
    }
}

impl RankOracle for StrongLpm {
    fn ground_size(&self) -> usize {
        self.n()
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.matching_size(set.intersection(ElementSet::full(self.n())))
    }
}

/// JSON form: `{"n", "p", "q", "presentation": [[lo, hi], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpmDump {
    pub n: usize,
    pub p: String,
    pub q: String,
    pub presentation: Vec<[usize; 2]>,
}

/// Build `M[p, q]` from its interval presentation.
pub fn build_lpm(pair: PathPair) -> Result<StrongLpm, LpmError> {
    let n = pair.len();
    if n > MAX_ELEMENTS {
        return Err(LpmError::TooLarge(n));
    }
    let presentation: Vec<Interval> = pair
        .q()
        .north_positions()
        .into_iter()
        .zip(pair.p().north_positions())
        .map(|(lo, hi)| Interval { lo, hi })
        .collect();
    let lpm = StrongLpm { pair, presentation };
    #[cfg(debug_assertions)]
    if n <= 10 {
        debug_assert_eq!(
            lpm.level_sets(),
            presentation_by_enumeration(&lpm.pair),
            "interval presentation disagrees with path enumeration"
        );
    }
    Ok(lpm)
}

/// Level sets read off directly from `P[p, q]`: `j ∈ A_i` iff some path in
/// the corridor takes its `i`-th north step at `j`.
pub fn presentation_by_enumeration(pair: &PathPair) -> Vec<ElementSet> {
    let m = pair.q().north_count();
    let mut sets = vec![ElementSet::EMPTY; m];
    for r in enumerate_between(pair) {
        for (i, j) in r.north_positions().into_iter().enumerate() {
            sets[i] = sets[i].with(j);
        }
    }
    sets
}

/// Whether `x` is a partial transversal of the presentation.
pub fn is_independent(lpm: &StrongLpm, x: ElementSet) -> Result<bool, LpmError> {
    lpm.check(x)?;
    Ok(lpm.matching_size(x) == x.len())
}

pub fn rank(lpm: &StrongLpm, x: ElementSet) -> Result<usize, LpmError> {
    lpm.check(x)?;
    Ok(lpm.matching_size(x))
}

/// Bases as images of the paths in `P[p, q]`, in path word order.
pub fn bases(lpm: &StrongLpm) -> Vec<ElementSet> {
    enumerate_between(lpm.pair())
        .iter()
        .map(|r| path_to_base(r).expect("length checked at build"))
        .collect()
}

/// Dual at path level: flip both words and exchange their roles.
pub fn lpm_dual_paths(lpm: &StrongLpm) -> StrongLpm {
    let pair = PathPair::new(lpm.q().flipped(), lpm.p().flipped())
        .expect("flipping reverses the south-of order");
    build_lpm(pair).expect("same ground set size")
}

/// Direct sum at path level: concatenate the lower and the upper words.
pub fn lpm_concat(first: &StrongLpm, second: &StrongLpm) -> Result<StrongLpm, LpmError> {
    let pair = PathPair::new(first.p().concat(second.p()), first.q().concat(second.q()))?;
    build_lpm(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid;

    fn example1() -> StrongLpm {
        StrongLpm::parse("EENENN", "NNENEE").unwrap()
    }

    fn set(xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(xs.iter().copied())
    }

    #[test]
    fn example1_presentation() {
        let m = example1();
        assert_eq!(m.m(), 3);
        assert_eq!(
            m.level_sets(),
            vec![set(&[1, 2, 3]), set(&[2, 3, 4, 5]), set(&[4, 5, 6])]
        );
    }

    #[test]
    fn small_presentations() {
        let single = StrongLpm::parse("N", "N").unwrap();
        assert_eq!(single.level_sets(), vec![set(&[1])]);
        let u24 = StrongLpm::parse("EENN", "NNEE").unwrap();
        assert_eq!(u24.level_sets(), vec![set(&[1, 2, 3]), set(&[2, 3, 4])]);
        assert_eq!(u24.level_sets(), presentation_by_enumeration(u24.pair()));
    }

    #[test]
    fn independence_and_rank_examples() {
        let m = example1();
        assert!(is_independent(&m, set(&[2, 3])).unwrap());
        assert!(!is_independent(&m, set(&[1, 2, 3, 4])).unwrap());
        assert!(is_independent(&m, ElementSet::EMPTY).unwrap());
        assert_eq!(rank(&m, set(&[1, 2, 3])).unwrap(), 2);
        assert_eq!(rank(&m, ElementSet::full(6)).unwrap(), 3);
        assert_eq!(rank(&m, ElementSet::EMPTY).unwrap(), 0);
        assert_eq!(
            rank(&m, set(&[7])),
            Err(LpmError::OutOfRange {
                set: set(&[7]),
                n: 6
            })
        );
    }

    #[test]
    fn example1_bases() {
        let m = example1();
        let bs = bases(&m);
        assert_eq!(bs.len(), 18);
        assert!(bs.contains(&set(&[1, 2, 4])));
        assert!(bs.contains(&set(&[3, 5, 6])));
        let mut sorted = bs.clone();
        sorted.sort();
        assert_eq!(sorted, matroid::bases(&m));
    }

    #[test]
    fn u24_bases() {
        let m = StrongLpm::parse("EENN", "NNEE").unwrap();
        let mut bs = bases(&m);
        bs.sort();
        let all: Vec<_> = ElementSet::full(4)
            .subsets()
            .filter(|s| s.len() == 2)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(bs, all);
    }

    #[test]
    fn dual_paths_and_concat() {
        let u24 = StrongLpm::parse("EENN", "NNEE").unwrap();
        let d = lpm_dual_paths(&u24);
        assert_eq!(
            (d.p().to_string(), d.q().to_string()),
            ("EENN".into(), "NNEE".into())
        );

        let n = StrongLpm::parse("N", "N").unwrap();
        let nn = lpm_concat(&n, &n).unwrap();
        assert_eq!(nn, StrongLpm::parse("NN", "NN").unwrap());
    }

    #[test]
    fn json_dump_schema() {
        let json = serde_json::to_string(&example1().to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"n":6,"p":"EENENN","q":"NNENEE","presentation":[[1,3],[2,5],[4,6]]}"#
        );
    }
}
