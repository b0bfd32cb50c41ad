//! Closed-form structure of strong lattice path matroids.
//!
//! Prefix ranks, loops and parallel pairs are read directly off the north
//! counts of the boundary paths. For simple matroids of rank at least two the
//! last two north steps `j2 < j1` of the upper path give the Western coline
//! `{1..j2-1}`, whose copoints are `{1..j1-1}` and `{1..j2-1} + k` for
//! `k >= j1`. [`quite_simple_coline`] combines this with a coloop case and a
//! contraction step to always produce a coline with more simple than multiple
//! copoints.

use serde::Serialize;
use thiserror::Error;

use crate::lattice_path::{PathPair, Step};
use crate::matroid::{self, ColineReport, CopointKind, CopointOnColine, RankOracle};
use crate::set::ElementSet;
use crate::transversal::{build_lpm, LpmError, StrongLpm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("element {j} outside 0..={n}")]
    OutOfRange { j: usize, n: usize },
    #[error("matroid has a loop at element {0}")]
    HasLoop(usize),
    #[error("elements {0} and {1} are parallel")]
    HasParallel(usize, usize),
    #[error("step {0} of q is not a north step")]
    NotNorthStep(usize),
    #[error("expected j < k, got j = {0}, k = {1}")]
    BadPairOrder(usize, usize),
    #[error("rank {0} is below 2")]
    RankTooSmall(usize),
    #[error("size {0} is below 2")]
    SizeTooSmall(usize),
    #[error(transparent)]
    Lpm(#[from] LpmError),
}

/// `rk({1..j})`, the number of north steps of `q` among its first `j` steps.
pub fn rank_prefix(lpm: &StrongLpm, j: usize) -> Result<usize, StructureError> {
    if j > lpm.n() {
        return Err(StructureError::OutOfRange { j, n: lpm.n() });
    }
    Ok(lpm.q().height(j))
}

fn check_element(lpm: &StrongLpm, j: usize) -> Result<(), StructureError> {
    if (1..=lpm.n()).contains(&j) {
        Ok(())
    } else {
        Err(StructureError::OutOfRange { j, n: lpm.n() })
    }
}

/// `j` is a loop iff every path is forced east at step `j`.
pub fn is_loop_fast(lpm: &StrongLpm, j: usize) -> Result<bool, StructureError> {
    check_element(lpm, j)?;
    Ok(lpm.p().height(j - 1) == lpm.q().height(j))
}

/// `j < k` are parallel iff both steps lie in one east-running corridor of
/// height one.
pub fn is_parallel_fast(lpm: &StrongLpm, j: usize, k: usize) -> Result<bool, StructureError> {
    check_element(lpm, j)?;
    check_element(lpm, k)?;
    if j >= k {
        return Err(StructureError::BadPairOrder(j, k));
    }
    for e in [j, k] {
        if is_loop_fast(lpm, e)? {
            return Err(StructureError::HasLoop(e));
        }
    }
    let (p, q) = (lpm.p(), lpm.q());
    let floor = p.height(j - 1);
    Ok(floor == p.height(k - 1) && floor + 1 == q.height(j) && floor + 1 == q.height(k))
}

fn check_simple(lpm: &StrongLpm) -> Result<(), StructureError> {
    for j in 1..=lpm.n() {
        if is_loop_fast(lpm, j)? {
            return Err(StructureError::HasLoop(j));
        }
    }
    for j in 1..=lpm.n() {
        for k in j + 1..=lpm.n() {
            if is_parallel_fast(lpm, j, k)? {
                return Err(StructureError::HasParallel(j, k));
            }
        }
    }
    Ok(())
}

pub fn is_simple_fast(lpm: &StrongLpm) -> bool {
    check_simple(lpm).is_ok()
}

/// Outcome of checking that `{1..j-1}` is a flat whose rank goes up by one
/// when any `k >= j` is added.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixFlatWitness {
    pub j: usize,
    pub prefix: ElementSet,
    pub prefix_rank: usize,
    pub closed: bool,
    /// `(k, rk(prefix + k))` for every `k >= j`.
    pub extensions: Vec<(usize, usize)>,
    pub holds: bool,
}

pub fn prefix_is_flat(lpm: &StrongLpm, j: usize) -> Result<PrefixFlatWitness, StructureError> {
    check_element(lpm, j)?;
    for e in 1..=lpm.n() {
        if is_loop_fast(lpm, e)? {
            return Err(StructureError::HasLoop(e));
        }
    }
    if lpm.q().step(j) != Step::N {
        return Err(StructureError::NotNorthStep(j));
    }
    let prefix = ElementSet::range(1, j - 1);
    let prefix_rank = lpm.rank(prefix);
    let closed = matroid::is_flat(lpm, prefix);
    let extensions: Vec<(usize, usize)> = (j..=lpm.n())
        .map(|k| (k, lpm.rank(prefix.with(k))))
        .collect();
    let holds = closed && extensions.iter().all(|&(_, r)| r == prefix_rank + 1);
    Ok(PrefixFlatWitness {
        j,
        prefix,
        prefix_rank,
        closed,
        extensions,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WesternColineResult {
    /// Last north step of `q`.
    pub j1: usize,
    /// Second to last north step of `q`.
    pub j2: usize,
    pub coline: ElementSet,
    pub prefix_copoint: ElementSet,
    pub prefix_copoint_kind: CopointKind,
    pub eastern_simple_copoints: Vec<ElementSet>,
}

impl WesternColineResult {
    /// All copoints on the coline; the prefix copoint and the eastern ones
    /// partition the rest of the ground set.
    pub fn report(&self) -> ColineReport {
        let mut copoints = vec![CopointOnColine {
            set: self.prefix_copoint,
            kind: self.prefix_copoint_kind,
        }];
        copoints.extend(
            self.eastern_simple_copoints
                .iter()
                .map(|&set| CopointOnColine {
                    set,
                    kind: CopointKind::Simple,
                }),
        );
        let simple = copoints
            .iter()
            .filter(|c| c.kind == CopointKind::Simple)
            .count();
        ColineReport {
            coline: self.coline,
            quite_simple: 2 * simple > copoints.len(),
            copoints,
        }
    }

    pub fn to_json(&self) -> WesternColineJson {
        let report = self.report();
        WesternColineJson {
            j1: self.j1,
            j2: self.j2,
            coline: report.coline,
            copoints: report.copoints,
            quite_simple: report.quite_simple,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WesternColineJson {
    pub j1: usize,
    pub j2: usize,
    pub coline: ElementSet,
    pub copoints: Vec<CopointOnColine>,
    pub quite_simple: bool,
}

/// The Western coline of a simple strong LPM of rank at least two.
pub fn western_coline(lpm: &StrongLpm) -> Result<WesternColineResult, StructureError> {
    check_simple(lpm)?;
    let norths = lpm.q().north_positions();
    if norths.len() < 2 {
        return Err(StructureError::RankTooSmall(norths.len()));
    }
    let j1 = norths[norths.len() - 1];
    let j2 = norths[norths.len() - 2];
    let coline = ElementSet::range(1, j2 - 1);
    let result = WesternColineResult {
        j1,
        j2,
        coline,
        prefix_copoint: ElementSet::range(1, j1 - 1),
        prefix_copoint_kind: if j1 - j2 >= 2 {
            CopointKind::Multiple
        } else {
            CopointKind::Simple
        },
        eastern_simple_copoints: (j1..=lpm.n()).map(|k| coline.with(k)).collect(),
    };
    #[cfg(debug_assertions)]
    if lpm.n() <= 12 {
        debug_assert_eq!(
            matroid::coline_report(lpm, coline).ok(),
            Some(result.report()),
            "western coline disagrees with the rank oracle for {lpm:?}"
        );
    }
    Ok(result)
}

/// Which argument produced a quite simple coline.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum QscCase {
    /// `j1 < n`: the Western coline itself.
    Western,
    /// `n` and `e1` are coloops: `E - {n, e1}`.
    TwoColoops { e1: usize },
    /// `n` is the only coloop: contract it, recurse, and add `n` back.
    ContractLast { depth: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuiteSimpleColine {
    pub coline: ElementSet,
    #[serde(flatten)]
    pub case: QscCase,
}

/// A quite simple coline of a simple strong LPM of rank at least two.
pub fn quite_simple_coline(lpm: &StrongLpm) -> Result<QuiteSimpleColine, StructureError> {
    let western = western_coline(lpm)?;
    let n = lpm.n();
    if western.j1 < n {
        return Ok(QuiteSimpleColine {
            coline: western.coline,
            case: QscCase::Western,
        });
    }
    let coloops = matroid::coloops(lpm);
    debug_assert!(
        coloops.contains(n),
        "last north step of q at n makes n a coloop"
    );
    if let Some(e1) = coloops.without(n).first() {
        return Ok(QuiteSimpleColine {
            coline: ElementSet::full(n).without(n).without(e1),
            case: QscCase::TwoColoops { e1 },
        });
    }
    let contracted = contract_last(lpm)?;
    let inner = quite_simple_coline(&contracted)?;
    let depth = match inner.case {
        QscCase::ContractLast { depth } => depth + 1,
        _ => 1,
    };
    Ok(QuiteSimpleColine {
        coline: inner.coline.with(n),
        case: QscCase::ContractLast { depth },
    })
}

/// `M / n` for a coloop `n`, as the pair with the last step of both paths
/// removed. Both paths end with a north step when `n` is a coloop and not a
/// loop.
pub fn contract_last(lpm: &StrongLpm) -> Result<StrongLpm, StructureError> {
    let n = lpm.n();
    if n == 0 {
        return Err(StructureError::OutOfRange { j: 0, n });
    }
    if lpm.q().step(n) != Step::N {
        return Err(StructureError::NotNorthStep(n));
    }
    if lpm.p().step(n) != Step::N {
        return Err(StructureError::HasLoop(n));
    }
    let pair = PathPair::new(lpm.p().truncated(), lpm.q().truncated()).map_err(LpmError::from)?;
    Ok(build_lpm(pair)?)
}

/// `U(2, size)` as the pair `E..ENN ⪯ NNE..E`.
pub fn rank2_lpm(size: usize) -> Result<StrongLpm, StructureError> {
    if size < 2 {
        return Err(StructureError::SizeTooSmall(size));
    }
    let p: String = "E".repeat(size - 2) + "NN";
    let q: String = "NN".to_string() + &"E".repeat(size - 2);
    Ok(StrongLpm::parse(&p, &q)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lpm(p: &str, q: &str) -> StrongLpm {
        StrongLpm::parse(p, q).unwrap()
    }

    fn set(xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(xs.iter().copied())
    }

    fn example1() -> StrongLpm {
        lpm("EENENN", "NNENEE")
    }

    #[test]
    fn prefix_ranks() {
        let m = example1();
        assert_eq!(rank_prefix(&m, 3).unwrap(), 2);
        assert_eq!(rank_prefix(&m, 0).unwrap(), 0);
        assert_eq!(rank_prefix(&m, 6).unwrap(), 3);
        assert_eq!(
            rank_prefix(&m, 7),
            Err(StructureError::OutOfRange { j: 7, n: 6 })
        );
    }

    #[test]
    fn loop_examples() {
        assert!(is_loop_fast(&lpm("NE", "NE"), 2).unwrap());
        assert!(!is_loop_fast(&example1(), 3).unwrap());
        assert!(!is_loop_fast(&lpm("NE", "NE"), 1).unwrap());
        assert!(is_loop_fast(&example1(), 0).is_err());
    }

    #[test]
    fn parallel_examples() {
        assert!(is_parallel_fast(&lpm("EN", "NE"), 1, 2).unwrap());
        assert!(!is_parallel_fast(&example1(), 2, 3).unwrap());
        assert_eq!(
            is_parallel_fast(&example1(), 3, 2),
            Err(StructureError::BadPairOrder(3, 2))
        );
        assert_eq!(
            is_parallel_fast(&lpm("NE", "NE"), 1, 2),
            Err(StructureError::HasLoop(2))
        );
    }

    #[test]
    fn prefix_flats() {
        let w = prefix_is_flat(&example1(), 4).unwrap();
        assert!(w.holds);
        assert_eq!(w.prefix, set(&[1, 2, 3]));
        assert_eq!(w.extensions, vec![(4, 3), (5, 3), (6, 3)]);
        let w = prefix_is_flat(&example1(), 1).unwrap();
        assert!(w.holds && w.prefix.is_empty());
        assert_eq!(
            prefix_is_flat(&lpm("NE", "NE"), 1),
            Err(StructureError::HasLoop(2))
        );
        assert_eq!(
            prefix_is_flat(&example1(), 3),
            Err(StructureError::NotNorthStep(3))
        );
    }

    #[test]
    fn western_example1() {
        let w = western_coline(&example1()).unwrap();
        assert_eq!((w.j1, w.j2), (4, 2));
        assert_eq!(w.coline, set(&[1]));
        assert_eq!(w.prefix_copoint, set(&[1, 2, 3]));
        assert_eq!(w.prefix_copoint_kind, CopointKind::Multiple);
        assert_eq!(
            w.eastern_simple_copoints,
            vec![set(&[1, 4]), set(&[1, 5]), set(&[1, 6])]
        );
        assert!(w.report().quite_simple);
    }

    #[test]
    fn western_u24() {
        let w = western_coline(&lpm("EENN", "NNEE")).unwrap();
        assert_eq!((w.j1, w.j2), (2, 1));
        assert!(w.coline.is_empty());
        assert_eq!(w.prefix_copoint, set(&[1]));
        assert_eq!(w.prefix_copoint_kind, CopointKind::Simple);
        assert_eq!(
            w.eastern_simple_copoints,
            vec![set(&[2]), set(&[3]), set(&[4])]
        );
    }

    #[test]
    fn western_preconditions() {
        assert_eq!(
            western_coline(&lpm("N", "N")),
            Err(StructureError::RankTooSmall(1))
        );
        assert_eq!(
            western_coline(&lpm("NE", "NE")),
            Err(StructureError::HasLoop(2))
        );
        assert_eq!(
            western_coline(&lpm("EN", "NE")),
            Err(StructureError::HasParallel(1, 2))
        );
    }

    #[test]
    fn quite_simple_cases() {
        let a = quite_simple_coline(&example1()).unwrap();
        assert_eq!(a.coline, set(&[1]));
        assert_eq!(a.case, QscCase::Western);

        let b = quite_simple_coline(&lpm("NN", "NN")).unwrap();
        assert_eq!(b.coline, ElementSet::EMPTY);
        assert_eq!(b.case, QscCase::TwoColoops { e1: 1 });

        let m = lpm("ENNN", "NNEN");
        let c = quite_simple_coline(&m).unwrap();
        assert_eq!(c.coline, set(&[4]));
        assert_eq!(c.case, QscCase::ContractLast { depth: 1 });
        let report = matroid::coline_report(&m, c.coline).unwrap();
        assert_eq!(
            report.copoints.iter().map(|c| c.set).collect::<Vec<_>>(),
            vec![set(&[1, 4]), set(&[2, 4]), set(&[3, 4])]
        );
        assert!(report.quite_simple);
    }

    #[test]
    fn rank_two_family() {
        let m = rank2_lpm(4).unwrap();
        assert_eq!(
            (m.p().to_string(), m.q().to_string()),
            ("EENN".into(), "NNEE".into())
        );
        let m = rank2_lpm(2).unwrap();
        assert_eq!(
            (m.p().to_string(), m.q().to_string()),
            ("NN".into(), "NN".into())
        );
        let m = rank2_lpm(3).unwrap();
        assert_eq!(matroid::bases(&m).len(), 3);
        assert_eq!(rank2_lpm(1), Err(StructureError::SizeTooSmall(1)));
    }

    #[test]
    fn contract_last_matches_oracle() {
        let m = lpm("ENNN", "NNEN");
        let c = contract_last(&m).unwrap();
        let oracle = matroid::contract(&m, set(&[4])).unwrap();
        assert_eq!(matroid::bases(&c), matroid::bases(&oracle));
    }
}
