//! Matroid machinery over an abstract rank function.
//!
//! Everything here is generic over [`RankOracle`]: closure, flats, copoints and
//! colines, loops and parallel classes, duals, minors, direct sums and
//! simplification. Ground sets are always `{1..n}`; minors relabel the
//! surviving elements in increasing order and remember the original ids.
//!
//! The [`brute`] module holds reference implementations that scan the full
//! power set. They exist to check the faster routines on small ground sets.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::set::{ElementSet, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("set {set} is not contained in the ground set {{1..{n}}}")]
    NotSubset { set: ElementSet, n: usize },
    #[error("deleted set {0} and contracted set {1} overlap")]
    Overlap(ElementSet, ElementSet),
    #[error("{set} is not a coline: {reason}")]
    NotAColine {
        set: ElementSet,
        reason: &'static str,
    },
    #[error("ground set of size {0} exceeds {MAX_ELEMENTS}")]
    TooLarge(usize),
}

/// A rank function on the subsets of `{1..n}`.
///
/// Implementations are expected to satisfy the rank axioms; nothing here
/// checks them at construction time.
pub trait RankOracle {
    fn ground_size(&self) -> usize;

    fn rank(&self, set: ElementSet) -> usize;

    fn ground(&self) -> ElementSet {
        ElementSet::full(self.ground_size())
    }

    fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    fn is_independent(&self, set: ElementSet) -> bool {
        self.rank(set) == set.len()
    }
}

impl<O: RankOracle + ?Sized> RankOracle for &O {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn rank(&self, set: ElementSet) -> usize {
        (**self).rank(set)
    }
}

impl<O: RankOracle + ?Sized> RankOracle for Box<O> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn rank(&self, set: ElementSet) -> usize {
        (**self).rank(set)
    }
}

impl<O: RankOracle + ?Sized> RankOracle for Arc<O> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn rank(&self, set: ElementSet) -> usize {
        (**self).rank(set)
    }
}

fn check_subset<O: RankOracle + ?Sized>(o: &O, set: ElementSet) -> Result<(), MatroidError> {
    if set.is_subset(o.ground()) {
        Ok(())
    } else {
        Err(MatroidError::NotSubset {
            set,
            n: o.ground_size(),
        })
    }
}

/// Precomputed ranks of every subset. Used to make repeated queries cheap.
#[derive(Clone, Debug)]
pub struct RankTable {
    n: usize,
    ranks: Vec<u8>,
}

impl RankTable {
    /// Largest ground set a table is built for.
    pub const MAX_SIZE: usize = 20;

    pub fn from_oracle<O: RankOracle + ?Sized>(o: &O) -> Result<Self, MatroidError> {
        let n = o.ground_size();
        if n > Self::MAX_SIZE {
            return Err(MatroidError::TooLarge(n));
        }
        let ranks = (0..1u64 << n)
            .map(|bits| o.rank(ElementSet::from_bits(bits)) as u8)
            .collect();
        Ok(RankTable { n, ranks })
    }
}

impl RankOracle for RankTable {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.ranks[set.bits() as usize] as usize
    }
}

/// `cl(X) = {e : rank(X + e) = rank(X)}`.
pub fn closure<O: RankOracle + ?Sized>(o: &O, x: ElementSet) -> ElementSet {
    let r = o.rank(x);
    o.ground()
        .difference(x)
        .iter()
        .filter(|&e| o.rank(x.with(e)) == r)
        .fold(x, |acc, e| acc.with(e))
}

pub fn is_flat<O: RankOracle + ?Sized>(o: &O, x: ElementSet) -> bool {
    closure(o, x) == x
}

pub fn loops<O: RankOracle + ?Sized>(o: &O) -> ElementSet {
    o.ground()
        .iter()
        .filter(|&e| o.rank(ElementSet::singleton(e)) == 0)
        .collect()
}

pub fn coloops<O: RankOracle + ?Sized>(o: &O) -> ElementSet {
    let ground = o.ground();
    let r = o.rank(ground);
    ground
        .iter()
        .filter(|&e| o.rank(ground.without(e)) + 1 == r)
        .collect()
}

/// Pairs `(j, k)`, `j < k`, of non-loops spanning a rank-one set.
pub fn parallel_pairs<O: RankOracle + ?Sized>(o: &O) -> Vec<(usize, usize)> {
    let non_loops = o.ground().difference(loops(o));
    let mut pairs = Vec::new();
    for j in non_loops {
        for k in non_loops.iter().filter(|&k| k > j) {
            if o.rank(ElementSet::from_elements([j, k])) == 1 {
                pairs.push((j, k));
            }
        }
    }
    pairs
}

pub fn is_simple<O: RankOracle + ?Sized>(o: &O) -> bool {
    loops(o).is_empty() && parallel_pairs(o).is_empty()
}

/// Flats of the given rank, found by closing `F + e` upward from `cl(∅)`.
pub fn flats_of_rank<O: RankOracle + ?Sized>(o: &O, rank: usize) -> Vec<ElementSet> {
    if rank > o.full_rank() {
        return Vec::new();
    }
    let ground = o.ground();
    let mut level: BTreeSet<ElementSet> = BTreeSet::from([closure(o, ElementSet::EMPTY)]);
    for _ in 0..rank {
        level = level
            .iter()
            .flat_map(|&flat| ground.difference(flat).iter().map(move |e| flat.with(e)))
            .map(|x| closure(o, x))
            .collect();
    }
    level.into_iter().collect()
}

/// Every flat, grouped by rank from `0` to `r`.
pub fn flats<O: RankOracle + ?Sized>(o: &O) -> Vec<Vec<ElementSet>> {
    (0..=o.full_rank()).map(|k| flats_of_rank(o, k)).collect()
}

/// Closed sets of rank `r - 1` (hyperplanes).
pub fn copoints<O: RankOracle + ?Sized>(o: &O) -> Vec<ElementSet> {
    match o.full_rank() {
        0 => Vec::new(),
        r => flats_of_rank(o, r - 1),
    }
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CopointKind {
    Simple,
    Multiple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CopointOnColine {
    pub set: ElementSet,
    pub kind: CopointKind,
}

/// A coline together with all copoints containing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColineReport {
    pub coline: ElementSet,
    pub copoints: Vec<CopointOnColine>,
    pub quite_simple: bool,
}

impl ColineReport {
    pub fn simple_count(&self) -> usize {
        self.copoints
            .iter()
            .filter(|c| c.kind == CopointKind::Simple)
            .count()
    }

    pub fn multiple_count(&self) -> usize {
        self.copoints.len() - self.simple_count()
    }
}

/// The copoints containing `w`, as closures of `w + e`, ordered by the least
/// element they add to `w`.
pub fn copoints_on<O: RankOracle + ?Sized>(o: &O, w: ElementSet) -> Vec<ElementSet> {
    let mut seen = ElementSet::EMPTY;
    let mut out = Vec::new();
    for e in o.ground().difference(w) {
        if seen.contains(e) {
            continue;
        }
        let y = closure(o, w.with(e));
        seen = seen.union(y);
        out.push(y);
    }
    out
}

/// Classify the copoints on `w`; fails unless `w` is a coline.
pub fn coline_report<O: RankOracle + ?Sized>(
    o: &O,
    w: ElementSet,
) -> Result<ColineReport, MatroidError> {
    check_subset(o, w)?;
    let r = o.full_rank();
    if r < 2 || o.rank(w) + 2 != r {
        return Err(MatroidError::NotAColine {
            set: w,
            reason: "rank is not r - 2",
        });
    }
    if !is_flat(o, w) {
        return Err(MatroidError::NotAColine {
            set: w,
            reason: "not closed",
        });
    }
    Ok(classify_copoints(w, copoints_on(o, w)))
}

fn classify_copoints(w: ElementSet, ys: Vec<ElementSet>) -> ColineReport {
    let copoints: Vec<CopointOnColine> = ys
        .into_iter()
        .map(|set| CopointOnColine {
            set,
            kind: if set.difference(w).len() == 1 {
                CopointKind::Simple
            } else {
                CopointKind::Multiple
            },
        })
        .collect();
    let mut report = ColineReport {
        coline: w,
        copoints,
        quite_simple: false,
    };
    report.quite_simple = report.simple_count() > report.multiple_count();
    report
}

/// All colines with their reports; `rank_too_small` flags `r < 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColineEnumeration {
    pub reports: Vec<ColineReport>,
    pub rank_too_small: bool,
}

pub fn colines<O: RankOracle + ?Sized>(o: &O) -> ColineEnumeration {
    let r = o.full_rank();
    if r < 2 {
        return ColineEnumeration {
            reports: Vec::new(),
            rank_too_small: true,
        };
    }
    let reports = flats_of_rank(o, r - 2)
        .into_iter()
        .map(|w| classify_copoints(w, copoints_on(o, w)))
        .collect();
    ColineEnumeration {
        reports,
        rank_too_small: false,
    }
}

/// Bases, found by scanning the `r`-subsets of the ground set. Sorted by bitmask.
pub fn bases<O: RankOracle + ?Sized>(o: &O) -> Vec<ElementSet> {
    let r = o.full_rank();
    o.ground()
        .subsets()
        .filter(|s| s.len() == r && o.rank(*s) == r)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Minimal dependent sets. Exponential; for small ground sets.
pub fn circuits<O: RankOracle + ?Sized>(o: &O) -> Vec<ElementSet> {
    let mut by_size: Vec<ElementSet> = o
        .ground()
        .subsets()
        .filter(|&s| !o.is_independent(s))
        .collect();
    by_size.sort_by_key(|s| (s.len(), *s));
    let mut out: Vec<ElementSet> = Vec::new();
    for s in by_size {
        if !out.iter().any(|c| c.is_subset(s)) {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// `r*(X) = |X| + r(E - X) - r(E)`.
#[derive(Clone, Debug)]
pub struct Dual<O> {
    inner: O,
}

pub fn dual<O: RankOracle>(o: O) -> Dual<O> {
    Dual { inner: o }
}

impl<O: RankOracle> Dual<O> {
    pub fn inner(&self) -> &O {
        &self.inner
    }
}

impl<O: RankOracle> RankOracle for Dual<O> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn rank(&self, set: ElementSet) -> usize {
        let ground = self.inner.ground();
        set.len() + self.inner.rank(ground.difference(set)) - self.inner.rank(ground)
    }
}

/// `M / C \ D`, relabelled to `{1..k}` in increasing order of the kept elements.
#[derive(Clone, Debug)]
pub struct Minor<O> {
    inner: O,
    contracted: ElementSet,
    contracted_rank: usize,
    kept: Vec<usize>,
}

impl<O: RankOracle> Minor<O> {
    /// Original ids of the minor's elements; element `i` of the minor is
    /// `kept()[i - 1]` of the parent.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }

    /// Translate a set of the minor into the parent's labels.
    pub fn lift(&self, set: ElementSet) -> ElementSet {
        set.iter().map(|e| self.kept[e - 1]).collect()
    }
}

impl<O: RankOracle> RankOracle for Minor<O> {
    fn ground_size(&self) -> usize {
        self.kept.len()
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.inner.rank(self.lift(set).union(self.contracted)) - self.contracted_rank
    }
}

/// Delete `deleted` and contract `contracted` (disjoint subsets of `E`).
pub fn minor<O: RankOracle>(
    o: O,
    deleted: ElementSet,
    contracted: ElementSet,
) -> Result<Minor<O>, MatroidError> {
    check_subset(&o, deleted)?;
    check_subset(&o, contracted)?;
    if !deleted.is_disjoint(contracted) {
        return Err(MatroidError::Overlap(deleted, contracted));
    }
    let kept = o.ground().difference(deleted.union(contracted)).to_vec();
    let contracted_rank = o.rank(contracted);
    Ok(Minor {
        inner: o,
        contracted,
        contracted_rank,
        kept,
    })
}

pub fn delete<O: RankOracle>(o: O, set: ElementSet) -> Result<Minor<O>, MatroidError> {
    minor(o, set, ElementSet::EMPTY)
}

pub fn contract<O: RankOracle>(o: O, set: ElementSet) -> Result<Minor<O>, MatroidError> {
    minor(o, ElementSet::EMPTY, set)
}

/// The second summand's elements are shifted to `{n1+1..n1+n2}`.
#[derive(Clone, Debug)]
pub struct DirectSum<A, B> {
    first: A,
    second: B,
}

pub fn direct_sum<A: RankOracle, B: RankOracle>(
    first: A,
    second: B,
) -> Result<DirectSum<A, B>, MatroidError> {
    let n = first.ground_size() + second.ground_size();
    if n > MAX_ELEMENTS {
        return Err(MatroidError::TooLarge(n));
    }
    Ok(DirectSum { first, second })
}

impl<A: RankOracle, B: RankOracle> RankOracle for DirectSum<A, B> {
    fn ground_size(&self) -> usize {
        self.first.ground_size() + self.second.ground_size()
    }

    fn rank(&self, set: ElementSet) -> usize {
        let n1 = self.first.ground_size();
        let low = set.intersection(ElementSet::full(n1));
        let high = ElementSet::from_bits(set.bits().checked_shr(n1 as u32).unwrap_or(0));
        self.first.rank(low) + self.second.rank(high)
    }
}

/// Remove loops and all but the least element of each parallel class.
///
/// Returns the simplification as a deletion minor; its `kept()` list maps the
/// new elements back to their representatives.
pub fn simplify<O: RankOracle>(o: O) -> Minor<O> {
    let loop_set = loops(&o);
    let mut dropped = loop_set;
    for e in o.ground().difference(loop_set) {
        if dropped.contains(e) {
            continue;
        }
        for f in o.ground().difference(dropped).iter().filter(|&f| f > e) {
            if o.rank(ElementSet::from_elements([e, f])) == 1 {
                dropped = dropped.with(f);
            }
        }
    }
    delete(o, dropped).expect("dropped elements lie in the ground set")
}

/// Power-set scans used as reference implementations.
pub mod brute {
    use super::*;

    /// Every flat, found by testing each subset for closedness.
    pub fn flats<O: RankOracle + ?Sized>(o: &O) -> Vec<ElementSet> {
        let ground = o.ground();
        let mut out: Vec<ElementSet> = ground
            .subsets()
            .filter(|&x| {
                let r = o.rank(x);
                ground.difference(x).iter().all(|e| o.rank(x.with(e)) > r)
            })
            .collect();
        out.sort();
        out
    }

    pub fn flats_of_rank<O: RankOracle + ?Sized>(o: &O, rank: usize) -> Vec<ElementSet> {
        flats(o)
            .into_iter()
            .filter(|&f| o.rank(f) == rank)
            .collect()
    }

    /// Bases as the maximal independent sets of the full power set.
    pub fn bases<O: RankOracle + ?Sized>(o: &O) -> Vec<ElementSet> {
        let independent: Vec<ElementSet> = o
            .ground()
            .subsets()
            .filter(|&x| o.is_independent(x))
            .collect();
        let top = independent.iter().map(|x| x.len()).max().unwrap_or(0);
        let mut out: Vec<ElementSet> = independent.into_iter().filter(|x| x.len() == top).collect();
        out.sort();
        out
    }

    /// Rank function built from an explicit list of bases.
    #[derive(Clone, Debug)]
    pub struct BaseListOracle {
        pub n: usize,
        pub bases: Vec<ElementSet>,
    }

    impl RankOracle for BaseListOracle {
        fn ground_size(&self) -> usize {
            self.n
        }

        fn rank(&self, set: ElementSet) -> usize {
            self.bases
                .iter()
                .map(|b| b.intersection(set).len())
                .max()
                .unwrap_or(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::brute::BaseListOracle;
    use super::*;

    fn uniform(r: usize, n: usize) -> BaseListOracle {
        BaseListOracle {
            n,
            bases: ElementSet::full(n)
                .subsets()
                .filter(|s| s.len() == r)
                .collect(),
        }
    }

    fn set(xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(xs.iter().copied())
    }

    #[test]
    fn uniform_colines_and_copoints() {
        let u24 = uniform(2, 4);
        let cols = colines(&u24);
        assert!(!cols.rank_too_small);
        assert_eq!(cols.reports.len(), 1);
        let report = &cols.reports[0];
        assert_eq!(report.coline, ElementSet::EMPTY);
        assert_eq!(report.simple_count(), 4);
        assert!(report.quite_simple);
        assert_eq!(
            copoints(&u24),
            (1..=4).map(ElementSet::singleton).collect::<Vec<_>>()
        );
    }

    #[test]
    fn rank_one_has_no_colines() {
        let cols = colines(&uniform(1, 3));
        assert!(cols.rank_too_small);
        assert!(cols.reports.is_empty());
    }

    #[test]
    fn coline_report_rejects_non_colines() {
        let u24 = uniform(2, 4);
        assert!(matches!(
            coline_report(&u24, set(&[1])),
            Err(MatroidError::NotAColine { .. })
        ));
        assert!(matches!(
            coline_report(&u24, set(&[9])),
            Err(MatroidError::NotSubset { .. })
        ));
        let with_loop = BaseListOracle {
            n: 3,
            bases: vec![set(&[1, 2])],
        };
        // {} has rank 0 = r - 2 but is not closed: 3 is a loop.
        assert!(matches!(
            coline_report(&with_loop, ElementSet::EMPTY),
            Err(MatroidError::NotAColine {
                reason: "not closed",
                ..
            })
        ));
    }

    #[test]
    fn ascent_matches_scan() {
        let u35 = uniform(3, 5);
        for k in 0..=3 {
            assert_eq!(flats_of_rank(&u35, k), brute::flats_of_rank(&u35, k));
        }
    }

    #[test]
    fn dual_of_uniform() {
        let u24 = uniform(2, 4);
        assert_eq!(bases(&dual(&u24)), bases(&u24));
        let u13 = uniform(1, 3);
        assert_eq!(bases(&dual(&u13)), bases(&uniform(2, 3)));
    }

    #[test]
    fn minors_relabel() {
        let u24 = uniform(2, 4);
        let c = contract(&u24, set(&[4])).unwrap();
        assert_eq!(c.kept(), &[1, 2, 3]);
        assert_eq!(bases(&c), bases(&uniform(1, 3)));
        let d = delete(&u24, set(&[2])).unwrap();
        assert_eq!(bases(&d), bases(&uniform(2, 3)));
        assert!(matches!(
            minor(&u24, set(&[1]), set(&[1, 2])),
            Err(MatroidError::Overlap(..))
        ));
        assert!(matches!(
            delete(&u24, set(&[5])),
            Err(MatroidError::NotSubset { .. })
        ));
    }

    #[test]
    fn direct_sum_shifts_second() {
        let s = direct_sum(uniform(1, 1), uniform(1, 2)).unwrap();
        assert_eq!(s.ground_size(), 3);
        assert_eq!(bases(&s), vec![set(&[1, 2]), set(&[1, 3])]);
        assert_eq!(coloops(&s), set(&[1]));
    }

    #[test]
    fn simplify_keeps_least_representatives() {
        // 1 loop, {2,3,5} parallel, 4 free
        let m = BaseListOracle {
            n: 5,
            bases: vec![set(&[2, 4]), set(&[3, 4]), set(&[4, 5])],
        };
        assert_eq!(loops(&m), set(&[1]));
        assert_eq!(parallel_pairs(&m), vec![(2, 3), (2, 5), (3, 5)]);
        let s = simplify(&m);
        assert_eq!(s.kept(), &[2, 4]);
        assert!(is_simple(&s));
    }

    #[test]
    fn circuits_of_u23() {
        assert_eq!(circuits(&uniform(2, 3)), vec![set(&[1, 2, 3])]);
        let with_loop = BaseListOracle {
            n: 2,
            bases: vec![set(&[1])],
        };
        assert_eq!(circuits(&with_loop), vec![set(&[2])]);
    }

    #[test]
    fn rank_table_agrees() {
        let u24 = uniform(2, 4);
        let table = RankTable::from_oracle(&u24).unwrap();
        for x in u24.ground().subsets() {
            assert_eq!(table.rank(x), u24.rank(x));
        }
    }
}
