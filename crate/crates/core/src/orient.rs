//! Orientations from exact rational representations, signed cocircuits, and
//! coflow certificates.
//!
//! A representation places the columns of `M[p, q]` in `Q^m` on the support
//! pattern of the presentation. Each copoint `H` spans a hyperplane; the
//! linear functional vanishing on it assigns a sign to every element outside
//! `H`, giving one signed cocircuit per copoint. Coflows are the integer
//! combinations of the cocircuit sign vectors.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{combine, nonzero_range, IntLattice};
use crate::matroid::{self, ColineReport, MatroidError, RankOracle, RankTable};
use crate::rational::{primitive_integer, RationalMatrix};
use crate::set::ElementSet;
use crate::transversal::{LpmDump, StrongLpm};

/// Number of reseeds before giving up on a representation.
pub const MAX_ATTEMPTS: u64 = 32;
/// Largest entry drawn for a synthesized representation.
pub const MAX_ENTRY: u64 = 1 << 20;
/// Ground sets up to this size are verified on every subset.
pub const FULL_CHECK_LIMIT: usize = 14;
/// Random subsets checked beyond [`FULL_CHECK_LIMIT`].
pub const SAMPLED_SUBSETS: usize = 10_000;
/// Largest bound tried by [`chromatic_number`].
pub const MAX_CHROMATIC_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientError {
    #[error("representation has {got} columns but the matroid has {expected} elements")]
    SizeMismatch { expected: usize, got: usize },
    #[error("column rank of {subset} is {got}, matroid rank is {expected}")]
    RankMismatch {
        subset: ElementSet,
        expected: usize,
        got: usize,
    },
    #[error("no verified representation after {attempts} attempts; last failure: {last}")]
    VerificationExhausted {
        attempts: u64,
        last: Box<OrientError>,
    },
    #[error(
        "functional for copoint {copoint} does not cut out its complement (support {support})"
    )]
    DegenerateCocircuit {
        copoint: ElementSet,
        support: ElementSet,
    },
    #[error("matroid has loops {0}; the chromatic number is undefined")]
    HasLoop(ElementSet),
    #[error("{0} is not a quite simple coline")]
    NotQuiteSimple(ElementSet),
    #[error("bound {0} must be at least 2")]
    BoundTooSmall(usize),
    #[error("ground set of size {size} exceeds the budget {budget}")]
    OverBudget { size: usize, budget: usize },
    #[error("coefficient does not fit in 64 bits")]
    CoefficientOverflow,
    #[error("falsification: {}", .0.detail)]
    Falsified(Box<FalsificationArtifact>),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// Column vectors of a matroid in `Q^m`.
#[derive(Debug)]
pub struct RationalRepresentation {
    matrix: RationalMatrix,
    seed: Option<u64>,
    table: OnceLock<Option<RankTable>>,
}

impl Clone for RationalRepresentation {
    fn clone(&self) -> Self {
        RationalRepresentation {
            matrix: self.matrix.clone(),
            seed: self.seed,
            table: self.table.clone(),
        }
    }
}

impl RationalRepresentation {
    pub fn new(matrix: RationalMatrix) -> Self {
        RationalRepresentation {
            matrix,
            seed: None,
            table: OnceLock::new(),
        }
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        Self::new(RationalMatrix::from_integer_rows(rows))
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    /// Seed that produced this matrix, when synthesized.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    /// Rank of the columns in `set`, by elimination.
    pub fn column_rank(&self, set: ElementSet) -> usize {
        let cols: Vec<usize> = set.iter().map(|e| e - 1).collect();
        if cols.is_empty() {
            return 0;
        }
        self.matrix.select_columns(&cols).rank()
    }

    fn table(&self) -> Option<&RankTable> {
        self.table
            .get_or_init(|| {
                (self.n() <= RankTable::MAX_SIZE).then(|| {
                    let direct = ColumnRank(self);
                    RankTable::from_oracle(&direct).expect("size checked")
                })
            })
            .as_ref()
    }

    /// Compare column ranks with `oracle`: on every subset when
    /// `n <= FULL_CHECK_LIMIT`, otherwise on singletons, pairs, fundamental
    /// circuits of one base, copoint complements and seeded random subsets.
    pub fn verify_against<O: RankOracle + ?Sized>(
        &self,
        oracle: &O,
        seed: u64,
    ) -> Result<(), OrientError> {
        let n = oracle.ground_size();
        if self.n() != n {
            return Err(OrientError::SizeMismatch {
                expected: n,
                got: self.n(),
            });
        }
        let check = |subset: ElementSet| -> Result<(), OrientError> {
            let expected = oracle.rank(subset);
            let got = self.column_rank(subset);
            if expected == got {
                Ok(())
            } else {
                Err(OrientError::RankMismatch {
                    subset,
                    expected,
                    got,
                })
            }
        };
        let ground = oracle.ground();
        if n <= FULL_CHECK_LIMIT {
            // Singletons first so the reported failure is the smallest one.
            let mut subsets: Vec<ElementSet> = ground.subsets().collect();
            subsets.sort_by_key(|s| (s.len(), *s));
            return subsets.into_iter().try_for_each(check);
        }
        for j in ground {
            check(ElementSet::singleton(j))?;
            for k in ground.iter().filter(|&k| k > j) {
                check(ElementSet::from_elements([j, k]))?;
            }
        }
        let base = greedy_base(oracle);
        for e in ground.difference(base) {
            let circuit = base
                .iter()
                .filter(|&b| oracle.rank(base.with(e).without(b)) == base.len())
                .fold(ElementSet::singleton(e), |acc, b| acc.with(b));
            check(circuit)?;
        }
        for h in matroid::copoints(oracle) {
            check(ground.difference(h))?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mask = ground.bits();
        for _ in 0..SAMPLED_SUBSETS {
            check(ElementSet::from_bits(rng.gen::<u64>() & mask))?;
        }
        Ok(())
    }

    /// Remove `deleted`, contract `contracted`, and relabel the survivors in
    /// increasing order. Returns the surviving original ids.
    pub fn minor(&self, deleted: ElementSet, contracted: ElementSet) -> (Self, Vec<usize>) {
        let kept: Vec<usize> = ElementSet::full(self.n())
            .difference(deleted.union(contracted))
            .to_vec();
        let kept_cols: Vec<usize> = kept.iter().map(|e| e - 1).collect();
        let restricted = self.matrix.select_columns(&kept_cols);
        let matrix = if contracted.is_empty() {
            restricted
        } else {
            let c_cols: Vec<usize> = contracted.iter().map(|e| e - 1).collect();
            let annihilator = self.matrix.select_columns(&c_cols).left_nullspace();
            if annihilator.is_empty() {
                RationalMatrix::zeros(0, kept.len())
            } else {
                RationalMatrix::from_rows(annihilator).mul(&restricted)
            }
        };
        (Self::new(matrix), kept)
    }

    /// Drop zero columns and all but the first of each class of parallel
    /// columns. Returns the surviving original ids.
    pub fn simplify(&self) -> (Self, Vec<usize>) {
        let simple = matroid::simplify(self);
        let kept = simple.kept().to_vec();
        let dropped = ElementSet::full(self.n()).difference(kept.iter().copied().collect());
        let (rep, kept2) = self.minor(dropped, ElementSet::EMPTY);
        debug_assert_eq!(kept, kept2);
        (rep, kept)
    }
}

struct ColumnRank<'a>(&'a RationalRepresentation);

impl RankOracle for ColumnRank<'_> {
    fn ground_size(&self) -> usize {
        self.0.n()
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.0.column_rank(set)
    }
}

impl RankOracle for RationalRepresentation {
    fn ground_size(&self) -> usize {
        self.n()
    }

    fn rank(&self, set: ElementSet) -> usize {
        match self.table() {
            Some(t) => t.rank(set),
            None => self.column_rank(set),
        }
    }
}

fn greedy_base<O: RankOracle + ?Sized>(o: &O) -> ElementSet {
    o.ground().iter().fold(ElementSet::EMPTY, |b, e| {
        if o.rank(b.with(e)) > b.len() {
            b.with(e)
        } else {
            b
        }
    })
}

/// Seeded integer matrix on the presentation pattern of `lpm`.
pub fn draw_on_pattern(lpm: &StrongLpm, seed: u64) -> RationalRepresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<i64>> = lpm
        .presentation()
        .iter()
        .map(|a| {
            (1..=lpm.n())
                .map(|j| {
                    if a.contains(j) {
                        rng.gen_range(1..=MAX_ENTRY) as i64
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let mut rep = RationalRepresentation::from_integer_rows(&rows);
    if rows.is_empty() {
        rep.matrix = RationalMatrix::zeros(0, lpm.n());
    }
    rep.seed = Some(seed);
    rep
}

/// A verified representation of `lpm`, reseeding `seed, seed + 1, ...` until
/// one passes the rank checks and yields non-degenerate cocircuits.
pub fn synthesize_representation(
    lpm: &StrongLpm,
    seed: u64,
) -> Result<RationalRepresentation, OrientError> {
    let mut last = None;
    for attempt in 0..MAX_ATTEMPTS {
        let s = seed.wrapping_add(attempt);
        let rep = draw_on_pattern(lpm, s);
        let outcome = rep
            .verify_against(lpm, s)
            .and_then(|()| signed_cocircuits(&rep).map(|_| ()));
        match outcome {
            Ok(()) => return Ok(rep),
            Err(e) => last = Some(e),
        }
    }
    Err(OrientError::VerificationExhausted {
        attempts: MAX_ATTEMPTS,
        last: Box::new(last.expect("at least one attempt")),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedCocircuit {
    pub support: ElementSet,
    /// One entry per element: `+1`, `-1`, or `0` off the support.
    pub signs: Vec<i8>,
}

impl SignedCocircuit {
    pub fn vector(&self) -> Vec<i64> {
        self.signs.iter().map(|&s| s as i64).collect()
    }

    pub fn negated(&self) -> Self {
        SignedCocircuit {
            support: self.support,
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }
}

/// Sign vector of the functional vanishing on the columns of `copoint`.
///
/// The functional is scaled to a primitive integer vector whose last nonzero
/// coordinate is positive.
pub fn cocircuit_for_copoint(
    rep: &RationalRepresentation,
    copoint: ElementSet,
) -> Result<SignedCocircuit, OrientError> {
    let n = rep.n();
    let m = rep.matrix.rows();
    let cols: Vec<usize> = copoint.iter().map(|e| e - 1).collect();
    let annihilator = rep.matrix.select_columns(&cols).left_nullspace();
    let complement = ElementSet::full(n).difference(copoint);
    // Rows beyond the rank leave functionals vanishing on every column; any
    // other vector in the annihilator gives the same cocircuit up to scale.
    let functional = |y: &[BigRational]| -> Vec<BigRational> {
        (0..n)
            .map(|j| {
                (0..m).fold(BigRational::zero(), |acc, i| {
                    acc + &y[i] * rep.matrix.get(i, j)
                })
            })
            .collect()
    };
    let Some(y) = annihilator
        .iter()
        .find(|y| functional(y).iter().any(|v| !v.is_zero()))
    else {
        return Err(OrientError::DegenerateCocircuit {
            copoint,
            support: ElementSet::EMPTY,
        });
    };
    let y = primitive_integer(y);
    let signs: Vec<i8> = (0..n)
        .map(|j| {
            let value = (0..m).fold(BigRational::zero(), |acc, i| {
                acc + BigRational::from_integer(y[i].clone()) * rep.matrix.get(i, j)
            });
            if value.is_zero() {
                0
            } else if value.is_positive() {
                1
            } else {
                -1
            }
        })
        .collect();
    let support: ElementSet = (1..=n).filter(|&e| signs[e - 1] != 0).collect();
    if support != complement {
        return Err(OrientError::DegenerateCocircuit { copoint, support });
    }
    Ok(SignedCocircuit { support, signs })
}

/// One signed cocircuit per copoint, ordered by copoint.
pub fn signed_cocircuits(
    rep: &RationalRepresentation,
) -> Result<Vec<SignedCocircuit>, OrientError> {
    matroid::copoints(rep)
        .into_iter()
        .map(|h| cocircuit_for_copoint(rep, h))
        .collect()
}

/// The integer span of a family of signed cocircuits.
#[derive(Debug, Clone)]
pub struct CoflowLattice {
    generators: Vec<Vec<i64>>,
    lattice: IntLattice,
}

impl CoflowLattice {
    pub fn new(n: usize, cocircuits: &[SignedCocircuit]) -> Self {
        let generators: Vec<Vec<i64>> = cocircuits.iter().map(|c| c.vector()).collect();
        let lattice = IntLattice::from_generators(n, &generators);
        CoflowLattice {
            generators,
            lattice,
        }
    }

    pub fn from_representation(rep: &RationalRepresentation) -> Result<Self, OrientError> {
        Ok(Self::new(rep.n(), &signed_cocircuits(rep)?))
    }

    pub fn n(&self) -> usize {
        self.lattice.dim()
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Membership, with coefficients over the cocircuits when `f` is a coflow.
    pub fn membership(&self, f: &[i64]) -> Membership {
        match self.lattice.solve(f) {
            Some(coefficients) => Membership {
                member: true,
                coefficients: Some(coefficients),
            },
            None => Membership {
                member: false,
                coefficients: None,
            },
        }
    }

    /// Does `coefficients · cocircuits` reproduce `f` exactly?
    pub fn recheck(&self, f: &[i64], coefficients: &[BigInt]) -> bool {
        coefficients.len() == self.generators.len()
            && combine(coefficients, &self.generators, self.n())
                .iter()
                .zip(f)
                .all(|(a, &b)| *a == BigInt::from(b))
            && f.len() == self.n()
    }

    /// Lexicographically least coflow with every entry in `1..=bound` in
    /// absolute value.
    pub fn least_nowhere_zero(&self, bound: usize) -> Option<Vec<i64>> {
        self.lattice
            .least_vector_in_box(&nonzero_range(bound as i64))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub coefficients: Option<Vec<BigInt>>,
}

/// Is `f` an integer combination of the cocircuit sign vectors?
pub fn is_coflow(f: &[i64], cocircuits: &[SignedCocircuit]) -> Membership {
    CoflowLattice::new(f.len(), cocircuits).membership(f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coflow {
    pub values: Vec<i64>,
    pub coefficients: Vec<i64>,
}

impl Coflow {
    pub fn support(&self) -> ElementSet {
        (1..=self.values.len())
            .filter(|&e| self.values[e - 1] != 0)
            .collect()
    }
}

fn to_i64(coefficients: Vec<BigInt>) -> Result<Vec<i64>, OrientError> {
    coefficients
        .iter()
        .map(|c| c.to_i64().ok_or(OrientError::CoefficientOverflow))
        .collect()
}

/// `{0, ±1}` vectors with one or two nonzero entries, ascending.
pub fn local_candidates(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for j in 0..n {
        for sj in [-1, 1] {
            let mut v = vec![0; n];
            v[j] = sj;
            out.push(v.clone());
            for k in j + 1..n {
                for sk in [-1, 1] {
                    let mut w = v.clone();
                    w[k] = sk;
                    out.push(w);
                }
            }
        }
    }
    out.sort();
    out
}

/// First `{0, ±1}` coflow with one or two nonzero entries, if any.
pub fn local_coflow_search(lattice: &CoflowLattice) -> Result<Option<Coflow>, OrientError> {
    for values in local_candidates(lattice.n()) {
        if let Some(coefficients) = lattice.membership(&values).coefficients {
            return Ok(Some(Coflow {
                values,
                coefficients: to_i64(coefficients)?,
            }));
        }
    }
    Ok(None)
}

/// A `{0, ±1}` coflow with one or two nonzero entries for a representation
/// whose matroid has the quite simple coline `coline`.
pub fn qsc_local_coflow(
    rep: &RationalRepresentation,
    coline: ElementSet,
) -> Result<Coflow, OrientError> {
    let report = matroid::coline_report(rep, coline)?;
    if !report.quite_simple {
        return Err(OrientError::NotQuiteSimple(coline));
    }
    let lattice = CoflowLattice::from_representation(rep)?;
    local_coflow_search(&lattice)?.ok_or_else(|| {
        OrientError::Falsified(Box::new(FalsificationArtifact::new(
            "local_coflow",
            None,
            rep,
            format!(
                "no {{0,±1}} coflow with one or two nonzero entries although {} is quite simple",
                coline
            ),
            SearchSpace::Local {
                candidates: local_candidates(rep.n()).len(),
                coline: Some(report),
            },
        )))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeColorCertificate {
    #[serde(rename = "F")]
    pub values: Vec<i64>,
    pub coefficients: Vec<i64>,
    pub max_abs: i64,
    pub verified: bool,
}

impl ThreeColorCertificate {
    /// Recompute `coefficients · cocircuits` and compare; also check the
    /// entry bounds.
    pub fn check(&self, cocircuits: &[SignedCocircuit]) -> bool {
        let lattice = CoflowLattice::new(self.values.len(), cocircuits);
        let coefficients: Vec<BigInt> = self.coefficients.iter().map(|&c| c.into()).collect();
        lattice.recheck(&self.values, &coefficients)
            && self.values.iter().all(|&x| x != 0 && x.abs() <= 2)
            && self.max_abs == self.values.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

fn require_loopless<O: RankOracle + ?Sized>(o: &O) -> Result<(), OrientError> {
    let l = matroid::loops(o);
    if l.is_empty() {
        Ok(())
    } else {
        Err(OrientError::HasLoop(l))
    }
}

fn check_sizes(lpm: &StrongLpm, rep: &RationalRepresentation) -> Result<(), OrientError> {
    if lpm.n() == rep.n() {
        Ok(())
    } else {
        Err(OrientError::SizeMismatch {
            expected: lpm.n(),
            got: rep.n(),
        })
    }
}

/// The lexicographically least nowhere-zero coflow with entries in
/// `{-2, -1, 1, 2}`, with its cocircuit coefficients re-verified.
pub fn nowhere_zero_3_coflow(
    lpm: &StrongLpm,
    rep: &RationalRepresentation,
) -> Result<ThreeColorCertificate, OrientError> {
    check_sizes(lpm, rep)?;
    require_loopless(lpm)?;
    let cocircuits = signed_cocircuits(rep)?;
    let lattice = CoflowLattice::new(rep.n(), &cocircuits);
    let Some(values) = lattice.least_nowhere_zero(2) else {
        return Err(OrientError::Falsified(Box::new(
            FalsificationArtifact::new(
                "nowhere_zero_3_coflow",
                Some(lpm),
                rep,
                "no nowhere-zero coflow with entries in {±1,±2}".into(),
                SearchSpace::Box {
                    bound: 2,
                    lattice_rank: lattice.lattice().rank(),
                    pivots: lattice.lattice().pivots().to_vec(),
                },
            ),
        )));
    };
    let coefficients = lattice
        .membership(&values)
        .coefficients
        .expect("search returns lattice vectors");
    let mut certificate = ThreeColorCertificate {
        max_abs: values.iter().map(|x| x.abs()).max().unwrap_or(0),
        values,
        coefficients: to_i64(coefficients)?,
        verified: false,
    };
    certificate.verified = certificate.check(&cocircuits);
    Ok(certificate)
}

/// Is there a nowhere-zero coflow with `|F(e)| <= k - 1` everywhere?
pub fn chromatic_upper(
    lpm: &StrongLpm,
    rep: &RationalRepresentation,
    k: usize,
) -> Result<bool, OrientError> {
    check_sizes(lpm, rep)?;
    require_loopless(lpm)?;
    if k < 2 {
        return Err(OrientError::BoundTooSmall(k));
    }
    let lattice = CoflowLattice::from_representation(rep)?;
    Ok(lattice.least_nowhere_zero(k - 1).is_some())
}

/// Least `k >= 2` for which [`chromatic_upper`] holds.
pub fn chromatic_number(
    lpm: &StrongLpm,
    rep: &RationalRepresentation,
) -> Result<usize, OrientError> {
    check_sizes(lpm, rep)?;
    require_loopless(lpm)?;
    let lattice = CoflowLattice::from_representation(rep)?;
    chromatic_number_of_lattice(&lattice)
}

pub fn chromatic_number_of_lattice(lattice: &CoflowLattice) -> Result<usize, OrientError> {
    (2..=MAX_CHROMATIC_BOUND)
        .find(|&k| lattice.least_nowhere_zero(k - 1).is_some())
        .ok_or(OrientError::BoundTooSmall(MAX_CHROMATIC_BOUND))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub deleted: ElementSet,
    pub contracted: ElementSet,
    /// Original ids of the simplified minor's elements.
    pub elements: Vec<usize>,
    pub coflow: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GspReport {
    pub minors_checked: usize,
    pub skipped_empty: usize,
    pub witnesses: Vec<MinorWitness>,
}

/// Default ground-set budget for [`gsp_check`].
pub const DEFAULT_GSP_BUDGET: usize = 10;

/// For every pair of disjoint `(deleted, contracted)`, simplify the minor and
/// look for a `{0, ±1}` coflow with one or two nonzero entries. Minors that
/// simplify to the empty matroid are skipped.
pub fn gsp_check(
    lpm: &StrongLpm,
    rep: &RationalRepresentation,
    budget: usize,
) -> Result<GspReport, OrientError> {
    check_sizes(lpm, rep)?;
    let n = rep.n();
    if n > budget {
        return Err(OrientError::OverBudget { size: n, budget });
    }
    let ground = ElementSet::full(n);
    let mut report = GspReport {
        minors_checked: 0,
        skipped_empty: 0,
        witnesses: Vec::new(),
    };
    for deleted in ground.subsets() {
        for contracted in ground.difference(deleted).subsets() {
            let (minor, kept) = rep.minor(deleted, contracted);
            let (simple, kept_simple) = minor.simplify();
            if simple.n() == 0 {
                report.skipped_empty += 1;
                continue;
            }
            report.minors_checked += 1;
            let elements: Vec<usize> = kept_simple.iter().map(|&e| kept[e - 1]).collect();
            let lattice = CoflowLattice::from_representation(&simple)?;
            match local_coflow_search(&lattice)? {
                Some(coflow) => report.witnesses.push(MinorWitness {
                    deleted,
                    contracted,
                    elements,
                    coflow: coflow.values,
                }),
                None => {
                    return Err(OrientError::Falsified(Box::new(FalsificationArtifact::new(
                        "gsp_check",
                        Some(lpm),
                        rep,
                        format!(
                            "simple minor on {:?} (deleted {deleted}, contracted {contracted}) has no local coflow",
                            elements
                        ),
                        SearchSpace::Local {
                            candidates: local_candidates(simple.n()).len(),
                            coline: None,
                        },
                    ))))
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchSpace {
    Box {
        bound: usize,
        lattice_rank: usize,
        pivots: Vec<usize>,
    },
    Local {
        candidates: usize,
        coline: Option<ColineReport>,
    },
    QuiteSimpleColine {
        coline: Option<ElementSet>,
    },
}

/// Everything needed to reproduce a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FalsificationArtifact {
    pub check: String,
    pub instance: Option<LpmDump>,
    pub seed: Option<u64>,
    pub matrix: Vec<Vec<String>>,
    pub detail: String,
    pub search_space: SearchSpace,
}

impl FalsificationArtifact {
    pub fn new(
        check: &str,
        lpm: Option<&StrongLpm>,
        rep: &RationalRepresentation,
        detail: String,
        search_space: SearchSpace,
    ) -> Self {
        let m = rep.matrix();
        FalsificationArtifact {
            check: check.to_string(),
            instance: lpm.map(StrongLpm::to_json),
            seed: rep.seed(),
            matrix: (0..m.rows())
                .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
                .collect(),
            detail,
            search_space,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(xs.iter().copied())
    }

    fn moment(points: &[i64]) -> RationalRepresentation {
        RationalRepresentation::from_integer_rows(&[vec![1; points.len()], points.to_vec()])
    }

    #[test]
    fn u24_moment_curve_verifies() {
        let u24 = StrongLpm::parse("EENN", "NNEE").unwrap();
        moment(&[1, 2, 3, 4]).verify_against(&u24, 0).unwrap();
    }

    #[test]
    fn zero_matrix_fails_at_a_singleton() {
        let u24 = StrongLpm::parse("EENN", "NNEE").unwrap();
        let zero = RationalRepresentation::new(RationalMatrix::zeros(2, 4));
        assert_eq!(
            zero.verify_against(&u24, 0),
            Err(OrientError::RankMismatch {
                subset: set(&[1]),
                expected: 1,
                got: 0
            })
        );
    }

    #[test]
    fn moment_curve_cocircuit_signs() {
        let rep = moment(&[1, 2, 3, 4]);
        assert_eq!(
            cocircuit_for_copoint(&rep, set(&[1])).unwrap().signs,
            vec![0, 1, 1, 1]
        );
        assert_eq!(
            cocircuit_for_copoint(&rep, set(&[4])).unwrap().signs,
            vec![-1, -1, -1, 0]
        );
        let rep3 = moment(&[1, 2, 3]);
        assert_eq!(
            cocircuit_for_copoint(&rep3, set(&[2])).unwrap().signs,
            vec![-1, 0, 1]
        );
    }

    #[test]
    fn degenerate_functional_is_reported() {
        // columns 1 and 2 parallel: the functional through column 1 also kills 2
        let rep = RationalRepresentation::from_integer_rows(&[vec![1, 2, 0], vec![1, 2, 1]]);
        assert!(matches!(
            cocircuit_for_copoint(&rep, set(&[1])),
            Err(OrientError::DegenerateCocircuit { .. })
        ));
    }

    #[test]
    fn u23_coflow_membership() {
        let cocircuits = signed_cocircuits(&moment(&[1, 2, 3])).unwrap();
        let yes = is_coflow(&[-1, 1, 2], &cocircuits);
        assert!(yes.member);
        let lattice = CoflowLattice::new(3, &cocircuits);
        assert!(lattice.recheck(&[-1, 1, 2], yes.coefficients.as_ref().unwrap()));
        assert!(is_coflow(&[0, 0, 0], &cocircuits).member);
        assert!(!is_coflow(&[1, 0, 0], &cocircuits).member);
    }

    #[test]
    fn u23_tightness() {
        let u23 = StrongLpm::parse("ENN", "NNE").unwrap();
        let rep = moment(&[1, 2, 3]);
        rep.verify_against(&u23, 0).unwrap();
        assert!(!chromatic_upper(&u23, &rep, 2).unwrap());
        assert!(chromatic_upper(&u23, &rep, 3).unwrap());
        assert_eq!(chromatic_number(&u23, &rep).unwrap(), 3);
        let cert = nowhere_zero_3_coflow(&u23, &rep).unwrap();
        assert_eq!(cert.values, vec![-2, -1, 1]);
        assert!(cert.verified);
        assert_eq!(cert.max_abs, 2);
    }

    #[test]
    fn two_coloops_have_chromatic_number_two() {
        let m = StrongLpm::parse("NN", "NN").unwrap();
        let rep = RationalRepresentation::from_integer_rows(&[vec![1, 0], vec![0, 1]]);
        rep.verify_against(&m, 0).unwrap();
        assert_eq!(chromatic_number(&m, &rep).unwrap(), 2);
    }

    #[test]
    fn loops_are_rejected() {
        let m = StrongLpm::parse("NE", "NE").unwrap();
        let rep = synthesize_representation(&m, 0).unwrap();
        assert_eq!(
            chromatic_number(&m, &rep),
            Err(OrientError::HasLoop(set(&[2])))
        );
        assert!(matches!(
            nowhere_zero_3_coflow(&m, &rep),
            Err(OrientError::HasLoop(_))
        ));
    }

    #[test]
    fn single_coloop_certificate() {
        let m = StrongLpm::parse("N", "N").unwrap();
        let rep = synthesize_representation(&m, 0).unwrap();
        let cocircuits = signed_cocircuits(&rep).unwrap();
        assert_eq!(cocircuits.len(), 1);
        let cert = nowhere_zero_3_coflow(&m, &rep).unwrap();
        // the lattice is Z; least entry in {-2,-1,1,2}
        assert_eq!(cert.values, vec![-2]);
        assert!(is_coflow(&[1], &cocircuits).member);
    }

    #[test]
    fn local_coflows() {
        let rep = moment(&[1, 2, 3]);
        let lattice = CoflowLattice::from_representation(&rep).unwrap();
        // (1,1,0) = (0,1,1) - (-1,0,1)
        assert!(lattice.membership(&[1, 1, 0]).member);
        let found = qsc_local_coflow(&rep, ElementSet::EMPTY).unwrap();
        assert_eq!(found.support().len(), 2);
        assert!(lattice.membership(&found.values).member);

        let rep4 = moment(&[1, 2, 3, 4]);
        let lattice4 = CoflowLattice::from_representation(&rep4).unwrap();
        assert!(lattice4.membership(&[1, 1, 0, 0]).member);
        assert!(lattice4.membership(&[1, 2, 2, 1]).member);
    }

    #[test]
    fn candidates_are_bounded() {
        let n = 5;
        let c = local_candidates(n);
        assert_eq!(c.len(), 2 * n + 4 * n * (n - 1) / 2);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn minors_of_a_representation() {
        let rep = moment(&[1, 2, 3, 4]);
        let (c, kept) = rep.minor(ElementSet::EMPTY, set(&[4]));
        assert_eq!(kept, vec![1, 2, 3]);
        assert_eq!(c.matrix().rows(), 1);
        assert_eq!(matroid::bases(&c).len(), 3);
        let (d, kept) = rep.minor(set(&[1, 2]), ElementSet::EMPTY);
        assert_eq!(kept, vec![3, 4]);
        assert_eq!(matroid::bases(&d), vec![set(&[1, 2])]);
    }

    #[test]
    fn gsp_on_u24() {
        let u24 = StrongLpm::parse("EENN", "NNEE").unwrap();
        let rep = moment(&[1, 2, 3, 4]);
        let report = gsp_check(&u24, &rep, DEFAULT_GSP_BUDGET).unwrap();
        assert_eq!(report.minors_checked + report.skipped_empty, 81);
        assert!(report.skipped_empty >= 1);
        assert_eq!(
            gsp_check(&u24, &rep, 3),
            Err(OrientError::OverBudget { size: 4, budget: 3 })
        );
    }
}
