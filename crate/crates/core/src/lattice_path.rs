//! Lattice paths over `{N, E}`, the south-of order and the paths between two
//! boundary paths.
//!
//! A path of length `n` is identified with the set of positions of its north
//! steps; for a pair `p ⪯ q` these sets are exactly the bases of the lattice
//! path matroid `M[p, q]`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::set::{ElementSet, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("invalid symbol {symbol:?} at position {position} (expected N or E)")]
    InvalidSymbol { position: usize, symbol: char },
    #[error("paths have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("p not south of q (prefix {0} of p has more north steps)")]
    NotSouth(usize),
    #[error("p and q do not share endpoints ({0} vs {1} north steps)")]
    EndpointMismatch(usize, usize),
    #[error("element {element} outside 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("path length {0} exceeds the supported {MAX_ELEMENTS} elements")]
    TooLong(usize),
    #[error("number of paths overflows u128")]
    CountOverflow,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    // Declaration order gives E < N, which is the word order used everywhere.
    E,
    N,
}

impl Step {
    pub fn symbol(self) -> char {
        match self {
            Step::N => 'N',
            Step::E => 'E',
        }
    }

    pub fn flipped(self) -> Step {
        match self {
            Step::N => Step::E,
            Step::E => Step::N,
        }
    }
}

/// A word over `{N, E}` together with its north-prefix counts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    steps: Vec<Step>,
    // heights[k] = number of N among the first k steps.
    heights: Vec<usize>,
}

impl LatticePath {
    pub fn from_steps(steps: Vec<Step>) -> Self {
        let mut heights = Vec::with_capacity(steps.len() + 1);
        heights.push(0);
        let mut h = 0;
        for &s in &steps {
            h += usize::from(s == Step::N);
            heights.push(h);
        }
        LatticePath { steps, heights }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Step `i`, 1-based.
    pub fn step(&self, i: usize) -> Step {
        self.steps[i - 1]
    }

    /// Number of north steps among the first `k` steps.
    pub fn height(&self, k: usize) -> usize {
        self.heights[k]
    }

    /// Total number of north steps.
    pub fn north_count(&self) -> usize {
        self.heights[self.len()]
    }

    /// Positions (1-based) of the north steps, in increasing order.
    pub fn north_positions(&self) -> Vec<usize> {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Step::N)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Swap every N with E.
    pub fn flipped(&self) -> Self {
        Self::from_steps(self.steps.iter().map(|s| s.flipped()).collect())
    }

    pub fn concat(&self, other: &LatticePath) -> Self {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Self::from_steps(steps)
    }

    /// Drop the last step. Panics on the empty path.
    pub fn truncated(&self) -> Self {
        assert!(!self.is_empty(), "cannot truncate the empty path");
        Self::from_steps(self.steps[..self.len() - 1].to_vec())
    }

    /// Every word of length `n` with exactly `norths` north steps, in word order.
    pub fn all_with_norths(n: usize, norths: usize) -> Vec<LatticePath> {
        fn go(n: usize, norths: usize, acc: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
            let placed = acc.iter().filter(|&&s| s == Step::N).count();
            let remaining = n - acc.len();
            if remaining == 0 {
                out.push(LatticePath::from_steps(acc.clone()));
                return;
            }
            if norths - placed < remaining {
                acc.push(Step::E);
                go(n, norths, acc, out);
                acc.pop();
            }
            if placed < norths {
                acc.push(Step::N);
                go(n, norths, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        if norths <= n {
            go(n, norths, &mut Vec::with_capacity(n), &mut out);
        }
        out
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticePath({self})")
    }
}

impl FromStr for LatticePath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, PathError> {
        parse_path(s)
    }
}

/// Parse a word over `{N, E}`. The empty string is the empty path.
pub fn parse_path(text: &str) -> Result<LatticePath, PathError> {
    let steps = text
        .chars()
        .enumerate()
        .map(|(i, c)| match c {
            'N' => Ok(Step::N),
            'E' => Ok(Step::E),
            symbol => Err(PathError::InvalidSymbol {
                position: i + 1,
                symbol,
            }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LatticePath::from_steps(steps))
}

/// `p ⪯ q`: `p` is south of `q` and both end at the same height.
pub fn precedes(p: &LatticePath, q: &LatticePath) -> Result<bool, PathError> {
    if p.len() != q.len() {
        return Err(PathError::LengthMismatch(p.len(), q.len()));
    }
    Ok(p.north_count() == q.north_count() && (1..=p.len()).all(|k| p.height(k) <= q.height(k)))
}

/// A validated pair `p ⪯ q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PathPair {
    p: LatticePath,
    q: LatticePath,
}

impl PathPair {
    pub fn new(p: LatticePath, q: LatticePath) -> Result<Self, PathError> {
        if p.len() != q.len() {
            return Err(PathError::LengthMismatch(p.len(), q.len()));
        }
        if let Some(k) = (1..=p.len()).find(|&k| p.height(k) > q.height(k)) {
            return Err(PathError::NotSouth(k));
        }
        if p.north_count() != q.north_count() {
            return Err(PathError::EndpointMismatch(
                p.north_count(),
                q.north_count(),
            ));
        }
        Ok(PathPair { p, q })
    }

    pub fn parse(p: &str, q: &str) -> Result<Self, PathError> {
        Self::new(parse_path(p)?, parse_path(q)?)
    }

    pub fn p(&self) -> &LatticePath {
        &self.p
    }

    pub fn q(&self) -> &LatticePath {
        &self.q
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Every valid pair of length `n`, ordered by `(p, q)` words.
    pub fn all_of_length(n: usize) -> Vec<PathPair> {
        let mut out = Vec::new();
        for k in 0..=n {
            let words = LatticePath::all_with_norths(n, k);
            for p in &words {
                for q in &words {
                    if let Ok(pair) = PathPair::new(p.clone(), q.clone()) {
                        out.push(pair);
                    }
                }
            }
        }
        out.sort_by(|a, b| (&a.p, &a.q).cmp(&(&b.p, &b.q)));
        out
    }
}

/// All `r` with `p ⪯ r ⪯ q`, in word order (E before N).
///
/// Depth-first over steps, pruned by the corridor `h_p(k) <= h_r(k) <= h_q(k)`.
pub fn enumerate_between(pair: &PathPair) -> Vec<LatticePath> {
    fn go(pair: &PathPair, acc: &mut Vec<Step>, h: usize, out: &mut Vec<LatticePath>) {
        let k = acc.len();
        if k == pair.len() {
            out.push(LatticePath::from_steps(acc.clone()));
            return;
        }
        let (lo, hi) = (pair.p.height(k + 1), pair.q.height(k + 1));
        if (lo..=hi).contains(&h) {
            acc.push(Step::E);
            go(pair, acc, h, out);
            acc.pop();
        }
        if (lo..=hi).contains(&(h + 1)) {
            acc.push(Step::N);
            go(pair, acc, h + 1, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(pair, &mut Vec::with_capacity(pair.len()), 0, &mut out);
    out
}

/// `|P[p, q]|` by a prefix-count dynamic program over the corridor.
pub fn count_between(pair: &PathPair) -> Result<u128, PathError> {
    let top = pair.q.north_count();
    // ways[h] = number of valid prefixes of the current length ending at height h
    let mut ways = vec![0u128; top + 2];
    ways[0] = 1;
    for k in 1..=pair.len() {
        let (lo, hi) = (pair.p.height(k), pair.q.height(k));
        let mut next = vec![0u128; top + 2];
        for h in lo..=hi {
            let stay = ways[h];
            let climb = if h > 0 { ways[h - 1] } else { 0 };
            next[h] = stay.checked_add(climb).ok_or(PathError::CountOverflow)?;
        }
        ways = next;
    }
    Ok(ways[top])
}

/// The base `{j : r_j = N}` of a path.
pub fn path_to_base(r: &LatticePath) -> Result<ElementSet, PathError> {
    if r.len() > MAX_ELEMENTS {
        return Err(PathError::TooLong(r.len()));
    }
    Ok(ElementSet::from_elements(r.north_positions()))
}

/// The path of length `n` whose north steps sit exactly on `base`.
pub fn base_to_path(base: ElementSet, n: usize) -> Result<LatticePath, PathError> {
    if let Some(e) = base.last().filter(|&e| e > n) {
        return Err(PathError::ElementOutOfRange { element: e, n });
    }
    Ok(LatticePath::from_steps(
        (1..=n)
            .map(|j| if base.contains(j) { Step::N } else { Step::E })
            .collect(),
    ))
}
