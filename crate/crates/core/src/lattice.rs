//! Integer lattices given by generators: Hermite normal form, membership with
//! a coefficient witness, and bounded search for lattice vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// The lattice spanned by integer generators in `Z^n`.
///
/// `basis` is the row-style Hermite normal form: pivots strictly increase,
/// are positive, and the entries above each pivot are reduced modulo it.
/// `transform[i]` expresses `basis[i]` as a combination of the generators.
#[derive(Clone, Debug)]
pub struct IntLattice {
    dim: usize,
    generators: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    transform: Vec<Vec<BigInt>>,
}

impl IntLattice {
    pub fn from_generators(dim: usize, generators: &[Vec<i64>]) -> Self {
        let k = generators.len();
        let mut rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| {
                assert_eq!(g.len(), dim, "generator of wrong length");
                g.iter().map(|&x| BigInt::from(x)).collect()
            })
            .collect();
        let mut t: Vec<Vec<BigInt>> = (0..k)
            .map(|i| (0..k).map(|j| BigInt::from(u8::from(i == j))).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..dim {
            if r == k {
                break;
            }
            loop {
                let best = (r..k)
                    .filter(|&i| !rows[i][c].is_zero())
                    .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
                let Some(best) = best else { break };
                rows.swap(r, best);
                t.swap(r, best);
                let mut done = true;
                for i in r + 1..k {
                    if rows[i][c].is_zero() {
                        continue;
                    }
                    let quotient = rows[i][c].div_floor(&rows[r][c]);
                    subtract_multiple(&mut rows, i, r, &quotient);
                    subtract_multiple(&mut t, i, r, &quotient);
                    if !rows[i][c].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if rows.get(r).is_none_or(|row| row[c].is_zero()) {
                continue;
            }
            if rows[r][c].is_negative() {
                negate(&mut rows[r]);
                negate(&mut t[r]);
            }
            for i in 0..r {
                let quotient = rows[i][c].div_floor(&rows[r][c]);
                if !quotient.is_zero() {
                    subtract_multiple(&mut rows, i, r, &quotient);
                    subtract_multiple(&mut t, i, r, &quotient);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        t.truncate(r);
        IntLattice {
            dim,
            generators: k,
            basis: rows,
            pivots,
            transform: t,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients over the HNF basis, if `v` lies in the lattice.
    pub fn basis_coordinates(&self, v: &[i64]) -> Option<Vec<BigInt>> {
        if v.len() != self.dim {
            return None;
        }
        let mut residual: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if residual[..c].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (a, rem) = residual[c].div_rem(&row[c]);
            if !rem.is_zero() {
                return None;
            }
            for (x, b) in residual.iter_mut().zip(row) {
                *x -= &a * b;
            }
            coords.push(a);
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    /// Coefficients over the original generators, if `v` lies in the lattice.
    pub fn solve(&self, v: &[i64]) -> Option<Vec<BigInt>> {
        let coords = self.basis_coordinates(v)?;
        let mut out = vec![BigInt::zero(); self.generators];
        for (a, t) in coords.iter().zip(&self.transform) {
            for (o, x) in out.iter_mut().zip(t) {
                *o += a * x;
            }
        }
        Some(out)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.basis_coordinates(v).is_some()
    }

    /// Lexicographically least lattice vector whose `e`-th entry lies in
    /// `allowed` (sorted ascending) for every coordinate `e`.
    ///
    /// The HNF is triangular, so the value at each pivot column fixes one
    /// coefficient and the columns up to the next pivot are then final. Trying
    /// pivot values in increasing order makes the first complete vector the
    /// least one.
    pub fn least_vector_in_box(&self, allowed: &[i64]) -> Option<Vec<i64>> {
        let basis: Vec<Vec<i128>> = self
            .basis
            .iter()
            .map(|row| row.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>())
            .collect::<Option<_>>()?;
        let allowed128: Vec<i128> = allowed.iter().map(|&x| x as i128).collect();
        let mut current = vec![0i128; self.dim];
        let first_pivot = self.pivots.first().copied().unwrap_or(self.dim);
        if !(0..first_pivot).all(|c| allowed128.contains(&current[c])) {
            return None;
        }
        let found = self.search(0, &basis, &allowed128, &mut current);
        found.then(|| current.iter().map(|&x| x as i64).collect())
    }

    fn search(
        &self,
        t: usize,
        basis: &[Vec<i128>],
        allowed: &[i128],
        current: &mut [i128],
    ) -> bool {
        if t == basis.len() {
            return true;
        }
        let c = self.pivots[t];
        let next = self.pivots.get(t + 1).copied().unwrap_or(self.dim);
        let row = &basis[t];
        let pivot = row[c];
        for &target in allowed {
            let delta = target - current[c];
            if delta % pivot != 0 {
                continue;
            }
            let a = delta / pivot;
            let ok = (c + 1..next).all(|j| allowed.contains(&(current[j] + a * row[j])));
            if !ok {
                continue;
            }
            for (x, b) in current[c..].iter_mut().zip(&row[c..]) {
                *x += a * b;
            }
            if self.search(t + 1, basis, allowed, current) {
                return true;
            }
            for (x, b) in current[c..].iter_mut().zip(&row[c..]) {
                *x -= a * b;
            }
        }
        false
    }
}

fn subtract_multiple(rows: &mut [Vec<BigInt>], target: usize, source: usize, factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    let (src, dst) = if source < target {
        let (a, b) = rows.split_at_mut(target);
        (&a[source], &mut b[0])
    } else {
        let (a, b) = rows.split_at_mut(source);
        (&b[0], &mut a[target])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= factor * s;
    }
}

fn negate(row: &mut [BigInt]) {
    for x in row {
        *x = -&*x;
    }
}

/// `sum_i coefficients[i] * generators[i]`, exactly.
pub fn combine(coefficients: &[BigInt], generators: &[Vec<i64>], dim: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); dim];
    for (a, g) in coefficients.iter().zip(generators) {
        for (o, &x) in out.iter_mut().zip(g) {
            *o += a * BigInt::from(x);
        }
    }
    out
}

/// The values `-(bound)..=bound` without zero, ascending.
pub fn nonzero_range(bound: i64) -> Vec<i64> {
    (-bound..=bound).filter(|&x| x != 0).collect()
}
