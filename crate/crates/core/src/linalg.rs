//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`] / [`BigRational`]; there is no floating
//! point anywhere in the crate. Pivoting is deterministic (smallest row index,
//! then smallest column index) so that every basis handed out by this module is
//! reproducible bit-for-bit, which the canonical forms downstream rely on.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_vec_to_rat(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have `cols` entries.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(x);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<i64>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(BigInt::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn mul_vec_i64(&self, v: &[i64]) -> Vec<BigInt> {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.mul_vec(&v)
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Rat::from_integer(x.clone())).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = factor * &self.data[source * self.cols + j];
            self.data[target * self.cols + j] += delta;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = factor * &self.data[i * self.cols + source];
            self.data[i * self.cols + target] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = x;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

/// Dense rational matrix, row-major, entries always in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        RatMatrix { rows: n, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        Self::from_rows(rows.iter().map(|r| int_vec_to_rat(r)).collect(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "RatMatrix{rows:?}")
    }
}

/// `U * A * V = S` with `S` diagonal, each nonzero diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries of `S`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn min_abs_entry(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = s.get(i, j);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form by elementary operations with magnitude-reducing pivoting.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -s.get(i, t).div_floor(s.get(t, t));
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !s.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -s.get(t, j).div_floor(s.get(t, t));
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !s.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a smaller remainder is now sitting in row or column t
                let mut best = (t, t, s.get(t, t).abs());
                for i in t + 1..m {
                    let x = s.get(i, t);
                    if !x.is_zero() && x.abs() < best.2 {
                        best = (i, t, x.abs());
                    }
                }
                for j in t + 1..n {
                    let x = s.get(t, j);
                    if !x.is_zero() && x.abs() < best.2 {
                        best = (t, j, x.abs());
                    }
                }
                s.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                s.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let pivot = s.get(t, t).clone();
            let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, s, v }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = x / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn clear_denominators(row: &[Rat]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Rank over Q by fraction-free Gaussian elimination.
pub fn rank(a: &RatMatrix) -> usize {
    rank_of_rows(&a.row_vecs(), a.cols())
}

/// Rank of a list of rational row vectors of length `cols`.
pub fn rank_of_rows(rows: &[Vec<Rat>], cols: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            let pivot = m[r].clone();
            for (x, p) in m[i][c..cols].iter_mut().zip(&pivot[c..cols]) {
                *x = &*x * &a - &b * p;
            }
            let g = m[i].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in m[i].iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        r += 1;
    }
    r
}

/// Reduced row echelon form of a row space, with deterministic pivoting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    cols: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn of_rows(input: &[Vec<Rat>], cols: usize) -> Self {
        let mut m: Vec<Vec<Rat>> = input.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..m.len() {
                if i == r || m[i][c].is_zero() {
                    continue;
                }
                let f = m[i][c].clone();
                let pivot = m[r].clone();
                for (x, p) in m[i][c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *x -= &f * p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        Rref { cols, rows: m, pivots }
    }

    pub fn of_matrix(a: &RatMatrix) -> Self {
        Self::of_rows(&a.row_vecs(), a.cols())
    }

    pub fn empty(cols: usize) -> Self {
        Rref { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v` modulo the row space: zero in every pivot column.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, x) in out.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o -= &f * x;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of a vector of the row space in terms of the RREF rows.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let c: Vec<Rat> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self
            .rows
            .iter()
            .zip(&c)
            .fold(vec![Rat::zero(); self.cols], |mut acc, (row, f)| {
                for (a, x) in acc.iter_mut().zip(row) {
                    *a += f * x;
                }
                acc
            });
        (back == v).then_some(c)
    }

    /// Null space of the matrix whose rows span this row space.
    pub fn kernel(&self) -> KernelBasis {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect();
        KernelBasis { basis, free }
    }
}

/// Basis of a null space in RREF shape: basis vector `k` is 1 at `free[k]` and 0
/// at every other free column, so coordinates of any kernel vector are just its
/// entries at the free columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub basis: Vec<Vec<Rat>>,
    pub free: Vec<usize>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x` (assumed to lie in the kernel) in this basis.
    pub fn coords(&self, x: &[Rat]) -> Vec<Rat> {
        self.free.iter().map(|&f| x[f].clone()).collect()
    }
}

/// Basis of `{x : A x = 0}` (free columns in index order).
pub fn rational_kernel_basis(a: &RatMatrix) -> Vec<Vec<Rat>> {
    Rref::of_matrix(a).kernel().basis
}

/// Solves `A x = b` over Q, returning the solution with zero free variables.
pub fn solve_rational(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows(), b.len());
    let aug: Vec<Vec<Rat>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let rref = Rref::of_rows(&aug, a.cols() + 1);
    if rref.pivots.contains(&a.cols()) {
        return None;
    }
    let mut x = vec![Rat::zero(); a.cols()];
    for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
        x[p] = row[a.cols()].clone();
    }
    Some(x)
}

pub fn is_primitive(v: &[i64]) -> Result<bool> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(g == 1)
}

/// Integer right inverse `B` of `A` (`A * B = I`), built from the Smith form.
pub fn integer_section(a: &IntMatrix) -> Result<IntMatrix> {
    let k = a.rows();
    let snf = smith_normal_form(a);
    let factors = snf.invariant_factors();
    if factors.len() < k {
        return Err(Error::NotSurjective("0 (rank deficient)".into()));
    }
    if let Some(bad) = factors.iter().find(|x| !x.is_one()) {
        return Err(Error::NotSurjective(bad.to_string()));
    }
    let mut embed = IntMatrix::zeros(a.cols(), k);
    for i in 0..k {
        embed.set(i, i, BigInt::one());
    }
    Ok(snf.v.mul(&embed).mul(&snf.u))
}

/// Some integer solution of `A x = b`, deterministic from the Smith form.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let factors = snf.invariant_factors();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < factors.len() {
            let (q, r) = ci.div_rem(&factors[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(a: &IntMatrix) -> SmithDecomposition {
        let d = smith_normal_form(a);
        assert_eq!(d.u.mul(a).mul(&d.v), d.s);
        assert!(determinant(&d.u).abs().is_one());
        assert!(determinant(&d.v).abs().is_one());
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    assert!(d.s.get(i, j).is_zero());
                }
            }
        }
        let f = d.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        d
    }

    /// Invariant factors from gcds of k×k minors, the textbook characterization.
    fn invariant_factors_by_minors(a: &[Vec<i64>]) -> Vec<i64> {
        let m = a.len();
        let n = a[0].len();
        let mut dets = vec![1i64];
        for k in 1..=m.min(n) {
            let mut g = 0i64;
            for rows in subsets(m, k) {
                for cols in subsets(n, k) {
                    let sub: Vec<Vec<i64>> =
                        rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect();
                    let d = determinant(&IntMatrix::from_rows(&sub, k));
                    g = g.gcd(&i64::try_from(d).unwrap());
                }
            }
            if g == 0 {
                break;
            }
            dets.push(g);
        }
        dets.windows(2).map(|w| w[1] / w[0]).collect()
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    #[test]
    fn snf_diag_2_3() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]], 2);
        let d = check_snf(&a);
        assert_eq!(d.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(invariant_factors_by_minors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn snf_identity_and_zero() {
        let d = check_snf(&IntMatrix::identity(3));
        assert!(d.s.is_identity());
        let z = IntMatrix::zeros(1, 1);
        let d = check_snf(&z);
        assert!(d.s.get(0, 0).is_zero());
        assert_eq!(d.rank(), 0);
    }

    #[test]
    fn snf_matches_minor_gcds() {
        let cases = vec![
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
            vec![vec![1, 1, 1, 1], vec![0, 1, -1, 0], vec![0, 0, 1, 1]],
            vec![vec![6, 4], vec![4, 6], vec![2, 2]],
        ];
        for a in cases {
            let m = IntMatrix::from_rows(&a, a[0].len());
            let d = check_snf(&m);
            let f: Vec<i64> = d.invariant_factors().iter().map(|x| i64::try_from(x).unwrap()).collect();
            assert_eq!(f, invariant_factors_by_minors(&a));
        }
    }

    #[test]
    fn kernel_examples() {
        let a = RatMatrix::from_i64_rows(&[vec![1, 1]], 2);
        assert_eq!(rational_kernel_basis(&a), vec![vec![rat(-1), rat(1)]]);
        assert!(rational_kernel_basis(&RatMatrix::identity(2)).is_empty());
        let a = RatMatrix::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6]], 3);
        let k = rational_kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::zeros(3, 2)), 0);
        assert_eq!(rank(&RatMatrix::identity(4)), 4);
        assert_eq!(rank(&RatMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]], 2)), 1);
        let a = RatMatrix::from_rows(vec![vec![rat_frac(1, 2), rat(1)], vec![rat(1), rat(3)]], 2);
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(is_primitive(&[2, 4]), Ok(false));
        assert_eq!(is_primitive(&[1, 0, 1]), Ok(true));
        assert_eq!(is_primitive(&[3, 5]), Ok(true));
        assert_eq!(is_primitive(&[0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn sections() {
        let a = IntMatrix::from_rows(&[vec![1, 1]], 2);
        let b = integer_section(&a).unwrap();
        assert!(a.mul(&b).is_identity());
        let b = integer_section(&IntMatrix::identity(3)).unwrap();
        assert!(b.is_identity());
        // quadric cone Hilbert basis as columns
        let pi = IntMatrix::from_columns(
            &[vec![-1, 0, 1], vec![0, -1, 1], vec![0, 1, 0], vec![1, 0, 0]],
            3,
        );
        let b = integer_section(&pi).unwrap();
        assert!(pi.mul(&b).is_identity());
        let bad = IntMatrix::from_rows(&[vec![2, 4]], 2);
        assert!(matches!(integer_section(&bad), Err(Error::NotSurjective(_))));
    }

    #[test]
    fn integer_solve() {
        let a = IntMatrix::from_rows(&[vec![2, 3]], 2);
        let x = solve_integer(&a, &[BigInt::from(1)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![BigInt::from(1)]);
        let a = IntMatrix::from_rows(&[vec![2, 4]], 2);
        assert!(solve_integer(&a, &[BigInt::from(1)]).is_none());
    }

    #[test]
    fn rref_reduce_is_canonical() {
        let rows = vec![int_vec_to_rat(&[1, 1, 0]), int_vec_to_rat(&[0, 1, 1])];
        let r = Rref::of_rows(&rows, 3);
        let v = int_vec_to_rat(&[5, 2, 7]);
        let w: Vec<Rat> = v.iter().zip(&rows[0]).map(|(a, b)| a + rat(3) * b).collect();
        assert_eq!(r.reduce(&v), r.reduce(&w));
        assert!(r.contains(&int_vec_to_rat(&[1, 2, 1])));
        assert_eq!(r.coordinates(&int_vec_to_rat(&[1, 2, 1])).map(|c| c.len()), Some(2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
            (1usize..5, 1usize..5).prop_flat_map(|(m, n)| {
                proptest::collection::vec(proptest::collection::vec(-6i64..=6, n), m)
            })
        }

        proptest! {
            #[test]
            fn snf_invariants(a in small_matrix()) {
                let m = IntMatrix::from_rows(&a, a[0].len());
                let d = smith_normal_form(&m);
                prop_assert_eq!(d.u.mul(&m).mul(&d.v), d.s.clone());
                prop_assert!(determinant(&d.u).abs().is_one());
                prop_assert!(determinant(&d.v).abs().is_one());
                let f = d.invariant_factors();
                for w in f.windows(2) {
                    prop_assert!(w[1].is_multiple_of(&w[0]));
                }
                // deterministic
                let again = smith_normal_form(&m);
                prop_assert_eq!(again.s, d.s);
                prop_assert_eq!(again.u, d.u);
            }

            #[test]
            fn kernel_rank_nullity(a in small_matrix()) {
                let m = RatMatrix::from_i64_rows(&a, a[0].len());
                let k = rational_kernel_basis(&m);
                for v in &k {
                    prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
                }
                prop_assert_eq!(rank(&m) + k.len(), m.cols());
                prop_assert_eq!(rank(&m), Rref::of_matrix(&m).dim());
            }

            #[test]
            fn section_is_right_inverse(a in small_matrix()) {
                let m = IntMatrix::from_rows(&a, a[0].len());
                if let Ok(b) = integer_section(&m) {
                    prop_assert!(m.mul(&b).is_identity());
                }
            }
        }
    }
}
