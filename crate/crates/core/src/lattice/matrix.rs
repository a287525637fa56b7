use alloc::{format, string::String, vec, vec::Vec};
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{bail, Result};

/// Returns `(gcd, lcm)` of a nonempty list.
///
/// The gcd is nonnegative. The lcm is taken of absolute values and is only
/// defined when no entry is zero.
pub fn gcd_lcm(values: &[BigInt]) -> Result<(BigInt, BigInt)> {
    if values.is_empty() {
        bail!(Argument, "gcd/lcm of an empty list");
    }
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for v in values {
        if v.is_zero() {
            bail!(Argument, "lcm with a zero entry");
        }
        g = g.gcd(v);
        l = l.lcm(v);
    }
    Ok((g, l.abs()))
}

/// Dense integer matrix with arbitrary-precision entries, row-major.
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

    /// Builds a matrix from rows. All rows must be nonempty and of equal length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            bail!(Argument, "matrix dimensions must be positive");
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                bail!(Argument, "row {} has length {}, expected {}", i, r.len(), cols);
            }
            data.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Row vector `1 × n`.
    pub fn row_vector<T: Into<BigInt> + Clone>(entries: &[T]) -> Result<Self> {
        Self::from_rows(&[entries.to_vec()])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Entries as `i64`, failing if any entry does not fit.
    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for v in self.row(r) {
                match v.to_i64() {
                    Some(x) => row.push(x),
                    None => bail!(Overflow, "matrix entry {} does not fit in 64 bits", v),
                }
            }
            out.push(row);
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            bail!(Argument, "cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols);
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// `M·x` for an integer column vector.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn neg(&self) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v).collect() }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            bail!(Argument, "row counts differ: {} vs {}", self.rows, other.rows);
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(out)
    }

    /// The cotangent lift `[A | -A]`.
    pub fn cotangent_lift(&self) -> IntMatrix {
        self.hstack(&self.neg()).expect("same row count")
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// Columns reordered so that new column `j` is old column `perm[j]`.
    pub fn permute_cols(&self, perm: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, perm.len());
        for r in 0..self.rows {
            for (j, &p) in perm.iter().enumerate() {
                out.set(r, j, self.get(r, p).clone());
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        self.permute_cols(cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `row[dst] -= q * row[src]`
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(src, c) * q;
            self.data[dst * self.cols + c] -= v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.data[idx] = -core::mem::take(&mut self.data[idx]);
        }
    }

    /// Hermite normal form by unimodular row operations.
    ///
    /// Returns `(H, U)` with `U` unimodular and `U·M = H`. `H` is in row
    /// echelon form, pivots are positive, and entries above each pivot lie in
    /// `[0, pivot)`. Zero rows come last.
    pub fn hermite_normal_form(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut p = 0;
        for col in 0..self.cols {
            if p == self.rows {
                break;
            }
            loop {
                // smallest nonzero |entry| at or below the pivot row
                let mut best: Option<usize> = None;
                for r in p..self.rows {
                    let v = h.get(r, col);
                    if !v.is_zero() && best.is_none_or(|b| v.abs() < h.get(b, col).abs()) {
                        best = Some(r);
                    }
                }
                let Some(b) = best else { break };
                h.swap_rows(p, b);
                u.swap_rows(p, b);
                let mut done = true;
                for r in p + 1..self.rows {
                    if h.get(r, col).is_zero() {
                        continue;
                    }
                    let q = h.get(r, col).div_floor(h.get(p, col));
                    h.sub_row_multiple(r, p, &q);
                    u.sub_row_multiple(r, p, &q);
                    if !h.get(r, col).is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h.get(p, col).is_zero() {
                continue;
            }
            if h.get(p, col).is_negative() {
                h.negate_row(p);
                u.negate_row(p);
            }
            for r in 0..p {
                let q = h.get(r, col).div_floor(h.get(p, col));
                h.sub_row_multiple(r, p, &q);
                u.sub_row_multiple(r, p, &q);
            }
            p += 1;
        }
        (h, u)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let (h, _) = self.hermite_normal_form();
        (0..h.rows).filter(|&r| h.row(r).iter().any(|v| !v.is_zero())).count()
    }

    /// Determinant of a square matrix (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            bail!(Argument, "determinant of a non-square {}x{} matrix", self.rows, self.cols);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Lattice basis of `{x ∈ Z^cols : M x = 0}`.
    pub fn integer_kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let (h, u) = self.transpose().hermite_normal_form();
        (0..h.rows).filter(|&r| h.row(r).iter().all(|v| v.is_zero())).map(|r| u.row(r).to_vec()).collect()
    }

    /// gcd of all `rows × rows` minors. Requires full row rank.
    pub fn maximal_minor_gcd(&self) -> Result<BigInt> {
        if self.rank() != self.rows {
            bail!(Argument, "matrix is not of full row rank");
        }
        let mut g = BigInt::zero();
        let mut subset: Vec<usize> = (0..self.rows).collect();
        loop {
            let d = self.select_cols(&subset).determinant()?;
            g = g.gcd(&d);
            if g.is_one() {
                return Ok(g);
            }
            if !next_combination(&mut subset, self.cols) {
                break;
            }
        }
        Ok(g)
    }
}

/// Advances `c` (strictly increasing indices below `n`) to the next combination.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                let entries: Vec<String> = self.row(r).iter().map(|v| format!("{}", v)).collect();
                format!("[{}]", entries.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_lcm_examples() {
        assert_eq!(gcd_lcm(&big(&[3, 4, 5])).unwrap(), (BigInt::from(1), BigInt::from(60)));
        assert_eq!(gcd_lcm(&big(&[7])).unwrap(), (BigInt::from(7), BigInt::from(7)));
        assert_eq!(gcd_lcm(&big(&[6, 10, 15])).unwrap(), (BigInt::from(1), BigInt::from(30)));
        assert!(matches!(gcd_lcm(&[]), Err(crate::Error::Argument(_))));
        assert!(matches!(gcd_lcm(&big(&[2, 0])), Err(crate::Error::Argument(_))));
    }

    #[test]
    fn hnf_identity() {
        let id = IntMatrix::identity(2);
        let (h, u) = id.hermite_normal_form();
        assert_eq!(h, id);
        assert_eq!(u, id);
    }

    #[test]
    fn hnf_two_by_two() {
        let a = m(&[&[2, 4], &[1, 3]]);
        let (h, u) = a.hermite_normal_form();
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
        assert!(u.is_unimodular());
        assert_eq!(u.mul(&a).unwrap(), h);
    }

    #[test]
    fn hnf_is_idempotent() {
        let a = m(&[&[-1, 0, 1, 1, 1, 0, -1, -1], &[0, -1, 1, 1, 0, 1, -1, -1]]);
        let (h, _) = a.hermite_normal_form();
        let (h2, u2) = h.hermite_normal_form();
        assert_eq!(h, h2);
        assert_eq!(u2, IntMatrix::identity(2));
    }

    #[test]
    fn kernel_examples() {
        let a = m(&[&[-2, 3, 6]]);
        let k = a.integer_kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.apply(v).iter().all(|x| x.is_zero()));
        }
        // index check: the kernel basis spans the same lattice as {(3,2,0),(3,0,1)}
        let kb = IntMatrix::from_rows(&k).unwrap();
        let expected = m(&[&[3, 2, 0], &[3, 0, 1]]);
        assert_eq!(kb.hermite_normal_form().0, expected.hermite_normal_form().0);

        assert!(IntMatrix::identity(3).integer_kernel_basis().is_empty());

        let k = m(&[&[1, -1]]).integer_kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(k[0] == big(&[1, 1]) || k[0] == big(&[-1, -1]));
    }

    #[test]
    fn determinant_and_rank() {
        let a = m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]).determinant().unwrap(), BigInt::from(0));
        assert_eq!(a.determinant().unwrap(), BigInt::from(6));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn minor_gcd() {
        let a = m(&[&[-2, 0, 2], &[0, -2, 2]]);
        assert_eq!(a.maximal_minor_gcd().unwrap(), BigInt::from(4));
        assert!(m(&[&[1, 2], &[2, 4]]).maximal_minor_gcd().is_err());
    }
}
