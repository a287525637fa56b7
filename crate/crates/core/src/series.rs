//! Graded dimensions of invariant rings and their on-shell quotients.

use alloc::{collections::BTreeMap, format, string::String, vec, vec::Vec};
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{bail, Result};
use crate::invariants::PresentationIdeal;
use crate::lattice::IntMatrix;
use crate::poly::Monomial;

/// Coefficients `c_0..c_N` of a truncated power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTruncation {
    pub coefficients: Vec<BigInt>,
}

impl SeriesTruncation {
    pub fn from_ints(c: &[i64]) -> Self {
        SeriesTruncation { coefficients: c.iter().map(|&x| BigInt::from(x)).collect() }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n > self.order() {
            bail!(Argument, "cannot extend a truncation of order {} to {}", self.order(), n);
        }
        Ok(SeriesTruncation { coefficients: self.coefficients[..=n].to_vec() })
    }

    /// Product with `(1 - t^d)`, truncated at the same order.
    pub fn times_one_minus(&self, d: usize) -> Self {
        let mut c = self.coefficients.clone();
        for k in (d..c.len()).rev() {
            let sub = c[k - d].clone();
            c[k] -= sub;
        }
        SeriesTruncation { coefficients: c }
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coefficients.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for SeriesTruncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

fn compositions_of(n: usize, total: u32, out: &mut Vec<Vec<u32>>) {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[pos] = x;
            rec(pos + 1, left - x, cur, out);
        }
    }
    if n == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return;
    }
    rec(0, total, &mut vec![0; n], out);
}

/// Histogram of `A u` over `u ∈ N^n` with `|u| = s`.
fn image_histogram(rows: &[Vec<i64>], n: usize, s: u32) -> Result<BTreeMap<Vec<i64>, u64>> {
    let mut us = Vec::new();
    compositions_of(n, s, &mut us);
    let mut h = BTreeMap::new();
    for u in us {
        let mut img = Vec::with_capacity(rows.len());
        for r in rows {
            let mut acc: i64 = 0;
            for (a, &e) in r.iter().zip(&u) {
                match a.checked_mul(e as i64).and_then(|t| acc.checked_add(t)) {
                    Some(v) => acc = v,
                    None => bail!(Overflow, "weight overflow while counting invariants"),
                }
            }
            img.push(acc);
        }
        *h.entry(img).or_insert(0u64) += 1;
    }
    Ok(h)
}

/// `c_d = #{(u, v) : A u = A v, |u| + |v| = d}` for `d ≤ order`, by
/// pairing histograms of `A u` over each split `|u| = s`, `|v| = d - s`.
pub fn offshell_dims(a: &IntMatrix, order: usize) -> Result<SeriesTruncation> {
    let rows = a.to_i64_rows()?;
    let n = a.cols();
    let hists: Vec<BTreeMap<Vec<i64>, u64>> =
        (0..=order).map(|s| image_histogram(&rows, n, s as u32)).collect::<Result<_>>()?;
    let mut c = Vec::with_capacity(order + 1);
    for d in 0..=order {
        let mut total = BigInt::zero();
        for s in 0..=d {
            let (small, large) = if hists[s].len() <= hists[d - s].len() {
                (&hists[s], &hists[d - s])
            } else {
                (&hists[d - s], &hists[s])
            };
            for (k, &x) in small {
                if let Some(&y) = large.get(k) {
                    total += BigInt::from(x) * BigInt::from(y);
                }
            }
        }
        c.push(total);
    }
    Ok(SeriesTruncation { coefficients: c })
}

/// Off-shell dimensions times `(1 - t^2)^ℓ`, `ℓ` the number of rows. Valid when the moment
/// components form a regular sequence; a negative coefficient disproves that
/// and is reported as a precondition failure.
pub fn onshell_dims(a: &IntMatrix, order: usize) -> Result<SeriesTruncation> {
    let mut s = offshell_dims(a, order)?;
    for _ in 0..a.rows() {
        s = s.times_one_minus(2);
    }
    if let Some(d) = s.coefficients.iter().position(|c| c.is_negative()) {
        bail!(Precondition, "negative coefficient in degree {}: the moment components are not a regular sequence", d);
    }
    Ok(s)
}

/// Expansion of `num(t) / Π (1 - t^{d_i})` up to `t^order`.
pub fn expand_rational(numerator: &[i64], denominator: &[u32], order: usize) -> Result<SeriesTruncation> {
    if denominator.contains(&0) {
        bail!(Argument, "denominator factors need positive exponents");
    }
    let mut c: Vec<BigInt> = (0..=order).map(|k| BigInt::from(numerator.get(k).copied().unwrap_or(0))).collect();
    for &d in denominator {
        let d = d as usize;
        // multiply by 1/(1 - t^d) = 1 + t^d + t^{2d} + ...
        for k in d..=order {
            let add = c[k - d].clone();
            c[k] += add;
        }
    }
    Ok(SeriesTruncation { coefficients: c })
}

pub fn series_equal(a: &SeriesTruncation, b: &SeriesTruncation) -> Result<bool> {
    if a.order() != b.order() {
        bail!(Argument, "series truncated at different orders ({} and {})", a.order(), b.order());
    }
    Ok(a == b)
}

/// `num/denominator` display such as `(1+t^3+2t^4)/((1-t^5)(1-t^2)^3)`.
/// Equal denominator factors are grouped in order of first appearance.
pub fn format_rational(numerator: &[i64], denominator: &[u32]) -> String {
    let mut num = String::new();
    for (k, &c) in numerator.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 {
            "-"
        } else if num.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = c.unsigned_abs();
        let coef = if mag == 1 && k > 0 { String::new() } else { format!("{}", mag) };
        let var = match k {
            0 => String::new(),
            1 => String::from("t"),
            _ => format!("t^{}", k),
        };
        num.push_str(&format!("{}{}{}", sign, coef, var));
    }
    if num.is_empty() {
        num.push('0');
    }
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &d in denominator {
        match groups.iter_mut().find(|(e, _)| *e == d) {
            Some(g) => g.1 += 1,
            None => groups.push((d, 1)),
        }
    }
    let mut den = String::new();
    for (d, k) in groups {
        let t = if d == 1 { String::from("t") } else { format!("t^{}", d) };
        den.push_str(&format!("(1-{})", t));
        if k > 1 {
            den.push_str(&format!("^{}", k));
        }
    }
    let num_part = if numerator.iter().filter(|&&c| c != 0).count() > 1 { format!("({})", num) } else { num };
    if den.is_empty() {
        num_part
    } else {
        format!("{}/({})", num_part, den)
    }
}

/// Dimensions of the graded pieces of `C[gens]/I`, counting standard
/// monomials of a Gröbner basis. The relations must be homogeneous for the
/// generator degrees.
pub fn presentation_dims(pres: &PresentationIdeal, order: usize) -> Result<SeriesTruncation> {
    if !pres.ideal.is_homogeneous() {
        bail!(Argument, "presentation is not homogeneous for the generator degrees");
    }
    let prepared = pres.ideal.clone().with_groebner()?;
    let leads: Vec<Monomial> =
        prepared.cached_groebner().unwrap_or(&[]).iter().filter_map(|g| g.leading_monomial().cloned()).collect();
    let weights: Vec<u32> = pres.generators.generators().iter().map(|g| g.degree()).collect();
    let mut c = Vec::with_capacity(order + 1);
    for d in 0..=order {
        let monos = crate::invariants::monomials_of_degree(&weights, d as u32, usize::MAX).unwrap_or_default();
        let count = monos.into_iter().filter(|e| !leads.iter().any(|l| l.0.iter().zip(e).all(|(a, b)| a <= b))).count();
        c.push(BigInt::from(count));
    }
    Ok(SeriesTruncation { coefficients: c })
}

#[cfg(test)]
mod tests;
