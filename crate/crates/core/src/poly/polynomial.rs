use alloc::{sync::Arc, vec, vec::Vec};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::coeff::{fmt_rat, GaussRat};
use super::monomial::Monomial;
use super::ring::PolyRing;
use crate::error::{bail, Result};

/// Sparse polynomial with Gaussian-rational coefficients.
///
/// Terms are kept sorted by the ring's order, largest first, with no zero
/// coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, GaussRat)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, o: &Self) -> bool {
        self.ring.same_variables(&o.ring) && {
            if self.ring.order() == o.ring.order() {
                self.terms == o.terms
            } else {
                self.terms.len() == o.terms.len() && self.in_ring(&o.ring).terms == o.terms
            }
        }
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: GaussRat) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, GaussRat::one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), GaussRat::one())
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: GaussRat) -> Self {
        debug_assert_eq!(m.len(), ring.nvars());
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// `x^a - x^b`.
    pub fn binomial(ring: &Arc<PolyRing>, a: &[u32], b: &[u32]) -> Self {
        Self::from_terms(
            ring,
            vec![(Monomial(a.to_vec()), GaussRat::one()), (Monomial(b.to_vec()), GaussRat::from_int(-1))],
        )
    }

    /// Collects terms in any order, merging duplicates.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, GaussRat)>) -> Self {
        let w = ring.weights();
        let ord = ring.order();
        terms.sort_by(|a, b| ord.cmp(w, &b.0 .0, &a.0 .0));
        let mut out: Vec<(Monomial, GaussRat)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub(crate) fn from_sorted_unchecked(ring: &Arc<PolyRing>, terms: Vec<(Monomial, GaussRat)>) -> Self {
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, GaussRat)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, GaussRat)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, GaussRat)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Largest weighted degree of a term; `None` for zero.
    pub fn weighted_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.weighted_degree(self.ring.weights())).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let w = self.ring.weights();
        let mut it = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Same polynomial re-sorted for another ring with identical variables.
    pub fn in_ring(&self, ring: &Arc<PolyRing>) -> Polynomial {
        debug_assert!(self.ring.same_variables(ring));
        Self::from_terms(ring, self.terms.clone())
    }

    fn check_ring(&self, o: &Polynomial) -> Result<()> {
        if !self.ring.same_variables(&o.ring) {
            bail!(Argument, "polynomials live in different variable contexts");
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_ring(o)?;
        Ok(self.add_scaled(o, &GaussRat::one(), None))
    }

    pub fn checked_sub(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_ring(o)?;
        Ok(self.add_scaled(o, &GaussRat::from_int(-1), None))
    }

    pub fn checked_mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_ring(o)?;
        Ok(self.mul_unchecked(o))
    }

    /// `self + c·m·o` by a sorted merge. Multiplying by a monomial keeps the
    /// order of `o`'s terms.
    pub(crate) fn add_scaled(&self, o: &Polynomial, c: &GaussRat, m: Option<&Monomial>) -> Polynomial {
        let resorted;
        let o = if self.ring.order() == o.ring.order() {
            o
        } else {
            resorted = o.in_ring(&self.ring);
            &resorted
        };
        if c.is_zero() {
            return self.clone();
        }
        let w = self.ring.weights();
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &(Monomial, GaussRat)| -> (Monomial, GaussRat) {
            let mm = match m {
                Some(m) => t.0.mul(m),
                None => t.0.clone(),
            };
            (mm, c * &t.1)
        };
        let mut pending: Option<(Monomial, GaussRat)> = o.terms.first().map(&shifted);
        while i < self.terms.len() || pending.is_some() {
            match (&self.terms.get(i), &pending) {
                (Some(a), Some(b)) => match ord.cmp(w, &a.0 .0, &b.0 .0) {
                    Ordering::Greater => {
                        out.push((*a).clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        j += 1;
                        pending = o.terms.get(j).map(&shifted);
                    }
                    Ordering::Equal => {
                        let s = &a.1 + &b.1;
                        if !s.is_zero() {
                            out.push((a.0.clone(), s));
                        }
                        i += 1;
                        j += 1;
                        pending = o.terms.get(j).map(&shifted);
                    }
                },
                (Some(a), None) => {
                    out.push((*a).clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = o.terms.get(j).map(&shifted);
                }
                (None, None) => break,
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, o: &Polynomial) -> Polynomial {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.ring);
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut acc = Self::zero(&self.ring);
        let big = if big.ring.order() == self.ring.order() { big.clone() } else { big.in_ring(&self.ring) };
        for (m, c) in &small.terms {
            acc = acc.add_scaled(&big, c, Some(m));
        }
        acc
    }

    pub fn scale(&self, c: &GaussRat) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, d)| (m.clone(), c * d)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &GaussRat) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, d)| (t.mul(m), c * d)).collect() }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Formal partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let mut e = m.clone();
                let k = e.0[i];
                e.0[i] -= 1;
                (e, c * &GaussRat::from_int(k as i64))
            })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    pub fn conj_coefficients(&self) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    /// Indices of variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        (0..n).filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0)).collect()
    }

    /// Substitutes `images[i]` for variable `i`; all images share one ring.
    pub fn substitute(&self, images: &[Polynomial], target: &Arc<PolyRing>) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            bail!(Argument, "expected {} images, got {}", self.ring.nvars(), images.len());
        }
        for im in images {
            if !im.ring.same_variables(target) {
                bail!(Argument, "substitution images live in different variable contexts");
            }
        }
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Self::one(target), p.in_ring(target)]).collect();
        let mut acc = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_unchecked(&powers[i][1]);
                    powers[i].push(next);
                }
                t = t.mul_unchecked(&powers[i][e as usize]);
            }
            acc = acc.add_scaled(&t, &GaussRat::one(), None);
        }
        Ok(acc)
    }

    /// Numerical evaluation at a complex point `(re, im)` per variable.
    pub fn eval_f64(&self, point: &[(f64, f64)]) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_f64();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = cmul(t, point[i]);
                }
            }
            acc.0 += t.0;
            acc.1 += t.1;
        }
        acc
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn eval_exact(&self, point: &[GaussRat]) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Rational coefficient of a given monomial.
    pub fn coefficient(&self, m: &Monomial) -> GaussRat {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_real())
    }

    pub fn max_denominator_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.re.denom().bits().max(c.im.denom().bits())).max().unwrap_or(0)
    }
}

pub(crate) fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        self.checked_add(o).expect("polynomial variable contexts differ")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self.checked_sub(o).expect("polynomial variable contexts differ")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.checked_mul(o).expect("polynomial variable contexts differ")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&GaussRat::from_int(-1))
    }
}

pub(crate) fn fmt_monomial(names: &[alloc::string::String], m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&names[i])?;
        if e > 1 {
            write!(f, "^{}", e)?;
        }
    }
    Ok(())
}

/// Writes `c·m` as a signed summand. `lead` controls the separator.
pub(crate) fn fmt_term(
    names: &[alloc::string::String],
    m: &Monomial,
    c: &GaussRat,
    radical: Option<&num_bigint::BigInt>,
    lead: bool,
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    use num_traits::{One, Signed};
    let (neg, mag) =
        if c.is_real() && c.re.is_negative() { (true, GaussRat::real(-&c.re)) } else { (false, c.clone()) };
    match (lead, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let mut parts = 0;
    if !mag.is_one() || (m.is_one() && radical.is_none()) {
        if mag.is_real() {
            let r: &BigRational = &mag.re;
            if r.is_integer() || (m.is_one() && radical.is_none()) {
                f.write_str(&fmt_rat(r))?;
            } else {
                write!(f, "({})", fmt_rat(r))?;
            }
        } else {
            write!(f, "{}", mag)?;
        }
        parts += 1;
    }
    if let Some(r) = radical {
        if !r.is_one() {
            if parts > 0 {
                f.write_str("*")?;
            }
            write!(f, "sqrt({})", r)?;
            parts += 1;
        }
    }
    if !m.is_one() {
        if parts > 0 {
            f.write_str("*")?;
        }
        fmt_monomial(names, m, f)?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            fmt_term(self.ring.names(), m, c, None, k == 0, f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
