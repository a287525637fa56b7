use alloc::{collections::BTreeMap, sync::Arc, vec, vec::Vec};
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::coeff::{Coefficient, GaussRat};
use super::monomial::Monomial;
use super::polynomial::{fmt_term, Polynomial};
use super::ring::PolyRing;
use crate::error::{bail, Result};

/// Polynomial whose coefficients may carry a square-root factor.
///
/// Each term has a single radicand; adding terms with the same monomial and
/// different radicands is rejected.
#[derive(Clone, PartialEq, Eq)]
pub struct RadicalPolynomial {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl RadicalPolynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        RadicalPolynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: Coefficient) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        RadicalPolynomial {
            ring: p.ring().clone(),
            terms: p.terms().iter().map(|(m, c)| (m.clone(), Coefficient::rational(c.clone()))).collect(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.is_rational())
    }

    /// Single term `c·m`, if that is the shape.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Coefficient)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Drops the radical layer; fails if any radicand differs from 1.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if !c.is_rational() {
                bail!(UnsupportedCoefficient, "coefficient {} has a radical factor", c);
            }
            terms.push((m.clone(), c.value.clone()));
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// Groups terms by radicand: `self = Σ √r · part_r`.
    pub fn split_by_radicand(&self) -> BTreeMap<BigInt, Polynomial> {
        let mut groups: BTreeMap<BigInt, Vec<(Monomial, GaussRat)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry(c.radicand.clone()).or_default().push((m.clone(), c.value.clone()));
        }
        groups.into_iter().map(|(r, t)| (r, Polynomial::from_terms(&self.ring, t))).collect()
    }

    fn check_ring(&self, o: &RadicalPolynomial) -> Result<()> {
        if !self.ring.same_variables(&o.ring) {
            bail!(Argument, "polynomials live in different variable contexts");
        }
        Ok(())
    }

    fn insert(&mut self, m: Monomial, c: Coefficient) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.checked_add(&c)?;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    self.terms.insert(m, s);
                }
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &RadicalPolynomial) -> Result<RadicalPolynomial> {
        self.check_ring(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &RadicalPolynomial) -> Result<RadicalPolynomial> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &RadicalPolynomial) -> Result<RadicalPolynomial> {
        self.check_ring(o)?;
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                out.insert(m.mul(n), c.mul(d))?;
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> RadicalPolynomial {
        RadicalPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> RadicalPolynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        RadicalPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Result<RadicalPolynomial> {
        let mut acc = Self::term(&self.ring, Monomial::one(self.ring.nvars()), Coefficient::one());
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn substitute(&self, images: &[RadicalPolynomial], target: &Arc<PolyRing>) -> Result<RadicalPolynomial> {
        if images.len() != self.ring.nvars() {
            bail!(Argument, "expected {} images, got {}", self.ring.nvars(), images.len());
        }
        let mut powers: Vec<Vec<RadicalPolynomial>> = images
            .iter()
            .map(|p| vec![Self::term(target, Monomial::one(target.nvars()), Coefficient::one()), p.clone()])
            .collect();
        let mut acc = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::term(target, Monomial::one(target.nvars()), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().checked_mul(&powers[i][1])?;
                    powers[i].push(next);
                }
                t = t.checked_mul(&powers[i][e as usize])?;
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[(f64, f64)]) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_f64();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = super::polynomial::cmul(t, point[i]);
                }
            }
            acc.0 += t.0;
            acc.1 += t.1;
        }
        acc
    }

    pub fn weighted_degrees(&self) -> Vec<u64> {
        let mut d: Vec<u64> = self.terms.keys().map(|m| m.weighted_degree(self.ring.weights())).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    fn sorted_terms(&self) -> Vec<(&Monomial, &Coefficient)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        let w = self.ring.weights();
        let ord = self.ring.order();
        t.sort_by(|a, b| ord.cmp(w, &b.0 .0, &a.0 .0));
        t
    }
}

impl fmt::Display for RadicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let r = if c.radicand.is_one() { None } else { Some(&c.radicand) };
            fmt_term(self.ring.names(), m, &c.value, r, k == 0, f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for RadicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
