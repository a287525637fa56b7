use alloc::{sync::Arc, vec::Vec};

use super::binomial::{binomial_groebner, Binomial};
use super::coeff::GaussRat;
use super::groebner::{groebner, normal_form};
use super::monomial::{Monomial, TermOrder};
use super::polynomial::Polynomial;
use super::radical::RadicalPolynomial;
use super::ring::PolyRing;
use crate::error::{bail, Result};

/// Generators of an ideal plus an optional reduced Gröbner basis for the
/// ring's term order.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    groebner: Option<Vec<Polynomial>>,
}

/// `x^a - x^b` shape with unit coefficients.
fn as_binomial(p: &Polynomial) -> Option<(Vec<u32>, Vec<u32>)> {
    match p.terms() {
        [(a, ca), (b, cb)] if ca.is_one() && (-cb).is_one() => Some((a.0.clone(), b.0.clone())),
        _ => None,
    }
}

impl IdealBasis {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if !g.ring().same_variables(ring) {
                bail!(Argument, "ideal generator {} lives in another variable context", g);
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).map(|g| g.in_ring(ring)).collect();
        Ok(IdealBasis { ring: ring.clone(), generators, groebner: None })
    }

    /// Rejects generators carrying radical coefficients.
    pub fn from_radical(ring: &Arc<PolyRing>, generators: &[RadicalPolynomial]) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            gens.push(g.to_polynomial()?);
        }
        Self::new(ring, gens)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        IdealBasis { ring: ring.clone(), generators: Vec::new(), groebner: Some(Vec::new()) }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn cached_groebner(&self) -> Option<&[Polynomial]> {
        self.groebner.as_deref()
    }

    /// Same generators with the Gröbner basis for the ring's order attached.
    pub fn with_groebner(mut self) -> Result<Self> {
        if self.groebner.is_none() {
            let gb = compute(&self.generators, &self.ring);
            for g in &self.generators {
                if !normal_form(g, &gb).is_zero() {
                    bail!(Internal, "generator {} does not reduce to zero modulo its Gröbner basis", g);
                }
            }
            self.groebner = Some(gb);
        }
        Ok(self)
    }

    /// Reduced Gröbner basis for `order` as a new ideal over the re-ordered ring.
    pub fn groebner_basis(&self, order: TermOrder) -> Result<IdealBasis> {
        let ring = Arc::new(self.ring.with_order(order)?);
        let source = IdealBasis::new(&ring, self.generators.clone())?.with_groebner()?;
        let gb = source.groebner.clone().unwrap();
        Ok(IdealBasis { ring, generators: gb.clone(), groebner: Some(gb) })
    }

    fn basis(&self) -> Result<alloc::borrow::Cow<'_, [Polynomial]>> {
        Ok(match &self.groebner {
            Some(gb) => alloc::borrow::Cow::Borrowed(gb.as_slice()),
            None => alloc::borrow::Cow::Owned(compute(&self.generators, &self.ring)),
        })
    }

    /// Membership with the normal form as certificate.
    pub fn member(&self, f: &Polynomial) -> Result<(bool, Polynomial)> {
        if !f.ring().same_variables(&self.ring) {
            bail!(Argument, "polynomial {} lives in another variable context", f);
        }
        let gb = self.basis()?;
        let nf = normal_form(&f.in_ring(&self.ring), &gb);
        Ok((nf.is_zero(), nf))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        Ok(self.member(f)?.1)
    }

    /// Membership for radical coefficients: square roots of distinct
    /// squarefree integers are independent over the Gaussian rationals, so
    /// each radicand group must lie in the ideal on its own.
    pub fn member_radical(&self, f: &RadicalPolynomial) -> Result<bool> {
        for (_, part) in f.split_by_radicand() {
            if !self.member(&part)?.0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains(&self, other: &IdealBasis) -> Result<bool> {
        for g in &other.generators {
            if !self.member(g)?.0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Mutual membership of generators.
    pub fn equal(&self, other: &IdealBasis) -> Result<bool> {
        if !self.ring.same_variables(&other.ring) {
            bail!(Argument, "ideals live in different variable contexts");
        }
        let a = self.clone().with_groebner()?;
        let b = other.clone().with_groebner()?;
        Ok(a.contains(&b)? && b.contains(&a)?)
    }

    /// Adds generators (drops any cached basis).
    pub fn extend(&self, more: &[Polynomial]) -> Result<IdealBasis> {
        let mut gens = self.generators.clone();
        gens.extend(more.iter().cloned());
        IdealBasis::new(&self.ring, gens)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }
}

fn compute(gens: &[Polynomial], ring: &Arc<PolyRing>) -> Vec<Polynomial> {
    let binomials: Option<Vec<(Vec<u32>, Vec<u32>)>> = gens.iter().map(as_binomial).collect();
    match binomials {
        Some(b) if !b.is_empty() => {
            let w = ring.weights().to_vec();
            let ord = ring.order().clone();
            let cmp = move |x: &[u32], y: &[u32]| ord.cmp(&w, x, y);
            binomial_groebner(&b, &cmp).into_iter().map(|b| binomial_poly(ring, &b)).collect()
        }
        _ => groebner(gens, ring),
    }
}

pub(crate) fn binomial_poly(ring: &Arc<PolyRing>, b: &Binomial) -> Polynomial {
    Polynomial::from_terms(
        ring,
        alloc::vec![(Monomial(b.lead.clone()), GaussRat::one()), (Monomial(b.tail.clone()), GaussRat::from_int(-1))],
    )
}
