//! Graded maps between quotient presentations.
//!
//! A map sends each source generator to a polynomial, possibly with
//! square-root coefficients, in either another generator set or the ambient
//! coordinates of a circle action. The checks cover grading, relation ideals,
//! Poisson brackets and the nonnegativity inequalities.

mod ansatz;
mod builtin;
mod verify;

pub use ansatz::{ansatz_nogo, ansatz_system, AnsatzFamily, AnsatzSolution, AnsatzSystem};
pub use builtin::{
    ambient_shell_ideal, builtin_map, counterexample, Builtin, Counterexample, COUNTEREXAMPLE_SOURCE_RELATIONS,
    COUNTEREXAMPLE_TARGET_RELATIONS,
};
pub use verify::{
    verify_graded, verify_inequalities, verify_poisson, verify_relations, Certificate, InequalityVerdict,
    RelationReport, Witness,
};

use alloc::{sync::Arc, vec, vec::Vec};
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{bail, Result};
use crate::invariants::{ambient_ring, GeneratorSet};
use crate::lattice::IntMatrix;
use crate::poly::{
    parse_radical, Coefficient, GaussRat, IdealBasis, Monomial, PolyRing, Polynomial, RadicalPolynomial,
};

/// Where the images of a map live.
#[derive(Clone, Debug, PartialEq)]
pub enum Codomain {
    /// Polynomials in a named generator set.
    Generators(GeneratorSet),
    /// Polynomials in `z1..zn, w1..wn`.
    Ambient(usize),
}

impl Codomain {
    pub fn ring(&self) -> Arc<PolyRing> {
        match self {
            Codomain::Generators(g) => g.ring().clone(),
            Codomain::Ambient(n) => ambient_ring(*n),
        }
    }

    /// Number of coordinates of the underlying representation.
    pub fn dimension(&self) -> usize {
        match self {
            Codomain::Generators(g) => g.n(),
            Codomain::Ambient(n) => *n,
        }
    }
}

/// Assignment of a polynomial image to every source generator.
///
/// Images are checked to live in the codomain ring; grading is a separate
/// property, see [`verify_graded`].
#[derive(Clone)]
pub struct GradedMonomialMap {
    source: GeneratorSet,
    codomain: Codomain,
    ring: Arc<PolyRing>,
    images: Vec<RadicalPolynomial>,
}

impl GradedMonomialMap {
    pub fn new(source: GeneratorSet, codomain: Codomain, images: Vec<RadicalPolynomial>) -> Result<Self> {
        if images.len() != source.len() {
            bail!(Argument, "{} generators but {} images", source.len(), images.len());
        }
        let ring = codomain.ring();
        for (i, im) in images.iter().enumerate() {
            if !im.ring().same_variables(&ring) {
                bail!(Argument, "image of {} is not in the codomain ring", source.get(i).name);
            }
        }
        Ok(GradedMonomialMap { source, codomain, ring, images })
    }

    pub fn identity(gens: &GeneratorSet) -> Self {
        let images = (0..gens.len()).map(|i| RadicalPolynomial::from_polynomial(&gens.var(i))).collect();
        GradedMonomialMap {
            source: gens.clone(),
            codomain: Codomain::Generators(gens.clone()),
            ring: gens.ring().clone(),
            images,
        }
    }

    /// Parses `(generator name, image)` pairs. Generators without an entry are
    /// solved from a moment form of `moment` when one involves them with every
    /// other term already assigned; otherwise the name is reported missing.
    pub fn from_assignments<S: AsRef<str>, T: AsRef<str>>(
        source: GeneratorSet,
        codomain: Codomain,
        assignments: &[(S, T)],
        moment: Option<&IntMatrix>,
    ) -> Result<Self> {
        let ring = codomain.ring();
        let mut images: Vec<Option<RadicalPolynomial>> = vec![None; source.len()];
        for (name, text) in assignments {
            let i = source.require(name.as_ref())?;
            if images[i].is_some() {
                bail!(Argument, "generator {} assigned twice", name.as_ref());
            }
            images[i] = Some(parse_radical(&ring, text.as_ref())?);
        }
        if let Some(a) = moment {
            complete_by_moment(&source, a, &ring, &mut images)?;
        }
        let mut out = Vec::with_capacity(images.len());
        for (i, im) in images.into_iter().enumerate() {
            match im {
                Some(p) => out.push(p),
                None => bail!(Argument, "no image for generator {}", source.get(i).name),
            }
        }
        Self::new(source, codomain, out)
    }

    pub fn source(&self) -> &GeneratorSet {
        &self.source
    }

    pub fn codomain(&self) -> &Codomain {
        &self.codomain
    }

    pub fn target_ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn images(&self) -> &[RadicalPolynomial] {
        &self.images
    }

    pub fn image(&self, name: &str) -> Result<&RadicalPolynomial> {
        Ok(&self.images[self.source.require(name)?])
    }

    /// Every image is a single term.
    pub fn is_monomial(&self) -> bool {
        self.images.iter().all(|p| p.len() <= 1)
    }

    pub fn is_rational(&self) -> bool {
        self.images.iter().all(|p| p.is_rational())
    }

    /// Every image is a linear combination of codomain variables.
    pub fn is_linear(&self) -> bool {
        self.images.iter().all(|p| p.terms().all(|(m, _)| m.total_degree() == 1))
    }

    /// Copy with one image replaced.
    pub fn with_image(&self, name: &str, image: &str) -> Result<Self> {
        let i = self.source.require(name)?;
        let mut out = self.clone();
        out.images[i] = parse_radical(&self.ring, image)?;
        Ok(out)
    }

    /// Image of a polynomial in the source generators.
    pub fn apply(&self, f: &Polynomial) -> Result<RadicalPolynomial> {
        if !f.ring().same_variables(self.source.ring()) {
            bail!(Argument, "{} is not a polynomial in the source generators", f);
        }
        RadicalPolynomial::from_polynomial(f).substitute(&self.images, &self.ring)
    }

    pub fn apply_radical(&self, f: &RadicalPolynomial) -> Result<RadicalPolynomial> {
        if !f.ring().same_variables(self.source.ring()) {
            bail!(Argument, "{} is not a polynomial in the source generators", f);
        }
        f.substitute(&self.images, &self.ring)
    }

    /// `next ∘ self`; the codomain of `self` must be the source of `next`.
    pub fn then(&self, next: &GradedMonomialMap) -> Result<Self> {
        match &self.codomain {
            Codomain::Generators(g) if g.names() == next.source.names() => {}
            _ => bail!(Argument, "codomain does not match the source of the next map"),
        }
        let images = self.images.iter().map(|p| next.apply_radical(p)).collect::<Result<Vec<_>>>()?;
        Self::new(self.source.clone(), next.codomain.clone(), images)
    }

    /// Inverse of a linear map, degree by degree, working modulo the linear
    /// generators of `target_ideal` (the moment forms, on shell).
    pub fn inverse(&self, target_ideal: &IdealBasis) -> Result<Self> {
        let Codomain::Generators(target) = &self.codomain else {
            bail!(Argument, "only maps between generator sets can be inverted");
        };
        if !self.is_linear() || !self.is_rational() {
            bail!(Argument, "inversion needs linear images with rational coefficients");
        }
        let linear: Vec<&Polynomial> = target_ideal
            .generators()
            .iter()
            .filter(|p| !p.is_zero() && p.terms().iter().all(|(m, _)| m.total_degree() == 1))
            .collect();
        let mut images = vec![RadicalPolynomial::zero(self.source.ring()); target.len()];
        let mut degrees: Vec<u32> = target.generators().iter().map(|g| g.degree()).collect();
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            let rows: Vec<usize> = (0..target.len()).filter(|&i| target.get(i).degree() == d).collect();
            let cols_src: Vec<usize> = (0..self.source.len()).filter(|&i| self.source.get(i).degree() == d).collect();
            let column = |p: &Polynomial| -> Vec<GaussRat> {
                rows.iter().map(|&r| p.coefficient(&Monomial::var(target.len(), r))).collect()
            };
            let mut columns: Vec<Vec<GaussRat>> = Vec::new();
            for &s in &cols_src {
                columns.push(column(&self.images[s].to_polynomial()?));
            }
            for rel in &linear {
                if rel.terms().iter().all(|(m, _)| rows.iter().any(|&r| m.0[r] == 1)) {
                    columns.push(column(rel));
                }
            }
            for (k, &r) in rows.iter().enumerate() {
                let mut rhs = vec![GaussRat::zero(); rows.len()];
                rhs[k] = GaussRat::one();
                let Some(x) = solve_linear(&columns, &rhs) else {
                    bail!(Precondition, "{} is not in the image of the map", target.get(r).name);
                };
                let terms = cols_src
                    .iter()
                    .zip(&x)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(&s, c)| (Monomial::var(self.source.len(), s), c.clone()))
                    .collect();
                images[r] = RadicalPolynomial::from_polynomial(&Polynomial::from_terms(self.source.ring(), terms));
            }
        }
        Self::new(target.clone(), Codomain::Generators(self.source.clone()), images)
    }
}

impl PartialEq for GradedMonomialMap {
    fn eq(&self, o: &Self) -> bool {
        self.source == o.source && self.codomain == o.codomain && self.images == o.images
    }
}

impl fmt::Display for GradedMonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, im) in self.images.iter().enumerate() {
            writeln!(f, "{} -> {}", self.source.get(i).name, im)?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedMonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Fills unassigned diagonal generators from moment forms `Σ a_ij g_j = 0`.
fn complete_by_moment(
    source: &GeneratorSet,
    a: &IntMatrix,
    ring: &Arc<PolyRing>,
    images: &mut [Option<RadicalPolynomial>],
) -> Result<()> {
    if a.cols() != source.n() {
        bail!(Argument, "moment matrix has {} columns, generators use {}", a.cols(), source.n());
    }
    let rational = |c: &BigInt| GaussRat::real(BigRational::from_integer(c.clone()));
    let mut progress = true;
    while progress {
        progress = false;
        for r in 0..a.rows() {
            let mut involved = Vec::new();
            for j in (0..a.cols()).filter(|&j| !a.get(r, j).is_zero()) {
                let Some(d) = source.diagonal(j) else {
                    bail!(Argument, "generator set lacks z{}w{}", j + 1, j + 1);
                };
                involved.push((d, rational(a.get(r, j))));
            }
            let missing: Vec<usize> = involved.iter().filter(|(d, _)| images[*d].is_none()).map(|(d, _)| *d).collect();
            let [target] = missing[..] else { continue };
            let mut acc = RadicalPolynomial::zero(ring);
            let mut lead = GaussRat::one();
            for (d, c) in &involved {
                if *d == target {
                    lead = c.clone();
                } else {
                    acc = acc.checked_add(&images[*d].as_ref().unwrap().scale(&Coefficient::rational(c.clone())))?;
                }
            }
            let inv = lead.inv().expect("nonzero moment coefficient");
            images[target] = Some(acc.scale(&Coefficient::rational(-&inv)));
            progress = true;
        }
    }
    Ok(())
}

/// Some solution of `Σ x_j columns[j] = rhs`, free variables set to zero.
fn solve_linear(columns: &[Vec<GaussRat>], rhs: &[GaussRat]) -> Option<Vec<GaussRat>> {
    let n = rhs.len();
    let m = columns.len();
    let mut rows: Vec<Vec<GaussRat>> =
        (0..n).map(|i| columns.iter().map(|c| c[i].clone()).chain([rhs[i].clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv()?;
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == n {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    let mut x = vec![GaussRat::zero(); m];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][m].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests;
