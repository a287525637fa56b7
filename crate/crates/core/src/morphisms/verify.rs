use alloc::{collections::BTreeMap, format, string::String, vec, vec::Vec};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand_core::RngCore;

use super::{Codomain, GradedMonomialMap};
use crate::error::{bail, Result};
use crate::invariants::{bracket_in_generators, evaluate_generators, sample_shell_moduli, sample_shell_point};
use crate::lattice::IntMatrix;
use crate::poly::{Coefficient, GaussRat, IdealBasis, Monomial, Polynomial, RadicalPolynomial};

/// Every image is weighted-homogeneous of its generator's degree.
pub fn verify_graded(map: &GradedMonomialMap) -> bool {
    map.images().iter().enumerate().all(|(i, im)| {
        let d = map.source().get(i).degree() as u64;
        im.weighted_degrees().iter().all(|&e| e == d)
    })
}

/// Outcome of a membership test for one transported element.
#[derive(Clone, Debug)]
pub struct Certificate {
    /// What was transported: a relation, or a bracket `{a,b}`.
    pub label: String,
    pub image: RadicalPolynomial,
    /// Nonzero normal forms, keyed by radicand; empty iff the image lies in the ideal.
    pub residues: Vec<(BigInt, Polynomial)>,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.residues.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub holds: bool,
    pub certificates: Vec<Certificate>,
}

impl RelationReport {
    fn from(certificates: Vec<Certificate>) -> Self {
        RelationReport { holds: certificates.iter().all(Certificate::holds), certificates }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Certificate> {
        self.certificates.iter().filter(|c| !c.holds())
    }
}

fn certify(label: String, image: RadicalPolynomial, dst: &IdealBasis) -> Result<Certificate> {
    let mut residues = Vec::new();
    for (r, part) in image.split_by_radicand() {
        let nf = dst.normal_form(&part)?;
        if !nf.is_zero() {
            residues.push((r, nf));
        }
    }
    Ok(Certificate { label, image, residues })
}

fn check_rings(map: &GradedMonomialMap, src: Option<&IdealBasis>, dst: &IdealBasis) -> Result<()> {
    if let Some(src) = src {
        if !src.ring().same_variables(map.source().ring()) {
            bail!(Argument, "source ideal is not over the source generators");
        }
    }
    if !dst.ring().same_variables(map.target_ring()) {
        bail!(Argument, "destination ideal is not over the codomain ring");
    }
    Ok(())
}

/// Transports every generator of `src` and tests membership in `dst`.
///
/// Square roots of distinct squarefree integers are linearly independent,
/// so a radical image lies in a rational ideal iff each radicand part does.
/// A relation with three or more terms is only accepted under a radical map
/// when every generator it involves has a rational image.
pub fn verify_relations(map: &GradedMonomialMap, src: &IdealBasis, dst: &IdealBasis) -> Result<RelationReport> {
    check_rings(map, Some(src), dst)?;
    let mut certs = Vec::with_capacity(src.generators().len());
    for rel in src.generators() {
        if rel.len() > 2 && rel.support_vars().iter().any(|&v| !map.images()[v].is_rational()) {
            bail!(
                UnsupportedCoefficient,
                "relation {} has {} terms and involves generators with radical images",
                rel,
                rel.len()
            );
        }
        certs.push(certify(format!("{}", rel), map.apply(rel)?, dst)?);
    }
    Ok(RelationReport::from(certs))
}

/// Checks `map({a,b}) - {map a, map b}` against `dst` for every pair of
/// source generators. Codomain brackets follow from the Leibniz rule, using
/// the canonical brackets `{z_j, w_j} = -2i` for ambient codomains and the
/// generator bracket table otherwise.
pub fn verify_poisson(map: &GradedMonomialMap, dst: &IdealBasis) -> Result<RelationReport> {
    check_rings(map, None, dst)?;
    let src = map.source();
    let mut table = TargetBrackets::new(map.codomain());
    let mut certs = Vec::new();
    for a in 0..src.len() {
        for b in a + 1..src.len() {
            let left = map.apply(&bracket_in_generators(src, a, b)?)?;
            let right = table.bracket(&map.images()[a], &map.images()[b])?;
            let label = format!("{{{},{}}}", src.get(a).name, src.get(b).name);
            certs.push(certify(label, left.checked_sub(&right)?, dst)?);
        }
    }
    Ok(RelationReport::from(certs))
}

struct TargetBrackets<'a> {
    codomain: &'a Codomain,
    cache: BTreeMap<(usize, usize), RadicalPolynomial>,
}

impl<'a> TargetBrackets<'a> {
    fn new(codomain: &'a Codomain) -> Self {
        TargetBrackets { codomain, cache: BTreeMap::new() }
    }

    fn variable_bracket(&mut self, x: usize, y: usize) -> Result<RadicalPolynomial> {
        let ring = self.codomain.ring();
        match self.codomain {
            Codomain::Ambient(n) => {
                let n = *n;
                let c = if x < n && y == x + n {
                    GaussRat::from_int(-2)
                } else if y < n && x == y + n {
                    GaussRat::from_int(2)
                } else {
                    return Ok(RadicalPolynomial::zero(&ring));
                };
                let value = &GaussRat::i() * &c;
                Ok(RadicalPolynomial::term(&ring, Monomial::one(2 * n), Coefficient::rational(value)))
            }
            Codomain::Generators(g) => {
                if x == y {
                    return Ok(RadicalPolynomial::zero(&ring));
                }
                let (lo, hi, sign) = if x < y { (x, y, false) } else { (y, x, true) };
                if let alloc::collections::btree_map::Entry::Vacant(e) = self.cache.entry((lo, hi)) {
                    let p = RadicalPolynomial::from_polynomial(&bracket_in_generators(g, lo, hi)?);
                    e.insert(p);
                }
                let p = self.cache[&(lo, hi)].clone();
                Ok(if sign { p.neg() } else { p })
            }
        }
    }

    fn bracket(&mut self, f: &RadicalPolynomial, g: &RadicalPolynomial) -> Result<RadicalPolynomial> {
        let ring = self.codomain.ring();
        let nv = ring.nvars();
        let fv = support(f, nv);
        let gv = support(g, nv);
        let mut acc = RadicalPolynomial::zero(&ring);
        for &x in &fv {
            let df = partial(f, x)?;
            for &y in &gv {
                let b = self.variable_bracket(x, y)?;
                if b.is_zero() {
                    continue;
                }
                acc = acc.checked_add(&df.checked_mul(&partial(g, y)?)?.checked_mul(&b)?)?;
            }
        }
        Ok(acc)
    }
}

fn support(f: &RadicalPolynomial, nv: usize) -> Vec<usize> {
    (0..nv).filter(|&v| f.terms().any(|(m, _)| m.0[v] > 0)).collect()
}

fn partial(f: &RadicalPolynomial, v: usize) -> Result<RadicalPolynomial> {
    let mut acc = RadicalPolynomial::zero(f.ring());
    for (m, c) in f.terms() {
        let e = m.0[v];
        if e == 0 {
            continue;
        }
        let mut dm = m.clone();
        dm.0[v] -= 1;
        let dc = c.mul(&Coefficient::rational(GaussRat::from_int(e as i64)));
        acc = acc.checked_add(&RadicalPolynomial::term(f.ring(), dm, dc))?;
    }
    Ok(acc)
}

/// A point of the destination shell where a nonnegative generator maps to a
/// negative value.
#[derive(Clone, Debug)]
pub struct Witness {
    pub generator: String,
    /// Destination coordinates `z`; `w` is the conjugate.
    pub point: Vec<(f64, f64)>,
    pub value: (f64, f64),
    /// Exact `|z_j|^2` when the point is real with integral squared moduli.
    pub squared_moduli: Option<Vec<u64>>,
    /// Exact value at that point, when it is a single radical term.
    pub exact: Option<Coefficient>,
}

#[derive(Clone, Debug)]
pub enum InequalityVerdict {
    Violated(Witness),
    /// No sample was negative; this proves nothing.
    NoViolationFound {
        samples: usize,
    },
}

impl InequalityVerdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, InequalityVerdict::Violated(_))
    }
}

const TOLERANCE: f64 = 1e-9;

/// Evaluates the images of the nonnegative source generators on points of
/// the zero level of `dst` (the weight matrix of the codomain action).
///
/// Exact real points with integral `|z_j|^2` are tried first, then
/// floating-point points with random phases; each kind `samples` times.
pub fn verify_inequalities<R: RngCore>(
    map: &GradedMonomialMap,
    dst: &IntMatrix,
    samples: usize,
    rng: &mut R,
) -> Result<InequalityVerdict> {
    if dst.cols() != map.codomain().dimension() {
        bail!(Argument, "destination matrix has {} columns, codomain uses {}", dst.cols(), map.codomain().dimension());
    }
    let watched: Vec<usize> = (0..map.source().len()).filter(|&i| map.source().nonneg()[i]).collect();
    for _ in 0..samples {
        let moduli = sample_shell_moduli(dst, rng)?;
        let point: Vec<(f64, f64)> = moduli.iter().map(|&s| (libm::sqrt(s as f64), 0.0)).collect();
        let exact_vars = exact_variables(map.codomain(), &moduli)?;
        let vars = float_variables(map.codomain(), &point);
        for &i in &watched {
            let im = &map.images()[i];
            let value = im.eval_f64(&vars);
            let exact = exact_eval(im, &exact_vars);
            let negative = match &exact {
                Some(c) => c.value.im.is_zero() && c.value.re.is_negative(),
                None => value.0 < -TOLERANCE,
            };
            if negative {
                return Ok(InequalityVerdict::Violated(Witness {
                    generator: map.source().get(i).name.clone(),
                    point,
                    value,
                    squared_moduli: Some(moduli),
                    exact,
                }));
            }
        }
    }
    for _ in 0..samples {
        let point = sample_shell_point(dst, rng)?;
        let vars = float_variables(map.codomain(), &point);
        for &i in &watched {
            let value = map.images()[i].eval_f64(&vars);
            if value.0 < -TOLERANCE {
                return Ok(InequalityVerdict::Violated(Witness {
                    generator: map.source().get(i).name.clone(),
                    point,
                    value,
                    squared_moduli: None,
                    exact: None,
                }));
            }
        }
    }
    Ok(InequalityVerdict::NoViolationFound { samples })
}

fn float_variables(codomain: &Codomain, z: &[(f64, f64)]) -> Vec<(f64, f64)> {
    match codomain {
        Codomain::Generators(g) => evaluate_generators(g, z),
        Codomain::Ambient(_) => z.iter().copied().chain(z.iter().map(|&(re, im)| (re, -im))).collect(),
    }
}

/// Codomain variables at the real point `z_j = sqrt(s_j)`.
fn exact_variables(codomain: &Codomain, moduli: &[u64]) -> Result<Vec<Coefficient>> {
    let root = |e: &[u32]| -> Result<Coefficient> {
        let mut r = BigRational::from_integer(1.into());
        for (s, &k) in moduli.iter().zip(e) {
            for _ in 0..k {
                r *= BigRational::from_integer(BigInt::from(*s));
            }
        }
        Coefficient::sqrt(&r)
    };
    let n = moduli.len();
    match codomain {
        Codomain::Generators(g) => g
            .generators()
            .iter()
            .map(|gen| {
                let e: Vec<u32> = gen.u.iter().zip(&gen.v).map(|(a, b)| a + b).collect();
                root(&e)
            })
            .collect(),
        Codomain::Ambient(_) => (0..2 * n)
            .map(|v| {
                let mut e = vec![0u32; n];
                e[v % n] = 1;
                root(&e)
            })
            .collect(),
    }
}

/// Exact value when every term lands on one radicand.
fn exact_eval(f: &RadicalPolynomial, vars: &[Coefficient]) -> Option<Coefficient> {
    let mut acc = Coefficient::zero();
    for (m, c) in f.terms() {
        let mut t = c.clone();
        for (v, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                t = t.mul(&vars[v]);
            }
        }
        acc = acc.checked_add(&t).ok()?;
    }
    Some(acc)
}
