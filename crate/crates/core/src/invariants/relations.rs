use alloc::{collections::BTreeMap, vec, vec::Vec};

use super::generators::{compositions, p_name, q_name, r_name, require_faithful_type1};
use super::{moment_forms, GeneratorSet};
use crate::error::{bail, Result};
use crate::lattice::IntMatrix;
use crate::poly::{
    binomial_poly, minimal_generators, reduce_monomial, toric_ideal, GaussRat, IdealBasis, Monomial, Polynomial,
};
use crate::weights::TypeInfo;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shell {
    /// Relations among the generators in the full ambient space.
    Off,
    /// Additionally the moment map components, which vanish on the zero level.
    On,
}

/// An ideal of relations among a named generator set.
#[derive(Clone, Debug)]
pub struct PresentationIdeal {
    pub generators: GeneratorSet,
    pub ideal: IdealBasis,
    pub shell: Shell,
    /// Degree up to which the toric computation was checked fiber by fiber.
    pub certified_degree: Option<u32>,
}

impl PresentationIdeal {
    pub fn new(generators: GeneratorSet, relations: Vec<Polynomial>, shell: Shell) -> Result<Self> {
        let ideal = IdealBasis::new(generators.ring(), relations)?;
        Ok(PresentationIdeal { generators, ideal, shell, certified_degree: None })
    }

    pub fn relations(&self) -> &[Polynomial] {
        self.ideal.generators()
    }

    /// Attaches a Gröbner basis so later membership tests are cheap.
    pub fn prepared(mut self) -> Result<Self> {
        self.ideal = self.ideal.with_groebner()?;
        Ok(self)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.ideal.member(f)?.0)
    }

    /// Same generator names and the same ideal.
    pub fn equal(&self, other: &PresentationIdeal) -> Result<bool> {
        if self.generators.names() != other.generators.names() {
            bail!(Argument, "presentations use different generator names");
        }
        self.ideal.equal(&other.ideal)
    }
}

fn monomial(gens: &GeneratorSet, factors: &[(usize, u32)]) -> Monomial {
    let mut e = vec![0u32; gens.len()];
    for &(i, k) in factors {
        e[i] += k;
    }
    Monomial(e)
}

fn binomial(gens: &GeneratorSet, a: Monomial, b: Monomial) -> Polynomial {
    Polynomial::from_terms(gens.ring(), vec![(a, GaussRat::one()), (b, GaussRat::from_int(-1))])
}

fn expand(s: &[u32]) -> Vec<usize> {
    s.iter().enumerate().flat_map(|(j, &c)| core::iter::repeat_n(j, c as usize)).collect()
}

fn add(s: &[u32], plus: usize, minus: usize) -> Vec<u32> {
    let mut t = s.to_vec();
    t[plus] += 1;
    t[minus] -= 1;
    t
}

/// Relations of a faithful Type I action in the closed-form generators, in
/// six families:
///
/// 1. `p_{g,h} p_{i,j} - p_{g,j} p_{i,h}`;
/// 2. `p_{g,h} q_s - p_{i,h} q_{s+e_g-e_i}`;
/// 3. `p_{g,h} qbar_s - p_{g,i} qbar_{s+e_h-e_i}`;
/// 4. `q_s q_{s'} - q_t q_{t'}` for `s + s' = t + t'`;
/// 5. the conjugates of 4;
/// 6. `Π r_i^{m_i} Π_j p_{g_j,h_j} - q_s qbar_{s'}` where `g` lists each
///    index `j` exactly `s_j` times and `h` each index `s'_j` times.
///
/// On shell the forms `-a_i r_i + n_i Σ_j p_{j,j}` are appended.
pub fn type1_relations(info: &TypeInfo, shell: Shell) -> Result<PresentationIdeal> {
    let gens = super::type1_generators(info)?;
    let (l, k, alpha, m) = require_faithful_type1(info)?;
    let idx = |name: &str| gens.index_of(name).expect("closed-form generator");
    let p = |g: usize, h: usize| idx(&p_name(g, h));
    let q = |s: &[u32], bar: bool| idx(&q_name(s, bar));
    let ss = compositions(alpha, k);
    let mut rels = Vec::new();

    for g in 0..k {
        for i in g + 1..k {
            for h in 0..k {
                for j in h + 1..k {
                    rels.push(binomial(
                        &gens,
                        monomial(&gens, &[(p(g, h), 1), (p(i, j), 1)]),
                        monomial(&gens, &[(p(g, j), 1), (p(i, h), 1)]),
                    ));
                }
            }
        }
    }
    for s in &ss {
        for g in 0..k {
            for i in 0..k {
                if g == i || s[i] == 0 {
                    continue;
                }
                let t = add(s, g, i);
                for h in 0..k {
                    rels.push(binomial(
                        &gens,
                        monomial(&gens, &[(p(g, h), 1), (q(s, false), 1)]),
                        monomial(&gens, &[(p(i, h), 1), (q(&t, false), 1)]),
                    ));
                    // conjugate family: roles of the two indices of p swap
                    rels.push(binomial(
                        &gens,
                        monomial(&gens, &[(p(h, g), 1), (q(s, true), 1)]),
                        monomial(&gens, &[(p(h, i), 1), (q(&t, true), 1)]),
                    ));
                }
            }
        }
    }
    for bar in [false, true] {
        let mut by_sum: BTreeMap<Vec<u32>, Vec<(usize, usize)>> = BTreeMap::new();
        for a in 0..ss.len() {
            for b in a..ss.len() {
                let sum: Vec<u32> = ss[a].iter().zip(&ss[b]).map(|(x, y)| x + y).collect();
                by_sum.entry(sum).or_default().push((a, b));
            }
        }
        for pairs in by_sum.values() {
            let (a0, b0) = pairs[0];
            for &(a, b) in &pairs[1..] {
                rels.push(binomial(
                    &gens,
                    monomial(&gens, &[(q(&ss[a0], bar), 1), (q(&ss[b0], bar), 1)]),
                    monomial(&gens, &[(q(&ss[a], bar), 1), (q(&ss[b], bar), 1)]),
                ));
            }
        }
    }
    for s in &ss {
        for t in &ss {
            let mut factors: Vec<(usize, u32)> = (0..l).map(|i| (idx(&r_name(i)), m[i])).collect();
            factors.extend(expand(s).into_iter().zip(expand(t)).map(|(g, h)| (p(g, h), 1)));
            rels.push(binomial(
                &gens,
                monomial(&gens, &factors),
                monomial(&gens, &[(q(s, false), 1), (q(t, true), 1)]),
            ));
        }
    }
    if shell == Shell::On {
        for i in 0..l {
            let mut terms =
                vec![(Monomial::var(gens.len(), idx(&r_name(i))), -&GaussRat::real(info.a[i].clone().into()))];
            for j in 0..k {
                terms.push((Monomial::var(gens.len(), p(j, j)), GaussRat::real(info.n[i].clone().into())));
            }
            rels.push(Polynomial::from_terms(gens.ring(), terms));
        }
    }
    PresentationIdeal::new(gens, rels, shell)
}

/// Cap on monomials enumerated while certifying a toric computation.
const CERTIFY_BUDGET: usize = 200_000;

/// Minimal binomial relations among `gens` (off shell), certified up to
/// twice the largest generator degree or until the enumeration budget runs out.
pub fn toric_relations(gens: &GeneratorSet) -> Result<PresentationIdeal> {
    let top = gens.generators().iter().map(|g| g.degree()).max().unwrap_or(0);
    toric_relations_with_bound(gens, 2 * top)
}

/// As [`toric_relations`], certifying every fiber of the monomial map up to
/// weighted degree `bound`: all monomials with the same image in `z, w` must
/// share one normal form.
pub fn toric_relations_with_bound(gens: &GeneratorSet, bound: u32) -> Result<PresentationIdeal> {
    let vectors: Vec<Vec<u32>> = gens.generators().iter().map(|g| g.exponents()).collect();
    let weights: Vec<u32> = gens.generators().iter().map(|g| g.degree()).collect();
    let gb = toric_ideal(&vectors, &weights)?;
    let image = |e: &[u32]| -> Vec<u64> {
        let mut out = vec![0u64; 2 * gens.n()];
        for (v, &c) in vectors.iter().zip(e) {
            for (o, &x) in out.iter_mut().zip(v) {
                *o += x as u64 * c as u64;
            }
        }
        out
    };
    for b in &gb {
        if image(&b.lead) != image(&b.tail) {
            bail!(Internal, "toric computation produced a non-relation");
        }
    }
    let certified = certify(&weights, bound, &gb, &image)?;
    let minimal = minimal_generators(&gb, &weights);
    let rels = minimal.iter().map(|b| binomial_poly(gens.ring(), b)).collect();
    let mut pres = PresentationIdeal::new(gens.clone(), rels, Shell::Off)?.prepared()?;
    pres.certified_degree = Some(certified);
    Ok(pres)
}

fn certify(
    weights: &[u32],
    bound: u32,
    gb: &[crate::poly::Binomial],
    image: &dyn Fn(&[u32]) -> Vec<u64>,
) -> Result<u32> {
    let mut reached = 0;
    let mut spent = 0usize;
    for d in 1..=bound {
        let monos = monomials_of_degree(weights, d, CERTIFY_BUDGET.saturating_sub(spent));
        let Some(monos) = monos else { break };
        spent += monos.len();
        let mut fibers: BTreeMap<Vec<u64>, Vec<u32>> = BTreeMap::new();
        for e in monos {
            let nf = reduce_monomial(&e, gb);
            match fibers.get(&image(&e)) {
                Some(prev) if prev != &nf => {
                    bail!(Internal, "toric relations miss a relation in degree {}", d)
                }
                Some(_) => {}
                None => {
                    fibers.insert(image(&e), nf);
                }
            }
        }
        reached = d;
    }
    Ok(reached)
}

/// All exponent vectors of weighted degree exactly `d`; `None` beyond `budget`.
pub(crate) fn monomials_of_degree(weights: &[u32], d: u32, budget: usize) -> Option<Vec<Vec<u32>>> {
    fn rec(w: &[u32], pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, budget: usize) -> bool {
        if pos == w.len() {
            if left == 0 {
                if out.len() >= budget {
                    return false;
                }
                out.push(cur.clone());
            }
            return true;
        }
        let mut e = 0;
        while e * w[pos] <= left {
            cur[pos] = e;
            if !rec(w, pos + 1, left - e * w[pos], cur, out, budget) {
                return false;
            }
            e += 1;
        }
        cur[pos] = 0;
        true
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; weights.len()];
    rec(weights, 0, d, &mut cur, &mut out, budget).then_some(out)
}

/// Appends the moment map components, written in the diagonal generators
/// and scaled to integer coefficients.
pub fn onshell(off: &PresentationIdeal, a: &IntMatrix) -> Result<PresentationIdeal> {
    if off.shell == Shell::On {
        return Ok(off.clone());
    }
    let two = GaussRat::from_int(2);
    let mut extra = Vec::new();
    for form in moment_forms(a) {
        extra.push(form.in_generators(&off.generators)?.scale(&two));
    }
    let ideal = off.ideal.extend(&extra)?;
    Ok(PresentationIdeal {
        generators: off.generators.clone(),
        ideal,
        shell: Shell::On,
        certified_degree: off.certified_degree,
    })
}
