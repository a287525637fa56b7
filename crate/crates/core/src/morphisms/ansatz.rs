use alloc::{collections::BTreeMap, collections::BTreeSet, format, string::String, sync::Arc, vec, vec::Vec};

use crate::error::Result;
use crate::poly::{parse_polynomial, IdealBasis, Monomial, PolyRing, Polynomial};

/// Coefficient unknowns of a degree-preserving map on the low-degree part of
/// the `(-2,3,6)` quotient: `p1, p2` go to combinations of `q1, q2`, and each
/// conjugate pair `p3, p4` and `p5, p6` to combinations of `q3, q4` and `q5, q6`.
const MAP: [(&str, [&str; 2]); 6] = [
    ("p1", ["c11", "c12"]),
    ("p2", ["c21", "c22"]),
    ("p3", ["c33", "c34"]),
    ("p4", ["c43", "c44"]),
    ("p5", ["c55", "c56"]),
    ("p6", ["c65", "c66"]),
];

const TARGETS: [[&str; 2]; 3] = [["q1", "q2"], ["q3", "q4"], ["q5", "q6"]];

/// Lowest relations among `p1..p6` (degrees 6 and 8).
const SOURCE_RELATIONS: [&str; 2] = ["p1^2*p2 - p3*p4", "27*(4*p2^3*(3*p1 + 2*p2) + (p1 + 6*p2)*p3*p4) - 8*p5*p6"];

/// Lowest relations among `q1..q6`.
const TARGET_RELATIONS: [&str; 2] =
    ["4*q2*(q1 + 3*q2)^2 - 9*q3*q4", "108*q2^3*(q1 + 2*q2) + 9*(q1 - 6*q2)*q3*q4 - 4*q5*q6"];

/// The ideal-preservation constraints for a graded map on the low-degree part.
///
/// The first relation must go to `k1` times its counterpart. The second must
/// go into the degree-8 part of the target ideal, `k2 R2' + (k3 q1 + k4 q2) R1'`.
/// Each equation is one coefficient of a `q`-monomial in the difference.
#[derive(Clone, Debug)]
pub struct AnsatzSystem {
    pub ring: Arc<PolyRing>,
    pub unknowns: Vec<String>,
    /// `(q-monomial, coefficient equation)`.
    pub equations: Vec<(String, Polynomial)>,
}

impl AnsatzSystem {
    pub fn equation(&self, monomial: &str) -> Option<&Polynomial> {
        self.equations.iter().find(|(m, _)| m == monomial).map(|(_, e)| e)
    }

    /// Single-term equations: some unknown in each must vanish.
    fn monomial_equations(&self) -> Vec<Vec<usize>> {
        self.equations
            .iter()
            .filter(|(_, e)| e.len() == 1)
            .map(|(_, e)| e.terms()[0].0 .0.iter().enumerate().filter(|(_, &x)| x > 0).map(|(v, _)| v).collect())
            .collect()
    }
}

pub fn ansatz_system() -> Result<AnsatzSystem> {
    let mut unknowns: Vec<String> = MAP.iter().flat_map(|(_, cs)| cs.iter().map(|c| String::from(*c))).collect();
    unknowns.extend(["k1", "k2", "k3", "k4"].map(String::from));
    let qs: Vec<&str> = TARGETS.iter().flatten().copied().collect();
    let mut names: Vec<String> = unknowns.clone();
    names.extend(qs.iter().map(|q| String::from(*q)));
    let full = Arc::new(PolyRing::standard(&names)?);

    let mut images = Vec::new();
    for (i, (_, cs)) in MAP.iter().enumerate() {
        let [a, b] = TARGETS[i / 2];
        images.push(parse_polynomial(&full, &format!("{}*{} + {}*{}", cs[0], a, cs[1], b))?);
    }
    let pring = Arc::new(PolyRing::standard(&MAP.map(|(p, _)| p))?);
    let phi = |s: &str| -> Result<Polynomial> { parse_polynomial(&pring, s)?.substitute(&images, &full) };
    let t = |s: &str| parse_polynomial(&full, s);

    let d1 = phi(SOURCE_RELATIONS[0])?.checked_sub(&t(&format!("k1*({})", TARGET_RELATIONS[0]))?)?;
    let d2 = phi(SOURCE_RELATIONS[1])?
        .checked_sub(&t(&format!("k2*({}) + (k3*q1 + k4*q2)*({})", TARGET_RELATIONS[1], TARGET_RELATIONS[0]))?)?;

    let nu = unknowns.len();
    let ring = Arc::new(PolyRing::standard(&unknowns)?);
    let mut equations = Vec::new();
    for d in [d1, d2] {
        let mut groups: BTreeMap<Vec<u32>, Vec<(Monomial, crate::poly::GaussRat)>> = BTreeMap::new();
        for (m, c) in d.terms() {
            groups.entry(m.0[nu..].to_vec()).or_default().push((Monomial(m.0[..nu].to_vec()), c.clone()));
        }
        for (qm, terms) in groups.into_iter().rev() {
            let label =
                Polynomial::term(&Arc::new(PolyRing::standard(&qs)?), Monomial(qm), crate::poly::GaussRat::one());
            equations.push((format!("{}", label), Polynomial::from_terms(&ring, terms)));
        }
    }
    Ok(AnsatzSystem { ring, unknowns, equations })
}

/// One component of the case split in which no image is zero.
#[derive(Clone, Debug)]
pub struct AnsatzFamily {
    /// Unknowns assumed zero by the case split.
    pub zero: Vec<String>,
    /// One unknown per image assumed nonzero.
    pub nonzero: Vec<String>,
    /// Gröbner basis of the system with the assumptions, in the unknowns plus
    /// an auxiliary `t` with `t·∏ nonzero = 1`.
    pub basis: Vec<Polynomial>,
    /// `3 c11 + 2 c22`, `c12 + 2 c22` and `c21` all lie in the family's ideal.
    pub forced: bool,
}

#[derive(Clone, Debug)]
pub struct AnsatzSolution {
    pub system: AnsatzSystem,
    /// Consistent components; every case not listed has no solution.
    pub families: Vec<AnsatzFamily>,
    /// Number of case-split branches examined.
    pub branches: usize,
    pub all_forced: bool,
}

/// Solves the system with every image nonzero.
///
/// Branches pick, for each single-term equation, an unknown that vanishes,
/// and for each image, a coefficient that does not. Each branch is decided by
/// a Gröbner basis with the nonvanishing encoded by an auxiliary variable.
pub fn ansatz_nogo() -> Result<AnsatzSolution> {
    let system = ansatz_system()?;
    let mut names = vec![String::from("t")];
    names.extend(system.unknowns.iter().cloned());
    let ring = Arc::new(PolyRing::standard(&names)?);
    let lift = |p: &Polynomial| -> Polynomial {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32];
                e.extend_from_slice(&m.0);
                (Monomial(e), c.clone())
            })
            .collect();
        Polynomial::from_terms(&ring, terms)
    };
    let var = |i: usize| Polynomial::var(&ring, i + 1);
    let equations: Vec<Polynomial> = system.equations.iter().map(|(_, e)| lift(e)).collect();

    let idx = |s: &str| system.unknowns.iter().position(|u| u == s).expect("known unknown");
    let images: Vec<Vec<usize>> = MAP.iter().map(|(_, cs)| cs.iter().map(|c| idx(c)).collect()).collect();
    let mut cases = BTreeSet::new();
    split(&system.monomial_equations(), &images, BTreeSet::new(), BTreeSet::new(), &mut cases);

    let targets: Vec<Polynomial> =
        ["3*c11 + 2*c22", "c12 + 2*c22", "c21"].iter().map(|s| parse_polynomial(&ring, s)).collect::<Result<_>>()?;
    let mut families = Vec::new();
    for (zero, nonzero) in &cases {
        let mut gens = equations.clone();
        gens.extend(zero.iter().map(|&v| var(v)));
        let mut witness = Polynomial::var(&ring, 0);
        for &v in nonzero {
            witness = &witness * &var(v);
        }
        gens.push(&witness - &Polynomial::one(&ring));
        let ideal = IdealBasis::new(&ring, gens)?.with_groebner()?;
        let basis = ideal.cached_groebner().expect("basis attached").to_vec();
        if basis.iter().any(|g| g.is_constant()) {
            continue;
        }
        let mut forced = true;
        for f in &targets {
            forced &= ideal.member(f)?.0;
        }
        let label = |s: &BTreeSet<usize>| s.iter().map(|&v| system.unknowns[v].clone()).collect();
        families.push(AnsatzFamily { zero: label(zero), nonzero: label(nonzero), basis, forced });
    }
    let all_forced = families.iter().all(|f| f.forced);
    Ok(AnsatzSolution { system, branches: cases.len(), families, all_forced })
}

type Case = (BTreeSet<usize>, BTreeSet<usize>);

fn split(
    monomials: &[Vec<usize>],
    images: &[Vec<usize>],
    zero: BTreeSet<usize>,
    nonzero: BTreeSet<usize>,
    out: &mut BTreeSet<Case>,
) {
    if let Some(img) = images.iter().find(|img| !img.iter().any(|v| nonzero.contains(v))) {
        for &v in img.iter().filter(|v| !zero.contains(v)) {
            let mut nz = nonzero.clone();
            nz.insert(v);
            split(monomials, images, zero.clone(), nz, out);
        }
        return;
    }
    if let Some(eq) = monomials.iter().find(|eq| !eq.iter().any(|v| zero.contains(v))) {
        for &v in eq.iter().filter(|v| !nonzero.contains(v)) {
            let mut z = zero.clone();
            z.insert(v);
            split(monomials, images, z, nonzero.clone(), out);
        }
        return;
    }
    out.insert((zero, nonzero));
}
