use alloc::{sync::Arc, vec, vec::Vec};

use super::generators::{compositions, p_name, q_name, r_name, require_faithful_type1};
use super::GeneratorSet;
use crate::error::{bail, Result};
use crate::poly::{GaussRat, IdealBasis, Monomial, PolyRing, Polynomial, TermOrder};
use crate::weights::TypeInfo;

/// `{f, g} = -2i Σ_j (∂f/∂z_j ∂g/∂w_j - ∂f/∂w_j ∂g/∂z_j)` on `C[z, w]`.
pub fn poisson_bracket(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if !f.ring().same_variables(g.ring()) {
        bail!(Argument, "bracket arguments live in different variable contexts");
    }
    let nv = f.ring().nvars();
    if !nv.is_multiple_of(2) {
        bail!(Argument, "bracket needs paired variables z1..zn, w1..wn");
    }
    let n = nv / 2;
    let mut acc = Polynomial::zero(f.ring());
    for j in 0..n {
        let a = f.derivative(j).checked_mul(&g.derivative(n + j))?;
        let b = f.derivative(n + j).checked_mul(&g.derivative(j))?;
        acc = acc.checked_add(&a.checked_sub(&b)?)?;
    }
    Ok(acc.scale(&(&GaussRat::i() * &GaussRat::from_int(-2))))
}

/// Multiplicities of generators whose product is `z^u w^v`, found greedily
/// from the highest-degree generator down. `None` if the monomial is not in
/// the monoid spanned by `gens`.
pub fn decompose(gens: &GeneratorSet, exponents: &[u32]) -> Option<Vec<u32>> {
    let vectors: Vec<Vec<u32>> = gens.generators().iter().map(|g| g.exponents()).collect();
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&i| core::cmp::Reverse(gens.get(i).degree()));
    let mut rest = exponents.to_vec();
    let mut mult = vec![0u32; gens.len()];
    while rest.iter().any(|&x| x > 0) {
        let hit = order.iter().copied().find(|&i| vectors[i].iter().zip(&rest).all(|(a, b)| a <= b))?;
        for (r, a) in rest.iter_mut().zip(&vectors[hit]) {
            *r -= a;
        }
        mult[hit] += 1;
    }
    Some(mult)
}

/// Rewrites an invariant polynomial in `z, w` as a polynomial in `gens`.
pub(crate) fn rewrite_by_decomposition(gens: &GeneratorSet, f: &Polynomial) -> Result<Polynomial> {
    let mut terms = Vec::with_capacity(f.len());
    for (m, c) in f.terms() {
        match decompose(gens, m.exps()) {
            Some(e) => terms.push((Monomial(e), c.clone())),
            None => bail!(
                Argument,
                "term {} is not a product of the generators",
                Polynomial::term(f.ring(), m.clone(), GaussRat::one())
            ),
        }
    }
    Ok(Polynomial::from_terms(gens.ring(), terms))
}

/// Bracket of generators `i` and `j`, computed in `z, w` and rewritten in
/// the generators. The representative is defined modulo the relations.
pub fn bracket_in_generators(gens: &GeneratorSet, i: usize, j: usize) -> Result<Polynomial> {
    let b = poisson_bracket(&gens.ambient(i), &gens.ambient(j))?;
    rewrite_by_decomposition(gens, &b)
}

/// Brackets of all pairs `i < j`, row-major.
pub fn bracket_table(gens: &GeneratorSet) -> Result<Vec<(usize, usize, Polynomial)>> {
    let mut out = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            out.push((i, j, bracket_in_generators(gens, i, j)?));
        }
    }
    Ok(out)
}

/// Subalgebra membership by elimination: adjoins a tag variable `t_k` per
/// generator, computes a Gröbner basis of `t_k - z^u w^v` in an order
/// eliminating `z, w`, and reduces `f`. Returns the rewritten polynomial when
/// the normal form is free of `z, w`.
pub fn rewrite_by_elimination(gens: &GeneratorSet, f: &Polynomial) -> Result<Option<Polynomial>> {
    let nv = 2 * gens.n();
    if !f.ring().same_variables(gens.ambient_ring()) {
        bail!(Argument, "polynomial must live in the ambient ring");
    }
    let mut names: Vec<_> = gens.ambient_ring().names().to_vec();
    let mut weights = vec![1u32; nv];
    for (k, g) in gens.generators().iter().enumerate() {
        names.push(alloc::format!("t{}", k));
        weights.push(g.degree());
    }
    let mask: Vec<bool> = (0..names.len()).map(|i| i < nv).collect();
    let ring = Arc::new(PolyRing::new(names, weights, TermOrder::Elimination(mask))?);
    let total = ring.nvars();
    let tags = gens
        .generators()
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let mut e = g.exponents();
            e.resize(total, 0);
            Polynomial::from_terms(
                &ring,
                vec![(Monomial::var(total, nv + k), GaussRat::one()), (Monomial(e), GaussRat::from_int(-1))],
            )
        })
        .collect();
    let ideal = IdealBasis::new(&ring, tags)?.with_groebner()?;
    let lifted = Polynomial::from_terms(
        &ring,
        f.terms()
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(total, 0);
                (Monomial(e), c.clone())
            })
            .collect(),
    );
    let nf = ideal.normal_form(&lifted)?;
    if nf.terms().iter().any(|(m, _)| m.0[..nv].iter().any(|&x| x > 0)) {
        return Ok(None);
    }
    let terms = nf.terms().iter().map(|(m, c)| (Monomial(m.0[nv..].to_vec()), c.clone())).collect();
    Ok(Some(Polynomial::from_terms(gens.ring(), terms)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Role {
    R(usize),
    P(usize, usize),
    Q(Vec<u32>, bool),
}

/// Bracket of two closed-form Type I generators from the closed-form table:
///
/// - `{r_i, q_s} = 2i m_i q_s`, `{r_i, qbar_s} = -2i m_i qbar_s`;
/// - `{p_{g,h}, p_{i,j}} = -2i δ_{gj} p_{i,h} + 2i δ_{hi} p_{g,j}`;
/// - `{p_{g,h}, q_s} = 2i s_h q_{s+e_g-e_h}`;
/// - `{p_{g,h}, qbar_s} = -2i s_g qbar_{s-e_g+e_h}`;
/// - `{q_s, qbar_t} = -2i q_s qbar_t (Σ_i m_i^2 / r_i + Σ_j s_j t_j / p_{j,j})`,
///   with `q_s qbar_t` expanded into `r` and `p` factors;
///
/// and zero otherwise. `gens` must be [`type1_generators`](super::type1_generators).
pub fn type1_bracket_closed_form(info: &TypeInfo, gens: &GeneratorSet, x: usize, y: usize) -> Result<Polynomial> {
    let (l, k, alpha, m) = require_faithful_type1(info)?;
    let expected = super::type1_generators(info)?;
    if &expected != gens {
        bail!(Argument, "generator set is not the closed-form Type I set");
    }
    let mut roles = Vec::new();
    for i in 0..l {
        roles.push(Role::R(i));
    }
    for g in 0..k {
        for h in 0..k {
            roles.push(Role::P(g, h));
        }
    }
    for bar in [false, true] {
        for s in compositions(alpha, k) {
            roles.push(Role::Q(s, bar));
        }
    }
    let ring = gens.ring();
    let idx = |name: &str| gens.index_of(name).expect("closed-form generator");
    let nv = gens.len();
    let mono = |factors: &[(usize, u32)]| -> Monomial {
        let mut e = vec![0u32; nv];
        for &(i, c) in factors {
            e[i] += c;
        }
        Monomial(e)
    };
    let single = |name: &str, c: GaussRat| Polynomial::term(ring, Monomial::var(nv, idx(name)), c);
    let two_i = |c: i64| &GaussRat::i() * &GaussRat::from_int(2 * c);
    // r^m times the p factors pairing s with t
    let rp = |r_shift: Option<usize>, s: &[u32], t: &[u32]| -> Monomial {
        let mut f: Vec<(usize, u32)> =
            (0..l).map(|i| (idx(&r_name(i)), m[i] - u32::from(r_shift == Some(i)))).collect();
        let gs = s.iter().enumerate().flat_map(|(j, &c)| core::iter::repeat_n(j, c as usize));
        let hs = t.iter().enumerate().flat_map(|(j, &c)| core::iter::repeat_n(j, c as usize));
        f.extend(gs.zip(hs).map(|(g, h)| (idx(&p_name(g, h)), 1)));
        mono(&f)
    };
    let shifted = |s: &[u32], plus: usize, minus: usize| -> Vec<u32> {
        let mut t = s.to_vec();
        t[plus] += 1;
        t[minus] -= 1;
        t
    };

    let table = |a: &Role, b: &Role| -> Option<Polynomial> {
        Some(match (a, b) {
            (Role::R(_), Role::R(_)) | (Role::R(_), Role::P(..)) => Polynomial::zero(ring),
            (Role::R(i), Role::Q(s, bar)) => {
                let sign = if *bar { -1 } else { 1 };
                single(&q_name(s, *bar), two_i(sign * m[*i] as i64))
            }
            (Role::P(g, h), Role::P(i, j)) => {
                let mut acc = Polynomial::zero(ring);
                if g == j {
                    acc = &acc + &single(&p_name(*i, *h), two_i(-1));
                }
                if h == i {
                    acc = &acc + &single(&p_name(*g, *j), two_i(1));
                }
                acc
            }
            (Role::P(g, h), Role::Q(s, false)) => {
                if s[*h] == 0 {
                    Polynomial::zero(ring)
                } else {
                    single(&q_name(&shifted(s, *g, *h), false), two_i(s[*h] as i64))
                }
            }
            (Role::P(g, h), Role::Q(s, true)) => {
                if s[*g] == 0 {
                    Polynomial::zero(ring)
                } else {
                    single(&q_name(&shifted(s, *h, *g), true), two_i(-(s[*g] as i64)))
                }
            }
            (Role::Q(_, a), Role::Q(_, b)) if a == b => Polynomial::zero(ring),
            (Role::Q(s, false), Role::Q(t, true)) => {
                let mut terms = Vec::new();
                for i in 0..l {
                    terms.push((rp(Some(i), s, t), two_i(-((m[i] * m[i]) as i64))));
                }
                for j in 0..k {
                    if s[j] > 0 && t[j] > 0 {
                        let mut s1 = s.clone();
                        let mut t1 = t.clone();
                        s1[j] -= 1;
                        t1[j] -= 1;
                        terms.push((rp(None, &s1, &t1), two_i(-((s[j] * t[j]) as i64))));
                    }
                }
                Polynomial::from_terms(ring, terms)
            }
            _ => return None,
        })
    };
    let (a, b) = (&roles[x], &roles[y]);
    match table(a, b) {
        Some(p) => Ok(p),
        None => Ok(-&table(b, a).expect("bracket table covers one ordering")),
    }
}
