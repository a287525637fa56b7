use alloc::{string::String, vec, vec::Vec};

use num_traits::ToPrimitive;
use rand_core::RngCore;

use super::generators::{p_name, q_name, r_name, require_faithful_type1};
use super::GeneratorSet;
use crate::error::{bail, Result};
use crate::lattice::{monoid_hilbert_basis, IntMatrix};
use crate::poly::cmul;
use crate::weights::TypeInfo;

/// `generator ≥ 0` on the image of the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub generator: usize,
    pub name: String,
}

/// Nonnegativity of `r_i` and `p_{j,j}` for the closed-form Type I generators.
pub fn semialgebraic_description(info: &TypeInfo) -> Result<Vec<Inequality>> {
    let gens = super::type1_generators(info)?;
    Ok(gens
        .nonneg()
        .iter()
        .enumerate()
        .filter(|(_, &f)| f)
        .map(|(i, _)| Inequality { generator: i, name: gens.get(i).name.clone() })
        .collect())
}

fn cpow(mut a: (f64, f64), mut e: u32) -> (f64, f64) {
    let mut acc = (1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc = cmul(acc, a);
        }
        a = cmul(a, a);
        e >>= 1;
    }
    acc
}

fn abs(a: (f64, f64)) -> f64 {
    libm::hypot(a.0, a.1)
}

/// Values of the generators at `z` with `w = conj(z)`.
pub fn evaluate_generators(gens: &GeneratorSet, z: &[(f64, f64)]) -> Vec<(f64, f64)> {
    gens.generators()
        .iter()
        .map(|g| {
            let mut acc = (1.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                acc = cmul(acc, cpow(zj, g.u[j]));
                acc = cmul(acc, cpow((zj.0, -zj.1), g.v[j]));
            }
            acc
        })
        .collect()
}

/// Squared moduli `|z_j|^2` of a random integral point on the zero level:
/// a random nonnegative combination of the Hilbert basis of `{x ≥ 0 : A x = 0}`.
pub fn sample_shell_moduli<R: RngCore>(a: &IntMatrix, rng: &mut R) -> Result<Vec<u64>> {
    let basis = monoid_hilbert_basis(a)?;
    let mut x = vec![0u64; a.cols()];
    if basis.is_empty() {
        return Ok(x);
    }
    let mut any = false;
    for (idx, h) in basis.iter().enumerate() {
        let mut c = rng.next_u32() as u64 % 4;
        if idx + 1 == basis.len() && !any && c == 0 {
            c = 1;
        }
        any |= c > 0;
        for (xj, &hj) in x.iter_mut().zip(h) {
            *xj += c * hj as u64;
        }
    }
    Ok(x)
}

/// A random point on the zero level of the moment map with random phases.
pub fn sample_shell_point<R: RngCore>(a: &IntMatrix, rng: &mut R) -> Result<Vec<(f64, f64)>> {
    let x = sample_shell_moduli(a, rng)?;
    Ok(x.iter()
        .map(|&xj| {
            let r = libm::sqrt(xj as f64);
            let theta = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * core::f64::consts::TAU;
            (r * libm::cos(theta), r * libm::sin(theta))
        })
        .collect())
}

/// A point on the zero level whose closed-form generator values match
/// `values` (one complex value per generator of
/// [`type1_generators`](super::type1_generators)) within relative
/// tolerance `tol`. Fails naming the first violated relation.
///
/// The first `ℓ` coordinates are taken real and nonnegative; the block
/// coordinates get moduli `sqrt(p_{j,j})` and phases fixed by `q` along the
/// largest diagonal and by the off-diagonal `p`.
pub fn reconstruct_point(info: &TypeInfo, values: &[(f64, f64)], tol: f64) -> Result<Vec<(f64, f64)>> {
    let gens = super::type1_generators(info)?;
    let (l, k, alpha, _) = require_faithful_type1(info)?;
    if values.len() != gens.len() {
        bail!(Argument, "expected {} generator values, got {}", gens.len(), values.len());
    }
    let val = |name: &str| values[gens.index_of(name).expect("closed-form generator")];
    let to_f = |x: &num_bigint::BigInt| x.to_f64().unwrap_or(f64::INFINITY);

    let diag: Vec<f64> = (0..k).map(|j| val(&p_name(j, j)).0).collect();
    let rs: Vec<f64> = (0..l).map(|i| val(&r_name(i)).0).collect();
    let scale = diag.iter().chain(&rs).map(|x| x.abs()).sum::<f64>();
    let close = |a: (f64, f64), b: (f64, f64), s: f64| {
        abs((a.0 - b.0, a.1 - b.1)) <= tol * s.max(abs(a)).max(abs(b)).max(f64::MIN_POSITIVE)
    };

    for (name, v) in (0..l).map(r_name).chain((0..k).map(|j| p_name(j, j))).map(|n| (n.clone(), val(&n))) {
        if v.1.abs() > tol * scale.max(f64::MIN_POSITIVE) || v.0 < -tol * scale {
            bail!(Reconstruction, "{} must be real and nonnegative", name);
        }
    }
    for g in 0..k {
        for h in 0..k {
            if g == h {
                continue;
            }
            let (a, b) = (val(&p_name(g, h)), val(&p_name(h, g)));
            if !close(a, (b.0, -b.1), scale) {
                bail!(Reconstruction, "violates {} = conj({})", p_name(g, h), p_name(h, g));
            }
            if g < h && !close((a.0 * a.0 + a.1 * a.1, 0.0), (diag[g] * diag[h], 0.0), scale * scale) {
                bail!(Reconstruction, "violates {}*{} = {}*{}", p_name(g, h), p_name(h, g), p_name(g, g), p_name(h, h));
            }
        }
    }
    let total: f64 = diag.iter().map(|x| x.max(0.0)).sum();
    let mut z = vec![(0.0, 0.0); l + k];
    for i in 0..l {
        let expected = to_f(&info.n[i]) * total / to_f(&info.a[i]);
        if !close((rs[i], 0.0), (expected, 0.0), scale) {
            bail!(
                Reconstruction,
                "violates moment relation {}: {}*{} = {}*(sum of p_j_j)",
                i + 1,
                info.a[i],
                r_name(i),
                info.n[i]
            );
        }
        z[i] = (libm::sqrt(expected), 0.0);
    }
    if total > 0.0 {
        let j0 = (0..k).max_by(|&a, &b| diag[a].total_cmp(&diag[b])).unwrap();
        let mut s0 = vec![0u32; k];
        s0[j0] = alpha;
        let q0 = val(&q_name(&s0, false));
        let theta0 = libm::atan2(q0.1, q0.0) / alpha as f64;
        for j in 0..k {
            let rho = libm::sqrt(diag[j].max(0.0));
            let theta = if j == j0 {
                theta0
            } else {
                let p = val(&p_name(j, j0));
                theta0 + libm::atan2(p.1, p.0)
            };
            z[l + j] = (rho * libm::cos(theta), rho * libm::sin(theta));
        }
    }
    let computed = evaluate_generators(&gens, &z);
    let sz = total + rs.iter().sum::<f64>();
    for (i, g) in gens.generators().iter().enumerate() {
        let s = libm::pow(sz, g.degree() as f64 / 2.0);
        if !close(values[i], computed[i], s) {
            let kind = if g.degree() > 2 { "the q relations" } else { "the quadratic relations" };
            bail!(Reconstruction, "value of {} is inconsistent with {}", g.name, kind);
        }
    }
    Ok(z)
}
