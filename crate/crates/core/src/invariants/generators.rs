use alloc::{format, string::String, vec, vec::Vec};
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Generator, GeneratorSet};
use crate::error::{bail, Result};
use crate::lattice::{monoid_hilbert_basis, IntMatrix};
use crate::weights::{is_faithful_type2, TypeInfo, TypeKind};

/// Hilbert basis of the invariant monomials named `g0, g1, ...`.
pub fn invariant_generators(a: &IntMatrix) -> Result<GeneratorSet> {
    invariant_generators_named(a, "g")
}

/// Hilbert basis of `{(u, v) : A u = A v}`, ordered by degree and then
/// lexicographically descending on `(u, v)`, named `{prefix}0, {prefix}1, ...`.
pub fn invariant_generators_named(a: &IntMatrix, prefix: &str) -> Result<GeneratorSet> {
    let n = a.cols();
    let lifted = a.hstack(&a.neg())?;
    let mut basis = monoid_hilbert_basis(&lifted)?;
    let deg = |x: &[u32]| -> u64 { x.iter().map(|&e| e as u64).sum() };
    basis.sort_by(|x, y| match deg(x).cmp(&deg(y)) {
        Ordering::Equal => y.cmp(x),
        o => o,
    });
    let gens = basis
        .into_iter()
        .enumerate()
        .map(|(i, e)| Generator { name: format!("{}{}", prefix, i), u: e[..n].to_vec(), v: e[n..].to_vec() })
        .collect();
    GeneratorSet::with_diagonal_flags(n, gens)
}

pub(crate) fn to_u32(x: &BigInt, what: &str) -> Result<u32> {
    match x.to_u32() {
        Some(v) => Ok(v),
        None => bail!(Overflow, "{} = {} does not fit in 32 bits", what, x),
    }
}

/// All `s ∈ N^k` with `|s| = total`, lexicographically ascending.
pub(crate) fn compositions(total: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
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
    if k > 0 {
        rec(0, total, &mut cur, &mut out);
    }
    out
}

pub(crate) fn s_label(s: &[u32]) -> String {
    s.iter().map(|x| format!("{}", x)).collect::<Vec<_>>().join("_")
}

pub(crate) fn q_name(s: &[u32], bar: bool) -> String {
    format!("{}{}", if bar { "qbar" } else { "q" }, s_label(s))
}

pub(crate) fn p_name(i: usize, j: usize) -> String {
    format!("p{}_{}", i + 1, j + 1)
}

pub(crate) fn r_name(i: usize) -> String {
    format!("r{}", i + 1)
}

pub(crate) fn require_faithful_type1(info: &TypeInfo) -> Result<(usize, usize, u32, Vec<u32>)> {
    let TypeKind::TypeI(k) = info.kind else {
        bail!(Precondition, "closed-form generators need a Type I matrix");
    };
    if !is_faithful_type2(info)? {
        bail!(Precondition, "the action is not faithful");
    }
    let alpha = to_u32(&info.alpha, "alpha")?;
    let mut m = Vec::with_capacity(info.l());
    for (i, mi) in info.m.iter().enumerate() {
        m.push(to_u32(mi, &format!("m{}", i + 1))?);
    }
    Ok((info.l(), k, alpha, m))
}

/// Closed-form generators of a faithful Type I action:
/// `r_i = z_i w_i`, `p_{i,j} = z_{ℓ+i} w_{ℓ+j}`,
/// `q_s = Π z_i^{m_i} Π z_{ℓ+j}^{s_j}` and `qbar_s` its conjugate, `|s| = α`.
///
/// Names are `r1`, `p1_2`, `q2_0`, `qbar2_0` (indices one-based, `s`
/// joined by underscores). The `q_s` follow lexicographic order on `s`.
pub fn type1_generators(info: &TypeInfo) -> Result<GeneratorSet> {
    let (l, k, alpha, m) = require_faithful_type1(info)?;
    let n = l + k;
    let mut gens = Vec::new();
    let mut flags = Vec::new();
    for i in 0..l {
        let mut e = vec![0u32; n];
        e[i] = 1;
        gens.push(Generator { name: r_name(i), u: e.clone(), v: e });
        flags.push(true);
    }
    for i in 0..k {
        for j in 0..k {
            let mut u = vec![0u32; n];
            let mut v = vec![0u32; n];
            u[l + i] = 1;
            v[l + j] = 1;
            gens.push(Generator { name: p_name(i, j), u, v });
            flags.push(i == j);
        }
    }
    let ss = compositions(alpha, k);
    for bar in [false, true] {
        for s in &ss {
            let mut e = m.clone();
            e.extend_from_slice(s);
            let zero = vec![0u32; n];
            let (u, v) = if bar { (zero, e) } else { (e, zero) };
            gens.push(Generator { name: q_name(s, bar), u, v });
            flags.push(false);
        }
    }
    GeneratorSet::new(n, gens, flags)
}
