//! Buchberger specialized to pure binomials `x^a - x^b`, and lattice-ideal
//! saturation for toric ideals.

use alloc::{collections::BTreeMap, vec, vec::Vec};
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::monomial::grevlex_cmp;
use super::pairs::PairQueue;
use crate::error::{bail, Result};
use crate::lattice::IntMatrix;

/// `x^lead - x^tail` with `lead > tail`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    pub lead: Vec<u32>,
    pub tail: Vec<u32>,
}

type Cmp<'a> = &'a dyn Fn(&[u32], &[u32]) -> Ordering;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Orients `x^u - x^v`; `None` when `u == v`.
pub fn orient(u: Vec<u32>, v: Vec<u32>, cmp: Cmp) -> Option<Binomial> {
    match cmp(&u, &v) {
        Ordering::Greater => Some(Binomial { lead: u, tail: v }),
        Ordering::Less => Some(Binomial { lead: v, tail: u }),
        Ordering::Equal => None,
    }
}

/// Rewrites a monomial to its normal form.
pub fn reduce_monomial(u: &[u32], basis: &[Binomial]) -> Vec<u32> {
    let mut u = u.to_vec();
    'outer: loop {
        for b in basis {
            if divides(&b.lead, &u) {
                for k in 0..u.len() {
                    u[k] = u[k] - b.lead[k] + b.tail[k];
                }
                continue 'outer;
            }
        }
        return u;
    }
}

fn s_pair(f: &Binomial, g: &Binomial) -> (Vec<u32>, Vec<u32>) {
    let l = lcm(&f.lead, &g.lead);
    let a: Vec<u32> = l.iter().zip(&f.lead).zip(&f.tail).map(|((l, a), b)| l - a + b).collect();
    let b: Vec<u32> = l.iter().zip(&g.lead).zip(&g.tail).map(|((l, a), b)| l - a + b).collect();
    (a, b)
}

/// Reduced Gröbner basis of a pure binomial ideal under `cmp`.
pub fn binomial_groebner(gens: &[(Vec<u32>, Vec<u32>)], cmp: Cmp) -> Vec<Binomial> {
    let mut basis: Vec<Binomial> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut leads: Vec<Vec<u32>> = Vec::new();
    let mut reducers: Vec<Binomial> = Vec::new();
    let mut queue = PairQueue::new(cmp);
    let add = |b: Binomial,
               basis: &mut Vec<Binomial>,
               active: &mut Vec<bool>,
               leads: &mut Vec<Vec<u32>>,
               reducers: &mut Vec<Binomial>,
               queue: &mut PairQueue| {
        leads.push(b.lead.clone());
        basis.push(b);
        active.push(true);
        queue.update(leads, active, basis.len() - 1);
        if active.iter().filter(|&&a| a).count() == reducers.len() + 1 {
            reducers.push(basis.last().unwrap().clone());
        } else {
            *reducers = basis.iter().zip(active.iter()).filter(|(_, &a)| a).map(|(b, _)| b.clone()).collect();
        }
    };
    let mut input: Vec<Binomial> = gens.iter().filter_map(|(u, v)| orient(u.clone(), v.clone(), cmp)).collect();
    input.sort_by(|a, b| cmp(&a.lead, &b.lead));
    for b in input {
        let u = reduce_monomial(&b.lead, &reducers);
        let v = reduce_monomial(&b.tail, &reducers);
        if let Some(b) = orient(u, v, cmp) {
            add(b, &mut basis, &mut active, &mut leads, &mut reducers, &mut queue);
        }
    }
    while let Some(p) = queue.pop() {
        let (a, b) = s_pair(&basis[p.i], &basis[p.j]);
        let a = reduce_monomial(&a, &reducers);
        let b = reduce_monomial(&b, &reducers);
        if let Some(h) = orient(a, b, cmp) {
            add(h, &mut basis, &mut active, &mut leads, &mut reducers, &mut queue);
        }
    }
    reduce_basis(reducers, cmp)
}

fn reduce_basis(basis: Vec<Binomial>, cmp: Cmp) -> Vec<Binomial> {
    let mut minimal: Vec<Binomial> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| cmp(&a.lead, &b.lead));
    for b in sorted {
        if !minimal.iter().any(|m| divides(&m.lead, &b.lead)) {
            minimal.push(b);
        }
    }
    let mut out: Vec<Binomial> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Binomial> =
            minimal.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, b)| b.clone()).collect();
        let tail = reduce_monomial(&minimal[k].tail, &others);
        out.push(Binomial { lead: minimal[k].lead.clone(), tail });
    }
    out.sort_by(|a, b| cmp(&b.lead, &a.lead));
    out
}

/// `x^u - x^v` lies in the ideal with binomial Gröbner basis `basis`.
pub fn binomial_member(u: &[u32], v: &[u32], basis: &[Binomial]) -> bool {
    reduce_monomial(u, basis) == reduce_monomial(v, basis)
}

/// Binomials `x^{k+} - x^{k-}` for integer vectors `k`.
pub fn lattice_binomials(vectors: &[Vec<BigInt>]) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
    let conv = |x: &BigInt| -> Result<u32> {
        match x.abs().to_u32() {
            Some(v) => Ok(v),
            None => bail!(Overflow, "lattice entry {} exceeds exponent range", x),
        }
    };
    let mut out = Vec::with_capacity(vectors.len());
    for k in vectors {
        let mut pos = vec![0u32; k.len()];
        let mut neg = vec![0u32; k.len()];
        for (i, x) in k.iter().enumerate() {
            if x.is_positive() {
                pos[i] = conv(x)?;
            } else if x.is_negative() {
                neg[i] = conv(x)?;
            }
        }
        out.push((pos, neg));
    }
    Ok(out)
}

/// Toric ideal of the monomial map `y_k ↦ x^{gens[k]}` as a reduced binomial
/// Gröbner basis for weighted grevlex with `weights`.
///
/// Starts from a lattice basis of the kernel of the exponent map and
/// saturates by each variable in turn: with that variable last in a weighted
/// grevlex order, dividing every basis element by its largest power of that
/// variable yields generators of the saturation. `weights` must make the
/// ideal homogeneous (for example, the total degrees of `gens`).
pub fn toric_ideal(gens: &[Vec<u32>], weights: &[u32]) -> Result<Vec<Binomial>> {
    let k = gens.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    if weights.len() != k || weights.contains(&0) {
        bail!(Argument, "toric ideal needs one positive weight per generator");
    }
    let dim = gens[0].len();
    let cols: Vec<Vec<i64>> = (0..dim).map(|r| gens.iter().map(|g| g[r] as i64).collect()).collect();
    let m = IntMatrix::from_rows(&cols)?;
    let kernel = m.integer_kernel_basis();
    let mut current = lattice_binomials(&kernel)?;
    if current.is_empty() {
        return Ok(Vec::new());
    }
    for j in 0..k {
        // order with j last
        let perm: Vec<usize> = (0..k).filter(|&i| i != j).chain(core::iter::once(j)).collect();
        let pw: Vec<u32> = perm.iter().map(|&i| weights[i]).collect();
        let permute = |x: &[u32]| -> Vec<u32> { perm.iter().map(|&i| x[i]).collect() };
        let cmp = |a: &[u32], b: &[u32]| grevlex_cmp(&pw, a, b);
        let permuted: Vec<(Vec<u32>, Vec<u32>)> = current.iter().map(|(a, b)| (permute(a), permute(b))).collect();
        let gb = binomial_groebner(&permuted, &cmp);
        current = gb
            .into_iter()
            .map(|b| {
                let mut lead = vec![0u32; k];
                let mut tail = vec![0u32; k];
                for (pos, &i) in perm.iter().enumerate() {
                    lead[i] = b.lead[pos];
                    tail[i] = b.tail[pos];
                }
                let c = lead[j].min(tail[j]);
                lead[j] -= c;
                tail[j] -= c;
                (lead, tail)
            })
            .collect();
    }
    let cmp = |a: &[u32], b: &[u32]| grevlex_cmp(weights, a, b);
    Ok(binomial_groebner(&current, &cmp))
}

/// Minimal generators of a homogeneous binomial ideal given by a Gröbner
/// basis. Degree by degree, two monomials are identified when their normal
/// forms modulo the lower-degree generators agree or are joined by an
/// already kept binomial of the current degree; a binomial is kept when it
/// joins two separate classes.
pub fn minimal_generators(basis: &[Binomial], weights: &[u32]) -> Vec<Binomial> {
    let deg = |x: &[u32]| -> u64 { x.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum() };
    let cmp = |a: &[u32], b: &[u32]| grevlex_cmp(weights, a, b);
    let mut sorted: Vec<Binomial> = basis.to_vec();
    sorted.sort_by(|a, b| deg(&a.lead).cmp(&deg(&b.lead)).then_with(|| cmp(&a.lead, &b.lead)));
    let mut kept: Vec<Binomial> = Vec::new();
    let mut start = 0;
    while start < sorted.len() {
        let d = deg(&sorted[start].lead);
        let end = start + sorted[start..].iter().take_while(|b| deg(&b.lead) == d).count();
        let pairs: Vec<(Vec<u32>, Vec<u32>)> = kept.iter().map(|b| (b.lead.clone(), b.tail.clone())).collect();
        let lower = binomial_groebner(&pairs, &cmp);
        let mut classes: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        let mut parent: Vec<usize> = Vec::new();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut class_of = |m: Vec<u32>, parent: &mut Vec<usize>| -> usize {
            let next = parent.len();
            let id = *classes.entry(m).or_insert(next);
            if id == next {
                parent.push(next);
            }
            id
        };
        for b in &sorted[start..end] {
            let x = class_of(reduce_monomial(&b.lead, &lower), &mut parent);
            let y = class_of(reduce_monomial(&b.tail, &lower), &mut parent);
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx] = ry;
                kept.push(b.clone());
            }
        }
        start = end;
    }
    kept
}
