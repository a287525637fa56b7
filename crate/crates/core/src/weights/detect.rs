use alloc::{vec, vec::Vec};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{bail, Result};
use crate::lattice::{gcd_lcm, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeKind {
    /// `[D | n … n]` with `k` copies of `n`.
    TypeI(usize),
    /// `[D | c_1 n … c_k n]` with some `c_r > 1`.
    TypeII(usize),
    General,
}

/// One way of writing the block columns as `c_r · n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub n: Vec<BigInt>,
    pub c: Vec<BigInt>,
}

/// Block structure `[D | c_1 n … c_k n]` and the derived invariants.
///
/// For `General` matrices the numeric fields are empty or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeInfo {
    pub kind: TypeKind,
    pub a: Vec<BigInt>,
    pub n: Vec<BigInt>,
    pub c: Vec<BigInt>,
    pub alpha: BigInt,
    pub m: Vec<BigInt>,
    pub beta: BigInt,
    pub eta: BigInt,
    /// Every factorization of the block columns, canonical one included.
    pub alternatives: Vec<Factorization>,
    /// Column order that produced the block form, when a search was needed.
    pub column_order: Option<Vec<usize>>,
}

impl TypeInfo {
    fn general() -> Self {
        TypeInfo {
            kind: TypeKind::General,
            a: Vec::new(),
            n: Vec::new(),
            c: Vec::new(),
            alpha: BigInt::zero(),
            m: Vec::new(),
            beta: BigInt::zero(),
            eta: BigInt::zero(),
            alternatives: Vec::new(),
            column_order: None,
        }
    }

    /// Derives `α, m, β, η` and the kind from `(a, n, c)`.
    pub fn from_parts(a: Vec<BigInt>, n: Vec<BigInt>, c: Vec<BigInt>) -> Result<Self> {
        if a.is_empty() || a.len() != n.len() || c.is_empty() {
            bail!(Argument, "need ℓ ≥ 1 diagonal entries, matching n, and k ≥ 1 multipliers");
        }
        if a.iter().chain(&n).chain(&c).any(|x| !x.is_positive()) {
            bail!(Argument, "a, n and c must be positive");
        }
        let (_, alpha) = gcd_lcm(&a)?;
        let m: Vec<BigInt> = a.iter().zip(&n).map(|(ai, ni)| ni * &alpha / ai).collect();
        let beta: BigInt = m.iter().sum();
        let eta = &alpha + &beta;
        let kind = if c.iter().all(|x| x.is_one()) { TypeKind::TypeI(c.len()) } else { TypeKind::TypeII(c.len()) };
        let alternatives = factorizations(&n, &c);
        Ok(TypeInfo { kind, a, n, c, alpha, m, beta, eta, alternatives, column_order: None })
    }

    pub fn l(&self) -> usize {
        self.a.len()
    }

    pub fn k(&self) -> usize {
        self.c.len()
    }
}

fn divisors(x: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *x {
        if (x % &d).is_zero() {
            out.push(d.clone());
            let e = x / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// All `(e·n, c/e)` for divisors `e` of `gcd(c)`, smallest `n` first.
fn factorizations(n: &[BigInt], c: &[BigInt]) -> Vec<Factorization> {
    let g = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let gn = n.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    // reduce to primitive n first, then spread the total content
    let total = &g * &gn;
    let np: Vec<BigInt> = n.iter().map(|x| x / &gn).collect();
    let cp: Vec<BigInt> = c.iter().map(|x| x / &g).collect();
    divisors(&total)
        .into_iter()
        .map(|e| Factorization {
            n: np.iter().map(|x| x * &e).collect(),
            c: cp.iter().map(|x| x * (&total / &e)).collect(),
        })
        .collect()
}

/// Reassembles `[D | c_1 n … c_k n]`.
pub fn assemble(info: &TypeInfo) -> Result<IntMatrix> {
    if info.kind == TypeKind::General {
        bail!(Argument, "cannot assemble a general matrix from block data");
    }
    let l = info.a.len();
    let k = info.c.len();
    let mut rows = vec![vec![BigInt::zero(); l + k]; l];
    for i in 0..l {
        rows[i][i] = -info.a[i].clone();
        for r in 0..k {
            rows[i][l + r] = &info.c[r] * &info.n[i];
        }
    }
    let m = IntMatrix::from_rows(&rows)?;
    match &info.column_order {
        None => Ok(m),
        Some(order) => {
            // order[j] is the original column placed at position j
            let mut inv = vec![0; order.len()];
            for (j, &o) in order.iter().enumerate() {
                inv[o] = j;
            }
            Ok(m.permute_cols(&inv))
        }
    }
}

fn literal(a: &IntMatrix) -> Option<TypeInfo> {
    let l = a.rows();
    let cols = a.cols();
    if cols <= l {
        return None;
    }
    let k = cols - l;
    let mut diag = Vec::with_capacity(l);
    for i in 0..l {
        for j in 0..l {
            let v = a.get(i, j);
            if i == j {
                if !v.is_negative() {
                    return None;
                }
                diag.push(-v.clone());
            } else if !v.is_zero() {
                return None;
            }
        }
    }
    let blocks: Vec<Vec<BigInt>> = (0..k).map(|r| a.column(l + r)).collect();
    if blocks.iter().flatten().any(|v| !v.is_positive()) {
        return None;
    }
    let contents: Vec<BigInt> = blocks.iter().map(|b| b.iter().fold(BigInt::zero(), |g, x| g.gcd(x))).collect();
    let prim: Vec<BigInt> = blocks[0].iter().map(|x| x / &contents[0]).collect();
    for (b, g) in blocks.iter().zip(&contents) {
        if b.iter().zip(&prim).any(|(x, p)| x != &(p * g)) {
            return None;
        }
    }
    // canonical: c primitive, content of the block columns kept in n
    let cg = contents.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let n: Vec<BigInt> = prim.iter().map(|p| p * &cg).collect();
    let c: Vec<BigInt> = contents.iter().map(|x| x / &cg).collect();
    TypeInfo::from_parts(diag, n, c).ok()
}

/// Detects the block form without reordering columns.
pub fn detect_type(a: &IntMatrix) -> Result<TypeInfo> {
    detect_type_with(a, false)
}

/// Detects the block form; with `search_permutations`, also tries every
/// column order (at most 8 columns).
pub fn detect_type_with(a: &IntMatrix, search_permutations: bool) -> Result<TypeInfo> {
    if a.rank() < a.rows() {
        bail!(Argument, "weight matrix does not have full row rank");
    }
    if let Some(info) = literal(a) {
        return Ok(info);
    }
    if !search_permutations {
        return Ok(TypeInfo::general());
    }
    let n = a.cols();
    if n > 8 {
        bail!(Precondition, "column permutation search is limited to 8 columns");
    }
    let mut perm: Vec<usize> = (0..n).collect();
    while next_permutation(&mut perm) {
        if let Some(mut info) = literal(&a.permute_cols(&perm)) {
            info.column_order = Some(perm);
            return Ok(info);
        }
    }
    Ok(TypeInfo::general())
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
