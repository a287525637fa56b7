//! Weight-matrix analysis: block-type detection, faithfulness, reduction of
//! Type II_k matrices to a single row, the shell-preserving embedding, and
//! cotangent-lift equivalence.

mod detect;
mod lift;

pub use detect::{assemble, detect_type, detect_type_with, Factorization, TypeInfo, TypeKind};
pub use lift::{cotangent_lift_equivalent, lift_permutation_from_transpositions};

use alloc::{vec, vec::Vec};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{bail, Result};
use crate::lattice::IntMatrix;
use crate::poly::{Coefficient, GaussRat};

/// Faithfulness via the gcd of the maximal minors.
pub fn is_faithful(a: &IntMatrix) -> Result<bool> {
    Ok(a.maximal_minor_gcd()?.is_one())
}

/// Faithfulness of a block-form matrix from its data alone: pairwise
/// coprime `a`, and for each `j` some `r` with `gcd(a_j, c_r n_j) = 1`.
pub fn is_faithful_type2(info: &TypeInfo) -> Result<bool> {
    if info.kind == TypeKind::General {
        bail!(Argument, "faithfulness criterion needs a block-form matrix");
    }
    let l = info.a.len();
    for i in 0..l {
        for j in i + 1..l {
            if !info.a[i].gcd(&info.a[j]).is_one() {
                return Ok(false);
            }
        }
    }
    for j in 0..l {
        if !info.c.iter().any(|c| info.a[j].gcd(&(c * &info.n[j])).is_one()) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_faithful(info: &TypeInfo) -> Result<()> {
    if !is_faithful_type2(info)? {
        bail!(Precondition, "weight matrix is not faithful");
    }
    Ok(())
}

/// The single-row matrix `(-α, c_1 β, …, c_k β)`.
pub fn reduce_to_circle(info: &TypeInfo) -> Result<IntMatrix> {
    require_faithful(info)?;
    let mut row = vec![-info.alpha.clone()];
    row.extend(info.c.iter().map(|c| c * &info.beta));
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_one() {
        bail!(Internal, "reduced row has content {}", g);
    }
    IntMatrix::row_vector(&row)
}

/// Linear map from the `k+1` circle coordinates into the `ℓ+k` coordinates:
/// each of the first `ℓ` targets is `√(m_i/β)` times the first source
/// coordinate, the rest are the remaining source coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingMap {
    pub source_dim: usize,
    pub target_dim: usize,
    /// `(source index, coefficient)` per target coordinate.
    pub assignments: Vec<(usize, Coefficient)>,
}

impl EmbeddingMap {
    /// Sum of the squared coefficients on the first source coordinate.
    pub fn squared_weight_on(&self, source: usize) -> GaussRat {
        self.assignments.iter().filter(|(s, _)| *s == source).fold(GaussRat::zero(), |acc, (_, c)| &acc + &c.square())
    }
}

pub fn embedding_map(info: &TypeInfo) -> Result<EmbeddingMap> {
    require_faithful(info)?;
    let l = info.a.len();
    let k = info.c.len();
    if k == 0 {
        bail!(Argument, "embedding needs at least one block column");
    }
    let mut assignments = Vec::with_capacity(l + k);
    for i in 0..l {
        let r = BigRational::new(info.m[i].clone(), info.beta.clone());
        assignments.push((0, Coefficient::sqrt(&r)?));
    }
    for j in 0..k {
        assignments.push((j + 1, Coefficient::one()));
    }
    Ok(EmbeddingMap { source_dim: k + 1, target_dim: l + k, assignments })
}

/// Invariants that decide graded regular symplectomorphism for Type I_k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKey {
    /// One block column: the class is determined by `η = α + β`.
    Eta(BigInt),
    /// Two or more block columns: `(k, α, β)`.
    Triple(usize, BigInt, BigInt),
}

/// Classification key for faithful Type I_k data.
pub fn classify(info: &TypeInfo) -> Result<ClassKey> {
    match info.kind {
        TypeKind::TypeI(_) => {}
        _ => bail!(Precondition, "classification is only known for Type I_k"),
    }
    require_faithful(info)?;
    let k = info.c.len();
    Ok(if k == 1 {
        ClassKey::Eta(info.eta.clone())
    } else {
        ClassKey::Triple(k, info.alpha.clone(), info.beta.clone())
    })
}
