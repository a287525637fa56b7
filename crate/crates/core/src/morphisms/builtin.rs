use alloc::{vec, vec::Vec};

use num_rational::BigRational;

use super::{Codomain, GradedMonomialMap};
use crate::error::{bail, Result};
use crate::invariants::{
    ambient_ring, invariant_generators, invariant_generators_named, moment_forms, onshell, toric_relations,
    type1_generators, GeneratorSet, PresentationIdeal, Shell,
};
use crate::lattice::IntMatrix;
use crate::poly::{parse_polynomial, Coefficient, GaussRat, IdealBasis, Monomial, RadicalPolynomial};
use crate::weights::{assemble, embedding_map, TypeInfo, TypeKind};

/// Maps with a closed form.
#[derive(Clone, Copy, Debug)]
pub enum Builtin<'a> {
    /// Closed-form Type I_k generators into the ambient ring of the circle
    /// action `(-α, β, …, β)`.
    TypeOneToCircle(&'a TypeInfo),
    /// Hilbert basis of a Type II_k action pulled back along the shell
    /// embedding of its circle reduction.
    ShellEmbedding(&'a TypeInfo),
    /// Real graded isomorphism from the `(-2,3,6)` quotient to the `(-3,2,6)` one.
    CounterexampleReal,
    /// Complex Poisson isomorphism from the `(-3,2,6)` quotient to the `(-2,3,6)` one.
    CounterexampleComplex,
}

pub fn builtin_map(which: Builtin<'_>) -> Result<GradedMonomialMap> {
    match which {
        Builtin::TypeOneToCircle(info) => {
            if !matches!(info.kind, TypeKind::TypeI(_)) {
                bail!(Argument, "the circle map needs a Type I_k matrix");
            }
            pullback(info, type1_generators(info)?)
        }
        Builtin::ShellEmbedding(info) => {
            if info.kind == TypeKind::General {
                bail!(Argument, "the shell embedding needs a Type I_k or Type II_k matrix");
            }
            let mut block = info.clone();
            block.column_order = None;
            pullback(info, invariant_generators(&assemble(&block)?)?)
        }
        Builtin::CounterexampleReal => {
            let ex = counterexample()?;
            GradedMonomialMap::from_assignments(
                ex.source.clone(),
                Codomain::Generators(ex.target.clone()),
                &[
                    ("p1", "q1 + 3*q2"),
                    ("p2", "-3/2*q2"),
                    ("p3", "q4"),
                    ("p4", "-27/8*q3"),
                    ("p5", "q6"),
                    ("p6", "-81/16*q5"),
                    ("p7", "-2/3*q8"),
                    ("p8", "-729/64*q7"),
                ],
                Some(&ex.source_matrix),
            )
        }
        Builtin::CounterexampleComplex => {
            let ex = counterexample()?;
            GradedMonomialMap::from_assignments(
                ex.target.clone(),
                Codomain::Generators(ex.source.clone()),
                &[
                    ("q0", "-p1"),
                    ("q1", "-p0"),
                    ("q2", "p2"),
                    ("q3", "-p4"),
                    ("q4", "-p3"),
                    ("q5", "-i*p6"),
                    ("q6", "-i*p5"),
                    ("q7", "i*p8"),
                    ("q8", "i*p7"),
                ],
                None,
            )
        }
    }
}

/// Substitutes `u_t = c_t z_{s(t)}`, `v_t = c_t w_{s(t)}` into each generator.
fn pullback(info: &TypeInfo, source: GeneratorSet) -> Result<GradedMonomialMap> {
    let emb = embedding_map(info)?;
    let target_n = emb.source_dim;
    let ring = ambient_ring(target_n);
    let mut images = Vec::with_capacity(source.len());
    for g in source.generators() {
        let mut exps = vec![0u32; 2 * target_n];
        let mut square = BigRational::from_integer(1.into());
        for (t, (s, c)) in emb.assignments.iter().enumerate() {
            exps[*s] += g.u[t];
            exps[target_n + *s] += g.v[t];
            let sq = c.square();
            for _ in 0..g.u[t] + g.v[t] {
                square *= &sq.re;
            }
        }
        let coeff = Coefficient::sqrt(&square)?;
        images.push(RadicalPolynomial::term(&ring, Monomial(exps), coeff));
    }
    GradedMonomialMap::new(source, Codomain::Ambient(target_n), images)
}

/// The moment map components of `a`, doubled, in `z, w`.
pub fn ambient_shell_ideal(a: &IntMatrix) -> Result<IdealBasis> {
    let ring = ambient_ring(a.cols());
    let two = GaussRat::from_int(2);
    let gens = moment_forms(a).iter().map(|f| f.to_ambient().in_ring(&ring).scale(&two)).collect();
    IdealBasis::new(&ring, gens)?.with_groebner()
}

/// The pair `(-2,3,6)` and `(-3,2,6)`: equal Hilbert series, complex Poisson
/// isomorphic, real graded isomorphic, yet no real isomorphism respects the
/// inequalities.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub source_matrix: IntMatrix,
    pub target_matrix: IntMatrix,
    /// Generators `p0..p8` of the first action.
    pub source: GeneratorSet,
    /// Generators `q0..q8` of the second action.
    pub target: GeneratorSet,
}

pub fn counterexample() -> Result<Counterexample> {
    let source_matrix = IntMatrix::row_vector(&[-2i64, 3, 6])?;
    let target_matrix = IntMatrix::row_vector(&[-3i64, 2, 6])?;
    let source = invariant_generators_named(&source_matrix, "p")?;
    let target = invariant_generators_named(&target_matrix, "q")?;
    Ok(Counterexample { source_matrix, target_matrix, source, target })
}

impl Counterexample {
    pub fn onshell_source(&self) -> Result<PresentationIdeal> {
        onshell(&toric_relations(&self.source)?, &self.source_matrix)?.prepared()
    }

    pub fn onshell_target(&self) -> Result<PresentationIdeal> {
        onshell(&toric_relations(&self.target)?, &self.target_matrix)?.prepared()
    }

    /// The published fifteen relations among `p0..p8`.
    pub fn listed_source(&self) -> Result<PresentationIdeal> {
        listed(&self.source, &COUNTEREXAMPLE_SOURCE_RELATIONS)
    }

    /// The published fifteen relations among `q0..q8`.
    pub fn listed_target(&self) -> Result<PresentationIdeal> {
        listed(&self.target, &COUNTEREXAMPLE_TARGET_RELATIONS)
    }
}

fn listed(gens: &GeneratorSet, text: &[&str]) -> Result<PresentationIdeal> {
    let rels = text.iter().map(|s| parse_polynomial(gens.ring(), s)).collect::<Result<Vec<_>>>()?;
    PresentationIdeal::new(gens.clone(), rels, Shell::On)?.prepared()
}

pub const COUNTEREXAMPLE_SOURCE_RELATIONS: [&str; 15] = [
    "2*p0 - 3*p1 - 6*p2",
    "p1^2*p2 - p4*p3",
    "p4*p6 - p2*p8",
    "p3*p5 - p2*p7",
    "p1^2*p6 - p3*p8",
    "p1^2*p5 - p4*p7",
    "324*p1*p2^3 + 216*p2^4 + 27*p1*p4*p3 + 162*p2*p4*p3 - 8*p5*p6",
    "27*p1^3*p3 + 324*p1*p2^2*p3 + 216*p2^3*p3 + 162*p4*p3^2 - 8*p6*p7",
    "27*p1^3*p4 + 324*p1*p2^2*p4 + 216*p2^3*p4 + 162*p4^2*p3 - 8*p5*p8",
    "432*p2^5 - 81*p1^2*p4*p3 - 432*p1*p2*p4*p3 - 648*p2^2*p4*p3 + 24*p1*p5*p6 - 16*p2*p5*p6",
    "27*p1^5 + 162*p1^2*p4*p3 + 324*p1*p2*p4*p3 + 216*p2^2*p4*p3 - 8*p7*p8",
    "324*p1*p2^2*p3*p6 + 216*p2^3*p3*p6 - 8*p6^2*p7 + 27*p1*p3^2*p8 + 162*p2*p3^2*p8",
    "324*p1*p2^2*p4*p5 + 216*p2^3*p4*p5 + 27*p1*p4^2*p7 + 162*p2*p4^2*p7 - 8*p5^2*p8",
    "432*p2^4*p3*p6 + 24*p1*p6^2*p7 - 16*p2*p6^2*p7 - 81*p1^2*p3^2*p8 - 432*p1*p2*p3^2*p8 - 648*p2^2*p3^2*p8",
    "432*p2^4*p4*p5 - 81*p1^2*p4^2*p7 - 432*p1*p2*p4^2*p7 - 648*p2^2*p4^2*p7 + 24*p1*p5^2*p8 - 16*p2*p5^2*p8",
];

pub const COUNTEREXAMPLE_TARGET_RELATIONS: [&str; 15] = [
    "3*q0 - 2*q1 - 6*q2",
    "4*q1^2*q2 + 24*q1*q2^2 + 36*q2^3 - 9*q3*q4",
    "q4*q6 - q2*q8",
    "q3*q5 - q2*q7",
    "4*q1^2*q6 + 24*q1*q2*q6 + 36*q2^2*q6 - 9*q3*q8",
    "4*q1^2*q5 + 24*q1*q2*q5 + 36*q2^2*q5 - 9*q4*q7",
    "108*q1*q2^3 + 216*q2^4 + 9*q1*q3*q4 - 54*q2*q3*q4 - 4*q5*q6",
    "q1^3*q4 - q5*q8",
    "q1^3*q3 - q6*q7",
    "108*q2^5 - 9*q1^2*q3*q4 + 18*q1*q2*q3*q4 - 27*q2^2*q3*q4 + 4*q1*q5*q6 + 16*q2*q5*q6",
    "4*q1^5 + 24*q1*q5*q6 + 36*q2*q5*q6 - 9*q7*q8",
    "108*q1*q2^2*q3*q6 + 216*q2^3*q3*q6 - 4*q6^2*q7 + 9*q1*q3^2*q8 - 54*q2*q3^2*q8",
    "108*q1*q2^2*q4*q5 + 216*q2^3*q4*q5 + 9*q1*q4^2*q7 - 54*q2*q4^2*q7 - 4*q5^2*q8",
    "108*q2^4*q3*q6 + 4*q1*q6^2*q7 + 16*q2*q6^2*q7 - 9*q1^2*q3^2*q8 + 18*q1*q2*q3^2*q8 - 27*q2^2*q3^2*q8",
    "108*q2^4*q4*q5 - 9*q1^2*q4^2*q7 + 18*q1*q2*q4^2*q7 - 27*q2^2*q4^2*q7 + 4*q1*q5^2*q8 + 16*q2*q5^2*q8",
];
