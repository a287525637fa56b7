//! Invariant rings of torus actions in complexified coordinates.
//!
//! Ambient variables are `z1..zn, w1..wn` with `w_i` standing for the
//! conjugate of `z_i`. An invariant monomial `z^u w^v` satisfies `A u = A v`.

mod bracket;
mod generators;
mod moment;
mod relations;
mod semialg;

pub use bracket::{
    bracket_in_generators, bracket_table, decompose, poisson_bracket, rewrite_by_elimination, type1_bracket_closed_form,
};
pub use generators::{invariant_generators, invariant_generators_named, type1_generators};
pub use moment::{moment_forms, MomentForm};
pub(crate) use relations::monomials_of_degree;
pub use relations::{onshell, toric_relations, toric_relations_with_bound, type1_relations, PresentationIdeal, Shell};
pub use semialg::{
    evaluate_generators, reconstruct_point, sample_shell_moduli, sample_shell_point, semialgebraic_description,
    Inequality,
};

use alloc::{format, string::String, sync::Arc, vec::Vec};

use num_bigint::BigInt;

use crate::error::{bail, Result};
use crate::lattice::IntMatrix;
use crate::poly::{GaussRat, Monomial, PolyRing, Polynomial, TermOrder};

/// Ring `C[z1..zn, w1..wn]` with unit weights.
pub fn ambient_ring(n: usize) -> Arc<PolyRing> {
    let names: Vec<String> = (1..=n).map(|i| format!("z{}", i)).chain((1..=n).map(|i| format!("w{}", i))).collect();
    Arc::new(PolyRing::standard(&names).expect("valid ambient names"))
}

/// A named invariant monomial `z^u w^v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub u: Vec<u32>,
    pub v: Vec<u32>,
}

impl Generator {
    pub fn degree(&self) -> u32 {
        self.u.iter().chain(&self.v).sum()
    }

    /// `(u, v)` concatenated.
    pub fn exponents(&self) -> Vec<u32> {
        self.u.iter().chain(&self.v).copied().collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.u == self.v
    }
}

/// Named generators of an invariant ring together with the polynomial ring
/// they coordinatize (weights are the degrees).
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    n: usize,
    generators: Vec<Generator>,
    nonneg: Vec<bool>,
    ring: Arc<PolyRing>,
    ambient: Arc<PolyRing>,
}

impl PartialEq for GeneratorSet {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.generators == o.generators && self.nonneg == o.nonneg
    }
}

impl GeneratorSet {
    /// Validates names and degrees; `nonneg` flags must sit on diagonal monomials.
    pub fn new(n: usize, generators: Vec<Generator>, nonneg: Vec<bool>) -> Result<Self> {
        if nonneg.len() != generators.len() {
            bail!(Argument, "one nonnegativity flag per generator expected");
        }
        for (g, &f) in generators.iter().zip(&nonneg) {
            if g.u.len() != n || g.v.len() != n {
                bail!(Argument, "generator {} has exponents of the wrong length", g.name);
            }
            if g.degree() == 0 {
                bail!(Argument, "generator {} is constant", g.name);
            }
            if f && !g.is_diagonal() {
                bail!(Argument, "generator {} is flagged nonnegative but is not diagonal", g.name);
            }
        }
        let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
        let weights: Vec<u32> = generators.iter().map(|g| g.degree()).collect();
        let ring = Arc::new(PolyRing::new(names, weights, TermOrder::GrevLex)?);
        Ok(GeneratorSet { n, generators, nonneg, ring, ambient: ambient_ring(n) })
    }

    /// Flags exactly the generators `z_j w_j`.
    pub fn with_diagonal_flags(n: usize, generators: Vec<Generator>) -> Result<Self> {
        let flags = generators.iter().map(|g| g.is_diagonal() && g.degree() == 2).collect();
        Self::new(n, generators, flags)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn nonneg(&self) -> &[bool] {
        &self.nonneg
    }

    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        match self.index_of(name) {
            Some(i) => Ok(i),
            None => bail!(Argument, "unknown generator {:?}", name),
        }
    }

    /// Polynomial ring in the generator names.
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn ambient_ring(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    /// Generator `i` as a variable of [`ring`](Self::ring).
    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ring, i)
    }

    /// Generator `i` as a monomial in `z, w`.
    pub fn ambient(&self, i: usize) -> Polynomial {
        Polynomial::term(&self.ambient, Monomial(self.generators[i].exponents()), GaussRat::one())
    }

    /// Index of `z_j w_j`.
    pub fn diagonal(&self, j: usize) -> Option<usize> {
        self.generators.iter().position(|g| g.degree() == 2 && g.u[j] == 1 && g.v[j] == 1)
    }

    /// Index of the generator with `u` and `v` exchanged.
    pub fn bar(&self, i: usize) -> Option<usize> {
        let g = &self.generators[i];
        self.generators.iter().position(|h| h.u == g.v && h.v == g.u)
    }

    pub fn is_bar_closed(&self) -> bool {
        (0..self.len()).all(|i| self.bar(i).is_some())
    }

    /// Every generator satisfies `A u = A v`.
    pub fn check_invariance(&self, a: &IntMatrix) -> Result<()> {
        if a.cols() != self.n {
            bail!(Argument, "matrix has {} columns but generators live in {} variables", a.cols(), self.n);
        }
        for g in &self.generators {
            let du: Vec<BigInt> = g.u.iter().zip(&g.v).map(|(&x, &y)| BigInt::from(x as i64 - y as i64)).collect();
            if a.apply(&du).iter().any(|x| x != &BigInt::from(0)) {
                bail!(Internal, "generator {} is not invariant", g.name);
            }
        }
        Ok(())
    }

    /// Generators of degree at most `d`.
    pub fn restrict_degree(&self, d: u32) -> Result<GeneratorSet> {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.generators[i].degree() <= d).collect();
        GeneratorSet::new(
            self.n,
            keep.iter().map(|&i| self.generators[i].clone()).collect(),
            keep.iter().map(|&i| self.nonneg[i]).collect(),
        )
    }

    /// Same monomials under new names, in the same order.
    pub fn renamed<S: AsRef<str>>(&self, names: &[S]) -> Result<GeneratorSet> {
        if names.len() != self.len() {
            bail!(Argument, "expected {} names", self.len());
        }
        let gens = self
            .generators
            .iter()
            .zip(names)
            .map(|(g, s)| Generator { name: String::from(s.as_ref()), u: g.u.clone(), v: g.v.clone() })
            .collect();
        GeneratorSet::new(self.n, gens, self.nonneg.clone())
    }

    /// Substitutes the ambient monomials for the generator variables.
    pub fn to_ambient(&self, f: &Polynomial) -> Result<Polynomial> {
        let images: Vec<Polynomial> = (0..self.len()).map(|i| self.ambient(i)).collect();
        f.substitute(&images, &self.ambient)
    }
}

#[cfg(test)]
mod tests;
