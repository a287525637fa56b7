use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{ambient_ring, GeneratorSet};
use crate::error::{bail, Result};
use crate::lattice::IntMatrix;
use crate::poly::{GaussRat, Monomial, Polynomial};

/// Component `J_i = 1/2 Σ_j a_ij z_j w_j` of the moment map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentForm {
    pub index: usize,
    /// Coefficient of `z_j w_j`, equal to `a_ij / 2`.
    pub coefficients: Vec<BigRational>,
}

pub fn moment_forms(a: &IntMatrix) -> Vec<MomentForm> {
    (0..a.rows())
        .map(|i| MomentForm {
            index: i,
            coefficients: a.row(i).iter().map(|x| BigRational::new(x.clone(), BigInt::from(2))).collect(),
        })
        .collect()
}

impl MomentForm {
    /// As a polynomial in `z, w`.
    pub fn to_ambient(&self) -> Polynomial {
        let n = self.coefficients.len();
        let ring = ambient_ring(n);
        let terms = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut e = alloc::vec![0u32; 2 * n];
                e[j] = 1;
                e[n + j] = 1;
                (Monomial(e), GaussRat::real(c.clone()))
            })
            .collect();
        Polynomial::from_terms(&ring, terms)
    }

    /// As a linear form in the diagonal generators of `gens`.
    pub fn in_generators(&self, gens: &GeneratorSet) -> Result<Polynomial> {
        let mut terms = Vec::new();
        for (j, c) in self.coefficients.iter().enumerate() {
            if c == &BigRational::from_integer(0.into()) {
                continue;
            }
            let Some(d) = gens.diagonal(j) else {
                bail!(Argument, "generator set lacks z{}w{}", j + 1, j + 1);
            };
            terms.push((Monomial::var(gens.len(), d), GaussRat::real(c.clone())));
        }
        Ok(Polynomial::from_terms(gens.ring(), terms))
    }

    /// Value at a point with `w = conj(z)`.
    pub fn eval(&self, z: &[(f64, f64)]) -> f64 {
        self.coefficients.iter().zip(z).map(|(c, (re, im))| crate::poly::rat_to_f64(c) * (re * re + im * im)).sum()
    }
}
