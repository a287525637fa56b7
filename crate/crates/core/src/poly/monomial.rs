use alloc::vec::Vec;
use core::cmp::Ordering;

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(alloc::vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = alloc::vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self | o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial(o.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }
}

/// Monomial order. Degrees are weighted by the ring's variable weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    /// Pure lexicographic, first variable largest.
    Lex,
    /// Weighted degree, ties broken reverse-lexicographically.
    GrevLex,
    /// Weighted degree in the flagged variables first, then `GrevLex`.
    /// Any polynomial whose leading term avoids the flagged variables lies
    /// entirely in the remaining ones.
    Elimination(Vec<bool>),
}

pub(crate) fn grevlex_cmp(w: &[u32], a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum();
    let db: u64 = b.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl TermOrder {
    /// `Greater` means `a` is the larger monomial.
    pub fn cmp(&self, weights: &[u32], a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::GrevLex => grevlex_cmp(weights, a, b),
            TermOrder::Elimination(mask) => {
                let part = |x: &[u32]| -> u64 {
                    x.iter().zip(weights).zip(mask).filter(|(_, &m)| m).map(|((&e, &w), _)| e as u64 * w as u64).sum()
                };
                part(a).cmp(&part(b)).then_with(|| grevlex_cmp(weights, a, b))
            }
        }
    }
}
