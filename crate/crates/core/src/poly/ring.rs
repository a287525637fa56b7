use alloc::{string::String, vec::Vec};

use super::monomial::TermOrder;
use crate::error::{bail, Result};

/// Variable names, positive integer weights and a term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    names: Vec<String>,
    weights: Vec<u32>,
    order: TermOrder,
}

fn valid_name(s: &str) -> bool {
    let mut ch = s.chars();
    match ch.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    s != "sqrt" && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new(names: Vec<String>, weights: Vec<u32>, order: TermOrder) -> Result<Self> {
        if names.len() != weights.len() {
            bail!(Argument, "{} names but {} weights", names.len(), weights.len());
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                bail!(Argument, "invalid variable name {:?}", n);
            }
            if names[..i].contains(n) {
                bail!(Argument, "duplicate variable name {:?}", n);
            }
        }
        if weights.contains(&0) {
            bail!(Argument, "variable weights must be positive");
        }
        if let TermOrder::Elimination(mask) = &order {
            if mask.len() != names.len() {
                bail!(Argument, "elimination mask has wrong length");
            }
        }
        Ok(PolyRing { names, weights, order })
    }

    /// Unit weights and graded reverse-lexicographic order.
    pub fn standard<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(
            names.iter().map(|s| String::from(s.as_ref())).collect(),
            alloc::vec![1; names.len()],
            TermOrder::GrevLex,
        )
    }

    pub fn with_order(&self, order: TermOrder) -> Result<Self> {
        Self::new(self.names.clone(), self.weights.clone(), order)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables and weights, possibly different order.
    pub fn same_variables(&self, o: &PolyRing) -> bool {
        self.names == o.names && self.weights == o.weights
    }
}
