use alloc::{sync::Arc, vec::Vec};

use super::coeff::GaussRat;
use super::monomial::Monomial;
use super::pairs::PairQueue;
use super::polynomial::Polynomial;
use super::ring::PolyRing;

/// Full reduction of `f` by `basis` (top and tail).
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rest: Vec<(Monomial, GaussRat)> = Vec::new();
    loop {
        let (m, c) = match p.leading() {
            None => break,
            Some(t) => t.clone(),
        };
        let divisor = basis.iter().find(|g| g.leading_monomial().is_some_and(|l| l.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading().unwrap();
                let q = lm.quotient_of(&m);
                let coef = -&(&c * &lc.inv().unwrap());
                p = p.add_scaled(g, &coef, Some(&q));
            }
            None => {
                rest.push((m, c));
                let mut terms = p.into_terms();
                terms.remove(0);
                p = Polynomial::from_sorted_unchecked(&ring, terms);
            }
        }
    }
    Polynomial::from_sorted_unchecked(&ring, rest)
}

pub(crate) fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_monomial(&fm.quotient_of(&l), &fc.inv().unwrap());
    a.add_scaled(g, &-&gc.inv().unwrap(), Some(&gm.quotient_of(&l)))
}

/// Reduced Gröbner basis (monic, sorted by leading monomial descending).
pub fn groebner(gens: &[Polynomial], ring: &Arc<PolyRing>) -> Vec<Polynomial> {
    let cmp = |a: &[u32], b: &[u32]| ring.order().cmp(ring.weights(), a, b);
    let mut polys: Vec<Polynomial> = Vec::new();
    let mut leads: Vec<Vec<u32>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut reducers: Vec<Polynomial> = Vec::new();
    let mut queue = PairQueue::new(&cmp);
    let mut input: Vec<Polynomial> = gens.iter().map(|g| g.in_ring(ring)).filter(|g| !g.is_zero()).collect();
    input.sort_by(|a, b| cmp(&a.leading_monomial().unwrap().0, &b.leading_monomial().unwrap().0));
    let mut pending: Vec<Polynomial> = input.into_iter().rev().collect();
    loop {
        let s = match pending.pop() {
            Some(g) => g,
            None => match queue.pop() {
                Some(p) => s_polynomial(&polys[p.i], &polys[p.j]),
                None => break,
            },
        };
        let h = normal_form(&s, &reducers);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        leads.push(h.leading_monomial().unwrap().0.clone());
        polys.push(h);
        active.push(true);
        queue.update(&leads, &mut active, polys.len() - 1);
        if active.iter().filter(|&&a| a).count() == reducers.len() + 1 {
            reducers.push(polys.last().unwrap().clone());
        } else {
            reducers = polys.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p.clone()).collect();
        }
    }
    interreduce(reducers, ring)
}

/// Minimalizes and tail-reduces a Gröbner basis.
pub(crate) fn interreduce(mut basis: Vec<Polynomial>, ring: &Arc<PolyRing>) -> Vec<Polynomial> {
    basis.retain(|p| !p.is_zero());
    basis.sort_by(|a, b| {
        ring.order().cmp(ring.weights(), &a.leading_monomial().unwrap().0, &b.leading_monomial().unwrap().0)
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in basis {
        let lm = p.leading_monomial().unwrap();
        if !minimal.iter().any(|q| q.leading_monomial().unwrap().divides(lm)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, q)| q.clone()).collect();
        out.push(normal_form(&minimal[k], &others).monic());
    }
    out.sort_by(|a, b| {
        ring.order().cmp(ring.weights(), &b.leading_monomial().unwrap().0, &a.leading_monomial().unwrap().0)
    });
    out
}

/// Checks that all S-polynomials reduce to zero.
pub fn is_groebner(basis: &[Polynomial]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (a, b) = (&basis[i], &basis[j]);
            if a.leading_monomial().unwrap().coprime(b.leading_monomial().unwrap()) {
                continue;
            }
            if !normal_form(&s_polynomial(a, b), basis).is_zero() {
                return false;
            }
        }
    }
    true
}
