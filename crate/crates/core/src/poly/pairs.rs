//! Critical-pair bookkeeping shared by the Buchberger variants.

use alloc::vec::Vec;
use core::cmp::Ordering;

#[derive(Clone, Debug)]
pub(crate) struct Pair {
    pub i: usize,
    pub j: usize,
    pub lcm: Vec<u32>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Pending pairs kept sorted so that `pop` yields the smallest lcm.
pub(crate) struct PairQueue<'a> {
    pairs: Vec<Pair>,
    cmp: &'a dyn Fn(&[u32], &[u32]) -> Ordering,
}

impl<'a> PairQueue<'a> {
    pub fn new(cmp: &'a dyn Fn(&[u32], &[u32]) -> Ordering) -> Self {
        PairQueue { pairs: Vec::new(), cmp }
    }

    pub fn pop(&mut self) -> Option<Pair> {
        self.pairs.pop()
    }

    fn insert(&mut self, p: Pair) {
        let cmp = self.cmp;
        let pos = self.pairs.partition_point(|q| cmp(&q.lcm, &p.lcm) == Ordering::Greater);
        self.pairs.insert(pos, p);
    }

    /// Gebauer–Möller update on inserting the element with lead `leads[h]`:
    /// drops new pairs by the chain and product criteria, prunes old pairs
    /// whose lcm is divisible by the new lead, and deactivates elements whose
    /// lead the new one divides.
    pub fn update(&mut self, leads: &[Vec<u32>], active: &mut [bool], h: usize) {
        let lh = &leads[h];
        let mut cands: Vec<Pair> =
            (0..h).filter(|&g| active[g]).map(|g| Pair { i: g, j: h, lcm: lcm(&leads[g], lh) }).collect();
        let mut kept: Vec<Pair> = Vec::new();
        for k in 0..cands.len() {
            let p = &cands[k];
            let redundant = !coprime(&leads[p.i], lh)
                && (cands[k + 1..].iter().any(|q| divides(&q.lcm, &p.lcm))
                    || kept.iter().any(|q| divides(&q.lcm, &p.lcm)));
            if !redundant {
                kept.push(p.clone());
            }
        }
        cands.clear();
        self.pairs.retain(|p| !divides(lh, &p.lcm) || lcm(&leads[p.i], lh) == p.lcm || lcm(&leads[p.j], lh) == p.lcm);
        for p in kept {
            if !coprime(&leads[p.i], lh) {
                self.insert(p);
            }
        }
        for g in 0..h {
            if active[g] && divides(lh, &leads[g]) {
                active[g] = false;
            }
        }
    }
}
