use alloc::{vec, vec::Vec};

use super::detect::next_permutation;
use crate::error::{bail, Result};
use crate::lattice::IntMatrix;

/// Column permutation of a `2n`-column lift from 1-indexed transpositions,
/// applied left to right. Entry `j` names the column moved to position `j`.
pub fn lift_permutation_from_transpositions(width: usize, pairs: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..width).collect();
    for &(a, b) in pairs {
        if a == 0 || b == 0 || a > width || b > width {
            bail!(Argument, "transposition ({}, {}) out of range 1..={}", a, b, width);
        }
        perm.swap(a - 1, b - 1);
    }
    Ok(perm)
}

fn same_hnf(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.hermite_normal_form().0 == b.hermite_normal_form().0
}

/// Whether `[A | -A]`, after permuting columns, row-reduces over the integers
/// to `[B | -B]`.
///
/// With `pairing` the given transpositions are applied. Otherwise all
/// products of the swaps `(j, j+n)` are tried, then, for `n ≤ 7`, those
/// combined with every permutation of the coordinates (column `j` and its
/// partner `j+n` move together).
pub fn cotangent_lift_equivalent(a: &IntMatrix, b: &IntMatrix, pairing: Option<&[(usize, usize)]>) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        bail!(Argument, "shape mismatch: {}x{} vs {}x{}", a.rows(), a.cols(), b.rows(), b.cols());
    }
    let la = a.cotangent_lift();
    let lb = b.cotangent_lift();
    let n = a.cols();
    if let Some(pairs) = pairing {
        let perm = lift_permutation_from_transpositions(2 * n, pairs)?;
        return Ok(same_hnf(&la.permute_cols(&perm), &lb));
    }
    let target = lb.hermite_normal_form().0;
    let try_coords = |coords: &[usize]| -> bool {
        for mask in 0u32..(1 << n) {
            let mut perm = vec![0; 2 * n];
            for j in 0..n {
                let (x, y) = (coords[j], coords[j] + n);
                if mask >> j & 1 == 1 {
                    perm[j] = y;
                    perm[j + n] = x;
                } else {
                    perm[j] = x;
                    perm[j + n] = y;
                }
            }
            if la.permute_cols(&perm).hermite_normal_form().0 == target {
                return true;
            }
        }
        false
    };
    let mut coords: Vec<usize> = (0..n).collect();
    if try_coords(&coords) {
        return Ok(true);
    }
    if n > 7 {
        return Ok(false);
    }
    while next_permutation(&mut coords) {
        if try_coords(&coords) {
            return Ok(true);
        }
    }
    Ok(false)
}
