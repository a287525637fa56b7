use alloc::{string::ToString, vec, vec::Vec};

use proptest::prelude::*;

use super::*;
use crate::invariants::{invariant_generators, onshell, toric_relations, type1_relations, Shell};
use crate::weights::{detect_type, reduce_to_circle};
use crate::Error;

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// Brute force over all pairs `(u, v)` with `|u| + |v| = d`.
fn brute_offshell(rows: &[&[i64]], order: usize) -> Vec<i64> {
    let n = rows[0].len();
    let mut c = vec![0i64; order + 1];
    let mut x = vec![0u32; 2 * n];
    loop {
        let d: u32 = x.iter().sum();
        if d as usize <= order {
            let inv = rows.iter().all(|r| (0..n).map(|j| r[j] * (x[j] as i64 - x[n + j] as i64)).sum::<i64>() == 0);
            if inv {
                c[d as usize] += 1;
            }
        }
        // odometer over the box [0, order]^{2n}
        let mut k = 0;
        loop {
            if k == x.len() {
                return c;
            }
            x[k] += 1;
            if x[k] as usize <= order {
                break;
            }
            x[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn offshell_small_cases() {
    assert_eq!(offshell_dims(&m(&[&[-1, 1]]), 2).unwrap(), SeriesTruncation::from_ints(&[1, 0, 4]));
    assert_eq!(offshell_dims(&m(&[&[-2, 3, 6]]), 2).unwrap().coefficients[2], 3.into());
    for rows in [&[&[-2i64, 3, 6][..]][..], &[&[-1, 2]], &[&[1, -1, 0], &[0, 1, -1]], &[&[-3, 1, 2]]] {
        let got = offshell_dims(&m(rows), 6).unwrap();
        assert_eq!(got.to_i64().unwrap(), brute_offshell(rows, 6), "{:?}", rows);
    }
}

#[test]
fn expansion_identities() {
    assert_eq!(expand_rational(&[1], &[1], 3).unwrap(), SeriesTruncation::from_ints(&[1, 1, 1, 1]));
    let a = expand_rational(&[1, 2, 1], &[2], 10).unwrap();
    let b = expand_rational(&[1, 1], &[1], 10).unwrap();
    assert!(series_equal(&a, &b).unwrap());
    assert!(expand_rational(&[1], &[0], 3).is_err());
}

#[test]
fn onshell_matches_closed_forms() {
    // the single-row pair: this expression is the off-shell series, the
    // quotient drops one factor (1 - t^2)
    let off = expand_rational(&[1, 0, 0, 1, 2, 1, 0, 0, 1], &[5, 3, 2, 2, 2], 8).unwrap();
    let s1 = expand_rational(&[1, 0, 0, 1, 2, 1, 0, 0, 1], &[5, 3, 2, 2], 8).unwrap();
    assert_eq!(offshell_dims(&m(&[&[-2, 3, 6]]), 8).unwrap(), off);
    assert_eq!(offshell_dims(&m(&[&[-3, 2, 6]]), 8).unwrap(), off);
    assert_eq!(onshell_dims(&m(&[&[-2, 3, 6]]), 8).unwrap(), s1);
    assert_eq!(onshell_dims(&m(&[&[-3, 2, 6]]), 8).unwrap(), s1);
    let s2 = expand_rational(&[1, 0, 2, 4, 2, 0, 1], &[3, 3, 2, 2], 8).unwrap();
    assert_eq!(onshell_dims(&m(&[&[-2, 1, 1]]), 8).unwrap(), s2);
    assert_eq!(onshell_dims(&m(&[&[-1, 2, 1]]), 8).unwrap(), s2);
    assert!(!series_equal(&onshell_dims(&m(&[&[-2, 3, 6]]), 8).unwrap(), &s2).unwrap());
    let s3 = expand_rational(&[1, 0, 2, 2, 2, 0, 1], &[3, 3, 2, 2], 8).unwrap();
    assert_eq!(onshell_dims(&m(&[&[-1, 0, 1, 1], &[0, -1, 1, 1]]), 8).unwrap(), s3);
    assert_eq!(onshell_dims(&m(&[&[-1, 0, 1, 1], &[0, -1, 0, 1]]), 8).unwrap(), s3);
}

#[test]
fn circle_reduction_preserves_the_series() {
    let a = m(&[&[-3, 0, 0, 1, 2, 3, 3], &[0, -4, 0, 3, 6, 9, 9], &[0, 0, -5, 2, 4, 6, 6]]);
    let b = reduce_to_circle(&detect_type(&a).unwrap()).unwrap();
    assert!(series_equal(&onshell_dims(&a, 4).unwrap(), &onshell_dims(&b, 4).unwrap()).unwrap());
}

#[test]
fn circle_quotients_live_in_degrees_two_and_eta() {
    for (a, b) in [(2i64, 3i64), (3, 5), (1, 4), (4, 1)] {
        let s = onshell_dims(&m(&[&[-a, b]]), 20).unwrap();
        let eta = (a + b) as usize;
        for (d, c) in s.coefficients.iter().enumerate() {
            let reachable = (0..=d / eta).any(|k| (d - k * eta).is_multiple_of(2));
            if !reachable {
                assert!(c.is_zero(), "degree {} for ({}, {})", d, a, b);
            }
        }
    }
}

#[test]
fn non_regular_sequence_is_reported() {
    let e = onshell_dims(&m(&[&[1, 0], &[0, 1], &[1, 1]]), 4).unwrap_err();
    assert!(matches!(e, Error::Precondition(_)));
}

#[test]
fn mismatched_orders_are_rejected() {
    let a = SeriesTruncation::from_ints(&[1, 0]);
    let b = SeriesTruncation::from_ints(&[1, 0, 1]);
    assert!(matches!(series_equal(&a, &b), Err(Error::Argument(_))));
    assert!(series_equal(&b, &b).unwrap());
    assert_eq!(b.truncate(1).unwrap(), a);
}

#[test]
fn rational_display() {
    assert_eq!(
        format_rational(&[1, 0, 0, 1, 2, 1, 0, 0, 1], &[5, 3, 2, 2, 2]),
        "(1+t^3+2t^4+t^5+t^8)/((1-t^5)(1-t^3)(1-t^2)^3)"
    );
    assert_eq!(format_rational(&[1, 0, 2, 4, 2, 0, 1], &[3, 3, 2, 2]), "(1+2t^2+4t^3+2t^4+t^6)/((1-t^3)^2(1-t^2)^2)");
    assert_eq!(format_rational(&[1], &[1]), "1/((1-t))");
    assert_eq!(SeriesTruncation::from_ints(&[1, 0, 3]).to_string(), "[1, 0, 3]");
}

#[test]
fn groebner_dimensions_agree_with_the_shortcut() {
    let a = m(&[&[-2, 1, 1]]);
    let pres = type1_relations(&detect_type(&a).unwrap(), Shell::On).unwrap();
    assert_eq!(presentation_dims(&pres, 8).unwrap(), onshell_dims(&a, 8).unwrap());
    let a = m(&[&[-2, 3, 6]]);
    let pres = onshell(&toric_relations(&invariant_generators(&a).unwrap()).unwrap(), &a).unwrap();
    assert_eq!(presentation_dims(&pres, 10).unwrap(), onshell_dims(&a, 10).unwrap());
    let off = toric_relations(&invariant_generators(&a).unwrap()).unwrap();
    assert_eq!(presentation_dims(&off, 10).unwrap(), offshell_dims(&a, 10).unwrap());
}

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=2, 2usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn offshell_is_invariant_under_column_permutation_and_row_operations(rows in arb_matrix(), seed in 0u64..1000) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let base = offshell_dims(&a, 5).unwrap();
        let n = a.cols();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left((seed as usize) % n);
        prop_assert_eq!(&offshell_dims(&a.permute_cols(&perm), 5).unwrap(), &base);
        if a.rows() == 2 {
            let k = (seed % 5) as i64 - 2;
            let u = IntMatrix::from_rows(&[vec![1i64, k], vec![0, 1]]).unwrap();
            prop_assert_eq!(&offshell_dims(&u.mul(&a).unwrap(), 5).unwrap(), &base);
        }
    }
}
