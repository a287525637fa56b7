use alloc::{format, string::String, vec, vec::Vec};

use num_bigint::BigInt;
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::poly::{parse_polynomial, IdealBasis};
use crate::weights::{detect_type, embedding_map, TypeInfo};
use crate::Error;

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn info(rows: &[&[i64]]) -> TypeInfo {
    detect_type(&m(rows)).unwrap()
}

/// Monomial `z^u w^v` written by hand as `(u, v)`.
fn uv(u: &[u32], v: &[u32]) -> (Vec<u32>, Vec<u32>) {
    (u.to_vec(), v.to_vec())
}

fn exps(g: &GeneratorSet) -> Vec<(Vec<u32>, Vec<u32>)> {
    g.generators().iter().map(|x| (x.u.clone(), x.v.clone())).collect()
}

#[test]
fn generic_names_follow_degree_then_descending_exponents() {
    let g = invariant_generators_named(&m(&[&[-2, 3, 6]]), "p").unwrap();
    let expected = vec![
        uv(&[1, 0, 0], &[1, 0, 0]),
        uv(&[0, 1, 0], &[0, 1, 0]),
        uv(&[0, 0, 1], &[0, 0, 1]),
        uv(&[0, 2, 0], &[0, 0, 1]),
        uv(&[0, 0, 1], &[0, 2, 0]),
        uv(&[3, 0, 1], &[0, 0, 0]),
        uv(&[0, 0, 0], &[3, 0, 1]),
        uv(&[3, 2, 0], &[0, 0, 0]),
        uv(&[0, 0, 0], &[3, 2, 0]),
    ];
    assert_eq!(exps(&g), expected);
    assert_eq!(g.names(), vec!["p0", "p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8"]);
    assert_eq!(g.nonneg(), &[true, true, true, false, false, false, false, false, false]);
    assert_eq!(g.bar(5), Some(6));
    assert!(g.is_bar_closed());

    let q = invariant_generators_named(&m(&[&[-3, 2, 6]]), "q").unwrap();
    let expected = vec![
        uv(&[1, 0, 0], &[1, 0, 0]),
        uv(&[0, 1, 0], &[0, 1, 0]),
        uv(&[0, 0, 1], &[0, 0, 1]),
        uv(&[2, 0, 1], &[0, 0, 0]),
        uv(&[0, 0, 0], &[2, 0, 1]),
        uv(&[0, 3, 0], &[0, 0, 1]),
        uv(&[0, 0, 1], &[0, 3, 0]),
        uv(&[2, 3, 0], &[0, 0, 0]),
        uv(&[0, 0, 0], &[2, 3, 0]),
    ];
    assert_eq!(exps(&q), expected);
}

fn sorted(mut v: Vec<(Vec<u32>, Vec<u32>)>) -> Vec<(Vec<u32>, Vec<u32>)> {
    v.sort();
    v
}

#[test]
fn closed_form_matches_hilbert_basis() {
    for rows in [
        &[&[-2i64, 1, 1][..]][..],
        &[&[-1, 1, 1, 1]],
        &[&[-3, 1, 1]],
        &[&[-2, 0, 1, 1], &[0, -3, 1, 1]],
        &[&[-1, 0, 1, 1], &[0, -1, 1, 1]],
    ] {
        let a = m(rows);
        let i = detect_type(&a).unwrap();
        let closed = type1_generators(&i).unwrap();
        closed.check_invariance(&a).unwrap();
        let hb = invariant_generators(&a).unwrap();
        assert_eq!(sorted(exps(&closed)), sorted(exps(&hb)), "{:?}", rows);
    }
}

#[test]
fn closed_form_names() {
    let g = type1_generators(&info(&[&[-2, 1, 1]])).unwrap();
    assert_eq!(
        g.names(),
        vec!["r1", "p1_1", "p1_2", "p2_1", "p2_2", "q0_2", "q1_1", "q2_0", "qbar0_2", "qbar1_1", "qbar2_0"]
    );
    // q_s = z1^{m1} z2^{s1} z3^{s2} with m1 = 1
    assert_eq!(g.get(g.require("q1_1").unwrap()).u, vec![1, 1, 1]);
    assert_eq!(g.nonneg().iter().filter(|&&f| f).count(), 3);
}

#[test]
fn closed_form_requires_faithful_type1() {
    let e = type1_generators(&info(&[&[-2, 3, 6]])).unwrap_err();
    assert!(matches!(e, Error::Precondition(_)));
    // Type I but not faithful: gcd(a, n) = 2
    let e = type1_generators(
        &TypeInfo::from_parts(vec![BigInt::from(2)], vec![BigInt::from(2)], vec![BigInt::from(1); 2]).unwrap(),
    );
    assert!(matches!(e.unwrap_err(), Error::Precondition(_)));
}

/// Substitutes the ambient monomials; an actual relation vanishes.
fn vanishes(gens: &GeneratorSet, f: &Polynomial) -> bool {
    gens.to_ambient(f).unwrap().is_zero()
}

#[test]
fn toric_relations_vanish_and_are_certified() {
    let a = m(&[&[-2, 3, 6]]);
    let g = invariant_generators_named(&a, "p").unwrap();
    let pres = toric_relations(&g).unwrap();
    assert!(pres.relations().iter().all(|f| vanishes(&g, f)));
    assert_eq!(pres.certified_degree, Some(10));
    // quadratic-times-linear relation p1^2 p2 = p3 p4 and the top one p7 p8 = p0^3 p1^2
    let r = g.ring();
    assert!(pres.contains(&parse_polynomial(r, "p1^2*p2 - p3*p4").unwrap()).unwrap());
    assert!(pres.contains(&parse_polynomial(r, "p7*p8 - p0^3*p1^2").unwrap()).unwrap());
    assert!(!pres.contains(&parse_polynomial(r, "p5*p6 - p0^3*p1^2").unwrap()).unwrap());
}

#[test]
fn relation_families_generate_the_toric_ideal() {
    for rows in [&[&[-2i64, 1, 1][..]][..], &[&[-1, 1, 1, 1]], &[&[-2, 0, 1, 1], &[0, -3, 1, 1]], &[&[-3, 1, 1]]] {
        let i = detect_type(&m(rows)).unwrap();
        let fam = type1_relations(&i, Shell::Off).unwrap();
        assert!(fam.relations().iter().all(|f| vanishes(&fam.generators, f)));
        let toric = toric_relations(&fam.generators).unwrap();
        assert!(fam.equal(&toric).unwrap(), "{:?}", rows);
    }
}

#[test]
fn onshell_forms_agree() {
    let a = m(&[&[-2, 0, 1, 1], &[0, -3, 1, 1]]);
    let i = detect_type(&a).unwrap();
    let fam = type1_relations(&i, Shell::On).unwrap();
    let toric = onshell(&toric_relations(&fam.generators).unwrap(), &a).unwrap();
    assert_eq!(toric.shell, Shell::On);
    assert!(fam.equal(&toric).unwrap());
    let r = fam.generators.ring();
    assert!(fam.contains(&parse_polynomial(r, "2*r1 - p1_1 - p2_2").unwrap()).unwrap());
    assert!(!fam.contains(&parse_polynomial(r, "r1 - p1_1 - p2_2").unwrap()).unwrap());
}

#[test]
fn moment_forms_in_both_coordinates() {
    let a = m(&[&[-2, 3, 6]]);
    let forms = moment_forms(&a);
    assert_eq!(forms.len(), 1);
    let amb = forms[0].to_ambient();
    assert_eq!(amb, parse_polynomial(amb.ring(), "-z1*w1 + (3/2)*z2*w2 + 3*z3*w3").unwrap());
    let g = invariant_generators_named(&a, "p").unwrap();
    let lin = forms[0].in_generators(&g).unwrap();
    assert_eq!(lin, parse_polynomial(g.ring(), "-p0 + (3/2)*p1 + 3*p2").unwrap());
    assert!((forms[0].eval(&[(3.0, 0.0), (0.0, 2.0), (0.0, 0.0)]) - (-9.0 + 6.0)).abs() < 1e-12);
}

#[test]
fn bracket_sign_convention() {
    let r = ambient_ring(1);
    let z = parse_polynomial(&r, "z1").unwrap();
    let w = parse_polynomial(&r, "w1").unwrap();
    // z = x + iy, {x, y} = 1 gives {z, conj z} = -2i
    assert_eq!(poisson_bracket(&z, &w).unwrap(), parse_polynomial(&r, "-2i").unwrap());
    assert_eq!(poisson_bracket(&w, &z).unwrap(), parse_polynomial(&r, "2i").unwrap());
}

#[test]
fn moment_map_commutes_with_invariants() {
    let a = m(&[&[-2, 0, 1, 1], &[0, -3, 1, 1]]);
    let g = invariant_generators(&a).unwrap();
    for form in moment_forms(&a) {
        let j = form.to_ambient().in_ring(g.ambient_ring());
        for i in 0..g.len() {
            assert!(poisson_bracket(&j, &g.ambient(i)).unwrap().is_zero());
        }
    }
    // a non-invariant monomial is moved by the action
    let z1 = Polynomial::var(g.ambient_ring(), 0);
    let j = moment_forms(&a)[0].to_ambient().in_ring(g.ambient_ring());
    assert!(!poisson_bracket(&j, &z1).unwrap().is_zero());
}

#[test]
fn closed_form_brackets_match_direct_computation() {
    for rows in [&[&[-2i64, 1, 1][..]][..], &[&[-2, 0, 1, 1], &[0, -3, 1, 1]]] {
        let i = detect_type(&m(rows)).unwrap();
        let off = type1_relations(&i, Shell::Off).unwrap().prepared().unwrap();
        let g = &off.generators;
        for x in 0..g.len() {
            for y in 0..g.len() {
                let direct = bracket_in_generators(g, x, y).unwrap();
                let table = type1_bracket_closed_form(&i, g, x, y).unwrap();
                let diff = direct.checked_sub(&table).unwrap();
                assert!(
                    off.contains(&diff).unwrap(),
                    "{{{}, {}}}: {} vs {}",
                    g.get(x).name,
                    g.get(y).name,
                    direct,
                    table
                );
            }
        }
    }
}

#[test]
fn elimination_rewrite_agrees_with_decomposition() {
    let a = m(&[&[-2, 1, 1]]);
    let g = type1_generators(&detect_type(&a).unwrap()).unwrap();
    let off = toric_relations(&g).unwrap();
    let q = g.require("q1_1").unwrap();
    let qb = g.require("qbar2_0").unwrap();
    let amb = poisson_bracket(&g.ambient(q), &g.ambient(qb)).unwrap();
    let elim = rewrite_by_elimination(&g, &amb).unwrap().expect("invariant");
    let dec = bracket_in_generators(&g, q, qb).unwrap();
    assert!(off.contains(&elim.checked_sub(&dec).unwrap()).unwrap());
    // z1 alone is not invariant
    let z1 = Polynomial::var(g.ambient_ring(), 0);
    assert_eq!(rewrite_by_elimination(&g, &z1).unwrap(), None);
    assert!(decompose(&g, &[1, 0, 0, 0, 0, 0]).is_none());
}

#[test]
fn bracket_table_is_antisymmetric() {
    let g = invariant_generators_named(&m(&[&[-2, 3, 6]]), "p").unwrap();
    let table = bracket_table(&g).unwrap();
    assert_eq!(table.len(), 36);
    for (i, j, b) in table {
        let back = bracket_in_generators(&g, j, i).unwrap();
        assert_eq!(b, -&back);
    }
}

#[test]
fn embedding_pulls_moment_components_back_to_the_circle() {
    // (J_A)_i composed with the embedding equals (n_i / beta) J_B
    for rows in [
        &[&[-2i64, 0, 1, 1][..], &[0, -3, 1, 1]][..],
        &[&[-3, 0, 0, 1, 2, 3, 3], &[0, -4, 0, 3, 6, 9, 9], &[0, 0, -5, 2, 4, 6, 6]],
    ] {
        let a = m(rows);
        let i = detect_type(&a).unwrap();
        let b = crate::weights::reduce_to_circle(&i).unwrap();
        let phi = embedding_map(&i).unwrap();
        let na = a.cols();
        let nb = b.cols();
        let target = ambient_ring(nb);
        let mut images = Vec::new();
        for half in 0..2 {
            for src in 0..na {
                let (t, c) = phi.assignments[src].clone();
                let mut e = vec![0u32; 2 * nb];
                e[half * nb + t] = 1;
                images.push(crate::poly::RadicalPolynomial::term(&target, crate::poly::Monomial(e), c));
            }
        }
        let jb = moment_forms(&b)[0].to_ambient().in_ring(&target);
        for (row, form) in moment_forms(&a).iter().enumerate() {
            let ja = crate::poly::RadicalPolynomial::from_polynomial(&form.to_ambient());
            let pulled = ja.substitute(&images, &target).unwrap().to_polynomial().unwrap();
            let scale = crate::poly::GaussRat::real(num_rational::BigRational::new(i.n[row].clone(), i.beta.clone()));
            assert_eq!(pulled, jb.scale(&scale), "row {}", row);
        }
    }
}

fn close(a: &[(f64, f64)], b: &[(f64, f64)], tol: f64) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| ((x.0 - y.0).powi(2) + (x.1 - y.1).powi(2)).sqrt() <= tol * (1.0 + x.0.abs() + x.1.abs()))
}

#[test]
fn reconstruction_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for rows in [&[&[-2i64, 1, 1][..]][..], &[&[-2, 0, 1, 1], &[0, -3, 1, 1]], &[&[-1, 1, 1, 1]]] {
        let a = m(rows);
        let i = detect_type(&a).unwrap();
        let g = type1_generators(&i).unwrap();
        for _ in 0..20 {
            let z = sample_shell_point(&a, &mut rng).unwrap();
            for f in moment_forms(&a) {
                assert!(f.eval(&z).abs() < 1e-9);
            }
            let vals = evaluate_generators(&g, &z);
            let back = reconstruct_point(&i, &vals, 1e-9).unwrap();
            assert!(close(&evaluate_generators(&g, &back), &vals, 1e-8));
        }
    }
}

#[test]
fn reconstruction_names_violated_relation() {
    let a = m(&[&[-2, 1, 1]]);
    let i = detect_type(&a).unwrap();
    let g = type1_generators(&i).unwrap();
    // 2|z1|^2 = |z2|^2 + |z3|^2 with every coordinate nonzero
    let z = [(1.0, 0.0), (0.6, 0.8), (0.0, 1.0)];
    let mut vals = evaluate_generators(&g, &z);
    let p12 = g.require("p1_2").unwrap();
    let p21 = g.require("p2_1").unwrap();
    vals[p12] = (vals[p12].0 * 2.0 + 1.0, vals[p12].1 * 2.0);
    vals[p21] = (vals[p12].0, -vals[p12].1);
    let e = reconstruct_point(&i, &vals, 1e-9).unwrap_err();
    let Error::Reconstruction(msg) = e else { panic!("{:?}", e) };
    assert!(msg.contains("p1_2*p2_1 = p1_1*p2_2"), "{}", msg);

    let mut vals = evaluate_generators(&g, &z);
    let r1 = g.require("r1").unwrap();
    vals[r1].0 += 1.0;
    let Error::Reconstruction(msg) = reconstruct_point(&i, &vals, 1e-9).unwrap_err() else { panic!() };
    assert!(msg.contains("moment relation 1"), "{}", msg);

    let mut vals = evaluate_generators(&g, &z);
    let q = g.require("q1_1").unwrap();
    vals[q] = (-vals[q].0, -vals[q].1);
    let Error::Reconstruction(msg) = reconstruct_point(&i, &vals, 1e-9).unwrap_err() else { panic!() };
    assert!(msg.contains("q"), "{}", msg);
}

#[test]
fn origin_reconstructs() {
    let i = info(&[&[-2, 1, 1]]);
    let g = type1_generators(&i).unwrap();
    let z = reconstruct_point(&i, &vec![(0.0, 0.0); g.len()], 1e-9).unwrap();
    assert!(z.iter().all(|&(a, b)| a == 0.0 && b == 0.0));
}

#[test]
fn inequalities_are_the_diagonals() {
    let names: Vec<String> = semialgebraic_description(&info(&[&[-2, 0, 1, 1], &[0, -3, 1, 1]]))
        .unwrap()
        .into_iter()
        .map(|q| q.name)
        .collect();
    assert_eq!(names, vec!["r1", "r2", "p1_1", "p2_2"]);
    assert!(semialgebraic_description(&info(&[&[-2, 3, 6]])).is_err());
}

#[test]
fn degree_restriction_and_renaming() {
    let g = invariant_generators(&m(&[&[-2, 3, 6]])).unwrap();
    let low = g.restrict_degree(3).unwrap();
    assert_eq!(low.len(), 5);
    let named = low.renamed(&["a", "b", "c", "d", "e"]).unwrap();
    assert_eq!(named.get(3).u, vec![0, 2, 0]);
    assert!(low.renamed(&["a"]).is_err());
}

fn small_poly(r: &alloc::sync::Arc<crate::poly::PolyRing>, coeffs: &[(i64, [u32; 4])]) -> Polynomial {
    let mut acc = Polynomial::zero(r);
    for (c, e) in coeffs {
        let t = Polynomial::term(r, crate::poly::Monomial(e.to_vec()), crate::poly::GaussRat::from_int(*c));
        acc = &acc + &t;
    }
    acc
}

fn arb_poly() -> impl Strategy<Value = Vec<(i64, [u32; 4])>> {
    prop::collection::vec((-3i64..=3, [0u32..3, 0u32..3, 0u32..3, 0u32..3]), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn jacobi_identity(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
        let r = ambient_ring(2);
        let (f, g, h) = (small_poly(&r, &f), small_poly(&r, &g), small_poly(&r, &h));
        let br = |a: &Polynomial, b: &Polynomial| poisson_bracket(a, b).unwrap();
        let sum = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        prop_assert!(sum.is_zero());
        prop_assert_eq!(br(&f, &g), -&br(&g, &f));
    }
}

#[test]
fn unknown_generator_is_an_argument_error() {
    let g = invariant_generators(&m(&[&[-2, 3, 6]])).unwrap();
    assert!(matches!(g.require("nope"), Err(Error::Argument(_))));
    let _ = format!("{:?}", IdealBasis::zero(g.ring()));
}
