use alloc::{format, string::String, vec, vec::Vec};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::invariants::{invariant_generators, moment_forms, onshell, toric_relations, type1_relations, Shell};
use crate::lattice::IntMatrix;
use crate::poly::{parse_polynomial, parse_radical, Coefficient, GaussRat, PolyRing, Polynomial};
use crate::weights::{detect_type, reduce_to_circle};

fn row(v: &[i64]) -> IntMatrix {
    IntMatrix::row_vector(v).unwrap()
}

fn rows(v: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(&v.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn psi() -> GradedMonomialMap {
    builtin_map(Builtin::CounterexampleReal).unwrap()
}

fn phi_star() -> GradedMonomialMap {
    builtin_map(Builtin::CounterexampleComplex).unwrap()
}

fn image_is(map: &GradedMonomialMap, name: &str, expected: &str) {
    let want = parse_radical(map.target_ring(), expected).unwrap();
    assert_eq!(map.image(name).unwrap(), &want, "image of {}", name);
}

#[test]
fn real_isomorphism_table() {
    let m = psi();
    image_is(&m, "p4", "-27/8*q3");
    image_is(&m, "p8", "-729/64*q7");
    image_is(&m, "p1", "q1 + 3*q2");
    // p0 = (3 p1 + 6 p2)/2 on shell, so its image is (3(q1 + 3q2) - 9q2)/2
    image_is(&m, "p0", "3/2*q1");
    assert!(m.is_linear());
    assert!(!m.is_monomial());
}

#[test]
fn complex_isomorphism_table() {
    let m = phi_star();
    image_is(&m, "q5", "-i*p6");
    image_is(&m, "q7", "i*p8");
    image_is(&m, "q1", "-p0");
    assert!(m.is_monomial());
}

#[test]
fn grading() {
    assert!(verify_graded(&psi()));
    assert!(verify_graded(&phi_star()));
    let ex = counterexample().unwrap();
    assert!(verify_graded(&GradedMonomialMap::identity(&ex.source)));
    let bad = psi().with_image("p1", "q1 + q3").unwrap();
    assert!(!verify_graded(&bad));
}

#[test]
fn real_isomorphism_preserves_ideals_both_ways() {
    let ex = counterexample().unwrap();
    let a = ex.onshell_source().unwrap();
    let b = ex.onshell_target().unwrap();
    let m = psi();
    let fwd = verify_relations(&m, &a.ideal, &b.ideal).unwrap();
    assert!(fwd.holds, "{:?}", fwd.failures().next());
    let inv = m.inverse(&b.ideal).unwrap();
    assert!(verify_graded(&inv));
    let back = verify_relations(&inv, &b.ideal, &a.ideal).unwrap();
    assert!(back.holds, "{:?}", back.failures().next());
    // q1 = (2/3) Ψ(p0) and q2 = -(2/3) Ψ(p2), up to the moment relation
    for (name, want) in [("q1", "2/3*p0"), ("q2", "-2/3*p2")] {
        let got = inv.image(name).unwrap().to_polynomial().unwrap();
        let diff = got.checked_sub(&parse_polynomial(ex.source.ring(), want).unwrap()).unwrap();
        assert!(a.contains(&diff).unwrap(), "image of {}", name);
    }
    // round trip is the identity modulo the source ideal
    let round = m.then(&inv).unwrap();
    for (i, im) in round.images().iter().enumerate() {
        let diff = im.to_polynomial().unwrap().checked_sub(&ex.source.var(i)).unwrap();
        assert!(a.contains(&diff).unwrap());
    }
}

#[test]
fn composition_with_scaling_preserves_relations() {
    let ex = counterexample().unwrap();
    let a = ex.onshell_source().unwrap();
    let b = ex.onshell_target().unwrap();
    // t ↦ 2^deg t is a graded automorphism of any presentation with homogeneous relations
    let scale: Vec<(String, String)> =
        ex.target.generators().iter().map(|g| (g.name.clone(), format!("{}*{}", 1u64 << g.degree(), g.name))).collect();
    let s =
        GradedMonomialMap::from_assignments(ex.target.clone(), Codomain::Generators(ex.target.clone()), &scale, None)
            .unwrap();
    assert!(verify_relations(&s, &b.ideal, &b.ideal).unwrap().holds);
    let composed = psi().then(&s).unwrap();
    assert!(verify_graded(&composed));
    assert!(verify_relations(&composed, &a.ideal, &b.ideal).unwrap().holds);
}

#[test]
fn flipped_coefficient_is_detected() {
    let ex = counterexample().unwrap();
    let a = ex.onshell_source().unwrap();
    let b = ex.onshell_target().unwrap();
    let bad = psi().with_image("p4", "27/8*q3").unwrap();
    let rep = verify_relations(&bad, &a.ideal, &b.ideal).unwrap();
    assert!(!rep.holds);
    // p1^2 p2 - p3 p4 ↦ -3/2 q2 (q1 + 3q2)^2 - 27/8 q3 q4, which is 3/8 R1' - (27/4) q3 q4
    let cert = rep.failures().find(|c| c.label.contains("p3*p4")).unwrap();
    assert!(!cert.residues.is_empty());
    assert!(!verify_poisson(&bad, &b.ideal).unwrap().holds);
}

#[test]
fn complex_isomorphism_is_poisson() {
    let ex = counterexample().unwrap();
    let a = ex.onshell_source().unwrap();
    let b = ex.onshell_target().unwrap();
    let m = phi_star();
    assert!(verify_relations(&m, &b.ideal, &a.ideal).unwrap().holds);
    let inv = m.inverse(&a.ideal).unwrap();
    assert!(verify_relations(&inv, &a.ideal, &b.ideal).unwrap().holds);
    let rep = verify_poisson(&m, &a.ideal).unwrap();
    assert!(rep.holds, "{:?}", rep.failures().next());
    // the moment form of the second action pulls back to that of the first
    let jb = moment_forms(&ex.target_matrix)[0].in_generators(&ex.target).unwrap();
    let ja = moment_forms(&ex.source_matrix)[0].in_generators(&ex.source).unwrap();
    assert_eq!(m.apply(&jb).unwrap().to_polynomial().unwrap(), ja);
}

#[test]
fn identity_checks() {
    let ex = counterexample().unwrap();
    let a = ex.onshell_source().unwrap();
    let id = GradedMonomialMap::identity(&ex.source);
    assert!(verify_relations(&id, &a.ideal, &a.ideal).unwrap().holds);
    assert!(verify_poisson(&id, &a.ideal).unwrap().holds);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let v = verify_inequalities(&id, &ex.source_matrix, 20, &mut rng).unwrap();
    assert!(!v.is_violated());
}

#[test]
fn zero_map_on_zero_ideal() {
    let ex = counterexample().unwrap();
    let ring = ex.target.ring().clone();
    let zero = vec![crate::poly::RadicalPolynomial::zero(&ring); ex.source.len()];
    let m = GradedMonomialMap::new(ex.source.clone(), Codomain::Generators(ex.target.clone()), zero).unwrap();
    let src = crate::poly::IdealBasis::zero(ex.source.ring());
    let dst = crate::poly::IdealBasis::zero(&ring);
    assert!(verify_relations(&m, &src, &dst).unwrap().holds);
}

#[test]
fn real_isomorphism_breaks_inequalities() {
    let ex = counterexample().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let v = verify_inequalities(&psi(), &ex.target_matrix, 50, &mut rng).unwrap();
    let InequalityVerdict::Violated(w) = v else { panic!("expected a violation") };
    assert_eq!(w.generator, "p2");
    // independent re-check: Ψ(p2) = -3/2 |u3|^2
    let s = w.squared_moduli.as_ref().unwrap();
    let exact = w.exact.as_ref().unwrap();
    assert_eq!(exact, &Coefficient::rational(GaussRat::from_frac(-3 * s[2] as i64, 2)));
    let q2 = w.point[2].0 * w.point[2].0 + w.point[2].1 * w.point[2].1;
    assert!((w.value.0 + 1.5 * q2).abs() < 1e-9);
}

fn forced_family_map(c22: i64) -> GradedMonomialMap {
    let ex = counterexample().unwrap();
    GradedMonomialMap::from_assignments(
        ex.source.clone(),
        Codomain::Generators(ex.target.clone()),
        &[
            ("p1", format!("-2/3*({})*q1 - 2*({})*q2", c22, c22)),
            ("p2", format!("({})*q2", c22)),
            ("p3", String::from("q4")),
            ("p4", String::from("q3")),
            ("p5", String::from("q6")),
            ("p6", String::from("q5")),
            ("p7", String::from("q8")),
            ("p8", String::from("q7")),
        ],
        Some(&ex.source_matrix),
    )
    .unwrap()
}

#[test]
fn forced_family_breaks_inequalities_for_either_sign() {
    let ex = counterexample().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pos = verify_inequalities(&forced_family_map(1), &ex.target_matrix, 50, &mut rng).unwrap();
    let InequalityVerdict::Violated(w) = pos else { panic!("c22 > 0 should violate") };
    assert!(w.generator == "p1" || w.generator == "p0");
    let neg = verify_inequalities(&forced_family_map(-1), &ex.target_matrix, 50, &mut rng).unwrap();
    let InequalityVerdict::Violated(w) = neg else { panic!("c22 < 0 should violate") };
    assert_eq!(w.generator, "p2");
}

#[test]
fn ansatz_forces_the_stated_family() {
    let sol = ansatz_nogo().unwrap();
    assert!(!sol.families.is_empty());
    assert!(sol.all_forced);
    for f in &sol.families {
        assert!(f.forced, "family {:?} / {:?}", f.zero, f.nonzero);
    }
}

#[test]
fn forced_point_solves_the_system() {
    // c22 = 3: k1 = c22^3/9 = 3, c34 c43 = 9 k1, k2 = -2 c22^4 = 2 c55 c66
    let sys = ansatz_system().unwrap();
    let values: Vec<(&str, i64)> = vec![
        ("c11", -2),
        ("c12", -6),
        ("c21", 0),
        ("c22", 3),
        ("c33", 0),
        ("c34", 1),
        ("c43", 27),
        ("c44", 0),
        ("c55", 1),
        ("c56", 0),
        ("c65", 0),
        ("c66", -81),
        ("k1", 3),
        ("k2", -162),
        ("k3", 0),
        ("k4", 0),
    ];
    let point: Vec<GaussRat> =
        sys.unknowns.iter().map(|u| GaussRat::from_int(values.iter().find(|(n, _)| n == u).unwrap().1)).collect();
    for (m, e) in &sys.equations {
        assert!(e.eval_exact(&point).is_zero(), "coefficient of {} is nonzero", m);
    }
}

#[test]
fn system_contains_the_eight_listed_equations() {
    let sys = ansatz_system().unwrap();
    let mut names: Vec<String> = sys.unknowns.clone();
    names.extend(["K3", "K4"].map(String::from));
    let ring = alloc::sync::Arc::new(PolyRing::standard(&names).unwrap());
    // the cofactors of R1' are written k2·K3 and k2·K4 in the listed form
    let images: Vec<Polynomial> = sys
        .unknowns
        .iter()
        .map(|u| match u.as_str() {
            "k3" => parse_polynomial(&ring, "k2*K3").unwrap(),
            "k4" => parse_polynomial(&ring, "k2*K4").unwrap(),
            other => parse_polynomial(&ring, other).unwrap(),
        })
        .collect();
    let listed = [
        ("q1^3", "c11^2*c21"),
        ("q3^2", "c33*c43"),
        ("q1^2*q2", "c11*(2*c12*c21 + c11*c22) - 4*k1"),
        ("q1^2*q2^2", "81*c21*c22*(3*c12*c21 + 3*c11*c22 + 4*c21*c22) - k2*(6*K3 + K4)"),
        ("q1*q2^3", "9*c22^2*(9*c12*c21 + 3*c11*c22 + 8*c21*c22) - k2*(9 + 3*K3 + 2*K4)"),
        ("q2^4", "3*c22^3*(3*c12 + 2*c22) - k2*(6 + K4)"),
        ("q1*q3*q4", "3*(c11 + 6*c21)*(c34*c43 + c33*c44) - k2*(1 - K3)"),
        ("q2*q3*q4", "3*(c12 + 6*c22)*(c34*c43 + c33*c44) + k2*(6 + K4)"),
    ];
    for (m, text) in listed {
        let ours = sys.equation(m).unwrap_or_else(|| panic!("no equation for {}", m));
        let ours = ours.substitute(&images, &ring).unwrap();
        let theirs = parse_polynomial(&ring, text).unwrap();
        let (a, b) = (ours.leading().unwrap().1.clone(), theirs.leading().unwrap().1.clone());
        assert_eq!(ours.scale(&b), theirs.scale(&a), "equation for {}", m);
    }
}

#[test]
fn degenerate_branch_kills_the_scalar() {
    let sys = ansatz_system().unwrap();
    let mut gens: Vec<Polynomial> = sys.equations.iter().map(|(_, e)| e.clone()).collect();
    gens.push(parse_polynomial(&sys.ring, "c11").unwrap());
    let ideal = crate::poly::IdealBasis::new(&sys.ring, gens).unwrap();
    assert!(ideal.member(&parse_polynomial(&sys.ring, "k1").unwrap()).unwrap().0);
}

fn type1_instances() -> Vec<IntMatrix> {
    vec![
        row(&[-2, 1]),
        row(&[-2, 1, 1]),
        row(&[-3, 2, 2]),
        rows(&[&[-2, 0, 1], &[0, -3, 1]]),
        rows(&[&[-2, 0, 1, 1], &[0, -3, 1, 1]]),
    ]
}

#[test]
fn circle_map_on_type1_instances() {
    for a in type1_instances() {
        let info = detect_type(&a).unwrap();
        let m = builtin_map(Builtin::TypeOneToCircle(&info)).unwrap();
        assert!(verify_graded(&m));
        assert!(m.is_monomial());
        let b = reduce_to_circle(&info).unwrap();
        let off = type1_relations(&info, Shell::Off).unwrap();
        let zero = crate::poly::IdealBasis::zero(m.target_ring());
        let rep = verify_relations(&m, &off.ideal, &zero).unwrap();
        assert!(rep.holds, "{:?}: {:?}", a, rep.failures().next());
        let on = type1_relations(&info, Shell::On).unwrap();
        let shell = ambient_shell_ideal(&b).unwrap();
        assert!(verify_relations(&m, &on.ideal, &shell).unwrap().holds, "{:?}", a);
        assert!(verify_poisson(&m, &shell).unwrap().holds, "{:?}", a);
    }
}

#[test]
fn circle_map_coefficient_for_one_row() {
    // one row: m_1 = β, so the coefficient sqrt(β^-β m_1^m_1) is 1
    let info = detect_type(&row(&[-2, 1])).unwrap();
    let m = builtin_map(Builtin::TypeOneToCircle(&info)).unwrap();
    let im = m.image("q2").unwrap();
    assert_eq!(im.as_monomial().unwrap().1, &Coefficient::one());
    assert_eq!(format!("{}", im), "z1*z2^2");
}

#[test]
fn circle_map_carries_radicals_for_two_rows() {
    // a = (2,3), n = (1,1): α = 6, m = (3,2), β = 5, coefficient sqrt(3^3 2^2 / 5^5)
    let info = detect_type(&rows(&[&[-2, 0, 1], &[0, -3, 1]])).unwrap();
    let m = builtin_map(Builtin::TypeOneToCircle(&info)).unwrap();
    let (_, c) = m.image("q6").unwrap().as_monomial().unwrap();
    assert_eq!(c.square(), GaussRat::from_frac(108, 3125));
    assert!(!c.is_rational());
    image_is(&m, "r1", "3/5*z1*w1");
}

#[test]
fn radical_map_rejects_long_relations() {
    let info = detect_type(&rows(&[&[-2, 0, 1], &[0, -3, 1]])).unwrap();
    let m = builtin_map(Builtin::TypeOneToCircle(&info)).unwrap();
    let r = m.source().ring();
    let rel = parse_polynomial(r, "q6*qbar6 - r1^3*r2^2*p1_1^6 + r1^5*r2*p1_1^6").unwrap();
    let src = crate::poly::IdealBasis::new(r, vec![rel]).unwrap();
    let zero = crate::poly::IdealBasis::zero(m.target_ring());
    assert!(matches!(verify_relations(&m, &src, &zero), Err(crate::Error::UnsupportedCoefficient(_))));
}

#[test]
fn circle_map_needs_type1() {
    let info = detect_type(&row(&[-2, 3, 6])).unwrap();
    assert!(matches!(builtin_map(Builtin::TypeOneToCircle(&info)), Err(crate::Error::Argument(_))));
}

#[test]
fn shell_embedding_on_type2() {
    for a in [row(&[-2, 3, 6]), row(&[-2, 1, 2]), rows(&[&[-2, 0, 1, 2], &[0, -3, 1, 2]])] {
        let info = detect_type(&a).unwrap();
        let m = builtin_map(Builtin::ShellEmbedding(&info)).unwrap();
        assert!(verify_graded(&m));
        let gens = invariant_generators(&a).unwrap();
        assert_eq!(m.source().names(), gens.names());
        let on = onshell(&toric_relations(&gens).unwrap(), &a).unwrap();
        let shell = ambient_shell_ideal(&reduce_to_circle(&info).unwrap()).unwrap();
        assert!(verify_relations(&m, &on.ideal, &shell).unwrap().holds, "{:?}", a);
    }
}
