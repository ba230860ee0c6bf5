use calculus::{reduction_op, SymPoly, WeightBook};
use graphs::enumerate_reduction_family;
use lie_core::rational::{q, qr};
use lie_core::{parse_algebra, SplitData};
use poly::{parse_poly, Ambient, Mono, Poly};
use proptest::prelude::*;
use reduction::*;
use std::sync::Arc;

fn split(name: &str) -> SplitData {
    let path = format!("{}/../../algebras/{name}.alg", env!("CARGO_MANIFEST_DIR"));
    parse_algebra(&std::fs::read_to_string(path).unwrap()).unwrap().split().unwrap()
}

fn book() -> WeightBook {
    WeightBook::exact()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

#[test]
fn abelian_kernel_is_the_whole_ansatz() {
    let s = split("abelian");
    let dq = s.dim() - s.t;
    let full: Vec<usize> = (0..=3).map(|k| binomial(k + dq - 1, dq - 1)).collect();
    for variant in [Variant::Plain, Variant::Eps] {
        let b = solve_reduction(&s, 3, 2, 4, variant, &book()).unwrap();
        assert_eq!(b.dims.per_degree(), full);
        assert_eq!(b.certificate, Certificate::Exact);
    }
}

#[test]
fn aff1_plain_kernel_is_the_constants() {
    let s = split("aff1");
    let b = solve_reduction(&s, 3, 0, 4, Variant::Plain, &book()).unwrap();
    assert_eq!(b.dims.per_degree(), vec![1, 0, 0, 0]);
    assert_eq!(b.elements, vec![Poly::constant(&b.ambient(), q(1))]);
}

#[test]
fn t_variant_at_one_is_the_plain_affine_system() {
    let s = split("aff1_lambda1");
    let plain = solve_reduction(&s, 3, 0, 4, Variant::Plain, &book()).unwrap();
    let t1 = solve_reduction(&s, 3, 0, 4, Variant::T(q(1)), &book()).unwrap();
    assert_eq!(plain.elements, t1.elements);
    assert_eq!(plain.dims, t1.dims);
}

#[test]
fn order_below_degree_plus_one_is_refused() {
    let s = split("aff1");
    let err = solve_reduction(&s, 3, 0, 3, Variant::Plain, &book()).unwrap_err();
    assert!(matches!(err, ReductionError::OrderTooSmall { order: 3, needed: 4 }));
    assert!(err.is_resource());
}

#[test]
fn homogenization_round_trip_with_negative_control() {
    for name in ["abelian", "aff1", "heis", "sl2"] {
        let r = verify_homogenization(&split(name), 3, 4, 6, 7, &book()).unwrap();
        assert!(r.passed(), "{name}: {r:?}");
        assert!(r.elements > 0);
    }
    let aff1 = verify_homogenization(&split("aff1"), 3, 4, 6, 7, &book()).unwrap();
    assert_eq!(aff1.negative_control, Some(true));
}

#[test]
fn homogenization_rejects_a_character() {
    let err = verify_homogenization(&split("aff1_lambda1"), 2, 3, 1, 7, &book()).unwrap_err();
    assert!(matches!(err, ReductionError::Affine(_)));
}

#[test]
fn specialization_at_eps_one() {
    let s = split("aff1");
    let b = solve_reduction(&s, 3, 3, 4, Variant::Eps, &book()).unwrap();
    let r = specialize_eps1(&b, &book()).unwrap();
    assert!(r.vector_case && r.passed(), "{r:?}");
    assert_eq!(r.quotient_dims, vec![1, 0, 0, 0]);
    assert_eq!(r.plain_dims, r.quotient_dims);
    assert!(r.witnesses > 0);

    let s = split("aff1_lambda1");
    let b = solve_reduction(&s, 3, 3, 4, Variant::Eps, &book()).unwrap();
    let r = specialize_eps1(&b, &book()).unwrap();
    assert!(!r.vector_case && r.passed(), "{r:?}");
    // eps^k - 1 for k = 1..=3 multiplies the constant solution.
    assert!(r.j_kernel >= 3);
}

#[test]
fn reduction_and_invariant_dimensions_agree() {
    let cases = [
        ("abelian", vec![1, 2, 3, 4]),
        ("aff1", vec![1, 0, 0, 0]),
        ("aff1_lambda1", vec![1, 0, 0, 0]),
        ("heis", vec![1, 2, 3, 4]),
        ("heis_lambda1", vec![1, 2, 3, 4]),
        ("sl2", vec![1, 0, 1, 0]),
    ];
    for (name, dims) in cases {
        let r = verify_theorem_5_1(name, &split(name), 3, 2, 4, &book()).unwrap();
        assert_eq!(r.verdict(), Verdict::Match, "{r}");
        assert_eq!(r.side_red.per_degree(), dims, "{name}");
        assert_eq!(r.side_red, r.side_inv, "{name}");
        assert_eq!(r.map_check, Some(true));
    }
}

#[test]
fn dimension_report_line() {
    let r = verify_theorem_5_1("aff1", &split("aff1_lambda1"), 3, 2, 4, &book()).unwrap();
    let line = r.to_string();
    assert!(line.starts_with("theorem=5.1 algebra=aff1 lambda=1 D=3 N=2 side_red=[1,0,0,0] side_inv=[1,0,0,0]"), "{line}");
    assert!(line.contains("verdict=MATCH backend=exact"), "{line}");
}

#[test]
fn t_and_eps_families_round_trip() {
    for name in ["abelian", "aff1", "aff1_lambda1", "heis_lambda1", "sl2"] {
        let r = verify_theorem_6_1(name, &split(name), 3, 4, &book()).unwrap();
        assert!(r.failures.is_empty(), "{r}: {:?}", r.failures);
        assert_eq!(r.t_checks, 3 * r.cases);
    }
}

#[test]
fn constant_family_goes_to_a_power_of_eps() {
    let amb = Ambient::from_split(&split("aff1"));
    let one = Poly::constant(&amb, q(1));
    let (f, n) = t_family_to_eps(&[(0, one.clone())], &amb);
    assert_eq!(n, 1);
    assert_eq!(f, one.shift_eps(1));
    assert!(in_kernel(&f, &split("aff1_lambda1"), 2, &Variant::Eps, &book()).unwrap());
}

fn arb_poly(amb: Arc<Ambient>) -> impl Strategy<Value = Poly> {
    let n = amb.n();
    let t = amb.t;
    prop::collection::vec(
        (prop::collection::vec(0u32..3, n - t), 0u32..3, -4i64..5),
        1..5,
    )
    .prop_map(move |terms| {
        let mut p = Poly::zero(&amb);
        for (qe, e, c) in terms {
            let mut exps = vec![0; n];
            exps[t..].copy_from_slice(&qe);
            p.add_term(Mono { exps, eps: e }, q(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eps_t_round_trip_is_a_monomial_shift(f in arb_poly(Ambient::from_split(&split("heis")))) {
        prop_assume!(!f.is_zero());
        let (family, n1) = eps_to_t_family(&f);
        let (back, n2) = t_family_to_eps(&family, f.ambient());
        // The lowest eps-order k_min of F sets the exponent 1 - k_min.
        let k_min = f.terms().map(|(m, _)| m.eps).min().unwrap();
        prop_assert_eq!(n2 as i64 - n1 as i64, 1 - k_min as i64);
        if n2 >= n1 {
            prop_assert_eq!(back, f.shift_eps(n2 - n1));
        } else {
            prop_assert_eq!(f, back.shift_eps(n1 - n2));
        }
    }
}

#[test]
fn central_extension_pipeline_agrees() {
    let cases = [("abelian", vec![1, 2, 3, 4]), ("aff1", vec![1, 0, 0, 0]), ("aff1_lambda1", vec![1, 0, 0, 0])];
    for (name, dims) in cases {
        let r = verify_theorem_6_8(name, &split(name), 3, 3, 4, &book()).unwrap();
        assert_eq!(r.verdict(), Verdict::Match, "{r}");
        assert_eq!(r.side_t, dims);
    }
}

#[test]
fn truncated_centers() {
    let cases = [
        ("abelian", vec![1, 2, 3, 4]),
        ("aff1", vec![1, 0, 0, 0]),
        ("heis_lambda1", vec![1, 0, 0, 0]),
        ("sl2", vec![1, 0, 1, 0]),
    ];
    for (name, dims) in cases {
        let r = center_dims(name, &split(name), 3);
        assert_eq!(r.poisson, dims, "{r}");
        assert_eq!(r.associative, dims, "{r}");
        assert!(r.to_string().contains("truncated-commutant"));
    }
}

/// Rebuilds the `eps` differential from the unpruned graph enumeration, one
/// graph at a time.
fn reassembled(f: &Poly, s: &SplitData, order: usize) -> Vec<SymPoly> {
    let amb = f.ambient();
    let mut out = vec![SymPoly::zero(amb); s.t];
    for i in 1..=order {
        let fam = enumerate_reduction_family(i, None).unwrap();
        for rep in fam.b.iter().chain(&fam.bw) {
            let w = WeightBook::weight_form(&rep.graph, calculus::Geometry::HalfPlane);
            if w.is_zero() {
                continue;
            }
            let scale = qr(rep.labeled_count as i64, 1 << i);
            for (j, p) in reduction_op(&rep.graph, f, s).unwrap().iter().enumerate() {
                out[j].add_poly(&p.shift_eps(i as u32).scale(&scale), &w);
            }
        }
    }
    out
}

#[test]
fn kernel_elements_survive_an_independent_reassembly() {
    for name in ["aff1", "aff1_lambda1", "heis_lambda1", "sl2"] {
        let s = split(name);
        let b = solve_reduction(&s, 2, 2, 3, Variant::Eps, &book()).unwrap();
        for e in &b.elements {
            for comp in reassembled(e, &s, 3) {
                assert!(comp.is_zero(), "{name}: d({e}) != 0");
            }
        }
    }
}

#[test]
fn reassembly_sees_non_solutions() {
    let s = split("sl2");
    let amb = Ambient::from_split(&s);
    let e = parse_poly(&amb, "E").unwrap();
    assert!(reassembled(&e, &s, 3).iter().any(|c| !c.is_zero()));
}

#[test]
fn eps_solutions_are_graded() {
    for name in ["heis", "sl2"] {
        let s = split(name);
        let b = solve_reduction(&s, 3, 3, 4, Variant::Eps, &book()).unwrap();
        for e in &b.elements {
            let mut degrees: Vec<u32> = e.terms().map(|(m, _)| e.mono_deg_q(m) + m.eps).collect();
            degrees.sort_unstable();
            degrees.dedup();
            for k in degrees {
                let part = e.filter(|m| e.mono_deg_q(m) + m.eps == k);
                assert!(in_kernel(&part, &s, 4, &Variant::Eps, &book()).unwrap(), "{name}: {part}");
            }
        }
    }
}

#[test]
fn t_variant_keeps_only_constants_on_aff1() {
    for t in [q(1), q(2), qr(-1, 3)] {
        let s = split("aff1_lambda1");
        let b = solve_reduction(&s, 2, 0, 3, Variant::T(t.clone()), &book()).unwrap();
        assert_eq!(b.dims.per_degree(), vec![1, 0, 0], "t = {t}");
    }
}
