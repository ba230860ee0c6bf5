use calculus::*;
use graphs::Graph;
use lie_core::rational::{q, qr};
use lie_core::{parse_algebra, SplitData};
use poly::{moyal_product, parse_poly, Ambient, Poly};
use proptest::prelude::*;
use std::sync::Arc;
use uea::{duflo_partial, DufloVariant, Uea, UeaElem};
use weights::McConfig;

fn split(name: &str) -> SplitData {
    let path = format!("{}/../../algebras/{name}.alg", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    parse_algebra(&text).unwrap().split().unwrap()
}

fn p(a: &Arc<Ambient>, s: &str) -> Poly {
    parse_poly(a, s).unwrap()
}

fn exact(e: Evaluated) -> Poly {
    match e {
        Evaluated::Exact(p) => p,
        Evaluated::Numeric(n) => panic!("expected an exact result, got {n}"),
    }
}

fn kontsevich(f: &Poly, g: &Poly, order: usize) -> Poly {
    exact(star_product(f, g, Flavor::Kontsevich, order, None, &WeightBook::exact()).unwrap())
}

#[test]
fn order_zero_is_the_pointwise_product() {
    let s = split("sl2");
    let a = Ambient::from_split(&s);
    let (f, g) = (p(&a, "E^2 + F"), p(&a, "E*F - 3"));
    let fg = &f * &g;
    assert_eq!(kontsevich(&f, &g, 0), fg);
    let cf = star_product(&f, &g, Flavor::CattaneoFelder, 0, Some(&[q(0)]), &WeightBook::exact());
    assert_eq!(exact(cf.unwrap()), fg);
}

#[test]
fn commutator_is_eps_times_the_bracket() {
    for name in ["aff1", "heis", "sl2"] {
        let s = split(name);
        let a = Ambient::from_split(&s);
        for i in 0..a.n() {
            for j in 0..a.n() {
                let (f, g) = (Poly::var(&a, i), Poly::var(&a, j));
                let comm = &kontsevich(&f, &g, 1) - &kontsevich(&g, &f, 1);
                assert_eq!(comm, f.poisson(&g).shift_eps(1), "{name}: x{i}, x{j}");
            }
        }
    }
}

#[test]
fn heisenberg_product_is_moyal_at_the_central_value() {
    // At z = 1 only graphs with every edge on the ground survive, and these
    // sum to the Moyal product of pi/2.
    let s = split("heis");
    let a = Ambient::from_split(&s);
    let mut pi = vec![vec![q(0); 3]; 3];
    pi[1][2] = qr(1, 2);
    pi[2][1] = qr(-1, 2);
    for (f, g) in [("X^2", "Y^2"), ("X*Y + Y", "X^3"), ("X^2*Y", "X*Y^2")] {
        let (f, g) = (p(&a, f), p(&a, g));
        let star = star_product(&f, &g, Flavor::Kontsevich, 3, Some(&[q(1)]), &WeightBook::exact());
        let moyal = moyal_product(&f, &g, &pi, Some(3)).unwrap();
        assert_eq!(exact(star.unwrap()), moyal);
    }
}

#[test]
fn untabulated_weights_are_reported() {
    let s = split("sl2");
    let a = Ambient::from_split(&s);
    let (f, g) = (p(&a, "E^2"), p(&a, "F^2"));
    let err = star_product(&f, &g, Flavor::Kontsevich, 2, None, &WeightBook::exact()).unwrap_err();
    match err {
        CalcError::Untabulated(names) => assert!(!names.is_empty()),
        e => panic!("unexpected error {e}"),
    }
    let too_far = star_symbolic(&f, &g, Flavor::Kontsevich, 5, None).unwrap_err();
    assert!(matches!(too_far, CalcError::OrderUnsupported { order: 5, .. }));
}

#[test]
fn cattaneo_felder_rejects_h_variables() {
    let s = split("sl2");
    let a = Ambient::from_split(&s);
    let err = star_symbolic(&p(&a, "H"), &p(&a, "E"), Flavor::CattaneoFelder, 1, Some(&[q(0)]));
    assert!(matches!(err, Err(CalcError::NotInSq(_))));
}

#[test]
fn cattaneo_felder_is_homogeneous_in_the_vector_space_case() {
    let s = split("sl2");
    let a = Ambient::from_split(&s);
    let inputs = ["E", "F", "E^2", "E*F", "F^2 + E*eps"];
    for f in inputs {
        for g in inputs {
            let (f, g) = (p(&a, f), p(&a, g));
            let d = f.degree() + g.degree();
            let sym = star_symbolic(&f, &g, Flavor::CattaneoFelder, 2, Some(&[q(0)])).unwrap();
            assert!(sym.constant_part().is_homogeneous_q_eps(d));
            for name in sym.symbols() {
                assert!(sym.symbol_part(&name).is_homogeneous_q_eps(d), "{f} * {g}: {name}");
            }
        }
    }
}

fn transfer_sides(s: &SplitData, f: &Poly, g: &Poly, book: &WeightBook) -> (Evaluated, Poly) {
    // beta(d_q(f * g)) against beta(d_q f) beta(d_q g) in U_eps(g), read back
    // as PBW polynomials truncated at eps^2.
    let plain = SplitData::new(s.algebra.clone(), 0, vec![]).unwrap();
    let ctx = Uea::new(&plain, false);
    let a = f.ambient().clone();
    let image = |h: &Poly| {
        let d = duflo_partial(h, &plain, DufloVariant::Eps).with_ambient(&a);
        UeaElem::symmetrize(&ctx, &d).to_pbw_poly(&a).truncate_eps(2)
    };
    let rhs = UeaElem::from_pbw_poly(&ctx, &image(f))
        .mul(&UeaElem::from_pbw_poly(&ctx, &image(g)))
        .to_pbw_poly(&a)
        .truncate_eps(2);
    let sym = star_symbolic(f, g, Flavor::Kontsevich, 2, None).unwrap();
    let mut lhs = SymPoly::from_poly(&image(&sym.constant_part()));
    for name in sym.symbols() {
        lhs.add_poly(&image(&sym.symbol_part(&name)), &LinForm::symbol(&name, q(1)));
    }
    (book.resolve(&lhs).unwrap(), rhs)
}

#[test]
fn transfer_identity_on_heisenberg_is_exact() {
    let s = split("heis");
    let a = Ambient::from_split(&s);
    let inputs = ["X", "Y", "Z", "X*Y", "X^2", "Y^2 + Z"];
    for f in inputs {
        for g in inputs {
            let (lhs, rhs) = transfer_sides(&s, &p(&a, f), &p(&a, g), &WeightBook::exact());
            assert_eq!(exact(lhs), rhs, "{f} * {g}");
        }
    }
}

#[test]
fn transfer_identity_on_aff1_within_ten_sigma() {
    let s = split("aff1");
    let a = Ambient::from_split(&s);
    let book = WeightBook::new(Backend::Numeric(McConfig::new(200_000, 7)));
    let inputs = ["X", "H", "X^2", "H*X", "H^2"];
    for f in inputs {
        for g in inputs {
            let (lhs, rhs) = transfer_sides(&s, &p(&a, f), &p(&a, g), &book);
            match lhs {
                Evaluated::Exact(l) => assert_eq!(l, rhs, "{f} * {g}"),
                Evaluated::Numeric(n) => {
                    let sigma = n.max_sigma(&rhs);
                    assert!(sigma <= 10.0, "{f} * {g}: {sigma} sigma off");
                }
            }
        }
    }
}

#[test]
fn transfer_identity_on_sl2_generators() {
    // E * F carries a sampled eps^2 constant; the Duflo factor on the
    // right-hand side predicts -1/6.
    let s = split("sl2");
    let a = Ambient::from_split(&s);
    let book = WeightBook::new(Backend::Numeric(McConfig::new(400_000, 5)));
    for f in ["H", "E", "F"] {
        for g in ["H", "E", "F"] {
            let (lhs, rhs) = transfer_sides(&s, &p(&a, f), &p(&a, g), &book);
            match lhs {
                Evaluated::Exact(l) => assert_eq!(l, rhs, "{f} * {g}"),
                Evaluated::Numeric(n) => {
                    let sigma = n.max_sigma(&rhs);
                    assert!(sigma <= 5.0, "{f} * {g}: {sigma} sigma off");
                }
            }
        }
    }
}

fn arb_cubic(a: Arc<Ambient>) -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..2, -3i64..4), 1..4).prop_map(move |terms| {
        let mut f = Poly::zero(&a);
        for (x, y, z, c) in terms {
            let m = &(&Poly::var(&a, 1).pow(x) * &Poly::var(&a, 2).pow(y)) * &Poly::var(&a, 0).pow(z);
            f += &m.scale(&q(c));
        }
        f
    })
}

fn heis_amb() -> Arc<Ambient> {
    Ambient::from_split(&split("heis"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn heisenberg_product_is_associative(
        f in arb_cubic(heis_amb()),
        g in arb_cubic(heis_amb()),
        h in arb_cubic(heis_amb()),
    ) {
        let left = kontsevich(&kontsevich(&f, &g, 2), &h, 2).truncate_eps(2);
        let right = kontsevich(&f, &kontsevich(&g, &h, 2), 2).truncate_eps(2);
        prop_assert_eq!(left, right);
    }
}

#[test]
fn reduction_op_on_the_bernoulli_graph() {
    let s = split("aff1");
    let a = Ambient::from_split(&s);
    let g: Graph = "n1=1 n2=1 edges=(1,F1,+)(1,inf,-)".parse().unwrap();
    for n in 1..5 {
        let f = Poly::var(&a, 1).pow(n);
        let out = reduction_op(&g, &f, &s).unwrap();
        // pi^{XH} = [X, H] = -X
        assert_eq!(out, vec![f.scale(&q(-(n as i64)))]);
    }
    assert!(reduction_op(&g, &Poly::one(&a), &s).unwrap()[0].is_zero());
    let no_inf: Graph = "n1=1 n2=2 edges=(1,F1,+)(1,F2,+)".parse().unwrap();
    assert!(matches!(reduction_op(&no_inf, &p(&a, "X"), &s), Err(CalcError::MissingInf)));
    assert!(matches!(reduction_op(&g, &p(&a, "H"), &s), Err(CalcError::NotInSq(_))));

    let ab = split("abelian");
    let b = Ambient::from_split(&ab);
    for c in reduction_op(&g, &p(&b, "B^2*C + B"), &ab).unwrap() {
        assert!(c.is_zero());
    }
}

#[test]
fn abelian_differential_vanishes() {
    let s = split("abelian");
    let d = ReductionDifferential::new(&s, &s.lambda, 4).unwrap();
    assert!(d.terms.is_empty());
    let a = Ambient::from_split(&s);
    for c in d.apply(&p(&a, "B^3*C + C^2"), true).unwrap() {
        assert!(c.is_zero());
    }
}

#[test]
fn aff1_differential_is_eps_times_the_euler_operator() {
    let s = split("aff1");
    let a = Ambient::from_split(&s);
    let d = ReductionDifferential::new(&s, &s.lambda, 4).unwrap();
    for n in 0..6 {
        let f = Poly::var(&a, 1).pow(n);
        let out = d.apply(&f, true).unwrap();
        let expected = f.scale(&q(n as i64)).shift_eps(1);
        assert_eq!(out[0].to_exact().unwrap(), expected);
    }
}

#[test]
fn sl2_differential_on_weight_vectors() {
    let s = split("sl2");
    let a = Ambient::from_split(&s);
    let d1 = ReductionDifferential::new(&s, &s.lambda, 1).unwrap();
    for (e, f) in [(1, 0), (0, 1), (2, 1), (1, 3), (2, 2)] {
        let m = &Poly::var(&a, 1).pow(e) * &Poly::var(&a, 2).pow(f);
        let weight = 2 * (e as i64 - f as i64);
        let out = d1.apply(&m, true).unwrap();
        assert_eq!(out[0].to_exact().unwrap(), m.scale(&q(weight)).shift_eps(1));
    }
    // EF has weight zero and every higher order drops out.
    let d4 = ReductionDifferential::new(&s, &s.lambda, 4).unwrap();
    for f in ["E*F", "E^2*F^2"] {
        let out = d4.apply(&p(&a, f), true).unwrap();
        assert!(out[0].to_exact().unwrap().is_zero(), "{f}");
    }
    assert!(!d4.unknown_weights().is_empty());
}

#[test]
fn differential_degree_shift_in_the_vector_space_case() {
    for name in ["aff1", "sl2", "heis", "abelian"] {
        let s = split(name);
        let d = ReductionDifferential::new(&s, &s.lambda, 4).unwrap();
        d.check_degrees().unwrap();
        for term in &d.terms {
            assert_eq!(term.op.q_degree_shift(), Some(1 - term.order as i64));
        }
    }
}

#[test]
fn affine_differential_has_constant_outputs() {
    let s = split("sl2_borel");
    let a = Ambient::from_split(&s);
    let d = ReductionDifferential::new(&s, &s.lambda, 2).unwrap();
    let out = d.apply(&p(&a, "F"), true).unwrap();
    assert_eq!(out[0].to_exact().unwrap(), p(&a, "-2*F*eps"));
    assert_eq!(out[1].to_exact().unwrap(), p(&a, "-eps"));
    assert!(d.check_degrees().is_err());
}

#[test]
fn heisenberg_differential_vanishes_for_every_character() {
    for name in ["heis", "heis_lambda1"] {
        let s = split(name);
        let d = ReductionDifferential::new(&s, &s.lambda, 4).unwrap();
        assert!(d.is_zero(), "{name}");
    }
}

fn rho_shifted(s: &SplitData, a: &Arc<Ambient>, i: usize) -> Poly {
    &Poly::var(a, i) + &Poly::constant(a, &s.lambda[i] + &s.rho[i])
}

#[test]
fn shifted_h_acts_by_zero_on_the_corner() {
    for name in ["aff1", "aff1_lambda1", "sl2", "sl2_borel"] {
        let s = split(name);
        let a = Ambient::from_split(&s);
        for i in 0..s.t {
            let act = module_action(Side::Left, &rho_shifted(&s, &a, i), &Poly::one(&a), &s, 1).unwrap();
            // The identity holds at eps = 1.
            let total = act.series().to_exact().unwrap().set_eps(&q(1));
            assert!(total.is_zero(), "{name}, H{i}: {total}");
        }
    }
    // Without the shift the small loop alone is left.
    let s = split("aff1");
    let a = Ambient::from_split(&s);
    let act = module_action(Side::Left, &p(&a, "H"), &Poly::one(&a), &s, 1).unwrap();
    assert_eq!(act.parts[1].to_exact().unwrap(), Poly::constant(&a, qr(1, 2)));
}

#[test]
fn module_action_order_zero_and_bounds() {
    let s = split("sl2_borel");
    let a = Ambient::from_split(&s);
    let act = module_action(Side::Right, &p(&a, "F + 2"), &p(&a, "F^2"), &s, 0).unwrap();
    assert_eq!(act.series().to_exact().unwrap(), p(&a, "F^3 + 2*F^2"));
    let err = module_action(Side::Left, &p(&a, "F"), &p(&a, "1"), &s, 3).unwrap_err();
    assert!(matches!(err, CalcError::OrderUnsupported { order: 3, max: 2 }));
}

#[test]
fn t1_on_s_q_never_derives_with_minus_edges() {
    for name in ["aff1", "sl2", "sl2_borel"] {
        let s = split(name);
        let a = Ambient::from_split(&s);
        for f in ["F", "F^2", "F^3"] {
            let src = if name == "aff1" { f.replace('F', "X") } else { f.to_string() };
            let f = p(&a, &src);
            let act = module_action(Side::Left, &f, &Poly::one(&a), &s, 2).unwrap();
            assert!(!act.derives_with_minus(0), "{name}: {f}");
            assert!(act.parts[1].is_zero(), "{name}: {f}");
        }
    }
}

#[test]
fn t_operators_through_first_order() {
    let book = WeightBook::exact();
    for name in ["aff1", "sl2", "sl2_borel"] {
        let s = split(name);
        let a = Ambient::from_split(&s);
        let f = &Poly::var(&a, s.t).pow(3) + &Poly::var(&a, a.n() - 1).shift_eps(1);
        for order in 0..=1 {
            for dir in [TDirection::T1, TDirection::T1Inv, TDirection::T2] {
                assert_eq!(t_operator(dir, &f, &s, order, &book).unwrap(), f.truncate_eps(order as u32));
            }
            let back = t_operator(TDirection::T1Inv, &t_operator(TDirection::T1, &f, &s, order, &book).unwrap(), &s, order, &book);
            assert_eq!(back.unwrap(), f.truncate_eps(order as u32));
        }
    }
}

#[test]
fn second_order_t_needs_corner_weights() {
    let s = split("sl2");
    let a = Ambient::from_split(&s);
    let err = t_operator(TDirection::T1, &p(&a, "E*F"), &s, 2, &WeightBook::exact()).unwrap_err();
    match err {
        CalcError::Untabulated(names) => assert!(names.iter().all(|n| n.starts_with("corner:"))),
        e => panic!("unexpected error {e}"),
    }
    let numeric = WeightBook::new(Backend::Numeric(McConfig::new(1000, 1)));
    assert!(t_operator(TDirection::T2, &p(&a, "E*F"), &s, 2, &numeric).is_err());
}

#[test]
fn abelian_t_operators_are_the_identity() {
    let s = split("abelian");
    let a = Ambient::from_split(&s);
    let f = p(&a, "B^2*C + 3*C*eps + 1");
    for dir in [TDirection::T1, TDirection::T1Inv, TDirection::T2] {
        assert_eq!(t_operator(dir, &f, &s, 2, &WeightBook::exact()).unwrap(), f);
    }
    assert!(matches!(
        t_operator(TDirection::T1, &p(&a, "A"), &s, 1, &WeightBook::exact()),
        Err(CalcError::NotInSq(_))
    ));
}

#[test]
fn graph_operator_on_a_single_vertex() {
    // One vertex with edges to both ground points over the Heisenberg
    // algebra: B(x, y) = pi^{xy} = z.
    let s = split("heis");
    let a = Ambient::from_split(&s);
    let g: Graph = "n1=1 n2=2 edges=(1,F1,.)(1,F2,.)".parse().unwrap();
    let op = graph_operator(&g, &a, None);
    assert_eq!(op.apply2(&p(&a, "X"), &p(&a, "Y")), p(&a, "Z"));
}
