use graphs::{enumerate_q_n2, enumerate_reduction_family, pruned_reduction_spec, small_loop, Graph};
use lie_core::rational::qr;
use num_complex::Complex64;
use proptest::prelude::*;
use weights::*;

fn g(s: &str) -> Graph {
    s.parse().unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn angle_at_i_over_origin() {
    let v = angle(c(0.0, 1.0), c(0.0, 0.0), AngleVariant::Phi).unwrap();
    assert!((v - 0.5).abs() < 1e-15);
    assert_eq!(
        angle(c(1.0, 1.0), c(1.0, 1.0), AngleVariant::PhiPlus),
        Err(WeightError::Coincident)
    );
}

proptest! {
    #[test]
    fn plus_minus_difference(x1 in -3.0..3.0f64, y1 in 0.01..3.0f64, x2 in -3.0..3.0f64, y2 in 0.01..3.0f64) {
        let (z1, z2) = (c(x1, y1), c(x2, y2));
        prop_assume!((z1 - z2).norm() > 1e-6);
        let p = angle(z1, z2, AngleVariant::PhiPlus).unwrap();
        let m = angle(z1, z2, AngleVariant::PhiMinus).unwrap();
        prop_assert!((p - m - 2.0 * (z1 - z2.conj()).arg()).abs() < 1e-12);
    }

    #[test]
    fn phi_is_translation_dilation_invariant(
        x1 in -3.0..3.0f64, y1 in 0.01..3.0f64, x2 in -3.0..3.0f64, y2 in 0.01..3.0f64,
        a in 0.1..10.0f64, b in -5.0..5.0f64,
    ) {
        let (z1, z2) = (c(x1, y1), c(x2, y2));
        prop_assume!((z1 - z2).norm() > 1e-6);
        let t = |z: Complex64| z * a + b;
        let before = angle(z1, z2, AngleVariant::Phi).unwrap();
        let after = angle(t(z1), t(z2), AngleVariant::Phi).unwrap();
        // equal modulo the branch cut
        let d = (before - after).rem_euclid(1.0);
        prop_assert!(!(1e-12..=1.0 - 1e-12).contains(&d));
    }
}

#[test]
fn exact_table_entries() {
    let val = |s: &str| omega_exact(&g(s)).map(|w| w.exact_value().unwrap().clone());
    assert_eq!(omega_exact(&small_loop()).unwrap().exact_value(), Some(&qr(1, 2)));
    assert_eq!(val("n1=0 n2=2 edges="), Some(qr(1, 1)));
    assert_eq!(val("n1=1 n2=2 edges=(1,F1,.)(1,F2,.)"), Some(qr(1, 2)));
    assert_eq!(val("n1=1 n2=2 edges=(1,F2,+)(1,F1,+)"), Some(qr(-1, 2)));
    assert_eq!(val("n1=1 n2=2 edges=(1,F1,+)(1,F2,-)"), Some(qr(0, 1)));
    assert_eq!(val("n1=1 n2=1 edges=(1,F1,+)(1,inf,-)"), Some(qr(-1, 1)));
    assert_eq!(val("n1=1 n2=1 edges=(1,inf,-)(1,F1,+)"), Some(qr(1, 1)));
    assert_eq!(val("n1=2 n2=2 edges=(1,F1,.)(1,F2,.)(2,F2,.)(2,F1,.)"), Some(qr(-1, 4)));
    assert_eq!(val("n1=2 n2=2 edges=(1,2,.)(1,F1,.)(2,F1,.)(2,F2,.)"), None);
    // the wedge of three forms on a four-dimensional space
    assert_eq!(val("n1=2 n2=1 edges=(1,2,+)(1,F1,+)(2,F1,+)(2,1,+)"), Some(qr(0, 1)));
}

#[test]
fn every_b2_and_bw2_weight_is_tabulated() {
    let fam = enumerate_reduction_family(2, None).unwrap();
    for r in fam.b.iter().chain(&fam.bw) {
        let w = omega_exact(&r.graph).unwrap_or_else(|| panic!("{}", r.graph));
        assert_eq!(w.exact_value(), Some(&qr(0, 1)), "{}", r.graph);
    }
}

#[test]
fn exact_values_are_relabeling_invariant() {
    for r in enumerate_reduction_family(2, None).unwrap().bw {
        let a = omega_exact(&r.graph).unwrap();
        let b = omega_exact(&r.graph.relabel(&[1, 0])).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn every_provenance_has_a_note() {
    for r in enumerate_q_n2(2, true).unwrap() {
        if let Some(WeightValue { kind: WeightKind::Exact { provenance, .. }, .. }) =
            omega_exact(&r.graph)
        {
            assert!(provenance_note(&provenance).is_some(), "{provenance}");
        }
    }
}

#[test]
fn record_roundtrip() {
    let w = omega_exact(&small_loop()).unwrap();
    let text = w.to_string();
    assert_eq!(
        text,
        "graph=n1=1 n2=1 edges=(1,F1,-)(1,1,.) special=small-loop kind=exact value=1/2 provenance=small-loop"
    );
    assert_eq!(text.parse::<WeightValue>().unwrap(), w);
    let n = omega_numeric(&g("n1=1 n2=2 edges=(1,F1,.)(1,F2,.)"), &McConfig::new(1000, 3)).unwrap();
    let back: WeightValue = n.to_string().parse().unwrap();
    assert_eq!(back.graph, n.graph);
    assert!((back.estimate() - n.estimate()).abs() < 1e-6);
    assert!("graph=x kind=fuzzy".parse::<WeightValue>().is_err());
}

#[test]
fn numeric_first_order_weight() {
    let w = omega_numeric(&g("n1=1 n2=2 edges=(1,F1,.)(1,F2,.)"), &McConfig::new(200_000, 7)).unwrap();
    assert!((w.estimate() - 0.5).abs() <= 3.0 * w.stderr(), "{w}");
    assert!(w.stderr() > 0.0 && w.stderr() < 0.01);
}

#[test]
fn numeric_shortcuts() {
    let cfg = McConfig::new(10, 1);
    let empty = omega_numeric(&Graph::empty(2), &cfg).unwrap();
    assert_eq!(empty.exact_value(), Some(&qr(1, 1)));
    let wheel = g("n1=1 n2=1 edges=(1,F1,+)(1,F1,-)");
    assert_eq!(omega_numeric(&wheel, &cfg).unwrap().exact_value(), Some(&qr(0, 1)));
    assert_eq!(
        omega_numeric(&Graph::empty(2), &McConfig::new(0, 1)),
        Err(WeightError::NoSamples)
    );
}

#[test]
fn seeded_runs_are_reproducible() {
    let gr = g("n1=2 n2=2 edges=(1,2,.)(1,F1,.)(2,F1,.)(2,F2,.)");
    let cfg = McConfig::new(20_000, 11);
    let a = omega_numeric(&gr, &cfg).unwrap();
    let b = omega_numeric(&gr, &cfg).unwrap();
    assert_eq!(a, b);
    let other = omega_numeric(&gr, &McConfig::new(20_000, 12)).unwrap();
    assert_ne!(a.estimate(), other.estimate());
}

#[test]
fn stderr_halves_with_four_times_the_samples() {
    let gr = g("n1=1 n2=2 edges=(1,F1,.)(1,F2,.)");
    let a = omega_numeric(&gr, &McConfig::new(50_000, 5)).unwrap();
    let b = omega_numeric(&gr, &McConfig::new(200_000, 5)).unwrap();
    let ratio = b.stderr() / a.stderr();
    assert!((0.4..0.6).contains(&ratio), "{ratio}");
}

#[test]
fn tabulated_low_order_weights_agree_with_sampling() {
    let cfg = McConfig::new(100_000, 21);
    let mut graphs: Vec<Graph> = enumerate_q_n2(1, true).unwrap().into_iter().map(|r| r.graph).collect();
    let fam = enumerate_reduction_family(2, Some(&pruned_reduction_spec(2))).unwrap();
    graphs.extend(fam.bw.into_iter().map(|r| r.graph));
    for gr in graphs {
        let exact = omega_exact(&gr).unwrap();
        let num = omega_numeric(&gr, &cfg).unwrap();
        let tol = 4.0 * num.stderr() + 1e-12;
        assert!((exact.estimate() - num.estimate()).abs() <= tol, "{exact} vs {num}");
    }
}

#[test]
fn integrand_matches_the_angle_jacobian() {
    // one vertex over two ground points: density 4y / (|z|^2 |z-1|^2)
    let gr = g("n1=1 n2=2 edges=(1,F1,.)(1,F2,.)");
    let (x, y) = (0.3, 0.7);
    let expected = 4.0 * y / ((x * x + y * y) * ((x - 1.0) * (x - 1.0) + y * y));
    assert!((integrand_at(&gr, &[x, y]).unwrap() - expected).abs() < 1e-12);
}
