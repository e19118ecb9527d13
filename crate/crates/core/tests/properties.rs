//! Property tests for the algebraic invariants.

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::Rng;

use zxent::diagram::{
    compose_diagrams, copoint_diagram, plug, tensor_diagrams, w_family_diagram, Diagram,
};
use zxent::entangle::{
    classify_slocc, family_amplitudes, family_is_w_class, hyperdeterminant_tangle, supplementarity,
    supplementarity_numeric, tangle_report, FamilyVerdict, SloccClass, SupplementarityVerdict,
};
use zxent::evaluator::{evaluate, evaluate_in_order};
use zxent::generators::{basis_element_index, point_mult, spider};
use zxent::qtensor::{compose, proportional_eq, tensor_product};
use zxent::rewrite::{fuse_normalize, prop1_endomorphism};
use zxent::rng::{random_invertible, random_phase, random_state, seeded};
use zxent::{Color, Phase, QTensor};

/// A random open graph: every port on a random node, a few random edges
/// (self-loops and parallel edges included).
fn random_diagram(rng: &mut impl Rng, n_in: usize, n_out: usize) -> Diagram {
    let mut d = Diagram::new();
    let ins: Vec<_> = (0..n_in).map(|_| d.add_input()).collect();
    let outs: Vec<_> = (0..n_out).map(|_| d.add_output()).collect();
    let k = rng.random_range(1..=4);
    let nodes: Vec<_> = (0..k)
        .map(|_| {
            let color = if rng.random_bool(0.5) {
                Color::Z
            } else {
                Color::X
            };
            d.add_node(color, random_phase(rng))
        })
        .collect();
    for p in ins.into_iter().chain(outs) {
        d.add_edge(p, nodes[rng.random_range(0..k)]);
    }
    for _ in 0..rng.random_range(0..=k + 1) {
        d.add_edge(nodes[rng.random_range(0..k)], nodes[rng.random_range(0..k)]);
    }
    d
}

fn close(a: &QTensor, b: &QTensor, tol: f64) -> bool {
    a.sub(b)
        .map(|x| x.norm() <= tol * a.norm().max(b.norm()).max(1.0))
        .unwrap_or(false)
}

fn prop_eq(a: &QTensor, b: &QTensor, tol: f64) -> bool {
    matches!(proportional_eq(a, b, tol), Ok(Some(_)))
}

fn rational() -> impl Strategy<Value = Phase> {
    (1i64..=12).prop_flat_map(|q| (0..2 * q).prop_map(move |p| Phase::frac(p, q)))
}

fn any_phase() -> impl Strategy<Value = Phase> {
    prop_oneof![
        rational(),
        (0.0..std::f64::consts::TAU).prop_map(Phase::radians)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_functorial(seed in any::<u64>(), a in 0usize..3, m in 0usize..3, b in 0usize..3) {
        let mut rng = seeded(seed);
        let g = random_diagram(&mut rng, a, m);
        let f = random_diagram(&mut rng, m, b);
        let whole = evaluate(&compose_diagrams(&f, &g).unwrap()).unwrap();
        let parts = compose(&evaluate(&f).unwrap(), &evaluate(&g).unwrap()).unwrap();
        prop_assert!(close(&whole, &parts, 1e-10));
    }

    #[test]
    fn tensor_is_functorial(seed in any::<u64>(), a in 0usize..3, b in 0usize..3, c in 0usize..3, e in 0usize..3) {
        let mut rng = seeded(seed);
        let f = random_diagram(&mut rng, a, b);
        let g = random_diagram(&mut rng, c, e);
        let whole = evaluate(&tensor_diagrams(&f, &g).unwrap()).unwrap();
        let parts = tensor_product(&evaluate(&f).unwrap(), &evaluate(&g).unwrap());
        prop_assert!(close(&whole, &parts, 1e-10));
    }

    #[test]
    fn contraction_order_is_irrelevant(seed in any::<u64>(), n_in in 0usize..3, n_out in 0usize..3) {
        let mut rng = seeded(seed);
        let d = random_diagram(&mut rng, n_in, n_out);
        let mut order = d.node_ids();
        order.reverse();
        prop_assert!(close(&evaluate(&d).unwrap(), &evaluate_in_order(&d, &order).unwrap(), 1e-10));
    }

    #[test]
    fn file_format_round_trips(seed in any::<u64>(), n_in in 0usize..4, n_out in 0usize..4) {
        let d = random_diagram(&mut seeded(seed), n_in, n_out);
        let text = d.to_json();
        let back = Diagram::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert!(close(&evaluate(&back).unwrap(), &evaluate(&d).unwrap(), 0.0));
    }

    #[test]
    fn plugging_contracts_one_leg(a in any_phase(), b in any_phase(), g in any_phase(), phi in any_phase(), k in 0usize..3) {
        let tri = w_family_diagram(a, b, g);
        let effect = copoint_diagram(Color::X, phi);
        let plugged = evaluate(&plug(&tri, tri.outputs()[k], &effect).unwrap()).unwrap();
        let t = evaluate(&tri).unwrap();
        let e = spider(Color::X, 1, 0, phi);
        let mut want = vec![C64::new(0.0, 0.0); 4];
        for (idx, z) in t.data().iter().enumerate() {
            let bit = (idx >> (2 - k)) & 1;
            let hi = idx >> (3 - k) << (2 - k);
            let lo = idx & ((1 << (2 - k)) - 1);
            want[hi | lo] += e.data()[bit] * z;
        }
        prop_assert!(close(&plugged, &QTensor::state(want).unwrap(), 1e-12));
    }

    #[test]
    fn supplementarity_endomorphism_closed_form(xi in any_phase(), zeta in any_phase()) {
        let one = C64::new(1.0, 0.0);
        let z = C64::new(0.0, 0.0);
        let d0 = (one + (xi + zeta).exp_i()) * 0.5;
        let d1 = (xi.exp_i() + zeta.exp_i()) * 0.5;
        let want = QTensor::new(1, 1, vec![d0, z, z, d1]).unwrap();
        prop_assert!(close(&prop1_endomorphism(xi, zeta), &want, 1e-12));
    }

    #[test]
    fn supplementarity_exact_matches_numeric(q in 1i64..=24, a in 0i64..48, b in 0i64..48) {
        let (xi, zeta) = (Phase::frac(a % (2 * q), q), Phase::frac(b % (2 * q), q));
        let v = supplementarity(xi, zeta);
        prop_assert_eq!(v, supplementarity_numeric(xi, zeta, 1e-9));
        let idx = basis_element_index(&point_mult(xi, zeta), Color::Z, 1e-9);
        let want = match v {
            SupplementarityVerdict::Supp0 => Some(0),
            SupplementarityVerdict::Supp1 => Some(1),
            _ => None,
        };
        prop_assert_eq!(idx, want);
    }

    #[test]
    fn normalization_tracks_the_scalar(seed in any::<u64>(), n_in in 0usize..3, n_out in 0usize..3) {
        let d = random_diagram(&mut seeded(seed), n_in, n_out);
        let n = fuse_normalize(&d).unwrap();
        let after = evaluate(&n.diagram).unwrap().scale(n.scalar);
        prop_assert!(close(&evaluate(&d).unwrap(), &after, 1e-9));
        prop_assert!(n.diagram.node_count() <= d.node_count());
    }

    #[test]
    fn phases_form_a_group(a in rational(), b in rational(), c in any_phase()) {
        prop_assert_eq!((a + b) - b, a);
        prop_assert_eq!(a + (-a), Phase::ZERO);
        prop_assert!(((a + c).exp_i() - a.exp_i() * c.exp_i()).norm() < 1e-12);
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Phase>().unwrap(), a);
    }

    #[test]
    fn residual_equals_hyperdeterminant(seed in any::<u64>()) {
        let psi = random_state(&mut seeded(seed), 3);
        let r = tangle_report(&psi).unwrap();
        let h = hyperdeterminant_tangle(&psi).unwrap();
        for x in r.residuals() {
            prop_assert!((x - h).abs() < 1e-9);
        }
    }

    #[test]
    fn family_verdict_matches_concrete_state(a in rational(), b in rational(), g in rational()) {
        let v = family_is_w_class(a, b, g);
        let psi = family_amplitudes(a, b, g).state();
        match classify_slocc(&psi, 1e-9) {
            Err(_) => prop_assert_eq!(v, FamilyVerdict::Degenerate),
            Ok(SloccClass::Ghz) => prop_assert_eq!(v, FamilyVerdict::GhzClass),
            Ok(SloccClass::W) => prop_assert_eq!(v, FamilyVerdict::WClass),
            Ok(_) => prop_assert_eq!(v, FamilyVerdict::BiSepOrLess),
        }
    }

    #[test]
    fn local_maps_keep_the_class(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let psi = random_state(&mut rng, 3);
        let m = tensor_product(
            &tensor_product(&random_invertible(&mut rng, 8.0), &random_invertible(&mut rng, 8.0)),
            &random_invertible(&mut rng, 8.0),
        );
        let moved = compose(&m, &psi).unwrap();
        prop_assert_eq!(classify_slocc(&moved, 1e-9).unwrap(), classify_slocc(&psi, 1e-9).unwrap());
    }

    #[test]
    fn spiders_fuse(n in 0usize..3, m in 0usize..3, k in 1usize..3, a in any_phase(), b in any_phase(), x in any::<bool>()) {
        let color = if x { Color::X } else { Color::Z };
        let lower = spider(color, n, k, a);
        let upper = spider(color, k, m, b);
        let fused = spider(color, n, m, a + b);
        prop_assert!(prop_eq(&compose(&upper, &lower).unwrap(), &fused, 1e-10)
            || (fused.norm() < 1e-12 && compose(&upper, &lower).unwrap().norm() < 1e-12));
    }
}
