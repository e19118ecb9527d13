//! Checks against values computed without the library's own formulas.

use num_complex::Complex64 as C64;

use zxent::entangle::{concurrence, pairwise_tangle, scan_family, tangle_report, FamilyVerdict};
use zxent::rng::{random_state, seeded, substream};
use zxent::QTensor;

/// `|vᵀ (σy⊗σy) v|`, the concurrence of an unnormalized pure two-qubit vector
/// times its squared norm.
fn spin_flip_overlap(v: &[C64; 4]) -> f64 {
    // σy⊗σy in the computational basis is the anti-diagonal (-1, 1, 1, -1)
    (-v[0] * v[3] + v[1] * v[2] + v[2] * v[1] - v[3] * v[0]).norm()
}

/// Average concurrence of the two-element decomposition obtained by mixing
/// `u` and `v` with the unitary `[[c, e^{iφ}s], [-s, e^{iφ}c]]`.
fn decomposition_average(u: &[C64; 4], v: &[C64; 4], theta: f64, phi: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let e = C64::from_polar(1.0, phi);
    let w1: [C64; 4] = std::array::from_fn(|k| u[k] * c + v[k] * e * s);
    let w2: [C64; 4] = std::array::from_fn(|k| -u[k] * s + v[k] * e * c);
    spin_flip_overlap(&w1) + spin_flip_overlap(&w2)
}

/// Minimum over all two-element decompositions of `uu† + vv†`, by a zooming
/// grid search. For rank-two states two elements reach the convex roof.
fn brute_force_concurrence(u: &[C64; 4], v: &[C64; 4]) -> f64 {
    let (mut t0, mut t1) = (0.0, std::f64::consts::PI);
    let (mut p0, mut p1) = (0.0, std::f64::consts::TAU);
    let n = 48;
    let mut best = (f64::MAX, 0.0, 0.0);
    for _ in 0..10 {
        for i in 0..=n {
            for j in 0..=n {
                let t = t0 + (t1 - t0) * i as f64 / n as f64;
                let p = p0 + (p1 - p0) * j as f64 / n as f64;
                let val = decomposition_average(u, v, t, p);
                if val < best.0 {
                    best = (val, t, p);
                }
            }
        }
        let (dt, dp) = ((t1 - t0) / 8.0, (p1 - p0) / 8.0);
        (t0, t1) = (best.1 - dt, best.1 + dt);
        (p0, p1) = (best.2 - dp, best.2 + dp);
    }
    best.0
}

fn outer_sum(u: &[C64; 4], v: &[C64; 4]) -> QTensor {
    let data = (0..16)
        .map(|k| u[k / 4] * u[k % 4].conj() + v[k / 4] * v[k % 4].conj())
        .collect();
    QTensor::new(2, 2, data).unwrap()
}

fn vec4(t: &QTensor, scale: f64) -> [C64; 4] {
    std::array::from_fn(|k| t.data()[k] * scale)
}

#[test]
fn concurrence_matches_convex_roof_on_rank_two_states() {
    let mut entangled = 0;
    for i in 0..20 {
        let mut rng = substream(314, i);
        let p: f64 = 0.15 + 0.7 * (i as f64 / 19.0);
        let u = vec4(&random_state(&mut rng, 2), p.sqrt());
        let v = vec4(&random_state(&mut rng, 2), (1.0 - p).sqrt());
        let rho = outer_sum(&u, &v);
        let got = concurrence(&rho).unwrap();
        let want = brute_force_concurrence(&u, &v);
        assert!(
            (got - want).abs() < 1e-6,
            "state {i}: formula {got}, convex roof {want}"
        );
        entangled += usize::from(want > 0.05);
    }
    assert!(entangled >= 5, "only {entangled} entangled samples");
}

#[test]
fn pairwise_tangle_matches_convex_roof() {
    // ρ_AB = φ0φ0† + φ1φ1† with φ_k the slices of ψ at qubit C = k
    for i in 0..20 {
        let psi = random_state(&mut seeded(1000 + i), 3);
        let d = psi.data();
        let u = [d[0], d[2], d[4], d[6]];
        let v = [d[1], d[3], d[5], d[7]];
        let c = brute_force_concurrence(&u, &v);
        assert!((pairwise_tangle(&psi, 0, 1).unwrap() - c * c).abs() < 1e-6);
    }
}

#[test]
fn w_state_tangles_by_hand() {
    // ρ_A = diag(1/3, 2/3), so 4 det ρ_A = 8/9; each pair has concurrence 2/3.
    let s = 1.0 / 3f64.sqrt();
    let z = C64::new(0.0, 0.0);
    let amp = C64::new(s, 0.0);
    let w = QTensor::state(vec![z, z, z, amp, z, amp, amp, z]).unwrap();
    let r = tangle_report(&w).unwrap();
    for t in [r.tau_a_bc, r.tau_b_ca, r.tau_c_ab] {
        assert!((t - 8.0 / 9.0).abs() < 1e-12);
    }
    for t in [r.tau_ab, r.tau_ac, r.tau_bc] {
        assert!((t - 4.0 / 9.0).abs() < 1e-12);
    }
}

/// Counts on the q = 2 grid from integer arithmetic alone.
///
/// In units of π/2 with `x = a + b + g`, the four vanishing conditions read
/// `x ≡ 2`, `2g ≡ x + 2`, `2a ≡ x + 2`, `2b ≡ x + 2` (mod 4). Odd `x` meets
/// none of them (32 triples, GHZ). For even `x` the number of odd
/// coordinates is 0 or 2, so exactly one condition never holds: no point is
/// W-class. `x ≡ 0` with all coordinates even gives 4 more GHZ points,
/// `x ≡ 2` with all even kills every amplitude (4 degenerate points), and
/// the remaining 24 meet exactly two conditions.
#[test]
fn q2_grid_counts_by_hand() {
    let mut held_counts = [0usize; 5];
    for a in 0..4i64 {
        for b in 0..4i64 {
            for g in 0..4i64 {
                let x = a + b + g;
                let held = [x, 2 * g - x, 2 * a - x, 2 * b - x]
                    .iter()
                    .filter(|&&e| e.rem_euclid(4) == 2)
                    .count();
                held_counts[held] += 1;
            }
        }
    }
    assert_eq!(held_counts, [36, 0, 24, 0, 4]);

    let r = scan_family(2).unwrap();
    assert_eq!(r.points.len(), 64);
    assert_eq!(r.count(FamilyVerdict::GhzClass), 36);
    assert_eq!(r.count(FamilyVerdict::WClass), 0);
    assert_eq!(r.count(FamilyVerdict::BiSepOrLess), 24);
    assert_eq!(r.count(FamilyVerdict::Degenerate), 4);
}

#[test]
fn q6_grid_contains_the_named_points() {
    let r = scan_family(6).unwrap();
    let at = |p: [i64; 3]| r.points.iter().find(|x| x.p == p).unwrap().verdict;
    assert_eq!(at([2, 2, 2]), FamilyVerdict::WClass);
    assert_eq!(at([0, 0, 6]), FamilyVerdict::Degenerate);
    assert_eq!(at([0, 0, 0]), FamilyVerdict::GhzClass);
    assert!(r.mismatches().is_empty());
}
