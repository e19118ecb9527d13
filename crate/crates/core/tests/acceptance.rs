//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::ffi::OsString;
use std::time::Instant;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use zxent::cli::run_with;
use zxent::diagram::{ghz_diagram, w_family_diagram};
use zxent::entangle::{
    classify_slocc, family_amplitudes, family_conditions, family_is_w_class, ghz_witness,
    plug_corner_analysis, scan_family, supplementarity, tangle_report, three_tangle, FamilyVerdict,
    SloccClass,
};
use zxent::evaluator::evaluate;
use zxent::generators::{lambda_map, point_mult};
use zxent::qtensor::{compose, tensor_product};
use zxent::rewrite::{is_disconnected, prop1_endomorphism, verify_rules};
use zxent::rng::{
    random_invertible, random_phase, random_rational_phase, random_state, seeded, substream,
};
use zxent::wfrob::{
    build_w_algebra, loop_value, pi_loop_scalar, verify_frobenius, verify_orthogonality, LoopClass,
};
use zxent::{Color, Error, Phase, QTensor};

const SEED: u64 = 20100;
const FIDELITY_TOL: f64 = 1e-12;
const AMPLITUDE_REL_TOL: f64 = 1e-9;
const TANGLE_TOL: f64 = 1e-9;
const ZERO_TANGLE_TOL: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-9;
const RULE_TOL: f64 = 1e-9;
const ENDOMORPHISM_TOL: f64 = 1e-12;
const DISCONNECT_TOL: f64 = 1e-9;
const CLASS_TOL: f64 = 1e-9;
const WITNESS_TOL: f64 = 1e-8;
const FROBENIUS_TOL: f64 = 1e-9;
const SPECIAL_MARGIN: f64 = 0.1;
const PI_LOOP_TOL: f64 = 1e-14;

type Outcome = Result<String, String>;

fn check(ok: bool, pass: String, fail: String) -> Outcome {
    if ok {
        Ok(pass)
    } else {
        Err(fail)
    }
}

fn real_state(v: &[f64]) -> QTensor {
    QTensor::state(v.iter().map(|&x| C64::new(x, 0.0)).collect()).unwrap()
}

fn fidelity(a: &QTensor, b: &QTensor) -> f64 {
    let ov = a.inner(b).unwrap().norm();
    ov * ov / (a.norm() * a.norm() * b.norm() * b.norm())
}

fn ghz_construction() -> Outcome {
    let f = fidelity(
        &evaluate(&ghz_diagram(Color::Z)).unwrap(),
        &real_state(&[1., 0., 0., 0., 0., 0., 0., 1.]),
    );
    check(
        1.0 - f <= FIDELITY_TOL,
        format!("fidelity {f:.15}"),
        format!("fidelity {f}"),
    )
}

fn w_construction() -> Outcome {
    let t = Phase::frac(1, 3);
    let ev = evaluate(&w_family_diagram(t, t, t)).unwrap();
    let f = fidelity(&ev, &real_state(&[0., 0., 0., 1., 0., 1., 1., 0.]));
    check(
        1.0 - f <= FIDELITY_TOL,
        format!("fidelity {f:.15}"),
        format!("fidelity {f}"),
    )
}

fn family_amplitudes_match() -> Outcome {
    // three phase-free X spiders with three legs each
    let kappa = 2f64.powf(-1.5);
    let mut worst = 0.0f64;
    let mut rng = seeded(SEED);
    for _ in 0..1000 {
        let [a, b, g] = [0; 3].map(|_| random_rational_phase(&mut rng, 12));
        let ev = evaluate(&w_family_diagram(a, b, g)).unwrap();
        let want = family_amplitudes(a, b, g)
            .state()
            .scale(C64::new(kappa, 0.0));
        let err = ev.sub(&want).unwrap().norm() / want.norm().max(1.0);
        worst = worst.max(err);
    }
    check(
        worst <= AMPLITUDE_REL_TOL,
        format!("1000 triples, max rel err {worst:.1e}"),
        format!("max rel err {worst:.3e}"),
    )
}

fn tangle_values() -> Outcome {
    let ghz = real_state(&[1., 0., 0., 0., 0., 0., 0., 1.])
        .normalized()
        .unwrap();
    let w = real_state(&[0., 0., 0., 1., 0., 1., 1., 0.])
        .normalized()
        .unwrap();
    let tg = three_tangle(&ghz).unwrap();
    let tw = three_tangle(&w).unwrap();
    let r = tangle_report(&w).unwrap();
    let ones = [r.tau_a_bc, r.tau_b_ca, r.tau_c_ab];
    let pairs = [r.tau_ab, r.tau_ac, r.tau_bc];
    let ok = (tg - 1.0).abs() <= TANGLE_TOL
        && tw <= TANGLE_TOL
        && ones.iter().all(|t| (t - 8.0 / 9.0).abs() <= TANGLE_TOL)
        && pairs.iter().all(|t| (t - 4.0 / 9.0).abs() <= TANGLE_TOL);
    check(
        ok,
        format!(
            "GHZ {tg:.12}, W {tw:.1e}, W one-vs-rest {:.12}, W pairwise {:.12}",
            ones[0], pairs[0]
        ),
        format!("GHZ {tg}, W {tw}, W report {r:?}"),
    )
}

fn constraint_planes() -> Outcome {
    let q = 12;
    let r = scan_family(q).unwrap();
    let mut disagreements = 0;
    let mut degenerate = 0;
    for p in &r.points {
        let [a, b, g] = p.p.map(|k| Phase::frac(k, q));
        let on_plane = family_conditions(a, b, g).iter().any(|&c| c);
        match p.numeric_tangle {
            None => {
                degenerate += 1;
                if p.verdict != FamilyVerdict::Degenerate {
                    disagreements += 1;
                }
            }
            Some(t) => {
                if (t < ZERO_TANGLE_TOL) != on_plane {
                    disagreements += 1;
                }
            }
        }
    }
    check(
        disagreements == 0,
        format!(
            "{} grid points, zero-tangle set = plane set, {degenerate} degenerate reported apart",
            r.points.len()
        ),
        format!("{disagreements} disagreements"),
    )
}

fn tangle_identities() -> Outcome {
    let mut spread = 0.0f64;
    let mut worst_ckw = f64::MAX;
    for i in 0..1000 {
        let psi = random_state(&mut substream(SEED, i), 3);
        let r = tangle_report(&psi).unwrap();
        let res = r.residuals();
        let hi = res.iter().cloned().fold(f64::MIN, f64::max);
        let lo = res.iter().cloned().fold(f64::MAX, f64::min);
        spread = spread.max(hi - lo);
        worst_ckw = worst_ckw.min(lo);
    }
    check(
        spread <= RESIDUAL_TOL && worst_ckw >= -RESIDUAL_TOL,
        format!("1000 states, residual spread {spread:.1e}, min residual {worst_ckw:.1e}"),
        format!("residual spread {spread:.3e}, min residual {worst_ckw:.3e}"),
    )
}

fn rule_soundness() -> Outcome {
    let r = verify_rules(SEED, 100, RULE_TOL).unwrap();
    let worst = r.rules.iter().map(|x| x.max_deviation).fold(0.0, f64::max);
    let failed: Vec<_> = r
        .rules
        .iter()
        .filter(|x| !x.ok())
        .map(|x| x.rule.name())
        .collect();
    check(
        r.ok(),
        format!("9 rules x 100 instances, max deviation {worst:.1e}"),
        format!("failing rules {failed:?}"),
    )
}

fn supplementarity_endomorphism() -> Outcome {
    let mut worst = 0.0f64;
    let mut rng = seeded(SEED);
    for _ in 0..200 {
        let (xi, zeta) = (random_phase(&mut rng), random_phase(&mut rng));
        let want = lambda_map(Color::Z, &point_mult(xi, zeta)).scale(C64::new(0.5, 0.0));
        worst = worst.max(prop1_endomorphism(xi, zeta).sub(&want).unwrap().norm());
    }
    let q = 24;
    let mut wrong = 0;
    for a in 0..2 * q {
        for b in 0..2 * q {
            let (xi, zeta) = (Phase::frac(a, q), Phase::frac(b, q));
            if is_disconnected(&prop1_endomorphism(xi, zeta), DISCONNECT_TOL)
                != supplementarity(xi, zeta).disconnects()
            {
                wrong += 1;
            }
        }
    }
    check(
        worst <= ENDOMORPHISM_TOL && wrong == 0,
        format!(
            "200 pairs max err {worst:.1e}; {} grid pairs, disconnection = supplementarity",
            4 * q * q
        ),
        format!("max err {worst:.3e}, {wrong} grid disagreements"),
    )
}

fn local(rng: &mut impl rand::Rng) -> QTensor {
    let a = random_invertible(rng, 10.0);
    let b = random_invertible(rng, 10.0);
    let c = random_invertible(rng, 10.0);
    tensor_product(&tensor_product(&a, &b), &c)
}

fn slocc_and_witness() -> Outcome {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let reps = [
        (
            SloccClass::Ghz,
            real_state(&[1., 0., 0., 0., 0., 0., 0., 1.]),
        ),
        (SloccClass::W, real_state(&[0., 1., 1., 0., 1., 0., 0., 0.])),
        (
            SloccClass::BiSepABc,
            real_state(&[s, 0., 0., s, 0., 0., 0., 0.]),
        ),
        (
            SloccClass::BiSepBCa,
            real_state(&[s, 0., 0., 0., 0., s, 0., 0.]),
        ),
        (
            SloccClass::BiSepCAb,
            real_state(&[s, 0., 0., 0., 0., 0., s, 0.]),
        ),
        (
            SloccClass::Product,
            real_state(&[1., 0., 0., 0., 0., 0., 0., 0.]),
        ),
    ];
    let mut changed = Vec::new();
    for (k, (class, psi)) in reps.iter().enumerate() {
        for i in 0..50 {
            let m = local(&mut substream(SEED, (k as u64) << 16 | i));
            let moved = compose(&m, psi).unwrap().normalized().unwrap();
            let got = classify_slocc(&moved, CLASS_TOL).unwrap();
            if got != *class {
                changed.push(format!("{class}->{got}"));
            }
        }
    }
    let mut rng = seeded(SEED ^ 9);
    let mut worst = 0.0f64;
    let mut witnessed = 0;
    while witnessed < 100 {
        let [a, b, g] = [0; 3].map(|_| random_rational_phase(&mut rng, 12));
        if family_is_w_class(a, b, g) != FamilyVerdict::GhzClass {
            continue;
        }
        let psi = family_amplitudes(a, b, g).state().normalized().unwrap();
        match ghz_witness(&psi) {
            Ok(w) => worst = worst.max(w.reconstruct().sub(&psi).unwrap().norm()),
            Err(_) => worst = f64::INFINITY,
        }
        witnessed += 1;
    }
    let t = Phase::frac(1, 3);
    let w = family_amplitudes(t, t, t).state().normalized().unwrap();
    let refuses = matches!(ghz_witness(&w), Err(Error::NoWitness(_)));
    check(
        changed.is_empty() && worst <= WITNESS_TOL && refuses,
        format!("6 classes x 50 local maps invariant; 100 GHZ-class witnesses, max err {worst:.1e}; W refused"),
        format!("class changes {changed:?}, witness err {worst:.3e}, W refused {refuses}"),
    )
}

fn w_frobenius() -> Outcome {
    let w = build_w_algebra();
    let r = verify_frobenius(&w, FROBENIUS_TOL);
    let lv = loop_value(&w, FROBENIUS_TOL);
    let pz = pi_loop_scalar(Color::Z).norm();
    let px = pi_loop_scalar(Color::X).norm();
    let orth = verify_orthogonality();
    let ok = r.axioms_hold()
        && !r.special
        && r.special_margin > SPECIAL_MARGIN
        && lv.classification == LoopClass::RankOne
        && pz < PI_LOOP_TOL
        && px < PI_LOOP_TOL
        && orth;
    check(
        ok,
        format!("axioms hold, special margin {:.4}, loop rank-one, pi loops {pz:.0e}/{px:.0e}, orthogonal", r.special_margin),
        format!("report {r:?}, loop {}, pi loops {pz:e}/{px:e}, orthogonal {orth}", lv.classification),
    )
}

fn corner_plugging() -> Outcome {
    let q = 12;
    let m = 2 * q;
    let bad: Vec<_> = (0..m * m * m * 3)
        .into_par_iter()
        .filter_map(|i| {
            let corner = (i % 3) as usize;
            let t = i / 3;
            let [a, b, g] = [t / (m * m), (t / m) % m, t % m].map(|k| Phase::frac(k, q));
            let c = plug_corner_analysis(a, b, g, corner).unwrap();
            (!c.consistent()).then_some((a, b, g, corner))
        })
        .collect();
    check(
        bad.is_empty(),
        format!(
            "{} plugged corners, rank <= 1 exactly where supplementary",
            m * m * m * 3
        ),
        format!("{} mismatches, first {:?}", bad.len(), bad.first()),
    )
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = ["zxent", "--format", "machine", "--seed", "77"]
        .iter()
        .chain(args)
        .map(OsString::from);
    let code = run_with(argv, &mut out, &mut err);
    (code, out)
}

fn determinism() -> Outcome {
    let suites: [&[&str]; 9] = [
        &["verify-rules", "--instances", "20"],
        &["scan", "--denominator", "6"],
        &["random-state", "--qubits", "5"],
        &[
            "family", "--alpha", "1/7", "--beta", "2/7", "--gamma", "3/7", "--report",
        ],
        &[
            "square4", "--alpha", "1/2", "--beta", "0", "--gamma", "1/4", "--delta", "1/4",
        ],
        &["supp", "1/3", "2/3"],
        &["wfrob-check"],
        &["verify-rules", "--instances", "20", "--workers", "4"],
        &["scan", "--denominator", "6", "--workers", "4"],
    ];
    let mut differing = Vec::new();
    let mut outputs = Vec::new();
    for s in suites {
        let a = cli(s);
        let b = cli(s);
        if a != b || a.0 != 0 {
            differing.push(s.join(" "));
        }
        outputs.push(a.1);
    }
    let strip = |o: &[u8]| {
        o.split(|&c| c == b'\n')
            .skip(1)
            .map(|l| l.to_vec())
            .collect::<Vec<_>>()
    };
    if strip(&outputs[0]) != strip(&outputs[7]) || strip(&outputs[1]) != strip(&outputs[8]) {
        differing.push("worker count changes output".into());
    }
    check(
        differing.is_empty(),
        format!(
            "{} suites byte-identical across runs and worker counts",
            suites.len()
        ),
        format!("differences: {differing:?}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("GHZ construction", ghz_construction),
        ("W construction", w_construction),
        ("family amplitudes", family_amplitudes_match),
        ("3-tangle values", tangle_values),
        ("constraint planes", constraint_planes),
        ("tangle identities", tangle_identities),
        ("rule soundness", rule_soundness),
        ("supplementarity endomorphism", supplementarity_endomorphism),
        ("SLOCC invariance and witness", slocc_and_witness),
        ("W Frobenius algebra", w_frobenius),
        ("corner plugging", corner_plugging),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
