//! Random rule instances and the soundness sweep.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{apply_rule, check_soundness, measure, RuleId, Site};
use crate::diagram::{Diagram, Endpoint, NodeId};
use crate::error::Result;
use crate::generators::Color;
use crate::phase::Phase;
use crate::rng::{random_phase, substream};

fn random_color(rng: &mut impl Rng) -> Color {
    if rng.random_bool(0.5) {
        Color::Z
    } else {
        Color::X
    }
}

fn basis_phase(rng: &mut impl Rng) -> Phase {
    if rng.random_bool(0.5) {
        Phase::ZERO
    } else {
        Phase::PI
    }
}

/// A fresh boundary port or a context spider that carries its own port.
fn outside(d: &mut Diagram, rng: &mut impl Rng, allow_port: bool) -> Endpoint {
    if allow_port && rng.random_bool(0.5) {
        if rng.random_bool(0.5) {
            d.add_input().into()
        } else {
            d.add_output().into()
        }
    } else {
        let n = d.add_node(random_color(rng), random_phase(rng));
        let p = if rng.random_bool(0.5) {
            d.add_input()
        } else {
            d.add_output()
        };
        d.add_edge(p, n);
        n.into()
    }
}

fn legs(d: &mut Diagram, rng: &mut impl Rng, n: NodeId, count: usize) {
    for _ in 0..count {
        let e = outside(d, rng, true);
        d.add_edge(n, e);
    }
}

/// A random small diagram containing a match for `rule`, and the site.
pub fn random_instance(rule: RuleId, rng: &mut impl Rng) -> (Diagram, Site) {
    let mut d = Diagram::new();
    let site = match rule {
        RuleId::SpiderFusion => {
            let c = random_color(rng);
            let a = d.add_node(c, random_phase(rng));
            let b = d.add_node(c, random_phase(rng));
            for _ in 0..rng.random_range(1..=2) {
                d.add_edge(a, b);
            }
            let (ka, kb) = (rng.random_range(0..=2), rng.random_range(0..=2));
            legs(&mut d, rng, a, ka);
            legs(&mut d, rng, b, kb);
            Site::Pair(a, b)
        }
        RuleId::IdentityRemoval => {
            let n = d.add_node(random_color(rng), Phase::ZERO);
            let e = outside(&mut d, rng, true);
            d.add_edge(e, n);
            let e = outside(&mut d, rng, false);
            d.add_edge(n, e);
            Site::Node(n)
        }
        RuleId::SelfLoopRemoval => {
            let n = d.add_node(random_color(rng), random_phase(rng));
            for _ in 0..rng.random_range(1..=2) {
                d.add_edge(n, n);
            }
            let k = rng.random_range(0..=3);
            legs(&mut d, rng, n, k);
            Site::Node(n)
        }
        RuleId::CopyC1 | RuleId::BialgebraB2 | RuleId::BialgebraB3 => {
            let (pc, pp, sp, k) = match rule {
                RuleId::CopyC1 => (
                    random_color(rng),
                    basis_phase(rng),
                    random_phase(rng),
                    rng.random_range(0..=3),
                ),
                RuleId::BialgebraB2 => (Color::Z, Phase::ZERO, Phase::ZERO, 2),
                _ => (Color::X, Phase::ZERO, Phase::ZERO, 2),
            };
            let s = d.add_node(pc.other(), sp);
            let p = d.add_node(pc, pp);
            d.add_edge(p, s);
            legs(&mut d, rng, s, k);
            Site::Pair(p, s)
        }
        RuleId::EraseC2 => {
            let c = random_color(rng);
            let e = d.add_node(c, Phase::ZERO);
            let p = d.add_node(c.other(), basis_phase(rng));
            d.add_edge(e, p);
            // an unrelated component keeps the instance from being a bare scalar
            let m = d.add_node(random_color(rng), random_phase(rng));
            let k = rng.random_range(1..=2);
            legs(&mut d, rng, m, k);
            Site::Pair(e, p)
        }
        RuleId::HopfH => {
            let c = random_color(rng);
            let a = d.add_node(c, random_phase(rng));
            let b = d.add_node(c.other(), random_phase(rng));
            for _ in 0..rng.random_range(2..=3) {
                d.add_edge(a, b);
            }
            let (ka, kb) = (rng.random_range(0..=2), rng.random_range(0..=2));
            legs(&mut d, rng, a, ka);
            legs(&mut d, rng, b, kb);
            Site::Pair(a, b)
        }
        RuleId::BialgebraB1 => {
            let c = random_color(rng);
            let x = [d.add_node(c, Phase::ZERO), d.add_node(c, Phase::ZERO)];
            let y = [
                d.add_node(c.other(), Phase::ZERO),
                d.add_node(c.other(), Phase::ZERO),
            ];
            for &a in &x {
                for &b in &y {
                    d.add_edge(a, b);
                }
            }
            for n in x.into_iter().chain(y) {
                legs(&mut d, rng, n, 1);
            }
            Site::Quad([x[0], x[1], y[0], y[1]])
        }
    };
    (d, site)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RuleReport {
    pub rule: RuleId,
    pub instances: usize,
    pub passed: usize,
    /// Largest relative deviation from proportionality.
    pub max_deviation: f64,
    /// Largest `|λ_measured − λ_predicted|`.
    pub max_scalar_error: f64,
    /// First failure message, if any.
    pub first_failure: Option<String>,
}

impl RuleReport {
    pub fn ok(&self) -> bool {
        self.passed == self.instances
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub tolerance: f64,
    pub rules: Vec<RuleReport>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.rules.iter().all(RuleReport::ok)
    }
}

struct Outcome {
    deviation: f64,
    scalar_error: f64,
    failure: Option<String>,
}

fn run_one(rule: RuleId, seed: u64, index: u64, tol: f64) -> Result<Outcome> {
    let stream = (rule as u64) << 32 | index;
    let mut rng = substream(seed, stream);
    let (d, site) = random_instance(rule, &mut rng);
    let app = apply_rule(&d, rule, site)?;
    let (lam, deviation) = measure(&app, tol)?;
    let scalar_error = if lam.is_finite() {
        (lam - app.scalar).norm()
    } else {
        f64::INFINITY
    };
    let failure = check_soundness(&app, tol)
        .err()
        .map(|e| format!("instance {index}: {e}"));
    Ok(Outcome {
        deviation,
        scalar_error,
        failure,
    })
}

/// Check `instances` random applications of every rule. Instances run in
/// parallel and are folded in index order, so the report depends only on
/// the seed.
pub fn verify_rules(seed: u64, instances: usize, tol: f64) -> Result<VerifyReport> {
    let mut rules = Vec::new();
    for rule in RuleId::ALL {
        let outcomes: Vec<Outcome> = (0..instances as u64)
            .into_par_iter()
            .map(|i| run_one(rule, seed, i, tol))
            .collect::<Result<_>>()?;
        let mut r = RuleReport {
            rule,
            instances,
            passed: 0,
            max_deviation: 0.0,
            max_scalar_error: 0.0,
            first_failure: None,
        };
        for o in outcomes {
            r.max_deviation = r.max_deviation.max(o.deviation);
            r.max_scalar_error = r.max_scalar_error.max(o.scalar_error);
            match o.failure {
                None => r.passed += 1,
                Some(f) => {
                    r.first_failure.get_or_insert(f);
                }
            }
        }
        rules.push(r);
    }
    Ok(VerifyReport {
        seed,
        tolerance: tol,
        rules,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    #[test]
    fn every_rule_is_sound_on_a_small_sample() {
        let r = verify_rules(5, 25, 1e-9).unwrap();
        for row in &r.rules {
            assert!(row.ok(), "{row:?}");
        }
    }

    #[test]
    fn report_is_deterministic() {
        assert_eq!(
            verify_rules(9, 8, 1e-9).unwrap(),
            verify_rules(9, 8, 1e-9).unwrap()
        );
    }

    #[test]
    fn scalar_checks_are_not_vacuous() {
        let mut rng = substream(1, 1);
        let (d, site) = random_instance(RuleId::HopfH, &mut rng);
        let mut app = apply_rule(&d, RuleId::HopfH, site).unwrap();
        app.scalar = C64::new(1.0, 0.0);
        assert!(check_soundness(&app, 1e-9).is_err());
    }
}
