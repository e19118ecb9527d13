//! Site-directed rewrite rules with tracked scalars.
//!
//! Every rule application records the scalar `λ` with
//! `evaluate(before) = λ · evaluate(after)` under the spider convention.
//! Fusion, identity removal and loop removal are exact (`λ = 1`). The
//! remaining laws hold up to the constants below.

mod fuzz;

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::diagram::{ensure_valid, validate, Diagram, Endpoint, NodeId};
use crate::error::{Error, Result};
use crate::evaluator::evaluate;
use crate::generators::Color;
use crate::phase::Phase;
use crate::qtensor::{proportional_fit, QTensor};

pub use fuzz::{random_instance, verify_rules, RuleReport, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RuleId {
    SpiderFusion,
    IdentityRemoval,
    SelfLoopRemoval,
    CopyC1,
    EraseC2,
    HopfH,
    BialgebraB1,
    BialgebraB2,
    BialgebraB3,
}

impl RuleId {
    pub const ALL: [RuleId; 9] = [
        RuleId::SpiderFusion,
        RuleId::IdentityRemoval,
        RuleId::SelfLoopRemoval,
        RuleId::CopyC1,
        RuleId::EraseC2,
        RuleId::HopfH,
        RuleId::BialgebraB1,
        RuleId::BialgebraB2,
        RuleId::BialgebraB3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::SpiderFusion => "spider-fusion",
            RuleId::IdentityRemoval => "identity-removal",
            RuleId::SelfLoopRemoval => "self-loop-removal",
            RuleId::CopyC1 => "copy-C1",
            RuleId::EraseC2 => "erase-C2",
            RuleId::HopfH => "hopf-H",
            RuleId::BialgebraB1 => "bialgebra-B1",
            RuleId::BialgebraB2 => "bialgebra-B2",
            RuleId::BialgebraB3 => "bialgebra-B3",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown rule `{s}`")))
    }
}

/// The matched nodes.
///
/// - fusion: `Pair(a, b)`, `b` is merged into `a`
/// - identity and loop removal: `Node(n)`
/// - C1, B2, B3: `Pair(point, spider)`
/// - C2: `Pair(counit, point)`
/// - H: `Pair(a, b)` of opposite colors joined by at least two edges
/// - B1: `Quad([x1, x2, y1, y2])`, the two `x` sharing a color
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    Node(NodeId),
    Pair(NodeId, NodeId),
    Quad([NodeId; 4]),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub site: Site,
    pub before: Diagram,
    pub after: Diagram,
    /// Predicted `λ` with `evaluate(before) = λ · evaluate(after)`.
    pub scalar: C64,
}

/// `λ` for the Hopf law.
pub const HOPF_SCALAR: f64 = 0.5;
/// `λ` for the bialgebra laws.
pub const BIALGEBRA_SCALAR: f64 = FRAC_1_SQRT_2;
/// `λ` for erasing a basis point.
pub const ERASE_SCALAR: f64 = SQRT_2;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn no_match(rule: RuleId, why: impl fmt::Display) -> Error {
    Error::Match(format!("{rule}: {why}"))
}

fn node(d: &Diagram, rule: RuleId, id: NodeId) -> Result<crate::diagram::Node> {
    d.node(id)
        .copied()
        .ok_or_else(|| no_match(rule, format!("node {id} not found")))
}

fn is_basis_phase(p: Phase) -> bool {
    p.is_zero() || p.is_pi()
}

/// Apply `rule` at `site`.
pub fn apply_rule(d: &Diagram, rule: RuleId, site: Site) -> Result<RuleApplication> {
    ensure_valid(d)?;
    let (after, scalar) = match (rule, site) {
        (RuleId::SpiderFusion, Site::Pair(a, b)) => fuse(d, a, b)?,
        (RuleId::IdentityRemoval, Site::Node(n)) => remove_identity(d, n)?,
        (RuleId::SelfLoopRemoval, Site::Node(n)) => remove_loop(d, n)?,
        (RuleId::CopyC1, Site::Pair(p, s)) => copy(d, rule, p, s)?,
        (RuleId::BialgebraB2, Site::Pair(p, s)) => {
            check_unit_copy(d, rule, p, s, Color::Z)?;
            copy(d, rule, p, s)?
        }
        (RuleId::BialgebraB3, Site::Pair(p, s)) => {
            check_unit_copy(d, rule, p, s, Color::X)?;
            copy(d, rule, p, s)?
        }
        (RuleId::EraseC2, Site::Pair(e, p)) => erase(d, e, p)?,
        (RuleId::HopfH, Site::Pair(a, b)) => hopf(d, a, b)?,
        (RuleId::BialgebraB1, Site::Quad(q)) => bialgebra(d, q)?,
        _ => return Err(no_match(rule, "wrong kind of site for this rule")),
    };
    let v = validate(&after);
    if !v.is_empty() {
        return Err(no_match(
            rule,
            "the rewritten diagram would not be well formed",
        ));
    }
    Ok(RuleApplication {
        rule,
        site,
        before: d.clone(),
        after,
        scalar,
    })
}

fn fuse(d: &Diagram, a: NodeId, b: NodeId) -> Result<(Diagram, C64)> {
    let r = RuleId::SpiderFusion;
    let (na, nb) = (node(d, r, a)?, node(d, r, b)?);
    if a == b {
        return Err(no_match(r, "a node cannot fuse with itself"));
    }
    if na.color != nb.color {
        return Err(no_match(r, "spiders have different colors"));
    }
    let between = d.edges_between(a, b);
    let Some(&first) = between.first() else {
        return Err(no_match(r, "spiders are not adjacent"));
    };
    let mut out = d.clone();
    out.remove_edges(&[first]);
    out.redirect(b.into(), a.into());
    out.remove_node(b);
    out.node_mut(a).expect("kept").phase = na.phase + nb.phase;
    Ok((out, c(1.0)))
}

fn remove_identity(d: &Diagram, n: NodeId) -> Result<(Diagram, C64)> {
    let r = RuleId::IdentityRemoval;
    let nd = node(d, r, n)?;
    if !nd.phase.is_zero() {
        return Err(no_match(r, "phase is not zero"));
    }
    if d.degree(n) != 2 || !d.self_loops(n).is_empty() {
        return Err(no_match(r, "not a plain degree-2 spider"));
    }
    let nb = d.neighbors(n);
    let mut out = d.clone();
    out.remove_node(n);
    out.add_edge(nb[0], nb[1]);
    Ok((out, c(1.0)))
}

fn remove_loop(d: &Diagram, n: NodeId) -> Result<(Diagram, C64)> {
    let r = RuleId::SelfLoopRemoval;
    node(d, r, n)?;
    let loops = d.self_loops(n);
    let Some(&l) = loops.first() else {
        return Err(no_match(r, "no self-loop"));
    };
    let mut out = d.clone();
    out.remove_edges(&[l]);
    Ok((out, c(1.0)))
}

fn check_unit_copy(
    d: &Diagram,
    rule: RuleId,
    p: NodeId,
    s: NodeId,
    point_color: Color,
) -> Result<()> {
    let (np, ns) = (node(d, rule, p)?, node(d, rule, s)?);
    if np.color != point_color || !np.phase.is_zero() {
        return Err(no_match(
            rule,
            format!("expected a phase-free {point_color} point"),
        ));
    }
    if !ns.phase.is_zero() || d.degree(s) != 3 {
        return Err(no_match(rule, "expected a phase-free degree-3 spider"));
    }
    Ok(())
}

fn copy(d: &Diagram, rule: RuleId, p: NodeId, s: NodeId) -> Result<(Diagram, C64)> {
    let (np, ns) = (node(d, rule, p)?, node(d, rule, s)?);
    if np.color == ns.color {
        return Err(no_match(rule, "point and spider must have opposite colors"));
    }
    if !is_basis_phase(np.phase) {
        return Err(no_match(
            rule,
            "the point is not a basis element (phase 0 or π)",
        ));
    }
    if d.degree(p) != 1 || d.edges_between(p, s).len() != 1 {
        return Err(no_match(
            rule,
            "the point must be attached only to the spider",
        ));
    }
    if !d.self_loops(s).is_empty() {
        return Err(no_match(rule, "the spider carries a self-loop"));
    }
    let legs: Vec<Endpoint> = d
        .neighbors(s)
        .into_iter()
        .filter(|&e| e != Endpoint::Node(p))
        .collect();
    let mut out = d.clone();
    out.remove_node(p);
    out.remove_node(s);
    for e in &legs {
        let q = out.add_node(np.color, np.phase);
        out.add_edge(q, *e);
    }
    let n = legs.len() as i32;
    let mut lam = c(SQRT_2.powi(1 - n));
    if np.phase.is_pi() {
        lam *= ns.phase.exp_i();
    }
    Ok((out, lam))
}

fn erase(d: &Diagram, e: NodeId, p: NodeId) -> Result<(Diagram, C64)> {
    let r = RuleId::EraseC2;
    let (ne, np) = (node(d, r, e)?, node(d, r, p)?);
    if ne.color == np.color {
        return Err(no_match(r, "counit and point must have opposite colors"));
    }
    if !ne.phase.is_zero() || !is_basis_phase(np.phase) {
        return Err(no_match(r, "needs a phase-free counit and a basis point"));
    }
    if d.degree(e) != 1 || d.degree(p) != 1 || d.edges_between(e, p).len() != 1 {
        return Err(no_match(r, "counit and point must form an isolated pair"));
    }
    let mut out = d.clone();
    out.remove_node(e);
    out.remove_node(p);
    Ok((out, c(ERASE_SCALAR)))
}

fn hopf(d: &Diagram, a: NodeId, b: NodeId) -> Result<(Diagram, C64)> {
    let r = RuleId::HopfH;
    let (na, nb) = (node(d, r, a)?, node(d, r, b)?);
    if na.color == nb.color {
        return Err(no_match(r, "spiders must have opposite colors"));
    }
    let between = d.edges_between(a, b);
    if between.len() < 2 {
        return Err(no_match(r, "needs a doubled edge"));
    }
    let mut out = d.clone();
    out.remove_edges(&between[..2]);
    Ok((out, c(HOPF_SCALAR)))
}

fn bialgebra(d: &Diagram, q: [NodeId; 4]) -> Result<(Diagram, C64)> {
    let r = RuleId::BialgebraB1;
    let ns = q
        .iter()
        .map(|&n| node(d, r, n))
        .collect::<Result<Vec<_>>>()?;
    let [x1, x2, y1, y2] = q;
    if ns[0].color != ns[1].color || ns[2].color != ns[3].color || ns[0].color == ns[2].color {
        return Err(no_match(r, "needs two spiders of each color"));
    }
    if ns.iter().any(|n| !n.phase.is_zero()) {
        return Err(no_match(r, "all four spiders must be phase-free"));
    }
    let mut distinct = q.to_vec();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != 4 {
        return Err(no_match(r, "site lists a node twice"));
    }
    for x in [x1, x2] {
        for y in [y1, y2] {
            if d.edges_between(x, y).len() != 1 {
                return Err(no_match(r, "site is not a complete bipartite square"));
            }
        }
    }
    let mut ext = Vec::new();
    for n in q {
        if d.degree(n) != 3 || !d.self_loops(n).is_empty() {
            return Err(no_match(r, "each spider needs exactly one outside leg"));
        }
        let outside: Vec<Endpoint> = d
            .neighbors(n)
            .into_iter()
            .filter(|e| !q.iter().any(|m| Endpoint::Node(*m) == *e))
            .collect();
        if outside.len() != 1 {
            return Err(no_match(r, "each spider needs exactly one outside leg"));
        }
        ext.push(outside[0]);
    }
    let mut out = d.clone();
    for n in q {
        out.remove_node(n);
    }
    // the x-side legs meet at a spider of the y color and vice versa
    let ny = out.add_node(ns[2].color, Phase::ZERO);
    let nx = out.add_node(ns[0].color, Phase::ZERO);
    out.add_edge(ext[0], ny);
    out.add_edge(ext[1], ny);
    out.add_edge(nx, ext[2]);
    out.add_edge(nx, ext[3]);
    out.add_edge(ny, nx);
    Ok((out, c(BIALGEBRA_SCALAR)))
}

/// Evaluate both sides and return the measured `λ`, failing when the sides
/// are not proportional within `tol` or `λ` differs from the prediction.
pub fn check_soundness(app: &RuleApplication, tol: f64) -> Result<C64> {
    let (lam, dev) = measure(app, tol)?;
    if dev > tol {
        return Err(Error::Soundness(format!(
            "{}: sides not proportional (deviation {dev:.3e})",
            app.rule
        )));
    }
    if (lam - app.scalar).norm() > tol * app.scalar.norm().max(1.0) {
        return Err(Error::Soundness(format!(
            "{}: measured λ = {lam} but predicted {}",
            app.rule, app.scalar
        )));
    }
    Ok(lam)
}

/// Below this norm an evaluated side is the zero tensor up to rounding.
const ZERO_NORM: f64 = 1e-12;

/// `λ` and relative deviation of `evaluate(before) ≈ λ · evaluate(after)`.
/// When both sides vanish every `λ` fits and the prediction is returned.
pub fn measure(app: &RuleApplication, tol: f64) -> Result<(C64, f64)> {
    let b = evaluate(&app.before)?;
    let a = evaluate(&app.after)?;
    if b.norm() <= ZERO_NORM && a.norm() <= ZERO_NORM {
        return Ok((app.scalar, 0.0));
    }
    proportional_fit(&b, &a, tol)
}

/// The result of [`fuse_normalize`].
#[derive(Clone, Debug, PartialEq)]
pub struct Normalized {
    pub diagram: Diagram,
    /// Product of the step scalars: `evaluate(input) = scalar · evaluate(diagram)`.
    pub scalar: C64,
    pub steps: Vec<(RuleId, Site)>,
}

fn next_step(d: &Diagram) -> Option<(RuleId, Site)> {
    for (n, _) in d.nodes() {
        if !d.self_loops(n).is_empty() {
            return Some((RuleId::SelfLoopRemoval, Site::Node(n)));
        }
    }
    for e in d.edges() {
        if let (Endpoint::Node(a), Endpoint::Node(b)) = (e.0, e.1) {
            if a != b && d.node(a).map(|x| x.color) == d.node(b).map(|x| x.color) {
                return Some((RuleId::SpiderFusion, Site::Pair(a.min(b), a.max(b))));
            }
        }
    }
    for (n, nd) in d.nodes() {
        if nd.phase.is_zero()
            && d.degree(n) == 2
            && remove_identity(d, n).is_ok_and(|(x, _)| validate(&x).is_empty())
        {
            return Some((RuleId::IdentityRemoval, Site::Node(n)));
        }
    }
    None
}

/// Fuse, drop identities and remove loops until nothing applies.
pub fn fuse_normalize(d: &Diagram) -> Result<Normalized> {
    ensure_valid(d)?;
    let mut cur = d.clone();
    let mut scalar = c(1.0);
    let mut steps = Vec::new();
    while let Some((rule, site)) = next_step(&cur) {
        let app = apply_rule(&cur, rule, site)?;
        scalar *= app.scalar;
        cur = app.after;
        steps.push((rule, site));
    }
    Ok(Normalized {
        diagram: cur,
        scalar,
        steps,
    })
}

/// X split, Z phases `ξ` and `ζ` on the two branches, X merge.
pub fn two_branch_diagram(xi: Phase, zeta: Phase) -> Diagram {
    let mut d = Diagram::new();
    let i = d.add_input();
    let o = d.add_output();
    let split = d.add_node(Color::X, Phase::ZERO);
    let merge = d.add_node(Color::X, Phase::ZERO);
    d.add_edge(i, split);
    d.add_on_wire(split, merge, Color::Z, xi);
    d.add_on_wire(split, merge, Color::Z, zeta);
    d.add_edge(merge, o);
    d
}

/// `½·diag(1 + e^{i(ξ+ζ)}, e^{iξ} + e^{iζ})` as the evaluated diagram.
pub fn prop1_endomorphism(xi: Phase, zeta: Phase) -> QTensor {
    evaluate(&two_branch_diagram(xi, zeta)).expect("well-formed builder output")
}

/// Rank at most one as a map, with singular values compared against
/// `tol · max(σ_max, 1)`, so a tensor of rounding noise counts as zero.
pub fn is_disconnected(f: &QTensor, tol: f64) -> bool {
    let sv = f.singular_values();
    let top = sv.first().copied().unwrap_or(0.0);
    sv.get(1).is_none_or(|&s| s <= tol * top.max(1.0))
}

/// [`is_disconnected`] across the bipartition `part | rest` of a state.
pub fn is_disconnected_across(state: &QTensor, part: &[usize], tol: f64) -> Result<bool> {
    Ok(is_disconnected(
        &crate::qtensor::bipartition_matrix(state, part)?,
        tol,
    ))
}
