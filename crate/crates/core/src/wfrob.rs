//! The commutative Frobenius algebra carried by the W state.
//!
//! The algebra is given by four small diagrams: a multiplication and a
//! comultiplication that are X-spider triangles with `Z(π/3)` on every edge,
//! plus X-colored unit and counit points. The figure that defines them can be
//! read in two directions, so both readings are available as
//! [`WReading::Literal`] and [`WReading::Transposed`]; the axiom checks and
//! the orthogonality check tell them apart.

use std::path::Path;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::diagram::{
    compose_diagrams, copoint_diagram, point_diagram, ring_diagram, Diagram, Polarity,
};
use crate::error::{Error, Result};
use crate::evaluator::{evaluate, evaluate_scalar};
use crate::generators::{spider, Color};
use crate::phase::Phase;
use crate::qtensor::{compose, dagger, matrix_rank, proportional_eq, tensor_product, QTensor};

/// Pairings at or below this magnitude count as zero.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

/// `mult: 2→1`, `unit: 0→1`, `comult: 1→2`, `counit: 1→0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusPresentation {
    pub mult: QTensor,
    pub unit: QTensor,
    pub comult: QTensor,
    pub counit: QTensor,
}

impl FrobeniusPresentation {
    pub fn new(mult: QTensor, unit: QTensor, comult: QTensor, counit: QTensor) -> Result<Self> {
        let arity = |t: &QTensor, i, o, what| {
            if t.n_in() == i && t.n_out() == o {
                Ok(())
            } else {
                Err(Error::Dimension(format!(
                    "{what} must be {i}→{o}, got {}→{}",
                    t.n_in(),
                    t.n_out()
                )))
            }
        };
        arity(&mult, 2, 1, "mult")?;
        arity(&unit, 0, 1, "unit")?;
        arity(&comult, 1, 2, "comult")?;
        arity(&counit, 1, 0, "counit")?;
        Ok(FrobeniusPresentation {
            mult,
            unit,
            comult,
            counit,
        })
    }
}

/// The copy/erase structure of a color: phase-free spiders.
pub fn basis_structure(color: Color) -> FrobeniusPresentation {
    let s = |i, o| spider(color, i, o, Phase::ZERO);
    FrobeniusPresentation {
        mult: s(2, 1),
        unit: s(0, 1),
        comult: s(1, 2),
        counit: s(1, 0),
    }
}

/// How the figure defining the W algebra is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WReading {
    /// Bottom to top: π at the output corners, unit `X(π)`, counit `X(0)`.
    Literal,
    /// Top to bottom: π at the input corners, unit `X(0)`, counit `X(π)`.
    Transposed,
}

impl WReading {
    pub const ALL: [WReading; 2] = [WReading::Literal, WReading::Transposed];

    pub fn name(self) -> &'static str {
        match self {
            WReading::Literal => "literal",
            WReading::Transposed => "transposed",
        }
    }
}

/// The four generators of the W algebra as diagrams.
#[derive(Clone, Debug)]
pub struct WDiagrams {
    pub mult: Diagram,
    pub unit: Diagram,
    pub comult: Diagram,
    pub counit: Diagram,
}

impl WDiagrams {
    pub const FILES: [&'static str; 4] = ["mult", "unit", "comult", "counit"];

    fn parts(&self) -> [&Diagram; 4] {
        [&self.mult, &self.unit, &self.comult, &self.counit]
    }

    pub fn evaluate(&self) -> Result<FrobeniusPresentation> {
        FrobeniusPresentation::new(
            evaluate(&self.mult)?,
            evaluate(&self.unit)?,
            evaluate(&self.comult)?,
            evaluate(&self.counit)?,
        )
    }

    /// Writes `mult.json`, `unit.json`, `comult.json`, `counit.json` into `dir`.
    pub fn save(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for (name, d) in Self::FILES.iter().zip(self.parts()) {
            std::fs::write(dir.join(format!("{name}.json")), d.to_json())?;
        }
        Ok(())
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let read = |name: &str| -> Result<Diagram> {
            let path = dir.join(format!("{name}.json"));
            let text = std::fs::read_to_string(&path)?;
            Diagram::from_json(&text)
        };
        Ok(WDiagrams {
            mult: read("mult")?,
            unit: read("unit")?,
            comult: read("comult")?,
            counit: read("counit")?,
        })
    }
}

pub fn w_algebra_diagrams(reading: WReading) -> WDiagrams {
    let third = Phase::frac(1, 3);
    let edges = [third; 3];
    let (out_phase, in_phase) = match reading {
        WReading::Literal => (Phase::PI, Phase::ZERO),
        WReading::Transposed => (Phase::ZERO, Phase::PI),
    };
    let mult = ring_diagram(
        &[
            (out_phase, Polarity::Output),
            (in_phase, Polarity::Input),
            (in_phase, Polarity::Input),
        ],
        &edges,
    );
    let comult = ring_diagram(
        &[
            (in_phase, Polarity::Input),
            (out_phase, Polarity::Output),
            (out_phase, Polarity::Output),
        ],
        &edges,
    );
    let (unit_phase, counit_phase) = match reading {
        WReading::Literal => (Phase::PI, Phase::ZERO),
        WReading::Transposed => (Phase::ZERO, Phase::PI),
    };
    WDiagrams {
        mult,
        unit: point_diagram(Color::X, unit_phase),
        comult,
        counit: copoint_diagram(Color::X, counit_phase),
    }
}

/// The W algebra under the reading that passes every check.
pub fn build_w_algebra() -> FrobeniusPresentation {
    w_algebra_reading(WReading::Literal)
}

pub fn w_algebra_reading(reading: WReading) -> FrobeniusPresentation {
    w_algebra_diagrams(reading)
        .evaluate()
        .expect("W algebra diagrams are well formed")
}

fn swap() -> QTensor {
    let mut data = vec![C64::new(0.0, 0.0); 16];
    for a in 0..2 {
        for b in 0..2 {
            data[(b * 2 + a) * 4 + a * 2 + b] = C64::new(1.0, 0.0);
        }
    }
    QTensor::new(2, 2, data).expect("4×4")
}

fn c(f: &QTensor, g: &QTensor) -> QTensor {
    compose(f, g).expect("arities agree")
}

/// `f ∝ g` with both sides nonzero.
fn prop(f: &QTensor, g: &QTensor, tol: f64) -> bool {
    f.norm() > tol && g.norm() > tol && matches!(proportional_eq(f, g, tol), Ok(Some(_)))
}

/// `min_θ ‖f/‖f‖ − e^{iθ} g/‖g‖‖`.
pub fn projective_distance(f: &QTensor, g: &QTensor) -> f64 {
    let (nf, ng) = (f.norm(), g.norm());
    if nf == 0.0 || ng == 0.0 {
        return if nf == ng {
            0.0
        } else {
            std::f64::consts::SQRT_2
        };
    }
    let ov = g.inner(f).expect("same shape");
    let rot = if ov.norm() > 0.0 {
        ov / ov.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    f.data()
        .iter()
        .zip(g.data())
        .map(|(a, b)| (a / nf - rot * b / ng).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Each axiom is checked up to a nonzero scalar.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrobeniusReport {
    pub associativity: bool,
    pub commutativity: bool,
    pub unit_law: bool,
    pub coassociativity: bool,
    pub cocommutativity: bool,
    pub counit_law: bool,
    pub frobenius_law: bool,
    pub special: bool,
    pub dagger_compatible: bool,
    /// Projective distance between `mult ∘ comult` and the identity.
    pub special_margin: f64,
}

impl FrobeniusReport {
    /// The commutative Frobenius algebra axioms, without specialness or dagger.
    pub fn axioms_hold(&self) -> bool {
        self.associativity
            && self.commutativity
            && self.unit_law
            && self.coassociativity
            && self.cocommutativity
            && self.counit_law
            && self.frobenius_law
    }
}

pub fn verify_frobenius(p: &FrobeniusPresentation, tol: f64) -> FrobeniusReport {
    let id = QTensor::identity(1);
    let (m, u, d, e) = (&p.mult, &p.unit, &p.comult, &p.counit);
    let s = swap();

    let associativity = prop(
        &c(m, &tensor_product(m, &id)),
        &c(m, &tensor_product(&id, m)),
        tol,
    );
    let commutativity = prop(&c(m, &s), m, tol);
    let unit_law = prop(&c(m, &tensor_product(u, &id)), &id, tol)
        && prop(&c(m, &tensor_product(&id, u)), &id, tol);
    let coassociativity = prop(
        &c(&tensor_product(d, &id), d),
        &c(&tensor_product(&id, d), d),
        tol,
    );
    let cocommutativity = prop(&c(&s, d), d, tol);
    let counit_law = prop(&c(&tensor_product(e, &id), d), &id, tol)
        && prop(&c(&tensor_product(&id, e), d), &id, tol);
    let middle = c(d, m);
    let frobenius_law = prop(
        &c(&tensor_product(&id, m), &tensor_product(d, &id)),
        &middle,
        tol,
    ) && prop(
        &c(&tensor_product(m, &id), &tensor_product(&id, d)),
        &middle,
        tol,
    );
    let loop_map = c(m, d);

    FrobeniusReport {
        associativity,
        commutativity,
        unit_law,
        coassociativity,
        cocommutativity,
        counit_law,
        frobenius_law,
        special: prop(&loop_map, &id, tol),
        dagger_compatible: prop(d, &dagger(m), tol),
        special_margin: projective_distance(&loop_map, &id),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopClass {
    IdentityLike,
    RankOne,
    Other,
}

impl std::fmt::Display for LoopClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LoopClass::IdentityLike => "identity-like",
            LoopClass::RankOne => "rank-one",
            LoopClass::Other => "other",
        })
    }
}

#[derive(Clone, Debug)]
pub struct LoopValue {
    /// `mult ∘ comult`.
    pub loop_map: QTensor,
    /// `mult ∘ comult ∘ unit`.
    pub point: QTensor,
    /// `counit ∘ mult ∘ comult`.
    pub copoint: QTensor,
    pub classification: LoopClass,
}

pub fn loop_value(p: &FrobeniusPresentation, tol: f64) -> LoopValue {
    let loop_map = c(&p.mult, &p.comult);
    let point = c(&loop_map, &p.unit);
    let copoint = c(&p.counit, &loop_map);
    let classification = if prop(&loop_map, &QTensor::identity(1), tol) {
        LoopClass::IdentityLike
    } else if matrix_rank(&loop_map, tol) == 1 && prop(&loop_map, &c(&point, &copoint), tol) {
        LoopClass::RankOne
    } else {
        LoopClass::Other
    };
    LoopValue {
        loop_map,
        point,
        copoint,
        classification,
    }
}

/// A `loop_color` spider whose self-loop runs through an other-colored
/// spider with the given phase.
pub fn loop_diagram(loop_color: Color, gate: Phase) -> Diagram {
    let mut d = Diagram::new();
    let a = d.add_node(loop_color, Phase::ZERO);
    let b = d.add_node(loop_color.other(), gate);
    d.add_edge(a, b);
    d.add_edge(a, b);
    d
}

pub fn loop_scalar(loop_color: Color, gate: Phase) -> C64 {
    evaluate_scalar(&loop_diagram(loop_color, gate)).expect("closed diagram")
}

/// A π gate inside a loop of the other color; always zero.
pub fn pi_loop_scalar(loop_color: Color) -> C64 {
    loop_scalar(loop_color, Phase::PI)
}

#[derive(Clone, Debug)]
pub struct OrthogonalityReport {
    pub reading: WReading,
    /// `X(π)` copoint against `mult ∘ comult ∘ unit`.
    pub pi_pairing: C64,
    /// `X(0)` copoint against the same composite.
    pub zero_pairing: C64,
    /// `X(π)` copoint against the `X(π)` point.
    pub pi_self_pairing: C64,
    pub holds: bool,
}

/// The point-with-loop `mult ∘ comult ∘ unit` as one diagram.
pub fn loop_point_diagram(w: &WDiagrams) -> Result<Diagram> {
    compose_diagrams(&w.mult, &compose_diagrams(&w.comult, &w.unit)?)
}

pub fn orthogonality_report(reading: WReading) -> OrthogonalityReport {
    orthogonality_of(&w_algebra_diagrams(reading), reading).expect("built diagrams compose")
}

/// Orthogonality scalars for a given set of generator diagrams.
pub fn orthogonality_of(w: &WDiagrams, reading: WReading) -> Result<OrthogonalityReport> {
    let lhs = loop_point_diagram(w)?;
    let pair =
        |effect: &Diagram, state: &Diagram| evaluate_scalar(&compose_diagrams(effect, state)?);
    let pi_copoint = copoint_diagram(Color::X, Phase::PI);
    let pi_pairing = pair(&pi_copoint, &lhs)?;
    let zero_pairing = pair(&copoint_diagram(Color::X, Phase::ZERO), &lhs)?;
    let pi_self_pairing = pair(&pi_copoint, &point_diagram(Color::X, Phase::PI))?;
    Ok(OrthogonalityReport {
        reading,
        pi_pairing,
        zero_pairing,
        pi_self_pairing,
        holds: pi_pairing.norm() <= ORTHOGONALITY_TOL && zero_pairing.norm() > ORTHOGONALITY_TOL,
    })
}

/// The loop-point of the W algebra is orthogonal to the `X(π)` point but not
/// to the `X(0)` point.
pub fn verify_orthogonality() -> bool {
    orthogonality_report(WReading::Literal).holds
}
