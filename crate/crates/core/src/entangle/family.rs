//! The phased-triangle family, supplementarity, plugging and grid scans.

use std::fmt;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use super::{classify_slocc, normalize_state, three_tangle, SloccClass};
use crate::diagram::{copoint_diagram, plug, square4_diagram, w_family_diagram};
use crate::error::{Error, Result};
use crate::evaluator::evaluate;
use crate::generators::{basis_element_index, point_mult, Color, PointState};
use crate::phase::Phase;
use crate::qtensor::{schmidt_rank, QTensor};

const CLASS_TOL: f64 = 1e-9;
const PHASE_TOL: f64 = 1e-12;
/// Evaluated diagrams here have entries of order one; below this norm a
/// state is rounding noise around the zero vector.
const ZERO_TOL: f64 = 1e-10;

/// Schmidt rank across the first qubit, with round-off zeros counted as rank 0.
fn plugged_rank(state: &QTensor) -> Result<usize> {
    if state.norm() <= ZERO_TOL {
        return Ok(0);
    }
    schmidt_rank(state, &[0], CLASS_TOL)
}

/// Coefficients of `|000⟩, |110⟩, |011⟩, |101⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyAmplitudes {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl FamilyAmplitudes {
    pub fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()
    }

    /// The full 8-amplitude state.
    pub fn state(&self) -> QTensor {
        let mut v = vec![C64::new(0.0, 0.0); 8];
        v[0] = self.a;
        v[6] = self.b;
        v[3] = self.c;
        v[5] = self.d;
        QTensor::state(v).expect("three qubits")
    }
}

pub fn family_amplitudes(alpha: Phase, beta: Phase, gamma: Phase) -> FamilyAmplitudes {
    let one = C64::new(1.0, 0.0);
    FamilyAmplitudes {
        a: one + (alpha + beta + gamma).exp_i(),
        b: gamma.exp_i() + (alpha + beta).exp_i(),
        c: alpha.exp_i() + (beta + gamma).exp_i(),
        d: beta.exp_i() + (alpha + gamma).exp_i(),
    }
}

/// `16|a||b||c||d| / ‖ψ‖⁴`.
pub fn family_three_tangle(alpha: Phase, beta: Phase, gamma: Phase) -> Result<f64> {
    let f = family_amplitudes(alpha, beta, gamma);
    let n2 = f.norm_sqr();
    if n2 <= 1e-24 {
        return Err(Error::Degenerate(format!(
            "family state at ({alpha}, {beta}, {gamma}) is zero"
        )));
    }
    Ok(16.0 * f.a.norm() * f.b.norm() * f.c.norm() * f.d.norm() / (n2 * n2))
}

/// Which of `α+β+γ, γ−α−β, α−β−γ, β−α−γ` are congruent to π. Entry `k`
/// holding means the corresponding coefficient `a, b, c, d` vanishes.
pub fn family_conditions(alpha: Phase, beta: Phase, gamma: Phase) -> [bool; 4] {
    [
        alpha + beta + gamma,
        gamma - alpha - beta,
        alpha - beta - gamma,
        beta - alpha - gamma,
    ]
    .map(|p| p.congruent(&Phase::PI, PHASE_TOL))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyVerdict {
    #[serde(rename = "GHZclass")]
    GhzClass,
    #[serde(rename = "Wclass")]
    WClass,
    Degenerate,
    BiSepOrLess,
}

impl fmt::Display for FamilyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyVerdict::GhzClass => "GHZclass",
            FamilyVerdict::WClass => "Wclass",
            FamilyVerdict::Degenerate => "Degenerate",
            FamilyVerdict::BiSepOrLess => "BiSepOrLess",
        })
    }
}

/// Exact on rational phases: no condition gives GHZ, exactly one gives W,
/// more than one is decided by the concrete state.
pub fn family_is_w_class(alpha: Phase, beta: Phase, gamma: Phase) -> FamilyVerdict {
    let held = family_conditions(alpha, beta, gamma)
        .iter()
        .filter(|&&x| x)
        .count();
    match held {
        0 => FamilyVerdict::GhzClass,
        1 => FamilyVerdict::WClass,
        _ => match classify_slocc(&family_amplitudes(alpha, beta, gamma).state(), CLASS_TOL) {
            Err(_) => FamilyVerdict::Degenerate,
            Ok(SloccClass::Ghz) => FamilyVerdict::GhzClass,
            Ok(SloccClass::W) => FamilyVerdict::WClass,
            Ok(_) => FamilyVerdict::BiSepOrLess,
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SupplementarityVerdict {
    NotSupplementary,
    /// `ξ•ζ ∝ |0⟩`
    Supp0,
    /// `ξ•ζ ∝ |1⟩`
    Supp1,
    /// `ξ•ζ = 0`
    Degenerate,
}

impl SupplementarityVerdict {
    /// True when plugging through this pair disconnects.
    pub fn disconnects(self) -> bool {
        self != SupplementarityVerdict::NotSupplementary
    }
}

impl fmt::Display for SupplementarityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SupplementarityVerdict::NotSupplementary => "NotSupplementary",
            SupplementarityVerdict::Supp0 => "Supp0",
            SupplementarityVerdict::Supp1 => "Supp1",
            SupplementarityVerdict::Degenerate => "Degenerate",
        })
    }
}

/// `ξ+ζ ≡ π` makes `ξ•ζ ∝ |1⟩`; `ζ−ξ ≡ π` makes it `∝ |0⟩`; both make it zero.
pub fn supplementarity(xi: Phase, zeta: Phase) -> SupplementarityVerdict {
    let one = (xi + zeta).congruent(&Phase::PI, PHASE_TOL);
    let zero = (zeta - xi).congruent(&Phase::PI, PHASE_TOL);
    match (zero, one) {
        (true, true) => SupplementarityVerdict::Degenerate,
        (false, true) => SupplementarityVerdict::Supp1,
        (true, false) => SupplementarityVerdict::Supp0,
        (false, false) => SupplementarityVerdict::NotSupplementary,
    }
}

/// The verdict read off the vector `ξ•ζ` itself.
pub fn supplementarity_numeric(xi: Phase, zeta: Phase, tol: f64) -> SupplementarityVerdict {
    let p = point_mult(xi, zeta);
    if p.norm() <= tol {
        return SupplementarityVerdict::Degenerate;
    }
    match basis_element_index(&p, Color::Z, tol) {
        Some(0) => SupplementarityVerdict::Supp0,
        Some(_) => SupplementarityVerdict::Supp1,
        None => SupplementarityVerdict::NotSupplementary,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CornerAnalysis {
    pub corner: usize,
    /// The two combined phases `(ξ, ζ)` whose product is `point`.
    pub phases: (Phase, Phase),
    pub point: PointState,
    pub verdict: SupplementarityVerdict,
    pub bipartite_rank: usize,
    /// The two-qubit state left after plugging.
    pub state: QTensor,
}

impl CornerAnalysis {
    /// Whether the exact verdict and the numeric rank tell the same story.
    pub fn consistent(&self) -> bool {
        self.verdict.disconnects() == (self.bipartite_rank <= 1)
    }
}

/// Combined phases meeting at a plugged triangle corner: the two edges at
/// the corner add up to one side, the opposite edge is the other.
pub fn corner_phases(
    alpha: Phase,
    beta: Phase,
    gamma: Phase,
    corner: usize,
) -> Result<(Phase, Phase)> {
    match corner {
        0 => Ok((beta + gamma, alpha)),
        1 => Ok((alpha + gamma, beta)),
        2 => Ok((alpha + beta, gamma)),
        _ => Err(Error::Argument(format!(
            "corner {corner} is not one of 0, 1, 2"
        ))),
    }
}

/// Plug the X(0) effect into one output of the triangle and inspect what is left.
pub fn plug_corner_analysis(
    alpha: Phase,
    beta: Phase,
    gamma: Phase,
    corner: usize,
) -> Result<CornerAnalysis> {
    let phases = corner_phases(alpha, beta, gamma, corner)?;
    let tri = w_family_diagram(alpha, beta, gamma);
    let plugged = plug(
        &tri,
        tri.outputs()[corner],
        &copoint_diagram(Color::X, Phase::ZERO),
    )?;
    let state = evaluate(&plugged)?;
    Ok(CornerAnalysis {
        corner,
        phases,
        point: point_mult(phases.0, phases.1),
        verdict: supplementarity(phases.0, phases.1),
        bipartite_rank: plugged_rank(&state)?,
        state,
    })
}

/// Corner names of the square in output order.
pub const SQUARE_CORNERS: [&str; 4] = ["TL", "TR", "BR", "BL"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairPattern {
    /// The two plugged corners.
    pub plugged: [usize; 2],
    /// The two corners left open.
    pub open: [usize; 2],
    pub adjacent: bool,
    /// Summed phases along the two paths joining the open corners.
    pub paths: (Phase, Phase),
    pub verdict: SupplementarityVerdict,
    pub rank: usize,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Square4Report {
    pub phases: [Phase; 4],
    pub patterns: Vec<PairPattern>,
}

impl Square4Report {
    pub fn all_agree(&self) -> bool {
        self.patterns.iter().all(|p| p.agrees)
    }
}

/// Plug X(0) into every pair of corners of the square and compare the
/// exact path verdict with the Schmidt rank of the remaining state.
pub fn square4_analysis(
    alpha: Phase,
    beta: Phase,
    gamma: Phase,
    delta: Phase,
) -> Result<Square4Report> {
    // edge k joins corner k to corner k+1
    let edges = [delta, gamma, beta, alpha];
    let sq = square4_diagram(alpha, beta, gamma, delta);
    let mut patterns = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let open: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
            let (u, v) = (open[0], open[1]);
            let path_a = (u..v).fold(Phase::ZERO, |acc, k| acc + edges[k]);
            let path_b = (v..u + 4).fold(Phase::ZERO, |acc, k| acc + edges[k % 4]);
            let mut d = sq.clone();
            for corner in [j, i] {
                d = plug(
                    &d,
                    d.outputs()[corner],
                    &copoint_diagram(Color::X, Phase::ZERO),
                )?;
            }
            let state = evaluate(&d)?;
            let rank = plugged_rank(&state)?;
            let verdict = supplementarity(path_a, path_b);
            patterns.push(PairPattern {
                plugged: [i, j],
                open: [u, v],
                adjacent: j - i == 1 || (i == 0 && j == 3),
                paths: (path_a, path_b),
                verdict,
                rank,
                agrees: verdict.disconnects() == (rank <= 1),
            });
        }
    }
    Ok(Square4Report {
        phases: [alpha, beta, gamma, delta],
        patterns,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    /// Numerators over the scan denominator.
    pub p: [i64; 3],
    pub verdict: FamilyVerdict,
    /// `None` at degenerate points.
    pub tangle: Option<f64>,
    /// 3-tangle of the evaluated diagram; `None` at degenerate points.
    pub numeric_tangle: Option<f64>,
    pub class: Option<SloccClass>,
    /// More than one constraint holds.
    pub flagged: bool,
}

impl ScanPoint {
    /// Exact plane membership and the numeric zero-tangle test agree.
    pub fn consistent(&self) -> bool {
        match self.numeric_tangle {
            None => self.verdict == FamilyVerdict::Degenerate,
            Some(t) => (t < CLASS_TOL) == (self.verdict != FamilyVerdict::GhzClass),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub denominator: i64,
    pub points: Vec<ScanPoint>,
}

impl ScanReport {
    pub fn count(&self, v: FamilyVerdict) -> usize {
        self.points.iter().filter(|p| p.verdict == v).count()
    }

    pub fn mismatches(&self) -> Vec<&ScanPoint> {
        self.points.iter().filter(|p| !p.consistent()).collect()
    }
}

pub const MAX_SCAN_DENOMINATOR: i64 = 64;

fn scan_point(q: i64, p: [i64; 3]) -> Result<ScanPoint> {
    let [al, be, ga] = p.map(|k| Phase::frac(k, q));
    let verdict = family_is_w_class(al, be, ga);
    let flagged = family_conditions(al, be, ga).iter().filter(|&&x| x).count() > 1;
    let tangle = family_three_tangle(al, be, ga).ok();
    let psi = evaluate(&w_family_diagram(al, be, ga))?;
    let (numeric_tangle, class) = if psi.norm() <= ZERO_TOL {
        (None, None)
    } else {
        let n = normalize_state(&psi)?;
        (
            Some(three_tangle(&n)?),
            Some(classify_slocc(&n, CLASS_TOL)?),
        )
    };
    Ok(ScanPoint {
        p,
        verdict,
        tangle,
        numeric_tangle,
        class,
        flagged,
    })
}

/// Every triple `(p1, p2, p3)·π/q` with `0 ≤ p_k < 2q`, in lexicographic order.
pub fn scan_family(q: i64) -> Result<ScanReport> {
    if !(1..=MAX_SCAN_DENOMINATOR).contains(&q) {
        return Err(Error::Argument(format!(
            "scan denominator must be in 1..={MAX_SCAN_DENOMINATOR}, got {q}"
        )));
    }
    let m = 2 * q;
    let points = (0..m * m * m)
        .into_par_iter()
        .map(|k| scan_point(q, [k / (m * m), (k / m) % m, k % m]))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport {
        denominator: q,
        points,
    })
}
