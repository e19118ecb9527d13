//! Tangles, SLOCC classes and GHZ-class decompositions of three-qubit states.
//!
//! All tangles are taken on normalized states. The one-vs-rest tangle is
//! `4 det ρ_k`, the pairwise tangle the squared concurrence, and the
//! 3-tangle the residual `τ_A(BC) − τ_AB − τ_AC`.

mod family;

use std::fmt;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::qtensor::{
    compose, determinant, hermitian_eigenvalues, reduced_density, tensor_product, QTensor,
};

pub use family::*;

const NORM_TOL: f64 = 1e-9;
const SUPPORT_TOL: f64 = 1e-13;

fn check_three_qubit(psi: &QTensor) -> Result<()> {
    if !psi.is_state() || psi.n_out() != 3 {
        return Err(Error::Dimension(format!(
            "expected a 3-qubit state, found a {} → {} tensor",
            psi.n_in(),
            psi.n_out()
        )));
    }
    Ok(())
}

fn check_normalized(psi: &QTensor) -> Result<()> {
    check_three_qubit(psi)?;
    let n = psi.norm();
    if (n - 1.0).abs() > NORM_TOL {
        return Err(Error::Argument(format!(
            "state is not normalized (norm {n})"
        )));
    }
    Ok(())
}

/// `4 det ρ_k`, clamped to `[0, 1]`.
pub fn tangle_one_vs_rest(psi: &QTensor, k: usize) -> Result<f64> {
    check_normalized(psi)?;
    if k > 2 {
        return Err(Error::Argument(format!("qubit index {k} out of range")));
    }
    let rho = reduced_density(psi, &[k])?;
    Ok((4.0 * determinant(&rho)?.re).clamp(0.0, 1.0))
}

fn sigma_yy() -> QTensor {
    let z = C64::new(0.0, 0.0);
    let y = QTensor::new(1, 1, vec![z, C64::new(0.0, -1.0), C64::new(0.0, 1.0), z]).expect("2x2");
    tensor_product(&y, &y)
}

/// Concurrence of a two-qubit density matrix.
///
/// The spectrum of `√ρ ρ̃ √ρ` is computed on the support of `ρ` only, so the
/// exact zeros of a low-rank `ρ` do not turn into `√ε` noise.
pub fn concurrence(rho: &QTensor) -> Result<f64> {
    if rho.n_in() != 2 || rho.n_out() != 2 {
        return Err(Error::Dimension(
            "concurrence needs a 4x4 density matrix".into(),
        ));
    }
    let yy = sigma_yy().to_matrix();
    let r = rho.to_matrix();
    let r = (&r + r.adjoint()) * C64::new(0.5, 0.0);
    let flipped = &yy * r.map(|z| z.conj()) * &yy;
    let eig = SymmetricEigen::new(r);
    let top = eig.eigenvalues.iter().fold(0.0f64, |m, &x| m.max(x));
    let support: Vec<usize> = (0..4)
        .filter(|&k| eig.eigenvalues[k] > SUPPORT_TOL * top)
        .collect();
    if support.is_empty() {
        return Ok(0.0);
    }
    let v = DMatrix::from_fn(4, support.len(), |i, j| eig.eigenvectors[(i, support[j])]);
    let sq = DMatrix::from_diagonal(&DVector::from_iterator(
        support.len(),
        support
            .iter()
            .map(|&k| C64::new(eig.eigenvalues[k].sqrt(), 0.0)),
    ));
    let m = &sq * v.adjoint() * flipped * &v * &sq;
    let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    let mut l: Vec<f64> = SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .map(|e| e.max(0.0).sqrt())
        .collect();
    l.sort_by(|a, b| b.total_cmp(a));
    l.resize(4, 0.0);
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Squared concurrence of the reduced state on qubits `i, j`.
///
/// The reduced state has rank at most two, spanned by the slices `φ_0, φ_1`
/// of ψ along the third qubit. The square roots of the spectrum of `ρρ̃` are
/// then the singular values `λ1 ≥ λ2` of `T_kl = φ_kᵀ (σy ⊗ σy) φ_l`, and
/// `C² = (λ1 − λ2)² = ‖T‖² − 2|det T|` needs no square roots at all.
pub fn pairwise_tangle(psi: &QTensor, i: usize, j: usize) -> Result<f64> {
    check_normalized(psi)?;
    if i == j || i > 2 || j > 2 {
        return Err(Error::Argument(format!("bad qubit pair ({i}, {j})")));
    }
    let (i, j) = (i.min(j), i.max(j));
    let k = 3 - i - j;
    let amp = |bits: [usize; 3]| psi.data()[(bits[0] << 2) | (bits[1] << 1) | bits[2]];
    let slice = |t: usize| -> [C64; 4] {
        std::array::from_fn(|x| {
            let mut bits = [0; 3];
            bits[i] = x >> 1;
            bits[j] = x & 1;
            bits[k] = t;
            amp(bits)
        })
    };
    let phi = [slice(0), slice(1)];
    let flip = |u: &[C64; 4], v: &[C64; 4]| -u[0] * v[3] + u[1] * v[2] + u[2] * v[1] - u[3] * v[0];
    let t = [
        [flip(&phi[0], &phi[0]), flip(&phi[0], &phi[1])],
        [flip(&phi[1], &phi[0]), flip(&phi[1], &phi[1])],
    ];
    let frob: f64 = t.iter().flatten().map(|z| z.norm_sqr()).sum();
    let det = (t[0][0] * t[1][1] - t[0][1] * t[1][0]).norm();
    Ok((frob - 2.0 * det).clamp(0.0, 1.0))
}

/// Squared concurrence from the reduced density matrix of any state,
/// through the spectrum of `√ρ ρ̃ √ρ`.
pub fn pairwise_tangle_spectral(psi: &QTensor, i: usize, j: usize) -> Result<f64> {
    check_normalized(psi)?;
    if i == j || i > 2 || j > 2 {
        return Err(Error::Argument(format!("bad qubit pair ({i}, {j})")));
    }
    let c = concurrence(&reduced_density(psi, &[i, j])?)?;
    Ok((c * c).clamp(0.0, 1.0))
}

/// The residual tangle `τ_A(BC) − τ_AB − τ_AC`, clamped at zero.
pub fn three_tangle(psi: &QTensor) -> Result<f64> {
    let r = tangle_one_vs_rest(psi, 0)? - pairwise_tangle(psi, 0, 1)? - pairwise_tangle(psi, 0, 2)?;
    Ok(r.max(0.0))
}

/// `4|d1 − 2d2 + 4d3|` from the quartic invariant of the amplitudes.
/// An independent route to the 3-tangle, used only as a cross-check.
pub fn hyperdeterminant_tangle(psi: &QTensor) -> Result<f64> {
    check_normalized(psi)?;
    Ok(4.0 * cayley_discriminant(psi).norm())
}

fn cayley_discriminant(psi: &QTensor) -> C64 {
    let a = |i: usize, j: usize, k: usize| psi.data()[(i << 2) | (j << 1) | k];
    let d1 = (a(0, 0, 0) * a(1, 1, 1)).powi(2)
        + (a(0, 0, 1) * a(1, 1, 0)).powi(2)
        + (a(0, 1, 0) * a(1, 0, 1)).powi(2)
        + (a(1, 0, 0) * a(0, 1, 1)).powi(2);
    let d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1)
        + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    let d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1)
        + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    d1 - 2.0 * d2 + 4.0 * d3
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TangleReport {
    pub tau_a_bc: f64,
    pub tau_b_ca: f64,
    pub tau_c_ab: f64,
    pub tau_ab: f64,
    pub tau_ac: f64,
    pub tau_bc: f64,
    pub tau_abc: f64,
}

impl TangleReport {
    /// The residuals `τ_k(rest) − Σ pairwise` for k = A, B, C.
    pub fn residuals(&self) -> [f64; 3] {
        [
            self.tau_a_bc - self.tau_ab - self.tau_ac,
            self.tau_b_ca - self.tau_ab - self.tau_bc,
            self.tau_c_ab - self.tau_ac - self.tau_bc,
        ]
    }
}

pub fn tangle_report(psi: &QTensor) -> Result<TangleReport> {
    let tau_a_bc = tangle_one_vs_rest(psi, 0)?;
    let tau_ab = pairwise_tangle(psi, 0, 1)?;
    let tau_ac = pairwise_tangle(psi, 0, 2)?;
    Ok(TangleReport {
        tau_a_bc,
        tau_b_ca: tangle_one_vs_rest(psi, 1)?,
        tau_c_ab: tangle_one_vs_rest(psi, 2)?,
        tau_ab,
        tau_ac,
        tau_bc: pairwise_tangle(psi, 1, 2)?,
        tau_abc: (tau_a_bc - tau_ab - tau_ac).max(0.0),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SloccClass {
    #[serde(rename = "GHZ")]
    Ghz,
    W,
    #[serde(rename = "BiSepA_BC")]
    BiSepABc,
    #[serde(rename = "BiSepB_CA")]
    BiSepBCa,
    #[serde(rename = "BiSepC_AB")]
    BiSepCAb,
    #[serde(rename = "Product")]
    Product,
}

impl fmt::Display for SloccClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SloccClass::Ghz => "GHZ",
            SloccClass::W => "W",
            SloccClass::BiSepABc => "BiSepA_BC",
            SloccClass::BiSepBCa => "BiSepB_CA",
            SloccClass::BiSepCAb => "BiSepC_AB",
            SloccClass::Product => "Product",
        })
    }
}

/// Normalize, or report the zero state as degenerate.
pub fn normalize_state(psi: &QTensor) -> Result<QTensor> {
    check_three_qubit(psi)?;
    psi.normalized()
        .map_err(|_| Error::Degenerate("the zero state has no entanglement class".into()))
}

/// Class by reduced-density ranks, splitting GHZ from W by the 3-tangle.
pub fn classify_slocc(psi: &QTensor, tol: f64) -> Result<SloccClass> {
    let psi = normalize_state(psi)?;
    let mut pure = [false; 3];
    for (k, p) in pure.iter_mut().enumerate() {
        let ev = hermitian_eigenvalues(&reduced_density(&psi, &[k])?)?;
        *p = ev[0] <= tol;
    }
    Ok(match pure {
        [true, false, false] => SloccClass::BiSepABc,
        [false, true, false] => SloccClass::BiSepBCa,
        [false, false, true] => SloccClass::BiSepCAb,
        [false, false, false] => {
            if three_tangle(&psi)? > tol {
                SloccClass::Ghz
            } else {
                SloccClass::W
            }
        }
        _ => SloccClass::Product,
    })
}

/// Local maps with `(A1 ⊗ A2 ⊗ A3)(|000⟩ + |111⟩) ∝ ψ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SloccWitness {
    pub a1: QTensor,
    pub a2: QTensor,
    pub a3: QTensor,
}

impl SloccWitness {
    /// `(A1 ⊗ A2 ⊗ A3)(|000⟩ + |111⟩)`.
    pub fn reconstruct(&self) -> QTensor {
        let ghz =
            crate::generators::spider(crate::generators::Color::Z, 0, 3, crate::phase::Phase::ZERO);
        let local = tensor_product(&tensor_product(&self.a1, &self.a2), &self.a3);
        compose(&local, &ghz).expect("local maps act on three qubits")
    }
}

fn mat2(m: [C64; 4]) -> QTensor {
    QTensor::new(1, 1, m.to_vec()).expect("2x2")
}

/// Split a rank-1 2×2 matrix `m` into `v wᵀ`.
fn rank_one_factors(m: &[C64; 4]) -> ([C64; 2], [C64; 2]) {
    let (k, _) = m
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .expect("four entries");
    let (i, j) = (k / 2, k % 2);
    let v = [m[j], m[2 + j]];
    let w = [m[2 * i] / m[k], m[2 * i + 1] / m[k]];
    (v, w)
}

/// Decompose a GHZ-class state into two product terms.
///
/// The slices `T0, T1` of ψ along qubit 0 span a pencil whose singular
/// members are exactly the two product terms; they are found from the roots
/// of the binary quadratic `det(x·T0 + y·T1)`.
pub fn ghz_witness(psi: &QTensor) -> Result<SloccWitness> {
    let psi = normalize_state(psi)?;
    let d = psi.data();
    let t0 = [d[0], d[1], d[2], d[3]];
    let t1 = [d[4], d[5], d[6], d[7]];
    let det = |m: &[C64; 4]| m[0] * m[3] - m[1] * m[2];
    let c2 = det(&t0);
    let c0 = det(&t1);
    let c1 = t0[0] * t1[3] + t0[3] * t1[0] - t0[1] * t1[2] - t0[2] * t1[1];
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if 4.0 * disc.norm() <= NORM_TOL {
        return Err(Error::NoWitness(format!(
            "the pencil discriminant is {:.3e}; the state is not in the GHZ class",
            disc.norm()
        )));
    }
    let root = disc.sqrt();
    let q = if (c1 + root).norm() >= (c1 - root).norm() {
        -(c1 + root) / 2.0
    } else {
        -(c1 - root) / 2.0
    };
    let roots = [(q, c2), (c0, q)];
    let pencil =
        |(x, y): (C64, C64)| -> [C64; 4] { std::array::from_fn(|k| x * t0[k] + y * t1[k]) };
    let (v1, w1) = rank_one_factors(&pencil(roots[0]));
    let (v2, w2) = rank_one_factors(&pencil(roots[1]));
    let p1: [C64; 4] = std::array::from_fn(|k| v1[k / 2] * w1[k % 2]);
    let p2: [C64; 4] = std::array::from_fn(|k| v2[k / 2] * w2[k % 2]);
    // Least squares for T_i = u1[i]·P1 + u2[i]·P2.
    let dot =
        |a: &[C64; 4], b: &[C64; 4]| -> C64 { a.iter().zip(b).map(|(x, y)| x.conj() * y).sum() };
    let (g11, g12, g22) = (dot(&p1, &p1), dot(&p1, &p2), dot(&p2, &p2));
    let gdet = g11 * g22 - g12 * g12.conj();
    if gdet.norm() <= 1e-14 * g11.norm() * g22.norm() {
        return Err(Error::NoWitness(
            "the two product terms are parallel".into(),
        ));
    }
    let solve = |t: &[C64; 4]| -> (C64, C64) {
        let (r1, r2) = (dot(&p1, t), dot(&p2, t));
        (
            (g22 * r1 - g12 * r2) / gdet,
            (g11 * r2 - g12.conj() * r1) / gdet,
        )
    };
    let (u10, u20) = solve(&t0);
    let (u11, u21) = solve(&t1);
    let w = SloccWitness {
        a1: mat2([u10, u20, u11, u21]),
        a2: mat2([v1[0], v2[0], v1[1], v2[1]]),
        a3: mat2([w1[0], w2[0], w1[1], w2[1]]),
    };
    let back = w.reconstruct();
    let err = back.sub(&psi)?.norm();
    if err > 1e-8 {
        return Err(Error::NoWitness(format!(
            "decomposition residual {err:.3e} exceeds 1e-8"
        )));
    }
    Ok(w)
}
