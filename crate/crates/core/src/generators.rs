//! Concrete Z (green) and X (red) basis structures on one qubit.
//!
//! Spider convention: a Z spider with phase φ is
//! `|0…0⟩⟨0…0| + e^{iφ}|1…1⟩⟨1…1|`, an X spider the same with `|±⟩ =
//! (|0⟩ ± |1⟩)/√2` in place of `|0⟩, |1⟩`. In the computational basis an
//! X spider with `n` legs has entries `2^{-n/2}(1 + e^{iφ}(−1)^{|x|})`, so
//! X-colored equalities carry powers of √2; cross-color laws are only ever
//! compared up to a scalar.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::phase::Phase;
use crate::qtensor::{compose, dagger, proportional_eq, tensor_product, QTensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Z,
    X,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Z => Color::X,
            Color::X => Color::Z,
        }
    }

    /// Drawing color: Z is green, X is red.
    pub fn rendered(self) -> &'static str {
        match self {
            Color::Z => "green",
            Color::X => "red",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Z => "Z",
            Color::X => "X",
        })
    }
}

impl FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" | "z" | "green" => Ok(Color::Z),
            "X" | "x" | "red" => Ok(Color::X),
            _ => Err(Error::Parse(format!("unknown color `{s}`"))),
        }
    }
}

/// A one-qubit state (`0 → 1` tensor).
pub type PointState = QTensor;

/// The spider of `color` with the given arity and phase.
pub fn spider(color: Color, n_in: usize, n_out: usize, phase: Phase) -> QTensor {
    let legs = n_in + n_out;
    let e = phase.exp_i();
    let one = C64::new(1.0, 0.0);
    let mut data = vec![C64::new(0.0, 0.0); 1 << legs];
    if legs == 0 {
        data[0] = one + e;
    } else {
        match color {
            Color::Z => {
                data[0] = one;
                let last = data.len() - 1;
                data[last] = e;
            }
            Color::X => {
                let norm = 2f64.powf(-(legs as f64) / 2.0);
                for (idx, z) in data.iter_mut().enumerate() {
                    let sign = if idx.count_ones() % 2 == 0 { one } else { -one };
                    *z = (one + e * sign) * norm;
                }
            }
        }
    }
    QTensor::new(n_in, n_out, data).expect("spider shape is consistent")
}

/// The unbiased point of `color` with phase α, `spider(color, 0, 1, α)`.
///
/// Z: `|0⟩ + e^{iα}|1⟩`; X: `|+⟩ + e^{iα}|−⟩`. Neither is normalized.
pub fn phase_point(color: Color, alpha: Phase) -> PointState {
    spider(color, 0, 1, alpha)
}

/// `Λ(ψ)`: the color's multiplication applied to `ψ ⊗ id`.
pub fn lambda_map(color: Color, psi: &PointState) -> QTensor {
    let mult = dagger(&spider(color, 1, 2, Phase::ZERO));
    let arg = tensor_product(psi, &QTensor::identity(1));
    compose(&mult, &arg).expect("Λ arities agree")
}

/// `ξ•ζ = (1 + e^{i(ξ+ζ)})|0⟩ + (e^{iξ} + e^{iζ})|1⟩`.
///
/// This is the X multiplication applied to the two Z phase points, rescaled
/// by √2 so that it equals the closed-form expansion exactly. It is the zero
/// vector when `{ξ, ζ} = {0, π}`.
pub fn point_mult(xi: Phase, zeta: Phase) -> PointState {
    let one = C64::new(1.0, 0.0);
    let a = one + (xi + zeta).exp_i();
    let b = xi.exp_i() + zeta.exp_i();
    QTensor::state(vec![a, b]).expect("two amplitudes")
}

/// The `i`-th basis vector of `color` (Z: `|0⟩, |1⟩`; X: `|+⟩, |−⟩`), normalized.
pub fn basis_vector(color: Color, i: usize) -> PointState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = match (color, i) {
        (Color::Z, 0) => [1.0, 0.0],
        (Color::Z, _) => [0.0, 1.0],
        (Color::X, 0) => [h, h],
        (Color::X, _) => [h, -h],
    };
    QTensor::state(amps.iter().map(|&x| C64::new(x, 0.0)).collect()).expect("two amplitudes")
}

/// Index of the basis vector of `color` that `psi` is proportional to.
pub fn basis_element_index(psi: &PointState, color: Color, tol: f64) -> Option<usize> {
    if psi.n_in() != 0 || psi.n_out() != 1 || psi.norm() == 0.0 {
        return None;
    }
    (0..2).find(|&i| {
        matches!(
            proportional_eq(psi, &basis_vector(color, i), tol),
            Ok(Some(_))
        )
    })
}

/// Bell-type state `spider(color, 0, 2, 0)`.
pub fn cup(color: Color) -> QTensor {
    spider(color, 0, 2, Phase::ZERO)
}

/// Bell-type effect `spider(color, 2, 0, 0)`.
pub fn cap(color: Color) -> QTensor {
    spider(color, 2, 0, Phase::ZERO)
}
