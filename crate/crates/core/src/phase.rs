//! Phases as multiples of π, exact when rational.
//!
//! A rational phase `p/q` denotes the angle `pπ/q` and is kept reduced with
//! `p/q ∈ [0, 2)`. Mixing a rational phase with an irrational one in
//! arithmetic degrades the result to a float angle in `[0, 2π)`.

use std::{
    f64::consts::{PI, TAU},
    fmt,
    ops::{Add, Neg, Sub},
    str::FromStr,
};

use num_complex::Complex64 as C64;
use num_integer::Integer;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Phase {
    /// `num/den · π`, reduced, `0 ≤ num < 2·den`.
    Rational { num: i64, den: i64 },
    /// Angle in radians, in `[0, 2π)`.
    Irrational(f64),
}

impl Phase {
    pub const ZERO: Phase = Phase::Rational { num: 0, den: 1 };
    pub const PI: Phase = Phase::Rational { num: 1, den: 1 };

    /// `num/den · π`. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "phase denominator must be nonzero");
        let (num, den) = if den < 0 {
            (-(num as i128), -(den as i128))
        } else {
            (num as i128, den as i128)
        };
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        let num = num.rem_euclid(2 * den);
        Phase::Rational {
            num: num as i64,
            den: den as i64,
        }
    }

    pub fn radians(theta: f64) -> Self {
        Phase::Irrational(theta.rem_euclid(TAU))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Phase::Rational { .. })
    }

    /// The angle in radians, in `[0, 2π)`.
    pub fn to_radians(&self) -> f64 {
        match *self {
            Phase::Rational { num, den } => PI * num as f64 / den as f64,
            Phase::Irrational(r) => r,
        }
    }

    /// `e^{iθ}`, exact at multiples of π/2.
    pub fn exp_i(&self) -> C64 {
        if let Phase::Rational { num, den } = *self {
            match (num, den) {
                (0, 1) => return C64::new(1.0, 0.0),
                (1, 2) => return C64::new(0.0, 1.0),
                (1, 1) => return C64::new(-1.0, 0.0),
                (3, 2) => return C64::new(0.0, -1.0),
                _ => {}
            }
        }
        let (s, c) = self.to_radians().sin_cos();
        C64::new(c, s)
    }

    /// Exact zero for rational phases; within `1e-12` rad otherwise.
    pub fn is_zero(&self) -> bool {
        self.congruent(&Phase::ZERO, 1e-12)
    }

    pub fn is_pi(&self) -> bool {
        self.congruent(&Phase::PI, 1e-12)
    }

    /// Equality mod 2π: exact when both are rational, else within `tol` radians.
    pub fn congruent(&self, other: &Phase, tol: f64) -> bool {
        match (self, other) {
            (Phase::Rational { .. }, Phase::Rational { .. }) => self == other,
            _ => {
                let d = (self.to_radians() - other.to_radians()).rem_euclid(TAU);
                d.min(TAU - d) <= tol
            }
        }
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;

    fn add(self, rhs: Phase) -> Phase {
        match (self, rhs) {
            (Phase::Rational { num: a, den: b }, Phase::Rational { num: c, den: d }) => {
                let l = b.lcm(&d);
                Phase::frac(a * (l / b) + c * (l / d), l)
            }
            _ => Phase::radians(self.to_radians() + rhs.to_radians()),
        }
    }
}

impl Neg for Phase {
    type Output = Phase;

    fn neg(self) -> Phase {
        match self {
            Phase::Rational { num, den } => Phase::frac(-num, den),
            Phase::Irrational(r) => Phase::radians(-r),
        }
    }
}

impl Sub for Phase {
    type Output = Phase;

    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Phase::Rational { num, den: 1 } => write!(f, "{num}"),
            Phase::Rational { num, den } => write!(f, "{num}/{den}"),
            Phase::Irrational(r) => write!(f, "rad:{r}"),
        }
    }
}

impl FromStr for Phase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || {
            Error::Parse(format!(
                "bad phase `{s}` (expected `p/q`, `p`, or `rad:<x>`)"
            ))
        };
        if let Some(rest) = s.strip_prefix("rad:") {
            let r: f64 = rest.parse().map_err(|_| bad())?;
            if !r.is_finite() {
                return Err(bad());
            }
            return Ok(Phase::radians(r));
        }
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: i64 = p.parse().map_err(|_| bad())?;
        let q: i64 = q.parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Ok(Phase::frac(p, q))
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}
