//! Seeded random instances: Gaussian states, local maps, phases.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::phase::Phase;
use crate::qtensor::{matrix_rank, QTensor};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A stream derived from `seed` for instance `index`, independent of how
/// many instances run or in which order.
pub fn substream(seed: u64, index: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

pub fn gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Complex Gaussian amplitudes, normalized.
pub fn random_state(rng: &mut impl Rng, n_qubits: usize) -> QTensor {
    loop {
        let v: Vec<C64> = (0..1usize << n_qubits).map(|_| gaussian(rng)).collect();
        let t = QTensor::state(v).expect("state length");
        if let Ok(t) = t.normalized() {
            return t;
        }
    }
}

/// A random `n_in → n_out` tensor with Gaussian entries.
pub fn random_tensor(rng: &mut impl Rng, n_in: usize, n_out: usize) -> QTensor {
    let v = (0..1usize << (n_in + n_out))
        .map(|_| gaussian(rng))
        .collect();
    QTensor::new(n_in, n_out, v).expect("tensor length")
}

/// A random invertible one-qubit map with condition number at most `max_cond`.
pub fn random_invertible(rng: &mut impl Rng, max_cond: f64) -> QTensor {
    loop {
        let m = random_tensor(rng, 1, 1);
        let sv = m.singular_values();
        if matrix_rank(&m, 1e-12) == 2 && sv[0] / sv[1] <= max_cond {
            return m;
        }
    }
}

/// `p/q · π` with `q` drawn from `1..=max_den`.
pub fn random_rational_phase(rng: &mut impl Rng, max_den: i64) -> Phase {
    let q = rng.random_range(1..=max_den);
    Phase::frac(rng.random_range(0..2 * q), q)
}

pub fn random_real_phase(rng: &mut impl Rng) -> Phase {
    Phase::radians(rng.random_range(0.0..std::f64::consts::TAU))
}

/// Rational most of the time, with occasional float angles.
pub fn random_phase(rng: &mut impl Rng) -> Phase {
    if rng.random_bool(0.8) {
        random_rational_phase(rng, 12)
    } else {
        random_real_phase(rng)
    }
}
