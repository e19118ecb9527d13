//! Tangles, SLOCC classes and the monogamy residuals of a few states.

use num_complex::Complex64 as C64;
use zxent::entangle::{classify_slocc, hyperdeterminant_tangle, tangle_report};
use zxent::rng::{random_state, seeded};
use zxent::QTensor;

fn state(v: &[f64]) -> QTensor {
    QTensor::state(v.iter().map(|&x| C64::new(x, 0.0)).collect())
        .unwrap()
        .normalized()
        .unwrap()
}

fn main() -> zxent::Result<()> {
    let samples = [
        ("GHZ", state(&[1., 0., 0., 0., 0., 0., 0., 1.])),
        ("W", state(&[0., 1., 1., 0., 1., 0., 0., 0.])),
        ("|0>Bell", state(&[1., 0., 0., 1., 0., 0., 0., 0.])),
        ("random", random_state(&mut seeded(42), 3)),
    ];
    for (name, psi) in samples {
        let t = tangle_report(&psi)?;
        println!(
            "{name:<8} class {:<10} tau_ABC {:.9}  4|Det| {:.9}  residuals {:?}",
            classify_slocc(&psi, 1e-9)?.to_string(),
            t.tau_abc,
            hyperdeterminant_tangle(&psi)?,
            t.residuals()
        );
    }
    Ok(())
}
