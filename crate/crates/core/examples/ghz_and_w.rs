//! Build the GHZ and W states as spider diagrams and evaluate them.

use zxent::diagram::{ghz_diagram, w_family_diagram};
use zxent::evaluator::evaluate;
use zxent::{Color, Phase};

fn main() -> zxent::Result<()> {
    let ghz = evaluate(&ghz_diagram(Color::Z))?;
    println!(
        "GHZ  = {:?}",
        ghz.data().iter().map(|z| z.re).collect::<Vec<_>>()
    );

    let t = Phase::frac(1, 3);
    let w = evaluate(&w_family_diagram(t, t, t))?.normalized()?;
    for (k, z) in w.data().iter().enumerate() {
        if z.norm() > 1e-12 {
            println!("W    |{k:03b}>  {:.6}{:+.6}i", z.re, z.im);
        }
    }
    Ok(())
}
