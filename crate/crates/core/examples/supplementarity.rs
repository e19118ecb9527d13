//! Supplementary phase pairs, the Λ_Z(ξ•ζ) endomorphism, and corner plugging.

use zxent::entangle::{plug_corner_analysis, supplementarity};
use zxent::rewrite::{is_disconnected, prop1_endomorphism};
use zxent::Phase;

fn main() -> zxent::Result<()> {
    let f = Phase::frac;
    for (xi, zeta) in [
        (f(1, 3), f(2, 3)),
        (f(1, 4), f(5, 4)),
        (f(1, 5), f(1, 5)),
        (Phase::ZERO, Phase::PI),
    ] {
        let m = prop1_endomorphism(xi, zeta);
        println!(
            "{xi:>4} {zeta:>4}  {:<16} disconnected {}",
            supplementarity(xi, zeta).to_string(),
            is_disconnected(&m, 1e-9)
        );
    }
    let t = f(1, 3);
    for corner in 0..3 {
        let c = plug_corner_analysis(t, t, t, corner)?;
        println!("W corner {corner}: {} rank {}", c.verdict, c.bipartite_rank);
    }
    Ok(())
}
