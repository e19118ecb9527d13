//! Local maps taking GHZ to a GHZ-class family member, and W's refusal.

use zxent::entangle::{family_amplitudes, ghz_witness};
use zxent::Phase;

fn main() -> zxent::Result<()> {
    let f = Phase::frac;
    let psi = family_amplitudes(f(1, 7), f(2, 7), f(3, 7))
        .state()
        .normalized()?;
    let w = ghz_witness(&psi)?;
    println!(
        "reconstruction error {:.2e}",
        w.reconstruct().sub(&psi)?.norm()
    );

    let t = f(1, 3);
    let w_state = family_amplitudes(t, t, t).state().normalized()?;
    match ghz_witness(&w_state) {
        Ok(_) => println!("unexpected witness for W"),
        Err(e) => println!("W: {e}"),
    }
    Ok(())
}
