//! The Frobenius algebra on W: axioms, loop value, orthogonality.

use zxent::wfrob::{
    build_w_algebra, loop_value, orthogonality_report, pi_loop_scalar, verify_frobenius, WReading,
};
use zxent::Color;

fn main() {
    let w = build_w_algebra();
    let r = verify_frobenius(&w, 1e-9);
    println!(
        "axioms {}  special {}  margin {:.4}",
        r.axioms_hold(),
        r.special,
        r.special_margin
    );
    println!("loop   {}", loop_value(&w, 1e-9).classification);
    for reading in WReading::ALL {
        let o = orthogonality_report(reading);
        println!(
            "{:<10} <X(pi)|loop> = {:.3}  <X(0)|loop> = {:.3}  orthogonal {}",
            reading.name(),
            o.pi_pairing,
            o.zero_pairing,
            o.holds
        );
    }
    println!(
        "pi loops: Z {:.1}  X {:.1}",
        pi_loop_scalar(Color::Z),
        pi_loop_scalar(Color::X)
    );
}
