//! Scan the triangle family on a rational grid and count the classes.

use zxent::entangle::{family_is_w_class, scan_family, FamilyVerdict};
use zxent::Phase;

fn main() -> zxent::Result<()> {
    let f = Phase::frac;
    println!(
        "(1/3,1/3,1/3) -> {}",
        family_is_w_class(f(1, 3), f(1, 3), f(1, 3))
    );
    println!(
        "(1/7,2/7,3/7) -> {}",
        family_is_w_class(f(1, 7), f(2, 7), f(3, 7))
    );

    let r = scan_family(6)?;
    for v in [
        FamilyVerdict::GhzClass,
        FamilyVerdict::WClass,
        FamilyVerdict::BiSepOrLess,
        FamilyVerdict::Degenerate,
    ] {
        println!("{v:<12} {}", r.count(v));
    }
    println!("mismatches   {}", r.mismatches().len());
    Ok(())
}
