//! Plug pairs of corners of the four-qubit square.

use zxent::entangle::{square4_analysis, SQUARE_CORNERS};
use zxent::Phase;

fn main() -> zxent::Result<()> {
    let f = Phase::frac;
    let r = square4_analysis(f(1, 2), Phase::ZERO, f(1, 4), f(1, 4))?;
    for p in &r.patterns {
        println!(
            "plug {}+{}  paths ({}, {})  {:<16} rank {}",
            SQUARE_CORNERS[p.plugged[0]],
            SQUARE_CORNERS[p.plugged[1]],
            p.paths.0,
            p.paths.1,
            p.verdict.to_string(),
            p.rank
        );
    }
    println!("all agree: {}", r.all_agree());
    Ok(())
}
