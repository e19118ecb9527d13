//! Apply the rewrite rules to random instances and normalize a diagram.

use zxent::diagram::{compose_diagrams, spider_diagram};
use zxent::rewrite::{fuse_normalize, verify_rules};
use zxent::{Color, Phase};

fn main() -> zxent::Result<()> {
    let report = verify_rules(7, 50, 1e-9)?;
    for r in &report.rules {
        println!(
            "{:<20} {}/{}  max deviation {:.2e}",
            r.rule.name(),
            r.passed,
            r.instances,
            r.max_deviation
        );
    }

    let a = spider_diagram(Color::Z, 1, 2, Phase::frac(1, 4));
    let b = spider_diagram(Color::Z, 2, 1, Phase::frac(1, 4));
    let d = compose_diagrams(&b, &a)?;
    let n = fuse_normalize(&d)?;
    println!(
        "{} nodes -> {} nodes, scalar {:.6}",
        d.node_count(),
        n.diagram.node_count(),
        n.scalar
    );
    Ok(())
}
