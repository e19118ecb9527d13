use super::{Diagram, Polarity};
use crate::generators::Color;
use crate::phase::Phase;

/// One input joined straight to one output.
pub fn bare_wire() -> Diagram {
    let mut d = Diagram::new();
    let a = d.add_input();
    let b = d.add_output();
    d.add_edge(a, b);
    d
}

/// A single spider with its own boundary legs.
pub fn spider_diagram(color: Color, n_in: usize, n_out: usize, phase: Phase) -> Diagram {
    let mut d = Diagram::new();
    let ins: Vec<_> = (0..n_in).map(|_| d.add_input()).collect();
    let outs: Vec<_> = (0..n_out).map(|_| d.add_output()).collect();
    let n = d.add_node(color, phase);
    for p in ins.into_iter().chain(outs) {
        d.add_edge(p, n);
    }
    d
}

pub fn point_diagram(color: Color, phase: Phase) -> Diagram {
    spider_diagram(color, 0, 1, phase)
}

pub fn copoint_diagram(color: Color, phase: Phase) -> Diagram {
    spider_diagram(color, 1, 0, phase)
}

pub fn cup_diagram(color: Color) -> Diagram {
    spider_diagram(color, 0, 2, Phase::ZERO)
}

pub fn cap_diagram(color: Color) -> Diagram {
    spider_diagram(color, 2, 0, Phase::ZERO)
}

pub fn ghz_diagram(color: Color) -> Diagram {
    spider_diagram(color, 0, 3, Phase::ZERO)
}

/// A cycle of X spiders, one boundary leg per corner, with a Z phase spider
/// on each cycle edge. Edge `i` joins corner `i` to corner `i + 1` (mod n).
/// Corner legs become inputs or outputs in corner order.
pub fn ring_diagram(corners: &[(Phase, Polarity)], edges: &[Phase]) -> Diagram {
    assert_eq!(corners.len(), edges.len(), "one edge phase per corner");
    let mut d = Diagram::new();
    let ins: Vec<_> = corners
        .iter()
        .filter(|c| c.1 == Polarity::Input)
        .map(|_| d.add_input())
        .collect();
    let outs: Vec<_> = corners
        .iter()
        .filter(|c| c.1 == Polarity::Output)
        .map(|_| d.add_output())
        .collect();
    let (mut ii, mut oi) = (ins.into_iter(), outs.into_iter());
    let xs: Vec<_> = corners
        .iter()
        .map(|&(phase, pol)| {
            let n = d.add_node(Color::X, phase);
            let p = match pol {
                Polarity::Input => ii.next(),
                Polarity::Output => oi.next(),
            };
            d.add_edge(p.expect("port"), n);
            n
        })
        .collect();
    let k = xs.len();
    for (i, &ph) in edges.iter().enumerate() {
        d.add_on_wire(xs[i], xs[(i + 1) % k], Color::Z, ph);
    }
    d
}

/// The X-spider triangle with Z phases on its edges.
///
/// Corners 0, 1, 2 carry outputs 0, 1, 2. The edge 0–1 carries `gamma`, 1–2
/// carries `alpha` and 2–0 carries `beta`, so corner 0 sits opposite `alpha`.
pub fn w_family_diagram(alpha: Phase, beta: Phase, gamma: Phase) -> Diagram {
    let c = (Phase::ZERO, Polarity::Output);
    ring_diagram(&[c, c, c], &[gamma, alpha, beta])
}

/// Four X spiders in a square with outputs at TL, TR, BR, BL (in that
/// order) and Z phases `delta` on top, `gamma` right, `beta` bottom and
/// `alpha` left.
pub fn square4_diagram(alpha: Phase, beta: Phase, gamma: Phase, delta: Phase) -> Diagram {
    let c = (Phase::ZERO, Polarity::Output);
    ring_diagram(&[c, c, c, c], &[delta, gamma, beta, alpha])
}
