//! Tensor-network semantics of diagrams.
//!
//! Each node becomes its spider tensor with one leg per incident edge end,
//! every internal edge is contracted with the plain index-matching metric,
//! and the open legs are arranged as outputs followed by inputs.

use num_complex::Complex64 as C64;

use crate::diagram::{ensure_valid, Diagram, Endpoint, NodeId, PortId};
use crate::error::{Error, Result};
use crate::generators::spider;
use crate::qtensor::QTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Label {
    Open(PortId),
    Bond(usize),
}

/// A dense tensor whose leg `i` is the `i`-th most significant bit.
#[derive(Clone, Debug)]
struct Net {
    legs: Vec<Label>,
    data: Vec<C64>,
}

fn bit(idx: usize, n: usize, pos: usize) -> usize {
    (idx >> (n - 1 - pos)) & 1
}

impl Net {
    fn scalar(z: C64) -> Self {
        Net {
            legs: Vec::new(),
            data: vec![z],
        }
    }

    fn bonds(&self) -> impl Iterator<Item = usize> + '_ {
        self.legs.iter().filter_map(|l| match l {
            Label::Bond(e) => Some(*e),
            Label::Open(_) => None,
        })
    }

    /// Contract every bond label that occurs twice on this tensor.
    fn trace_loops(self) -> Net {
        let n = self.legs.len();
        let mut pairs = Vec::new();
        let mut used = vec![false; n];
        for i in 0..n {
            if used[i] {
                continue;
            }
            if let Some(j) = (i + 1..n).find(|&j| !used[j] && self.legs[j] == self.legs[i]) {
                used[i] = true;
                used[j] = true;
                pairs.push((i, j));
            }
        }
        if pairs.is_empty() {
            return self;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| !used[i]).collect();
        let legs: Vec<Label> = keep.iter().map(|&i| self.legs[i]).collect();
        let mut data = vec![C64::new(0.0, 0.0); 1 << keep.len()];
        for (idx, &v) in self.data.iter().enumerate() {
            if pairs.iter().all(|&(i, j)| bit(idx, n, i) == bit(idx, n, j)) {
                let r = keep.iter().fold(0, |acc, &i| (acc << 1) | bit(idx, n, i));
                data[r] += v;
            }
        }
        Net { legs, data }
    }

    /// Contract two tensors over their shared bond labels.
    fn contract(&self, other: &Net) -> Net {
        let (na, nb) = (self.legs.len(), other.legs.len());
        let shared: Vec<(usize, usize)> = self
            .legs
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, Label::Bond(_)))
            .filter_map(|(i, l)| other.legs.iter().position(|m| m == l).map(|j| (i, j)))
            .collect();
        let a_keep: Vec<usize> = (0..na)
            .filter(|i| !shared.iter().any(|s| s.0 == *i))
            .collect();
        let b_keep: Vec<usize> = (0..nb)
            .filter(|j| !shared.iter().any(|s| s.1 == *j))
            .collect();
        let legs: Vec<Label> = a_keep
            .iter()
            .map(|&i| self.legs[i])
            .chain(b_keep.iter().map(|&j| other.legs[j]))
            .collect();
        let nr = legs.len();
        let ns = shared.len();
        let mut data = vec![C64::new(0.0, 0.0); 1 << nr];
        for (r, slot) in data.iter_mut().enumerate() {
            let mut ia = 0usize;
            let mut ib = 0usize;
            for (k, &i) in a_keep.iter().enumerate() {
                ia |= bit(r, nr, k) << (na - 1 - i);
            }
            for (k, &j) in b_keep.iter().enumerate() {
                ib |= bit(r, nr, a_keep.len() + k) << (nb - 1 - j);
            }
            let mut acc = C64::new(0.0, 0.0);
            for s in 0..(1usize << ns) {
                let (mut xa, mut xb) = (ia, ib);
                for (k, &(i, j)) in shared.iter().enumerate() {
                    let v = bit(s, ns, k);
                    xa |= v << (na - 1 - i);
                    xb |= v << (nb - 1 - j);
                }
                acc += self.data[xa] * other.data[xb];
            }
            *slot = acc;
        }
        Net { legs, data }.trace_loops()
    }
}

/// The tensors of the network in node-id order, followed by an identity for
/// a bare wire.
fn network(d: &Diagram) -> Vec<(Option<NodeId>, Net)> {
    let mut out = Vec::new();
    for (id, node) in d.nodes() {
        let mut legs = Vec::new();
        for (e, edge) in d.edges().iter().enumerate() {
            for (here, there) in [(edge.0, edge.1), (edge.1, edge.0)] {
                if here == Endpoint::Node(id) {
                    legs.push(match there {
                        Endpoint::Port(p) => Label::Open(p),
                        Endpoint::Node(_) => Label::Bond(e),
                    });
                }
            }
        }
        let t = spider(node.color, 0, legs.len(), node.phase);
        out.push((
            Some(id),
            Net {
                legs,
                data: t.into_data(),
            }
            .trace_loops(),
        ));
    }
    for edge in d.edges() {
        if let (Endpoint::Port(a), Endpoint::Port(b)) = (edge.0, edge.1) {
            let one = C64::new(1.0, 0.0);
            let zero = C64::new(0.0, 0.0);
            out.push((
                None,
                Net {
                    legs: vec![Label::Open(a), Label::Open(b)],
                    data: vec![one, zero, zero, one],
                },
            ));
        }
    }
    out
}

fn finish(d: &Diagram, parts: Vec<Net>) -> Result<QTensor> {
    let mut t = Net::scalar(C64::new(1.0, 0.0));
    for p in parts {
        t = t.contract(&p);
    }
    let order: Vec<Label> = d
        .outputs()
        .iter()
        .chain(d.inputs())
        .map(|&p| Label::Open(p))
        .collect();
    let n = order.len();
    debug_assert_eq!(n, t.legs.len());
    let pos: Vec<usize> = order
        .iter()
        .map(|l| {
            t.legs
                .iter()
                .position(|m| m == l)
                .expect("every port is an open leg")
        })
        .collect();
    let mut data = vec![C64::new(0.0, 0.0); 1 << n];
    for (r, slot) in data.iter_mut().enumerate() {
        let src = pos
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &p)| acc | (bit(r, n, k) << (n - 1 - p)));
        *slot = t.data[src];
    }
    QTensor::new(d.inputs().len(), d.outputs().len(), data)
}

/// Evaluate by repeatedly contracting the tensor with the fewest legs into
/// the neighbor that leaves the smallest result.
pub fn evaluate(d: &Diagram) -> Result<QTensor> {
    ensure_valid(d)?;
    let mut ts: Vec<Net> = network(d).into_iter().map(|x| x.1).collect();
    while let Some(i) = (0..ts.len())
        .filter(|&i| ts[i].bonds().next().is_some())
        .min_by_key(|&i| ts[i].legs.len())
    {
        let bonds: Vec<usize> = ts[i].bonds().collect();
        let j = (0..ts.len())
            .filter(|&j| j != i && ts[j].bonds().any(|b| bonds.contains(&b)))
            .min_by_key(|&j| {
                let shared = ts[j].bonds().filter(|b| bonds.contains(b)).count();
                ts[i].legs.len() + ts[j].legs.len() - 2 * shared
            })
            .expect("a bond has two ends");
        let merged = ts[i].contract(&ts[j]);
        let (lo, hi) = (i.min(j), i.max(j));
        ts.remove(hi);
        ts[lo] = merged;
    }
    finish(d, ts)
}

/// Evaluate by absorbing node tensors one at a time in the given order.
/// `order` must list every node exactly once.
pub fn evaluate_in_order(d: &Diagram, order: &[NodeId]) -> Result<QTensor> {
    ensure_valid(d)?;
    let mut sorted = order.to_vec();
    sorted.sort();
    if sorted != d.node_ids() {
        return Err(Error::Argument(
            "elimination order must list every node once".into(),
        ));
    }
    let net = network(d);
    let mut acc = Net::scalar(C64::new(1.0, 0.0));
    for id in order {
        let t = &net
            .iter()
            .find(|x| x.0 == Some(*id))
            .expect("node present")
            .1;
        acc = acc.contract(t);
    }
    let rest: Vec<Net> = std::iter::once(acc)
        .chain(net.into_iter().filter(|x| x.0.is_none()).map(|x| x.1))
        .collect();
    finish(d, rest)
}

/// The amplitude of a closed diagram.
pub fn evaluate_scalar(d: &Diagram) -> Result<C64> {
    if !d.is_closed() {
        return Err(Error::Dimension(format!(
            "scalar evaluation needs a closed diagram, found {} inputs and {} outputs",
            d.inputs().len(),
            d.outputs().len()
        )));
    }
    Ok(evaluate(d)?.data()[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::*;
    use crate::generators::{spider, Color};
    use crate::phase::Phase;
    use crate::qtensor::{compose, proportional_eq, tensor_product};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: &QTensor, b: &QTensor) -> bool {
        a.n_in() == b.n_in() && a.n_out() == b.n_out() && a.sub(b).unwrap().norm() < 1e-12
    }

    #[test]
    fn ghz_is_exact() {
        let t = evaluate(&ghz_diagram(Color::Z)).unwrap();
        let mut want = vec![c(0.0, 0.0); 8];
        want[0] = c(1.0, 0.0);
        want[7] = c(1.0, 0.0);
        assert_eq!(t, QTensor::state(want).unwrap());
    }

    #[test]
    fn ghz_x_even_parity() {
        let t = evaluate(&ghz_diagram(Color::X)).unwrap();
        for (i, a) in t.data().iter().enumerate() {
            let even = (i as u32).count_ones().is_multiple_of(2);
            assert!((a.norm() > 0.1) == even);
        }
    }

    #[test]
    fn w_state_from_triangle() {
        let third = Phase::frac(1, 3);
        let t = evaluate(&w_family_diagram(third, third, third)).unwrap();
        let mut w = vec![c(0.0, 0.0); 8];
        for i in [3, 5, 6] {
            w[i] = c(1.0, 0.0);
        }
        assert!(proportional_eq(&t, &QTensor::state(w).unwrap(), 1e-12)
            .unwrap()
            .is_some());
        let ratio = t.data()[3] / t.data()[5];
        assert!((ratio - 1.0).norm() < 1e-12);
    }

    #[test]
    fn scalar_diagrams() {
        assert_eq!(evaluate_scalar(&Diagram::new()).unwrap(), c(1.0, 0.0));
        let mut d = Diagram::new();
        d.add_node(Color::Z, Phase::PI);
        assert_eq!(evaluate_scalar(&d).unwrap(), c(0.0, 0.0));

        let mut d = Diagram::new();
        let n = d.add_node(Color::Z, Phase::ZERO);
        d.add_edge(n, n);
        assert!((evaluate_scalar(&d).unwrap() - 2.0).norm() < 1e-15);

        let mut d = Diagram::new();
        let x = d.add_node(Color::X, Phase::ZERO);
        d.add_on_wire(x, x, Color::Z, Phase::PI);
        assert!(evaluate_scalar(&d).unwrap().norm() < 1e-15);

        assert!(matches!(
            evaluate_scalar(&bare_wire()),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn bare_wire_is_identity() {
        assert_eq!(evaluate(&bare_wire()).unwrap(), QTensor::identity(1));
    }

    #[test]
    fn composition_matches_matrix_product() {
        let a = Phase::frac(1, 5);
        let d = compose_diagrams(
            &spider_diagram(Color::Z, 1, 2, Phase::ZERO),
            &spider_diagram(Color::Z, 1, 1, a),
        )
        .unwrap();
        let want = compose(
            &spider(Color::Z, 1, 2, Phase::ZERO),
            &spider(Color::Z, 1, 1, a),
        )
        .unwrap();
        assert!(close(&evaluate(&d).unwrap(), &want));
    }

    #[test]
    fn tensor_of_points() {
        let p = point_diagram(Color::X, Phase::frac(1, 2));
        let d = tensor_diagrams(&p, &point_diagram(Color::Z, Phase::PI)).unwrap();
        let want = tensor_product(&evaluate(&p).unwrap(), &spider(Color::Z, 0, 1, Phase::PI));
        assert!(close(&evaluate(&d).unwrap(), &want));
    }

    #[test]
    fn plug_zero_effects_into_ghz() {
        let mut d = ghz_diagram(Color::Z);
        let zero = copoint_diagram(Color::X, Phase::ZERO);
        for _ in 0..3 {
            let p = d.outputs()[0];
            d = plug(&d, p, &zero).unwrap();
        }
        // the X(0) copoint is √2⟨0|
        let v = evaluate_scalar(&d).unwrap();
        assert!((v - 2f64.sqrt().powi(3)).norm() < 1e-12);
    }

    #[test]
    fn orders_agree() {
        let d = square4_diagram(
            Phase::frac(1, 3),
            Phase::PI,
            Phase::frac(5, 4),
            Phase::radians(0.3),
        );
        let a = evaluate(&d).unwrap();
        let mut ids = d.node_ids();
        ids.reverse();
        let b = evaluate_in_order(&d, &ids).unwrap();
        assert!(close(&a, &b));
        assert!(evaluate_in_order(&d, &ids[1..]).is_err());
    }

    #[test]
    fn square_with_trivial_phases_is_x_spider() {
        let d = square4_diagram(Phase::ZERO, Phase::ZERO, Phase::ZERO, Phase::ZERO);
        let t = evaluate(&d).unwrap();
        assert!(
            proportional_eq(&t, &spider(Color::X, 0, 4, Phase::ZERO), 1e-12)
                .unwrap()
                .is_some()
        );
    }
}
