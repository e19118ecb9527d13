//! Open graphs of colored, phased spiders with ordered boundary ports.
//!
//! Phases drawn on a wire are explicit degree-2 spiders. Parallel edges and
//! self-loops are allowed; a self-loop counts twice toward a node's degree.
//! Every boundary port has exactly one incident edge. Two ports are joined
//! directly only in the bare wire diagram; operations that would otherwise
//! produce a port-to-port edge insert a phase-free Z spider instead.

mod builders;
mod format;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::generators::Color;
use crate::phase::Phase;

pub use builders::*;
pub use format::DiagramDoc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for PortId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Node(NodeId),
    Port(PortId),
}

impl From<NodeId> for Endpoint {
    fn from(n: NodeId) -> Self {
        Endpoint::Node(n)
    }
}

impl From<PortId> for Endpoint {
    fn from(p: PortId) -> Self {
        Endpoint::Port(p)
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Node(n) => n.fmt(f),
            Endpoint::Port(p) => p.fmt(f),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub color: Color,
    pub phase: Phase,
}

/// An undirected edge between two endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge(pub Endpoint, pub Endpoint);

impl Edge {
    pub fn touches(&self, e: Endpoint) -> bool {
        self.0 == e || self.1 == e
    }

    pub fn is_self_loop(&self) -> bool {
        self.0 == self.1
    }

    /// The endpoint across from `e`, if `e` is one of the ends.
    pub fn other(&self, e: Endpoint) -> Option<Endpoint> {
        if self.0 == e {
            Some(self.1)
        } else if self.1 == e {
            Some(self.0)
        } else {
            None
        }
    }

    pub fn joins(&self, a: Endpoint, b: Endpoint) -> bool {
        (self.0 == a && self.1 == b) || (self.0 == b && self.1 == a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    Input,
    Output,
}

/// A structural problem found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    PortDegree { port: PortId, degree: usize },
    DanglingEndpoint { edge: usize, endpoint: Endpoint },
    PortToPort { edge: usize },
    DuplicatePort { port: PortId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PortDegree { port, degree } => {
                write!(f, "port degree ≠ 1 ({port} has degree {degree})")
            }
            Violation::DanglingEndpoint { edge, endpoint } => {
                write!(f, "edge {edge} references missing endpoint {endpoint}")
            }
            Violation::PortToPort { edge } => {
                write!(f, "edge {edge} joins two ports outside a bare wire")
            }
            Violation::DuplicatePort { port } => write!(f, "port {port} listed more than once"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagram {
    inputs: Vec<PortId>,
    outputs: Vec<PortId>,
    nodes: BTreeMap<NodeId, Node>,
    edges: Vec<Edge>,
    next_id: u32,
}

impl Diagram {
    pub fn new() -> Self {
        Self::default()
    }

    fn fresh(&mut self) -> u32 {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    pub fn add_input(&mut self) -> PortId {
        let p = PortId(self.fresh());
        self.inputs.push(p);
        p
    }

    pub fn add_output(&mut self) -> PortId {
        let p = PortId(self.fresh());
        self.outputs.push(p);
        p
    }

    pub fn add_node(&mut self, color: Color, phase: Phase) -> NodeId {
        let n = NodeId(self.fresh());
        self.nodes.insert(n, Node { color, phase });
        n
    }

    pub fn add_edge(&mut self, a: impl Into<Endpoint>, b: impl Into<Endpoint>) {
        self.edges.push(Edge(a.into(), b.into()));
    }

    /// Insert a node on a fresh edge path `a - node - b`.
    pub fn add_on_wire(
        &mut self,
        a: impl Into<Endpoint>,
        b: impl Into<Endpoint>,
        color: Color,
        phase: Phase,
    ) -> NodeId {
        let n = self.add_node(color, phase);
        self.add_edge(a, n);
        self.add_edge(n, b);
        n
    }

    pub fn inputs(&self) -> &[PortId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[PortId] {
        &self.outputs
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &Node)> + '_ {
        self.nodes.iter().map(|(k, v)| (*k, v))
    }

    pub fn node_ids(&self) -> Vec<NodeId> {
        self.nodes.keys().copied().collect()
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(&id)
    }

    pub fn node_mut(&mut self, id: NodeId) -> Option<&mut Node> {
        self.nodes.get_mut(&id)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_closed(&self) -> bool {
        self.inputs.is_empty() && self.outputs.is_empty()
    }

    pub fn polarity(&self, port: PortId) -> Option<Polarity> {
        if self.inputs.contains(&port) {
            Some(Polarity::Input)
        } else if self.outputs.contains(&port) {
            Some(Polarity::Output)
        } else {
            None
        }
    }

    pub fn has_endpoint(&self, e: Endpoint) -> bool {
        match e {
            Endpoint::Node(n) => self.nodes.contains_key(&n),
            Endpoint::Port(p) => self.polarity(p).is_some(),
        }
    }

    /// Indices of edges incident to `e` (a self-loop is listed once).
    pub fn incident(&self, e: impl Into<Endpoint>) -> Vec<usize> {
        let e = e.into();
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, x)| x.touches(e))
            .map(|(i, _)| i)
            .collect()
    }

    /// Degree with self-loops counted twice.
    pub fn degree(&self, e: impl Into<Endpoint>) -> usize {
        let e = e.into();
        self.edges
            .iter()
            .map(|x| (x.0 == e) as usize + (x.1 == e) as usize)
            .sum()
    }

    pub fn self_loops(&self, n: NodeId) -> Vec<usize> {
        let e = Endpoint::Node(n);
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, x)| x.0 == e && x.1 == e)
            .map(|(i, _)| i)
            .collect()
    }

    /// Indices of edges joining `a` and `b`.
    pub fn edges_between(&self, a: impl Into<Endpoint>, b: impl Into<Endpoint>) -> Vec<usize> {
        let (a, b) = (a.into(), b.into());
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, x)| x.joins(a, b))
            .map(|(i, _)| i)
            .collect()
    }

    /// Neighbors of `e` across each incident non-loop edge, with multiplicity.
    pub fn neighbors(&self, e: impl Into<Endpoint>) -> Vec<Endpoint> {
        let e = e.into();
        self.edges
            .iter()
            .filter(|x| !x.is_self_loop())
            .filter_map(|x| x.other(e))
            .collect()
    }

    /// Remove the edges with the given indices.
    pub fn remove_edges(&mut self, idx: &[usize]) {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        idx.dedup();
        for i in idx.into_iter().rev() {
            self.edges.remove(i);
        }
    }

    /// Remove a node together with all of its edges.
    pub fn remove_node(&mut self, n: NodeId) -> Option<Node> {
        let e = Endpoint::Node(n);
        self.edges.retain(|x| !x.touches(e));
        self.nodes.remove(&n)
    }

    /// Remove a boundary port and its edges.
    pub fn remove_port(&mut self, p: PortId) {
        let e = Endpoint::Port(p);
        self.edges.retain(|x| !x.touches(e));
        self.inputs.retain(|&q| q != p);
        self.outputs.retain(|&q| q != p);
    }

    /// Point every edge end at `from` to `to` instead.
    pub fn redirect(&mut self, from: Endpoint, to: Endpoint) {
        for x in &mut self.edges {
            if x.0 == from {
                x.0 = to;
            }
            if x.1 == from {
                x.1 = to;
            }
        }
    }

    /// The single endpoint across the edge attached to port `p`.
    pub fn port_neighbor(&self, p: PortId) -> Option<Endpoint> {
        let e = Endpoint::Port(p);
        let inc: Vec<&Edge> = self.edges.iter().filter(|x| x.touches(e)).collect();
        match inc.as_slice() {
            [x] => x.other(e),
            _ => None,
        }
    }

    /// True for exactly one input, one output, no nodes, one edge between them.
    pub fn is_bare_wire(&self) -> bool {
        self.nodes.is_empty()
            && self.inputs.len() == 1
            && self.outputs.len() == 1
            && self.edges.len() == 1
            && self.edges[0].joins(self.inputs[0].into(), self.outputs[0].into())
    }

    /// Replace port-to-port edges by port–Z(0)–port unless this is a bare wire.
    pub(crate) fn split_port_wires(&mut self) {
        if self.is_bare_wire() {
            return;
        }
        let wires: Vec<usize> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, x)| matches!((x.0, x.1), (Endpoint::Port(_), Endpoint::Port(_))))
            .map(|(i, _)| i)
            .collect();
        for i in wires.into_iter().rev() {
            let Edge(a, b) = self.edges.remove(i);
            self.add_on_wire(a, b, Color::Z, Phase::ZERO);
        }
    }

    /// Copy of `other`'s content with ids shifted past this diagram's ids.
    fn shifted(&self, other: &Diagram) -> Diagram {
        let off = self.next_id;
        let sh = |e: Endpoint| match e {
            Endpoint::Node(NodeId(k)) => Endpoint::Node(NodeId(k + off)),
            Endpoint::Port(PortId(k)) => Endpoint::Port(PortId(k + off)),
        };
        Diagram {
            inputs: other.inputs.iter().map(|p| PortId(p.0 + off)).collect(),
            outputs: other.outputs.iter().map(|p| PortId(p.0 + off)).collect(),
            nodes: other
                .nodes
                .iter()
                .map(|(k, v)| (NodeId(k.0 + off), *v))
                .collect(),
            edges: other.edges.iter().map(|x| Edge(sh(x.0), sh(x.1))).collect(),
            next_id: other.next_id + off,
        }
    }

    fn absorb(&mut self, other: Diagram) {
        self.nodes.extend(other.nodes);
        self.edges.extend(other.edges);
        self.next_id = self.next_id.max(other.next_id);
    }

    /// Join the wires at two ports of this diagram into one edge and drop the ports.
    fn splice(&mut self, p: PortId, q: PortId) -> Result<()> {
        let a = self
            .port_neighbor(p)
            .ok_or_else(|| Error::Argument(format!("port {p} has no single neighbor")))?;
        let b = self
            .port_neighbor(q)
            .ok_or_else(|| Error::Argument(format!("port {q} has no single neighbor")))?;
        if a == Endpoint::Port(q) {
            // p and q were joined to each other: the splice closes a loop.
            self.remove_port(p);
            self.remove_port(q);
            self.add_node(Color::Z, Phase::ZERO);
            let n = NodeId(self.next_id - 1);
            self.add_edge(n, n);
            return Ok(());
        }
        self.remove_port(p);
        self.remove_port(q);
        self.add_edge(a, b);
        Ok(())
    }
}

/// Structural violations of `d`; empty iff the diagram is well formed.
pub fn validate(d: &Diagram) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for &p in d.inputs.iter().chain(&d.outputs) {
        if !seen.insert(p) {
            out.push(Violation::DuplicatePort { port: p });
        }
    }
    for (i, x) in d.edges.iter().enumerate() {
        for e in [x.0, x.1] {
            if !d.has_endpoint(e) {
                out.push(Violation::DanglingEndpoint {
                    edge: i,
                    endpoint: e,
                });
            }
        }
        if matches!((x.0, x.1), (Endpoint::Port(_), Endpoint::Port(_))) && !d.is_bare_wire() {
            out.push(Violation::PortToPort { edge: i });
        }
    }
    for p in seen {
        let degree = d.degree(p);
        if degree != 1 {
            out.push(Violation::PortDegree { port: p, degree });
        }
    }
    out
}

pub fn ensure_valid(d: &Diagram) -> Result<()> {
    let v = validate(d);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(v))
    }
}

/// `d1 ∘ d2`: the outputs of `d2` are wired to the inputs of `d1`.
pub fn compose_diagrams(d1: &Diagram, d2: &Diagram) -> Result<Diagram> {
    ensure_valid(d1)?;
    ensure_valid(d2)?;
    if d2.outputs.len() != d1.inputs.len() {
        return Err(Error::Dimension(format!(
            "cannot compose a diagram with {} inputs after one with {} outputs",
            d1.inputs.len(),
            d2.outputs.len()
        )));
    }
    let mut out = d2.clone();
    let top = out.shifted(d1);
    let (top_inputs, top_outputs) = (top.inputs.clone(), top.outputs.clone());
    let mids: Vec<PortId> = out.outputs.clone();
    out.outputs = top_outputs;
    out.inputs.extend(top_inputs.iter().copied());
    out.absorb(top);
    for (&lo, &hi) in mids.iter().zip(&top_inputs) {
        out.outputs.push(lo);
        out.splice(lo, hi)?;
    }
    out.split_port_wires();
    Ok(out)
}

/// `d1 ⊗ d2`: juxtaposition, `d1`'s ports first.
pub fn tensor_diagrams(d1: &Diagram, d2: &Diagram) -> Result<Diagram> {
    ensure_valid(d1)?;
    ensure_valid(d2)?;
    let mut out = d1.clone();
    let right = out.shifted(d2);
    out.inputs.extend(right.inputs.iter().copied());
    out.outputs.extend(right.outputs.iter().copied());
    out.absorb(right);
    out.split_port_wires();
    Ok(out)
}

/// Graft the single-port diagram `psi` onto `port` of `d`.
///
/// An output port takes an effect (one input, no outputs); an input port
/// takes a state (one output, no inputs).
pub fn plug(d: &Diagram, port: PortId, psi: &Diagram) -> Result<Diagram> {
    ensure_valid(d)?;
    ensure_valid(psi)?;
    let pol = d
        .polarity(port)
        .ok_or_else(|| Error::Argument(format!("port {port} not found")))?;
    let (need_in, need_out) = match pol {
        Polarity::Output => (1, 0),
        Polarity::Input => (0, 1),
    };
    if psi.inputs.len() != need_in || psi.outputs.len() != need_out {
        return Err(Error::Argument(format!(
            "polarity mismatch: plugging an {} port needs a {} with exactly one port",
            match pol {
                Polarity::Output => "output",
                Polarity::Input => "input",
            },
            match pol {
                Polarity::Output => "effect",
                Polarity::Input => "state",
            }
        )));
    }
    let mut out = d.clone();
    let g = out.shifted(psi);
    let gp = g
        .inputs
        .first()
        .or(g.outputs.first())
        .copied()
        .expect("one port");
    out.absorb(g);
    // make the grafted port temporarily visible so splice can find it
    out.inputs.push(gp);
    out.splice(port, gp)?;
    out.split_port_wires();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_wire_is_valid() {
        assert!(validate(&bare_wire()).is_empty());
    }

    #[test]
    fn dangling_port_is_reported() {
        let mut d = Diagram::new();
        let n = d.add_node(Color::Z, Phase::ZERO);
        let p = d.add_output();
        d.add_output();
        d.add_edge(n, p);
        let v = validate(&d);
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().starts_with("port degree ≠ 1"));
    }

    #[test]
    fn missing_endpoint_and_port_wire() {
        let mut d = Diagram::new();
        let a = d.add_input();
        d.add_edge(a, NodeId(99));
        assert!(matches!(
            validate(&d)[0],
            Violation::DanglingEndpoint { .. }
        ));

        let mut d = Diagram::new();
        let a = d.add_input();
        let b = d.add_output();
        let c = d.add_output();
        let n = d.add_node(Color::X, Phase::ZERO);
        d.add_edge(a, b);
        d.add_edge(n, c);
        assert!(validate(&d)
            .iter()
            .any(|v| matches!(v, Violation::PortToPort { .. })));
    }

    #[test]
    fn builders_are_valid() {
        let third = Phase::frac(1, 3);
        for d in [
            ghz_diagram(Color::Z),
            ghz_diagram(Color::X),
            w_family_diagram(third, third, third),
            square4_diagram(Phase::ZERO, Phase::PI, third, Phase::frac(1, 2)),
            point_diagram(Color::X, Phase::PI),
            copoint_diagram(Color::Z, Phase::ZERO),
            Diagram::new(),
        ] {
            assert!(validate(&d).is_empty(), "{d:?}");
        }
    }

    #[test]
    fn compose_bare_wires() {
        let w = compose_diagrams(&bare_wire(), &bare_wire()).unwrap();
        assert!(w.is_bare_wire());
    }

    #[test]
    fn tensor_of_bare_wires_gets_identity_nodes() {
        let t = tensor_diagrams(&bare_wire(), &bare_wire()).unwrap();
        assert!(validate(&t).is_empty());
        assert_eq!(t.node_count(), 2);
        assert_eq!(t.inputs().len(), 2);
    }

    #[test]
    fn compose_arity_mismatch() {
        let r = compose_diagrams(&bare_wire(), &ghz_diagram(Color::Z));
        assert!(matches!(r, Err(Error::Dimension(_))));
    }

    #[test]
    fn plug_state_into_wire_input() {
        let w = bare_wire();
        let s = plug(&w, w.inputs()[0], &point_diagram(Color::X, Phase::ZERO)).unwrap();
        assert!(validate(&s).is_empty());
        assert_eq!(
            (s.inputs().len(), s.outputs().len(), s.node_count()),
            (0, 1, 1)
        );
    }

    #[test]
    fn plug_errors() {
        let w = bare_wire();
        let out = w.outputs()[0];
        assert!(plug(&w, PortId(77), &copoint_diagram(Color::X, Phase::ZERO)).is_err());
        let e = plug(&w, out, &point_diagram(Color::X, Phase::ZERO)).unwrap_err();
        assert!(e.to_string().contains("polarity mismatch"));
    }

    #[test]
    fn closing_a_wire_makes_a_loop() {
        let w = bare_wire();
        let d =
            compose_diagrams(&cap_diagram(Color::Z), &tensor_diagrams(&w, &w).unwrap()).unwrap();
        assert!(validate(&d).is_empty());
        assert_eq!(d.outputs().len(), 0);
    }
}
