use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{ensure_valid, Diagram, Edge, Endpoint, Node, NodeId, PortId};
use crate::error::{Error, Result};
use crate::generators::Color;
use crate::phase::Phase;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: String,
    pub color: Color,
    pub phase: Phase,
}

/// The on-disk shape of a diagram.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub nodes: Vec<NodeDoc>,
    pub edges: Vec<[String; 2]>,
}

impl DiagramDoc {
    pub fn from_diagram(d: &Diagram) -> Self {
        DiagramDoc {
            inputs: d.inputs.iter().map(|p| p.to_string()).collect(),
            outputs: d.outputs.iter().map(|p| p.to_string()).collect(),
            nodes: d
                .nodes
                .iter()
                .map(|(k, v)| NodeDoc {
                    id: k.to_string(),
                    color: v.color,
                    phase: v.phase,
                })
                .collect(),
            edges: d
                .edges
                .iter()
                .map(|e| [e.0.to_string(), e.1.to_string()])
                .collect(),
        }
    }

    /// Build the diagram. Names of the form `p<k>`/`n<k>` keep their numbers;
    /// any other naming is renumbered in order of appearance.
    pub fn to_diagram(&self) -> Result<Diagram> {
        let ports: Vec<&String> = self.inputs.iter().chain(&self.outputs).collect();
        let mut all = BTreeSet::new();
        for name in ports
            .iter()
            .copied()
            .chain(self.nodes.iter().map(|n| &n.id))
        {
            if !all.insert(name.as_str()) {
                return Err(Error::Parse(format!("duplicate name `{name}`")));
            }
        }
        let numbered = |prefix: char, s: &str| -> Option<u32> {
            s.strip_prefix(prefix)
                .filter(|r| !r.starts_with('+'))
                .and_then(|r| r.parse().ok())
        };
        let keep = ports.iter().all(|p| numbered('p', p).is_some())
            && self.nodes.iter().all(|n| numbered('n', &n.id).is_some())
            && {
                let mut nums = BTreeSet::new();
                ports
                    .iter()
                    .map(|p| numbered('p', p).unwrap())
                    .chain(self.nodes.iter().map(|n| numbered('n', &n.id).unwrap()))
                    .all(|k| nums.insert(k))
            };
        let mut next = 0u32;
        let mut ids: BTreeMap<&str, Endpoint> = BTreeMap::new();
        let mut id_of = |prefix: char, s: &str| -> u32 {
            if keep {
                numbered(prefix, s).unwrap()
            } else {
                next += 1;
                next - 1
            }
        };
        let mut d = Diagram::new();
        for p in &self.inputs {
            let id = PortId(id_of('p', p));
            d.inputs.push(id);
            ids.insert(p, id.into());
        }
        for p in &self.outputs {
            let id = PortId(id_of('p', p));
            d.outputs.push(id);
            ids.insert(p, id.into());
        }
        for n in &self.nodes {
            let id = NodeId(id_of('n', &n.id));
            d.nodes.insert(
                id,
                Node {
                    color: n.color,
                    phase: n.phase,
                },
            );
            ids.insert(&n.id, id.into());
        }
        for [a, b] in &self.edges {
            let look = |s: &String| {
                ids.get(s.as_str())
                    .copied()
                    .ok_or_else(|| Error::Parse(format!("edge references unknown endpoint `{s}`")))
            };
            d.edges.push(Edge(look(a)?, look(b)?));
        }
        d.next_id = ids
            .values()
            .map(|e| match e {
                Endpoint::Node(NodeId(k)) | Endpoint::Port(PortId(k)) => k + 1,
            })
            .max()
            .unwrap_or(0);
        Ok(d)
    }
}

impl Diagram {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&DiagramDoc::from_diagram(self))
            .expect("diagram serializes");
        s.push('\n');
        s
    }

    /// Parse and validate.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DiagramDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("diagram file: {e}")))?;
        let d = doc.to_diagram()?;
        ensure_valid(&d)?;
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{ghz_diagram, w_family_diagram};

    #[test]
    fn round_trip_is_bit_exact() {
        let d = w_family_diagram(Phase::frac(1, 3), Phase::radians(0.25), Phase::PI);
        let s = d.to_json();
        let back = Diagram::from_json(&s).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_json(), s);
        assert!(s.ends_with("}\n"));
    }

    #[test]
    fn free_names_are_renumbered() {
        let text = r#"{"inputs":[],"outputs":["a","b","c"],
            "nodes":[{"id":"g","color":"Z","phase":"0"}],
            "edges":[["a","g"],["g","b"],["c","g"]]}"#;
        let d = Diagram::from_json(text).unwrap();
        assert_eq!(d.outputs().len(), 3);
        assert_eq!(d.node_count(), 1);
        assert_eq!(DiagramDoc::from_diagram(&d).nodes[0].id, "n3");
        let g = ghz_diagram(Color::Z);
        assert_eq!(
            DiagramDoc::from_diagram(&d).edges.len(),
            DiagramDoc::from_diagram(&g).edges.len()
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Diagram::from_json("{"), Err(Error::Parse(_))));
        let unknown = r#"{"inputs":[],"outputs":["p0"],"nodes":[],"edges":[["p0","n9"]]}"#;
        assert!(matches!(Diagram::from_json(unknown), Err(Error::Parse(_))));
        let bad_phase = r#"{"inputs":[],"outputs":[],"nodes":[{"id":"n0","color":"Z","phase":"x"}],"edges":[]}"#;
        assert!(matches!(
            Diagram::from_json(bad_phase),
            Err(Error::Parse(_))
        ));
        let dangling = r#"{"inputs":[],"outputs":["p0"],"nodes":[],"edges":[]}"#;
        assert!(matches!(
            Diagram::from_json(dangling),
            Err(Error::Validation(_))
        ));
    }
}
