use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{DominantWeight, LatticePoint, Rank};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphNode {
    pub id: usize,
    pub x: Vec<i64>,
    pub wt: Vec<i64>,
}

/// `f_i(from) = to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub i: usize,
}

/// Finite crystal graph. Node ids follow the lexicographic order of the
/// coordinates, edges are sorted by `(from, i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrystalGraph {
    pub n: usize,
    pub lambda: Vec<i64>,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

impl CrystalGraph {
    pub(super) fn from_parts(
        n: Rank,
        lambda: &DominantWeight,
        points: Vec<LatticePoint>,
        raw_edges: Vec<(usize, usize, usize)>,
        weight: impl Fn(&LatticePoint) -> Vec<i64>,
    ) -> Self {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a].cmp(&points[b]));
        let mut new_id = vec![0; points.len()];
        for (id, &old) in order.iter().enumerate() {
            new_id[old] = id;
        }
        let nodes = order
            .iter()
            .enumerate()
            .map(|(id, &old)| GraphNode { id, x: points[old].coords().to_vec(), wt: weight(&points[old]) })
            .collect();
        let mut edges: Vec<GraphEdge> =
            raw_edges.into_iter().map(|(a, b, i)| GraphEdge { from: new_id[a], to: new_id[b], i }).collect();
        edges.sort_by_key(|e| (e.from, e.i, e.to));
        CrystalGraph { n: n.get(), lambda: lambda.coeffs().to_vec(), nodes, edges }
    }

    pub fn rank(&self) -> Result<Rank> {
        Rank::new(self.n)
    }

    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        let n = Rank::new(self.n).expect("validated rank");
        self.nodes.iter().map(move |v| LatticePoint::from_coords(n, v.x.clone()).expect("validated length"))
    }

    /// Reads graph JSON and checks its shape: ids in order, coordinate and
    /// weight lengths, edge endpoints, colors, one edge per `(from, i)`.
    pub fn from_json(s: &str) -> Result<Self> {
        let g: CrystalGraph = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let n = Rank::new(self.n)?;
        DominantWeight::for_rank(self.lambda.clone(), n)?;
        for (k, node) in self.nodes.iter().enumerate() {
            if node.id != k {
                return Err(Error::Parse(format!("node {k} has id {}", node.id)));
            }
            if node.x.len() != n.dim() {
                return Err(Error::DimensionMismatch { expected: n.dim(), got: node.x.len() });
            }
            if node.wt.len() != n.get() {
                return Err(Error::DimensionMismatch { expected: n.get(), got: node.wt.len() });
            }
        }
        let mut seen = std::collections::HashSet::new();
        for e in &self.edges {
            if e.from >= self.nodes.len() || e.to >= self.nodes.len() {
                return Err(Error::Parse(format!("edge {e:?} points outside the node list")));
            }
            n.check_node(e.i)?;
            if !seen.insert((e.from, e.i)) {
                return Err(Error::Parse(format!("two {}-edges leave node {}", e.i, e.from)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n");
        for v in &self.nodes {
            let coords: Vec<String> = v.x.iter().map(i64::to_string).collect();
            let _ = writeln!(out, "  {} [label=\"{}\"];", v.id, coords.join(","));
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", e.from, e.to, e.i);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let lambda: Vec<String> = self.lambda.iter().map(i64::to_string).collect();
        let _ = writeln!(
            out,
            "D_{} lambda=({}) nodes={} edges={}",
            self.n,
            lambda.join(","),
            self.nodes.len(),
            self.edges.len()
        );
        for v in &self.nodes {
            let _ = writeln!(out, "{}: x={:?} wt={:?}", v.id, v.x, v.wt);
        }
        for e in &self.edges {
            let _ = writeln!(out, "{} -{}-> {}", e.from, e.i, e.to);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{Crystal, DEFAULT_NODE_BUDGET};

    fn vector_graph() -> CrystalGraph {
        let n = Rank::new(4).unwrap();
        Crystal::new(n, DominantWeight::fundamental(n, 1).unwrap()).unwrap().generate(DEFAULT_NODE_BUDGET).unwrap()
    }

    #[test]
    fn ids_are_lexicographic() {
        let g = vector_graph();
        assert_eq!(g.nodes[0].x, vec![0; 12]);
        assert!(g.nodes.windows(2).all(|w| w[0].x < w[1].x));
    }

    #[test]
    fn json_round_trip() {
        let g = vector_graph();
        let s = g.to_json();
        assert!(s.starts_with("{\n  \"n\": 4,\n  \"lambda\""));
        assert_eq!(CrystalGraph::from_json(&s).unwrap(), g);
    }

    #[test]
    fn json_validation() {
        let mut g = vector_graph();
        g.edges.push(GraphEdge { from: 0, to: 99, i: 1 });
        assert!(CrystalGraph::from_json(&g.to_json()).is_err());
        let mut g = vector_graph();
        g.nodes[1].x.pop();
        assert!(CrystalGraph::from_json(&g.to_json()).is_err());
        assert!(CrystalGraph::from_json("{\"n\": 1, \"lambda\": [0], \"nodes\": [], \"edges\": []}").is_err());
        assert!(CrystalGraph::from_json("not json").is_err());
    }

    #[test]
    fn dot_for_trivial_weight() {
        let n = Rank::new(4).unwrap();
        let g = Crystal::new(n, DominantWeight::zero(n)).unwrap().generate(10).unwrap();
        assert_eq!(g.to_dot(), "digraph crystal {\n  0 [label=\"0,0,0,0,0,0,0,0,0,0,0,0\"];\n}\n");
    }
}
