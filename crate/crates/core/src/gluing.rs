//! Bridge gluing and interface gluing of two graphs.
//!
//! Bridge gluing places `G₁` on indices `0..n₁` and `G₂` on `n₁..n₁+n₂`, then
//! adds one edge per anchor pair. Interface gluing identifies a shared full
//! (induced) subgraph `Y` and lays the result out as `G₁∖Y`, then `Y`, then
//! `G₂∖Y`, which is the block order the interface bound works in.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Anchor pairs `(vertex of G₁, vertex of G₂)`, one per bridge edge.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BridgeSpec {
    pairs: Vec<(usize, usize)>,
    relaxed: bool,
}

impl BridgeSpec {
    /// Strict spec: every anchor appears at most once on its side.
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        for side in [1u8, 2] {
            let mut seen: Vec<usize> = pairs
                .iter()
                .map(|&(a, b)| if side == 1 { a } else { b })
                .collect();
            seen.sort_unstable();
            if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateAnchor { side, vertex: w[0] });
            }
        }
        Ok(BridgeSpec {
            pairs,
            relaxed: false,
        })
    }

    /// Allows one vertex to anchor several bridge edges; only repeated pairs are rejected.
    pub fn relaxed(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut sorted = pairs.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateBridge(w[0].0, w[0].1));
        }
        Ok(BridgeSpec {
            pairs,
            relaxed: true,
        })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Number of bridge edges `k`.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    /// The first `k` pairs.
    pub fn prefix(&self, k: usize) -> BridgeSpec {
        BridgeSpec {
            pairs: self.pairs[..k.min(self.pairs.len())].to_vec(),
            relaxed: self.relaxed,
        }
    }
}

/// Identification of a shared full subgraph `Y`: position `i` of both lists
/// names the same vertex of `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterfaceSpec {
    y_in_g1: Vec<usize>,
    y_in_g2: Vec<usize>,
}

impl InterfaceSpec {
    /// Checks lengths and repeats. Full-subgraph consistency needs the graphs,
    /// see [`InterfaceSpec::validate`].
    pub fn new(y_in_g1: Vec<usize>, y_in_g2: Vec<usize>) -> Result<Self> {
        if y_in_g1.len() != y_in_g2.len() {
            return Err(Error::InterfaceLengthMismatch {
                g1: y_in_g1.len(),
                g2: y_in_g2.len(),
            });
        }
        for (side, list) in [(1u8, &y_in_g1), (2, &y_in_g2)] {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InterfaceRepeat { side, vertex: w[0] });
            }
        }
        Ok(InterfaceSpec { y_in_g1, y_in_g2 })
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        InterfaceSpec::new(
            pairs.iter().map(|p| p.0).collect(),
            pairs.iter().map(|p| p.1).collect(),
        )
    }

    pub fn y_in_g1(&self) -> &[usize] {
        &self.y_in_g1
    }

    pub fn y_in_g2(&self) -> &[usize] {
        &self.y_in_g2
    }

    /// `|Y|`.
    pub fn len(&self) -> usize {
        self.y_in_g1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y_in_g1.is_empty()
    }

    pub fn g1_set(&self) -> VertexSet {
        self.y_in_g1.iter().copied().collect()
    }

    pub fn g2_set(&self) -> VertexSet {
        self.y_in_g2.iter().copied().collect()
    }

    /// Range checks plus the full-subgraph condition: for every pair of
    /// positions the edge exists in `G₁` exactly when it exists in `G₂`.
    /// Returns the number of edges of `Y`.
    pub fn validate(&self, g1: &Graph, g2: &Graph) -> Result<usize> {
        for (side, list, g) in [(1u8, &self.y_in_g1, g1), (2, &self.y_in_g2, g2)] {
            if let Some(&vertex) = list.iter().find(|&&v| v >= g.vertex_count()) {
                return Err(Error::InvalidInterfaceVertex {
                    side,
                    vertex,
                    vertex_count: g.vertex_count(),
                });
            }
        }
        let mut y_edges = 0;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let g1_pair = (self.y_in_g1[i], self.y_in_g1[j]);
                let g2_pair = (self.y_in_g2[i], self.y_in_g2[j]);
                let in_g1 = g1.has_edge(g1_pair.0, g1_pair.1);
                let in_g2 = g2.has_edge(g2_pair.0, g2_pair.1);
                if in_g1 != in_g2 {
                    return Err(Error::InterfaceEdgeMismatch {
                        i,
                        j,
                        g1_pair,
                        g2_pair,
                        in_g1,
                        in_g2,
                    });
                }
                y_edges += in_g1 as usize;
            }
        }
        Ok(y_edges)
    }
}

/// How a [`GlueResult`] was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlueKind {
    /// Bridge edges in combined indices, in the order they were added.
    Bridge { edges: Vec<(usize, usize)> },
    Interface { y_size: usize, y_edges: usize },
}

/// Combined graph plus the maps from each input's vertices into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueResult {
    pub graph: Graph,
    pub map_g1: Vec<usize>,
    pub map_g2: Vec<usize>,
    pub kind: GlueKind,
}

impl GlueResult {
    pub fn n1(&self) -> usize {
        self.map_g1.len()
    }

    pub fn n2(&self) -> usize {
        self.map_g2.len()
    }

    /// Bridge edges still present; empty for interface gluing.
    pub fn bridge_edges(&self) -> &[(usize, usize)] {
        match &self.kind {
            GlueKind::Bridge { edges } => edges,
            GlueKind::Interface { .. } => &[],
        }
    }

    /// Combined-graph vertices that came from `G₁`.
    pub fn g1_block(&self) -> VertexSet {
        self.map_g1.iter().copied().collect()
    }

    pub fn g2_block(&self) -> VertexSet {
        self.map_g2.iter().copied().collect()
    }
}

/// `G₁ ⊔_B G₂`.
pub fn bridge_glue(g1: &Graph, g2: &Graph, bridge: &BridgeSpec) -> Result<GlueResult> {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    for &(a, b) in bridge.pairs() {
        if a >= n1 {
            return Err(Error::InvalidAnchor {
                side: 1,
                vertex: a,
                vertex_count: n1,
            });
        }
        if b >= n2 {
            return Err(Error::InvalidAnchor {
                side: 2,
                vertex: b,
                vertex_count: n2,
            });
        }
    }
    let bridge_edges: Vec<(usize, usize)> = bridge.pairs().iter().map(|&(a, b)| (a, n1 + b)).collect();
    let edges: Vec<(usize, usize)> = g1
        .edges()
        .iter()
        .copied()
        .chain(g2.edges().iter().map(|&(u, v)| (u + n1, v + n1)))
        .chain(bridge_edges.iter().copied())
        .collect();
    let graph = Graph::new(n1 + n2, &edges)?;
    Ok(GlueResult {
        graph,
        map_g1: (0..n1).collect(),
        map_g2: (n1..n1 + n2).collect(),
        kind: GlueKind::Bridge {
            edges: bridge_edges,
        },
    })
}

/// `G₁ ∪_Y G₂`.
pub fn interface_glue(g1: &Graph, g2: &Graph, iface: &InterfaceSpec) -> Result<GlueResult> {
    let y_edges = iface.validate(g1, g2)?;
    let (n1, n2, ny) = (g1.vertex_count(), g2.vertex_count(), iface.len());

    const UNSET: usize = usize::MAX;
    let mut map_g1 = vec![UNSET; n1];
    let mut map_g2 = vec![UNSET; n2];
    let in_y1 = iface.g1_set();
    let in_y2 = iface.g2_set();

    let mut next = 0;
    for (v, slot) in map_g1.iter_mut().enumerate() {
        if !in_y1.contains(v) {
            *slot = next;
            next += 1;
        }
    }
    for (&a, &b) in iface.y_in_g1().iter().zip(iface.y_in_g2()) {
        map_g1[a] = next;
        map_g2[b] = next;
        next += 1;
    }
    for (v, slot) in map_g2.iter_mut().enumerate() {
        if !in_y2.contains(v) {
            *slot = next;
            next += 1;
        }
    }
    debug_assert_eq!(next, n1 + n2 - ny);

    let mut edges: Vec<(usize, usize)> = g1
        .edges()
        .iter()
        .map(|&(u, v)| (map_g1[u], map_g1[v]))
        .collect();
    // Y's edges are already present from G₁.
    edges.extend(
        g2.edges()
            .iter()
            .filter(|&&(u, v)| !(in_y2.contains(u) && in_y2.contains(v)))
            .map(|&(u, v)| (map_g2[u], map_g2[v])),
    );
    let graph = Graph::new(next, &edges)?;
    Ok(GlueResult {
        graph,
        map_g1,
        map_g2,
        kind: GlueKind::Interface {
            y_size: ny,
            y_edges,
        },
    })
}

/// Drops the `count` most recently added bridge edges.
pub fn remove_bridge_edges(result: &GlueResult, count: usize) -> Result<GlueResult> {
    let available = result.bridge_edges();
    if count > available.len() {
        return Err(Error::NotEnoughBridgeEdges {
            requested: count,
            available: available.len(),
        });
    }
    let keep = available.len() - count;
    let removed = &available[keep..];
    Ok(GlueResult {
        graph: result.graph.without_edges(removed),
        map_g1: result.map_g1.clone(),
        map_g2: result.map_g2.clone(),
        kind: GlueKind::Bridge {
            edges: available[..keep].to_vec(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bridge_between_paths() {
        let p3 = Graph::path(3);
        let r = bridge_glue(&p3, &p3, &BridgeSpec::new(vec![(0, 0)]).unwrap()).unwrap();
        assert_eq!(r.graph.vertex_count(), 6);
        assert_eq!(r.graph.edge_count(), 5);
        assert!(r.graph.has_edge(0, 3));
        assert!(r.graph.is_connected().unwrap());
    }

    #[test]
    fn empty_bridge_disconnects() {
        let p3 = Graph::path(3);
        let r = bridge_glue(&p3, &p3, &BridgeSpec::default()).unwrap();
        assert_eq!(r.graph.component_count(), 2);
    }

    #[test]
    fn strict_bridge_rejects_shared_anchor() {
        assert!(matches!(
            BridgeSpec::new(vec![(0, 1), (0, 2)]),
            Err(Error::DuplicateAnchor { side: 1, vertex: 0 })
        ));
        assert!(matches!(
            BridgeSpec::new(vec![(0, 2), (1, 2)]),
            Err(Error::DuplicateAnchor { side: 2, vertex: 2 })
        ));
        let relaxed = BridgeSpec::relaxed(vec![(0, 1), (0, 2)]).unwrap();
        let r = bridge_glue(&Graph::path(2), &Graph::path(3), &relaxed).unwrap();
        assert_eq!(r.graph.edge_count(), 1 + 2 + 2);
        assert!(BridgeSpec::relaxed(vec![(0, 1), (0, 1)]).is_err());
    }

    #[test]
    fn bridge_anchor_out_of_range() {
        let p3 = Graph::path(3);
        assert!(matches!(
            bridge_glue(&p3, &p3, &BridgeSpec::new(vec![(0, 3)]).unwrap()),
            Err(Error::InvalidAnchor { side: 2, vertex: 3, .. })
        ));
    }

    #[test]
    fn two_p2_at_common_vertex_is_p3() {
        let p2 = Graph::path(2);
        let iface = InterfaceSpec::new(vec![1], vec![0]).unwrap();
        let r = interface_glue(&p2, &p2, &iface).unwrap();
        assert_eq!(r.graph, Graph::path(3));
        assert_eq!(r.map_g1, vec![0, 1]);
        assert_eq!(r.map_g2, vec![1, 2]);
    }

    #[test]
    fn total_identification_returns_g1() {
        let g = Graph::cycle(4);
        let iface = InterfaceSpec::new(vec![0, 1, 2, 3], vec![0, 1, 2, 3]).unwrap();
        let r = interface_glue(&g, &g, &iface).unwrap();
        assert_eq!(r.graph, g);
    }

    #[test]
    fn triangles_sharing_an_edge() {
        let k3 = Graph::complete(3);
        let iface = InterfaceSpec::new(vec![1, 2], vec![0, 1]).unwrap();
        let r = interface_glue(&k3, &k3, &iface).unwrap();
        assert_eq!(r.graph.vertex_count(), 4);
        assert_eq!(r.graph.edge_count(), 5);
        assert_eq!(r.kind, GlueKind::Interface { y_size: 2, y_edges: 1 });
        assert_eq!(r.map_g1[1], r.map_g2[0]);
        assert_eq!(r.map_g1[2], r.map_g2[1]);
    }

    #[test]
    fn interface_mismatch_names_pair() {
        let k3 = Graph::complete(3);
        let p3 = Graph::path(3);
        // (0, 2) is an edge of K3 but not of P3
        let iface = InterfaceSpec::new(vec![0, 2], vec![0, 2]).unwrap();
        match interface_glue(&k3, &p3, &iface) {
            Err(Error::InterfaceEdgeMismatch {
                i: 0,
                j: 1,
                g1_pair: (0, 2),
                g2_pair: (0, 2),
                in_g1: true,
                in_g2: false,
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn interface_spec_validation() {
        assert!(matches!(
            InterfaceSpec::new(vec![0, 1], vec![0]),
            Err(Error::InterfaceLengthMismatch { .. })
        ));
        assert!(matches!(
            InterfaceSpec::new(vec![0, 0], vec![0, 1]),
            Err(Error::InterfaceRepeat { side: 1, vertex: 0 })
        ));
        let iface = InterfaceSpec::new(vec![5], vec![0]).unwrap();
        assert!(interface_glue(&Graph::path(2), &Graph::path(2), &iface).is_err());
    }

    #[test]
    fn removing_bridges_last_first() {
        let p3 = Graph::path(3);
        let spec = BridgeSpec::new(vec![(0, 0), (2, 2)]).unwrap();
        let r = bridge_glue(&p3, &p3, &spec).unwrap();
        let one = remove_bridge_edges(&r, 1).unwrap();
        assert_eq!(one.bridge_edges(), &[(0, 3)]);
        assert!(!one.graph.has_edge(2, 5));
        assert_eq!(remove_bridge_edges(&r, 0).unwrap(), r);
        let none = remove_bridge_edges(&r, 2).unwrap();
        assert_eq!(none.graph.component_count(), 2);
        assert!(matches!(
            remove_bridge_edges(&r, 3),
            Err(Error::NotEnoughBridgeEdges { requested: 3, available: 2 })
        ));
    }
}
