//! Random graph families and random gluing specifications.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::gluing::{BridgeSpec, InterfaceSpec};
use crate::graph::Graph;

/// Connected graph on `n` vertices: a random recursive tree plus each
/// remaining pair independently with probability `extra_edge_prob`.
pub fn random_connected<R: Rng + ?Sized>(rng: &mut R, n: usize, extra_edge_prob: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((parent.min(order[i]), parent.max(order[i])));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(extra_edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("generated edges are valid")
}

/// Erdős–Rényi `G(n, p)`; may be disconnected.
pub fn random_gnp<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, &edges).expect("generated edges are valid")
}

/// `k` bridge pairs with distinct anchors on each side; `k ≤ min(n1, n2)`.
pub fn random_bridge<R: Rng + ?Sized>(rng: &mut R, n1: usize, n2: usize, k: usize) -> BridgeSpec {
    assert!(k <= n1.min(n2));
    let mut a: Vec<usize> = (0..n1).collect();
    let mut b: Vec<usize> = (0..n2).collect();
    a.shuffle(rng);
    b.shuffle(rng);
    BridgeSpec::new(a.into_iter().zip(b).take(k).collect()).expect("anchors are distinct")
}

/// A random connected pair `(G₁, G₂)` sharing a full subgraph `Y` with
/// `y_size` vertices, where `1 ≤ y_size < min(n1, n2)`.
///
/// `G₂` contains a copy of `G₁[Y]` on shuffled labels. Its remaining vertices
/// form a random tree, every `Y` vertex gets at least one edge into that tree,
/// and extra edges are added only where at least one endpoint lies outside `Y`,
/// so the induced subgraph on `Y` matches in both graphs.
pub fn random_interface_pair<R: Rng + ?Sized>(
    rng: &mut R,
    n1: usize,
    n2: usize,
    y_size: usize,
    extra_edge_prob: f64,
) -> (Graph, Graph, InterfaceSpec) {
    assert!(y_size >= 1 && y_size < n1.min(n2));
    let g1 = random_connected(rng, n1, extra_edge_prob);
    let mut vertices: Vec<usize> = (0..n1).collect();
    vertices.shuffle(rng);
    let y_in_g1: Vec<usize> = vertices[..y_size].to_vec();

    let mut labels: Vec<usize> = (0..n2).collect();
    labels.shuffle(rng);
    let y_in_g2: Vec<usize> = labels[..y_size].to_vec();
    let others: Vec<usize> = labels[y_size..].to_vec();

    let mut edges = Vec::new();
    let push = |edges: &mut Vec<(usize, usize)>, u: usize, v: usize| {
        let e = (u.min(v), u.max(v));
        if !edges.contains(&e) {
            edges.push(e);
        }
    };
    for i in 0..y_size {
        for j in i + 1..y_size {
            if g1.has_edge(y_in_g1[i], y_in_g1[j]) {
                push(&mut edges, y_in_g2[i], y_in_g2[j]);
            }
        }
    }
    for i in 1..others.len() {
        let parent = others[rng.gen_range(0..i)];
        push(&mut edges, parent, others[i]);
    }
    for &y in &y_in_g2 {
        let o = others[rng.gen_range(0..others.len())];
        push(&mut edges, y, o);
    }
    for &o in &others {
        for v in 0..n2 {
            if v != o && rng.gen_bool(extra_edge_prob) {
                push(&mut edges, o, v);
            }
        }
    }
    let g2 = Graph::new(n2, &edges).expect("generated edges are valid");
    let iface = InterfaceSpec::new(y_in_g1, y_in_g2).expect("interface lists are distinct");
    (g1, g2, iface)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_graphs_are_connected() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in 1..12 {
            assert!(random_connected(&mut rng, n, 0.2).is_connected().unwrap());
        }
    }

    #[test]
    fn generated_interfaces_validate() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let n1 = rng.gen_range(3..=10);
            let n2 = rng.gen_range(3..=10);
            let y = rng.gen_range(1..n1.min(n2));
            let (g1, g2, iface) = random_interface_pair(&mut rng, n1, n2, y, 0.3);
            assert!(g2.is_connected().unwrap());
            iface.validate(&g1, &g2).unwrap();
        }
    }
}
