//! Undirected simple graphs and the matrix and cut primitives built on them.
//!
//! Vertices are dense 0-based indices. Edges are stored once, as `(min, max)`
//! pairs in ascending order, so two graphs with the same edge set compare
//! equal regardless of the order the edges were supplied in.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Largest entry-wise asymmetry accepted by [`DenseSymMatrix::from_rows`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// duplicate edges (`(u, v)` and `(v, u)` are the same edge).
    pub fn new(vertex_count: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }

        let mut neighbors = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Graph {
            vertex_count,
            edges,
            neighbors,
        })
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            vertex_count: n,
            edges: Vec::new(),
            neighbors: vec![Vec::new(); n],
        }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        if n < 3 {
            return Graph::path(n);
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::new(n, &edges).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::new(n, &edges).expect("complete-graph edges are valid")
    }

    /// Star with centre 0.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Graph::new(n, &edges).expect("star edges are valid")
    }

    /// Recovers an unweighted graph from its Laplacian. Off-diagonal entries
    /// must be 0 or −1, the matrix symmetric, and each diagonal entry equal to
    /// the number of −1 entries in its row.
    pub fn from_laplacian<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let l = DenseSymMatrix::from_rows(rows)?;
        let n = l.order();
        let mut edges = Vec::new();
        for i in 0..n {
            let mut degree = 0usize;
            for j in 0..n {
                if i == j {
                    continue;
                }
                match l.get(i, j) {
                    0.0 => {}
                    -1.0 => {
                        degree += 1;
                        if i < j {
                            edges.push((i, j));
                        }
                    }
                    x => {
                        return Err(Error::NotALaplacian(format!(
                            "entry ({i}, {j}) = {x}, expected 0 or -1"
                        )))
                    }
                }
            }
            if l.get(i, i) != degree as f64 {
                return Err(Error::NotALaplacian(format!(
                    "diagonal entry {i} = {} but row has {degree} neighbours",
                    l.get(i, i)
                )));
            }
        }
        Graph::new(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical `(min, max)` ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count && v < self.vertex_count && self.neighbors[u].binary_search(&v).is_ok()
    }

    /// Returns a copy with one more edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push((u, v));
        Graph::new(self.vertex_count, &edges)
    }

    /// Returns a copy with the given edges removed; edges not present are ignored.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Self {
        let removed: Vec<_> = removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let kept: Vec<_> = self
            .edges
            .iter()
            .copied()
            .filter(|e| !removed.contains(e))
            .collect();
        Graph::new(self.vertex_count, &kept).expect("subset of a valid edge set")
    }

    pub fn adjacency(&self) -> DenseSymMatrix {
        let mut m = DenseSymMatrix::zeros(self.vertex_count);
        for &(u, v) in &self.edges {
            m.set_sym(u, v, 1.0);
        }
        m
    }

    pub fn degree_matrix(&self) -> DenseSymMatrix {
        let mut m = DenseSymMatrix::zeros(self.vertex_count);
        for v in 0..self.vertex_count {
            m.set_sym(v, v, self.degree(v) as f64);
        }
        m
    }

    /// `L = D - A`.
    pub fn laplacian(&self) -> DenseSymMatrix {
        let mut m = DenseSymMatrix::zeros(self.vertex_count);
        for &(u, v) in &self.edges {
            m.set_sym(u, v, -1.0);
            m.add_diag(u, 1.0);
            m.add_diag(v, 1.0);
        }
        m
    }

    /// Whether a breadth-first search from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> Result<bool> {
        if self.vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(self.components().iter().all(|&c| c == 0))
    }

    /// Component label for each vertex, numbered in order of first appearance.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.vertex_count {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &self.neighbors[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Number of edges with one endpoint in `s1` and the other in `s2`.
    pub fn cut(&self, s1: &VertexSet, s2: &VertexSet) -> Result<usize> {
        s1.check_within(self)?;
        s2.check_within(self)?;
        if s1.is_empty() || s2.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut side = vec![0u8; self.vertex_count];
        for &v in s1.members() {
            side[v] = 1;
        }
        for &v in s2.members() {
            if side[v] == 1 {
                return Err(Error::OverlappingSets(v));
            }
            side[v] = 2;
        }
        Ok(self
            .edges
            .iter()
            .filter(|&&(u, v)| side[u] | side[v] == 3)
            .count())
    }

    /// `V(G) \ s`.
    pub fn complement(&self, s: &VertexSet) -> Result<VertexSet> {
        s.check_within(self)?;
        Ok(VertexSet::from_sorted(
            (0..self.vertex_count).filter(|v| !s.contains(*v)).collect(),
        ))
    }

    /// Subgraph induced on `vertices`, relabelled to `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut position = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: self.vertex_count,
                });
            }
            position[v] = i;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| position[u] != usize::MAX && position[v] != usize::MAX)
            .map(|&(u, v)| (position[u], position[v]))
            .collect();
        Graph::new(vertices.len(), &edges)
    }
}

/// Sorted, duplicate-free set of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<_> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    fn from_sorted(members: Vec<usize>) -> Self {
        VertexSet { members }
    }

    /// Members of the bitmask `mask` (bit `i` set means vertex `i` is in the set).
    pub fn from_mask(mask: u64) -> Self {
        VertexSet::from_sorted((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.members.iter().all(|&v| !other.contains(v))
    }

    pub fn check_within(&self, g: &Graph) -> Result<()> {
        match self.members.last() {
            Some(&v) if v >= g.vertex_count() => Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: g.vertex_count(),
            }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::new(iter)
    }
}

/// Dense, row-major, exactly symmetric real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymMatrix {
    order: usize,
    data: Vec<f64>,
}

impl DenseSymMatrix {
    pub fn zeros(order: usize) -> Self {
        DenseSymMatrix {
            order,
            data: vec![0.0; order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = DenseSymMatrix::zeros(order);
        for i in 0..order {
            m.data[i * order + i] = 1.0;
        }
        m
    }

    /// Accepts a square matrix whose mirrored entries differ by at most
    /// [`SYMMETRY_TOLERANCE`] and stores the symmetric part.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        for row in rows {
            if row.as_ref().len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.as_ref().len(),
                });
            }
        }
        let mut m = DenseSymMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = rows[i].as_ref()[i];
            for j in i + 1..n {
                let a = rows[i].as_ref()[j];
                let b = rows[j].as_ref()[i];
                let deviation = (a - b).abs();
                if deviation > SYMMETRY_TOLERANCE || !deviation.is_finite() {
                    return Err(Error::Asymmetric {
                        row: i,
                        col: j,
                        deviation,
                    });
                }
                m.set_sym(i, j, 0.5 * (a + b));
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    /// Sets `m[i][j]` and `m[j][i]`.
    pub fn set_sym(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.order + j] = value;
        self.data[j * self.order + i] = value;
    }

    fn add_diag(&mut self, i: usize, value: f64) {
        self.data[i * self.order + i] += value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.order.max(1)).take(self.order)
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.order];
        self.mul_vec_into(x, &mut out);
        out
    }

    pub fn mul_vec_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.order);
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    /// `xᵀ M x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Principal submatrix on `rows` (in the given order) by `cols`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<f64>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j)).collect())
            .collect()
    }

    /// Symmetric permutation `P M Pᵀ`: entry `(a, b)` of the result is `m[order[a]][order[b]]`.
    pub fn permuted(&self, order: &[usize]) -> DenseSymMatrix {
        let n = order.len();
        let mut out = DenseSymMatrix::zeros(n);
        for a in 0..n {
            for b in 0..n {
                out.data[a * n + b] = self.get(order[a], order[b]);
            }
        }
        out
    }
}

impl fmt::Display for DenseSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| format!("{:>8.4}", x)).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
