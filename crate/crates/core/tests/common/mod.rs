//! Independent oracles and reference instances shared by the integration tests.
#![allow(dead_code)]

use glueconn::Graph;

/// Example 2, first team: printed 6×6 Laplacian.
pub const TEAM1_LAPLACIAN: [[f64; 6]; 6] = [
    [3., -1., 0., 0., -1., -1.],
    [-1., 2., -1., 0., 0., 0.],
    [0., -1., 3., -1., 0., -1.],
    [0., 0., -1., 3., -1., -1.],
    [-1., 0., 0., -1., 2., 0.],
    [-1., 0., -1., -1., 0., 3.],
];

/// Example 2, second team: printed 4×4 Laplacian.
pub const TEAM2_LAPLACIAN: [[f64; 4]; 4] = [
    [2., -1., 0., -1.],
    [-1., 3., -1., -1.],
    [0., -1., 1., 0.],
    [-1., -1., 0., 2.],
];

/// Printed Laplacian of the two teams joined by one bridge (labels 2–7).
pub const ONE_BRIDGE_LAPLACIAN: [[f64; 10]; 10] = [
    [3., -1., 0., 0., -1., -1., 0., 0., 0., 0.],
    [-1., 3., -1., 0., 0., 0., -1., 0., 0., 0.],
    [0., -1., 3., -1., 0., -1., 0., 0., 0., 0.],
    [0., 0., -1., 3., -1., -1., 0., 0., 0., 0.],
    [-1., 0., 0., -1., 2., 0., 0., 0., 0., 0.],
    [-1., 0., -1., -1., 0., 3., 0., 0., 0., 0.],
    [0., -1., 0., 0., 0., 0., 3., -1., 0., -1.],
    [0., 0., 0., 0., 0., 0., -1., 3., -1., -1.],
    [0., 0., 0., 0., 0., 0., 0., -1., 1., 0.],
    [0., 0., 0., 0., 0., 0., -1., -1., 0., 2.],
];

/// Printed Laplacian with three bridges (labels 2–7, 1–8, 3–10).
pub const THREE_BRIDGE_LAPLACIAN: [[f64; 10]; 10] = [
    [4., -1., 0., 0., -1., -1., 0., -1., 0., 0.],
    [-1., 3., -1., 0., 0., 0., -1., 0., 0., 0.],
    [0., -1., 4., -1., 0., -1., 0., 0., 0., -1.],
    [0., 0., -1., 3., -1., -1., 0., 0., 0., 0.],
    [-1., 0., 0., -1., 2., 0., 0., 0., 0., 0.],
    [-1., 0., -1., -1., 0., 3., 0., 0., 0., 0.],
    [0., -1., 0., 0., 0., 0., 3., -1., 0., -1.],
    [-1., 0., 0., 0., 0., 0., -1., 4., -1., -1.],
    [0., 0., 0., 0., 0., 0., 0., -1., 1., 0.],
    [0., 0., -1., 0., 0., 0., -1., -1., 0., 3.],
];

/// 1-based anchor labels (team 1 label, combined label) converted to
/// `(G₁ vertex, G₂ vertex)` pairs.
pub fn label_bridges(labels: &[(usize, usize)], n1: usize) -> Vec<(usize, usize)> {
    labels.iter().map(|&(a, b)| (a - 1, b - 1 - n1)).collect()
}

pub fn team_graphs() -> (Graph, Graph) {
    (
        Graph::from_laplacian(&TEAM1_LAPLACIAN).unwrap(),
        Graph::from_laplacian(&TEAM2_LAPLACIAN).unwrap(),
    )
}

pub const ONE_BRIDGE_LABELS: [(usize, usize); 1] = [(2, 7)];
pub const THREE_BRIDGE_LABELS: [(usize, usize); 3] = [(2, 7), (1, 8), (3, 10)];

/// Initial states of Example 1 (two teams of three).
pub const EXAMPLE1_X0: [f64; 6] = [5., -3., 4., -5., 2., -1.];
/// Initial states of Example 2 (teams of six and four).
pub const EXAMPLE2_X0: [f64; 10] = [3., 1., 2., -1., 2., -1., -2., 2., -1., 1.];

// ---------------------------------------------------------------------------
// Characteristic-polynomial oracle

/// `det(M)` by cofactor expansion along the first row.
pub fn det_cofactor(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    match n {
        0 => 1.0,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut total = 0.0;
            for col in 0..n {
                if m[0][col] == 0.0 {
                    continue;
                }
                let minor: Vec<Vec<f64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != col)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
                total += sign * m[0][col] * det_cofactor(&minor);
            }
            total
        }
    }
}

/// `det(M − λ I)`.
pub fn char_poly_at(m: &[Vec<f64>], lambda: f64) -> f64 {
    let shifted: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| if i == j { x - lambda } else { x })
                .collect()
        })
        .collect();
    det_cofactor(&shifted)
}

/// Roots of the characteristic polynomial by sign-change scanning over the
/// Gershgorin interval followed by bisection. Returns `None` if fewer than
/// `n` simple roots were isolated at the finest grid tried.
pub fn char_poly_roots(m: &[Vec<f64>]) -> Option<Vec<f64>> {
    let n = m.len();
    let radius = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let off: f64 = row.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.abs()).sum();
            row[i].abs() + off
        })
        .fold(0.0, f64::max)
        + 1.0;
    let (lo, hi) = (-radius, radius);
    for grid in [2_000usize, 20_000, 200_000] {
        let step = (hi - lo) / grid as f64;
        let mut roots = Vec::new();
        let mut a = lo;
        let mut fa = char_poly_at(m, a);
        for k in 1..=grid {
            let b = lo + k as f64 * step;
            let fb = char_poly_at(m, b);
            if fb == 0.0 {
                roots.push(b);
            } else if fa != 0.0 && fa.signum() != fb.signum() {
                let (mut x0, mut x1, mut f0) = (a, b, fa);
                for _ in 0..200 {
                    let mid = 0.5 * (x0 + x1);
                    let fm = char_poly_at(m, mid);
                    if fm == 0.0 {
                        x0 = mid;
                        x1 = mid;
                        break;
                    }
                    if fm.signum() == f0.signum() {
                        x0 = mid;
                        f0 = fm;
                    } else {
                        x1 = mid;
                    }
                    if x1 - x0 < 1e-14 {
                        break;
                    }
                }
                roots.push(0.5 * (x0 + x1));
            }
            a = b;
            fa = fb;
        }
        if roots.len() == n {
            return Some(roots);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Graph oracles

/// Connectivity by repeated neighbourhood expansion over the edge list.
pub fn connected_by_closure(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return false;
    }
    let mut reached = vec![false; n];
    reached[0] = true;
    loop {
        let mut changed = false;
        for &(u, v) in edges {
            if reached[u] != reached[v] {
                reached[u] = true;
                reached[v] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    reached.into_iter().all(|r| r)
}

/// Number of edges with exactly one endpoint in the bitmask `s`.
pub fn boundary_edges(edges: &[(usize, usize)], s: u64) -> usize {
    edges
        .iter()
        .filter(|&&(u, v)| (s >> u & 1) != (s >> v & 1))
        .count()
}

/// All labelled graphs on `n` vertices, as edge lists.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    })
}

/// `λ₂` of a small Laplacian from the roots of its characteristic polynomial.
pub fn lambda2_oracle(g: &Graph) -> f64 {
    let l: Vec<Vec<f64>> = g.laplacian().rows().map(|r| r.to_vec()).collect();
    let mut roots = char_poly_roots_with_multiplicity(&l);
    roots.sort_by(f64::total_cmp);
    roots[1]
}

/// Roots counted with multiplicity. The characteristic polynomial is
/// interpolated from `det(M − λI)` at `n + 1` integer nodes (exact for integer
/// matrices), then roots are peeled off smallest first by a sign-change scan,
/// with even-multiplicity roots found as zeros of the derivative, and
/// deflated by synthetic division.
pub fn char_poly_roots_with_multiplicity(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let nodes: Vec<f64> = (0..=n).map(|k| k as f64).collect();
    let values: Vec<f64> = nodes.iter().map(|&x| char_poly_at(m, x)).collect();
    let mut coeffs = newton_to_monomial(&nodes, &divided_differences(&nodes, &values));
    let mut roots = Vec::new();
    let bound = m
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.abs()).sum::<f64>() + row[i].abs())
        .fold(0.0, f64::max)
        + 1.0;
    while coeffs.len() > 1 {
        let root = smallest_root(&coeffs, -bound, bound)
            .expect("characteristic polynomial of a symmetric matrix has real roots");
        roots.push(root);
        coeffs = deflate(&coeffs, root);
    }
    roots
}

fn divided_differences(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut c = y.to_vec();
    for j in 1..x.len() {
        for i in (j..x.len()).rev() {
            c[i] = (c[i] - c[i - 1]) / (x[i] - x[i - j]);
        }
    }
    c
}

/// Newton form to monomial coefficients, lowest degree first.
fn newton_to_monomial(x: &[f64], c: &[f64]) -> Vec<f64> {
    let n = c.len();
    let mut p = vec![0.0; n];
    p[0] = c[n - 1];
    for (deg, k) in (0..n - 1).rev().enumerate() {
        // p = p * (t - x[k]) + c[k]
        let mut next = vec![0.0; n];
        for d in 0..=deg {
            next[d + 1] += p[d];
            next[d] -= x[k] * p[d];
        }
        next[0] += c[k];
        p = next;
    }
    p
}

fn eval_poly(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * t + a)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, &a)| i as f64 * a).collect()
}

/// Smallest real root in `[lo, hi]`: the smallest sign change of `p`, or a
/// double root located as a zero of `p'` where `|p|` is negligible.
fn smallest_root(c: &[f64], lo: f64, hi: f64) -> Option<f64> {
    let grid = 200_000;
    let step = (hi - lo) / grid as f64;
    let scale: f64 = c.iter().map(|a| a.abs()).fold(0.0, f64::max);
    let dc = derivative(c);
    let mut a = lo;
    let mut fa = eval_poly(c, a);
    let mut da = eval_poly(&dc, a);
    for k in 1..=grid {
        let b = lo + k as f64 * step;
        let fb = eval_poly(c, b);
        let db = eval_poly(&dc, b);
        if fa.signum() != fb.signum() || fb == 0.0 {
            return Some(bisect(|t| eval_poly(c, t), a, b));
        }
        if da.signum() != db.signum() {
            let t = bisect(|t| eval_poly(&dc, t), a, b);
            if eval_poly(c, t).abs() <= 1e-9 * scale {
                return Some(t);
            }
        }
        a = b;
        fa = fb;
        da = db;
    }
    None
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if b - a < 1e-15 {
            break;
        }
    }
    0.5 * (a + b)
}

/// Synthetic division by `(t − r)`.
fn deflate(c: &[f64], r: f64) -> Vec<f64> {
    let n = c.len() - 1;
    let mut q = vec![0.0; n];
    let mut carry = 0.0;
    for i in (0..n).rev() {
        carry = c[i + 1] + carry * r;
        q[i] = carry;
    }
    q
}
