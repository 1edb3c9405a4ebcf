//! Symmetric eigensolver, Fiedler pair extraction, and the interface block
//! decomposition of a Laplacian.
//!
//! The solver is a cyclic Jacobi iteration. Each sweep visits every
//! off-diagonal pair `(p, q)` once and applies the plane rotation that
//! annihilates `m[p][q]`; the rotations are accumulated into the eigenvector
//! matrix. Iteration stops when the off-diagonal Frobenius norm falls below
//! [`OFF_DIAGONAL_TOLERANCE`] times the Frobenius norm of the input.

use crate::error::{Error, Result};
use crate::graph::{DenseSymMatrix, Graph, VertexSet};

/// Relative off-diagonal norm at which the Jacobi iteration stops.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;
/// Sweep limit for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;
/// Eigenvalues with magnitude at or below this are counted as zero.
pub const ZERO_TOLERANCE: f64 = 1e-8;

/// Eigen-decomposition of a symmetric matrix, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SymEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

impl SymEigen {
    /// `‖M v_k − λ_k v_k‖₂`.
    pub fn residual(&self, m: &DenseSymMatrix, k: usize) -> f64 {
        let v = &self.vectors[k];
        m.mul_vec(v)
            .iter()
            .zip(v)
            .map(|(mv, x)| (mv - self.values[k] * x).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * s).sqrt()
}

/// Full eigen-decomposition of `m` by cyclic Jacobi rotations.
pub fn eig_sym(m: &DenseSymMatrix) -> Result<SymEigen> {
    let n = m.order();
    let mut a: Vec<f64> = m.rows().flatten().copied().collect();
    // v is stored row-major with eigenvectors in columns.
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let threshold = OFF_DIAGONAL_TOLERANCE * m.frobenius_norm();
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
        .collect();
    Ok(SymEigen {
        values,
        vectors,
        sweeps,
    })
}

/// Laplacian spectrum with the Fiedler pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub eigenvalues: Vec<f64>,
    pub fiedler_value: f64,
    /// Unit norm, orthogonal to the all-ones vector, first significant entry positive.
    pub fiedler_vector: Vec<f64>,
    /// Number of eigenvalues within [`ZERO_TOLERANCE`] of zero.
    pub zero_multiplicity: usize,
}

impl SpectralReport {
    pub fn is_connected(&self) -> bool {
        self.fiedler_value > ZERO_TOLERANCE
    }

    pub fn largest(&self) -> f64 {
        *self.eigenvalues.last().expect("report has at least two eigenvalues")
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// Flips `v` so that its first entry of magnitude above [`ZERO_TOLERANCE`] is positive.
pub fn normalize_sign(v: &mut [f64]) {
    if let Some(first) = v.iter().copied().find(|x| x.abs() > ZERO_TOLERANCE) {
        if first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Picks a unit vector from the eigenspace of `values[1]` that is orthogonal to
/// the all-ones vector. When `values[1]` is a repeated zero eigenvalue the
/// solver's basis vectors can carry a constant component, which is projected out.
fn fiedler_vector_from(eig: &SymEigen) -> Vec<f64> {
    let n = eig.values.len();
    let target = eig.values[1];
    let scale = 1.0 / (n as f64).sqrt();
    let tol = ZERO_TOLERANCE * target.abs().max(1.0);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for (k, value) in eig.values.iter().enumerate() {
        if (value - target).abs() > tol {
            continue;
        }
        let mut v = eig.vectors[k].clone();
        let along_ones: f64 = v.iter().sum::<f64>() * scale;
        v.iter_mut().for_each(|x| *x -= along_ones * scale);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if best.as_ref().is_none_or(|(b, _)| norm > *b + 1e-12) {
            best = Some((norm, v));
        }
    }
    let mut v = best.map(|(_, v)| v).unwrap_or_else(|| eig.vectors[1].clone());
    normalize(&mut v);
    normalize_sign(&mut v);
    v
}

/// Laplacian spectrum of `g` together with its Fiedler pair.
pub fn fiedler(g: &Graph) -> Result<SpectralReport> {
    if g.vertex_count() < 2 {
        return Err(Error::TooFewVertices {
            required: 2,
            actual: g.vertex_count(),
        });
    }
    let eig = eig_sym(&g.laplacian())?;
    let fiedler_vector = fiedler_vector_from(&eig);
    let zero_multiplicity = eig
        .values
        .iter()
        .filter(|x| x.abs() <= ZERO_TOLERANCE)
        .count();
    Ok(SpectralReport {
        fiedler_value: eig.values[1],
        fiedler_vector,
        zero_multiplicity,
        eigenvalues: eig.values,
    })
}

/// `λ₂` alone.
pub fn algebraic_connectivity(g: &Graph) -> Result<f64> {
    fiedler(g).map(|r| r.fiedler_value)
}

/// Largest Laplacian eigenvalue; zero for graphs without edges.
pub fn laplacian_spectral_radius(g: &Graph) -> Result<f64> {
    if g.edge_count() == 0 {
        return Ok(0.0);
    }
    Ok(*eig_sym(&g.laplacian())?
        .values
        .last()
        .expect("nonempty graph has eigenvalues"))
}

/// `L(G)` split with respect to an interface set `Y`:
///
/// ```text
/// P L Pᵀ = [ A   B ]   rows/cols of A: vertices outside Y (ascending)
///          [ Bᵀ  D ]   rows/cols of D: vertices of Y (ascending)
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    pub a_block: DenseSymMatrix,
    /// `|V∖Y| × |Y|` coupling block, row-major rows.
    pub b_block: Vec<Vec<f64>>,
    pub d_block: DenseSymMatrix,
    /// Vertices outside `Y`, in block order.
    pub outer: Vec<usize>,
    /// The interface vertices, in block order.
    pub interface: VertexSet,
}

impl BlockDecomposition {
    /// Vertex order of the reassembled matrix: `outer` then `interface`.
    pub fn ordering(&self) -> Vec<usize> {
        self.outer
            .iter()
            .chain(self.interface.members())
            .copied()
            .collect()
    }

    /// Rebuilds `[A B; Bᵀ D]` in block order.
    pub fn reassemble(&self) -> DenseSymMatrix {
        let na = self.outer.len();
        let n = na + self.interface.len();
        let mut m = DenseSymMatrix::zeros(n);
        for i in 0..na {
            for j in i..na {
                m.set_sym(i, j, self.a_block.get(i, j));
            }
            for (j, &b) in self.b_block[i].iter().enumerate() {
                m.set_sym(i, na + j, b);
            }
        }
        for i in 0..self.interface.len() {
            for j in i..self.interface.len() {
                m.set_sym(na + i, na + j, self.d_block.get(i, j));
            }
        }
        m
    }
}

/// Splits `L(g)` into blocks with `y` last. `y` must be a nonempty proper subset.
pub fn block_decompose(g: &Graph, y: &VertexSet) -> Result<BlockDecomposition> {
    y.check_within(g)?;
    if y.is_empty() || y.len() == g.vertex_count() {
        return Err(Error::DegenerateInterface);
    }
    let l = g.laplacian();
    let outer: Vec<usize> = (0..g.vertex_count()).filter(|v| !y.contains(*v)).collect();
    let inner = y.members();
    let a_block = DenseSymMatrix::from_rows(&l.submatrix(&outer, &outer))?;
    let d_block = DenseSymMatrix::from_rows(&l.submatrix(inner, inner))?;
    let b_block = l.submatrix(&outer, inner);
    Ok(BlockDecomposition {
        a_block,
        b_block,
        d_block,
        outer,
        interface: y.clone(),
    })
}

/// Smallest eigenvalue of a grounded Laplacian block and its eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundedEigen {
    pub value: f64,
    /// Indexed like [`BlockDecomposition::outer`].
    pub vector: Vec<f64>,
    /// `value > ZERO_TOLERANCE`: false when some component of the graph does not touch `Y`.
    pub positive_definite: bool,
}

/// `λ₁(A)` for the non-interface block of `d`.
pub fn grounded_smallest_eig(d: &BlockDecomposition) -> Result<GroundedEigen> {
    let eig = eig_sym(&d.a_block)?;
    let value = eig.values[0];
    let mut vector = eig.vectors[0].clone();
    normalize_sign(&mut vector);
    Ok(GroundedEigen {
        value,
        vector,
        positive_definite: value > ZERO_TOLERANCE,
    })
}
