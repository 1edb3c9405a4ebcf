//! Upper bounds on the algebraic connectivity and their verification.
//!
//! Three bounds are provided:
//!
//! * cut bound: for nonempty disjoint `S₁, S₂`,
//!   `λ₂ ≤ cut(S₁, S₁ᶜ)/|S₁| + cut(S₂, S₂ᶜ)/|S₂|`;
//! * bridge bound: for `G₁ ⊔_B G₂` with `k` bridge edges,
//!   `λ₂ ≤ k/|V(G₁)| + k/|V(G₂)|`;
//! * interface bound: for `G₁ ∪_Y G₂` with connected inputs,
//!   `λ₂ ≤ max{λ₁(A₁), λ₁(A₂)}` where `Aᵢ` is `L(Gᵢ)` with the rows and
//!   columns of `Y` deleted.
//!
//! The interface bound uses the smallest eigenvalue of *both* grounded
//! blocks. The min-max argument behind it evaluates the Rayleigh quotient on
//! the span of the two padded bottom eigenvectors, so `λ₁(A₂)` is the quantity
//! that appears, and it is never larger than `λ₂(A₂)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gluing::{bridge_glue, interface_glue, BridgeSpec, GlueResult, InterfaceSpec};
use crate::graph::{Graph, VertexSet};
use crate::spectral::{self, block_decompose, grounded_smallest_eig};

/// Slack below which a bound counts as violated.
pub const SLACK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Cut,
    Bridge,
    Interface,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Cut => "cut",
            BoundKind::Bridge => "bridge",
            BoundKind::Interface => "interface",
        }
    }

    /// Formula the bound value was computed from.
    pub fn formula(self) -> &'static str {
        match self {
            BoundKind::Cut => "cut(S1,S1c)/|S1| + cut(S2,S2c)/|S2|",
            BoundKind::Bridge => "k/|V(G1)| + k/|V(G2)|",
            BoundKind::Interface => "max{lambda1(A1), lambda1(A2)}",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub bound_kind: BoundKind,
    pub bound_value: f64,
    pub fiedler_value: f64,
    pub satisfied: bool,
    /// `bound_value - fiedler_value`.
    pub slack: f64,
}

impl BoundReport {
    pub fn new(bound_kind: BoundKind, bound_value: f64, fiedler_value: f64) -> Self {
        let slack = bound_value - fiedler_value;
        BoundReport {
            bound_kind,
            bound_value,
            fiedler_value,
            satisfied: slack >= -SLACK_TOLERANCE,
            slack,
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} bound: lambda2 = {:.4} <= {:.4} (slack {:.4e}) {}",
            self.bound_kind,
            self.fiedler_value,
            self.bound_value,
            self.slack,
            if self.satisfied { "satisfied" } else { "VIOLATED" }
        )
    }
}

/// Evaluates cut bounds for many set pairs on one graph, computing `λ₂` once.
#[derive(Debug, Clone)]
pub struct CutBounds<'g> {
    graph: &'g Graph,
    fiedler_value: f64,
}

impl<'g> CutBounds<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        let fiedler_value = spectral::algebraic_connectivity(graph)?;
        Ok(CutBounds {
            graph,
            fiedler_value,
        })
    }

    pub fn fiedler_value(&self) -> f64 {
        self.fiedler_value
    }

    /// `cut(S, Sᶜ) / |S|`, zero when `Sᶜ` is empty.
    fn boundary_ratio(&self, s: &VertexSet) -> Result<f64> {
        let complement = self.graph.complement(s)?;
        if complement.is_empty() {
            return Ok(0.0);
        }
        Ok(self.graph.cut(s, &complement)? as f64 / s.len() as f64)
    }

    pub fn evaluate(&self, s1: &VertexSet, s2: &VertexSet) -> Result<BoundReport> {
        if s1.is_empty() || s2.is_empty() {
            return Err(Error::EmptySet);
        }
        s1.check_within(self.graph)?;
        s2.check_within(self.graph)?;
        if let Some(&v) = s1.members().iter().find(|&&v| s2.contains(v)) {
            return Err(Error::OverlappingSets(v));
        }
        let bound = self.boundary_ratio(s1)? + self.boundary_ratio(s2)?;
        Ok(BoundReport::new(BoundKind::Cut, bound, self.fiedler_value))
    }
}

pub fn cut_bound(g: &Graph, s1: &VertexSet, s2: &VertexSet) -> Result<BoundReport> {
    CutBounds::new(g)?.evaluate(s1, s2)
}

/// `k/n₁ + k/n₂`.
pub fn bridge_bound(n1: usize, n2: usize, k: usize) -> f64 {
    assert!(n1 >= 1 && n2 >= 1, "bridge bound needs nonempty graphs");
    k as f64 / n1 as f64 + k as f64 / n2 as f64
}

/// Bridge bound for an already glued result.
pub fn bridge_report(result: &GlueResult) -> Result<BoundReport> {
    let k = result.bridge_edges().len();
    let bound = bridge_bound(result.n1(), result.n2(), k);
    let lambda2 = spectral::algebraic_connectivity(&result.graph)?;
    Ok(BoundReport::new(BoundKind::Bridge, bound, lambda2))
}

pub fn verify_bridge_bound(g1: &Graph, g2: &Graph, bridge: &BridgeSpec) -> Result<BoundReport> {
    bridge_report(&bridge_glue(g1, g2, bridge)?)
}

/// Interface bound with the pieces it was assembled from.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceBound {
    pub report: BoundReport,
    pub grounded_g1: f64,
    pub grounded_g2: f64,
    pub glued: GlueResult,
}

pub fn interface_bound_details(
    g1: &Graph,
    g2: &Graph,
    iface: &InterfaceSpec,
) -> Result<InterfaceBound> {
    if !g1.is_connected()? {
        return Err(Error::Disconnected(
            "graph 1 must be connected for its grounded block to be positive definite",
        ));
    }
    if !g2.is_connected()? {
        return Err(Error::Disconnected(
            "graph 2 must be connected for its grounded block to be positive definite",
        ));
    }
    let glued = interface_glue(g1, g2, iface)?;
    let grounded_g1 = grounded_smallest_eig(&block_decompose(g1, &iface.g1_set())?)?.value;
    let grounded_g2 = grounded_smallest_eig(&block_decompose(g2, &iface.g2_set())?)?.value;
    let lambda2 = spectral::algebraic_connectivity(&glued.graph)?;
    Ok(InterfaceBound {
        report: BoundReport::new(BoundKind::Interface, grounded_g1.max(grounded_g2), lambda2),
        grounded_g1,
        grounded_g2,
        glued,
    })
}

pub fn verify_interface_bound(g1: &Graph, g2: &Graph, iface: &InterfaceSpec) -> Result<BoundReport> {
    interface_bound_details(g1, g2, iface).map(|d| d.report)
}
