//! Gluing of multi-agent communication graphs and its effect on algebraic
//! connectivity and consensus speed.
//!
//! Two graphs can be combined by *bridge gluing* (add `k` edges between them)
//! or *interface gluing* (identify a shared induced subgraph). The crate
//! computes the Laplacian spectrum of the result, checks the analytical upper
//! bounds on the Fiedler eigenvalue `λ₂` that these constructions admit, and
//! simulates `ẋ = −L x` to measure the consensus time constant against `1/λ₂`.
//!
//! ```
//! use glueconn::{bridge_glue, bridge_bound, fiedler, BridgeSpec, Graph};
//!
//! let p3 = Graph::path(3);
//! let glued = bridge_glue(&p3, &p3, &BridgeSpec::new(vec![(0, 0), (2, 2)])?)?;
//! let lambda2 = fiedler(&glued.graph)?.fiedler_value;
//! assert!(lambda2 <= bridge_bound(3, 3, 2));
//! # Ok::<(), glueconn::Error>(())
//! ```

pub mod bounds;
pub mod consensus;
pub mod error;
pub mod format;
pub mod generate;
pub mod gluing;
pub mod graph;
pub mod number;
pub mod spectral;

pub use bounds::{
    bridge_bound, cut_bound, verify_bridge_bound, verify_interface_bound, BoundKind, BoundReport,
    CutBounds,
};
pub use consensus::{
    compare_scenarios, estimate_time_constant, format_comparison, simulate, Method, Scenario, ScenarioRow, SimConfig,
    TimeConstantEstimate, Trajectory,
};
pub use error::{Error, ErrorCategory, Result};
pub use format::Indexing;
pub use gluing::{
    bridge_glue, interface_glue, remove_bridge_edges, BridgeSpec, GlueKind, GlueResult,
    InterfaceSpec,
};
pub use graph::{DenseSymMatrix, Graph, VertexSet};
pub use spectral::{
    block_decompose, eig_sym, fiedler, grounded_smallest_eig, BlockDecomposition, SpectralReport,
    SymEigen,
};
