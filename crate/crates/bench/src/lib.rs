//! Fixtures shared by the benchmarks.

use glueconn::Graph;

/// The 6-vertex and 4-vertex graphs of the two-team example.
pub fn two_team_graphs() -> (Graph, Graph) {
    let g1 = Graph::new(
        6,
        &[(0, 1), (0, 4), (0, 5), (1, 2), (2, 3), (2, 5), (3, 4), (3, 5)],
    )
    .expect("valid edges");
    let g2 = Graph::new(4, &[(0, 1), (0, 3), (1, 2), (1, 3)]).expect("valid edges");
    (g1, g2)
}
