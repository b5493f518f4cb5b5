//! Embedded reference digraphs.

use crate::digraph::Digraph;

/// The 7-vertex (2,2)-liking digraph that is not diregular, as a `.dg` file.
pub const FIGURE1_DG: &str = include_str!("../fixtures/figure1.dg");

/// Arcs of the same digraph with 1-indexed labels `v1..v7`.
#[rustfmt::skip]
pub const FIGURE1_ARCS: [(usize, usize); 27] = [
    (1, 3), (1, 4), (1, 6), (1, 7),
    (2, 1), (2, 4), (2, 5), (2, 7),
    (3, 1), (3, 2), (3, 4), (3, 6),
    (4, 2), (4, 5), (4, 6), (4, 7),
    (5, 1), (5, 6), (5, 7),
    (6, 1), (6, 2), (6, 3), (6, 7),
    (7, 1), (7, 3), (7, 5), (7, 6),
];

/// The non-diregular (2,2)-liking digraph on 7 vertices.
pub fn figure1() -> Digraph {
    let arcs: Vec<_> = FIGURE1_ARCS.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    Digraph::build(7, &arcs).expect("figure 1 arc list is well formed")
}
