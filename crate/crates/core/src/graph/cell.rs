use super::{Edge, EdgeKind, NodeId, Product};

/// Edges out of the nodes of cell `(i, j)`, that is out of `U[i][j]` and
/// `U'[i][j]`, without partial edges. Cells on the last row or column only
/// have the edges their boundary allows.
pub fn build_cell_edges(product: &Product, i: usize, j: usize) -> Vec<(NodeId, Edge)> {
    let mut out = Vec::new();
    for v in product.grid.cell_nodes(i, j) {
        let (p, q) = product.pair(v);
        product.for_each_edge(p, q, false, |kind, (a, b), label| {
            debug_assert_ne!(kind, EdgeKind::Partial);
            let target = product.node(a, b).expect("grid target");
            out.push((v, Edge { target, label, kind }));
        });
    }
    out
}
