//! Spanning tree counts of threshold graphs: product formula against the
//! matrix-tree count.

use splitrel::constructions::{bogdanowicz_tree_count, threshold_graph, ThresholdSpec};
use splitrel::engine::spanning_tree_count;

fn main() -> splitrel::Result<()> {
    for (n, degrees) in [
        (5, vec![2]),
        (6, vec![3, 2]),
        (7, vec![4, 4, 1]),
        (8, vec![4, 3, 2, 1]),
        (10, vec![6, 6, 2]),
    ] {
        let spec = ThresholdSpec::new(n, degrees.clone())?;
        let g = threshold_graph(&spec)?;
        println!(
            "H({n}; {degrees:?}): {} edges, product {} matrix-tree {}",
            g.m(),
            bogdanowicz_tree_count(&spec)?,
            spanning_tree_count(&g)
        );
    }
    Ok(())
}
