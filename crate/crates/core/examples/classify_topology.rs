//! Classify the vertices of a tree and list each core's g-legs.
//!
//! ```text
//! cargo run --example classify_topology
//! ```

use treedim::topology::classify;
use treedim::{VertexId, WeightedTree};

fn main() {
    // Core 0 holds a leaf, a long leg, and a branch ending in the small
    // core 6 (leaf 7, long leg 8-9). Spider 10 with three leaves hangs off 3.
    let edges = [
        (0, 1),
        (0, 2),
        (2, 3),
        (0, 4),
        (4, 5),
        (5, 6),
        (6, 7),
        (6, 8),
        (8, 9),
        (3, 10),
        (10, 11),
        (10, 12),
        (10, 13),
    ];
    let tree = WeightedTree::unit(14, &edges).unwrap();
    let topology = classify(&tree).unwrap();

    println!("case tag: {}", topology.case_tag.as_str());
    for v in tree.vertices() {
        println!("  {v:>2}  {}", topology.class[v.index()].label());
    }
    for core in &topology.cores {
        println!("core {} ({})", core.core, topology.class[core.core.index()].label());
        for leg in &core.legs {
            let body: Vec<String> = leg.iter().map(|(v, p)| format!("{v}@{p}")).collect();
            print!("  {:<15} {}", leg.kind.as_str(), body.join(" "));
            match leg.modified {
                Some(m) => println!("  small core {} ell=({}, {})", m.small_core, m.ell_a, m.ell_b),
                None => println!(),
            }
        }
        let others: Vec<VertexId> = core.other_subtrees.clone();
        if !others.is_empty() {
            println!("  other subtrees via {others:?}");
        }
    }
}
