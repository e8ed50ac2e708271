//! Per-leg solution types, the cheapest representative of each, and the
//! local-set test on a core's g-legs.
//!
//! ```text
//! cargo run --example leg_solution_types
//! ```

use treedim::legs::{is_local_set, min_cost_solutions, type_of_solution};
use treedim::topology::classify;
use treedim::{Cost, VertexId, WeightedTree};

fn main() {
    // Regular core 0 with a short leg (1), a long leg (2-3-4), and a modified
    // leg 5-6 where 6 is a small core with leaf 7 and leg 8-9.
    let edges = [(0, 1), (0, 2), (2, 3), (3, 4), (0, 5), (5, 6), (6, 7), (6, 8), (8, 9)];
    let costs = [3, 2, 1, 4, 1, 5, 1, 2, 1, 1].map(Cost::integer).to_vec();
    let tree = WeightedTree::new(10, &edges, costs).unwrap();
    let topology = classify(&tree).unwrap();
    let legs = topology.legs_of(VertexId(0));

    for leg in legs {
        println!("leg at {} ({})", leg.root, leg.kind.as_str());
        let table = min_cost_solutions(leg, &tree);
        for t in table.available() {
            let c = table.get(t).unwrap();
            println!("  {:<3} cost {:<3} {:?}", t.as_str(), c.cost.to_string(), c.vertices());
        }
    }

    let leg = &legs[1];
    let subset = [VertexId(3), VertexId(4)];
    println!("{subset:?} on leg {} types as {:?}", leg.root, type_of_solution(leg, &subset).unwrap());

    for subset in [vec![1, 2, 7], vec![2, 7], vec![3, 4, 9]] {
        let subset: Vec<VertexId> = subset.into_iter().map(VertexId).collect();
        let report = is_local_set(legs, &subset);
        println!(
            "{subset:?}: types {:?}, local set: {}, broken conditions {:?}",
            report.types,
            report.is_local_set(),
            report.violations.iter().map(|c| c.number()).collect::<Vec<_>>()
        );
    }
}
