//! Trees without a regular core: one small core, or two joined by a path.
//!
//! ```text
//! cargo run --example small_core_cases
//! ```

use treedim::oracle::{brute_min, Model, DEFAULT_CAP};
use treedim::{solve, Cost, WeightedTree};

fn report(name: &str, tree: &WeightedTree) {
    let result = solve(tree).unwrap();
    let (_, best) = brute_min(tree, Model::NL2, DEFAULT_CAP).unwrap();
    println!(
        "{name:<28} {:<18} landmarks {:?} cost {} (exhaustive {best})",
        result.case_tag.as_str(),
        result.landmarks,
        result.cost
    );
    if let Some(core) = result.added_core_vertex {
        println!("{:<28} core {core} joined the set", "");
    }
}

fn main() {
    let star = WeightedTree::unit(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    report("star", &star);

    // Spider with one leaf and two long legs. A pricey leaf and a cheap
    // core make the core worth adding.
    let edges = [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)];
    let mut costs = vec![Cost::ONE; 6];
    costs[1] = Cost::integer(10);
    costs[0] = Cost::new(1, 2);
    report("spider, cheap core", &WeightedTree::new(6, &edges, costs).unwrap());

    let caterpillar = WeightedTree::unit(6, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)]).unwrap();
    report("caterpillar", &caterpillar);

    // Small cores 0 (leaf 9, leg 10-11) and 5 (leaf 6, leg 7-8) joined by
    // the bridge 1-2-3-4.
    let edges = [
        (0, 1),
        (0, 9),
        (0, 10),
        (10, 11),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 6),
        (5, 7),
        (7, 8),
    ];
    let costs = [4, 3, 1, 2, 3, 4, 1, 1, 1, 2, 1, 1].map(Cost::integer).to_vec();
    report("two cores, long bridge", &WeightedTree::new(12, &edges, costs).unwrap());
}
