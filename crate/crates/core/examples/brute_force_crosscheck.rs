//! Compare the linear-time solver with exhaustive search on random trees.
//!
//! ```text
//! cargo run --release --example brute_force_crosscheck
//! ```

use std::collections::BTreeMap;

use rand::Rng;
use treedim::gen::{costs, random_edges, rng, CostMode};
use treedim::oracle::{brute_min, Model, DEFAULT_CAP};
use treedim::{solve, WeightedTree};

fn main() {
    let mut r = rng(2024);
    let mut per_case: BTreeMap<&str, usize> = BTreeMap::new();
    for _ in 0..300 {
        let n = r.gen_range(3..=14);
        let edges = random_edges(n, &mut r);
        let tree = WeightedTree::new(n, &edges, costs(CostMode::Random, n, &mut r)).unwrap();
        let ours = solve(&tree).unwrap();
        let (set, best) = brute_min(&tree, Model::NL2, DEFAULT_CAP).unwrap();
        assert_eq!(ours.cost, best, "{tree:?}: {:?} vs {set:?}", ours.landmarks);
        *per_case.entry(ours.case_tag.as_str()).or_default() += 1;
    }
    println!("300 random trees, all optimal");
    for (case, count) in per_case {
        println!("  {case:<18} {count}");
    }
}
