//! Build a weighted tree, solve it, and check the answer.
//!
//! ```text
//! cargo run --example quickstart
//! ```

use treedim::oracle::{verify_landmark, Model};
use treedim::{solve, Cost, WeightedTree};

fn main() {
    // A spider: core 0 with legs 1-2, 3-4 and 5-6. Vertex 1 is pricey.
    let edges = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)];
    let mut costs = vec![Cost::ONE; 7];
    costs[1] = Cost::integer(5);
    costs[2] = Cost::new(1, 2);
    let tree = WeightedTree::new(7, &edges, costs).expect("a valid tree");

    let result = solve(&tree).expect("every tree has an answer");
    println!("case:      {}", result.case_tag.as_str());
    println!("landmarks: {:?}", result.landmarks);
    println!("cost:      {}", result.cost);

    let verdict = verify_landmark(&tree, &result.landmarks, Model::NL2);
    println!("valid:     {}", verdict.is_valid());
    assert!(verdict.is_valid());
}
