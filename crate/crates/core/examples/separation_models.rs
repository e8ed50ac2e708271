//! The two separation models side by side: non-landmark pairs only (NL)
//! against all pairs (AP), for one and two separators.
//!
//! ```text
//! cargo run --example separation_models
//! ```

use treedim::oracle::{brute_min, verify_landmark, Model, ModelKind, DEFAULT_CAP};
use treedim::{VertexId, WeightedTree};

fn main() {
    let models = [
        Model::new(ModelKind::Nl, 1),
        Model::new(ModelKind::Ap, 1),
        Model::new(ModelKind::Nl, 2),
        Model::new(ModelKind::Ap, 2),
    ];
    let trees = [
        ("path on 5", vec![(0, 1), (1, 2), (2, 3), (3, 4)]),
        ("star K1,3", vec![(0, 1), (0, 2), (0, 3)]),
        ("spider 2-2-2", vec![(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]),
        ("caterpillar", vec![(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)]),
    ];
    println!("minimum landmark counts (unit costs)");
    println!("{:<14} {:>5} {:>5} {:>5} {:>5}", "tree", "nl-1", "ap-1", "nl-2", "ap-2");
    for (name, edges) in &trees {
        let tree = WeightedTree::unit(edges.len() + 1, edges).unwrap();
        let sizes: Vec<usize> = models
            .iter()
            .map(|&m| brute_min(&tree, m, DEFAULT_CAP).unwrap().0.len())
            .collect();
        println!("{name:<14} {:>5} {:>5} {:>5} {:>5}", sizes[0], sizes[1], sizes[2], sizes[3]);
    }

    let spider = WeightedTree::unit(7, &trees[2].1).unwrap();
    let set = [VertexId(1), VertexId(3)];
    for model in models {
        let verdict = verify_landmark(&spider, &set, model);
        print!("{set:?} on the spider under {}-{}: ", model.kind, model.k);
        match verdict.violations.first() {
            None => println!("valid"),
            Some(v) => println!(
                "{} bad pairs, e.g. ({}, {}) with {} separator(s)",
                verdict.violations.len(),
                v.x,
                v.y,
                v.separators
            ),
        }
    }
}
