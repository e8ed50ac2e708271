//! Times classification and solving on growing trees.
//!
//! ```text
//! cargo run --release --example linear_scaling
//! ```

use std::time::Instant;

use treedim::gen::{generate, CostMode, TreeKind};
use treedim::solver::solve_classified;
use treedim::topology::classify;

fn main() {
    println!("{:>12} {:>9} {:>12} {:>12} {:>10}", "kind", "n", "classify_s", "solve_s", "ns/vertex");
    for kind in [TreeKind::Caterpillar, TreeKind::Random, TreeKind::Spider, TreeKind::Path] {
        for n in [10_000, 100_000, 1_000_000] {
            let tree = generate(kind, n, 1, CostMode::Random).unwrap();
            let start = Instant::now();
            let topology = classify(&tree).unwrap();
            let t_classify = start.elapsed().as_secs_f64();
            let start = Instant::now();
            let result = solve_classified(&tree, &topology).unwrap();
            let t_solve = start.elapsed().as_secs_f64();
            println!(
                "{:>12} {n:>9} {t_classify:>12.4} {t_solve:>12.4} {:>10.1}",
                kind.as_str(),
                (t_classify + t_solve) * 1e9 / n as f64
            );
            assert!(!result.landmarks.is_empty());
        }
    }
}
