//! Generate trees, write them in the text format, read them back, and print
//! the JSON result document.
//!
//! ```text
//! cargo run --example generate_and_roundtrip
//! ```

use treedim::gen::{generate, CostMode, TreeKind};
use treedim::io::{emit_tree, parse_tree, ResultDocument};
use treedim::solve;

fn main() {
    for kind in TreeKind::ALL {
        let tree = generate(kind, 12, 7, CostMode::Random).unwrap();
        let text = emit_tree(&tree);
        let back = parse_tree(&text).unwrap();
        assert_eq!(emit_tree(&back), text);
        let result = solve(&back).unwrap();
        println!("{kind:<14} {:<18} cost {}", result.case_tag.as_str(), result.cost);
    }

    let tree = generate(TreeKind::DoubleSpider, 12, 7, CostMode::Unit).unwrap();
    print!("\n{}", emit_tree(&tree));
    let doc = ResultDocument::new(&tree, &solve(&tree).unwrap());
    println!("{}", doc.to_json());
}
