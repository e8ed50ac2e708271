use std::path::PathBuf;

use treedim::cli::{run_with_seed_env, EXIT_INVALID, EXIT_OK, EXIT_TOO_LARGE, EXIT_USAGE};
use treedim::gen::{generate, CostMode, TreeKind};
use treedim::io::{emit_tree, parse_tree, ResultDocument};
use treedim::solve;

fn call(args: &[&str], seed_env: Option<&str>) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("treedim").chain(args.iter().copied());
    let code = run_with_seed_env(argv, seed_env.map(String::from), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("treedim-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn gen_output_depends_only_on_its_arguments() {
    for kind in TreeKind::ALL {
        let args = ["gen", "--kind", kind.as_str(), "--n", "40", "--seed", "17", "--costs", "random"];
        let (code, first, _) = call(&args, None);
        assert_eq!(code, EXIT_OK);
        assert_eq!(call(&args, None).1, first);
        let (_, via_env, _) = call(&["gen", "--kind", kind.as_str(), "--n", "40", "--costs", "random"], Some("17"));
        assert_eq!(via_env, first);
    }
}

#[test]
fn emitted_files_solve_the_same() {
    for kind in TreeKind::ALL {
        for seed in 0..5 {
            let tree = generate(kind, 60, seed, CostMode::Random).unwrap();
            let direct = ResultDocument::new(&tree, &solve(&tree).unwrap());
            let text = emit_tree(&tree);
            let reparsed = parse_tree(&text).unwrap();
            assert_eq!(emit_tree(&reparsed), text);
            let again = ResultDocument::new(&reparsed, &solve(&reparsed).unwrap());
            assert_eq!(again, direct);

            let path = temp_file(&format!("{kind}-{seed}.tree"), &text);
            let (code, json, _) = call(&["solve", path.to_str().unwrap(), "--json"], None);
            assert_eq!(code, EXIT_OK);
            let from_cli: ResultDocument = serde_json::from_str(&json).unwrap();
            assert_eq!(from_cli, direct);
        }
    }
}

#[test]
fn each_failure_has_its_own_exit_code() {
    let star = temp_file("star.tree", "4\n1 1 1 1\n0 1\n0 2\n0 3\n");
    let star = star.to_str().unwrap();
    assert_eq!(call(&["solve", star], None).0, EXIT_OK);
    assert_eq!(call(&["verify", star, "--landmarks", "1,2"], None).0, EXIT_OK);
    assert_eq!(call(&["verify", star, "--landmarks", "1"], None).0, EXIT_INVALID);

    let broken = temp_file("broken.tree", "3\n1 1 1\n0 1\n");
    assert_eq!(call(&["solve", broken.to_str().unwrap()], None).0, EXIT_USAGE);
    assert_eq!(call(&["solve", "/nonexistent/tree"], None).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"], None).0, EXIT_USAGE);

    let big = generate(TreeKind::Path, 30, 0, CostMode::Unit).unwrap();
    let big = temp_file("big.tree", &emit_tree(&big));
    let (code, _, err) = call(&["brute", big.to_str().unwrap()], None);
    assert_eq!(code, EXIT_TOO_LARGE);
    assert!(!err.is_empty());

    let codes = [EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_TOO_LARGE];
    assert_eq!(codes, [0, 1, 2, 3]);
}
