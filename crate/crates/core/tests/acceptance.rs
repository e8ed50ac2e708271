//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;

use common::*;
use treedim::cli::time_solve;
use treedim::gen::{all_labeled_trees, generate, random_edges, rng, CostMode, TreeKind};
use treedim::io::{emit_tree, parse_tree, ResultDocument};
use treedim::legs::is_local_set;
use treedim::oracle::{brute_min, verify_landmark, Model, ModelKind, DEFAULT_CAP};
use treedim::topology::{CoreRank, LegKind, VertexClass};
use treedim::{solve, CaseTag, Cost, VertexId, WeightedTree};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_agrees(tree: &WeightedTree) -> Result<CaseTag, String> {
    let result = solve(tree).map_err(|e| format!("solve failed: {e}"))?;
    let (best, cost) = brute_min(tree, Model::NL2, DEFAULT_CAP).map_err(|e| e.to_string())?;
    ensure(result.cost == cost, || {
        format!(
            "cost {} != oracle {} on {:?} (solver {:?}, oracle {:?})",
            result.cost, cost, tree, result.landmarks, best
        )
    })?;
    ensure(
        verify_landmark(tree, &result.landmarks, Model::NL2).is_valid(),
        || format!("solver output {:?} rejected on {:?}", result.landmarks, tree),
    )?;
    Ok(result.case_tag)
}

fn exhaustive_small() -> Outcome {
    let mut count = 0u64;
    for n in 1..=8 {
        for edges in all_labeled_trees(n) {
            oracle_agrees(&unit(n, &edges))?;
            count += 1;
        }
    }
    Ok(format!("{count} labeled trees, n = 1..=8, unit costs"))
}

fn randomized_rational() -> Outcome {
    let mut r = rng(0x5eed_0002);
    for _ in 0..2000 {
        let n = r.gen_range(9..=14);
        let edges = random_edges(n, &mut r);
        let costs = random_costs(&mut r, n);
        oracle_agrees(&WeightedTree::new(n, &edges, costs).unwrap())?;
    }
    Ok("2000 random trees, n in 9..=14, rational costs".into())
}

fn case_coverage() -> Outcome {
    const NEED: usize = 50;
    let mut r = rng(0x5eed_0003);
    let mut tags: BTreeMap<CaseTag, usize> = BTreeMap::new();
    let (mut modified, mut few, mut degree) = (0, 0, 0);
    let mut attempts = 0;
    let done = |tags: &BTreeMap<CaseTag, usize>, m: usize, f: usize, d: usize| {
        CaseTag::ALL.iter().all(|t| tags.get(t).copied().unwrap_or(0) >= NEED)
            && m >= NEED
            && f >= NEED
            && d >= NEED
    };
    while !done(&tags, modified, few, degree) {
        attempts += 1;
        ensure(attempts <= 50_000, || {
            format!("buckets not filled: {tags:?} modified={modified} few={few} degree={degree}")
        })?;
        let shape = SHAPES[attempts % SHAPES.len()];
        let tree = shaped_tree(&mut r, shape, 14);
        let tag = oracle_agrees(&tree)?;
        *tags.entry(tag).or_default() += 1;
        let f = flags(&tree, &classify_ok(&tree));
        modified += usize::from(f.modified_leg);
        few += usize::from(f.minor_few_legs);
        degree += usize::from(f.minor_by_degree);
    }
    let tags: Vec<String> = tags.iter().map(|(t, c)| format!("{}={c}", t.as_str())).collect();
    Ok(format!(
        "{attempts} trees; {}; modified_leg={modified} minor_le1_gleg={few} minor_degree4={degree}",
        tags.join(" ")
    ))
}

fn fixture_ledger() -> Outcome {
    let fixtures = [
        ("star", star(), 2),
        ("spider(2,2,2)", spider222(), 3),
        ("T_mod", t_mod(), 3),
        ("T_minor1", t_minor1(), 4),
        ("caterpillar", caterpillar6(), 3),
        ("path5", path5(), 2),
    ];
    let mut parts = Vec::new();
    for (name, tree, expected) in fixtures {
        let (_, oracle) = brute_min(&tree, Model::NL2, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(oracle == Cost::integer(expected), || {
            format!("{name}: oracle says {oracle}, ledger says {expected}")
        })?;
        let got = solve(&tree).unwrap().cost;
        ensure(got == oracle, || format!("{name}: solver {got}, oracle {oracle}"))?;
        parts.push(format!("{name}={got}"));
    }
    Ok(parts.join(" "))
}

fn subsets_upto_two(n: usize) -> impl Iterator<Item = Vec<VertexId>> {
    let singles = (0..n).map(|a| vec![VertexId::from(a)]);
    let pairs = (0..n).flat_map(move |a| (a + 1..n).map(move |b| vec![VertexId::from(a), VertexId::from(b)]));
    std::iter::once(Vec::new()).chain(singles).chain(pairs)
}

fn random_subset(r: &mut rand_chacha::ChaCha8Rng, n: usize, p: f64) -> Vec<VertexId> {
    (0..n).filter(|_| r.gen_bool(p)).map(VertexId::from).collect()
}

fn structural_properties() -> Outcome {
    let mut r = rng(0x5eed_0005);
    let mut counts = [0usize; 6];
    for i in 0..3000 {
        let tree = shaped_tree(&mut r, SHAPES[i % SHAPES.len()], 12);
        let n = tree.len();
        let topo = classify_ok(&tree);

        if topo.case_tag == CaseTag::HasRegularCore {
            // Main-core existence.
            let main = topo.main_cores().count();
            let minor = topo
                .regular_cores()
                .filter(|c| topo.class[c.core.index()] == VertexClass::RegularCore(CoreRank::Minor))
                .count();
            ensure(main >= 1 && (minor == 0 || main >= 2), || {
                format!("main-core property fails on {tree:?}: main={main} minor={minor}")
            })?;
            counts[0] += 1;

            // Necessity: the optimum and random landmark sets contain local sets.
            let (best, _) = brute_min(&tree, Model::NL2, DEFAULT_CAP).unwrap();
            let mut sets = vec![best];
            for _ in 0..20 {
                let s = random_subset(&mut r, n, 0.5);
                if verify_landmark(&tree, &s, Model::NL2).is_valid() {
                    sets.push(s);
                }
            }
            for s in &sets {
                for core in topo.regular_cores() {
                    ensure(is_local_set(&core.legs, s).is_local_set(), || {
                        format!("necessity fails: {s:?} at core {} on {tree:?}", core.core)
                    })?;
                }
            }
            counts[1] += sets.len();

            // Sufficiency: unions of local sets are landmark sets.
            for _ in 0..5 {
                let mut union = Vec::new();
                for core in topo.regular_cores() {
                    let leg_vertices: Vec<VertexId> =
                        core.legs.iter().flat_map(|l| l.vertices.iter().copied()).collect();
                    let local = (0..50)
                        .map(|_| {
                            leg_vertices
                                .iter()
                                .copied()
                                .filter(|_| r.gen_bool(0.4))
                                .collect::<Vec<_>>()
                        })
                        .find(|s| is_local_set(&core.legs, s).is_local_set())
                        .unwrap_or_else(|| leg_vertices.clone());
                    ensure(is_local_set(&core.legs, &local).is_local_set(), || {
                        format!("full leg set is not local at core {}", core.core)
                    })?;
                    union.extend(local);
                }
                ensure(verify_landmark(&tree, &union, Model::NL2).is_valid(), || {
                    format!("sufficiency fails: {union:?} on {tree:?}")
                })?;
                counts[2] += 1;
            }

            // Main cores need at least two landmarks on their g-legs.
            for core in topo.main_cores() {
                let leg_vertices: Vec<VertexId> =
                    core.legs.iter().flat_map(|l| l.vertices.iter().copied()).collect();
                let m = leg_vertices.len();
                if m <= 12 {
                    for mask in 0u32..(1 << m) {
                        if mask.count_ones() >= 2 {
                            continue;
                        }
                        let s: Vec<VertexId> =
                            (0..m).filter(|i| mask >> i & 1 == 1).map(|i| leg_vertices[i]).collect();
                        ensure(!is_local_set(&core.legs, &s).is_local_set(), || {
                            format!("main core {} has local set {s:?} on {tree:?}", core.core)
                        })?;
                    }
                    counts[3] += 1;
                }
            }
        }

        if topo.case_tag == CaseTag::SingleSmallCore {
            // A landmark set of size <= 2 is exactly a pair of short-leg leaves.
            let core = &topo.cores[0];
            let short_leaves: Vec<VertexId> = core
                .legs
                .iter()
                .filter(|l| l.kind == LegKind::ShortStandard)
                .map(|l| l.root)
                .collect();
            for s in subsets_upto_two(n) {
                let valid = verify_landmark(&tree, &s, Model::NL2).is_valid();
                let shape = s.len() == 2 && s.iter().all(|v| short_leaves.contains(v));
                ensure(valid == shape, || {
                    format!("small-set characterization fails for {s:?} on {tree:?} (valid={valid})")
                })?;
            }
            counts[4] += 1;
        }

        // Every AP-valid set is NL-valid.
        for k in 1..=2 {
            for _ in 0..10 {
                let s = random_subset(&mut r, n, 0.6);
                if verify_landmark(&tree, &s, Model::new(ModelKind::Ap, k)).is_valid() {
                    ensure(verify_landmark(&tree, &s, Model::new(ModelKind::Nl, k)).is_valid(), || {
                        format!("AP-valid {s:?} not NL-valid for k={k} on {tree:?}")
                    })?;
                    counts[5] += 1;
                }
            }
        }
    }
    for (name, c) in ["main-core", "necessity", "sufficiency", "main>=2", "small<=2", "AP<=NL"]
        .iter()
        .zip(counts)
    {
        ensure(c > 0, || format!("{name} was never exercised"))?;
    }
    Ok(format!(
        "checks: main-core={} necessity={} sufficiency={} main>=2={} small<=2={} AP<=NL={}",
        counts[0], counts[1], counts[2], counts[3], counts[4], counts[5]
    ))
}

fn linear_scaling() -> Outcome {
    let mut parts = Vec::new();
    for kind in [TreeKind::Caterpillar, TreeKind::Random] {
        let small = generate(kind, 100_000, 1, CostMode::Random).unwrap();
        let large = generate(kind, 1_000_000, 1, CostMode::Random).unwrap();
        // Alternate the two sizes so a slow stretch on the host hits both.
        let (mut t_small, mut t_large) = (f64::INFINITY, f64::INFINITY);
        for _ in 0..7 {
            t_small = t_small.min(time_solve(&small, 1));
            t_large = t_large.min(time_solve(&large, 1));
        }
        drop((small, large));
        let ratio = t_large / t_small;
        parts.push(format!("{kind}: {t_small:.4}s -> {t_large:.4}s (x{ratio:.2})"));
        ensure(ratio <= 15.0 && t_large < 5.0, || parts.join("; "))?;
    }
    Ok(parts.join("; "))
}

fn determinism() -> Outcome {
    let mut r = rng(0x5eed_0007);
    for i in 0..100 {
        let n = r.gen_range(1..=400);
        let tree = if i % 3 == 0 {
            shaped_tree(&mut r, SHAPES[i % SHAPES.len()], 14)
        } else {
            let edges = random_edges(n, &mut r);
            WeightedTree::new(n, &edges, random_costs(&mut r, n)).unwrap()
        };
        let bytes = emit_tree(&tree);
        let run = |text: &str| {
            let t = parse_tree(text).unwrap();
            ResultDocument::new(&t, &solve(&t).unwrap()).to_json()
        };
        let here = run(&bytes);
        let copy = bytes.clone();
        let there = std::thread::spawn(move || run(&copy)).join().unwrap();
        ensure(here == there, || format!("outputs differ on input {i}"))?;
        ensure(run(&bytes) == here, || format!("second run differs on input {i}"))?;
    }
    Ok("100 inputs, same-thread and cross-thread runs byte-identical".into())
}

fn panic_message(p: &(dyn std::any::Any + Send)) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("oracle equality, exhaustive n <= 8", exhaustive_small),
        ("oracle equality, 2000 random rational-cost trees", randomized_rational),
        ("case coverage, >= 50 per bucket", case_coverage),
        ("fixture ledger", fixture_ledger),
        ("structural properties", structural_properties),
        ("linear scaling 1e5 -> 1e6", linear_scaling),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(panic_message(p.as_ref())));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({detail}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
