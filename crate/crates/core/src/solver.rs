//! Minimum-cost landmark sets (non-landmarks model, two separators).
//!
//! The solver classifies the tree and dispatches on its case tag:
//!
//! * trees with a regular core take, independently for every regular core,
//!   the cheapest thrifty local set on that core's g-legs and return the union;
//! * a lone small core picks from a constant number of per-leg type patterns,
//!   adding the core itself when a two-vertex pattern would not separate;
//! * two small cores enumerate all subsets of an eleven-vertex candidate pool;
//! * paths and trees with at most two vertices are solved directly.
//!
//! Every branch runs in time linear in the number of vertices.

use std::cmp::Ordering;
use std::collections::HashMap;

use thiserror::Error;

use crate::cost::Cost;
use crate::legs::{
    min_cost_solutions, violated_conditions, LegSolutionTable, LegStats, LocalSetAssignment,
    SolutionType, TypedLegSolution,
};
use crate::topology::{classify, CaseTag, GLeg, LegKind, Topology, TopologyError, VertexClass};
use crate::tree::{VertexId, WeightedTree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LandmarkResult {
    /// Sorted ascending.
    pub landmarks: Vec<VertexId>,
    pub cost: Cost,
    pub case_tag: CaseTag,
    /// One assignment per regular core (or for the lone small core). Empty
    /// for paths, tiny trees and two-small-core trees.
    pub explanation: Vec<LocalSetAssignment>,
    /// Set when the lone small core itself was added to the landmarks.
    pub added_core_vertex: Option<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("solver called on a tree with case tag {found:?}, expected {expected:?}")]
    WrongCase { expected: CaseTag, found: CaseTag },
}

/// Classifies `tree` and returns a minimum-cost NL landmark set for `k = 2`.
pub fn solve(tree: &WeightedTree) -> Result<LandmarkResult, SolveError> {
    let topology = classify(tree)?;
    solve_classified(tree, &topology)
}

/// Like [`solve`], reusing an existing classification.
pub fn solve_classified(
    tree: &WeightedTree,
    topology: &Topology,
) -> Result<LandmarkResult, SolveError> {
    match topology.case_tag {
        CaseTag::Tiny => Ok(solve_tiny(tree)),
        CaseTag::Path => Ok(solve_path(tree)),
        CaseTag::SingleSmallCore => solve_single_small_core(topology, tree),
        CaseTag::TwoSmallCores => solve_two_small_cores(topology, tree),
        CaseTag::HasRegularCore => solve_general(topology, tree),
    }
}

fn expect_case(topology: &Topology, expected: CaseTag) -> Result<(), SolveError> {
    if topology.case_tag == expected {
        Ok(())
    } else {
        Err(SolveError::WrongCase {
            expected,
            found: topology.case_tag,
        })
    }
}

/// `(cost, size, ids)` order used to pick among candidate sets.
fn set_order(a: &(Cost, Vec<VertexId>), b: &(Cost, Vec<VertexId>)) -> Ordering {
    a.0.cmp(&b.0)
        .then(a.1.len().cmp(&b.1.len()))
        .then_with(|| a.1.cmp(&b.1))
}

fn result(
    tree: &WeightedTree,
    case_tag: CaseTag,
    landmarks: Vec<VertexId>,
    explanation: Vec<LocalSetAssignment>,
    added_core_vertex: Option<VertexId>,
) -> LandmarkResult {
    let mut chosen = vec![false; tree.len()];
    for v in &landmarks {
        chosen[v.index()] = true;
    }
    let landmarks: Vec<VertexId> = tree.vertices().filter(|v| chosen[v.index()]).collect();
    LandmarkResult {
        cost: landmarks.iter().map(|&v| tree.cost(v)).sum(),
        landmarks,
        case_tag,
        explanation,
        added_core_vertex,
    }
}

fn solve_tiny(tree: &WeightedTree) -> LandmarkResult {
    // One vertex: no pair to separate. Two vertices: any single landmark
    // leaves one vertex outside, which is trivially fine, while the empty set
    // leaves an unseparated pair.
    let landmarks = if tree.len() == 1 {
        Vec::new()
    } else {
        let v = tree.vertices().min_by_key(|&v| (tree.cost(v), v)).unwrap();
        vec![v]
    };
    result(tree, CaseTag::Tiny, landmarks, Vec::new(), None)
}

/// Minimum over the two-vertex sets that work on a path (both endpoints,
/// the first two, the last two, and on four vertices the middle two) and the
/// three cheapest vertices, since any three vertices of a path are enough.
pub fn solve_path(tree: &WeightedTree) -> LandmarkResult {
    let n = tree.len();
    if n <= 2 {
        return solve_tiny(tree);
    }
    let start = tree
        .vertices()
        .find(|&v| tree.degree(v) == 1)
        .expect("a path has two endpoints");
    let mut order = Vec::with_capacity(n);
    let (mut prev, mut cur) = (start, start);
    order.push(start);
    while let Some(&next) = tree.neighbors(cur).iter().find(|&&x| x != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(order.len(), n);

    let mut candidates: Vec<Vec<VertexId>> = vec![
        vec![order[0], order[n - 1]],
        vec![order[0], order[1]],
        vec![order[n - 2], order[n - 1]],
    ];
    if n == 4 {
        candidates.push(vec![order[1], order[2]]);
    }
    let mut by_cost: Vec<VertexId> = order.clone();
    by_cost.select_nth_unstable_by_key(2, |&v| (tree.cost(v), v));
    candidates.push(by_cost[..3].to_vec());

    let best = candidates
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            (tree.total_cost(&c), c)
        })
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .unwrap();
    result(tree, CaseTag::Path, best.1, Vec::new(), None)
}

fn tables(tree: &WeightedTree, legs: &[GLeg]) -> Vec<LegSolutionTable> {
    legs.iter().map(|l| min_cost_solutions(l, tree)).collect()
}

fn assignment(core: VertexId, picks: Vec<TypedLegSolution>) -> LocalSetAssignment {
    LocalSetAssignment { core, legs: picks }
}

/// Index of the leg of `kind` whose `t` representative is most expensive;
/// ties go to the lowest root id.
fn priciest(tables: &[LegSolutionTable], kind: LegKind, t: SolutionType) -> Option<usize> {
    let mut best: Option<(Cost, VertexId, usize)> = None;
    for (i, table) in tables.iter().enumerate().filter(|(_, t)| t.kind == kind) {
        let cost = table.get(t).expect("type available for this kind").cost;
        let better = match best {
            None => true,
            Some((c, root, _)) => cost > c || (cost == c && table.root < root),
        };
        if better {
            best = Some((cost, table.root, i));
        }
    }
    best.map(|(_, _, i)| i)
}

fn pick(table: &LegSolutionTable, types: &[SolutionType]) -> TypedLegSolution {
    let (t, _) = table
        .cheapest_of(types)
        .expect("at least one of the requested types is available");
    table.typed(t).unwrap()
}

/// The three shapes a thrifty local set on a regular core can take.
#[derive(Clone, Copy)]
enum RegularShape {
    NoEmptyStandard,
    EmptyShort(usize),
    EmptyLong(usize),
}

impl RegularShape {
    fn choose(self, i: usize, table: &LegSolutionTable) -> (SolutionType, &crate::legs::Candidate) {
        use SolutionType::*;
        let fixed = |t: SolutionType| (t, table.get(t).expect("type available for this kind"));
        let cheapest = |types: &[SolutionType]| {
            table
                .cheapest_of(types)
                .expect("at least one of the requested types is available")
        };
        match (self, table.kind) {
            (RegularShape::EmptyShort(e), LegKind::ShortStandard)
            | (RegularShape::EmptyLong(e), LegKind::LongStandard)
                if e == i =>
            {
                fixed(S0)
            }
            (_, LegKind::ShortStandard) => fixed(S3),
            (RegularShape::NoEmptyStandard, LegKind::LongStandard) => cheapest(&[S3, S1, S2]),
            (RegularShape::EmptyShort(_), LegKind::LongStandard) => cheapest(&[S3, S2]),
            (RegularShape::EmptyLong(_), LegKind::LongStandard) => fixed(S2),
            (RegularShape::NoEmptyStandard, LegKind::Modified) => cheapest(&[M1, M2, M3]),
            (_, LegKind::Modified) => cheapest(&[M2, M3]),
        }
    }
}

/// Cheapest thrifty local set on the g-legs of a regular core.
///
/// Three shapes cover every local set: no empty standard leg; one empty
/// short leg (the one whose first vertex costs most); one empty long leg
/// (the one whose cheapest pair costs most).
pub fn best_local_set_regular(
    topology: &Topology,
    tree: &WeightedTree,
    core: VertexId,
) -> LocalSetAssignment {
    best_local_set_with(&mut Vec::new(), topology, tree, core)
}

fn best_local_set_with(
    tables: &mut Vec<LegSolutionTable>,
    topology: &Topology,
    tree: &WeightedTree,
    core: VertexId,
) -> LocalSetAssignment {
    use SolutionType::*;
    tables.clear();
    tables.extend(topology.legs_of(core).iter().map(|l| min_cost_solutions(l, tree)));

    let mut shapes = [Some(RegularShape::NoEmptyStandard), None, None];
    shapes[1] = priciest(tables, LegKind::ShortStandard, S3).map(RegularShape::EmptyShort);
    shapes[2] = priciest(tables, LegKind::LongStandard, S2).map(RegularShape::EmptyLong);

    let score = |shape: RegularShape| {
        tables.iter().enumerate().fold((Cost::ZERO, 0usize), |(cost, count), (i, t)| {
            let (_, c) = shape.choose(i, t);
            (cost + c.cost, count + c.len())
        })
    };
    let mut best: Option<((Cost, usize), RegularShape)> = None;
    for shape in shapes.into_iter().flatten() {
        let key = score(shape);
        if best.map_or(true, |(k, _)| key < k) {
            best = Some((key, shape));
        }
    }
    let (_, shape) = best.expect("the first shape always exists");
    let legs = tables
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let (ty, _) = shape.choose(i, t);
            t.typed(ty).unwrap()
        })
        .collect();
    let best = assignment(core, legs);
    debug_assert!(violated_conditions(&best.kinds_and_types()).is_empty());
    best
}

/// Union of the cheapest local sets of all regular cores.
pub fn solve_general(topology: &Topology, tree: &WeightedTree) -> Result<LandmarkResult, SolveError> {
    expect_case(topology, CaseTag::HasRegularCore)?;
    let mut landmarks = Vec::new();
    let mut explanation = Vec::new();
    let mut tables = Vec::new();
    for core in topology.regular_cores() {
        let a = best_local_set_with(&mut tables, topology, tree, core.core);
        landmarks.extend(a.vertices());
        explanation.push(a);
    }
    Ok(result(tree, CaseTag::HasRegularCore, landmarks, explanation, None))
}

/// A tree whose only core is small, with three standard legs.
pub fn solve_single_small_core(
    topology: &Topology,
    tree: &WeightedTree,
) -> Result<LandmarkResult, SolveError> {
    expect_case(topology, CaseTag::SingleSmallCore)?;
    let core = topology.cores[0].core;
    let legs = topology.legs_of(core);
    debug_assert_eq!(legs.len(), 3);
    let tables = tables(tree, legs);
    use SolutionType::*;

    let mut patterns: Vec<Vec<TypedLegSolution>> = Vec::new();
    patterns.push(
        tables
            .iter()
            .map(|t| match t.kind {
                LegKind::ShortStandard => t.typed(S3).unwrap(),
                _ => pick(t, &[S3, S1, S2]),
            })
            .collect(),
    );
    for (empty, e) in tables.iter().enumerate() {
        match e.kind {
            LegKind::LongStandard => patterns.push(
                tables
                    .iter()
                    .enumerate()
                    .map(|(i, t)| match t.kind {
                        _ if i == empty => t.typed(S0).unwrap(),
                        LegKind::LongStandard => t.typed(S2).unwrap(),
                        _ => t.typed(S3).unwrap(),
                    })
                    .collect(),
            ),
            LegKind::ShortStandard => {
                let longs: Vec<usize> = (0..tables.len())
                    .filter(|&i| tables[i].kind == LegKind::LongStandard)
                    .collect();
                for combo in 0u32..(1 << longs.len()) {
                    patterns.push(
                        tables
                            .iter()
                            .enumerate()
                            .map(|(i, t)| {
                                if i == empty {
                                    t.typed(S0).unwrap()
                                } else if let Some(j) = longs.iter().position(|&l| l == i) {
                                    t.typed(if combo >> j & 1 == 1 { S2 } else { S3 }).unwrap()
                                } else {
                                    t.typed(S3).unwrap()
                                }
                            })
                            .collect(),
                    );
                }
            }
            LegKind::Modified => unreachable!("a lone small core has only standard legs"),
        }
    }

    // Two selected leg vertices separate everything only when both are
    // leaves of short legs; otherwise the core joins the set.
    let mut best: Option<((Cost, Vec<VertexId>), LocalSetAssignment, bool)> = None;
    for legs in patterns {
        let a = assignment(core, legs);
        let mut set: Vec<VertexId> = a.vertices().collect();
        let short_pair = set.len() == 2
            && a
                .legs
                .iter()
                .filter(|l| l.kind == LegKind::ShortStandard && l.solution_type == S3)
                .count()
                == 2;
        let add_core = set.len() == 2 && !short_pair;
        if add_core {
            set.push(core);
        }
        set.sort_unstable();
        let key = (tree.total_cost(&set), set);
        if best
            .as_ref()
            .map_or(true, |(k, _, _)| set_order(&key, k) == Ordering::Less)
        {
            best = Some((key, a, add_core));
        }
    }
    let ((_, set), a, added) = best.unwrap();
    Ok(result(
        tree,
        CaseTag::SingleSmallCore,
        set,
        vec![a],
        added.then_some(core),
    ))
}

/// Where a pool vertex sits relative to one small core's g-legs.
#[derive(Clone, Copy)]
struct Placement {
    leg: usize,
    position: u32,
    is_ell: bool,
}

/// Two small cores joined by a path, no regular core.
///
/// Only a handful of vertices ever matter: the cheapest interior path
/// vertex, the two cores, the first vertex of each standard leg, and the two
/// cheapest deeper vertices of each long leg. Every subset of that pool is
/// screened by checking that it restricts to a local set on both cores'
/// g-legs, and the cheapest survivor wins (ties: lexicographically smallest).
pub fn solve_two_small_cores(
    topology: &Topology,
    tree: &WeightedTree,
) -> Result<LandmarkResult, SolveError> {
    expect_case(topology, CaseTag::TwoSmallCores)?;
    let cores: Vec<VertexId> = topology.small_cores().map(|c| c.core).collect();
    let [u, v] = cores[..] else {
        return Err(TopologyError::InternalInvariantViolation(format!(
            "expected two small cores, found {}",
            cores.len()
        ))
        .into());
    };
    let legs_u = topology.legs_of(u);
    let legs_v = topology.legs_of(v);

    let cheapest = |items: &mut Vec<VertexId>, take: usize| {
        items.sort_unstable_by_key(|&x| (tree.cost(x), x));
        items.truncate(take);
    };

    let mut pool: Vec<VertexId> = vec![u, v];
    // Interior of the u-v path: positions before v on u's modified leg.
    let bridge = legs_u
        .iter()
        .find(|l| l.kind == LegKind::Modified)
        .expect("each small core sees the other through a modified leg");
    let v_position = bridge.modified.unwrap().core_position;
    let mut interior: Vec<VertexId> = bridge
        .iter()
        .filter(|&(_, p)| p < v_position)
        .map(|(x, _)| x)
        .collect();
    cheapest(&mut interior, 1);
    pool.extend(interior);
    for legs in [legs_u, legs_v] {
        for leg in legs.iter().filter(|l| l.kind.is_standard()) {
            pool.push(leg.root);
            let mut deep: Vec<VertexId> = leg
                .iter()
                .filter(|&(_, p)| p >= 2)
                .map(|(x, _)| x)
                .collect();
            cheapest(&mut deep, 2);
            pool.extend(deep);
        }
    }
    pool.sort_unstable();
    pool.dedup();
    let index: HashMap<VertexId, usize> = pool.iter().enumerate().map(|(i, &x)| (x, i)).collect();

    let placements = |legs: &[GLeg]| -> Vec<Option<Placement>> {
        let mut out = vec![None; pool.len()];
        for (li, leg) in legs.iter().enumerate() {
            let ell = leg.ell_pair();
            for (x, position) in leg.iter() {
                if let Some(&i) = index.get(&x) {
                    out[i] = Some(Placement {
                        leg: li,
                        position,
                        is_ell: ell.is_some_and(|(a, b)| x == a || x == b),
                    });
                }
            }
        }
        out
    };
    let views = [(legs_u, placements(legs_u)), (legs_v, placements(legs_v))];
    let pool_costs: Vec<Cost> = pool.iter().map(|&x| tree.cost(x)).collect();

    let is_local = |mask: u32, legs: &[GLeg], place: &[Option<Placement>]| {
        let mut stats = [LegStats::default(); 3];
        for (i, p) in place.iter().enumerate() {
            if mask >> i & 1 == 0 {
                continue;
            }
            if let Some(p) = p {
                let leg = &legs[p.leg];
                stats[p.leg].add(p.position, p.is_ell, leg.modified.map(|m| m.core_position));
            }
        }
        let typed: Vec<(LegKind, SolutionType)> = legs
            .iter()
            .zip(stats)
            .map(|(l, s)| (l.kind, s.solution_type(l.kind)))
            .collect();
        violated_conditions(&typed).is_empty()
    };

    let mut best: Option<(Cost, Vec<VertexId>)> = None;
    for mask in 0u32..(1 << pool.len()) {
        let cost: Cost = (0..pool.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pool_costs[i])
            .sum();
        if best.as_ref().is_some_and(|(c, _)| cost > *c) {
            continue;
        }
        if !views.iter().all(|(legs, place)| is_local(mask, legs, place)) {
            continue;
        }
        let set: Vec<VertexId> = (0..pool.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pool[i])
            .collect();
        let key = (cost, set);
        if best
            .as_ref()
            .map_or(true, |b| key.0 < b.0 || (key.0 == b.0 && key.1 < b.1))
        {
            best = Some(key);
        }
    }
    let (_, set) = best.expect("the four first-leg vertices always qualify");
    #[cfg(debug_assertions)]
    if tree.len() <= 4096 {
        use crate::oracle::{verify_landmark_fast, Model};
        debug_assert!(verify_landmark_fast(tree, &set, Model::NL2, 1).is_valid());
    }
    Ok(result(tree, CaseTag::TwoSmallCores, set, Vec::new(), None))
}

/// Per-vertex class table, mostly for display.
pub fn class_summary(topology: &Topology) -> Vec<(VertexId, VertexClass)> {
    topology
        .class
        .iter()
        .enumerate()
        .map(|(i, &c)| (VertexId::from(i), c))
        .collect()
}
