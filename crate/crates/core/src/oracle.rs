//! Ground truth straight from the definitions.
//!
//! Nothing in this module looks at cores or legs: a set is checked by
//! counting separating landmarks pair by pair, and minimum sets are found by
//! exhaustive enumeration.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::cost::{checked_scaled_total, Cost};
use crate::tree::{VertexId, WeightedTree};

/// Which pairs need separating: only non-landmarks (NL) or all pairs (AP).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Nl,
    Ap,
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "nl" => Ok(ModelKind::Nl),
            "ap" => Ok(ModelKind::Ap),
            other => Err(format!("unknown model `{other}` (expected nl or ap)")),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Nl => "nl",
            ModelKind::Ap => "ap",
        })
    }
}

/// A separation model: every required pair needs at least `k` separators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Model {
    pub kind: ModelKind,
    pub k: u32,
}

impl Model {
    /// The model the solver optimizes for.
    pub const NL2: Model = Model {
        kind: ModelKind::Nl,
        k: 2,
    };

    pub fn new(kind: ModelKind, k: u32) -> Self {
        Model { kind, k }
    }
}

/// An under-separated pair and how many landmarks separate it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Violation {
    pub x: VertexId,
    pub y: VertexId,
    pub separators: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("tree has {n} vertices; exhaustive search is capped at {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("the given set is not a landmark set")]
    NotALandmarkSet,
}

pub const DEFAULT_CAP: usize = 18;

fn sorted_unique(landmarks: &[VertexId]) -> Vec<VertexId> {
    let mut l = landmarks.to_vec();
    l.sort_unstable();
    l.dedup();
    l
}

/// Checks every required pair by counting separating landmarks.
///
/// Counting stops at `k` for each pair, so the separator count reported in
/// a violation is exact. `O(n^2 |L|)`; meant for trees up to a few thousand
/// vertices.
pub fn verify_landmark(tree: &WeightedTree, landmarks: &[VertexId], model: Model) -> Verdict {
    let landmarks = sorted_unique(landmarks);
    let n = tree.len();
    let rows: Vec<Vec<u32>> = landmarks.iter().map(|&l| tree.bfs_distances(l)).collect();
    let mut in_l = vec![false; n];
    for l in &landmarks {
        in_l[l.index()] = true;
    }
    let required: Vec<usize> = (0..n)
        .filter(|&v| model.kind == ModelKind::Ap || !in_l[v])
        .collect();
    let mut violations = Vec::new();
    for (i, &x) in required.iter().enumerate() {
        for &y in &required[i + 1..] {
            let mut count = 0;
            for row in &rows {
                if row[x] != row[y] {
                    count += 1;
                    if count >= model.k {
                        break;
                    }
                }
            }
            if count < model.k {
                violations.push(Violation {
                    x: VertexId::from(x),
                    y: VertexId::from(y),
                    separators: count,
                });
            }
        }
    }
    Verdict { violations }
}

/// Same answer as [`verify_landmark`] for `k <= 2`, in `O(n |L|)` time and
/// `O(n)` memory, so it scales to trees with tens of thousands of vertices.
///
/// Each vertex gets an additive hash of its distance vector. Two vertices
/// separated by fewer than two landmarks agree on every coordinate but at
/// most one, so they collide once that coordinate is subtracted out. Every
/// collision is re-checked exactly before it is reported. At most `limit`
/// violations are collected. Falls back to the quadratic check for `k > 2`.
pub fn verify_landmark_fast(
    tree: &WeightedTree,
    landmarks: &[VertexId],
    model: Model,
    limit: usize,
) -> Verdict {
    if model.k > 2 {
        let mut v = verify_landmark(tree, landmarks, model);
        v.violations.truncate(limit.max(1));
        return v;
    }
    let landmarks = sorted_unique(landmarks);
    let n = tree.len();
    let mut in_l = vec![false; n];
    for l in &landmarks {
        in_l[l.index()] = true;
    }
    let required = |v: usize| model.kind == ModelKind::Ap || !in_l[v];

    let mut full = vec![0u64; n];
    for &l in &landmarks {
        let d = tree.bfs_distances(l);
        for v in 0..n {
            full[v] = full[v].wrapping_add(coord_hash(l, d[v]));
        }
    }

    let mut suspects: Vec<(usize, usize)> = Vec::new();
    let collect_groups = |keys: &dyn Fn(usize) -> u64, suspects: &mut Vec<(usize, usize)>| {
        let mut groups: HashMap<u64, Vec<usize>> = HashMap::new();
        for v in (0..n).filter(|&v| required(v)) {
            groups.entry(keys(v)).or_default().push(v);
        }
        for members in groups.values().filter(|m| m.len() > 1) {
            for (i, &x) in members.iter().enumerate() {
                for &y in &members[i + 1..] {
                    suspects.push((x.min(y), x.max(y)));
                    if suspects.len() > limit.max(1).saturating_mul(4) {
                        return;
                    }
                }
            }
        }
    };
    if model.k >= 1 {
        collect_groups(&|v| full[v], &mut suspects);
    }
    if model.k == 2 {
        for &l in &landmarks {
            let d = tree.bfs_distances(l);
            collect_groups(&|v| full[v].wrapping_sub(coord_hash(l, d[v])), &mut suspects);
        }
    }
    suspects.sort_unstable();
    suspects.dedup();

    let mut violations = Vec::new();
    for (x, y) in suspects {
        if violations.len() >= limit {
            break;
        }
        let dx = tree.bfs_distances(VertexId::from(x));
        let dy = tree.bfs_distances(VertexId::from(y));
        let count = landmarks
            .iter()
            .filter(|l| dx[l.index()] != dy[l.index()])
            .count() as u32;
        if count < model.k {
            violations.push(Violation {
                x: VertexId::from(x),
                y: VertexId::from(y),
                separators: count,
            });
        }
    }
    Verdict { violations }
}

fn coord_hash(landmark: VertexId, distance: u32) -> u64 {
    splitmix64(((landmark.0 as u64) << 32) ^ distance as u64 ^ 0x9E37_79B9_7F4A_7C15)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Lexicographic order of the sorted id lists encoded by two bitmasks.
fn lex_cmp_masks(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let low = (a ^ b).trailing_zeros();
    let above = |m: u64| if low >= 63 { 0 } else { m >> (low + 1) };
    if a >> low & 1 == 1 {
        // `a` continues with `low`; `b` either ends or continues with something larger.
        if above(b) == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else if above(a) == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Exhaustive minimum over all `2^n` subsets.
///
/// Returns the cheapest valid set; among equally cheap sets, the
/// lexicographically smallest sorted id list.
pub fn brute_min(
    tree: &WeightedTree,
    model: Model,
    cap: usize,
) -> Result<(Vec<VertexId>, Cost), OracleError> {
    let n = tree.len();
    if n > cap || n > 40 {
        return Err(OracleError::TooLarge { n, cap: cap.min(40) });
    }
    let (_, denom) = checked_scaled_total(tree.costs()).expect("validated at construction");
    let scaled: Vec<u128> = tree
        .costs()
        .iter()
        .map(|c| c.numer() * (denom / c.denom()))
        .collect();

    let dist: Vec<Vec<u32>> = tree.vertices().map(|v| tree.bfs_distances(v)).collect();
    let mut pairs: Vec<(u64, u64)> = Vec::with_capacity(n * n / 2);
    for x in 0..n {
        for y in x + 1..n {
            let mut sep = 0u64;
            for t in 0..n {
                if dist[t][x] != dist[t][y] {
                    sep |= 1 << t;
                }
            }
            pairs.push(((1u64 << x) | (1u64 << y), sep));
        }
    }

    let valid = |mask: u64| {
        pairs.iter().all(|&(ends, sep)| {
            (model.kind == ModelKind::Nl && ends & mask != 0) || (sep & mask).count_ones() >= model.k
        })
    };

    let mut best: Option<(u128, u64)> = None;
    for mask in 0u64..(1u64 << n) {
        let mut cost = 0u128;
        let mut m = mask;
        while m != 0 {
            cost += scaled[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        if let Some((bc, bm)) = best {
            match cost.cmp(&bc) {
                Ordering::Greater => continue,
                Ordering::Equal if lex_cmp_masks(mask, bm) != Ordering::Less => continue,
                _ => {}
            }
        }
        if valid(mask) {
            best = Some((cost, mask));
        }
    }
    let (_, mask) = best.expect("the full vertex set is always an NL landmark set");
    let set: Vec<VertexId> = (0..n).filter(|&i| mask >> i & 1 == 1).map(VertexId::from).collect();
    let cost = tree.total_cost(&set);
    Ok((set, cost))
}

/// Slow second route to the same minimum: every subset through
/// [`verify_landmark`], costs summed as rationals. For cross-checking only.
pub fn brute_min_naive(
    tree: &WeightedTree,
    model: Model,
    cap: usize,
) -> Result<(Vec<VertexId>, Cost), OracleError> {
    let n = tree.len();
    if n > cap || n > 24 {
        return Err(OracleError::TooLarge { n, cap: cap.min(24) });
    }
    let mut best: Option<(Cost, Vec<VertexId>)> = None;
    for mask in 0u32..(1u32 << n) {
        let set: Vec<VertexId> = (0..n).filter(|&i| mask >> i & 1 == 1).map(VertexId::from).collect();
        let cost = tree.total_cost(&set);
        if best.as_ref().is_some_and(|(c, s)| (cost, &set) >= (*c, s)) {
            continue;
        }
        if verify_landmark(tree, &set, model).is_valid() {
            best = Some((cost, set));
        }
    }
    match best {
        Some((c, s)) => Ok((s, c)),
        None => Err(OracleError::NotALandmarkSet),
    }
}

/// True when removing any single vertex breaks validity.
pub fn is_minimal_inclusion(
    tree: &WeightedTree,
    landmarks: &[VertexId],
    model: Model,
) -> Result<bool, OracleError> {
    let landmarks = sorted_unique(landmarks);
    if !verify_landmark(tree, &landmarks, model).is_valid() {
        return Err(OracleError::NotALandmarkSet);
    }
    for i in 0..landmarks.len() {
        let mut smaller = landmarks.clone();
        smaller.remove(i);
        if verify_landmark(tree, &smaller, model).is_valid() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::ids;

    fn unit(n: usize, edges: &[(usize, usize)]) -> WeightedTree {
        WeightedTree::unit(n, edges).unwrap()
    }

    fn path5() -> WeightedTree {
        unit(5, &[(0, 1), (1, 2), (2, 3), (3, 4)])
    }

    fn star() -> WeightedTree {
        unit(4, &[(0, 1), (0, 2), (0, 3)])
    }

    const AP2: Model = Model {
        kind: ModelKind::Ap,
        k: 2,
    };

    #[test]
    fn path_prefix_is_nl_but_not_ap() {
        assert!(verify_landmark(&path5(), &ids(&[0, 1]), Model::NL2).is_valid());
        let ap = verify_landmark(&path5(), &ids(&[0, 1]), AP2);
        assert!(!ap.is_valid());
        assert!(ap.violations.contains(&Violation {
            x: VertexId(0),
            y: VertexId(2),
            separators: 1
        }));
    }

    #[test]
    fn caterpillar_pair_is_invalid() {
        let t = unit(6, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)]);
        let v = verify_landmark(&t, &ids(&[0, 3]), Model::NL2);
        assert!(!v.is_valid());
        assert!(v.violations.iter().all(|x| x.separators < 2));
        // 1 and 2 are at distances (1,2) and (2,1); 4 and 5 at (2,3) and (3,2);
        // but 1 and 5 sit at (1,2) vs (3,2).
        assert!(v.violations.iter().any(|x| (x.x, x.y) == (VertexId(1), VertexId(5))));
    }

    #[test]
    fn star_two_leaves_is_valid() {
        assert!(verify_landmark(&star(), &ids(&[1, 2]), Model::NL2).is_valid());
    }

    #[test]
    fn brute_minima() {
        assert_eq!(brute_min(&star(), Model::NL2, DEFAULT_CAP).unwrap().1, Cost::integer(2));
        assert_eq!(brute_min(&star(), Model::NL2, DEFAULT_CAP).unwrap().0, ids(&[1, 2]));
        assert_eq!(brute_min(&path5(), Model::NL2, DEFAULT_CAP).unwrap(), (ids(&[0, 1]), Cost::integer(2)));
        let two = WeightedTree::new(2, &[(0, 1)], vec![Cost::integer(3), Cost::ONE]).unwrap();
        assert_eq!(brute_min(&two, Model::NL2, DEFAULT_CAP).unwrap(), (ids(&[1]), Cost::ONE));
        let one = unit(1, &[]);
        assert_eq!(brute_min(&one, Model::NL2, DEFAULT_CAP).unwrap(), (vec![], Cost::ZERO));
    }

    #[test]
    fn brute_cap() {
        assert_eq!(
            brute_min(&path5(), Model::NL2, 4),
            Err(OracleError::TooLarge { n: 5, cap: 4 })
        );
    }

    #[test]
    fn lex_mask_order_matches_vec_order() {
        let to_vec = |m: u64| (0..8).filter(|i| m >> i & 1 == 1).collect::<Vec<u32>>();
        for a in 0u64..256 {
            for b in 0u64..256 {
                assert_eq!(lex_cmp_masks(a, b), to_vec(a).cmp(&to_vec(b)), "{a:b} vs {b:b}");
            }
        }
    }

    #[test]
    fn minimality() {
        assert_eq!(is_minimal_inclusion(&star(), &ids(&[1, 2]), Model::NL2), Ok(true));
        let spider = unit(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]);
        let all: Vec<VertexId> = spider.vertices().collect();
        assert_eq!(is_minimal_inclusion(&spider, &all, Model::NL2), Ok(false));
        assert_eq!(
            is_minimal_inclusion(&star(), &ids(&[1]), Model::NL2),
            Err(OracleError::NotALandmarkSet)
        );
    }

    #[test]
    fn fast_verifier_agrees_on_small_cases() {
        let t = unit(6, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)]);
        for mask in 0u32..64 {
            let set: Vec<VertexId> = (0..6).filter(|i| mask >> i & 1 == 1).map(VertexId::from).collect();
            for model in [Model::NL2, AP2, Model::new(ModelKind::Nl, 1)] {
                let slow = verify_landmark(&t, &set, model);
                let fast = verify_landmark_fast(&t, &set, model, usize::MAX);
                assert_eq!(slow.is_valid(), fast.is_valid(), "{set:?} {model:?}");
                let mut a = slow.violations.clone();
                let mut b = fast.violations.clone();
                a.sort_by_key(|v| (v.x, v.y));
                b.sort_by_key(|v| (v.x, v.y));
                assert_eq!(a, b);
            }
        }
    }
}
