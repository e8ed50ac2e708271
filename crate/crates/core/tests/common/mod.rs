#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use treedim::gen::{random_cost, random_edges, spider_edges};
use treedim::topology::{classify, CoreRank, LegKind, Topology, VertexClass};
use treedim::{CaseTag, Cost, WeightedTree};

pub type Edges = Vec<(usize, usize)>;

pub fn unit(n: usize, edges: &[(usize, usize)]) -> WeightedTree {
    WeightedTree::unit(n, edges).unwrap()
}

pub fn star() -> WeightedTree {
    unit(4, &[(0, 1), (0, 2), (0, 3)])
}

pub fn spider222() -> WeightedTree {
    unit(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
}

pub fn t_mod() -> WeightedTree {
    unit(9, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (6, 7), (6, 8)])
}

pub fn t_minor1() -> WeightedTree {
    unit(
        10,
        &[(0, 1), (0, 2), (2, 3), (2, 4), (2, 5), (0, 6), (6, 7), (6, 8), (6, 9)],
    )
}

pub fn caterpillar6() -> WeightedTree {
    unit(6, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)])
}

pub fn path5() -> WeightedTree {
    unit(5, &[(0, 1), (1, 2), (2, 3), (3, 4)])
}

/// Splits `total` into `parts` positive integers uniformly at random.
fn composition(rng: &mut ChaCha8Rng, total: usize, parts: usize) -> Vec<usize> {
    assert!(total >= parts && parts > 0);
    let mut cuts: Vec<usize> = (1..total).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts[..parts - 1].to_vec();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain([total]) {
        out.push(c - prev);
        prev = c;
    }
    out
}

/// Appends a path of `len` new vertices hanging from `from`.
fn hang_path(edges: &mut Edges, next: &mut usize, from: usize, len: usize) {
    let mut prev = from;
    for _ in 0..len {
        edges.push((prev, *next));
        prev = *next;
        *next += 1;
    }
}

/// Appends a spider with the given leg lengths whose center hangs from
/// `from`; returns the center.
fn hang_spider(edges: &mut Edges, next: &mut usize, from: usize, legs: &[usize]) -> usize {
    let center = *next;
    edges.push((from, center));
    *next += 1;
    for &len in legs {
        hang_path(edges, next, center, len);
    }
    center
}

/// Applies a random relabelling so that shapes do not always put cores on
/// small ids.
pub fn relabel(rng: &mut ChaCha8Rng, n: usize, edges: &[(usize, usize)]) -> Edges {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Tiny,
    Path,
    SingleSmall,
    TwoSmall,
    Prufer,
    Caterpillar,
    Degree4Minor,
    FewLegMinor,
    ModifiedLeg,
}

pub const SHAPES: [Shape; 9] = [
    Shape::Tiny,
    Shape::Path,
    Shape::SingleSmall,
    Shape::TwoSmall,
    Shape::Prufer,
    Shape::Caterpillar,
    Shape::Degree4Minor,
    Shape::FewLegMinor,
    Shape::ModifiedLeg,
];

/// A random tree of the given shape with at most `max_n` vertices
/// (`max_n >= 12`). The returned edge list is relabelled.
pub fn shaped(rng: &mut ChaCha8Rng, shape: Shape, max_n: usize) -> (usize, Edges) {
    let mut edges = Edges::new();
    let mut next = 1;
    match shape {
        Shape::Tiny => {
            let n = rng.gen_range(1..=2);
            if n == 2 {
                edges.push((0, 1));
            }
            next = n;
        }
        Shape::Path => {
            let n = rng.gen_range(3..=max_n);
            hang_path(&mut edges, &mut next, 0, n - 1);
        }
        Shape::SingleSmall => {
            let n = rng.gen_range(4..=max_n);
            let mut legs = vec![1];
            legs.extend(composition(rng, n - 2, 2));
            legs.shuffle(rng);
            edges = spider_edges(&legs);
            next = n;
        }
        Shape::TwoSmall => {
            let n = rng.gen_range(6..=max_n);
            let parts = composition(rng, n - 3, 3);
            let bridge = parts[0] - 1;
            let (a, c) = (parts[1], parts[2]);
            hang_path(&mut edges, &mut next, 0, 1);
            hang_path(&mut edges, &mut next, 0, a);
            let mut v = 0;
            for _ in 0..=bridge {
                edges.push((v, next));
                v = next;
                next += 1;
            }
            hang_path(&mut edges, &mut next, v, 1);
            hang_path(&mut edges, &mut next, v, c);
        }
        Shape::Prufer => {
            let n = rng.gen_range(3..=max_n);
            edges = random_edges(n, rng);
            next = n;
        }
        Shape::Caterpillar => {
            let n = rng.gen_range(4..=max_n);
            let spine = rng.gen_range(3..=n.max(3)).min(n);
            hang_path(&mut edges, &mut next, 0, spine - 1);
            for leaf in spine..n {
                edges.push((rng.gen_range(1..spine - 1), leaf));
                next += 1;
            }
        }
        Shape::Degree4Minor => {
            // Core 0: one leaf, one standard leg, two branches with regular cores.
            let leg = rng.gen_range(1..=2);
            hang_path(&mut edges, &mut next, 0, 1);
            hang_path(&mut edges, &mut next, 0, leg);
            let mut spare = max_n - (4 + leg + 6);
            for _ in 0..2 {
                let legs: Vec<usize> = (0..3)
                    .map(|_| {
                        if spare > 0 && rng.gen_bool(0.3) {
                            spare -= 1;
                            2
                        } else {
                            1
                        }
                    })
                    .collect();
                hang_spider(&mut edges, &mut next, 0, &legs);
            }
        }
        Shape::FewLegMinor => {
            // Core 0 with at most one g-leg and regular-core branches.
            let branches = if max_n >= 13 && rng.gen_bool(0.3) {
                3
            } else {
                hang_path(&mut edges, &mut next, 0, rng.gen_range(1..=2));
                2
            };
            for _ in 0..branches {
                hang_spider(&mut edges, &mut next, 0, &[1, 1, 1]);
            }
        }
        Shape::ModifiedLeg => {
            // Regular core 0 with three legs and a branch ending in a small core.
            for _ in 0..3 {
                let len = rng.gen_range(1..=2);
                hang_path(&mut edges, &mut next, 0, len);
            }
            let bridge = rng.gen_range(0..=1);
            let mut prev = 0;
            for _ in 0..bridge {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            let long = rng.gen_range(1..=2);
            hang_spider(&mut edges, &mut next, prev, &[1, long]);
        }
    }
    let n = next;
    (n, relabel(rng, n, &edges))
}

pub fn random_costs(rng: &mut ChaCha8Rng, n: usize) -> Vec<Cost> {
    (0..n).map(|_| random_cost(rng)).collect()
}

/// Shaped tree with unit costs half of the time and random rationals
/// otherwise.
pub fn shaped_tree(rng: &mut ChaCha8Rng, shape: Shape, max_n: usize) -> WeightedTree {
    let (n, edges) = shaped(rng, shape, max_n);
    let costs = if rng.gen_bool(0.5) {
        vec![Cost::ONE; n]
    } else {
        random_costs(rng, n)
    };
    WeightedTree::new(n, &edges, costs).unwrap()
}

/// Coverage flags of one classified tree.
#[derive(Debug, Clone, Copy, Default)]
pub struct Flags {
    pub modified_leg: bool,
    pub minor_few_legs: bool,
    pub minor_by_degree: bool,
}

pub fn flags(tree: &WeightedTree, topology: &Topology) -> Flags {
    let mut f = Flags::default();
    if topology.case_tag != CaseTag::HasRegularCore {
        return f;
    }
    for core in topology.regular_cores() {
        f.modified_leg |= core.count(LegKind::Modified) > 0;
        if topology.class[core.core.index()] == VertexClass::RegularCore(CoreRank::Minor) {
            if core.legs.len() <= 1 {
                f.minor_few_legs = true;
            } else if tree.degree(core.core) >= 4 {
                f.minor_by_degree = true;
            }
        }
    }
    f
}

pub fn classify_ok(tree: &WeightedTree) -> Topology {
    classify(tree).unwrap()
}
