//! Tree generators: fixed shapes, uniform random labeled trees, and the
//! exhaustive stream of all labeled trees on `n` vertices.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cost::Cost;
use crate::tree::{TreeError, WeightedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeKind {
    Path,
    Star,
    Spider,
    Caterpillar,
    DoubleSpider,
    Random,
}

impl TreeKind {
    pub const ALL: [TreeKind; 6] = [
        TreeKind::Path,
        TreeKind::Star,
        TreeKind::Spider,
        TreeKind::Caterpillar,
        TreeKind::DoubleSpider,
        TreeKind::Random,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TreeKind::Path => "path",
            TreeKind::Star => "star",
            TreeKind::Spider => "spider",
            TreeKind::Caterpillar => "caterpillar",
            TreeKind::DoubleSpider => "double-spider",
            TreeKind::Random => "random",
        }
    }

    /// Smallest `n` the shape exists for.
    pub fn min_vertices(self) -> usize {
        match self {
            TreeKind::Spider => 4,
            TreeKind::DoubleSpider => 6,
            _ => 1,
        }
    }
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown tree kind {0:?}")]
    UnknownKind(String),
    #[error("unknown cost mode {0:?}")]
    UnknownCosts(String),
    #[error("a {kind} needs at least {min} vertices, got {n}")]
    TooSmall { kind: TreeKind, n: usize, min: usize },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

impl FromStr for TreeKind {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TreeKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| GenError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostMode {
    Unit,
    /// `p/q` with `p` uniform in `0..=100` and `q` in `{1, 2, 4}`.
    Random,
}

impl FromStr for CostMode {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unit" => Ok(CostMode::Unit),
            "random" => Ok(CostMode::Random),
            _ => Err(GenError::UnknownCosts(s.to_string())),
        }
    }
}

/// Seeded generator used by every randomized routine in the crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Edges of the tree with the given Prüfer sequence on `seq.len() + 2`
/// vertices. Linear time.
pub fn prufer_decode(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

/// Uniformly random labeled tree on `n` vertices.
pub fn random_edges<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            prufer_decode(&seq)
        }
    }
}

/// Every labeled tree on `n` vertices, once each (`n^(n-2)` of them).
pub fn all_labeled_trees(n: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let len = n.saturating_sub(2);
    let total: u64 = if n <= 1 { 1 } else { (n as u64).pow(len as u32) };
    (0..total).map(move |mut code| match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            let mut seq = vec![0; len];
            for s in seq.iter_mut() {
                *s = (code % n as u64) as usize;
                code /= n as u64;
            }
            prufer_decode(&seq)
        }
    })
}

fn path_edges(range: std::ops::Range<usize>) -> impl Iterator<Item = (usize, usize)> {
    range.clone().zip(range.skip(1))
}

/// Core 0 with legs of the given lengths, labelled consecutively leg by leg.
pub fn spider_edges(legs: &[usize]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in legs {
        edges.push((0, next));
        edges.extend(path_edges(next..next + len));
        next += len;
    }
    edges
}

/// Edges of a shape on `n` vertices. Only [`TreeKind::Random`] draws from
/// `rng`.
pub fn shape_edges<R: Rng>(
    kind: TreeKind,
    n: usize,
    rng: &mut R,
) -> Result<Vec<(usize, usize)>, GenError> {
    let min = kind.min_vertices();
    if n < min {
        return Err(GenError::TooSmall { kind, n, min });
    }
    Ok(match kind {
        TreeKind::Path => path_edges(0..n).collect(),
        TreeKind::Star => (1..n).map(|v| (0, v)).collect(),
        TreeKind::Spider => {
            let (q, r) = ((n - 1) / 3, (n - 1) % 3);
            spider_edges(&[q + usize::from(r > 0), q + usize::from(r > 1), q])
        }
        TreeKind::Caterpillar => {
            let spine = ((n + 3) / 2).min(n);
            let mut edges: Vec<_> = path_edges(0..spine).collect();
            edges.extend((spine..n).enumerate().map(|(i, leaf)| (1 + i, leaf)));
            edges
        }
        TreeKind::DoubleSpider => {
            // Cores 0 and 1 joined through a bridge; two legs on each core.
            let rest = n - 2;
            let bridge = (rest - 4) / 5;
            let legs = rest - bridge;
            let (q, r) = (legs / 4, legs % 4);
            let mut edges = Vec::with_capacity(n - 1);
            let mut next = 2;
            let mut prev = 0;
            for _ in 0..bridge {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, 1));
            for i in 0..4 {
                let len = q + usize::from(i < r);
                edges.push((i / 2, next));
                edges.extend(path_edges(next..next + len));
                next += len;
            }
            edges
        }
        TreeKind::Random => random_edges(n, rng),
    })
}

pub fn random_cost<R: Rng>(rng: &mut R) -> Cost {
    let p = rng.gen_range(0..=100u64);
    let q = [1u64, 2, 4][rng.gen_range(0..3)];
    Cost::new(p, q)
}

pub fn costs<R: Rng>(mode: CostMode, n: usize, rng: &mut R) -> Vec<Cost> {
    match mode {
        CostMode::Unit => vec![Cost::ONE; n],
        CostMode::Random => (0..n).map(|_| random_cost(rng)).collect(),
    }
}

/// Deterministic tree for a `(kind, n, seed, costs)` request. Shape first,
/// then costs, from one stream.
pub fn generate(
    kind: TreeKind,
    n: usize,
    seed: u64,
    mode: CostMode,
) -> Result<WeightedTree, GenError> {
    let mut rng = rng(seed);
    let edges = shape_edges(kind, n, &mut rng)?;
    let costs = costs(mode, n, &mut rng);
    Ok(WeightedTree::new(n, &edges, costs)?)
}
