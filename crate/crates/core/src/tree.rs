//! Vertex-weighted trees and breadth-first distances.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::{checked_scaled_total, Cost};

/// Dense zero-based vertex index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v as u32)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("expected {n} costs, got {got}")]
    CostCount { n: usize, got: usize },
    #[error("not a tree: expected n-1 = {expected} edges, got {got}")]
    EdgeCount { expected: usize, got: usize },
    #[error("not a tree: edge #{edge} ({u}, {v}) is a self-loop")]
    SelfLoop { edge: usize, u: usize, v: usize },
    #[error("not a tree: edge #{edge} ({u}, {v}) closes a cycle")]
    Cycle { edge: usize, u: usize, v: usize },
    #[error("edge #{edge} ({u}, {v}) references a vertex outside 0..{n}")]
    IndexOutOfRange { edge: usize, u: usize, v: usize, n: usize },
    #[error("vertex {vertex} has negative cost")]
    NegativeCost { vertex: usize },
    #[error("total cost of all vertices is not representable exactly")]
    CostOverflow,
    #[error("vertex count {0} exceeds the supported maximum")]
    TooManyVertices(usize),
}

impl TreeError {
    /// True for the structural failures (cycle, wrong edge count, self-loop).
    pub fn is_not_a_tree(&self) -> bool {
        matches!(
            self,
            TreeError::EdgeCount { .. } | TreeError::SelfLoop { .. } | TreeError::Cycle { .. }
        )
    }
}

/// An immutable tree with exact vertex costs.
///
/// Adjacency is stored in CSR form with every neighbour list sorted by id,
/// and `edges` holds each edge once as `(min, max)` in sorted order.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedTree {
    edges: Vec<(VertexId, VertexId)>,
    offsets: Vec<u32>,
    neighbors: Vec<VertexId>,
    costs: Vec<Cost>,
}

impl fmt::Debug for WeightedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedTree")
            .field("n", &self.len())
            .field("edges", &self.edges)
            .field("costs", &self.costs)
            .finish()
    }
}

impl WeightedTree {
    /// Validates and builds a tree on `n` vertices.
    pub fn new(n: usize, edges: &[(usize, usize)], costs: Vec<Cost>) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if n > u32::MAX as usize - 1 {
            return Err(TreeError::TooManyVertices(n));
        }
        if costs.len() != n {
            return Err(TreeError::CostCount { n, got: costs.len() });
        }
        if edges.len() != n - 1 {
            return Err(TreeError::EdgeCount {
                expected: n - 1,
                got: edges.len(),
            });
        }
        if checked_scaled_total(&costs).is_none() {
            return Err(TreeError::CostOverflow);
        }

        // n-1 edges without a cycle span all n vertices.
        let mut dsu = UnionFind::new(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(TreeError::IndexOutOfRange { edge: i, u, v, n });
            }
            if u == v {
                return Err(TreeError::SelfLoop { edge: i, u, v });
            }
            if !dsu.union(u, v) {
                return Err(TreeError::Cycle { edge: i, u, v });
            }
        }

        let mut degree = vec![0u32; n + 1];
        for &(u, v) in edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = vec![0u32; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + degree[i];
        }
        let mut fill: Vec<u32> = offsets[..n].to_vec();
        let mut neighbors = vec![VertexId(0); 2 * (n - 1)];
        for &(u, v) in edges {
            neighbors[fill[u] as usize] = VertexId(v as u32);
            fill[u] += 1;
            neighbors[fill[v] as usize] = VertexId(u as u32);
            fill[v] += 1;
        }
        for i in 0..n {
            neighbors[offsets[i] as usize..offsets[i + 1] as usize].sort_unstable();
        }

        let mut norm: Vec<(VertexId, VertexId)> = edges
            .iter()
            .map(|&(u, v)| (VertexId(u.min(v) as u32), VertexId(u.max(v) as u32)))
            .collect();
        norm.sort_unstable();

        Ok(WeightedTree {
            edges: norm,
            offsets,
            neighbors,
            costs,
        })
    }

    /// Builds a tree from signed rationals `(numer, denom)`, rejecting negative
    /// costs and zero denominators by vertex.
    pub fn from_signed_costs(
        n: usize,
        edges: &[(usize, usize)],
        costs: &[(i64, i64)],
    ) -> Result<Self, TreeError> {
        if costs.len() != n {
            return Err(TreeError::CostCount { n, got: costs.len() });
        }
        let mut out = Vec::with_capacity(n);
        for (vertex, &(p, q)) in costs.iter().enumerate() {
            if q == 0 || (p != 0 && (p < 0) != (q < 0)) {
                return Err(TreeError::NegativeCost { vertex });
            }
            out.push(Cost::new(p.unsigned_abs(), q.unsigned_abs()));
        }
        Self::new(n, edges, out)
    }

    /// Unit costs on every vertex.
    pub fn unit(n: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        Self::new(n, edges, vec![Cost::ONE; n])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + Clone {
        (0..self.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let i = v.index();
        &self.neighbors[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        let i = v.index();
        (self.offsets[i + 1] - self.offsets[i]) as usize
    }

    #[inline]
    pub fn cost(&self, v: VertexId) -> Cost {
        self.costs[v.index()]
    }

    pub fn costs(&self) -> &[Cost] {
        &self.costs
    }

    /// Same shape, costs replaced. Fails only on overflow or a length mismatch.
    pub fn with_costs(&self, costs: Vec<Cost>) -> Result<Self, TreeError> {
        if costs.len() != self.len() {
            return Err(TreeError::CostCount {
                n: self.len(),
                got: costs.len(),
            });
        }
        if checked_scaled_total(&costs).is_none() {
            return Err(TreeError::CostOverflow);
        }
        Ok(WeightedTree {
            costs,
            ..self.clone()
        })
    }

    /// Hop distances from `src` to every vertex.
    pub fn bfs_distances(&self, src: VertexId) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        let mut queue = VecDeque::with_capacity(self.len());
        dist[src.index()] = 0;
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            let d = dist[x.index()] + 1;
            for &y in self.neighbors(x) {
                if dist[y.index()] == u32::MAX {
                    dist[y.index()] = d;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Exact cost of a vertex set. Duplicates are counted once.
    pub fn total_cost<'a, I>(&self, subset: I) -> Cost
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let mut seen: Vec<VertexId> = subset.into_iter().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.iter().map(|&v| self.cost(v)).sum()
    }
}

struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    /// Returns false if `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb as u32,
            std::cmp::Ordering::Greater => self.parent[rb] = ra as u32,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra as u32;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Convenience for tests and examples: `ids(&[0, 2])`.
pub fn ids(raw: &[usize]) -> Vec<VertexId> {
    raw.iter().map(|&v| VertexId::from(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> WeightedTree {
        WeightedTree::unit(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn single_vertex_tree() {
        let t = WeightedTree::new(1, &[], vec![Cost::ONE]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.degree(VertexId(0)), 0);
        assert_eq!(t.bfs_distances(VertexId(0)), vec![0]);
    }

    #[test]
    fn star_adjacency_is_sorted() {
        let t = WeightedTree::unit(4, &[(0, 3), (2, 0), (0, 1)]).unwrap();
        assert_eq!(t.neighbors(VertexId(0)), &ids(&[1, 2, 3])[..]);
        assert_eq!(t.edges(), &[(VertexId(0), VertexId(1)), (VertexId(0), VertexId(2)), (VertexId(0), VertexId(3))]);
        assert_eq!(t, star());
    }

    #[test]
    fn triangle_is_rejected() {
        let err = WeightedTree::unit(4, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert!(err.is_not_a_tree());
        let err = WeightedTree::unit(3, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert_eq!(err, TreeError::EdgeCount { expected: 2, got: 3 });
        let err = WeightedTree::unit(4, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert_eq!(err, TreeError::Cycle { edge: 2, u: 2, v: 0 });
    }

    #[test]
    fn structural_errors_name_the_culprit() {
        assert_eq!(
            WeightedTree::unit(3, &[(0, 1), (1, 1)]).unwrap_err(),
            TreeError::SelfLoop { edge: 1, u: 1, v: 1 }
        );
        assert_eq!(
            WeightedTree::unit(3, &[(0, 1), (1, 7)]).unwrap_err(),
            TreeError::IndexOutOfRange { edge: 1, u: 1, v: 7, n: 3 }
        );
        assert_eq!(
            WeightedTree::unit(4, &[(0, 1), (0, 1), (2, 3)]).unwrap_err(),
            TreeError::Cycle { edge: 1, u: 0, v: 1 }
        );
        assert_eq!(
            WeightedTree::from_signed_costs(2, &[(0, 1)], &[(1, 1), (-3, 2)]).unwrap_err(),
            TreeError::NegativeCost { vertex: 1 }
        );
        assert_eq!(WeightedTree::unit(0, &[]).unwrap_err(), TreeError::Empty);
    }

    #[test]
    fn signed_costs_accept_sign_pairs() {
        let t = WeightedTree::from_signed_costs(2, &[(0, 1)], &[(-1, -2), (0, -5)]).unwrap();
        assert_eq!(t.cost(VertexId(0)), Cost::new(1, 2));
        assert_eq!(t.cost(VertexId(1)), Cost::ZERO);
    }

    #[test]
    fn bfs_on_path_and_star() {
        let path = WeightedTree::unit(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(path.bfs_distances(VertexId(0)), vec![0, 1, 2, 3, 4]);
        assert_eq!(star().bfs_distances(VertexId(1)), vec![1, 0, 2, 2]);
    }

    #[test]
    fn total_cost_is_exact() {
        let t = WeightedTree::new(
            3,
            &[(0, 1), (1, 2)],
            vec![Cost::new(1, 2), Cost::new(3, 2), Cost::new(1, 3)],
        )
        .unwrap();
        assert_eq!(t.total_cost(&[]), Cost::ZERO);
        assert_eq!(t.total_cost(&ids(&[0, 1])), Cost::integer(2));
        assert_eq!(t.total_cost(&ids(&[0, 0, 1])), Cost::integer(2));
        let path = WeightedTree::unit(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(path.total_cost(&ids(&[0, 1, 2, 3, 4])), Cost::integer(5));
    }
}
