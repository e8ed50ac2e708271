//! Vertex classification and g-leg decomposition.
//!
//! A core is a vertex of degree at least three. Removing a core splits the
//! tree into one subtree per neighbour; a subtree without cores is a standard
//! leg (short when it is a single leaf), and a subtree whose only core is a
//! small core is a modified leg. Together these are the core's g-legs.
//!
//! Everything here is computed from one rooted pass that counts cores below
//! each vertex. The count for the upward direction is the global count minus
//! the downward one, so every (core, neighbour) subtree is classified in O(1)
//! and the whole classification is linear.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{VertexId, WeightedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreRank {
    Minor,
    Main,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexClass {
    /// The lone vertex of a one-vertex tree.
    Isolated,
    Leaf,
    PathVertex,
    SmallCore,
    RegularCore(CoreRank),
}

impl VertexClass {
    pub fn is_core(self) -> bool {
        matches!(self, VertexClass::SmallCore | VertexClass::RegularCore(_))
    }

    pub fn is_regular(self) -> bool {
        matches!(self, VertexClass::RegularCore(_))
    }

    pub fn label(self) -> &'static str {
        match self {
            VertexClass::Isolated => "isolated",
            VertexClass::Leaf => "leaf",
            VertexClass::PathVertex => "path",
            VertexClass::SmallCore => "small_core",
            VertexClass::RegularCore(CoreRank::Minor) => "minor_core",
            VertexClass::RegularCore(CoreRank::Main) => "main_core",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Tiny,
    Path,
    SingleSmallCore,
    TwoSmallCores,
    HasRegularCore,
}

impl CaseTag {
    pub const ALL: [CaseTag; 5] = [
        CaseTag::Tiny,
        CaseTag::Path,
        CaseTag::SingleSmallCore,
        CaseTag::TwoSmallCores,
        CaseTag::HasRegularCore,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Tiny => "tiny",
            CaseTag::Path => "path",
            CaseTag::SingleSmallCore => "single_small_core",
            CaseTag::TwoSmallCores => "two_small_cores",
            CaseTag::HasRegularCore => "has_regular_core",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LegKind {
    ShortStandard,
    LongStandard,
    Modified,
}

impl LegKind {
    pub fn is_standard(self) -> bool {
        !matches!(self, LegKind::Modified)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LegKind::ShortStandard => "short_standard",
            LegKind::LongStandard => "long_standard",
            LegKind::Modified => "modified",
        }
    }
}

/// Where the small core of a modified leg sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModifiedInfo {
    pub small_core: VertexId,
    /// Distance of the small core from the owner.
    pub core_position: u32,
    pub ell_a: VertexId,
    /// Always the vertex of a short leg of the small core.
    pub ell_b: VertexId,
}

/// One g-leg of a core.
///
/// Positions are tree distances from the owner. Standard legs list their
/// vertices in path order, so the i-th one sits at position `i + 1`; modified
/// legs list theirs in breadth-first order from `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GLeg {
    pub owner: VertexId,
    pub root: VertexId,
    pub kind: LegKind,
    pub vertices: Vec<VertexId>,
    /// Parallel to `vertices` for modified legs, empty for standard ones.
    pub(crate) positions: Vec<u32>,
    pub modified: Option<ModifiedInfo>,
}

impl GLeg {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// A standard leg along the path `vertices`, starting next to `owner`.
    pub fn standard(owner: VertexId, vertices: Vec<VertexId>) -> Self {
        GLeg {
            owner,
            root: vertices[0],
            kind: if vertices.len() == 1 {
                LegKind::ShortStandard
            } else {
                LegKind::LongStandard
            },
            vertices,
            positions: Vec::new(),
            modified: None,
        }
    }

    /// `(vertex, position)` pairs in leg order.
    pub fn iter(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        let standard = self.positions.is_empty();
        self.vertices.iter().enumerate().map(move |(i, &v)| {
            (v, if standard { i as u32 + 1 } else { self.positions[i] })
        })
    }

    pub fn positions(&self) -> impl Iterator<Item = u32> + '_ {
        self.iter().map(|(_, p)| p)
    }

    /// Map from leg vertex to its position.
    pub fn position_map(&self) -> HashMap<VertexId, u32> {
        self.iter().collect()
    }

    /// Linear scan; use [`GLeg::position_map`] for repeated lookups.
    pub fn position_of(&self, v: VertexId) -> Option<u32> {
        self.iter().find(|&(x, _)| x == v).map(|(_, p)| p)
    }

    pub fn ell_pair(&self) -> Option<(VertexId, VertexId)> {
        self.modified.map(|m| (m.ell_a, m.ell_b))
    }
}

/// The g-legs of one core plus the roots of its other neighbour subtrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreLegs {
    pub core: VertexId,
    pub legs: Vec<GLeg>,
    pub other_subtrees: Vec<VertexId>,
}

impl CoreLegs {
    pub fn count(&self, kind: LegKind) -> usize {
        self.legs.iter().filter(|l| l.kind == kind).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    pub class: Vec<VertexClass>,
    /// Every core of the tree, small or regular, sorted by id.
    pub cores: Vec<CoreLegs>,
    pub case_tag: CaseTag,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl Topology {
    pub fn core(&self, v: VertexId) -> Option<&CoreLegs> {
        self.cores
            .binary_search_by_key(&v, |c| c.core)
            .ok()
            .map(|i| &self.cores[i])
    }

    pub fn legs_of(&self, v: VertexId) -> &[GLeg] {
        self.core(v).map(|c| c.legs.as_slice()).unwrap_or(&[])
    }

    pub fn regular_cores(&self) -> impl Iterator<Item = &CoreLegs> {
        self.cores
            .iter()
            .filter(move |c| self.class[c.core.index()].is_regular())
    }

    pub fn small_cores(&self) -> impl Iterator<Item = &CoreLegs> {
        self.cores
            .iter()
            .filter(move |c| self.class[c.core.index()] == VertexClass::SmallCore)
    }

    pub fn main_cores(&self) -> impl Iterator<Item = &CoreLegs> {
        self.cores.iter().filter(move |c| {
            self.class[c.core.index()] == VertexClass::RegularCore(CoreRank::Main)
        })
    }
}

/// Classifies every vertex and decomposes every core's neighbourhood.
pub fn classify(tree: &WeightedTree) -> Result<Topology, TopologyError> {
    let n = tree.len();
    let degree_class = |v: VertexId| match tree.degree(v) {
        0 => VertexClass::Isolated,
        1 => VertexClass::Leaf,
        2 => VertexClass::PathVertex,
        _ => VertexClass::SmallCore, // placeholder, refined below
    };
    let mut class: Vec<VertexClass> = tree.vertices().map(degree_class).collect();

    if n <= 2 {
        return Ok(Topology {
            class,
            cores: Vec::new(),
            case_tag: CaseTag::Tiny,
        });
    }

    let Some(root) = tree.vertices().find(|&v| tree.degree(v) >= 3) else {
        return Ok(Topology {
            class,
            cores: Vec::new(),
            case_tag: CaseTag::Path,
        });
    };

    let rooted = Rooted::new(tree, root);
    let core_positions: Vec<u32> = (0..n as u32)
        .filter(|&p| rooted.rec[p as usize].degree() >= 3)
        .collect();

    // A core is small when it has degree three, two standard legs, and at
    // least one of those legs is a single leaf. Standard legs always point
    // away from the root, which is itself a core.
    let mut small = vec![false; n];
    for &p in &core_positions {
        let r = rooted.rec[p as usize];
        if r.degree() != 3 {
            continue;
        }
        let mut standard = 0;
        let mut short = false;
        for c in r.child_range() {
            let child = rooted.rec[c];
            if child.count == 0 {
                standard += 1;
                short |= child.children == 0;
            }
        }
        small[rooted.order[p as usize].index()] = standard >= 2 && short;
    }

    let mut cores = Vec::with_capacity(core_positions.len());
    for &p in &core_positions {
        let v = rooted.order[p as usize];
        let r = rooted.rec[p as usize];
        let mut legs = Vec::with_capacity(r.degree() as usize);
        let mut other_subtrees = Vec::new();
        let mut consider = |count: u32, id_xor: u32, w: VertexId, down: Option<usize>| {
            if count == 0 {
                legs.push(rooted.standard_leg(v, down.expect("standard legs point down")));
            } else if count == 1 && small[id_xor as usize] {
                let core = VertexId(id_xor);
                legs.push(match down {
                    Some(c) => rooted.modified_leg_down(tree, v, c, core)?,
                    None => modified_leg(tree, v, w, core)?,
                });
            } else {
                other_subtrees.push(w);
            }
            Ok::<(), TopologyError>(())
        };
        // Neighbours in id order: the parent slots in among the children.
        let parent = (r.parent != Rooted::NONE).then(|| rooted.order[r.parent as usize]);
        let mut parent_done = parent.is_none();
        for c in r.child_range() {
            let w = rooted.order[c];
            if !parent_done && parent.unwrap() < w {
                let up = (rooted.total - r.count, rooted.total_xor ^ r.id_xor);
                consider(up.0, up.1, parent.unwrap(), None)?;
                parent_done = true;
            }
            let child = rooted.rec[c];
            consider(child.count, child.id_xor, w, Some(c))?;
        }
        if !parent_done {
            consider(rooted.total - r.count, rooted.total_xor ^ r.id_xor, parent.unwrap(), None)?;
        }
        cores.push(CoreLegs {
            core: v,
            legs,
            other_subtrees,
        });
    }

    let mut slot = vec![u32::MAX; n];
    for (i, c) in cores.iter().enumerate() {
        slot[c.core.index()] = i as u32;
    }
    let mut bfs: Vec<Option<CoreLegs>> = cores.into_iter().map(Some).collect();
    let cores: Vec<CoreLegs> = slot
        .iter()
        .filter(|&&i| i != u32::MAX)
        .map(|&i| bfs[i as usize].take().expect("each core is taken once"))
        .collect();

    let mut regular = 0usize;
    let mut small_count = 0usize;
    for c in &cores {
        let v = c.core;
        if small[v.index()] {
            small_count += 1;
            continue;
        }
        regular += 1;
        let modified = c.count(LegKind::Modified);
        let short = c.count(LegKind::ShortStandard);
        let standard = c.legs.len() - modified;
        let minor = c.legs.len() <= 1
            || (tree.degree(v) >= 4 && modified == 0 && standard == 2 && short >= 1);
        class[v.index()] = VertexClass::RegularCore(if minor {
            CoreRank::Minor
        } else {
            CoreRank::Main
        });
    }

    let case_tag = match (regular, small_count) {
        (r, _) if r > 0 => CaseTag::HasRegularCore,
        (0, 1) => CaseTag::SingleSmallCore,
        (0, 2) => CaseTag::TwoSmallCores,
        (_, s) => {
            return Err(TopologyError::InternalInvariantViolation(format!(
                "{s} small cores and no regular core"
            )))
        }
    };

    Ok(Topology {
        class,
        cores,
        case_tag,
    })
}

/// Position map of a g-leg, plus `(ell_a, ell_b)` for modified legs.
pub fn gleg_positions(leg: &GLeg) -> (HashMap<VertexId, u32>, Option<(VertexId, VertexId)>) {
    (leg.position_map(), leg.ell_pair())
}

/// The tree rooted at a core, with per-vertex records stored in
/// breadth-first order so that the children of a vertex are adjacent.
struct Rooted {
    /// Breadth-first order; index is the position.
    order: Vec<VertexId>,
    rec: Vec<Rec>,
    total: u32,
    total_xor: u32,
}

/// Record of the vertex at one position.
#[derive(Clone, Copy)]
struct Rec {
    parent: u32,
    first_child: u32,
    children: u32,
    /// Cores in the subtree, and the xor of their ids (the id itself when
    /// there is exactly one).
    count: u32,
    id_xor: u32,
}

impl Rec {
    fn degree(&self) -> u32 {
        self.children + u32::from(self.parent != Rooted::NONE)
    }

    fn child_range(&self) -> std::ops::Range<usize> {
        self.first_child as usize..(self.first_child + self.children) as usize
    }
}

impl Rooted {
    const NONE: u32 = u32::MAX;

    fn new(tree: &WeightedTree, root: VertexId) -> Self {
        let n = tree.len();
        let mut order = Vec::with_capacity(n);
        let mut rec = Vec::with_capacity(n);
        order.push(root);
        rec.push(Rec {
            parent: Self::NONE,
            first_child: 0,
            children: 0,
            count: 0,
            id_xor: 0,
        });
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            let up = rec[head].parent;
            let from = (up != Self::NONE).then(|| order[up as usize]);
            let first_child = order.len() as u32;
            for &y in tree.neighbors(x) {
                if Some(y) != from {
                    order.push(y);
                    rec.push(Rec {
                        parent: head as u32,
                        first_child: 0,
                        children: 0,
                        count: 0,
                        id_xor: 0,
                    });
                }
            }
            rec[head].first_child = first_child;
            rec[head].children = order.len() as u32 - first_child;
            head += 1;
        }
        for p in (0..n).rev() {
            let r = &mut rec[p];
            if r.degree() >= 3 {
                r.count += 1;
                r.id_xor ^= order[p].0;
            }
            let (parent, count, id_xor) = (r.parent, r.count, r.id_xor);
            if parent != Self::NONE {
                let up = &mut rec[parent as usize];
                up.count += count;
                up.id_xor ^= id_xor;
            }
        }
        let (total, total_xor) = (rec[0].count, rec[0].id_xor);
        Rooted {
            order,
            rec,
            total,
            total_xor,
        }
    }

    /// The core-free path starting at position `start` below `owner`.
    fn standard_leg(&self, owner: VertexId, start: usize) -> GLeg {
        let mut vertices = vec![self.order[start]];
        let mut q = start;
        while self.rec[q].children == 1 {
            q = self.rec[q].first_child as usize;
            vertices.push(self.order[q]);
        }
        GLeg::standard(owner, vertices)
    }

    /// The subtree at position `start` below `owner`, known to hold exactly
    /// one core, `small_core`.
    fn modified_leg_down(
        &self,
        tree: &WeightedTree,
        owner: VertexId,
        start: usize,
        small_core: VertexId,
    ) -> Result<GLeg, TopologyError> {
        let mut queue = vec![start];
        let mut positions = vec![1u32];
        let mut head = 0;
        while head < queue.len() {
            let (q, d) = (queue[head], positions[head]);
            head += 1;
            for c in self.rec[q].child_range() {
                queue.push(c);
                positions.push(d + 1);
            }
        }
        let core_at = queue.iter().position(|&q| self.order[q] == small_core).ok_or_else(|| {
            TopologyError::InternalInvariantViolation(format!(
                "small core {small_core} not found below {owner}"
            ))
        })?;
        let core_parent = self.order[self.rec[queue[core_at]].parent as usize];
        let (ell_a, ell_b) = ells(tree, owner, small_core, core_parent)?;
        Ok(GLeg {
            owner,
            root: self.order[start],
            kind: LegKind::Modified,
            vertices: queue.iter().map(|&q| self.order[q]).collect(),
            modified: Some(ModifiedInfo {
                small_core,
                core_position: positions[core_at],
                ell_a,
                ell_b,
            }),
            positions,
        })
    }
}

/// `(ell_a, ell_b)` for a small core entered from `core_parent`.
fn ells(
    tree: &WeightedTree,
    owner: VertexId,
    small_core: VertexId,
    core_parent: VertexId,
) -> Result<(VertexId, VertexId), TopologyError> {
    let mut children: Vec<VertexId> = tree
        .neighbors(small_core)
        .iter()
        .copied()
        .filter(|&x| x != core_parent)
        .collect();
    children.sort_unstable();
    let [first, second] = children[..] else {
        return Err(TopologyError::InternalInvariantViolation(format!(
            "small core {small_core} does not have exactly two legs away from {owner}"
        )));
    };
    let leaf = |x: VertexId| tree.degree(x) == 1;
    match (leaf(first), leaf(second)) {
        (true, true) | (false, true) => Ok((first, second)),
        (true, false) => Ok((second, first)),
        (false, false) => Err(TopologyError::InternalInvariantViolation(format!(
            "small core {small_core} has no short leg"
        ))),
    }
}

fn modified_leg(
    tree: &WeightedTree,
    owner: VertexId,
    root: VertexId,
    small_core: VertexId,
) -> Result<GLeg, TopologyError> {
    let mut vertices = vec![root];
    let mut positions = vec![1u32];
    let mut parents = vec![owner];
    let mut head = 0;
    let mut core_at = None;
    while head < vertices.len() {
        let (x, p, d) = (vertices[head], parents[head], positions[head]);
        if x == small_core {
            core_at = Some(head);
        }
        head += 1;
        for &y in tree.neighbors(x) {
            if y != p {
                vertices.push(y);
                positions.push(d + 1);
                parents.push(x);
            }
        }
    }
    let core_at = core_at.ok_or_else(|| {
        TopologyError::InternalInvariantViolation(format!(
            "small core {small_core} not found below {owner}->{root}"
        ))
    })?;
    let (ell_a, ell_b) = ells(tree, owner, small_core, parents[core_at])?;
    let core_position = positions[core_at];
    Ok(GLeg {
        owner,
        root,
        kind: LegKind::Modified,
        vertices,
        positions,
        modified: Some(ModifiedInfo {
            small_core,
            core_position,
            ell_a,
            ell_b,
        }),
    })
}
