//! Solution types on g-legs and the local-set conditions that tie them together.
//!
//! A standard leg's share of a landmark set is one of
//!
//! * `S0`: nothing,
//! * `S1`: a single vertex at position two or more,
//! * `S2`: two or more vertices,
//! * `S3`: exactly the position-one vertex.
//!
//! A modified leg whose small core sits at position `i` has two vertices at
//! position `i + 1` (`ell_a`, `ell_b`) and its share is one of
//!
//! * `M1`: exactly `{ell_a}` or `{ell_b}`,
//! * `M2`: neither of them, but at least two vertices at position `i + 2` or more,
//! * `M3`: two or more vertices including `ell_a` or `ell_b`.
//!
//! Anything else on a modified leg is `Invalid`; a landmark set never induces it.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::Cost;
use crate::topology::{GLeg, LegKind};
use crate::tree::{VertexId, WeightedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionType {
    S0,
    S1,
    S2,
    S3,
    M1,
    M2,
    M3,
    Invalid,
}

impl SolutionType {
    pub const STANDARD: [SolutionType; 4] = [
        SolutionType::S0,
        SolutionType::S1,
        SolutionType::S2,
        SolutionType::S3,
    ];
    pub const MODIFIED: [SolutionType; 3] = [SolutionType::M1, SolutionType::M2, SolutionType::M3];

    pub fn as_str(self) -> &'static str {
        match self {
            SolutionType::S0 => "s0",
            SolutionType::S1 => "s1",
            SolutionType::S2 => "s2",
            SolutionType::S3 => "s3",
            SolutionType::M1 => "m1",
            SolutionType::M2 => "m2",
            SolutionType::M3 => "m3",
            SolutionType::Invalid => "invalid",
        }
    }

    /// Types whose thrifty form has exactly two vertices.
    pub fn is_pair_type(self) -> bool {
        matches!(self, SolutionType::S2 | SolutionType::M2 | SolutionType::M3)
    }
}

impl fmt::Display for SolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LegError {
    #[error("vertex {vertex} is not on the leg rooted at {root}")]
    VertexNotOnLeg { vertex: VertexId, root: VertexId },
}

/// The part of a vertex set that falls on one leg, with its type and cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedLegSolution {
    pub root: VertexId,
    pub kind: LegKind,
    pub vertices: Vec<VertexId>,
    pub solution_type: SolutionType,
    pub cost: Cost,
}

/// One solution per g-leg of `core`, in the core's leg order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSetAssignment {
    pub core: VertexId,
    pub legs: Vec<TypedLegSolution>,
}

impl LocalSetAssignment {
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.legs.iter().flat_map(|l| l.vertices.iter().copied())
    }

    pub fn vertex_count(&self) -> usize {
        self.legs.iter().map(|l| l.vertices.len()).sum()
    }

    pub fn cost(&self) -> Cost {
        self.legs.iter().map(|l| l.cost).sum()
    }

    pub fn kinds_and_types(&self) -> Vec<(LegKind, SolutionType)> {
        self.legs.iter().map(|l| (l.kind, l.solution_type)).collect()
    }
}

/// Summary of a vertex set restricted to one leg; enough to decide its type.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct LegStats {
    pub count: u32,
    pub has_first: bool,
    pub has_ell: bool,
    pub beyond: u32,
}

impl LegStats {
    #[inline]
    pub(crate) fn add(&mut self, position: u32, is_ell: bool, core_position: Option<u32>) {
        self.count += 1;
        self.has_first |= position == 1;
        self.has_ell |= is_ell;
        if let Some(i) = core_position {
            if position >= i + 2 {
                self.beyond += 1;
            }
        }
    }

    pub(crate) fn solution_type(&self, kind: LegKind) -> SolutionType {
        match kind {
            LegKind::ShortStandard | LegKind::LongStandard => match self.count {
                0 => SolutionType::S0,
                1 if self.has_first => SolutionType::S3,
                1 => SolutionType::S1,
                _ => SolutionType::S2,
            },
            LegKind::Modified => {
                if self.has_ell {
                    if self.count == 1 {
                        SolutionType::M1
                    } else {
                        SolutionType::M3
                    }
                } else if self.beyond >= 2 {
                    SolutionType::M2
                } else {
                    SolutionType::Invalid
                }
            }
        }
    }
}

/// Types the vertices of `subset` lying on `leg`. Every vertex of `subset`
/// must belong to the leg.
pub fn type_of_solution(leg: &GLeg, subset: &[VertexId]) -> Result<SolutionType, LegError> {
    let positions = leg.position_map();
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    let core_position = leg.modified.map(|m| m.core_position);
    let ell = leg.ell_pair();
    let mut stats = LegStats::default();
    for v in subset {
        let &p = positions.get(&v).ok_or(LegError::VertexNotOnLeg {
            vertex: v,
            root: leg.root,
        })?;
        let is_ell = ell.is_some_and(|(a, b)| v == a || v == b);
        stats.add(p, is_ell, core_position);
    }
    Ok(stats.solution_type(leg.kind))
}

/// A minimum-cost representative of one solution type. Holds at most two
/// vertices, sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    slots: [VertexId; 2],
    len: u8,
    pub cost: Cost,
}

impl Candidate {
    fn new(vertices: &[VertexId], cost: Cost) -> Self {
        let mut slots = [VertexId(0); 2];
        slots[..vertices.len()].copy_from_slice(vertices);
        if vertices.len() == 2 && slots[1] < slots[0] {
            slots.swap(0, 1);
        }
        Candidate {
            slots,
            len: vertices.len() as u8,
            cost,
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.slots[..usize::from(self.len)]
    }

    pub fn len(&self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Minimum-cost thrifty representatives of every type available on a leg.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegSolutionTable {
    pub root: VertexId,
    pub kind: LegKind,
    entries: [Option<(SolutionType, Candidate)>; 4],
}

impl LegSolutionTable {
    fn new(root: VertexId, kind: LegKind) -> Self {
        LegSolutionTable {
            root,
            kind,
            entries: [None; 4],
        }
    }

    fn push(&mut self, t: SolutionType, c: Candidate) {
        let slot = self.entries.iter_mut().find(|e| e.is_none()).expect("at most four types");
        *slot = Some((t, c));
    }

    pub fn get(&self, t: SolutionType) -> Option<&Candidate> {
        self.entries.iter().flatten().find(|(x, _)| *x == t).map(|(_, c)| c)
    }

    pub fn available(&self) -> impl Iterator<Item = SolutionType> + '_ {
        self.entries.iter().flatten().map(|(t, _)| *t)
    }

    /// Cheapest candidate among `types`; ties go to fewer vertices, then to
    /// the earlier type in `types`.
    pub fn cheapest_of(&self, types: &[SolutionType]) -> Option<(SolutionType, &Candidate)> {
        let mut best: Option<(SolutionType, &Candidate)> = None;
        for &t in types {
            if let Some(c) = self.get(t) {
                let better = match best {
                    None => true,
                    Some((_, b)) => (c.cost, c.len()) < (b.cost, b.len()),
                };
                if better {
                    best = Some((t, c));
                }
            }
        }
        best
    }

    pub fn typed(&self, t: SolutionType) -> Option<TypedLegSolution> {
        self.get(t).map(|c| TypedLegSolution {
            root: self.root,
            kind: self.kind,
            vertices: c.vertices().to_vec(),
            solution_type: t,
            cost: c.cost,
        })
    }
}

/// The two smallest items under `(cost, id)` order.
#[derive(Default)]
struct TwoCheapest {
    first: Option<(Cost, VertexId)>,
    second: Option<(Cost, VertexId)>,
}

impl TwoCheapest {
    fn push(&mut self, item: (Cost, VertexId)) {
        match self.first {
            None => self.first = Some(item),
            Some(f) if item < f => {
                self.second = self.first;
                self.first = Some(item);
            }
            _ => match self.second {
                Some(s) if s <= item => {}
                _ => self.second = Some(item),
            },
        }
    }

    fn single(&self) -> Option<Candidate> {
        self.first.map(|(c, v)| Candidate::new(&[v], c))
    }

    fn pair(&self) -> Option<Candidate> {
        let ((c1, v1), (c2, v2)) = (self.first?, self.second?);
        Some(Candidate::new(&[v1, v2], c1 + c2))
    }
}

/// Minimum-cost thrifty representatives per type, in one pass over the leg.
/// Cost ties are broken by the lower vertex id.
pub fn min_cost_solutions(leg: &GLeg, tree: &WeightedTree) -> LegSolutionTable {
    let mut table = LegSolutionTable::new(leg.root, leg.kind);
    match leg.modified {
        None => {
            table.push(SolutionType::S0, Candidate::new(&[], Cost::ZERO));
            let mut beyond_first = TwoCheapest::default();
            let mut all = TwoCheapest::default();
            for (v, p) in leg.iter() {
                let item = (tree.cost(v), v);
                all.push(item);
                if p >= 2 {
                    beyond_first.push(item);
                }
            }
            if let Some(c) = beyond_first.single() {
                table.push(SolutionType::S1, c);
            }
            if let Some(c) = all.pair() {
                table.push(SolutionType::S2, c);
            }
            table.push(SolutionType::S3, Candidate::new(&[leg.root], tree.cost(leg.root)));
        }
        Some(info) => {
            let (a, b) = (info.ell_a, info.ell_b);
            let ell = std::cmp::min((tree.cost(a), a), (tree.cost(b), b)).1;
            table.push(SolutionType::M1, Candidate::new(&[ell], tree.cost(ell)));
            let mut beyond = TwoCheapest::default();
            let mut others = TwoCheapest::default();
            for (v, p) in leg.iter() {
                let item = (tree.cost(v), v);
                if p >= info.core_position + 2 {
                    beyond.push(item);
                }
                if v != ell {
                    others.push(item);
                }
            }
            if let Some(c) = beyond.pair() {
                table.push(SolutionType::M2, c);
            }
            if let Some((c, v)) = others.first {
                table.push(SolutionType::M3, Candidate::new(&[ell, v], tree.cost(ell) + c));
            }
        }
    }
    table
}

/// The five local-set conditions, by number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    /// At most one standard leg is empty.
    AtMostOneEmptyStandard = 1,
    /// Every modified leg has type M1, M2 or M3.
    ModifiedTyped = 2,
    /// An empty standard leg forbids M1 on every modified leg.
    EmptyStandardForbidsM1 = 3,
    /// An empty long leg forces S2 on every other long leg.
    EmptyLongForcesS2 = 4,
    /// An empty short leg forces S2 or S3 on every long leg.
    EmptyShortForcesS2OrS3 = 5,
}

impl Condition {
    pub fn number(self) -> u8 {
        self as u8
    }
}

/// Result of checking a vertex set against one core's g-legs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSetReport {
    pub types: Vec<SolutionType>,
    pub violations: Vec<Condition>,
}

impl LocalSetReport {
    pub fn is_local_set(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Which conditions a per-leg typing violates; each is reported once.
pub fn violated_conditions(legs: &[(LegKind, SolutionType)]) -> Vec<Condition> {
    let mut out = Vec::new();
    let empty_standard: Vec<usize> = legs
        .iter()
        .enumerate()
        .filter(|(_, (k, t))| k.is_standard() && *t == SolutionType::S0)
        .map(|(i, _)| i)
        .collect();
    if empty_standard.len() > 1 {
        out.push(Condition::AtMostOneEmptyStandard);
    }
    if legs
        .iter()
        .any(|(k, t)| *k == LegKind::Modified && *t == SolutionType::Invalid)
    {
        out.push(Condition::ModifiedTyped);
    }
    if !empty_standard.is_empty() && legs.iter().any(|(_, t)| *t == SolutionType::M1) {
        out.push(Condition::EmptyStandardForbidsM1);
    }
    let cond4 = empty_standard.iter().any(|&e| {
        legs[e].0 == LegKind::LongStandard
            && legs.iter().enumerate().any(|(i, (k, t))| {
                i != e && *k == LegKind::LongStandard && *t != SolutionType::S2
            })
    });
    if cond4 {
        out.push(Condition::EmptyLongForcesS2);
    }
    let cond5 = empty_standard.iter().any(|&e| legs[e].0 == LegKind::ShortStandard)
        && legs.iter().any(|(k, t)| {
            *k == LegKind::LongStandard && !matches!(t, SolutionType::S2 | SolutionType::S3)
        });
    if cond5 {
        out.push(Condition::EmptyShortForcesS2OrS3);
    }
    out
}

/// Checks whether `subset`, restricted to `legs`, is a local set.
///
/// Vertices of `subset` that lie on none of the legs (the core itself, or
/// anything elsewhere in the tree) are ignored, so a whole landmark set can
/// be passed directly.
pub fn is_local_set(legs: &[GLeg], subset: &[VertexId]) -> LocalSetReport {
    let mut placement: HashMap<VertexId, (usize, u32)> = HashMap::new();
    for (i, leg) in legs.iter().enumerate() {
        for (v, p) in leg.iter() {
            placement.insert(v, (i, p));
        }
    }
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    let mut stats = vec![LegStats::default(); legs.len()];
    for v in subset {
        if let Some(&(i, p)) = placement.get(&v) {
            let leg = &legs[i];
            let is_ell = leg.ell_pair().is_some_and(|(a, b)| v == a || v == b);
            stats[i].add(p, is_ell, leg.modified.map(|m| m.core_position));
        }
    }
    let typed: Vec<(LegKind, SolutionType)> = legs
        .iter()
        .zip(&stats)
        .map(|(l, s)| (l.kind, s.solution_type(l.kind)))
        .collect();
    LocalSetReport {
        violations: violated_conditions(&typed),
        types: typed.into_iter().map(|(_, t)| t).collect(),
    }
}

/// Splits `subset` over the g-legs of a core into typed per-leg solutions.
pub fn assignment_for(
    tree: &WeightedTree,
    core: VertexId,
    legs: &[GLeg],
    subset: &[VertexId],
) -> LocalSetAssignment {
    let mut per_leg: Vec<Vec<VertexId>> = vec![Vec::new(); legs.len()];
    let mut placement: HashMap<VertexId, usize> = HashMap::new();
    for (i, leg) in legs.iter().enumerate() {
        for &v in &leg.vertices {
            placement.insert(v, i);
        }
    }
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    for v in subset {
        if let Some(&i) = placement.get(&v) {
            per_leg[i].push(v);
        }
    }
    let legs = legs
        .iter()
        .zip(per_leg)
        .map(|(leg, vertices)| TypedLegSolution {
            root: leg.root,
            kind: leg.kind,
            solution_type: type_of_solution(leg, &vertices).expect("vertices taken from the leg"),
            cost: tree.total_cost(&vertices),
            vertices,
        })
        .collect();
    LocalSetAssignment { core, legs }
}

/// True when every S2, M2 and M3 solution has exactly two vertices.
pub fn is_thrifty(assignment: &LocalSetAssignment) -> bool {
    assignment
        .legs
        .iter()
        .all(|l| !l.solution_type.is_pair_type() || l.vertices.len() == 2)
}
