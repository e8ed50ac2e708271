//! Text tree files and JSON result documents.
//!
//! A tree file holds the vertex count, then `n` cost tokens (integers or
//! `p/q`, possibly spread over several lines), then `n - 1` edge lines
//! `u v` with 0-based ids. Lines starting with `#` are comments.
//!
//! ```text
//! # star K_{1,3}
//! 4
//! 1 1 1 1
//! 0 1
//! 0 2
//! 0 3
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::{Cost, CostParseError};
use crate::legs::SolutionType;
use crate::solver::LandmarkResult;
use crate::topology::{CaseTag, LegKind};
use crate::tree::{TreeError, WeightedTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing vertex count")]
    MissingCount,
    #[error("line {line}: expected a vertex count, found {found:?}")]
    BadCount { line: usize, found: String },
    #[error("line {line}: cost {token:?}: {source}")]
    BadCost {
        line: usize,
        token: String,
        source: CostParseError,
    },
    #[error("expected {n} costs, found {got} before end of input")]
    MissingCosts { n: usize, got: usize },
    #[error("line {line}: expected {n} costs, found extra token {token:?}")]
    ExtraCost { line: usize, n: usize, token: String },
    #[error("line {line}: an edge line holds two vertex ids, found {got} tokens")]
    EdgeArity { line: usize, got: usize },
    #[error("line {line}: bad vertex id {token:?}")]
    BadId { line: usize, token: String },
    #[error("line {line}: expected {expected} edges (n - 1), found more")]
    TooManyEdges { line: usize, expected: usize },
    #[error("expected {expected} edges (n - 1), found {got}")]
    TooFewEdges { expected: usize, got: usize },
    #[error("line {line}: {source}")]
    Tree { line: usize, source: TreeError },
}

impl ParseError {
    /// 1-based line the error refers to, when there is one.
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::BadCount { line, .. }
            | ParseError::BadCost { line, .. }
            | ParseError::ExtraCost { line, .. }
            | ParseError::EdgeArity { line, .. }
            | ParseError::BadId { line, .. }
            | ParseError::TooManyEdges { line, .. }
            | ParseError::Tree { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// Parses a tree file.
pub fn parse_tree(text: &str) -> Result<WeightedTree, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (count_line, first) = lines.next().ok_or(ParseError::MissingCount)?;
    let mut head = first.split_whitespace();
    let n: usize = match (head.next(), head.next()) {
        (Some(tok), None) => tok.parse().map_err(|_| ParseError::BadCount {
            line: count_line,
            found: first.to_string(),
        })?,
        _ => {
            return Err(ParseError::BadCount {
                line: count_line,
                found: first.to_string(),
            })
        }
    };

    let mut costs = Vec::with_capacity(n);
    while costs.len() < n {
        let (line, text) = lines.next().ok_or(ParseError::MissingCosts {
            n,
            got: costs.len(),
        })?;
        for token in text.split_whitespace() {
            if costs.len() == n {
                return Err(ParseError::ExtraCost {
                    line,
                    n,
                    token: token.to_string(),
                });
            }
            let c: Cost = token.parse().map_err(|source| ParseError::BadCost {
                line,
                token: token.to_string(),
                source,
            })?;
            costs.push(c);
        }
    }

    let expected = n.saturating_sub(1);
    let mut edges = Vec::with_capacity(expected);
    let mut edge_lines = Vec::with_capacity(expected);
    for (line, text) in lines {
        if edges.len() == expected {
            return Err(ParseError::TooManyEdges { line, expected });
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(ParseError::EdgeArity {
                line,
                got: tokens.len(),
            });
        }
        let id = |t: &str| {
            t.parse::<usize>().map_err(|_| ParseError::BadId {
                line,
                token: t.to_string(),
            })
        };
        edges.push((id(tokens[0])?, id(tokens[1])?));
        edge_lines.push(line);
    }
    if edges.len() != expected {
        return Err(ParseError::TooFewEdges {
            expected,
            got: edges.len(),
        });
    }

    WeightedTree::new(n, &edges, costs).map_err(|source| {
        let line = match &source {
            TreeError::SelfLoop { edge, .. }
            | TreeError::Cycle { edge, .. }
            | TreeError::IndexOutOfRange { edge, .. } => edge_lines[*edge],
            _ => count_line,
        };
        ParseError::Tree { line, source }
    })
}

/// Canonical text form: count line, one cost line, edges sorted with the
/// smaller endpoint first.
pub fn emit_tree(tree: &WeightedTree) -> String {
    let mut out = String::with_capacity(16 * tree.len() + 16);
    writeln!(out, "{}", tree.len()).unwrap();
    for (i, c) in tree.costs().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{c}").unwrap();
    }
    out.push('\n');
    for (u, v) in tree.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegDocument {
    pub root: u32,
    pub kind: LegKind,
    pub solution_type: SolutionType,
    pub vertices: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreDocument {
    pub core: u32,
    pub legs: Vec<LegDocument>,
}

/// Machine-readable solver output. `cost` is the exact reduced rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub n: usize,
    pub case_tag: CaseTag,
    pub landmarks: Vec<u32>,
    pub cost: String,
    pub per_core: Vec<CoreDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub added_core_vertex: Option<u32>,
}

impl ResultDocument {
    pub fn new(tree: &WeightedTree, result: &LandmarkResult) -> Self {
        let per_core = result
            .explanation
            .iter()
            .map(|a| CoreDocument {
                core: a.core.0,
                legs: a
                    .legs
                    .iter()
                    .map(|l| {
                        let mut vertices: Vec<u32> = l.vertices.iter().map(|v| v.0).collect();
                        vertices.sort_unstable();
                        LegDocument {
                            root: l.root.0,
                            kind: l.kind,
                            solution_type: l.solution_type,
                            vertices,
                        }
                    })
                    .collect(),
            })
            .collect();
        ResultDocument {
            n: tree.len(),
            case_tag: result.case_tag,
            landmarks: result.landmarks.iter().map(|v| v.0).collect(),
            cost: result.cost.to_string(),
            per_core,
            added_core_vertex: result.added_core_vertex.map(|v| v.0),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}
