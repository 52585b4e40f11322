//! Edge-labelled graphs, kLSF instances, the component-count objective and
//! the plain-text instance format.
//!
//! The format is whitespace separated:
//!
//! ```text
//! # comment lines start with '#', blank lines are ignored
//! n m ell k_bar
//! u v label        (m lines, 0-based ids)
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::Read;

use crate::error::{Error, InstanceError, ParseError, Result};
use crate::label_set::LabelSet;
use crate::union_find::UnionFind;

/// An undirected edge carrying one label. Stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: usize,
}

/// Immutable edge-labelled undirected graph on vertices `0..n` and labels `0..ell`.
///
/// Edges are kept in canonical order: endpoints sorted within each edge,
/// then edges sorted by `(u, v, label)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    ell: usize,
    edges: Vec<Edge>,
    by_label: Vec<Vec<(u32, u32)>>,
    floor: usize,
}

impl LabeledGraph {
    /// Validates and builds a graph from `(u, v, label)` triples.
    pub fn new(
        n: usize,
        ell: usize,
        edges: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self, InstanceError> {
        if n == 0 {
            return Err(InstanceError::NoVertices);
        }
        if ell == 0 {
            return Err(InstanceError::NoLabels);
        }
        let mut seen = HashSet::new();
        let mut canonical = Vec::new();
        for (index, (u, v, label)) in edges.into_iter().enumerate() {
            if u == v {
                return Err(InstanceError::SelfLoop { index, vertex: u });
            }
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(InstanceError::VertexOutOfRange { index, vertex, n });
                }
            }
            if label >= ell {
                return Err(InstanceError::LabelOutOfRange { index, label, ell });
            }
            let edge = Edge {
                u: u.min(v),
                v: u.max(v),
                label,
            };
            if !seen.insert(edge) {
                return Err(InstanceError::DuplicateEdge { index, u, v, label });
            }
            canonical.push(edge);
        }
        canonical.sort_unstable();

        let mut by_label = vec![Vec::new(); ell];
        for e in &canonical {
            by_label[e.label].push((e.u as u32, e.v as u32));
        }
        let mut graph = LabeledGraph {
            n,
            ell,
            edges: canonical,
            by_label,
            floor: 0,
        };
        graph.floor = graph.components(&LabelSet::full(ell));
        Ok(graph)
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Label count.
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edges carrying `label`, as `(u, v)` pairs.
    pub fn edges_with_label(&self, label: usize) -> &[(u32, u32)] {
        &self.by_label[label]
    }

    /// Component count under the full label set: a lower bound on every
    /// solution and a certificate of optimality when reached.
    pub fn floor(&self) -> usize {
        self.floor
    }

    /// Union-find over all vertices with the edges of `labels` merged.
    pub fn union_find(&self, labels: &LabelSet) -> UnionFind {
        debug_assert_eq!(labels.width(), self.ell);
        let mut uf = UnionFind::new(self.n);
        for label in labels {
            self.merge_label(&mut uf, label);
        }
        uf
    }

    /// Merges the edges of `label` into `uf`.
    pub fn merge_label(&self, uf: &mut UnionFind, label: usize) {
        for &(u, v) in &self.by_label[label] {
            uf.union(u as usize, v as usize);
        }
    }

    /// Unchecked component count; callers guarantee the width.
    pub(crate) fn components(&self, labels: &LabelSet) -> usize {
        self.union_find(labels).count()
    }
}

/// Connected components of the spanning subgraph that keeps every vertex and
/// exactly the edges whose label is in `labels`.
pub fn count_components(graph: &LabeledGraph, labels: &LabelSet) -> Result<usize> {
    labels.check_width(graph.ell)?;
    Ok(graph.components(labels))
}

/// A graph paired with its label budget `k_bar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: LabeledGraph,
    k_bar: usize,
}

impl Instance {
    pub fn new(graph: LabeledGraph, k_bar: usize) -> Result<Self, InstanceError> {
        if k_bar == 0 || k_bar > graph.ell {
            return Err(InstanceError::BudgetOutOfRange {
                k_bar,
                ell: graph.ell,
            });
        }
        Ok(Instance { graph, k_bar })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn k_bar(&self) -> usize {
        self.k_bar
    }

    pub fn ell(&self) -> usize {
        self.graph.ell
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    /// Evaluates `labels` on this instance.
    pub fn evaluate(&self, labels: LabelSet) -> Result<Solution> {
        Solution::evaluate(&self.graph, labels)
    }

    pub fn is_feasible(&self, solution: &Solution) -> bool {
        solution.labels.width() == self.ell() && solution.labels.len() <= self.k_bar
    }
}

/// A label set together with its component count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    labels: LabelSet,
    components: usize,
}

impl Solution {
    pub fn evaluate(graph: &LabeledGraph, labels: LabelSet) -> Result<Self> {
        let components = count_components(graph, &labels)?;
        Ok(Solution { labels, components })
    }

    /// Builds a solution from an already-known component count.
    pub(crate) fn from_parts(labels: LabelSet, components: usize) -> Self {
        Solution { labels, components }
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn into_labels(self) -> LabelSet {
        self.labels
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// Ranking key: fewer components first, then fewer labels.
    pub fn key(&self) -> (usize, usize) {
        (self.components, self.labels.len())
    }

    /// Strict lexicographic improvement on `(components, label count)`.
    pub fn is_better_than(&self, other: &Solution) -> bool {
        self.key() < other.key()
    }
}

/// Reads an instance from any byte source.
pub fn read_instance<R: Read>(mut reader: R) -> Result<Instance, ParseError> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_instance(&text)
}

/// Parses the instance text format, validating every invariant.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let fields = parse_fields(header, 4).map_err(|reason| ParseError::MalformedHeader {
        line: header_line,
        reason,
    })?;
    let (n, m, ell, k_bar) = (fields[0], fields[1], fields[2], fields[3]);
    for (name, value) in [("n", n), ("ell", ell)] {
        if value == 0 {
            return Err(ParseError::MalformedHeader {
                line: header_line,
                reason: format!("{name} must be positive"),
            });
        }
    }
    if k_bar == 0 || k_bar > ell {
        return Err(ParseError::BudgetOutOfRange {
            line: header_line,
            k_bar,
            ell,
        });
    }

    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        let f =
            parse_fields(body, 3).map_err(|reason| ParseError::MalformedEdge { line, reason })?;
        let (u, v, label) = (f[0], f[1], f[2]);
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        for vertex in [u, v] {
            if vertex >= n {
                return Err(ParseError::VertexOutOfRange { line, vertex, n });
            }
        }
        if label >= ell {
            return Err(ParseError::LabelOutOfRange { line, label, ell });
        }
        if !seen.insert((u.min(v), u.max(v), label)) {
            return Err(ParseError::DuplicateEdge { line, u, v, label });
        }
        edges.push((u, v, label));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }

    // Every invariant was checked above with line numbers attached.
    let graph = LabeledGraph::new(n, ell, edges).expect("validated edges");
    Ok(Instance::new(graph, k_bar).expect("validated budget"))
}

fn parse_fields(line: &str, expected: usize) -> Result<Vec<usize>, String> {
    let fields = line
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| format!("`{tok}` is not a non-negative integer"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if fields.len() != expected {
        return Err(format!(
            "expected {expected} integers, found {}",
            fields.len()
        ));
    }
    Ok(fields)
}

/// Emits the canonical text form: one comment line, the header, then edges
/// in canonical order.
pub fn write_instance(instance: &Instance) -> String {
    let g = &instance.graph;
    let mut out = String::new();
    writeln!(out, "# kLSF instance").unwrap();
    writeln!(
        out,
        "{} {} {} {}",
        g.n,
        g.edges.len(),
        g.ell,
        instance.k_bar
    )
    .unwrap();
    for e in &g.edges {
        writeln!(out, "{} {} {}", e.u, e.v, e.label).unwrap();
    }
    out
}

impl std::str::FromStr for Instance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(parse_instance(s)?)
    }
}
