//! Instance model: a weighted graph over vertices `1..=n` in DMDGP order,
//! edge classification, the pruning-edge order and the symmetry-vertex sets
//! derived from the graph alone.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::geometry::{self, GeometryError, Realization, MAX_DIM};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error("dimension must be in 1..={MAX_DIM}, got {0}")]
    Dimension(usize),
    #[error("need more vertices than the dimension (n = {n}, K = {k})")]
    TooFewVertices { n: usize, k: usize },
    #[error("edge {edge} has an endpoint outside 1..={n}")]
    VertexOutOfRange { edge: Edge, n: usize },
    #[error("self loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge {edge} has invalid distance {distance}")]
    Distance { edge: Edge, distance: f64 },
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("edge {0} is not in the pruning order")]
    NotInOrder(Edge),
    #[error("instance violates the DMDGP structure: {0}")]
    Invalid(ValidationReport),
}

/// Unordered vertex pair, stored with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
}

impl Edge {
    /// Normalises the endpoint order. Panics on a self loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self loop");
        Edge {
            i: a.min(b),
            j: a.max(b),
        }
    }

    pub fn span(&self) -> usize {
        self.j - self.i
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.i, self.j)
    }
}

impl From<Edge> for (usize, usize) {
    fn from(e: Edge) -> Self {
        (e.i, e.j)
    }
}

impl From<(usize, usize)> for Edge {
    fn from((a, b): (usize, usize)) -> Self {
        Edge::new(a, b)
    }
}

/// A weighted graph over `1..=n` together with the embedding dimension K.
#[derive(Debug, Clone, PartialEq)]
pub struct DmdgpInstance {
    n: usize,
    dim: usize,
    edges: BTreeMap<Edge, f64>,
    /// Pruning edges `{i, j}` grouped by `j`.
    pruning_into: Vec<Vec<(usize, f64)>>,
}

impl DmdgpInstance {
    pub fn new<I, E>(n: usize, dim: usize, edges: I) -> Result<Self, InstanceError>
    where
        I: IntoIterator<Item = (E, f64)>,
        E: Into<(usize, usize)>,
    {
        if dim == 0 || dim > MAX_DIM {
            return Err(InstanceError::Dimension(dim));
        }
        if n <= dim {
            return Err(InstanceError::TooFewVertices { n, k: dim });
        }
        let mut map = BTreeMap::new();
        for (e, d) in edges {
            let (a, b) = e.into();
            if a == b {
                return Err(InstanceError::SelfLoop(a));
            }
            let edge = Edge::new(a, b);
            if edge.i == 0 || edge.j > n {
                return Err(InstanceError::VertexOutOfRange { edge, n });
            }
            if !(d.is_finite() && d > 0.0) {
                return Err(InstanceError::Distance { edge, distance: d });
            }
            if map.insert(edge, d).is_some() {
                return Err(InstanceError::DuplicateEdge(edge));
            }
        }
        let mut pruning_into = vec![Vec::new(); n + 1];
        for (e, &d) in &map {
            if e.span() > dim {
                pruning_into[e.j].push((e.i, d));
            }
        }
        Ok(DmdgpInstance {
            n,
            dim,
            edges: map,
            pruning_into,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn distance(&self, a: usize, b: usize) -> Option<f64> {
        if a == b {
            return None;
        }
        self.edges.get(&Edge::new(a, b)).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, f64)> + '_ {
        self.edges.iter().map(|(e, d)| (*e, *d))
    }

    /// Pruning edges `{i, j}` ending at `j`, as `(i, d_ij)`.
    pub fn pruning_into(&self, j: usize) -> &[(usize, f64)] {
        &self.pruning_into[j]
    }

    /// Pruning edges by increasing `j`, ties by decreasing `i`.
    pub fn pruning_in_order(&self) -> impl Iterator<Item = (Edge, f64)> + '_ {
        self.pruning_into.iter().enumerate().flat_map(|(j, into)| {
            into.iter().rev().map(move |&(i, d)| (Edge { i, j }, d))
        })
    }

    pub fn is_pruning(&self, e: Edge) -> bool {
        e.span() > self.dim
    }

    pub fn pruning_count(&self) -> usize {
        self.pruning_into.iter().map(Vec::len).sum()
    }

    /// Distances from `v` to its K immediate predecessors: entry `m` is
    /// `d(v - K + m, v)`. Missing entries are NaN.
    pub fn predecessor_radii(&self, v: usize) -> [f64; MAX_DIM] {
        let mut out = [f64::NAN; MAX_DIM];
        for m in 0..self.dim {
            if let Some(u) = (v + m).checked_sub(self.dim) {
                if u >= 1 {
                    out[m] = self.distance(u, v).unwrap_or(f64::NAN);
                }
            }
        }
        out
    }

    /// Canonical placement of vertices `1..=K` from the clique distances.
    pub fn place_root(&self, tolerance: f64) -> Result<Realization, GeometryError> {
        geometry::place_root_clique(
            self.dim,
            |a, b| self.distance(a + 1, b + 1).unwrap_or(f64::NAN),
            tolerance,
        )
    }

    /// Checks the structural conditions and converts a non-empty report into
    /// an error.
    pub fn require_valid(&self) -> Result<(), InstanceError> {
        let report = validate_dmdgp(self);
        if report.is_valid() {
            Ok(())
        } else {
            Err(InstanceError::Invalid(report))
        }
    }
}

/// Discretization edges (`|i - j| <= K`) and pruning edges (the rest).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgePartition {
    pub discretization: BTreeSet<Edge>,
    pub pruning: BTreeSet<Edge>,
}

pub fn classify_edges(instance: &DmdgpInstance) -> EdgePartition {
    let mut out = EdgePartition::default();
    for (e, _) in instance.edges() {
        if instance.is_pruning(e) {
            out.pruning.insert(e);
        } else {
            out.discretization.insert(e);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleViolation {
    pub vertices: [usize; 3],
    /// Amount by which the longest side exceeds the sum of the other two.
    pub excess: f64,
}

/// Structural defects found by [`validate_dmdgp`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub missing: Vec<Edge>,
    pub triangle_violations: Vec<TriangleViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.missing.is_empty() && self.triangle_violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        if !self.missing.is_empty() {
            write!(f, "missing discretization edges:")?;
            for e in self.missing.iter().take(10) {
                write!(f, " {e}")?;
            }
            if self.missing.len() > 10 {
                write!(f, " (+{} more)", self.missing.len() - 10)?;
            }
        }
        if !self.triangle_violations.is_empty() {
            if !self.missing.is_empty() {
                write!(f, "; ")?;
            }
            write!(f, "triangle inequality violated on")?;
            for t in self.triangle_violations.iter().take(10) {
                let [a, b, c] = t.vertices;
                write!(f, " ({a},{b},{c})")?;
            }
        }
        Ok(())
    }
}

/// Reports missing discretization edges and triangle-inequality violations
/// inside every window of K+1 consecutive vertices.
pub fn validate_dmdgp(instance: &DmdgpInstance) -> ValidationReport {
    let n = instance.n();
    let k = instance.dim();
    let mut report = ValidationReport::default();
    for j in 2..=n {
        for i in j.saturating_sub(k).max(1)..j {
            if instance.distance(i, j).is_none() {
                report.missing.push(Edge::new(i, j));
            }
        }
    }
    let mut seen = BTreeSet::new();
    for start in 1..=n.saturating_sub(k) {
        let window: Vec<usize> = (start..=start + k).collect();
        for (x, &a) in window.iter().enumerate() {
            for (y, &b) in window.iter().enumerate().skip(x + 1) {
                for &c in &window[y + 1..] {
                    if !seen.insert([a, b, c]) {
                        continue;
                    }
                    let (Some(ab), Some(ac), Some(bc)) = (
                        instance.distance(a, b),
                        instance.distance(a, c),
                        instance.distance(b, c),
                    ) else {
                        continue;
                    };
                    let longest = ab.max(ac).max(bc);
                    let excess = 2.0 * longest - (ab + ac + bc);
                    if excess > 1e-9 * longest.max(1.0) {
                        report.triangle_violations.push(TriangleViolation {
                            vertices: [a, b, c],
                            excess,
                        });
                    }
                }
            }
        }
    }
    report
}

/// Pruning edges sorted by increasing `j`, ties by decreasing `i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PruningOrder {
    edges: Vec<Edge>,
}

impl PruningOrder {
    pub fn from_edges<I: IntoIterator<Item = Edge>>(edges: I) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_by(|a, b| a.j.cmp(&b.j).then(b.i.cmp(&a.i)));
        edges.dedup();
        PruningOrder { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn position(&self, e: Edge) -> Option<usize> {
        self.edges
            .binary_search_by(|probe| probe.j.cmp(&e.j).then(e.i.cmp(&probe.i)))
            .ok()
    }
}

pub fn order_pruning_edges(partition: &EdgePartition) -> PruningOrder {
    PruningOrder::from_edges(partition.pruning.iter().copied())
}

/// The set of pruning edges strictly before `e` in `order`.
pub fn preceding_edges(order: &PruningOrder, e: Edge) -> Result<&[Edge], InstanceError> {
    let pos = order.position(e).ok_or(InstanceError::NotInOrder(e))?;
    Ok(&order.edges[..pos])
}

/// Marks every vertex `l` with `u + K < l <= w` for some `{u, w}` in `edges`,
/// restricted to `lo..=hi`. Returns the unmarked vertices.
fn uncovered(k: usize, lo: usize, hi: usize, edges: impl Iterator<Item = Edge>) -> Vec<usize> {
    if lo > hi {
        return Vec::new();
    }
    let mut delta = vec![0i64; hi - lo + 2];
    for e in edges {
        let first = (e.i + k + 1).max(lo);
        let last = e.j.min(hi);
        if first > last {
            continue;
        }
        delta[first - lo] += 1;
        delta[last - lo + 1] -= 1;
    }
    let mut out = Vec::new();
    let mut depth = 0;
    for l in lo..=hi {
        depth += delta[l - lo];
        if depth == 0 {
            out.push(l);
        }
    }
    out
}

/// Symmetry vertices: those `v_l` (`l > K`) not covered by any edge, where
/// `{i, j}` covers `i + K < l <= j`.
pub fn symmetry_vertices(instance: &DmdgpInstance) -> BTreeSet<usize> {
    let k = instance.dim();
    uncovered(k, k + 1, instance.n(), instance.edges().map(|(e, _)| e))
        .into_iter()
        .collect()
}

/// Local symmetry vertices of the subproblem spanned by `e` given the edges
/// processed before it.
pub fn local_symmetry_vertices(
    instance: &DmdgpInstance,
    e: Edge,
    preceding: &[Edge],
) -> BTreeSet<usize> {
    let k = instance.dim();
    uncovered(k, e.i + k + 1, e.j, preceding.iter().copied())
        .into_iter()
        .collect()
}
