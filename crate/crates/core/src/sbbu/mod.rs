//! Symmetry-based build-up.
//!
//! The solver grows a partial realization vertex by vertex, always taking the
//! `minus` lateration root, and corrects it one pruning edge at a time. For
//! an edge `{i, j}` only the endpoint `x_j` is moved while searching: every
//! composition of the reflectors attached to the local symmetry vertices is
//! applied to it, and the composition that best matches `d_ij` is then
//! applied to the whole tail `x_{i+K+1}..x_t`.
//!
//! Pruning edges are processed by increasing `j`, ties by decreasing `i`. A
//! [`ComponentPartition`] over `K+1..=n` records which vertex ranges have been
//! pinned down by earlier edges; the first vertex of every other component
//! inside `(i+K, j]` is a local symmetry vertex, and an edge whose range lies
//! in a single component is already satisfied.

mod conceptual;
mod partition;

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::geometry::{
    self, relative_residual, GeometryError, HyperplaneReflector, Realization, MAX_DIM,
};
use crate::instance::{DmdgpInstance, Edge, InstanceError};

pub use conceptual::{
    apply_reflection_vector, sbbu_conceptual_solve, ConceptualSolution, MAX_CONCEPTUAL_FREE,
};
pub use partition::{ComponentId, ComponentPartition, PartitionError};

pub const DEFAULT_TOLERANCE: f64 = 1e-4;

/// Subproblems with more local symmetry vertices than this are refused.
pub const DEFAULT_MAX_LOCAL_SYMMETRY: usize = 32;

/// Candidates whose residuals differ by less than this count as tied.
const TIE_EPSILON: f64 = 1e-14;

#[derive(Debug, Error)]
pub enum SbbuError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("geometry failure at vertex {vertex}: {source}")]
    Geometry {
        vertex: usize,
        #[source]
        source: GeometryError,
    },
    #[error("discretization distance {0} is missing")]
    MissingDistance(Edge),
    #[error("no reflection composition satisfies {edge}: best residual {best_residual:e} over {symmetry_count} symmetry vertices")]
    Failure {
        edge: Edge,
        best_residual: f64,
        symmetry_count: usize,
    },
    #[error("edge {edge} was skipped as implied but has residual {residual:e}")]
    SkipViolation { edge: Edge, residual: f64 },
    #[error("edge {edge} has {count} local symmetry vertices (limit {limit})")]
    TooManySymmetryVertices {
        edge: Edge,
        count: usize,
        limit: usize,
    },
    #[error("edge {edge} needs positions up to {} but only {t} are initialized", edge.j)]
    NotInitialized { edge: Edge, t: usize },
    #[error("edge {0} is already implied by the partition")]
    AlreadyImplied(Edge),
    #[error("initial realization violates discretization edge {edge} (residual {residual:e})")]
    NotPossibleRealization { edge: Edge, residual: f64 },
    #[error("exhaustive search over {free} free vertices exceeds the limit of {limit}")]
    TooLarge { free: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SbbuOptions {
    /// Relative distance tolerance, `|d' - d| <= tolerance * max(1, d)`.
    pub tolerance: f64,
    pub max_local_symmetry: usize,
}

impl Default for SbbuOptions {
    fn default() -> Self {
        SbbuOptions {
            tolerance: DEFAULT_TOLERANCE,
            max_local_symmetry: DEFAULT_MAX_LOCAL_SYMMETRY,
        }
    }
}

impl SbbuOptions {
    pub fn with_tolerance(tolerance: f64) -> Self {
        SbbuOptions {
            tolerance,
            ..Self::default()
        }
    }
}

/// What happened to one pruning edge.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeTrace {
    pub edge: Edge,
    /// The edge's range already lay in one component; nothing was searched.
    pub skipped: bool,
    /// Local symmetry vertices, ascending. Empty for skipped edges.
    pub symmetry_vertices: Vec<usize>,
    pub candidates_tested: u64,
    /// Residual of the chosen candidate, or of the current realization when
    /// the edge was skipped.
    pub best_residual: f64,
    /// Smallest residual among the candidates that were not chosen.
    pub runner_up_residual: Option<f64>,
}

impl EdgeTrace {
    pub fn symmetry_count(&self) -> usize {
        self.symmetry_vertices.len()
    }
}

/// Work spent on explicitly solved subproblems: `2^|S^ij|` per edge.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WorkAccounting {
    per_edge: Vec<(Edge, usize)>,
    total: u128,
    max: u128,
}

impl WorkAccounting {
    pub fn record(&mut self, edge: Edge, symmetry_count: usize) {
        if symmetry_count == 0 {
            return;
        }
        let w = 1u128 << symmetry_count;
        self.per_edge.push((edge, symmetry_count));
        self.total += w;
        self.max = self.max.max(w);
    }

    /// `W`: sum of `2^|S^ij|` over edges with `|S^ij| > 0`.
    pub fn total(&self) -> u128 {
        self.total
    }

    /// `W̄`: the largest single term of `W`.
    pub fn max(&self) -> u128 {
        self.max
    }

    pub fn per_edge(&self) -> &[(Edge, usize)] {
        &self.per_edge
    }
}

/// Partial realization `x_1..x_t` together with the partition and the
/// accounting gathered so far.
#[derive(Debug, Clone)]
pub struct SolverState {
    x: Realization,
    t: usize,
    partition: ComponentPartition,
    work: WorkAccounting,
    trace: Vec<EdgeTrace>,
}

impl SolverState {
    pub fn new(instance: &DmdgpInstance) -> Self {
        SolverState {
            x: Realization::with_capacity(instance.dim(), instance.n()),
            t: 0,
            partition: ComponentPartition::new(instance.dim(), instance.n()),
            work: WorkAccounting::default(),
            trace: Vec::new(),
        }
    }

    pub fn realization(&self) -> &Realization {
        &self.x
    }

    /// Index of the last initialized position.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn partition(&self) -> &ComponentPartition {
        &self.partition
    }

    pub fn partition_mut(&mut self) -> &mut ComponentPartition {
        &mut self.partition
    }

    pub fn work(&self) -> &WorkAccounting {
        &self.work
    }

    pub fn trace(&self) -> &[EdgeTrace] {
        &self.trace
    }
}

#[derive(Debug, Clone)]
pub struct SbbuSolution {
    pub realization: Realization,
    pub work: WorkAccounting,
    pub trace: Vec<EdgeTrace>,
    pub wall_time: Duration,
}

/// Grows `x_{t+1}..x_j` from discretization distances, taking the `minus`
/// root each time. Positions already placed are left untouched.
pub fn initialize_positions(
    state: &mut SolverState,
    instance: &DmdgpInstance,
    j: usize,
    tolerance: f64,
) -> Result<(), SbbuError> {
    let k = instance.dim();
    let j = j.min(instance.n());
    if state.t >= j {
        return Ok(());
    }
    if state.t == 0 {
        for b in 2..=k {
            for a in 1..b {
                if instance.distance(a, b).is_none() {
                    return Err(SbbuError::MissingDistance(Edge::new(a, b)));
                }
            }
        }
        let root = instance
            .place_root(tolerance)
            .map_err(|source| SbbuError::Geometry { vertex: k, source })?;
        state.x = root;
        state.t = k;
    }
    let mut plus = [0.0; MAX_DIM];
    let mut minus = [0.0; MAX_DIM];
    for v in state.t + 1..=j {
        let radii = instance.predecessor_radii(v);
        if let Some(m) = radii[..k].iter().position(|r| r.is_nan()) {
            return Err(SbbuError::MissingDistance(Edge::new(v - k + m, v)));
        }
        geometry::laterate_flat(
            k,
            state.x.span(v - k, v - 1),
            &radii[..k],
            tolerance,
            &mut plus[..k],
            &mut minus[..k],
        )
        .map_err(|source| SbbuError::Geometry { vertex: v, source })?;
        state.x.push(&minus[..k]);
        state.t = v;
    }
    Ok(())
}

/// Lexicographic comparison of selection vectors, position 0 most
/// significant.
fn lex_less(a: u64, b: u64, len: usize) -> bool {
    for p in 0..len {
        let (x, y) = ((a >> p) & 1, (b >> p) & 1);
        if x != y {
            return x < y;
        }
    }
    false
}

/// Solves the subproblem spanned by pruning edge `e`, which must not yet be
/// implied by the partition, and records it in the state's trace.
pub fn solve_subproblem(
    state: &mut SolverState,
    instance: &DmdgpInstance,
    e: Edge,
    options: &SbbuOptions,
) -> Result<EdgeTrace, SbbuError> {
    let k = instance.dim();
    let Edge { i, j } = e;
    let d = instance
        .distance(i, j)
        .ok_or(SbbuError::MissingDistance(e))?;
    if j > state.t {
        return Err(SbbuError::NotInitialized { edge: e, t: state.t });
    }
    let c0 = state.partition.find(i + k)?;
    if c0 == state.partition.find(j)? {
        return Err(SbbuError::AlreadyImplied(e));
    }
    let mut symmetry = Vec::new();
    for c in state.partition.components_in(i + k + 1, j)? {
        if c != c0 {
            symmetry.push(state.partition.first(c)?);
        }
    }
    let m = symmetry.len();
    if m > options.max_local_symmetry || m >= 64 {
        return Err(SbbuError::TooManySymmetryVertices {
            edge: e,
            count: m,
            limit: options.max_local_symmetry.min(63),
        });
    }

    let reflectors = symmetry
        .iter()
        .map(|&l| {
            HyperplaneReflector::from_flat(k, state.x.span(l - k, l - 1))
                .map_err(|source| SbbuError::Geometry { vertex: l, source })
        })
        .collect::<Result<Vec<_>, _>>()?;

    // levels[p] = R_p^{s_p}(levels[p + 1]), levels[m] = x_j; reflector 0 is
    // the outermost. Gray-code order flips the outer reflectors most often,
    // so each step recomputes only the levels above the flipped bit.
    let xi: [f64; MAX_DIM] = {
        let mut a = [0.0; MAX_DIM];
        a[..k].copy_from_slice(state.x.point(i));
        a
    };
    let mut levels = vec![[0.0; MAX_DIM]; m + 1];
    for level in levels.iter_mut() {
        level[..k].copy_from_slice(state.x.point(j));
    }
    let residual_of =
        |y: &[f64; MAX_DIM]| relative_residual(geometry::distance(&xi[..k], &y[..k]), d);

    let mut mask: u64 = 0;
    let mut best = residual_of(&levels[0]);
    let mut best_mask = 0u64;
    let mut runner_up: Option<f64> = None;
    let mut ties = 0usize;
    let total: u64 = 1 << m;
    for g in 1..total {
        let bit = g.trailing_zeros() as usize;
        mask ^= 1 << bit;
        for p in (0..=bit).rev() {
            let (lower, upper) = levels.split_at_mut(p + 1);
            let dst = &mut lower[p];
            *dst = upper[0];
            if mask & (1 << p) != 0 {
                reflectors[p].reflect_in_place(&mut dst[..k]);
            }
        }
        let r = residual_of(&levels[0]);
        if (r - best).abs() <= TIE_EPSILON {
            ties += 1;
            if lex_less(mask, best_mask, m) {
                runner_up = Some(runner_up.map_or(best, |u| u.min(best)));
                best_mask = mask;
                best = r;
            } else {
                runner_up = Some(runner_up.map_or(r, |u| u.min(r)));
            }
        } else if r < best {
            runner_up = Some(runner_up.map_or(best, |u| u.min(best)));
            best = r;
            best_mask = mask;
        } else {
            runner_up = Some(runner_up.map_or(r, |u| u.min(r)));
        }
    }
    if best > options.tolerance {
        return Err(SbbuError::Failure {
            edge: e,
            best_residual: best,
            symmetry_count: m,
        });
    }
    if ties > 0 && runner_up.is_some_and(|u| (u - best).abs() <= TIE_EPSILON) {
        log::warn!(
            "edge {e}: {} candidates tie at residual {best:e}; taking the lexicographically smallest",
            ties + 1
        );
    }

    // Apply the chosen composition to the tail; vertex l receives the
    // reflectors whose symmetry vertex is at most l, innermost first.
    let mut applicable = 0;
    for l in i + k + 1..=state.t {
        while applicable < m && symmetry[applicable] <= l {
            applicable += 1;
        }
        let xl = state.x.point_mut(l);
        for p in (0..applicable).rev() {
            if best_mask & (1 << p) != 0 {
                reflectors[p].reflect_in_place(xl);
            }
        }
    }

    state.partition.merge_edge(e)?;
    state.work.record(e, m);
    let trace = EdgeTrace {
        edge: e,
        skipped: false,
        symmetry_vertices: symmetry,
        candidates_tested: total,
        best_residual: best,
        runner_up_residual: runner_up,
    };
    state.trace.push(trace.clone());
    Ok(trace)
}

/// Runs the build-up on a whole instance.
pub fn sbbu_solve(instance: &DmdgpInstance, options: &SbbuOptions) -> Result<SbbuSolution, SbbuError> {
    let started = Instant::now();
    instance.require_valid()?;
    let k = instance.dim();
    let tol = options.tolerance;
    let mut state = SolverState::new(instance);
    initialize_positions(&mut state, instance, k, tol)?;
    for (e, d) in instance.pruning_in_order() {
        let Edge { i, j } = e;
        if state.partition.same(i + k, j)? {
            let residual = relative_residual(state.x.distance(i, j), d);
            if residual > tol {
                return Err(SbbuError::SkipViolation { edge: e, residual });
            }
            state.trace.push(EdgeTrace {
                edge: e,
                skipped: true,
                symmetry_vertices: Vec::new(),
                candidates_tested: 0,
                best_residual: residual,
                runner_up_residual: None,
            });
            continue;
        }
        initialize_positions(&mut state, instance, j, tol)?;
        solve_subproblem(&mut state, instance, e, options)?;
    }
    initialize_positions(&mut state, instance, instance.n(), tol)?;
    Ok(SbbuSolution {
        realization: state.x,
        work: state.work,
        trace: state.trace,
        wall_time: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planar(n: usize, extra: &[(usize, usize)]) -> DmdgpInstance {
        let mut pts = Vec::new();
        for v in 0..n {
            let t = v as f64;
            pts.push([t * 0.9 + 0.13 * (t * 1.7).sin(), (t * 2.3).cos() * 1.1 + 0.05 * t]);
        }
        let x = Realization::from_points(2, &pts).unwrap();
        let mut edges = Vec::new();
        for j in 2..=n {
            for i in j.saturating_sub(2).max(1)..j {
                edges.push(((i, j), x.distance(i, j)));
            }
        }
        for &(i, j) in extra {
            edges.push(((i, j), x.distance(i, j)));
        }
        DmdgpInstance::new(n, 2, edges).unwrap()
    }

    #[test]
    fn lexicographic_order() {
        // position 0 is most significant
        assert!(lex_less(0b10, 0b01, 2));
        assert!(!lex_less(0b01, 0b10, 2));
        assert!(!lex_less(0b11, 0b11, 2));
    }

    #[test]
    fn work_accounting() {
        let mut w = WorkAccounting::default();
        w.record(Edge::new(1, 5), 2);
        w.record(Edge::new(2, 9), 0);
        w.record(Edge::new(3, 9), 3);
        assert_eq!(w.total(), 12);
        assert_eq!(w.max(), 8);
        assert_eq!(w.per_edge().len(), 2);
    }

    #[test]
    fn growth_only_initialization() {
        let inst = planar(10, &[]);
        let mut state = SolverState::new(&inst);
        initialize_positions(&mut state, &inst, 5, 1e-9).unwrap();
        let before = state.realization().clone();
        initialize_positions(&mut state, &inst, 10, 1e-9).unwrap();
        assert_eq!(state.t(), 10);
        assert_eq!(state.realization().span(1, 5), before.as_flat());
        initialize_positions(&mut state, &inst, 3, 1e-9).unwrap();
        assert_eq!(state.t(), 10);
    }

    #[test]
    fn single_symmetry_vertex_tests_two_candidates() {
        let inst = planar(6, &[(1, 4)]);
        let sol = sbbu_solve(&inst, &SbbuOptions::with_tolerance(1e-9)).unwrap();
        let t = &sol.trace[0];
        assert_eq!(t.symmetry_vertices, vec![4]);
        assert_eq!(t.candidates_tested, 2);
        assert!(t.best_residual <= 1e-9);
        assert!(t.runner_up_residual.unwrap() > 1e-3);
        assert!((sol.realization.distance(1, 4) - inst.distance(1, 4).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn solving_an_implied_edge_is_refused() {
        let inst = planar(8, &[(1, 8), (2, 8)]);
        let mut state = SolverState::new(&inst);
        initialize_positions(&mut state, &inst, 8, 1e-9).unwrap();
        solve_subproblem(&mut state, &inst, Edge::new(2, 8), &SbbuOptions::default()).unwrap();
        solve_subproblem(&mut state, &inst, Edge::new(1, 8), &SbbuOptions::default()).unwrap();
        let err = solve_subproblem(&mut state, &inst, Edge::new(1, 8), &SbbuOptions::default())
            .unwrap_err();
        assert!(matches!(err, SbbuError::AlreadyImplied(_)));
    }

    #[test]
    fn uninitialized_endpoint_is_refused() {
        let inst = planar(8, &[(1, 8)]);
        let mut state = SolverState::new(&inst);
        initialize_positions(&mut state, &inst, 5, 1e-9).unwrap();
        let err = solve_subproblem(&mut state, &inst, Edge::new(1, 8), &SbbuOptions::default())
            .unwrap_err();
        assert!(matches!(err, SbbuError::NotInitialized { t: 5, .. }));
    }

    #[test]
    fn local_symmetry_limit() {
        let inst = planar(12, &[(1, 12)]);
        let opts = SbbuOptions {
            tolerance: 1e-6,
            max_local_symmetry: 4,
        };
        assert!(matches!(
            sbbu_solve(&inst, &opts),
            Err(SbbuError::TooManySymmetryVertices { count: 9, .. })
        ));
    }
}
