//! Depth-first Branch-and-Prune over the binary tree of lateration choices.
//!
//! The search keeps an explicit stack, one frame per placed vertex, so depth
//! is bounded by memory rather than the call stack. At every branch the `plus`
//! root is tried before the `minus` root.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::geometry::{self, relative_residual, GeometryError, Realization, MAX_DIM};
use crate::instance::{DmdgpInstance, InstanceError};

pub const DEFAULT_TOLERANCE: f64 = 1e-4;

/// Tolerance used to merge distance values and compare enumerated solutions.
pub const DEDUP_TOLERANCE: f64 = 1e-7;

/// Exhaustive searches refuse instances with more free vertices than this.
pub const MAX_ENUMERATION_FREE: usize = 24;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BpLimits {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl BpLimits {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn time(limit: Duration) -> Self {
        BpLimits {
            time_limit: Some(limit),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BpStats {
    /// Candidate positions accepted into the current path.
    pub nodes_expanded: u64,
    /// Candidate positions rejected by a pruning edge.
    pub prunes: u64,
    pub solutions_found: u64,
    pub wall_time: Duration,
}

#[derive(Debug, Error)]
pub enum BpError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("degenerate geometry at vertex {vertex}: {source}")]
    Degenerate {
        vertex: usize,
        #[source]
        source: GeometryError,
    },
    #[error("search budget exhausted after {} nodes ({:.3} s)", stats.nodes_expanded, stats.wall_time.as_secs_f64())]
    Timeout { stats: BpStats },
    #[error("no realization satisfies every pruning edge ({} nodes explored)", stats.nodes_expanded)]
    NoSolution { stats: BpStats },
    #[error("exhaustive search over {free} free vertices exceeds the limit of {limit}")]
    TooLarge { free: usize, limit: usize },
    #[error("vertex pair ({i}, {j}) is not a valid query for an instance with n = {n}")]
    BadPair { i: usize, j: usize, n: usize },
}

#[derive(Debug, Clone)]
pub struct BpSolution {
    pub realization: Realization,
    pub stats: BpStats,
}

#[derive(Debug, Clone)]
pub struct BpEnumeration {
    pub realizations: Vec<Realization>,
    pub stats: BpStats,
}

#[derive(Clone, Copy)]
struct Frame {
    plus: [f64; MAX_DIM],
    minus: [f64; MAX_DIM],
    /// 0: plus next, 1: minus next, 2: exhausted.
    next: u8,
}

enum Flow {
    Continue,
    Stop,
}

struct Search<'a> {
    instance: &'a DmdgpInstance,
    tolerance: f64,
    prune: bool,
    last: usize,
    limits: BpLimits,
    started: Instant,
    x: Realization,
    stats: BpStats,
}

impl<'a> Search<'a> {
    fn new(
        instance: &'a DmdgpInstance,
        tolerance: f64,
        prune: bool,
        last: usize,
        limits: BpLimits,
    ) -> Result<Self, BpError> {
        let started = Instant::now();
        instance.require_valid()?;
        let k = instance.dim();
        let root = instance
            .place_root(tolerance)
            .map_err(|source| BpError::Degenerate { vertex: k, source })?;
        let mut x = Realization::zeros(k, last);
        for v in 1..=k {
            x.point_mut(v).copy_from_slice(root.point(v));
        }
        Ok(Search {
            instance,
            tolerance,
            prune,
            last,
            limits,
            started,
            x,
            stats: BpStats::default(),
        })
    }

    /// Lateration frame for vertex `v`, or `None` when the spheres miss.
    fn frame_for(&self, v: usize) -> Result<Option<Frame>, BpError> {
        let k = self.instance.dim();
        let radii = self.instance.predecessor_radii(v);
        let mut f = Frame {
            plus: [0.0; MAX_DIM],
            minus: [0.0; MAX_DIM],
            next: 0,
        };
        match geometry::laterate_flat(
            k,
            self.x.span(v - k, v - 1),
            &radii[..k],
            self.tolerance,
            &mut f.plus[..k],
            &mut f.minus[..k],
        ) {
            Ok(tangent) => {
                if tangent {
                    // Both roots coincide; explore one branch only.
                    f.next = 1;
                }
                Ok(Some(f))
            }
            Err(GeometryError::Infeasible { .. }) => Ok(None),
            Err(source) => Err(BpError::Degenerate { vertex: v, source }),
        }
    }

    fn feasible(&self, v: usize) -> bool {
        if !self.prune {
            return true;
        }
        let xv = self.x.point(v);
        self.instance.pruning_into(v).iter().all(|&(h, d)| {
            relative_residual(geometry::distance(self.x.point(h), xv), d) <= self.tolerance
        })
    }

    fn over_budget(&self) -> bool {
        if let Some(max) = self.limits.max_nodes {
            if self.stats.nodes_expanded >= max {
                return true;
            }
        }
        if let Some(limit) = self.limits.time_limit {
            if self.started.elapsed() >= limit {
                return true;
            }
        }
        false
    }

    fn run(&mut self, mut on_leaf: impl FnMut(&Realization) -> Flow) -> Result<(), BpError> {
        let k = self.instance.dim();
        let mut stack: Vec<Frame> = Vec::with_capacity(self.last - k);
        let mut ticks: u32 = 0;
        if let Some(f) = self.frame_for(k + 1)? {
            stack.push(f);
        } else {
            self.stats.prunes += 1;
        }
        while !stack.is_empty() {
            let v = k + stack.len();
            let top = stack.last_mut().expect("non-empty stack");
            let cand = match top.next {
                0 => {
                    top.next = 1;
                    top.plus
                }
                1 => {
                    top.next = 2;
                    top.minus
                }
                _ => {
                    stack.pop();
                    continue;
                }
            };
            ticks = ticks.wrapping_add(1);
            if ticks.is_multiple_of(256) && self.over_budget() {
                self.stats.wall_time = self.started.elapsed();
                return Err(BpError::Timeout {
                    stats: self.stats.clone(),
                });
            }
            self.x.point_mut(v).copy_from_slice(&cand[..k]);
            if !self.feasible(v) {
                self.stats.prunes += 1;
                continue;
            }
            self.stats.nodes_expanded += 1;
            if v == self.last {
                self.stats.solutions_found += 1;
                if let Flow::Stop = on_leaf(&self.x) {
                    return Ok(());
                }
                continue;
            }
            match self.frame_for(v + 1)? {
                Some(f) => stack.push(f),
                None => self.stats.prunes += 1,
            }
        }
        Ok(())
    }

    fn finish(mut self) -> BpStats {
        self.stats.wall_time = self.started.elapsed();
        self.stats
    }
}

/// First realization found by depth-first Branch-and-Prune.
pub fn bp_solve(
    instance: &DmdgpInstance,
    tolerance: f64,
    limits: BpLimits,
) -> Result<BpSolution, BpError> {
    let mut search = Search::new(instance, tolerance, true, instance.n(), limits)?;
    let mut found = None;
    search.run(|x| {
        found = Some(x.clone());
        Flow::Stop
    })?;
    let stats = search.finish();
    match found {
        Some(realization) => Ok(BpSolution { realization, stats }),
        None => Err(BpError::NoSolution { stats }),
    }
}

/// Every leaf of the tree that satisfies all pruning edges.
pub fn enumerate_all_solutions(
    instance: &DmdgpInstance,
    tolerance: f64,
) -> Result<BpEnumeration, BpError> {
    let free = instance.n() - instance.dim();
    if free > MAX_ENUMERATION_FREE {
        return Err(BpError::TooLarge {
            free,
            limit: MAX_ENUMERATION_FREE,
        });
    }
    let mut search = Search::new(instance, tolerance, true, instance.n(), BpLimits::none())?;
    let mut realizations = Vec::new();
    search.run(|x| {
        realizations.push(x.clone());
        Flow::Continue
    })?;
    Ok(BpEnumeration {
        realizations,
        stats: search.finish(),
    })
}

/// Distinct values of `|x_j - x_i|` over all realizations that satisfy the
/// discretization edges, merged at [`DEDUP_TOLERANCE`] relative.
///
/// Only vertices up to `j` are enumerated; `max_free` bounds `j - K`.
pub fn distance_value_set(
    instance: &DmdgpInstance,
    i: usize,
    j: usize,
    max_free: usize,
) -> Result<Vec<f64>, BpError> {
    let n = instance.n();
    let k = instance.dim();
    if i == 0 || i >= j || j > n || j <= k {
        return Err(BpError::BadPair { i, j, n });
    }
    let free = j - k;
    if free > max_free {
        return Err(BpError::TooLarge {
            free,
            limit: max_free,
        });
    }
    let mut search = Search::new(instance, DEFAULT_TOLERANCE, false, j, BpLimits::none())?;
    let mut values = Vec::new();
    search.run(|x| {
        values.push(x.distance(i, j));
        Flow::Continue
    })?;
    Ok(dedup_relative(values, DEDUP_TOLERANCE))
}

/// Sorts and merges values closer than `tol` relative to the larger one.
pub fn dedup_relative(mut values: Vec<f64>, tol: f64) -> Vec<f64> {
    values.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(values.len());
    for v in values {
        match out.last() {
            Some(&last) if v - last <= tol * v.abs().max(last.abs()) => {}
            _ => out.push(v),
        }
    }
    out
}
