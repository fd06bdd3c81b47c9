//! Exhaustive variant over a global selection vector, for small instances.
//!
//! Every realization considered is `U(x0, s)`: the reflectors are built once
//! from the starting realization `x0`, and vertex `l` receives the reflectors
//! of every `k <= l` with `s_k = 1`, the highest index applied first.

use std::collections::BTreeSet;

use crate::geometry::{relative_residual, HyperplaneReflector, Realization};
use crate::instance::{
    classify_edges, local_symmetry_vertices, order_pruning_edges, preceding_edges, DmdgpInstance,
    Edge,
};

use super::SbbuError;

/// Largest `n - K` accepted by [`sbbu_conceptual_solve`].
pub const MAX_CONCEPTUAL_FREE: usize = 20;

#[derive(Debug, Clone)]
pub struct ConceptualSolution {
    pub realization: Realization,
    /// Selection bits for vertices `K+1..=n`, index 0 is vertex `K+1`.
    pub selection: Vec<bool>,
}

fn reflectors_of(x0: &Realization) -> Result<Vec<HyperplaneReflector>, SbbuError> {
    let k = x0.dim();
    (k + 1..=x0.len())
        .map(|l| {
            HyperplaneReflector::from_flat(k, x0.span(l - k, l - 1))
                .map_err(|source| SbbuError::Geometry { vertex: l, source })
        })
        .collect()
}

fn position(
    x0: &Realization,
    reflectors: &[HyperplaneReflector],
    selection: &[bool],
    v: usize,
    out: &mut [f64],
) {
    let k = x0.dim();
    out.copy_from_slice(x0.point(v));
    if v <= k {
        return;
    }
    for l in (k + 1..=v).rev() {
        if selection[l - k - 1] {
            reflectors[l - k - 1].reflect_in_place(out);
        }
    }
}

/// `U(x0, s)`. `selection[l - K - 1]` is the bit of vertex `l`.
pub fn apply_reflection_vector(
    x0: &Realization,
    selection: &[bool],
) -> Result<Realization, SbbuError> {
    let k = x0.dim();
    let free = x0.len().saturating_sub(k);
    if selection.len() != free {
        return Err(SbbuError::TooLarge {
            free: selection.len(),
            limit: free,
        });
    }
    let reflectors = reflectors_of(x0)?;
    let mut out = Realization::with_capacity(k, x0.len());
    let mut buf = vec![0.0; k];
    for v in 1..=x0.len() {
        position(x0, &reflectors, selection, v, &mut buf);
        out.push(&buf);
    }
    Ok(out)
}

/// Solves `instance` starting from `x0`, which must satisfy every
/// discretization distance.
pub fn sbbu_conceptual_solve(
    instance: &DmdgpInstance,
    x0: &Realization,
    tolerance: f64,
) -> Result<ConceptualSolution, SbbuError> {
    instance.require_valid()?;
    let k = instance.dim();
    let n = instance.n();
    let free = n - k;
    if free > MAX_CONCEPTUAL_FREE {
        return Err(SbbuError::TooLarge {
            free,
            limit: MAX_CONCEPTUAL_FREE,
        });
    }
    if x0.dim() != k || x0.len() != n {
        return Err(SbbuError::TooLarge {
            free: x0.len().saturating_sub(x0.dim()),
            limit: free,
        });
    }
    let partition = classify_edges(instance);
    for &e in &partition.discretization {
        let d = instance.distance(e.i, e.j).ok_or(SbbuError::MissingDistance(e))?;
        let residual = relative_residual(x0.distance(e.i, e.j), d);
        if residual > tolerance {
            return Err(SbbuError::NotPossibleRealization { edge: e, residual });
        }
    }

    let reflectors = reflectors_of(x0)?;
    let order = order_pruning_edges(&partition);
    let mut s = vec![false; free];
    let mut xi = vec![0.0; k];
    let mut xj = vec![0.0; k];
    for &e in order.edges() {
        let Edge { i, j } = e;
        let d = instance.distance(i, j).ok_or(SbbuError::MissingDistance(e))?;
        let preceding = preceding_edges(&order, e)?;
        let local: BTreeSet<usize> = local_symmetry_vertices(instance, e, preceding);
        if local.is_empty() {
            continue;
        }
        let vars: Vec<usize> = local.into_iter().collect();
        let m = vars.len();
        let mut best: Option<(f64, u64)> = None;
        let base = s.clone();
        for mask in 0u64..(1 << m) {
            let mut trial = base.clone();
            for (p, &l) in vars.iter().enumerate() {
                trial[l - k - 1] = mask & (1 << p) != 0;
            }
            position(x0, &reflectors, &trial, i, &mut xi);
            position(x0, &reflectors, &trial, j, &mut xj);
            let r = relative_residual(crate::geometry::distance(&xi, &xj), d);
            if best.is_none_or(|(b, _)| r < b) {
                best = Some((r, mask));
            }
        }
        let (r, mask) = best.expect("at least one candidate");
        if r > tolerance {
            return Err(SbbuError::Failure {
                edge: e,
                best_residual: r,
                symmetry_count: m,
            });
        }
        for (p, &l) in vars.iter().enumerate() {
            s[l - k - 1] = mask & (1 << p) != 0;
        }
    }
    let realization = apply_reflection_vector(x0, &s)?;
    Ok(ConceptualSolution {
        realization,
        selection: s,
    })
}
