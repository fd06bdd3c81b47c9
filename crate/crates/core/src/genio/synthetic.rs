use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::geometry::{scaled_cm_flat, Realization, MAX_DIM};
use crate::instance::DmdgpInstance;

use super::GenioError;

/// How pruning edges are chosen once the chain is sampled.
#[derive(Debug, Clone, PartialEq)]
pub enum PruningPattern {
    /// Every pair with `|i - j| > K` closer than the cutoff.
    Cutoff(f64),
    /// Exactly these pairs, each with `|i - j| > K`.
    Explicit(Vec<(usize, usize)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    pub n: usize,
    pub dim: usize,
    pub pattern: PruningPattern,
    pub seed: u64,
    /// Bounds of the uniform step length between consecutive vertices.
    pub step: (f64, f64),
    /// Minimum scaled Cayley-Menger value of every window of consecutive
    /// points.
    pub min_volume: f64,
    /// Direction draws per vertex before giving up.
    pub max_attempts: usize,
}

impl SyntheticConfig {
    pub fn new(n: usize, dim: usize, pattern: PruningPattern, seed: u64) -> Self {
        SyntheticConfig {
            n,
            dim,
            pattern,
            seed,
            step: (1.0, 2.0),
            min_volume: 1e-6,
            max_attempts: 10_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticInstance {
    pub instance: DmdgpInstance,
    pub ground_truth: Realization,
}

pub fn generate_synthetic(
    n: usize,
    dim: usize,
    cutoff: f64,
    seed: u64,
) -> Result<SyntheticInstance, GenioError> {
    generate_with(&SyntheticConfig::new(
        n,
        dim,
        PruningPattern::Cutoff(cutoff),
        seed,
    ))
}

fn window_ok(dim: usize, x: &Realization, last: usize, min_volume: f64) -> bool {
    if last >= dim && scaled_cm_flat(dim, dim, x.span(last + 1 - dim, last)) <= min_volume {
        return false;
    }
    // keep the new point away from its predecessors' hyperplane as well
    if last > dim && scaled_cm_flat(dim, dim + 1, x.span(last - dim, last)) <= min_volume {
        return false;
    }
    true
}

pub fn generate_with(config: &SyntheticConfig) -> Result<SyntheticInstance, GenioError> {
    let SyntheticConfig { n, dim, .. } = *config;
    if dim == 0 || dim > MAX_DIM {
        return Err(GenioError::Config(format!("dimension {dim} outside 1..={MAX_DIM}")));
    }
    if n <= dim {
        return Err(GenioError::Config(format!("need n > K, got n={n}, K={dim}")));
    }
    let (lo, hi) = config.step;
    if !(lo > 0.0 && hi >= lo) {
        return Err(GenioError::Config(format!("bad step range [{lo}, {hi}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut x = Realization::with_capacity(dim, n);
    x.push(&[0.0; MAX_DIM][..dim]);
    let mut dir = [0.0; MAX_DIM];
    let mut p = [0.0; MAX_DIM];
    for v in 2..=n {
        let mut placed = false;
        for _ in 0..config.max_attempts {
            let norm = loop {
                for c in dir[..dim].iter_mut() {
                    *c = rng.sample(StandardNormal);
                }
                let norm = dir[..dim].iter().map(|c| c * c).sum::<f64>().sqrt();
                if norm > 1e-12 {
                    break norm;
                }
            };
            let len = if hi > lo { rng.random_range(lo..=hi) } else { lo };
            let prev = x.point(v - 1);
            for c in 0..dim {
                p[c] = prev[c] + len * dir[c] / norm;
            }
            x.push(&p[..dim]);
            if window_ok(dim, &x, v, config.min_volume) {
                placed = true;
                break;
            }
            x.truncate(v - 1);
        }
        if !placed {
            return Err(GenioError::Generation {
                vertex: v,
                attempts: config.max_attempts,
            });
        }
    }

    let mut edges = Vec::new();
    for j in 2..=n {
        for i in j.saturating_sub(dim).max(1)..j {
            edges.push(((i, j), x.distance(i, j)));
        }
    }
    match &config.pattern {
        PruningPattern::Cutoff(cutoff) => {
            if !(*cutoff >= 0.0) {
                return Err(GenioError::Config(format!("negative cutoff {cutoff}")));
            }
            for j in dim + 2..=n {
                for i in 1..j - dim {
                    let d = x.distance(i, j);
                    if d < *cutoff {
                        edges.push(((i, j), d));
                    }
                }
            }
        }
        PruningPattern::Explicit(pairs) => {
            for &(a, b) in pairs {
                if a.abs_diff(b) <= dim {
                    return Err(GenioError::Config(format!(
                        "pair ({a}, {b}) is not a pruning pair for K={dim}"
                    )));
                }
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(GenioError::Config(format!("pair ({a}, {b}) out of range")));
                }
                edges.push(((a, b), x.distance(a, b)));
            }
        }
    }
    let instance = DmdgpInstance::new(n, dim, edges)?;
    Ok(SyntheticInstance {
        instance,
        ground_truth: x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::validate_dmdgp;

    #[test]
    fn clique_only() {
        let s = generate_synthetic(4, 3, 100.0, 1).unwrap();
        assert_eq!(s.instance.pruning_count(), 0);
        assert_eq!(s.instance.edge_count(), 6);
    }

    #[test]
    fn deterministic() {
        let a = generate_synthetic(40, 3, 5.0, 9).unwrap();
        let b = generate_synthetic(40, 3, 5.0, 9).unwrap();
        assert_eq!(a.instance, b.instance);
        assert_eq!(a.ground_truth, b.ground_truth);
        let c = generate_synthetic(40, 3, 5.0, 10).unwrap();
        assert_ne!(a.instance, c.instance);
    }

    #[test]
    fn valid_with_exact_ground_truth() {
        for seed in 0..20 {
            let s = generate_synthetic(30, 2 + (seed as usize % 2), 4.0, seed).unwrap();
            assert!(validate_dmdgp(&s.instance).is_valid());
            for (e, d) in s.instance.edges() {
                assert!((s.ground_truth.distance(e.i, e.j) - d).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn step_lengths_in_range() {
        let s = generate_synthetic(50, 3, 0.0, 3).unwrap();
        for v in 2..=50 {
            let d = s.ground_truth.distance(v - 1, v);
            assert!((1.0..=2.0).contains(&d));
        }
        assert_eq!(s.instance.pruning_count(), 0);
    }

    #[test]
    fn explicit_pattern() {
        let cfg = SyntheticConfig::new(10, 2, PruningPattern::Explicit(vec![(1, 10), (2, 6)]), 4);
        let s = generate_with(&cfg).unwrap();
        assert_eq!(s.instance.pruning_count(), 2);
        let bad = SyntheticConfig::new(10, 2, PruningPattern::Explicit(vec![(1, 3)]), 4);
        assert!(matches!(generate_with(&bad), Err(GenioError::Config(_))));
    }

    #[test]
    fn exhausted_budget() {
        let mut cfg = SyntheticConfig::new(10, 3, PruningPattern::Cutoff(1.0), 4);
        cfg.min_volume = 10.0;
        cfg.max_attempts = 5;
        assert!(matches!(generate_with(&cfg), Err(GenioError::Generation { .. })));
    }
}
