//! Both solvers on the same instances, with wall times side by side.

use std::time::{Duration, Instant};

use dmdgp::bp::{bp_solve, BpLimits};
use dmdgp::genio::{generate_with, PruningPattern, SyntheticConfig};
use dmdgp::sbbu::{sbbu_solve, SbbuOptions};

/// Pruning edges `{u, u+K+1}` with a few holes, closed by `{1, n}`.
fn gapped(n: usize, k: usize, gaps: usize) -> Vec<(usize, usize)> {
    let holes: Vec<usize> = (1..=gaps).map(|g| k + 1 + g * (n - k - 1) / (gaps + 1)).collect();
    let mut pairs: Vec<_> = (1..n - k)
        .filter(|u| !holes.contains(&(u + k + 1)))
        .map(|u| (u, u + k + 1))
        .collect();
    pairs.push((1, n));
    pairs
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = BpLimits::time(Duration::from_secs(30));
    println!("{:>5} {:>5} {:>10} {:>10} {:>10}", "n", "gaps", "bp_s", "sbbu_s", "W");
    for (n, gaps) in [(200, 6), (500, 8), (1000, 10), (2000, 12)] {
        let cfg = SyntheticConfig::new(n, 3, PruningPattern::Explicit(gapped(n, 3, gaps)), n as u64);
        let inst = generate_with(&cfg)?.instance;

        let t = Instant::now();
        let bp = bp_solve(&inst, 1e-4, limits).map(|_| t.elapsed().as_secs_f64());
        let sbbu = sbbu_solve(&inst, &SbbuOptions::default())?;
        let bp = bp.map_or_else(|e| e.to_string(), |s| format!("{s:.4}"));
        println!(
            "{n:>5} {gaps:>5} {bp:>10} {:>10.4} {:>10}",
            sbbu.wall_time.as_secs_f64(),
            sbbu.work.total()
        );
    }
    Ok(())
}
