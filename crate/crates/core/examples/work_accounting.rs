//! Per-edge trace of the build-up: which subproblems were solved, how many
//! reflections each needed and how close the runner-up came.

use dmdgp::genio::generate_synthetic;
use dmdgp::sbbu::{sbbu_solve, SbbuOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = generate_synthetic(80, 2, 3.0, 5)?.instance;
    let sol = sbbu_solve(&inst, &SbbuOptions::default())?;

    let solved: Vec<_> = sol.trace.iter().filter(|t| !t.skipped).collect();
    println!("{} pruning edges, {} solved, {} implied", sol.trace.len(), solved.len(), sol.trace.len() - solved.len());
    println!("{:>9} {:>4} {:>6} {:>10} {:>10}", "edge", "|S|", "tried", "best", "runner-up");
    for t in solved {
        println!(
            "{:>9} {:>4} {:>6} {:>10.2e} {:>10}",
            t.edge.to_string(),
            t.symmetry_count(),
            t.candidates_tested,
            t.best_residual,
            t.runner_up_residual.map_or("-".into(), |r| format!("{r:.2e}"))
        );
    }
    println!("W={} W_bar={}", sol.work.total(), sol.work.max());
    Ok(())
}
