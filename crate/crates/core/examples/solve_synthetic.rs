//! Sample a random chain, solve it with SBBU and compare against the truth.

use dmdgp::genio::generate_synthetic;
use dmdgp::geometry::align_to_root_frame;
use dmdgp::mde;
use dmdgp::sbbu::{sbbu_solve, SbbuOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = generate_synthetic(500, 3, 5.0, 42)?;
    let inst = &s.instance;
    println!("n={} |E|={} pruning={}", inst.n(), inst.edge_count(), inst.pruning_count());

    let sol = sbbu_solve(inst, &SbbuOptions::default())?;
    println!("mde {:.3e} in {:?}", mde(&sol.realization, inst)?, sol.wall_time);

    // The solution is unique up to the global reflection fixed by the root frame.
    let truth = align_to_root_frame(&s.ground_truth)?;
    let found = align_to_root_frame(&sol.realization)?;
    let mirrored = dmdgp::geometry::mirror_last_axis(&found);
    let dev = found.max_deviation(&truth).min(mirrored.max_deviation(&truth));
    println!("max coordinate deviation from ground truth {dev:.3e}");
    Ok(())
}
