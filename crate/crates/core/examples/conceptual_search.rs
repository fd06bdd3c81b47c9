//! Exhaustive search over global reflection selections, starting from a
//! realization that satisfies only the discretization distances.

use dmdgp::bp::{bp_solve, BpLimits};
use dmdgp::genio::generate_synthetic;
use dmdgp::instance::DmdgpInstance;
use dmdgp::mde;
use dmdgp::sbbu::sbbu_conceptual_solve;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = generate_synthetic(16, 2, 2.5, 11)?.instance;
    let chain = DmdgpInstance::new(
        inst.n(),
        inst.dim(),
        inst.edges().filter(|(e, _)| e.span() <= inst.dim()).map(|(e, d)| ((e.i, e.j), d)),
    )?;
    let x0 = bp_solve(&chain, 1e-6, BpLimits::none())?.realization;
    println!("start: mde {:.2e} on the full instance", mde(&x0, &inst)?);

    let sol = sbbu_conceptual_solve(&inst, &x0, 1e-4)?;
    let flips: Vec<usize> = sol
        .selection
        .iter()
        .enumerate()
        .filter(|&(_, &b)| b)
        .map(|(p, _)| p + inst.dim() + 1)
        .collect();
    println!("flipped at {flips:?}: mde {:.2e}", mde(&sol.realization, &inst)?);
    Ok(())
}
