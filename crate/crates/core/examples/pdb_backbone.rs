//! Protein backbone to instance, then back to coordinates.
//!
//! `cargo run --example pdb_backbone -- path/to/file.pdb [cutoff]`

use std::fs;

use dmdgp::genio::{build_instance, parse_pdb};
use dmdgp::mde;
use dmdgp::sbbu::{sbbu_solve, SbbuOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/1A8O.pdb").into());
    let cutoff: f64 = args.next().map(|c| c.parse()).transpose()?.unwrap_or(6.0);

    let structure = parse_pdb(&fs::read_to_string(&path)?)?;
    let built = build_instance(&structure, cutoff)?;
    let inst = &built.instance;
    println!("{path}: {} backbone atoms, |E|={}", inst.n(), inst.edge_count());
    for w in &built.warnings {
        println!("  near-degenerate window {:?} ({:.2e})", w.vertices, w.scaled);
    }

    let sol = sbbu_solve(inst, &SbbuOptions::default())?;
    println!("mde {:.3e}, W={}, {:?}", mde(&sol.realization, inst)?, sol.work.total(), sol.wall_time);
    Ok(())
}
