//! Every incongruent solution of a small instance, and the values a missing
//! distance can take.

use dmdgp::bp::{distance_value_set, enumerate_all_solutions};
use dmdgp::genio::{generate_with, PruningPattern, SyntheticConfig};
use dmdgp::instance::symmetry_vertices;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SyntheticConfig::new(10, 2, PruningPattern::Explicit(vec![(2, 6), (5, 10)]), 3);
    let inst = generate_with(&cfg)?.instance;
    println!("symmetry vertices {:?}", symmetry_vertices(&inst));

    let all = enumerate_all_solutions(&inst, 1e-7)?;
    println!("{} solutions, {} nodes", all.realizations.len(), all.stats.nodes_expanded);
    for x in &all.realizations {
        println!("  x10 = {:.4?}", x.point(10));
    }

    let values = distance_value_set(&inst, 1, 10, 20)?;
    println!(
        "d(1,10) takes {} values in [{:.4}, {:.4}]",
        values.len(),
        values[0],
        values[values.len() - 1]
    );
    Ok(())
}
