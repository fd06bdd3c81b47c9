//! Flipping the tail of a chain across the plane of its K predecessors keeps
//! every discretization distance, and keeps pruning distances whose span
//! does not straddle the flip.

use dmdgp::genio::generate_synthetic;
use dmdgp::geometry::build_reflector;
use dmdgp::instance::symmetry_vertices;
use dmdgp::mde;
use dmdgp::sbbu::apply_reflection_vector;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, k) = (30, 3);
    let s = generate_synthetic(n, k, 4.0, 9)?;
    let inst = &s.instance;
    let x = &s.ground_truth;
    let free = symmetry_vertices(inst);
    println!("symmetry vertices {free:?}");

    for v in [k + 2, n / 2, n] {
        let plane: Vec<&[f64]> = (v - k..v).map(|u| x.point(u)).collect();
        let r = build_reflector(&plane)?;
        let mut y = x.clone();
        for u in v..=n {
            r.reflect_in_place(y.point_mut(u));
        }
        println!("flip at {v:>2}: allowed={:<5} mde {:.2e}", free.contains(&v), mde(&y, inst)?);
    }

    let every: Vec<bool> = (k + 1..=n).map(|v| free.contains(&v)).collect();
    let y = apply_reflection_vector(x, &every)?;
    println!("all allowed flips at once: mde {:.2e}", mde(&y, inst)?);
    Ok(())
}
