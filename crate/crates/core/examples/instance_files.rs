//! Write an instance and its realization as text, read them back and check.

use dmdgp::genio::{generate_synthetic, read_instance, read_realization, write_instance, write_realization};
use dmdgp::mde;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = generate_synthetic(8, 2, 2.5, 1)?;
    let text = write_instance(&s.instance);
    print!("{text}");

    let inst = read_instance(&text)?;
    assert_eq!(inst, s.instance);
    let x = read_realization(&write_realization(&s.ground_truth))?;
    println!("# round trip ok, mde {:.1e}", mde(&x, &inst)?);

    match read_instance("DMDGP 2 4\nWEIGHTS 1\n") {
        Err(e) => println!("# rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
