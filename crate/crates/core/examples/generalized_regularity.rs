// The integral characterization of regularity: a function passes when
// the theorem holds for both `f` and `ι f` on every surface of a family.

use quatreg::integral::{generalized_regularity_test, standard_family};
use quatreg::{catalog_get, Operators, Result};

pub fn run_example() -> Result<()> {
    let ops = Operators::jets();
    let family = standard_family(10)?;
    for k in &family {
        println!("surface {k}  (distance to real axis {:.2})", k.min_axis_distance());
    }
    for id in ["power:-1", "power:3", "iota", "arctan_ex:3", "conj", "coord:x"] {
        let verdict = generalized_regularity_test(&ops, &catalog_get(id)?, &family, 1e-3)?;
        println!(
            "{id:>12}: pass = {:<5} worst relative residual {:.1e}",
            verdict.pass,
            verdict.worst_relative()
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
