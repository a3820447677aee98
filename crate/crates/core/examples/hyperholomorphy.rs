// The first-order system for the slice parts, Fueter's theorem
// `D_l Δf = 0`, and closure of the regular class under products.

use quatreg::regularity::{hyperholomorphy_residuals, slice_parts};
use quatreg::{catalog_get, Operators, QFunction, Quaternion, Result};

pub fn run_example() -> Result<()> {
    let ops = Operators::jets();
    let p = Quaternion::new(0.3, 0.7, 0.9, -0.5);
    let product = catalog_get("arctan_ex:1")?.times(&QFunction::power(2));
    let functions = [
        catalog_get("arctan_ex:1")?,
        catalog_get("arctan_ex:3")?,
        catalog_get("power:4")?,
        product,
        catalog_get("conj")?,
    ];
    for f in &functions {
        let (first, second) = hyperholomorphy_residuals(&ops, f, p)?;
        let parts = slice_parts(&ops, f, p)?;
        println!(
            "{:>26}: eq1 {:.1e}  eq2 {:.1e}  |D_l Laplacian f| {:.1e}  |Im u|, |Im v| = {:.1e}, {:.1e}",
            f.id(),
            first.norm(),
            second.norm(),
            ops.fueter_laplacian(f, p)?.norm(),
            parts.u.imag_norm(),
            parts.v.imag_norm(),
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
