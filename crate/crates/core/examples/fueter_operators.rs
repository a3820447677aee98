// The left-Fueter operator in Cartesian and spherical form, the Cullen
// operator and the angular operator on a few catalog functions.

use quatreg::{catalog_get, Error, Operators, Quaternion, Result};

pub fn run_example() -> Result<()> {
    let ops = Operators::jets();
    let p = Quaternion::new(0.4, 0.9, -0.6, 0.7);
    println!("p = {p}");
    for id in ["power:2", "power:-1", "iota", "arctan_ex:1", "conj"] {
        let f = catalog_get(id)?;
        let cart = ops.fueter_left(&f, p)?;
        let sph = ops.fueter_left_spherical(&f, p)?;
        println!(
            "{id:>12}: D_l f = {cart}  |spherical - cartesian| = {:.1e}  |cullen| = {:.1e}  |angular| = {:.3}",
            (cart - sph).norm(),
            ops.cullen_left(&f, p)?.norm(),
            ops.angular_derivative(&f, p)?.norm(),
        );
    }

    // the spherical form needs sin β > 0: on the x3 axis it is undefined
    let f = catalog_get("power:2")?;
    match ops.fueter_left_spherical(&f, Quaternion::new(1.0, 0.0, 0.0, 1.0)) {
        Err(e @ Error::DegenerateChart { .. }) => println!("at 1 + k: {e}"),
        other => println!("at 1 + k: unexpected {other:?}"),
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
