// Truncated Taylor jets in four variables: exact derivatives of quaternion
// expressions up to order three, compared with finite differences.

use quatreg::jet::MultiIndex;
use quatreg::{Chart, Operators, QFunction, QJet, Quaternion, Result};

pub fn run_example() -> Result<()> {
    let p = Quaternion::new(0.3, 0.8, -0.4, 1.1);

    // seed the identity jet x ↦ x at p and form p³ + p⁻¹ directly
    let x = QJet::seed_cartesian(p, 3)?;
    let cube = x.try_mul(&x)?.try_mul(&x)?;
    let g = cube.try_add(&x.inv()?)?;
    println!("g(p) = {}", g.value());
    for (name, var) in [("t", 0), ("x", 1), ("y", 2), ("z", 3)] {
        println!("dg/d{name} = {}", g.d(var)?);
    }
    let mixed: MultiIndex = [1, 1, 0, 1];
    println!("d3g/dt dx dz = {}", g.partial(mixed)?);

    // the same expansion through the catalog, on both backends
    let f = QFunction::power(3);
    let jets = Operators::jets().expand(&f, p, Chart::Cartesian, 2)?;
    let fd = Operators::finite_difference().expand(&f, p, Chart::Cartesian, 2)?;
    for m in [[1, 0, 0, 0], [0, 2, 0, 0], [0, 1, 1, 0]] {
        let (a, b) = (jets.partial(m)?, fd.partial(m)?);
        println!("d^{m:?} p^3: jets {a}, fd gap {:.1e}", (a - b).norm());
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
