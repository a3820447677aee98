// The integral theorem on a sphere and an ellipsoid: the surface integral
// of `n f` against the volume integral of `-2 v / r`.

use quatreg::integral::{surface_integral_left, theorem2_residual, Hypersurface};
use quatreg::{catalog_get, Operators, QFunction, Quaternion, Result};

pub fn run_example() -> Result<()> {
    let ops = Operators::jets();
    let sphere: Hypersurface = "sphere:center=0+2i+0j+0k,r=1,res=16".parse()?;
    let ellipsoid = Hypersurface::ellipsoid(Quaternion::new(1.0, 1.5, 2.0, 1.5), [0.6, 1.0, 0.8, 0.7], 16, true)?;

    let pi2 = std::f64::consts::PI.powi(2);
    println!(
        "{sphere}: area {:.10} (2 pi^2 = {:.10}), volume {:.10} (pi^2/2 = {:.10})",
        sphere.surface_area(),
        2.0 * pi2,
        sphere.volume(),
        0.5 * pi2
    );
    let flux = surface_integral_left(&QFunction::power(1), &sphere)?;
    println!("surface integral of n p = {flux} (closed form -pi^2 = {:.10})", -pi2);

    for k in [&sphere, &ellipsoid] {
        for id in ["power:2", "iota", "laurent:-1:1,0,j", "conj"] {
            let check = theorem2_residual(&ops, &catalog_get(id)?, k)?;
            println!(
                "{id:>17} on {k}: lhs = {}, relative residual {:.1e}, holds: {}",
                check.lhs,
                check.relative(),
                check.passes(1e-3)
            );
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
