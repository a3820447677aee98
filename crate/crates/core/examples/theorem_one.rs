// Slice parts `f = u + ι v` and the equivalent statements of Cullen
// regularity, pointwise and as sampled verdicts.

use quatreg::regularity::{regularity_verdict, slice_parts, theorem1_residuals, Item};
use quatreg::{catalog_get, Operators, Quaternion, Result, SampleDomain};

pub fn run_example() -> Result<()> {
    let ops = Operators::jets();
    let p = Quaternion::new(-0.2, 0.5, 1.0, -0.3);
    let f = catalog_get("power:3")?;
    let parts = slice_parts(&ops, &f, p)?;
    println!("p^3 at {p}: u = {}, v = {}", parts.u, parts.v);

    let rep = theorem1_residuals(&ops, &f, p)?;
    for item in Item::ALL {
        println!("  {:<8} {:<22} {:.2e}", item.name(), item.anchor(), rep.residual(item));
    }
    println!("  reconstruction |u + iota v - f| = {:.1e}", rep.reconstruction);

    let domain = SampleDomain::default().with_seed(11);
    for id in ["power:-2", "series:1,i,0.5j", "arctan_ex:2", "conj", "coord:x"] {
        let v = regularity_verdict(&ops, &catalog_get(id)?, &domain, 100, 1e-8)?;
        let worst = v.items.iter().map(|i| i.stats.max).fold(0.0, f64::max);
        println!(
            "{id:>16}: regular = {:<5} consistent = {:<5} worst residual {worst:.2e}",
            v.all_pass(),
            v.consistent
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
