// Quaternion arithmetic, the imaginary unit `ι` of a point and the
// spherical chart `p = t + ι(α, β) r`.

use quatreg::{from_spherical, iota_of, to_spherical, Quaternion, Result};

pub fn run_example() -> Result<()> {
    let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
    assert_eq!(i * j, k);
    assert_eq!(j * i, -k);
    println!("ij = {}, ji = {}", i * j, j * i);

    let p: Quaternion = "0.5+1i-2j+0.25k".parse()?;
    let q = Quaternion::new(-1.0, 0.5, 0.0, 3.0);
    println!("p = {p}, q = {q}");
    println!("|pq| = {:.12}, |p||q| = {:.12}", (p * q).norm(), p.norm() * q.norm());
    println!("p p^-1 = {}", p * p.inv()?);

    // every non-real quaternion is t + ι r with ι² = -1
    let iota = iota_of(p)?;
    println!("iota(p) = {iota}, iota^2 = {}", iota * iota);

    let s = to_spherical(p)?;
    println!(
        "chart: t = {}, r = {:.6}, alpha = {:.6}, beta = {:.6}",
        s.t, s.r, s.alpha, s.beta
    );
    let back = from_spherical(s);
    println!("roundtrip error {:.1e}", (back - p).norm());
    assert!((back - p).norm() < 1e-14);

    // the real axis has no chart
    match to_spherical(Quaternion::real(2.0)) {
        Err(e) => println!("to_spherical(2): {e}"),
        Ok(_) => unreachable!("the real axis has no angular coordinates"),
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
