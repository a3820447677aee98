//! Slice decomposition `f = u + ι v` and residual checks for the
//! characterizations of left-Cullen regularity.
//!
//! With the angular operator `∂/∂ₗι`:
//!
//! * `u = ½ ∂/∂ₗι (ι f)` and `v = ½ ∂/∂ₗι f`
//! * `∂/∂ₗι (ι f) + ι ∂/∂ₗι f = 2 f` for every `f` differentiable in `α, β`
//! * a `C¹` function `f` is left-Cullen-regular off the real axis iff any of
//!   1. `(∂t + ι ∂r) f = 0`
//!   2. `D_l(ι f) + ι D_l f = −2 f / r`
//!   3. `D_l f = −2 v / r` and `D_l(ι f) = −2 u / r`
//!   4. `D_l(f / r²) = −2 ι u / r³` and `D_l(ι f / r²) = 2 ι v / r³`
//!
//! Every residual below is the norm of the difference of the two sides, so
//! it vanishes exactly when the identity holds.

use rayon::prelude::*;

use crate::catalog::QFunction;
use crate::chart::{iota_alpha, iota_beta, SphericalPoint};
use crate::diff::{spherical_iota, Chart};
use crate::error::{Error, Result};
use crate::jet::QJet;
use crate::operators::{angular_jet_with, Operators};
use crate::quaternion::Quaternion;
use crate::sampling::SampleDomain;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceParts {
    pub u: Quaternion,
    pub v: Quaternion,
}

/// `(u, v)` as jets in the spherical chart, one order below `order`.
pub fn slice_parts_jet(
    ops: &Operators,
    f: &QFunction,
    p: Quaternion,
    order: usize,
) -> Result<(QJet, QJet, SphericalPoint)> {
    let s = ops.chart_point(p)?;
    let iota = spherical_iota(s, order)?;
    let jet = ops.expand_spherical(f, s, &iota)?;
    let u = angular_jet_with(&(iota * jet), &iota)?.scale(0.5);
    let v = angular_jet_with(&jet, &iota)?.scale(0.5);
    Ok((u, v, s))
}

/// Values of `u` and `v` at `p`.
///
/// Uses the chain rule `∂f/∂α = r Σ (ι_α)_c ∂f/∂x_c` (likewise for `β`) on a
/// first-order Cartesian expansion, so only one expansion of `f` is needed.
pub fn slice_parts(ops: &Operators, f: &QFunction, p: Quaternion) -> Result<SliceParts> {
    let s = ops.chart_point(p)?;
    let jet = ops.expand(f, p, Chart::Cartesian, 1)?;
    let value = jet.value();
    let grad = [jet.d(1)?, jet.d(2)?, jet.d(3)?];
    let along = |w: Quaternion| (grad[0].scale(w.x) + grad[1].scale(w.y) + grad[2].scale(w.z)).scale(s.r);
    let iota = s.iota();
    let (ia, ib) = (iota_alpha(s.alpha, s.beta), iota_beta(s.alpha, s.beta));
    let (inv_a, inv_b) = (ia.inv()?, ib.inv()?);
    let (f_a, f_b) = (along(ia), along(ib));
    Ok(SliceParts {
        u: (inv_a * (ia * value + iota * f_a) + inv_b * (ib * value + iota * f_b)).scale(0.5),
        v: (inv_a * f_a + inv_b * f_b).scale(0.5),
    })
}

/// `|∂/∂ₗι(ι f) + ι ∂/∂ₗι f − 2 f|` at `p`.
pub fn lemma1_residual(ops: &Operators, f: &QFunction, p: Quaternion) -> Result<f64> {
    let s = ops.chart_point(p)?;
    let iota = spherical_iota(s, 1)?;
    let jet = ops.expand_spherical(f, s, &iota)?;
    let lhs = angular_jet_with(&(iota * jet), &iota)?.value() + s.iota() * angular_jet_with(&jet, &iota)?.value();
    Ok((lhs - jet.value().scale(2.0)).norm())
}

/// Residual norms of the equivalent regularity statements at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremOneReport {
    pub function: String,
    pub point: Quaternion,
    /// `|(∂t + ι ∂r) f|`
    pub item1: f64,
    /// `|D_l(ι f) + ι D_l f + 2 f / r|`
    pub item2: f64,
    /// `|D_l f + 2 v / r|`
    pub item3a: f64,
    /// `|D_l(ι f) + 2 u / r|`
    pub item3b: f64,
    /// `|D_l(f / r²) + 2 ι u / r³|`
    pub item4a: f64,
    /// `|D_l(ι f / r²) − 2 ι v / r³|`
    pub item4b: f64,
    /// `|u + ι v − f|`
    pub reconstruction: f64,
    pub parts: SliceParts,
}

/// Identifies one residual of [`TheoremOneReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Item {
    Item1,
    Item2,
    Item3a,
    Item3b,
    Item4a,
    Item4b,
}

impl Item {
    pub const ALL: [Item; 6] = [Item::Item1, Item::Item2, Item::Item3a, Item::Item3b, Item::Item4a, Item::Item4b];

    pub fn name(self) -> &'static str {
        match self {
            Item::Item1 => "item1",
            Item::Item2 => "item2",
            Item::Item3a => "item3a",
            Item::Item3b => "item3b",
            Item::Item4a => "item4a",
            Item::Item4b => "item4b",
        }
    }

    pub fn anchor(self) -> &'static str {
        match self {
            Item::Item1 => "Theorem 1 item 1",
            Item::Item2 => "Theorem 1 item 2",
            Item::Item3a => "Theorem 1 item 3 (D_l f)",
            Item::Item3b => "Theorem 1 item 3 (D_l iota f)",
            Item::Item4a => "Theorem 1 item 4 (f/r^2)",
            Item::Item4b => "Theorem 1 item 4 (iota f/r^2)",
        }
    }
}

impl TheoremOneReport {
    pub fn residual(&self, item: Item) -> f64 {
        match item {
            Item::Item1 => self.item1,
            Item::Item2 => self.item2,
            Item::Item3a => self.item3a,
            Item::Item3b => self.item3b,
            Item::Item4a => self.item4a,
            Item::Item4b => self.item4b,
        }
    }

    pub fn residuals(&self) -> [f64; 6] {
        Item::ALL.map(|i| self.residual(i))
    }
}

pub fn theorem1_residuals(ops: &Operators, f: &QFunction, p: Quaternion) -> Result<TheoremOneReport> {
    let s = ops.chart_point(p)?;
    let iota = s.iota();
    let (r, r3) = (s.r, s.r.powi(3));
    let parts = slice_parts(ops, f, p)?;
    let SliceParts { u, v } = parts;
    let value = f.eval(p)?;

    let iota_f = f.iota_times();
    let d_f = ops.fueter_left(f, p)?;
    let d_iota_f = ops.fueter_left(&iota_f, p)?;
    let d_f_r2 = ops.fueter_left(&f.over_r_squared(), p)?;
    let d_iota_f_r2 = ops.fueter_left(&iota_f.over_r_squared(), p)?;

    Ok(TheoremOneReport {
        function: f.id().to_string(),
        point: p,
        item1: ops.cullen_left(f, p)?.norm(),
        item2: (d_iota_f + iota * d_f + value.scale(2.0 / r)).norm(),
        item3a: (d_f + v.scale(2.0 / r)).norm(),
        item3b: (d_iota_f + u.scale(2.0 / r)).norm(),
        item4a: (d_f_r2 + (iota * u).scale(2.0 / r3)).norm(),
        item4b: (d_iota_f_r2 - (iota * v).scale(2.0 / r3)).norm(),
        reconstruction: (u + iota * v - value).norm(),
        parts,
    })
}

/// Residuals of `∂v/∂α (sin β)⁻¹ + ∂u/∂β = 0` and
/// `∂u/∂α (sin β)⁻¹ − ∂v/∂β = 0`, componentwise in the four real parts.
pub fn hyperholomorphy_residuals(
    ops: &Operators,
    f: &QFunction,
    p: Quaternion,
) -> Result<(Quaternion, Quaternion)> {
    let (u, v, s) = slice_parts_jet(ops, f, p, 2)?;
    let inv_sin = 1.0 / s.sin_beta();
    let first = v.d(2)?.scale(inv_sin) + u.d(3)?;
    let second = u.d(2)?.scale(inv_sin) - v.d(3)?;
    Ok((first, second))
}

/// Max / mean / worst point of a residual over a sample set.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualStats {
    pub max: f64,
    pub mean: f64,
    pub worst_point: Quaternion,
    pub count: usize,
}

impl ResidualStats {
    /// Folds `(point, residual)` pairs in the given order.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Quaternion, f64)>) -> Self {
        let mut stats = Self {
            max: 0.0,
            mean: 0.0,
            worst_point: Quaternion::ZERO,
            count: 0,
        };
        let mut sum = 0.0;
        for (p, r) in pairs {
            // NaN residuals count as worst
            if stats.count == 0 || r > stats.max || r.is_nan() && !stats.max.is_nan() {
                stats.max = r;
                stats.worst_point = p;
            }
            sum += r;
            stats.count += 1;
        }
        if stats.count > 0 {
            stats.mean = sum / stats.count as f64;
        }
        stats
    }

    /// Strictly below `tol`.
    pub fn passes(&self, tol: f64) -> bool {
        self.count > 0 && self.max < tol
    }
}

/// Evaluates `eval` at every point in parallel; results keep sample order.
pub fn sweep<T: Send>(
    points: &[Quaternion],
    eval: impl Fn(Quaternion) -> Result<T> + Sync,
) -> Vec<(Quaternion, Result<T>)> {
    points.par_iter().map(|&p| (p, eval(p))).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ItemVerdict {
    pub item: Item,
    pub stats: ResidualStats,
    pub pass: bool,
    /// `tol − max`; negative when failing.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityVerdict {
    pub function: String,
    pub tol: f64,
    pub items: Vec<ItemVerdict>,
    pub reconstruction: ResidualStats,
    /// All items agree on pass/fail.
    pub consistent: bool,
    pub errors: Vec<(Quaternion, Error)>,
}

impl RegularityVerdict {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn item(&self, item: Item) -> &ItemVerdict {
        self.items.iter().find(|v| v.item == item).expect("all items present")
    }
}

/// Theorem-1 residuals of `f` over `n` points drawn from `f`'s restriction of `sampler`.
pub fn regularity_verdict(
    ops: &Operators,
    f: &QFunction,
    sampler: &SampleDomain,
    n: usize,
    tol: f64,
) -> Result<RegularityVerdict> {
    let points = f.domain(sampler).samples(n)?;
    let results = sweep(&points, |p| theorem1_residuals(ops, f, p));
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (p, r) in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => errors.push((p, e)),
        }
    }
    let items: Vec<ItemVerdict> = Item::ALL
        .iter()
        .map(|&item| {
            let stats = ResidualStats::from_pairs(reports.iter().map(|r| (r.point, r.residual(item))));
            ItemVerdict {
                item,
                pass: stats.passes(tol),
                margin: tol - stats.max,
                stats,
            }
        })
        .collect();
    let consistent = items.iter().all(|i| i.pass == items[0].pass);
    Ok(RegularityVerdict {
        function: f.id().to_string(),
        tol,
        reconstruction: ResidualStats::from_pairs(reports.iter().map(|r| (r.point, r.reconstruction))),
        items,
        consistent,
        errors,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IotaComposeVerdict {
    pub f_pass: bool,
    pub iota_f_pass: bool,
    /// Both pass or both fail.
    pub consistent: bool,
    /// `(point, |C f|, |C (ι f)|)` per sample.
    pub points: Vec<(Quaternion, f64, f64)>,
    pub errors: Vec<(Quaternion, Error)>,
}

/// Checks that `f` and `ι f` are Cullen-regular together or not at all.
pub fn iota_compose_regularity(
    ops: &Operators,
    f: &QFunction,
    sampler: &SampleDomain,
    n: usize,
    tol: f64,
) -> Result<IotaComposeVerdict> {
    let points = f.domain(sampler).samples(n)?;
    let iota_f = f.iota_times();
    let results = sweep(&points, |p| {
        Ok((ops.cullen_left(f, p)?.norm(), ops.cullen_left(&iota_f, p)?.norm()))
    });
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (p, r) in results {
        match r {
            Ok((a, b)) => rows.push((p, a, b)),
            Err(e) => errors.push((p, e)),
        }
    }
    let f_pass = !rows.is_empty() && rows.iter().all(|&(_, a, _)| a < tol);
    let iota_f_pass = !rows.is_empty() && rows.iter().all(|&(_, _, b)| b < tol);
    Ok(IotaComposeVerdict {
        f_pass,
        iota_f_pass,
        consistent: f_pass == iota_f_pass,
        points: rows,
        errors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_get;

    fn pts() -> Vec<Quaternion> {
        vec![
            Quaternion::new(0.3, 0.7, -0.4, 0.9),
            Quaternion::new(-0.8, -1.1, 0.6, -0.2),
            Quaternion::new(0.5, 0.2, 1.3, 0.4),
        ]
    }

    #[test]
    fn slice_parts_examples() {
        let ops = Operators::jets();
        let c = Quaternion::new(1.5, -0.5, 2.0, 0.25);
        for p in pts() {
            let sp = slice_parts(&ops, &QFunction::iota(), p).unwrap();
            assert!(sp.u.norm() < 1e-13 && (sp.v - Quaternion::ONE).norm() < 1e-13);

            let sp = slice_parts(&ops, &QFunction::constant(c), p).unwrap();
            assert!((sp.u - c).norm() < 1e-13 && sp.v.norm() < 1e-13);

            let sp = slice_parts(&ops, &QFunction::power(1), p).unwrap();
            assert!((sp.u - Quaternion::real(p.t)).norm() < 1e-13);
            assert!((sp.v - Quaternion::real(p.imag_norm())).norm() < 1e-13);
        }
    }

    #[test]
    fn lemma1_holds_without_regularity() {
        let ops = Operators::jets();
        for id in ["iota", "conj", "power:2", "coord:x"] {
            let f = catalog_get(id).unwrap();
            for p in pts() {
                assert!(lemma1_residual(&ops, &f, p).unwrap() < 1e-9, "{id}");
            }
        }
    }

    #[test]
    fn theorem1_examples() {
        let ops = Operators::jets();
        for p in pts() {
            let rep = theorem1_residuals(&ops, &QFunction::power(1), p).unwrap();
            assert!(rep.residuals().iter().all(|&r| r < 1e-8), "{rep:?}");

            let rep = theorem1_residuals(&ops, &QFunction::conj(), p).unwrap();
            assert!((rep.item1 - 2.0).abs() < 1e-10);
        }
        let f = catalog_get("arctan_ex:2").unwrap();
        let rep = theorem1_residuals(&ops, &f, Quaternion::new(0.1, 0.8, -0.5, 0.6)).unwrap();
        assert!(rep.residuals().iter().all(|&r| r < 1e-8), "{rep:?}");
    }

    #[test]
    fn opposite_sign_in_second_quotient_identity_fails() {
        // D_l(ι f / r²) equals +2 ι v / r³; with the minus sign the gap is 4 |v| / r³
        let ops = Operators::jets();
        let f = QFunction::power(1);
        let p = Quaternion::new(0.3, 0.7, -0.4, 0.9);
        let rep = theorem1_residuals(&ops, &f, p).unwrap();
        let r = p.imag_norm();
        let d = ops.fueter_left(&f.iota_times().over_r_squared(), p).unwrap();
        let iota = crate::quaternion::iota_of(p).unwrap();
        let wrong = (d + (iota * rep.parts.v).scale(2.0 / r.powi(3))).norm();
        assert!(rep.item4b < 1e-12);
        assert!((wrong - 4.0 / (r * r)).abs() < 1e-12);
    }

    #[test]
    fn hyperholomorphy_examples() {
        let ops = Operators::jets();
        let ex1 = catalog_get("arctan_ex:1").unwrap();
        let p3 = QFunction::power(3);
        for p in pts() {
            let (a, b) = hyperholomorphy_residuals(&ops, &ex1, p).unwrap();
            assert!(a.norm() < 1e-9 && b.norm() < 1e-9);
            let (a, b) = hyperholomorphy_residuals(&ops, &p3, p).unwrap();
            assert!(a.norm() < 1e-9 && b.norm() < 1e-9);
            // conj = t − r ι has angle-free slice parts: the equations hold
            // and only the Cullen condition rules it out
            let (a, b) = hyperholomorphy_residuals(&ops, &QFunction::conj(), p).unwrap();
            assert!(a.norm() < 1e-9 && b.norm() < 1e-9);
            let (a, b) = hyperholomorphy_residuals(&ops, &catalog_get("coord:x").unwrap(), p).unwrap();
            assert!(a.norm() + b.norm() > 0.1);
        }
    }

    #[test]
    fn iota_composition() {
        let ops = Operators::jets();
        let d = SampleDomain::default().with_seed(3);
        for (id, pass) in [("power:2", true), ("iota", true), ("conj", false)] {
            let v = iota_compose_regularity(&ops, &catalog_get(id).unwrap(), &d, 40, 1e-8).unwrap();
            assert_eq!((v.f_pass, v.iota_f_pass, v.consistent), (pass, pass, true), "{id}");
        }
    }

    #[test]
    fn verdict_examples() {
        let ops = Operators::jets();
        let d = SampleDomain::default().with_seed(11);

        let v = regularity_verdict(&ops, &QFunction::power(-1), &d, 50, 1e-8).unwrap();
        assert!(v.all_pass() && v.consistent && v.errors.is_empty());

        let v = regularity_verdict(&ops, &catalog_get("coord:x").unwrap(), &d, 50, 1e-8).unwrap();
        assert!(!v.item(Item::Item1).pass && v.item(Item::Item1).stats.max > 0.1);
        assert!(v.consistent && !v.all_pass());

        let exp = catalog_get("series:1,1,0.5,0.16666666666666666").unwrap();
        let v = regularity_verdict(&ops, &exp, &d, 50, 1e-8).unwrap();
        assert!(v.all_pass());
    }

    #[test]
    fn stats_ordering_and_ties() {
        let s = ResidualStats::from_pairs(vec![
            (Quaternion::I, 1.0),
            (Quaternion::J, 3.0),
            (Quaternion::K, 3.0),
        ]);
        assert_eq!(s.max, 3.0);
        assert_eq!(s.worst_point, Quaternion::J);
        assert!((s.mean - 7.0 / 3.0).abs() < 1e-15);
        assert!(!s.passes(3.0));
        assert!(s.passes(3.0000001));
    }
}
