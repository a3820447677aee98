//! Local Taylor expansions of catalog functions, by jets or by finite differences.
//!
//! Both backends produce a [`QJet`] of `f` about a point in either the
//! Cartesian chart `(t, x, y, z)` or the spherical chart `(t, r, α, β)`.
//! Every operator downstream consumes only that jet, so swapping the backend
//! swaps how the derivatives of `f` are obtained and nothing else.

use std::fmt;
use std::str::FromStr;

use crate::catalog::QFunction;
use crate::chart::{from_spherical, to_spherical, SphericalPoint};
use crate::error::{Error, Result};
use crate::jet::{multi_factorial, QJet, RJet, MultiIndex};
use crate::quaternion::Quaternion;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Backend {
    #[default]
    Jets,
    FiniteDifference,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Jets => "jets",
            Backend::FiniteDifference => "fd",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "jets" => Ok(Backend::Jets),
            "fd" | "finite-difference" => Ok(Backend::FiniteDifference),
            other => Err(Error::Config(format!("unknown backend `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// Variables `(t, x, y, z)`.
    Cartesian,
    /// Variables `(t, r, α, β)`.
    Spherical,
}

/// Base step per derivative order for central differences. Each partial
/// is Richardson-refined from steps `h` and `h/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdSteps {
    pub first: f64,
    pub second: f64,
    pub third: f64,
}

impl Default for FdSteps {
    fn default() -> Self {
        Self {
            first: 1e-5,
            second: 1e-3,
            third: 1e-2,
        }
    }
}

impl FdSteps {
    fn for_degree(&self, degree: usize) -> f64 {
        match degree {
            0 | 1 => self.first,
            2 => self.second,
            _ => self.third,
        }
    }
}

/// `(offset, weight)` pairs of the central stencil for a 1-D derivative of
/// order `k`, before division by `hᵏ`.
fn stencil(k: u8) -> &'static [(f64, f64)] {
    match k {
        0 => &[(0.0, 1.0)],
        1 => &[(1.0, 0.5), (-1.0, -0.5)],
        2 => &[(1.0, 1.0), (0.0, -2.0), (-1.0, 1.0)],
        3 => &[(2.0, 0.5), (1.0, -1.0), (-1.0, 1.0), (-2.0, -0.5)],
        _ => unreachable!("jets stop at order 3"),
    }
}

/// Mixed partial `∂^m g` at `base` by a tensor-product central stencil.
fn stencil_partial(
    g: &dyn Fn([f64; 4]) -> Result<Quaternion>,
    base: [f64; 4],
    m: MultiIndex,
    h: f64,
) -> Result<Quaternion> {
    let mut acc = Quaternion::ZERO;
    let mut visit = |offsets: [f64; 4], weight: f64| -> Result<()> {
        let mut c = base;
        for v in 0..4 {
            c[v] += offsets[v] * h;
        }
        acc += g(c)?.scale(weight);
        Ok(())
    };
    for &(o0, w0) in stencil(m[0]) {
        for &(o1, w1) in stencil(m[1]) {
            for &(o2, w2) in stencil(m[2]) {
                for &(o3, w3) in stencil(m[3]) {
                    visit([o0, o1, o2, o3], w0 * w1 * w2 * w3)?;
                }
            }
        }
    }
    let degree: i32 = m.iter().map(|&e| e as i32).sum();
    Ok(acc.scale(h.powi(-degree)))
}

/// Richardson-refined mixed partial: `(4 D(h/2) − D(h)) / 3`.
pub fn fd_partial(
    g: &dyn Fn([f64; 4]) -> Result<Quaternion>,
    base: [f64; 4],
    m: MultiIndex,
    h: f64,
) -> Result<Quaternion> {
    if m == [0; 4] {
        return g(base);
    }
    let coarse = stencil_partial(g, base, m, h)?;
    let fine = stencil_partial(g, base, m, 0.5 * h)?;
    Ok((fine.scale(4.0) - coarse).scale(1.0 / 3.0))
}

/// The quaternion variable as a jet seeded in the spherical chart:
/// `t + r (cos α sin β, sin α sin β, cos β)`.
pub fn spherical_seed(s: SphericalPoint, order: usize) -> Result<QJet> {
    spherical_seed_with(s, &spherical_iota(s, order)?)
}

/// [`spherical_seed`] reusing an already expanded `ι` jet.
pub fn spherical_seed_with(s: SphericalPoint, iota: &QJet) -> Result<QJet> {
    let [t, r, _, _] = RJet::seed_point(s.to_array(), iota.order())?;
    iota.scale_jet(&r).try_add(&QJet::from_real(t))
}

/// Jet of `ι(α, β)` in the spherical chart (no `t` or `r` dependence).
pub fn spherical_iota(s: SphericalPoint, order: usize) -> Result<QJet> {
    let [t, _, alpha, beta] = RJet::seed_point(s.to_array(), order)?;
    let (sb, cb) = (beta.sin(), beta.cos());
    QJet::from_components(t.scale(0.0), alpha.cos() * sb, alpha.sin() * sb, cb)
}

/// Taylor expansion of `f` about `p` to the given order.
pub fn expand(
    f: &QFunction,
    p: Quaternion,
    chart: Chart,
    order: usize,
    backend: Backend,
    steps: &FdSteps,
) -> Result<QJet> {
    match (backend, chart) {
        (Backend::Jets, Chart::Cartesian) => f.eval_jet(&QJet::seed_cartesian(p, order)?),
        (Backend::Jets, Chart::Spherical) => f.eval_jet(&spherical_seed(to_spherical(p)?, order)?),
        (Backend::FiniteDifference, chart) => {
            let (base, g): ([f64; 4], Box<dyn Fn([f64; 4]) -> Result<Quaternion> + '_>) = match chart {
                Chart::Cartesian => (p.to_array(), Box::new(|c| f.eval(Quaternion::from_array(c)))),
                Chart::Spherical => (
                    to_spherical(p)?.to_array(),
                    Box::new(|c| f.eval(from_spherical(SphericalPoint::from_array(c)))),
                ),
            };
            QJet::from_taylor(order, |m| {
                let degree = m.iter().map(|&e| e as usize).sum();
                Ok(fd_partial(&*g, base, m, steps.for_degree(degree))?.scale(1.0 / multi_factorial(m)))
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_get;
    use crate::jet::multi_indices;

    #[test]
    fn backends_agree_on_second_order_expansions() {
        let p = Quaternion::new(0.2, 0.9, -0.7, 0.4);
        let steps = FdSteps::default();
        for id in ["power:3", "power:-2", "arctan_ex:1", "iota", "series:1,i,0.5j"] {
            let f = catalog_get(id).unwrap();
            for chart in [Chart::Cartesian, Chart::Spherical] {
                let a = expand(&f, p, chart, 2, Backend::Jets, &steps).unwrap();
                let b = expand(&f, p, chart, 2, Backend::FiniteDifference, &steps).unwrap();
                for m in multi_indices(2) {
                    let (x, y) = (a.partial(m).unwrap(), b.partial(m).unwrap());
                    assert!((x - y).norm() < 1e-6 * (1.0 + x.norm()), "{id} {chart:?} {m:?}: {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn spherical_seed_reproduces_point() {
        let p = Quaternion::new(0.5, -0.3, 0.8, 1.4);
        let jet = spherical_seed(to_spherical(p).unwrap(), 1).unwrap();
        assert!((jet.value() - p).norm() < 1e-15);
        // ∂p/∂r = ι
        let iota = crate::quaternion::iota_of(p).unwrap();
        assert!((jet.d(1).unwrap() - iota).norm() < 1e-15);
    }

    #[test]
    fn third_order_fd_partial() {
        let g = |c: [f64; 4]| Ok(Quaternion::real(c[0].powi(2) * c[1].sin()));
        let d = fd_partial(&g, [0.7, 0.3, 0.0, 0.0], [2, 1, 0, 0], 1e-2).unwrap();
        assert!((d.t - 2.0 * 0.3f64.cos()).abs() < 1e-8);
    }
}
