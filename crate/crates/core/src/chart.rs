//! The `(t, r, α, β)` chart of quaternions off the real axis.
//!
//! `p = t + r ι` with `ι = (cos α sin β) i + (sin α sin β) j + (cos β) k`.
//! The chart degenerates where `sin β = 0`, i.e. on the plane `t + z k`;
//! there `α` is set to 0.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::quaternion::{Quaternion, DEFAULT_EPSILON};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalPoint {
    pub t: f64,
    pub r: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Thresholds used to refuse points where the spherical form is singular.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Guards {
    /// Smallest admissible `r`.
    pub r_min: f64,
    /// Smallest admissible `sin β`.
    pub s_min: f64,
    /// Zero threshold for norms (scaled by `max(1, |p|)`).
    pub epsilon: f64,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            r_min: 1e-6,
            s_min: 1e-6,
            epsilon: DEFAULT_EPSILON,
        }
    }
}

impl Guards {
    /// Ok when `r > r_min`.
    pub fn check_off_axis(&self, p: Quaternion) -> Result<()> {
        let r = p.imag_norm();
        if r > self.r_min {
            Ok(())
        } else {
            Err(Error::OnRealAxis { r })
        }
    }

    /// Ok when `r > r_min` and `sin β > s_min`.
    pub fn check_chart(&self, p: Quaternion) -> Result<()> {
        self.check_off_axis(p)?;
        let sin_beta = p.x.hypot(p.y) / p.imag_norm();
        if sin_beta > self.s_min {
            Ok(())
        } else {
            Err(Error::DegenerateChart { sin_beta })
        }
    }
}

impl SphericalPoint {
    pub fn new(t: f64, r: f64, alpha: f64, beta: f64) -> Self {
        Self { t, r, alpha, beta }
    }

    pub fn sin_beta(&self) -> f64 {
        self.beta.sin()
    }

    /// The imaginary unit direction at these angles.
    pub fn iota(&self) -> Quaternion {
        iota_at(self.alpha, self.beta)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.t, self.r, self.alpha, self.beta]
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

pub fn iota_at(alpha: f64, beta: f64) -> Quaternion {
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta.sin_cos();
    Quaternion::new(0.0, ca * sb, sa * sb, cb)
}

/// `∂ι/∂α = (-sin α sin β, cos α sin β, 0)`.
pub fn iota_alpha(alpha: f64, beta: f64) -> Quaternion {
    let (sa, ca) = alpha.sin_cos();
    let sb = beta.sin();
    Quaternion::new(0.0, -sa * sb, ca * sb, 0.0)
}

/// `∂ι/∂β = (cos α cos β, sin α cos β, -sin β)`.
pub fn iota_beta(alpha: f64, beta: f64) -> Quaternion {
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta.sin_cos();
    Quaternion::new(0.0, ca * cb, sa * cb, -sb)
}

pub fn to_spherical(p: Quaternion) -> Result<SphericalPoint> {
    to_spherical_eps(p, DEFAULT_EPSILON)
}

pub fn to_spherical_eps(p: Quaternion, epsilon: f64) -> Result<SphericalPoint> {
    let r = p.imag_norm();
    if !(r >= epsilon * p.norm().max(1.0)) {
        return Err(Error::OnRealAxis { r });
    }
    let rho = p.x.hypot(p.y);
    let beta = rho.atan2(p.z);
    let alpha = if rho <= epsilon * r {
        0.0
    } else {
        let a = p.y.atan2(p.x);
        if a < 0.0 {
            // keep the principal value inside [0, 2π)
            let shifted = a + TAU;
            if shifted >= TAU {
                0.0
            } else {
                shifted
            }
        } else {
            a
        }
    };
    Ok(SphericalPoint { t: p.t, r, alpha, beta })
}

pub fn from_spherical(s: SphericalPoint) -> Quaternion {
    Quaternion::real(s.t) + s.iota().scale(s.r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-14
    }

    #[test]
    fn chart_examples() {
        let s = to_spherical(Quaternion::new(1.0, 1.0, 0.0, 0.0)).unwrap();
        assert!(close(s.t, 1.0) && close(s.r, 1.0) && close(s.alpha, 0.0) && close(s.beta, FRAC_PI_2));

        let s = to_spherical(Quaternion::new(1.0, 0.0, 1.0, 0.0)).unwrap();
        assert!(close(s.alpha, FRAC_PI_2) && close(s.beta, FRAC_PI_2));

        let s = to_spherical(Quaternion::new(2.0, 0.0, 0.0, 1.0)).unwrap();
        assert_eq!((s.t, s.r, s.alpha, s.beta), (2.0, 1.0, 0.0, 0.0));

        let s = to_spherical(Quaternion::new(0.0, 0.0, 0.0, -3.0)).unwrap();
        assert_eq!(s.alpha, 0.0);
        assert!(close(s.beta, PI));

        assert!(to_spherical(Quaternion::real(4.0)).is_err());
    }

    #[test]
    fn alpha_in_principal_range() {
        let s = to_spherical(Quaternion::new(0.0, 1.0, -1e-3, 0.2)).unwrap();
        assert!(s.alpha > PI && s.alpha < TAU);
        let back = from_spherical(s);
        assert!((back - Quaternion::new(0.0, 1.0, -1e-3, 0.2)).norm() < 1e-15);
    }

    #[test]
    fn angle_derivatives_match_finite_differences() {
        let (a, b) = (0.7, 1.1);
        let h = 1e-6;
        let fd_a = (iota_at(a + h, b) - iota_at(a - h, b)).scale(0.5 / h);
        let fd_b = (iota_at(a, b + h) - iota_at(a, b - h)).scale(0.5 / h);
        assert!((fd_a - iota_alpha(a, b)).norm() < 1e-9);
        assert!((fd_b - iota_beta(a, b)).norm() < 1e-9);
    }

    #[test]
    fn guards() {
        let g = Guards::default();
        assert!(g.check_chart(Quaternion::new(1.0, 1.0, 1.0, 0.0)).is_ok());
        assert!(matches!(
            g.check_chart(Quaternion::new(1.0, 0.0, 0.0, 1.0)),
            Err(Error::DegenerateChart { .. })
        ));
        assert!(matches!(
            g.check_off_axis(Quaternion::real(1.0)),
            Err(Error::OnRealAxis { .. })
        ));
        assert!(g.check_off_axis(Quaternion::new(1.0, 0.0, 0.0, 1.0)).is_ok());
    }
}
