//! Differential operators evaluated pointwise on catalog functions.
//!
//! * left-Fueter `D_l = ∂t + i ∂x + j ∂y + k ∂z` (units act from the left)
//! * its spherical form `∂t + ι ∂r − (1/r) ∂/∂ₗι`
//! * the left-Cullen operator `∂t + ι ∂r`
//! * the angular operator `∂/∂ₗι = (ι_α)⁻¹ ∂α + (ι_β)⁻¹ ∂β`
//! * the Laplacian and `D_l Δ`
//!
//! The inverses in the angular operator are full quaternion inverses applied
//! by left multiplication.

use std::fmt;

use crate::catalog::QFunction;
use crate::chart::{from_spherical, to_spherical, Guards, SphericalPoint};
use crate::diff::{expand, spherical_iota, spherical_seed_with, Backend, Chart, FdSteps};
use crate::error::Result;
use crate::jet::QJet;
use crate::quaternion::Quaternion;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    FueterLeft,
    FueterLeftSpherical,
    CullenLeft,
    Angular,
    Laplacian,
    FueterLaplacian,
}

impl Operator {
    pub const ALL: [Operator; 6] = [
        Operator::FueterLeft,
        Operator::FueterLeftSpherical,
        Operator::CullenLeft,
        Operator::Angular,
        Operator::Laplacian,
        Operator::FueterLaplacian,
    ];

    /// Highest derivative order the operator needs.
    pub fn order(self) -> usize {
        match self {
            Operator::Laplacian => 2,
            Operator::FueterLaplacian => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::FueterLeft => "fueter_left",
            Operator::FueterLeftSpherical => "fueter_left_spherical",
            Operator::CullenLeft => "cullen_left",
            Operator::Angular => "angular_derivative",
            Operator::Laplacian => "laplacian",
            Operator::FueterLaplacian => "fueter_laplacian",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorResult {
    pub value: Quaternion,
    pub backend: Backend,
    pub point: Quaternion,
}

/// `D_l` applied to a Cartesian jet at its base point.
pub fn fueter_of_jet(jet: &QJet) -> Result<Quaternion> {
    let mut acc = jet.d(0)?;
    for v in 1..4 {
        acc += Quaternion::UNITS[v] * jet.d(v)?;
    }
    Ok(acc)
}

/// Jet of `∂/∂ₗι g` from a spherical-chart jet of `g`, one order lower.
pub fn angular_jet(g: &QJet, s: SphericalPoint) -> Result<QJet> {
    angular_jet_with(g, &spherical_iota(s, g.order())?)
}

/// [`angular_jet`] with the spherical jet of `ι` supplied by the caller.
pub fn angular_jet_with(g: &QJet, iota: &QJet) -> Result<QJet> {
    let inv_alpha = iota.derivative(2)?.inv()?;
    let inv_beta = iota.derivative(3)?.inv()?;
    Ok(inv_alpha.try_mul(&g.derivative(2)?)? + inv_beta.try_mul(&g.derivative(3)?)?)
}

/// Jet of the Laplacian from a Cartesian jet, two orders lower.
pub fn laplacian_jet(jet: &QJet) -> Result<QJet> {
    let mut acc = jet.derivative(0)?.derivative(0)?;
    for v in 1..4 {
        acc = acc + jet.derivative(v)?.derivative(v)?;
    }
    Ok(acc)
}

/// Operator evaluator with a fixed differentiation backend and guards.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Operators {
    pub backend: Backend,
    pub guards: Guards,
    pub steps: FdSteps,
}

impl Operators {
    pub fn jets() -> Self {
        Self::default()
    }

    pub fn finite_difference() -> Self {
        Self::with_backend(Backend::FiniteDifference)
    }

    pub fn with_backend(backend: Backend) -> Self {
        Self {
            backend,
            ..Self::default()
        }
    }

    pub fn expand(&self, f: &QFunction, p: Quaternion, chart: Chart, order: usize) -> Result<QJet> {
        expand(f, p, chart, order, self.backend, &self.steps)
    }

    /// Spherical-chart expansion at `s`, reusing the jet of `ι` there.
    pub fn expand_spherical(&self, f: &QFunction, s: SphericalPoint, iota: &QJet) -> Result<QJet> {
        match self.backend {
            Backend::Jets => f.eval_jet(&spherical_seed_with(s, iota)?),
            Backend::FiniteDifference => self.expand(f, from_spherical(s), Chart::Spherical, iota.order()),
        }
    }

    /// Spherical coordinates of `p` after checking `r > r_min` and `sin β > s_min`.
    pub fn chart_point(&self, p: Quaternion) -> Result<SphericalPoint> {
        self.guards.check_chart(p)?;
        to_spherical(p)
    }

    pub fn fueter_left(&self, f: &QFunction, p: Quaternion) -> Result<Quaternion> {
        fueter_of_jet(&self.expand(f, p, Chart::Cartesian, 1)?)
    }

    pub fn fueter_left_spherical(&self, f: &QFunction, p: Quaternion) -> Result<Quaternion> {
        let s = self.chart_point(p)?;
        let jet = self.expand(f, p, Chart::Spherical, 1)?;
        let angular = angular_jet(&jet, s)?.value();
        Ok(jet.d(0)? + s.iota() * jet.d(1)? - angular.scale(1.0 / s.r))
    }

    pub fn cullen_left(&self, f: &QFunction, p: Quaternion) -> Result<Quaternion> {
        self.guards.check_off_axis(p)?;
        let s = to_spherical(p)?;
        let jet = self.expand(f, p, Chart::Spherical, 1)?;
        Ok(jet.d(0)? + s.iota() * jet.d(1)?)
    }

    pub fn angular_derivative(&self, f: &QFunction, p: Quaternion) -> Result<Quaternion> {
        let s = self.chart_point(p)?;
        let jet = self.expand(f, p, Chart::Spherical, 1)?;
        Ok(angular_jet(&jet, s)?.value())
    }

    pub fn laplacian(&self, f: &QFunction, p: Quaternion) -> Result<Quaternion> {
        Ok(laplacian_jet(&self.expand(f, p, Chart::Cartesian, 2)?)?.value())
    }

    pub fn fueter_laplacian(&self, f: &QFunction, p: Quaternion) -> Result<Quaternion> {
        fueter_of_jet(&laplacian_jet(&self.expand(f, p, Chart::Cartesian, 3)?)?)
    }

    pub fn apply(&self, op: Operator, f: &QFunction, p: Quaternion) -> Result<OperatorResult> {
        let value = match op {
            Operator::FueterLeft => self.fueter_left(f, p),
            Operator::FueterLeftSpherical => self.fueter_left_spherical(f, p),
            Operator::CullenLeft => self.cullen_left(f, p),
            Operator::Angular => self.angular_derivative(f, p),
            Operator::Laplacian => self.laplacian(f, p),
            Operator::FueterLaplacian => self.fueter_laplacian(f, p),
        }?;
        Ok(OperatorResult {
            value,
            backend: self.backend,
            point: p,
        })
    }
}
