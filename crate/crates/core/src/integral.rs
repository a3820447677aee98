//! Quadrature over closed hypersurfaces `K` in 4-space and their interiors `K*`.
//!
//! Supported surfaces are 3-spheres and axis-aligned 3-ellipsoids, both images
//! of the unit 3-sphere under `ω ↦ c + A ω` with `A` diagonal. The unit sphere
//! is parametrized by
//!
//! `ω = (cos ψ, sin ψ cos θ, sin ψ sin θ cos φ, sin ψ sin θ sin φ)`
//!
//! with area element `sin²ψ sin θ dψ dθ dφ`. Nodes use Gauss-Legendre in
//! `ψ, θ` and the trapezoid rule in `φ`; interior nodes add a Gauss-Legendre
//! rule in the radial scale `ρ ∈ [0, 1]` with weight `ρ³`.
//!
//! With `n = n₀ + n₁ i + n₂ j + n₃ k` the outward normal, the divergence
//! theorem applied to `f_i = e_i f` gives `∫_K n f dS = ∫_{K*} D_l f dV`, and
//! for left-Cullen-regular `f` the right side equals `∫_{K*} −2 v / r dV`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::catalog::QFunction;
use crate::diff::Chart;
use crate::error::{Error, Result};
use crate::operators::Operators;
use crate::quadrature::{gauss_legendre_on, periodic_trapezoid};
use crate::quaternion::Quaternion;
use crate::regularity::slice_parts;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceNode {
    pub point: Quaternion,
    /// Outward unit normal `(n₀, n₁, n₂, n₃)`.
    pub normal: [f64; 4],
    /// Area element times quadrature weight.
    pub weight: f64,
}

impl SurfaceNode {
    pub fn normal_quaternion(&self) -> Quaternion {
        Quaternion::from_array(self.normal)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolumeNode {
    pub point: Quaternion,
    pub weight: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    Sphere { center: Quaternion, radius: f64 },
    Ellipsoid { center: Quaternion, axes: [f64; 4] },
}

impl Shape {
    pub fn center(&self) -> Quaternion {
        match *self {
            Shape::Sphere { center, .. } | Shape::Ellipsoid { center, .. } => center,
        }
    }

    pub fn axes(&self) -> [f64; 4] {
        match *self {
            Shape::Sphere { radius, .. } => [radius; 4],
            Shape::Ellipsoid { axes, .. } => axes,
        }
    }

    /// Whether the real axis meets the closed solid.
    fn meets_real_axis(&self) -> bool {
        let c = self.center().to_array();
        let a = self.axes();
        (1..4).map(|i| (c[i] / a[i]).powi(2)).sum::<f64>() <= 1.0
    }
}

/// Closed smooth hypersurface with surface and interior quadrature.
#[derive(Clone, Debug)]
pub struct Hypersurface {
    shape: Shape,
    resolution: usize,
    volume_resolution: usize,
    /// Unit-sphere directions and their angular weights, `ψ`-major.
    volume_angular: Vec<([f64; 4], f64)>,
    radial: Vec<(f64, f64)>,
    surface: Vec<SurfaceNode>,
    min_axis_distance: f64,
}

fn angular_rule(res: usize) -> Vec<([f64; 4], f64)> {
    let psi = gauss_legendre_on(res, 0.0, PI);
    let theta = gauss_legendre_on(res, 0.0, PI);
    let phi = periodic_trapezoid(res);
    let mut out = Vec::with_capacity(res * res * res);
    for &(a, wa) in &psi {
        let (sa, ca) = a.sin_cos();
        for &(b, wb) in &theta {
            let (sb, cb) = b.sin_cos();
            for &(c, wc) in &phi {
                let (sc, cc) = c.sin_cos();
                out.push(([ca, sa * cb, sa * sb * cc, sa * sb * sc], wa * wb * wc * sa * sa * sb));
            }
        }
    }
    out
}

impl Hypersurface {
    /// 3-sphere; with `axis_free` the closed ball must avoid the real axis.
    pub fn sphere3(center: Quaternion, radius: f64, resolution: usize, axis_free: bool) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Config(format!("sphere radius {radius} must be positive")));
        }
        Self::build(Shape::Sphere { center, radius }, resolution, resolution, axis_free)
    }

    pub fn ellipsoid(center: Quaternion, axes: [f64; 4], resolution: usize, axis_free: bool) -> Result<Self> {
        if axes.iter().any(|&a| !(a > 0.0 && a.is_finite())) {
            return Err(Error::Config(format!("ellipsoid axes {axes:?} must be positive")));
        }
        Self::build(Shape::Ellipsoid { center, axes }, resolution, resolution, axis_free)
    }

    /// Same surface with a different interior resolution.
    pub fn with_volume_resolution(self, volume_resolution: usize) -> Result<Self> {
        let axis_free = self.min_axis_distance > 0.0;
        Self::build(self.shape, self.resolution, volume_resolution, axis_free)
    }

    fn build(shape: Shape, resolution: usize, volume_resolution: usize, axis_free: bool) -> Result<Self> {
        if resolution < 2 || volume_resolution < 2 {
            return Err(Error::Config("resolution must be at least 2".into()));
        }
        let c = shape.center();
        let a = shape.axes();
        let det: f64 = a.iter().product();
        let angular = angular_rule(resolution);
        let surface: Vec<SurfaceNode> = angular
            .iter()
            .map(|&(w, dw)| {
                let mut n = [0.0; 4];
                let mut p = c.to_array();
                for i in 0..4 {
                    p[i] += a[i] * w[i];
                    n[i] = w[i] / a[i];
                }
                let len = n.iter().map(|v| v * v).sum::<f64>().sqrt();
                SurfaceNode {
                    point: Quaternion::from_array(p),
                    normal: n.map(|v| v / len),
                    weight: dw * det * len,
                }
            })
            .collect();

        let min_axis_distance = if shape.meets_real_axis() {
            0.0
        } else {
            match shape {
                Shape::Sphere { center, radius } => center.imag_norm() - radius,
                Shape::Ellipsoid { .. } => surface
                    .iter()
                    .map(|n| n.point.imag_norm())
                    .fold(f64::INFINITY, f64::min),
            }
        };
        if axis_free && !(min_axis_distance > 0.0) {
            return Err(Error::TouchesRealAxis {
                distance: min_axis_distance,
            });
        }

        let volume_angular = if volume_resolution == resolution {
            angular
        } else {
            angular_rule(volume_resolution)
        };
        let radial = gauss_legendre_on(volume_resolution, 0.0, 1.0)
            .into_iter()
            .map(|(rho, w)| (rho, w * rho.powi(3) * det))
            .collect();
        Ok(Self {
            shape,
            resolution,
            volume_resolution,
            volume_angular,
            radial,
            surface,
            min_axis_distance,
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn volume_resolution(&self) -> usize {
        self.volume_resolution
    }

    /// Distance from the closed solid to the real axis (0 when they meet).
    pub fn min_axis_distance(&self) -> f64 {
        self.min_axis_distance
    }

    pub fn surface_nodes(&self) -> &[SurfaceNode] {
        &self.surface
    }

    pub fn surface_area(&self) -> f64 {
        self.surface.iter().map(|n| n.weight).sum()
    }

    pub fn volume(&self) -> f64 {
        let ang: f64 = self.volume_angular.iter().map(|&(_, w)| w).sum();
        self.radial.iter().map(|&(_, w)| w).sum::<f64>() * ang
    }

    /// Interior nodes of one radial shell, in angular order.
    fn shell(&self, radial_index: usize) -> impl Iterator<Item = VolumeNode> + '_ {
        let (rho, wr) = self.radial[radial_index];
        let c = self.shape.center().to_array();
        let a = self.shape.axes();
        self.volume_angular.iter().map(move |&(w, dw)| {
            let mut p = c;
            for i in 0..4 {
                p[i] += rho * a[i] * w[i];
            }
            VolumeNode {
                point: Quaternion::from_array(p),
                weight: wr * dw,
            }
        })
    }

    pub fn volume_nodes(&self) -> impl Iterator<Item = VolumeNode> + '_ {
        (0..self.radial.len()).flat_map(move |k| self.shell(k))
    }

    /// `Σ g(node)·weight` over surface nodes; parallel over `ψ` rows, summed in a fixed order.
    pub fn sum_surface(&self, g: impl Fn(&SurfaceNode) -> Result<Quaternion> + Sync) -> Result<Quaternion> {
        let row = self.resolution * self.resolution;
        let partial: Vec<Result<Quaternion>> = self
            .surface
            .par_chunks(row)
            .map(|chunk| {
                let mut acc = Quaternion::ZERO;
                for n in chunk {
                    acc += g(n)?.scale(n.weight);
                }
                Ok(acc)
            })
            .collect();
        ordered_sum(partial)
    }

    /// `Σ g(node)·weight` over interior nodes; parallel over radial shells.
    pub fn sum_volume(&self, g: impl Fn(Quaternion) -> Result<Quaternion> + Sync) -> Result<Quaternion> {
        let partial: Vec<Result<Quaternion>> = (0..self.radial.len())
            .into_par_iter()
            .map(|k| {
                let mut acc = Quaternion::ZERO;
                for n in self.shell(k) {
                    acc += g(n.point)?.scale(n.weight);
                }
                Ok(acc)
            })
            .collect();
        ordered_sum(partial)
    }
}

/// Adds partial sums in index order, surfacing the first error.
fn ordered_sum(partial: Vec<Result<Quaternion>>) -> Result<Quaternion> {
    let mut acc = Quaternion::ZERO;
    for q in partial {
        acc += q?;
    }
    Ok(acc)
}

impl fmt::Display for Hypersurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            Shape::Sphere { center, radius } => write!(f, "sphere:center={center},r={radius},res={}", self.resolution)?,
            Shape::Ellipsoid { center, axes } => write!(
                f,
                "ellipsoid:center={center},axes={};{};{};{},res={}",
                axes[0], axes[1], axes[2], axes[3], self.resolution
            )?,
        }
        if self.volume_resolution != self.resolution {
            write!(f, ",vres={}", self.volume_resolution)?;
        }
        Ok(())
    }
}

/// Parses `sphere:center=0+2i+0j+0k,r=1,res=32` or
/// `ellipsoid:center=...,axes=a;b;c;d,res=16`, optionally with `vres=N`.
/// Parsed surfaces must avoid the real axis.
impl FromStr for Hypersurface {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: String| Error::Config(format!("bad hypersurface `{s}`: {why}"));
        let (kind, rest) = s.trim().split_once(':').ok_or_else(|| bad("missing `kind:`".into()))?;
        let mut center = None;
        let mut radius = None;
        let mut axes = None;
        let mut res = 16usize;
        let mut vres = None;
        for kv in rest.split(',') {
            let (k, v) = kv.split_once('=').ok_or_else(|| bad(format!("`{kv}` is not key=value")))?;
            let v = v.trim();
            let num = |v: &str| v.parse::<f64>().map_err(|_| bad(format!("`{v}` is not a number")));
            let int = |v: &str| v.parse::<usize>().map_err(|_| bad(format!("`{v}` is not a count")));
            match k.trim() {
                "center" => center = Some(v.parse::<Quaternion>()?),
                "r" => radius = Some(num(v)?),
                "axes" => {
                    let vals = v.split(';').map(num).collect::<Result<Vec<_>>>()?;
                    let arr: [f64; 4] = vals.try_into().map_err(|_| bad("axes needs 4 values".into()))?;
                    axes = Some(arr);
                }
                "res" => res = int(v)?,
                "vres" => vres = Some(int(v)?),
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        let center = center.ok_or_else(|| bad("missing center".into()))?;
        let surface = match kind.trim() {
            "sphere" => Hypersurface::sphere3(center, radius.ok_or_else(|| bad("missing r".into()))?, res, true)?,
            "ellipsoid" => Hypersurface::ellipsoid(center, axes.ok_or_else(|| bad("missing axes".into()))?, res, true)?,
            other => return Err(bad(format!("unknown kind `{other}`"))),
        };
        match vres {
            Some(v) if v != res => surface.with_volume_resolution(v),
            _ => Ok(surface),
        }
    }
}

/// `∫_K n(p) f(p) dS` with the normal multiplying from the left.
pub fn surface_integral_left(f: &QFunction, k: &Hypersurface) -> Result<Quaternion> {
    k.sum_surface(|n| Ok(n.normal_quaternion() * f.eval(n.point)?))
}

/// `∫_{K*} g dV`.
pub fn volume_integral(g: impl Fn(Quaternion) -> Result<Quaternion> + Sync, k: &Hypersurface) -> Result<Quaternion> {
    k.sum_volume(g)
}

/// Two sides of an integral identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralCheck {
    pub lhs: Quaternion,
    pub rhs: Quaternion,
    /// `|lhs − rhs|`
    pub residual: f64,
    /// `|lhs| + |rhs| + 1`
    pub scale: f64,
}

impl IntegralCheck {
    pub fn new(lhs: Quaternion, rhs: Quaternion) -> Self {
        Self {
            lhs,
            rhs,
            residual: (lhs - rhs).norm(),
            scale: lhs.norm() + rhs.norm() + 1.0,
        }
    }

    pub fn relative(&self) -> f64 {
        self.residual / self.scale
    }

    /// `residual ≤ tol · scale`.
    pub fn passes(&self, tol: f64) -> bool {
        self.residual <= tol * self.scale
    }
}

/// Divergence identity for four quaternion-valued components:
/// `∫_K Σ f_i n_i dS` against `∫_{K*} Σ ∂f_i/∂x_i dV`.
pub fn gauss_residual(ops: &Operators, fs: [&QFunction; 4], k: &Hypersurface) -> Result<IntegralCheck> {
    let lhs = k.sum_surface(|n| {
        let mut acc = Quaternion::ZERO;
        for (i, f) in fs.iter().enumerate() {
            acc += f.eval(n.point)?.scale(n.normal[i]);
        }
        Ok(acc)
    })?;
    let rhs = k.sum_volume(|p| {
        let mut acc = Quaternion::ZERO;
        for (i, f) in fs.iter().enumerate() {
            acc += ops.expand(f, p, Chart::Cartesian, 1)?.d(i)?;
        }
        Ok(acc)
    })?;
    Ok(IntegralCheck::new(lhs, rhs))
}

/// `∫_K n f dS` against `∫_{K*} D_l f dV`; holds for every `C¹` function.
pub fn fueter_bridge(ops: &Operators, f: &QFunction, k: &Hypersurface) -> Result<IntegralCheck> {
    let lhs = surface_integral_left(f, k)?;
    let rhs = volume_integral(|p| ops.fueter_left(f, p), k)?;
    Ok(IntegralCheck::new(lhs, rhs))
}

/// `∫_K n f dS` against `∫_{K*} −2 v / r dV`. Needs `K*` off the real axis.
pub fn theorem2_residual(ops: &Operators, f: &QFunction, k: &Hypersurface) -> Result<IntegralCheck> {
    if !(k.min_axis_distance() > ops.guards.r_min) {
        return Err(Error::TouchesRealAxis {
            distance: k.min_axis_distance(),
        });
    }
    let lhs = surface_integral_left(f, k)?;
    let rhs = volume_integral(
        |p| {
            let v = slice_parts(ops, f, p)?.v;
            Ok(v.scale(-2.0 / p.imag_norm()))
        },
        k,
    )?;
    Ok(IntegralCheck::new(lhs, rhs))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceVerdict {
    pub surface: String,
    pub f: IntegralCheck,
    pub iota_f: IntegralCheck,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedVerdict {
    pub function: String,
    pub tol: f64,
    pub surfaces: Vec<SurfaceVerdict>,
    pub pass: bool,
}

impl GeneralizedVerdict {
    /// Largest `residual / scale` over all surfaces and both functions.
    pub fn worst_relative(&self) -> f64 {
        self.surfaces
            .iter()
            .flat_map(|s| [s.f.relative(), s.iota_f.relative()])
            .fold(0.0, f64::max)
    }
}

/// Passes when the integral identity holds for both `f` and `ι f` on every surface.
pub fn generalized_regularity_test(
    ops: &Operators,
    f: &QFunction,
    family: &[Hypersurface],
    tol: f64,
) -> Result<GeneralizedVerdict> {
    let iota_f = f.iota_times();
    let mut surfaces = Vec::with_capacity(family.len());
    for k in family {
        let a = theorem2_residual(ops, f, k)?;
        let b = theorem2_residual(ops, &iota_f, k)?;
        surfaces.push(SurfaceVerdict {
            surface: k.to_string(),
            pass: a.passes(tol) && b.passes(tol),
            f: a,
            iota_f: b,
        });
    }
    Ok(GeneralizedVerdict {
        function: f.id().to_string(),
        tol,
        pass: !surfaces.is_empty() && surfaces.iter().all(|s| s.pass),
        surfaces,
    })
}

/// Five axis-free surfaces that also stay clear of the coordinate planes
/// `x = 0`, `y = 0`, `z = 0` (the arctan cut loci).
pub fn standard_family(resolution: usize) -> Result<Vec<Hypersurface>> {
    let q = Quaternion::new;
    Ok(vec![
        Hypersurface::sphere3(q(0.0, 2.0, 2.0, 2.0), 1.0, resolution, true)?,
        Hypersurface::sphere3(q(0.5, 1.5, 2.0, 1.5), 0.7, resolution, true)?,
        Hypersurface::sphere3(q(-1.0, 3.0, 1.5, 2.0), 0.9, resolution, true)?,
        Hypersurface::sphere3(q(0.3, 1.0, 1.0, 1.0), 0.5, resolution, true)?,
        Hypersurface::ellipsoid(q(1.0, 2.0, 2.0, 2.5), [0.6, 1.0, 0.8, 1.2], resolution, true)?,
    ])
}
