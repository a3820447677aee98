//! Seeded sampling of points off the real axis.

use std::f64::consts::TAU;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Region removed from a [`SampleDomain`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exclusion {
    /// `|component| < half_width`, component 1..=3 for `x, y, z`.
    Slab { component: usize, half_width: f64 },
    /// `|component| / r > limit`: keeps `atanh(component / r)` away from ±1.
    Cone { component: usize, limit: f64 },
    /// `|p| < radius`.
    Ball { radius: f64 },
}

impl Exclusion {
    pub fn excludes(&self, p: Quaternion) -> bool {
        let c = p.to_array();
        match *self {
            Exclusion::Slab {
                component,
                half_width,
            } => c[component].abs() < half_width,
            Exclusion::Cone { component, limit } => c[component].abs() > limit * p.imag_norm(),
            Exclusion::Ball { radius } => p.norm() < radius,
        }
    }
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["t", "x", "y", "z"];
        match *self {
            Exclusion::Slab {
                component,
                half_width,
            } => write!(f, "|{}|<{}", NAMES[component], half_width),
            Exclusion::Cone { component, limit } => write!(f, "|{}|/r>{}", NAMES[component], limit),
            Exclusion::Ball { radius } => write!(f, "|p|<{radius}"),
        }
    }
}

/// Sampling region `t ∈ t_range`, `r ∈ r_range`, `sin β ≥ min_sin_beta`,
/// minus the exclusions. `r_range.0 > 0` keeps samples off the real axis.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleDomain {
    pub t_range: (f64, f64),
    pub r_range: (f64, f64),
    pub min_sin_beta: f64,
    pub exclusions: Vec<Exclusion>,
    pub seed: u64,
}

impl Default for SampleDomain {
    fn default() -> Self {
        Self {
            t_range: (-1.0, 1.0),
            r_range: (0.5, 2.0),
            min_sin_beta: 0.1,
            exclusions: Vec::new(),
            seed: 0,
        }
    }
}

impl SampleDomain {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Adds `other`'s exclusions to this domain.
    pub fn restricted_by(mut self, other: &[Exclusion]) -> Self {
        for e in other {
            if !self.exclusions.contains(e) {
                self.exclusions.push(*e);
            }
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (t0, t1) = self.t_range;
        let (r0, r1) = self.r_range;
        if !(t0 <= t1) {
            return Err(Error::Config(format!("empty t range [{t0}, {t1}]")));
        }
        if !(r0 > 0.0 && r0 <= r1) {
            return Err(Error::Config(format!("r range [{r0}, {r1}] must satisfy 0 < r_min <= r_max")));
        }
        if !(self.min_sin_beta > 0.0 && self.min_sin_beta < 1.0) {
            return Err(Error::Config(format!("min sin beta {} must lie in (0, 1)", self.min_sin_beta)));
        }
        Ok(())
    }

    pub fn contains(&self, p: Quaternion) -> bool {
        let r = p.imag_norm();
        let (r0, r1) = self.r_range;
        let (t0, t1) = self.t_range;
        r >= r0
            && r <= r1
            && p.t >= t0
            && p.t <= t1
            && p.x.hypot(p.y) >= self.min_sin_beta * r
            && !self.exclusions.iter().any(|e| e.excludes(p))
    }

    /// `n` points, identical for identical seeds.
    pub fn samples(&self, n: usize) -> Result<Vec<Quaternion>> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(n);
        let budget = 1000 * n.max(1);
        let mut attempts = 0;
        while out.len() < n {
            attempts += 1;
            if attempts > budget {
                return Err(Error::domain(format!(
                    "sample domain too restrictive: {} of {n} points after {budget} draws",
                    out.len()
                )));
            }
            let t = rng.gen_range(self.t_range.0..=self.t_range.1);
            let r = rng.gen_range(self.r_range.0..=self.r_range.1);
            // uniform direction on the 2-sphere
            let cos_beta: f64 = rng.gen_range(-1.0..=1.0);
            let alpha: f64 = rng.gen_range(0.0..TAU);
            let sin_beta = (1.0 - cos_beta * cos_beta).max(0.0).sqrt();
            if sin_beta < self.min_sin_beta {
                continue;
            }
            let p = Quaternion::new(
                t,
                r * alpha.cos() * sin_beta,
                r * alpha.sin() * sin_beta,
                r * cos_beta,
            );
            if self.contains(p) {
                out.push(p);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SampleDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t=[{},{}] r=[{},{}] sin_beta>={}",
            self.t_range.0, self.t_range.1, self.r_range.0, self.r_range.1, self.min_sin_beta
        )?;
        for e in &self.exclusions {
            write!(f, " exclude({e})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_respect_domain() {
        let d = SampleDomain::default().restricted_by(&[Exclusion::Slab {
            component: 2,
            half_width: 0.05,
        }]);
        let pts = d.samples(500).unwrap();
        assert_eq!(pts.len(), 500);
        for p in pts {
            let r = p.imag_norm();
            assert!(r >= 0.5 - 1e-12 && r <= 2.0 + 1e-12);
            assert!(p.x.hypot(p.y) / r >= 0.1);
            assert!(p.y.abs() >= 0.05);
        }
    }

    #[test]
    fn seeded_reproducibility() {
        let d = SampleDomain::default().with_seed(7);
        assert_eq!(d.samples(20).unwrap(), d.samples(20).unwrap());
        assert_ne!(d.samples(20).unwrap(), d.clone().with_seed(8).samples(20).unwrap());
    }

    #[test]
    fn impossible_domain_is_an_error() {
        let mut d = SampleDomain::default();
        d.exclusions.push(Exclusion::Ball { radius: 100.0 });
        assert!(d.samples(3).is_err());
        d.r_range = (0.0, 1.0);
        assert!(matches!(d.samples(3), Err(Error::Config(_))));
    }
}
