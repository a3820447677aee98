//! Quaternion arithmetic.
//!
//! A quaternion is written `t + x i + y j + z k` with `i² = j² = k² = ijk = -1`.
//! The type is `Copy` and every operation is pure.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default absolute threshold below which a norm is treated as zero.
pub const DEFAULT_EPSILON: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    /// The units `1, i, j, k` indexed by component.
    pub const UNITS: [Quaternion; 4] = [Self::ONE, Self::I, Self::J, Self::K];

    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    pub const fn real(t: f64) -> Self {
        Self::new(t, 0.0, 0.0, 0.0)
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    /// Pure imaginary part `x i + y j + z k`.
    pub fn imag(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    pub fn conj(self) -> Self {
        Self::new(self.t, -self.x, -self.y, -self.z)
    }

    pub fn norm_sq(self) -> f64 {
        self.t * self.t + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        // hypot chain avoids overflow for large components
        self.t.hypot(self.x).hypot(self.y.hypot(self.z))
    }

    /// Norm of the imaginary part, the `r` of the slice form `t + r ι`.
    pub fn imag_norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.t * s, self.x * s, self.y * s, self.z * s)
    }

    /// Multiplicative inverse `conj(a) / |a|²`.
    pub fn inv(self) -> Result<Self> {
        self.inv_eps(DEFAULT_EPSILON)
    }

    pub fn inv_eps(self, epsilon: f64) -> Result<Self> {
        let norm = self.norm();
        if !(norm >= epsilon) {
            return Err(Error::ZeroDivisor { norm, epsilon });
        }
        Ok(self.conj().scale(1.0 / self.norm_sq()))
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn powi(self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self };
        let mut acc = Quaternion::ONE;
        for _ in 0..n.unsigned_abs() {
            acc = acc * base;
        }
        Ok(acc)
    }

    /// Commutator `ab - ba`.
    pub fn commutator(self, other: Self) -> Self {
        self * other - other * self
    }

    pub fn is_finite(self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Unit imaginary direction `ι = (x i + y j + z k) / r`.
///
/// Fails with [`Error::OnRealAxis`] when `r < 1e-12 · max(1, |p|)`.
pub fn iota_of(p: Quaternion) -> Result<Quaternion> {
    iota_of_eps(p, DEFAULT_EPSILON)
}

pub fn iota_of_eps(p: Quaternion, epsilon: f64) -> Result<Quaternion> {
    let r = p.imag_norm();
    if !(r >= epsilon * p.norm().max(1.0)) {
        return Err(Error::OnRealAxis { r });
    }
    Ok(p.imag().scale(1.0 / r))
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Self) -> Self {
        Self::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Self) -> Self {
        Self::new(self.t - o.t, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Self {
        Self::new(-self.t, -self.x, -self.y, -self.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, b: Self) -> Self {
        let a = self;
        Self::new(
            a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z,
            a.t * b.x + a.x * b.t + a.y * b.z - a.z * b.y,
            a.t * b.y - a.x * b.z + a.y * b.t + a.z * b.x,
            a.t * b.z + a.x * b.y - a.y * b.x + a.z * b.t,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Quaternion::ZERO, |a, b| a + b)
    }
}

/// Writes `t±xi±yj±zk` using the shortest round-tripping float form.
impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.t)?;
        for (v, unit) in [(self.x, 'i'), (self.y, 'j'), (self.z, 'k')] {
            if v.is_sign_negative() {
                write!(f, "-{}{}", -v, unit)?;
            } else {
                write!(f, "+{}{}", v, unit)?;
            }
        }
        Ok(())
    }
}

/// Parses sums of terms such as `1+2i-0.5j+k`, `-k`, `3` or `0+2i+0j+0k`.
impl FromStr for Quaternion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Config(format!("cannot parse quaternion `{s}`: {why}"));
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(bad("empty"));
        }

        // split into signed terms, ignoring signs that belong to an exponent
        let bytes = src.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for idx in 1..bytes.len() {
            let c = bytes[idx];
            if (c == b'+' || c == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                terms.push(&src[start..idx]);
                start = idx;
            }
        }
        terms.push(&src[start..]);

        let mut q = Quaternion::ZERO;
        for term in terms {
            let (body, slot) = match term.chars().last() {
                Some('i') => (&term[..term.len() - 1], 1),
                Some('j') => (&term[..term.len() - 1], 2),
                Some('k') => (&term[..term.len() - 1], 3),
                _ => (term, 0),
            };
            let value = match body {
                "" | "+" if slot > 0 => 1.0,
                "-" if slot > 0 => -1.0,
                _ => body.parse::<f64>().map_err(|_| bad(&format!("bad term `{term}`")))?,
            };
            let mut c = q.to_array();
            c[slot] += value;
            q = Quaternion::from_array(c);
        }
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;

    #[test]
    fn unit_relations() {
        assert_eq!(I * J, K);
        assert_eq!(J * K, I);
        assert_eq!(K * I, J);
        assert_eq!(J * I, -K);
        for u in [I, J, K] {
            assert_eq!(u * u, -Quaternion::ONE);
        }
        assert_eq!(I * J * K, -Quaternion::ONE);
    }

    #[test]
    fn square_of_one_plus_i() {
        let a = Quaternion::ONE + I;
        assert_eq!(a * a, I.scale(2.0));
    }

    #[test]
    fn inverses() {
        assert_eq!(I.inv().unwrap(), -I);
        assert_eq!(Quaternion::real(2.0).inv().unwrap(), Quaternion::real(0.5));
        let a = Quaternion::new(1.0, 1.0, 1.0, 1.0);
        let ai = a.inv().unwrap();
        assert_eq!(ai, Quaternion::new(1.0, -1.0, -1.0, -1.0).scale(0.25));
        assert_eq!(a * ai, Quaternion::ONE);
        assert_eq!(ai * a, Quaternion::ONE);
    }

    #[test]
    fn zero_divisor() {
        assert!(matches!(Quaternion::ZERO.inv(), Err(Error::ZeroDivisor { .. })));
        assert!(Quaternion::real(1e-13).inv().is_err());
        assert!(Quaternion::real(1e-13).inv_eps(1e-20).is_ok());
    }

    #[test]
    fn iota_examples() {
        assert_eq!(iota_of(Quaternion::new(1.0, 3.0, 0.0, 0.0)).unwrap(), I);
        assert!(matches!(
            iota_of(Quaternion::real(5.0)),
            Err(Error::OnRealAxis { .. })
        ));
        let p = Quaternion::new(1.0, 1.0, 1.0, 2f64.sqrt());
        let expected = Quaternion::new(0.0, 0.5, 0.5, 2f64.sqrt() / 2.0);
        let got = iota_of(p).unwrap();
        assert!((got - expected).norm() < 1e-15);
        assert!((got * got + Quaternion::ONE).norm() < 1e-15);
    }

    #[test]
    fn powers() {
        let p = Quaternion::ONE + I;
        assert_eq!(p.powi(2).unwrap(), I.scale(2.0));
        assert_eq!(I.powi(-1).unwrap(), -I);
        assert_eq!(p.powi(0).unwrap(), Quaternion::ONE);
    }

    #[test]
    fn parse_and_display() {
        let cases = [
            ("1+2i-0.5j+k", Quaternion::new(1.0, 2.0, -0.5, 1.0)),
            ("0+2i+0j+0k", Quaternion::new(0.0, 2.0, 0.0, 0.0)),
            ("-k", -K),
            ("i", I),
            ("3", Quaternion::real(3.0)),
            ("1e-3i+2.5E+1", Quaternion::new(25.0, 1e-3, 0.0, 0.0)),
            (" 1 + j ", Quaternion::new(1.0, 0.0, 1.0, 0.0)),
        ];
        for (s, q) in cases {
            assert_eq!(s.parse::<Quaternion>().unwrap(), q, "{s}");
        }
        let q = Quaternion::new(-1.25, 0.1, -3.0, 1e-300);
        assert_eq!(q.to_string().parse::<Quaternion>().unwrap(), q);
        assert!("1+xi".parse::<Quaternion>().is_err());
        assert!("".parse::<Quaternion>().is_err());
    }
}
