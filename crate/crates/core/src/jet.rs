//! Truncated multivariate Taylor expansions ("jets") in four real variables.
//!
//! An [`RJet`] of order `n ≤ 3` stores the Taylor coefficients of a real
//! function about a base point for every monomial of total degree `≤ n`
//! (35 coefficients at order 3). Arithmetic discards terms above the order,
//! so derivatives up to order `n` propagate exactly through `+ - *` and the
//! elementary functions. A [`QJet`] carries one `RJet` per quaternion
//! component and multiplies with the Hamilton product.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

pub const MAX_ORDER: usize = 3;
pub const NUM_VARS: usize = 4;
const NUM_MONOMIALS: usize = 35;

/// Exponents of a monomial `v0^a v1^b v2^c v3^d`.
pub type MultiIndex = [u8; NUM_VARS];

struct Tables {
    exps: [MultiIndex; NUM_MONOMIALS],
    degree: [u8; NUM_MONOMIALS],
    /// Number of monomials of degree `≤ n`, indexed by `n`.
    count: [usize; MAX_ORDER + 1],
    /// `(a, b, c)` with `m_a · m_b = m_c`, grouped by `deg m_c`.
    products: Vec<(u8, u8, u8, u8)>,
    /// `shift[v][i]`: index of `m_i + e_v` when its degree is `≤ 3`.
    shift: [[Option<u8>; NUM_MONOMIALS]; NUM_VARS],
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut exps = Vec::with_capacity(NUM_MONOMIALS);
        for deg in 0..=MAX_ORDER as u8 {
            // graded, then lexicographically descending in the leading variables
            for a in (0..=deg).rev() {
                for b in (0..=deg - a).rev() {
                    for c in (0..=deg - a - b).rev() {
                        exps.push([a, b, c, deg - a - b - c]);
                    }
                }
            }
        }
        let exps: [MultiIndex; NUM_MONOMIALS] = exps.try_into().expect("35 monomials");
        let degree = exps.map(|e| e.iter().sum());
        let mut count = [0; MAX_ORDER + 1];
        for (n, slot) in count.iter_mut().enumerate() {
            *slot = degree.iter().filter(|&&d| d as usize <= n).count();
        }
        let find = |m: MultiIndex| exps.iter().position(|&e| e == m);

        let mut products = Vec::new();
        for a in 0..NUM_MONOMIALS {
            for b in 0..NUM_MONOMIALS {
                let mut m = [0u8; NUM_VARS];
                for v in 0..NUM_VARS {
                    m[v] = exps[a][v] + exps[b][v];
                }
                if let Some(c) = find(m) {
                    products.push((a as u8, b as u8, c as u8, degree[c]));
                }
            }
        }
        products.sort_by_key(|&(_, _, _, d)| d);

        let mut shift = [[None; NUM_MONOMIALS]; NUM_VARS];
        for (v, row) in shift.iter_mut().enumerate() {
            for (i, slot) in row.iter_mut().enumerate() {
                let mut m = exps[i];
                m[v] += 1;
                *slot = find(m).map(|c| c as u8);
            }
        }
        Tables {
            exps,
            degree,
            count,
            products,
            shift,
        }
    })
}

/// All multi-indices of total degree `≤ order`, in coefficient order.
pub fn multi_indices(order: usize) -> Vec<MultiIndex> {
    let t = tables();
    t.exps[..t.count[order.min(MAX_ORDER)]].to_vec()
}

pub fn multi_factorial(m: MultiIndex) -> f64 {
    m.iter().map(|&e| factorial(e)).product()
}

/// Position of a multi-index in the coefficient array.
fn index_of(m: MultiIndex) -> Option<usize> {
    tables().exps.iter().position(|&e| e == m)
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        Err(Error::OrderTooHigh(order))
    } else {
        Ok(())
    }
}

fn factorial(n: u8) -> f64 {
    (1..=n as u32).product::<u32>() as f64
}

/// Real-valued jet.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RJet {
    order: u8,
    coeffs: [f64; NUM_MONOMIALS],
}

/// Elementary functions available through [`RJet::elementary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    Sin,
    Cos,
    Sqrt,
    Recip,
    Atan,
    Atanh,
}

impl RJet {
    pub fn constant(value: f64, order: usize) -> Result<Self> {
        check_order(order)?;
        let mut coeffs = [0.0; NUM_MONOMIALS];
        coeffs[0] = value;
        Ok(Self {
            order: order as u8,
            coeffs,
        })
    }

    /// Independent variable `var` with base value `value`.
    pub fn variable(value: f64, var: usize, order: usize) -> Result<Self> {
        assert!(var < NUM_VARS, "variable index {var} out of range");
        let mut jet = Self::constant(value, order)?;
        if order >= 1 {
            jet.coeffs[1 + var] = 1.0;
        }
        Ok(jet)
    }

    /// Seeds a jet at `point`: the constant term is `point[var]` and the
    /// variable gets a unit first-order coefficient. With `var = None` the
    /// jet is the constant `point[0]`.
    pub fn seed(point: [f64; NUM_VARS], var: Option<usize>, order: usize) -> Result<Self> {
        match var {
            Some(v) => Self::variable(point[v], v, order),
            None => Self::constant(point[0], order),
        }
    }

    /// Four jets, one independent variable per coordinate of `point`.
    pub fn seed_point(point: [f64; NUM_VARS], order: usize) -> Result<[Self; NUM_VARS]> {
        check_order(order)?;
        Ok([0, 1, 2, 3].map(|v| Self::variable(point[v], v, order).expect("order checked")))
    }

    /// Builds a jet from its Taylor coefficients.
    pub fn from_taylor(order: usize, mut coeff: impl FnMut(MultiIndex) -> Result<f64>) -> Result<Self> {
        let mut jet = Self::constant(0.0, order)?;
        for (i, m) in multi_indices(order).into_iter().enumerate() {
            jet.coeffs[i] = coeff(m)?;
        }
        Ok(jet)
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// Live coefficients, in graded order.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..tables().count[self.order()]]
    }

    /// Taylor coefficient of monomial `m` (zero above the order).
    pub fn coeff(&self, m: MultiIndex) -> f64 {
        match index_of(m) {
            Some(i) if tables().degree[i] <= self.order => self.coeffs[i],
            _ => 0.0,
        }
    }

    /// Partial derivative `∂^m f` at the base point.
    pub fn partial(&self, m: MultiIndex) -> Result<f64> {
        let degree: usize = m.iter().map(|&e| e as usize).sum();
        if degree > self.order() {
            return Err(Error::IndexTooDeep {
                degree,
                order: self.order(),
            });
        }
        let i = index_of(m).expect("degree ≤ 3");
        Ok(self.coeffs[i] * multi_factorial(m))
    }

    /// Same expansion with terms above `order` dropped.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        let mut out = *self;
        out.order = order as u8;
        for c in out.coeffs[tables().count[order]..].iter_mut() {
            *c = 0.0;
        }
        out
    }

    /// Jet of `∂f/∂v_var`, one order lower.
    pub fn derivative(&self, var: usize) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::IndexTooDeep {
                degree: 1,
                order: 0,
            });
        }
        let t = tables();
        let order = self.order() - 1;
        let mut out = Self::constant(0.0, order)?;
        for i in 0..t.count[order] {
            let src = t.shift[var][i].expect("degree below max") as usize;
            out.coeffs[i] = (t.exps[i][var] as f64 + 1.0) * self.coeffs[src];
        }
        Ok(out)
    }

    /// Number of coefficients in use at this order.
    fn live(&self) -> usize {
        tables().count[self.order()]
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::BasisMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let mut out = *self;
        let n = self.live();
        for (a, b) in out.coeffs[..n].iter_mut().zip(&other.coeffs[..n]) {
            *a += b;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let mut out = *self;
        let n = self.live();
        for (a, b) in out.coeffs[..n].iter_mut().zip(&other.coeffs[..n]) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let mut out = Self::constant(0.0, self.order())?;
        out.mul_acc(self, other, 1.0);
        Ok(out)
    }

    /// `self += sign · a · b`, truncated at `self`'s order; orders must match.
    fn mul_acc(&mut self, a: &Self, b: &Self, sign: f64) {
        for &(i, j, k, deg) in &tables().products {
            if deg > self.order {
                break;
            }
            self.coeffs[k as usize] += sign * a.coeffs[i as usize] * b.coeffs[j as usize];
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        let n = self.live();
        for c in out.coeffs[..n].iter_mut() {
            *c *= s;
        }
        out
    }

    pub fn add_scalar(&self, s: f64) -> Self {
        let mut out = *self;
        out.coeffs[0] += s;
        out
    }

    /// `g(c + n) = Σ_k g⁽ᵏ⁾(c)/k! · nᵏ` with `n` the nilpotent part.
    fn compose(&self, derivs: [f64; MAX_ORDER + 1]) -> Self {
        let mut nil = *self;
        nil.coeffs[0] = 0.0;
        let mut out = Self::constant(derivs[0], self.order()).expect("valid order");
        let mut power = nil;
        for (k, d) in derivs.iter().enumerate().skip(1).take(self.order()) {
            out = out + power.scale(d / factorial(k as u8));
            power = power * nil;
        }
        out
    }

    pub fn elementary(&self, func: Elementary) -> Result<Self> {
        let c = self.value();
        let derivs = match func {
            Elementary::Sin => {
                let (s, co) = c.sin_cos();
                [s, co, -s, -co]
            }
            Elementary::Cos => {
                let (s, co) = c.sin_cos();
                [co, -s, -co, s]
            }
            Elementary::Sqrt => {
                if !(c > 0.0) {
                    return Err(Error::domain(format!("sqrt needs a positive constant term, got {c}")));
                }
                let s = c.sqrt();
                [s, 0.5 / s, -0.25 / (s * c), 0.375 / (s * c * c)]
            }
            Elementary::Recip => {
                if c == 0.0 || !c.is_finite() {
                    return Err(Error::domain(format!("recip needs a nonzero finite constant term, got {c}")));
                }
                let q = 1.0 / c;
                [q, -q * q, 2.0 * q * q * q, -6.0 * q * q * q * q]
            }
            Elementary::Atan => {
                let d = 1.0 / (1.0 + c * c);
                [c.atan(), d, -2.0 * c * d * d, (6.0 * c * c - 2.0) * d * d * d]
            }
            Elementary::Atanh => {
                if !(c.abs() < 1.0) {
                    return Err(Error::domain(format!("atanh needs |constant term| < 1, got {c}")));
                }
                let d = 1.0 / (1.0 - c * c);
                [c.atanh(), d, 2.0 * c * d * d, (2.0 + 6.0 * c * c) * d * d * d]
            }
        };
        Ok(self.compose(derivs))
    }

    pub fn sin(&self) -> Self {
        self.elementary(Elementary::Sin).expect("sin is entire")
    }

    pub fn cos(&self) -> Self {
        self.elementary(Elementary::Cos).expect("cos is entire")
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.elementary(Elementary::Sqrt)
    }

    pub fn recip(&self) -> Result<Self> {
        self.elementary(Elementary::Recip)
    }

    pub fn atan(&self) -> Self {
        self.elementary(Elementary::Atan).expect("atan is entire")
    }

    pub fn atanh(&self) -> Result<Self> {
        self.elementary(Elementary::Atanh)
    }

    /// Two-argument arctangent of `(self, x)`, via
    /// `atan2(y, x) = θ₀ + atan((x₀y − y₀x) / (x₀x + y₀y))`.
    pub fn atan2(&self, x: &Self) -> Result<Self> {
        let (y0, x0) = (self.value(), x.value());
        if y0 == 0.0 && x0 == 0.0 {
            return Err(Error::domain("atan2 is undefined at the origin"));
        }
        let num = x.scale(-y0).try_add(&self.scale(x0))?;
        let den = x.scale(x0).try_add(&self.scale(y0))?;
        let ratio = num.try_mul(&den.recip()?)?;
        Ok(ratio.atan().add_scalar(y0.atan2(x0) - ratio.value().atan()))
    }
}

impl Add for RJet {
    type Output = RJet;
    /// Panics when the orders differ; see [`RJet::try_add`].
    fn add(self, o: Self) -> Self {
        self.try_add(&o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for RJet {
    type Output = RJet;
    fn sub(self, o: Self) -> Self {
        self.try_sub(&o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for RJet {
    type Output = RJet;
    fn mul(self, o: Self) -> Self {
        self.try_mul(&o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for RJet {
    type Output = RJet;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

/// Quaternion-valued jet: one [`RJet`] per component, all of the same order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QJet {
    pub t: RJet,
    pub x: RJet,
    pub y: RJet,
    pub z: RJet,
}

impl QJet {
    pub fn from_components(t: RJet, x: RJet, y: RJet, z: RJet) -> Result<Self> {
        for c in [&x, &y, &z] {
            t.same_order(c)?;
        }
        Ok(Self { t, x, y, z })
    }

    pub fn constant(q: Quaternion, order: usize) -> Result<Self> {
        Ok(Self {
            t: RJet::constant(q.t, order)?,
            x: RJet::constant(q.x, order)?,
            y: RJet::constant(q.y, order)?,
            z: RJet::constant(q.z, order)?,
        })
    }

    /// Quaternion `t + x i + y j + z k` with each component an independent
    /// variable seeded at `p`.
    pub fn seed_cartesian(p: Quaternion, order: usize) -> Result<Self> {
        let [t, x, y, z] = RJet::seed_point(p.to_array(), order)?;
        Ok(Self { t, x, y, z })
    }

    /// Builds a quaternion jet from quaternion Taylor coefficients.
    pub fn from_taylor(order: usize, mut coeff: impl FnMut(MultiIndex) -> Result<Quaternion>) -> Result<Self> {
        let mut comps = [RJet::constant(0.0, order)?; 4];
        for (i, m) in multi_indices(order).into_iter().enumerate() {
            let c = coeff(m)?.to_array();
            for (jet, v) in comps.iter_mut().zip(c) {
                jet.coeffs[i] = v;
            }
        }
        let [t, x, y, z] = comps;
        Ok(Self { t, x, y, z })
    }

    /// Real jet embedded as a quaternion jet.
    pub fn from_real(r: RJet) -> Self {
        let zero = r.scale(0.0);
        Self {
            t: r,
            x: zero,
            y: zero,
            z: zero,
        }
    }

    pub fn order(&self) -> usize {
        self.t.order()
    }

    pub fn components(&self) -> [&RJet; 4] {
        [&self.t, &self.x, &self.y, &self.z]
    }

    fn map(&self, f: impl Fn(&RJet) -> RJet) -> Self {
        Self {
            t: f(&self.t),
            x: f(&self.x),
            y: f(&self.y),
            z: f(&self.z),
        }
    }

    fn try_map(&self, f: impl Fn(&RJet) -> Result<RJet>) -> Result<Self> {
        Ok(Self {
            t: f(&self.t)?,
            x: f(&self.x)?,
            y: f(&self.y)?,
            z: f(&self.z)?,
        })
    }

    pub fn value(&self) -> Quaternion {
        Quaternion::new(self.t.value(), self.x.value(), self.y.value(), self.z.value())
    }

    /// Partial derivative `∂^m f` at the base point.
    pub fn partial(&self, m: MultiIndex) -> Result<Quaternion> {
        Ok(Quaternion::new(
            self.t.partial(m)?,
            self.x.partial(m)?,
            self.y.partial(m)?,
            self.z.partial(m)?,
        ))
    }

    /// First partial in variable `var`.
    pub fn d(&self, var: usize) -> Result<Quaternion> {
        let mut m = [0; NUM_VARS];
        m[var] = 1;
        self.partial(m)
    }

    pub fn derivative(&self, var: usize) -> Result<Self> {
        self.try_map(|c| c.derivative(var))
    }

    pub fn truncate(&self, order: usize) -> Self {
        self.map(|c| c.truncate(order))
    }

    pub fn conj(&self) -> Self {
        Self {
            t: self.t,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    pub fn imag(&self) -> Self {
        Self {
            t: self.t.scale(0.0),
            ..*self
        }
    }

    pub fn norm_sq(&self) -> RJet {
        let mut out = self.t.scale(0.0);
        for c in self.components() {
            out.mul_acc(c, c, 1.0);
        }
        out
    }

    /// Squared norm of the imaginary part.
    pub fn imag_norm_sq(&self) -> RJet {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// `conj(a) / |a|²`.
    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        if !(n.value() > 0.0) {
            return Err(Error::ZeroDivisor {
                norm: n.value().max(0.0).sqrt(),
                epsilon: 0.0,
            });
        }
        Ok(self.conj().scale_jet(&n.recip()?))
    }

    /// Multiplies every component by a real jet.
    pub fn scale_jet(&self, s: &RJet) -> Self {
        self.map(|c| *c * *s)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|c| c.scale(s))
    }

    /// `q · self` for a constant quaternion `q`.
    pub fn left_mul(&self, q: Quaternion) -> Self {
        let z = self.t.scale(0.0);
        let c = QJet {
            t: z.add_scalar(q.t),
            x: z.add_scalar(q.x),
            y: z.add_scalar(q.y),
            z: z.add_scalar(q.z),
        };
        c * *self
    }

    /// `self · q` for a constant quaternion `q`.
    pub fn right_mul(&self, q: Quaternion) -> Self {
        let z = self.t.scale(0.0);
        let c = QJet {
            t: z.add_scalar(q.t),
            x: z.add_scalar(q.x),
            y: z.add_scalar(q.y),
            z: z.add_scalar(q.z),
        };
        *self * c
    }

    pub fn add_const(&self, q: Quaternion) -> Self {
        Self {
            t: self.t.add_scalar(q.t),
            x: self.x.add_scalar(q.x),
            y: self.y.add_scalar(q.y),
            z: self.z.add_scalar(q.z),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        Ok(Self {
            t: self.t.try_add(&o.t)?,
            x: self.x.try_add(&o.x)?,
            y: self.y.try_add(&o.y)?,
            z: self.z.try_add(&o.z)?,
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        Ok(Self {
            t: self.t.try_sub(&o.t)?,
            x: self.x.try_sub(&o.x)?,
            y: self.y.try_sub(&o.y)?,
            z: self.z.try_sub(&o.z)?,
        })
    }

    /// Hamilton product of jets.
    pub fn try_mul(&self, b: &Self) -> Result<Self> {
        self.t.same_order(&b.t)?;
        let a = self;
        let mut out = Self::constant(Quaternion::ZERO, a.order())?;
        out.t.mul_acc(&a.t, &b.t, 1.0);
        out.t.mul_acc(&a.x, &b.x, -1.0);
        out.t.mul_acc(&a.y, &b.y, -1.0);
        out.t.mul_acc(&a.z, &b.z, -1.0);
        out.x.mul_acc(&a.t, &b.x, 1.0);
        out.x.mul_acc(&a.x, &b.t, 1.0);
        out.x.mul_acc(&a.y, &b.z, 1.0);
        out.x.mul_acc(&a.z, &b.y, -1.0);
        out.y.mul_acc(&a.t, &b.y, 1.0);
        out.y.mul_acc(&a.x, &b.z, -1.0);
        out.y.mul_acc(&a.y, &b.t, 1.0);
        out.y.mul_acc(&a.z, &b.x, 1.0);
        out.z.mul_acc(&a.t, &b.z, 1.0);
        out.z.mul_acc(&a.x, &b.y, 1.0);
        out.z.mul_acc(&a.y, &b.x, -1.0);
        out.z.mul_acc(&a.z, &b.t, 1.0);
        Ok(out)
    }
}

impl Add for QJet {
    type Output = QJet;
    /// Panics when the orders differ; see [`QJet::try_add`].
    fn add(self, o: Self) -> Self {
        self.try_add(&o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for QJet {
    type Output = QJet;
    fn sub(self, o: Self) -> Self {
        self.try_sub(&o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for QJet {
    type Output = QJet;
    fn mul(self, o: Self) -> Self {
        self.try_mul(&o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for QJet {
    type Output = QJet;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: MultiIndex = [1, 0, 0, 0];

    #[test]
    fn coefficient_counts() {
        let t = tables();
        assert_eq!(t.count, [1, 5, 15, 35]);
        assert_eq!(RJet::constant(0.0, 3).unwrap().coeffs().len(), 35);
        assert_eq!(RJet::constant(0.0, 2).unwrap().coeffs().len(), 15);
    }

    #[test]
    fn seeding() {
        let a = RJet::seed([1.0, 5.0, 6.0, 7.0], Some(0), 2).unwrap();
        assert_eq!(a.value(), 1.0);
        assert_eq!(a.coeff(T), 1.0);
        assert_eq!(a.coeffs().iter().filter(|&&c| c != 0.0).count(), 2);

        let c = RJet::constant(3.0, 3).unwrap();
        assert_eq!(c.coeffs().iter().filter(|&&c| c != 0.0).count(), 1);
        assert_eq!(c.value(), 3.0);

        assert_eq!(RJet::constant(1.0, 4), Err(Error::OrderTooHigh(4)));
    }

    #[test]
    fn binomial_and_truncation() {
        let e = RJet::variable(0.0, 0, 2).unwrap();
        let a = e.add_scalar(1.0);
        let sq = a * a;
        assert_eq!(sq.coeff([0, 0, 0, 0]), 1.0);
        assert_eq!(sq.coeff([1, 0, 0, 0]), 2.0);
        assert_eq!(sq.coeff([2, 0, 0, 0]), 1.0);
        let cube = e * e * e;
        assert!(cube.coeffs().iter().all(|&c| c == 0.0));
    }

    #[test]
    fn order_mismatch_is_reported() {
        let a = RJet::constant(1.0, 2).unwrap();
        let b = RJet::constant(1.0, 3).unwrap();
        assert_eq!(a.try_mul(&b), Err(Error::BasisMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn quaternion_noncommutativity() {
        let i = QJet::constant(Quaternion::I, 2).unwrap();
        let j = QJet::constant(Quaternion::J, 2).unwrap();
        assert_eq!((i * j).value(), Quaternion::K);
        assert_eq!((j * i).value(), -Quaternion::K);
    }

    #[test]
    fn elementary_tables() {
        let e = RJet::variable(0.0, 0, 3).unwrap();
        let s = e.sin();
        let expected = [0.0, 1.0, 0.0, -1.0 / 6.0];
        for (k, want) in expected.iter().enumerate() {
            assert!((s.coeff([k as u8, 0, 0, 0]) - want).abs() < 1e-15);
        }

        let r = RJet::variable(2.0, 0, 1).unwrap().recip().unwrap();
        assert_eq!(r.value(), 0.5);
        assert_eq!(r.coeff(T), -0.25);

        // 4/3 cross-checked against a central difference of atanh at 0.5
        let h = 1e-6;
        let fd = ((0.5f64 + h).atanh() - (0.5f64 - h).atanh()) / (2.0 * h);
        let a = RJet::variable(0.5, 0, 1).unwrap().atanh().unwrap();
        assert_eq!(a.value(), 0.5f64.atanh());
        assert!((a.coeff(T) - 4.0 / 3.0).abs() < 1e-15);
        assert!((fd - 4.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn elementary_domain_errors() {
        let z = RJet::variable(0.0, 0, 2).unwrap();
        assert!(matches!(z.recip(), Err(Error::Domain(_))));
        assert!(matches!(z.sqrt(), Err(Error::Domain(_))));
        assert!(matches!(z.add_scalar(1.0).atanh(), Err(Error::Domain(_))));
        assert!(matches!(z.atan2(&z), Err(Error::Domain(_))));
    }

    #[test]
    fn elementary_third_derivatives_match_taylor() {
        // derivative tables checked by composing with a shifted variable
        let c = 0.3;
        let h = 1e-3;
        let funcs: [(Elementary, fn(f64) -> f64); 6] = [
            (Elementary::Sin, f64::sin),
            (Elementary::Cos, f64::cos),
            (Elementary::Sqrt, f64::sqrt),
            (Elementary::Recip, |v| 1.0 / v),
            (Elementary::Atan, f64::atan),
            (Elementary::Atanh, f64::atanh),
        ];
        for (func, g) in funcs {
            let jet = RJet::variable(c, 0, 3).unwrap().elementary(func).unwrap();
            let d3 = jet.partial([3, 0, 0, 0]).unwrap();
            let fd3 = (g(c + 2.0 * h) - 2.0 * g(c + h) + 2.0 * g(c - h) - g(c - 2.0 * h)) / (2.0 * h * h * h);
            assert!((d3 - fd3).abs() < 1e-4 * (1.0 + d3.abs()), "{func:?}: {d3} vs {fd3}");
        }
    }

    #[test]
    fn atan2_matches_std() {
        for &(y, x) in &[(1.0, 2.0), (-1.0, -0.5), (0.3, -2.0), (2.0, 0.0)] {
            let yj = RJet::variable(y, 0, 3).unwrap();
            let xj = RJet::variable(x, 1, 3).unwrap();
            let a = yj.atan2(&xj).unwrap();
            assert!((a.value() - f64::atan2(y, x)).abs() < 1e-15);
            let r2 = x * x + y * y;
            assert!((a.partial([1, 0, 0, 0]).unwrap() - x / r2).abs() < 1e-14);
            assert!((a.partial([0, 1, 0, 0]).unwrap() + y / r2).abs() < 1e-14);
            // mixed second derivative of atan2: (y² − x²)/r⁴
            let mixed = a.partial([1, 1, 0, 0]).unwrap();
            assert!((mixed - (y * y - x * x) / (r2 * r2)).abs() < 1e-13);
        }
    }

    #[test]
    fn partials_of_p_squared() {
        let p = QJet::seed_cartesian(Quaternion::new(0.4, -0.3, 1.2, 0.7), 2).unwrap();
        let sq = p * p;
        assert_eq!(sq.partial([2, 0, 0, 0]).unwrap(), Quaternion::real(2.0));
        let mixed = sq.partial([1, 1, 0, 0]).unwrap();
        assert!((mixed - Quaternion::I.scale(2.0)).norm() < 1e-15);
        assert_eq!(p.d(1).unwrap(), Quaternion::I);
        assert!(matches!(
            sq.partial([1, 1, 1, 0]),
            Err(Error::IndexTooDeep { degree: 3, order: 2 })
        ));
    }

    #[test]
    fn derivative_lowers_order() {
        let v = RJet::variable(0.5, 2, 3).unwrap();
        let f = v * v * v;
        let d = f.derivative(2).unwrap();
        assert_eq!(d.order(), 2);
        assert!((d.value() - 3.0 * 0.25).abs() < 1e-15);
        assert!((d.partial([0, 0, 1, 0]).unwrap() - 3.0).abs() < 1e-15);
        assert!(RJet::constant(1.0, 0).unwrap().derivative(0).is_err());
    }

    #[test]
    fn inverse_jet() {
        let p = QJet::seed_cartesian(Quaternion::new(0.4, -0.3, 1.2, 0.7), 3).unwrap();
        let prod = p * p.inv().unwrap();
        assert!((prod.value() - Quaternion::ONE).norm() < 1e-15);
        for c in prod.components() {
            assert!(c.coeffs()[1..].iter().all(|v| v.abs() < 1e-14));
        }
    }
}
