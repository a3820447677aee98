//! Catalog of quaternionic test functions.
//!
//! Every [`QFunction`] evaluates both on points (plain quaternion arithmetic)
//! and on [`QJet`]s (for derivatives). Series and Laurent sums carry their
//! coefficients on the right: `Σ pⁿ aₙ`.
//!
//! String ids accepted by [`catalog_get`]:
//!
//! | id | function |
//! |----|----------|
//! | `power:n` | `pⁿ`, any integer `n` |
//! | `series:a0,a1,...` | `Σ pⁿ aₙ` |
//! | `laurent:m` / `laurent:m:c0,c1,...` | `pᵐ` / `Σ pᵐ⁺ⁿ cₙ`, `m < 0` |
//! | `const:q` | constant `q` |
//! | `iota` | `ι(p)` |
//! | `arctan_ex:1..3` | `arctan(x/y) + ι arctanh(z/r)` and its cyclic variants |
//! | `conj` | `conj(p)` (control) |
//! | `coord:c` | real coordinate `c ∈ {t, x, y, z}` (control) |

use std::fmt;

use crate::error::{Error, Result};
use crate::jet::{MultiIndex, QJet, RJet};
use crate::quaternion::{iota_of, Quaternion};
use crate::sampling::{Exclusion, SampleDomain};

/// Denominators below this (relative to `max(1, |p|)`) are treated as zero.
const POLE_EPSILON: f64 = 1e-12;
/// `arctanh(c / r)` requires `|c| / r ≤ 1 - ATANH_MARGIN`.
const ATANH_MARGIN: f64 = 1e-6;
/// `arctan_ex` members require `r` above this.
const ARCTAN_R_MIN: f64 = 1e-6;
/// Half-width of the slab removed around an arctan cut when sampling.
pub const ARCTAN_CUT_HALF_WIDTH: f64 = 0.05;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub expected_regular: bool,
    pub expected_hyperholomorphic: bool,
    pub control: bool,
}

impl Flags {
    pub const REGULAR: Flags = Flags {
        expected_regular: true,
        expected_hyperholomorphic: true,
        control: false,
    };
    pub const CONTROL: Flags = Flags {
        expected_regular: false,
        expected_hyperholomorphic: false,
        control: true,
    };
    pub const NONE: Flags = Flags {
        expected_regular: false,
        expected_hyperholomorphic: false,
        control: false,
    };
}

impl fmt::Display for Flags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut words = Vec::new();
        if self.expected_regular {
            words.push("expected-regular");
        }
        if self.expected_hyperholomorphic {
            words.push("expected-hyperholomorphic");
        }
        if self.control {
            words.push("control");
        }
        if words.is_empty() {
            words.push("unclassified");
        }
        f.write_str(&words.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Kind {
    Power(i32),
    /// `Σ pⁿ aₙ`, `n = 0, 1, ...`
    Series(Vec<Quaternion>),
    /// `Σ pᵐ⁺ⁿ cₙ`
    Laurent { min_exp: i32, coeffs: Vec<Quaternion> },
    Constant(Quaternion),
    Iota,
    /// `arctan(a/b) + ι arctanh(c/r)` for the cyclic triple selected by 1..=3.
    ArctanEx(u8),
    Conj,
    /// Real coordinate function, 0..=3 for `t, x, y, z`.
    Coord(usize),
    /// `Σ c_m · t^m0 x^m1 y^m2 z^m3`.
    Polynomial(Vec<(MultiIndex, Quaternion)>),
    /// `ι · f`
    IotaTimes(Box<QFunction>),
    /// `f / r²`
    OverRSquared(Box<QFunction>),
    /// `f · g`
    Product(Box<QFunction>, Box<QFunction>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct QFunction {
    id: String,
    kind: Kind,
    flags: Flags,
}

/// Component indices `(numerator, denominator, atanh argument)`.
fn arctan_triple(n: u8) -> (usize, usize, usize) {
    match n {
        1 => (1, 2, 3),
        2 => (2, 3, 1),
        3 => (3, 1, 2),
        _ => unreachable!("validated at construction"),
    }
}

const COMPONENT_NAMES: [&str; 4] = ["t", "x", "y", "z"];

impl QFunction {
    pub fn new(id: impl Into<String>, kind: Kind, flags: Flags) -> Self {
        Self {
            id: id.into(),
            kind,
            flags,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn with_flags(mut self, flags: Flags) -> Self {
        self.flags = flags;
        self
    }

    pub fn power(n: i32) -> Self {
        Self::new(format!("power:{n}"), Kind::Power(n), Flags::REGULAR)
    }

    pub fn series(coeffs: Vec<Quaternion>) -> Self {
        let id = format!("series:{}", join_quaternions(&coeffs));
        Self::new(id, Kind::Series(coeffs), Flags::REGULAR)
    }

    pub fn laurent(min_exp: i32, coeffs: Vec<Quaternion>) -> Result<Self> {
        let id = format!("laurent:{min_exp}:{}", join_quaternions(&coeffs));
        if min_exp >= 0 {
            return Err(Error::bad_params(&id, "a Laurent sum needs a negative leading exponent"));
        }
        if coeffs.is_empty() {
            return Err(Error::bad_params(&id, "no coefficients"));
        }
        Ok(Self::new(id, Kind::Laurent { min_exp, coeffs }, Flags::REGULAR))
    }

    pub fn constant(q: Quaternion) -> Self {
        Self::new(format!("const:{q}"), Kind::Constant(q), Flags::REGULAR)
    }

    pub fn iota() -> Self {
        Self::new("iota", Kind::Iota, Flags::REGULAR)
    }

    pub fn arctan_ex(n: u8) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(Error::bad_params(&format!("arctan_ex:{n}"), "index must be 1, 2 or 3"));
        }
        Ok(Self::new(format!("arctan_ex:{n}"), Kind::ArctanEx(n), Flags::REGULAR))
    }

    pub fn conj() -> Self {
        Self::new("conj", Kind::Conj, Flags::CONTROL)
    }

    pub fn coord(component: usize) -> Result<Self> {
        let name = COMPONENT_NAMES
            .get(component)
            .ok_or_else(|| Error::bad_params("coord", format!("component {component} out of range")))?;
        Ok(Self::new(format!("coord:{name}"), Kind::Coord(component), Flags::CONTROL))
    }

    /// Quaternion-valued polynomial in the real coordinates `t, x, y, z`.
    pub fn polynomial(terms: Vec<(MultiIndex, Quaternion)>) -> Self {
        let id = terms
            .iter()
            .map(|(m, c)| format!("({c})t^{}x^{}y^{}z^{}", m[0], m[1], m[2], m[3]))
            .collect::<Vec<_>>()
            .join("+");
        Self::new(format!("poly[{id}]"), Kind::Polynomial(terms), Flags::NONE)
    }

    /// `ι · self`; regular (and hyperholomorphic) exactly when `self` is.
    pub fn iota_times(&self) -> Self {
        Self::new(format!("iota*({})", self.id), Kind::IotaTimes(Box::new(self.clone())), self.flags)
    }

    /// `self / r²`.
    pub fn over_r_squared(&self) -> Self {
        Self::new(format!("({})/r^2", self.id), Kind::OverRSquared(Box::new(self.clone())), Flags::NONE)
    }

    /// `self · other`.
    pub fn times(&self, other: &QFunction) -> Self {
        Self::new(
            format!("({})*({})", self.id, other.id),
            Kind::Product(Box::new(self.clone()), Box::new(other.clone())),
            Flags::NONE,
        )
    }

    /// Sampling exclusions needed by this function.
    pub fn exclusions(&self) -> Vec<Exclusion> {
        match &self.kind {
            Kind::ArctanEx(n) => {
                let (_, den, h) = arctan_triple(*n);
                let mut v = vec![Exclusion::Slab {
                    component: den,
                    half_width: ARCTAN_CUT_HALF_WIDTH,
                }];
                if h != 3 {
                    // the z-based chart already bounds |z|/r through sin β
                    v.push(Exclusion::Cone { component: h, limit: 0.995 });
                }
                v
            }
            Kind::Power(n) if *n < 0 => vec![Exclusion::Ball { radius: 0.25 }],
            Kind::Laurent { .. } => vec![Exclusion::Ball { radius: 0.25 }],
            Kind::IotaTimes(f) | Kind::OverRSquared(f) => f.exclusions(),
            Kind::Product(f, g) => {
                let mut v = f.exclusions();
                for e in g.exclusions() {
                    if !v.contains(&e) {
                        v.push(e);
                    }
                }
                v
            }
            _ => Vec::new(),
        }
    }

    /// `base` restricted to where this function may be sampled.
    pub fn domain(&self, base: &SampleDomain) -> SampleDomain {
        base.clone().restricted_by(&self.exclusions())
    }

    /// Point evaluation with quaternion arithmetic only.
    pub fn eval(&self, p: Quaternion) -> Result<Quaternion> {
        match &self.kind {
            Kind::Power(n) => p.powi(*n).map_err(|_| Error::domain("negative power at p = 0")),
            Kind::Series(coeffs) => {
                let mut acc = Quaternion::ZERO;
                let mut pk = Quaternion::ONE;
                for &a in coeffs {
                    acc += pk * a;
                    pk = pk * p;
                }
                Ok(acc)
            }
            Kind::Laurent { min_exp, coeffs } => {
                let mut pk = p.powi(*min_exp).map_err(|_| Error::domain("Laurent sum at p = 0"))?;
                let mut acc = Quaternion::ZERO;
                for &c in coeffs {
                    acc += pk * c;
                    pk = pk * p;
                }
                Ok(acc)
            }
            Kind::Constant(q) => Ok(*q),
            Kind::Iota => iota_of(p),
            Kind::ArctanEx(n) => {
                let (num, den, h) = arctan_triple(*n);
                let c = p.to_array();
                let r = p.imag_norm();
                check_arctan_point(c[den], c[h], r, p)?;
                let iota = p.imag().scale(1.0 / r);
                Ok(Quaternion::real((c[num] / c[den]).atan()) + iota.scale((c[h] / r).atanh()))
            }
            Kind::Conj => Ok(p.conj()),
            Kind::Coord(c) => Ok(Quaternion::real(p.to_array()[*c])),
            Kind::Polynomial(terms) => {
                let c = p.to_array();
                Ok(terms
                    .iter()
                    .map(|(m, q)| {
                        let mono: f64 = (0..4).map(|v| c[v].powi(m[v] as i32)).product();
                        q.scale(mono)
                    })
                    .sum())
            }
            Kind::IotaTimes(f) => Ok(iota_of(p)? * f.eval(p)?),
            Kind::OverRSquared(f) => {
                let r2 = p.x * p.x + p.y * p.y + p.z * p.z;
                if !(r2 > 0.0) {
                    return Err(Error::OnRealAxis { r: 0.0 });
                }
                Ok(f.eval(p)?.scale(1.0 / r2))
            }
            Kind::Product(f, g) => Ok(f.eval(p)? * g.eval(p)?),
        }
    }

    /// Evaluation on a jet of the quaternion variable.
    pub fn eval_jet(&self, p: &QJet) -> Result<QJet> {
        let order = p.order();
        match &self.kind {
            Kind::Power(n) => {
                let base = if *n < 0 {
                    p.inv().map_err(|_| Error::domain("negative power at p = 0"))?
                } else {
                    *p
                };
                let mut acc = QJet::constant(Quaternion::ONE, order)?;
                for _ in 0..n.unsigned_abs() {
                    acc = acc * base;
                }
                Ok(acc)
            }
            Kind::Series(coeffs) => {
                let mut acc = QJet::constant(Quaternion::ZERO, order)?;
                let mut pk = QJet::constant(Quaternion::ONE, order)?;
                for &a in coeffs {
                    acc = acc + pk.right_mul(a);
                    pk = pk * *p;
                }
                Ok(acc)
            }
            Kind::Laurent { min_exp, coeffs } => {
                let inv = p.inv().map_err(|_| Error::domain("Laurent sum at p = 0"))?;
                let mut pk = QJet::constant(Quaternion::ONE, order)?;
                for _ in 0..min_exp.unsigned_abs() {
                    pk = pk * inv;
                }
                let mut acc = QJet::constant(Quaternion::ZERO, order)?;
                for &c in coeffs {
                    acc = acc + pk.right_mul(c);
                    pk = pk * *p;
                }
                Ok(acc)
            }
            Kind::Constant(q) => QJet::constant(*q, order),
            Kind::Iota => iota_jet(p),
            Kind::ArctanEx(n) => {
                let (num, den, h) = arctan_triple(*n);
                let c = p.components();
                let r = p.imag_norm_sq().sqrt().map_err(|_| Error::OnRealAxis { r: 0.0 })?;
                check_arctan_point(c[den].value(), c[h].value(), r.value(), p.value())?;
                let inv_r = r.recip()?;
                let u = (*c[num] * c[den].recip()?).atan();
                let v = (*c[h] * inv_r).atanh()?;
                let iota = p.imag().scale_jet(&inv_r);
                Ok(QJet::from_real(u) + iota.scale_jet(&v))
            }
            Kind::Conj => Ok(p.conj()),
            Kind::Coord(c) => Ok(QJet::from_real(*p.components()[*c])),
            Kind::Polynomial(terms) => {
                let c = p.components();
                let mut acc = QJet::constant(Quaternion::ZERO, order)?;
                for (m, q) in terms {
                    let mut mono = RJet::constant(1.0, order)?;
                    for v in 0..4 {
                        for _ in 0..m[v] {
                            mono = mono * *c[v];
                        }
                    }
                    acc = acc + QJet::constant(*q, order)?.scale_jet(&mono);
                }
                Ok(acc)
            }
            Kind::IotaTimes(f) => Ok(iota_jet(p)? * f.eval_jet(p)?),
            Kind::OverRSquared(f) => {
                let r2 = p.imag_norm_sq();
                let inv = r2.recip().map_err(|_| Error::OnRealAxis { r: 0.0 })?;
                Ok(f.eval_jet(p)?.scale_jet(&inv))
            }
            Kind::Product(f, g) => Ok(f.eval_jet(p)? * g.eval_jet(p)?),
        }
    }
}

fn check_arctan_point(den: f64, h: f64, r: f64, p: Quaternion) -> Result<()> {
    if !(r > ARCTAN_R_MIN) {
        return Err(Error::OnRealAxis { r });
    }
    if !(den.abs() > POLE_EPSILON * p.norm().max(1.0)) {
        return Err(Error::domain(format!("arctan quotient undefined at {p} (zero denominator)")));
    }
    if !(h.abs() / r <= 1.0 - ATANH_MARGIN) {
        return Err(Error::domain(format!("arctanh argument too close to ±1 at {p}")));
    }
    Ok(())
}

/// `ι = imag(p) / r` on jets.
pub fn iota_jet(p: &QJet) -> Result<QJet> {
    let r = p
        .imag_norm_sq()
        .sqrt()
        .map_err(|_| Error::OnRealAxis { r: 0.0 })?;
    Ok(p.imag().scale_jet(&r.recip()?))
}

fn join_quaternions(qs: &[Quaternion]) -> String {
    qs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_coeffs(name: &str, list: &str) -> Result<Vec<Quaternion>> {
    let coeffs = list
        .split(',')
        .map(|s| s.trim().parse::<Quaternion>())
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::bad_params(name, e.to_string()))?;
    if coeffs.is_empty() {
        return Err(Error::bad_params(name, "no coefficients"));
    }
    Ok(coeffs)
}

fn parse_int<T: std::str::FromStr>(name: &str, s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::bad_params(name, format!("`{s}` is not an integer")))
}

/// Resolves a catalog id such as `power:3`, `series:1,0,0.5` or `arctan_ex:2`.
pub fn catalog_get(id: &str) -> Result<QFunction> {
    let id = id.trim();
    let (name, params) = match id.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (id, None),
    };
    fn need<'a>(id: &str, p: Option<&'a str>) -> Result<&'a str> {
        p.ok_or_else(|| Error::bad_params(id, "missing parameters"))
    }
    let none = |p: Option<&str>| match p {
        None => Ok(()),
        Some(_) => Err(Error::bad_params(id, "takes no parameters")),
    };
    let f = match name {
        "power" => QFunction::power(parse_int(id, need(id, params)?)?),
        "series" => QFunction::series(parse_coeffs(id, need(id, params)?)?),
        "laurent" => {
            let p = need(id, params)?;
            let (m, coeffs) = match p.split_once(':') {
                Some((m, c)) => (parse_int(id, m)?, parse_coeffs(id, c)?),
                None => (parse_int(id, p)?, vec![Quaternion::ONE]),
            };
            QFunction::laurent(m, coeffs)?
        }
        "const" => QFunction::constant(
            need(id, params)?
                .parse()
                .map_err(|e: Error| Error::bad_params(id, e.to_string()))?,
        ),
        "iota" => {
            none(params)?;
            QFunction::iota()
        }
        "arctan_ex" => QFunction::arctan_ex(parse_int(id, need(id, params)?)?)?,
        "conj" => {
            none(params)?;
            QFunction::conj()
        }
        "coord" => {
            let c = need(id, params)?.trim();
            let idx = COMPONENT_NAMES
                .iter()
                .position(|&n| n == c)
                .ok_or_else(|| Error::bad_params(id, format!("unknown coordinate `{c}`")))?;
            QFunction::coord(idx)?
        }
        _ => return Err(Error::UnknownFunction(name.to_string())),
    };
    // keep the caller's spelling so reports echo the requested id
    Ok(QFunction { id: id.to_string(), ..f })
}

/// Ids of the standard catalog: the theory's examples plus two controls.
pub const STANDARD_IDS: &[&str] = &[
    "power:-3",
    "power:-2",
    "power:-1",
    "power:1",
    "power:2",
    "power:3",
    "power:4",
    "power:5",
    "series:1,i,0.5j",
    "series:1,1,0.5,0.16666666666666666",
    "laurent:-2:k",
    "laurent:-1:1,0,j",
    "const:1+2i-1j+0.5k",
    "iota",
    "arctan_ex:1",
    "arctan_ex:2",
    "arctan_ex:3",
    "conj",
    "coord:x",
];

pub fn standard_catalog() -> Vec<QFunction> {
    STANDARD_IDS
        .iter()
        .map(|id| catalog_get(id).expect("standard ids parse"))
        .collect()
}

/// One line per standard catalog member: id, flags, domain descriptor.
pub fn list_catalog() -> String {
    let base = SampleDomain::default();
    let mut out = String::new();
    for f in standard_catalog() {
        out.push_str(&format!("{} {} domain: {}\n", f.id(), f.flags(), f.domain(&base)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn q(t: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(t, x, y, z)
    }

    #[test]
    fn catalog_examples() {
        let f = catalog_get("power:2").unwrap();
        assert_eq!(f.eval(q(1.0, 1.0, 0.0, 0.0)).unwrap(), q(0.0, 2.0, 0.0, 0.0));

        let f = catalog_get("power:-1").unwrap();
        assert_eq!(f.eval(Quaternion::I).unwrap(), -Quaternion::I);

        let f = catalog_get("arctan_ex:1").unwrap();
        let p = q(0.3, 0.7, 0.7, 0.0);
        let v = f.eval(p).unwrap();
        assert!((v - Quaternion::real(FRAC_PI_4)).norm() < 1e-15);
    }

    #[test]
    fn evaluate_examples() {
        let f = catalog_get("series:1,i").unwrap();
        assert_eq!(f.eval(Quaternion::J).unwrap(), q(1.0, 0.0, 0.0, -1.0));

        assert_eq!(catalog_get("iota").unwrap().eval(q(2.0, 0.0, 3.0, 0.0)).unwrap(), Quaternion::J);

        let f = catalog_get("arctan_ex:1").unwrap();
        assert!(matches!(f.eval(q(0.0, 1.0, 0.0, 0.5)), Err(Error::Domain(_))));
    }

    #[test]
    fn right_coefficients_matter() {
        let p = Quaternion::J;
        let right = catalog_get("series:0,i").unwrap().eval(p).unwrap();
        let left = Quaternion::I * p;
        assert!((right - left).norm() > 1.0);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(catalog_get("powr:2"), Err(Error::UnknownFunction("powr".into())));
        assert!(matches!(catalog_get("power:x"), Err(Error::BadParams { .. })));
        assert!(matches!(catalog_get("power"), Err(Error::BadParams { .. })));
        assert!(matches!(catalog_get("laurent:2"), Err(Error::BadParams { .. })));
        assert!(matches!(catalog_get("arctan_ex:4"), Err(Error::BadParams { .. })));
        assert!(matches!(catalog_get("iota:3"), Err(Error::BadParams { .. })));
        assert!(matches!(catalog_get("coord:w"), Err(Error::BadParams { .. })));
        assert!(matches!(catalog_get("series:1,zz"), Err(Error::BadParams { .. })));
    }

    #[test]
    fn jet_and_point_paths_agree() {
        let p = q(0.3, 0.8, -0.6, 1.1);
        let mut all = standard_catalog();
        all.push(QFunction::iota().times(&QFunction::power(2)));
        all.push(QFunction::conj().over_r_squared().iota_times());
        all.push(QFunction::polynomial(vec![([1, 2, 0, 0], Quaternion::K), ([0, 0, 0, 3], Quaternion::ONE)]));
        for f in all {
            let jet = f.eval_jet(&QJet::seed_cartesian(p, 0).unwrap()).unwrap().value();
            let point = f.eval(p).unwrap();
            assert!((jet - point).norm() <= 1e-12 * (1.0 + point.norm()), "{}", f.id());
        }
    }

    #[test]
    fn listing() {
        let text = list_catalog();
        assert!(text.contains("iota expected-regular"));
        assert!(text.contains("arctan_ex:1 expected-regular expected-hyperholomorphic"));
        assert!(text.contains("conj control"));
        assert_eq!(text.lines().count(), STANDARD_IDS.len());
    }
}
