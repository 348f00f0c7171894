//! Truncated rational power series in the deformation parameter `h`, and the
//! per-crossing resolution coefficients of each gauge group.
//!
//! Every coefficient is a function of the coupling `beta`, which is tied to the
//! deformation parameter by `beta = h / 2` throughout the crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default truncation order of the series ring.
pub const DEFAULT_ORDER: usize = 8;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Coefficient ring used by formal sums and the state sum.
///
/// Implemented by [`Series`] (exact, symbolic in `h`) and by `f64` (a value of
/// the coupling already substituted).
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;
    fn scale(&self, r: &BigRational) -> Self;
}

impl Scalar for f64 {
    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn scale(&self, r: &BigRational) -> Self {
        self * r.to_f64().unwrap_or(f64::NAN)
    }
}

/// `c_0 + c_1 h + ... + c_K h^K` with exact rational coefficients.
///
/// Binary operations between series of different orders truncate to the
/// smaller order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `c h^k` (zero when `k` exceeds the order).
    pub fn monomial(c: BigRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least the h^0 slot");
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `h^k`; zero beyond the order.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<_> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, BigRational::zero());
        Series { coeffs }
    }

    /// Multiply by `h` (the top slot falls off).
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        Series { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Evaluate the truncated polynomial at `h = 2 beta`.
    pub fn eval_at(&self, beta: f64) -> Complex64 {
        let h = 2.0 * beta;
        let v = self
            .coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * h + c.to_f64().unwrap_or(f64::NAN));
        Complex64::new(v, 0.0)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::BadRational(String::new()));
        }
        let coeffs = items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Series { coeffs })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..=order).map(|k| f(&self.coeffs[k], &other.coeffs[k])).collect(),
        }
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}]", self.to_strings().join(", "))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "h")?;
                    } else {
                        write!(f, "h^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(h^{})", self.order() + 1)
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, o: &Series) -> Series {
        self.zip_with(o, |a, b| a + b)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        self.zip_with(o, |a, b| a - b)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        let order = self.order().min(o.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Series { coeffs }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $m(self, o: Series) -> Series {
                (&self).$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

impl Scalar for Series {
    fn is_zero(&self) -> bool {
        Series::is_zero(self)
    }

    fn scale(&self, r: &BigRational) -> Self {
        Series::scale(self, r)
    }
}

/// Gauge group families with their conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Su2,
    Sl2r,
    Sl2c,
    Gln,
    Un,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Su2 => "su2",
            GroupKind::Sl2r => "sl2r",
            GroupKind::Sl2c => "sl2c",
            GroupKind::Gln => "gln",
            GroupKind::Un => "un",
        }
    }

    pub fn is_rank_two(self) -> bool {
        matches!(self, GroupKind::Su2 | GroupKind::Sl2r | GroupKind::Sl2c)
    }
}

impl FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "su2" => Ok(GroupKind::Su2),
            "sl2r" => Ok(GroupKind::Sl2r),
            "sl2c" => Ok(GroupKind::Sl2c),
            "gln" => Ok(GroupKind::Gln),
            "un" => Ok(GroupKind::Un),
            other => Err(Error::UnsupportedGroup(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub n: usize,
}

impl GroupSpec {
    pub fn new(kind: GroupKind, n: usize) -> Result<Self> {
        if kind.is_rank_two() {
            if n != 2 {
                return Err(Error::UnsupportedGroup(format!(
                    "{} is only defined for n = 2",
                    kind.name()
                )));
            }
        } else if n == 0 {
            return Err(Error::UnsupportedGroup(format!("{} with n = 0", kind.name())));
        }
        Ok(GroupSpec { kind, n })
    }

    pub fn su2() -> Self {
        GroupSpec {
            kind: GroupKind::Su2,
            n: 2,
        }
    }

    pub fn sl2r() -> Self {
        GroupSpec {
            kind: GroupKind::Sl2r,
            n: 2,
        }
    }

    pub fn sl2c() -> Self {
        GroupSpec {
            kind: GroupKind::Sl2c,
            n: 2,
        }
    }

    pub fn gln(n: usize) -> Self {
        GroupSpec {
            kind: GroupKind::Gln,
            n: n.max(1),
        }
    }

    pub fn un(n: usize) -> Self {
        GroupSpec {
            kind: GroupKind::Un,
            n: n.max(1),
        }
    }

    /// `n^2/4 + 2` for the GL(n)/U(n) family, 3 for the rank-two kinds.
    pub fn delta(&self) -> BigRational {
        if self.kind.is_rank_two() {
            rat(3, 1)
        } else {
            let n = self.n as i64;
            rat(n * n, 4) + rat(2, 1)
        }
    }

    /// Whether the crossing coefficients carry the framing factor `e^{±beta n/2}`.
    pub fn has_framing(&self) -> bool {
        !self.kind.is_rank_two()
    }

    pub fn label(&self) -> String {
        if self.kind.is_rank_two() {
            self.kind.name().to_string()
        } else {
            format!("{}({})", self.kind.name(), self.n)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingType {
    Over,
    Under,
}

impl CrossingType {
    pub fn from_sign(sign: i8) -> Self {
        if sign > 0 {
            CrossingType::Over
        } else {
            CrossingType::Under
        }
    }

    fn sign(self) -> i64 {
        match self {
            CrossingType::Over => 1,
            CrossingType::Under => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CrossingType::Over => "over",
            CrossingType::Under => "under",
        }
    }
}

impl FromStr for CrossingType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "over" => Ok(CrossingType::Over),
            "under" => Ok(CrossingType::Under),
            other => Err(Error::Json(format!("unknown crossing type `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hyperbolic {
    /// `cosh(beta sqrt(delta))`
    CoshScaled,
    /// `sinh(beta sqrt(delta)) / sqrt(delta)`
    SinhOverRoot,
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn hyperbolic_unchecked(kind: Hyperbolic, delta: &BigRational, order: usize) -> Series {
    let mut s = Series::zero(order);
    let mut delta_pow = BigRational::one();
    for j in 0.. {
        let k = match kind {
            Hyperbolic::CoshScaled => 2 * j,
            Hyperbolic::SinhOverRoot => 2 * j + 1,
        };
        if k > order {
            break;
        }
        // beta^k = h^k / 2^k
        let denom = factorial(k) * (BigInt::one() << k);
        s.coeffs[k] = &delta_pow / BigRational::from_integer(denom);
        delta_pow *= delta;
    }
    s
}

/// Taylor series in `h` of `cosh(beta sqrt(delta))` or `sinh(beta sqrt(delta))/sqrt(delta)`.
///
/// Only even powers of `sqrt(delta)` survive, so both are rational.
pub fn series_hyperbolic(kind: Hyperbolic, delta: &BigRational, order: usize) -> Result<Series> {
    if order < 1 {
        return Err(Error::Order { min: 1, got: order });
    }
    if !delta.is_positive() {
        return Err(Error::BadRational(format!("delta must be positive, got {delta}")));
    }
    Ok(hyperbolic_unchecked(kind, delta, order))
}

/// `exp(a beta)` as a series in `h`.
pub fn exp_series(a: &BigRational, order: usize) -> Series {
    let mut s = Series::zero(order);
    let half_a = a / rat(2, 1);
    let mut term = BigRational::one();
    for k in 0..=order {
        s.coeffs[k] = term.clone();
        term = term * &half_a / BigRational::from_integer(BigInt::from(k + 1));
    }
    s
}

/// Coefficients of the untouched (virtual) term and of the orientation
/// preserving smoothing in the resolution of one crossing.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossingCoeffs<S> {
    pub c_virtual: S,
    pub c_smooth: S,
}

pub fn crossing_coeffs(group: &GroupSpec, ty: CrossingType, order: usize) -> Result<CrossingCoeffs<Series>> {
    GroupSpec::new(group.kind, group.n)?;
    let work = order.max(1);
    let delta = group.delta();
    let cosh = hyperbolic_unchecked(Hyperbolic::CoshScaled, &delta, work);
    let sinh = hyperbolic_unchecked(Hyperbolic::SinhOverRoot, &delta, work);
    let sign = rat(ty.sign(), 1);
    let half_n = rat(group.n as i64, 2);
    let mut c_virtual = &cosh - &sinh.scale(&(&sign * &half_n));
    let mut c_smooth = sinh.scale(&(&sign * rat(2, 1)));
    if group.has_framing() {
        let framing = exp_series(&(&sign * &half_n), work);
        c_virtual = &framing * &c_virtual;
        c_smooth = &framing * &c_smooth;
    }
    Ok(CrossingCoeffs {
        c_virtual: c_virtual.truncate(order),
        c_smooth: c_smooth.truncate(order),
    })
}

/// The exact hyperbolic expressions behind [`crossing_coeffs`], for numeric use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub group: GroupSpec,
    pub ty: CrossingType,
}

impl ClosedForm {
    pub fn new(group: GroupSpec, ty: CrossingType) -> Self {
        ClosedForm { group, ty }
    }

    /// `(c_virtual, c_smooth)` at coupling `beta`.
    pub fn eval(&self, beta: f64) -> (f64, f64) {
        let sign = self.ty.sign() as f64;
        let n = self.group.n as f64;
        let root = self.group.delta().to_f64().unwrap_or(f64::NAN).sqrt();
        let b = sign * beta;
        let (ch, sh) = ((b * root).cosh(), (b * root).sinh() / root);
        let framing = if self.group.has_framing() {
            (b * n / 2.0).exp()
        } else {
            1.0
        };
        (framing * (ch - n / 2.0 * sh), framing * 2.0 * sh)
    }

    pub fn numeric(&self, beta: f64) -> CrossingCoeffs<f64> {
        let (c_virtual, c_smooth) = self.eval(beta);
        CrossingCoeffs { c_virtual, c_smooth }
    }
}

/// Which coefficient of a crossing to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Virtual,
    Smooth,
}

/// A coefficient either as a truncated series or as a closed form.
#[derive(Debug, Clone)]
pub enum CoeffExpr {
    Series(Series),
    Closed(ClosedForm, Slot),
}

pub fn eval_at(c: &CoeffExpr, beta: f64) -> Complex64 {
    match c {
        CoeffExpr::Series(s) => s.eval_at(beta),
        CoeffExpr::Closed(form, slot) => {
            let (v, s) = form.eval(beta);
            Complex64::new(
                match slot {
                    Slot::Virtual => v,
                    Slot::Smooth => s,
                },
                0.0,
            )
        }
    }
}

/// `M` with `d/dbeta (f, g) = M (f, g)` for the closed-form coefficients,
/// where `f' = a f + c g` and `g' = b f + d g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl Generator {
    fn rows(&self) -> [[BigRational; 2]; 2] {
        [[self.a.clone(), self.c.clone()], [self.b.clone(), self.d.clone()]]
    }
}

pub fn derived_generator(group: &GroupSpec, ty: CrossingType) -> Generator {
    let n = rat(group.n as i64, 1);
    // [[0, 1], [2, n]] generates the framed coefficients; the rank-two kinds
    // drop the framing, which shifts the diagonal by -n/2.
    let shift = if group.has_framing() {
        BigRational::zero()
    } else {
        &n / rat(2, 1)
    };
    let s = rat(ty.sign(), 1);
    Generator {
        a: &s * -&shift,
        b: &s * rat(2, 1),
        c: s.clone(),
        d: &s * (&n - &shift),
    }
}

/// `exp(beta M)` as a 2x2 matrix of series in `h`, `beta = h/2`.
pub fn generator_exp_matrix(m: &Generator, order: usize) -> [[Series; 2]; 2] {
    let rows = m.rows();
    let mut out: [[Series; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| Series::zero(order)));
    let mut power: [[BigRational; 2]; 2] = [
        [BigRational::one(), BigRational::zero()],
        [BigRational::zero(), BigRational::one()],
    ];
    let mut scale = BigRational::one();
    for k in 0..=order {
        for i in 0..2 {
            for j in 0..2 {
                out[i][j].coeffs[k] = &power[i][j] * &scale;
            }
        }
        power =
            std::array::from_fn(|i| std::array::from_fn(|j| &rows[i][0] * &power[0][j] + &rows[i][1] * &power[1][j]));
        scale /= BigRational::from_integer(BigInt::from(2 * (k + 1)));
    }
    out
}

/// `exp(beta M)` applied to `(1, 0)`: the coefficient pair the generator predicts.
pub fn generator_exp_series(m: &Generator, order: usize) -> CrossingCoeffs<Series> {
    let [[f, _], [g, _]] = generator_exp_matrix(m, order);
    CrossingCoeffs {
        c_virtual: f,
        c_smooth: g,
    }
}

pub fn mat2_mul(x: &[[Series; 2]; 2], y: &[[Series; 2]; 2]) -> [[Series; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j])))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub group: String,
    #[serde(rename = "type")]
    pub ty: CrossingType,
    #[serde(rename = "K")]
    pub order: usize,
    #[serde(rename = "virtual")]
    pub c_virtual: Vec<String>,
    pub smooth: Vec<String>,
}

impl CoeffTable {
    pub fn new(group: &GroupSpec, ty: CrossingType, order: usize) -> Result<Self> {
        let c = crossing_coeffs(group, ty, order)?;
        Ok(CoeffTable {
            group: group.label(),
            ty,
            order,
            c_virtual: c.c_virtual.to_strings(),
            smooth: c.c_smooth.to_strings(),
        })
    }

    pub fn coeffs(&self) -> Result<CrossingCoeffs<Series>> {
        Ok(CrossingCoeffs {
            c_virtual: Series::from_strings(&self.c_virtual)?,
            c_smooth: Series::from_strings(&self.smooth)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(items: &[&str]) -> Series {
        Series::from_strings(items).unwrap()
    }

    #[test]
    fn cosh_root_three() {
        let c = series_hyperbolic(Hyperbolic::CoshScaled, &rat(3, 1), 3).unwrap();
        assert_eq!(c, s(&["1", "0", "3/8", "0"]));
    }

    #[test]
    fn sinh_over_root_three() {
        let c = series_hyperbolic(Hyperbolic::SinhOverRoot, &rat(3, 1), 3).unwrap();
        assert_eq!(c, s(&["0", "1/2", "0", "1/16"]));
        assert!(c.coeff(0).is_zero());
    }

    #[test]
    fn hyperbolic_rejects_order_zero() {
        assert_eq!(
            series_hyperbolic(Hyperbolic::CoshScaled, &rat(3, 1), 0),
            Err(Error::Order { min: 1, got: 0 })
        );
    }

    #[test]
    fn su2_over_order_two() {
        let c = crossing_coeffs(&GroupSpec::su2(), CrossingType::Over, 2).unwrap();
        assert_eq!(c.c_virtual, s(&["1", "-1/2", "3/8"]));
        assert_eq!(c.c_smooth, s(&["0", "1", "0"]));
    }

    #[test]
    fn order_zero_table() {
        let c = crossing_coeffs(&GroupSpec::gln(3), CrossingType::Under, 0).unwrap();
        assert_eq!(c.c_virtual, s(&["1"]));
        assert_eq!(c.c_smooth, s(&["0"]));
    }

    #[test]
    fn zero_coupling_is_identity() {
        for g in [
            GroupSpec::su2(),
            GroupSpec::sl2r(),
            GroupSpec::gln(1),
            GroupSpec::gln(4),
            GroupSpec::un(3),
        ] {
            for ty in [CrossingType::Over, CrossingType::Under] {
                let c = crossing_coeffs(&g, ty, 5).unwrap();
                assert!(c.c_virtual.coeff(0).is_one());
                assert!(c.c_smooth.coeff(0).is_zero());
            }
        }
    }

    #[test]
    fn first_order_slots() {
        let su2 = crossing_coeffs(&GroupSpec::su2(), CrossingType::Over, 4).unwrap();
        assert_eq!((su2.c_virtual.coeff(1), su2.c_smooth.coeff(1)), (rat(-1, 2), rat(1, 1)));
        for n in 1..6 {
            let gl = crossing_coeffs(&GroupSpec::gln(n), CrossingType::Over, 4).unwrap();
            assert_eq!((gl.c_virtual.coeff(1), gl.c_smooth.coeff(1)), (rat(0, 1), rat(1, 1)));
        }
    }

    #[test]
    fn delta_values() {
        assert_eq!(GroupSpec::gln(2).delta(), GroupSpec::su2().delta());
        assert_eq!(GroupSpec::gln(3).delta(), rat(17, 4));
    }

    #[test]
    fn closed_form_values() {
        let f = ClosedForm::new(GroupSpec::su2(), CrossingType::Over);
        assert_eq!(eval_at(&CoeffExpr::Closed(f, Slot::Smooth), 0.0).re, 0.0);
        let r3 = 3f64.sqrt();
        let v = eval_at(&CoeffExpr::Closed(f, Slot::Virtual), 1.0).re;
        assert!((v - (r3.cosh() - r3.sinh() / r3)).abs() < 1e-14);
        // independent value: python math.cosh(r) - math.sinh(r)/r with r = sqrt(3)
        assert!((v - 1.333_990_876_609_259_6).abs() < 1e-12);
    }

    #[test]
    fn series_tracks_closed_form() {
        let g = GroupSpec::su2();
        let c = crossing_coeffs(&g, CrossingType::Over, 8).unwrap();
        let (v, sm) = ClosedForm::new(g, CrossingType::Over).eval(0.05);
        assert!((c.c_virtual.eval_at(0.05).re - v).abs() < 1e-10);
        assert!((c.c_smooth.eval_at(0.05).re - sm).abs() < 1e-10);
    }

    #[test]
    fn generators() {
        let su2 = derived_generator(&GroupSpec::su2(), CrossingType::Over);
        assert_eq!(
            (su2.a, su2.b, su2.c, su2.d),
            (rat(-1, 1), rat(2, 1), rat(1, 1), rat(1, 1))
        );
        let gl = derived_generator(&GroupSpec::gln(5), CrossingType::Over);
        assert_eq!((gl.a, gl.b, gl.c, gl.d), (rat(0, 1), rat(2, 1), rat(1, 1), rat(5, 1)));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn table_json_shape() {
        let t = CoeffTable::new(&GroupSpec::su2(), CrossingType::Over, 2).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["virtual"], serde_json::json!(["1", "-1/2", "3/8"]));
        assert_eq!(v["type"], "over");
        assert_eq!(v["K"], 2);
        let back: CoeffTable = serde_json::from_value(v).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn display() {
        let c = crossing_coeffs(&GroupSpec::su2(), CrossingType::Over, 2).unwrap();
        assert_eq!(c.c_virtual.to_string(), "1 - 1/2*h + 3/8*h^2 + O(h^3)");
    }
}
