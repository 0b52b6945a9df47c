//! High-precision real and complex evaluation used to cross-check the exact
//! results numerically.
//!
//! Values are binary fixed point: a [`Real`] is `mant * 2^-prec`. Every
//! published number is computed at two working precisions (`B` and `2B` bits,
//! plus guard bits) and rejected unless both runs agree.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_num::Rational;
use crate::expr::Expr;
use crate::poly::{RatPoly, UniPoly};

pub const DEFAULT_BITS: u32 = 256;
const GUARD_BITS: u32 = 32;

/// Fixed-point real `mant * 2^-prec`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Real {
    mant: BigInt,
    prec: u32,
}

/// `x / 2^s` rounded to nearest.
fn round_shift(x: BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x;
    }
    (x + (BigInt::one() << (s - 1))) >> s as usize
}

impl Real {
    pub fn zero(prec: u32) -> Real {
        Real {
            mant: BigInt::zero(),
            prec,
        }
    }

    pub fn one(prec: u32) -> Real {
        Real {
            mant: BigInt::one() << prec as usize,
            prec,
        }
    }

    pub fn from_int(n: i64, prec: u32) -> Real {
        Real {
            mant: BigInt::from(n) << prec as usize,
            prec,
        }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Real {
        let num = q.numer() << (prec as usize + 1);
        let den = q.denom() << 1usize;
        // round half up: floor((2n*2^prec + d) / 2d)
        let mant = (num + q.denom()).div_floor(&den);
        Real { mant, prec }
    }

    /// `2^l`, accurate to f64 precision.
    fn from_log2(l: f64, prec: u32) -> Real {
        let int = l.floor();
        let frac = l - int;
        let m = BigInt::from((frac.exp2() * (1u64 << 52) as f64) as u64);
        let e = int as i64 - 52 + prec as i64;
        let mant = if e >= 0 {
            m << e as usize
        } else {
            m >> (-e) as usize
        };
        Real { mant, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Real {
        let mant = match prec.cmp(&self.prec) {
            Ordering::Equal => self.mant.clone(),
            Ordering::Greater => &self.mant << (prec - self.prec) as usize,
            Ordering::Less => round_shift(self.mant.clone(), self.prec - prec),
        };
        Real { mant, prec }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Real {
        Real {
            mant: self.mant.abs(),
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Real {
        Real {
            mant: -&self.mant,
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &Real) -> Real {
        debug_assert_eq!(self.prec, o.prec);
        Real {
            mant: &self.mant + &o.mant,
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Real) -> Real {
        debug_assert_eq!(self.prec, o.prec);
        Real {
            mant: &self.mant - &o.mant,
            prec: self.prec,
        }
    }

    pub fn mul(&self, o: &Real) -> Real {
        debug_assert_eq!(self.prec, o.prec);
        Real {
            mant: round_shift(&self.mant * &o.mant, self.prec),
            prec: self.prec,
        }
    }

    pub fn mul_int(&self, k: i64) -> Real {
        Real {
            mant: &self.mant * k,
            prec: self.prec,
        }
    }

    pub fn div(&self, o: &Real) -> Result<Real> {
        debug_assert_eq!(self.prec, o.prec);
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = (&self.mant << (self.prec as usize + 1)) + &o.mant;
        let mant = num.div_floor(&(&o.mant << 1usize));
        Ok(Real {
            mant,
            prec: self.prec,
        })
    }

    pub fn div_int(&self, k: i64) -> Real {
        let k = BigInt::from(k);
        let mant = ((&self.mant << 1usize) + &k).div_floor(&(k << 1usize));
        Real {
            mant,
            prec: self.prec,
        }
    }

    pub fn pow(&self, e: u32) -> Real {
        let mut acc = Real::one(self.prec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Approximate `log2 |x|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.mant.is_zero() {
            return f64::NEG_INFINITY;
        }
        let m = self.mant.abs();
        let shift = m.bits().saturating_sub(64);
        let top = (&m >> shift as usize).to_f64().unwrap_or(f64::MAX);
        top.log2() + shift as f64 - self.prec as f64
    }

    pub fn to_f64(&self) -> f64 {
        let sign = if self.is_negative() { -1.0 } else { 1.0 };
        if self.is_zero() {
            0.0
        } else {
            sign * self.log2_abs().exp2()
        }
    }

    /// Real `n`-th root by Newton's method from an f64 seed. Odd roots of
    /// negative numbers use `-(|x|^(1/n))`.
    pub fn nth_root(&self, n: u32) -> Result<Real> {
        if n == 0 {
            return Err(Error::Numeric("zeroth root".into()));
        }
        if self.is_negative() {
            if n.is_multiple_of(2) {
                return Err(Error::EvenRootOfNegative(self.to_decimal(20)));
            }
            return Ok(self.abs().nth_root(n)?.neg());
        }
        if self.is_zero() || n == 1 {
            return Ok(self.clone());
        }
        let mut x = Real::from_log2(self.log2_abs() / n as f64, self.prec);
        let ulps = BigInt::from(4 * n);
        for _ in 0..200 {
            // x <- ((n-1) x + a / x^(n-1)) / n
            let next = x
                .mul_int(n as i64 - 1)
                .add(&self.div(&x.pow(n - 1))?)
                .div_int(n as i64);
            let step = (&next.mant - &x.mant).abs();
            x = next;
            if step <= ulps {
                break;
            }
        }
        Ok(x)
    }

    pub fn sqrt(&self) -> Result<Real> {
        self.nth_root(2)
    }

    /// Decimal rendering with `digits` fractional digits (rounded).
    pub fn to_decimal(&self, digits: usize) -> String {
        let scaled = round_shift(
            self.mant.abs() * num_traits::pow(BigInt::from(10), digits),
            self.prec,
        );
        let text = format!("{:0>width$}", scaled.to_string(), width = digits + 1);
        let (int, frac) = text.split_at(text.len() - digits);
        let sign = if self.is_negative() && !scaled.is_zero() {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.prec == other.prec).then(|| self.mant.cmp(&other.mant))
    }
}

/// `|a - b| <= 2^-(bits - 16) * max(1, |a|)`, compared at `a`'s precision.
pub fn agree(a: &Real, b: &Real, bits: u32) -> bool {
    let b = b.with_prec(a.prec);
    let diff = a.sub(&b).abs();
    let scale = if a.log2_abs() > 0.0 {
        a.abs()
    } else {
        Real::one(a.prec)
    };
    let tol = scale.mul(&Real::from_log2(-(bits as f64 - 16.0), a.prec));
    diff <= tol
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Complex {
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Complex {
        let prec = re.prec;
        Complex {
            re,
            im: Real::zero(prec),
        }
    }

    pub fn one(prec: u32) -> Complex {
        Complex::from_real(Real::one(prec))
    }

    fn from_f64_parts(re: f64, im: f64, prec: u32) -> Complex {
        let part = |v: f64| {
            if v == 0.0 {
                Real::zero(prec)
            } else {
                let r = Real::from_log2(v.abs().log2(), prec);
                if v < 0.0 {
                    r.neg()
                } else {
                    r
                }
            }
        };
        Complex {
            re: part(re),
            im: part(im),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec
    }

    pub fn with_prec(&self, prec: u32) -> Complex {
        Complex {
            re: self.re.with_prec(prec),
            im: self.im.with_prec(prec),
        }
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        Complex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, k: &Real) -> Complex {
        Complex {
            re: self.re.mul(k),
            im: self.im.mul(k),
        }
    }

    pub fn conj(&self) -> Complex {
        Complex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn norm_sq(&self) -> Real {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Real {
        self.norm_sq().sqrt().expect("norm is nonnegative")
    }

    /// `|re| + |im|`, an upper bound on the modulus that cannot underflow.
    pub fn abs_bound(&self) -> Real {
        self.re.abs().add(&self.im.abs())
    }

    pub fn div(&self, o: &Complex) -> Result<Complex> {
        let n = o.norm_sq();
        let num = self.mul(&o.conj());
        Ok(Complex {
            re: num.re.div(&n)?,
            im: num.im.div(&n)?,
        })
    }

    pub fn pow(&self, e: u32) -> Complex {
        let mut acc = Complex::one(self.prec());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Principal `n`-th root by Newton's method seeded from the f64 polar form.
    pub fn principal_root(&self, n: u32) -> Result<Complex> {
        let prec = self.prec();
        let (re, im) = (self.re.to_f64(), self.im.to_f64());
        let (r, theta) = (re.hypot(im), im.atan2(re));
        if r == 0.0 {
            return Ok(Complex::from_real(Real::zero(prec)));
        }
        let rr = r.powf(1.0 / n as f64);
        let t = theta / n as f64;
        let seed = Complex::from_f64_parts(rr * t.cos(), rr * t.sin(), prec);
        newton_root(self, n, seed)
    }

    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (self.re.to_decimal(digits), self.im.to_decimal(digits))
    }
}

/// Refines `seed` toward a zero of `w^n - target`.
fn newton_root(target: &Complex, n: u32, seed: Complex) -> Result<Complex> {
    let ulps = BigInt::from(8 * n);
    let mut w = seed;
    for _ in 0..200 {
        let f = w.pow(n).sub(target);
        let df = w.pow(n - 1).scale(&Real::from_int(n as i64, w.prec()));
        let step = f.div(&df)?;
        w = w.sub(&step);
        if step.re.mant.abs() <= ulps && step.im.mant.abs() <= ulps {
            break;
        }
    }
    Ok(w)
}

/// Sum of `sign^k x^(2k+1)/(2k+1)`-type series for `atan(1/x)` in fixed point.
fn atan_inv(x: u64, prec: u32) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut power = (BigInt::one() << prec as usize) / x;
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / (2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// `pi` by Machin's formula.
pub fn pi(prec: u32) -> Real {
    let wp = prec + 16;
    let mant = atan_inv(5, wp) * 16 - atan_inv(239, wp) * 4;
    Real { mant, prec: wp }.with_prec(prec)
}

/// `(cos x, sin x)` by Taylor series.
pub fn cos_sin(x: &Real) -> (Real, Real) {
    let prec = x.prec;
    let wp = prec + 16;
    let x = x.with_prec(wp);
    let x2 = x.mul(&x);
    let mut cos = Real::one(wp);
    let mut sin = x.clone();
    let mut c_term = Real::one(wp);
    let mut s_term = x.clone();
    let mut n: i64 = 1;
    loop {
        c_term = c_term.mul(&x2).div_int((2 * n - 1) * (2 * n)).neg();
        s_term = s_term.mul(&x2).div_int((2 * n) * (2 * n + 1)).neg();
        if c_term.is_zero() && s_term.is_zero() {
            break;
        }
        cos = cos.add(&c_term);
        sin = sin.add(&s_term);
        n += 1;
    }
    (cos.with_prec(prec), sin.with_prec(prec))
}

/// `exp(2 pi i / p)` from the cosine/sine series.
pub fn root_of_unity_series(p: u32, prec: u32) -> Complex {
    let theta = pi(prec + 8).mul_int(2).div_int(p as i64);
    let (c, s) = cos_sin(&theta);
    Complex::new(c, s).with_prec(prec)
}

/// `exp(2 pi i / p)` by Newton's method on `w^p - 1` from an f64 seed.
pub fn root_of_unity_newton(p: u32, prec: u32) -> Result<Complex> {
    let t = 2.0 * std::f64::consts::PI / p as f64;
    let seed = Complex::from_f64_parts(t.cos(), t.sin(), prec);
    newton_root(&Complex::one(prec), p, seed)
}

fn poly_rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let db = b.degree().expect("nonzero divisor");
    let lead = b.leading().unwrap().clone();
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let q = r.leading().unwrap() / &lead;
        r = r.sub(&b.mul(&RatPoly::monomial(q, dr - db)));
    }
    r
}

fn derivative(f: &RatPoly) -> RatPoly {
    UniPoly::new(
        f.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
            .collect(),
    )
}

struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    fn new(f: &RatPoly) -> SturmChain {
        let mut chain = vec![f.clone(), derivative(f)];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = poly_rem(&chain[n - 2], &chain[n - 1]).negate();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let signs: Vec<i8> = signs.filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    fn at(&self, x: &Rational) -> usize {
        SturmChain::variations(self.chain.iter().map(|p| sign(&p.eval(x))))
    }

    fn at_infinity(&self) -> usize {
        SturmChain::variations(self.chain.iter().map(|p| sign(p.leading().unwrap())))
    }
}

fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_negative() {
        -1
    } else {
        1
    }
}

/// Number of distinct real zeros of `f` strictly above `x`.
fn zeros_above(f: &RatPoly, chain: &SturmChain, x: &Rational) -> usize {
    if !f.eval(x).is_zero() {
        return chain.at(x) - chain.at_infinity();
    }
    // deflate the zero at x, then count for the quotient
    let mut g = f.clone();
    while g.eval(x).is_zero() {
        g = synthetic_division(&g, x);
    }
    if g.degree() == Some(0) {
        return 0;
    }
    let sub = SturmChain::new(&g);
    sub.at(x) - sub.at_infinity()
}

/// `f / (Z - x)` for a zero `x` of `f`.
fn synthetic_division(f: &RatPoly, x: &Rational) -> RatPoly {
    let n = f.coeffs().len();
    let mut out = vec![Rational::zero(); n - 1];
    let mut carry = Rational::zero();
    for k in (1..n).rev() {
        carry = &carry * x + &f.coeffs()[k];
        out[k - 1] = carry.clone();
    }
    UniPoly::new(out)
}

/// Largest real zero of `f`, by Sturm-guided bisection on exact dyadic
/// rationals, to within `2^-(prec+4)`.
pub fn largest_real_root(f: &RatPoly, prec: u32) -> Result<Real> {
    let degree = f.degree().ok_or(Error::ZeroPolynomial)?;
    if degree == 0 {
        return Err(Error::Numeric("constant polynomial has no root".into()));
    }
    let chain = SturmChain::new(f);
    let lead = f.leading().unwrap();
    let bound = Rational::one()
        + f.coeffs()[..degree]
            .iter()
            .map(|c| (c / lead).abs())
            .max()
            .unwrap_or_default();
    let (mut lo, mut hi) = (-bound.clone(), bound);
    if zeros_above(f, &chain, &lo) == 0 {
        return Err(Error::Numeric(format!("{f} has no real zero")));
    }
    let width = Rational::new(BigInt::one(), BigInt::one() << (prec as usize + 4));
    while &hi - &lo > width {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        let above = zeros_above(f, &chain, &mid);
        if above >= 1 {
            lo = mid;
        } else if f.eval(&mid).is_zero() {
            return Ok(Real::from_rational(&mid, prec));
        } else {
            hi = mid;
        }
    }
    Ok(Real::from_rational(
        &((lo + hi) / Rational::from_integer(2.into())),
        prec,
    ))
}

struct Evaluator {
    prec: u32,
    roots: HashMap<Vec<Rational>, Real>,
}

impl Evaluator {
    fn eval(&mut self, e: &Expr) -> Result<Real> {
        Ok(match e {
            Expr::Rational { value } => Real::from_rational(value, self.prec),
            Expr::Sqrt { arg } => self.eval(arg)?.nth_root(2)?,
            Expr::NthRoot { n, arg } => self.eval(arg)?.nth_root(*n)?,
            Expr::Add { terms } => {
                let mut acc = Real::zero(self.prec);
                for t in terms {
                    acc = acc.add(&self.eval(t)?);
                }
                acc
            }
            Expr::Mul { factors } => {
                let mut acc = Real::one(self.prec);
                for t in factors {
                    acc = acc.mul(&self.eval(t)?);
                }
                acc
            }
            Expr::Pow { base, exp } => self.eval(base)?.pow(*exp),
            Expr::RealRoot { poly } => {
                if let Some(v) = self.roots.get(poly) {
                    return Ok(v.clone());
                }
                let v = largest_real_root(&UniPoly::new(poly.clone()), self.prec)?;
                self.roots.insert(poly.clone(), v.clone());
                v
            }
        })
    }
}

/// Evaluates `e` at working precision `prec` (no agreement check).
pub fn eval_at(e: &Expr, prec: u32) -> Result<Real> {
    Evaluator {
        prec,
        roots: HashMap::new(),
    }
    .eval(e)
}

/// Runs `f` at `bits` and `2 * bits` (plus guard bits) and accepts the result
/// only if every returned value agrees. Returns the higher-precision values.
pub fn dual_precision<T, F>(bits: u32, f: F) -> Result<Vec<Real>>
where
    F: Fn(u32) -> Result<T>,
    T: IntoIterator<Item = Real>,
{
    let low: Vec<Real> = f(bits + GUARD_BITS)?.into_iter().collect();
    let high: Vec<Real> = f(2 * bits + GUARD_BITS)?.into_iter().collect();
    if low.len() != high.len() || !low.iter().zip(&high).all(|(l, h)| agree(l, h, bits)) {
        return Err(Error::PrecisionDisagreement {
            low: bits,
            high: 2 * bits,
        });
    }
    Ok(high)
}

/// Real value of `e`, accepted only if evaluations at `bits` and `2*bits` agree.
pub fn eval_expression(e: &Expr, bits: u32) -> Result<Real> {
    Ok(dual_precision(bits, |prec| eval_at(e, prec).map(|v| [v]))?.remove(0))
}

/// Thresholds for numeric checks, as powers of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumericConfig {
    pub bits: u32,
    /// Residuals must be below `2^-tolerance_exp`; defaults to `bits - 56`.
    pub tolerance_exp: Option<u32>,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            bits: DEFAULT_BITS,
            tolerance_exp: None,
        }
    }
}

impl NumericConfig {
    pub fn with_bits(bits: u32) -> Self {
        NumericConfig {
            bits,
            tolerance_exp: None,
        }
    }

    pub fn tolerance_exp(&self) -> u32 {
        self.tolerance_exp.unwrap_or(self.bits.saturating_sub(56))
    }
}

const DIGITS: usize = 40;

fn finite_log2(x: &Real) -> Option<f64> {
    (!x.is_zero()).then(|| x.log2_abs())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchResidual {
    pub value: String,
    /// `log2 |(v^p - d)^2 - R|`; `None` when the residual is exactly zero.
    pub residual_log2: Option<f64>,
    /// `+1` when `v^p - d` matches `+sqrt(R)`, `-1` for `-sqrt(R)`, `0` for neither.
    pub radical_sign: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub bits: u32,
    pub threshold_log2: i64,
    pub branches: Vec<BranchResidual>,
    pub max_residual_log2: Option<f64>,
    /// One branch lies over `+sqrt(R)` and the other over `-sqrt(R)`.
    pub pinned: bool,
    pub passed: bool,
}

/// `|(v^p - d)^2 - R|` for every branch value `v`, plus the check that the
/// branches split between `v^p - d = +sqrt(R)` and `-sqrt(R)`. Real mode only:
/// `R` must be positive.
pub fn branch_residual(
    branches: &[Expr],
    p: u32,
    d: &Rational,
    r: &Rational,
    config: &NumericConfig,
) -> Result<ResidualReport> {
    if !r.is_positive() {
        return Err(Error::Numeric(
            "R < 0 makes the branch values complex; residual check is real-only".into(),
        ));
    }
    let bits = config.bits;
    let values = dual_precision(bits, |prec| {
        let mut ev = Evaluator {
            prec,
            roots: HashMap::new(),
        };
        let mut out = Vec::new();
        for b in branches {
            let v = ev.eval(b)?;
            let shifted = v.pow(p).sub(&Real::from_rational(d, prec));
            let residual = shifted
                .mul(&shifted)
                .sub(&Real::from_rational(r, prec))
                .abs();
            out.extend([v, shifted, residual]);
        }
        Ok(out)
    })?;
    let prec = values.first().map(Real::prec).unwrap_or(bits);
    let tol_exp = config.tolerance_exp();
    let sqrt_r = Real::from_rational(r, prec).sqrt()?;
    let tol = Real::from_log2(-(tol_exp as f64), prec).mul(&if sqrt_r.log2_abs() > 0.0 {
        sqrt_r.clone()
    } else {
        Real::one(prec)
    });
    let mut out = Vec::new();
    for chunk in values.chunks(3) {
        let (v, shifted, residual) = (&chunk[0], &chunk[1], &chunk[2]);
        let radical_sign = if shifted.sub(&sqrt_r).abs() <= tol {
            1
        } else if shifted.add(&sqrt_r).abs() <= tol {
            -1
        } else {
            0
        };
        out.push(BranchResidual {
            value: v.to_decimal(DIGITS),
            residual_log2: finite_log2(residual),
            radical_sign,
        });
    }
    let max = out.iter().filter_map(|b| b.residual_log2).reduce(f64::max);
    let pinned = out.len() == 2 && {
        let mut signs: Vec<i8> = out.iter().map(|b| b.radical_sign).collect();
        signs.sort();
        signs == [-1, 1]
    };
    let threshold_log2 = -(tol_exp as i64);
    Ok(ResidualReport {
        bits,
        threshold_log2,
        passed: pinned && max.is_none_or(|m| m < threshold_log2 as f64),
        branches: out,
        max_residual_log2: max,
        pinned,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BijectionReport {
    pub p: u32,
    pub bits: u32,
    /// `(re, im)` decimal strings of `u_k = z^m (y w^k + y' w^-k)`, `w = exp(2 pi i/p)`.
    pub u_values: Vec<(String, String)>,
    pub min_pairwise_distance_log2: f64,
    pub max_relative_residual_log2: Option<f64>,
    pub threshold_log2: i64,
    pub distinct: bool,
    pub all_zeros: bool,
    /// Every rational zero of `f` appears among the `u_k`.
    pub rational_roots_matched: bool,
    /// `u_{p-k}` is the complex conjugate of `u_k` (expected when `y` is real).
    pub conjugate_symmetric: bool,
    pub passed: bool,
}

/// Numerically checks that `y -> z^m (y + z/y)` maps the `p` zeros of
/// `h = Z^p - d - sqrt(R)` onto `p` distinct zeros of `f`, with `y` the
/// principal root of `d + sqrt(R)` rotated by powers of a primitive `p`-th
/// root of unity and `z` the real `p`-th root of `D`.
pub fn verify_bijection(
    p: u32,
    d: &Rational,
    r: &Rational,
    f: &RatPoly,
    config: &NumericConfig,
) -> Result<BijectionReport> {
    let bits = config.bits;
    let big_d = d * d - r;
    let m = (p - 1) / 2;
    let flat = dual_precision(bits, |prec| {
        let radicand = if r.is_negative() {
            Complex::new(
                Real::from_rational(d, prec),
                Real::from_rational(&-r, prec).sqrt()?,
            )
        } else {
            Complex::from_real(
                Real::from_rational(d, prec).add(&Real::from_rational(r, prec).sqrt()?),
            )
        };
        let y = radicand.principal_root(p)?;
        let z = Real::from_rational(&big_d, prec).nth_root(p)?;
        let y_prime = Complex::from_real(z.clone()).div(&y)?;
        let zeta = root_of_unity_series(p, prec);
        let zm = z.pow(m);
        let mut out = Vec::new();
        let mut rot = Complex::one(prec);
        for _ in 0..p {
            let u = y.mul(&rot).add(&y_prime.mul(&rot.conj())).scale(&zm);
            out.push(u.re);
            out.push(u.im);
            rot = rot.mul(&zeta);
        }
        Ok(out)
    })?;
    let prec = flat[0].prec();
    let us: Vec<Complex> = flat
        .chunks(2)
        .map(|c| Complex::new(c[0].clone(), c[1].clone()))
        .collect();

    let mut min_dist = f64::INFINITY;
    for i in 0..us.len() {
        for j in i + 1..us.len() {
            min_dist = min_dist.min(us[i].sub(&us[j]).abs().log2_abs());
        }
    }
    let coeffs: Vec<Real> = f
        .coeffs()
        .iter()
        .map(|c| Real::from_rational(c, prec))
        .collect();
    let mut max_rel: Option<f64> = None;
    for u in &us {
        let mut acc = Complex::from_real(Real::zero(prec));
        for c in coeffs.iter().rev() {
            acc = acc.mul(u).add(&Complex::from_real(c.clone()));
        }
        let abs_u = u.abs();
        let scale = coeffs
            .iter()
            .enumerate()
            .fold(Real::zero(prec), |s, (k, c)| {
                s.add(&c.abs().mul(&abs_u.pow(k as u32)))
            });
        if let Some(l) = finite_log2(&acc.abs_bound()) {
            let rel = l - scale.log2_abs();
            max_rel = Some(max_rel.map_or(rel, |m: f64| m.max(rel)));
        }
    }
    let tol_exp = config.tolerance_exp();
    let threshold_log2 = -(tol_exp as i64);
    let distinct = min_dist > threshold_log2 as f64 + 16.0;
    let all_zeros = max_rel.is_none_or(|m| m < threshold_log2 as f64);
    let conj_tol = Real::from_log2(-(bits as f64 - 16.0), prec);
    let rational_roots_matched = crate::poly::rational_roots(f)?.iter().all(|q| {
        let q = Real::from_rational(q, prec);
        us.iter()
            .any(|u| u.re.sub(&q).abs() <= conj_tol && u.im.abs() <= conj_tol)
    });
    let conjugate_symmetric = (1..us.len()).all(|k| {
        let diff = us[k].sub(&us[us.len() - k].conj());
        diff.re.abs() <= conj_tol && diff.im.abs() <= conj_tol
    });
    Ok(BijectionReport {
        p,
        bits,
        u_values: us.iter().map(|u| u.to_decimal(DIGITS)).collect(),
        min_pairwise_distance_log2: min_dist,
        max_relative_residual_log2: max_rel,
        threshold_log2,
        distinct,
        all_zeros,
        rational_roots_matched,
        conjugate_symmetric,
        passed: distinct && all_zeros && rational_roots_matched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_num::{int, rat};

    #[test]
    fn rational_leaf_is_exact() {
        let v = eval_expression(&Expr::rational(rat(7, 2)), 256).unwrap();
        assert_eq!(v.to_decimal(5), "3.50000");
        assert_eq!(v.with_prec(1).to_decimal(1), "3.5");
    }

    #[test]
    fn nth_root_matches_integer_root() {
        // oracle: floor of the exact integer root of mant * 2^(prec (n-1))
        for (q, n) in [
            (int(2), 2u32),
            (int(5), 3),
            (rat(-1, 3), 7),
            (int(4656966), 2),
        ] {
            let prec = 300;
            let got = Real::from_rational(&q, prec).nth_root(n).unwrap();
            let scaled =
                Real::from_rational(&q.abs(), prec).mant << (prec as usize * (n as usize - 1));
            let oracle = scaled.nth_root(n);
            let oracle = if q.is_negative() { -oracle } else { oracle };
            assert!(
                (&got.mant - &oracle).abs() <= BigInt::from(8),
                "{q} root {n}"
            );
        }
        assert!(matches!(
            Real::from_int(-4, 64).sqrt(),
            Err(Error::EvenRootOfNegative(_))
        ));
    }

    #[test]
    fn pi_digits() {
        assert_eq!(pi(200).to_decimal(30), "3.141592653589793238462643383280");
    }

    #[test]
    fn roots_of_unity_two_ways() {
        for p in [3u32, 5, 7, 11, 13] {
            let prec = 256;
            let a = root_of_unity_series(p, prec);
            let b = root_of_unity_newton(p, prec).unwrap();
            let tol = Real::from_log2(-(prec as f64 - 16.0), prec);
            assert!(
                a.sub(&b).re.abs() <= tol && a.sub(&b).im.abs() <= tol,
                "p = {p}"
            );
            let one = a.pow(p).sub(&Complex::one(prec));
            assert!(one.re.abs() <= tol && one.im.abs() <= tol);
        }
    }

    #[test]
    fn real_root_of_demoivre_quintic() {
        let f = RatPoly::from_ints(&[-4, 5, 0, 5, 0, 1]);
        let u = largest_real_root(&f, 200).unwrap();
        let fu = f.coeffs().iter().rev().fold(Real::zero(200), |acc, c| {
            acc.mul(&u).add(&Real::from_rational(c, 200))
        });
        assert!(fu.log2_abs() < -180.0);
        // multiple and dyadic zeros: (Z - 1/2)^2 (Z + 3)
        let g = RatPoly::from_ints(&[1, -4, 4]).mul(&RatPoly::from_ints(&[3, 1]));
        assert_eq!(largest_real_root(&g, 64).unwrap().to_decimal(6), "0.500000");
        let h = RatPoly::from_ints(&[1, 0, 1]);
        assert!(largest_real_root(&h, 64).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Real::from_rational(&rat(-1, 8), 64).to_decimal(3), "-0.125");
        assert_eq!(
            Real::from_rational(&rat(-1, 3), 64).to_decimal(4),
            "-0.3333"
        );
        assert_eq!(Real::from_int(12, 64).to_decimal(0), "12");
    }
}
