//! Dense univariate polynomials in `Z`.
//!
//! The coefficient ring is abstracted by [`Coeff`]: exact rationals, elements of a
//! quadratic extension (where mixing radicands is an error), and [`BiCoeff`], the
//! ring `Q[d, D]` used to check identities for symbolic `d` and `D`.

use std::collections::BTreeMap;
use std::convert::Infallible;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_num::{positive_divisors, QuadExt, Rational, DEFAULT_TRIAL_BOUND};

pub trait Coeff: Clone + PartialEq + fmt::Debug {
    type Error: fmt::Debug;

    fn is_zero_coeff(&self) -> bool;
    /// Additive identity in the same ring (same radicand for quadratic elements).
    fn zero_like(&self) -> Self;
    fn try_add(&self, other: &Self) -> std::result::Result<Self, Self::Error>;
    fn try_mul(&self, other: &Self) -> std::result::Result<Self, Self::Error>;
    fn negate(&self) -> Self;
    /// Sign and magnitude for rendering: `(negative, magnitude, magnitude_is_one)`.
    fn render(&self) -> (bool, String, bool);
}

impl Coeff for Rational {
    type Error = Infallible;

    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn try_add(&self, other: &Self) -> std::result::Result<Self, Infallible> {
        Ok(self + other)
    }
    fn try_mul(&self, other: &Self) -> std::result::Result<Self, Infallible> {
        Ok(self * other)
    }
    fn negate(&self) -> Self {
        -self
    }
    fn render(&self) -> (bool, String, bool) {
        let mag = self.abs();
        (self.is_negative(), mag.to_string(), mag.is_one())
    }
}

impl Coeff for QuadExt {
    type Error = Error;

    fn is_zero_coeff(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        QuadExt::from_rational(Rational::zero(), self.radicand().clone())
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        self.checked_add(other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn render(&self) -> (bool, String, bool) {
        if Zero::is_zero(self.sqrt_part()) {
            return self.rational_part().render();
        }
        (false, format!("({self})"), false)
    }
}

/// Element of `Q[d, D]`: sparse map from `(deg_d, deg_D)` to a nonzero rational.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiCoeff {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiCoeff {
    pub fn zero() -> Self {
        BiCoeff::default()
    }

    pub fn constant(c: Rational) -> Self {
        BiCoeff::monomial(c, 0, 0)
    }

    /// `c * d^i * D^j`
    pub fn monomial(c: Rational, deg_d: u32, deg_big_d: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert((deg_d, deg_big_d), c);
        }
        BiCoeff { terms }
    }

    pub fn d() -> Self {
        BiCoeff::monomial(Rational::one(), 1, 0)
    }

    pub fn big_d() -> Self {
        BiCoeff::monomial(Rational::one(), 0, 1)
    }

    /// `R = d^2 - D`.
    pub fn r() -> Self {
        BiCoeff::monomial(Rational::one(), 2, 0).add(&BiCoeff::monomial(-Rational::one(), 0, 1))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, deg_d: u32, deg_big_d: u32) -> Rational {
        self.terms
            .get(&(deg_d, deg_big_d))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some((c, j))` when the element is `c * D^j` with no `d`.
    pub fn as_big_d_monomial(&self) -> Option<(Rational, u32)> {
        match self.terms.iter().collect::<Vec<_>>().as_slice() {
            [(&(0, j), c)] => Some(((*c).clone(), j)),
            _ => None,
        }
    }

    pub fn add(&self, other: &BiCoeff) -> BiCoeff {
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let entry = terms.entry(*k).or_insert_with(Rational::zero);
            *entry += v;
            if Zero::is_zero(entry) {
                terms.remove(k);
            }
        }
        BiCoeff { terms }
    }

    pub fn sub(&self, other: &BiCoeff) -> BiCoeff {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiCoeff {
        BiCoeff {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }

    pub fn mul(&self, other: &BiCoeff) -> BiCoeff {
        let mut terms: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for ((i1, j1), v1) in &self.terms {
            for ((i2, j2), v2) in &other.terms {
                *terms
                    .entry((i1 + i2, j1 + j2))
                    .or_insert_with(Rational::zero) += v1 * v2;
            }
        }
        terms.retain(|_, v| !Zero::is_zero(v));
        BiCoeff { terms }
    }

    pub fn scale(&self, c: &Rational) -> BiCoeff {
        if Zero::is_zero(c) {
            return BiCoeff::zero();
        }
        BiCoeff {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BiCoeff {
        (0..e).fold(BiCoeff::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, d: &Rational, big_d: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|((i, j), c)| {
                c * num_traits::pow(d.clone(), *i as usize)
                    * num_traits::pow(big_d.clone(), *j as usize)
            })
            .fold(Rational::zero(), |a, b| a + b)
    }
}

fn render_monomial(deg_d: u32, deg_big_d: u32) -> String {
    let mut parts = Vec::new();
    match deg_d {
        0 => {}
        1 => parts.push("d".to_string()),
        n => parts.push(format!("d^{n}")),
    }
    match deg_big_d {
        0 => {}
        1 => parts.push("D".to_string()),
        n => parts.push(format!("D^{n}")),
    }
    parts.join("*")
}

impl fmt::Display for BiCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first
        for (n, ((i, j), c)) in self.terms.iter().rev().enumerate() {
            let mono = render_monomial(*i, *j);
            let (neg, mag) = (c.is_negative(), c.abs());
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            match (n, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl Coeff for BiCoeff {
    type Error = Infallible;

    fn is_zero_coeff(&self) -> bool {
        BiCoeff::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BiCoeff::zero()
    }
    fn try_add(&self, other: &Self) -> std::result::Result<Self, Infallible> {
        Ok(self.add(other))
    }
    fn try_mul(&self, other: &Self) -> std::result::Result<Self, Infallible> {
        Ok(self.mul(other))
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn render(&self) -> (bool, String, bool) {
        if self.terms.len() == 1 {
            let (&(i, j), c) = self.terms.iter().next().unwrap();
            if i == 0 && j == 0 {
                return c.render();
            }
            let mono = render_monomial(i, j);
            let mag = c.abs();
            let body = if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            return (c.is_negative(), body, false);
        }
        (false, format!("({self})"), false)
    }
}

/// Dense polynomial in `Z`; index = degree, top coefficient nonzero, zero
/// polynomial = no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

pub type RatPoly = UniPoly<Rational>;
pub type QuadPoly = UniPoly<QuadExt>;
pub type BiCoeffPoly = UniPoly<BiCoeff>;

fn infallible<T>(r: std::result::Result<T, Infallible>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => match e {},
    }
}

impl<C: Coeff> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_coeff()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Option<&C> {
        self.coeffs.get(k)
    }

    pub fn try_add(&self, other: &Self) -> std::result::Result<Self, C::Error> {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (o, s) in out.iter_mut().zip(short) {
            *o = o.try_add(s)?;
        }
        Ok(UniPoly::new(out))
    }

    pub fn try_sub(&self, other: &Self) -> std::result::Result<Self, C::Error> {
        self.try_add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(Coeff::negate).collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> std::result::Result<Self, C::Error> {
        if self.is_zero() || other.is_zero() {
            return Ok(UniPoly::zero());
        }
        let mut out: Vec<Option<C>> = vec![None; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = a.try_mul(b)?;
                out[i + j] = Some(match out[i + j].take() {
                    Some(acc) => acc.try_add(&prod)?,
                    None => prod,
                });
            }
        }
        Ok(UniPoly::new(
            out.into_iter()
                .map(|c| c.expect("every slot is filled"))
                .collect(),
        ))
    }

    pub fn try_scale(&self, k: &C) -> std::result::Result<Self, C::Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.try_mul(k))
            .collect::<std::result::Result<_, _>>()?;
        Ok(UniPoly::new(coeffs))
    }

    /// Horner evaluation; the zero polynomial evaluates to zero in `x`'s ring.
    pub fn try_eval(&self, x: &C) -> std::result::Result<C, C::Error> {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(x)?.try_add(c)?;
        }
        Ok(acc)
    }

    /// `c * Z^k`
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero_coeff() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        UniPoly { coeffs }
    }

    pub fn map<D: Coeff>(&self, f: impl FnMut(&C) -> D) -> UniPoly<D> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Coeff<Error = Infallible>> UniPoly<C> {
    pub fn add(&self, other: &Self) -> Self {
        infallible(self.try_add(other))
    }
    pub fn sub(&self, other: &Self) -> Self {
        infallible(self.try_sub(other))
    }
    pub fn mul(&self, other: &Self) -> Self {
        infallible(self.try_mul(other))
    }
    pub fn scale(&self, k: &C) -> Self {
        infallible(self.try_scale(k))
    }
    pub fn eval(&self, x: &C) -> C {
        infallible(self.try_eval(x))
    }
}

impl<C: Coeff> fmt::Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero_coeff() {
                continue;
            }
            let (neg, mag, unit) = c.render();
            let var = match k {
                0 => String::new(),
                1 => "Z".to_string(),
                _ => format!("Z^{k}"),
            };
            let term = match (k, unit) {
                (0, _) => mag,
                (_, true) => var,
                (_, false) => format!("{mag}*{var}"),
            };
            match (first, neg) {
                (true, false) => write!(f, "{term}")?,
                (true, true) => write!(f, "-{term}")?,
                (false, false) => write!(f, " + {term}")?,
                (false, true) => write!(f, " - {term}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl RatPoly {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RatPoly::from_ints(&[1]);
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

    /// `X^k` as a rational polynomial.
    pub fn x_pow(k: usize) -> Self {
        UniPoly::monomial(Rational::one(), k)
    }

    /// Coefficient strings, index = degree.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// Integer polynomial with the same roots: multiply by the lcm of the
    /// denominators and divide by the content.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * &lcm).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &content).collect()
    }

    pub fn rational_roots(&self) -> Result<Vec<Rational>> {
        rational_roots_with_bound(self, DEFAULT_TRIAL_BOUND)
    }
}

/// All distinct rational zeros of `f`, ascending, by the rational-root theorem
/// on the cleared integer polynomial. Every candidate is confirmed by exact
/// evaluation.
pub fn rational_roots(f: &RatPoly) -> Result<Vec<Rational>> {
    rational_roots_with_bound(f, DEFAULT_TRIAL_BOUND)
}

pub fn rational_roots_with_bound(f: &RatPoly, bound: u64) -> Result<Vec<Rational>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ints = f.primitive_integer_coeffs();
    let mut roots = Vec::new();
    // factor out Z^m
    let shift = ints
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial");
    if shift > 0 {
        roots.push(Rational::zero());
    }
    let ints = &ints[shift..];
    if ints.len() > 1 {
        let reduced = UniPoly::new(
            ints.iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        );
        let numer_divs = positive_divisors(&ints[0], bound)?;
        let denom_divs = positive_divisors(ints.last().unwrap(), bound)?;
        for n in &numer_divs {
            for d in &denom_divs {
                if !n.gcd(d).is_one() {
                    continue;
                }
                for cand in [
                    Rational::new(n.clone(), d.clone()),
                    Rational::new(-n.clone(), d.clone()),
                ] {
                    if Zero::is_zero(&reduced.eval(&cand)) {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Turns a `Q[d, D][Z]` polynomial into a `Q[Z]` polynomial at concrete `(d, D)`.
pub fn specialize(poly: &BiCoeffPoly, d: &Rational, big_d: &Rational) -> RatPoly {
    poly.map(|c| c.eval(d, big_d))
}
