//! Exact scalars: arbitrary-precision rationals, elements `a + b*sqrt(R)` of a
//! quadratic extension, and the power/root predicates the reduction needs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact fraction, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;
/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Default trial-division bound used by [`squarefree_part`] and divisor enumeration.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `[-]digits[/digits]` with a nonzero denominator. The Unicode minus
/// sign is accepted as an alternative to `-`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(text.to_string());
    let (negative, body) = if let Some(rest) = text.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = text.strip_prefix('\u{2212}') {
        (true, rest)
    } else {
        (false, text)
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| -> Result<BigInt> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    let mut numer = digits(num)?;
    if negative {
        numer = -numer;
    }
    let denom = match den {
        Some(d) => digits(d)?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `-2158`, `6/11`.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Nonnegative rational square root of `q`, if `q` is the square of a rational.
pub fn rational_is_square(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = exact_int_root(q.numer(), 2)?;
    let d = exact_int_root(q.denom(), 2)?;
    Some(Rational::new(n, d))
}

/// The unique real rational `z` with `z^p = q`, for odd `p >= 3`.
pub fn rational_odd_root(q: &Rational, p: u32) -> Option<Rational> {
    if p < 3 || p.is_multiple_of(2) {
        return None;
    }
    let n = q.numer();
    let root = exact_int_root(&n.abs(), p)?;
    let d = exact_int_root(q.denom(), p)?;
    let root = if n.is_negative() { -root } else { root };
    Some(Rational::new(root, d))
}

/// Exact `n`-th root of a nonnegative integer, if it exists.
fn exact_int_root(m: &BigInt, n: u32) -> Option<BigInt> {
    debug_assert!(!m.is_negative());
    let r = m.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *m).then_some(r)
}

pub fn is_perfect_square(m: &BigInt) -> bool {
    !m.is_negative() && exact_int_root(m, 2).is_some()
}

/// Squarefree integer `m` with `q = m * s^2` for some rational `s`.
pub fn squarefree_part(q: &Rational) -> Result<Integer> {
    squarefree_part_with_bound(q, DEFAULT_TRIAL_BOUND)
}

pub fn squarefree_part_with_bound(q: &Rational, bound: u64) -> Result<Integer> {
    if q.is_zero() {
        return Err(Error::ZeroSquarefree);
    }
    // n/d = n*d / d^2
    let m = q.numer() * q.denom();
    let sign = if m.is_negative() { -1 } else { 1 };
    let m = m.abs();
    let (factors, cofactor) = trial_divide(&m, bound);
    let mut out = BigInt::from(sign);
    for (prime, exp) in factors {
        if exp % 2 == 1 {
            out *= prime;
        }
    }
    if !cofactor.is_one() {
        if is_perfect_square(&cofactor) {
            // contributes a square
        } else if cofactor_is_prime(&cofactor, bound)? {
            out *= cofactor;
        } else {
            return Err(Error::FactorizationBound(m.to_string()));
        }
    }
    Ok(out)
}

/// Full factorization of `|m|` (m != 0), prime factors in increasing order.
pub fn factorize(m: &BigInt, bound: u64) -> Result<Vec<(BigInt, u32)>> {
    let m = m.abs();
    let (mut factors, cofactor) = trial_divide(&m, bound);
    if !cofactor.is_one() {
        if cofactor_is_prime(&cofactor, bound)? {
            factors.push((cofactor, 1));
        } else {
            return Err(Error::FactorizationBound(m.to_string()));
        }
    }
    Ok(factors)
}

/// All positive divisors of `|m|`, ascending. `m` must be nonzero.
pub fn positive_divisors(m: &BigInt, bound: u64) -> Result<Vec<BigInt>> {
    let mut divisors = vec![BigInt::one()];
    for (prime, exp) in factorize(m, bound)? {
        let mut next = Vec::with_capacity(divisors.len() * (exp as usize + 1));
        for d in &divisors {
            let mut power = d.clone();
            next.push(power.clone());
            for _ in 0..exp {
                power *= &prime;
                next.push(power.clone());
            }
        }
        divisors = next;
    }
    divisors.sort();
    Ok(divisors)
}

/// Strips all prime factors `<= bound`. Returns the factors found and the
/// remaining cofactor, which has no prime factor `<= bound`.
fn trial_divide(m: &BigInt, bound: u64) -> (Vec<(BigInt, u32)>, BigInt) {
    let mut rest = m.clone();
    let mut factors = Vec::new();
    if rest.is_zero() {
        return (factors, rest);
    }
    let mut candidate: u64 = 2;
    while candidate <= bound {
        let c = BigInt::from(candidate);
        if &c * &c > rest {
            break;
        }
        let mut exp = 0;
        loop {
            let (q, r) = rest.div_rem(&c);
            if !r.is_zero() {
                break;
            }
            rest = q;
            exp += 1;
        }
        if exp > 0 {
            factors.push((c, exp));
        }
        candidate += if candidate == 2 { 1 } else { 2 };
    }
    // leftover below candidate^2 is prime
    if !rest.is_one() {
        let c = BigInt::from(candidate);
        if &c * &c > rest {
            factors.push((rest, 1));
            rest = BigInt::one();
        }
    }
    (factors, rest)
}

/// Decides primality of a cofactor with no prime factor `<= bound`.
fn cofactor_is_prime(n: &BigInt, bound: u64) -> Result<bool> {
    let b = BigInt::from(bound);
    if n <= &(&b * &b) {
        return Ok(true);
    }
    // Miller-Rabin with the first 13 prime bases is deterministic below 3.3e24.
    let limit: BigInt = "3317044064679887385961981".parse().unwrap();
    if n >= &limit {
        return Err(Error::FactorizationBound(n.to_string()));
    }
    Ok(miller_rabin(
        n,
        &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41],
    ))
}

fn miller_rabin(n: &BigInt, bases: &[u32]) -> bool {
    let one = BigInt::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &base in bases {
        let a = BigInt::from(base);
        if &a % n == BigInt::zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for the small moduli used as radical degrees.
pub fn is_small_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut c = 2u64;
    while c * c <= n {
        if n.is_multiple_of(c) {
            return false;
        }
        c += 1;
    }
    true
}

pub fn rational_pow(q: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), e.unsigned_abs() as usize)
    }
}

pub fn sign_pow(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // ratio of huge integers: scale by bit lengths first
        let shift = q.numer().bits().max(q.denom().bits()) as i64 - 60;
        let n = (q.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
        let d = (q.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
        n / d
    })
}

/// Element `a + b*sqrt(r)` of `Q(sqrt(r))`. Binary operations require both
/// operands to carry the same `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    r: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, r: Rational) -> Self {
        QuadExt { a, b, r }
    }

    pub fn from_rational(a: Rational, r: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            r,
        }
    }

    /// The generator `sqrt(r)` itself.
    pub fn sqrt_of(r: Rational) -> Self {
        QuadExt {
            a: Rational::zero(),
            b: Rational::one(),
            r,
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &Rational {
        &self.r
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn check(&self, other: &QuadExt) -> Result<()> {
        if self.r == other.r {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.r.to_string(),
                right: other.r.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &QuadExt) -> Result<QuadExt> {
        self.check(other)?;
        Ok(QuadExt {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            r: self.r.clone(),
        })
    }

    pub fn checked_sub(&self, other: &QuadExt) -> Result<QuadExt> {
        self.check(other)?;
        Ok(QuadExt {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            r: self.r.clone(),
        })
    }

    pub fn checked_mul(&self, other: &QuadExt) -> Result<QuadExt> {
        self.check(other)?;
        Ok(QuadExt {
            a: &self.a * &other.a + &self.b * &other.b * &self.r,
            b: &self.a * &other.b + &self.b * &other.a,
            r: self.r.clone(),
        })
    }

    pub fn scale(&self, k: &Rational) -> QuadExt {
        QuadExt {
            a: &self.a * k,
            b: &self.b * k,
            r: self.r.clone(),
        }
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt {
            a: -&self.a,
            b: -&self.b,
            r: self.r.clone(),
        }
    }

    /// `a - b*sqrt(r)`.
    pub fn conjugate(&self) -> QuadExt {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            r: self.r.clone(),
        }
    }

    /// `a^2 - r*b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.r * &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<QuadExt> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conjugate().scale(&n.recip()))
    }

    pub fn checked_div(&self, other: &QuadExt) -> Result<QuadExt> {
        self.check(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> QuadExt {
        let mut acc = QuadExt::from_rational(Rational::one(), self.r.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same context");
            }
            base = base.checked_mul(&base).expect("same context");
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let radical = if self.b.is_one() {
            format!("sqrt({})", self.r)
        } else if (-&self.b).is_one() {
            format!("-sqrt({})", self.r)
        } else {
            format!("{}*sqrt({})", self.b, self.r)
        };
        if self.a.is_zero() {
            write!(f, "{radical}")
        } else if let Some(rest) = radical.strip_prefix('-') {
            write!(f, "{} - {rest}", self.a)
        } else {
            write!(f, "{} + {radical}", self.a)
        }
    }
}

/// Serde adapters writing rationals in the canonical text form.
pub mod serde_rational {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }

    pub mod vec {
        use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        use super::super::{parse_rational, Rational};

        pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(qs.len()))?;
            for q in qs {
                seq.serialize_element(&q.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|t| parse_rational(t).map_err(D::Error::custom))
                .collect()
        }
    }
}
