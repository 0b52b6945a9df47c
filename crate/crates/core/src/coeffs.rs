//! Closed-form coefficient families.
//!
//! All families are indexed as follows (`p` odd, `m = (p - 1) / 2`):
//!
//! | family  | entries                          | index        |
//! |---------|----------------------------------|--------------|
//! | `c`     | `c_{2k+1}`, odd coefficients of f | `k = 0..=m`  |
//! | `a`     | `a_{2k}`, even coefficients of A  | `k = 0..=m`  |
//! | `cprime`| `c'_{2j+1}`, coefficients of f'   | `j = 0..m`   |
//! | `C`     | `C_{p-2k}` from the linear system | `k = 0..=m`  |
//! | `u`     | `u_k`                            | `k = 1..p`   |
//!
//! Out-of-range indices give zero for `c`, `a`, `cprime` because the binomial
//! coefficients in their closed forms vanish there.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_num::{sign_pow, Rational};

/// `binom(m, n)`; zero when `n < 0`, `n > m` or `m < 0`.
pub fn binomial(m: i64, n: i64) -> BigInt {
    if n < 0 || m < 0 || n > m {
        return BigInt::zero();
    }
    let n = n.min(m - n);
    let mut acc = BigInt::one();
    for i in 0..n {
        acc = acc * BigInt::from(m - i) / BigInt::from(i + 1);
    }
    acc
}

fn binom_q(m: i64, n: i64) -> Rational {
    Rational::from_integer(binomial(m, n))
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn check_degree(p: i64) -> Result<()> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::InvalidDegree(p));
    }
    Ok(())
}

fn half(p: i64) -> i64 {
    (p - 1) / 2
}

/// `c_{2k+1}`: coefficient of `Z^{2k+1}` in f before the `D` powers are attached.
pub fn coeff_c(p: i64, k: i64) -> Rational {
    let m = half(p);
    if k < 0 || k > m {
        return Rational::zero();
    }
    let top = (p + 1) / 2 + k;
    let v = sign_pow(m - k)
        * Rational::new(BigInt::from(p), BigInt::from(top))
        * binom_q(top, 2 * k + 1);
    debug_assert_eq!(v, coeff_c_descending(p, m - k));
    v
}

/// `c_{p-2i} = (-1)^i p/(p-i) binom(p-i, i)`, the same family indexed from the top.
pub fn coeff_c_descending(p: i64, i: i64) -> Rational {
    if i < 0 || i > half(p) {
        return Rational::zero();
    }
    sign_pow(i) * Rational::new(BigInt::from(p), BigInt::from(p - i)) * binom_q(p - i, i)
}

/// `a_{2k}`: even coefficients of A.
pub fn coeff_a(p: i64, k: i64) -> Rational {
    let m = half(p);
    if k < 0 || k > m {
        return Rational::zero();
    }
    let top = m + k;
    sign_pow(k) * Rational::new(BigInt::from(p - 1), BigInt::from(top)) * binom_q(top, 2 * k)
}

/// `c'_{2j+1}`: odd coefficients of f'.
pub fn coeff_cprime(p: i64, j: i64) -> Rational {
    let m = half(p);
    if j < 0 || j > m - 1 {
        return Rational::zero();
    }
    let top = m + j;
    sign_pow(m - 1 - j)
        * Rational::new(BigInt::from(p - 2), BigInt::from(top))
        * binom_q(top, 2 * j + 1)
}

/// Solves the unitriangular system for the expansion
/// `X^p + 1 = sum_k C_{p-2k} X^k (X+1)^{p-2k}` by forward substitution.
/// Returns `[C_p, C_{p-2}, ..., C_1]`.
pub fn coeff_c_system(p: i64) -> Result<Vec<Rational>> {
    check_degree(p)?;
    let m = half(p) as usize;
    // rows[k][i] = binom(p - 2k, i) for i <= m - k
    let rows: Vec<Vec<BigInt>> = (0..=m)
        .map(|k| {
            let e = p as usize - 2 * k;
            let mut row = Vec::with_capacity(m - k + 1);
            let mut b = BigInt::one();
            for i in 0..=m - k {
                row.push(b.clone());
                b = b * (e - i) / (i + 1);
            }
            row
        })
        .collect();
    // unitriangular with integer entries, so the solution stays integral
    let mut out: Vec<BigInt> = Vec::with_capacity(m + 1);
    out.push(BigInt::one());
    for j in 1..=m {
        // 0 = sum_{k<=j} C_{p-2k} binom(p-2k, j-k), and binom(p-2j, 0) = 1
        let s = (0..j).fold(BigInt::zero(), |acc, k| acc + &out[k] * &rows[k][j - k]);
        out.push(-s);
    }
    Ok(out.into_iter().map(Rational::from_integer).collect())
}

/// `u_k = (-1)^k (p-1)/k binom(p+k-2, 2k-1)` for `1 <= k <= p-1`.
pub fn coeff_u(p: i64, k: i64) -> Result<Rational> {
    if k < 1 || k > p - 1 {
        return Err(Error::IndexOutOfRange {
            index: k,
            lo: 1,
            hi: p - 1,
        });
    }
    Ok(sign_pow(k)
        * Rational::new(BigInt::from(p - 1), BigInt::from(k))
        * binom_q(p + k - 2, 2 * k - 1))
}

/// `s_k = sum_j a_{2j} a_{2(k-j)}`; the pure-number part of the `Z^{2k}`
/// coefficient of `4 D^2 A^2 R`.
pub fn sum_s(p: i64, k: i64) -> Result<Rational> {
    if k < 1 || k > p - 1 {
        return Err(Error::IndexOutOfRange {
            index: k,
            lo: 1,
            hi: p - 1,
        });
    }
    Ok((0..=k).fold(Rational::zero(), |acc, j| {
        acc + coeff_a(p, j) * coeff_a(p, k - j)
    }))
}

/// `t_k = sum_{j<k} c_{2j+1} c'_{2(k-j-1)+1}`; the pure-number part of the
/// `Z^{2k}` coefficient of `f f'`.
pub fn sum_t(p: i64, k: i64) -> Result<Rational> {
    if k < 2 || k > p - 1 {
        return Err(Error::IndexOutOfRange {
            index: k,
            lo: 2,
            hi: p - 1,
        });
    }
    Ok((0..k).fold(Rational::zero(), |acc, j| {
        acc + coeff_c(p, j) * coeff_cprime(p, k - j - 1)
    }))
}

/// `sum_{k<=j} (-1)^k p/(p-k) binom(p-k, k) binom(p-2k, j-k)`; equals 1 at
/// `j = 0` and vanishes for `1 <= j <= (p-1)/2`.
pub fn alternating_binomial_sum(p: i64, j: i64) -> Result<Rational> {
    check_degree(p)?;
    let m = half(p);
    if j < 0 || j > m {
        return Err(Error::IndexOutOfRange {
            index: j,
            lo: 0,
            hi: m,
        });
    }
    Ok((0..=j).fold(Rational::zero(), |acc, k| {
        acc + sign_pow(k)
            * Rational::new(BigInt::from(p), BigInt::from(p - k))
            * binom_q(p - k, k)
            * binom_q(p - 2 * k, j - k)
    }))
}

/// Leading coefficient of the first-order recurrence for `s_k`: `4k^2 + 6k + 2`.
pub fn s_recurrence(p: i64, k: i64) -> (Rational, Rational) {
    (q(4 * k * k + 6 * k + 2), q(-k * k - 2 * p + 1 + p * p))
}

/// Polynomial coefficients `(a, b, c)` of the three-term recurrence for `t_k`.
pub fn t_recurrence(p: i64, k: i64) -> (Rational, Rational, Rational) {
    let a = 16 * k.pow(3) + 64 * k * k + 76 * k + 24;
    let b = -8 * k.pow(3) - 12 * k * k - 8 * p * k + 4 * p * p * k + 2 * p * p - 4 * p + 2;
    let c = k.pow(3) - k * k - p * p * k + 2 * p * k - k + p * p - 2 * p + 1;
    (q(a), q(b), q(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "c")]
    C,
    #[serde(rename = "a")]
    A,
    #[serde(rename = "cprime")]
    CPrime,
    #[serde(rename = "C")]
    System,
    #[serde(rename = "u")]
    U,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::C => "c",
            Family::A => "a",
            Family::CPrime => "cprime",
            Family::System => "C",
            Family::U => "u",
        }
    }

    /// Human-readable description of what index `i` of `values` means.
    pub fn indexing(self) -> &'static str {
        match self {
            Family::C => "values[k] = c_{2k+1}, k = 0..(p-1)/2",
            Family::A => "values[k] = a_{2k}, k = 0..(p-1)/2",
            Family::CPrime => "values[j] = c'_{2j+1}, j = 0..(p-3)/2",
            Family::System => "values[k] = C_{p-2k}, k = 0..(p-1)/2",
            Family::U => "values[k-1] = u_k, k = 1..p-1",
        }
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "c" => Ok(Family::C),
            "a" => Ok(Family::A),
            "cprime" => Ok(Family::CPrime),
            "C" => Ok(Family::System),
            "u" => Ok(Family::U),
            other => Err(format!(
                "unknown family {other:?}; expected c, a, cprime, C or u"
            )),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One coefficient family for a fixed `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoeffFamily {
    pub p: i64,
    pub family: Family,
    pub indexing: &'static str,
    #[serde(with = "crate::exact_num::serde_rational::vec")]
    pub values: Vec<Rational>,
}

impl CoeffFamily {
    pub fn compute(p: i64, family: Family) -> Result<Self> {
        check_degree(p)?;
        let m = half(p);
        let values = match family {
            Family::C => (0..=m).map(|k| coeff_c(p, k)).collect(),
            Family::A => (0..=m).map(|k| coeff_a(p, k)).collect(),
            Family::CPrime => (0..m).map(|j| coeff_cprime(p, j)).collect(),
            Family::System => coeff_c_system(p)?,
            Family::U => (1..p).map(|k| coeff_u(p, k)).collect::<Result<_>>()?,
        };
        Ok(CoeffFamily {
            p,
            family,
            indexing: family.indexing(),
            values,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_num::int;

    fn odd(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
        (lo..=hi).filter(|p| p % 2 == 1)
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        // Pascal's rule as an oracle
        for m in 1..40 {
            for n in 1..m {
                assert_eq!(binomial(m, n), binomial(m - 1, n - 1) + binomial(m - 1, n));
            }
        }
    }

    #[test]
    fn c_examples() {
        assert_eq!(coeff_c(5, 0), int(5));
        assert_eq!(coeff_c(5, 1), int(-5));
        assert_eq!(coeff_c(5, 2), int(1));
        assert_eq!(coeff_c(3, 0), int(-3));
        assert_eq!(coeff_c(5, 3), int(0));
        for p in odd(3, 99) {
            assert_eq!(coeff_c(p, (p - 1) / 2), int(1));
            for k in 0..=(p - 1) / 2 {
                assert_eq!(coeff_c(p, k), coeff_c_descending(p, (p - 1) / 2 - k));
            }
        }
    }

    #[test]
    fn a_examples() {
        assert_eq!(coeff_a(5, 0), int(2));
        assert_eq!(coeff_a(5, 1), int(-4));
        assert_eq!(coeff_a(5, 2), int(1));
        assert_eq!(coeff_a(3, 0), int(2));
        assert_eq!(coeff_a(5, 3), int(0));
        assert_eq!(coeff_a(7, -1), int(0));
    }

    #[test]
    fn cprime_examples() {
        assert_eq!(coeff_cprime(5, 0), int(-3));
        assert_eq!(coeff_cprime(5, 1), int(1));
        assert_eq!(coeff_cprime(3, 0), int(1));
        assert_eq!(coeff_cprime(5, 2), int(0));
    }

    #[test]
    fn system_examples() {
        assert_eq!(coeff_c_system(3).unwrap(), vec![int(1), int(-3)]);
        assert_eq!(coeff_c_system(5).unwrap(), vec![int(1), int(-5), int(5)]);
        assert_eq!(coeff_c_system(4), Err(Error::InvalidDegree(4)));
    }

    #[test]
    fn system_matches_closed_form() {
        for p in odd(3, 199) {
            let sys = coeff_c_system(p).unwrap();
            assert_eq!(sys[0], int(1));
            let closed: Vec<Rational> = (0..=(p - 1) / 2).rev().map(|k| coeff_c(p, k)).collect();
            assert_eq!(sys, closed, "p = {p}");
        }
    }

    #[test]
    fn families_are_integral() {
        for p in odd(3, 99) {
            for family in [
                Family::C,
                Family::A,
                Family::CPrime,
                Family::System,
                Family::U,
            ] {
                let fam = CoeffFamily::compute(p, family).unwrap();
                assert!(
                    fam.values.iter().all(|v| v.is_integer()),
                    "p = {p}, {family}"
                );
            }
        }
    }

    #[test]
    fn u_examples() {
        for p in odd(3, 51) {
            let p2 = p - 1;
            assert_eq!(coeff_u(p, 1).unwrap(), int(-p2 * p2));
            assert_eq!(
                coeff_u(p, 2).unwrap(),
                Rational::new(BigInt::from(p * p2 * p2 * (p - 2)), BigInt::from(12))
            );
        }
        assert_eq!(coeff_u(5, 2).unwrap(), int(20));
        assert!(coeff_u(5, 0).is_err());
        assert!(coeff_u(5, 5).is_err());
    }

    #[test]
    fn s_and_t_examples() {
        assert_eq!(sum_s(3, 1).unwrap(), int(-4));
        assert_eq!(sum_s(5, 2).unwrap(), int(20));
        assert_eq!(sum_t(5, 2).unwrap(), int(20));
        assert!(sum_t(5, 1).is_err());
        assert!(sum_s(5, 5).is_err());
        for p in odd(5, 41) {
            let p2 = p - 1;
            assert_eq!(sum_s(p, 1).unwrap(), int(-p2 * p2));
            assert_eq!(
                sum_t(p, 2).unwrap(),
                Rational::new(BigInt::from(p * p2 * p2 * (p - 2)), BigInt::from(12))
            );
            assert_eq!(
                sum_t(p, 3).unwrap(),
                Rational::new(
                    BigInt::from(-p * p2 * p2 * (p - 2) * (p - 3) * (p + 1)),
                    BigInt::from(360)
                )
            );
        }
    }

    #[test]
    fn alternating_sum_vanishes() {
        assert_eq!(alternating_binomial_sum(5, 0).unwrap(), int(1));
        assert_eq!(alternating_binomial_sum(5, 1).unwrap(), int(0));
        assert_eq!(alternating_binomial_sum(7, 3).unwrap(), int(0));
        assert!(alternating_binomial_sum(7, 4).is_err());
        for p in odd(3, 199) {
            assert_eq!(alternating_binomial_sum(p, 0).unwrap(), int(1));
            for j in 1..=(p - 1) / 2 {
                assert_eq!(
                    alternating_binomial_sum(p, j).unwrap(),
                    int(0),
                    "p = {p}, j = {j}"
                );
            }
        }
    }

    #[test]
    fn s_recurrence_example() {
        // 12 * s_2 + 15 * s_1 = 240 - 240
        let (lead, trail) = s_recurrence(5, 1);
        assert_eq!((lead.clone(), trail.clone()), (int(12), int(15)));
        assert_eq!(
            lead * sum_s(5, 2).unwrap() + trail * sum_s(5, 1).unwrap(),
            int(0)
        );
    }

    #[test]
    fn family_parsing() {
        for f in ["c", "a", "cprime", "C", "u"] {
            assert_eq!(f.parse::<Family>().unwrap().name(), f);
        }
        assert!("x".parse::<Family>().is_err());
    }
}
