//! Exact symbolic verification of the structural identities behind the
//! reduction, for any odd `p`:
//!
//! * the expansion `X^p + 1 = sum_k C_{p-2k} X^k (X+1)^{p-2k}`;
//! * the fundamental identity `4 D^2 A^2 R = f f' + Z^2 - 4D`, checked in
//!   `Q[d, D][Z]` after clearing denominators;
//! * the recurrences satisfied by the coefficient sums `s_k`, `t_k` and their
//!   agreement with the closed form `u_k`.
//!
//! Failures are reported, never raised: every failing check carries a witness.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeffs::{
    alternating_binomial_sum, check_degree, coeff_c, coeff_c_system, coeff_u, s_recurrence, sum_s,
    sum_t, t_recurrence,
};
use crate::constructors::{
    build_a, build_f, build_fprime, symbolic_a, symbolic_f, symbolic_fprime, InstanceParams,
};
use crate::error::Result;
use crate::exact_num::{int, Rational};
use crate::poly::{BiCoeff, BiCoeffPoly, Coeff, RatPoly, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub p: i64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn new(p: i64) -> Self {
        VerificationReport {
            p,
            checks: Vec::new(),
        }
    }

    fn record(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn absorb(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "ok" } else { "FAIL" };
            write!(f, "p={} {:<32} {status}", self.p, c.name)?;
            if let Some(w) = &c.witness {
                write!(f, "  [{w}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// First monomial where two rational polynomials differ.
fn rat_difference(lhs: &RatPoly, rhs: &RatPoly) -> Option<String> {
    let n = lhs.coeffs().len().max(rhs.coeffs().len());
    let zero = Rational::zero();
    (0..n).find_map(|k| {
        let (l, r) = (lhs.coeff(k).unwrap_or(&zero), rhs.coeff(k).unwrap_or(&zero));
        (l != r).then(|| format!("X^{k}: {l} vs {r}"))
    })
}

/// First monomial `Z^k d^i D^j` where two `Q[d, D][Z]` polynomials differ.
pub fn symbolic_difference(lhs: &BiCoeffPoly, rhs: &BiCoeffPoly) -> Option<String> {
    let n = lhs.coeffs().len().max(rhs.coeffs().len());
    let zero = BiCoeff::zero();
    for k in 0..n {
        let (l, r) = (lhs.coeff(k).unwrap_or(&zero), rhs.coeff(k).unwrap_or(&zero));
        let diff = l.sub(r);
        let first = diff.terms().next().map(|(&key, _)| key);
        if let Some((i, j)) = first {
            return Some(format!(
                "Z^{k}*d^{i}*D^{j}: {} vs {}",
                l.coefficient(i, j),
                r.coefficient(i, j)
            ));
        }
    }
    None
}

/// Checks `X^p + 1 = sum_k C_{p-2k} X^k (X+1)^{p-2k}` with `C` from the linear
/// system and again with the closed-form `c` family.
pub fn verify_power_expansion(p: i64) -> Result<VerificationReport> {
    check_degree(p)?;
    let mut report = VerificationReport::new(p);
    let target = RatPoly::x_pow(p as usize).add(&RatPoly::from_ints(&[1]));
    // X^k (X+1)^e contributes binom(e, j) to X^{k+j}; summed over a common
    // denominator in integers
    let expand = |coeffs: &[Rational]| {
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut out = vec![BigInt::zero(); p as usize + 1];
        for (k, c) in coeffs.iter().enumerate() {
            let scaled = c.numer() * (&den / c.denom());
            let e = p as usize - 2 * k;
            let mut binom = BigInt::one();
            for j in 0..=e {
                out[k + j] += &scaled * &binom;
                binom = binom * (e - j) / (j + 1);
            }
        }
        UniPoly::new(
            out.into_iter()
                .map(|n| Rational::new(n, den.clone()))
                .collect(),
        )
    };
    let system = coeff_c_system(p)?;
    report.record(
        "expansion_from_linear_system",
        rat_difference(&expand(&system), &target),
    );
    let closed: Vec<Rational> = (0..=(p - 1) / 2).rev().map(|k| coeff_c(p, k)).collect();
    report.record(
        "expansion_from_closed_form",
        rat_difference(&expand(&closed), &target),
    );
    let witness = system
        .iter()
        .zip(&closed)
        .enumerate()
        .find(|(_, (s, c))| s != c)
        .map(|(k, (s, c))| format!("C_{}: system {s} vs closed form {c}", p - 2 * k as i64));
    report.record("linear_system_equals_closed_form", witness);
    Ok(report)
}

/// The cleared fundamental identity
/// `Ã^2 = f F' + (Z^2 - 4D)(d^2 - D) D^{p-3}`, where `A = Ã/(2 R D^m)` and
/// `f' = F'/(R D^{p-3})`.
pub fn cleared_identity_sides(
    p: i64,
    f: &BiCoeffPoly,
    a_numerator: &BiCoeffPoly,
    fprime_numerator: &BiCoeffPoly,
) -> (BiCoeffPoly, BiCoeffPoly) {
    let lhs = a_numerator.mul(a_numerator);
    let z2_minus_4d = UniPoly::new(vec![
        BiCoeff::monomial(int(-4), 0, 1),
        BiCoeff::zero(),
        BiCoeff::constant(Rational::one()),
    ]);
    let tail =
        z2_minus_4d.scale(&BiCoeff::r().mul(&BiCoeff::monomial(Rational::one(), 0, p as u32 - 3)));
    let rhs = f.mul(fprime_numerator).add(&tail);
    (lhs, rhs)
}

pub fn verify_fundamental_identity(p: i64) -> Result<VerificationReport> {
    let f = symbolic_f(p)?;
    let a = symbolic_a(p)?;
    let fp = symbolic_fprime(p)?;
    let mut report = verify_fundamental_identity_with(p, &f, &a.numerator, &fp.numerator)?;

    // concrete cross-check at d = 2, D = -1 (R = 5), without clearing denominators
    let inst = InstanceParams::new(p, int(2), int(5))?;
    let (fc, ac, fpc) = (build_f(&inst), build_a(&inst), build_fprime(&inst));
    let big_d = inst.big_d().clone();
    let lhs = ac.mul(&ac).scale(&(int(4) * &big_d * &big_d * inst.r()));
    let rhs = fc
        .mul(&fpc)
        .add(&UniPoly::new(vec![int(-4) * &big_d, int(0), int(1)]));
    report.record("identity_at_d2_R5", rat_difference(&lhs, &rhs));
    Ok(report)
}

/// Same check on caller-supplied `f`, `Ã`, `F'`; used to confirm that
/// corrupted inputs are caught.
pub fn verify_fundamental_identity_with(
    p: i64,
    f: &BiCoeffPoly,
    a_numerator: &BiCoeffPoly,
    fprime_numerator: &BiCoeffPoly,
) -> Result<VerificationReport> {
    check_degree(p)?;
    let mut report = VerificationReport::new(p);
    let (lhs, rhs) = cleared_identity_sides(p, f, a_numerator, fprime_numerator);
    let degree = lhs.degree();
    report.record(
        "identity_lhs_degree",
        (degree != Some(2 * p as usize - 2))
            .then(|| format!("degree {degree:?}, expected {}", 2 * p - 2)),
    );
    report.record("fundamental_identity", symbolic_difference(&lhs, &rhs));
    Ok(report)
}

/// Recurrence certificates and the equalities `s_k = u_k`, `t_k = u_k`, plus
/// the vanishing alternating binomial sums. Requires `p >= 5`.
pub fn verify_recurrences(p: i64) -> Result<VerificationReport> {
    check_degree(p)?;
    if p < 5 {
        return Err(crate::Error::InvalidDegree(p));
    }
    let mut report = VerificationReport::new(p);
    let m = (p - 1) / 2;
    let s: Vec<Rational> = (1..p).map(|k| sum_s(p, k)).collect::<Result<_>>()?;
    let t: Vec<Rational> = (2..p).map(|k| sum_t(p, k)).collect::<Result<_>>()?;
    let u: Vec<Rational> = (1..p).map(|k| coeff_u(p, k)).collect::<Result<_>>()?;
    let s_at = |k: i64| &s[(k - 1) as usize];
    let t_at = |k: i64| &t[(k - 2) as usize];
    let u_at = |k: i64| &u[(k - 1) as usize];

    let w = (1..=m)
        .map(|j| (j, alternating_binomial_sum(p, j)))
        .find_map(|(j, v)| match v {
            Ok(v) if v.is_zero() => None,
            Ok(v) => Some(format!("j = {j}: {v}")),
            Err(e) => Some(format!("j = {j}: {e}")),
        });
    report.record("alternating_sum_vanishes", w);
    let w = alternating_binomial_sum(p, 0)
        .ok()
        .filter(|v| !v.is_one())
        .map(|v| format!("j = 0: {v}"));
    report.record("alternating_sum_at_zero", w);

    let w = (1..=p - 2).find_map(|k| {
        let (lead, trail) = s_recurrence(p, k);
        let v = lead * s_at(k + 1) + trail * s_at(k);
        (!v.is_zero()).then(|| format!("k = {k}: residual {v}"))
    });
    report.record("s_first_order_recurrence", w);

    let w = (2..=p - 3).find_map(|k| {
        let (a, b, c) = t_recurrence(p, k);
        let v = a * t_at(k + 2) + b * t_at(k + 1) + c * t_at(k);
        (!v.is_zero()).then(|| format!("k = {k}: residual {v}"))
    });
    report.record("t_three_term_recurrence", w);

    let w = (1..p).find_map(|k| {
        (s_at(k) != u_at(k)).then(|| format!("k = {k}: s = {}, u = {}", s_at(k), u_at(k)))
    });
    report.record("s_equals_u", w);
    let w = (2..p).find_map(|k| {
        (t_at(k) != u_at(k)).then(|| format!("k = {k}: t = {}, u = {}", t_at(k), u_at(k)))
    });
    report.record("t_equals_u", w);

    let w = (1..=p - 3).find_map(|k| {
        let (lead, trail) = s_recurrence(p, k);
        let ratio = u_at(k + 1) / u_at(k);
        let expected = -trail / lead;
        (ratio != expected).then(|| format!("k = {k}: ratio {ratio}, expected {expected}"))
    });
    report.record("u_ratio", w);

    let q = |n: i64| int(n);
    let pm1 = p - 1;
    let expected = [
        (u_at(1).clone(), -q(pm1 * pm1), "u_1"),
        (t_at(2).clone(), q(p * pm1 * pm1 * (p - 2)) / q(12), "t_2"),
        (
            t_at(3).clone(),
            -q(p * pm1 * pm1 * (p - 2) * (p - 3) * (p + 1)) / q(360),
            "t_3",
        ),
    ];
    let w = expected
        .iter()
        .find(|(got, want, _)| got != want)
        .map(|(got, want, name)| format!("{name} = {got}, expected {want}"));
    report.record("closed_values", w);

    // s_k, t_k recovered from the symbolic products
    let a_num = symbolic_a(p)?.numerator;
    let square = a_num.mul(&a_num);
    let w = (1..p).find_map(|k| {
        let coeff = square.coeff(2 * k as usize).cloned().unwrap_or_default();
        let mut expected = BiCoeff::monomial(s_at(k).clone(), 0, (p - 1 - k) as u32);
        if k == 1 {
            expected = expected.add(&BiCoeff::monomial(Rational::one(), 2, p as u32 - 3));
        }
        (coeff != expected).then(|| format!("Z^{}: {coeff} vs {expected}", 2 * k))
    });
    report.record("s_from_symbolic_square", w);

    let product = symbolic_f(p)?.mul(&symbolic_fprime(p)?.numerator);
    let w = (2..p).find_map(|k| {
        let coeff = product.coeff(2 * k as usize).cloned().unwrap_or_default();
        match coeff.as_big_d_monomial() {
            Some((c, j)) if &c == t_at(k) && j as i64 == p - 1 - k => None,
            _ if coeff.is_zero_coeff() && t_at(k).is_zero() => None,
            _ => Some(format!(
                "Z^{}: {coeff}, expected {}*D^{}",
                2 * k,
                t_at(k),
                p - 1 - k
            )),
        }
    });
    report.record("t_from_symbolic_product", w);
    Ok(report)
}

/// Everything applicable to `p`: expansion and fundamental identity always,
/// recurrences when `p >= 5`.
pub fn verify_all(p: i64) -> Result<VerificationReport> {
    let mut report = verify_power_expansion(p)?;
    report.absorb(verify_fundamental_identity(p)?);
    if p >= 5 {
        report.absorb(verify_recurrences(p)?);
    }
    Ok(report)
}
