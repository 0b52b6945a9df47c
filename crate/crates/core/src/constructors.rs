//! The named polynomials `f`, `A`, `f'`, `g`, `h`, `h'`, built either with
//! symbolic `d`, `D` (coefficients in `Q[d, D]`, `R = d^2 - D`) or for a concrete
//! instance.

use num_traits::{One, Zero};

use crate::coeffs::{check_degree, coeff_a, coeff_c, coeff_cprime};
use crate::error::{Error, Result};
use crate::exact_num::{
    format_rational, rational_is_square, rational_pow, sign_pow, QuadExt, Rational,
};
use crate::poly::{BiCoeff, BiCoeffPoly, QuadPoly, RatPoly, UniPoly};

/// A validated instance `(p, d, R)` with `D = d^2 - R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceParams {
    p: i64,
    d: Rational,
    r: Rational,
    big_d: Rational,
}

impl InstanceParams {
    pub fn new(p: i64, d: Rational, r: Rational) -> Result<Self> {
        check_degree(p)?;
        if d.is_zero() {
            return Err(Error::ZeroD);
        }
        if r.is_zero() {
            return Err(Error::ZeroR);
        }
        let big_d = &d * &d - &r;
        if big_d.is_zero() {
            return Err(Error::ZeroDiscriminant);
        }
        Ok(InstanceParams { p, d, r, big_d })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    /// `D = d^2 - R`.
    pub fn big_d(&self) -> &Rational {
        &self.big_d
    }

    /// `(p - 1) / 2`
    pub fn half(&self) -> i64 {
        (self.p - 1) / 2
    }

    pub fn require_irrational_sqrt_r(&self) -> Result<()> {
        match rational_is_square(&self.r) {
            Some(_) => Err(Error::RationalSqrtR(self.r.to_string())),
            None => Ok(()),
        }
    }
}

impl serde::Serialize for InstanceParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("InstanceParams", 4)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("d", &format_rational(&self.d))?;
        st.serialize_field("R", &format_rational(&self.r))?;
        st.serialize_field("D", &format_rational(&self.big_d))?;
        st.end()
    }
}

/// A polynomial with a common denominator: `numerator / denominator`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cleared {
    pub numerator: BiCoeffPoly,
    pub denominator: BiCoeff,
}

fn d_pow(j: i64) -> BiCoeff {
    BiCoeff::monomial(Rational::one(), 0, j as u32)
}

fn term(c: Rational, deg_d: u32, deg_big_d: i64) -> BiCoeff {
    BiCoeff::monomial(c, deg_d, deg_big_d as u32)
}

/// `f` with symbolic `d`, `D`: `Z^{2k+1}` carries `c_{2k+1} D^{m-k}`, the
/// constant is `-2 d D^m`, where `m = (p-1)/2`. Monic of degree `p`.
pub fn symbolic_f(p: i64) -> Result<BiCoeffPoly> {
    check_degree(p)?;
    let m = (p - 1) / 2;
    let mut coeffs = vec![BiCoeff::zero(); p as usize + 1];
    for k in 0..=m {
        coeffs[(2 * k + 1) as usize] = term(coeff_c(p, k), 0, m - k);
    }
    coeffs[0] = term(Rational::from_integer((-2).into()), 1, m);
    Ok(UniPoly::new(coeffs))
}

/// `A = Ã / (2 R D^m)` with
/// `Ã = sum_k a_{2k} D^{m-k} Z^{2k} + (-1)^{(p+1)/2} d D^{m-1} Z`.
pub fn symbolic_a(p: i64) -> Result<Cleared> {
    check_degree(p)?;
    let m = (p - 1) / 2;
    let mut coeffs = vec![BiCoeff::zero(); p as usize];
    for k in 0..=m {
        coeffs[(2 * k) as usize] = term(coeff_a(p, k), 0, m - k);
    }
    coeffs[1] = coeffs[1].add(&term(sign_pow((p + 1) / 2), 1, m - 1));
    Ok(Cleared {
        numerator: UniPoly::new(coeffs),
        denominator: BiCoeff::r()
            .mul(&d_pow(m))
            .scale(&Rational::from_integer(2.into())),
    })
}

/// `f' = F / (R D^{p-3})` with
/// `F = sum_j c'_{2j+1} D^{m-1-j} Z^{2j+1} - 2 d D^{m-1}`.
pub fn symbolic_fprime(p: i64) -> Result<Cleared> {
    check_degree(p)?;
    let m = (p - 1) / 2;
    let mut coeffs = vec![BiCoeff::zero(); p as usize - 1];
    for j in 0..m {
        coeffs[(2 * j + 1) as usize] = term(coeff_cprime(p, j), 0, m - 1 - j);
    }
    coeffs[0] = term(Rational::from_integer((-2).into()), 1, m - 1);
    Ok(Cleared {
        numerator: UniPoly::new(coeffs),
        denominator: BiCoeff::r().mul(&d_pow(p - 3)),
    })
}

/// `f = D^m sum_k c_{2k+1} D^{-k} Z^{2k+1} - 2 d D^m`.
pub fn build_f(params: &InstanceParams) -> RatPoly {
    let (p, m, big_d) = (params.p, params.half(), params.big_d());
    let dm = rational_pow(big_d, m);
    let mut coeffs = vec![Rational::zero(); p as usize + 1];
    for k in 0..=m {
        coeffs[(2 * k + 1) as usize] = &dm * coeff_c(p, k) * rational_pow(big_d, -k);
    }
    coeffs[0] = -Rational::from_integer(2.into()) * params.d() * &dm;
    UniPoly::new(coeffs)
}

/// `A = 1/(2R) sum_k a_{2k} D^{-k} Z^{2k} + (-1)^{(p+1)/2} d/(2RD) Z`.
pub fn build_a(params: &InstanceParams) -> RatPoly {
    let (p, m, big_d) = (params.p, params.half(), params.big_d());
    let two_r = Rational::from_integer(2.into()) * params.r();
    let mut coeffs = vec![Rational::zero(); p as usize];
    for k in 0..=m {
        coeffs[(2 * k) as usize] = coeff_a(p, k) * rational_pow(big_d, -k) / &two_r;
    }
    coeffs[1] += sign_pow((p + 1) / 2) * params.d() / (&two_r * big_d);
    UniPoly::new(coeffs)
}

/// `f' = 1/(R D^{m-1}) (sum_j c'_{2j+1} D^{-j} Z^{2j+1} - 2d)`.
pub fn build_fprime(params: &InstanceParams) -> RatPoly {
    let (p, m, big_d) = (params.p, params.half(), params.big_d());
    let scale = (params.r() * rational_pow(big_d, m - 1)).recip();
    let mut coeffs = vec![Rational::zero(); p as usize - 1];
    for j in 0..m {
        coeffs[(2 * j + 1) as usize] = &scale * coeff_cprime(p, j) * rational_pow(big_d, -j);
    }
    coeffs[0] = -&scale * Rational::from_integer(2.into()) * params.d();
    UniPoly::new(coeffs)
}

/// `g = (Z^p - d)^2 - R` over `Q` with its factors `h = Z^p - d - sqrt(R)` and
/// `h' = Z^p - d + sqrt(R)` over `Q(sqrt(R))`.
#[derive(Debug, Clone, PartialEq)]
pub struct GFactors {
    pub g: RatPoly,
    pub h: QuadPoly,
    pub h_prime: QuadPoly,
}

pub fn build_g(params: &InstanceParams) -> RatPoly {
    let shifted = RatPoly::x_pow(params.p as usize).sub(&UniPoly::new(vec![params.d().clone()]));
    shifted
        .mul(&shifted)
        .sub(&UniPoly::new(vec![params.r().clone()]))
}

pub fn build_g_h(params: &InstanceParams) -> Result<GFactors> {
    params.require_irrational_sqrt_r()?;
    let r = params.r().clone();
    let p = params.p as usize;
    let radical_factor = |sign: i64| {
        let mut coeffs = vec![QuadExt::from_rational(Rational::zero(), r.clone()); p + 1];
        coeffs[p] = QuadExt::from_rational(Rational::one(), r.clone());
        coeffs[0] = QuadExt::new(-params.d(), Rational::from_integer(sign.into()), r.clone());
        UniPoly::new(coeffs)
    };
    Ok(GFactors {
        g: build_g(params),
        h: radical_factor(-1),
        h_prime: radical_factor(1),
    })
}

/// Evaluates a cleared symbolic polynomial at concrete `(d, D)`.
pub fn specialize_cleared(cleared: &Cleared, d: &Rational, big_d: &Rational) -> RatPoly {
    let den = cleared.denominator.eval(d, big_d);
    crate::poly::specialize(&cleared.numerator, d, big_d).scale(&den.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_num::{int, rat};
    use crate::poly::specialize;
    use proptest::prelude::*;

    fn params(p: i64, d: i64, r: i64) -> InstanceParams {
        InstanceParams::new(p, int(d), int(r)).unwrap()
    }

    #[test]
    fn param_validation() {
        assert_eq!(
            InstanceParams::new(4, int(1), int(2)),
            Err(Error::InvalidDegree(4))
        );
        assert_eq!(
            InstanceParams::new(1, int(1), int(2)),
            Err(Error::InvalidDegree(1))
        );
        assert_eq!(InstanceParams::new(5, int(0), int(2)), Err(Error::ZeroD));
        assert_eq!(InstanceParams::new(5, int(1), int(0)), Err(Error::ZeroR));
        assert_eq!(
            InstanceParams::new(5, int(3), int(9)),
            Err(Error::ZeroDiscriminant)
        );
        assert_eq!(params(5, 2, 5).big_d(), &int(-1));
    }

    #[test]
    fn symbolic_f_small() {
        assert_eq!(
            symbolic_f(5).unwrap().to_string(),
            "Z^5 - 5*D*Z^3 + 5*D^2*Z - 2*d*D^2"
        );
        assert_eq!(symbolic_f(3).unwrap().to_string(), "Z^3 - 3*D*Z - 2*d*D");
    }

    #[test]
    fn concrete_f() {
        assert_eq!(
            build_f(&params(5, 2, 5)),
            RatPoly::from_ints(&[-4, 5, 0, 5, 0, 1])
        );
        assert_eq!(
            build_f(&params(3, -7, 50)),
            RatPoly::from_ints(&[-14, 3, 0, 1])
        );
    }

    #[test]
    fn concrete_a() {
        let a = build_a(&params(5, 2, 5));
        assert_eq!(
            a,
            UniPoly::new(vec![rat(2, 10), rat(2, 10), rat(4, 10), int(0), rat(1, 10)])
        );
        let a3 = build_a(&params(3, -7, 50));
        assert_eq!(
            a3,
            UniPoly::new(vec![rat(2, 100), rat(7, 100), rat(1, 100)])
        );
        for p in (3..40).step_by(2) {
            assert_eq!(build_a(&params(p, 3, 2)).degree(), Some(p as usize - 1));
            assert_eq!(
                build_fprime(&params(p, 3, 2)).degree(),
                Some(p as usize - 2)
            );
        }
    }

    #[test]
    fn cleared_fprime() {
        let f5 = symbolic_fprime(5).unwrap();
        assert_eq!(f5.numerator.to_string(), "Z^3 - 3*D*Z - 2*d*D");
        let f3 = symbolic_fprime(3).unwrap();
        assert_eq!(f3.numerator.to_string(), "Z - 2*d");
        assert_eq!(f3.denominator, BiCoeff::r());
    }

    #[test]
    fn g_examples() {
        let ex1 = build_g_h(&params(5, 2, 5)).unwrap();
        assert_eq!(ex1.g.to_string(), "Z^10 - 4*Z^5 - 1");
        let ex2 = build_g_h(&params(7, -2158, 4656966)).unwrap();
        assert_eq!(ex2.g.to_string(), "Z^14 + 4316*Z^7 - 2");
        assert_eq!(ex2.h.to_string(), "Z^7 + (2158 - sqrt(4656966))");
        assert!(matches!(
            build_g_h(&params(5, 5, 9)),
            Err(Error::RationalSqrtR(_))
        ));
    }

    fn rat_param() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..6).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| rat(n, d)))
    }

    proptest! {
        #[test]
        fn symbolic_matches_concrete(k in 1i64..12, d in rat_param(), big_d in rat_param()) {
            let p = 2 * k + 1;
            let r = &d * &d - &big_d;
            prop_assume!(!r.is_zero());
            let inst = InstanceParams::new(p, d.clone(), r).unwrap();
            prop_assert_eq!(specialize(&symbolic_f(p).unwrap(), &d, &big_d), build_f(&inst));
            prop_assert_eq!(specialize_cleared(&symbolic_a(p).unwrap(), &d, &big_d), build_a(&inst));
            prop_assert_eq!(specialize_cleared(&symbolic_fprime(p).unwrap(), &d, &big_d), build_fprime(&inst));
        }

        #[test]
        fn f_is_monic_with_expected_constant(k in 1i64..49, d in rat_param(), big_d in rat_param()) {
            let p = 2 * k + 1;
            let r = &d * &d - &big_d;
            prop_assume!(!r.is_zero());
            let f = build_f(&InstanceParams::new(p, d.clone(), r).unwrap());
            prop_assert_eq!(f.degree(), Some(p as usize));
            prop_assert_eq!(f.leading().unwrap(), &Rational::one());
            let expected = -Rational::from_integer(2.into()) * &d * rational_pow(&big_d, (p - 1) / 2);
            prop_assert_eq!(&f.coeffs()[0], &expected);
        }

        #[test]
        fn g_factors(k in 1i64..8, d in rat_param(), r in rat_param()) {
            let p = 2 * k + 1;
            prop_assume!(rational_is_square(&r).is_none() && &d * &d != r);
            let inst = InstanceParams::new(p, d, r.clone()).unwrap();
            let gh = build_g_h(&inst).unwrap();
            let product = gh.h.try_mul(&gh.h_prime).unwrap();
            let lifted = gh.g.map(|c| QuadExt::from_rational(c.clone(), r.clone()));
            prop_assert_eq!(product, lifted);
        }
    }
}
