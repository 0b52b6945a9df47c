//! The reduction of `y = (d + sqrt(R))^(1/p)` to the zeros of `f`, the
//! construction of instances with a prescribed rational zero, Euclid's
//! classical denestings and the field-theoretic case split.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::coeffs::{check_degree, coeff_c};
use crate::constructors::{build_a, build_f, build_g, InstanceParams};
use crate::error::{Error, Result};
use crate::exact_num::{
    format_rational, is_small_prime, rational_is_square, rational_odd_root, rational_pow,
    squarefree_part, QuadExt, Rational,
};
use crate::expr::Expr;
use crate::numeric::{
    branch_residual, verify_bijection, BijectionReport, NumericConfig, ResidualReport,
};
use crate::poly::{rational_roots, RatPoly};

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

fn ser_rationals<S: serde::Serializer>(
    qs: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(format_rational))
}

fn ser_poly<S: serde::Serializer>(p: &RatPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.to_strings())
}

fn ser_maybe_rational<S: serde::Serializer>(
    q: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&format_rational(q)),
        None => s.serialize_str("irrational"),
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Writes `q = s^2 * m` with `s > 0` rational and `m` a squarefree integer.
pub fn split_square(q: &Rational) -> Result<(Rational, Rational)> {
    let m = Rational::from_integer(squarefree_part(q)?);
    let s = rational_is_square(&(q / &m)).expect("quotient by the squarefree part is a square");
    Ok((s, m))
}

/// `sqrt(q)` as `s * sqrt(m)` with `m` squarefree.
fn sqrt_expr(q: &Rational) -> Result<Expr> {
    let (s, m) = split_square(q)?;
    Ok(scaled_sqrt(&s, &m))
}

fn scaled_sqrt(s: &Rational, m: &Rational) -> Expr {
    if m.is_one() {
        Expr::rational(s.clone())
    } else {
        Expr::product(vec![
            Expr::rational(s.clone()),
            Expr::sqrt(Expr::rational(m.clone())),
        ])
    }
}

fn power(base: Expr, e: u32) -> Expr {
    match e {
        0 => Expr::rational(Rational::one()),
        1 => base,
        _ => match base.as_rational() {
            Some(q) => Expr::rational(rational_pow(q, e as i64)),
            None => Expr::pow(base, e),
        },
    }
}

/// Polynomial `poly` evaluated at the expression `x`.
fn poly_expr(poly: &RatPoly, x: &Expr) -> Expr {
    if let Some(q) = x.as_rational() {
        return Expr::rational(poly.eval(q));
    }
    Expr::sum(
        poly.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                Expr::product(vec![Expr::rational(c.clone()), power(x.clone(), k as u32)])
            })
            .collect(),
    )
}

/// One of the two values `z^((p+1)/2) (u/(2D) +- A(u) sqrt(R))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Branch {
    /// Sign in front of `A(u) sqrt(R)`.
    pub sign: i8,
    pub expr: Expr,
    pub display: String,
    /// For rational `u`: the exact value of `y^p` in `Q(sqrt(R))`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_power: Option<String>,
    /// For rational `u`: `+1` if `y^p = d + sqrt(R)`, `-1` if `y^p = d - sqrt(R)`, `0` if neither.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radical_sign: Option<i8>,
}

/// Builds the branch with the given `sign` from expressions for `z` and `u`
/// and a concrete `A`. Exposed so that corrupted inputs can be tested.
pub fn branch_expression(
    params: &InstanceParams,
    z_expr: &Expr,
    u_expr: &Expr,
    a: &RatPoly,
    sign: i8,
) -> Result<Expr> {
    let big_d = params.big_d();
    let (s, m) = split_square(params.r())?;
    let signed_s = if sign < 0 { -s } else { s };
    let z_factor = power(z_expr.clone(), ((params.p() + 1) / 2) as u32);
    let half_u = match u_expr.as_rational() {
        Some(u) => Expr::rational(u / (int(2) * big_d)),
        None => Expr::product(vec![
            Expr::rational((int(2) * big_d).recip()),
            u_expr.clone(),
        ]),
    };
    let radical = match u_expr.as_rational() {
        Some(u) => scaled_sqrt(&(a.eval(u) * signed_s), &m),
        None => Expr::product(vec![
            poly_expr(&a.scale(&signed_s), u_expr),
            Expr::sqrt(Expr::rational(m.clone())),
        ]),
    };
    Ok(Expr::product(vec![
        z_factor,
        Expr::sum(vec![half_u, radical]),
    ]))
}

/// `D^((p+1)/2) (u/(2D) + sign A(u) sqrt(R))^p`, the exact `p`-th power of a
/// branch for rational `u`.
fn exact_branch_power(params: &InstanceParams, a: &RatPoly, u: &Rational, sign: i8) -> QuadExt {
    let big_d = params.big_d();
    let au = a.eval(u);
    let w = QuadExt::new(
        u / (int(2) * big_d),
        if sign < 0 { -au } else { au },
        params.r().clone(),
    );
    w.pow(params.p() as u32)
        .scale(&rational_pow(big_d, (params.p() + 1) / 2))
}

fn radical_sign_of(params: &InstanceParams, v: &QuadExt) -> i8 {
    let r = params.r().clone();
    if *v == QuadExt::new(params.d().clone(), Rational::one(), r.clone()) {
        1
    } else if *v == QuadExt::new(params.d().clone(), -Rational::one(), r) {
        -1
    } else {
        0
    }
}

/// Exact checks of the quadratic form when `z` is rational.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticCheck {
    /// `y y' = z`
    pub product_is_z: bool,
    /// `z^((p-1)/2) (y + y') = u`
    pub scaled_sum_is_u: bool,
}

/// `{y, y'} = (1/(2 z^((p-1)/2))) (u +- sqrt(u^2 - 4D))` for rational `u`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticForm {
    #[serde(serialize_with = "ser_rational")]
    pub discriminant: Rational,
    /// `4 D^2 A(u)^2 R = u^2 - 4D`, tying this form to the branch form.
    pub matches_branch_form: bool,
    pub roots: [Expr; 2],
    pub display: [String; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<QuadraticCheck>,
}

fn quadratic_form(
    params: &InstanceParams,
    a: &RatPoly,
    z: Option<&Rational>,
    z_expr: &Expr,
    u: &Rational,
) -> Result<QuadraticForm> {
    let m = params.half();
    let big_d = params.big_d();
    let disc = u * u - int(4) * big_d;
    let au = a.eval(u);
    let matches_branch_form = int(4) * big_d * big_d * &au * &au * params.r() == disc;
    // 1/(2 z^m) = z^(m+1) / (2D)
    let scale = Expr::product(vec![
        Expr::rational((int(2) * big_d).recip()),
        power(z_expr.clone(), (m + 1) as u32),
    ]);
    // a negative discriminant keeps its radicand as is (complex pair)
    let radical = if disc.is_positive() {
        sqrt_expr(&disc)?
    } else {
        Expr::sqrt(Expr::rational(disc.clone()))
    };
    let root = |sign: i64| {
        let rad = if sign < 0 {
            Expr::product(vec![Expr::rational(-Rational::one()), radical.clone()])
        } else {
            radical.clone()
        };
        Expr::product(vec![
            scale.clone(),
            Expr::sum(vec![Expr::rational(u.clone()), rad]),
        ])
    };
    let roots = [root(1), root(-1)];
    let exact = z.map(|z| {
        let zm = rational_pow(z, m);
        let y = QuadExt::new(u / (int(2) * &zm), (int(2) * &zm).recip(), disc.clone());
        let y_prime = y.conjugate();
        let product = y.checked_mul(&y_prime).expect("same extension");
        let sum = y.checked_add(&y_prime).expect("same extension");
        QuadraticCheck {
            product_is_z: product == QuadExt::from_rational(z.clone(), disc.clone()),
            scaled_sum_is_u: sum.scale(&zm) == QuadExt::from_rational(u.clone(), disc.clone()),
        }
    });
    Ok(QuadraticForm {
        discriminant: disc,
        matches_branch_form,
        display: [roots[0].to_string(), roots[1].to_string()],
        roots,
        exact,
    })
}

/// Conditions that are necessary for `y` to have degree `2p`. Irreducibility
/// of `g` itself is not decided.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NecessaryConditions {
    pub sqrt_r_irrational: bool,
    pub d_nonzero: bool,
    pub big_d_nonzero: bool,
    #[serde(serialize_with = "ser_rationals")]
    pub g_rational_roots: Vec<Rational>,
    pub g_has_no_rational_root: bool,
    pub irreducibility_decided: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionResult {
    pub params: InstanceParams,
    #[serde(serialize_with = "ser_poly")]
    pub g: RatPoly,
    #[serde(serialize_with = "ser_poly")]
    pub f: RatPoly,
    #[serde(rename = "A", serialize_with = "ser_poly")]
    pub a: RatPoly,
    pub f_display: String,
    #[serde(rename = "A_display")]
    pub a_display: String,
    /// Rational `p`-th root of `D`, or `"irrational"`.
    #[serde(serialize_with = "ser_maybe_rational")]
    pub z: Option<Rational>,
    pub z_expr: Expr,
    /// Largest rational zero of `f`, or `"irrational"`.
    #[serde(serialize_with = "ser_maybe_rational")]
    pub u: Option<Rational>,
    pub u_expr: Expr,
    #[serde(serialize_with = "ser_rationals")]
    pub f_rational_roots: Vec<Rational>,
    pub branches: [Branch; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadratic_form: Option<QuadraticForm>,
    pub necessary_conditions: NecessaryConditions,
}

impl ReductionResult {
    pub fn branch_exprs(&self) -> [Expr; 2] {
        [self.branches[0].expr.clone(), self.branches[1].expr.clone()]
    }
}

/// Reduces `(d + sqrt(R))^(1/p)` to a zero `u` of `f` and the real `p`-th root
/// `z` of `D`.
pub fn reduce_radical(p: i64, d: Rational, r: Rational) -> Result<ReductionResult> {
    let params = InstanceParams::new(p, d, r)?;
    params.require_irrational_sqrt_r()?;
    let f = build_f(&params);
    let a = build_a(&params);
    let g = build_g(&params);
    let big_d = params.big_d().clone();

    let z = rational_odd_root(&big_d, p as u32);
    let z_expr = match &z {
        Some(z) => Expr::rational(z.clone()),
        None => Expr::nth_root(p as u32, Expr::rational(big_d.clone())),
    };
    let f_rational_roots = rational_roots(&f)?;
    let u = f_rational_roots.last().cloned();
    let u_expr = match &u {
        Some(u) => Expr::rational(u.clone()),
        None => Expr::real_root(&f),
    };

    let mut branches = Vec::with_capacity(2);
    for sign in [1i8, -1] {
        let expr = branch_expression(&params, &z_expr, &u_expr, &a, sign)?;
        let (exact_power, radical_sign) = match &u {
            Some(u) => {
                let v = exact_branch_power(&params, &a, u, sign);
                (Some(v.to_string()), Some(radical_sign_of(&params, &v)))
            }
            None => (None, None),
        };
        branches.push(Branch {
            sign,
            display: expr.to_string(),
            expr,
            exact_power,
            radical_sign,
        });
    }
    let branches: [Branch; 2] = branches.try_into().expect("two branches");

    let quadratic_form = match &u {
        Some(u) => Some(quadratic_form(&params, &a, z.as_ref(), &z_expr, u)?),
        None => None,
    };

    let g_rational_roots = rational_roots(&g)?;
    let necessary_conditions = NecessaryConditions {
        sqrt_r_irrational: true,
        d_nonzero: true,
        big_d_nonzero: true,
        g_has_no_rational_root: g_rational_roots.is_empty(),
        g_rational_roots,
        irreducibility_decided: false,
    };

    Ok(ReductionResult {
        f_display: f.to_string(),
        a_display: a.to_string(),
        params,
        g,
        f,
        a,
        z,
        z_expr,
        u,
        u_expr,
        f_rational_roots,
        branches,
        quadratic_form,
        necessary_conditions,
    })
}

/// Numeric confirmation of a reduction: branch residuals and, for small `p`,
/// the zeros of `f` generated from one zero of `h`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericCheck {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<ResidualReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bijection: Option<BijectionReport>,
    pub notes: Vec<String>,
    pub passed: bool,
}

pub const BIJECTION_MAX_P: i64 = 13;

pub fn numeric_check(result: &ReductionResult, config: &NumericConfig) -> Result<NumericCheck> {
    let params = &result.params;
    let p = params.p();
    let mut notes = Vec::new();
    let residual = if params.r().is_positive() {
        Some(branch_residual(
            &result.branch_exprs(),
            p as u32,
            params.d(),
            params.r(),
            config,
        )?)
    } else {
        notes.push("R < 0: branch values are complex, residual check skipped".to_string());
        None
    };
    let bijection = if p <= BIJECTION_MAX_P {
        Some(verify_bijection(
            p as u32,
            params.d(),
            params.r(),
            &result.f,
            config,
        )?)
    } else {
        notes.push(format!(
            "p > {BIJECTION_MAX_P}: zero-correspondence check skipped"
        ));
        None
    };
    let passed =
        residual.as_ref().is_none_or(|r| r.passed) && bijection.as_ref().is_none_or(|b| b.passed);
    Ok(NumericCheck {
        residual,
        bijection,
        notes,
        passed,
    })
}

/// An instance `(p, d, R)` for which `f` has the prescribed zero `u`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructedExample {
    pub params: InstanceParams,
    #[serde(serialize_with = "ser_rational")]
    pub u: Rational,
    #[serde(serialize_with = "ser_poly")]
    pub g: RatPoly,
    pub g_display: String,
}

/// Solves `f(u) = 0` for `d`: `d = (1/2) sum_j c_{2j+1} u^{2j+1} / D^j`, then
/// sets `R = d^2 - D`.
pub fn construct_example(p: i64, big_d: Rational, u: Rational) -> Result<ConstructedExample> {
    check_degree(p)?;
    if big_d.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let m = (p - 1) / 2;
    let sum = (0..=m).fold(Rational::zero(), |acc, j| {
        acc + coeff_c(p, j) * rational_pow(&u, 2 * j + 1) * rational_pow(&big_d, -j)
    });
    let d = sum / int(2);
    let r = &d * &d - &big_d;
    let params = InstanceParams::new(p, d, r)?;
    params.require_irrational_sqrt_r()?;
    debug_assert!(build_f(&params).eval(&u).is_zero());
    let g = build_g(&params);
    Ok(ConstructedExample {
        g_display: g.to_string(),
        params,
        u,
        g,
    })
}

fn require_euclid_inputs(d: &Rational, r: &Rational) -> Result<()> {
    if !d.is_positive() || !r.is_positive() {
        return Err(Error::NonPositiveEuclid {
            d: d.to_string(),
            r: r.to_string(),
        });
    }
    if rational_is_square(r).is_some() {
        return Err(Error::RationalSqrtR(r.to_string()));
    }
    Ok(())
}

/// `sqrt(d + sqrt(R)) = sqrt(x) + sqrt(y)` with `x, y = (d +- k)/2`, `k^2 = d^2 - R`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EuclidDenesting {
    #[serde(serialize_with = "ser_rational")]
    pub k: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub x: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub y: Rational,
    /// Both radicands are nonnegative.
    pub real: bool,
    /// `(sqrt(x) + sqrt(y))^2 = d + sqrt(R)` exactly.
    pub certified: bool,
    pub denested: Expr,
    pub nested: Expr,
    pub display: String,
}

pub fn euclid_denest(d: &Rational, r: &Rational) -> Result<Option<EuclidDenesting>> {
    require_euclid_inputs(d, r)?;
    let Some(k) = rational_is_square(&(d * d - r)) else {
        return Ok(None);
    };
    let x = (d + &k) / int(2);
    let y = (d - &k) / int(2);
    // (sqrt x + sqrt y)^2 = (x + y) + sqrt(4xy)
    let square = QuadExt::new(&x + &y, Rational::one(), int(4) * &x * &y);
    let certified = square == QuadExt::new(d.clone(), Rational::one(), r.clone());
    let denested = Expr::sum(vec![sqrt_expr(&x)?, sqrt_expr(&y)?]);
    let nested = Expr::sqrt(Expr::sum(vec![
        Expr::rational(d.clone()),
        Expr::sqrt(Expr::rational(r.clone())),
    ]));
    Ok(Some(EuclidDenesting {
        real: !x.is_negative() && !y.is_negative(),
        display: format!("{nested} = {denested}"),
        k,
        x,
        y,
        certified,
        denested,
        nested,
    }))
}

/// `(d + sqrt(R))^(1/4) = sqrt(sqrt(s) + t) + sqrt(sqrt(s) - t)` with
/// `s = (d + k^2)/8`, `t = k/2`, `k^4 = d^2 - R`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EuclidBiquadratic {
    #[serde(serialize_with = "ser_rational")]
    pub k: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub s: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub t: Rational,
    /// `8s - 4t^2 = d` and `64 s (s - t^2) = R`, i.e. the fourth power of the
    /// right side is `d + sqrt(R)`.
    pub certified: bool,
    /// When `sqrt(s)` is rational: the square of the right side, `w`, and the
    /// exact check `w^2 = d + sqrt(R)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square_squared_certified: Option<bool>,
    pub denested: Expr,
    pub nested: Expr,
    pub display: String,
    pub degree_eight_certified: bool,
}

pub fn euclid_biquadratic(d: &Rational, r: &Rational) -> Result<Option<EuclidBiquadratic>> {
    require_euclid_inputs(d, r)?;
    let Some(k2) = rational_is_square(&(d * d - r)) else {
        return Ok(None);
    };
    let Some(k) = rational_is_square(&k2) else {
        return Ok(None);
    };
    let s = (d + &k2) / int(8);
    let t = &k / int(2);
    let certified = int(8) * &s - int(4) * &t * &t == *d && int(64) * &s * (&s - &t * &t) == *r;

    let (square, square_squared_certified) = match rational_is_square(&s) {
        Some(sigma) => {
            // w = 2 sigma + sqrt(4 (s - t^2)); w^2 has radical part sqrt(16 sigma^2 * 4 (s - t^2))
            let inner = int(4) * (&s - &t * &t);
            let w = QuadExt::new(int(2) * &sigma, Rational::one(), inner.clone());
            let w2 = w.pow(2);
            let rebased = QuadExt::new(
                w2.rational_part().clone(),
                Rational::one(),
                w2.sqrt_part() * w2.sqrt_part() * &inner,
            );
            let ok = w2.sqrt_part().is_positive()
                && rebased == QuadExt::new(d.clone(), Rational::one(), r.clone());
            (Some(w.to_string()), Some(ok))
        }
        None => (None, None),
    };

    let root_s = sqrt_expr(&s)?;
    let denested = Expr::sum(vec![
        Expr::sqrt(Expr::sum(vec![root_s.clone(), Expr::rational(t.clone())])),
        Expr::sqrt(Expr::sum(vec![root_s, Expr::rational(-&t)])),
    ]);
    let denested = simplify_sqrt_of_rational(denested)?;
    let nested = Expr::nth_root(
        4,
        Expr::sum(vec![
            Expr::rational(d.clone()),
            Expr::sqrt(Expr::rational(r.clone())),
        ]),
    );
    Ok(Some(EuclidBiquadratic {
        display: format!("{nested} = {denested}"),
        k,
        s,
        t,
        certified,
        square,
        square_squared_certified,
        denested,
        nested,
        degree_eight_certified: false,
    }))
}

/// Rewrites `sqrt(q)` leaves with rational `q` as `s * sqrt(m)`.
fn simplify_sqrt_of_rational(e: Expr) -> Result<Expr> {
    Ok(match e {
        Expr::Sqrt { arg } => match arg.as_rational() {
            Some(q) if !q.is_negative() && !q.is_zero() => sqrt_expr(q)?,
            _ => Expr::sqrt(simplify_sqrt_of_rational(*arg)?),
        },
        Expr::Add { terms } => Expr::sum(
            terms
                .into_iter()
                .map(simplify_sqrt_of_rational)
                .collect::<Result<_>>()?,
        ),
        other => other,
    })
}

/// Whether the cyclotomic quadratic subfield coincides with `Q(sqrt(R))`, and
/// whether `D` is a rational `p`-th power. Only meaningful for prime `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub p: i64,
    pub p_prime: bool,
    /// `Q(sqrt(R)) = Q(sqrt((-1)^((p-1)/2) p))`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub same_quadratic_field: Option<bool>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_opt_int"
    )]
    pub radicand_squarefree_part: Option<BigInt>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_opt_int"
    )]
    pub cyclotomic_squarefree_part: Option<BigInt>,
    /// `"a"` if `D` is a rational `p`-th power, else `"b"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    pub root_of_unity_conclusion: String,
}

fn ser_opt_int<S: serde::Serializer>(
    n: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match n {
        Some(n) => s.serialize_str(&n.to_string()),
        None => s.serialize_none(),
    }
}

pub fn classify(p: i64, d: Rational, r: Rational) -> Result<CaseReport> {
    let params = InstanceParams::new(p, d, r)?;
    let p_prime = u64::try_from(p).map(is_small_prime).unwrap_or(false);
    if !p_prime {
        return Ok(CaseReport {
            p,
            p_prime,
            same_quadratic_field: None,
            radicand_squarefree_part: None,
            cyclotomic_squarefree_part: None,
            case: None,
            basis: None,
            root_of_unity_conclusion: "not applicable: p is not prime".to_string(),
        });
    }
    let m = (p - 1) / 2;
    let radicand = squarefree_part(params.r())?;
    let cyclotomic = squarefree_part(&int(if m % 2 == 0 { p } else { -p }))?;
    let same = radicand == cyclotomic;
    let case_a = rational_odd_root(params.big_d(), p as u32).is_some();
    let basis = if case_a {
        format!("u^k sqrt(R)^l, 0 <= k < {p}, 0 <= l < 2")
    } else {
        format!("z^j u^k sqrt(R)^l, 0 <= j, k < {p}, 0 <= l < 2")
    };
    let conclusion = if same {
        "inconclusive: Q(sqrt(R)) equals the quadratic subfield of Q(zeta_p)".to_string()
    } else {
        "if f is irreducible over Q then zeta_p is not in the splitting field of g".to_string()
    };
    Ok(CaseReport {
        p,
        p_prime,
        same_quadratic_field: Some(same),
        radicand_squarefree_part: Some(radicand),
        cyclotomic_squarefree_part: Some(cyclotomic),
        case: Some(if case_a { "a" } else { "b" }),
        basis: Some(basis),
        root_of_unity_conclusion: conclusion,
    })
}
