//! Golden examples reproduced end to end.

use serde::Serialize;

use radred::exact_num::{int, rat};
use radred::expr::Expr;
use radred::numeric::{branch_residual, eval_expression, NumericConfig};
use radred::reduce::{
    classify, construct_example, euclid_biquadratic, euclid_denest, reduce_radical,
};
use radred::{QuadExt, RatPoly, Result};

type Case = (&'static str, fn() -> Result<bool>);

#[derive(Debug, Serialize)]
pub struct SelftestCheck {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<SelftestCheck>,
    pub passed: bool,
}

fn demoivre_quintic() -> Result<bool> {
    let res = reduce_radical(5, int(2), int(5))?;
    Ok(
        res.g == RatPoly::from_ints(&[-1, 0, 0, 0, 0, -4, 0, 0, 0, 0, 1])
            && *res.params.big_d() == int(-1)
            && res.f == RatPoly::from_ints(&[-4, 5, 0, 5, 0, 1])
            && res.a == RatPoly::from_ints(&[2, 2, 4, 0, 1]).scale(&rat(1, 10))
            && res.z == Some(int(-1))
            && res.f_rational_roots.is_empty(),
    )
}

fn seventh_root() -> Result<bool> {
    let res = reduce_radical(7, int(-2158), int(4656966))?;
    let exact = res.g == RatPoly::from_ints(&[-2, 0, 0, 0, 0, 0, 0, 4316, 0, 0, 0, 0, 0, 0, 1])
        && *res.params.big_d() == int(-2)
        && res.u == Some(int(4));
    let residual = branch_residual(
        &res.branch_exprs(),
        7,
        res.params.d(),
        res.params.r(),
        &NumericConfig::default(),
    )?;
    let below = residual.pinned && residual.max_residual_log2.is_none_or(|m| m < -200.0);
    // 2^(4/7) (-1 +- sqrt(6)/2), built independently of the reduction
    let mut matched = true;
    for (branch, sign) in res.branches.iter().zip([1, -1]) {
        let expected = Expr::product(vec![
            Expr::nth_root(7, Expr::rational(int(16))),
            Expr::sum(vec![
                Expr::rational(int(-1)),
                Expr::product(vec![
                    Expr::rational(rat(sign, 2)),
                    Expr::sqrt(Expr::rational(int(6))),
                ]),
            ]),
        ]);
        let diff = eval_expression(&branch.expr, 256)?.sub(&eval_expression(&expected, 256)?);
        matched &= diff.log2_abs() < -200.0;
    }
    Ok(exact && below && matched)
}

fn construction() -> Result<bool> {
    let ex = construct_example(7, int(-2), int(4))?;
    let back = reduce_radical(7, ex.params.d().clone(), ex.params.r().clone())?;
    Ok(*ex.params.d() == int(-2158)
        && *ex.params.r() == int(6 * 881 * 881)
        && back.u == Some(int(4)))
}

fn cube_root() -> Result<bool> {
    let res = reduce_radical(3, int(-7), int(50))?;
    let y = QuadExt::new(int(-1), int(1), int(2));
    Ok(res.u == Some(int(2))
        && res.z == Some(int(-1))
        && res.branches[0].display == "-1 + sqrt(2)"
        && res.branches[0].radical_sign == Some(1)
        && y.pow(3) == QuadExt::new(int(-7), int(5), int(2)))
}

fn euclid() -> Result<bool> {
    let e = euclid_denest(&int(3), &int(5))?;
    let b = euclid_biquadratic(&int(7), &int(48))?;
    let (Some(e), Some(b)) = (e, b) else {
        return Ok(false);
    };
    let close = |l: &Expr, r: &Expr| -> Result<bool> {
        Ok(eval_expression(l, 256)?
            .sub(&eval_expression(r, 256)?)
            .log2_abs()
            < -200.0)
    };
    Ok((e.x.clone(), e.y.clone()) == (rat(5, 2), rat(1, 2))
        && e.certified
        && (b.s.clone(), b.t.clone()) == (int(1), rat(1, 2))
        && b.certified
        && close(&e.nested, &e.denested)?
        && close(&b.nested, &b.denested)?)
}

fn classification() -> Result<bool> {
    let c = classify(7, int(-2158), int(4656966))?;
    Ok(c.same_quadratic_field == Some(false) && c.case == Some("b"))
}

pub fn run() -> SelftestReport {
    let cases: [Case; 6] = [
        ("demoivre_quintic", demoivre_quintic),
        ("seventh_root_example", seventh_root),
        ("construction_round_trip", construction),
        ("cube_root_instance", cube_root),
        ("euclid_formulas", euclid),
        ("classification", classification),
    ];
    let checks: Vec<SelftestCheck> = cases
        .iter()
        .map(|(name, case)| match case() {
            Ok(passed) => SelftestCheck {
                name,
                passed,
                error: None,
            },
            Err(e) => SelftestCheck {
                name,
                passed: false,
                error: Some(e.to_string()),
            },
        })
        .collect();
    let passed = checks.iter().all(|c| c.passed);
    SelftestReport { checks, passed }
}
