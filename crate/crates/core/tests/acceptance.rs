//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line, written
//! straight to stdout so it shows without `--nocapture`.

use std::io::Write;
use std::time::{Duration, Instant};

use radred::constructors::{symbolic_a, symbolic_f, symbolic_fprime};
use radred::exact_num::{int, rat};
use radred::expr::Expr;
use radred::identity::{
    verify_fundamental_identity, verify_fundamental_identity_with, verify_power_expansion,
    verify_recurrences,
};
use radred::numeric::{branch_residual, eval_expression, verify_bijection, NumericConfig};
use radred::poly::BiCoeff;
use radred::reduce::{construct_example, euclid_biquadratic, euclid_denest, reduce_radical};
use radred::{BiCoeffPoly, QuadExt, RatPoly, UniPoly};

fn report(n: u32, title: &str, failures: &[String], elapsed: Duration, limit: Option<Duration>) {
    let mut failures = failures.to_vec();
    if let Some(limit) = limit {
        if elapsed > limit {
            failures.push(format!(
                "runtime {:.2} s exceeds {:.0} s",
                elapsed.as_secs_f64(),
                limit.as_secs_f64()
            ));
        }
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut line = format!(
        "criterion {n:>2} {status}: {title} ({:.2} s)",
        elapsed.as_secs_f64()
    );
    if !failures.is_empty() {
        line.push_str(&format!(" [{}]", failures.join("; ")));
    }
    writeln!(std::io::stdout().lock(), "{line}").unwrap();
    assert!(failures.is_empty(), "{line}");
}

fn expect(failures: &mut Vec<String>, ok: bool, what: &str) {
    if !ok {
        failures.push(what.to_string());
    }
}

fn odd(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).filter(|p| p % 2 == 1)
}

#[test]
fn criterion_01_demoivre_quintic() {
    let start = Instant::now();
    let mut f = Vec::new();
    let res = reduce_radical(5, int(2), int(5)).unwrap();
    expect(
        &mut f,
        res.g == RatPoly::from_ints(&[-1, 0, 0, 0, 0, -4, 0, 0, 0, 0, 1]),
        "g",
    );
    expect(&mut f, *res.params.big_d() == int(-1), "D");
    expect(
        &mut f,
        res.f == RatPoly::from_ints(&[-4, 5, 0, 5, 0, 1]),
        "f",
    );
    expect(
        &mut f,
        res.a == RatPoly::from_ints(&[2, 2, 4, 0, 1]).scale(&rat(1, 10)),
        "A",
    );
    expect(&mut f, res.z == Some(int(-1)), "z");
    expect(
        &mut f,
        res.f_rational_roots.is_empty() && res.u.is_none(),
        "f has a rational root",
    );
    report(
        1,
        "DeMoivre quintic reproduced exactly",
        &f,
        start.elapsed(),
        Some(Duration::from_secs(1)),
    );
}

#[test]
fn criterion_02_seventh_root_example() {
    let start = Instant::now();
    let mut f = Vec::new();
    let res = reduce_radical(7, int(-2158), int(4656966)).unwrap();
    expect(
        &mut f,
        res.g == RatPoly::from_ints(&[-2, 0, 0, 0, 0, 0, 0, 4316, 0, 0, 0, 0, 0, 0, 1]),
        "g",
    );
    expect(&mut f, *res.params.big_d() == int(-2), "D");
    expect(
        &mut f,
        res.f_rational_roots.contains(&int(4)) && res.u == Some(int(4)),
        "u = 4",
    );
    let residual = branch_residual(
        &res.branch_exprs(),
        7,
        res.params.d(),
        res.params.r(),
        &NumericConfig::default(),
    )
    .unwrap();
    expect(&mut f, residual.pinned, "branches not pinned to +-sqrt(R)");
    expect(
        &mut f,
        residual.max_residual_log2.is_none_or(|m| m < -200.0),
        "residual >= 2^-200",
    );
    for (branch, sign) in res.branches.iter().zip([1, -1]) {
        // 2^(4/7) (-1 +- sqrt(6)/2)
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
        let diff = eval_expression(&branch.expr, 256)
            .unwrap()
            .sub(&eval_expression(&expected, 256).unwrap());
        expect(&mut f, diff.log2_abs() < -200.0, "branch value");
    }
    report(
        2,
        "seventh-root example, exact data and residual < 2^-200",
        &f,
        start.elapsed(),
        Some(Duration::from_secs(1)),
    );
}

#[test]
fn criterion_03_construction() {
    let start = Instant::now();
    let mut f = Vec::new();
    let ex = construct_example(7, int(-2), int(4)).unwrap();
    expect(&mut f, *ex.params.d() == int(-2158), "d");
    expect(&mut f, *ex.params.r() == int(6 * 881 * 881), "R");
    let back = reduce_radical(7, ex.params.d().clone(), ex.params.r().clone()).unwrap();
    expect(&mut f, back.u == Some(int(4)), "round trip");
    report(
        3,
        "instance construction from (p, D, u) = (7, -2, 4)",
        &f,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_04_fundamental_identity_sweep() {
    let start = Instant::now();
    let f: Vec<String> = odd(3, 61)
        .filter_map(|p| {
            let r = verify_fundamental_identity(p).unwrap();
            (!r.passed()).then(|| format!("p = {p}: {r}"))
        })
        .collect();
    report(
        4,
        "fundamental identity, odd p in [3, 61]",
        &f,
        start.elapsed(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_05_expansion_sweep() {
    let start = Instant::now();
    let f: Vec<String> = odd(3, 199)
        .filter_map(|p| {
            let r = verify_power_expansion(p).unwrap();
            (!r.passed()).then(|| format!("p = {p}: {r}"))
        })
        .collect();
    report(
        5,
        "power expansion, odd p in [3, 199]",
        &f,
        start.elapsed(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_06_hypergeometric_suite() {
    let start = Instant::now();
    let f: Vec<String> = odd(5, 99)
        .filter_map(|p| {
            let r = verify_recurrences(p).unwrap();
            (!r.passed()).then(|| format!("p = {p}: {r}"))
        })
        .collect();
    report(
        6,
        "sums, recurrences and closed values, odd p in [5, 99]",
        &f,
        start.elapsed(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_07_cube_root_instance() {
    let start = Instant::now();
    let mut f = Vec::new();
    let res = reduce_radical(3, int(-7), int(50)).unwrap();
    expect(&mut f, res.u == Some(int(2)), "u");
    expect(&mut f, res.z == Some(int(-1)), "z");
    let plus = &res.branches[0];
    expect(
        &mut f,
        plus.sign == 1 && plus.display == "-1 + sqrt(2)",
        "branch",
    );
    expect(&mut f, plus.radical_sign == Some(1), "branch cube");
    let y = QuadExt::new(int(-1), int(1), int(2));
    expect(
        &mut f,
        y.pow(3) == QuadExt::new(int(-7), int(5), int(2)),
        "(sqrt2 - 1)^3",
    );
    report(
        7,
        "cube-root instance (3, -7, 50) exact",
        &f,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_08_euclid() {
    let start = Instant::now();
    let mut f = Vec::new();
    let e = euclid_denest(&int(3), &int(5)).unwrap().unwrap();
    expect(
        &mut f,
        (e.x.clone(), e.y.clone()) == (rat(5, 2), rat(1, 2)) && e.certified,
        "square-root formula",
    );
    let close = |l: &Expr, r: &Expr| {
        eval_expression(l, 256)
            .unwrap()
            .sub(&eval_expression(r, 256).unwrap())
            .log2_abs()
            < -200.0
    };
    expect(&mut f, close(&e.nested, &e.denested), "square-root numeric");
    // independent evaluation order: sqrt(5/2) + sqrt(1/2)
    let direct = Expr::sum(vec![
        Expr::sqrt(Expr::rational(rat(5, 2))),
        Expr::sqrt(Expr::rational(rat(1, 2))),
    ]);
    expect(&mut f, close(&e.nested, &direct), "square-root direct");
    let b = euclid_biquadratic(&int(7), &int(48)).unwrap().unwrap();
    expect(
        &mut f,
        (b.s.clone(), b.t.clone()) == (int(1), rat(1, 2)) && b.certified,
        "fourth-root formula",
    );
    expect(
        &mut f,
        b.square_squared_certified == Some(true),
        "fourth-root squaring",
    );
    expect(&mut f, close(&b.nested, &b.denested), "fourth-root numeric");
    report(
        8,
        "Euclid's formulas certified exactly and to 2^-200",
        &f,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_09_zero_correspondence() {
    let start = Instant::now();
    let mut f = Vec::new();
    let config = NumericConfig {
        bits: 256,
        tolerance_exp: Some(180),
    };
    for (p, d, r) in [(3, -7, 50), (5, 2, 5), (7, -2158, 4656966)] {
        let res = reduce_radical(p, int(d), int(r)).unwrap();
        let b =
            verify_bijection(p as u32, res.params.d(), res.params.r(), &res.f, &config).unwrap();
        expect(
            &mut f,
            b.u_values.len() == p as usize,
            &format!("p = {p}: count"),
        );
        expect(&mut f, b.distinct, &format!("p = {p}: not distinct"));
        expect(
            &mut f,
            b.all_zeros,
            &format!("p = {p}: relative residual >= 2^-180"),
        );
        expect(
            &mut f,
            b.rational_roots_matched,
            &format!("p = {p}: rational zero missing"),
        );
    }
    report(
        9,
        "p distinct zeros of f from one zero of h",
        &f,
        start.elapsed(),
        None,
    );
}

fn perturbations(poly: &BiCoeffPoly) -> Vec<(String, BiCoeffPoly)> {
    let mut out = Vec::new();
    let degree = poly.degree().unwrap_or(0);
    for k in 0..=degree {
        let mut coeffs = poly.coeffs().to_vec();
        coeffs.resize(degree + 1, BiCoeff::zero());
        // every monomial of the coefficient, and the constant
        let mut targets: Vec<(u32, u32)> = coeffs[k].terms().map(|(&key, _)| key).collect();
        if !targets.contains(&(0, 0)) {
            targets.push((0, 0));
        }
        for (i, j) in targets {
            let mut c = coeffs.clone();
            c[k] = c[k].add(&BiCoeff::monomial(int(1), i, j));
            out.push((format!("Z^{k} d^{i} D^{j}"), UniPoly::new(c)));
        }
    }
    out
}

#[test]
fn criterion_10_mutation_sanity() {
    let start = Instant::now();
    let mut f = Vec::new();
    let mut mutants = 0;
    for p in [3, 5, 7] {
        let (fp, ap, fpp) = (
            symbolic_f(p).unwrap(),
            symbolic_a(p).unwrap().numerator,
            symbolic_fprime(p).unwrap().numerator,
        );
        let baseline = verify_fundamental_identity_with(p, &fp, &ap, &fpp).unwrap();
        expect(
            &mut f,
            baseline.passed(),
            &format!("p = {p}: baseline fails"),
        );
        let cases = [("f", &fp), ("A", &ap), ("f'", &fpp)];
        for (name, poly) in cases {
            for (where_, mutant) in perturbations(poly) {
                mutants += 1;
                let r = match name {
                    "f" => verify_fundamental_identity_with(p, &mutant, &ap, &fpp),
                    "A" => verify_fundamental_identity_with(p, &fp, &mutant, &fpp),
                    _ => verify_fundamental_identity_with(p, &fp, &ap, &mutant),
                }
                .unwrap();
                let check = r.check("fundamental_identity").unwrap();
                let named = check
                    .witness
                    .as_deref()
                    .is_some_and(|w| w.starts_with("Z^"));
                if check.passed || !named {
                    f.push(format!("p = {p}: {name} + 1 at {where_} not caught"));
                }
            }
        }
    }
    let title =
        format!("every unit perturbation of f, A, f' caught with a witness ({mutants} mutants)");
    report(10, &title, &f, start.elapsed(), None);
}
