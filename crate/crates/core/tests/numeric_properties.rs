use proptest::prelude::*;

use radred::exact_num::{int, rat};
use radred::numeric::{
    eval_expression, root_of_unity_newton, root_of_unity_series, verify_bijection, NumericConfig,
};
use radred::reduce::{construct_example, numeric_check, reduce_radical};

#[test]
fn doubling_precision_keeps_branch_values() {
    for (p, d, r) in [(3, -7, 50), (5, 2, 5), (7, -2158, 4656966)] {
        let res = reduce_radical(p, int(d), int(r)).unwrap();
        for b in &res.branches {
            let low = eval_expression(&b.expr, 128).unwrap();
            let high = eval_expression(&b.expr, 256).unwrap();
            assert!(
                low.sub(&high.with_prec(low.prec())).log2_abs() < -100.0,
                "{}",
                b.display
            );
        }
    }
}

#[test]
fn zeros_are_conjugate_symmetric() {
    for (p, d, r) in [(3, -7, 50), (5, 2, 5), (7, -2158, 4656966), (11, 3, 7)] {
        let res = reduce_radical(p, int(d), int(r)).unwrap();
        let b = verify_bijection(
            p as u32,
            res.params.d(),
            res.params.r(),
            &res.f,
            &NumericConfig::default(),
        )
        .unwrap();
        assert!(b.conjugate_symmetric && b.passed, "p = {p}");
    }
}

#[test]
fn roots_of_unity_agree_to_working_precision() {
    for bits in [128, 256, 512] {
        for p in [3u32, 7, 13] {
            let a = root_of_unity_series(p, bits);
            let b = root_of_unity_newton(p, bits).unwrap();
            let diff = a.sub(&b).abs_bound();
            assert!(
                diff.is_zero() || diff.log2_abs() < -(bits as f64 - 16.0),
                "p = {p}, bits = {bits}"
            );
        }
    }
}

#[test]
fn negative_radicand_skips_the_real_residual() {
    let res = reduce_radical(5, int(1), int(-3)).unwrap();
    let check = numeric_check(&res, &NumericConfig::default()).unwrap();
    assert!(check.residual.is_none() && check.passed);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constructed_instances_pass_numeric_checks(
        p in prop::sample::select(vec![3i64, 5, 7]),
        dn in -5i64..=5, dd in 1i64..=2,
        un in -5i64..=5,
    ) {
        prop_assume!(dn != 0);
        let Ok(ex) = construct_example(p, rat(dn, dd), int(un)) else { return Ok(()) };
        let res = reduce_radical(p, ex.params.d().clone(), ex.params.r().clone()).unwrap();
        let check = numeric_check(&res, &NumericConfig::default()).unwrap();
        prop_assert!(check.passed, "{:?}", check);
    }
}
