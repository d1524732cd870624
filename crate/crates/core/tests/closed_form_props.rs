use num_complex::Complex64;
use scarf2_core::closed_forms::{q_closed_sine_form, q_sum_sine_form};
use scarf2_core::model::bound_state_count_for;
use scarf2_core::quadrature::{overlap_factors, OverlapFactor};
use scarf2_core::verification::{GridPoint, ParameterGrid, Tolerances};
use scarf2_core::{
    energy, hermitian_norm, pseudo_inner, q_closed, q_sum, verify_closed_forms, Error, OverlapSpec, QuadratureControls,
    QuasiParity, ScarfParams, StateIndex, VanishingReason,
};

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn standard_grid_report_passes() {
    let report = verify_closed_forms(
        &ParameterGrid::standard(),
        &Tolerances::default(),
        &QuadratureControls::default(),
    );
    let failed: Vec<_> = report.failures().collect();
    assert!(failed.is_empty(), "{failed:#?}");
    assert!(report.all_pass);
    assert!(report.max_abs_diff <= 1e-8);
    for kind in [
        "a0",
        "a1",
        "q_sum",
        "q_closed",
        "pseudo_inner",
        "herm",
        "l_norm",
        "j_w",
        "normalized",
    ] {
        assert!(
            report.entries.iter().any(|e| e.case_id.contains(kind)),
            "no {kind} entries"
        );
    }
    let mut ids: Vec<_> = report.entries.iter().map(|e| e.case_id.as_str()).collect();
    let sorted = ids.clone();
    ids.sort();
    assert_eq!(ids, sorted);
    ids.dedup();
    assert_eq!(ids.len(), report.entries.len(), "case ids are not unique");
}

#[test]
fn report_is_deterministic() {
    let grid = ParameterGrid::new(ParameterGrid::standard().points.into_iter().step_by(4).collect());
    let a = verify_closed_forms(&grid, &Tolerances::default(), &QuadratureControls::default());
    let b = verify_closed_forms(&grid, &Tolerances::default(), &QuadratureControls::default());
    assert_eq!(a, b);
}

#[test]
fn integer_sum_point_goes_through_the_gamma_form() {
    // alpha + beta = -5: the sine forms are 0/0 here
    let (a, b) = (r(-2.0), r(-3.0));
    assert_eq!(q_closed_sine_form(a, b, 1, 1), Err(Error::Degenerate));
    let spec = OverlapSpec::new(a, b, b, a, 1, 1).unwrap();
    assert_eq!(q_sum_sine_form(&spec), Err(Error::Degenerate));
    let grid = ParameterGrid::new(vec![GridPoint::new(a, b)]);
    let report = verify_closed_forms(&grid, &Tolerances::default(), &QuadratureControls::default());
    assert!(report.all_pass);
    assert!(report
        .entries
        .iter()
        .any(|e| e.case_id.contains("a=-2,b=-3") && e.case_id.ends_with("q_closed")));
    assert!((q_closed(a, b, 1, 1).unwrap() - q_sum(&spec).unwrap()).norm() <= 1e-12);
}

#[test]
fn four_case_orthogonality() {
    for p in ParameterGrid::standard().points.iter().filter(|p| p.is_pt()) {
        let beta = p.beta.re;
        let real = p.alpha.im == 0.0;
        for ds in QuasiParity::BOTH {
            let count = bound_state_count_for(p.alpha, p.beta);
            for n in 0..count {
                for l in 0..count {
                    if ds == QuasiParity::Minus && l >= bound_state_count_for(-p.alpha, p.beta) && !real {
                        continue;
                    }
                    let res = pseudo_inner(p.alpha, beta, ds, n, l).unwrap();
                    let zero = Complex64::new(0.0, 0.0);
                    match (real, ds, n == l) {
                        (_, _, false) => assert_eq!(res.value, zero),
                        (true, QuasiParity::Plus, true) => {
                            let nf = n as f64;
                            let pole = |g: f64| g <= 0.0 && g.fract() == 0.0;
                            if pole(-p.alpha.re - nf) || pole(-beta - nf) {
                                assert_eq!(res.value, zero, "{p:?} n = {n}");
                            } else {
                                assert!(res.value.norm() > 1e-6, "{p:?} n = {n}");
                            }
                        }
                        (true, QuasiParity::Minus, true) | (false, QuasiParity::Plus, true) => {
                            assert_eq!(res.value, zero);
                            assert_eq!(res.vanishing_reason, Some(VanishingReason::SineFactorZero));
                        }
                        (false, QuasiParity::Minus, true) => assert!(res.value.norm() > 1e-6, "{p:?} n = {n}"),
                    }
                }
            }
        }
    }
}

#[test]
fn hermitian_norms_are_positive() {
    for p in ParameterGrid::standard().points.iter().filter(|p| p.is_hermitian()) {
        for n in 0..bound_state_count_for(p.alpha, p.beta) {
            let k = hermitian_norm(p.alpha, n, n).unwrap();
            assert!(k.re > 0.0 && k.im.abs() <= 1e-12 * k.re, "{p:?} n = {n}: {k}");
        }
    }
}

#[test]
fn sign_law_for_equal_real_parameters() {
    for alpha in [-1.7, -2.5, -4.5, -6.2, -9.5] {
        let count = bound_state_count_for(r(alpha), r(alpha));
        assert!((0..count).all(|n| -alpha - n as f64 > 0.0));
        for n in 0..count {
            let res = pseudo_inner(r(alpha), alpha, QuasiParity::Plus, n, n).unwrap();
            assert_eq!(res.sign, if n % 2 == 0 { 1 } else { -1 }, "alpha = {alpha}, n = {n}");
            assert!(res.value.im.abs() <= 1e-12 * res.value.re.abs());
        }
    }
}

#[test]
fn pt_orthogonality_identity() {
    let controls = QuadratureControls::default();
    for p in ParameterGrid::standard().points.iter().filter(|p| p.is_pt()) {
        let params = ScarfParams::from_complex(p.alpha, p.beta).unwrap();
        for qk in QuasiParity::BOTH {
            for qb in QuasiParity::BOTH {
                let (ak, ab) = (p.alpha * qk.sign(), p.alpha * qb.sign());
                for n in 0..bound_state_count_for(ak, p.beta) {
                    for l in 0..bound_state_count_for(ab, p.beta) {
                        let ket = OverlapFactor::plain(n, ak, p.beta);
                        let bra = OverlapFactor {
                            reflect: true,
                            conjugate: true,
                            ..OverlapFactor::plain(l, ab, p.beta)
                        };
                        let est = overlap_factors(ket, bra, None, &controls).unwrap();
                        let en = energy(&params, StateIndex::new(n, qk)).unwrap();
                        let el = energy(&params, StateIndex::new(l, qb)).unwrap();
                        let lhs = (en - el.conj()) * est.value;
                        let allowed = (en - el.conj()).norm() * (est.abs_error_est + 1e-12);
                        assert!(lhs.norm() <= allowed, "{p:?} ({n},{qk:?}) ({l},{qb:?}): {lhs}");
                    }
                }
            }
        }
    }
}
