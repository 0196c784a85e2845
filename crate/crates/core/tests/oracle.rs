//! Engine and decomposition values against independent references: frozen
//! 30-digit values, an Euler–Maclaurin ζ built here, and brute-force
//! partial-sum brackets.

// references are quoted to the digits they were computed with
#![allow(clippy::excessive_precision)]

use std::f64::consts::{FRAC_PI_4, LN_2, PI};

use etafloor_core::decomposition::{decompose, inner_product_w1_w2, max_star_w};
use etafloor_core::eta::{conversion_factor, eta_partial_sum, zeta_from_eta};
use etafloor_core::scanner::{bound_floor, locate_zero, tail_inequality_check, ZeroFinder};
use etafloor_core::{Complex, ComplexPoint, Engine, Evaluator, Real};

const ENGINES: [Engine; 3] = [Engine::Euler, Engine::Accel, Engine::Checked];

// (alpha, beta, Re η, Im η), 30-digit reference evaluations rounded to f64.
const FROZEN: &[(Real, Real, Real, Real)] = &[
    (1.0, 0.0, LN_2, 0.0),
    (2.0, 0.0, 0.822_467_033_424_113_2, 0.0),
    (3.0, 0.0, 0.901_542_677_369_695_7, 0.0),
    (4.0, 0.0, 0.947_032_829_497_245_9, 0.0),
    (0.5, 0.0, 0.604_898_643_421_630_4, 0.0),
    (0.5, 14.134_725, -1.621_225_738_72e-8, -2.663_504_932_66e-7),
    (0.75, 50.0, 0.559_605_089_973_277_8, 0.666_494_448_522_759),
];

/// Rounding in the frozen references themselves.
fn reference_error(re: Real, im: Real) -> Real {
    1e-15 * (re.abs() + im.abs()) + 1e-18
}

#[test]
fn frozen_eta_values() {
    for &(a, b, re, im) in FROZEN {
        for engine in ENGINES {
            let r = Evaluator::new(engine)
                .eval(ComplexPoint::new(a, b), 1e-12)
                .unwrap();
            let err = (r.value - Complex::new(re, im)).norm();
            assert!(err < 1e-12, "{engine:?} at {a}+{b}i: error {err:e}");
            assert!(
                err <= r.abs_error_estimate + reference_error(re, im),
                "{engine:?} at {a}+{b}i: estimate {:e} below error {err:e}",
                r.abs_error_estimate
            );
        }
    }
}

#[test]
fn partial_engine_on_fast_real_points() {
    let ev = Evaluator::new(Engine::Partial);
    for &(a, _, re, _) in &FROZEN[2..4] {
        let r = ev.eval(ComplexPoint::real(a), 1e-10).unwrap();
        assert!((r.value.re - re).abs() < 1e-10);
    }
}

fn zeta_euler_maclaurin(s: Complex) -> Complex {
    // Bernoulli numbers B_2 .. B_20
    const B: [Real; 10] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
        43867.0 / 798.0,
        -174611.0 / 330.0,
    ];
    let n = 200.0;
    let one = Complex::new(1.0, 0.0);
    let pow = |x: Real, e: Complex| (-e * x.ln()).exp();
    let mut sum: Complex = (1..200).map(|k| pow(k as Real, s)).sum();
    sum += pow(n, s - one) / (s - one) + 0.5 * pow(n, s);
    let mut rising = s; // s (s+1) ... (s+2k-2)
    let mut factorial = 2.0;
    for (k, b) in B.iter().enumerate() {
        let k = k + 1;
        sum += rising * (b / factorial) * pow(n, s + (2 * k - 1) as Real);
        rising *= (s + (2 * k - 1) as Real) * (s + (2 * k) as Real);
        factorial *= ((2 * k + 1) * (2 * k + 2)) as Real;
    }
    sum
}

#[test]
fn engines_match_euler_maclaurin() {
    let mut worst: Real = 0.0;
    for i in 0..24 {
        let a = 0.3 + 0.07 * i as Real;
        for j in 0..20 {
            let b = -95.0 + 10.0 * j as Real + 0.37 * i as Real;
            let s = ComplexPoint::new(a, b);
            let reference = conversion_factor(s) * zeta_euler_maclaurin(s.to_complex());
            for engine in [Engine::Euler, Engine::Accel] {
                let r = Evaluator::new(engine).eval(s, 1e-10).unwrap();
                let err = (r.value - reference).norm();
                worst = worst.max(err);
                assert!(err < 1e-10, "{engine:?} at {s}: {err:e}");
            }
        }
    }
    assert!(worst > 0.0);
}

#[test]
fn real_values_inside_partial_sum_bracket() {
    let n = 100_000usize;
    for a in [0.3, 0.5, 0.9, 1.0, 1.5, 2.0] {
        let s = ComplexPoint::real(a);
        let lo_hi = [
            eta_partial_sum(s, n).unwrap().re,
            eta_partial_sum(s, n + 1).unwrap().re,
        ];
        let (lo, hi) = (lo_hi[0].min(lo_hi[1]), lo_hi[0].max(lo_hi[1]));
        for engine in ENGINES {
            let v = Evaluator::new(engine).eval(s, 1e-12).unwrap().value.re;
            assert!(
                v >= lo - 1e-13 && v <= hi + 1e-13,
                "{engine:?} at {a}: {v} not in [{lo}, {hi}]"
            );
        }
    }
}

#[test]
fn zeta_values() {
    let ev = Evaluator::default();
    let z2 = zeta_from_eta(&ev, ComplexPoint::real(2.0), 1e-12).unwrap();
    let z3 = zeta_from_eta(&ev, ComplexPoint::real(3.0), 1e-12).unwrap();
    assert!((z2.value.re - PI * PI / 6.0).abs() < 1e-12);
    assert!((z3.value.re - 1.202_056_903_159_594_3).abs() < 1e-12);
}

#[test]
fn decomposition_reference_values() {
    let ev = Evaluator::default();
    let d2 = decompose(&ev, ComplexPoint::real(2.0), FRAC_PI_4, 1e-13).unwrap();
    assert!((d2.tail.re - -0.177_532_966_575_886_78).abs() < 1e-12);
    assert!((d2.tail3.re - 0.072_467_033_424_113_22).abs() < 1e-12);

    let d1 = decompose(&ev, ComplexPoint::real(1.0), FRAC_PI_4, 1e-13).unwrap();
    assert!((d1.w - -0.433_955_418_904_547_86).abs() < 1e-12);
    assert!((d1.w1 - -0.707_106_781_186_547_5).abs() < 1e-15);
    assert!((d1.w2 - 0.273_151_362_281_999_67).abs() < 1e-12);

    let ip1 = inner_product_w1_w2(&ev, ComplexPoint::real(1.0), 1e-12).unwrap();
    assert!((ip1.closed_form - -PI * (LN_2 - 0.5)).abs() < 1e-12);
    assert!((ip1.quadrature - -0.606_789_763_508_705_5).abs() < 1e-11);
    let ip3 = inner_product_w1_w2(&ev, ComplexPoint::real(3.0), 1e-12).unwrap();
    assert!((ip3.quadrature - -0.020_846_570_057_810_03).abs() < 1e-12);
}

#[test]
fn max_star_and_floor_references() {
    let ev = Evaluator::default();
    let m1 = max_star_w(&ev, 1.0, 1e-13).unwrap();
    assert!((m1.value - 0.433_955_418_904_547_86).abs() < 1e-12 && m1.holds);
    assert!((m1.bound - 0.707_106_781_186_547_5).abs() < 1e-15);
    let m4 = max_star_w(&ev, 4.0, 1e-13).unwrap();
    assert!((m4.value - 0.074_906_890_885_522_97).abs() < 1e-12 && m4.holds);
    assert!((m4.bound - 0.088_388_347_648_318_44).abs() < 1e-15);

    assert!((bound_floor(1.0) - 0.292_893_218_813_452_5).abs() < 1e-15);
    assert!((bound_floor(0.25) - 0.189_207_115_002_721_1).abs() < 1e-15);
    let b = tail_inequality_check(&ev, ComplexPoint::real(1.0), 1e-12).unwrap();
    assert!((b.margin - 0.400_253_961_746_492_83).abs() < 1e-12);
}

#[test]
fn zeta_zero_ordinates() {
    let finder = ZeroFinder {
        workers: 2,
        ..ZeroFinder::default()
    };
    for (lo, hi, t) in [
        (14.0, 14.3, 14.134_725_141_734_694),
        (20.9, 21.2, 21.022_039_638_771_555),
        (24.9, 25.2, 25.010_857_580_145_689),
        (30.3, 30.6, 30.424_876_125_859_513),
    ] {
        let z = locate_zero(&finder, lo, hi, 1e-8).unwrap();
        assert!((z.t - t).abs() < 1e-7, "{} vs {t}", z.t);
    }
}

#[test]
fn floor_is_crossed_near_beta_163() {
    use etafloor_core::scanner::scan_line;
    use etafloor_core::ScanConfig;

    // 30-digit |η(0.75 + 163.09246184527322i)|, below the floor 0.15910358474628546
    let s = ComplexPoint::new(0.75, 163.092_461_845_273_22);
    let r = Evaluator::new(Engine::Accel).eval(s, 1e-12).unwrap();
    assert!((r.value.norm() - 0.143_782_261_981_121_77).abs() < 1e-12);
    let c = Evaluator::default().eval(s, 1e-10).unwrap();
    assert!((c.value.norm() - 0.143_782_261_981_121_77).abs() < 1e-10);
    assert!((bound_floor(0.75) - 0.159_103_584_746_285_46).abs() < 1e-15);

    let line = scan_line(
        0.75,
        163.0,
        163.2,
        0.01,
        &ScanConfig {
            workers: 1,
            ..ScanConfig::default()
        },
    )
    .unwrap();
    assert!(!line.violations.is_empty());
    assert!(line.violations.iter().all(|b| b.margin < -line.tol));
    assert!((line.argmin_beta.unwrap() - 163.092_461_8).abs() < 1e-6);
}
