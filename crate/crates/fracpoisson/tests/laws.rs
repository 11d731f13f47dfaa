//! Counting laws of both processes against frozen high-precision values and
//! structural invariants.

#![allow(clippy::excessive_precision)]

use fracpoisson::montecarlo::count_histogram;
use fracpoisson::processes::{FractionalPoisson, WrightProcess};
use fracpoisson::renewal::{counting_probs, WaitingTimeLaw};
use fracpoisson::specfun::Order;
use fracpoisson::stable::stable_pdf;
use proptest::prelude::*;

fn ord(b: f64) -> Order {
    Order::new(b).unwrap()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1e-300)
}

// 120-digit series sums, rounded to 20 digits.
const WRIGHT_P_T2: [f64; 5] = [
    0.382_924_922_548_026_2,
    0.299_764_569_589_059_67,
    0.183_696_105_325_197_98,
    0.088_114_138_641_357_71,
    0.033_080_933_244_806_15,
];
const FPP_P_T3: [f64; 5] = [
    0.174_206_270_321_968_25,
    0.201_067_243_015_270_24,
    0.192_752_961_755_913_05,
    0.158_313_634_563_745_1,
    0.114_094_782_737_424_81,
];

#[test]
fn wright_counting_probabilities() {
    let w = WrightProcess::new(ord(0.5));
    for (n, &want) in WRIGHT_P_T2.iter().enumerate() {
        assert!(close(w.counting_prob(n as u32, 2.0).unwrap().value, want, 1e-13), "n={n}");
    }
    assert!(close(w.renewal_function(10.0).unwrap().value, 3.083_128_367_552_428, 1e-12));
}

#[test]
fn fpp_counting_probabilities() {
    let p = FractionalPoisson::standard(ord(0.75));
    for (n, &want) in FPP_P_T3.iter().enumerate() {
        assert!(close(p.counting_prob(n as u32, 3.0).unwrap().value, want, 1e-13), "n={n}");
    }
    assert!(close(p.erlang_density(3, 3.0).unwrap().value, 0.118_735_225_922_808_82, 1e-13));
}

#[test]
fn stable_density_at_three_quarters() {
    let b = ord(0.75);
    assert!(close(stable_pdf(b, 0.3).unwrap().value, 0.184_618_304_704_061_26, 1e-13));
    assert!(close(stable_pdf(b, 2.0).unwrap().value, 0.107_189_992_935_841_46, 1e-13));
}

#[test]
fn generic_machinery_matches_the_closed_forms() {
    for law in [WaitingTimeLaw::ml(ord(0.6)), WaitingTimeLaw::stable(ord(0.6))] {
        let d = counting_probs(&law, 1.5, 6).unwrap();
        for n in 0..=6u32 {
            let direct = law.counting_prob(n, 1.5).unwrap().value;
            assert!((d.probs[n as usize] - direct).abs() < 1e-14, "{} n={n}", law.tag());
        }
    }
}

#[test]
fn chunked_simulation_equals_one_run() {
    let law = WaitingTimeLaw::ml(ord(0.5));
    let whole = count_histogram(&law, 2.0, 9, 0..3000).unwrap();
    let parts =
        count_histogram(&law, 2.0, 9, 0..1000).unwrap().merge(&count_histogram(&law, 2.0, 9, 1000..3000).unwrap());
    assert_eq!(whole, parts);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn counting_law_is_a_distribution(b in 0.25f64..1.0, t in 0.05f64..20.0) {
        let fpp = FractionalPoisson::standard(ord(b)).counting_probs(t, 150).unwrap();
        let wright = WrightProcess::new(ord(b)).counting_probs(t, 150).unwrap();
        for d in [&fpp, &wright] {
            prop_assert!(d.probs.iter().all(|&p| p >= -1e-15));
            let mass: f64 = d.probs.iter().sum();
            prop_assert!((mass + d.tail_mass - 1.0).abs() < 1e-9, "mass {} tail {}", mass, d.tail_mass);
        }
    }

    #[test]
    fn survival_and_renewal_are_monotone(b in 0.25f64..1.0, t in 0.05f64..20.0, dt in 0.01f64..5.0) {
        let fpp = FractionalPoisson::standard(ord(b));
        let w = WrightProcess::new(ord(b));
        prop_assert!(fpp.survival(t + dt).unwrap().value <= fpp.survival(t).unwrap().value);
        prop_assert!(w.survival(t + dt).unwrap().value <= w.survival(t).unwrap().value + 1e-15);
        prop_assert!(fpp.renewal_function(t + dt).unwrap().value >= fpp.renewal_function(t).unwrap().value);
        prop_assert!(w.renewal_function(t + dt).unwrap().value >= w.renewal_function(t).unwrap().value - 1e-12);
    }

    #[test]
    fn mean_count_is_the_renewal_function(b in 0.3f64..1.0, t in 0.1f64..10.0) {
        let p = FractionalPoisson::standard(ord(b));
        let d = p.counting_probs(t, 300).unwrap();
        prop_assume!(d.tail_mass < 1e-12);
        let m = p.renewal_function(t).unwrap().value;
        prop_assert!((d.mean() - m).abs() < 1e-8 * m.max(1.0), "{} vs {}", d.mean(), m);
    }
}
