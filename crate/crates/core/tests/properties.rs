mod common;

use proptest::prelude::*;

use polarform::channel::{generate, ChannelParams, PolarizedChannel};
use polarform::experiments::{format_g9, snr_gain};
use polarform::matkit::{svd, CMatrix, Complex64, GaussianSource, Mat2};
use polarform::polarforming::{
    capacity_bits, capacity_upper_bound, coordinate_sweep, mimo_capacity, optimize, optimize_mimo, optimize_miso_simo,
    phase_argmax, trace_objective, water_fill, PhaseConfig,
};

use common::{grid_max_phase, quad_phase};

fn arb_c() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(r, i)| Complex64::new(r, i))
}

fn arb_hermitian() -> impl Strategy<Value = Mat2> {
    (-3.0..3.0f64, -3.0..3.0f64, arb_c())
        .prop_map(|(a, d, z)| Mat2::new(Complex64::new(a, 0.0), z.conj(), z, Complex64::new(d, 0.0)))
}

fn arb_channel(max_m: usize, max_n: usize) -> impl Strategy<Value = PolarizedChannel> {
    (1..=max_m, 1..=max_n, 0.0..=1.0f64, any::<u64>())
        .prop_map(|(m, n, chi, seed)| generate(&ChannelParams::new(m, n, chi), &mut GaussianSource::new(seed)).unwrap())
}

fn arb_matrix() -> impl Strategy<Value = CMatrix> {
    (1..5usize, 1..5usize, any::<u64>())
        .prop_map(|(r, c, seed)| GaussianSource::new(seed).sample_cscg(r, c, 1.0).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernel_is_grid_optimal(w in arb_hermitian()) {
        let psi = phase_argmax(&w).unwrap();
        prop_assert!((0.0..2.0 * std::f64::consts::PI).contains(&psi));
        prop_assert!(quad_phase(&w, psi) >= grid_max_phase(&w, 4096) - 1e-9);
    }

    #[test]
    fn single_phase_updates_never_lower_the_trace(p in arb_channel(4, 4)) {
        let mut cfg = PhaseConfig::zeros(p.m_rx(), p.n_tx());
        let mut last = trace_objective(&p, &cfg).unwrap();
        for _ in 0..3 {
            let mut ok = true;
            coordinate_sweep(&p, &mut cfg, |c| {
                let t = trace_objective(&p, c).unwrap();
                ok &= t >= last - 1e-9 * last.max(1.0);
                last = t;
            });
            prop_assert!(ok);
        }
    }

    #[test]
    fn optimizer_trace_is_monotone_and_ends_at_the_rate(p in arb_channel(3, 3), snr_db in -10.0..20.0f64) {
        let snr = 10f64.powf(snr_db / 10.0);
        let res = optimize(&p, snr).unwrap();
        prop_assert!(res.trace.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        prop_assert!((res.trace.last().unwrap() - res.rate_bits).abs() < 1e-12);
        prop_assert!(res.iterations <= 20);
        prop_assert!((res.covariance.trace().re - snr).abs() < 1e-9 * snr);
        prop_assert!(res.covariance.hermitian_defect().unwrap() < 1e-9 * snr);
    }

    #[test]
    fn reciprocity(n in 2..=4usize, seed in any::<u64>(), snr_db in -10.0..20.0f64) {
        let p = generate(&ChannelParams::new(1, n, 0.2), &mut GaussianSource::new(seed)).unwrap();
        let snr = 10f64.powf(snr_db / 10.0);
        let miso = optimize_miso_simo(&p, snr).unwrap().rate_bits;
        let simo = optimize_miso_simo(&p.reverse(), snr).unwrap().rate_bits;
        prop_assert!((miso - simo).abs() < 1e-9 * miso.max(1.0));
        let r = p.reverse().reverse();
        prop_assert_eq!(r, p);
    }

    #[test]
    fn common_phase_rotation_does_not_change_rates(p in arb_channel(3, 3), c in 0.0..std::f64::consts::TAU) {
        let rot = Complex64::from_polar(1.0, c);
        let q = p.map_blocks(|b| b.scale(rot));
        let a = optimize_mimo(&p, 3.0).unwrap().rate_bits;
        let b = optimize_mimo(&q, 3.0).unwrap().rate_bits;
        prop_assert!((a - b).abs() < 1e-9 * a.max(1.0));
    }

    #[test]
    fn svd_reconstructs(a in arb_matrix()) {
        let s = svd(&a).unwrap();
        prop_assert!(s.reconstruct().sub(&a).unwrap().frobenius_norm() < 1e-10 * a.frobenius_norm().max(1.0));
        prop_assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn water_fill_kkt(sv in prop::collection::vec(0.01..5.0f64, 1..6), pt in 0.01..100.0f64, noise in 0.1..3.0f64) {
        let mut sv = sv;
        sv.sort_by(|a, b| b.total_cmp(a));
        let wf = water_fill(&sv, pt, noise).unwrap();
        prop_assert!((wf.powers.iter().sum::<f64>() - pt).abs() <= 1e-9 * pt);
        for (p, s) in wf.powers.iter().zip(&sv) {
            let floor = noise / (s * s);
            if *p > 0.0 {
                prop_assert!((p + floor - wf.water_level).abs() <= 1e-9 * wf.water_level);
            } else {
                prop_assert!(floor >= wf.water_level * (1.0 - 1e-9));
            }
        }
        prop_assert_eq!(wf.inactive_count, wf.powers.iter().filter(|p| **p == 0.0).count());
    }

    #[test]
    fn bound_holds(h in arb_matrix(), snr_db in -10.0..25.0f64) {
        let p = 10f64.powf(snr_db / 10.0);
        let cap = mimo_capacity(&h, p, 1.0).unwrap();
        let bound = capacity_upper_bound(&h, 1.0, cap.water_fill.as_ref().unwrap()).unwrap();
        prop_assert!(cap.capacity_bits <= bound + 1e-12 * bound.max(1.0));
        prop_assert!((capacity_bits(&h, p, 1.0).unwrap() - cap.capacity_bits).abs() < 1e-9);
    }

    #[test]
    fn g9_keeps_nine_digits(x in -1e12..1e12f64) {
        let s = format_g9(x);
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-9 * x.abs());
        prop_assert!(!s.contains(' '));
    }

    #[test]
    fn gain_of_shifted_curve_is_the_shift(shift in -5.0..5.0f64, slope in 0.1..2.0f64, frac in 0.05..0.95f64) {
        let target = frac * 10.0 * slope;
        let a: Vec<(f64, f64)> = (-20..=40).map(|i| (i as f64, slope * (i as f64 + 20.0) / 6.0)).collect();
        let b: Vec<(f64, f64)> = a.iter().map(|&(x, y)| (x + shift, y)).collect();
        let g = snr_gain(&a, &b, target).unwrap();
        prop_assert!((g - shift).abs() < 1e-9);
    }
}
