//! Implementation checks against independent reference computations.

mod common;

use std::f64::consts::PI;

use polarform::baselines::{
    dpa_capacity, evaluate, evaluate_single_sided, fpa_rate, lhcp_rx, lhcp_tx, linear, paa_angle, paa_optimize,
    spra_coordinate_ascent, spra_exhaustive, PolarizationVectorPair, SchemeId,
};
use polarform::channel::{apply_xpi, coupling_matrix, generate, psd_sqrt_2x2, ChannelParams, PolarizedChannel};
use polarform::experiments::mean_and_std_error;
use polarform::matkit::{Complex64 as Complex, GaussianSource, Mat2, Vec2};
use polarform::polarforming::{
    capacity_bits, effective_channel, mimo_capacity, optimize, optimize_mimo, optimize_miso_simo, phase_argmax,
    siso_optimal_phase, water_fill, FixedEnd, PhaseConfig,
};

use common::{blkdiag, eig_sqrt, grid_max_phase, logdet_capacity, quad_phase, random_hermitian};

fn channel(m: usize, n: usize, chi: f64, seed: u64) -> PolarizedChannel {
    generate(&ChannelParams::new(m, n, chi), &mut GaussianSource::new(seed)).unwrap()
}

#[test]
fn phase_argmax_beats_grid() {
    let mut src = GaussianSource::new(1);
    for _ in 0..500 {
        let w = random_hermitian(&mut src);
        let psi = phase_argmax(&w).unwrap();
        assert!(quad_phase(&w, psi) >= grid_max_phase(&w, 10_000) - 1e-6);
    }
}

#[test]
fn siso_phase_beats_grid() {
    let mut src = GaussianSource::new(2);
    for _ in 0..500 {
        let b: Vec2 = [src.unit_cscg(), src.unit_cscg()];
        let gain = |phi: f64| (b[0] + Complex::from_polar(1.0, -phi) * b[1]).norm_sqr();
        let best = (0..10_000).map(|k| gain(2.0 * PI * k as f64 / 1e4)).fold(0.0, f64::max);
        assert!(gain(siso_optimal_phase(&b)) >= best - 1e-6);
    }
}

#[test]
fn psd_sqrt_matches_eigendecomposition() {
    let mut src = GaussianSource::new(3);
    for _ in 0..1000 {
        let a = Mat2::new(src.unit_cscg(), src.unit_cscg(), src.unit_cscg(), src.unit_cscg());
        let w = a * a.adjoint();
        let got = psd_sqrt_2x2(&w).unwrap();
        let want = eig_sqrt(&w);
        let err = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| (got.at(i, j) - want.at(i, j)).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-9 * (1.0 + w.frobenius_norm()), "{err}");
    }
    for mu in [0.0, 0.3, 1.0] {
        let x = coupling_matrix(mu);
        let s = psd_sqrt_2x2(&x).unwrap();
        let e = eig_sqrt(&x);
        assert!((s.at(0, 1) - e.at(0, 1)).norm() < 1e-12);
    }
}

#[test]
fn xpi_matches_dense_product() {
    let p = channel(2, 3, 0.4, 4);
    let (mu_t, mu_r) = (0.3, 0.7);
    let q = apply_xpi(&p, mu_t, mu_r).unwrap();
    let (st, sr) = (eig_sqrt(&coupling_matrix(mu_t)), eig_sqrt(&coupling_matrix(mu_r)));
    for m in 0..2 {
        for n in 0..3 {
            let want = sr * *p.block(m, n) * st;
            for i in 0..2 {
                for j in 0..2 {
                    assert!((q.block(m, n).at(i, j) - want.at(i, j)).norm() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn effective_channel_matches_block_diagonal_product() {
    let mut src = GaussianSource::new(5);
    for (m, n) in [(1, 1), (2, 3), (4, 2)] {
        let p = channel(m, n, 0.2, 10 + m as u64);
        let theta: Vec<f64> = (0..n).map(|_| src.unit_cscg().arg() + PI).collect();
        let phi: Vec<f64> = (0..m).map(|_| src.unit_cscg().arg() + PI).collect();
        let cfg = PhaseConfig::new(theta, phi).unwrap();
        let h = effective_channel(&p, &cfg).unwrap().h;
        let g = blkdiag(&cfg.rx_vectors());
        let f = blkdiag(&cfg.tx_vectors());
        let want = g.adjoint().matmul(&p.to_cmatrix()).unwrap().matmul(&f).unwrap();
        assert!(h.sub(&want).unwrap().frobenius_norm() < 1e-12);
    }
}

#[test]
fn capacity_matches_cholesky_logdet() {
    let mut src = GaussianSource::new(6);
    for (r, k) in [(1, 1), (1, 3), (3, 1), (2, 2), (4, 3), (3, 5)] {
        for snr_db in [-10.0, 0.0, 10.0, 25.0] {
            let h = src.sample_cscg(r, k, 1.0).unwrap();
            let p = 10f64.powf(snr_db / 10.0);
            let cap = mimo_capacity(&h, p, 0.7).unwrap();
            let oracle = logdet_capacity(&h, &cap.covariance, 0.7);
            assert!((cap.capacity_bits - oracle).abs() < 1e-9 * oracle.max(1.0));
            assert!((capacity_bits(&h, p, 0.7).unwrap() - oracle).abs() < 1e-9 * oracle.max(1.0));
            assert!((cap.covariance.trace().re - p).abs() < 1e-9 * p);
        }
    }
}

#[test]
fn water_fill_beats_power_split_grid() {
    let obj = |l: [f64; 2], p0: f64, pt: f64| (1.0 + p0 * l[0] * l[0]).log2() + (1.0 + (pt - p0) * l[1] * l[1]).log2();
    for (lambda, pt) in [
        ([2.0, 0.01], 1.0),
        ([1.3, 0.9], 2.0),
        ([1.0, 1.0], 0.5),
        ([3.0, 0.4], 0.05),
    ] {
        let wf = water_fill(&lambda, pt, 1.0).unwrap();
        let grid = (0..=1_000_000)
            .map(|k| obj(lambda, pt * k as f64 / 1e6, pt))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(wf.capacity_bits >= grid - 1e-12, "{lambda:?}");
        assert!((obj(lambda, wf.powers[0], pt) - wf.capacity_bits).abs() < 1e-12);
    }
    let wf = water_fill(&[2.0, 0.01], 1.0, 1.0).unwrap();
    assert_eq!(wf.inactive_count, 1);
    assert_eq!(wf.powers, vec![1.0, 0.0]);
}

#[test]
fn channel_second_moments() {
    let chi = 0.2;
    let p = generate(&ChannelParams::new(250, 400, chi), &mut GaussianSource::new(7)).unwrap();
    let count = p.blocks().len() as f64;
    let mut co = 0.0;
    let mut cross = 0.0;
    for b in p.blocks() {
        co += 0.5 * (b.at(0, 0).norm_sqr() + b.at(1, 1).norm_sqr());
        cross += 0.5 * (b.at(0, 1).norm_sqr() + b.at(1, 0).norm_sqr());
    }
    let (co, cross) = (co / count, cross / count);
    assert!((co / (1.0 / 1.2) - 1.0).abs() < 0.02, "{co}");
    assert!((cross / (0.2 / 1.2) - 1.0).abs() < 0.02, "{cross}");
}

#[test]
fn paa_angle_matches_grid() {
    let mut src = GaussianSource::new(8);
    for _ in 0..300 {
        let w = random_hermitian(&mut src);
        let quad = |a: f64| {
            let v = linear(a);
            let wv = w.mul_vec(&v);
            (v[0].conj() * wv[0] + v[1].conj() * wv[1]).re
        };
        let best = (0..10_000)
            .map(|k| quad(PI * k as f64 / 1e4))
            .fold(f64::NEG_INFINITY, f64::max);
        let a = paa_angle(&w);
        assert!((0.0..PI).contains(&a));
        assert!(quad(a) >= best - 1e-6);
    }
    assert_eq!(paa_angle(&Mat2::real(2.0, 0.0, 0.0, 1.0)), 0.0);
}

#[test]
fn spra_exhaustive_is_brute_force_and_dominates_ascent() {
    let lr = [lhcp_rx(), polarform::baselines::rhcp_rx()];
    let lt = [lhcp_tx(), polarform::baselines::rhcp_tx()];
    for seed in 0..40 {
        let p = channel(2, 2, 0.2, 100 + seed);
        let ex = spra_exhaustive(&p, 3.0, 1.0).unwrap();
        let mut best = 0.0f64;
        for mask in 0..16u32 {
            let rx: Vec<Vec2> = (0..2).map(|m| lr[(mask >> m) as usize & 1]).collect();
            let tx: Vec<Vec2> = (0..2).map(|n| lt[(mask >> (2 + n)) as usize & 1]).collect();
            let h = polarform::polarforming::assemble(&p, &rx, &tx).unwrap();
            best = best.max(capacity_bits(&h, 3.0, 1.0).unwrap());
        }
        assert!((ex.capacity_bits - best).abs() < 1e-12);
        let ca = spra_coordinate_ascent(&p, 3.0, 1.0).unwrap();
        let cpa = fpa_rate(&p, &PolarizationVectorPair::cpa(), 3.0, 1.0).unwrap();
        assert!(ca.capacity_bits <= ex.capacity_bits + 1e-12);
        assert!(ca.capacity_bits >= cpa - 1e-12);
    }
}

#[test]
fn per_channel_dominance() {
    for seed in 0..200 {
        let p = channel(2, 2, 0.2, 1000 + seed);
        let snr = 10.0;
        let paa = paa_optimize(&p, snr, 1.0).unwrap().capacity_bits;
        let lpa = evaluate(SchemeId::Lpa, &p, snr).unwrap();
        let cpa = evaluate(SchemeId::Cpa, &p, snr).unwrap();
        let dpa = dpa_capacity(&p, snr, 1.0).unwrap();
        let pf = optimize(&p, snr).unwrap();
        assert!(paa >= lpa - 1e-12);
        assert!(dpa >= cpa - 1e-12);
        assert!(pf.rate_bits >= pf.trace[0] - 1e-12);
    }
}

#[test]
fn single_sided_polarforming_dominates_circular_schemes() {
    for seed in 0..200 {
        for fixed in [
            FixedEnd::Receiver(linear(0.0)),
            FixedEnd::Receiver(lhcp_rx()),
            FixedEnd::Transmitter(linear(0.0)),
            FixedEnd::Transmitter(lhcp_tx()),
        ] {
            let (m, n) = if matches!(fixed, FixedEnd::Receiver(_)) {
                (1, 3)
            } else {
                (3, 1)
            };
            let p = channel(m, n, 0.2, 5000 + seed);
            let pf = evaluate_single_sided(SchemeId::Polarforming, &p, &fixed, 2.0).unwrap();
            // Circular states are phase points; linear ones are not.
            for s in [SchemeId::Spra, SchemeId::Cpa] {
                assert!(pf >= evaluate_single_sided(s, &p, &fixed, 2.0).unwrap() - 1e-12, "{s}");
            }
            assert!(evaluate_single_sided(SchemeId::Dpa, &p, &fixed, 2.0).is_err());
        }
    }
}

#[test]
fn siso_mimo_and_miso_paths_agree() {
    for seed in 0..300 {
        let p = channel(1, 1, 0.2, 7000 + seed);
        let a = optimize_miso_simo(&p, 3.0).unwrap().rate_bits;
        let b = optimize_mimo(&p, 3.0).unwrap().rate_bits;
        // Only the termination rule differs.
        assert!((a - b).abs() <= 1e-3 * a.max(b) + 1e-12, "{a} {b}");
    }
}

#[test]
fn ensemble_ordering_at_5db() {
    let snr = 10f64.powf(0.5);
    let schemes = [
        SchemeId::Polarforming,
        SchemeId::Spra,
        SchemeId::Paa,
        SchemeId::Cpa,
        SchemeId::Lpa,
    ];
    let mut rates = vec![Vec::new(); schemes.len()];
    for r in 0..10_000u64 {
        let p = generate(&ChannelParams::new(2, 2, 0.2), &mut GaussianSource::child(11, r)).unwrap();
        for (k, s) in schemes.iter().enumerate() {
            rates[k].push(evaluate(*s, &p, snr).unwrap());
        }
    }
    let stats: Vec<(f64, f64)> = rates.iter().map(|x| mean_and_std_error(x)).collect();
    let above = |a: usize, b: usize| {
        let gap = stats[a].0 - stats[b].0;
        let se = (stats[a].1.powi(2) + stats[b].1.powi(2)).sqrt();
        assert!(gap > 3.0 * se, "{} vs {}: gap {gap}, se {se}", schemes[a], schemes[b]);
    };
    above(0, 1);
    above(1, 3);
    above(0, 2);
    above(2, 4);
}

#[test]
fn dpa_identity_example() {
    let p = PolarizedChannel::uniform(1, 1, Mat2::IDENTITY).unwrap();
    let pt: f64 = 4.0;
    let want = 2.0 * (1.0 + pt / 2.0).log2();
    assert!((dpa_capacity(&p, pt, 1.0).unwrap() - want).abs() < 1e-12);
}
