use invspec::bessel::canonical_spectrum;
use invspec::families::{bound_cases, ordered_pairs};
use invspec::profiles::*;
use invspec::sturm::*;
use invspec::{Error, SpectrumResult};
use nalgebra::DMatrix;

fn one() -> HermitianProfile {
    HermitianProfile::constant(1.0).unwrap()
}

fn unit_weight() -> SymplecticProfile {
    SymplecticProfile::custom("one", |_| 1.0)
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn mesh_examples() {
    let m = build_mesh(16, 1.0).unwrap();
    assert_eq!(m.size(), 16);
    for (k, &x) in m.nodes().iter().enumerate() {
        assert_eq!(x, k as f64 / 16.0);
    }
    let g = build_mesh(16, 2.0).unwrap();
    assert_eq!(g.nodes()[1], 1.0 / 128.0);
    for k in 0..=8 {
        assert_eq!(g.nodes()[k], 0.5 * (k as f64 / 8.0).powi(2));
    }
    for n in [16, 64, 1000] {
        let g = build_mesh(n, 2.5).unwrap();
        assert_eq!(g.nodes().len(), n + 1);
        assert_eq!((g.nodes()[0], g.nodes()[n]), (0.0, 1.0));
        assert!(g.nodes().windows(2).all(|w| w[0] < w[1]));
        for i in 0..=n {
            assert_eq!(g.dist_right()[i], g.nodes()[n - i]);
        }
    }
    assert!(matches!(build_mesh(17, 1.0), Err(Error::InvalidArgument(_))));
    assert!(matches!(build_mesh(14, 1.0), Err(Error::InvalidArgument(_))));
}

#[test]
fn textbook_forms() {
    let mesh = build_mesh(32, 1.0).unwrap();
    let f = assemble(&unit_weight(), &one(), &mesh).unwrap();
    let h = 1.0 / 32.0;
    for i in 1..32 {
        assert!((f.stiffness.diag[i] - 2.0 / h).abs() < 1e-11);
        assert!((f.mass.diag[i] - 4.0 * h / 6.0).abs() < 1e-15);
    }
    for i in 0..32 {
        assert!((f.stiffness.off[i] + 1.0 / h).abs() < 1e-11);
        assert!((f.mass.off[i] - h / 6.0).abs() < 1e-15);
    }
    assert_eq!(f.quadrature.points_per_element, 2);
}

#[test]
fn constants_span_the_stiffness_kernel() {
    for (n, grading) in [(64, 1.0), (256, 2.0), (512, 3.0)] {
        let mesh = build_mesh(n, grading).unwrap();
        for m in 0..3 {
            let f = assemble(&SymplecticProfile::Canonical, &HermitianProfile::canonical(m), &mesh).unwrap();
            let ones = vec![1.0; n + 1];
            for r in f.stiffness.mul_vec(&ones) {
                assert!(r.abs() < 1e-12, "row sum {r}");
            }
        }
    }
}

fn interpolated_quotient(n: usize, phi: impl Fn(f64) -> f64) -> f64 {
    let mesh = build_mesh(n, 2.0).unwrap();
    let f = assemble(&SymplecticProfile::FubiniStudy, &one(), &mesh).unwrap();
    let v: Vec<f64> = mesh.nodes().iter().map(|&x| phi(x)).collect();
    f.stiffness.quadratic_form(&v) / f.mass.quadratic_form(&v)
}

#[test]
fn fubini_study_quotient_of_first_legendre_polynomial() {
    // ∫ 2x(1-x)·4 / ∫ (2x-1)² = (4/3)/(1/3); P1 reproduces the linear
    // function and two-point Gauss integrates both quadratics exactly
    for n in [32, 128, 512, 2048] {
        assert!((interpolated_quotient(n, |x| 2.0 * x - 1.0) - 4.0).abs() < 1e-12);
    }
    // the next Legendre polynomial, 6x² - 6x + 1, has quotient 12
    let mut last = f64::INFINITY;
    for n in [32, 128, 512, 2048] {
        let err = (interpolated_quotient(n, |x| 6.0 * x * x - 6.0 * x + 1.0) - 12.0).abs();
        assert!(err < last);
        last = err;
    }
    assert!(last < 1e-4);
}

#[test]
fn neumann_laplacian() {
    let mut prev = f64::INFINITY;
    for n in [64, 256, 1024] {
        let f = assemble(&unit_weight(), &one(), &build_mesh(n, 1.0).unwrap()).unwrap();
        let p = solve_generalized(&f, 3).unwrap();
        assert!(p.values[0].abs() < 1e-9);
        let err = rel(p.values[1], std::f64::consts::PI.powi(2));
        assert!(err < prev);
        prev = err;
        assert!(rel(p.values[2], 4.0 * std::f64::consts::PI.powi(2)) < 0.01);
    }
    assert!(prev < 1e-5);
}

#[test]
fn eigenpairs_are_m_orthonormal_with_small_residuals() {
    let mesh = build_mesh(256, 2.0).unwrap();
    let f = assemble(&SymplecticProfile::Canonical, &HermitianProfile::canonical(2), &mesh).unwrap();
    let p = solve_generalized(&f, 6).unwrap();
    for i in 0..6 {
        let kv = f.stiffness.mul_vec(&p.vectors[i]);
        let mv = f.mass.mul_vec(&p.vectors[i]);
        let res: f64 = kv.iter().zip(&mv).map(|(a, b)| (a - p.values[i] * b).powi(2)).sum::<f64>().sqrt();
        let scale: f64 = kv.iter().map(|a| a * a).sum::<f64>().sqrt().max(1.0);
        assert!(res <= 1e-8 * scale, "residual {res} for pair {i}");
        for j in 0..6 {
            let ip: f64 = p.vectors[j].iter().zip(&mv).map(|(a, b)| a * b).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((ip - want).abs() < 1e-8, "<v{i}, M v{j}> = {ip}");
        }
    }
    // the zero mode is the constant vector
    let v0 = &p.vectors[0];
    assert!(v0.iter().all(|x| (x - v0[0]).abs() < 1e-8 * v0[0].abs()));
}

#[test]
fn dense_cross_check() {
    let mesh = build_mesh(64, 2.0).unwrap();
    for (g, h) in [
        (SymplecticProfile::Canonical, HermitianProfile::canonical(2)),
        (SymplecticProfile::FubiniStudy, one()),
        (SymplecticProfile::mixture(0.4).unwrap(), HermitianProfile::canonical(1)),
    ] {
        let f = assemble(&g, &h, &mesh).unwrap();
        let n = f.stiffness.dim();
        let dense = |t: &SymTridiagonal| {
            DMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    t.diag[i]
                } else if i + 1 == j {
                    t.off[i]
                } else if j + 1 == i {
                    t.off[j]
                } else {
                    0.0
                }
            })
        };
        let l = dense(&f.mass).cholesky().unwrap().l();
        let linv = l.clone().try_inverse().unwrap();
        let c = &linv * dense(&f.stiffness) * linv.transpose();
        let c = (&c + c.transpose()) * 0.5;
        let mut ev: Vec<f64> = c.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let ours = eigenvalues(&f, 8).unwrap();
        for j in 0..8 {
            assert!((ours[j] - ev[j]).abs() <= 1e-9 * ev[j].abs().max(1.0), "{j}: {} vs {}", ours[j], ev[j]);
        }
    }
}

#[test]
fn zero_mode_and_semidefiniteness() {
    for case in bound_cases(11, 6) {
        for n in [64, 1024, 8192] {
            let mu = raw_eigenvalues(&case.gamma, &case.h, n, 2.0, 2).unwrap();
            assert!(mu[0] >= -1e-9 && mu[0].abs() <= 2e-9, "mu0 = {}", mu[0]);
        }
    }
}

#[test]
fn solves_are_deterministic() {
    let mesh = build_mesh(512, 2.0).unwrap();
    let f = assemble(&SymplecticProfile::mixture(0.3).unwrap(), &HermitianProfile::canonical(1), &mesh).unwrap();
    let a = solve_generalized(&f, 6).unwrap();
    let b = solve_generalized(&f, 6).unwrap();
    assert_eq!(a, b);
    let g = assemble(&SymplecticProfile::mixture(0.3).unwrap(), &HermitianProfile::canonical(1), &mesh).unwrap();
    assert_eq!(f, g);
}

#[test]
fn solver_rejects_bad_requests() {
    let f = assemble(&unit_weight(), &one(), &build_mesh(16, 1.0).unwrap()).unwrap();
    assert!(eigenvalues(&f, 0).is_err());
    assert!(eigenvalues(&f, 18).is_err());
    let bad = SymplecticProfile::custom("negative", |x| x - 0.5);
    assert!(matches!(
        assemble(&bad, &one(), &build_mesh(16, 1.0).unwrap()),
        Err(Error::Evaluation { .. })
    ));
}

#[test]
fn fubini_study_spectrum() {
    let r = invariant_spectrum(&SymplecticProfile::FubiniStudy, &one(), 4, 1e-6).unwrap();
    assert!(r.eigenvalues[0].abs() < 1e-9);
    for k in 1..=4 {
        assert!(rel(r.eigenvalues[k], (k * (k + 1)) as f64) < 1e-3);
        assert_eq!(r.eigenvalues[k], r.raw[k] * 0.5);
    }
}

#[test]
fn canonical_spectra_match_bessel_zeros() {
    for m in 0..4 {
        let fem = invariant_spectrum(&SymplecticProfile::Canonical, &HermitianProfile::canonical(m), 5, 1e-6).unwrap();
        let exact = canonical_spectrum(m, 5, true).unwrap();
        assert!(fem.eigenvalues[0].abs() < 1e-9);
        for j in 1..=5 {
            assert!(rel(fem.eigenvalues[j], exact.eigenvalues[j]) < 1e-6, "m={m} j={j}");
            assert!(fem.error_estimates[j] < 1e-5 * exact.eigenvalues[j]);
        }
    }
    let fem = invariant_spectrum(&SymplecticProfile::Canonical, &one(), 3, 1e-6).unwrap();
    for (j, want) in [2.8915929814733925, 7.340985321061946, 15.235631171831043].iter().enumerate() {
        assert!(rel(fem.eigenvalues[j + 1], *want) < 1e-3);
    }
}

#[test]
fn second_order_convergence() {
    let h = HermitianProfile::canonical(0);
    let levels: Vec<Vec<f64>> = [512, 1024, 2048, 4096]
        .iter()
        .map(|&n| raw_eigenvalues(&SymplecticProfile::Canonical, &h, n, 2.0, 5).unwrap())
        .collect();
    for j in 1..=5 {
        let d: Vec<f64> = levels.windows(2).map(|w| (w[0][j] - w[1][j]).abs()).collect();
        for w in d.windows(2) {
            assert!(w[0] / w[1] >= 3.0, "j={j}: ratio {}", w[0] / w[1]);
        }
    }
}

#[test]
fn returned_eigenvalues_are_simple() {
    for case in bound_cases(5, 4) {
        let r = invariant_spectrum(&case.gamma, &case.h, 6, 1e-6).unwrap();
        assert_eq!(r.len(), 7);
        assert!(r.multiplicities.iter().all(|&k| k == 1));
        for w in r.eigenvalues.windows(2).skip(1) {
            assert!((w[1] - w[0]) / w[1] > 1e-6);
        }
    }
}

#[test]
fn reflection_invariance() {
    let asym = bump_profile(
        3.0,
        Mollifier {
            center: 0.38,
            half_width: 0.12,
            height: 0.11,
        },
    )
    .unwrap();
    for g in [asym, SymplecticProfile::mixture(0.2).unwrap()] {
        let a = invariant_spectrum(&g, &one(), 5, 1e-6).unwrap();
        let b = invariant_spectrum(&reflect(&g), &one(), 5, 1e-6).unwrap();
        for j in 1..=5 {
            assert!(rel(a.eigenvalues[j], b.eigenvalues[j]) <= 1e-8, "{} j={j}", g.name());
        }
    }
}

#[test]
fn discrete_monotonicity() {
    for p in ordered_pairs(4, 12) {
        let a = raw_eigenvalues(&p.lower.0, &p.lower.1, 512, 2.0, 5).unwrap();
        let b = raw_eigenvalues(&p.upper.0, &p.upper.1, 512, 2.0, 5).unwrap();
        for j in 0..=5 {
            assert!(a[j] <= b[j] + 1e-9, "j={j}: {} > {}", a[j], b[j]);
        }
    }
}

#[test]
fn bound_reports() {
    let fs = invariant_spectrum(&SymplecticProfile::FubiniStudy, &one(), 5, 1e-6).unwrap();
    let r = verify_bound(&fs, 0, 5).unwrap();
    assert!(r.all_ok);
    assert!((r.records[0].lambda - 2.0).abs() < 1e-6);
    assert!((r.records[0].bound - 2.8915929814733925).abs() < 1e-12);
    assert!(r.gaps().iter().all(|&g| g > 0.0));

    let can = invariant_spectrum(&SymplecticProfile::Canonical, &HermitianProfile::canonical(1), 5, 1e-6).unwrap();
    let r = verify_bound(&can, 1, 5).unwrap();
    assert!(r.all_ok);
    assert!(r.gaps().iter().all(|g| g.abs() < 1e-6), "{:?}", r.gaps());

    let json = serde_json::to_string(&r).unwrap();
    let back: BoundReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
    assert!(verify_bound(&can, 1, 6).is_err());
}

#[test]
fn mixture_gaps_shrink_toward_the_canonical_profile() {
    let gaps: Vec<Vec<f64>> = [0.5, 0.1, 0.01]
        .iter()
        .map(|&eps| {
            let g = SymplecticProfile::mixture(eps).unwrap();
            let r = invariant_spectrum(&g, &one(), 5, 1e-6).unwrap();
            verify_bound(&r, 0, 5).unwrap().gaps()
        })
        .collect();
    for ((a, b), c) in gaps[0].iter().zip(&gaps[1]).zip(&gaps[2]) {
        assert!(a > b && b > c && *c > 0.0);
    }
}

#[test]
fn mesh_budget_is_reported() {
    let opts = SpectrumOptions {
        count: 3,
        target_tol: 1e-14,
        n_start: 16,
        n_max: 64,
        ..SpectrumOptions::default()
    };
    let err = invariant_spectrum_with(&SymplecticProfile::FubiniStudy, &one(), &opts).unwrap_err();
    assert!(matches!(err, Error::MeshBudget { n_max: 64, .. }));
    assert!(err.is_numerical());
}

#[test]
fn spectrum_csv_round_trip() {
    let r = invariant_spectrum(&SymplecticProfile::FubiniStudy, &one(), 3, 1e-6).unwrap();
    let csv = r.to_csv();
    let back = SpectrumResult::from_csv(&csv).unwrap();
    assert_eq!(back.to_csv(), csv);
    assert_eq!(back.len(), r.len());
    let json = serde_json::to_string(&r).unwrap();
    let again: SpectrumResult = serde_json::from_str(&json).unwrap();
    assert_eq!(again, r);
}
