use invspec::profiles::*;
use invspec::Error;
use proptest::prelude::*;

fn builtins() -> Vec<KahlerPotential> {
    vec![
        KahlerPotential::fubini_study(),
        KahlerPotential::canonical(),
        KahlerPotential::fubini_study().reflect(),
    ]
}

fn constructed() -> Vec<(SymplecticProfile, KahlerPotential)> {
    let asym = Mollifier {
        center: 0.4,
        half_width: 0.15,
        height: 0.1,
    };
    [
        SymplecticProfile::FubiniStudy,
        SymplecticProfile::Canonical,
        SymplecticProfile::mixture(0.3).unwrap(),
        bump_profile(1.0, Mollifier::standard()).unwrap(),
        bump_profile(5.0, asym).unwrap(),
    ]
    .into_iter()
    .map(|g| {
        let f = potential_from_gamma(&g).unwrap();
        (g, f)
    })
    .collect()
}

fn interior_grid(n: usize) -> Vec<f64> {
    (1..n).map(|i| i as f64 / n as f64).collect()
}

// F₀(u) = -½ log(1 + e^{-2u}), written without overflow.
fn f0(u: f64) -> f64 {
    if u >= 0.0 {
        -0.5 * (-2.0 * u).exp().ln_1p()
    } else {
        u - 0.5 * (2.0 * u).exp().ln_1p()
    }
}

#[test]
fn closed_form_examples() {
    let (f, g) = fs_profile();
    assert!((f.eval(0.0) + 0.5 * 2f64.ln()).abs() < 1e-15);
    assert_eq!(g.eval(0.5), 0.5);
    assert!((f.d1(0.0) - 0.5).abs() < 1e-15);

    let (c, gc) = canonical_profile();
    assert_eq!(gc.eval(0.25), 0.5);
    assert_eq!(gc.eval(0.5), 1.0);
    assert!((g_can(0.25) - 0.5 * 2f64.ln()).abs() < 1e-15);
    assert!((legendre_fenchel(&c, 0.25).unwrap() - (1.0 + 2f64.ln()) / 8.0).abs() < 1e-12);
    assert!((legendre_fenchel(&c, 0.5).unwrap() - 0.25).abs() < 1e-12);

    assert!(moment_inverse(&f, 0.5).unwrap().abs() < 1e-13);
    assert!((moment_inverse(&c, 0.75).unwrap() - 0.5 * 0.5f64.ln()).abs() < 1e-12);
    assert!((moment_inverse(&f, 0.25).unwrap() + 0.5 * (1.0f64 / 3.0).ln()).abs() < 1e-12);

    assert!((gamma_from_potential(&f, 0.25).unwrap() - 0.375).abs() < 1e-12);
    assert!((gamma_from_potential(&c, 0.75).unwrap() - 0.5).abs() < 1e-12);
    assert!((gamma_from_potential(&f, 0.5).unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn moment_inverse_matches_inverted_logistic() {
    // d1 of F₀ is the logistic e^{-2u}/(1 + e^{-2u}); its inverse is -½ logit(x)
    let f = KahlerPotential::fubini_study();
    for x in interior_grid(40) {
        let exact = -0.5 * (x / (1.0 - x)).ln();
        assert!((moment_inverse(&f, x).unwrap() - exact).abs() < 1e-11, "x={x}");
    }
}

#[test]
fn moment_inverse_rejects_outside_points() {
    let f = KahlerPotential::fubini_study();
    for x in [0.0, 1.0, -0.2, 1.5] {
        assert!(matches!(moment_inverse(&f, x), Err(Error::OutsideUnitInterval { .. })));
    }
    assert!(legendre_fenchel(&f, 1.2).is_err());
}

#[test]
fn legendre_endpoint_values() {
    // F̌(0) = -F(+∞), F̌(1) = lim (u - F(u)) at -∞
    let f = KahlerPotential::fubini_study();
    assert!(legendre_fenchel(&f, 0.0).unwrap().abs() < 1e-15);
    assert!(legendre_fenchel(&f, 1.0).unwrap().abs() < 1e-15);
    let c = KahlerPotential::canonical();
    assert!(legendre_fenchel(&c, 0.0).unwrap().abs() < 1e-15);
    assert!(legendre_fenchel(&c, 1.0).unwrap().abs() < 1e-15);
}

#[test]
fn legendre_involution_builtins() {
    for f in builtins() {
        for k in -16..=16 {
            let u = 1.25 * k as f64 + 0.01;
            let back = double_legendre(&f, u).unwrap();
            assert!((back - f.eval(u)).abs() <= 1e-8, "{} u={u}: {back} vs {}", f.name(), f.eval(u));
        }
    }
}

#[test]
fn legendre_involution_constructed() {
    for (_, f) in constructed() {
        for k in -8..=8 {
            let u = 2.5 * k as f64 + 0.01;
            let back = double_legendre(&f, u).unwrap();
            assert!((back - f.eval(u)).abs() <= 1e-8, "{} u={u}: {back} vs {}", f.name(), f.eval(u));
        }
    }
}

fn check_derivatives(f: &KahlerPotential) {
    let h = 1e-5;
    for k in 0..40 {
        let u = -9.8 + 0.49 * k as f64 + 0.003;
        // differencing an O(1) value loses ~1e-11 absolutely, so the relative
        // d1 check is only meaningful while d1 stays well above that
        let d1 = f.d1(u);
        if u <= 4.0 {
            let fd1 = (f.eval(u + h) - f.eval(u - h)) / (2.0 * h);
            assert!((fd1 - d1).abs() <= 1e-6 * d1.abs(), "{} d1 at {u}: {fd1} vs {d1}", f.name());
        }
        // difference the smaller of d1 and 1 - d1 to keep relative accuracy
        let fd2 = if u >= 0.0 {
            (f.d1(u + h) - f.d1(u - h)) / (2.0 * h)
        } else {
            -(f.d1_complement(u + h) - f.d1_complement(u - h)) / (2.0 * h)
        };
        let d2 = f.d2(u);
        assert!(d2 < 0.0);
        assert!((fd2 - d2).abs() <= 1e-6 * d2.abs(), "{} d2 at {u}: {fd2} vs {d2}", f.name());
    }
}

#[test]
fn derivative_consistency_builtins() {
    for f in builtins() {
        check_derivatives(&f);
    }
}

#[test]
fn derivative_consistency_constructed() {
    for (_, f) in constructed() {
        check_derivatives(&f);
    }
}

#[test]
fn moment_inverse_is_strictly_decreasing() {
    let mut all = builtins();
    all.extend(constructed().into_iter().map(|(_, f)| f));
    let mut grid = vec![1e-12, 1e-8, 1e-4];
    grid.extend(interior_grid(97));
    grid.extend([1.0 - 1e-4, 1.0 - 1e-8]);
    for f in &all {
        let us: Vec<f64> = grid.iter().map(|&x| moment_inverse(f, x).unwrap()).collect();
        for w in us.windows(2) {
            assert!(w[1] < w[0], "{}: {:?}", f.name(), w);
        }
    }
}

#[test]
fn duality_identity() {
    let mut all = builtins();
    all.extend(constructed().into_iter().map(|(_, f)| f));
    for f in &all {
        for x in interior_grid(50) {
            let g = moment_inverse(f, x).unwrap();
            let lhs = legendre_fenchel(f, x).unwrap();
            assert!((lhs - (x * g - f.eval(g))).abs() <= 1e-10, "{} x={x}", f.name());
        }
    }
}

#[test]
fn duality_identity_canonical_closed_form() {
    let c = KahlerPotential::canonical();
    for x in interior_grid(64) {
        assert!((legendre_fenchel(&c, x).unwrap() - fcheck_can(x)).abs() < 1e-12, "x={x}");
        assert!((moment_inverse(&c, x).unwrap() - g_can(x)).abs() < 1e-11, "x={x}");
    }
}

#[test]
fn reflection_of_potentials() {
    let mut all = builtins();
    all.extend(constructed().into_iter().map(|(_, f)| f));
    for f in &all {
        let r = reflect_potential(f);
        assert!((r.measured_slope_gap() - 1.0).abs() < 1e-12);
        for x in interior_grid(40) {
            let a = gamma_from_potential(&r, x).unwrap();
            let b = gamma_from_potential(f, 1.0 - x).unwrap();
            assert!((a - b).abs() <= 1e-10, "{} x={x}: {a} vs {b}", f.name());
        }
        for k in -10..=10 {
            let u = 0.9 * k as f64;
            assert!((r.eval(-u) - (-u + f.eval(u))).abs() < 1e-13);
        }
    }
}

#[test]
fn reflection_of_profiles() {
    let grid = SymplecticProfile::sample_grid(200);
    for g in [SymplecticProfile::Canonical, SymplecticProfile::FubiniStudy] {
        let r = reflect(&g);
        for &x in &grid {
            assert_eq!(r.eval(x), g.eval(x));
        }
    }
    let asym = bump_profile(
        2.0,
        Mollifier {
            center: 0.35,
            half_width: 0.1,
            height: 0.12,
        },
    )
    .unwrap();
    let r = reflect(&asym);
    let rr = reflect(&r);
    let mut differs = false;
    for &x in &grid {
        assert!((rr.eval(x) - asym.eval(x)).abs() <= 1e-15);
        assert!((r.eval(x) - asym.eval(1.0 - x)).abs() <= 1e-15);
        differs |= (r.eval(x) - asym.eval(x)).abs() > 1e-3;
    }
    assert!(differs);
}

#[test]
fn round_trip_gamma() {
    for (g, f) in constructed() {
        for i in 0..=200 {
            let x = 1e-3 + (1.0 - 2e-3) * i as f64 / 200.0;
            let back = gamma_from_potential(&f, x).unwrap();
            let want = g.eval(x);
            assert!(((back - want) / want).abs() <= 1e-6, "{} x={x}: {back} vs {want}", g.name());
        }
    }
}

#[test]
fn constructed_potentials_are_normalized() {
    for (g, f) in constructed() {
        assert!(f.eval(0.0).abs() < 1e-14, "{}", g.name());
        assert!((f.measured_slope_gap() - 1.0).abs() <= 1e-8);
        let mass = total_mass(&f);
        assert!((mass - 1.0).abs() <= 1e-8, "{}: mass {mass}", g.name());
    }
}

#[test]
fn constructed_fubini_study_differs_by_a_constant() {
    let f = potential_from_gamma(&SymplecticProfile::FubiniStudy).unwrap();
    let c = f.eval(0.0) - f0(0.0);
    assert!((c - 0.5 * 2f64.ln()).abs() < 1e-12);
    for k in -50..=50 {
        let u = 0.1 * k as f64;
        assert!((f.eval(u) - f0(u) - c).abs() <= 1e-6, "u={u}");
    }
}

#[test]
fn constructed_canonical_matches_closed_form() {
    // F_can(u) = min(0, u) - ¼ e^{-2|u|}; constructed potentials vanish at 0
    let f = potential_from_gamma(&SymplecticProfile::Canonical).unwrap();
    let can = KahlerPotential::canonical();
    for k in -30..=30 {
        let u = 0.7 * k as f64;
        assert!((f.eval(u) - (can.eval(u) + 0.25)).abs() < 1e-12, "u={u}");
        assert!((f.d1(u) - can.d1(u)).abs() < 1e-12 * can.d1(u).max(1e-300) + 1e-15);
    }
}

#[test]
fn constructed_potential_is_bounded_against_max_norm() {
    for (_, f) in constructed() {
        let dev = f.deviation_from_max_norm(1, 60.0, 1201);
        assert!(dev.is_finite() && dev < 2.0, "{}", f.name());
    }
}

#[test]
fn rejects_profiles_outside_class_g() {
    let bad = SymplecticProfile::custom("sqrt", |x| gamma_fs(x) + 0.5 * (x * (1.0 - x)).sqrt());
    assert!(matches!(potential_from_gamma(&bad), Err(Error::NotInClassG(_))));
    let zero = SymplecticProfile::custom("interior zero", |x| gamma_fs(x) * (x - 0.3).abs().min(1.0));
    assert!(matches!(potential_from_gamma(&zero), Err(Error::NotInClassG(_))));
}

#[test]
fn density_examples() {
    let f = KahlerPotential::fubini_study();
    let four_pi = 4.0 * std::f64::consts::PI;
    assert!((density_from_potential(&f, 0.0) - 1.0 / (8.0 * std::f64::consts::PI)).abs() < 1e-15);
    for k in 0..30 {
        let u = 0.4 * k as f64;
        let a = density_from_potential(&f, u) * (-2.0 * u).exp();
        let b = density_from_potential(&f, -u) * (2.0 * u).exp();
        assert!((a - b).abs() <= 1e-14 * a);
    }
    // F_can: -F'' e^{2u} = 1 for u > 0, so l_g = 2
    let c = KahlerPotential::canonical();
    let d10 = density_from_potential(&c, 10.0);
    let d30 = density_from_potential(&c, 30.0);
    assert!(d30.is_finite() && (d10 - d30).abs() < 1e-12);
    assert!((d30 * four_pi - 1.0).abs() < 1e-12);
    let (l, l_star) = density_limits(&c);
    assert!((l - 2.0).abs() < 1e-9 && (l_star - 2.0).abs() < 1e-9);
    // constructed potentials inherit the limit through the exponential tail
    for (g, f) in constructed() {
        let (l, l_star) = density_limits(&f);
        assert!(l.is_finite() && l > 0.0 && l_star.is_finite() && l_star > 0.0, "{}", g.name());
        let a = density_from_potential(&f, 30.0);
        let b = density_from_potential(&f, 45.0);
        assert!((a - b).abs() <= 1e-9 * a, "{}", g.name());
    }
}

#[test]
fn endpoint_asymptotics() {
    for (g, _) in constructed() {
        assert!(validate_class_g(&g, 4.0, 30).passed);
        for k in 4..40 {
            let s = 0.5f64.powi(k);
            assert!((g.eval(s) / s - 2.0).abs() <= 16.0 * s, "{} left k={k}", g.name());
            assert!((g.eval_from_right(s) / s - 2.0).abs() <= 16.0 * s, "{} right k={k}", g.name());
        }
    }
}

#[test]
fn class_g_examples() {
    let fs = validate_class_g(&SymplecticProfile::FubiniStudy, 1.0, 30);
    assert!(fs.passed);
    assert!((fs.worst_ratio - 0.5).abs() < 1e-6);
    assert!(validate_class_g(&SymplecticProfile::Canonical, 1e-12, 30).passed);
    let bad = SymplecticProfile::custom("sqrt", |x| gamma_fs(x) + 0.5 * (x * (1.0 - x)).sqrt());
    for c in [1.0, 10.0, 1e4, 1e8] {
        let r = validate_class_g(&bad, c, 30);
        assert!(!r.passed);
        assert!(r.worst_ratio > c);
    }
}

#[test]
fn bump_examples() {
    let zero = bump_profile(1.0, Mollifier::zero()).unwrap();
    let grid = SymplecticProfile::sample_grid(20_000);
    for &x in &grid {
        assert_eq!(zero.eval(x), gamma_fs(x));
    }
    let one = bump_profile(1.0, Mollifier::standard()).unwrap();
    for &x in &grid {
        assert!(one.eval(x) <= gamma_can(x), "x={x}");
    }
    let max_slope = |g: &SymplecticProfile| {
        let n = 200_000;
        (0..n)
            .map(|i| {
                let (a, b) = (i as f64 / n as f64, (i + 1) as f64 / n as f64);
                ((g.eval(b) - g.eval(a)) / (b - a)).abs()
            })
            .fold(0.0, f64::max)
    };
    let hundred = bump_profile(100.0, Mollifier::standard()).unwrap();
    let (s1, s100) = (max_slope(&one), max_slope(&hundred));
    assert!(s100 >= 50.0 * s1, "{s100} vs {s1}");
    for a in [1.0, 3.0, 10.0, 100.0] {
        let g = bump_profile(a, Mollifier::standard()).unwrap();
        assert!(validate_class_g(&g, 1.0, 30).passed);
        assert!(check_hypothesis(&g, &HermitianProfile::constant(1.0).unwrap(), 0).upper_ok);
    }
}

#[test]
fn bump_preconditions() {
    let wide = Mollifier {
        center: 0.5,
        half_width: 0.3,
        height: 0.1,
    };
    assert!(bump_profile(1.0, wide).is_err());
    let tall = Mollifier {
        height: 0.2,
        ..Mollifier::standard()
    };
    assert!(bump_profile(1.0, tall).is_err());
    assert!(bump_profile(0.5, Mollifier::standard()).is_err());
}

#[test]
fn hermitian_examples() {
    assert_eq!(canonical_hermitian(2, 0.75), 0.25);
    assert_eq!(canonical_hermitian(0, 0.3), 1.0);
    assert_eq!(canonical_hermitian(1, 0.25), 1.0);
    let r = validate_hermitian(&HermitianProfile::canonical(3));
    assert!(r.passed && (r.limit_coefficient - 8.0).abs() < 1e-12);
    for m in 0..4 {
        let h = HermitianProfile::custom(m, "extra zero", move |x| (1.0 - x).powi(m as i32 + 1));
        assert!(!validate_hermitian(&h).passed);
    }
    let r = validate_hermitian(&HermitianProfile::constant(1.0).unwrap());
    assert!(r.passed && (r.limit_coefficient - 1.0).abs() < 1e-15);
    let neg = HermitianProfile::custom(0, "negative", |x| 0.5 - x);
    assert!(!validate_hermitian(&neg).positive);
}

#[test]
fn hypothesis_examples() {
    let one = HermitianProfile::constant(1.0).unwrap();
    let r = check_hypothesis(&SymplecticProfile::FubiniStudy, &one, 0);
    assert!(r.lower_ok && r.upper_ok);
    for m in 0..5 {
        let r = check_hypothesis(&SymplecticProfile::Canonical, &HermitianProfile::canonical(m), m);
        assert!(r.lower_ok && r.upper_ok && !r.strict_interior);
        assert_eq!(r.worst_margin_lower, 0.0);
        assert_eq!(r.worst_margin_upper, 0.0);
    }
    let clipped = SymplecticProfile::custom("clipped", |x| {
        let c = gamma_can(x);
        (1.01 * c).min(c + c * c)
    });
    let r = check_hypothesis(&clipped, &one, 0);
    assert!(!r.upper_ok && r.worst_margin_upper < 0.0);
    assert_eq!(r.worst_margin_upper_at, 0.5);
    assert!((r.worst_margin_upper + 0.01).abs() < 1e-12);
    // margins agree with verdicts
    let json = serde_json::to_string(&r).unwrap();
    let back: HypothesisReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
}

#[test]
fn hypothesis_strict_interior_for_separated_metrics() {
    // h̄ = h̄_{m,∞}(1 + ½ γ_can(1 - γ/γ_can)) sits strictly between the bounds
    let g = SymplecticProfile::mixture(0.5).unwrap();
    for m in 0..3 {
        let gc = g.clone();
        let h = HermitianProfile::custom(m, "between", move |x| {
            let g = gc.eval(x);
            let q = if g > 0.0 { gamma_can(x) / g } else { 1.0 };
            canonical_hermitian(m, x) * (1.0 + 0.5 * (q - 1.0))
        });
        let r = check_hypothesis(&g, &h, m);
        assert!(r.lower_ok && r.upper_ok && r.strict_interior, "m={m}: {r:?}");
    }
}

#[test]
fn profile_documents_round_trip() {
    let docs = [
        r#"{"kind":"fubini-study"}"#,
        r#"{"kind":"canonical"}"#,
        r#"{"kind":"mixture","params":{"epsilon":0.25}}"#,
        r#"{"kind":"bump","params":{"A":4,"center":0.45,"half_width":0.2,"height":0.1}}"#,
        r#"{"kind":"samples","samples":[[0,0],[0.25,0.5],[0.5,0.8],[0.75,0.5],[1,0]]}"#,
    ];
    for text in docs {
        let g = ProfileDocument::from_json(text).unwrap().to_gamma().unwrap();
        let again = ProfileDocument::from_gamma(&g).unwrap().to_json();
        let g2 = ProfileDocument::from_json(&again).unwrap().to_gamma().unwrap();
        for x in interior_grid(100) {
            assert_eq!(g.eval(x), g2.eval(x), "{text}");
        }
    }
    let h = ProfileDocument::from_json(r#"{"kind":"samples","m":1,"samples":[[0,2],[0.5,1.5],[1,0]]}"#)
        .unwrap()
        .to_hermitian()
        .unwrap();
    assert_eq!(h.degree(), 1);
    assert!(ProfileDocument::from_json(r#"{"kind":"constant","m":2}"#).unwrap().to_hermitian().is_err());
}

#[test]
fn sampled_profile_from_fubini_study_samples() {
    let pts: Vec<[f64; 2]> = (0..=400).map(|i| i as f64 / 400.0).map(|x| [x, gamma_fs(x)]).collect();
    let g = SymplecticProfile::sampled(&pts).unwrap();
    for x in interior_grid(333) {
        assert!((g.eval(x) - gamma_fs(x)).abs() < 1e-5);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn duality_identity_random(x in 1e-6f64..(1.0 - 1e-6), eps in 0.0f64..1.0) {
        let f = potential_from_gamma(&SymplecticProfile::mixture(eps).unwrap()).unwrap();
        let g = moment_inverse(&f, x).unwrap();
        prop_assert!((legendre_fenchel(&f, x).unwrap() - (x * g - f.eval(g))).abs() <= 1e-10);
    }

    #[test]
    fn moment_inverse_orders_random(a in 1e-9f64..0.999, d in 1e-6f64..1e-3) {
        let f = KahlerPotential::fubini_study();
        let b = (a + d).min(1.0 - 1e-9);
        prop_assert!(moment_inverse(&f, b).unwrap() < moment_inverse(&f, a).unwrap());
    }
}
