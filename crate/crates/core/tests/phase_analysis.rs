use num_traits::ToPrimitive;
use pruwalk::baselines::{baseline_partition_at, DirectedModel, ModelName, Weighting};
use pruwalk::kernel::{generating_function, Fugacity};
use pruwalk::phase::fit::{fit_line, fit_power_law, fit_power_law_offset};
use pruwalk::phase::heights::*;
use pruwalk::phase::ratio::*;
use pruwalk::phase::roots::*;
use pruwalk::phase::thermo::*;
use pruwalk::poly::{rat, ratio};
use pruwalk::prudent::Endpoint;

const TAILS: PhaseModel = PhaseModel::PrudentTails;
const LOOPS: PhaseModel = PhaseModel::PrudentLoops;

fn baseline(name: ModelName, w: Weighting, e: Endpoint) -> PhaseModel {
    PhaseModel::Baseline(DirectedModel::new(name, w, e).unwrap())
}

/// Models with a transition and an implemented free energy.
fn transition_models() -> Vec<PhaseModel> {
    vec![
        TAILS,
        LOOPS,
        baseline(ModelName::Dyck, Weighting::Vertex, Endpoint::Loop),
        baseline(ModelName::Dyck, Weighting::Vertex, Endpoint::Tail),
        baseline(ModelName::Motzkin, Weighting::Edge, Endpoint::Loop),
        baseline(ModelName::Motzkin, Weighting::Vertex, Endpoint::Tail),
        baseline(ModelName::PartiallyDirected, Weighting::Edge, Endpoint::Loop),
        baseline(ModelName::NeDirected, Weighting::Edge, Endpoint::Tail),
    ]
}

/// Newton's method in floating point, as an independent refinement.
fn newton(p: &UPoly, mut x: f64) -> f64 {
    let dp = derivative(p);
    for _ in 0..50 {
        x -= eval_f64(p, x) / eval_f64(&dp, x);
    }
    x
}

#[test]
fn documented_roots() {
    let t = isolate_real_roots(&CriticalPolynomials::tails_desorbed(), 0.0, 1.0).unwrap();
    assert_eq!(t.len(), 1);
    assert!((t[0].value - 0.403032).abs() < 1e-6);
    let l = isolate_real_roots(&CriticalPolynomials::loops_desorbed(), 0.0, 1.0).unwrap();
    assert!((l[0].value - 0.412095).abs() < 1e-6);
    let a = isolate_real_roots(&CriticalPolynomials::loops_critical_a(), 1.0, 2.0).unwrap();
    assert!(a.iter().any(|r| (r.value - 1.82476).abs() < 1e-5));
    let s = isolate_real_roots(&from_ints(&[-2, 0, 1]), 1.0, 2.0).unwrap();
    assert!((s[0].value - std::f64::consts::SQRT_2).abs() < 1e-15);
}

#[test]
fn isolated_roots_agree_with_newton_and_bracket_a_sign_change() {
    for p in [
        CriticalPolynomials::tails_desorbed(),
        CriticalPolynomials::loops_desorbed(),
        CriticalPolynomials::loops_critical_a(),
    ] {
        for r in isolate_real_roots(&p, 0.0, 3.0).unwrap() {
            assert!((newton(&p, r.value) - r.value).abs() < 1e-12 * r.value.abs().max(1.0));
            if r.multiplicity % 2 == 1 {
                assert!(eval(&p, &r.lo) * eval(&p, &r.hi) <= rat(0));
            }
            assert!(r.lo <= r.hi);
        }
    }
}

#[test]
fn adsorbed_polynomial_factors_at_two() {
    let p = CriticalPolynomials::adsorbed(&rat(2));
    let q: UPoly = CriticalPolynomials::tails_desorbed().iter().map(|c| -c).collect();
    assert_eq!(p, q);
    // and the root at a = 2 is z_1^t itself
    assert!((adsorbed_root(2.0, z1_tails()).unwrap() - z1_tails()).abs() < 1e-15);
}

#[test]
fn polynomial_in_a_matches_polynomial_in_z() {
    for (z, a) in [(ratio(1, 3), ratio(5, 2)), (ratio(2, 5), ratio(7, 4)), (ratio(-1, 2), rat(3))] {
        let in_z = eval(&CriticalPolynomials::adsorbed(&a), &z);
        let in_a = eval(&CriticalPolynomials::adsorbed_in_a(&z), &a);
        assert_eq!(in_z, in_a);
    }
}

#[test]
fn critical_fugacity_two_ways() {
    assert!((crossing_fugacity(z1_tails()) - 2.0).abs() < 1e-12);
    assert!((crossing_fugacity(z1_loops()) - a_c_loops()).abs() < 1e-9);
    assert!((a_c_loops() - 1.82476).abs() < 1e-5);
    assert!(adsorbed_residual(z1_loops(), a_c_loops()) < 1e-6);
}

#[test]
fn free_energy_values() {
    assert!((free_energy(TAILS, 1.0).unwrap() - 0.90874).abs() < 1e-5);
    assert!((free_energy(TAILS, 2.0).unwrap() + z1_tails().ln()).abs() < 1e-15);
    assert!(matches!(free_energy(TAILS, 0.0), Err(PhaseError::Domain(_))));
    assert!(matches!(free_energy(TAILS, -1.0), Err(PhaseError::Domain(_))));
    let pdv = baseline(ModelName::PartiallyDirected, Weighting::Vertex, Endpoint::Tail);
    assert!(matches!(free_energy(pdv, 1.0), Err(PhaseError::Unsupported(_))));
}

#[test]
fn free_energy_is_continuous_at_the_transition() {
    for m in transition_models() {
        let a_c = critical_fugacity(m).unwrap().unwrap();
        let gap = |eps: f64| (free_energy(m, a_c - eps).unwrap() - free_energy(m, a_c + eps).unwrap()).abs();
        let (g4, g6) = (gap(1e-4), gap(1e-6));
        assert!(g4 < 1e-3 && g6 < 1e-5 && g6 < g4, "{m}: {g4:e} {g6:e}");
    }
}

#[test]
fn density_two_ways_on_fifty_adsorbed_points() {
    for m in [TAILS, LOOPS] {
        let a_c = critical_fugacity(m).unwrap().unwrap();
        for k in 0..50 {
            let a = a_c * (1.01 + k as f64 * 0.2);
            let implicit = surface_density(m, a).unwrap();
            let fd = density_difference(m, a, 1e-5).unwrap();
            assert!((implicit - fd).abs() < 1e-6, "{m} a={a}: {implicit} vs {fd}");
        }
    }
}

#[test]
fn density_in_the_two_phases() {
    assert_eq!(surface_density(TAILS, 1.5).unwrap(), 0.0);
    assert_eq!(surface_density(LOOPS, 1.8).unwrap(), 0.0);
    let rho = surface_density(TAILS, 1e6).unwrap();
    assert!((rho - 1.0).abs() < 1e-5, "{rho}");
    assert!(matches!(surface_density(TAILS, 2.0), Err(PhaseError::NearCritical { .. })));
    // increasing in the adsorbed phase
    let r: Vec<f64> = [2.5, 4.0, 10.0, 100.0].iter().map(|&a| surface_density(TAILS, a).unwrap()).collect();
    assert!(r.windows(2).all(|w| w[0] < w[1]), "{r:?}");
}

#[test]
fn density_jumps_for_prudent_models() {
    let t = critical_point(TAILS).unwrap();
    assert_eq!(t.order, TransitionOrder::FirstOrder);
    assert_eq!(t.rho_below, Some(0.0));
    assert!((t.jump - 0.33).abs() < 0.01, "{}", t.jump);
    // the one-sided value is the limit of the density from above
    let near = surface_density(TAILS, 2.0 + 1e-7).unwrap();
    assert!((near - t.jump).abs() < 1e-5);

    let l = critical_point(LOOPS).unwrap();
    assert_eq!(l.order, TransitionOrder::FirstOrder);
    assert!(l.jump > JUMP_THRESHOLD);
}

#[test]
fn baselines_transition_order() {
    let dyck = critical_point(baseline(ModelName::Dyck, Weighting::Vertex, Endpoint::Loop)).unwrap();
    assert_eq!(dyck.a_c, Some(2.0));
    assert!(dyck.jump.abs() < JUMP_THRESHOLD);
    assert_eq!(dyck.order, TransitionOrder::SecondOrder);

    let ne = critical_point(baseline(ModelName::NeDirected, Weighting::Edge, Endpoint::Tail)).unwrap();
    assert_eq!(ne.order, TransitionOrder::FirstOrder);
    assert!((ne.jump - 1.0).abs() < 1e-12);

    let ne_loops = critical_point(baseline(ModelName::NeDirected, Weighting::Edge, Endpoint::Loop)).unwrap();
    assert_eq!(ne_loops.order, TransitionOrder::None);

    for name in [ModelName::Motzkin, ModelName::PartiallyDirected] {
        let cp = critical_point(baseline(name, Weighting::Edge, Endpoint::Loop)).unwrap();
        assert_eq!(cp.order, TransitionOrder::SecondOrder, "{name}");
    }
}

#[test]
fn baseline_closed_forms_match_series_analysis() {
    // Exact partition functions at a fixed fugacity, analysed by ratios:
    // an independent check of each closed-form z_c(a) in both phases.
    let cases = [
        (ModelName::Dyck, Weighting::Vertex, 3.0),
        (ModelName::Dyck, Weighting::Vertex, 1.5),
        (ModelName::Motzkin, Weighting::Edge, 3.0),
        (ModelName::Motzkin, Weighting::Vertex, 2.5),
        (ModelName::Motzkin, Weighting::Vertex, 1.0),
        (ModelName::PartiallyDirected, Weighting::Edge, 2.5),
        (ModelName::NeDirected, Weighting::Edge, 3.0),
    ];
    for (name, w, a) in cases {
        let m = DirectedModel::new(name, w, Endpoint::Loop).unwrap();
        let ar = pruwalk::Rational::from_float(a).unwrap();
        let z: Vec<f64> = baseline_partition_at(&m, 400, &ar)
            .unwrap()
            .iter()
            .map(|x| x.to_f64().unwrap())
            .collect();
        let est = ratio_estimate(&z).unwrap();
        let exact = dominant_singularity(PhaseModel::Baseline(m), a).unwrap();
        assert!((est.z_c / exact - 1.0).abs() < 2e-3, "{m} a={a}: {} vs {exact}", est.z_c);
    }
}

#[test]
fn alpha_c_lies_between_zero_and_log_mu() {
    for m in transition_models() {
        let a_c = critical_fugacity(m).unwrap().unwrap();
        let log_mu = free_energy(m, 1.0).unwrap();
        let alpha_c = a_c.ln();
        assert!(0.0 < alpha_c && alpha_c < log_mu + 1e-12, "{m}: {alpha_c} vs {log_mu}");
    }
}

#[test]
fn free_energy_bounds_and_monotonicity() {
    for m in transition_models() {
        let log_mu = free_energy(m, 1.0).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for k in 0..=300 {
            let alpha = k as f64 * 0.02;
            let f = free_energy(m, alpha.exp()).unwrap();
            // A single path hugging the surface: Dyck paths touch it on
            // every other step only.
            let hug = match m {
                PhaseModel::Baseline(b) if b.name == ModelName::Dyck => alpha / 2.0,
                _ => alpha,
            };
            assert!(f >= log_mu.max(hug) - 1e-9, "{m} alpha={alpha}: {f}");
            assert!(f >= prev - 1e-12, "{m} alpha={alpha}");
            prev = f;
        }
    }
}

#[test]
fn free_energy_leaves_the_critical_point_linearly() {
    for m in [TAILS, LOOPS] {
        let cp = critical_point(m).unwrap();
        let a_c = cp.a_c.unwrap();
        let f_c = free_energy(m, a_c).unwrap();
        // df/da = rho / a above the transition
        let expected = cp.jump / a_c;
        for d in [1e-4, 1e-5, 1e-6] {
            let slope = (free_energy(m, a_c + d).unwrap() - f_c) / d;
            assert!(slope > 0.0);
            assert!((slope / expected - 1.0).abs() < 50.0 * d / a_c + 1e-6, "{m} d={d}: {slope} vs {expected}");
        }
    }
}

#[test]
fn phase_points_around_the_transition() {
    let p = phase_point(TAILS, 2f64.ln()).unwrap();
    assert_eq!(p.rho, None);
    let below = phase_point(TAILS, 0.5).unwrap();
    assert!(!below.adsorbed && below.rho == Some(0.0));
    let above = phase_point(TAILS, 1.0).unwrap();
    assert!(above.adsorbed && above.rho.unwrap() > 0.33);
}

#[test]
fn root_selection_is_unique_in_the_adsorbed_phase() {
    for a in [2.001, 2.5, 3.0, 10.0, 1e3, 1e6] {
        let z = adsorbed_root(a, z1_tails()).unwrap();
        assert!(z > 0.0 && z < z1_tails());
        // The cubic has coefficients of size a^2.
        assert!(adsorbed_residual(z, a) < 1e-14 * a * a, "{a}: {:e}", adsorbed_residual(z, a));
    }
}

#[test]
fn model_names_parse() {
    assert_eq!("tails".parse::<PhaseModel>().unwrap(), TAILS);
    assert_eq!("prudent_loops".parse::<PhaseModel>().unwrap(), LOOPS);
    assert_eq!(
        "motzkin_loops_vertex".parse::<PhaseModel>().unwrap(),
        baseline(ModelName::Motzkin, Weighting::Vertex, Endpoint::Loop)
    );
    assert_eq!(
        "dyck".parse::<PhaseModel>().unwrap(),
        baseline(ModelName::Dyck, Weighting::Vertex, Endpoint::Tail)
    );
    assert!("dyck_edge".parse::<PhaseModel>().is_err());
    assert!("spiral".parse::<PhaseModel>().is_err());
}

#[test]
fn ratio_method_basics() {
    let geo: Vec<f64> = (0..30).map(|n| 3f64.powi(n)).collect();
    let e = ratio_estimate(&geo).unwrap();
    assert!((e.z_c - 1.0 / 3.0).abs() < 1e-14);
    assert_eq!(e.uncertainty, 0.0);
    assert_eq!(e.method, Method::RatioExtrapolated);

    assert_eq!(ratio_estimate(&geo[..10]), Err(RatioError::TooShort(10)));
    let mut bad = geo.clone();
    bad[7] = -1.0;
    assert!(matches!(ratio_estimate(&bad), Err(RatioError::NonPositive { index: 7, .. })));
}

#[test]
fn ratio_method_on_dyck_paths() {
    let dyck = DirectedModel::natural(ModelName::Dyck, Endpoint::Loop);
    let z: Vec<f64> = baseline_partition_at(&dyck, 60, &rat(1))
        .unwrap()
        .iter()
        .map(|x| x.to_f64().unwrap())
        .collect();
    let e = ratio_estimate(&z).unwrap();
    assert_eq!(e.step, 2);
    assert!((e.z_c - 0.5).abs() < 0.005, "{}", e.z_c);
}

#[test]
fn ratio_method_on_prudent_tails() {
    let w = generating_function(Endpoint::Tail, 50, Fugacity::Value(rat(1))).unwrap();
    let c: Vec<f64> = w.coeffs().iter().map(|p| p.as_constant().unwrap().to_f64().unwrap()).collect();
    let e = ratio_estimate(&c).unwrap();
    assert!((e.z_c / 0.403032 - 1.0).abs() < 0.01, "{}", e.z_c);
}

#[test]
fn fits_recover_synthetic_laws() {
    let ns: Vec<f64> = (20..=60).map(f64::from).collect();
    let line: Vec<f64> = ns.iter().map(|n| 0.3 * n + 1.7).collect();
    let f = fit_line(&ns, &line);
    assert!((f.coeffs[0] - 0.3).abs() < 1e-12 && (f.coeffs[1] - 1.7).abs() < 1e-10);
    let pow: Vec<f64> = ns.iter().map(|n| 2.0 * n.powf(0.75)).collect();
    assert!((fit_power_law(&ns, &pow).coeffs[0] - 0.75).abs() < 1e-12);
    let off: Vec<f64> = ns.iter().map(|n| 2.0 * n.powf(0.75) - 3.0).collect();
    let g = fit_power_law_offset(&ns, &off);
    assert!((g.coeffs[0] - 0.75).abs() < 1e-6 && (g.coeffs[2] + 3.0).abs() < 1e-4, "{g:?}");
}

#[test]
fn growth_fit_classifies_synthetic_heights() {
    let ns: Vec<usize> = (1..=200).collect();
    let lin: Vec<f64> = ns.iter().map(|&n| 0.5 * n as f64).collect();
    let g = growth_fit(&ns, &lin, 100, 200);
    assert!((g.gamma - 1.0).abs() < 1e-12 && g.relative_residual < 1e-12);
    let sub: Vec<f64> = ns.iter().map(|&n| (n as f64).powf(0.75)).collect();
    assert!((growth_fit(&ns, &sub, 100, 200).gamma - 0.75).abs() < 1e-12);
}

#[test]
fn height_classes_predict_orders() {
    assert_eq!(HeightClass::Linear.predicts(), Some(TransitionOrder::FirstOrder));
    assert_eq!(HeightClass::Sublinear.predicts(), Some(TransitionOrder::SecondOrder));
    assert_eq!(HeightClass::Ambiguous.predicts(), None);
    assert_eq!(HeightClass::Zero.predicts(), None);
}

#[test]
fn prudent_heights_exact_and_float_agree() {
    let x = PrudentHeights::compute(Endpoint::Tail, 50).unwrap();
    let f = PrudentHeights::compute_float(Endpoint::Tail, 50).unwrap();
    assert_eq!(x.n, f.n);
    for i in 0..x.n.len() {
        assert!((x.mean_max[i] - f.mean_max[i]).abs() < 1e-12 * x.mean_max[i]);
    }
    assert!(PrudentHeights::compute_float(Endpoint::Tail, 10_000).is_err());
}

#[test]
fn transition_height_report_rows() {
    let rows = transition_height_report(1000, 200).unwrap();
    assert_eq!(rows.len(), report_models().len());
    let row = |name: &str| rows.iter().find(|r| r.model == name).unwrap_or_else(|| panic!("{name}"));

    let ne = row("ne_directed tails (edge weights)");
    assert_eq!((ne.height_class, ne.order, ne.consistent), (HeightClass::Linear, TransitionOrder::FirstOrder, Some(true)));
    assert!((ne.gamma.unwrap() - 1.0).abs() < 1e-12);

    let ne_loops = row("ne_directed loops (edge weights)");
    assert_eq!((ne_loops.gamma, ne_loops.height_class, ne_loops.consistent), (None, HeightClass::Zero, None));

    let dyck = row("dyck loops (vertex weights)");
    assert!((dyck.gamma.unwrap() - 0.5).abs() < 0.05);
    assert_eq!(dyck.consistent, Some(true));

    let tails = row("prudent tails");
    assert_eq!(tails.order, TransitionOrder::FirstOrder);
    assert_eq!(tails.height_class, HeightClass::Linear);
    assert_eq!(tails.consistent, Some(true));

    // Finite-length loops heights still look sublinear; the row reports the
    // disagreement rather than hiding it.
    let loops = row("prudent loops");
    assert_eq!(loops.order, TransitionOrder::FirstOrder);
    assert!(loops.consistent.is_some());
}
