use num_traits::ToPrimitive;
use pruwalk::baselines::*;
use pruwalk::poly::rat;
use pruwalk::prudent::Endpoint;
use pruwalk::{Monomial, Poly, Var};

fn all_models() -> Vec<DirectedModel> {
    let mut out = Vec::new();
    for name in ModelName::ALL {
        for w in [Weighting::Edge, Weighting::Vertex] {
            for e in [Endpoint::Tail, Endpoint::Loop] {
                if let Ok(m) = DirectedModel::new(name, w, e) {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Height changes allowed after a step with change `prev` (None at the start).
fn allowed(name: ModelName, prev: Option<i32>) -> Vec<i32> {
    match name {
        ModelName::NeDirected => vec![0, 1],
        ModelName::Dyck => vec![1, -1],
        ModelName::Motzkin => vec![1, 0, -1],
        // No immediate reversal of a vertical step.
        ModelName::PartiallyDirected => match prev {
            Some(1) => vec![0, 1],
            Some(-1) => vec![0, -1],
            _ => vec![0, 1, -1],
        },
    }
}

/// Every path of length `n` by brute force: (surface weight exponent,
/// final height, maximum height).
fn brute_force(model: &DirectedModel, n: usize) -> Vec<(u32, usize, usize)> {
    fn go(model: &DirectedModel, left: usize, h: i32, prev: Option<i32>, nu: u32, top: i32, out: &mut Vec<(u32, usize, usize)>) {
        if left == 0 {
            if model.endpoint == Endpoint::Tail || h == 0 {
                out.push((nu, h as usize, top as usize));
            }
            return;
        }
        for dh in allowed(model.name, prev) {
            let nh = h + dh;
            if nh < 0 {
                continue;
            }
            let earns = match model.weighting {
                Weighting::Edge => h == 0 && nh == 0,
                Weighting::Vertex => nh == 0,
            };
            go(model, left - 1, nh, Some(dh), nu + earns as u32, top.max(nh), out);
        }
    }
    let mut out = Vec::new();
    go(model, n, 0, None, 0, 0, &mut out);
    out
}

#[test]
fn partition_matches_brute_force() {
    for m in all_models() {
        let tab = baseline_partition(&m, 12).unwrap();
        for n in 0..=12 {
            let mut p = Poly::zero();
            for (nu, _, _) in brute_force(&m, n) {
                p.add_term(Monomial::ONE.with_exp(Var::A, nu), rat(1));
            }
            assert_eq!(tab.totals[n], p, "{m} n={n}");
        }
    }
}

#[test]
fn exact_heights_match_brute_force() {
    for m in all_models() {
        let tab = baseline_height_table(&m, 12).unwrap();
        for n in 0..=12 {
            let paths = brute_force(&m, n);
            let e: usize = paths.iter().map(|p| p.1).sum();
            let h: usize = paths.iter().map(|p| p.2).sum();
            let row = &tab.rows[n];
            assert_eq!(row.total, rat(paths.len() as i64), "{m} n={n}");
            assert_eq!(row.endpoint_sum, rat(e as i64), "{m} n={n}");
            assert_eq!(row.max_sum, rat(h as i64), "{m} n={n}");
        }
    }
}

#[test]
fn catalan_and_motzkin_numbers() {
    let dyck = DirectedModel::natural(ModelName::Dyck, Endpoint::Loop);
    let z = baseline_partition_at(&dyck, 8, &rat(1)).unwrap();
    let even: Vec<_> = z.iter().step_by(2).cloned().collect();
    assert_eq!(even, [1, 1, 2, 5, 14].map(rat));
    assert!(z.iter().skip(1).step_by(2).all(|x| *x == rat(0)));

    let motzkin = DirectedModel::natural(ModelName::Motzkin, Endpoint::Loop);
    let z = baseline_partition_at(&motzkin, 30, &rat(1)).unwrap();
    assert_eq!(z[..5], [1, 1, 2, 4, 9].map(rat));
    // M_{n+1} = M_n + sum_{k<n} M_k M_{n-1-k}
    let mut m = vec![rat(1)];
    for n in 0..30 {
        let mut next = m[n].clone();
        for k in 0..n {
            next += &m[k] * &m[n - 1 - k];
        }
        m.push(next);
    }
    assert_eq!(z[..], m[..31]);

    // Catalan by the closed form C(2k, k) / (k + 1), far out.
    let z = baseline_partition_at(&dyck, 200, &rat(1)).unwrap();
    let mut c = rat(1);
    for k in 0..100 {
        assert_eq!(z[2 * k], c, "k={k}");
        c = c * rat(2 * (2 * k as i64 + 1)) / rat(k as i64 + 2);
    }
}

#[test]
fn partially_directed_growth() {
    let pdw = DirectedModel::natural(ModelName::PartiallyDirected, Endpoint::Tail);
    let z = baseline_partition_at(&pdw, 60, &rat(1)).unwrap();
    let r = (&z[60] / &z[59]).to_f64().unwrap();
    assert!((r / ModelName::PartiallyDirected.growth_constant() - 1.0).abs() < 0.01, "{r}");
}

#[test]
fn critical_fugacities() {
    let value = |name, w, e| {
        baseline_critical_fugacity(&DirectedModel::new(name, w, e).unwrap())
            .unwrap()
            .map(|v| v.value)
    };
    assert_eq!(value(ModelName::Dyck, Weighting::Vertex, Endpoint::Loop), Some(2.0));
    assert_eq!(value(ModelName::Motzkin, Weighting::Edge, Endpoint::Loop), Some(2.0));
    assert_eq!(value(ModelName::Motzkin, Weighting::Vertex, Endpoint::Tail), Some(1.5));
    let pdw = value(ModelName::PartiallyDirected, Weighting::Edge, Endpoint::Tail).unwrap();
    assert!((pdw - 1.707_106_781_186_547_5).abs() < 1e-15);
    let pdv = value(ModelName::PartiallyDirected, Weighting::Vertex, Endpoint::Tail).unwrap();
    assert!((pdv - (1.0 + 2f64.sqrt()) * (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
    assert_eq!(value(ModelName::NeDirected, Weighting::Edge, Endpoint::Loop), None);
}

#[test]
fn dyck_paths_have_no_edge_weighting() {
    assert_eq!(
        DirectedModel::new(ModelName::Dyck, Weighting::Edge, Endpoint::Loop),
        Err(BaselineError::UnsupportedModel(ModelName::Dyck))
    );
    assert!("zigzag".parse::<ModelName>().is_err());
    assert_eq!("partially_directed".parse::<ModelName>(), Ok(ModelName::PartiallyDirected));
}

#[test]
fn ne_directed_heights_in_closed_form() {
    let tails = baseline_height_profile(&DirectedModel::natural(ModelName::NeDirected, Endpoint::Tail), 500).unwrap();
    assert!(tails.iter().all(|p| p.mean_max == p.n as f64 / 2.0));
    let loops = baseline_height_profile(&DirectedModel::natural(ModelName::NeDirected, Endpoint::Loop), 500).unwrap();
    assert!(loops.iter().all(|p| p.mean_max == 0.0));

    // The exact transfer agrees: every NE path of length n has mean max n/2.
    let exact = baseline_height_table(&DirectedModel::natural(ModelName::NeDirected, Endpoint::Tail), 60).unwrap();
    for r in &exact.rows {
        assert_eq!(&r.max_sum / &r.total, rat(r.n as i64) / rat(2));
    }
}

#[test]
fn cumulative_and_direct_height_tables_agree() {
    for m in all_models() {
        let direct = baseline_height_table(&m, 200).unwrap();
        let cumulative = baseline_height_table_cumulative(&m, 200).unwrap();
        assert_eq!(direct, cumulative, "{m}");
    }
}

#[test]
fn float_profile_matches_exact_means() {
    for name in ModelName::ALL {
        for e in [Endpoint::Tail, Endpoint::Loop] {
            let m = DirectedModel::natural(name, e);
            let exact = baseline_height_table(&m, 120).unwrap();
            let float = baseline_height_profile(&m, 120).unwrap();
            for p in &float {
                let r = &exact.rows[p.n];
                let h = r.mean_max();
                assert!((p.mean_max - h).abs() <= 1e-13 * h.max(1.0), "{m} n={}", p.n);
                if e == Endpoint::Tail {
                    let x = r.mean_endpoint();
                    assert!((p.mean_endpoint - x).abs() <= 1e-13 * x.max(1.0), "{m} n={}", p.n);
                }
            }
        }
    }
}

#[test]
fn motzkin_tails_amplitude_closed_form() {
    let conj = 2.0 * (std::f64::consts::PI / 3.0).sqrt() * std::f64::consts::LN_2;
    assert_eq!(format!("{conj:.5}"), "1.41863");
    assert!((conj - 1.418632).abs() < 5e-6);
}

#[test]
fn dyck_loops_amplitude_at_moderate_length() {
    // <h_n> = sqrt(pi n / 2) - 3/2 + o(1) for Dyck loops.
    let m = DirectedModel::natural(ModelName::Dyck, Endpoint::Loop);
    let prof = baseline_height_profile(&m, 1000).unwrap();
    let fit = fit_height_amplitude(&m, &prof);
    assert!((fit.amplitude - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-3, "{fit:?}");
    assert!((fit.constant + 1.5).abs() < 0.05, "{fit:?}");
}

#[test]
fn size_guards() {
    let m = DirectedModel::natural(ModelName::Motzkin, Endpoint::Tail);
    assert!(baseline_partition(&m, BASELINE_LIMIT + 1).is_err());
    assert!(baseline_height_profile(&m, BASELINE_LIMIT + 1).is_err());
    assert!(baseline_height_table(&m, EXACT_HEIGHT_LIMIT + 1).is_err());
}
