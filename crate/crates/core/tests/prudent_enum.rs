use num_traits::{One, ToPrimitive, Zero};
use pruwalk::baselines::{baseline_partition, DirectedModel, ModelName};
use pruwalk::phase::fit::fit_line;
use pruwalk::poly::{rat, ratio};
use pruwalk::prudent::*;
use pruwalk::{Monomial, Poly, Rational, Var};

fn a_poly(coeffs: &[i64]) -> Poly {
    Poly::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| (rat(c), Monomial::ONE.with_exp(Var::A, k as u32))),
    )
}

/// Every step sequence of length `n`, admissible or not.
fn all_sequences(n: usize) -> impl Iterator<Item = Walk> {
    (0..4usize.pow(n as u32)).map(move |mut code| {
        let steps = (0..n)
            .map(|_| {
                let s = Step::ALL[code % 4];
                code /= 4;
                s
            })
            .collect();
        Walk::new(steps)
    })
}

#[test]
fn first_lengths_by_hand() {
    let tails = enumerate_walks(WalkFamily::TWO_SIDED_TAILS, 2).unwrap();
    let loops = enumerate_walks(WalkFamily::TWO_SIDED_LOOPS, 2).unwrap();
    assert_eq!(tails.totals[0], Poly::one());
    assert_eq!(loops.totals[0], Poly::one());
    // N, E, W: E and W lie in the surface.
    assert_eq!(tails.totals[1], a_poly(&[1, 2]));
    assert_eq!(loops.totals[1], a_poly(&[0, 2]));
    // EE, WW (two surface edges); EN, WN, NE, NW, NN (EN, WN keep one).
    assert_eq!(tails.totals[2], a_poly(&[3, 2, 2]));
}

#[test]
fn brute_force_filter_reproduces_weighted_tables() {
    // Independent of the pruned search: filter all 4^n sequences with the
    // definition-level admissibility check and weight by surface edges.
    for sides in [Sides::One, Sides::Two, Sides::Three] {
        for endpoint in [Endpoint::Tail, Endpoint::Loop] {
            let fam = WalkFamily::new(sides, endpoint);
            let table = enumerate_walks(fam, 8).unwrap();
            for n in 0..=8 {
                let mut p = Poly::zero();
                for w in all_sequences(n).filter(|w| is_admissible(w, fam)) {
                    p.add_term(Monomial::ONE.with_exp(Var::A, w.surface_edges() as u32), rat(1));
                }
                assert_eq!(table.totals[n], p, "{fam:?} n={n}");
            }
        }
    }
}

#[test]
fn transfer_counter_equals_exhaustive_search() {
    for (fam, endpoint) in [
        (WalkFamily::TWO_SIDED_TAILS, Endpoint::Tail),
        (WalkFamily::TWO_SIDED_LOOPS, Endpoint::Loop),
    ] {
        let dfs = enumerate_walks(fam, 12).unwrap();
        let dp = count_walks_dp(endpoint, 12, DEFAULT_DP_LIMIT).unwrap();
        assert_eq!(dfs.totals, dp.totals, "{fam:?}");
        assert_eq!(dfs.refined, dp.refined, "{fam:?}");
    }
}

#[test]
fn unit_fugacity_counts_walks() {
    for sides in [Sides::One, Sides::Two, Sides::Three] {
        let table = enumerate_walks(WalkFamily::new(sides, Endpoint::Tail), 9).unwrap();
        let at_one = table.totals_at(&rat(1));
        for (n, z) in at_one.iter().enumerate() {
            assert_eq!(*z, rat(list_walks(sides, n).len() as i64), "{sides:?} n={n}");
        }
    }
}

#[test]
fn weights_are_nonnegative_integers() {
    let dp = count_walks_dp(Endpoint::Tail, 40, DEFAULT_DP_LIMIT).unwrap();
    assert!(dp.totals.iter().all(Poly::is_nonneg_integral));
    assert!(dp.refined.values().all(Poly::is_nonneg_integral));
}

#[test]
fn prefixes_stay_admissible() {
    for sides in [Sides::One, Sides::Two, Sides::Three] {
        let fam = WalkFamily::new(sides, Endpoint::Tail);
        for w in list_walks(sides, 9) {
            for k in 0..=w.len() {
                assert!(is_admissible(&Walk::new(w.steps[..k].to_vec()), fam), "prefix {k} of {w}");
            }
        }
    }
}

#[test]
fn one_sided_walks_are_partially_directed() {
    let pdw = DirectedModel::natural(ModelName::PartiallyDirected, Endpoint::Tail);
    let base = baseline_partition(&pdw, 12).unwrap();
    let one = enumerate_walks(WalkFamily::new(Sides::One, Endpoint::Tail), 12).unwrap();
    assert_eq!(base.totals, one.totals);

    // Growth ratio at n = 60 against 1 + sqrt 2.
    let z = pruwalk::baselines::baseline_partition_at(&pdw, 60, &rat(1)).unwrap();
    let r = (&z[60] / &z[59]).to_f64().unwrap();
    let mu = 1.0 + 2f64.sqrt();
    assert!((r - mu).abs() / mu < 0.01, "ratio {r}");
}

#[test]
fn two_sided_growth_ratio_approaches_inverse_radius() {
    let z1 = 0.403032;
    // Exact counts overflow nothing in f64 at this length (about 2.5^200).
    let z = TwoSidedStates::compute(200, &1.0f64).totals(Endpoint::Tail);
    let exact = count_walks_dp_at(Endpoint::Tail, 40, &rat(1), DEFAULT_DP_LIMIT).unwrap();
    for n in 0..=40 {
        assert!((exact[n].to_f64().unwrap() / z[n] - 1.0).abs() < 1e-14);
    }
    let dev = |n: usize| (z[n] / z[n - 1] * z1 - 1.0).abs();
    assert!(dev(200) < dev(100) && dev(100) < dev(50), "{} {} {}", dev(50), dev(100), dev(200));
    assert!(dev(200) < 0.01, "{}", dev(200));
}

#[test]
fn mean_heights_at_small_lengths() {
    let t = height_statistics(WalkFamily::TWO_SIDED_TAILS, 3, &rat(1)).unwrap();
    assert!(t.rows[0].max_sum.is_zero() && t.rows[0].endpoint_sum.is_zero());
    assert_eq!(t.rows[0].total, rat(1));
    assert_eq!(&t.rows[1].max_sum / &t.rows[1].total, ratio(1, 3));
    assert_eq!(&t.rows[1].endpoint_sum / &t.rows[1].total, ratio(1, 3));
}

#[test]
fn height_sums_match_walk_by_walk_oracle() {
    let a = ratio(3, 2);
    for endpoint in [Endpoint::Tail, Endpoint::Loop] {
        let fam = WalkFamily::new(Sides::Two, endpoint);
        let dp = height_statistics(fam, 10, &a).unwrap();
        for n in 0..=10 {
            let (mut total, mut e, mut m) = (Rational::zero(), Rational::zero(), Rational::zero());
            for w in list_walks(Sides::Two, n) {
                if endpoint == Endpoint::Loop && w.endpoint_height() != 0 {
                    continue;
                }
                let weight = num_traits::pow(a.clone(), w.surface_edges());
                e += &weight * rat(w.endpoint_height() as i64);
                m += &weight * rat(w.max_height() as i64);
                total += weight;
            }
            let row = &dp.rows[n];
            assert_eq!((&row.total, &row.endpoint_sum, &row.max_sum), (&total, &e, &m), "{endpoint:?} n={n}");
        }
    }
}

#[test]
fn maximum_dominates_endpoint() {
    let t = height_statistics(WalkFamily::TWO_SIDED_TAILS, 60, &rat(1)).unwrap();
    for r in &t.rows {
        assert!(r.max_sum >= r.endpoint_sum && r.endpoint_sum >= Rational::zero(), "n={}", r.n);
    }
}

#[test]
fn float_transfer_matches_exact_heights() {
    for endpoint in [Endpoint::Tail, Endpoint::Loop] {
        let exact = TwoSidedStates::compute(60, &Rational::one()).height_table(endpoint);
        let float = TwoSidedStates::compute(60, &1.0f64).height_sums(endpoint);
        for (r, f) in exact.rows.iter().zip(&float) {
            let rel = |x: &Rational, y: f64| {
                let x = x.to_f64().unwrap();
                if x == 0.0 { y.abs() } else { ((x - y) / x).abs() }
            };
            assert!(rel(&r.total, f.0) < 1e-12, "n={}", r.n);
            assert!(rel(&r.endpoint_sum, f.1) < 1e-12, "n={}", r.n);
            assert!(rel(&r.max_sum, f.2) < 1e-12, "n={}", r.n);
        }
    }
}

#[test]
fn tails_height_grows_with_steady_increments() {
    let t = height_statistics(WalkFamily::TWO_SIDED_TAILS, 60, &rat(1)).unwrap();
    let h = t.mean_max();
    let ns: Vec<f64> = (20..=60).map(|n| n as f64).collect();
    let fit = fit_line(&ns, &h[20..=60]);
    assert!(fit.coeffs[0] > 0.0);
    let inc: Vec<f64> = (21..=60).map(|n| h[n] - h[n - 1]).collect();
    let (lo, hi) = inc.iter().fold((f64::MAX, f64::MIN), |(l, u), &x| (l.min(x), u.max(x)));
    assert!(lo > 0.0 && hi < 2.0 * lo, "increments in [{lo}, {hi}]");
}

#[test]
fn size_guards() {
    assert!(enumerate_walks(WalkFamily::TWO_SIDED_TAILS, DEFAULT_DFS_LIMIT + 1).is_err());
    assert!(count_walks_dp(Endpoint::Tail, DEFAULT_DP_LIMIT + 1, DEFAULT_DP_LIMIT).is_err());
    assert!(height_statistics(WalkFamily::TWO_SIDED_TAILS, DEFAULT_DP_LIMIT + 1, &rat(1)).is_err());
}
