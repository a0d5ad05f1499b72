use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use pruwalk::io::*;
use pruwalk::poly::{rat, ratio};
use pruwalk::prudent::{list_walks, Sides, Walk};
use pruwalk::{Monomial, Poly, Rational, Series, Var};

fn big_rational() -> impl Strategy<Value = Rational> {
    (any::<i128>(), 1u64..).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((big_rational(), prop::array::uniform4(0u32..50)), 0..6)
        .prop_map(|t| Poly::from_terms(t.into_iter().map(|(c, e)| (c, Monomial(e)))))
}

fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec(poly(), 1..6).prop_map(Series::from_coeffs)
}

proptest! {
    #[test]
    fn rational_display_round_trips(x in big_rational()) {
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn decimals_parse_exactly(neg: bool, int in 0u64..1_000_000, frac in "[0-9]{0,8}", exp in -30i32..30) {
        let text = format!("{}{int}.{frac}e{exp}", if neg { "-" } else { "" });
        // int + frac / 10^len, scaled by 10^exp
        let ten = |k: i32| if k >= 0 { rat(10).pow(k) } else { Rational::from_integer(1.into()) / rat(10).pow(-k) };
        let f: Rational = if frac.is_empty() { rat(0) } else { Rational::from_integer(frac.parse().unwrap()) / ten(frac.len() as i32) };
        let mut want = (Rational::from_integer(int.into()) + f) * ten(exp);
        if neg { want = -want; }
        let got = parse_rational(&text).unwrap();
        prop_assert_eq!(&got, &want);
        // and agrees with the float parser to rounding
        let fl: f64 = text.parse().unwrap();
        prop_assert!((got.to_f64().unwrap() - fl).abs() <= 1e-15 * fl.abs());
    }

    #[test]
    fn monomial_keys_round_trip(e in prop::array::uniform4(any::<u32>())) {
        let m = Monomial(e);
        prop_assert_eq!(parse_monomial_key(&monomial_key(&m)).unwrap(), m);
    }

    #[test]
    fn polys_round_trip(p in poly()) {
        prop_assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn series_round_trip(s in series()) {
        let doc = serde_json::json!({ "meta": {}, "data": [SeriesRecord::encode("W", &s)] });
        let back = series_from_json(&doc.to_string()).unwrap();
        prop_assert_eq!(find_series(&back, "W").unwrap(), &s);
    }

    #[test]
    fn walks_round_trip(n in 0usize..8, pick: prop::sample::Index) {
        let walks = list_walks(Sides::Three, n);
        let w = &walks[pick.index(walks.len())];
        prop_assert_eq!(&w.to_string().parse::<Walk>().unwrap(), w);
    }

    #[test]
    fn parsers_never_panic(s in "\\PC{0,40}") {
        let _ = parse_rational(&s);
        let _ = parse_monomial_key(&s);
        let _ = poly_from_json(&s);
        let _ = series_from_json(&s);
        let _ = s.parse::<Walk>();
    }
}

#[test]
fn documented_poly_encoding() {
    let p = poly_from_json(r#"{"0,1,0,2": "-3/4"}"#).unwrap();
    let want = Poly::from_terms([(ratio(-3, 4), Monomial::var(Var::V).mul(&Monomial::var(Var::A).pow(2)))]);
    assert_eq!(p, want);
    // duplicate keys after whitespace normalisation are summed
    let p = poly_from_json(r#"{"0,0,0,1": "1", "0, 0,0,1": "1/2"}"#).unwrap();
    assert_eq!(p, Poly::from_terms([(ratio(3, 2), Monomial::var(Var::A))]));
    // zero coefficients vanish
    assert!(poly_from_json(r#"{"1,0,0,0": "0"}"#).unwrap().is_zero());
}

#[test]
fn decode_errors() {
    assert!(matches!(poly_from_json("[1]"), Err(DecodeError::Json(_))));
    assert!(matches!(poly_from_json(r#"{"1,0": "1"}"#), Err(DecodeError::Key(_))));
    assert!(matches!(poly_from_json(r#"{"1,0,0,0": "x"}"#), Err(DecodeError::Rational(_))));
    let short = r#"{"data": [{"name": "W", "order": 2, "coeffs": [{}]}]}"#;
    assert!(matches!(series_from_json(short), Err(DecodeError::Order { order: 2, found: 1, .. })));
    let empty = r#"{"data": [{"name": "W", "order": 0, "coeffs": []}]}"#;
    assert!(matches!(series_from_json(empty), Err(DecodeError::Order { .. })));
    let doc = series_from_json(r#"{"data": []}"#).unwrap();
    assert!(matches!(find_series(&doc, "W"), Err(DecodeError::Missing(_))));
    let err = "NEX".parse::<Walk>().unwrap_err();
    assert_eq!((err.position, err.found), (2, 'X'));
    assert_eq!("n, e w".parse::<Walk>().unwrap().to_string(), "NEW");
}
