//! Text encodings: exact rationals, monomial keys, and JSON records for
//! polynomials and series.
//!
//! A polynomial is a JSON object from monomial keys to coefficient strings,
//! e.g. `{"0,1,0,2": "-3/4"}` for `-3/4 v a^2`. The key lists the exponents
//! of `u, v, w, a` in that order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::poly::{Monomial, Poly, Rational};
use crate::series::Series;

#[derive(Debug, Error)]
pub enum DecodeError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad monomial key {0:?}: expected four comma-separated exponents")]
    Key(String),
    #[error("bad rational {0:?}")]
    Rational(String),
    #[error("series {name:?} declares order {order} but has {found} coefficients")]
    Order { name: String, order: usize, found: usize },
    #[error("no series named {0:?} in the document")]
    Missing(String),
}

pub fn ser_rational<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Digits beyond which a decimal exponent is refused.
const MAX_DECIMAL_EXPONENT: u32 = 10_000;

/// Parses `p`, `p/q`, or a decimal such as `-1.25` or `3e-2`, exactly.
pub fn parse_rational(s: &str) -> Result<Rational, DecodeError> {
    let bad = || DecodeError::Rational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i64;
    if scale.unsigned_abs() > MAX_DECIMAL_EXPONENT as u64 {
        return Err(bad());
    }
    let ten = BigInt::from(10);
    let mut r = Rational::from_integer(all);
    if scale >= 0 {
        r *= Rational::from_integer(Pow::pow(&ten, scale as u32));
    } else {
        r /= Rational::from_integer(Pow::pow(&ten, (-scale) as u32));
    }
    Ok(if neg { -r } else { r })
}

pub fn monomial_key(m: &Monomial) -> String {
    let e = m.0;
    format!("{},{},{},{}", e[0], e[1], e[2], e[3])
}

pub fn parse_monomial_key(s: &str) -> Result<Monomial, DecodeError> {
    let mut e = [0u32; 4];
    let mut parts = s.split(',');
    for slot in e.iter_mut() {
        let p = parts.next().ok_or_else(|| DecodeError::Key(s.to_string()))?;
        *slot = p.trim().parse().map_err(|_| DecodeError::Key(s.to_string()))?;
    }
    if parts.next().is_some() {
        return Err(DecodeError::Key(s.to_string()));
    }
    Ok(Monomial(e))
}

pub type PolyRecord = BTreeMap<String, String>;

pub fn encode_poly(p: &Poly) -> PolyRecord {
    p.terms().map(|(m, c)| (monomial_key(m), c.to_string())).collect()
}

/// Repeated keys (after normalisation, e.g. `"0,0,0,1"` and `"0, 0,0,1"`)
/// are summed.
pub fn decode_poly(rec: &PolyRecord) -> Result<Poly, DecodeError> {
    let mut p = Poly::zero();
    for (k, v) in rec {
        p.add_term(parse_monomial_key(k)?, parse_rational(v)?);
    }
    Ok(p)
}

pub fn poly_from_json(s: &str) -> Result<Poly, DecodeError> {
    decode_poly(&serde_json::from_str(s)?)
}

pub fn poly_to_json(p: &Poly) -> String {
    serde_json::to_string(&encode_poly(p)).expect("string maps always serialize")
}

/// A named series: coefficients of `z^0..=z^order`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub name: String,
    pub order: usize,
    pub coeffs: Vec<PolyRecord>,
}

impl SeriesRecord {
    pub fn encode(name: &str, s: &Series) -> SeriesRecord {
        SeriesRecord {
            name: name.to_string(),
            order: s.order(),
            coeffs: s.coeffs().iter().map(encode_poly).collect(),
        }
    }

    pub fn decode(&self) -> Result<Series, DecodeError> {
        if self.coeffs.is_empty() || self.coeffs.len() - 1 != self.order {
            return Err(DecodeError::Order {
                name: self.name.clone(),
                order: self.order,
                found: self.coeffs.len(),
            });
        }
        let coeffs = self.coeffs.iter().map(decode_poly).collect::<Result<Vec<_>, _>>()?;
        Ok(Series::from_coeffs(coeffs))
    }
}

#[derive(Deserialize)]
struct SeriesDocument {
    data: Vec<SeriesRecord>,
}

/// Reads the `data` array of a series document; any `meta` is ignored.
pub fn series_from_json(s: &str) -> Result<Vec<(String, Series)>, DecodeError> {
    let doc: SeriesDocument = serde_json::from_str(s)?;
    doc.data.iter().map(|r| Ok((r.name.clone(), r.decode()?))).collect()
}

/// The series called `name` in a decoded document.
pub fn find_series<'a>(doc: &'a [(String, Series)], name: &str) -> Result<&'a Series, DecodeError> {
    doc.iter()
        .find(|(n, _)| n == name)
        .map(|(_, s)| s)
        .ok_or_else(|| DecodeError::Missing(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ratio, Var};

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/4").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("1.25").unwrap(), ratio(5, 4));
        assert_eq!(parse_rational("3e-2").unwrap(), ratio(3, 100));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("7").unwrap(), ratio(7, 1));
        for bad in ["", "1/0", "abc", "1e99999", ".", "-", "1.2.3", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn keys() {
        let m = Monomial::var(Var::V).mul(&Monomial::var(Var::A).pow(2));
        assert_eq!(monomial_key(&m), "0,1,0,2");
        assert_eq!(parse_monomial_key("0,1,0,2").unwrap(), m);
        assert!(parse_monomial_key("0,1,0").is_err());
        assert!(parse_monomial_key("0,1,0,2,0").is_err());
        assert!(parse_monomial_key("0,1,0,-2").is_err());
    }
}
