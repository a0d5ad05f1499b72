//! Real root isolation for univariate polynomials with rational
//! coefficients: Sturm sequences on exact arithmetic, then exact bisection.

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::Rational;

/// Coefficients in increasing degree.
pub type UPoly = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("the zero polynomial has no isolated roots")]
    Degenerate,
    #[error("interval ({lo}, {hi}) is empty or not finite")]
    BadInterval { lo: f64, hi: f64 },
}

/// One real root: an isolating interval, its midpoint and multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealRoot {
    pub value: f64,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub hi: Rational,
    pub multiplicity: usize,
}

/// Width below which isolating intervals stop being refined, relative to
/// the root magnitude (with an absolute floor for roots near 0).
const REFINE_WIDTH: f64 = 1e-16;

pub fn from_ints(c: &[i64]) -> UPoly {
    trim(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
}

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &UPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn eval(p: &UPoly, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn eval_f64(p: &UPoly, x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
}

pub fn derivative(p: &UPoly) -> UPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(k.into()))
            .collect(),
    )
}

/// Remainder of `a` divided by `b` (`b` nonzero).
fn rem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r = a.clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let q = &r[dr] / &lead;
        for k in 0..=db {
            let t = &q * &b[k];
            r[dr - db + k] -= t;
        }
        r = trim(r);
    }
    r
}

fn quo(a: &UPoly, b: &UPoly) -> UPoly {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r = a.clone();
    let mut q = vec![Rational::zero(); a.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        for k in 0..=db {
            let t = &c * &b[k];
            r[dr - db + k] -= t;
        }
        q[dr - db] = c;
        r = trim(r);
    }
    trim(q)
}

fn monic(p: UPoly) -> UPoly {
    match p.last().cloned() {
        Some(l) => p.into_iter().map(|c| c / &l).collect(),
        None => p,
    }
}

pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

fn sturm_chain(p: &UPoly) -> Vec<UPoly> {
    let mut chain = vec![p.clone(), derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let r: UPoly = rem(&chain[n - 2], &chain[n - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn variations(chain: &[UPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for p in chain {
        let s = eval(p, x);
        let s = if s.is_positive() {
            1
        } else if s.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Distinct roots of a square-free `p` in `(lo, hi]`.
fn count(chain: &[UPoly], lo: &Rational, hi: &Rational) -> usize {
    variations(chain, lo) - variations(chain, hi)
}

fn refine(p: &UPoly, mut lo: Rational, mut hi: Rational) -> (Rational, Rational) {
    // Exactly one root in (lo, hi] of a square-free p, so p changes sign
    // there; lo itself may be a root excluded from the interval.
    let s_hi = eval(p, &hi);
    if s_hi.is_zero() {
        return (hi.clone(), hi);
    }
    let s_lo = -s_hi.signum();
    let two = Rational::from_integer(2.into());
    loop {
        let width = (&hi - &lo).to_f64().unwrap_or(0.0);
        let scale = hi.abs().to_f64().unwrap_or(1.0).max(1e-3);
        if width <= REFINE_WIDTH * scale {
            return (lo, hi);
        }
        let mid = (&lo + &hi) / &two;
        let s = eval(p, &mid);
        if s.is_zero() {
            return (mid.clone(), mid);
        }
        if s.signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Multiplicity of the single root of `p` in `(lo, hi]`.
fn multiplicity(p: &UPoly, lo: &Rational, hi: &Rational) -> usize {
    let g = gcd(p, &derivative(p));
    if degree(&g).unwrap_or(0) == 0 {
        return 1;
    }
    let sq = quo(&g, &gcd(&g, &derivative(&g)));
    let chain = sturm_chain(&sq);
    if count(&chain, lo, hi) > 0 || eval(&g, hi).is_zero() {
        1 + multiplicity(&g, lo, hi)
    } else {
        1
    }
}

/// All real roots of `p` strictly inside `(lo, hi)`, in increasing order,
/// refined to about 16 significant digits.
pub fn isolate_real_roots(p: &UPoly, lo: f64, hi: f64) -> Result<Vec<RealRoot>, RootError> {
    let p = trim(p.clone());
    if p.is_empty() {
        return Err(RootError::Degenerate);
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(RootError::BadInterval { lo, hi });
    }
    let (lo_r, hi_r) = (
        Rational::from_float(lo).expect("finite"),
        Rational::from_float(hi).expect("finite"),
    );
    isolate_exact(&p, &lo_r, &hi_r)
}

/// As [`isolate_real_roots`] with exact interval ends.
pub fn isolate_exact(p: &UPoly, lo: &Rational, hi: &Rational) -> Result<Vec<RealRoot>, RootError> {
    let p = trim(p.clone());
    if p.is_empty() {
        return Err(RootError::Degenerate);
    }
    if degree(&p) == Some(0) {
        return Ok(Vec::new());
    }
    let sq = quo(&p, &gcd(&p, &derivative(&p)));
    let chain = sturm_chain(&sq);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    let two = Rational::from_integer(2.into());
    while let Some((a, b)) = stack.pop() {
        let mut c = count(&chain, &a, &b);
        // Roots exactly at the open interval's right end are excluded.
        if &b == hi && eval(&sq, &b).is_zero() {
            c -= 1;
        }
        match c {
            0 => {}
            1 => {
                let b = if &b == hi { shrink_right(&sq, &a, &b) } else { b };
                let (rl, rh) = refine(&sq, a, b);
                let value = ((&rl + &rh) / &two).to_f64().unwrap_or(f64::NAN);
                let multiplicity = multiplicity(&p, &rl, &rh);
                out.push(RealRoot {
                    value,
                    lo: rl,
                    hi: rh,
                    multiplicity,
                });
            }
            _ => {
                let mid = (&a + &b) / &two;
                if eval(&sq, &mid).is_zero() {
                    // Split off the exact root at mid by nudging the boundary.
                    let eps = (&b - &a) / Rational::from_integer(1024.into());
                    let (l, r) = (&mid - &eps, mid.clone());
                    stack.push((r.clone(), b));
                    stack.push((l.clone(), r));
                    stack.push((a, l));
                } else {
                    stack.push((mid.clone(), b));
                    stack.push((a, mid));
                }
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Moves `hi` left past a root sitting exactly at `hi`, keeping the single
/// interior root inside.
fn shrink_right(sq: &UPoly, lo: &Rational, hi: &Rational) -> Rational {
    if !eval(sq, hi).is_zero() {
        return hi.clone();
    }
    let chain = sturm_chain(sq);
    let mut step = (hi - lo) / Rational::from_integer(2.into());
    loop {
        let b = hi - &step;
        if !eval(sq, &b).is_zero() && count(&chain, lo, &b) == 1 {
            return b;
        }
        step = step / Rational::from_integer(2.into());
    }
}

/// `p(x)` with `x` given as a float, evaluated exactly.
pub fn eval_at_float(p: &UPoly, x: f64) -> f64 {
    Rational::from_float(x)
        .map(|r| eval(p, &r).to_f64().unwrap_or(f64::NAN))
        .unwrap_or(f64::NAN)
}
