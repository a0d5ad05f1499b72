//! Truncated power series in `z` with [`Poly`] coefficients.
//!
//! A series of order `N` stores the coefficients of `z^0..=z^N`, all of
//! which are exact. Binary operations truncate at the smaller order;
//! division additionally loses the valuation of the divisor.

use std::fmt;

use num_traits::One;

use crate::error::AlgebraError;
use crate::poly::{rat, Monomial, Poly, Rational, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Poly>,
}

impl Series {
    pub fn zero(order: usize) -> Series {
        Series {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Series {
        Series::constant(Poly::one(), order)
    }

    /// A `z`-free polynomial viewed as a series of the given order.
    pub fn constant(p: Poly, order: usize) -> Series {
        let mut s = Series::zero(order);
        s.coeffs[0] = p;
        s
    }

    pub fn var(v: Var, order: usize) -> Series {
        Series::constant(Poly::var(v), order)
    }

    /// `z` itself.
    pub fn z(order: usize) -> Series {
        Series::monomial(Poly::one(), 1, order)
    }

    /// `p * z^k`, zero if `k > order`.
    pub fn monomial(p: Poly, k: usize, order: usize) -> Series {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = p;
        }
        s
    }

    /// Series from a coefficient list; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Poly>) -> Series {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Series { coeffs }
    }

    /// Polynomial in `z` given by integer coefficients, lowest first.
    pub fn from_ints(ints: &[i64], order: usize) -> Series {
        let mut s = Series::zero(order);
        for (k, &c) in ints.iter().enumerate().take(order + 1) {
            s.coeffs[k] = Poly::int(c);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Poly> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn coeff_mut(&mut self, k: usize) -> &mut Poly {
        &mut self.coeffs[k]
    }

    /// Index of the first nonzero coefficient, `order + 1` for the zero series.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order(), "cannot extend a series by truncation");
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// True when no coefficient beyond `z^0` is nonzero.
    pub fn is_z_free(&self) -> bool {
        self.coeffs[1..].iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn neg(&self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, p: &Poly) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    pub fn scale_rat(&self, c: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }

    /// Multiplies by `z^k`; the order is unchanged and high terms drop out.
    pub fn shift_up(&self, k: usize) -> Series {
        let n = self.order();
        let mut s = Series::zero(n);
        for i in k..=n {
            s.coeffs[i] = self.coeffs[i - k].clone();
        }
        s
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Poly::zero(); n + 1];
        let vx = self.valuation();
        let vy = other.valuation();
        for i in vx..=n {
            let x = &self.coeffs[i];
            if x.is_zero() {
                continue;
            }
            for j in vy..=(n - i) {
                let y = &other.coeffs[j];
                if !y.is_zero() {
                    coeffs[i + j].add_mul(x, y);
                }
            }
        }
        Series { coeffs }
    }

    pub fn square(&self) -> Series {
        self.mul(self)
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut out = Series::one(self.order());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Quotient `self / d`. Both are first divided by `z^valuation(d)`; the
    /// result is exact to `min(orders) - valuation(d)`. Every polynomial
    /// division in the long division must be exact.
    pub fn div(&self, d: &Series) -> Result<Series, AlgebraError> {
        let vd = d.valuation();
        if vd > d.order() {
            return Err(AlgebraError::ZeroDivisor { order: d.order() });
        }
        let vx = self.valuation();
        if vx < vd && vx <= self.order() {
            return Err(AlgebraError::Valuation {
                numerator: vx,
                denominator: vd,
            });
        }
        let n = self.order().min(d.order());
        if n < vd {
            return Err(AlgebraError::Precision { got: n, wanted: vd });
        }
        let n = n - vd;
        let num = &self.coeffs[vd..];
        let den = &d.coeffs[vd..];
        let lead = &den[0];
        let inv = lead.as_constant().map(|c| c.recip());
        let mut q: Vec<Poly> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut r = num[k].clone();
            for j in 1..=k {
                if !den[j].is_zero() && !q[k - j].is_zero() {
                    r -= &(&den[j] * &q[k - j]);
                }
            }
            let qk = match &inv {
                Some(c) => r.scale(c),
                None => r
                    .div_exact(lead)
                    .ok_or(AlgebraError::NonDivisible { order: k })?,
            };
            q.push(qk);
        }
        Ok(Series { coeffs: q })
    }

    /// Principal square root: constant coefficient must be exactly 1.
    pub fn sqrt(&self) -> Result<Series, AlgebraError> {
        if !self.coeffs[0].is_one() {
            return Err(AlgebraError::Branch {
                found: self.coeffs[0].to_string(),
            });
        }
        let n = self.order();
        let half = Rational::new(1.into(), 2.into());
        let mut s: Vec<Poly> = Vec::with_capacity(n + 1);
        s.push(Poly::one());
        for k in 1..=n {
            let mut r = self.coeffs[k].clone();
            for j in 1..k {
                if !s[j].is_zero() && !s[k - j].is_zero() {
                    r -= &(&s[j] * &s[k - j]);
                }
            }
            s.push(r.scale(&half));
        }
        Ok(Series { coeffs: s })
    }

    pub fn derivative(&self, v: Var) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.derivative(v)).collect(),
        }
    }

    /// Replaces the symbol `v` by the series `s`.
    ///
    /// A `z`-free image keeps the order. An image of valuation at least one
    /// gives a result exact to `min(order, order(s))`.
    pub fn substitute(&self, v: Var, s: &Series) -> Result<Series, AlgebraError> {
        if !self.coeffs.iter().any(|c| c.contains(v)) {
            return Ok(self.clone());
        }
        if s.is_z_free() {
            let value = &s.coeffs[0];
            return Ok(Series {
                coeffs: self.coeffs.iter().map(|c| c.substitute(v, value)).collect(),
            });
        }
        let vs = s.valuation();
        if vs == 0 {
            return Err(AlgebraError::Truncation { symbol: v.name() });
        }
        let n = self.order().min(s.order());
        if let Some((c, k, m)) = s.single_term() {
            return Ok(self.substitute_monomials(&[(v, (c, k, m))], n));
        }
        // Group source terms by the power of `v`, then Horner in `s`.
        let maxdeg = self.coeffs[..=n]
            .iter()
            .map(|c| c.degree(v))
            .max()
            .unwrap_or(0) as usize;
        let mut parts = vec![Series::zero(n); maxdeg + 1];
        for (k, c) in self.coeffs[..=n].iter().enumerate() {
            for (m, x) in c.terms() {
                let e = m.exp(v) as usize;
                parts[e].coeffs[k].add_term(m.with_exp(v, 0), x.clone());
            }
        }
        let s = s.truncate(n);
        let mut acc = parts.pop().unwrap();
        while let Some(p) = parts.pop() {
            acc = acc.mul(&s).add(&p);
        }
        Ok(acc)
    }

    /// Simultaneous substitution of single-term images `c * z^k * m` for
    /// several symbols, truncated at `order`.
    pub fn substitute_monomials(
        &self,
        images: &[(Var, (Rational, usize, Monomial))],
        order: usize,
    ) -> Series {
        let order = order.min(self.order());
        let mut out = Series::zero(order);
        for (n, c) in self.coeffs.iter().enumerate() {
            for (m, x) in c.terms() {
                let mut coef = x.clone();
                let mut zpow = n;
                let mut mono = *m;
                for (var, (ic, ik, im)) in images {
                    let e = m.exp(*var);
                    if e == 0 {
                        continue;
                    }
                    mono = mono.with_exp(*var, 0);
                    for _ in 0..e {
                        coef *= ic;
                    }
                    zpow += ik * e as usize;
                    mono = mono.mul(&im.pow(e));
                }
                if zpow <= order {
                    out.coeffs[zpow].add_term(mono, coef);
                }
            }
        }
        out
    }

    /// `Some((c, k, m))` when the series is exactly `c * z^k * m`.
    pub fn single_term(&self) -> Option<(Rational, usize, Monomial)> {
        let mut found = None;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some() || c.len() != 1 {
                return None;
            }
            let (m, x) = c.terms().next().unwrap();
            found = Some((x.clone(), k, *m));
        }
        found
    }

    /// Coefficientwise evaluation of one symbol at a rational.
    pub fn eval_var(&self, v: Var, x: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.eval_var(v, x)).collect(),
        }
    }

    /// Rational coefficients, when no symbol remains.
    pub fn constant_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(Poly::as_constant).collect()
    }

    /// Reduces the order to `wanted`, failing if fewer terms are exact.
    pub fn require_order(&self, wanted: usize) -> Result<Series, AlgebraError> {
        if self.order() < wanted {
            return Err(AlgebraError::Precision {
                got: self.order(),
                wanted,
            });
        }
        Ok(self.truncate(wanted))
    }

    pub fn map_coeffs<F: Fn(&Poly) -> Poly>(&self, f: F) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Adds `c` to the coefficient of `z^k` (used for fault injection).
    pub fn perturb(&mut self, k: usize, c: &Poly) {
        self.coeffs[k] += c;
    }

    /// `1 - p * self` with `p` a polynomial; frequently needed kernel factor.
    pub fn one_minus(&self, p: &Poly) -> Series {
        Series::one(self.order()).sub(&self.scale(p))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let zk = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if c.len() == 1 && c.is_one() && k > 0 {
                f.write_str(&zk)?;
            } else if k == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{zk}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// A quotient of two series, combined without intermediate division so
/// that denominators of positive valuation never force Laurent terms.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: Series,
    pub den: Series,
}

impl Frac {
    pub fn new(num: Series, den: Series) -> Frac {
        Frac { num, den }
    }

    pub fn series(s: Series) -> Frac {
        let n = s.order();
        Frac {
            num: s,
            den: Series::one(n),
        }
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        Frac {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
    }

    pub fn div(&self, o: &Frac) -> Frac {
        Frac {
            num: self.num.mul(&o.den),
            den: self.den.mul(&o.num),
        }
    }

    pub fn add(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac {
                num: self.num.add(&o.num),
                den: self.den.clone(),
            };
        }
        Frac {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }

    pub fn sub(&self, o: &Frac) -> Frac {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Frac {
        Frac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul_series(&self, s: &Series) -> Frac {
        Frac {
            num: self.num.mul(s),
            den: self.den.clone(),
        }
    }

    pub fn eval(&self) -> Result<Series, AlgebraError> {
        self.num.div(&self.den)
    }
}

/// Coefficients of `(1 + x)^(1/2)` via the binomial series; a test oracle
/// independent of [`Series::sqrt`].
pub fn binomial_sqrt_coeffs(n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    let half = Rational::new(1.into(), 2.into());
    let mut c = Rational::one();
    for k in 1..=n {
        c = c * (&half - rat(k as i64 - 1)) / rat(k as i64);
        out.push(c.clone());
    }
    out
}
