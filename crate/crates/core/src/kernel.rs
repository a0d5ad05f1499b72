//! Closed-form generating functions of two-sided prudent walks above an
//! adsorbing surface, obtained by the iterated kernel method, and the
//! coefficient-level checks of their functional equations.
//!
//! Every rational expression is assembled as a [`Frac`] (numerator and
//! denominator series) and divided once, so denominators with positive
//! valuation such as `lambda(v) - z` never produce Laurent terms. Each
//! division loses the valuation of its denominator; the context computes at
//! a working order above the requested one and every public result is
//! checked to be exact to the requested order.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{AlgebraError, ComputeError, LimitError};
use crate::prudent::{enumerate_walks, Endpoint, Side, Sides, WalkFamily};
use crate::poly::{rat, ratio, Monomial, Poly, Rational, Var};
use crate::series::{Frac, Series};

/// Extra working precision used by default.
pub const DEFAULT_SLACK: usize = 12;

/// Additional precision for the unsimplified `H` and `I`.
const UNSIMPLIFIED_SLACK: usize = 12;

/// How a catalytic argument is specialized.
#[derive(Clone, Debug, PartialEq)]
pub enum Arg {
    /// The ring symbol for the slot (`u` or `v`).
    Symbol,
    Value(Rational),
    /// A series of valuation at least one, or a `z`-free polynomial.
    Series(Series),
}

impl Arg {
    pub fn int(n: i64) -> Arg {
        Arg::Value(rat(n))
    }

    fn to_series(&self, slot: Var, order: usize) -> Series {
        match self {
            Arg::Symbol => Series::var(slot, order),
            Arg::Value(r) => Series::constant(Poly::constant(r.clone()), order),
            Arg::Series(s) => s.truncate(order.min(s.order())),
        }
    }

    fn is_zero_value(&self) -> bool {
        matches!(self, Arg::Value(r) if r.is_zero())
    }
}

/// Surface fugacity: symbolic or a fixed rational.
#[derive(Clone, Debug, PartialEq)]
pub enum Fugacity {
    Symbolic,
    Value(Rational),
}

impl Fugacity {
    pub fn poly(&self) -> Poly {
        match self {
            Fugacity::Symbolic => Poly::var(Var::A),
            Fugacity::Value(r) => Poly::constant(r.clone()),
        }
    }
}

/// The named building blocks of the solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Piece {
    L,
    M,
    A,
    B,
    C,
    H,
    I,
    J,
}

impl Piece {
    pub fn from_name(s: &str) -> Option<Piece> {
        Some(match s {
            "L" => Piece::L,
            "M" => Piece::M,
            "A" => Piece::A,
            "B" => Piece::B,
            "C" => Piece::C,
            "H" => Piece::H,
            "I" => Piece::I,
            "J" => Piece::J,
            _ => return None,
        })
    }
}

/// Shared state for one order and one fugacity: the working precision and
/// the cached `Lambda = lambda(1)` and `J(a)`.
#[derive(Clone, Debug)]
pub struct KernelContext {
    order: usize,
    working: usize,
    a: Poly,
    capital_lambda: Series,
    j: Series,
}

impl KernelContext {
    pub fn new(order: usize, a: Fugacity) -> Result<KernelContext, AlgebraError> {
        KernelContext::with_slack(order, DEFAULT_SLACK, a)
    }

    pub fn with_slack(order: usize, slack: usize, a: Fugacity) -> Result<KernelContext, AlgebraError> {
        KernelContext::build(order, slack, a.poly())
    }

    fn build(order: usize, slack: usize, a: Poly) -> Result<KernelContext, AlgebraError> {
        let working = order + slack;
        let capital_lambda = lambda_at(&Series::one(working))?;
        let j = j_series(&capital_lambda, &a);
        Ok(KernelContext {
            order,
            working,
            a,
            capital_lambda,
            j,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn working_order(&self) -> usize {
        self.working
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    fn n(&self) -> usize {
        self.working
    }

    fn z(&self) -> Series {
        Series::z(self.n())
    }

    fn zk(&self, p: Poly, k: usize) -> Series {
        Series::monomial(p, k, self.n())
    }

    fn c(&self, p: Poly) -> Series {
        Series::constant(p, self.n())
    }

    fn finish(&self, s: Series) -> Result<Series, AlgebraError> {
        s.require_order(self.order)
    }

    /// `Lambda`, cached at working precision.
    pub fn capital_lambda_raw(&self) -> &Series {
        &self.capital_lambda
    }

    pub fn capital_lambda(&self) -> Result<Series, AlgebraError> {
        self.finish(self.capital_lambda.clone())
    }

    /// `lambda(v)` with the `v` slot specialized by `v`.
    pub fn lambda_series(&self, v: &Arg) -> Result<Series, AlgebraError> {
        let v = v.to_series(Var::V, self.n());
        self.finish(lambda_at(&v)?)
    }

    /// `v * Lambda` for the given `v` slot.
    pub fn v_lambda(&self, v: &Arg) -> Series {
        v.to_series(Var::V, self.n()).mul(&self.capital_lambda)
    }

    /// `u * Lambda^k`.
    pub fn u_lambda_pow(&self, u: &Arg, k: u32) -> Series {
        u.to_series(Var::U, self.n()).mul(&self.capital_lambda.pow(k))
    }

    pub fn j_series(&self) -> Result<Series, AlgebraError> {
        self.finish(self.j.clone())
    }

    /// `L(u, v) = 1 - z u v (1 - z^2) / ((u - z)(1 - z u))`.
    fn l_frac(&self, u: &Series, v: &Series) -> Frac {
        let den = u.sub(&self.z()).mul(&self.c(Poly::one()).sub(&u.shift_up(1)));
        let num = den.sub(&kernel_term(u, v, self.n()));
        Frac::new(num, den)
    }

    /// `M(u, v) = 1 - z u v (1 - z^2) / ((v - z u)(u - z v))`.
    fn m_frac(&self, u: &Series, v: &Series) -> Frac {
        let den = self.m_den(u, v);
        let num = den.sub(&kernel_term(u, v, self.n()));
        Frac::new(num, den)
    }

    fn m_den(&self, u: &Series, v: &Series) -> Series {
        v.sub(&u.shift_up(1)).mul(&u.sub(&v.shift_up(1)))
    }

    /// Numerator of `A(u, v)`: `v (u - z^2 u - z u lambda a + z^2 v lambda a)`.
    fn a_num(&self, u: &Series, v: &Series, lam: &Series) -> Series {
        let la = lam.scale(&self.a);
        let inner = u
            .sub(&u.shift_up(2))
            .sub(&u.mul(&la).shift_up(1))
            .add(&v.mul(&la).shift_up(2));
        v.mul(&inner)
    }

    /// `1 - z lambda a`.
    fn one_minus_z_lambda_a(&self, lam: &Series) -> Series {
        self.c(Poly::one()).sub(&lam.scale(&self.a).shift_up(1))
    }

    fn a_frac(&self, u: &Series, v: &Series, lam: &Series) -> Frac {
        let den = self.m_den(u, v).mul(&self.one_minus_z_lambda_a(lam));
        Frac::new(self.a_num(u, v, lam), den)
    }

    /// Numerator of `B(u, v)`: `-z u (u + v - z v - z^2 v - v a + z^2 v a)`.
    fn b_num(&self, u: &Series, v: &Series) -> Series {
        let va = v.scale(&self.a);
        let inner = u
            .add(v)
            .sub(&v.shift_up(1))
            .sub(&v.shift_up(2))
            .sub(&va)
            .add(&va.shift_up(2));
        u.mul(&inner).shift_up(1).neg()
    }

    fn b_frac(&self, u: &Series, v: &Series) -> Frac {
        Frac::new(self.b_num(u, v), self.m_den(u, v))
    }

    /// Numerator of `C(u, v)`: `-z v (z u - u lambda + z v lambda)`.
    fn c_num(&self, u: &Series, v: &Series, lam: &Series) -> Series {
        let inner = u.shift_up(1).sub(&u.mul(lam)).add(&v.mul(lam).shift_up(1));
        v.mul(&inner).shift_up(1).neg()
    }

    fn c_frac(&self, u: &Series, v: &Series, lam: &Series) -> Frac {
        let den = lam.sub(&self.z()).mul(&u.sub(&v.shift_up(1)));
        Frac::new(self.c_num(u, v, lam), den)
    }

    /// `1 - (1 - z - z^2 + Lambda) lambda'`.
    fn pole_factor(&self, lam_q: &Series) -> Series {
        let coef = Series::from_ints(&[1, -1, -1], self.n()).add(&self.capital_lambda);
        self.c(Poly::one()).sub(&coef.mul(lam_q))
    }

    /// Simplified `H(q)` with `lambda' = lambda(q Lambda)`.
    fn h_frac(&self, q: &Series) -> Result<Frac, AlgebraError> {
        let lam_cap = &self.capital_lambda;
        let lq = lambda_at(&q.mul(lam_cap))?;
        let one = self.c(Poly::one());
        let za = self.zk(self.a.clone(), 1);
        let num = Series::from_ints(&[1, 0, -1], self.n())
            .mul(&one.sub(&lam_cap.square()))
            .mul(
                &one
                    .sub(&za.mul(&Series::from_ints(&[1, 1], self.n())).mul(&lq))
                    .add(&za.mul(&lq.square())),
            );
        let den = self
            .j
            .mul(&one.sub(&lam_cap.shift_up(1)))
            .mul(&one.sub(&za.mul(&lq)))
            .mul(&self.pole_factor(&lq));
        Ok(Frac::new(num, den))
    }

    /// Simplified `I(q)` with `lambda' = lambda(q Lambda)`.
    fn i_frac(&self, q: &Series) -> Result<Frac, AlgebraError> {
        let lam_cap = &self.capital_lambda;
        let lq = lambda_at(&q.mul(lam_cap))?;
        let one = self.c(Poly::one());
        let a = self.c(self.a.clone());
        // 1 - z - z^2 - a + z^2 a + Lambda
        let mid = Series::from_ints(&[1, -1, -1], self.n())
            .sub(&a)
            .add(&a.shift_up(2))
            .add(lam_cap);
        let last = self.z().sub(&one.sub(&lam_cap.shift_up(1)).mul(&lq));
        let num = lam_cap.sub(&self.z()).mul(&mid).mul(&last);
        let den = self
            .j
            .mul(&one.sub(&lam_cap.shift_up(1)))
            .mul(&self.pole_factor(&lq))
            .shift_up(1);
        Ok(Frac::new(num, den))
    }

    /// `H(u)` built from the unsimplified `-A/B + C A / (B C)` form.
    fn h_frac_unsimplified(&self, u: &Series) -> Result<Frac, AlgebraError> {
        let (ul, ul2) = (u.mul(&self.capital_lambda), u.mul(&self.capital_lambda.square()));
        let lam = lambda_at(&ul)?;
        let a1 = self.a_frac(u, &ul, &lam);
        let b1 = self.b_frac(u, &ul);
        let c1 = self.c_frac(u, &ul, &lam);
        let a2 = self.a_frac(&ul2, &ul, &lam);
        let c2 = self.c_frac(&ul2, &ul, &lam);
        Ok(a1.div(&b1).neg().add(&c1.mul(&a2).div(&b1.mul(&c2))))
    }

    /// `I(u)` built from the unsimplified `C B / (B C)` form.
    fn i_frac_unsimplified(&self, u: &Series) -> Result<Frac, AlgebraError> {
        let (ul, ul2) = (u.mul(&self.capital_lambda), u.mul(&self.capital_lambda.square()));
        let lam = lambda_at(&ul)?;
        let b1 = self.b_frac(u, &ul);
        let c1 = self.c_frac(u, &ul, &lam);
        let b2 = self.b_frac(&ul2, &ul);
        let c2 = self.c_frac(&ul2, &ul, &lam);
        Ok(c1.mul(&b2).div(&b1.mul(&c2)))
    }

    /// One named building block with the given `u` and `v` specializations
    /// (`H` and `I` read their argument from `u`; `J` ignores both).
    pub fn kernel_piece(&self, which: Piece, u: &Arg, v: &Arg) -> Result<Series, AlgebraError> {
        let us = u.to_series(Var::U, self.n());
        let vs = v.to_series(Var::V, self.n());
        let frac = match which {
            Piece::L => self.l_frac(&us, &vs),
            Piece::M => self.m_frac(&us, &vs),
            Piece::A => self.a_frac(&us, &vs, &lambda_at(&vs)?),
            Piece::B => self.b_frac(&us, &vs),
            Piece::C => self.c_frac(&us, &vs, &lambda_at(&vs)?),
            Piece::H => self.h_frac(&us)?,
            Piece::I => self.i_frac(&us)?,
            Piece::J => return self.j_series(),
        };
        self.finish(frac.eval()?)
    }

    /// `L(lambda(v), v)` and `M(v Lambda, v)` with symbolic `v`; both vanish
    /// because `lambda(v)` and `v Lambda` are roots of the kernels.
    pub fn kernels_at_roots(&self) -> Result<(Series, Series), AlgebraError> {
        let v = Series::var(Var::V, self.n());
        let lam = lambda_at(&v)?;
        let l = self.l_frac(&lam, &v).eval()?;
        let m = self.m_frac(&v.mul(&self.capital_lambda), &v).eval()?;
        Ok((self.finish(l)?, self.finish(m)?))
    }

    /// `H(u)` or `I(u)` through the unsimplified combination of `A`, `B`, `C`.
    /// The stacked denominators cost many orders, so this runs at a wider
    /// working precision than the context's own.
    pub fn kernel_piece_unsimplified(&self, which: Piece, u: &Arg) -> Result<Series, AlgebraError> {
        let wide = KernelContext::build(self.order, self.working - self.order + UNSIMPLIFIED_SLACK, self.a.clone())?;
        let us = u.to_series(Var::U, wide.n());
        let frac = match which {
            Piece::H => wide.h_frac_unsimplified(&us)?,
            Piece::I => wide.i_frac_unsimplified(&us)?,
            _ => panic!("only H and I have an unsimplified form"),
        };
        wide.finish(frac.eval()?)
    }

    /// `R(q, 0) = sum_n H(q Lambda^(2n)) prod_{k<n} I(q Lambda^(2k))`, for a
    /// slot value given as a series. `I` has valuation 4, so terms beyond
    /// `order / 4 + 1` vanish.
    fn r_u0_raw(&self, q: &Series) -> Result<Series, AlgebraError> {
        let n = self.n();
        let n_terms = n.div_ceil(4) + 1;
        let lam2 = self.capital_lambda.square();
        let mut total = Series::zero(n);
        let mut prod = Series::one(n);
        let mut qk = q.clone();
        for t in 0..n_terms {
            if prod.valuation() > n {
                break;
            }
            let h = self.h_frac(&qk)?.eval()?;
            total = total.add(&h.mul(&prod));
            if t + 1 < n_terms {
                let i = self.i_frac(&qk)?.eval()?;
                prod = prod.mul(&i);
                qk = qk.mul(&lam2);
            }
        }
        Ok(total)
    }

    /// `R(u, 0)` for a specialized `u` slot.
    pub fn r_u0_series(&self, u: &Arg) -> Result<Series, AlgebraError> {
        let q = u.to_series(Var::U, self.n());
        self.finish(self.r_u0_raw(&q)?)
    }

    /// `T(z, v) = -(A(vL, v) + B(vL, v) R(vL, 0)) / C(vL, v)` with
    /// `vL = v Lambda`, written as
    /// `-(nA / (1 - z lambda a) + nB R(vL, 0)) (lambda - z) / ((v - z vL) nC)`.
    fn t_zv_raw(&self, v: &Series, lam: &Series) -> Result<Series, AlgebraError> {
        let vl = v.mul(&self.capital_lambda);
        let r0 = self.r_u0_raw(&vl)?;
        let first = self.a_num(&vl, v, lam).div(&self.one_minus_z_lambda_a(lam))?;
        let num = first
            .add(&self.b_num(&vl, v).mul(&r0))
            .mul(&lam.sub(&self.z()))
            .neg();
        let den = v.sub(&vl.shift_up(1)).mul(&self.c_num(&vl, v, lam));
        num.div(&den)
    }

    pub fn t_zv_series(&self, v: &Arg) -> Result<Series, AlgebraError> {
        if v.is_zero_value() {
            let sym = self.t_zv_series(&Arg::Symbol)?;
            return Ok(sym.eval_var(Var::V, &Rational::zero()));
        }
        let vs = v.to_series(Var::V, self.n());
        let lam = lambda_at(&vs)?;
        self.finish(self.t_zv_raw(&vs, &lam)?)
    }

    /// `R(u, v)`, `T(u, v)`, `T(0, v)` and `W(u, v) = R + T - T(0, v)`.
    pub fn full_solution(&self, u: &Arg, v: &Arg) -> Result<Solution, AlgebraError> {
        if v.is_zero_value() {
            let sym = self.full_solution(u, &Arg::Symbol)?;
            let zero = Rational::zero();
            return Ok(Solution {
                r: sym.r.eval_var(Var::V, &zero),
                t: sym.t.eval_var(Var::V, &zero),
                t_zv: sym.t_zv.eval_var(Var::V, &zero),
                t0: sym.t0.eval_var(Var::V, &zero),
                w: sym.w.eval_var(Var::V, &zero),
            });
        }
        let n = self.n();
        let us = u.to_series(Var::U, n);
        let vs = v.to_series(Var::V, n);
        let lam = lambda_at(&vs)?;
        let t_zv = self.t_zv_raw(&vs, &lam)?;
        let r_u0 = self.r_u0_raw(&us)?;
        let lam_minus_z = lam.sub(&self.z());
        // z^2 v T(z, v) / (lambda - z)
        let zvt = vs.mul(&t_zv).shift_up(2).div(&lam_minus_z)?;

        let r = {
            let first = self.a_num(&us, &vs, &lam).div(&self.one_minus_z_lambda_a(&lam))?;
            let third = self
                .c_num(&us, &vs, &lam)
                .div(&lam_minus_z)?
                .mul(&vs.sub(&us.shift_up(1)))
                .mul(&t_zv);
            let num = first.add(&self.b_num(&us, &vs).mul(&r_u0)).add(&third);
            let den = self.m_frac(&us, &vs).num;
            num.div(&den)?
        };
        let t = self.t_uv_raw(&us, &vs, &lam, &t_zv, &zvt)?;
        let t0 = self.t_uv_raw(&Series::zero(n), &vs, &lam, &t_zv, &zvt)?;
        let w = r.add(&t).sub(&t0);
        Ok(Solution {
            r: self.finish(r)?,
            t: self.finish(t)?,
            t_zv: self.finish(t_zv)?,
            t0: self.finish(t0)?,
            w: self.finish(w)?,
        })
    }

    /// `T(u, v) = [(u - z)(1 - z u)(1/(1 - z u a) - 1/(1 - z lambda a)
    /// + z^2 v T(z,v)/(lambda - z)) - z^2 v (1 - z u) T(z, v)] / nL`.
    fn t_uv_raw(
        &self,
        us: &Series,
        vs: &Series,
        lam: &Series,
        t_zv: &Series,
        zvt: &Series,
    ) -> Result<Series, AlgebraError> {
        let one = self.c(Poly::one());
        let one_minus_zu = one.sub(&us.shift_up(1));
        let geo_u = one.div(&one.sub(&us.scale(&self.a).shift_up(1)))?;
        let geo_l = one.div(&self.one_minus_z_lambda_a(lam))?;
        let bracket = geo_u.sub(&geo_l).add(zvt);
        let num = us
            .sub(&self.z())
            .mul(&one_minus_zu)
            .mul(&bracket)
            .sub(&vs.mul(&one_minus_zu).mul(t_zv).shift_up(2));
        let den = self.l_frac(us, vs).num;
        num.div(&den)
    }
}

/// `z u v (1 - z^2)`.
fn kernel_term(u: &Series, v: &Series, n: usize) -> Series {
    u.mul(v)
        .mul(&Series::from_ints(&[0, 1, 0, -1], n))
}

/// `lambda(v) = (P - sqrt(P^2 - 4 z^2)) / (2 z)` with
/// `P = 1 + z^2 - z v + z^3 v`: the root of `L(lambda, v) = 0` that is a
/// power series in `z`.
pub fn lambda_at(v: &Series) -> Result<Series, AlgebraError> {
    let n = v.order();
    let p = Series::from_ints(&[1, 0, 1], n)
        .sub(&v.shift_up(1))
        .add(&v.shift_up(3));
    let disc = p.square().sub(&Series::from_ints(&[0, 0, 4], n));
    let num = p.sub(&disc.sqrt()?);
    Ok(num.div(&Series::z(n))?.scale_rat(&ratio(1, 2)))
}

/// `Lambda` straight from its closed form
/// `(1 - z + z^2 + z^3 - sqrt(1 - 2z - z^2 - z^4 + 2z^5 + z^6)) / (2z)`.
pub fn capital_lambda_closed_form(order: usize) -> Result<Series, AlgebraError> {
    let n = order + 1;
    let disc = Series::from_ints(&[1, -2, -1, 0, -1, 2, 1], n);
    let num = Series::from_ints(&[1, -1, 1, 1], n).sub(&disc.sqrt()?);
    Ok(num.div(&Series::z(n))?.scale_rat(&ratio(1, 2)))
}

/// `J(a) = 1 + Lambda - z Lambda - z^2 Lambda - Lambda a + z^2 Lambda a`.
fn j_series(lam: &Series, a: &Poly) -> Series {
    let n = lam.order();
    let la = lam.scale(a);
    Series::one(n)
        .add(lam)
        .sub(&lam.shift_up(1))
        .sub(&lam.shift_up(2))
        .sub(&la)
        .add(&la.shift_up(2))
}

/// The assembled solution at one specialization of `(u, v)`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub r: Series,
    pub t: Series,
    pub t_zv: Series,
    pub t0: Series,
    pub w: Series,
}

/// Which functional equation a residual report refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EquationId {
    TwoSidedT,
    TwoSidedR,
    ThreeSidedT,
    ThreeSidedR,
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquationId::TwoSidedT => "two-sided T equation",
            EquationId::TwoSidedR => "two-sided R equation",
            EquationId::ThreeSidedT => "three-sided T* equation",
            EquationId::ThreeSidedR => "three-sided R* equation",
        })
    }
}

/// Order-by-order outcome of substituting series into an equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    pub equation: EquationId,
    pub max_order: usize,
    pub first_failing_order: Option<usize>,
    pub failing_coefficient: Option<String>,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.first_failing_order.is_none()
    }

    fn from_residual(equation: EquationId, residual: &Series, max_order: usize) -> ResidualReport {
        let first = (0..=max_order.min(residual.order())).find(|&k| !residual.coeff(k).is_zero());
        ResidualReport {
            equation,
            max_order,
            first_failing_order: first,
            failing_coefficient: first.map(|k| residual.coeff(k).to_string()),
        }
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_failing_order {
            None => write!(f, "{}: residual zero through z^{}", self.equation, self.max_order),
            Some(k) => write!(
                f,
                "{}: residual nonzero at z^{} ({})",
                self.equation,
                k,
                self.failing_coefficient.as_deref().unwrap_or("?")
            ),
        }
    }
}

fn mono(c: i64, k: usize, m: Monomial) -> (Rational, usize, Monomial) {
    (rat(c), k, m)
}

fn sym(v: Var) -> Monomial {
    Monomial::var(v)
}

/// Polynomial in `z` with coefficients in the symbols, from `(coef, z^k, monomial)` terms.
fn zpoly(terms: &[(i64, usize, Monomial)], n: usize) -> Series {
    let mut s = Series::zero(n);
    for &(c, k, m) in terms {
        if k <= n {
            s.coeff_mut(k).add_term(m, rat(c));
        }
    }
    s
}

/// Residuals of the two-sided functional equations for series `R(u, v)`
/// and `T(u, v)` (symbolic `u`, `v`, `a`), with every denominator cleared:
///
/// T: `nL (1 - z u a) T(u,v) = (u-z)(1-zu) - z^2 v (1-zu)(1-zua) T(z,v)
///     + (u-z)(1-zu)(1-zua) [z R(zv,v) - z (1-a) R(zv,0)]`
///
/// R: `nM R(u,v) = (v-zu)(u-zv)(1 + z v T(z,v)) - z^2 v (v-zu) R(zv,v)
///     - z^2 u (u-zv) R(u,zu) - z u (1-a)(v-zu) R(u,0) + z^2 v (1-a)(v-zu) R(zv,0)`
pub fn two_sided_residuals(r: &Series, t: &Series, max_order: usize) -> [ResidualReport; 2] {
    let n = r.order().min(t.order());
    let (u, v, a) = (sym(Var::U), sym(Var::V), sym(Var::A));
    let one = Monomial::ONE;
    let uv = u.mul(&v);
    let ua = u.mul(&a);
    let va = v.mul(&a);
    let zero = || Series::constant(Poly::zero(), n);

    let t_zv = t.substitute_monomials(&[(Var::U, mono(1, 1, one))], n);
    let r_zvv = r.substitute_monomials(&[(Var::U, mono(1, 1, v))], n);
    let r_zv0 = r
        .eval_var(Var::V, &Rational::zero())
        .substitute_monomials(&[(Var::U, mono(1, 1, v))], n);
    let r_u0 = r.eval_var(Var::V, &Rational::zero());
    let r_uzu = r.substitute_monomials(&[(Var::V, mono(1, 1, u))], n);

    let u_minus_z = zpoly(&[(1, 0, u), (-1, 1, one)], n);
    let one_minus_zu = zpoly(&[(1, 0, one), (-1, 1, u)], n);
    let one_minus_zua = zpoly(&[(1, 0, one), (-1, 1, ua)], n);
    let v_minus_zu = zpoly(&[(1, 0, v), (-1, 1, u)], n);
    let u_minus_zv = zpoly(&[(1, 0, u), (-1, 1, v)], n);
    let kt = zpoly(&[(1, 1, uv), (-1, 3, uv)], n);
    let n_l = u_minus_z.mul(&one_minus_zu).sub(&kt);
    let n_m = v_minus_zu.mul(&u_minus_zv).sub(&kt);
    let one_minus_a = zpoly(&[(1, 0, one), (-1, 0, a)], n);

    let base_t = u_minus_z.mul(&one_minus_zu);
    let lhs_t = n_l.mul(&one_minus_zua).mul(t);
    let bracket = r_zvv.shift_up(1).sub(&one_minus_a.mul(&r_zv0).shift_up(1));
    let rhs_t = base_t
        .sub(&zpoly(&[(1, 2, v)], n).mul(&one_minus_zu).mul(&one_minus_zua).mul(&t_zv))
        .add(&base_t.mul(&one_minus_zua).mul(&bracket));
    let res_t = lhs_t.sub(&rhs_t);

    let lhs_r = n_m.mul(r);
    let rhs_r = v_minus_zu
        .mul(&u_minus_zv)
        .mul(&Series::one(n).add(&zpoly(&[(1, 1, v)], n).mul(&t_zv)))
        .sub(&zpoly(&[(1, 2, v)], n).mul(&v_minus_zu).mul(&r_zvv))
        .sub(&zpoly(&[(1, 2, u)], n).mul(&u_minus_zv).mul(&r_uzu))
        .sub(&zpoly(&[(1, 1, u), (-1, 1, ua)], n).mul(&v_minus_zu).mul(&r_u0))
        .add(&zpoly(&[(1, 2, v), (-1, 2, va)], n).mul(&v_minus_zu).mul(&r_zv0))
        .add(&zero());
    let res_r = lhs_r.sub(&rhs_r);

    [
        ResidualReport::from_residual(EquationId::TwoSidedT, &res_t, max_order),
        ResidualReport::from_residual(EquationId::TwoSidedR, &res_r, max_order),
    ]
}

/// Residuals of the three-sided equations for `R*(u, v, w)` and
/// `T*(u, v, w)`, denominators cleared:
///
/// T*: `nL*(u,v,w) T* = (u-zw)(w-zu)[1 + zw R*(zv,v,w) + zw(a-1) R*(zv,0,w)
///      + zu R*(zv,v,u) + zu(a-1) R*(zv,0,u)] - z^2 v w (w-zu) T*(zw,v,w)
///      - z^2 u v (u-zw) T*(u,v,zu)`
///
/// R*: `nL*(u,w,v) R* = (u-zv)(v-zu)[1 + z v T*(zw,v,w)] - z^2 v w (v-zu) R*(zv,v,w)
///      - z^2 u w (u-zv) R*(u,zu,w) + z u w (a-1)(v-zu) R*(u,0,w)
///      - z^2 v w (a-1)(v-zu) R*(zv,0,w)`
///
/// with `nL*(u,v,w) = (u-zw)(w-zu) - z u v w (1 - z^2)`.
pub fn three_sided_residuals(rs: &Series, ts: &Series, max_order: usize) -> [ResidualReport; 2] {
    let n = rs.order().min(ts.order());
    let (u, v, w, a) = (sym(Var::U), sym(Var::V), sym(Var::W), sym(Var::A));
    let one = Monomial::ONE;
    let zero = Rational::zero();
    let uvw = u.mul(&v).mul(&w);

    let r_v0 = rs.eval_var(Var::V, &zero);
    // R*(zv, v, w), R*(zv, 0, w), R*(zv, v, u), R*(zv, 0, u), R*(u, zu, w), R*(u, 0, w)
    let r_zv_v_w = rs.substitute_monomials(&[(Var::U, mono(1, 1, v))], n);
    let r_zv_0_w = r_v0.substitute_monomials(&[(Var::U, mono(1, 1, v))], n);
    let r_zv_v_u = rs.substitute_monomials(&[(Var::U, mono(1, 1, v)), (Var::W, mono(1, 0, u))], n);
    let r_zv_0_u = r_v0.substitute_monomials(&[(Var::U, mono(1, 1, v)), (Var::W, mono(1, 0, u))], n);
    let r_u_zu_w = rs.substitute_monomials(&[(Var::V, mono(1, 1, u))], n);
    let r_u_0_w = r_v0.clone();
    // T*(zw, v, w), T*(u, v, zu)
    let t_zw_v_w = ts.substitute_monomials(&[(Var::U, mono(1, 1, w))], n);
    let t_u_v_zu = ts.substitute_monomials(&[(Var::W, mono(1, 1, u))], n);

    let u_minus_zw = zpoly(&[(1, 0, u), (-1, 1, w)], n);
    let w_minus_zu = zpoly(&[(1, 0, w), (-1, 1, u)], n);
    let u_minus_zv = zpoly(&[(1, 0, u), (-1, 1, v)], n);
    let v_minus_zu = zpoly(&[(1, 0, v), (-1, 1, u)], n);
    let kt = zpoly(&[(1, 1, uvw), (-1, 3, uvw)], n);
    let a_minus_one = zpoly(&[(1, 0, a), (-1, 0, one)], n);

    let lhs_t = u_minus_zw.mul(&w_minus_zu).sub(&kt).mul(ts);
    let bracket = Series::one(n)
        .add(&zpoly(&[(1, 1, w)], n).mul(&r_zv_v_w))
        .add(&zpoly(&[(1, 1, w)], n).mul(&a_minus_one).mul(&r_zv_0_w))
        .add(&zpoly(&[(1, 1, u)], n).mul(&r_zv_v_u))
        .add(&zpoly(&[(1, 1, u)], n).mul(&a_minus_one).mul(&r_zv_0_u));
    let rhs_t = u_minus_zw
        .mul(&w_minus_zu)
        .mul(&bracket)
        .sub(&zpoly(&[(1, 2, v.mul(&w))], n).mul(&w_minus_zu).mul(&t_zw_v_w))
        .sub(&zpoly(&[(1, 2, u.mul(&v))], n).mul(&u_minus_zw).mul(&t_u_v_zu));
    let res_t = lhs_t.sub(&rhs_t);

    let lhs_r = u_minus_zv.mul(&v_minus_zu).sub(&kt).mul(rs);
    let rhs_r = u_minus_zv
        .mul(&v_minus_zu)
        .mul(&Series::one(n).add(&zpoly(&[(1, 1, v)], n).mul(&t_zw_v_w)))
        .sub(&zpoly(&[(1, 2, v.mul(&w))], n).mul(&v_minus_zu).mul(&r_zv_v_w))
        .sub(&zpoly(&[(1, 2, u.mul(&w))], n).mul(&u_minus_zv).mul(&r_u_zu_w))
        .add(&zpoly(&[(1, 1, u.mul(&w))], n).mul(&a_minus_one).mul(&v_minus_zu).mul(&r_u_0_w))
        .sub(&zpoly(&[(1, 2, v.mul(&w))], n).mul(&a_minus_one).mul(&v_minus_zu).mul(&r_zv_0_w));
    let res_r = lhs_r.sub(&rhs_r);

    [
        ResidualReport::from_residual(EquationId::ThreeSidedT, &res_t, max_order),
        ResidualReport::from_residual(EquationId::ThreeSidedR, &res_r, max_order),
    ]
}

/// Checks the functional equations of `sides`-sided walks to `order`.
/// Two-sided: the assembled solution with symbolic `u`, `v`, `a`.
/// Three-sided: series built from exhaustive enumeration.
pub fn verify_functional_equations(sides: Sides, order: usize) -> Result<Vec<ResidualReport>, ComputeError> {
    match sides {
        Sides::Two => {
            let ctx = KernelContext::new(order, Fugacity::Symbolic)?;
            let sol = ctx.full_solution(&Arg::Symbol, &Arg::Symbol)?;
            Ok(two_sided_residuals(&sol.r, &sol.t, order).to_vec())
        }
        Sides::Three => {
            let (rs, ts) = three_sided_series(order)?;
            Ok(three_sided_residuals(&rs, &ts, order).to_vec())
        }
        Sides::One => Err(ComputeError::Unsupported(
            "functional equations are defined for two- and three-sided walks".into(),
        )),
    }
}

/// `R*(u, v, w)` and `T*(u, v, w)` from enumeration: `u` marks the distance
/// to the north-east corner, `v` the height and `w` the distance to the west side.
pub fn three_sided_series(order: usize) -> Result<(Series, Series), LimitError> {
    let tab = enumerate_walks(WalkFamily::new(Sides::Three, Endpoint::Tail), order)?;
    Ok((tab.side_series(Side::Right), tab.side_series(Side::Top)))
}

/// `W(z; 1, 1; a)` for tails or `W(z; 1, 0; a)` for loops through `z^order`.
pub fn generating_function(endpoint: Endpoint, order: usize, a: Fugacity) -> Result<Series, AlgebraError> {
    let ctx = KernelContext::new(order, a)?;
    let v = match endpoint {
        Endpoint::Tail => Arg::int(1),
        Endpoint::Loop => Arg::int(0),
    };
    Ok(ctx.full_solution(&Arg::int(1), &v)?.w)
}
