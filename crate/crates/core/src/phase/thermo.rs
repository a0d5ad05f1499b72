//! Free energy `f(alpha) = -log z_c(a)` and surface density
//! `rho = df/d(alpha)` for the prudent models and the directed baselines.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use super::roots::{eval_f64, from_ints, isolate_exact, isolate_real_roots, RootError, UPoly};
use crate::baselines::{DirectedModel, ModelName, Weighting};
use crate::poly::{rat, Rational};
use crate::prudent::Endpoint;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhaseError {
    #[error("fugacity must be positive, got {0}")]
    Domain(f64),
    #[error("a = {a} is within {tol:e} of the critical fugacity {a_c}; ask for a one-sided value")]
    NearCritical { a: f64, a_c: f64, tol: f64 },
    #[error("{0}")]
    Unsupported(String),
    #[error("expected exactly one adsorbed root in (0, {bound}], found {found}")]
    RootSelection { bound: f64, found: usize },
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Baseline(#[from] crate::baselines::BaselineError),
    #[error(transparent)]
    Limit(#[from] crate::error::LimitError),
}

/// Models with a free energy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PhaseModel {
    PrudentTails,
    PrudentLoops,
    Baseline(DirectedModel),
}

impl PhaseModel {
    pub const PRUDENT: [PhaseModel; 2] = [PhaseModel::PrudentTails, PhaseModel::PrudentLoops];
}

impl fmt::Display for PhaseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseModel::PrudentTails => f.write_str("prudent tails"),
            PhaseModel::PrudentLoops => f.write_str("prudent loops"),
            PhaseModel::Baseline(m) => m.fmt(f),
        }
    }
}

impl FromStr for PhaseModel {
    type Err = PhaseError;

    /// `tails`, `loops`, or `<baseline>[_loops|_tails][_vertex|_edge]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tails" | "prudent_tails" => return Ok(PhaseModel::PrudentTails),
            "loops" | "prudent_loops" => return Ok(PhaseModel::PrudentLoops),
            _ => {}
        }
        let mut rest = s;
        let mut weighting = None;
        let mut endpoint = Endpoint::Tail;
        for (suffix, w) in [("_vertex", Weighting::Vertex), ("_edge", Weighting::Edge)] {
            if let Some(r) = rest.strip_suffix(suffix) {
                rest = r;
                weighting = Some(w);
            }
        }
        for (suffix, e) in [("_loops", Endpoint::Loop), ("_tails", Endpoint::Tail)] {
            if let Some(r) = rest.strip_suffix(suffix) {
                rest = r;
                endpoint = e;
            }
        }
        let name: ModelName = rest
            .parse()
            .map_err(|_| PhaseError::Unsupported(format!("unknown model {s:?}")))?;
        let model = match weighting {
            Some(w) => DirectedModel::new(name, w, endpoint).map_err(|e| PhaseError::Unsupported(e.to_string()))?,
            None => DirectedModel::natural(name, endpoint),
        };
        Ok(PhaseModel::Baseline(model))
    }
}

/// The exact polynomials whose roots give the singularities in closed form.
pub struct CriticalPolynomials;

impl CriticalPolynomials {
    /// `1 - 2z - 2z^2 + 2z^3`
    pub fn tails_desorbed() -> UPoly {
        from_ints(&[1, -2, -2, 2])
    }

    /// `1 - 3z - z^2 + 6z^3 - 7z^7 - z^8 + 3z^9 + z^10`
    pub fn loops_desorbed() -> UPoly {
        from_ints(&[1, -3, -1, 6, 0, 0, 0, -7, -1, 3, 1])
    }

    /// `1 - 7a + 45a^2 - 143a^3 + 277a^4 - 346a^5 + 285a^6 - 155a^7 + 54a^8 - 11a^9 + a^10`
    pub fn loops_critical_a() -> UPoly {
        from_ints(&[1, -7, 45, -143, 277, -346, 285, -155, 54, -11, 1])
    }

    /// `1 - a - a(1 - a) z + a z^2 + a(1 - a) z^3` as a polynomial in `z`.
    pub fn adsorbed(a: &Rational) -> UPoly {
        let one = rat(1);
        let b = a * (&one - a);
        vec![&one - a, -b.clone(), a.clone(), b]
    }

    /// The same polynomial as one in `a` at fixed `z`:
    /// `1 + a(-1 - z + z^2 + z^3) + a^2 (z - z^3)`.
    pub fn adsorbed_in_a(z: &Rational) -> UPoly {
        let one = rat(1);
        let z2 = z * z;
        let z3 = &z2 * z;
        vec![one.clone(), -&one - z + &z2 + &z3, z - &z3]
    }
}

fn adsorbed_f64(z: f64, a: f64) -> f64 {
    1.0 - a - a * (1.0 - a) * z + a * z * z + a * (1.0 - a) * z * z * z
}

/// `dF/da` and `dF/dz` of the adsorbed polynomial.
fn adsorbed_grad(z: f64, a: f64) -> (f64, f64) {
    let fa = -1.0 - (1.0 - 2.0 * a) * z + z * z + (1.0 - 2.0 * a) * z * z * z;
    let fz = -a * (1.0 - a) + 2.0 * a * z + 3.0 * a * (1.0 - a) * z * z;
    (fa, fz)
}

fn smallest_root(p: &UPoly, lo: f64, hi: f64) -> f64 {
    isolate_real_roots(p, lo, hi).expect("nonzero polynomial")[0].value
}

/// `z_1^t`: the root of `1 - 2z - 2z^2 + 2z^3` in `(0, 1)`.
pub fn z1_tails() -> f64 {
    static Z: OnceLock<f64> = OnceLock::new();
    *Z.get_or_init(|| smallest_root(&CriticalPolynomials::tails_desorbed(), 0.0, 1.0))
}

/// `z_1^l`: the smallest root of the degree-10 loop polynomial in `(0, 1)`.
pub fn z1_loops() -> f64 {
    static Z: OnceLock<f64> = OnceLock::new();
    *Z.get_or_init(|| smallest_root(&CriticalPolynomials::loops_desorbed(), 0.0, 1.0))
}

/// The adsorbed-phase singularity: the smallest root of the adsorbed
/// polynomial in `(0, bound]`, which must be unique there.
pub fn adsorbed_root(a: f64, bound: f64) -> Result<f64, PhaseError> {
    let ar = Rational::from_float(a).ok_or(PhaseError::Domain(a))?;
    let p = CriticalPolynomials::adsorbed(&ar);
    let hi = Rational::from_float(bound).ok_or(PhaseError::Domain(bound))?;
    let mut roots = isolate_exact(&p, &rat(0), &hi)?;
    // the interval is closed at the bound
    if super::roots::eval(&p, &hi) == rat(0) {
        roots.push(super::roots::RealRoot {
            value: bound,
            lo: hi.clone(),
            hi,
            multiplicity: 1,
        });
    }
    match roots.len() {
        1 => Ok(roots[0].value),
        found => Err(PhaseError::RootSelection { bound, found }),
    }
}

/// Critical fugacity of the prudent loops: the root of the degree-10
/// polynomial in `(1, 2)` at which the adsorbed root reaches `z_1^l`.
pub fn a_c_loops() -> f64 {
    static A: OnceLock<f64> = OnceLock::new();
    *A.get_or_init(|| {
        let z1 = z1_loops();
        let roots = isolate_real_roots(&CriticalPolynomials::loops_critical_a(), 1.0, 2.0).expect("nonzero");
        roots
            .iter()
            .map(|r| r.value)
            .min_by(|x, y| {
                adsorbed_f64(z1, *x)
                    .abs()
                    .partial_cmp(&adsorbed_f64(z1, *y).abs())
                    .expect("finite")
            })
            .expect("a root in (1, 2)")
    })
}

/// The crossing of the adsorbed branch with a desorbed singularity `z1`,
/// from the quadratic in `a`: the root above 1 at which the adsorbed root
/// decreases with `a` (the adsorbed branch takes over).
pub fn crossing_fugacity(z1: f64) -> f64 {
    let (c0, c1, c2) = (1.0, -1.0 - z1 + z1 * z1 + z1.powi(3), z1 - z1.powi(3));
    let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    let roots = [(-c1 - disc) / (2.0 * c2), (-c1 + disc) / (2.0 * c2)];
    roots
        .into_iter()
        .filter(|&a| a > 1.0)
        .find(|&a| {
            let (fa, fz) = adsorbed_grad(z1, a);
            -fa / fz < 0.0
        })
        .expect("an adsorbing crossing above a = 1")
}

/// Critical fugacity, or `None` when there is no transition.
pub fn critical_fugacity(model: PhaseModel) -> Result<Option<f64>, PhaseError> {
    match model {
        PhaseModel::PrudentTails => Ok(Some(2.0)),
        PhaseModel::PrudentLoops => Ok(Some(a_c_loops())),
        PhaseModel::Baseline(m) => crate::baselines::baseline_critical_fugacity(&m)
            .map(|v| v.map(|v| v.value))
            .map_err(|e| PhaseError::Unsupported(e.to_string())),
    }
}

fn baseline_zc(m: &DirectedModel, a: f64, a_c: Option<f64>) -> Result<f64, PhaseError> {
    let adsorbed = a_c.is_some_and(|c| a > c);
    Ok(match (m.name, m.weighting) {
        (ModelName::NeDirected, _) => match m.endpoint {
            Endpoint::Tail => 0.5f64.min(1.0 / a),
            Endpoint::Loop => 1.0 / a,
        },
        (ModelName::Dyck, _) => {
            if adsorbed {
                (a - 1.0).sqrt() / a
            } else {
                0.5
            }
        }
        (ModelName::Motzkin, Weighting::Edge) => {
            if adsorbed {
                (a - 1.0) / (a * a - a + 1.0)
            } else {
                1.0 / 3.0
            }
        }
        (ModelName::Motzkin, Weighting::Vertex) => {
            if adsorbed {
                let c = 1.0 - 2.0 / a;
                (-(1.0 + c) + ((1.0 + c).powi(2) - 4.0 * (c * c - 1.0)).sqrt()) / 4.0
            } else {
                1.0 / 3.0
            }
        }
        (ModelName::PartiallyDirected, Weighting::Edge) => {
            let z1 = std::f64::consts::SQRT_2 - 1.0;
            if adsorbed {
                adsorbed_root(a, z1)?
            } else {
                z1
            }
        }
        (ModelName::PartiallyDirected, Weighting::Vertex) => {
            return Err(PhaseError::Unsupported(
                "free energy of vertex-weighted partially-directed walks".into(),
            ))
        }
    })
}

/// The dominant singularity `z_c(a)` of the model's generating function.
pub fn dominant_singularity(model: PhaseModel, a: f64) -> Result<f64, PhaseError> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(PhaseError::Domain(a));
    }
    let a_c = critical_fugacity(model)?;
    match model {
        PhaseModel::PrudentTails | PhaseModel::PrudentLoops => {
            let z1 = if model == PhaseModel::PrudentTails {
                z1_tails()
            } else {
                z1_loops()
            };
            if a <= a_c.expect("prudent models adsorb") {
                Ok(z1)
            } else {
                adsorbed_root(a, z1)
            }
        }
        PhaseModel::Baseline(m) => baseline_zc(&m, a, a_c),
    }
}

/// `f = -log z_c(a)`.
pub fn free_energy(model: PhaseModel, a: f64) -> Result<f64, PhaseError> {
    Ok(-dominant_singularity(model, a)?.ln())
}

/// Which side of the critical point a one-sided density refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Approach {
    Below,
    Above,
}

const NEAR_CRITICAL: f64 = 1e-9;

/// `rho = d f / d alpha`. Zero in the desorbed phase of the prudent models;
/// in the adsorbed phase `-(a / z) dz/da` with `dz/da = -F_a / F_z` from the
/// adsorbed polynomial `F`. Baselines use closed forms where available and
/// a central difference in `alpha` otherwise.
pub fn surface_density(model: PhaseModel, a: f64) -> Result<f64, PhaseError> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(PhaseError::Domain(a));
    }
    let a_c = critical_fugacity(model)?;
    if let Some(c) = a_c {
        if (a - c).abs() < NEAR_CRITICAL {
            return Err(PhaseError::NearCritical {
                a,
                a_c: c,
                tol: NEAR_CRITICAL,
            });
        }
    }
    density_in_phase(model, a, a_c.is_some_and(|c| a > c))
}

fn density_in_phase(model: PhaseModel, a: f64, adsorbed: bool) -> Result<f64, PhaseError> {
    match model {
        PhaseModel::PrudentTails | PhaseModel::PrudentLoops => {
            if !adsorbed {
                return Ok(0.0);
            }
            let z1 = if model == PhaseModel::PrudentTails {
                z1_tails()
            } else {
                z1_loops()
            };
            let z = adsorbed_root(a, z1)?;
            Ok(implicit_density(z, a))
        }
        PhaseModel::Baseline(m) => match (m.name, m.endpoint) {
            (ModelName::Dyck, _) if adsorbed => Ok((a - 2.0) / (2.0 * (a - 1.0))),
            (ModelName::NeDirected, Endpoint::Loop) => Ok(1.0),
            (ModelName::NeDirected, Endpoint::Tail) => Ok(if adsorbed { 1.0 } else { 0.0 }),
            _ if !adsorbed => Ok(0.0),
            _ => density_difference(model, a, 1e-5),
        },
    }
}

/// `-(a / z) dz/da` on the adsorbed branch `F(z, a) = 0`.
pub fn implicit_density(z: f64, a: f64) -> f64 {
    let (fa, fz) = adsorbed_grad(z, a);
    -(a / z) * (-fa / fz)
}

/// Central difference of `f` in `alpha = log a` with step `h`.
pub fn density_difference(model: PhaseModel, a: f64, h: f64) -> Result<f64, PhaseError> {
    let up = free_energy(model, a * h.exp())?;
    let down = free_energy(model, a * (-h).exp())?;
    Ok((up - down) / (2.0 * h))
}

/// Limit of the density as `a` approaches `a_c` from one side.
pub fn one_sided_density(model: PhaseModel, side: Approach) -> Result<f64, PhaseError> {
    let a_c = critical_fugacity(model)?
        .ok_or_else(|| PhaseError::Unsupported(format!("{model} has no transition")))?;
    match (model, side) {
        (_, Approach::Below) => density_in_phase(model, a_c, false),
        (PhaseModel::PrudentTails, Approach::Above) => Ok(implicit_density(z1_tails(), a_c)),
        (PhaseModel::PrudentLoops, Approach::Above) => Ok(implicit_density(z1_loops(), a_c)),
        (PhaseModel::Baseline(_), Approach::Above) => {
            // Extrapolate from two points just inside the adsorbed phase.
            let (d1, d2) = (1e-4, 2e-4);
            let r1 = density_in_phase(model, a_c * (1.0 + d1), true)?;
            let r2 = density_in_phase(model, a_c * (1.0 + d2), true)?;
            Ok(2.0 * r1 - r2)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransitionOrder {
    None,
    FirstOrder,
    SecondOrder,
}

/// Densities below this jump are treated as continuous.
pub const JUMP_THRESHOLD: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub model: String,
    pub a_c: Option<f64>,
    pub rho_below: Option<f64>,
    pub rho_above: Option<f64>,
    pub jump: f64,
    pub order: TransitionOrder,
}

pub fn critical_point(model: PhaseModel) -> Result<CriticalPoint, PhaseError> {
    let Some(a_c) = critical_fugacity(model)? else {
        return Ok(CriticalPoint {
            model: model.to_string(),
            a_c: None,
            rho_below: None,
            rho_above: None,
            jump: 0.0,
            order: TransitionOrder::None,
        });
    };
    let below = one_sided_density(model, Approach::Below)?;
    let above = one_sided_density(model, Approach::Above)?;
    let jump = above - below;
    Ok(CriticalPoint {
        model: model.to_string(),
        a_c: Some(a_c),
        rho_below: Some(below),
        rho_above: Some(above),
        jump,
        order: if jump > JUMP_THRESHOLD {
            TransitionOrder::FirstOrder
        } else {
            TransitionOrder::SecondOrder
        },
    })
}

/// One row of an `alpha` sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhasePoint {
    pub alpha: f64,
    pub a: f64,
    pub f: f64,
    /// `None` exactly at the critical point, where only one-sided values exist.
    pub rho: Option<f64>,
    pub adsorbed: bool,
}

pub fn phase_point(model: PhaseModel, alpha: f64) -> Result<PhasePoint, PhaseError> {
    let a = alpha.exp();
    let a_c = critical_fugacity(model)?;
    let rho = match surface_density(model, a) {
        Ok(r) => Some(r),
        Err(PhaseError::NearCritical { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(PhasePoint {
        alpha,
        a,
        f: free_energy(model, a)?,
        rho,
        adsorbed: a_c.is_some_and(|c| a > c),
    })
}

/// `|F(z, a)|` for the adsorbed polynomial, in floating point.
pub fn adsorbed_residual(z: f64, a: f64) -> f64 {
    adsorbed_f64(z, a).abs()
}

/// `p(x)` in floating point, for reporting.
pub fn poly_value(p: &UPoly, x: f64) -> f64 {
    eval_f64(p, x)
}
