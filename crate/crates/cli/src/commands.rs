use std::path::PathBuf;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use pruwalk::baselines::{baseline_height_profile, baseline_partition_at};
use pruwalk::io::{find_series, parse_rational, series_from_json, SeriesRecord};
use pruwalk::kernel::{
    generating_function, three_sided_residuals, three_sided_series, two_sided_residuals, Arg, Fugacity, KernelContext,
    ResidualReport,
};
use pruwalk::phase::heights::{transition_height_report, PrudentHeights};
use pruwalk::phase::ratio::{ratio_estimate, SingularityEstimate};
use pruwalk::phase::roots::{isolate_real_roots, RealRoot, UPoly};
use pruwalk::phase::thermo::{
    critical_point, dominant_singularity, phase_point, CriticalPolynomials, PhaseError, PhaseModel,
};
use pruwalk::prudent::{count_walks_dp, enumerate_walks, Endpoint, Sides, WalkFamily, DEFAULT_DP_LIMIT};
use pruwalk::{Monomial, Poly, Rational, Var};

use crate::output::{float, opt_float, resolve_format, warn, write_csv, write_json, Format, Meta};
use crate::{
    CliError, CountMethod, EndpointArg, EnumerateArgs, EstimateArgs, Family, HeightsArgs, OutputArgs, PhaseArgs,
    ReportArgs, RootPoly, RootsArgs, SeriesArgs, VerifyArgs,
};

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn rational_flag(flag: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| invalid(format!("--{flag}: {e}")))
}

fn model_flag(s: &str) -> Result<PhaseModel, CliError> {
    s.parse().map_err(|e: PhaseError| invalid(format!("--model: {e}")))
}

fn sides(f: Family) -> Sides {
    match f {
        Family::OneSided => Sides::One,
        Family::TwoSided => Sides::Two,
        Family::ThreeSided => Sides::Three,
    }
}

fn endpoint(e: EndpointArg) -> Endpoint {
    match e {
        EndpointArg::Tail => Endpoint::Tail,
        EndpointArg::Loop => Endpoint::Loop,
    }
}

/// Invalid requests (limits, unknown models, domain) exit 1; anything
/// else raised by the numerics exits 2.
fn phase_err(e: PhaseError) -> CliError {
    match e {
        PhaseError::Domain(_) | PhaseError::Unsupported(_) | PhaseError::Baseline(_) | PhaseError::Limit(_) => {
            invalid(e.to_string())
        }
        _ => CliError::Compute(e.to_string()),
    }
}

fn emit<T: Serialize>(
    command: &'static str,
    flags: &impl Serialize,
    output: &OutputArgs,
    default: Format,
    data: &[T],
    csv: impl FnOnce() -> (Vec<&'static str>, Vec<Vec<String>>),
) -> Result<(), CliError> {
    let out = output.out.as_ref();
    match resolve_format(output.format, out.map(PathBuf::as_path), default) {
        Format::Json => write_json(out, &Meta::new(command, flags), data),
        Format::Csv => {
            let (header, rows) = csv();
            write_csv(out, &header, &rows)
        }
    }
}

/// Coefficients of `a^0, a^1, ...` of a polynomial in `a` alone.
fn a_coefficients(p: &Poly) -> Vec<Rational> {
    (0..=p.degree(Var::A))
        .map(|k| p.coeff(&Monomial::var(Var::A).pow(k)))
        .collect()
}

#[derive(Serialize)]
struct CountRow {
    n: usize,
    /// Coefficient of `a^k` at index `k`, as exact decimal strings.
    coefficients: Vec<String>,
}

pub fn enumerate(args: &EnumerateArgs) -> Result<(), CliError> {
    let fam = WalkFamily::new(sides(args.family), endpoint(args.endpoint));
    let table = match args.method {
        CountMethod::Dfs => enumerate_walks(fam, args.max_n).map_err(|e| invalid(e.to_string()))?,
        CountMethod::Dp => {
            if args.family != Family::TwoSided {
                return Err(invalid("--method dp is available for --family 2sided only"));
            }
            count_walks_dp(fam.endpoint, args.max_n, DEFAULT_DP_LIMIT).map_err(|e| invalid(e.to_string()))?
        }
    };
    let rows: Vec<CountRow> = table
        .totals
        .iter()
        .enumerate()
        .map(|(n, p)| CountRow {
            n,
            coefficients: a_coefficients(p).iter().map(ToString::to_string).collect(),
        })
        .collect();
    emit("enumerate", args, &args.output, Format::Json, &rows, || {
        let mut out = Vec::new();
        for r in &rows {
            for (k, c) in r.coefficients.iter().enumerate() {
                out.push(vec![r.n.to_string(), k.to_string(), c.clone()]);
            }
        }
        (vec!["n", "surface_edges", "count"], out)
    })
}

fn arg_flag(flag: &str, s: &Option<String>) -> Result<Arg, CliError> {
    Ok(match s {
        None => Arg::Symbol,
        Some(s) => Arg::Value(rational_flag(flag, s)?),
    })
}

fn solve(order: usize, a: Fugacity, u: &Arg, v: &Arg) -> Result<pruwalk::kernel::Solution, CliError> {
    let ctx = KernelContext::new(order, a).map_err(|e| CliError::Compute(e.to_string()))?;
    ctx.full_solution(u, v).map_err(|e| CliError::Compute(e.to_string()))
}

pub fn series(args: &SeriesArgs) -> Result<(), CliError> {
    let a = match &args.a {
        None => Fugacity::Symbolic,
        Some(s) => Fugacity::Value(rational_flag("a", s)?),
    };
    let sol = solve(args.order, a, &arg_flag("u", &args.u)?, &arg_flag("v", &args.v)?)?;
    let records = vec![
        SeriesRecord::encode("R", &sol.r),
        SeriesRecord::encode("T", &sol.t),
        SeriesRecord::encode("W", &sol.w),
    ];
    emit("series", args, &args.output, Format::Json, &records, || {
        let mut out = Vec::new();
        for r in &records {
            for (n, p) in r.coeffs.iter().enumerate() {
                for (m, c) in p {
                    out.push(vec![r.name.clone(), n.to_string(), m.clone(), c.clone()]);
                }
            }
        }
        (vec!["series", "n", "monomial", "coefficient"], out)
    })
}

#[derive(Serialize)]
struct ResidualRow {
    equation: String,
    max_order: usize,
    passed: bool,
    first_failing_order: Option<usize>,
    failing_coefficient: Option<String>,
    message: String,
}

impl From<&ResidualReport> for ResidualRow {
    fn from(r: &ResidualReport) -> ResidualRow {
        ResidualRow {
            equation: r.equation.to_string(),
            max_order: r.max_order,
            passed: r.passed(),
            first_failing_order: r.first_failing_order,
            failing_coefficient: r.failing_coefficient.clone(),
            message: r.to_string(),
        }
    }
}

pub fn verify(args: &VerifyArgs) -> Result<(), CliError> {
    let reports: Vec<ResidualReport> = match args.family {
        Family::OneSided => return Err(invalid("--family: functional equations exist for 2sided and 3sided")),
        Family::TwoSided => {
            let (r, mut t, order) = match &args.input {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| invalid(format!("--input {}: {e}", path.display())))?;
                    let doc = series_from_json(&text).map_err(|e| invalid(format!("--input: {e}")))?;
                    let r = find_series(&doc, "R").map_err(|e| invalid(format!("--input: {e}")))?.clone();
                    let t = find_series(&doc, "T").map_err(|e| invalid(format!("--input: {e}")))?.clone();
                    let avail = r.order().min(t.order());
                    let order = args.order.unwrap_or(avail);
                    if order > avail {
                        return Err(invalid(format!("--order {order} exceeds the input's order {avail}")));
                    }
                    (r, t, order)
                }
                None => {
                    let order = args.order.ok_or_else(|| invalid("--order is required without --input"))?;
                    let sol = solve(order, Fugacity::Symbolic, &Arg::Symbol, &Arg::Symbol)?;
                    (sol.r, sol.t, order)
                }
            };
            if let Some(k) = args.inject {
                if k > t.order() {
                    return Err(invalid(format!("--inject {k} exceeds the series order {}", t.order())));
                }
                t.perturb(k, &Poly::one());
            }
            two_sided_residuals(&r, &t, order).to_vec()
        }
        Family::ThreeSided => {
            if args.input.is_some() || args.inject.is_some() {
                return Err(invalid("--input and --inject apply to --family 2sided"));
            }
            let order = args.order.ok_or_else(|| invalid("--order is required"))?;
            let (rs, ts) = three_sided_series(order).map_err(|e| invalid(e.to_string()))?;
            three_sided_residuals(&rs, &ts, order).to_vec()
        }
    };
    let rows: Vec<ResidualRow> = reports.iter().map(ResidualRow::from).collect();
    let out = args.output.out.as_ref();
    match args.output.format {
        Some(Format::Json) => write_json(out, &Meta::new("verify", args), &rows)?,
        Some(Format::Csv) => write_csv(
            out,
            &["equation", "max_order", "passed", "first_failing_order"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.equation.clone(),
                        r.max_order.to_string(),
                        r.passed.to_string(),
                        r.first_failing_order.map(|k| k.to_string()).unwrap_or_default(),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
        None => {
            let text: String = rows.iter().map(|r| format!("{}\n", r.message)).collect();
            match out {
                Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(p.display().to_string(), e))?,
                None => print!("{text}"),
            }
        }
    }
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(CliError::Check(r.to_string())),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct RootRow {
    polynomial: &'static str,
    interval: (f64, f64),
    #[serde(flatten)]
    root: RealRoot,
}

pub fn roots(args: &RootsArgs) -> Result<(), CliError> {
    let mut jobs: Vec<(&'static str, UPoly, f64, f64)> = Vec::new();
    let (lo, hi) = (args.lo, args.hi);
    let z_range = (lo.unwrap_or(0.0), hi.unwrap_or(1.0));
    let a_range = (lo.unwrap_or(1.0), hi.unwrap_or(2.0));
    let which: Vec<RootPoly> = match args.poly {
        Some(p) => vec![p],
        None if args.a.is_some() => vec![RootPoly::Tails, RootPoly::Loops, RootPoly::LoopsA, RootPoly::Adsorbed],
        None => vec![RootPoly::Tails, RootPoly::Loops, RootPoly::LoopsA],
    };
    for w in which {
        match w {
            RootPoly::Tails => jobs.push(("tails_desorbed", CriticalPolynomials::tails_desorbed(), z_range.0, z_range.1)),
            RootPoly::Loops => jobs.push(("loops_desorbed", CriticalPolynomials::loops_desorbed(), z_range.0, z_range.1)),
            RootPoly::LoopsA => {
                jobs.push(("loops_critical_a", CriticalPolynomials::loops_critical_a(), a_range.0, a_range.1))
            }
            RootPoly::Adsorbed => {
                let a = args
                    .a
                    .as_ref()
                    .ok_or_else(|| invalid("--poly adsorbed needs --a"))?;
                let a = rational_flag("a", a)?;
                jobs.push(("adsorbed", CriticalPolynomials::adsorbed(&a), z_range.0, z_range.1));
            }
        }
    }
    let mut rows = Vec::new();
    for (name, p, lo, hi) in jobs {
        let found = isolate_real_roots(&p, lo, hi).map_err(|e| invalid(e.to_string()))?;
        rows.extend(found.into_iter().map(|root| RootRow {
            polynomial: name,
            interval: (lo, hi),
            root,
        }));
    }
    emit("roots", args, &args.output, Format::Csv, &rows, || {
        (
            vec!["polynomial", "value", "lo", "hi", "multiplicity"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.polynomial.to_string(),
                        float(r.root.value),
                        r.root.lo.to_string(),
                        r.root.hi.to_string(),
                        r.root.multiplicity.to_string(),
                    ]
                })
                .collect(),
        )
    })
}

pub fn phase(args: &PhaseArgs) -> Result<(), CliError> {
    let model = model_flag(&args.model)?;
    if args.steps == 0 || !(args.alpha_min <= args.alpha_max) {
        return Err(invalid("need --steps >= 1 and --alpha-min <= --alpha-max"));
    }
    let h = (args.alpha_max - args.alpha_min) / args.steps as f64;
    let points = (0..=args.steps)
        .into_par_iter()
        .map(|i| phase_point(model, args.alpha_min + i as f64 * h))
        .collect::<Result<Vec<_>, _>>()
        .map_err(phase_err)?;
    if points.iter().any(|p| p.rho.is_none()) {
        let cp = critical_point(model).map_err(phase_err)?;
        warn(
            "critical_point_on_grid",
            json!({ "a_c": cp.a_c, "rho_below": cp.rho_below, "rho_above": cp.rho_above }),
        );
    }
    emit("phase", args, &args.output, Format::Csv, &points, || {
        (
            vec!["alpha", "f", "rho"],
            points
                .iter()
                .map(|p| vec![float(p.alpha), float(p.f), opt_float(p.rho)])
                .collect(),
        )
    })
}

#[derive(Serialize)]
struct EstimateRow {
    a: String,
    #[serde(flatten)]
    estimate: SingularityEstimate,
    closed_form: f64,
    relative_error: f64,
}

fn coefficients_at(model: PhaseModel, order: usize, a: &Rational) -> Result<Vec<f64>, CliError> {
    let exact: Vec<Rational> = match model {
        PhaseModel::PrudentTails | PhaseModel::PrudentLoops => {
            let e = if model == PhaseModel::PrudentTails {
                Endpoint::Tail
            } else {
                Endpoint::Loop
            };
            generating_function(e, order, Fugacity::Value(a.clone()))
                .map_err(|e| CliError::Compute(e.to_string()))?
                .coeffs()
                .iter()
                .map(|p| p.as_constant().expect("all catalytic variables are specialised"))
                .collect()
        }
        PhaseModel::Baseline(m) => baseline_partition_at(&m, order, a).map_err(|e| invalid(e.to_string()))?,
    };
    Ok(exact.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect())
}

pub fn estimate(args: &EstimateArgs) -> Result<(), CliError> {
    let model = model_flag(&args.model)?;
    let fugacities = args
        .a
        .iter()
        .map(|s| rational_flag("a", s))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = fugacities
        .par_iter()
        .zip(&args.a)
        .map(|(a, text)| {
            let c = coefficients_at(model, args.order, a)?;
            let est = ratio_estimate(&c).map_err(|e| invalid(e.to_string()))?;
            let af = a.to_f64().unwrap_or(f64::NAN);
            let conj = dominant_singularity(model, af).map_err(phase_err)?;
            Ok(EstimateRow {
                a: text.clone(),
                relative_error: est.z_c / conj - 1.0,
                estimate: est,
                closed_form: conj,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    for r in rows.iter().filter(|r| r.estimate.oscillating) {
        warn("oscillating_ratios", json!({ "a": r.a, "step": r.estimate.step }));
    }
    emit("estimate", args, &args.output, Format::Csv, &rows, || {
        (
            vec!["a", "z_c", "uncertainty", "closed_form", "relative_error", "step", "oscillating"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.a.clone(),
                        float(r.estimate.z_c),
                        float(r.estimate.uncertainty),
                        float(r.closed_form),
                        float(r.relative_error),
                        r.estimate.step.to_string(),
                        r.estimate.oscillating.to_string(),
                    ]
                })
                .collect(),
        )
    })
}

#[derive(Serialize)]
struct HeightRowOut {
    n: usize,
    mean_endpoint: f64,
    mean_max: f64,
}

pub fn heights(args: &HeightsArgs) -> Result<(), CliError> {
    let model = model_flag(&args.model)?;
    let rows: Vec<HeightRowOut> = match model {
        PhaseModel::Baseline(m) => baseline_height_profile(&m, args.max_n)
            .map_err(|e| invalid(e.to_string()))?
            .into_iter()
            .map(|p| HeightRowOut {
                n: p.n,
                mean_endpoint: p.mean_endpoint,
                mean_max: p.mean_max,
            })
            .collect(),
        PhaseModel::PrudentTails | PhaseModel::PrudentLoops => {
            let e = if model == PhaseModel::PrudentTails {
                Endpoint::Tail
            } else {
                Endpoint::Loop
            };
            let h = PrudentHeights::compute(e, args.max_n).map_err(phase_err)?;
            (0..h.n.len())
                .map(|i| HeightRowOut {
                    n: h.n[i],
                    mean_endpoint: h.mean_endpoint[i],
                    mean_max: h.mean_max[i],
                })
                .collect()
        }
    };
    emit("heights", args, &args.output, Format::Csv, &rows, || {
        (
            vec!["n", "mean_endpoint", "mean_max"],
            rows.iter()
                .map(|r| vec![r.n.to_string(), float(r.mean_endpoint), float(r.mean_max)])
                .collect(),
        )
    })
}

pub fn report(args: &ReportArgs) -> Result<(), CliError> {
    let rows = transition_height_report(args.baseline_n, args.prudent_n).map_err(phase_err)?;
    emit("report", args, &args.output, Format::Csv, &rows, || {
        (
            vec!["model", "n_max", "gamma", "height_class", "order", "jump", "consistent"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.model.clone(),
                        r.n_max.to_string(),
                        opt_float(r.gamma),
                        json!(r.height_class).as_str().unwrap_or_default().to_string(),
                        json!(r.order).as_str().unwrap_or_default().to_string(),
                        float(r.jump),
                        r.consistent.map(|c| c.to_string()).unwrap_or_default(),
                    ]
                })
                .collect(),
        )
    })
}
