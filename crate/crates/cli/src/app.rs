//! Argument parsing, config-file merging and the subcommand implementations.

use crate::checks;
use crate::output::{fmt17, to_csv, to_json};
use crate::table;
use clap::{Args, Parser, Subcommand};
use liekernel::domains::{parse_group, EvolutionDomain, GroupFamily, GroupModel};
use liekernel::error::Error;
use liekernel::kernel::{
    self, KernelEngine, KernelOptions, KernelRequest, KernelValue, Route, TimeParameter,
};
use liekernel::lattice::RadialPoint;
use liekernel::linalg::{self, C64};
use liekernel::nalgebra::DMatrix;
use liekernel::rootsys::{build_root_system, RootSystem};
use liekernel::volumes;
use liekernel::weyl::generate_weyl_group;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "liekernel",
    version,
    about = "Evolution kernels on classical Lie group manifolds"
)]
pub struct Cli {
    /// JSON file with default values for any flag (flags on the command line win).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// json (default) or csv.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Worker threads for grid and suite evaluation.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root system data (simple and positive roots, Cartan matrix, ρ, Λ).
    Roots(SystemArgs),
    /// Weyl group order and, optionally, its elements.
    Weyl(WeylArgs),
    /// V_G, V_T and V_G/T of a compact group.
    Volume(SystemArgs),
    /// Evaluate kernels on a grid of radial points.
    Kernel(KernelArgs),
    /// Enumerate evolution domains or classify a group element.
    #[command(subcommand)]
    Domains(DomainsCommand),
    /// Per-domain radial shape and winding sublattice table.
    Table(GroupArgs),
    /// Run the invariant suite.
    Check(CheckArgs),
}

#[derive(Subcommand, Debug)]
enum DomainsCommand {
    Enumerate(GroupArgs),
    Classify(ClassifyArgs),
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemArgs {
    /// Root system ("A2", "C3") or group ("SU(3)", "Sp6R").
    system: Option<String>,
    /// Extra overall factor on the roots.
    #[arg(long)]
    scale: Option<f64>,
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeylArgs {
    system: Option<String>,
    /// List every element as a matrix with its parity.
    #[arg(long)]
    #[serde(default)]
    elements: bool,
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupArgs {
    group: Option<String>,
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassifyArgs {
    group: Option<String>,
    /// JSON file: row-major [re, im] pairs, nested by row or flat.
    matrix: Option<PathBuf>,
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KernelArgs {
    group: Option<String>,
    /// Evolution domain label (required for non-compact groups).
    #[arg(long)]
    domain: Option<String>,
    /// Heat mode with this τ > 0.
    #[arg(long)]
    heat: Option<f64>,
    /// Real time t.
    #[arg(long)]
    t: Option<f64>,
    /// Regularization ε ≥ 0 for real time (t − iε).
    #[arg(long)]
    eps: Option<f64>,
    /// Explicit points: "x1,x2;y1,y2".
    #[arg(long)]
    phi: Option<String>,
    /// Per-coordinate ranges "a:b:n", comma separated; Cartesian product.
    #[arg(long)]
    grid: Option<String>,
    /// Same as --grid; reads naturally for imaginary coordinates.
    #[arg(long)]
    theta_grid: Option<String>,
    /// pathsum (default), spectral or both.
    #[arg(long)]
    route: Option<String>,
    /// Relative truncation tolerance for lattice images.
    #[arg(long)]
    tol: Option<f64>,
    /// Spectral level cutoff L.
    #[arg(long)]
    level_cutoff: Option<usize>,
    /// Extrapolate to wall points instead of flagging them.
    #[arg(long)]
    #[serde(default)]
    wall_limit: bool,
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CheckArgs {
    /// Comma-separated name prefixes to run.
    #[arg(long)]
    only: Option<String>,
    /// Print the check names and exit.
    #[arg(long)]
    #[serde(default)]
    list: bool,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    pub extra: Option<String>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
            extra: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_)
            | Error::Argument(_)
            | Error::NotInGroup(_)
            | Error::Unsupported(_)
            | Error::Divergent(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        let extra = match &e {
            Error::Ambiguous { eigenvalues, .. } => Some(to_json(&json!({
                "error": "ambiguous",
                "eigenvalues": eigenvalues.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()
            }))),
            _ => None,
        };
        Failure {
            code,
            message: e.to_string(),
            extra,
        }
    }
}

type Outcome = Result<(String, i32), Failure>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

struct Globals {
    format: Format,
    workers: Option<usize>,
}

/// Overlay command-line values (non-null, non-false) on the config values.
fn merge<T: Serialize + DeserializeOwned>(
    cli: T,
    config: &Map<String, Value>,
    section: &str,
) -> Result<T, Failure> {
    let mut base = config.clone();
    let Value::Object(given) =
        serde_json::to_value(&cli).map_err(|e| Failure::usage(e.to_string()))?
    else {
        return Err(Failure::usage("internal: arguments are not an object"));
    };
    for (k, v) in given {
        if !v.is_null() && v != Value::Bool(false) {
            base.insert(k, v);
        }
    }
    serde_json::from_value(Value::Object(base))
        .map_err(|e| Failure::usage(format!("config for '{section}': {e}")))
}

fn read_config(path: &Option<PathBuf>) -> Result<Map<String, Value>, Failure> {
    let Some(p) = path else { return Ok(Map::new()) };
    let text = std::fs::read_to_string(p)
        .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", p.display())))?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(Failure::usage("config file must hold a JSON object")),
        Err(e) => Err(Failure::usage(format!("config {}: {e}", p.display()))),
    }
}

fn required<T>(v: Option<T>, what: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::usage(format!("missing {what}")))
}

/// "A2"-style names directly, anything else through the group parser.
pub fn resolve_system(name: &str) -> liekernel::error::Result<RootSystem> {
    let s = name.trim();
    let mut chars = s.chars();
    if let (Some(c), rest) = (chars.next(), chars.as_str()) {
        if let (Ok(f), Ok(r)) = (c.to_string().parse(), rest.parse::<usize>()) {
            return build_root_system(f, r);
        }
    }
    parse_group(s)?.root_system()
}

fn system_with_scale(name: &str, scale: Option<f64>) -> Result<RootSystem, Failure> {
    let rs = resolve_system(name)?;
    Ok(match scale {
        Some(s) => rs.rescale(s)?,
        None => rs,
    })
}

fn cmd_roots(a: SystemArgs, g: &Globals) -> Outcome {
    let rs = system_with_scale(&required(a.system, "root system")?, a.scale)?;
    if g.format == Format::Csv {
        let rows: Vec<Vec<String>> = rs
            .positive_roots
            .iter()
            .zip(&rs.positive_coefficients)
            .map(|(r, c)| {
                vec![
                    r.iter().map(|x| fmt17(*x)).collect::<Vec<_>>().join(";"),
                    c.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(";"),
                    fmt17(linalg::norm2(r)),
                ]
            })
            .collect();
        return Ok((
            to_csv(&["root", "simple_coefficients", "length_squared"], &rows),
            EXIT_OK,
        ));
    }
    let report = json!({
        "system": rs.name(),
        "family": rs.family.to_string(),
        "rank": rs.rank,
        "dim": rs.dim,
        "num_positive": rs.num_positive,
        "simple_roots": rs.simple_roots,
        "simple_coroots": rs.simple_coroots(),
        "positive_roots": rs.positive_roots,
        "positive_coefficients": rs.positive_coefficients,
        "highest_root": rs.highest_root,
        "fundamental_weights": rs.fundamental_weights,
        "cartan_matrix": rs.cartan_matrix(),
        "rho": rs.rho,
        "lambda": rs.lambda,
        "rho2_over_lambda": rs.rho2() / rs.lambda,
        "root_scale": rs.scale,
    });
    Ok((to_json(&report), EXIT_OK))
}

fn cmd_weyl(a: WeylArgs, g: &Globals) -> Outcome {
    let rs = resolve_system(&required(a.system, "root system")?)?;
    let group = generate_weyl_group(&rs)?;
    let elements: Vec<Value> = group
        .elements
        .iter()
        .map(|e| {
            let m: Vec<Vec<f64>> = (0..rs.rank)
                .map(|i| (0..rs.rank).map(|j| e.matrix[(i, j)]).collect())
                .collect();
            json!({"matrix": m, "parity": e.parity})
        })
        .collect();
    if g.format == Format::Csv {
        let rows: Vec<Vec<String>> = group
            .elements
            .iter()
            .enumerate()
            .map(|(k, e)| {
                vec![
                    k.to_string(),
                    e.parity.to_string(),
                    e.matrix
                        .iter()
                        .map(|x| fmt17(*x))
                        .collect::<Vec<_>>()
                        .join(";"),
                ]
            })
            .collect();
        return Ok((
            to_csv(&["index", "parity", "matrix_column_major"], &rows),
            EXIT_OK,
        ));
    }
    let mut report = json!({"system": rs.name(), "order": group.order()});
    if a.elements {
        report["elements"] = Value::Array(elements);
    }
    Ok((to_json(&report), EXIT_OK))
}

fn cmd_volume(a: SystemArgs, g: &Globals) -> Outcome {
    let rs = system_with_scale(&required(a.system, "root system")?, a.scale)?;
    let r = volumes::volume_report(&rs);
    if g.format == Format::Csv {
        let rows = vec![vec![
            r.group.clone(),
            fmt17(r.v_g),
            fmt17(r.v_t),
            fmt17(r.v_gmodt),
            fmt17(r.lambda),
            fmt17(r.root_scale),
        ]];
        return Ok((
            to_csv(
                &["group", "V_G", "V_T", "V_GmodT", "lambda", "root_scale"],
                &rows,
            ),
            EXIT_OK,
        ));
    }
    Ok((to_json(&r), EXIT_OK))
}

fn parse_range(spec: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
    let bad = || Failure::usage(format!("grid range '{spec}' must be a:b:n"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].parse().map_err(|_| bad())?;
    let b: f64 = parts[1].parse().map_err(|_| bad())?;
    let n: usize = parts[2].parse().map_err(|_| bad())?;
    if !a.is_finite() || !b.is_finite() {
        return Err(Failure::usage("grid bounds must be finite"));
    }
    Ok(match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
            .collect(),
    })
}

fn parse_grid(spec: &str, rank: usize) -> Result<Vec<Vec<f64>>, Failure> {
    let axes: Vec<Vec<f64>> = spec.split(',').map(parse_range).collect::<Result<_, _>>()?;
    if axes.len() != rank {
        return Err(Failure::usage(format!(
            "grid has {} ranges but the rank is {rank}",
            axes.len()
        )));
    }
    let mut points = vec![Vec::new()];
    for axis in &axes {
        points = points
            .iter()
            .flat_map(|p: &Vec<f64>| {
                axis.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(*x);
                    q
                })
            })
            .collect();
    }
    Ok(points)
}

fn parse_points(spec: &str, rank: usize) -> Result<Vec<Vec<f64>>, Failure> {
    spec.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|p| {
            let v: Vec<f64> = p
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<f64>()
                        .map_err(|_| Failure::usage(format!("bad coordinate '{x}'")))
                })
                .collect::<Result<_, _>>()?;
            if v.len() != rank {
                return Err(Failure::usage(format!(
                    "point '{p}' has {} coordinates, rank is {rank}",
                    v.len()
                )));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Failure::usage("coordinates must be finite"));
            }
            Ok(v)
        })
        .collect()
}

/// Interior points along the ρ ray of the alcove.
fn default_grid(rs: &RootSystem) -> Vec<Vec<f64>> {
    let smax = 2.0 * std::f64::consts::PI / linalg::dot(&rs.highest_root, &rs.rho);
    (0..16)
        .map(|k| linalg::scale(&rs.rho, smax * (k as f64 + 0.5) / 16.0))
        .collect()
}

#[derive(Serialize)]
struct KernelRecord {
    phi: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    signature: Option<String>,
    route: &'static str,
    re: Option<f64>,
    im: Option<f64>,
    convergence_tag: Option<&'static str>,
    terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_im: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    flag: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    warnings: Vec<String>,
}

struct KernelJob {
    engine: KernelEngine,
    family: GroupFamily,
    domain: Option<EvolutionDomain>,
    time: TimeParameter,
    options: KernelOptions,
    routes: Vec<Route>,
}

impl KernelJob {
    fn closed_form(&self, point: &RadialPoint, route: Route, value: &KernelValue) -> Option<C64> {
        let su2_like = matches!(
            self.family,
            GroupFamily::SU { p: 2, q: 0 } | GroupFamily::SU { p: 1, q: 1 }
        );
        if !su2_like {
            return None;
        }
        let x = point.values[0];
        match (&self.domain, route) {
            (Some(d), _) if d.label == "D0" => Some(kernel::su11_d0_closed(x, &self.time)),
            (_, Route::Pathsum) => Some(kernel::su2_pathsum_closed(x, &self.time, 40)),
            (_, Route::Spectral) => Some(kernel::su2_spectral_closed(
                x,
                &self.time,
                value.terms as u32,
            )),
        }
    }

    fn point(&self, coords: &[f64]) -> Result<RadialPoint, Failure> {
        Ok(match &self.domain {
            Some(d) => RadialPoint::new(coords.to_vec(), d.signature.clone())?,
            None => RadialPoint::real(coords.to_vec()),
        })
    }

    fn evaluate(&self, coords: &[f64]) -> Result<Vec<KernelRecord>, Failure> {
        let point = self.point(coords)?;
        let req = KernelRequest {
            domain: self.domain.clone(),
            point: point.clone(),
            time: self.time,
            options: self.options.clone(),
        };
        let mut values = Vec::new();
        for &route in &self.routes {
            match req.evaluate(&self.engine, route) {
                Ok(v) => values.push((route, Some(v), None)),
                Err(Error::Singular(msg)) => {
                    values.push((route, None, Some(format!("wall: {msg}"))))
                }
                Err(e) => return Err(e.into()),
            }
        }
        let discrepancy = match values.as_slice() {
            [(_, Some(a), _), (_, Some(b), _)] => {
                Some((a.value - b.value).norm() / b.value.norm().max(f64::MIN_POSITIVE))
            }
            _ => None,
        };
        Ok(values
            .into_iter()
            .map(|(route, v, flag)| {
                let closed = v
                    .as_ref()
                    .and_then(|val| self.closed_form(&point, route, val));
                KernelRecord {
                    phi: coords.to_vec(),
                    signature: self.domain.as_ref().map(|d| d.mask_string()),
                    route: route.as_str(),
                    re: v.as_ref().map(|x| x.value.re),
                    im: v.as_ref().map(|x| x.value.im),
                    convergence_tag: v.as_ref().map(|x| x.convergence.as_str()),
                    terms: v.as_ref().map(|x| x.terms),
                    discrepancy,
                    closed_re: closed.map(|c| c.re),
                    closed_im: closed.map(|c| c.im),
                    flag,
                    warnings: v.map(|x| x.warnings).unwrap_or_default(),
                }
            })
            .collect())
    }
}

fn cmd_kernel(a: KernelArgs, g: &Globals) -> Outcome {
    let name = required(a.group, "group")?;
    let family = match parse_group(&name) {
        Ok(f) => f,
        Err(e) => {
            // Bare root-system names mean the compact group.
            resolve_system(&name).map_err(|_| Failure::from(e))?;
            parse_group(&name)?
        }
    };
    let rs = family.root_system()?;
    let engine = KernelEngine::new(&rs)?;
    let domain = if family.is_compact() {
        None
    } else {
        let label = a.domain.clone().ok_or_else(|| {
            let labels: Vec<String> = liekernel::domains::enumerate_domains(&family)
                .map(|d| d.into_iter().map(|x| x.label).collect())
                .unwrap_or_default();
            Failure::usage(format!(
                "{family} is non-compact: choose --domain ({})",
                labels.join(", ")
            ))
        })?;
        let model = GroupModel::new(family)?;
        Some(model.domain(&label)?.clone())
    };
    let time = match (a.heat, a.t) {
        (Some(tau), None) => TimeParameter::Heat { tau },
        (None, Some(t)) => TimeParameter::RealTime {
            t,
            eps: a.eps.unwrap_or(0.0),
        },
        _ => return Err(Failure::usage("give exactly one of --heat TAU or --t T")),
    };
    time.validate()?;
    let routes = match a.route.as_deref().unwrap_or("pathsum") {
        "pathsum" => vec![Route::Pathsum],
        "spectral" => vec![Route::Spectral],
        "both" => vec![Route::Pathsum, Route::Spectral],
        other => {
            return Err(Failure::usage(format!(
                "unknown route '{other}' (pathsum, spectral, both)"
            )))
        }
    };
    if let (Some(d), true) = (&domain, routes.contains(&Route::Spectral)) {
        return Err(Failure::usage(format!(
            "no spectral expansion on the non-compact domain {} of {family}; use --route pathsum",
            d.label
        )));
    }
    let mut options = KernelOptions {
        level_cutoff: a.level_cutoff,
        wall_limit: a.wall_limit,
        ..Default::default()
    };
    if let Some(t) = a.tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(Failure::usage("--tol must lie in (0, 1)"));
        }
        options.tol = t;
    }
    let r = rs.rank;
    let grid = match (&a.phi, &a.grid, &a.theta_grid) {
        (Some(p), None, None) => parse_points(p, r)?,
        (None, Some(s), None) | (None, None, Some(s)) => parse_grid(s, r)?,
        (None, None, None) if domain.is_none() => default_grid(&rs),
        (None, None, None) => {
            return Err(Failure::usage("non-compact kernels need --phi or --grid"))
        }
        _ => {
            return Err(Failure::usage(
                "give only one of --phi, --grid, --theta-grid",
            ))
        }
    };
    if grid.is_empty() {
        return Err(Failure::usage("the grid is empty"));
    }
    let job = KernelJob {
        engine,
        family,
        domain,
        time,
        options,
        routes,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(g.workers.unwrap_or(0))
        .build()
        .map_err(|e| Failure {
            code: EXIT_FAILURE,
            message: e.to_string(),
            extra: None,
        })?;
    let per_point: Vec<Result<Vec<KernelRecord>, Failure>> =
        pool.install(|| grid.par_iter().map(|p| job.evaluate(p)).collect());
    let mut records = Vec::new();
    for r in per_point {
        records.extend(r?);
    }
    if g.format == Format::Csv {
        let opt = |x: Option<f64>| x.map(fmt17).unwrap_or_default();
        let rows: Vec<Vec<String>> = records
            .iter()
            .map(|k| {
                vec![
                    k.phi
                        .iter()
                        .map(|x| fmt17(*x))
                        .collect::<Vec<_>>()
                        .join(";"),
                    k.signature.clone().unwrap_or_default(),
                    k.route.to_string(),
                    opt(k.re),
                    opt(k.im),
                    k.convergence_tag.unwrap_or_default().to_string(),
                    k.terms.map(|t| t.to_string()).unwrap_or_default(),
                    opt(k.discrepancy),
                    opt(k.closed_re),
                    opt(k.closed_im),
                    k.flag.clone().unwrap_or_default(),
                ]
            })
            .collect();
        let header = [
            "phi",
            "signature",
            "route",
            "re",
            "im",
            "convergence_tag",
            "terms",
            "discrepancy",
            "closed_re",
            "closed_im",
            "flag",
        ];
        return Ok((to_csv(&header, &rows), EXIT_OK));
    }
    Ok((to_json(&records), EXIT_OK))
}

fn domain_json(d: &EvolutionDomain) -> Value {
    json!({
        "label": d.label,
        "a": d.a,
        "b": d.b(),
        "mask": d.mask_string(),
        "radial": table::radial_string(d),
        "winding": table::winding_string(d),
        "winding_coefficients": d.sublattice.coefficients,
        "winding_generators": d.sublattice.generators,
        "frame": d.frame.axes,
        "realizable": d.realizable,
    })
}

fn cmd_domains_enumerate(a: GroupArgs, g: &Globals) -> Outcome {
    let family = parse_group(&required(a.group, "group")?)?;
    let doms = liekernel::domains::enumerate_domains(&family)?;
    let (f, r) = family.root_type();
    if g.format == Format::Csv {
        let rows: Vec<Vec<String>> = doms
            .iter()
            .map(|d| {
                vec![
                    d.label.clone(),
                    d.a.to_string(),
                    d.mask_string(),
                    table::radial_string(d),
                    table::winding_string(d),
                    d.realizable.to_string(),
                ]
            })
            .collect();
        return Ok((
            to_csv(
                &["label", "a", "mask", "radial", "winding", "realizable"],
                &rows,
            ),
            EXIT_OK,
        ));
    }
    let report = json!({
        "group": family.to_string(),
        "kind": family.kind(),
        "root_system": format!("{f}{r}"),
        "compact": family.is_compact(),
        "domains": doms.iter().map(domain_json).collect::<Vec<_>>(),
    });
    Ok((to_json(&report), EXIT_OK))
}

fn parse_entry(v: &Value) -> Option<C64> {
    match v {
        Value::Number(n) => n.as_f64().map(|x| C64::new(x, 0.0)),
        Value::Array(p) if p.len() == 2 => Some(C64::new(p[0].as_f64()?, p[1].as_f64()?)),
        _ => None,
    }
}

/// Row-major [re, im] pairs, either nested by rows or as one flat list.
pub fn parse_matrix(text: &str) -> Result<DMatrix<C64>, Failure> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Failure::usage(format!("matrix JSON: {e}")))?;
    let bad = || {
        Failure::usage(
            "matrix must be an array of rows of [re, im] pairs, or a flat row-major list",
        )
    };
    let Value::Array(items) = v else {
        return Err(bad());
    };
    let nested = items.iter().all(|r| {
        matches!(r, Value::Array(x) if x.iter().all(|e| e.is_array()))
            && !r.as_array().unwrap().is_empty()
    });
    let entries: Vec<C64> = if nested {
        items
            .iter()
            .flat_map(|r| r.as_array().unwrap().iter().map(parse_entry))
            .collect::<Option<_>>()
            .ok_or_else(bad)?
    } else {
        items
            .iter()
            .map(parse_entry)
            .collect::<Option<_>>()
            .ok_or_else(bad)?
    };
    let n = (entries.len() as f64).sqrt().round() as usize;
    if n == 0 || n * n != entries.len() || (nested && items.len() != n) {
        return Err(Failure::usage(format!(
            "matrix with {} entries is not square",
            entries.len()
        )));
    }
    Ok(DMatrix::from_row_slice(n, n, &entries))
}

fn cmd_domains_classify(a: ClassifyArgs, g: &Globals) -> Outcome {
    let family = parse_group(&required(a.group, "group")?)?;
    let path = required(a.matrix, "matrix file")?;
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let m = parse_matrix(&text)?;
    let model = GroupModel::new(family)?;
    let cl = model.classify(&m)?;
    if g.format == Format::Csv {
        let rows = vec![vec![
            cl.domain.label.clone(),
            cl.domain.mask_string(),
            cl.point
                .values
                .iter()
                .map(|x| fmt17(*x))
                .collect::<Vec<_>>()
                .join(";"),
            fmt17(cl.residual),
        ]];
        return Ok((
            to_csv(&["domain", "mask", "radial", "eigenvalue_residual"], &rows),
            EXIT_OK,
        ));
    }
    let report = json!({
        "group": family.to_string(),
        "domain": cl.domain.label,
        "mask": cl.domain.mask_string(),
        "radial": cl.point.values,
        "central": [cl.central.re, cl.central.im],
        "eigenvalues": cl.eigenvalues.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        "residuals": {"eigenvalues": cl.residual},
    });
    Ok((to_json(&report), EXIT_OK))
}

fn cmd_table(a: GroupArgs, g: &Globals) -> Outcome {
    let name = required(a.group, "group")?;
    let text = table::render(&name)?;
    match g.format {
        Format::Json => {
            let family = parse_group(&name)?;
            let doms = liekernel::domains::enumerate_domains(&family)?;
            let report = json!({
                "group": family.to_string(),
                "domains": doms.iter().map(|d| json!({
                    "label": d.label, "radial": table::radial_string(d), "winding": table::winding_string(d)
                })).collect::<Vec<_>>(),
            });
            // Text is the golden format; JSON only on explicit request.
            Ok((to_json(&report), EXIT_OK))
        }
        Format::Csv => {
            let family = parse_group(&name)?;
            let rows: Vec<Vec<String>> = liekernel::domains::enumerate_domains(&family)?
                .iter()
                .map(|d| {
                    vec![
                        d.label.clone(),
                        table::radial_string(d),
                        table::winding_string(d),
                    ]
                })
                .collect();
            let _ = text;
            Ok((to_csv(&["label", "radial", "winding"], &rows), EXIT_OK))
        }
    }
}

fn cmd_check(a: CheckArgs, g: &Globals) -> Outcome {
    if a.list {
        let names: Vec<String> = checks::registry().into_iter().map(|c| c.name).collect();
        return Ok((names.join("\n") + "\n", EXIT_OK));
    }
    let only: Vec<String> = a
        .only
        .map(|s| {
            s.split(',')
                .map(|x| x.trim().to_string())
                .filter(|x| !x.is_empty())
                .collect()
        })
        .unwrap_or_default();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(g.workers.unwrap_or(0))
        .build()
        .map_err(|e| Failure {
            code: EXIT_FAILURE,
            message: e.to_string(),
            extra: None,
        })?;
    let results = pool.install(|| checks::run(&only));
    if results.is_empty() {
        return Err(Failure::usage("no check matches --only"));
    }
    let passed = results.iter().all(|r| r.passed);
    let code = if passed { EXIT_OK } else { EXIT_FAILURE };
    if g.format == Format::Csv {
        let rows: Vec<Vec<String>> = results
            .iter()
            .map(|r| {
                vec![
                    r.name.clone(),
                    r.passed.to_string(),
                    fmt17(r.residual),
                    fmt17(r.tolerance),
                    r.detail.clone(),
                ]
            })
            .collect();
        return Ok((
            to_csv(
                &["name", "passed", "residual", "tolerance", "detail"],
                &rows,
            ),
            code,
        ));
    }
    let report = json!({
        "passed": passed,
        "count": results.len(),
        "failed": results.iter().filter(|r| !r.passed).count(),
        "results": results,
    });
    Ok((to_json(&report), code))
}

fn execute(cli: Cli) -> Outcome {
    let config = read_config(&cli.config)?;
    let mut section = config.clone();
    let global = |k: &str| config.get(k).cloned();
    for k in ["output", "format", "workers"] {
        section.remove(k);
    }
    let format_name = cli
        .format
        .clone()
        .or_else(|| global("format").and_then(|v| v.as_str().map(String::from)));
    let format = match format_name.as_deref().unwrap_or("json") {
        "json" => Format::Json,
        "csv" => Format::Csv,
        other => {
            return Err(Failure::usage(format!(
                "unknown format '{other}' (json, csv)"
            )))
        }
    };
    let workers = cli.workers.or_else(|| {
        global("workers")
            .and_then(|v| v.as_u64())
            .map(|n| n as usize)
    });
    let g = Globals { format, workers };
    let output: Option<PathBuf> = cli
        .output
        .clone()
        .or_else(|| global("output").and_then(|v| v.as_str().map(PathBuf::from)));
    let (text, code) = match cli.command {
        Command::Roots(a) => cmd_roots(merge(a, &section, "roots")?, &g)?,
        Command::Weyl(a) => cmd_weyl(merge(a, &section, "weyl")?, &g)?,
        Command::Volume(a) => cmd_volume(merge(a, &section, "volume")?, &g)?,
        Command::Kernel(a) => cmd_kernel(merge(a, &section, "kernel")?, &g)?,
        Command::Domains(DomainsCommand::Enumerate(a)) => {
            cmd_domains_enumerate(merge(a, &section, "domains")?, &g)?
        }
        Command::Domains(DomainsCommand::Classify(a)) => {
            cmd_domains_classify(merge(a, &section, "domains")?, &g)?
        }
        Command::Table(a) => {
            let a: GroupArgs = merge(a, &section, "table")?;
            if format_name.is_none() {
                (table::render(&required(a.group, "group")?)?, EXIT_OK)
            } else {
                cmd_table(a, &g)?
            }
        }
        Command::Check(a) => cmd_check(merge(a, &section, "check")?, &g)?,
    };
    match output {
        Some(p) => {
            std::fs::write(&p, text)
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display())))?;
            Ok((String::new(), code))
        }
        None => Ok((text, code)),
    }
}

/// Run the CLI on `args` (including the program name), writing the report to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            if let Some(x) = f.extra {
                let _ = out.write_all(x.as_bytes());
            }
            f.code
        }
    }
}
