//! The invariant suite behind `liekernel check`. Every check is a named,
//! deterministic computation reporting a measured residual against a
//! tolerance.

use liekernel::domains::{parse_group, GroupModel};
use liekernel::error::Result;
use liekernel::kernel::{
    self, KernelEngine, KernelOptions, KernelRequest, RadialSamples, Route, TimeParameter,
};
use liekernel::lattice::{Coord, RadialPoint};
use liekernel::linalg::{self, C64};
use liekernel::nalgebra::DMatrix;
use liekernel::rootsys::{build_root_system, Family, RootSystem};
use liekernel::volumes;
use liekernel::weyl::{self, generate_weyl_group};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    fn measured(name: &str, residual: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: residual.is_finite() && residual < tolerance,
            residual,
            tolerance,
            detail: detail.into(),
        }
    }

    fn failed(name: &str, tolerance: f64, err: impl std::fmt::Display) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            residual: f64::INFINITY,
            tolerance,
            detail: format!("error: {err}"),
        }
    }
}

type CheckFn = Box<dyn Fn(&str) -> CheckResult + Send + Sync>;

pub struct Check {
    pub name: String,
    run: CheckFn,
}

impl Check {
    fn new(
        name: impl Into<String>,
        run: impl Fn(&str) -> CheckResult + Send + Sync + 'static,
    ) -> Self {
        Check {
            name: name.into(),
            run: Box::new(run),
        }
    }

    pub fn run(&self) -> CheckResult {
        (self.run)(&self.name)
    }
}

fn guard(name: &str, tol: f64, f: impl FnOnce() -> Result<(f64, String)>) -> CheckResult {
    match f() {
        Ok((res, detail)) => CheckResult::measured(name, res, tol, detail),
        Err(e) => CheckResult::failed(name, tol, e),
    }
}

fn rs(f: Family, r: usize) -> RootSystem {
    build_root_system(f, r).expect("supported root system")
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// Radical inverse in base `b` (Halton component).
fn halton(i: usize, b: usize) -> f64 {
    let (mut f, mut r, mut i) = (1.0, 0.0, i);
    while i > 0 {
        f /= b as f64;
        r += f * (i % b) as f64;
        i /= b;
    }
    r
}

const PRIMES: [usize; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Deterministic points strictly inside the Weyl alcove, keeping only those
/// where the heat kernel's Gaussian factor exp(−Λφ²/4τ) stays above e^{−12};
/// further out the spectral series cancels to below double precision.
pub fn interior_alcove_points(rs: &RootSystem, tau: f64, count: usize) -> Vec<Vec<f64>> {
    let r = rs.rank;
    let verts: Vec<Vec<f64>> = rs
        .fundamental_weights
        .iter()
        .map(|w| linalg::scale(w, 1.0 / linalg::dot(&rs.highest_root, w)))
        .collect();
    let margin = 0.03;
    let mut out = Vec::new();
    let mut i = 1;
    while out.len() < count && i < 100_000 {
        let b: Vec<f64> = (0..r).map(|k| halton(i, PRIMES[k])).collect();
        i += 1;
        if b.iter().any(|&x| x < margin) || b.iter().sum::<f64>() > 1.0 - margin {
            continue;
        }
        let mut phi = vec![0.0; r];
        for (bk, v) in b.iter().zip(&verts) {
            linalg::axpy(&mut phi, TWO_PI * bk, v);
        }
        if rs.lambda * linalg::norm2(&phi) / (4.0 * tau) <= 12.0 {
            out.push(phi);
        }
    }
    out
}

pub fn dual_series(f: Family, r: usize, taus: &[f64], points: usize) -> Result<(f64, String)> {
    let rs = rs(f, r);
    let eng = KernelEngine::new(&rs)?;
    let opts = KernelOptions::default();
    let mut worst = 0.0f64;
    let mut n = 0;
    for &tau in taus {
        let time = TimeParameter::Heat { tau };
        for phi in interior_alcove_points(&rs, tau, points) {
            let p = eng.compact_pathsum(&phi, &time, &opts)?.value;
            let s = eng.compact_spectral(&phi, &time, &opts)?.value;
            worst = worst.max(rel(p, s));
            n += 1;
        }
    }
    Ok((worst, format!("{n} points, max relative discrepancy")))
}

pub fn su2_printed_spectral() -> Result<(f64, String)> {
    let rs = rs(Family::A, 1);
    let eng = KernelEngine::new(&rs)?;
    let mut worst = 0.0f64;
    for (phi, time) in [
        (0.7, TimeParameter::Heat { tau: 0.5 }),
        (2.3, TimeParameter::RealTime { t: 1.0, eps: 0.3 }),
        (4.1, TimeParameter::RealTime { t: 0.4, eps: 1.0 }),
    ] {
        for cutoff in [0usize, 3, 12, 40] {
            let opts = KernelOptions {
                level_cutoff: Some(cutoff),
                ..Default::default()
            };
            let v = eng.compact_spectral(&[phi], &time, &opts)?.value;
            let c = kernel::su2_spectral_closed(phi, &time, cutoff as u32 + 1);
            worst = worst.max(rel(v, c));
        }
    }
    let trivial = eng
        .compact_spectral(
            &[1.0],
            &TimeParameter::Heat { tau: 1.0 },
            &KernelOptions {
                level_cutoff: Some(0),
                ..Default::default()
            },
        )?
        .value;
    worst = worst.max(rel(trivial, C64::new(1.0 / eng.v_g, 0.0)));
    Ok((
        worst,
        "engine vs n·sin(nφ/2)/sin(φ/2)·e^{-i(n²-1)t/8}/(32√2π²), matched cutoffs".into(),
    ))
}

pub fn su2_printed_pathsum() -> Result<(f64, String)> {
    let rs = rs(Family::A, 1);
    let eng = KernelEngine::new(&rs)?;
    let i = C64::new(0.0, 1.0);
    let mut worst = 0.0f64;
    for (phi, time) in [
        (0.7, TimeParameter::Heat { tau: 0.5 }),
        (2.3, TimeParameter::RealTime { t: 1.0, eps: 0.0 }),
        (5.1, TimeParameter::RealTime { t: 0.3, eps: 0.2 }),
    ] {
        let t = time.value();
        for m in -6i64..=6 {
            let engine = eng.pathsum_term(&[C64::new(phi, 0.0)], &eng.lattice.vector(&[m]), &time);
            let x = phi + 4.0 * PI * m as f64;
            let printed = kernel::flat_prefactor(3, t) * x / (2.0 * (phi / 2.0).sin())
                * (i * x * x / (2.0 * t) + i * t / 8.0).exp();
            worst = worst.max(rel(engine, printed));
        }
    }
    Ok((
        worst,
        "term by term vs (φ+4πm)/(2 sin(φ/2))·exp(i(φ+4πm)²/2t + it/8)".into(),
    ))
}

pub fn su11_d1_identity() -> Result<(f64, String)> {
    let model = GroupModel::new(parse_group("SU(1,1)")?)?;
    let d1 = model.domain("D1")?.clone();
    let eng = KernelEngine::new(&model.rs)?;
    let mut worst = 0.0f64;
    for t in [0.5, 1.0] {
        for eps in [0.0, 0.1] {
            let time = TimeParameter::RealTime { t, eps };
            for k in 0..12 {
                let phi = 0.2 + 5.8 * f64::from(k) / 11.0;
                let a = KernelRequest::in_domain(d1.clone(), RadialPoint::real(vec![phi]), time)
                    .evaluate(&eng, Route::Pathsum)?;
                let b = KernelRequest::compact(vec![phi], time).evaluate(&eng, Route::Pathsum)?;
                worst = worst.max(rel(a.value, b.value));
            }
        }
    }
    Ok((worst, "SU(1,1) D1 path sum vs SU(2) path sum".into()))
}

pub fn su11_d0_closed() -> Result<(f64, String)> {
    let model = GroupModel::new(parse_group("SU(1,1)")?)?;
    let d0 = model.domain("D0")?.clone();
    let eng = KernelEngine::new(&model.rs)?;
    let mut worst = 0.0f64;
    for t in [0.5, 1.0] {
        let time = TimeParameter::RealTime { t, eps: 0.0 };
        for k in 0..30 {
            let theta = 0.1 + 2.9 * f64::from(k) / 29.0;
            let pt = RadialPoint::new(vec![theta], vec![Coord::Imaginary])?;
            let v =
                KernelRequest::in_domain(d0.clone(), pt, time).evaluate(&eng, Route::Pathsum)?;
            worst = worst.max(rel(v.value, kernel::su11_d0_closed(theta, &time)));
        }
    }
    Ok((
        worst,
        "D0 engine vs θ/(2 sinh(θ/2))·exp(-iθ²/2t + it/8)·(4πit)^{-3/2}".into(),
    ))
}

pub fn su2_resolvent_poles() -> Result<(f64, String)> {
    let phi = 1.1;
    let mut worst = 0.0f64;
    for n in 1..=6i32 {
        let exact = f64::from(n * n - 1) / 8.0;
        let found = kernel::su2_find_pole(phi, C64::new(exact + 0.02, 0.01))?;
        worst = worst.max((found - exact).norm());
    }
    Ok((worst, "|located pole - (n²-1)/8|, n = 1..6".into()))
}

pub fn su2_resolvent_residues() -> Result<(f64, String)> {
    let phi = 1.1;
    let v_g = volumes::group_volume(&rs(Family::A, 1));
    let mut worst = 0.0f64;
    for n in 1..=6i32 {
        let nf = f64::from(n);
        let pole = C64::new((nf * nf - 1.0) / 8.0, 0.0);
        let res = kernel::contour_residue(|l| kernel::su2_resolvent(phi, l), pole, 0.01, 64)?;
        // G = Σ cₙ/(λₙ − λ): residue in λ is −cₙ.
        let coeff = nf * (nf * phi / 2.0).sin() / (phi / 2.0).sin() / v_g;
        worst = worst.max((res + coeff).norm() / coeff.abs());
    }
    Ok((
        worst,
        "contour residues vs spectral coefficients d·χ/V_G, n = 1..6".into(),
    ))
}

fn su2_heat_samples(eng: &KernelEngine, tau: f64, n: usize) -> Result<RadialSamples> {
    let lim = KernelOptions {
        wall_limit: true,
        ..Default::default()
    };
    RadialSamples::from_fn(n, |p| {
        Ok(eng
            .compact_pathsum(&[p], &TimeParameter::Heat { tau }, &lim)?
            .value)
    })
}

pub fn su2_normalization() -> Result<(f64, String)> {
    let rs = rs(Family::A, 1);
    let eng = KernelEngine::new(&rs)?;
    let total = kernel::radial_integral(&rs, &su2_heat_samples(&eng, 0.5, 201)?)?;
    Ok((
        (total - 1.0).norm(),
        format!("∫K dμ at τ = 0.5 is {:.15}", total.re),
    ))
}

pub fn su2_semigroup() -> Result<(f64, String)> {
    let rs = rs(Family::A, 1);
    let eng = KernelEngine::new(&rs)?;
    let (t1, t2) = (0.3, 0.4);
    let f = su2_heat_samples(&eng, t1, 200)?;
    let g = su2_heat_samples(&eng, t2, 200)?;
    let fg = su2_heat_samples(&eng, t1 + t2, 200)?;
    let conv = kernel::radial_convolve(&rs, &f, &g)?;
    let scale = fg.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let worst = conv
        .values
        .iter()
        .zip(&fg.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / scale;
    Ok((
        worst,
        "max |K_0.3 ⋆ K_0.4 - K_0.7| / max K_0.7 on 200 points".into(),
    ))
}

pub fn rho_identity(f: Family, r: usize) -> Result<(f64, String)> {
    let rs = build_root_system(f, r)?;
    let v = rs.rho2() / rs.lambda;
    Ok((
        (v - rs.dim as f64 / 24.0).abs(),
        format!("ρ²/Λ = {v:.15}, n/24 = {}/24", rs.dim),
    ))
}

pub fn weyl_order(f: Family, r: usize, expected: usize) -> Result<(f64, String)> {
    let order = generate_weyl_group(&build_root_system(f, r)?)?.order();
    Ok((
        (order as f64 - expected as f64).abs(),
        format!("N(W) = {order}, expected {expected}"),
    ))
}

pub fn su3_dimensions() -> Result<(f64, String)> {
    let rs = rs(Family::A, 2);
    let group = generate_weyl_group(&rs)?;
    let mut worst = 0.0f64;
    let mut got = Vec::new();
    for (l, want) in [([0i64, 0], 1u64), ([1, 0], 3), ([1, 1], 8), ([3, 0], 10)] {
        let d = weyl::dimension(&rs, &l)?;
        let chi0 = weyl::character(&rs, &group, &l, &[C64::new(0.0, 0.0); 2], true)?;
        worst = worst
            .max((d as f64 - want as f64).abs())
            .max((chi0 - d as f64).norm());
        got.push(d);
    }
    Ok((
        worst,
        format!("dimensions {got:?} (product formula and character limit)"),
    ))
}

pub fn intertwiner(f: Family, r: usize) -> Result<(f64, String)> {
    let rs = build_root_system(f, r)?;
    let nw = generate_weyl_group(&rs)?.order() as f64;
    let dw = weyl::apply_intertwiner(&rs, &weyl::weyl_function_expsum(&rs));
    let prod: f64 = rs
        .positive_roots
        .iter()
        .map(|a| linalg::dot(a, &rs.rho))
        .product();
    let val = dw.eval_real(&vec![0.0; r]) * (2f64.powi(rs.num_positive as i32) / prod);
    Ok((
        (val - nw).norm(),
        format!("(2^p/Πα·ρ)·Dw(0) = {:.12}, N(W) = {nw}", val.re),
    ))
}

pub fn volume_identities(f: Family, r: usize) -> Result<(f64, String)> {
    let rs = build_root_system(f, r)?;
    let g = volumes::group_volume(&rs);
    let fact = (g - volumes::torus_volume(&rs) * volumes::coset_volume(&rs)).abs() / g;
    let s = rs.rescale(1.7)?;
    let resc = [
        (volumes::group_volume(&s), g),
        (volumes::torus_volume(&s), volumes::torus_volume(&rs)),
        (volumes::coset_volume(&s), volumes::coset_volume(&rs)),
    ]
    .iter()
    .map(|(a, b)| (a - b).abs() / b)
    .fold(0.0, f64::max);
    Ok((
        fact.max(resc),
        format!("V_G = V_T·V_G/T and rescale invariance, V_G = {g:.12e}"),
    ))
}

pub fn su2_coset_volume() -> Result<(f64, String)> {
    let v = volumes::coset_volume(&rs(Family::A, 1));
    Ok((
        (v - 8.0 * PI).abs() / (8.0 * PI),
        format!("V_G/T = {v:.15}"),
    ))
}

/// Expected signature masks per domain for the tabulated real forms.
pub const GOLDEN_MASKS: [(&str, &[&str]); 10] = [
    ("SU(2,1)", &["RR", "IR"]),
    ("SL(3,R)", &["RI", "II"]),
    ("SO(4,1)", &["RR", "RI"]),
    ("SO(3,2)", &["RR", "RI", "II"]),
    ("SU(3,1)", &["RRR", "IRR"]),
    ("SU(2,2)", &["RRR", "IRR", "IRI"]),
    ("SO(3,3)", &["RIR", "IIR", "III"]),
    ("SO(5,1)", &["RIR"]),
    ("USp(4,2)", &["RRR", "IRR"]),
    ("Sp(6,R)", &["RRR", "RRI", "IIR", "III"]),
];

pub fn domain_masks(group: &str, expected: &[&str]) -> Result<(f64, String)> {
    let doms = liekernel::domains::enumerate_domains(&parse_group(group)?)?;
    let got: Vec<String> = doms.iter().map(|d| d.mask_string()).collect();
    let ok = got.len() == expected.len() && got.iter().zip(expected).all(|(a, b)| a == b);
    Ok((
        if ok { 0.0 } else { 1.0 },
        format!("masks {}", got.join(" ")),
    ))
}

/// Normal-form element → classify → canonical radial point, for `per_domain`
/// pseudo-random points in every realizable domain.
pub fn classifier_round_trip(group: &str, per_domain: usize) -> Result<(f64, String)> {
    let model = GroupModel::new(parse_group(group)?)?;
    let mut worst = 0.0f64;
    let mut count = 0;
    for (di, dom) in model
        .domains
        .iter()
        .enumerate()
        .filter(|(_, d)| d.realizable)
    {
        for k in 0..per_domain {
            let idx = 1 + k + 1000 * di;
            let values: Vec<f64> = (0..dom.signature.len())
                .map(|j| 0.1 + 1.9 * halton(idx, PRIMES[j]))
                .collect();
            let pt = RadialPoint::new(values, dom.signature.clone())?;
            let g = model.element_from_radial(dom, &pt, C64::new(1.0, 0.0))?;
            let cl = model.classify(&g)?;
            if cl.domain.label != dom.label {
                return Ok((
                    f64::INFINITY,
                    format!(
                        "{:?} in {} classified as {}",
                        pt.values, dom.label, cl.domain.label
                    ),
                ));
            }
            let want = model.representation_canonical(dom, &pt)?;
            worst = worst
                .max(linalg::max_abs_diff(&cl.point.values, &want.values))
                .max(cl.residual);
            count += 1;
        }
    }
    Ok((worst, format!("{count} points")))
}

fn su11(m: [[f64; 2]; 2]) -> DMatrix<C64> {
    DMatrix::from_fn(2, 2, |i, j| C64::new(m[i][j], 0.0))
}

/// SU(1,1) elements with trace ±2 ± 1e−3 land on the correct side.
pub fn su11_trace_threshold() -> Result<(f64, String)> {
    let model = GroupModel::new(parse_group("SU(1,1)")?)?;
    let mut wrong = Vec::new();
    for sign in [1.0, -1.0] {
        for (tr, want) in [(2.0 + 1e-3, "D0"), (2.0 - 1e-3, "D1")] {
            let g = if tr > 2.0 {
                let th = 2.0 * (tr / 2.0f64).acosh();
                let (c, s) = ((th / 2.0).cosh(), (th / 2.0).sinh());
                su11([[c, s], [s, c]])
            } else {
                let ph = 2.0 * (tr / 2.0f64).acos();
                let mut g = su11([[0.0; 2]; 2]);
                g[(0, 0)] = C64::from_polar(1.0, ph / 2.0);
                g[(1, 1)] = C64::from_polar(1.0, -ph / 2.0);
                g
            };
            let g = g * C64::new(sign, 0.0);
            let cl = model.classify(&g)?;
            let trace = g.trace().re;
            if cl.domain.label != want {
                wrong.push(format!("Tr = {trace}: got {}", cl.domain.label));
            }
        }
    }
    Ok((
        wrong.len() as f64,
        if wrong.is_empty() {
            "all four sides correct".into()
        } else {
            wrong.join("; ")
        },
    ))
}

/// Weyl invariance and lattice periodicity of compact heat kernels over
/// `draws` pseudo-random (σ, m, φ, τ).
pub fn kernel_symmetries(draws: usize) -> Result<(f64, String)> {
    let systems: Vec<KernelEngine> = [
        (Family::A, 1),
        (Family::A, 2),
        (Family::B, 2),
        (Family::C, 2),
    ]
    .iter()
    .map(|&(f, r)| KernelEngine::new(&rs(f, r)))
    .collect::<Result<_>>()?;
    let opts = KernelOptions::default();
    let results: Vec<Result<f64>> = (0..draws)
        .into_par_iter()
        .map(|k| {
            let eng = &systems[k % systems.len()];
            let r = eng.rs.rank;
            let idx = k + 1;
            let phi: Vec<f64> = (0..r)
                .map(|j| TWO_PI * (2.0 * halton(idx, PRIMES[j]) - 1.0))
                .collect();
            if weyl::wall_distance(&eng.rs, &linalg::to_complex(&phi)).0 < 1e-3 {
                return Ok(0.0);
            }
            let tau = 0.2 + 1.3 * halton(idx, PRIMES[3]);
            let s =
                &eng.group.elements[(halton(idx, PRIMES[4]) * eng.group.order() as f64) as usize];
            let m: Vec<i64> = (0..r)
                .map(|j| ((halton(idx, PRIMES[5 + j]) * 7.0) as i64) - 3)
                .collect();
            let time = TimeParameter::Heat { tau };
            let base = eng.compact_pathsum(&phi, &time, &opts)?.value;
            let moved = eng.compact_pathsum(&s.apply(&phi), &time, &opts)?.value;
            let shifted = linalg::add(&phi, &linalg::scale(&eng.lattice.vector(&m), TWO_PI));
            let per = eng.compact_pathsum(&shifted, &time, &opts)?.value;
            Ok(rel(moved, base).max(rel(per, base)))
        })
        .collect();
    let mut worst = 0.0f64;
    for r in results {
        worst = worst.max(r?);
    }
    Ok((worst, format!("{draws} draws over A1, A2, B2, C2")))
}

/// The full registry in a fixed order.
pub fn registry() -> Vec<Check> {
    let mut v = Vec::new();
    let systems = [
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 3),
        (Family::A, 4),
        (Family::A, 5),
        (Family::B, 2),
        (Family::B, 3),
        (Family::B, 4),
        (Family::C, 2),
        (Family::C, 3),
        (Family::C, 4),
        (Family::D, 3),
        (Family::D, 4),
        (Family::D, 5),
    ];
    for (f, r) in systems {
        v.push(Check::new(format!("rho2_over_lambda.{f}{r}"), move |n| {
            guard(n, 1e-12, || rho_identity(f, r))
        }));
    }
    for (f, r, w) in [
        (Family::A, 1, 2),
        (Family::A, 2, 6),
        (Family::B, 2, 8),
        (Family::A, 3, 24),
        (Family::C, 3, 48),
    ] {
        v.push(Check::new(format!("weyl.order.{f}{r}"), move |n| {
            guard(n, 0.5, || weyl_order(f, r, w))
        }));
    }
    v.push(Check::new("weyl.dimension.su3", |n| {
        guard(n, 1e-9, su3_dimensions)
    }));
    for (f, r) in [(Family::A, 1), (Family::A, 2), (Family::B, 2)] {
        v.push(Check::new(format!("weyl.intertwiner.{f}{r}"), move |n| {
            guard(n, 1e-9, || intertwiner(f, r))
        }));
    }
    v.push(Check::new("volumes.su2_coset_8pi", |n| {
        guard(n, 1e-10, su2_coset_volume)
    }));
    for (f, r) in systems {
        v.push(Check::new(format!("volumes.identities.{f}{r}"), move |n| {
            guard(n, 1e-10, || volume_identities(f, r))
        }));
    }
    v.push(Check::new("su2.dual_series", |n| {
        guard(n, 1e-8, || dual_series(Family::A, 1, &[0.1, 0.5, 1.0], 20))
    }));
    v.push(Check::new("su2.printed_spectral", |n| {
        guard(n, 1e-10, su2_printed_spectral)
    }));
    v.push(Check::new("su2.printed_pathsum", |n| {
        guard(n, 1e-10, su2_printed_pathsum)
    }));
    v.push(Check::new("su2.resolvent_poles", |n| {
        guard(n, 1e-9, su2_resolvent_poles)
    }));
    v.push(Check::new("su2.resolvent_residues", |n| {
        guard(n, 1e-6, su2_resolvent_residues)
    }));
    v.push(Check::new("su2.normalization", |n| {
        guard(n, 1e-6, su2_normalization)
    }));
    v.push(Check::new("su2.semigroup", |n| {
        guard(n, 1e-4, su2_semigroup)
    }));
    v.push(Check::new("su3.dual_series", |n| {
        guard(n, 1e-8, || dual_series(Family::A, 2, &[0.1, 0.5, 1.0], 20))
    }));
    v.push(Check::new("su11.d1_identity", |n| {
        guard(n, 1e-12, su11_d1_identity)
    }));
    v.push(Check::new("su11.d0_closed_form", |n| {
        guard(n, 1e-10, su11_d0_closed)
    }));
    v.push(Check::new("su11.trace_threshold", |n| {
        guard(n, 0.5, su11_trace_threshold)
    }));
    for (g, masks) in GOLDEN_MASKS {
        v.push(Check::new(format!("domains.masks.{g}"), move |n| {
            guard(n, 0.5, || domain_masks(g, masks))
        }));
        v.push(Check::new(format!("domains.round_trip.{g}"), move |n| {
            guard(n, 1e-8, || classifier_round_trip(g, 100))
        }));
    }
    v.push(Check::new("kernel.symmetries", |n| {
        guard(n, 1e-9, || kernel_symmetries(500))
    }));
    v
}

/// Run every check whose name starts with one of `only` (all if empty).
pub fn run(only: &[String]) -> Vec<CheckResult> {
    let reg = registry();
    let selected: Vec<&Check> = reg
        .iter()
        .filter(|c| only.is_empty() || only.iter().any(|o| c.name.starts_with(o.as_str())))
        .collect();
    selected.par_iter().map(|c| c.run()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique() {
        let reg = registry();
        let mut names: Vec<&str> = reg.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        let before = names.len();
        names.dedup();
        assert_eq!(before, names.len());
    }

    #[test]
    fn interior_points_are_interior() {
        let rs = rs(Family::A, 2);
        let pts = interior_alcove_points(&rs, 1.0, 20);
        assert_eq!(pts.len(), 20);
        for p in pts {
            assert!(rs.simple_roots.iter().all(|a| linalg::dot(a, &p) > 0.0));
            assert!(linalg::dot(&rs.highest_root, &p) < TWO_PI);
        }
    }

    #[test]
    fn quick_checks_pass() {
        for r in run(&[
            "rho2".into(),
            "weyl.".into(),
            "volumes.".into(),
            "su11.".into(),
        ]) {
            assert!(r.passed, "{}: {} ({})", r.name, r.residual, r.detail);
        }
    }
}
