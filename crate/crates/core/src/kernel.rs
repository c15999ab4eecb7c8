//! Evolution kernels: compact path sum and spectral series, domain-restricted
//! non-compact path sums, rank-1 closed forms and resolvents.

use crate::domains::EvolutionDomain;
use crate::error::{Error, Result};
use crate::lattice::{self, Frame, RadialPoint, WindingLattice};
use crate::linalg::{self, dot, C64};
use crate::rootsys::{Family, RootSystem};
use crate::volumes;
use crate::weyl::{self, WeylGroup};
use serde::Serialize;
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;
/// Walls closer than this (smallest |sin(α·φ/2)|) are rejected without limit mode.
pub const WALL_TOL: f64 = 1e-8;
/// Below this wall distance limit mode extrapolates instead of evaluating.
const LIMIT_SWITCH: f64 = 1e-6;
/// Image radius used when the Gaussian factor does not decay (ε = 0).
pub const OSCILLATORY_RADIUS: f64 = 10.0 * TWO_PI;
/// ln of the relative weight at which the spectral series is cut.
const SPECTRAL_LOG_CUT: f64 = 37.0;
const MAX_LEVEL: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TimeParameter {
    /// t − iε.
    RealTime { t: f64, eps: f64 },
    /// t = −iτ.
    Heat { tau: f64 },
}

impl TimeParameter {
    pub fn validate(&self) -> Result<()> {
        match *self {
            TimeParameter::RealTime { t, eps } => {
                if !t.is_finite() || !eps.is_finite() || eps < 0.0 {
                    return Err(Error::Argument(format!(
                        "real time needs finite t and eps >= 0 (got t={t}, eps={eps})"
                    )));
                }
                if t == 0.0 && eps == 0.0 {
                    return Err(Error::Argument("t - i*eps must be nonzero".into()));
                }
            }
            TimeParameter::Heat { tau } => {
                if !(tau > 0.0) || !tau.is_finite() {
                    return Err(Error::Argument(format!(
                        "heat mode needs tau > 0, got {tau}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The complex time entering the kernel.
    pub fn value(&self) -> C64 {
        match *self {
            TimeParameter::RealTime { t, eps } => C64::new(t, -eps),
            TimeParameter::Heat { tau } => C64::new(0.0, -tau),
        }
    }

    /// δ = −Im t, the damping rate of e^{−iλt}.
    pub fn damping(&self) -> f64 {
        -self.value().im
    }

    /// Effective Gaussian width |t|²/δ (infinite when δ = 0).
    pub fn t_like(&self) -> f64 {
        let d = self.damping();
        if d > 0.0 {
            self.value().norm_sqr() / d
        } else {
            f64::INFINITY
        }
    }

    pub fn is_heat(&self) -> bool {
        matches!(self, TimeParameter::Heat { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Convergence {
    Convergent,
    Oscillatory,
    Growing,
}

impl Convergence {
    pub fn as_str(self) -> &'static str {
        match self {
            Convergence::Convergent => "CONVERGENT",
            Convergence::Oscillatory => "OSCILLATORY",
            Convergence::Growing => "GROWING",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Pathsum,
    Spectral,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Pathsum => "pathsum",
            Route::Spectral => "spectral",
        }
    }
}

#[derive(Clone, Debug)]
pub struct KernelOptions {
    /// Relative weight below which lattice images are dropped.
    pub tol: f64,
    /// Spectral level cutoff L (labels with every lᵢ ≤ L); automatic if None.
    pub level_cutoff: Option<usize>,
    /// Extrapolate to wall points instead of rejecting them.
    pub wall_limit: bool,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions {
            tol: 1e-16,
            level_cutoff: None,
            wall_limit: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelValue {
    pub value: C64,
    pub route: Route,
    pub convergence: Convergence,
    /// Number of lattice images or representation labels summed.
    pub terms: usize,
    pub warnings: Vec<String>,
}

/// (4πit)^{−n/2} on the principal branch of Log.
pub fn flat_prefactor(n: usize, t: C64) -> C64 {
    let z = C64::new(0.0, 4.0 * PI) * t;
    (-(n as f64) / 2.0 * z.ln()).exp()
}

/// Precomputed data for evaluating kernels of one root system.
#[derive(Clone, Debug)]
pub struct KernelEngine {
    pub rs: RootSystem,
    pub group: WeylGroup,
    pub lattice: WindingLattice,
    pub v_g: f64,
    rho2_over_lambda: f64,
}

impl KernelEngine {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let group = weyl::generate_weyl_group(rs)?;
        Ok(KernelEngine {
            lattice: lattice::winding_lattice(rs),
            v_g: volumes::group_volume(rs),
            rho2_over_lambda: rs.rho2() / rs.lambda,
            rs: rs.clone(),
            group,
        })
    }

    fn check_rank(&self, len: usize) -> Result<()> {
        if len != self.rs.rank {
            return Err(Error::Argument(format!(
                "phi has {len} coordinates but {} has rank {}",
                self.rs.name(),
                self.rs.rank
            )));
        }
        Ok(())
    }

    /// Prefactor Π α·(φ+2πm)/(2 sin(α·φ/2)) and exponent
    /// iΛ(φ+2πm)²/(4t) + i(ρ²/Λ)t of one path-sum image (bilinear square,
    /// complex sine).
    pub fn pathsum_term_parts(&self, phi: &[C64], m: &[f64], time: &TimeParameter) -> (C64, C64) {
        let t = time.value();
        let x: Vec<C64> = phi.iter().zip(m).map(|(p, mm)| p + TWO_PI * mm).collect();
        let pref: C64 = self
            .rs
            .positive_roots
            .iter()
            .map(|a| linalg::rdot(a, &x) / (2.0 * (linalg::rdot(a, phi) * 0.5).sin()))
            .product();
        let i = C64::new(0.0, 1.0);
        let expo = i * self.rs.lambda * linalg::cdot_bilinear(&x, &x) / (4.0 * t)
            + i * self.rho2_over_lambda * t;
        (pref, expo)
    }

    /// One full path-sum term including (4πit)^{−n/2}.
    pub fn pathsum_term(&self, phi: &[C64], m: &[f64], time: &TimeParameter) -> C64 {
        let (p, e) = self.pathsum_term_parts(phi, m, time);
        flat_prefactor(self.rs.dim, time.value()) * p * e.exp()
    }

    /// d_l χ_l(φ) e^{−iλ_l t} / V_G.
    pub fn spectral_term(&self, phi: &[C64], l: &[i64], time: &TimeParameter) -> Result<C64> {
        let d = weyl::dimension(&self.rs, l)? as f64;
        let chi = weyl::character(&self.rs, &self.group, l, phi, true)?;
        let lam = weyl::casimir_eigenvalue(&self.rs, l)?;
        Ok(d * chi * (C64::new(0.0, -lam) * time.value()).exp() / self.v_g)
    }

    fn sum_images(
        &self,
        lattice: &WindingLattice,
        phi: &[C64],
        time: &TimeParameter,
        tol: f64,
    ) -> Result<(C64, usize)> {
        let re: Vec<f64> = phi.iter().map(|z| z.re).collect();
        let pts = if time.damping() > 0.0 {
            lattice::enumerate_points(lattice, &re, time.t_like(), tol)?
        } else {
            lattice::enumerate_ball(lattice, &re, OSCILLATORY_RADIUS)?
        };
        let mut acc = C64::new(0.0, 0.0);
        for p in &pts {
            let (pref, e) = self.pathsum_term_parts(phi, &p.vector, time);
            acc += pref * e.exp();
        }
        Ok((flat_prefactor(self.rs.dim, time.value()) * acc, pts.len()))
    }

    fn with_wall_limit(
        &self,
        phi: &[C64],
        wall_limit: bool,
        mut f: impl FnMut(&[C64]) -> Result<(C64, usize)>,
    ) -> Result<(C64, usize)> {
        let (d, idx) = weyl::wall_distance(&self.rs, phi);
        if d >= LIMIT_SWITCH || (!wall_limit && d >= WALL_TOL) {
            return f(phi);
        }
        if !wall_limit {
            return Err(Error::Singular(format!(
                "phi lies on the wall of positive root #{idx} (|sin| = {d:.3e}); enable limit mode"
            )));
        }
        let mut terms = 0;
        let v = weyl::richardson_limit(|e| {
            let x: Vec<C64> = phi
                .iter()
                .zip(&self.rs.rho)
                .map(|(z, r)| z + r * e)
                .collect();
            let (v, n) = f(&x)?;
            terms = terms.max(n);
            Ok(v)
        })?;
        Ok((v, terms))
    }

    pub fn compact_pathsum(
        &self,
        phi: &[f64],
        time: &TimeParameter,
        opts: &KernelOptions,
    ) -> Result<KernelValue> {
        self.check_rank(phi.len())?;
        time.validate()?;
        let z = linalg::to_complex(phi);
        let (value, terms) = self.with_wall_limit(&z, opts.wall_limit, |x| {
            self.sum_images(&self.lattice, x, time, opts.tol)
        })?;
        let mut warnings = Vec::new();
        let convergence = if time.damping() > 0.0 {
            Convergence::Convergent
        } else {
            warnings.push(format!(
                "eps = 0: image sum truncated at radius {OSCILLATORY_RADIUS:.6} (conditionally convergent)"
            ));
            Convergence::Oscillatory
        };
        Ok(KernelValue {
            value,
            route: Route::Pathsum,
            convergence,
            terms,
            warnings,
        })
    }

    /// Smallest L such that every label beyond the box is negligible.
    pub fn auto_level_cutoff(&self, damping: f64) -> Result<usize> {
        let r = self.rs.rank;
        for big_l in 0..MAX_LEVEL {
            let ok = (0..r).all(|i| {
                let mut l = vec![0i64; r];
                l[i] = big_l as i64 + 1;
                let lam = weyl::casimir_eigenvalue(&self.rs, &l).unwrap_or(0.0);
                let d = self.dimension_f64(&l);
                lam * damping - 2.0 * d.ln() >= SPECTRAL_LOG_CUT
            });
            if ok {
                return Ok(big_l);
            }
        }
        Err(Error::Resource(
            "spectral level cutoff exceeds the supported maximum".into(),
        ))
    }

    fn dimension_f64(&self, l: &[i64]) -> f64 {
        let n = linalg::add(&self.rs.weight(l), &self.rs.rho);
        self.rs
            .positive_roots
            .iter()
            .map(|a| dot(a, &n) / dot(a, &self.rs.rho))
            .product()
    }

    pub fn compact_spectral(
        &self,
        phi: &[f64],
        time: &TimeParameter,
        opts: &KernelOptions,
    ) -> Result<KernelValue> {
        self.check_rank(phi.len())?;
        time.validate()?;
        let delta = time.damping();
        if delta <= 0.0 && opts.level_cutoff.is_none() {
            return Err(Error::Divergent(
                "the spectral series needs eps > 0 (or heat mode); set a level cutoff to force a partial sum".into(),
            ));
        }
        let cutoff = match opts.level_cutoff {
            Some(l) => l,
            None => self.auto_level_cutoff(delta)?,
        };
        let r = self.rs.rank;
        let count = ((cutoff + 1) as f64).powi(r as i32);
        if count * self.group.order() as f64 > 5e9 {
            return Err(Error::Resource(format!(
                "spectral sum with {count:.3e} labels is too large"
            )));
        }
        let z = linalg::to_complex(phi);
        let t = time.value();
        let (value, terms) = self.with_wall_limit(&z, opts.wall_limit, |x| {
            // χ_l(φ) = Σ_σ ε_σ e^{i n·σᵀφ} / ((2i)^p w(φ)).
            let psi: Vec<(Vec<C64>, f64)> = self
                .group
                .elements
                .iter()
                .map(|s| (s.inverse().apply_complex(x), f64::from(s.parity)))
                .collect();
            let denom = C64::new(0.0, 2.0).powi(self.rs.num_positive as i32)
                * weyl::weyl_function(&self.rs, x);
            let mut acc = C64::new(0.0, 0.0);
            let mut l = vec![0i64; r];
            let mut n_terms = 0usize;
            loop {
                let n = linalg::add(&self.rs.weight(&l), &self.rs.rho);
                let d: f64 = self
                    .rs
                    .positive_roots
                    .iter()
                    .map(|a| dot(a, &n) / dot(a, &self.rs.rho))
                    .product();
                let lam = (linalg::norm2(&n) - self.rs.rho2()) / self.rs.lambda;
                let mut num = C64::new(0.0, 0.0);
                for (p, eps) in &psi {
                    num += *eps * (C64::new(0.0, 1.0) * linalg::rdot(&n, p)).exp();
                }
                acc += d * num * (C64::new(0.0, -lam) * t).exp();
                n_terms += 1;
                let mut i = 0;
                loop {
                    if i == r {
                        return Ok((acc / (denom * self.v_g), n_terms));
                    }
                    l[i] += 1;
                    if l[i] as usize <= cutoff {
                        break;
                    }
                    l[i] = 0;
                    i += 1;
                }
            }
        })?;
        let mut warnings = Vec::new();
        let convergence = if delta > 0.0 {
            Convergence::Convergent
        } else {
            warnings.push(format!(
                "eps = 0: partial sum up to level {cutoff} of a divergent series"
            ));
            Convergence::Oscillatory
        };
        Ok(KernelValue {
            value,
            route: Route::Spectral,
            convergence,
            terms,
            warnings,
        })
    }

    /// Path sum over a domain: images φ + 2πm̃ with m̃ in the domain
    /// sublattice, θ entering through the complex radial vector.
    pub fn noncompact_pathsum(
        &self,
        frame: &Frame,
        sublattice: &WindingLattice,
        point: &RadialPoint,
        time: &TimeParameter,
        opts: &KernelOptions,
    ) -> Result<KernelValue> {
        self.check_rank(point.rank())?;
        time.validate()?;
        let z = frame.point_to_cartesian(point);
        let (value, terms) = self.with_wall_limit(&z, opts.wall_limit, |x| {
            self.sum_images(sublattice, x, time, opts.tol)
        })?;
        let b = point.rank() - point.num_real();
        let a = sublattice.active_rank();
        let mut warnings = Vec::new();
        let convergence = if time.is_heat() && b > 0 {
            warnings.push("heat mode on a non-compact direction: the theta factor grows".into());
            Convergence::Growing
        } else if time.damping() <= 0.0 && a > 0 {
            warnings.push(format!(
                "eps = 0: image sum truncated at radius {OSCILLATORY_RADIUS:.6} (conditionally convergent)"
            ));
            Convergence::Oscillatory
        } else {
            Convergence::Convergent
        };
        Ok(KernelValue {
            value,
            route: Route::Pathsum,
            convergence,
            terms,
            warnings,
        })
    }
}

fn require_a1(rs: &RootSystem, what: &str) -> Result<()> {
    if rs.family != Family::A || rs.rank != 1 {
        return Err(Error::Unsupported(format!(
            "{what} is implemented for rank 1 (SU(2)) only"
        )));
    }
    Ok(())
}

/// SU(2) path sum written out directly (|α| = 1, Λ = 2), images m ∈ [−M, M].
pub fn su2_pathsum_closed(phi: f64, time: &TimeParameter, max_m: i64) -> C64 {
    let t = time.value();
    let i = C64::new(0.0, 1.0);
    let mut acc = C64::new(0.0, 0.0);
    for m in -max_m..=max_m {
        let x = phi + 4.0 * PI * m as f64;
        acc += x / (2.0 * (phi / 2.0).sin()) * (i * x * x / (2.0 * t) + i * t / 8.0).exp();
    }
    flat_prefactor(3, t) * acc
}

/// SU(2) spectral series written out directly, n = 1..=N.
pub fn su2_spectral_closed(phi: f64, time: &TimeParameter, max_n: u32) -> C64 {
    let t = time.value();
    let mut acc = C64::new(0.0, 0.0);
    for n in 1..=max_n {
        let n = f64::from(n);
        acc += n * (n * phi / 2.0).sin() / (phi / 2.0).sin()
            * (C64::new(0.0, -(n * n - 1.0) / 8.0) * t).exp();
    }
    acc / (32.0 * 2f64.sqrt() * PI * PI)
}

/// SU(1,1) kernel in the domain without windings:
/// (4πit)^{−3/2} θ/(2 sinh(θ/2)) exp(−iθ²/2t + it/8).
pub fn su11_d0_closed(theta: f64, time: &TimeParameter) -> C64 {
    let t = time.value();
    let i = C64::new(0.0, 1.0);
    flat_prefactor(3, t) * theta / (2.0 * (theta / 2.0).sinh())
        * (-i * theta * theta / (2.0 * t) + i * t / 8.0).exp()
}

fn su2_k(lambda: C64) -> C64 {
    (C64::new(0.25, 0.0) + 2.0 * lambda).sqrt()
}

fn check_pole(lambda: C64) -> Result<()> {
    if lambda.im.abs() < 1e-12 && lambda.re >= -0.125 + 1e-12 {
        let n = (8.0 * lambda.re + 1.0).sqrt().round();
        if n >= 1.0 && (lambda.re - (n * n - 1.0) / 8.0).abs() < 1e-12 {
            return Err(Error::Pole(n as i64));
        }
    }
    Ok(())
}

/// SU(2) resolvent sin k(2π−φ)/(8√2π sin 2kπ sin(φ/2)), k² = ¼ + 2λ.
pub fn su2_resolvent(phi: f64, lambda: C64) -> Result<C64> {
    if !(phi > 0.0 && phi < TWO_PI) {
        return Err(Error::Argument(format!(
            "phi must lie in (0, 2pi), got {phi}"
        )));
    }
    check_pole(lambda)?;
    let k = su2_k(lambda);
    let denom_const = 8.0 * 2f64.sqrt() * PI * (phi / 2.0).sin();
    if k.norm() < 1e-7 {
        // Removable point k = 0: sin k(2π−φ)/sin 2kπ → (2π−φ)/(2π).
        return Ok(C64::new((TWO_PI - phi) / TWO_PI / denom_const, 0.0));
    }
    Ok((k * (TWO_PI - phi)).sin() / ((k * TWO_PI).sin() * denom_const))
}

/// Locate a pole of the SU(2) resolvent near `guess` by secant iteration on 1/G.
pub fn su2_find_pole(phi: f64, guess: C64) -> Result<C64> {
    let inv = |l: C64| -> Result<C64> {
        match su2_resolvent(phi, l) {
            Ok(g) => Ok(1.0 / g),
            Err(Error::Pole(_)) => Ok(C64::new(0.0, 0.0)),
            Err(e) => Err(e),
        }
    };
    let mut x0 = guess;
    let mut x1 = guess + C64::new(1e-3, 1e-3);
    let mut f0 = inv(x0)?;
    let mut f1 = inv(x1)?;
    for _ in 0..100 {
        if f1.norm() < 1e-15 || (x1 - x0).norm() < 1e-14 {
            return Ok(x1);
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = inv(x1)?;
    }
    Err(Error::Internal("pole search did not converge".into()))
}

/// (1/2πi)∮ f over a circle of radius `r` around `z0` (trapezoid rule).
pub fn contour_residue(
    mut f: impl FnMut(C64) -> Result<C64>,
    z0: C64,
    r: f64,
    nodes: usize,
) -> Result<C64> {
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..nodes {
        let e = C64::from_polar(1.0, TWO_PI * j as f64 / nodes as f64);
        acc += f(z0 + r * e)? * r * e;
    }
    Ok(acc / nodes as f64)
}

/// SU(1,1) resolvent in the domain without windings,
/// −i·e^{−sθ}/(8√2π sinh(θ/2)) with s the principal √(¼+2λ).
pub fn su11_resolvent_d0(theta: f64, lambda: C64) -> Result<C64> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::Argument(format!(
            "theta must be positive, got {theta}"
        )));
    }
    if (lambda + 0.125).norm() < 1e-12 {
        return Err(Error::BranchPoint);
    }
    let s = su2_k(lambda);
    Ok(C64::new(0.0, -1.0) * (-s * theta).exp() / (8.0 * 2f64.sqrt() * PI * (theta / 2.0).sinh()))
}

/// Radial samples on the uniform alcove grid φ_j = 2πj/(N−1), j = 0..N−1.
#[derive(Clone, Debug)]
pub struct RadialSamples {
    pub values: Vec<C64>,
}

impl RadialSamples {
    pub fn grid(n: usize) -> Vec<f64> {
        (0..n).map(|j| TWO_PI * j as f64 / (n - 1) as f64).collect()
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(f64) -> Result<C64>) -> Result<Self> {
        let values = Self::grid(n)
            .into_iter()
            .map(&mut f)
            .collect::<Result<_>>()?;
        Ok(RadialSamples { values })
    }

    /// Four-point Lagrange interpolation.
    pub fn interpolate(&self, phi: f64) -> C64 {
        let n = self.values.len();
        let h = TWO_PI / (n - 1) as f64;
        let x = (phi / h).clamp(0.0, (n - 1) as f64);
        let j0 = (x.floor() as isize - 1).clamp(0, n as isize - 4) as usize;
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..4 {
            let mut w = 1.0;
            for b in 0..4 {
                if a != b {
                    w *= (x - (j0 + b) as f64) / (a as f64 - b as f64);
                }
            }
            acc += self.values[j0 + a] * w;
        }
        acc
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            dp = n as f64 * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        xs[i] = x;
        ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (xs, ws)
}

/// Convolution of two class functions on SU(2):
/// ∫ f dμ over SU(2) for a central function sampled on [0, 2π], with
/// dμ = V_{G/T} Λ^{1/2} · 4 sin²(φ/2) dφ on the alcove. The integrand extends
/// to a smooth periodic function on the torus, so the trapezoid rule is
/// spectrally accurate.
pub fn radial_integral(rs: &RootSystem, f: &RadialSamples) -> Result<C64> {
    require_a1(rs, "radial integration")?;
    let n = f.values.len();
    if n < 3 {
        return Err(Error::Argument(
            "radial integration needs at least 3 samples".into(),
        ));
    }
    let h = TWO_PI / (n - 1) as f64;
    let norm = volumes::coset_volume(rs) * rs.lambda.sqrt() * 4.0;
    let sum: C64 = RadialSamples::grid(n)
        .iter()
        .zip(&f.values)
        .enumerate()
        .map(|(j, (p, v))| {
            let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
            v * (w * (p / 2.0).sin().powi(2))
        })
        .sum();
    Ok(sum * h * norm)
}

/// (f⋆g)(φ) = V_{G/T} Λ^{1/2} · 4∫₀^{2π} sin²(φ′/2) f(φ′) · ½∫₋₁¹ g(φ″) dv dφ′,
/// with cos(φ″/2) = cos(φ/2)cos(φ′/2) + sin(φ/2)sin(φ′/2)·v.
pub fn radial_convolve(
    rs: &RootSystem,
    f: &RadialSamples,
    g: &RadialSamples,
) -> Result<RadialSamples> {
    require_a1(rs, "radial convolution")?;
    let n = f.values.len();
    if n < 5 || g.values.len() < 4 {
        return Err(Error::Argument(
            "radial convolution needs at least 5 samples".into(),
        ));
    }
    let grid = RadialSamples::grid(n);
    let h = TWO_PI / (n - 1) as f64;
    let (vs, ws) = gauss_legendre(24);
    let norm = volumes::coset_volume(rs) * rs.lambda.sqrt() * 4.0;
    let out = grid
        .iter()
        .map(|&phi| {
            let (s, c) = (phi / 2.0).sin_cos();
            let mut acc = C64::new(0.0, 0.0);
            for (j, &pp) in grid.iter().enumerate() {
                let (s1, c1) = (pp / 2.0).sin_cos();
                let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
                let mut inner = C64::new(0.0, 0.0);
                for (v, wv) in vs.iter().zip(&ws) {
                    let cc = (c * c1 + s * s1 * v).clamp(-1.0, 1.0);
                    inner += g.interpolate(2.0 * cc.acos()) * *wv;
                }
                acc += w * s1 * s1 * f.values[j] * inner * 0.5;
            }
            acc * h * norm
        })
        .collect();
    Ok(RadialSamples { values: out })
}

/// A complete kernel evaluation request. Without a domain the compact
/// group is meant and both routes are available; with one, only the path sum.
#[derive(Clone, Debug)]
pub struct KernelRequest {
    pub domain: Option<EvolutionDomain>,
    pub point: RadialPoint,
    pub time: TimeParameter,
    pub options: KernelOptions,
}

impl KernelRequest {
    pub fn compact(phi: Vec<f64>, time: TimeParameter) -> Self {
        KernelRequest {
            domain: None,
            point: RadialPoint::real(phi),
            time,
            options: KernelOptions::default(),
        }
    }

    pub fn in_domain(domain: EvolutionDomain, point: RadialPoint, time: TimeParameter) -> Self {
        KernelRequest {
            domain: Some(domain),
            point,
            time,
            options: KernelOptions::default(),
        }
    }

    pub fn evaluate(&self, engine: &KernelEngine, route: Route) -> Result<KernelValue> {
        match (&self.domain, route) {
            (None, _) if !self.point.is_real() => Err(Error::Argument(
                "a compact request needs an all-real radial point".into(),
            )),
            (None, Route::Pathsum) => {
                engine.compact_pathsum(&self.point.values, &self.time, &self.options)
            }
            (None, Route::Spectral) => {
                engine.compact_spectral(&self.point.values, &self.time, &self.options)
            }
            (Some(d), Route::Pathsum) => {
                if d.signature != self.point.signature {
                    return Err(Error::Argument(format!(
                        "point signature {} does not match domain {} ({})",
                        self.point.mask_string(),
                        d.label,
                        d.mask_string()
                    )));
                }
                engine.noncompact_pathsum(
                    &d.frame,
                    &d.sublattice,
                    &self.point,
                    &self.time,
                    &self.options,
                )
            }
            (Some(d), Route::Spectral) => Err(Error::Unsupported(format!(
                "no spectral expansion exists on the non-compact domain {} of {}",
                d.label, d.group
            ))),
        }
    }
}
