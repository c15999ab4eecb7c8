//! Classical root systems in the Cartesian coordinates used throughout.
//!
//! A-family coordinates pair up the defining-representation weights: axis
//! `d_j` separates the pair (2j, 2j+1) and the `s_j` axes separate the block
//! sums. This reproduces x̂ = γ₁, γ₂ = −½x̂ + (√3/2)ŷ for A2 and the A3 frame in
//! which the SU(p,q) and SL(4,ℝ) domains are axis aligned. C-family weights
//! are paired the same way (C3: γ₁ = x̂, γ₃ = √2ẑ). B uses εᵢ directly and D
//! uses εᵢ/√2 so that every D root has unit length.

use crate::error::{Error, Result};
use crate::linalg::{self, dot, norm2};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            _ => Err(Error::Config(format!(
                "unknown root family '{s}' (expected A, B, C or D)"
            ))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub simple_roots: Vec<Vec<f64>>,
    pub positive_roots: Vec<Vec<f64>>,
    /// Expansion of each positive root over the simple roots.
    pub positive_coefficients: Vec<Vec<i64>>,
    pub highest_root: Vec<f64>,
    pub highest_coefficients: Vec<i64>,
    pub fundamental_weights: Vec<Vec<f64>>,
    pub rho: Vec<f64>,
    pub lambda: f64,
    /// Group dimension n = r + 2p.
    pub dim: usize,
    /// Number of positive roots p.
    pub num_positive: usize,
    /// Overall factor applied on top of the default normalization.
    pub scale: f64,
}

/// Orthonormal axes (in ε-space of dimension `n`) for the paired A-family
/// frame. Returns the axes in storage order d₁, s₁, d₂, s₂, ….
pub fn paired_a_axes(n: usize) -> Vec<Vec<f64>> {
    let pairs = n / 2;
    let mut blocks: Vec<Vec<usize>> = (0..pairs).map(|j| vec![2 * j, 2 * j + 1]).collect();
    if n % 2 == 1 {
        blocks.push(vec![n - 1]);
    }
    let d_axes: Vec<Vec<f64>> = (0..pairs)
        .map(|j| {
            let mut v = vec![0.0; n];
            v[2 * j] = std::f64::consts::FRAC_1_SQRT_2;
            v[2 * j + 1] = -std::f64::consts::FRAC_1_SQRT_2;
            v
        })
        .collect();
    let mut s_axes = Vec::new();
    for j in 1..blocks.len() {
        let head: Vec<usize> = blocks[..j].iter().flatten().copied().collect();
        let next = &blocks[j];
        let mut v = vec![0.0; n];
        for &i in &head {
            v[i] = 1.0 / head.len() as f64;
        }
        for &i in next {
            v[i] = -1.0 / next.len() as f64;
        }
        let nv = norm2(&v).sqrt();
        s_axes.push(linalg::scale(&v, 1.0 / nv));
    }
    let mut axes = Vec::with_capacity(n - 1);
    for j in 0..pairs {
        axes.push(d_axes[j].clone());
        if j < s_axes.len() {
            axes.push(s_axes[j].clone());
        }
    }
    axes.extend(s_axes.iter().skip(pairs).cloned());
    axes
}

/// Weights of the defining representation of A_{n−1} in the paired frame:
/// eigenvalues of a torus element are exp(i μₖ·φ).
pub fn a_defining_weights(rank: usize) -> Vec<Vec<f64>> {
    let n = rank + 1;
    let axes = paired_a_axes(n);
    (0..n)
        .map(|k| {
            axes.iter()
                .map(|ax| ax[k] * std::f64::consts::FRAC_1_SQRT_2)
                .collect()
        })
        .collect()
}

/// The C-family ε-vectors in the paired frame (|εₖ|² = ½).
pub fn c_epsilon_vectors(rank: usize) -> Vec<Vec<f64>> {
    let pairs = rank / 2;
    let mut out = Vec::with_capacity(rank);
    for j in 0..pairs {
        let mut a = vec![0.0; rank];
        a[2 * j] = 0.5;
        a[2 * j + 1] = 0.5;
        let mut b = vec![0.0; rank];
        b[2 * j] = -0.5;
        b[2 * j + 1] = 0.5;
        out.push(a);
        out.push(b);
    }
    if rank % 2 == 1 {
        let mut v = vec![0.0; rank];
        v[rank - 1] = std::f64::consts::FRAC_1_SQRT_2;
        out.push(v);
    }
    out
}

/// ε-vectors for the B (unit) and D (1/√2) families.
pub fn bd_epsilon_vectors(family: Family, rank: usize) -> Vec<Vec<f64>> {
    let s = if family == Family::D {
        std::f64::consts::FRAC_1_SQRT_2
    } else {
        1.0
    };
    (0..rank)
        .map(|i| {
            let mut v = vec![0.0; rank];
            v[i] = s;
            v
        })
        .collect()
}

fn default_simple_roots(family: Family, rank: usize) -> Result<Vec<Vec<f64>>> {
    match family {
        Family::A => {
            let mu = a_defining_weights(rank);
            Ok((0..rank).map(|i| linalg::sub(&mu[i], &mu[i + 1])).collect())
        }
        Family::B | Family::D => {
            let e = bd_epsilon_vectors(family, rank);
            let mut roots: Vec<Vec<f64>> = (0..rank - 1)
                .map(|i| linalg::sub(&e[i], &e[i + 1]))
                .collect();
            if family == Family::B {
                roots.push(e[rank - 1].clone());
            } else {
                roots.push(linalg::add(&e[rank - 2], &e[rank - 1]));
            }
            Ok(roots)
        }
        Family::C => {
            let e = c_epsilon_vectors(rank);
            let mut roots: Vec<Vec<f64>> = (0..rank - 1)
                .map(|i| linalg::sub(&e[i], &e[i + 1]))
                .collect();
            roots.push(linalg::scale(&e[rank - 1], 2.0));
            Ok(roots)
        }
    }
}

pub fn reflect(gamma: &[f64], x: &[f64]) -> Vec<f64> {
    let f = 2.0 * dot(gamma, x) / norm2(gamma);
    x.iter().zip(gamma).map(|(xi, gi)| xi - f * gi).collect()
}

/// Build the root system with the default (per-family) normalization.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    if rank == 0 {
        return Err(Error::Config("rank must be at least 1".into()));
    }
    match family {
        Family::B if rank < 2 => {
            return Err(Error::Config(
                "B family requires rank >= 2 (B1 coincides with A1)".into(),
            ))
        }
        Family::C if rank < 2 => {
            return Err(Error::Config(
                "C family requires rank >= 2 (C1 coincides with A1)".into(),
            ))
        }
        Family::D if rank < 3 => return Err(Error::Config("D family requires rank >= 3".into())),
        _ => {}
    }
    if rank > 12 {
        return Err(Error::Config("rank above 12 is not supported".into()));
    }
    let simple = default_simple_roots(family, rank)?;
    from_simple_roots(family, simple, 1.0)
}

fn from_simple_roots(family: Family, simple: Vec<Vec<f64>>, scale: f64) -> Result<RootSystem> {
    let r = simple.len();
    let basis = linalg::matrix_from_rows(&simple).transpose();
    let inv = basis
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Internal("simple roots are linearly dependent".into()))?;

    // Closure of the simple roots under simple reflections.
    let key = |v: &[f64]| linalg::grid_key(v.iter().copied(), 1e-9);
    let mut seen = std::collections::HashSet::new();
    let mut roots: Vec<Vec<f64>> = Vec::new();
    let mut queue: std::collections::VecDeque<Vec<f64>> = simple.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        if !seen.insert(key(&v)) {
            continue;
        }
        for g in &simple {
            let w = reflect(g, &v);
            if !seen.contains(&key(&w)) {
                queue.push_back(w);
            }
        }
        roots.push(v);
        if roots.len() > 10_000 {
            return Err(Error::Internal("root closure did not terminate".into()));
        }
    }

    let mut positive: Vec<(Vec<i64>, Vec<f64>)> = Vec::new();
    for v in roots {
        let c = linalg::mat_vec(&inv, &v);
        let ci: Vec<i64> = c.iter().map(|x| x.round() as i64).collect();
        if c.iter().zip(&ci).any(|(x, y)| (x - *y as f64).abs() > 1e-8) {
            return Err(Error::Internal(
                "root with non-integral simple-root expansion".into(),
            ));
        }
        if ci.iter().all(|&x| x >= 0) {
            positive.push((ci, v));
        } else if !ci.iter().all(|&x| x <= 0) {
            return Err(Error::Internal("root with mixed-sign expansion".into()));
        }
    }
    positive.sort_by(|a, b| {
        let ha: i64 = a.0.iter().sum();
        let hb: i64 = b.0.iter().sum();
        ha.cmp(&hb).then_with(|| linalg::lex_cmp(&a.1, &b.1, 1e-12))
    });
    let p = positive.len();
    let (highest_coefficients, highest_root) = positive.last().cloned().unwrap();
    let positive_coefficients: Vec<Vec<i64>> = positive.iter().map(|x| x.0.clone()).collect();
    let positive_roots: Vec<Vec<f64>> = positive.into_iter().map(|x| x.1).collect();

    // Fundamental weights: γᵢ·w_j = (γᵢ²/2) δᵢⱼ.
    let gamma = linalg::matrix_from_rows(&simple);
    let gamma_inv = gamma
        .try_inverse()
        .ok_or_else(|| Error::Internal("singular simple-root matrix".into()))?;
    let fundamental_weights: Vec<Vec<f64>> = (0..r)
        .map(|j| {
            let half = norm2(&simple[j]) / 2.0;
            (0..r).map(|k| gamma_inv[(k, j)] * half).collect()
        })
        .collect();

    let mut rho = vec![0.0; r];
    for a in &positive_roots {
        linalg::axpy(&mut rho, 0.5, a);
    }
    let lambda = 2.0 / r as f64 * positive_roots.iter().map(|a| norm2(a)).sum::<f64>();

    Ok(RootSystem {
        family,
        rank: r,
        simple_roots: simple,
        positive_roots,
        positive_coefficients,
        highest_root,
        highest_coefficients,
        fundamental_weights,
        rho,
        lambda,
        dim: r + 2 * p,
        num_positive: p,
        scale,
    })
}

impl RootSystem {
    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn rho2(&self) -> f64 {
        norm2(&self.rho)
    }

    /// Cartan matrix M_jk = 2γ_j·γ_k/γ_j².
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let g = &self.simple_roots;
        g.iter()
            .map(|gj| {
                g.iter()
                    .map(|gk| (2.0 * dot(gj, gk) / norm2(gj)).round() as i64)
                    .collect()
            })
            .collect()
    }

    pub fn cartan_determinant(&self) -> f64 {
        let m = self.cartan_matrix();
        let r = self.rank;
        nalgebra::DMatrix::from_fn(r, r, |i, j| m[i][j] as f64).determinant()
    }

    /// Simple coroots 2γᵢ/γᵢ², the generators of the winding lattice.
    pub fn simple_coroots(&self) -> Vec<Vec<f64>> {
        self.simple_roots
            .iter()
            .map(|g| linalg::scale(g, 2.0 / norm2(g)))
            .collect()
    }

    /// All roots (positive followed by their negatives).
    pub fn all_roots(&self) -> Vec<Vec<f64>> {
        let mut out = self.positive_roots.clone();
        out.extend(self.positive_roots.iter().map(|a| linalg::scale(a, -1.0)));
        out
    }

    pub fn rescale(&self, factor: f64) -> Result<RootSystem> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(Error::Argument(format!(
                "rescale factor must be positive, got {factor}"
            )));
        }
        let s = |v: &Vec<f64>| linalg::scale(v, factor);
        Ok(RootSystem {
            family: self.family,
            rank: self.rank,
            simple_roots: self.simple_roots.iter().map(s).collect(),
            positive_roots: self.positive_roots.iter().map(s).collect(),
            positive_coefficients: self.positive_coefficients.clone(),
            highest_root: s(&self.highest_root),
            highest_coefficients: self.highest_coefficients.clone(),
            fundamental_weights: self.fundamental_weights.iter().map(s).collect(),
            rho: s(&self.rho),
            lambda: self.lambda * factor * factor,
            dim: self.dim,
            num_positive: self.num_positive,
            scale: self.scale * factor,
        })
    }

    /// Weight vector Σ lᵢ wᵢ for a dominant label `l`.
    pub fn weight(&self, l: &[i64]) -> Vec<f64> {
        let mut v = vec![0.0; self.rank];
        for (li, w) in l.iter().zip(&self.fundamental_weights) {
            linalg::axpy(&mut v, *li as f64, w);
        }
        v
    }
}
