//! Weyl groups, the Weyl function, characters and the exponential-sum calculus.

use crate::error::{Error, Result};
use crate::linalg::{self, dot, C64};
use crate::rootsys::RootSystem;
use nalgebra::DMatrix;
use std::collections::{BTreeMap, HashMap, VecDeque};

const DEDUP_STEP: f64 = 1e-9;
const MAX_ORDER: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct WeylElement {
    pub matrix: DMatrix<f64>,
    pub parity: i8,
}

impl WeylElement {
    pub fn identity(r: usize) -> Self {
        WeylElement {
            matrix: DMatrix::identity(r, r),
            parity: 1,
        }
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        linalg::mat_vec(&self.matrix, v)
    }

    pub fn apply_complex(&self, v: &[C64]) -> Vec<C64> {
        linalg::mat_cvec(&self.matrix, v)
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            matrix: &self.matrix * &other.matrix,
            parity: self.parity * other.parity,
        }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            matrix: self.matrix.transpose(),
            parity: self.parity,
        }
    }

    pub fn reflection(gamma: &[f64]) -> WeylElement {
        let r = gamma.len();
        let g2 = linalg::norm2(gamma);
        let matrix = DMatrix::from_fn(r, r, |i, j| {
            f64::from(u8::from(i == j)) - 2.0 * gamma[i] * gamma[j] / g2
        });
        WeylElement { matrix, parity: -1 }
    }

    fn key(&self) -> Vec<i64> {
        linalg::grid_key(self.matrix.iter().copied(), DEDUP_STEP)
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Closure of the simple reflections, identity first, breadth-first order.
pub fn generate_weyl_group(rs: &RootSystem) -> Result<WeylGroup> {
    let r = rs.rank;
    let gens: Vec<WeylElement> = rs
        .simple_roots
        .iter()
        .map(|g| WeylElement::reflection(g))
        .collect();
    let id = WeylElement::identity(r);
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    index.insert(id.key(), 0);
    let mut elements = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let e = g.compose(&elements[i]);
            let k = e.key();
            if !index.contains_key(&k) {
                index.insert(k, elements.len());
                queue.push_back(elements.len());
                elements.push(e);
                if elements.len() > MAX_ORDER {
                    return Err(Error::Internal(format!(
                        "Weyl group closure exceeded {MAX_ORDER} elements"
                    )));
                }
            }
        }
    }
    Ok(WeylGroup { elements })
}

/// Finite sum Σ cₖ exp(i vₖ·φ).
#[derive(Clone, Debug, Default)]
pub struct ExpSum {
    pub terms: Vec<(C64, Vec<f64>)>,
}

impl ExpSum {
    pub fn exponential(c: C64, v: Vec<f64>) -> Self {
        ExpSum {
            terms: vec![(c, v)],
        }
    }

    pub fn constant(rank: usize, c: C64) -> Self {
        Self::exponential(c, vec![0.0; rank])
    }

    /// Merge equal frequencies and drop cancelled terms.
    pub fn from_terms(terms: Vec<(C64, Vec<f64>)>) -> Self {
        let scale = terms.iter().map(|t| t.0.norm()).fold(0.0, f64::max);
        let mut merged: BTreeMap<Vec<i64>, (C64, Vec<f64>)> = BTreeMap::new();
        for (c, v) in terms {
            let k = linalg::grid_key(v.iter().copied(), DEDUP_STEP);
            merged.entry(k).and_modify(|e| e.0 += c).or_insert((c, v));
        }
        let cut = 1e-13 * scale;
        ExpSum {
            terms: merged.into_values().filter(|t| t.0.norm() > cut).collect(),
        }
    }

    pub fn eval(&self, phi: &[C64]) -> C64 {
        self.terms
            .iter()
            .map(|(c, v)| c * (C64::i() * linalg::rdot(v, phi)).exp())
            .sum()
    }

    pub fn eval_real(&self, phi: &[f64]) -> C64 {
        self.terms
            .iter()
            .map(|(c, v)| c * C64::from_polar(1.0, dot(v, phi)))
            .sum()
    }

    pub fn mul(&self, other: &ExpSum) -> ExpSum {
        let mut t = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                t.push((a * b, linalg::add(u, v)));
            }
        }
        ExpSum::from_terms(t)
    }

    pub fn add(&self, other: &ExpSum) -> ExpSum {
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        ExpSum::from_terms(t)
    }

    pub fn scale(&self, s: C64) -> ExpSum {
        ExpSum::from_terms(self.terms.iter().map(|(c, v)| (c * s, v.clone())).collect())
    }

    /// f∘σ: exp(i v·σφ) = exp(i (σᵀv)·φ).
    pub fn compose(&self, sigma: &WeylElement) -> ExpSum {
        let mt = sigma.matrix.transpose();
        ExpSum::from_terms(
            self.terms
                .iter()
                .map(|(c, v)| (*c, linalg::mat_vec(&mt, v)))
                .collect(),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn symmetrize(group: &WeylGroup, f: &ExpSum, signed: bool) -> ExpSum {
    let mut t = Vec::with_capacity(group.order() * f.terms.len());
    for s in &group.elements {
        let sign = if signed { f64::from(s.parity) } else { 1.0 };
        let mt = s.matrix.transpose();
        for (c, v) in &f.terms {
            t.push((c * sign, linalg::mat_vec(&mt, v)));
        }
    }
    ExpSum::from_terms(t)
}

/// D acting on exponentials: each term picks up Π_{α>0} i(α·v).
///
/// The plain root α (not the coroot) is the normalization under which
/// (2^p/Π α·ρ)·Dw|₀ = N(W) holds.
pub fn apply_intertwiner(rs: &RootSystem, f: &ExpSum) -> ExpSum {
    ExpSum::from_terms(
        f.terms
            .iter()
            .map(|(c, v)| {
                let factor: C64 = rs
                    .positive_roots
                    .iter()
                    .map(|a| C64::new(0.0, dot(a, v)))
                    .product();
                (c * factor, v.clone())
            })
            .collect(),
    )
}

/// w(φ) = Π_{α>0} sin(α·φ/2) for complex φ.
pub fn weyl_function(rs: &RootSystem, phi: &[C64]) -> C64 {
    rs.positive_roots
        .iter()
        .map(|a| (linalg::rdot(a, phi) * 0.5).sin())
        .product()
}

pub fn weyl_function_real(rs: &RootSystem, phi: &[f64]) -> f64 {
    rs.positive_roots
        .iter()
        .map(|a| (dot(a, phi) * 0.5).sin())
        .product()
}

/// w(φ) expanded as an exponential sum.
pub fn weyl_function_expsum(rs: &RootSystem) -> ExpSum {
    let r = rs.rank;
    let mut acc = ExpSum::constant(r, C64::new(1.0, 0.0));
    let half_i = C64::new(0.0, -0.5); // 1/(2i)
    for a in &rs.positive_roots {
        let f = ExpSum::from_terms(vec![
            (half_i, linalg::scale(a, 0.5)),
            (-half_i, linalg::scale(a, -0.5)),
        ]);
        acc = acc.mul(&f);
    }
    acc
}

/// Smallest |sin(α·φ/2)| over positive roots, with the offending root index.
pub fn wall_distance(rs: &RootSystem, phi: &[C64]) -> (f64, usize) {
    rs.positive_roots
        .iter()
        .enumerate()
        .map(|(i, a)| ((linalg::rdot(a, phi) * 0.5).sin().norm(), i))
        .fold(
            (f64::INFINITY, 0),
            |acc, x| if x.0 < acc.0 { x } else { acc },
        )
}

/// Numerator Σ_σ ε_σ exp(i (σn)·φ) of the Weyl character formula.
pub fn character_numerator(group: &WeylGroup, n: &[f64]) -> ExpSum {
    symmetrize(
        group,
        &ExpSum::exponential(C64::new(1.0, 0.0), n.to_vec()),
        true,
    )
}

fn check_label(rs: &RootSystem, l: &[i64]) -> Result<()> {
    if l.len() != rs.rank || l.iter().any(|&x| x < 0) {
        return Err(Error::Argument(format!(
            "dominant label must have {} nonnegative entries, got {:?}",
            rs.rank, l
        )));
    }
    Ok(())
}

pub const LIMIT_STEPS: [f64; 3] = [0.04, 0.02, 0.01];

/// Symmetric Richardson extrapolation of f(ε) + f(−ε) at ε → 0 over the
/// geometric steps in [`LIMIT_STEPS`] (error O(ε⁶)).
pub fn richardson_limit(mut f: impl FnMut(f64) -> Result<C64>) -> Result<C64> {
    let mut g = Vec::with_capacity(LIMIT_STEPS.len());
    for &e in &LIMIT_STEPS {
        g.push((f(e)? + f(-e)?) * 0.5);
    }
    // Halving steps: eliminate ε² then ε⁴.
    let r1: Vec<C64> = (0..g.len() - 1)
        .map(|i| (g[i + 1] * 4.0 - g[i]) / 3.0)
        .collect();
    Ok((r1[1] * 16.0 - r1[0]) / 15.0)
}

/// χ_l(φ); with `limit` the value is extrapolated along φ ± ερ, which is how
/// wall points (and the origin, giving d_l) are reached.
pub fn character(
    rs: &RootSystem,
    group: &WeylGroup,
    l: &[i64],
    phi: &[C64],
    limit: bool,
) -> Result<C64> {
    check_label(rs, l)?;
    let n = linalg::add(&rs.weight(l), &rs.rho);
    let num = character_numerator(group, &n);
    let p = rs.num_positive as i32;
    let two_i_p = C64::new(0.0, 2.0).powi(p);
    let eval = |x: &[C64]| -> Result<C64> {
        let (d, idx) = wall_distance(rs, x);
        if d < 1e-12 {
            return Err(Error::Singular(format!(
                "Weyl function vanishes (positive root #{idx} factor is zero)"
            )));
        }
        Ok(num.eval(x) / (two_i_p * weyl_function(rs, x)))
    };
    let (d, _) = wall_distance(rs, phi);
    if !limit || d > 1e-3 {
        return eval(phi);
    }
    richardson_limit(|e| {
        let x: Vec<C64> = phi.iter().zip(&rs.rho).map(|(z, r)| z + r * e).collect();
        eval(&x)
    })
}

/// Weyl dimension formula Π (α·n)/(α·ρ), rounded.
pub fn dimension(rs: &RootSystem, l: &[i64]) -> Result<u64> {
    check_label(rs, l)?;
    let n = linalg::add(&rs.weight(l), &rs.rho);
    let d: f64 = rs
        .positive_roots
        .iter()
        .map(|a| dot(a, &n) / dot(a, &rs.rho))
        .product();
    let rounded = d.round();
    if (d - rounded).abs() > 1e-9 * rounded.max(1.0) {
        return Err(Error::Internal(format!(
            "non-integral dimension {d} for label {l:?}"
        )));
    }
    Ok(rounded as u64)
}

/// λ_l = (n² − ρ²)/Λ.
pub fn casimir_eigenvalue(rs: &RootSystem, l: &[i64]) -> Result<f64> {
    check_label(rs, l)?;
    let n = linalg::add(&rs.weight(l), &rs.rho);
    Ok((linalg::norm2(&n) - rs.rho2()) / rs.lambda)
}
