//! Radial points, winding lattices, image sets and alcove canonicalization.

use crate::error::{Error, Result};
use crate::linalg::{self, dot, C64};
use crate::rootsys::RootSystem;
use crate::weyl::{WeylElement, WeylGroup};
use serde::Serialize;
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;
pub const MAX_POINTS: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Coord {
    Real,
    Imaginary,
}

impl Coord {
    pub fn letter(self) -> char {
        match self {
            Coord::Real => 'R',
            Coord::Imaginary => 'I',
        }
    }
}

/// Radial coordinates: coordinate j contributes φ_j (REAL) or iθ_j (IMAGINARY)
/// along axis j of the frame it is interpreted in.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialPoint {
    pub values: Vec<f64>,
    pub signature: Vec<Coord>,
}

impl RadialPoint {
    pub fn new(values: Vec<f64>, signature: Vec<Coord>) -> Result<Self> {
        if values.len() != signature.len() {
            return Err(Error::Argument(format!(
                "radial point has {} values but {} signature flags",
                values.len(),
                signature.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Argument(
                "radial point has non-finite coordinates".into(),
            ));
        }
        Ok(RadialPoint { values, signature })
    }

    pub fn real(values: Vec<f64>) -> Self {
        let n = values.len();
        RadialPoint {
            values,
            signature: vec![Coord::Real; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn num_real(&self) -> usize {
        self.signature.iter().filter(|c| **c == Coord::Real).count()
    }

    pub fn is_real(&self) -> bool {
        self.signature.iter().all(|c| *c == Coord::Real)
    }

    /// Coordinates as complex numbers (φ_j or iθ_j).
    pub fn complex_coords(&self) -> Vec<C64> {
        self.values
            .iter()
            .zip(&self.signature)
            .map(|(v, s)| match s {
                Coord::Real => C64::new(*v, 0.0),
                Coord::Imaginary => C64::new(0.0, *v),
            })
            .collect()
    }

    pub fn mask_string(&self) -> String {
        self.signature.iter().map(|c| c.letter()).collect()
    }
}

/// Orthonormal coordinate axes (rows, in Cartesian root space).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Frame {
    pub axes: Vec<Vec<f64>>,
}

impl Frame {
    pub fn identity(r: usize) -> Self {
        Frame {
            axes: (0..r)
                .map(|i| (0..r).map(|j| f64::from(u8::from(i == j))).collect())
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        let r = self.axes.len();
        self.axes
            .iter()
            .enumerate()
            .all(|(i, a)| (0..r).all(|j| (a[j] - f64::from(u8::from(i == j))).abs() < 1e-15))
    }

    pub fn rank(&self) -> usize {
        self.axes.len()
    }

    /// Cartesian vector Σ_j c_j·axis_j.
    pub fn to_cartesian(&self, c: &[C64]) -> Vec<C64> {
        let r = self.rank();
        let mut out = vec![C64::new(0.0, 0.0); r];
        for (cj, ax) in c.iter().zip(&self.axes) {
            for k in 0..r {
                out[k] += cj * ax[k];
            }
        }
        out
    }

    pub fn to_cartesian_real(&self, c: &[f64]) -> Vec<f64> {
        let r = self.rank();
        let mut out = vec![0.0; r];
        for (cj, ax) in c.iter().zip(&self.axes) {
            linalg::axpy(&mut out, *cj, ax);
        }
        out
    }

    pub fn coords(&self, x: &[C64]) -> Vec<C64> {
        self.axes.iter().map(|ax| linalg::rdot(ax, x)).collect()
    }

    pub fn coords_real(&self, x: &[f64]) -> Vec<f64> {
        self.axes.iter().map(|ax| dot(ax, x)).collect()
    }

    pub fn point_to_cartesian(&self, p: &RadialPoint) -> Vec<C64> {
        self.to_cartesian(&p.complex_coords())
    }
}

/// Winding lattice {Σ kᵢ gᵢ}: kernel translations are 2π times these vectors.
#[derive(Clone, Debug, Serialize)]
pub struct WindingLattice {
    pub lambda: f64,
    /// Generators of the full lattice (simple coroots 2γᵢ/γᵢ²).
    pub full_generators: Vec<Vec<f64>>,
    /// Active generators (Cartesian).
    pub generators: Vec<Vec<f64>>,
    /// Active generators over the full generators, in Hermite normal form.
    pub coefficients: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticePoint {
    /// Integer coefficients over the active generators.
    pub coeffs: Vec<i64>,
    /// The lattice vector m (translation is 2πm).
    pub vector: Vec<f64>,
}

pub fn winding_lattice(rs: &RootSystem) -> WindingLattice {
    let g = rs.simple_coroots();
    let r = rs.rank;
    WindingLattice {
        lambda: rs.lambda,
        full_generators: g.clone(),
        generators: g,
        coefficients: (0..r)
            .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
            .collect(),
    }
}

impl WindingLattice {
    pub fn rank(&self) -> usize {
        self.full_generators.len()
    }

    pub fn active_rank(&self) -> usize {
        self.generators.len()
    }

    pub fn is_full(&self) -> bool {
        self.generators.len() == self.full_generators.len()
    }

    pub fn vector(&self, coeffs: &[i64]) -> Vec<f64> {
        let mut v = vec![0.0; self.rank()];
        for (k, g) in coeffs.iter().zip(&self.generators) {
            linalg::axpy(&mut v, *k as f64, g);
        }
        v
    }

    /// Coefficients of a Cartesian vector over the active generators, if it
    /// lies in the lattice.
    pub fn coefficients_of(&self, v: &[f64]) -> Option<Vec<i64>> {
        let a = self.active_rank();
        if a == 0 {
            return if linalg::norm2(v) < 1e-16 {
                Some(vec![])
            } else {
                None
            };
        }
        let b = linalg::matrix_from_rows(&self.generators);
        let gram = &b * b.transpose();
        let rhs = &b * nalgebra::DVector::from_column_slice(v);
        let c = gram.lu().solve(&rhs)?;
        let ci: Vec<i64> = c.iter().map(|x| x.round() as i64).collect();
        let back = self.vector(&ci);
        if linalg::max_abs_diff(&back, v) < 1e-7 {
            Some(ci)
        } else {
            None
        }
    }

    /// Closest lattice vector to `x` (in units where the lattice spacing is the
    /// generator length), by rounding plus a ±1 neighbourhood search.
    pub fn closest(&self, x: &[f64]) -> Vec<i64> {
        let a = self.active_rank();
        if a == 0 {
            return vec![];
        }
        let b = linalg::matrix_from_rows(&self.generators);
        let gram = &b * b.transpose();
        let rhs = &b * nalgebra::DVector::from_column_slice(x);
        let c = gram
            .lu()
            .solve(&rhs)
            .unwrap_or_else(|| nalgebra::DVector::zeros(a));
        let base: Vec<i64> = c.iter().map(|v| v.round() as i64).collect();
        let mut best = base.clone();
        let mut best_d = f64::INFINITY;
        let span = if a <= 6 { 1 } else { 0 };
        for_each_box(&vec![-span; a], &vec![span; a], |off| {
            let k: Vec<i64> = base.iter().zip(off).map(|(p, q)| p + q).collect();
            let d = linalg::norm2(&linalg::sub(&self.vector(&k), x));
            if d < best_d - 1e-12 || ((d - best_d).abs() <= 1e-12 && k < best) {
                best_d = d;
                best = k;
            }
        });
        best
    }
}

fn for_each_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    let a = lo.len();
    if a == 0 {
        f(&[]);
        return;
    }
    let mut cur = lo.to_vec();
    loop {
        f(&cur);
        let mut i = 0;
        loop {
            if i == a {
                return;
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}

/// Integer structure of the projection of the full lattice onto the
/// imaginary axes of a frame: rows of `a_int` are the rationalized
/// projections, with `scales` the common factor per row.
#[derive(Clone, Debug)]
pub struct ImaginaryProjection {
    pub axes: Vec<usize>,
    pub a_int: Vec<Vec<i64>>,
    pub scales: Vec<f64>,
    echelon: Vec<Vec<i64>>,
    unimodular: Vec<Vec<i64>>,
    rank: usize,
}

impl ImaginaryProjection {
    pub fn new(lattice: &WindingLattice, frame: &Frame, signature: &[Coord]) -> Result<Self> {
        let r = lattice.rank();
        if frame.rank() != r || signature.len() != r {
            return Err(Error::Argument(format!(
                "signature/frame of rank {} does not match lattice rank {r}",
                signature.len()
            )));
        }
        let axes: Vec<usize> = (0..r)
            .filter(|&j| signature[j] == Coord::Imaginary)
            .collect();
        let mut a_int = Vec::new();
        let mut scales = Vec::new();
        for &j in &axes {
            let row: Vec<f64> = lattice
                .full_generators
                .iter()
                .map(|g| dot(&frame.axes[j], g))
                .collect();
            let (ints, s) = linalg::rationalize_row(&row, 1e-12).ok_or_else(|| {
                Error::Internal(format!(
                    "irrational lattice projection on axis {j}: {row:?}"
                ))
            })?;
            a_int.push(ints);
            scales.push(s);
        }
        let (echelon, unimodular, rank) = linalg::column_echelon(&a_int, r);
        Ok(ImaginaryProjection {
            axes,
            a_int,
            scales,
            echelon,
            unimodular,
            rank,
        })
    }

    /// Integer kernel: coefficients (over full generators) of the sublattice.
    pub fn kernel(&self) -> Vec<Vec<i64>> {
        let r = self.unimodular.len();
        (self.rank..r)
            .map(|c| (0..r).map(|i| self.unimodular[i][c]).collect())
            .collect()
    }

    /// Find a full-lattice vector m with frame components of `u + 2πm`
    /// vanishing on every imaginary axis.
    pub fn lift(&self, lattice: &WindingLattice, frame: &Frame, u: &[f64]) -> Option<Vec<f64>> {
        let mut target = Vec::with_capacity(self.axes.len());
        for (i, &j) in self.axes.iter().enumerate() {
            let t = -dot(&frame.axes[j], u) / (TWO_PI * self.scales[i]);
            let tr = t.round();
            if (t - tr).abs() > 1e-6 {
                return None;
            }
            target.push(tr as i64);
        }
        let y = linalg::solve_echelon(&self.echelon, self.rank, &target)?;
        let r = lattice.rank();
        let k: Vec<i64> = (0..r)
            .map(|i| (0..self.rank).map(|c| self.unimodular[i][c] * y[c]).sum())
            .collect();
        let mut m = vec![0.0; r];
        for (ki, g) in k.iter().zip(&lattice.full_generators) {
            linalg::axpy(&mut m, *ki as f64, g);
        }
        Some(m)
    }
}

/// Sublattice of translations with zero component along every imaginary axis.
pub fn domain_sublattice(
    lattice: &WindingLattice,
    frame: &Frame,
    signature: &[Coord],
) -> Result<WindingLattice> {
    let proj = ImaginaryProjection::new(lattice, frame, signature)?;
    let coefficients = linalg::hermite_rows(&proj.kernel());
    let generators: Vec<Vec<f64>> = coefficients
        .iter()
        .map(|k| {
            let mut v = vec![0.0; lattice.rank()];
            for (ki, g) in k.iter().zip(&lattice.full_generators) {
                linalg::axpy(&mut v, *ki as f64, g);
            }
            // Snap float noise on the imaginary axes to exact zero.
            for &j in &proj.axes {
                let c = dot(&frame.axes[j], &v);
                linalg::axpy(&mut v, -c, &frame.axes[j]);
            }
            v.iter()
                .map(|x| if x.abs() < 1e-13 { 0.0 } else { *x })
                .collect()
        })
        .collect();
    Ok(WindingLattice {
        lambda: lattice.lambda,
        full_generators: lattice.full_generators.clone(),
        generators,
        coefficients,
    })
}

fn sort_points(points: &mut [LatticePoint]) {
    points.sort_by(|a, b| {
        linalg::norm2(&a.vector)
            .partial_cmp(&linalg::norm2(&b.vector))
            .unwrap()
            .then_with(|| a.coeffs.cmp(&b.coeffs))
    });
}

/// Points whose squared distance |φ + 2πm|² lies within `extra` of the
/// minimum over the lattice.
fn points_within(lattice: &WindingLattice, phi: &[f64], extra: f64) -> Result<Vec<LatticePoint>> {
    let a = lattice.active_rank();
    if a == 0 {
        return Ok(vec![LatticePoint {
            coeffs: vec![],
            vector: vec![0.0; lattice.rank()],
        }]);
    }
    let b = linalg::matrix_from_rows(&lattice.generators);
    let gram = &b * b.transpose() * (TWO_PI * TWO_PI);
    let gram_inv = gram
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Internal("degenerate lattice generators".into()))?;
    let target: Vec<f64> = phi.iter().map(|x| -x / TWO_PI).collect();
    let c0 = lattice.closest(&target);
    let at = |k: &[i64]| {
        let m = lattice.vector(k);
        phi.iter()
            .zip(&m)
            .map(|(p, q)| (p + TWO_PI * q).powi(2))
            .sum::<f64>()
    };
    let d0 = at(&c0);
    let radius2 = d0 + extra;
    // Centre of the ellipsoid in coefficient space.
    let rhs = &b * nalgebra::DVector::from_column_slice(phi) * (-TWO_PI);
    let centre = &gram_inv * rhs;
    let mut lo = Vec::with_capacity(a);
    let mut hi = Vec::with_capacity(a);
    let mut count: f64 = 1.0;
    for i in 0..a {
        let w = (radius2 * gram_inv[(i, i)]).sqrt();
        let l = (centre[i] - w).floor() as i64;
        let h = (centre[i] + w).ceil() as i64;
        count *= (h - l + 1) as f64;
        lo.push(l);
        hi.push(h);
    }
    if count > MAX_POINTS as f64 {
        return Err(Error::Resource(format!(
            "lattice truncation needs about {count:.3e} candidate points; use a larger tolerance"
        )));
    }
    let mut found: Vec<(f64, Vec<i64>)> = Vec::new();
    let mut best = f64::INFINITY;
    for_each_box(&lo, &hi, |k| {
        let d = at(k);
        if d <= radius2 + 1e-9 {
            best = best.min(d);
            found.push((d, k.to_vec()));
        }
    });
    let mut out: Vec<LatticePoint> = found
        .into_iter()
        .filter(|(d, _)| *d <= best + extra + 1e-9)
        .map(|(_, k)| LatticePoint {
            vector: lattice.vector(&k),
            coeffs: k,
        })
        .collect();
    sort_points(&mut out);
    Ok(out)
}

/// All lattice points whose Gaussian weight exp(−Λ|φ+2πm|²/(4·t_like)) is at
/// least `tol` times the largest weight.
pub fn enumerate_points(
    lattice: &WindingLattice,
    phi: &[f64],
    t_like: f64,
    tol: f64,
) -> Result<Vec<LatticePoint>> {
    if !(tol > 0.0) || !(tol < 1.0) {
        return Err(Error::Argument(format!(
            "tolerance must lie in (0, 1), got {tol}"
        )));
    }
    if !(t_like > 0.0) || !t_like.is_finite() {
        return Err(Error::Argument(format!(
            "t_like must be positive and finite, got {t_like}"
        )));
    }
    let extra = 4.0 * t_like * (1.0 / tol).ln() / lattice.lambda;
    points_within(lattice, phi, extra)
}

/// Lattice points with |φ + 2πm| within `radius` of the nearest image
/// (used where the summand does not decay).
pub fn enumerate_ball(
    lattice: &WindingLattice,
    phi: &[f64],
    radius: f64,
) -> Result<Vec<LatticePoint>> {
    points_within(lattice, phi, radius * radius)
}

/// Images σ(φ + 2πm) with their parities.
pub fn image_set(
    group: &WeylGroup,
    lattice: &WindingLattice,
    phi: &[f64],
    t_like: f64,
    tol: f64,
) -> Result<Vec<(Vec<f64>, i8)>> {
    let pts = enumerate_points(lattice, phi, t_like, tol)?;
    let mut out = Vec::with_capacity(pts.len() * group.order());
    for s in &group.elements {
        for p in &pts {
            let x: Vec<f64> = phi
                .iter()
                .zip(&p.vector)
                .map(|(a, m)| a + TWO_PI * m)
                .collect();
            out.push((s.apply(&x), s.parity));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Canonical {
    pub point: RadialPoint,
    /// canonical = σ(φ + 2πm).
    pub sigma: WeylElement,
    pub m: Vec<f64>,
}

/// Map a real point into the closed alcove {γ·φ ≥ 0, α¹·φ ≤ 2π}.
pub fn canonicalize_alcove(rs: &RootSystem, lattice: &WindingLattice, phi: &[f64]) -> Canonical {
    let r = rs.rank;
    let tol = 1e-12;
    let mut a = WeylElement::identity(r);
    // Pre-reduce with the full lattice: x = φ + 2πk.
    let k = lattice.closest(&phi.iter().map(|x| -x / TWO_PI).collect::<Vec<_>>());
    let mut b = linalg::scale(&lattice.vector(&k), TWO_PI);
    let mut x = linalg::add(phi, &b);
    let refl: Vec<WeylElement> = rs
        .simple_roots
        .iter()
        .map(|g| WeylElement::reflection(g))
        .collect();
    let top = &rs.highest_root;
    let top_refl = WeylElement::reflection(top);
    let top_coroot = linalg::scale(top, 2.0 / linalg::norm2(top));
    for _ in 0..10_000 {
        if let Some(i) = rs.simple_roots.iter().position(|g| dot(g, &x) < -tol) {
            a = refl[i].compose(&a);
            b = refl[i].apply(&b);
            x = refl[i].apply(&x);
            continue;
        }
        if dot(top, &x) > TWO_PI + tol {
            a = top_refl.compose(&a);
            b = linalg::add(&top_refl.apply(&b), &linalg::scale(&top_coroot, TWO_PI));
            x = linalg::add(&top_refl.apply(&x), &linalg::scale(&top_coroot, TWO_PI));
            continue;
        }
        break;
    }
    let m = linalg::scale(&a.inverse().apply(&b), 1.0 / TWO_PI);
    let m = m
        .iter()
        .map(|v| if v.abs() < 1e-13 { 0.0 } else { *v })
        .collect();
    Canonical {
        point: RadialPoint::real(x),
        sigma: a,
        m,
    }
}

/// Weyl elements mapping the span of the imaginary axes onto itself.
pub fn signature_stabilizer<'a>(
    group: &'a WeylGroup,
    frame: &Frame,
    signature: &[Coord],
) -> Vec<&'a WeylElement> {
    let imag: Vec<usize> = (0..signature.len())
        .filter(|&j| signature[j] == Coord::Imaginary)
        .collect();
    let real: Vec<usize> = (0..signature.len())
        .filter(|&j| signature[j] == Coord::Real)
        .collect();
    group
        .elements
        .iter()
        .filter(|s| {
            imag.iter().all(|&i| {
                let img = s.apply(&frame.axes[i]);
                real.iter().all(|&j| dot(&frame.axes[j], &img).abs() < 1e-9)
            })
        })
        .collect()
}

/// Canonical representative of a radial point of a domain: the real part is
/// reduced modulo the sublattice and, among Weyl elements preserving the
/// signature, the lexicographically largest coordinate vector is chosen.
/// All-real points use the alcove.
pub fn canonicalize(
    rs: &RootSystem,
    group: &WeylGroup,
    sublattice: &WindingLattice,
    frame: &Frame,
    point: &RadialPoint,
) -> Result<Canonical> {
    if point.rank() != rs.rank || frame.rank() != rs.rank {
        return Err(Error::Argument(
            "radial point rank does not match the root system".into(),
        ));
    }
    if point.is_real() && frame.is_identity() && sublattice.is_full() {
        return Ok(canonicalize_alcove(rs, sublattice, &point.values));
    }
    let phi = frame.point_to_cartesian(point);
    let mut best: Option<(Vec<f64>, &WeylElement, Vec<f64>)> = None;
    for s in signature_stabilizer(group, frame, &point.signature) {
        let y = s.apply_complex(&phi);
        let u: Vec<f64> = y.iter().map(|z| z.re).collect();
        let v: Vec<f64> = y.iter().map(|z| z.im).collect();
        let k = sublattice.closest(&u.iter().map(|x| -x / TWO_PI).collect::<Vec<_>>());
        let mt = sublattice.vector(&k);
        let u2 = linalg::add(&u, &linalg::scale(&mt, TWO_PI));
        let cu = frame.coords_real(&u2);
        let cv = frame.coords_real(&v);
        let vals: Vec<f64> = point
            .signature
            .iter()
            .enumerate()
            .map(|(j, c)| match c {
                Coord::Real => cu[j],
                Coord::Imaginary => cv[j],
            })
            .collect();
        let better = match &best {
            None => true,
            Some((bv, _, _)) => linalg::lex_cmp(&vals, bv, 1e-9) == std::cmp::Ordering::Greater,
        };
        if better {
            best = Some((vals, s, mt));
        }
    }
    let (vals, s, mt) = best.ok_or_else(|| Error::Internal("empty signature stabilizer".into()))?;
    let m = s.inverse().apply(&mt);
    Ok(Canonical {
        point: RadialPoint {
            values: vals,
            signature: point.signature.clone(),
        },
        sigma: s.clone(),
        m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, Family};
    use crate::weyl::generate_weyl_group;

    #[test]
    fn printed_winding_vectors() {
        let s2 = 2f64.sqrt();
        let s3 = 3f64.sqrt();
        let a2 = winding_lattice(&build_root_system(Family::A, 2).unwrap());
        // (2m₁ − m₂)x̂ + √3 m₂ŷ
        assert!(linalg::max_abs_diff(&a2.vector(&[1, 0]), &[2.0, 0.0]) < 1e-14);
        assert!(linalg::max_abs_diff(&a2.vector(&[0, 1]), &[-1.0, s3]) < 1e-14);
        let b2 = winding_lattice(&build_root_system(Family::B, 2).unwrap());
        // m₁x̂ + (2m₂ − m₁)ŷ
        assert!(linalg::max_abs_diff(&b2.vector(&[1, 0]), &[1.0, -1.0]) < 1e-14);
        assert!(linalg::max_abs_diff(&b2.vector(&[0, 1]), &[0.0, 2.0]) < 1e-14);
        let c3 = winding_lattice(&build_root_system(Family::C, 3).unwrap());
        // (2m₁ − m₂)x̂ + m₂ŷ + √2(m₃ − m₂)ẑ
        assert!(linalg::max_abs_diff(&c3.vector(&[1, 0, 0]), &[2.0, 0.0, 0.0]) < 1e-14);
        assert!(linalg::max_abs_diff(&c3.vector(&[0, 1, 0]), &[-1.0, 1.0, -s2]) < 1e-14);
        assert!(linalg::max_abs_diff(&c3.vector(&[0, 0, 1]), &[0.0, 0.0, s2]) < 1e-14);
        let a1 = winding_lattice(&build_root_system(Family::A, 1).unwrap());
        assert!((a1.vector(&[1])[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn su21_sublattice() {
        let lat = winding_lattice(&build_root_system(Family::A, 2).unwrap());
        let sub =
            domain_sublattice(&lat, &Frame::identity(2), &[Coord::Imaginary, Coord::Real]).unwrap();
        assert_eq!(sub.coefficients, vec![vec![1, 2]]);
        assert!(linalg::max_abs_diff(&sub.generators[0], &[0.0, 2.0 * 3f64.sqrt()]) < 1e-14);
        let none = domain_sublattice(&lat, &Frame::identity(2), &[Coord::Imaginary; 2]).unwrap();
        assert!(none.generators.is_empty());
    }

    #[test]
    fn enumerate_a1() {
        let lat = winding_lattice(&build_root_system(Family::A, 1).unwrap());
        let pts = enumerate_points(&lat, &[1.0], 0.1, 1e-16).unwrap();
        assert!(pts.iter().all(|p| p.coeffs[0].abs() <= 1));
        assert_eq!(pts[0].coeffs, vec![0]);
        let pts = enumerate_points(&lat, &[6.0], 0.1, 1e-16).unwrap();
        assert!(pts.iter().any(|p| p.coeffs == vec![-1]));
        let empty = WindingLattice {
            generators: vec![],
            coefficients: vec![],
            ..lat.clone()
        };
        assert_eq!(
            enumerate_points(&empty, &[1.0], 5.0, 1e-3).unwrap().len(),
            1
        );
    }

    #[test]
    fn enumerate_monotone() {
        let lat = winding_lattice(&build_root_system(Family::A, 2).unwrap());
        let phi = [0.7, 0.4];
        let big = enumerate_points(&lat, &phi, 2.0, 1e-16).unwrap();
        let small = enumerate_points(&lat, &phi, 2.0, 1e-6).unwrap();
        assert!(small.len() <= big.len());
        assert!(small.iter().all(|p| big.contains(p)));
    }

    #[test]
    fn resource_limit() {
        let lat = winding_lattice(&build_root_system(Family::A, 3).unwrap());
        assert!(matches!(
            enumerate_points(&lat, &[0.1, 0.2, 0.3], 1e6, 1e-300),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn a1_images() {
        let rs = build_root_system(Family::A, 1).unwrap();
        let g = generate_weyl_group(&rs).unwrap();
        let lat = winding_lattice(&rs);
        let imgs = image_set(&g, &lat, &[0.5], 1.0, 1e-12).unwrap();
        for (x, s) in &imgs {
            let base = if *s > 0 { x[0] - 0.5 } else { x[0] + 0.5 };
            let n = base / (4.0 * PI);
            assert!((n - n.round()).abs() < 1e-12);
        }
    }

    #[test]
    fn alcove_a1() {
        let rs = build_root_system(Family::A, 1).unwrap();
        let lat = winding_lattice(&rs);
        let c = canonicalize_alcove(&rs, &lat, &[0.3]);
        assert!((c.point.values[0] - 0.3).abs() < 1e-15);
        assert_eq!(c.sigma.parity, 1);
        assert_eq!(c.m, vec![0.0]);
        let c = canonicalize_alcove(&rs, &lat, &[-0.3]);
        assert!((c.point.values[0] - 0.3).abs() < 1e-15);
        assert_eq!(c.sigma.parity, -1);
        let c = canonicalize_alcove(&rs, &lat, &[4.0 * PI + 0.3]);
        assert!((c.point.values[0] - 0.3).abs() < 1e-12);
        assert!((c.m[0] + 2.0).abs() < 1e-12, "m = {:?}", c.m);
    }

    #[test]
    fn alcove_reconstructs_input() {
        let rs = build_root_system(Family::C, 3).unwrap();
        let lat = winding_lattice(&rs);
        let phi = [3.1, -7.2, 11.5];
        let c = canonicalize_alcove(&rs, &lat, &phi);
        let x = &c.point.values;
        assert!(rs.simple_roots.iter().all(|g| dot(g, x) >= -1e-12));
        assert!(dot(&rs.highest_root, x) <= TWO_PI + 1e-12);
        let back = linalg::sub(&c.sigma.inverse().apply(x), &linalg::scale(&c.m, TWO_PI));
        assert!(linalg::max_abs_diff(&back, &phi) < 1e-12);
        assert!(lat.coefficients_of(&c.m).is_some());
        let again = canonicalize_alcove(&rs, &lat, x);
        assert!(linalg::max_abs_diff(&again.point.values, x) < 1e-12);
    }
}
