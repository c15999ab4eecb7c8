//! Invariant volumes of compact groups, their maximal tori and the coset G/T.

use crate::error::{Error, Result};
use crate::linalg::{self, dot, norm2};
use crate::rootsys::RootSystem;
use serde::Serialize;
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

#[derive(Clone, Debug, Serialize)]
pub struct VolumeReport {
    pub group: String,
    #[serde(rename = "V_G")]
    pub v_g: f64,
    #[serde(rename = "V_T")]
    pub v_t: f64,
    #[serde(rename = "V_GmodT")]
    pub v_gmodt: f64,
    /// Λ = 2r⁻¹Σα², the metric normalization the volumes refer to.
    pub lambda: f64,
    pub root_scale: f64,
}

fn alpha_rho_product(rs: &RootSystem) -> f64 {
    rs.positive_roots.iter().map(|a| dot(a, &rs.rho)).product()
}

pub fn group_volume(rs: &RootSystem) -> f64 {
    let n = rs.dim as f64;
    let p = rs.num_positive as i32;
    let r = rs.rank as i32;
    let lengths: f64 = rs
        .simple_roots
        .iter()
        .map(|g| (norm2(g) / 2.0).sqrt())
        .product();
    rs.lambda.powf(n / 2.0) * TWO_PI.powi(p + r) * rs.cartan_determinant().sqrt()
        / (lengths * alpha_rho_product(rs))
}

/// Torus volume from the Gram determinant of the fundamental weights.
pub fn torus_volume(rs: &RootSystem) -> f64 {
    let w = linalg::matrix_from_rows(&rs.fundamental_weights);
    let gram = &w * w.transpose();
    let r = rs.rank as i32;
    rs.lambda.powf(f64::from(r) / 2.0) * TWO_PI.powi(r) / gram.determinant().sqrt()
}

/// Torus volume written through the Cartan determinant.
pub fn torus_volume_cartan(rs: &RootSystem) -> f64 {
    let r = rs.rank as i32;
    let lengths: f64 = rs
        .simple_roots
        .iter()
        .map(|g| (norm2(g) / 2.0).sqrt())
        .product();
    rs.lambda.powf(f64::from(r) / 2.0) * TWO_PI.powi(r) * rs.cartan_determinant().sqrt() / lengths
}

/// Torus volume by quadrature: Λ^{r/2}/N(W) · ∫ 2^{n−r} w(φ)² dφ over one
/// period cell of the winding lattice. The integrand is a trigonometric
/// polynomial, so the product trapezoid rule is exact once the node count
/// exceeds its largest frequency.
pub fn torus_volume_quadrature(rs: &RootSystem, weyl_order: usize) -> Result<f64> {
    let r = rs.rank;
    let coroots = rs.simple_coroots();
    // Frequency of α along coroot direction i is |α·gᵢ| (an integer).
    let nodes: Vec<usize> = (0..r)
        .map(|i| {
            let f: f64 = rs
                .positive_roots
                .iter()
                .map(|a| dot(a, &coroots[i]).abs())
                .sum();
            f.round() as usize + 1
        })
        .collect();
    let total: f64 = nodes.iter().map(|&n| n as f64).product();
    if total > 1e7 {
        return Err(Error::Resource(format!(
            "torus quadrature for {} needs {total:.3e} nodes",
            rs.name()
        )));
    }
    let cell = linalg::matrix_from_rows(&coroots).determinant().abs() * TWO_PI.powi(r as i32);
    let mut idx = vec![0usize; r];
    let mut sum = 0.0;
    loop {
        let mut phi = vec![0.0; r];
        for i in 0..r {
            let c = TWO_PI * idx[i] as f64 / nodes[i] as f64;
            linalg::axpy(&mut phi, c, &coroots[i]);
        }
        let w: f64 = rs
            .positive_roots
            .iter()
            .map(|a| 2.0 * (dot(a, &phi) * 0.5).sin())
            .product();
        sum += w * w;
        let mut i = 0;
        loop {
            if i == r {
                let mean = sum / total;
                return Ok(rs.lambda.powf(r as f64 / 2.0) * cell * mean / weyl_order as f64);
            }
            idx[i] += 1;
            if idx[i] < nodes[i] {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

pub fn coset_volume(rs: &RootSystem) -> f64 {
    let p = rs.num_positive as i32;
    (TWO_PI * rs.lambda).powi(p) / alpha_rho_product(rs)
}

pub fn volume_report(rs: &RootSystem) -> VolumeReport {
    VolumeReport {
        group: rs.name(),
        v_g: group_volume(rs),
        v_t: torus_volume(rs),
        v_gmodt: coset_volume(rs),
        lambda: rs.lambda,
        root_scale: rs.scale,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, Family};
    use crate::weyl::generate_weyl_group;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn a1_values() {
        let rs = build_root_system(Family::A, 1).unwrap();
        let s2 = 2f64.sqrt();
        assert!(rel(coset_volume(&rs), 8.0 * PI) < 1e-12);
        assert!(rel(torus_volume(&rs), 4.0 * s2 * PI) < 1e-12);
        assert!(rel(group_volume(&rs), 32.0 * s2 * PI * PI) < 1e-12);
    }

    #[test]
    fn closed_forms_and_quadrature_agree() {
        for (f, r) in [
            (Family::A, 1),
            (Family::A, 2),
            (Family::B, 2),
            (Family::A, 3),
            (Family::C, 3),
            (Family::D, 4),
        ] {
            let rs = build_root_system(f, r).unwrap();
            let g = generate_weyl_group(&rs).unwrap();
            let t = torus_volume(&rs);
            assert!(rel(torus_volume_cartan(&rs), t) < 1e-12, "{f}{r}");
            let q = torus_volume_quadrature(&rs, g.order()).unwrap();
            assert!(rel(q, t) < 1e-8, "{f}{r}: {q} vs {t}");
            assert!(
                rel(group_volume(&rs), t * coset_volume(&rs)) < 1e-10,
                "{f}{r}"
            );
        }
    }

    #[test]
    fn rescale_invariance() {
        for (f, r) in [
            (Family::A, 2),
            (Family::B, 3),
            (Family::C, 2),
            (Family::D, 3),
        ] {
            let rs = build_root_system(f, r).unwrap();
            let s = rs.rescale(1.7).unwrap();
            assert!(rel(group_volume(&s), group_volume(&rs)) < 1e-10);
            assert!(rel(torus_volume(&s), torus_volume(&rs)) < 1e-10);
            assert!(rel(coset_volume(&s), coset_volume(&rs)) < 1e-10);
        }
    }
}
