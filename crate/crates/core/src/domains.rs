//! Real forms, their evolution domains, normal-form elements and the
//! classification of concrete group elements into (domain, radial point).

use crate::error::{Error, Result};
use crate::lattice::{self, Coord, Frame, ImaginaryProjection, RadialPoint, WindingLattice};
use crate::linalg::{self, dot, C64};
use crate::rootsys::{self, build_root_system, Family, RootSystem};
use crate::weyl::{generate_weyl_group, WeylGroup};
use nalgebra::DMatrix;
use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

const TWO_PI: f64 = 2.0 * PI;
/// Unit-modulus membership tolerance and the upper edge of the guard band.
pub const UNIT_TOL: f64 = 1e-9;
pub const GUARD_BAND: f64 = 1e-6;
pub const RELATION_TOL: f64 = 1e-8;
const REAL_AXIS_TOL: f64 = 1e-7;

/// A classical real form. Compact groups have q = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum GroupFamily {
    SU {
        p: usize,
        q: usize,
    },
    SL {
        n: usize,
    },
    SO {
        p: usize,
        q: usize,
    },
    /// USp(2p, 2q).
    USp {
        p: usize,
        q: usize,
    },
    /// Sp(2n, ℝ).
    Sp {
        n: usize,
    },
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupFamily::SU { p, q: 0 } => write!(f, "SU({p})"),
            GroupFamily::SU { p, q } => write!(f, "SU({p},{q})"),
            GroupFamily::SL { n } => write!(f, "SL({n},R)"),
            GroupFamily::SO { p, q: 0 } => write!(f, "SO({p})"),
            GroupFamily::SO { p, q } => write!(f, "SO({p},{q})"),
            GroupFamily::USp { p, q: 0 } => write!(f, "USp({})", 2 * p),
            GroupFamily::USp { p, q } => write!(f, "USp({},{})", 2 * p, 2 * q),
            GroupFamily::Sp { n } => write!(f, "Sp({},R)", 2 * n),
        }
    }
}

fn parse_ints(s: &str) -> Option<Vec<usize>> {
    if s.contains(',') {
        return s.split(',').map(|x| x.trim().parse().ok()).collect();
    }
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    // Compact spellings: "21" means (2,1), a single digit or larger number is one value.
    if s.len() == 2 {
        return Some(
            s.chars()
                .map(|c| c.to_digit(10).unwrap() as usize)
                .collect(),
        );
    }
    s.parse().ok().map(|v| vec![v])
}

impl std::str::FromStr for GroupFamily {
    type Err = Error;
    fn from_str(input: &str) -> Result<Self> {
        let bad = || Error::Config(format!("cannot parse group name '{input}'"));
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let upper = s.to_uppercase().replace('ℝ', "R");
        let (head, rest) = ["USP", "SU", "SL", "SO", "SP"]
            .iter()
            .find_map(|h| upper.strip_prefix(h).map(|r| (*h, r.to_string())))
            .ok_or_else(bad)?;
        let mut body = rest
            .trim_start_matches('(')
            .trim_end_matches(')')
            .to_string();
        let mut real_suffix = false;
        for suffix in [",R", "R"] {
            if let Some(b) = body.strip_suffix(suffix) {
                body = b.trim_end_matches(')').to_string();
                real_suffix = true;
                break;
            }
        }
        let v = parse_ints(&body).ok_or_else(bad)?;
        let fam = match (head, v.as_slice()) {
            ("SU", [n]) if !real_suffix => GroupFamily::SU { p: *n, q: 0 },
            ("SU", [p, q]) if !real_suffix => GroupFamily::SU { p: *p, q: *q },
            ("SL", [n]) => GroupFamily::SL { n: *n },
            ("SO", [n]) if !real_suffix => GroupFamily::SO { p: *n, q: 0 },
            ("SO", [p, q]) if !real_suffix => GroupFamily::SO { p: *p, q: *q },
            ("USP", [n]) if !real_suffix && n % 2 == 0 => GroupFamily::USp { p: n / 2, q: 0 },
            ("USP", [p, q]) if !real_suffix && p % 2 == 0 && q % 2 == 0 => {
                GroupFamily::USp { p: p / 2, q: q / 2 }
            }
            ("SP", [n]) if n % 2 == 0 => GroupFamily::Sp { n: n / 2 },
            _ => return Err(bad()),
        };
        fam.validate()?;
        Ok(fam)
    }
}

impl GroupFamily {
    pub fn validate(&self) -> Result<()> {
        let (fam, rank) = self.root_type_unchecked();
        let ok = match *self {
            GroupFamily::SU { p, q } => p + q >= 2 && p >= 1,
            GroupFamily::SL { n } => n >= 2,
            GroupFamily::SO { p, q } => p + q >= 5 && p >= 1,
            GroupFamily::USp { p, q } => p + q >= 2 && p >= 1,
            GroupFamily::Sp { n } => n >= 2,
        };
        if !ok {
            return Err(Error::Config(format!(
                "{self} is outside the supported range (use SU(2)/SU(1,1) for the rank-1 forms)"
            )));
        }
        if rank > 12 {
            return Err(Error::Config(format!(
                "{self}: rank {rank} of {fam} exceeds 12"
            )));
        }
        Ok(())
    }

    fn root_type_unchecked(&self) -> (Family, usize) {
        match *self {
            GroupFamily::SU { p, q } => (Family::A, (p + q).saturating_sub(1)),
            GroupFamily::SL { n } => (Family::A, n.saturating_sub(1)),
            GroupFamily::SO { p, q } => {
                let d = p + q;
                if d % 2 == 1 {
                    (Family::B, d / 2)
                } else if d == 6 {
                    (Family::A, 3)
                } else {
                    (Family::D, d / 2)
                }
            }
            GroupFamily::USp { p, q } => (Family::C, p + q),
            GroupFamily::Sp { n } => (Family::C, n),
        }
    }

    /// Root family and rank (SO(p,q) with p+q = 6 uses A3).
    pub fn root_type(&self) -> (Family, usize) {
        self.root_type_unchecked()
    }

    pub fn root_system(&self) -> Result<RootSystem> {
        self.validate()?;
        let (f, r) = self.root_type();
        build_root_system(f, r)
    }

    pub fn rank(&self) -> usize {
        self.root_type().1
    }

    pub fn is_compact(&self) -> bool {
        match *self {
            GroupFamily::SU { q, .. } | GroupFamily::SO { q, .. } | GroupFamily::USp { q, .. } => {
                q == 0
            }
            GroupFamily::SL { .. } | GroupFamily::Sp { .. } => false,
        }
    }

    pub fn kind(&self) -> &'static str {
        match *self {
            GroupFamily::SU { .. } if self.is_compact() => "compact SU(n)",
            GroupFamily::SO { .. } if self.is_compact() => "compact SO(n)",
            GroupFamily::USp { .. } if self.is_compact() => "compact USp(2n)",
            GroupFamily::SU { .. } => "SU(p,q)",
            GroupFamily::SL { .. } => "SL(n,R)",
            GroupFamily::SO { p, q } if (p + q) % 2 == 1 => "SO(p,q) odd",
            GroupFamily::SO { .. } => "SO(p,q) even",
            GroupFamily::USp { .. } => "USp(2p,2q)",
            GroupFamily::Sp { .. } => "Sp(2n,R)",
        }
    }

    /// Dimension of the fundamental (defining) matrix representation.
    pub fn matrix_dim(&self) -> usize {
        match *self {
            GroupFamily::SU { p, q } | GroupFamily::SO { p, q } => p + q,
            GroupFamily::SL { n } => n,
            GroupFamily::USp { p, q } => 2 * (p + q),
            GroupFamily::Sp { n } => 2 * n,
        }
    }
}

/// Parse either a group name ("SU(2,1)", "Sp6R") or a root-system name ("A2"),
/// the latter meaning the compact group.
pub fn parse_group(name: &str) -> Result<GroupFamily> {
    let s = name.trim();
    let mut chars = s.chars();
    if let (Some(c), rest) = (chars.next(), chars.as_str()) {
        if let (Ok(f), Ok(r)) = (c.to_string().parse::<Family>(), rest.parse::<usize>()) {
            let fam = match f {
                Family::A => GroupFamily::SU { p: r + 1, q: 0 },
                Family::B => GroupFamily::SO { p: 2 * r + 1, q: 0 },
                Family::C => GroupFamily::USp { p: r, q: 0 },
                Family::D => GroupFamily::SO { p: 2 * r, q: 0 },
            };
            if f == Family::D && r == 3 {
                return Err(Error::Config(
                    "D3 is handled as A3 (SU(4) ~ SO(6)); use A3".into(),
                ));
            }
            fam.validate()?;
            return Ok(fam);
        }
    }
    s.parse()
}

#[derive(Clone, Debug, Serialize)]
pub struct EvolutionDomain {
    pub group: String,
    pub label: String,
    /// Number of REAL radial coordinates.
    pub a: usize,
    pub signature: Vec<Coord>,
    pub frame: Frame,
    /// Winding translations allowed in this domain.
    pub sublattice: WindingLattice,
    /// False for domains that the eigenvalue analysis cannot populate.
    pub realizable: bool,
}

impl EvolutionDomain {
    pub fn mask_string(&self) -> String {
        self.signature.iter().map(|c| c.letter()).collect()
    }

    pub fn b(&self) -> usize {
        self.signature.len() - self.a
    }
}

struct DomainShape {
    imaginary: Vec<usize>,
    frame: Frame,
    realizable: bool,
}

fn shape(r: usize, imaginary: Vec<usize>) -> DomainShape {
    DomainShape {
        imaginary,
        frame: Frame::identity(r),
        realizable: true,
    }
}

/// Positions of the d-axes in the paired A frame of dimension n.
fn a_d_positions(n: usize) -> Vec<usize> {
    let pairs = n / 2;
    let s_count = (pairs + n % 2).saturating_sub(1);
    let mut out = Vec::new();
    let mut pos = 0;
    for j in 0..pairs {
        out.push(pos);
        pos += 1;
        if j < s_count {
            pos += 1;
        }
    }
    out
}

fn su_shapes(n: usize, k_max: usize) -> Vec<DomainShape> {
    let d = a_d_positions(n);
    (0..=k_max.min(d.len()))
        .map(|k| shape(n - 1, d[..k].to_vec()))
        .collect()
}

fn sl_shapes(n: usize) -> Vec<DomainShape> {
    let d = a_d_positions(n);
    (0..=d.len())
        .rev()
        .map(|c| {
            let real: Vec<usize> = d[d.len() - c..].to_vec();
            shape(n - 1, (0..n - 1).filter(|i| !real.contains(i)).collect())
        })
        .collect()
}

fn so_shapes(p: usize, q: usize) -> Vec<DomainShape> {
    let d = p + q;
    let lo = p.min(q);
    if d % 2 == 1 {
        let r = d / 2;
        return (0..=lo.min(r))
            .map(|k| shape(r, (r - k..r).collect()))
            .collect();
    }
    if d == 6 {
        return match lo {
            0 => vec![shape(3, vec![])],
            1 => vec![shape(3, vec![1])],
            2 => su_shapes(4, 2),
            _ => sl_shapes(4),
        };
    }
    let r = d / 2;
    let mut out = Vec::new();
    for k_m in 0..=r / 2 {
        for k_h in 0..=r {
            let used = k_h + 2 * k_m;
            if used > p
                || used > q
                || (p - used) % 2 == 1
                || (q - used) % 2 == 1
                || k_h + 2 * k_m > r
            {
                continue;
            }
            let mut frame = Frame::identity(r);
            let mut imaginary = Vec::new();
            for j in 0..k_m {
                let (a, b) = (2 * j, 2 * j + 1);
                let mut u = vec![0.0; r];
                let mut v = vec![0.0; r];
                u[a] = FRAC_1_SQRT_2;
                u[b] = FRAC_1_SQRT_2;
                v[a] = FRAC_1_SQRT_2;
                v[b] = -FRAC_1_SQRT_2;
                frame.axes[a] = u;
                frame.axes[b] = v;
                imaginary.push(b);
            }
            imaginary.extend(r - k_h..r);
            out.push(DomainShape {
                imaginary,
                frame,
                realizable: true,
            });
        }
    }
    out
}

fn usp_shapes(p: usize, q: usize) -> Vec<DomainShape> {
    let n = p + q;
    if q == 0 {
        return vec![shape(n, vec![])];
    }
    let d: Vec<usize> = (0..n / 2).map(|j| 2 * j).collect();
    let order: Vec<usize> = d
        .iter()
        .copied()
        .chain((0..n).filter(|i| !d.contains(i)))
        .collect();
    // Count as printed for USp(2p,2q): |p − q| + 1.
    let count = p.abs_diff(q);
    (0..=count.min(n))
        .map(|k| DomainShape {
            imaginary: order[..k].to_vec(),
            frame: Frame::identity(n),
            realizable: k <= p.min(q) && k <= d.len(),
        })
        .collect()
}

fn sp_shapes(n: usize) -> Vec<DomainShape> {
    let eps = rootsys::c_epsilon_vectors(n);
    let pairs = n / 2;
    let mut out = Vec::new();
    for b in 0..=n {
        let mut frame = Frame::identity(n);
        let mut imaginary = Vec::new();
        let mut rem = b;
        if n % 2 == 1 && b % 2 == 1 {
            imaginary.push(n - 1);
            rem -= 1;
        }
        let whole = rem / 2;
        for j in 0..whole.min(pairs) {
            imaginary.push(2 * j);
            imaginary.push(2 * j + 1);
        }
        if rem % 2 == 1 {
            // One imaginary ε in the next pair: use the ε directions as axes.
            let j = whole;
            let nrm = linalg::norm2(&eps[2 * j]).sqrt();
            frame.axes[2 * j] = linalg::scale(&eps[2 * j], 1.0 / nrm);
            frame.axes[2 * j + 1] = linalg::scale(&eps[2 * j + 1], 1.0 / nrm);
            imaginary.push(2 * j);
        }
        imaginary.sort_unstable();
        out.push(DomainShape {
            imaginary,
            frame,
            realizable: true,
        });
    }
    out
}

fn domain_shapes(family: &GroupFamily) -> Vec<DomainShape> {
    match *family {
        GroupFamily::SU { p, q } => su_shapes(p + q, p.min(q)),
        GroupFamily::SL { n } => sl_shapes(n),
        GroupFamily::SO { p, q } => so_shapes(p, q),
        GroupFamily::USp { p, q } => usp_shapes(p, q),
        GroupFamily::Sp { n } => sp_shapes(n),
    }
}

/// All evolution domains of a real form, in descending number of real
/// coordinates.
pub fn enumerate_domains(family: &GroupFamily) -> Result<Vec<EvolutionDomain>> {
    let rs = family.root_system()?;
    let full = lattice::winding_lattice(&rs);
    let r = rs.rank;
    let mut shapes = domain_shapes(family);
    shapes.sort_by_key(|s| s.imaginary.len());
    let mut out: Vec<EvolutionDomain> = Vec::with_capacity(shapes.len());
    for s in shapes {
        let signature: Vec<Coord> = (0..r)
            .map(|i| {
                if s.imaginary.contains(&i) {
                    Coord::Imaginary
                } else {
                    Coord::Real
                }
            })
            .collect();
        let a = r - s.imaginary.len();
        let sublattice = lattice::domain_sublattice(&full, &s.frame, &signature)?;
        let mut label = format!("D{a}");
        while out.iter().any(|d| d.label == label) {
            label.push('\'');
        }
        out.push(EvolutionDomain {
            group: family.to_string(),
            label,
            a,
            signature,
            frame: s.frame,
            sublattice,
            realizable: s.realizable,
        });
    }
    Ok(out)
}

/// How the eigenvalues of the defining representation depend on φ.
#[derive(Clone, Debug)]
enum RepModel {
    /// Eigenvalues exp(i μₖ·φ).
    Weights(Vec<Vec<f64>>),
    /// Eigenvalues exp(±i εⱼ·φ), plus one eigenvalue 1 when `extra_one`.
    Pairs {
        eps: Vec<Vec<f64>>,
        extra_one: bool,
        outer_flip: bool,
    },
}

impl RepModel {
    fn for_family(family: &GroupFamily) -> Self {
        let (f, r) = family.root_type();
        match *family {
            GroupFamily::SU { .. } | GroupFamily::SL { .. } => {
                RepModel::Weights(rootsys::a_defining_weights(r))
            }
            GroupFamily::SO { p, q } if p + q == 6 => {
                let mu = rootsys::a_defining_weights(3);
                RepModel::Pairs {
                    eps: (1..4).map(|j| linalg::add(&mu[0], &mu[j])).collect(),
                    extra_one: false,
                    outer_flip: true,
                }
            }
            GroupFamily::SO { .. } => RepModel::Pairs {
                eps: rootsys::bd_epsilon_vectors(f, r),
                extra_one: f == Family::B,
                outer_flip: f == Family::D,
            },
            GroupFamily::USp { .. } | GroupFamily::Sp { .. } => RepModel::Pairs {
                eps: rootsys::c_epsilon_vectors(r),
                extra_one: false,
                outer_flip: false,
            },
        }
    }

    fn weights(&self) -> Vec<Vec<f64>> {
        match self {
            RepModel::Weights(mu) => mu.clone(),
            RepModel::Pairs { eps, extra_one, .. } => {
                let mut w: Vec<Vec<f64>> = eps.clone();
                w.extend(eps.iter().map(|e| linalg::scale(e, -1.0)));
                if *extra_one {
                    w.push(vec![0.0; eps[0].len()]);
                }
                w
            }
        }
    }

    /// The exponents v with eigenvalues exp(i v): μₖ·φ or εⱼ·φ.
    fn values(&self, phi: &[C64]) -> Vec<C64> {
        match self {
            RepModel::Weights(mu) => mu.iter().map(|m| linalg::rdot(m, phi)).collect(),
            RepModel::Pairs { eps, .. } => eps.iter().map(|e| linalg::rdot(e, phi)).collect(),
        }
    }

    fn eigenvalues(&self, phi: &[C64]) -> Vec<C64> {
        let i = C64::new(0.0, 1.0);
        self.weights()
            .iter()
            .map(|w| (i * linalg::rdot(w, phi)).exp())
            .collect()
    }

    /// `phi` together with its outer-flip image, when the representation has one.
    fn flips(&self, phi: &[C64]) -> Vec<Vec<C64>> {
        match self {
            RepModel::Pairs {
                eps,
                outer_flip: true,
                ..
            } => {
                let mut v = self.values(phi);
                v[0] = -v[0];
                let inv = linalg::matrix_from_rows(eps)
                    .try_inverse()
                    .expect("epsilon basis");
                let w = (0..inv.nrows())
                    .map(|a| (0..v.len()).map(|k| v[k] * inv[(a, k)]).sum())
                    .collect();
                vec![phi.to_vec(), w]
            }
            _ => vec![phi.to_vec()],
        }
    }

    /// Complex radial vectors reproducing the eigenvalues (up to W and lattice shifts).
    fn candidates(&self, eigs: &[C64]) -> Vec<Vec<C64>> {
        let mi = C64::new(0.0, -1.0);
        match self {
            RepModel::Weights(mu) => {
                let mut l: Vec<C64> = eigs.iter().map(|z| mi * z.ln()).collect();
                let s: C64 = l.iter().sum();
                let j = (s.re / TWO_PI).round();
                l[0] -= C64::new(TWO_PI * j, s.im);
                let m = linalg::matrix_from_rows(mu);
                let pinv =
                    (m.transpose() * &m).try_inverse().expect("weights span") * m.transpose();
                let r = pinv.nrows();
                vec![(0..r)
                    .map(|a| (0..l.len()).map(|k| l[k] * pinv[(a, k)]).sum())
                    .collect()]
            }
            RepModel::Pairs {
                eps,
                extra_one,
                outer_flip,
            } => {
                let mut rest: Vec<C64> = eigs.to_vec();
                if *extra_one {
                    let k = (0..rest.len())
                        .min_by(|&a, &b| {
                            (rest[a] - 1.0)
                                .norm()
                                .partial_cmp(&(rest[b] - 1.0).norm())
                                .unwrap()
                        })
                        .unwrap();
                    rest.remove(k);
                }
                let mut v = Vec::new();
                while !rest.is_empty() {
                    let x = rest.remove(0);
                    let k = (0..rest.len())
                        .min_by(|&a, &b| {
                            (x * rest[a] - 1.0)
                                .norm()
                                .partial_cmp(&(x * rest[b] - 1.0).norm())
                                .unwrap()
                        })
                        .unwrap_or(0);
                    if !rest.is_empty() {
                        rest.remove(k);
                    }
                    v.push(mi * x.ln());
                }
                let e = linalg::matrix_from_rows(eps);
                let inv = e.try_inverse().expect("epsilon basis");
                let solve = |v: &[C64]| -> Vec<C64> {
                    (0..inv.nrows())
                        .map(|a| (0..v.len()).map(|k| v[k] * inv[(a, k)]).sum())
                        .collect()
                };
                let mut out = vec![solve(&v)];
                if *outer_flip {
                    let mut w = v.clone();
                    w[0] = -w[0];
                    out.push(solve(&w));
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub domain: EvolutionDomain,
    /// Canonical radial point in the domain's frame.
    pub point: RadialPoint,
    /// Central factor c with g = c · exp(radial element).
    pub central: C64,
    pub eigenvalues: Vec<C64>,
    /// Distance between the regenerated and the input eigenvalue multisets.
    pub residual: f64,
}

/// Everything needed to classify elements of one real form.
#[derive(Clone, Debug)]
pub struct GroupModel {
    pub family: GroupFamily,
    pub rs: RootSystem,
    pub group: WeylGroup,
    pub lattice: WindingLattice,
    pub domains: Vec<EvolutionDomain>,
    rep: RepModel,
    /// Representatives of the representation's period lattice modulo the
    /// winding lattice.
    coset_shifts: Vec<Vec<f64>>,
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn eta(signs: &[f64]) -> DMatrix<C64> {
    DMatrix::from_fn(signs.len(), signs.len(), |i, j| {
        if i == j {
            c(signs[i])
        } else {
            c(0.0)
        }
    })
}

fn zeta(n: usize) -> DMatrix<C64> {
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if j == i + n {
            c(1.0)
        } else if i == j + n {
            c(-1.0)
        } else {
            c(0.0)
        }
    })
}

fn max_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl GroupModel {
    pub fn new(family: GroupFamily) -> Result<Self> {
        let rs = family.root_system()?;
        let group = generate_weyl_group(&rs)?;
        let lattice = lattice::winding_lattice(&rs);
        let domains = enumerate_domains(&family)?;
        let rep = RepModel::for_family(&family);
        let coset_shifts = period_cosets(&rs, &rep.weights())?;
        Ok(GroupModel {
            family,
            rs,
            group,
            lattice,
            domains,
            rep,
            coset_shifts,
        })
    }

    pub fn domain(&self, label: &str) -> Result<&EvolutionDomain> {
        self.domains
            .iter()
            .find(|d| d.label == label)
            .ok_or_else(|| {
                Error::Argument(format!(
                    "{} has no domain '{label}' (available: {})",
                    self.family,
                    self.domains
                        .iter()
                        .map(|d| d.label.as_str())
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            })
    }

    fn metric_signs(&self) -> Vec<f64> {
        match self.family {
            GroupFamily::SU { p, q } | GroupFamily::SO { p, q } => {
                (0..p + q).map(|i| if i < p { 1.0 } else { -1.0 }).collect()
            }
            GroupFamily::USp { p, q } => {
                let half: Vec<f64> = (0..p + q).map(|i| if i < p { 1.0 } else { -1.0 }).collect();
                half.iter().chain(half.iter()).copied().collect()
            }
            GroupFamily::SL { n } => vec![1.0; n],
            GroupFamily::Sp { n } => vec![1.0; 2 * n],
        }
    }

    fn central_elements(&self) -> Vec<C64> {
        let n = self.family.matrix_dim();
        match self.family {
            GroupFamily::SU { .. } => (0..n)
                .map(|k| {
                    let z = C64::from_polar(1.0, TWO_PI * k as f64 / n as f64);
                    let snap = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
                    C64::new(snap(z.re), snap(z.im))
                })
                .collect(),
            GroupFamily::SL { .. } | GroupFamily::SO { .. } if n % 2 == 1 => vec![c(1.0)],
            _ => vec![c(1.0), c(-1.0)],
        }
    }

    /// Verify the defining relations to [`RELATION_TOL`] (relative to the entry scale).
    pub fn check_membership(&self, g: &DMatrix<C64>) -> Result<()> {
        let n = self.family.matrix_dim();
        if g.nrows() != n || g.ncols() != n {
            return Err(Error::Argument(format!(
                "{} acts on {n}x{n} matrices, got {}x{}",
                self.family,
                g.nrows(),
                g.ncols()
            )));
        }
        if g.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Argument("matrix has non-finite entries".into()));
        }
        let scale = max_abs(g).max(1.0);
        let tol = RELATION_TOL * scale * scale;
        let fail = |what: &str, err: f64| {
            Err(Error::NotInGroup(format!(
                "{} violates {what} (error {err:.3e})",
                self.family
            )))
        };
        let real = matches!(
            self.family,
            GroupFamily::SL { .. } | GroupFamily::SO { .. } | GroupFamily::Sp { .. }
        );
        if real {
            let im = g.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            if im > RELATION_TOL * scale {
                return fail("reality", im);
            }
        }
        let e = eta(&self.metric_signs());
        match self.family {
            GroupFamily::SU { .. } | GroupFamily::USp { .. } => {
                let err = max_abs(&(g * &e * g.adjoint() - &e));
                if err > tol {
                    return fail("g eta g^dagger = eta", err);
                }
            }
            GroupFamily::SO { .. } => {
                let err = max_abs(&(g * &e * g.transpose() - &e));
                if err > tol {
                    return fail("g eta g^T = eta", err);
                }
            }
            _ => {}
        }
        let symplectic_half = match self.family {
            GroupFamily::USp { p, q } => Some(p + q),
            GroupFamily::Sp { n } => Some(n),
            _ => None,
        };
        if let Some(half) = symplectic_half {
            let z = zeta(half);
            let err = max_abs(&(g.transpose() * &z * g - &z));
            if err > tol {
                return fail("g^T zeta g = zeta", err);
            }
        }
        let det = g.determinant();
        if (det - 1.0).norm() > tol {
            return fail("det g = 1", (det - 1.0).norm());
        }
        Ok(())
    }

    /// Find (domain, radial point) for a group element.
    pub fn classify(&self, g: &DMatrix<C64>) -> Result<Classification> {
        self.check_membership(g)?;
        let eigs = linalg::eigenvalues(g)
            .ok_or_else(|| Error::Internal("eigenvalue iteration failed".into()))?;
        for z in &eigs {
            let dev = (z.norm() - 1.0).abs();
            if dev > UNIT_TOL && dev < GUARD_BAND {
                return Err(Error::Ambiguous {
                    message: format!(
                        "eigenvalue {z} has | |lambda| - 1 | = {dev:.3e}, inside the guard band ({UNIT_TOL:e}, {GUARD_BAND:e})"
                    ),
                    eigenvalues: eigs.clone(),
                });
            }
        }
        for centre in self.central_elements() {
            let scaled: Vec<C64> = eigs.iter().map(|z| z / centre).collect();
            let cands = self.rep.candidates(&scaled);
            for dom in self.domains.iter().filter(|d| d.realizable) {
                let proj = ImaginaryProjection::new(&self.lattice, &dom.frame, &dom.signature)?;
                // Every lift (pairing sign, period coset) that fits is the same
                // element; keep the lexicographically largest canonical point.
                let mut best: Option<RadialPoint> = None;
                for base in &cands {
                    for shift in &self.coset_shifts {
                        let phi: Vec<C64> = base
                            .iter()
                            .zip(shift)
                            .map(|(b, s)| b + TWO_PI * s)
                            .collect();
                        let Some(point) = self.fit_domain(dom, &proj, &phi) else {
                            continue;
                        };
                        let canon = lattice::canonicalize(
                            &self.rs,
                            &self.group,
                            &dom.sublattice,
                            &dom.frame,
                            &point,
                        )?;
                        let regen = self.regenerate(dom, &canon.point, centre);
                        if linalg::multiset_distance(&regen, &eigs)
                            > GUARD_BAND * (1.0 + max_norm(&eigs))
                        {
                            continue;
                        }
                        let better = best.as_ref().is_none_or(|b| {
                            linalg::lex_cmp(&canon.point.values, &b.values, 1e-9)
                                == std::cmp::Ordering::Greater
                        });
                        if better {
                            best = Some(canon.point);
                        }
                    }
                }
                if let Some(point) = best {
                    let residual =
                        linalg::multiset_distance(&self.regenerate(dom, &point, centre), &eigs);
                    return Ok(Classification {
                        domain: dom.clone(),
                        point,
                        central: centre,
                        eigenvalues: eigs,
                        residual,
                    });
                }
            }
        }
        Err(Error::Ambiguous {
            message: format!(
                "eigenvalue pattern matches no evolution domain of {}",
                self.family
            ),
            eigenvalues: eigs,
        })
    }

    /// Canonical form of `point` modulo everything the defining representation
    /// cannot see: period cosets and, for D-type, the outer flip. This is the
    /// point `classify` returns for the element built from `point`.
    pub fn representation_canonical(
        &self,
        dom: &EvolutionDomain,
        point: &RadialPoint,
    ) -> Result<RadialPoint> {
        let proj = ImaginaryProjection::new(&self.lattice, &dom.frame, &dom.signature)?;
        let phi = dom.frame.point_to_cartesian(point);
        let mut best: Option<RadialPoint> = None;
        for base in self.rep.flips(&phi) {
            for shift in &self.coset_shifts {
                let lifted: Vec<C64> = base
                    .iter()
                    .zip(shift)
                    .map(|(b, s)| b + TWO_PI * s)
                    .collect();
                let Some(p) = self.fit_domain(dom, &proj, &lifted) else {
                    continue;
                };
                let canon =
                    lattice::canonicalize(&self.rs, &self.group, &dom.sublattice, &dom.frame, &p)?;
                if best.as_ref().is_none_or(|b| {
                    linalg::lex_cmp(&canon.point.values, &b.values, 1e-9)
                        == std::cmp::Ordering::Greater
                }) {
                    best = Some(canon.point);
                }
            }
        }
        best.ok_or_else(|| Error::Internal("point does not fit its own domain".into()))
    }

    fn regenerate(&self, dom: &EvolutionDomain, point: &RadialPoint, centre: C64) -> Vec<C64> {
        self.rep
            .eigenvalues(&dom.frame.point_to_cartesian(point))
            .iter()
            .map(|v| v * centre)
            .collect()
    }

    fn fit_domain(
        &self,
        dom: &EvolutionDomain,
        proj: &ImaginaryProjection,
        phi: &[C64],
    ) -> Option<RadialPoint> {
        let size = 1.0 + phi.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for s in &self.group.elements {
            let y = s.apply_complex(phi);
            let coords = dom.frame.coords(&y);
            let real_ok = dom
                .signature
                .iter()
                .zip(&coords)
                .all(|(sg, z)| *sg == Coord::Imaginary || z.im.abs() <= REAL_AXIS_TOL * size);
            if !real_ok {
                continue;
            }
            let u: Vec<f64> = y.iter().map(|z| z.re).collect();
            let Some(m) = proj.lift(&self.lattice, &dom.frame, &u) else {
                continue;
            };
            let shifted = dom
                .frame
                .coords_real(&linalg::add(&u, &linalg::scale(&m, TWO_PI)));
            let values = dom
                .signature
                .iter()
                .enumerate()
                .map(|(j, sg)| match sg {
                    Coord::Real => shifted[j],
                    Coord::Imaginary => coords[j].im,
                })
                .collect();
            return Some(RadialPoint {
                values,
                signature: dom.signature.clone(),
            });
        }
        None
    }

    /// Domain whose mask matches the point's signature up to a Weyl permutation.
    pub fn domain_of_radial(&self, point: &RadialPoint) -> Result<&EvolutionDomain> {
        let r = self.rs.rank;
        if point.rank() != r {
            return Err(Error::Argument(format!(
                "radial point has rank {} but {} has rank {r}",
                point.rank(),
                self.family
            )));
        }
        if let Some(d) = self.domains.iter().find(|d| d.signature == point.signature) {
            return Ok(d);
        }
        let id = Frame::identity(r);
        let imag: Vec<usize> = (0..r)
            .filter(|&i| point.signature[i] == Coord::Imaginary)
            .collect();
        for d in &self.domains {
            if d.b() != imag.len() {
                continue;
            }
            let dom_real: Vec<usize> = (0..r).filter(|&i| d.signature[i] == Coord::Real).collect();
            let hit = self.group.elements.iter().any(|s| {
                imag.iter().all(|&i| {
                    let img = s.apply(&id.axes[i]);
                    dom_real
                        .iter()
                        .all(|&j| dot(&d.frame.axes[j], &img).abs() < 1e-9)
                })
            });
            if hit {
                return Ok(d);
            }
        }
        Err(Error::Argument(format!(
            "no evolution domain of {} has signature {}",
            self.family,
            point.mask_string()
        )))
    }

    /// A normal-form group element with the given radial point in `dom`.
    pub fn element_from_radial(
        &self,
        dom: &EvolutionDomain,
        point: &RadialPoint,
        central: C64,
    ) -> Result<DMatrix<C64>> {
        if point.signature != dom.signature {
            return Err(Error::Argument(format!(
                "radial signature {} does not match domain {} ({})",
                point.mask_string(),
                dom.label,
                dom.mask_string()
            )));
        }
        let phi = dom.frame.point_to_cartesian(point);
        let vals = self.rep.values(&phi);
        let g = match self.family {
            GroupFamily::SU { p, q } => su_normal_form(p, q, &vals)?,
            GroupFamily::SL { n } => sl_normal_form(n, &vals)?,
            GroupFamily::SO { p, q } => so_normal_form(p, q, &vals)?,
            GroupFamily::USp { p, q } => usp_normal_form(p, q, &vals)?,
            GroupFamily::Sp { n } => sp_normal_form(n, &vals)?,
        };
        Ok(g * central)
    }
}

/// Representatives of {m : w·m ∈ ℤ for all weights w} modulo the coroot lattice.
fn period_cosets(rs: &RootSystem, weights: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let r = rs.rank;
    let coroots = rs.simple_coroots();
    let rows: Vec<Vec<i64>> = weights
        .iter()
        .map(|w| coroots.iter().map(|g| dot(w, g).round() as i64).collect())
        .collect();
    let h = linalg::hermite_rows(&rows);
    if h.len() != r {
        return Err(Error::Internal(
            "representation weights do not span the weight space".into(),
        ));
    }
    let diag: Vec<i64> = (0..r).map(|i| h[i][i]).collect();
    let count: i64 = diag.iter().product();
    if count > 64 {
        return Err(Error::Internal(format!(
            "period lattice index {count} is unexpectedly large"
        )));
    }
    let hm = DMatrix::from_fn(r, r, |i, j| h[i][j] as f64);
    let inv = hm
        .try_inverse()
        .ok_or_else(|| Error::Internal("singular weight lattice".into()))?;
    let mut out = Vec::new();
    let mut z = vec![0i64; r];
    loop {
        let x: Vec<f64> = (0..r)
            .map(|i| {
                let v: f64 = (0..r).map(|j| inv[(i, j)] * z[j] as f64).sum();
                v - v.floor()
            })
            .collect();
        let mut m = vec![0.0; r];
        for (xi, g) in x.iter().zip(&coroots) {
            linalg::axpy(&mut m, *xi, g);
        }
        out.push(m);
        let mut i = 0;
        loop {
            if i == r {
                return Ok(out);
            }
            z[i] += 1;
            if z[i] < diag[i] {
                break;
            }
            z[i] = 0;
            i += 1;
        }
    }
}

const VAL_TOL: f64 = 1e-9;

fn unsupported(msg: &str) -> Error {
    Error::Unsupported(format!("normal form: {msg}"))
}

/// Pair up the values whose exponentials are related by `rel`, returning the
/// pairs and the leftover indices.
fn pair_values(
    vals: &[C64],
    is_special: impl Fn(C64) -> bool,
    partner: impl Fn(C64, C64) -> bool,
) -> Result<(Vec<(usize, usize)>, Vec<usize>)> {
    let mut used = vec![false; vals.len()];
    let mut pairs = Vec::new();
    let mut single = Vec::new();
    for a in 0..vals.len() {
        if used[a] {
            continue;
        }
        used[a] = true;
        if !is_special(vals[a]) {
            single.push(a);
            continue;
        }
        let b = (0..vals.len())
            .find(|&b| !used[b] && partner(vals[a], vals[b]))
            .ok_or_else(|| unsupported("eigenvalue pattern has no partner"))?;
        used[b] = true;
        pairs.push((a, b));
    }
    Ok((pairs, single))
}

fn near(a: C64, b: C64) -> bool {
    (a - b).norm() < VAL_TOL * (1.0 + a.norm())
}

fn su_normal_form(p: usize, q: usize, vals: &[C64]) -> Result<DMatrix<C64>> {
    let n = p + q;
    let (pairs, single) = pair_values(vals, |v| v.im.abs() > VAL_TOL, |a, b| near(b, a.conj()))?;
    if pairs.len() > p.min(q) {
        return Err(unsupported("more hyperbolic pairs than min(p, q)"));
    }
    let mut g = DMatrix::zeros(n, n);
    let mut plus: Vec<usize> = (0..p).collect();
    let mut minus: Vec<usize> = (p..n).collect();
    for (a, b) in pairs {
        let (u, v) = (plus.remove(0), minus.remove(0));
        let alpha = (vals[a].re + vals[b].re) / 2.0;
        let beta = (vals[b].im - vals[a].im) / 2.0;
        let ph = C64::from_polar(1.0, alpha);
        g[(u, u)] = ph * beta.cosh();
        g[(v, v)] = ph * beta.cosh();
        g[(u, v)] = ph * beta.sinh();
        g[(v, u)] = ph * beta.sinh();
    }
    let free: Vec<usize> = plus.into_iter().chain(minus).collect();
    for (k, idx) in single.into_iter().zip(free) {
        if vals[k].im.abs() > VAL_TOL {
            return Err(unsupported("non-unimodular eigenvalue without partner"));
        }
        g[(idx, idx)] = C64::from_polar(1.0, vals[k].re);
    }
    Ok(g)
}

fn rot(angle: f64) -> [[f64; 2]; 2] {
    let (s, co) = angle.sin_cos();
    [[co, -s], [s, co]]
}

fn sl_normal_form(n: usize, vals: &[C64]) -> Result<DMatrix<C64>> {
    let i = C64::new(0.0, 1.0);
    let is_real = |v: C64| (i * v).exp().im.abs() <= VAL_TOL * (i * v).exp().norm();
    let (pairs, single) = pair_values(vals, |v| !is_real(v), |a, b| near(b, -a.conj()))?;
    let mut g = DMatrix::zeros(n, n);
    let mut idx = 0;
    for (a, _) in pairs {
        let e = (i * vals[a]).exp();
        let r = rot(e.arg());
        for x in 0..2 {
            for y in 0..2 {
                g[(idx + x, idx + y)] = c(e.norm() * r[x][y]);
            }
        }
        idx += 2;
    }
    for k in single {
        g[(idx, idx)] = c((i * vals[k]).exp().re);
        idx += 1;
    }
    Ok(g)
}

struct SignedSlots {
    plus: Vec<usize>,
    minus: Vec<usize>,
}

impl SignedSlots {
    fn take(v: &mut Vec<usize>, k: usize) -> Result<Vec<usize>> {
        if v.len() < k {
            return Err(unsupported("not enough indices of the required signature"));
        }
        Ok(v.drain(..k).collect())
    }
}

fn place(g: &mut DMatrix<C64>, idx: &[usize], block: &DMatrix<f64>) {
    for (x, &i) in idx.iter().enumerate() {
        for (y, &j) in idx.iter().enumerate() {
            g[(i, j)] = c(block[(x, y)]);
        }
    }
}

fn so_normal_form(p: usize, q: usize, vals: &[C64]) -> Result<DMatrix<C64>> {
    let n = p + q;
    let mut slots = SignedSlots {
        plus: (0..p).collect(),
        minus: (p..n).collect(),
    };
    let mut g = DMatrix::zeros(n, n);
    let mixed = |v: C64| v.im.abs() > VAL_TOL && (v.re.sin().abs() > VAL_TOL);
    let (quartets, single) =
        pair_values(vals, mixed, |a, b| near(b, a.conj()) || near(b, -a.conj()))?;
    for (a, _) in quartets {
        let (alpha, beta) = (vals[a].re, vals[a].im);
        let mut idx = SignedSlots::take(&mut slots.plus, 2)?;
        idx.extend(SignedSlots::take(&mut slots.minus, 2)?);
        let r = rot(alpha);
        let (ch, sh) = (beta.cosh(), beta.sinh());
        let block = DMatrix::from_fn(4, 4, |x, y| {
            let bx = [[ch, sh], [sh, ch]][x / 2][y / 2];
            bx * r[x % 2][y % 2]
        });
        place(&mut g, &idx, &block);
    }
    let mut rotations = Vec::new();
    for k in single {
        let v = vals[k];
        if v.im.abs() > VAL_TOL {
            let sign = v.re.cos().signum();
            let mut idx = SignedSlots::take(&mut slots.plus, 1)?;
            idx.extend(SignedSlots::take(&mut slots.minus, 1)?);
            let (ch, sh) = (v.im.cosh(), v.im.sinh());
            let block = DMatrix::from_row_slice(2, 2, &[ch, sh, sh, ch]) * sign;
            place(&mut g, &idx, &block);
        } else {
            rotations.push(v.re);
        }
    }
    for angle in rotations {
        let side = if slots.plus.len() >= 2 {
            &mut slots.plus
        } else {
            &mut slots.minus
        };
        let idx = SignedSlots::take(side, 2)?;
        let r = rot(angle);
        place(&mut g, &idx, &DMatrix::from_fn(2, 2, |x, y| r[x][y]));
    }
    let rest: Vec<usize> = slots.plus.into_iter().chain(slots.minus).collect();
    if rest.len() > 1 {
        return Err(unsupported("rotation planes do not fit the signature"));
    }
    for i in rest {
        g[(i, i)] = c(1.0);
    }
    Ok(g)
}

fn usp_normal_form(p: usize, q: usize, vals: &[C64]) -> Result<DMatrix<C64>> {
    let n = p + q;
    let (pairs, single) = pair_values(vals, |v| v.im.abs() > VAL_TOL, |a, b| near(b, a.conj()))?;
    if pairs.len() > p.min(q) {
        return Err(unsupported("more hyperbolic quartets than min(p, q)"));
    }
    let mut g = DMatrix::zeros(2 * n, 2 * n);
    let mut plus: Vec<usize> = (0..p).collect();
    let mut minus: Vec<usize> = (p..n).collect();
    for (a, b) in pairs {
        let (u, v) = (plus.remove(0), minus.remove(0));
        let alpha = (vals[a].re + vals[b].re) / 2.0;
        let beta = (vals[b].im - vals[a].im) / 2.0;
        let (ch, sh) = (beta.cosh(), beta.sinh());
        let ph = C64::from_polar(1.0, alpha);
        // A on (u, v) and A^{-T} on (u+n, v+n).
        g[(u, u)] = ph * ch;
        g[(v, v)] = ph * ch;
        g[(u, v)] = ph * sh;
        g[(v, u)] = ph * sh;
        let phc = ph.conj();
        g[(u + n, u + n)] = phc * ch;
        g[(v + n, v + n)] = phc * ch;
        g[(u + n, v + n)] = -phc * sh;
        g[(v + n, u + n)] = -phc * sh;
    }
    let free: Vec<usize> = plus.into_iter().chain(minus).collect();
    for (k, i) in single.into_iter().zip(free) {
        if vals[k].im.abs() > VAL_TOL {
            return Err(unsupported("non-unimodular eigenvalue without partner"));
        }
        g[(i, i)] = C64::from_polar(1.0, vals[k].re);
        g[(i + n, i + n)] = C64::from_polar(1.0, -vals[k].re);
    }
    Ok(g)
}

fn sp_normal_form(n: usize, vals: &[C64]) -> Result<DMatrix<C64>> {
    let mixed = |v: C64| v.im.abs() > VAL_TOL && v.re.sin().abs() > VAL_TOL;
    let (pairs, single) = pair_values(vals, mixed, |a, b| near(b, a.conj()) || near(b, -a.conj()))?;
    let mut g = DMatrix::zeros(2 * n, 2 * n);
    for (a, b) in pairs {
        let (alpha, beta) = (vals[a].re, vals[a].im);
        let r = rot(alpha);
        let (lo, hi) = ((-beta).exp(), beta.exp());
        let idx = [a, b];
        for x in 0..2 {
            for y in 0..2 {
                g[(idx[x], idx[y])] = c(lo * r[x][y]);
                g[(idx[x] + n, idx[y] + n)] = c(hi * r[x][y]);
            }
        }
    }
    for k in single {
        let v = vals[k];
        if v.im.abs() > VAL_TOL {
            let sign = v.re.cos().signum();
            g[(k, k)] = c(sign * (-v.im).exp());
            g[(k + n, k + n)] = c(sign * v.im.exp());
        } else {
            let (s, co) = v.re.sin_cos();
            g[(k, k)] = c(co);
            g[(k, k + n)] = c(s);
            g[(k + n, k)] = c(-s);
            g[(k + n, k + n)] = c(co);
        }
    }
    Ok(g)
}

pub fn classify_element(family: &GroupFamily, g: &DMatrix<C64>) -> Result<Classification> {
    GroupModel::new(*family)?.classify(g)
}

pub fn domain_of_radial(family: &GroupFamily, point: &RadialPoint) -> Result<EvolutionDomain> {
    GroupModel::new(*family)?.domain_of_radial(point).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(s: &str) -> GroupFamily {
        parse_group(s).unwrap()
    }

    fn masks(s: &str) -> Vec<String> {
        enumerate_domains(&fam(s))
            .unwrap()
            .iter()
            .map(|d| d.mask_string())
            .collect()
    }

    #[test]
    fn parse_names() {
        assert_eq!(fam("SU(2,1)"), GroupFamily::SU { p: 2, q: 1 });
        assert_eq!(fam("SU21"), GroupFamily::SU { p: 2, q: 1 });
        assert_eq!(fam("SL(3,R)"), GroupFamily::SL { n: 3 });
        assert_eq!(fam("SL3R"), GroupFamily::SL { n: 3 });
        assert_eq!(fam("USp(4,2)"), GroupFamily::USp { p: 2, q: 1 });
        assert_eq!(fam("Sp(6,R)"), GroupFamily::Sp { n: 3 });
        assert_eq!(fam("Sp6R"), GroupFamily::Sp { n: 3 });
        assert_eq!(fam("A2"), GroupFamily::SU { p: 3, q: 0 });
        assert_eq!(fam("C3"), GroupFamily::USp { p: 3, q: 0 });
        assert_eq!(fam("SO(3,2)").to_string(), "SO(3,2)");
        assert_eq!(fam("USp42").to_string(), "USp(4,2)");
        assert!(parse_group("SU(1)").is_err());
        assert!(parse_group("XY(2)").is_err());
        assert!(parse_group("USp(3,2)").is_err());
    }

    #[test]
    fn printed_masks() {
        assert_eq!(masks("SU(1,1)"), ["R", "I"]);
        assert_eq!(masks("SU(2,1)"), ["RR", "IR"]);
        assert_eq!(masks("SL(3,R)"), ["RI", "II"]);
        assert_eq!(masks("SO(4,1)"), ["RR", "RI"]);
        assert_eq!(masks("SO(3,2)"), ["RR", "RI", "II"]);
        assert_eq!(masks("SU(3,1)"), ["RRR", "IRR"]);
        assert_eq!(masks("SU(2,2)"), ["RRR", "IRR", "IRI"]);
        assert_eq!(masks("SO(3,3)"), ["RIR", "IIR", "III"]);
        assert_eq!(masks("SO(5,1)"), ["RIR"]);
        assert_eq!(masks("USp(4,2)"), ["RRR", "IRR"]);
        assert_eq!(masks("Sp(6,R)"), ["RRR", "RRI", "IIR", "III"]);
    }

    #[test]
    fn printed_winding_sublattices() {
        let rows = |s: &str, label: &str| -> Vec<Vec<i64>> {
            let d = enumerate_domains(&fam(s)).unwrap();
            d.iter()
                .find(|d| d.label == label)
                .unwrap()
                .sublattice
                .coefficients
                .clone()
        };
        assert_eq!(rows("SU(2,1)", "D1"), vec![vec![1, 2]]);
        assert_eq!(rows("SL(3,R)", "D1"), vec![vec![1, 0]]);
        assert_eq!(rows("SO(3,2)", "D1"), vec![vec![2, 1]]);
        assert_eq!(rows("SU(2,2)", "D2"), vec![vec![1, 2, 0], vec![0, 0, 1]]);
        assert_eq!(rows("SU(2,2)", "D1"), vec![vec![1, 2, 1]]);
        assert_eq!(rows("SO(3,3)", "D2"), vec![vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(rows("SO(3,3)", "D1"), vec![vec![0, 0, 1]]);
        assert_eq!(rows("USp(4,2)", "D2"), vec![vec![1, 2, 0], vec![0, 0, 1]]);
        assert_eq!(rows("Sp(6,R)", "D2"), vec![vec![1, 0, 0], vec![0, 1, 1]]);
        assert_eq!(rows("Sp(6,R)", "D1"), vec![vec![0, 0, 1]]);
        assert!(rows("SL(3,R)", "D0").is_empty());
    }

    #[test]
    fn domain_counts() {
        for p in 1..7usize {
            for q in 0..(8 - p) {
                if p + q >= 2 {
                    let want = if q == 0 { 1 } else { p.min(q) + 1 };
                    assert_eq!(
                        enumerate_domains(&GroupFamily::SU { p, q }).unwrap().len(),
                        want
                    );
                }
                if p + q >= 5 && (p + q) % 2 == 1 {
                    assert_eq!(
                        enumerate_domains(&GroupFamily::SO { p, q }).unwrap().len(),
                        p.min(q) + 1
                    );
                }
            }
        }
        for n in 2..8 {
            assert_eq!(
                enumerate_domains(&GroupFamily::SL { n }).unwrap().len(),
                n / 2 + 1
            );
            assert_eq!(
                enumerate_domains(&GroupFamily::Sp { n }).unwrap().len(),
                n + 1
            );
        }
        // As printed: |p − q| + 1 domains for USp(2p,2q).
        assert_eq!(
            enumerate_domains(&GroupFamily::USp { p: 2, q: 1 })
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            enumerate_domains(&GroupFamily::USp { p: 5, q: 1 })
                .unwrap()
                .len(),
            5
        );
        let usp22 = enumerate_domains(&GroupFamily::USp { p: 1, q: 1 }).unwrap();
        assert_eq!(usp22.len(), 1);
        let usp62 = enumerate_domains(&GroupFamily::USp { p: 3, q: 1 }).unwrap();
        assert_eq!(usp62.iter().filter(|d| d.realizable).count(), 2);
        // SO(4,4): pure rotations, one mixed quartet, two boosts, two quartets, ...
        let so44 = enumerate_domains(&GroupFamily::SO { p: 4, q: 4 }).unwrap();
        assert!(so44.iter().any(|d| d.label == "D2'"));
    }

    #[test]
    fn su11_classification() {
        let m = GroupModel::new(fam("SU(1,1)")).unwrap();
        let phi: f64 = 1.3;
        let g = DMatrix::from_row_slice(
            2,
            2,
            &[
                C64::from_polar(1.0, phi / 2.0),
                c(0.0),
                c(0.0),
                C64::from_polar(1.0, -phi / 2.0),
            ],
        );
        let cl = m.classify(&g).unwrap();
        assert_eq!(cl.domain.label, "D1");
        assert!((cl.point.values[0] - phi).abs() < 1e-12);
        let th: f64 = 0.8;
        let g = DMatrix::from_row_slice(
            2,
            2,
            &[
                c((th / 2.0).cosh()),
                c((th / 2.0).sinh()),
                c((th / 2.0).sinh()),
                c((th / 2.0).cosh()),
            ],
        );
        let cl = m.classify(&g).unwrap();
        assert_eq!(cl.domain.label, "D0");
        assert!((cl.point.values[0].abs() - th).abs() < 1e-12);
        assert!(cl.residual < 1e-12);
        let cl = m.classify(&(g * c(-1.0))).unwrap();
        assert_eq!(cl.domain.label, "D0");
        assert_eq!(cl.central, c(-1.0));
    }

    #[test]
    fn su2_trace_convention() {
        let m = GroupModel::new(fam("SU(2)")).unwrap();
        let (a, b) = (C64::new(0.3, 0.5), C64::new(-0.2, 0.4));
        let nrm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (a, b) = (a / nrm, b / nrm);
        let g = DMatrix::from_row_slice(2, 2, &[a, b, -b.conj(), a.conj()]);
        let cl = m.classify(&g).unwrap();
        let tr = (a + a.conj()).re;
        let expect = 2.0 * (tr / 2.0).acos();
        assert!(
            (cl.point.values[0] - expect).abs() < 1e-10,
            "{:?} {expect}",
            cl.point
        );
    }

    #[test]
    fn not_in_group_and_guard_band() {
        let m = GroupModel::new(fam("SU(1,1)")).unwrap();
        let g = DMatrix::from_row_slice(2, 2, &[c(1.0), c(1.0), c(0.0), c(1.0)]);
        assert!(matches!(m.classify(&g), Err(Error::NotInGroup(_))));
        let e: f64 = 1e-7;
        let g =
            DMatrix::from_row_slice(2, 2, &[c(e.cosh()), c(e.sinh()), c(e.sinh()), c(e.cosh())]);
        assert!(matches!(m.classify(&g), Err(Error::Ambiguous { .. })));
        let bad = DMatrix::from_element(3, 3, c(0.0));
        assert!(matches!(m.classify(&bad), Err(Error::Argument(_))));
    }

    #[test]
    fn domain_lookup() {
        let m = GroupModel::new(fam("SO(3,2)")).unwrap();
        let p = RadialPoint::new(vec![0.3, 0.4], vec![Coord::Real, Coord::Imaginary]).unwrap();
        assert_eq!(m.domain_of_radial(&p).unwrap().label, "D1");
        let p = RadialPoint::new(vec![0.3, 0.4], vec![Coord::Imaginary, Coord::Real]).unwrap();
        assert_eq!(m.domain_of_radial(&p).unwrap().label, "D1");
        let m = GroupModel::new(fam("SU(1,1)")).unwrap();
        assert_eq!(
            m.domain_of_radial(&RadialPoint::real(vec![0.2]))
                .unwrap()
                .label,
            "D1"
        );
        let m = GroupModel::new(fam("SO(5,1)")).unwrap();
        assert!(m
            .domain_of_radial(&RadialPoint::real(vec![0.2, 0.1, 0.3]))
            .is_err());
    }

    /// A random element of the identity component via exp of a Lie algebra element.
    pub(crate) fn random_element(
        family: &GroupFamily,
        rng: &mut impl rand::Rng,
        size: f64,
    ) -> DMatrix<C64> {
        let n = family.matrix_dim();
        let mut r = || C64::new(rng.random_range(-size..size), rng.random_range(-size..size));
        let raw = DMatrix::from_fn(n, n, |_, _| r());
        let model_signs = GroupModel::new(*family).unwrap().metric_signs();
        let e = eta(&model_signs);
        let x = match *family {
            GroupFamily::SU { .. } => {
                let h = (&raw + raw.adjoint()) * c(0.5);
                let mut x = &e * h * C64::new(0.0, 1.0);
                let tr = x.trace() / c(n as f64);
                for i in 0..n {
                    x[(i, i)] -= tr;
                }
                x
            }
            GroupFamily::SL { .. } => {
                let mut x = raw.map(|z| c(z.re));
                let tr = x.trace() / c(n as f64);
                for i in 0..n {
                    x[(i, i)] -= tr;
                }
                x
            }
            GroupFamily::SO { .. } => {
                let a = raw.map(|z| c(z.re));
                (&a - a.transpose()) * &e
            }
            GroupFamily::Sp { n: h } => {
                let a = raw.map(|z| c(z.re));
                zeta(h) * (&a + a.transpose())
            }
            GroupFamily::USp { p, q } => {
                // Alternate projections onto u(p,q) and sp(2n, C).
                let z = zeta(p + q);
                let mut x = raw;
                for _ in 0..200 {
                    x = (&x - &e * x.adjoint() * &e) * c(0.5);
                    x = (&x + &z * x.transpose() * &z) * c(0.5);
                }
                x
            }
        };
        x.exp()
    }

    fn sample_point(dom: &EvolutionDomain, rng: &mut impl rand::Rng) -> RadialPoint {
        let values = (0..dom.signature.len())
            .map(|_| rng.random_range(0.2..1.4))
            .collect();
        RadialPoint::new(values, dom.signature.clone()).unwrap()
    }

    const SECTION8: [&str; 10] = [
        "SU(2,1)", "SL(3,R)", "SO(4,1)", "SO(3,2)", "SU(3,1)", "SU(2,2)", "SO(3,3)", "SO(5,1)",
        "USp(4,2)", "Sp(6,R)",
    ];

    #[test]
    fn normal_forms_round_trip() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for name in SECTION8
            .iter()
            .chain(["SU(3)", "SO(5)", "USp(4)", "SO(4,4)", "SL(4,R)", "SO(4,3)"].iter())
        {
            let m = GroupModel::new(fam(name)).unwrap();
            for dom in m.domains.iter().filter(|d| d.realizable) {
                for _ in 0..3 {
                    let pt = sample_point(dom, &mut rng);
                    let g = m.element_from_radial(dom, &pt, c(1.0)).unwrap();
                    m.check_membership(&g)
                        .unwrap_or_else(|e| panic!("{name} {}: {e}", dom.label));
                    let cl = m
                        .classify(&g)
                        .unwrap_or_else(|e| panic!("{name} {}: {e}", dom.label));
                    assert_eq!(cl.domain.label, dom.label, "{name} {:?}", pt.values);
                    assert!(
                        cl.residual < 1e-8,
                        "{name} {}: residual {}",
                        dom.label,
                        cl.residual
                    );
                    let back = m
                        .element_from_radial(&cl.domain, &cl.point, cl.central)
                        .unwrap();
                    let eb = linalg::eigenvalues(&back).unwrap();
                    assert!(
                        linalg::multiset_distance(&eb, &cl.eigenvalues) < 1e-8,
                        "{name} {}",
                        dom.label
                    );
                }
            }
        }
    }

    #[test]
    fn classification_is_conjugation_invariant() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for name in SECTION8 {
            let f = fam(name);
            let m = GroupModel::new(f).unwrap();
            for dom in m
                .domains
                .iter()
                .filter(|d| d.realizable)
                .cycle()
                .take(4 * m.domains.len())
            {
                let pt = sample_point(dom, &mut rng);
                let g = m.element_from_radial(dom, &pt, c(1.0)).unwrap();
                let base = m.classify(&g).unwrap();
                let h = random_element(&f, &mut rng, 0.3);
                m.check_membership(&h)
                    .unwrap_or_else(|e| panic!("{name}: random element {e}"));
                let hinv = h.clone().try_inverse().unwrap();
                let conj = &h * g * hinv;
                let cl = m
                    .classify(&conj)
                    .unwrap_or_else(|e| panic!("{name} {}: {e}", dom.label));
                assert_eq!(cl.domain.label, base.domain.label, "{name}");
                for (a, b) in cl.point.values.iter().zip(&base.point.values) {
                    assert!(
                        (a - b).abs() < 1e-6,
                        "{name} {}: {:?} vs {:?} c {} {} eig {:?} {:?}",
                        dom.label,
                        cl.point.values,
                        base.point.values,
                        cl.central,
                        base.central,
                        cl.eigenvalues,
                        base.eigenvalues
                    );
                }
            }
        }
    }
}
