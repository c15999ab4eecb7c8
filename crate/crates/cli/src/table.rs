//! Per-group domain tables: radial vector shape and winding sublattice of
//! each domain, written with exact surds.

use liekernel::domains::{parse_group, EvolutionDomain, GroupFamily};
use liekernel::error::{Error, Result};
use liekernel::lattice::Coord;
use liekernel::rootsys::Family;

/// Groups the `table` command accepts: the tabulated real forms and their
/// compact parents.
pub const TABLE_GROUPS: [&str; 15] = [
    "SU(3)", "SU(2,1)", "SL(3,R)", "SO(5)", "SO(4,1)", "SO(3,2)", "SU(4)", "SU(3,1)", "SU(2,2)",
    "SO(3,3)", "SO(5,1)", "USp(6)", "USp(4,2)", "Sp(6,R)", "SU(2)",
];

const HATS: [&str; 3] = ["x̂", "ŷ", "ẑ"];
const RADICANDS: [i64; 8] = [1, 2, 3, 5, 6, 7, 10, 11];

/// c = a·√s with integer a and square-free s, if such a form exists.
pub fn as_surd(c: f64) -> Option<(i64, i64)> {
    RADICANDS.iter().find_map(|&s| {
        let a = c / (s as f64).sqrt();
        let r = a.round();
        ((a - r).abs() < 1e-9 && r != 0.0).then_some((r as i64, s))
    })
}

fn hat(j: usize) -> String {
    HATS.get(j)
        .map(|h| h.to_string())
        .unwrap_or_else(|| format!("ê{}", j + 1))
}

fn coefficient(a: i64, s: i64) -> String {
    let root = if s == 1 {
        String::new()
    } else {
        format!("√{s}")
    };
    match (a, s) {
        (1, 1) => String::new(),
        (-1, 1) => "-".into(),
        (1, _) => root,
        (-1, _) => format!("-{root}"),
        _ => format!("{a}{root}"),
    }
}

/// Positive terms first, each group in index order, so 2m₃−2m₁ rather than
/// −2m₁+2m₃.
fn join_terms(mut terms: Vec<(i64, String)>) -> String {
    terms.sort_by_key(|(a, _)| *a < 0);
    let mut out = String::new();
    for (k, (a, body)) in terms.iter().enumerate() {
        if k > 0 && *a > 0 {
            out.push('+');
        }
        out.push_str(body);
    }
    out
}

/// One Cartesian component Σₖ cₖ mₖ.
fn component(coeffs: &[(f64, String)]) -> String {
    let terms: Vec<(f64, &String)> = coeffs
        .iter()
        .filter(|(c, _)| c.abs() > 1e-12)
        .map(|(c, n)| (*c, n))
        .collect();
    let surds: Option<Vec<(i64, i64)>> = terms.iter().map(|(c, _)| as_surd(*c)).collect();
    let Some(surds) = surds else {
        let parts = terms
            .iter()
            .map(|(c, n)| (if *c < 0.0 { -1 } else { 1 }, format!("{:+}{n}", c)))
            .collect();
        return format!("({})", join_terms(parts));
    };
    let common = surds
        .first()
        .map(|s| s.1)
        .filter(|s| surds.iter().all(|t| t.1 == *s));
    match (terms.len(), common) {
        (1, _) => format!("{}{}", coefficient(surds[0].0, surds[0].1), terms[0].1),
        (_, Some(s)) => {
            let inner = join_terms(
                surds
                    .iter()
                    .zip(&terms)
                    .map(|((a, _), (_, n))| (*a, format!("{}{n}", coefficient(*a, 1))))
                    .collect(),
            );
            format!("{}({inner})", coefficient(1, s))
        }
        (_, None) => {
            let inner = join_terms(
                surds
                    .iter()
                    .zip(&terms)
                    .map(|((a, s), (_, n))| (*a, format!("{}{n}", coefficient(*a, *s))))
                    .collect(),
            );
            format!("({inner})")
        }
    }
}

/// m̃ as a linear form: integer variables are named after the pivot column
/// of the corresponding Hermite-normal-form row.
pub fn winding_string(dom: &EvolutionDomain) -> String {
    let lat = &dom.sublattice;
    if lat.generators.is_empty() {
        return "0".into();
    }
    let names: Vec<String> = lat
        .coefficients
        .iter()
        .map(|row| format!("m{}", row.iter().position(|&c| c != 0).map_or(0, |p| p + 1)))
        .collect();
    let r = dom.signature.len();
    let mut parts: Vec<(i64, String)> = Vec::new();
    for j in 0..r {
        let coeffs: Vec<(f64, String)> = lat
            .generators
            .iter()
            .zip(&names)
            .map(|(g, n)| (g[j], n.clone()))
            .collect();
        if coeffs.iter().all(|(c, _)| c.abs() <= 1e-12) {
            continue;
        }
        let c = component(&coeffs);
        let sign = if c.starts_with('-') { -1 } else { 1 };
        parts.push((sign, format!("{c}{}", hat(j))));
    }
    let mut out = String::new();
    for (k, (sign, body)) in parts.iter().enumerate() {
        if k > 0 && *sign > 0 {
            out.push('+');
        }
        out.push_str(body);
    }
    out
}

pub fn radial_string(dom: &EvolutionDomain) -> String {
    dom.signature
        .iter()
        .enumerate()
        .map(|(j, c)| match c {
            Coord::Real => format!("φ{}{}", j + 1, hat(j)),
            Coord::Imaginary => format!("iθ{}{}", j + 1, hat(j)),
        })
        .collect::<Vec<_>>()
        .join("+")
}

fn family_name(f: Family, r: usize) -> String {
    format!("{f}{r}")
}

/// The text table for one group.
pub fn render(group: &str) -> Result<String> {
    let family = parse_group(group)?;
    let known: Vec<GroupFamily> = TABLE_GROUPS
        .iter()
        .map(|g| parse_group(g).expect("table group"))
        .collect();
    if !known.contains(&family) {
        return Err(Error::Config(format!(
            "no table for {family}; available: {}",
            TABLE_GROUPS.join(", ")
        )));
    }
    let (f, r) = family.root_type();
    let domains = liekernel::domains::enumerate_domains(&family)?;
    let mut out = format!(
        "group: {family}\nroot system: {}\ndomains: {}\n",
        family_name(f, r),
        domains.len()
    );
    for d in &domains {
        out.push_str(&format!(
            "{}: φ={}; m̃={}\n",
            d.label,
            radial_string(d),
            winding_string(d)
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surds() {
        assert_eq!(as_surd(2.0 * 3f64.sqrt()), Some((2, 3)));
        assert_eq!(as_surd(-2f64.sqrt()), Some((-1, 2)));
        assert_eq!(as_surd(0.37), None);
        assert_eq!(coefficient(2, 3), "2√3");
        assert_eq!(coefficient(-1, 1), "-");
    }

    #[test]
    fn linear_forms() {
        let c = |v: &[(f64, &str)]| {
            component(
                &v.iter()
                    .map(|(a, n)| (*a, n.to_string()))
                    .collect::<Vec<_>>(),
            )
        };
        assert_eq!(c(&[(2.0, "m1"), (-1.0, "m2")]), "(2m1-m2)");
        assert_eq!(c(&[(-2.0, "m1"), (2.0, "m3")]), "(2m3-2m1)");
        let s2 = 2f64.sqrt();
        assert_eq!(c(&[(-2.0 * s2, "m1"), (s2, "m3")]), "√2(m3-2m1)");
        assert_eq!(c(&[(3f64.sqrt(), "m2")]), "√3m2");
    }

    #[test]
    fn unknown_group_rejected() {
        assert!(render("SU(5)").is_err());
        assert!(render("SU21").unwrap().starts_with("group: SU(2,1)\n"));
    }
}
