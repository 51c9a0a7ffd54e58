//! The subcommands. Each builds a `Report`; failures of library preconditions
//! surface as `CliError::Domain` with the library's reason.

use kummer_core::algebra::{Field, FieldElement, ProjPoint, UniPoly};
use kummer_core::automorphisms::{build_gl, find_gl0, noncommuting_involution_report};
use kummer_core::curvefile::{parse_field, CurveFile};
use kummer_core::duality::kappa_star;
use kummer_core::kummer::{derive_kummer_quartic, incidence, kummer_coords, nodes, tropes};
use kummer_core::linecomplex::{g_form, h_form2, kappa1, sigma_membership, theta, zeta_from_x};
use kummer_core::surface::{diagonal_quadrics, kappa_constructive, membership_residues, s_membership, to_pi, Kappa};
use kummer_core::twists::{search_points, twist_diagonal, twist_iso, twist_surface, TwistClass};
use kummer_core::verify::{self, Check, Options, Suite};
use kummer_core::{DivisorPair, Error, Genus2Curve};
use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Vanishing(String),
}

/// The explicit forms are built from P(y - v)/(x - u)^2 and vanish together
/// exactly on this locus.
const VANISHING: &str = "all six explicit forms vanish (F'(x) = 0, the class of 2 infinity, or y = v)";

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Domain(Error::Parse { .. }) => 2,
            CliError::Domain(_) | CliError::Vanishing(_) => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub fn load_curve(path: &str, field: Option<&str>) -> CliResult<Genus2Curve> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    let mut file = CurveFile::parse(&text).map_err(|e| match e {
        Error::Parse { line, column, message } => CliError::Usage(format!("{path}:{line}:{column}: {message}")),
        other => CliError::Usage(format!("{path}: {other}")),
    })?;
    if let Some(f) = field {
        let field = parse_field(f).map_err(CliError::Usage)?;
        file = file.with_field(field).map_err(|e| CliError::Usage(format!("{path} over {field}: {e}")))?;
    }
    if file.label.is_none() {
        file.label = Some(path.to_string());
    }
    Ok(file.build()?)
}

fn parse_scalars(text: &str, field: Field, what: &str) -> CliResult<Vec<FieldElement>> {
    text.split([':', ','])
        .map(|s| field.parse_element(s).map_err(|m| CliError::Usage(format!("{what}: {m}"))))
        .collect()
}

fn parse_point(text: &str, field: Field, dim: usize) -> CliResult<ProjPoint> {
    let coords = parse_scalars(text, field, "point")?;
    if coords.len() != dim {
        return Err(CliError::Usage(format!("point: expected {dim} coordinates, got {}", coords.len())));
    }
    ProjPoint::new(coords).map_err(|_| CliError::Usage("point: all coordinates are zero".into()))
}

fn parse_divisor(text: &str, curve: &Genus2Curve) -> CliResult<DivisorPair> {
    let v = parse_scalars(text, curve.field(), "divisor")?;
    let mut it = v.into_iter();
    match (it.next(), it.next(), it.next(), it.next(), it.next(), it.next()) {
        (Some(x), Some(y), Some(u), Some(w), None, None) => Ok(DivisorPair::new(curve, x, y, u, w)?),
        (Some(x), Some(y), Some(u), Some(w), Some(d), None) => Ok(DivisorPair::twisted(curve, x, y, u, w, d)?),
        _ => Err(CliError::Usage("divisor: expected x,y,u,v or x,y,u,v,twist".into())),
    }
}

/// Normalized so equal projective points print identically.
fn fmt_point(p: &ProjPoint) -> String {
    let p = p.normalized();
    let c: Vec<String> = p.coords().iter().map(ToString::to_string).collect();
    format!("({})", c.join(":"))
}

fn quartic_table(poly: &kummer_core::algebra::MPoly) -> String {
    let terms: Vec<String> = poly
        .terms()
        .map(|(e, c)| format!("[{}]={c}", e.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    terms.join(" ")
}

pub fn cmd_kummer(curve: &Genus2Curve) -> CliResult<Report> {
    let mut r = Report::new("kummer", curve);
    let k = derive_kummer_quartic(curve)?;
    r.data("K_2 (exponents of xi_1,xi_2,xi_3)", quartic_table(&k.k2));
    r.data("K_1 (exponents of xi_1,xi_2,xi_3)", quartic_table(&k.k1));
    r.data("K_0 (exponents of xi_1,xi_2,xi_3)", quartic_table(&k.k0));
    let checks = verify::kappa_suite(curve, Options { samples: 0, seed: 0 })?;
    if let Some(c) = checks.into_iter().find(|c| c.name.starts_with("quartic K_2")) {
        r.check(c);
    }
    if !curve.has_roots() {
        r.check(Check::skip("nodes and tropes", "roots of F unavailable over the base field"));
        return Ok(r);
    }
    let node_list = nodes(curve)?;
    let trope_list = tropes(curve)?;
    for (l, n) in &node_list {
        r.data(format!("node {l}"), fmt_point(n));
    }
    let mut counts = Vec::new();
    for (l, t) in &trope_list {
        let on: Vec<String> = node_list
            .iter()
            .filter(|(_, n)| incidence(t, n).is_zero())
            .map(|(nl, _)| nl.to_string())
            .collect();
        r.data(format!("trope {l}"), format!("{} nodes {}", fmt_point(t), on.join(",")));
        counts.push(on.len());
    }
    r.check(
        Check::new("16 nodes on K", node_list.len() == 16 && node_list.iter().all(|(_, n)| k.contains(n)))
            .with("nodes", node_list.len()),
    );
    r.check(Check::new("16 tropes", trope_list.len() == 16).with("tropes", trope_list.len()));
    r.check(Check::new("each trope contains 6 nodes", counts.iter().all(|&c| c == 6)).with("counts", format!("{counts:?}")));
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum MapKind {
    Kappa,
    Kappa1,
    #[value(name = "kappa_star", alias = "kappa-star")]
    KappaStar,
    Theta,
}

fn membership_checks(r: &mut Report, p: &ProjPoint, curve: &Genus2Curve) -> CliResult<()> {
    let res = membership_residues(p, curve)?;
    let residues: Vec<String> = res.iter().map(ToString::to_string).collect();
    r.check(Check::new("P^2 mod F has degree <= 2", s_membership(p, curve)).with("residues X^5,X^4,X^3", residues.join(",")));
    if curve.has_roots() {
        let d = diagonal_quadrics(&to_pi(p, curve)?, curve)?;
        let values: Vec<String> = d.iter().map(ToString::to_string).collect();
        r.check(Check::new("diagonal quadrics vanish", d.iter().all(FieldElement::is_zero)).with("values", values.join(",")));
    }
    Ok(())
}

pub fn cmd_map(
    curve: &Genus2Curve,
    kind: MapKind,
    point: Option<&str>,
    divisor: Option<&str>,
    index: usize,
) -> CliResult<Report> {
    let name = match kind {
        MapKind::Kappa => "kappa",
        MapKind::Kappa1 => "kappa1",
        MapKind::KappaStar => "kappa_star",
        MapKind::Theta => "theta",
    };
    let mut r = Report::new(&format!("map {name}"), curve);
    let divisor = divisor.map(|d| parse_divisor(d, curve)).transpose()?;
    let xi = match (&divisor, point, kind) {
        (_, Some(p), MapKind::Theta) => parse_point(p, curve.field(), 6)?,
        (Some(d), None, MapKind::Kappa | MapKind::Kappa1) => kummer_coords(d, curve)?,
        (None, Some(p), _) => parse_point(p, curve.field(), 4)?,
        _ => {
            return Err(CliError::Usage(format!(
                "map {name}: give exactly one of --point or --divisor (theta and kappa_star take --point)"
            )))
        }
    };
    r.data("input", fmt_point(&xi));
    match kind {
        MapKind::Kappa => {
            let explicit = match Kappa::new(curve)?.explicit(&xi) {
                Ok(p) => Some(p),
                Err(Error::ZeroVector) => None,
                Err(e) => return Err(e.into()),
            };
            let constructive = divisor.as_ref().map(|d| kappa_constructive(d, curve)).transpose()?;
            let image = match (&explicit, &constructive) {
                (Some(p), _) | (None, Some(p)) => p.clone(),
                (None, None) => return Err(CliError::Vanishing(VANISHING.into())),
            };
            r.data("image", fmt_point(&image));
            membership_checks(&mut r, &image, curve)?;
            match (&explicit, &constructive) {
                (Some(e), Some(c)) => {
                    r.check(Check::new("explicit equals constructive", e == c).with("constructive", fmt_point(c)))
                }
                (None, Some(_)) => r.check(Check::skip("explicit equals constructive", VANISHING)),
                _ => {}
            }
        }
        MapKind::Kappa1 => {
            let line = kappa1(&xi, curve)?;
            r.data("line (p43,p24,p41,p21,p31,p32)", fmt_point(line.point()));
            r.check(Check::new("Grassmann relation G = 0", g_form(line.coords()).is_zero()));
            r.check(Check::new("line lies in the complex H", h_form2(line.coords(), curve)?.is_zero()));
            let image = theta(line.point(), curve)?;
            r.data("theta(line)", fmt_point(&image));
            membership_checks(&mut r, &image, curve)?;
            match Kappa::new(curve)?.explicit(&xi) {
                Ok(k) => r.check(Check::new("theta(kappa1) = kappa", k == image).with("kappa", fmt_point(&k))),
                Err(Error::ZeroVector) => r.check(Check::skip("theta(kappa1) = kappa", "explicit forms vanish at this point")),
                Err(e) => return Err(e.into()),
            }
        }
        MapKind::KappaStar => {
            let kappa = Kappa::new(curve)?;
            let image = kappa_star(&xi, index, &kappa)?;
            r.data("index", index);
            r.data("image", fmt_point(&image));
            membership_checks(&mut r, &image, curve)?;
            let other = index % 6 + 1;
            let second = kappa_star(&xi, other, &kappa)?;
            r.check(Check::new(format!("kappa_star via i={index} and i={other} agree"), second == image));
        }
        MapKind::Theta => {
            let image = theta(&xi, curve)?;
            r.data("image", fmt_point(&image));
            let on_sigma = sigma_membership(&zeta_from_x(xi.coords(), curve)?, curve)?;
            r.data("input on Sigma", on_sigma);
            if on_sigma {
                membership_checks(&mut r, &image, curve)?;
            } else {
                r.check(Check::skip("image on S", "input is not on Sigma"));
            }
        }
    }
    Ok(r)
}

pub fn cmd_verify(curve: &Genus2Curve, suite: Option<Suite>, opts: Options) -> CliResult<Report> {
    let suites: Vec<Suite> = match suite {
        Some(s) => vec![s],
        None => Suite::ALL.to_vec(),
    };
    let label: Vec<String> = suites.iter().map(ToString::to_string).collect();
    let mut r = Report::new("verify", curve);
    r.seed = Some(opts.seed);
    r.data("suites", label.join(","));
    r.data("samples", opts.samples);
    for s in suites {
        for c in verify::run(s, curve, opts)? {
            let mut c = c;
            c.name = format!("{s}: {}", c.name);
            r.check(c);
        }
    }
    Ok(r)
}

pub fn cmd_twist(curve: &Genus2Curve, xi: Option<&str>, beta: Option<&str>, bound: u64) -> CliResult<Report> {
    let mut r = Report::new("twist", curve);
    let poly = |s: &str, what: &str| parse_scalars(s, curve.field(), what).map(|c| UniPoly::new(curve.field(), c));
    let (class, beta) = match (xi, beta) {
        (Some(x), None) => (TwistClass::new(&poly(x, "xi")?, curve)?, None),
        (None, Some(b)) => {
            let b = poly(b, "beta")?;
            (TwistClass::from_witness(&b, curve)?, Some(b))
        }
        _ => return Err(CliError::Usage("twist: give exactly one of --xi or --beta".into())),
    };
    r.data("xi mod F", class.xi());
    if curve.has_roots() {
        let vals: Vec<String> = class.values_at_roots()?.iter().map(ToString::to_string).collect();
        r.data("xi at roots", vals.join(","));
    }
    let surface = twist_surface(&class)?;
    for (name, g) in ["C5", "C4", "C3"].iter().zip(&surface.grams) {
        r.data(format!("gram {name}"), g.to_string().replace('\n', " "));
    }
    match twist_diagonal(&class) {
        Ok(d) => {
            for (k, m) in d.iter().enumerate() {
                let diag: Vec<String> = (0..6).map(|j| m.get(j, j).to_string()).collect();
                r.data(format!("diagonal form {k}"), diag.join(","));
            }
        }
        Err(Error::RootsUnavailable) => r.data("diagonal forms", "roots unavailable"),
        Err(e) => r.data("diagonal forms", e),
    }
    match search_points(&surface, bound) {
        Ok(points) => {
            r.data("search bound", bound);
            r.data("points found", points.len());
            for p in points.iter().take(20) {
                r.data("point", fmt_point(p));
            }
            let on = points.iter().all(|p| {
                surface.contains(p) && surface.gram_values(p).map(|g| g.iter().all(FieldElement::is_zero)).unwrap_or(false)
            });
            r.check(Check::new("found points satisfy the twisted forms", on).with("points", points.len()));
            if let Some(b) = &beta {
                let mut ok = true;
                for p in &points {
                    ok &= s_membership(&twist_iso(b, p, &class)?, curve);
                }
                r.check(Check::new("beta maps the twist into S", ok).with("points", points.len()));
            }
        }
        Err(Error::SearchSpaceTooLarge(n)) => {
            r.check(Check::skip("point search", format!("{n} candidates exceed the exhaustive limit")));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

pub fn cmd_autos(curve: &Genus2Curve) -> CliResult<Report> {
    let mut r = Report::new("autos", curve);
    let gl0 = find_gl0(curve)?;
    r.data("|GL_0|", gl0.len());
    for m in &gl0 {
        r.data("GL_0 element", m);
    }
    r.data("|GL|", build_gl(curve)?.order());
    for h in noncommuting_involution_report(curve)?.hits {
        let labels: Vec<String> = h.labeling.iter().map(|j| (j + 1).to_string()).collect();
        r.data(
            "non-commuting involution",
            format!("branch={} roots-order={} translation={}", h.branch, labels.join(","), h.translation),
        );
    }
    for c in verify::autos_suite(curve)? {
        r.check(c);
    }
    Ok(r)
}
