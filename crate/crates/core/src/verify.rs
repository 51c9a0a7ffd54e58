//! Invariant suites over one curve. Each check carries the data needed to
//! re-verify it elsewhere: seeds, counts and, on failure, the witness point.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FieldElement, MPoly, Matrix, ProjPoint, UniPoly};
use crate::automorphisms::{
    build_gl, find_gl0, gl0_to_matrix, noncommuting_involution_report, preserves_quadrics, Psi,
    satisfies_conjugation_law, Permutation, IDENTITY_PERMUTATION,
};
use crate::curve::Genus2Curve;
use crate::duality::{kappa_at, kappa_star, w_matrix};
use crate::error::{Error, Result};
use crate::kummer::{derive_kummer_quartic, kummer_coords, nodes, tangent_plane, tropes};
use crate::linecomplex::{kappa1, polarity_matrix, tangent_conic_rank, theta, theta_matrix};
use crate::lines::{base_point, delta_i_param, incidence_points, line_delta, line_incidence, LineMeet};
use crate::sampling::DivisorSampler;
use crate::surface::{
    diagonal_quadrics, epsilon, epsilon_matrix, inv_group, kappa_constructive, membership_grams, s_membership, to_pi,
    Kappa,
};
use crate::twists::{
    inverse_mod, search_points, twist_diagonal, twist_iso, twist_iso_inverse, twist_surface, TwistClass,
    MAX_SEARCH_PRIME,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Vec<(String, String)>,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool) -> Check {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: Vec::new(),
        }
    }

    pub fn skip(name: impl Into<String>, reason: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Skip,
            witness: vec![("reason".into(), reason.into())],
        }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Check {
        self.witness.push((key.into(), value.to_string()));
        self
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Kappa,
    Lines,
    Diagrams,
    Twists,
    Autos,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Kappa, Suite::Lines, Suite::Diagrams, Suite::Twists, Suite::Autos];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Kappa => "kappa",
            Suite::Lines => "lines",
            Suite::Diagrams => "diagrams",
            Suite::Twists => "twists",
            Suite::Autos => "autos",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Suite, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.to_string() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub samples: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { samples: 100, seed: 0 }
    }
}

pub fn run(suite: Suite, curve: &Genus2Curve, opts: Options) -> Result<Vec<Check>> {
    match suite {
        Suite::Kappa => kappa_suite(curve, opts),
        Suite::Lines => lines_suite(curve),
        Suite::Diagrams => diagrams_suite(curve, opts),
        Suite::Twists => twists_suite(curve, opts),
        Suite::Autos => autos_suite(curve),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draw budget: the rational sampler may repeat pairs, so allow many tries.
fn attempts(samples: usize) -> usize {
    samples.saturating_mul(40).max(400)
}

fn fmt_point(p: &ProjPoint) -> String {
    let c: Vec<String> = p.coords().iter().map(ToString::to_string).collect();
    format!("({})", c.join(":"))
}

fn fmt_divisor(d: &crate::curve::DivisorPair) -> String {
    format!("x={} y={} u={} v={} twist={}", d.x, d.y, d.u, d.v, d.twist)
}

/// `K_2 = xi_2^2 - 4 xi_1 xi_3` built from variables, independent of parsing.
fn expected_k2(curve: &Genus2Curve) -> MPoly {
    let f = curve.field();
    let v = |i| MPoly::var(f, 3, i);
    let four = MPoly::constant(f.from_i64(4), 3);
    &v(1).pow(2) - &(&four * &(&v(0) * &v(2)))
}

/// Criteria on `kappa`, membership and the quartic: explicit against
/// constructive `kappa` off the `y = v` base locus, membership of every
/// image, `K` at divisors and nodes, `K_2`, symmetry under the roots.
pub fn kappa_suite(curve: &Genus2Curve, opts: Options) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let quartic = derive_kummer_quartic(curve)?;
    checks.push(Check::new("quartic K_2 = xi_2^2 - 4 xi_1 xi_3", quartic.k2 == expected_k2(curve)).with("K_2", &quartic.k2));

    if curve.has_roots() {
        let node_list = nodes(curve)?;
        let bad: Vec<String> = node_list
            .iter()
            .filter(|(_, n)| !quartic.contains(n))
            .map(|(l, n)| format!("{l} {}", fmt_point(n)))
            .collect();
        checks.push(
            Check::new("K vanishes at the 16 nodes", bad.is_empty() && node_list.len() == 16)
                .with("nodes", node_list.len())
                .with("off_K", bad.join("; ")),
        );
        // a transposition and a 6-cycle generate all root permutations
        let mut same = true;
        let roots = curve.roots()?;
        for order in [[1, 0, 2, 3, 4, 5], [1, 2, 3, 4, 5, 0]] {
            let permuted: Vec<FieldElement> = order.iter().map(|&k| roots[k].clone()).collect();
            let rebuilt = Genus2Curve::from_roots(curve.field(), permuted, curve.f(6))?;
            same &= derive_kummer_quartic(&rebuilt)? == quartic;
        }
        checks.push(Check::new("K invariant under root permutations", same).with("generators", "(1 2), (1 2 3 4 5 6)"));
    } else {
        checks.push(Check::skip("K vanishes at the 16 nodes", "roots unavailable"));
        checks.push(Check::skip("K invariant under root permutations", "roots unavailable"));
    }

    let kappa = Kappa::new(curve)?;
    let sampler = DivisorSampler::new(curve)?;
    let mut r = rng(opts.seed);
    let (mut compared, mut on_locus, mut drawn) = (0usize, 0usize, 0usize);
    let mut mismatch: Option<String> = None;
    let mut off_k: Option<String> = None;
    let mut not_member: Option<String> = None;
    while compared < opts.samples && drawn < attempts(opts.samples) {
        drawn += 1;
        let d = sampler.sample(&mut r);
        let xi = kummer_coords(&d, curve)?;
        if !quartic.contains(&xi) {
            off_k.get_or_insert_with(|| fmt_divisor(&d));
            continue;
        }
        let constructive = kappa_constructive(&d, curve)?;
        let member = s_membership(&constructive, curve)
            && match to_pi(&constructive, curve) {
                Ok(pi) => diagonal_quadrics(&pi, curve)?.iter().all(FieldElement::is_zero),
                Err(Error::RootsUnavailable) => true,
                Err(e) => return Err(e),
            };
        if !member {
            not_member.get_or_insert_with(|| fmt_divisor(&d));
        }
        match kappa.explicit(&xi) {
            Ok(p) if d.y != d.v && p == constructive => compared += 1,
            Err(Error::ZeroVector) if d.y == d.v => on_locus += 1,
            other => {
                mismatch.get_or_insert_with(|| format!("{} -> {other:?}", fmt_divisor(&d)));
            }
        }
    }
    let enough = compared >= opts.samples;
    checks.push(
        Check::new("explicit kappa equals constructive kappa", enough && mismatch.is_none())
            .with("seed", opts.seed)
            .with("compared", compared)
            .with("zero_on_y_eq_v", on_locus)
            .with("drawn", drawn)
            .with("witness", mismatch.unwrap_or_default()),
    );
    checks.push(
        Check::new("kappa images lie on S", not_member.is_none() && drawn > 0)
            .with("seed", opts.seed)
            .with("checked", drawn)
            .with("quadrics", if curve.has_roots() { "P^2 mod F degree <= 2; three diagonal quadrics" } else { "P^2 mod F degree <= 2" })
            .with("witness", not_member.unwrap_or_default()),
    );
    checks.push(
        Check::new("K vanishes on divisor images", off_k.is_none() && drawn > 0)
            .with("seed", opts.seed)
            .with("checked", drawn)
            .with("witness", off_k.unwrap_or_default()),
    );
    Ok(checks)
}

/// Blow-up of `N_0`, the parametrized lines `Delta_i`, their meets with
/// `Delta_0`, and the census of the 32 lines with their 96 crossing points.
pub fn lines_suite(curve: &Genus2Curve) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    if !curve.has_roots() {
        return Ok(vec![Check::skip("lines", "roots unavailable")]);
    }
    let field = curve.field();
    let kappa = Kappa::new(curve)?;
    // arcs through N_0 need F(x) != 0
    let xs: Vec<FieldElement> = (-9i64..40)
        .map(|x| field.from_i64(x))
        .filter(|x| !curve.eval(x).is_zero())
        .take(5)
        .collect();
    let xs_text = xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");

    let mut ok = true;
    for x in &xs {
        let expected = ProjPoint::new(vec![-x, field.one(), field.zero(), field.zero(), field.zero(), field.zero()])?;
        ok &= kappa.blowup_direction_at_node0(x)? == expected;
    }
    checks.push(Check::new("N_0 blows up along (-x:1:0:0:0:0)", ok).with("x", &xs_text));

    let mut ok = true;
    for i in 1..=6 {
        for x in &xs {
            let p = delta_i_param(i, x, curve)?;
            let from_delta0 = epsilon(i, &kappa.blowup_direction_at_node0(x)?, curve)?;
            ok &= s_membership(&p, curve) && p == from_delta0 && line_delta(&[i], curve)?.contains(&p);
        }
    }
    checks.push(Check::new("Delta_i parametrization lies on S and equals epsilon_i(Delta_0)", ok));

    let d0 = line_delta(&[], curve)?;
    let mut ok = true;
    for i in 1..=6 {
        ok &= d0.meet(&line_delta(&[i], curve)?) == LineMeet::Point(base_point(i, curve)?);
        for j in (1..=6).filter(|&j| j != i) {
            ok &= d0.meet(&line_delta(&[i, j], curve)?) == LineMeet::Empty;
            for k in (1..=6).filter(|&k| k != i && k != j) {
                ok &= d0.meet(&line_delta(&[i, j, k], curve)?) == LineMeet::Empty;
            }
        }
    }
    checks.push(Check::new("Delta_0 meets Delta_i at p_i and misses Delta_ij, Delta_ijk", ok));

    let inc = line_incidence(curve)?;
    let degrees: Vec<usize> = (0..inc.lines.len()).map(|a| inc.neighbours(a).len()).collect();
    let on_s = inc.lines.iter().all(|l| l.generators.iter().all(|g| s_membership(g, curve)));
    checks.push(
        Check::new("orbit of Delta_0 has 32 lines, each meeting 6 others", inc.lines.len() == 32 && degrees.iter().all(|&d| d == 6) && on_s)
            .with("lines", inc.lines.len())
            .with("degrees", format!("{:?}", degrees.iter().min().zip(degrees.iter().max()))),
    );

    let labelled = incidence_points(curve)?;
    let mut ok = labelled.len() == 96 && inc.points().len() == 96;
    for (label, p) in &labelled {
        let (s, t) = label.lines();
        ok &= line_delta(&s, curve)?.meet(&line_delta(&t, curve)?) == LineMeet::Point(p.clone());
        ok &= inc.points().contains(p);
    }
    checks.push(Check::new("intersection points are p_i, p_ij, p_ijk", ok).with("points", labelled.len()));
    Ok(checks)
}

/// Divisor images off the tropes, the `y = v` locus and the trope planes,
/// drawn deterministically from `seed`.
fn smooth_points(curve: &Genus2Curve, kappa: &Kappa, opts: Options) -> Result<Vec<ProjPoint>> {
    let sampler = DivisorSampler::new(curve)?;
    let trope_list = tropes(curve)?;
    let mut r = rng(opts.seed);
    let mut out = Vec::new();
    let mut drawn = 0;
    while out.len() < opts.samples && drawn < attempts(opts.samples) {
        drawn += 1;
        let d = sampler.sample(&mut r);
        let xi = kummer_coords(&d, curve)?;
        let tangent = tangent_plane(&xi, kappa.quartic())?;
        if trope_list.iter().any(|(_, t)| *t == tangent) {
            continue;
        }
        out.push(xi);
    }
    Ok(out)
}

/// Duality and the line-complex bridge.
pub fn diagrams_suite(curve: &Genus2Curve, opts: Options) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    if !curve.has_roots() {
        return Ok(vec![Check::skip("diagrams", "roots unavailable")]);
    }
    let kappa = Kappa::new(curve)?;
    let node_list: Vec<ProjPoint> = nodes(curve)?.into_iter().map(|(_, n)| n).collect();
    let trope_list: Vec<ProjPoint> = tropes(curve)?.into_iter().map(|(_, t)| t).collect();

    let mut ws = Vec::new();
    let (mut anti, mut n0, mut bij) = (true, true, true);
    for i in 1..=6 {
        let w = w_matrix(i, curve)?;
        anti &= w.matrix.is_antisymmetric();
        n0 &= w.apply(&node_list[0])? == crate::kummer::trope_i(i, curve)?;
        let mut images = Vec::new();
        for n in &node_list {
            let t = w.apply(n)?;
            bij &= trope_list.contains(&t) && !images.contains(&t);
            images.push(t);
        }
        ws.push(w);
    }
    checks.push(Check::new("W_i antisymmetric", anti));
    checks.push(Check::new("W_i(N_0) = T_i", n0));
    checks.push(Check::new("W_i maps nodes bijectively onto tropes", bij));

    let points = smooth_points(curve, &kappa, opts)?;
    let enough = points.len() >= opts.samples;
    let mut diagram_fail = None;
    let mut duality_fail = None;
    let mut bridge_fail = None;
    let mut rank_fail = None;
    for (m, xi) in points.iter().enumerate() {
        let k = kappa_at(xi, &kappa)?;
        for kk in 1..=6 {
            // evaluate kappa* through a different W_i than W_k
            let i = (kk + m) % 6 + 1;
            let i = if i == kk { i % 6 + 1 } else { i };
            let lhs = epsilon(kk, &k, curve)?;
            let rhs = kappa_star(&ws[kk - 1].apply(xi)?, i, &kappa)?;
            if lhs != rhs {
                diagram_fail.get_or_insert_with(|| format!("xi={} k={kk} i={i}", fmt_point(xi)));
            }
        }
        let eta = tangent_plane(xi, kappa.quartic())?;
        if kappa_star(&eta, m % 6 + 1, &kappa)? != k {
            duality_fail.get_or_insert_with(|| fmt_point(xi));
        }
        if theta(kappa1(xi, curve)?.point(), curve)? != k {
            bridge_fail.get_or_insert_with(|| fmt_point(xi));
        }
        if tangent_conic_rank(xi, curve)? != 2 {
            rank_fail.get_or_insert_with(|| fmt_point(xi));
        }
    }
    let sample_check = |name: &str, fail: Option<String>| {
        Check::new(name, enough && fail.is_none())
            .with("seed", opts.seed)
            .with("points", points.len())
            .with("witness", fail.unwrap_or_default())
    };
    checks.push(sample_check("epsilon_k kappa = kappa* W_k", diagram_fail));
    checks.push(sample_check("kappa(xi) = kappa*(tangent plane)", duality_fail));
    checks.push(sample_check("Theta(kappa_1(xi)) = kappa(xi)", bridge_fail));
    checks.push(sample_check("tangent conic rank 2 at smooth points", rank_fail));

    let mut ok = true;
    let th = theta_matrix(curve)?;
    let th_inv = th.inverse()?;
    for k in 1..=6 {
        let conj = th.try_mul(&polarity_matrix(k, curve)?)?.try_mul(&th_inv)?;
        ok &= conj.proportional_to(&epsilon_matrix(k, curve)?);
    }
    checks.push(Check::new("Theta I_k Theta^-1 = epsilon_k", ok));

    let ranks: Vec<usize> = node_list.iter().map(|n| tangent_conic_rank(n, curve)).collect::<Result<_>>()?;
    checks.push(
        Check::new("tangent conic rank <= 1 at the 16 nodes", ranks.iter().all(|&r| r <= 1))
            .with("ranks", format!("{ranks:?}")),
    );
    Ok(checks)
}

fn random_unit(curve: &Genus2Curve, r: &mut ChaCha8Rng) -> Result<UniPoly> {
    let field = curve.field();
    for _ in 0..1000 {
        let c: Vec<FieldElement> = (0..6).map(|_| field.random_element(r, 5)).collect();
        let beta = UniPoly::new(field, c);
        if inverse_mod(&beta, curve).is_ok() {
            return Ok(beta);
        }
    }
    Err(Error::InternalInconsistency("no unit found modulo F".into()))
}

/// Twisted surfaces: the trivial twist, the diagonal display, the
/// isomorphisms `beta` and, over small fields, bijectivity on points.
pub fn twists_suite(curve: &Genus2Curve, opts: Options) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let trivial = twist_surface(&TwistClass::trivial(curve))?;
    checks.push(Check::new("twist by 1 has the forms of S", trivial.grams == membership_grams(curve)?));

    let mut r = rng(opts.seed);
    let trials = opts.samples.clamp(1, 20);
    if curve.has_roots() {
        let rd = curve.root_data()?;
        let f6 = curve.f(6);
        let mut ok = true;
        let mut tested = 0;
        for _ in 0..trials {
            let xi = random_unit(curve, &mut r)?;
            let class = TwistClass::new(&xi, curve)?;
            let vals = class.values_at_roots()?;
            let d = twist_diagonal(&class)?;
            for j in 0..6 {
                let base = &vals[j] * &rd.omega[j];
                ok &= *d[0].get(j, j) == base;
                ok &= *d[1].get(j, j) == &(&f6 * &rd.roots[j]) * &base;
                ok &= *d[2].get(j, j) == &(&f6.square() * &rd.roots[j].square()) * &base;
            }
            ok &= d.iter().all(Matrix::is_diagonal);
            tested += 1;
        }
        checks.push(
            Check::new("diagonal forms are xi_j w_j, f6 theta_j xi_j w_j, f6^2 theta_j^2 xi_j w_j", ok)
                .with("seed", opts.seed)
                .with("classes", tested),
        );
    } else {
        checks.push(Check::skip("diagonal forms", "roots unavailable"));
    }

    let sampler = DivisorSampler::new(curve)?;
    let mut ok = true;
    let mut witness = String::new();
    for _ in 0..trials {
        let beta = random_unit(curve, &mut r)?;
        let class = TwistClass::from_witness(&beta, curve)?;
        let surface = twist_surface(&class)?;
        for _ in 0..3 {
            let s = kappa_constructive(&sampler.sample(&mut r), curve)?;
            let q = twist_iso_inverse(&beta, &s, &class)?;
            let by_grams = surface.gram_values(&q)?.iter().all(FieldElement::is_zero);
            let back = twist_iso(&beta, &q, &class)?;
            if !(by_grams && surface.contains(&q) && back == s && s_membership(&back, curve)) {
                ok = false;
                witness = format!("beta={beta} point={}", fmt_point(&s));
            }
        }
    }
    checks.push(
        Check::new("twist_iso maps S^(beta^2) into S", ok)
            .with("seed", opts.seed)
            .with("betas", trials)
            .with("witness", witness),
    );

    match curve.field() {
        crate::algebra::Field::Prime(p) if p <= MAX_SEARCH_PRIME => {
            let on_s = search_points(&trivial, 0)?;
            let mut ok = true;
            let mut sizes = Vec::new();
            for _ in 0..3 {
                let beta = random_unit(curve, &mut r)?;
                let class = TwistClass::from_witness(&beta, curve)?;
                let on_twist = search_points(&twist_surface(&class)?, 0)?;
                let mut images: Vec<ProjPoint> = on_twist
                    .iter()
                    .map(|q| twist_iso(&beta, q, &class))
                    .collect::<Result<_>>()?;
                images.sort_by_key(|p| p.coords().iter().map(ToString::to_string).collect::<Vec<_>>());
                images.dedup();
                ok &= images.len() == on_twist.len() && on_twist.len() == on_s.len();
                ok &= images.iter().all(|p| on_s.contains(p));
                sizes.push(on_twist.len());
            }
            checks.push(
                Check::new("twist_iso is a bijection on rational points", ok)
                    .with("points_on_S", on_s.len())
                    .with("points_on_twists", format!("{sizes:?}")),
            );
        }
        _ => checks.push(Check::skip(
            "twist_iso is a bijection on rational points",
            format!("exhaustive enumeration needs GF(p) with p <= {MAX_SEARCH_PRIME}"),
        )),
    }
    Ok(checks)
}

fn fmt_sigma(s: &Permutation) -> String {
    s.iter().map(|j| (j + 1).to_string()).collect::<Vec<_>>().join("")
}

/// `GL_0` from Möbius symmetries of the roots, certified lifts, the group
/// `GL(S)`, the kernel of `psi`, and the branch report.
pub fn autos_suite(curve: &Genus2Curve) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    if !curve.has_roots() {
        return Ok(vec![Check::skip("autos", "roots unavailable")]);
    }
    let gl0 = find_gl0(curve)?;
    let listing: Vec<String> = gl0.iter().map(ToString::to_string).collect();
    checks.push(
        Check::new("GL_0 contains the identity", gl0.iter().any(|m| m.sigma == IDENTITY_PERMUTATION))
            .with("order", gl0.len())
            .with("elements", listing.join("; ")),
    );

    let mut ok = true;
    for m in &gl0 {
        let a = gl0_to_matrix(m, curve)?;
        ok &= satisfies_conjugation_law(&a.matrix, &m.sigma, curve)?;
        ok &= preserves_quadrics(&a.pi_matrix, curve)?;
        for i in 1..=6 {
            ok &= a.apply(&base_point(i, curve)?)? == base_point(m.sigma[i - 1] + 1, curve)?;
        }
    }
    checks.push(
        Check::new("GL_0 lifts satisfy A e_i = e_sigma(i) A and preserve the quadrics", ok)
            .with("nontrivial", gl0.len() - 1),
    );

    let gl = build_gl(curve)?;
    checks.push(
        Check::new("GL(S) is closed of order 32 |GL_0|", gl.order() == 32 * gl0.len())
            .with("order", gl.order())
            .with("gl0", gl0.len()),
    );

    let invs: Vec<Matrix> = inv_group(curve)?.into_iter().map(|(_, m)| m).collect();
    let mut ok = invs.len() == 32;
    let mut kernel = 0;
    let psi = Psi::new(curve)?;
    for e in &gl.elements {
        let image = psi.apply(&e.matrix)?;
        let in_inv = invs.iter().any(|m| m.proportional_to(&e.matrix));
        ok &= (image.sigma == IDENTITY_PERMUTATION) == in_inv;
        kernel += usize::from(image.sigma == IDENTITY_PERMUTATION);
    }
    checks.push(Check::new("ker psi = Inv(S)", ok && kernel == 32).with("kernel", kernel));

    let report = noncommuting_involution_report(curve)?;
    let mut from_report: Vec<Permutation> = report.hits.iter().map(|h| h.sigma).collect();
    from_report.sort();
    from_report.dedup();
    let mut from_search: Vec<Permutation> = gl0
        .iter()
        .map(|m| m.sigma)
        .filter(|s| *s != IDENTITY_PERMUTATION && (0..6).all(|j| s[s[j]] == j))
        .collect();
    from_search.sort();
    let branches: Vec<String> = report
        .hits
        .iter()
        .map(|h| format!("{}:{} t={}", h.branch, fmt_sigma(&h.sigma), h.translation))
        .collect();
    checks.push(
        Check::new("branch report agrees with Möbius search", from_report == from_search)
            .with("involutions", from_search.iter().map(fmt_sigma).collect::<Vec<_>>().join(","))
            .with("branches", branches.join("; ")),
    );
    Ok(checks)
}
