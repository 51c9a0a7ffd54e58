//! The Kummer surface in P^3: coordinates of divisor pairs, the quartic
//! equation, its 16 nodes and 16 tropes, and tangent planes.

use std::fmt;

use crate::algebra::{Field, FieldElement, MPoly, ProjPoint};
use crate::curve::{index, DivisorPair, Genus2Curve};
use crate::error::{Error, Result};

/// `(1 : x+u : xu : beta_0)` with `beta_0 = (F_0(x,u) - 2yv) / (x-u)^2`.
pub fn kummer_coords(d: &DivisorPair, curve: &Genus2Curve) -> Result<ProjPoint> {
    let diff = &d.x - &d.u;
    if diff.is_zero() {
        return Err(Error::EqualAbscissae);
    }
    let two = curve.field().from_i64(2);
    let beta0 = (&curve.f0_sym(&d.x, &d.u) - &(&two * &d.yv())).checked_div(&diff.square())?;
    ProjPoint::new(vec![curve.field().one(), &d.x + &d.u, &d.x * &d.u, beta0])
}

/// `K = K_2 xi_4^2 + K_1 xi_4 + K_0`, with `K_2, K_1, K_0` forms of degree
/// 2, 3, 4 in `xi_1, xi_2, xi_3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerQuartic {
    pub k2: MPoly,
    pub k1: MPoly,
    pub k0: MPoly,
    full: MPoly,
    gradient: [MPoly; 4],
}

impl KummerQuartic {
    pub fn full(&self) -> &MPoly {
        &self.full
    }

    pub fn field(&self) -> Field {
        self.full.field()
    }

    pub fn eval(&self, xi: &ProjPoint) -> Result<FieldElement> {
        check_dim(xi, 4)?;
        Ok(self.full.eval(xi.coords()))
    }

    pub fn contains(&self, xi: &ProjPoint) -> bool {
        self.eval(xi).map(|v| v.is_zero()).unwrap_or(false)
    }

    pub fn gradient_at(&self, xi: &ProjPoint) -> Result<Vec<FieldElement>> {
        check_dim(xi, 4)?;
        Ok(self.gradient.iter().map(|g| g.eval(xi.coords())).collect())
    }
}

fn check_dim(p: &ProjPoint, n: usize) -> Result<()> {
    if p.dim() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: n,
            got: p.dim(),
        })
    }
}

/// Eliminates `yv` between `(2yv)^2 = 4F(x)F(u)` and
/// `xi_4 (x-u)^2 = F_0(x,u) - 2yv`, rewrites in `x+u`, `xu` and homogenizes.
pub fn derive_kummer_quartic(curve: &Genus2Curve) -> Result<KummerQuartic> {
    let field = curve.field();
    let x = MPoly::var(field, 2, 0);
    let u = MPoly::var(field, 2, 1);
    let c = |k: i64| MPoly::constant(field.from_i64(k), 2);
    let f = |k: usize| MPoly::constant(curve.f(k), 2);

    let s = &x + &u;
    let p = &x * &u;
    let p2 = p.pow(2);
    let f0 = [
        &c(2) * &f(0),
        &f(1) * &s,
        &(&c(2) * &f(2)) * &p,
        &(&f(3) * &p) * &s,
        &(&c(2) * &f(4)) * &p2,
        &(&f(5) * &p2) * &s,
        &(&c(2) * &f(6)) * &p.pow(3),
    ]
    .iter()
    .fold(MPoly::zero(field, 2), |acc, t| &acc + t);

    let sextic_in = |var: &MPoly| {
        (0..=6).fold(MPoly::zero(field, 2), |acc, k| &acc + &(&f(k) * &var.pow(k as u32)))
    };
    let diff_sq = (&x - &u).pow(2);
    let numerator = &f0.pow(2) - &(&c(4) * &(&sextic_in(&x) * &sextic_in(&u)));
    let k0_xu = numerator.exact_div(&diff_sq)?;
    let k1_xu = &c(-2) * &f0;

    let k2 = homogenize(&to_elementary(&diff_sq)?, 2)?;
    let k1 = homogenize(&to_elementary(&k1_xu)?, 3)?;
    let k0 = homogenize(&to_elementary(&k0_xu)?, 4)?;

    let expected_k2 = MPoly::parse("x2^2 - 4 x1 x3", field, 3, xi_lookup)?;
    if k2 != expected_k2 {
        return Err(Error::InternalInconsistency(
            "elimination did not produce K_2 = xi_2^2 - 4 xi_1 xi_3".into(),
        ));
    }

    let xi4 = MPoly::var(field, 4, 3);
    let full = &(&(&extend(&k2, 4) * &xi4.pow(2)) + &(&extend(&k1, 4) * &xi4)) + &extend(&k0, 4);
    let gradient = [0, 1, 2, 3].map(|v| full.partial(v));
    Ok(KummerQuartic {
        k2,
        k1,
        k0,
        full,
        gradient,
    })
}

/// Identifiers `x1..x4` as the coordinates `xi_1..xi_4`.
pub(crate) fn xi_lookup(name: &str) -> Option<crate::algebra::mpoly::Symbol> {
    use crate::algebra::mpoly::Symbol;
    match name {
        "x1" => Some(Symbol::Var(0)),
        "x2" => Some(Symbol::Var(1)),
        "x3" => Some(Symbol::Var(2)),
        "x4" => Some(Symbol::Var(3)),
        _ => None,
    }
}

/// A symmetric polynomial in `(x, u)` rewritten in `(s, p) = (x+u, xu)`.
fn to_elementary(sym: &MPoly) -> Result<MPoly> {
    let field = sym.field();
    let s_xu = &MPoly::var(field, 2, 0) + &MPoly::var(field, 2, 1);
    let p_xu = &MPoly::var(field, 2, 0) * &MPoly::var(field, 2, 1);
    let mut rest = sym.clone();
    let mut out = MPoly::zero(field, 2);
    while let Some((e, c)) = rest.leading().map(|(e, c)| (e.clone(), c.clone())) {
        let (a, b) = (e[0], e[1]);
        if a < b {
            return Err(Error::InternalInconsistency("polynomial is not symmetric".into()));
        }
        let mut mono = MPoly::zero(field, 2);
        mono.add_term(vec![a - b, b], c.clone());
        out = &out + &mono;
        let lift = (&s_xu.pow(a - b) * &p_xu.pow(b)).scale(&c);
        rest = &rest - &lift;
    }
    Ok(out)
}

/// `s^a p^b -> xi_1^(d-a-b) xi_2^a xi_3^b`.
fn homogenize(sp: &MPoly, degree: u32) -> Result<MPoly> {
    let mut out = MPoly::zero(sp.field(), 3);
    for (e, c) in sp.terms() {
        let used = e[0] + e[1];
        if used > degree {
            return Err(Error::InternalInconsistency(format!(
                "term of degree {used} exceeds {degree}"
            )));
        }
        out.add_term(vec![degree - used, e[0], e[1]], c.clone());
    }
    Ok(out)
}

fn extend(p: &MPoly, nvars: usize) -> MPoly {
    let mut out = MPoly::zero(p.field(), nvars);
    for (e, c) in p.terms() {
        let mut e2 = e.clone();
        e2.resize(nvars, 0);
        out.add_term(e2, c.clone());
    }
    out
}

/// The gradient of `K` at `xi`, as a plane in the dual P^3.
pub fn tangent_plane(xi: &ProjPoint, quartic: &KummerQuartic) -> Result<ProjPoint> {
    if !quartic.eval(xi)?.is_zero() {
        return Err(Error::NotOnKummer);
    }
    ProjPoint::new(quartic.gradient_at(xi)?).map_err(|_| Error::SingularPoint)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeLabel {
    Origin,
    /// `N_ij`, 1-based with `i < j`.
    Pair(usize, usize),
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeLabel::Origin => write!(f, "N0"),
            NodeLabel::Pair(i, j) => write!(f, "N{i}{j}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TropeLabel {
    Single(usize),
    /// `T_ijk` with `1 = i < j < k`; equals the trope of the complementary triple.
    Triple(usize, usize, usize),
}

impl fmt::Display for TropeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropeLabel::Single(i) => write!(f, "T{i}"),
            TropeLabel::Triple(i, j, k) => write!(f, "T{i}{j}{k}"),
        }
    }
}

pub fn node_0(field: Field) -> ProjPoint {
    ProjPoint::new(vec![field.zero(), field.zero(), field.zero(), field.one()])
        .expect("nonzero")
}

/// `(1 : theta_i + theta_j : theta_i theta_j : f_6 beta_0(i,j))` where, for the
/// monic sextic, `beta_0(i,j) = -prod_{m != i,j} theta_m
/// - theta_i theta_j (theta_i theta_j + sum_{s<t; s,t != i,j} theta_s theta_t)`.
pub fn node_ij(i: usize, j: usize, curve: &Genus2Curve) -> Result<ProjPoint> {
    let (a, b) = (index(i)?, index(j)?);
    if a == b {
        return Err(Error::RepeatedIndex);
    }
    let r = curve.roots()?;
    let field = curve.field();
    let rest: Vec<&FieldElement> = (0..6).filter(|&m| m != a && m != b).map(|m| &r[m]).collect();
    let prod_rest = rest.iter().fold(field.one(), |acc, t| &acc * *t);
    let mut pair_sum = field.zero();
    for s in 0..4 {
        for t in s + 1..4 {
            pair_sum = &pair_sum + &(rest[s] * rest[t]);
        }
    }
    let pij = &r[a] * &r[b];
    let beta = &(-&prod_rest) - &(&pij * &(&pij + &pair_sum));
    ProjPoint::new(vec![field.one(), &r[a] + &r[b], pij, &curve.f(6) * &beta])
}

/// All 16 nodes, `N_0` first, then `N_ij` in lexicographic order.
pub fn nodes(curve: &Genus2Curve) -> Result<Vec<(NodeLabel, ProjPoint)>> {
    let mut out = vec![(NodeLabel::Origin, node_0(curve.field()))];
    for i in 1..=6 {
        for j in i + 1..=6 {
            out.push((NodeLabel::Pair(i, j), node_ij(i, j, curve)?));
        }
    }
    Ok(out)
}

/// The plane `theta_i^2 xi_1 - theta_i xi_2 + xi_3 = 0`.
pub fn trope_i(i: usize, curve: &Genus2Curve) -> Result<ProjPoint> {
    let t = curve.root(i)?;
    let field = curve.field();
    ProjPoint::new(vec![t.square(), -t, field.one(), field.zero()])
}

/// The trope through the nodes `N_mn` with `{m,n}` inside `{i,j,k}` or inside
/// its complement `{l,m,n}`. With `e1, e2, e3` the elementary symmetric
/// functions of each triple its coordinates are
/// `f_6 (e1 e3' + e3 e1' : -e3 - e3' : e2 + e2') : 1`.
pub fn trope_ijk(i: usize, j: usize, k: usize, curve: &Genus2Curve) -> Result<ProjPoint> {
    let triple = [index(i)?, index(j)?, index(k)?];
    if triple[0] == triple[1] || triple[0] == triple[2] || triple[1] == triple[2] {
        return Err(Error::RepeatedIndex);
    }
    let r = curve.roots()?;
    let field = curve.field();
    let comp: Vec<usize> = (0..6).filter(|m| !triple.contains(m)).collect();
    let elem = |ix: &[usize]| {
        let (a, b, c) = (&r[ix[0]], &r[ix[1]], &r[ix[2]]);
        (&(a + b) + c, &(&(a * b) + &(a * c)) + &(b * c), &(a * b) * c)
    };
    let (e1, e2, e3) = elem(&triple);
    let (g1, g2, g3) = elem(&comp);
    let f6 = curve.f(6);
    ProjPoint::new(vec![
        &f6 * &(&(&e1 * &g3) + &(&e3 * &g1)),
        &f6 * &(-&(&e3 + &g3)),
        &f6 * &(&e2 + &g2),
        field.one(),
    ])
}

/// All 16 tropes: `T_1..T_6`, then the ten `T_1jk`.
pub fn tropes(curve: &Genus2Curve) -> Result<Vec<(TropeLabel, ProjPoint)>> {
    let mut out = Vec::with_capacity(16);
    for i in 1..=6 {
        out.push((TropeLabel::Single(i), trope_i(i, curve)?));
    }
    for j in 2..=6 {
        for k in j + 1..=6 {
            out.push((TropeLabel::Triple(1, j, k), trope_ijk(1, j, k, curve)?));
        }
    }
    Ok(out)
}

/// `sum_i plane_i point_i`.
pub fn incidence(plane: &ProjPoint, point: &ProjPoint) -> FieldElement {
    plane
        .coords()
        .iter()
        .zip(point.coords())
        .fold(plane.field().zero(), |acc, (a, b)| &acc + &(a * b))
}
