//! Linear automorphisms of `S`: the involution group `Inv(S)`, the
//! stabilizer `GL_0(S)` of `Delta_0` induced by Möbius symmetries of the
//! roots, and the extension `1 -> Inv(S) -> GL(S) -> GL_0(S) -> 1`.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{FieldElement, Matrix, ProjPoint};
use crate::curve::Genus2Curve;
use crate::error::{Error, Result};
use crate::lines::base_point;
use crate::surface::{epsilon_matrix, inv_group, pi_basis_matrix, Involution};

pub use crate::lines::{incidence_points, PointLabel};

/// A permutation of `1..=6`, stored 0-based: `sigma[j]` is the image of `j`.
pub type Permutation = [usize; 6];

pub const IDENTITY_PERMUTATION: Permutation = [0, 1, 2, 3, 4, 5];

/// `theta_j = (c theta_sigma(j) + d) / (a theta_sigma(j) + b)` for all `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusCandidate {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
    pub sigma: Permutation,
}

impl MobiusCandidate {
    pub fn identity(curve: &Genus2Curve) -> Self {
        let f = curve.field();
        MobiusCandidate {
            a: f.zero(),
            b: f.one(),
            c: f.one(),
            d: f.zero(),
            sigma: IDENTITY_PERMUTATION,
        }
    }

    /// Checks the root relation, `ad - bc != 0` and `a theta_sigma(j) + b != 0`.
    pub fn validate(&self, curve: &Genus2Curve) -> Result<()> {
        let r = curve.roots()?;
        if (&(&self.a * &self.d) - &(&self.b * &self.c)).is_zero() {
            return Err(Error::InvalidCandidate("ad - bc = 0".into()));
        }
        for j in 0..6 {
            let t = &r[self.sigma[j]];
            let den = &(&self.a * t) + &self.b;
            if den.is_zero() {
                return Err(Error::InvalidCandidate(format!("pole at theta_{}", self.sigma[j] + 1)));
            }
            if (&r[j] * &den) != (&(&self.c * t) + &self.d) {
                return Err(Error::InvalidCandidate(format!("root relation fails at j = {}", j + 1)));
            }
        }
        Ok(())
    }
}

impl fmt::Display for MobiusCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images: Vec<String> = self.sigma.iter().map(|s| (s + 1).to_string()).collect();
        write!(
            f,
            "sigma=[{}] (a,b,c,d)=({},{},{},{})",
            images.join(","),
            self.a,
            self.b,
            self.c,
            self.d
        )
    }
}

/// Where an automorphism came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Involution(Involution),
    Gl0(Permutation),
    Composite(Involution, Permutation),
}

/// A linear automorphism of `S`, in coefficient (`p`) and in `pi` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearAutomorphism {
    pub matrix: Matrix,
    pub pi_matrix: Matrix,
    pub provenance: Provenance,
}

impl LinearAutomorphism {
    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        ProjPoint::new(self.matrix.apply(p.coords())?)
    }
}

/// All permutations of `0..6` in lexicographic order.
pub fn permutations() -> Vec<Permutation> {
    let mut out = Vec::with_capacity(720);
    let mut p = IDENTITY_PERMUTATION;
    loop {
        out.push(p);
        let Some(i) = (0..5).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..6).rev().find(|&j| p[j] > p[i]).expect("successor exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

/// Solves the root relation for one permutation, up to scale.
pub fn solve_mobius(sigma: &Permutation, curve: &Genus2Curve) -> Result<Option<MobiusCandidate>> {
    let r = curve.roots()?;
    let field = curve.field();
    let rows = (0..6)
        .map(|j| {
            let (t, s) = (&r[j], &r[sigma[j]]);
            vec![t * s, t.clone(), -s, -field.one()]
        })
        .collect();
    let kernel = Matrix::from_rows(field, rows)?.kernel();
    if kernel.len() != 1 {
        return Ok(None);
    }
    let v = ProjPoint::new(kernel[0].clone())?.normalized().into_coords();
    let cand = MobiusCandidate {
        a: v[0].clone(),
        b: v[1].clone(),
        c: v[2].clone(),
        d: v[3].clone(),
        sigma: *sigma,
    };
    Ok(cand.validate(curve).is_ok().then_some(cand))
}

/// Every Möbius symmetry of the root set, over all 720 permutations.
pub fn find_gl0(curve: &Genus2Curve) -> Result<Vec<MobiusCandidate>> {
    let mut out = Vec::new();
    for sigma in permutations() {
        if let Some(c) = solve_mobius(&sigma, curve)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// `pi'_sigma(j) = pi_j (omega_j / omega_sigma(j)) (a theta_sigma(j) + b)`.
pub fn gl0_to_matrix(m: &MobiusCandidate, curve: &Genus2Curve) -> Result<LinearAutomorphism> {
    m.validate(curve)?;
    let rd = curve.root_data()?;
    let field = curve.field();
    let mut pi = Matrix::zero(field, 6, 6);
    for j in 0..6 {
        let s = m.sigma[j];
        let entry = (&rd.omega[j] * &(&(&m.a * &rd.roots[s]) + &m.b)).checked_div(&rd.omega[s])?;
        pi.set(s, j, entry);
    }
    let b = pi_basis_matrix(curve)?;
    let matrix = b.try_mul(&pi)?.try_mul(&b.inverse()?)?;
    Ok(LinearAutomorphism {
        matrix,
        pi_matrix: pi,
        provenance: Provenance::Gl0(m.sigma),
    })
}

fn projective_key(m: &Matrix) -> ProjPoint {
    ProjPoint::new(m.entries().to_vec()).expect("automorphisms are nonzero").normalized()
}

/// Gram matrices of the diagonal quadrics `sum_j theta_j^k omega_j pi_j^2`.
pub fn diagonal_grams(curve: &Genus2Curve) -> Result<[Matrix; 3]> {
    let rd = curve.root_data()?;
    let gram = |k: u32| {
        let d: Vec<FieldElement> = (0..6).map(|j| &rd.roots[j].pow(k) * &rd.omega[j]).collect();
        Matrix::diagonal(curve.field(), &d)
    };
    Ok([gram(0), gram(1), gram(2)])
}

/// `M^T D_k M` lies in the span of the three diagonal grams for every `k`, so
/// `M` (in `pi` coordinates) maps `S` onto itself.
pub fn preserves_quadrics(pi_matrix: &Matrix, curve: &Genus2Curve) -> Result<bool> {
    let grams = diagonal_grams(curve)?;
    let cols: Vec<Vec<FieldElement>> = grams.iter().map(|d| d.entries().to_vec()).collect();
    let span_rank = Matrix::from_columns(curve.field(), &cols)?.rank();
    for d in &grams {
        let image = pi_matrix.transpose().try_mul(d)?.try_mul(pi_matrix)?;
        let mut with_image = cols.clone();
        with_image.push(image.entries().to_vec());
        if Matrix::from_columns(curve.field(), &with_image)?.rank() != span_rank {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A epsilon^(i) = epsilon^(sigma(i)) A` for all `i`, projectively.
pub fn satisfies_conjugation_law(a: &Matrix, sigma: &Permutation, curve: &Genus2Curve) -> Result<bool> {
    for i in 1..=6 {
        let lhs = a * &epsilon_matrix(i, curve)?;
        let rhs = &epsilon_matrix(sigma[i - 1] + 1, curve)? * a;
        if !lhs.proportional_to(&rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `GL(S) = { epsilon A }` with its closure verified.
#[derive(Clone, Debug)]
pub struct GlGroup {
    pub elements: Vec<LinearAutomorphism>,
    pub gl0: Vec<MobiusCandidate>,
    pub involutions: usize,
}

impl GlGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.elements.iter().any(|e| e.matrix.proportional_to(m))
    }
}

pub fn build_gl(curve: &Genus2Curve) -> Result<GlGroup> {
    let invs = inv_group(curve)?;
    let gl0 = find_gl0(curve)?;
    let lifts: Vec<LinearAutomorphism> = gl0.iter().map(|m| gl0_to_matrix(m, curve)).collect::<Result<_>>()?;
    let b = pi_basis_matrix(curve)?;
    let b_inv = b.inverse()?;
    let mut index: HashMap<ProjPoint, usize> = HashMap::new();
    let mut elements = Vec::new();
    for lift in &lifts {
        let Provenance::Gl0(sigma) = lift.provenance else { unreachable!() };
        for (inv, e) in &invs {
            let matrix = e * &lift.matrix;
            let key = projective_key(&matrix);
            if index.contains_key(&key) {
                continue;
            }
            index.insert(key, elements.len());
            let provenance = match (inv.0, sigma == IDENTITY_PERMUTATION) {
                (_, true) => Provenance::Involution(*inv),
                (0, false) => Provenance::Gl0(sigma),
                _ => Provenance::Composite(*inv, sigma),
            };
            let pi_matrix = &(&b_inv * &matrix) * &b;
            elements.push(LinearAutomorphism {
                matrix,
                pi_matrix,
                provenance,
            });
        }
    }
    // a finite set holding the identity and closed under left multiplication
    // by generators of the group it lies in is that group
    let mut generators: Vec<Matrix> = (1..=6).map(|i| epsilon_matrix(i, curve)).collect::<Result<_>>()?;
    generators.extend(lifts.iter().map(|l| l.matrix.clone()));
    for g in &generators {
        for y in &elements {
            if !index.contains_key(&projective_key(&(g * &y.matrix))) {
                return Err(Error::InternalInconsistency("GL(S) is not closed under composition".into()));
            }
        }
    }
    Ok(GlGroup {
        elements,
        gl0,
        involutions: invs.len(),
    })
}

/// `psi(A) = epsilon A` for the unique `epsilon` in `Inv(S)` returning
/// `A(Delta_0)` to `Delta_0`, together with the permutation it induces on
/// the points `p_i`.
#[derive(Clone, Debug)]
pub struct PsiImage {
    pub involution: Involution,
    pub matrix: Matrix,
    pub sigma: Permutation,
}

/// Evaluates `psi`, holding `Inv(S)` and the points `p_i` once.
#[derive(Clone, Debug)]
pub struct Psi {
    involutions: Vec<(Involution, Matrix)>,
    points: Vec<ProjPoint>,
}

impl Psi {
    pub fn new(curve: &Genus2Curve) -> Result<Psi> {
        Ok(Psi {
            involutions: inv_group(curve)?,
            points: (1..=6).map(|i| base_point(i, curve)).collect::<Result<_>>()?,
        })
    }

    pub fn apply(&self, a: &Matrix) -> Result<PsiImage> {
        // Delta_0 is the line p_2 = ... = p_5 = 0, spanned by e_0 and e_1
        let keeps_delta0 = |m: &Matrix| (0..2).all(|c| m.column(c)[2..].iter().all(FieldElement::is_zero));
        let mut found: Vec<(Involution, Matrix)> = self
            .involutions
            .iter()
            .map(|(inv, e)| (*inv, e * a))
            .filter(|(_, m)| keeps_delta0(m))
            .collect();
        if found.len() != 1 {
            return Err(Error::InternalInconsistency(format!(
                "{} involutions return A(Delta_0) to Delta_0",
                found.len()
            )));
        }
        let (involution, matrix) = found.pop().expect("one element");
        let mut sigma = [0usize; 6];
        for (i, p) in self.points.iter().enumerate() {
            let image = ProjPoint::new(matrix.apply(p.coords())?)?;
            sigma[i] = self
                .points
                .iter()
                .position(|q| *q == image)
                .ok_or_else(|| Error::InternalInconsistency("p_i not mapped to a p_j".into()))?;
        }
        Ok(PsiImage {
            involution,
            matrix,
            sigma,
        })
    }
}

pub fn psi(a: &Matrix, curve: &Genus2Curve) -> Result<PsiImage> {
    Psi::new(curve)?.apply(a)
}

/// Two automorphisms agreeing pointwise on `Delta_0` (checked on three points
/// of the line) and equal as projective matrices.
pub fn agree_on_delta0(x: &Matrix, y: &Matrix, curve: &Genus2Curve) -> Result<bool> {
    let pts: Vec<ProjPoint> = (1..=3).map(|i| base_point(i, curve)).collect::<Result<_>>()?;
    for p in &pts {
        if ProjPoint::new(x.apply(p.coords())?)? != ProjPoint::new(y.apply(p.coords())?)? {
            return Ok(false);
        }
    }
    // a common scalar on three points of a line fixes the restriction
    let s0: Vec<FieldElement> = x.apply(pts[0].coords())?;
    let t0: Vec<FieldElement> = y.apply(pts[0].coords())?;
    let k = s0.iter().zip(&t0).find(|(s, _)| !s.is_zero()).map(|(s, t)| t.checked_div(s)).transpose()?;
    let k = k.ok_or(Error::ZeroVector)?;
    for p in &pts[1..] {
        let s: Vec<FieldElement> = x.apply(p.coords())?.iter().map(|v| v * &k).collect();
        if s != y.apply(p.coords())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The three shapes of a non-commuting involution fixing `Delta_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `theta_1 + theta_2 = theta_3 + theta_4 = theta_5 + theta_6`
    Sums,
    /// `theta_1 theta_2 = theta_3 theta_4 = theta_5 theta_6` after translation
    Products,
    /// `theta_1 + theta_2 = 0`, `theta_1^2 = theta_3 theta_4 = theta_5 theta_6`
    /// after translation; `p_1, p_2` fixed
    FixedPoints,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Sums => "sums",
            Branch::Products => "products",
            Branch::FixedPoints => "fixed-points",
        })
    }
}

#[derive(Clone, Debug)]
pub struct BranchHit {
    pub branch: Branch,
    /// Root indices (0-based) playing `theta_1..theta_6`.
    pub labeling: Permutation,
    /// Translation `theta -> theta + t` under which the relations hold.
    pub translation: FieldElement,
    pub sigma: Permutation,
    pub automorphism: LinearAutomorphism,
}

#[derive(Clone, Debug)]
pub struct InvolutionReport {
    pub hits: Vec<BranchHit>,
}

impl InvolutionReport {
    pub fn exists(&self) -> bool {
        !self.hits.is_empty()
    }
}

/// Pairings of `0..6`: unordered triples of disjoint pairs.
fn matchings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let first = items[0];
    let mut out = Vec::new();
    for k in 1..items.len() {
        let rest: Vec<usize> = items[1..].iter().copied().filter(|&x| x != items[k]).collect();
        for mut m in matchings(&rest) {
            m.insert(0, (first, items[k]));
            out.push(m);
        }
    }
    out
}

/// Scans every relabeling of the roots for the three branches and, for
/// each hit, builds the Möbius-induced automorphism and checks that it is an
/// involution outside `Inv(S)` failing to commute with it.
pub fn noncommuting_involution_report(curve: &Genus2Curve) -> Result<InvolutionReport> {
    let r = curve.roots()?.to_vec();
    let field = curve.field();
    let two = field.from_i64(2);
    let mut hits = Vec::new();
    let mut record = |branch: Branch, labeling: Permutation, translation: FieldElement, sigma: Permutation| -> Result<()> {
        let cand = solve_mobius(&sigma, curve)?.ok_or_else(|| {
            Error::InternalInconsistency(format!("{branch} branch holds but no Möbius map realizes it"))
        })?;
        let automorphism = gl0_to_matrix(&cand, curve)?;
        let m = &automorphism.matrix;
        if !(m * m).proportional_to(&Matrix::identity(field, 6)) {
            return Err(Error::InternalInconsistency("branch automorphism is not an involution".into()));
        }
        let commutes_with_all = (1..=6).all(|i| {
            let e = epsilon_matrix(i, curve).expect("roots known");
            (m * &e).proportional_to(&(&e * m))
        });
        if commutes_with_all {
            return Err(Error::InternalInconsistency("branch automorphism commutes with Inv(S)".into()));
        }
        hits.push(BranchHit {
            branch,
            labeling,
            translation,
            sigma,
            automorphism,
        });
        Ok(())
    };
    let all: Vec<usize> = (0..6).collect();
    for m in matchings(&all) {
        let sum = |(a, b): (usize, usize)| &r[a] + &r[b];
        let prod = |(a, b): (usize, usize), t: &FieldElement| &(&r[a] + t) * &(&r[b] + t);
        let mut sigma = IDENTITY_PERMUTATION;
        for &(a, b) in &m {
            sigma[a] = b;
            sigma[b] = a;
        }
        let labeling = [m[0].0, m[0].1, m[1].0, m[1].1, m[2].0, m[2].1];
        if sum(m[0]) == sum(m[1]) && sum(m[1]) == sum(m[2]) {
            record(Branch::Sums, labeling, field.zero(), sigma)?;
        }
        // every pair plays theta_1, theta_2 in turn; the translation uses the other two
        for k in 0..3 {
            let (p12, p34, p56) = (m[k], m[(k + 1) % 3], m[(k + 2) % 3]);
            let den = &sum(p34) - &sum(p56);
            if den.is_zero() {
                continue;
            }
            let t = (&(&r[p56.0] * &r[p56.1]) - &(&r[p34.0] * &r[p34.1])).checked_div(&den)?;
            if prod(p12, &t) == prod(p34, &t) && k == 0 {
                let labeling = [p12.0, p12.1, p34.0, p34.1, p56.0, p56.1];
                record(Branch::Products, labeling, t, sigma)?;
            }
        }
    }
    // p_1, p_2 fixed: choose the fixed pair, then a pairing of the rest
    for a in 0..6 {
        for b in a + 1..6 {
            let rest: Vec<usize> = (0..6).filter(|&x| x != a && x != b).collect();
            let t = -(&r[a] + &r[b]).checked_div(&two)?;
            let sq = (&r[a] + &t).square();
            for m in matchings(&rest) {
                let prod = |(x, y): (usize, usize)| &(&r[x] + &t) * &(&r[y] + &t);
                if prod(m[0]) == sq && prod(m[1]) == sq {
                    let mut sigma = IDENTITY_PERMUTATION;
                    for &(x, y) in &m {
                        sigma[x] = y;
                        sigma[y] = x;
                    }
                    let labeling = [a, b, m[0].0, m[0].1, m[1].0, m[1].1];
                    record(Branch::FixedPoints, labeling, t.clone(), sigma)?;
                }
            }
        }
    }
    Ok(InvolutionReport { hits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::lines::line_orbit;
    use crate::surface::{diagonal_quadrics, s_membership, to_pi};

    fn q(roots: &[i64]) -> Genus2Curve {
        Genus2Curve::from_i64_roots(Field::Rationals, roots).unwrap()
    }

    #[test]
    fn permutation_enumeration() {
        let p = permutations();
        assert_eq!(p.len(), 720);
        assert_eq!(p[0], IDENTITY_PERMUTATION);
        assert_eq!(p[719], [5, 4, 3, 2, 1, 0]);
    }

    #[test]
    fn mobius_candidates() {
        let generic = q(&[1, 2, 3, 4, 5, 7]);
        let found = find_gl0(&generic).unwrap();
        assert_eq!(found, vec![MobiusCandidate::identity(&generic)]);

        let sym = q(&[-3, -2, -1, 1, 2, 3]);
        let found = find_gl0(&sym).unwrap();
        assert!(found.contains(&MobiusCandidate::identity(&sym)));
        let f = Field::Rationals;
        let negation = MobiusCandidate {
            a: f.zero(),
            b: f.one(),
            c: f.from_i64(-1),
            d: f.zero(),
            sigma: [5, 4, 3, 2, 1, 0],
        };
        assert!(negation.validate(&sym).is_ok());
        assert!(found.contains(&negation));
        let bad = MobiusCandidate { sigma: IDENTITY_PERMUTATION, ..negation };
        assert!(matches!(gl0_to_matrix(&bad, &sym), Err(Error::InvalidCandidate(_))));
    }

    #[test]
    fn gl0_lifts_are_automorphisms() {
        for c in [q(&[-3, -2, -1, 1, 2, 3]), q(&[1, 2, 3, 4, 5, 6])] {
            let lines = line_orbit(&c).unwrap();
            for m in find_gl0(&c).unwrap() {
                let a = gl0_to_matrix(&m, &c).unwrap();
                if m.sigma == IDENTITY_PERMUTATION {
                    assert!(a.matrix.proportional_to(&Matrix::identity(c.field(), 6)));
                }
                assert!(preserves_quadrics(&a.pi_matrix, &c).unwrap());
                assert!(satisfies_conjugation_law(&a.matrix, &m.sigma, &c).unwrap());
                if m.sigma != IDENTITY_PERMUTATION {
                    assert!(!satisfies_conjugation_law(&a.matrix, &IDENTITY_PERMUTATION, &c).unwrap());
                }
                // B(p_i) = p_sigma(i)
                for i in 1..=6 {
                    let image = a.apply(&base_point(i, &c).unwrap()).unwrap();
                    assert_eq!(image, base_point(m.sigma[i - 1] + 1, &c).unwrap());
                }
                for l in &lines {
                    let image = l.image(&a.matrix, l.label).unwrap();
                    assert!(lines.iter().any(|k| k.same_as(&image)));
                    assert!(image.generators.iter().all(|g| s_membership(g, &c)));
                }
                for l in &lines {
                    let p = a.apply(&l.generators[0]).unwrap();
                    let s = diagonal_quadrics(&to_pi(&p, &c).unwrap(), &c).unwrap();
                    assert!(s.iter().all(FieldElement::is_zero));
                }
            }
        }
    }

    #[test]
    fn group_orders() {
        let generic = build_gl(&q(&[1, 2, 3, 4, 5, 7])).unwrap();
        assert_eq!(generic.gl0.len(), 1);
        assert_eq!(generic.order(), 32);
        let sym = build_gl(&q(&[-3, -2, -1, 1, 2, 3])).unwrap();
        assert!(sym.order() >= 64);
        assert_eq!(sym.order(), 32 * sym.gl0.len());
        let natural = build_gl(&q(&[1, 2, 3, 4, 5, 6])).unwrap();
        assert_eq!(natural.order(), 32 * natural.gl0.len());
    }

    #[test]
    fn psi_and_its_kernel() {
        let c = q(&[-3, -2, -1, 1, 2, 3]);
        let gl = build_gl(&c).unwrap();
        let psi_map = Psi::new(&c).unwrap();
        for e in &gl.elements {
            let image = psi_map.apply(&e.matrix).unwrap();
            let in_inv = matches!(e.provenance, Provenance::Involution(_));
            assert_eq!(image.sigma == IDENTITY_PERMUTATION, in_inv);
            // psi(A) is the lift of its own permutation
            let cand = solve_mobius(&image.sigma, &c).unwrap().unwrap();
            assert!(gl0_to_matrix(&cand, &c).unwrap().matrix.proportional_to(&image.matrix));
            assert!(agree_on_delta0(&image.matrix, &gl0_to_matrix(&cand, &c).unwrap().matrix, &c).unwrap());
        }
    }

    #[test]
    fn rigidity_on_delta0() {
        let c = q(&[-3, -2, -1, 1, 2, 3]);
        let neg = find_gl0(&c).unwrap().into_iter().find(|m| m.sigma == [5, 4, 3, 2, 1, 0]).unwrap();
        let a = gl0_to_matrix(&neg, &c).unwrap().matrix;
        // two words for the same element: A e1 and e6 A
        let w1 = &a * &epsilon_matrix(1, &c).unwrap();
        let w2 = &epsilon_matrix(6, &c).unwrap() * &a;
        let w1e = &w1 * &epsilon_matrix(2, &c).unwrap();
        let w2e = &w2 * &epsilon_matrix(2, &c).unwrap();
        assert!(w1e.proportional_to(&w2e));
        // they agree on Delta_0 only after returning it to itself
        let back1 = psi(&w1e, &c).unwrap().matrix;
        let back2 = psi(&w2e, &c).unwrap().matrix;
        assert!(agree_on_delta0(&back1, &back2, &c).unwrap());
        assert!(back1.proportional_to(&back2));
        assert!(!agree_on_delta0(&a, &Matrix::identity(c.field(), 6), &c).unwrap());
    }

    #[test]
    fn involution_reports() {
        let natural = noncommuting_involution_report(&q(&[1, 2, 3, 4, 5, 6])).unwrap();
        assert!(natural.hits.iter().any(|h| h.branch == Branch::Sums));
        assert!(natural.exists());

        let generic = noncommuting_involution_report(&q(&[1, 2, 3, 4, 5, 7])).unwrap();
        assert!(!generic.exists());

        for c in [q(&[-3, -2, -1, 1, 2, 3]), q(&[1, 2, 3, 4, 5, 6]), q(&[1, 2, 3, 4, 5, 7]), q(&[-2, -1, 1, 2, 4, 8])] {
            let report = noncommuting_involution_report(&c).unwrap();
            let mut from_report: Vec<Permutation> = report.hits.iter().map(|h| h.sigma).collect();
            from_report.sort();
            from_report.dedup();
            let mut from_gl0: Vec<Permutation> = find_gl0(&c)
                .unwrap()
                .iter()
                .map(|m| m.sigma)
                .filter(|s| *s != IDENTITY_PERMUTATION && (0..6).all(|j| s[s[j]] == j))
                .collect();
            from_gl0.sort();
            assert_eq!(from_report, from_gl0, "{c}");
        }
    }

    #[test]
    fn fixed_point_branch() {
        // theta_1,2 = +-2, theta_3 theta_4 = theta_5 theta_6 = 4
        let c = q(&[-2, 2, 1, 4, -1, -4]);
        let report = noncommuting_involution_report(&c).unwrap();
        assert!(report.hits.iter().any(|h| h.branch == Branch::FixedPoints));
    }
}
