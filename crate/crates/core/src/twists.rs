//! Twists `S^xi` of the desingularized Kummer: `xi(X) P(X)^2` congruent to a
//! quadratic modulo `F`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{Field, FieldElement, Matrix, ProjPoint, UniPoly};
use crate::curve::Genus2Curve;
use crate::error::{Error, Result};
use crate::surface::{from_poly, pi_basis_matrix, residue_grams, to_poly};

/// Candidate count above which exhaustive search refuses to run.
pub const SEARCH_LIMIT: u128 = 2_000_000;
/// Largest prime for which projective enumeration is attempted.
pub const MAX_SEARCH_PRIME: u64 = 50;

/// A twist class, held as its representative reduced modulo `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistClass {
    xi: UniPoly,
    curve: Genus2Curve,
}

impl TwistClass {
    pub fn new(xi: &UniPoly, curve: &Genus2Curve) -> Result<Self> {
        if xi.field() != curve.field() {
            return Err(Error::FieldMismatch(xi.field().to_string(), curve.field().to_string()));
        }
        Ok(TwistClass {
            xi: xi.rem(curve.sextic())?,
            curve: curve.clone(),
        })
    }

    /// The untwisted class `xi = 1`.
    pub fn trivial(curve: &Genus2Curve) -> Self {
        TwistClass {
            xi: UniPoly::one(curve.field()),
            curve: curve.clone(),
        }
    }

    /// `xi = beta^2 mod F`, the class split by the witness `beta`.
    pub fn from_witness(beta: &UniPoly, curve: &Genus2Curve) -> Result<Self> {
        TwistClass::new(&(beta * beta), curve)
    }

    pub fn xi(&self) -> &UniPoly {
        &self.xi
    }

    pub fn curve(&self) -> &Genus2Curve {
        &self.curve
    }

    /// Another representative `c xi q^2 mod F` of the same class; `c` must be
    /// nonzero and `q` a unit modulo `F`.
    pub fn equivalent(&self, c: &FieldElement, q: &UniPoly) -> Result<TwistClass> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        inverse_mod(q, &self.curve)?;
        TwistClass::new(&(&self.xi * &(q * q)).scale(c), &self.curve)
    }

    /// `xi_j = xi(theta_j)`.
    pub fn values_at_roots(&self) -> Result<Vec<FieldElement>> {
        Ok(self.curve.roots()?.iter().map(|t| self.xi.eval(t)).collect())
    }
}

/// `S^xi: C5 = C4 = C3 = 0` with `C_m(p) = p^T G_m p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSurface {
    pub class: TwistClass,
    /// Gram matrices of `C5, C4, C3`.
    pub grams: [Matrix; 3],
}

impl TwistSurface {
    pub fn field(&self) -> Field {
        self.class.curve.field()
    }

    /// `[C5, C4, C3]` at `p`, read off `xi P^2 mod F` directly.
    pub fn residues(&self, p: &ProjPoint) -> Result<[FieldElement; 3]> {
        let poly = to_poly(p)?;
        let r = (&self.class.xi * &(&poly * &poly)).rem(self.class.curve.sextic())?;
        Ok([r.coeff(5), r.coeff(4), r.coeff(3)])
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.residues(p)
            .map(|r| r.iter().all(FieldElement::is_zero))
            .unwrap_or(false)
    }

    /// The same three forms evaluated through the Gram matrices.
    pub fn gram_values(&self, p: &ProjPoint) -> Result<[FieldElement; 3]> {
        let c = p.coords();
        Ok([
            self.grams[0].bilinear(c, c)?,
            self.grams[1].bilinear(c, c)?,
            self.grams[2].bilinear(c, c)?,
        ])
    }
}

pub fn twist_surface(class: &TwistClass) -> Result<TwistSurface> {
    Ok(TwistSurface {
        class: class.clone(),
        grams: residue_grams(&class.xi, &class.curve)?,
    })
}

/// `S0 = C5`, `S1 = f6 C4 - f5 C5`, `S2 = f6^2 C3 - f5 f6 C4 + (f5^2 - f4 f6) C5`,
/// written in `pi` coordinates. Each is diagonal with entries
/// `xi_j omega_j`, `f6 theta_j xi_j omega_j`, `f6^2 theta_j^2 xi_j omega_j`.
pub fn twist_diagonal(class: &TwistClass) -> Result<[Matrix; 3]> {
    let curve = &class.curve;
    for (j, v) in class.values_at_roots()?.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::VanishingAtRoot(j + 1));
        }
    }
    let [c5, c4, c3] = residue_grams(&class.xi, curve)?;
    let f = |k: usize| curve.f(k);
    let s0 = c5.clone();
    let s1 = c4.scale(&f(6)).add(&c5.scale(&-f(5)))?;
    let s2 = c3
        .scale(&f(6).square())
        .add(&c4.scale(&-(&f(5) * &f(6))))?
        .add(&c5.scale(&(&f(5).square() - &(&f(4) * &f(6)))))?;
    let b = pi_basis_matrix(curve)?;
    let bt = b.transpose();
    let mut out = Vec::with_capacity(3);
    for s in [s0, s1, s2] {
        let d = bt.try_mul(&s)?.try_mul(&b)?;
        if !d.is_diagonal() {
            return Err(Error::InternalInconsistency("twist form is not diagonal in pi".into()));
        }
        out.push(d);
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// Inverse of `beta` in `k[X]/(F)`.
pub fn inverse_mod(beta: &UniPoly, curve: &Genus2Curve) -> Result<UniPoly> {
    let (g, s, _) = beta.ext_gcd(curve.sextic());
    if g.degree() != Some(0) {
        return Err(Error::DivisionByZero);
    }
    s.rem(curve.sextic())
}

fn check_witness(beta: &UniPoly, class: &TwistClass) -> Result<()> {
    let sq = (beta * beta).rem(class.curve.sextic())?;
    if sq != class.xi {
        return Err(Error::WitnessMismatch);
    }
    Ok(())
}

/// `alpha(P) = beta P mod F`, from `S^xi` to `S` when `beta^2 = xi mod F`.
pub fn twist_iso(beta: &UniPoly, p: &ProjPoint, class: &TwistClass) -> Result<ProjPoint> {
    check_witness(beta, class)?;
    if !twist_surface(class)?.contains(p) {
        return Err(Error::NotOnSurface);
    }
    from_poly(&(beta * &to_poly(p)?), &class.curve)
}

/// `alpha^-1(Q) = beta^-1 Q mod F`, from `S` back to `S^xi`.
pub fn twist_iso_inverse(beta: &UniPoly, q: &ProjPoint, class: &TwistClass) -> Result<ProjPoint> {
    check_witness(beta, class)?;
    if !crate::surface::s_membership(q, &class.curve) {
        return Err(Error::NotOnSurface);
    }
    let inv = inverse_mod(beta, &class.curve)?;
    from_poly(&(&inv * &to_poly(q)?), &class.curve)
}

/// All points of the surface in the search space, deduplicated projectively
/// and in a deterministic order.
///
/// Over GF(p) (`p <= 50`) the whole of P^5 is covered: through the squares of
/// the `pi` coordinates when the roots are known, otherwise by enumeration.
/// Over the rationals the primitive integer vectors with entries bounded by
/// `bound` are tried.
pub fn search_points(surface: &TwistSurface, bound: u64) -> Result<Vec<ProjPoint>> {
    match surface.field() {
        Field::Prime(p) => {
            let count = projective_count(p, 6);
            if p > MAX_SEARCH_PRIME {
                return Err(Error::SearchSpaceTooLarge(count));
            }
            match twist_diagonal(&surface.class) {
                Ok(diag) => squares_search(surface, &diag),
                Err(Error::RootsUnavailable) | Err(Error::VanishingAtRoot(_)) => {
                    if count > SEARCH_LIMIT {
                        return Err(Error::SearchSpaceTooLarge(count));
                    }
                    prime_brute_force(surface, p)
                }
                Err(e) => Err(e),
            }
        }
        Field::Rationals => rational_search(surface, bound),
    }
}

fn projective_count(q: u64, n: u32) -> u128 {
    let q = q as u128;
    (q.pow(n) - 1) / (q - 1)
}

/// Projective points of the span of `basis` over GF(p).
fn projective_span(field: Field, basis: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let elems: Vec<FieldElement> = field.elements().expect("finite field").collect();
    let k = basis.len();
    let n = basis.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for lead in 0..k {
        // coefficient vectors (0, .., 0, 1, *, .., *)
        let free = k - lead - 1;
        let total = elems.len().pow(free as u32);
        for mut idx in 0..total {
            let mut coeffs = vec![field.zero(); k];
            coeffs[lead] = field.one();
            for c in coeffs.iter_mut().skip(lead + 1) {
                *c = elems[idx % elems.len()].clone();
                idx /= elems.len();
            }
            let v = (0..n)
                .map(|r| (0..k).fold(field.zero(), |acc, b| &acc + &(&coeffs[b] * &basis[b][r])))
                .collect();
            out.push(v);
        }
    }
    out
}

/// On `sum_j d_ij pi_j^2 = 0` the squares `s_j = pi_j^2` span a linear
/// space; every projective `s` whose entries are all squares (possibly after
/// one non-square rescaling) lifts to the sign choices of its roots.
fn squares_search(surface: &TwistSurface, diag: &[Matrix; 3]) -> Result<Vec<ProjPoint>> {
    let field = surface.field();
    let rows: Vec<Vec<FieldElement>> = diag
        .iter()
        .map(|d| (0..6).map(|j| d.get(j, j).clone()).collect())
        .collect();
    let kernel = Matrix::from_rows(field, rows)?.kernel();
    let nonsquare = field
        .elements()
        .expect("finite field")
        .find(|e| !e.is_zero() && !e.is_square())
        .expect("odd prime field has a non-square");
    let b = pi_basis_matrix(&surface.class.curve)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in projective_span(field, &kernel) {
        for scale in [field.one(), nonsquare.clone()] {
            let scaled: Vec<FieldElement> = s.iter().map(|x| x * &scale).collect();
            let Some(roots) = scaled.iter().map(FieldElement::sqrt).collect::<Option<Vec<_>>>() else {
                continue;
            };
            let support: Vec<usize> = (0..6).filter(|&j| !roots[j].is_zero()).collect();
            // the first supported sign is fixed: pi and -pi are the same point
            for signs in 0u32..(1 << (support.len() - 1)) {
                let mut pi = roots.clone();
                for (bit, &j) in support.iter().skip(1).enumerate() {
                    if signs >> bit & 1 == 1 {
                        pi[j] = -&pi[j];
                    }
                }
                let p = ProjPoint::new(b.apply(&pi)?)?;
                if seen.insert(p.normalized()) {
                    out.push(p.normalized());
                }
            }
        }
    }
    out.sort_by_key(point_key);
    Ok(out)
}

fn point_key(p: &ProjPoint) -> Vec<String> {
    p.coords().iter().map(ToString::to_string).collect()
}

fn prime_brute_force(surface: &TwistSurface, p: u64) -> Result<Vec<ProjPoint>> {
    let field = surface.field();
    let grams: Vec<Vec<u64>> = surface
        .grams
        .iter()
        .map(|g| g.entries().iter().map(|e| e.residue().expect("prime field")).collect())
        .collect();
    let mut out = Vec::new();
    let mut v = [0u64; 6];
    for lead in 0..6 {
        let free = 5 - lead;
        for mut idx in 0..p.pow(free as u32) {
            v.iter_mut().for_each(|x| *x = 0);
            v[lead] = 1;
            for x in v.iter_mut().skip(lead + 1) {
                *x = idx % p;
                idx /= p;
            }
            let on = grams.iter().all(|g| {
                let mut acc = 0u64;
                for a in 0..6 {
                    if v[a] == 0 {
                        continue;
                    }
                    for b in 0..6 {
                        acc = (acc + v[a] * v[b] % p * g[a * 6 + b]) % p;
                    }
                }
                acc == 0
            });
            if on {
                out.push(ProjPoint::new(v.iter().map(|&x| field.from_i64(x as i64)).collect())?);
            }
        }
    }
    out.sort_by_key(point_key);
    Ok(out)
}

fn rational_search(surface: &TwistSurface, bound: u64) -> Result<Vec<ProjPoint>> {
    let side = 2 * bound as u128 + 1;
    let count = side.pow(6);
    if count > SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge(count));
    }
    // clear denominators so the forms have integer Gram matrices
    let grams: Vec<Vec<BigInt>> = surface
        .grams
        .iter()
        .map(|g| {
            let lcm = g
                .entries()
                .iter()
                .fold(BigInt::one(), |acc, e| acc.lcm(e.as_rational().expect("rational").denom()));
            g.entries()
                .iter()
                .map(|e| (e.as_rational().expect("rational") * &lcm).to_integer())
                .collect()
        })
        .collect();
    let small: Option<Vec<Vec<i64>>> = grams
        .iter()
        .map(|g| g.iter().map(ToPrimitive::to_i64).collect())
        .collect();
    let b = bound as i64;
    let mut out = Vec::new();
    let mut v = [0i64; 6];
    for code in 0..count {
        let mut c = code;
        for x in v.iter_mut() {
            *x = (c % side) as i64 - b;
            c /= side;
        }
        let Some(first) = v.iter().find(|&&x| x != 0) else {
            continue;
        };
        if *first < 0 || v.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
            continue;
        }
        let on = match &small {
            Some(gs) => gs.iter().all(|g| {
                let mut acc = 0i128;
                for a in 0..6 {
                    for bb in 0..6 {
                        acc += v[a] as i128 * v[bb] as i128 * g[a * 6 + bb] as i128;
                    }
                }
                acc == 0
            }),
            None => grams.iter().all(|g| {
                let mut acc = BigInt::zero();
                for a in 0..6 {
                    for bb in 0..6 {
                        acc += BigInt::from(v[a] * v[bb]) * &g[a * 6 + bb];
                    }
                }
                acc.is_zero()
            }),
        };
        if on {
            let field = Field::Rationals;
            out.push(ProjPoint::new(v.iter().map(|&x| field.from_i64(x)).collect())?);
        }
    }
    out.sort_by_key(point_key);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::line_delta;
    use crate::surface::{membership_grams, s_membership};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64, roots: &[i64]) -> Genus2Curve {
        Genus2Curve::from_i64_roots(Field::prime(p).unwrap(), roots).unwrap()
    }

    fn random_poly(field: Field, rng: &mut ChaCha8Rng) -> UniPoly {
        UniPoly::new(field, (0..6).map(|_| field.random_element(rng, 9)).collect())
    }

    fn random_unit(c: &Genus2Curve, rng: &mut ChaCha8Rng) -> UniPoly {
        loop {
            let b = random_poly(c.field(), rng);
            if inverse_mod(&b, c).is_ok() {
                return b;
            }
        }
    }

    #[test]
    fn trivial_twist_is_s() {
        for c in [gf(101, &[1, 2, 3, 4, 5, 6]), Genus2Curve::from_i64_roots(Field::Rationals, &[1, 2, 3, 4, 5, 7]).unwrap()] {
            let s = twist_surface(&TwistClass::trivial(&c)).unwrap();
            assert_eq!(s.grams, membership_grams(&c).unwrap());
            let shifted = &UniPoly::one(c.field()) + c.sextic().as_ref();
            let s2 = twist_surface(&TwistClass::new(&shifted, &c).unwrap()).unwrap();
            assert_eq!(s2.grams, s.grams);
        }
    }

    #[test]
    fn gram_and_direct_membership_agree() {
        let c = gf(101, &[1, 2, 3, 4, 5, 6]);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let s = twist_surface(&TwistClass::new(&random_poly(c.field(), &mut rng), &c).unwrap()).unwrap();
            for _ in 0..10 {
                let Ok(p) = ProjPoint::new(random_poly(c.field(), &mut rng).padded(6)) else { continue };
                assert_eq!(s.gram_values(&p).unwrap(), s.residues(&p).unwrap());
            }
        }
    }

    #[test]
    fn diagonal_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let q = Field::Rationals;
        let nonmonic = Genus2Curve::from_roots(q, [1, 2, 3, 4, 5, 7].iter().map(|&r| q.from_i64(r)).collect(), q.from_i64(-3)).unwrap();
        for c in [gf(101, &[1, 2, 3, 4, 5, 6]), nonmonic] {
            let rd = c.root_data().unwrap().clone();
            let f6 = c.f(6);
            for trial in 0..6 {
                let xi = if trial == 0 { UniPoly::one(c.field()) } else { random_poly(c.field(), &mut rng) };
                let class = TwistClass::new(&xi, &c).unwrap();
                let vals = match class.values_at_roots() {
                    Ok(v) if v.iter().all(|x| !x.is_zero()) => v,
                    _ => continue,
                };
                let d = twist_diagonal(&class).unwrap();
                for j in 0..6 {
                    let base = &vals[j] * &rd.omega[j];
                    assert_eq!(d[0].get(j, j), &base);
                    assert_eq!(d[1].get(j, j), &(&(&f6 * &rd.roots[j]) * &base));
                    assert_eq!(d[2].get(j, j), &(&(&f6.square() * &rd.roots[j].square()) * &base));
                }
            }
        }
        let c = gf(101, &[1, 2, 3, 4, 5, 6]);
        let vanishing = UniPoly::linear_root(&c.field().from_i64(3));
        assert_eq!(twist_diagonal(&TwistClass::new(&vanishing, &c).unwrap()), Err(Error::VanishingAtRoot(3)));
    }

    #[test]
    fn isomorphism_to_s() {
        let c = gf(101, &[1, 2, 3, 4, 5, 6]);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let one = UniPoly::one(c.field());
        let trivial = TwistClass::trivial(&c);
        let d0 = line_delta(&[], &c).unwrap();
        assert_eq!(twist_iso(&one, &d0.generators[0], &trivial).unwrap(), d0.generators[0]);
        for _ in 0..5 {
            let beta = random_unit(&c, &mut rng);
            let class = TwistClass::from_witness(&beta, &c).unwrap();
            let inv = inverse_mod(&beta, &c).unwrap();
            let surface = twist_surface(&class).unwrap();
            // points of S^xi pulled back from random points of S
            for x in 0..5 {
                let on_s = crate::lines::delta_i_param(x % 6 + 1, &c.field().from_i64(7 + x as i64), &c).unwrap();
                let p = from_poly(&(&inv * &to_poly(&on_s).unwrap()), &c).unwrap();
                assert!(surface.contains(&p));
                let image = twist_iso(&beta, &p, &class).unwrap();
                assert!(s_membership(&image, &c));
                assert_eq!(image, on_s);
                assert_eq!(twist_iso_inverse(&beta, &image, &class).unwrap(), p);
            }
            let wrong = &beta + &one;
            assert_eq!(twist_iso(&wrong, &d0.generators[0], &class), Err(Error::WitnessMismatch));
        }
    }

    #[test]
    fn search_over_gf7_finds_delta0() {
        let c = gf(7, &[1, 2, 3, 4, 5, 6]);
        let s = twist_surface(&TwistClass::trivial(&c)).unwrap();
        let pts = search_points(&s, 0).unwrap();
        assert!(pts.iter().all(|p| s.contains(p)));
        let d0 = line_delta(&[], &c).unwrap();
        let on_line: Vec<&ProjPoint> = pts.iter().filter(|p| d0.contains(p)).collect();
        assert_eq!(on_line.len(), 8);
        // the squares search agrees with brute force over P^5(GF(7))
        assert_eq!(prime_brute_force(&s, 7).unwrap(), pts);
    }

    #[test]
    fn twist_iso_is_a_bijection_on_points() {
        let c = gf(31, &[1, 2, 3, 5, 8, 13]);
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let base = search_points(&twist_surface(&TwistClass::trivial(&c)).unwrap(), 0).unwrap();
        for _ in 0..3 {
            let beta = random_unit(&c, &mut rng);
            let class = TwistClass::from_witness(&beta, &c).unwrap();
            let pts = search_points(&twist_surface(&class).unwrap(), 0).unwrap();
            let mut images: Vec<ProjPoint> =
                pts.iter().map(|p| twist_iso(&beta, p, &class).unwrap().normalized()).collect();
            images.sort_by_key(point_key);
            assert_eq!(images, base);
        }
    }

    #[test]
    fn search_limits_and_empty_results() {
        let c = gf(101, &[1, 2, 3, 4, 5, 6]);
        let s = twist_surface(&TwistClass::trivial(&c)).unwrap();
        assert!(matches!(search_points(&s, 0), Err(Error::SearchSpaceTooLarge(_))));
        let q = Genus2Curve::from_i64_roots(Field::Rationals, &[1, 2, 3, 4, 5, 7]).unwrap();
        let sq = twist_surface(&TwistClass::trivial(&q)).unwrap();
        assert!(matches!(search_points(&sq, 100), Err(Error::SearchSpaceTooLarge(_))));
        let pts = search_points(&sq, 2).unwrap();
        assert!(pts.iter().all(|p| s_membership(p, &q)));
        // (-theta : 1 : 0 : 0 : 0 : 0) for the roots 1 and 2
        for t in [1, 2] {
            assert!(pts.contains(&ProjPoint::from_i64(Field::Rationals, &[-t, 1, 0, 0, 0, 0]).unwrap()));
        }
        // a class with no points in the box is reported as empty, not as an error
        let class = TwistClass::new(&UniPoly::from_i64(Field::Rationals, &[0, 0, 1, 1]), &q).unwrap();
        assert_eq!(search_points(&twist_surface(&class).unwrap(), 2).unwrap(), vec![]);
    }

    #[test]
    fn equivalent_representatives() {
        let c = gf(101, &[1, 2, 3, 4, 5, 6]);
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let class = TwistClass::new(&random_poly(c.field(), &mut rng), &c).unwrap();
        let q = random_unit(&c, &mut rng);
        let other = class.equivalent(&c.field().from_i64(4), &q).unwrap();
        // q^-1 carries S^xi' points to S^xi points
        let surface = twist_surface(&other).unwrap();
        let pts = [0, 1, 2].map(|k| from_poly(&UniPoly::from_i64(c.field(), &[k, 1, 2]), &c).unwrap());
        for p in pts {
            let lhs = surface.residues(&p).unwrap();
            let moved = from_poly(&(&q * &to_poly(&p).unwrap()), &c).unwrap();
            let rhs = twist_surface(&class).unwrap().residues(&moved).unwrap();
            let scale = c.field().from_i64(4);
            assert_eq!(lhs, [&rhs[0] * &scale, &rhs[1] * &scale, &rhs[2] * &scale]);
        }
    }
}
