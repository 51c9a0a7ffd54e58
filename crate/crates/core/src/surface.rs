//! The desingularized Kummer surface `S` in P^5: points are residues
//! `P(X) = p_0 + ... + p_5 X^5` whose square is a quadratic modulo `F`.

use crate::algebra::mpoly::Symbol;
use crate::algebra::{FieldElement, MPoly, Matrix, ProjPoint, UniPoly};
use crate::curve::{index, DivisorPair, Genus2Curve};
use crate::error::{Error, Result};
use crate::kummer::{derive_kummer_quartic, xi_lookup, KummerQuartic};

/// The six degree-4 forms `p_0..p_5` of the map from the Kummer surface to
/// `S`, in `x1..x4 = xi_1..xi_4` and the curve coefficients `f0..f6`.
pub const KAPPA_FORMS: [&str; 6] = [
    "+ f1 f2 x1^4 + f1 f3 x1^3 x2 + 3/2 f1 x1^3 x4 + f1 f4 x1^2 x2^2
     - 3/2 f1 f5 x1^2 x2 x3 - f2 f5 x1^2 x3^2 + 2 f1 f6 x1^2 x3^2 - 1/2 f3 x1^2 x3 x4
     + f1 f5 x1 x2^3 - 3 f1 f6 x1 x2^2 x3 - 1/2 f3 f5 x1 x2 x3^2 - 2 f2 f6 x1 x2 x3^2
     - f4 x1 x2 x3 x4 - 1/2 x1 x2 x4^2 - f3 f6 x1 x3^3 - 1/2 f5 x1 x3^2 x4 + f1 f6 x2^4
     - f3 f6 x2^2 x3^2 - 1/2 f5 x2^2 x3 x4 + 1/2 f5^2 x2 x3^3 - 2 f4 f6 x2 x3^3
     - 2 f6 x2 x3^2 x4",
    "+ 2 f2^2 x1^4 - 1/2 f1 f3 x1^4 + 2 f2 f3 x1^3 x2 + 1/2 f3^2 x1^3 x3 + 3 f2 x1^3 x4
     + 2 f2 f4 x1^2 x2^2 + 1/2 f1 f5 x1^2 x2^2 + f3 f4 x1^2 x2 x3 - f2 f5 x1^2 x2 x3
     - f1 f6 x1^2 x2 x3 + 3/2 f3 x1^2 x2 x4 - 1/2 f3 f5 x1^2 x3^2 + 2 f2 f6 x1^2 x3^2
     + x1^2 x4^2 + 2 f2 f5 x1 x2^3 + f1 f6 x1 x2^3 + 3/2 f3 f5 x1 x2^2 x3
     - 2 f2 f6 x1 x2^2 x3 + f4 x1 x2^2 x4 + f6 x1 x3^2 x4 + 2 f2 f6 x2^4 + 2 f3 f6 x2^3 x3
     + 1/2 f5 x2^3 x4 - 1/2 f5^2 x2^2 x3^2 + 2 f4 f6 x2^2 x3^2 + f6 x2^2 x3 x4",
    "+ 2 f2 f3 x1^4 - f1 f4 x1^4 + 2 f3^2 x1^3 x2 - f1 f5 x1^3 x2 + f3 f4 x1^3 x3
     - 2 f2 f5 x1^3 x3 + f1 f6 x1^3 x3 + 2 f3 x1^3 x4 + 2 f3 f4 x1^2 x2^2
     - f1 f6 x1^2 x2^2 + 2 f4^2 x1^2 x2 x3 - 3 f3 f5 x1^2 x2 x3 - 2 f2 f6 x1^2 x2 x3
     + f4 x1^2 x2 x4 - f4 f5 x1^2 x3^2 + f3 f6 x1^2 x3^2 - 2 f5 x1^2 x3 x4
     + 2 f3 f5 x1 x2^3 + 2 f4 f5 x1 x2^2 x3 - 5 f3 f6 x1 x2^2 x3 + f5 x1 x2^2 x4
     + f5^2 x1 x2 x3^2 - 4 f4 f6 x1 x2 x3^2 - 3 f6 x1 x2 x3 x4 - f5 f6 x1 x3^3
     + 2 f3 f6 x2^4 + 2 f4 f6 x2^3 x3 + f6 x2^3 x4 + f5 f6 x2^2 x3^2",
    "+ 2 f2 f4 x1^4 - f1 f5 x1^4 + 2 f3 f4 x1^3 x2 - f1 f6 x1^3 x2 + f3 f5 x1^3 x3
     - 2 f2 f6 x1^3 x3 + 2 f4 x1^3 x4 + 2 f4^2 x1^2 x2^2 - f3 f6 x1^2 x2 x3
     + f5 x1^2 x2 x4 - f5^2 x1^2 x3^2 + 2 f4 f6 x1^2 x3^2 - 2 f6 x1^2 x3 x4
     + 2 f4 f5 x1 x2^3 + 2 f5^2 x1 x2^2 x3 - 4 f4 f6 x1 x2^2 x3 + f6 x1 x2^2 x4
     - f5 f6 x1 x2 x3^2 - 2 f6^2 x1 x3^3 + 2 f4 f6 x2^4 + 2 f5 f6 x2^3 x3
     + 2 f6^2 x2^2 x3^2",
    "+ 2 f2 f5 x1^4 - f1 f6 x1^4 + 2 f3 f5 x1^3 x2 + f3 f6 x1^3 x3 + 2 f5 x1^3 x4
     + 2 f4 f5 x1^2 x2^2 - 2 f5^2 x1^2 x2 x3 + 2 f4 f6 x1^2 x2 x3 + f6 x1^2 x2 x4
     + f5 f6 x1^2 x3^2 + 2 f5^2 x1 x2^3 - 2 f5 f6 x1 x2^2 x3 - 2 f6^2 x1 x2 x3^2
     + 2 f5 f6 x2^4 + 2 f6^2 x2^3 x3",
    "+ 2 f2 f6 x1^4 + 2 f3 f6 x1^3 x2 + 2 f6 x1^3 x4 + 2 f4 f6 x1^2 x2^2
     - 2 f5 f6 x1^2 x2 x3 + 2 f6^2 x1^2 x3^2 + 2 f5 f6 x1 x2^3 - 4 f6^2 x1 x2^2 x3
     + 2 f6^2 x2^4",
];

pub fn to_poly(p: &ProjPoint) -> Result<UniPoly> {
    if p.dim() != 6 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            got: p.dim(),
        });
    }
    Ok(UniPoly::new(p.field(), p.coords().to_vec()))
}

/// The point with coordinates the coefficients of `poly mod F`.
pub fn from_poly(poly: &UniPoly, curve: &Genus2Curve) -> Result<ProjPoint> {
    ProjPoint::new(poly.rem(curve.sextic())?.padded(6))
}

/// Coefficients of `X^5, X^4, X^3` in `P^2 mod F`.
pub fn membership_residues(p: &ProjPoint, curve: &Genus2Curve) -> Result<[FieldElement; 3]> {
    let poly = to_poly(p)?;
    let sq = (&poly * &poly).rem(curve.sextic())?;
    Ok([sq.coeff(5), sq.coeff(4), sq.coeff(3)])
}

/// `P(X)^2` is congruent to a quadratic modulo `F`. No roots required.
pub fn s_membership(p: &ProjPoint, curve: &Genus2Curve) -> bool {
    membership_residues(p, curve)
        .map(|r| r.iter().all(FieldElement::is_zero))
        .unwrap_or(false)
}

/// Gram matrices `G_m[a][b] = [X^m] (xi X^(a+b) mod F)` for `m = 5, 4, 3`, so
/// that `p^T G_m p` is the `X^m` coefficient of `xi P^2 mod F`.
pub fn residue_grams(xi: &UniPoly, curve: &Genus2Curve) -> Result<[Matrix; 3]> {
    let field = curve.field();
    let reduced: Vec<UniPoly> = (0..=10)
        .map(|k| (xi * &UniPoly::monomial(field.one(), k)).rem(curve.sextic()))
        .collect::<Result<_>>()?;
    let gram = |m: usize| {
        let mut g = Matrix::zero(field, 6, 6);
        for a in 0..6 {
            for b in 0..6 {
                g.set(a, b, reduced[a + b].coeff(m));
            }
        }
        g
    };
    Ok([gram(5), gram(4), gram(3)])
}

/// The three Gram matrices cutting out `S`.
pub fn membership_grams(curve: &Genus2Curve) -> Result<[Matrix; 3]> {
    residue_grams(&UniPoly::one(curve.field()), curve)
}

/// The map from the Kummer surface to `S` given by explicit quartic forms,
/// bundled with the Kummer quartic used to validate its inputs.
#[derive(Clone, Debug)]
pub struct Kappa {
    curve: Genus2Curve,
    quartic: KummerQuartic,
    forms: Vec<MPoly>,
}

impl Kappa {
    pub fn new(curve: &Genus2Curve) -> Result<Self> {
        let quartic = derive_kummer_quartic(curve)?;
        let lookup = |name: &str| {
            if let Some(k) = name.strip_prefix('f') {
                let k: usize = k.parse().ok()?;
                return (k <= 6).then(|| Symbol::Value(curve.f(k)));
            }
            xi_lookup(name)
        };
        let forms = KAPPA_FORMS
            .iter()
            .map(|text| MPoly::parse(text, curve.field(), 4, lookup))
            .collect::<Result<Vec<_>>>()?;
        Ok(Kappa {
            curve: curve.clone(),
            quartic,
            forms,
        })
    }

    pub fn curve(&self) -> &Genus2Curve {
        &self.curve
    }

    pub fn quartic(&self) -> &KummerQuartic {
        &self.quartic
    }

    pub fn forms(&self) -> &[MPoly] {
        &self.forms
    }

    /// The six forms at `xi`. `ZeroVector` on the locus where all vanish.
    pub fn explicit(&self, xi: &ProjPoint) -> Result<ProjPoint> {
        if !self.quartic.eval(xi)?.is_zero() {
            return Err(Error::NotOnKummer);
        }
        ProjPoint::new(self.forms.iter().map(|f| f.eval(xi.coords())).collect())
    }

    /// Lowest-order coefficient vector of the forms along the arc
    /// `(h^2 : (2x+h) h^2 : x(x+h) h^2 : 4F(x))` approaching `N_0`.
    pub fn blowup_direction_at_node0(&self, x: &FieldElement) -> Result<ProjPoint> {
        let field = self.curve.field();
        let h = UniPoly::x(field);
        let h2 = &h * &h;
        let c = |v: FieldElement| UniPoly::constant(v);
        let two_x = &field.from_i64(2) * x;
        let arc = [
            h2.clone(),
            &(&c(two_x) + &h) * &h2,
            &(&c(x.clone()) * &(&c(x.clone()) + &h)) * &h2,
            c(&field.from_i64(4) * &self.curve.eval(x)),
        ];
        let series: Vec<UniPoly> = self
            .forms
            .iter()
            .map(|f| f.eval_with(&arc, |a| UniPoly::constant(a.clone())))
            .collect();
        let order = series
            .iter()
            .filter_map(|s| s.coeffs().iter().position(|a| !a.is_zero()))
            .min()
            .ok_or(Error::ZeroVector)?;
        ProjPoint::new(series.iter().map(|s| s.coeff(order)).collect())
    }
}

/// `P^triangle(X)`, the residue representing the image of the divisor pair,
/// built from interpolation data at `x` and `u`.
pub fn kappa_constructive(d: &DivisorPair, curve: &Genus2Curve) -> Result<ProjPoint> {
    if d.y.is_zero() || d.v.is_zero() {
        return Err(Error::DegenerateDivisor("yv = 0"));
    }
    if d.x == d.u {
        return Err(Error::DegenerateDivisor("x = u"));
    }
    let field = curve.field();
    let f = curve.sextic().as_ref();
    let fprime = f.derivative();
    let k = |n: i64| UniPoly::constant(field.from_i64(n));
    let c = |a: &FieldElement| UniPoly::constant(a.clone());
    // F(a, X) = (F(X) - F(a)) / (X - a)
    let secant = |a: &FieldElement| -> Result<UniPoly> {
        let (q, r) = (f - &c(&f.eval(a))).div_rem(&UniPoly::linear_root(a))?;
        debug_assert!(r.is_zero());
        Ok(q)
    };
    let (x, u) = (&d.x, &d.u);
    let xu = x - u;
    let ux = u - x;
    let lead_x = &(&c(&(&fprime.eval(x) * &xu)) - &c(&(&field.from_i64(4) * &f.eval(x))))
        - &(&(&k(2) * &secant(x)?) * &c(&xu));
    let lead_u = &(&c(&(&fprime.eval(u) * &ux)) - &c(&(&field.from_i64(4) * &f.eval(u))))
        - &(&(&k(2) * &secant(u)?) * &c(&ux));
    let diamond = &(&(&lead_x * &UniPoly::linear_root(u)) * &c(&d.v))
        - &(&(&lead_u * &UniPoly::linear_root(x)) * &c(&d.y));
    let correction = &(&k(2) * &c(&(&xu * &(&d.y + &d.v)))) * f;
    let triangle = &diamond + &correction;
    if triangle.degree().is_some_and(|deg| deg > 5) {
        return Err(Error::InternalInconsistency(
            "constructive residue has degree above 5".into(),
        ));
    }
    ProjPoint::new(triangle.padded(6))
}

/// The cubic `M` with `M(x) = y`, `M(u) = v` and `M' = F'/(2 d Y)` at both
/// points, for the pair's twist factor `d`.
pub fn interpolating_cubic(d: &DivisorPair, curve: &Genus2Curve) -> Result<UniPoly> {
    if d.y.is_zero() || d.v.is_zero() || d.x == d.u {
        return Err(Error::DegenerateDivisor("need yv != 0 and x != u"));
    }
    let field = curve.field();
    let fprime = curve.sextic().derivative();
    let two_d = &field.from_i64(2) * &d.twist;
    let row = |a: &FieldElement| (0..4).map(|k| a.pow(k)).collect::<Vec<_>>();
    let drow = |a: &FieldElement| {
        (0..4)
            .map(|k| if k == 0 { field.zero() } else { &field.from_i64(k as i64) * &a.pow(k - 1) })
            .collect::<Vec<_>>()
    };
    let system = Matrix::from_rows(field, vec![row(&d.x), row(&d.u), drow(&d.x), drow(&d.u)])?;
    let rhs = vec![
        d.y.clone(),
        d.v.clone(),
        fprime.eval(&d.x).checked_div(&(&two_d * &d.y))?,
        fprime.eval(&d.u).checked_div(&(&two_d * &d.v))?,
    ];
    let coeffs = system.inverse()?.apply(&rhs)?;
    Ok(UniPoly::new(field, coeffs))
}

/// `H = (d M^2 - F) / ((X-x)^2 (X-u)^2)`, an exact quotient.
pub fn residual_quadric(d: &DivisorPair, curve: &Genus2Curve) -> Result<UniPoly> {
    let m = interpolating_cubic(d, curve)?;
    let num = &(&(&m * &m) * &UniPoly::constant(d.twist.clone())) - curve.sextic().as_ref();
    let g = &UniPoly::linear_root(&d.x) * &UniPoly::linear_root(&d.u);
    let (q, r) = num.div_rem(&(&g * &g))?;
    if !r.is_zero() {
        return Err(Error::InternalInconsistency("M^2 - F is not divisible by G^2".into()));
    }
    Ok(q)
}

/// `g_i = 1 - 2 P_i / P_i(theta_i)`.
pub fn involution_multiplier(i: usize, curve: &Genus2Curve) -> Result<UniPoly> {
    let basis = curve.basis_poly(i)?;
    let w = curve.omega(i)?;
    let scale = curve.field().from_i64(-2).checked_div(w)?;
    Ok(&UniPoly::one(curve.field()) + &basis.scale(&scale))
}

/// `epsilon^(i)(P) = g_i P mod F`.
pub fn epsilon(i: usize, p: &ProjPoint, curve: &Genus2Curve) -> Result<ProjPoint> {
    let g = involution_multiplier(i, curve)?;
    from_poly(&(&g * &to_poly(p)?), curve)
}

/// Matrix of multiplication by `g` modulo `F` on coefficient vectors.
pub fn multiplication_matrix(g: &UniPoly, curve: &Genus2Curve) -> Result<Matrix> {
    let field = curve.field();
    let cols: Vec<Vec<FieldElement>> = (0..6)
        .map(|k| Ok((g * &UniPoly::monomial(field.one(), k)).rem(curve.sextic())?.padded(6)))
        .collect::<Result<_>>()?;
    Matrix::from_columns(field, &cols)
}

pub fn epsilon_matrix(i: usize, curve: &Genus2Curve) -> Result<Matrix> {
    multiplication_matrix(&involution_multiplier(i, curve)?, curve)
}

/// An element `prod_{i in T} epsilon^(i)` of the involution group, as a bit
/// mask over the 1-based indices (bit `i - 1` for index `i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Involution(pub u8);

impl Involution {
    pub const IDENTITY: Involution = Involution(0);

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        for &i in indices {
            mask ^= 1 << index(i)?;
        }
        Ok(Involution(mask))
    }

    pub fn indices(&self) -> Vec<usize> {
        (1..=6).filter(|i| self.0 >> (i - 1) & 1 == 1).collect()
    }

    pub fn compose(&self, other: &Involution) -> Involution {
        Involution(self.0 ^ other.0)
    }

    /// Representative modulo the full product (which acts as a scalar):
    /// fewer than three indices, or three indices including 1.
    pub fn canonical(&self) -> Involution {
        let n = self.0.count_ones();
        if n > 3 || (n == 3 && self.0 & 1 == 0) {
            Involution(!self.0 & 0x3f)
        } else {
            *self
        }
    }

    pub fn matrix(&self, curve: &Genus2Curve) -> Result<Matrix> {
        let mut g = UniPoly::one(curve.field());
        for i in self.indices() {
            g = (&g * &involution_multiplier(i, curve)?).rem(curve.sextic())?;
        }
        multiplication_matrix(&g, curve)
    }

    pub fn apply(&self, p: &ProjPoint, curve: &Genus2Curve) -> Result<ProjPoint> {
        self.indices().iter().try_fold(p.clone(), |acc, &i| epsilon(i, &acc, curve))
    }
}

impl std::fmt::Display for Involution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let idx = self.indices();
        if idx.is_empty() {
            write!(f, "id")
        } else {
            let parts: Vec<String> = idx.iter().map(ToString::to_string).collect();
            write!(f, "e{}", parts.join(""))
        }
    }
}

/// The group generated by the six involutions, as projectively distinct
/// matrices. Products of all 64 index subsets are formed and deduplicated, so
/// the order is computed rather than assumed.
pub fn inv_group(curve: &Genus2Curve) -> Result<Vec<(Involution, Matrix)>> {
    curve.root_data()?;
    let mut out: Vec<(Involution, Matrix)> = Vec::new();
    for mask in 0u8..64 {
        let inv = Involution(mask);
        let m = inv.matrix(curve)?;
        if !out.iter().any(|(_, seen)| seen.proportional_to(&m)) {
            out.push((inv, m));
        }
    }
    Ok(out)
}

/// `pi_j = P(theta_j) / omega_j`.
pub fn to_pi(p: &ProjPoint, curve: &Genus2Curve) -> Result<Vec<FieldElement>> {
    let rd = curve.root_data()?;
    let poly = to_poly(p)?;
    rd.roots
        .iter()
        .zip(&rd.omega)
        .map(|(t, w)| poly.eval(t).checked_div(w))
        .collect()
}

/// `P = sum_j pi_j P_j`.
pub fn from_pi(pi: &[FieldElement], curve: &Genus2Curve) -> Result<ProjPoint> {
    let rd = curve.root_data()?;
    if pi.len() != 6 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            got: pi.len(),
        });
    }
    let poly = pi
        .iter()
        .zip(&rd.basis)
        .fold(UniPoly::zero(curve.field()), |acc, (c, b)| &acc + &b.scale(c));
    ProjPoint::new(poly.padded(6))
}

/// Matrix `B` whose columns are the coefficient vectors of `P_1..P_6`, so
/// `p = B pi`.
pub fn pi_basis_matrix(curve: &Genus2Curve) -> Result<Matrix> {
    let rd = curve.root_data()?;
    let cols: Vec<Vec<FieldElement>> = rd.basis.iter().map(|b| b.padded(6)).collect();
    Matrix::from_columns(curve.field(), &cols)
}

/// `S_i(pi) = sum_j theta_j^i omega_j pi_j^2` for `i = 0, 1, 2`.
pub fn diagonal_quadrics(pi: &[FieldElement], curve: &Genus2Curve) -> Result<[FieldElement; 3]> {
    let rd = curve.root_data()?;
    let s = |i: u32| {
        (0..6).fold(curve.field().zero(), |acc, j| {
            &acc + &(&(&rd.roots[j].pow(i) * &rd.omega[j]) * &pi[j].square())
        })
    };
    Ok([s(0), s(1), s(2)])
}

/// Which quadric carries the point and which one the polar must touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolarDirection {
    /// Point on `S_0`; polar of `S_1` tangent to `S_2`.
    FromS0,
    /// Point on `S_2`; polar of `S_1` tangent to `S_0`.
    FromS2,
}

/// The polar hyperplane of `p` with respect to `S_1` is tangent to the other
/// outer quadric: its coefficient vector lies on the adjugate quadric.
pub fn polar_duality_check(p: &ProjPoint, direction: PolarDirection, curve: &Genus2Curve) -> Result<bool> {
    let rd = curve.root_data()?;
    let pi = to_pi(p, curve)?;
    let [s0, _, s2] = diagonal_quadrics(&pi, curve)?;
    let (on, target_power) = match direction {
        PolarDirection::FromS0 => (s0, 2),
        PolarDirection::FromS2 => (s2, 0),
    };
    if !on.is_zero() {
        return Err(Error::NotOnSurface);
    }
    let field = curve.field();
    let two = field.from_i64(2);
    let hyperplane: Vec<FieldElement> = (0..6)
        .map(|j| &(&(&two * &rd.roots[j]) * &rd.omega[j]) * &pi[j])
        .collect();
    let diag: Vec<FieldElement> = (0..6)
        .map(|j| &rd.roots[j].pow(target_power) * &rd.omega[j])
        .collect();
    let adjugate_form = (0..6).fold(field.zero(), |acc, j| {
        let cof = (0..6)
            .filter(|&k| k != j)
            .fold(field.one(), |a, k| &a * &diag[k]);
        &acc + &(&cof * &hyperplane[j].square())
    });
    Ok(adjugate_form.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::kummer::{kummer_coords, node_0};
    use crate::sampling::DivisorSampler;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf101() -> Genus2Curve {
        Genus2Curve::from_i64_roots(Field::prime(101).unwrap(), &[1, 2, 3, 4, 5, 6]).unwrap()
    }

    fn nonmonic_q() -> Genus2Curve {
        let q = Field::Rationals;
        let roots = [1, 2, 3, 4, 5, 7].iter().map(|&r| q.from_i64(r)).collect();
        Genus2Curve::from_roots(q, roots, q.from_i64(-3)).unwrap()
    }

    #[test]
    fn membership_examples() {
        let c = gf101();
        let f = c.field();
        assert!(s_membership(&ProjPoint::from_i64(f, &[1, 0, 0, 0, 0, 0]).unwrap(), &c));
        assert!(!s_membership(&ProjPoint::from_i64(f, &[0, 0, 1, 0, 0, 0]).unwrap(), &c));
        for i in 1..=6 {
            let t = c.root(i).unwrap();
            let p = ProjPoint::new(vec![-t, f.one(), f.zero(), f.zero(), f.zero(), f.zero()]).unwrap();
            assert!(s_membership(&p, &c));
            let basis = ProjPoint::new(c.basis_poly(i).unwrap().padded(6)).unwrap();
            assert!(!s_membership(&basis, &c));
        }
    }

    #[test]
    fn explicit_and_constructive_agree() {
        for curve in [gf101(), nonmonic_q()] {
            let kappa = Kappa::new(&curve).unwrap();
            let sampler = DivisorSampler::new(&curve).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..30 {
                let d = sampler.sample(&mut rng);
                let xi = kummer_coords(&d, &curve).unwrap();
                let a = kappa.explicit(&xi).unwrap();
                let b = kappa_constructive(&d, &curve).unwrap();
                assert_eq!(a, b, "divisor {d:?}");
                assert!(s_membership(&a, &curve));
                assert_eq!(kappa_constructive(&d.conjugate(), &curve).unwrap(), b);
            }
        }
    }

    #[test]
    fn constructive_identities() {
        let curve = nonmonic_q();
        let sampler = DivisorSampler::new(&curve).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = curve.field();
        for _ in 0..20 {
            let d = sampler.sample(&mut rng);
            let p = to_poly(&kappa_constructive(&d, &curve).unwrap()).unwrap();
            let m = interpolating_cubic(&d, &curve).unwrap();
            let g = &UniPoly::linear_root(&d.x) * &UniPoly::linear_root(&d.u);
            let gp = (&g * &p).rem(curve.sextic()).unwrap();
            assert!(crate::algebra::proj::proportional(&gp.padded(6), &m.padded(6)));
            let h = residual_quadric(&d, &curve).unwrap();
            let p2 = (&p * &p).rem(curve.sextic()).unwrap();
            // P^2 = 4 d (x-u)^6 y^2 v^2 H for the unscaled residue
            let xu = &d.x - &d.u;
            let c = &(&(&f.from_i64(4) * &d.twist) * &xu.pow(6)) * &(&d.y * &d.v).square();
            assert_eq!(p2, h.scale(&c));
        }
    }

    #[test]
    fn blowup_at_origin_node() {
        for curve in [gf101(), nonmonic_q()] {
            let kappa = Kappa::new(&curve).unwrap();
            let f = curve.field();
            assert!(kappa.quartic().contains(&node_0(f)));
            assert_eq!(kappa.explicit(&node_0(f)), Err(Error::ZeroVector));
            for x in [0, 9, 10, -13] {
                let x = f.from_i64(x);
                let dir = kappa.blowup_direction_at_node0(&x).unwrap();
                let want =
                    ProjPoint::new(vec![-&x, f.one(), f.zero(), f.zero(), f.zero(), f.zero()]).unwrap();
                assert_eq!(dir, want);
            }
        }
    }

    #[test]
    fn involutions_act_by_sign_flips() {
        let c = gf101();
        let f = c.field();
        let sampler = DivisorSampler::new(&c).unwrap();
        let kappa = Kappa::new(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let p = kappa
                .explicit(&kummer_coords(&sampler.sample(&mut rng), &c).unwrap())
                .unwrap();
            let pi = to_pi(&p, &c).unwrap();
            assert_eq!(from_pi(&pi, &c).unwrap(), p);
            assert!(diagonal_quadrics(&pi, &c).unwrap().iter().all(FieldElement::is_zero));
            for i in 1..=6 {
                let q = epsilon(i, &p, &c).unwrap();
                assert!(s_membership(&q, &c));
                assert_eq!(epsilon(i, &q, &c).unwrap(), p);
                let mut flipped = pi.clone();
                flipped[i - 1] = -&flipped[i - 1];
                // the same scalar multiple on every coordinate
                assert!(crate::algebra::proj::proportional(&to_pi(&q, &c).unwrap(), &flipped));
                for j in 1..=6 {
                    let ij = epsilon(j, &q, &c).unwrap();
                    let ji = epsilon(i, &epsilon(j, &p, &c).unwrap(), &c).unwrap();
                    assert_eq!(ij, ji);
                }
            }
        }
        for i in 1..=6 {
            let t = c.root(i).unwrap();
            let p = ProjPoint::new(vec![-t, f.one(), f.zero(), f.zero(), f.zero(), f.zero()]).unwrap();
            assert_eq!(epsilon(i, &p, &c).unwrap(), p);
        }
    }

    #[test]
    fn involution_group_has_order_32() {
        for c in [gf101(), nonmonic_q()] {
            let g = inv_group(&c).unwrap();
            assert_eq!(g.len(), 32);
            let full = Involution(0x3f).matrix(&c).unwrap();
            assert!(full.proportional_to(&Matrix::identity(c.field(), 6)));
        }
    }

    #[test]
    fn pi_basis_vectors() {
        let c = gf101();
        for j in 1..=6 {
            let p = ProjPoint::new(c.basis_poly(j).unwrap().padded(6)).unwrap();
            let pi = to_pi(&p, &c).unwrap();
            for (k, v) in pi.iter().enumerate() {
                assert_eq!(v.is_zero(), k != j - 1);
            }
        }
    }

    #[test]
    fn polar_tangency() {
        let c = gf101();
        let kappa = Kappa::new(&c).unwrap();
        let sampler = DivisorSampler::new(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..10 {
            let p = kappa
                .explicit(&kummer_coords(&sampler.sample(&mut rng), &c).unwrap())
                .unwrap();
            assert!(polar_duality_check(&p, PolarDirection::FromS0, &c).unwrap());
            assert!(polar_duality_check(&p, PolarDirection::FromS2, &c).unwrap());
        }
        // diagonal adjugate formula
        let rd = c.root_data().unwrap();
        let diag: Vec<_> = (0..6).map(|j| &rd.roots[j].square() * &rd.omega[j]).collect();
        let a = Matrix::diagonal(c.field(), &diag);
        let adj = a.inverse().unwrap().scale(&a.determinant().unwrap());
        for j in 0..6 {
            let cof = (0..6).filter(|&k| k != j).fold(c.field().one(), |acc, k| &acc * &diag[k]);
            assert_eq!(adj.get(j, j), &cof);
        }
    }
}
