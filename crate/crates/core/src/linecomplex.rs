//! The classical model of the desingularized Kummer: lines of P^3 in
//! Plücker coordinates, the quadratic complex `H`, the singular-line map
//! `kappa1`, and the linear bridge `Theta` onto `S`.
//!
//! Plücker coordinates are ordered `(p43, p24, p41, p21, p31, p32)` with
//! `p_ij = u_i v_j - u_j v_i`. All diagonal coordinates are kept
//! unnormalized (`zeta'_i`, no square roots of `omega_i`).

use crate::algebra::{Field, FieldElement, Matrix, ProjPoint};
use crate::curve::Genus2Curve;
use crate::error::{Error, Result};

/// A point of the Grassmannian `G = 0` in P^5.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PluckerLine(pub ProjPoint);

impl PluckerLine {
    pub fn coords(&self) -> &[FieldElement] {
        self.0.coords()
    }

    pub fn point(&self) -> &ProjPoint {
        &self.0
    }
}

/// Unnormalized diagonal coordinates `zeta'_i = G(X, v(theta_i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaCoords(pub Vec<FieldElement>);

const PLUCKER_PAIRS: [(usize, usize); 6] = [(4, 3), (2, 4), (4, 1), (2, 1), (3, 1), (3, 2)];

fn check_len(v: &[FieldElement], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: v.len(),
        });
    }
    Ok(())
}

pub fn line_through(u: &ProjPoint, v: &ProjPoint) -> Result<PluckerLine> {
    check_len(u.coords(), 4)?;
    check_len(v.coords(), 4)?;
    if u.proj_eq(v)? {
        return Err(Error::CoincidentPoints);
    }
    let coords = PLUCKER_PAIRS
        .iter()
        .map(|&(i, j)| {
            let (i, j) = (i - 1, j - 1);
            &(u.get(i) * v.get(j)) - &(u.get(j) * v.get(i))
        })
        .collect();
    Ok(PluckerLine(ProjPoint::new(coords)?))
}

/// Polar form `G(X, Y) = X1Y4 + X4Y1 + X2Y5 + X5Y2 + X3Y6 + X6Y3`, so that
/// `G(X, X) = G(X)`.
pub fn g_bilinear(x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
    let field = x[0].field();
    (0..3).fold(field.zero(), |acc, k| {
        &(&acc + &(&x[k] * &y[k + 3])) + &(&x[k + 3] * &y[k])
    })
}

/// `G(X) = 2X1X4 + 2X2X5 + 2X3X6`.
pub fn g_form(x: &[FieldElement]) -> FieldElement {
    g_bilinear(x, x)
}

/// Hessian matrix of `G`.
pub fn g_gram2(field: Field) -> Matrix {
    let mut m = Matrix::zero(field, 6, 6);
    for k in 0..3 {
        m.set(k, k + 3, field.from_i64(2));
        m.set(k + 3, k, field.from_i64(2));
    }
    m
}

/// Hessian matrix (twice the Gram matrix) of the quadratic complex
/// `H = -4X1X5 - 4X2X6 - X3^2 + 2f5X3X6 + 4f0X4^2 + 4f1X4X5 + 4f2X5^2
///      + 4f3X5X6 + (4f4 - f5^2)X6^2`, so that `H(X) = X^T M X / 2`.
pub fn h_gram2(curve: &Genus2Curve) -> Result<Matrix> {
    curve.require_monic()?;
    let field = curve.field();
    let c = |n: i64| field.from_i64(n);
    let f = |k: usize| curve.f(k);
    let mut m = Matrix::zero(field, 6, 6);
    let mut sym = |i: usize, j: usize, v: FieldElement| {
        m.set(i, j, v.clone());
        m.set(j, i, v);
    };
    sym(0, 4, c(-4));
    sym(1, 5, c(-4));
    sym(2, 2, c(-2));
    sym(2, 5, &c(2) * &f(5));
    sym(3, 3, &c(8) * &f(0));
    sym(3, 4, &c(4) * &f(1));
    sym(4, 4, &c(8) * &f(2));
    sym(4, 5, &c(4) * &f(3));
    sym(5, 5, &c(2) * &(&(&c(4) * &f(4)) - &f(5).square()));
    Ok(m)
}

/// `2 H(X)`.
pub fn h_form2(x: &[FieldElement], curve: &Genus2Curve) -> Result<FieldElement> {
    h_gram2(curve)?.bilinear(x, x)
}

/// Rows are the three linear forms cutting out the lines through `xi`.
pub fn plane_through_point(xi: &ProjPoint) -> Result<Matrix> {
    check_len(xi.coords(), 4)?;
    let field = xi.field();
    let z = field.zero();
    let [x1, x2, x3, x4] = [0, 1, 2, 3].map(|k| xi.get(k).clone());
    Matrix::from_rows(
        field,
        vec![
            vec![z.clone(), z.clone(), z.clone(), x3.clone(), -&x2, x1.clone()],
            vec![z.clone(), x1.clone(), x2, -&x4, z.clone(), z.clone()],
            vec![x1, z.clone(), -&x3, z.clone(), x4, z],
        ],
    )
}

/// Rows are the three linear forms cutting out the lines inside the plane
/// with dual coordinates `a`.
pub fn lines_in_plane(a: &ProjPoint) -> Result<Matrix> {
    check_len(a.coords(), 4)?;
    let field = a.field();
    let z = field.zero();
    let [a1, a2, a3, a4] = [0, 1, 2, 3].map(|k| a.get(k).clone());
    Matrix::from_rows(
        field,
        vec![
            vec![z.clone(), z.clone(), a4.clone(), a2.clone(), a3.clone(), z.clone()],
            vec![z.clone(), a4.clone(), z.clone(), a1.clone(), z.clone(), -&a3],
            vec![-&a4, z.clone(), z.clone(), z, a1, a2],
        ],
    )
}

/// All four incidence relations `xi_i p_jk - xi_j p_ik + xi_k p_ij = 0`.
/// The three displayed ones drop rank when `xi_1 = 0`; the fourth,
/// `xi_2X1 + xi_3X2 + xi_4X6 = 0`, restores rank 3 everywhere.
pub fn plane_through_point_full(xi: &ProjPoint) -> Result<Matrix> {
    let mut rows: Vec<Vec<FieldElement>> = (0..3).map(|r| plane_through_point(xi).map(|m| m.row(r))).collect::<Result<_>>()?;
    let z = xi.field().zero();
    rows.push(vec![xi.get(1).clone(), xi.get(2).clone(), z.clone(), z.clone(), z, xi.get(3).clone()]);
    Matrix::from_rows(xi.field(), rows)
}

/// All four relations `sum_j a_j p_ij = 0`; the fourth is
/// `a3X1 - a2X2 + a1X3 = 0`.
pub fn lines_in_plane_full(a: &ProjPoint) -> Result<Matrix> {
    let mut rows: Vec<Vec<FieldElement>> = (0..3).map(|r| lines_in_plane(a).map(|m| m.row(r))).collect::<Result<_>>()?;
    let z = a.field().zero();
    rows.push(vec![a.get(2).clone(), -a.get(1), a.get(0).clone(), z.clone(), z.clone(), z]);
    Matrix::from_rows(a.field(), rows)
}

/// A basis of the plane of lines cut out by `forms` and the gram of `H` on it.
fn restricted_conic(forms: &Matrix, curve: &Genus2Curve) -> Result<(Matrix, Matrix)> {
    let field = curve.field();
    let basis = forms.kernel();
    if basis.len() != 3 {
        return Err(Error::DegenerateConfiguration("zero point or plane".into()));
    }
    let b = Matrix::from_columns(field, &basis)?;
    let restricted = b.transpose().try_mul(&h_gram2(curve)?)?.try_mul(&b)?;
    Ok((b, restricted))
}

/// Rank of the conic `H` restricted to the plane of lines through `xi`:
/// 2 at smooth points of `K`, at most 1 at the nodes, 3 off `K`.
pub fn tangent_conic_rank(xi: &ProjPoint, curve: &Genus2Curve) -> Result<usize> {
    Ok(restricted_conic(&plane_through_point_full(xi)?, curve)?.1.rank())
}

/// Singular point of the conic `H` restricted to the plane of lines cut out
/// by `forms`. The conic has rank 2 exactly when it splits into two pencils.
fn singular_line(forms: &Matrix, curve: &Genus2Curve) -> Result<PluckerLine> {
    let (b, restricted) = restricted_conic(forms, curve)?;
    match restricted.rank() {
        3 => Err(Error::NotOnKummer),
        2 => {
            let k = restricted.kernel();
            Ok(PluckerLine(ProjPoint::new(b.apply(&k[0])?)?))
        }
        r => Err(Error::RankDeficient(r)),
    }
}

/// `kappa1(xi)`: the common line of the two pencils in which the lines
/// through `xi` meet `H`.
pub fn kappa1(xi: &ProjPoint, curve: &Genus2Curve) -> Result<PluckerLine> {
    singular_line(&plane_through_point_full(xi)?, curve)
}

/// `kappa1*(a)`: the common line of the two pencils in which the lines
/// inside the plane `a` meet `H`. Tropes give rank 1.
pub fn kappa1_star(a: &ProjPoint, curve: &Genus2Curve) -> Result<PluckerLine> {
    singular_line(&lines_in_plane_full(a)?, curve)
}

/// The linear change of coordinates `Theta: P^5 -> P^5`, rows `p_0..p_5`.
pub fn theta_matrix(curve: &Genus2Curve) -> Result<Matrix> {
    curve.require_monic()?;
    let field = curve.field();
    let c = |n: i64| field.from_i64(n);
    let f = |k: usize| curve.f(k);
    let two = |k: usize| &c(2) * &f(k);
    let z = field.zero();
    let one = field.one();
    Matrix::from_rows(
        field,
        vec![
            vec![one.clone(), z.clone(), z.clone(), f(1), z.clone(), z.clone()],
            vec![z.clone(), one.clone(), z.clone(), two(2), f(3), z.clone()],
            vec![z.clone(), z.clone(), one, two(3), two(4), f(5)],
            vec![z.clone(), z.clone(), z.clone(), two(4), two(5), c(2)],
            vec![z.clone(), z.clone(), z.clone(), two(5), c(2), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), c(2), z.clone(), z],
        ],
    )
}

pub fn theta(x: &ProjPoint, curve: &Genus2Curve) -> Result<ProjPoint> {
    check_len(x.coords(), 6)?;
    ProjPoint::new(theta_matrix(curve)?.apply(x.coords())?)
}

/// `v(t)` with `G(X, v(t)) = sum_j p_j(X) t^j`: the coefficient of `X_k` in
/// that sum sits at the `G`-partner slot of `k`.
pub fn v_vector(t: &FieldElement, curve: &Genus2Curve) -> Result<Vec<FieldElement>> {
    let th = theta_matrix(curve)?;
    let powers: Vec<FieldElement> = (0..6).map(|j| t.pow(j as u32)).collect();
    let coeff: Vec<FieldElement> = (0..6)
        .map(|k| {
            (0..6).fold(curve.field().zero(), |acc, j| &acc + &(th.get(j, k) * &powers[j]))
        })
        .collect();
    Ok((0..6).map(|k| coeff[(k + 3) % 6].clone()).collect())
}

/// Rows `v(theta_1)..v(theta_6)`.
pub fn v_table(curve: &Genus2Curve) -> Result<Vec<Vec<FieldElement>>> {
    curve.roots()?.iter().map(|t| v_vector(t, curve)).collect()
}

/// Matrix `V` with `zeta' = V X`.
pub fn zeta_matrix(curve: &Genus2Curve) -> Result<Matrix> {
    let rows = v_table(curve)?
        .into_iter()
        .map(|v| {
            let mut partner = v[3..].to_vec();
            partner.extend_from_slice(&v[..3]);
            partner
        })
        .collect();
    Matrix::from_rows(curve.field(), rows)
}

pub fn zeta_from_x(x: &[FieldElement], curve: &Genus2Curve) -> Result<ZetaCoords> {
    check_len(x, 6)?;
    Ok(ZetaCoords(
        v_table(curve)?.iter().map(|v| g_bilinear(x, v)).collect(),
    ))
}

pub fn x_from_zeta(z: &ZetaCoords, curve: &Genus2Curve) -> Result<ProjPoint> {
    check_len(&z.0, 6)?;
    ProjPoint::new(zeta_matrix(curve)?.inverse()?.apply(&z.0)?)
}

/// `sum_j theta_j^i zeta'_j^2 / omega_j` for `i = 0, 1, 2`.
pub fn sigma_quadrics(z: &ZetaCoords, curve: &Genus2Curve) -> Result<[FieldElement; 3]> {
    check_len(&z.0, 6)?;
    let rd = curve.root_data()?;
    let s = |i: u32| -> Result<FieldElement> {
        (0..6).try_fold(curve.field().zero(), |acc, j| {
            let term = (&rd.roots[j].pow(i) * &z.0[j].square()).checked_div(&rd.omega[j])?;
            Ok(&acc + &term)
        })
    };
    Ok([s(0)?, s(1)?, s(2)?])
}

pub fn sigma_membership(z: &ZetaCoords, curve: &Genus2Curve) -> Result<bool> {
    Ok(sigma_quadrics(z, curve)?.iter().all(FieldElement::is_zero))
}

/// `I_k`: flips the sign of the `k`-th diagonal coordinate.
pub fn polarity_ik(k: usize, z: &ZetaCoords, curve: &Genus2Curve) -> Result<ZetaCoords> {
    curve.roots()?;
    let k = crate::curve::index(k)?;
    check_len(&z.0, 6)?;
    let mut out = z.0.clone();
    out[k] = -&out[k];
    Ok(ZetaCoords(out))
}

/// `I_k` as a matrix on Plücker coordinates, `V^-1 D_k V`.
pub fn polarity_matrix(k: usize, curve: &Genus2Curve) -> Result<Matrix> {
    let field = curve.field();
    let k = crate::curve::index(k)?;
    let v = zeta_matrix(curve)?;
    let diag: Vec<FieldElement> = (0..6)
        .map(|j| if j == k { -field.one() } else { field.one() })
        .collect();
    v.inverse()?.try_mul(&Matrix::diagonal(field, &diag))?.try_mul(&v)
}
