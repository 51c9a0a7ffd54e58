//! The projective isomorphisms `W_i: K -> K*` given by addition of the
//! Weierstrass point `(theta_i, 0)`, and the map `kappa*` from the dual
//! surface to `S`, obtained by composition rather than closed forms.

use crate::algebra::{FieldElement, Matrix, ProjPoint};
use crate::curve::Genus2Curve;
use crate::error::{Error, Result};
use crate::kummer::tropes;
use crate::linecomplex::{kappa1, lines_in_plane_full, plane_through_point_full, theta, zeta_from_x};
use crate::surface::{epsilon, Kappa};

/// Antisymmetric matrix of `W_i`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WMatrix {
    pub index: usize,
    pub matrix: Matrix,
}

impl WMatrix {
    /// Dual coordinates of the plane `W_i(xi)`.
    pub fn apply(&self, xi: &ProjPoint) -> Result<ProjPoint> {
        ProjPoint::new(self.matrix.apply(xi.coords())?)
    }

    pub fn apply_inverse(&self, eta: &ProjPoint) -> Result<ProjPoint> {
        ProjPoint::new(self.matrix.inverse()?.apply(eta.coords())?)
    }
}

pub fn w_matrix(i: usize, curve: &Genus2Curve) -> Result<WMatrix> {
    curve.require_monic()?;
    let t = curve.root(i)?.clone();
    if t.is_zero() {
        return Err(Error::ZeroRoot(i));
    }
    let field = curve.field();
    let f = |k: usize| curve.f(k);
    let two = field.from_i64(2);
    let z = field.zero();
    let t2 = t.square();
    let a12 = &(-&f(1)) - &(&two * &f(0)).checked_div(&t)?;
    let a13 = &t * &(&(&(&f(3) + &(&two * &(&f(4) * &t))) + &(&two * &(&f(5) * &t2))) + &(&two * &(&t2 * &t)));
    let a23 = &t2 * &(&f(5) + &(&two * &t));
    let a14 = t2.clone();
    let a24 = -&t;
    let a34 = field.one();
    let matrix = Matrix::from_rows(
        field,
        vec![
            vec![z.clone(), a12.clone(), a13.clone(), a14.clone()],
            vec![-&a12, z.clone(), a23.clone(), a24.clone()],
            vec![-&a13, -&a23, z.clone(), a34.clone()],
            vec![-&a14, -&a24, -&a34, z],
        ],
    )?;
    Ok(WMatrix { index: i, matrix })
}

/// `kappa` at a point of `K`: the explicit forms, or `Theta(kappa1(xi))` on
/// their base locus.
pub fn kappa_at(xi: &ProjPoint, kappa: &Kappa) -> Result<ProjPoint> {
    match kappa.explicit(xi) {
        Err(Error::ZeroVector) => theta(kappa1(xi, kappa.curve())?.point(), kappa.curve()),
        other => other,
    }
}

/// `kappa*(eta) = epsilon^(i)(kappa(W_i^-1 eta))`.
pub fn kappa_star(eta: &ProjPoint, i: usize, kappa: &Kappa) -> Result<ProjPoint> {
    let curve = kappa.curve();
    let w = w_matrix(i, curve)?;
    if tropes(curve)?.iter().any(|(_, t)| t == eta) {
        return Err(Error::SingularTrope);
    }
    let xi = w.apply_inverse(eta)?;
    epsilon(i, &kappa_at(&xi, kappa)?, curve)
}

/// The point of `Delta_i` reached by `kappa*` along the arc through `T_i`
/// that `W_i` carries from the arc through `N_0` with parameter `x`.
pub fn trope_blowup(i: usize, x: &FieldElement, kappa: &Kappa) -> Result<ProjPoint> {
    w_matrix(i, kappa.curve())?;
    epsilon(i, &kappa.blowup_direction_at_node0(x)?, kappa.curve())
}

/// Lines through `xi` inside the plane `a`, as a basis of Plücker vectors.
pub fn pencil(xi: &ProjPoint, a: &ProjPoint) -> Result<Vec<Vec<FieldElement>>> {
    let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(8);
    let through = plane_through_point_full(xi)?;
    let inside = lines_in_plane_full(a)?;
    for r in 0..4 {
        rows.push(through.row(r));
        rows.push(inside.row(r));
    }
    Ok(Matrix::from_rows(xi.field(), rows)?.kernel())
}

/// `W_i(xi)` passes through `xi`, and the lines through `xi` inside it form
/// a pencil of the linear complex `zeta'_i = 0`.
pub fn polar_plane_check(xi: &ProjPoint, i: usize, curve: &Genus2Curve) -> Result<bool> {
    let w = w_matrix(i, curve)?;
    let plane = w.apply(xi)?;
    if !crate::kummer::incidence(&plane, xi).is_zero() {
        return Ok(false);
    }
    let lines = pencil(xi, &plane)?;
    if lines.len() != 2 {
        return Ok(false);
    }
    for l in &lines {
        if !zeta_from_x(l, curve)?.0[i - 1].is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
