//! Genus-2 curves `Y^2 = F(X)` with a sextic `F`, and pairs of points on them.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{find_roots_split, Field, FieldElement, UniPoly};
use crate::error::{Error, Result};

/// Data that exists only when `F` splits: the roots, the Lagrange-type basis
/// `P_j = prod_{i != j}(X - theta_i)` and the weights `omega_j = P_j(theta_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootData {
    pub roots: Vec<FieldElement>,
    pub basis: Vec<UniPoly>,
    pub omega: Vec<FieldElement>,
}

impl RootData {
    fn new(field: Field, roots: Vec<FieldElement>) -> Self {
        let basis: Vec<UniPoly> = (0..6)
            .map(|j| {
                let others: Vec<FieldElement> = (0..6)
                    .filter(|&i| i != j)
                    .map(|i| roots[i].clone())
                    .collect();
                UniPoly::from_roots(field, &others)
            })
            .collect();
        let omega = (0..6).map(|j| basis[j].eval(&roots[j])).collect();
        RootData { roots, basis, omega }
    }
}

#[derive(Clone, Debug)]
pub struct Genus2Curve {
    field: Field,
    sextic: Arc<UniPoly>,
    roots: Option<RootData>,
    label: Option<String>,
}

impl PartialEq for Genus2Curve {
    fn eq(&self, other: &Self) -> bool {
        self.sextic == other.sextic && self.roots == other.roots
    }
}

impl Eq for Genus2Curve {}

/// `F_0(x, u)` for the coefficient list `f_0..f_6`; no validity requirement
/// on the sextic.
pub fn f0_sym(f: &[FieldElement], x: &FieldElement, u: &FieldElement) -> FieldElement {
    let s = x + u;
    let p = x * u;
    let two = x.field().from_i64(2);
    let terms = [
        &two * &f[0],
        &f[1] * &s,
        &(&two * &f[2]) * &p,
        &(&f[3] * &p) * &s,
        &(&two * &f[4]) * &p.square(),
        &(&f[5] * &p.square()) * &s,
        &(&two * &f[6]) * &p.pow(3),
    ];
    terms.iter().fold(x.field().zero(), |acc, t| &acc + t)
}

/// Converts a public 1-based root index to a 0-based one.
pub fn index(i: usize) -> Result<usize> {
    if (1..=6).contains(&i) {
        Ok(i - 1)
    } else {
        Err(Error::IndexOutOfRange(i))
    }
}

impl Genus2Curve {
    /// Curve from `f_0..f_6`. Roots are looked up when the field permits.
    pub fn from_coeffs(field: Field, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() != 7 {
            return Err(Error::DimensionMismatch {
                expected: 7,
                got: coeffs.len(),
            });
        }
        if coeffs[6].is_zero() {
            return Err(Error::InvalidCurve("f6 must be nonzero".into()));
        }
        let sextic = UniPoly::new(field, coeffs);
        let roots = match find_roots_split(&sextic) {
            Ok(r) => Some(RootData::new(field, r)),
            Err(Error::RepeatedRoot) => return Err(Error::RepeatedRoot),
            Err(_) => None,
        };
        Ok(Genus2Curve {
            field,
            sextic: Arc::new(sextic),
            roots,
            label: None,
        })
    }

    pub fn from_i64_coeffs(field: Field, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// `F = leading * prod (X - theta_i)`, keeping the given root order.
    pub fn from_roots(field: Field, roots: Vec<FieldElement>, leading: FieldElement) -> Result<Self> {
        if roots.len() != 6 {
            return Err(Error::DimensionMismatch {
                expected: 6,
                got: roots.len(),
            });
        }
        if leading.is_zero() {
            return Err(Error::InvalidCurve("f6 must be nonzero".into()));
        }
        for i in 0..6 {
            for j in 0..i {
                if roots[i] == roots[j] {
                    return Err(Error::RepeatedRoot);
                }
            }
        }
        let sextic = UniPoly::from_roots(field, &roots).scale(&leading);
        Ok(Genus2Curve {
            field,
            sextic: Arc::new(sextic),
            roots: Some(RootData::new(field, roots)),
            label: None,
        })
    }

    pub fn from_i64_roots(field: Field, roots: &[i64]) -> Result<Self> {
        Self::from_roots(
            field,
            roots.iter().map(|&r| field.from_i64(r)).collect(),
            field.one(),
        )
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn sextic(&self) -> &Arc<UniPoly> {
        &self.sextic
    }

    /// The coefficient `f_k`.
    pub fn f(&self, k: usize) -> FieldElement {
        self.sextic.coeff(k)
    }

    pub fn coeffs(&self) -> Vec<FieldElement> {
        self.sextic.padded(7)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.sextic.eval(x)
    }

    pub fn has_roots(&self) -> bool {
        self.roots.is_some()
    }

    pub fn root_data(&self) -> Result<&RootData> {
        self.roots.as_ref().ok_or(Error::RootsUnavailable)
    }

    pub fn roots(&self) -> Result<&[FieldElement]> {
        Ok(&self.root_data()?.roots)
    }

    /// `theta_i` for a 1-based index.
    pub fn root(&self, i: usize) -> Result<&FieldElement> {
        Ok(&self.roots()?[index(i)?])
    }

    /// `omega_j = P_j(theta_j)`, 1-based.
    pub fn omega(&self, j: usize) -> Result<&FieldElement> {
        Ok(&self.root_data()?.omega[index(j)?])
    }

    /// `P_j(X)`, 1-based.
    pub fn basis_poly(&self, j: usize) -> Result<&UniPoly> {
        Ok(&self.root_data()?.basis[index(j)?])
    }

    pub fn contains(&self, x: &FieldElement, y: &FieldElement) -> bool {
        y.square() == self.eval(x)
    }

    /// The symmetric biform `F_0(x, u)`.
    pub fn f0_sym(&self, x: &FieldElement, u: &FieldElement) -> FieldElement {
        f0_sym(&self.coeffs(), x, u)
    }

    /// The curve with `X` replaced by `X - t`; roots move to `theta_i + t`.
    pub fn translate(&self, t: &FieldElement) -> Genus2Curve {
        let shift = UniPoly::new(self.field, vec![-t, self.field.one()]);
        let sextic = self.sextic.compose(&shift);
        let roots = self
            .roots
            .as_ref()
            .map(|rd| RootData::new(self.field, rd.roots.iter().map(|r| r + t).collect()));
        Genus2Curve {
            field: self.field,
            sextic: Arc::new(sextic),
            roots,
            label: self.label.clone(),
        }
    }

    /// Translation making `theta_3 theta_4 = theta_5 theta_6` in the current
    /// root order, unless the sums `theta_3 + theta_4` and `theta_5 + theta_6`
    /// already agree.
    pub fn normalize_roots(&self) -> Result<RootNormalization> {
        let r = self.roots()?;
        let sum34 = &r[2] + &r[3];
        let sum56 = &r[4] + &r[5];
        let prod34 = &r[2] * &r[3];
        let prod56 = &r[4] * &r[5];
        if sum34 == sum56 {
            if prod34 == prod56 {
                return Err(Error::DegenerateConfiguration(
                    "theta_3 + theta_4 = theta_5 + theta_6 and theta_3 theta_4 = theta_5 theta_6".into(),
                ));
            }
            return Ok(RootNormalization::SumsEqual);
        }
        let t = (&prod56 - &prod34).checked_div(&(&sum34 - &sum56))?;
        Ok(RootNormalization::Translated {
            curve: self.translate(&t),
            t,
        })
    }

    /// Replaces `Y` by `cY` when `f_6 = c^2`, making the sextic monic.
    pub fn make_monic(&self) -> Result<Genus2Curve> {
        let f6 = self.f(6);
        if f6.is_one() {
            return Ok(self.clone());
        }
        let c = f6.sqrt().ok_or_else(|| Error::NotMonic(f6.to_string()))?;
        let scale = c.square().inv()?;
        Ok(Genus2Curve {
            field: self.field,
            sextic: Arc::new(self.sextic.scale(&scale)),
            roots: self.roots.clone(),
            label: self.label.clone(),
        })
    }

    /// Fails with `NotMonic` unless `f_6 = 1`.
    pub fn require_monic(&self) -> Result<()> {
        let f6 = self.f(6);
        if f6.is_one() {
            Ok(())
        } else {
            Err(Error::NotMonic(f6.to_string()))
        }
    }

    /// Same curve with the roots listed in a different order.
    pub fn with_root_order(&self, perm: &[usize]) -> Result<Genus2Curve> {
        let r = self.roots()?;
        let mut seen = [false; 6];
        let mut reordered = Vec::with_capacity(6);
        for &p in perm {
            let k = index(p)?;
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::RepeatedIndex);
            }
            reordered.push(r[k].clone());
        }
        if reordered.len() != 6 {
            return Err(Error::DimensionMismatch {
                expected: 6,
                got: reordered.len(),
            });
        }
        Ok(Genus2Curve {
            field: self.field,
            sextic: self.sextic.clone(),
            roots: Some(RootData::new(self.field, reordered)),
            label: self.label.clone(),
        })
    }
}

impl fmt::Display for Genus2Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y^2 = {} over {}", self.sextic, self.field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootNormalization {
    SumsEqual,
    Translated { curve: Genus2Curve, t: FieldElement },
}

/// Two affine points `(x, y sqrt(d))` and `(u, v sqrt(d))` of the curve, with
/// `d y^2 = F(x)` and `d v^2 = F(u)`.
///
/// The common factor `sqrt(d)` lets exact rational arithmetic reach divisors
/// whose points are only defined over a quadratic field, while every quantity
/// the library derives from the pair stays rational: `yv` enters as `d y v`,
/// and the interpolating polynomials are homogeneous in `(y, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorPair {
    pub x: FieldElement,
    pub y: FieldElement,
    pub u: FieldElement,
    pub v: FieldElement,
    pub twist: FieldElement,
}

impl DivisorPair {
    pub fn new(
        curve: &Genus2Curve,
        x: FieldElement,
        y: FieldElement,
        u: FieldElement,
        v: FieldElement,
    ) -> Result<Self> {
        let one = curve.field().one();
        Self::twisted(curve, x, y, u, v, one)
    }

    pub fn twisted(
        curve: &Genus2Curve,
        x: FieldElement,
        y: FieldElement,
        u: FieldElement,
        v: FieldElement,
        twist: FieldElement,
    ) -> Result<Self> {
        if twist.is_zero() {
            return Err(Error::DegenerateDivisor("twist factor is zero"));
        }
        for (a, b) in [(&x, &y), (&u, &v)] {
            if &twist * &b.square() != curve.eval(a) {
                return Err(Error::NotOnCurve {
                    x: a.to_string(),
                    y: b.to_string(),
                });
            }
        }
        Ok(DivisorPair { x, y, u, v, twist })
    }

    /// The product of the true ordinates, `d y v`.
    pub fn yv(&self) -> FieldElement {
        &(&self.twist * &self.y) * &self.v
    }

    pub fn swapped(&self) -> DivisorPair {
        DivisorPair {
            x: self.u.clone(),
            y: self.v.clone(),
            u: self.x.clone(),
            v: self.y.clone(),
            twist: self.twist.clone(),
        }
    }

    /// `{(x, -y), (u, -v)}`.
    pub fn conjugate(&self) -> DivisorPair {
        DivisorPair {
            y: -&self.y,
            v: -&self.v,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> Genus2Curve {
        Genus2Curve::from_i64_roots(Field::Rationals, &[1, 2, 3, 4, 5, 6]).unwrap()
    }

    #[test]
    fn f0_sym_trivial_values() {
        let q = Field::Rationals;
        let c = fixture();
        assert_eq!(c.f0_sym(&q.zero(), &q.zero()), &q.from_i64(2) * &c.f(0));
        let only_f6: Vec<_> = [0, 0, 0, 0, 0, 0, 1].iter().map(|&c| q.from_i64(c)).collect();
        assert_eq!(f0_sym(&only_f6, &q.one(), &q.one()), q.from_i64(2));
        let g = Genus2Curve::from_i64_coeffs(q, &[-1, 0, 0, 0, 0, 0, 1]).unwrap();
        // f0 = -1 contributes 2 f0 = -2 on top of 2 f6 (xu)^3 = 2
        assert_eq!(g.f0_sym(&q.one(), &q.one()), q.zero());
    }

    #[test]
    fn f0_sym_fixture_value() {
        // F = prod (X - i): f = (720, -1764, 1624, -735, 175, -21, 1);
        // F0(0, 7) = 2 f0 + 7 f1 = 1440 - 12348
        let q = Field::Rationals;
        let c = fixture();
        assert_eq!(c.f0_sym(&q.zero(), &q.from_i64(7)), q.from_i64(-10908));
    }

    #[test]
    fn roots_and_weights() {
        let c = fixture();
        let q = Field::Rationals;
        assert_eq!(c.root(1).unwrap(), &q.one());
        // omega_1 = prod_{i=2..6} (1 - i) = (-1)(-2)(-3)(-4)(-5)
        assert_eq!(c.omega(1).unwrap(), &q.from_i64(-120));
        assert_eq!(c.root(7), Err(Error::IndexOutOfRange(7)));
        let coeffs = Genus2Curve::from_coeffs(q, c.coeffs()).unwrap();
        assert_eq!(coeffs.roots().unwrap(), c.roots().unwrap());
    }

    #[test]
    fn translation_and_normalization() {
        let q = Field::Rationals;
        let c = fixture();
        assert_eq!(c.translate(&q.zero()), c);
        // relabel as (1, 6, 3, 4, 2, 5): theta_3 + theta_4 = 7 = theta_5 + theta_6
        let relabeled = c.with_root_order(&[1, 6, 3, 4, 2, 5]).unwrap();
        assert_eq!(relabeled.normalize_roots().unwrap(), RootNormalization::SumsEqual);
        assert!(matches!(
            c.normalize_roots().unwrap(),
            RootNormalization::Translated { .. }
        ));
        let d = Genus2Curve::from_i64_roots(q, &[0, 1, 2, 3, 4, 7]).unwrap();
        let RootNormalization::Translated { curve, t } = d.normalize_roots().unwrap() else {
            panic!("expected a translation");
        };
        // t = (4*7 - 2*3) / ((2+3) - (4+7)) = 22 / -6
        assert_eq!(t, q.from_ratio(&(-11).into(), &3.into()).unwrap());
        let r = curve.roots().unwrap();
        assert_eq!(&r[2] * &r[3], &r[4] * &r[5]);
        for root in r {
            assert!(curve.eval(root).is_zero());
        }
    }

    #[test]
    fn monic_rescaling() {
        let q = Field::Rationals;
        let roots: Vec<_> = (1..=6).map(|r| q.from_i64(r)).collect();
        let c = Genus2Curve::from_roots(q, roots.clone(), q.from_i64(4)).unwrap();
        assert!(c.require_monic().is_err());
        assert_eq!(c.make_monic().unwrap(), fixture());
        let c3 = Genus2Curve::from_roots(q, roots, q.from_i64(3)).unwrap();
        assert!(matches!(c3.make_monic(), Err(Error::NotMonic(_))));
    }

    #[test]
    fn divisor_validation() {
        let q = Field::Rationals;
        let c = fixture();
        let ok = DivisorPair::new(&c, q.from_i64(1), q.zero(), q.from_i64(2), q.zero());
        assert!(ok.is_ok());
        let bad = DivisorPair::new(&c, q.from_i64(0), q.one(), q.from_i64(2), q.zero());
        assert!(matches!(bad, Err(Error::NotOnCurve { .. })));
        // F(0) = 720 = 5 * 12^2
        let tw = DivisorPair::twisted(
            &c,
            q.zero(),
            q.from_i64(12),
            q.from_i64(7),
            q.from_i64(-12),
            q.from_i64(5),
        )
        .unwrap();
        assert_eq!(tw.yv(), q.from_i64(-720));
    }
}
