//! The 32 lines on `S`: images of `Delta_0 = {p_0 + p_1 X}` under the
//! involution group, their intersection pattern and the 96 meeting points.

use std::fmt;

use crate::algebra::{FieldElement, Matrix, ProjPoint, UniPoly};
use crate::curve::Genus2Curve;
use crate::error::{Error, Result};
use crate::surface::{from_poly, inv_group, Involution};

/// A projective line given by two spanning points.
#[derive(Clone, Debug)]
pub struct LineOnS {
    pub label: Involution,
    pub generators: [ProjPoint; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineMeet {
    Empty,
    Point(ProjPoint),
    Same,
}

impl LineOnS {
    /// `Delta_T`, labelled by its canonical index set.
    pub fn delta(t: &[usize], curve: &Genus2Curve) -> Result<LineOnS> {
        curve.root_data()?;
        let label = Involution::from_indices(t)?.canonical();
        let f = curve.field();
        let mut e0 = vec![f.zero(); 6];
        e0[0] = f.one();
        let mut e1 = vec![f.zero(); 6];
        e1[1] = f.one();
        let generators = [
            label.apply(&ProjPoint::new(e0)?, curve)?,
            label.apply(&ProjPoint::new(e1)?, curve)?,
        ];
        Ok(LineOnS { label, generators })
    }

    pub fn image(&self, m: &Matrix, label: Involution) -> Result<LineOnS> {
        let g = |p: &ProjPoint| ProjPoint::new(m.apply(p.coords())?);
        Ok(LineOnS {
            label,
            generators: [g(&self.generators[0])?, g(&self.generators[1])?],
        })
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        let rows = vec![
            self.generators[0].coords().to_vec(),
            self.generators[1].coords().to_vec(),
            p.coords().to_vec(),
        ];
        Matrix::from_rows(p.field(), rows).map(|m| m.rank() == 2).unwrap_or(false)
    }

    pub fn same_as(&self, other: &LineOnS) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Solves `a g_0 + b g_1 = c h_0 + d h_1`.
    pub fn meet(&self, other: &LineOnS) -> LineMeet {
        let field = self.generators[0].field();
        let cols = [
            self.generators[0].coords().to_vec(),
            self.generators[1].coords().to_vec(),
            other.generators[0].coords().iter().map(|c| -c).collect(),
            other.generators[1].coords().iter().map(|c| -c).collect(),
        ];
        let m = Matrix::from_columns(field, &cols).expect("equal lengths");
        let ker = m.kernel();
        match ker.len() {
            0 => LineMeet::Empty,
            1 => {
                let k = &ker[0];
                let point: Vec<FieldElement> = (0..6)
                    .map(|r| {
                        &(&k[0] * self.generators[0].get(r)) + &(&k[1] * self.generators[1].get(r))
                    })
                    .collect();
                LineMeet::Point(ProjPoint::new(point).expect("independent generators"))
            }
            _ => LineMeet::Same,
        }
    }
}

impl fmt::Display for LineOnS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.label.indices();
        let name: String = idx.iter().map(ToString::to_string).collect();
        write!(f, "D{}", if name.is_empty() { "0".into() } else { name })
    }
}

pub fn line_delta(t: &[usize], curve: &Genus2Curve) -> Result<LineOnS> {
    if t.len() > 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: t.len(),
        });
    }
    LineOnS::delta(t, curve)
}

/// The orbit of `Delta_0` under the involution group, deduplicated as lines.
pub fn line_orbit(curve: &Genus2Curve) -> Result<Vec<LineOnS>> {
    let base = LineOnS::delta(&[], curve)?;
    let mut out: Vec<LineOnS> = Vec::new();
    for (inv, m) in inv_group(curve)? {
        let line = base.image(&m, inv.canonical())?;
        if !out.iter().any(|l| l.same_as(&line)) {
            out.push(line);
        }
    }
    Ok(out)
}

/// Pairwise intersections of the lines in the orbit of `Delta_0`.
#[derive(Clone, Debug)]
pub struct LineIncidence {
    pub lines: Vec<LineOnS>,
    /// `meets[a][b]` for `a != b`.
    pub meets: Vec<Vec<LineMeet>>,
}

impl LineIncidence {
    pub fn neighbours(&self, a: usize) -> Vec<usize> {
        (0..self.lines.len())
            .filter(|&b| b != a && matches!(self.meets[a][b], LineMeet::Point(_)))
            .collect()
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        let mut out: Vec<ProjPoint> = Vec::new();
        for a in 0..self.lines.len() {
            for b in a + 1..self.lines.len() {
                if let LineMeet::Point(p) = &self.meets[a][b] {
                    if !out.contains(p) {
                        out.push(p.clone());
                    }
                }
            }
        }
        out
    }
}

pub fn line_incidence(curve: &Genus2Curve) -> Result<LineIncidence> {
    let lines = line_orbit(curve)?;
    let meets = lines
        .iter()
        .enumerate()
        .map(|(a, la)| {
            lines
                .iter()
                .enumerate()
                .map(|(b, lb)| if a == b { LineMeet::Same } else { la.meet(lb) })
                .collect()
        })
        .collect();
    Ok(LineIncidence { lines, meets })
}

/// `P = 2(x - theta_i) P_i(X) + P_i(theta_i)(X - x)`, a point of `Delta_i`.
pub fn delta_i_param(i: usize, x: &FieldElement, curve: &Genus2Curve) -> Result<ProjPoint> {
    let theta = curve.root(i)?;
    let basis = curve.basis_poly(i)?;
    let w = curve.omega(i)?;
    let two = curve.field().from_i64(2);
    let poly = &basis.scale(&(&two * &(x - theta))) + &UniPoly::linear_root(x).scale(w);
    from_poly(&poly, curve)
}

/// `p_i = (-theta_i : 1 : 0 : 0 : 0 : 0)`, where `Delta_0` meets `Delta_i`.
pub fn base_point(i: usize, curve: &Genus2Curve) -> Result<ProjPoint> {
    let t = curve.root(i)?;
    let f = curve.field();
    ProjPoint::new(vec![-t, f.one(), f.zero(), f.zero(), f.zero(), f.zero()])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointLabel {
    /// `p_i`
    Base(usize),
    /// `p_ij = epsilon^(i)(p_j)`, ordered
    Pair(usize, usize),
    /// `p_ijk = epsilon^(i) epsilon^(j)(p_k)`, `i < j`
    Triple(usize, usize, usize),
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLabel::Base(i) => write!(f, "p{i}"),
            PointLabel::Pair(i, j) => write!(f, "p{i}{j}"),
            PointLabel::Triple(i, j, k) => write!(f, "p{i}{j}{k}"),
        }
    }
}

impl PointLabel {
    /// The two lines through the point, as index sets.
    pub fn lines(&self) -> (Vec<usize>, Vec<usize>) {
        match *self {
            PointLabel::Base(i) => (vec![], vec![i]),
            PointLabel::Pair(i, j) => (vec![i], vec![i, j]),
            PointLabel::Triple(i, j, k) => (vec![i, j], vec![i, j, k]),
        }
    }
}

/// The 6 + 30 + 60 points obtained from the `p_j` by the involutions.
pub fn incidence_points(curve: &Genus2Curve) -> Result<Vec<(PointLabel, ProjPoint)>> {
    let mut out = Vec::with_capacity(96);
    for i in 1..=6 {
        out.push((PointLabel::Base(i), base_point(i, curve)?));
    }
    for i in 1..=6 {
        for j in (1..=6).filter(|&j| j != i) {
            let p = Involution::from_indices(&[i])?.apply(&base_point(j, curve)?, curve)?;
            out.push((PointLabel::Pair(i, j), p));
        }
    }
    for i in 1..=6 {
        for j in i + 1..=6 {
            for k in (1..=6).filter(|&k| k != i && k != j) {
                let p = Involution::from_indices(&[i, j])?.apply(&base_point(k, curve)?, curve)?;
                out.push((PointLabel::Triple(i, j, k), p));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::surface::s_membership;

    fn curves() -> Vec<Genus2Curve> {
        vec![
            Genus2Curve::from_i64_roots(Field::prime(101).unwrap(), &[1, 2, 3, 4, 5, 6]).unwrap(),
            Genus2Curve::from_i64_roots(Field::Rationals, &[-3, -2, -1, 1, 2, 3]).unwrap(),
        ]
    }

    #[test]
    fn base_line_meets() {
        for c in curves() {
            let d0 = line_delta(&[], &c).unwrap();
            for i in 1..=6 {
                let di = line_delta(&[i], &c).unwrap();
                assert_eq!(d0.meet(&di), LineMeet::Point(base_point(i, &c).unwrap()));
                for j in (1..=6).filter(|&j| j != i) {
                    assert_eq!(d0.meet(&line_delta(&[i, j], &c).unwrap()), LineMeet::Empty);
                    for k in (1..=6).filter(|&k| k != i && k != j) {
                        assert_eq!(d0.meet(&line_delta(&[i, j, k], &c).unwrap()), LineMeet::Empty);
                    }
                }
            }
        }
    }

    #[test]
    fn census() {
        for c in curves() {
            let inc = line_incidence(&c).unwrap();
            assert_eq!(inc.lines.len(), 32);
            for a in 0..32 {
                assert_eq!(inc.neighbours(a).len(), 6, "{}", inc.lines[a]);
                for b in inc.neighbours(a) {
                    // Delta_A meets Delta_B iff A and B differ in one index
                    let diff = inc.lines[a].label.compose(&inc.lines[b].label).canonical();
                    assert_eq!(diff.0.count_ones(), 1);
                }
            }
            assert_eq!(inc.points().len(), 96);
            for l in &inc.lines {
                assert!(l.generators.iter().all(|g| s_membership(g, &c)));
            }
        }
    }

    #[test]
    fn incidence_points_match_intersections() {
        for c in curves() {
            let pts = incidence_points(&c).unwrap();
            assert_eq!(pts.len(), 96);
            for (a, (_, p)) in pts.iter().enumerate() {
                assert!(pts[..a].iter().all(|(_, q)| q != p));
            }
            for (label, p) in &pts {
                let (s, t) = label.lines();
                let meet = line_delta(&s, &c).unwrap().meet(&line_delta(&t, &c).unwrap());
                assert_eq!(meet, LineMeet::Point(p.clone()), "{label}");
            }
        }
    }

    #[test]
    fn parametrization_of_delta_i() {
        for c in curves() {
            let f = c.field();
            for i in 1..=6 {
                let di = line_delta(&[i], &c).unwrap();
                for x in [-5, 0, 11, 17] {
                    let x = f.from_i64(x);
                    let p = delta_i_param(i, &x, &c).unwrap();
                    assert!(s_membership(&p, &c));
                    assert!(di.contains(&p));
                    // P = P_i(theta_i) g_i (X - x) mod F
                    let g = crate::surface::involution_multiplier(i, &c).unwrap();
                    let rhs = (&g * &UniPoly::linear_root(&x))
                        .scale(c.omega(i).unwrap())
                        .rem(c.sextic())
                        .unwrap();
                    assert_eq!(p.coords(), rhs.padded(6).as_slice());
                }
                let at_root = delta_i_param(i, c.root(i).unwrap(), &c).unwrap();
                assert_eq!(at_root, base_point(i, &c).unwrap());
            }
        }
    }
}
