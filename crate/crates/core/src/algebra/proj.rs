//! Points of projective space over a field.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::algebra::field::{Field, FieldElement};
use crate::error::{Error, Result};

/// A nonzero vector up to scalar multiples. Equality and hashing are projective.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: Vec<FieldElement>,
}

impl ProjPoint {
    pub fn new(coords: Vec<FieldElement>) -> Result<Self> {
        if coords.iter().all(FieldElement::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_i64(field: Field, coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<FieldElement> {
        self.coords
    }

    pub fn get(&self, i: usize) -> &FieldElement {
        &self.coords[i]
    }

    /// Representative whose first nonzero coordinate is 1.
    pub fn normalized(&self) -> ProjPoint {
        let lead = self
            .coords
            .iter()
            .find(|c| !c.is_zero())
            .expect("projective point is nonzero")
            .inv()
            .expect("nonzero is invertible");
        ProjPoint {
            coords: self.coords.iter().map(|c| c * &lead).collect(),
        }
    }

    /// Projective equality via vanishing of all 2x2 minors.
    pub fn proj_eq(&self, other: &ProjPoint) -> Result<bool> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(proportional(&self.coords, &other.coords))
    }
}

/// True iff two vectors of equal length span the same line (both nonzero).
pub fn proportional(a: &[FieldElement], b: &[FieldElement]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(k) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[k].is_zero() {
        return false;
    }
    a.iter().zip(b).all(|(ai, bi)| ai * &b[k] == &a[k] * bi)
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && proportional(&self.coords, &other.coords)
    }
}

impl Eq for ProjPoint {}

impl Hash for ProjPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.normalized().coords.hash(state);
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(" : "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn projective_equality_ignores_scale() {
        let q = Field::Rationals;
        let a = ProjPoint::from_i64(q, &[0, 2, -4]).unwrap();
        let b = ProjPoint::from_i64(q, &[0, -1, 2]).unwrap();
        let c = ProjPoint::from_i64(q, &[1, -1, 2]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let set: HashSet<_> = [a, b, c].into_iter().collect();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn zero_and_mismatched_dimensions_are_rejected() {
        let q = Field::Rationals;
        assert_eq!(ProjPoint::from_i64(q, &[0, 0]).unwrap_err(), Error::ZeroVector);
        let a = ProjPoint::from_i64(q, &[1, 0]).unwrap();
        let b = ProjPoint::from_i64(q, &[1, 0, 0]).unwrap();
        assert!(matches!(a.proj_eq(&b), Err(Error::DimensionMismatch { .. })));
    }
}
