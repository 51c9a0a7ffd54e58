//! Residues modulo the curve sextic, `k[X]/(F(X))`.

use std::sync::Arc;

use crate::algebra::poly::UniPoly;
use crate::error::{Error, Result};

/// A canonical residue (degree below `deg F`) together with its modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModFElement {
    residue: UniPoly,
    modulus: Arc<UniPoly>,
}

impl ModFElement {
    pub fn new(poly: &UniPoly, modulus: &Arc<UniPoly>) -> Result<Self> {
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(ModFElement {
            residue: poly.rem(modulus)?,
            modulus: Arc::clone(modulus),
        })
    }

    pub fn residue(&self) -> &UniPoly {
        &self.residue
    }

    pub fn modulus(&self) -> &Arc<UniPoly> {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    fn same_modulus(&self, other: &ModFElement) -> Result<()> {
        if Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    fn wrap(&self, poly: UniPoly) -> ModFElement {
        ModFElement {
            residue: poly.rem(&self.modulus).expect("modulus is nonzero"),
            modulus: Arc::clone(&self.modulus),
        }
    }

    pub fn add(&self, other: &ModFElement) -> Result<ModFElement> {
        self.same_modulus(other)?;
        Ok(self.wrap(&self.residue + &other.residue))
    }

    pub fn sub(&self, other: &ModFElement) -> Result<ModFElement> {
        self.same_modulus(other)?;
        Ok(self.wrap(&self.residue - &other.residue))
    }

    pub fn mul(&self, other: &ModFElement) -> Result<ModFElement> {
        self.same_modulus(other)?;
        Ok(self.wrap(&self.residue * &other.residue))
    }

    pub fn neg(&self) -> ModFElement {
        self.wrap(-&self.residue)
    }

    /// Inverse in the quotient ring; fails when the residue shares a factor
    /// with the modulus.
    pub fn inv(&self) -> Result<ModFElement> {
        let (g, s, _) = self.residue.ext_gcd(&self.modulus);
        if g.degree() != Some(0) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(s))
    }

    pub fn pow(&self, exp: u32) -> ModFElement {
        let one = self.wrap(UniPoly::one(self.residue.field()));
        (0..exp).fold(one, |acc, _| acc.mul(self).expect("same modulus"))
    }
}

/// Product of two residues, reduced to the canonical representative.
pub fn poly_mul_mod(a: &ModFElement, b: &ModFElement) -> Result<ModFElement> {
    a.mul(b)
}
