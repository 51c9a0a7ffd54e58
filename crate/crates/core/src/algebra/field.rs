//! Exact scalars: the rationals and prime fields GF(p) with p > 5.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// The base field. Characteristic 2 (and the tiny fields GF(3), GF(5), which
/// cannot hold six distinct roots) are excluded at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// GF(p). `p` must be an odd prime greater than 5 and below 2^32 so that
    /// products of residues fit in a `u64`.
    pub fn prime(p: u64) -> Result<Field> {
        if p <= 5 {
            return Err(Error::InvalidField(format!(
                "GF({p}): the characteristic must be an odd prime > 5"
            )));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!("GF({p}): modulus too large")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("GF({p}): {p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match *self {
            Field::Rationals => FieldElement::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => FieldElement::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match *self {
            Field::Rationals => FieldElement::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => FieldElement::Residue {
                value: n.mod_floor(&BigInt::from(p)).to_u64().unwrap(),
                modulus: p,
            },
        }
    }

    /// `num / den`; fails when `den` vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement> {
        let d = self.from_bigint(den);
        self.from_bigint(num).checked_div(&d)
    }

    /// Parses `n`, `-n` or `n/d` (decimal integers).
    pub fn parse_element(&self, text: &str) -> std::result::Result<FieldElement, String> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| format!("`{text}` is not an integer or a fraction num/den"))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| format!("`{text}` is not an integer or a fraction num/den"))?;
        self.from_ratio(&num, &den)
            .map_err(|_| format!("`{text}` has a denominator that vanishes in {self}"))
    }

    /// Uniform residue over GF(p); over the rationals a random fraction of
    /// small height (numerator in [-h, h], denominator in [1, h]).
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> FieldElement {
        match *self {
            Field::Prime(p) => FieldElement::Residue {
                value: rng.gen_range(0..p),
                modulus: p,
            },
            Field::Rationals => {
                let h = height.max(1);
                let n = rng.gen_range(-h..=h);
                let d = rng.gen_range(1..=h);
                FieldElement::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
        }
    }

    /// All elements, for finite fields only.
    pub fn elements(&self) -> Option<impl Iterator<Item = FieldElement>> {
        match *self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..p).map(move |value| FieldElement::Residue { value, modulus: p })),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// An exact scalar. Arithmetic between elements of different fields is a
/// programming error and panics; division is only available through
/// [`FieldElement::checked_div`] and [`FieldElement::inv`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rationals,
            FieldElement::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut exp: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn square(&self) -> FieldElement {
        self * self
    }

    /// Square root in the base field, if one exists.
    pub fn sqrt(&self) -> Option<FieldElement> {
        match self {
            FieldElement::Rational(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
                    Some(FieldElement::Rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            FieldElement::Residue { value, modulus } => {
                tonelli_shanks(*value, *modulus).map(|r| FieldElement::Residue {
                    value: r,
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn is_square(&self) -> bool {
        match self {
            FieldElement::Residue { value, modulus } => {
                *value == 0 || pow_mod(*value, (modulus - 1) / 2, *modulus) == 1
            }
            FieldElement::Rational(_) => self.sqrt().is_some(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Residue { .. } => None,
        }
    }

    /// Canonical residue in `0..p`, for prime fields.
    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElement::Residue { value, .. } => Some(*value),
            FieldElement::Rational(_) => None,
        }
    }

    fn check_same(&self, other: &FieldElement) {
        if self.field() != other.field() {
            panic!(
                "field mismatch: {} vs {}",
                self.field(),
                other.field()
            );
        }
    }
}

fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r)
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $res:expr) => {
        impl<'a> $trait<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.check_same(rhs);
                match (self, rhs) {
                    (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                        FieldElement::Rational($rat(a, b))
                    }
                    (
                        FieldElement::Residue { value: a, modulus },
                        FieldElement::Residue { value: b, .. },
                    ) => FieldElement::Residue {
                        value: $res(*a, *b, *modulus),
                        modulus: *modulus,
                    },
                    _ => unreachable!(),
                }
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

binop!(
    Add,
    add,
    |a: &BigRational, b: &BigRational| a + b,
    |a: u64, b: u64, p: u64| (a + b) % p
);
binop!(
    Sub,
    sub,
    |a: &BigRational, b: &BigRational| a - b,
    |a: u64, b: u64, p: u64| (a + p - b) % p
);
binop!(
    Mul,
    mul,
    |a: &BigRational, b: &BigRational| a * b,
    |a: u64, b: u64, p: u64| a * b % p
);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(-q),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_composite_moduli() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(5).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(91).is_err());
        assert_eq!(Field::prime(7).unwrap(), Field::Prime(7));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        for field in [Field::Rationals, Field::Prime(101)] {
            assert_eq!(field.zero().inv(), Err(Error::DivisionByZero));
            assert_eq!(field.one().checked_div(&field.zero()), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        let q = Field::Rationals;
        let a = q.parse_element("-6/4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!(q.parse_element(&a.to_string()).unwrap(), a);
        let p = Field::Prime(101);
        assert_eq!(p.parse_element("1/2").unwrap().to_string(), "51");
        assert!(p.parse_element("1/101").is_err());
        assert!(q.parse_element("x").is_err());
    }

    #[test]
    fn square_roots() {
        let p = Field::Prime(101);
        for a in p.elements().unwrap() {
            let sq = a.square();
            let r = sq.sqrt().unwrap();
            assert_eq!(r.square(), sq);
        }
        // 101 = 1 mod 4 exercises the full Tonelli-Shanks loop
        let nonres = p.elements().unwrap().filter(|a| !a.is_square()).count();
        assert_eq!(nonres, 50);
        let q = Field::Rationals;
        assert_eq!(q.parse_element("9/4").unwrap().sqrt(), Some(q.parse_element("3/2").unwrap()));
        assert_eq!(q.from_i64(2).sqrt(), None);
        assert_eq!(q.from_i64(-4).sqrt(), None);
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = Field::Rationals.one() + Field::Prime(7).one();
    }
}
