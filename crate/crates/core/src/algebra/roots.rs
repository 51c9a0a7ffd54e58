//! Roots of a sextic that splits over the base field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::field::{Field, FieldElement};
use crate::algebra::poly::UniPoly;
use crate::error::{Error, Result};

/// Largest prime for which roots are found by scanning every residue.
pub const SCAN_LIMIT: u64 = 10_000;

/// The six distinct roots of a sextic, sorted ascending (by residue over GF(p)).
pub fn find_roots_split(f: &UniPoly) -> Result<Vec<FieldElement>> {
    let degree = f.degree().unwrap_or(0);
    if degree != 6 {
        return Err(Error::InvalidCurve(format!("expected a sextic, got degree {degree}")));
    }
    if f.gcd(&f.derivative()).degree() != Some(0) {
        return Err(Error::RepeatedRoot);
    }
    let roots = match f.field() {
        Field::Prime(p) if p > SCAN_LIMIT => return Err(Error::RootsUnavailable),
        Field::Prime(_) => f
            .field()
            .elements()
            .expect("prime field is finite")
            .filter(|x| f.eval(x).is_zero())
            .collect(),
        Field::Rationals => rational_roots(f),
    };
    if roots.len() != 6 {
        return Err(Error::NotSplit);
    }
    Ok(roots)
}

/// Distinct rational roots by the rational-root theorem, ascending.
fn rational_roots(f: &UniPoly) -> Vec<FieldElement> {
    let q = Field::Rationals;
    let rats: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational coefficient").clone())
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * &lcm).to_integer()).collect();

    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
    if low > 0 {
        roots.push(BigRational::zero());
    }
    let constant = ints[low].abs();
    let leading = ints.last().expect("nonzero polynomial").abs();
    let nums = divisors(&constant);
    let dens = divisors(&leading);
    for n in &nums {
        for d in &dens {
            if !n.gcd(d).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let r = BigRational::new(n * sign, d.clone());
                if f.eval(&FieldElement::Rational(r.clone())).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots.into_iter().map(|r| q.from_ratio(r.numer(), r.denom()).unwrap()).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(coeffs: &[FieldElement]) -> UniPoly {
        UniPoly::from_roots(Field::Rationals, coeffs)
    }

    #[test]
    fn fixture_roots_are_recovered_in_order() {
        let f = Field::Rationals;
        let roots: Vec<_> = [6, 3, 1, 5, 2, 4].iter().map(|&r| f.from_i64(r)).collect();
        let found = find_roots_split(&q(&roots)).unwrap();
        let want: Vec<_> = (1..=6).map(|r| f.from_i64(r)).collect();
        assert_eq!(found, want);
    }

    #[test]
    fn fractional_and_zero_roots() {
        let f = Field::Rationals;
        let half = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        let third = f.from_ratio(&BigInt::from(-2), &BigInt::from(3)).unwrap();
        let roots = vec![f.from_i64(0), half, third, f.from_i64(-7), f.from_i64(9), f.from_i64(12)];
        let poly = q(&roots).scale(&f.from_i64(6));
        assert_eq!(find_roots_split(&poly).unwrap().len(), 6);
    }

    #[test]
    fn non_split_and_repeated() {
        let f = Field::Rationals;
        let quartic = q(&(1..=4).map(|r| f.from_i64(r)).collect::<Vec<_>>());
        let non_split = &quartic * &UniPoly::from_i64(f, &[1, 0, 1]);
        assert_eq!(find_roots_split(&non_split), Err(Error::NotSplit));
        let rep: Vec<_> = [1, 1, 2, 3, 4, 5].iter().map(|&r| f.from_i64(r)).collect();
        assert_eq!(find_roots_split(&q(&rep)), Err(Error::RepeatedRoot));
    }

    #[test]
    fn prime_field_scan() {
        let gf = Field::prime(101).unwrap();
        let roots: Vec<_> = (1..=6).map(|r| gf.from_i64(r)).collect();
        assert_eq!(find_roots_split(&UniPoly::from_roots(gf, &roots)).unwrap(), roots);
        let big = Field::prime(10_007).unwrap();
        let roots: Vec<_> = (1..=6).map(|r| big.from_i64(r)).collect();
        assert_eq!(
            find_roots_split(&UniPoly::from_roots(big, &roots)),
            Err(Error::RootsUnavailable)
        );
    }
}
