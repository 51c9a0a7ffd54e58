//! Random divisor pairs for property checks.
//!
//! Over GF(p) both points are drawn directly. Over the rationals a genus-2
//! curve has finitely many points, so the sampler draws pairs of points that
//! are conjugate-free over a common quadratic field `Q(sqrt d)`: abscissae
//! `x, u` whose values `F(x), F(u)` share a squarefree kernel `d`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::algebra::{Field, FieldElement};
use crate::curve::{DivisorPair, Genus2Curve};
use crate::error::{Error, Result};

/// Pairs requested before the rational window stops growing.
const TARGET_PAIRS: usize = 600;
const TRIAL_LIMIT: u64 = 20_000;

#[derive(Clone, Debug)]
pub struct DivisorSampler {
    curve: Genus2Curve,
    /// Rational pairs `(x, y, u, v, d)` with `d y^2 = F(x)`, `d v^2 = F(u)`.
    pool: Vec<(FieldElement, FieldElement, FieldElement, FieldElement, FieldElement)>,
}

impl DivisorSampler {
    pub fn new(curve: &Genus2Curve) -> Result<Self> {
        let pool = match curve.field() {
            Field::Prime(_) => Vec::new(),
            Field::Rationals => {
                let pool = rational_pool(curve);
                if pool.is_empty() {
                    return Err(Error::InternalInconsistency(
                        "no rational divisor pairs found in the search window".into(),
                    ));
                }
                pool
            }
        };
        Ok(DivisorSampler {
            curve: curve.clone(),
            pool,
        })
    }

    pub fn curve(&self) -> &Genus2Curve {
        &self.curve
    }

    /// Number of distinct unordered abscissa pairs available over the rationals.
    pub fn pool_size(&self) -> usize {
        self.pool.len()
    }

    /// A pair with `x != u` and `yv != 0`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> DivisorPair {
        let field = self.curve.field();
        let sign = |rng: &mut R, a: FieldElement| if rng.gen_bool(0.5) { -a } else { a };
        match field {
            Field::Prime(_) => loop {
                let x = field.random_element(rng, 0);
                let u = field.random_element(rng, 0);
                if x == u {
                    continue;
                }
                let (fx, fu) = (self.curve.eval(&x), self.curve.eval(&u));
                if fx.is_zero() || fu.is_zero() {
                    continue;
                }
                if let (Some(y), Some(v)) = (fx.sqrt(), fu.sqrt()) {
                    let y = sign(rng, y);
                    let v = sign(rng, v);
                    return DivisorPair::new(&self.curve, x, y, u, v).expect("sampled on curve");
                }
            },
            Field::Rationals => {
                let (x, y, u, v, d) = self.pool[rng.gen_range(0..self.pool.len())].clone();
                let y = sign(rng, y);
                let v = sign(rng, v);
                let pair = DivisorPair::twisted(&self.curve, x, y, u, v, d).expect("pooled on curve");
                if rng.gen_bool(0.5) {
                    pair.swapped()
                } else {
                    pair
                }
            }
        }
    }
}

fn rational_pool(
    curve: &Genus2Curve,
) -> Vec<(FieldElement, FieldElement, FieldElement, FieldElement, FieldElement)> {
    let q = Field::Rationals;
    let coeffs: Vec<BigRational> = curve
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational").clone())
        .collect();
    let lcm = coeffs.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let int_coeffs: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    let rational_roots: Option<Vec<BigRational>> = curve.roots().ok().map(|r| {
        r.iter()
            .map(|t| t.as_rational().expect("rational").clone())
            .collect()
    });

    let mut groups: BTreeMap<BigInt, Vec<BigRational>> = BTreeMap::new();
    let mut pair_count = 0usize;
    let mut seen = std::collections::BTreeSet::new();
    let windows: &[(i64, i64)] = if rational_roots.is_some() {
        &[(4, 40), (8, 80), (15, 150), (24, 240)]
    } else {
        &[(3, 20), (5, 40)]
    };
    for &(max_den, max_num) in windows {
        for m in 1..=max_den {
            for n in -max_num..=max_num {
                if n.gcd(&m) != 1 || !seen.insert((n, m)) {
                    continue;
                }
                let x = BigRational::new(BigInt::from(n), BigInt::from(m));
                let factors: Vec<BigInt> = match &rational_roots {
                    // F(n/m) = f_6 prod (b n - a m) / (b m) for theta = a/b
                    Some(roots) => {
                        let f6 = &coeffs[6];
                        let mut fs = vec![f6.numer().clone(), f6.denom().clone()];
                        for t in roots {
                            fs.push(t.denom() * n - t.numer() * m);
                            fs.push(t.denom().clone());
                        }
                        fs
                    }
                    None => {
                        let mut acc = BigInt::zero();
                        for (k, c) in int_coeffs.iter().enumerate() {
                            acc += c * BigInt::from(n).pow(k as u32) * BigInt::from(m).pow(6 - k as u32);
                        }
                        vec![acc, lcm.clone()]
                    }
                };
                if factors.iter().any(Zero::is_zero) {
                    continue;
                }
                let Some(kernel) = squarefree_kernel(&factors) else {
                    continue;
                };
                let group = groups.entry(kernel).or_default();
                pair_count += group.len();
                group.push(x);
            }
        }
        if pair_count >= TARGET_PAIRS {
            break;
        }
    }

    let mut pool = Vec::new();
    for (d, xs) in &groups {
        let d = q.from_bigint(d);
        let dinv = d.inv().expect("kernel is nonzero");
        for (a, x) in xs.iter().enumerate() {
            for u in &xs[a + 1..] {
                let xe = FieldElement::Rational(x.clone());
                let ue = FieldElement::Rational(u.clone());
                let y = (&curve.eval(&xe) * &dinv).sqrt().expect("same kernel");
                let v = (&curve.eval(&ue) * &dinv).sqrt().expect("same kernel");
                pool.push((xe, y, ue, v, d.clone()));
            }
        }
    }
    pool
}

/// Signed squarefree part of the product of the given nonzero integers, or
/// `None` when a factor resists trial division.
fn squarefree_kernel(factors: &[BigInt]) -> Option<BigInt> {
    let mut parity: BTreeMap<u64, bool> = BTreeMap::new();
    let mut negative = false;
    let mut leftover = BigInt::one();
    for f in factors {
        negative ^= f.is_negative();
        let mut n = f.abs();
        let mut p = 2u64;
        while p <= TRIAL_LIMIT && BigInt::from(p * p) <= n {
            while (&n % p).is_zero() {
                n /= p;
                let e = parity.entry(p).or_insert(false);
                *e = !*e;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if n.is_one() {
            continue;
        }
        if BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT) < n {
            // unfactored cofactor: accept only if it is a perfect square
            let r = n.sqrt();
            if &r * &r != n {
                return None;
            }
            continue;
        }
        // n is a prime above the trial range
        match n.to_u64() {
            Some(prime) => {
                let e = parity.entry(prime).or_insert(false);
                *e = !*e;
            }
            None => leftover *= n,
        }
    }
    let mut k = parity
        .into_iter()
        .filter(|&(_, odd)| odd)
        .fold(leftover, |acc, (p, _)| acc * p);
    if negative {
        k = -k;
    }
    Some(k)
}
