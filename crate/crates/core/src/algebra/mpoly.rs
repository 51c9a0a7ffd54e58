//! Sparse multivariate polynomials, used for the symbolic derivations
//! (Kummer quartic elimination, the degree-4 forms of kappa, blow-up families,
//! Gram matrices of quadratic forms).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::field::{Field, FieldElement};
use crate::error::{Error, Result};

/// Exponent vectors are compared lexicographically, so the last key of the
/// term map is the lex-leading monomial (variable 0 most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl MPoly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        MPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> Self {
        let mut p = Self::zero(c.field(), nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(field: Field, nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        let mut p = Self::zero(field, nvars);
        p.add_term(exps, field.one());
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> FieldElement {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: FieldElement) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True when every monomial has total degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = Self::zero(self.field, self.nvars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(self.field.one(), self.nvars), |acc, _| &acc * self)
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars);
        let mut acc = self.field.zero();
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(exps) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Evaluates at values from any commutative algebra over the base field
    /// (polynomials in an auxiliary variable, other multivariate polynomials).
    pub fn eval_with<R>(&self, point: &[R], embed: impl Fn(&FieldElement) -> R) -> R
    where
        R: Clone,
        for<'a> &'a R: Add<&'a R, Output = R> + Mul<&'a R, Output = R>,
    {
        assert_eq!(point.len(), self.nvars);
        let mut powers: Vec<Vec<R>> = point
            .iter()
            .map(|x| vec![embed(&self.field.one()), x.clone()])
            .collect();
        let mut acc = embed(&self.field.zero());
        for (exps, c) in &self.terms {
            let mut t = embed(c);
            for (v, &e) in exps.iter().enumerate() {
                let table = &mut powers[v];
                while table.len() <= e as usize {
                    let next = &table[table.len() - 1] * &table[1];
                    table.push(next);
                }
                if e > 0 {
                    t = &t * &table[e as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * &self.field.from_i64(e[var] as i64));
        }
        out
    }

    /// The lex-leading term.
    pub fn leading(&self) -> Option<(&Vec<u32>, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// Exact division in lex order; `Err` if `divisor` does not divide.
    pub fn exact_div(&self, divisor: &MPoly) -> Result<MPoly> {
        let (lexp, lcoef) = divisor.leading().ok_or(Error::DivisionByZero)?;
        let lexp = lexp.clone();
        let lcoef_inv = lcoef.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.field, self.nvars);
        while let Some((e, c)) = rem.leading() {
            if e.iter().zip(&lexp).any(|(a, b)| a < b) {
                return Err(Error::InternalInconsistency(
                    "multivariate division is not exact".into(),
                ));
            }
            let qe: Vec<u32> = e.iter().zip(&lexp).map(|(a, b)| a - b).collect();
            let qc = c * &lcoef_inv;
            let mut mono = Self::zero(self.field, self.nvars);
            mono.add_term(qe, qc);
            rem = &rem - &(&mono * divisor);
            quot = &quot + &mono;
        }
        Ok(quot)
    }

    /// Parses a sum of monomials such as `- 1/2 f5 x1^2 x3 + 3 x4^2`.
    /// Identifiers resolve through `lookup` to either a variable index or a
    /// scalar substituted on the spot.
    pub fn parse(
        text: &str,
        field: Field,
        nvars: usize,
        lookup: impl Fn(&str) -> Option<Symbol>,
    ) -> Result<MPoly> {
        let bad = |msg: String| Error::Parse {
            line: 1,
            column: 0,
            message: msg,
        };
        let mut out = Self::zero(field, nvars);
        let cleaned = text.replace(['\n', '*'], " ");
        let mut sign = field.one();
        let mut current: Option<(Vec<u32>, FieldElement)> = None;
        let flush = |out: &mut MPoly, current: &mut Option<(Vec<u32>, FieldElement)>| {
            if let Some((e, c)) = current.take() {
                out.add_term(e, c);
            }
        };
        let mut tokens: Vec<String> = Vec::new();
        for raw in cleaned.split_whitespace() {
            // split leading/trailing signs glued to factors, e.g. "-2" or "x1-"
            let mut buf = String::new();
            for ch in raw.chars() {
                if ch == '+' || ch == '-' {
                    if !buf.is_empty() {
                        tokens.push(std::mem::take(&mut buf));
                    }
                    tokens.push(ch.to_string());
                } else {
                    buf.push(ch);
                }
            }
            if !buf.is_empty() {
                tokens.push(buf);
            }
        }
        for tok in tokens {
            match tok.as_str() {
                "+" | "-" => {
                    if current.is_some() {
                        flush(&mut out, &mut current);
                        sign = field.one();
                    }
                    if tok == "-" {
                        sign = -sign;
                    }
                }
                _ => {
                    let (cur_e, cur_c) = current.get_or_insert_with(|| (vec![0; nvars], sign.clone()));
                    if tok.starts_with(|c: char| c.is_ascii_digit()) {
                        let v = field.parse_element(&tok).map_err(bad)?;
                        *cur_c = &*cur_c * &v;
                        continue;
                    }
                    let (name, exp) = match tok.split_once('^') {
                        Some((n, e)) => (
                            n,
                            e.parse::<u32>().map_err(|_| bad(format!("bad exponent in `{tok}`")))?,
                        ),
                        None => (tok.as_str(), 1),
                    };
                    match lookup(name) {
                        Some(Symbol::Var(i)) => cur_e[i] += exp,
                        Some(Symbol::Value(v)) => *cur_c = &*cur_c * &v.pow(exp),
                        None => return Err(bad(format!("unknown symbol `{name}`"))),
                    }
                }
            }
        }
        flush(&mut out, &mut current);
        Ok(out)
    }
}

/// Resolution of an identifier while parsing.
pub enum Symbol {
    Var(usize),
    Value(FieldElement),
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", v + 1)?,
                    _ => write!(f, "*x{}^{k}", v + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    // exponents add under multiplication
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        let mut out = MPoly::zero(self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-self.field.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::UniPoly;

    fn lookup(name: &str) -> Option<Symbol> {
        match name {
            "x" => Some(Symbol::Var(0)),
            "y" => Some(Symbol::Var(1)),
            "a" => Some(Symbol::Value(Field::Rationals.from_i64(3))),
            _ => None,
        }
    }

    #[test]
    fn parse_and_evaluate() {
        let q = Field::Rationals;
        let p = MPoly::parse("- 1/2 a x^2 y + 2 x y^2 - 7", q, 2, lookup).unwrap();
        // at (2, 1): -1/2*3*4 + 4 - 7 = -9
        assert_eq!(p.eval(&[q.from_i64(2), q.from_i64(1)]), q.from_i64(-9));
        assert!(MPoly::parse("z", q, 2, lookup).is_err());
    }

    #[test]
    fn exact_division_round_trip() {
        let q = Field::Rationals;
        let a = MPoly::parse("x^2 - 4 y + x y", q, 2, lookup).unwrap();
        let b = MPoly::parse("x^3 + 2 x y^2 - y + 5", q, 2, lookup).unwrap();
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        let c = &prod + &MPoly::constant(q.one(), 2);
        assert!(c.exact_div(&a).is_err());
    }

    #[test]
    fn eval_with_univariate_substitution() {
        let q = Field::Rationals;
        let p = MPoly::parse("x^2 y - 3 y", q, 2, lookup).unwrap();
        let h = UniPoly::x(q);
        let one = UniPoly::one(q);
        // substitute x = h, y = 1: h^2 - 3
        let r = p.eval_with(&[h, one], |c| UniPoly::constant(c.clone()));
        assert_eq!(r, UniPoly::from_i64(q, &[-3, 0, 1]));
    }

    #[test]
    fn partial_derivative() {
        let q = Field::Rationals;
        let p = MPoly::parse("x^3 y^2", q, 2, lookup).unwrap();
        assert_eq!(p.partial(0), MPoly::parse("3 x^2 y^2", q, 2, lookup).unwrap());
    }
}
