//! Plain-text curve description.
//!
//! ```text
//! # comment
//! label: fixture
//! field: QQ            # or GF(p)
//! roots: 1, 2, 3, 4, 5, 6
//! leading: 1           # optional, roots form only
//! ```
//!
//! `coeffs: f0, ..., f6` replaces `roots:`. Scalars are integers or `num/den`.

use std::fmt;

use crate::algebra::{Field, FieldElement};
use crate::curve::Genus2Curve;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveData {
    /// Roots and the leading coefficient `f6`.
    Roots(Vec<String>, Option<String>),
    /// `f0..f6`.
    Coeffs(Vec<String>),
}

/// A parsed curve file. Scalars are kept as written so that re-rendering is
/// exact; `build` interprets them in the chosen field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFile {
    pub label: Option<String>,
    pub field: Field,
    pub data: CurveData,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_field(text: &str) -> std::result::Result<Field, String> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("QQ") || t == "Q" {
        return Ok(Field::Rationals);
    }
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("unknown field `{t}`, expected QQ or GF(p)"))?;
    let p: u64 = inner.trim().parse().map_err(|_| format!("`{inner}` is not a prime"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

/// Splits a comma list, returning each item with its 1-based column.
fn items(value: &str, offset: usize) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in value.split(',') {
        let lead = part.len() - part.trim_start().len();
        out.push((offset + start + lead + 1, part.trim().to_string()));
        start += part.len() + 1;
    }
    out
}

impl CurveFile {
    pub fn parse(text: &str) -> Result<CurveFile> {
        let mut label = None;
        let mut field = None;
        let mut roots: Option<(usize, Vec<(usize, String)>)> = None;
        let mut coeffs: Option<(usize, Vec<(usize, String)>)> = None;
        let mut leading: Option<(usize, usize, String)> = None;
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let key_col = content.len() - content.trim_start().len() + 1;
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| parse_err(line, key_col, "expected `key: value`"))?;
            let offset = key.len() + 1;
            let value_col = offset + value.len() - value.trim_start().len() + 1;
            let seen = |present: bool| {
                if present {
                    Err(parse_err(line, key_col, format!("duplicate key `{}`", key.trim())))
                } else {
                    Ok(())
                }
            };
            match key.trim() {
                "label" => {
                    seen(label.is_some())?;
                    label = Some(value.trim().to_string());
                }
                "field" => {
                    seen(field.is_some())?;
                    field = Some(parse_field(value).map_err(|m| parse_err(line, value_col, m))?);
                }
                "roots" => {
                    seen(roots.is_some())?;
                    roots = Some((line, items(value, offset)));
                }
                "coeffs" => {
                    seen(coeffs.is_some())?;
                    coeffs = Some((line, items(value, offset)));
                }
                "leading" => {
                    seen(leading.is_some())?;
                    leading = Some((line, value_col, value.trim().to_string()));
                }
                other => return Err(parse_err(line, key_col, format!("unknown key `{other}`"))),
            }
        }
        let end = text.lines().count().max(1);
        let field = field.ok_or_else(|| parse_err(end, 1, "missing `field:`"))?;
        let check = |line: usize, list: &[(usize, String)], want: usize| -> Result<Vec<String>> {
            if list.len() != want {
                return Err(parse_err(line, 1, format!("expected {want} values, found {}", list.len())));
            }
            for (col, s) in list {
                field.parse_element(s).map_err(|m| parse_err(line, *col, m))?;
            }
            Ok(list.iter().map(|(_, s)| s.clone()).collect())
        };
        let data = match (roots, coeffs) {
            (Some(_), Some((line, _))) => return Err(parse_err(line, 1, "give either `roots:` or `coeffs:`, not both")),
            (None, None) => return Err(parse_err(end, 1, "missing `roots:` or `coeffs:`")),
            (Some((line, list)), None) => {
                let r = check(line, &list, 6)?;
                if let Some((l, c, s)) = &leading {
                    field.parse_element(s).map_err(|m| parse_err(*l, *c, m))?;
                }
                CurveData::Roots(r, leading.map(|(_, _, s)| s))
            }
            (None, Some((line, list))) => {
                if let Some((l, c, _)) = leading {
                    return Err(parse_err(l, c, "`leading:` only applies to `roots:`"));
                }
                CurveData::Coeffs(check(line, &list, 7)?)
            }
        };
        let file = CurveFile { label, field, data };
        file.build()?;
        Ok(file)
    }

    /// Same data read in another field (e.g. a rational curve reduced mod p).
    pub fn with_field(&self, field: Field) -> Result<CurveFile> {
        let file = CurveFile {
            field,
            ..self.clone()
        };
        file.build()?;
        Ok(file)
    }

    pub fn build(&self) -> Result<Genus2Curve> {
        let f = self.field;
        let parse = |s: &String| f.parse_element(s).map_err(Error::InvalidCurve);
        let curve = match &self.data {
            CurveData::Roots(r, lead) => {
                let roots = r.iter().map(parse).collect::<Result<Vec<FieldElement>>>()?;
                let lead = lead.as_ref().map(parse).transpose()?.unwrap_or_else(|| f.one());
                Genus2Curve::from_roots(f, roots, lead)?
            }
            CurveData::Coeffs(c) => Genus2Curve::from_coeffs(f, c.iter().map(parse).collect::<Result<_>>()?)?,
        };
        Ok(match &self.label {
            Some(l) => curve.with_label(l.clone()),
            None => curve,
        })
    }

    /// Describes an existing curve, by roots when known.
    pub fn from_curve(curve: &Genus2Curve) -> CurveFile {
        let data = match curve.roots() {
            Ok(r) => {
                let lead = curve.f(6);
                CurveData::Roots(
                    r.iter().map(ToString::to_string).collect(),
                    (!lead.is_one()).then(|| lead.to_string()),
                )
            }
            Err(_) => CurveData::Coeffs(curve.coeffs().iter().map(ToString::to_string).collect()),
        };
        CurveFile {
            label: curve.label().map(str::to_string),
            field: curve.field(),
            data,
        }
    }
}

impl fmt::Display for CurveFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            writeln!(f, "label: {l}")?;
        }
        writeln!(f, "field: {}", self.field)?;
        match &self.data {
            CurveData::Roots(r, lead) => {
                writeln!(f, "roots: {}", r.join(", "))?;
                if let Some(l) = lead {
                    writeln!(f, "leading: {l}")?;
                }
            }
            CurveData::Coeffs(c) => writeln!(f, "coeffs: {}", c.join(", "))?,
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_roots_and_coeffs() {
        let text = "# fixture\nlabel: natural\nfield: QQ\nroots: 1, 2, 3, 4, 5, 6\n";
        let file = CurveFile::parse(text).unwrap();
        let c = file.build().unwrap();
        assert_eq!(c.label(), Some("natural"));
        assert_eq!(c.f(0), Field::Rationals.from_i64(720));
        assert_eq!(file.to_string(), "label: natural\nfield: QQ\nroots: 1, 2, 3, 4, 5, 6\n");

        let text = "field: GF(101)\ncoeffs: 720, -1764, 1624, -735, 175, -21, 1 # same curve\n";
        let c = CurveFile::parse(text).unwrap().build().unwrap();
        assert!(c.has_roots());
        let reduced = file.with_field(Field::Prime(101)).unwrap().build().unwrap();
        assert_eq!(c.coeffs(), reduced.coeffs());

        let text = "field: QQ\nroots: 1/2, -1/3, 2, 3, 5, 7\nleading: -3/4\n";
        let file = CurveFile::parse(text).unwrap();
        assert_eq!(file.build().unwrap().f(6), Field::Rationals.parse_element("-3/4").unwrap());
        assert_eq!(CurveFile::parse(&file.to_string()).unwrap(), file);
    }

    #[test]
    fn diagnostics_carry_positions() {
        let cases = [
            ("field: QQ\nroots: 1, 2, x, 4, 5, 6\n", 2, 14),
            ("field: GF(100)\nroots: 1, 2, 3, 4, 5, 6\n", 1, 8),
            ("field: QQ\nroots: 1, 2, 3\n", 2, 1),
            ("field: QQ\n  colour: red\n", 2, 3),
            ("roots: 1, 2, 3, 4, 5, 6\n", 1, 1),
            ("field: QQ\nno colon here\n", 2, 1),
            ("field: GF(7)\nroots: 1, 2, 3, 4, 5, 1/7\n", 2, 23),
        ];
        for (text, line, column) in cases {
            match CurveFile::parse(text) {
                Err(Error::Parse { line: l, column: c, .. }) => assert_eq!((l, c), (line, column), "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert_eq!(
            CurveFile::parse("field: QQ\nroots: 1, 1, 2, 3, 4, 5\n"),
            Err(Error::RepeatedRoot)
        );
    }

    #[test]
    fn round_trip_from_curve() {
        for field in [Field::Rationals, Field::Prime(31)] {
            let c = Genus2Curve::from_i64_roots(field, &[1, 2, 3, 5, 8, 13]).unwrap().with_label("fib");
            let text = CurveFile::from_curve(&c).to_string();
            let back = CurveFile::parse(&text).unwrap().build().unwrap();
            assert_eq!(back.coeffs(), c.coeffs());
            assert_eq!(back.roots().unwrap(), c.roots().unwrap());
            assert_eq!(back.label(), Some("fib"));
        }
    }
}
