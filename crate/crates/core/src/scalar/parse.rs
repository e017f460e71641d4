use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::complex::C64;
use super::quad::CycRat;
use super::rational::parse_rational;
use super::Field;
use crate::error::{Error, Result};

/// A parameter as given on the command line or in a grid file.
#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    /// Keep the variable symbolic.
    Sym,
    Exact(CycRat),
    Complex(C64),
}

impl ParamValue {
    pub fn to_c64(&self) -> Option<C64> {
        match self {
            ParamValue::Sym => None,
            ParamValue::Exact(c) => Some(C64(c.to_c64())),
            ParamValue::Complex(z) => Some(*z),
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Sym => write!(f, "sym"),
            ParamValue::Exact(c) => write!(f, "{c}"),
            ParamValue::Complex(z) => write!(f, "{z}"),
        }
    }
}

fn split_terms(s: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    let mut prev: Option<char> = None;
    for (i, ch) in s.char_indices() {
        let exp_sign = matches!(prev, Some('e') | Some('E'));
        if (ch == '+' || ch == '-') && !cur.is_empty() && !exp_sign {
            out.push((start, std::mem::take(&mut cur)));
            start = i;
        }
        cur.push(ch);
        prev = Some(ch);
    }
    if !cur.is_empty() {
        out.push((start, cur));
    }
    out
}

/// Parses `sym`, rationals `p/q`, decimals, ω-forms `a+bw`, and complex `a+bi`.
pub fn parse_param(text: &str) -> Result<ParamValue> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty value".into(),
        });
    }
    if s == "sym" {
        return Ok(ParamValue::Sym);
    }
    let complex = s.contains('i');
    let omega = s.contains('w');
    if complex && omega {
        return Err(Error::Syntax {
            pos: 0,
            msg: format!("`{text}` mixes i and w"),
        });
    }
    if complex {
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (pos, term) in split_terms(&s) {
            let bad = || Error::Syntax {
                pos,
                msg: format!("bad complex term `{term}`"),
            };
            if let Some(body) = term.strip_suffix('i') {
                let body = body.trim_end_matches('*');
                let v = match body {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    b => parse_real(b).ok_or_else(bad)?,
                };
                im += v;
            } else {
                re += parse_real(&term).ok_or_else(bad)?;
            }
        }
        return Ok(ParamValue::Complex(C64::new(re, im)));
    }
    let (mut c0, mut c1) = (BigRational::zero(), BigRational::zero());
    for (pos, term) in split_terms(&s) {
        let wrap = |e: Error| match e {
            Error::Syntax { msg, .. } => Error::Syntax { pos, msg },
            e => e,
        };
        if let Some(body) = term.strip_suffix('w') {
            let body = body.trim_end_matches('*');
            let v = match body {
                "" | "+" => BigRational::from_integer(1.into()),
                "-" => BigRational::from_integer((-1).into()),
                b => parse_rational(b).map_err(wrap)?,
            };
            c1 += v;
        } else {
            match parse_rational(&term) {
                Ok(v) => c0 += v,
                Err(Error::DivisionByZero) => return Err(Error::DivisionByZero),
                Err(_) => {
                    let f = parse_real(&term).ok_or(Error::Syntax {
                        pos,
                        msg: format!("bad number `{term}`"),
                    })?;
                    let r = BigRational::from_float(f).ok_or(Error::Syntax {
                        pos,
                        msg: format!("bad number `{term}`"),
                    })?;
                    c0 += r;
                }
            }
        }
    }
    Ok(ParamValue::Exact(CycRat::new(c0, c1)))
}

fn parse_real(s: &str) -> Option<f64> {
    if let Some((a, b)) = s.split_once('/') {
        let a: f64 = a.parse().ok()?;
        let b: f64 = b.parse().ok()?;
        return Some(a / b);
    }
    if let Ok(r) = parse_rational(s) {
        return r.to_f64();
    }
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_param("sym").unwrap(), ParamValue::Sym);
        assert_eq!(
            parse_param("-3/4").unwrap(),
            ParamValue::Exact(CycRat::from_fracs(-3, 4, 0, 1))
        );
        assert_eq!(
            parse_param("1-w").unwrap(),
            ParamValue::Exact(CycRat::from_ints(1, -1))
        );
        assert_eq!(
            parse_param("0.7+0.2i").unwrap(),
            ParamValue::Complex(C64::new(0.7, 0.2))
        );
        assert_eq!(parse_param("2+0i").unwrap(), ParamValue::Complex(C64::new(2.0, 0.0)));
        assert_eq!(parse_param("-i").unwrap(), ParamValue::Complex(C64::new(0.0, -1.0)));
        assert_eq!(
            parse_param("2.5").unwrap(),
            ParamValue::Exact(CycRat::from_fracs(5, 2, 0, 1))
        );
        assert_eq!(parse_param("1e-3+2i").unwrap(), ParamValue::Complex(C64::new(1e-3, 2.0)));
        assert!(parse_param("x").is_err());
        assert!(parse_param("1/0").is_err());
    }
}
