//! Tiny polynomial expressions over named parameters, used by parametric
//! fixture entries such as `"a^2"`, `"-3*c"` or `"1+a"`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::field::Q;
use crate::{Error, Result};

/// Assignment of values to parameter names.
pub type Params = BTreeMap<String, Q>;

#[derive(Clone, PartialEq, Eq, Debug)]
struct Term {
    coef: Q,
    vars: Vec<(String, u32)>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Expr {
    text: String,
    terms: Vec<Term>,
}

impl Expr {
    pub fn constant(c: Q) -> Self {
        Expr { text: c.to_string(), terms: vec![Term { coef: c, vars: vec![] }] }
    }

    pub fn eval(&self, p: &Params) -> Result<Q> {
        let mut acc = Q::zero();
        for t in &self.terms {
            let mut v = t.coef.clone();
            for (name, pow) in &t.vars {
                let x = p.get(name).ok_or_else(|| Error::Parse(format!("unbound parameter {name:?}")))?;
                v = &v * &x.pow(*pow);
            }
            acc += &v;
        }
        Ok(acc)
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out: Vec<String> = self.terms.iter().flat_map(|t| t.vars.iter().map(|(n, _)| n.clone())).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Split into constant part and linear coefficients, if the expression is affine in `params`.
    pub fn affine(&self, params: &[String]) -> Option<(Q, Vec<Q>)> {
        let mut c0 = Q::zero();
        let mut lin = vec![Q::zero(); params.len()];
        for t in &self.terms {
            match t.vars.as_slice() {
                [] => c0 += &t.coef,
                [(name, 1)] => {
                    let k = params.iter().position(|p| p == name)?;
                    lin[k] += &t.coef;
                }
                _ => return None,
            }
        }
        Some((c0, lin))
    }
}

fn parse_term(raw: &str, negative: bool) -> Result<Term> {
    let bad = || Error::Parse(format!("bad term {raw:?}"));
    let mut coef = if negative { Q::int(-1) } else { Q::one() };
    let mut vars: Vec<(String, u32)> = Vec::new();
    for factor in raw.split('*') {
        if factor.is_empty() {
            return Err(bad());
        }
        if factor == "i" {
            coef = &coef * &Q::i();
        } else if factor.starts_with(|c: char| c.is_ascii_digit()) {
            coef = &coef * &factor.parse::<Q>()?;
        } else {
            let (name, pow) = match factor.split_once('^') {
                Some((n, k)) => (n, k.parse::<u32>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(bad());
            }
            vars.push((name.to_string(), pow));
        }
    }
    Ok(Term { coef, vars })
}

impl FromStr for Expr {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let mut negative = false;
        let bytes = s.as_bytes();
        for k in 0..=bytes.len() {
            let at_sign = k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-');
            if k == bytes.len() || (at_sign && k > start) {
                terms.push(parse_term(&s[start..k], negative)?);
                if k < bytes.len() {
                    negative = bytes[k] == b'-';
                    start = k + 1;
                }
            } else if at_sign {
                negative ^= bytes[k] == b'-';
                start = k + 1;
            }
        }
        Ok(Expr { text: text.to_string(), terms })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Serialize for Expr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.text)
    }
}

impl<'de> Deserialize<'de> for Expr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn params(pairs: &[(&str, Q)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    #[test]
    fn evaluates() {
        let p = params(&[("a", q("2")), ("b", q("i"))]);
        let cases = [
            ("a^2", "4"),
            ("-3*b", "-3*i"),
            ("1+a", "3"),
            ("a-b", "2-i"),
            ("-1/2*a+3", "2"),
            ("i*a", "2*i"),
            ("0", "0"),
            ("-a^2-1", "-5"),
        ];
        for (e, v) in cases {
            assert_eq!(e.parse::<Expr>().unwrap().eval(&p).unwrap(), q(v), "{e}");
        }
        assert!("a+".parse::<Expr>().is_err());
        assert!("c".parse::<Expr>().unwrap().eval(&p).is_err());
    }

    #[test]
    fn affine_split() {
        let names = vec!["a".to_string()];
        let e: Expr = "1+2*a".parse().unwrap();
        assert_eq!(e.affine(&names), Some((q("1"), vec![q("2")])));
        assert_eq!("a^2".parse::<Expr>().unwrap().affine(&names), None);
    }
}
