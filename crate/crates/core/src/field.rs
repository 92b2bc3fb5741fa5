//! Gaussian rationals: the field Q(i) with exact reduced fractions.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// An element `re + im*i` of Q(i). Both parts are kept reduced by `BigRational`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

pub type Q = GaussianRational;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn int(n: i64) -> Self {
        GaussianRational { re: BigRational::from_integer(n.into()), im: BigRational::zero() }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        GaussianRational { re: rat(n, d), im: BigRational::zero() }
    }

    /// `a/b + (c/d) i`
    pub fn complex(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussianRational { re: rat(a, b), im: rat(c, d) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// `re² + im²`
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self * &other.inv()?)
    }

    pub fn arith(a: &Self, b: &Self, op: Op) -> Result<Self, Error> {
        Ok(match op {
            Op::Add => a + b,
            Op::Sub => a - b,
            Op::Mul => a * b,
            Op::Div => a.checked_div(b)?,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Square root inside Q(i), normalized to `re > 0`, or `re = 0` and `im > 0`.
    pub fn sqrt_in_field(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // |x|² = sqrt(a_re² + a_im²) must itself be rational
        let modulus = rational_sqrt(&self.norm())?;
        let two = rat(2, 1);
        let u = rational_sqrt(&((&modulus + &self.re) / &two))?;
        let mut v = rational_sqrt(&((&modulus - &self.re) / &two))?;
        // 2uv = a_im fixes the relative sign
        if (&u * &v * &two) != self.im {
            v = -v;
        }
        let mut root = GaussianRational { re: u, im: v };
        if root.re.is_negative() || (root.re.is_zero() && root.im.is_negative()) {
            root = -root;
        }
        debug_assert_eq!(&(&root * &root), self);
        Some(root)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }
}

impl<'a> Add<&'a Q> for &'a Q {
    type Output = Q;
    fn add(self, o: &Q) -> Q {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a Q> for &'a Q {
    type Output = Q;
    fn sub(self, o: &Q) -> Q {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a Q> for &'a Q {
    type Output = Q;
    fn mul(self, o: &Q) -> Q {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational { re: &self.re * &o.re, im: BigRational::zero() };
        }
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Add for Q {
    type Output = Q;
    fn add(self, o: Q) -> Q {
        &self + &o
    }
}

impl Sub for Q {
    type Output = Q;
    fn sub(self, o: Q) -> Q {
        &self - &o
    }
}

impl Mul for Q {
    type Output = Q;
    fn mul(self, o: Q) -> Q {
        &self * &o
    }
}

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, o: &Q) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, o: &Q) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let coeff = |q: &BigRational| -> String {
            if q.is_one() {
                String::new()
            } else {
                format!("{}*", q)
            }
        };
        let mag = self.im.abs();
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            return write!(f, "{}{}i", sign, coeff(&mag));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}i", self.re, sign, coeff(&mag))
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
    }
}

fn parse_imag(s: &str) -> Result<BigRational, Error> {
    let body = s.strip_suffix('i').ok_or_else(|| Error::Parse(format!("bad imaginary part {s:?}")))?;
    let body = body.strip_suffix('*').unwrap_or(body);
    match body {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => parse_rational(body),
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `3`, `-1/2`, `i`, `-2/3*i`, `1/2+3*i`, `1-i` and similar.
    fn from_str(text: &str) -> Result<Self, Error> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if !s.ends_with('i') {
            return Ok(parse_rational(&s)?.into());
        }
        let split = s
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) if !s[..k].ends_with('/') => Ok(GaussianRational {
                re: parse_rational(&s[..k])?,
                im: parse_imag(&s[k..])?,
            }),
            _ => Ok(GaussianRational { re: BigRational::zero(), im: parse_imag(&s)? }),
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

struct QVisitor;

impl Visitor<'_> for QVisitor {
    type Value = GaussianRational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a Gaussian rational as a string like \"1/2-3*i\" or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
        Ok(GaussianRational::int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
        Ok(BigRational::from_integer(v.into()).into())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(QVisitor)
    }
}

/// Shorthand for literals in tests and tables; panics on malformed input.
pub fn q(s: &str) -> Q {
    s.parse().unwrap_or_else(|e| panic!("literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_arithmetic() {
        assert_eq!(&q("1+i") * &q("1-i"), q("2"));
        assert_eq!(&q("2/3") + &q("1/3"), Q::one());
        assert_eq!(&Q::i() * &Q::i(), q("-1"));
        assert_eq!(q("6/4"), Q::frac(3, 2));
        assert_eq!(Q::arith(&Q::one(), &Q::zero(), Op::Div), Err(Error::DivisionByZero));
        assert_eq!(q("1+2*i").conj(), q("1-2*i"));
        assert_eq!(q("5").conj(), q("5"));
    }

    #[test]
    fn text_form() {
        for s in ["3", "-1/2*i", "0", "i", "-i", "1/2+3/4*i", "-7-2*i", "5/3-i"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("1*i"), Q::i());
        assert_eq!(q("2 + 1/3 * i"), Q::complex(2, 1, 1, 3));
        assert_eq!(q("-3/2i"), Q::complex(0, 1, -3, 2));
        assert!("1/0".parse::<Q>().is_err());
        assert!("x".parse::<Q>().is_err());
        assert!("".parse::<Q>().is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(q("-1").sqrt_in_field(), Some(Q::i()));
        assert_eq!(q("4/9").sqrt_in_field(), Some(q("2/3")));
        assert_eq!(q("2").sqrt_in_field(), None);
        assert_eq!(q("2*i").sqrt_in_field(), Some(q("1+i")));
        assert_eq!(q("-2*i").sqrt_in_field(), Some(q("1-i")));
        assert_eq!(q("-9/4").sqrt_in_field(), Some(q("3/2*i")));
        assert_eq!(q("3+4*i").sqrt_in_field(), Some(q("2+i")));
        assert_eq!(q("i").sqrt_in_field(), None);
    }

    fn small() -> impl Strategy<Value = Q> {
        (-20i64..20, 1i64..12, -20i64..20, 1i64..12).prop_map(|(a, b, c, d)| Q::complex(a, b, c, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            prop_assert_eq!(a.conj().conj(), a.clone());
        }

        #[test]
        fn round_trip(a in small()) {
            prop_assert_eq!(a.to_string().parse::<Q>().unwrap(), a);
        }

        #[test]
        fn sqrt_squares_back(a in small()) {
            let sq = &a * &a;
            let r = sq.sqrt_in_field().unwrap();
            prop_assert_eq!(&r * &r, sq);
            prop_assert!(r == a || r == -&a);
            if let Some(r) = a.sqrt_in_field() {
                prop_assert_eq!(&r * &r, a);
            }
        }
    }
}
