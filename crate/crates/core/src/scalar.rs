//! Exact scalars: rationals, Gaussian rationals `ℚ + iℚ`, and square roots
//! of Gaussian rationals with an explicitly tracked sign.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mutation::{self, Mutation};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Square root of a non-negative rational when it is itself rational.
pub fn rational_sqrt(q: &Rational) -> Result<Option<Rational>> {
    if q.is_negative() {
        return Err(Error::domain(format!("rational_sqrt of negative value {q}")));
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Ok(Some(Rational::new(n, d)))
    } else {
        Ok(None)
    }
}

/// An element of `ℚ + iℚ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexRational { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn i() -> Self {
        ComplexRational::new(Rational::zero(), Rational::one())
    }

    pub fn real(re: Rational) -> Self {
        ComplexRational::new(re, Rational::zero())
    }

    pub fn imag(im: Rational) -> Self {
        ComplexRational::new(Rational::zero(), im)
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        ComplexRational::new(int(re), int(im))
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
        ComplexRational::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ComplexRational::new(&self.re * k, &self.im * k)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(ComplexRational::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Principal square root when it lies in `ℚ + iℚ`: positive real part,
    /// or non-negative imaginary part when the real part vanishes.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.im.is_zero() {
            let r = rational_sqrt(&self.re.abs()).ok()??;
            return Some(if self.re.is_negative() {
                ComplexRational::imag(r)
            } else {
                ComplexRational::real(r)
            });
        }
        // (x + iy)^2 = p + iq with x^2 = (m + p)/2, y^2 = (m - p)/2, m = |p + iq|
        let m = rational_sqrt(&self.norm_sqr()).ok()??;
        let two = int(2);
        let x = rational_sqrt(&((&m + &self.re) / &two)).ok()??;
        let y = rational_sqrt(&((&m - &self.re) / &two)).ok()??;
        let y = if self.im.is_negative() { -y } else { y };
        Some(ComplexRational::new(x, y))
    }

    /// Fixed total order: real part first, then imaginary part.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }

    /// `Re < 0`, or `Re = 0 ∧ Im < 0`: exactly the values that are the negated
    /// principal root of their square.
    fn is_negative_half(&self) -> bool {
        self.re.is_negative() || (self.re.is_zero() && self.im.is_negative())
    }
}

impl From<Rational> for ComplexRational {
    fn from(re: Rational) -> Self {
        ComplexRational::real(re)
    }
}

impl From<i64> for ComplexRational {
    fn from(re: i64) -> Self {
        ComplexRational::real(int(re))
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<ComplexRational> for ComplexRational {
            type Output = ComplexRational;
            fn $method(self, rhs: ComplexRational) -> ComplexRational {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&ComplexRational> for ComplexRational {
            type Output = ComplexRational;
            fn $method(self, rhs: &ComplexRational) -> ComplexRational {
                (&self).$method(rhs)
            }
        }
        impl $imp<ComplexRational> for &ComplexRational {
            type Output = ComplexRational;
            fn $method(self, rhs: ComplexRational) -> ComplexRational {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

/// Panics on division by zero, like the rational division it wraps.
impl Div<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn div(self, rhs: &ComplexRational) -> ComplexRational {
        let inv = rhs.inv().expect("division by zero ComplexRational");
        self * &inv
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational::new(-&self.re, -&self.im)
    }
}

impl Neg for ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        -&self
    }
}

impl fmt::Display for ComplexRational {
    /// `p/q`, `r/si`, `p/q+r/si`; a unit imaginary part prints as `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag_part(im: &Rational) -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{im}i")
            }
        }
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", imag_part(&self.im)),
            (false, false) => {
                let im = imag_part(&self.im);
                if im.starts_with('-') {
                    write!(f, "{}{}", self.re, im)
                } else {
                    write!(f, "{}+{}", self.re, im)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid complex rational literal `{0}`")]
pub struct ParseScalarError(pub String);

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Parses an imaginary literal body such as `i`, `-i`, `3/2i`.
fn parse_imag(s: &str) -> Option<Rational> {
    let body = s.strip_suffix('i')?;
    match body {
        "" | "+" => Some(Rational::one()),
        "-" => Some(-Rational::one()),
        _ => parse_rational(body),
    }
}

impl FromStr for ComplexRational {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        if !t.ends_with('i') {
            return parse_rational(&t).map(ComplexRational::real).ok_or_else(err);
        }
        // split at the last sign that is not the leading one
        let split = t
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        match split {
            Some(i) => {
                let re = parse_rational(&t[..i]).ok_or_else(err)?;
                let im = parse_imag(&t[i..]).ok_or_else(err)?;
                Ok(ComplexRational::new(re, im))
            }
            None => parse_imag(&t).map(ComplexRational::imag).ok_or_else(err),
        }
    }
}

/// `Im c > 0 ∨ (Im c = 0 ∧ Re c < 0)`: the principal root of `c` has a
/// positive imaginary part (or is purely imaginary).
pub fn upper(c: &ComplexRational) -> bool {
    c.im.is_positive() || (c.im.is_zero() && c.re.is_negative())
}

/// `(-1)^negate · √square`, with `√` the principal branch.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Amplitude {
    square: ComplexRational,
    negate: bool,
}

impl Amplitude {
    pub fn new(square: ComplexRational, negate: bool) -> Self {
        let negate = negate && !square.is_zero();
        Amplitude { square, negate }
    }

    pub fn principal(square: ComplexRational) -> Self {
        Self::new(square, false)
    }

    pub fn zero() -> Self {
        Self::principal(ComplexRational::zero())
    }

    pub fn one() -> Self {
        Self::principal(ComplexRational::one())
    }

    pub fn square(&self) -> &ComplexRational {
        &self.square
    }

    pub fn negate(&self) -> bool {
        self.negate
    }

    pub fn is_zero(&self) -> bool {
        self.square.is_zero()
    }

    /// The amplitude whose value is exactly `k`.
    pub fn from_scalar(k: &ComplexRational) -> Self {
        Self::new(k * k, k.is_negative_half())
    }

    /// Product with the branch rule: `√c0·√c1 = (-1)^k·√(c0·c1)`.
    pub fn mul(&self, other: &Amplitude) -> Amplitude {
        let product = &self.square * &other.square;
        let (u0, u1, up) = (upper(&self.square), upper(&other.square), upper(&product));
        let flip = ((u0 && u1 && !up) || (!u0 && !u1 && up))
            && !mutation::active(Mutation::AmpMulNoFlip);
        Amplitude::new(product, self.negate ^ other.negate ^ flip)
    }

    pub fn neg(&self) -> Amplitude {
        Amplitude::new(self.square.clone(), !self.negate)
    }

    pub fn pow(&self, n: u32) -> Amplitude {
        (0..n).fold(Amplitude::one(), |acc, _| acc.mul(self))
    }

    /// Complex conjugate. The principal root commutes with conjugation except
    /// on the negative real axis, where `√(-r) = i√r`.
    pub fn conj(&self) -> Amplitude {
        let on_cut = self.square.im.is_zero() && self.square.re.is_negative();
        Amplitude::new(self.square.conj(), self.negate ^ on_cut)
    }

    /// The exact value when the square is a perfect square in `ℚ + iℚ`.
    pub fn exact_value(&self) -> Option<ComplexRational> {
        let root = self.square.sqrt_exact()?;
        Some(if self.negate { -root } else { root })
    }

    /// `self / other` when that ratio lies in `ℚ + iℚ`.
    pub fn ratio(&self, other: &Amplitude) -> Option<ComplexRational> {
        if other.is_zero() {
            return None;
        }
        let q = &self.square / &other.square;
        let w = q.sqrt_exact()?;
        // other · √q = ±self; the sign comes from the branch rule
        let prod = other.mul(&Amplitude::principal(q));
        Some(if prod.negate == self.negate { w } else { -w })
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negate { '-' } else { '+' };
        write!(f, "{sign}sqrt({})", self.square)
    }
}

impl FromStr for Amplitude {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseScalarError(s.to_string());
        let (negate, rest) = match t.as_bytes().first() {
            Some(b'+') => (false, &t[1..]),
            Some(b'-') => (true, &t[1..]),
            _ => (false, t),
        };
        let inner = rest
            .strip_prefix("sqrt(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        Ok(Amplitude::new(inner.parse()?, negate))
    }
}
