//! Translated, modulated and chirped Gaussians
//! `amp · exp(-(a + b·u + c·u²))` with `u = √π·t`.
//!
//! Working in the variable `u` keeps every parameter update rational:
//! translation and modulation amounts are measured in units of `π^(-1/2)`,
//! so `translate(k, ·)` delays by `k/√π` and `modulate(k, ·)` multiplies by
//! `exp(2πi·(k/√π)·t) = exp(2i·k·u)`.
//!
//! Distinct parameter tuples denote distinct functions: the exponent is a
//! polynomial in `u` with Gaussian-rational coefficients, and `exp(α)` for a
//! nonzero algebraic `α` is transcendental, so two tuples can only agree when
//! `(a, b, c)` agree, after which the amplitudes must agree too.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::mutation::{self, Mutation};
use crate::scalar::{int, rat, Amplitude, ComplexRational, Rational};
use crate::simple::SimpleGauss;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussQuad {
    amp: Amplitude,
    a: ComplexRational,
    b: ComplexRational,
    c: ComplexRational,
}

impl GaussQuad {
    pub fn new(amp: Amplitude, a: ComplexRational, b: ComplexRational, c: ComplexRational) -> Self {
        if amp.is_zero() {
            Self::zero()
        } else {
            GaussQuad { amp, a, b, c }
        }
    }

    /// `f(y, a, b, c)` with the principal root of `y`.
    pub fn with_square(
        y: ComplexRational,
        a: ComplexRational,
        b: ComplexRational,
        c: ComplexRational,
    ) -> Self {
        Self::new(Amplitude::principal(y), a, b, c)
    }

    /// Convenience constructor from integer parameters, all real.
    pub fn from_ints(y: i64, a: i64, b: i64, c: i64) -> Self {
        Self::with_square(y.into(), a.into(), b.into(), c.into())
    }

    pub fn zero() -> Self {
        GaussQuad {
            amp: Amplitude::zero(),
            a: ComplexRational::zero(),
            b: ComplexRational::zero(),
            c: ComplexRational::zero(),
        }
    }

    /// The constant function 1.
    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    /// `exp(-c·u²)`; with `c = ±i` this is the pure chirp used by Bluestein's identity.
    pub fn chirp(c: ComplexRational) -> Self {
        Self::new(Amplitude::one(), ComplexRational::zero(), ComplexRational::zero(), c)
    }

    pub fn from_simple(g: &SimpleGauss) -> Self {
        Self::with_square(
            g.y().clone().into(),
            ComplexRational::zero(),
            ComplexRational::zero(),
            g.c().clone().into(),
        )
    }

    pub fn amp(&self) -> &Amplitude {
        &self.amp
    }

    pub fn a(&self) -> &ComplexRational {
        &self.a
    }

    pub fn b(&self) -> &ComplexRational {
        &self.b
    }

    pub fn c(&self) -> &ComplexRational {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.amp.is_zero()
    }

    /// `Re c > 0`: localized in time; every integral transform converges.
    pub fn is_chirplet(&self) -> bool {
        self.c.re.is_positive()
    }

    pub fn with_amp(&self, amp: Amplitude) -> Self {
        Self::new(amp, self.a.clone(), self.b.clone(), self.c.clone())
    }

    /// Same exponent, amplitude 1.
    pub fn unit(&self) -> Self {
        self.with_amp(Amplitude::one())
    }

    /// `x(t - k/√π)`.
    pub fn translate(&self, k: &Rational) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let slope = if mutation::active(Mutation::TranslateSlopeFactor) {
            self.c.scale(k)
        } else {
            self.c.scale(&(k * int(2)))
        };
        GaussQuad {
            amp: self.amp.clone(),
            a: &self.a - self.b.scale(k) + self.c.scale(&(k * k)),
            b: &self.b - slope,
            c: self.c.clone(),
        }
    }

    /// `x(t) · exp(2πi·(k/√π)·t)`.
    pub fn modulate(&self, k: &Rational) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        GaussQuad {
            b: &self.b - ComplexRational::imag(k * int(2)),
            ..self.clone()
        }
    }

    pub fn scale(&self, k: &ComplexRational) -> Self {
        self.with_amp(self.amp.mul(&Amplitude::from_scalar(k)))
    }

    /// `x(k·t)`.
    pub fn shrink(&self, k: &Rational) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::domain("shrink by 0 collapses the time axis"));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        Ok(GaussQuad {
            amp: self.amp.clone(),
            a: self.a.clone(),
            b: self.b.scale(k),
            c: self.c.scale(&(k * k)),
        })
    }

    /// Time reversal, `shrink(-1)`.
    pub fn reverse(&self) -> Self {
        self.shrink(&int(-1)).expect("-1 is a valid shrink factor")
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.amp.conj(), self.a.conj(), self.b.conj(), self.c.conj())
    }

    pub fn adjoint(&self) -> Self {
        self.conjugate().reverse()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            self.amp.mul(&other.amp),
            &self.a + &other.a,
            &self.b + &other.b,
            &self.c + &other.c,
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let k = ComplexRational::from(n as i64);
        Self::new(
            self.amp.pow(n),
            &self.a * &k,
            &self.b * &k,
            &self.c * &k,
        )
    }

    /// `∫ x(τ)·y(t-τ) dτ`, defined iff `Re(c0 + c1) > 0`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        let sum = &self.c + &other.c;
        if !sum.re.is_positive() {
            return Err(Error::divergent(format!("Re(c0+c1) ≤ 0 (c0+c1 = {sum})")));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let inv = sum.inv().expect("Re(sum) > 0");
        let db = &self.b - &other.b;
        let quarter = if mutation::active(Mutation::ConvolveOffsetQuarter) {
            int(1)
        } else {
            rat(1, 4)
        };
        let amp = self
            .amp
            .mul(&other.amp)
            .mul(&Amplitude::principal(inv.clone()));
        Ok(GaussQuad {
            amp,
            a: &self.a + &other.a - (&db * &db * &inv).scale(&quarter),
            b: (&self.b * &other.c + &other.b * &self.c) * &inv,
            c: &self.c * &other.c * &inv,
        })
    }

    /// `τ ↦ ∫ exp(-2πi·τ·t)·x(t) dt`, defined iff `Re c > 0`.
    pub fn fourier_analysis(&self) -> Result<Self> {
        self.require_chirplet("fourier_analysis")?;
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let inv = self.c.inv().expect("Re c > 0");
        let linear = if mutation::active(Mutation::FourierLinearSign) {
            ComplexRational::i()
        } else {
            -ComplexRational::i()
        };
        Ok(GaussQuad {
            amp: self.amp.mul(&Amplitude::principal(inv.clone())),
            a: &self.a - (&self.b * &self.b * &inv).scale(&rat(1, 4)),
            b: linear * &self.b * &inv,
            c: inv,
        })
    }

    /// `τ ↦ ∫ exp(2πi·τ·t)·x(t) dt`.
    pub fn fourier_synthesis(&self) -> Result<Self> {
        Ok(self.fourier_analysis()?.reverse())
    }

    pub(crate) fn require_chirplet(&self, op: &str) -> Result<()> {
        if self.is_chirplet() || self.is_zero() {
            Ok(())
        } else {
            Err(Error::divergent(format!(
                "{op} needs Re(c) > 0, got c = {}",
                self.c
            )))
        }
    }

    /// Fixed total order on the exponent: `c`, then `b`, then `a`.
    pub(crate) fn exponent_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.c
            .lex_cmp(&other.c)
            .then_with(|| self.b.lex_cmp(&other.b))
            .then_with(|| self.a.lex_cmp(&other.a))
    }

    pub(crate) fn same_exponent(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.c == other.c
    }
}

impl fmt::Display for GaussQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gauss(y={}", self.amp.square())?;
        if self.amp.negate() {
            write!(f, ", neg=true")?;
        }
        write!(f, ", a={}, b={}, c={})", self.a, self.b, self.c)
    }
}
