//! Centred real Gaussians `√y · exp(-π·c·t²)` with `y, c ∈ ℚ`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGauss {
    y: Rational,
    c: Rational,
}

/// `mantissa^(1/root_degree) · π^pi_exponent`, the closed form of every
/// norm-like functional on [`SimpleGauss`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormValue {
    pub mantissa: Rational,
    pub root_degree: u32,
    pub pi_exponent: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormOrder {
    Finite(u32),
    Infinity,
}

impl SimpleGauss {
    /// Fails when `y < 0`; a zero amplitude normalizes `c` to 0.
    pub fn new(y: Rational, c: Rational) -> Result<Self> {
        if y.is_negative() {
            return Err(Error::domain(format!(
                "amplitude square y = {y} must be non-negative"
            )));
        }
        Ok(Self::canonical(y, c))
    }

    fn canonical(y: Rational, c: Rational) -> Self {
        if y.is_zero() {
            SimpleGauss {
                y,
                c: Rational::zero(),
            }
        } else {
            SimpleGauss { y, c }
        }
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.y.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Result<Self> {
        if k.is_negative() {
            return Err(Error::domain(
                "negative scale factor needs a sign; use the translated/modulated class",
            ));
        }
        Ok(Self::canonical(&self.y * k * k, self.c.clone()))
    }

    pub fn shrink(&self, k: &Rational) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::domain("shrink by 0 collapses the time axis"));
        }
        Ok(Self::canonical(self.y.clone(), &self.c * k * k))
    }

    pub fn conjugate(&self) -> Self {
        self.clone()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::canonical(&self.y * &other.y, &self.c + &other.c)
    }

    pub fn pow(&self, n: u32) -> Self {
        Self::canonical(Pow::pow(&self.y, n), &self.c * int(n as i64))
    }

    pub fn convolve(&self, other: &Self) -> Result<Self> {
        let sum = &self.c + &other.c;
        if !sum.is_positive() {
            return Err(Error::divergent(format!("c0+c1 = {sum} ≤ 0")));
        }
        Ok(Self::canonical(
            &self.y * &other.y / &sum,
            &self.c * &other.c / &sum,
        ))
    }

    /// Self-dual: analysis and synthesis coincide on even functions.
    pub fn fourier(&self) -> Result<Self> {
        self.require_decay("fourier")?;
        Ok(Self::canonical(&self.y / &self.c, self.c.recip()))
    }

    pub fn norm(&self, p: NormOrder) -> Result<NormValue> {
        match p {
            NormOrder::Infinity => Ok(NormValue::new(self.y.clone(), 2, 0)),
            NormOrder::Finite(0) => Err(Error::domain("norm order must be positive")),
            NormOrder::Finite(p) => {
                self.require_decay("norm")?;
                let mantissa = Pow::pow(&self.y, p) / (&self.c * int(p as i64));
                Ok(NormValue::new(mantissa, 2 * p, 0))
            }
        }
    }

    /// Second moment of `t ↦ f(t)` normalized by the first.
    pub fn variance(&self) -> Result<NormValue> {
        self.require_decay("variance")?;
        Ok(NormValue::new((&self.c * int(2)).recip(), 1, -1))
    }

    fn require_decay(&self, op: &str) -> Result<()> {
        if self.c.is_positive() {
            Ok(())
        } else {
            Err(Error::divergent(format!("{op} needs c > 0, got c = {}", self.c)))
        }
    }
}

impl fmt::Display for SimpleGauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gauss(y={}, c={})", self.y, self.c)
    }
}

impl NormValue {
    pub fn new(mantissa: Rational, root_degree: u32, pi_exponent: i32) -> Self {
        assert!(root_degree >= 1, "root degree must be positive");
        NormValue {
            mantissa,
            root_degree,
            pi_exponent,
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let m = self.mantissa.to_f64().unwrap_or(f64::NAN);
        m.powf(1.0 / self.root_degree as f64) * std::f64::consts::PI.powi(self.pi_exponent)
    }

    /// Value at `prec` bits.
    pub fn to_float(&self, prec: u32) -> rug::Float {
        use rug::float::Constant;
        use rug::ops::Pow;
        let m = crate::numeric::rational_to_float(&self.mantissa, prec);
        let root = m.root(self.root_degree);
        let pi = rug::Float::with_val(prec, Constant::Pi);
        root * pi.pow(self.pi_exponent)
    }

    /// Exact rational value when the root and the π power both vanish.
    pub fn exact(&self) -> Option<Rational> {
        if self.pi_exponent != 0 {
            return None;
        }
        let n = self.root_degree;
        let numer = nth_root(self.mantissa.numer(), n)?;
        let denom = nth_root(self.mantissa.denom(), n)?;
        Some(Rational::new(numer, denom))
    }
}

fn nth_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.nth_root(n);
    (Pow::pow(&r, n) == *x).then_some(r)
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "root({}, {})*pi^{}",
            self.mantissa, self.root_degree, self.pi_exponent
        )
    }
}

impl Default for NormValue {
    fn default() -> Self {
        NormValue::new(Rational::one(), 1, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn g(y: Rational, c: Rational) -> SimpleGauss {
        SimpleGauss::new(y, c).unwrap()
    }

    #[test]
    fn scale_and_shrink() {
        let f11 = g(int(1), int(1));
        assert_eq!(f11.scale(&int(2)).unwrap(), g(int(4), int(1)));
        assert_eq!(f11.scale(&int(1)).unwrap(), f11);
        assert_eq!(g(int(5), int(3)).scale(&int(0)).unwrap(), g(int(0), int(0)));
        assert!(matches!(f11.scale(&int(-1)), Err(Error::Domain(_))));

        assert_eq!(f11.shrink(&int(2)).unwrap(), g(int(1), int(4)));
        assert_eq!(f11.shrink(&int(-1)).unwrap(), f11);
        assert!(matches!(f11.shrink(&int(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_is_canonical() {
        assert_eq!(g(int(0), int(7)), g(int(0), int(0)));
        assert!(SimpleGauss::new(int(-1), int(1)).is_err());
    }

    #[test]
    fn products_and_powers() {
        let f11 = g(int(1), int(1));
        assert_eq!(f11.mul(&f11), g(int(1), int(2)));
        assert_eq!(g(int(4), int(1)).mul(&g(int(9), int(-1))), g(int(36), int(0)));
        assert_eq!(g(int(4), int(1)).pow(2), g(int(16), int(2)));
        assert_eq!(g(int(3), int(5)).pow(0), g(int(1), int(0)));
        assert_eq!(g(int(3), int(5)).pow(1), g(int(3), int(5)));
    }

    #[test]
    fn convolution_and_fourier() {
        let f11 = g(int(1), int(1));
        assert_eq!(f11.convolve(&f11).unwrap(), g(rat(1, 2), rat(1, 2)));
        assert_eq!(f11.convolve(&g(int(1), int(0))).unwrap(), g(int(1), int(0)));
        assert!(matches!(
            g(int(1), int(-1)).convolve(&f11),
            Err(Error::Divergent(_))
        ));
        assert_eq!(f11.fourier().unwrap(), f11);
        assert_eq!(g(int(1), int(4)).fourier().unwrap(), g(rat(1, 4), rat(1, 4)));
        let x = g(int(3), int(2));
        assert_eq!(x.fourier().unwrap().fourier().unwrap(), x);
        assert!(g(int(1), int(0)).fourier().is_err());
    }

    #[test]
    fn norms_and_variance() {
        let f11 = g(int(1), int(1));
        let n1 = f11.norm(NormOrder::Finite(1)).unwrap();
        assert_eq!(n1, NormValue::new(int(1), 2, 0));
        assert_eq!(n1.exact(), Some(int(1)));
        let ninf = g(int(4), int(1)).norm(NormOrder::Infinity).unwrap();
        assert_eq!(ninf, NormValue::new(int(4), 2, 0));
        assert_eq!(ninf.exact(), Some(int(2)));
        assert_eq!(f11.norm(NormOrder::Finite(2)).unwrap(), NormValue::new(rat(1, 2), 4, 0));
        assert_eq!(f11.variance().unwrap(), NormValue::new(rat(1, 2), 1, -1));
        assert_eq!(g(int(7), int(1)).variance().unwrap(), NormValue::new(rat(1, 2), 1, -1));
        assert_eq!(g(int(1), rat(1, 2)).variance().unwrap(), NormValue::new(int(1), 1, -1));
        assert!(g(int(1), int(0)).norm(NormOrder::Finite(1)).is_err());
        assert!(g(int(1), int(0)).norm(NormOrder::Infinity).is_ok());
        assert_eq!(n1.to_string(), "root(1, 2)*pi^0");
    }
}
