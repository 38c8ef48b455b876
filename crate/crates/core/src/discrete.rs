//! Discrete periodic signals that carry a sampling rate.
//!
//! Sums over one period are weighted by `1/rate`, which makes the discrete
//! convolution theorem and the inversion formula hold without extra factors.
//! Under this convention the neutral element of convolution is `rate·δ`.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use rug::float::Constant;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::numeric::{exact_decimal, rational_to_float};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicSignal {
    rate: Rational,
    values: Vec<Complex>,
}

impl PeriodicSignal {
    pub fn new(rate: Rational, values: Vec<Complex>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("a periodic signal needs at least one value"));
        }
        if !rate.is_positive() {
            return Err(Error::domain(format!("sampling rate {rate} must be positive")));
        }
        Ok(PeriodicSignal { rate, values })
    }

    pub fn from_f64(rate: Rational, values: &[(f64, f64)], prec: u32) -> Result<Self> {
        Self::new(rate, values.iter().map(|&v| Complex::with_val(prec, v)).collect())
    }

    /// `rate` at index 0, zero elsewhere.
    pub fn delta(rate: Rational, n: usize, prec: u32) -> Result<Self> {
        let mut values = vec![Complex::new(prec); n.max(1)];
        values[0] = Complex::with_val(prec, rational_to_float(&rate, prec));
        Self::new(rate, values)
    }

    pub fn rate(&self) -> &Rational {
        &self.rate
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn prec(&self) -> u32 {
        self.values.iter().map(|v| v.prec().0).max().unwrap_or(53)
    }

    fn inv_rate(&self, prec: u32) -> Float {
        rational_to_float(&self.rate.recip(), prec)
    }

    fn check_compatible(&self, other: &Self, op: &str) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::domain(format!(
                "{op}: period lengths differ ({} vs {})",
                self.len(),
                other.len()
            )));
        }
        if self.rate != other.rate {
            return Err(Error::domain(format!(
                "{op}: sampling rates differ ({} vs {})",
                self.rate, other.rate
            )));
        }
        Ok(())
    }

    /// `(x*y)_k = (1/rate)·Σ_j x_j·y_{k-j}`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "convolve")?;
        let n = self.len();
        let prec = self.prec().max(other.prec());
        let scale = self.inv_rate(prec);
        let values = (0..n)
            .map(|k| {
                let mut sum = Complex::new(prec);
                for j in 0..n {
                    sum += Complex::with_val(prec, &self.values[j] * &other.values[(k + n - j) % n]);
                }
                sum * &scale
            })
            .collect();
        Self::new(self.rate.clone(), values)
    }

    /// Pointwise product; the rate is shared.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "mul")?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| Complex::with_val(x.prec().0.max(y.prec().0), x * y))
            .collect();
        Self::new(self.rate.clone(), values)
    }

    fn transform(&self, sign: i32) -> Self {
        let n = self.len();
        let prec = self.prec() + 16;
        let scale = self.inv_rate(prec);
        let two_pi_n = Float::with_val(prec, Constant::Pi) * 2u32 / n as u32;
        // roots of unity indexed by (j·k mod n)
        let roots: Vec<Complex> = (0..n)
            .map(|m| {
                let angle = Float::with_val(prec, &two_pi_n * m as u32) * sign;
                Complex::with_val(prec, (Float::with_val(prec, 0), angle)).exp()
            })
            .collect();
        let values = (0..n)
            .map(|k| {
                let mut sum = Complex::new(prec);
                for (j, x) in self.values.iter().enumerate() {
                    sum += Complex::with_val(prec, &roots[(j * k) % n] * x);
                }
                Complex::with_val(self.prec(), sum * &scale)
            })
            .collect();
        PeriodicSignal {
            rate: Rational::from_integer((n as i64).into()) / &self.rate,
            values,
        }
    }

    /// `(1/rate)·Σ_j exp(-2πi·j·k/n)·x_j`, at rate `n/rate`.
    pub fn dft_analysis(&self) -> Self {
        self.transform(-1)
    }

    /// `(1/rate)·Σ_j exp(2πi·j·k/n)·x_j`, at rate `n/rate`.
    pub fn dft_synthesis(&self) -> Self {
        self.transform(1)
    }

    /// `(dilate_k x)_j = Σ_{l·k ≡ j} x_l`; indices never hit stay zero.
    pub fn dilate(&self, k: i64) -> Self {
        let n = self.len();
        let k = k.rem_euclid(n as i64) as usize;
        let prec = self.prec();
        let mut values = vec![Complex::new(prec); n];
        for (l, x) in self.values.iter().enumerate() {
            values[(l * k) % n] += x;
        }
        PeriodicSignal {
            rate: self.rate.clone(),
            values,
        }
    }

    /// Largest absolute difference of the values; rates must agree.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_compatible(other, "compare")?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| crate::numeric::abs_diff(x, y))
            .fold(0.0, f64::max))
    }

    /// Periodized Gaussian `x_j = Σ_{|m| ≤ 4} exp(-π·((j + m·n)/r)²)` on
    /// `n = r²` points at rate `r`, a fixed point of [`Self::dft_analysis`].
    pub fn poisson_gaussian(r: u32, prec: u32) -> Self {
        let n = (r * r) as i64;
        let pi = Float::with_val(prec, Constant::Pi);
        let values = (0..n)
            .map(|j| {
                let mut sum = Float::new(prec);
                for m in -4..=4i64 {
                    let s = Float::with_val(prec, j + m * n) / r;
                    sum += (-(Float::with_val(prec, &s * &s) * &pi)).exp();
                }
                Complex::with_val(prec, sum)
            })
            .collect();
        PeriodicSignal {
            rate: Rational::from_integer(r.into()),
            values,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# rate={}\nindex,re,im\n", self.rate);
        for (k, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{k},{},{}", exact_decimal(v.real()), exact_decimal(v.imag()));
        }
        out
    }

    /// Reads the format written by [`Self::to_csv`]; a missing rate header means rate 1.
    pub fn from_csv(text: &str, prec: u32) -> Result<Self> {
        let mut rate = Rational::one();
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line == "index,re,im" {
                continue;
            }
            if let Some(r) = line.strip_prefix("# rate=") {
                rate = r
                    .trim()
                    .parse()
                    .map_err(|_| Error::domain(format!("line {}: bad rate `{r}`", lineno + 1)))?;
                continue;
            }
            if line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let bad = || Error::domain(format!("line {}: expected `index,re,im`", lineno + 1));
            if fields.len() != 3 {
                return Err(bad());
            }
            let index: usize = fields[0].parse().map_err(|_| bad())?;
            if index != values.len() {
                return Err(Error::domain(format!(
                    "line {}: index {index} out of sequence",
                    lineno + 1
                )));
            }
            let re = Float::parse(fields[1]).map_err(|_| bad())?;
            let im = Float::parse(fields[2]).map_err(|_| bad())?;
            values.push(Complex::with_val(prec, (re, im)));
        }
        if rate.is_zero() {
            return Err(Error::domain("sampling rate must be positive"));
        }
        Self::new(rate, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    const P: u32 = 128;

    fn sig(rate: Rational, v: &[(f64, f64)]) -> PeriodicSignal {
        PeriodicSignal::from_f64(rate, v, P).unwrap()
    }

    #[test]
    fn convolution_examples() {
        let x = sig(int(1), &[(1.0, 0.0), (0.0, 0.0)]);
        let y = sig(int(1), &[(0.0, 0.0), (1.0, 0.0)]);
        let c = x.convolve(&y).unwrap();
        assert!(c.max_abs_diff(&y).unwrap() < 1e-30);

        let z = sig(rat(3, 2), &[(1.0, 2.0), (-0.5, 0.0), (0.25, -1.0)]);
        let d = PeriodicSignal::delta(rat(3, 2), 3, P).unwrap();
        assert!(z.convolve(&d).unwrap().max_abs_diff(&z).unwrap() < 1e-30);

        let w = sig(rat(3, 2), &[(0.0, 1.0), (2.0, 0.0), (1.0, 1.0)]);
        let zw = z.convolve(&w).unwrap();
        let wz = w.convolve(&z).unwrap();
        assert!(zw.max_abs_diff(&wz).unwrap() < 1e-12);
        assert!(z.convolve(&x).is_err());
        assert!(z.convolve(&sig(int(1), &[(0.0, 0.0); 3])).is_err());
    }

    #[test]
    fn inversion_and_single_point() {
        let x = sig(rat(2, 3), &[(1.0, 0.0), (2.0, -1.0), (0.0, 3.0), (-1.0, 0.5)]);
        let back = x.dft_analysis().dft_synthesis();
        assert_eq!(back.rate(), x.rate());
        assert!(back.max_abs_diff(&x).unwrap() < 1e-12);

        let one = sig(int(4), &[(2.0, 1.0)]);
        let t = one.dft_synthesis();
        assert_eq!(t.rate(), &rat(1, 4));
        assert!(crate::numeric::abs_diff(&t.values()[0], &Complex::with_val(P, (0.5, 0.25))) < 1e-30);
    }

    #[test]
    fn dilation_examples() {
        let x = sig(int(1), &[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (4.0, 0.0)]);
        assert_eq!(x.dilate(1), x);
        let d0 = x.dilate(0);
        assert_eq!(d0, sig(int(1), &[(10.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]));
        assert_eq!(x.dilate(2), sig(int(1), &[(4.0, 0.0), (0.0, 0.0), (6.0, 0.0), (0.0, 0.0)]));
        // not injective when gcd(k, n) > 1
        let y = sig(int(1), &[(3.0, 0.0), (2.0, 0.0), (1.0, 0.0), (4.0, 0.0)]);
        assert_ne!(x, y);
        assert_eq!(x.dilate(2), y.dilate(2));
    }

    #[test]
    fn csv_round_trip() {
        let x = sig(rat(5, 3), &[(1.0 / 3.0, -2.0), (0.0, 0.125)]);
        let text = x.to_csv();
        assert!(text.starts_with("# rate=5/3\nindex,re,im\n"));
        let back = PeriodicSignal::from_csv(&text, P).unwrap();
        assert_eq!(back, x);
        assert!(PeriodicSignal::from_csv("0,1,2\n2,0,0\n", P).is_err());
    }

    #[test]
    fn poisson_fixed_point() {
        let x = PeriodicSignal::poisson_gaussian(4, P);
        assert_eq!(x.len(), 16);
        assert!(x.dft_analysis().max_abs_diff(&x).unwrap() < 1e-9);
    }
}
