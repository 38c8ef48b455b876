//! Gaussians times polynomials in `u = √π·t`.
//!
//! The derivative used throughout is the scaled one, `D = (1/√π)·d/dt = d/du`,
//! which keeps every coefficient in `ℚ + iℚ`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::quad::GaussQuad;
use crate::scalar::{int, ComplexRational, Rational};

/// `Σ p_j · u^j`, without trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<ComplexRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<ComplexRational>) -> Self {
        while coeffs.last().is_some_and(ComplexRational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(ComplexRational::one())
    }

    pub fn constant(c: ComplexRational) -> Self {
        Poly::new(vec![c])
    }

    /// `k0 + k1·u`.
    pub fn linear(k0: ComplexRational, k1: ComplexRational) -> Self {
        Poly::new(vec![k0, k1])
    }

    pub fn coeffs(&self) -> &[ComplexRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ComplexRational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, j: usize) -> ComplexRational {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) + other.coeff(j)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&(-1).into()))
    }

    pub fn scale(&self, k: &ComplexRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ComplexRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + x * y;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Multiplication by `u`.
    pub fn shift_up(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ComplexRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(coeffs)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&int(j as i64)))
                .collect(),
        )
    }

    /// `u ↦ p(u - k)`.
    pub fn translate(&self, k: &Rational) -> Poly {
        let step = Poly::linear(ComplexRational::real(-k), ComplexRational::one());
        self.compose(&step)
    }

    /// `u ↦ p(k·u)`.
    pub fn dilate(&self, k: &Rational) -> Poly {
        let mut factor = int(1);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.scale(&factor));
            factor *= k;
        }
        Poly::new(coeffs)
    }

    pub fn conj(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(ComplexRational::conj).collect())
    }

    /// `p ∘ q` by Horner's scheme.
    pub fn compose(&self, q: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| acc.mul(q).add(&Poly::constant(c.clone())))
    }

    pub fn eval(&self, u: &ComplexRational) -> ComplexRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ComplexRational::zero(), |acc, c| acc * u + c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// `Dq - (b + 2c·u)·q`: the polynomial factor of `D(f·q)` for core exponent `(b, c)`.
fn derivative_factor(core: &GaussQuad, q: &Poly) -> Poly {
    let lin = Poly::linear(core.b().clone(), core.c().scale(&int(2)));
    q.derivative().sub(&lin.mul(q))
}

/// `f(α) · p(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussPoly {
    core: GaussQuad,
    poly: Poly,
}

/// `x = s·f(α) + D(f(α)·q)`, the exact part of an antiderivative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralResult {
    pub remainder: ComplexRational,
    pub q: Poly,
}

impl GaussPoly {
    pub fn new(core: GaussQuad, poly: Poly) -> Self {
        if core.is_zero() || poly.is_zero() {
            GaussPoly::zero()
        } else {
            GaussPoly { core, poly }
        }
    }

    pub fn zero() -> Self {
        GaussPoly {
            core: GaussQuad::zero(),
            poly: Poly::zero(),
        }
    }

    pub fn from_quad(core: GaussQuad) -> Self {
        GaussPoly::new(core, Poly::one())
    }

    pub fn core(&self) -> &GaussQuad {
        &self.core
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn translate(&self, k: &Rational) -> Self {
        GaussPoly::new(self.core.translate(k), self.poly.translate(k))
    }

    pub fn modulate(&self, k: &Rational) -> Self {
        GaussPoly::new(self.core.modulate(k), self.poly.clone())
    }

    pub fn scale(&self, k: &ComplexRational) -> Self {
        GaussPoly::new(self.core.scale(k), self.poly.clone())
    }

    pub fn shrink(&self, k: &Rational) -> Result<Self> {
        Ok(GaussPoly::new(self.core.shrink(k)?, self.poly.dilate(k)))
    }

    pub fn reverse(&self) -> Self {
        self.shrink(&int(-1)).expect("-1 is a valid shrink factor")
    }

    pub fn conjugate(&self) -> Self {
        GaussPoly::new(self.core.conjugate(), self.poly.conj())
    }

    pub fn adjoint(&self) -> Self {
        self.conjugate().reverse()
    }

    pub fn mul(&self, other: &Self) -> Self {
        GaussPoly::new(self.core.mul(&other.core), self.poly.mul(&other.poly))
    }

    pub fn pow(&self, n: u32) -> Self {
        GaussPoly::new(self.core.pow(n), self.poly.pow(n))
    }

    /// Scaled derivative `D x = (1/√π)·x'`.
    pub fn differentiate(&self) -> Self {
        GaussPoly::new(self.core.clone(), derivative_factor(&self.core, &self.poly))
    }

    /// Recursion on `p = s : rest`, i.e. `p(u) = s + u·rest(u)`:
    /// `FA(f·p) = s·FA(f) + (i/2)·D(FA(f·rest))`.
    pub fn fourier_analysis(&self) -> Result<Self> {
        self.core.require_chirplet("fourier_analysis")?;
        if self.is_zero() {
            return Ok(GaussPoly::zero());
        }
        let core = self.core.fourier_analysis()?;
        let half_i = ComplexRational::new(Rational::zero(), crate::scalar::rat(1, 2));
        let poly = self.poly.coeffs().iter().rev().fold(Poly::zero(), |acc, s| {
            derivative_factor(&core, &acc)
                .scale(&half_i)
                .add(&Poly::constant(s.clone()))
        });
        Ok(GaussPoly::new(core, poly))
    }

    pub fn fourier_synthesis(&self) -> Result<Self> {
        Ok(self.fourier_analysis()?.reverse())
    }

    /// `FS(FA x · FA y)` when both cores are chirplets, otherwise the direct
    /// Gaussian-moment evaluation of the convolution integral.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.core.is_chirplet() && other.core.is_chirplet() {
            self.convolve_via_fourier(other)
        } else {
            self.convolve_direct(other)
        }
    }

    pub fn convolve_via_fourier(&self, other: &Self) -> Result<Self> {
        self.core.require_chirplet("convolve")?;
        other.core.require_chirplet("convolve")?;
        if self.is_zero() || other.is_zero() {
            return Ok(GaussPoly::zero());
        }
        self.fourier_analysis()?
            .mul(&other.fourier_analysis()?)
            .fourier_synthesis()
    }

    /// Completes the square in the integration variable and integrates the
    /// polynomial factor against the normalized Gaussian moments.
    pub fn convolve_direct(&self, other: &Self) -> Result<Self> {
        let core = self.core.convolve(&other.core)?;
        if self.is_zero() || other.is_zero() {
            return Ok(GaussPoly::zero());
        }
        let sum = self.core.c() + other.core.c();
        let inv2 = sum.scale(&int(2)).inv().expect("Re(sum) > 0");
        // w = z + m(u), m(u) = (b1 - b0 + 2·c1·u) / (2C)
        let m = Poly::linear(
            (other.core.b() - self.core.b()) * &inv2,
            other.core.c().scale(&int(2)) * &inv2,
        );
        // x-side argument z + m(u); y-side argument u - m(u) - z
        let left = Bivariate::linear_in_z(m.clone(), ComplexRational::one());
        let right = Bivariate::linear_in_z(
            Poly::linear(ComplexRational::zero(), ComplexRational::one()).sub(&m),
            (-1).into(),
        );
        let integrand = left.substitute_into(&self.poly).mul(&right.substitute_into(&other.poly));
        // E[z^(2k)] = (2k-1)!! / (2C)^k under exp(-C z^2) normalized
        let mut moment = ComplexRational::one();
        let mut poly = Poly::zero();
        for (k, coeff) in integrand.by_z_power.iter().enumerate() {
            if k % 2 == 1 {
                continue;
            }
            if k > 0 {
                moment = &moment * &inv2 * ComplexRational::from((k - 1) as i64);
            }
            poly = poly.add(&coeff.scale(&moment));
        }
        Ok(GaussPoly::new(core, poly))
    }

    /// Solves `p = s + Dq - (b + 2c·u)·q` from the leading coefficient down.
    pub fn integrate(&self) -> Result<IntegralResult> {
        let c = self.core.c();
        if self.is_zero() {
            return Ok(IntegralResult {
                remainder: ComplexRational::zero(),
                q: Poly::zero(),
            });
        }
        if c.is_zero() {
            return Err(Error::Unsupported(
                "antiderivative of an exponential envelope (c = 0)".into(),
            ));
        }
        if !c.re.is_positive() {
            return Err(Error::divergent(format!(
                "integrate needs Re(c) > 0, got c = {c}"
            )));
        }
        let n = self.poly.degree().expect("nonzero polynomial");
        let b = self.core.b();
        let inv2c = c.scale(&int(2)).inv().expect("c ≠ 0");
        let mut q = vec![ComplexRational::zero(); n];
        let get = |q: &[ComplexRational], j: usize| q.get(j).cloned().unwrap_or_default();
        // coefficient j of p: (j+1)·q_{j+1} - b·q_j - 2c·q_{j-1}
        for j in (1..=n).rev() {
            let rhs = get(&q, j + 1).scale(&int(j as i64 + 1)) - b * get(&q, j) - self.poly.coeff(j);
            q[j - 1] = rhs * &inv2c;
        }
        let remainder = self.poly.coeff(0) - get(&q, 1) + b * get(&q, 0);
        Ok(IntegralResult {
            remainder,
            q: Poly::new(q),
        })
    }

    /// `e_n = Dⁿ(f(1,0,0,2)) · f(1,0,0,-1)`, an eigenfunction of the Fourier
    /// transform with eigenvalue `(-i)ⁿ`.
    pub fn hermite(n: u32) -> Self {
        let mut x = GaussPoly::from_quad(GaussQuad::from_ints(1, 0, 0, 2));
        for _ in 0..n {
            x = x.differentiate();
        }
        x.mul(&GaussPoly::from_quad(GaussQuad::from_ints(1, 0, 0, -1)))
    }

    /// Same core, the polynomial replaced.
    pub fn with_poly(&self, poly: Poly) -> Self {
        GaussPoly::new(self.core.clone(), poly)
    }
}

impl IntegralResult {
    /// `s·f + D(f·q)`, which must reproduce the integrated signal.
    pub fn reconstruct(&self, core: &GaussQuad) -> GaussPoly {
        let fq = GaussPoly::new(core.clone(), self.q.clone()).differentiate();
        let s = GaussPoly::new(core.clone(), Poly::constant(self.remainder.clone()));
        GaussPoly::new(core.clone(), s.poly.add(&fq.poly))
    }
}

impl fmt::Display for GaussPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly == Poly::one() || self.is_zero() {
            write!(f, "{}", self.core)
        } else {
            write!(f, "gausspoly({}, p={})", self.core, self.poly)
        }
    }
}

/// Polynomial in `z` whose coefficients are polynomials in `u`.
struct Bivariate {
    by_z_power: Vec<Poly>,
}

impl Bivariate {
    fn linear_in_z(constant: Poly, z_coeff: ComplexRational) -> Self {
        Bivariate {
            by_z_power: vec![constant, Poly::constant(z_coeff)],
        }
    }

    fn one() -> Self {
        Bivariate {
            by_z_power: vec![Poly::one()],
        }
    }

    fn add(&self, other: &Bivariate) -> Bivariate {
        let n = self.by_z_power.len().max(other.by_z_power.len());
        let get = |v: &[Poly], k: usize| v.get(k).cloned().unwrap_or_default();
        Bivariate {
            by_z_power: (0..n)
                .map(|k| get(&self.by_z_power, k).add(&get(&other.by_z_power, k)))
                .collect(),
        }
    }

    fn mul(&self, other: &Bivariate) -> Bivariate {
        let mut out = vec![Poly::zero(); self.by_z_power.len() + other.by_z_power.len() - 1];
        for (i, x) in self.by_z_power.iter().enumerate() {
            for (j, y) in other.by_z_power.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        Bivariate { by_z_power: out }
    }

    fn scale(&self, k: &ComplexRational) -> Bivariate {
        Bivariate {
            by_z_power: self.by_z_power.iter().map(|p| p.scale(k)).collect(),
        }
    }

    /// `p(self)` by Horner's scheme.
    fn substitute_into(&self, p: &Poly) -> Bivariate {
        p.coeffs().iter().rev().fold(
            Bivariate {
                by_z_power: vec![Poly::zero()],
            },
            |acc, c| acc.mul(self).add(&Bivariate::one().scale(c)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn gauss() -> GaussQuad {
        GaussQuad::from_ints(1, 0, 0, 1)
    }

    fn gp(core: GaussQuad, p: &[i64]) -> GaussPoly {
        GaussPoly::new(core, Poly::from_ints(p))
    }

    #[test]
    fn poly_canonical_form() {
        assert_eq!(Poly::from_ints(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(Poly::from_ints(&[0, 0]).is_zero());
        assert_eq!(Poly::from_ints(&[0]).degree(), None);
    }

    #[test]
    fn poly_arithmetic() {
        let p = Poly::from_ints(&[1, 1]);
        assert_eq!(p.mul(&p), Poly::from_ints(&[1, 2, 1]));
        assert_eq!(p.pow(3), Poly::from_ints(&[1, 3, 3, 1]));
        assert_eq!(Poly::from_ints(&[5, 3, 2]).derivative(), Poly::from_ints(&[3, 4]));
        // (u - 1)^2 = u^2 - 2u + 1
        assert_eq!(Poly::from_ints(&[0, 0, 1]).translate(&int(1)), Poly::from_ints(&[1, -2, 1]));
        assert_eq!(Poly::from_ints(&[1, 1, 1]).dilate(&int(2)), Poly::from_ints(&[1, 2, 4]));
        assert_eq!(p.eval(&3.into()), 4.into());
    }

    #[test]
    fn differentiate_examples() {
        assert_eq!(gp(gauss(), &[1]).differentiate(), gp(gauss(), &[0, -2]));
        assert!(GaussPoly::zero().differentiate().is_zero());
    }

    #[test]
    fn leibniz_instance() {
        let x = gp(GaussQuad::from_ints(2, 1, 1, 1), &[1, 2]);
        let y = gp(GaussQuad::from_ints(3, 0, -1, 2), &[0, 1, 1]);
        let lhs = x.mul(&y).differentiate();
        let rhs_a = x.differentiate().mul(&y);
        let rhs_b = x.mul(&y.differentiate());
        assert_eq!(rhs_a.core(), rhs_b.core());
        assert_eq!(lhs, rhs_a.with_poly(rhs_a.poly().add(rhs_b.poly())));
    }

    #[test]
    fn fourier_examples() {
        assert_eq!(gp(gauss(), &[1]).fourier_analysis().unwrap(), gp(gauss(), &[1]));
        let e1 = gp(gauss(), &[0, -4]);
        let expected = GaussPoly::new(gauss(), Poly::new(vec![0.into(), ComplexRational::from_ints(0, 4)]));
        assert_eq!(e1.fourier_analysis().unwrap(), expected);
        assert!(GaussPoly::zero().fourier_analysis().unwrap().is_zero());
        let chirp = GaussPoly::from_quad(GaussQuad::chirp(ComplexRational::i()));
        assert!(chirp.fourier_analysis().is_err());
    }

    #[test]
    fn fourier_has_period_four() {
        let x = GaussPoly::new(
            GaussQuad::with_square(
                ComplexRational::from_ints(2, 1),
                rat(1, 2).into(),
                ComplexRational::from_ints(1, -1),
                ComplexRational::new(rat(3, 2), rat(1, 2)),
            ),
            Poly::new(vec![1.into(), ComplexRational::from_ints(0, 2), rat(1, 3).into()]),
        );
        let mut y = x.clone();
        for _ in 0..4 {
            y = y.fourier_analysis().unwrap();
        }
        assert_eq!(y, x);
    }

    #[test]
    fn convolve_examples() {
        let g = gp(gauss(), &[1]);
        let half = GaussQuad::with_square(rat(1, 2).into(), 0.into(), 0.into(), rat(1, 2).into());
        assert_eq!(g.convolve(&g).unwrap(), GaussPoly::from_quad(half));
        assert!(g.convolve(&GaussPoly::zero()).unwrap().is_zero());
    }

    #[test]
    fn convolution_routes_agree() {
        let x = GaussPoly::new(
            GaussQuad::with_square(3.into(), rat(1, 2).into(), ComplexRational::from_ints(1, 1), ComplexRational::new(int(2), rat(1, 3))),
            Poly::new(vec![1.into(), ComplexRational::from_ints(0, 2), rat(-1, 3).into()]),
        );
        let y = GaussPoly::new(
            GaussQuad::with_square(ComplexRational::from_ints(1, -1), 0.into(), rat(-1, 2).into(), ComplexRational::new(rat(1, 2), int(-1))),
            Poly::from_ints(&[2, 0, 1, 1]),
        );
        assert_eq!(x.convolve_via_fourier(&y).unwrap(), x.convolve_direct(&y).unwrap());
        assert_eq!(x.convolve_direct(&y).unwrap(), y.convolve_direct(&x).unwrap());
    }

    #[test]
    fn integrate_examples() {
        let r = gp(gauss(), &[0, 1]).integrate().unwrap();
        assert_eq!(r.remainder, ComplexRational::zero());
        assert_eq!(r.q, Poly::new(vec![rat(-1, 2).into()]));
        let r = gp(gauss(), &[1]).integrate().unwrap();
        assert_eq!(r.remainder, ComplexRational::one());
        assert!(r.q.is_zero());
        let exp_env = gp(GaussQuad::from_ints(1, 0, 1, 0), &[1]);
        assert!(matches!(exp_env.integrate(), Err(Error::Unsupported(_))));
        let growing = gp(GaussQuad::from_ints(1, 0, 0, -1), &[1]);
        assert!(matches!(growing.integrate(), Err(Error::Divergent(_))));
    }

    #[test]
    fn integrate_inverts_differentiate() {
        let x = GaussPoly::new(
            GaussQuad::with_square(2.into(), 1.into(), ComplexRational::from_ints(1, 2), ComplexRational::new(rat(1, 2), int(1))),
            Poly::new(vec![1.into(), 2.into(), ComplexRational::from_ints(0, 1), rat(5, 7).into()]),
        );
        let r = x.integrate().unwrap();
        assert_eq!(r.reconstruct(x.core()), x);
        let dx = x.differentiate();
        let r = dx.integrate().unwrap();
        assert_eq!(r.remainder, ComplexRational::zero());
        assert_eq!(r.q, *x.poly());
    }

    #[test]
    fn hermite_functions() {
        assert_eq!(GaussPoly::hermite(0), gp(gauss(), &[1]));
        assert_eq!(GaussPoly::hermite(1), gp(gauss(), &[0, -4]));
        let mut eigenvalue = ComplexRational::one();
        for n in 0..=8 {
            let e = GaussPoly::hermite(n);
            assert_eq!(e.poly().degree(), Some(n as usize));
            assert_eq!(e.fourier_analysis().unwrap(), e.with_poly(e.poly().scale(&eigenvalue)));
            eigenvalue = eigenvalue * -ComplexRational::i();
        }
    }

    #[test]
    fn lifted_operations() {
        let core = GaussQuad::from_ints(1, 0, 1, 1);
        let x = gp(core.clone(), &[0, 1]);
        assert_eq!(x.shrink(&int(2)).unwrap(), gp(core.shrink(&int(2)).unwrap(), &[0, 2]));
        let c = gp(core.clone(), &[1]);
        assert_eq!(c.translate(&rat(1, 3)), gp(core.translate(&rat(1, 3)), &[1]));
        let other = GaussQuad::from_ints(2, 1, 0, 3);
        assert_eq!(x.mul(&gp(other.clone(), &[0, 1])), gp(core.mul(&other), &[0, 0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(gp(gauss(), &[1]).to_string(), "gauss(y=1, a=0, b=0, c=1)");
        assert_eq!(
            gp(gauss(), &[0, -4]).to_string(),
            "gausspoly(gauss(y=1, a=0, b=0, c=1), p=[0, -4])"
        );
    }
}
