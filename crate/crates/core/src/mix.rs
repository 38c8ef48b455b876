//! Finite sums of [`GaussPoly`] terms in canonical form.
//!
//! Canonical form:
//! - no zero terms;
//! - terms sharing `(a, b, c)` are merged whenever the ratio of their
//!   amplitudes lies in `ℚ + iℚ`;
//! - within a merged class, the amplitude is `1` if the class contains `1`,
//!   otherwise the polynomial is made monic and its leading coefficient moves
//!   into the amplitude;
//! - terms are sorted by `(c, b, a)` and then by amplitude.
//!
//! Each term is then a function of the denoted signal alone, so structural
//! equality of canonical forms coincides with equality of functions: the
//! exponentials `exp(-(a + b·u + c·u²))` for distinct `(a, b, c)` are linearly
//! independent over the algebraic numbers (Lindemann–Weierstrass), and two
//! amplitudes of the same exponent that stay unmerged are linearly
//! independent over `ℚ + iℚ`.

use std::cmp::Ordering;
use std::fmt;

use rug::Complex;

use crate::error::{Error, Result};
use crate::numeric;
use crate::poly::{GaussPoly, Poly};
use crate::quad::GaussQuad;
use crate::scalar::{Amplitude, ComplexRational, Rational};
use crate::simple::SimpleGauss;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussMix {
    terms: Vec<GaussPoly>,
}

impl GaussMix {
    pub fn zero() -> Self {
        GaussMix { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_quad(GaussQuad::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = GaussPoly>) -> Self {
        GaussMix {
            terms: canonicalize(terms.into_iter().collect()),
        }
    }

    pub fn from_poly(term: GaussPoly) -> Self {
        Self::from_terms([term])
    }

    pub fn from_quad(core: GaussQuad) -> Self {
        Self::from_poly(GaussPoly::from_quad(core))
    }

    pub fn from_simple(g: &SimpleGauss) -> Self {
        Self::from_quad(GaussQuad::from_simple(g))
    }

    pub fn hermite(n: u32) -> Self {
        Self::from_poly(GaussPoly::hermite(n))
    }

    pub fn terms(&self) -> &[GaussPoly] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every term has `Re c > 0`.
    pub fn is_chirplet(&self) -> bool {
        self.terms.iter().all(|t| t.core().is_chirplet())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-1).into())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &ComplexRational) -> Self {
        self.map(|t| t.scale(k))
    }

    pub fn translate(&self, k: &Rational) -> Self {
        self.map(|t| t.translate(k))
    }

    pub fn modulate(&self, k: &Rational) -> Self {
        self.map(|t| t.modulate(k))
    }

    pub fn shrink(&self, k: &Rational) -> Result<Self> {
        self.try_map(|t| t.shrink(k))
    }

    pub fn reverse(&self) -> Self {
        self.map(GaussPoly::reverse)
    }

    pub fn conjugate(&self) -> Self {
        self.map(GaussPoly::conjugate)
    }

    pub fn adjoint(&self) -> Self {
        self.map(GaussPoly::adjoint)
    }

    pub fn differentiate(&self) -> Self {
        self.map(GaussPoly::differentiate)
    }

    pub fn fourier_analysis(&self) -> Result<Self> {
        self.try_map(GaussPoly::fourier_analysis)
    }

    pub fn fourier_synthesis(&self) -> Result<Self> {
        self.try_map(GaussPoly::fourier_synthesis)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for x in &self.terms {
            for y in &other.terms {
                out.push(x.mul(y));
            }
        }
        Self::from_terms(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Bilinear expansion; a failing pair reports the index of its left term.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (i, x) in self.terms.iter().enumerate() {
            for y in &other.terms {
                out.push(x.convolve(y).map_err(|e| Error::in_term(i, e))?);
            }
        }
        Ok(Self::from_terms(out))
    }

    /// Equality of canonical forms.
    pub fn struct_eq(&self, other: &Self) -> bool {
        self == other
    }

    /// `∫ x(t)·conj(y(t)) dt` from the closed-form total integral of each
    /// product term.
    pub fn scalar_product(&self, other: &Self, prec: u32) -> Result<Complex> {
        let mut sum = Complex::new(prec);
        for (i, x) in self.terms.iter().enumerate() {
            for y in &other.terms {
                let term = x.mul(&y.conjugate());
                sum += numeric::total_integral(&term, prec).map_err(|e| Error::in_term(i, e))?;
            }
        }
        Ok(sum)
    }

    /// `∫ x(t) dt` in closed form.
    pub fn total_integral(&self, prec: u32) -> Result<Complex> {
        let mut sum = Complex::new(prec);
        for (i, x) in self.terms.iter().enumerate() {
            sum += numeric::total_integral(x, prec).map_err(|e| Error::in_term(i, e))?;
        }
        Ok(sum)
    }

    fn map(&self, f: impl Fn(&GaussPoly) -> GaussPoly) -> Self {
        Self::from_terms(self.terms.iter().map(f))
    }

    fn try_map(&self, f: impl Fn(&GaussPoly) -> Result<GaussPoly>) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| f(t).map_err(|e| Error::in_term(i, e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(terms))
    }
}

impl From<GaussPoly> for GaussMix {
    fn from(t: GaussPoly) -> Self {
        Self::from_poly(t)
    }
}

impl From<GaussQuad> for GaussMix {
    fn from(q: GaussQuad) -> Self {
        Self::from_quad(q)
    }
}

fn canonicalize(terms: Vec<GaussPoly>) -> Vec<GaussPoly> {
    let mut merged: Vec<GaussPoly> = Vec::with_capacity(terms.len());
    for term in terms.into_iter().filter(|t| !t.is_zero()) {
        let slot = merged.iter().position(|m| {
            m.core().same_exponent(term.core()) && term.core().amp().ratio(m.core().amp()).is_some()
        });
        match slot {
            Some(i) => {
                let r = term.core().amp().ratio(merged[i].core().amp()).expect("checked above");
                let poly = merged[i].poly().add(&term.poly().scale(&r));
                merged[i] = merged[i].with_poly(poly);
            }
            None => merged.push(term),
        }
    }
    let mut out: Vec<GaussPoly> = merged
        .into_iter()
        .filter(|t| !t.is_zero())
        .map(normalize)
        .collect();
    out.sort_by(term_cmp);
    out
}

/// Representative of `amp·p` within the amplitude class: amplitude 1 when the
/// amplitude is itself in `ℚ + iℚ`, monic polynomial otherwise.
fn normalize(t: GaussPoly) -> GaussPoly {
    let core = t.core();
    if let Some(value) = core.amp().exact_value() {
        let unit = core.unit();
        return GaussPoly::new(unit, t.poly().scale(&value));
    }
    let lead = t.poly().leading().expect("nonzero term").clone();
    if lead.is_one() {
        return t;
    }
    let amp = core.amp().mul(&Amplitude::from_scalar(&lead));
    let inv = lead.inv().expect("nonzero leading coefficient");
    GaussPoly::new(core.with_amp(amp), t.poly().scale(&inv))
}

fn term_cmp(x: &GaussPoly, y: &GaussPoly) -> Ordering {
    x.core()
        .exponent_cmp(y.core())
        .then_with(|| x.core().amp().square().lex_cmp(y.core().amp().square()))
        .then_with(|| x.core().amp().negate().cmp(&y.core().amp().negate()))
        .then_with(|| poly_cmp(x.poly(), y.poly()))
}

fn poly_cmp(x: &Poly, y: &Poly) -> Ordering {
    let (cx, cy) = (x.coeffs(), y.coeffs());
    cx.len().cmp(&cy.len()).then_with(|| {
        cx.iter()
            .zip(cy)
            .map(|(a, b)| a.lex_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

impl fmt::Display for GaussMix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "{}", GaussQuad::zero());
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
