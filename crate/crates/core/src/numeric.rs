//! High-precision numeric semantics of the exact signal classes: pointwise
//! evaluation, erf, adaptive quadrature, and the integral definitions of the
//! operations (used as an independent oracle for the exact parameter maps).

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::Sign;
use num_traits::ToPrimitive;
use rug::float::Constant;
use rug::integer::Order;
use rug::ops::Pow;
use rug::{Complex, Float, Integer};

use crate::error::{Error, Result};
use crate::mix::GaussMix;
use crate::poly::GaussPoly;
use crate::scalar::{Amplitude, ComplexRational, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct EvalConfig {
    pub precision_bits: u32,
    pub tolerance: f64,
    pub truncation_sigma: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            precision_bits: 128,
            tolerance: 1e-12,
            truncation_sigma: 12.0,
        }
    }
}

impl EvalConfig {
    pub fn new(precision_bits: u32, tolerance: f64, truncation_sigma: f64) -> Result<Self> {
        if precision_bits < 64 {
            return Err(Error::domain("precision must be at least 64 bits"));
        }
        if !(tolerance > 0.0) || !tolerance.is_finite() {
            return Err(Error::domain("tolerance must be a positive number"));
        }
        if !(truncation_sigma > 0.0) || !truncation_sigma.is_finite() {
            return Err(Error::domain("truncation_sigma must be a positive number"));
        }
        Ok(EvalConfig {
            precision_bits,
            tolerance,
            truncation_sigma,
        })
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision_bits = bits;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_truncation_sigma(mut self, sigma: f64) -> Self {
        self.truncation_sigma = sigma;
        self
    }

    fn prec(&self) -> u32 {
        self.precision_bits
    }
}

pub fn rational_to_rug(q: &Rational) -> rug::Rational {
    fn convert(n: &num_bigint::BigInt) -> Integer {
        let (sign, digits) = n.to_u32_digits();
        let mut i = Integer::from_digits(&digits, Order::Lsf);
        if sign == Sign::Minus {
            i = -i;
        }
        i
    }
    rug::Rational::from((convert(q.numer()), convert(q.denom())))
}

pub fn rational_to_float(q: &Rational, prec: u32) -> Float {
    Float::with_val(prec, rational_to_rug(q))
}

pub fn complex_to_rug(z: &ComplexRational, prec: u32) -> Complex {
    Complex::with_val(
        prec,
        (rational_to_rug(&z.re), rational_to_rug(&z.im)),
    )
}

/// `(-1)^negate · principal √square`.
pub fn amplitude_value(amp: &Amplitude, prec: u32) -> Complex {
    let root = complex_to_rug(amp.square(), prec + 16).sqrt();
    let root = Complex::with_val(prec, root);
    if amp.negate() {
        -root
    } else {
        root
    }
}

pub fn sqrt_pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi).sqrt()
}

/// One term with parameters converted to floating point.
#[derive(Clone, Debug)]
struct PreparedTerm {
    amp: Complex,
    a: Complex,
    b: Complex,
    c: Complex,
    poly: Vec<Complex>,
    decay: f64,
    center_u: f64,
    log_peak: f64,
    poly_abs: Vec<f64>,
}

impl PreparedTerm {
    fn new(term: &GaussPoly, prec: u32) -> Self {
        let core = term.core();
        let to_f64 = |q: &Rational| q.to_f64().unwrap_or(0.0);
        let decay = to_f64(&core.c().re);
        let rb = to_f64(&core.b().re);
        let ra = to_f64(&core.a().re);
        let amp = amplitude_value(core.amp(), prec);
        let amp_abs = Float::with_val(53, amp.abs_ref()).to_f64();
        let (center_u, log_peak) = if decay > 0.0 {
            let u0 = -rb / (2.0 * decay);
            (u0, amp_abs.ln() - ra + rb * rb / (4.0 * decay))
        } else {
            (0.0, amp_abs.ln() - ra)
        };
        PreparedTerm {
            amp,
            a: complex_to_rug(core.a(), prec),
            b: complex_to_rug(core.b(), prec),
            c: complex_to_rug(core.c(), prec),
            poly: term.poly().coeffs().iter().map(|p| complex_to_rug(p, prec)).collect(),
            decay,
            center_u,
            log_peak,
            poly_abs: term
                .poly()
                .coeffs()
                .iter()
                .map(|p| to_f64(&p.norm_sqr()).sqrt())
                .collect(),
        }
    }

    fn eval_u(&self, u: &Complex, prec: u32) -> Complex {
        let mut expo = Complex::with_val(prec, &self.c * u);
        expo += &self.b;
        expo *= u;
        expo += &self.a;
        let mut value = Complex::with_val(prec, -expo).exp();
        value *= &self.amp;
        let mut p = Complex::new(prec);
        for coeff in self.poly.iter().rev() {
            p *= u;
            p += coeff;
        }
        value * p
    }

    /// Half width in `u` beyond which `log|term| < log_floor`.
    fn half_width(&self, log_floor: f64, sigma: f64) -> Option<f64> {
        if self.decay <= 0.0 {
            return None;
        }
        let mut w = sigma / (2.0 * self.decay).sqrt();
        for _ in 0..200 {
            let reach = self.center_u.abs() + w;
            let poly_bound: f64 = self
                .poly_abs
                .iter()
                .enumerate()
                .map(|(j, c)| c * reach.powi(j as i32))
                .sum();
            let log_env = self.log_peak - self.decay * w * w + poly_bound.max(1e-300).ln();
            if log_env < log_floor {
                return Some(w);
            }
            w *= 1.25;
        }
        Some(w)
    }
}

/// A mixture prepared for repeated evaluation at fixed precision.
#[derive(Clone, Debug)]
pub struct NumericSignal {
    terms: Vec<PreparedTerm>,
    prec: u32,
    sqrt_pi: Float,
}

impl NumericSignal {
    pub fn new(x: &GaussMix, prec: u32) -> Self {
        NumericSignal {
            terms: x.terms().iter().map(|t| PreparedTerm::new(t, prec)).collect(),
            prec,
            sqrt_pi: sqrt_pi(prec),
        }
    }

    pub fn from_term(x: &GaussPoly, prec: u32) -> Self {
        NumericSignal {
            terms: vec![PreparedTerm::new(x, prec)],
            prec,
            sqrt_pi: sqrt_pi(prec),
        }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn eval(&self, t: &Float) -> Complex {
        let u = Complex::with_val(self.prec, t * &self.sqrt_pi);
        let mut sum = Complex::new(self.prec);
        for term in &self.terms {
            sum += term.eval_u(&u, self.prec);
        }
        sum
    }

    pub fn eval_f64(&self, t: f64) -> Complex {
        self.eval(&Float::with_val(self.prec, t))
    }

    /// Time interval outside which every term is below `tolerance·2^-10`.
    pub fn window(&self, cfg: &EvalConfig) -> Result<Window> {
        if self.terms.is_empty() {
            return Ok(Window { lo: 0.0, hi: 0.0 });
        }
        let log_floor = (cfg.tolerance * 2f64.powi(-10)).ln();
        let sp = std::f64::consts::PI.sqrt();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (i, term) in self.terms.iter().enumerate() {
            let w = term.half_width(log_floor, cfg.truncation_sigma).ok_or_else(|| {
                Error::in_term(i, Error::divergent("envelope does not decay (Re c ≤ 0)"))
            })?;
            lo = lo.min((term.center_u - w) / sp);
            hi = hi.max((term.center_u + w) / sp);
        }
        Ok(Window { lo, hi })
    }
}

pub fn eval_point(x: &GaussMix, t: &Float, cfg: &EvalConfig) -> Complex {
    NumericSignal::new(x, cfg.prec()).eval(t)
}

pub fn eval_point_f64(x: &GaussMix, t: f64, cfg: &EvalConfig) -> Complex {
    NumericSignal::new(x, cfg.prec()).eval_f64(t)
}

/// Closed integration interval in time units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn hull(self, other: Window) -> Window {
        Window {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// `{t - s : s ∈ self}`.
    pub fn reflect_at(self, t: f64) -> Window {
        Window {
            lo: t - self.hi,
            hi: t - self.lo,
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: Complex,
    pub error_estimate: f64,
}

const GL_ORDER: usize = 20;
const MAX_DEPTH: u32 = 48;

thread_local! {
    static GL_CACHE: RefCell<HashMap<u32, std::rc::Rc<Vec<(Float, Float)>>>> = RefCell::new(HashMap::new());
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
fn legendre_rule(prec: u32) -> std::rc::Rc<Vec<(Float, Float)>> {
    GL_CACHE.with(|cache| {
        cache
            .borrow_mut()
            .entry(prec)
            .or_insert_with(|| std::rc::Rc::new(compute_legendre_rule(GL_ORDER, prec)))
            .clone()
    })
}

fn compute_legendre_rule(n: usize, prec: u32) -> Vec<(Float, Float)> {
    let work = prec + 32;
    let pi = Float::with_val(work, Constant::Pi);
    let mut out = Vec::with_capacity(n);
    let eps = Float::with_val(work, Float::i_exp(1, -(prec as i32) - 8));
    for i in 1..=n {
        let angle = Float::with_val(work, &pi * (i as f64 - 0.25)) / (n as f64 + 0.5);
        let mut x = angle.cos();
        let mut deriv = Float::new(work);
        for _ in 0..100 {
            // three-term recurrence for P_n and its derivative
            let mut p0 = Float::with_val(work, 1);
            let mut p1 = x.clone();
            for k in 2..=n {
                let kf = k as f64;
                let p2 = (Float::with_val(work, &x * &p1) * (2.0 * kf - 1.0)
                    - Float::with_val(work, &p0 * (kf - 1.0)))
                    / kf;
                p0 = p1;
                p1 = p2;
            }
            let one_minus = Float::with_val(work, 1 - Float::with_val(work, &x * &x));
            deriv = Float::with_val(work, &x * &p1) - &p0;
            deriv = deriv * n as f64 / &one_minus;
            deriv = -deriv;
            let dx = Float::with_val(work, &p1 / &deriv);
            x -= &dx;
            if dx.abs() < eps {
                break;
            }
        }
        let one_minus = Float::with_val(work, 1 - Float::with_val(work, &x * &x));
        let w = Float::with_val(work, 2) / (one_minus * Float::with_val(work, &deriv * &deriv));
        out.push((Float::with_val(prec, x), Float::with_val(prec, w)));
    }
    out
}

fn gauss_legendre<F: Fn(&Float) -> Complex>(f: &F, lo: &Float, hi: &Float, prec: u32) -> Complex {
    let rule = legendre_rule(prec);
    let half = Float::with_val(prec, hi - lo) / 2;
    let mid = Float::with_val(prec, hi + lo) / 2;
    let mut sum = Complex::new(prec);
    for (x, w) in rule.iter() {
        let t = Float::with_val(prec, &half * x) + &mid;
        sum += f(&t) * w;
    }
    sum * half
}

fn adaptive<F: Fn(&Float) -> Complex>(
    f: &F,
    lo: Float,
    hi: Float,
    whole: Complex,
    tol: f64,
    depth: u32,
    prec: u32,
    err: &mut f64,
) -> Complex {
    let mid = Float::with_val(prec, &lo + &hi) / 2;
    let left = gauss_legendre(f, &lo, &mid, prec);
    let right = gauss_legendre(f, &mid, &hi, prec);
    let halves = Complex::with_val(prec, &left + &right);
    let diff = Float::with_val(53, Complex::with_val(prec, &halves - &whole).abs_ref()).to_f64();
    if diff <= tol || depth >= MAX_DEPTH {
        *err += diff;
        return halves;
    }
    let l = adaptive(f, lo, mid.clone(), left, tol / 2.0, depth + 1, prec, err);
    let r = adaptive(f, mid, hi, right, tol / 2.0, depth + 1, prec, err);
    l + r
}

/// Adaptive composite Gauss-Legendre quadrature of `f` over `window`.
pub fn quadrature_on<F: Fn(&Float) -> Complex>(f: F, window: Window, cfg: &EvalConfig) -> QuadResult {
    let prec = cfg.prec();
    if window.width() <= 0.0 {
        return QuadResult {
            value: Complex::new(prec),
            error_estimate: 0.0,
        };
    }
    const PANELS: usize = 16;
    let step = window.width() / PANELS as f64;
    let mut value = Complex::new(prec);
    let mut err = 0.0;
    for k in 0..PANELS {
        let lo = Float::with_val(prec, window.lo + step * k as f64);
        let hi = if k + 1 == PANELS {
            Float::with_val(prec, window.hi)
        } else {
            Float::with_val(prec, window.lo + step * (k + 1) as f64)
        };
        let whole = gauss_legendre(&f, &lo, &hi, prec);
        value += adaptive(&f, lo, hi, whole, cfg.tolerance / PANELS as f64 / 4.0, 0, prec, &mut err);
    }
    QuadResult {
        value,
        // truncation leaves at most tolerance·2^-10 per unit length outside
        error_estimate: err + cfg.tolerance * 2f64.powi(-10),
    }
}

/// `∫ x(t) dt` by quadrature over the decay window of `x`.
pub fn quadrature(x: &GaussMix, cfg: &EvalConfig) -> Result<QuadResult> {
    let signal = NumericSignal::new(x, cfg.prec());
    let window = signal.window(cfg)?;
    Ok(quadrature_on(|t| signal.eval(t), window, cfg))
}

/// erf by its Taylor series for `|z| ≤ 3` and the erfc continued fraction beyond.
pub fn erf_hp(z: &Float, cfg: &EvalConfig) -> Float {
    let prec = cfg.prec();
    let work = prec + 32;
    if z.is_zero() {
        return Float::new(prec);
    }
    let negative = z.is_sign_negative();
    let x = Float::with_val(work, z.abs_ref());
    let value = if x <= 3 {
        erf_series(&x, work)
    } else {
        1 - erfc_continued_fraction(&x, work)
    };
    let value = Float::with_val(prec, value);
    if negative {
        -value
    } else {
        value
    }
}

/// `erf x = 2/√π · e^{-x²} · Σ 2^n x^{2n+1} / (1·3···(2n+1))`; all terms positive.
fn erf_series(x: &Float, work: u32) -> Float {
    let x2 = Float::with_val(work, x * x);
    let mut term = x.clone();
    let mut sum = x.clone();
    let eps = Float::with_val(work, Float::i_exp(1, -(work as i32)));
    let mut n = 0u32;
    loop {
        n += 1;
        term = term * &x2 * 2u32 / (2 * n + 1);
        sum += &term;
        if Float::with_val(work, &term / &sum) < eps {
            break;
        }
    }
    let gauss = Float::with_val(work, -x2).exp();
    sum * gauss * 2u32 / sqrt_pi(work)
}

/// `erfc x = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))`, evaluated
/// backwards at increasing depth until two depths agree.
fn erfc_continued_fraction(x: &Float, work: u32) -> Float {
    let eval = |depth: u32| {
        let mut tail = Float::with_val(work, x);
        for k in (1..=depth).rev() {
            tail = Float::with_val(work, x) + Float::with_val(work, k) / 2u32 / tail;
        }
        Float::with_val(work, 1) / tail
    };
    let eps = Float::with_val(work, Float::i_exp(1, -(work as i32) + 8));
    let mut depth = 64;
    let mut prev = eval(depth);
    loop {
        depth *= 2;
        let next = eval(depth);
        let rel = Float::with_val(work, &next - &prev).abs() / &next;
        prev = next;
        if rel < eps || depth > 1 << 16 {
            break;
        }
    }
    let gauss = Float::with_val(work, x * x);
    (-gauss).exp() * prev / sqrt_pi(work)
}

/// `(1/√π)·∫ x du = ∫ x dt` in closed form for a decaying term, from the
/// remainder of [`GaussPoly::integrate`]: `s·amp·exp(-a + b²/(4c)) / √c`.
pub fn total_integral(x: &GaussPoly, prec: u32) -> Result<Complex> {
    if x.is_zero() {
        return Ok(Complex::new(prec));
    }
    let r = x.integrate()?;
    let core = x.core();
    let c = complex_to_rug(core.c(), prec + 16);
    let b = complex_to_rug(core.b(), prec + 16);
    let a = complex_to_rug(core.a(), prec + 16);
    let shift = Complex::with_val(prec + 16, &b * &b) / (Complex::with_val(prec + 16, &c * 4u32));
    let expo = Complex::with_val(prec + 16, shift - a).exp();
    let value = expo
        * amplitude_value(core.amp(), prec + 16)
        * complex_to_rug(&r.remainder, prec + 16)
        / c.sqrt();
    Ok(Complex::with_val(prec, value))
}

/// `∫_{-∞}^{T} x(t) dt` for a term with real `b` and real `c > 0`:
/// `s·amp·e^{-a+b²/4c}·(1 + erf(b/(2√c) + √c·√π·T))/(2√c) + f(T)·q(T)/√π`.
pub fn antiderivative(x: &GaussPoly, t: &Float, cfg: &EvalConfig) -> Result<Complex> {
    let prec = cfg.prec();
    if x.is_zero() {
        return Ok(Complex::new(prec));
    }
    let core = x.core();
    if !core.b().is_real() || !core.c().is_real() {
        return Err(Error::Unsupported(
            "antiderivative with complex b or c needs a complex erf".into(),
        ));
    }
    let r = x.integrate()?;
    let work = prec + 16;
    let c = rational_to_float(&core.c().re, work);
    let b = rational_to_float(&core.b().re, work);
    let sqrt_c = Float::with_val(work, c.sqrt_ref());
    let arg = Float::with_val(work, &b / &sqrt_c) / 2u32
        + Float::with_val(work, &sqrt_c * t) * sqrt_pi(work);
    let erf = erf_hp(&arg, &cfg.clone().with_precision(work));
    let a = complex_to_rug(core.a(), work);
    let shift = Float::with_val(work, &b * &b) / Float::with_val(work, &c * 4u32);
    let expo = Complex::with_val(work, shift - a).exp();
    let head = expo
        * amplitude_value(core.amp(), work)
        * complex_to_rug(&r.remainder, work)
        * (erf + 1u32)
        / (sqrt_c * 2u32);
    let fq = GaussPoly::new(core.clone(), r.q.clone());
    let tail = NumericSignal::from_term(&fq, work).eval(t) / sqrt_pi(work);
    Ok(Complex::with_val(prec, head + tail))
}

/// Equidistant samples of `x` on `[from, to]`.
#[derive(Clone, Debug)]
pub struct SampleTable {
    pub times: Vec<Float>,
    pub values: Vec<Complex>,
}

pub fn sample(x: &GaussMix, from: f64, to: f64, n: usize, cfg: &EvalConfig) -> Result<SampleTable> {
    if n < 2 {
        return Err(Error::domain("sampling needs at least 2 points"));
    }
    if !(from < to) {
        return Err(Error::domain("sampling interval must satisfy from < to"));
    }
    let prec = cfg.prec();
    let signal = NumericSignal::new(x, prec);
    let from_f = Float::with_val(prec, from);
    let step = Float::with_val(prec, Float::with_val(prec, to) - &from_f) / (n as u32 - 1);
    let mut times = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let t = if k + 1 == n {
            Float::with_val(prec, to)
        } else {
            Float::with_val(prec, &step * k as u32) + &from_f
        };
        values.push(signal.eval(&t));
        times.push(t);
    }
    Ok(SampleTable { times, values })
}

/// Decimal digits that read back to the same binary value.
pub fn exact_decimal(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, None)
}

impl SampleTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,re,im\n");
        for (t, v) in self.times.iter().zip(&self.values) {
            let _ = writeln!(
                out,
                "{},{},{}",
                exact_decimal(t),
                exact_decimal(v.real()),
                exact_decimal(v.imag())
            );
        }
        out
    }
}

/// `∫ x(τ)·y(t - τ) dτ` by quadrature.
pub fn convolution_integral(x: &GaussMix, y: &GaussMix, t: &Float, cfg: &EvalConfig) -> Result<QuadResult> {
    let prec = cfg.prec();
    let xs = NumericSignal::new(x, prec);
    let ys = NumericSignal::new(y, prec);
    let t64 = t.to_f64();
    let window = match (xs.window(cfg), ys.window(cfg)) {
        (Ok(wx), Ok(wy)) => wx.hull(wy.reflect_at(t64)),
        (Ok(w), Err(_)) => w,
        (Err(_), Ok(w)) => w.reflect_at(t64),
        (Err(e), Err(_)) => return Err(e),
    };
    Ok(quadrature_on(
        |tau| xs.eval(tau) * ys.eval(&Float::with_val(prec, t - tau)),
        window,
        cfg,
    ))
}

/// `∫ exp(∓2πi·τ·t)·x(t) dt`: analysis for `sign = -1`, synthesis for `sign = +1`.
pub fn fourier_integral(x: &GaussMix, tau: &Float, sign: i32, cfg: &EvalConfig) -> Result<QuadResult> {
    let prec = cfg.prec();
    let xs = NumericSignal::new(x, prec);
    let window = xs.window(cfg)?;
    let two_pi_tau = Float::with_val(prec, Constant::Pi) * tau * 2u32 * sign;
    Ok(quadrature_on(
        |t| {
            let phase = Complex::with_val(prec, (0, Float::with_val(prec, &two_pi_tau * t)));
            phase.exp() * xs.eval(t)
        },
        window,
        cfg,
    ))
}

/// `(1/√π)·x'(t)` by a central difference with step `2^(-prec/3)`.
pub fn scaled_derivative(x: &GaussMix, t: &Float, cfg: &EvalConfig) -> Complex {
    let prec = cfg.prec() + 32;
    let xs = NumericSignal::new(x, prec);
    let h = Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 3));
    let up = xs.eval(&Float::with_val(prec, t + &h));
    let down = xs.eval(&Float::with_val(prec, t - &h));
    let diff = Complex::with_val(prec, up - down);
    Complex::with_val(cfg.prec(), diff / (h * 2u32 * sqrt_pi(prec)))
}

/// Absolute difference of two complex values as an `f64`.
pub fn abs_diff(x: &Complex, y: &Complex) -> f64 {
    let d = Complex::with_val(x.prec().0.max(y.prec().0), x - y);
    Float::with_val(53, d.abs_ref()).to_f64()
}

pub fn abs(x: &Complex) -> f64 {
    Float::with_val(53, x.abs_ref()).to_f64()
}

/// Relative difference `|x - y| / max(|x|, |y|)`, computed in high precision.
pub fn rel_diff(x: &Complex, y: &Complex) -> f64 {
    let prec = x.prec().0.max(y.prec().0);
    let d = Float::with_val(prec, Complex::with_val(prec, x - y).abs_ref());
    let scale = Float::with_val(prec, x.abs_ref()).max(&Float::with_val(prec, y.abs_ref()));
    if scale.is_zero() {
        return d.to_f64();
    }
    Float::with_val(prec, d / scale).to_f64()
}

/// `q` raised to a power, used by the norm oracles.
pub fn float_pow(x: &Float, e: f64) -> Float {
    let prec = x.prec();
    Float::with_val(prec, x.pow(Float::with_val(prec, e)))
}
