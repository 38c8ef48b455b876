//! The algebraic laws of the signal operations as executable randomized checks.
//!
//! Exact laws compare canonical forms with [`GaussMix::struct_eq`]; laws that
//! involve scalar products or norms compare high-precision numbers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mix::GaussMix;
use crate::numeric::{self, EvalConfig, NumericSignal};
use crate::poly::{GaussPoly, Poly};
use crate::quad::GaussQuad;
use crate::scalar::{rat, Amplitude, ComplexRational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric(f64),
}

/// Randomly drawn inputs of one case.
#[derive(Clone, Debug)]
pub struct Case {
    pub x: GaussMix,
    pub y: GaussMix,
    pub z: GaussMix,
    /// Nonzero shrink factors.
    pub a: Rational,
    pub b: Rational,
    /// Translation and modulation amounts.
    pub k: Rational,
    pub l: Rational,
    pub s: ComplexRational,
    pub n: u32,
}

impl Case {
    pub fn render(&self) -> String {
        format!(
            "x = {}; y = {}; z = {}; a = {}; b = {}; k = {}; l = {}; s = {}; n = {}",
            self.x, self.y, self.z, self.a, self.b, self.k, self.l, self.s, self.n
        )
    }
}

/// The two sides of a law instance.
#[derive(Clone, Debug)]
pub enum Sides {
    Signals(GaussMix, GaussMix),
    Numbers(Complex, Complex),
}

type SidesFn = fn(&Case, &EvalConfig) -> Result<Sides>;

#[derive(Clone)]
pub struct Law {
    pub name: &'static str,
    pub statement: &'static str,
    pub arity: usize,
    pub mode: Mode,
    /// Regression rows that follow from the others.
    pub derived: bool,
    applicable: fn(&Case) -> bool,
    sides: SidesFn,
}

impl std::fmt::Debug for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Law")
            .field("name", &self.name)
            .field("statement", &self.statement)
            .field("mode", &self.mode)
            .finish()
    }
}

impl Law {
    pub fn is_applicable(&self, case: &Case) -> bool {
        (self.applicable)(case)
    }

    pub fn sides(&self, case: &Case, cfg: &EvalConfig) -> Result<Sides> {
        (self.sides)(case, cfg)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub case: usize,
    pub case_seed: u64,
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub law: String,
    pub mode: Mode,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        format!(
            "{verdict} {} ({} cases, {} failures)",
            self.law,
            self.cases,
            self.failures.len()
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    pub config: EvalConfig,
    /// Also compare both sides of exact laws pointwise at 16 points in [-3, 3].
    pub pointwise: bool,
}

const MAX_ATTEMPTS: usize = 1000;

pub fn check(law: &Law, cases: usize, seed: u64) -> Result<CheckReport> {
    check_with(law, cases, seed, &CheckOptions::default())
}

pub fn check_with(law: &Law, cases: usize, seed: u64, opts: &CheckOptions) -> Result<CheckReport> {
    if cases == 0 {
        return Err(Error::domain("cases must be at least 1"));
    }
    let mut failures = Vec::new();
    let mut attempts = 0usize;
    for case_index in 0..cases {
        let (case_seed, case) = loop {
            let case_seed = seed
                .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                .wrapping_add(attempts as u64)
                ^ name_hash(law.name);
            attempts += 1;
            let case = generate(&mut ChaCha8Rng::seed_from_u64(case_seed));
            if law.is_applicable(&case) {
                break (case_seed, case);
            }
            if attempts >= MAX_ATTEMPTS * (case_index + 1) {
                return Err(Error::GenerationExhausted {
                    law: law.name.to_string(),
                    attempts,
                });
            }
        };
        if let Some((lhs, rhs)) = evaluate_case(law, &case, opts) {
            failures.push(Failure {
                case: case_index,
                case_seed,
                inputs: case.render(),
                lhs,
                rhs,
            });
        }
    }
    Ok(CheckReport {
        law: law.name.to_string(),
        mode: law.mode,
        cases,
        failures,
    })
}

/// `None` when the case passes, otherwise renderings of both sides.
fn evaluate_case(law: &Law, case: &Case, opts: &CheckOptions) -> Option<(String, String)> {
    match law.sides(case, &opts.config) {
        Err(e) => Some((format!("error: {e}"), String::new())),
        Ok(Sides::Signals(lhs, rhs)) => {
            if !lhs.struct_eq(&rhs) {
                return Some((lhs.to_string(), rhs.to_string()));
            }
            if opts.pointwise {
                if let Some(t) = pointwise_mismatch(&lhs, &rhs, &opts.config) {
                    return Some((format!("{lhs} at t = {t}"), rhs.to_string()));
                }
            }
            None
        }
        Ok(Sides::Numbers(lhs, rhs)) => {
            let tol = match law.mode {
                Mode::Numeric(tol) => tol,
                Mode::Exact => 0.0,
            };
            let scale = numeric::abs(&lhs).max(numeric::abs(&rhs)).max(1.0);
            (numeric::abs_diff(&lhs, &rhs) > tol * scale).then(|| (lhs.to_string(), rhs.to_string()))
        }
    }
}

fn pointwise_mismatch(x: &GaussMix, y: &GaussMix, cfg: &EvalConfig) -> Option<f64> {
    let xs = NumericSignal::new(x, cfg.precision_bits);
    let ys = NumericSignal::new(y, cfg.precision_bits);
    (0..16).map(|j| -3.0 + 6.0 * j as f64 / 15.0).find(|&t| {
        let (u, v) = (xs.eval_f64(t), ys.eval_f64(t));
        let scale = numeric::abs(&u).max(1.0);
        numeric::abs_diff(&u, &v) > 1e-10 * scale
    })
}

fn name_hash(name: &str) -> u64 {
    // FNV-1a, stable across platforms and releases
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

fn small_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    let n = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(n, rng.gen_range(1..=3))
}

fn small_complex<R: Rng>(rng: &mut R) -> ComplexRational {
    let im = if rng.gen_bool(0.5) {
        small_rational(rng, 2, 2)
    } else {
        Rational::from_integer(0.into())
    };
    ComplexRational::new(small_rational(rng, 2, 2), im)
}

/// A chirplet core: `Re c ∈ [1/4, 4]`, small Gaussian-rational `a`, `b`, `c`.
pub fn random_core<R: Rng>(rng: &mut R) -> GaussQuad {
    let y = ComplexRational::new(
        rat(rng.gen_range(1..=4), rng.gen_range(1..=3)),
        if rng.gen_bool(0.3) { rat(rng.gen_range(-2..=2), 1) } else { rat(0, 1) },
    );
    let c = ComplexRational::new(
        rat(rng.gen_range(1..=4), rng.gen_range(1..=4)),
        if rng.gen_bool(0.5) { small_rational(rng, 2, 2) } else { rat(0, 1) },
    );
    GaussQuad::new(
        Amplitude::new(y, rng.gen_bool(0.3)),
        small_complex(rng),
        small_complex(rng),
        c,
    )
}

pub fn random_term<R: Rng>(rng: &mut R) -> GaussPoly {
    let degree = rng.gen_range(0..=2usize);
    let mut coeffs: Vec<ComplexRational> = (0..degree).map(|_| small_complex(rng)).collect();
    coeffs.push(ComplexRational::from_ints(rng.gen_range(1..=3), rng.gen_range(-1..=1)));
    GaussPoly::new(random_core(rng), Poly::new(coeffs))
}

pub fn random_mix<R: Rng>(rng: &mut R) -> GaussMix {
    let n = rng.gen_range(1..=3);
    GaussMix::from_terms((0..n).map(|_| random_term(rng)))
}

pub fn generate<R: Rng>(rng: &mut R) -> Case {
    Case {
        x: random_mix(rng),
        y: random_mix(rng),
        z: random_mix(rng),
        a: nonzero_rational(rng),
        b: nonzero_rational(rng),
        k: small_rational(rng, 4, 3),
        l: small_rational(rng, 4, 3),
        s: small_complex(rng),
        n: rng.gen_range(0..=8),
    }
}

fn signals(lhs: GaussMix, rhs: GaussMix) -> Result<Sides> {
    Ok(Sides::Signals(lhs, rhs))
}

fn always(_: &Case) -> bool {
    true
}

fn chirplets(c: &Case) -> bool {
    c.x.is_chirplet() && c.y.is_chirplet() && c.z.is_chirplet()
}

fn polynomial(coeffs: Vec<ComplexRational>) -> GaussMix {
    GaussMix::from_poly(GaussPoly::new(GaussQuad::one(), Poly::new(coeffs)))
}

fn abs_rational(q: &Rational) -> Rational {
    if q < &Rational::from_integer(0.into()) {
        -q.clone()
    } else {
        q.clone()
    }
}

/// `(∫ |x|²)^(1/2)` by quadrature of the pointwise modulus.
fn l2_norm(x: &GaussMix, cfg: &EvalConfig) -> Result<Complex> {
    let prec = cfg.precision_bits;
    let sig = NumericSignal::new(x, prec);
    let window = sig.window(cfg)?;
    let sq = numeric::quadrature_on(|t| Complex::with_val(prec, sig.eval(t).norm_ref()), window, cfg);
    Ok(Complex::with_val(prec, sq.value.real().clone().sqrt()))
}

macro_rules! law {
    ($name:expr, $stmt:expr, $arity:expr, $mode:expr, $derived:expr, $app:expr, $f:expr) => {
        Law {
            name: $name,
            statement: $stmt,
            arity: $arity,
            mode: $mode,
            derived: $derived,
            applicable: $app,
            sides: $f,
        }
    };
}

/// All registered laws.
pub fn catalogue() -> Vec<Law> {
    use Mode::*;
    vec![
        law!("add-comm", "x + y = y + x", 2, Exact, false, always, |c, _| signals(c.x.add(&c.y), c.y.add(&c.x))),
        law!("add-assoc", "(x + y) + z = x + (y + z)", 3, Exact, false, always, |c, _| {
            signals(c.x.add(&c.y).add(&c.z), c.x.add(&c.y.add(&c.z)))
        }),
        law!("add-zero", "x + 0 = x", 1, Exact, false, always, |c, _| signals(c.x.add(&GaussMix::zero()), c.x.clone())),
        law!("add-inverse", "x + (-1)·x = 0", 1, Exact, false, always, |c, _| {
            signals(c.x.add(&c.x.neg()), GaussMix::zero())
        }),
        law!("mul-comm", "x·y = y·x", 2, Exact, false, always, |c, _| signals(c.x.mul(&c.y), c.y.mul(&c.x))),
        law!("mul-assoc", "(x·y)·z = x·(y·z)", 3, Exact, false, always, |c, _| {
            signals(c.x.mul(&c.y).mul(&c.z), c.x.mul(&c.y.mul(&c.z)))
        }),
        law!("mul-one", "x·1 = x", 1, Exact, false, always, |c, _| signals(c.x.mul(&GaussMix::one()), c.x.clone())),
        law!("mul-distrib", "x·(y + z) = x·y + x·z", 3, Exact, false, always, |c, _| {
            signals(c.x.mul(&c.y.add(&c.z)), c.x.mul(&c.y).add(&c.x.mul(&c.z)))
        }),
        law!("conv-comm", "x*y = y*x", 2, Exact, true, chirplets, |c, _| {
            signals(c.x.convolve(&c.y)?, c.y.convolve(&c.x)?)
        }),
        law!("conv-assoc", "(x*y)*z = x*(y*z)", 3, Exact, true, chirplets, |c, _| {
            signals(c.x.convolve(&c.y)?.convolve(&c.z)?, c.x.convolve(&c.y.convolve(&c.z)?)?)
        }),
        law!("conv-distrib", "x*(y + z) = x*y + x*z", 3, Exact, true, chirplets, |c, _| {
            signals(c.x.convolve(&c.y.add(&c.z))?, c.x.convolve(&c.y)?.add(&c.x.convolve(&c.z)?))
        }),
        law!("scale-mul", "s·(x·y) = (s·x)·y", 2, Exact, false, always, |c, _| {
            signals(c.x.mul(&c.y).scale(&c.s), c.x.scale(&c.s).mul(&c.y))
        }),
        law!("translate-zero", "translate_0 x = x", 1, Exact, false, always, |c, _| {
            signals(c.x.translate(&rat(0, 1)), c.x.clone())
        }),
        law!("translate-compose", "translate_k (translate_l x) = translate_(k+l) x", 1, Exact, false, always, |c, _| {
            signals(c.x.translate(&c.l).translate(&c.k), c.x.translate(&(&c.k + &c.l)))
        }),
        law!("shrink-one", "shrink_1 x = x", 1, Exact, false, always, |c, _| signals(c.x.shrink(&rat(1, 1))?, c.x.clone())),
        law!("shrink-compose", "shrink_a (shrink_b x) = shrink_(a·b) x", 1, Exact, false, always, |c, _| {
            signals(c.x.shrink(&c.b)?.shrink(&c.a)?, c.x.shrink(&(&c.a * &c.b))?)
        }),
        law!("translate-shrink", "shrink_a (translate_k x) = translate_(k/a) (shrink_a x)", 1, Exact, false, always, |c, _| {
            signals(c.x.translate(&c.k).shrink(&c.a)?, c.x.shrink(&c.a)?.translate(&(&c.k / &c.a)))
        }),
        law!("translate-add", "translate_k (x + y) = translate_k x + translate_k y", 2, Exact, false, always, |c, _| {
            signals(c.x.add(&c.y).translate(&c.k), c.x.translate(&c.k).add(&c.y.translate(&c.k)))
        }),
        law!("translate-mul", "translate_k (x·y) = translate_k x · translate_k y", 2, Exact, false, always, |c, _| {
            signals(c.x.mul(&c.y).translate(&c.k), c.x.translate(&c.k).mul(&c.y.translate(&c.k)))
        }),
        law!("translate-conv", "translate_k (x*y) = x * translate_k y", 2, Exact, false, chirplets, |c, _| {
            signals(c.x.convolve(&c.y)?.translate(&c.k), c.x.convolve(&c.y.translate(&c.k))?)
        }),
        law!("shrink-add", "shrink_a (x + y) = shrink_a x + shrink_a y", 2, Exact, false, always, |c, _| {
            signals(c.x.add(&c.y).shrink(&c.a)?, c.x.shrink(&c.a)?.add(&c.y.shrink(&c.a)?))
        }),
        law!("shrink-mul", "shrink_a (x·y) = shrink_a x · shrink_a y", 2, Exact, false, always, |c, _| {
            signals(c.x.mul(&c.y).shrink(&c.a)?, c.x.shrink(&c.a)?.mul(&c.y.shrink(&c.a)?))
        }),
        law!("shrink-conv", "shrink_a (x*y) = |a|·(shrink_a x)*(shrink_a y)", 2, Exact, false, chirplets, |c, _| {
            let factor = ComplexRational::real(abs_rational(&c.a));
            signals(
                c.x.convolve(&c.y)?.shrink(&c.a)?,
                c.x.shrink(&c.a)?.convolve(&c.y.shrink(&c.a)?)?.scale(&factor),
            )
        }),
        law!("modulate-compose", "modulate_k (modulate_l x) = modulate_(k+l) x", 1, Exact, false, always, |c, _| {
            signals(c.x.modulate(&c.l).modulate(&c.k), c.x.modulate(&(&c.k + &c.l)))
        }),
        law!("modulate-mul", "modulate_k (x·y) = modulate_k x · y", 2, Exact, false, always, |c, _| {
            signals(c.x.mul(&c.y).modulate(&c.k), c.x.modulate(&c.k).mul(&c.y))
        }),
        law!("conj-involution", "conj (conj x) = x", 1, Exact, false, always, |c, _| {
            signals(c.x.conjugate().conjugate(), c.x.clone())
        }),
        law!("conj-mul", "conj (x·y) = conj x · conj y", 2, Exact, false, always, |c, _| {
            signals(c.x.mul(&c.y).conjugate(), c.x.conjugate().mul(&c.y.conjugate()))
        }),
        law!("adjoint-conv", "adjoint (x*y) = adjoint x * adjoint y", 2, Exact, true, chirplets, |c, _| {
            signals(c.x.convolve(&c.y)?.adjoint(), c.x.adjoint().convolve(&c.y.adjoint())?)
        }),
        law!("leibniz", "D(x·y) = D x · y + x · D y", 2, Exact, false, always, |c, _| {
            signals(
                c.x.mul(&c.y).differentiate(),
                c.x.differentiate().mul(&c.y).add(&c.x.mul(&c.y.differentiate())),
            )
        }),
        law!("conv-derivative", "D(x*y) = D x * y = x * D y", 2, Exact, true, chirplets, |c, _| {
            let lhs = c.x.convolve(&c.y)?.differentiate();
            let left = c.x.differentiate().convolve(&c.y)?;
            let right = c.x.convolve(&c.y.differentiate())?;
            if left.struct_eq(&right) {
                signals(lhs, left)
            } else {
                signals(left, right)
            }
        }),
        law!("fourier-add", "F(x + y) = F x + F y", 2, Exact, false, chirplets, |c, _| {
            signals(c.x.add(&c.y).fourier_analysis()?, c.x.fourier_analysis()?.add(&c.y.fourier_analysis()?))
        }),
        law!("fourier-scale", "F(s·x) = s·F x", 1, Exact, false, chirplets, |c, _| {
            signals(c.x.scale(&c.s).fourier_analysis()?, c.x.fourier_analysis()?.scale(&c.s))
        }),
        law!("convolution-theorem", "FA(x*y) = FA x · FA y, FS(x*y) = FS x · FS y", 2, Exact, false, chirplets, |c, _| {
            let analysis = (c.x.convolve(&c.y)?.fourier_analysis()?, c.x.fourier_analysis()?.mul(&c.y.fourier_analysis()?));
            if !analysis.0.struct_eq(&analysis.1) {
                return signals(analysis.0, analysis.1);
            }
            signals(c.x.convolve(&c.y)?.fourier_synthesis()?, c.x.fourier_synthesis()?.mul(&c.y.fourier_synthesis()?))
        }),
        law!("multiplication-theorem", "FA(x·y) = FA x * FA y", 2, Exact, false, chirplets, |c, _| {
            signals(c.x.mul(&c.y).fourier_analysis()?, c.x.fourier_analysis()?.convolve(&c.y.fourier_analysis()?)?)
        }),
        law!("inversion", "FS(FA x) = x", 1, Exact, false, chirplets, |c, _| {
            signals(c.x.fourier_analysis()?.fourier_synthesis()?, c.x.clone())
        }),
        law!("duality", "F(F x) = shrink_-1 x", 1, Exact, false, chirplets, |c, _| {
            let lhs = c.x.fourier_analysis()?.fourier_analysis()?;
            let synth = c.x.fourier_synthesis()?.fourier_synthesis()?;
            let rhs = c.x.shrink(&rat(-1, 1))?;
            if !synth.struct_eq(&rhs) {
                return signals(synth, rhs);
            }
            signals(lhs, rhs)
        }),
        law!("fourier-shrink", "F(shrink_a x) = (1/|a|)·shrink_(1/a) (F x)", 1, Exact, false, chirplets, |c, _| {
            let factor = ComplexRational::real(abs_rational(&c.a).recip());
            signals(
                c.x.shrink(&c.a)?.fourier_analysis()?,
                c.x.fourier_analysis()?.shrink(&c.a.recip())?.scale(&factor),
            )
        }),
        law!("fourier-translate", "FA(translate_k x) = modulate_-k (FA x), FS(translate_k x) = modulate_k (FS x)", 1, Exact, false, chirplets, |c, _| {
            let a = (c.x.translate(&c.k).fourier_analysis()?, c.x.fourier_analysis()?.modulate(&-c.k.clone()));
            if !a.0.struct_eq(&a.1) {
                return signals(a.0, a.1);
            }
            signals(c.x.translate(&c.k).fourier_synthesis()?, c.x.fourier_synthesis()?.modulate(&c.k))
        }),
        law!("fourier-modulate", "FA(modulate_k x) = translate_k (FA x)", 1, Exact, false, chirplets, |c, _| {
            signals(c.x.modulate(&c.k).fourier_analysis()?, c.x.fourier_analysis()?.translate(&c.k))
        }),
        law!("fourier-adjoint", "F(adjoint x) = conj (F x)", 1, Exact, false, chirplets, |c, _| {
            signals(c.x.adjoint().fourier_analysis()?, c.x.fourier_analysis()?.conjugate())
        }),
        law!("fourier-derivative", "FA(D x) = 2i·u·FA x", 1, Exact, false, chirplets, |c, _| {
            let ramp = polynomial(vec![ComplexRational::zero(), ComplexRational::from_ints(0, 2)]);
            signals(c.x.differentiate().fourier_analysis()?, ramp.mul(&c.x.fourier_analysis()?))
        }),
        law!("eigenfunction", "FA e_n = (-i)^n·e_n", 0, Exact, false, always, |c, _| {
            let e = GaussMix::hermite(c.n);
            signals(e.fourier_analysis()?, e.scale(&ComplexRational::from_ints(0, -1).pow(c.n)))
        }),
        law!("bluestein", "FA x = h·((h·x) * conj h), h = exp(-πit²)", 1, Exact, false, chirplets, |c, _| {
            let h = GaussMix::from_quad(GaussQuad::chirp(ComplexRational::i()));
            let hc = h.conjugate();
            signals(c.x.fourier_analysis()?, h.mul(&h.mul(&c.x).convolve(&hc)?))
        }),
        law!("unitarity", "<x, y> = <FS x, FS y>", 2, Numeric(1e-10), false, chirplets, |c, cfg| {
            let p = cfg.precision_bits;
            let lhs = c.x.scalar_product(&c.y, p)?;
            let rhs = c.x.fourier_synthesis()?.scalar_product(&c.y.fourier_synthesis()?, p)?;
            Ok(Sides::Numbers(lhs, rhs))
        }),
        law!("norm", "|FA x|_2 = |x|_2", 1, Numeric(1e-10), false, chirplets, |c, cfg| {
            let lhs = l2_norm(&c.x.fourier_analysis()?, cfg)?;
            let rhs = l2_norm(&c.x, cfg)?;
            Ok(Sides::Numbers(lhs, rhs))
        }),
    ]
}

pub fn find(name: &str) -> Option<Law> {
    catalogue().into_iter().find(|l| l.name == name)
}

/// Runs every law; stops at the first generation failure.
pub fn check_all(cases: usize, seed: u64, opts: &CheckOptions) -> Result<Vec<CheckReport>> {
    catalogue()
        .iter()
        .map(|law| check_with(law, cases, seed, opts))
        .collect()
}
