//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gaussalg::discrete::PeriodicSignal;
use gaussalg::laws::{self, CheckOptions};
use gaussalg::mutation::{with_mutation, Mutation};
use gaussalg::numeric::{self, EvalConfig, NumericSignal};
use gaussalg::scalar::{rat, upper, Amplitude, ComplexRational, Rational};
use gaussalg::{GaussMix, GaussPoly, GaussQuad, NormOrder, Poly, SimpleGauss};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

const PREC: u32 = 128;

struct Outcome {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { passed: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { passed: false, detail: detail.into() }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn eigenfunction() -> Outcome {
    let g = GaussMix::from_quad(GaussQuad::from_ints(1, 0, 0, 1));
    let mut best = Duration::MAX;
    let mut same = true;
    for _ in 0..5 {
        let start = Instant::now();
        let f = g.fourier_analysis().unwrap();
        best = best.min(start.elapsed());
        same &= f.struct_eq(&g);
    }
    if !same {
        return fail("FA(gauss(1,0,0,1)) differs from its input");
    }
    if best >= Duration::from_millis(1) {
        return fail(format!("took {best:?}"));
    }
    pass(format!("structurally identical, {best:?}"))
}

fn convolution_theorem() -> Outcome {
    let mut r = rng(2);
    for i in 0..500 {
        let x = laws::random_mix(&mut r);
        let y = laws::random_mix(&mut r);
        let lhs = x.convolve(&y).and_then(|c| c.fourier_analysis());
        let rhs = x
            .fourier_analysis()
            .and_then(|fx| Ok(fx.mul(&y.fourier_analysis()?)));
        match (lhs, rhs) {
            (Ok(l), Ok(rr)) if l.struct_eq(&rr) => {}
            _ => return fail(format!("pair {i}: x = {x}; y = {y}")),
        }
    }
    pass("500 pairs, 0 failures")
}

fn axiom_suite() -> Outcome {
    let opts = CheckOptions::default();
    let mut failing = Vec::new();
    let catalogue = laws::catalogue();
    for law in &catalogue {
        match laws::check_with(law, 100, 1, &opts) {
            Ok(report) if report.passed() => {}
            Ok(report) => failing.push(report.summary()),
            Err(e) => failing.push(format!("{}: {e}", law.name)),
        }
    }
    if catalogue.len() < 28 {
        return fail(format!("only {} laws", catalogue.len()));
    }
    if failing.is_empty() {
        pass(format!("{} laws x 100 cases", catalogue.len()))
    } else {
        fail(failing.join("; "))
    }
}

fn hermite() -> Outcome {
    for n in 0..=8u32 {
        let e = GaussMix::hermite(n);
        let expected = e.scale(&ComplexRational::from_ints(0, -1).pow(n));
        if !e.fourier_analysis().unwrap().struct_eq(&expected) {
            return fail(format!("n = {n}"));
        }
    }
    let cfg = EvalConfig::default();
    let e3 = GaussMix::hermite(3);
    let scaled = NumericSignal::new(&e3.scale(&ComplexRational::from_ints(0, 1)), PREC);
    let mut worst: f64 = 0.0;
    for &tau in &[-1.3, -0.4, 0.0, 0.35, 0.9, 1.7] {
        let t = Float::with_val(PREC, tau);
        let q = numeric::fourier_integral(&e3, &t, -1, &cfg).unwrap();
        worst = worst.max(numeric::abs_diff(&q.value, &scaled.eval(&t)));
    }
    if worst > 1e-10 {
        return fail(format!("quadrature spot check off by {worst:e}"));
    }
    pass(format!("n = 0..8 exact; n = 3 quadrature error {worst:.1e}"))
}

fn random_poly_term(r: &mut ChaCha8Rng) -> GaussPoly {
    let degree = r.gen_range(0..=6usize);
    let coeffs = (0..=degree)
        .map(|_| ComplexRational::new(rat(r.gen_range(-5..=5), r.gen_range(1..=4)), rat(r.gen_range(-3..=3), r.gen_range(1..=3))))
        .collect();
    GaussPoly::new(laws::random_core(r), Poly::new(coeffs))
}

fn integration_round_trip() -> Outcome {
    let mut r = rng(5);
    for i in 0..200 {
        let x = random_poly_term(&mut r);
        let res = match x.integrate() {
            Ok(res) => res,
            Err(e) => return fail(format!("case {i}: {e}")),
        };
        if res.reconstruct(x.core()) != x {
            return fail(format!("case {i}: {x}"));
        }
    }
    pass("200 terms, deg <= 6")
}

fn oracle_consistency() -> Outcome {
    let cfg = EvalConfig::default();
    let mut r = rng(6);
    let sp = numeric::sqrt_pi(PREC);
    let mut worst = [0.0f64; 6];
    let names = ["convolve", "fourier_analysis", "mul", "translate", "modulate", "differentiate"];
    for _ in 0..50 {
        let x = laws::random_mix(&mut r);
        let y = laws::random_mix(&mut r);
        let k = rat(r.gen_range(-6..=6), r.gen_range(1..=3));
        let xs = NumericSignal::new(&x, PREC);
        let ys = NumericSignal::new(&y, PREC);
        let conv = NumericSignal::new(&x.convolve(&y).unwrap(), PREC);
        let fa = NumericSignal::new(&x.fourier_analysis().unwrap(), PREC);
        let prod = NumericSignal::new(&x.mul(&y), PREC);
        let tr = NumericSignal::new(&x.translate(&k), PREC);
        let md = NumericSignal::new(&x.modulate(&k), PREC);
        let df = NumericSignal::new(&x.differentiate(), PREC);
        let kf = numeric::rational_to_float(&k, PREC);
        let shift = Float::with_val(PREC, &kf / &sp);
        for _ in 0..16 {
            let t = Float::with_val(PREC, r.gen_range(-3.0..=3.0));
            let c = numeric::convolution_integral(&x, &y, &t, &cfg).unwrap().value;
            worst[0] = worst[0].max(numeric::abs_diff(&conv.eval(&t), &c));
            let f = numeric::fourier_integral(&x, &t, -1, &cfg).unwrap().value;
            worst[1] = worst[1].max(numeric::abs_diff(&fa.eval(&t), &f));
            let p = xs.eval(&t) * ys.eval(&t);
            worst[2] = worst[2].max(numeric::abs_diff(&prod.eval(&t), &p));
            let delayed = xs.eval(&Float::with_val(PREC, &t - &shift));
            worst[3] = worst[3].max(numeric::abs_diff(&tr.eval(&t), &delayed));
            // exp(2πi·(k/√π)·t)
            let phase = Float::with_val(PREC, Constant::Pi) * 2u32 * &shift * &t;
            let carrier = Complex::with_val(PREC, (Float::new(PREC), phase)).exp();
            let m = carrier * xs.eval(&t);
            worst[4] = worst[4].max(numeric::abs_diff(&md.eval(&t), &m));
            let d = numeric::scaled_derivative(&x, &t, &cfg);
            worst[5] = worst[5].max(numeric::abs_diff(&df.eval(&t), &d));
        }
    }
    let report = names
        .iter()
        .zip(worst)
        .map(|(n, w)| format!("{n} {w:.1e}"))
        .collect::<Vec<_>>()
        .join(", ");
    if worst.iter().all(|&w| w <= 1e-10) {
        pass(report)
    } else {
        fail(report)
    }
}

fn random_square(r: &mut ChaCha8Rng) -> ComplexRational {
    loop {
        let z = ComplexRational::new(
            rat(r.gen_range(-9..=9), r.gen_range(1..=5)),
            if r.gen_bool(0.2) { rat(0, 1) } else { rat(r.gen_range(-9..=9), r.gen_range(1..=5)) },
        );
        if !z.is_zero() {
            return z;
        }
    }
}

fn branch_rule() -> Outcome {
    let mut r = rng(7);
    let (mut upper_flip, mut lower_flip) = (0, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let x = Amplitude::new(random_square(&mut r), r.gen_bool(0.5));
        let y = Amplitude::new(random_square(&mut r), r.gen_bool(0.5));
        let product = x.mul(&y);
        let (u0, u1, up) = (upper(x.square()), upper(y.square()), upper(product.square()));
        if u0 && u1 && !up {
            upper_flip += 1;
        }
        if !u0 && !u1 && up {
            lower_flip += 1;
        }
        let expected = numeric::amplitude_value(&x, PREC) * numeric::amplitude_value(&y, PREC);
        worst = worst.max(numeric::rel_diff(&numeric::amplitude_value(&product, PREC), &Complex::with_val(PREC, expected)));
    }
    let detail = format!("max rel error {worst:.1e}, flips {upper_flip}/{lower_flip}");
    if worst <= 1e-30 && upper_flip > 0 && lower_flip > 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn bluestein() -> Outcome {
    let mut r = rng(8);
    let h = GaussQuad::chirp(ComplexRational::i());
    let hc = GaussQuad::chirp(-ComplexRational::i());
    for i in 0..100 {
        let x = laws::random_core(&mut r);
        let via = x.mul(&h).convolve(&hc).map(|c| c.mul(&h));
        if via.ok() != x.fourier_analysis().ok() {
            return fail(format!("chirplet {i}: {x}"));
        }
    }
    pass("100 chirplets")
}

fn norm_formulas() -> Outcome {
    let cfg = EvalConfig::default();
    let mut r = rng(9);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let y = rat(r.gen_range(1..=16), r.gen_range(1..=4));
        let c = rat(r.gen_range(1..=16), 4);
        let g = SimpleGauss::new(y.clone(), c.clone()).unwrap();
        let x = GaussMix::from_simple(&g);
        let sig = NumericSignal::new(&x, PREC);
        let window = sig.window(&cfg).unwrap();
        let magnitude = |t: &Float| Float::with_val(PREC, sig.eval(t).abs_ref());
        for p in [1u32, 2, 3] {
            let integral = numeric::quadrature_on(
                |t| Complex::with_val(PREC, magnitude(t).pow(p)),
                window,
                &cfg,
            );
            let numeric_norm = Float::with_val(PREC, integral.value.real().clone().pow(1.0 / p as f64));
            let exact = g.norm(NormOrder::Finite(p)).unwrap().to_float(PREC);
            worst = worst.max(Float::with_val(PREC, numeric_norm - exact).abs().to_f64());
        }
        let peak = magnitude(&Float::with_val(PREC, 0));
        let exact_inf = g.norm(NormOrder::Infinity).unwrap().to_float(PREC);
        worst = worst.max(Float::with_val(PREC, peak - exact_inf).abs().to_f64());
        let mass = numeric::quadrature_on(|t| sig.eval(t), window, &cfg).value;
        let second = numeric::quadrature_on(|t| sig.eval(t) * Float::with_val(PREC, t * t), window, &cfg).value;
        let var = Complex::with_val(PREC, second / mass);
        let exact_var = g.variance().unwrap().to_float(PREC);
        worst = worst.max(numeric::abs_diff(&var, &Complex::with_val(PREC, exact_var)));
    }
    let detail = format!("max error {worst:.1e}");
    if worst <= 1e-10 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn random_signal(r: &mut ChaCha8Rng, n: usize, rate: &Rational) -> PeriodicSignal {
    let values: Vec<(f64, f64)> = (0..n).map(|_| (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0))).collect();
    PeriodicSignal::from_f64(rate.clone(), &values, PREC).unwrap()
}

fn discrete_rate() -> Outcome {
    let mut r = rng(10);
    let mut worst_conv: f64 = 0.0;
    let mut worst_dil: f64 = 0.0;
    for n in 1..=16usize {
        let rate = rat(r.gen_range(1..=12), r.gen_range(1..=5));
        let x = random_signal(&mut r, n, &rate);
        let y = random_signal(&mut r, n, &rate);
        let lhs = x.convolve(&y).unwrap().dft_synthesis();
        let rhs = x.dft_synthesis().mul(&y.dft_synthesis()).unwrap();
        worst_conv = worst_conv.max(lhs.max_abs_diff(&rhs).unwrap());
        let fx = x.dft_analysis();
        for k in 0..n as i64 {
            let fd = x.dilate(k).dft_analysis();
            for m in 0..n {
                let idx = (k as usize * m) % n;
                worst_dil = worst_dil.max(numeric::abs_diff(&fd.values()[m], &fx.values()[idx]));
            }
        }
    }
    let p = PeriodicSignal::poisson_gaussian(4, PREC);
    let poisson = p.dft_analysis().max_abs_diff(&p).unwrap();
    let detail = format!("convolution {worst_conv:.1e}, dilation {worst_dil:.1e}, poisson {poisson:.1e}");
    if worst_conv <= 1e-12 && worst_dil <= 1e-9 && poisson <= 1e-9 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn mutation_guard() -> Outcome {
    let opts = CheckOptions::default();
    let catalogue = laws::catalogue();
    let mut lines = Vec::new();
    let mut all_caught = true;
    for m in Mutation::ALL {
        let failing = with_mutation(m, || {
            catalogue
                .iter()
                .filter(|law| {
                    laws::check_with(law, 100, 1, &opts)
                        .map(|r| !r.passed())
                        .unwrap_or(true)
                })
                .count()
        });
        all_caught &= failing >= 1;
        lines.push(format!("{} {failing}", m.name()));
    }
    let detail = format!("failing laws per mutation: {}", lines.join(", "));
    if all_caught {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 11] = [
        ("eigenfunction", eigenfunction, 1),
        ("convolution theorem", convolution_theorem, 10),
        ("axiom suite", axiom_suite, 60),
        ("hermite eigenrelation", hermite, 5),
        ("integration round trip", integration_round_trip, 5),
        ("oracle consistency", oracle_consistency, 120),
        ("branch rule", branch_rule, 5),
        ("bluestein", bluestein, 5),
        ("norm formulas", norm_formulas, 10),
        ("discrete rate convention", discrete_rate, 10),
        ("mutation guard", mutation_guard, 120),
    ];
    let mut failures = 0;
    for (i, (name, run, budget_s)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        // criterion 1 times itself in milliseconds
        if i > 0 && elapsed > Duration::from_secs(*budget_s) {
            outcome.passed = false;
            outcome.detail = format!("{} (over {budget_s} s budget)", outcome.detail);
        }
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!("[{verdict}] {:>2}. {name}: {} [{:.2?}]", i + 1, outcome.detail, elapsed);
        if !outcome.passed {
            failures += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
