//! High-precision point evaluation, quadrature and CSV sampling of exact signals.

use gaussalg::numeric::{eval_point, quadrature, sample, EvalConfig};
use gaussalg::GaussMix;

fn main() {
    let cfg = EvalConfig::default().with_precision(160);
    let x = GaussMix::hermite(2).modulate(&gaussalg::scalar::rat(1, 3));
    let t = rug::Float::with_val(160, 0.25);
    println!("x(0.25) = {}", eval_point(&x, &t, &cfg));
    let q = quadrature(&x, &cfg).unwrap();
    println!("int x   = {} (error estimate {:e})", q.value, q.error_estimate);
    println!("closed  = {}", x.total_integral(160).unwrap());
    print!("{}", sample(&x, -2.0, 2.0, 5, &cfg).unwrap().to_csv());
}
