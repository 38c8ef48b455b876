//! Exact antiderivatives: `x = s·f + D(f·q)` leaves only a multiple of the
//! bare Gaussian, whose antiderivative is an error function.

use gaussalg::numeric::{antiderivative, EvalConfig};
use gaussalg::poly::{GaussPoly, Poly};
use gaussalg::GaussQuad;

fn main() {
    let core = GaussQuad::from_ints(1, 0, 0, 1);
    let x = GaussPoly::new(core.clone(), Poly::from_ints(&[1, 0, 3, 0, 1]));
    let r = x.integrate().unwrap();
    println!("x = {x}");
    println!("s = {}, q = {}", r.remainder, r.q);
    println!("s.f + D(f.q) == x: {}", r.reconstruct(&core) == x);

    let cfg = EvalConfig::default();
    for t in [-1.0, 0.0, 0.5, 2.0] {
        let v = antiderivative(&x, &rug::Float::with_val(128, t), &cfg).unwrap();
        println!("  int_-inf^{t} x = {:.20}", v.real().to_f64());
    }
}
