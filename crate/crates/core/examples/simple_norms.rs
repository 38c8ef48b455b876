//! Closed-form norms and variance of centred real Gaussians `√y·exp(-π·c·t²)`.

use gaussalg::numeric::{quadrature, EvalConfig};
use gaussalg::scalar::rat;
use gaussalg::{GaussMix, NormOrder, SimpleGauss};

fn main() {
    let cfg = EvalConfig::default();
    let g = SimpleGauss::new(rat(4, 1), rat(3, 2)).unwrap();
    println!("{g}");
    for p in [NormOrder::Finite(1), NormOrder::Finite(2), NormOrder::Finite(3), NormOrder::Infinity] {
        let n = g.norm(p).unwrap();
        println!("  norm {p:?}: {n} ~ {:.15}", n.to_f64());
    }
    let var = g.variance().unwrap();
    println!("  variance: {var} ~ {:.15}", var.to_f64());

    // ‖g‖₁ by quadrature, for comparison
    let q = quadrature(&GaussMix::from_simple(&g), &cfg).unwrap();
    println!("  quadrature of g: {:.15}", q.value.real().to_f64());

    let h = g.convolve(&g).unwrap();
    println!("g * g = {h}");
    println!("F g = {}", g.fourier().unwrap());
}
