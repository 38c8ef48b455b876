//! Rate-aware periodic signals: convolution and DFT scaled by the sampling
//! rate so the convolution theorem holds with no stray factors.

use gaussalg::discrete::PeriodicSignal;
use gaussalg::scalar::rat;

fn main() {
    let prec = 128;
    let x = PeriodicSignal::from_f64(rat(3, 2), &[(1.0, 0.0), (2.0, -1.0), (0.0, 0.5), (-1.0, 0.0)], prec).unwrap();
    let y = PeriodicSignal::from_f64(rat(3, 2), &[(0.5, 0.0), (0.0, 0.0), (1.0, 1.0), (2.0, 0.0)], prec).unwrap();
    let lhs = x.convolve(&y).unwrap().dft_analysis();
    let rhs = x.dft_analysis().mul(&y.dft_analysis()).unwrap();
    println!("F(x*y) vs Fx.Fy: {:e}", lhs.max_abs_diff(&rhs).unwrap());

    let p = PeriodicSignal::poisson_gaussian(4, prec);
    println!("periodized Gaussian fixed by the DFT: {:e}", p.dft_analysis().max_abs_diff(&p).unwrap());
    print!("{}", x.dft_analysis().to_csv());
}
