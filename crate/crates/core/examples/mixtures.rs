//! Finite sums of Gaussian terms: a ring under pointwise product and convolution,
//! with a canonical form that merges and orders terms.

use gaussalg::scalar::rat;
use gaussalg::{GaussMix, GaussQuad};

fn main() {
    let g = |y, a, b, c| GaussMix::from_quad(GaussQuad::from_ints(y, a, b, c));
    let x = g(1, 0, 0, 1).add(&g(4, 0, 0, 1));
    println!("sqrt1 f + sqrt4 f   = {x}");
    let y = g(1, 0, 1, 2).add(&g(2, 0, 0, 1).translate(&rat(1, 2)));
    println!("y                   = {y}");
    println!("x . y               = {}", x.mul(&y));
    println!("x * y               = {}", x.convolve(&y).unwrap());
    println!("D y                 = {}", y.differentiate());
    println!("adjoint y           = {}", y.adjoint());
    println!("<x, y>              = {:.20}", x.scalar_product(&y, 128).unwrap());
    println!("x - x is zero       : {}", x.sub(&x).is_zero());
}
