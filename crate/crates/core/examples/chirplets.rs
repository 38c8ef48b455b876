//! Translation, modulation and the Fourier transform of chirplets, and the
//! Bluestein factorisation of the transform into chirp products and a convolution.

use gaussalg::scalar::{rat, ComplexRational};
use gaussalg::{GaussMix, GaussQuad};

fn main() {
    let x = GaussMix::from_quad(GaussQuad::with_square(
        "2".parse().unwrap(),
        "0".parse().unwrap(),
        "1/2".parse().unwrap(),
        "1+i".parse().unwrap(),
    ));
    println!("x             = {x}");
    println!("translate 1   = {}", x.translate(&rat(1, 1)));
    println!("modulate 1/2  = {}", x.modulate(&rat(1, 2)));
    let fx = x.fourier_analysis().unwrap();
    println!("FA x          = {fx}");
    println!("FS FA x == x  : {}", fx.fourier_synthesis().unwrap().struct_eq(&x));

    let h = GaussMix::from_quad(GaussQuad::chirp(ComplexRational::i()));
    let hbar = GaussMix::from_quad(GaussQuad::chirp(-ComplexRational::i()));
    let bluestein = h.mul(&h.mul(&x).convolve(&hbar).unwrap());
    println!("h.((h.x) * conj h) = {bluestein}");
    println!("equals FA x   : {}", bluestein.struct_eq(&fx));
}
