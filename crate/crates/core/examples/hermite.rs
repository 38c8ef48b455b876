//! Hermite functions are eigenvectors of the Fourier transform with eigenvalue `(-i)^n`.

use gaussalg::scalar::ComplexRational;
use gaussalg::GaussMix;

fn main() {
    let minus_i = -ComplexRational::i();
    for n in 0..6 {
        let e = GaussMix::hermite(n);
        let fe = e.fourier_analysis().unwrap();
        let expected = e.scale(&minus_i.pow(n));
        println!("e_{n} = {e}");
        println!("  FA e_{n} = (-i)^{n} e_{n}: {}", fe.struct_eq(&expected));
    }
}
