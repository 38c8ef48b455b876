//! Exact square-root amplitudes: multiplying `±√y` values stays exact
//! because the sign flip of the principal branch is decided by `upper`.

use gaussalg::numeric::amplitude_value;
use gaussalg::scalar::{upper, Amplitude, ComplexRational};

fn main() {
    let pairs = [("-1", "-1"), ("i", "i"), ("-i", "-1"), ("1+2i", "3-i"), ("-4", "-9")];
    for (a, b) in pairs {
        let x = Amplitude::principal(a.parse::<ComplexRational>().unwrap());
        let y = Amplitude::principal(b.parse::<ComplexRational>().unwrap());
        let p = x.mul(&y);
        let exact = amplitude_value(&p, 64);
        let direct = amplitude_value(&x, 64) * amplitude_value(&y, 64);
        println!(
            "{x} * {y} = {p}   upper: {} {}   check: {:.6} vs {:.6}",
            upper(x.square()),
            upper(y.square()),
            exact,
            rug::Complex::with_val(64, direct)
        );
    }
}
