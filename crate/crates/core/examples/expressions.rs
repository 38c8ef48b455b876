//! The expression language used by the command-line tool.

use gaussalg::expr::Evaluator;

fn main() {
    let ev = Evaluator::default();
    for text in [
        "conv(gauss(1,0,0,1), gauss(1,0,0,1))",
        "fourierA(translate(1/2, hermite(3)))",
        "gausspoly(gauss(2, 0, 0, 1+i), p=[1, 0, -1/2]) + gauss(1, 1)",
        "norm(2, gauss(9, 4))",
        "dot(hermite(1), hermite(1))",
        "conv(gauss(1,0,0,-1), gauss(1,0,0,1))",
        "gauss(1,0,0",
    ] {
        match ev.eval_str(text) {
            Ok(v) => println!("{text}\n  = {v}"),
            Err(e) => println!("{text}\n  ! {e}"),
        }
    }
}
