//! Randomized checking of the law catalogue.

use gaussalg::laws::{self, CheckOptions};

fn main() {
    let opts = CheckOptions::default();
    for name in ["convolution-theorem", "leibniz", "bluestein", "unitarity"] {
        let law = laws::find(name).unwrap();
        let report = laws::check_with(&law, 20, 7, &opts).unwrap();
        println!("{:<20} {}", law.statement, report.summary());
    }
    println!("{} laws in the catalogue", laws::catalogue().len());
}
