// Corollary checks on a helix, a circle and the worked example.

use bertrand_curves::bertrand::{verify_corollaries, BertrandParams};
use bertrand_curves::curve::catalog;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = BertrandParams::default();
    for (name, params) in [("circular-helix", vec![2.0, 1.0]), ("circle", vec![]), ("paper-example", vec![])] {
        println!("{name}");
        for check in verify_corollaries(&catalog(name, &params)?, &p, 1e-6)? {
            println!("  {:<32} {}", check.name, check.status);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
