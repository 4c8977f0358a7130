// The slant-helix function psi along the worked example.

use bertrand_curves::curve::catalog;
use bertrand_curves::frenet::{frame_at, slant_psi};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = catalog("paper-example", &[])?;
    println!("{:>6} {:>12} {:>12}", "s", "tau/kappa", "psi");
    for k in 0..=12 {
        let s = std::f64::consts::PI * k as f64 / 6.0;
        let f = frame_at(&c, s)?;
        println!("{s:6.3} {:12.8} {:12.8}", f.tau / f.kappa, slant_psi(&c, s)?);
    }
    let h = catalog("circular-helix", &[1.0, 1.0])?;
    println!("helix psi(1) = {:e}", slant_psi(&h, 1.0)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
