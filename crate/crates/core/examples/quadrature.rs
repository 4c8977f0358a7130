// Adaptive quadrature, cumulative tables and inversion of a monotone
// integral.

use bertrand_curves::numerics::{cumulative, integrate, invert_monotone, invert_monotone_with, QuadConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = QuadConfig::default();
    let pi = std::f64::consts::PI;
    let v: f64 = integrate(|x: f64| x.sin(), 0.0, pi, &cfg)?;
    println!("int_0^pi sin = {v:.15}");

    // complete elliptic integral E(1/2) via its integrand
    let f = |x: f64| (1.0 - 0.5 * x.sin().powi(2)).sqrt();
    let table = cumulative(f, 0.0, pi / 2.0, 33, &cfg)?;
    println!("E(1/2) = {:.15}", table.last_value());

    let half = 0.5 * table.last_value();
    let x_table = invert_monotone(&table, half)?;
    let x_exact = invert_monotone_with(&table, |x| Ok(f(x)), half, &cfg)?;
    println!("half-way point: table {x_table:.12}, refined {x_exact:.15}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
