// Frenet apparatus of the worked example and helix classification of the
// catalog.

use bertrand_curves::curve::catalog;
use bertrand_curves::frenet::{classify_helix, frenet_apparatus, frenet_ode_residual};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = catalog("paper-example", &[])?;
    for t in [0.0, 1.0, 2.0, 3.0] {
        let f = frenet_apparatus(&c, t)?;
        println!(
            "t={t:.1} s={:.6} kappa={:.9} tau={:+.9} T=({:+.4},{:+.4},{:+.4})",
            f.s, f.kappa, f.tau, f.tangent.x, f.tangent.y, f.tangent.z
        );
    }
    let r1 = frenet_ode_residual(&c, 1.0, 1e-3)?;
    let r2 = frenet_ode_residual(&c, 1.0, 5e-4)?;
    println!("Frenet residual ratio under step halving: {:.3}", r1 / r2);

    for (name, params) in [("paper-example", vec![]), ("circular-helix", vec![2.0, 1.0]), ("circle", vec![])] {
        let r = classify_helix(&catalog(name, &params)?, 256, 1e-6)?;
        println!("{name}: {} (axis {:?})", r.kind, r.axis);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
