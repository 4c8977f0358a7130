// The four spherical indicatrices, their Sabban frames and circle fits.

use bertrand_curves::curve::catalog;
use bertrand_curves::spherical::{circle_fit, indicatrix, sabban_frame, Indicatrix, SphericalPath};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let curves = [("paper-example", vec![]), ("circular-helix", vec![1.0, 1.0])];
    for (name, params) in curves {
        let c = catalog(name, &params)?;
        for which in Indicatrix::ALL {
            let sc = match indicatrix(&c, which, 257) {
                Ok(sc) => sc,
                Err(e) => {
                    println!("{name} {which}: {e}");
                    continue;
                }
            };
            let (s0, s1) = sc.sigma_span();
            // B and C of the worked example have cusps at the midpoint, s = pi
            let at = sabban_frame(&sc, s0 + 0.37 * (s1 - s0))?;
            let fit = circle_fit(&sc, 256)?;
            println!(
                "{name} {which}: length {:.6}, kappa_g {:+.6}, circle rms {:.2e} at cos {:+.6}",
                s1 - s0,
                at.kappa_g,
                fit.rms_residual,
                fit.cos_angle
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
