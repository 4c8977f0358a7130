// Bertrand curve of the tangent indicatrix of the worked example, with the
// fitted constants of A*kappa + B*tau = 1.

use bertrand_curves::bertrand::{bertrand_from_indicatrix, fit_bertrand_condition, BertrandParams};
use bertrand_curves::curve::catalog;
use bertrand_curves::spherical::Indicatrix;
use bertrand_curves::Vec3;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = catalog("paper-example", &[])?;
    let p = BertrandParams::new(1.0, std::f64::consts::FRAC_PI_4)?.with_offset(Vec3::new(-1.0, 0.0, 0.0));
    for which in Indicatrix::ALL {
        let cc = bertrand_from_indicatrix(&c, which, &p, 512)?;
        let fit = fit_bertrand_condition(&cc)?;
        let end = cc.samples.last().unwrap().position;
        println!(
            "{which}: A={:.8} B={:.8} residual={:.1e} speed error={:.1e} end=({:+.5},{:+.5},{:+.5})",
            fit.a,
            fit.b,
            fit.residual,
            cc.speed_error(),
            end.x,
            end.y,
            end.z
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
