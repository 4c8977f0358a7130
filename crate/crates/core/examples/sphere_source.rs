// Construction from a curve given directly on the unit sphere.

use bertrand_curves::bertrand::{construct_bertrand, fit_bertrand_condition, BertrandParams};
use bertrand_curves::curve::CurveDef;
use bertrand_curves::spherical::SphereCurve;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // a spherical spiral wobbling around the equator
    let c = CurveDef::new(
        "wobble",
        "u",
        ["cos(u)*cos(0.3*sin(3*u))", "sin(u)*cos(0.3*sin(3*u))", "sin(0.3*sin(3*u))"],
        (0.0, 6.283185307179586),
    )?;
    let sphere = SphereCurve::new(c, 257)?;
    let p = BertrandParams::new(2.0, 1.0)?;
    let cc = construct_bertrand(&sphere, &p, 512)?;
    let fit = fit_bertrand_condition(&cc)?;
    let (a, b) = p.expected();
    println!("expected A={a:.8} B={b:.8}");
    println!("fitted   A={:.8} B={:.8} residual {:.1e} over {} samples", fit.a, fit.b, fit.residual, fit.samples);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
