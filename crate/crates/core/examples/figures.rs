// Writes SVG views of the worked example, its tangent indicatrix and the
// Bertrand curve of that indicatrix into the temp directory.

use bertrand_curves::bertrand::{bertrand_from_indicatrix, BertrandParams};
use bertrand_curves::cli::curve_plot_data;
use bertrand_curves::curve::catalog;
use bertrand_curves::plot::{render_svg, PlotData, Projection};
use bertrand_curves::spherical::Indicatrix;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = catalog("paper-example", &[])?;
    let cc = bertrand_from_indicatrix(&c, Indicatrix::Tangent, &BertrandParams::default(), 512)?;
    let figures = [
        ("curve", curve_plot_data(&c, None, 400)?),
        ("tangent-indicatrix", curve_plot_data(&c, Some(Indicatrix::Tangent), 400)?),
        (
            "bertrand",
            PlotData {
                title: "Bertrand curve of the tangent indicatrix".into(),
                points: cc.samples.iter().map(|s| s.position).collect(),
                on_sphere: false,
            },
        ),
    ];
    let dir = std::env::temp_dir();
    for (name, data) in &figures {
        let path = dir.join(format!("bertrand-curves-{name}.svg"));
        std::fs::write(&path, render_svg(data, Projection::Iso)?)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
