use std::process::ExitCode;

use bertrand_curves::bertrand::BertrandParams;
use bertrand_curves::cli::{
    cmd_analyze, cmd_bertrand, cmd_indicatrix, cmd_plot, cmd_verify, curve_plot_data, load_curve, CommandOutput,
    CurveInput, Source, Suite,
};
use bertrand_curves::plot::{read_csv_points, Projection};
use bertrand_curves::spherical::Indicatrix;
use bertrand_curves::{Error, Result, Vec3};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bertrand-curves", version, about = "Frenet frames, spherical indicatrices and Bertrand curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct CurveArgs {
    /// Catalog curve, `name[:p1,p2]` (paper-example, circular-helix, circle, line)
    #[arg(long)]
    catalog: Option<String>,
    /// Curve-spec file
    #[arg(long)]
    spec: Option<String>,
}

#[derive(Args, Clone)]
struct Output {
    /// CSV output path (stdout if omitted)
    #[arg(long)]
    out: Option<String>,
    /// JSON report path (stderr if omitted)
    #[arg(long)]
    report: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Frenet apparatus and helix classification
    Analyze {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Spherical indicatrix with geodesic curvature
    Indicatrix {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value = "T")]
        which: Indicatrix,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Bertrand curve of an indicatrix (or of the curve itself with --which sphere)
    Bertrand {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value = "T")]
        which: Source,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        a: f64,
        /// Angle in radians
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
        theta: f64,
        /// Integration constant `x,y,z`
        #[arg(long, default_value = "0,0,0", allow_negative_numbers = true)]
        c: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        sigma0: f64,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Numerical checks of the frame equations, indicatrix identities and corollaries
    Verify {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
        theta: f64,
        /// JSON report path (stdout if omitted)
        #[arg(long)]
        report: Option<String>,
    },
    /// SVG plot of a CSV (x,y,z or gx,gy,gz columns) or of a curve
    Plot {
        #[arg(long, conflicts_with_all = ["catalog", "spec"])]
        csv: Option<String>,
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long)]
        spec: Option<String>,
        /// Plot this indicatrix of the curve instead of the curve
        #[arg(long)]
        which: Option<Indicatrix>,
        #[arg(long, default_value = "iso")]
        projection: Projection,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long)]
        out: String,
    },
}

fn curve_input(catalog: Option<String>, spec: Option<String>) -> Result<CurveInput> {
    match (catalog, spec) {
        (Some(c), None) => Ok(CurveInput::Catalog(c)),
        (None, Some(s)) => Ok(CurveInput::Spec(s)),
        _ => Err(Error::InvalidArgument("give exactly one of --catalog or --spec".into())),
    }
}

fn parse_vec3(s: &str) -> Result<Vec3> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidArgument(format!("--c expects x,y,z, got `{s}`")))?;
    match parts[..] {
        [x, y, z] => Ok(Vec3::new(x, y, z)),
        _ => Err(Error::InvalidArgument(format!("--c expects x,y,z, got `{s}`"))),
    }
}

fn write_or(path: Option<&str>, text: &str, to_stdout: bool) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{p}: {e}"))),
        None if to_stdout => {
            print!("{text}");
            Ok(())
        }
        None => {
            eprint!("{text}");
            Ok(())
        }
    }
}

fn emit(out: &CommandOutput, output: &Output) -> Result<()> {
    if let Some(csv) = &out.csv {
        write_or(output.out.as_deref(), csv, true)?;
    }
    write_or(output.report.as_deref(), &out.report.to_json(), false)
}

fn run(cli: Cli, command: &str) -> Result<i32> {
    let out = match cli.command {
        Command::Analyze { curve, samples, tol, output } => {
            let c = load_curve(&curve_input(curve.catalog, curve.spec)?)?;
            let out = cmd_analyze(&c, samples, tol, command)?;
            emit(&out, &output)?;
            out
        }
        Command::Indicatrix { curve, which, samples, output } => {
            let c = load_curve(&curve_input(curve.catalog, curve.spec)?)?;
            let out = cmd_indicatrix(&c, which, samples, command)?;
            emit(&out, &output)?;
            out
        }
        Command::Bertrand { curve, which, a, theta, c: offset, sigma0, samples, tol, output } => {
            let c = load_curve(&curve_input(curve.catalog, curve.spec)?)?;
            let p = BertrandParams::new(a, theta)?
                .with_offset(parse_vec3(&offset)?)
                .with_sigma0(sigma0);
            let out = cmd_bertrand(&c, which, &p, samples, tol, command)?;
            emit(&out, &output)?;
            out
        }
        Command::Verify { curve, suite, tol, a, theta, report } => {
            let c = load_curve(&curve_input(curve.catalog, curve.spec)?)?;
            let p = BertrandParams::new(a, theta)?;
            let out = cmd_verify(&c, suite, &p, tol, command)?;
            write_or(report.as_deref(), &out.report.to_json(), true)?;
            out
        }
        Command::Plot { csv, catalog, spec, which, projection, samples, out } => {
            let data = match csv {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
                    read_csv_points(&text, &path)?
                }
                None => curve_plot_data(&load_curve(&curve_input(catalog, spec)?)?, which, samples)?,
            };
            let result = cmd_plot(&data, projection, command)?;
            write_or(Some(&out), result.svg.as_deref().unwrap_or_default(), true)?;
            result
        }
    };
    Ok(out.report.exit_code())
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let command = args.iter().skip(1).cloned().collect::<Vec<_>>().join(" ");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli, &command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
