//! Commands behind the `bertrand-curves` binary. Each returns a
//! [`RunReport`] plus the CSV or SVG text it produced; the binary only
//! parses arguments and writes files.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde_json::json;

use crate::bertrand::{
    bertrand_from_indicatrix, construct_bertrand, fit_bertrand_condition, verify_corollaries, BertrandParams,
    ConstructedCurve, FIT_TOL, CIRCLE_TOL,
};
use crate::curve::{catalog_ref, parse_spec, CurveDef};
use crate::error::{Error, Result};
use crate::frenet::{classify_helix, darboux_residual, frame_at, frenet_ode_residual, slant_psi, HelixKind};
use crate::numerics::{try_cumulative, uniform_grid, QuadConfig};
use crate::plot::{render_svg, PlotData, Projection};
use crate::report::{Check, RunReport, Status};
use crate::spherical::{
    circle_fit, darboux_normal_identity, darboux_tangent_check, indicatrix, normal_darboux_identity,
    sabban_frame, spherical_ode_residual, Indicatrix, SphereCurve, SphericalPath,
};
use crate::Vec3;

/// Where a curve comes from on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveInput {
    /// `name[:p1,p2]`.
    Catalog(String),
    /// Path of a curve-spec file.
    Spec(String),
}

pub fn load_curve(input: &CurveInput) -> Result<CurveDef> {
    match input {
        CurveInput::Catalog(name) => catalog_ref(name),
        CurveInput::Spec(path) => {
            let text = std::fs::read_to_string(Path::new(path))
                .map_err(|e| Error::Io(format!("{path}: {e}")))?;
            parse_spec(&text)
        }
    }
}

/// Source of a Bertrand construction: an indicatrix of the curve, or the
/// curve itself when it already lies on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Indicatrix(Indicatrix),
    Sphere,
}

impl FromStr for Source {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sphere" | "S" => Ok(Source::Sphere),
            other => other.parse().map(Source::Indicatrix).map_err(|_| {
                Error::InvalidArgument(format!("source must be T, N, B, C or sphere, got `{other}`"))
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub report: RunReport,
    pub csv: Option<String>,
    pub svg: Option<String>,
}

impl CommandOutput {
    fn report(report: RunReport) -> Self {
        CommandOutput {
            report,
            csv: None,
            svg: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Identities,
    Corollaries,
    Frames,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "identities" => Ok(Suite::Identities),
            "corollaries" => Ok(Suite::Corollaries),
            "frames" => Ok(Suite::Frames),
            other => Err(Error::InvalidArgument(format!(
                "suite must be all, identities, corollaries or frames, got `{other}`"
            ))),
        }
    }
}

fn csv_row(out: &mut String, values: &[f64]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{v:.16e}");
    }
    out.push('\n');
}

fn check_samples(n: usize) -> Result<()> {
    if n < 8 {
        return Err(Error::InvalidArgument("--samples must be at least 8".into()));
    }
    Ok(())
}

/// Frenet apparatus on `n` uniform parameter samples, plus the helix
/// classification.
pub fn cmd_analyze(c: &CurveDef, n: usize, tol: f64, command: &str) -> Result<CommandOutput> {
    check_samples(n)?;
    let (lo, hi) = c.domain();
    let arclength = try_cumulative(|t| c.speed(t), lo, hi, n, &QuadConfig::default())?;
    let mut csv = String::from("t,s,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau,psi\n");
    for (t, s) in arclength.grid().iter().zip(arclength.values()) {
        let p = c.position(*t)?;
        let f = frame_at(c, *t)?;
        let psi = slant_psi(c, *t)?;
        let mut row = vec![*t, *s, p.x, p.y, p.z];
        for v in [f.tangent, f.normal, f.binormal] {
            row.extend(v.iter());
        }
        row.extend([f.kappa, f.tau, psi]);
        csv_row(&mut csv, &row);
    }
    let helix = classify_helix(c, n, tol)?;
    let mut report = RunReport::new(command).with_digest(c.digest());
    report.push(Check::info("classification", helix.kind.as_str()));
    report.push(Check::info("helix report", serde_json::to_value(&helix).unwrap_or_default()));
    report.push(Check::info("arclength", arclength.last_value()));
    Ok(CommandOutput {
        report,
        csv: Some(csv),
        svg: None,
    })
}

/// Indicatrix samples on a uniform σ grid with geodesic curvature and a
/// circle fit. A degenerate indicatrix is reported as SKIP.
pub fn cmd_indicatrix(c: &CurveDef, which: Indicatrix, n: usize, command: &str) -> Result<CommandOutput> {
    check_samples(n)?;
    let mut report = RunReport::new(command).with_digest(c.digest());
    let path = match indicatrix(c, which, n) {
        Ok(p) => p,
        Err(e @ Error::DegenerateIndicatrix { .. }) => {
            report.push(Check::skip(format!("indicatrix {which}"), e.to_string()));
            return Ok(CommandOutput::report(report));
        }
        Err(e) => return Err(e),
    };
    let (s0, s1) = path.sigma_span();
    let mut csv = String::from("sigma,gx,gy,gz,kappa_g\n");
    let mut unit_err: f64 = 0.0;
    for sigma in uniform_grid(s0, s1, n) {
        let s = sabban_frame(&path, sigma)?;
        unit_err = unit_err.max((s.gamma.norm() - 1.0).abs());
        csv_row(&mut csv, &[sigma, s.gamma.x, s.gamma.y, s.gamma.z, s.kappa_g]);
    }
    report.push(Check::info("sigma length", s1 - s0));
    report.push(Check::bound("unit norm", unit_err, 1e-9));
    match circle_fit(&path, n) {
        Ok(fit) => {
            report.push(Check::info(
                "circle fit",
                json!({
                    "axis": [fit.axis.x, fit.axis.y, fit.axis.z],
                    "cos_angle": fit.cos_angle,
                    "rms_residual": fit.rms_residual,
                    "is_circle": fit.rms_residual <= CIRCLE_TOL,
                }),
            ));
        }
        Err(e @ Error::DegenerateFit) => report.push(Check::skip("circle fit", e.to_string())),
        Err(e) => return Err(e),
    }
    Ok(CommandOutput {
        report,
        csv: Some(csv),
        svg: None,
    })
}

fn construct(c: &CurveDef, source: Source, p: &BertrandParams, n: usize) -> Result<ConstructedCurve> {
    match source {
        Source::Indicatrix(which) => bertrand_from_indicatrix(c, which, p, n),
        Source::Sphere => construct_bertrand(&SphereCurve::new(c.clone(), n)?, p, n),
    }
}

/// Bertrand curve of the chosen source with its fit summary.
pub fn cmd_bertrand(
    c: &CurveDef,
    source: Source,
    p: &BertrandParams,
    n: usize,
    tol: f64,
    command: &str,
) -> Result<CommandOutput> {
    check_samples(n)?;
    p.validate()?;
    let mut report = RunReport::new(command).with_digest(c.digest());
    let cc = match construct(c, source, p, n) {
        Ok(cc) => cc,
        Err(e @ Error::DegenerateIndicatrix { .. }) => {
            report.push(Check::skip("construction", e.to_string()));
            return Ok(CommandOutput::report(report));
        }
        Err(e) => return Err(e),
    };
    let mut csv = String::from("sigma,x,y,z,kappa,tau\n");
    for s in &cc.samples {
        csv_row(&mut csv, &[s.sigma, s.position.x, s.position.y, s.position.z, s.kappa, s.tau]);
    }
    report.push(Check::bound("constant speed", cc.speed_error(), 1e-7));
    if (p.theta - std::f64::consts::FRAC_PI_2).abs() < 1e-12 {
        report.push(Check::info("cot theta", 0.0).with_note(
            "theta = pi/2: the construction is a spherical integral, a Bertrand curve only in the plane-curve sense",
        ));
    }
    if cc.is_straight() {
        report.push(Check::skip(
            "bertrand fit",
            "constructed curve is a straight line (source geodesic curvature equals tan theta)",
        ));
    } else {
        report.push(Check::bound("principal normal alignment", cc.normal_alignment_error(), 1e-6));
        match fit_bertrand_condition(&cc) {
            Ok(fit) => {
                let (ea, eb) = fit.relative_error(p);
                report.push(
                    Check::bound("bertrand fit", fit.residual, FIT_TOL)
                        .with_value(json!({"A": fit.a, "B": fit.b, "residual": fit.residual, "samples": fit.samples})),
                );
                report.push(Check::bound("fit coefficients", ea.max(eb), 1e-4));
            }
            Err(Error::RankDeficient {
                kappa_mean,
                tau_mean,
                a,
                b,
                residual,
            }) => {
                report.push(
                    Check::bound("bertrand fit", residual, FIT_TOL)
                        .with_value(json!({"A": a, "B": b, "residual": residual}))
                        .with_note(format!(
                            "rank deficient: any A, B with A*{kappa_mean:.12} + B*{tau_mean:.12} = 1"
                        )),
                );
            }
            Err(e) => return Err(e),
        }
    }
    let r = cc.classify(tol);
    report.push(Check::info(
        "classification",
        json!({"kind": r.kind.as_str(), "kappa": r.kappa, "tau": r.tau}),
    ));
    Ok(CommandOutput {
        report,
        csv: Some(csv),
        svg: None,
    })
}

fn interior_points(c: &CurveDef) -> Vec<f64> {
    let (lo, hi) = c.domain();
    [0.23, 0.41, 0.67, 0.88].iter().map(|f| lo + f * (hi - lo)).collect()
}

fn ratio_check(name: &str, pairs: &[(f64, f64)]) -> Check {
    // residual pairs (r(h), r(h/2)); pairs already at roundoff are not informative
    let ratios: Vec<f64> = pairs
        .iter()
        .filter(|(a, _)| *a > 1e-11)
        .map(|(a, b)| a / b)
        .collect();
    if ratios.is_empty() {
        return Check::skip(name, "residuals at roundoff level");
    }
    let ok = ratios.iter().all(|r| (3.5..=4.5).contains(r));
    Check::new(
        name,
        if ok { Status::Pass } else { Status::Fail },
        json!(ratios),
        Some(0.5),
    )
    .with_note("ratio r(h)/r(h/2) must lie in [3.5, 4.5]")
}

fn frames_suite(c: &CurveDef) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let (lo, hi) = c.domain();
    if let Err(e) = frame_at(c, 0.5 * (lo + hi)) {
        out.push(Check::skip("frame orthonormality", e.to_string()));
        return Ok(out);
    }
    let (mut gram, mut hand): (f64, f64) = (0.0, 0.0);
    for t in uniform_grid(lo, hi, 257) {
        let f = match frame_at(c, t) {
            Ok(f) => f,
            Err(Error::InflectionPoint { .. }) => continue,
            Err(e) => return Err(e),
        };
        let m = nalgebra::Matrix3::from_columns(&[f.tangent, f.normal, f.binormal]);
        gram = gram.max((m.transpose() * m - nalgebra::Matrix3::identity()).amax());
        hand = hand.max((m.determinant() - 1.0).abs());
    }
    out.push(Check::bound("frame orthonormality", gram, 1e-9));
    out.push(Check::bound("frame right-handed", hand, 1e-9));

    let h = 1e-3 * (hi - lo);
    let mut frenet = Vec::new();
    let mut darboux = Vec::new();
    for t in interior_points(c) {
        frenet.push((frenet_ode_residual(c, t, h)?, frenet_ode_residual(c, t, 0.5 * h)?));
        darboux.push((darboux_residual(c, t, h)?, darboux_residual(c, t, 0.5 * h)?));
    }
    out.push(ratio_check("frenet residual order", &frenet));
    out.push(ratio_check("darboux residual order", &darboux));

    match indicatrix(c, Indicatrix::Tangent, 257) {
        Ok(path) => {
            let (s0, s1) = path.sigma_span();
            let mut pairs = Vec::new();
            for f in [0.27, 0.52, 0.74] {
                let sigma = s0 + f * (s1 - s0);
                let h = 1e-2;
                pairs.push((
                    spherical_ode_residual(&path, sigma, h)?,
                    spherical_ode_residual(&path, sigma, 0.5 * h)?,
                ));
            }
            out.push(ratio_check("spherical residual order (T)", &pairs));
        }
        Err(e @ Error::DegenerateIndicatrix { .. }) => {
            out.push(Check::skip("spherical residual order (T)", e.to_string()))
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}

fn identities_suite(c: &CurveDef, tol: f64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let (lo, hi) = c.domain();
    let (mut nc, mut cn, mut dc) = (0.0f64, None::<f64>, None::<f64>);
    let mut undefined = None;
    for t in uniform_grid(lo, hi, 101) {
        let r = (|| -> Result<()> {
            nc = nc.max(normal_darboux_identity(c, t)?);
            if let Some(e) = darboux_normal_identity(c, t)? {
                cn = Some(cn.unwrap_or(0.0).max(e));
            }
            if let Some(e) = darboux_tangent_check(c, t)? {
                dc = Some(dc.unwrap_or(0.0).max(e));
            }
            Ok(())
        })();
        match r {
            Ok(()) => {}
            Err(e @ (Error::InflectionPoint { .. } | Error::SingularSpeed { .. })) => {
                undefined.get_or_insert(e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(why) = undefined.filter(|_| nc == 0.0) {
        for name in ["N x N' = C", "C x C' = sign(psi) N", "C' closed form"] {
            out.push(Check::skip(name, why.clone()));
        }
        return Ok(out);
    }
    out.push(Check::bound("N x N' = C", nc, 1e-6));
    let no_sign = "(tau/kappa)' vanishes at every sample";
    out.push(match cn {
        Some(e) => Check::bound("C x C' = sign(psi) N", e, 1e-6),
        None => Check::skip("C x C' = sign(psi) N", no_sign),
    });
    out.push(match dc {
        Some(e) => Check::bound("C' closed form", e, 1e-6),
        None => Check::skip("C' closed form", no_sign),
    });

    // Lancret: general (or circular) helix iff the tangent indicatrix is a circle
    let helix = classify_helix(c, 257, tol)?;
    if helix.kind == HelixKind::Planar {
        out.push(Check::premise_not_met("lancret", "planar curve (tau = 0)"));
    } else {
        let circle = match indicatrix(c, Indicatrix::Tangent, 257) {
            Ok(path) => circle_fit(&path, 256)?.rms_residual <= CIRCLE_TOL,
            Err(Error::DegenerateIndicatrix { .. }) => true,
            Err(e) => return Err(e),
        };
        let helical = matches!(helix.kind, HelixKind::General | HelixKind::Circular);
        out.push(Check::new(
            "lancret",
            if circle == helical { Status::Pass } else { Status::Fail },
            json!({"kind": helix.kind.as_str(), "tangent_circle": circle}),
            Some(tol),
        ));
    }
    Ok(out)
}

/// Runs the named verification suites.
pub fn cmd_verify(c: &CurveDef, suite: Suite, p: &BertrandParams, tol: f64, command: &str) -> Result<CommandOutput> {
    p.validate()?;
    let mut report = RunReport::new(command).with_digest(c.digest());
    if matches!(suite, Suite::All | Suite::Frames) {
        report.extend(frames_suite(c)?);
    }
    let (lo, hi) = c.domain();
    if let Err(e @ Error::InflectionPoint { .. }) = frame_at(c, 0.5 * (lo + hi)) {
        if suite != Suite::Frames {
            report.push(Check::skip("identities and corollaries", e.to_string()));
        }
        return Ok(CommandOutput::report(report));
    }
    if matches!(suite, Suite::All | Suite::Identities) {
        report.extend(identities_suite(c, tol)?);
    }
    if matches!(suite, Suite::All | Suite::Corollaries) {
        report.extend(verify_corollaries(c, p, tol)?);
    }
    Ok(CommandOutput::report(report))
}

/// Samples of a curve, or of one of its indicatrices, for plotting.
pub fn curve_plot_data(c: &CurveDef, which: Option<Indicatrix>, n: usize) -> Result<PlotData> {
    check_samples(n)?;
    let (lo, hi) = c.domain();
    match which {
        None => Ok(PlotData {
            title: c.label().to_string(),
            points: uniform_grid(lo, hi, n)
                .into_iter()
                .map(|t| c.position(t))
                .collect::<Result<Vec<Vec3>>>()?,
            on_sphere: false,
        }),
        Some(w) => {
            let path = indicatrix(c, w, n)?;
            Ok(PlotData {
                title: path.label(),
                points: uniform_grid(lo, hi, n)
                    .into_iter()
                    .map(|u| path.point(u))
                    .collect::<Result<Vec<Vec3>>>()?,
                on_sphere: true,
            })
        }
    }
}

pub fn cmd_plot(data: &PlotData, proj: Projection, command: &str) -> Result<CommandOutput> {
    let svg = render_svg(data, proj)?;
    let mut report = RunReport::new(command);
    report.push(Check::info("points", data.points.len()));
    Ok(CommandOutput {
        report,
        csv: None,
        svg: Some(svg),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::catalog;

    #[test]
    fn analyze_rows() {
        let c = catalog("paper-example", &[]).unwrap();
        let out = cmd_analyze(&c, 33, 1e-6, "analyze").unwrap();
        let csv = out.csv.unwrap();
        let first: Vec<f64> = csv.lines().nth(1).unwrap().split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(first.len(), 17);
        assert!((first[14] - 2f64.sqrt()).abs() < 1e-9);
        assert_eq!(out.report.find("classification").unwrap().value, "none");
    }

    #[test]
    fn indicatrix_skip_and_bertrand_circle() {
        let h = catalog("circular-helix", &[1.0, 1.0]).unwrap();
        let out = cmd_indicatrix(&h, Indicatrix::Darboux, 64, "indicatrix").unwrap();
        assert_eq!(out.report.checks[0].status, Status::Skip);
        assert!(out.csv.is_none());

        let circle = catalog("circle", &[1.0]).unwrap();
        let p = BertrandParams::new(2.0, std::f64::consts::FRAC_PI_2).unwrap();
        let out = cmd_bertrand(&circle, Source::Sphere, &p, 64, 1e-6, "bertrand").unwrap();
        for line in out.csv.unwrap().lines().skip(1) {
            let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
            let r = (v[1] * v[1] + (v[2] - 2.0).powi(2)).sqrt();
            assert!((r - 2.0).abs() < 1e-7);
        }
    }

    #[test]
    fn source_parsing() {
        assert_eq!("sphere".parse::<Source>().unwrap(), Source::Sphere);
        assert_eq!("N".parse::<Source>().unwrap(), Source::Indicatrix(Indicatrix::Normal));
        assert!("X".parse::<Source>().is_err());
        assert!("bogus".parse::<Suite>().is_err());
    }
}
