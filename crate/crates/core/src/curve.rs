//! Curve definitions, the built-in catalog and the curve-spec text format.

use std::f64::consts::PI;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::expr::{Expression, Jet3};
use crate::numerics::{try_cumulative, try_integrate_signed, CumulativeTable, QuadConfig};
use crate::Vec3;

/// Speeds below this are treated as reparametrization singularities.
pub const MIN_SPEED: f64 = 1e-9;

/// A parametric space curve: three expressions in one parameter over a
/// closed domain.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveDef {
    label: String,
    components: [Expression; 3],
    domain: (f64, f64),
}

/// Position and parameter derivatives at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub t: f64,
    pub p: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
    pub d3: Vec3,
}

impl CurveDef {
    pub fn new(label: &str, param: &str, components: [&str; 3], domain: (f64, f64)) -> Result<Self> {
        let [x, y, z] = components;
        let components = [
            Expression::parse_with_param(x, param)?,
            Expression::parse_with_param(y, param)?,
            Expression::parse_with_param(z, param)?,
        ];
        Self::from_expressions(label, components, domain)
    }

    pub fn from_expressions(label: &str, components: [Expression; 3], domain: (f64, f64)) -> Result<Self> {
        let (lo, hi) = domain;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidArgument(format!(
                "curve domain must satisfy t_lo < t_hi, got [{lo}, {hi}]"
            )));
        }
        if components.iter().any(|c| c.param() != components[0].param()) {
            return Err(Error::InvalidArgument(
                "all components must share one parameter".into(),
            ));
        }
        let curve = CurveDef {
            label: label.to_string(),
            components,
            domain,
        };
        for t in [lo, 0.5 * (lo + hi), hi] {
            curve.evaluate(t)?;
        }
        Ok(curve)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn param(&self) -> &str {
        self.components[0].param()
    }

    pub fn components(&self) -> &[Expression; 3] {
        &self.components
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn domain_length(&self) -> f64 {
        self.domain.1 - self.domain.0
    }

    /// The same trace over a sub-interval of the domain.
    pub fn restricted(&self, lo: f64, hi: f64) -> Result<Self> {
        Self::from_expressions(&self.label, self.components.clone(), (lo, hi))
    }

    /// Position and first three derivatives at `t`. The domain is not
    /// enforced here so that finite-difference stencils may reach slightly
    /// past the end points.
    pub fn evaluate(&self, t: f64) -> Result<CurveSample> {
        let mut jets = [Jet3::default(); 3];
        for (j, c) in jets.iter_mut().zip(&self.components) {
            *j = c.eval_jet(t)?;
        }
        let pick = |k: usize| Vec3::new(jets[0].as_array()[k], jets[1].as_array()[k], jets[2].as_array()[k]);
        Ok(CurveSample {
            t,
            p: pick(0),
            d1: pick(1),
            d2: pick(2),
            d3: pick(3),
        })
    }

    pub fn position(&self, t: f64) -> Result<Vec3> {
        let mut p = Vec3::zeros();
        for (k, c) in self.components.iter().enumerate() {
            p[k] = c.eval(t)?;
        }
        Ok(p)
    }

    pub fn speed(&self, t: f64) -> Result<f64> {
        Ok(self.evaluate(t)?.d1.norm())
    }

    /// Arclength between parameter values `a` and `b` (signed).
    pub fn arclength_between(&self, a: f64, b: f64) -> Result<f64> {
        try_integrate_signed(|t| self.speed(t), a, b, &QuadConfig::default())
    }

    /// Cumulative arclength over `n` uniformly spaced parameter values.
    pub fn arclength_table(&self, n: usize) -> Result<CumulativeTable> {
        let (lo, hi) = self.domain;
        try_cumulative(|t| self.speed(t), lo, hi, n, &QuadConfig::default())
    }

    /// Canonical text in the curve-spec format.
    pub fn to_spec(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name = \"{}\"", self.label);
        let _ = writeln!(out, "param = \"{}\"", self.param());
        for (key, c) in ["x", "y", "z"].iter().zip(&self.components) {
            let _ = writeln!(out, "{key} = \"{c}\"");
        }
        let _ = writeln!(out, "domain = {:?} {:?}", self.domain.0, self.domain.1);
        out
    }

    /// SHA-256 of the canonical spec text, hex encoded.
    pub fn digest(&self) -> String {
        Sha256::digest(self.to_spec().as_bytes())
            .iter()
            .fold(String::with_capacity(64), |mut s, b| {
                let _ = write!(s, "{b:02x}");
                s
            })
    }
}

/// Catalog names accepted by [`catalog`].
pub const CATALOG_NAMES: [&str; 4] = ["paper-example", "circular-helix", "circle", "line"];

/// Built-in curves.
///
/// * `paper-example`: `(-cos s, sin²s/2, sin(2s)/4 + s/2)` on `[0, 2π]`, a
///   unit-speed curve whose tangent indicatrix is
///   `(sin s, sin s cos s, cos²s)`.
/// * `circular-helix a b`: `(a cos t, a sin t, b t)`, default `a = b = 1`.
/// * `circle r`: `(r cos t, r sin t, 0)`, default `r = 1`.
/// * `line`: `(t, 0, 0)` on `[0, 10]`.
pub fn catalog(name: &str, params: &[f64]) -> Result<CurveDef> {
    let arity = |n: usize| -> Result<()> {
        if params.len() > n || params.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "`{name}` takes at most {n} finite parameter(s), got {params:?}"
            )));
        }
        Ok(())
    };
    let lit = |v: f64| format!("({v:?})");
    match name {
        "paper-example" => {
            arity(0)?;
            CurveDef::new(
                name,
                "s",
                ["-cos(s)", "sin(s)^2/2", "sin(2*s)/4 + s/2"],
                (0.0, 2.0 * PI),
            )
        }
        "circular-helix" => {
            arity(2)?;
            let a = params.first().copied().unwrap_or(1.0);
            let b = params.get(1).copied().unwrap_or(1.0);
            let label = format!("circular-helix({a:?},{b:?})");
            CurveDef::new(
                &label,
                "t",
                [
                    &format!("{}*cos(t)", lit(a)),
                    &format!("{}*sin(t)", lit(a)),
                    &format!("{}*t", lit(b)),
                ],
                (0.0, 2.0 * PI),
            )
        }
        "circle" => {
            arity(1)?;
            let r = params.first().copied().unwrap_or(1.0);
            let label = format!("circle({r:?})");
            CurveDef::new(
                &label,
                "t",
                [
                    &format!("{}*cos(t)", lit(r)),
                    &format!("{}*sin(t)", lit(r)),
                    "0",
                ],
                (0.0, 2.0 * PI),
            )
        }
        "line" => {
            arity(0)?;
            CurveDef::new(name, "t", ["t", "0", "0"], (0.0, 10.0))
        }
        _ => Err(Error::UnknownCurve(name.to_string())),
    }
}

/// Parses a `name[:p1,p2,...]` catalog reference.
pub fn catalog_ref(spec: &str) -> Result<CurveDef> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => {
            let params = p
                .split(',')
                .map(|v| {
                    v.trim().parse::<f64>().map_err(|_| {
                        Error::InvalidArgument(format!("bad catalog parameter `{v}`"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (n, params)
        }
        None => (spec, Vec::new()),
    };
    catalog(name.trim(), &params)
}

/// Parses the curve-spec text format:
///
/// ```text
/// # comment
/// name = "helix"
/// param = "t"
/// x = "cos(t)"
/// y = "sin(t)"
/// z = "t"
/// domain = 0 6.283185307179586
/// ```
pub fn parse_spec(text: &str) -> Result<CurveDef> {
    let mut name = None;
    let mut param = None;
    let mut comps: [Option<String>; 3] = [None, None, None];
    let mut domain = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| Error::SpecFormat {
            line: line_no,
            message,
        };
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err("expected `key = value`".into()))?;
        let (key, value) = (key.trim(), value.trim());
        let quoted = || -> Result<String> {
            value
                .strip_prefix('"')
                .and_then(|v| v.strip_suffix('"'))
                .filter(|v| !v.contains('"'))
                .map(str::to_string)
                .ok_or_else(|| err(format!("value of `{key}` must be a quoted string")))
        };
        let slot = match key {
            "name" => &mut name,
            "param" => &mut param,
            "x" => &mut comps[0],
            "y" => &mut comps[1],
            "z" => &mut comps[2],
            "domain" => {
                if domain.is_some() {
                    return Err(err("duplicate key `domain`".into()));
                }
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [lo, hi] = parts[..] else {
                    return Err(err("domain needs exactly two reals".into()));
                };
                let real = |s: &str| {
                    s.parse::<f64>()
                        .map_err(|_| err(format!("`{s}` is not a real number")))
                };
                domain = Some((real(lo)?, real(hi)?));
                continue;
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        };
        if slot.is_some() {
            return Err(err(format!("duplicate key `{key}`")));
        }
        *slot = Some(quoted()?);
    }

    let missing = |k: &str| Error::SpecFormat {
        line: 0,
        message: format!("missing key `{k}`"),
    };
    let name = name.ok_or_else(|| missing("name"))?;
    let param = param.ok_or_else(|| missing("param"))?;
    let [x, y, z] = comps;
    let x = x.ok_or_else(|| missing("x"))?;
    let y = y.ok_or_else(|| missing("y"))?;
    let z = z.ok_or_else(|| missing("z"))?;
    let domain = domain.ok_or_else(|| missing("domain"))?;
    CurveDef::new(&name, &param, [&x, &y, &z], domain)
}

fn strip_comment(line: &str) -> &str {
    let mut in_quotes = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quotes = !in_quotes,
            '#' if !in_quotes => return &line[..i],
            _ => {}
        }
    }
    line
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_example_points_and_velocity() {
        let c = catalog("paper-example", &[]).unwrap();
        let s0 = c.evaluate(0.0).unwrap();
        assert!((s0.p - Vec3::new(-1.0, 0.0, 0.0)).amax() < 1e-15);
        assert!((s0.d1 - Vec3::new(0.0, 0.0, 1.0)).amax() < 1e-15);
        let sp = c.evaluate(PI).unwrap();
        assert!((sp.p - Vec3::new(1.0, 0.0, PI / 2.0)).amax() < 1e-15);
    }

    #[test]
    fn simple_catalog_curves() {
        let line = catalog("line", &[]).unwrap();
        let s = line.evaluate(5.0).unwrap();
        assert_eq!(s.p, Vec3::new(5.0, 0.0, 0.0));
        assert_eq!(s.d2, Vec3::zeros());
        assert_eq!(s.d3, Vec3::zeros());

        let circle = catalog("circle", &[2.0]).unwrap();
        assert!((circle.position(0.0).unwrap() - Vec3::new(2.0, 0.0, 0.0)).amax() < 1e-15);
        let unit = catalog("circle", &[]).unwrap();
        assert!((unit.speed(1.3).unwrap() - 1.0).abs() < 1e-15);

        let helix = catalog("circular-helix", &[1.0, 1.0]).unwrap();
        for t in [0.0, 0.7, 4.0] {
            assert!((helix.speed(t).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn catalog_errors() {
        assert!(matches!(catalog("spiral", &[]), Err(Error::UnknownCurve(_))));
        assert!(catalog("circle", &[1.0, 2.0]).is_err());
        assert!(catalog_ref("circular-helix:2,x").is_err());
        let c = catalog_ref("circular-helix:2,1").unwrap();
        assert_eq!(c.label(), "circular-helix(2.0,1.0)");
    }

    #[test]
    fn unit_speed_of_paper_example() {
        let c = catalog("paper-example", &[]).unwrap();
        let worst = (0..1000)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 999.0;
                (c.speed(t).unwrap() - 1.0).abs()
            })
            .fold(0.0, f64::max);
        assert!(worst <= 1e-12, "{worst}");
    }

    #[test]
    fn arclength_totals() {
        let total = |c: &CurveDef| c.arclength_table(33).unwrap().last_value();
        assert!((total(&catalog("circle", &[]).unwrap()) - 2.0 * PI).abs() < 1e-9);
        assert!((total(&catalog("circular-helix", &[]).unwrap()) - 2.0 * PI * 2f64.sqrt()).abs() < 1e-9);
        assert!((total(&catalog("paper-example", &[]).unwrap()) - 2.0 * PI).abs() < 1e-9);
        let t = catalog("paper-example", &[]).unwrap().arclength_table(64).unwrap();
        assert!(t.values().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn spec_round_trip() {
        let c = catalog("paper-example", &[]).unwrap();
        let back = parse_spec(&c.to_spec()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.digest(), c.digest());
        assert_eq!(c.digest().len(), 64);
    }

    #[test]
    fn spec_format_parsing_and_errors() {
        let text = "# a helix\nname = \"h\"  # trailing\nparam = \"u\"\nx = \"cos(u)\"\ny = \"sin(u)\"\nz = \"u\"\ndomain = 0 3.5\n";
        let c = parse_spec(text).unwrap();
        assert_eq!(c.param(), "u");
        assert_eq!(c.domain(), (0.0, 3.5));

        let bad = |t: &str| parse_spec(t).unwrap_err();
        assert!(matches!(bad("name = h\n"), Error::SpecFormat { line: 1, .. }));
        assert!(matches!(bad("name = \"h\"\nfoo = \"1\"\n"), Error::SpecFormat { line: 2, .. }));
        assert!(matches!(bad("name = \"h\"\nparam = \"t\"\n"), Error::SpecFormat { line: 0, .. }));
        assert!(matches!(
            bad("name=\"h\"\nparam=\"t\"\nx=\"t\"\ny=\"0\"\nz=\"0\"\ndomain = 1\n"),
            Error::SpecFormat { line: 6, .. }
        ));
        assert!(matches!(
            bad("name=\"h\"\nparam=\"t\"\nx=\"2t\"\ny=\"0\"\nz=\"0\"\ndomain = 0 1\n"),
            Error::Syntax { .. }
        ));
        assert!(matches!(
            bad("name=\"h\"\nparam=\"t\"\nx=\"t\"\ny=\"0\"\nz=\"0\"\ndomain = 1 0\n"),
            Error::InvalidArgument(_)
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn velocity_matches_finite_differences(which in 0usize..3, t in 0.05f64..6.2) {
                let c = [
                    catalog("paper-example", &[]).unwrap(),
                    catalog("circular-helix", &[2.0, 1.0]).unwrap(),
                    catalog("circle", &[1.5]).unwrap(),
                ][which].clone();
                let h = 1e-4;
                let p = |k: f64| c.position(t + k * h).unwrap();
                let fd = (p(-2.0) - p(-1.0) * 8.0 + p(1.0) * 8.0 - p(2.0)) / (12.0 * h);
                let d1 = c.evaluate(t).unwrap().d1;
                prop_assert!((d1 - fd).norm() <= 1e-6 * d1.norm().max(1.0));
            }
        }
    }
}
