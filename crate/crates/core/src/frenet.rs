//! Frenet apparatus, Darboux vector, slant-helix function and helix
//! classification.

use serde::Serialize;

use crate::curve::{CurveDef, CurveSample, MIN_SPEED};
use crate::error::{Error, Result};
use crate::Vec3;

/// `‖γ′ × γ″‖` below this is an inflection point: no principal normal.
pub const INFLECTION_TOL: f64 = 1e-12;

/// Relative step (times domain length) for differencing jet-exact quantities.
pub(crate) const FD_STEP_REL: f64 = 1e-3;

/// Frenet frame with curvature, torsion and parameter speed at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
    pub kappa: f64,
    pub tau: f64,
    pub speed: f64,
}

impl Frame {
    pub fn darboux(&self) -> Vec3 {
        self.tangent * self.tau + self.binormal * self.kappa
    }

    /// Unit Darboux vector `W/‖W‖`.
    pub fn darboux_unit(&self) -> Vec3 {
        self.darboux().normalize()
    }
}

/// Full Frenet data at parameter `t`, including arclength `s` from the
/// start of the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetSample {
    pub t: f64,
    pub s: f64,
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
    pub kappa: f64,
    pub tau: f64,
    pub darboux: Vec3,
}

/// Frame from parameter derivatives:
/// `κ = ‖γ′×γ″‖/‖γ′‖³`, `τ = det(γ′,γ″,γ‴)/‖γ′×γ″‖²`, `N = B×T`.
pub fn frame_from_sample(sample: &CurveSample) -> Result<Frame> {
    let speed = sample.d1.norm();
    if !(speed >= MIN_SPEED) {
        return Err(Error::SingularSpeed { at: sample.t });
    }
    let cross = sample.d1.cross(&sample.d2);
    let cross_norm = cross.norm();
    if !(cross_norm >= INFLECTION_TOL) {
        return Err(Error::InflectionPoint { at: sample.t });
    }
    let tangent = sample.d1 / speed;
    let binormal = cross / cross_norm;
    let normal = binormal.cross(&tangent);
    Ok(Frame {
        tangent,
        normal,
        binormal,
        kappa: cross_norm / (speed * speed * speed),
        tau: cross.dot(&sample.d3) / (cross_norm * cross_norm),
        speed,
    })
}

pub fn frame_at(c: &CurveDef, t: f64) -> Result<Frame> {
    frame_from_sample(&c.evaluate(t)?)
}

/// Principal normal by normalizing the normal component of `γ″`; the
/// cross-check for the `B×T` route.
pub fn normal_from_acceleration(sample: &CurveSample) -> Result<Vec3> {
    let speed = sample.d1.norm();
    if !(speed >= MIN_SPEED) {
        return Err(Error::SingularSpeed { at: sample.t });
    }
    let tangent = sample.d1 / speed;
    let perp = sample.d2 - tangent * sample.d2.dot(&tangent);
    if !(perp.norm() * speed >= INFLECTION_TOL) {
        return Err(Error::InflectionPoint { at: sample.t });
    }
    Ok(perp.normalize())
}

pub fn frenet_apparatus(c: &CurveDef, t: f64) -> Result<FrenetSample> {
    let f = frame_at(c, t)?;
    let s = c.arclength_between(c.domain().0, t)?;
    Ok(FrenetSample {
        t,
        s,
        tangent: f.tangent,
        normal: f.normal,
        binormal: f.binormal,
        kappa: f.kappa,
        tau: f.tau,
        darboux: f.darboux(),
    })
}

/// Central-difference frames at `t ± h` and the arclength between them.
fn frame_difference(c: &CurveDef, t: f64, h: f64) -> Result<(Frame, [Vec3; 3], f64)> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument("step h must be positive".into()));
    }
    let mid = frame_at(c, t)?;
    let lo = frame_at(c, t - h)?;
    let hi = frame_at(c, t + h)?;
    let ds = c.arclength_between(t - h, t + h)?;
    let d = [
        (hi.tangent - lo.tangent) / ds,
        (hi.normal - lo.normal) / ds,
        (hi.binormal - lo.binormal) / ds,
    ];
    Ok((mid, d, ds))
}

/// Largest residual of the Frenet–Serret equations
/// `T′ = κN`, `N′ = −κT + τB`, `B′ = −τN` with frame derivatives taken by
/// central differences over `[t − h, t + h]`. Second order in `h`.
pub fn frenet_ode_residual(c: &CurveDef, t: f64, h: f64) -> Result<f64> {
    let (f, [dt, dn, db], _) = frame_difference(c, t, h)?;
    let r1 = (dt - f.normal * f.kappa).norm();
    let r2 = (dn + f.tangent * f.kappa - f.binormal * f.tau).norm();
    let r3 = (db + f.normal * f.tau).norm();
    Ok(r1.max(r2).max(r3))
}

/// Largest residual of `X′ = W × X` for `X ∈ {T, N, B}`.
pub fn darboux_residual(c: &CurveDef, t: f64, h: f64) -> Result<f64> {
    let (f, [dt, dn, db], _) = frame_difference(c, t, h)?;
    let w = f.darboux();
    Ok([
        (dt - w.cross(&f.tangent)).norm(),
        (dn - w.cross(&f.normal)).norm(),
        (db - w.cross(&f.binormal)).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max))
}

/// Slant-helix function `ψ = κ²/(κ²+τ²)^{3/2} · (τ/κ)′`, the derivative in
/// arclength taken by fourth-order central differences of the jet-exact
/// ratio.
pub fn slant_psi(c: &CurveDef, t: f64) -> Result<f64> {
    let h = FD_STEP_REL * c.domain_length();
    slant_psi_with_step(c, t, h)
}

pub(crate) fn slant_psi_with_step(c: &CurveDef, t: f64, h: f64) -> Result<f64> {
    let f = frame_at(c, t)?;
    let ratio = |x: f64| -> Result<f64> {
        let g = frame_at(c, x)?;
        Ok(g.tau / g.kappa)
    };
    let d = (ratio(t - 2.0 * h)? - 8.0 * ratio(t - h)? + 8.0 * ratio(t + h)? - ratio(t + 2.0 * h)?)
        / (12.0 * h);
    let k2 = f.kappa * f.kappa;
    let rho2 = k2 + f.tau * f.tau;
    Ok(k2 / (rho2 * rho2.sqrt()) * d / f.speed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HelixKind {
    None,
    General,
    Circular,
    Slant,
    Planar,
}

impl HelixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            HelixKind::None => "none",
            HelixKind::General => "general",
            HelixKind::Circular => "circular",
            HelixKind::Slant => "slant",
            HelixKind::Planar => "planar",
        }
    }
}

impl std::fmt::Display for HelixKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Summary statistics of one sampled scalar. `spread = max − min`; any
/// non-finite sample makes the spread infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stats {
    pub mean: f64,
    pub spread: f64,
    pub max_abs: f64,
}

impl Stats {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Stats {
        let (mut n, mut sum, mut lo, mut hi, mut max_abs) = (0usize, 0.0, f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
        let mut finite = true;
        for v in values {
            if !v.is_finite() {
                finite = false;
                continue;
            }
            n += 1;
            sum += v;
            lo = lo.min(v);
            hi = hi.max(v);
            max_abs = max_abs.max(v.abs());
        }
        if n == 0 {
            return Stats {
                mean: f64::NAN,
                spread: f64::INFINITY,
                max_abs: f64::INFINITY,
            };
        }
        Stats {
            mean: sum / n as f64,
            spread: if finite { hi - lo } else { f64::INFINITY },
            max_abs: if finite { max_abs } else { f64::INFINITY },
        }
    }

    /// `spread ≤ tol·(1 + |mean|)`.
    pub fn is_constant(&self, tol: f64) -> bool {
        self.spread <= tol * (1.0 + self.mean.abs())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HelixReport {
    pub kind: HelixKind,
    pub kappa: Stats,
    pub tau: Stats,
    /// Statistics of `κ/τ`.
    pub ratio: Stats,
    /// Statistics of the slant-helix function.
    pub psi: Stats,
    /// Mean unit Darboux vector, reported for general and circular helices.
    pub axis: Option<[f64; 3]>,
    /// Parameter values where the frame could not be evaluated.
    pub singular: Vec<f64>,
    pub samples: usize,
}

/// Per-point input of [`classify_samples`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantSample {
    pub kappa: f64,
    pub tau: f64,
    pub psi: Option<f64>,
    pub darboux_unit: Vec3,
}

/// Classifies sampled curvature data: planar if `max|τ| ≤ tol`; circular if
/// κ and τ are both constant; general if `κ/τ` is constant; slant if ψ is
/// constant; otherwise none. Constancy is relative: `spread ≤ tol·(1+|mean|)`.
pub fn classify_samples(samples: &[InvariantSample], singular: Vec<f64>, tol: f64) -> HelixReport {
    let kappa = Stats::of(samples.iter().map(|s| s.kappa));
    let tau = Stats::of(samples.iter().map(|s| s.tau));
    let ratio = Stats::of(samples.iter().map(|s| s.kappa / s.tau));
    let psi = Stats::of(samples.iter().filter_map(|s| s.psi));
    let kind = if tau.max_abs <= tol {
        HelixKind::Planar
    } else if kappa.is_constant(tol) && tau.is_constant(tol) {
        HelixKind::Circular
    } else if ratio.is_constant(tol) {
        HelixKind::General
    } else if psi.is_constant(tol) {
        HelixKind::Slant
    } else {
        HelixKind::None
    };
    let axis = matches!(kind, HelixKind::General | HelixKind::Circular).then(|| {
        let sum: Vec3 = samples.iter().map(|s| s.darboux_unit).sum();
        let u = sum.normalize();
        [u.x, u.y, u.z]
    });
    HelixReport {
        kind,
        kappa,
        tau,
        ratio,
        psi,
        axis,
        singular,
        samples: samples.len(),
    }
}

/// Samples `n` uniformly spaced parameter values and classifies the curve.
/// Points where the frame is undefined are listed in `singular`; if every
/// point fails, the first error is returned.
pub fn classify_helix(c: &CurveDef, n: usize, tol: f64) -> Result<HelixReport> {
    if n < 8 {
        return Err(Error::InvalidArgument("classification needs n >= 8".into()));
    }
    let (lo, hi) = c.domain();
    let mut samples = Vec::with_capacity(n);
    let mut singular = Vec::new();
    let mut first_err = None;
    for t in crate::numerics::uniform_grid(lo, hi, n) {
        let point = frame_at(c, t).and_then(|f| {
            Ok(InvariantSample {
                kappa: f.kappa,
                tau: f.tau,
                psi: Some(slant_psi(c, t)?),
                darboux_unit: f.darboux_unit(),
            })
        });
        match point {
            Ok(s) => samples.push(s),
            Err(e) => {
                singular.push(t);
                first_err.get_or_insert(e);
            }
        }
    }
    if samples.is_empty() {
        return Err(first_err.expect("n >= 8 points were attempted"));
    }
    Ok(classify_samples(&samples, singular, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::catalog;
    use std::f64::consts::PI;

    #[test]
    fn helix_and_circle_invariants() {
        let h = catalog("circular-helix", &[1.0, 1.0]).unwrap();
        for t in [0.0, 1.0, 5.0] {
            let f = frame_at(&h, t).unwrap();
            assert!((f.kappa - 0.5).abs() < 1e-14);
            assert!((f.tau - 0.5).abs() < 1e-14);
        }
        let c = catalog("circle", &[1.0]).unwrap();
        let f = frame_at(&c, 0.4).unwrap();
        assert!((f.kappa - 1.0).abs() < 1e-14);
        assert!(f.tau.abs() < 1e-14);
    }

    #[test]
    fn paper_example_at_origin() {
        let c = catalog("paper-example", &[]).unwrap();
        let f = frenet_apparatus(&c, 0.0).unwrap();
        assert!((f.kappa - 2f64.sqrt()).abs() < 1e-14);
        assert!(f.tau.abs() < 1e-14);
        assert_eq!(f.s, 0.0);
        let f = frenet_apparatus(&c, PI).unwrap();
        assert!((f.s - PI).abs() < 1e-9);
    }

    #[test]
    fn error_branches() {
        let line = catalog("line", &[]).unwrap();
        assert!(matches!(frame_at(&line, 1.0), Err(Error::InflectionPoint { .. })));
        let still = CurveDef::new("still", "t", ["t^2", "t^3", "0"], (-1.0, 1.0)).unwrap();
        assert!(matches!(frame_at(&still, 0.0), Err(Error::SingularSpeed { .. })));
        assert!(classify_helix(&line, 16, 1e-6).is_err());
        assert!(classify_helix(&catalog("circle", &[]).unwrap(), 4, 1e-6).is_err());
    }

    #[test]
    fn both_normal_routes_agree() {
        let c = catalog("paper-example", &[]).unwrap();
        for t in [0.1, 1.0, 2.5, 4.0] {
            let s = c.evaluate(t).unwrap();
            let n1 = frame_from_sample(&s).unwrap().normal;
            let n2 = normal_from_acceleration(&s).unwrap();
            assert!((n1 - n2).amax() < 1e-12);
        }
    }

    #[test]
    fn residual_examples() {
        let h = catalog("circular-helix", &[1.0, 1.0]).unwrap();
        assert!(frenet_ode_residual(&h, 1.0, 1e-4).unwrap() <= 1e-6);
        let c = catalog("circle", &[1.0]).unwrap();
        assert!(frenet_ode_residual(&c, 0.3, 1e-4).unwrap() <= 1e-6);
        let p = catalog("paper-example", &[]).unwrap();
        let r1 = frenet_ode_residual(&p, 1.0, 1e-3).unwrap();
        let r2 = frenet_ode_residual(&p, 1.0, 5e-4).unwrap();
        assert!((3.5..=4.5).contains(&(r1 / r2)), "{}", r1 / r2);
        let d1 = darboux_residual(&p, 1.0, 1e-3).unwrap();
        let d2 = darboux_residual(&p, 1.0, 5e-4).unwrap();
        assert!((3.5..=4.5).contains(&(d1 / d2)), "{}", d1 / d2);
    }

    #[test]
    fn psi_trivial_cases() {
        let h = catalog("circular-helix", &[1.0, 1.0]).unwrap();
        let c = catalog("circle", &[1.0]).unwrap();
        for t in [0.2, 2.0, 4.4] {
            assert!(slant_psi(&h, t).unwrap().abs() <= 1e-8);
            assert!(slant_psi(&c, t).unwrap().abs() <= 1e-8);
        }
    }

    #[test]
    fn classification_verdicts() {
        let r = classify_helix(&catalog("circular-helix", &[2.0, 1.0]).unwrap(), 64, 1e-6).unwrap();
        assert_eq!(r.kind, HelixKind::Circular);
        assert!((r.kappa.mean - 0.4).abs() < 1e-12);
        assert!((r.tau.mean - 0.2).abs() < 1e-12);
        let axis = r.axis.unwrap();
        assert!((axis[2] - 1.0).abs() < 1e-12);

        let r = classify_helix(&catalog("circle", &[1.0]).unwrap(), 64, 1e-6).unwrap();
        assert_eq!(r.kind, HelixKind::Planar);

        // κ = √(1+cos²s) varies and τ changes sign, so neither κ/τ nor ψ is
        // constant: baseline verdict for the worked example.
        let r = classify_helix(&catalog("paper-example", &[]).unwrap(), 64, 1e-6).unwrap();
        assert_eq!(r.kind, HelixKind::None);
        assert!(r.kappa.spread > 0.4);
        assert!(r.singular.is_empty());

        // (t, cosh t, sinh t): tangent at 45° to z, κ/τ constant but κ is not
        let g = CurveDef::new("cosh-helix", "t", ["t", "cosh(t)", "sinh(t)"], (-1.0, 1.0)).unwrap();
        let r = classify_helix(&g, 64, 1e-6).unwrap();
        assert_eq!(r.kind, HelixKind::General);
        let axis = Vec3::from(r.axis.unwrap());
        assert!((axis.z.abs() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn frame_orthonormal_and_right_handed() {
        for c in [
            catalog("paper-example", &[]).unwrap(),
            catalog("circular-helix", &[2.0, 1.0]).unwrap(),
            catalog("circle", &[3.0]).unwrap(),
        ] {
            for k in 0..50 {
                let t = c.domain().0 + c.domain_length() * k as f64 / 49.0;
                let f = frame_at(&c, t).unwrap();
                let m = nalgebra::Matrix3::from_columns(&[f.tangent, f.normal, f.binormal]);
                let gram = m.transpose() * m;
                assert!((gram - nalgebra::Matrix3::identity()).amax() <= 1e-9);
                assert!((m.determinant() - 1.0).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn parametrization_invariance() {
        let c = catalog("paper-example", &[]).unwrap();
        let fast = CurveDef::new(
            "paper-example-2x",
            "u",
            ["-cos(2*u)", "sin(2*u)^2/2", "sin(2*(2*u))/4 + (2*u)/2"],
            (0.0, PI),
        )
        .unwrap();
        for u in [0.1, 0.6, 1.3, 2.9] {
            let a = frame_at(&c, 2.0 * u).unwrap();
            let b = frame_at(&fast, u).unwrap();
            assert!((a.kappa - b.kappa).abs() <= 1e-9);
            assert!((a.tau - b.tau).abs() <= 1e-9);
        }
    }

    #[test]
    fn unit_speed_curvature_is_acceleration_norm() {
        let c = catalog("paper-example", &[]).unwrap();
        for t in [0.0, 0.9, 3.3, 5.1] {
            let s = c.evaluate(t).unwrap();
            let f = frame_from_sample(&s).unwrap();
            assert!((f.kappa - s.d2.norm()).abs() <= 1e-10);
        }
    }
}
