//! Spherical curves: the four indicatrices of a space curve, general curves
//! on the unit sphere, their Sabban frames and circle detection.
//!
//! A spherical curve is handled in its own parameter `u` (the source
//! parameter for indicatrices). Arclength `σ(u)` is tabulated once and
//! inverted with [`invert_monotone_with`] whenever a quantity is requested at
//! a given `σ`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, SymmetricEigen};

use crate::curve::{CurveDef, MIN_SPEED};
use crate::error::{Error, Result};
use crate::frenet::{frame_at, slant_psi, Frame, FD_STEP_REL};
use crate::numerics::{central_d1, invert_monotone_with, try_cumulative, CumulativeTable, QuadConfig};
use crate::Vec3;

/// Relative step for the one finite-difference level applied to
/// quantities the jets cannot differentiate (the Darboux indicatrix).
pub const INNER_STEP_REL: f64 = 1e-5;

/// Arclength rates at or below this over the whole domain make an
/// indicatrix degenerate (a constant point).
pub const DEGENERATE_RATE: f64 = 1e-12;

/// `|(τ/κ)′|`-scaled threshold below which the sign of `C′` is not trusted.
pub const PSI_FLOOR: f64 = 1e-4;

/// Tolerance on `‖γ‖ = 1` for caller-supplied spherical curves.
pub const UNIT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Indicatrix {
    /// Tangent indicatrix `T`.
    Tangent,
    /// Principal normal indicatrix `N`.
    Normal,
    /// Binormal indicatrix `B`.
    Binormal,
    /// Darboux indicatrix `C = W/‖W‖`.
    Darboux,
}

impl Indicatrix {
    pub const ALL: [Indicatrix; 4] = [
        Indicatrix::Tangent,
        Indicatrix::Normal,
        Indicatrix::Binormal,
        Indicatrix::Darboux,
    ];

    pub fn symbol(self) -> char {
        match self {
            Indicatrix::Tangent => 'T',
            Indicatrix::Normal => 'N',
            Indicatrix::Binormal => 'B',
            Indicatrix::Darboux => 'C',
        }
    }
}

impl fmt::Display for Indicatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Indicatrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "t" => Ok(Indicatrix::Tangent),
            "N" | "n" => Ok(Indicatrix::Normal),
            "B" | "b" => Ok(Indicatrix::Binormal),
            "C" | "c" => Ok(Indicatrix::Darboux),
            other => Err(Error::InvalidArgument(format!(
                "indicatrix must be one of T, N, B, C, got `{other}`"
            ))),
        }
    }
}

/// A curve on the unit sphere parametrized by some `u`, with its
/// tabulated arclength `σ(u)`.
pub trait SphericalPath {
    fn label(&self) -> String;
    /// Parameter interval of `u`.
    fn domain(&self) -> (f64, f64);
    fn point(&self, u: f64) -> Result<Vec3>;
    /// `dγ/du`.
    fn velocity(&self, u: f64) -> Result<Vec3>;
    fn sigma_table(&self) -> &CumulativeTable;

    fn sigma_span(&self) -> (f64, f64) {
        let t = self.sigma_table();
        (t.first_value(), t.last_value())
    }

    /// `dσ/du`.
    fn sigma_rate(&self, u: f64) -> Result<f64> {
        Ok(self.velocity(u)?.norm())
    }
}

/// Parameter `u` with `σ(u) = sigma`.
pub fn sigma_to_param(path: &dyn SphericalPath, sigma: f64) -> Result<f64> {
    invert_monotone_with(
        path.sigma_table(),
        |u| path.sigma_rate(u),
        sigma,
        &QuadConfig::default(),
    )
}

fn sigma_table_for(path: &dyn SphericalPath, n: usize) -> Result<CumulativeTable> {
    let (lo, hi) = path.domain();
    try_cumulative(|u| path.sigma_rate(u), lo, hi, n, &QuadConfig::default())
}

/// Indicatrix of a space curve, parametrized by the source parameter.
#[derive(Debug, Clone)]
pub struct SphericalCurve {
    source: CurveDef,
    which: Indicatrix,
    sigma_table: CumulativeTable,
}

/// Spherical image of `c` under the frame vector `which`, with its
/// arclength tabulated on `n` points. The arclength rates are `speed·κ` (T),
/// `speed·√(κ²+τ²)` (N), `speed·|τ|` (B) and the numerical `‖C′‖` (C).
pub fn indicatrix(c: &CurveDef, which: Indicatrix, n: usize) -> Result<SphericalCurve> {
    let mut sc = SphericalCurve {
        source: c.clone(),
        which,
        sigma_table: CumulativeTable::new(vec![0.0, 1.0], vec![0.0, 0.0])?,
    };
    let max_rate = if which == Indicatrix::Darboux {
        // the differenced C′ has a noise floor above DEGENERATE_RATE, so use
        // |ψ|·√(κ²+τ²)·speed instead
        let (lo, hi) = c.domain();
        let mut m: f64 = 0.0;
        for u in crate::numerics::uniform_grid(lo, hi, n.max(2)) {
            let f = frame_at(c, u)?;
            m = m.max(slant_psi(c, u)?.abs() * f.kappa.hypot(f.tau) * f.speed);
        }
        m
    } else {
        0.0
    };
    if which == Indicatrix::Darboux && max_rate <= DEGENERATE_RATE {
        return Err(Error::DegenerateIndicatrix { which: 'C', max_rate });
    }
    sc.sigma_table = sigma_table_for(&sc, n)?;
    let max_rate = sc
        .sigma_table
        .slopes()
        .map(|s| s.iter().copied().fold(max_rate, f64::max))
        .unwrap_or(max_rate);
    if max_rate <= DEGENERATE_RATE {
        return Err(Error::DegenerateIndicatrix {
            which: which.symbol(),
            max_rate,
        });
    }
    Ok(sc)
}

impl SphericalCurve {
    pub fn source(&self) -> &CurveDef {
        &self.source
    }

    pub fn which(&self) -> Indicatrix {
        self.which
    }

    fn inner_step(&self) -> f64 {
        INNER_STEP_REL * self.source.domain_length()
    }

    /// Numerical `dC/du` by fourth-order central differences.
    fn darboux_velocity(&self, u: f64) -> Result<Vec3> {
        let h = self.inner_step();
        let c = |x: f64| -> Result<Vec3> { Ok(frame_at(&self.source, x)?.darboux_unit()) };
        Ok(central_d1(
            [c(u - 2.0 * h)?, c(u - h)?, c(u + h)?, c(u + 2.0 * h)?],
            h,
        ))
    }
}

impl SphericalPath for SphericalCurve {
    fn label(&self) -> String {
        format!("{}-indicatrix of {}", self.which, self.source.label())
    }

    fn domain(&self) -> (f64, f64) {
        self.source.domain()
    }

    fn point(&self, u: f64) -> Result<Vec3> {
        match self.which {
            Indicatrix::Tangent => {
                let d1 = self.source.evaluate(u)?.d1;
                let speed = d1.norm();
                if !(speed >= MIN_SPEED) {
                    return Err(Error::SingularSpeed { at: u });
                }
                Ok(d1 / speed)
            }
            Indicatrix::Normal => Ok(frame_at(&self.source, u)?.normal),
            Indicatrix::Binormal => Ok(frame_at(&self.source, u)?.binormal),
            Indicatrix::Darboux => Ok(frame_at(&self.source, u)?.darboux_unit()),
        }
    }

    fn velocity(&self, u: f64) -> Result<Vec3> {
        match self.which {
            Indicatrix::Tangent => {
                // dT/du = (γ″|γ′|² − (γ′·γ″)γ′)/|γ′|³, defined without N
                let s = self.source.evaluate(u)?;
                let speed = s.d1.norm();
                if !(speed >= MIN_SPEED) {
                    return Err(Error::SingularSpeed { at: u });
                }
                Ok((s.d2 * (speed * speed) - s.d1 * s.d1.dot(&s.d2)) / (speed * speed * speed))
            }
            Indicatrix::Normal => {
                let f = frame_at(&self.source, u)?;
                Ok((f.binormal * f.tau - f.tangent * f.kappa) * f.speed)
            }
            Indicatrix::Binormal => {
                let f = frame_at(&self.source, u)?;
                Ok(f.normal * (-f.tau * f.speed))
            }
            Indicatrix::Darboux => self.darboux_velocity(u),
        }
    }

    fn sigma_table(&self) -> &CumulativeTable {
        &self.sigma_table
    }
}

/// A caller-supplied curve lying on the unit sphere.
#[derive(Debug, Clone)]
pub struct SphereCurve {
    curve: CurveDef,
    sigma_table: CumulativeTable,
}

impl SphereCurve {
    /// Wraps `curve`, checking `|‖γ‖ − 1| ≤ 1e-6` on `n` points.
    pub fn new(curve: CurveDef, n: usize) -> Result<Self> {
        let (lo, hi) = curve.domain();
        for u in crate::numerics::uniform_grid(lo, hi, n.max(2)) {
            let deviation = (curve.position(u)?.norm() - 1.0).abs();
            if deviation > UNIT_TOL {
                return Err(Error::NonUnitInput { at: u, deviation });
            }
        }
        let mut sc = SphereCurve {
            curve,
            sigma_table: CumulativeTable::new(vec![0.0, 1.0], vec![0.0, 0.0])?,
        };
        sc.sigma_table = sigma_table_for(&sc, n)?;
        Ok(sc)
    }

    pub fn curve(&self) -> &CurveDef {
        &self.curve
    }
}

impl SphericalPath for SphereCurve {
    fn label(&self) -> String {
        self.curve.label().to_string()
    }

    fn domain(&self) -> (f64, f64) {
        self.curve.domain()
    }

    fn point(&self, u: f64) -> Result<Vec3> {
        self.curve.position(u)
    }

    fn velocity(&self, u: f64) -> Result<Vec3> {
        Ok(self.curve.evaluate(u)?.d1)
    }

    fn sigma_table(&self) -> &CumulativeTable {
        &self.sigma_table
    }
}

/// Sabban frame `{γ, t, γ×t}` and geodesic curvature at one point. The
/// third frame vector is called `side` to keep `s` free for arclength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SabbanSample {
    pub sigma: f64,
    /// Parameter of the underlying path.
    pub u: f64,
    pub gamma: Vec3,
    pub tvec: Vec3,
    pub side: Vec3,
    pub kappa_g: f64,
}

fn unit_tangent(path: &dyn SphericalPath, u: f64) -> Result<(Vec3, Vec3, f64)> {
    let gamma = path.point(u)?;
    let v = path.velocity(u)?;
    let tangential = v - gamma * v.dot(&gamma);
    let rate = tangential.norm();
    if !(rate >= MIN_SPEED) {
        return Err(Error::SingularSpeed { at: u });
    }
    Ok((gamma, tangential / rate, rate))
}

/// Sabban frame at path parameter `u`. `dt/dσ` is taken by central
/// differences of `t(u)` divided by `dσ/du`.
pub fn sabban_at_param(path: &dyn SphericalPath, u: f64, sigma: f64) -> Result<SabbanSample> {
    let (gamma, tvec, rate) = unit_tangent(path, u)?;
    let (lo, hi) = path.domain();
    let h = FD_STEP_REL * (hi - lo);
    let t = |x: f64| -> Result<Vec3> { Ok(unit_tangent(path, x)?.1) };
    let dt_du = central_d1([t(u - 2.0 * h)?, t(u - h)?, t(u + h)?, t(u + 2.0 * h)?], h);
    let dt_dsigma = dt_du / rate;
    let side = gamma.cross(&tvec);
    Ok(SabbanSample {
        sigma,
        u,
        gamma,
        tvec,
        side,
        kappa_g: side.dot(&dt_dsigma),
    })
}

/// Sabban frame at arclength `sigma`.
pub fn sabban_frame(path: &dyn SphericalPath, sigma: f64) -> Result<SabbanSample> {
    let u = sigma_to_param(path, sigma)?;
    sabban_at_param(path, u, sigma)
}

/// Largest residual of the spherical Frenet–Serret equations
/// `γ′ = t`, `t′ = −γ + κ_g·side`, `side′ = −κ_g·t` with derivatives in σ by
/// central differences of step `h`.
pub fn spherical_ode_residual(path: &dyn SphericalPath, sigma: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument("step h must be positive".into()));
    }
    let mid = sabban_frame(path, sigma)?;
    let lo = sabban_frame(path, sigma - h)?;
    let hi = sabban_frame(path, sigma + h)?;
    let d = |a: Vec3, b: Vec3| (b - a) / (2.0 * h);
    let r1 = (d(lo.gamma, hi.gamma) - mid.tvec).norm();
    let r2 = (d(lo.tvec, hi.tvec) + mid.gamma - mid.side * mid.kappa_g).norm();
    let r3 = (d(lo.side, hi.side) + mid.tvec * mid.kappa_g).norm();
    Ok(r1.max(r2).max(r3))
}

/// Plane fitted through spherical samples: the curve lies on the circle
/// `γ·axis = cos_angle` when `rms_residual` vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleFit {
    pub axis: Vec3,
    pub cos_angle: f64,
    pub rms_residual: f64,
}

/// Fits a circle on the sphere to `n` samples uniformly spaced in the path
/// parameter. The axis is the eigenvector of the smallest eigenvalue of the
/// centered second-moment matrix, oriented so that its first non-zero
/// component among (z, y, x) is positive.
pub fn circle_fit(path: &dyn SphericalPath, n: usize) -> Result<CircleFit> {
    if n < 4 {
        return Err(Error::InvalidArgument("circle fit needs n >= 4".into()));
    }
    let (lo, hi) = path.domain();
    let points = crate::numerics::uniform_grid(lo, hi, n)
        .into_iter()
        .map(|u| path.point(u))
        .collect::<Result<Vec<_>>>()?;
    circle_fit_points(&points)
}

pub fn circle_fit_points(points: &[Vec3]) -> Result<CircleFit> {
    let n = points.len() as f64;
    let mean: Vec3 = points.iter().sum::<Vec3>() / n;
    let moment: Matrix3<f64> = points
        .iter()
        .map(|p| (p - mean) * (p - mean).transpose())
        .sum::<Matrix3<f64>>()
        / n;
    let eig = SymmetricEigen::new(moment);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    // a constant point or a two-point set spans fewer than two dimensions
    if eig.eigenvalues[order[1]] <= 1e-14 {
        return Err(Error::DegenerateFit);
    }
    let mut axis: Vec3 = eig.eigenvectors.column(order[0]).into_owned().normalize();
    let lead = [axis.z, axis.y, axis.x]
        .into_iter()
        .find(|c| c.abs() > 1e-12)
        .unwrap_or(1.0);
    if lead < 0.0 {
        axis = -axis;
    }
    let dots: Vec<f64> = points.iter().map(|p| p.dot(&axis)).collect();
    let cos_angle = dots.iter().sum::<f64>() / n;
    let rms_residual = (dots.iter().map(|d| (d - cos_angle).powi(2)).sum::<f64>() / n).sqrt();
    Ok(CircleFit {
        axis,
        cos_angle,
        rms_residual,
    })
}

/// `dC/du` of the Darboux indicatrix by the inner finite-difference step.
pub fn darboux_derivative(c: &CurveDef, t: f64) -> Result<Vec3> {
    let h = INNER_STEP_REL * c.domain_length();
    let cv = |x: f64| -> Result<Vec3> { Ok(frame_at(c, x)?.darboux_unit()) };
    Ok(central_d1([cv(t - 2.0 * h)?, cv(t - h)?, cv(t + h)?, cv(t + 2.0 * h)?], h))
}

/// `‖N × N′/‖N′‖ − C‖` at `t`, with `N′` by finite differences of the frame.
pub fn normal_darboux_identity(c: &CurveDef, t: f64) -> Result<f64> {
    let h = INNER_STEP_REL * c.domain_length();
    let nv = |x: f64| -> Result<Vec3> { Ok(frame_at(c, x)?.normal) };
    let dn = central_d1([nv(t - 2.0 * h)?, nv(t - h)?, nv(t + h)?, nv(t + 2.0 * h)?], h);
    let f = frame_at(c, t)?;
    Ok((f.normal.cross(&dn.normalize()) - f.darboux_unit()).norm())
}

/// Sign of `(τ/κ)′`, or `None` where `|ψ|` is below [`PSI_FLOOR`].
pub fn darboux_sign(c: &CurveDef, t: f64) -> Result<Option<f64>> {
    let psi = slant_psi(c, t)?;
    Ok((psi.abs() >= PSI_FLOOR).then(|| psi.signum()))
}

/// `‖C × C′/‖C′‖ − sign((τ/κ)′)·N‖`, or `None` where the sign is undefined.
pub fn darboux_normal_identity(c: &CurveDef, t: f64) -> Result<Option<f64>> {
    let Some(sign) = darboux_sign(c, t)? else {
        return Ok(None);
    };
    let f = frame_at(c, t)?;
    let dc = darboux_derivative(c, t)?;
    Ok(Some((f.darboux_unit().cross(&dc.normalize()) - f.normal * sign).norm()))
}

/// Closed form of the unit derivative of `C` in its own arclength,
/// `sign((τ/κ)′)·(κT − τB)/√(κ²+τ²)`.
pub fn darboux_tangent_closed_form(f: &Frame, sign: f64) -> Vec3 {
    (f.tangent * f.kappa - f.binormal * f.tau) * (sign / f.kappa.hypot(f.tau))
}

/// Distance between the numerically differentiated unit `C′` and
/// [`darboux_tangent_closed_form`], or `None` where the sign is undefined.
pub fn darboux_tangent_check(c: &CurveDef, t: f64) -> Result<Option<f64>> {
    let Some(sign) = darboux_sign(c, t)? else {
        return Ok(None);
    };
    let f = frame_at(c, t)?;
    let dc = darboux_derivative(c, t)?.normalize();
    Ok(Some((dc - darboux_tangent_closed_form(&f, sign)).norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::catalog;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

    fn equator() -> SphereCurve {
        let c = CurveDef::new("equator", "u", ["cos(u)", "sin(u)", "0"], (0.0, 2.0 * PI)).unwrap();
        SphereCurve::new(c, 65).unwrap()
    }

    #[test]
    fn tangent_indicatrix_of_paper_example() {
        let c = catalog("paper-example", &[]).unwrap();
        let sc = indicatrix(&c, Indicatrix::Tangent, 129).unwrap();
        for k in 0..200 {
            let s = 2.0 * PI * k as f64 / 199.0;
            let expected = Vec3::new(s.sin(), s.sin() * s.cos(), s.cos().powi(2));
            assert!((sc.point(s).unwrap() - expected).amax() <= 1e-9);
        }
    }

    #[test]
    fn helix_indicatrices() {
        let h = catalog("circular-helix", &[1.0, 1.0]).unwrap();
        let n = indicatrix(&h, Indicatrix::Normal, 65).unwrap();
        for k in 0..20 {
            let t = 0.3 * k as f64;
            let p = n.point(t).unwrap();
            assert!(p.z.abs() < 1e-14);
            assert!((p - Vec3::new(-t.cos(), -t.sin(), 0.0)).amax() < 1e-14);
        }
        assert!(matches!(
            indicatrix(&h, Indicatrix::Darboux, 65),
            Err(Error::DegenerateIndicatrix { which: 'C', .. })
        ));
        let line = catalog("line", &[]).unwrap();
        assert!(matches!(
            indicatrix(&line, Indicatrix::Tangent, 65),
            Err(Error::DegenerateIndicatrix { which: 'T', .. })
        ));
    }

    #[test]
    fn geodesic_curvature_examples() {
        let eq = equator();
        for sigma in [0.0, 1.0, 3.0, 6.0] {
            let s = sabban_frame(&eq, sigma).unwrap();
            assert!(s.kappa_g.abs() < 1e-10);
        }
        let h = catalog("circular-helix", &[1.0, 1.0]).unwrap();
        let t = indicatrix(&h, Indicatrix::Tangent, 65).unwrap();
        let (_, total) = t.sigma_span();
        assert!((total - 2.0 * PI * FRAC_1_SQRT_2).abs() < 1e-9);
        for k in 0..10 {
            let s = sabban_frame(&t, total * k as f64 / 9.0).unwrap();
            assert!((s.kappa_g - 1.0).abs() <= 1e-6, "{}", s.kappa_g);
        }
    }

    #[test]
    fn geodesic_curvature_matches_brute_force() {
        // T-indicatrix of the worked example at σ = 0: (sin s, sin s cos s, cos²s)
        let c = catalog("paper-example", &[]).unwrap();
        let sc = indicatrix(&c, Indicatrix::Tangent, 129).unwrap();
        let got = sabban_frame(&sc, 0.0).unwrap().kappa_g;
        let g = |s: f64| Vec3::new(s.sin(), s.sin() * s.cos(), s.cos().powi(2));
        let h = 1e-5;
        let dg = |s: f64| (g(s + h) - g(s - h)) / (2.0 * h);
        let tv = |s: f64| dg(s).normalize();
        let dt = (tv(h) - tv(-h)) / (2.0 * h) / dg(0.0).norm();
        let oracle = g(0.0).cross(&tv(0.0)).dot(&dt);
        assert!((got - oracle).abs() <= 1e-5, "{got} vs {oracle}");
    }

    #[test]
    fn circle_fits() {
        let eq = circle_fit(&equator(), 32).unwrap();
        assert!((eq.axis - Vec3::z()).amax() < 1e-12);
        assert!(eq.cos_angle.abs() < 1e-12);
        assert!(eq.rms_residual <= 1e-12);

        let h = catalog("circular-helix", &[1.0, 1.0]).unwrap();
        let t = circle_fit(&indicatrix(&h, Indicatrix::Tangent, 33).unwrap(), 32).unwrap();
        assert!((t.cos_angle - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(t.rms_residual <= 1e-8);
        let n = circle_fit(&indicatrix(&h, Indicatrix::Normal, 33).unwrap(), 32).unwrap();
        assert!(n.cos_angle.abs() < 1e-12);

        let p = circle_fit(&indicatrix(&catalog("paper-example", &[]).unwrap(), Indicatrix::Tangent, 33).unwrap(), 64)
            .unwrap();
        assert!(p.rms_residual > 1e-3);

        assert!(matches!(
            circle_fit_points(&[Vec3::x(); 5]),
            Err(Error::DegenerateFit)
        ));
    }

    #[test]
    fn non_unit_input_is_rejected() {
        let c = CurveDef::new("big", "u", ["2*cos(u)", "2*sin(u)", "0"], (0.0, 1.0)).unwrap();
        assert!(matches!(SphereCurve::new(c, 8), Err(Error::NonUnitInput { .. })));
    }

    #[test]
    fn sabban_frame_is_orthonormal_and_right_handed() {
        let c = catalog("paper-example", &[]).unwrap();
        for which in [Indicatrix::Tangent, Indicatrix::Normal] {
            let sc = indicatrix(&c, which, 129).unwrap();
            let (_, total) = sc.sigma_span();
            for k in 0..20 {
                let s = sabban_frame(&sc, total * (k as f64 + 0.5) / 20.0).unwrap();
                let m = Matrix3::from_columns(&[s.gamma, s.tvec, s.side]);
                assert!((m.transpose() * m - Matrix3::identity()).amax() <= 1e-9);
                assert!((m.determinant() - 1.0).abs() <= 1e-8);
            }
        }
        assert!(matches!(
            sabban_frame(&equator(), 7.0),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn spherical_residuals_are_second_order() {
        let c = catalog("paper-example", &[]).unwrap();
        let sc = indicatrix(&c, Indicatrix::Normal, 129).unwrap();
        let r1 = spherical_ode_residual(&sc, 2.0, 1e-2).unwrap();
        let r2 = spherical_ode_residual(&sc, 2.0, 5e-3).unwrap();
        assert!((3.5..=4.5).contains(&(r1 / r2)), "{r1} {r2}");
    }

    #[test]
    fn indicatrix_identities_on_paper_example() {
        let c = catalog("paper-example", &[]).unwrap();
        for k in 0..40 {
            let t = 2.0 * PI * (k as f64 + 0.25) / 40.0;
            assert!(normal_darboux_identity(&c, t).unwrap() <= 1e-6);
            if let Some(e) = darboux_normal_identity(&c, t).unwrap() {
                assert!(e <= 1e-6, "t={t} err={e}");
            }
            if let Some(e) = darboux_tangent_check(&c, t).unwrap() {
                assert!(e <= 1e-6, "t={t} err={e}");
            }
        }
        // C×C′ = −N where (τ/κ)′ < 0, e.g. near s = π/4
        assert_eq!(darboux_sign(&c, FRAC_PI_4).unwrap(), Some(-1.0));
    }

    #[test]
    fn indicatrix_parsing() {
        assert_eq!("C".parse::<Indicatrix>().unwrap(), Indicatrix::Darboux);
        assert!("Q".parse::<Indicatrix>().is_err());
    }
}
