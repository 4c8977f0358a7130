//! Deterministic quadrature, cumulative integration tables and inversion of
//! monotone cumulative functions.
//!
//! The quadrature is adaptive Simpson with a Richardson correction. It is
//! generic over [`Quadrature`] so that vector-valued integrands (positions of
//! constructed curves) are integrated in one pass with a shared error
//! estimate.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::Vec3;

/// Subdivision levels accepted before the error estimate is trusted.
const MIN_DEPTH: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_depth: 40,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument(
                "quadrature tolerances must be positive".into(),
            ));
        }
        if self.max_depth < 1 {
            return Err(Error::InvalidArgument("max_depth must be at least 1".into()));
        }
        Ok(())
    }
}

/// Values that adaptive Simpson can integrate.
pub trait Quadrature:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    /// Magnitude used by the error estimate (max-norm for vectors).
    fn magnitude(&self) -> f64;
    fn is_finite_value(&self) -> bool;
}

impl Quadrature for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Quadrature for Vec3 {
    fn magnitude(&self) -> f64 {
        self.amax()
    }
    fn is_finite_value(&self) -> bool {
        self.iter().all(|c| c.is_finite())
    }
}

/// Integrates `f` over `[a, b]`.
///
/// Returns `I` with `|I - ∫f| <= abs_tol + rel_tol·|I|` for smooth `f`.
pub fn integrate<V, F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<V>
where
    V: Quadrature,
    F: FnMut(f64) -> V,
{
    try_integrate(|x| Ok(f(x)), a, b, cfg)
}

/// Fallible variant of [`integrate`]: the first integrand error aborts the
/// quadrature and is returned unchanged.
pub fn try_integrate<V, F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<V>
where
    V: Quadrature,
    F: FnMut(f64) -> Result<V>,
{
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::InvalidArgument(format!(
            "integration bounds must satisfy a <= b, got [{a}, {b}]"
        )));
    }
    let mut eval = |x: f64| -> Result<V> {
        let v = f(x)?;
        if v.is_finite_value() {
            Ok(v)
        } else {
            Err(Error::NonFinite { at: x })
        }
    };
    let fa = eval(a)?;
    if a == b {
        return Ok(fa * 0.0);
    }
    let m = 0.5 * (a + b);
    let fm = eval(m)?;
    let fb = eval(b)?;
    let whole = simpson(a, b, fa, fm, fb);
    let eps = cfg.abs_tol + cfg.rel_tol * whole.magnitude();
    let mut state = Simpson {
        f: &mut eval,
        max_depth: cfg.max_depth,
    };
    state.refine(a, m, b, fa, fm, fb, whole, eps, 0)
}

/// Signed integral: `-∫_b^a f` when `a > b`.
pub(crate) fn try_integrate_signed<V, F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<V>
where
    V: Quadrature,
    F: FnMut(f64) -> Result<V>,
{
    if a <= b {
        try_integrate(f, a, b, cfg)
    } else {
        Ok(try_integrate(f, b, a, cfg)? * -1.0)
    }
}

fn simpson<V: Quadrature>(a: f64, b: f64, fa: V, fm: V, fb: V) -> V {
    (fa + fm * 4.0 + fb) * ((b - a) / 6.0)
}

struct Simpson<'f, F> {
    f: &'f mut F,
    max_depth: u32,
}

impl<F, V> Simpson<'_, F>
where
    V: Quadrature,
    F: FnMut(f64) -> Result<V>,
{
    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        m: f64,
        b: f64,
        fa: V,
        fm: V,
        fb: V,
        whole: V,
        eps: f64,
        depth: u32,
    ) -> Result<V> {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm)?;
        let frm = (self.f)(rm)?;
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        let delta = left + right - whole;
        if depth >= MIN_DEPTH && delta.magnitude() <= 15.0 * eps {
            return Ok(left + right + delta * (1.0 / 15.0));
        }
        if depth >= self.max_depth {
            return Err(Error::DepthExceeded {
                a,
                b,
                max_depth: self.max_depth,
            });
        }
        let l = self.refine(a, lm, m, fa, flm, fm, left, 0.5 * eps, depth + 1)?;
        let r = self.refine(m, rm, b, fm, frm, fb, right, 0.5 * eps, depth + 1)?;
        Ok(l + r)
    }
}

/// Tabulated cumulative integral `F(x) = ∫_{grid[0]}^{x} f`.
///
/// `slopes`, when present, holds the integrand at each grid point and is used
/// as the derivative of `F` by [`invert_monotone`].
#[derive(Debug, Clone, PartialEq)]
pub struct CumulativeTable {
    grid: Vec<f64>,
    values: Vec<f64>,
    slopes: Option<Vec<f64>>,
}

impl CumulativeTable {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::build(grid, values, None)
    }

    pub fn with_slopes(grid: Vec<f64>, values: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        if slopes.len() != grid.len() {
            return Err(Error::InvalidArgument(
                "slopes must match the grid length".into(),
            ));
        }
        Self::build(grid, values, Some(slopes))
    }

    fn build(grid: Vec<f64>, values: Vec<f64>, slopes: Option<Vec<f64>>) -> Result<Self> {
        if grid.len() < 2 || grid.len() != values.len() {
            return Err(Error::InvalidArgument(
                "table needs at least two points and matching lengths".into(),
            ));
        }
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument(
                "table grid must be strictly increasing".into(),
            ));
        }
        Ok(CumulativeTable {
            grid,
            values,
            slopes,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn slopes(&self) -> Option<&[f64]> {
        self.slopes.as_deref()
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn first_value(&self) -> f64 {
        self.values[0]
    }

    pub fn last_value(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn span(&self) -> (f64, f64) {
        (self.grid[0], self.grid[self.grid.len() - 1])
    }

    /// Index `i` of the segment `[grid[i], grid[i+1]]` whose values bracket `target`.
    fn bracket(&self, target: f64) -> Result<usize> {
        let (lo, hi) = (self.first_value(), self.last_value());
        if !(target >= lo && target <= hi) {
            return Err(Error::OutOfRange { target, lo, hi });
        }
        let k = self.values.partition_point(|&v| v < target);
        Ok(k.saturating_sub(1).min(self.len() - 2))
    }

    /// Cubic Hermite (or linear, without slopes) interpolant on segment `i`,
    /// returning value and derivative.
    fn interpolate(&self, i: usize, x: f64) -> (f64, f64) {
        let (x0, x1) = (self.grid[i], self.grid[i + 1]);
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let h = x1 - x0;
        match &self.slopes {
            Some(m) => {
                let (m0, m1) = (m[i] * h, m[i + 1] * h);
                let u = (x - x0) / h;
                let (u2, u3) = (u * u, u * u * u);
                let v = (2.0 * u3 - 3.0 * u2 + 1.0) * y0
                    + (u3 - 2.0 * u2 + u) * m0
                    + (-2.0 * u3 + 3.0 * u2) * y1
                    + (u3 - u2) * m1;
                let dv = (6.0 * u2 - 6.0 * u) * y0
                    + (3.0 * u2 - 4.0 * u + 1.0) * m0
                    + (-6.0 * u2 + 6.0 * u) * y1
                    + (3.0 * u2 - 2.0 * u) * m1;
                (v, dv / h)
            }
            None => (y0 + (y1 - y0) * (x - x0) / h, (y1 - y0) / h),
        }
    }
}

/// Cumulative integral of `f` over `n` uniformly spaced points of `[a, b]`.
pub fn cumulative<F>(mut f: F, a: f64, b: f64, n: usize, cfg: &QuadConfig) -> Result<CumulativeTable>
where
    F: FnMut(f64) -> f64,
{
    try_cumulative(|x| Ok(f(x)), a, b, n, cfg)
}

pub fn try_cumulative<F>(
    mut f: F,
    a: f64,
    b: f64,
    n: usize,
    cfg: &QuadConfig,
) -> Result<CumulativeTable>
where
    F: FnMut(f64) -> Result<f64>,
{
    if n < 2 {
        return Err(Error::InvalidArgument("cumulative table needs n >= 2".into()));
    }
    if !(a < b) {
        return Err(Error::InvalidArgument(format!(
            "cumulative table needs a < b, got [{a}, {b}]"
        )));
    }
    let grid = uniform_grid(a, b, n);
    let mut values = Vec::with_capacity(n);
    let mut slopes = Vec::with_capacity(n);
    values.push(0.0);
    for (i, w) in grid.windows(2).enumerate() {
        let inc: f64 = try_integrate(&mut f, w[0], w[1], cfg)?;
        values.push(values[i] + inc);
    }
    for &x in &grid {
        let v = f(x)?;
        if !v.is_finite() {
            return Err(Error::NonFinite { at: x });
        }
        slopes.push(v);
    }
    CumulativeTable::with_slopes(grid, values, slopes)
}

/// `n` points from `a` to `b` inclusive, with the last point exactly `b`.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { b } else { a + step * i as f64 })
        .collect()
}

/// Inverts the tabulated function at `target` using only the table.
///
/// Between grid points the table is interpolated by cubic Hermite segments
/// when slopes are stored and linearly otherwise; the interpolant is solved by
/// safeguarded Newton iteration.
pub fn invert_monotone(table: &CumulativeTable, target: f64) -> Result<f64> {
    let i = table.bracket(target)?;
    let (mut lo, mut hi) = (table.grid[i], table.grid[i + 1]);
    if table.values[i] == target {
        return Ok(lo);
    }
    if table.values[i + 1] == target {
        return Ok(hi);
    }
    let mut x = secant_guess(lo, hi, table.values[i], table.values[i + 1], target);
    for _ in 0..100 {
        let (v, dv) = table.interpolate(i, x);
        let r = v - target;
        if r == 0.0 {
            return Ok(x);
        }
        if r < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - r / dv;
        let next = if dv > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// Inverts `F(x) = values[i] + ∫_{grid[i]}^{x} f` exactly (to quadrature
/// accuracy) at `target`, with `f` as the Newton derivative. Falls back to the
/// secant and then bisection whenever a step leaves the bracket.
pub fn invert_monotone_with<F>(
    table: &CumulativeTable,
    mut f: F,
    target: f64,
    cfg: &QuadConfig,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let i = table.bracket(target)?;
    let x0 = table.grid[i];
    let base = table.values[i];
    if base == target {
        return Ok(x0);
    }
    if table.values[i + 1] == target {
        return Ok(table.grid[i + 1]);
    }
    let (mut lo, mut hi) = (x0, table.grid[i + 1]);
    let (mut f_lo, mut f_hi) = (base - target, table.values[i + 1] - target);
    let mut x = secant_guess(lo, hi, base, table.values[i + 1], target);
    let scale = 1.0 + target.abs();
    for _ in 0..200 {
        let r = base + try_integrate(&mut f, x0, x, cfg)? - target;
        if r.abs() <= 1e-15 * scale {
            return Ok(x);
        }
        if r < 0.0 {
            lo = x;
            f_lo = r;
        } else {
            hi = x;
            f_hi = r;
        }
        let slope = f(x)?;
        let newton = x - r / slope;
        let next = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            let secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
            if secant > lo && secant < hi {
                secant
            } else {
                0.5 * (lo + hi)
            }
        };
        if (next - x).abs() <= 2.0 * f64::EPSILON * x.abs().max(1.0) || hi - lo <= 0.0 {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

fn secant_guess(lo: f64, hi: f64, v_lo: f64, v_hi: f64, target: f64) -> f64 {
    if v_hi > v_lo {
        lo + (hi - lo) * (target - v_lo) / (v_hi - v_lo)
    } else {
        0.5 * (lo + hi)
    }
}

/// Fourth-order central first derivative with step `h`.
pub(crate) fn central_d1<V: Quadrature>(f: [V; 4], h: f64) -> V {
    // f = [f(x-2h), f(x-h), f(x+h), f(x+2h)]
    (f[0] - f[1] * 8.0 + f[2] * 8.0 - f[3]) * (1.0 / (12.0 * h))
}

/// Fourth-order central second derivative with step `h`.
pub(crate) fn central_d2<V: Quadrature>(f: [V; 5], h: f64) -> V {
    // f = [f(x-2h), f(x-h), f(x), f(x+h), f(x+2h)]
    (f[1] * 16.0 - f[0] - f[2] * 30.0 + f[3] * 16.0 - f[4]) * (1.0 / (12.0 * h * h))
}
