//! Riemann-Liouville integral and Caputo derivative of sampled functions.
//!
//! Both operators use product integration on a uniform grid from 0: the
//! integrand is interpolated piecewise linearly (integral) or its
//! derivative piecewise constantly (L1 derivative), and the weakly
//! singular kernel is integrated exactly against the interpolant.

use crate::error::{Error, Result};
use crate::gamma::rgamma;
use crate::processes::FractionalPoisson;
use crate::report::nan_max;
use crate::specfun::Order;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Uniform,
    Logarithmic,
    Irregular,
}

/// Values sampled on a strictly increasing grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridFunction {
    grid: Vec<f64>,
    values: Vec<f64>,
    spacing: Spacing,
}

const SPACING_TOL: f64 = 1e-12;

fn classify(grid: &[f64]) -> Spacing {
    let n = grid.len() - 1;
    if n == 0 {
        return Spacing::Uniform;
    }
    let (a, b) = (grid[0], grid[n]);
    let h = (b - a) / n as f64;
    let scale = a.abs().max(b.abs()).max(h);
    if grid.iter().enumerate().all(|(i, &t)| (t - (a + i as f64 * h)).abs() <= SPACING_TOL * scale) {
        return Spacing::Uniform;
    }
    if a > 0.0 {
        let (la, lb) = (a.ln(), b.ln());
        let lh = (lb - la) / n as f64;
        let lscale = la.abs().max(lb.abs()).max(lh);
        if grid.iter().enumerate().all(|(i, &t)| (t.ln() - (la + i as f64 * lh)).abs() <= SPACING_TOL * lscale) {
            return Spacing::Logarithmic;
        }
    }
    Spacing::Irregular
}

impl GridFunction {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<GridFunction> {
        if grid.is_empty() {
            return Err(Error::Domain("empty grid".into()));
        }
        if grid.len() != values.len() {
            return Err(Error::Domain(format!("{} grid points but {} values", grid.len(), values.len())));
        }
        if grid.iter().any(|t| !t.is_finite()) || grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("grid must be finite and strictly increasing".into()));
        }
        let spacing = classify(&grid);
        Ok(GridFunction { grid, values, spacing })
    }

    /// Samples `f` on `grid`.
    pub fn sample(grid: Vec<f64>, f: impl FnMut(f64) -> f64) -> Result<GridFunction> {
        let values = grid.iter().copied().map(f).collect();
        GridFunction::new(grid, values)
    }

    pub fn try_sample(grid: Vec<f64>, f: impl FnMut(f64) -> Result<f64>) -> Result<GridFunction> {
        let values = grid.iter().copied().map(f).collect::<Result<Vec<_>>>()?;
        GridFunction::new(grid, values)
    }

    /// `points` equally spaced points t0, t0 + h, ...
    pub fn uniform_grid(t0: f64, step: f64, points: usize) -> Vec<f64> {
        (0..points).map(|i| t0 + i as f64 * step).collect()
    }

    pub fn linspace(a: f64, b: f64, points: usize) -> Vec<f64> {
        if points == 1 {
            return vec![a];
        }
        let h = (b - a) / (points - 1) as f64;
        (0..points).map(|i| if i + 1 == points { b } else { a + i as f64 * h }).collect()
    }

    pub fn logspace(a: f64, b: f64, points: usize) -> Vec<f64> {
        GridFunction::linspace(a.ln(), b.ln(), points).into_iter().map(f64::exp).collect()
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.grid.iter().copied().zip(self.values.iter().copied())
    }

    /// The step of a uniform grid.
    pub fn step(&self) -> Option<f64> {
        match (self.spacing, self.grid.len()) {
            (Spacing::Uniform, n) if n >= 2 => Some((self.grid[n - 1] - self.grid[0]) / (n - 1) as f64),
            _ => None,
        }
    }

    /// The step, for a uniform grid starting at 0.
    pub fn origin_step(&self) -> Result<f64> {
        match self.step() {
            Some(h) if self.grid[0].abs() <= SPACING_TOL * h => Ok(h),
            _ => Err(Error::Domain("operation needs a uniform grid starting at 0".into())),
        }
    }

    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> GridFunction {
        let values = self.iter().map(|(t, v)| f(t, v)).collect();
        GridFunction { grid: self.grid.clone(), values, spacing: self.spacing }
    }

    /// Pointwise difference of two functions on the same grid.
    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction> {
        if self.grid != other.grid {
            return Err(Error::Domain("grids differ".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(GridFunction { grid: self.grid.clone(), values, spacing: self.spacing })
    }

    /// max |f(t)| over grid points in [lo, hi]; NaN values count as infinite.
    pub fn max_abs_on(&self, lo: f64, hi: f64) -> f64 {
        self.iter()
            .filter(|&(t, _)| t >= lo && t <= hi)
            .map(|(_, v)| if v.is_nan() { f64::INFINITY } else { v.abs() })
            .fold(0.0, nan_max)
    }
}

/// m^p [(1 + 1/m)^p - 2 + (1 - 1/m)^p], the second difference of k^p.
fn second_difference(m: usize, p: f64) -> f64 {
    let m = m as f64;
    m.powf(p) * ((p * (1.0 / m).ln_1p()).exp_m1() + (p * (-1.0 / m).ln_1p()).exp_m1())
}

/// (j+1)^p - j^p.
fn first_difference(j: usize, p: f64) -> f64 {
    if j == 0 {
        return 1.0;
    }
    let j = j as f64;
    j.powf(p) * (p * (1.0 / j).ln_1p()).exp_m1()
}

/// J^α f(t) = (1/Γ(α)) ∫_0^t (t-τ)^(α-1) f(τ) dτ by the product
/// trapezoidal rule; α = 1 is the cumulative trapezoid.
pub fn rl_fractional_integral(f: &GridFunction, alpha: f64) -> Result<GridFunction> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("integral order {alpha} outside (0, 1]")));
    }
    let h = f.origin_step()?;
    let v = &f.values;
    let m = v.len();
    let p = alpha + 1.0;
    let b: Vec<f64> = (0..m).map(|j| if j == 0 { 1.0 } else { second_difference(j, p) }).collect();
    let c = h.powf(alpha) * rgamma(alpha + 2.0);
    let mut out = vec![0.0; m];
    for k in 1..m {
        let kf = k as f64;
        // first weight: (k-1)^p - (k-1-α) k^α
        let a0 = if k == 1 { alpha } else { kf.powf(p) * ((p * (-1.0 / kf).ln_1p()).exp_m1() + p / kf) };
        let mut acc = a0 * v[0] + v[k];
        for j in 1..k {
            acc += b[k - j] * v[j];
        }
        out[k] = c * acc;
    }
    Ok(GridFunction { grid: f.grid.clone(), values: out, spacing: f.spacing })
}

/// Caputo derivative of order α ∈ (0, 1) by the L1 scheme; α = 1 gives
/// central differences. The value at t = 0 is not defined and is NaN.
pub fn caputo_derivative(f: &GridFunction, alpha: f64) -> Result<GridFunction> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("derivative order {alpha} outside (0, 1]")));
    }
    let h = f.origin_step()?;
    let v = &f.values;
    let m = v.len();
    if !v[0].is_finite() {
        return Err(Error::Domain("Caputo derivative needs a finite value at t = 0".into()));
    }
    let mut out = vec![f64::NAN; m];
    if alpha == 1.0 {
        for k in 1..m {
            out[k] = if k + 1 < m { (v[k + 1] - v[k - 1]) / (2.0 * h) } else { (v[k] - v[k - 1]) / h };
        }
        return Ok(GridFunction { grid: f.grid.clone(), values: out, spacing: f.spacing });
    }
    let p = 1.0 - alpha;
    let w: Vec<f64> = (0..m).map(|j| first_difference(j, p)).collect();
    let c = h.powf(-alpha) * rgamma(2.0 - alpha);
    let d: Vec<f64> = v.windows(2).map(|x| x[1] - x[0]).collect();
    for k in 1..m {
        let mut acc = 0.0;
        for j in 0..k {
            acc += w[j] * d[k - 1 - j];
        }
        out[k] = c * acc;
    }
    Ok(GridFunction { grid: f.grid.clone(), values: out, spacing: f.spacing })
}

/// Residual of the fractional Kolmogorov system D^β p_n = p_(n-1) - p_n.
#[derive(Clone, Debug, Serialize)]
pub struct OdeReport {
    pub beta: f64,
    pub step: f64,
    pub window: (f64, f64),
    /// (n, max |r_n| over the window), from n = 0.
    pub residuals: Vec<(u32, f64)>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Start of the window on which residuals are measured; the solutions are
/// singular at t = 0.
pub const ODE_WINDOW_START: f64 = 0.1;

/// Checks the counting probabilities of the standard fractional Poisson
/// process against D^β p_0 = -p_0 and D^β p_n = p_(n-1) - p_n, n ≤ n_max.
pub fn verify_fractional_ode_system(beta: Order, n_max: u32, grid: &[f64], tol: f64) -> Result<OdeReport> {
    let proc = FractionalPoisson::standard(beta);
    let probe = GridFunction::new(grid.to_vec(), vec![0.0; grid.len()])?;
    let h = probe.origin_step()?;
    let end = *grid.last().unwrap();
    let window = (ODE_WINDOW_START, end);
    let mut prev: Option<GridFunction> = None;
    let mut residuals = Vec::new();
    for n in 0..=n_max {
        let p = GridFunction::try_sample(grid.to_vec(), |t| Ok(proc.counting_prob(n, t)?.value))?;
        let d = caputo_derivative(&p, beta.get())?;
        let rhs = match &prev {
            Some(q) => q.sub(&p)?,
            None => p.map(|_, v| -v),
        };
        residuals.push((n, d.sub(&rhs)?.max_abs_on(window.0, window.1)));
        prev = Some(p);
    }
    let max_residual = residuals.iter().map(|r| r.1).fold(0.0, nan_max);
    Ok(OdeReport {
        beta: beta.get(),
        step: h,
        window,
        residuals,
        max_residual,
        tolerance: tol,
        pass: max_residual <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::ml;
    use crate::stable::{inverse_subordinator_pdf, subordinator_pdf};
    use proptest::prelude::*;

    fn unit_grid(h: f64, end: f64) -> Vec<f64> {
        GridFunction::uniform_grid(0.0, h, (end / h).round() as usize + 1)
    }

    #[test]
    fn grid_validation_and_spacing() {
        assert!(GridFunction::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(GridFunction::new(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
        let g = GridFunction::sample(unit_grid(1e-3, 5.0), |t| t).unwrap();
        assert_eq!(g.spacing(), Spacing::Uniform);
        assert!((g.step().unwrap() - 1e-3).abs() < 1e-15);
        let g = GridFunction::sample(GridFunction::logspace(0.01, 100.0, 50), |t| t).unwrap();
        assert_eq!(g.spacing(), Spacing::Logarithmic);
        assert!(g.origin_step().is_err());
        let g = GridFunction::new(vec![0.0, 1.0, 3.0, 3.5], vec![0.0; 4]).unwrap();
        assert_eq!(g.spacing(), Spacing::Irregular);
        assert!(rl_fractional_integral(&g, 0.5).is_err());
    }

    #[test]
    fn first_weight_matches_direct_formula() {
        // (k-1)^(α+1) - (k-1-α) k^α at moderate k, where the direct form is accurate
        let alpha: f64 = 0.37;
        let g = GridFunction::sample(unit_grid(1.0, 12.0), |t| if t == 0.0 { 1.0 } else { 0.0 }).unwrap();
        let j = rl_fractional_integral(&g, alpha).unwrap();
        for k in 1..12usize {
            let kf = k as f64;
            let a0 = (kf - 1.0).powf(alpha + 1.0) - (kf - 1.0 - alpha) * kf.powf(alpha);
            assert!((j.values()[k] - a0 * rgamma(alpha + 2.0)).abs() < 1e-13, "{k}");
        }
    }

    #[test]
    fn integral_of_one() {
        let g = GridFunction::sample(unit_grid(1e-3, 2.0), |_| 1.0).unwrap();
        let j1 = rl_fractional_integral(&g, 1.0).unwrap();
        for (t, v) in j1.iter() {
            assert!((v - t).abs() < 1e-12);
        }
        let jh = rl_fractional_integral(&g, 0.5).unwrap();
        assert!((jh.values()[1000] - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-12);
    }

    #[test]
    fn semigroup() {
        let f = GridFunction::sample(unit_grid(1e-3, 1.0), |t| t).unwrap();
        let a = rl_fractional_integral(&rl_fractional_integral(&f, 0.4).unwrap(), 0.3).unwrap();
        let b = rl_fractional_integral(&f, 0.7).unwrap();
        assert!(a.sub(&b).unwrap().max_abs_on(0.0, 1.0) <= 1e-4);
    }

    #[test]
    fn caputo_of_constant_vanishes() {
        let f = GridFunction::sample(unit_grid(1e-2, 3.0), |_| 2.5).unwrap();
        let d = caputo_derivative(&f, 0.4).unwrap();
        assert!(d.values()[0].is_nan());
        assert_eq!(d.max_abs_on(0.01, 3.0), 0.0);
    }

    #[test]
    fn caputo_relaxation() {
        let a = 0.5;
        let f = GridFunction::try_sample(unit_grid(1e-3, 5.0), |t| Ok(ml(a, 1.0, -t.powf(a))?.value)).unwrap();
        let d = caputo_derivative(&f, a).unwrap();
        let r = d.sub(&f.map(|_, v| -v)).unwrap();
        assert!(r.max_abs_on(0.1, 5.0) <= 1e-3, "{}", r.max_abs_on(0.1, 5.0));
    }

    #[test]
    fn caputo_power_law() {
        // D^α t = t^(1-α)/Γ(2-α), exact for the L1 scheme
        let f = GridFunction::sample(unit_grid(1e-2, 2.0), |t| t).unwrap();
        let d = caputo_derivative(&f, 0.3).unwrap();
        let want = f.map(|t, _| t.powf(0.7) * rgamma(1.7));
        assert!(d.sub(&want).unwrap().max_abs_on(0.01, 2.0) < 1e-12);
    }

    #[test]
    fn classical_limit() {
        let f = GridFunction::sample(unit_grid(1e-3, 3.0), f64::sin).unwrap();
        let d = caputo_derivative(&f, 1.0).unwrap();
        let c = f.map(|t, _| t.cos());
        assert!(d.sub(&c).unwrap().max_abs_on(1e-3, 3.0 - 1e-3) < 1e-6);
        let near = caputo_derivative(&f, 0.999).unwrap();
        assert!(near.sub(&d).unwrap().max_abs_on(0.1, 2.9) < 2e-3);
    }

    #[test]
    fn inverse_subordinator_is_fractional_integral() {
        let b = Order::new(0.5).unwrap();
        let f = GridFunction::try_sample(unit_grid(1e-3, 5.0), |t| {
            if t == 0.0 {
                Ok(0.0)
            } else {
                Ok(subordinator_pdf(b, t, 1.0)?.value)
            }
        })
        .unwrap();
        let j = rl_fractional_integral(&f, 0.5).unwrap();
        let want = GridFunction::try_sample(f.grid().to_vec(), |t| {
            if t == 0.0 {
                Ok(0.0)
            } else {
                Ok(inverse_subordinator_pdf(b, 1.0, t)?.value)
            }
        })
        .unwrap();
        assert!(j.sub(&want).unwrap().max_abs_on(0.5, 5.0) <= 1e-4);
    }

    #[test]
    fn poisson_ode_system() {
        let r = verify_fractional_ode_system(Order::new(1.0).unwrap(), 5, &unit_grid(1e-3, 5.0), 1e-4).unwrap();
        assert!(r.pass, "{:?}", r.residuals);
    }

    #[test]
    fn fractional_ode_system_and_order() {
        let b = Order::new(0.5).unwrap();
        let coarse = verify_fractional_ode_system(b, 5, &unit_grid(1e-3, 5.0), 5e-3).unwrap();
        assert!(coarse.pass, "{:?}", coarse.residuals);
        let fine = verify_fractional_ode_system(b, 5, &unit_grid(5e-4, 5.0), 5e-3).unwrap();
        assert!(coarse.max_residual / fine.max_residual >= 2f64.powf(1.4));
    }

    proptest! {
        #[test]
        fn integral_is_linear(a in -3.0f64..3.0, alpha in 0.1f64..1.0) {
            let grid = unit_grid(0.01, 1.0);
            let f = GridFunction::sample(grid.clone(), |t| t * t).unwrap();
            let g = GridFunction::sample(grid, f64::cos).unwrap();
            let sum = f.map(|_, v| a * v).sub(&g.map(|_, v| -v)).unwrap();
            let lhs = rl_fractional_integral(&sum, alpha).unwrap();
            let jf = rl_fractional_integral(&f, alpha).unwrap();
            let jg = rl_fractional_integral(&g, alpha).unwrap();
            for k in 0..lhs.len() {
                let rhs = a * jf.values()[k] + jg.values()[k];
                prop_assert!((lhs.values()[k] - rhs).abs() < 1e-12 * (1.0 + rhs.abs()));
            }
        }

        #[test]
        fn integral_of_increasing_is_increasing(alpha in 0.05f64..1.0, c in 0.0f64..3.0) {
            let f = GridFunction::sample(unit_grid(0.01, 2.0), |t| c + t * t).unwrap();
            let j = rl_fractional_integral(&f, alpha).unwrap();
            prop_assert!(j.values().windows(2).all(|w| w[1] >= w[0]));
        }
    }
}
