//! Riemann-Liouville integrals, Caputo derivatives, and the fractional
//! Kolmogorov system solved by the counting probabilities.
//!
//!     cargo run --release --example fractional_calculus

use fracpoisson::frac_ops::{caputo_derivative, rl_fractional_integral, verify_fractional_ode_system, GridFunction};
use fracpoisson::gamma::gamma;
use fracpoisson::specfun::{ml, Order};
use fracpoisson::Result;

fn main() -> Result<()> {
    let grid = GridFunction::uniform_grid(0.0, 1e-3, 2001);
    let f = GridFunction::sample(grid.clone(), |t| t * t)?;

    // J^a t^2 = 2 t^(2+a) / Gamma(3+a)
    let a = 0.5;
    let j = rl_fractional_integral(&f, a)?;
    let worst = j.iter().map(|(t, v)| (v - 2.0 * t.powf(2.0 + a) / gamma(3.0 + a)).abs()).fold(0.0, f64::max);
    println!("J^0.5 t^2 on [0, 2]: max error {worst:.2e}");

    // D^a t^2 = 2 t^(2-a) / Gamma(3-a)
    let d = caputo_derivative(&f, a)?;
    let worst = d.iter().skip(1).map(|(t, v)| (v - 2.0 * t.powf(2.0 - a) / gamma(3.0 - a)).abs()).fold(0.0, f64::max);
    println!("D^0.5 t^2 on (0, 2]: max error {worst:.2e}");

    // relaxation: D^b u = -u is solved by E_b(-t^b)
    let b = 0.6;
    let u = GridFunction::try_sample(grid, |t| Ok(ml(b, 1.0, -t.powf(b))?.value))?;
    let r = caputo_derivative(&u, b)?.map(|t, v| v + u.values()[(t / 1e-3).round() as usize]);
    println!("D^0.6 E(-t^0.6) + E(-t^0.6) on [0.1, 2]: max residual {:.2e}", r.max_abs_on(0.1, 2.0));

    let beta = Order::new(0.5)?;
    for step in [2e-3, 1e-3] {
        let grid = GridFunction::uniform_grid(0.0, step, (5.0 / step) as usize + 1);
        let report = verify_fractional_ode_system(beta, 5, &grid, 5e-3)?;
        println!("Kolmogorov system, beta = 0.5, step {step}: max residual {:.3e}", report.max_residual);
    }
    Ok(())
}
