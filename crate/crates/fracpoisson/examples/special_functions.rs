//! Mittag-Leffler and Wright functions with their error bounds.
//!
//!     cargo run --release --example special_functions

use fracpoisson::specfun::{m_wright, ml, ml_deriv_scaled, wright};
use fracpoisson::Result;

fn main() -> Result<()> {
    println!("E_beta(-t^beta), the fractional Poisson survival function");
    println!("{:>8} {:>22} {:>22} {:>22}", "t", "beta=0.25", "beta=0.5", "beta=0.75");
    for t in [0.1, 1.0, 10.0, 100.0] {
        let row: Vec<String> = [0.25, 0.5, 0.75]
            .iter()
            .map(|&b| ml(b, 1.0, -f64::powf(t, b)).map(|e| format!("{:.15e}", e.value)))
            .collect::<Result<_>>()?;
        println!("{t:>8} {:>22} {:>22} {:>22}", row[0], row[1], row[2]);
    }

    // large arguments switch to the asymptotic expansion
    let e = ml(0.5, 1.0, -1e4)?;
    println!("\nE_0.5(-1e4) = {:.15e} +- {:.1e} via {}", e.value, e.abs_err, e.method);

    let d = ml_deriv_scaled(3, 0.5, 2.0)?;
    println!("x^3/3! E_0.5'''(-x) at x = 2: {:.15e} ({})", d.value, d.method);

    let w = wright(-0.5, 0.5, -1.0)?;
    println!("W_(-1/2, 1/2)(-1) = {:.15e}", w.value);
    for x in [0.0, 0.5, 1.0, 2.0] {
        let m = m_wright(0.5, x)?;
        println!(
            "M_1/2({x}) = {:.15e}   exp(-x^2/4)/sqrt(pi) = {:.15e}",
            m.value,
            (-x * x / 4.0).exp() / std::f64::consts::PI.sqrt()
        );
    }
    Ok(())
}
