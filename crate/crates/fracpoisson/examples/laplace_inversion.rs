//! The Talbot inversion oracle: invert transforms whose originals are known
//! and report the worst disagreement.
//!
//!     cargo run --release --example laplace_inversion

use fracpoisson::laplace::{spow, talbot_invert, verify_pair, TransformPair, DEFAULT_NODES};
use fracpoisson::specfun::Order;
use fracpoisson::verify::log_grid;
use fracpoisson::xprec::Qd;
use fracpoisson::Result;

fn main() -> Result<()> {
    let times = log_grid(0.05, 50.0, 40);
    for b in [0.25, 0.5, 0.75] {
        let beta = Order::new(b)?;
        let pairs = [
            TransformPair::ml_density(beta),
            TransformPair::ml_survival(beta),
            TransformPair::stable_density(beta),
            TransformPair::inverse_subordinator(beta, 1.0),
        ];
        for pair in &pairs {
            let r = verify_pair(pair, &times, 1e-8)?;
            println!("{:<40} max |error| {:.2e}  {}", r.pair, r.max_abs_err, if r.pass { "ok" } else { "FAIL" });
        }
    }

    // an arbitrary closure; the original of 1/(sqrt(s)(1+sqrt(s))) is e^t erfc(sqrt(t))
    let f = |s| {
        let r = spow(s, 0.5);
        (r * (r + Qd::ONE)).recip()
    };
    let r = talbot_invert(f, 2.0, DEFAULT_NODES)?;
    println!("\nL^-1[1/(sqrt(s)(1+sqrt(s)))](2) = {:.15e} +- {:.1e}", r.value, r.abs_err);
    println!("closed form exp(t) erfc(sqrt(t))     = {:.15e}", 2f64.exp() * libm::erfc(2f64.sqrt()));
    Ok(())
}
