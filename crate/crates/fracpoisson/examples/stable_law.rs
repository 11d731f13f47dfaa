//! The one-sided stable law, its subordinator and the inverse subordinator.
//!
//!     cargo run --release --example stable_law

use fracpoisson::rng::RngStream;
use fracpoisson::specfun::Order;
use fracpoisson::stable::{
    inverse_subordinator_cdf, inverse_subordinator_pdf, sample_stable, stable_cdf, stable_pdf, stable_quantile,
    subordinator_pdf,
};
use fracpoisson::Result;

fn main() -> Result<()> {
    let beta = Order::new(0.5)?;
    println!("beta = 1/2 has the Levy-Smirnov closed form");
    for t in [0.05, 0.2, 1.0, 5.0] {
        let pdf = stable_pdf(beta, t)?;
        let exact = (-0.25 / t).exp() / (2.0 * std::f64::consts::PI.sqrt() * t.powf(1.5));
        let cdf = stable_cdf(beta, t)?;
        println!("t={t:<5} g={:.15e} (closed form {:.15e})  G={:.15e} ({})", pdf.value, exact, cdf.value, cdf.method);
    }

    let beta = Order::new(0.75)?;
    let median = stable_quantile(beta, 0.5)?;
    println!("\nmedian of the 0.75-stable law: {median:.12}");
    let mut rng = RngStream::new(7, 0);
    let draws = 100_000;
    let below = (0..draws).filter(|_| sample_stable(beta, &mut rng) <= median).count();
    println!("fraction of {draws} draws below it: {:.4}", below as f64 / draws as f64);

    println!("\nsubordinator density f(t, x) and inverse subordinator density h(x, t) at beta = 0.75");
    for x in [0.5, 1.0, 2.0] {
        println!(
            "x={x:<4} f(1,x)={:.12e}  h(x,1)={:.12e}  P(E_1 <= x)={:.12}",
            subordinator_pdf(beta, 1.0, x)?.value,
            inverse_subordinator_pdf(beta, x, 1.0)?.value,
            inverse_subordinator_cdf(beta, x, 1.0)?
        );
    }
    Ok(())
}
