//! The generic renewal machinery applied to a waiting-time law supplied by
//! the caller: Gamma(2, 1), whose renewal function is known in closed form.
//!
//!     cargo run --release --example renewal_equation

use fracpoisson::frac_ops::GridFunction;
use fracpoisson::renewal::{
    conv_power_grid, counting_probs, erlang, renewal_equation_residual, renewal_function, CustomLaw, RenewalMethod,
    WaitingTimeLaw,
};
use fracpoisson::specfun::Order;
use fracpoisson::xprec::Qd;
use fracpoisson::Result;

fn exact_renewal(t: f64) -> f64 {
    t / 2.0 - 0.25 + 0.25 * (-2.0 * t).exp()
}

fn main() -> Result<()> {
    let law = WaitingTimeLaw::custom(CustomLaw::new(
        "gamma(2,1)",
        |t| t * (-t).exp(),
        |t| 1.0 - (1.0 + t) * (-t).exp(),
        |s| (s + Qd::ONE).powi(2).recip(),
        2.0,
    ));

    println!("renewal function of {}: Laplace inversion against the closed form", law.tag());
    for t in [0.5, 2.0, 8.0] {
        let laplace = renewal_function(&law, t, RenewalMethod::Laplace)?;
        println!("t={t:<4} {:.15} {:.15}", laplace.value, exact_renewal(t));
    }

    let grid = GridFunction::uniform_grid(0.0, 0.01, 801);
    let m = GridFunction::sample(grid.clone(), exact_renewal)?;
    let residual = renewal_equation_residual(&law, &m)?;
    println!("\nrenewal equation residual of the closed form on [0, 8]: {:.2e}", residual.max_abs_on(0.0, 8.0));

    // The 3-fold convolution of Gamma(2,1) is Gamma(6,1).
    let q3 = conv_power_grid(&law, 3, &grid)?;
    let gamma6 = |t: f64| t.powi(5) * (-t).exp() / 120.0;
    let worst = q3.iter().map(|(t, v)| (v - gamma6(t)).abs()).fold(0.0, f64::max);
    println!("grid convolution q_3 against Gamma(6,1): max error {worst:.2e}");

    let d = counting_probs(&law, 4.0, 12)?;
    println!("\np_n(4) by grid convolution: {:?}", d.probs.iter().map(|p| format!("{p:.6}")).collect::<Vec<_>>());
    println!("mean count {:.6} against m(4) = {:.6}", d.mean(), exact_renewal(4.0));

    // Laws with closed forms get the Erlang family and both renewal routes.
    let ml = WaitingTimeLaw::ml(Order::new(0.5)?);
    let family = erlang(&ml, 3)?;
    println!("\n{}: Erlang CDF of the third event at t=4: {:.15}", ml.tag(), family.cdf(4.0)?.value);
    println!("telescoping error p_3 - int(q_3 - q_4) at t=4: {:.2e}", family.telescoping_error(4.0)?);
    let series = renewal_function(&ml, 4.0, RenewalMethod::SeriesSum)?.value;
    let laplace = renewal_function(&ml, 4.0, RenewalMethod::Laplace)?.value;
    println!("m(4) by Erlang series {series:.15}, by inversion {laplace:.15}");
    Ok(())
}
