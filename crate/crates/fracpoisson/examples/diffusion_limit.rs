//! Rescaled renewal processes under h = τ^β and their diffusion limit.
//!
//!     cargo run --release --example diffusion_limit

use fracpoisson::limits::{
    convergence_sweep, erlang_limit, extrapolated_erlang, extrapolated_sojourn, limit_density_counting,
    rescaled_transform, sojourn_limit, ScalingPair, SWEEP_PATHS, SWEEP_SEED, SWEEP_TAUS,
};
use fracpoisson::processes::ProcessKind;
use fracpoisson::specfun::Order;
use fracpoisson::Result;

fn main() -> Result<()> {
    let beta = Order::new(0.5)?;
    let (kappa, s) = (1.0, 2.0);

    println!("Laplace-Laplace transform of the rescaled counting process at kappa={kappa}, s={s}");
    for tau in [1e-1, 1e-2, 1e-3, 1e-4] {
        let pair = ScalingPair::canonical(beta, tau)?;
        println!(
            "tau={tau:<7} h={:<7.4} fpp {:.10}  wright {:.10}",
            pair.h,
            rescaled_transform(ProcessKind::Fpp, beta, pair, kappa, s)?,
            rescaled_transform(ProcessKind::Wright, beta, pair, kappa, s)?
        );
    }
    for process in [ProcessKind::Fpp, ProcessKind::Wright] {
        let c = extrapolated_sojourn(process, beta, kappa, s)?;
        let e = extrapolated_erlang(process, beta, kappa, s)?;
        println!(
            "{process}: extrapolated {:.12} (limit {:.12}), event times {:.12} (limit {:.12})",
            c.value,
            sojourn_limit(beta, kappa, s),
            e.value,
            erlang_limit(beta, kappa, s)
        );
    }

    println!("\nlimit density of the counting value at t=1");
    for x in [0.25, 0.5, 1.0, 2.0] {
        println!("x={x:<5} {:.12}", limit_density_counting(beta, x, 1.0)?.value);
    }

    let paths = SWEEP_PATHS / 4;
    println!("\nKS sweep of h N(1) against the limit law ({paths} paths per tau)");
    let report = convergence_sweep(ProcessKind::Wright, beta, 1.0, &SWEEP_TAUS, paths, SWEEP_SEED)?;
    for row in &report.rows {
        println!("tau={:<5} h={:.4} KS={:.4}", row.tau, row.h, row.ks_statistic);
    }
    println!("monotone within two sigma: {}", report.monotone);
    Ok(())
}
