//! Exact samplers and seeded path simulation checked against the analytic
//! laws.
//!
//!     cargo run --release --example monte_carlo

use fracpoisson::montecarlo::{
    count_histogram, empirical_counting_pmf, empirical_erlang, sample_waiting_times, simulate_counting, tail_slope,
};
use fracpoisson::processes::FractionalPoisson;
use fracpoisson::renewal::WaitingTimeLaw;
use fracpoisson::rng::RngStream;
use fracpoisson::specfun::Order;
use fracpoisson::Result;

fn main() -> Result<()> {
    let beta = Order::new(0.5)?;
    let law = WaitingTimeLaw::ml(beta);
    let fpp = FractionalPoisson::standard(beta);

    let path = simulate_counting(&law, 10.0, &mut RngStream::new(1, 0))?;
    println!("one path of {} up to t=10: {} events, N(1) = {}", law.tag(), path.len(), path.count_at(1.0));

    let pmf = empirical_counting_pmf(&law, 1.0, 50_000, 42)?;
    let analytic = fpp.counting_probs(1.0, 8)?.probs;
    println!("\ncounting pmf at t=1 from {} paths", pmf.paths());
    for (n, a) in analytic.iter().enumerate() {
        println!("n={n} empirical {:.5} +- {:.5}  analytic {a:.5}", pmf.probs[n], pmf.std_err[n]);
    }
    println!("largest deviation {:.2} sigma", pmf.max_z(&analytic));

    for t in [1.0, 5.0] {
        let hist = count_histogram(&law, t, 7, 0..50_000)?;
        println!(
            "E N({t}) = {:.4} +- {:.4}, analytic {:.4}",
            hist.mean(),
            hist.std_err_of_mean(),
            fpp.renewal_function(t)?.value
        );
    }

    let epochs = empirical_erlang(&law, 3, 5_000, 11)?;
    println!("\nthird event time: KS {:.4} against the 1% critical value {:.4}", epochs.ks_statistic, epochs.critical);

    let draws = sample_waiting_times(&WaitingTimeLaw::stable(beta), 100_000, 3)?;
    println!("stable waiting times: tail slope {:.3} (expected -0.5)", tail_slope(&draws, 1e2, 1e4, 9)?);

    let a = simulate_counting(&law, 5.0, &mut RngStream::new(9, 17))?;
    let b = simulate_counting(&law, 5.0, &mut RngStream::new(9, 17))?;
    println!("same seed and stream give the same path: {}", a.len() == b.len() && a.count_at(5.0) == b.count_at(5.0));
    Ok(())
}
