//! Counting probabilities, event-time densities and renewal functions of
//! the fractional Poisson and Wright processes.
//!
//!     cargo run --release --example counting_probabilities

use fracpoisson::processes::{FractionalPoisson, WrightProcess};
use fracpoisson::specfun::Order;
use fracpoisson::Result;

fn main() -> Result<()> {
    let beta = Order::new(0.5)?;
    let fpp = FractionalPoisson::standard(beta);
    let wright = WrightProcess::new(beta);
    let t = 2.0;

    println!("p_n({t}) and q_n({t}) at beta = 0.5");
    println!("{:>3} {:>22} {:>22} {:>22}", "n", "fpp p_n", "fpp q_n", "wright p_n");
    let fpp_dist = fpp.counting_probs(t, 10)?;
    let wright_dist = wright.counting_probs(t, 10)?;
    for n in 0..=10u32 {
        let q = if n == 0 { String::from("-") } else { format!("{:.15e}", fpp.erlang_density(n, t)?.value) };
        println!("{n:>3} {:>22.15e} {q:>22} {:>22.15e}", fpp_dist.probs[n as usize], wright_dist.probs[n as usize]);
    }
    println!(
        "mass up to n=10: fpp {:.12}, wright {:.12}",
        fpp_dist.probs.iter().sum::<f64>(),
        wright_dist.probs.iter().sum::<f64>()
    );

    println!("\nrenewal functions against t^beta/Gamma(1+beta)");
    for t in [1.0f64, 10.0, 100.0] {
        let law = t.sqrt() / 0.886_226_925_452_758;
        let m_fpp = fpp.renewal_function(t)?;
        let m_wright = wright.renewal_function(t)?;
        println!(
            "t={t:<6} fpp {:.12} ({})  wright {:.12} ({})  power law {:.12}",
            m_fpp.value, m_fpp.method, m_wright.value, m_wright.method, law
        );
    }

    println!("\nat beta = 1 the fractional Poisson process is the Poisson process");
    let poisson = FractionalPoisson::poisson(1.0)?;
    for n in 0..4u32 {
        let exact = 2f64.powi(n as i32) * (-2f64).exp() / (1..=n).product::<u32>().max(1) as f64;
        println!("p_{n}(2) = {:.16} (Poisson {:.16})", poisson.counting_prob(n, 2.0)?.value, exact);
    }
    let lattice = WrightProcess::new(Order::new(1.0)?);
    println!("the Wright process at beta = 1 counts floor(t): m(3.7) = {}", lattice.renewal_function(3.7)?.value);
    Ok(())
}
