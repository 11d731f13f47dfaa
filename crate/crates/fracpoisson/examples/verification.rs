//! A few groups of the cross-verification suite, and the negative control
//! that proves the suite can fail.
//!
//!     cargo run --release --example verification

use fracpoisson::report::Report;
use fracpoisson::specfun::Order;
use fracpoisson::verify::{
    check_degenerate, check_subordinator_identity, check_telescoping, check_transform_pairs, check_wright_renewal,
    Fault,
};
use fracpoisson::Result;

fn main() -> Result<()> {
    let beta = Order::new(0.5)?;
    let mut report = Report::new("example");
    report.extend(check_transform_pairs(beta));
    report.extend(check_telescoping(beta));
    report.extend(check_subordinator_identity(beta));
    report.extend(check_degenerate(Fault::None));
    report.extend(check_wright_renewal(beta, Fault::None));
    for c in &report.checks {
        println!("{}", c.line());
    }
    println!("all passed: {}", report.pass());

    println!("\nwith every reference Gamma value perturbed by 0.1%:");
    for c in check_wright_renewal(beta, Fault::WrongGamma) {
        println!("{}", c.line());
    }
    Ok(())
}
