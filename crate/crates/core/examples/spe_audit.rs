// Off-path best responses and a numeric no-profitable-deviation audit.

use seqcontest::equilibrium::{best_response, invert_f, solve, verify_spe};
use seqcontest::kernels::PayoffKernel;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s = solve(&"1,2,1".parse()?, &PayoffKernel::Tullock, 1e-12)?;
    let f = s.fseq();
    println!("last mover after X_2 = 1/4: {:.6}", best_response(f, 3, 0.25)?);
    println!("f_1^-1(0) = {:.6}", invert_f(f, 1, 0.0)?);
    println!("middle players' best response to the leader:");
    for i in 0..=5 {
        let x = i as f64 / 5.0;
        println!("  X_1 = {x:.1}: {:.6}", best_response(f, 2, x)?);
    }
    let audit = verify_spe(&s, 1000)?;
    println!(
        "largest deviation gain {:.2e} (period {}, deviation {:.4})",
        audit.max_gain, audit.worst_period, audit.worst_deviation
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
