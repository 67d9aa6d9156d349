// Payoff kernels: g = -h/h', alpha = -g'(1), and T-times monotonicity.

use seqcontest::kernels::{check_t_monotone, DerivativeChain, PayoffKernel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let kernels: Vec<PayoffKernel> = ["tullock", "linear:a=0.7", "exp:a=1/2,b=2", "log", "power"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    for k in &kernels {
        let x = 0.5;
        println!(
            "{k:<16} h(0.5) = {:.6}  g(0.5) = {:.6}  alpha = {:.6}",
            k.h(x)?,
            k.g_derivative(0, x)?,
            k.alpha()?
        );
        for m in [2, 4] {
            let r = check_t_monotone(k, m, 1001, false)?;
            match r.first_failure {
                None => println!("    {m}-times monotone"),
                Some(f) => println!("    not {m}-times monotone: order {} at X = {:.3}", f.order, f.x),
            }
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
