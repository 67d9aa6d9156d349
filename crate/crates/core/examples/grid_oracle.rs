// Brute-force backward induction compared with the solver.

use seqcontest::equilibrium::solve;
use seqcontest::kernels::PayoffKernel;
use seqcontest::oracle::{grid_spe, sim_fixed_point};
use seqcontest::recursion::Contest;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let k = PayoffKernel::Tullock;
    for text in ["2", "1,1", "1,2,1", "2,2"] {
        let c: Contest = text.parse()?;
        let s = solve(&c, &k, 1e-12)?;
        for step in [1e-2, 1e-3] {
            let g = grid_spe(&c, &k, step)?;
            println!(
                "{c:<6} step {step:.0e}: grid total {:.6}  solver {:.6}  digest {}",
                g.total, s.x_star, g.value_tables_digest
            );
        }
    }
    for n in [2, 10, 30] {
        println!("simultaneous n = {n}: best-response iteration gives {:.12}", sim_fixed_point(n, &k, 1e-13)?);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
