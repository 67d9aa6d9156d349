// Large-contest approximation and convergence of total effort to one.

use seqcontest::analysis::{convergence_table, equivalent_sim_size, large_contest_approx, Family};
use seqcontest::equilibrium::solve;
use seqcontest::kernels::PayoffKernel;
use seqcontest::recursion::Contest;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let k = PayoffKernel::Tullock;
    for text in ["1^5", "1^10", "3,3,3"] {
        let c: Contest = text.parse()?;
        let a = large_contest_approx(&c, &k)?;
        let s = solve(&c, &k, 1e-12)?;
        println!(
            "{c:<20} approx X* {:.6}  exact {:.6}  first effort {:.4} vs {:.4}",
            a.x_star_approx, s.x_star, a.period_efforts_approx[0], s.period_efforts[0]
        );
    }
    for n in [2, 5, 10] {
        let e = equivalent_sim_size(n)?;
        println!("{n} sequential players ~ {} simultaneous (2^n = {})", e.exact, e.approx);
    }
    println!("n  sequential  half&half  leader  simultaneous  (1 - X*)");
    let families = [Family::Sequential, Family::HalfAndHalf, Family::SingleLeader, Family::Simultaneous];
    let tables = families
        .iter()
        .map(|f| convergence_table(*f, 2, 12, &k, None))
        .collect::<Result<Vec<_>, _>>()?;
    for i in 0..tables[0].len() {
        print!("{:<3}", tables[0][i].n);
        for t in &tables {
            print!("  {:.3e}", t[i].gap_to_one);
        }
        println!();
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
