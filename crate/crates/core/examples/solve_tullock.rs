// Solve the Tullock contest (1,2,1): one leader, two simultaneous
// middle players, one last mover.

use seqcontest::equilibrium::solve;
use seqcontest::kernels::PayoffKernel;
use seqcontest::recursion::Contest;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let contest: Contest = "1,2,1".parse()?;
    let s = solve(&contest, &PayoffKernel::Tullock, 1e-12)?;

    println!("contest {contest}: {}", s.status);
    println!("X* = {:.12}  ((7 + sqrt 13) / 12 = {:.12})", s.x_star, (7.0 + 13f64.sqrt()) / 12.0);
    for (i, (x, u)) in s.efforts().iter().zip(s.payoffs()).enumerate() {
        println!("player {}: effort {x:.4}, payoff {u:.4}", i + 1);
    }
    for t in 0..=contest.periods() {
        println!("f_{t} = {}", s.fseq().poly(t).unwrap());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
