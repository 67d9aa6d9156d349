// Earlier movers exert more effort, unless higher-order substitutes fail.

use seqcontest::analysis::earlier_mover_report;
use seqcontest::equilibrium::solve;
use seqcontest::kernels::PayoffKernel;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (kernel, contest) in [("tullock", "1,2,1"), ("tullock", "1,1"), ("exp:a=1/2,b=2", "1,2,1"), ("power", "1,2,1")] {
        let s = solve(&contest.parse()?, &kernel.parse::<PayoffKernel>()?, 1e-12)?;
        let r = earlier_mover_report(&s)?;
        let efforts: Vec<String> = s.period_efforts.iter().map(|x| format!("{x:.4}")).collect();
        println!(
            "{kernel:>14} {contest}: efforts [{}] -> {:?} (gap formula error {:.1e})",
            efforts.join(", "),
            r.verdict,
            r.max_formula_error
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
