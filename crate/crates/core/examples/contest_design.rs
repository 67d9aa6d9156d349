// Which disclosure structure minimizes or maximizes total effort.

use seqcontest::analysis::{compare, design_optimize, DesignOptions, Objective};
use seqcontest::kernels::PayoffKernel;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let k = PayoffKernel::Tullock;
    for (n, max_periods, objective) in [
        (6, None, Objective::Maximize),
        (6, None, Objective::Minimize),
        (10, Some(2), Objective::Maximize),
        (9, Some(3), Objective::Maximize),
    ] {
        let opts = DesignOptions {
            max_periods,
            jobs: Some(2),
            ..DesignOptions::default()
        };
        let r = design_optimize(n, &k, objective, &opts)?;
        println!(
            "n = {n:>2}, T <= {:<4} {objective:?}: {} with X* = {:.6} ({} candidates)",
            max_periods.map_or("n".into(), |t| t.to_string()),
            r.best_contest,
            r.best_value,
            r.evaluated_count
        );
    }
    let r = compare(&"5,5".parse()?, &"8,1,1".parse()?, &k)?;
    println!("(5,5) vs (8,1,1): {:?}, X = {:.4} vs {:.4}", r.dominance, r.x_a, r.x_b);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
