// Sufficient conditions for existence, uniqueness and the information
// results, including cases where they fail.

use seqcontest::kernels::PayoffKernel;
use seqcontest::recursion::{check_conditions, Contest, FSequence};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("tullock", "1,2,1"),
        ("tullock", "1^4"),
        ("log", "2,2"),
        ("power", "1,2,1"),
        ("power", "1,1,1,1"),
    ];
    for (kernel, contest) in cases {
        let k: PayoffKernel = kernel.parse()?;
        let c: Contest = contest.parse()?;
        let f = FSequence::build(&c, &k)?;
        let r = check_conditions(&f)?;
        let thresholds: Vec<String> = f.thresholds().iter().map(|t| format!("{:.4}", t.value)).collect();
        println!(
            "{kernel:>8} {contest:<8} thresholds [{}]  condition 1: {} ({:?})  condition 2: {:?}",
            thresholds.join(", "),
            r.condition1.pass,
            r.condition1.strength,
            r.condition2.map(|c| c.verdict),
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
