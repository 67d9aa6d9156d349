// Information measures S_k(n) and their partial order.

use seqcontest::recursion::{info_measures, Contest};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["1,2,1", "5,5", "8,1,1", "1^6"] {
        let c: Contest = text.parse()?;
        let s = info_measures(&c);
        let levels: Vec<String> = s.levels().iter().map(|v| v.to_string()).collect();
        println!("S({c}) = ({})  weighted total at alpha = 1: {}", levels.join(", "), s.weighted_total(1.0));
    }
    let pairs = [("5,5", "8,1,1"), ("1,1,1", "2,1"), ("1,3", "3,1")];
    for (a, b) in pairs {
        let (a, b): (Contest, Contest) = (a.parse()?, b.parse()?);
        println!("{a} vs {b}: {:?}", info_measures(&a).compare(&info_measures(&b)));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
