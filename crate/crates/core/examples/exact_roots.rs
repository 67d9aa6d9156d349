// Exact polynomial arithmetic and certified root isolation on [0, 1].

use seqcontest::polys::{highest_root_unit, integer, isolate_roots_unit, ExactPoly, SturmChain};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // f_0 of the five-player sequential Tullock contest.
    let p = ExactPoly::from_integers(&[0, 0, 1, -30, 150, -240, 120]);
    let roots = isolate_roots_unit(&p);
    println!("p = {p}");
    println!("root at zero with multiplicity {}", roots.multiplicity_at_zero());
    for (lo, hi) in roots.intervals() {
        println!("  root in [{lo}, {hi}]");
    }
    let sturm = SturmChain::new(&p);
    println!("Sturm count on (0, 1]: {}", sturm.count(&integer(0), &integer(1)));

    let top = highest_root_unit(&p, 1e-12)?;
    println!("highest root {:.15}", top.value);

    let q = ExactPoly::from_integers(&[0, 0, 15, -62, 48]);
    let top = highest_root_unit(&q, 1e-12)?;
    println!("{q}: {:.12} vs (31 + sqrt 241) / 48 = {:.12}", top.value, (31.0 + 241f64.sqrt()) / 48.0);

    let r = ExactPoly::from_integers(&[0, 0, 0, -1, 3]);
    println!("{r}: highest root {}", highest_root_unit(&r, 1e-12)?.exact().unwrap());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
