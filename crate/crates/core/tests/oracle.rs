use seqcontest::analysis::compositions;
use seqcontest::equilibrium::solve;
use seqcontest::kernels::PayoffKernel;
use seqcontest::oracle::{grid_spe, sim_fixed_point};
use seqcontest::recursion::Contest;

fn test_set() -> Vec<Contest> {
    (1..=4)
        .flat_map(|n| compositions(n, 3))
        .map(|g| Contest::new(g).unwrap())
        .collect()
}

fn worst_disagreement(step: f64) -> f64 {
    let k = PayoffKernel::Tullock;
    test_set()
        .iter()
        .map(|c| {
            let x = solve(c, &k, 1e-12).unwrap().x_star;
            (grid_spe(c, &k, step).unwrap().total - x).abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn halving_the_step_halves_the_error() {
    let coarse = worst_disagreement(1e-2);
    let fine = worst_disagreement(5e-3);
    println!("worst disagreement: {coarse:.2e} at 1e-2, {fine:.2e} at 5e-3");
    assert!(fine <= coarse / 2.0, "{coarse} -> {fine}");
}

#[test]
fn simultaneous_iteration_matches_solver() {
    let k = PayoffKernel::Tullock;
    for n in 2..=30 {
        let x = solve(&Contest::simultaneous(n).unwrap(), &k, 1e-12).unwrap().x_star;
        let y = sim_fixed_point(n, &k, 1e-12).unwrap();
        assert!((x - y).abs() < 1e-10, "n = {n}: {x} vs {y}");
    }
}

#[test]
fn grid_examples() {
    let k = PayoffKernel::Tullock;
    let two = grid_spe(&"2".parse().unwrap(), &k, 1e-3).unwrap();
    assert!((two.total - 0.5).abs() <= 2e-3);
    let pair = grid_spe(&"1,1".parse().unwrap(), &k, 1e-3).unwrap();
    for e in pair.efforts() {
        assert!((e - 0.25).abs() < 1e-3);
    }
    let mid = grid_spe(&"1,2,1".parse().unwrap(), &k, 1e-3).unwrap();
    assert!((mid.total - (7.0 + 13f64.sqrt()) / 12.0).abs() <= 5e-3);
}

#[test]
fn other_kernels_agree() {
    for (kernel, contest) in [("exp:a=1/2,b=2", "1,2,1"), ("log", "2,2"), ("power", "1,2")] {
        let k: PayoffKernel = kernel.parse().unwrap();
        let c: Contest = contest.parse().unwrap();
        let s = solve(&c, &k, 1e-12).unwrap();
        let g = grid_spe(&c, &k, 1e-3).unwrap();
        assert!((g.total - s.x_star).abs() <= 5e-3, "{kernel} {contest}: {} vs {}", g.total, s.x_star);
    }
}
