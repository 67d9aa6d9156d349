use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use seqcontest::analysis::large_contest_approx;
use seqcontest::equilibrium::solve;
use seqcontest::kernels::PayoffKernel;
use seqcontest::polys::{count_roots_closed, integer, isolate_roots_unit, ExactPoly, SturmChain};
use seqcontest::recursion::{info_measures, Contest, FSequence};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `lead * prod (X - r)`, optionally times `X^2 + 1`.
fn from_roots(lead: i64, roots: &[(i64, i64)], quadratic: bool) -> ExactPoly {
    let mut p = ExactPoly::constant(integer(lead));
    for &(n, d) in roots {
        p = &p * &ExactPoly::new(vec![-q(n, d), integer(1)]);
    }
    if quadratic {
        p = &p * &ExactPoly::from_integers(&[1, 0, 1]);
    }
    p
}

fn root_strategy() -> impl Strategy<Value = (i64, i64)> {
    (-12i64..24, 1i64..12)
}

fn groups() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..5, 1..6)
}

/// Elementary symmetric sums by subset enumeration.
fn brute_force_measures(n: &[u32]) -> Vec<u64> {
    let mut s = vec![0u64; n.len() + 1];
    for mask in 1u32..(1 << n.len()) {
        let prod: u64 = (0..n.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| u64::from(n[i]))
            .product();
        s[mask.count_ones() as usize] += prod;
    }
    s[1..].to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sturm_count_matches_isolated_roots(
        lead in prop_oneof![-5i64..=-1, 1i64..=5],
        roots in prop::collection::vec(root_strategy(), 1..7),
        quadratic in any::<bool>(),
    ) {
        let p = from_roots(lead, &roots, quadratic);
        let expected: BTreeSet<BigRational> = roots
            .iter()
            .map(|&(n, d)| q(n, d))
            .filter(|r| *r >= integer(0) && *r <= integer(1))
            .collect();
        prop_assert_eq!(count_roots_closed(&p, &integer(0), &integer(1)), expected.len());
        let isolated = isolate_roots_unit(&p);
        prop_assert_eq!(isolated.len(), expected.len());
        for (root, (lo, hi)) in expected.iter().zip(isolated.intervals()) {
            prop_assert!(lo <= *root && *root <= hi, "{} not in [{}, {}]", root, lo, hi);
        }
        let half_open: usize = expected.iter().filter(|r| **r > integer(0)).count();
        prop_assert_eq!(SturmChain::new(&p).count(&integer(0), &integer(1)), half_open);
    }

    #[test]
    fn measures_are_elementary_symmetric_sums(n in groups()) {
        let c = Contest::new(n.clone()).unwrap();
        let got: Vec<u64> = info_measures(&c)
            .levels()
            .iter()
            .map(|v| v.try_into().unwrap())
            .collect();
        prop_assert_eq!(got, brute_force_measures(&n));
    }

    #[test]
    fn every_f_is_one_at_one(n in groups()) {
        let f = FSequence::build(&Contest::new(n).unwrap(), &PayoffKernel::Tullock).unwrap();
        for t in 0..=f.periods() {
            prop_assert_eq!(f.value_exact(t, &integer(1)).unwrap(), integer(1));
        }
    }

    #[test]
    fn tullock_solution_is_consistent(n in groups().prop_filter("one player", |g| g != &[1])) {
        let c = Contest::new(n.clone()).unwrap();
        let s = solve(&c, &PayoffKernel::Tullock, 1e-12).unwrap();
        prop_assert!(s.is_solved());
        let total: f64 = s.efforts().iter().sum();
        prop_assert!((total - s.x_star).abs() < 1e-12);
        // Each period's cumulative effort is reached from the previous one.
        for t in 1..=c.periods() {
            let step = f64::from(n[t - 1]) * s.period_efforts[t - 1];
            prop_assert!((s.cumulative[t] - s.cumulative[t - 1] - step).abs() < 1e-12);
        }
        let mut reversed = n.clone();
        reversed.reverse();
        let r = solve(&Contest::new(reversed).unwrap(), &PayoffKernel::Tullock, 1e-12).unwrap();
        prop_assert!((r.x_star - s.x_star).abs() < 1e-10);
    }

    #[test]
    fn linear_g_matches_product_formula(n in groups(), alpha in 0.1f64..4.0) {
        let c = Contest::new(n.clone()).unwrap();
        let k = PayoffKernel::LinearG { alpha };
        let s = solve(&c, &k, 1e-12).unwrap();
        let mut prod = 1.0;
        let mut efforts = Vec::new();
        for &nt in &n {
            prod *= 1.0 + alpha * f64::from(nt);
            efforts.push(alpha / prod);
        }
        prop_assert!((s.x_star - (1.0 - 1.0 / prod)).abs() < 1e-12);
        for (got, want) in s.period_efforts.iter().zip(&efforts) {
            prop_assert!((got - want).abs() < 1e-12);
        }
        let a = large_contest_approx(&c, &k).unwrap();
        prop_assert!((a.x_star_approx - s.x_star).abs() < 1e-12);
    }
}
