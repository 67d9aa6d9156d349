mod solve_tullock {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/solve_tullock.rs"));
}

mod kernels_monotone {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/kernels_monotone.rs"));
}

mod exact_roots {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exact_roots.rs"));
}

mod information_measures {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/information_measures.rs"));
}

mod conditions {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/conditions.rs"));
}

mod contest_design {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/contest_design.rs"));
}

mod large_contests {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/large_contests.rs"));
}

mod earlier_mover {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/earlier_mover.rs"));
}

mod grid_oracle {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/grid_oracle.rs"));
}

mod spe_audit {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/spe_audit.rs"));
}

#[test]
fn solve_tullock_runs() {
    solve_tullock::run_example().expect("solve_tullock");
}

#[test]
fn kernels_monotone_runs() {
    kernels_monotone::run_example().expect("kernels_monotone");
}

#[test]
fn exact_roots_runs() {
    exact_roots::run_example().expect("exact_roots");
}

#[test]
fn information_measures_runs() {
    information_measures::run_example().expect("information_measures");
}

#[test]
fn conditions_runs() {
    conditions::run_example().expect("conditions");
}

#[test]
fn contest_design_runs() {
    contest_design::run_example().expect("contest_design");
}

#[test]
fn large_contests_runs() {
    large_contests::run_example().expect("large_contests");
}

#[test]
fn earlier_mover_runs() {
    earlier_mover::run_example().expect("earlier_mover");
}

#[test]
fn grid_oracle_runs() {
    grid_oracle::run_example().expect("grid_oracle");
}

#[test]
fn spe_audit_runs() {
    spe_audit::run_example().expect("spe_audit");
}

