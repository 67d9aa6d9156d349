//! Exact polynomial arithmetic over arbitrary-precision rationals.

mod poly;
mod roots;

pub use poly::{compensated_horner, from_f64, integer, rational, to_f64, ExactPoly};
pub use roots::{
    count_roots_closed, highest_root_unit, isolate_roots_unit, simplest_between, HighestRoot,
    IntervalStrings, RealRoot, RootList, SturmChain, DEFAULT_TOL,
};
