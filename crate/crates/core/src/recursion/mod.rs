//! Inverted best-response recursion, information measures and the
//! sufficient conditions that make it characterize the equilibrium.

mod conditions;
mod contest;
mod measures;
mod sequences;
pub(crate) mod taylor;

pub use conditions::{
    check_condition1, check_condition2, check_conditions, Certification, Condition1Report,
    Condition2Report, Condition2Verdict, ConditionReport, PeriodWitness, COND2_MARGIN,
};
pub use contest::Contest;
pub use measures::{info_measures, suffix_measures, Dominance, InfoMeasures};
pub use sequences::{
    build_f_sequence, build_g_sequence, BuildPath, FPoint, FSequence, GSequence, Threshold,
    EXACT_PERIOD_LIMIT,
};
