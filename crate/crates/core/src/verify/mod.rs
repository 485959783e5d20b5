//! Verification suites: every identity reduced to an exact residual.

mod report;
mod suites;

pub use report::{Check, Report, Status};
pub use suites::{
    suite_all, suite_gr11, suite_gr2, suite_powers, Context, Fault, DEFAULT_MAX_N, DEFAULT_SEED, FAULTS, SUPER_FIRST_SLOT,
    SUPER_SECOND_SLOT,
};
