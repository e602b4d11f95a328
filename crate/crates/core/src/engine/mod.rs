//! Classical simulation of LQC expectations, exponential overlaps and correlators.

mod circuit;
mod expect;
pub mod gauss;
mod correlate;
pub mod projector;

pub use circuit::{Ensemble, Gate, GateSequence, Measurement, NORMALIZATION_TOL};
pub use expect::{
    conjugate_into_cw, expect_element, expect_exponential_abs2, run_lqc, ExpectationResult, LqcResult, Simulator,
};
pub use correlate::{correlate, CorrelateOptions, CorrelateResult};
pub use projector::{kappa_at, projector_kappa, Abs2Result, KappaTrace, TSchedule};
