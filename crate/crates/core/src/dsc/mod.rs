//! The distinct spheres condition and the construction of a distinguishing
//! set from it.

mod check;
mod pairs;
mod support;
mod trace;
mod verify;

pub use check::{
    check_dsc, dsc_witness, sphere_distinctness, DistinctnessReport, DscReport, DscWitness, EqualSpheres,
    PairVerdict,
};
pub use pairs::{equidistant_pairs, EquidistantPair, PairEnumeration};
pub use support::{emit_two_coloring, finite_support_check, SupportReport, SupportViolation, TwoColoring};
pub use trace::{build_distinguishing_set, Failure, Step, TraceStatus, YTrace};
pub use verify::{verify_trace, Verdict, Violation, ViolationKind, VERIFY_BALL_LIMIT};
