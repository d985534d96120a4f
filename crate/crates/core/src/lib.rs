//! Exact, desk-scale analysis of word complexity for symbolic sequences.
//!
//! The crate provides:
//!
//! - finite words, two-sided windows with tail descriptors, and generators
//!   for periodic, eventually-periodic, rotation-coded, and gap-scheduled
//!   sequences ([`word`], [`window`], [`generator`]);
//! - the gap schedule and its realized prefixes and capped analysis
//!   windows ([`schedule`], [`construction`]);
//! - a suffix-automaton complexity engine producing exact factor counts
//!   and right-special censuses at 10^6+ symbol scale ([`automaton`],
//!   [`profile`]), gated by a window-doubling stability protocol
//!   ([`protocol`]);
//! - sliding block codes, periodic orbits and the orbit-membership
//!   reduction ([`sbc`]);
//! - verified distinct-word certificates that lower-bound c_n
//!   ([`certificate`]) and structural diagnostics ([`diagnostics`]).
//!
//! Naive reference implementations used as test oracles live in [`naive`].

pub mod alphabet;
pub mod automaton;
pub mod certificate;
pub mod construction;
pub mod diagnostics;
pub mod error;
pub mod generator;
pub mod naive;
pub mod profile;
pub mod protocol;
pub mod sbc;
pub mod schedule;
pub mod window;
pub mod word;

pub use alphabet::Alphabet;
pub use certificate::{
    anchored_family, extract_rays, one_point_five_params, padded_family, ray_families, Certificate,
    CertificateFamily, RayVariant,
};
pub use construction::{analysis_window, construction_prefix, wk_suffix, wk_word};
pub use diagnostics::{
    empirical_frequency, max_uniform_run, recurrence_diagnostics, structure_check, zero_run_flanks,
    Frequency, RecurrenceDiagnostics, StructureReport, ZeroRunFlanks,
};
pub use error::{Error, Result};
pub use generator::{RotationNumber, SequenceGenerator};
pub use profile::{
    complexity_gap_stats, complexity_profile, first_difference_check, morse_hedlund_probe,
    right_special, right_special_census, ComplexityGapStats, ComplexityProfile,
    FirstDifferenceViolation, PeriodicityVerdict, RightSpecialEntry, RightSpecialReport,
};
pub use protocol::{gated_profile, plan_window, GateReport};
pub use sbc::{apply_sbc, phi_reduce, PeriodicOrbit, SlidingBlockCode};
pub use schedule::{build_schedule, gap, nu2, GapSchedule, GrowthFn, SchedValue, HUGE_THRESHOLD, MAX_MATERIALIZE};
pub use window::{Tail, Window};
pub use word::{concat, occurrences, FiniteWord};
