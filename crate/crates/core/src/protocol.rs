//! The stabilization gate: a window's profile stands in for its generator
//! only if nothing up to the horizon changes when the window is doubled.

use serde::Serialize;

use crate::construction::analysis_window;
use crate::error::{Error, Result};
use crate::generator::SequenceGenerator;
use crate::profile::{complexity_profile, ComplexityProfile};
use crate::window::Window;

#[derive(Debug, Clone, Serialize)]
pub struct GateReport {
    pub base_len: usize,
    pub doubled_len: usize,
    pub stable: bool,
}

/// A window large enough to analyze `gen` up to `horizon`, by kind:
/// symmetric spans for (eventually) periodic sequences, a one-sided ray for
/// rotation codings, capped block windows for the gap construction.
/// `scale` doubles the plan when set to 2.
pub fn plan_window(gen: &SequenceGenerator, horizon: usize, scale: u64) -> Result<Window> {
    let h = horizon as i64;
    match gen {
        SequenceGenerator::Periodic { period } => {
            let w = (h + period.len() as i64 + 2) * scale as i64;
            gen.window(-w, w)
        }
        SequenceGenerator::EventuallyPeriodic {
            left_period,
            left_word,
            right_word,
            right_period,
        } => {
            let pad = (left_period.len() + left_word.len() + right_word.len() + right_period.len()) as i64;
            let w = (h + pad + 2) * scale as i64;
            gen.window(-w, w)
        }
        SequenceGenerator::Sturmian { .. } => {
            // Recurrence of the built-in rotations is within 8x the factor
            // length; the gate verifies the margin was enough.
            let w = 8 * (h + 2) * scale as i64;
            gen.window(0, w - 1)
        }
        SequenceGenerator::GapConstruction { schedule, .. } => {
            analysis_window(schedule, horizon as u64, scale)
        }
        SequenceGenerator::Explicit { window } => {
            if scale > 1 {
                return Err(Error::Precondition(
                    "explicit windows cannot be doubled; disable the gate".into(),
                ));
            }
            Ok(window.clone())
        }
    }
}

/// Profiles `gen` at the base plan and at the doubled plan, accepting only
/// if both agree on every count up to the horizon.
pub fn gated_profile(
    gen: &SequenceGenerator,
    horizon: usize,
) -> Result<(ComplexityProfile, Window, GateReport)> {
    let base = plan_window(gen, horizon, 1)?;
    let doubled = plan_window(gen, horizon, 2)?;
    let mut profile = complexity_profile(&base, horizon)?;
    let big = complexity_profile(&doubled, horizon)?;
    let first_unstable = (1..=horizon)
        .find(|&n| profile.c[n] != big.c[n] || profile.rs_count[n] != big.rs_count[n]);
    if let Some(n) = first_unstable {
        return Err(Error::GateUnstable {
            first_n: n,
            base_len: base.len(),
            doubled_len: doubled.len(),
        });
    }
    profile.stabilization_ok = Some(true);
    let report = GateReport {
        base_len: base.len(),
        doubled_len: doubled.len(),
        stable: true,
    };
    Ok((profile, base, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::generator::RotationNumber;
    use crate::schedule::{build_schedule, GrowthFn};
    use crate::word::FiniteWord;

    #[test]
    fn gate_accepts_stable_generators() {
        let a = Alphabet::parse("ab").unwrap();
        let gens = [
            SequenceGenerator::periodic(FiniteWord::parse(&a, "aab").unwrap()).unwrap(),
            SequenceGenerator::sturmian(RotationNumber::Golden, 0, 1).unwrap(),
        ];
        for gen in gens {
            let (p, _, report) = gated_profile(&gen, 40).unwrap();
            assert!(report.stable);
            assert_eq!(p.stabilization_ok, Some(true));
        }
    }

    #[test]
    fn gap_windows_stabilize() {
        let sched = build_schedule(GrowthFn::FloorLog2, 5, 1).unwrap();
        let gen = SequenceGenerator::GapConstruction { schedule: sched, num_gaps: 3 };
        let (p, _, _) = gated_profile(&gen, 60).unwrap();
        assert_eq!(p.n_max, 60);
    }

    #[test]
    fn explicit_windows_cannot_double() {
        let a = Alphabet::binary();
        let w = Window::bare(FiniteWord::parse(&a, "010010").unwrap(), 0);
        let gen = SequenceGenerator::Explicit { window: w };
        assert!(matches!(gated_profile(&gen, 3), Err(Error::Precondition(_))));
    }
}
