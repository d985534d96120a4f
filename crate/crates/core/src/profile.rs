//! Exact complexity profiles and right-special censuses of windows.

use serde::Serialize;

use crate::automaton::SuffixAutomaton;
use crate::error::{Error, Result};
use crate::window::Window;
use crate::word::{smallest_period, FiniteWord};

/// Exact per-length counts for one window: `c[n]` distinct factors and
/// `rs_count[n]` right-special factors, for `1 <= n <= n_max`.
///
/// Right-special counting is edge-censored: a successor letter is only
/// attested by an occurrence that ends strictly inside the window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    pub n_max: usize,
    /// `c[0]` is unused; `c[n]` is the number of distinct n-factors.
    pub c: Vec<u64>,
    /// `rs_count[0]` is unused.
    pub rs_count: Vec<u64>,
    /// Set by the doubling protocol; `None` when the profile was computed
    /// directly from a single window.
    pub stabilization_ok: Option<bool>,
}

pub fn complexity_profile(window: &Window, n_max: usize) -> Result<ComplexityProfile> {
    if n_max == 0 {
        return Err(Error::Precondition("horizon must be >= 1".into()));
    }
    if n_max > window.len() {
        return Err(Error::Bounds(format!(
            "horizon {n_max} exceeds window length {}",
            window.len()
        )));
    }
    let sa = SuffixAutomaton::build(window.ids(), window.alphabet().size());
    let c = sa.length_coverage(n_max, |_| true);
    let rs_count = sa.length_coverage(n_max, |s| sa.out_degree(s) >= 2);
    Ok(ComplexityProfile {
        n_max,
        c,
        rs_count,
        stabilization_ok: None,
    })
}

/// One right-special word with its observed successor letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RightSpecialEntry {
    pub word: FiniteWord,
    pub successors: Vec<char>,
}

/// All right-special words of one length, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RightSpecialReport {
    pub n: usize,
    pub words: Vec<RightSpecialEntry>,
}

pub fn right_special(window: &Window, n: usize) -> Result<RightSpecialReport> {
    if n == 0 || n >= window.len() {
        return Err(Error::Bounds(format!(
            "right-special length {n} must satisfy 1 <= n < window length {}",
            window.len()
        )));
    }
    let sa = SuffixAutomaton::build(window.ids(), window.alphabet().size());
    right_special_from(&sa, window, n)
}

fn right_special_from(sa: &SuffixAutomaton, window: &Window, n: usize) -> Result<RightSpecialReport> {
    let alphabet = window.alphabet();
    let mut words = Vec::new();
    for s in 1..sa.state_count() as u32 {
        if sa.min_len(s) as usize <= n && n <= sa.max_len(s) as usize && sa.out_degree(s) >= 2 {
            let end = sa.first_end(s) as usize;
            let word = window.content().slice(end + 1 - n, end + 1);
            let successors = sa.out_letters(s).map(|a| alphabet.char_of(a)).collect();
            words.push(RightSpecialEntry { word, successors });
        }
    }
    words.sort_by(|a, b| a.word.cmp(&b.word));
    Ok(RightSpecialReport { n, words })
}

/// Right-special reports for every length `1..=n_max` from one index build.
pub fn right_special_census(window: &Window, n_max: usize) -> Result<Vec<RightSpecialReport>> {
    if n_max == 0 || n_max >= window.len() {
        return Err(Error::Bounds(format!(
            "census horizon {n_max} must satisfy 1 <= n_max < window length {}",
            window.len()
        )));
    }
    let sa = SuffixAutomaton::build(window.ids(), window.alphabet().size());
    (1..=n_max).map(|n| right_special_from(&sa, window, n)).collect()
}

/// A spot where `c_{n+1} - c_n` fails to dominate the right-special count.
/// Impossible for the factor set of a bi-infinite sequence, so a nonempty
/// report flags a window that is too short to stand in for its generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FirstDifferenceViolation {
    pub n: usize,
    pub c_n: u64,
    pub c_next: u64,
    pub rs_count: u64,
}

pub fn first_difference_check(profile: &ComplexityProfile) -> Vec<FirstDifferenceViolation> {
    let mut out = Vec::new();
    for n in 1..profile.n_max {
        let diff = profile.c[n + 1] as i64 - profile.c[n] as i64;
        if diff < profile.rs_count[n] as i64 {
            out.push(FirstDifferenceViolation {
                n,
                c_n: profile.c[n],
                c_next: profile.c[n + 1],
                rs_count: profile.rs_count[n],
            });
        }
    }
    out
}

/// Outcome of scanning a profile for sub-linear complexity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PeriodicityVerdict {
    /// `c_n <= n` holds at `n`, forcing eventual periodicity; `period` is
    /// the smallest period of the window content.
    ForcesPeriodic { n: usize, period: usize },
    AperiodicUpToN { n_max: usize },
}

pub fn morse_hedlund_probe(window: &Window, n_max: usize) -> Result<PeriodicityVerdict> {
    let profile = complexity_profile(window, n_max)?;
    for n in 1..=n_max {
        if profile.c[n] <= n as u64 {
            return Ok(PeriodicityVerdict::ForcesPeriodic {
                n,
                period: smallest_period(window.ids()),
            });
        }
    }
    Ok(PeriodicityVerdict::AperiodicUpToN { n_max })
}

/// Extremal slack statistics of a profile against the 1.5n and 2n lines.
/// The 1.5n residual is kept doubled so everything stays in integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityGapStats {
    /// max over n of 2*c_n - 3n, and the smallest n attaining it.
    pub max_excess_15_x2: i64,
    pub argmax_15: usize,
    /// min over n of c_n - 2n, and the smallest n attaining it.
    pub min_excess_2: i64,
    pub argmin_2: usize,
}

pub fn complexity_gap_stats(profile: &ComplexityProfile) -> ComplexityGapStats {
    let mut stats = ComplexityGapStats {
        max_excess_15_x2: i64::MIN,
        argmax_15: 0,
        min_excess_2: i64::MAX,
        argmin_2: 0,
    };
    for n in 1..=profile.n_max {
        let e15 = 2 * profile.c[n] as i64 - 3 * n as i64;
        if e15 > stats.max_excess_15_x2 {
            stats.max_excess_15_x2 = e15;
            stats.argmax_15 = n;
        }
        let e2 = profile.c[n] as i64 - 2 * n as i64;
        if e2 < stats.min_excess_2 {
            stats.min_excess_2 = e2;
            stats.argmin_2 = n;
        }
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::generator::{RotationNumber, SequenceGenerator};
    use crate::word::FiniteWord;

    fn intro_window(half_span: i64) -> Window {
        let a = Alphabet::parse("1234").unwrap();
        let gen = SequenceGenerator::eventually_periodic(
            FiniteWord::parse(&a, "12").unwrap(),
            FiniteWord::empty(&a),
            FiniteWord::parse(&a, "3").unwrap(),
            FiniteWord::parse(&a, "4").unwrap(),
        )
        .unwrap();
        gen.window(-half_span, half_span).unwrap()
    }

    #[test]
    fn intro_example_has_linear_plus_three_profile() {
        let w = intro_window(160);
        let p = complexity_profile(&w, 100).unwrap();
        for n in 1..=100usize {
            assert_eq!(p.c[n], n as u64 + 3, "c_{n}");
        }
        assert!(first_difference_check(&p).is_empty());
    }

    #[test]
    fn sturmian_profile_is_minimal_aperiodic() {
        let gen = SequenceGenerator::sturmian(RotationNumber::Golden, 0, 1).unwrap();
        let w = gen.window(0, 1200).unwrap();
        let p = complexity_profile(&w, 150).unwrap();
        for n in 1..=150usize {
            assert_eq!(p.c[n], n as u64 + 1, "c_{n}");
        }
        assert!(matches!(
            morse_hedlund_probe(&w, 150).unwrap(),
            PeriodicityVerdict::AperiodicUpToN { .. }
        ));
    }

    #[test]
    fn periodic_window_trips_the_probe() {
        let a = Alphabet::parse("12").unwrap();
        let gen = SequenceGenerator::periodic(FiniteWord::parse(&a, "12").unwrap()).unwrap();
        let w = gen.window(0, 63).unwrap();
        match morse_hedlund_probe(&w, 20).unwrap() {
            PeriodicityVerdict::ForcesPeriodic { n, period } => {
                assert_eq!(n, 2);
                assert_eq!(period, 2);
            }
            v => panic!("expected periodicity, got {v:?}"),
        }
    }

    #[test]
    fn truncated_window_violates_first_difference() {
        // c_5 < c_4 in this window while nothing is right-special at 4.
        let a = Alphabet::binary();
        let w = Window::bare(FiniteWord::parse(&a, "10100001").unwrap(), 0);
        let p = complexity_profile(&w, 6).unwrap();
        assert_eq!(p.c[4], 5);
        assert_eq!(p.c[5], 4);
        let violations = first_difference_check(&p);
        assert!(violations.iter().any(|v| v.n == 4));
    }

    #[test]
    fn gap_stats_of_linear_profiles() {
        let w = intro_window(160);
        let p = complexity_profile(&w, 100).unwrap();
        let s = complexity_gap_stats(&p);
        // c_n = n + 3: 2c - 3n = 6 - n peaks at n = 1; c - 2n = 3 - n sinks at n_max.
        assert_eq!(s.max_excess_15_x2, 5);
        assert_eq!(s.argmax_15, 1);
        assert_eq!(s.min_excess_2, 3 - 100);
        assert_eq!(s.argmin_2, 100);
    }

    #[test]
    fn horizon_must_fit_window() {
        let a = Alphabet::binary();
        let w = Window::bare(FiniteWord::parse(&a, "0101").unwrap(), 0);
        assert!(complexity_profile(&w, 5).is_err());
        assert!(right_special(&w, 4).is_err());
    }
}
