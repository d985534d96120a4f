//! Structural diagnostics of windows: containment of orbit factors at
//! scale, zero-run flanks, recurrence statistics, and exact empirical
//! frequencies.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sbc::PeriodicOrbit;
use crate::window::{Tail, Window};
use crate::word::{occurrences_ids, FiniteWord};

/// Outcome of the containment scan: every (3m + k)-factor of the window
/// must contain an m-factor of the orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub m: usize,
    pub k: usize,
    pub ok: bool,
    /// 1-based start of the first violating factor, when not ok.
    pub first_violation: Option<usize>,
}

pub fn structure_check(window: &Window, orbit: &PeriodicOrbit, m: usize, k: usize) -> Result<StructureReport> {
    if m == 0 {
        return Err(Error::Precondition("m must be >= 1".into()));
    }
    let span = 3 * m + k;
    if window.len() < span {
        return Err(Error::Bounds(format!(
            "window of {} symbols is shorter than 3m + k = {span}",
            window.len()
        )));
    }
    if *orbit.alphabet() != *window.alphabet() {
        return Err(Error::AlphabetMismatch("orbit over a different alphabet".into()));
    }
    let starts = orbit_factor_starts(window.ids(), orbit, m);
    // prefix sums over valid m-factor starts
    let mut pref = vec![0u32; starts.len() + 1];
    for (i, &b) in starts.iter().enumerate() {
        pref[i + 1] = pref[i] + u32::from(b);
    }
    let text_len = window.len();
    for s in 0..=text_len - span {
        // m-factor starts inside [s, s + span - m]
        let lo = s;
        let hi = s + span - m;
        if pref[hi + 1] - pref[lo] == 0 {
            return Ok(StructureReport {
                m,
                k,
                ok: false,
                first_violation: Some(s + 1),
            });
        }
    }
    Ok(StructureReport {
        m,
        k,
        ok: true,
        first_violation: None,
    })
}

/// `starts[i]` iff `text[i..i+m)` is an m-factor of the orbit.
fn orbit_factor_starts(text: &[u8], orbit: &PeriodicOrbit, m: usize) -> Vec<bool> {
    let n = text.len();
    if m > n {
        return Vec::new();
    }
    let p = orbit.period().ids();
    let plen = p.len();
    if m < plen {
        let members = orbit.factors(m);
        return (0..=n - m).map(|i| members.contains(&text[i..i + m])).collect();
    }
    // text[i..i+m) is an orbit factor iff its first plen symbols are one of
    // the rotations and the window is plen-periodic throughout.
    let rotations = orbit.factors(plen);
    let rot_ok: Vec<bool> = (0..=n - plen).map(|i| rotations.contains(&text[i..i + plen])).collect();
    // ext[i] = text[i] == text[i + plen]
    let mut ext_pref = vec![0u32; n + 1];
    for i in 0..n.saturating_sub(plen) {
        ext_pref[i + 1] = ext_pref[i] + u32::from(text[i] == text[i + plen]);
    }
    for i in n.saturating_sub(plen)..n {
        ext_pref[i + 1] = ext_pref[i];
    }
    (0..=n - m)
        .map(|i| {
            let need = m - plen; // ext must hold on [i, i + m - plen)
            rot_ok[i] && (ext_pref[i + need] - ext_pref[i]) as usize == need
        })
        .collect()
}

/// Presence of `0^n 1` and `1 0^n` in a binary window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroRunFlanks {
    pub has_zeros_then_one: bool,
    pub has_one_then_zeros: bool,
}

pub fn zero_run_flanks(window: &Window, n: usize) -> Result<ZeroRunFlanks> {
    if window.alphabet().size() != 2 {
        return Err(Error::Precondition("zero-run flanks need a binary window".into()));
    }
    if n == 0 {
        return Err(Error::Precondition("n must be >= 1".into()));
    }
    let ids = window.ids();
    let mut has_01 = false;
    let mut has_10 = false;
    let mut i = 0;
    while i < ids.len() {
        if ids[i] == 0 {
            let s = i;
            while i < ids.len() && ids[i] == 0 {
                i += 1;
            }
            let run = i - s;
            if run >= n {
                if i < ids.len() && ids[i] == 1 {
                    has_01 = true;
                }
                if s > 0 && ids[s - 1] == 1 {
                    has_10 = true;
                }
            }
        } else {
            i += 1;
        }
    }
    Ok(ZeroRunFlanks {
        has_zeros_then_one: has_01,
        has_one_then_zeros: has_10,
    })
}

/// Occurrence statistics of one word in a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceDiagnostics {
    pub occurrence_count: u64,
    /// Largest number of positions between the end of one occurrence and
    /// the start of the next (0 when overlapping).
    pub max_gap: Option<u64>,
    /// Minimal L such that every L-factor of the window contains the word.
    /// `None` stands for "no such L at this scale": the word is absent, or
    /// a declared periodic tail never contains it.
    pub uniform_recurrence_score: Option<u64>,
}

pub fn recurrence_diagnostics(window: &Window, word: &FiniteWord) -> Result<RecurrenceDiagnostics> {
    if word.is_empty() {
        return Err(Error::Precondition("word must be nonempty".into()));
    }
    if !word.same_alphabet(window.content()) {
        return Err(Error::AlphabetMismatch("word over a different alphabet".into()));
    }
    let starts = occurrences_ids(word.ids(), window.ids());
    let count = starts.len() as u64;
    let m = word.len() as u64;
    let max_gap = if starts.len() >= 2 {
        Some(
            starts
                .windows(2)
                .map(|w| (w[1] as u64).saturating_sub(w[0] as u64 + m))
                .max()
                .unwrap(),
        )
    } else {
        None
    };
    let tail_misses = |tail: &Tail| -> bool {
        match tail {
            Tail::Periodic(p) => {
                let reps = (word.len() + p.len()) / p.len() + 1;
                let unrolled: Vec<u8> = p.ids().iter().copied().cycle().take(p.len() * reps).collect();
                occurrences_ids(word.ids(), &unrolled).is_empty()
            }
            Tail::Unknown => false,
        }
    };
    let score = if starts.is_empty() || tail_misses(window.left_tail()) || tail_misses(window.right_tail()) {
        None
    } else {
        let first = starts[0] as u64;
        let last = *starts.last().unwrap() as u64;
        let len = window.len() as u64;
        let lead = first + m - 1;
        let trail = len - last + 1;
        let interior = starts
            .windows(2)
            .map(|w| w[1] as u64 - w[0] as u64 - 1 + m)
            .max()
            .unwrap_or(0);
        let l = lead.max(trail).max(interior);
        if l > len {
            None
        } else {
            Some(l)
        }
    };
    Ok(RecurrenceDiagnostics {
        occurrence_count: count,
        max_gap,
        uniform_recurrence_score: score,
    })
}

/// An exact occurrence frequency: occurrence count over available
/// positions. Comparisons cross-multiply, so no rounding ever enters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Frequency {
    pub count: u64,
    pub positions: u64,
}

impl Frequency {
    /// self >= num/den, exactly.
    pub fn at_least(&self, num: u64, den: u64) -> bool {
        self.count as u128 * den as u128 >= num as u128 * self.positions as u128
    }

    pub fn as_f64(&self) -> f64 {
        self.count as f64 / self.positions as f64
    }
}

pub fn empirical_frequency(window: &Window, word: &FiniteWord) -> Result<Frequency> {
    if word.is_empty() || word.len() > window.len() {
        return Err(Error::Bounds(format!(
            "word length {} not in 1..={}",
            word.len(),
            window.len()
        )));
    }
    if !word.same_alphabet(window.content()) {
        return Err(Error::AlphabetMismatch("word over a different alphabet".into()));
    }
    let positions = (window.len() - word.len() + 1) as u64;
    let ids = word.ids();
    // uniform words are counted from run lengths; the general case scans
    let count = if ids.iter().all(|&c| c == ids[0]) {
        let sym = ids[0];
        let m = ids.len();
        let mut total = 0u64;
        let text = window.ids();
        let mut i = 0;
        while i < text.len() {
            if text[i] == sym {
                let s = i;
                while i < text.len() && text[i] == sym {
                    i += 1;
                }
                let run = i - s;
                if run >= m {
                    total += (run - m + 1) as u64;
                }
            } else {
                i += 1;
            }
        }
        total
    } else {
        occurrences_ids(ids, window.ids()).len() as u64
    };
    Ok(Frequency { count, positions })
}

/// Largest run length of `symbol` in the window.
pub fn max_uniform_run(window: &Window, symbol: char) -> Result<usize> {
    let id = window
        .alphabet()
        .id_of(symbol)
        .ok_or_else(|| Error::AlphabetMismatch(format!("symbol {symbol:?} not in alphabet")))?;
    let mut best = 0usize;
    let mut cur = 0usize;
    for &c in window.ids() {
        if c == id {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::generator::SequenceGenerator;
    use crate::naive;
    use std::collections::HashSet;

    fn bin_window(s: &str) -> Window {
        Window::bare(FiniteWord::parse(&Alphabet::binary(), s).unwrap(), 0)
    }

    #[test]
    fn all_ones_window_violates_at_the_start() {
        let a = Alphabet::binary();
        let orbit = PeriodicOrbit::new(FiniteWord::parse(&a, "0").unwrap()).unwrap();
        let w = bin_window(&"1".repeat(13)); // 3m + k = 13 for m = 4, k = 1
        let r = structure_check(&w, &orbit, 4, 1).unwrap();
        assert!(!r.ok);
        assert_eq!(r.first_violation, Some(1));
    }

    #[test]
    fn containment_matches_naive_scan() {
        let a = Alphabet::binary();
        let orbit = PeriodicOrbit::new(FiniteWord::parse(&a, "01").unwrap()).unwrap();
        let texts = ["0101010011010101", "01010101010101", "1100110001010110"];
        for t in texts {
            let w = bin_window(t);
            for (m, k) in [(2usize, 0usize), (3, 1), (4, 2)] {
                if w.len() < 3 * m + k {
                    continue;
                }
                let r = structure_check(&w, &orbit, m, k).unwrap();
                let targets: HashSet<Vec<u8>> = orbit.factors(m).into_iter().collect();
                let naive_first = naive::containment_scan(w.ids(), 3 * m + k, &targets);
                assert_eq!(r.first_violation, naive_first, "text {t} m={m} k={k}");
                assert_eq!(r.ok, naive_first.is_none());
            }
        }
    }

    #[test]
    fn structure_ok_is_monotone_in_k() {
        let w = bin_window("0001000001000000010000");
        let a = Alphabet::binary();
        let orbit = PeriodicOrbit::new(FiniteWord::parse(&a, "0").unwrap()).unwrap();
        let m = 2;
        let mut prev_ok = true;
        for k in (0..=6).rev() {
            let r = structure_check(&w, &orbit, m, k).unwrap();
            if !prev_ok {
                assert!(!r.ok, "ok at k={} but not at k+1", k);
            }
            prev_ok = r.ok;
        }
    }

    #[test]
    fn flanks_on_shapes() {
        let both = bin_window("0001000100");
        let r = zero_run_flanks(&both, 3).unwrap();
        assert!(r.has_zeros_then_one);
        assert!(r.has_one_then_zeros);
        let zeros = bin_window("000000");
        let r = zero_run_flanks(&zeros, 2).unwrap();
        assert!(!r.has_zeros_then_one && !r.has_one_then_zeros);
        // 0^n 1 w 0^n 1 contains both patterns
        let shaped = bin_window("00011010001");
        let r = zero_run_flanks(&shaped, 3).unwrap();
        assert!(r.has_zeros_then_one && r.has_one_then_zeros);
    }

    #[test]
    fn single_occurrence_next_to_periodic_tails_is_not_recurrent() {
        let a = Alphabet::parse("1234").unwrap();
        let gen = SequenceGenerator::eventually_periodic(
            FiniteWord::parse(&a, "12").unwrap(),
            FiniteWord::empty(&a),
            FiniteWord::parse(&a, "3").unwrap(),
            FiniteWord::parse(&a, "4").unwrap(),
        )
        .unwrap();
        let w = gen.window(-60, 60).unwrap();
        let d = recurrence_diagnostics(&w, &FiniteWord::parse(&a, "1234").unwrap()).unwrap();
        assert_eq!(d.occurrence_count, 1);
        assert_eq!(d.uniform_recurrence_score, None);
        // a word of the periodic parts recurs with gap bounded by the period
        let d = recurrence_diagnostics(&w, &FiniteWord::parse(&a, "12").unwrap()).unwrap();
        assert!(d.max_gap.unwrap() <= 2);
        assert!(d.uniform_recurrence_score.is_some());
    }

    #[test]
    fn frequency_counts_exactly() {
        let w = bin_window("000100");
        let f = empirical_frequency(&w, &FiniteWord::parse(&Alphabet::binary(), "00").unwrap()).unwrap();
        assert_eq!((f.count, f.positions), (3, 5));
        assert!(f.at_least(3, 5));
        assert!(!f.at_least(2, 3));
        let whole = empirical_frequency(&w, w.content()).unwrap();
        assert_eq!((whole.count, whole.positions), (1, 1));
        // uniform fast path agrees with the generic scan
        let f2 = empirical_frequency(&w, &FiniteWord::parse(&Alphabet::binary(), "0").unwrap()).unwrap();
        assert_eq!(f2.count as usize, naive::occurrences(&[0], w.ids()).len());
    }

    #[test]
    fn runs_are_measured() {
        let w = bin_window("110001011110");
        assert_eq!(max_uniform_run(&w, '0').unwrap(), 3);
        assert_eq!(max_uniform_run(&w, '1').unwrap(), 4);
    }
}
