//! Materialization of the gap construction: the words `w(k)`, explicit
//! prefixes of the sequence, and capped analysis windows.
//!
//! A length-n factor never sees more than n-1 consecutive zeros of any gap
//! it does not fully contain, and a factor containing a full gap of size
//! >= horizon+1 would need length >= horizon+2. Capping every gap at
//! horizon+1 therefore preserves the factor set up to the horizon exactly,
//! which is what makes schedules with astronomically large entries
//! analyzable at all.

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::schedule::{gap, nu2, GapSchedule, SchedValue, MAX_MATERIALIZE};
use crate::window::{Tail, Window};
use crate::word::FiniteWord;

const ZERO: u8 = 0;
const ONE: u8 = 1;

fn binary_word(ids: Vec<u8>) -> FiniteWord {
    FiniteWord::from_ids(Alphabet::binary(), ids).expect("binary ids")
}

fn push_zeros(buf: &mut Vec<u8>, count: u64) -> Result<()> {
    if buf.len() as u64 + count > MAX_MATERIALIZE {
        return Err(Error::Budget(format!(
            "window would exceed {MAX_MATERIALIZE} symbols"
        )));
    }
    buf.resize(buf.len() + count as usize, ZERO);
    Ok(())
}

/// The word `w(k) = 0^{n_k} 1 0^{g_1} 1 ... 1 0^{g_{2^k - 1}} 1 0^{n_k}`.
pub fn wk_word(sched: &GapSchedule, k: u32) -> Result<FiniteWord> {
    if k > sched.k_max() {
        return Err(Error::Bounds(format!("k = {k} exceeds k_max = {}", sched.k_max())));
    }
    let w_len = sched.w_len(k).exact().ok_or_else(|| {
        Error::Budget(format!("w({k}) length saturates the schedule threshold"))
    })?;
    if w_len > MAX_MATERIALIZE {
        return Err(Error::Budget(format!("w({k}) has {w_len} symbols")));
    }
    let nk = sched.n(k).exact().expect("exact w_len implies exact n_k");
    let mut buf = Vec::with_capacity(w_len as usize);
    push_zeros(&mut buf, nk)?;
    buf.push(ONE);
    for i in 1..(1u64 << k) {
        push_zeros(&mut buf, sched.n(nu2(i)).exact().expect("interior gaps below n_k"))?;
        buf.push(ONE);
    }
    push_zeros(&mut buf, nk)?;
    debug_assert_eq!(buf.len() as u64, w_len);
    Ok(binary_word(buf))
}

/// Suffix of `w(k)` of length `n`. Uses the fact that the gap list
/// `g_1 .. g_{2^k - 1}` is a palindrome (`nu2(2^k - i) = nu2(i)`), so the
/// suffix is the reversed prefix; only `n` symbols are materialized.
pub fn wk_suffix(sched: &GapSchedule, k: u32, n: u64) -> Result<FiniteWord> {
    let w_len = sched.w_len(k);
    if let Some(w) = w_len.exact() {
        if n > w {
            return Err(Error::Bounds(format!("suffix length {n} exceeds |w({k})| = {w}")));
        }
    }
    if n > MAX_MATERIALIZE {
        return Err(Error::Budget(format!("suffix of {n} symbols")));
    }
    let nk = sched
        .n(k)
        .exact()
        .ok_or_else(|| Error::Budget(format!("n_{k} saturates the schedule threshold")))?;
    let mut buf: Vec<u8> = Vec::with_capacity(n as usize);
    push_zeros(&mut buf, nk.min(n))?;
    let mut i = 1u64;
    while (buf.len() as u64) < n && i < (1 << k) {
        buf.push(ONE);
        let g = sched.n(nu2(i)).exact().expect("interior gap exact");
        let room = n - buf.len() as u64;
        push_zeros(&mut buf, g.min(room))?;
        i += 1;
    }
    if (buf.len() as u64) < n {
        buf.push(ONE);
        let room = n - buf.len() as u64;
        push_zeros(&mut buf, room.min(nk))?;
    }
    if buf.len() as u64 != n {
        return Err(Error::Bounds(format!("suffix length {n} exceeds |w({k})|")));
    }
    buf.reverse();
    Ok(binary_word(buf))
}

fn realize(
    sched: &GapSchedule,
    num_gaps: u64,
    left_zeros: u64,
    gap_cap: Option<u64>,
    right_pad: u64,
) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    push_zeros(&mut buf, left_zeros)?;
    buf.push(ONE);
    for i in 1..=num_gaps {
        let g = gap(sched, i)?;
        let realized = match (g, gap_cap) {
            (SchedValue::Exact(v), None) => v,
            (SchedValue::Exact(v), Some(cap)) => v.min(cap),
            (SchedValue::Huge, Some(cap)) => cap,
            (SchedValue::Huge, None) => {
                return Err(Error::Budget(format!(
                    "gap {i} saturates the schedule threshold and no cap was given"
                )))
            }
        };
        push_zeros(&mut buf, realized)?;
        buf.push(ONE);
    }
    push_zeros(&mut buf, right_pad)?;
    Ok(buf)
}

/// The explicit prefix `0^{left_zeros} 1 0^{g_1} 1 ... 1 0^{g_num_gaps} 1`,
/// with all gaps realized in full. The first 1 sits at position 0.
pub fn construction_prefix(sched: &GapSchedule, num_gaps: u64, left_zeros: u64) -> Result<Window> {
    let buf = realize(sched, num_gaps, left_zeros, None, 0)?;
    let alphabet = Alphabet::binary();
    let zero = FiniteWord::parse(&alphabet, "0").expect("binary 0");
    let content = binary_word(buf);
    let left_tail = if left_zeros >= 1 { Tail::Periodic(zero) } else { Tail::Unknown };
    Window::new(content, -(left_zeros as i64), left_tail, Tail::Unknown)
}

/// An analysis window that is factor-exact up to `horizon`: `blocks` copies
/// of the interior between consecutive "big" gaps, with every gap of size
/// > horizon capped at horizon+1 and flanking zero-runs of horizon+1.
pub fn analysis_window(sched: &GapSchedule, horizon: u64, blocks: u64) -> Result<Window> {
    if horizon == 0 {
        return Err(Error::Precondition("horizon must be >= 1".into()));
    }
    if blocks == 0 || blocks > 2 {
        return Err(Error::Precondition("blocks must be 1 or 2".into()));
    }
    if !sched.n(sched.k_max()).at_least(horizon) {
        return Err(Error::Precondition(format!(
            "horizon {horizon} exceeds n_K = {:?}; deepen the schedule",
            sched.n(sched.k_max())
        )));
    }
    let cap = horizon + 1;
    // Largest level whose gaps are fully realized at this horizon.
    let k_star = (0..=sched.k_max())
        .filter(|&k| match sched.n(k) {
            SchedValue::Exact(v) => v < horizon,
            SchedValue::Huge => false,
        })
        .max()
        .unwrap_or(0);
    let num_gaps = blocks * (1u64 << (k_star + 1)) - 1;
    let next_gap = match gap(sched, num_gaps + 1) {
        Ok(v) => v,
        // One past the deepest defined gap: any valid continuation has
        // n_{K+1} > w_len[K] >= n_K >= horizon there.
        Err(Error::ScheduleDepthExceeded { .. }) => SchedValue::Huge,
        Err(e) => return Err(e),
    };
    let right_pad = next_gap.min_with(cap);
    let buf = realize(sched, num_gaps, cap, Some(cap), right_pad)?;
    let alphabet = Alphabet::binary();
    let zero = FiniteWord::parse(&alphabet, "0").expect("binary 0");
    Window::new(binary_word(buf), -(cap as i64), Tail::Periodic(zero), Tail::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::{build_schedule, GrowthFn};
    use crate::word::occurrences;

    /// With f effectively a huge constant the growth bound is always met,
    /// so every n_k takes its floor w_len[k-1] + 1: n = (1, 4, 12, 35, ...).
    fn dense_schedule(k_max: u32) -> GapSchedule {
        let f = GrowthFn::StepEvery { base: 1 << 40, step: 1 << 40 };
        let s = build_schedule(f, k_max, 1).unwrap();
        assert_eq!(s.n(0), SchedValue::Exact(1));
        if k_max >= 1 {
            assert_eq!(s.n(1), SchedValue::Exact(4));
        }
        s
    }

    #[test]
    fn base_word_is_zero_one_zero() {
        let s = build_schedule(GrowthFn::FloorLog2, 2, 1).unwrap();
        assert_eq!(wk_word(&s, 0).unwrap().to_string(), "010");
    }

    #[test]
    fn wk_length_and_ones_count() {
        let s = build_schedule(GrowthFn::FloorSqrt, 2, 1).unwrap();
        for k in 0..=2 {
            let w = wk_word(&s, k).unwrap();
            assert_eq!(w.len() as u64, s.w_len(k).exact().unwrap());
            let ones = w.ids().iter().filter(|&&c| c == 1).count();
            assert_eq!(ones as u64, 1 << k);
        }
    }

    #[test]
    fn wk_interior_has_no_full_boundary_run(){
        let s = build_schedule(GrowthFn::FloorSqrt, 2, 1).unwrap();
        for k in 1..=2u32 {
            let w = wk_word(&s, k).unwrap();
            let nk = s.n(k).exact().unwrap() as usize;
            let interior = w.slice(nk + 1, w.len() - nk - 1);
            let run = FiniteWord::parse(w.alphabet(), &"0".repeat(nk)).unwrap();
            assert!(occurrences(&run, &interior).unwrap().is_empty());
        }
    }

    #[test]
    fn wk_suffix_matches_materialized_word() {
        let s = build_schedule(GrowthFn::FloorSqrt, 2, 1).unwrap();
        for k in 0..=2u32 {
            let w = wk_word(&s, k).unwrap();
            for n in [1u64, 2, 3, 17, w.len() as u64] {
                if n <= w.len() as u64 {
                    let suf = wk_suffix(&s, k, n).unwrap();
                    assert_eq!(suf.ids(), &w.ids()[w.len() - n as usize..]);
                }
            }
        }
    }

    #[test]
    fn prefix_unrolls_chosen_gaps() {
        let s = dense_schedule(3);
        let w = construction_prefix(&s, 3, 2).unwrap();
        // gaps (g_1, g_2, g_3) = (1, 4, 1)
        assert_eq!(w.content().to_string(), "001010000101");
        assert!(w.content().to_string().ends_with("1010000101")); // ...1 0 1 0000 1 0 1
        assert_eq!(w.origin(), -2);
        assert_eq!(w.slice_abs(0, 0).unwrap().to_string(), "1");
        let ones = w.ids().iter().filter(|&&c| c == 1).count();
        assert_eq!(ones, 4); // num_gaps + 1
    }

    #[test]
    fn generator_window_prefix_example() {
        let s = dense_schedule(3);
        let w = construction_prefix(&s, 3, 0).unwrap();
        assert_eq!(&w.content().to_string()[..9], "101000010");
    }

    #[test]
    fn prefix_needs_defined_gaps() {
        let s = dense_schedule(1);
        assert!(matches!(
            construction_prefix(&s, 4, 0),
            Err(Error::ScheduleDepthExceeded { index: 4, .. })
        ));
    }

    #[test]
    fn ones_become_sparse_along_levels() {
        let s = build_schedule(GrowthFn::FloorSqrt, 3, 1).unwrap();
        let w = construction_prefix(&s, 15, 0).unwrap();
        let ids = w.ids();
        let mut last_ratio = 1.0f64;
        for k in 0..=3u32 {
            let len = s.w_len(k).exact().unwrap() as usize;
            let ones = ids[..len.min(ids.len())].iter().filter(|&&c| c == 1).count();
            let ratio = ones as f64 / len as f64;
            assert!(ratio <= last_ratio);
            last_ratio = ratio;
        }
        assert!(last_ratio < 0.02);
    }

    #[test]
    fn analysis_window_shape() {
        let s = build_schedule(GrowthFn::FloorLog2, 5, 1).unwrap();
        let w = analysis_window(&s, 40, 1).unwrap();
        // k* = 1 (n_1 = 15 < 40 <= n_2), one block of gaps (1, 15, 1),
        // flanked by 41 zeros on both sides.
        assert_eq!(w.len(), 41 + 1 + 2 + 16 + 2 + 41);
        assert!(matches!(w.left_tail(), Tail::Periodic(p) if p.to_string() == "0"));
        let doubled = analysis_window(&s, 40, 2).unwrap();
        assert!(doubled.len() > w.len());
    }

    #[test]
    fn analysis_window_rejects_horizon_past_schedule() {
        let s = dense_schedule(3); // n_3 = 35
        assert!(analysis_window(&s, 36, 1).is_err());
        assert!(analysis_window(&s, 35, 1).is_ok());
    }
}
