//! The gap schedule behind the low-complexity construction.
//!
//! A schedule is the data `n_0 < n_1 < ... < n_K` together with the derived
//! block lengths `w_len[k]` and the union of intervals `(n_k, w_len[k]]`
//! (the set `R`). The sequence itself is `...000 1 0^{g_1} 1 0^{g_2} 1 ...`
//! where the i-th gap is `n_k` for `k` the 2-adic valuation of `i`.
//!
//! Entries can exceed any usable integer range after a few levels (the
//! minimal admissible `n_k` grows roughly like an iterated exponential for
//! slowly growing `f`), so values above a fixed threshold are stored as the
//! [`SchedValue::Huge`] sentinel. Every analysis in this crate only needs
//! the entries below its horizon exactly, plus the knowledge that the rest
//! lie above the threshold.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on materialized window content, in symbols.
pub const MAX_MATERIALIZE: u64 = 1 << 28;

/// Schedule entries above this value are stored as `Huge`.
pub const HUGE_THRESHOLD: u64 = 1 << 48;

/// An exact schedule entry or the above-threshold sentinel. Serializes as
/// the plain number or the string `"huge"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchedValue {
    Exact(u64),
    Huge,
}

impl Serialize for SchedValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SchedValue::Exact(v) => s.serialize_u64(*v),
            SchedValue::Huge => s.serialize_str("huge"),
        }
    }
}

impl<'de> Deserialize<'de> for SchedValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Word(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(SchedValue::Exact(v)),
            Repr::Word(w) if w == "huge" => Ok(SchedValue::Huge),
            Repr::Word(w) => Err(serde::de::Error::custom(format!(
                "expected a number or \"huge\", got {w:?}"
            ))),
        }
    }
}

impl SchedValue {
    pub fn exact(self) -> Option<u64> {
        match self {
            SchedValue::Exact(v) => Some(v),
            SchedValue::Huge => None,
        }
    }

    pub fn is_huge(self) -> bool {
        matches!(self, SchedValue::Huge)
    }

    /// The value clamped to `cap`; `Huge` always clamps.
    pub fn min_with(self, cap: u64) -> u64 {
        match self {
            SchedValue::Exact(v) => v.min(cap),
            SchedValue::Huge => cap,
        }
    }

    pub fn at_least(self, bound: u64) -> bool {
        match self {
            SchedValue::Exact(v) => v >= bound,
            SchedValue::Huge => true,
        }
    }
}

/// A nondecreasing unbounded integer function, probed at integer points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GrowthFn {
    FloorLog2,
    FloorSqrt,
    /// `f(n) = base + n / step`.
    StepEvery { base: u64, step: u64 },
    /// Breakpoint table: `f(n)` is the value of the last `(at, value)` pair
    /// with `at <= n`, and 0 before the first breakpoint.
    Table { points: Vec<(u64, u64)> },
}

impl GrowthFn {
    pub fn validate(&self) -> Result<()> {
        match self {
            GrowthFn::StepEvery { step, .. } if *step == 0 => {
                Err(Error::Config("step must be >= 1".into()))
            }
            GrowthFn::Table { points } => {
                if points.is_empty() {
                    return Err(Error::Config("growth table must not be empty".into()));
                }
                for w in points.windows(2) {
                    if w[1].0 <= w[0].0 || w[1].1 < w[0].1 {
                        return Err(Error::Config(
                            "growth table must have increasing arguments and nondecreasing values".into(),
                        ));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, n: u64) -> u64 {
        match self {
            GrowthFn::FloorLog2 => (n + 1).ilog2() as u64,
            GrowthFn::FloorSqrt => n.isqrt(),
            GrowthFn::StepEvery { base, step } => base + n / step,
            GrowthFn::Table { points } => points
                .iter()
                .take_while(|(at, _)| *at <= n)
                .last()
                .map_or(0, |(_, v)| *v),
        }
    }

    pub fn name(&self) -> String {
        match self {
            GrowthFn::FloorLog2 => "floor-log2".into(),
            GrowthFn::FloorSqrt => "floor-sqrt".into(),
            GrowthFn::StepEvery { base, step } => format!("step:{base}:{step}"),
            GrowthFn::Table { .. } => "table".into(),
        }
    }

    /// Minimal `n` with `f(n) >= target`, as a [`SchedValue`] saturating at
    /// `HUGE_THRESHOLD`. Errors only for bounded (table) functions.
    fn min_arg_reaching(&self, target: u128) -> Result<SchedValue> {
        let huge = HUGE_THRESHOLD as u128;
        let v = match self {
            GrowthFn::FloorLog2 => {
                // min n with floor(log2(n+1)) >= t is 2^t - 1
                if target >= 64 || (1u128 << target) - 1 > huge {
                    return Ok(SchedValue::Huge);
                }
                (1u128 << target) - 1
            }
            GrowthFn::FloorSqrt => {
                if target > u64::MAX as u128 {
                    return Ok(SchedValue::Huge);
                }
                let t = target;
                match t.checked_mul(t) {
                    Some(sq) => sq,
                    None => return Ok(SchedValue::Huge),
                }
            }
            GrowthFn::StepEvery { base, step } => {
                if target <= *base as u128 {
                    0
                } else {
                    (target - *base as u128) * *step as u128
                }
            }
            GrowthFn::Table { points } => {
                let best = points.iter().find(|(_, v)| *v as u128 >= target);
                match best {
                    Some((at, _)) => *at as u128,
                    None => {
                        return Err(Error::GrowthTooSlow {
                            needed: target,
                            available: points.last().map_or(0, |(_, v)| *v),
                        })
                    }
                }
            }
        };
        if v > huge {
            Ok(SchedValue::Huge)
        } else {
            Ok(SchedValue::Exact(v as u64))
        }
    }
}

/// The construction data: chosen `n_k`, derived `w_len[k]`, and the exact
/// part of `R`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapSchedule {
    f: GrowthFn,
    k_max: u32,
    n: Vec<SchedValue>,
    w_len: Vec<SchedValue>,
    /// Intervals `(lo, hi]` of R with exactly known endpoints, in order.
    r_exact: Vec<(u64, u64)>,
    /// Largest k with `n[k]` exact.
    realized_depth: u32,
}

impl GapSchedule {
    pub fn f(&self) -> &GrowthFn {
        &self.f
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    pub fn n(&self, k: u32) -> SchedValue {
        self.n[k as usize]
    }

    pub fn w_len(&self, k: u32) -> SchedValue {
        self.w_len[k as usize]
    }

    pub fn n_values(&self) -> &[SchedValue] {
        &self.n
    }

    pub fn w_values(&self) -> &[SchedValue] {
        &self.w_len
    }

    pub fn r_intervals(&self) -> &[(u64, u64)] {
        &self.r_exact
    }

    pub fn realized_depth(&self) -> u32 {
        self.realized_depth
    }

    /// `|{1..m} ∩ R|`. Only valid below the saturation threshold, where the
    /// exact intervals are the whole story.
    pub fn r_count_upto(&self, m: u64) -> u64 {
        assert!(
            m <= HUGE_THRESHOLD,
            "R counting above the saturation threshold is not meaningful"
        );
        self.r_exact
            .iter()
            .map(|&(lo, hi)| hi.min(m).saturating_sub(lo))
            .sum()
    }

    /// Membership test for R, valid below the threshold.
    pub fn r_contains(&self, m: u64) -> bool {
        self.r_exact.iter().any(|&(lo, hi)| lo < m && m <= hi)
    }

    /// The interval index k with `n_k < m <= w_len[k]`, if any.
    pub fn r_interval_of(&self, m: u64) -> Option<u32> {
        self.r_exact
            .iter()
            .position(|&(lo, hi)| lo < m && m <= hi)
            .map(|i| i as u32)
    }

    /// Doubled margin of the growth constraint at level k:
    /// `2 f(n_k) - (2^k + Σ_j 2^{k-1-j} n_j + 2 |R ∩ [1, w_len[k-1]]|)`,
    /// positive for every valid schedule. `None` where saturated.
    pub fn constraint_margin_x2(&self, k: u32) -> Option<i128> {
        if k == 0 || k > self.realized_depth {
            return None;
        }
        let nk = self.n[k as usize].exact()?;
        let rhs = self.growth_bound_x2(k)?;
        Some(2 * self.f.eval(nk) as i128 - rhs as i128)
    }

    /// The doubled right-hand side of the growth constraint at level k.
    fn growth_bound_x2(&self, k: u32) -> Option<u128> {
        let mut sum: u128 = 1u128 << k;
        for j in 0..k {
            sum += (1u128 << (k - 1 - j)) * self.n[j as usize].exact()? as u128;
        }
        let w_prev = self.w_len[(k - 1) as usize].exact()?;
        Some(sum + 2 * self.r_count_upto(w_prev) as u128)
    }
}

/// Builds the canonical schedule: `n_0` given; each later `n_k` is the
/// minimal integer exceeding `w_len[k-1]` whose image under `f` clears the
/// growth bound. Entries that would exceed [`HUGE_THRESHOLD`] saturate.
pub fn build_schedule(f: GrowthFn, k_max: u32, n0: u64) -> Result<GapSchedule> {
    f.validate()?;
    if n0 == 0 {
        return Err(Error::Config("n0 must be >= 1".into()));
    }
    if n0 > HUGE_THRESHOLD {
        return Err(Error::Config("n0 exceeds the saturation threshold".into()));
    }
    let mut sched = GapSchedule {
        f,
        k_max,
        n: vec![SchedValue::Exact(n0)],
        w_len: vec![SchedValue::Exact(2 * n0 + 1)],
        r_exact: vec![(n0, 2 * n0 + 1)],
        realized_depth: 0,
    };
    for k in 1..=k_max {
        if sched.n[(k - 1) as usize].is_huge() {
            sched.n.push(SchedValue::Huge);
            sched.w_len.push(SchedValue::Huge);
            continue;
        }
        let bound_x2 = sched.growth_bound_x2(k).expect("previous entries exact");
        // f(n_k) > bound/2  <=>  f(n_k) >= floor(bound/2) + 1
        let target = bound_x2 / 2 + 1;
        let candidate = sched.f.min_arg_reaching(target)?;
        let w_prev = sched.w_len[(k - 1) as usize].exact().unwrap();
        let nk = match candidate {
            SchedValue::Huge => SchedValue::Huge,
            SchedValue::Exact(c) => {
                let v = c.max(w_prev + 1);
                if v > HUGE_THRESHOLD {
                    SchedValue::Huge
                } else {
                    SchedValue::Exact(v)
                }
            }
        };
        match nk {
            SchedValue::Huge => {
                sched.n.push(SchedValue::Huge);
                sched.w_len.push(SchedValue::Huge);
            }
            SchedValue::Exact(v) => {
                let mut w: u128 = (1u128 << k) + 2 * v as u128;
                for j in 0..k {
                    w += (1u128 << (k - 1 - j)) * sched.n[j as usize].exact().unwrap() as u128;
                }
                sched.n.push(SchedValue::Exact(v));
                // w_len stays comfortably inside u64 whenever n_k does:
                // w(k) < 4 n_k <= 4 * 2^48.
                sched.w_len.push(SchedValue::Exact(w as u64));
                sched.r_exact.push((v, w as u64));
                sched.realized_depth = k;
            }
        }
    }
    Ok(sched)
}

/// 2-adic valuation.
pub fn nu2(i: u64) -> u32 {
    debug_assert!(i > 0);
    i.trailing_zeros()
}

/// The i-th gap, `n_{nu2(i)}`.
pub fn gap(sched: &GapSchedule, i: u64) -> Result<SchedValue> {
    if i == 0 {
        return Err(Error::Precondition("gap index starts at 1".into()));
    }
    let k = nu2(i);
    if k > sched.k_max() {
        return Err(Error::ScheduleDepthExceeded {
            index: i,
            required: k,
            k_max: sched.k_max(),
        });
    }
    Ok(sched.n(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_function_inversion() {
        let f = GrowthFn::StepEvery { base: 2, step: 10 };
        assert_eq!(f.eval(0), 2);
        assert_eq!(f.eval(9), 2);
        assert_eq!(f.eval(10), 3);
        assert_eq!(f.min_arg_reaching(2).unwrap(), SchedValue::Exact(0));
        assert_eq!(f.min_arg_reaching(5).unwrap(), SchedValue::Exact(30));
    }

    #[test]
    fn table_function_errors_when_exhausted() {
        let f = GrowthFn::Table {
            points: vec![(1, 1), (10, 4), (100, 9)],
        };
        assert_eq!(f.eval(0), 0);
        assert_eq!(f.eval(50), 4);
        assert_eq!(f.min_arg_reaching(4).unwrap(), SchedValue::Exact(10));
        assert!(matches!(
            f.min_arg_reaching(10),
            Err(Error::GrowthTooSlow { needed: 10, available: 9 })
        ));
    }

    #[test]
    fn base_level_length() {
        let s = build_schedule(GrowthFn::FloorLog2, 0, 1).unwrap();
        assert_eq!(s.w_len(0), SchedValue::Exact(3));
        let s = build_schedule(GrowthFn::FloorLog2, 0, 7).unwrap();
        assert_eq!(s.w_len(0), SchedValue::Exact(15));
    }

    #[test]
    fn level_one_length_recursion() {
        for (f, n0) in [
            (GrowthFn::FloorLog2, 1),
            (GrowthFn::FloorSqrt, 1),
            (GrowthFn::FloorSqrt, 3),
            (GrowthFn::StepEvery { base: 0, step: 1 }, 2),
        ] {
            let s = build_schedule(f, 1, n0).unwrap();
            let n1 = s.n(1).exact().unwrap();
            assert_eq!(s.w_len(1), SchedValue::Exact(2 + 2 * n1 + n0));
        }
    }

    #[test]
    fn gap_follows_two_adic_valuation() {
        let s = build_schedule(GrowthFn::FloorSqrt, 3, 1).unwrap();
        let n = |k: u32| s.n(k);
        assert_eq!(gap(&s, 1).unwrap(), n(0));
        assert_eq!(gap(&s, 2).unwrap(), n(1));
        assert_eq!(gap(&s, 3).unwrap(), n(0));
        assert_eq!(gap(&s, 4).unwrap(), n(2));
        assert_eq!(gap(&s, 12).unwrap(), n(2));
        assert!(matches!(
            gap(&s, 16),
            Err(Error::ScheduleDepthExceeded { index: 16, required: 4, k_max: 3 })
        ));
    }

    #[test]
    fn r_intervals_are_disjoint_and_countable() {
        let s = build_schedule(GrowthFn::FloorSqrt, 4, 1).unwrap();
        let r = s.r_intervals();
        for w in r.windows(2) {
            assert!(w[0].1 < w[1].0, "intervals must be separated: {:?}", r);
        }
        assert_eq!(s.r_count_upto(3), 2);
        assert!(s.r_contains(2) && s.r_contains(3) && !s.r_contains(1) && !s.r_contains(4));
    }

    #[test]
    fn margins_are_positive() {
        for f in [GrowthFn::FloorLog2, GrowthFn::FloorSqrt] {
            let s = build_schedule(f, 6, 1).unwrap();
            for k in 1..=s.realized_depth() {
                let m = s.constraint_margin_x2(k).unwrap();
                assert!(m > 0, "margin at k={k} must be positive, got {m}");
            }
        }
    }
}
