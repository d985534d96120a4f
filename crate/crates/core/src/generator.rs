//! Finitely-described bi-infinite sequences and window extraction.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::construction;
use crate::error::{Error, Result};
use crate::schedule::{GapSchedule, MAX_MATERIALIZE};
use crate::window::{Tail, Window};
use crate::word::FiniteWord;

/// A quadratic irrational rotation number, or an explicit rational stand-in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RotationNumber {
    /// (sqrt(5) - 1) / 2, continued fraction [0; 1, 1, 1, ...].
    Golden,
    /// sqrt(2) - 1, continued fraction [0; 2, 2, 2, ...].
    Silver,
    /// An explicit fraction. The caller is responsible for supplying enough
    /// precision: the denominator must exceed 4x the window span.
    Rational { num: u64, den: u64 },
}

impl RotationNumber {
    /// A fraction p/q approximating the rotation number with q >= min_q.
    /// For the built-in irrationals this is a continued-fraction convergent,
    /// which makes the rotation coding below exact on windows well inside
    /// (-q, q).
    pub fn convergent(&self, min_q: u64) -> Result<(u64, u64)> {
        match self {
            RotationNumber::Rational { num, den } => {
                if *den == 0 || num >= den {
                    return Err(Error::Config("rotation number must be a fraction in (0, 1)".into()));
                }
                if *den < min_q {
                    return Err(Error::Config(format!(
                        "rotation denominator {den} below required precision {min_q}; \
                         supply a finer fraction or shrink the window"
                    )));
                }
                Ok((*num, *den))
            }
            RotationNumber::Golden | RotationNumber::Silver => {
                let a = if *self == RotationNumber::Golden { 1u64 } else { 2u64 };
                let (mut p0, mut q0, mut p1, mut q1) = (1u64, 0u64, 0u64, 1u64);
                while q1 < min_q {
                    let (p2, q2) = (
                        a.checked_mul(p1).and_then(|v| v.checked_add(p0)),
                        a.checked_mul(q1).and_then(|v| v.checked_add(q0)),
                    );
                    match (p2, q2) {
                        (Some(p2), Some(q2)) => {
                            p0 = p1;
                            q0 = q1;
                            p1 = p2;
                            q1 = q2;
                        }
                        _ => return Err(Error::Budget("rotation precision exceeds u64".into())),
                    }
                }
                Ok((p1, q1))
            }
        }
    }
}

/// A finitely-described bi-infinite sequence.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SequenceGenerator {
    /// `... p p p ...` with `p` anchored so a copy starts at position 0.
    Periodic { period: FiniteWord },
    /// `... L L L [left_word] . [right_word] R R R ...` where `left_word`
    /// ends at position -1 and `right_word` starts at position 0.
    EventuallyPeriodic {
        left_period: FiniteWord,
        left_word: FiniteWord,
        right_word: FiniteWord,
        right_period: FiniteWord,
    },
    /// Rotation coding `x(n) = floor((n+1)a + b) - floor(na + b)` over {0,1}.
    Sturmian {
        alpha: RotationNumber,
        /// Intercept as an exact fraction.
        beta_num: i64,
        beta_den: u64,
    },
    /// The gap construction realized with all gaps in full; positions left
    /// of the first 1 (at 0) are 0.
    GapConstruction { schedule: GapSchedule, num_gaps: u64 },
    Explicit { window: Window },
}

impl SequenceGenerator {
    pub fn periodic(period: FiniteWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Config("period word must be nonempty".into()));
        }
        Ok(SequenceGenerator::Periodic { period })
    }

    pub fn eventually_periodic(
        left_period: FiniteWord,
        left_word: FiniteWord,
        right_word: FiniteWord,
        right_period: FiniteWord,
    ) -> Result<Self> {
        if left_period.is_empty() || right_period.is_empty() {
            return Err(Error::Config("period words must be nonempty".into()));
        }
        for w in [&left_word, &right_word, &right_period] {
            if !left_period.same_alphabet(w) {
                return Err(Error::AlphabetMismatch(
                    "all eventually-periodic pieces must share one alphabet".into(),
                ));
            }
        }
        Ok(SequenceGenerator::EventuallyPeriodic {
            left_period,
            left_word,
            right_word,
            right_period,
        })
    }

    pub fn sturmian(alpha: RotationNumber, beta_num: i64, beta_den: u64) -> Result<Self> {
        if beta_den == 0 {
            return Err(Error::Config("intercept denominator must be nonzero".into()));
        }
        Ok(SequenceGenerator::Sturmian { alpha, beta_num, beta_den })
    }

    pub fn alphabet(&self) -> Arc<Alphabet> {
        match self {
            SequenceGenerator::Periodic { period } => Arc::clone(period.alphabet()),
            SequenceGenerator::EventuallyPeriodic { left_period, .. } => Arc::clone(left_period.alphabet()),
            SequenceGenerator::Sturmian { .. } => Alphabet::binary(),
            SequenceGenerator::GapConstruction { .. } => Alphabet::binary(),
            SequenceGenerator::Explicit { window } => Arc::clone(window.alphabet()),
        }
    }

    /// Materializes the symbols at positions `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Result<Window> {
        if lo > hi {
            return Err(Error::Bounds(format!("window range {lo}..={hi} is empty")));
        }
        let span = (hi - lo + 1) as u64;
        if span > MAX_MATERIALIZE {
            return Err(Error::Budget(format!("window of {span} symbols")));
        }
        match self {
            SequenceGenerator::Periodic { period } => {
                let p = period.ids();
                let ids = (lo..=hi).map(|n| p[n.rem_euclid(p.len() as i64) as usize]).collect();
                let content = FiniteWord::from_ids(Arc::clone(period.alphabet()), ids)?;
                let (lt, rt) = window_tails(&content, p);
                Window::new(content, lo, lt, rt)
            }
            SequenceGenerator::EventuallyPeriodic {
                left_period,
                left_word,
                right_word,
                right_period,
            } => {
                let ids: Vec<u8> = (lo..=hi)
                    .map(|n| eventually_periodic_at(n, left_period.ids(), left_word.ids(), right_word.ids(), right_period.ids()))
                    .collect();
                let content = FiniteWord::from_ids(Arc::clone(left_period.alphabet()), ids)?;
                // Tails are periodic only when the window edge is already
                // inside the corresponding periodic region.
                let lt = if lo <= -((left_word.len() + left_period.len()) as i64) {
                    Tail::Periodic(content.slice(0, left_period.len()))
                } else {
                    Tail::Unknown
                };
                let rt = if hi >= (right_word.len() + right_period.len()) as i64 - 1 {
                    Tail::Periodic(content.slice(content.len() - right_period.len(), content.len()))
                } else {
                    Tail::Unknown
                };
                Window::new(content, lo, lt, rt)
            }
            SequenceGenerator::Sturmian { alpha, beta_num, beta_den } => {
                let reach = lo.unsigned_abs().max(hi.unsigned_abs()) + 1;
                let min_q = reach
                    .checked_mul(4)
                    .and_then(|v| v.checked_mul(*beta_den))
                    .ok_or_else(|| Error::Budget("rotation precision exceeds u64".into()))?;
                let (p, q) = alpha.convergent(min_q)?;
                let ids: Vec<u8> = (lo..=hi).map(|n| rotation_symbol(n, p, q, *beta_num, *beta_den)).collect();
                let content = FiniteWord::from_ids(Alphabet::binary(), ids)?;
                Window::new(content, lo, Tail::Unknown, Tail::Unknown)
            }
            SequenceGenerator::GapConstruction { schedule, num_gaps } => {
                let full = construction::construction_prefix(schedule, *num_gaps, 0)?;
                // Positions < 0 are zeros; positions beyond the realized
                // prefix are unknown.
                if hi > full.end() {
                    return Err(Error::Bounds(format!(
                        "position {hi} beyond the realized prefix (ends at {})",
                        full.end()
                    )));
                }
                let mut ids = Vec::with_capacity(span as usize);
                for n in lo..=hi {
                    ids.push(if n < 0 { 0 } else { full.ids()[n as usize] });
                }
                let content = FiniteWord::from_ids(Alphabet::binary(), ids)?;
                let zero = FiniteWord::parse(&Alphabet::binary(), "0")?;
                let lt = if lo < 0 { Tail::Periodic(zero) } else { Tail::Unknown };
                Window::new(content, lo, lt, Tail::Unknown)
            }
            SequenceGenerator::Explicit { window } => {
                let mut ids = Vec::with_capacity(span as usize);
                for n in lo..=hi {
                    ids.push(explicit_at(window, n)?);
                }
                let content = FiniteWord::from_ids(Arc::clone(window.alphabet()), ids)?;
                let lt = if lo <= window.origin() { window.left_tail().clone() } else { Tail::Unknown };
                let rt = if hi >= window.end() { window.right_tail().clone() } else { Tail::Unknown };
                // Re-anchor periodic tails to the new edges.
                let lt = realign_tail(lt, &content, true);
                let rt = realign_tail(rt, &content, false);
                Window::new(content, lo, lt, rt)
            }
        }
    }
}

fn window_tails(content: &FiniteWord, period: &[u8]) -> (Tail, Tail) {
    if content.len() < period.len() {
        return (Tail::Unknown, Tail::Unknown);
    }
    let lt = Tail::Periodic(content.slice(0, period.len()));
    let rt = Tail::Periodic(content.slice(content.len() - period.len(), content.len()));
    (lt, rt)
}

fn realign_tail(tail: Tail, content: &FiniteWord, left: bool) -> Tail {
    match tail {
        Tail::Periodic(p) if content.len() >= p.len() => {
            let aligned = if left {
                content.slice(0, p.len())
            } else {
                content.slice(content.len() - p.len(), content.len())
            };
            Tail::Periodic(aligned)
        }
        _ => Tail::Unknown,
    }
}

fn eventually_periodic_at(n: i64, left_p: &[u8], left_w: &[u8], right_w: &[u8], right_p: &[u8]) -> u8 {
    if n >= 0 {
        let n = n as usize;
        if n < right_w.len() {
            right_w[n]
        } else {
            right_p[(n - right_w.len()) % right_p.len()]
        }
    } else {
        let d = (-1 - n) as usize; // distance leftward from position -1
        if d < left_w.len() {
            left_w[left_w.len() - 1 - d]
        } else {
            let d = d - left_w.len();
            left_p[left_p.len() - 1 - (d % left_p.len())]
        }
    }
}

fn rotation_symbol(n: i64, p: u64, q: u64, beta_num: i64, beta_den: u64) -> u8 {
    // floor((n+1)a + b) - floor(na + b) with a = p/q, b = beta_num/beta_den,
    // evaluated exactly over the common denominator q * beta_den.
    let den = q as i128 * beta_den as i128;
    let at = |m: i64| -> i128 {
        let num = m as i128 * p as i128 * beta_den as i128 + beta_num as i128 * q as i128;
        num.div_euclid(den)
    };
    (at(n + 1) - at(n)) as u8
}

fn explicit_at(window: &Window, n: i64) -> Result<u8> {
    if n >= window.origin() && n <= window.end() {
        return Ok(window.ids()[(n - window.origin()) as usize]);
    }
    if n < window.origin() {
        if let Tail::Periodic(p) = window.left_tail() {
            let d = (window.origin() - 1 - n) as usize;
            return Ok(p.ids()[p.len() - 1 - (d % p.len())]);
        }
    } else if let Tail::Periodic(p) = window.right_tail() {
        let d = (n - window.end() - 1) as usize;
        return Ok(p.ids()[d % p.len()]);
    }
    Err(Error::Bounds(format!(
        "position {n} outside the window and its declared tails"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_unrolls() {
        let a = Alphabet::parse("12").unwrap();
        let gen = SequenceGenerator::periodic(FiniteWord::parse(&a, "12").unwrap()).unwrap();
        assert_eq!(gen.window(0, 5).unwrap().content().to_string(), "121212");
        assert_eq!(gen.window(-3, 2).unwrap().content().to_string(), "212121");
    }

    fn intro_example() -> SequenceGenerator {
        let a = Alphabet::parse("1234").unwrap();
        SequenceGenerator::eventually_periodic(
            FiniteWord::parse(&a, "12").unwrap(),
            FiniteWord::empty(&a),
            FiniteWord::parse(&a, "3").unwrap(),
            FiniteWord::parse(&a, "4").unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn eventually_periodic_both_directions() {
        let gen = intro_example();
        let w = gen.window(-6, 4).unwrap();
        assert_eq!(w.content().to_string(), "12121234444");
        let marker = FiniteWord::parse(w.alphabet(), "1234").unwrap();
        assert_eq!(crate::word::occurrences(&marker, w.content()).unwrap().len(), 1);
        assert!(matches!(w.left_tail(), Tail::Periodic(p) if p.to_string() == "12"));
        assert!(matches!(w.right_tail(), Tail::Periodic(p) if p.to_string() == "4"));
    }

    #[test]
    fn sturmian_is_balanced_binary() {
        let gen = SequenceGenerator::sturmian(RotationNumber::Golden, 0, 1).unwrap();
        let w = gen.window(0, 200).unwrap();
        assert!(w.ids().iter().all(|&c| c <= 1));
        // golden rotation: density of 1s near 0.618
        let ones = w.ids().iter().filter(|&&c| c == 1).count();
        assert!((0.55..0.68).contains(&(ones as f64 / w.len() as f64)));
        // never two consecutive 0s for alpha > 1/2
        assert!(!w.content().to_string().contains("00"));
    }

    #[test]
    fn gap_generator_prefix() {
        let f = crate::schedule::GrowthFn::StepEvery { base: 1 << 40, step: 1 << 40 };
        let sched = crate::schedule::build_schedule(f, 3, 1).unwrap();
        let gen = SequenceGenerator::GapConstruction { schedule: sched, num_gaps: 3 };
        let w = gen.window(0, 8).unwrap();
        assert_eq!(w.content().to_string(), "101000010");
        let w = gen.window(-3, 2).unwrap();
        assert_eq!(w.content().to_string(), "000101");
    }

    #[test]
    fn nesting_consistency() {
        let gens = [
            SequenceGenerator::periodic(
                FiniteWord::parse(&Alphabet::parse("abc").unwrap(), "abcab").unwrap(),
            )
            .unwrap(),
            intro_example(),
            SequenceGenerator::sturmian(RotationNumber::Silver, 1, 3).unwrap(),
        ];
        for gen in &gens {
            let outer = gen.window(-40, 40).unwrap();
            let inner = gen.window(-7, 13).unwrap();
            assert_eq!(
                outer.slice_abs(-7, 13).unwrap(),
                *inner.content(),
                "nested window must be a subword at the right offset"
            );
        }
    }

    #[test]
    fn explicit_extends_into_periodic_tails() {
        let a = Alphabet::binary();
        let content = FiniteWord::parse(&a, "0011").unwrap();
        let w = Window::new(
            content,
            0,
            Tail::Periodic(FiniteWord::parse(&a, "0").unwrap()),
            Tail::Periodic(FiniteWord::parse(&a, "11").unwrap()),
        )
        .unwrap();
        let gen = SequenceGenerator::Explicit { window: w };
        assert_eq!(gen.window(-3, 6).unwrap().content().to_string(), "0000011111");
        let bare = SequenceGenerator::Explicit {
            window: Window::bare(FiniteWord::parse(&a, "0011").unwrap(), 0),
        };
        assert!(bare.window(-1, 3).is_err());
    }
}
