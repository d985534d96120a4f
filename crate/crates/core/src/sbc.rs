//! Sliding block codes and periodic orbits, including the orbit-membership
//! reduction onto {0,1} that collapses a periodic orbit to the zero ray.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::window::{Tail, Window};
use crate::word::{smallest_period, FiniteWord};

/// Largest rule table we are willing to enumerate (source_alphabet^k).
const TABLE_BUDGET: u64 = 1 << 22;

/// The finite subshift of all shifts of one periodic point, stored by its
/// primitive period word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicOrbit {
    period: FiniteWord,
}

impl PeriodicOrbit {
    pub fn new(period: FiniteWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Config("orbit period must be nonempty".into()));
        }
        let p = smallest_period(period.ids());
        if p != period.len() && period.len() % p == 0 {
            return Err(Error::Config(format!(
                "period word {period} is a power of a shorter word (period {p})"
            )));
        }
        Ok(PeriodicOrbit { period })
    }

    pub fn period(&self) -> &FiniteWord {
        &self.period
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.period.alphabet()
    }

    /// The n-factors of the orbit: the n-windows of the periodized word,
    /// one per phase (at most `period_len` distinct).
    pub fn factors(&self, n: usize) -> BTreeSet<Vec<u8>> {
        let p = self.period.ids();
        let reps = n / p.len() + 2;
        let unrolled: Vec<u8> = p.iter().copied().cycle().take(p.len() * reps).collect();
        (0..p.len()).map(|i| unrolled[i..i + n].to_vec()).collect()
    }

    pub fn contains_factor(&self, word: &[u8]) -> bool {
        if word.is_empty() {
            return true;
        }
        self.factors(word.len()).contains(word)
    }
}

/// A window-size-k local rule from k-words over the source alphabet to
/// single target symbols, total by construction.
#[derive(Debug, Clone)]
pub struct SlidingBlockCode {
    window_size: usize,
    source: Arc<Alphabet>,
    target: Arc<Alphabet>,
    /// Dense table indexed by the radix-|source| encoding of the k-word.
    table: Vec<u8>,
}

impl SlidingBlockCode {
    /// Builds the rule table by enumerating all k-words.
    pub fn from_rule<F>(
        source: Arc<Alphabet>,
        target: Arc<Alphabet>,
        window_size: usize,
        rule: F,
    ) -> Result<Self>
    where
        F: Fn(&[u8]) -> u8,
    {
        if window_size == 0 {
            return Err(Error::Config("window size must be >= 1".into()));
        }
        let a = source.size() as u64;
        let entries = a
            .checked_pow(window_size as u32)
            .filter(|&e| e <= TABLE_BUDGET)
            .ok_or_else(|| {
                Error::Budget(format!(
                    "rule table of {}^{window_size} entries exceeds the budget",
                    source.size()
                ))
            })?;
        let mut table = Vec::with_capacity(entries as usize);
        let mut word = vec![0u8; window_size];
        for code in 0..entries {
            let mut rest = code;
            for slot in word.iter_mut().rev() {
                *slot = (rest % a) as u8;
                rest /= a;
            }
            let out = rule(&word);
            if out as usize >= target.size() {
                return Err(Error::AlphabetMismatch(format!(
                    "rule output {out} outside target alphabet {target}"
                )));
            }
            table.push(out);
        }
        Ok(SlidingBlockCode {
            window_size,
            source,
            target,
            table,
        })
    }

    /// The identity relabeling (window size 1).
    pub fn identity(alphabet: Arc<Alphabet>) -> Self {
        SlidingBlockCode::from_rule(Arc::clone(&alphabet), alphabet, 1, |w| w[0])
            .expect("identity rule is total")
    }

    pub fn window_size(&self) -> usize {
        self.window_size
    }

    pub fn source(&self) -> &Arc<Alphabet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Alphabet> {
        &self.target
    }

    #[inline]
    fn encode(&self, word: &[u8]) -> usize {
        let a = self.source.size();
        word.iter().fold(0usize, |acc, &c| acc * a + c as usize)
    }

    pub fn apply_ids(&self, input: &[u8]) -> Vec<u8> {
        let k = self.window_size;
        if input.len() < k {
            return Vec::new();
        }
        let a = self.source.size();
        let mut out = Vec::with_capacity(input.len() - k + 1);
        // rolling radix window
        let mut code = self.encode(&input[..k]);
        let high = a.pow((k - 1) as u32);
        out.push(self.table[code]);
        for i in k..input.len() {
            code = (code - input[i - k] as usize * high) * a + input[i] as usize;
            out.push(self.table[code]);
        }
        out
    }

    pub fn apply_word(&self, word: &FiniteWord) -> Result<FiniteWord> {
        if *word.alphabet().as_ref() != *self.source {
            return Err(Error::AlphabetMismatch("code source alphabet differs from input".into()));
        }
        if word.len() < self.window_size {
            return Err(Error::Bounds(format!(
                "input of length {} shorter than window size {}",
                word.len(),
                self.window_size
            )));
        }
        FiniteWord::from_ids(Arc::clone(&self.target), self.apply_ids(word.ids()))
    }
}

/// Applies a code to a window. Output symbol i depends on input symbols
/// i..i+k-1, so the origin is preserved and the content shrinks by k-1.
/// Tails carry over only for pure relabelings (k = 1); for k > 1 the
/// transition zone next to each edge cannot be attested.
pub fn apply_sbc(code: &SlidingBlockCode, window: &Window) -> Result<Window> {
    let out = code.apply_word(window.content())?;
    let (lt, rt) = if code.window_size == 1 {
        (
            map_tail(code, window.left_tail()),
            map_tail(code, window.right_tail()),
        )
    } else {
        (Tail::Unknown, Tail::Unknown)
    };
    Window::new(out, window.origin(), lt, rt)
}

fn map_tail(code: &SlidingBlockCode, tail: &Tail) -> Tail {
    match tail {
        Tail::Periodic(p) => match code.apply_word(p) {
            Ok(img) => Tail::Periodic(img),
            Err(_) => Tail::Unknown,
        },
        Tail::Unknown => Tail::Unknown,
    }
}

/// The orbit-membership code: window size k (strictly above the orbit
/// period), output 0 where the k-word is a factor of the orbit and 1
/// otherwise. Any all-zero image word of positive length pulls back to a
/// factor of the orbit.
pub fn phi_reduce(orbit: &PeriodicOrbit, window_size: usize) -> Result<SlidingBlockCode> {
    if window_size <= orbit.period_len() {
        return Err(Error::Precondition(format!(
            "window size {window_size} must exceed the orbit period {}",
            orbit.period_len()
        )));
    }
    let members = orbit.factors(window_size);
    SlidingBlockCode::from_rule(
        Arc::clone(orbit.alphabet()),
        Alphabet::binary(),
        window_size,
        move |w| u8::from(!members.contains(w)),
    )
}
