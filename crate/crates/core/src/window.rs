use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::word::FiniteWord;

/// What is known about the sequence beyond one edge of a window.
///
/// `Periodic(p)` declares that the sequence continues with period `p` beyond
/// that edge, phase-aligned with the window content: on the left the
/// outermost `|p|` content symbols equal `p`, and the sequence extends
/// leftward by repeating `p`; symmetrically on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    Unknown,
    Periodic(FiniteWord),
}

/// A finite two-sided excerpt of a bi-infinite sequence. `origin` is the
/// absolute position represented by content index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    content: FiniteWord,
    origin: i64,
    left_tail: Tail,
    right_tail: Tail,
}

impl Window {
    pub fn new(content: FiniteWord, origin: i64, left_tail: Tail, right_tail: Tail) -> Result<Self> {
        if let Tail::Periodic(p) = &left_tail {
            check_tail_alignment(&content, p, true)?;
        }
        if let Tail::Periodic(p) = &right_tail {
            check_tail_alignment(&content, p, false)?;
        }
        Ok(Window {
            content,
            origin,
            left_tail,
            right_tail,
        })
    }

    pub fn bare(content: FiniteWord, origin: i64) -> Self {
        Window {
            content,
            origin,
            left_tail: Tail::Unknown,
            right_tail: Tail::Unknown,
        }
    }

    pub fn content(&self) -> &FiniteWord {
        &self.content
    }

    pub fn ids(&self) -> &[u8] {
        self.content.ids()
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.content.alphabet()
    }

    pub fn len(&self) -> usize {
        self.content.len()
    }

    pub fn is_empty(&self) -> bool {
        self.content.is_empty()
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    /// Absolute position of the last content symbol.
    pub fn end(&self) -> i64 {
        self.origin + self.content.len() as i64 - 1
    }

    pub fn left_tail(&self) -> &Tail {
        &self.left_tail
    }

    pub fn right_tail(&self) -> &Tail {
        &self.right_tail
    }

    /// Extracts the symbols at absolute positions `lo..=hi`. The range must
    /// lie inside the stored content.
    pub fn slice_abs(&self, lo: i64, hi: i64) -> Result<FiniteWord> {
        if lo > hi {
            return Err(Error::Bounds(format!("slice range {lo}..={hi} is empty")));
        }
        if lo < self.origin || hi > self.end() {
            return Err(Error::Bounds(format!(
                "slice {lo}..={hi} outside window {}..={}",
                self.origin,
                self.end()
            )));
        }
        let a = (lo - self.origin) as usize;
        let b = (hi - self.origin) as usize + 1;
        Ok(self.content.slice(a, b))
    }
}

fn check_tail_alignment(content: &FiniteWord, period: &FiniteWord, left: bool) -> Result<()> {
    if period.is_empty() {
        return Err(Error::Config("tail period word must be nonempty".into()));
    }
    if !period.same_alphabet(content) {
        return Err(Error::AlphabetMismatch("tail period over a different alphabet".into()));
    }
    let n = content.len();
    let p = period.len();
    if n < p {
        return Err(Error::Config(format!(
            "window of length {n} too short to witness a period-{p} tail"
        )));
    }
    let side = if left { &content.ids()[..p] } else { &content.ids()[n - p..] };
    if side != period.ids() {
        return Err(Error::Config(format!(
            "{} tail period {period} does not match the window edge",
            if left { "left" } else { "right" }
        )));
    }
    Ok(())
}

// Serialized form: {origin, alphabet, content, left_tail, right_tail} with
// tails either "unknown" or {"periodic": "<word>"}.
#[derive(Serialize, Deserialize)]
struct WindowRepr {
    origin: i64,
    alphabet: String,
    content: String,
    left_tail: TailRepr,
    right_tail: TailRepr,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TailRepr {
    Unknown(String),
    Periodic { periodic: String },
}

fn tail_repr(t: &Tail) -> TailRepr {
    match t {
        Tail::Unknown => TailRepr::Unknown("unknown".into()),
        Tail::Periodic(p) => TailRepr::Periodic { periodic: p.to_string() },
    }
}

fn tail_from_repr(r: &TailRepr, alphabet: &Arc<Alphabet>) -> Result<Tail> {
    match r {
        TailRepr::Unknown(s) if s == "unknown" => Ok(Tail::Unknown),
        TailRepr::Unknown(s) => Err(Error::Config(format!("unrecognized tail descriptor {s:?}"))),
        TailRepr::Periodic { periodic } => Ok(Tail::Periodic(FiniteWord::parse(alphabet, periodic)?)),
    }
}

impl Serialize for Window {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WindowRepr {
            origin: self.origin,
            alphabet: self.alphabet().to_string(),
            content: self.content.to_string(),
            left_tail: tail_repr(&self.left_tail),
            right_tail: tail_repr(&self.right_tail),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Window {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = WindowRepr::deserialize(deserializer)?;
        let alphabet = Alphabet::parse(&repr.alphabet).map_err(D::Error::custom)?;
        let content = FiniteWord::parse(&alphabet, &repr.content).map_err(D::Error::custom)?;
        let left = tail_from_repr(&repr.left_tail, &alphabet).map_err(D::Error::custom)?;
        let right = tail_from_repr(&repr.right_tail, &alphabet).map_err(D::Error::custom)?;
        Window::new(content, repr.origin, left, right).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_alignment_is_validated() {
        let a = Alphabet::binary();
        let content = FiniteWord::parse(&a, "0011").unwrap();
        let zero = FiniteWord::parse(&a, "0").unwrap();
        assert!(Window::new(content.clone(), 0, Tail::Periodic(zero.clone()), Tail::Unknown).is_ok());
        assert!(Window::new(content, 0, Tail::Unknown, Tail::Periodic(zero)).is_err());
    }

    #[test]
    fn slice_abs_returns_stored_symbols() {
        let a = Alphabet::parse("1234").unwrap();
        let content = FiniteWord::parse(&a, "12123").unwrap();
        let w = Window::bare(content, -3);
        assert_eq!(w.slice_abs(-3, 1).unwrap().to_string(), "12123");
        assert_eq!(w.slice_abs(-1, 1).unwrap().to_string(), "123");
        assert!(w.slice_abs(-4, 0).is_err());
        assert!(w.slice_abs(0, 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = Alphabet::binary();
        let content = FiniteWord::parse(&a, "00101").unwrap();
        let zero = FiniteWord::parse(&a, "0").unwrap();
        let w = Window::new(content, -2, Tail::Periodic(zero), Tail::Unknown).unwrap();
        let js = serde_json::to_string(&w).unwrap();
        let back: Window = serde_json::from_str(&js).unwrap();
        assert_eq!(w, back);
    }
}
