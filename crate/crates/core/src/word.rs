use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// A finite word over a shared [`Alphabet`]. Symbols are stored as alphabet
/// ids, so comparing the id sequences lexicographically is exactly the
/// canonical order induced by the alphabet.
#[derive(Debug, Clone)]
pub struct FiniteWord {
    alphabet: Arc<Alphabet>,
    syms: Vec<u8>,
}

impl FiniteWord {
    pub fn from_ids(alphabet: Arc<Alphabet>, syms: Vec<u8>) -> Result<Self> {
        let size = alphabet.size() as u8;
        if let Some(&bad) = syms.iter().find(|&&s| s >= size) {
            return Err(Error::AlphabetMismatch(format!(
                "symbol id {bad} out of range for alphabet {alphabet}"
            )));
        }
        Ok(FiniteWord { alphabet, syms })
    }

    pub fn parse(alphabet: &Arc<Alphabet>, s: &str) -> Result<Self> {
        Ok(FiniteWord {
            alphabet: Arc::clone(alphabet),
            syms: alphabet.encode(s)?,
        })
    }

    pub fn empty(alphabet: &Arc<Alphabet>) -> Self {
        FiniteWord {
            alphabet: Arc::clone(alphabet),
            syms: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn ids(&self) -> &[u8] {
        &self.syms
    }

    pub fn slice(&self, start: usize, end: usize) -> FiniteWord {
        FiniteWord {
            alphabet: Arc::clone(&self.alphabet),
            syms: self.syms[start..end].to_vec(),
        }
    }

    pub fn same_alphabet(&self, other: &FiniteWord) -> bool {
        Arc::ptr_eq(&self.alphabet, &other.alphabet) || *self.alphabet == *other.alphabet
    }

    pub fn is_prefix_of(&self, other: &FiniteWord) -> bool {
        self.same_alphabet(other) && other.syms.starts_with(&self.syms)
    }

    pub fn is_suffix_of(&self, other: &FiniteWord) -> bool {
        self.same_alphabet(other) && other.syms.ends_with(&self.syms)
    }
}

impl PartialEq for FiniteWord {
    fn eq(&self, other: &Self) -> bool {
        self.same_alphabet(other) && self.syms == other.syms
    }
}

impl Eq for FiniteWord {}

impl PartialOrd for FiniteWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.syms.cmp(&other.syms)
    }
}

impl std::hash::Hash for FiniteWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.syms.hash(state);
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.decode(&self.syms))
    }
}

// Words serialize with their alphabet so ordering survives a round trip.
impl serde::Serialize for FiniteWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Repr {
            alphabet: String,
            word: String,
        }
        Repr {
            alphabet: self.alphabet.to_string(),
            word: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for FiniteWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Repr {
            alphabet: String,
            word: String,
        }
        let r = Repr::deserialize(d)?;
        let alphabet = Alphabet::parse(&r.alphabet).map_err(serde::de::Error::custom)?;
        FiniteWord::parse(&alphabet, &r.word).map_err(serde::de::Error::custom)
    }
}

/// Concatenation. Errors when the alphabets differ.
pub fn concat(v: &FiniteWord, w: &FiniteWord) -> Result<FiniteWord> {
    if !v.same_alphabet(w) {
        return Err(Error::AlphabetMismatch(format!(
            "cannot concatenate words over {} and {}",
            v.alphabet(),
            w.alphabet()
        )));
    }
    let mut syms = Vec::with_capacity(v.len() + w.len());
    syms.extend_from_slice(v.ids());
    syms.extend_from_slice(w.ids());
    Ok(FiniteWord {
        alphabet: Arc::clone(v.alphabet()),
        syms,
    })
}

/// All start positions (1-based, overlapping) of `pattern` inside `text`.
pub fn occurrences(pattern: &FiniteWord, text: &FiniteWord) -> Result<Vec<usize>> {
    if pattern.is_empty() {
        return Err(Error::Precondition("occurrence pattern must be nonempty".into()));
    }
    if !pattern.same_alphabet(text) {
        return Err(Error::AlphabetMismatch("occurrences across different alphabets".into()));
    }
    Ok(occurrences_ids(pattern.ids(), text.ids()))
}

/// Occurrence scan on raw id slices (1-based starts, overlapping).
pub fn occurrences_ids(pattern: &[u8], text: &[u8]) -> Vec<usize> {
    let m = pattern.len();
    if m == 0 || m > text.len() {
        return Vec::new();
    }
    // KMP; patterns here are short but texts run to 10^6+ symbols.
    let mut fail = vec![0usize; m];
    let mut k = 0;
    for i in 1..m {
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut out = Vec::new();
    let mut q = 0;
    for (i, &c) in text.iter().enumerate() {
        while q > 0 && c != pattern[q] {
            q = fail[q - 1];
        }
        if c == pattern[q] {
            q += 1;
        }
        if q == m {
            out.push(i + 2 - m); // 1-based start
            q = fail[q - 1];
        }
    }
    out
}

/// Smallest period of a word: the least p >= 1 with w[i] == w[i+p] for all
/// valid i. Computed from the KMP failure function.
pub fn smallest_period(ids: &[u8]) -> usize {
    let n = ids.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && ids[i] != ids[k] {
            k = fail[k - 1];
        }
        if ids[i] == ids[k] {
            k += 1;
        }
        fail[i] = k;
    }
    n - fail[n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(alpha: &Arc<Alphabet>, s: &str) -> FiniteWord {
        FiniteWord::parse(alpha, s).unwrap()
    }

    #[test]
    fn concat_basics() {
        let a = Alphabet::binary();
        assert_eq!(concat(&w(&a, "10"), &w(&a, "01")).unwrap(), w(&a, "1001"));
        assert_eq!(concat(&w(&a, ""), &w(&a, "101")).unwrap(), w(&a, "101"));
        let u = concat(&w(&a, "110"), &w(&a, "01")).unwrap();
        assert_eq!(u.len(), 5);
        assert!(w(&a, "110").is_prefix_of(&u));
        assert!(w(&a, "01").is_suffix_of(&u));
    }

    #[test]
    fn concat_rejects_alphabet_mismatch() {
        let a = Alphabet::binary();
        let b = Alphabet::parse("12").unwrap();
        assert!(concat(&w(&a, "0"), &w(&b, "1")).is_err());
    }

    #[test]
    fn overlapping_occurrences() {
        let a = Alphabet::binary();
        assert_eq!(occurrences(&w(&a, "00"), &w(&a, "0000")).unwrap(), vec![1, 2, 3]);
        assert_eq!(occurrences(&w(&a, "11"), &w(&a, "0000")).unwrap(), Vec::<usize>::new());
        assert!(occurrences(&w(&a, ""), &w(&a, "0")).is_err());
    }

    #[test]
    fn canonical_order_follows_alphabet() {
        let a = Alphabet::parse("10").unwrap(); // '1' precedes '0'
        assert!(w(&a, "11") < w(&a, "10"));
        assert!(w(&a, "1") < w(&a, "0"));
    }

    #[test]
    fn period_detection() {
        let a = Alphabet::binary();
        assert_eq!(smallest_period(w(&a, "010101").ids()), 2);
        assert_eq!(smallest_period(w(&a, "0110").ids()), 3);
        assert_eq!(smallest_period(w(&a, "0000").ids()), 1);
    }
}
