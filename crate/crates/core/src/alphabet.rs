use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A small ordered alphabet. The position of a symbol in the list is its
/// internal id and also fixes the canonical (lexicographic) order used for
/// word ordering and tie-breaking everywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: Vec<char>) -> Result<Arc<Self>> {
        if symbols.is_empty() {
            return Err(Error::Config("alphabet must not be empty".into()));
        }
        if symbols.len() > 255 {
            return Err(Error::Config(format!(
                "alphabet size {} exceeds the supported maximum of 255",
                symbols.len()
            )));
        }
        for (i, &c) in symbols.iter().enumerate() {
            if symbols[..i].contains(&c) {
                return Err(Error::Config(format!("duplicate symbol {c:?} in alphabet")));
            }
        }
        Ok(Arc::new(Alphabet { symbols }))
    }

    /// Parses an alphabet from its symbol string, e.g. `"01"` or `"1234"`.
    pub fn parse(s: &str) -> Result<Arc<Self>> {
        Self::new(s.chars().collect())
    }

    pub fn binary() -> Arc<Self> {
        Self::parse("01").expect("binary alphabet is valid")
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn id_of(&self, c: char) -> Option<u8> {
        self.symbols.iter().position(|&s| s == c).map(|i| i as u8)
    }

    pub fn char_of(&self, id: u8) -> char {
        self.symbols[id as usize]
    }

    pub fn decode(&self, ids: &[u8]) -> String {
        ids.iter().map(|&i| self.char_of(i)).collect()
    }

    pub fn encode(&self, s: &str) -> Result<Vec<u8>> {
        s.chars()
            .map(|c| {
                self.id_of(c)
                    .ok_or_else(|| Error::AlphabetMismatch(format!("symbol {c:?} not in alphabet {self}")))
            })
            .collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.symbols {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(Alphabet::parse("").is_err());
        assert!(Alphabet::parse("010").is_err());
        assert!(Alphabet::parse("0123456789").is_ok());
    }

    #[test]
    fn ids_follow_declaration_order() {
        let a = Alphabet::parse("21").unwrap();
        assert_eq!(a.id_of('2'), Some(0));
        assert_eq!(a.id_of('1'), Some(1));
        assert_eq!(a.id_of('0'), None);
        assert_eq!(a.char_of(0), '2');
    }
}
