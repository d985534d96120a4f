//! Quadratic/cubic reference implementations used as oracles in tests.
//! These share no code with the indexed implementations they check.

use std::collections::{BTreeMap, BTreeSet, HashSet};

/// Distinct n-factors of `text`, by hashing every position.
pub fn distinct_factors(text: &[u8], n: usize) -> u64 {
    if n == 0 || n > text.len() {
        return 0;
    }
    let mut set: HashSet<&[u8]> = HashSet::new();
    for i in 0..=text.len() - n {
        set.insert(&text[i..i + n]);
    }
    set.len() as u64
}

/// Right-special n-factors with their successor sets, observed strictly
/// inside the text.
pub fn right_special_words(text: &[u8], n: usize) -> Vec<(Vec<u8>, Vec<u8>)> {
    let mut succ: BTreeMap<&[u8], BTreeSet<u8>> = BTreeMap::new();
    if n == 0 || n >= text.len() {
        return Vec::new();
    }
    for i in 0..text.len() - n {
        succ.entry(&text[i..i + n]).or_default().insert(text[i + n]);
    }
    succ.into_iter()
        .filter(|(_, s)| s.len() >= 2)
        .map(|(w, s)| (w.to_vec(), s.into_iter().collect()))
        .collect()
}

pub fn profile(text: &[u8], n_max: usize) -> (Vec<u64>, Vec<u64>) {
    let mut c = vec![0u64; n_max + 1];
    let mut rs = vec![0u64; n_max + 1];
    for n in 1..=n_max {
        c[n] = distinct_factors(text, n);
        rs[n] = right_special_words(text, n).len() as u64;
    }
    (c, rs)
}

/// Position scan for all (1-based, overlapping) occurrences.
pub fn occurrences(pattern: &[u8], text: &[u8]) -> Vec<usize> {
    let mut out = Vec::new();
    if pattern.is_empty() || pattern.len() > text.len() {
        return out;
    }
    for i in 0..=text.len() - pattern.len() {
        if &text[i..i + pattern.len()] == pattern {
            out.push(i + 1);
        }
    }
    out
}

/// Double-loop check that every `span`-factor of `text` contains some
/// member of `targets`. Returns the first violating start (1-based).
pub fn containment_scan(text: &[u8], span: usize, targets: &HashSet<Vec<u8>>) -> Option<usize> {
    if span > text.len() {
        return None;
    }
    let m = targets.iter().next().map_or(0, |t| t.len());
    'outer: for start in 0..=text.len() - span {
        let window = &text[start..start + span];
        if m == 0 || m > window.len() {
            return Some(start + 1);
        }
        for i in 0..=window.len() - m {
            if targets.contains(&window[i..i + m]) {
                continue 'outer;
            }
        }
        return Some(start + 1);
    }
    None
}
