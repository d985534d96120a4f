//! Certificates: named families of distinct n-words verified to occur in a
//! window, each carrying the lower bound on c_n it establishes. The JSON
//! form is deliberately small enough to re-verify with a few lines of any
//! scripting language: check the words are distinct, have length n, occur
//! in the window, and number at least claimed_bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{occurrences_ids, FiniteWord};
use crate::window::Window;

/// Which construction produced the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateFamily {
    /// Words sliding over a fixed marker occurrence, discriminated by the
    /// position of the rightmost marker occurrence inside them.
    Anchored,
    /// Marker padded by zeros on both sides, discriminated by offset.
    FiniteOnes,
    /// Two rays with a common zero-run prefix but differing at a position.
    DoubleRay,
    /// Zero-prefixed ray words against ray-suffixed zero-tail words, with
    /// runs of zeros bounded inside the ray.
    BoundedRuns,
    /// The tight family: n + ell words at n = ell + m - 2k.
    OnePointFive,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    #[serde(rename = "lemma_id")]
    pub family: CertificateFamily,
    pub n: usize,
    /// Number of distinct words verified to occur in the window.
    pub claimed_bound: u64,
    /// Family size the construction yields with unlimited window; equals
    /// `claimed_bound` unless the window was too short.
    pub theoretical_bound: u64,
    pub words: Vec<FiniteWord>,
}

impl Certificate {
    pub fn shortfall(&self) -> u64 {
        self.theoretical_bound - self.claimed_bound
    }

    /// Re-checks this certificate against a window: words distinct, of
    /// length n, present, and at least claimed_bound many.
    pub fn verify(&self, window: &Window) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for w in &self.words {
            if w.len() != self.n {
                return Err(Error::Precondition(format!(
                    "certificate word {w} has length {} != n = {}",
                    w.len(),
                    self.n
                )));
            }
            if !seen.insert(w.clone()) {
                return Err(Error::Precondition(format!("duplicate certificate word {w}")));
            }
            if occurrences_ids(w.ids(), window.ids()).is_empty() {
                return Err(Error::Precondition(format!(
                    "certificate word {w} does not occur in the window"
                )));
            }
        }
        if (self.words.len() as u64) < self.claimed_bound {
            return Err(Error::Precondition(format!(
                "only {} words back a claimed bound of {}",
                self.words.len(),
                self.claimed_bound
            )));
        }
        Ok(())
    }
}

fn finish(
    family: CertificateFamily,
    n: usize,
    theoretical: u64,
    candidates: Vec<Vec<u8>>,
    window: &Window,
) -> Result<Certificate> {
    let mut seen = std::collections::BTreeSet::new();
    let mut words = Vec::new();
    for c in candidates {
        debug_assert_eq!(c.len(), n);
        if !seen.insert(c.clone()) {
            return Err(Error::Precondition(
                "family construction produced a duplicate word; parameters violate its discrimination argument".into(),
            ));
        }
        if !occurrences_ids(&c, window.ids()).is_empty() {
            words.push(FiniteWord::from_ids(std::sync::Arc::clone(window.alphabet()), c)?);
        }
    }
    words.sort();
    let cert = Certificate {
        family,
        n,
        claimed_bound: words.len() as u64,
        theoretical_bound: theoretical,
        words,
    };
    cert.verify(window)?;
    Ok(cert)
}

/// The sliding family over a fixed marker occurrence: all n-words that
/// contain a chosen occurrence of `marker` as their rightmost one. Picks
/// the occurrence admitting the longest slide; the full count n - |m| + 1
/// is reported as the theoretical bound.
pub fn anchored_family(window: &Window, marker: &FiniteWord, n: usize) -> Result<Certificate> {
    if !marker.same_alphabet(window.content()) {
        return Err(Error::AlphabetMismatch("marker over a different alphabet".into()));
    }
    if marker.is_empty() {
        return Err(Error::Precondition("marker must be nonempty".into()));
    }
    if n < marker.len() {
        return Err(Error::Precondition(format!(
            "n = {n} shorter than the marker ({})",
            marker.len()
        )));
    }
    if n > window.len() {
        return Err(Error::Bounds(format!("n = {n} exceeds the window length {}", window.len())));
    }
    let occs = occurrences_ids(marker.ids(), window.ids());
    if occs.is_empty() {
        return Err(Error::Precondition(format!("marker {marker} does not occur in the window")));
    }
    let m = marker.len();
    let text_len = window.len();
    // For an occurrence starting at j (0-based) with the next occurrence at
    // j', a start i keeps that occurrence rightmost iff
    // max(0, j+m-n) <= i <= min(j, j'+m-n-1, text_len-n).
    let mut best: Option<(usize, usize)> = None; // (count, start j)
    for (idx, &start1) in occs.iter().enumerate() {
        let j = start1 - 1;
        let lo = (j + m).saturating_sub(n);
        let mut hi = j.min(text_len - n);
        if let Some(&next1) = occs.get(idx + 1) {
            let next = next1 - 1;
            // i <= next + m - n - 1, guarding the subtraction
            match (next + m).checked_sub(n + 1) {
                Some(cap) => hi = hi.min(cap),
                None => continue,
            }
        }
        if lo > hi {
            continue;
        }
        let count = hi - lo + 1;
        if best.map_or(true, |(c, _)| count > c) {
            best = Some((count, j));
        }
    }
    let (count, j) = best.ok_or_else(|| {
        Error::Precondition("no marker occurrence admits a sliding family at this n".into())
    })?;
    let lo = (j + m).saturating_sub(n);
    let candidates: Vec<Vec<u8>> = (lo..lo + count)
        .map(|i| window.ids()[i..i + n].to_vec())
        .collect();
    finish(
        CertificateFamily::Anchored,
        n,
        (n - m + 1) as u64,
        candidates,
        window,
    )
}

/// Marker with zero-padding on both sides: `0^i marker 0^(n-|m|-i)`. The
/// marker must begin and end with a nonzero symbol so the offset
/// discriminates the words.
pub fn padded_family(window: &Window, marker: &FiniteWord, n: usize) -> Result<Certificate> {
    if marker.is_empty() || n < marker.len() {
        return Err(Error::Precondition("need a nonempty marker no longer than n".into()));
    }
    let ids = marker.ids();
    if ids[0] == 0 || ids[ids.len() - 1] == 0 {
        return Err(Error::Precondition(
            "padded marker must begin and end with a nonzero symbol".into(),
        ));
    }
    let m = marker.len();
    let candidates: Vec<Vec<u8>> = (0..=n - m)
        .map(|i| {
            let mut w = vec![0u8; n];
            w[i..i + m].copy_from_slice(ids);
            w
        })
        .collect();
    finish(
        CertificateFamily::FiniteOnes,
        n,
        (n - m + 1) as u64,
        candidates,
        window,
    )
}

/// Parameters for the ray families. All positions are 1-based, matching
/// the usual `y(1) y(2) ...` indexing of one-sided rays.
#[derive(Debug, Clone)]
pub enum RayVariant {
    /// Two rays differing at position k; emits `0^i y(1..n-i)` and
    /// `0^i y'(1..n-i)` for `0 <= i <= n-k`: 2n - 2k + 2 words.
    DoubleRay { other: FiniteWord, k: usize },
    /// `0^k` absent from the ray; emits `0^i y(1..n-i)` for `k <= i < n`
    /// and `z(-j..-1) 0^(n-j)` for `1 <= j <= n-k`: 2n - 2k words.
    BoundedRuns { k: usize },
    /// `y(1..m)` ends with 1 and has exactly 2k ones; the first zero run
    /// of length m-2k+1 in y starts at position ell+1. At n = ell+m-2k
    /// emits `0^i y(1..n-i)` for `0 <= i < n` and `z(-j..-1) 0^(n-j)` for
    /// `0 <= j < ell`: n + ell = 2 ell + m - 2k words.
    OnePointFive { k: usize, m: usize, ell: usize },
}

/// The ray-based families. `y_prefix` must begin with 1; `z_suffix` (for
/// the variants that use it) must end with 1.
pub fn ray_families(
    window: &Window,
    y_prefix: &FiniteWord,
    z_suffix: Option<&FiniteWord>,
    n: usize,
    variant: &RayVariant,
) -> Result<Certificate> {
    let y = y_prefix.ids();
    if y.is_empty() || y[0] != 1 {
        return Err(Error::Precondition("ray prefix must begin with 1".into()));
    }
    if n == 0 {
        return Err(Error::Precondition("n must be >= 1".into()));
    }
    let need_z = !matches!(variant, RayVariant::DoubleRay { .. });
    let z = match (need_z, z_suffix) {
        (true, Some(z)) => {
            let ids = z.ids();
            if ids.is_empty() || ids[ids.len() - 1] != 1 {
                return Err(Error::Precondition("ray suffix must end with 1".into()));
            }
            ids
        }
        (true, None) => return Err(Error::Precondition("this variant needs a ray suffix".into())),
        (false, _) => &[],
    };

    let mut candidates: Vec<Vec<u8>> = Vec::new();
    let (family, theoretical) = match variant {
        RayVariant::DoubleRay { other, k } => {
            let y2 = other.ids();
            let k = *k;
            if k == 0 || k > n {
                return Err(Error::Precondition(format!("need 1 <= k <= n, got k = {k}")));
            }
            if y.len() < n || y2.len() < n {
                return Err(Error::Precondition(format!(
                    "both ray prefixes must reach length n = {n}"
                )));
            }
            if y2[0] != 1 {
                return Err(Error::Precondition("second ray prefix must begin with 1".into()));
            }
            if y[k - 1] == y2[k - 1] {
                return Err(Error::Precondition(format!("rays must differ at position k = {k}")));
            }
            for i in 0..=n - k {
                for ray in [y, y2] {
                    let mut w = vec![0u8; i];
                    w.extend_from_slice(&ray[..n - i]);
                    candidates.push(w);
                }
            }
            (CertificateFamily::DoubleRay, (2 * (n - k) + 2) as u64)
        }
        RayVariant::BoundedRuns { k } => {
            let k = *k;
            if k == 0 || k >= n {
                return Err(Error::Precondition(format!("need 1 <= k < n, got k = {k}")));
            }
            if y.len() < n {
                return Err(Error::Precondition(format!("ray prefix must reach length n = {n}")));
            }
            let zeros = vec![0u8; k];
            if !occurrences_ids(&zeros, &y[..n]).is_empty() {
                return Err(Error::Precondition(format!(
                    "0^{k} occurs in the ray prefix; the run bound is violated"
                )));
            }
            for i in k..n {
                let mut w = vec![0u8; i];
                w.extend_from_slice(&y[..n - i]);
                candidates.push(w);
            }
            for j in 1..=n - k {
                if j > z.len() {
                    return Err(Error::Precondition(format!(
                        "ray suffix too short: need {} trailing symbols",
                        n - k
                    )));
                }
                let mut w = z[z.len() - j..].to_vec();
                w.resize(n, 0);
                candidates.push(w);
            }
            (CertificateFamily::BoundedRuns, (2 * (n - k)) as u64)
        }
        RayVariant::OnePointFive { k, m, ell } => {
            let (k, m, ell) = (*k, *m, *ell);
            if k == 0 || m < 2 * k {
                return Err(Error::Precondition(format!("need m >= 2k >= 2, got m = {m}, k = {k}")));
            }
            if n != ell + m - 2 * k {
                return Err(Error::Precondition(format!(
                    "n must equal ell + m - 2k = {}",
                    ell + m - 2 * k
                )));
            }
            let run = m - 2 * k + 1;
            if y.len() < (ell + run).max(m) {
                return Err(Error::Precondition(format!(
                    "ray prefix must reach length {}",
                    (ell + run).max(m)
                )));
            }
            if y[m - 1] != 1 {
                return Err(Error::Precondition(format!("y(1..m) must end with 1 at m = {m}")));
            }
            let ones = y[..m].iter().filter(|&&c| c == 1).count();
            if ones != 2 * k {
                return Err(Error::Precondition(format!(
                    "y(1..m) must contain exactly 2k = {} ones, found {ones}",
                    2 * k
                )));
            }
            let zeros = vec![0u8; run];
            let first = occurrences_ids(&zeros, &y[..ell + run]);
            if first.first() != Some(&(ell + 1)) {
                return Err(Error::Precondition(format!(
                    "the first run 0^{run} in y must start exactly at position ell + 1 = {}",
                    ell + 1
                )));
            }
            if ell < m {
                return Err(Error::Precondition(
                    "ell < m is impossible when y(1..m) ends with 1 and avoids the run".into(),
                ));
            }
            for i in 0..n {
                let mut w = vec![0u8; i];
                w.extend_from_slice(&y[..n - i]);
                candidates.push(w);
            }
            for j in 0..ell {
                if j > z.len() {
                    return Err(Error::Precondition(format!(
                        "ray suffix too short: need {} trailing symbols",
                        ell - 1
                    )));
                }
                let mut w = z[z.len() - j..].to_vec();
                w.resize(n, 0);
                candidates.push(w);
            }
            (CertificateFamily::OnePointFive, (n + ell) as u64)
        }
    };
    finish(family, n, theoretical, candidates, window)
}

/// Deterministic finite-scale ray extraction: the content after the first 1
/// following the longest zero run in the right half, and the content up to
/// the last 1 preceding the longest zero run in the left half.
pub fn extract_rays(window: &Window) -> (Option<FiniteWord>, Option<FiniteWord>) {
    let ids = window.ids();
    let half = ids.len() / 2;
    let longest_zero_run = |range: std::ops::Range<usize>| -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut i = range.start;
        while i < range.end {
            if ids[i] == 0 {
                let s = i;
                while i < range.end && ids[i] == 0 {
                    i += 1;
                }
                if best.map_or(true, |(bs, be)| i - s > be - bs) {
                    best = Some((s, i));
                }
            } else {
                i += 1;
            }
        }
        best
    };
    let y = longest_zero_run(half..ids.len()).and_then(|(_, run_end)| {
        ids[run_end..].iter().position(|&c| c == 1).map(|off| {
            window.content().slice(run_end + off, ids.len())
        })
    });
    let z = longest_zero_run(0..half).and_then(|(run_start, _)| {
        ids[..run_start].iter().rposition(|&c| c == 1).map(|pos| {
            window.content().slice(0, pos + 1)
        })
    });
    (y, z)
}

/// Derives the (m, ell) parameters of the tight family from a ray prefix:
/// m is the position of the 2k-th one, ell + 1 the start of the first
/// sufficiently long zero run.
pub fn one_point_five_params(y_prefix: &FiniteWord, k: usize) -> Result<(usize, usize)> {
    if k == 0 {
        return Err(Error::Precondition("k must be >= 1".into()));
    }
    let y = y_prefix.ids();
    let m = y
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 1)
        .nth(2 * k - 1)
        .map(|(i, _)| i + 1)
        .ok_or_else(|| Error::Precondition(format!("ray prefix has fewer than 2k = {} ones", 2 * k)))?;
    let run = m - 2 * k + 1;
    let zeros = vec![0u8; run];
    let ell = occurrences_ids(&zeros, y)
        .first()
        .map(|&p| p - 1)
        .ok_or_else(|| {
            Error::Precondition(format!("ray prefix contains no run 0^{run}; extend it"))
        })?;
    Ok((m, ell))
}
