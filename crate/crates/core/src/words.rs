//! Words over an ordered alphabet, the Lyndon predicate, and per-string
//! counters for Lyndon factors and Lyndon subsequences.
//!
//! Symbols are the indices `1..=sigma`; comparison is plain lexicographic
//! order on the index sequence, where a proper prefix is smaller.

use std::collections::HashSet;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::Natural;

/// Default cap on the number of position sets a subsequence counter may
/// enumerate (words of length up to 25).
pub const DEFAULT_MAX_SUBSETS: u64 = 1 << 25;

/// An ordered alphabet `a_1 < ... < a_sigma`, represented by its size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(u32);

impl Alphabet {
    pub fn new(size: u32) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidArgument("alphabet size must be >= 1".into()));
        }
        Ok(Alphabet(size))
    }

    pub fn size(self) -> u32 {
        self.0
    }

    /// Whether words over this alphabet print as letters.
    pub fn is_lettered(self) -> bool {
        self.0 <= 26
    }
}

/// A finite word over an [`Alphabet`]. The empty word is allowed.
///
/// Ordering compares symbol sequences only; words over different alphabets
/// with the same symbols compare equal in order but not under `==`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    symbols: Vec<u32>,
    alphabet: Alphabet,
}

impl Word {
    pub fn new(alphabet: Alphabet, symbols: Vec<u32>) -> Result<Self> {
        if let Some(&symbol) = symbols.iter().find(|&&s| s == 0 || s > alphabet.size()) {
            return Err(Error::SymbolOutOfRange {
                symbol,
                sigma: alphabet.size(),
            });
        }
        Ok(Word { symbols, alphabet })
    }

    pub(crate) fn from_raw(alphabet: Alphabet, symbols: Vec<u32>) -> Self {
        debug_assert!(symbols.iter().all(|&s| s >= 1 && s <= alphabet.size()));
        Word { symbols, alphabet }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            symbols: Vec::new(),
            alphabet,
        }
    }

    /// Parses the text form: letters `a..z`, or comma-separated symbol
    /// indices (`1,3,2`). When `sigma` is `None` the alphabet is the smallest
    /// one containing every symbol.
    pub fn parse(text: &str, sigma: Option<u32>) -> Result<Self> {
        let text = text.trim();
        let parse_err = |reason: String| Error::Parse {
            text: text.to_string(),
            reason,
        };
        let symbols: Vec<u32> = if text.is_empty() {
            Vec::new()
        } else if text.contains(',') || text.chars().all(|c| c.is_ascii_digit()) {
            text.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u32>()
                        .map_err(|e| parse_err(format!("bad symbol {tok:?}: {e}")))
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    if c.is_ascii_lowercase() {
                        Ok(c as u32 - 'a' as u32 + 1)
                    } else {
                        Err(parse_err(format!("unexpected character {c:?}")))
                    }
                })
                .collect::<Result<_>>()?
        };
        let size = match sigma {
            Some(s) => s,
            None => symbols.iter().copied().max().unwrap_or(1),
        };
        let alphabet = Alphabet::new(size).map_err(|e| parse_err(e.to_string()))?;
        Word::new(alphabet, symbols)
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word::from_raw(self.alphabet, self.symbols[range].to_vec())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.symbols
            .cmp(&other.symbols)
            .then(self.alphabet.cmp(&other.alphabet))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet.is_lettered() {
            for &s in &self.symbols {
                write!(f, "{}", char::from(b'a' + (s - 1) as u8))?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// 1-based, strictly increasing positions into a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositionSet(Vec<usize>);

impl PositionSet {
    pub fn new(positions: Vec<usize>, word_len: usize) -> Result<Self> {
        let increasing = positions.windows(2).all(|p| p[0] < p[1]);
        let in_range = positions.iter().all(|&i| i >= 1 && i <= word_len);
        if !increasing || !in_range {
            return Err(Error::InvalidArgument(format!(
                "positions {positions:?} are not strictly increasing within 1..={word_len}"
            )));
        }
        Ok(PositionSet(positions))
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    /// The subsequence of `w` read at these positions.
    pub fn apply(&self, w: &Word) -> Word {
        Word::from_raw(
            w.alphabet,
            self.0.iter().map(|&i| w.symbols[i - 1]).collect(),
        )
    }
}

/// Linear-time Lyndon test on a raw symbol slice.
pub(crate) fn is_lyndon_slice(w: &[u32]) -> bool {
    if w.is_empty() {
        return false;
    }
    let mut k = 0;
    for j in 1..w.len() {
        match w[k].cmp(&w[j]) {
            std::cmp::Ordering::Less => k = 0,
            std::cmp::Ordering::Equal => k += 1,
            std::cmp::Ordering::Greater => return false,
        }
    }
    k == 0
}

/// Whether `w` is strictly smaller than each of its non-empty proper
/// suffixes. The empty word is not Lyndon.
pub fn is_lyndon(w: &Word) -> bool {
    is_lyndon_slice(&w.symbols)
}

/// Whether `w` is strictly smaller than every other rotation of itself.
pub fn is_lyndon_by_conjugates(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let s = &w.symbols;
    let n = s.len();
    Ok((1..n).all(|r| {
        let rotated = s[r..].iter().chain(&s[..r]);
        s.iter().lt(rotated)
    }))
}

/// Chen-Fox-Lyndon factorization by Duval's algorithm.
pub fn duval_factorization(w: &Word) -> Result<Vec<Word>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let s = &w.symbols;
    let n = s.len();
    let mut factors = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        let period = j - k;
        while i <= k {
            factors.push(w.slice(i..i + period));
            i += period;
        }
    }
    Ok(factors)
}

/// Number of position sets at which `x` occurs as a subsequence of `w`.
pub fn occ_count(w: &Word, x: &Word) -> Result<Natural> {
    if x.is_empty() {
        return Err(Error::EmptyWord);
    }
    let m = x.len();
    if m > w.len() {
        return Ok(Natural::zero());
    }
    // ways[j] = embeddings of x[..j] into the prefix of w read so far.
    let mut ways = vec![Natural::zero(); m + 1];
    ways[0] = Natural::from(1u32);
    for &c in &w.symbols {
        for j in (1..=m).rev() {
            if x.symbols[j - 1] == c {
                let prev = ways[j - 1].clone();
                ways[j] += prev;
            }
        }
    }
    Ok(ways.pop().unwrap_or_default())
}

/// Calls `mark(i, j)` for every factor `w[i..j]` (half-open) that is Lyndon.
///
/// For a fixed start the Lyndon test runs incrementally over the extensions,
/// so all factors are classified in O(n^2).
fn for_each_lyndon_factor(w: &[u32], mut mark: impl FnMut(usize, usize)) {
    for i in 0..w.len() {
        mark(i, i + 1);
        let mut k = i;
        for j in i + 1..w.len() {
            match w[k].cmp(&w[j]) {
                std::cmp::Ordering::Less => {
                    k = i;
                    mark(i, j + 1);
                }
                std::cmp::Ordering::Equal => k += 1,
                // No extension of a non-prefix of a Lyndon word is Lyndon.
                std::cmp::Ordering::Greater => break,
            }
        }
    }
}

pub(crate) fn factor_total(w: &[u32]) -> u64 {
    let mut count = 0;
    for_each_lyndon_factor(w, |_, _| count += 1);
    count
}

pub(crate) fn factor_distinct(w: &[u32]) -> u64 {
    let mut seen: HashSet<&[u32]> = HashSet::new();
    for_each_lyndon_factor(w, |i, j| {
        seen.insert(&w[i..j]);
    });
    seen.len() as u64
}

/// Number of pairs `(i, j)` with `w[i..j]` Lyndon.
pub fn count_lyndon_factor_occurrences(w: &Word) -> Natural {
    Natural::from(factor_total(&w.symbols))
}

/// Number of distinct Lyndon factors of `w`.
pub fn count_distinct_lyndon_factors(w: &Word) -> Natural {
    Natural::from(factor_distinct(&w.symbols))
}

pub(crate) fn check_subset_budget(len: usize, max_subsets: u64) -> Result<()> {
    let fits = len < 64 && (1u64 << len) <= max_subsets;
    if !fits {
        return Err(Error::BudgetExceeded {
            what: "subset enumeration",
            needed: format!("2^{len}"),
            cap: max_subsets.to_string(),
        });
    }
    Ok(())
}

/// Depth-first walk over every non-empty position set of `w`, calling
/// `visit` with each Lyndon subsequence.
///
/// The Lyndon state of a subsequence is carried down the walk: appending a
/// symbol updates it in O(1). A subsequence that is not a prefix of any
/// Lyndon word has no Lyndon extension, so its subtree is skipped.
fn for_each_lyndon_subsequence(w: &[u32], mut visit: impl FnMut(&[u32])) {
    fn walk(w: &[u32], start: usize, buf: &mut Vec<u32>, k: usize, visit: &mut impl FnMut(&[u32])) {
        for pos in start..w.len() {
            let c = w[pos];
            let next_k = if buf.is_empty() {
                Some(0)
            } else {
                match buf[k].cmp(&c) {
                    std::cmp::Ordering::Less => Some(0),
                    std::cmp::Ordering::Equal => Some(k + 1),
                    std::cmp::Ordering::Greater => None,
                }
            };
            let Some(next_k) = next_k else { continue };
            buf.push(c);
            if next_k == 0 {
                visit(buf);
            }
            walk(w, pos + 1, buf, next_k, visit);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(w.len());
    walk(w, 0, &mut buf, 0, &mut visit);
}

pub(crate) fn subsequence_total(w: &[u32]) -> u64 {
    let mut count = 0;
    for_each_lyndon_subsequence(w, |_| count += 1);
    count
}

pub(crate) fn subsequence_distinct(w: &[u32]) -> u64 {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for_each_lyndon_subsequence(w, |s| {
        if !seen.contains(s) {
            seen.insert(s.to_vec());
        }
    });
    seen.len() as u64
}

/// Number of non-empty position sets of `w` whose subsequence is Lyndon.
/// Exponential in `|w|`; refuses when `2^|w|` exceeds `max_subsets`.
pub fn count_lyndon_subsequence_occurrences(w: &Word, max_subsets: u64) -> Result<Natural> {
    check_subset_budget(w.len(), max_subsets)?;
    Ok(Natural::from(subsequence_total(&w.symbols)))
}

/// Number of distinct Lyndon words occurring as subsequences of `w`.
pub fn count_distinct_lyndon_subsequences(w: &Word, max_subsets: u64) -> Result<Natural> {
    check_subset_budget(w.len(), max_subsets)?;
    Ok(Natural::from(subsequence_distinct(&w.symbols)))
}
