//! Lyndon word enumeration, the necklace count `L(sigma, n)`, and
//! subsequence-containment counts.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, divisors, mobius, pow, Natural};
use crate::words::{Alphabet, Word};

/// Lazy stream of the Lyndon words of one length, in increasing
/// lexicographic order.
///
/// Driven by Duval's successor rule, which walks all Lyndon words of length
/// at most `length`; only those of full length are yielded.
#[derive(Debug, Clone)]
pub struct LyndonWords {
    alphabet: Alphabet,
    length: usize,
    current: Vec<u32>,
    started: bool,
}

impl LyndonWords {
    fn step(&mut self) -> bool {
        let sigma = self.alphabet.size();
        if !self.started {
            self.started = true;
            self.current = vec![1];
            return true;
        }
        if self.current.is_empty() {
            return false;
        }
        let base = self.current.len();
        for i in base..self.length {
            let c = self.current[i % base];
            self.current.push(c);
        }
        while self.current.last() == Some(&sigma) {
            self.current.pop();
        }
        match self.current.last_mut() {
            Some(last) => {
                *last += 1;
                true
            }
            None => false,
        }
    }

    /// Advances to the next Lyndon word and borrows it, without allocating.
    pub fn advance(&mut self) -> Option<&[u32]> {
        if self.length == 0 {
            return None;
        }
        loop {
            if !self.step() {
                return None;
            }
            if self.current.len() == self.length {
                return Some(&self.current);
            }
        }
    }
}

impl Iterator for LyndonWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let alphabet = self.alphabet;
        self.advance().map(|s| Word::from_raw(alphabet, s.to_vec()))
    }
}

/// All Lyndon words of `length` over `sigma` symbols.
pub fn lyndon_words(sigma: u32, length: usize) -> Result<LyndonWords> {
    let alphabet = Alphabet::new(sigma)?;
    if length == 0 {
        return Err(Error::InvalidArgument(
            "Lyndon words have length >= 1".into(),
        ));
    }
    Ok(LyndonWords {
        alphabet,
        length,
        current: Vec::new(),
        started: false,
    })
}

/// `L(sigma, n) = (1/n) * sum_{d | n} mu(n/d) * sigma^d`.
pub fn count_lyndon(sigma: u32, length: u64) -> Result<Natural> {
    Alphabet::new(sigma)?;
    if length == 0 {
        return Err(Error::InvalidArgument(
            "Lyndon words have length >= 1".into(),
        ));
    }
    let mut sum = BigInt::zero();
    for d in divisors(length)? {
        let term = BigInt::from(pow(sigma as u64, d));
        match mobius(length / d)? {
            1 => sum += term,
            -1 => sum -= term,
            _ => {}
        }
    }
    debug_assert!(!sum.is_negative());
    let (q, r) = num_integer::Integer::div_rem(&sum, &BigInt::from(length));
    debug_assert!(r.is_zero());
    Ok(q.to_biguint().expect("necklace sum is non-negative"))
}

/// Number of words of length `n` over `sigma` symbols that contain a fixed
/// pattern of length `m` as a subsequence:
/// `sum_{k=m}^{n} C(n, k) (sigma - 1)^(n - k)`, with `0^0 = 1`.
pub fn containment_count(n: u64, sigma: u32, m: u64) -> Result<Natural> {
    Alphabet::new(sigma)?;
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!(
            "pattern length must satisfy 1 <= m <= n, got m = {m}, n = {n}"
        )));
    }
    Ok((m..=n)
        .map(|k| binomial(n, k as i64) * pow(sigma as u64 - 1, n - k))
        .sum())
}

pub(crate) fn is_subsequence(x: &[u32], w: &[u32]) -> bool {
    let mut need = x.iter().peekable();
    for c in w {
        if need.peek() == Some(&c) {
            need.next();
        }
    }
    need.peek().is_none()
}

/// Exhaustive count of the words of length `n` over `alphabet` containing
/// `x` as a subsequence.
pub fn containment_count_oracle(
    n: usize,
    alphabet: Alphabet,
    x: &Word,
    max_words: u64,
) -> Result<Natural> {
    if x.is_empty() || x.len() > n {
        return Err(Error::InvalidArgument(format!(
            "pattern length must satisfy 1 <= |x| <= n, got |x| = {}, n = {n}",
            x.len()
        )));
    }
    if x.alphabet() != alphabet {
        return Err(Error::InvalidArgument(
            "pattern and words must share an alphabet".into(),
        ));
    }
    let mut count = 0u64;
    let mut words = all_words(alphabet.size(), n, max_words)?;
    while let Some(w) = words.advance() {
        if is_subsequence(x.symbols(), w) {
            count += 1;
        }
    }
    Ok(Natural::from(count))
}

/// `sigma^n` if it is at most `max_words`.
pub(crate) fn word_count_within(sigma: u32, n: usize, max_words: u64) -> Result<u64> {
    let total = pow(sigma as u64, n as u64);
    match u64::try_from(&total) {
        Ok(t) if t <= max_words => Ok(t),
        _ => Err(Error::BudgetExceeded {
            what: "word enumeration",
            needed: format!("{sigma}^{n} = {total}"),
            cap: max_words.to_string(),
        }),
    }
}

/// Every word of a fixed length, in lexicographic order.
#[derive(Debug, Clone)]
pub struct AllWords {
    alphabet: Alphabet,
    current: Vec<u32>,
    started: bool,
    done: bool,
}

impl AllWords {
    /// Advances and borrows the next word without allocating.
    pub fn advance(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        let sigma = self.alphabet.size();
        let mut i = self.current.len();
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.current[i] < sigma {
                self.current[i] += 1;
                return Some(&self.current);
            }
            self.current[i] = 1;
        }
    }
}

impl Iterator for AllWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let alphabet = self.alphabet;
        self.advance().map(|s| Word::from_raw(alphabet, s.to_vec()))
    }
}

/// All `sigma^n` words of length `n`, refusing when that exceeds `max_words`.
pub fn all_words(sigma: u32, n: usize, max_words: u64) -> Result<AllWords> {
    let alphabet = Alphabet::new(sigma)?;
    word_count_within(sigma, n, max_words)?;
    Ok(AllWords {
        alphabet,
        current: vec![1; n],
        started: false,
        done: false,
    })
}

/// Writes the word with lexicographic rank `index` among `sigma^len` words
/// into `out`.
pub(crate) fn unrank_word(sigma: u32, mut index: u64, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = (index % sigma as u64) as u32 + 1;
        index /= sigma as u64;
    }
}
