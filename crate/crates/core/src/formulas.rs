//! Closed forms for the Lyndon factor and subsequence counting quantities,
//! and the extremal witness strings.
//!
//! Every function accepts any `sigma >= 1`, `n >= 1`. The published results
//! are stated for `sigma < n` (and `n >= sigma` for MDF); outside that
//! regime the formulas are still evaluated and checked by the oracle, and
//! [`Quantity::in_stated_regime`] reports which cells fall outside it.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, pow, ratio, Natural, Rational};
use crate::lyndon_enum::{containment_count, count_lyndon};
use crate::words::{Alphabet, Word};

/// `n = m * sigma + p` with `0 <= p < sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub n: u64,
    pub sigma: u64,
    pub m: u64,
    pub p: u64,
}

impl Decomposition {
    pub fn new(sigma: u32, n: u64) -> Result<Self> {
        check_domain(sigma, n)?;
        let sigma = sigma as u64;
        Ok(Decomposition {
            n,
            sigma,
            m: n / sigma,
            p: n % sigma,
        })
    }
}

/// Block lengths `(k_1, ..., k_sigma)` of the word `a_1^k_1 ... a_sigma^k_sigma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockComposition(Vec<u64>);

impl BlockComposition {
    pub fn new(blocks: Vec<u64>) -> Result<Self> {
        if blocks.is_empty() || blocks.iter().sum::<u64>() == 0 {
            return Err(Error::InvalidArgument(
                "block composition needs at least one block and total length >= 1".into(),
            ));
        }
        Ok(BlockComposition(blocks))
    }

    pub fn blocks(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The block word itself, over an alphabet with one letter per block.
    pub fn to_word(&self) -> Word {
        let alphabet = Alphabet::new(self.0.len() as u32).expect("non-empty composition");
        let symbols = self
            .0
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i as u32 + 1, k as usize))
            .collect();
        Word::from_raw(alphabet, symbols)
    }
}

/// The named counting quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    Mts,
    Mtf,
    Mdf,
    Ts,
    Ets,
    Tds,
    Eds,
    Etf,
    Edf,
    L,
    Contain,
}

impl Quantity {
    pub const ALL: [Quantity; 11] = [
        Quantity::Mts,
        Quantity::Mtf,
        Quantity::Mdf,
        Quantity::Ts,
        Quantity::Ets,
        Quantity::Tds,
        Quantity::Eds,
        Quantity::Etf,
        Quantity::Edf,
        Quantity::L,
        Quantity::Contain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Mts => "MTS",
            Quantity::Mtf => "MTF",
            Quantity::Mdf => "MDF",
            Quantity::Ts => "TS",
            Quantity::Ets => "ETS",
            Quantity::Tds => "TDS",
            Quantity::Eds => "EDS",
            Quantity::Etf => "ETF",
            Quantity::Edf => "EDF",
            Quantity::L => "L",
            Quantity::Contain => "CONTAIN",
        }
    }

    /// Expectations are rationals; everything else is a count.
    pub fn is_expectation(self) -> bool {
        matches!(
            self,
            Quantity::Ets | Quantity::Eds | Quantity::Etf | Quantity::Edf
        )
    }

    pub fn is_maximum(self) -> bool {
        matches!(self, Quantity::Mts | Quantity::Mtf | Quantity::Mdf)
    }

    /// Whether `(sigma, n)` lies in the parameter range the closed form was
    /// published for.
    pub fn in_stated_regime(self, sigma: u32, n: u64) -> bool {
        let sigma = sigma as u64;
        match self {
            Quantity::Mts
            | Quantity::Mtf
            | Quantity::Ts
            | Quantity::Ets
            | Quantity::Tds
            | Quantity::Eds => sigma < n,
            Quantity::Mdf => n >= sigma,
            Quantity::Etf | Quantity::Edf | Quantity::L | Quantity::Contain => true,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownQuantity(s.to_string()))
    }
}

/// An exact count or expectation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactValue {
    Integer(Natural),
    Fraction(Rational),
}

impl ExactValue {
    pub fn as_rational(&self) -> Rational {
        match self {
            ExactValue::Integer(v) => ratio(v.clone(), Natural::one()),
            ExactValue::Fraction(q) => q.clone(),
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Integer(v) => write!(f, "{v}"),
            ExactValue::Fraction(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Formula,
    Oracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Formula => "formula",
            Provenance::Oracle => "oracle",
        })
    }
}

/// A computed quantity with its parameters and where the value came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub quantity: Quantity,
    pub sigma: u32,
    pub n: u64,
    pub value: ExactValue,
    pub provenance: Provenance,
}

fn check_domain(sigma: u32, n: u64) -> Result<()> {
    if sigma == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "need sigma >= 1 and n >= 1, got sigma = {sigma}, n = {n}"
        )));
    }
    Ok(())
}

fn int(v: Natural) -> BigInt {
    BigInt::from_biguint(Sign::Plus, v)
}

fn to_natural(v: BigInt) -> Natural {
    v.to_biguint()
        .expect("closed form evaluated to a negative count")
}

fn c2(x: u64) -> BigInt {
    int(binomial(x, 2))
}

/// Maximum total number of Lyndon subsequences:
/// `2^n - (p + sigma) 2^m + n + sigma - 1`.
pub fn mts(sigma: u32, n: u64) -> Result<Natural> {
    let d = Decomposition::new(sigma, n)?;
    let v = int(pow(2, n)) - BigInt::from(d.p + d.sigma) * int(pow(2, d.m))
        + BigInt::from(n + d.sigma)
        - 1;
    Ok(to_natural(v))
}

/// Canonical maximizer: `sigma - p` blocks of length `m` followed by `p`
/// blocks of length `m + 1`.
pub fn mts_witness(sigma: u32, n: u64) -> Result<Word> {
    let d = Decomposition::new(sigma, n)?;
    let blocks = (0..d.sigma)
        .map(|i| if i < d.sigma - d.p { d.m } else { d.m + 1 })
        .collect();
    let word = BlockComposition::new(blocks)?.to_word();
    Ok(word)
}

/// Number of words attaining [`mts`]: `C(sigma, p)`.
pub fn mts_maximizer_count(sigma: u32, n: u64) -> Result<Natural> {
    let d = Decomposition::new(sigma, n)?;
    Ok(binomial(d.sigma, d.p as i64))
}

fn mtf_tail(d: &Decomposition) -> BigInt {
    BigInt::from(d.sigma - d.p) * c2(d.m + 1) + BigInt::from(d.p) * c2(d.m + 2)
}

/// Maximum total number of Lyndon factors:
/// `C(n+1, 2) - (sigma - p) C(m+1, 2) - p C(m+2, 2) + n`.
pub fn mtf(sigma: u32, n: u64) -> Result<Natural> {
    let d = Decomposition::new(sigma, n)?;
    Ok(to_natural(c2(n + 1) - mtf_tail(&d) + BigInt::from(n)))
}

/// The variant with a `C(n, 2)` leading term, as printed in the corollary
/// statement. Exhaustive search refutes it (it gives 4 at sigma = 2, n = 4,
/// where the true maximum is 8); kept only for the discrepancy report.
pub fn mtf_corollary_statement(sigma: u32, n: u64) -> Result<BigInt> {
    let d = Decomposition::new(sigma, n)?;
    Ok(c2(n) - mtf_tail(&d) + BigInt::from(n))
}

/// Maximum number of distinct Lyndon factors:
/// `C(n+1, 2) - (s - p) C(m+1, 2) - p C(m+2, 2) + s`, where the decomposition
/// is taken over the effective alphabet `s = min(sigma, n)`. A word of length
/// `n` uses at most `n` letters, so larger alphabets add nothing.
pub fn mdf(sigma: u32, n: u64) -> Result<Natural> {
    check_domain(sigma, n)?;
    let effective = (sigma as u64).min(n) as u32;
    let d = Decomposition::new(effective, n)?;
    Ok(to_natural(c2(n + 1) - mtf_tail(&d) + BigInt::from(d.sigma)))
}

/// Total Lyndon subsequence occurrences over all of `Sigma^n`:
/// `sum_{m=1}^{n} L(sigma, m) C(n, m) sigma^(n-m)`.
pub fn ts(sigma: u32, n: u64) -> Result<Natural> {
    check_domain(sigma, n)?;
    let mut total = Natural::zero();
    for m in 1..=n {
        total += count_lyndon(sigma, m)? * binomial(n, m as i64) * pow(sigma as u64, n - m);
    }
    Ok(total)
}

/// `TS(sigma, n) / sigma^n`.
pub fn ets(sigma: u32, n: u64) -> Result<Rational> {
    Ok(ratio(ts(sigma, n)?, pow(sigma as u64, n)))
}

/// Total distinct Lyndon subsequences over all of `Sigma^n`:
/// `sum_{m=1}^{n} L(sigma, m) * C(n, Sigma, m)`, where the inner factor is
/// the containment count.
pub fn tds(sigma: u32, n: u64) -> Result<Natural> {
    check_domain(sigma, n)?;
    let mut total = Natural::zero();
    for m in 1..=n {
        total += count_lyndon(sigma, m)? * containment_count(n, sigma, m)?;
    }
    Ok(total)
}

/// `TDS(sigma, n) / sigma^n`.
pub fn eds(sigma: u32, n: u64) -> Result<Rational> {
    Ok(ratio(tds(sigma, n)?, pow(sigma as u64, n)))
}

/// Expected total Lyndon factors:
/// `sum_{m=1}^{n} L(sigma, m) (n - m + 1) / sigma^m`.
pub fn etf(sigma: u32, n: u64) -> Result<Rational> {
    check_domain(sigma, n)?;
    let mut total = Rational::zero();
    for m in 1..=n {
        total += ratio(count_lyndon(sigma, m)? * (n - m + 1), pow(sigma as u64, m));
    }
    Ok(total)
}

/// Expected distinct Lyndon factors:
/// `sum_m L(sigma, m) sum_{s=1}^{n/m} (-1)^(s+1) C(n - s m + s, s) sigma^(-s m)`.
pub fn edf(sigma: u32, n: u64) -> Result<Rational> {
    check_domain(sigma, n)?;
    let mut total = Rational::zero();
    for m in 1..=n {
        let mut inner = Rational::zero();
        for s in 1..=n / m {
            let term = ratio(binomial(n - s * m + s, s as i64), pow(sigma as u64, s * m));
            if s % 2 == 1 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        total += ratio(count_lyndon(sigma, m)?, Natural::one()) * inner;
    }
    Ok(total)
}

/// Lyndon subsequence occurrences of a block word:
/// `2^n - 1 - sum_i 2^k_i + n + sigma`.
pub fn block_total_subsequences(comp: &BlockComposition) -> Natural {
    let n = comp.len();
    let blocks = comp.blocks().len() as u64;
    let powers: Natural = comp.blocks().iter().map(|&k| pow(2, k)).sum();
    to_natural(int(pow(2, n)) - 1 - int(powers) + BigInt::from(n + blocks))
}

/// Lyndon factor occurrences of a block word:
/// `C(n+1, 2) - sum_i C(k_i + 1, 2) + n`.
pub fn block_total_factors(comp: &BlockComposition) -> Natural {
    let n = comp.len();
    let unary: BigInt = comp.blocks().iter().map(|&k| c2(k + 1)).sum();
    to_natural(c2(n + 1) - unary + BigInt::from(n))
}

/// Evaluates a quantity by its closed form. `CONTAIN` evaluates to the
/// aggregate `sum_{m=1}^{n} sigma^m * C(n, Sigma, m)` over every pattern.
pub fn evaluate(quantity: Quantity, sigma: u32, n: u64) -> Result<CountReport> {
    use ExactValue::{Fraction, Integer};
    let value = match quantity {
        Quantity::Mts => Integer(mts(sigma, n)?),
        Quantity::Mtf => Integer(mtf(sigma, n)?),
        Quantity::Mdf => Integer(mdf(sigma, n)?),
        Quantity::Ts => Integer(ts(sigma, n)?),
        Quantity::Ets => Fraction(ets(sigma, n)?),
        Quantity::Tds => Integer(tds(sigma, n)?),
        Quantity::Eds => Fraction(eds(sigma, n)?),
        Quantity::Etf => Fraction(etf(sigma, n)?),
        Quantity::Edf => Fraction(edf(sigma, n)?),
        Quantity::L => Integer(count_lyndon(sigma, n)?),
        Quantity::Contain => Integer(containment_total(sigma, n)?),
    };
    Ok(CountReport {
        quantity,
        sigma,
        n,
        value,
        provenance: Provenance::Formula,
    })
}

pub(crate) fn containment_total(sigma: u32, n: u64) -> Result<Natural> {
    check_domain(sigma, n)?;
    let mut total = Natural::zero();
    for m in 1..=n {
        total += pow(sigma as u64, m) * containment_count(n, sigma, m)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::render_decimal;
    use crate::words::{
        count_lyndon_factor_occurrences, count_lyndon_subsequence_occurrences, DEFAULT_MAX_SUBSETS,
    };

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn q(n: u64, d: u64) -> Rational {
        ratio(nat(n), nat(d))
    }

    #[test]
    fn decomposition() {
        let d = Decomposition::new(3, 11).unwrap();
        assert_eq!((d.m, d.p), (3, 2));
        assert_eq!(d.m * d.sigma + d.p, d.n);
        assert!(Decomposition::new(0, 3).is_err());
        assert!(Decomposition::new(2, 0).is_err());
    }

    #[test]
    fn mts_examples() {
        assert_eq!(mts(2, 5).unwrap(), nat(26));
        assert_eq!(mts(10, 15).unwrap(), nat(32762));
        for n in 1..=20 {
            assert_eq!(mts(1, n).unwrap(), nat(n));
        }
    }

    #[test]
    fn witness_examples() {
        assert_eq!(mts_witness(2, 5).unwrap().to_string(), "aabbb");
        assert_eq!(mts_witness(2, 4).unwrap().to_string(), "aabb");
        assert_eq!(mts_witness(3, 3).unwrap().to_string(), "abc");
        assert_eq!(mts_witness(3, 2).unwrap().to_string(), "bc");
        assert_eq!(mts_witness(2, 5).unwrap().alphabet().size(), 2);
    }

    #[test]
    fn maximizer_count_examples() {
        assert_eq!(mts_maximizer_count(2, 5).unwrap(), nat(2));
        assert_eq!(mts_maximizer_count(2, 4).unwrap(), nat(1));
        assert_eq!(mts_maximizer_count(3, 5).unwrap(), nat(3));
    }

    #[test]
    fn mtf_examples() {
        assert_eq!(mtf(2, 4).unwrap(), nat(8));
        assert_eq!(mtf_corollary_statement(2, 4).unwrap(), BigInt::from(4));
        for n in 1..=12 {
            assert_eq!(mtf(1, n).unwrap(), nat(n));
        }
        // "abc" has six factors, all Lyndon.
        assert_eq!(mtf(3, 3).unwrap(), nat(6));
    }

    #[test]
    fn mdf_examples() {
        assert_eq!(mdf(2, 4).unwrap(), nat(6));
        for n in 1..=12 {
            assert_eq!(mdf(1, n).unwrap(), nat(1));
        }
        // Frozen from exhaustive search over all 64 binary words.
        assert_eq!(mdf(2, 6).unwrap(), nat(11));
        // Short words over large alphabets: all factors of an increasing word.
        assert_eq!(mdf(2, 1).unwrap(), nat(1));
        assert_eq!(mdf(5, 3).unwrap(), nat(6));
    }

    #[test]
    fn ts_tds_examples() {
        assert_eq!(ts(2, 3).unwrap(), nat(32));
        assert_eq!(ts(5, 10).unwrap(), nat(2204719998));
        assert_eq!(ts(2, 1).unwrap(), nat(2));
        assert_eq!(tds(2, 2).unwrap(), nat(7));
        assert_eq!(tds(2, 3).unwrap(), nat(20));
        assert_eq!(tds(2, 5).unwrap(), nat(144));
    }

    #[test]
    fn expectation_examples() {
        assert_eq!(ets(2, 4).unwrap(), q(107, 16));
        assert_eq!(render_decimal(&ets(2, 4).unwrap(), 2).unwrap(), "6.69");
        assert_eq!(ets(2, 3).unwrap(), q(4, 1));
        assert_eq!(render_decimal(&ets(2, 3).unwrap(), 2).unwrap(), "4.00");
        assert_eq!(ets(5, 2).unwrap(), q(12, 5));
        assert_eq!(render_decimal(&ets(5, 2).unwrap(), 2).unwrap(), "2.40");

        assert_eq!(render_decimal(&eds(2, 2).unwrap(), 2).unwrap(), "1.75");
        assert_eq!(render_decimal(&eds(5, 10).unwrap(), 2).unwrap(), "93.08");
        assert_eq!(render_decimal(&eds(2, 20).unwrap(), 2).unwrap(), "559.42");

        // Frozen from exhaustive averages over Sigma^n.
        assert_eq!(etf(2, 1).unwrap(), q(1, 1));
        assert_eq!(etf(2, 2).unwrap(), q(9, 4));
        assert_eq!(etf(2, 3).unwrap(), q(15, 4));
        assert_eq!(edf(2, 1).unwrap(), q(1, 1));
        assert_eq!(edf(2, 2).unwrap(), q(7, 4));
        assert_eq!(edf(2, 3).unwrap(), q(5, 2));
    }

    #[test]
    fn block_examples() {
        let comp = |v: &[u64]| BlockComposition::new(v.to_vec()).unwrap();
        assert_eq!(block_total_subsequences(&comp(&[2, 2])), nat(13));
        assert_eq!(block_total_subsequences(&comp(&[4, 0])), nat(4));
        assert_eq!(block_total_subsequences(&comp(&[1, 3])), nat(11));
        assert_eq!(block_total_factors(&comp(&[2, 2])), nat(8));
        assert_eq!(block_total_factors(&comp(&[7])), nat(7));
        assert_eq!(block_total_factors(&comp(&[1, 1, 1])), nat(6));
        assert_eq!(comp(&[1, 3]).to_word().to_string(), "abbb");
        assert!(BlockComposition::new(vec![]).is_err());
        assert!(BlockComposition::new(vec![0, 0]).is_err());
    }

    #[test]
    fn block_formulas_match_counters() {
        for a in 0..=6u64 {
            for b in 0..=6u64 {
                for c in 0..=4u64 {
                    if a + b + c == 0 {
                        continue;
                    }
                    let comp = BlockComposition::new(vec![a, b, c]).unwrap();
                    let word = comp.to_word();
                    assert_eq!(
                        block_total_subsequences(&comp),
                        count_lyndon_subsequence_occurrences(&word, DEFAULT_MAX_SUBSETS).unwrap()
                    );
                    assert_eq!(
                        block_total_factors(&comp),
                        count_lyndon_factor_occurrences(&word)
                    );
                }
            }
        }
    }

    #[test]
    fn mts_monotonicity() {
        for sigma in 1..=10u32 {
            for n in 1..=15u64 {
                let here = mts(sigma, n).unwrap();
                assert!(here < mts(sigma, n + 1).unwrap());
                assert!(here <= mts(sigma + 1, n).unwrap());
                if sigma as u64 >= n {
                    assert_eq!(here, pow(2, n) - 1u32);
                }
            }
        }
    }

    #[test]
    fn witness_attains_mts() {
        for sigma in 1..=5u32 {
            for n in 1..=20u64 {
                let w = mts_witness(sigma, n).unwrap();
                assert_eq!(w.len() as u64, n);
                assert_eq!(
                    count_lyndon_subsequence_occurrences(&w, DEFAULT_MAX_SUBSETS).unwrap(),
                    mts(sigma, n).unwrap(),
                    "sigma = {sigma}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn quantity_names() {
        for q in Quantity::ALL {
            assert_eq!(q.name().to_lowercase().parse::<Quantity>().unwrap(), q);
        }
        assert_eq!("l".parse::<Quantity>().unwrap(), Quantity::L);
        assert!(matches!(
            "mds".parse::<Quantity>(),
            Err(Error::UnknownQuantity(_))
        ));
    }

    #[test]
    fn evaluate_kinds() {
        for q in Quantity::ALL {
            let r = evaluate(q, 2, 4).unwrap();
            assert_eq!(
                q.is_expectation(),
                matches!(r.value, ExactValue::Fraction(_))
            );
            assert_eq!(r.provenance, Provenance::Formula);
        }
        assert!(evaluate(Quantity::Ts, 0, 4).is_err());
    }
}
