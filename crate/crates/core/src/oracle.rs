//! Exhaustive verification of the closed forms.
//!
//! Every oracle value is recomputed from scratch by enumerating `Sigma^n`
//! and applying the per-string counters from [`crate::words`]. Work is
//! estimated exactly before anything runs; a request over budget is refused
//! instead of being approximated.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{pow, ratio, Natural};
use crate::formulas::{self, ExactValue, Quantity};
use crate::lyndon_enum::{containment_count, is_subsequence, word_count_within};
use crate::par::{fold_words, Execution};
use crate::words::{self, check_subset_budget, is_lyndon_slice, Alphabet, Word};

/// Compute caps for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Cap on `sigma^n` (or on pattern-word pairs for containment checks).
    pub max_enumerated_words: u64,
    /// Cap on `2^n` position sets per word for subsequence counters.
    pub max_subsets_per_word: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_enumerated_words: 10_000_000,
            max_subsets_per_word: words::DEFAULT_MAX_SUBSETS,
        }
    }
}

impl Budget {
    pub fn new(max_enumerated_words: u64, max_subsets_per_word: u64) -> Result<Self> {
        if max_enumerated_words == 0 || max_subsets_per_word == 0 {
            return Err(Error::InvalidArgument(
                "budget caps must be positive".into(),
            ));
        }
        Ok(Budget {
            max_enumerated_words,
            max_subsets_per_word,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
        })
    }
}

impl Status {
    fn of(equal: bool) -> Self {
        if equal {
            Status::Match
        } else {
            Status::Mismatch
        }
    }
}

/// Enumeration effort of one oracle computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WorkDone {
    pub words_enumerated: u64,
    /// `2^n` when per-word subset enumeration is involved.
    pub subsets_per_word: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationResult {
    pub quantity: Quantity,
    pub sigma: u32,
    pub n: u64,
    pub formula_value: ExactValue,
    pub oracle_value: ExactValue,
    pub status: Status,
    pub work: WorkDone,
    pub counterexample: Option<Word>,
}

impl fmt::Display for VerificationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<7} sigma={:<2} n={:<2} formula={} oracle={} {} (words={}",
            self.quantity,
            self.sigma,
            self.n,
            self.formula_value,
            self.oracle_value,
            self.status,
            self.work.words_enumerated
        )?;
        if let Some(s) = self.work.subsets_per_word {
            write!(f, ", subsets/word={s}")?;
        }
        f.write_str(")")?;
        if let Some(w) = &self.counterexample {
            write!(f, " counterexample={w}")?;
        }
        Ok(())
    }
}

/// Which per-string count a census maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusKind {
    SubsequenceTotal,
    FactorTotal,
    FactorDistinct,
}

impl CensusKind {
    fn counter(self) -> fn(&[u32]) -> u64 {
        match self {
            CensusKind::SubsequenceTotal => words::subsequence_total,
            CensusKind::FactorTotal => words::factor_total,
            CensusKind::FactorDistinct => words::factor_distinct,
        }
    }

    fn uses_subsets(self) -> bool {
        self == CensusKind::SubsequenceTotal
    }
}

impl std::str::FromStr for CensusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subsequence-total" => Ok(CensusKind::SubsequenceTotal),
            "factor-total" => Ok(CensusKind::FactorTotal),
            "factor-distinct" => Ok(CensusKind::FactorDistinct),
            other => Err(Error::InvalidArgument(format!(
                "unknown census kind {other:?}"
            ))),
        }
    }
}

/// Exhaustive maximum of a per-string count and the words attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxCensus {
    pub kind: CensusKind,
    pub sigma: u32,
    pub n: u64,
    pub max_value: Natural,
    /// Total number of maximizers; may exceed `attaining_words.len()`.
    pub total_count: Natural,
    /// Lexicographically smallest maximizers, capped.
    pub attaining_words: Vec<Word>,
}

/// Result of checking that containment counts do not depend on the pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma1Report {
    pub sigma: u32,
    pub m: u64,
    pub n: u64,
    pub holds: bool,
    /// Shared oracle count, when every pattern agreed.
    pub common_value: Option<Natural>,
    pub formula_value: Natural,
    pub patterns_checked: u64,
}

/// Maximizer-count check for MTS: census total vs `C(sigma, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusCheck {
    pub sigma: u32,
    pub n: u64,
    pub predicted: Natural,
    pub found: Natural,
    pub status: Status,
}

impl fmt::Display for CensusCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MTS-maximizers sigma={:<2} n={:<2} predicted={} found={} {}",
            self.sigma, self.n, self.predicted, self.found, self.status
        )
    }
}

/// Exhaustive MTF maximum set against both printed forms of the formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MtfDiscrepancy {
    pub sigma: u32,
    pub n: u64,
    pub oracle_max: Natural,
    /// `C(n+1, 2) - ...` leading term.
    pub table_form: Natural,
    /// `C(n, 2) - ...` leading term.
    pub corollary_form: BigInt,
}

impl MtfDiscrepancy {
    pub fn table_form_holds(&self) -> bool {
        self.oracle_max == self.table_form
    }

    pub fn corollary_form_holds(&self) -> bool {
        BigInt::from(self.oracle_max.clone()) == self.corollary_form
    }
}

impl fmt::Display for MtfDiscrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "note: MTF({},{}) exhaustive max = {}; C(n+1,2) form gives {} ({}), C(n,2) form gives {} ({})",
            self.sigma,
            self.n,
            self.oracle_max,
            self.table_form,
            if self.table_form_holds() { "confirmed" } else { "refuted" },
            self.corollary_form,
            if self.corollary_form_holds() { "confirmed" } else { "refuted" },
        )
    }
}

/// One `(quantity, sigma, n)` cell of a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub quantity: Quantity,
    pub sigma: u32,
    pub n: u64,
}

/// Everything a verification run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub results: Vec<VerificationResult>,
    pub census: Vec<CensusCheck>,
    pub mtf_note: Option<MtfDiscrepancy>,
}

impl SuiteReport {
    pub fn all_match(&self) -> bool {
        self.results.iter().all(|r| r.status == Status::Match)
            && self.census.iter().all(|c| c.status == Status::Match)
    }

    pub fn matched(&self) -> usize {
        self.results
            .iter()
            .filter(|r| r.status == Status::Match)
            .count()
            + self
                .census
                .iter()
                .filter(|c| c.status == Status::Match)
                .count()
    }

    pub fn total(&self) -> usize {
        self.results.len() + self.census.len()
    }
}

/// Largest `n` verified by default for `quantity` over `sigma` symbols.
pub fn default_n_max(quantity: Quantity, sigma: u32) -> u64 {
    let maxima_like = quantity.is_maximum() || quantity == Quantity::L;
    match (sigma, maxima_like) {
        (2, true) => 10,
        (2, false) => 8,
        (3, true) => 7,
        (3, false) => 5,
        _ => 4,
    }
}

/// The alphabet sizes in the default grid.
pub const DEFAULT_SIGMAS: [u32; 3] = [2, 3, 5];

/// Cells for `quantity` over `sigma`, `n = 1..=n_max`.
pub fn grid(quantity: Quantity, sigma: u32, n_max: u64) -> Vec<Cell> {
    (1..=n_max).map(|n| Cell { quantity, sigma, n }).collect()
}

/// The default verification grid for every quantity.
pub fn default_suite() -> Vec<Cell> {
    Quantity::ALL
        .into_iter()
        .flat_map(|q| {
            DEFAULT_SIGMAS
                .into_iter()
                .flat_map(move |s| grid(q, s, default_n_max(q, s)))
        })
        .collect()
}

#[derive(Clone, Copy)]
struct CensusAcc {
    max: u64,
    count: u64,
}

/// Exhaustive verifier. Holds the budget and the scheduling mode.
#[derive(Debug, Clone, Copy, Default)]
pub struct Oracle {
    pub budget: Budget,
    pub execution: Execution,
    /// How many maximizers a census lists.
    pub witness_cap: usize,
}

impl Oracle {
    pub fn new(budget: Budget, execution: Execution) -> Self {
        Oracle {
            budget,
            execution,
            witness_cap: 64,
        }
    }

    /// Refuses a cell whose work exceeds the budget; otherwise returns the
    /// planned work.
    pub fn plan(&self, quantity: Quantity, sigma: u32, n: u64) -> Result<WorkDone> {
        Alphabet::new(sigma)?;
        if n == 0 {
            return Err(Error::InvalidArgument("n must be >= 1".into()));
        }
        let n_usize =
            usize::try_from(n).map_err(|_| Error::InvalidArgument("n too large".into()))?;
        let cap = self.budget.max_enumerated_words;
        if quantity == Quantity::Contain {
            let patterns: Natural = (1..=n).map(|m| pow(sigma as u64, m)).sum();
            let pairs = patterns * pow(sigma as u64, n);
            return match u64::try_from(&pairs) {
                Ok(p) if p <= cap => Ok(WorkDone {
                    words_enumerated: p,
                    subsets_per_word: None,
                }),
                _ => Err(Error::BudgetExceeded {
                    what: "pattern-word pairs",
                    needed: pairs.to_string(),
                    cap: cap.to_string(),
                }),
            };
        }
        let words_enumerated = word_count_within(sigma, n_usize, cap)?;
        let uses_subsets = matches!(
            quantity,
            Quantity::Mts | Quantity::Ts | Quantity::Ets | Quantity::Tds | Quantity::Eds
        );
        let subsets_per_word = if uses_subsets {
            check_subset_budget(n_usize, self.budget.max_subsets_per_word)?;
            Some(1u64 << n)
        } else {
            None
        };
        Ok(WorkDone {
            words_enumerated,
            subsets_per_word,
        })
    }

    fn sum_over_words(
        &self,
        sigma: u32,
        n: usize,
        total: u64,
        count: fn(&[u32]) -> u64,
    ) -> Natural {
        let sum = fold_words(
            sigma,
            n,
            total,
            self.execution,
            || 0u128,
            |acc, w| acc + count(w) as u128,
            |a, b| a + b,
        );
        Natural::from(sum)
    }

    fn census_raw(
        &self,
        kind: CensusKind,
        sigma: u32,
        n: usize,
        total: u64,
    ) -> (CensusAcc, Vec<Vec<u32>>) {
        let cap = self.witness_cap;
        let counter = kind.counter();
        let (acc, witnesses) = fold_words(
            sigma,
            n,
            total,
            self.execution,
            || (CensusAcc { max: 0, count: 0 }, Vec::new()),
            |(mut acc, mut wit): (CensusAcc, Vec<Vec<u32>>), w| {
                let v = counter(w);
                if v > acc.max {
                    acc = CensusAcc { max: v, count: 0 };
                    wit.clear();
                }
                if v == acc.max {
                    acc.count += 1;
                    if wit.len() < cap {
                        wit.push(w.to_vec());
                    }
                }
                (acc, wit)
            },
            |(a, mut wa), (b, wb)| {
                use std::cmp::Ordering::*;
                match a.max.cmp(&b.max) {
                    Greater => (a, wa),
                    Less => (b, wb),
                    Equal => {
                        // Left chunk precedes right chunk lexicographically.
                        wa.extend(wb);
                        wa.truncate(cap);
                        (
                            CensusAcc {
                                max: a.max,
                                count: a.count + b.count,
                            },
                            wa,
                        )
                    }
                }
            },
        );
        (acc, witnesses)
    }

    /// Exhaustive maximum of a per-string count over `Sigma^n`.
    pub fn max_census(&self, kind: CensusKind, sigma: u32, n: u64) -> Result<MaxCensus> {
        let alphabet = Alphabet::new(sigma)?;
        let n_usize =
            usize::try_from(n).map_err(|_| Error::InvalidArgument("n too large".into()))?;
        let total = word_count_within(sigma, n_usize, self.budget.max_enumerated_words)?;
        if kind.uses_subsets() {
            check_subset_budget(n_usize, self.budget.max_subsets_per_word)?;
        }
        let (acc, witnesses) = self.census_raw(kind, sigma, n_usize, total);
        Ok(MaxCensus {
            kind,
            sigma,
            n,
            max_value: Natural::from(acc.max),
            total_count: Natural::from(acc.count),
            attaining_words: witnesses
                .into_iter()
                .map(|s| Word::from_raw(alphabet, s))
                .collect(),
        })
    }

    /// Recomputes `quantity` at `(sigma, n)` by enumeration and compares it
    /// exactly with the closed form. A mismatch is reported, never raised.
    pub fn verify(&self, quantity: Quantity, sigma: u32, n: u64) -> Result<VerificationResult> {
        let work = self.plan(quantity, sigma, n)?;
        let formula_value = formulas::evaluate(quantity, sigma, n)?.value;
        let alphabet = Alphabet::new(sigma)?;
        let n_usize = n as usize;
        let total = work.words_enumerated;
        let denominator = || pow(sigma as u64, n);
        let mut counterexample = None;

        let oracle_value = match quantity {
            Quantity::Mts | Quantity::Mtf | Quantity::Mdf => {
                let kind = match quantity {
                    Quantity::Mts => CensusKind::SubsequenceTotal,
                    Quantity::Mtf => CensusKind::FactorTotal,
                    _ => CensusKind::FactorDistinct,
                };
                let (acc, witnesses) = self.census_raw(kind, sigma, n_usize, total);
                let max = Natural::from(acc.max);
                if ExactValue::Integer(max.clone()) != formula_value {
                    counterexample = witnesses
                        .into_iter()
                        .next()
                        .map(|s| Word::from_raw(alphabet, s));
                }
                ExactValue::Integer(max)
            }
            Quantity::Ts => ExactValue::Integer(self.sum_over_words(
                sigma,
                n_usize,
                total,
                words::subsequence_total,
            )),
            Quantity::Tds => ExactValue::Integer(self.sum_over_words(
                sigma,
                n_usize,
                total,
                words::subsequence_distinct,
            )),
            Quantity::Ets => ExactValue::Fraction(ratio(
                self.sum_over_words(sigma, n_usize, total, words::subsequence_total),
                denominator(),
            )),
            Quantity::Eds => ExactValue::Fraction(ratio(
                self.sum_over_words(sigma, n_usize, total, words::subsequence_distinct),
                denominator(),
            )),
            Quantity::Etf => ExactValue::Fraction(ratio(
                self.sum_over_words(sigma, n_usize, total, words::factor_total),
                denominator(),
            )),
            Quantity::Edf => ExactValue::Fraction(ratio(
                self.sum_over_words(sigma, n_usize, total, words::factor_distinct),
                denominator(),
            )),
            Quantity::L => ExactValue::Integer(
                self.sum_over_words(sigma, n_usize, total, |w| is_lyndon_slice(w) as u64),
            ),
            Quantity::Contain => {
                let outcome = self.contain_oracle(sigma, n_usize)?;
                match outcome {
                    ContainOutcome::Agree(total) => ExactValue::Integer(total),
                    ContainOutcome::Disagree {
                        pattern,
                        oracle,
                        formula,
                    } => {
                        counterexample = Some(Word::from_raw(alphabet, pattern));
                        return Ok(VerificationResult {
                            quantity,
                            sigma,
                            n,
                            formula_value: ExactValue::Integer(formula),
                            oracle_value: ExactValue::Integer(oracle),
                            status: Status::Mismatch,
                            work,
                            counterexample,
                        });
                    }
                }
            }
        };

        Ok(VerificationResult {
            quantity,
            sigma,
            n,
            status: Status::of(formula_value == oracle_value),
            formula_value,
            oracle_value,
            work,
            counterexample,
        })
    }

    /// Containment counts of every pattern of length `m` over `Sigma^n`,
    /// as `(first disagreeing pattern, sum of counts)` against `expected`.
    fn pattern_counts(
        &self,
        sigma: u32,
        m: usize,
        n: usize,
        expected: u64,
    ) -> (Option<(Vec<u32>, u64)>, u128) {
        let words_total = (sigma as u64).pow(n as u32);
        let patterns_total = (sigma as u64).pow(m as u32);
        fold_words(
            sigma,
            m,
            patterns_total,
            self.execution,
            || (None, 0u128),
            |(first, sum): (Option<(Vec<u32>, u64)>, u128), x| {
                let count = fold_words(
                    sigma,
                    n,
                    words_total,
                    Execution::Sequential,
                    || 0u64,
                    |acc, w| acc + is_subsequence(x, w) as u64,
                    |a, b| a + b,
                );
                let first = first.or_else(|| (count != expected).then(|| (x.to_vec(), count)));
                (first, sum + count as u128)
            },
            |(fa, sa), (fb, sb)| (fa.or(fb), sa + sb),
        )
    }

    fn contain_oracle(&self, sigma: u32, n: usize) -> Result<ContainOutcome> {
        let mut total = Natural::zero();
        for m in 1..=n {
            let formula = containment_count(n as u64, sigma, m as u64)?;
            let expected = u64::try_from(&formula).unwrap_or(u64::MAX);
            let (first, sum) = self.pattern_counts(sigma, m, n, expected);
            if let Some((pattern, oracle)) = first {
                return Ok(ContainOutcome::Disagree {
                    pattern,
                    oracle: Natural::from(oracle),
                    formula,
                });
            }
            total += Natural::from(sum);
        }
        Ok(ContainOutcome::Agree(total))
    }

    /// Checks that every pattern of length `m` is contained in the same
    /// number of words of length `n`, and that this number matches the
    /// closed-form containment count.
    pub fn lemma1_invariance_check(&self, sigma: u32, m: u64, n: u64) -> Result<Lemma1Report> {
        Alphabet::new(sigma)?;
        let formula_value = containment_count(n, sigma, m)?;
        let pairs = pow(sigma as u64, m) * pow(sigma as u64, n);
        let cap = self.budget.max_enumerated_words;
        let patterns_checked = match u64::try_from(&pairs) {
            Ok(p) if p <= cap => (sigma as u64).pow(m as u32),
            _ => {
                return Err(Error::BudgetExceeded {
                    what: "pattern-word pairs",
                    needed: pairs.to_string(),
                    cap: cap.to_string(),
                })
            }
        };
        let n_usize = n as usize;
        let words_total = (sigma as u64).pow(n as u32);
        // Track (min, max) of the per-pattern counts.
        let (lo, hi) = fold_words(
            sigma,
            m as usize,
            patterns_checked,
            self.execution,
            || (u64::MAX, 0u64),
            |(lo, hi), x| {
                let c = fold_words(
                    sigma,
                    n_usize,
                    words_total,
                    Execution::Sequential,
                    || 0u64,
                    |acc, w| acc + is_subsequence(x, w) as u64,
                    |a, b| a + b,
                );
                (lo.min(c), hi.max(c))
            },
            |(l1, h1), (l2, h2)| (l1.min(l2), h1.max(h2)),
        );
        let common_value = (lo == hi).then(|| Natural::from(lo));
        let holds = common_value.as_ref() == Some(&formula_value);
        Ok(Lemma1Report {
            sigma,
            m,
            n,
            holds,
            common_value,
            formula_value,
            patterns_checked,
        })
    }

    /// Census of MTS maximizers against the predicted `C(sigma, p)`.
    pub fn mts_census_check(&self, sigma: u32, n: u64) -> Result<CensusCheck> {
        let census = self.max_census(CensusKind::SubsequenceTotal, sigma, n)?;
        let predicted = formulas::mts_maximizer_count(sigma, n)?;
        Ok(CensusCheck {
            sigma,
            n,
            status: Status::of(predicted == census.total_count),
            predicted,
            found: census.total_count,
        })
    }

    /// Exhaustive MTF maximum against both printed forms of the formula.
    pub fn mtf_discrepancy(&self, sigma: u32, n: u64) -> Result<MtfDiscrepancy> {
        let census = self.max_census(CensusKind::FactorTotal, sigma, n)?;
        Ok(MtfDiscrepancy {
            sigma,
            n,
            oracle_max: census.max_value,
            table_form: formulas::mtf(sigma, n)?,
            corollary_form: formulas::mtf_corollary_statement(sigma, n)?,
        })
    }

    /// Runs a batch of cells. Every cell is budget-checked before any
    /// enumeration starts. MTS cells also get a maximizer census, and a run
    /// that covers MTF at `(2, 4)` carries the MTF discrepancy note.
    pub fn run(&self, cells: &[Cell]) -> Result<SuiteReport> {
        for c in cells {
            self.plan(c.quantity, c.sigma, c.n)?;
        }
        let mut results = Vec::with_capacity(cells.len());
        let mut census = Vec::new();
        for c in cells {
            results.push(self.verify(c.quantity, c.sigma, c.n)?);
            if c.quantity == Quantity::Mts {
                census.push(self.mts_census_check(c.sigma, c.n)?);
            }
        }
        let covers_mtf_2_4 = cells
            .iter()
            .any(|c| c.quantity == Quantity::Mtf && c.sigma == 2 && c.n == 4);
        let mtf_note = if covers_mtf_2_4 {
            Some(self.mtf_discrepancy(2, 4)?)
        } else {
            None
        };
        Ok(SuiteReport {
            results,
            census,
            mtf_note,
        })
    }
}

enum ContainOutcome {
    Agree(Natural),
    Disagree {
        pattern: Vec<u32>,
        oracle: Natural,
        formula: Natural,
    },
}
