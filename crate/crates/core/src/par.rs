//! Map/reduce over every word of `Sigma^n`.
//!
//! The index range `0..sigma^n` is cut into contiguous chunks. Each chunk
//! unranks its first word and then steps an odometer, so workers never
//! allocate per word. Chunk results are combined left to right, which keeps
//! the output identical for any worker count as long as `reduce` is
//! associative.

use crate::lyndon_enum::unrank_word;

/// How oracle enumerations are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon work-stealing over chunks. Runs sequentially when the crate is
    /// built without the `parallel` feature.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

#[cfg(feature = "parallel")]
const MIN_CHUNK: u64 = 256;

fn fold_range<T, F>(sigma: u32, n: usize, start: u64, end: u64, init: T, fold: &F) -> T
where
    F: Fn(T, &[u32]) -> T,
{
    let mut acc = init;
    let mut word = vec![1u32; n];
    unrank_word(sigma, start, &mut word);
    for index in start..end {
        acc = fold(acc, &word);
        if index + 1 < end {
            // odometer step
            let mut i = n;
            while i > 0 {
                i -= 1;
                if word[i] < sigma {
                    word[i] += 1;
                    break;
                }
                word[i] = 1;
            }
        }
    }
    acc
}

/// Folds `fold` over the `total = sigma^n` words in lexicographic order
/// (within a chunk) and combines chunk results with `reduce`.
pub(crate) fn fold_words<T, I, F, R>(
    sigma: u32,
    n: usize,
    total: u64,
    exec: Execution,
    identity: I,
    fold: F,
    reduce: R,
) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, &[u32]) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel if total > MIN_CHUNK => {
            use rayon::prelude::*;
            let workers = rayon::current_num_threads() as u64;
            let chunk = (total / (workers * 8).max(1)).max(MIN_CHUNK);
            let chunks = total.div_ceil(chunk);
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let start = c * chunk;
                    let end = (start + chunk).min(total);
                    fold_range(sigma, n, start, end, identity(), &fold)
                })
                .reduce(&identity, &reduce)
        }
        _ => {
            let _ = &reduce;
            fold_range(sigma, n, 0, total, identity(), &fold)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(sigma: u32, n: usize, exec: Execution) -> Vec<Vec<u32>> {
        let total = (sigma as u64).pow(n as u32);
        fold_words(
            sigma,
            n,
            total,
            exec,
            Vec::new,
            |mut acc, w| {
                acc.push(w.to_vec());
                acc
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        )
    }

    #[test]
    fn both_modes_visit_every_word_in_order() {
        for (sigma, n) in [(2, 0), (2, 1), (3, 4), (2, 11), (5, 5)] {
            let seq = collect(sigma, n, Execution::Sequential);
            let par = collect(sigma, n, Execution::Parallel);
            assert_eq!(seq.len() as u64, (sigma as u64).pow(n as u32));
            assert!(seq.windows(2).all(|p| p[0] < p[1]));
            assert_eq!(seq, par);
        }
    }
}
