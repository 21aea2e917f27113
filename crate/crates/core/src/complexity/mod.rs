//! Factor complexity `C(n)`, palindromic complexity `P(n)` and the
//! quantities compared by the palindrome bound.

mod eertree;

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::wordcore::{
    closed_under_reversal, collect_factors, is_palindrome_slice, LanguageTable, Letter, WordError, WordWindow,
};

pub use eertree::PalindromicIndex;

/// Largest window accepted by [`naive_oracles`].
pub const ORACLE_LIMIT: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexityError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("window of {len} letters is too large for the quadratic oracle")]
    OracleTooLarge { len: usize },
}

/// Counts per length with a stability flag per length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub values: Vec<usize>,
    pub stable: Vec<bool>,
}

/// `C(n)` for `n = 0..=table.n_max()` with the table's stability flags.
pub fn factor_complexity(table: &LanguageTable) -> Counts {
    let n_max = table.n_max();
    Counts {
        values: (0..=n_max).map(|n| table.count(n).expect("level in range")).collect(),
        stable: (0..=n_max).map(|n| table.is_stable(n)).collect(),
    }
}

/// `P(n)` for `n = 0..=n_max`; stable where the first half of the window
/// already contains the same number of palindromes.
pub fn palindromic_complexity(window: &WordWindow, n_max: usize) -> Result<Counts, ComplexityError> {
    if n_max > window.guard() {
        return Err(WordError::GuardExceeded { requested: n_max, guard: window.guard() }.into());
    }
    let letters = window.letters();
    let values = PalindromicIndex::build(letters).counts(n_max);
    let stable = if window.is_full_word() {
        vec![true; n_max + 1]
    } else {
        let half = PalindromicIndex::build(&letters[..letters.len() / 2]).counts(n_max);
        values.iter().zip(&half).map(|(a, b)| a == b).collect()
    };
    Ok(Counts { values, stable })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub n: usize,
    #[serde(rename = "C")]
    pub c: usize,
    #[serde(rename = "dC")]
    pub dc: i64,
    #[serde(rename = "P")]
    pub p: usize,
    pub psum: usize,
    pub bound: i64,
    pub slack: i64,
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    pub family: String,
    pub window_len: usize,
    pub n_max: usize,
    /// One row per `n = 0..=n_max`.
    pub rows: Vec<ProfileRow>,
    /// `C(n)` beyond `n_max + 1` where the guard allows, for the
    /// `C(n + n/4)` comparison.
    pub c_ext: Counts,
    /// Per level `0..=n_max + 1`; `None` on unstable levels.
    pub reversal_closed: Vec<Option<bool>>,
    /// Some stable `n >= 1` has `C(n) <= n`.
    pub periodic: bool,
}

impl ComplexityProfile {
    pub fn row(&self, n: usize) -> Option<&ProfileRow> {
        self.rows.get(n)
    }

    pub fn stable_rows(&self) -> impl Iterator<Item = &ProfileRow> {
        self.rows.iter().filter(|r| r.stable)
    }

    /// `false` if some stable level has a factor whose mirror image is missing.
    pub fn is_reversal_closed(&self) -> bool {
        self.reversal_closed.iter().all(|r| *r != Some(false))
    }

    /// First stable level that is not closed under reversal.
    pub fn first_non_closed_level(&self) -> Option<usize> {
        self.reversal_closed.iter().position(|r| *r == Some(false))
    }

    /// `C(n)` when known and stable.
    pub fn stable_c(&self, n: usize) -> Option<usize> {
        match (self.c_ext.values.get(n), self.c_ext.stable.get(n)) {
            (Some(&c), Some(true)) => Some(c),
            _ => None,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,C,dC,P,Psum,bound,slack,stable\n");
        for r in &self.rows {
            writeln!(out, "{},{},{},{},{},{},{},{}", r.n, r.c, r.dc, r.p, r.psum, r.bound, r.slack, r.stable).unwrap();
        }
        out
    }
}

/// Highest level computed for `C` when profiling up to `n_max`.
pub fn extended_level(window: &WordWindow, n_max: usize) -> usize {
    (n_max + n_max / 4).max(n_max + 1).min(window.guard()).max(n_max + 1)
}

/// Profile for `n = 0..=n_max`. Needs levels up to `n_max + 1` within the guard.
pub fn build_profile(window: &WordWindow, n_max: usize) -> Result<ComplexityProfile, ComplexityError> {
    let table = collect_factors(window, extended_level(window, n_max))?;
    build_profile_from_table(window, &table, n_max)
}

/// As [`build_profile`], reusing a table collected up to at least `n_max + 1`.
pub fn build_profile_from_table(
    window: &WordWindow,
    table: &LanguageTable,
    n_max: usize,
) -> Result<ComplexityProfile, ComplexityError> {
    let top = n_max + 1;
    if top > table.n_max() {
        return Err(WordError::LevelOutOfRange { n: top, n_max: table.n_max() }.into());
    }
    let c = factor_complexity(table);
    let p = palindromic_complexity(window, top)?;
    let rows = (0..=n_max)
        .map(|n| {
            let dc = c.values[n + 1] as i64 - c.values[n] as i64;
            let psum = p.values[n] + p.values[n + 1];
            let bound = dc + 2;
            ProfileRow {
                n,
                c: c.values[n],
                dc,
                p: p.values[n],
                psum,
                bound,
                slack: bound - psum as i64,
                stable: c.stable[n] && c.stable[n + 1] && p.stable[n] && p.stable[n + 1],
            }
        })
        .collect();
    let reversal_closed = (0..=top)
        .map(|n| if table.is_stable(n) { Some(closed_under_reversal(table, n).expect("stable level")) } else { None })
        .collect();
    let periodic = (1..c.values.len()).any(|n| c.stable[n] && c.values[n] <= n);
    Ok(ComplexityProfile {
        family: window.family_label().to_string(),
        window_len: window.len(),
        n_max,
        rows,
        c_ext: c,
        reversal_closed,
        periodic,
    })
}

/// Class of the factor of length `n` starting at each position, with the
/// number of classes.
fn class_ids(letters: &[Letter], alphabet_size: usize, n: usize) -> (Vec<u32>, usize) {
    let k = alphabet_size.max(1);
    let mut ids = vec![0u32; letters.len() + 1];
    let mut count = 1usize;
    for level in 0..n {
        ids.truncate(letters.len() - level);
        let mut map: HashMap<u64, u32> = HashMap::new();
        for (i, id) in ids.iter_mut().enumerate() {
            let key = *id as u64 * k as u64 + letters[i + level] as u64;
            let next = map.len() as u32;
            *id = *map.entry(key).or_insert(next);
        }
        count = map.len();
    }
    ids.truncate(letters.len() + 1 - n);
    (ids, count)
}

/// Smallest `R` such that every segment of length `R` of the window contains
/// every factor of length `n` occurring in it.
pub fn recurrence_estimate(window: &WordWindow, n: usize) -> Result<usize, ComplexityError> {
    if n > window.guard() {
        return Err(WordError::GuardExceeded { requested: n, guard: window.guard() }.into());
    }
    let len = window.len();
    let (ids, count) = class_ids(window.letters(), window.alphabet_size(), n);
    let mut last: Vec<Option<usize>> = vec![None; count];
    let mut r = 0;
    for (i, &id) in ids.iter().enumerate() {
        r = r.max(match last[id as usize] {
            None => i + n,
            Some(prev) => i - prev + n - 1,
        });
        last[id as usize] = Some(i);
    }
    for p in last.into_iter().flatten() {
        r = r.max(len - p);
    }
    Ok(r)
}

/// `(C(n), P(n))` for `n = 0..=n_max` by direct enumeration of substrings.
pub fn naive_oracles(window: &WordWindow, n_max: usize) -> Result<(Vec<usize>, Vec<usize>), ComplexityError> {
    let w = window.letters();
    if w.len() > ORACLE_LIMIT {
        return Err(ComplexityError::OracleTooLarge { len: w.len() });
    }
    let mut c = Vec::with_capacity(n_max + 1);
    let mut p = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > w.len() {
            c.push(0);
            p.push(0);
            continue;
        }
        let set: HashSet<&[Letter]> = (0..=w.len() - n).map(|i| &w[i..i + n]).collect();
        p.push(set.iter().filter(|f| is_palindrome_slice(f)).count());
        c.push(set.len());
    }
    Ok((c, p))
}
