//! Finite words, windows of infinite words, and factor-language tables.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

/// Letters are small integer codes `0..alphabet_size`.
pub type Letter = u8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {letter} outside alphabet of size {alphabet_size}")]
    LetterOutOfRange { letter: usize, alphabet_size: usize },
    #[error("alphabet size must be between 1 and 256, got {0}")]
    InvalidAlphabet(usize),
    #[error("factor length {requested} exceeds window guard {guard}")]
    GuardExceeded { requested: usize, guard: usize },
    #[error("level {n} is not stable in this window")]
    UnstableLevel { n: usize },
    #[error("level {n} was not collected (table holds 0..={n_max})")]
    LevelOutOfRange { n: usize, n_max: usize },
    #[error("word file line {line}: {message}")]
    Format { line: usize, message: String },
}

fn check_letters(letters: &[Letter], alphabet_size: usize) -> Result<(), WordError> {
    if alphabet_size == 0 || alphabet_size > 256 {
        return Err(WordError::InvalidAlphabet(alphabet_size));
    }
    match letters.iter().find(|&&l| l as usize >= alphabet_size) {
        Some(&l) => Err(WordError::LetterOutOfRange { letter: l as usize, alphabet_size }),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteWord {
    letters: Vec<Letter>,
    alphabet_size: usize,
}

impl FiniteWord {
    pub fn new(letters: Vec<Letter>, alphabet_size: usize) -> Result<Self, WordError> {
        check_letters(&letters, alphabet_size)?;
        Ok(FiniteWord { letters, alphabet_size })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn reverse(&self) -> FiniteWord {
        reverse(self)
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(self)
    }
}

pub fn reverse(w: &FiniteWord) -> FiniteWord {
    FiniteWord { letters: w.letters.iter().rev().copied().collect(), alphabet_size: w.alphabet_size }
}

pub fn is_palindrome(w: &FiniteWord) -> bool {
    is_palindrome_slice(&w.letters)
}

pub fn is_palindrome_slice(w: &[Letter]) -> bool {
    w.iter().eq(w.iter().rev())
}

/// A finite window of an infinite word.
///
/// `guard` is the largest factor length analyses trust; it defaults to a
/// quarter of the window length. Windows built with [`WordWindow::full_word`]
/// treat the letters as a complete finite word instead: the guard is waived
/// and every level counts as stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordWindow {
    letters: Arc<[Letter]>,
    alphabet_size: usize,
    origin_index: i64,
    family_label: String,
    guard: usize,
    label_base: u8,
    full_word: bool,
}

impl WordWindow {
    pub fn new(
        letters: Vec<Letter>,
        alphabet_size: usize,
        origin_index: i64,
        family_label: impl Into<String>,
    ) -> Result<Self, WordError> {
        check_letters(&letters, alphabet_size)?;
        let guard = letters.len() / 4;
        Ok(WordWindow {
            letters: letters.into(),
            alphabet_size,
            origin_index,
            family_label: family_label.into(),
            guard,
            label_base: 0,
            full_word: false,
        })
    }

    /// Analyse `letters` as a complete finite word (no guard, no stability test).
    pub fn full_word(letters: Vec<Letter>, alphabet_size: usize) -> Result<Self, WordError> {
        let mut w = WordWindow::new(letters, alphabet_size, 0, "finite")?;
        w.guard = w.letters.len();
        w.full_word = true;
        Ok(w)
    }

    /// Lowers the guard; it can never exceed a quarter of the window.
    pub fn with_guard(mut self, guard: usize) -> Result<Self, WordError> {
        let max = if self.full_word { self.letters.len() } else { self.letters.len() / 4 };
        if guard > max {
            return Err(WordError::GuardExceeded { requested: guard, guard: max });
        }
        self.guard = guard;
        Ok(self)
    }

    /// Offset added to letter codes when they are shown to users
    /// (1 for interval exchange codings over `{1, ..., r}`).
    pub fn with_label_base(mut self, base: u8) -> Self {
        self.label_base = base;
        self
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn origin_index(&self) -> i64 {
        self.origin_index
    }

    pub fn family_label(&self) -> &str {
        &self.family_label
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    pub fn label_base(&self) -> u8 {
        self.label_base
    }

    pub fn is_full_word(&self) -> bool {
        self.full_word
    }

    /// Letter at index `i` of the infinite word, if it lies in the window.
    pub fn at(&self, i: i64) -> Option<Letter> {
        let k = i.checked_sub(self.origin_index)?;
        usize::try_from(k).ok().and_then(|k| self.letters.get(k).copied())
    }

    /// Renders a factor with the user-facing letter labels.
    pub fn render(&self, w: &[Letter]) -> String {
        render_word(w, self.alphabet_size, self.label_base)
    }
}

/// Concatenated digits for alphabets whose labels are single digits,
/// dot-separated labels otherwise.
pub fn render_word(w: &[Letter], alphabet_size: usize, base: u8) -> String {
    if alphabet_size + base as usize <= 10 {
        w.iter().map(|&l| char::from(b'0' + l + base)).collect()
    } else {
        w.iter().map(|&l| (l as usize + base as usize).to_string()).collect::<Vec<_>>().join(".")
    }
}

/// Distinct factors of a window, level by level.
///
/// Each level keeps one occurrence position per distinct factor, sorted by
/// the lexicographic order of the factors.
#[derive(Clone, Debug)]
pub struct LanguageTable {
    letters: Arc<[Letter]>,
    alphabet_size: usize,
    label_base: u8,
    levels: Vec<Vec<u32>>,
    stable: Vec<bool>,
}

const DENSE_LIMIT: usize = 1 << 24;

/// Occurrence positions of the distinct factors of each length `0..=n_max`,
/// in first-occurrence order.
///
/// Classes are refined one letter at a time: the class of the factor of
/// length `n + 1` at `i` is determined by the class of length `n` at `i`
/// and the letter at `i + n`.
pub(crate) fn factor_classes(letters: &[Letter], alphabet_size: usize, n_max: usize) -> Vec<Vec<u32>> {
    let len = letters.len();
    let k = alphabet_size.max(1);
    let mut levels = Vec::with_capacity(n_max + 1);
    levels.push(vec![0]);
    let mut ids: Vec<u32> = vec![0; len];
    let mut count = 1usize;
    let mut dense: Vec<u32> = Vec::new();
    let mut sparse: HashMap<usize, u32> = HashMap::new();
    for n in 0..n_max {
        let m = len.saturating_sub(n);
        ids.truncate(m);
        let use_dense = count * k <= DENSE_LIMIT;
        if use_dense {
            dense.clear();
            dense.resize(count * k, u32::MAX);
        } else {
            sparse.clear();
        }
        let mut reps = Vec::new();
        let mut next = 0u32;
        for (i, id) in ids.iter_mut().enumerate() {
            let key = *id as usize * k + letters[i + n] as usize;
            let slot = if use_dense { &mut dense[key] } else { sparse.entry(key).or_insert(u32::MAX) };
            if *slot == u32::MAX {
                *slot = next;
                reps.push(i as u32);
                next += 1;
            }
            *id = *slot;
        }
        count = next as usize;
        levels.push(reps);
    }
    levels
}

/// Builds the language table of `window` for lengths `0..=n_max`.
///
/// A level is stable when the half-window yields the same number of
/// factors as the full window.
pub fn collect_factors(window: &WordWindow, n_max: usize) -> Result<LanguageTable, WordError> {
    if n_max > window.guard {
        return Err(WordError::GuardExceeded { requested: n_max, guard: window.guard });
    }
    let letters = window.letters();
    let mut levels = factor_classes(letters, window.alphabet_size, n_max);
    for (n, reps) in levels.iter_mut().enumerate() {
        reps.sort_by(|&a, &b| letters[a as usize..a as usize + n].cmp(&letters[b as usize..b as usize + n]));
    }
    let stable = if window.full_word {
        vec![true; n_max + 1]
    } else {
        let half = factor_classes(&letters[..letters.len() / 2], window.alphabet_size, n_max);
        levels.iter().zip(&half).map(|(a, b)| a.len() == b.len()).collect()
    };
    Ok(LanguageTable {
        letters: window.letters.clone(),
        alphabet_size: window.alphabet_size,
        label_base: window.label_base,
        levels,
        stable,
    })
}

impl LanguageTable {
    pub fn n_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn label_base(&self) -> u8 {
        self.label_base
    }

    fn level(&self, n: usize) -> Result<&[u32], WordError> {
        self.levels.get(n).map(Vec::as_slice).ok_or(WordError::LevelOutOfRange { n, n_max: self.n_max() })
    }

    pub fn count(&self, n: usize) -> Result<usize, WordError> {
        Ok(self.level(n)?.len())
    }

    pub fn is_stable(&self, n: usize) -> bool {
        self.stable.get(n).copied().unwrap_or(false)
    }

    /// Distinct factors of length `n` in lexicographic order.
    pub fn factors(&self, n: usize) -> Result<impl Iterator<Item = &[Letter]> + '_, WordError> {
        let reps = self.level(n)?;
        Ok(reps.iter().map(move |&p| &self.letters[p as usize..p as usize + n]))
    }

    /// Position of `w` among the sorted factors of its length.
    pub fn index_of(&self, w: &[Letter]) -> Option<usize> {
        let reps = self.levels.get(w.len())?;
        reps.binary_search_by(|&p| self.letters[p as usize..p as usize + w.len()].cmp(w)).ok()
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.index_of(w).is_some()
    }

    pub fn render(&self, w: &[Letter]) -> String {
        render_word(w, self.alphabet_size, self.label_base)
    }
}

/// Whether every factor of length `n` has its mirror image in the table.
pub fn closed_under_reversal(table: &LanguageTable, n: usize) -> Result<bool, WordError> {
    table.level(n)?;
    if !table.is_stable(n) {
        return Err(WordError::UnstableLevel { n });
    }
    let mut buf = Vec::with_capacity(n);
    for f in table.factors(n)? {
        buf.clear();
        buf.extend(f.iter().rev());
        if !table.contains(&buf) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Serialises a window: a header line
/// `# origin=<int> alphabet=<int> family=<label>` followed by one line of
/// space-separated letter labels.
pub fn write_word_file(window: &WordWindow) -> String {
    let mut out = String::with_capacity(window.len() * 2 + 64);
    writeln!(out, "# origin={} alphabet={} family={}", window.origin_index, window.alphabet_size, window.family_label)
        .unwrap();
    let base = window.label_base as usize;
    for (i, &l) in window.letters.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{}", l as usize + base).unwrap();
    }
    out.push('\n');
    out
}

/// Label base implied by a family label: interval exchange codings use `{1, ..., r}`.
pub fn label_base_for(family: &str) -> u8 {
    if family.starts_with("iet") {
        1
    } else {
        0
    }
}

/// Parses every (header, letters) pair in a word file.
pub fn parse_word_file(text: &str) -> Result<Vec<WordWindow>, WordError> {
    let mut out = Vec::new();
    let mut header: Option<(i64, usize, String)> = None;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let fail = |message: String| WordError::Format { line: lineno, message };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let mut origin = None;
            let mut alphabet = None;
            let mut family = None;
            for kv in rest.split_whitespace() {
                let (k, v) = kv.split_once('=').ok_or_else(|| fail(format!("malformed header field '{kv}'")))?;
                match k {
                    "origin" => origin = Some(v.parse::<i64>().map_err(|e| fail(e.to_string()))?),
                    "alphabet" => alphabet = Some(v.parse::<usize>().map_err(|e| fail(e.to_string()))?),
                    "family" => family = Some(v.to_string()),
                    _ => return Err(fail(format!("unknown header field '{k}'"))),
                }
            }
            header = Some((
                origin.ok_or_else(|| fail("missing origin".into()))?,
                alphabet.ok_or_else(|| fail("missing alphabet".into()))?,
                family.ok_or_else(|| fail("missing family".into()))?,
            ));
            continue;
        }
        let (origin, alphabet, family) = header.take().ok_or_else(|| fail("letters line without a header".into()))?;
        let base = label_base_for(&family) as usize;
        let letters = line
            .split_whitespace()
            .map(|t| {
                let v: usize = t.parse().map_err(|_| fail(format!("bad letter '{t}'")))?;
                if v < base || v - base >= alphabet {
                    return Err(fail(format!("letter {v} outside alphabet")));
                }
                Ok((v - base) as Letter)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let w = WordWindow::new(letters, alphabet, origin, family)
            .map_err(|e| fail(e.to_string()))?
            .with_label_base(base as u8);
        out.push(w);
    }
    if header.is_some() {
        return Err(WordError::Format { line: text.lines().count(), message: "header without letters".into() });
    }
    Ok(out)
}
