use crate::wordcore::WordWindow;

use super::GenError;

/// Eventually periodic directive sequence driving iterated palindromic closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectiveSpec {
    alphabet_size: usize,
    preperiod: Vec<u8>,
    period: Vec<u8>,
}

impl DirectiveSpec {
    /// Every letter of the alphabet must occur in the period.
    pub fn new(alphabet_size: usize, preperiod: Vec<u8>, period: Vec<u8>) -> Result<Self, GenError> {
        if alphabet_size < 2 {
            return Err(GenError::InvalidSpec("alphabet needs at least 2 letters".into()));
        }
        if period.is_empty() {
            return Err(GenError::InvalidSpec("directive period is empty".into()));
        }
        if let Some(&l) = preperiod.iter().chain(&period).find(|&&l| l as usize >= alphabet_size) {
            return Err(GenError::InvalidSpec(format!("directive letter {l} outside alphabet")));
        }
        if let Some(missing) = (0..alphabet_size as u8).find(|l| !period.contains(l)) {
            return Err(GenError::InvalidSpec(format!("letter {missing} never occurs in the directive period")));
        }
        Ok(DirectiveSpec { alphabet_size, preperiod, period })
    }

    /// Tribonacci-type directive `(0 1 ... r-1)^omega`.
    pub fn cyclic(alphabet_size: usize) -> Result<Self, GenError> {
        Self::new(alphabet_size, Vec::new(), (0..alphabet_size as u8).collect())
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn letter(&self, i: usize) -> u8 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }
}

/// Length of the longest palindromic suffix of `w`, via the prefix function
/// of `reverse(w) # w`.
fn longest_palindromic_suffix(w: &[u8]) -> usize {
    const SEP: u16 = u16::MAX;
    let s: Vec<u16> =
        w.iter().rev().map(|&c| c as u16).chain(std::iter::once(SEP)).chain(w.iter().map(|&c| c as u16)).collect();
    let mut pi = vec![0usize; s.len()];
    for i in 1..s.len() {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi.last().copied().unwrap_or(0)
}

/// Shortest palindrome having `w` as a prefix.
pub fn palindromic_closure(w: &[u8]) -> Vec<u8> {
    let p = longest_palindromic_suffix(w);
    let mut out = w.to_vec();
    out.extend(w[..w.len() - p].iter().rev());
    out
}

/// Standard Arnoux-Rauzy word: `w_{k+1} = (w_k d_k)^+`, truncated to `length`.
pub fn arnoux_rauzy_word(spec: &DirectiveSpec, length: usize) -> Result<WordWindow, GenError> {
    if length == 0 {
        return Err(GenError::InvalidSpec("length must be at least 1".into()));
    }
    let mut w: Vec<u8> = Vec::new();
    let mut i = 0;
    while w.len() < length {
        w.push(spec.letter(i));
        w = palindromic_closure(&w);
        i += 1;
    }
    w.truncate(length);
    Ok(WordWindow::new(w, spec.alphabet_size, 0, "arnoux_rauzy")?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iterate(images: &[&[u8]], len: usize) -> Vec<u8> {
        let mut w = vec![0u8];
        while w.len() < len {
            w = w.iter().flat_map(|&c| images[c as usize].iter().copied()).collect();
        }
        w.truncate(len);
        w
    }

    #[test]
    fn closure_examples() {
        assert_eq!(palindromic_closure(&[0, 1]), vec![0, 1, 0]);
        assert_eq!(palindromic_closure(&[0, 1, 0, 2]), vec![0, 1, 0, 2, 0, 1, 0]);
        assert_eq!(palindromic_closure(&[]), Vec::<u8>::new());
        assert_eq!(palindromic_closure(&[1, 1]), vec![1, 1]);
    }

    #[test]
    fn tribonacci_prefix() {
        let spec = DirectiveSpec::cyclic(3).unwrap();
        let w = arnoux_rauzy_word(&spec, 5000).unwrap();
        let trib = iterate(&[&[0, 1], &[0, 2], &[0]], 5000);
        assert_eq!(w.letters(), trib.as_slice());
        let head: String = w.letters()[..19].iter().map(|d| char::from(b'0' + d)).collect();
        assert_eq!(head, "0102010010201010201");
    }

    #[test]
    fn binary_directive_is_fibonacci() {
        let spec = DirectiveSpec::cyclic(2).unwrap();
        let w = arnoux_rauzy_word(&spec, 3000).unwrap();
        assert_eq!(w.letters(), iterate(&[&[0, 1], &[0]], 3000).as_slice());
    }

    #[test]
    fn directive_validation() {
        assert!(DirectiveSpec::new(3, vec![], vec![0, 1]).is_err());
        assert!(DirectiveSpec::new(3, vec![], vec![]).is_err());
        assert!(DirectiveSpec::new(2, vec![5], vec![0, 1]).is_err());
        assert!(DirectiveSpec::new(1, vec![], vec![0]).is_err());
        let d = DirectiveSpec::new(2, vec![1, 1], vec![0, 1]).unwrap();
        assert_eq!((0..6).map(|i| d.letter(i)).collect::<Vec<_>>(), vec![1, 1, 0, 1, 0, 1]);
    }
}
