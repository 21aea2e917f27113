use crate::realnum::{FieldElement, FieldSpec};
use crate::wordcore::WordWindow;

use super::GenError;

/// Slope and intercept of a mechanical (Sturmian) word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmianSpec {
    alpha: FieldElement,
    rho: FieldElement,
}

impl SturmianSpec {
    /// Requires `0 < alpha < 1` irrational and `0 <= rho < 1`.
    pub fn new(alpha: FieldElement, rho: FieldElement) -> Result<Self, GenError> {
        let field = alpha.field().join(rho.field())?;
        let alpha = alpha.embed(&field)?;
        let rho = rho.embed(&field)?;
        if alpha.as_rational().is_some() {
            return Err(GenError::InvalidSpec(format!("slope {alpha} is rational")));
        }
        let one = FieldElement::one(field);
        if alpha.sign()? <= 0 || alpha.cmp_exact(&one)?.is_ge() {
            return Err(GenError::InvalidSpec(format!("slope {alpha} outside (0, 1)")));
        }
        if rho.sign()? < 0 || rho.cmp_exact(&one)?.is_ge() {
            return Err(GenError::InvalidSpec(format!("intercept {rho} outside [0, 1)")));
        }
        Ok(SturmianSpec { alpha, rho })
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn rho(&self) -> &FieldElement {
        &self.rho
    }

    pub fn field(&self) -> FieldSpec {
        *self.alpha.field()
    }
}

/// Letters `s_n = floor((n+1) alpha + rho) - floor(n alpha + rho)` for
/// `n = 0..length`.
///
/// Tracks the fractional part of `n alpha + rho` exactly, so each letter
/// costs one exact comparison against 1.
pub fn mechanical_word(spec: &SturmianSpec, length: usize) -> Result<WordWindow, GenError> {
    let letters = mechanical_letters(spec, length)?;
    Ok(WordWindow::new(letters, 2, 0, "sturmian")?)
}

fn mechanical_letters(spec: &SturmianSpec, length: usize) -> Result<Vec<u8>, GenError> {
    if length == 0 {
        return Err(GenError::InvalidSpec("length must be at least 1".into()));
    }
    let one = FieldElement::one(spec.field());
    let mut frac = spec.rho.clone();
    let mut out = Vec::with_capacity(length);
    for _ in 0..length {
        let next = &frac + &spec.alpha;
        let over = &next - &one;
        if over.sign()? >= 0 {
            out.push(1);
            frac = over;
        } else {
            out.push(0);
            frac = next;
        }
    }
    Ok(out)
}

/// Complementation-symmetric (Rote) word: running sums mod 2 of the
/// mechanical word of `spec`, starting from 0.
pub fn rote_word(spec: &SturmianSpec, length: usize) -> Result<WordWindow, GenError> {
    let diffs = mechanical_letters(spec, length)?;
    let mut acc = 0u8;
    let letters = diffs
        .iter()
        .map(|&d| {
            let cur = acc;
            acc ^= d;
            cur
        })
        .collect();
    Ok(WordWindow::new(letters, 2, 0, "rote")?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realnum::parse_expr;
    use num_bigint::BigInt;

    fn golden() -> SturmianSpec {
        SturmianSpec::new(parse_expr("(sqrt(5)-1)/2").unwrap(), parse_expr("0").unwrap()).unwrap()
    }

    #[test]
    fn matches_direct_floor_formula() {
        let spec = SturmianSpec::new(parse_expr("sqrt(2)-1").unwrap(), parse_expr("1/3").unwrap()).unwrap();
        let w = mechanical_word(&spec, 200).unwrap();
        let f = spec.field();
        let at =
            |n: i64| -> BigInt { (&(&spec.alpha * &FieldElement::from_integer(f, n)) + &spec.rho).floor().unwrap() };
        for n in 0..200i64 {
            let expect = at(n + 1) - at(n);
            assert_eq!(BigInt::from(w.letters()[n as usize]), expect, "n={n}");
        }
    }

    #[test]
    fn golden_slope_is_swapped_fibonacci_shifted() {
        // Fibonacci word: fixed point of 0 -> 01, 1 -> 0.
        let fib = "0100101001001";
        let w = mechanical_word(&golden(), 14).unwrap();
        let swapped: Vec<u8> = fib.bytes().map(|b| 1 - (b - b'0')).collect();
        assert_eq!(w.letters()[0], 0);
        assert_eq!(&w.letters()[1..], swapped.as_slice());
    }

    #[test]
    fn slope_one_minus_inverse_golden_gives_fibonacci() {
        let spec = SturmianSpec::new(parse_expr("(3-sqrt(5))/2").unwrap(), parse_expr("0").unwrap()).unwrap();
        let w = mechanical_word(&spec, 14).unwrap();
        let expect: Vec<u8> = "00100101001001".bytes().map(|b| b - b'0').collect();
        assert_eq!(w.letters(), expect.as_slice());
    }

    #[test]
    fn letter_frequency_matches_slope() {
        for rho in ["0", "1/2", "sqrt(5)-2"] {
            let spec = SturmianSpec::new(parse_expr("(sqrt(5)-1)/2").unwrap(), parse_expr(rho).unwrap()).unwrap();
            let w = mechanical_word(&spec, 100_000).unwrap();
            let ones = w.letters().iter().filter(|&&l| l == 1).count() as f64;
            let alpha = (5f64.sqrt() - 1.0) / 2.0;
            assert!((ones / 1e5 - alpha).abs() < 1e-3);
        }
    }

    #[test]
    fn rote_is_running_parity() {
        let w = rote_word(&golden(), 10).unwrap();
        let s = mechanical_word(&golden(), 10).unwrap();
        for i in 1..10 {
            assert_eq!(w.letters()[i], w.letters()[i - 1] ^ s.letters()[i - 1]);
        }
        assert_eq!(w.letters()[0], 0);
    }

    #[test]
    fn spec_validation() {
        let bad = [("1/2", "0"), ("sqrt(2)", "0"), ("sqrt(2)-1", "1"), ("sqrt(2)-1", "-1/5")];
        for (a, r) in bad {
            assert!(SturmianSpec::new(parse_expr(a).unwrap(), parse_expr(r).unwrap()).is_err(), "{a} {r}");
        }
        assert!(mechanical_word(&golden(), 0).is_err());
    }
}
