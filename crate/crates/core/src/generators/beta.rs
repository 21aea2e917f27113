//! Rényi expansions of 1 and the substitutions of Parry numbers.

use num_traits::ToPrimitive;

use crate::realnum::FieldElement;

use super::substitution::SubstitutionSpec;
use super::GenError;

pub const DEFAULT_RENYI_BUDGET: usize = 64;

/// Rényi expansion of 1 for a Parry number.
///
/// `Simple` holds `t_1 ... t_m` of `t_1 ... t_m 0^omega` with `t_m != 0`;
/// `NonSimple` holds the minimal preperiod `t_1 ... t_m` and period
/// `t_{m+1} ... t_{m+p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaSpec {
    Simple { t: Vec<u32> },
    NonSimple { preperiod: Vec<u32>, period: Vec<u32> },
}

impl BetaSpec {
    pub fn simple(t: Vec<u32>) -> Result<Self, GenError> {
        match (t.first(), t.last()) {
            (Some(&first), Some(&last)) if first >= 1 && last != 0 => Ok(BetaSpec::Simple { t }),
            _ => Err(GenError::InvalidSpec("simple expansion needs t_1 >= 1 and t_m != 0".into())),
        }
    }

    /// Rejects non-minimal notations: a period that is a power of a shorter
    /// block, or a preperiod whose last digit could be rolled into the period.
    pub fn non_simple(preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self, GenError> {
        if preperiod.is_empty() || period.is_empty() {
            return Err(GenError::InvalidSpec("need m >= 1 and p >= 1".into()));
        }
        if preperiod[0] == 0 {
            return Err(GenError::InvalidSpec("t_1 must be at least 1".into()));
        }
        if period.iter().all(|&d| d == 0) {
            return Err(GenError::InvalidSpec("zero period: use the simple form".into()));
        }
        let p = period.len();
        if (1..p).any(|q| p.is_multiple_of(q) && (0..p).all(|i| period[i] == period[i % q])) {
            return Err(GenError::InvalidSpec("period is not minimal".into()));
        }
        if preperiod.last() == period.last() {
            return Err(GenError::InvalidSpec("preperiod is not minimal".into()));
        }
        Ok(BetaSpec::NonSimple { preperiod, period })
    }

    /// `m`: number of preperiodic (or, when simple, all) digits.
    pub fn m(&self) -> usize {
        match self {
            BetaSpec::Simple { t } => t.len(),
            BetaSpec::NonSimple { preperiod, .. } => preperiod.len(),
        }
    }

    /// `p`: period length, 0 for simple expansions.
    pub fn p(&self) -> usize {
        match self {
            BetaSpec::Simple { .. } => 0,
            BetaSpec::NonSimple { period, .. } => period.len(),
        }
    }

    /// `t_1 ... t_{m+p}`.
    pub fn digits(&self) -> Vec<u32> {
        match self {
            BetaSpec::Simple { t } => t.clone(),
            BetaSpec::NonSimple { preperiod, period } => preperiod.iter().chain(period).copied().collect(),
        }
    }
}

/// Greedy expansion `t_1 = floor(beta)`, `t_{i+1} = floor(beta r_i)` with
/// remainders `r_i`, stopping at a zero remainder or at the first exact
/// repetition of a remainder.
pub fn renyi_expansion(beta: &FieldElement, max_terms: usize) -> Result<BetaSpec, GenError> {
    let one = FieldElement::one(*beta.field());
    if beta.cmp_exact(&one)?.is_le() {
        return Err(GenError::InvalidSpec(format!("beta = {beta} must exceed 1")));
    }
    let mut digits: Vec<u32> = Vec::new();
    let mut remainders: Vec<FieldElement> = Vec::new();
    let mut r = one;
    for i in 1..=max_terms {
        let x = beta * &r;
        let t = x.floor()?;
        let digit = t.to_u32().ok_or_else(|| GenError::InvalidSpec(format!("digit {t} too large")))?;
        r = &x - &FieldElement::from_integer(*beta.field(), digit as i64);
        digits.push(digit);
        if r.is_zero() {
            return BetaSpec::simple(digits);
        }
        if let Some(j) = remainders.iter().position(|q| q == &r) {
            // r_i == r_{j+1}: digits after position j+1 repeat with period i - (j+1).
            let m = j + 1;
            debug_assert!(m < i);
            let period = digits.split_off(m);
            return BetaSpec::non_simple(digits, period);
        }
        remainders.push(r.clone());
    }
    Err(GenError::NotParryWithinBudget { terms: max_terms })
}

/// The canonical substitution whose fixed point codes the beta-integers.
pub fn beta_substitution(spec: &BetaSpec) -> SubstitutionSpec {
    let t = spec.digits();
    let size = t.len();
    let mut images = Vec::with_capacity(size);
    for (i, &ti) in t.iter().enumerate() {
        let mut img = vec![0u8; ti as usize];
        if i + 1 < size {
            img.push((i + 1) as u8);
        } else if let BetaSpec::NonSimple { preperiod, .. } = spec {
            img.push(preperiod.len() as u8);
        }
        images.push(img);
    }
    SubstitutionSpec::new(images).expect("letters stay inside the alphabet")
}

/// Language closure under reversal: for simple expansions
/// `t_1 = ... = t_{m-1} >= t_m`, otherwise `m = p = 1`.
pub fn reversal_condition_beta(spec: &BetaSpec) -> bool {
    match spec {
        BetaSpec::Simple { t } => {
            let (last, init) = t.split_last().expect("non-empty");
            init.iter().all(|&d| d == t[0]) && t[0] >= *last
        }
        BetaSpec::NonSimple { preperiod, period } => preperiod.len() == 1 && period.len() == 1,
    }
}
