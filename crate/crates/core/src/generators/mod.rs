//! Word families: mechanical and Rote words, Arnoux-Rauzy words, fixed
//! points of substitutions (including beta-substitutions), and codings of
//! interval exchanges.

mod arnoux_rauzy;
mod beta;
mod iet;
mod sturmian;
mod substitution;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::realnum::{parse_exprs, RealError};
use crate::wordcore::{WordError, WordWindow};

pub use arnoux_rauzy::{arnoux_rauzy_word, palindromic_closure, DirectiveSpec};
pub use beta::{beta_substitution, renyi_expansion, reversal_condition_beta, BetaSpec, DEFAULT_RENYI_BUDGET};
pub use iet::{
    check_iet_conditions, iet_apply, iet_coding, iet_coding_unchecked, iet_factor_interval, iet_palindrome_centers,
    Direction, ExchangeMap, IetConditions, IetSpec, Interval, PalindromeCenters,
};
pub use sturmian::{mechanical_word, rote_word, SturmianSpec};
pub use substitution::{substitution_fixed_point, SubstitutionSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error(transparent)]
    Real(#[from] RealError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("no termination or repetition within {terms} terms")]
    NotParryWithinBudget { terms: usize },
    #[error("substitution has no usable fixed point: {0}")]
    NonProlongable(String),
    #[error("point {0} outside [0, 1)")]
    OutOfDomain(String),
    #[error("word is not a factor")]
    NotAFactor,
    #[error("permutation is not the reversal permutation")]
    NotReversalPermutation,
    #[error("interval exchange conditions fail: {0:?}")]
    ConditionsFailed(IetConditions),
}

impl GenError {
    pub fn is_precision(&self) -> bool {
        matches!(self, GenError::Real(RealError::PrecisionExhausted { .. }))
    }
}

fn zero() -> String {
    "0".into()
}

/// JSON description of a word family. Real parameters are expression strings
/// such as `"(sqrt(5)-1)/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    Sturmian {
        alpha: String,
        #[serde(default = "zero")]
        rho: String,
    },
    /// Directive letters are 0-based; the period defaults to `0 1 ... r-1`.
    ArnouxRauzy {
        r: usize,
        #[serde(default)]
        preperiod: Vec<u8>,
        #[serde(default)]
        period: Option<Vec<u8>>,
    },
    Rote {
        alpha: String,
        #[serde(default = "zero")]
        rho: String,
    },
    /// Either `beta` (expanded exactly) or the digits `t`, with `t_period`
    /// holding the repeating block of a non-simple expansion.
    Beta {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        beta: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t: Option<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t_period: Option<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<usize>,
    },
    /// `images[i]` is the image of letter `i`.
    Substitution { images: Vec<Vec<u8>> },
    /// `pi` is 1-based: `[pi(1), ..., pi(r)]`.
    Iet {
        alphas: Vec<String>,
        pi: Vec<usize>,
        #[serde(default = "zero")]
        x0: String,
        /// Generate even when independence or irreducibility fails.
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        allow_degenerate: bool,
    },
}

/// A validated family with exact parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Sturmian(SturmianSpec),
    ArnouxRauzy(DirectiveSpec),
    Rote(SturmianSpec),
    Beta(BetaSpec),
    Substitution(SubstitutionSpec),
    Iet { spec: IetSpec, allow_degenerate: bool },
}

impl FamilySpec {
    pub fn resolve(&self) -> Result<Family, GenError> {
        Ok(match self {
            FamilySpec::Sturmian { alpha, rho } => {
                let v = parse_exprs(&[alpha, rho])?;
                Family::Sturmian(SturmianSpec::new(v[0].clone(), v[1].clone())?)
            }
            FamilySpec::Rote { alpha, rho } => {
                let v = parse_exprs(&[alpha, rho])?;
                Family::Rote(SturmianSpec::new(v[0].clone(), v[1].clone())?)
            }
            FamilySpec::ArnouxRauzy { r, preperiod, period } => {
                let period = period.clone().unwrap_or_else(|| (0..*r as u8).collect());
                Family::ArnouxRauzy(DirectiveSpec::new(*r, preperiod.clone(), period)?)
            }
            FamilySpec::Beta { beta, t, t_period, budget } => {
                let spec = match (beta, t, t_period) {
                    (Some(b), None, None) => {
                        let b = parse_exprs(&[b])?.remove(0);
                        renyi_expansion(&b, budget.unwrap_or(DEFAULT_RENYI_BUDGET))?
                    }
                    (None, Some(t), None) => BetaSpec::simple(t.clone())?,
                    (None, Some(t), Some(p)) => BetaSpec::non_simple(t.clone(), p.clone())?,
                    _ => {
                        return Err(GenError::InvalidSpec(
                            "beta family needs either `beta` or `t` (with optional `t_period`)".into(),
                        ))
                    }
                };
                Family::Beta(spec)
            }
            FamilySpec::Substitution { images } => Family::Substitution(SubstitutionSpec::new(images.clone())?),
            FamilySpec::Iet { alphas, pi, x0, allow_degenerate } => {
                let mut srcs: Vec<&str> = alphas.iter().map(String::as_str).collect();
                srcs.push(x0);
                let mut v = parse_exprs(&srcs)?;
                let x0 = v.pop().expect("x0 present");
                Family::Iet { spec: IetSpec::new(v, pi.clone(), x0)?, allow_degenerate: *allow_degenerate }
            }
        })
    }
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::Sturmian(_) => "sturmian",
            Family::ArnouxRauzy(_) => "arnoux_rauzy",
            Family::Rote(_) => "rote",
            Family::Beta(_) => "beta",
            Family::Substitution(_) => "substitution",
            Family::Iet { .. } => "iet",
        }
    }

    pub fn alphabet_size(&self) -> usize {
        match self {
            Family::Sturmian(_) | Family::Rote(_) => 2,
            Family::ArnouxRauzy(d) => d.alphabet_size(),
            Family::Beta(b) => b.m() + b.p(),
            Family::Substitution(s) => s.alphabet_size(),
            Family::Iet { spec, .. } => spec.r(),
        }
    }

    /// A window of `length` letters; interval exchanges are coded on
    /// indices `-length/2 ..= length/2`.
    pub fn generate(&self, length: usize) -> Result<WordWindow, GenError> {
        match self {
            Family::Sturmian(s) => mechanical_word(s, length),
            Family::Rote(s) => rote_word(s, length),
            Family::ArnouxRauzy(d) => arnoux_rauzy_word(d, length),
            Family::Beta(b) => {
                let sub = beta_substitution(b);
                let w = substitution::fixed_point_letters(&sub, length)?;
                Ok(WordWindow::new(w, sub.alphabet_size(), 0, "beta")?)
            }
            Family::Substitution(s) => substitution_fixed_point(s, length),
            Family::Iet { spec, allow_degenerate } => {
                if *allow_degenerate {
                    iet_coding_unchecked(spec, length / 2)
                } else {
                    iet_coding(spec, length / 2)
                }
            }
        }
    }
}
