//! Exact arithmetic in real multi-quadratic number fields.
//!
//! Every element carries rational coordinates, so equality and zero tests are
//! exact. Signs of nonzero elements are decided by evaluating rigorous
//! dyadic enclosures ([`Ball`]) at increasing precision.

mod ball;
mod expr;
mod field;

use std::sync::atomic::{AtomicU32, Ordering};

use thiserror::Error;

pub use ball::Ball;
pub use expr::{parse_expr, parse_exprs, parse_in};
pub use field::{field_arith, rational_rank, ArithOp, FieldElement, FieldSpec, MAX_GENERATORS};

pub const START_PRECISION: u32 = 128;
pub const DEFAULT_PRECISION_CAP: u32 = 8192;

static PRECISION_CAP: AtomicU32 = AtomicU32::new(DEFAULT_PRECISION_CAP);

/// Process-wide ceiling on ball precision used by [`FieldElement::sign`].
pub fn precision_cap() -> u32 {
    PRECISION_CAP.load(Ordering::Relaxed)
}

pub fn set_precision_cap(bits: u32) {
    PRECISION_CAP.store(bits.max(1), Ordering::Relaxed);
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealError {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("sign still undecided at {bits} bits of precision")]
    PrecisionExhausted { bits: u32 },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}
