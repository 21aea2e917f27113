use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::FieldElement;

/// Dyadic enclosure `[(center - radius) / 2^scale, (center + radius) / 2^scale]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    center: BigInt,
    radius: BigInt,
    scale: u32,
    precision_bits: u32,
}

type SqrtCache = Mutex<HashMap<(u64, u32), Arc<BigInt>>>;

/// `floor(sqrt(d) * 2^bits)`, memoised per `(d, bits)`.
fn scaled_sqrt(d: u64, bits: u32) -> Arc<BigInt> {
    static CACHE: OnceLock<SqrtCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(d, bits)) {
        return v.clone();
    }
    let v = Arc::new((BigInt::from(d) << (2 * bits as usize)).sqrt());
    cache.lock().unwrap().insert((d, bits), v.clone());
    v
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_ceil(b)
}

impl Ball {
    pub(crate) fn enclose(x: &FieldElement, bits: u32) -> Ball {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (mask, c) in x.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = x.field().basis_radicand(mask);
            let p = c.numer();
            let q = c.denom();
            if d == 1 {
                let v = p << bits as usize;
                lo += v.div_floor(q);
                hi += ceil_div(&v, q);
                continue;
            }
            // sqrt(d) * 2^bits lies in [s, s + 1).
            let s = scaled_sqrt(d, bits);
            let s_hi = s.as_ref() + 1u32;
            let (a, b) = if p.is_negative() { (p * &s_hi, p * s.as_ref()) } else { (p * s.as_ref(), p * &s_hi) };
            lo += a.div_floor(q);
            hi += ceil_div(&b, q);
        }
        Ball { center: &lo + &hi, radius: hi - lo, scale: bits + 1, precision_bits: bits }
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    fn denom(&self) -> BigInt {
        BigInt::one() << self.scale as usize
    }

    pub fn midpoint(&self) -> BigRational {
        BigRational::new(self.center.clone(), self.denom())
    }

    pub fn radius(&self) -> BigRational {
        BigRational::new(self.radius.clone(), self.denom())
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(&self.center - &self.radius, self.denom())
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(&self.center + &self.radius, self.denom())
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lower() <= q && q <= &self.upper()
    }

    /// Sign of every point in the ball, or `None` if the ball straddles zero.
    pub fn strict_sign(&self) -> Option<i8> {
        if self.center > self.radius {
            Some(1)
        } else if -&self.center > self.radius {
            Some(-1)
        } else if self.center.is_zero() && self.radius.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Order of the two enclosed values when the balls are disjoint.
    pub fn try_cmp(&self, other: &Ball) -> Option<Ordering> {
        if self.scale == other.scale {
            if &self.center + &self.radius < &other.center - &other.radius {
                Some(Ordering::Less)
            } else if &self.center - &self.radius > &other.center + &other.radius {
                Some(Ordering::Greater)
            } else {
                None
            }
        } else if self.upper() < other.lower() {
            Some(Ordering::Less)
        } else if self.lower() > other.upper() {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}
