use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ball::Ball;
use super::{precision_cap, RealError, START_PRECISION};

/// Largest number of adjoined square roots a field may carry.
pub const MAX_GENERATORS: usize = 3;

/// A real multi-quadratic field `Q(sqrt(d1), ..., sqrt(dk))`.
///
/// Radicands are square-free, at least 2 and multiplicatively independent
/// modulo squares, so the `2^k` products of subsets of the square roots form
/// a basis over the rationals. Basis index `mask` stands for the product of
/// `sqrt(d_i)` over the bits `i` set in `mask`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    radicands: [u64; MAX_GENERATORS],
    len: u8,
}

impl FieldSpec {
    /// The field of rationals (no radicands).
    pub fn rationals() -> Self {
        FieldSpec { radicands: [0; MAX_GENERATORS], len: 0 }
    }

    pub fn new(radicands: &[u64]) -> Result<Self, RealError> {
        if radicands.len() > MAX_GENERATORS {
            return Err(RealError::InvalidField(format!(
                "at most {MAX_GENERATORS} radicands are supported, got {}",
                radicands.len()
            )));
        }
        let mut sets = Vec::with_capacity(radicands.len());
        for &d in radicands {
            if d < 2 {
                return Err(RealError::InvalidField(format!("radicand {d} is below 2")));
            }
            if !is_square_free(d) {
                return Err(RealError::InvalidField(format!("radicand {d} is not square-free")));
            }
            sets.push(prime_factors(d));
        }
        // Independence modulo squares: no non-empty subset multiplies to a square.
        for mask in 1usize..(1 << sets.len()) {
            if combine(&sets, mask).is_empty() {
                return Err(RealError::InvalidField(format!(
                    "radicands {radicands:?} are not independent modulo squares"
                )));
            }
        }
        let mut out = [0; MAX_GENERATORS];
        out[..radicands.len()].copy_from_slice(radicands);
        Ok(FieldSpec { radicands: out, len: radicands.len() as u8 })
    }

    /// Smallest field (up to the choice of generators) containing `sqrt(n)`
    /// for every `n` in `values`. Values equal to 1 are ignored.
    pub fn containing(values: &[u64]) -> Result<Self, RealError> {
        let mut gens: Vec<u64> = Vec::new();
        for &n in values {
            if n == 0 {
                return Err(RealError::InvalidField("sqrt(0) is not a field generator".into()));
            }
            if n == 1 {
                continue;
            }
            if !is_square_free(n) {
                return Err(RealError::InvalidField(format!("{n} is not square-free")));
            }
            let sets: Vec<Vec<u64>> = gens.iter().map(|&g| prime_factors(g)).collect();
            let target = prime_factors(n);
            let spanned = (0usize..(1 << sets.len())).any(|m| combine(&sets, m) == target);
            if !spanned {
                gens.push(n);
            }
        }
        FieldSpec::new(&gens)
    }

    /// Smallest field containing both `self` and `other`.
    pub fn join(&self, other: &FieldSpec) -> Result<Self, RealError> {
        let mut all = self.radicands().to_vec();
        all.extend_from_slice(other.radicands());
        FieldSpec::containing(&all)
    }

    pub fn radicands(&self) -> &[u64] {
        &self.radicands[..self.len as usize]
    }

    /// Dimension over the rationals.
    pub fn degree(&self) -> usize {
        1 << self.len
    }

    /// Integer whose square root is basis element `mask`.
    pub fn basis_radicand(&self, mask: usize) -> u64 {
        self.radicands().iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &d)| d).product()
    }

    /// Writes `sqrt(n)` for square-free `n` as `coef * basis[mask]`.
    pub(crate) fn sqrt_in_basis(&self, n: u64) -> Option<(usize, BigRational)> {
        let target = prime_factors(n);
        let sets: Vec<Vec<u64>> = self.radicands().iter().map(|&d| prime_factors(d)).collect();
        let mask = (0usize..self.degree()).find(|&m| combine(&sets, m) == target)?;
        // prod_{i in mask} d_i = n * k^2, so basis[mask] = k * sqrt(n).
        let prod = self.basis_radicand(mask);
        let k = integer_sqrt_exact(prod / n)?;
        Some((mask, BigRational::new(BigInt::one(), BigInt::from(k))))
    }

    /// Writes `sqrt(m)` for any positive `m` as `coef * basis[mask]`.
    fn sqrt_any_in_basis(&self, m: u64) -> Option<(usize, BigRational)> {
        let (free, square_root) = square_free_decomposition(m);
        let (mask, coef) = self.sqrt_in_basis(free)?;
        Some((mask, coef * BigRational::from_integer(BigInt::from(square_root))))
    }

    fn intersection_factor(&self, a: usize, b: usize) -> u64 {
        self.basis_radicand(a & b)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return write!(f, "Q");
        }
        write!(f, "Q(")?;
        for (i, d) in self.radicands().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "sqrt({d})")?;
        }
        write!(f, ")")
    }
}

/// Exact element of a [`FieldSpec`], stored by rational coordinates in the
/// canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldSpec,
    coords: Vec<BigRational>,
}

/// Arithmetic selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement, RealError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl FieldElement {
    pub fn zero(field: FieldSpec) -> Self {
        FieldElement { field, coords: vec![BigRational::zero(); field.degree()] }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: FieldSpec, q: BigRational) -> Self {
        let mut e = Self::zero(field);
        e.coords[0] = q;
        e
    }

    pub fn from_integer(field: FieldSpec, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(field: FieldSpec, p: i64, q: i64) -> Self {
        Self::from_rational(field, BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Square root of a square-free positive integer, expressed in `field`.
    pub fn sqrt(field: FieldSpec, n: u64) -> Result<Self, RealError> {
        if n == 0 || !is_square_free(n) {
            return Err(RealError::InvalidField(format!("sqrt({n}): argument must be square-free and positive")));
        }
        let (mask, coef) =
            field.sqrt_in_basis(n).ok_or_else(|| RealError::InvalidField(format!("sqrt({n}) is not in {field}")))?;
        let mut e = Self::zero(field);
        e.coords[mask] = coef;
        Ok(e)
    }

    pub fn from_coords(field: FieldSpec, coords: Vec<BigRational>) -> Result<Self, RealError> {
        if coords.len() != field.degree() {
            return Err(RealError::InvalidField(format!(
                "expected {} coordinates, got {}",
                field.degree(),
                coords.len()
            )));
        }
        Ok(FieldElement { field, coords })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational value, if every irrational coordinate vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Re-expresses `self` in a field that contains it.
    pub fn embed(&self, target: &FieldSpec) -> Result<Self, RealError> {
        if &self.field == target {
            return Ok(self.clone());
        }
        let mut out = Self::zero(*target);
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (m, coef) =
                target.sqrt_any_in_basis(self.field.basis_radicand(mask)).ok_or(RealError::FieldMismatch)?;
            out.coords[m] += c * coef;
        }
        Ok(out)
    }

    fn check_field(&self, other: &Self) -> Result<(), RealError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(RealError::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RealError> {
        self.check_field(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(FieldElement { field: self.field, coords })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RealError> {
        self.check_field(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(FieldElement { field: self.field, coords })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RealError> {
        self.check_field(other)?;
        let mut coords = vec![BigRational::zero(); self.field.degree()];
        for (a, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = self.field.intersection_factor(a, b);
                coords[a ^ b] += x * y * BigInt::from(k);
            }
        }
        Ok(FieldElement { field: self.field, coords })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, RealError> {
        self.check_field(other)?;
        let inv = other.inverse()?;
        self.checked_mul(&inv)
    }

    /// Multiplicative inverse, obtained by clearing one radical at a time
    /// with the corresponding Galois conjugate.
    pub fn inverse(&self) -> Result<Self, RealError> {
        if self.is_zero() {
            return Err(RealError::DivisionByZero);
        }
        let mut numerator = Self::one(self.field);
        let mut current = self.clone();
        for gen in 0..self.field.radicands().len() {
            let conj = current.conjugate(gen);
            numerator = &numerator * &conj;
            current = &current * &conj;
        }
        let norm = current.as_rational().expect("product of all conjugates is rational").clone();
        Ok(numerator.scale(&norm.recip()))
    }

    /// Galois conjugate flipping the sign of `sqrt(d_gen)`.
    pub fn conjugate(&self, gen: usize) -> Self {
        let coords =
            self.coords.iter().enumerate().map(|(m, c)| if m & (1 << gen) != 0 { -c } else { c.clone() }).collect();
        FieldElement { field: self.field, coords }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldElement { field: self.field, coords: self.coords.iter().map(|c| c * q).collect() }
    }

    /// Rigorous enclosure of the value using `bits` fractional bits for each
    /// square root.
    pub fn ball(&self, bits: u32) -> Ball {
        Ball::enclose(self, bits)
    }

    pub fn sign(&self) -> Result<i8, RealError> {
        self.sign_with_cap(precision_cap())
    }

    /// Exact sign. Zero is decided on coordinates; otherwise balls are
    /// refined from 128 bits, doubling up to `cap`.
    pub fn sign_with_cap(&self, cap: u32) -> Result<i8, RealError> {
        if self.is_zero() {
            return Ok(0);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() { 1 } else { -1 });
        }
        let mut bits = START_PRECISION.min(cap.max(1));
        loop {
            if let Some(s) = self.ball(bits).strict_sign() {
                return Ok(s);
            }
            if bits >= cap {
                return Err(RealError::PrecisionExhausted { bits });
            }
            bits = bits.saturating_mul(2).min(cap);
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering, RealError> {
        Ok(self.checked_sub(other)?.sign()?.cmp(&0))
    }

    /// Largest integer `m` with `m <= self`.
    pub fn floor(&self) -> Result<BigInt, RealError> {
        if let Some(q) = self.as_rational() {
            return Ok(q.floor().to_integer());
        }
        let mut m = self.ball(START_PRECISION).midpoint().floor().to_integer();
        loop {
            let below = self.checked_sub(&Self::from_rational(self.field, BigRational::from_integer(m.clone())))?;
            if below.sign()? < 0 {
                m -= 1;
                continue;
            }
            let above = &below - &Self::one(self.field);
            if above.sign()? >= 0 {
                m += 1;
                continue;
            }
            return Ok(m);
        }
    }

    /// `self - floor(self)`.
    pub fn fract(&self) -> Result<Self, RealError> {
        let m = self.floor()?;
        Ok(self - &Self::from_rational(self.field, BigRational::from_integer(m)))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if wrote {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            } else if negative {
                write!(f, "-")?;
            }
            wrote = true;
            let roots: Vec<String> = self
                .field
                .radicands()
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, d)| format!("sqrt({d})"))
                .collect();
            if roots.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.numer().is_one() {
                    write!(f, "{}*", abs.numer())?;
                }
                write!(f, "{}", roots.join("*"))?;
                if !abs.denom().is_one() {
                    write!(f, "/{}", abs.denom())?;
                }
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics if the operands live in different fields.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("operands must share a field")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field, coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Rank over the rationals of the coordinate vectors of `vectors`.
pub fn rational_rank(vectors: &[FieldElement]) -> Result<usize, RealError> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    if vectors.iter().any(|v| v.field != first.field) {
        return Err(RealError::FieldMismatch);
    }
    let mut rows: Vec<Vec<BigRational>> = vectors.iter().map(|v| v.coords.clone()).collect();
    let cols = first.field.degree();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    Ok(rank)
}

pub(crate) fn is_square_free(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Distinct primes of a square-free number, ascending.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `m = free * root^2` with `free` square-free.
fn square_free_decomposition(mut m: u64) -> (u64, u64) {
    let mut free = 1u64;
    let mut root = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        root *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    (free * m, root)
}

fn integer_sqrt_exact(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|x| x * x == n)
}

/// Symmetric difference of the prime sets selected by `mask`.
fn combine(sets: &[Vec<u64>], mask: usize) -> Vec<u64> {
    let mut acc: Vec<u64> = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        if mask & (1 << i) == 0 {
            continue;
        }
        for &p in s {
            match acc.binary_search(&p) {
                Ok(pos) => {
                    acc.remove(pos);
                }
                Err(pos) => acc.insert(pos, p),
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> FieldSpec {
        FieldSpec::new(&[2]).unwrap()
    }

    fn q23() -> FieldSpec {
        FieldSpec::new(&[2, 3]).unwrap()
    }

    fn int(f: FieldSpec, n: i64) -> FieldElement {
        FieldElement::from_integer(f, n)
    }

    #[test]
    fn telescoping_sum() {
        let f = q2();
        let s2 = FieldElement::sqrt(f, 2).unwrap();
        let a = &s2 - &int(f, 1);
        let b = &int(f, 2) - &s2;
        assert_eq!(field_arith(&a, &b, ArithOp::Add).unwrap(), int(f, 1));
    }

    #[test]
    fn defining_relation() {
        let f = q2();
        let s2 = FieldElement::sqrt(f, 2).unwrap();
        assert_eq!(&s2 * &s2, int(f, 2));
    }

    #[test]
    fn conjugate_product() {
        // (sqrt2 - 1)(sqrt2 + 1) = 2 + sqrt2 - sqrt2 - 1 = 1
        let f = q2();
        let s2 = FieldElement::sqrt(f, 2).unwrap();
        let p = field_arith(&(&s2 - &int(f, 1)), &(&s2 + &int(f, 1)), ArithOp::Mul).unwrap();
        assert_eq!(p, int(f, 1));
    }

    #[test]
    fn division_and_errors() {
        let f = q23();
        let x = &FieldElement::sqrt(f, 2).unwrap() + &FieldElement::sqrt(f, 3).unwrap();
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, int(f, 1));
        assert_eq!(field_arith(&x, &FieldElement::zero(f), ArithOp::Div), Err(RealError::DivisionByZero));
        assert_eq!(field_arith(&x, &int(q2(), 1), ArithOp::Add), Err(RealError::FieldMismatch));
    }

    #[test]
    fn sqrt6_in_product_field() {
        let f = q23();
        let s6 = FieldElement::sqrt(f, 6).unwrap();
        let s2 = FieldElement::sqrt(f, 2).unwrap();
        let s3 = FieldElement::sqrt(f, 3).unwrap();
        assert_eq!(s6, &s2 * &s3);
        assert_eq!(&s6 * &s6, int(f, 6));
    }

    #[test]
    fn field_validation() {
        assert!(FieldSpec::new(&[4]).is_err());
        assert!(FieldSpec::new(&[2, 2]).is_err());
        assert!(FieldSpec::new(&[2, 3, 6]).is_err());
        assert!(FieldSpec::new(&[1]).is_err());
        assert!(FieldSpec::new(&[2, 3, 5, 7]).is_err());
        assert!(FieldSpec::new(&[2, 6]).is_ok());
        assert_eq!(FieldSpec::containing(&[2, 3, 6]).unwrap().radicands(), &[2, 3]);
    }

    #[test]
    fn embedding_with_nonsquarefree_basis_products() {
        // In Q(sqrt2, sqrt6), sqrt2*sqrt6 = 2*sqrt3.
        let small = FieldSpec::new(&[2, 6]).unwrap();
        let x = &FieldElement::sqrt(small, 2).unwrap() * &FieldElement::sqrt(small, 6).unwrap();
        let big = FieldSpec::new(&[2, 3]).unwrap();
        let e = x.embed(&big).unwrap();
        assert_eq!(e, &FieldElement::sqrt(big, 3).unwrap() * &int(big, 2));
        assert_eq!(int(small, 1).embed(&q2()).unwrap(), int(q2(), 1));
        assert!(FieldElement::sqrt(big, 3).unwrap().embed(&q2()).is_err());
    }

    #[test]
    fn signs() {
        let f = q2();
        let s2 = FieldElement::sqrt(f, 2).unwrap();
        assert_eq!(FieldElement::zero(f).sign().unwrap(), 0);
        assert_eq!((&s2 - &int(f, 1)).sign().unwrap(), 1);
        // 2*sqrt2 - 3 < 0 because 8 < 9.
        assert_eq!((&(&s2 * &int(f, 2)) - &int(f, 3)).sign().unwrap(), -1);
    }

    #[test]
    fn sign_precision_cap() {
        // (sqrt2 - 1)^40 ~ 5e-16 needs more than a handful of bits.
        let f = q2();
        let s2 = FieldElement::sqrt(f, 2).unwrap();
        let mut x = int(f, 1);
        for _ in 0..120 {
            x = &x * &(&s2 - &int(f, 1));
        }
        assert_eq!(x.sign_with_cap(8192).unwrap(), 1);
        assert!(matches!(x.sign_with_cap(16), Err(RealError::PrecisionExhausted { .. })));
    }

    #[test]
    fn floors() {
        let f = FieldSpec::new(&[5]).unwrap();
        assert_eq!(FieldElement::from_ratio(f, 7, 2).floor().unwrap(), BigInt::from(3));
        assert_eq!(FieldElement::sqrt(q2(), 2).unwrap().floor().unwrap(), BigInt::from(1));
        let golden_sq = (&int(f, 3) + &FieldElement::sqrt(f, 5).unwrap()).scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(golden_sq.floor().unwrap(), BigInt::from(2));
        assert_eq!((-golden_sq).floor().unwrap(), BigInt::from(-3));
        assert_eq!(int(f, -4).floor().unwrap(), BigInt::from(-4));
    }

    #[test]
    fn ranks() {
        let f = q2();
        let s2 = FieldElement::sqrt(f, 2).unwrap();
        assert_eq!(rational_rank(&[int(f, 1), s2.clone()]).unwrap(), 2);
        assert_eq!(rational_rank(&[s2.clone(), &s2 * &int(f, 2)]).unwrap(), 1);
        let g = q23();
        let r2 = FieldElement::sqrt(g, 2).unwrap();
        let r3 = FieldElement::sqrt(g, 3).unwrap();
        let v = [&r2 - &int(g, 1), &r3 - &r2, &int(g, 2) - &r3];
        assert_eq!(rational_rank(&v).unwrap(), 3);
        assert_eq!(rational_rank(&[int(g, 1), int(f, 1)]), Err(RealError::FieldMismatch));
        assert_eq!(rational_rank(&[]).unwrap(), 0);
    }

    #[test]
    fn display_forms() {
        let g = q23();
        let x = &(&FieldElement::sqrt(g, 6).unwrap() * &int(g, 3)) - &FieldElement::from_ratio(g, 1, 2);
        assert_eq!(x.to_string(), "-1/2 + 3*sqrt(2)*sqrt(3)");
        assert_eq!(FieldElement::zero(g).to_string(), "0");
        let y = FieldElement::sqrt(g, 2).unwrap().scale(&BigRational::new((-1).into(), 4.into()));
        assert_eq!(y.to_string(), "-sqrt(2)/4");
    }
}
