//! Interval exchange transformations with exact parameters.
//!
//! Letters are 0-based internally (`k` codes the subinterval `I_{k+1}`);
//! permutations are given 1-based as `pi[k-1] = pi(k)`.

use std::cmp::Ordering;

use crate::realnum::{rational_rank, Ball, FieldElement, FieldSpec, START_PRECISION};
use crate::wordcore::WordWindow;

use super::GenError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IetSpec {
    alphas: Vec<FieldElement>,
    pi: Vec<usize>,
    x0: FieldElement,
}

/// Half-open interval `[lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: FieldElement,
    pub hi: FieldElement,
}

impl Interval {
    pub fn new(lo: FieldElement, hi: FieldElement) -> Result<Self, GenError> {
        if lo.cmp_exact(&hi)?.is_ge() {
            return Err(GenError::InvalidSpec(format!("empty interval [{lo}, {hi})")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn contains(&self, x: &FieldElement) -> Result<bool, GenError> {
        Ok(self.lo.cmp_exact(x)?.is_le() && x.cmp_exact(&self.hi)?.is_lt())
    }

    pub fn length(&self) -> FieldElement {
        &self.hi - &self.lo
    }

    /// `None` when the intersection is empty.
    pub fn intersect(&self, other: &Interval) -> Result<Option<Interval>, GenError> {
        let lo = if self.lo.cmp_exact(&other.lo)?.is_ge() { &self.lo } else { &other.lo };
        let hi = if self.hi.cmp_exact(&other.hi)?.is_le() { &self.hi } else { &other.hi };
        if lo.cmp_exact(hi)?.is_ge() {
            Ok(None)
        } else {
            Ok(Some(Interval { lo: lo.clone(), hi: hi.clone() }))
        }
    }

    pub fn translate(&self, by: &FieldElement) -> Interval {
        Interval { lo: &self.lo + by, hi: &self.hi + by }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Condition report for an interval exchange.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IetConditions {
    pub rank: usize,
    /// Lengths are linearly independent over the rationals.
    pub independent: bool,
    /// `pi{1..k} != {1..k}` for every `k < r`.
    pub irreducible: bool,
    /// First `k` violating irreducibility.
    pub reducible_at: Option<usize>,
    /// `pi(k) = r + 1 - k` for all `k`.
    pub reversal: bool,
}

impl IetConditions {
    pub fn all_hold(&self) -> bool {
        self.independent && self.irreducible
    }
}

/// One piecewise translation: breakpoints `starts[0..=r]` and a shift per piece.
#[derive(Clone, Debug)]
pub struct ExchangeMap {
    starts: Vec<FieldElement>,
    start_balls: Vec<Ball>,
    shifts: Vec<FieldElement>,
    /// Piece `k` of this map is sent onto piece `image_piece[k]` of the other map.
    image_piece: Vec<usize>,
}

impl ExchangeMap {
    fn build(lengths: &[FieldElement], shifts: Vec<FieldElement>, image_piece: Vec<usize>) -> Self {
        let field = *lengths[0].field();
        let mut starts = Vec::with_capacity(lengths.len() + 1);
        let mut acc = FieldElement::zero(field);
        starts.push(acc.clone());
        for a in lengths {
            acc = &acc + a;
            starts.push(acc.clone());
        }
        let start_balls = starts.iter().map(|s| s.ball(START_PRECISION)).collect();
        ExchangeMap { starts, start_balls, shifts, image_piece }
    }

    pub fn pieces(&self) -> usize {
        self.shifts.len()
    }

    pub fn piece(&self, k: usize) -> Interval {
        Interval { lo: self.starts[k].clone(), hi: self.starts[k + 1].clone() }
    }

    pub fn shift(&self, k: usize) -> &FieldElement {
        &self.shifts[k]
    }

    fn cmp_start(&self, x: &FieldElement, xb: &Ball, k: usize) -> Result<Ordering, GenError> {
        match xb.try_cmp(&self.start_balls[k]) {
            Some(o) => Ok(o),
            None => Ok(x.cmp_exact(&self.starts[k])?),
        }
    }

    /// Index of the piece containing `x`.
    pub fn locate(&self, x: &FieldElement) -> Result<usize, GenError> {
        let xb = x.ball(START_PRECISION);
        let r = self.pieces();
        if self.cmp_start(x, &xb, 0)?.is_lt() || self.cmp_start(x, &xb, r)?.is_ge() {
            return Err(GenError::OutOfDomain(x.to_string()));
        }
        let mut k = 0;
        while k + 1 < r && self.cmp_start(x, &xb, k + 1)?.is_ge() {
            k += 1;
        }
        Ok(k)
    }

    pub fn apply(&self, x: &FieldElement) -> Result<(usize, FieldElement), GenError> {
        let k = self.locate(x)?;
        Ok((k, x + &self.shifts[k]))
    }
}

impl IetSpec {
    /// `alphas` must be positive and sum to exactly 1; `pi` is a permutation
    /// of `1..=r` written as `[pi(1), ..., pi(r)]`; `0 <= x0 < 1`.
    pub fn new(alphas: Vec<FieldElement>, pi: Vec<usize>, x0: FieldElement) -> Result<Self, GenError> {
        let r = alphas.len();
        if r < 2 {
            return Err(GenError::InvalidSpec("need at least two intervals".into()));
        }
        if pi.len() != r {
            return Err(GenError::InvalidSpec(format!("permutation has {} entries, expected {r}", pi.len())));
        }
        let mut seen = vec![false; r];
        for &p in &pi {
            if p == 0 || p > r || seen[p - 1] {
                return Err(GenError::InvalidSpec(format!("{pi:?} is not a permutation of 1..={r}")));
            }
            seen[p - 1] = true;
        }
        let mut field = *x0.field();
        for a in &alphas {
            field = field.join(a.field())?;
        }
        let alphas = alphas.iter().map(|a| a.embed(&field)).collect::<Result<Vec<_>, _>>()?;
        let x0 = x0.embed(&field)?;
        for a in &alphas {
            if a.sign()? <= 0 {
                return Err(GenError::InvalidSpec(format!("length {a} is not positive")));
            }
        }
        let total = alphas.iter().fold(FieldElement::zero(field), |s, a| &s + a);
        if total != FieldElement::one(field) {
            return Err(GenError::InvalidSpec(format!("lengths sum to {total}, not 1")));
        }
        if x0.sign()? < 0 || x0.cmp_exact(&FieldElement::one(field))?.is_ge() {
            return Err(GenError::InvalidSpec(format!("x0 = {x0} outside [0, 1)")));
        }
        Ok(IetSpec { alphas, pi, x0 })
    }

    pub fn r(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[FieldElement] {
        &self.alphas
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn x0(&self) -> &FieldElement {
        &self.x0
    }

    pub fn field(&self) -> FieldSpec {
        *self.x0.field()
    }

    pub fn with_x0(&self, x0: FieldElement) -> Result<Self, GenError> {
        IetSpec::new(self.alphas.clone(), self.pi.clone(), x0)
    }

    /// 0-based inverse permutation: `pi_inv()[j] = k` iff `pi(k+1) = j+1`.
    pub fn pi_inv(&self) -> Vec<usize> {
        let mut inv = vec![0; self.r()];
        for (k, &p) in self.pi.iter().enumerate() {
            inv[p - 1] = k;
        }
        inv
    }

    pub fn is_reversal(&self) -> bool {
        let r = self.r();
        self.pi.iter().enumerate().all(|(k, &p)| p == r - k)
    }

    /// `T(x) = x + sum_{j < pi(k)} alpha_{pi^-1(j)} - sum_{j < k} alpha_j` on `I_k`.
    pub fn forward_map(&self) -> ExchangeMap {
        let field = self.field();
        let inv = self.pi_inv();
        let mut image_starts = vec![FieldElement::zero(field); self.r()];
        let mut acc = FieldElement::zero(field);
        for &k in &inv {
            image_starts[k] = acc.clone();
            acc = &acc + &self.alphas[k];
        }
        let mut start = FieldElement::zero(field);
        let mut shifts = Vec::with_capacity(self.r());
        for (k, a) in self.alphas.iter().enumerate() {
            shifts.push(&image_starts[k] - &start);
            start = &start + a;
        }
        let image_piece = self.pi.iter().map(|p| p - 1).collect();
        ExchangeMap::build(&self.alphas, shifts, image_piece)
    }

    /// `T^{-1}` as an exchange of the image partition `T(I_{pi^-1(1)}), T(I_{pi^-1(2)}), ...`.
    pub fn inverse_map(&self) -> ExchangeMap {
        let fwd = self.forward_map();
        let inv = self.pi_inv();
        let lengths: Vec<FieldElement> = inv.iter().map(|&k| self.alphas[k].clone()).collect();
        let shifts = inv.iter().map(|&k| -fwd.shift(k)).collect();
        ExchangeMap::build(&lengths, shifts, inv)
    }
}

pub fn iet_apply(spec: &IetSpec, x: &FieldElement, direction: Direction) -> Result<FieldElement, GenError> {
    let x = x.embed(&spec.field())?;
    let map = match direction {
        Direction::Forward => spec.forward_map(),
        Direction::Inverse => spec.inverse_map(),
    };
    Ok(map.apply(&x)?.1)
}

pub fn check_iet_conditions(spec: &IetSpec) -> Result<IetConditions, GenError> {
    let r = spec.r();
    let rank = rational_rank(&spec.alphas)?;
    let reducible_at = (1..r).find(|&k| {
        let mut img: Vec<usize> = spec.pi[..k].to_vec();
        img.sort_unstable();
        img == (1..=k).collect::<Vec<_>>()
    });
    Ok(IetConditions {
        rank,
        independent: rank == r,
        irreducible: reducible_at.is_none(),
        reducible_at,
        reversal: spec.is_reversal(),
    })
}

/// Coding of the orbit `T^n(x0)` for `n = -half_width ..= half_width`.
/// Refuses parameters that fail rational independence or irreducibility.
pub fn iet_coding(spec: &IetSpec, half_width: usize) -> Result<WordWindow, GenError> {
    let cond = check_iet_conditions(spec)?;
    if !cond.all_hold() {
        return Err(GenError::ConditionsFailed(cond));
    }
    iet_coding_unchecked(spec, half_width)
}

/// [`iet_coding`] without the condition check.
pub fn iet_coding_unchecked(spec: &IetSpec, half_width: usize) -> Result<WordWindow, GenError> {
    let fwd = spec.forward_map();
    let inv = spec.inverse_map();
    let mut letters = vec![0u8; 2 * half_width + 1];
    let mut x = spec.x0.clone();
    for slot in letters[half_width..].iter_mut() {
        let (k, next) = fwd.apply(&x)?;
        *slot = k as u8;
        x = next;
    }
    let mut y = spec.x0.clone();
    for slot in letters[..half_width].iter_mut().rev() {
        let (j, prev) = inv.apply(&y)?;
        // prev lies in the forward piece that T maps onto inverse piece j.
        *slot = inv.image_piece[j] as u8;
        y = prev;
    }
    Ok(WordWindow::new(letters, spec.r(), -(half_width as i64), "iet")?.with_label_base(1))
}

/// `I_w` (forward) or `Ĩ_w` (backward, for `T^{-1}` and its own partition):
/// the points whose orbit of length `|w|` is coded by `w`. Letters are 0-based.
pub fn iet_factor_interval(spec: &IetSpec, w: &[u8], direction: Direction) -> Result<Interval, GenError> {
    let map = match direction {
        Direction::Forward => spec.forward_map(),
        Direction::Inverse => spec.inverse_map(),
    };
    let (&last, init) = w.split_last().ok_or_else(|| GenError::InvalidSpec("empty word".into()))?;
    if let Some(&l) = w.iter().find(|&&l| l as usize >= spec.r()) {
        return Err(GenError::InvalidSpec(format!("letter {l} outside alphabet")));
    }
    let mut acc = map.piece(last as usize);
    for &c in init.iter().rev() {
        let back = acc.translate(&-map.shift(c as usize));
        acc = map.piece(c as usize).intersect(&back)?.ok_or(GenError::NotAFactor)?;
    }
    Ok(acc)
}

/// Centres of palindromes for the reversal permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PalindromeCenters {
    /// The point 1/2; its orbit codes the even palindromes.
    pub even: FieldElement,
    /// Midpoint of each `I_k`; its orbit codes the odd palindromes with centre `k`.
    pub odd: Vec<FieldElement>,
    /// Translation of `I_k`: `sum_{j>k} alpha_j - sum_{j<k} alpha_j`.
    pub shifts: Vec<FieldElement>,
}

pub fn iet_palindrome_centers(spec: &IetSpec) -> Result<PalindromeCenters, GenError> {
    if !spec.is_reversal() {
        return Err(GenError::NotReversalPermutation);
    }
    let field = spec.field();
    let half = FieldElement::from_ratio(field, 1, 2);
    let total =
        |range: &mut dyn Iterator<Item = usize>| range.fold(FieldElement::zero(field), |s, j| &s + &spec.alphas[j]);
    let r = spec.r();
    let mut odd = Vec::with_capacity(r);
    let mut shifts = Vec::with_capacity(r);
    for k in 0..r {
        let before = total(&mut (0..k));
        let after = total(&mut (k + 1..r));
        odd.push(&before + &(&spec.alphas[k] * &half));
        shifts.push(&after - &before);
    }
    Ok(PalindromeCenters { even: half, odd, shifts })
}
