//! Exact base-b digit arithmetic.
//!
//! A [`DigitVector`] holds a finite digit string `d_0 .. d_{m-1}` in base `b`.
//! The same string is read two ways: as the b-adic integer `Σ d_j b^j`
//! (truncated to precision `m`) and, through the Monna map, as the point
//! `Σ d_j b^{-j-1}` of `[0,1)`. Both readings share one storage so that the
//! function systems and the point generators never convert through floats.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::Range;

use crate::error::{Error, Result};

/// Default cap on the number of index vectors a single enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// An integer base `b ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Base(u32);

impl Base {
    pub fn new(b: u64) -> Result<Self> {
        if b < 2 || b > u32::MAX as u64 {
            return Err(Error::InvalidBase(b));
        }
        Ok(Base(b as u32))
    }

    #[inline]
    pub const fn get(self) -> u32 {
        self.0
    }

    /// `b^e`, or `None` on `u128` overflow.
    pub fn pow(self, e: u32) -> Option<u128> {
        (self.0 as u128).checked_pow(e)
    }

    /// `b^e` as `u64`, or `None` on overflow.
    pub fn pow_u64(self, e: u32) -> Option<u64> {
        (self.0 as u64).checked_pow(e)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parses a list of raw bases into a validated, non-empty vector.
pub fn base_vector(raw: &[u64]) -> Result<Vec<Base>> {
    if raw.is_empty() {
        return Err(Error::Invalid("base vector must be non-empty"));
    }
    raw.iter().map(|&b| Base::new(b)).collect()
}

/// Base-b digits of `k`, least significant first, without trailing zeros.
pub fn integer_digits(mut k: u128, base: Base) -> Vec<u32> {
    let b = base.get() as u128;
    let mut out = Vec::new();
    while k > 0 {
        out.push((k % b) as u32);
        k /= b;
    }
    out
}

/// `v_b(k)`: zero for `k = 0`, otherwise one more than the position of the
/// most significant non-zero digit.
pub fn vb(k: u64, base: Base) -> u32 {
    let b = base.get() as u64;
    let mut k = k;
    let mut v = 0;
    while k > 0 {
        k /= b;
        v += 1;
    }
    v
}

/// Most significant digit of `k ≥ 1`, i.e. `k_{t-1}` for `b^{t-1} ≤ k < b^t`.
pub fn leading_digit(k: u64, base: Base) -> u32 {
    let b = base.get() as u64;
    let mut k = k;
    while k >= b {
        k /= b;
    }
    k as u32
}

/// Reverses the lowest `len` base-b digits of `k`.
pub fn digit_reverse(k: u64, base: Base, len: u32) -> u128 {
    let b = base.get() as u128;
    let mut k = k as u128;
    let mut out = 0u128;
    for _ in 0..len {
        out = out * b + k % b;
        k /= b;
    }
    out
}

/// Non-negative rational `numerator / denominator`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactFraction {
    numerator: u128,
    denominator: u128,
}

pub(crate) fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if let (Ok(x), Ok(y)) = (u64::try_from(a), u64::try_from(b)) {
        return gcd_u64(x, y) as u128;
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl ExactFraction {
    pub fn new(numerator: u128, denominator: u128) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::Invalid("zero denominator"));
        }
        let g = gcd_u128(numerator, denominator).max(1);
        Ok(ExactFraction {
            numerator: numerator / g,
            denominator: denominator / g,
        })
    }

    pub const ZERO: ExactFraction = ExactFraction {
        numerator: 0,
        denominator: 1,
    };

    pub const ONE: ExactFraction = ExactFraction {
        numerator: 1,
        denominator: 1,
    };

    #[inline]
    pub fn numerator(&self) -> u128 {
        self.numerator
    }

    #[inline]
    pub fn denominator(&self) -> u128 {
        self.denominator
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl PartialOrd for ExactFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        match (
            self.numerator.checked_mul(other.denominator),
            other.numerator.checked_mul(self.denominator),
        ) {
            (Some(l), Some(r)) => l.cmp(&r),
            // Fall back to continued-fraction style comparison.
            _ => cmp_fractions(
                self.numerator,
                self.denominator,
                other.numerator,
                other.denominator,
            ),
        }
    }
}

fn cmp_fractions(mut a: u128, mut b: u128, mut c: u128, mut d: u128) -> Ordering {
    let mut flip = false;
    loop {
        let (qa, qc) = (a / b, c / d);
        if qa != qc {
            let ord = qa.cmp(&qc);
            return if flip { ord.reverse() } else { ord };
        }
        let (ra, rc) = (a % b, c % d);
        match (ra == 0, rc == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => {
                return if flip {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (false, true) => {
                return if flip {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            _ => {}
        }
        // a/b = q + ra/b; compare b/ra against d/rc with reversed order.
        a = b;
        b = ra;
        c = d;
        d = rc;
        flip = !flip;
    }
}

impl fmt::Display for ExactFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == 1 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

/// A finite base-b digit string `d_0 .. d_{m-1}`.
///
/// Equality and hashing ignore trailing zero digits, so `(1)` and `(1,0,0)`
/// compare equal in base 2; the stored precision only matters for the
/// modular additions.
#[derive(Debug, Clone)]
pub struct DigitVector {
    base: Base,
    digits: Vec<u32>,
}

impl DigitVector {
    pub fn new(base: Base, digits: Vec<u32>) -> Result<Self> {
        if let Some(&digit) = digits.iter().find(|&&d| d >= base.get()) {
            return Err(Error::InvalidDigit {
                digit,
                base: base.get(),
            });
        }
        Ok(DigitVector { base, digits })
    }

    pub fn zero(base: Base) -> Self {
        DigitVector {
            base,
            digits: Vec::new(),
        }
    }

    /// Digits of the non-negative integer `n`, least significant first.
    pub fn from_integer(n: u64, base: Base) -> Self {
        DigitVector {
            base,
            digits: integer_digits(n as u128, base),
        }
    }

    #[inline]
    pub fn base(&self) -> Base {
        self.base
    }

    #[inline]
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    #[inline]
    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    /// Digit `j`, zero beyond the stored precision.
    #[inline]
    pub fn digit(&self, j: usize) -> u32 {
        self.digits.get(j).copied().unwrap_or(0)
    }

    fn significant(&self) -> &[u32] {
        let end = self
            .digits
            .iter()
            .rposition(|&d| d != 0)
            .map_or(0, |p| p + 1);
        &self.digits[..end]
    }

    pub fn is_zero(&self) -> bool {
        self.significant().is_empty()
    }

    /// Copy without trailing zeros.
    pub fn trimmed(&self) -> Self {
        DigitVector {
            base: self.base,
            digits: self.significant().to_vec(),
        }
    }

    /// Pads with zeros or truncates to exactly `m` digits.
    pub fn with_precision(&self, m: usize) -> Self {
        let mut digits = self.digits.clone();
        digits.resize(m, 0);
        DigitVector {
            base: self.base,
            digits,
        }
    }

    /// The integer `Σ_{j<len} d_j b^j`, i.e. the b-adic integer reduced mod `b^len`.
    pub fn integer_prefix(&self, len: u32) -> Option<u128> {
        let b = self.base.get() as u128;
        let mut acc = 0u128;
        for j in (0..len as usize).rev() {
            acc = acc.checked_mul(b)?.checked_add(self.digit(j) as u128)?;
        }
        Some(acc)
    }

    /// `floor(x · b^len)` for the point `x` this vector represents, i.e. the
    /// first `len` digits read most-significant-first.
    pub fn leading_value(&self, len: u32) -> Option<u128> {
        let b = self.base.get() as u128;
        let mut acc = 0u128;
        for j in 0..len as usize {
            acc = acc.checked_mul(b)?.checked_add(self.digit(j) as u128)?;
        }
        Some(acc)
    }

    /// Value comparison of the represented points (same base required).
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.base, other.base);
        let len = self.digits.len().max(other.digits.len());
        for j in 0..len {
            match self.digit(j).cmp(&other.digit(j)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// The point value as a double, accumulated from the least significant digit.
    pub fn to_f64(&self) -> f64 {
        let b = self.base.get() as f64;
        self.significant()
            .iter()
            .rev()
            .fold(0.0, |acc, &d| (acc + d as f64) / b)
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch {
                left: self.base.get(),
                right: other.base.get(),
            });
        }
        Ok(())
    }
}

impl PartialEq for DigitVector {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.significant() == other.significant()
    }
}

impl Eq for DigitVector {}

impl Hash for DigitVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.base.hash(state);
        self.significant().hash(state);
    }
}

/// The Monna map: `Σ d_j b^{-j-1}` as an exact fraction.
///
/// Fails with [`Error::Overflow`] when `b^m` of the trimmed vector does not
/// fit in 128 bits.
pub fn monna(z: &DigitVector) -> Result<ExactFraction> {
    let sig = z.significant();
    let den = z.base.pow(sig.len() as u32).ok_or(Error::Overflow)?;
    let num = z.leading_value(sig.len() as u32).ok_or(Error::Overflow)?;
    ExactFraction::new(num, den)
}

/// Terminating digit expansion of a b-adic rational `x ∈ [0,1)`.
pub fn monna_pseudoinverse(x: ExactFraction, base: Base) -> Result<DigitVector> {
    let not_representable = Error::NotRepresentable {
        numerator: x.numerator(),
        denominator: x.denominator(),
        base: base.get(),
    };
    if x.numerator() >= x.denominator() {
        return Err(not_representable);
    }
    // The reduced denominator must divide a power of b.
    let b = base.get() as u128;
    let mut rest = x.denominator();
    loop {
        let g = gcd_u128(rest, b);
        if g == 1 {
            break;
        }
        rest /= g;
    }
    if rest != 1 {
        return Err(not_representable);
    }
    let mut num = x.numerator();
    let den = x.denominator();
    let mut digits = Vec::new();
    while num != 0 {
        // num < den, so num * b < den * b; avoid overflow via wide split.
        let (digit, rem) = mul_divmod(num, b, den).ok_or(Error::Overflow)?;
        digits.push(digit as u32);
        num = rem;
    }
    DigitVector::new(base, digits)
}

/// `(a*b / d, a*b % d)` for `a < d`, `b` small; `None` on overflow.
fn mul_divmod(a: u128, b: u128, d: u128) -> Option<(u128, u128)> {
    if let Some(p) = a.checked_mul(b) {
        return Some((p / d, p % d));
    }
    // Long multiplication by repeated addition of a modulo d.
    let mut q = 0u128;
    let mut r = 0u128;
    for _ in 0..b {
        let room = d - r;
        if a >= room {
            r = a - room;
            q += 1;
        } else {
            r += a;
        }
    }
    Some((q, r))
}

/// Radical inverse of `n`: the Monna map of its base-b digits.
pub fn radical_inverse(n: u64, base: Base) -> ExactFraction {
    // At most 64 digits; b^64 overflows only for large bases, which cannot
    // happen with n < 2^64 because the digit count shrinks as b grows.
    monna(&DigitVector::from_integer(n, base)).expect("radical inverse of a u64 fits in u128")
}

/// Addition with carry modulo `b^m`, `m` the larger input precision.
pub fn add_with_carry(u: &DigitVector, v: &DigitVector) -> Result<DigitVector> {
    add_with_carry_at(u, v, u.precision().max(v.precision()))
}

/// Addition with carry, truncated to precision `m`.
pub fn add_with_carry_at(u: &DigitVector, v: &DigitVector, m: usize) -> Result<DigitVector> {
    u.check_base(v)?;
    let b = u.base.get() as u64;
    let mut carry = 0u64;
    let digits = (0..m)
        .map(|j| {
            let s = u.digit(j) as u64 + v.digit(j) as u64 + carry;
            carry = s / b;
            (s % b) as u32
        })
        .collect();
    Ok(DigitVector {
        base: u.base,
        digits,
    })
}

/// Digitwise addition modulo `b`, no carry.
pub fn add_without_carry(u: &DigitVector, v: &DigitVector) -> Result<DigitVector> {
    u.check_base(v)?;
    let b = u.base.get() as u64;
    let m = u.precision().max(v.precision());
    let digits = (0..m)
        .map(|j| ((u.digit(j) as u64 + v.digit(j) as u64) % b) as u32)
        .collect();
    Ok(DigitVector {
        base: u.base,
        digits,
    })
}

/// The index box `Δ_b(g) = {k : 0 ≤ k_i < b_i^{g_i}}`, or `Δ*_b(g)` without
/// the zero vector.
///
/// Elements are ordered mixed-radix lexicographically with coordinate 1
/// slowest. The set is never materialised: [`Delta::get`] maps a rank to its
/// index vector, so disjoint rank ranges can be walked independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Delta {
    radices: Vec<u64>,
    star: bool,
    len: u64,
}

impl Delta {
    pub fn new(bases: &[Base], g: &[u32], star: bool, budget: u64) -> Result<Self> {
        if bases.len() != g.len() {
            return Err(Error::DimensionMismatch {
                expected: bases.len(),
                got: g.len(),
            });
        }
        let mut total: u128 = 1;
        let mut radices = Vec::with_capacity(bases.len());
        for (&b, &gi) in bases.iter().zip(g) {
            let r = b.pow(gi).unwrap_or(u128::MAX);
            total = total.saturating_mul(r);
            radices.push(r);
        }
        if total > budget as u128 {
            return Err(Error::BudgetExceeded {
                requested: total,
                budget,
            });
        }
        let len = total as u64 - star as u64;
        Ok(Delta {
            radices: radices.into_iter().map(|r| r as u64).collect(),
            star,
            len,
        })
    }

    /// Per-coordinate radices `b_i^{g_i}`.
    pub fn radices(&self) -> &[u64] {
        &self.radices
    }

    pub fn dim(&self) -> usize {
        self.radices.len()
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_star(&self) -> bool {
        self.star
    }

    /// Whether `k` lies in the box (ignoring the star exclusion).
    pub fn contains_box(&self, k: &[u64]) -> bool {
        k.len() == self.radices.len() && k.iter().zip(&self.radices).all(|(&ki, &r)| ki < r)
    }

    /// Writes the element of the given rank into `out`.
    pub fn get_into(&self, rank: u64, out: &mut [u64]) {
        debug_assert!(rank < self.len);
        let mut r = rank + self.star as u64;
        for (slot, &radix) in out.iter_mut().zip(&self.radices).rev() {
            *slot = r % radix;
            r /= radix;
        }
    }

    pub fn get(&self, rank: u64) -> Vec<u64> {
        let mut out = alloc::vec![0; self.radices.len()];
        self.get_into(rank, &mut out);
        out
    }

    pub fn iter(&self) -> DeltaIter {
        self.iter_range(0..self.len)
    }

    /// Iterates the ranks in `range`, in order.
    pub fn iter_range(&self, range: Range<u64>) -> DeltaIter {
        let end = range.end.min(self.len);
        let start = range.start.min(end);
        let mut current = alloc::vec![0; self.radices.len()];
        if start < end {
            self.get_into(start, &mut current);
        }
        DeltaIter {
            radices: self.radices.clone(),
            current,
            remaining: end - start,
        }
    }
}

/// Streaming iterator over a [`Delta`]; advances by mixed-radix increment.
#[derive(Debug, Clone)]
pub struct DeltaIter {
    radices: Vec<u64>,
    current: Vec<u64>,
    remaining: u64,
}

impl Iterator for DeltaIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.current.clone();
        for (slot, &radix) in self.current.iter_mut().zip(&self.radices).rev() {
            *slot += 1;
            if *slot < radix {
                break;
            }
            *slot = 0;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for DeltaIter {}

/// Validated `Δ_b(g)` (or `Δ*_b(g)` when `star`) as an ordered stream.
pub fn enumerate_delta(bases: &[Base], g: &[u32], star: bool, budget: u64) -> Result<DeltaIter> {
    Ok(Delta::new(bases, g, star, budget)?.iter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn b(x: u64) -> Base {
        Base::new(x).unwrap()
    }

    fn dv(base: u64, digits: &[u32]) -> DigitVector {
        DigitVector::new(b(base), digits.to_vec()).unwrap()
    }

    fn frac(n: u128, d: u128) -> ExactFraction {
        ExactFraction::new(n, d).unwrap()
    }

    #[test]
    fn base_rejects_small() {
        assert_eq!(Base::new(1), Err(Error::InvalidBase(1)));
        assert_eq!(Base::new(0), Err(Error::InvalidBase(0)));
        assert!(Base::new(2).is_ok());
    }

    #[test]
    fn digit_vector_rejects_large_digit() {
        assert!(DigitVector::new(b(3), vec![0, 3]).is_err());
    }

    #[test]
    fn monna_examples() {
        assert_eq!(monna(&dv(2, &[1])).unwrap(), frac(1, 2));
        assert_eq!(monna(&dv(2, &[1, 1])).unwrap(), frac(3, 4));
        assert_eq!(monna(&dv(3, &[2, 1])).unwrap(), frac(7, 9));
        assert_eq!(monna(&dv(7, &[])).unwrap(), ExactFraction::ZERO);
    }

    #[test]
    fn pseudoinverse_examples() {
        assert_eq!(
            monna_pseudoinverse(frac(3, 4), b(2)).unwrap(),
            dv(2, &[1, 1])
        );
        assert_eq!(
            monna_pseudoinverse(ExactFraction::ZERO, b(5))
                .unwrap()
                .precision(),
            0
        );
        let z = monna_pseudoinverse(frac(2, 9), b(3)).unwrap();
        assert_eq!(z.digits(), &[0, 2]);
        // 1/2 is a base-10 rational: 0.5
        assert_eq!(
            monna_pseudoinverse(frac(1, 2), b(10)).unwrap().digits(),
            &[5]
        );
    }

    #[test]
    fn pseudoinverse_rejects() {
        assert!(monna_pseudoinverse(frac(1, 3), b(2)).is_err());
        assert!(monna_pseudoinverse(ExactFraction::ONE, b(2)).is_err());
        assert!(monna_pseudoinverse(frac(5, 4), b(2)).is_err());
    }

    #[test]
    fn vb_examples() {
        assert_eq!(vb(0, b(2)), 0);
        assert_eq!(vb(5, b(2)), 3);
        assert_eq!(vb(9, b(3)), 3);
        assert_eq!(vb(8, b(3)), 2);
        assert_eq!(vb(u64::MAX, b(2)), 64);
    }

    #[test]
    fn radical_inverse_examples() {
        assert_eq!(radical_inverse(0, b(2)), ExactFraction::ZERO);
        assert_eq!(radical_inverse(5, b(2)), frac(5, 8));
        assert_eq!(radical_inverse(5, b(3)), frac(7, 9));
        // large base, large n
        let _ = radical_inverse(u64::MAX, b(u32::MAX as u64));
    }

    #[test]
    fn add_with_carry_examples() {
        let r = add_with_carry(&dv(2, &[1, 0]), &dv(2, &[1])).unwrap();
        assert_eq!(r.digits(), &[0, 1]);
        let r = add_with_carry(&dv(10, &[9, 9]), &dv(10, &[1, 0])).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.precision(), 2);
        let r = add_with_carry(&dv(3, &[2, 0]), &dv(3, &[2, 0])).unwrap();
        assert_eq!(r.digits(), &[1, 1]);
        let r = add_with_carry_at(&dv(2, &[1]), &dv(2, &[1]), 2).unwrap();
        assert_eq!(r.digits(), &[0, 1]);
    }

    #[test]
    fn add_without_carry_examples() {
        let r = add_without_carry(&dv(2, &[1, 1]), &dv(2, &[1, 0])).unwrap();
        assert_eq!(r.digits(), &[0, 1]);
        let r = add_without_carry(&dv(3, &[2, 2]), &dv(3, &[2, 2])).unwrap();
        assert_eq!(r.digits(), &[1, 1]);
        let u = dv(5, &[3, 1, 4]);
        assert_eq!(add_without_carry(&u, &dv(5, &[0, 0, 0])).unwrap(), u);
    }

    #[test]
    fn additions_reject_base_mismatch() {
        assert!(add_with_carry(&dv(2, &[1]), &dv(3, &[1])).is_err());
        assert!(add_without_carry(&dv(2, &[1]), &dv(3, &[1])).is_err());
    }

    #[test]
    fn equality_ignores_trailing_zeros() {
        assert_eq!(dv(2, &[1]), dv(2, &[1, 0, 0]));
        assert_ne!(dv(2, &[1]), dv(3, &[1]));
        assert_ne!(dv(2, &[0, 1]), dv(2, &[1]));
    }

    #[test]
    fn delta_examples() {
        let d: Vec<_> = enumerate_delta(&[b(2)], &[2], false, DEFAULT_BUDGET)
            .unwrap()
            .collect();
        assert_eq!(d, vec![vec![0], vec![1], vec![2], vec![3]]);

        let d: Vec<_> = enumerate_delta(&[b(2), b(3)], &[1, 1], true, DEFAULT_BUDGET)
            .unwrap()
            .collect();
        assert_eq!(
            d,
            vec![vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]
        );

        let d: Vec<_> = enumerate_delta(&[b(5)], &[0], false, DEFAULT_BUDGET)
            .unwrap()
            .collect();
        assert_eq!(d, vec![vec![0]]);
        assert_eq!(
            enumerate_delta(&[b(5)], &[0], true, DEFAULT_BUDGET)
                .unwrap()
                .count(),
            0
        );
    }

    #[test]
    fn delta_budget() {
        assert!(matches!(
            Delta::new(&[b(2), b(2)], &[13, 12], false, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(Delta::new(&[b(2), b(2)], &[12, 12], false, DEFAULT_BUDGET).is_ok());
        assert!(Delta::new(&[b(2)], &[200], false, u64::MAX).is_err());
    }

    #[test]
    fn delta_ranges_agree_with_full_iteration() {
        let delta = Delta::new(&[b(3), b(2), b(5)], &[1, 2, 1], true, 1000).unwrap();
        let full: Vec<_> = delta.iter().collect();
        assert_eq!(full.len() as u64, delta.len());
        let mut pieces = Vec::new();
        let mut start = 0;
        while start < delta.len() {
            pieces.extend(delta.iter_range(start..start + 7));
            start += 7;
        }
        assert_eq!(full, pieces);
        for (rank, k) in full.iter().enumerate() {
            assert_eq!(&delta.get(rank as u64), k);
        }
    }

    #[test]
    fn fraction_ordering() {
        assert!(frac(1, 3) < frac(1, 2));
        assert!(frac(2, 3) > frac(1, 2));
        assert_eq!(frac(2, 4).cmp(&frac(1, 2)), Ordering::Equal);
        let big = ExactFraction::new(u128::MAX - 1, u128::MAX).unwrap();
        let big2 = ExactFraction::new(u128::MAX - 2, u128::MAX - 1).unwrap();
        assert!(big > big2);
        assert!(cmp_fractions(7, 9, 7, 9) == Ordering::Equal);
        assert!(cmp_fractions(7, 10, 7, 9) == Ordering::Less);
    }

    #[test]
    fn cmp_value_and_leading_value() {
        let x = dv(2, &[1, 0, 1]);
        assert_eq!(x.leading_value(3), Some(5));
        assert_eq!(x.leading_value(1), Some(1));
        assert_eq!(x.integer_prefix(3), Some(5));
        assert_eq!(dv(3, &[2, 1]).integer_prefix(2), Some(5));
        assert_eq!(dv(3, &[2, 1]).leading_value(2), Some(7));
        assert_eq!(x.cmp_value(&dv(2, &[1, 1])), Ordering::Less);
        assert_eq!(x.cmp_value(&dv(2, &[1, 0, 1, 0])), Ordering::Equal);
        assert_eq!(x.to_f64(), 0.625);
    }
}
