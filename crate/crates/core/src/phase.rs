//! Exact rational phases and their conversion to unit complex numbers.
//!
//! Every value of a Walsh or b-adic function is `e(a/M) = exp(2πi a/M)` for
//! some reduced fraction `a/M`. Phases are added exactly; the trigonometric
//! conversion happens once, at aggregation time.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::badic::{gcd_u128, gcd_u64};
use crate::error::{Error, Result};

/// The phase `a/M mod 1`, stored with `0 ≤ a < M` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseFraction {
    numerator: u128,
    modulus: u128,
}

impl PhaseFraction {
    pub const ZERO: PhaseFraction = PhaseFraction {
        numerator: 0,
        modulus: 1,
    };

    /// Builds `a/M mod 1`.
    pub fn new(numerator: u128, modulus: u128) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Invalid("phase modulus must be positive"));
        }
        Ok(Self::reduced(numerator % modulus, modulus))
    }

    fn reduced(a: u128, m: u128) -> Self {
        let g = gcd_u128(a, m);
        PhaseFraction {
            numerator: a / g,
            modulus: m / g,
        }
    }

    #[inline]
    pub fn numerator(&self) -> u128 {
        self.numerator
    }

    #[inline]
    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    /// Exact sum mod 1; fails only if the common modulus overflows 128 bits.
    pub fn checked_add(self, other: Self) -> Result<Self> {
        if self.modulus <= u32::MAX as u128 && other.modulus <= u32::MAX as u128 {
            return Ok(self.add_small(other));
        }
        let g = gcd_u128(self.modulus, other.modulus);
        let m = (self.modulus / g)
            .checked_mul(other.modulus)
            .ok_or(Error::Overflow)?;
        let a = mul_mod(self.numerator, m / self.modulus, m);
        let b = mul_mod(other.numerator, m / other.modulus, m);
        Ok(Self::reduced(add_mod(a, b, m), m))
    }

    /// [`PhaseFraction::checked_add`] for moduli below `2^32`, in 64-bit arithmetic.
    fn add_small(self, other: Self) -> Self {
        let (m1, m2) = (self.modulus as u64, other.modulus as u64);
        let g = gcd_u64(m1, m2);
        let m = m1 / g * m2;
        let a = self.numerator as u64 * (m / m1);
        let b = other.numerator as u64 * (m / m2);
        let sum = if a >= m - b { a - (m - b) } else { a + b };
        let r = gcd_u64(sum, m);
        PhaseFraction {
            numerator: (sum / r) as u128,
            modulus: (m / r) as u128,
        }
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        self.checked_add(-other)
    }

    /// The point `e(a/M)` on the unit circle.
    pub fn to_complex(&self) -> Complex64 {
        unit_root(self.numerator, self.modulus)
    }
}

impl Neg for PhaseFraction {
    type Output = PhaseFraction;

    fn neg(self) -> PhaseFraction {
        if self.numerator == 0 {
            self
        } else {
            PhaseFraction {
                numerator: self.modulus - self.numerator,
                modulus: self.modulus,
            }
        }
    }
}

impl Add for PhaseFraction {
    type Output = PhaseFraction;

    /// Panics if the common modulus overflows; use [`PhaseFraction::checked_add`]
    /// when the moduli are not known to be small.
    fn add(self, other: Self) -> Self {
        self.checked_add(other).expect("phase modulus overflow")
    }
}

impl Sub for PhaseFraction {
    type Output = PhaseFraction;

    fn sub(self, other: Self) -> Self {
        self + (-other)
    }
}

impl fmt::Display for PhaseFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.modulus)
    }
}

#[inline]
pub(crate) fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    debug_assert!(a < m && b < m);
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

/// `a·b mod m` without intermediate overflow.
pub(crate) fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if let (Ok(a), Ok(b), Ok(m)) = (u64::try_from(a), u64::try_from(b), u64::try_from(m)) {
        return a as u128 * b as u128 % m as u128;
    }
    let (a, mut b) = (a % m, b % m);
    if let Some(p) = a.checked_mul(b) {
        return p % m;
    }
    let mut acc = 0u128;
    let mut base = a;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, base, m);
        }
        base = add_mod(base, base, m);
        b >>= 1;
    }
    acc
}

/// `exp(2πi a/m)` with the argument reduced to at most an eighth of a turn
/// before any trigonometric call, so quarter-turn multiples come out exact.
pub fn unit_root(a: u128, m: u128) -> Complex64 {
    debug_assert!(m > 0);
    let a = a % m;
    // nearest quarter turn q with a/m = q/4 + r, |r| ≤ 1/8
    let four_a = a as f64 * 4.0;
    let q = if let Some(x) = a.checked_mul(4) {
        (x + m / 2) / m
    } else {
        libm::round(four_a / m as f64) as u128
    };
    let r = if let Some(qm) = q.checked_mul(m) {
        let num = a as i128 * 4 - qm as i128;
        num as f64 / (4.0 * m as f64)
    } else {
        a as f64 / m as f64 - q as f64 / 4.0
    };
    let theta = core::f64::consts::TAU * r;
    let (s, c) = if r == 0.0 {
        (0.0, 1.0)
    } else {
        (libm::sin(theta), libm::cos(theta))
    };
    match q % 4 {
        0 => Complex64::new(c, s),
        1 => Complex64::new(-s, c),
        2 => Complex64::new(-c, -s),
        _ => Complex64::new(s, -c),
    }
}

/// Neumaier-compensated running sum of complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

#[inline]
fn neumaier(acc: &mut (f64, f64), x: f64) {
    let (sum, comp) = *acc;
    let t = sum + x;
    let c = if libm::fabs(sum) >= libm::fabs(x) {
        (sum - t) + x
    } else {
        (x - t) + sum
    };
    *acc = (t, comp + c);
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// An exact element `Σ w_j e(phase_j)` of the cyclotomic integers `Z[ζ_M]`,
/// with integer weights.
///
/// Zero-testing reduces the weight polynomial modulo the cyclotomic
/// polynomial `Φ_M`, which decides cancellation of roots of unity exactly.
#[derive(Debug, Clone, Default)]
pub struct CyclotomicSum {
    terms: BTreeMap<PhaseFraction, i128>,
}

/// Largest common modulus the exact zero test will expand into a polynomial.
pub const CYCLOTOMIC_MAX_MODULUS: u128 = 1 << 20;

impl CyclotomicSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, phase: PhaseFraction, weight: i128) {
        *self.terms.entry(phase).or_insert(0) += weight;
    }

    pub fn add_integer(&mut self, weight: i128) {
        self.add(PhaseFraction::ZERO, weight);
    }

    pub fn to_complex(&self) -> Complex64 {
        let mut acc = CompensatedSum::new();
        for (phase, &w) in &self.terms {
            acc.add(phase.to_complex() * w as f64);
        }
        acc.value()
    }

    fn common_modulus(&self) -> Result<u128> {
        self.terms.keys().try_fold(1u128, |m, p| {
            let g = gcd_u128(m, p.modulus());
            (m / g).checked_mul(p.modulus()).ok_or(Error::Overflow)
        })
    }

    /// Whether the sum is exactly zero.
    pub fn is_zero(&self) -> Result<bool> {
        let m = self.common_modulus()?;
        if m > CYCLOTOMIC_MAX_MODULUS {
            return Err(Error::Overflow);
        }
        let m = m as usize;
        let mut poly = vec![0i128; m];
        for (p, &w) in &self.terms {
            let idx = (p.numerator() * (m as u128 / p.modulus())) as usize;
            poly[idx] += w;
        }
        let phi = cyclotomic_polynomial(m);
        Ok(poly_rem_monic(poly, &phi).iter().all(|&c| c == 0))
    }

    /// Whether the sum equals the integer `c` exactly.
    pub fn equals_integer(&self, c: i128) -> Result<bool> {
        let mut diff = self.clone();
        diff.add_integer(-c);
        diff.is_zero()
    }
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i128> {
    assert!(n >= 1);
    let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    // Φ_d = (x^d - 1) / Π_{e | d, e < d} Φ_e, built bottom-up over divisors of n.
    let mut table: BTreeMap<usize, Vec<i128>> = BTreeMap::new();
    for &d in &divisors {
        let mut num = vec![0i128; d + 1];
        num[0] = -1;
        num[d] = 1;
        for (&e, phi_e) in &table {
            if e < d && d % e == 0 {
                num = poly_div_exact(&num, phi_e);
            }
        }
        table.insert(d, num);
    }
    table.remove(&n).unwrap_or_default()
}

fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i128; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let coef = rem[i + dn];
        quot[i] = coef;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= coef * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

fn poly_rem_monic(mut p: Vec<i128>, modulus: &[i128]) -> Vec<i128> {
    let dn = modulus.len() - 1;
    while p.len() > dn {
        let top = p.pop().unwrap_or(0);
        if top != 0 {
            let shift = p.len() - dn;
            for (j, &mj) in modulus[..dn].iter().enumerate() {
                p[shift + j] -= top * mj;
            }
        }
    }
    p
}
