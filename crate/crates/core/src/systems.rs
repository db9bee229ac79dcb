//! Walsh functions, b-adic functions and their hybrid tensor products.
//!
//! All evaluations return a [`PhaseFraction`]; `w_k(x) = e(walsh_phase)` and
//! `γ_k(x) = e(gamma_phase)`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::badic::{digit_reverse, vb, Base, DigitVector};
use crate::error::{Error, Result};
use crate::phase::{mul_mod, PhaseFraction};

/// Which function system analyses a coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemTag {
    /// Walsh functions: digitwise arithmetic, addition without carry.
    Walsh,
    /// b-adic functions: characters of the b-adic integers, addition with carry.
    Badic,
}

impl fmt::Display for SystemTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemTag::Walsh => "w",
            SystemTag::Badic => "b",
        })
    }
}

impl FromStr for SystemTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "w" | "W" | "walsh" | "WALSH" => Ok(SystemTag::Walsh),
            "b" | "B" | "badic" | "BADIC" | "b-adic" => Ok(SystemTag::Badic),
            _ => Err(Error::Invalid("system tag must be `w` or `b`")),
        }
    }
}

/// Per-coordinate base and system tag. Tags may interleave arbitrarily.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HybridSystemSpec {
    coords: Vec<(Base, SystemTag)>,
}

impl HybridSystemSpec {
    pub fn new(coords: Vec<(Base, SystemTag)>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Invalid("system spec needs at least one coordinate"));
        }
        Ok(HybridSystemSpec { coords })
    }

    pub fn from_parts(bases: &[Base], tags: &[SystemTag]) -> Result<Self> {
        if bases.len() != tags.len() {
            return Err(Error::DimensionMismatch {
                expected: bases.len(),
                got: tags.len(),
            });
        }
        Self::new(bases.iter().copied().zip(tags.iter().copied()).collect())
    }

    /// Every coordinate analysed with the same system.
    pub fn uniform(bases: &[Base], tag: SystemTag) -> Result<Self> {
        Self::new(bases.iter().map(|&b| (b, tag)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[(Base, SystemTag)] {
        &self.coords
    }

    pub fn bases(&self) -> Vec<Base> {
        self.coords.iter().map(|&(b, _)| b).collect()
    }

    pub fn tags(&self) -> Vec<SystemTag> {
        self.coords.iter().map(|&(_, t)| t).collect()
    }
}

fn check_base(x: &DigitVector, base: Base) -> Result<()> {
    if x.base() != base {
        return Err(Error::BaseMismatch {
            left: base.get(),
            right: x.base().get(),
        });
    }
    Ok(())
}

/// Numerator of the Walsh phase over the fixed modulus `b`.
#[inline]
pub(crate) fn walsh_residue(k: u64, x: &DigitVector, base: Base) -> u128 {
    let b = base.get() as u64;
    let mut k = k;
    let mut j = 0;
    let mut acc = 0u64;
    while k > 0 {
        acc = (acc + (k % b) * x.digit(j) as u64) % b;
        k /= b;
        j += 1;
    }
    acc as u128
}

/// `(Σ_j k_j x_j)/b mod 1`.
pub fn walsh_phase(k: u64, x: &DigitVector, base: Base) -> Result<PhaseFraction> {
    check_base(x, base)?;
    PhaseFraction::new(walsh_residue(k, x, base), base.get() as u128)
}

/// Numerator of `φ_b(k)·(z mod b^v)` over the modulus `b^v`, `v = v_b(k)`.
/// Returns `(numerator, modulus)`; `None` if `b^v` overflows.
#[inline]
pub(crate) fn gamma_residue(k: u64, z: &DigitVector, base: Base) -> Option<(u128, u128)> {
    let v = vb(k, base);
    let modulus = base.pow(v)?;
    let reversed = digit_reverse(k, base, v);
    let mut zmod = 0u128;
    let b = base.get() as u128;
    for j in (0..v as usize).rev() {
        zmod = mul_mod(zmod, b, modulus) + z.digit(j) as u128;
        if zmod >= modulus {
            zmod -= modulus;
        }
    }
    Some((mul_mod(reversed, zmod, modulus), modulus))
}

/// Character `χ_k` of the b-adic integer with digits `z`, as a phase:
/// `φ_b(k)·(z_0 + z_1 b + … + z_{v-1} b^{v-1}) mod 1`.
pub fn chi_phase(k: u64, z: &DigitVector, base: Base) -> Result<PhaseFraction> {
    check_base(z, base)?;
    let (a, m) = gamma_residue(k, z, base).ok_or(Error::Overflow)?;
    PhaseFraction::new(a, m)
}

/// The k-th b-adic function `γ_k = χ_k ∘ φ_b^+` at the point with digits `x`.
///
/// The pseudoinverse of a terminating expansion is the same digit string read
/// as a b-adic integer, so this coincides with [`chi_phase`] on the digits.
pub fn gamma_phase(k: u64, x: &DigitVector, base: Base) -> Result<PhaseFraction> {
    chi_phase(k, x, base)
}

/// Phase of a single coordinate under the given system.
pub fn coordinate_phase(
    tag: SystemTag,
    k: u64,
    x: &DigitVector,
    base: Base,
) -> Result<PhaseFraction> {
    match tag {
        SystemTag::Walsh => walsh_phase(k, x, base),
        SystemTag::Badic => gamma_phase(k, x, base),
    }
}

/// Exact total phase of `ξ_k(x)`.
pub fn xi_phase(spec: &HybridSystemSpec, k: &[u64], x: &[DigitVector]) -> Result<PhaseFraction> {
    let s = spec.dim();
    if k.len() != s || x.len() != s {
        return Err(Error::DimensionMismatch {
            expected: s,
            got: if k.len() != s { k.len() } else { x.len() },
        });
    }
    spec.coords()
        .iter()
        .zip(k)
        .zip(x)
        .try_fold(PhaseFraction::ZERO, |acc, ((&(base, tag), &ki), xi)| {
            acc.checked_add(coordinate_phase(tag, ki, xi, base)?)
        })
}

/// `ξ_k(x)`, converted to a complex number once from the exact phase.
pub fn xi_eval(spec: &HybridSystemSpec, k: &[u64], x: &[DigitVector]) -> Result<Complex64> {
    Ok(xi_phase(spec, k, x)?.to_complex())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::badic::{add_with_carry_at, add_without_carry};
    use alloc::vec;

    fn b(x: u64) -> Base {
        Base::new(x).unwrap()
    }

    fn dv(base: u64, digits: &[u32]) -> DigitVector {
        DigitVector::new(b(base), digits.to_vec()).unwrap()
    }

    fn ph(a: u128, m: u128) -> PhaseFraction {
        PhaseFraction::new(a, m).unwrap()
    }

    #[test]
    fn walsh_examples() {
        assert_eq!(walsh_phase(1, &dv(2, &[1]), b(2)).unwrap(), ph(1, 2));
        assert_eq!(
            walsh_phase(2, &dv(2, &[1]), b(2)).unwrap(),
            PhaseFraction::ZERO
        );
        assert_eq!(walsh_phase(2, &dv(3, &[2]), b(3)).unwrap(), ph(1, 3));
        assert!(walsh_phase(1, &dv(3, &[2]), b(2)).is_err());
    }

    #[test]
    fn gamma_examples() {
        for base in [2u64, 3, 5, 7] {
            for d in 0..base as u32 {
                let x = dv(base, &[d]);
                assert_eq!(
                    gamma_phase(1, &x, b(base)).unwrap(),
                    walsh_phase(1, &x, b(base)).unwrap()
                );
                assert_eq!(gamma_phase(0, &x, b(base)).unwrap(), PhaseFraction::ZERO);
            }
        }
        assert_eq!(gamma_phase(2, &dv(2, &[1, 0]), b(2)).unwrap(), ph(1, 4));
        assert_eq!(gamma_phase(2, &dv(2, &[1]), b(2)).unwrap(), ph(1, 4));
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_phase(1, &dv(2, &[1, 1]), b(2)).unwrap(), ph(1, 2));
        assert_eq!(chi_phase(3, &dv(2, &[1, 0]), b(2)).unwrap(), ph(3, 4));
        assert_eq!(
            chi_phase(12345, &dv(2, &[]), b(2)).unwrap(),
            PhaseFraction::ZERO
        );
    }

    #[test]
    fn xi_examples() {
        let spec = HybridSystemSpec::new(vec![(b(2), SystemTag::Walsh), (b(2), SystemTag::Badic)])
            .unwrap();
        let x = [dv(2, &[1]), dv(2, &[1])];
        assert_eq!(
            xi_eval(&spec, &[0, 0], &x).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(xi_phase(&spec, &[1, 2], &x).unwrap(), ph(3, 4));
        assert_eq!(
            xi_eval(&spec, &[1, 2], &x).unwrap(),
            Complex64::new(0.0, -1.0)
        );

        let spec = HybridSystemSpec::new(vec![(b(3), SystemTag::Badic)]).unwrap();
        assert_eq!(xi_phase(&spec, &[1], &[dv(3, &[2])]).unwrap(), ph(2, 3));
        assert!(xi_phase(&spec, &[1, 1], &[dv(3, &[2])]).is_err());
        assert!(xi_phase(&spec, &[1], &[dv(2, &[1])]).is_err());
    }

    #[test]
    fn gamma_character_property_exhaustive() {
        for base in [2u64, 3] {
            let bb = b(base);
            let m = 3usize;
            let count = base.pow(m as u32);
            for k in 0..count {
                for u in 0..count {
                    for v in 0..count {
                        let du = DigitVector::from_integer(u, bb).with_precision(m);
                        let dvv = DigitVector::from_integer(v, bb).with_precision(m);
                        let sum = add_with_carry_at(&du, &dvv, m).unwrap();
                        let lhs = chi_phase(k, &sum, bb).unwrap();
                        let rhs = chi_phase(k, &du, bb).unwrap() + chi_phase(k, &dvv, bb).unwrap();
                        assert_eq!(lhs, rhs, "b={base} k={k} u={u} v={v}");
                    }
                }
            }
        }
    }

    #[test]
    fn walsh_character_property_exhaustive() {
        for base in [2u64, 3, 4] {
            let bb = b(base);
            let count = base.pow(3);
            for k in 0..count {
                for u in 0..count {
                    for v in 0..count {
                        let du = DigitVector::from_integer(u, bb);
                        let dvv = DigitVector::from_integer(v, bb);
                        let sum = add_without_carry(&du, &dvv).unwrap();
                        assert_eq!(
                            walsh_phase(k, &sum, bb).unwrap(),
                            walsh_phase(k, &du, bb).unwrap() + walsh_phase(k, &dvv, bb).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn large_index_does_not_overflow() {
        let x = DigitVector::from_integer(u64::MAX, b(2));
        let p = gamma_phase(u64::MAX, &x, b(2)).unwrap();
        assert_eq!(p.modulus() >> 64, 1);
        let p = gamma_phase(u64::MAX, &DigitVector::from_integer(u64::MAX, b(7)), b(7)).unwrap();
        assert!(p.numerator() < p.modulus());
    }

    #[test]
    fn tag_parsing() {
        assert_eq!("w".parse::<SystemTag>().unwrap(), SystemTag::Walsh);
        assert_eq!("B".parse::<SystemTag>().unwrap(), SystemTag::Badic);
        assert!("x".parse::<SystemTag>().is_err());
    }
}
