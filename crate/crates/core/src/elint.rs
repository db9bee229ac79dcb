//! Elementary intervals (elints), b-adic intervals and the Fourier
//! coefficients of their indicator functions.
//!
//! An elint `I_{c,g}` is the box `Π [φ_{b_i}(c_i), φ_{b_i}(c_i) + b_i^{-g_i})`.
//! Its left corner, written as digits most-significant-first, is the digit
//! string of `c_i` least-significant-first, so membership of a point reduces
//! to comparing `floor(x_i b_i^{g_i})` with the digit reversal of `c_i`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::badic::{digit_reverse, vb, Base, Delta, DigitVector, ExactFraction};
use crate::error::{Error, Result};
use crate::phase::{mul_mod, unit_root, CompensatedSum, CyclotomicSum, PhaseFraction};
use crate::systems::{coordinate_phase, xi_phase, HybridSystemSpec, SystemTag};

fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

fn check_bases(spec_bases: &[Base], bases: &[Base]) -> Result<()> {
    check_bases_iter(spec_bases.iter().copied(), spec_bases.len(), bases)
}

fn check_spec(spec: &HybridSystemSpec, bases: &[Base]) -> Result<()> {
    check_bases_iter(spec.coords().iter().map(|&(b, _)| b), spec.dim(), bases)
}

fn check_bases_iter(
    spec_bases: impl Iterator<Item = Base>,
    len: usize,
    bases: &[Base],
) -> Result<()> {
    check_dims(len, bases.len())?;
    for (l, &r) in spec_bases.zip(bases) {
        if l != r {
            return Err(Error::BaseMismatch {
                left: l.get(),
                right: r.get(),
            });
        }
    }
    Ok(())
}

fn check_point(bases: &[Base], x: &[DigitVector]) -> Result<()> {
    check_bases(bases, &x.iter().map(DigitVector::base).collect::<Vec<_>>())
}

/// `floor(x · b^g)`, saturating (only reachable for absurd resolutions).
fn leading(x: &DigitVector, g: u32) -> u128 {
    x.leading_value(g).unwrap_or(u128::MAX)
}

/// A b-adic elementary interval `I_{c,g}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Elint {
    bases: Vec<Base>,
    g: Vec<u32>,
    c: Vec<u64>,
}

impl Elint {
    pub fn new(bases: Vec<Base>, g: Vec<u32>, c: Vec<u64>) -> Result<Self> {
        check_dims(bases.len(), g.len())?;
        check_dims(bases.len(), c.len())?;
        for ((&b, &gi), &ci) in bases.iter().zip(&g).zip(&c) {
            let radix = b.pow_u64(gi).ok_or(Error::Overflow)?;
            if ci >= radix {
                return Err(Error::Invalid("elint index c_i must be below b_i^g_i"));
            }
        }
        Ok(Elint { bases, g, c })
    }

    pub fn bases(&self) -> &[Base] {
        &self.bases
    }

    pub fn resolution(&self) -> &[u32] {
        &self.g
    }

    pub fn index(&self) -> &[u64] {
        &self.c
    }

    /// Number of elints of this resolution, `Π b_i^{g_i}`.
    pub fn cells(&self) -> u128 {
        self.bases
            .iter()
            .zip(&self.g)
            .map(|(&b, &gi)| b.pow(gi).unwrap_or(u128::MAX))
            .fold(1u128, |a, r| a.saturating_mul(r))
    }

    /// `λ_s(I) = Π b_i^{-g_i}`.
    pub fn measure(&self) -> ExactFraction {
        ExactFraction::new(1, self.cells()).expect("cell count is positive")
    }

    pub fn measure_f64(&self) -> f64 {
        self.bases
            .iter()
            .zip(&self.g)
            .map(|(&b, &gi)| libm::pow(b.get() as f64, -(gi as f64)))
            .product()
    }

    /// The left corner `φ_b(c)` as digit vectors of precision `g_i`.
    pub fn corner(&self) -> Vec<DigitVector> {
        self.bases
            .iter()
            .zip(&self.g)
            .zip(&self.c)
            .map(|((&b, &gi), &ci)| DigitVector::from_integer(ci, b).with_precision(gi as usize))
            .collect()
    }

    /// Per-coordinate `[left, right)` as exact fractions.
    pub fn bounds(&self) -> Vec<(ExactFraction, ExactFraction)> {
        self.bases
            .iter()
            .zip(&self.g)
            .zip(&self.c)
            .map(|((&b, &gi), &ci)| {
                let den = b.pow(gi).expect("validated at construction");
                let left = digit_reverse(ci, b, gi);
                (
                    ExactFraction::new(left, den).expect("positive"),
                    ExactFraction::new(left + 1, den).expect("positive"),
                )
            })
            .collect()
    }

    /// The same box viewed as a b-adic interval.
    pub fn as_interval(&self) -> BadicInterval {
        let (lower, upper) = self
            .bases
            .iter()
            .zip(&self.g)
            .zip(&self.c)
            .map(|((&b, &gi), &ci)| {
                let a = digit_reverse(ci, b, gi) as u64;
                (a, a + 1)
            })
            .unzip();
        BadicInterval {
            bases: self.bases.clone(),
            g: self.g.clone(),
            lower,
            upper,
        }
    }
}

/// Exact membership `x ∈ I_{c,g}`.
pub fn elint_contains(e: &Elint, x: &[DigitVector]) -> Result<bool> {
    check_point(&e.bases, x)?;
    Ok(e.bases
        .iter()
        .zip(&e.g)
        .zip(&e.c)
        .zip(x)
        .all(|(((&b, &gi), &ci), xi)| leading(xi, gi) == digit_reverse(ci, b, gi)))
}

/// The `Π b_i^{g_i}` elints of resolution `g`, in `Δ_b(g)` order.
pub fn elint_partition(
    bases: &[Base],
    g: &[u32],
    budget: u64,
) -> Result<impl Iterator<Item = Elint>> {
    let delta = Delta::new(bases, g, false, budget)?;
    let bases = bases.to_vec();
    let g = g.to_vec();
    Ok(delta.iter().map(move |c| Elint {
        bases: bases.clone(),
        g: g.clone(),
        c,
    }))
}

/// Exact form of the elint Fourier coefficient: `None` when it vanishes,
/// otherwise the phase `p` with `\hat 1_I(k) = λ_s(I) · e(p)`.
pub fn elint_fourier_phase(
    e: &Elint,
    k: &[u64],
    spec: &HybridSystemSpec,
) -> Result<Option<PhaseFraction>> {
    check_spec(spec, &e.bases)?;
    check_dims(e.bases.len(), k.len())?;
    let in_box = e
        .bases
        .iter()
        .zip(&e.g)
        .zip(k)
        .all(|((&b, &gi), &ki)| b.pow(gi).is_none_or(|r| (ki as u128) < r));
    if !in_box {
        return Ok(None);
    }
    let mut total = PhaseFraction::ZERO;
    for ((&(base, tag), &ki), &ci) in spec.coords().iter().zip(k).zip(&e.c) {
        total = total.checked_add(corner_phase(tag, ki, ci, base)?)?;
    }
    Ok(Some(-total))
}

/// Phase of `ξ_k` in one coordinate at the corner `φ_b(c)`, read off the
/// digits of `c` directly.
fn corner_phase(tag: SystemTag, k: u64, c: u64, base: Base) -> Result<PhaseFraction> {
    let b = base.get() as u64;
    match tag {
        SystemTag::Walsh => {
            let (mut k, mut c, mut acc) = (k, c, 0u64);
            while k > 0 {
                acc = (acc + (k % b) * (c % b)) % b;
                k /= b;
                c /= b;
            }
            PhaseFraction::new(acc as u128, b as u128)
        }
        SystemTag::Badic => {
            let v = vb(k, base);
            let modulus = base.pow(v).ok_or(Error::Overflow)?;
            let reversed = digit_reverse(k, base, v);
            PhaseFraction::new(mul_mod(reversed, c as u128 % modulus, modulus), modulus)
        }
    }
}

/// `\hat 1_{I_{c,g}}(k)`: zero outside `Δ_b(g)`, else `λ_s · conj(ξ_k(φ_b(c)))`.
pub fn elint_fourier_coeff(e: &Elint, k: &[u64], spec: &HybridSystemSpec) -> Result<Complex64> {
    Ok(match elint_fourier_phase(e, k, spec)? {
        None => Complex64::new(0.0, 0.0),
        Some(p) => p.to_complex() * e.measure_f64(),
    })
}

/// One cell of the step-function form of `ξ_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCell {
    pub elint: Elint,
    pub phase: PhaseFraction,
}

impl StepCell {
    pub fn value(&self) -> Complex64 {
        self.phase.to_complex()
    }
}

/// `ξ_k` as a step function: its constant value on every elint of
/// resolution `v_b(k)`.
pub fn step_representation(
    k: &[u64],
    spec: &HybridSystemSpec,
    budget: u64,
) -> Result<Vec<StepCell>> {
    check_dims(spec.dim(), k.len())?;
    let bases = spec.bases();
    let v: Vec<u32> = bases.iter().zip(k).map(|(&b, &ki)| vb(ki, b)).collect();
    elint_partition(&bases, &v, budget)?
        .map(|elint| {
            let phase = xi_phase(spec, k, &elint.corner())?;
            Ok(StepCell { elint, phase })
        })
        .collect()
}

/// A b-adic interval `Π [a_i b_i^{-g_i}, d_i b_i^{-g_i})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BadicInterval {
    bases: Vec<Base>,
    g: Vec<u32>,
    lower: Vec<u64>,
    upper: Vec<u64>,
}

impl BadicInterval {
    pub fn new(bases: Vec<Base>, g: Vec<u32>, lower: Vec<u64>, upper: Vec<u64>) -> Result<Self> {
        check_dims(bases.len(), g.len())?;
        check_dims(bases.len(), lower.len())?;
        check_dims(bases.len(), upper.len())?;
        for (((&b, &gi), &a), &d) in bases.iter().zip(&g).zip(&lower).zip(&upper) {
            let radix = b.pow_u64(gi).ok_or(Error::Overflow)?;
            if a >= d || d > radix {
                return Err(Error::Invalid(
                    "b-adic interval needs 0 ≤ a_i < d_i ≤ b_i^g_i",
                ));
            }
        }
        Ok(BadicInterval {
            bases,
            g,
            lower,
            upper,
        })
    }

    /// The whole cube at resolution `g`.
    pub fn full(bases: Vec<Base>, g: Vec<u32>) -> Result<Self> {
        let upper = bases
            .iter()
            .zip(&g)
            .map(|(&b, &gi)| b.pow_u64(gi).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        let lower = alloc::vec![0; bases.len()];
        Self::new(bases, g, lower, upper)
    }

    pub fn bases(&self) -> &[Base] {
        &self.bases
    }

    pub fn resolution(&self) -> &[u32] {
        &self.g
    }

    pub fn lower(&self) -> &[u64] {
        &self.lower
    }

    pub fn upper(&self) -> &[u64] {
        &self.upper
    }

    pub fn is_anchored(&self) -> bool {
        self.lower.iter().all(|&a| a == 0)
    }

    pub fn measure_f64(&self) -> f64 {
        self.bases
            .iter()
            .zip(&self.g)
            .zip(self.lower.iter().zip(&self.upper))
            .map(|((&b, &gi), (&a, &d))| (d - a) as f64 * libm::pow(b.get() as f64, -(gi as f64)))
            .product()
    }

    pub fn contains(&self, x: &[DigitVector]) -> Result<bool> {
        check_point(&self.bases, x)?;
        Ok(self
            .g
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .zip(x)
            .all(|((&gi, (&a, &d)), xi)| {
                let lead = leading(xi, gi);
                a as u128 <= lead && lead < d as u128
            }))
    }

    /// The elints of resolution `g` whose disjoint union is this interval.
    pub fn elints(&self) -> Vec<Elint> {
        let mut out = Vec::new();
        let s = self.bases.len();
        let mut cur: Vec<u64> = self.lower.clone();
        loop {
            let c = (0..s)
                .map(|i| digit_reverse(cur[i], self.bases[i], self.g[i]) as u64)
                .collect();
            out.push(Elint {
                bases: self.bases.clone(),
                g: self.g.clone(),
                c,
            });
            let mut i = s;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.upper[i] {
                    break;
                }
                cur[i] = self.lower[i];
            }
        }
    }
}

/// Prefix table for the one-dimensional coefficients `\hat 1_{[0,β)}(k)`.
///
/// `f_k` is constant on the cells `[A b^{-v}, (A+1) b^{-v})`, `v = v_b(k)`;
/// the table stores running sums of its conjugated values in the order of `A`.
#[derive(Debug, Clone)]
pub struct AnchoredCoefficients {
    base: Base,
    v: u32,
    cells: u128,
    /// `prefix[A] = Σ_{A' < A} conj(f_k)` on cell `A'`, and the cell values.
    prefix: Vec<Complex64>,
    values: Vec<Complex64>,
}

impl AnchoredCoefficients {
    pub fn new(k: u64, base: Base, tag: SystemTag, budget: u64) -> Result<Self> {
        let v = vb(k, base);
        let cells = base.pow(v).ok_or(Error::Overflow)?;
        if cells > budget as u128 {
            return Err(Error::BudgetExceeded {
                requested: cells,
                budget,
            });
        }
        let mut values = Vec::with_capacity(cells as usize);
        for a in 0..cells as u64 {
            // cell with left endpoint A/b^v has corner digits = digits of A reversed
            let corner = DigitVector::from_integer(digit_reverse(a, base, v) as u64, base);
            values.push((-coordinate_phase(tag, k, &corner, base)?).to_complex());
        }
        let mut prefix = Vec::with_capacity(values.len() + 1);
        let mut acc = CompensatedSum::new();
        prefix.push(acc.value());
        for &z in &values {
            acc.add(z);
            prefix.push(acc.value());
        }
        Ok(AnchoredCoefficients {
            base,
            v,
            cells,
            prefix,
            values,
        })
    }

    /// `∫_0^β conj(f_k) dλ` for `β ∈ [0,1]`.
    pub fn coefficient(&self, beta: ExactFraction) -> Result<Complex64> {
        if beta > ExactFraction::ONE {
            return Err(Error::Invalid("β must lie in [0,1]"));
        }
        let scale = self.base.pow(self.v).ok_or(Error::Overflow)?;
        let (num, den) = (beta.numerator(), beta.denominator());
        // full = floor(β b^v)
        let scaled = num.checked_mul(scale).ok_or(Error::Overflow)?;
        let full = scaled / den;
        let width = 1.0 / self.cells as f64;
        let mut out = self.prefix[full as usize] * width;
        if full < self.cells {
            let partial = (scaled - full * den) as f64 / (den as f64 * scale as f64);
            out += self.values[full as usize] * partial;
        }
        Ok(out)
    }
}

/// `\hat 1_{[0,β)}(k)` for a single coordinate.
pub fn anchored_fourier_coeff(
    k: u64,
    beta: ExactFraction,
    base: Base,
    tag: SystemTag,
    budget: u64,
) -> Result<Complex64> {
    AnchoredCoefficients::new(k, base, tag, budget)?.coefficient(beta)
}

/// `\hat 1_I(k)` for a b-adic interval, as a product of one-dimensional
/// differences `\hat 1_{[0,d)} - \hat 1_{[0,a)}`. Zero when `k ∉ Δ_b(g)`.
pub fn interval_fourier_coeff(
    interval: &BadicInterval,
    k: &[u64],
    spec: &HybridSystemSpec,
    budget: u64,
) -> Result<Complex64> {
    check_spec(spec, &interval.bases)?;
    check_dims(interval.bases.len(), k.len())?;
    let mut out = Complex64::new(1.0, 0.0);
    for (i, &(base, tag)) in spec.coords().iter().enumerate() {
        let gi = interval.g[i];
        let radix = base.pow(gi).ok_or(Error::Overflow)?;
        if k[i] as u128 >= radix {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let table = AnchoredCoefficients::new(k[i], base, tag, budget)?;
        let hi = table.coefficient(ExactFraction::new(interval.upper[i] as u128, radix)?)?;
        let lo = table.coefficient(ExactFraction::new(interval.lower[i] as u128, radix)?)?;
        out *= hi - lo;
    }
    Ok(out)
}

/// `Σ_{k ∈ Δ_b(g)} \hat 1_I(k) ξ_k(x)` in floating point.
pub fn reconstruct_indicator(
    e: &Elint,
    spec: &HybridSystemSpec,
    x: &[DigitVector],
    budget: u64,
) -> Result<f64> {
    check_spec(spec, &e.bases)?;
    check_point(&e.bases, x)?;
    let delta = Delta::new(&e.bases, &e.g, false, budget)?;
    let corner = e.corner();
    let mut acc = CompensatedSum::new();
    for k in delta.iter() {
        let p = xi_phase(spec, &k, x)?.checked_sub(xi_phase(spec, &k, &corner)?)?;
        acc.add(p.to_complex());
    }
    Ok(acc.value().re * e.measure_f64())
}

/// Exact version of [`reconstruct_indicator`], decided in the cyclotomic integers.
pub fn reconstruct_indicator_exact(
    e: &Elint,
    spec: &HybridSystemSpec,
    x: &[DigitVector],
    budget: u64,
) -> Result<bool> {
    check_spec(spec, &e.bases)?;
    check_point(&e.bases, x)?;
    let delta = Delta::new(&e.bases, &e.g, false, budget)?;
    let corner = e.corner();
    let mut sum = CyclotomicSum::new();
    for k in delta.iter() {
        sum.add(
            xi_phase(spec, &k, x)?.checked_sub(xi_phase(spec, &k, &corner)?)?,
            1,
        );
    }
    // λ_s · sum ∈ {0, 1}  ⇔  sum ∈ {0, |Δ_b(g)|}
    if sum.is_zero()? {
        Ok(false)
    } else if sum.equals_integer(delta.len() as i128)? {
        Ok(true)
    } else {
        Err(Error::Invalid("reconstruction is not an indicator value"))
    }
}

/// `1 / (b^t sin(π k_{t-1}/b))` for `b^{t-1} ≤ k < b^t`.
pub fn fc_upper_bound(k: u64, base: Base) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroIndex);
    }
    let t = vb(k, base);
    let lead = crate::badic::leading_digit(k, base);
    let b = base.get() as f64;
    Ok(1.0 / (libm::pow(b, t as f64) * sin_pi_fraction(lead as u64, base.get() as u64)))
}

/// `sin(π a / b)` for `0 < a < b`, using the symmetric argument.
pub(crate) fn sin_pi_fraction(a: u64, b: u64) -> f64 {
    let a = a.min(b - a);
    // sin(π a/b) = Im e(a / 2b)
    unit_root(a as u128, 2 * b as u128).im
}

/// Exact inner product `∫ ξ_k conj(ξ_l) dλ_s` on the elint partition of
/// resolution `g`: returns `(Σ_c e(phase_k(c) - phase_l(c)), number of cells)`;
/// the integral is the sum divided by the cell count. Requires both indices
/// in `Δ_b(g)`, where both functions are constant on every cell.
pub fn inner_product_exact(
    spec: &HybridSystemSpec,
    g: &[u32],
    k: &[u64],
    l: &[u64],
    budget: u64,
) -> Result<(CyclotomicSum, u64)> {
    let bases = spec.bases();
    let delta = Delta::new(&bases, g, false, budget)?;
    if !delta.contains_box(k) || !delta.contains_box(l) {
        return Err(Error::Invalid("indices must lie in Δ_b(g)"));
    }
    let mut sum = CyclotomicSum::new();
    for e in elint_partition(&bases, g, budget)? {
        let corner = e.corner();
        sum.add(
            xi_phase(spec, k, &corner)?.checked_sub(xi_phase(spec, l, &corner)?)?,
            1,
        );
    }
    Ok((sum, delta.len()))
}
