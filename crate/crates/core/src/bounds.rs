//! Weights, error terms, exponential sums and the hybrid discrepancy bounds
//!
//! ```text
//! D_N  ≤ ε_b(g)  + Σ_{k ∈ Δ*_b(g)} ρ_b(k)  |S_N(ξ_k)|
//! D*_N ≤ ε*_b(g) + Σ_{k ∈ Δ*_b(g)} ρ*_b(k) |S_N(ξ_k)|
//! ```
//!
//! The sum over `Δ*_b(g)` is streamed in fixed-size chunks of ranks. Within a
//! chunk terms are accumulated in rank order and chunk totals are reduced in
//! chunk order, so the result is bit-reproducible for a given chunk size no
//! matter how chunks are scheduled.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::badic::{leading_digit, vb, Base, Delta, DigitVector, DEFAULT_BUDGET};
use crate::elint::sin_pi_fraction;
use crate::error::{Error, Result};
use crate::phase::{unit_root, CompensatedSum};
use crate::sequences::PointSet;
use crate::systems::{gamma_residue, walsh_residue, xi_phase, HybridSystemSpec, SystemTag};

/// Constant in the closed-form extreme-discrepancy bound.
pub const EXTREME_LOG_CONSTANT: f64 = 2.43;
/// Constant in the closed-form star-discrepancy bound.
pub const STAR_LOG_CONSTANT: f64 = 1.22;
/// Ranks per chunk when streaming `Δ*_b(g)`.
pub const DEFAULT_CHUNK_SIZE: u64 = 4096;

/// Below this modulus, `e(r/M)` is served from a precomputed table.
const ROOT_TABLE_MAX: u64 = 1 << 20;
/// Largest residue table (entries) kept per bound computation.
const RESIDUE_TABLE_MAX: usize = 1 << 23;
/// Exponential sums smaller than this are checked for exact cancellation.
const CANCELLATION_PROBE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Extreme,
    Star,
}

impl Variant {
    pub fn is_star(self) -> bool {
        self == Variant::Star
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Extreme => "extreme",
            Variant::Star => "star",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "extreme" => Ok(Variant::Extreme),
            "star" => Ok(Variant::Star),
            _ => Err(Error::Invalid("variant must be `extreme` or `star`")),
        }
    }
}

/// `ρ_b(k)`: 1 at zero, else `2 / (b^t sin(π k_{t-1}/b))` for `b^{t-1} ≤ k < b^t`.
pub fn rho(k: u64, base: Base) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let t = vb(k, base);
    let lead = leading_digit(k, base);
    2.0 / (libm::pow(base.get() as f64, t as f64) * sin_pi_fraction(lead as u64, base.get() as u64))
}

/// `ρ*_b(k)`: 1 at zero, else `ρ_b(k)/2`.
pub fn rho_star(k: u64, base: Base) -> f64 {
    if k == 0 {
        1.0
    } else {
        rho(k, base) / 2.0
    }
}

pub fn rho_for(variant: Variant, k: u64, base: Base) -> f64 {
    match variant {
        Variant::Extreme => rho(k, base),
        Variant::Star => rho_star(k, base),
    }
}

/// Product weight `Π ρ_{b_i}(k_i)` (or the starred product).
pub fn rho_vec(k: &[u64], bases: &[Base], variant: Variant) -> Result<f64> {
    if k.len() != bases.len() {
        return Err(Error::DimensionMismatch {
            expected: bases.len(),
            got: k.len(),
        });
    }
    Ok(k.iter()
        .zip(bases)
        .map(|(&ki, &b)| rho_for(variant, ki, b))
        .product())
}

fn check_resolution(bases: &[Base], g: &[u32]) -> Result<()> {
    if bases.len() != g.len() {
        return Err(Error::DimensionMismatch {
            expected: bases.len(),
            got: g.len(),
        });
    }
    if g.contains(&0) {
        return Err(Error::ZeroResolution);
    }
    Ok(())
}

/// `ε_b(g) = 1 - Π(1 - 2 b_i^{-g_i})` or `ε*_b(g) = 1 - Π(1 - b_i^{-g_i})`,
/// evaluated as one exact fraction and rounded once.
pub fn epsilon_terms(bases: &[Base], g: &[u32], variant: Variant) -> Result<f64> {
    check_resolution(bases, g)?;
    let c: u128 = if variant.is_star() { 1 } else { 2 };
    let exact = bases
        .iter()
        .zip(g)
        .try_fold((1u128, 1u128), |(den, kept), (&b, &gi)| {
            let r = b.pow(gi)?;
            Some((den.checked_mul(r)?, kept.checked_mul(r - c)?))
        });
    let eps = match exact {
        Some((den, kept)) => (den - kept) as f64 / den as f64,
        None => -libm::expm1(
            bases
                .iter()
                .zip(g)
                .map(|(&b, &gi)| libm::log1p(-(c as f64) * libm::pow(b.get() as f64, -(gi as f64))))
                .sum::<f64>(),
        ),
    };
    debug_assert!(eps <= epsilon_remark_bound(bases, g, variant)? + 1e-15);
    Ok(eps)
}

/// The simple majorant `2sδ` (extreme) or `sδ` (star), `δ = max b_i^{-g_i}`.
pub fn epsilon_remark_bound(bases: &[Base], g: &[u32], variant: Variant) -> Result<f64> {
    check_resolution(bases, g)?;
    let delta = bases
        .iter()
        .zip(g)
        .map(|(&b, &gi)| libm::pow(b.get() as f64, -(gi as f64)))
        .fold(0.0, f64::max);
    let s = bases.len() as f64;
    Ok(match variant {
        Variant::Extreme => 2.0 * s * delta,
        Variant::Star => s * delta,
    })
}

/// Mean of `ξ_k` over a point set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpSumValue {
    pub value: Complex64,
    pub n: usize,
}

impl ExpSumValue {
    pub fn abs(&self) -> f64 {
        self.value.norm()
    }
}

fn check_points(spec: &HybridSystemSpec, points: &PointSet) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if spec.bases() != points.bases() {
        if spec.dim() != points.dim() {
            return Err(Error::DimensionMismatch {
                expected: spec.dim(),
                got: points.dim(),
            });
        }
        let (l, r) = spec
            .bases()
            .into_iter()
            .zip(points.bases().iter().copied())
            .find(|(l, r)| l != r)
            .expect("bases differ");
        return Err(Error::BaseMismatch {
            left: l.get(),
            right: r.get(),
        });
    }
    Ok(())
}

/// `S_N(ξ_k, ω) = (1/N) Σ_n ξ_k(x_n)`, each term from its exact phase.
pub fn exp_sum(spec: &HybridSystemSpec, k: &[u64], points: &PointSet) -> Result<ExpSumValue> {
    check_points(spec, points)?;
    let mut acc = CompensatedSum::new();
    for p in points.points() {
        acc.add(xi_phase(spec, k, p)?.to_complex());
    }
    let n = points.len();
    Ok(ExpSumValue {
        value: acc.value() / n as f64,
        n,
    })
}

/// Precomputed per-coordinate phase residues for all `k ∈ Δ_b(g)`.
///
/// For `k_i < b_i^{g_i}` every coordinate phase has a modulus dividing
/// `R_i = b_i^{g_i}`, so the phase of `ξ_k(x_n)` is `Σ_i r_i(k_i, n) (M/R_i) / M`
/// with `M = lcm R_i`, an exact integer computation.
#[derive(Debug, Clone)]
struct ExpSumEngine {
    coords: Vec<(Base, SystemTag)>,
    g: Vec<u32>,
    radices: Vec<u64>,
    scale: Vec<u64>,
    modulus: u64,
    primes: Vec<u64>,
    n: usize,
    points: Vec<Vec<DigitVector>>,
    tables: Option<Vec<Vec<u32>>>,
    roots: Option<Vec<Complex64>>,
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn prime_factors(mut x: u64, out: &mut Vec<u64>) {
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            if !out.contains(&p) {
                out.push(p);
            }
            while x.is_multiple_of(p) {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 && !out.contains(&x) {
        out.push(x);
    }
}

impl ExpSumEngine {
    fn new(spec: &HybridSystemSpec, g: &[u32], delta: &Delta, points: &PointSet) -> Result<Self> {
        let radices = delta.radices().to_vec();
        let modulus = radices.iter().try_fold(1u64, |m, &r| {
            (m / gcd_u64(m, r)).checked_mul(r).ok_or(Error::Overflow)
        })?;
        let scale = radices.iter().map(|&r| modulus / r).collect();
        let mut primes = Vec::new();
        for &(b, _) in spec.coords() {
            prime_factors(b.get() as u64, &mut primes);
        }
        let mut engine = ExpSumEngine {
            coords: spec.coords().to_vec(),
            g: g.to_vec(),
            radices,
            scale,
            modulus,
            primes,
            n: points.len(),
            points: points.points().to_vec(),
            tables: None,
            roots: None,
        };
        let entries: usize = engine
            .radices
            .iter()
            .map(|&r| r as usize)
            .sum::<usize>()
            .saturating_mul(engine.n);
        if entries <= RESIDUE_TABLE_MAX {
            let tables = (0..engine.coords.len())
                .map(|i| {
                    let mut t = Vec::with_capacity(engine.radices[i] as usize * engine.n);
                    for ki in 0..engine.radices[i] {
                        for p in &engine.points {
                            t.push(engine.residue_direct(i, ki, &p[i]) as u32);
                        }
                    }
                    t
                })
                .collect();
            engine.tables = Some(tables);
        }
        if modulus <= ROOT_TABLE_MAX {
            engine.roots = Some(
                (0..modulus)
                    .map(|a| unit_root(a as u128, modulus as u128))
                    .collect(),
            );
        }
        Ok(engine)
    }

    /// Residue of coordinate `i`'s phase over `R_i`.
    fn residue_direct(&self, i: usize, k: u64, x: &DigitVector) -> u64 {
        let (base, tag) = self.coords[i];
        let radix = self.radices[i] as u128;
        match tag {
            SystemTag::Walsh => (walsh_residue(k, x, base) * (radix / base.get() as u128)) as u64,
            SystemTag::Badic => {
                let (a, m) = gamma_residue(k, x, base).expect("k < b^g keeps b^v in range");
                (a * (radix / m)) as u64
            }
        }
    }

    #[inline]
    fn residue(&self, i: usize, k: u64, n: usize) -> u64 {
        match &self.tables {
            Some(t) => t[i][k as usize * self.n + n] as u64,
            None => self.residue_direct(i, k, &self.points[n][i]),
        }
    }

    #[inline]
    fn root(&self, r: u64) -> Complex64 {
        match &self.roots {
            Some(t) => t[r as usize],
            None => unit_root(r as u128, self.modulus as u128),
        }
    }

    /// `|S_N(ξ_k)|`; exactly zero whenever cancellation is certified.
    fn abs_sum(&self, k: &[u64], scratch: &mut Vec<u64>) -> f64 {
        scratch.clear();
        let m = self.modulus as u128;
        let mut acc = CompensatedSum::new();
        for n in 0..self.n {
            let mut r = 0u128;
            for (i, &ki) in k.iter().enumerate() {
                r += self.residue(i, ki, n) as u128 * self.scale[i] as u128;
            }
            let r = (r % m) as u64;
            scratch.push(r);
            acc.add(self.root(r));
        }
        let abs = acc.value().norm() / self.n as f64;
        if abs < CANCELLATION_PROBE && self.cancels_exactly(scratch) {
            0.0
        } else {
            abs
        }
    }

    /// Sufficient certificate for `Σ_n e(r_n/M) = 0`: the multiset of residues
    /// is invariant under the shift by `M/p` for some prime `p | M`, so it splits
    /// into full cosets of the order-`p` roots of unity.
    fn cancels_exactly(&self, residues: &mut [u64]) -> bool {
        residues.sort_unstable();
        let mut counts: Vec<(u64, u32)> = Vec::new();
        for &r in residues.iter() {
            match counts.last_mut() {
                Some((last, c)) if *last == r => *c += 1,
                _ => counts.push((r, 1)),
            }
        }
        let lookup = |r: u64| {
            counts
                .binary_search_by_key(&r, |&(x, _)| x)
                .map_or(0, |i| counts[i].1)
        };
        self.primes.iter().any(|&p| {
            if !self.modulus.is_multiple_of(p) {
                return false;
            }
            let shift = self.modulus / p;
            counts
                .iter()
                .all(|&(r, c)| lookup((r + shift) % self.modulus) == c)
        })
    }
}

/// Tuning knobs for [`etk_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundOptions {
    pub budget: u64,
    pub per_k: bool,
    pub chunk_size: u64,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            budget: DEFAULT_BUDGET,
            per_k: false,
            chunk_size: DEFAULT_CHUNK_SIZE,
        }
    }
}

/// One row of the per-index table.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexRow {
    pub k: Vec<u64>,
    pub weight: f64,
    pub abs_sum: f64,
}

/// Partial result over one chunk of ranks.
#[derive(Debug, Clone, PartialEq)]
pub struct ChunkSum {
    pub index: u64,
    pub weighted: f64,
    pub max_abs_sum: f64,
    pub rows: Vec<IndexRow>,
}

/// Decomposition of a discrepancy bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub variant: Variant,
    pub epsilon: f64,
    pub weighted_sum: f64,
    pub total: f64,
    /// `max_{k ∈ Δ*} |S_N(ξ_k)|`, the tightest global bound `B`.
    pub max_abs_sum: f64,
    pub terms: u64,
    pub per_k: Option<Vec<IndexRow>>,
}

/// A prepared bound computation; chunks can be evaluated in any order or in
/// parallel and then reduced with [`BoundPlan::finish`].
#[derive(Debug, Clone)]
pub struct BoundPlan {
    engine: ExpSumEngine,
    delta: Delta,
    variant: Variant,
    epsilon: f64,
    options: BoundOptions,
}

impl BoundPlan {
    pub fn new(
        spec: &HybridSystemSpec,
        g: &[u32],
        points: &PointSet,
        variant: Variant,
        options: BoundOptions,
    ) -> Result<Self> {
        let bases = spec.bases();
        check_resolution(&bases, g)?;
        check_points(spec, points)?;
        if options.chunk_size == 0 {
            return Err(Error::Invalid("chunk size must be positive"));
        }
        let delta = Delta::new(&bases, g, true, options.budget)?;
        let epsilon = epsilon_terms(&bases, g, variant)?;
        let engine = ExpSumEngine::new(spec, g, &delta, points)?;
        Ok(BoundPlan {
            engine,
            delta,
            variant,
            epsilon,
            options,
        })
    }

    pub fn num_chunks(&self) -> u64 {
        self.delta.len().div_ceil(self.options.chunk_size)
    }

    pub fn chunk(&self, index: u64) -> ChunkSum {
        let start = index * self.options.chunk_size;
        let end = (start + self.options.chunk_size).min(self.delta.len());
        let mut scratch = Vec::with_capacity(self.engine.n);
        let mut weighted = 0.0;
        let mut max_abs_sum: f64 = 0.0;
        let mut rows = Vec::new();
        for k in self.delta.iter_range(start..end) {
            let weight: f64 = k
                .iter()
                .zip(&self.engine.coords)
                .map(|(&ki, &(b, _))| rho_for(self.variant, ki, b))
                .product();
            let abs_sum = self.engine.abs_sum(&k, &mut scratch);
            weighted += weight * abs_sum;
            max_abs_sum = max_abs_sum.max(abs_sum);
            if self.options.per_k {
                rows.push(IndexRow { k, weight, abs_sum });
            }
        }
        ChunkSum {
            index,
            weighted,
            max_abs_sum,
            rows,
        }
    }

    /// Reduces chunk results in chunk order.
    pub fn finish(&self, chunks: impl IntoIterator<Item = ChunkSum>) -> BoundReport {
        let mut chunks: Vec<ChunkSum> = chunks.into_iter().collect();
        chunks.sort_by_key(|c| c.index);
        let mut acc = CompensatedSum::new();
        let mut max_abs_sum: f64 = 0.0;
        let mut per_k = self.options.per_k.then(Vec::new);
        for c in chunks {
            acc.add(Complex64::new(c.weighted, 0.0));
            max_abs_sum = max_abs_sum.max(c.max_abs_sum);
            if let Some(rows) = per_k.as_mut() {
                rows.extend(c.rows);
            }
        }
        let weighted_sum = acc.value().re;
        BoundReport {
            variant: self.variant,
            epsilon: self.epsilon,
            weighted_sum,
            total: self.epsilon + weighted_sum,
            max_abs_sum,
            terms: self.delta.len(),
            per_k,
        }
    }

    pub fn run(&self) -> BoundReport {
        self.finish((0..self.num_chunks()).map(|i| self.chunk(i)))
    }

    /// The resolution vector of the plan.
    pub fn resolution(&self) -> &[u32] {
        &self.engine.g
    }
}

/// The hybrid discrepancy bound for the given resolution.
pub fn etk_bound(
    spec: &HybridSystemSpec,
    g: &[u32],
    points: &PointSet,
    variant: Variant,
    options: &BoundOptions,
) -> Result<BoundReport> {
    Ok(BoundPlan::new(spec, g, points, variant, *options)?.run())
}

/// `C(b) = (1/b) Σ_{a=1}^{b-1} 1/sin(πa/b)`.
pub fn cb_constant(base: Base) -> f64 {
    let b = base.get() as u64;
    let mut acc = CompensatedSum::new();
    for a in 1..b {
        acc.add(Complex64::new(1.0 / sin_pi_fraction(a, b), 0.0));
    }
    acc.value().re / b as f64
}

/// Closed form of `Σ_{k ∈ Δ_b(g)} ρ_b(k)`: `Π(1 + 2 g_i C(b_i))`, or
/// `Π(1 + g_i C(b_i))` for the starred weights.
pub fn weight_sum(bases: &[Base], g: &[u32], variant: Variant) -> Result<f64> {
    if bases.len() != g.len() {
        return Err(Error::DimensionMismatch {
            expected: bases.len(),
            got: g.len(),
        });
    }
    let factor = if variant.is_star() { 1.0 } else { 2.0 };
    Ok(bases
        .iter()
        .zip(g)
        .map(|(&b, &gi)| 1.0 + factor * gi as f64 * cb_constant(b))
        .product())
}

/// `Σ_{k ∈ Δ_b(g)} ρ_b(k)` by enumeration (per-coordinate sums multiplied).
pub fn weight_sum_explicit(
    bases: &[Base],
    g: &[u32],
    variant: Variant,
    budget: u64,
) -> Result<f64> {
    let delta = Delta::new(bases, g, false, budget)?;
    let mut acc = CompensatedSum::new();
    for k in delta.iter() {
        acc.add(Complex64::new(rho_vec(&k, bases, variant)?, 0.0));
    }
    Ok(acc.value().re)
}

/// `ε + B·Π(2.43 g_i ln b_i + 1)` (extreme) or `ε* + B·Π(1.22 g_i ln b_i + 1)`.
pub fn corollary_bound(global: f64, bases: &[Base], g: &[u32], variant: Variant) -> Result<f64> {
    if global.is_nan() || global < 0.0 {
        return Err(Error::Invalid("global bound B must be non-negative"));
    }
    let eps = epsilon_terms(bases, g, variant)?;
    let c = match variant {
        Variant::Extreme => EXTREME_LOG_CONSTANT,
        Variant::Star => STAR_LOG_CONSTANT,
    };
    let prod: f64 = bases
        .iter()
        .zip(g)
        .map(|(&b, &gi)| c * gi as f64 * libm::log(b.get() as f64) + 1.0)
        .product();
    Ok(eps + global * prod)
}
