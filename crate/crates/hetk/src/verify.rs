//! Verification suites. Each check counts cases and records the largest
//! observed error; a case fails when its error exceeds the check tolerance.

use std::fmt;

use hetk_core::badic::{Base, Delta, DigitVector, ExactFraction, DEFAULT_BUDGET};
use hetk_core::bounds::{
    cb_constant, corollary_bound, epsilon_remark_bound, epsilon_terms, etk_bound, exp_sum,
    weight_sum, weight_sum_explicit, BoundOptions, Variant, EXTREME_LOG_CONSTANT,
    STAR_LOG_CONSTANT,
};
use hetk_core::elint::{
    elint_contains, elint_fourier_coeff, elint_partition, fc_upper_bound, reconstruct_indicator,
    AnchoredCoefficients, Elint,
};
use hetk_core::oracle::{discrepancy_exact, OracleCaps, VIOLATION_TOLERANCE};
use hetk_core::phase::CompensatedSum;
use hetk_core::sequences::SequenceConfig;
use hetk_core::systems::{coordinate_phase, HybridSystemSpec, SystemTag};
use num_complex::Complex64;

use crate::sweep::{trials, SweepParams};

pub const ORTHONORMALITY_TOLERANCE: f64 = 1e-12;
pub const FOURIER_TOLERANCE: f64 = 1e-12;
pub const RECONSTRUCTION_TOLERANCE: f64 = 1e-10;
pub const FC_TOLERANCE: f64 = 1e-12;
pub const WEIGHT_TOLERANCE: f64 = 1e-10;
pub const VANISHING_SUM_TOLERANCE: f64 = 1e-14;

const MAX_RECORDED_FAILURES: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub total: u64,
    pub failed: u64,
    pub max_error: f64,
    pub failures: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            total: 0,
            failed: 0,
            max_error: 0.0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.total > 0
    }

    /// Records one case with error `error` (NaN counts as failure).
    pub fn record(&mut self, error: f64, tolerance: f64, context: impl FnOnce() -> String) {
        self.total += 1;
        if error > self.max_error || error.is_nan() {
            self.max_error = error;
        }
        if error.is_nan() || error > tolerance {
            self.fail(context);
        }
    }

    pub fn record_bool(&mut self, ok: bool, context: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.fail(context);
        }
    }

    fn fail(&mut self, context: impl FnOnce() -> String) {
        self.failed += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(context());
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {}/{} passed, max error {:.3e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.total - self.failed,
            self.total,
            self.max_error
        )?;
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}]", self.suite)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

fn b(x: u64) -> Base {
    Base::new(x).expect("suite bases are at least 2")
}

/// All `(bases, g)` with `s ≤ max_dim`, bases from `pool`, `g_i ≥ 1` and
/// `Π b_i^{g_i} ≤ max_cells`.
pub fn small_resolutions(
    pool: &[u64],
    max_dim: usize,
    max_cells: u64,
) -> Vec<(Vec<Base>, Vec<u32>)> {
    fn extend(
        pool: &[u64],
        left: usize,
        room: u64,
        bases: &mut Vec<u64>,
        g: &mut Vec<u32>,
        out: &mut Vec<(Vec<Base>, Vec<u32>)>,
    ) {
        if !bases.is_empty() {
            out.push((bases.iter().map(|&x| b(x)).collect(), g.clone()));
        }
        if left == 0 {
            return;
        }
        for &base in pool {
            let mut radix = base;
            let mut gi = 1;
            while radix <= room {
                bases.push(base);
                g.push(gi);
                extend(pool, left - 1, room / radix, bases, g, out);
                bases.pop();
                g.pop();
                radix *= base;
                gi += 1;
            }
        }
    }
    let mut out = Vec::new();
    extend(
        pool,
        max_dim,
        max_cells,
        &mut Vec::new(),
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Every tag assignment for the given bases.
pub fn all_specs(bases: &[Base]) -> Vec<HybridSystemSpec> {
    (0..1u32 << bases.len())
        .map(|mask| {
            let tags: Vec<SystemTag> = (0..bases.len())
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        SystemTag::Badic
                    } else {
                        SystemTag::Walsh
                    }
                })
                .collect();
            HybridSystemSpec::from_parts(bases, &tags).expect("matching lengths")
        })
        .collect()
}

fn describe(spec: &HybridSystemSpec, g: &[u32]) -> String {
    let coords: Vec<String> = spec
        .coords()
        .iter()
        .zip(g)
        .map(|(&(base, tag), gi)| format!("{tag}{base}^{gi}"))
        .collect();
    coords.join(" ")
}

/// `values[k][c] = ξ_k(corner of cell c)` for `k ∈ Δ_b(h)` and all cells of
/// resolution `h`, assembled as products of one-dimensional factors.
fn value_table(
    spec: &HybridSystemSpec,
    h: &[u32],
) -> hetk_core::Result<(Vec<Vec<Complex64>>, Vec<Elint>)> {
    let bases = spec.bases();
    let factors: Vec<Vec<Vec<Complex64>>> = spec
        .coords()
        .iter()
        .zip(h)
        .map(|(&(base, tag), &hi)| {
            let r = base.pow_u64(hi).ok_or(hetk_core::Error::Overflow)?;
            (0..r)
                .map(|k| {
                    (0..r)
                        .map(|c| {
                            let x = DigitVector::from_integer(c, base).with_precision(hi as usize);
                            coordinate_phase(tag, k, &x, base).map(|p| p.to_complex())
                        })
                        .collect()
                })
                .collect()
        })
        .collect::<hetk_core::Result<_>>()?;
    let cells: Vec<Elint> = elint_partition(&bases, h, DEFAULT_BUDGET)?.collect();
    let table = Delta::new(&bases, h, false, DEFAULT_BUDGET)?
        .iter()
        .map(|k| {
            cells
                .iter()
                .map(|cell| {
                    k.iter()
                        .zip(cell.index())
                        .zip(&factors)
                        .map(|((&ki, &ci), f)| f[ki as usize][ci as usize])
                        .product()
                })
                .collect()
        })
        .collect();
    Ok((table, cells))
}

/// `∫ ξ_k conj(ξ_l) = δ_{k,l}` for all `k, l ∈ Δ_b(g)`, evaluated as a sum
/// over the elint partition of resolution `g`.
pub fn orthonormality(pool: &[u64], max_dim: usize, max_cells: u64) -> SuiteReport {
    let mut check = Check::new(format!(
        "orthonormality (bases {pool:?}, s ≤ {max_dim}, Π b^g ≤ {max_cells}, tol {ORTHONORMALITY_TOLERANCE:e})"
    ));
    for (bases, g) in small_resolutions(pool, max_dim, max_cells) {
        for spec in all_specs(&bases) {
            let (table, cells) = match value_table(&spec, &g) {
                Ok(t) => t,
                Err(e) => {
                    check.record_bool(false, || format!("{}: {e}", describe(&spec, &g)));
                    continue;
                }
            };
            let scale = 1.0 / cells.len() as f64;
            for (ki, vk) in table.iter().enumerate() {
                for (li, vl) in table.iter().enumerate() {
                    let mut acc = CompensatedSum::new();
                    for (x, y) in vk.iter().zip(vl) {
                        acc.add(x * y.conj());
                    }
                    let ip = acc.value() * scale;
                    let expect = if ki == li { 1.0 } else { 0.0 };
                    let err = (ip - Complex64::new(expect, 0.0)).norm();
                    check.record(err, ORTHONORMALITY_TOLERANCE, || {
                        format!("{} ranks ({ki},{li}): {ip}", describe(&spec, &g))
                    });
                }
            }
        }
    }
    SuiteReport {
        suite: "orthonormality",
        checks: vec![check],
    }
}

/// `partial[k][c] = ∫_{I_c} conj(ξ_k)` in one coordinate, summed over the
/// cells of resolution `g + 1` inside each cell `c` of resolution `g`.
fn coordinate_integrals(
    base: Base,
    tag: SystemTag,
    g: u32,
) -> hetk_core::Result<Vec<Vec<Complex64>>> {
    let coarse = base.pow_u64(g).ok_or(hetk_core::Error::Overflow)?;
    let fine = coarse * base.get() as u64;
    let fine_corners: Vec<DigitVector> = (0..fine)
        .map(|c| DigitVector::from_integer(c, base).with_precision(g as usize + 1))
        .collect();
    let members: Vec<Vec<usize>> = (0..coarse)
        .map(|c| {
            let e = Elint::new(vec![base], vec![g], vec![c])?;
            let mut inside = Vec::new();
            for (i, x) in fine_corners.iter().enumerate() {
                if elint_contains(&e, std::slice::from_ref(x))? {
                    inside.push(i);
                }
            }
            Ok(inside)
        })
        .collect::<hetk_core::Result<_>>()?;
    let measure = 1.0 / fine as f64;
    (0..fine)
        .map(|k| {
            let row: Vec<Complex64> = fine_corners
                .iter()
                .map(|x| coordinate_phase(tag, k, x, base).map(|p| p.to_complex().conj()))
                .collect::<hetk_core::Result<_>>()?;
            Ok(members
                .iter()
                .map(|inside| {
                    let mut acc = CompensatedSum::new();
                    for &i in inside {
                        acc.add(row[i]);
                    }
                    acc.value() * measure
                })
                .collect())
        })
        .collect()
}

/// Elint coefficients against cell-sum integration at resolution `g + 1`,
/// for all `k ∈ Δ_b(g + 1)`; exact zeros outside `Δ_b(g)`. Both the
/// characters and the elints are products, so the partition sum over an
/// elint is the product of one-dimensional partition sums.
pub fn fourier(pool: &[u64], max_dim: usize, max_cells: u64) -> SuiteReport {
    let mut matches = Check::new(format!(
        "elint coefficients vs cell sums (bases {pool:?}, s ≤ {max_dim}, Π b^g ≤ {max_cells}, tol {FOURIER_TOLERANCE:e})"
    ));
    let mut zeros = Check::new("elint coefficients vanish exactly outside Δ(g)");
    for (bases, g) in small_resolutions(pool, max_dim, max_cells) {
        let h: Vec<u32> = g.iter().map(|x| x + 1).collect();
        let radix: Vec<u64> = bases
            .iter()
            .zip(&g)
            .map(|(b, &gi)| b.pow_u64(gi).unwrap())
            .collect();
        let ks: Vec<Vec<u64>> = Delta::new(&bases, &h, false, DEFAULT_BUDGET)
            .expect("small grid")
            .iter()
            .collect();
        let coarse: Vec<Elint> = elint_partition(&bases, &g, DEFAULT_BUDGET)
            .expect("small grid")
            .collect();
        for spec in all_specs(&bases) {
            let integrals = match spec
                .coords()
                .iter()
                .zip(&g)
                .map(|(&(base, tag), &gi)| coordinate_integrals(base, tag, gi))
                .collect::<hetk_core::Result<Vec<_>>>()
            {
                Ok(t) => t,
                Err(e) => {
                    matches.record_bool(false, || format!("{}: {e}", describe(&spec, &g)));
                    continue;
                }
            };
            for e in &coarse {
                for k in &ks {
                    let direct: Complex64 = k
                        .iter()
                        .zip(e.index())
                        .zip(&integrals)
                        .map(|((&ki, &ci), t)| t[ki as usize][ci as usize])
                        .product();
                    let coeff = match elint_fourier_coeff(e, k, &spec) {
                        Ok(c) => c,
                        Err(err) => {
                            matches.record_bool(false, || format!("k={k:?}: {err}"));
                            continue;
                        }
                    };
                    matches.record((direct - coeff).norm(), FOURIER_TOLERANCE, || {
                        format!(
                            "{} c={:?} k={k:?}: {coeff} vs {direct}",
                            describe(&spec, &g),
                            e.index()
                        )
                    });
                    if k.iter().zip(&radix).any(|(&ki, &r)| ki >= r) {
                        zeros.record_bool(coeff == Complex64::new(0.0, 0.0), || {
                            format!("{} c={:?} k={k:?}: {coeff}", describe(&spec, &g), e.index())
                        });
                    }
                }
            }
        }
    }
    SuiteReport {
        suite: "fourier",
        checks: vec![matches, zeros],
    }
}

/// `Σ_{k ∈ Δ_b(g)} \hat 1_I(k) ξ_k(x) = 1_I(x)` at every grid point of resolution `g + 1`.
pub fn reconstruction(pool: &[u64], max_dim: usize, max_cells: u64) -> Check {
    let mut check = Check::new(format!(
        "pointwise reconstruction (bases {pool:?}, s ≤ {max_dim}, Π b^g ≤ {max_cells}, tol {RECONSTRUCTION_TOLERANCE:e})"
    ));
    for (bases, g) in small_resolutions(pool, max_dim, max_cells) {
        let h: Vec<u32> = g.iter().map(|x| x + 1).collect();
        let grid: Vec<Vec<DigitVector>> = elint_partition(&bases, &h, DEFAULT_BUDGET)
            .expect("small grid")
            .map(|c| c.corner())
            .collect();
        for spec in all_specs(&bases) {
            for e in elint_partition(&bases, &g, DEFAULT_BUDGET).expect("small grid") {
                for x in &grid {
                    let expect = if elint_contains(&e, x).expect("same bases") {
                        1.0
                    } else {
                        0.0
                    };
                    match reconstruct_indicator(&e, &spec, x, DEFAULT_BUDGET) {
                        Ok(v) => check.record((v - expect).abs(), RECONSTRUCTION_TOLERANCE, || {
                            format!("{} c={:?} x={x:?}: {v}", describe(&spec, &g), e.index())
                        }),
                        Err(err) => check.record_bool(false, || format!("{err}")),
                    }
                }
            }
        }
    }
    check
}

pub fn fourier_suite() -> SuiteReport {
    let mut report = fourier(&[2, 3, 5], 3, 64);
    report.checks.push(reconstruction(&[2, 3, 5], 2, 64));
    report
}

/// `|\hat 1_{[0,β)}(k)| ≤ 1/(b^t sin(π k_{t-1}/b))` for `1 ≤ k < b^depth`,
/// `β ∈ {a / b^depth}`.
pub fn fc_bounds(pool: &[u64], depth: u32) -> SuiteReport {
    let mut check = Check::new(format!(
        "anchored coefficient estimate (bases {pool:?}, k < b^{depth}, β on the b^-{depth} grid, tol +{FC_TOLERANCE:e})"
    ));
    for &base in pool {
        let bb = b(base);
        let den = bb.pow(depth).expect("small");
        for tag in [SystemTag::Walsh, SystemTag::Badic] {
            for k in 1..den as u64 {
                let bound = fc_upper_bound(k, bb).expect("k ≥ 1");
                let table = match AnchoredCoefficients::new(k, bb, tag, DEFAULT_BUDGET) {
                    Ok(t) => t,
                    Err(e) => {
                        check.record_bool(false, || format!("b={base} k={k}: {e}"));
                        continue;
                    }
                };
                for a in 0..=den {
                    let beta = ExactFraction::new(a, den).expect("nonzero denominator");
                    match table.coefficient(beta) {
                        Ok(c) => check.record((c.norm() - bound).max(0.0), FC_TOLERANCE, || {
                            format!(
                                "{tag}{base} k={k} β={a}/{den}: |c|={} bound={bound}",
                                c.norm()
                            )
                        }),
                        Err(e) => check.record_bool(false, || format!("{e}")),
                    }
                }
            }
        }
    }
    SuiteReport {
        suite: "fc-bounds",
        checks: vec![check],
    }
}

/// Closed-form weight sums, the `C(b)` estimate and the corollary constants.
pub fn weights() -> SuiteReport {
    let mut closed = Check::new(format!(
        "weight sums: closed form vs explicit (bases ≤ 5, g_i ≤ 3, s ≤ 2, tol {WEIGHT_TOLERANCE:e} relative)"
    ));
    let pool = [2u64, 3, 4, 5];
    let mut configs: Vec<(Vec<Base>, Vec<u32>)> = Vec::new();
    for &b1 in &pool {
        for g1 in 1..=3 {
            configs.push((vec![b(b1)], vec![g1]));
            for &b2 in &pool {
                for g2 in 1..=3 {
                    configs.push((vec![b(b1), b(b2)], vec![g1, g2]));
                }
            }
        }
    }
    for (bases, g) in &configs {
        for v in [Variant::Extreme, Variant::Star] {
            let c = weight_sum(bases, g, v);
            let e = weight_sum_explicit(bases, g, v, DEFAULT_BUDGET);
            match (c, e) {
                (Ok(c), Ok(e)) => closed.record((c - e).abs() / e, WEIGHT_TOLERANCE, || {
                    format!("{v} {bases:?} {g:?}: {c} vs {e}")
                }),
                (Err(err), _) | (_, Err(err)) => closed.record_bool(false, || format!("{err}")),
            }
        }
    }

    let mut cb = Check::new("C(b) < (2/π) ln b + 2/5 for 2 ≤ b ≤ 100");
    for base in 2..=100u64 {
        let c = cb_constant(b(base));
        let limit = 2.0 / std::f64::consts::PI * (base as f64).ln() + 0.4;
        cb.record_bool(c < limit, || format!("b={base}: C={c} limit={limit}"));
    }

    let mut constants = Check::new("log constants dominate weight factors (b ≤ 100, g ≤ 10)");
    for base in 2..=100u64 {
        let c = cb_constant(b(base));
        let ln = (base as f64).ln();
        for g in 1..=10u32 {
            let g = g as f64;
            constants.record_bool(
                EXTREME_LOG_CONSTANT * g * ln + 1.0 >= 1.0 + 2.0 * g * c,
                || format!("extreme b={base} g={g}"),
            );
            constants.record_bool(STAR_LOG_CONSTANT * g * ln + 1.0 >= 1.0 + g * c, || {
                format!("star b={base} g={g}")
            });
        }
    }
    SuiteReport {
        suite: "weights",
        checks: vec![closed, cb, constants],
    }
}

/// Randomized domination trials for one variant, with the corollary and
/// error-term checks on every trial.
pub fn domination(
    params: &SweepParams,
    variant: Variant,
    trial_count: usize,
    seed: u64,
) -> SuiteReport {
    let caps = OracleCaps::default();
    let options = BoundOptions::default();
    let mut dom = Check::new(format!(
        "{variant} domination over {trial_count} trials (seed {seed}, margin ≥ -{VIOLATION_TOLERANCE:e})"
    ));
    let mut cor = Check::new(format!(
        "{variant} corollary bound ≥ bound with B = max |S_N|"
    ));
    let mut remark = Check::new(format!(
        "{variant} error term ≤ majorant sδ (star) or 2sδ (extreme)"
    ));
    for t in trials(params, seed, trial_count) {
        let t = match t {
            Ok(t) => t,
            Err(e) => {
                dom.record_bool(false, || format!("trial generation: {e}"));
                continue;
            }
        };
        let exact = discrepancy_exact(&t.points, variant, &caps);
        let bound = etk_bound(&t.spec, &t.g, &t.points, variant, &options);
        let (exact, bound) = match (exact, bound) {
            (Ok(e), Ok(b)) => (e, b),
            (Err(e), _) | (_, Err(e)) => {
                dom.record_bool(false, || format!("#{} {}: {e}", t.index, t.description));
                continue;
            }
        };
        let margin = bound.total - exact.value;
        dom.record((-margin).max(0.0), VIOLATION_TOLERANCE, || {
            format!(
                "#{} {} g={:?}: bound {} < exact {}",
                t.index, t.description, t.g, bound.total, exact.value
            )
        });
        let bases = t.spec.bases();
        match corollary_bound(bound.max_abs_sum, &bases, &t.g, variant) {
            Ok(c) => cor.record((bound.total - c).max(0.0), 1e-12, || {
                format!(
                    "#{} {}: corollary {c} < bound {}",
                    t.index, t.description, bound.total
                )
            }),
            Err(e) => cor.record_bool(false, || format!("{e}")),
        }
        match (
            epsilon_terms(&bases, &t.g, variant),
            epsilon_remark_bound(&bases, &t.g, variant),
        ) {
            (Ok(e), Ok(r)) => remark.record((e - r).max(0.0), 0.0, || {
                format!("#{} g={:?}: ε={e} > {r}", t.index, t.g)
            }),
            (Err(e), _) | (_, Err(e)) => remark.record_bool(false, || format!("{e}")),
        }
    }
    SuiteReport {
        suite: "domination",
        checks: vec![dom, cor, remark],
    }
}

/// First `b^g` van der Corput points: every exponential sum vanishes and the
/// star bound, its error term and the exact star discrepancy all equal `b^{-g}`.
pub fn full_period(pool: &[u64], max_g: u32) -> SuiteReport {
    let mut sums = Check::new(format!(
        "full period: |S_N| ≤ {VANISHING_SUM_TOLERANCE:e} on Δ*(g)"
    ));
    let mut tight = Check::new("full period: star bound = ε* = oracle = b^-g, ratio 1");
    let options = BoundOptions {
        per_k: true,
        ..BoundOptions::default()
    };
    for &base in pool {
        let bb = b(base);
        for g in 1..=max_g {
            let n = bb.pow_u64(g).expect("small") as usize;
            let pts = SequenceConfig::VanDerCorput { base: bb }
                .generate(n)
                .expect("van der Corput");
            for tag in [SystemTag::Walsh, SystemTag::Badic] {
                let spec = HybridSystemSpec::from_parts(&[bb], &[tag]).expect("one coordinate");
                let bound = etk_bound(&spec, &[g], &pts, Variant::Star, &options).expect("small");
                for row in bound.per_k.as_deref().unwrap_or_default() {
                    let direct = exp_sum(&spec, &row.k, &pts).expect("same spec").abs();
                    sums.record(row.abs_sum.max(direct), VANISHING_SUM_TOLERANCE, || {
                        format!(
                            "{tag}{base} g={g} k={:?}: {} / {direct}",
                            row.k, row.abs_sum
                        )
                    });
                }
                let exact = discrepancy_exact(&pts, Variant::Star, &OracleCaps::default())
                    .expect("within caps");
                let target = ExactFraction::new(1, n as u128).expect("positive");
                let inv = 1.0 / n as f64;
                let ok = bound.total == inv
                    && bound.epsilon == inv
                    && bound.weighted_sum == 0.0
                    && exact.exact == Some(target)
                    && bound.total / exact.value == 1.0;
                tight.record_bool(ok, || {
                    format!(
                        "{tag}{base} g={g}: bound {} ε* {} exact {:?}",
                        bound.total, bound.epsilon, exact.exact
                    )
                });
            }
        }
    }
    SuiteReport {
        suite: "full-period",
        checks: vec![sums, tight],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Orthonormality,
    Fourier,
    FcBounds,
    Weights,
    Domination,
    All,
}

/// Runs a named suite; `trials` and `seed` drive the randomized domination sweep.
pub fn run_suite(suite: Suite, trials: usize, seed: u64) -> Vec<SuiteReport> {
    match suite {
        Suite::Orthonormality => vec![orthonormality(&[2, 3], 3, 81)],
        Suite::Fourier => vec![fourier_suite()],
        Suite::FcBounds => vec![fc_bounds(&[2, 3, 5], 4)],
        Suite::Weights => vec![weights()],
        Suite::Domination => vec![
            domination(&SweepParams::extreme(), Variant::Extreme, trials, seed),
            domination(&SweepParams::star(), Variant::Star, trials, seed),
            full_period(&[2, 3], 4),
        ],
        Suite::All => [
            Suite::Orthonormality,
            Suite::Fourier,
            Suite::FcBounds,
            Suite::Weights,
            Suite::Domination,
        ]
        .into_iter()
        .flat_map(|s| run_suite(s, trials, seed))
        .collect(),
    }
}
