//! Acceptance criteria. Every test prints one `criterion N ... PASS|FAIL`
//! line and then asserts it. The line goes to the process stdout directly,
//! so it shows up even when the harness captures test output.

use std::io::Write;
use std::time::{Duration, Instant};

use hetk::sweep::{trials, GeneratorKind, SweepParams, Trial};
use hetk::verify::{
    fc_bounds, fourier, full_period, orthonormality, reconstruction, weights, SuiteReport,
};
use hetk_core::bounds::{corollary_bound, epsilon_terms, etk_bound, BoundOptions, Variant};
use hetk_core::oracle::{discrepancy_exact, OracleCaps};
use hetk_core::systems::SystemTag;

const SEED: u64 = 0x5eed_2024;
const TRIALS: usize = 256;

fn verdict(n: u32, what: &str, ok: bool, detail: &str) {
    let line = format!(
        "criterion {n} {what}: {} ({detail})\n",
        if ok { "PASS" } else { "FAIL" }
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

fn suite(n: u32, what: &str, reports: &[SuiteReport]) {
    let ok = reports.iter().all(SuiteReport::passed);
    let detail = reports
        .iter()
        .flat_map(|r| &r.checks)
        .map(|c| {
            format!(
                "{}/{} max err {:.1e}",
                c.total - c.failed,
                c.total,
                c.max_error
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    verdict(n, what, ok, &detail);
    for r in reports {
        if !r.passed() {
            print!("{r}");
        }
    }
    assert!(ok, "criterion {n} failed");
}

fn sweep(params: &SweepParams) -> Vec<Trial> {
    let all: Vec<Trial> = trials(params, SEED, TRIALS).map(|t| t.unwrap()).collect();
    for kind in GeneratorKind::ALL {
        assert!(all.iter().any(|t| t.kind == kind));
    }
    for tag in [SystemTag::Walsh, SystemTag::Badic] {
        assert!(all.iter().any(|t| t.spec.tags().contains(&tag)));
    }
    all
}

fn domination(n: u32, variant: Variant, params: SweepParams, limit: Duration) {
    let start = Instant::now();
    let caps = OracleCaps::default();
    let options = BoundOptions::default();
    let mut worst = f64::INFINITY;
    let mut failures = Vec::new();
    for t in sweep(&params) {
        let bound = etk_bound(&t.spec, &t.g, &t.points, variant, &options).unwrap();
        let exact = discrepancy_exact(&t.points, variant, &caps).unwrap();
        let margin = bound.total - exact.value;
        worst = worst.min(margin);
        if margin < -1e-9 {
            failures.push(format!(
                "#{} {} g={:?}: margin {margin}",
                t.index, t.description, t.g
            ));
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < limit;
    verdict(
        n,
        &format!("{variant} domination"),
        ok,
        &format!(
            "{TRIALS} trials, seed {SEED}, min margin {worst:.3e}, {:.1}s",
            elapsed.as_secs_f64()
        ),
    );
    for f in &failures {
        println!("    {f}");
    }
    assert!(ok, "criterion {n} failed");
}

#[test]
fn criterion_1_extreme_domination() {
    domination(
        1,
        Variant::Extreme,
        SweepParams::extreme(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_2_star_domination() {
    domination(
        2,
        Variant::Star,
        SweepParams::star(),
        Duration::from_secs(180),
    );
}

#[test]
fn criterion_3_full_period() {
    suite(3, "exact full-period case", &[full_period(&[2, 3], 4)]);
}

#[test]
fn criterion_4_orthonormality() {
    suite(4, "orthonormality", &[orthonormality(&[2, 3], 3, 81)]);
}

#[test]
fn criterion_5_elint_coefficients() {
    suite(
        5,
        "elint Fourier coefficients",
        &[fourier(&[2, 3, 5], 3, 64)],
    );
}

#[test]
fn criterion_6_reconstruction() {
    let r = SuiteReport {
        suite: "reconstruction",
        checks: vec![reconstruction(&[2, 3, 5], 2, 64)],
    };
    suite(6, "pointwise reconstruction", &[r]);
}

#[test]
fn criterion_7_anchored_estimate() {
    suite(
        7,
        "anchored coefficient estimate",
        &[fc_bounds(&[2, 3, 5], 4)],
    );
}

#[test]
fn criterion_8_weights_and_corollary() {
    let w = weights();
    let mut failures = Vec::new();
    let mut count = 0;
    let options = BoundOptions::default();
    for t in sweep(&SweepParams::extreme()) {
        let bases = t.spec.bases();
        for variant in [Variant::Extreme, Variant::Star] {
            let bound = etk_bound(&t.spec, &t.g, &t.points, variant, &options).unwrap();
            let cor = corollary_bound(bound.max_abs_sum, &bases, &t.g, variant).unwrap();
            count += 1;
            if cor < bound.total {
                failures.push(format!(
                    "#{} {variant}: corollary {cor} < bound {}",
                    t.index, bound.total
                ));
            }
        }
    }
    let ok = w.passed() && failures.is_empty();
    let detail = w
        .checks
        .iter()
        .map(|c| format!("{}/{}", c.total - c.failed, c.total))
        .chain([format!("corollary {}/{count}", count - failures.len())])
        .collect::<Vec<_>>()
        .join("; ");
    verdict(8, "weight identities and corollary", ok, &detail);
    if !w.passed() {
        print!("{w}");
    }
    for f in &failures {
        println!("    {f}");
    }
    assert!(ok, "criterion 8 failed");
}

/// `ε ≤ 2sδ` and `ε* ≤ sδ`, checked in exact integer arithmetic with
/// `ε = (P − Π(b_i^{g_i} − c))/P`, `P = Π b_i^{g_i}`, `δ = 1/min b_i^{g_i}`.
#[test]
fn criterion_9_error_term_majorants() {
    let mut failures = Vec::new();
    let mut count = 0;
    for t in sweep(&SweepParams::extreme()) {
        let radix: Vec<i128> = t
            .spec
            .bases()
            .iter()
            .zip(&t.g)
            .map(|(b, &g)| (b.get() as i128).pow(g))
            .collect();
        let s = radix.len() as i128;
        let p: i128 = radix.iter().product();
        let smallest = *radix.iter().min().unwrap();
        for (variant, c) in [(Variant::Extreme, 2), (Variant::Star, 1)] {
            let q: i128 = radix.iter().map(|r| r - c).product();
            count += 1;
            // (p − q)/p ≤ c·s/smallest
            if (p - q) * smallest > c * s * p {
                failures.push(format!(
                    "#{} {variant} g={:?}: majorant violated",
                    t.index, t.g
                ));
            }
            let eps = epsilon_terms(&t.spec.bases(), &t.g, variant).unwrap();
            let exact = (p - q) as f64 / p as f64;
            if (eps - exact).abs() > 1e-15 * exact {
                failures.push(format!(
                    "#{} {variant}: ε = {eps}, expected {exact}",
                    t.index
                ));
            }
        }
    }
    let ok = failures.is_empty();
    verdict(
        9,
        "error-term majorants",
        ok,
        &format!("{}/{count} (ε, variant) pairs", count - failures.len()),
    );
    for f in &failures {
        println!("    {f}");
    }
    assert!(ok, "criterion 9 failed");
}
