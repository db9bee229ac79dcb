//! Seeded random experiment configurations for domination checks.

use std::ops::RangeInclusive;

use hetk_core::badic::Base;
use hetk_core::sequences::{hybrid_points_from, PointSet, SequenceConfig};
use hetk_core::systems::{HybridSystemSpec, SystemTag};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::generator::{format_tags, random_matrices};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    VanDerCorput,
    Halton,
    RandomMatrices,
    Hybrid,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 4] = [
        GeneratorKind::VanDerCorput,
        GeneratorKind::Halton,
        GeneratorKind::RandomMatrices,
        GeneratorKind::Hybrid,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepParams {
    pub dims: RangeInclusive<usize>,
    pub bases: Vec<u64>,
    pub max_points: usize,
    /// Upper limit for every `b_i^{g_i}`.
    pub max_radix: u64,
    /// Largest index offset of the first point.
    pub max_start: u64,
}

impl SweepParams {
    /// `s ≤ 2`, bases 2, 3, 5, `N ≤ 48`, `b_i^{g_i} ≤ 32`.
    pub fn extreme() -> Self {
        SweepParams {
            dims: 1..=2,
            bases: vec![2, 3, 5],
            max_points: 48,
            max_radix: 32,
            max_start: 64,
        }
    }

    /// As [`SweepParams::extreme`] with `s ≤ 3` and `N ≤ 64`.
    pub fn star() -> Self {
        SweepParams {
            dims: 1..=3,
            max_points: 64,
            ..SweepParams::extreme()
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trial {
    pub index: usize,
    pub kind: GeneratorKind,
    pub description: String,
    pub spec: HybridSystemSpec,
    pub g: Vec<u32>,
    pub points: PointSet,
}

fn b(x: u64) -> Base {
    Base::new(x).expect("sweep bases are at least 2")
}

/// Digits needed to index `0 .. count`.
fn digits_for(base: u64, count: u64) -> usize {
    let mut m = 1;
    let mut cap = base;
    while cap < count {
        cap *= base;
        m += 1;
    }
    m
}

fn random_tags(rng: &mut ChaCha8Rng, s: usize) -> Vec<SystemTag> {
    (0..s)
        .map(|_| {
            if rng.random_bool(0.5) {
                SystemTag::Walsh
            } else {
                SystemTag::Badic
            }
        })
        .collect()
}

fn pick_base(rng: &mut ChaCha8Rng, params: &SweepParams) -> u64 {
    params.bases[rng.random_range(0..params.bases.len())]
}

/// Trial `index` of the sweep seeded by `seed`. Generator kinds cycle so that
/// every kind appears in any four consecutive trials.
pub fn trial(params: &SweepParams, seed: u64, index: usize) -> hetk_core::Result<Trial> {
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let kind = GeneratorKind::ALL[index % 4];
    let (lo, hi) = (*params.dims.start(), *params.dims.end());
    let s = match kind {
        GeneratorKind::VanDerCorput => 1,
        GeneratorKind::Hybrid => rng.random_range(lo.max(2)..=hi.max(2)),
        _ => rng.random_range(lo..=hi),
    };
    let n = rng.random_range(1..=params.max_points);
    let start = rng.random_range(0..=params.max_start);

    let (spec, points, description) = match kind {
        GeneratorKind::VanDerCorput | GeneratorKind::Halton => {
            let bases: Vec<Base> = (0..s).map(|_| b(pick_base(&mut rng, params))).collect();
            let config = if kind == GeneratorKind::VanDerCorput {
                SequenceConfig::VanDerCorput { base: bases[0] }
            } else {
                SequenceConfig::Halton {
                    bases: bases.clone(),
                }
            };
            let spec = HybridSystemSpec::from_parts(&bases, &random_tags(&mut rng, s))?;
            let points = config.generate_from(start, n)?;
            (spec, points, config.describe())
        }
        GeneratorKind::RandomMatrices => {
            let base = pick_base(&mut rng, params);
            let m = digits_for(base, start + n as u64);
            let matrix_seed = rng.random();
            let config = SequenceConfig::digital(random_matrices(b(base), s, m, matrix_seed))?;
            let spec = HybridSystemSpec::from_parts(&vec![b(base); s], &random_tags(&mut rng, s))?;
            let points = config.generate_from(start, n)?;
            (
                spec,
                points,
                format!("digital:{base}:random:{s}:{matrix_seed}:{m}"),
            )
        }
        GeneratorKind::Hybrid => {
            // a digital (or van der Corput) block for the Walsh coordinates and
            // a Halton block for the b-adic ones, interleaved at random
            let s1 = rng.random_range(1..s);
            let s2 = s - s1;
            let wbase = pick_base(&mut rng, params);
            let walsh = if s1 == 1 && rng.random_bool(0.5) {
                SequenceConfig::VanDerCorput { base: b(wbase) }
            } else {
                let m = digits_for(wbase, start + n as u64);
                SequenceConfig::digital(random_matrices(b(wbase), s1, m, rng.random()))?
            };
            let hbases: Vec<Base> = (0..s2).map(|_| b(pick_base(&mut rng, params))).collect();
            let badic = SequenceConfig::Halton {
                bases: hbases.clone(),
            };
            let mut tags = vec![SystemTag::Walsh; s1];
            tags.extend(vec![SystemTag::Badic; s2]);
            tags.shuffle(&mut rng);
            let (mut wi, mut bi) = (walsh.bases().into_iter(), hbases.into_iter());
            let bases: Vec<Base> = tags
                .iter()
                .map(|t| match t {
                    SystemTag::Walsh => wi.next().expect("s1 Walsh tags"),
                    SystemTag::Badic => bi.next().expect("s2 b-adic tags"),
                })
                .collect();
            let spec = HybridSystemSpec::from_parts(&bases, &tags)?;
            let points = hybrid_points_from(&spec, Some(&walsh), Some(&badic), start, n)?;
            let d = format!(
                "hybrid(walsh={}, badic={})",
                walsh.describe(),
                badic.describe()
            );
            (spec, points, d)
        }
    };

    let g = spec
        .bases()
        .iter()
        .map(|base| {
            let mut top = 1u32;
            while (base.get() as u64).pow(top + 1) <= params.max_radix {
                top += 1;
            }
            rng.random_range(1..=top)
        })
        .collect();
    Ok(Trial {
        index,
        kind,
        description: format!(
            "{description} tags={} start={start} n={n}",
            format_tags(&spec.tags())
        ),
        spec,
        g,
        points,
    })
}

pub fn trials(
    params: &SweepParams,
    seed: u64,
    count: usize,
) -> impl Iterator<Item = hetk_core::Result<Trial>> + '_ {
    (0..count).map(move |i| trial(params, seed, i))
}
