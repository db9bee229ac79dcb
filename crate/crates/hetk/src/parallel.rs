//! Multi-threaded bound evaluation.
//!
//! Chunks are evaluated on the rayon pool and reduced in chunk order by
//! [`BoundPlan::finish`], so the result is bit-identical to the sequential
//! [`hetk_core::bounds::etk_bound`] with the same chunk size.

use hetk_core::bounds::{BoundOptions, BoundPlan, BoundReport, ChunkSum, Variant};
use hetk_core::sequences::PointSet;
use hetk_core::systems::HybridSystemSpec;
use rayon::prelude::*;

pub fn etk_bound_parallel(
    spec: &HybridSystemSpec,
    g: &[u32],
    points: &PointSet,
    variant: Variant,
    options: &BoundOptions,
) -> hetk_core::Result<BoundReport> {
    let plan = BoundPlan::new(spec, g, points, variant, *options)?;
    let chunks: Vec<ChunkSum> = (0..plan.num_chunks())
        .into_par_iter()
        .map(|i| plan.chunk(i))
        .collect();
    Ok(plan.finish(chunks))
}
