//! Exact star and extreme discrepancy of small point sets.
//!
//! Per axis the counting function of a half-open box only changes at the
//! coordinates of the points, so the supremum is found among boxes whose
//! endpoints are point coordinates, 0 or 1, each endpoint either taken as is or
//! as a one-sided limit. Axis choices are grouped by the set of points they
//! capture; for a fixed set only the smallest and largest length matter.
//!
//! When all coordinates fit, the search runs on integers scaled by a common
//! denominator and the result is exact.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::badic::{ExactFraction, DEFAULT_BUDGET};
use crate::bounds::{etk_bound, BoundOptions, BoundReport, Variant};
use crate::error::{Error, Result};
use crate::sequences::PointSet;
use crate::systems::HybridSystemSpec;

/// Margin below which a bound counts as violated.
pub const VIOLATION_TOLERANCE: f64 = 1e-9;

/// Size limits for the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    /// Star discrepancy, `s ≤ 2`.
    pub star_points: usize,
    /// Star discrepancy, `s ≥ 3`.
    pub star_points_high_dim: usize,
    pub star_max_dim: usize,
    pub extreme_points: usize,
    pub extreme_max_dim: usize,
    /// Upper limit on the number of box classes visited.
    pub max_evaluations: u64,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            star_points: 256,
            star_points_high_dim: 64,
            star_max_dim: 3,
            extreme_points: 64,
            extreme_max_dim: 2,
            max_evaluations: 1 << 28,
        }
    }
}

/// One axis of a witness box. `lower_limit` means the lower end is approached
/// from above (the coordinate `lower` itself is excluded); `upper_limit` means
/// the upper end is approached from above (`upper` itself is included).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisInterval {
    pub lower: f64,
    pub upper: f64,
    pub lower_limit: bool,
    pub upper_limit: bool,
}

impl AxisInterval {
    fn attained(&self) -> bool {
        !self.lower_limit && !self.upper_limit
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyResult {
    pub variant: Variant,
    pub value: f64,
    /// The value as a fraction when the search ran in exact arithmetic.
    pub exact: Option<ExactFraction>,
    pub witness: Vec<AxisInterval>,
    /// False when the supremum is only approached by a limit of boxes.
    pub attained: bool,
}

trait Scalar: Copy + PartialOrd {
    fn zero() -> Self;
    fn mul(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn from_count(c: u64) -> Self;
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn from_count(c: u64) -> Self {
        c as i128
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn from_count(c: u64) -> Self {
        c as f64
    }
}

/// Coordinates of one axis in the arithmetic of the search.
struct Axis<T> {
    /// Distinct coordinate values, ascending, with the points at each value.
    values: Vec<(T, f64, Vec<usize>)>,
    one: T,
}

struct AxisOption<T> {
    mask: Vec<u64>,
    length: T,
    interval: AxisInterval,
}

struct AxisClass {
    mask: Vec<u64>,
    shortest: usize,
    longest: usize,
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

fn set_bits(mask: &mut [u64], points: &[usize]) {
    for &p in points {
        mask[p / 64] |= 1 << (p % 64);
    }
}

fn star_options<T: Scalar>(axis: &Axis<T>, n: usize) -> Vec<AxisOption<T>> {
    let w = words(n);
    let mut out = Vec::with_capacity(2 * axis.values.len() + 2);
    let mut below = vec![0u64; w];
    let interval = |upper: f64, upper_limit: bool| AxisInterval {
        lower: 0.0,
        upper,
        lower_limit: false,
        upper_limit,
    };
    out.push(AxisOption {
        mask: below.clone(),
        length: T::zero(),
        interval: interval(0.0, false),
    });
    for (v, vf, pts) in &axis.values {
        out.push(AxisOption {
            mask: below.clone(),
            length: *v,
            interval: interval(*vf, false),
        });
        set_bits(&mut below, pts);
        out.push(AxisOption {
            mask: below.clone(),
            length: *v,
            interval: interval(*vf, true),
        });
    }
    out.push(AxisOption {
        mask: below,
        length: axis.one,
        interval: interval(1.0, false),
    });
    out
}

fn extreme_options<T: Scalar>(axis: &Axis<T>, n: usize) -> Vec<AxisOption<T>> {
    let w = words(n);
    // (value, float value, is-limit, points at or above the lower end)
    let mut lowers: Vec<(T, f64, bool, Vec<u64>)> = Vec::new();
    let mut at_or_above = vec![0u64; w];
    for (_, _, pts) in &axis.values {
        set_bits(&mut at_or_above, pts);
    }
    lowers.push((T::zero(), 0.0, false, at_or_above.clone()));
    for (v, vf, pts) in &axis.values {
        lowers.push((*v, *vf, false, at_or_above.clone()));
        for &p in pts {
            at_or_above[p / 64] &= !(1 << (p % 64));
        }
        lowers.push((*v, *vf, true, at_or_above.clone()));
    }
    let mut uppers: Vec<(T, f64, bool, Vec<u64>)> = Vec::new();
    let mut below = vec![0u64; w];
    for (v, vf, pts) in &axis.values {
        uppers.push((*v, *vf, false, below.clone()));
        set_bits(&mut below, pts);
        uppers.push((*v, *vf, true, below.clone()));
    }
    uppers.push((axis.one, 1.0, false, below));

    let mut out = Vec::with_capacity(lowers.len() * uppers.len() / 2);
    for (lv, lf, ll, lm) in &lowers {
        for (uv, uf, ul, um) in &uppers {
            if uv < lv {
                continue;
            }
            out.push(AxisOption {
                mask: lm.iter().zip(um).map(|(a, b)| a & b).collect(),
                length: uv.sub(*lv),
                interval: AxisInterval {
                    lower: *lf,
                    upper: *uf,
                    lower_limit: *ll,
                    upper_limit: *ul,
                },
            });
        }
    }
    out
}

/// Groups options by captured set, keeping the shortest and longest member.
/// Among equal lengths attained boxes win, then the earliest option.
fn classify<T: Scalar>(options: &[AxisOption<T>]) -> Vec<AxisClass> {
    let mut by_mask: BTreeMap<&[u64], (usize, usize)> = BTreeMap::new();
    let better = |a: &AxisOption<T>, b: &AxisOption<T>, shorter: bool| {
        let strict = if shorter {
            a.length < b.length
        } else {
            a.length > b.length
        };
        strict || (a.length == b.length && a.interval.attained() && !b.interval.attained())
    };
    for (i, o) in options.iter().enumerate() {
        let entry = by_mask.entry(&o.mask).or_insert((i, i));
        if better(o, &options[entry.0], true) {
            entry.0 = i;
        }
        if better(o, &options[entry.1], false) {
            entry.1 = i;
        }
    }
    by_mask
        .into_iter()
        .map(|(mask, (shortest, longest))| AxisClass {
            mask: mask.to_vec(),
            shortest,
            longest,
        })
        .collect()
}

struct Best<T> {
    numerator: T,
    attained: bool,
    choice: Vec<usize>,
}

struct Search<'a, T> {
    options: &'a [Vec<AxisOption<T>>],
    classes: &'a [Vec<AxisClass>],
    scaled_n: T,
    scale: T,
    best: Option<Best<T>>,
}

impl<T: Scalar> Search<'_, T> {
    fn better(&self, numerator: T, attained: bool) -> bool {
        match &self.best {
            None => true,
            Some(b) => {
                numerator > b.numerator || (numerator == b.numerator && attained && !b.attained)
            }
        }
    }

    fn leaf(&mut self, count: u64, path: &[usize]) {
        let counted = T::from_count(count).mul(self.scale);
        let (mut short, mut long) = (self.scaled_n, self.scaled_n);
        let (mut short_ok, mut long_ok) = (true, true);
        for (a, &c) in path.iter().enumerate() {
            let class = &self.classes[a][c];
            let s = &self.options[a][class.shortest];
            let l = &self.options[a][class.longest];
            short = short.mul(s.length);
            long = long.mul(l.length);
            short_ok &= s.interval.attained();
            long_ok &= l.interval.attained();
        }
        for (numerator, attained, shortest) in [
            (counted.sub(short), short_ok, true),
            (long.sub(counted), long_ok, false),
        ] {
            if self.better(numerator, attained) {
                let choice = path
                    .iter()
                    .enumerate()
                    .map(|(a, &c)| {
                        let class = &self.classes[a][c];
                        if shortest {
                            class.shortest
                        } else {
                            class.longest
                        }
                    })
                    .collect();
                self.best = Some(Best {
                    numerator,
                    attained,
                    choice,
                });
            }
        }
    }

    fn walk(&mut self, axis: usize, mask: &[u64], path: &mut Vec<usize>) {
        let classes = self.classes;
        if axis + 1 == classes.len() {
            for (c, class) in classes[axis].iter().enumerate() {
                let count = mask
                    .iter()
                    .zip(&class.mask)
                    .map(|(a, b)| (a & b).count_ones() as u64)
                    .sum();
                path.push(c);
                self.leaf(count, path);
                path.pop();
            }
            return;
        }
        for (c, class) in classes[axis].iter().enumerate() {
            let next: Vec<u64> = mask.iter().zip(&class.mask).map(|(a, b)| a & b).collect();
            path.push(c);
            self.walk(axis + 1, &next, path);
            path.pop();
        }
    }
}

fn run<T: Scalar>(
    axes: &[Axis<T>],
    n: usize,
    scale: T,
    scaled_n: T,
    variant: Variant,
    caps: &OracleCaps,
) -> Result<(T, Vec<AxisInterval>, bool)> {
    let options: Vec<Vec<AxisOption<T>>> = axes
        .iter()
        .map(|a| match variant {
            Variant::Star => star_options(a, n),
            Variant::Extreme => extreme_options(a, n),
        })
        .collect();
    let classes: Vec<Vec<AxisClass>> = options.iter().map(|o| classify(o)).collect();
    let evaluations = classes
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
    if evaluations.is_none_or(|e| e > caps.max_evaluations) {
        return Err(Error::CapExceeded("oracle evaluation count"));
    }
    let mut search = Search {
        options: &options,
        classes: &classes,
        scaled_n,
        scale,
        best: None,
    };
    let full = vec![u64::MAX; words(n)];
    search.walk(0, &full, &mut Vec::new());
    let best = search.best.expect("at least one box class per axis");
    let witness = best
        .choice
        .iter()
        .enumerate()
        .map(|(a, &i)| options[a][i].interval)
        .collect();
    Ok((best.numerator, witness, best.attained))
}

fn check_caps(points: &PointSet, variant: Variant, caps: &OracleCaps) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let (s, n) = (points.dim(), points.len());
    let ok = match variant {
        Variant::Star => {
            s <= caps.star_max_dim
                && n <= if s <= 2 {
                    caps.star_points
                } else {
                    caps.star_points_high_dim
                }
        }
        Variant::Extreme => s <= caps.extreme_max_dim && n <= caps.extreme_points,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::CapExceeded(match variant {
            Variant::Star => "star discrepancy oracle size",
            Variant::Extreme => "extreme discrepancy oracle size",
        }))
    }
}

/// Sorted distinct values of axis `i` with the indices of the points at each.
fn group_axis(points: &PointSet, i: usize) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points.point(a)[i].cmp_value(&points.point(b)[i]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for p in order {
        match groups.last_mut() {
            Some(g) if points.point(g[0])[i] == points.point(p)[i] => g.push(p),
            _ => groups.push(vec![p]),
        }
    }
    groups
}

/// Integer axes scaled by `b_i^{m_i}`, if the whole search fits in `i128`.
fn exact_axes(points: &PointSet, groups: &[Vec<Vec<usize>>]) -> Option<(Vec<Axis<i128>>, i128)> {
    let mut axes = Vec::with_capacity(groups.len());
    let mut scale: i128 = 1;
    for (i, g) in groups.iter().enumerate() {
        let digits = g
            .iter()
            .map(|pts| points.point(pts[0])[i].trimmed().precision())
            .max()
            .unwrap_or(0) as u32;
        let one = i128::try_from(points.bases()[i].pow(digits)?).ok()?;
        scale = scale.checked_mul(one)?;
        let values = g
            .iter()
            .map(|pts| {
                let x = &points.point(pts[0])[i];
                let v = i128::try_from(x.leading_value(digits)?).ok()?;
                Some((v, x.to_f64(), pts.clone()))
            })
            .collect::<Option<Vec<_>>>()?;
        axes.push(Axis { values, one });
    }
    scale.checked_mul(points.len() as i128)?;
    Some((axes, scale))
}

fn discrepancy(
    points: &PointSet,
    variant: Variant,
    caps: &OracleCaps,
) -> Result<DiscrepancyResult> {
    check_caps(points, variant, caps)?;
    let n = points.len();
    let groups: Vec<Vec<Vec<usize>>> = (0..points.dim()).map(|i| group_axis(points, i)).collect();
    if let Some((axes, scale)) = exact_axes(points, &groups) {
        let denominator = scale * n as i128;
        let (num, witness, attained) = run(&axes, n, scale, n as i128, variant, caps)?;
        let exact = ExactFraction::new(num.max(0) as u128, denominator as u128)?;
        return Ok(DiscrepancyResult {
            variant,
            value: exact.to_f64(),
            exact: Some(exact),
            witness,
            attained,
        });
    }
    let axes: Vec<Axis<f64>> = groups
        .iter()
        .enumerate()
        .map(|(i, g)| Axis {
            values: g
                .iter()
                .map(|pts| {
                    let v = points.point(pts[0])[i].to_f64();
                    (v, v, pts.clone())
                })
                .collect(),
            one: 1.0,
        })
        .collect();
    let (num, witness, attained) = run(&axes, n, 1.0, n as f64, variant, caps)?;
    Ok(DiscrepancyResult {
        variant,
        value: (num / n as f64).clamp(0.0, 1.0),
        exact: None,
        witness,
        attained,
    })
}

/// Supremum of `|A(J)/N − λ(J)|` over boxes `Π[0, v_i)`.
pub fn star_discrepancy_exact(points: &PointSet, caps: &OracleCaps) -> Result<DiscrepancyResult> {
    discrepancy(points, Variant::Star, caps)
}

/// Supremum of `|A(J)/N − λ(J)|` over boxes `Π[u_i, v_i)`.
pub fn extreme_discrepancy_exact(
    points: &PointSet,
    caps: &OracleCaps,
) -> Result<DiscrepancyResult> {
    discrepancy(points, Variant::Extreme, caps)
}

pub fn discrepancy_exact(
    points: &PointSet,
    variant: Variant,
    caps: &OracleCaps,
) -> Result<DiscrepancyResult> {
    discrepancy(points, variant, caps)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominationReport {
    pub bound: BoundReport,
    pub exact: DiscrepancyResult,
    pub margin: f64,
    pub violated: bool,
}

/// Compares the hybrid bound with the exact discrepancy.
pub fn domination_check(
    spec: &HybridSystemSpec,
    g: &[u32],
    points: &PointSet,
    variant: Variant,
    options: &BoundOptions,
    caps: &OracleCaps,
) -> Result<DominationReport> {
    let exact = discrepancy(points, variant, caps)?;
    let bound = etk_bound(spec, g, points, variant, options)?;
    let margin = bound.total - exact.value;
    Ok(DominationReport {
        violated: margin < -VIOLATION_TOLERANCE,
        bound,
        exact,
        margin,
    })
}

/// Default options for [`domination_check`].
pub fn default_domination(
    spec: &HybridSystemSpec,
    g: &[u32],
    points: &PointSet,
    variant: Variant,
) -> Result<DominationReport> {
    let options = BoundOptions {
        budget: DEFAULT_BUDGET,
        ..BoundOptions::default()
    };
    domination_check(spec, g, points, variant, &options, &OracleCaps::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::badic::{monna_pseudoinverse, Base, DigitVector};
    use crate::sequences::SequenceConfig;
    use crate::systems::SystemTag;
    use alloc::string::String;

    fn b(x: u64) -> Base {
        Base::new(x).unwrap()
    }

    fn set(base: u64, values: &[(u128, u128)]) -> PointSet {
        let pts = values
            .iter()
            .map(|&(a, d)| {
                vec![monna_pseudoinverse(ExactFraction::new(a, d).unwrap(), b(base)).unwrap()]
            })
            .collect();
        PointSet::new(vec![b(base)], pts, String::from("test")).unwrap()
    }

    #[test]
    fn single_point_at_origin() {
        let p = set(2, &[(0, 1)]);
        let caps = OracleCaps::default();
        let s = star_discrepancy_exact(&p, &caps).unwrap();
        assert_eq!(s.value, 1.0);
        assert!(!s.attained);
        let e = extreme_discrepancy_exact(&p, &caps).unwrap();
        assert_eq!(e.value, 1.0);
    }

    #[test]
    fn two_points() {
        let p = set(2, &[(0, 1), (1, 2)]);
        let s = star_discrepancy_exact(&p, &OracleCaps::default()).unwrap();
        assert_eq!(s.value, 0.5);
    }

    #[test]
    fn equidistant_eighths() {
        let v: Vec<(u128, u128)> = (0..8).map(|a| (a, 8)).collect();
        let p = set(2, &v);
        let caps = OracleCaps::default();
        let s = star_discrepancy_exact(&p, &caps).unwrap();
        assert_eq!(s.exact, Some(ExactFraction::new(1, 8).unwrap()));
        let e = extreme_discrepancy_exact(&p, &caps).unwrap();
        assert_eq!(e.value, 0.125);
    }

    #[test]
    fn witness_reproduces_value() {
        let p = SequenceConfig::Halton {
            bases: vec![b(2), b(3)],
        }
        .generate(13)
        .unwrap();
        let r = star_discrepancy_exact(&p, &OracleCaps::default()).unwrap();
        let w = &r.witness;
        let inside = |x: &[DigitVector]| {
            x.iter().zip(w).all(|(c, iv)| {
                let c = c.to_f64();
                let lo = if iv.lower_limit {
                    c > iv.lower
                } else {
                    c >= iv.lower
                };
                let hi = if iv.upper_limit {
                    c <= iv.upper
                } else {
                    c < iv.upper
                };
                lo && hi
            })
        };
        let count = p.points().iter().filter(|x| inside(x)).count() as f64;
        let vol: f64 = w.iter().map(|iv| iv.upper - iv.lower).product();
        assert!(((count / 13.0 - vol).abs() - r.value).abs() < 1e-12);
    }

    #[test]
    fn extreme_at_least_star() {
        let p = SequenceConfig::Halton {
            bases: vec![b(2), b(5)],
        }
        .generate(20)
        .unwrap();
        let caps = OracleCaps::default();
        let s = star_discrepancy_exact(&p, &caps).unwrap();
        let e = extreme_discrepancy_exact(&p, &caps).unwrap();
        assert!(e.value >= s.value);
        assert!(s.value > 0.0 && e.value <= 1.0);
    }

    #[test]
    fn caps_are_enforced() {
        let p = SequenceConfig::VanDerCorput { base: b(2) }
            .generate(65)
            .unwrap();
        assert!(matches!(
            extreme_discrepancy_exact(&p, &OracleCaps::default()),
            Err(Error::CapExceeded(_))
        ));
        assert!(star_discrepancy_exact(&p, &OracleCaps::default()).is_ok());
    }

    #[test]
    fn domination_examples() {
        let spec = HybridSystemSpec::uniform(&[b(2)], SystemTag::Walsh).unwrap();
        let vdc = SequenceConfig::VanDerCorput { base: b(2) }
            .generate(8)
            .unwrap();
        let r = default_domination(&spec, &[3], &vdc, Variant::Star).unwrap();
        assert_eq!(r.bound.total, 0.125);
        assert_eq!(r.exact.value, 0.125);
        assert_eq!(r.margin, 0.0);
        assert!(!r.violated);

        let spec = HybridSystemSpec::uniform(&[b(2), b(3)], SystemTag::Badic).unwrap();
        let h = SequenceConfig::Halton {
            bases: vec![b(2), b(3)],
        }
        .generate(12)
        .unwrap();
        let r = default_domination(&spec, &[2, 2], &h, Variant::Star).unwrap();
        assert!(r.margin >= 0.0);

        let r = default_domination(&spec, &[1, 1], &h.prefix(1), Variant::Extreme).unwrap();
        assert!(r.bound.total >= 1.0 && r.margin >= 0.0);
    }

    #[test]
    fn float_fallback_agrees() {
        // 40 base-5 digits overflow the exact path on two axes.
        let digits: Vec<u32> = (0..40).map(|j| (j * 3 % 5) as u32).collect();
        let x = DigitVector::new(b(5), digits).unwrap();
        let p = PointSet::new(
            vec![b(5), b(5)],
            vec![
                vec![x.clone(), x],
                vec![DigitVector::zero(b(5)), DigitVector::zero(b(5))],
            ],
            String::from("test"),
        )
        .unwrap();
        let r = star_discrepancy_exact(&p, &OracleCaps::default()).unwrap();
        assert!(r.exact.is_none());
        assert!(r.value > 0.0 && r.value <= 1.0);
    }
}
