//! Point generators built from the two digit additions: van der Corput and
//! Halton (addition with carry on the index) and generator-matrix digital
//! sequences (addition without carry), plus hybrid concatenations.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::badic::{Base, DigitVector};
use crate::error::{Error, Result};
use crate::systems::{HybridSystemSpec, SystemTag};

/// Digit precision used for generator matrices unless configured otherwise.
pub const DEFAULT_PRECISION: usize = 32;

/// A finite point set in `[0,1)^s`; coordinate `i` of every point is a digit
/// vector in base `b_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    bases: Vec<Base>,
    points: Vec<Vec<DigitVector>>,
    provenance: String,
}

impl PointSet {
    pub fn new(
        bases: Vec<Base>,
        points: Vec<Vec<DigitVector>>,
        provenance: String,
    ) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::Invalid("point set needs at least one coordinate"));
        }
        for p in &points {
            if p.len() != bases.len() {
                return Err(Error::DimensionMismatch {
                    expected: bases.len(),
                    got: p.len(),
                });
            }
            for (x, &b) in p.iter().zip(&bases) {
                if x.base() != b {
                    return Err(Error::BaseMismatch {
                        left: b.get(),
                        right: x.base().get(),
                    });
                }
            }
        }
        Ok(PointSet {
            bases,
            points,
            provenance,
        })
    }

    pub fn bases(&self) -> &[Base] {
        &self.bases
    }

    pub fn dim(&self) -> usize {
        self.bases.len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<DigitVector>] {
        &self.points
    }

    pub fn point(&self, n: usize) -> &[DigitVector] {
        &self.points[n]
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// The first `n` points (all of them if fewer).
    pub fn prefix(&self, n: usize) -> PointSet {
        PointSet {
            bases: self.bases.clone(),
            points: self.points[..n.min(self.points.len())].to_vec(),
            provenance: self.provenance.clone(),
        }
    }
}

/// Digit reversal of `n`: the point `Σ n_j b^{-j-1}`.
pub fn van_der_corput(base: Base, n: u64) -> DigitVector {
    DigitVector::from_integer(n, base)
}

/// Point `n` of the Halton sequence in the given bases.
pub fn halton(bases: &[Base], n: u64) -> Vec<DigitVector> {
    bases.iter().map(|&b| van_der_corput(b, n)).collect()
}

/// An `m × m` matrix over `Z_b`, stored row-major with entries reduced mod `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorMatrix {
    base: Base,
    m: usize,
    entries: Vec<u32>,
}

impl GeneratorMatrix {
    pub fn new(base: Base, m: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != m * m {
            return Err(Error::DimensionMismatch {
                expected: m * m,
                got: entries.len(),
            });
        }
        let b = base.get() as u64;
        Ok(GeneratorMatrix {
            base,
            m,
            entries: entries.into_iter().map(|e| (e % b) as u32).collect(),
        })
    }

    pub fn identity(base: Base, m: usize) -> Self {
        let mut entries = alloc::vec![0u32; m * m];
        for i in 0..m {
            entries[i * m + i] = 1;
        }
        GeneratorMatrix { base, m, entries }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn precision(&self) -> usize {
        self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.m + col]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// `y = C · digits(n) mod b`, as point digits (trailing zeros trimmed).
    pub fn apply(&self, n: u64) -> Result<DigitVector> {
        let digits = DigitVector::from_integer(n, self.base);
        if digits.precision() > self.m {
            return Err(Error::IndexOutOfRange {
                n,
                m: self.m,
                base: self.base.get(),
            });
        }
        let b = self.base.get() as u64;
        let y = (0..self.m)
            .map(|r| {
                let row = &self.entries[r * self.m..(r + 1) * self.m];
                row.iter()
                    .zip(digits.digits())
                    .fold(0u64, |acc, (&c, &d)| (acc + c as u64 * d as u64) % b)
                    as u32
            })
            .collect();
        Ok(DigitVector::new(self.base, y)?.trimmed())
    }
}

/// Point `n` of the digital sequence with the given generator matrices.
pub fn digital_point(matrices: &[GeneratorMatrix], n: u64) -> Result<Vec<DigitVector>> {
    check_shared(matrices)?;
    matrices.iter().map(|c| c.apply(n)).collect()
}

fn check_shared(matrices: &[GeneratorMatrix]) -> Result<()> {
    let first = matrices
        .first()
        .ok_or(Error::Invalid("digital sequence needs at least one matrix"))?;
    for c in matrices {
        if c.base != first.base {
            return Err(Error::BaseMismatch {
                left: first.base.get(),
                right: c.base.get(),
            });
        }
        if c.m != first.m {
            return Err(Error::Invalid("generator matrices must share their size"));
        }
    }
    Ok(())
}

/// A lower-dimensional generator that one block of a hybrid point set draws from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceConfig {
    VanDerCorput { base: Base },
    Halton { bases: Vec<Base> },
    Digital { matrices: Vec<GeneratorMatrix> },
}

impl SequenceConfig {
    pub fn digital(matrices: Vec<GeneratorMatrix>) -> Result<Self> {
        check_shared(&matrices)?;
        Ok(SequenceConfig::Digital { matrices })
    }

    pub fn dim(&self) -> usize {
        match self {
            SequenceConfig::VanDerCorput { .. } => 1,
            SequenceConfig::Halton { bases } => bases.len(),
            SequenceConfig::Digital { matrices } => matrices.len(),
        }
    }

    pub fn bases(&self) -> Vec<Base> {
        match self {
            SequenceConfig::VanDerCorput { base } => alloc::vec![*base],
            SequenceConfig::Halton { bases } => bases.clone(),
            SequenceConfig::Digital { matrices } => matrices.iter().map(|c| c.base).collect(),
        }
    }

    pub fn point(&self, n: u64) -> Result<Vec<DigitVector>> {
        match self {
            SequenceConfig::VanDerCorput { base } => Ok(alloc::vec![van_der_corput(*base, n)]),
            SequenceConfig::Halton { bases } => Ok(halton(bases, n)),
            SequenceConfig::Digital { matrices } => digital_point(matrices, n),
        }
    }

    pub fn describe(&self) -> String {
        let join = |bases: &[Base]| {
            bases
                .iter()
                .map(|b| format!("{b}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            SequenceConfig::VanDerCorput { base } => format!("vdc:{base}"),
            SequenceConfig::Halton { bases } => format!("halton:{}", join(bases)),
            SequenceConfig::Digital { matrices } => format!(
                "digital:{}:s={}:m={}",
                matrices[0].base,
                matrices.len(),
                matrices[0].m
            ),
        }
    }

    /// Points `start .. start + n`.
    pub fn generate_from(&self, start: u64, n: usize) -> Result<PointSet> {
        let points = (0..n as u64)
            .map(|i| self.point(start + i))
            .collect::<Result<Vec<_>>>()?;
        let provenance = if start == 0 {
            self.describe()
        } else {
            format!("{}@{start}", self.describe())
        };
        PointSet::new(self.bases(), points, provenance)
    }

    pub fn generate(&self, n: usize) -> Result<PointSet> {
        self.generate_from(0, n)
    }
}

/// Hybrid point set: the coordinates tagged Walsh take, in order, the
/// coordinates of `walsh_part`; those tagged b-adic take `badic_part`.
pub fn hybrid_points(
    spec: &HybridSystemSpec,
    walsh_part: Option<&SequenceConfig>,
    badic_part: Option<&SequenceConfig>,
    n: usize,
) -> Result<PointSet> {
    hybrid_points_from(spec, walsh_part, badic_part, 0, n)
}

/// [`hybrid_points`] starting at sequence index `start`.
pub fn hybrid_points_from(
    spec: &HybridSystemSpec,
    walsh_part: Option<&SequenceConfig>,
    badic_part: Option<&SequenceConfig>,
    start: u64,
    n: usize,
) -> Result<PointSet> {
    let tags = spec.tags();
    let s1 = tags.iter().filter(|&&t| t == SystemTag::Walsh).count();
    let s2 = tags.len() - s1;
    let d1 = walsh_part.map_or(0, SequenceConfig::dim);
    let d2 = badic_part.map_or(0, SequenceConfig::dim);
    if d1 != s1 {
        return Err(Error::DimensionMismatch {
            expected: s1,
            got: d1,
        });
    }
    if d2 != s2 {
        return Err(Error::DimensionMismatch {
            expected: s2,
            got: d2,
        });
    }
    // bases must line up with the spec, block by block
    let mut wb = walsh_part
        .map(SequenceConfig::bases)
        .unwrap_or_default()
        .into_iter();
    let mut bb = badic_part
        .map(SequenceConfig::bases)
        .unwrap_or_default()
        .into_iter();
    for &(base, tag) in spec.coords() {
        let got = match tag {
            SystemTag::Walsh => wb.next(),
            SystemTag::Badic => bb.next(),
        }
        .expect("dimensions checked above");
        if got != base {
            return Err(Error::BaseMismatch {
                left: base.get(),
                right: got.get(),
            });
        }
    }
    let mut points = Vec::with_capacity(n);
    for i in 0..n as u64 {
        let idx = start + i;
        let mut w = match walsh_part {
            Some(c) => c.point(idx)?,
            None => Vec::new(),
        }
        .into_iter();
        let mut b = match badic_part {
            Some(c) => c.point(idx)?,
            None => Vec::new(),
        }
        .into_iter();
        let point = tags
            .iter()
            .map(|t| match t {
                SystemTag::Walsh => w.next(),
                SystemTag::Badic => b.next(),
            })
            .collect::<Option<Vec<_>>>()
            .expect("dimensions checked above");
        points.push(point);
    }
    let describe =
        |c: Option<&SequenceConfig>| c.map_or(String::from("-"), SequenceConfig::describe);
    let mut provenance = format!(
        "hybrid[w={};b={}]",
        describe(walsh_part),
        describe(badic_part)
    );
    if start != 0 {
        provenance = format!("{provenance}@{start}");
    }
    PointSet::new(spec.bases(), points, provenance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::badic::{add_with_carry, monna, ExactFraction};
    use alloc::vec;

    fn b(x: u64) -> Base {
        Base::new(x).unwrap()
    }

    fn frac(n: u128, d: u128) -> ExactFraction {
        ExactFraction::new(n, d).unwrap()
    }

    #[test]
    fn vdc_examples() {
        let vals: Vec<_> = (0..4)
            .map(|n| monna(&van_der_corput(b(2), n)).unwrap())
            .collect();
        assert_eq!(vals, vec![frac(0, 1), frac(1, 2), frac(1, 4), frac(3, 4)]);
        assert_eq!(monna(&van_der_corput(b(3), 5)).unwrap(), frac(7, 9));
    }

    #[test]
    fn vdc_first_block_is_full_grid() {
        for (base, m) in [(2u64, 5u32), (3, 3), (5, 2)] {
            let n = base.pow(m);
            let mut seen: Vec<u128> = (0..n)
                .map(|i| {
                    let f = monna(&van_der_corput(b(base), i)).unwrap();
                    f.numerator() * (n as u128 / f.denominator())
                })
                .collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..n as u128).collect::<Vec<_>>());
        }
    }

    #[test]
    fn halton_examples() {
        let bases = [b(2), b(3)];
        assert!(halton(&bases, 0).iter().all(DigitVector::is_zero));
        let p = halton(&bases, 5);
        assert_eq!(monna(&p[0]).unwrap(), frac(5, 8));
        assert_eq!(monna(&p[1]).unwrap(), frac(7, 9));
    }

    #[test]
    fn halton_successor_is_carry_addition() {
        for base in [2u64, 3, 5] {
            let one = DigitVector::from_integer(1, b(base));
            for n in 0..200u64 {
                let cur = van_der_corput(b(base), n).with_precision(8);
                let next = add_with_carry(&cur, &one).unwrap();
                assert_eq!(next, van_der_corput(b(base), n + 1));
            }
        }
    }

    #[test]
    fn halton_distinct_coordinates() {
        let bases = [b(2), b(3)];
        let pts: Vec<_> = (0..6).map(|n| halton(&bases, n)).collect();
        for i in 0..6 {
            for j in 0..i {
                assert_ne!(pts[i], pts[j]);
            }
        }
    }

    #[test]
    fn digital_examples() {
        let c = GeneratorMatrix::new(b(2), 2, vec![1, 1, 0, 1]).unwrap();
        let p = digital_point(&[c], 2).unwrap();
        assert_eq!(monna(&p[0]).unwrap(), frac(3, 4));

        let zero = GeneratorMatrix::new(b(3), 4, vec![0; 16]).unwrap();
        for n in 0..81 {
            assert!(digital_point(core::slice::from_ref(&zero), n).unwrap()[0].is_zero());
        }
        assert!(digital_point(core::slice::from_ref(&zero), 81).is_err());
    }

    #[test]
    fn identity_matrices_give_vdc() {
        for base in [2u64, 3] {
            for m in 1..=4usize {
                let id = GeneratorMatrix::identity(b(base), m);
                for n in 0..base.pow(m as u32) {
                    let p = digital_point(&[id.clone(), id.clone()], n).unwrap();
                    assert_eq!(p[0], van_der_corput(b(base), n));
                    assert_eq!(p[1], van_der_corput(b(base), n));
                }
            }
        }
    }

    #[test]
    fn digital_rejects_mixed_matrices() {
        let a = GeneratorMatrix::identity(b(2), 3);
        let c = GeneratorMatrix::identity(b(3), 3);
        assert!(digital_point(&[a.clone(), c], 1).is_err());
        let d = GeneratorMatrix::identity(b(2), 4);
        assert!(SequenceConfig::digital(vec![a, d]).is_err());
    }

    #[test]
    fn hybrid_examples() {
        let spec = HybridSystemSpec::new(vec![(b(2), SystemTag::Walsh), (b(3), SystemTag::Badic)])
            .unwrap();
        let w = SequenceConfig::VanDerCorput { base: b(2) };
        let h = SequenceConfig::Halton { bases: vec![b(3)] };
        let ps = hybrid_points(&spec, Some(&w), Some(&h), 6).unwrap();
        assert_eq!(monna(&ps.point(5)[0]).unwrap(), frac(5, 8));
        assert_eq!(monna(&ps.point(5)[1]).unwrap(), frac(7, 9));

        // interleaved tags place blocks by tag, not by position
        let spec = HybridSystemSpec::new(vec![
            (b(3), SystemTag::Badic),
            (b(2), SystemTag::Walsh),
            (b(5), SystemTag::Badic),
        ])
        .unwrap();
        let h = SequenceConfig::Halton {
            bases: vec![b(3), b(5)],
        };
        let ps = hybrid_points(&spec, Some(&w), Some(&h), 4).unwrap();
        assert_eq!(ps.bases(), &[b(3), b(2), b(5)]);
        assert_eq!(ps.point(3)[1], van_der_corput(b(2), 3));
        assert_eq!(ps.point(3)[2], van_der_corput(b(5), 3));

        // pure parts
        let spec_w = HybridSystemSpec::uniform(&[b(2)], SystemTag::Walsh).unwrap();
        let id = SequenceConfig::digital(vec![GeneratorMatrix::identity(b(2), 8)]).unwrap();
        let ps = hybrid_points(&spec_w, Some(&id), None, 8).unwrap();
        assert_eq!(ps, {
            let mut g = id.generate(8).unwrap();
            g.provenance = ps.provenance.clone();
            g
        });
        let spec_b = HybridSystemSpec::uniform(&[b(2), b(3)], SystemTag::Badic).unwrap();
        let h = SequenceConfig::Halton {
            bases: vec![b(2), b(3)],
        };
        let ps = hybrid_points(&spec_b, None, Some(&h), 5).unwrap();
        assert_eq!(ps.points(), h.generate(5).unwrap().points());
    }

    #[test]
    fn hybrid_rejects_mismatch() {
        let spec = HybridSystemSpec::new(vec![(b(2), SystemTag::Walsh), (b(3), SystemTag::Badic)])
            .unwrap();
        let w = SequenceConfig::VanDerCorput { base: b(2) };
        assert!(hybrid_points(&spec, Some(&w), None, 2).is_err());
        let wrong = SequenceConfig::VanDerCorput { base: b(5) };
        assert!(hybrid_points(&spec, Some(&w), Some(&wrong), 2).is_err());
    }
}
