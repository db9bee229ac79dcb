//! Textual generator descriptions.
//!
//! ```text
//! vdc:B
//! halton:B1,B2,...
//! digital:B:identity:S[:M]
//! digital:B:random:S:SEED[:M]
//! ```
//!
//! Random generator matrices are drawn entrywise uniform from `Z_b` with a
//! ChaCha8 stream seeded by `SEED`.

use hetk_core::badic::Base;
use hetk_core::sequences::{
    hybrid_points_from, GeneratorMatrix, PointSet, SequenceConfig, DEFAULT_PRECISION,
};
use hetk_core::systems::{HybridSystemSpec, SystemTag};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A parsed generator together with the text it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub text: String,
    pub config: SequenceConfig,
}

fn fail(spec: &str, message: impl Into<String>) -> Error {
    Error::Generator {
        spec: spec.to_string(),
        message: message.into(),
    }
}

pub fn parse_base(text: &str) -> Result<Base> {
    let raw: u64 = text
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("`{text}` is not a base")))?;
    Ok(Base::new(raw)?)
}

pub fn parse_bases(text: &str) -> Result<Vec<Base>> {
    text.split(',').map(parse_base).collect()
}

pub fn parse_tags(text: &str) -> Result<Vec<SystemTag>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Config(format!("unknown tag `{t}` (use w or b)")))
        })
        .collect()
}

pub fn format_tags(tags: &[SystemTag]) -> String {
    tags.iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// `count` random `m × m` matrices over `Z_b`.
pub fn random_matrices(base: Base, count: usize, m: usize, seed: u64) -> Vec<GeneratorMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = base.get() as u64;
    (0..count)
        .map(|_| {
            let entries = (0..m * m).map(|_| rng.random_range(0..b)).collect();
            GeneratorMatrix::new(base, m, entries).expect("square by construction")
        })
        .collect()
}

impl Generator {
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.trim().split(':').collect();
        let number = |s: &str, what: &str| -> Result<u64> {
            s.parse()
                .map_err(|_| fail(text, format!("{what} `{s}` is not a number")))
        };
        let config = match parts.as_slice() {
            ["vdc", b] => SequenceConfig::VanDerCorput {
                base: parse_base(b)?,
            },
            ["halton", bs] => SequenceConfig::Halton {
                bases: parse_bases(bs)?,
            },
            ["digital", b, "identity", s, rest @ ..] if rest.len() <= 1 => {
                let base = parse_base(b)?;
                let m = match rest {
                    [m] => number(m, "precision")? as usize,
                    _ => DEFAULT_PRECISION,
                };
                let s = number(s, "dimension")? as usize;
                SequenceConfig::digital(vec![GeneratorMatrix::identity(base, m); s])?
            }
            ["digital", b, "random", s, seed, rest @ ..] if rest.len() <= 1 => {
                let base = parse_base(b)?;
                let m = match rest {
                    [m] => number(m, "precision")? as usize,
                    _ => DEFAULT_PRECISION,
                };
                let s = number(s, "dimension")? as usize;
                SequenceConfig::digital(random_matrices(base, s, m, number(seed, "seed")?))?
            }
            _ => {
                return Err(fail(
                    text,
                    "expected vdc:B, halton:B,..., digital:B:identity:S[:M] or digital:B:random:S:SEED[:M]",
                ))
            }
        };
        if config.dim() == 0 {
            return Err(fail(text, "dimension must be positive"));
        }
        Ok(Generator {
            text: text.trim().to_string(),
            config,
        })
    }
}

/// Where the points of an experiment come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Single(Generator),
    Hybrid {
        walsh: Option<Generator>,
        badic: Option<Generator>,
    },
}

impl Source {
    pub fn describe(&self) -> String {
        match self {
            Source::Single(g) => g.text.clone(),
            Source::Hybrid { walsh, badic } => format!(
                "hybrid(walsh={}, badic={})",
                walsh.as_ref().map_or("-", |g| g.text.as_str()),
                badic.as_ref().map_or("-", |g| g.text.as_str())
            ),
        }
    }

    /// The system spec: explicit tags if given, otherwise all Walsh for a
    /// single generator and Walsh block then b-adic block for a hybrid.
    pub fn spec(&self, tags: Option<&[SystemTag]>) -> Result<HybridSystemSpec> {
        match self {
            Source::Single(g) => {
                let bases = g.config.bases();
                let tags = match tags {
                    Some(t) => t.to_vec(),
                    None => vec![SystemTag::Walsh; bases.len()],
                };
                Ok(HybridSystemSpec::from_parts(&bases, &tags)?)
            }
            Source::Hybrid { walsh, badic } => {
                let wb = walsh.as_ref().map(|g| g.config.bases()).unwrap_or_default();
                let bb = badic.as_ref().map(|g| g.config.bases()).unwrap_or_default();
                let tags = match tags {
                    Some(t) => t.to_vec(),
                    None => {
                        let mut t = vec![SystemTag::Walsh; wb.len()];
                        t.extend(vec![SystemTag::Badic; bb.len()]);
                        t
                    }
                };
                let (mut wi, mut bi) = (wb.into_iter(), bb.into_iter());
                let mut bases = Vec::with_capacity(tags.len());
                for &t in &tags {
                    let next = match t {
                        SystemTag::Walsh => wi.next(),
                        SystemTag::Badic => bi.next(),
                    };
                    bases.push(next.ok_or_else(|| {
                        Error::Config(format!("more `{t}` tags than generator coordinates"))
                    })?);
                }
                if wi.next().is_some() || bi.next().is_some() {
                    return Err(Error::Config(
                        "fewer tags than generator coordinates".to_string(),
                    ));
                }
                Ok(HybridSystemSpec::from_parts(&bases, &tags)?)
            }
        }
    }

    pub fn points(&self, spec: &HybridSystemSpec, start: u64, n: usize) -> Result<PointSet> {
        match self {
            Source::Single(g) => Ok(g.config.generate_from(start, n)?),
            Source::Hybrid { walsh, badic } => {
                let mut set = hybrid_points_from(
                    spec,
                    walsh.as_ref().map(|g| &g.config),
                    badic.as_ref().map(|g| &g.config),
                    start,
                    n,
                )?;
                let provenance = if start == 0 {
                    self.describe()
                } else {
                    format!("{}@{start}", self.describe())
                };
                set = PointSet::new(set.bases().to_vec(), set.points().to_vec(), provenance)?;
                Ok(set)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        let g = Generator::parse("vdc:2").unwrap();
        assert_eq!(g.config.dim(), 1);
        let g = Generator::parse("halton:2,3,5").unwrap();
        assert_eq!(g.config.dim(), 3);
        let g = Generator::parse("digital:3:identity:2:4").unwrap();
        assert_eq!(
            g.config.point(5).unwrap(),
            Generator::parse("halton:3,3")
                .unwrap()
                .config
                .point(5)
                .unwrap()
        );
        let a = Generator::parse("digital:2:random:2:7:6").unwrap();
        let b = Generator::parse("digital:2:random:2:7:6").unwrap();
        assert_eq!(a, b);
        assert_ne!(a, Generator::parse("digital:2:random:2:8:6").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        for bad in [
            "",
            "vdc",
            "vdc:1",
            "halton:",
            "digital:2:magic:2",
            "sobol:2",
            "digital:2:identity:0",
        ] {
            assert!(Generator::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn hybrid_layout() {
        let src = Source::Hybrid {
            walsh: Some(Generator::parse("vdc:2").unwrap()),
            badic: Some(Generator::parse("halton:3").unwrap()),
        };
        let spec = src.spec(None).unwrap();
        assert_eq!(format_tags(&spec.tags()), "w,b");
        let pts = src.points(&spec, 0, 6).unwrap();
        assert_eq!(pts.point(5)[0].digits(), &[1, 0, 1]);
        assert_eq!(pts.point(5)[1].digits(), &[2, 1]);

        let spec = src
            .spec(Some(&[SystemTag::Badic, SystemTag::Walsh]))
            .unwrap();
        assert_eq!(spec.bases()[0].get(), 3);
        assert!(src
            .spec(Some(&[SystemTag::Walsh, SystemTag::Walsh]))
            .is_err());
    }
}
