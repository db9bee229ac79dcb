//! Experiment configuration, shared by the config file and the command line.

use std::path::{Path, PathBuf};

use hetk_core::badic::{Base, DEFAULT_BUDGET};
use hetk_core::bounds::{BoundOptions, Variant, DEFAULT_CHUNK_SIZE};
use hetk_core::sequences::PointSet;
use hetk_core::systems::{HybridSystemSpec, SystemTag};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{parse_bases, parse_tags, Generator, Source};
use crate::pointfile;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum VariantChoice {
    #[default]
    Extreme,
    Star,
    Both,
}

impl VariantChoice {
    pub fn variants(self) -> Vec<Variant> {
        match self {
            VariantChoice::Extreme => vec![Variant::Extreme],
            VariantChoice::Star => vec![Variant::Star],
            VariantChoice::Both => vec![Variant::Extreme, Variant::Star],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub walsh: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub badic: Option<String>,
    /// Expected bases, checked against the point source.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<String>,
    /// Per-coordinate tags such as `w,b`; all Walsh when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tags: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default)]
    pub start: u64,
    /// Resolutions; a single component is repeated across all coordinates.
    #[serde(default)]
    pub g: Vec<Vec<u32>>,
    #[serde(default)]
    pub variant: VariantChoice,
    #[serde(default)]
    pub oracle: bool,
    #[serde(default)]
    pub per_k: bool,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chunk_size: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            schema: SCHEMA_VERSION,
            points: None,
            generator: None,
            walsh: None,
            badic: None,
            bases: None,
            tags: None,
            n: None,
            start: 0,
            g: Vec::new(),
            variant: VariantChoice::default(),
            oracle: false,
            per_k: false,
            format: Format::default(),
            budget: None,
            chunk_size: None,
            seed: None,
        }
    }
}

/// The resolved inputs of an experiment.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub spec: HybridSystemSpec,
    pub points: PointSet,
    pub resolutions: Vec<Vec<u32>>,
    pub variants: Vec<Variant>,
    pub options: BoundOptions,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: ExperimentConfig = serde_json::from_str(&text)?;
        if cfg.schema != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema {} (expected {SCHEMA_VERSION})",
                cfg.schema
            )));
        }
        Ok(cfg)
    }

    pub fn source(&self) -> Result<Option<Source>> {
        let has_hybrid = self.walsh.is_some() || self.badic.is_some();
        match (&self.points, &self.generator, has_hybrid) {
            (None, None, false) => Ok(None),
            (None, Some(g), false) => Ok(Some(Source::Single(Generator::parse(g)?))),
            (None, None, true) => Ok(Some(Source::Hybrid {
                walsh: self.walsh.as_deref().map(Generator::parse).transpose()?,
                badic: self.badic.as_deref().map(Generator::parse).transpose()?,
            })),
            (Some(_), None, false) => Ok(None),
            _ => Err(Error::Config(
                "use exactly one of points, generator, or walsh/badic".into(),
            )),
        }
    }

    pub fn tag_list(&self) -> Result<Option<Vec<SystemTag>>> {
        self.tags.as_deref().map(parse_tags).transpose()
    }

    pub fn options(&self) -> BoundOptions {
        BoundOptions {
            budget: self.budget.unwrap_or(DEFAULT_BUDGET),
            per_k: self.per_k,
            chunk_size: self.chunk_size.unwrap_or(DEFAULT_CHUNK_SIZE),
        }
    }

    /// Spec and points from a file or a generator.
    pub fn load_points(&self) -> Result<(HybridSystemSpec, PointSet)> {
        let tags = self.tag_list()?;
        let (spec, points) = match (&self.points, self.source()?) {
            (Some(path), _) => {
                let points = pointfile::read(path)?;
                let tags = tags.unwrap_or_else(|| vec![SystemTag::Walsh; points.dim()]);
                (HybridSystemSpec::from_parts(points.bases(), &tags)?, points)
            }
            (None, Some(source)) => {
                let n = self
                    .n
                    .ok_or_else(|| Error::Config("the number of points n is required".into()))?;
                let spec = source.spec(tags.as_deref())?;
                let points = source.points(&spec, self.start, n)?;
                (spec, points)
            }
            (None, None) => {
                return Err(Error::Config(
                    "no points: give a point file, a generator, or walsh/badic parts".into(),
                ))
            }
        };
        if let Some(expected) = &self.bases {
            let expected: Vec<Base> = parse_bases(expected)?;
            if expected != spec.bases() {
                return Err(Error::Config(format!(
                    "declared bases {expected:?} do not match the points {:?}",
                    spec.bases()
                )));
            }
        }
        Ok((spec, points))
    }

    /// Resolution vectors expanded to the dimension `s`.
    pub fn resolutions(&self, s: usize) -> Result<Vec<Vec<u32>>> {
        if self.g.is_empty() {
            return Err(Error::Config(
                "at least one resolution g is required".into(),
            ));
        }
        self.g
            .iter()
            .map(|g| {
                let g = match g.as_slice() {
                    [x] => vec![*x; s],
                    _ => g.clone(),
                };
                if g.len() != s {
                    return Err(Error::Config(format!(
                        "resolution {g:?} has {} components, points have {s}",
                        g.len()
                    )));
                }
                if g.contains(&0) {
                    return Err(hetk_core::Error::ZeroResolution.into());
                }
                Ok(g)
            })
            .collect()
    }

    pub fn experiment(&self) -> Result<Experiment> {
        // resolution errors are reported before any points are generated
        if self.g.iter().any(|g| g.contains(&0)) {
            return Err(hetk_core::Error::ZeroResolution.into());
        }
        let (spec, points) = self.load_points()?;
        Ok(Experiment {
            resolutions: self.resolutions(spec.dim())?,
            variants: self.variant.variants(),
            options: self.options(),
            spec,
            points,
        })
    }
}

/// Parses `3` or `2,3` into a resolution vector.
pub fn parse_resolution(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Config(format!("`{t}` is not a resolution component")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let cfg = ExperimentConfig {
            generator: Some("halton:2,3".into()),
            tags: Some("w,b".into()),
            n: Some(12),
            g: vec![vec![2, 2], vec![3]],
            variant: VariantChoice::Both,
            oracle: true,
            seed: Some(7),
            ..ExperimentConfig::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        assert!(text.contains("\"schema\":1"));
        let back: ExperimentConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
        let ex = back.experiment().unwrap();
        assert_eq!(ex.resolutions, vec![vec![2, 2], vec![3, 3]]);
        assert_eq!(ex.points.len(), 12);
        assert_eq!(ex.variants.len(), 2);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"schema":1,"generator":"vdc:2","n":4,"g":[[3]],"colour":"red"}"#;
        assert!(serde_json::from_str::<ExperimentConfig>(text).is_err());
    }

    #[test]
    fn zero_resolution_message() {
        let cfg = ExperimentConfig {
            generator: Some("vdc:2".into()),
            n: Some(8),
            g: vec![vec![0]],
            ..ExperimentConfig::default()
        };
        let err = cfg.experiment().unwrap_err();
        assert_eq!(err.to_string(), "resolution components must be ≥ 1");
    }

    #[test]
    fn conflicting_sources() {
        let cfg = ExperimentConfig {
            generator: Some("vdc:2".into()),
            walsh: Some("vdc:2".into()),
            n: Some(8),
            g: vec![vec![1]],
            ..ExperimentConfig::default()
        };
        assert!(cfg.experiment().is_err());
    }
}
