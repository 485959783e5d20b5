//! Built-in presentations, stored as TOML data files, and the loader for
//! user-supplied presentation files.
//!
//! A presentation file lists generators in order (`name`, `parity`) and
//! relations as expression strings; `lhs = rhs` means `lhs - rhs = 0`.
//! Optional keys: `order` (weight tiers, one weight per generator),
//! `invert` (pairs `[g, g_inverse]` to localize at), `max_word_len` and
//! `max_rules`.

use std::path::Path;
use std::sync::OnceLock;

use serde::Deserialize;
use thiserror::Error;

use crate::cli::{parse_relation, Alphabet, ParseError};
use crate::Rat;

use super::{AlgebraError, Generator, Limits, Localization, MonomialOrder, Presentation};

type Pres = Presentation<crate::RatFunc>;

#[derive(Debug, Error)]
pub enum PresetError {
    #[error("unknown preset `{0}`")]
    Unknown(String),
    #[error("invalid presentation file: {0}")]
    Format(String),
    #[error("relation {index} `{text}`: {error}")]
    Relation { index: usize, text: String, error: ParseError },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// The eight named presentations.
pub const PRESET_NAMES: [&str; 8] =
    ["gr2", "gr11", "gr11_localized", "gr11_inverse", "plane_p20", "plane_q02", "plane_p11", "plane_q11_dual"];

/// One-parameter presentations built directly in `p`.
pub const ONE_PARAMETER_NAMES: [&str; 2] = ["gr2_oneparam", "gr11_oneparam"];

const EMBEDDED: [(&str, &str); 10] = [
    ("gr2", include_str!("../../presets/gr2.toml")),
    ("gr11", include_str!("../../presets/gr11.toml")),
    ("gr11_localized", include_str!("../../presets/gr11_localized.toml")),
    ("gr11_inverse", include_str!("../../presets/gr11_inverse.toml")),
    ("plane_p20", include_str!("../../presets/plane_p20.toml")),
    ("plane_q02", include_str!("../../presets/plane_q02.toml")),
    ("plane_p11", include_str!("../../presets/plane_p11.toml")),
    ("plane_q11_dual", include_str!("../../presets/plane_q11_dual.toml")),
    ("gr2_oneparam", include_str!("../../presets/gr2_oneparam.toml")),
    ("gr11_oneparam", include_str!("../../presets/gr11_oneparam.toml")),
];

/// Deserialized presentation file.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetSource {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub generators: Vec<Generator>,
    pub relations: Vec<String>,
    #[serde(default)]
    pub order: Vec<Vec<i64>>,
    #[serde(default)]
    pub invert: Vec<[String; 2]>,
    pub max_word_len: Option<usize>,
    pub max_rules: Option<usize>,
}

impl PresetSource {
    pub fn from_toml(text: &str) -> Result<Self, PresetError> {
        toml::from_str(text).map_err(|e| PresetError::Format(e.to_string()))
    }

    pub fn embedded(name: &str) -> Result<Self, PresetError> {
        let (_, text) = EMBEDDED.iter().find(|(n, _)| *n == name).ok_or_else(|| PresetError::Unknown(name.to_string()))?;
        Self::from_toml(text)
    }

    pub fn from_file(path: &Path) -> Result<Self, PresetError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PresetError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_toml(&text)
    }

    /// Replace the text `from` by `to` inside relation `index`.
    pub fn mutate(&self, index: usize, from: &str, to: &str) -> Result<Self, PresetError> {
        let mut out = self.clone();
        let rel = out
            .relations
            .get_mut(index)
            .ok_or_else(|| PresetError::Format(format!("no relation {index} in `{}`", self.name)))?;
        if !rel.contains(from) {
            return Err(PresetError::Format(format!("relation {index} of `{}` does not contain `{from}`", self.name)));
        }
        *rel = rel.replacen(from, to, 1);
        Ok(out)
    }

    fn inverse_pairs(&self) -> Result<Vec<(usize, usize)>, PresetError> {
        let index = |n: &str| {
            self.generators
                .iter()
                .position(|g| g.name == n)
                .ok_or_else(|| PresetError::Algebra(AlgebraError::UnknownGenerator(n.to_string())))
        };
        self.invert.iter().map(|[g, ginv]| Ok((index(g)?, index(ginv)?))).collect()
    }

    pub fn build(&self) -> Result<Pres, PresetError> {
        let pairs = self.inverse_pairs()?;
        let alphabet = Alphabet::new(self.generators.iter().map(|g| g.name.clone()).collect(), &pairs);
        let relations = self
            .relations
            .iter()
            .enumerate()
            .map(|(index, text)| {
                parse_relation::<Rat>(text, &alphabet).map_err(|error| PresetError::Relation { index, text: text.clone(), error })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let defaults = Limits::default();
        let limits = Limits {
            max_word_len: self.max_word_len.unwrap_or(defaults.max_word_len),
            max_rules: self.max_rules.unwrap_or(defaults.max_rules),
        };
        let order = MonomialOrder::weighted(self.order.clone());
        let pres = if pairs.is_empty() {
            Presentation::build(self.name.clone(), self.generators.clone(), order, relations, Vec::new(), limits)?
        } else {
            Presentation::localized(self.name.clone(), self.generators.clone(), order, relations, &Localization::new(pairs), limits)?
        };
        Ok(pres)
    }
}

/// A built-in presentation, built once and shared.
pub fn preset(name: &str) -> Result<&'static Pres, PresetError> {
    static SLOTS: [OnceLock<Pres>; 10] = [const { OnceLock::new() }; 10];
    let i = EMBEDDED.iter().position(|(n, _)| *n == name).ok_or_else(|| PresetError::Unknown(name.to_string()))?;
    if let Some(p) = SLOTS[i].get() {
        return Ok(p);
    }
    let built = PresetSource::embedded(name)?.build()?;
    Ok(SLOTS[i].get_or_init(|| built))
}

/// Names accepted by [`preset`].
pub fn all_names() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(n, _)| *n)
}

pub fn load_file(path: &Path) -> Result<Pres, PresetError> {
    PresetSource::from_file(path)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_embedded_file_builds() {
        for name in all_names() {
            let p = preset(name).unwrap();
            assert_eq!(p.label(), name);
        }
    }

    #[test]
    fn unknown_names_are_reported() {
        assert!(matches!(preset("gl2"), Err(PresetError::Unknown(_))));
    }

    #[test]
    fn mutation_edits_one_relation() {
        let src = PresetSource::embedded("gr2").unwrap();
        let m = src.mutate(0, "+ p^-1", "- p^-1").unwrap();
        assert_eq!(m.relations[0], "alpha*beta - p^-1*beta*alpha");
        assert_eq!(m.relations[1..], src.relations[1..]);
        assert!(src.mutate(0, "zeta", "eta").is_err());
    }

    #[test]
    fn bad_files_are_rejected() {
        assert!(matches!(PresetSource::from_toml("name = 3"), Err(PresetError::Format(_))));
        let src = PresetSource::from_toml(
            "name = \"t\"\ngenerators = [{ name = \"x\", parity = \"even\" }]\nrelations = [\"x*y\"]\n",
        )
        .unwrap();
        assert!(matches!(src.build(), Err(PresetError::Relation { index: 0, .. })));
    }
}
