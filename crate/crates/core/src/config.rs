//! Integer point configurations and their JSON form.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of labelled integer points in `Z^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointConfiguration {
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub points: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawConfiguration {
    #[serde(default)]
    name: Option<String>,
    dim: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
    points: Vec<Vec<i64>>,
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl PointConfiguration {
    pub fn new(name: impl Into<String>, dim: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        let labels = default_labels(points.len());
        Self::with_labels(name, dim, labels, points)
    }

    pub fn with_labels(
        name: impl Into<String>,
        dim: usize,
        labels: Vec<String>,
        points: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let cfg = PointConfiguration { name: name.into(), dim, labels, points };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Invalid("dim must be at least 1".into()));
        }
        if self.points.is_empty() {
            return Err(Error::Invalid("configuration has no points".into()));
        }
        if self.labels.len() != self.points.len() {
            return Err(Error::Invalid(format!(
                "{} labels for {} points",
                self.labels.len(),
                self.points.len()
            )));
        }
        for (i, p) in self.points.iter().enumerate() {
            if p.len() != self.dim {
                return Err(Error::Invalid(format!(
                    "point {} has {} coordinates, expected {}",
                    self.labels[i],
                    p.len(),
                    self.dim
                )));
            }
        }
        let mut seen = HashSet::new();
        for l in &self.labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Invalid(format!("duplicate label {l:?}")));
            }
        }
        let mut seen = HashSet::new();
        for (i, p) in self.points.iter().enumerate() {
            if !seen.insert(p) {
                return Err(Error::Degenerate(format!("point {} repeats an earlier point", self.labels[i])));
            }
        }
        Ok(())
    }

    /// Appends the homogenizing coordinate: `b -> (b, 1)`.
    pub fn lifted(&self) -> Vec<Vec<i64>> {
        self.points.iter().map(|p| p.iter().copied().chain(std::iter::once(1)).collect()).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawConfiguration = serde_json::from_str(text)?;
        let labels = raw.labels.unwrap_or_else(|| default_labels(raw.points.len()));
        Self::with_labels(raw.name.unwrap_or_default(), raw.dim, labels, raw.points)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configuration serializes")
    }

    /// The sub-configuration on the given element indices (labels kept).
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        Self::with_labels(
            self.name.clone(),
            self.dim,
            indices.iter().map(|&i| self.labels[i].clone()).collect(),
            indices.iter().map(|&i| self.points[i].clone()).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_default_labels() {
        let cfg =
            PointConfiguration::from_json(r#"{"name":"square","dim":2,"points":[[0,0],[1,0],[0,1],[1,1]]}"#)
                .unwrap();
        assert_eq!(cfg.labels, vec!["e1", "e2", "e3", "e4"]);
        assert_eq!(cfg.lifted()[3], vec![1, 1, 1]);
        assert_eq!(cfg.index_of("e3").unwrap(), 2);
        assert!(matches!(cfg.index_of("x"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn round_trips_through_json() {
        let cfg =
            PointConfiguration::with_labels("seg", 1, vec!["a".into(), "b".into()], vec![vec![0], vec![3]])
                .unwrap();
        assert_eq!(PointConfiguration::from_json(&cfg.to_json()).unwrap(), cfg);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            PointConfiguration::new("dup", 1, vec![vec![0], vec![0]]),
            Err(Error::Degenerate(_))
        ));
        assert!(PointConfiguration::new("ragged", 2, vec![vec![0], vec![0, 1]]).is_err());
        assert!(PointConfiguration::new("empty", 2, vec![]).is_err());
        assert!(PointConfiguration::from_json(r#"{"dim":1,"labels":["a","a"],"points":[[0],[1]]}"#).is_err());
        assert!(PointConfiguration::from_json(r#"{"dim":1,"points":[[0.5]]}"#).is_err());
    }
}
