use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A graded vector space supported on the window `[min, max]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    min: i32,
    max: i32,
    labels: Vec<Vec<String>>,
}

impl GradedSpace {
    /// `labels[k]` names the basis of degree `min + k`.
    pub fn new(min: i32, max: i32, labels: Vec<Vec<String>>) -> Result<Self> {
        if max < min {
            return Err(Error::Shape(format!("empty window [{min}, {max}]")));
        }
        if labels.len() != (max - min + 1) as usize {
            return Err(Error::Shape(format!(
                "{} label lists for window [{min}, {max}]",
                labels.len()
            )));
        }
        for (k, ls) in labels.iter().enumerate() {
            let set: BTreeSet<_> = ls.iter().collect();
            if set.len() != ls.len() {
                return Err(Error::Shape(format!(
                    "duplicate basis labels in degree {}",
                    min + k as i32
                )));
            }
        }
        Ok(GradedSpace { min, max, labels })
    }

    /// Space with generated labels `v{degree}_{index}`.
    pub fn with_dims(min: i32, dims: &[usize]) -> Result<Self> {
        let labels = dims
            .iter()
            .enumerate()
            .map(|(k, &n)| {
                let d = min + k as i32;
                (0..n).map(|i| format!("v{d}_{i}")).collect()
            })
            .collect();
        GradedSpace::new(min, min + dims.len() as i32 - 1, labels)
    }

    #[inline]
    pub fn min(&self) -> i32 {
        self.min
    }

    #[inline]
    pub fn max(&self) -> i32 {
        self.max
    }

    pub fn in_window(&self, d: i32) -> bool {
        d >= self.min && d <= self.max
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.min..=self.max
    }

    /// Dimension in degree `d`; zero outside the window.
    pub fn dim(&self, d: i32) -> usize {
        if self.in_window(d) {
            self.labels[(d - self.min) as usize].len()
        } else {
            0
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, d: i32) -> &[String] {
        if self.in_window(d) {
            &self.labels[(d - self.min) as usize]
        } else {
            &[]
        }
    }

    pub fn label(&self, d: i32, k: usize) -> &str {
        &self.labels(d)[k]
    }

    pub fn index_of(&self, d: i32, label: &str) -> Option<usize> {
        self.labels(d).iter().position(|l| l == label)
    }

    /// Finds a label in any degree.
    pub fn find(&self, label: &str) -> Option<(i32, usize)> {
        self.degrees()
            .find_map(|d| self.index_of(d, label).map(|k| (d, k)))
    }

    pub fn total_dim(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }
}

/// `V[n]` with `V[n]^i = V^{i+n}`.
pub fn shift(space: &GradedSpace, n: i32) -> GradedSpace {
    GradedSpace {
        min: space.min - n,
        max: space.max - n,
        labels: space.labels.clone(),
    }
}
