use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::{cohomology, CohomologyData, DegreeCohomology, GradedMap, GradedSpace};
use crate::linalg::scalar::sign;
use crate::linalg::{vector, Matrix, Scalar};

/// Sparse vector as `(index, coefficient)` pairs with nonzero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

/// A bracket entry whose output was declared in the wrong degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrayEntry {
    pub left: (i32, usize),
    pub right: (i32, usize),
    pub target: (i32, usize),
    pub coeff: Scalar,
}

/// A finite-dimensional DGLA on a bounded window.
///
/// When `truncated_above` is set the algebra continues past `max`: brackets
/// landing above the window and the differential out of `max` are unknown
/// and evaluating them is an error. Otherwise everything outside the window
/// is zero.
#[derive(Clone, Debug)]
pub struct Dgla {
    name: String,
    space: GradedSpace,
    diff: GradedMap,
    truncated_above: bool,
    bracket: BTreeMap<(i32, i32), Vec<SparseVec>>,
    stray: Vec<StrayEntry>,
    cohomology: OnceLock<std::result::Result<CohomologyData, Error>>,
}

impl Dgla {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn min(&self) -> i32 {
        self.space.min()
    }

    pub fn max(&self) -> i32 {
        self.space.max()
    }

    pub fn dim(&self, d: i32) -> usize {
        self.space.dim(d)
    }

    pub fn truncated_above(&self) -> bool {
        self.truncated_above
    }

    pub fn label(&self, d: i32, k: usize) -> &str {
        self.space.label(d, k)
    }

    pub fn differential(&self) -> &GradedMap {
        &self.diff
    }

    pub fn stray_entries(&self) -> &[StrayEntry] {
        &self.stray
    }

    /// Raw bracket table for the degree pair, if any entry is stored.
    pub fn bracket_block(&self, i: i32, j: i32) -> Option<&Vec<SparseVec>> {
        self.bracket.get(&(i, j))
    }

    pub(crate) fn bracket_table(&self) -> &BTreeMap<(i32, i32), Vec<SparseVec>> {
        &self.bracket
    }

    /// Whether degree `d` is known to be zero or explicitly represented.
    pub fn degree_known(&self, d: i32) -> bool {
        !(self.truncated_above && d > self.max())
    }

    pub fn can_bracket(&self, i: i32, j: i32) -> bool {
        self.degree_known(i + j)
    }

    /// Whether the differential out of degree `i` is known.
    pub fn can_differentiate(&self, i: i32) -> bool {
        !self.space.in_window(i) || self.diff.block(i).is_some()
    }

    pub fn diff_block(&self, i: i32) -> Option<&Matrix> {
        self.diff.block(i)
    }

    pub fn d(&self, i: i32, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(i, v)?;
        if !self.space.in_window(i) {
            return Ok(vector::zeros(self.dim(i + 1)));
        }
        self.diff.apply(i, v)
    }

    fn check_len(&self, i: i32, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim(i) {
            return Err(Error::Shape(format!(
                "vector of length {} in degree {i} of dimension {}",
                v.len(),
                self.dim(i)
            )));
        }
        Ok(())
    }

    /// `[e_k, e_l]` for basis vectors of degrees `i` and `j`.
    pub fn bracket_basis(&self, i: i32, k: usize, j: i32, l: usize) -> Result<&[(usize, Scalar)]> {
        if !self.can_bracket(i, j) {
            return Err(Error::Window(format!(
                "bracket of degrees {i} and {j} lands above the window"
            )));
        }
        Ok(self
            .bracket
            .get(&(i, j))
            .map(|t| t[k * self.dim(j) + l].as_slice())
            .unwrap_or(&[]))
    }

    pub fn bracket(&self, i: i32, a: &[Scalar], j: i32, b: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(i, a)?;
        self.check_len(j, b)?;
        if !self.can_bracket(i, j) {
            return Err(Error::Window(format!(
                "bracket of degrees {i} and {j} lands above the window"
            )));
        }
        let mut out = vector::zeros(self.dim(i + j));
        let Some(t) = self.bracket.get(&(i, j)) else {
            return Ok(out);
        };
        let dj = self.dim(j);
        for (k, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (l, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (m, c) in &t[k * dj + l] {
                    out[*m] += &xy * c;
                }
            }
        }
        Ok(out)
    }

    /// Bracket with a sparse right argument.
    pub fn bracket_sparse(
        &self,
        i: i32,
        a: &[(usize, Scalar)],
        j: i32,
        b: &[(usize, Scalar)],
    ) -> Result<Vec<Scalar>> {
        if !self.can_bracket(i, j) {
            return Err(Error::Window(format!(
                "bracket of degrees {i} and {j} lands above the window"
            )));
        }
        let mut out = vector::zeros(self.dim(i + j));
        let Some(t) = self.bracket.get(&(i, j)) else {
            return Ok(out);
        };
        let dj = self.dim(j);
        for (k, x) in a {
            for (l, y) in b {
                let xy = x * y;
                for (m, c) in &t[k * dj + l] {
                    out[*m] += &xy * c;
                }
            }
        }
        Ok(out)
    }

    /// Cohomology wherever it is determined, computed once.
    pub fn cohomology(&self) -> Result<&CohomologyData> {
        self.cohomology
            .get_or_init(|| cohomology(&self.space, &self.diff))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `dim H^i`, with zero outside a closed window and `None` when unknown.
    /// Cohomology in degree `i`, also outside the window where it is zero.
    pub fn cohomology_degree(&self, i: i32) -> Result<DegreeCohomology> {
        if self.space.in_window(i) {
            return self.cohomology()?.at(i).cloned();
        }
        if self.degree_known(i) {
            return Ok(DegreeCohomology::trivial(i));
        }
        Err(Error::Window(format!(
            "cohomology unavailable in degree {i}"
        )))
    }

    pub fn h_dim(&self, i: i32) -> Result<Option<usize>> {
        if !self.space.in_window(i) {
            return Ok(if self.degree_known(i) { Some(0) } else { None });
        }
        Ok(self.cohomology()?.dim(i))
    }
}

pub fn sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Incremental construction of a [`Dgla`].
#[derive(Clone, Debug)]
pub struct DglaBuilder {
    name: String,
    min: i32,
    max: i32,
    truncated: bool,
    labels: BTreeMap<i32, Vec<String>>,
    diff: BTreeMap<i32, Matrix>,
    entries: BTreeMap<(i32, usize, i32, usize), BTreeMap<usize, Scalar>>,
    stray: Vec<StrayEntry>,
}

impl DglaBuilder {
    pub fn new(name: impl Into<String>, min: i32, max: i32) -> Self {
        DglaBuilder {
            name: name.into(),
            min,
            max,
            truncated: false,
            labels: BTreeMap::new(),
            diff: BTreeMap::new(),
            entries: BTreeMap::new(),
            stray: Vec::new(),
        }
    }

    pub fn truncated_above(mut self, t: bool) -> Self {
        self.truncated = t;
        self
    }

    pub fn degree<S: Into<String>>(mut self, d: i32, labels: impl IntoIterator<Item = S>) -> Self {
        self.labels
            .insert(d, labels.into_iter().map(Into::into).collect());
        self
    }

    pub fn set_degree(&mut self, d: i32, labels: Vec<String>) {
        self.labels.insert(d, labels);
    }

    pub fn dim(&self, d: i32) -> usize {
        self.labels.get(&d).map_or(0, Vec::len)
    }

    pub fn differential(mut self, d: i32, m: Matrix) -> Self {
        self.diff.insert(d, m);
        self
    }

    pub fn set_differential(&mut self, d: i32, m: Matrix) {
        self.diff.insert(d, m);
    }

    /// Adds `c * e_m` to `[e_k, e_l]` with `e_m` in degree `i + j`.
    pub fn add_bracket(&mut self, i: i32, k: usize, j: i32, l: usize, m: usize, c: Scalar) {
        if c.is_zero() {
            self.entries.entry((i, k, j, l)).or_default();
            return;
        }
        let e = self
            .entries
            .entry((i, k, j, l))
            .or_default()
            .entry(m)
            .or_default();
        *e += c;
    }

    pub fn bracket(mut self, i: i32, k: usize, j: i32, l: usize, m: usize, c: Scalar) -> Self {
        self.add_bracket(i, k, j, l, m, c);
        self
    }

    fn find(&self, label: &str) -> Result<(i32, usize)> {
        self.labels
            .iter()
            .find_map(|(d, ls)| ls.iter().position(|l| l == label).map(|k| (*d, k)))
            .ok_or_else(|| Error::Parse(format!("unknown basis label {label:?}")))
    }

    /// Adds `[a, b] += Σ c·t` by labels; a target in the wrong degree is
    /// recorded so that validation can report it.
    pub fn bracket_labels(mut self, a: &str, b: &str, terms: &[(&str, Scalar)]) -> Result<Self> {
        let (i, k) = self.find(a)?;
        let (j, l) = self.find(b)?;
        for (t, c) in terms {
            let (dt, m) = self.find(t)?;
            if dt == i + j {
                self.add_bracket(i, k, j, l, m, c.clone());
            } else {
                self.stray.push(StrayEntry {
                    left: (i, k),
                    right: (j, l),
                    target: (dt, m),
                    coeff: c.clone(),
                });
            }
        }
        Ok(self)
    }

    pub fn build(self) -> Result<Dgla> {
        let labels: Vec<Vec<String>> = (self.min..=self.max)
            .map(|d| self.labels.get(&d).cloned().unwrap_or_default())
            .collect();
        if let Some(d) = self
            .labels
            .keys()
            .find(|d| **d < self.min || **d > self.max)
        {
            return Err(Error::Window(format!("degree {d} outside the window")));
        }
        let space = GradedSpace::new(self.min, self.max, labels)?;
        let mut diff = GradedMap::new(1);
        for d in space.degrees() {
            let known_target = d < self.max || !self.truncated;
            match self.diff.get(&d) {
                Some(m) => {
                    if !known_target {
                        return Err(Error::Window(format!(
                            "differential out of the truncated top degree {d}"
                        )));
                    }
                    diff.blocks.insert(d, m.clone());
                }
                None if known_target => {
                    diff.blocks
                        .insert(d, Matrix::zeros(space.dim(d + 1), space.dim(d)));
                }
                None => {}
            }
        }
        diff.check_shapes(&space, &space)?;

        let mut entries = self.entries;
        let keys: Vec<_> = entries.keys().cloned().collect();
        for (i, k, j, l) in keys {
            if !entries.contains_key(&(j, l, i, k)) {
                let s = -sign((i * j) as i64);
                let mirror = entries[&(i, k, j, l)]
                    .iter()
                    .map(|(m, c)| (*m, c * &s))
                    .collect();
                entries.insert((j, l, i, k), mirror);
            }
        }
        let mut bracket: BTreeMap<(i32, i32), Vec<SparseVec>> = BTreeMap::new();
        for ((i, k, j, l), v) in entries {
            let t = i + j;
            let (di, dj) = (space.dim(i), space.dim(j));
            if k >= di || l >= dj {
                return Err(Error::Shape(format!(
                    "bracket index ({k},{l}) out of range for degrees ({i},{j})"
                )));
            }
            let v: SparseVec = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if v.is_empty() {
                continue;
            }
            if !space.in_window(t) {
                return Err(Error::Window(format!(
                    "bracket of degrees {i} and {j} lands outside the window"
                )));
            }
            if let Some((m, _)) = v.iter().find(|(m, _)| *m >= space.dim(t)) {
                return Err(Error::Shape(format!(
                    "bracket target index {m} out of range in degree {t}"
                )));
            }
            bracket
                .entry((i, j))
                .or_insert_with(|| vec![Vec::new(); di * dj])[k * dj + l] = v;
        }
        Ok(Dgla {
            name: self.name,
            space,
            diff,
            truncated_above: self.truncated,
            bracket,
            stray: self.stray,
            cohomology: OnceLock::new(),
        })
    }
}
