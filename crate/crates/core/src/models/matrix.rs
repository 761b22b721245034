use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{LabError, Result};

/// Provenance of an [`IntMatrix`]; determines which entry invariants hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelTag {
    IidRademacher,
    RowRegular,
    BaseAssembled,
    External,
}

impl ModelTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelTag::IidRademacher => "iid-rademacher",
            ModelTag::RowRegular => "row-regular",
            ModelTag::BaseAssembled => "base-assembled",
            ModelTag::External => "external",
        }
    }
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelTag {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "iid-rademacher" => Ok(ModelTag::IidRademacher),
            "row-regular" => Ok(ModelTag::RowRegular),
            "base-assembled" => Ok(ModelTag::BaseAssembled),
            "external" => Ok(ModelTag::External),
            other => Err(LabError::Parse(format!("unknown model tag `{other}`"))),
        }
    }
}

/// Dense square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
    tag: ModelTag,
}

impl IntMatrix {
    /// Build a matrix, checking the entry invariants implied by `tag`.
    pub fn new(n: usize, entries: Vec<i64>, tag: ModelTag) -> Result<Self> {
        if n == 0 {
            return Err(LabError::InvalidParameter("n must be positive".into()));
        }
        if entries.len() != n * n {
            return Err(LabError::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        let m = Self { n, entries, tag };
        m.check_invariants()?;
        Ok(m)
    }

    /// Build from explicit rows. Tagged `External`.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(LabError::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(n, entries, ModelTag::External)
    }

    pub(crate) fn from_parts_unchecked(n: usize, entries: Vec<i64>, tag: ModelTag) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, entries, tag }
    }

    pub fn check_invariants(&self) -> Result<()> {
        match self.tag {
            ModelTag::IidRademacher => {
                if let Some(x) = self.entries.iter().find(|&&x| x != 1 && x != -1) {
                    return Err(LabError::InvalidParameter(format!(
                        "Rademacher matrix has entry {x}"
                    )));
                }
            }
            ModelTag::RowRegular | ModelTag::BaseAssembled => {
                if !self.n.is_multiple_of(2) {
                    return Err(LabError::OddDimension(self.n));
                }
                for (i, row) in self.rows().enumerate() {
                    if row.iter().any(|&x| x != 0 && x != 1) {
                        return Err(LabError::InvalidParameter(format!(
                            "row {i} has a non-binary entry"
                        )));
                    }
                    let s: i64 = row.iter().sum();
                    if s as usize != self.n / 2 {
                        return Err(LabError::InvalidParameter(format!(
                            "row {i} sums to {s}, expected {}",
                            self.n / 2
                        )));
                    }
                }
            }
            ModelTag::External => {}
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tag(&self) -> ModelTag {
        self.tag
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks_exact(self.n)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                t[j * n + i] = self.entries[i * n + j];
            }
        }
        Self {
            n,
            entries: t,
            tag: ModelTag::External,
        }
    }

    /// `M v` over the reals.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.rows()
            .map(|row| row.iter().zip(v).map(|(&a, &b)| a as f64 * b).sum())
            .collect()
    }

    /// `M v` over the integers.
    pub fn apply_int(&self, v: &[i64]) -> Vec<i64> {
        self.rows()
            .map(|row| row.iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn to_real(&self) -> DMatrix<f64> {
        DMatrix::from_row_iterator(self.n, self.n, self.entries.iter().map(|&x| x as f64))
    }

    /// Plain-text form: a header line `n model_tag`, then `n` rows of
    /// space-separated integers.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.tag);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| LabError::Parse("empty matrix file".into()))?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| LabError::Parse(format!("bad header `{header}`")))?;
        let tag = match parts.next() {
            Some(t) => t.parse()?,
            None => ModelTag::External,
        };
        let mut entries = Vec::with_capacity(n * n);
        for (i, line) in lines.enumerate() {
            let row: Vec<i64> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| LabError::Parse(format!("bad entry `{t}` on row {i}")))
                })
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(LabError::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            entries.extend(row);
        }
        Self::new(n, entries, tag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let m = IntMatrix::new(2, vec![1, 0, 0, 1], ModelTag::RowRegular).unwrap();
        let text = m.to_text();
        assert_eq!(text, "2 row-regular\n1 0\n0 1\n");
        assert_eq!(IntMatrix::from_text(&text).unwrap(), m);
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(IntMatrix::new(2, vec![1, 1, 0, 1], ModelTag::RowRegular).is_err());
        assert!(IntMatrix::new(2, vec![1, 0, 0, 1], ModelTag::IidRademacher).is_err());
        assert!(IntMatrix::new(3, vec![1; 9], ModelTag::RowRegular).is_err());
        assert!(IntMatrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn apply_matches_integer_product() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(m.apply_int(&[1, -1]), vec![-1, -1]);
        assert_eq!(m.apply(&[1.0, -1.0]), vec![-1.0, -1.0]);
        assert_eq!(m.transpose().row(0), &[1, 3]);
    }
}
