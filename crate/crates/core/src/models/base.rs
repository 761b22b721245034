use std::collections::HashMap;

use crate::{LabError, Result};

/// A perfect matching of `0..n`, stored as ordered pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(LabError::NotAMatching(format!("odd vertex count {n}")));
        }
        if pairs.len() != n / 2 {
            return Err(LabError::NotAMatching(format!(
                "{} edges for {n} vertices",
                pairs.len()
            )));
        }
        let mut seen = vec![false; n];
        for &(a, b) in &pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(LabError::NotAMatching(format!("vertex {x} out of range")));
                }
                if seen[x] {
                    return Err(LabError::NotAMatching(format!("vertex {x} covered twice")));
                }
                seen[x] = true;
            }
        }
        Ok(Self { n, pairs })
    }

    /// The matching `{perm[2k], perm[2k+1]}` induced by a permutation.
    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        let pairs = perm.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        Self::new(perm.len(), pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

/// The base of the two-step model: one permutation of `0..n` per row,
/// together with the matchings they induce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Base {
    n: usize,
    perms: Vec<Vec<usize>>,
    matchings: Vec<Matching>,
}

impl Base {
    pub fn new(perms: Vec<Vec<usize>>) -> Result<Self> {
        let n = perms.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(LabError::OddDimension(n));
        }
        for (i, p) in perms.iter().enumerate() {
            if p.len() != n {
                return Err(LabError::DimensionMismatch {
                    expected: n,
                    found: p.len(),
                });
            }
            let mut seen = vec![false; n];
            for &x in p {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(LabError::InvalidParameter(format!(
                        "row {i} is not a permutation of 0..{n}"
                    )));
                }
            }
        }
        let matchings = perms
            .iter()
            .map(|p| Matching::from_permutation(p))
            .collect::<Result<_>>()?;
        Ok(Self {
            n,
            perms,
            matchings,
        })
    }

    /// Every row uses the same permutation.
    pub fn uniform(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        Self::new(vec![perm; n])
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::uniform((0..n).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perm(&self, i: usize) -> &[usize] {
        &self.perms[i]
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn matching(&self, i: usize) -> &Matching {
        &self.matchings[i]
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    /// One line per row, permutation in one-line notation with 1-based values.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.perms {
            let line: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let perms = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split_whitespace()
                    .map(|t| match t.parse::<usize>() {
                        Ok(x) if x >= 1 => Ok(x - 1),
                        _ => Err(LabError::Parse(format!("bad permutation entry `{t}`"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(perms)
    }
}

/// The per-row bits xi_i(k) of the two-step model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitChoices {
    rows: Vec<Vec<bool>>,
}

impl BitChoices {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| 2 * r.len() != n) {
            return Err(LabError::DimensionMismatch {
                expected: n / 2,
                found: r.len(),
            });
        }
        Ok(Self { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.rows[i]
    }
}

/// Connected components of the union multigraph of two perfect matchings.
pub fn union_components(m1: &Matching, m2: &Matching) -> Result<usize> {
    if m1.n != m2.n {
        return Err(LabError::DimensionMismatch {
            expected: m1.n,
            found: m2.n,
        });
    }
    let mut parent: Vec<usize> = (0..m1.n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = m1.n;
    for &(a, b) in m1.pairs.iter().chain(&m2.pairs) {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    Ok(components)
}

fn membership(n: usize, set: &[usize]) -> Result<Vec<bool>> {
    let mut mark = vec![false; n];
    for &x in set {
        if x >= n {
            return Err(LabError::IndexOutOfRange { index: x, len: n });
        }
        mark[x] = true;
    }
    Ok(mark)
}

/// Number of matching edges with one endpoint in `a` and the other in `b`.
pub fn cross_edges(m: &Matching, a: &[usize], b: &[usize]) -> Result<usize> {
    let in_a = membership(m.n, a)?;
    let in_b = membership(m.n, b)?;
    if let Some(x) = (0..m.n).find(|&x| in_a[x] && in_b[x]) {
        return Err(LabError::OverlappingSets(x));
    }
    Ok(m
        .pairs
        .iter()
        .filter(|&&(x, y)| (in_a[x] && in_b[y]) || (in_a[y] && in_b[x]))
        .count())
}

/// The length-n/2 vector `v[sigma_i(2k)] - v[sigma_i(2k+1)]`.
pub fn difference_vector(v: &[i64], base: &Base, i: usize) -> Result<Vec<i64>> {
    if v.len() != base.n {
        return Err(LabError::DimensionMismatch {
            expected: base.n,
            found: v.len(),
        });
    }
    if i >= base.n {
        return Err(LabError::IndexOutOfRange {
            index: i,
            len: base.n,
        });
    }
    Ok(base.matchings[i]
        .pairs
        .iter()
        .map(|&(a, b)| v[a] - v[b])
        .collect())
}

/// Largest level set size and support size of an integer vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelSetStats {
    pub largest_level_set: usize,
    pub support: usize,
}

pub fn level_set_stats(v: &[i64]) -> LevelSetStats {
    let mut counts: HashMap<i64, usize> = HashMap::new();
    for &x in v {
        *counts.entry(x).or_default() += 1;
    }
    LevelSetStats {
        largest_level_set: counts.values().copied().max().unwrap_or(0),
        support: v.iter().filter(|&&x| x != 0).count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, pairs: &[(usize, usize)]) -> Matching {
        // 1-based pairs as written in the examples
        Matching::new(n, pairs.iter().map(|&(a, b)| (a - 1, b - 1)).collect()).unwrap()
    }

    #[test]
    fn components_of_matching_unions() {
        let a = m(4, &[(1, 2), (3, 4)]);
        let b = m(4, &[(1, 3), (2, 4)]);
        assert_eq!(union_components(&a, &a).unwrap(), 2);
        assert_eq!(union_components(&a, &b).unwrap(), 1);
        let c = m(2, &[(1, 2)]);
        assert_eq!(union_components(&c, &c).unwrap(), 1);
    }

    #[test]
    fn cross_edge_counts() {
        let a = [0, 1];
        let b = [2, 3];
        assert_eq!(cross_edges(&m(4, &[(1, 3), (2, 4)]), &a, &b).unwrap(), 2);
        assert_eq!(cross_edges(&m(4, &[(1, 2), (3, 4)]), &a, &b).unwrap(), 0);
        assert_eq!(cross_edges(&m(4, &[(1, 3), (2, 4)]), &a, &[]).unwrap(), 0);
        assert!(matches!(
            cross_edges(&m(4, &[(1, 3), (2, 4)]), &a, &[1, 2]),
            Err(LabError::OverlappingSets(1))
        ));
    }

    #[test]
    fn bad_matchings_rejected() {
        assert!(Matching::new(4, vec![(0, 1), (1, 2)]).is_err());
        assert!(Matching::new(4, vec![(0, 1)]).is_err());
        assert!(Matching::new(3, vec![(0, 1)]).is_err());
    }

    #[test]
    fn difference_vectors() {
        let id = Base::identity(4).unwrap();
        assert_eq!(difference_vector(&[5, 1, 7, 2], &id, 0).unwrap(), vec![4, 5]);
        assert_eq!(difference_vector(&[3, 3, 3, 3], &id, 2).unwrap(), vec![0, 0]);
        let rev = Base::uniform(vec![3, 2, 1, 0]).unwrap();
        assert_eq!(difference_vector(&[1, 2, 3, 4], &rev, 1).unwrap(), vec![1, 1]);
        assert!(difference_vector(&[1, 2, 3, 4], &rev, 4).is_err());
        assert!(difference_vector(&[1, 2, 3], &rev, 0).is_err());
    }

    #[test]
    fn level_sets() {
        let s = level_set_stats(&[3, 3, 1, 3]);
        assert_eq!((s.largest_level_set, s.support), (3, 4));
        let s = level_set_stats(&[0, 2, 0, -1]);
        assert_eq!((s.largest_level_set, s.support), (2, 2));
        let s = level_set_stats(&[0; 6]);
        assert_eq!((s.largest_level_set, s.support), (6, 0));
    }

    #[test]
    fn base_text_round_trip() {
        let b = Base::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(b.to_text(), "2 1\n1 2\n");
        assert_eq!(Base::from_text(&b.to_text()).unwrap(), b);
        assert!(Base::new(vec![vec![0, 0], vec![0, 1]]).is_err());
    }
}
