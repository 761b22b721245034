use nalgebra::DMatrix;
use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand_distr::StandardNormal;

use super::{Base, BitChoices, IntMatrix, ModelTag};
use crate::rng::{stream_rng, AUX_STREAM_OFFSET};
use crate::{LabError, Result};

fn require_even(n: usize) -> Result<()> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(LabError::OddDimension(n));
    }
    Ok(())
}

/// n x n matrix of i.i.d. uniform signs.
pub fn sample_rademacher(n: usize, seed: u64) -> Result<IntMatrix> {
    if n == 0 {
        return Err(LabError::InvalidParameter("n must be positive".into()));
    }
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        let mut rng = stream_rng(seed, i as u64);
        entries.extend((0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }));
    }
    Ok(IntMatrix::from_parts_unchecked(n, entries, ModelTag::IidRademacher))
}

/// Each row independent and uniform among {0,1} vectors with n/2 ones.
pub fn sample_row_regular(n: usize, seed: u64) -> Result<IntMatrix> {
    require_even(n)?;
    let mut entries = vec![0i64; n * n];
    for i in 0..n {
        let mut rng = stream_rng(seed, i as u64);
        for j in index::sample(&mut rng, n, n / 2) {
            entries[i * n + j] = 1;
        }
    }
    Ok(IntMatrix::from_parts_unchecked(n, entries, ModelTag::RowRegular))
}

/// n i.i.d. uniform permutations of `0..n`.
pub fn sample_base(n: usize, seed: u64) -> Result<Base> {
    require_even(n)?;
    let perms = (0..n)
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect();
    Base::new(perms)
}

/// Uniform bit choices, row `i` from auxiliary stream `i`.
pub fn sample_bits(n: usize, seed: u64) -> Result<BitChoices> {
    require_even(n)?;
    let rows = (0..n)
        .map(|i| {
            let mut rng = stream_rng(seed, AUX_STREAM_OFFSET + i as u64);
            (0..n / 2).map(|_| rng.random::<bool>()).collect()
        })
        .collect();
    BitChoices::new(rows)
}

/// The two-step map: in row i, pair k puts its 1 on `sigma_i(2k)` when
/// `xi_i(k)` is set and on `sigma_i(2k+1)` otherwise.
pub fn assemble_from_base(base: &Base, xi: &BitChoices) -> Result<IntMatrix> {
    let n = base.n();
    if xi.n() != n {
        return Err(LabError::DimensionMismatch {
            expected: n,
            found: xi.n(),
        });
    }
    let mut entries = vec![0i64; n * n];
    for i in 0..n {
        for (&(a, b), &bit) in base.matching(i).pairs().iter().zip(xi.row(i)) {
            let j = if bit { a } else { b };
            entries[i * n + j] = 1;
        }
    }
    Ok(IntMatrix::from_parts_unchecked(n, entries, ModelTag::BaseAssembled))
}

/// Row-regular matrix generated through a random base and random bits.
pub fn sample_q_via_base(n: usize, seed: u64) -> Result<IntMatrix> {
    let base = sample_base(n, seed)?;
    let xi = sample_bits(n, seed)?;
    assemble_from_base(&base, &xi)
}

/// n x n matrix of i.i.d. standard normal entries, same stream layout.
pub fn sample_gaussian(n: usize, seed: u64) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(LabError::InvalidParameter("n must be positive".into()));
    }
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        let mut rng = stream_rng(seed, i as u64);
        for j in 0..n {
            m[(i, j)] = rng.sample(StandardNormal);
        }
    }
    Ok(m)
}
