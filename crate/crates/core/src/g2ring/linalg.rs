//! Exact rational linear algebra over K(m) slices.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{KElement, KMonomial};

/// Row-echelon basis keyed by leading (largest) monomial; each row is
/// scaled so its leading coefficient is 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<KMonomial, KElement>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the rows; the remainder is zero iff v is in the span.
    pub fn reduce(&self, v: &KElement) -> KElement {
        let mut v = v.clone();
        loop {
            let Some((lead, c)) = v.leading().map(|(m, c)| (*m, c.clone())) else { return v };
            match self.rows.get(&lead) {
                Some(row) => v = v.sub(&row.scale(&c)),
                None => return v,
            }
        }
    }

    pub fn contains(&self, v: &KElement) -> bool {
        self.reduce(v).is_zero()
    }

    /// Add `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &KElement) -> bool {
        let r = self.reduce(v);
        let Some((lead, c)) = r.leading().map(|(m, c)| (*m, c.clone())) else { return false };
        let row = r.scale(&(BigRational::one() / c));
        self.rows.insert(lead, row);
        true
    }
}

fn size(q: &BigRational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

/// Rank of a dense rational matrix by Gaussian elimination, choosing in each
/// column the pivot of smallest numerator + denominator bit size.
pub fn dense_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = a.iter().map(Vec::len).max().unwrap_or(0);
    for r in &mut a {
        r.resize(ncols, BigRational::zero());
    }
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..a.len()).filter(|&r| !a[r][col].is_zero()).min_by_key(|&r| (size(&a[r][col]), r));
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let inv = BigRational::one() / &a[rank][col];
        for r in 0..a.len() {
            if r == rank || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..ncols {
                let delta = &f * &a[rank][c];
                a[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}
