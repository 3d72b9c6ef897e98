//! Elements of the mutually dual lattices `N` (where cones live) and `M`
//! (where degrees and semigroup elements live).

use std::ops::Deref;

use crate::error::{Error, Result};

/// Element of `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<i64>);

/// Element of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualVector(pub Vec<i64>);

impl Deref for LatticeVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl Deref for DualVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl From<Vec<i64>> for DualVector {
    fn from(v: Vec<i64>) -> Self {
        DualVector(v)
    }
}

impl DualVector {
    pub fn zero(rank: usize) -> Self {
        DualVector(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &DualVector) -> DualVector {
        DualVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DualVector) -> DualVector {
        DualVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> DualVector {
        DualVector(self.0.iter().map(|a| a * k).collect())
    }
}

/// The integer pairing `<a, r>`.
pub fn pairing(a: &[i64], r: &[i64]) -> Result<i64> {
    if a.len() != r.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: r.len() });
    }
    Ok(dot_i64(a, r))
}

pub(crate) fn dot_i64(a: &[i64], r: &[i64]) -> i64 {
    a.iter().zip(r).map(|(x, y)| x * y).sum()
}

pub(crate) fn gcd_normalize(v: &mut [i64]) {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}
