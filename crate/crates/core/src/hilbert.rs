//! Hilbert basis `E` of the semigroup `sigma^v ∩ M`, the surjection
//! `pi: Z^E -> M` and the section `Phi`.

use num_traits::ToPrimitive;

use crate::cone::DualCone;
use crate::error::{Error, Result};
use crate::lattice::{dot_i64, DualVector, LatticeVector};
use crate::linalg::{integer_section, IntMatrix};

const MAX_BOX_POINTS: u128 = 5_000_000;

#[derive(Clone, Debug)]
pub struct HilbertBasis {
    elements: Vec<DualVector>,
    pi_matrix: IntMatrix,
    linear_section: IntMatrix,
    primal: Vec<LatticeVector>,
}

impl HilbertBasis {
    /// Enumerates the lattice points of the zonotope spanned by the rays of the
    /// dual cone and keeps the irreducible ones.
    pub fn compute(d: &DualCone) -> Result<HilbertBasis> {
        let rank = d.rank();
        let rays = d.rays();
        let primal = d.primal_generators().to_vec();
        if rays.is_empty() {
            return Err(Error::EmptyInput);
        }
        // A grading that is positive on the dual cone minus the origin.
        let grading: Vec<i64> =
            (0..rank).map(|k| primal.iter().map(|a| a[k]).sum()).collect();
        let bound: i64 = rays.iter().map(|u| dot_i64(&grading, u)).sum();

        let lo: Vec<i64> = (0..rank).map(|k| rays.iter().map(|u| u[k].min(0)).sum()).collect();
        let hi: Vec<i64> = (0..rank).map(|k| rays.iter().map(|u| u[k].max(0)).sum()).collect();
        let size: u128 = lo.iter().zip(&hi).map(|(l, h)| (h - l + 1) as u128).product();
        if size > MAX_BOX_POINTS {
            return Err(Error::BoxTooLarge(format!(
                "Hilbert basis enumeration box has {size} points"
            )));
        }

        let mut candidates: Vec<(i64, Vec<i64>)> = Vec::new();
        let mut x = lo.clone();
        loop {
            let deg = dot_i64(&grading, &x);
            if deg > 0 && deg <= bound && primal.iter().all(|a| dot_i64(a, &x) >= 0) {
                candidates.push((deg, x.clone()));
            }
            if !advance(&mut x, &lo, &hi) {
                break;
            }
        }
        candidates.sort();

        let mut elements: Vec<DualVector> = Vec::new();
        for (_, x) in candidates {
            let reducible = elements.iter().any(|h| {
                let diff: Vec<i64> = x.iter().zip(h.iter()).map(|(a, b)| a - b).collect();
                primal.iter().all(|a| dot_i64(a, &diff) >= 0)
            });
            if !reducible {
                elements.push(DualVector(x));
            }
        }
        elements.sort();

        let cols: Vec<Vec<i64>> = elements.iter().map(|e| e.0.clone()).collect();
        let pi_matrix = IntMatrix::from_columns(&cols, rank);
        let linear_section = integer_section(&pi_matrix)?;
        Ok(HilbertBasis { elements, pi_matrix, linear_section, primal })
    }

    /// The elements `r^0, ..., r^w` in lexicographic order.
    pub fn elements(&self) -> &[DualVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.pi_matrix.rows()
    }

    pub fn pi_matrix(&self) -> &IntMatrix {
        &self.pi_matrix
    }

    pub fn linear_section(&self) -> &IntMatrix {
        &self.linear_section
    }

    pub fn index_of(&self, m: &[i64]) -> Option<usize> {
        self.elements.iter().position(|e| e.0 == m)
    }

    /// `a -> sum_v a_v r^v`.
    pub fn pi(&self, a: &[i64]) -> Result<DualVector> {
        if a.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: a.len() });
        }
        let mut out = vec![0i64; self.rank()];
        for (c, e) in a.iter().zip(&self.elements) {
            if *c != 0 {
                for (o, x) in out.iter_mut().zip(e.iter()) {
                    *o += c * x;
                }
            }
        }
        Ok(DualVector(out))
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        self.primal.iter().all(|a| dot_i64(a, m) >= 0)
    }

    /// The section with the default (lexicographic) greedy order.
    pub fn section(&self) -> SectionPhi<'_> {
        SectionPhi { hb: self, order: (0..self.len()).collect() }
    }

    /// A section that tries the elements in the given order.
    pub fn section_with_order(&self, order: Vec<usize>) -> Result<SectionPhi<'_>> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != (0..self.len()).collect::<Vec<_>>() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: order.len() });
        }
        Ok(SectionPhi { hb: self, order })
    }
}

/// Membership in `sigma^v` tested against the generators of `sigma`.
pub fn membership(m: &[i64], d: &DualCone) -> bool {
    d.contains(m)
}

/// Set-theoretic section `Phi: M -> Z^E` with `pi . Phi = id` and
/// `Phi(sigma^v ∩ M) ⊆ N^E`.
#[derive(Clone, Debug)]
pub struct SectionPhi<'a> {
    hb: &'a HilbertBasis,
    order: Vec<usize>,
}

impl SectionPhi<'_> {
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn phi(&self, m: &[i64]) -> Vec<i64> {
        if self.hb.contains(m) {
            self.greedy(m)
        } else {
            self.hb
                .linear_section
                .mul_vec_i64(m)
                .iter()
                .map(|x| x.to_i64().expect("section coordinate exceeds i64"))
                .collect()
        }
    }

    // Each step subtracts the largest multiple of `e` that stays in the cone.
    // Once `e` is done the remainder `x` satisfies `x - e ∉ sigma^v`; it can only
    // shrink afterwards, so `e` is never needed again. After the last element
    // no Hilbert basis element is below the remainder, which forces it to be 0.
    fn greedy(&self, m: &[i64]) -> Vec<i64> {
        let hb = self.hb;
        let mut rest = m.to_vec();
        let mut out = vec![0i64; hb.len()];
        for &v in &self.order {
            let e = &hb.elements[v];
            let k = hb
                .primal
                .iter()
                .filter_map(|a| {
                    let h = dot_i64(a, e);
                    (h > 0).then(|| dot_i64(a, &rest).div_euclid(h))
                })
                .min()
                .unwrap_or(0);
            if k > 0 {
                out[v] = k;
                for (r, x) in rest.iter_mut().zip(e.iter()) {
                    *r -= k * x;
                }
            }
        }
        debug_assert!(rest.iter().all(|&x| x == 0), "greedy decomposition left {rest:?}");
        out
    }
}

fn advance(x: &mut [i64], lo: &[i64], hi: &[i64]) -> bool {
    for k in 0..x.len() {
        if x[k] < hi[k] {
            x[k] += 1;
            return true;
        }
        x[k] = lo[k];
    }
    false
}
