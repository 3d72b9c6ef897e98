//! A cone together with its Hilbert basis, and the degree-dependent subsets
//! `E_i^R`, `E_0^R`, `E_tau^R` of the Hilbert basis.

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::hilbert::HilbertBasis;
use crate::lattice::{dot_i64, DualVector};
use crate::linalg::{rat, KernelBasis, Rat, Rref};

/// The data every graded computation starts from.
#[derive(Clone, Debug)]
pub struct Toric {
    cone: Cone,
    hb: HilbertBasis,
    heights: Vec<Vec<i64>>,
    faces2: Vec<(usize, usize)>,
    faces3: Vec<Vec<usize>>,
    boundaries3: Vec<Vec<(usize, i64)>>,
}

impl Toric {
    pub fn new(cone: Cone) -> Result<Toric> {
        let hb = HilbertBasis::compute(&cone.dual_cone()?)?;
        let heights = cone
            .generators()
            .iter()
            .map(|a| hb.elements().iter().map(|e| dot_i64(a, e)).collect())
            .collect();
        let faces2: Vec<(usize, usize)> =
            cone.faces_of_dim(2).into_iter().map(|g| (g[0], g[1])).collect();
        let faces3 = cone.faces_of_dim(3);
        let boundaries3 = faces3.iter().map(|t| oriented_boundary(t, &faces2)).collect();
        Ok(Toric { cone, hb, heights, faces2, faces3, boundaries3 })
    }

    pub fn from_generators(rank: usize, generators: &[Vec<i64>]) -> Result<Toric> {
        Toric::new(Cone::new(rank, generators)?)
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn hilbert(&self) -> &HilbertBasis {
        &self.hb
    }

    pub fn rank(&self) -> usize {
        self.cone.rank()
    }

    pub fn num_rays(&self) -> usize {
        self.cone.generators().len()
    }

    /// `<a^i, r^v>`.
    pub fn height(&self, i: usize, v: usize) -> i64 {
        self.heights[i][v]
    }

    /// `<a^i, m>` for every generator.
    pub fn heights_of(&self, m: &[i64]) -> Vec<i64> {
        self.cone.generators().iter().map(|a| dot_i64(a, m)).collect()
    }

    /// Two-dimensional faces used in the complexes (the cone itself when it is
    /// two-dimensional).
    pub fn faces2(&self) -> &[(usize, usize)] {
        &self.faces2
    }

    /// Three-dimensional faces used in the complexes.
    pub fn faces3(&self) -> &[Vec<usize>] {
        &self.faces3
    }

    /// For each 3-face, its 2-faces (indices into `faces2`) with the sign of a
    /// cyclic orientation.
    pub fn boundaries3(&self) -> &[Vec<(usize, i64)>] {
        &self.boundaries3
    }

    pub fn face2_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.faces2.iter().position(|&f| f == key)
    }

    /// T^2 agrees with the computed H^1 (smooth in codimension 2, rank >= 3).
    pub fn t2_is_exact(&self) -> bool {
        self.rank() >= 3 && self.cone.is_smooth_in_codim2()
    }

    /// All faces of dimension at most `k`, including the cone itself, are smooth.
    pub fn smooth_up_to(&self, k: usize) -> bool {
        (1..=k.min(self.cone.dim()))
            .all(|d| self.cone.faces_of_dim(d).iter().all(|f| self.cone.is_unimodular(f)))
    }

    pub fn degree_data(&self, degree: &[i64]) -> Result<DegreeData> {
        DegreeData::new(self, degree)
    }

    /// The subset `E_S = {v : <a^i, r^v> < h_i for i in S}` for given bounds.
    pub(crate) fn below(&self, rays: &[usize], bounds: &[i64]) -> Vec<usize> {
        (0..self.hb.len())
            .filter(|&v| rays.iter().all(|&i| self.heights[i][v] < bounds[i]))
            .collect()
    }
}

fn oriented_boundary(face: &[usize], faces2: &[(usize, usize)]) -> Vec<(usize, i64)> {
    let edges: Vec<usize> = (0..faces2.len())
        .filter(|&e| face.contains(&faces2[e].0) && face.contains(&faces2[e].1))
        .collect();
    let mut out = Vec::new();
    let Some(&start) = face.first() else { return out };
    let mut at = start;
    let mut used = vec![false; edges.len()];
    loop {
        let next = (0..edges.len())
            .filter(|&k| !used[k] && (faces2[edges[k]].0 == at || faces2[edges[k]].1 == at))
            .min_by_key(|&k| {
                let (i, j) = faces2[edges[k]];
                if i == at {
                    j
                } else {
                    i
                }
            });
        let Some(k) = next else { break };
        used[k] = true;
        let (i, j) = faces2[edges[k]];
        if i == at {
            out.push((edges[k], 1));
            at = j;
        } else {
            out.push((edges[k], -1));
            at = i;
        }
        if at == start {
            break;
        }
    }
    out
}

/// A subset `S` of the Hilbert basis with `L(S)` and `span(S)`.
#[derive(Clone, Debug)]
pub struct Subset {
    indices: Vec<usize>,
    rref: Rref,
    kernel: KernelBasis,
}

impl Subset {
    pub fn new(hb: &HilbertBasis, indices: Vec<usize>) -> Subset {
        let n = hb.rank();
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|k| indices.iter().map(|&v| rat(hb.elements()[v][k])).collect())
            .collect();
        let rref = Rref::of_rows(&rows, indices.len());
        let local = rref.kernel();
        let w = hb.len();
        let basis = local
            .basis
            .iter()
            .map(|b| {
                let mut g = vec![Rat::from_integer(0.into()); w];
                for (x, &v) in b.iter().zip(&indices) {
                    g[v] = x.clone();
                }
                g
            })
            .collect();
        let free = local.free.iter().map(|&f| indices[f]).collect();
        Subset { indices, rref, kernel: KernelBasis { basis, free } }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, v: usize) -> bool {
        self.indices.binary_search(&v).is_ok()
    }

    /// Basis of `L(S)` as vectors in `Q^E`; coordinates are the entries at
    /// `kernel().free`.
    pub fn kernel(&self) -> &KernelBasis {
        &self.kernel
    }

    pub fn l_dim(&self) -> usize {
        self.kernel.dim()
    }

    pub fn span_dim(&self) -> usize {
        self.rref.dim()
    }

    /// Elements of `S` forming a basis of `span(S)`.
    pub fn span_pivots(&self) -> Vec<usize> {
        self.rref.pivots().iter().map(|&p| self.indices[p]).collect()
    }

    /// Coefficients of `r^v` (for `v` in `S`) in the basis `span_pivots()`.
    pub fn express(&self, v: usize) -> Vec<Rat> {
        let local = self.indices.binary_search(&v).expect("element not in subset");
        self.rref.rows().iter().map(|row| row[local].clone()).collect()
    }

    /// Basis of `span(S)` in `Q^n`.
    pub fn span_basis(&self, hb: &HilbertBasis) -> Vec<Vec<Rat>> {
        self.span_pivots()
            .into_iter()
            .map(|v| hb.elements()[v].iter().map(|&x| rat(x)).collect())
            .collect()
    }
}

/// The subsets of `E` attached to a degree `R`.
#[derive(Clone, Debug)]
pub struct DegreeData {
    degree: DualVector,
    heights: Vec<i64>,
    rays: Vec<Subset>,
    union: Subset,
    faces2: Vec<Subset>,
    faces3: Vec<Subset>,
}

impl DegreeData {
    pub fn new(t: &Toric, degree: &[i64]) -> Result<DegreeData> {
        if degree.len() != t.rank() {
            return Err(Error::DimensionMismatch { expected: t.rank(), got: degree.len() });
        }
        let heights = t.heights_of(degree);
        let hb = &t.hb;
        let rays: Vec<Subset> =
            (0..t.num_rays()).map(|i| Subset::new(hb, t.below(&[i], &heights))).collect();
        let mut all: Vec<usize> = rays.iter().flat_map(|s| s.indices.iter().copied()).collect();
        all.sort_unstable();
        all.dedup();
        let union = Subset::new(hb, all);
        let faces2 =
            t.faces2.iter().map(|&(i, j)| Subset::new(hb, t.below(&[i, j], &heights))).collect();
        let faces3 = t.faces3.iter().map(|f| Subset::new(hb, t.below(f, &heights))).collect();
        Ok(DegreeData { degree: DualVector(degree.to_vec()), heights, rays, union, faces2, faces3 })
    }

    pub fn degree(&self) -> &DualVector {
        &self.degree
    }

    /// `<a^i, R>`.
    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    /// `E_i^R`.
    pub fn ray(&self, i: usize) -> &Subset {
        &self.rays[i]
    }

    pub fn rays(&self) -> &[Subset] {
        &self.rays
    }

    /// `E_0^R`.
    pub fn union(&self) -> &Subset {
        &self.union
    }

    /// `E_i^R ∩ E_j^R` for the 2-faces, in the order of `Toric::faces2`.
    pub fn faces2(&self) -> &[Subset] {
        &self.faces2
    }

    pub fn faces3(&self) -> &[Subset] {
        &self.faces3
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn idx(t: &Toric, elems: &[Vec<i64>]) -> Vec<usize> {
        let mut v: Vec<usize> = elems.iter().map(|e| t.hilbert().index_of(e).unwrap()).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn square_at_r_star() {
        let t = fixtures::square();
        let dd = t.degree_data(&[0, 0, 1]).unwrap();
        for (i, a) in t.cone().generators().iter().enumerate() {
            let expected: Vec<usize> = (0..t.hilbert().len())
                .filter(|&v| dot_i64(a, &t.hilbert().elements()[v]) == 0)
                .collect();
            assert_eq!(dd.ray(i).indices(), expected.as_slice());
            assert_eq!(expected.len(), 2);
        }
    }

    #[test]
    fn zero_degree_is_empty() {
        for t in [fixtures::square(), fixtures::hexagon(), fixtures::octant()] {
            let dd = t.degree_data(&vec![0; t.rank()]).unwrap();
            assert!(dd.rays().iter().all(|s| s.indices().is_empty()));
            assert!(dd.union().indices().is_empty());
        }
    }

    #[test]
    fn octant_all_ones() {
        let t = fixtures::octant();
        let dd = t.degree_data(&[1, 1, 1]).unwrap();
        for (i, a) in t.cone().generators().iter().enumerate() {
            let others: Vec<Vec<i64>> = (0..3)
                .filter(|&k| a[k] == 0)
                .map(|k| {
                    let mut e = vec![0; 3];
                    e[k] = 1;
                    e
                })
                .collect();
            assert_eq!(dd.ray(i).indices(), idx(&t, &others).as_slice());
        }
    }

    #[test]
    fn boundary_cycles_close_up() {
        for t in [fixtures::square(), fixtures::hexagon(), fixtures::octant()] {
            assert_eq!(t.faces3().len(), 1);
            let b = &t.boundaries3()[0];
            assert_eq!(b.len(), t.num_rays());
            // The signed boundary of the boundary vanishes.
            let mut acc = vec![0i64; t.num_rays()];
            for &(e, s) in b {
                let (i, j) = t.faces2()[e];
                acc[i] += s;
                acc[j] -= s;
            }
            assert!(acc.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn union_is_complement_of_shifted_cone() {
        let t = fixtures::hexagon();
        for r in [[0, 0, 1], [0, 0, 2], [1, 0, 1], [-1, 1, 2], [2, 2, 3]] {
            let dd = t.degree_data(&r).unwrap();
            for (v, e) in t.hilbert().elements().iter().enumerate() {
                let diff: Vec<i64> = e.iter().zip(&r).map(|(a, b)| a - b).collect();
                assert_eq!(dd.union().contains(v), !t.hilbert().contains(&diff));
            }
        }
    }

    #[test]
    fn subset_kernel_is_in_kernel_of_pi() {
        let t = fixtures::hexagon();
        let dd = t.degree_data(&[0, 0, 2]).unwrap();
        let s = dd.union();
        for b in &s.kernel().basis {
            for k in 0..3 {
                let sum: Rat =
                    b.iter().zip(t.hilbert().elements()).map(|(x, e)| x * rat(e[k])).sum();
                assert_eq!(sum, rat(0));
            }
        }
        assert_eq!(s.l_dim() + s.span_dim(), s.indices().len());
    }
}
