//! Rational polyhedral cones: facets, faces and smoothness.
//!
//! Facet normals are computed with the double description method over `i128`
//! and then stored as primitive `i64` vectors.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::{dot_i64, gcd_normalize, DualVector, LatticeVector};
use crate::linalg::{int_vec_to_rat, rank_of_rows, smith_normal_form, IntMatrix, Rat};

/// A face of a cone, given by the indices of the generators it contains.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Cone {
    rank: usize,
    generators: Vec<LatticeVector>,
    dropped: Vec<LatticeVector>,
    facet_normals: Vec<DualVector>,
    lineality: Vec<DualVector>,
    dim: usize,
    faces: Vec<Face>,
}

/// `sigma^v` as the cone generated by the facet normals of `sigma`.
#[derive(Clone, Debug)]
pub struct DualCone {
    rays: Vec<DualVector>,
    primal: Vec<LatticeVector>,
}

impl Cone {
    /// Builds a cone from lattice generators. Non-primitive generators are
    /// scaled down, duplicates and redundant generators are dropped.
    pub fn new(rank: usize, generators: &[Vec<i64>]) -> Result<Cone> {
        if generators.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut prim: Vec<LatticeVector> = Vec::new();
        for g in generators {
            if g.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: g.len() });
            }
            if g.iter().all(|&x| x == 0) {
                return Err(Error::ZeroVector);
            }
            let mut v = g.clone();
            gcd_normalize(&mut v);
            let v = LatticeVector(v);
            if !prim.contains(&v) {
                prim.push(v);
            }
        }

        let (normals, lineality) = double_description(&prim, rank);
        let mut rows: Vec<Vec<Rat>> = normals.iter().map(|u| int_vec_to_rat(u)).collect();
        rows.extend(lineality.iter().map(|l| int_vec_to_rat(l)));
        if rank_of_rows(&rows, rank) < rank {
            return Err(Error::NotPointed);
        }

        let lin_rows: Vec<Vec<Rat>> = lineality.iter().map(|l| int_vec_to_rat(l)).collect();
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for g in prim {
            let mut tight = lin_rows.clone();
            tight.extend(normals.iter().filter(|u| dot_i64(u, &g) == 0).map(|u| int_vec_to_rat(u)));
            if rank_of_rows(&tight, rank) == rank - 1 {
                kept.push(g);
            } else {
                dropped.push(g);
            }
        }

        let dim = rank - lineality.len();
        let mut cone = Cone {
            rank,
            generators: kept,
            dropped,
            facet_normals: normals.into_iter().map(DualVector).collect(),
            lineality: lineality.into_iter().map(DualVector).collect(),
            dim,
            faces: Vec::new(),
        };
        cone.facet_normals.sort();
        cone.faces = cone.compute_faces();
        Ok(cone)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Irredundant primitive generators `a^1, ..., a^N` in input order.
    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    /// Input generators that turned out not to span extremal rays.
    pub fn dropped_generators(&self) -> &[LatticeVector] {
        &self.dropped
    }

    /// Primitive inner facet normals, sorted lexicographically.
    pub fn facet_normals(&self) -> &[DualVector] {
        &self.facet_normals
    }

    /// Basis of `sigma^perp`; empty for full-dimensional cones.
    pub fn lineality(&self) -> &[DualVector] {
        &self.lineality
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.rank
    }

    /// All faces including `{0}` and the cone itself, sorted by dimension.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Faces of dimension `k`, including the cone itself when `dim = k`.
    pub fn faces_of_dim(&self, k: usize) -> Vec<Vec<usize>> {
        self.faces.iter().filter(|f| f.dim == k).map(|f| f.generators.clone()).collect()
    }

    /// Proper faces of dimension 2, as generator index pairs.
    pub fn two_faces(&self) -> Vec<(usize, usize)> {
        self.proper_faces_of_dim(2).into_iter().map(|g| (g[0], g[1])).collect()
    }

    /// Proper faces of dimension 3, as generator index sets.
    pub fn three_faces(&self) -> Vec<Vec<usize>> {
        self.proper_faces_of_dim(3)
    }

    fn proper_faces_of_dim(&self, k: usize) -> Vec<Vec<usize>> {
        if k >= self.dim {
            return Vec::new();
        }
        self.faces_of_dim(k)
    }

    /// Every proper face of dimension `k` is generated by part of a lattice basis.
    pub fn is_smooth_in_dim(&self, k: usize) -> bool {
        self.proper_faces_of_dim(k).iter().all(|f| self.is_unimodular(f))
    }

    pub fn is_smooth_in_codim2(&self) -> bool {
        self.is_smooth_in_dim(2)
    }

    pub fn is_smooth_in_codim3(&self) -> bool {
        self.is_smooth_in_dim(2) && self.is_smooth_in_dim(3)
    }

    /// Whether the generators with the given indices extend to a lattice basis.
    pub fn is_unimodular(&self, face: &[usize]) -> bool {
        let rows: Vec<Vec<i64>> = face.iter().map(|&i| self.generators[i].0.clone()).collect();
        let m = IntMatrix::from_rows(&rows, self.rank);
        let snf = smith_normal_form(&m);
        snf.rank() == face.len() && snf.invariant_factors().iter().all(BigInt::is_one)
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        self.facet_normals.iter().all(|u| dot_i64(u, a) >= 0)
            && self.lineality.iter().all(|l| dot_i64(l, a) == 0)
    }

    pub fn dual_cone(&self) -> Result<DualCone> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional { dim: self.dim, rank: self.rank });
        }
        Ok(DualCone { rays: self.facet_normals.clone(), primal: self.generators.clone() })
    }

    fn compute_faces(&self) -> Vec<Face> {
        let all: Vec<usize> = (0..self.generators.len()).collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert(all.clone());
        for u in &self.facet_normals {
            let s: Vec<usize> =
                all.iter().copied().filter(|&i| dot_i64(u, &self.generators[i]) == 0).collect();
            sets.insert(s);
        }
        // Close under intersection.
        loop {
            let current: Vec<Vec<usize>> = sets.iter().cloned().collect();
            let mut added = false;
            for (x, a) in current.iter().enumerate() {
                for b in &current[x + 1..] {
                    let c: Vec<usize> = a.iter().copied().filter(|i| b.contains(i)).collect();
                    added |= sets.insert(c);
                }
            }
            if !added {
                break;
            }
        }
        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|generators| {
                let rows: Vec<Vec<Rat>> =
                    generators.iter().map(|&i| int_vec_to_rat(&self.generators[i])).collect();
                Face { dim: rank_of_rows(&rows, self.rank), generators }
            })
            .collect();
        faces.sort();
        faces
    }
}

impl DualCone {
    /// Primitive generators of the dual cone, sorted lexicographically.
    pub fn rays(&self) -> &[DualVector] {
        &self.rays
    }

    /// Generators of the primal cone, which cut out the dual cone.
    pub fn primal_generators(&self) -> &[LatticeVector] {
        &self.primal
    }

    pub fn rank(&self) -> usize {
        self.primal.first().map_or(0, |a| a.len())
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        self.primal.iter().all(|a| dot_i64(a, m) >= 0)
    }

    /// The dual cone viewed as a cone in its own right.
    pub fn as_cone(&self) -> Result<Cone> {
        let gens: Vec<Vec<i64>> = self.rays.iter().map(|r| r.0.clone()).collect();
        Cone::new(self.rank(), &gens)
    }
}

/// Extreme rays and lineality of `{u : <g, u> >= 0 for all g}`.
fn double_description(gens: &[LatticeVector], rank: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut lineality: Vec<Vec<i128>> = (0..rank)
        .map(|i| {
            let mut v = vec![0i128; rank];
            v[i] = 1;
            v
        })
        .collect();
    let mut rays: Vec<Vec<i128>> = Vec::new();
    let mut seen: Vec<Vec<i128>> = Vec::new();

    for g in gens {
        let a: Vec<i128> = g.iter().map(|&x| x as i128).collect();
        if let Some(k) = lineality.iter().position(|l| dot128(&a, l) != 0) {
            let mut l = lineality.remove(k);
            if dot128(&a, &l) < 0 {
                l.iter_mut().for_each(|x| *x = -*x);
            }
            let al = dot128(&a, &l);
            for v in lineality.iter_mut().chain(rays.iter_mut()) {
                let av = dot128(&a, v);
                if av != 0 {
                    for (x, y) in v.iter_mut().zip(&l) {
                        *x = al * *x - av * y;
                    }
                    normalize128(v);
                }
            }
            rays.push(l);
        } else {
            let vals: Vec<i128> = rays.iter().map(|r| dot128(&a, r)).collect();
            let zeros: Vec<Vec<bool>> =
                rays.iter().map(|r| seen.iter().map(|s| dot128(s, r) == 0).collect()).collect();
            let mut next: Vec<Vec<i128>> = Vec::new();
            for (r, &v) in rays.iter().zip(&vals) {
                if v >= 0 {
                    next.push(r.clone());
                }
            }
            for (p, &vp) in vals.iter().enumerate() {
                if vp <= 0 {
                    continue;
                }
                for (n, &vn) in vals.iter().enumerate() {
                    if vn >= 0 {
                        continue;
                    }
                    let common: Vec<bool> =
                        zeros[p].iter().zip(&zeros[n]).map(|(x, y)| *x && *y).collect();
                    let adjacent = (0..rays.len()).all(|o| {
                        o == p
                            || o == n
                            || !common.iter().zip(&zeros[o]).all(|(c, z)| !*c || *z)
                    });
                    if !adjacent {
                        continue;
                    }
                    let mut v: Vec<i128> =
                        rays[n].iter().zip(&rays[p]).map(|(x, y)| vp * x - vn * y).collect();
                    normalize128(&mut v);
                    next.push(v);
                }
            }
            rays = next;
        }
        seen.push(a);
    }

    let to64 = |v: Vec<i128>| -> Vec<i64> {
        v.into_iter().map(|x| i64::try_from(x).expect("facet normal exceeds i64")).collect()
    };
    (rays.into_iter().map(to64).collect(), lineality.into_iter().map(to64).collect())
}

fn dot128(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize128(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn normals(c: &Cone) -> Vec<Vec<i64>> {
        c.facet_normals().iter().map(|u| u.0.clone()).collect()
    }

    #[test]
    fn octant_is_self_dual() {
        let c = Cone::new(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(normals(&c), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert!(c.is_smooth_in_codim2());
        assert!(c.is_smooth_in_codim3());
        assert_eq!(c.two_faces(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(c.three_faces().is_empty());
        assert_eq!(c.faces_of_dim(3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn cone_over_square() {
        let gens = vec![vec![0, 0, 1], vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 1]];
        let c = Cone::new(3, &gens).unwrap();
        assert_eq!(
            normals(&c),
            vec![vec![-1, 0, 1], vec![0, -1, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
        assert_eq!(c.two_faces(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert!(c.is_smooth_in_codim2());
        assert!(!c.is_unimodular(&[0, 1, 2, 3]));
        let d = c.dual_cone().unwrap();
        assert!(d.contains(&[0, 0, 1]));
        assert!(!d.contains(&[0, 0, -1]));
    }

    #[test]
    fn redundant_generators_dropped() {
        let c = Cone::new(2, &[vec![1, 0], vec![1, 1], vec![0, 1], vec![2, 2]]).unwrap();
        assert_eq!(c.generators().len(), 2);
        assert_eq!(c.dropped_generators(), &[LatticeVector(vec![1, 1])]);
    }

    #[test]
    fn non_primitive_generator_is_scaled() {
        let c = Cone::new(2, &[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(c.generators()[0].0, vec![1, 0]);
        assert_eq!(c.generators()[1].0, vec![0, 1]);
    }

    #[test]
    fn input_errors() {
        assert_eq!(Cone::new(2, &[]).unwrap_err(), Error::EmptyInput);
        assert_eq!(Cone::new(2, &[vec![0, 0]]).unwrap_err(), Error::ZeroVector);
        assert_eq!(Cone::new(2, &[vec![1, 0], vec![-1, 0]]).unwrap_err(), Error::NotPointed);
        assert!(matches!(Cone::new(2, &[vec![1, 0, 0]]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn lower_dimensional_cone() {
        let c = Cone::new(3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(matches!(c.dual_cone(), Err(Error::NotFullDimensional { dim: 2, rank: 3 })));
    }

    #[test]
    fn a3_cone_is_not_smooth() {
        let c = Cone::new(2, &[vec![1, 0], vec![1, 4]]).unwrap();
        assert!(!c.is_unimodular(&[0, 1]));
        assert_eq!(normals(&c), vec![vec![0, 1], vec![4, -1]]);
        // No proper 2-faces in rank 2.
        assert!(c.is_smooth_in_codim2());
    }

    #[test]
    fn nonsmooth_two_face_detected() {
        let c = Cone::new(3, &[vec![1, 0, 0], vec![1, 2, 0], vec![0, 0, 1]]).unwrap();
        assert!(!c.is_smooth_in_codim2());
    }

    fn random_cone() -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(
            (-3i64..=3, -3i64..=3).prop_map(|(x, y)| vec![x, y, 1]),
            3..7,
        )
    }

    proptest! {
        #[test]
        fn double_dual_recovers_generators(gens in random_cone()) {
            let c = Cone::new(3, &gens).unwrap();
            prop_assume!(c.is_full_dimensional());
            let back = c.dual_cone().unwrap().as_cone().unwrap();
            let mut a: Vec<Vec<i64>> = back.facet_normals().iter().map(|u| u.0.clone()).collect();
            let mut b: Vec<Vec<i64>> = c.generators().iter().map(|g| g.0.clone()).collect();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn normals_support_facets(gens in random_cone()) {
            let c = Cone::new(3, &gens).unwrap();
            for g in &gens {
                prop_assert!(c.contains(g));
            }
            for u in c.facet_normals() {
                let tight: Vec<Vec<Rat>> = c.generators().iter()
                    .filter(|g| dot_i64(u, g) == 0)
                    .map(|g| int_vec_to_rat(g))
                    .collect();
                prop_assert_eq!(rank_of_rows(&tight, 3), c.dim() - 1);
            }
        }

        #[test]
        fn construction_is_deterministic(gens in random_cone()) {
            let a = Cone::new(3, &gens).unwrap();
            let b = Cone::new(3, &gens).unwrap();
            prop_assert_eq!(a.facet_normals(), b.facet_normals());
            prop_assert_eq!(a.faces(), b.faces());
        }
    }
}
