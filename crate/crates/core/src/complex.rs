//! Graded pieces `T^1(-R)` and `T^2(-R)` computed from the complexes
//! `L(E^R)` and `span(E^R)`, with explicit representatives.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::DualVector;
use crate::linalg::{dot, rank_of_rows, rat, solve_rational, Rat, RatMatrix, Rref};
use crate::toric::{DegreeData, Subset, Toric};

/// Functional on `L(E_0^R)` vanishing on `sum_i L(E_i^R)`, given by its values
/// on the basis `dd.union().kernel()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T1Element {
    pub degree: DualVector,
    pub values: Vec<Rat>,
}

/// Tuple `(psi_i)` of functionals on `L(E_i^R)`, each given by its values on
/// the basis `dd.ray(i).kernel()`, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T2Element {
    pub degree: DualVector,
    pub components: Vec<Vec<Rat>>,
}

impl T1Element {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

impl T2Element {
    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(Zero::is_zero)
    }

    fn flat(&self) -> Vec<Rat> {
        self.components.iter().flatten().cloned().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum T2Label {
    /// The computed group is `T^2(-R)`.
    Exact,
    /// The cone is not smooth in codimension 2; only a subspace of `T^2` is computed.
    Subspace,
    /// Two-dimensional cone: `H^1` vanishes and says nothing about `T^2`.
    NotApplicable,
}

impl T2Label {
    pub fn for_toric(t: &Toric) -> T2Label {
        if t.rank() < 3 {
            T2Label::NotApplicable
        } else if t.t2_is_exact() {
            T2Label::Exact
        } else {
            T2Label::Subspace
        }
    }
}

impl fmt::Display for T2Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            T2Label::Exact => "T2",
            T2Label::Subspace => "subspace of T2 (cone not smooth in codimension 2)",
            T2Label::NotApplicable => "H1 = 0; formula not applicable to 2-dimensional cones",
        })
    }
}

/// `T^1(-R) = (L(E_0^R) / sum_i L(E_i^R))^*`.
#[derive(Clone, Debug)]
pub struct T1Space {
    degree: DualVector,
    constraints: Rref,
    basis: Vec<T1Element>,
    free: Vec<usize>,
}

impl T1Space {
    pub fn new(_t: &Toric, dd: &DegreeData) -> T1Space {
        let union = dd.union().kernel();
        let rows: Vec<Vec<Rat>> = dd
            .rays()
            .iter()
            .flat_map(|s| s.kernel().basis.iter().map(|w| union.coords(w)))
            .collect();
        let constraints = Rref::of_rows(&rows, union.dim());
        let kernel = constraints.kernel();
        let basis = kernel
            .basis
            .into_iter()
            .map(|values| T1Element { degree: dd.degree().clone(), values })
            .collect();
        T1Space { degree: dd.degree().clone(), constraints, basis, free: kernel.free }
    }

    pub fn degree(&self) -> &DualVector {
        &self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[T1Element] {
        &self.basis
    }

    pub fn zero(&self) -> T1Element {
        T1Element { degree: self.degree.clone(), values: vec![Rat::zero(); self.constraints.cols()] }
    }

    /// Validates a functional given by its values on `L(E_0^R)`.
    pub fn element(&self, values: Vec<Rat>) -> Result<T1Element> {
        if values.len() != self.constraints.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.constraints.cols(),
                got: values.len(),
            });
        }
        if self.constraints.rows().iter().any(|r| !dot(r, &values).is_zero()) {
            return Err(Error::IsoCheckFailed(
                "functional does not vanish on the sum of the L(E_i)".into(),
            ));
        }
        Ok(T1Element { degree: self.degree.clone(), values })
    }

    pub fn coordinates(&self, x: &T1Element) -> Vec<Rat> {
        self.free.iter().map(|&f| x.values[f].clone()).collect()
    }

    pub fn combination(&self, coeffs: &[Rat]) -> T1Element {
        let mut out = self.zero();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (o, x) in out.values.iter_mut().zip(&b.values) {
                *o += c * x;
            }
        }
        out
    }
}

/// `H^1` of the dual complex `L(E^R)^*`, i.e. cocycles modulo restrictions of
/// functionals on `L(E_0^R)`.
#[derive(Clone, Debug)]
pub struct T2Space {
    degree: DualVector,
    sizes: Vec<usize>,
    cocycle: Rref,
    boundary: Rref,
    basis: Vec<T2Element>,
    basis_matrix: RatMatrix,
    label: T2Label,
}

impl T2Space {
    pub fn new(t: &Toric, dd: &DegreeData) -> T2Space {
        let sizes: Vec<usize> = dd.rays().iter().map(Subset::l_dim).collect();
        let total: usize = sizes.iter().sum();
        let offsets = offsets(&sizes);

        let mut cocycle_rows = Vec::new();
        for (e, &(i, j)) in t.faces2().iter().enumerate() {
            for b in &dd.faces2()[e].kernel().basis {
                let mut row = vec![Rat::zero(); total];
                for (k, x) in dd.ray(i).kernel().coords(b).into_iter().enumerate() {
                    row[offsets[i] + k] += x;
                }
                for (k, x) in dd.ray(j).kernel().coords(b).into_iter().enumerate() {
                    row[offsets[j] + k] -= x;
                }
                cocycle_rows.push(row);
            }
        }
        let cocycle = Rref::of_rows(&cocycle_rows, total);

        let union = dd.union().kernel();
        let boundary_rows: Vec<Vec<Rat>> = union
            .free
            .iter()
            .map(|&f| {
                dd.rays().iter().flat_map(|s| s.kernel().basis.iter().map(|w| w[f].clone())).collect()
            })
            .collect();
        let boundary = Rref::of_rows(&boundary_rows, total);

        let mut span_rows: Vec<Vec<Rat>> = boundary.rows().to_vec();
        let mut basis_flat = Vec::new();
        for z in cocycle.kernel().basis {
            let mut trial = span_rows.clone();
            trial.push(z.clone());
            if rank_of_rows(&trial, total) > span_rows.len() {
                span_rows = trial;
                basis_flat.push(boundary.reduce(&z));
            }
        }
        let basis_matrix = RatMatrix::from_rows(
            (0..total).map(|r| basis_flat.iter().map(|b| b[r].clone()).collect()).collect(),
            basis_flat.len(),
        );
        let basis = basis_flat
            .iter()
            .map(|b| T2Element { degree: dd.degree().clone(), components: split(b, &sizes) })
            .collect();
        T2Space {
            degree: dd.degree().clone(),
            sizes,
            cocycle,
            boundary,
            basis,
            basis_matrix,
            label: T2Label::for_toric(t),
        }
    }

    pub fn degree(&self) -> &DualVector {
        &self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[T2Element] {
        &self.basis
    }

    pub fn label(&self) -> T2Label {
        self.label
    }

    pub fn is_exact(&self) -> bool {
        self.label == T2Label::Exact
    }

    /// Sizes of the components (`dim L(E_i^R)`).
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn zero(&self) -> T2Element {
        T2Element {
            degree: self.degree.clone(),
            components: self.sizes.iter().map(|&s| vec![Rat::zero(); s]).collect(),
        }
    }

    /// Checks the cocycle condition and returns the canonical representative.
    pub fn element(&self, components: Vec<Vec<Rat>>) -> Result<T2Element> {
        let lens: Vec<usize> = components.iter().map(Vec::len).collect();
        if lens != self.sizes {
            return Err(Error::DimensionMismatch {
                expected: self.sizes.iter().sum(),
                got: lens.iter().sum(),
            });
        }
        let flat: Vec<Rat> = components.into_iter().flatten().collect();
        self.check_cocycle(&flat)?;
        Ok(T2Element { degree: self.degree.clone(), components: split(&self.boundary.reduce(&flat), &self.sizes) })
    }

    fn check_cocycle(&self, flat: &[Rat]) -> Result<()> {
        let kernel = self.cocycle.kernel();
        let back: Vec<Rat> = kernel.basis.iter().zip(kernel.coords(flat)).fold(
            vec![Rat::zero(); flat.len()],
            |mut acc, (b, c)| {
                for (a, x) in acc.iter_mut().zip(b) {
                    *a += &c * x;
                }
                acc
            },
        );
        if back != flat {
            return Err(Error::CocycleViolation(0, 0));
        }
        Ok(())
    }

    /// Whether the tuple of functionals satisfies the cocycle condition.
    pub fn is_cocycle(&self, components: &[Vec<Rat>]) -> bool {
        let flat: Vec<Rat> = components.iter().flatten().cloned().collect();
        self.check_cocycle(&flat).is_ok()
    }

    /// Coordinates of the class of `x` in `basis()`.
    pub fn coordinates(&self, x: &T2Element) -> Vec<Rat> {
        let reduced = self.boundary.reduce(&x.flat());
        solve_rational(&self.basis_matrix, &reduced).expect("canonical form lies in the basis span")
    }

    pub fn combination(&self, coeffs: &[Rat]) -> T2Element {
        let total: usize = self.sizes.iter().sum();
        let mut flat = vec![Rat::zero(); total];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (o, x) in flat.iter_mut().zip(b.flat()) {
                *o += c * x;
            }
        }
        T2Element { degree: self.degree.clone(), components: split(&flat, &self.sizes) }
    }

    /// Restriction of a functional on `L(E_0^R)` (values on its basis) to
    /// every `L(E_i^R)`; these are the classes that vanish in `H^1`.
    pub fn restriction_of_global(&self, dd: &DegreeData, values: &[Rat]) -> Vec<Vec<Rat>> {
        let union = dd.union().kernel();
        dd.rays()
            .iter()
            .map(|s| s.kernel().basis.iter().map(|w| dot(&union.coords(w), values)).collect())
            .collect()
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect()
}

fn split(flat: &[Rat], sizes: &[usize]) -> Vec<Vec<Rat>> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut at = 0;
    for &s in sizes {
        out.push(flat[at..at + s].to_vec());
        at += s;
    }
    out
}

pub fn t1_piece(t: &Toric, dd: &DegreeData) -> T1Space {
    T1Space::new(t, dd)
}

pub fn t2_piece(t: &Toric, dd: &DegreeData) -> T2Space {
    T2Space::new(t, dd)
}

/// Cohomology dimensions of the dual of a complex
/// `C_3 -> C_2 -> C_1 -> C_0` built from subspaces of a common space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexDims {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

struct Blocks<'a> {
    ambient: usize,
    c0: usize,
    c1: Vec<Vec<Vec<Rat>>>,
    c2: Vec<Vec<Vec<Rat>>>,
    c3: Vec<Vec<Vec<Rat>>>,
    t: &'a Toric,
}

impl Blocks<'_> {
    fn dims(&self) -> ComplexDims {
        let a = self.ambient;
        let n = self.c1.len();
        let all1: Vec<Vec<Rat>> = self.c1.iter().flatten().cloned().collect();
        let rank1 = rank_of_rows(&all1, a);

        let mut d2 = Vec::new();
        for (e, &(i, j)) in self.t.faces2().iter().enumerate() {
            for b in &self.c2[e] {
                let mut v = vec![Rat::zero(); a * n];
                for k in 0..a {
                    v[i * a + k] += &b[k];
                    v[j * a + k] -= &b[k];
                }
                d2.push(v);
            }
        }
        let rank2 = rank_of_rows(&d2, a * n);

        let m = self.c2.len();
        let mut d3 = Vec::new();
        for (f, edges) in self.t.boundaries3().iter().enumerate() {
            for b in &self.c3[f] {
                let mut v = vec![Rat::zero(); a * m];
                for &(e, s) in edges {
                    for k in 0..a {
                        v[e * a + k] += &b[k] * rat(s);
                    }
                }
                d3.push(v);
            }
        }
        let rank3 = rank_of_rows(&d3, a * m);

        let c1: usize = self.c1.iter().map(Vec::len).sum();
        let c2: usize = self.c2.iter().map(Vec::len).sum();
        ComplexDims { h0: self.c0 - rank1, h1: c1 - rank1 - rank2, h2: c2 - rank2 - rank3 }
    }
}

/// Dimensions from the complex of the `L(E_tau^R)`: `h0 = dim T^1`, `h1 = dim H^1`.
pub fn l_complex_dims(t: &Toric, dd: &DegreeData) -> ComplexDims {
    let get = |s: &Subset| s.kernel().basis.clone();
    Blocks {
        ambient: t.hilbert().len(),
        c0: dd.union().l_dim(),
        c1: dd.rays().iter().map(get).collect(),
        c2: dd.faces2().iter().map(get).collect(),
        c3: dd.faces3().iter().map(get).collect(),
        t,
    }
    .dims()
}

/// Dimensions from the complex of the `span(E_tau^R)`: `h1 = dim T^1`, `h2 = dim H^1` above.
pub fn span_complex_dims(t: &Toric, dd: &DegreeData) -> ComplexDims {
    let hb = t.hilbert();
    let get = |s: &Subset| s.span_basis(hb);
    Blocks {
        ambient: t.rank(),
        c0: dd.union().span_dim(),
        c1: dd.rays().iter().map(get).collect(),
        c2: dd.faces2().iter().map(get).collect(),
        c3: dd.faces3().iter().map(get).collect(),
        t,
    }
    .dims()
}

/// The same complex with `V_i = 0`, `[a^i = 0]` or `M_Q` according to `<a^i, R>`.
pub fn v_complex_dims(t: &Toric, dd: &DegreeData) -> ComplexDims {
    let n = t.rank();
    let v: Vec<Rref> = t
        .cone()
        .generators()
        .iter()
        .zip(dd.heights())
        .map(|(a, &h)| match h {
            h if h <= 0 => Rref::empty(n),
            1 => Rref::of_rows(&[a.iter().map(|&x| rat(x)).collect()], n).kernel_rref(),
            _ => Rref::of_rows(&identity_rows(n), n),
        })
        .collect();
    let meet = |idx: &[usize]| -> Vec<Vec<Rat>> {
        let mut acc = Rref::of_rows(&identity_rows(n), n);
        for &i in idx {
            acc = intersect(&acc, &v[i]);
        }
        acc.rows().to_vec()
    };
    Blocks {
        ambient: n,
        c0: n,
        c1: v.iter().map(|r| r.rows().to_vec()).collect(),
        c2: t.faces2().iter().map(|&(i, j)| meet(&[i, j])).collect(),
        c3: t.faces3().iter().map(|f| meet(f)).collect(),
        t,
    }
    .dims()
}

fn identity_rows(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| (0..n).map(|j| rat(i64::from(i == j))).collect())
        .collect()
}

fn intersect(a: &Rref, b: &Rref) -> Rref {
    let n = a.cols();
    let mut ann = a.kernel().basis;
    ann.extend(b.kernel().basis);
    Rref::of_rows(&ann, n).kernel_rref()
}

trait KernelRref {
    fn kernel_rref(&self) -> Rref;
}

impl KernelRref for Rref {
    fn kernel_rref(&self) -> Rref {
        Rref::of_rows(&self.kernel().basis, self.cols())
    }
}

/// Dimensions of `T^1(-R)` and `T^2(-R)` from every formulation, with the
/// hypotheses under which each one is valid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulationReport {
    pub t1_l: usize,
    pub t2_l: usize,
    pub t1_span: usize,
    pub t2_span: usize,
    pub t1_v: usize,
    pub t2_v: usize,
    pub t2_exact: bool,
    pub v_t1_valid: bool,
    pub v_t2_valid: bool,
}

impl FormulationReport {
    /// Every formulation agrees wherever its hypotheses hold.
    pub fn consistent(&self) -> bool {
        self.t1_l == self.t1_span
            && self.t2_l == self.t2_span
            && (!self.v_t1_valid || self.t1_v == self.t1_l)
            && (!self.v_t2_valid || self.t2_v == self.t2_l)
    }
}

pub fn t1_t2_via_span_complex(t: &Toric, dd: &DegreeData) -> FormulationReport {
    let l = l_complex_dims(t, dd);
    let s = span_complex_dims(t, dd);
    let v = v_complex_dims(t, dd);
    FormulationReport {
        t1_l: l.h0,
        t2_l: l.h1,
        t1_span: s.h1,
        t2_span: s.h2,
        t1_v: v.h1,
        t2_v: v.h2,
        t2_exact: t.t2_is_exact(),
        v_t1_valid: t.smooth_up_to(2),
        v_t2_valid: t.smooth_up_to(3),
    }
}

/// A functional on each `span(E_i^R ∩ E_j^R)`, given by its values on
/// `span_pivots()` of that subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanCochain {
    pub components: Vec<Vec<Rat>>,
}

impl SpanCochain {
    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(Zero::is_zero)
    }
}

/// Connecting map `H^1(L(E^R)^*) -> H^2(span(E^R)^*)`.
pub fn zigzag_bridge(t: &Toric, dd: &DegreeData, x: &T2Element) -> Result<SpanCochain> {
    if x.degree != *dd.degree() {
        return Err(Error::DegreeMismatch { expected: dd.degree().0.clone(), got: x.degree.0.clone() });
    }
    let w = t.hilbert().len();
    // Extend psi_i by zero on the pivot elements of E_i.
    let lifts: Vec<Vec<Rat>> = dd
        .rays()
        .iter()
        .zip(&x.components)
        .map(|(s, psi)| {
            let mut g = vec![Rat::zero(); w];
            for (&f, val) in s.kernel().free.iter().zip(psi) {
                g[f] = val.clone();
            }
            g
        })
        .collect();
    let mut components = Vec::new();
    for (e, &(i, j)) in t.faces2().iter().enumerate() {
        let face = &dd.faces2()[e];
        let diff: Vec<Rat> = lifts[i].iter().zip(&lifts[j]).map(|(a, b)| a - b).collect();
        if face.kernel().basis.iter().any(|b| !dot(b, &diff).is_zero()) {
            return Err(Error::CocycleViolation(i, j));
        }
        components.push(face.span_pivots().into_iter().map(|p| diff[p].clone()).collect());
    }
    Ok(SpanCochain { components })
}

/// Coboundaries in `⊕ span(E_i^R ∩ E_j^R)^*`, coordinates as in `SpanCochain`.
pub fn span_coboundaries(t: &Toric, dd: &DegreeData) -> Rref {
    let sizes: Vec<usize> = dd.faces2().iter().map(Subset::span_dim).collect();
    let offs = offsets(&sizes);
    let total: usize = sizes.iter().sum();
    let mut rows = Vec::new();
    for (i, ray) in dd.rays().iter().enumerate() {
        for kb in 0..ray.span_dim() {
            let mut v = vec![Rat::zero(); total];
            for (e, &(a, b)) in t.faces2().iter().enumerate() {
                let sign = if a == i {
                    rat(1)
                } else if b == i {
                    rat(-1)
                } else {
                    continue;
                };
                for (k, p) in dd.faces2()[e].span_pivots().into_iter().enumerate() {
                    v[offs[e] + k] += &sign * &ray.express(p)[kb];
                }
            }
            rows.push(v);
        }
    }
    Rref::of_rows(&rows, total)
}

/// Whether the cochain represents the zero class in `H^2(span(E^R)^*)`.
pub fn span_class_is_zero(t: &Toric, dd: &DegreeData, c: &SpanCochain) -> bool {
    let flat: Vec<Rat> = c.components.iter().flatten().cloned().collect();
    span_coboundaries(t, dd).contains(&flat)
}

/// Restricts `x in T^1(-R)` along `L(E_0^{R-s}) ⊆ L(E_0^R)`.
pub fn multiply_t1(t: &Toric, x: &T1Element, s: &[i64]) -> Result<T1Element> {
    check_shift(t, s)?;
    let src = t.degree_data(&x.degree)?;
    let tgt_degree: Vec<i64> = x.degree.iter().zip(s).map(|(a, b)| a - b).collect();
    let tgt = t.degree_data(&tgt_degree)?;
    let from = src.union().kernel();
    let values = tgt.union().kernel().basis.iter().map(|v| dot(&from.coords(v), &x.values)).collect();
    T1Space::new(t, &tgt).element(values)
}

/// Restricts `x in H^1` along `L(E_i^{R-s}) ⊆ L(E_i^R)` and re-canonicalizes.
pub fn multiply_t2(t: &Toric, x: &T2Element, s: &[i64]) -> Result<T2Element> {
    check_shift(t, s)?;
    let src = t.degree_data(&x.degree)?;
    let tgt_degree: Vec<i64> = x.degree.iter().zip(s).map(|(a, b)| a - b).collect();
    let tgt = t.degree_data(&tgt_degree)?;
    let components = (0..t.num_rays())
        .map(|i| {
            let from = src.ray(i).kernel();
            tgt.ray(i).kernel().basis.iter().map(|v| dot(&from.coords(v), &x.components[i])).collect()
        })
        .collect();
    T2Space::new(t, &tgt).element(components)
}

fn check_shift(t: &Toric, s: &[i64]) -> Result<()> {
    if s.len() != t.rank() {
        return Err(Error::DimensionMismatch { expected: t.rank(), got: s.len() });
    }
    if !t.hilbert().contains(s) {
        return Err(Error::SNotInDualCone(s.to_vec()));
    }
    Ok(())
}

/// Homology of the summand of `(Z^{E^R})_•` belonging to the element `r^v`,
/// at the spots 0, -1 and -2.
pub fn element_homology(t: &Toric, dd: &DegreeData, v: usize) -> [usize; 3] {
    let in0 = usize::from(dd.union().contains(v));
    let rays: Vec<usize> = (0..t.num_rays()).filter(|&i| dd.ray(i).contains(v)).collect();
    let edges: Vec<usize> = (0..t.faces2().len()).filter(|&e| dd.faces2()[e].contains(v)).collect();
    let cells: Vec<usize> = (0..t.faces3().len()).filter(|&f| dd.faces3()[f].contains(v)).collect();

    let rank1 = usize::from(in0 == 1 && !rays.is_empty());
    let d2: Vec<Vec<Rat>> = edges
        .iter()
        .map(|&e| {
            let (i, j) = t.faces2()[e];
            rays.iter().map(|&r| rat(i64::from(r == i) - i64::from(r == j))).collect()
        })
        .collect();
    let rank2 = rank_of_rows(&d2, rays.len());
    let d3: Vec<Vec<Rat>> = cells
        .iter()
        .map(|&f| {
            edges
                .iter()
                .map(|&e| {
                    let s = t.boundaries3()[f].iter().find(|&&(x, _)| x == e).map_or(0, |&(_, s)| s);
                    rat(s)
                })
                .collect()
        })
        .collect();
    let rank3 = rank_of_rows(&d3, edges.len());
    [in0 - rank1, rays.len() - rank1 - rank2, edges.len() - rank2 - rank3]
}

/// Nonzero graded pieces found in the scan box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scan {
    pub bound: i64,
    pub points: usize,
    /// Degree `R` mapped to `(dim T^1(-R), dim H^1(-R))`, nonzero entries only.
    pub entries: BTreeMap<Vec<i64>, (usize, usize)>,
    pub label: T2Label,
}

impl Scan {
    pub fn total_t1(&self) -> usize {
        self.entries.values().map(|d| d.0).sum()
    }

    pub fn total_t2(&self) -> usize {
        self.entries.values().map(|d| d.1).sum()
    }
}

pub const DEFAULT_SCAN_BOUND: i64 = 2;
const MAX_SCAN_POINTS: u128 = 1_000_000;

/// Degrees `R` with `-B <= <a^i, R> <= max_e <a^i, e> + 1` for every generator.
pub fn scan_box(t: &Toric, bound: i64) -> Result<Vec<Vec<i64>>> {
    let n = t.rank();
    let gens = t.cone().generators();
    let upper: Vec<i64> = (0..gens.len())
        .map(|i| (0..t.hilbert().len()).map(|v| t.height(i, v)).max().unwrap_or(0) + 1)
        .collect();

    // Bound the coordinates through n independent generators.
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        let mut trial = rows.clone();
        trial.push(a.iter().map(|&x| rat(x)).collect());
        if rank_of_rows(&trial, n) > rows.len() {
            rows = trial;
            chosen.push(i);
        }
        if chosen.len() == n {
            break;
        }
    }
    let a = RatMatrix::from_rows(rows, n);
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    for k in 0..n {
        let mut unit = vec![Rat::zero(); n];
        unit[k] = rat(1);
        // Row k of A^{-1}: solve A^T y = e_k.
        let at = RatMatrix::from_rows((0..n).map(|c| (0..n).map(|r| a.get(r, c).clone()).collect()).collect(), n);
        let y = solve_rational(&at, &unit).expect("chosen generators are independent");
        let (mut l, mut h) = (Rat::zero(), Rat::zero());
        for (c, &i) in y.iter().zip(&chosen) {
            let (x0, x1) = (c * rat(-bound), c * rat(upper[i]));
            if x0 < x1 {
                l += x0;
                h += x1;
            } else {
                l += x1;
                h += x0;
            }
        }
        lo[k] = l.floor().to_integer().try_into().expect("scan box fits in i64");
        hi[k] = h.ceil().to_integer().try_into().expect("scan box fits in i64");
    }
    let size: u128 = lo.iter().zip(&hi).map(|(l, h)| (h - l + 1) as u128).product();
    if size > MAX_SCAN_POINTS {
        return Err(Error::BoxTooLarge(format!("degree scan box has {size} points (limit 10^6)")));
    }
    let mut out = Vec::new();
    let mut x = lo.clone();
    'outer: loop {
        let h = t.heights_of(&x);
        if h.iter().zip(&upper).all(|(&v, &u)| -bound <= v && v <= u) {
            out.push(x.clone());
        }
        for k in 0..n {
            if x[k] < hi[k] {
                x[k] += 1;
                continue 'outer;
            }
            x[k] = lo[k];
        }
        break;
    }
    Ok(out)
}

/// `(dim T^1(-R), dim H^1(-R))` from the rank formulas.
pub fn piece_dims(t: &Toric, degree: &[i64]) -> Result<(usize, usize)> {
    let dd = t.degree_data(degree)?;
    let d = l_complex_dims(t, &dd);
    Ok((d.h0, d.h1))
}

pub fn degree_scan(t: &Toric, bound: i64) -> Result<Scan> {
    let degrees = scan_box(t, bound)?;
    let dims: Vec<(Vec<i64>, (usize, usize))> = degrees
        .par_iter()
        .map(|r| piece_dims(t, r).map(|d| (r.clone(), d)))
        .collect::<Result<_>>()?;
    let entries = dims.into_iter().filter(|(_, d)| d.0 + d.1 > 0).collect();
    Ok(Scan { bound, points: degrees.len(), entries, label: T2Label::for_toric(t) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn r_star(k: i64) -> Vec<i64> {
        vec![0, 0, k]
    }

    #[test]
    fn gorenstein_t1_at_r_star() {
        for (t, n) in [
            (fixtures::triangle(), 3),
            (fixtures::square(), 4),
            (fixtures::hexagon(), 6),
        ] {
            let dd = t.degree_data(&r_star(1)).unwrap();
            assert_eq!(t1_piece(&t, &dd).dim(), n - 3);
        }
    }

    #[test]
    fn zero_degree_has_no_t1() {
        for t in [fixtures::square(), fixtures::hexagon(), fixtures::a3()] {
            let dd = t.degree_data(&vec![0; t.rank()]).unwrap();
            assert_eq!(t1_piece(&t, &dd).dim(), 0);
        }
    }

    #[test]
    fn t2_at_twice_r_star() {
        let t = fixtures::hexagon();
        let dd = t.degree_data(&r_star(2)).unwrap();
        let sp = t2_piece(&t, &dd);
        assert_eq!(sp.dim(), 2);
        assert!(sp.is_exact());
        let t = fixtures::square();
        let dd = t.degree_data(&r_star(2)).unwrap();
        assert_eq!(t2_piece(&t, &dd).dim(), 0);
    }

    #[test]
    fn two_dimensional_cone_has_no_h1() {
        let t = fixtures::a3();
        for r in scan_box(&t, 2).unwrap() {
            let dd = t.degree_data(&r).unwrap();
            let sp = t2_piece(&t, &dd);
            assert_eq!(sp.dim(), 0);
            assert_eq!(sp.label(), T2Label::NotApplicable);
        }
    }

    #[test]
    fn span_formulation_at_twice_r_star() {
        let t = fixtures::hexagon();
        let dd = t.degree_data(&r_star(2)).unwrap();
        let rep = t1_t2_via_span_complex(&t, &dd);
        assert_eq!((rep.t1_span, rep.t2_span), (0, 2));
        assert!(rep.consistent());
        let t = fixtures::square();
        let dd = t.degree_data(&r_star(1)).unwrap();
        assert_eq!(t1_t2_via_span_complex(&t, &dd).t1_span, 1);
    }

    #[test]
    fn octant_scan_is_empty() {
        let t = fixtures::octant();
        let scan = degree_scan(&t, 2).unwrap();
        assert!(scan.entries.is_empty());
        for r in scan_box(&t, 2).unwrap() {
            let dd = t.degree_data(&r).unwrap();
            let rep = t1_t2_via_span_complex(&t, &dd);
            assert!(rep.consistent());
            assert_eq!((rep.t1_span, rep.t2_span), (0, 0));
        }
    }

    #[test]
    fn square_scan() {
        let t = fixtures::square();
        let scan = degree_scan(&t, 2).unwrap();
        assert_eq!(scan.entries.len(), 1);
        assert_eq!(scan.entries.get(&r_star(1)), Some(&(1, 0)));
    }

    #[test]
    fn a3_scan_total() {
        let t = fixtures::a3();
        let scan = degree_scan(&t, 2).unwrap();
        assert_eq!(scan.total_t1(), 3);
        assert_eq!(scan.total_t2(), 0);
        assert_eq!(scan.label, T2Label::NotApplicable);
    }

    #[test]
    fn basis_dims_match_rank_formula() {
        for t in [fixtures::square(), fixtures::hexagon(), fixtures::rectangle()] {
            for r in scan_box(&t, 1).unwrap() {
                let dd = t.degree_data(&r).unwrap();
                let l = l_complex_dims(&t, &dd);
                assert_eq!(t1_piece(&t, &dd).dim(), l.h0, "T1 at {r:?}");
                assert_eq!(t2_piece(&t, &dd).dim(), l.h1, "T2 at {r:?}");
            }
        }
    }

    #[test]
    fn zigzag_of_basis_is_nonzero_class() {
        let t = fixtures::hexagon();
        let dd = t.degree_data(&r_star(2)).unwrap();
        let sp = t2_piece(&t, &dd);
        let images: Vec<Vec<Rat>> = sp
            .basis()
            .iter()
            .map(|b| zigzag_bridge(&t, &dd, b).unwrap().components.concat())
            .collect();
        // The two images stay independent modulo coboundaries.
        let cob = span_coboundaries(&t, &dd);
        let mut rows = cob.rows().to_vec();
        rows.extend(images);
        let total = cob.cols();
        assert_eq!(rank_of_rows(&rows, total), cob.dim() + 2);
        let zero = zigzag_bridge(&t, &dd, &sp.zero()).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn zigzag_of_global_restriction_is_zero_class() {
        let t = fixtures::hexagon();
        let dd = t.degree_data(&r_star(2)).unwrap();
        let sp = t2_piece(&t, &dd);
        let d0 = dd.union().l_dim();
        for k in 0..d0 {
            let mut f = vec![Rat::zero(); d0];
            f[k] = rat(1);
            let comps = sp.restriction_of_global(&dd, &f);
            // Canonicalization kills it.
            assert!(sp.element(comps.clone()).unwrap().is_zero());
            let raw = T2Element { degree: dd.degree().clone(), components: comps };
            let c = zigzag_bridge(&t, &dd, &raw).unwrap();
            assert!(span_class_is_zero(&t, &dd, &c));
        }
    }

    #[test]
    fn broken_cocycle_is_rejected() {
        let t = fixtures::hexagon();
        let dd = t.degree_data(&r_star(2)).unwrap();
        let sp = t2_piece(&t, &dd);
        let mut comps = sp.zero().components;
        let i = (0..comps.len()).find(|&i| !comps[i].is_empty()).unwrap();
        comps[i][0] = rat(1);
        if !sp.is_cocycle(&comps) {
            assert!(sp.element(comps.clone()).is_err());
            let raw = T2Element { degree: dd.degree().clone(), components: comps };
            assert!(matches!(zigzag_bridge(&t, &dd, &raw), Err(Error::CocycleViolation(..))));
        }
    }

    #[test]
    fn multiplication_by_characters() {
        let t = fixtures::hexagon();
        let dd = t.degree_data(&r_star(1)).unwrap();
        let t1 = t1_piece(&t, &dd);
        for b in t1.basis() {
            assert_eq!(&multiply_t1(&t, b, &[0, 0, 0]).unwrap(), b);
            let down = multiply_t1(&t, b, &[0, 0, 1]).unwrap();
            assert!(down.values.is_empty());
        }
        assert!(matches!(
            multiply_t1(&t, &t1.basis()[0], &[0, 0, -1]),
            Err(Error::SNotInDualCone(_))
        ));

        let dd3 = t.degree_data(&r_star(3)).unwrap();
        let sp3 = t2_piece(&t, &dd3);
        let dd2 = t.degree_data(&r_star(2)).unwrap();
        let sp2 = t2_piece(&t, &dd2);
        let s = [0, 0, 1];
        let s2 = [1, 0, 1];
        for x in sp3.basis().iter().chain(sp2.basis()) {
            let both = [s[0] + s2[0], s[1] + s2[1], s[2] + s2[2]];
            let stepwise = multiply_t2(&t, &multiply_t2(&t, x, &s).unwrap(), &s2).unwrap();
            assert_eq!(stepwise, multiply_t2(&t, x, &both).unwrap());
            assert_eq!(&multiply_t2(&t, x, &[0, 0, 0]).unwrap(), x);
        }
    }

    #[test]
    fn element_complexes_are_exact() {
        for t in [fixtures::square(), fixtures::hexagon(), fixtures::rectangle(), fixtures::octant()] {
            for r in scan_box(&t, 1).unwrap() {
                let dd = t.degree_data(&r).unwrap();
                for v in 0..t.hilbert().len() {
                    assert_eq!(element_homology(&t, &dd, v), [0, 0, 0], "{r:?} element {v}");
                }
            }
        }
    }

    #[test]
    fn union_membership_matches_order() {
        let t = fixtures::hexagon();
        for r in scan_box(&t, 1).unwrap() {
            let dd = t.degree_data(&r).unwrap();
            for (v, e) in t.hilbert().elements().iter().enumerate() {
                let diff: Vec<i64> = e.iter().zip(&r).map(|(a, b)| a - b).collect();
                assert_eq!(dd.union().contains(v), !t.hilbert().contains(&diff));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn canonical_form_is_idempotent(k in 2i64..4, coeffs in proptest::collection::vec(-3i64..=3, 2)) {
            let t = fixtures::hexagon();
            let dd = t.degree_data(&r_star(k)).unwrap();
            let sp = t2_piece(&t, &dd);
            let c: Vec<Rat> = coeffs.iter().take(sp.dim()).map(|&x| rat(x)).collect();
            let x = sp.combination(&c);
            let again = sp.element(x.components.clone()).unwrap();
            prop_assert_eq!(&again, &x);
            prop_assert_eq!(sp.coordinates(&x), c);
        }

        #[test]
        fn dims_invariant_under_generator_relabeling(seed in 0u64..500, r in proptest::collection::vec(-1i64..=2, 2), h in 1i64..=3) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut gens = fixtures::cone_over(fixtures::HEXAGON);
            let base = Toric::from_generators(3, &gens).unwrap();
            gens.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let shuffled = Toric::from_generators(3, &gens).unwrap();
            let deg = vec![r[0], r[1], h];
            prop_assert_eq!(piece_dims(&base, &deg).unwrap(), piece_dims(&shuffled, &deg).unwrap());
        }

        #[test]
        fn dims_invariant_under_unimodular_change(r in proptest::collection::vec(-1i64..=2, 2), h in 1i64..=3, shear in -2i64..=2) {
            // (x, y, z) -> (x + shear*y, y, z) on N, and the transpose inverse on M.
            let gens = fixtures::cone_over(fixtures::HEXAGON);
            let moved: Vec<Vec<i64>> = gens.iter().map(|g| vec![g[0] + shear * g[1], g[1], g[2]]).collect();
            let a = Toric::from_generators(3, &gens).unwrap();
            let b = Toric::from_generators(3, &moved).unwrap();
            let deg = vec![r[0], r[1], h];
            let deg_b = vec![r[0], r[1] - shear * r[0], h];
            prop_assert_eq!(piece_dims(&a, &deg).unwrap(), piece_dims(&b, &deg_b).unwrap());
        }
    }
}
