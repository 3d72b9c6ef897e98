//! The cup product `T^1(-R) x T^1(-S) -> T^2(-R-S)`.
//!
//! `(phi ∪ psi)_i` is evaluated on an integral relation `q ∈ L(E_i^{R+S})` by
//! splitting `q` into pieces `q^k` of small height on `a^i` and summing
//! `t(q^k)`. The pieces come from the elementary relations `p(r)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::complex::{T1Element, T2Element, T2Space};
use crate::error::{Error, Result};
use crate::hilbert::{HilbertBasis, SectionPhi};
use crate::lattice::dot_i64;
use crate::linalg::{rat, solve_integer, solve_rational, IntMatrix, Rat, RatMatrix, Rref};
use crate::toric::{DegreeData, Subset, Toric};

pub fn positive_part(q: &[i64]) -> Vec<i64> {
    q.iter().map(|&x| x.max(0)).collect()
}

pub fn negative_part(q: &[i64]) -> Vec<i64> {
    q.iter().map(|&x| (-x).max(0)).collect()
}

/// `q̄ = pi(q^+)`.
pub fn bar(hb: &HilbertBasis, q: &[i64]) -> Vec<i64> {
    hb.pi(&positive_part(q)).expect("relation has one entry per element").0
}

fn is_relation(hb: &HilbertBasis, q: &[i64]) -> bool {
    hb.pi(q).map(|m| m.is_zero()).unwrap_or(false)
}

/// The part of the dual cone a set of elementary relations is adapted to:
/// `a^i` alone, or the 2-face `a^i, a^j` (heights are controlled for both).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Wall {
    Ray(usize),
    Face(usize, usize),
}

impl Wall {
    fn rays(&self) -> Vec<usize> {
        match *self {
            Wall::Ray(i) => vec![i],
            Wall::Face(i, j) => vec![i, j],
        }
    }
}

impl std::fmt::Display for Wall {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Wall::Ray(i) => write!(f, "ray {i}"),
            Wall::Face(i, j) => write!(f, "face ({i}, {j})"),
        }
    }
}

fn height_one(t: &Toric, i: usize, zero_on: Option<usize>) -> Vec<usize> {
    (0..t.hilbert().len())
        .filter(|&v| t.height(i, v) == 1 && zero_on.is_none_or(|j| t.height(j, v) == 0))
        .collect()
}

/// `r(i)`: the lexicographically smallest element of height 1 on `a^i`.
pub fn choose_anchor(t: &Toric, i: usize) -> Result<usize> {
    height_one(t, i, None).first().copied().ok_or(Error::NoHeightOneElement(i))
}

/// `r(i,j)`: the smallest element with height 1 on `a^i` and 0 on `a^j`.
pub fn choose_pair_anchor(t: &Toric, i: usize, j: usize) -> Result<usize> {
    height_one(t, i, Some(j)).first().copied().ok_or(Error::NoHeightOneElement(i))
}

/// How to build the elementary relations; the default is the canonical choice.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationChoice {
    /// Use the `k`-th admissible anchor (cyclically) instead of the smallest.
    pub anchor_offset: usize,
    /// Add a fixed relation among the wall elements to every correction term.
    pub shift_corrections: bool,
}

/// The relations `p(r)`, one per Hilbert basis element, for one wall.
#[derive(Clone, Debug)]
pub struct ElementaryRelations {
    wall: Wall,
    anchors: Vec<usize>,
    relations: Vec<Vec<i64>>,
}

/// A relation used `multiplicity` times in a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub relation: Vec<i64>,
    pub multiplicity: i64,
}

impl ElementaryRelations {
    pub fn new(t: &Toric, wall: Wall) -> Result<Self> {
        Self::with_choice(t, wall, &RelationChoice::default())
    }

    pub fn with_choice(t: &Toric, wall: Wall, choice: &RelationChoice) -> Result<Self> {
        let pick = |i: usize, zero_on: Option<usize>| -> Result<usize> {
            let c = height_one(t, i, zero_on);
            if c.is_empty() {
                return Err(Error::NoHeightOneElement(i));
            }
            Ok(c[choice.anchor_offset % c.len()])
        };
        let anchors = match wall {
            Wall::Ray(i) => vec![pick(i, None)?],
            Wall::Face(i, j) => vec![pick(i, Some(j))?, pick(j, Some(i))?],
        };
        let rays = wall.rays();
        let hb = t.hilbert();
        let on_wall: Vec<usize> =
            (0..hb.len()).filter(|&v| rays.iter().all(|&i| t.height(i, v) == 0)).collect();
        let wall_matrix = IntMatrix::from_columns(
            &on_wall.iter().map(|&v| hb.elements()[v].0.clone()).collect::<Vec<_>>(),
            hb.rank(),
        );
        let shift = if choice.shift_corrections { wall_relation(hb, &on_wall) } else { None };

        let mut relations = Vec::with_capacity(hb.len());
        for v in 0..hb.len() {
            let mut p = vec![0i64; hb.len()];
            if on_wall.contains(&v) || anchors.contains(&v) {
                // p(r) = 0: r is its own correction, or the anchor cancels it.
                relations.push(p);
                continue;
            }
            p[v] += 1;
            let mut m = hb.elements()[v].0.clone();
            for (&i, &a) in rays.iter().zip(&anchors) {
                let h = t.height(i, v);
                p[a] -= h;
                for (x, y) in m.iter_mut().zip(hb.elements()[a].iter()) {
                    *x -= h * y;
                }
            }
            let rhs: Vec<BigInt> = m.iter().map(|&x| BigInt::from(x)).collect();
            let c = if on_wall.is_empty() {
                (m.iter().all(|&x| x == 0)).then(Vec::new)
            } else {
                solve_integer(&wall_matrix, &rhs)
            };
            let c = c.ok_or_else(|| Error::CorrectionNotFound {
                element: hb.elements()[v].0.clone(),
                wall: wall.to_string(),
            })?;
            for (&w, x) in on_wall.iter().zip(&c) {
                p[w] -= x.to_i64().expect("correction coefficient exceeds i64");
            }
            if let Some(s) = &shift {
                for (x, y) in p.iter_mut().zip(s) {
                    *x -= y;
                }
            }
            relations.push(p);
        }
        let out = ElementaryRelations { wall, anchors, relations };
        out.verify(t)?;
        Ok(out)
    }

    pub fn wall(&self) -> Wall {
        self.wall
    }

    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    /// `p(r^v)`.
    pub fn relation(&self, v: usize) -> &[i64] {
        &self.relations[v]
    }

    fn verify(&self, t: &Toric) -> Result<()> {
        let hb = t.hilbert();
        let rays = self.wall.rays();
        for (v, p) in self.relations.iter().enumerate() {
            if !is_relation(hb, p) {
                return Err(Error::DecompositionCheck(format!("p({v}) is not a relation")));
            }
            if p.iter().all(|&x| x == 0) {
                continue;
            }
            let b = bar(hb, p);
            for &i in &rays {
                if dot_i64(&t.cone().generators()[i], &b) != t.height(i, v) {
                    return Err(Error::DecompositionCheck(format!(
                        "p({v}) has the wrong height on generator {i}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Splits an integral relation supported in `{v : <a^i, r^v> < bound_i}`
    /// (for the rays of the wall) into pieces of height below the bound.
    pub fn decompose(&self, t: &Toric, q: &[i64], bound: &[i64]) -> Result<Vec<Piece>> {
        let hb = t.hilbert();
        let rays = self.wall.rays();
        let allowed = t.below(&rays, bound);
        if !is_relation(hb, q) {
            return Err(Error::DecompositionCheck("input is not a relation".into()));
        }
        if q.iter().enumerate().any(|(v, &x)| x != 0 && !allowed.contains(&v)) {
            return Err(Error::DecompositionCheck("input support exceeds the bound".into()));
        }
        let mut pieces = Vec::new();
        let mut rest = q.to_vec();
        for (v, &c) in q.iter().enumerate() {
            let p = &self.relations[v];
            if c == 0 || p.iter().all(|&x| x == 0) {
                continue;
            }
            for (x, y) in rest.iter_mut().zip(p) {
                *x -= c * y;
            }
            let relation = if c > 0 { p.clone() } else { p.iter().map(|x| -x).collect() };
            pieces.push(Piece { relation, multiplicity: c.abs() });
        }
        if rest.iter().any(|&x| x != 0) {
            pieces.push(Piece { relation: rest, multiplicity: 1 });
        }
        for piece in &pieces {
            self.check_piece(t, &piece.relation, &allowed, bound)?;
        }
        Ok(pieces)
    }

    fn check_piece(&self, t: &Toric, p: &[i64], allowed: &[usize], bound: &[i64]) -> Result<()> {
        let hb = t.hilbert();
        if !is_relation(hb, p) {
            return Err(Error::DecompositionCheck("piece is not a relation".into()));
        }
        if p.iter().enumerate().any(|(v, &x)| x != 0 && !allowed.contains(&v)) {
            return Err(Error::DecompositionCheck(format!("piece {p:?} leaves the allowed support")));
        }
        let b = bar(hb, p);
        for i in self.wall.rays() {
            if dot_i64(&t.cone().generators()[i], &b) >= bound[i] {
                return Err(Error::DecompositionCheck(format!(
                    "piece {p:?} is too high on generator {i}"
                )));
            }
        }
        Ok(())
    }

    /// Merges consecutive pieces as long as the merged piece stays below the
    /// bound. Gives a different, still admissible, decomposition.
    pub fn regroup(&self, t: &Toric, pieces: &[Piece], bound: &[i64]) -> Result<Vec<Piece>> {
        let hb = t.hilbert();
        let rays = self.wall.rays();
        let allowed = t.below(&rays, bound);
        let fits = |p: &[i64]| {
            let b = bar(hb, p);
            rays.iter().all(|&i| dot_i64(&t.cone().generators()[i], &b) < bound[i])
        };
        let mut out: Vec<Piece> = Vec::new();
        let mut acc: Option<Vec<i64>> = None;
        for piece in pieces {
            for _ in 0..piece.multiplicity {
                acc = Some(match acc.take() {
                    None => piece.relation.clone(),
                    Some(a) => {
                        let merged: Vec<i64> =
                            a.iter().zip(&piece.relation).map(|(x, y)| x + y).collect();
                        if fits(&merged) {
                            merged
                        } else {
                            out.push(Piece { relation: a, multiplicity: 1 });
                            piece.relation.clone()
                        }
                    }
                });
            }
        }
        if let Some(a) = acc {
            out.push(Piece { relation: a, multiplicity: 1 });
        }
        for piece in &out {
            self.check_piece(t, &piece.relation, &allowed, bound)?;
        }
        Ok(out)
    }
}

// An integral nonzero relation among the wall elements, if there is one.
fn wall_relation(hb: &HilbertBasis, on_wall: &[usize]) -> Option<Vec<i64>> {
    let s = Subset::new(hb, on_wall.to_vec());
    let b = s.kernel().basis.first()?;
    let (v, _) = clear_denominators(b);
    Some(v)
}

/// Integer vector `d * v` with the least positive `d`, and that `d`.
pub fn clear_denominators(v: &[Rat]) -> (Vec<i64>, i64) {
    let d = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let out = v
        .iter()
        .map(|x| (x * Rat::from_integer(d.clone())).to_integer().to_i64().expect("entry exceeds i64"))
        .collect();
    (out, d.to_i64().expect("denominator exceeds i64"))
}

/// A linear functional on `Q^E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<Rat>,
}

impl LinearForm {
    pub fn eval(&self, v: &[i64]) -> Rat {
        self.coeffs
            .iter()
            .zip(v)
            .filter(|(_, &x)| x != 0)
            .map(|(c, &x)| c * rat(x))
            .sum()
    }

    pub fn eval_rat(&self, v: &[Rat]) -> Rat {
        self.coeffs.iter().zip(v).map(|(c, x)| c * x).sum()
    }
}

/// Extends `x in T^1(-R)` from `L(E_0^R)` to `L(E)` (given values on a fixed
/// complement, zero by default) and then to `Q^E` (zero on the pivot elements).
pub fn extend_t1(
    t: &Toric,
    dd: &DegreeData,
    x: &T1Element,
    complement: Option<&[Rat]>,
) -> Result<LinearForm> {
    let hb = t.hilbert();
    let all = Subset::new(hb, (0..hb.len()).collect());
    let lk = all.kernel();
    let union = dd.union().kernel();
    if x.values.len() != union.dim() {
        return Err(Error::DimensionMismatch { expected: union.dim(), got: x.values.len() });
    }
    let mut rows: Vec<Vec<Rat>> = union.basis.iter().map(|b| lk.coords(b)).collect();
    let mut rhs = x.values.clone();
    let extra = lk.dim() - union.dim();
    let given = complement.map(<[Rat]>::to_vec).unwrap_or_else(|| vec![Rat::zero(); extra]);
    if given.len() != extra {
        return Err(Error::DimensionMismatch { expected: extra, got: given.len() });
    }
    let mut k = 0;
    for j in 0..lk.dim() {
        if rows.len() == lk.dim() {
            break;
        }
        let mut unit = vec![Rat::zero(); lk.dim()];
        unit[j] = rat(1);
        let mut trial = rows.clone();
        trial.push(unit);
        if Rref::of_rows(&trial, lk.dim()).dim() == trial.len() {
            rows = trial;
            rhs.push(given[k].clone());
            k += 1;
        }
    }
    let f = solve_rational(&RatMatrix::from_rows(rows, lk.dim()), &rhs)
        .expect("basis of L(E) is invertible");
    let mut coeffs = vec![Rat::zero(); hb.len()];
    for (&col, val) in lk.free.iter().zip(f) {
        coeffs[col] = val;
    }
    Ok(LinearForm { coeffs })
}

/// `dim L(E) - dim L(E_0^R)`: the number of free values in `extend_t1`.
pub fn complement_dim(t: &Toric, dd: &DegreeData) -> usize {
    let hb = t.hilbert();
    Subset::new(hb, (0..hb.len()).collect()).l_dim() - dd.union().l_dim()
}

/// The function `t = t_{phi,psi,R,S}` for fixed functionals, degrees and section.
pub struct TFunction<'a> {
    section: SectionPhi<'a>,
    phi: LinearForm,
    psi: LinearForm,
    r: Vec<i64>,
    s: Vec<i64>,
    lift_r: Vec<i64>,
    lift_s: Vec<i64>,
}

impl<'a> TFunction<'a> {
    pub fn new(
        section: SectionPhi<'a>,
        phi: LinearForm,
        psi: LinearForm,
        r: &[i64],
        s: &[i64],
    ) -> Self {
        let lift_r = section.phi(r);
        let lift_s = section.phi(s);
        TFunction { section, phi, psi, r: r.to_vec(), s: s.to_vec(), lift_r, lift_s }
    }

    /// `t(alpha, beta)` for `alpha, beta in N^E` with equal image.
    pub fn t_pair(&self, alpha: &[i64], beta: &[i64], image: &[i64]) -> Rat {
        let diff: Vec<i64> = alpha.iter().zip(beta).map(|(a, b)| a - b).collect();
        let phi_q = self.phi.eval(&diff);
        let psi_q = self.psi.eval(&diff);
        let mut out = Rat::zero();
        if !phi_q.is_zero() {
            let arg = self.argument(image, &self.r, &self.lift_r, beta);
            out += phi_q * self.psi.eval(&arg);
        }
        if !psi_q.is_zero() {
            let arg = self.argument(image, &self.s, &self.lift_s, alpha);
            out += psi_q * self.phi.eval(&arg);
        }
        out
    }

    // Phi(image - shift) + Phi(shift) - part
    fn argument(&self, image: &[i64], shift: &[i64], lift: &[i64], part: &[i64]) -> Vec<i64> {
        let m: Vec<i64> = image.iter().zip(shift).map(|(a, b)| a - b).collect();
        let lifted = self.section.phi(&m);
        lifted.iter().zip(lift).zip(part).map(|((a, b), c)| a + b - c).collect()
    }

    /// `t(q) = t(q^+, q^-)`.
    pub fn t(&self, hb: &HilbertBasis, q: &[i64]) -> Rat {
        let plus = positive_part(q);
        let image = hb.pi(&plus).expect("relation has one entry per element").0;
        self.t_pair(&plus, &negative_part(q), &image)
    }

    /// `phi(q) psi(q)`, which equals `t(q)` when `R >= S >= 0`, `Phi(R) >= Phi(S)`
    /// and `q^+ >= Phi(R)`.
    pub fn product_shortcut(&self, q: &[i64]) -> Rat {
        self.phi.eval(q) * self.psi.eval(q)
    }

    pub fn phi(&self) -> &LinearForm {
        &self.phi
    }

    pub fn psi(&self) -> &LinearForm {
        &self.psi
    }
}

/// Knobs for testing that the cup product class does not depend on choices.
#[derive(Clone, Debug, Default)]
pub struct CupOptions {
    /// Greedy order of the section `Phi`.
    pub section_order: Option<Vec<usize>>,
    pub relations: RelationChoice,
    /// Merge decomposition pieces where the height bound allows.
    pub regroup: bool,
    /// Values of the extensions of `phi` and `psi` on the complement of `L(E_0)` in `L(E)`.
    pub phi_complement: Option<Vec<Rat>>,
    pub psi_complement: Option<Vec<Rat>>,
    /// Skip the comparison with the 2-face decompositions.
    pub skip_face_check: bool,
}

pub fn cup(t: &Toric, phi: &T1Element, psi: &T1Element) -> Result<T2Element> {
    cup_with(t, phi, psi, &CupOptions::default())
}

pub fn cup_with(t: &Toric, phi: &T1Element, psi: &T1Element, opts: &CupOptions) -> Result<T2Element> {
    if !t.smooth_up_to(2) {
        return Err(Error::NotSmoothCodim2);
    }
    let hb = t.hilbert();
    let dd_r = t.degree_data(&phi.degree)?;
    let dd_s = t.degree_data(&psi.degree)?;
    let total: Vec<i64> = phi.degree.iter().zip(psi.degree.iter()).map(|(a, b)| a + b).collect();
    let dd_t = t.degree_data(&total)?;
    let bound = dd_t.heights().to_vec();

    let section = match &opts.section_order {
        Some(order) => hb.section_with_order(order.clone())?,
        None => hb.section(),
    };
    let tf = TFunction::new(
        section,
        extend_t1(t, &dd_r, phi, opts.phi_complement.as_deref())?,
        extend_t1(t, &dd_s, psi, opts.psi_complement.as_deref())?,
        &phi.degree,
        &psi.degree,
    );
    let value = |rels: &ElementaryRelations, b: &[Rat]| -> Result<Rat> {
        let (q, d) = clear_denominators(b);
        let mut pieces = rels.decompose(t, &q, &bound)?;
        if opts.regroup {
            pieces = rels.regroup(t, &pieces, &bound)?;
        }
        let sum: Rat = pieces.iter().map(|p| tf.t(hb, &p.relation) * rat(p.multiplicity)).sum();
        Ok(sum / rat(d))
    };

    let mut components = Vec::with_capacity(t.num_rays());
    for i in 0..t.num_rays() {
        let basis = &dd_t.ray(i).kernel().basis;
        if basis.is_empty() {
            components.push(Vec::new());
            continue;
        }
        let rels = ElementaryRelations::with_choice(t, Wall::Ray(i), &opts.relations)?;
        components.push(basis.iter().map(|b| value(&rels, b)).collect::<Result<Vec<_>>>()?);
    }

    if !opts.skip_face_check {
        for (e, &(i, j)) in t.faces2().iter().enumerate() {
            let basis = &dd_t.faces2()[e].kernel().basis;
            if basis.is_empty() {
                continue;
            }
            let rels = ElementaryRelations::with_choice(t, Wall::Face(i, j), &opts.relations)?;
            for b in basis {
                let v = value(&rels, b)?;
                let vi: Rat = dd_t.ray(i).kernel().coords(b).iter().zip(&components[i]).map(|(x, y)| x * y).sum();
                let vj: Rat = dd_t.ray(j).kernel().coords(b).iter().zip(&components[j]).map(|(x, y)| x * y).sum();
                if v != vi || v != vj {
                    return Err(Error::CocycleViolation(i, j));
                }
            }
        }
    }

    let space = T2Space::new(t, &dd_t);
    space.element(components).map_err(|e| match e {
        Error::CocycleViolation(..) => Error::CocycleViolation(0, 0),
        other => other,
    })
}
