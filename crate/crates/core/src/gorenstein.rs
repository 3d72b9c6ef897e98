//! Three-dimensional Gorenstein cones `Cone(Q)` over a lattice polygon `Q`:
//! Minkowski summands, the diameter formula for `T^2(-kR*)` and the closed
//! form of the cup product, each cross-checked against the general machinery.

use num_traits::Zero;

use crate::complex::{span_complex_dims, t1_piece, t2_piece, zigzag_bridge, T1Element, T2Element};
use crate::cup::cup;
use crate::error::{Error, Result};
use crate::lattice::dot_i64;
use crate::linalg::{rank_of_rows, rat, solve_rational, Rat, RatMatrix, Rref};
use crate::toric::{DegreeData, Toric};

/// A convex lattice polygon with vertices in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolygon {
    vertices: Vec<[i64; 2]>,
}

fn cross(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

impl LatticePolygon {
    /// Validates convexity, orientation and primitivity of the edges.
    pub fn new(vertices: Vec<[i64; 2]>) -> Result<LatticePolygon> {
        let p = Self::with_nonprimitive_edges(vertices)?;
        for (i, d) in p.edges().iter().enumerate() {
            if num_integer::gcd(d[0], d[1]) != 1 {
                return Err(Error::InvalidPolygon(format!("edge {i} ({d:?}) is not primitive")));
            }
        }
        Ok(p)
    }

    /// Like `new`, but accepts edges containing interior lattice points.
    pub fn with_nonprimitive_edges(vertices: Vec<[i64; 2]>) -> Result<LatticePolygon> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!("need at least 3 vertices, got {n}")));
        }
        let p = LatticePolygon { vertices };
        let d = p.edges();
        let turns: Vec<i64> = (0..n).map(|i| cross(d[(i + n - 1) % n], d[i])).collect();
        if turns.iter().all(|&x| x < 0) {
            return Err(Error::InvalidPolygon("vertices are in clockwise order".into()));
        }
        if let Some(k) = turns.iter().position(|&x| x <= 0) {
            return Err(Error::InvalidPolygon(format!("not convex at vertex {k}")));
        }
        // Positive turns everywhere still allow a star shape winding twice.
        let winding: i64 = (1..n - 1)
            .map(|i| cross(sub(p.vertices[i], p.vertices[0]), sub(p.vertices[i + 1], p.vertices[0])))
            .filter(|&x| x < 0)
            .count() as i64;
        if winding > 0 {
            return Err(Error::InvalidPolygon("vertex list winds more than once".into()));
        }
        Ok(p)
    }

    pub fn vertices(&self) -> &[[i64; 2]] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `d^i = a^{i+1} - a^i`, cyclically.
    pub fn edges(&self) -> Vec<[i64; 2]> {
        let n = self.vertices.len();
        (0..n).map(|i| sub(self.vertices[(i + 1) % n], self.vertices[i])).collect()
    }

    pub fn has_primitive_edges(&self) -> bool {
        self.edges().iter().all(|d| num_integer::gcd(d[0], d[1]) == 1)
    }

    /// Generators `(a^i, 1)` of `Cone(Q)`.
    pub fn cone_generators(&self) -> Vec<Vec<i64>> {
        self.vertices.iter().map(|a| vec![a[0], a[1], 1]).collect()
    }

    /// `max <a^i, c> - min <a^i, c>`.
    pub fn diameter(&self, c: [i64; 2]) -> Result<i64> {
        if c == [0, 0] {
            return Err(Error::ZeroVector);
        }
        let vals: Vec<i64> = self.vertices.iter().map(|a| a[0] * c[0] + a[1] * c[1]).collect();
        Ok(vals.iter().max().unwrap() - vals.iter().min().unwrap())
    }

    /// `(k_1, k_2)`: the smallest diameter, and the smallest bound on the
    /// diameters of two independent directions.
    pub fn k_thresholds(&self) -> (i64, i64) {
        let d = self.edges();
        let (u, w) = (d[0], d[1]);
        let det = cross(u, w).abs();
        // |c|_inf <= rowsum(|adj U|) / |det U| * d(c), since d(c) >= |<d^i, c>|.
        let rowsum = (w[1].abs() + u[1].abs()).max(w[0].abs() + u[0].abs());
        let seed = self.diameter([1, 0]).unwrap().max(self.diameter([0, 1]).unwrap());
        let radius = seed * rowsum / det;
        let mut dirs: Vec<(i64, [i64; 2])> = Vec::new();
        for x in 0..=radius {
            for y in -radius..=radius {
                if (x == 0 && y <= 0) || num_integer::gcd(x, y) != 1 {
                    continue;
                }
                dirs.push((self.diameter([x, y]).unwrap(), [x, y]));
            }
        }
        dirs.sort();
        let k1 = dirs[0].0;
        // Distinct primitive directions up to sign are pairwise independent.
        let k2 = dirs[1].0;
        (k1, k2)
    }

    /// `dim T^2(-kR*)` from the diameter formula.
    pub fn t2_dim_closed_form(&self, k: i64) -> Result<usize> {
        if k < 2 {
            return Err(Error::KOutOfRange(k));
        }
        let (k1, k2) = self.k_thresholds();
        Ok(if k <= k1 {
            2
        } else if k <= k2 {
            1
        } else {
            0
        })
    }

    /// `V = {t : sum_i t_i d^i = 0}`.
    pub fn summand_space(&self) -> SummandSpace {
        let d = self.edges();
        let n = d.len();
        let rows: Vec<Vec<Rat>> = (0..2).map(|k| d.iter().map(|e| rat(e[k])).collect()).collect();
        let equations = Rref::of_rows(&rows, n);
        let basis = equations.kernel().basis;
        let one = vec![rat(1); n];
        let mut quotient = Vec::new();
        let mut span = vec![one.clone()];
        for b in &basis {
            let mut trial = span.clone();
            trial.push(b.clone());
            if rank_of_rows(&trial, n) == trial.len() {
                span = trial;
                quotient.push(b.clone());
            }
        }
        SummandSpace { edges: d, equations, basis, quotient_basis: quotient }
    }

    /// `sum_i s_i t_i d^i`.
    pub fn cup_closed_form(&self, s: &[Rat], t: &[Rat]) -> Result<[Rat; 2]> {
        let space = self.summand_space();
        if !space.contains(s) || !space.contains(t) {
            return Err(Error::NotInSummandSpace);
        }
        Ok(space.quadratic(s, t))
    }

    /// The equations `sum_i t_i^k d^i = 0` for `k = 1..=kmax`.
    pub fn versal_equations(&self, kmax: u32) -> Vec<VersalEquation> {
        let d = self.edges();
        (1..=kmax)
            .flat_map(|k| {
                (0..2).map(move |c| (k, c))
            })
            .map(|(k, c)| VersalEquation {
                power: k,
                component: c,
                coefficients: d.iter().map(|e| e[c]).collect(),
            })
            .collect()
    }
}

fn sub(a: [i64; 2], b: [i64; 2]) -> [i64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// The Minkowski summand space `V` and a basis of `V / Q·1`.
#[derive(Clone, Debug)]
pub struct SummandSpace {
    edges: Vec<[i64; 2]>,
    equations: Rref,
    basis: Vec<Vec<Rat>>,
    quotient_basis: Vec<Vec<Rat>>,
}

impl SummandSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    /// Representatives of a basis of `V / Q·1`.
    pub fn quotient_basis(&self) -> &[Vec<Rat>] {
        &self.quotient_basis
    }

    pub fn contains(&self, t: &[Rat]) -> bool {
        t.len() == self.edges.len() && self.equations.rows().iter().all(|r| {
            r.iter().zip(t).map(|(a, b)| a * b).sum::<Rat>().is_zero()
        })
    }

    fn quadratic(&self, s: &[Rat], t: &[Rat]) -> [Rat; 2] {
        let mut out = [Rat::zero(), Rat::zero()];
        for ((d, a), b) in self.edges.iter().zip(s).zip(t) {
            let w = a * b;
            out[0] += &w * rat(d[0]);
            out[1] += &w * rat(d[1]);
        }
        out
    }
}

/// One scalar equation `sum_i d^i_c t_i^k = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VersalEquation {
    pub power: u32,
    /// 0 for the first coordinate of the `d^i`, 1 for the second.
    pub component: usize,
    pub coefficients: Vec<i64>,
}

impl VersalEquation {
    pub fn evaluate(&self, t: &[Rat]) -> Rat {
        self.coefficients
            .iter()
            .zip(t)
            .map(|(&c, x)| rat(c) * num_traits::pow(x.clone(), self.power as usize))
            .sum()
    }
}

impl std::fmt::Display for VersalEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "t{}", i + 1)?;
            if self.power > 1 {
                write!(f, "^{}", self.power)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(" = 0")
    }
}

/// The cone over a polygon with its toric data and `R* = (0,0,1)`.
#[derive(Clone, Debug)]
pub struct GorensteinContext {
    polygon: LatticePolygon,
    toric: Toric,
}

pub const R_STAR: [i64; 3] = [0, 0, 1];

impl GorensteinContext {
    pub fn new(polygon: LatticePolygon) -> Result<GorensteinContext> {
        let toric = Toric::from_generators(3, &polygon.cone_generators())?;
        if toric.num_rays() != polygon.len() {
            return Err(Error::InvalidPolygon("some vertex is not extremal".into()));
        }
        for a in toric.cone().generators() {
            if dot_i64(a, &R_STAR) != 1 {
                return Err(Error::InvalidPolygon("generator not at height one".into()));
            }
        }
        Ok(GorensteinContext { polygon, toric })
    }

    pub fn polygon(&self) -> &LatticePolygon {
        &self.polygon
    }

    pub fn toric(&self) -> &Toric {
        &self.toric
    }

    pub fn k_r_star(k: i64) -> Vec<i64> {
        vec![0, 0, k]
    }

    /// Whether `R*` is an element of the Hilbert basis.
    pub fn r_star_in_hilbert_basis(&self) -> bool {
        self.toric.hilbert().index_of(&R_STAR).is_some()
    }

    /// Hilbert basis elements other than `R*` off the boundary of the dual cone.
    /// `psi_pairing` is undefined on them; none are expected.
    pub fn interior_elements(&self) -> Vec<Vec<i64>> {
        self.toric
            .hilbert()
            .elements()
            .iter()
            .filter(|e| e[..2] != [0, 0])
            .filter(|e| self.polygon.vertices().iter().all(|a| -(a[0] * e[0] + a[1] * e[1]) != e[2]))
            .map(|e| e.0.clone())
            .collect()
    }

    /// `Psi(t, [c; eta])`: the sum of `t_v <d^v, -c>` over the edges before the
    /// first vertex where `-c` reaches `eta`. With `a^1 = 0` this is the maximum
    /// of `-c` on the summand `Q_t`.
    pub fn psi_pairing(&self, t: &[Rat], e: &[i64]) -> Result<Rat> {
        if self.toric.hilbert().index_of(e).is_none() {
            return Err(Error::NotInHilbertBasis(e.to_vec()));
        }
        let (c, eta) = ([e[0], e[1]], e[2]);
        if c == [0, 0] {
            return Ok(Rat::zero());
        }
        let neg = |a: [i64; 2]| -(a[0] * c[0] + a[1] * c[1]);
        let i = self
            .polygon
            .vertices()
            .iter()
            .position(|&a| neg(a) == eta)
            .ok_or_else(|| Error::Unsupported(format!("{e:?} is interior to the dual cone")))?;
        let d = self.polygon.edges();
        Ok((0..i).map(|v| &t[v] * rat(neg(d[v]))).sum())
    }

    /// The functional `q -> sum_e Psi(t, e) q_e` on `L(E_0^{R*})`, as a `T^1` element.
    pub fn t1_iso(&self, t: &[Rat]) -> Result<T1Element> {
        let dd = self.toric.degree_data(&R_STAR)?;
        let space = t1_piece(&self.toric, &dd);
        let weights: Vec<Rat> = self
            .toric
            .hilbert()
            .elements()
            .iter()
            .map(|e| self.psi_pairing(t, e))
            .collect::<Result<_>>()?;
        let values = dd
            .union()
            .kernel()
            .basis
            .iter()
            .map(|b| b.iter().zip(&weights).map(|(x, w)| x * w).sum())
            .collect();
        space
            .element(values)
            .map_err(|_| Error::IsoCheckFailed("image does not vanish on sum of L(E_i)".into()))
    }

    /// Rank of the images of a basis of `V / Q·1` in `T^1(-R*)`.
    pub fn t1_iso_rank(&self) -> Result<usize> {
        let dd = self.toric.degree_data(&R_STAR)?;
        let space = t1_piece(&self.toric, &dd);
        let ss = self.polygon.summand_space();
        let rows: Vec<Vec<Rat>> = ss
            .quotient_basis()
            .iter()
            .map(|t| self.t1_iso(t).map(|x| space.coordinates(&x)))
            .collect::<Result<_>>()?;
        Ok(rank_of_rows(&rows, space.dim()))
    }

    /// `T^2(-kR*) = (M / span(∩_i E_i^{kR*}))^*` as a subspace of `N_Q`.
    pub fn t2_embedding(&self, k: i64) -> Result<T2Embedding> {
        if k < 2 {
            return Err(Error::KOutOfRange(k));
        }
        let dd = self.toric.degree_data(&Self::k_r_star(k))?;
        let hb = self.toric.hilbert();
        let common: Vec<usize> =
            (0..hb.len()).filter(|&v| dd.rays().iter().all(|s| s.contains(v))).collect();
        let rows: Vec<Vec<Rat>> =
            common.iter().map(|&v| hb.elements()[v].iter().map(|&x| rat(x)).collect()).collect();
        let span = Rref::of_rows(&rows, 3);
        let annihilator = span.kernel().basis;
        Ok(T2Embedding {
            k,
            intersection: common.iter().map(|&v| hb.elements()[v].0.clone()).collect(),
            contains_r_star: span.contains(&[rat(0), rat(0), rat(1)]),
            annihilator,
        })
    }

    /// Maps a class in `H^1(L(E^{2R*})^*)` to the vector `n` in `N_Q` with
    /// `<n, .>` the corresponding functional on `M`.
    pub fn bridge(&self, dd: &DegreeData, x: &T2Element) -> Result<Vec<Rat>> {
        let t = &self.toric;
        let cochain = zigzag_bridge(t, dd, x)?;
        let hb = t.hilbert();
        let n = t.num_rays();
        let mut out = vec![Rat::zero(); 3];
        for (e, &(i, j)) in t.faces2().iter().enumerate() {
            let sign = if j == i + 1 {
                rat(1)
            } else if i == 0 && j == n - 1 {
                rat(-1)
            } else {
                return Err(Error::Unsupported(format!("unexpected 2-face ({i}, {j})")));
            };
            let pivots = dd.faces2()[e].span_pivots();
            if pivots.len() != 3 {
                return Err(Error::Unsupported(format!(
                    "span of the elements on face ({i}, {j}) is not all of M"
                )));
            }
            let m = RatMatrix::from_rows(
                pivots.iter().map(|&p| hb.elements()[p].iter().map(|&x| rat(x)).collect()).collect(),
                3,
            );
            let lambda = solve_rational(&m, &cochain.components[e]).expect("pivot elements are independent");
            for (o, l) in out.iter_mut().zip(lambda) {
                *o += &sign * l;
            }
        }
        Ok(out)
    }

    /// Full comparison of the polygon formulas with the general machinery.
    pub fn cross_validate(&self, kmax: i64) -> Result<CrossValidation> {
        let t = &self.toric;
        let mut dims = Vec::new();
        for k in 2..=kmax {
            let dd = t.degree_data(&Self::k_r_star(k))?;
            let machinery = t2_piece(t, &dd).dim();
            let span = span_complex_dims(t, &dd).h2;
            let embedding = self.t2_embedding(k)?.dim();
            let closed_form = self.polygon.t2_dim_closed_form(k)?;
            dims.push(DimComparison { k, closed_form, machinery, span, embedding });
        }

        let dd1 = t.degree_data(&R_STAR)?;
        let t1_dim = t1_piece(t, &dd1).dim();
        let ss = self.polygon.summand_space();
        let iso_rank = self.t1_iso_rank()?;

        let mut cups = Vec::new();
        let mut bridge_injective = true;
        if t.t2_is_exact() && self.polygon.has_primitive_edges() {
            let dd2 = t.degree_data(&Self::k_r_star(2))?;
            let sp2 = t2_piece(t, &dd2);
            let images: Vec<Vec<Rat>> =
                sp2.basis().iter().map(|b| self.bridge(&dd2, b)).collect::<Result<_>>()?;
            bridge_injective = rank_of_rows(&images, 3) == sp2.dim();
            let q = ss.quotient_basis();
            for a in 0..q.len() {
                for b in a..q.len() {
                    let general = cup(t, &self.t1_iso(&q[a])?, &self.t1_iso(&q[b])?)?;
                    let bridged = self.bridge(&dd2, &general)?;
                    let [x, y] = self.polygon.cup_closed_form(&q[a], &q[b])?;
                    let closed = vec![x, y, Rat::zero()];
                    cups.push(CupComparison { s: a, t: b, matches: bridged == closed, bridged, closed_form: closed });
                }
            }
        }
        let report = CrossValidation {
            n: self.polygon.len(),
            summand_dim: ss.dim(),
            t1_dim,
            iso_rank,
            dims,
            cups,
            bridge_injective,
            all_match: false,
        };
        Ok(CrossValidation { all_match: report.compute_all_match(), ..report })
    }
}

/// `T^2(-kR*)` as the annihilator of `span(∩_i E_i^{kR*})` in `N_Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T2Embedding {
    pub k: i64,
    pub intersection: Vec<Vec<i64>>,
    pub contains_r_star: bool,
    pub annihilator: Vec<Vec<Rat>>,
}

impl T2Embedding {
    pub fn dim(&self) -> usize {
        self.annihilator.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimComparison {
    pub k: i64,
    pub closed_form: usize,
    pub machinery: usize,
    pub span: usize,
    pub embedding: usize,
}

impl DimComparison {
    pub fn matches(&self) -> bool {
        self.closed_form == self.machinery && self.machinery == self.span && self.span == self.embedding
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupComparison {
    pub s: usize,
    pub t: usize,
    pub bridged: Vec<Rat>,
    pub closed_form: Vec<Rat>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossValidation {
    pub n: usize,
    pub summand_dim: usize,
    pub t1_dim: usize,
    pub iso_rank: usize,
    pub dims: Vec<DimComparison>,
    pub cups: Vec<CupComparison>,
    pub bridge_injective: bool,
    pub all_match: bool,
}

impl CrossValidation {
    fn compute_all_match(&self) -> bool {
        self.summand_dim + 2 == self.n
            && self.t1_dim + 3 == self.n
            && self.iso_rank == self.t1_dim
            && self.dims.iter().all(DimComparison::matches)
            && self.cups.iter().all(|c| c.matches)
            && self.bridge_injective
    }
}
