//! The acceptance suite run by `verify-all`. Random trials use fixed seeds.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use toric_t2::complex::{
    degree_scan, element_homology, span_complex_dims, t1_piece, t1_t2_via_span_complex, t2_piece, T1Space,
    DEFAULT_SCAN_BOUND,
};
use toric_t2::cup::{complement_dim, extend_t1, RelationChoice, TFunction};
use toric_t2::gorenstein::{GorensteinContext, LatticePolygon, R_STAR};
use toric_t2::linalg::rat;
use toric_t2::{cup, cup_with, fixtures, CupOptions, Error, Rat, T1Element, T2Label, Toric};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl Serialize, actual: impl Serialize) -> Check {
        let expected = serde_json::to_value(expected).unwrap();
        let actual = serde_json::to_value(actual).unwrap();
        let passed = expected == actual;
        Check { name: name.into(), expected, actual, passed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Criterion {
    fn new(id: u32, title: &'static str, checks: Vec<Check>) -> Criterion {
        Criterion { id, title, passed: checks.iter().all(|c| c.passed), checks }
    }

    /// Criterion that could not be evaluated at all.
    fn errored(id: u32, title: &'static str, e: Error) -> Criterion {
        Criterion::new(id, title, vec![Check::new("evaluation", "ok", e.to_string())])
    }

    pub fn line(&self) -> String {
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let verdict = if self.passed { "PASS".to_string() } else { format!("FAIL ({failed} of {} checks)", self.checks.len()) };
        format!("criterion {:>2}: {verdict} - {}", self.id, self.title)
    }
}

fn wrap(id: u32, title: &'static str, f: impl FnOnce() -> toric_t2::Result<Vec<Check>>) -> Criterion {
    match f() {
        Ok(checks) => Criterion::new(id, title, checks),
        Err(e) => Criterion::errored(id, title, e),
    }
}

fn context(vertices: &[[i64; 2]]) -> toric_t2::Result<GorensteinContext> {
    GorensteinContext::new(LatticePolygon::with_nonprimitive_edges(vertices.to_vec())?)
}

fn r_star(k: i64) -> Vec<i64> {
    vec![0, 0, k]
}

pub const POLYGON_FIXTURES: [(&str, &[[i64; 2]]); 4] = [
    ("triangle", fixtures::TRIANGLE),
    ("square", fixtures::SQUARE),
    ("hexagon", fixtures::HEXAGON),
    ("rectangle 1x3", fixtures::RECTANGLE_1X3),
];

pub fn criterion_1() -> Criterion {
    wrap(1, "Gorenstein T1(-R*) has dimension N-3", || {
        let mut checks = Vec::new();
        for (name, v) in POLYGON_FIXTURES {
            let ctx = context(v)?;
            let dd = ctx.toric().degree_data(&R_STAR)?;
            checks.push(Check::new(format!("{name}: dim T1(-R*)"), v.len() - 3, t1_piece(ctx.toric(), &dd).dim()));
        }
        Ok(checks)
    })
}

/// `(k1, k2)`, closed-form dims and machinery dims for `k = 2..=kmax`.
fn threshold_checks(name: &str, vertices: &[[i64; 2]], thresholds: (i64, i64), dims: &[usize]) -> toric_t2::Result<Vec<Check>> {
    let ctx = context(vertices)?;
    let p = ctx.polygon();
    let mut checks = vec![Check::new(format!("{name}: (k1, k2)"), thresholds, p.k_thresholds())];
    for (k, &d) in (2i64..).zip(dims) {
        let closed = p.t2_dim_closed_form(k)?;
        let dd = ctx.toric().degree_data(&r_star(k))?;
        let machinery = t2_piece(ctx.toric(), &dd).dim();
        checks.push(Check::new(format!("{name}: closed form dim T2(-{k}R*)"), d, closed));
        checks.push(Check::new(format!("{name}: machinery dim T2(-{k}R*)"), d, machinery));
    }
    Ok(checks)
}

pub fn criterion_2_hexagon() -> toric_t2::Result<Vec<Check>> {
    threshold_checks("hexagon", fixtures::HEXAGON, (2, 2), &[2, 0, 0, 0, 0])
}

pub fn criterion_2_rectangle() -> toric_t2::Result<Vec<Check>> {
    threshold_checks("rectangle 1x3", fixtures::RECTANGLE_1X3, (1, 3), &[1, 1, 0])
}

pub fn criterion_2() -> Criterion {
    wrap(2, "T2(-kR*) dimensions from the diameter thresholds", || {
        let mut checks = criterion_2_hexagon()?;
        checks.extend(criterion_2_rectangle()?);
        Ok(checks)
    })
}

pub fn criterion_3() -> Criterion {
    wrap(3, "square and triangle cones have T2(-kR*) = 0", || {
        let mut checks = Vec::new();
        for (name, v) in [("square", fixtures::SQUARE), ("triangle", fixtures::TRIANGLE)] {
            let ctx = context(v)?;
            for k in 2..=6 {
                let dd = ctx.toric().degree_data(&r_star(k))?;
                checks.push(Check::new(format!("{name}: machinery k={k}"), 0, t2_piece(ctx.toric(), &dd).dim()));
                checks.push(Check::new(format!("{name}: span complex k={k}"), 0, span_complex_dims(ctx.toric(), &dd).h2));
                checks.push(Check::new(format!("{name}: closed form k={k}"), 0, ctx.polygon().t2_dim_closed_form(k)?));
            }
        }
        Ok(checks)
    })
}

pub fn criterion_4() -> Criterion {
    wrap(4, "hexagon cup product equals the closed form on all basis pairs", || {
        let report = context(fixtures::HEXAGON)?.cross_validate(2)?;
        let mut checks = vec![
            Check::new("number of basis pairs", 6, report.cups.len()),
            Check::new("bridge is injective on T2(-2R*)", true, report.bridge_injective),
        ];
        for c in &report.cups {
            let show = |v: &[Rat]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
            checks.push(Check::new(format!("pair ({}, {})", c.s, c.t), show(&c.closed_form), show(&c.bridged)));
        }
        Ok(checks)
    })
}

pub fn criterion_5() -> Criterion {
    wrap(5, "quadric cone: one-dimensional T1, no T2, trivial cup", || {
        let t = fixtures::square();
        let scan = degree_scan(&t, DEFAULT_SCAN_BOUND)?;
        let mut checks = vec![
            Check::new("total dim T1 in scan", 1, scan.total_t1()),
            Check::new("total dim T2 in scan", 0, scan.total_t2()),
        ];
        let (degree, _) = scan.entries.iter().find(|(_, d)| d.0 > 0).ok_or(Error::Unsupported("no T1 found".into()))?;
        let dd = t.degree_data(degree)?;
        let sp = t1_piece(&t, &dd);
        let x = &sp.basis()[0];
        checks.push(Check::new("cup of the generator with itself is zero", true, cup(&t, x, x)?.is_zero()));
        Ok(checks)
    })
}

/// Convex hull of random points in `[0, size]^2`, counterclockwise, strictly convex.
pub fn random_polygon(rng: &mut ChaCha8Rng, size: i64) -> Vec<[i64; 2]> {
    loop {
        let mut pts: Vec<[i64; 2]> =
            (0..rng.gen_range(3..=7)).map(|_| [rng.gen_range(0..=size), rng.gen_range(0..=size)]).collect();
        pts.sort();
        pts.dedup();
        let hull = convex_hull(&pts);
        if hull.len() >= 3 {
            return hull;
        }
    }
}

fn convex_hull(pts: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let turn = |o: [i64; 2], a: [i64; 2], b: [i64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut lower: Vec<[i64; 2]> = Vec::new();
    for &p in pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[i64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn random_degree(rng: &mut ChaCha8Rng) -> Vec<i64> {
    vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-1..=3)]
}

pub fn criterion_6() -> Criterion {
    wrap(6, "L(E)-dual and span(E)-dual complexes agree on random polygon cones", || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut checks = Vec::new();
        for trial in 0..10 {
            let q = random_polygon(&mut rng, 3);
            let t = Toric::from_generators(3, &fixtures::cone_over(&q))?;
            let r = random_degree(&mut rng);
            let rep = t1_t2_via_span_complex(&t, &t.degree_data(&r)?);
            checks.push(Check::new(
                format!("trial {trial}: polygon {q:?}, degree {r:?}"),
                (rep.t1_l, rep.t2_l),
                (rep.t1_span, rep.t2_span),
            ));
        }
        Ok(checks)
    })
}

fn random_cone(rng: &mut ChaCha8Rng) -> Toric {
    loop {
        let gens: Vec<Vec<i64>> = if rng.gen_bool(0.5) {
            fixtures::cone_over(&random_polygon(rng, 3))
        } else {
            (0..rng.gen_range(3..=5))
                .map(|_| vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(1..=2)])
                .collect()
        };
        if let Ok(t) = Toric::from_generators(3, &gens) {
            if t.hilbert().len() <= 40 {
                return t;
            }
        }
    }
}

pub fn criterion_7() -> Criterion {
    wrap(7, "per-element summand complexes are exact in the middle", || {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checks = Vec::new();
        for trial in 0..10 {
            let t = random_cone(&mut rng);
            let r = random_degree(&mut rng);
            let dd = t.degree_data(&r)?;
            let bad: Vec<usize> = (0..t.hilbert().len()).filter(|&v| element_homology(&t, &dd, v)[1] != 0).collect();
            let gens: Vec<Vec<i64>> = t.cone().generators().iter().map(|g| g.0.clone()).collect();
            checks.push(Check::new(
                format!("trial {trial}: generators {gens:?}, degree {r:?}: elements with middle homology"),
                Vec::<usize>::new(),
                bad,
            ));
        }
        Ok(checks)
    })
}

fn random_t1(rng: &mut ChaCha8Rng, sp: &T1Space) -> T1Element {
    loop {
        let c: Vec<Rat> = (0..sp.dim()).map(|_| rat(rng.gen_range(-2..=2))).collect();
        if c.iter().any(|x| *x != rat(0)) {
            return sp.combination(&c);
        }
    }
}

fn cocycle_checks(rng: &mut ChaCha8Rng, t: &Toric, trials: usize) -> toric_t2::Result<Check> {
    let hb = t.hilbert();
    let dd = t.degree_data(&R_STAR)?;
    let sp = t1_piece(t, &dd);
    let mut failures = 0usize;
    for _ in 0..trials {
        let f = extend_t1(t, &dd, &random_t1(rng, &sp), None)?;
        let g = extend_t1(t, &dd, &random_t1(rng, &sp), None)?;
        let tf = TFunction::new(hb.section(), f, g, &R_STAR, &R_STAR);
        let alpha: Vec<i64> = (0..hb.len()).map(|_| rng.gen_range(0..=2)).collect();
        let image = hb.pi(&alpha)?.0;
        let mut lifts = Vec::new();
        for _ in 0..2 {
            let mut order: Vec<usize> = (0..hb.len()).collect();
            order.shuffle(rng);
            lifts.push(hb.section_with_order(order)?.phi(&image));
        }
        let (beta, gamma) = (&lifts[0], &lifts[1]);
        let lhs = tf.t_pair(beta, gamma, &image) - tf.t_pair(&alpha, gamma, &image) + tf.t_pair(&alpha, beta, &image);
        failures += usize::from(lhs != rat(0));
    }
    Ok(Check::new(format!("cocycle identity on {trials} random triples: failures"), 0, failures))
}

fn invariance_check(
    rng: &mut ChaCha8Rng,
    t: &Toric,
    name: &str,
    trials: usize,
    mut options: impl FnMut(&mut ChaCha8Rng) -> CupOptions,
) -> toric_t2::Result<Check> {
    let dd = t.degree_data(&R_STAR)?;
    let sp = t1_piece(t, &dd);
    let mut failures = 0usize;
    for _ in 0..trials {
        let (x, y) = (random_t1(rng, &sp), random_t1(rng, &sp));
        let base = cup(t, &x, &y)?;
        let opts = options(rng);
        failures += usize::from(cup_with(t, &x, &y, &opts)? != base);
    }
    Ok(Check::new(format!("{name} on {trials} random trials: failures"), 0, failures))
}

pub fn criterion_8() -> Criterion {
    wrap(8, "cup product is independent of the choices made", || {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let t = fixtures::hexagon();
        let n = t.hilbert().len();
        let extra = complement_dim(&t, &t.degree_data(&R_STAR)?);
        let mut checks = vec![cocycle_checks(&mut rng, &t, 100)?];
        checks.push(invariance_check(&mut rng, &t, "perturbed section", 20, |rng| {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            CupOptions { section_order: Some(order), ..Default::default() }
        })?);
        checks.push(invariance_check(&mut rng, &t, "alternative decompositions", 20, |rng| CupOptions {
            relations: RelationChoice { anchor_offset: rng.gen_range(0..4), shift_corrections: rng.gen_bool(0.5) },
            regroup: rng.gen_bool(0.5),
            ..Default::default()
        })?);
        checks.push(invariance_check(&mut rng, &t, "alternative extensions", 20, |rng| {
            let mut values = || (0..extra).map(|_| rat(rng.gen_range(-3..=3))).collect::<Vec<_>>();
            CupOptions { phi_complement: Some(values()), psi_complement: Some(values()), ..Default::default() }
        })?);
        Ok(checks)
    })
}

pub fn criterion_9() -> Criterion {
    wrap(9, "two-dimensional cone: H1 = 0 flagged not applicable, T1 total 3", || {
        let scan = degree_scan(&fixtures::a3(), DEFAULT_SCAN_BOUND)?;
        Ok(vec![
            Check::new("label", T2Label::NotApplicable.to_string(), scan.label.to_string()),
            Check::new("total H1 in scan", 0, scan.total_t2()),
            Check::new("total dim T1 in scan", 3, scan.total_t1()),
        ])
    })
}

/// Criteria 1 to 9.
pub fn computational_criteria() -> Vec<Criterion> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ]
}

/// Criterion 10 in process: a second evaluation serializes to the same bytes.
pub fn criterion_10(first: &[Criterion]) -> Criterion {
    let a = serde_json::to_string(first).unwrap();
    let b = serde_json::to_string(&computational_criteria()).unwrap();
    Criterion::new(
        10,
        "repeated evaluation is byte-identical",
        vec![Check::new("second run equals first run", true, a == b)],
    )
}

pub fn run_all() -> Vec<Criterion> {
    let mut all = computational_criteria();
    let c10 = criterion_10(&all);
    all.push(c10);
    all
}

pub fn summary_json(all: &[Criterion]) -> Value {
    json!({
        "all_passed": all.iter().all(|c| c.passed),
        "lines": all.iter().map(Criterion::line).collect::<Vec<_>>(),
        "criteria": all,
    })
}
