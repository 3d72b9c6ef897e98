//! One function per subcommand, each producing the `result` part of a report.

use serde_json::{json, Value};
use toric_t2::complex::{degree_scan, l_complex_dims, t1_piece, t2_piece, Scan};
use toric_t2::gorenstein::{GorensteinContext, LatticePolygon, R_STAR};
use toric_t2::{cup, Error, Result, T2Label, Toric};

use crate::io::{int_json, ints_json, rats_json};

pub fn hilbert(t: &Toric) -> Value {
    let cone = t.cone();
    let vecs = |v: &[Vec<i64>]| Value::Array(v.iter().map(|x| ints_json(x)).collect());
    let gens: Vec<Vec<i64>> = cone.generators().iter().map(|g| g.0.clone()).collect();
    let dropped: Vec<Vec<i64>> = cone.dropped_generators().iter().map(|g| g.0.clone()).collect();
    let normals: Vec<Vec<i64>> = cone.facet_normals().iter().map(|g| g.0.clone()).collect();
    let hb: Vec<Vec<i64>> = t.hilbert().elements().iter().map(|e| e.0.clone()).collect();
    json!({
        "rank": t.rank(),
        "generators": vecs(&gens),
        "dropped_generators": vecs(&dropped),
        "facet_normals": vecs(&normals),
        "E": vecs(&hb),
        "count": hb.len(),
    })
}

pub fn t1(t: &Toric, degree: &[i64]) -> Result<Value> {
    let dd = t.degree_data(degree)?;
    let sp = t1_piece(t, &dd);
    Ok(json!({
        "degree": ints_json(degree),
        "heights": ints_json(dd.heights()),
        "t1_dim": sp.dim(),
        "basis": sp.basis().iter().map(|b| rats_json(&b.values)).collect::<Vec<_>>(),
    }))
}

fn t2_field(label: T2Label, h1: usize) -> Value {
    match label {
        T2Label::Exact => json!(h1),
        T2Label::Subspace => json!({ "at_least": h1 }),
        T2Label::NotApplicable => json!(label.to_string()),
    }
}

pub fn t2(t: &Toric, degree: &[i64]) -> Result<Value> {
    let dd = t.degree_data(degree)?;
    let dims = l_complex_dims(t, &dd);
    let label = T2Label::for_toric(t);
    let mut out = json!({
        "degree": ints_json(degree),
        "h1_dim": dims.h1,
        "t2_dim": t2_field(label, dims.h1),
        "t2_is_exact": label == T2Label::Exact,
        "label": label.to_string(),
    });
    if label != T2Label::NotApplicable {
        let sp = t2_piece(t, &dd);
        out["basis"] = sp
            .basis()
            .iter()
            .map(|b| Value::Array(b.components.iter().map(|c| rats_json(c)).collect()))
            .collect();
    }
    Ok(out)
}

pub fn scan_json(s: &Scan) -> Value {
    json!({
        "bound": s.bound,
        "points": s.points,
        // Nonzero pieces outside the box are not ruled out.
        "exhaustive": false,
        "label": s.label.to_string(),
        "total_t1": s.total_t1(),
        "total_h1": s.total_t2(),
        "entries": s.entries.iter().map(|(r, d)| json!({
            "degree": ints_json(r),
            "t1_dim": d.0,
            "h1_dim": d.1,
        })).collect::<Vec<_>>(),
    })
}

pub fn scan(t: &Toric, bound: i64) -> Result<Value> {
    Ok(scan_json(&degree_scan(t, bound)?))
}

/// Products of basis elements of `T^1(-R)` and `T^1(-S)` in coordinates of
/// the basis of `T^2(-R-S)`; all pairs unless `only` picks one. For cones over
/// polygons with `R = S = R*` the products are also mapped into `N`.
pub fn cup_table(t: &Toric, r: &[i64], s: &[i64], only: Option<(usize, usize)>) -> Result<Value> {
    let (dr, ds) = (t.degree_data(r)?, t.degree_data(s)?);
    let rs: Vec<i64> = r.iter().zip(s).map(|(a, b)| a + b).collect();
    let drs = t.degree_data(&rs)?;
    let (a, b, c) = (t1_piece(t, &dr), t1_piece(t, &ds), t2_piece(t, &drs));
    let pairs: Vec<(usize, usize)> = match only {
        Some((i, j)) => {
            for (k, len) in [(i, a.dim()), (j, b.dim())] {
                if k >= len {
                    return Err(Error::IndexOutOfRange { index: k, len });
                }
            }
            vec![(i, j)]
        }
        None => (0..a.dim()).flat_map(|i| (0..b.dim()).map(move |j| (i, j))).collect(),
    };
    let gorenstein = gorenstein_context(t).filter(|_| r == R_STAR && s == R_STAR);
    let mut table = Vec::new();
    for (i, j) in pairs {
        let z = cup(t, &a.basis()[i], &b.basis()[j])?;
        let mut entry = json!({
            "phi_index": i,
            "psi_index": j,
            "coordinates": rats_json(&c.coordinates(&z)),
            "canonical_form": z.components.iter().map(|x| rats_json(x)).collect::<Vec<_>>(),
        });
        if let Some(ctx) = &gorenstein {
            entry["bridged"] = rats_json(&ctx.bridge(&drs, &z)?);
        }
        table.push(entry);
    }
    Ok(json!({
        "degree_r": ints_json(r),
        "degree_s": ints_json(s),
        "t1_dims": [a.dim(), b.dim()],
        "t2_dim": c.dim(),
        "table": table,
    }))
}

/// The polygon context when every generator sits at height one in the last coordinate.
fn gorenstein_context(t: &Toric) -> Option<GorensteinContext> {
    let gens = t.cone().generators();
    if t.rank() != 3 || gens.iter().any(|g| g[2] != 1) {
        return None;
    }
    let vertices: Vec<[i64; 2]> = gens.iter().map(|g| [g[0], g[1]]).collect();
    let p = LatticePolygon::with_nonprimitive_edges(vertices).ok()?;
    GorensteinContext::new(p).ok()
}

/// Closed-form data for the cone over a polygon; with `verify`, also the
/// comparison against the general machinery.
pub fn gorenstein(p: &LatticePolygon, kmax: i64, verify: bool) -> Result<(Value, Option<bool>)> {
    let (k1, k2) = p.k_thresholds();
    let ctx = GorensteinContext::new(p.clone())?;
    let t = ctx.toric();
    let dd = t.degree_data(&R_STAR)?;
    let t1_dim = t1_piece(t, &dd).dim();
    let mut t2_dims = serde_json::Map::new();
    for k in 2..=kmax {
        t2_dims.insert(k.to_string(), json!(p.t2_dim_closed_form(k)?));
    }
    let ss = p.summand_space();
    let q = ss.quotient_basis();
    let mut cup_table = Vec::new();
    for a in 0..q.len() {
        for b in a..q.len() {
            cup_table.push(json!({ "s": a, "t": b, "value": rats_json(&p.cup_closed_form(&q[a], &q[b])?) }));
        }
    }
    let versal: Vec<Value> = p
        .versal_equations(kmax.max(1) as u32)
        .iter()
        .map(|e| json!({ "k": e.power, "component": e.component, "coefficients": ints_json(&e.coefficients), "text": e.to_string() }))
        .collect();
    let mut out = json!({
        "N": p.len(),
        "primitive_edges": p.has_primitive_edges(),
        "t1_dim": t1_dim,
        "summand_dim": ss.dim(),
        "summand_quotient_basis": q.iter().map(|v| rats_json(v)).collect::<Vec<_>>(),
        "k1": int_json(k1),
        "k2": int_json(k2),
        "t2_dims": t2_dims,
        "r_star_in_hilbert_basis": ctx.r_star_in_hilbert_basis(),
        "interior_hilbert_basis_elements": ctx.interior_elements().iter().map(|e| ints_json(e)).collect::<Vec<_>>(),
        "cup_table": cup_table,
        "versal_equations": versal,
    });
    let mut verified = None;
    if verify {
        let report = ctx.cross_validate(kmax)?;
        verified = Some(report.all_match);
        out["verify"] = json!({
            "all_match": report.all_match,
            "t1_dim": report.t1_dim,
            "iso_rank": report.iso_rank,
            "bridge_injective": report.bridge_injective,
            "dims": report.dims.iter().map(|d| json!({
                "k": d.k,
                "closed_form": d.closed_form,
                "machinery": d.machinery,
                "span_complex": d.span,
                "embedding": d.embedding,
                "match": d.matches(),
            })).collect::<Vec<_>>(),
            "cups": report.cups.iter().map(|c| json!({
                "s": c.s,
                "t": c.t,
                "bridged": rats_json(&c.bridged),
                "closed_form": rats_json(&c.closed_form),
                "match": c.matches,
            })).collect::<Vec<_>>(),
        });
    }
    Ok((out, verified))
}

#[cfg(test)]
mod tests {
    use super::*;
    use toric_t2::fixtures;

    #[test]
    fn t1_on_square() {
        let v = t1(&fixtures::square(), &[0, 0, 1]).unwrap();
        assert_eq!(v["t1_dim"], json!(1));
    }

    #[test]
    fn t2_on_two_dimensional_cone() {
        let v = t2(&fixtures::a3(), &[1, 0]).unwrap();
        assert_eq!(v["h1_dim"], json!(0));
        assert!(v["t2_dim"].as_str().unwrap().contains("not applicable"));
        assert_eq!(v["t2_is_exact"], json!(false));
    }

    #[test]
    fn hexagon_report() {
        let p = LatticePolygon::new(fixtures::HEXAGON.to_vec()).unwrap();
        let (v, ok) = gorenstein(&p, 4, true).unwrap();
        assert_eq!(ok, Some(true));
        assert_eq!(v["N"], json!(6));
        assert_eq!(v["t2_dims"]["2"], json!(2));
        assert_eq!(v["verify"]["all_match"], json!(true));
    }

    #[test]
    fn square_cup_table() {
        let v = cup_table(&fixtures::square(), &[0, 0, 1], &[0, 0, 1], None).unwrap();
        assert_eq!(v["t2_dim"], json!(0));
        assert_eq!(v["table"].as_array().unwrap().len(), 1);
        assert_eq!(v["table"][0]["bridged"], json!([0, 0, 0]));
        assert!(cup_table(&fixtures::square(), &[0, 0, 1], &[0, 0, 1], Some((1, 0))).is_err());
    }
}
