use criterion::{black_box, criterion_group, criterion_main, Criterion};
use toric_t2::complex::{degree_scan, t1_piece, t2_piece};
use toric_t2::gorenstein::{GorensteinContext, LatticePolygon};
use toric_t2::{cup, fixtures, Cone, HilbertBasis, Toric};

fn hilbert(c: &mut Criterion) {
    let hexagon = Cone::new(3, &fixtures::cone_over(fixtures::HEXAGON)).unwrap();
    let wide = Cone::new(3, &[vec![0, 0, 1], vec![7, 0, 1], vec![0, 5, 1]]).unwrap();
    c.bench_function("hilbert basis, hexagon", |b| b.iter(|| HilbertBasis::compute(&hexagon.dual_cone().unwrap()).unwrap()));
    c.bench_function("hilbert basis, wide triangle", |b| b.iter(|| HilbertBasis::compute(&wide.dual_cone().unwrap()).unwrap()));
}

fn pieces(c: &mut Criterion) {
    let t = fixtures::hexagon();
    c.bench_function("t2 piece, hexagon at -2R*", |b| {
        b.iter(|| {
            let dd = t.degree_data(black_box(&[0, 0, 2])).unwrap();
            t2_piece(&t, &dd).dim()
        })
    });
    c.bench_function("degree scan, hexagon", |b| b.iter(|| degree_scan(&t, 1).unwrap().total_t1()));
}

fn cup_product(c: &mut Criterion) {
    let t: Toric = fixtures::hexagon();
    let dd = t.degree_data(&[0, 0, 1]).unwrap();
    let sp = t1_piece(&t, &dd);
    let (x, y) = (sp.basis()[0].clone(), sp.basis()[2].clone());
    c.bench_function("cup, hexagon basis pair", |b| b.iter(|| cup(&t, &x, &y).unwrap()));
    let ctx = GorensteinContext::new(LatticePolygon::new(fixtures::HEXAGON.to_vec()).unwrap()).unwrap();
    c.bench_function("cross validation, hexagon", |b| b.iter(|| ctx.cross_validate(3).unwrap().all_match));
}

criterion_group!(benches, hilbert, pieces, cup_product);
criterion_main!(benches);
