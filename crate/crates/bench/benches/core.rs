use criterion::{black_box, criterion_group, criterion_main, Criterion};
use recsat::hahn::compare_series;
use recsat::numbers::rational::rat;
use recsat::{doag_qe, parse_formula, parse_series, parse_type_file, realize_type, valuation_basis, Budgets, Mode, RealAlgebraic};

fn algebraic(c: &mut Criterion) {
    let r2 = RealAlgebraic::sqrt(&rat(2, 1)).unwrap();
    let r3 = RealAlgebraic::sqrt(&rat(3, 1)).unwrap();
    let shifted = r2.add(&RealAlgebraic::from_rational(&rat(1, 3)));
    c.bench_function("sqrt2 + sqrt3", |b| b.iter(|| black_box(&r2).add(black_box(&r3))));
    c.bench_function("(sqrt2 + 1/3) * sqrt2", |b| b.iter(|| black_box(&shifted).mul(black_box(&r2))));
    c.bench_function("sqrt2 vs sqrt3", |b| b.iter(|| black_box(&r2) < black_box(&r3)));
}

fn series(c: &mut Criterion) {
    let x = parse_series("1/3 + alg[-2,0,1;1,2]*t - 2*t^(3/2) + t^2", 1).unwrap();
    let y = parse_series("1/3 + alg[-2,0,1;1,2]*t - 2*t^(3/2) + 2*t^2", 1).unwrap();
    c.bench_function("compare series", |b| b.iter(|| compare_series(black_box(&x), black_box(&y)).unwrap()));
    let gens: Vec<_> = ["t + t^2", "t", "alg[-2,0,1;1,2]*t + t^3", "1 + t^(1/2)"].iter().map(|g| parse_series(g, 1).unwrap()).collect();
    c.bench_function("valuation basis of 4", |b| b.iter(|| valuation_basis(black_box(&gens), 64).unwrap()));
}

fn qe(c: &mut Criterion) {
    let f = parse_formula("exists x (a < x and x < b and not x = c and 2*x < a + c)").unwrap();
    c.bench_function("doag_qe", |b| b.iter(|| doag_qe(black_box(&f)).unwrap()));
}

fn realize(c: &mut Criterion) {
    let mut group = c.benchmark_group("realize");
    group.sample_size(10);
    let residue = parse_type_file("param g = t\ntarget alg[-2,0,1;1,2]*t\n", 1).unwrap();
    group.bench_function("residue sqrt2 t", |b| b.iter(|| realize_type(black_box(&residue), Mode::Group, &Budgets::default(), 1).unwrap()));
    let beta = parse_type_file("param g = t\nparam h = t^2\ngenerator beta g h\n", 1).unwrap();
    let budgets = Budgets { prefix: 40, ..Budgets::default() };
    group.bench_function("beta prefix 40", |b| b.iter(|| realize_type(black_box(&beta), Mode::Group, &budgets, 1).unwrap()));
    group.finish();
}

criterion_group!(benches, algebraic, series, qe, realize);
criterion_main!(benches);
