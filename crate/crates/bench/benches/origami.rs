use criterion::{criterion_group, criterion_main, Criterion};
use cyldiag::{decompose, minus_id_involutions, realize, spin_parity, CylinderDiagram};

fn bench(c: &mut Criterion) {
    let d: CylinderDiagram = "(3,5)-(2,4);(4,6)-(5,1);(1,2)-(6,3)".parse().unwrap();
    let o = realize(&d, None).unwrap();
    c.bench_function("realize", |b| b.iter(|| realize(&d, None).unwrap()));
    c.bench_function("decompose (1,1)", |b| b.iter(|| decompose(&o, (1, 1)).unwrap()));
    c.bench_function("minus-id involutions", |b| b.iter(|| minus_id_involutions(&o).unwrap()));
    c.bench_function("spin parity", |b| b.iter(|| spin_parity(&o).unwrap()));
}

criterion_group!(benches, bench);
criterion_main!(benches);
