use criterion::{criterion_group, criterion_main, Criterion};

use qflag_bench::bench_flags;
use qflag_core::{buchberger, GbConfig, Presentation, QuantumRing};

fn groebner(c: &mut Criterion) {
    let cfg = GbConfig::default();
    for f in bench_flags() {
        for eq in [false, true] {
            let pres = Presentation::new(&f, eq);
            let label = format!("groebner {f}{}", if eq { " eq" } else { "" });
            c.bench_function(&label, |b| b.iter(|| buchberger(&pres, &cfg).unwrap()));
        }
    }
}

fn pairing(c: &mut Criterion) {
    let cfg = GbConfig::default();
    for f in bench_flags().into_iter().take(4) {
        c.bench_function(&format!("pairing table {f}"), |b| {
            b.iter(|| QuantumRing::new(&f, false, &cfg).unwrap().pairing_table().unwrap())
        });
    }
}

fn products(c: &mut Criterion) {
    let ring = QuantumRing::new(&bench_flags()[5], false, &GbConfig::default()).unwrap();
    let a = ring.parse("c[0][1]^3*c[1][1]^2 + c[2][1]").unwrap();
    c.bench_function("normal form F_{1,2,3,4}", |b| b.iter(|| ring.nf(&(&a * &a))));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = groebner, pairing, products
}
criterion_main!(benches);
