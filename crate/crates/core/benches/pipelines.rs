use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclic_homology::gamma::{hc_assemble, hh_assemble, GammaFormsComplex};
use cyclic_homology::model::Presentation;
use cyclic_homology::oracle::{hh_oracle, FiniteAlgebra};
use cyclic_homology::GroundRing;
use rayon::ThreadPoolBuilder;

fn fixtures() -> Vec<(&'static str, Presentation)> {
    let z = GroundRing::Integers;
    vec![
        (
            "x2y2",
            Presentation::parse(z.clone(), &["x", "y"], &["x^2", "y^2"]).unwrap(),
        ),
        ("x3", Presentation::parse(z.clone(), &["x"], &["x^3"]).unwrap()),
        ("z5", Presentation::parse(z, &[], &["5"]).unwrap()),
    ]
}

fn pools(c: &mut Criterion) {
    let single = ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let default = ThreadPoolBuilder::new().build().unwrap();
    let pools = [("1-thread", &single), ("default", &default)];

    let mut group = c.benchmark_group("gamma_forms");
    group.sample_size(20);
    for (name, p) in fixtures() {
        for (label, pool) in pools {
            group.bench_with_input(BenchmarkId::new(label, name), &p, |b, p| {
                b.iter(|| {
                    pool.install(|| {
                        let g = GammaFormsComplex::for_presentation(p, 5).unwrap();
                        (hh_assemble(&g, 5).unwrap(), hc_assemble(&g, 4).unwrap())
                    })
                })
            });
        }
    }
    group.finish();

    let mut group = c.benchmark_group("bar_oracle");
    group.sample_size(10);
    for (name, p) in fixtures().into_iter().filter(|(n, _)| *n != "z5") {
        let alg = FiniteAlgebra::from_presentation(&p).unwrap();
        for (label, pool) in pools {
            group.bench_with_input(BenchmarkId::new(label, name), &alg, |b, alg| {
                b.iter(|| pool.install(|| hh_oracle(alg, 3).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, pools);
criterion_main!(benches);
