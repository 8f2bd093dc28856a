use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use efc_core::efield::{forge, hrushovski_check, kummer_degree, EFieldPresentation, PresentationFile, Step};
use efc_core::poly::{buchberger, parse_poly, vars_from, MonomialOrder, Poly};
use efc_core::schanuel::{sc_screen, ExpSystem};
use efc_core::zform::{orbit_count_bruteforce, ActingGroup, SymplecticLattice};
use efc_core::SubsetBudget;

fn kernel() -> EFieldPresentation {
    PresentationFile {
        generators: vec!["tau".into()],
        kernel: Some("tau".into()),
        ..Default::default()
    }
    .to_raw()
    .unwrap()
    .validate()
    .unwrap()
}

fn forged(steps: &str) -> EFieldPresentation {
    let steps: Vec<Step> = steps.split(',').map(|s| s.parse().unwrap()).collect();
    forge(&kernel(), &steps, 1, SubsetBudget::default())
        .unwrap()
        .last()
        .clone()
}

fn groebner(c: &mut Criterion) {
    let ring = vars_from(&["x", "y", "z"]);
    let gens: Vec<Poly> = ["x^2 + y*z - 2", "y^2 + x*z - 3", "z^2 + x*y - 5"]
        .iter()
        .map(|s| parse_poly(s, &ring).unwrap())
        .collect();
    c.bench_function("buchberger/three_quadrics", |b| {
        b.iter(|| buchberger(&ring, black_box(&gens), MonomialOrder::DegRevLex))
    });
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("hrushovski_check");
    group.sample_size(10);
    for steps in [
        "free,free,div:*:2,exiter:*",
        "free,free,div:*:2,exiter:*,kdiv:2,free,div:*:3",
    ] {
        let p = forged(steps);
        group.bench_with_input(BenchmarkId::from_parameter(p.len()), &p, |b, p| {
            b.iter(|| hrushovski_check(p, SubsetBudget::default()).unwrap())
        });
    }
    group.finish();
}

fn kummer(c: &mut Criterion) {
    let base = forged("free,free");
    let mut group = c.benchmark_group("kummer_degree");
    group.sample_size(10);
    for (n, m) in [(1, 2), (2, 3), (2, 4)] {
        group.bench_function(format!("n{n}_m{m}"), |b| b.iter(|| kummer_degree(&base, n, m).unwrap()));
    }
    group.finish();
}

fn screen(c: &mut Criterion) {
    let s = ExpSystem::from_json(r#"{ "n": 3, "poly_relations": ["y1 - x2", "y2 - x3", "y3 - x1"] }"#).unwrap();
    c.bench_function("sc_screen/three_cycle", |b| {
        b.iter(|| sc_screen(black_box(&s)).unwrap())
    });
}

fn orbits(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbit_count");
    group.sample_size(10);
    for (g, l) in [(1, 3), (2, 2)] {
        let lat = SymplecticLattice::new(g, l, 1).unwrap();
        group.bench_function(format!("g{g}_l{l}"), |b| {
            b.iter(|| orbit_count_bruteforce(&lat, ActingGroup::Full).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, groebner, enumeration, kummer, screen, orbits);
criterion_main!(benches);
