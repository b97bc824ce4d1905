use criterion::{black_box, criterion_group, criterion_main, Criterion};

use heckeposet::borderstrips::{expand_in_psi, StripFlavor};
use heckeposet::hecke::poset_module;
use heckeposet::ppart::{kp_fundamental, kp_in_psi_via_starred};
use heckeposet::tableaux::{poset_dual_immaculate, srct_classes};
use heckeposet::{all_posets, Composition, LabeledPoset};

fn comp(s: &str) -> Composition {
    s.parse().unwrap()
}

fn expansions(c: &mut Criterion) {
    let alpha = comp("2,1,2,1");
    let p = poset_dual_immaculate(&alpha);
    c.bench_function("psi linear solve, dimm (2,1,2,1)", |b| {
        b.iter(|| kp_fundamental(black_box(&p)).psi_over_z_coefficients().unwrap())
    });
    c.bench_function("starred partitions, dimm (2,1,2,1)", |b| {
        b.iter(|| kp_in_psi_via_starred(black_box(&p)).unwrap())
    });
    c.bench_function("border strips, dimm (2,1,2,1)", |b| {
        b.iter(|| expand_in_psi(StripFlavor::Dif, black_box(&alpha)).unwrap())
    });
}

fn modules(c: &mut Criterion) {
    let running = LabeledPoset::from_covers(5, &[(5, 1), (1, 3), (1, 4), (2, 4)]).unwrap();
    c.bench_function("relations, running poset", |b| {
        b.iter(|| poset_module(black_box(&running)).check_relations())
    });
    c.bench_function("enumerate posets on [4]", |b| b.iter(|| all_posets(black_box(4))));
    c.bench_function("SRCT classes (2,3,2,4)", |b| {
        b.iter(|| srct_classes(black_box(&comp("2,3,2,4"))))
    });
}

criterion_group!(benches, expansions, modules);
criterion_main!(benches);
