use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qfold_bench::{entry, theta_fixed};
use qfold_core::lie_fold::{cartan_from_quiver, classify_cartan, fold_cartan};
use qfold_core::module_lab::{find_transition, is_stable, verify_eigenspace_embedding};
use qfold_core::module_lab::random::random_theta_pair;
use qfold_core::rep::{branch, freudenthal_character};
use qfold_core::split::{split_involution_check, split_quiver};
use qfold_core::verify::{verify_all, VerifyConfig};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quivers(c: &mut Criterion) {
    let e = entry("affineD6-swap");
    c.bench_function("split affineD6-swap", |b| b.iter(|| split_quiver(black_box(&e.quiver), &e.automorphism)));
    c.bench_function("involution check affineD6-swap", |b| {
        b.iter(|| split_involution_check(black_box(&e.quiver), &e.automorphism))
    });
    let a7 = entry("A7-flip");
    c.bench_function("fold and classify A7-flip", |b| {
        b.iter(|| {
            let f = fold_cartan(&cartan_from_quiver(black_box(&a7.quiver)).unwrap(), &a7.automorphism).unwrap();
            classify_cartan(&f.folded)
        })
    });
}

fn characters(c: &mut Criterion) {
    let a5 = entry("A5-flip");
    let cm = cartan_from_quiver(&a5.quiver).unwrap();
    let fold = fold_cartan(&cm, &a5.automorphism).unwrap();
    c.bench_function("character A5 (1,1,0,1,1)", |b| b.iter(|| freudenthal_character(&cm, black_box(&[1, 1, 0, 1, 1]))));
    c.bench_function("branch A5 > C3 (1,0,1,0,1)", |b| b.iter(|| branch(&cm, black_box(&[1, 0, 1, 0, 1]), &fold)));
}

fn modules(c: &mut Criterion) {
    let (e, m) = theta_fixed("D5-swap", 2, 2, 1);
    let d = e.quiver.doubled();
    c.bench_function("stability D5 v=2 w=2", |b| b.iter(|| is_stable(&d, black_box(&m.module))));
    c.bench_function("transition D5 v=2 w=2", |b| {
        b.iter(|| find_transition(&d, &e.automorphism, &m.sigma, black_box(&m.module)))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let n = e.quiver.vertex_count();
    let p = random_theta_pair(&d, &e.automorphism, &vec![2; n], &vec![2; n], &mut rng).unwrap();
    c.bench_function("eigenspaces D5 pair", |b| {
        b.iter(|| verify_eigenspace_embedding(&d, &e.automorphism, &p.sigma, black_box(&p.embedding), &p.sub_transition, &p.transition))
    });
}

fn suite(c: &mut Criterion) {
    let entries = vec![entry("A3-flip"), entry("D4-triality")];
    let cfg = VerifyConfig { theta_trials: 2, pair_trials: 1, stability_trials: 2 };
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    g.bench_function("verify-all two entries", |b| b.iter(|| verify_all(black_box(&entries), 0, &cfg)));
    g.finish();
}

criterion_group!(benches, quivers, characters, modules, suite);
criterion_main!(benches);
