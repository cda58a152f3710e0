//! Invariants checked on random inputs.

use proptest::prelude::*;
use qfold_core::corpus::{self, CorpusEntry};
use qfold_core::dims::{dim_quiver_variety, dim_steinberg, fixed_components};
use qfold_core::lie_fold::{cartan_from_quiver, classify_cartan, fold_cartan, CartanMatrix};
use qfold_core::module_lab::json::{module_from_json, module_to_json};
use qfold_core::module_lab::random::{random_finite_order, random_relation_module, random_sigma, random_theta_fixed};
use qfold_core::module_lab::{apply_theta, check_relations, eigen_grade, find_transition, is_stable, RelationMode};
use qfold_core::quiver::families::*;
use qfold_core::quiver::{check_automorphism, is_admissible, orbit_data};
use qfold_core::rep::{branch, freudenthal_character, reflect, restrict_weight};
use qfold_core::split::{fiber_count, fibers_of_p, project_dim, split_framing, split_quiver};
use qfold_core::{DiagramAutomorphism, FramedModule, Quiver, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn entries() -> Vec<CorpusEntry> {
    corpus::entries().unwrap()
}

fn entry_strategy() -> impl Strategy<Value = CorpusEntry> {
    let all = entries();
    (0..all.len()).prop_map(move |k| all[k].clone())
}

fn family(kind: u8, n: usize) -> Quiver {
    match kind % 4 {
        0 => type_a(n),
        1 => type_d(n + 2),
        2 => affine_a(n),
        _ => affine_d(n + 3),
    }
}

fn orbit_constant(e: &CorpusEntry, r: &mut ChaCha8Rng, hi: u64) -> Vec<u64> {
    let od = orbit_data(&e.quiver, &e.automorphism).unwrap();
    let mut v = vec![0; e.quiver.vertex_count()];
    for o in &od.vertex_orbits {
        let k = r.gen_range(0..=hi);
        for &x in o {
            v[x] = k;
        }
    }
    v
}

fn usize_vec(v: &[u64]) -> Vec<usize> {
    v.iter().map(|&x| x as usize).collect()
}

/// Random quiver on `n` vertices, possibly with loops and parallel edges.
fn random_quiver(n: usize, edges: &[(usize, usize)]) -> Quiver {
    let ids: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let es = edges
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| (format!("e{k}"), ids[s % n].clone(), ids[t % n].clone()))
        .collect();
    Quiver::new(ids, es).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reversal_is_an_involution_with_opposite_sign(kind in 0u8..4, n in 1usize..7) {
        let d = family(kind, n).doubled();
        for h in 0..d.arrow_count() {
            prop_assert_eq!(d.reverse(d.reverse(h)), h);
            prop_assert_eq!(d.epsilon(d.reverse(h)), -d.epsilon(h));
            let (a, b) = (&d.arrows()[h], &d.arrows()[d.reverse(h)]);
            prop_assert_eq!((a.src, a.tgt), (b.tgt, b.src));
        }
    }

    #[test]
    fn orbits_partition_vertices_and_edges(e in entry_strategy(), k in 1usize..4) {
        let a = e.automorphism.power(k);
        let od = orbit_data(&e.quiver, &a).unwrap();
        prop_assert_eq!(od.vertex_orbits.iter().map(Vec::len).sum::<usize>(), e.quiver.vertex_count());
        prop_assert_eq!(od.edge_orbits.iter().map(Vec::len).sum::<usize>(), e.quiver.edge_count());
        for o in &od.vertex_orbits {
            prop_assert_eq!(od.n % o.len(), 0);
        }
    }

    #[test]
    fn identity_is_admissible_iff_loopless(n in 1usize..5, edges in prop::collection::vec((0usize..5, 0usize..5), 0..6)) {
        let q = random_quiver(n, &edges);
        let id = DiagramAutomorphism::identity(&q);
        prop_assert_eq!(is_admissible(&q, &id).unwrap(), q.has_self_loop().is_none());
    }

    #[test]
    fn automorphisms_compose(e in entry_strategy(), k in 0usize..5) {
        let a = e.automorphism.power(k);
        prop_assert!(check_automorphism(&e.quiver, &a).is_ok());
        prop_assert!(check_automorphism(&e.quiver, &a.compose(&a)).is_ok());
        prop_assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn fibers_project_back(e in entry_strategy(), seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let sd = split_quiver(&e.quiver, &e.automorphism).unwrap();
        let v = orbit_constant(&e, &mut r, 3);
        let fib = fibers_of_p(&v, &sd).unwrap();
        prop_assert_eq!(fib.len() as u128, fiber_count(&v, &sd));
        for vp in &fib {
            prop_assert_eq!(&project_dim(vp, &sd).unwrap(), &v);
        }
    }

    #[test]
    fn split_framing_restricts_to_w(e in entry_strategy(), seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let sd = split_quiver(&e.quiver, &e.automorphism).unwrap();
        let w = orbit_constant(&e, &mut r, 3);
        let sigma = random_sigma(&sd.orbits, &usize_vec(&w), &mut r);
        let ws = split_framing(&w, &sigma, &sd).unwrap();
        for (o, orbit) in sd.orbits.vertex_orbits.iter().enumerate() {
            let e_i = sd.orbits.e_vertex[orbit[0]];
            let total: u64 = (1..=e_i).map(|j| ws[sd.split_index(o, j)]).sum();
            prop_assert_eq!(total, w[orbit[0]]);
        }
        let recs = fixed_components(&orbit_constant(&e, &mut r, 2), &w, &sd, &ws);
        prop_assert!(recs.is_ok());
    }

    #[test]
    fn eigen_grade_sums_to_size(size in 0usize..5, e in 1usize..7, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = random_finite_order(size, e, &mut r);
        let grades = eigen_grade(&g, e).unwrap();
        prop_assert_eq!(grades.len(), e);
        prop_assert_eq!(grades.iter().map(|x| x.dim).sum::<usize>(), size);
    }

    #[test]
    fn characters_are_weyl_symmetric(kind in 0usize..4, l in prop::collection::vec(0i64..3, 3)) {
        let c: CartanMatrix = match kind {
            0 => cartan_from_quiver(&type_a(2)).unwrap(),
            1 => cartan_from_quiver(&type_a(3)).unwrap(),
            2 => fold_cartan(&cartan_from_quiver(&type_a(3)).unwrap(), &a_flip(&type_a(3)).unwrap()).unwrap().folded,
            _ => fold_cartan(&cartan_from_quiver(&type_d(4)).unwrap(), &d4_triality(&type_d(4)).unwrap()).unwrap().folded,
        };
        let lambda: Vec<i64> = l[..c.rank()].to_vec();
        let ch = freudenthal_character(&c, &lambda).unwrap();
        for mu in ch.weights.keys() {
            for i in 0..c.rank() {
                prop_assert_eq!(ch.multiplicity(&reflect(&c, i, mu)), ch.multiplicity(mu));
            }
        }
    }

    #[test]
    fn restriction_is_additive(e in entry_strategy(), x in prop::collection::vec(-3i64..4, 10), y in prop::collection::vec(-3i64..4, 10)) {
        let c = cartan_from_quiver(&e.quiver).unwrap();
        let f = fold_cartan(&c, &e.automorphism).unwrap();
        let n = c.rank();
        let (x, y) = (&x[..n], &y[..n]);
        let sum: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        let rx = restrict_weight(x, &f).unwrap();
        let ry = restrict_weight(y, &f).unwrap();
        let both: Vec<i64> = rx.iter().zip(&ry).map(|(a, b)| a + b).collect();
        prop_assert_eq!(restrict_weight(&sum, &f).unwrap(), both);
    }

    #[test]
    fn theta_preserves_relations_and_stability(e in entry_strategy(), seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let d = e.quiver.doubled();
        let od = orbit_data(&e.quiver, &e.automorphism).unwrap();
        let v = usize_vec(&orbit_constant(&e, &mut r, 2));
        let w = usize_vec(&orbit_constant(&e, &mut r, 2));
        let m: FramedModule<Q> = random_relation_module(&d, &v, &w, RelationMode::Signed, &mut r);
        let sigma = random_sigma(&od, &w, &mut r);
        let t = apply_theta(&d, &e.automorphism, &sigma, &m).unwrap();
        prop_assert_eq!(check_relations(&d, &m, RelationMode::Signed).unwrap(), None);
        prop_assert_eq!(check_relations(&d, &t, RelationMode::Signed).unwrap(), None);
        prop_assert_eq!(is_stable(&d, &t).unwrap(), is_stable(&d, &m).unwrap());
    }

    #[test]
    fn transitions_are_deterministic(e in entry_strategy(), seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let d = e.quiver.doubled();
        let n = e.quiver.vertex_count();
        let fixed = random_theta_fixed(&d, &e.automorphism, &vec![1; n], &vec![2; n], &mut r).unwrap();
        let g = find_transition(&d, &e.automorphism, &fixed.sigma, &fixed.module).unwrap();
        prop_assert_eq!(g.as_ref(), Some(&fixed.transition));
        prop_assert_eq!(g, find_transition(&d, &e.automorphism, &fixed.sigma, &fixed.module).unwrap());
    }

    #[test]
    fn modules_round_trip_through_json(e in entry_strategy(), seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let d = e.quiver.doubled();
        let v = usize_vec(&orbit_constant(&e, &mut r, 2));
        let w = usize_vec(&orbit_constant(&e, &mut r, 2));
        let m: FramedModule<Q> = random_relation_module(&d, &v, &w, RelationMode::Signed, &mut r);
        let text = serde_json::to_string(&module_to_json(&d, &m)).unwrap();
        prop_assert_eq!(module_from_json(&d, &serde_json::from_str(&text).unwrap()).unwrap(), m);
    }

    #[test]
    fn dimension_is_relabeling_equivariant(kind in 0u8..2, n in 1usize..6, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let c = cartan_from_quiver(&family(kind, n)).unwrap();
        let k = c.rank();
        let v: Vec<u64> = (0..k).map(|_| r.gen_range(0..4)).collect();
        let w: Vec<u64> = (0..k).map(|_| r.gen_range(0..4)).collect();
        let mut perm: Vec<usize> = (0..k).collect();
        for i in (1..k).rev() {
            perm.swap(i, r.gen_range(0..=i));
        }
        let pv: Vec<u64> = perm.iter().map(|&p| v[p]).collect();
        let pw: Vec<u64> = perm.iter().map(|&p| w[p]).collect();
        prop_assert_eq!(dim_quiver_variety(&v, &w, &c).unwrap(), dim_quiver_variety(&pv, &pw, &c.relabel(&perm)).unwrap());
    }

    #[test]
    fn steinberg_is_symmetric(kind in 0u8..4, n in 1usize..5, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let c = cartan_from_quiver(&family(kind, n)).unwrap();
        let k = c.rank();
        let mut vec = || -> Vec<u64> { (0..k).map(|_| r.gen_range(0..4)).collect() };
        let (v1, v2, w) = (vec(), vec(), vec());
        prop_assert_eq!(dim_steinberg(&v1, &v2, &w, &c).unwrap(), dim_steinberg(&v2, &v1, &w, &c).unwrap());
        let own = dim_quiver_variety(&v1, &w, &c).unwrap();
        prop_assert_eq!(dim_steinberg(&v1, &v1, &w, &c).unwrap(), Q::from_integer(own.into()));
        prop_assert_eq!(own % 2, 0);
    }
}

#[test]
fn split_side_folding_table() {
    for n in 2..=5 {
        let d = type_d(n + 1);
        let sd = split_quiver(&d, &d_fork_swap(&d).unwrap()).unwrap();
        let f = fold_cartan(&cartan_from_quiver(&sd.split).unwrap(), &sd.induced).unwrap();
        assert_eq!(classify_cartan(&f.folded).to_string(), format!("C_{n}"), "D_{}", n + 1);
        let a = type_a(2 * n - 1);
        let sd = split_quiver(&a, &a_flip(&a).unwrap()).unwrap();
        let f = fold_cartan(&cartan_from_quiver(&sd.split).unwrap(), &sd.induced).unwrap();
        assert_eq!(classify_cartan(&f.folded).to_string(), format!("B_{n}"), "A_{}", 2 * n - 1);
    }
}

#[test]
fn split_data_invariants_on_corpus() {
    for e in entries() {
        let sd = split_quiver(&e.quiver, &e.automorphism).unwrap();
        check_automorphism(&sd.split, &sd.induced).unwrap();
        assert!(is_admissible(&sd.split, &sd.induced).unwrap(), "{}", e.name);
        let expected: usize = sd.orbits.vertex_orbits.iter().map(|o| sd.orbits.e_vertex[o[0]]).sum();
        assert_eq!(sd.split.vertex_count(), expected, "{}", e.name);
        let f = fold_cartan(&cartan_from_quiver(&e.quiver).unwrap(), &e.automorphism).unwrap();
        let sym = f.folded.symmetrized();
        assert!(f.symmetrizer.iter().all(|&x| x > 0) && sym.is_some(), "{}", e.name);
    }
}

#[test]
fn identity_split_and_fold_are_trivial() {
    for q in [type_a(4), type_d(5), affine_a(3), affine_d(5)] {
        let id = DiagramAutomorphism::identity(&q);
        let sd = split_quiver(&q, &id).unwrap();
        assert_eq!(sd.split.vertex_count(), q.vertex_count());
        assert_eq!(cartan_from_quiver(&sd.split).unwrap().entries(), cartan_from_quiver(&q).unwrap().entries());
        let c = cartan_from_quiver(&q).unwrap();
        assert_eq!(fold_cartan(&c, &id).unwrap().folded.entries(), c.entries());
    }
}

#[test]
fn fundamental_weights_branch_to_themselves_under_identity() {
    for q in [type_a(3), type_d(4)] {
        let c = cartan_from_quiver(&q).unwrap();
        let f = fold_cartan(&c, &DiagramAutomorphism::identity(&q)).unwrap();
        for i in 0..c.rank() {
            let mut lambda = vec![0; c.rank()];
            lambda[i] = 1;
            let b = branch(&c, &lambda, &f).unwrap();
            assert_eq!(b.components, vec![(lambda.clone(), 1)]);
        }
    }
}
