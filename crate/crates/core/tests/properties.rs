use std::collections::HashSet;

use fca_core::families::contranominal;
use fca_core::generalization::{new_extents, phi_a};
use fca_core::{
    count_concepts, covering_relation, enumerate_concepts, generalize, pair_increase_report, AttributeSet,
    BitSet, Block, FormalContext, GeneralizationScheme, Mode, ObjectSet, Ratio,
};
use proptest::prelude::*;

fn context(max_g: usize, max_m: usize) -> impl Strategy<Value = FormalContext> {
    (1..=max_g, 1..=max_m).prop_flat_map(|(g, m)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), m), g).prop_map(move |table| {
            FormalContext::from_fn(
                (0..g).map(|i| format!("g{i}")).collect(),
                (0..m).map(|i| format!("m{i}")).collect(),
                |i, j| table[i][j],
            )
            .unwrap()
        })
    })
}

/// A context together with a random object set.
fn context_and_objects(max_g: usize, max_m: usize) -> impl Strategy<Value = (FormalContext, BitSet)> {
    context(max_g, max_m).prop_flat_map(|ctx| {
        let g = ctx.num_objects();
        (Just(ctx), proptest::collection::vec(any::<bool>(), g))
            .prop_map(move |(ctx, bits)| (ctx, BitSet::from_indices(g, (0..g).filter(|&i| bits[i]))))
    })
}

fn mask(len: usize, bits: &[bool]) -> BitSet {
    BitSet::from_indices(len, (0..len).filter(|&i| bits.get(i).copied().unwrap_or(false)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivation_is_antitone(ctx in context(8, 8), x in proptest::collection::vec(any::<bool>(), 8),
                              y in proptest::collection::vec(any::<bool>(), 8)) {
        let g = ctx.num_objects();
        let a = mask(g, &x);
        let b = a.union(&mask(g, &y));
        let da = ctx.derive_objects(&ObjectSet::from_bits(a)).unwrap();
        let db = ctx.derive_objects(&ObjectSet::from_bits(b)).unwrap();
        prop_assert!(db.is_subset(&da));
    }

    #[test]
    fn closure_laws((ctx, a) in context_and_objects(8, 8)) {
        let a = ObjectSet::from_bits(a);
        let closed = ctx.close_objects(&a).unwrap();
        prop_assert!(a.is_subset(&closed));
        prop_assert_eq!(ctx.close_objects(&closed).unwrap(), closed.clone());
        prop_assert!(ctx.is_extent(&closed).unwrap());
        let intent = ctx.derive_objects(&a).unwrap();
        let triple = ctx.derive_attributes(&intent).unwrap();
        prop_assert_eq!(ctx.derive_objects(&triple).unwrap(), intent);
    }

    #[test]
    fn add_then_remove_is_identity((ctx, a) in context_and_objects(8, 6)) {
        let grown = ctx.add_attribute("extra", &ObjectSet::from_bits(a.clone())).unwrap();
        prop_assert_eq!(grown.column(ctx.num_attributes()), &a);
        prop_assert_eq!(grown.remove_attributes(&["extra"]).unwrap(), ctx);
    }

    #[test]
    fn enumeration_is_deterministic(ctx in context(8, 8)) {
        let first = enumerate_concepts(&ctx).unwrap();
        let second = enumerate_concepts(&ctx).unwrap();
        prop_assert_eq!(first.concepts(), second.concepts());
        prop_assert_eq!(first.len() as u64, count_concepts(&ctx));
    }

    #[test]
    fn extents_are_closed_under_intersection(ctx in context(7, 7)) {
        let lat = enumerate_concepts(&ctx).unwrap();
        let extents: Vec<&ObjectSet> = lat.extents().collect();
        for a in &extents {
            for b in &extents {
                prop_assert!(lat.contains_extent(&a.intersection(b)));
            }
        }
        prop_assert!(lat.contains_extent(ctx.all_objects().bits()));
    }

    #[test]
    fn covers_are_the_transitive_reduction(ctx in context(6, 6)) {
        let lat = enumerate_concepts(&ctx).unwrap();
        let n = lat.len();
        let edges: HashSet<(usize, usize)> = covering_relation(&lat).iter().map(|e| (e.lower, e.upper)).collect();
        for i in 0..n {
            for j in 0..n {
                let strictly = i != j && lat.leq(i, j);
                let covered = strictly && !(0..n).any(|k| k != i && k != j && lat.leq(i, k) && lat.leq(k, j));
                prop_assert_eq!(edges.contains(&(i, j)), covered, "pair ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn embedding_is_injective((ctx, a) in context_and_objects(7, 6)) {
        let k_a = ctx.add_attribute("new", &ObjectSet::from_bits(a)).unwrap();
        let lat = enumerate_concepts(&ctx).unwrap();
        let mut seen = HashSet::new();
        for c in lat.concepts() {
            let img = phi_a(&ctx, &k_a, "new", c).unwrap();
            prop_assert!(img.is_concept_of(&k_a));
            prop_assert!(seen.insert(img.intent().bits().clone()));
        }
    }

    #[test]
    fn new_extents_count_the_increase((ctx, a) in context_and_objects(7, 6)) {
        let a = ObjectSet::from_bits(a);
        let h = new_extents(&ctx, &a).unwrap();
        let before = enumerate_concepts(&ctx).unwrap();
        let after = enumerate_concepts(&ctx.add_attribute("new", &a).unwrap()).unwrap();
        prop_assert_eq!(after.len() - before.len(), h.len());
        for e in &h {
            prop_assert!(e.is_subset(&a));
            prop_assert!(!before.contains_extent(e));
            prop_assert!(after.contains_extent(e));
        }
        // at most every subset of a' that is not already an extent
        let inside = before.extents().filter(|e| e.is_subset(&a)).count() as u64;
        prop_assert!(h.len() as u64 <= (1u64 << a.count()) - inside);
    }

    #[test]
    fn alpha_one_is_forall_and_small_alpha_is_exists(ctx in context(7, 6), split in 1usize..6) {
        let m = ctx.num_attributes();
        let cut = split.min(m);
        let names = ctx.attribute_names();
        let blocks = || vec![
            Block::new(None, names[..cut].iter().cloned()),
            Block::new(None, names[cut..].iter().cloned()),
        ].into_iter().filter(|b| !b.members.is_empty()).collect::<Vec<_>>();
        let run = |mode| generalize(&ctx, &GeneralizationScheme::new(blocks(), mode)).unwrap();
        prop_assert_eq!(run(Mode::Alpha(Ratio::new(1, 1).unwrap())), run(Mode::Forall));
        prop_assert_eq!(run(Mode::Alpha(Ratio::new(1, 64).unwrap())), run(Mode::Exists));
    }

    #[test]
    fn pair_accounting(ctx in context(7, 6)) {
        prop_assume!(ctx.num_attributes() >= 2);
        let r = pair_increase_report(&ctx, "m0", "m1").unwrap();
        prop_assert!(r.within_bound());
        prop_assert_eq!(r.realized_increase, r.h_a_or_b as i64 - r.h_pair as i64);
        prop_assert!(r.h_a <= (1u64 << r.size_a) - r.d1);
        prop_assert!(r.h_b <= (1u64 << r.size_b) - r.d2);
        if r.disjoint {
            prop_assert!(r.h_a_and_b <= 1);
            prop_assert!(r.d1 + r.d2 <= r.d0 + u64::from(r.empty_is_extent));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contranominal_derivation(n in 0usize..10, bits in proptest::collection::vec(any::<bool>(), 10)) {
        let ctx = contranominal(n).unwrap();
        let a = mask(n, &bits);
        let derived = ctx.derive_objects(&ObjectSet::from_bits(a.clone())).unwrap();
        prop_assert_eq!(derived, AttributeSet::from_bits(a.complement()));
    }
}
