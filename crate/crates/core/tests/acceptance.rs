//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p fca-core --test acceptance`.

mod common;

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use fca_core::families::{
    contranominal, family_cover, family_k1, family_kk, minimal_cover_increase, predicted_counts_cover,
    proper_incomparable_coverings,
};
use fca_core::generalization::{check_doubling, doubling_condition, new_extents, phi_a};
use fca_core::{
    brute_force_concepts, count_concepts, enumerate_concepts, generalize, merge_exists, pair_increase_report,
    Block, GeneralizationScheme, Mode, ObjectSet,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, started: Instant) -> Result<Duration, String> {
    let took = started.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

/// Concept counts of K1_n and of its ∃-merge of m1, m2.
fn k1_row(n: usize) -> (u64, u64) {
    let k = family_k1(n).unwrap();
    let scheme =
        GeneralizationScheme::merging(&k, vec![Block::new(Some("m12"), ["m1", "m2"])], Mode::Exists).unwrap();
    let ge = generalize(&k, &scheme).unwrap();
    (count_concepts(&k), count_concepts(&ge))
}

fn criterion_1() -> Outcome {
    const ROWS: [(usize, u64, u64, u64); 5] = [
        (2, 7, 8, 1),
        (3, 13, 16, 3),
        (4, 25, 32, 7),
        (5, 49, 64, 15),
        (10, 1537, 2048, 511),
    ];
    let started = Instant::now();
    for (n, initial, generalized, diff) in ROWS {
        let (a, b) = k1_row(n);
        ensure((a, b, b - a) == (initial, generalized, diff), || {
            format!(
                "n={n}: got {a}/{b}/{}, expected {initial}/{generalized}/{diff}",
                b - a
            )
        })?;
    }
    let took = within(Duration::from_secs(10), started)?;
    let started = Instant::now();
    let (a, b) = k1_row(20);
    ensure((a, b, b - a) == (1572865, 2097152, 524287), || {
        format!("n=20: got {a}/{b}/{}", b - a)
    })?;
    let big = within(Duration::from_secs(300), started)?;
    Ok(format!(
        "n=2,3,4,5,10 rows exact in {took:.2?}; n=20 row exact in {big:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let started = Instant::now();
    let mut cases = 0;
    for n in 2..=12usize {
        for k in 1..n {
            let ctx = family_kk(n, k).unwrap();
            let expected = (1u64 << n) + (1u64 << (n - k)) + (1u64 << k) - 1;
            let got = count_concepts(&ctx);
            ensure(got == expected, || {
                format!("K^{k}_{n}: {got} concepts, expected {expected}")
            })?;
            let merged = count_concepts(&merge_exists(&ctx, "m1", "m2", "m12").unwrap());
            ensure(merged == 1u64 << (n + 1), || {
                format!("K^{k}_{n} merged: {merged}")
            })?;
            cases += 1;
        }
    }
    let took = within(Duration::from_secs(60), started)?;
    Ok(format!("{cases} (n,k) pairs exact in {took:.2?}"))
}

fn criterion_3() -> Outcome {
    let mut cases = 0;
    for n in 3..=6usize {
        for (m1, m2) in proper_incomparable_coverings(n) {
            let (s1, s2, s12) = (m1.count(), m2.count(), m1.intersection(&m2).count());
            let expected = (1u64 << n) + (1u64 << s1) + (1u64 << s2) - (1u64 << s12);
            let got = count_concepts(&family_cover(n, &m1, &m2).unwrap().context);
            ensure(got == expected, || {
                format!(
                    "n={n} m1'={:?} m2'={:?}: {got}, expected {expected}",
                    m1.bits(),
                    m2.bits()
                )
            })?;
            cases += 1;
        }
    }
    let small = family_cover(
        3,
        &ObjectSet::from_bits(fca_core::BitSet::from_indices(3, [0, 1])),
        &ObjectSet::from_bits(fca_core::BitSet::from_indices(3, [1, 2])),
    )
    .unwrap();
    let got = count_concepts(&small.context);
    ensure(got == 14, || {
        format!("n=3 covering with sizes (2,2,1) has {got} concepts")
    })?;
    ensure(
        predicted_counts_cover(3, 2, 2, 1).unwrap().initial_count == 14,
        || "prediction".into(),
    )?;
    Ok(format!(
        "{cases} coverings for n=3..6 exact; n=3 sizes (2,2,1) gives 14"
    ))
}

fn criterion_4() -> Outcome {
    let contexts = common::corpus(4, 540, 8, 2, 8);
    let mut pairs = 0usize;
    let mut identity_violations = Vec::new();
    let mut bound_violations = Vec::new();
    for (i, ctx) in contexts.iter().enumerate() {
        let names = ctx.attribute_names();
        for x in 0..names.len() {
            for y in x + 1..names.len() {
                let r = pair_increase_report(ctx, &names[x], &names[y]).map_err(|e| e.to_string())?;
                pairs += 1;
                if r.realized_increase != r.formula_increase() {
                    identity_violations.push((i, x, y, r.realized_increase, r.formula_increase()));
                }
                if !r.within_bound() {
                    bound_violations.push((i, x, y, r.realized_increase, r.upper_bound));
                }
            }
        }
    }
    let bound = format!("bound held in {}/{pairs} pairs", pairs - bound_violations.len());
    if identity_violations.is_empty() && bound_violations.is_empty() {
        return Ok(format!(
            "{} contexts, {pairs} pairs: identity exact; {bound}",
            contexts.len()
        ));
    }
    let mut msg = format!(
        "{} contexts, {pairs} pairs: increase = h(a∪b)-h(a)-h(b)+h(a∩b) violated in {} pairs; {bound}",
        contexts.len(),
        identity_violations.len()
    );
    if let Some(&(i, x, y, real, formula)) = identity_violations.first() {
        msg.push_str(&format!(
            "; first: context #{i} ({}x{}), pair (m{x}, m{y}) realized {real}, formula {formula}",
            contexts[i].num_objects(),
            contexts[i].num_attributes()
        ));
    }
    if let Some(&(i, x, y, real, b)) = bound_violations.first() {
        msg.push_str(&format!(
            "; bound broken at context #{i} pair (m{x}, m{y}): {real} > {b}"
        ));
    }
    Err(msg)
}

fn criterion_5() -> Outcome {
    let contexts = common::corpus(4, 540, 8, 2, 8);
    let mut rng = common::rng(5);
    let mut doubled = 0;
    for (i, k) in contexts.iter().enumerate() {
        let g = k.num_objects();
        let a_ext = ObjectSet::from_bits(common::random_subset(&mut rng, g, 0.5));
        let k_a = k.add_attribute("new", &a_ext).map_err(|e| e.to_string())?;
        let lat = enumerate_concepts(k).unwrap();
        let lat_a = enumerate_concepts(&k_a).unwrap();

        // injectivity and image validity of the embedding
        let mut images = HashSet::new();
        for c in lat.concepts() {
            let img = phi_a(k, &k_a, "new", c).map_err(|e| format!("#{i}: {e}"))?;
            ensure(img.is_concept_of(&k_a), || {
                format!("#{i}: image is not a concept")
            })?;
            ensure(images.insert(img), || {
                format!("#{i}: two concepts share an image")
            })?;
        }

        // the increase is h(a), bounded by |B(K)|
        let h = new_extents(k, &a_ext).unwrap();
        let increase = lat_a.len() - lat.len();
        ensure(increase == h.len(), || {
            format!("#{i}: increase {increase} != h(a) {}", h.len())
        })?;
        ensure(h.len() <= lat.len(), || format!("#{i}: h(a) exceeds |B(K)|"))?;

        // doubling criterion against an exhaustive extent scan
        let scan = lat
            .extents()
            .all(|e| !lat.contains_extent(&e.intersection(&a_ext)));
        let cond = doubling_condition(k, &a_ext).unwrap();
        ensure(cond == scan, || {
            format!("#{i}: criterion {cond}, extent scan {scan}")
        })?;

        // exact doubling for a' = G \ ∅''
        let least = k.close_objects(&k.no_objects()).unwrap();
        if !least.is_empty() {
            let complement = ObjectSet::from_bits(least.complement());
            ensure(check_doubling(k, &complement).unwrap(), || {
                format!("#{i}: no exact doubling")
            })?;
            let k_c = k.add_attribute("new", &complement).unwrap();
            ensure(count_concepts(&k_c) == 2 * lat.len() as u64, || {
                format!("#{i}: doubled count")
            })?;
            doubled += 1;
        }
    }
    Ok(format!(
        "{} contexts: embedding injective and valid, increase = h(a), doubling criterion matches scan, {doubled} exact doublings",
        contexts.len()
    ))
}

fn extent_set(lat: &fca_core::ConceptLattice) -> HashSet<fca_core::BitSet> {
    lat.extents().map(|e| e.bits().clone()).collect()
}

fn criterion_6() -> Outcome {
    let contexts = common::corpus(6, 250, 10, 1, 10);
    for (i, ctx) in contexts.iter().enumerate() {
        let fast = enumerate_concepts(ctx).unwrap();
        let slow = brute_force_concepts(ctx).unwrap();
        ensure(extent_set(&fast) == extent_set(&slow), || {
            format!("#{i}: concept sets differ")
        })?;
        ensure(fast.concepts() == slow.concepts(), || {
            format!("#{i}: concept lists differ")
        })?;
    }
    Ok(format!(
        "{} contexts up to 10x10 agree with brute force",
        contexts.len()
    ))
}

fn criterion_7() -> Outcome {
    let contexts = common::corpus(4, 540, 8, 2, 8);
    let mut rng = common::rng(7);
    for (i, ctx) in contexts.iter().enumerate() {
        for _ in 0..3 {
            let blocks = common::random_partition(&mut rng, ctx.num_attributes())
                .into_iter()
                .map(|b| Block::new(None, b.into_iter().map(|m| ctx.attribute_names()[m].clone())))
                .collect();
            let scheme = GeneralizationScheme::new(blocks, Mode::Forall);
            let before = count_concepts(ctx);
            let after = count_concepts(&generalize(ctx, &scheme).unwrap());
            ensure(after <= before, || {
                format!("#{i}: forall merge grew {before} -> {after}")
            })?;
        }
    }
    Ok(format!(
        "{} contexts x 3 random partitions, never an increase",
        contexts.len()
    ))
}

fn criterion_8() -> Outcome {
    for n in 0..=14 {
        let got = count_concepts(&contranominal(n).unwrap());
        ensure(got == 1 << n, || format!("n={n}: {got}"))?;
    }
    Ok("2^n concepts for n=0..14".into())
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    for n in 4..=8usize {
        let scan = minimal_cover_increase(n).map_err(|e| e.to_string())?;
        ensure(scan.mismatches == 0, || {
            format!("n={n}: {} coverings off prediction", scan.mismatches)
        })?;
        // independent minimum over size triples of proper incomparable coverings
        let mut best = u64::MAX;
        for s1 in 1..n {
            for s2 in 1..n {
                if s1 + s2 < n {
                    continue;
                }
                let s12 = s1 + s2 - n;
                best = best.min((1u64 << n) + (1u64 << s12) - (1u64 << s1) - (1u64 << s2));
            }
        }
        ensure(scan.min_increase == best, || {
            format!(
                "n={n}: scan minimum {} but size-triple minimum {best}",
                scan.min_increase
            )
        })?;
        parts.push(format!(
            "n={n}: min {} at {:?}",
            scan.min_increase, scan.minimizers
        ));
    }
    Ok(parts.join("; "))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 K1 family counts", criterion_1),
        ("2 split family sweep", criterion_2),
        ("3 covering family sweep", criterion_3),
        ("4 pair increase identity and bound", criterion_4),
        ("5 single attribute increase suite", criterion_5),
        ("6 enumeration vs brute force", criterion_6),
        ("7 forall monotonicity", criterion_7),
        ("8 contranominal counts", criterion_8),
        ("9 minimal covering increase probe", criterion_9),
    ];
    let mut failed = 0;
    let mut out = std::io::stdout().lock();
    for (name, run) in &criteria {
        let outcome = run();
        let line = match &outcome {
            Ok(detail) => format!("[PASS] criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                format!("[FAIL] criterion {name}: {detail}")
            }
        };
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(
        out,
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
