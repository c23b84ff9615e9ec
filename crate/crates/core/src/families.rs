//! Context families with closed-form concept counts.
//!
//! All families share the object set `1..n, g1` and the attribute set
//! `1..n, m1, m2`: the `n x n` block is the contranominal scale, `g1` has
//! every numbered attribute and neither `m1` nor `m2`, and the columns of
//! `m1`/`m2` select numbered objects. Merging `m1` and `m2` existentially
//! turns any such context whose columns cover `1..n` into a contranominal
//! scale of size `n + 1`.

use crate::bitset::BitSet;
use crate::context::{FormalContext, ObjectSet};
use crate::error::{FcaError, Result};
use crate::lattice::count_concepts;

/// Largest contranominal scale the generator will build.
pub const CONTRANOMINAL_MAX: usize = 24;

/// Exponents above this would overflow the `u64` counts.
pub const MAX_EXPONENT: usize = 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    /// `m1' = {1}`, `m2' = {2..n}`.
    K1,
    /// `m1' = {1..k}`, `m2' = {k+1..n}`.
    Kk,
    /// Arbitrary columns covering `1..n`.
    Cover,
}

/// Closed-form counts before and after merging `m1` and `m2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyPrediction {
    pub initial_count: u64,
    pub generalized_count: u64,
    pub increase: u64,
    pub family: FamilyTag,
}

fn pow2(e: usize) -> Result<u64> {
    if e > MAX_EXPONENT {
        return Err(FcaError::Capacity(format!("2^{e} overflows the count range")));
    }
    Ok(1u64 << e)
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// The contranominal scale `(E, E, ≠)` on `E = {1..n}`.
pub fn contranominal(n: usize) -> Result<FormalContext> {
    if n > CONTRANOMINAL_MAX {
        return Err(FcaError::Capacity(format!(
            "contranominal scale limited to n <= {CONTRANOMINAL_MAX}, got {n}"
        )));
    }
    FormalContext::from_fn(numbered(n), numbered(n), |g, m| g != m)
}

fn two_column_family(n: usize, m1: &BitSet, m2: &BitSet) -> Result<FormalContext> {
    let g1 = n;
    let (a1, a2) = (n, n + 1);
    let mut objects = numbered(n);
    objects.push("g1".into());
    let mut attributes = numbered(n);
    attributes.push("m1".into());
    attributes.push("m2".into());
    FormalContext::from_fn(objects, attributes, |g, m| {
        if m < n {
            g == g1 || g != m
        } else if g == g1 {
            false
        } else if m == a1 {
            m1.contains(g)
        } else {
            debug_assert_eq!(m, a2);
            m2.contains(g)
        }
    })
}

/// `K¹ₙ`: object 1 has `m1`, objects `2..n` have `m2`.
pub fn family_k1(n: usize) -> Result<FormalContext> {
    family_kk(n, 1)
}

/// `Kᵏₙ`: objects `1..k` have `m1`, objects `k+1..n` have `m2`.
pub fn family_kk(n: usize, k: usize) -> Result<FormalContext> {
    check_split(n, k)?;
    if n > CONTRANOMINAL_MAX {
        return Err(FcaError::Capacity(format!(
            "family size limited to n <= {CONTRANOMINAL_MAX}, got {n}"
        )));
    }
    let m1 = BitSet::from_indices(n, 0..k);
    let m2 = BitSet::from_indices(n, k..n);
    two_column_family(n, &m1, &m2)
}

fn check_split(n: usize, k: usize) -> Result<()> {
    if n < 2 {
        return Err(FcaError::Parameter(format!("family needs n >= 2, got {n}")));
    }
    if k == 0 || k >= n {
        return Err(FcaError::Parameter(format!(
            "split needs 1 <= k < n, got k={k}, n={n}"
        )));
    }
    Ok(())
}

/// A covering-family context together with the shape of its two columns.
#[derive(Clone, Debug)]
pub struct CoverFamily {
    pub context: FormalContext,
    /// `m1' ⊆ m2'` or `m2' ⊆ m1'`; merging such columns cannot add concepts.
    pub comparable: bool,
}

/// Family context with `m1'`, `m2'` given as subsets of `1..n` (index `i`
/// stands for object `i + 1`). The columns must cover `1..n`.
///
/// Comparable columns (which forces one of them to be all of `1..n`) are
/// built anyway and flagged.
pub fn family_cover(n: usize, m1_ext: &ObjectSet, m2_ext: &ObjectSet) -> Result<CoverFamily> {
    if !(2..=CONTRANOMINAL_MAX).contains(&n) {
        return Err(FcaError::Parameter(format!(
            "covering family needs 2 <= n <= {CONTRANOMINAL_MAX}, got {n}"
        )));
    }
    for ext in [m1_ext, m2_ext] {
        if ext.len() != n {
            return Err(FcaError::Dimension {
                expected: n,
                found: ext.len(),
            });
        }
    }
    if m1_ext.union(m2_ext).count() != n {
        return Err(FcaError::Parameter(format!("columns do not cover 1..{n}")));
    }
    let comparable = m1_ext.is_subset(m2_ext) || m2_ext.is_subset(m1_ext);
    Ok(CoverFamily {
        context: two_column_family(n, m1_ext, m2_ext)?,
        comparable,
    })
}

/// The increase `fₙ(k) = 2ⁿ − 2ᵏ − 2ⁿ⁻ᵏ + 1` from merging `m1`, `m2` in `Kᵏₙ`.
pub fn split_increase(n: usize, k: usize) -> Result<u64> {
    check_split(n, k)?;
    Ok(pow2(n)? + 1 - pow2(k)? - pow2(n - k)?)
}

pub fn predicted_counts_kk(n: usize, k: usize) -> Result<FamilyPrediction> {
    check_split(n, k)?;
    let initial = pow2(n)? + pow2(n - k)? + pow2(k)? - 1;
    let generalized = pow2(n + 1)?;
    Ok(FamilyPrediction {
        initial_count: initial,
        generalized_count: generalized,
        increase: generalized - initial,
        family: FamilyTag::Kk,
    })
}

/// Counts for a two-column family with `|m1'| = s1`, `|m2'| = s2`,
/// `|m1' ∩ m2'| = s12` and numbered block of size `n`.
///
/// The union need not be all of `1..n`: after the merge the count is
/// `2ⁿ + 2^|m1' ∪ m2'|`, which is `2ⁿ⁺¹` exactly for coverings.
pub fn predicted_counts_cover(n: usize, s1: usize, s2: usize, s12: usize) -> Result<FamilyPrediction> {
    if s1 > n || s2 > n || s12 > s1.min(s2) || s1 + s2 - s12 > n {
        return Err(FcaError::Parameter(format!(
            "inconsistent sizes n={n}, |m1'|={s1}, |m2'|={s2}, |m1'∩m2'|={s12}"
        )));
    }
    let union = s1 + s2 - s12;
    let initial = pow2(n)? + pow2(s1)? + pow2(s2)? - pow2(s12)?;
    let generalized = pow2(n)? + pow2(union)?;
    Ok(FamilyPrediction {
        initial_count: initial,
        generalized_count: generalized,
        increase: generalized - initial,
        family: FamilyTag::Cover,
    })
}

/// Splits `k` maximizing `fₙ(k)` and the maximum itself.
pub fn optimal_split(n: usize) -> Result<(Vec<usize>, u64)> {
    if n < 2 {
        return Err(FcaError::Parameter(format!("family needs n >= 2, got {n}")));
    }
    let q = n / 2;
    let ks = if n.is_multiple_of(2) {
        vec![q]
    } else {
        vec![q, q + 1]
    };
    // (2^q - 1)^2 for n = 2q, (2^q - 1)(2^(q+1) - 1) for n = 2q + 1
    let best = (pow2(q)? - 1) * (pow2(n - q)? - 1);
    Ok((ks, best))
}

/// Every ordered pair `(m1', m2')` of proper subsets of `1..n` that covers
/// `1..n` with incomparable members.
pub fn proper_incomparable_coverings(n: usize) -> impl Iterator<Item = (ObjectSet, ObjectSet)> {
    assert!(n <= 20, "exhaustive covering scan limited to n <= 20");
    // each element is in m1 only, m2 only, or both: base-3 digits
    let total = 3usize.pow(n as u32);
    (0..total).filter_map(move |mut code| {
        let mut m1 = BitSet::new(n);
        let mut m2 = BitSet::new(n);
        for i in 0..n {
            match code % 3 {
                0 => m1.insert(i),
                1 => m2.insert(i),
                _ => {
                    m1.insert(i);
                    m2.insert(i);
                }
            }
            code /= 3;
        }
        let incomparable = !m1.is_subset(&m2) && !m2.is_subset(&m1);
        incomparable.then(|| (ObjectSet::from_bits(m1), ObjectSet::from_bits(m2)))
    })
}

/// Sizes `(|m1'|, |m2'|, |m1' ∩ m2'|)` of a covering.
pub type CoverSizes = (usize, usize, usize);

/// Outcome of scanning every proper incomparable covering of `1..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverScan {
    pub n: usize,
    pub coverings: usize,
    /// Smallest increase measured by enumeration.
    pub min_increase: u64,
    /// Distinct size triples attaining `min_increase`, sorted.
    pub minimizers: Vec<CoverSizes>,
    /// Coverings whose measured counts disagree with [`predicted_counts_cover`].
    pub mismatches: usize,
}

/// Enumerates both lattices for every proper incomparable covering of
/// `1..n` and records where the merge increase is smallest.
pub fn minimal_cover_increase(n: usize) -> Result<CoverScan> {
    if !(3..=10).contains(&n) {
        return Err(FcaError::Parameter(format!(
            "covering scan supports 3 <= n <= 10, got {n}"
        )));
    }
    let contranominal_next = pow2(n + 1)?;
    let mut scan = CoverScan {
        n,
        coverings: 0,
        min_increase: u64::MAX,
        minimizers: Vec::new(),
        mismatches: 0,
    };
    for (m1, m2) in proper_incomparable_coverings(n) {
        let family = family_cover(n, &m1, &m2)?;
        let ctx = &family.context;
        let initial = count_concepts(ctx);
        let merged = crate::generalization::merge_exists(ctx, "m1", "m2", "m12")?;
        let generalized = count_concepts(&merged);
        let sizes = (m1.count(), m2.count(), m1.intersection(&m2).count());
        let predicted = predicted_counts_cover(n, sizes.0, sizes.1, sizes.2)?;
        if predicted.initial_count != initial
            || predicted.generalized_count != generalized
            || generalized != contranominal_next
        {
            scan.mismatches += 1;
        }
        scan.coverings += 1;
        let increase = generalized.saturating_sub(initial);
        if increase < scan.min_increase {
            scan.min_increase = increase;
            scan.minimizers.clear();
        }
        if increase == scan.min_increase && !scan.minimizers.contains(&sizes) {
            scan.minimizers.push(sizes);
        }
    }
    scan.minimizers.sort();
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{brute_force_concepts, enumerate_concepts};

    fn objects(n: usize, labels: &[usize]) -> ObjectSet {
        ObjectSet::from_bits(BitSet::from_indices(n, labels.iter().map(|l| l - 1)))
    }

    #[test]
    fn contranominal_counts() {
        assert_eq!(count_concepts(&contranominal(3).unwrap()), 8);
        assert_eq!(count_concepts(&contranominal(0).unwrap()), 1);
        assert_eq!(brute_force_concepts(&contranominal(1).unwrap()).unwrap().len(), 2);
        assert!(matches!(contranominal(25), Err(FcaError::Capacity(_))));
    }

    #[test]
    fn k1_of_two_is_fig3_table() {
        let expected = FormalContext::from_table(
            &["1", "2", "g1"],
            &["1", "2", "m1", "m2"],
            &[".XX.", "X..X", "XX.."],
        )
        .unwrap();
        assert_eq!(family_k1(2).unwrap(), expected);
    }

    #[test]
    fn k1_counts_small_n() {
        assert_eq!(count_concepts(&family_k1(3).unwrap()), 13);
        assert_eq!(count_concepts(&family_k1(5).unwrap()), 49);
        assert!(matches!(family_k1(1), Err(FcaError::Parameter(_))));
    }

    #[test]
    fn kk_examples() {
        assert_eq!(family_kk(6, 1).unwrap(), family_k1(6).unwrap());
        // brute force count, and 16 + 4 + 4 - 1 from the closed form
        assert_eq!(brute_force_concepts(&family_kk(4, 2).unwrap()).unwrap().len(), 23);
        assert_eq!(predicted_counts_kk(4, 2).unwrap().initial_count, 23);
        assert!(matches!(family_kk(4, 0), Err(FcaError::Parameter(_))));
        assert!(matches!(family_kk(4, 4), Err(FcaError::Parameter(_))));
    }

    #[test]
    fn cover_examples() {
        let fam = family_cover(3, &objects(3, &[1, 2]), &objects(3, &[2, 3])).unwrap();
        assert!(!fam.comparable);
        assert_eq!(count_concepts(&fam.context), 14);
        let fam = family_cover(3, &objects(3, &[1]), &objects(3, &[2, 3])).unwrap();
        assert_eq!(fam.context, family_kk(3, 1).unwrap());
        assert_eq!(count_concepts(&fam.context), 13);
        let fam = family_cover(4, &objects(4, &[1, 2, 3]), &objects(4, &[2, 3, 4])).unwrap();
        assert_eq!(brute_force_concepts(&fam.context).unwrap().len(), 28);
    }

    #[test]
    fn cover_rejects_bad_columns() {
        let err = family_cover(3, &objects(3, &[1]), &objects(3, &[2])).unwrap_err();
        assert!(matches!(err, FcaError::Parameter(_)));
        let err = family_cover(3, &objects(4, &[1, 2, 3]), &objects(3, &[2])).unwrap_err();
        assert!(matches!(err, FcaError::Dimension { .. }));
    }

    #[test]
    fn comparable_cover_is_flagged_and_measured() {
        let fam = family_cover(3, &objects(3, &[1, 2]), &objects(3, &[1, 2, 3])).unwrap();
        assert!(fam.comparable);
        let merged = crate::generalization::merge_exists(&fam.context, "m1", "m2", "m12").unwrap();
        // m12' = m2', so the merge only drops m1
        assert!(count_concepts(&merged) <= count_concepts(&fam.context));
        let fam = family_cover(3, &objects(3, &[1, 2]), &objects(3, &[2, 3])).unwrap();
        assert!(!fam.comparable);
    }

    #[test]
    fn kk_predictions() {
        let p = predicted_counts_kk(20, 1).unwrap();
        assert_eq!(
            (p.initial_count, p.generalized_count, p.increase),
            (1572865, 2097152, 524287)
        );
        for n in 2..20 {
            for k in 1..n {
                assert_eq!(
                    predicted_counts_kk(n, k).unwrap(),
                    predicted_counts_kk(n, n - k).unwrap()
                );
                assert_eq!(
                    predicted_counts_kk(n, k).unwrap().increase,
                    split_increase(n, k).unwrap()
                );
            }
        }
        assert_eq!(predicted_counts_kk(5, 2).unwrap().increase, 21);
    }

    #[test]
    fn cover_predictions() {
        let p = predicted_counts_cover(3, 2, 2, 1).unwrap();
        assert_eq!((p.initial_count, p.generalized_count, p.increase), (14, 16, 2));
        for n in 2..12 {
            for k in 1..n {
                let cover = predicted_counts_cover(n, k, n - k, 0).unwrap();
                let split = predicted_counts_kk(n, k).unwrap();
                assert_eq!(cover.initial_count, split.initial_count);
                assert_eq!(cover.increase, split.increase);
            }
        }
        let p = predicted_counts_cover(4, 3, 3, 2).unwrap();
        assert_eq!((p.initial_count, p.increase), (28, 4));
        assert!(predicted_counts_cover(3, 4, 1, 0).is_err());
        assert!(predicted_counts_cover(3, 2, 2, 3).is_err());
        assert!(predicted_counts_cover(3, 3, 3, 1).is_err());
    }

    #[test]
    fn optimal_split_examples() {
        assert_eq!(optimal_split(4).unwrap(), (vec![2], 9));
        assert_eq!(optimal_split(5).unwrap(), (vec![2, 3], 21));
        assert_eq!(optimal_split(2).unwrap(), (vec![1], 1));
        assert!(optimal_split(1).is_err());
    }

    #[test]
    fn coverings_enumeration_n3() {
        let all: Vec<_> = proper_incomparable_coverings(3).collect();
        // ordered pairs: ({1,2},{2,3}) style overlaps (6) plus disjoint splits (6)
        assert_eq!(all.len(), 12);
        for (a, b) in &all {
            assert_eq!(a.union(b).count(), 3);
            assert!(!a.is_subset(b) && !b.is_subset(a));
        }
    }

    #[test]
    fn minimal_increase_small() {
        let scan = minimal_cover_increase(3).unwrap();
        assert_eq!(scan.mismatches, 0);
        assert_eq!(scan.min_increase, 2);
        assert_eq!(scan.minimizers, vec![(2, 2, 1)]);
    }

    #[test]
    fn lattice_of_k1_matches_enumeration() {
        let lat = enumerate_concepts(&family_k1(4).unwrap()).unwrap();
        assert_eq!(lat.len(), 25);
    }
}
