//! Concept enumeration, the concept order and the Hasse diagram.
//!
//! Enumeration is Close-by-One with a canonicity test: every closed set is
//! reached from exactly one parent by adding its smallest "new" element, so
//! no dictionary of seen closures is needed. The search runs over whichever
//! side of the context is smaller and the result is sorted into lectic order
//! of extents.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use crate::bitset::BitSet;
use crate::context::{AttributeSet, FormalContext, ObjectSet};
use crate::error::{FcaError, Result};

/// Default ceiling on the number of materialized concepts.
pub const DEFAULT_MAX_CONCEPTS: usize = 1 << 25;

/// Largest side the brute-force oracle accepts.
pub const BRUTE_FORCE_MAX_SIDE: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_concepts: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_concepts: DEFAULT_MAX_CONCEPTS,
        }
    }
}

/// A formal concept `(A, B)` with `A' = B` and `B' = A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Concept {
    extent: ObjectSet,
    intent: AttributeSet,
    origin: u64,
}

impl Concept {
    /// The concept generated by `objects`, i.e. `(A'', A')`.
    pub fn generated_by_objects(ctx: &FormalContext, objects: &ObjectSet) -> Result<Concept> {
        let intent = ctx.derive_objects(objects)?;
        let extent = ctx.derive_attributes(&intent)?;
        Ok(Concept {
            extent,
            intent,
            origin: ctx.fingerprint(),
        })
    }

    /// Checks that `(extent, intent)` is a concept of `ctx`.
    pub fn from_parts(ctx: &FormalContext, extent: ObjectSet, intent: AttributeSet) -> Result<Concept> {
        if ctx.derive_objects(&extent)? != intent || ctx.derive_attributes(&intent)? != extent {
            return Err(FcaError::Contract(format!(
                "({:?}, {:?}) is not a concept",
                ctx.object_labels(&extent),
                ctx.attribute_labels(&intent)
            )));
        }
        Ok(Concept {
            extent,
            intent,
            origin: ctx.fingerprint(),
        })
    }

    pub(crate) fn from_raw(ctx: &FormalContext, extent: BitSet, intent: BitSet) -> Concept {
        Concept {
            extent: extent.into(),
            intent: intent.into(),
            origin: ctx.fingerprint(),
        }
    }

    pub fn extent(&self) -> &ObjectSet {
        &self.extent
    }

    pub fn intent(&self) -> &AttributeSet {
        &self.intent
    }

    /// Fingerprint of the context this concept was built in.
    pub fn origin(&self) -> u64 {
        self.origin
    }

    /// Whether this concept belongs to `ctx` and is closed there.
    pub fn is_concept_of(&self, ctx: &FormalContext) -> bool {
        self.origin == ctx.fingerprint()
            && self.extent.len() == ctx.num_objects()
            && self.intent.len() == ctx.num_attributes()
            && ctx.intent_of(&self.extent) == *self.intent.bits()
            && ctx.extent_of(&self.intent) == *self.extent.bits()
    }
}

/// Concept hierarchy: `c1 <= c2` iff the extent of `c1` is contained in that of `c2`.
pub fn order_leq(c1: &Concept, c2: &Concept) -> Result<bool> {
    if c1.origin != c2.origin || c1.extent.len() != c2.extent.len() {
        return Err(FcaError::ContextMismatch);
    }
    Ok(c1.extent.is_subset(&c2.extent))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverEdge {
    pub lower: usize,
    pub upper: usize,
}

/// All concepts of a context in lectic order of their extents.
#[derive(Clone, Debug)]
pub struct ConceptLattice {
    context: FormalContext,
    concepts: Vec<Concept>,
    index: HashMap<BitSet, usize>,
}

impl ConceptLattice {
    fn from_concepts(ctx: &FormalContext, mut concepts: Vec<Concept>) -> ConceptLattice {
        concepts.sort_by(|a, b| a.extent.lectic_cmp(&b.extent));
        let index = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.extent.bits().clone(), i))
            .collect();
        ConceptLattice {
            context: ctx.clone(),
            concepts,
            index,
        }
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Concept> {
        self.concepts.get(i)
    }

    pub fn index_of_extent(&self, extent: &BitSet) -> Option<usize> {
        self.index.get(extent).copied()
    }

    pub fn contains_extent(&self, extent: &BitSet) -> bool {
        self.index.contains_key(extent)
    }

    /// Index of `(G, G')`.
    pub fn top(&self) -> usize {
        self.index[&BitSet::full(self.context.num_objects())]
    }

    /// Index of `(M', M)`.
    pub fn bottom(&self) -> usize {
        let ext = self
            .context
            .extent_of(&BitSet::full(self.context.num_attributes()));
        self.index[&ext]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.concepts[i].extent.is_subset(&self.concepts[j].extent)
    }

    /// Extents as a set, for membership tests.
    pub fn extents(&self) -> impl Iterator<Item = &ObjectSet> {
        self.concepts.iter().map(|c| &c.extent)
    }
}

/// One side of the Close-by-One search. `item_rows[i]` is the set of dual
/// elements related to item `i`; `dual_cols[d]` the items related to `d`.
struct Search<'a> {
    item_rows: &'a [BitSet],
    dual_cols: &'a [BitSet],
}

impl Search<'_> {
    fn root(&self, n_items: usize, n_dual: usize) -> (BitSet, BitSet) {
        let dual = BitSet::full(n_dual);
        let mut items = BitSet::full(n_items);
        for col in self.dual_cols {
            items.intersect_with(col);
        }
        (items, dual)
    }

    fn run<F>(&self, items: &BitSet, dual: &BitSet, start: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&BitSet, &BitSet) -> ControlFlow<()>,
    {
        visit(items, dual)?;
        let n = self.item_rows.len();
        for j in start..n {
            if items.contains(j) {
                continue;
            }
            let next_dual = dual.intersection(&self.item_rows[j]);
            // canonicity: no item below j outside `items` may join the closure
            let canonical = (0..j)
                .filter(|&i| !items.contains(i))
                .all(|i| !next_dual.is_subset(&self.item_rows[i]));
            if !canonical {
                continue;
            }
            let mut next_items = items.clone();
            next_items.insert(j);
            for i in j + 1..n {
                if !items.contains(i) && next_dual.is_subset(&self.item_rows[i]) {
                    next_items.insert(i);
                }
            }
            self.run(&next_items, &next_dual, j + 1, visit)?;
        }
        ControlFlow::Continue(())
    }
}

/// Streams every concept as `(extent, intent)` bit sets, in search order.
///
/// Returning `ControlFlow::Break` from `visit` stops the enumeration.
pub fn for_each_concept<F>(ctx: &FormalContext, mut visit: F)
where
    F: FnMut(&BitSet, &BitSet) -> ControlFlow<()>,
{
    let (g, m) = (ctx.num_objects(), ctx.num_attributes());
    if g <= m {
        let search = Search {
            item_rows: ctx.rows(),
            dual_cols: ctx.columns(),
        };
        let (items, dual) = search.root(g, m);
        let _ = search.run(&items, &dual, 0, &mut visit);
    } else {
        let search = Search {
            item_rows: ctx.columns(),
            dual_cols: ctx.rows(),
        };
        let (items, dual) = search.root(m, g);
        let _ = search.run(&items, &dual, 0, &mut |intent, extent| visit(extent, intent));
    }
}

/// `|B(K)|` without materializing the concepts.
pub fn count_concepts(ctx: &FormalContext) -> u64 {
    let mut n = 0u64;
    for_each_concept(ctx, |_, _| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

pub fn enumerate_concepts(ctx: &FormalContext) -> Result<ConceptLattice> {
    enumerate_concepts_with(ctx, &EnumerationLimits::default())
}

/// Enumerates all concepts, failing once more than `limits.max_concepts` are found.
pub fn enumerate_concepts_with(ctx: &FormalContext, limits: &EnumerationLimits) -> Result<ConceptLattice> {
    let mut concepts = Vec::new();
    let mut overflow = false;
    for_each_concept(ctx, |extent, intent| {
        if concepts.len() == limits.max_concepts {
            overflow = true;
            return ControlFlow::Break(());
        }
        concepts.push(Concept::from_raw(ctx, extent.clone(), intent.clone()));
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(FcaError::Capacity(format!(
            "more than {} concepts",
            limits.max_concepts
        )));
    }
    Ok(ConceptLattice::from_concepts(ctx, concepts))
}

/// Test oracle: closes every subset of the smaller side and deduplicates.
///
/// Derivation here scans single incidence bits so it shares nothing with the
/// word-parallel operators used by [`enumerate_concepts`].
pub fn brute_force_concepts(ctx: &FormalContext) -> Result<ConceptLattice> {
    let (g, m) = (ctx.num_objects(), ctx.num_attributes());
    let side = g.min(m);
    if side > BRUTE_FORCE_MAX_SIDE {
        return Err(FcaError::Capacity(format!(
            "brute force needs min(|G|, |M|) <= {BRUTE_FORCE_MAX_SIDE}, got {side}"
        )));
    }
    let objects_prime = |objs: &[bool]| -> Vec<bool> {
        (0..m)
            .map(|j| (0..g).all(|i| !objs[i] || ctx.incidence(i, j)))
            .collect()
    };
    let attributes_prime = |atts: &[bool]| -> Vec<bool> {
        (0..g)
            .map(|i| (0..m).all(|j| !atts[j] || ctx.incidence(i, j)))
            .collect()
    };
    let mut extents: HashSet<Vec<bool>> = HashSet::new();
    for mask in 0u64..(1u64 << side) {
        let subset: Vec<bool> = (0..side).map(|i| mask >> i & 1 == 1).collect();
        let extent = if g <= m {
            attributes_prime(&objects_prime(&subset))
        } else {
            attributes_prime(&subset)
        };
        extents.insert(extent);
    }
    let to_bits = |v: &[bool]| BitSet::from_indices(v.len(), (0..v.len()).filter(|&i| v[i]));
    let concepts = extents
        .into_iter()
        .map(|ext| {
            let intent = objects_prime(&ext);
            Concept::from_raw(ctx, to_bits(&ext), to_bits(&intent))
        })
        .collect();
    Ok(ConceptLattice::from_concepts(ctx, concepts))
}

/// Hasse diagram edges, sorted by `(lower, upper)`.
///
/// Upper neighbours of `(A, B)` are found with Lindig's test: the closure of
/// `A ∪ {g}` is a neighbour iff it adds no object still marked minimal.
pub fn covering_relation(lat: &ConceptLattice) -> Vec<CoverEdge> {
    let ctx = lat.context();
    let mut edges = Vec::new();
    for (lower, concept) in lat.concepts().iter().enumerate() {
        let extent = concept.extent().bits();
        let mut minimal = extent.complement();
        for g in extent.complement().iter() {
            let mut grown = extent.clone();
            grown.insert(g);
            let closed = ctx.object_closure(&grown);
            let mut extra = closed.difference(extent);
            extra.remove(g);
            if extra.is_disjoint(&minimal) {
                let upper = lat.index[&closed];
                edges.push(CoverEdge { lower, upper });
            } else {
                minimal.remove(g);
            }
        }
    }
    edges.sort();
    edges.dedup();
    edges
}
