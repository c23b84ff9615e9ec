//! Attribute generalization and the accounting of concept-count changes.
//!
//! Adding an attribute `a` to a context `K` embeds `B(K)` into `B(K_a)`; the
//! concepts that are not images of that embedding have extents `A ∩ a'` for
//! extents `A` of `K` with `A ∩ a'` not closed in `K`. Their number `h(a)` is
//! the exact increase. Merging two attributes `a, b` into `s` with
//! `s' = a' ∪ b'` is removing both and adding `s`, so every change in size
//! can be expressed through `h` over the context without `a` and `b`.

use std::collections::HashSet;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::bitset::BitSet;
use crate::context::{FormalContext, ObjectSet};
use crate::error::{FcaError, Result};
use crate::lattice::{count_concepts, for_each_concept, Concept, DEFAULT_MAX_CONCEPTS};

/// Exact rational threshold `num/den` in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Ratio> {
        if den == 0 || num == 0 || num > den {
            return Err(FcaError::Parameter(format!(
                "alpha must be a ratio in (0, 1], got {num}/{den}"
            )));
        }
        Ok(Ratio { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `hits >= alpha * size`, compared without rounding.
    pub fn reached(&self, hits: usize, size: usize) -> bool {
        hits as u128 * self.den as u128 >= self.num as u128 * size as u128
    }
}

impl FromStr for Ratio {
    type Err = FcaError;

    fn from_str(s: &str) -> Result<Ratio> {
        let bad = || FcaError::Parameter(format!("expected alpha as p/q, got `{s}`"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        Ratio::new(p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// When an object has a generalized attribute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// At least one member attribute.
    Exists,
    /// Every member attribute.
    Forall,
    /// At least the given proportion of member attributes.
    Alpha(Ratio),
}

impl FromStr for Mode {
    type Err = FcaError;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "exists" => Ok(Mode::Exists),
            "forall" => Ok(Mode::Forall),
            _ => match s.strip_prefix("alpha:") {
                Some(ratio) => Ok(Mode::Alpha(ratio.parse()?)),
                None => Err(FcaError::Parameter(format!(
                    "unknown mode `{s}` (expected exists, forall or alpha:p/q)"
                ))),
            },
        }
    }
}

/// A group of attributes merged into one generalized attribute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub name: Option<String>,
    pub members: Vec<String>,
}

impl Block {
    pub fn new<S: Into<String>>(name: Option<&str>, members: impl IntoIterator<Item = S>) -> Block {
        Block {
            name: name.map(str::to_string),
            members: members.into_iter().map(Into::into).collect(),
        }
    }

    /// Attribute label in the generalized context: the block name, or the
    /// member names joined with `+`.
    pub fn label(&self) -> String {
        match &self.name {
            Some(name) => name.clone(),
            None => self.members.join("+"),
        }
    }
}

/// Reads blocks in the `name = m1, m2, ...` line format.
///
/// Blank lines and `#` comments are skipped; a line without `=` is an
/// unnamed block.
pub fn parse_scheme_blocks(text: &str) -> Result<Vec<Block>> {
    let mut blocks = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: &str| FcaError::Parse {
            line: i + 1,
            message: message.to_string(),
        };
        let (name, rest) = match line.split_once('=') {
            Some((name, rest)) => {
                let name = name.trim();
                if name.is_empty() {
                    return Err(err("empty block name before `=`"));
                }
                (Some(name), rest)
            }
            None => (None, line),
        };
        let members: Vec<&str> = rest.split(',').map(str::trim).collect();
        if members.iter().any(|m| m.is_empty()) {
            return Err(err("empty attribute name in block"));
        }
        blocks.push(Block::new(name, members));
    }
    Ok(blocks)
}

/// A partition of the attributes plus the merge semantics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizationScheme {
    blocks: Vec<Block>,
    mode: Mode,
}

impl GeneralizationScheme {
    pub fn new(blocks: Vec<Block>, mode: Mode) -> GeneralizationScheme {
        GeneralizationScheme { blocks, mode }
    }

    /// One singleton block per attribute.
    pub fn identity(ctx: &FormalContext, mode: Mode) -> GeneralizationScheme {
        let blocks = ctx
            .attribute_names()
            .iter()
            .map(|m| Block::new(None, [m.as_str()]))
            .collect();
        GeneralizationScheme { blocks, mode }
    }

    /// Completes `blocks` with singletons for every attribute they do not
    /// mention. Blocks are ordered by the position of their first member.
    pub fn merging(ctx: &FormalContext, blocks: Vec<Block>, mode: Mode) -> Result<GeneralizationScheme> {
        let mut seen = HashSet::new();
        let mut keyed = Vec::with_capacity(ctx.num_attributes());
        for block in blocks {
            let mut first = usize::MAX;
            for member in &block.members {
                let m = ctx
                    .attribute_index(member)
                    .ok_or_else(|| FcaError::Scheme(format!("unknown attribute `{member}`")))?;
                if !seen.insert(m) {
                    return Err(FcaError::Scheme(format!("attribute `{member}` in two blocks")));
                }
                first = first.min(m);
            }
            keyed.push((first, block));
        }
        for (m, name) in ctx.attribute_names().iter().enumerate() {
            if !seen.contains(&m) {
                keyed.push((m, Block::new(None, [name.as_str()])));
            }
        }
        keyed.sort_by_key(|(first, _)| *first);
        Ok(GeneralizationScheme {
            blocks: keyed.into_iter().map(|(_, b)| b).collect(),
            mode,
        })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Member indices per block; fails unless the blocks partition `M`.
    pub fn resolve(&self, ctx: &FormalContext) -> Result<Vec<Vec<usize>>> {
        let mut owner = vec![None; ctx.num_attributes()];
        let mut resolved = Vec::with_capacity(self.blocks.len());
        for (b, block) in self.blocks.iter().enumerate() {
            if block.members.is_empty() {
                return Err(FcaError::Scheme(format!("block `{}` is empty", block.label())));
            }
            let mut members = Vec::with_capacity(block.members.len());
            for name in &block.members {
                let m = ctx
                    .attribute_index(name)
                    .ok_or_else(|| FcaError::Scheme(format!("unknown attribute `{name}`")))?;
                if owner[m].replace(b).is_some() {
                    return Err(FcaError::Scheme(format!("attribute `{name}` in two blocks")));
                }
                members.push(m);
            }
            resolved.push(members);
        }
        if let Some(m) = owner.iter().position(Option::is_none) {
            return Err(FcaError::Scheme(format!(
                "attribute `{}` is not covered",
                ctx.attribute_names()[m]
            )));
        }
        Ok(resolved)
    }
}

/// The context `(G, S, J)` with one column per block.
pub fn generalize(ctx: &FormalContext, scheme: &GeneralizationScheme) -> Result<FormalContext> {
    let blocks = scheme.resolve(ctx)?;
    let labels: Vec<String> = scheme.blocks.iter().map(Block::label).collect();
    let width = blocks.len();
    let rows = ctx
        .rows()
        .iter()
        .map(|row| {
            BitSet::from_indices(
                width,
                blocks.iter().enumerate().filter_map(|(s, members)| {
                    let hits = members.iter().filter(|&&m| row.contains(m)).count();
                    let has = match scheme.mode {
                        Mode::Exists => hits > 0,
                        Mode::Forall => hits == members.len(),
                        Mode::Alpha(alpha) => alpha.reached(hits, members.len()),
                    };
                    has.then_some(s)
                }),
            )
        })
        .collect();
    FormalContext::new(ctx.object_names().to_vec(), labels, rows).map_err(|e| match e {
        FcaError::NameCollision { name, .. } => {
            FcaError::Scheme(format!("generalized attribute `{name}` defined twice"))
        }
        other => other,
    })
}

/// `K_0s`: drops `a` and `b` and appends `name` with extent `a' ∪ b'`.
pub fn merge_exists(ctx: &FormalContext, a: &str, b: &str, name: &str) -> Result<FormalContext> {
    let (ia, ib) = pair_indices(ctx, a, b)?;
    let merged = ObjectSet::from_bits(ctx.column(ia).union(ctx.column(ib)));
    ctx.remove_attributes(&[a, b])?.add_attribute(name, &merged)
}

fn pair_indices(ctx: &FormalContext, a: &str, b: &str) -> Result<(usize, usize)> {
    let lookup = |name: &str| {
        ctx.attribute_index(name).ok_or_else(|| FcaError::UnknownName {
            kind: "attribute",
            name: name.to_string(),
        })
    };
    let (ia, ib) = (lookup(a)?, lookup(b)?);
    if ia == ib {
        return Err(FcaError::Parameter(format!("attribute `{a}` paired with itself")));
    }
    Ok((ia, ib))
}

fn fresh_attribute(ctx: &FormalContext, base: &str) -> String {
    let mut name = base.to_string();
    let mut i = 1;
    while ctx.attribute_index(&name).is_some() {
        name = format!("{base}#{i}");
        i += 1;
    }
    name
}

fn check_width(ctx: &FormalContext, set: &ObjectSet) -> Result<()> {
    if set.len() != ctx.num_objects() {
        return Err(FcaError::Dimension {
            expected: ctx.num_objects(),
            found: set.len(),
        });
    }
    Ok(())
}

/// The image of `c` under the embedding `B(K) -> B(K_a)`: `(A, B ∪ {a})`
/// when `A ⊆ a'`, `(A, B)` otherwise.
pub fn phi_a(k: &FormalContext, k_a: &FormalContext, a: &str, c: &Concept) -> Result<Concept> {
    let ia = k_a.attribute_index(a).ok_or_else(|| FcaError::UnknownName {
        kind: "attribute",
        name: a.to_string(),
    })?;
    if ia != k.num_attributes() || &k_a.remove_attributes(&[a])? != k {
        return Err(FcaError::Contract(format!(
            "second context is not the first with `{a}` appended"
        )));
    }
    if !c.is_concept_of(k) {
        return Err(FcaError::Contract(
            "argument is not a concept of the source context".into(),
        ));
    }
    let mut intent = c.intent().resized(k_a.num_attributes());
    if c.extent().is_subset(k_a.column(ia)) {
        intent.insert(ia);
    }
    let image = Concept::from_raw(k_a, c.extent().bits().clone(), intent);
    debug_assert!(image.is_concept_of(k_a));
    Ok(image)
}

/// Every extent of `ctx`, for membership tests.
pub(crate) fn extent_set(ctx: &FormalContext) -> Result<HashSet<BitSet>> {
    let mut extents = HashSet::new();
    let mut overflow = false;
    for_each_concept(ctx, |extent, _| {
        if extents.len() == DEFAULT_MAX_CONCEPTS {
            overflow = true;
            return ControlFlow::Break(());
        }
        extents.insert(extent.clone());
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(FcaError::Capacity(format!(
            "more than {DEFAULT_MAX_CONCEPTS} concepts"
        )));
    }
    Ok(extents)
}

/// `{A ∩ x | A ∈ extents, A ∩ x ∉ extents}`, lectically sorted.
fn restrictions_outside(extents: &HashSet<BitSet>, x: &BitSet) -> Vec<BitSet> {
    let found: HashSet<BitSet> = extents
        .iter()
        .map(|a| a.intersection(x))
        .filter(|r| !extents.contains(r))
        .collect();
    let mut out: Vec<BitSet> = found.into_iter().collect();
    out.sort_by(|a, b| a.lectic_cmp(b));
    out
}

/// `H(a)`: extents gained by adding an attribute with extent `a_extent`.
pub fn new_extents(k: &FormalContext, a_extent: &ObjectSet) -> Result<Vec<ObjectSet>> {
    check_width(k, a_extent)?;
    let extents = extent_set(k)?;
    Ok(restrictions_outside(&extents, a_extent)
        .into_iter()
        .map(ObjectSet::from_bits)
        .collect())
}

/// `∅'' ∖ a' ≠ ∅`: adding the attribute creates a new extent from every old one.
pub fn doubling_condition(k: &FormalContext, a_extent: &ObjectSet) -> Result<bool> {
    check_width(k, a_extent)?;
    let least = k.object_closure(&BitSet::new(k.num_objects()));
    Ok(!least.is_subset(a_extent))
}

/// Adds an attribute with extent `G ∖ ∅''` (which must be `a_extent`) and
/// reports whether the concept count exactly doubles.
pub fn check_doubling(k: &FormalContext, a_extent: &ObjectSet) -> Result<bool> {
    check_width(k, a_extent)?;
    let least = k.object_closure(&BitSet::new(k.num_objects()));
    if least.is_empty() {
        return Err(FcaError::Contract("∅'' is empty".into()));
    }
    if *a_extent.bits() != least.complement() {
        return Err(FcaError::Contract("added extent must be G ∖ ∅''".into()));
    }
    let k_a = k.add_attribute(&fresh_attribute(k, "a"), a_extent)?;
    Ok(count_concepts(&k_a) == 2 * count_concepts(k))
}

/// `2^(sa+sb) − 2^sa − 2^sb + 1`, the largest possible increase from merging
/// two attributes with extents of sizes `sa` and `sb`.
pub fn exists_bound(size_a: usize, size_b: usize) -> Result<u64> {
    if size_a + size_b > 62 {
        return Err(FcaError::Capacity(format!(
            "bound exponent {} exceeds 62",
            size_a + size_b
        )));
    }
    Ok((1u64 << (size_a + size_b)) + 1 - (1u64 << size_a) - (1u64 << size_b))
}

/// Accounting for merging attributes `a` and `b` of a context `K12`.
///
/// `K00` is `K12` without `a` and `b`; every `h_*` is measured against
/// `K00`. `h_pair` is the measured increase `|B(K12)| − |B(K00)|` and
/// `h_pair_formula` the inclusion–exclusion estimate `h_a + h_b − h_a_and_b`;
/// `identity_holds` records whether they agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncreaseReport {
    pub a: String,
    pub b: String,
    pub size_a: usize,
    pub size_b: usize,
    pub h_a: u64,
    pub h_b: u64,
    pub h_a_and_b: u64,
    pub h_a_or_b: u64,
    pub h_pair: u64,
    pub h_pair_formula: i64,
    pub identity_holds: bool,
    /// `|B(K0s)| − |B(K12)|`; negative when merging shrinks the lattice.
    pub realized_increase: i64,
    pub upper_bound: u64,
    pub d0: u64,
    pub d1: u64,
    pub d2: u64,
    pub disjoint: bool,
    pub empty_is_extent: bool,
    pub count_k00: u64,
    pub count_k12: u64,
    pub count_k0s: u64,
}

impl IncreaseReport {
    /// `h(a∪b) − h(a) − h(b) + h(a∩b)`.
    pub fn formula_increase(&self) -> i64 {
        self.h_a_or_b as i64 - self.h_pair_formula
    }

    pub fn within_bound(&self) -> bool {
        self.realized_increase <= self.upper_bound as i64
    }

    /// Machine-readable `key=value` pairs in report order.
    pub fn key_values(&self) -> Vec<(&'static str, String)> {
        vec![
            ("h_a", self.h_a.to_string()),
            ("h_b", self.h_b.to_string()),
            ("h_a_and_b", self.h_a_and_b.to_string()),
            ("h_a_or_b", self.h_a_or_b.to_string()),
            ("h_pair", self.h_pair.to_string()),
            ("increase", self.realized_increase.to_string()),
            ("bound", self.upper_bound.to_string()),
            ("d0", self.d0.to_string()),
            ("d1", self.d1.to_string()),
            ("d2", self.d2.to_string()),
            ("h_pair_formula", self.h_pair_formula.to_string()),
            ("identity_holds", self.identity_holds.to_string()),
        ]
    }
}

/// Concept counts of several contexts, on scoped threads where the platform
/// has them and inline otherwise.
fn count_in_parallel<const N: usize>(contexts: [&FormalContext; N]) -> [u64; N] {
    std::thread::scope(|s| {
        let handles = contexts.map(|ctx| {
            std::thread::Builder::new()
                .spawn_scoped(s, move || count_concepts(ctx))
                .map_err(|_| ctx)
        });
        handles.map(|h| match h {
            Ok(handle) => handle.join().expect("enumeration thread"),
            Err(ctx) => count_concepts(ctx),
        })
    })
}

pub fn pair_increase_report(k: &FormalContext, a: &str, b: &str) -> Result<IncreaseReport> {
    let (ia, ib) = pair_indices(k, a, b)?;
    let (col_a, col_b) = (k.column(ia).clone(), k.column(ib).clone());
    let both = col_a.intersection(&col_b);
    let either = col_a.union(&col_b);
    let upper_bound = exists_bound(col_a.count(), col_b.count())?;

    let k00 = k.remove_attributes(&[a, b])?;
    let extents = extent_set(&k00)?;
    let h = |x: &BitSet| restrictions_outside(&extents, x).len() as u64;
    let (h_a, h_b, h_a_and_b, h_a_or_b) = (h(&col_a), h(&col_b), h(&both), h(&either));
    let below = |x: &BitSet| extents.iter().filter(|e| e.is_subset(x)).count() as u64;

    let count_k00 = extents.len() as u64;
    let name = fresh_attribute(&k00, &format!("{a}+{b}"));
    let k0s = k00.add_attribute(&name, &either.clone().into())?;
    let k01 = k00.add_attribute(a, &col_a.clone().into())?;
    let k02 = k00.add_attribute(b, &col_b.clone().into())?;
    let [count_k12, count_k0s, count_k01, count_k02] = count_in_parallel([k, &k0s, &k01, &k02]);

    for (what, measured, predicted) in [
        ("a", count_k01, count_k00 + h_a),
        ("b", count_k02, count_k00 + h_b),
        ("a∪b", count_k0s, count_k00 + h_a_or_b),
    ] {
        if measured != predicted {
            return Err(FcaError::Verification(format!(
                "adding {what} to K00 gives {measured} concepts, h predicts {predicted}"
            )));
        }
    }
    if count_k12 < count_k00 {
        return Err(FcaError::Verification(
            "removing attributes added concepts".into(),
        ));
    }
    let h_pair = count_k12 - count_k00;
    let realized_increase = count_k0s as i64 - count_k12 as i64;
    if realized_increase != h_a_or_b as i64 - h_pair as i64 {
        return Err(FcaError::Verification(format!(
            "realized increase {realized_increase} != h(a∪b) - h(a,b)"
        )));
    }
    let h_pair_formula = h_a as i64 + h_b as i64 - h_a_and_b as i64;

    Ok(IncreaseReport {
        a: a.to_string(),
        b: b.to_string(),
        size_a: col_a.count(),
        size_b: col_b.count(),
        h_a,
        h_b,
        h_a_and_b,
        h_a_or_b,
        h_pair,
        h_pair_formula,
        identity_holds: h_pair as i64 == h_pair_formula,
        realized_increase,
        upper_bound,
        d0: below(&either),
        d1: below(&col_a),
        d2: below(&col_b),
        disjoint: both.is_empty(),
        empty_is_extent: extents.contains(&BitSet::new(k.num_objects())),
        count_k00,
        count_k12,
        count_k0s,
    })
}
