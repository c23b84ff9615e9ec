//! Binary formal contexts and their derivation operators.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};
use std::ops::Deref;

use crate::bitset::BitSet;
use crate::error::{FcaError, Result};

/// A set of objects of one particular context.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ObjectSet(BitSet);

/// A set of attributes of one particular context.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AttributeSet(BitSet);

macro_rules! set_newtype {
    ($ty:ident) => {
        impl $ty {
            pub fn from_bits(bits: BitSet) -> Self {
                $ty(bits)
            }

            pub fn bits(&self) -> &BitSet {
                &self.0
            }

            pub fn into_bits(self) -> BitSet {
                self.0
            }
        }

        impl Deref for $ty {
            type Target = BitSet;

            fn deref(&self) -> &BitSet {
                &self.0
            }
        }

        impl From<BitSet> for $ty {
            fn from(bits: BitSet) -> Self {
                $ty(bits)
            }
        }
    };
}

set_newtype!(ObjectSet);
set_newtype!(AttributeSet);

/// A finite binary context `(G, M, I)`.
///
/// Incidence is stored twice, as object rows (width |M|) and attribute
/// columns (width |G|). Both views are built together and never mutated.
#[derive(Clone, Debug)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<BitSet>,
    cols: Vec<BitSet>,
    fingerprint: u64,
}

impl PartialEq for FormalContext {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.attributes == other.attributes && self.rows == other.rows
    }
}

impl Eq for FormalContext {}

fn check_unique(kind: &'static str, names: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(names.len());
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(FcaError::NameCollision {
                kind,
                name: name.clone(),
            });
        }
    }
    Ok(())
}

impl FormalContext {
    /// Builds a context from object rows; `rows[g]` holds the attributes of object `g`.
    pub fn new(objects: Vec<String>, attributes: Vec<String>, rows: Vec<BitSet>) -> Result<Self> {
        check_unique("object", &objects)?;
        check_unique("attribute", &attributes)?;
        if rows.len() != objects.len() {
            return Err(FcaError::Dimension {
                expected: objects.len(),
                found: rows.len(),
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != attributes.len()) {
            return Err(FcaError::Dimension {
                expected: attributes.len(),
                found: bad.len(),
            });
        }
        let mut cols = vec![BitSet::new(objects.len()); attributes.len()];
        for (g, row) in rows.iter().enumerate() {
            for m in row.iter() {
                cols[m].insert(g);
            }
        }
        let mut hasher = DefaultHasher::new();
        objects.hash(&mut hasher);
        attributes.hash(&mut hasher);
        rows.hash(&mut hasher);
        Ok(FormalContext {
            objects,
            attributes,
            rows,
            cols,
            fingerprint: hasher.finish(),
        })
    }

    pub fn from_fn<F>(objects: Vec<String>, attributes: Vec<String>, mut has: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> bool,
    {
        let width = attributes.len();
        let rows = (0..objects.len())
            .map(|g| BitSet::from_indices(width, (0..width).filter(|&m| has(g, m))))
            .collect();
        FormalContext::new(objects, attributes, rows)
    }

    /// Builds a context from one cross string per object, `'X'` for incidence
    /// and `'.'` otherwise.
    pub fn from_table(objects: &[&str], attributes: &[&str], rows: &[&str]) -> Result<Self> {
        if rows.len() != objects.len() {
            return Err(FcaError::Dimension {
                expected: objects.len(),
                found: rows.len(),
            });
        }
        let mut bits = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let cells: Vec<char> = row.chars().collect();
            if cells.len() != attributes.len() {
                return Err(FcaError::Dimension {
                    expected: attributes.len(),
                    found: cells.len(),
                });
            }
            let mut set = BitSet::new(attributes.len());
            for (m, c) in cells.into_iter().enumerate() {
                match c {
                    'X' => set.insert(m),
                    '.' => {}
                    other => {
                        return Err(FcaError::Parse {
                            line: i + 1,
                            message: format!("illegal cell {other:?}"),
                        })
                    }
                }
            }
            bits.push(set);
        }
        FormalContext::new(
            objects.iter().map(|s| s.to_string()).collect(),
            attributes.iter().map(|s| s.to_string()).collect(),
            bits,
        )
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attributes
    }

    /// Identifies the context contents; concepts carry it to detect mixing.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == name)
    }

    pub fn incidence(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    /// Attributes of object `g`, i.e. `g'`.
    pub fn row(&self, g: usize) -> &BitSet {
        &self.rows[g]
    }

    /// Objects having attribute `m`, i.e. `m'`.
    pub fn column(&self, m: usize) -> &BitSet {
        &self.cols[m]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    pub fn columns(&self) -> &[BitSet] {
        &self.cols
    }

    pub fn no_objects(&self) -> ObjectSet {
        ObjectSet(BitSet::new(self.num_objects()))
    }

    pub fn all_objects(&self) -> ObjectSet {
        ObjectSet(BitSet::full(self.num_objects()))
    }

    pub fn no_attributes(&self) -> AttributeSet {
        AttributeSet(BitSet::new(self.num_attributes()))
    }

    pub fn all_attributes(&self) -> AttributeSet {
        AttributeSet(BitSet::full(self.num_attributes()))
    }

    pub fn object_set<S: AsRef<str>>(&self, names: &[S]) -> Result<ObjectSet> {
        let mut bits = BitSet::new(self.num_objects());
        for name in names {
            let name = name.as_ref();
            let g = self.object_index(name).ok_or_else(|| FcaError::UnknownName {
                kind: "object",
                name: name.to_string(),
            })?;
            bits.insert(g);
        }
        Ok(ObjectSet(bits))
    }

    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<AttributeSet> {
        let mut bits = BitSet::new(self.num_attributes());
        for name in names {
            let name = name.as_ref();
            let m = self.attribute_index(name).ok_or_else(|| FcaError::UnknownName {
                kind: "attribute",
                name: name.to_string(),
            })?;
            bits.insert(m);
        }
        Ok(AttributeSet(bits))
    }

    pub fn object_labels(&self, set: &BitSet) -> Vec<&str> {
        set.iter().map(|g| self.objects[g].as_str()).collect()
    }

    pub fn attribute_labels(&self, set: &BitSet) -> Vec<&str> {
        set.iter().map(|m| self.attributes[m].as_str()).collect()
    }

    fn check_objects(&self, set: &BitSet) -> Result<()> {
        if set.len() != self.num_objects() {
            return Err(FcaError::Dimension {
                expected: self.num_objects(),
                found: set.len(),
            });
        }
        Ok(())
    }

    fn check_attributes(&self, set: &BitSet) -> Result<()> {
        if set.len() != self.num_attributes() {
            return Err(FcaError::Dimension {
                expected: self.num_attributes(),
                found: set.len(),
            });
        }
        Ok(())
    }

    /// `A'` without the width check.
    pub(crate) fn intent_of(&self, objects: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.num_attributes());
        for g in objects.iter() {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// `B'` without the width check.
    pub(crate) fn extent_of(&self, attributes: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.num_objects());
        for m in attributes.iter() {
            out.intersect_with(&self.cols[m]);
        }
        out
    }

    pub(crate) fn object_closure(&self, objects: &BitSet) -> BitSet {
        self.extent_of(&self.intent_of(objects))
    }

    /// Attributes shared by every object of `objects`; the empty set derives to M.
    pub fn derive_objects(&self, objects: &ObjectSet) -> Result<AttributeSet> {
        self.check_objects(objects)?;
        Ok(AttributeSet(self.intent_of(objects)))
    }

    /// Objects having every attribute of `attributes`; the empty set derives to G.
    pub fn derive_attributes(&self, attributes: &AttributeSet) -> Result<ObjectSet> {
        self.check_attributes(attributes)?;
        Ok(ObjectSet(self.extent_of(attributes)))
    }

    /// `A''`.
    pub fn close_objects(&self, objects: &ObjectSet) -> Result<ObjectSet> {
        self.check_objects(objects)?;
        Ok(ObjectSet(self.object_closure(objects)))
    }

    /// `B''`.
    pub fn close_attributes(&self, attributes: &AttributeSet) -> Result<AttributeSet> {
        self.check_attributes(attributes)?;
        Ok(AttributeSet(self.intent_of(&self.extent_of(attributes))))
    }

    pub fn is_extent(&self, objects: &ObjectSet) -> Result<bool> {
        Ok(&self.close_objects(objects)? == objects)
    }

    pub fn is_intent(&self, attributes: &AttributeSet) -> Result<bool> {
        Ok(&self.close_attributes(attributes)? == attributes)
    }

    /// Returns `K_a`: this context with one extra attribute column appended.
    pub fn add_attribute(&self, name: &str, extent: &ObjectSet) -> Result<FormalContext> {
        if self.attribute_index(name).is_some() {
            return Err(FcaError::NameCollision {
                kind: "attribute",
                name: name.to_string(),
            });
        }
        self.check_objects(extent)?;
        let width = self.num_attributes() + 1;
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(g, row)| {
                let mut r = row.resized(width);
                r.set(width - 1, extent.contains(g));
                r
            })
            .collect();
        let mut attributes = self.attributes.clone();
        attributes.push(name.to_string());
        FormalContext::new(self.objects.clone(), attributes, rows)
    }

    /// Context restricted to the attributes not named in `names`.
    pub fn remove_attributes<S: AsRef<str>>(&self, names: &[S]) -> Result<FormalContext> {
        let drop = self.attribute_set(names)?;
        let keep: Vec<usize> = (0..self.num_attributes())
            .filter(|&m| !drop.contains(m))
            .collect();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                BitSet::from_indices(
                    keep.len(),
                    keep.iter()
                        .enumerate()
                        .filter(|&(_, &m)| row.contains(m))
                        .map(|(i, _)| i),
                )
            })
            .collect();
        let attributes = keep.iter().map(|&m| self.attributes[m].clone()).collect();
        FormalContext::new(self.objects.clone(), attributes, rows)
    }

    /// True iff no attribute extent is G or the intersection of other
    /// attribute extents.
    ///
    /// `m'` is such an intersection exactly when it equals the intersection
    /// of all other columns that contain it (G when there are none).
    pub fn is_attribute_reduced(&self) -> bool {
        (0..self.num_attributes()).all(|m| {
            let col = &self.cols[m];
            let mut meet = BitSet::full(self.num_objects());
            for (x, other) in self.cols.iter().enumerate() {
                if x != m && col.is_subset(other) {
                    meet.intersect_with(other);
                }
            }
            &meet != col
        })
    }
}
