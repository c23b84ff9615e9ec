//! Graphviz export of Hasse diagrams with reduced labelling.

use std::fmt::Write;

use crate::lattice::{covering_relation, ConceptLattice};

/// Own labels of a concept: attributes whose attribute concept it is, and
/// objects whose object concept it is.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReducedLabel {
    pub attributes: Vec<usize>,
    pub objects: Vec<usize>,
}

/// Attribute `m` is placed at the concept with extent `m'`, object `g` at
/// the concept with extent `g''`.
pub fn reduced_labels(lat: &ConceptLattice) -> Vec<ReducedLabel> {
    let ctx = lat.context();
    let mut labels = vec![ReducedLabel::default(); lat.len()];
    for m in 0..ctx.num_attributes() {
        let i = lat
            .index_of_extent(ctx.column(m))
            .expect("attribute extents are closed");
        labels[i].attributes.push(m);
    }
    for g in 0..ctx.num_objects() {
        let closure = ctx.object_closure(&crate::bitset::BitSet::from_indices(ctx.num_objects(), [g]));
        let i = lat.index_of_extent(&closure).expect("closures are extents");
        labels[i].objects.push(g);
    }
    labels
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node `cI` per concept in lattice order, edges from lower to upper
/// cover. Node labels show own attributes on the first line and own objects
/// on the second.
pub fn export_dot(lat: &ConceptLattice) -> String {
    let ctx = lat.context();
    let mut out =
        String::from("digraph concept_lattice {\n  rankdir=BT;\n  node [shape=box, style=rounded];\n");
    for (i, label) in reduced_labels(lat).iter().enumerate() {
        let attrs: Vec<&str> = label
            .attributes
            .iter()
            .map(|&m| ctx.attribute_names()[m].as_str())
            .collect();
        let objs: Vec<&str> = label
            .objects
            .iter()
            .map(|&g| ctx.object_names()[g].as_str())
            .collect();
        let _ = writeln!(
            out,
            "  c{i} [label=\"{}\\n{}\"];",
            escape(&attrs.join(", ")),
            escape(&objs.join(", "))
        );
    }
    for edge in covering_relation(lat) {
        let _ = writeln!(out, "  c{} -> c{};", edge.lower, edge.upper);
    }
    out.push_str("}\n");
    out
}
