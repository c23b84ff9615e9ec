//! Small named contexts used throughout the docs, tests and demo.

use crate::context::FormalContext;

/// Four objects `a b c g` over attributes `v u a b`; seven concepts.
pub fn sample() -> FormalContext {
    FormalContext::from_table(
        &["a", "b", "c", "g"],
        &["v", "u", "a", "b"],
        &[".XX.", "X..X", "XX..", "XXXX"],
    )
    .expect("static table")
}

/// [`sample`] plus `m` with `m' = {a, b, c}`; the lattice doubles.
pub fn sample_doubled() -> FormalContext {
    let k = sample();
    let ext = k.object_set(&["a", "b", "c"]).expect("static names");
    k.add_attribute("m", &ext).expect("fresh name")
}

/// [`sample`] plus `m` with `m' = {a, c}`.
pub fn sample_partial() -> FormalContext {
    let k = sample();
    let ext = k.object_set(&["a", "c"]).expect("static names");
    k.add_attribute("m", &ext).expect("fresh name")
}
