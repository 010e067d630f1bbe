//! Graphviz export of the pair graph of a partial action state.
//!
//! Nodes are the ordered pairs of distinct live points; pairs of the form
//! `(x, x·t)` are drawn filled. Edges follow every letter defined on both
//! components — base-group elements and the plain direction of each map
//! letter; inverse map letters are omitted since they mirror existing
//! edges. Output is deterministic for a given state.

use crate::action::{ActionState, PairRef};
use crate::word::Letter;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Renders the pair graph in Graphviz `dot` syntax.
pub fn export_dot(st: &ActionState) -> String {
    let mut pairs = Vec::new();
    for a in st.points() {
        for b in st.points() {
            if let Ok(p) = PairRef::new(a, b) {
                pairs.push(p);
            }
        }
    }
    let index: BTreeMap<PairRef, usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    let mut out = String::from("digraph pairs {\n");
    for (i, p) in pairs.iter().enumerate() {
        if st.is_t_pair(*p) {
            let _ = writeln!(
                out,
                "  p{i} [label=\"{p}\", style=filled, fillcolor=lightblue];"
            );
        } else {
            let _ = writeln!(out, "  p{i} [label=\"{p}\"];");
        }
    }
    for (i, p) in pairs.iter().enumerate() {
        for (l, q) in st.pair_moves(*p) {
            if matches!(l, Letter::S { inv: true, .. } | Letter::R { inv: true, .. }) {
                continue;
            }
            let j = index[&q];
            let _ = writeln!(out, "  p{i} -> p{j} [label=\"{l}\"];");
        }
    }
    out.push_str("}\n");
    out
}
