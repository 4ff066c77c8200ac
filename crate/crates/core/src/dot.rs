//! Graphviz export of the cover relation, drawn bottom to top.

use std::fmt::Write;

use crate::oml::Ortholattice;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(l: &Ortholattice) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(l.name())).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for x in l.elements() {
        writeln!(out, "  n{x} [label={}];", quote(l.label(x))).unwrap();
    }
    for (x, y) in l.covers() {
        writeln!(out, "  n{x} -> n{y};").unwrap();
    }
    out.push_str("}\n");
    out
}
