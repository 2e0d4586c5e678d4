//! Graphviz output for the fine-block graph.

use std::fmt::Write;

use daestruct::blocktri::Digraph;
use daestruct::fineblock::LeadTimeVector;

use crate::analysis::Analysis;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node `B<k>` per fine block and one edge per block inequality. With
/// lead times, nodes show `K=<value>` and `K`-critical edges are bold.
pub fn fbg_dot(a: &Analysis, lead: Option<(&LeadTimeVector, &Digraph)>) -> String {
    let mut out = String::from("digraph fbg {\n  rankdir=LR;\n  node [shape=box];\n");
    for (k, (rows, cols)) in a.fbg.blocks().iter().enumerate() {
        let (r, c) = a.block_labels(rows, cols);
        let mut label = format!("B{}\\n{}|{}", k + 1, escape(&r), escape(&c));
        if let Some((kv, _)) = lead {
            write!(label, "\\nK={}", kv.0[k]).unwrap();
        }
        writeln!(out, "  B{} [label=\"{label}\"];", k + 1).unwrap();
    }
    for (k, l, w) in a.fbg.edges() {
        let bold = lead.is_some_and(|(_, crit)| crit.has_edge(k, l));
        let style = if bold { ", style=bold" } else { "" };
        writeln!(out, "  B{} -> B{} [label=\"{w}\"{style}];", k + 1, l + 1).unwrap();
    }
    out.push_str("}\n");
    out
}
