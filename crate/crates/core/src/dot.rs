//! Graphviz output for colored graphs and their covers.

use std::fmt::Write;

use crate::graph::ColoredGraph;
use crate::lift::SymmetricGraph;

/// Directed DOT; each edge is labelled with its color.
pub fn colored_graph_dot(g: &ColoredGraph) -> String {
    let mut out = String::from("digraph colored {\n");
    let _ = writeln!(out, "  label=\"group {}\";", g.spec());
    for v in g.vertices() {
        let _ = writeln!(out, "  v{v} [label=\"{v}\"];");
    }
    for e in g.edges() {
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\", tooltip=\"edge {}\"];", e.tail, e.head, e.color, e.id);
    }
    out.push_str("}\n");
    out
}

/// Undirected DOT of the cover with one cluster per fiber.
pub fn lift_dot(sg: &SymmetricGraph) -> String {
    let order = sg.group_order();
    let mut out = String::from("graph lift {\n");
    for (i, v) in sg.base().vertices().iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{v} {{");
        let _ = writeln!(out, "    label=\"fiber {v}\";");
        for gamma in 0..order {
            let w = sg.vertex(i, gamma);
            let _ = writeln!(out, "    \"{0}\" [label=\"{0}\"];", sg.vertex_name(w));
        }
        out.push_str("  }\n");
    }
    for (e, &(a, b)) in sg.cover().edges().iter().enumerate() {
        let _ = writeln!(
            out,
            "  \"{}\" -- \"{}\" [tooltip=\"over edge {}\"];",
            sg.vertex_name(a),
            sg.vertex_name(b),
            sg.base_edge(e)
        );
    }
    out.push_str("}\n");
    out
}
