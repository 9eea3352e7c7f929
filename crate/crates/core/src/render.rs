//! Text views of an evolving graph with travels drawn on top.
//!
//! The grid has one row per time instant (time 0 first) and one column per
//! node. Each cell holds two characters: a travel label and a mark.
//!
//! ```text
//! A   step of travel A at this (node, time)
//! A|  travel A waits through this cell
//! A^  travel A jumps back through this cell
//! **  several travels share the cell
//! ```
//!
//! The edges present in each snapshot are listed at the end of the row.

use std::fmt::Write;

use crate::graph::TemporalGraph;
use crate::travel::Travel;

fn label(i: usize) -> char {
    (b'A' + (i % 26) as u8) as char
}

pub fn render_grid<G: TemporalGraph + ?Sized>(g: &G, travels: &[Travel]) -> String {
    let n = g.node_count();
    let width = n.saturating_sub(1).to_string().len().max(2);
    let mut out = String::from("time |");
    for u in 0..n {
        write!(out, " {u:<width$}").unwrap();
    }
    out.truncate(out.trim_end().len());
    out.push('\n');

    let last_row = travels
        .iter()
        .map(|t| t.max_time())
        .chain((g.edge_count() > 0).then(|| g.latest_time()))
        .max();
    let Some(last_row) = last_row else {
        return out;
    };

    let rows = last_row as usize + 1;
    let mut cells = vec![vec![String::new(); n]; rows];
    let mut put = |u: usize, t: u32, text: String| {
        let cell = &mut cells[t as usize][u];
        let own = text.chars().next().unwrap();
        if cell.is_empty() || (cell.starts_with(own) && text.ends_with(' ')) {
            *cell = text;
        } else if !cell.starts_with(own) {
            *cell = "**".into();
        }
    };
    for (i, travel) in travels.iter().enumerate() {
        let l = label(i);
        for w in travel.steps().windows(2) {
            let (a, b) = (w[0], w[1]);
            if a.node != b.node {
                continue;
            }
            let (lo, hi, mark) = if a.time < b.time {
                (a.time, b.time, '|')
            } else {
                (b.time, a.time, '^')
            };
            for t in lo + 1..hi {
                put(a.node, t, format!("{l}{mark}"));
            }
        }
        for s in travel.steps() {
            if s.node < n {
                put(s.node, s.time, format!("{l} "));
            }
        }
    }

    for (t, row) in cells.iter().enumerate() {
        write!(out, "{t:>4} |").unwrap();
        for cell in row {
            let shown = if cell.is_empty() { "." } else { cell.as_str() };
            write!(out, " {shown:<width$}").unwrap();
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for &v in g.neighbors(u) {
                if u < v && g.has_edge(u, v, t as u32) {
                    edges.push(format!("{u}-{v}"));
                }
            }
        }
        if !edges.is_empty() {
            write!(out, "  {}", edges.join(" ")).unwrap();
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    for (i, travel) in travels.iter().enumerate() {
        writeln!(out, "{} = {travel}", label(i)).unwrap();
    }
    out
}

/// Layered digraph: one rank per time instant, one vertex per `(node, time)`.
pub fn render_dot<G: TemporalGraph + ?Sized>(g: &G, travels: &[Travel]) -> String {
    let n = g.node_count();
    let last = travels
        .iter()
        .map(|t| t.max_time())
        .chain((g.edge_count() > 0).then(|| g.latest_time()))
        .max();
    let mut out = String::from("digraph evolving {\n  rankdir=TB;\n  node [shape=circle];\n");
    if let Some(last) = last {
        for t in 0..=last {
            write!(out, "  {{ rank=same;").unwrap();
            for u in 0..n {
                write!(out, " \"{u}@{t}\";").unwrap();
            }
            out.push_str(" }\n");
        }
        for u in 0..n {
            for t in 0..last {
                writeln!(out, "  \"{u}@{t}\" -> \"{u}@{}\" [style=invis];", t + 1).unwrap();
            }
        }
        for u in 0..n {
            for &v in g.neighbors(u) {
                if u > v {
                    continue;
                }
                for &t in g.departures(u, v) {
                    let arrive = t + g.transit();
                    writeln!(out, "  \"{u}@{t}\" -> \"{v}@{arrive}\" [dir=none];").unwrap();
                }
            }
        }
    }
    for (i, travel) in travels.iter().enumerate() {
        let l = label(i);
        for w in travel.steps().windows(2) {
            let (a, b) = (w[0], w[1]);
            if a == b {
                continue;
            }
            let style = if a.node == b.node { "dashed" } else { "bold" };
            writeln!(
                out,
                "  \"{}@{}\" -> \"{}@{}\" [label=\"{l}\", style={style}, constraint=false];",
                a.node, a.time, b.node, b.time
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
