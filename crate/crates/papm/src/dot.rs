//! DOT output for realized chains and raw modules.

use std::fmt::Write;

use papm_core::strings::{Branch, Realized};
use papm_core::FiniteModule;

/// Nodes are the basis vectors `x^j a_i`, `y^j a_i`; each branch ends in
/// its own `0` sink. Identified socle vectors are double circles.
pub fn chain_dot(r: &Realized) -> String {
    let mut out = String::new();
    writeln!(out, "digraph chain {{").unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
    for (i, label) in r.labels.iter().enumerate() {
        let shape = if r.merged.contains(&i) {
            ", shape=doublecircle"
        } else if label.branch.is_none() {
            ", shape=box"
        } else {
            ""
        };
        writeln!(out, "  n{i} [label=\"{label}\"{shape}];").unwrap();
    }
    let mut sinks = 0;
    for (branch, chains) in [(Branch::P1, &r.x_nodes), (Branch::P2, &r.y_nodes)] {
        let op = if branch == Branch::P1 { "x" } else { "y" };
        for chain in chains.iter() {
            for w in chain.windows(2) {
                writeln!(out, "  n{} -> n{} [label=\"{op}\"];", w[0], w[1]).unwrap();
            }
            let last = *chain.last().expect("chains start at their generator");
            writeln!(out, "  z{sinks} [label=\"0\", shape=plaintext];").unwrap();
            writeln!(out, "  n{last} -> z{sinks} [label=\"{op}\", style=dashed];").unwrap();
            sinks += 1;
        }
    }
    if r.truncated {
        writeln!(out, "  label=\"truncated\";").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

/// One node per basis vector and one edge per nonzero matrix entry.
pub fn module_dot(m: &FiniteModule) -> String {
    let mut out = String::new();
    writeln!(out, "digraph module {{").unwrap();
    for i in 0..m.dim() {
        writeln!(out, "  e{i} [label=\"e{}\"];", i + 1).unwrap();
    }
    for (op, a) in [("x", m.x()), ("y", m.y_or_zero())] {
        for j in 0..m.dim() {
            for i in 0..m.dim() {
                match a.get(i, j) {
                    0 => {}
                    1 => writeln!(out, "  e{j} -> e{i} [label=\"{op}\"];").unwrap(),
                    c => writeln!(out, "  e{j} -> e{i} [label=\"{c}{op}\"];").unwrap(),
                }
            }
        }
    }
    writeln!(out, "}}").unwrap();
    out
}
