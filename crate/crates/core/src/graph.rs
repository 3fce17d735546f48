//! The graph of bounded poset homomorphisms inside a value window, with an
//! edge for every right mutation that stays in the window.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::filtration::{is_t_function, PosetHom};
use crate::mutation::mutate_function;
use crate::poset::{enumerate_upper_sets, same_poset, PosetRef, UpperSet};

/// Largest number of nodes a graph may have.
pub const MAX_NODES: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub set: UpperSet,
    pub target: usize,
}

#[derive(Clone, Debug)]
pub struct MutationGraph {
    poset: PosetRef,
    window: (i64, i64),
    nodes: Vec<PosetHom>,
    t_function: Vec<bool>,
    edges: Vec<Edge>,
    index: HashMap<Vec<i64>, usize>,
}

impl MutationGraph {
    pub fn poset(&self) -> &PosetRef {
        &self.poset
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn nodes(&self) -> &[PosetHom] {
        &self.nodes
    }

    pub fn is_t_function_node(&self, i: usize) -> bool {
        self.t_function[i]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_index(&self, f: &PosetHom) -> Option<usize> {
        if !same_poset(&self.poset, f.poset()) {
            return None;
        }
        self.index.get(f.values()).copied()
    }

    pub fn t_function_count(&self) -> usize {
        self.t_function.iter().filter(|&&t| t).count()
    }
}

/// Every increasing map `poset -> [a, b]`, in lexicographic order of value
/// vectors.
fn increasing_functions(poset: &PosetRef, a: i64, b: i64) -> Result<Vec<Vec<i64>>> {
    let n = poset.len();
    let order = poset.linear_extension();
    let mut out = Vec::new();
    let mut values = vec![a; n];
    fn go(
        depth: usize,
        order: &[usize],
        poset: &PosetRef,
        values: &mut Vec<i64>,
        hi: i64,
        out: &mut Vec<Vec<i64>>,
        lo: i64,
    ) -> Result<()> {
        if depth == order.len() {
            if out.len() == MAX_NODES {
                return Err(Error::TooLarge(format!(
                    "more than {MAX_NODES} increasing functions in the window"
                )));
            }
            out.push(values.clone());
            return Ok(());
        }
        let p = order[depth];
        let floor = poset
            .lower_covers(p)
            .iter()
            .map(|&q| values[q])
            .max()
            .unwrap_or(lo);
        for v in floor..=hi {
            values[p] = v;
            go(depth + 1, order, poset, values, hi, out, lo)?;
        }
        Ok(())
    }
    go(0, order, poset, &mut values, b, &mut out, a)?;
    out.sort_unstable();
    Ok(out)
}

pub fn build_mutation_graph(
    poset: &PosetRef,
    a: i64,
    b: i64,
    nonempty_only: bool,
) -> Result<MutationGraph> {
    if a > b {
        return Err(Error::BadWindow(a, b));
    }
    let vectors = increasing_functions(poset, a, b)?;
    let index: HashMap<Vec<i64>, usize> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let nodes: Vec<PosetHom> = vectors
        .into_iter()
        .map(|v| PosetHom::new_unchecked(poset, v))
        .collect();
    let t_function = nodes.iter().map(is_t_function).collect();
    let uppers: Vec<UpperSet> = enumerate_upper_sets(poset)?
        .into_iter()
        .filter(|w| !(nonempty_only && w.is_empty()))
        .collect();

    let mut edges = Vec::new();
    for (s, node) in nodes.iter().enumerate() {
        for w in &uppers {
            let target = mutate_function(node, w)?;
            if let Some(&t) = index.get(target.values()) {
                edges.push(Edge {
                    source: s,
                    set: w.clone(),
                    target: t,
                });
            }
        }
    }
    Ok(MutationGraph {
        poset: poset.clone(),
        window: (a, b),
        nodes,
        t_function,
        edges,
        index,
    })
}

/// t-function nodes reachable from `start`, in breadth-first visiting order.
pub fn reachable_t_functions(graph: &MutationGraph, start: &PosetHom) -> Result<Vec<PosetHom>> {
    let s = graph.node_index(start).ok_or(Error::UnknownNode)?;
    let mut adjacency = vec![Vec::new(); graph.nodes.len()];
    for e in &graph.edges {
        adjacency[e.source].push(e.target);
    }
    let mut seen = vec![false; graph.nodes.len()];
    let mut queue = VecDeque::from([s]);
    seen[s] = true;
    let mut out = Vec::new();
    while let Some(u) = queue.pop_front() {
        if graph.t_function[u] {
            out.push(graph.nodes[u].clone());
        }
        for &v in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    Ok(out)
}

/// Graphviz rendering. Node ids are `label:value` pairs sorted by label;
/// t-function nodes are drawn as double circles.
pub fn graph_to_dot(graph: &MutationGraph) -> String {
    let mut out = String::from("digraph mutation {\n");
    let ids: Vec<String> = graph.nodes.iter().map(PosetHom::sorted_key).collect();
    for (i, id) in ids.iter().enumerate() {
        if graph.t_function[i] {
            let _ = writeln!(out, "  \"{id}\" [shape=doublecircle];");
        } else {
            let _ = writeln!(out, "  \"{id}\";");
        }
    }
    for e in &graph.edges {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            ids[e.source], ids[e.target], e.set
        );
    }
    out.push_str("}\n");
    out
}
