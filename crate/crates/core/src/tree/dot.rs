//! Graphviz export of rooted trees and decompositions, plus a reader for the
//! same subset of DOT.
//!
//! Nodes are `v<id>`; edges point from parent to child and carry the edge id
//! (the bottom vertex) as `e<id>`. Leaves of a decomposition list their
//! assigned elements in an `elements="..."` attribute.

use std::fmt::Write as _;

use super::{RootedTree, Vertex};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// A tree together with optional per-vertex element labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotTree {
    pub tree: RootedTree,
    /// Elements drawn at each vertex; `None` when the export carried none.
    pub elements: Option<Vec<ElementSet>>,
}

fn element_list(set: ElementSet) -> String {
    set.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_dot(tree: &RootedTree, elements: Option<&[ElementSet]>) -> String {
    let mut out = String::from("digraph decomposition {\n  node [shape=circle];\n");
    let _ = writeln!(out, "  {{ rank=min; v{}; }}", tree.root());
    for v in tree.preorder() {
        let name = if v == tree.root() { "root".to_string() } else { format!("v{v}") };
        match elements {
            Some(labels) if tree.is_leaf(v) => {
                let ids = element_list(labels[v]);
                let _ = writeln!(
                    out,
                    "  v{v} [label=\"{name}\\n{{{}}}\", elements=\"{ids}\"];",
                    ids.replace(' ', ",")
                );
            }
            _ => {
                let _ = writeln!(out, "  v{v} [label=\"{name}\"];");
            }
        }
    }
    for v in tree.preorder() {
        if let Some(p) = tree.parent(v) {
            let _ = writeln!(out, "  v{p} -> v{v} [label=\"e{v}\"];");
        }
    }
    out.push_str("}\n");
    out
}

fn vertex_token(line: usize, tok: &str) -> Result<Vertex> {
    tok.trim()
        .strip_prefix('v')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::parse(line, format!("expected a vertex name like v3, found {tok:?}")))
}

fn attribute<'a>(body: &'a str, key: &str) -> Option<&'a str> {
    let start = body.find(&format!("{key}=\""))? + key.len() + 2;
    let len = body[start..].find('"')?;
    Some(&body[start..start + len])
}

/// Reads DOT produced by [`write_dot`].
pub fn parse_dot(text: &str) -> Result<DotTree> {
    let mut nodes: Vec<(Vertex, Option<ElementSet>)> = Vec::new();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty()
            || s.starts_with("digraph")
            || s.starts_with("node")
            || s.starts_with('{')
            || s == "}"
        {
            continue;
        }
        let (head, attrs) = match s.find('[') {
            Some(k) => (&s[..k], &s[k..]),
            None => (s.trim_end_matches(';'), ""),
        };
        if let Some((a, b)) = head.split_once("->") {
            edges.push((vertex_token(line, a)?, vertex_token(line, b)?));
        } else {
            let v = vertex_token(line, head)?;
            let elems = match attribute(attrs, "elements") {
                Some(list) => Some(
                    list.split_whitespace()
                        .map(|t| {
                            t.parse::<usize>()
                                .ok()
                                .filter(|&e| e < 64)
                                .ok_or_else(|| Error::parse(line, format!("bad element id {t:?}")))
                        })
                        .collect::<Result<ElementSet>>()?,
                ),
                None => None,
            };
            nodes.push((v, elems));
        }
    }
    let n = nodes.iter().map(|(v, _)| v + 1).max().unwrap_or(0);
    if nodes.len() != n {
        return Err(Error::parse(0, "vertex ids must be dense and unique"));
    }
    let mut parent = vec![None; n];
    for &(p, c) in &edges {
        if p >= n || c >= n || parent[c].is_some() {
            return Err(Error::parse(0, format!("bad edge v{p} -> v{c}")));
        }
        parent[c] = Some(p);
    }
    let tree = RootedTree::from_parents(parent).map_err(|e| Error::parse(0, e.to_string()))?;
    let elements = nodes.iter().any(|(_, e)| e.is_some()).then(|| {
        let mut labels = vec![ElementSet::empty(); n];
        for (v, e) in &nodes {
            labels[*v] = e.unwrap_or_default();
        }
        labels
    });
    Ok(DotTree { tree, elements })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_is_first_and_edges_are_labelled() {
        let t = RootedTree::path(2);
        let dot = write_dot(&t, None);
        assert!(dot.contains("rank=min; v0;"));
        assert!(dot.contains("v1 -> v2 [label=\"e2\"]"));
    }

    #[test]
    fn round_trip_with_elements() {
        let t = RootedTree::from_parents(vec![None, Some(0), Some(1), Some(1)]).unwrap();
        let mut labels = vec![ElementSet::empty(); 4];
        labels[2] = ElementSet::from_iter([0, 3]);
        labels[3] = ElementSet::from_iter([1]);
        let dot = write_dot(&t, Some(&labels));
        let back = parse_dot(&dot).unwrap();
        assert_eq!(back.tree, t);
        assert_eq!(back.elements, Some(labels));
        assert_eq!(parse_dot(&write_dot(&t, None)).unwrap().elements, None);
    }

    #[test]
    fn malformed_input() {
        assert!(parse_dot("digraph x {\n  q1;\n}\n").is_err());
        assert!(parse_dot("digraph x {\n  v0;\n  v1;\n}\n").is_err());
    }
}
