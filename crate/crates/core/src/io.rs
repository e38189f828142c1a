//! Graph files: JSON documents, plain edge lists and DOT output.
//!
//! JSON: `{"n": 3, "arcs": [[1,2],[2,3]], "leaders": [1], "targets": [3]}`
//! with `leaders`/`targets` optional. Edge list: first line `n`, then one
//! `u v` pair per line; blank lines and `#` comments are ignored.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DiGraph, VertexSet};
use crate::zero_forcing::BipartiteGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Json,
    EdgeList,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub n: usize,
    pub arcs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaders: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<usize>>,
}

/// A parsed graph plus whatever leader/target sets the file carried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedGraph {
    pub graph: DiGraph,
    pub leaders: Option<VertexSet>,
    pub targets: Option<VertexSet>,
}

pub fn load_graph(bytes: &[u8], format: GraphFormat) -> Result<LoadedGraph> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("input is not UTF-8: {e}"),
    })?;
    match format {
        GraphFormat::Json => parse_json(text),
        GraphFormat::EdgeList => parse_edge_list(text),
    }
}

pub fn parse_json(text: &str) -> Result<LoadedGraph> {
    let doc: GraphDocument = serde_json::from_str(text)?;
    doc.into_loaded()
}

impl GraphDocument {
    pub fn into_loaded(self) -> Result<LoadedGraph> {
        let graph = DiGraph::new(self.n, self.arcs.iter().map(|a| (a[0], a[1])))?;
        let check = |set: Option<Vec<usize>>| -> Result<Option<VertexSet>> {
            set.map(|v| {
                let s = VertexSet::from(v);
                s.check_within(graph.n()).map(|_| s)
            })
            .transpose()
        };
        let leaders = check(self.leaders)?;
        let targets = check(self.targets)?;
        Ok(LoadedGraph {
            graph,
            leaders,
            targets,
        })
    }

    pub fn from_graph(g: &DiGraph, leaders: Option<&VertexSet>, targets: Option<&VertexSet>) -> Self {
        GraphDocument {
            n: g.n(),
            arcs: g.arcs().map(|(u, v)| [u, v]).collect(),
            leaders: leaders.map(|s| s.as_slice().to_vec()),
            targets: targets.map(|s| s.as_slice().to_vec()),
        }
    }
}

pub fn parse_edge_list(text: &str) -> Result<LoadedGraph> {
    let mut n = None;
    let mut arcs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let num = |s: &str, what: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("{what} `{s}` is not a nonnegative integer"),
            })
        };
        match (n, fields.as_slice()) {
            (None, [count]) => n = Some(num(count, "vertex count")?),
            (None, _) => {
                return Err(Error::Parse {
                    line,
                    msg: "expected the vertex count on its own line".into(),
                })
            }
            (Some(total), [u, v]) => {
                let (u, v) = (num(u, "tail")?, num(v, "head")?);
                for w in [u, v] {
                    if w == 0 || w > total {
                        return Err(Error::Parse {
                            line,
                            msg: format!("vertex {w} is out of range 1..={total}"),
                        });
                    }
                }
                if u == v {
                    return Err(Error::Parse {
                        line,
                        msg: format!("self-loop at vertex {u}"),
                    });
                }
                arcs.push((u, v));
            }
            (Some(_), _) => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected `u v`, found {} fields", fields.len()),
                })
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing vertex count".into(),
    })?;
    let graph = DiGraph::new(n, arcs)?;
    Ok(LoadedGraph {
        graph,
        leaders: None,
        targets: None,
    })
}

/// Canonical JSON: arcs sorted lexicographically, compact.
pub fn to_json(g: &DiGraph, leaders: Option<&VertexSet>, targets: Option<&VertexSet>) -> String {
    serde_json::to_string(&GraphDocument::from_graph(g, leaders, targets))
        .expect("graph documents always serialize")
}

pub fn to_edge_list(g: &DiGraph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Node decorations for DOT output.
#[derive(Debug, Clone, Default)]
pub struct Decorations {
    pub leaders: VertexSet,
    pub targets: VertexSet,
    pub name: Option<String>,
}

/// Leaders are filled black, targets are double circles.
pub fn export_dot(g: &DiGraph, deco: &Decorations) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", deco.name.as_deref().unwrap_or("G"));
    let _ = writeln!(out, "  node [shape=circle];");
    for v in g.vertices() {
        let _ = writeln!(out, "  {v}{};", node_attrs(v, deco));
    }
    for (u, v) in g.arcs() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}

fn node_attrs(v: usize, deco: &Decorations) -> String {
    let mut attrs = Vec::new();
    if deco.leaders.contains(v) {
        attrs.push("style=filled, fillcolor=black, fontcolor=white");
    }
    if deco.targets.contains(v) {
        attrs.push("shape=doublecircle");
    }
    if attrs.is_empty() {
        String::new()
    } else {
        format!(" [{}]", attrs.join(", "))
    }
}

/// Two-column DOT drawing of a bipartite layer graph; the left side is
/// drawn black (it is initially colored in the forcing process).
pub fn export_bipartite_dot(b: &BipartiteGraph, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {name} {{");
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=circle];");
    let _ = writeln!(out, "  {{ rank=same;");
    for v in b.left().iter() {
        let _ = writeln!(out, "    {v} [style=filled, fillcolor=black, fontcolor=white];");
    }
    let _ = writeln!(out, "  }}");
    let _ = writeln!(out, "  {{ rank=same;");
    for v in b.right().iter() {
        let _ = writeln!(out, "    {v};");
    }
    let _ = writeln!(out, "  }}");
    for (u, v) in b.arcs() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_transcription() {
        let g = parse_json(r#"{"n":3,"arcs":[[1,2],[2,3]]}"#).unwrap();
        assert_eq!(g.graph, DiGraph::new(3, [(1, 2), (2, 3)]).unwrap());
        assert!(g.leaders.is_none() && g.targets.is_none());
    }

    #[test]
    fn json_self_loop_rejected() {
        let err = parse_json(r#"{"n":3,"arcs":[[1,2],[2,3],[3,3]]}"#).unwrap_err();
        assert!(matches!(err, Error::SelfLoop(3)));
    }

    #[test]
    fn json_bad_leader_rejected() {
        let err = parse_json(r#"{"n":3,"arcs":[],"leaders":[4]}"#).unwrap_err();
        assert!(matches!(err, Error::VertexOutOfRange { vertex: 4, n: 3 }));
    }

    #[test]
    fn json_syntax_error_has_position() {
        let err = parse_json("{\"n\":3,\n\"arcs\":[[1,2],]}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn edge_list_matches_json() {
        let g = parse_edge_list("3\n1 2\n2 3\n").unwrap();
        assert_eq!(g.graph, DiGraph::new(3, [(1, 2), (2, 3)]).unwrap());
    }

    #[test]
    fn edge_list_errors_name_the_line() {
        let err = parse_edge_list("3\n1 2\n# c\n2 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = parse_edge_list("3\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_edge_list("3\n1 2 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_edge_list("3\n1 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(matches!(
            parse_edge_list("3\n1 2\n1 2\n").unwrap_err(),
            Error::DuplicateArc(1, 2)
        ));
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn dot_marks_leaders_and_targets() {
        let g = DiGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        let dot = export_dot(
            &g,
            &Decorations {
                leaders: VertexSet::from([1]),
                targets: VertexSet::from([1, 3]),
                name: None,
            },
        );
        assert!(dot.contains("1 [style=filled, fillcolor=black, fontcolor=white, shape=doublecircle];"));
        assert!(dot.contains("3 [shape=doublecircle];"));
        assert!(dot.contains("  2;"));
        assert!(dot.contains("1 -> 2;"));
    }
}
