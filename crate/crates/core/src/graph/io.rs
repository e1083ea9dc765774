//! Graph file formats.
//!
//! Text: a header line `n <count>`, then one `u v` pair per line with
//! 0-based ids and `u < v`. Blank lines and `#` comments are ignored.
//! JSON: `{"n": 4, "edges": [[0,1],[1,2]]}`. DOT is write-only.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Graph, NodeId};
use crate::error::{Error, Result};

pub fn parse_text(src: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (i, raw) in src.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: line_no, msg };
        let mut toks = line.split_whitespace();
        match &mut graph {
            None => {
                if toks.next() != Some("n") {
                    return Err(perr("expected header `n <count>`".into()));
                }
                let n = toks
                    .next()
                    .ok_or_else(|| perr("missing node count".into()))?
                    .parse::<usize>()
                    .map_err(|e| perr(format!("bad node count: {e}")))?;
                if toks.next().is_some() {
                    return Err(perr("trailing tokens after node count".into()));
                }
                graph = Some(Graph::new(n));
            }
            Some(g) => {
                let mut id = |what: &str| -> Result<NodeId> {
                    toks.next()
                        .ok_or_else(|| perr(format!("missing {what} endpoint")))?
                        .parse::<NodeId>()
                        .map_err(|e| perr(format!("bad {what} endpoint: {e}")))
                };
                let u = id("first")?;
                let v = id("second")?;
                if toks.next().is_some() {
                    return Err(perr("trailing tokens after edge".into()));
                }
                if u >= v {
                    return Err(perr(format!("edge {u} {v} must satisfy u < v")));
                }
                g.add_edge(u, v).map_err(|e| perr(e.to_string()))?;
            }
        }
    }
    graph.ok_or(Error::Parse {
        line: 0,
        msg: "empty graph file".into(),
    })
}

pub fn to_text(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.node_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[NodeId; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.node_count(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<&GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: &GraphJson) -> Result<Graph> {
        Graph::from_edges(j.n, j.edges.iter().map(|e| (e[0], e[1])))
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph json is always serializable")
}

pub fn parse_json(src: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(src)?;
    Graph::try_from(&j)
}

/// Accepts either format, choosing JSON when the first non-blank char is `{`.
pub fn parse_any(src: &str) -> Result<Graph> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

/// DOT rendering; permanent edges are drawn bold.
pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut s = format!("graph {name} {{\n");
    for v in 0..g.node_count() {
        let _ = writeln!(s, "  {v};");
    }
    for (u, v) in g.edges() {
        if g.is_permanent(u, v) {
            let _ = writeln!(s, "  {u} -- {v} [style=bold];");
        } else {
            let _ = writeln!(s, "  {u} -- {v};");
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::cycle4;

    #[test]
    fn text_with_comments() {
        let g = parse_text("# a square\nn 4\n\n0 1\n1 2 # side\n2 3\n0 3\n").unwrap();
        assert_eq!(g, cycle4());
        assert_eq!(to_text(&g), "n 4\n0 1\n0 3\n1 2\n2 3\n");
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        for (src, line) in [
            ("n 3\n0 1\n2 1\n", 3),
            ("n 3\n0 5\n", 2),
            ("edges\n", 1),
            ("n 2\n0 x\n", 2),
            ("n 2\n0 1 1\n", 2),
        ] {
            match parse_text(src) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{src:?}"),
                other => panic!("{src:?}: {other:?}"),
            }
        }
        assert!(parse_text("# nothing\n").is_err());
    }

    #[test]
    fn json_and_any() {
        let j = to_json(&cycle4());
        assert_eq!(j, r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        assert_eq!(parse_any(&j).unwrap(), cycle4());
        assert_eq!(parse_any(&to_text(&cycle4())).unwrap(), cycle4());
        assert!(parse_json(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
    }

    #[test]
    fn dot_marks_permanent_edges() {
        let mut g = cycle4();
        g.mark_permanent(0, 1).unwrap();
        let dot = to_dot(&g, "g");
        assert!(dot.contains("0 -- 1 [style=bold];"));
        assert!(dot.contains("1 -- 2;"));
    }
}
