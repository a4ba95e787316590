//! Plain-text graph format.
//!
//! ```text
//! c comment
//! p tn <n> <m> <|T|>
//! t <vertex>
//! e <u> <v>
//! ```
//!
//! Vertex ids are `1..=n`. The i-th `e` line defines edge id `i`; a repeated
//! line is a parallel edge. All `t` lines precede the `e` lines.

use std::fmt::Write as _;

use super::{EdgeId, TerminalNetwork, VertexId};
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<TerminalNetwork> {
    let mut g: Option<TerminalNetwork> = None;
    let mut declared = (0usize, 0usize);
    let mut edges_seen = 0u32;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match (toks[0], g.as_mut()) {
            ("p", None) => {
                if toks.len() != 5 || toks[1] != "tn" {
                    return Err(Error::parse(line_no, "expected `p tn <n> <m> <|T|>`"));
                }
                let n = number(toks[2], line_no)?;
                let m = number(toks[3], line_no)? as usize;
                let t = number(toks[4], line_no)? as usize;
                if t > n as usize {
                    return Err(Error::parse(line_no, "more terminals than vertices"));
                }
                declared = (m, t);
                g = Some(TerminalNetwork::with_vertices(n));
            }
            ("p", Some(_)) => return Err(Error::parse(line_no, "duplicate header")),
            (_, None) => return Err(Error::parse(line_no, "missing `p tn` header")),
            ("t", Some(net)) => {
                if toks.len() != 2 {
                    return Err(Error::parse(line_no, "expected `t <vertex>`"));
                }
                if edges_seen > 0 {
                    return Err(Error::parse(line_no, "terminal line after edge lines"));
                }
                if net.terminals().len() == declared.1 {
                    return Err(Error::parse(line_no, "more terminal lines than declared"));
                }
                let v = VertexId(number(toks[1], line_no)?);
                net.add_terminal(v).map_err(|e| Error::parse(line_no, e.to_string()))?;
            }
            ("e", Some(net)) => {
                if toks.len() != 3 {
                    return Err(Error::parse(line_no, "expected `e <u> <v>`"));
                }
                if edges_seen as usize == declared.0 {
                    return Err(Error::parse(line_no, "more edge lines than declared"));
                }
                let u = VertexId(number(toks[1], line_no)?);
                let v = VertexId(number(toks[2], line_no)?);
                edges_seen += 1;
                net.insert_edge(EdgeId(edges_seen), u, v)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
            }
            (tok, Some(_)) => {
                return Err(Error::parse(line_no, format!("unknown line type {tok:?}")))
            }
        }
    }
    let g = g.ok_or_else(|| Error::parse(last_line.max(1), "missing `p tn` header"))?;
    if g.terminals().len() != declared.1 {
        return Err(Error::parse(last_line, "fewer terminal lines than declared"));
    }
    if edges_seen as usize != declared.0 {
        return Err(Error::parse(last_line, "fewer edge lines than declared"));
    }
    Ok(g)
}

fn number(tok: &str, line: usize) -> Result<u32> {
    tok.parse::<u32>()
        .map_err(|_| Error::parse(line, format!("not an unsigned integer: {tok:?}")))
}

/// Writes `g` canonically: vertices renumbered `1..=n` in id order, terminals
/// in terminal order, edges in edge-id order. Parsing the output yields a
/// network isomorphic to `g` with terminal order preserved.
pub fn write_graph(g: &TerminalNetwork) -> String {
    let ix = g.indexed();
    let mut out = String::new();
    writeln!(out, "p tn {} {} {}", ix.n(), ix.m(), ix.terminals.len()).unwrap();
    for &t in &ix.terminals {
        writeln!(out, "t {}", t + 1).unwrap();
    }
    for &(u, v) in &ix.edges {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgraph::vset;

    #[test]
    fn parses_small_file() {
        let g = parse_graph("c demo\np tn 3 3 1\nt 2\ne 1 2\ne 2 3\ne 2 3\n").unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.terminals(), &[VertexId(2)]);
        assert_eq!(g.capacity(&vset([2])).unwrap(), 3);
        assert_eq!(g.endpoints(EdgeId(3)), Some((VertexId(2), VertexId(3))));
    }

    #[test]
    fn write_is_canonical() {
        let text = "p tn 4 3 2\nt 4\nt 1\ne 1 2\ne 2 3\ne 3 4\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(write_graph(&g), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("e 1 2\n", 1),
            ("p tn 2 1 0\ne 1 3\n", 2),
            ("p tn 2 1 1\ne 1 2\nt 1\n", 3),
            ("p tn 2 2 0\ne 1 2\n", 2),
            ("p tn 2 1 0\nx 1\n", 2),
            ("p tn 2 1 0\ne 1 two\n", 2),
            ("p tn 2 0 1\nt 1\nt 1\n", 3),
        ];
        for (text, line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn self_loop_line_consumes_an_id() {
        let g = parse_graph("p tn 2 2 0\ne 1 1\ne 1 2\n").unwrap();
        assert_eq!(g.edge_ids().into_iter().collect::<Vec<_>>(), vec![EdgeId(2)]);
    }
}
