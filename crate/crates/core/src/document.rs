//! Line-oriented text format for digraphs.
//!
//! ```text
//! # comment
//! n 4          # vertex count, first record, exactly once
//! c 1 -1       # charge of vertex 1
//! e 1 2 1 4    # a_12 = 1, a_21 = 4
//! ```
//!
//! Vertices are 1-indexed. Each unordered pair appears in at most one `e`
//! record and each vertex in at most one `c` record.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Digraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub aij: i64,
    pub aji: i64,
}

/// A parsed file: vertex count, sparse charges and edge records, 1-indexed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphDocument {
    pub n: usize,
    pub charges: BTreeMap<usize, i64>,
    pub edges: Vec<Edge>,
}

impl DigraphDocument {
    pub fn to_digraph(&self) -> Digraph {
        let mut g = Digraph::zero(self.n);
        for (&v, &c) in &self.charges {
            g.set(v - 1, v - 1, c);
        }
        for e in &self.edges {
            g.set(e.i - 1, e.j - 1, e.aij);
            g.set(e.j - 1, e.i - 1, e.aji);
        }
        g
    }

    pub fn from_digraph(g: &Digraph) -> Self {
        let n = g.order();
        let charges = (0..n).filter(|&i| g.charge(i) != 0).map(|i| (i + 1, g.charge(i))).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (aij, aji) = (g.get(i, j), g.get(j, i));
                if aij != 0 || aji != 0 {
                    edges.push(Edge { i: i + 1, j: j + 1, aij, aji });
                }
            }
        }
        DigraphDocument { n, charges, edges }
    }
}

impl fmt::Display for DigraphDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for (v, c) in &self.charges {
            writeln!(f, "c {v} {c}")?;
        }
        for e in &self.edges {
            writeln!(f, "e {} {} {} {}", e.i, e.j, e.aij, e.aji)?;
        }
        Ok(())
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (idx, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(idx),
            (true, Some(s)) => {
                out.push(Token { text: &line[s..idx], column: line[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    out
}

pub fn parse(text: &str) -> Result<DigraphDocument> {
    let mut n: Option<usize> = None;
    let mut charges = BTreeMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut seen_pairs = BTreeMap::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(head) = toks.first() else {
            continue;
        };
        let err = |column: usize, message: String| Error::Parse { line: line_no, column, message };
        let int = |t: &Token| -> Result<i64> {
            t.text.parse().map_err(|_| err(t.column, format!("expected an integer, found {:?}", t.text)))
        };
        let arity = |k: usize| -> Result<()> {
            match toks.len().cmp(&(k + 1)) {
                std::cmp::Ordering::Equal => Ok(()),
                std::cmp::Ordering::Less => Err(err(
                    content.trim_end().chars().count() + 1,
                    format!("{:?} needs {k} arguments", head.text),
                )),
                std::cmp::Ordering::Greater => {
                    Err(err(toks[k + 1].column, format!("unexpected {:?}", toks[k + 1].text)))
                }
            }
        };
        match (head.text, n) {
            ("n", None) => {
                arity(1)?;
                let v = int(&toks[1])?;
                if v < 1 {
                    return Err(err(toks[1].column, "vertex count must be positive".into()));
                }
                n = Some(v as usize);
            }
            ("n", Some(_)) => return Err(err(head.column, "duplicate \"n\" record".into())),
            (_, None) => {
                return Err(err(head.column, format!("expected \"n\" first, found {:?}", head.text)))
            }
            (kind @ ("c" | "e"), Some(size)) => {
                let vertex = |t: &Token| -> Result<usize> {
                    let v = int(t)?;
                    if v < 1 || v as usize > size {
                        return Err(err(t.column, format!("vertex {v} outside 1..={size}")));
                    }
                    Ok(v as usize)
                };
                if kind == "c" {
                    arity(2)?;
                    let v = vertex(&toks[1])?;
                    let c = int(&toks[2])?;
                    if charges.insert(v, c).is_some() {
                        return Err(err(head.column, format!("duplicate charge for vertex {v}")));
                    }
                } else {
                    arity(4)?;
                    let i = vertex(&toks[1])?;
                    let j = vertex(&toks[2])?;
                    if i == j {
                        return Err(err(toks[2].column, "edge endpoints must differ; use \"c\" for charges".into()));
                    }
                    let (aij, aji) = (int(&toks[3])?, int(&toks[4])?);
                    let pair = (i.min(j), i.max(j));
                    if let Some(prev) = seen_pairs.insert(pair, line_no) {
                        return Err(err(
                            head.column,
                            format!("duplicate edge {}-{} (first given on line {prev})", pair.0, pair.1),
                        ));
                    }
                    edges.push(Edge { i, j, aij, aji });
                }
            }
            (other, Some(_)) => {
                return Err(err(head.column, format!("unknown record {other:?}; expected n, c or e")))
            }
        }
    }
    let n = n.ok_or(Error::Parse { line: last_line.max(1), column: 1, message: "missing \"n\" record".into() })?;
    Ok(DigraphDocument { n, charges, edges })
}

/// Parses straight to a matrix.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    Ok(parse(text)?.to_digraph())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let g = parse_digraph("n 2\ne 1 2 1 4\n").unwrap();
        assert_eq!(g.rows(), vec![vec![0, 1], vec![4, 0]]);
        let g = parse_digraph("n 2\nc 1 1\nc 2 -1\ne 1 2 1 2\n").unwrap();
        assert_eq!(g.rows(), vec![vec![1, 1], vec![2, -1]]);
        assert_eq!(parse_digraph("n 1\n").unwrap().rows(), vec![vec![0]]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\n  n 3   # three\n e 3 1 2 1\n";
        let g = parse_digraph(text).unwrap();
        assert_eq!(g.get(2, 0), 2);
        assert_eq!(g.get(0, 2), 1);
    }

    fn location(text: &str) -> (usize, usize) {
        match parse(text) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_locations() {
        assert_eq!(location("e 1 2 1 1\n"), (1, 1));
        assert_eq!(location("n 2\ne 1 3 1 1\n"), (2, 5));
        assert_eq!(location("n 2\ne 1 2 1 1\ne 2 1 1 1\n"), (3, 1));
        assert_eq!(location("n 2\nc 1 1\nc 1 -1\n"), (3, 1));
        assert_eq!(location("n 2\ne 1 2 x 1\n"), (2, 7));
        assert_eq!(location("n 2\nn 2\n"), (2, 1));
        assert_eq!(location("n 2\ne 1 1 1 1\n"), (2, 5));
        assert_eq!(location("n 2\nq 1\n"), (2, 1));
        assert_eq!(location("n 2\ne 1 2 1\n"), (2, 8));
        assert_eq!(location("n 2 3\n"), (1, 5));
        assert_eq!(location("# nothing\n"), (1, 1));
        assert_eq!(location("n 0\n"), (1, 3));
    }

    #[test]
    fn round_trip() {
        let text = "n 4\nc 1 -1\nc 3 2\ne 1 2 1 4\ne 2 4 -1 -3\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.to_string(), text);
        assert_eq!(parse(&doc.to_string()).unwrap(), doc);
        assert_eq!(DigraphDocument::from_digraph(&doc.to_digraph()), doc);
    }
}
