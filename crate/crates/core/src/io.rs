//! Graph interchange: the JSON graph document and the compact text form.
//!
//! JSON: `{"n": 4, "edges": [[0,1],[0,2]], "terminals": [0,3]}` with
//! `terminals` optional for plain graphs.
//!
//! Text: a header line `n m`, then `m` lines `u v`, then optionally `T s t`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{validate_parts, Diagnostic, SimpleGraph, TwoTerminalGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terminals: Option<[usize; 2]>,
}

impl GraphDocument {
    pub fn from_simple(g: &SimpleGraph) -> Self {
        Self {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            terminals: None,
        }
    }

    pub fn from_two_terminal(g: &TwoTerminalGraph) -> Self {
        let (s, t) = g.terminals();
        Self {
            terminals: Some([s, t]),
            ..Self::from_simple(g.graph())
        }
    }

    /// Accepts either representation; JSON is recognized by a leading `{`.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            Ok(serde_json::from_str(input)?)
        } else {
            Self::parse_text(input)
        }
    }

    pub fn parse_text(input: &str) -> Result<Self> {
        let mut lines = input
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty graph text".into()))?;
        let [n, m] = parse_ints::<2>(header)?;
        let mut edges = Vec::with_capacity(m);
        let mut terminals = None;
        for line in lines {
            if let Some(rest) = line.strip_prefix('T') {
                if terminals.is_some() {
                    return Err(Error::Parse("more than one terminal line".into()));
                }
                terminals = Some(parse_ints::<2>(rest)?);
            } else if terminals.is_some() {
                return Err(Error::Parse("edge line after the terminal line".into()));
            } else {
                edges.push(parse_ints::<2>(line)?);
            }
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header announces {m} edges, found {}",
                edges.len()
            )));
        }
        Ok(Self {
            n,
            edges,
            terminals,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph documents always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for [u, v] in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        if let Some([s, t]) = self.terminals {
            out.push_str(&format!("T {s} {t}\n"));
        }
        out
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let edges: Vec<_> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        validate_parts(self.n, &edges, self.terminals.map(|[s, t]| (s, t)))
    }

    pub fn to_simple(&self) -> Result<SimpleGraph> {
        SimpleGraph::new(self.n, self.edges.iter().map(|&[u, v]| (u, v)))
    }

    pub fn to_two_terminal(&self) -> Result<TwoTerminalGraph> {
        let [s, t] = self
            .terminals
            .ok_or_else(|| Error::Parse("graph document has no terminals".into()))?;
        TwoTerminalGraph::new(self.to_simple()?, s, t)
    }
}

fn parse_ints<const K: usize>(line: &str) -> Result<[usize; K]> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != K {
        return Err(Error::Parse(format!("expected {K} integers in {line:?}")));
    }
    let mut out = [0; K];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p
            .parse()
            .map_err(|_| Error::Parse(format!("not a vertex index: {p:?}")))?;
    }
    Ok(out)
}

pub fn read_document(path: impl AsRef<Path>) -> Result<GraphDocument> {
    GraphDocument::parse(&fs::read_to_string(path)?)
}

/// Reads a document and checks it describes a connected two-terminal graph.
pub fn read_two_terminal(path: impl AsRef<Path>) -> Result<TwoTerminalGraph> {
    let doc = read_document(path)?;
    check_diagnostics(&doc)?;
    doc.to_two_terminal()
}

/// Reads a document as a connected simple graph; terminals are ignored.
pub fn read_simple(path: impl AsRef<Path>) -> Result<SimpleGraph> {
    let mut doc = read_document(path)?;
    doc.terminals = None;
    check_diagnostics(&doc)?;
    doc.to_simple()
}

fn check_diagnostics(doc: &GraphDocument) -> Result<()> {
    let diags = doc.validate();
    if diags.is_empty() {
        Ok(())
    } else {
        let text: Vec<String> = diags.iter().map(ToString::to_string).collect();
        Err(Error::InvalidGraph(text.join(", ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_text_agree() {
        let json = r#"{"n": 4, "edges": [[0,1],[0,2],[0,3],[1,2]], "terminals": [3,1]}"#;
        let text = "4 4\n0 1\n0 2\n0 3\n1 2\nT 3 1\n";
        let a = GraphDocument::parse(json).unwrap();
        let b = GraphDocument::parse(text).unwrap();
        assert_eq!(a, b);
        assert_eq!(GraphDocument::parse(&a.to_text()).unwrap(), a);
        assert_eq!(GraphDocument::parse(&a.to_json()).unwrap(), a);
        let g = a.to_two_terminal().unwrap();
        assert_eq!(g.terminals(), (3, 1));
        assert_eq!(GraphDocument::from_two_terminal(&g), a);
    }

    #[test]
    fn simple_payload_omits_terminals() {
        let doc = GraphDocument::from_simple(&SimpleGraph::path(3));
        assert_eq!(doc.to_json(), r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert!(doc.to_two_terminal().is_err());
    }

    #[test]
    fn malformed_text() {
        assert!(GraphDocument::parse("3 2\n0 1\n").is_err());
        assert!(GraphDocument::parse("3 1\n0 x\n").is_err());
        assert!(GraphDocument::parse("").is_err());
        assert!(GraphDocument::parse("3 1\nT 0 2\n0 1\n").is_err());
    }

    #[test]
    fn diagnostics_through_documents() {
        let doc = GraphDocument::parse("3 2\n0 1\n2 2\nT 0 1\n").unwrap();
        let d = doc.validate();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].to_string(), "self-loop");
        assert_eq!(d[1].to_string(), "not connected");
    }
}
