//! Hypergraphs over an indexed vertex set, and their text encoding.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

/// A hypergraph on vertices `0..vertex_count` with edges of size >= 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut cleaned = Vec::with_capacity(edges.len());
        for (i, edge) in edges.into_iter().enumerate() {
            let mut edge = edge;
            edge.sort_unstable();
            edge.dedup();
            if edge.len() < 2 {
                return Err(Error::InvalidData {
                    line: i + 2,
                    msg: format!("edge {i} has fewer than 2 distinct vertices"),
                });
            }
            if let Some(&v) = edge.last() {
                if v >= vertex_count {
                    return Err(Error::InvalidData {
                        line: i + 2,
                        msg: format!("edge {i} references vertex {v} >= {vertex_count}"),
                    });
                }
            }
            cleaned.push(edge);
        }
        Ok(Hypergraph {
            vertex_count,
            edges: cleaned,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count()
    }

    /// Parses the text format: a `hypergraph <vertex_count>` header, then one
    /// edge per line as space-separated vertex indices.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: String::from("empty file"),
        })?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("hypergraph") {
            return Err(Error::Parse {
                line: 1,
                msg: String::from("expected header 'hypergraph <vertex_count>'"),
            });
        }
        let vertex_count: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(Error::Parse {
                line: 1,
                msg: String::from("missing or invalid vertex count"),
            })?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                line: 1,
                msg: String::from("trailing tokens after vertex count"),
            });
        }
        let mut edges = Vec::new();
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let edge = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Parse {
                        line: idx + 1,
                        msg: format!("invalid vertex index '{tok}'"),
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            edges.push(edge);
        }
        Hypergraph::new(vertex_count, edges)
    }

    pub fn render(&self) -> String {
        let mut out = format!("hypergraph {}\n", self.vertex_count);
        for edge in &self.edges {
            let line: Vec<String> = edge.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}
