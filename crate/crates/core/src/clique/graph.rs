use std::fmt::Write as _;

use crate::bits;
use crate::error::{GbnnError, Result};

/// Undirected simple graph over nodes `0..n`, stored as packed adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let words = bits::words_for(n);
        Self {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// Adds `{a, b}`; self loops are ignored.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n, "edge ({a}, {b}) out of range");
        if a == b {
            return;
        }
        let w = self.words;
        bits::set(&mut self.adj[a * w..(a + 1) * w], b);
        bits::set(&mut self.adj[b * w..(b + 1) * w], a);
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        bits::count(&self.adj) / 2
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        bits::get(self.row(a), b)
    }

    pub fn degree(&self, a: usize) -> usize {
        bits::count(self.row(a))
    }

    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.row(a))
    }

    pub fn is_clique(&self, nodes: &[usize]) -> bool {
        nodes.iter().enumerate().all(|(i, &a)| {
            nodes[i + 1..]
                .iter()
                .all(|&b| a != b && self.adjacent(a, b))
        })
    }

    pub(crate) fn row(&self, a: usize) -> &[u64] {
        &self.adj[a * self.words..(a + 1) * self.words]
    }

    /// DIMACS edge format with 1-based node ids; `groups` become comment lines.
    pub fn to_dimacs(&self, groups: &[Vec<usize>]) -> String {
        let mut out = String::new();
        for (i, g) in groups.iter().enumerate() {
            let ids: Vec<String> = g.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(out, "c cluster {i}: {}", ids.join(" "));
        }
        let _ = writeln!(out, "p edge {} {}", self.n, self.edge_count());
        for a in 0..self.n {
            for b in self.neighbors(a).filter(|&b| b > a) {
                let _ = writeln!(out, "e {} {}", a + 1, b + 1);
            }
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<Self> {
        let err = |line: usize, message: &str| GbnnError::Parse {
            line,
            message: message.to_string(),
        };
        let mut graph: Option<Graph> = None;
        for (i, raw) in text.lines().enumerate() {
            let no = i + 1;
            let mut f = raw.split_whitespace();
            match f.next() {
                None | Some("c") => {}
                Some("p") => {
                    let _format = f.next().ok_or_else(|| err(no, "missing format"))?;
                    let n: usize = f
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err(no, "bad node count"))?;
                    graph = Some(Graph::new(n));
                }
                Some("e") => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| err(no, "edge before header"))?;
                    let mut end = || -> Result<usize> {
                        let v: usize = f
                            .next()
                            .and_then(|s| s.parse().ok())
                            .ok_or_else(|| err(no, "bad edge endpoint"))?;
                        if v == 0 || v > g.n {
                            return Err(err(no, "edge endpoint out of range"));
                        }
                        Ok(v - 1)
                    };
                    let (a, b) = (end()?, end()?);
                    g.add_edge(a, b);
                }
                Some(other) => return Err(err(no, &format!("unknown line type {other:?}"))),
            }
        }
        graph.ok_or_else(|| err(0, "missing problem line"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4), (0, 4)]);
        let text = g.to_dimacs(&[vec![0, 1], vec![2, 3, 4]]);
        assert!(text.starts_with("c cluster 0: 1 2\nc cluster 1: 3 4 5\np edge 5 4\n"));
        assert!(text.contains("e 1 2\n"));
        assert_eq!(Graph::from_dimacs(&text).unwrap(), g);
        assert!(Graph::from_dimacs("e 1 2\n").is_err());
        assert!(Graph::from_dimacs("p edge 2 1\ne 1 3\n").is_err());
    }
}
