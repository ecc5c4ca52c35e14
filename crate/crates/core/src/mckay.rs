//! McKay graphs of Ind(t): weighted undirected graphs whose adjacency
//! matrix is X, and the reduced graph on the plus basis.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::chain::Chain;
use crate::engine::reduced_operator;
use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::Parse(format!("unknown graph format `{other}` (expected dot or json)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McKayGraph {
    pub n: usize,
    pub vertices: Vec<String>,
    pub adjacency: SparseMatrix,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    basis: Vec<String>,
    entries: Vec<(usize, usize, i64)>,
}

pub fn build_graph(chain: &Chain, n: usize) -> Result<McKayGraph> {
    if n == 0 {
        return Err(Error::Precondition("McKay graphs start at level 1".into()));
    }
    let vertices = chain.basis(n).iter().map(|l| chain.format_label(l)).collect();
    Ok(McKayGraph { n, vertices, adjacency: chain.ind_res(n) })
}

pub fn reduced_graph(chain: &Chain, n: usize) -> Result<McKayGraph> {
    let r = reduced_operator(chain, n)?;
    let vertices = r.basis().iter().map(|p| p.to_string()).collect();
    Ok(McKayGraph { n, vertices, adjacency: r.matrix })
}

impl McKayGraph {
    pub fn weight(&self, u: usize, w: usize) -> BigInt {
        self.adjacency.get(u, w)
    }

    /// One entry per unordered pair {u, w} with u ≤ w, loops included, in
    /// row-major order.
    pub fn edges(&self) -> Vec<(usize, usize, BigInt)> {
        self.adjacency.entries_row_major().into_iter().filter(|e| e.0 <= e.1).collect()
    }

    pub fn export(&self, format: ExportFormat) -> Result<String> {
        match format {
            ExportFormat::Dot => Ok(self.to_dot()),
            ExportFormat::Json => self.to_json(),
        }
    }

    pub fn to_dot(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\\\""));
        let mut out = format!("graph mckay_{} {{\n", self.n);
        for v in &self.vertices {
            let _ = writeln!(out, "  {};", quote(v));
        }
        for (u, w, weight) in self.edges() {
            let _ = writeln!(out, "  {} -- {} [weight={weight}];", quote(&self.vertices[u]), quote(&self.vertices[w]));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let entries = self
            .adjacency
            .entries_row_major()
            .into_iter()
            .map(|(r, c, v)| {
                i64::try_from(&v)
                    .map(|v| (r, c, v))
                    .map_err(|_| Error::InvalidTable(format!("edge weight {v} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        let json = GraphJson { n: self.n, basis: self.vertices.clone(), entries };
        Ok(serde_json::to_string_pretty(&json)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: GraphJson = serde_json::from_str(text)?;
        let size = g.basis.len();
        if g.entries.iter().any(|&(r, c, _)| r >= size || c >= size) {
            return Err(Error::Parse("graph entry outside the vertex list".into()));
        }
        let adjacency = SparseMatrix::from_triplets(size, size, g.entries.into_iter().map(|(r, c, v)| (r, c, BigInt::from(v))));
        if !adjacency.is_symmetric() {
            return Err(Error::Parse("graph adjacency is not symmetric".into()));
        }
        Ok(McKayGraph { n: g.n, vertices: g.basis, adjacency })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s2_dot_is_byte_stable() {
        let g = build_graph(&Chain::symmetric(), 2).unwrap();
        let expected = "graph mckay_2 {\n  \"[2]\";\n  \"[1,1]\";\n  \"[2]\" -- \"[2]\" [weight=1];\n  \"[2]\" -- \"[1,1]\" [weight=1];\n  \"[1,1]\" -- \"[1,1]\" [weight=1];\n}\n";
        assert_eq!(g.to_dot(), expected);
        assert_eq!(g.to_dot(), g.export(ExportFormat::Dot).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let g = build_graph(&Chain::from_name("Z2").unwrap(), 3).unwrap();
        assert_eq!(McKayGraph::from_json(&g.to_json().unwrap()).unwrap(), g);
    }

    #[test]
    fn reduced_two_is_a_zero_loop() {
        let g = reduced_graph(&Chain::symmetric(), 2).unwrap();
        assert_eq!(g.vertices, ["[2]"]);
        assert!(g.edges().is_empty());
        assert!("svg".parse::<ExportFormat>().is_err());
    }
}
