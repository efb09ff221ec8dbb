//! k-expressions and the coefficient-table dynamic program over them.
//!
//! A k-expression builds a vertex-colored graph from singletons by disjoint
//! union, joining all vertices of two colors, and recoloring. The dynamic
//! program carries, for every node, the coefficients of the color-refined
//! Ising polynomial indexed by exponent triples `(a, b, c)`: `a_i` counts
//! vertices of color `i` in `S`, `b_ij` and `c_ij` count edges between colors
//! `i, j` inside `S` and inside `S̄`.

mod dp;
mod parser;

pub use dp::{dp_z_labeled, dp_z_labeled_k, project_trivariate, CoeffTable};
pub use parser::parse_kexpr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KExpr {
    /// A single vertex of the given color.
    Singleton(usize),
    Union(Box<KExpr>, Box<KExpr>),
    /// Join every vertex of color `i` to every vertex of color `j`
    /// (for `i = j`, all pairs within the color).
    AddEdges(usize, usize, Box<KExpr>),
    /// Recolor `p` to `r`.
    Relabel(usize, usize, Box<KExpr>),
}

impl KExpr {
    /// Largest color used anywhere.
    pub fn width(&self) -> usize {
        match self {
            KExpr::Singleton(i) => *i,
            KExpr::Union(a, b) => a.width().max(b.width()),
            KExpr::AddEdges(i, j, e) | KExpr::Relabel(i, j, e) => (*i).max(*j).max(e.width()),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            KExpr::Singleton(_) => 1,
            KExpr::Union(a, b) => a.leaves() + b.leaves(),
            KExpr::AddEdges(_, _, e) | KExpr::Relabel(_, _, e) => e.leaves(),
        }
    }
}

impl std::fmt::Display for KExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KExpr::Singleton(i) => write!(f, "v({i})"),
            KExpr::Union(a, b) => write!(f, "u({a},{b})"),
            KExpr::AddEdges(i, j, e) => write!(f, "e({i},{j},{e})"),
            KExpr::Relabel(p, r, e) => write!(f, "r({p},{r},{e})"),
        }
    }
}

/// The labeled graph a k-expression denotes. Vertices are numbered in
/// left-to-right leaf order.
pub fn eval_kexpr(e: &KExpr) -> Result<Graph> {
    fn go(e: &KExpr, colors: &mut Vec<usize>, edges: &mut Vec<(usize, usize)>) -> std::ops::Range<usize> {
        match e {
            KExpr::Singleton(i) => {
                colors.push(*i);
                colors.len() - 1..colors.len()
            }
            KExpr::Union(a, b) => {
                let ra = go(a, colors, edges);
                let rb = go(b, colors, edges);
                ra.start..rb.end
            }
            KExpr::AddEdges(i, j, inner) => {
                let r = go(inner, colors, edges);
                for u in r.clone() {
                    for v in u + 1..r.end {
                        let (cu, cv) = (colors[u], colors[v]);
                        if (cu == *i && cv == *j) || (cu == *j && cv == *i) {
                            edges.push((u, v));
                        }
                    }
                }
                r
            }
            KExpr::Relabel(p, q, inner) => {
                let r = go(inner, colors, edges);
                for v in r.clone() {
                    if colors[v] == *p {
                        colors[v] = *q;
                    }
                }
                r
            }
        }
    }
    let mut colors = Vec::new();
    let mut edges = Vec::new();
    go(e, &mut colors, &mut edges);
    if colors.contains(&0) {
        return Err(Error::Usage("colors are 1-based".into()));
    }
    Graph::new_merging(colors.len(), edges)?.with_labels(colors)
}
