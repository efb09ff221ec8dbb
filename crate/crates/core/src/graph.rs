//! Immutable simple undirected graphs with dense vertex identifiers.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};

/// Largest vertex count a [`VertexSet`] can address.
pub const MAX_SET_VERTICES: usize = 128;

/// A simple graph on vertices `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted. Vertices may carry
/// a human-readable name (gadget constructors use these to mark the
/// distinguished vertices) and a color label for k-expression evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    names: Vec<Option<String>>,
    labels: Option<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are rejected, as are self-loops and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Construction(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::Construction(format!("self-loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(Error::Construction(format!("duplicate edge ({},{})", e.0, e.1)));
            }
        }
        Ok(Self::from_sorted(n, set.into_iter().collect(), vec![None; n], None))
    }

    /// Like [`Graph::new`] but silently merges parallel edges.
    pub(crate) fn new_merging(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Construction(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::Construction(format!("self-loop at vertex {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_sorted(n, set.into_iter().collect(), vec![None; n], None))
    }

    fn from_sorted(
        n: usize,
        edges: Vec<(usize, usize)>,
        names: Vec<Option<String>>,
        labels: Option<Vec<usize>>,
    ) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { n, edges, adj, names, labels }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new(), vec![None; n], None)
    }

    pub fn with_names(mut self, names: Vec<Option<String>>) -> Result<Self> {
        if names.len() != self.n {
            return usage(format!("{} names for {} vertices", names.len(), self.n));
        }
        self.names = names;
        Ok(self)
    }

    pub fn with_name(mut self, v: usize, name: impl Into<String>) -> Self {
        self.names[v] = Some(name.into());
        self
    }

    /// Attaches color labels (1-based, as in k-expressions).
    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.n {
            return usage(format!("{} labels for {} vertices", labels.len(), self.n));
        }
        if labels.contains(&0) {
            return usage("labels are 1-based colors");
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn name(&self, v: usize) -> Option<&str> {
        self.names[v].as_deref()
    }

    pub fn names(&self) -> &[Option<String>] {
        &self.names
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    /// First vertex carrying the given name.
    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s.as_deref() == Some(name))
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    /// Neighbourhood bitmasks, one per vertex.
    pub fn adjacency_masks(&self) -> Result<Vec<u128>> {
        if self.n > MAX_SET_VERTICES {
            return Err(Error::Capacity { what: "vertex count", got: self.n, limit: MAX_SET_VERTICES });
        }
        Ok(self.adj.iter().map(|list| list.iter().fold(0u128, |acc, &w| acc | (1u128 << w))).collect())
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `keep` (listed in the order the new ids should
    /// follow). Names are carried over; labels too, if present.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            if v >= self.n {
                return usage(format!("vertex {v} out of range"));
            }
            if index[v] != usize::MAX {
                return usage(format!("vertex {v} listed twice"));
            }
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let g = Graph::new(keep.len(), edges)?;
        let names = keep.iter().map(|&v| self.names[v].clone()).collect();
        let g = g.with_names(names)?;
        match &self.labels {
            Some(l) => g.with_labels(keep.iter().map(|&v| l[v]).collect()),
            None => Ok(g),
        }
    }
}

/// A subset of the vertices of a graph with at most [`MAX_SET_VERTICES`]
/// vertices, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: u128,
    n: usize,
}

impl VertexSet {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_SET_VERTICES {
            return Err(Error::Capacity { what: "vertex count", got: n, limit: MAX_SET_VERTICES });
        }
        Ok(Self { bits: 0, n })
    }

    pub fn full(n: usize) -> Result<Self> {
        Ok(Self { bits: full_mask(n), ..Self::empty(n)? })
    }

    pub fn from_indices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for v in vertices {
            if v >= n {
                return usage(format!("vertex {v} out of range for n={n}"));
            }
            s.bits |= 1u128 << v;
        }
        Ok(s)
    }

    pub fn from_bits(n: usize, bits: u128) -> Result<Self> {
        let s = Self::empty(n)?;
        if bits & !full_mask(n) != 0 {
            return usage("bits set above the vertex count");
        }
        Ok(Self { bits, ..s })
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits >> v & 1 == 1
    }

    pub fn complement(&self) -> Self {
        Self { bits: !self.bits & full_mask(self.n), n: self.n }
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self { bits: self.bits | other.bits, n: self.n }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits & other.bits == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }
}

pub(crate) fn full_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn check_set(g: &Graph, s: &VertexSet) -> Result<()> {
    if s.universe() != g.n() {
        return usage(format!("vertex set over {} vertices used with a graph on {}", s.universe(), g.n()));
    }
    Ok(())
}

/// |E_G(S)|: edges with both endpoints in `s`.
pub fn induced_edge_count(g: &Graph, s: &VertexSet) -> Result<usize> {
    check_set(g, s)?;
    Ok(g.edges().iter().filter(|&&(u, v)| s.contains(u) && s.contains(v)).count())
}

/// Number of edges with exactly one endpoint in `s`.
pub fn cut_size(g: &Graph, s: &VertexSet) -> Result<usize> {
    check_set(g, s)?;
    Ok(g.edges().iter().filter(|&&(u, v)| s.contains(u) != s.contains(v)).count())
}

fn provenance<'a>(prefix: &str, names: &'a [Option<String>]) -> impl Iterator<Item = Option<String>> + 'a {
    let prefix = prefix.to_string();
    names.iter().enumerate().map(move |(i, s)| match s {
        Some(s) => Some(format!("{prefix}.{s}")),
        None => Some(format!("{prefix}.{i}")),
    })
}

/// `g1 ⊔ g2`: the vertices of `g2` are shifted by `g1.n()`.
///
/// Names are preserved only when at least one side is named; each name then
/// gets an `L.`/`R.` prefix recording which operand it came from.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let shift = g1.n;
    let n = g1.n + g2.n;
    let edges: Vec<_> = g1.edges.iter().copied().chain(g2.edges.iter().map(|&(u, v)| (u + shift, v + shift))).collect();
    let named = g1.names.iter().chain(&g2.names).any(Option::is_some);
    let names =
        if named { provenance("L", &g1.names).chain(provenance("R", &g2.names)).collect() } else { vec![None; n] };
    let labels = match (&g1.labels, &g2.labels) {
        (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
        _ => None,
    };
    Graph::from_sorted(n, edges, names, labels)
}

/// Disjoint union that keeps names verbatim (used by gadget constructors,
/// which manage their own naming).
pub(crate) fn disjoint_union_raw(g1: &Graph, g2: &Graph) -> Graph {
    let shift = g1.n;
    let edges = g1.edges.iter().copied().chain(g2.edges.iter().map(|&(u, v)| (u + shift, v + shift))).collect();
    let names = g1.names.iter().chain(&g2.names).cloned().collect();
    Graph::from_sorted(g1.n + g2.n, edges, names, None)
}

/// Quotient of `g` by the equivalence generated by `pairs`.
///
/// Parallel edges created by the identification are merged. Returns the new
/// graph and, for every old vertex, its new identifier. New identifiers are
/// assigned in order of the smallest old member of each class; a class keeps
/// the name of its first named member.
pub fn identify_vertices(g: &Graph, pairs: &[(usize, usize)]) -> Result<(Graph, Vec<usize>)> {
    let mut parent: Vec<usize> = (0..g.n).collect();
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for &(a, b) in pairs {
        if a >= g.n || b >= g.n {
            return usage(format!("identification ({a},{b}) out of range"));
        }
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut class_id = BTreeMap::new();
    let mut map = vec![0; g.n];
    for (v, slot) in map.iter_mut().enumerate() {
        let r = root(&mut parent, v);
        let next = class_id.len();
        *slot = *class_id.entry(r).or_insert(next);
    }
    let n = class_id.len();
    let mut edges = Vec::with_capacity(g.m());
    for &(u, v) in &g.edges {
        let (a, b) = (map[u], map[v]);
        if a == b {
            return Err(Error::Construction(format!("identifying {u} and {v} would create a self-loop")));
        }
        edges.push((a, b));
    }
    let mut q = Graph::new_merging(n, edges)?;
    for (v, &to) in map.iter().enumerate() {
        if q.names[to].is_none() {
            q.names[to] = g.names[v].clone();
        }
    }
    if let Some(labels) = &g.labels {
        let mut new = vec![0; n];
        for v in 0..g.n {
            if new[map[v]] == 0 {
                new[map[v]] = labels[v];
            }
        }
        q.labels = Some(new);
    }
    Ok((q, map))
}

/// The path on `n` vertices `0 - 1 - ... - n-1`.
pub fn path(n: usize) -> Graph {
    Graph::from_sorted(n, (1..n).map(|i| (i - 1, i)).collect(), vec![None; n], None)
}

/// The star with `leaves` leaves; vertex 0 is the center and is named `cent`.
pub fn star(leaves: usize) -> Graph {
    let n = leaves + 1;
    Graph::from_sorted(n, (1..n).map(|i| (0, i)).collect(), vec![None; n], None).with_name(0, "cent")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_sorted(n, edges, vec![None; n], None)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return usage("a simple cycle needs at least 3 vertices");
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `G_(1)`: a new pendant vertex `v'` (id `v + n`) hangs off every vertex `v`.
pub fn pendant_extension(g: &Graph) -> Graph {
    let n = g.n;
    let edges = g.edges.iter().copied().chain((0..n).map(|v| (v, v + n)));
    let mut names = g.names.clone();
    names.extend((0..n).map(|v| Some(format!("{}'", g.name(v).map_or(v.to_string(), str::to_string)))));
    Graph::new(2 * n, edges).expect("pendant edges are new").with_names(names).expect("2n names")
}

/// Relabels by every permutation and keeps the lexicographically smallest
/// sorted edge list. Only meant for tiny graphs in tests.
pub fn canonical_form(g: &Graph) -> Result<Vec<(usize, usize)>> {
    const LIMIT: usize = 8;
    if g.n > LIMIT {
        return Err(Error::Capacity { what: "vertex count", got: g.n, limit: LIMIT });
    }
    let mut perm: Vec<usize> = (0..g.n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut e: Vec<_> = g.edges.iter().map(|&(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v]))).collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.unwrap_or_default())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<usize>>,
}

impl Graph {
    /// `{"n": .., "edges": [[u,v],..], "names": [..]?, "labels": [..]?}`.
    /// Unnamed vertices are written as the empty string.
    pub fn to_json(&self) -> String {
        let names = self
            .names
            .iter()
            .any(Option::is_some)
            .then(|| self.names.iter().map(|s| s.clone().unwrap_or_default()).collect());
        let doc = GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            names,
            labels: self.labels.clone(),
        };
        serde_json::to_string(&doc).expect("graph json")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::Usage(format!("malformed graph JSON: {e}")))?;
        let mut g = Graph::new(doc.n, doc.edges.iter().map(|e| (e[0], e[1])))?;
        if let Some(names) = doc.names {
            g = g.with_names(names.into_iter().map(|s| (!s.is_empty()).then_some(s)).collect())?;
        }
        if let Some(labels) = doc.labels {
            g = g.with_labels(labels)?;
        }
        Ok(g)
    }
}
