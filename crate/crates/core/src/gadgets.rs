//! Graph transformations used by the reductions, each returning a plain
//! [`Graph`] together with the names of its distinguished vertices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{self, disjoint_union_raw, identify_vertices, Graph};

/// A graph with named distinguished vertices (`tr1`, `tr2`, `hd`, `cent`, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub marks: BTreeMap<String, usize>,
}

impl GadgetGraph {
    fn new(graph: Graph, marks: &[(&str, usize)]) -> Self {
        let marks = marks.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        Self { graph, marks }
    }

    pub fn mark(&self, name: &str) -> Result<usize> {
        self.marks.get(name).copied().ok_or_else(|| Error::Usage(format!("no vertex marked {name:?}")))
    }
}

/// Validates a set of positive integers and returns it sorted.
pub fn normalize_set(h: &[u32]) -> Result<Vec<u32>> {
    let mut v = h.to_vec();
    v.sort_unstable();
    if v.first() == Some(&0) {
        return Err(Error::Construction("gadget parameters must be positive".into()));
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Construction(format!("repeated element in {h:?}")));
    }
    Ok(v)
}

/// `L_h`: the path on `h + 1` vertices plus two apexes `tr1`, `tr2` joined to
/// every path vertex. `hd` is the path endpoint added last.
///
/// Layout: `tr1 = 0`, `tr2 = 1`, path vertices `2..=h+2` with `hd = h+2`.
pub fn build_l(h: u32) -> GadgetGraph {
    let h = h as usize;
    let n = h + 3;
    let mut edges = Vec::with_capacity(3 * h + 2);
    for p in 2..n {
        edges.push((0, p));
        edges.push((1, p));
        if p > 2 {
            edges.push((p - 1, p));
        }
    }
    let mut names = vec![Some("tr1".to_string()), Some("tr2".to_string())];
    names.extend((0..=h).map(|i| Some(if i == h { "hd".to_string() } else { format!("p{i}") })));
    let g = Graph::new(n, edges).expect("L_h is simple").with_names(names).expect("names");
    GadgetGraph::new(g, &[("tr1", 0), ("tr2", 1), ("hd", n - 1)])
}

/// `Φ_H`: copies of `L_h` for `h ∈ H` with all `tr1` glued together and all
/// `tr2` glued together. `tr1 = 0`, `tr2 = 1`.
pub fn build_phi(h: &[u32]) -> Result<GadgetGraph> {
    let hs = normalize_set(h)?;
    let n = 2 + hs.iter().map(|&h| h as usize + 1).sum::<usize>();
    let mut edges = Vec::new();
    let mut names = vec![Some("tr1".to_string()), Some("tr2".to_string())];
    let mut next = 2;
    for &h in &hs {
        let h = h as usize;
        for i in 0..=h {
            let p = next + i;
            edges.push((0, p));
            edges.push((1, p));
            if i > 0 {
                edges.push((p - 1, p));
            }
            names.push(Some(if i == h { format!("L{h}.hd") } else { format!("L{h}.p{i}") }));
        }
        next += h + 1;
    }
    let g = Graph::new(n, edges)?.with_names(names)?;
    Ok(GadgetGraph::new(g, &[("tr1", 0), ("tr2", 1)]))
}

fn vertex_names(g: &Graph) -> Vec<Option<String>> {
    (0..g.n()).map(|v| Some(g.name(v).map_or_else(|| format!("v{v}"), str::to_string))).collect()
}

fn prefixed(g: &Graph, prefix: &str) -> Graph {
    let names = (0..g.n())
        .map(|v| Some(format!("{prefix}.{}", g.name(v).map_or_else(|| v.to_string(), str::to_string))))
        .collect();
    g.clone().with_names(names).expect("same length")
}

/// Glues one copy of `gadget` per item of `roots`: the copy's vertex
/// `anchors[j]` is identified with `roots[i][j]` of `base`. Original vertex
/// ids of `base` are preserved.
fn glue_copies(base: &Graph, gadget: &Graph, anchors: &[usize], roots: &[(String, Vec<usize>)]) -> Result<Graph> {
    let mut acc = base.clone().with_names(vertex_names(base))?;
    let mut pairs = Vec::new();
    for (label, root) in roots {
        let offset = acc.n();
        acc = disjoint_union_raw(&acc, &prefixed(gadget, label));
        for (&a, &r) in anchors.iter().zip(root) {
            pairs.push((r, offset + a));
        }
    }
    let (g, map) = identify_vertices(&acc, &pairs)?;
    debug_assert!((0..base.n()).all(|v| map[v] == v));
    // the glued vertices keep the base graph's names
    Ok(g)
}

/// `G ⊗ H`: every edge `{u1, u2}` (with `u1 < u2`) of `g` is replaced by a
/// copy of `Φ_H` with `tr1 ↦ u1` and `tr2 ↦ u2`.
pub fn build_otimes(g: &Graph, h: &[u32]) -> Result<Graph> {
    let phi = build_phi(h)?;
    let base = Graph::empty(g.n()).with_names(g.names().to_vec())?;
    let roots: Vec<_> = g.edges().iter().map(|&(u, v)| (format!("e{u}_{v}"), vec![u, v])).collect();
    glue_copies(&base, &phi.graph, &[0, 1], &roots)
}

/// `G_(1)`: one pendant vertex attached to every vertex.
pub fn build_pendant(g: &Graph) -> Graph {
    graph::pendant_extension(g)
}

/// The star `S_n` with center marked `cent` (vertex 0).
pub fn build_star(leaves: usize) -> GadgetGraph {
    GadgetGraph::new(graph::star(leaves), &[("cent", 0)])
}

/// `S_H`: a new center joined to the centers of stars `S_h`, `h ∈ H`.
/// The new center is vertex 0, marked `cent`.
pub fn build_s_h(h: &[u32]) -> Result<GadgetGraph> {
    let hs = normalize_set(h)?;
    let mut edges = Vec::new();
    let mut names = vec![Some("cent".to_string())];
    let mut next = 1;
    for &h in &hs {
        let c = next;
        edges.push((0, c));
        names.push(Some(format!("S{h}.cent")));
        for i in 1..=h as usize {
            edges.push((c, c + i));
            names.push(Some(format!("S{h}.leaf{i}")));
        }
        next += h as usize + 1;
    }
    let g = Graph::new(next, edges)?.with_names(names)?;
    Ok(GadgetGraph::new(g, &[("cent", 0)]))
}

/// `S_H(G)`: the rooted product of `g` with `(S_H, cent)`. Vertices of `g`
/// keep their ids.
pub fn build_s_h_of(g: &Graph, h: &[u32]) -> Result<Graph> {
    let s = build_s_h(h)?;
    let roots: Vec<_> = (0..g.n()).map(|v| (format!("v{v}"), vec![v])).collect();
    glue_copies(g, &s.graph, &[0], &roots)
}

/// `STh^ℓ(G)` with bookkeeping for the neighbourhoods `N_ℓ(e)⁺`.
#[derive(Debug, Clone)]
pub struct Thickening {
    pub graph: Graph,
    pub original: Graph,
    pub l: usize,
}

impl Thickening {
    /// Midpoints of the `k`-th edge of the original graph.
    pub fn midpoints(&self, k: usize) -> std::ops::Range<usize> {
        let start = self.original.n() + 4 * self.l * k;
        start..start + 4 * self.l
    }

    /// `N_ℓ(e)⁺` for the `k`-th original edge: the subgraph induced on its two
    /// endpoints (marked `u`, `w`) and its `4ℓ` midpoints.
    pub fn n_plus(&self, k: usize) -> Result<GadgetGraph> {
        let &(u, w) =
            self.original.edges().get(k).ok_or_else(|| Error::Usage(format!("edge index {k} out of range")))?;
        let keep: Vec<usize> = [u, w].into_iter().chain(self.midpoints(k)).collect();
        let sub = self.graph.induced_subgraph(&keep)?;
        Ok(GadgetGraph::new(sub, &[("u", 0), ("w", 1)]))
    }
}

/// Replaces every edge `{u, w}` by `4ℓ` new vertices adjacent to both `u`
/// and `w`. Original vertices keep their ids; the midpoints of the `k`-th
/// edge come next, in edge order.
pub fn build_sth(g: &Graph, l: usize) -> Result<Thickening> {
    if l == 0 {
        return Err(Error::Construction("thickening parameter must be positive".into()));
    }
    let n = g.n() + 4 * l * g.m();
    let mut edges = Vec::with_capacity(8 * l * g.m());
    let mut names = vertex_names(g);
    for (k, &(u, w)) in g.edges().iter().enumerate() {
        for i in 0..4 * l {
            let v = g.n() + 4 * l * k + i;
            edges.push((u, v));
            edges.push((w, v));
            names.push(Some(format!("v_{{{u},{w}}},{}", i + 1)));
        }
    }
    let graph = Graph::new(n, edges)?.with_names(names)?;
    Ok(Thickening { graph, original: g.clone(), l })
}

/// `R^{ℓ,q}(G)`: attach `2q` leaves to every vertex, then thicken.
pub fn build_r(g: &Graph, l: usize, q: usize) -> Result<Graph> {
    if q == 0 {
        return Err(Error::Construction("leaf parameter must be positive".into()));
    }
    let n = g.n();
    let leaves = 2 * q;
    let edges = g.edges().iter().copied().chain((0..n).flat_map(|v| (0..leaves).map(move |i| (v, n + v * leaves + i))));
    let mut names = vertex_names(g);
    names.extend((0..n).flat_map(|v| (0..leaves).map(move |i| Some(format!("leaf{v}_{i}")))));
    let with_leaves = Graph::new(n * (1 + leaves), edges)?.with_names(names)?;
    Ok(build_sth(&with_leaves, l)?.graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonical_form, complete, path};
    use proptest::prelude::*;

    #[test]
    fn l_gadget_sizes() {
        let l0 = build_l(0);
        assert_eq!((l0.graph.n(), l0.graph.m()), (3, 2));
        assert_eq!(canonical_form(&l0.graph).unwrap(), canonical_form(&path(3)).unwrap());
        let l1 = build_l(1);
        assert_eq!((l1.graph.n(), l1.graph.m()), (4, 5));
        let l5 = build_l(5);
        assert_eq!((l5.graph.n(), l5.graph.m()), (8, 17));
        assert_eq!(l5.mark("hd").unwrap(), 7);
        assert_eq!(l5.graph.name(7), Some("hd"));
        assert_eq!(l5.graph.degree(7), 3);
    }

    #[test]
    fn phi_sizes() {
        assert_eq!(build_phi(&[1, 3, 4]).unwrap().graph.n(), 13);
        let p1 = build_phi(&[1]).unwrap();
        assert_eq!(p1.graph.n(), 4);
        assert_eq!(p1.graph.edges(), build_l(1).graph.edges());
        let e = build_phi(&[]).unwrap();
        assert_eq!((e.graph.n(), e.graph.m()), (2, 0));
        assert!(build_phi(&[0]).is_err());
        assert!(build_phi(&[2, 2]).is_err());
    }

    #[test]
    fn otimes_sizes() {
        let k2 = complete(2);
        let g = build_otimes(&k2, &[1]).unwrap();
        assert_eq!(g.edges(), build_phi(&[1]).unwrap().graph.edges());
        assert_eq!(build_otimes(&path(3), &[1]).unwrap().n(), 7);
        let empty = Graph::empty(3);
        assert_eq!(build_otimes(&empty, &[1, 2]).unwrap().edges(), empty.edges());
        // no original edge survives
        let g = build_otimes(&complete(3), &[1, 2]).unwrap();
        assert!(!g.has_edge(0, 1) && !g.has_edge(0, 2) && !g.has_edge(1, 2));
        assert_eq!(g.n(), 3 + 3 * 5);
    }

    #[test]
    fn pendant_cases() {
        assert_eq!(build_pendant(&Graph::empty(1)).edges(), complete(2).edges());
        let p = build_pendant(&complete(2));
        assert_eq!(canonical_form(&p).unwrap(), canonical_form(&path(4)).unwrap());
        let p = build_pendant(&Graph::empty(2));
        assert_eq!((p.n(), p.m()), (4, 2));
        assert_eq!(p.components().len(), 2);
    }

    #[test]
    fn s_h_sizes() {
        let s = build_s_h(&[2, 3, 5]).unwrap();
        assert_eq!(s.graph.n(), 1 + 3 + 4 + 6);
        assert_eq!(s.graph.degree(0), 3);
        let g = build_s_h_of(&Graph::empty(1), &[1]).unwrap();
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&path(3)).unwrap());
        assert_eq!(g.degree(0), 1);
        let k2 = complete(2);
        assert_eq!(build_s_h_of(&k2, &[]).unwrap().edges(), k2.edges());
        let g = build_s_h_of(&path(3), &[1, 2]).unwrap();
        assert_eq!(g.n(), 3 * (1 + 2 + 3));
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2));
    }

    #[test]
    fn thickening_sizes() {
        let t = build_sth(&complete(2), 1).unwrap();
        assert_eq!((t.graph.n(), t.graph.m()), (6, 8));
        assert!(!t.graph.has_edge(0, 1));
        let t2 = build_sth(&complete(2), 2).unwrap();
        assert_eq!((t2.graph.n(), t2.graph.m()), (10, 16));
        let np = t.n_plus(0).unwrap();
        assert_eq!((np.graph.n(), np.graph.m()), (6, 8));
        assert!(build_sth(&complete(2), 0).is_err());
    }

    #[test]
    fn r_sizes() {
        let r = build_r(&complete(2), 1, 2).unwrap();
        assert_eq!((r.n(), r.m()), (46, 72));
        let r = build_r(&Graph::empty(1), 1, 1).unwrap();
        assert_eq!((r.n(), r.m()), (11, 16));
        let r = build_r(&complete(2), 1, 1).unwrap();
        assert_eq!((r.n(), r.m()), (26, 40));
    }

    fn small_set() -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::btree_set(1u32..5, 0..3).prop_map(|s| s.into_iter().collect())
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..6).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn counts_match_formulas(g in arb_graph(), hs in small_set(), l in 1usize..3, q in 1usize..3) {
            let (n, m) = (g.n(), g.m());
            let sum: usize = hs.iter().map(|&h| h as usize + 1).sum();
            let edges_l: usize = hs.iter().map(|&h| 3 * h as usize + 2).sum();

            let o = build_otimes(&g, &hs).unwrap();
            prop_assert_eq!((o.n(), o.m()), (n + m * sum, m * edges_l));

            let s = build_s_h_of(&g, &hs).unwrap();
            let star_edges: usize = hs.iter().map(|&h| h as usize + 1).sum();
            prop_assert_eq!((s.n(), s.m()), (n * (1 + sum), m + n * star_edges));

            let t = build_sth(&g, l).unwrap();
            prop_assert_eq!((t.graph.n(), t.graph.m()), (n + 4 * l * m, 8 * l * m));

            let r = build_r(&g, l, q).unwrap();
            prop_assert_eq!((r.n(), r.m()), (n * (1 + 2 * q * (1 + 4 * l)) + 4 * l * m, 8 * l * m + 16 * l * q * n));
        }

        #[test]
        fn otimes_keeps_the_vertex_set(g in arb_graph(), hs in small_set()) {
            let o = build_otimes(&g, &hs).unwrap();
            for &(u, v) in g.edges() {
                // both apexes of a copy are the original endpoints
                prop_assert_eq!(o.degree(u) >= hs.len(), true);
                prop_assert!(v < g.n());
            }
            for v in 0..g.n() {
                let expect: usize = g.degree(v) * hs.iter().map(|&h| h as usize + 1).sum::<usize>();
                prop_assert_eq!(o.degree(v), expect);
            }
        }
    }
}
