//! Brute-force evaluation of the Ising polynomials by subset enumeration.
//!
//! For `S ⊆ V` write `a = |E(S)|`, `s = |S|`, `c = |E(S̄)|`. The trivariate
//! polynomial is `Σ_S x^a y^s z^c`; the bivariate one sets `x = z = t`.

pub mod oracles;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{Poly, Rat};
use crate::error::{usage, Error, Result};
use crate::graph::{full_mask, Graph, VertexSet};

/// Default vertex cap for symbolic enumeration.
pub const SYMBOLIC_CAP: usize = 22;
/// Default vertex cap for numeric enumeration.
pub const NUMERIC_CAP: usize = 30;

pub const XYZ: [&str; 3] = ["x", "y", "z"];
pub const TY: [&str; 2] = ["t", "y"];

/// Which vertices of `S` contribute a factor of `y` in a constrained sum
/// over `B ⊆ S ⊆ V∖C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YConvention {
    /// `y^{|S|}`.
    FullSet,
    /// `y^{|S∖B|}`: the forced vertices are not weighted.
    ExcludeForced,
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        return Err(Error::Capacity { what: "vertices for enumeration", got: g.n(), limit: cap });
    }
    Ok(())
}

/// `(|E(S)|, |E(S̄)|)` computed directly from the masks.
fn edge_counts(adj: &[u128], s: u128, full: u128) -> (u32, u32) {
    let comp = !s & full;
    let (mut inside, mut outside) = (0u32, 0u32);
    for (v, &nb) in adj.iter().enumerate() {
        if s >> v & 1 == 1 {
            inside += (nb & s).count_ones();
        } else {
            outside += (nb & comp).count_ones();
        }
    }
    (inside / 2, outside / 2)
}

/// Counts of subsets by `(|E(S)|, |S|, |E(S̄)|)`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    n: usize,
    m: usize,
    counts: Vec<u64>,
}

impl Histogram {
    fn new(n: usize, m: usize) -> Self {
        Self { n, m, counts: vec![0; (m + 1) * (n + 1) * (m + 1)] }
    }

    fn index(&self, a: u32, s: u32, c: u32) -> usize {
        (a as usize * (self.n + 1) + s as usize) * (self.m + 1) + c as usize
    }

    fn bump(&mut self, a: u32, s: u32, c: u32) {
        let i = self.index(a, s, c);
        self.counts[i] += 1;
    }

    fn merge(mut self, other: Self) -> Self {
        for (x, y) in self.counts.iter_mut().zip(other.counts) {
            *x += y;
        }
        self
    }

    /// Nonzero entries `((a, s, c), count)`.
    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32, u32), u64)> + '_ {
        let (n1, m1) = (self.n + 1, self.m + 1);
        self.counts.iter().enumerate().filter(|(_, &k)| k > 0).map(move |(i, &k)| {
            let c = i % m1;
            let s = (i / m1) % n1;
            let a = i / (m1 * n1);
            ((a as u32, s as u32, c as u32), k)
        })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Subset histogram by a Gray-code walk, split into `2^chunk_bits`
/// independent chunks processed in parallel. The result does not depend on
/// the chunking.
pub fn subset_histogram(g: &Graph, cap: usize, chunk_bits: usize) -> Result<Histogram> {
    check_cap(g, cap)?;
    let n = g.n();
    let adj = g.adjacency_masks()?;
    let full = full_mask(n);
    let high = chunk_bits.min(n);
    let low = n - high;
    let chunk = |c: u64| -> Histogram {
        let mut h = Histogram::new(n, g.m());
        let mut s: u128 = (c as u128) << low;
        let (mut inside, mut outside) = edge_counts(&adj, s, full);
        let mut size = s.count_ones();
        h.bump(inside, size, outside);
        for i in 1u64..(1u64 << low) {
            let v = i.trailing_zeros() as usize;
            let bit = 1u128 << v;
            let nb = adj[v];
            if s & bit == 0 {
                inside += (nb & s).count_ones();
                outside -= (nb & !s & full).count_ones();
                s |= bit;
                size += 1;
            } else {
                s &= !bit;
                inside -= (nb & s).count_ones();
                outside += (nb & !s & full).count_ones();
                size -= 1;
            }
            h.bump(inside, size, outside);
        }
        h
    };
    let hist = (0u64..(1u64 << high)).into_par_iter().map(chunk).reduce(|| Histogram::new(n, g.m()), Histogram::merge);
    Ok(hist)
}

/// `Z(G; x, y, z)` read off a subset histogram.
pub fn trivariate_from_histogram(h: &Histogram) -> Poly {
    let mut p = Poly::zero(&XYZ);
    for ((a, s, c), k) in h.entries() {
        p.add_term(vec![a, s, c], Rat::from_integer(k.into()));
    }
    p
}

/// `Z(G; t, y)` read off a subset histogram.
pub fn bivariate_from_histogram(h: &Histogram) -> Poly {
    let mut p = Poly::zero(&TY);
    for ((a, s, c), k) in h.entries() {
        p.add_term(vec![a + c, s], Rat::from_integer(k.into()));
    }
    p
}

/// Lexicographic enumeration, building the polynomial from
/// `(a, s, c) ↦ monomial`.
fn enumerate_symbolic(g: &Graph, cap: usize, mono: impl Fn(u32, u32, u32) -> Vec<u32>, vars: &[&str]) -> Result<Poly> {
    check_cap(g, cap)?;
    let adj = g.adjacency_masks()?;
    let full = full_mask(g.n());
    let mut counts = std::collections::BTreeMap::<Vec<u32>, u64>::new();
    for s in 0..=full {
        let (a, c) = edge_counts(&adj, s, full);
        *counts.entry(mono(a, s.count_ones(), c)).or_default() += 1;
    }
    Poly::from_terms(vars, counts.into_iter().map(|(e, k)| (e, Rat::from_integer(k.into()))))
}

pub fn z_trivariate(g: &Graph) -> Result<Poly> {
    z_trivariate_with_cap(g, SYMBOLIC_CAP)
}

pub fn z_trivariate_with_cap(g: &Graph, cap: usize) -> Result<Poly> {
    enumerate_symbolic(g, cap, |a, s, c| vec![a, s, c], &XYZ)
}

pub fn z_bivariate(g: &Graph) -> Result<Poly> {
    z_bivariate_with_cap(g, SYMBOLIC_CAP)
}

pub fn z_bivariate_with_cap(g: &Graph, cap: usize) -> Result<Poly> {
    enumerate_symbolic(g, cap, |a, s, c| vec![a + c, s], &TY)
}

/// `Z(G; t, 1)` as a polynomial in `t`.
pub fn z_t_only(g: &Graph) -> Result<Poly> {
    z_bivariate(g)?.map_vars(&["t"], &[Some(0), None])
}

fn constrained_masks(g: &Graph, b: &VertexSet, c: &VertexSet) -> Result<(u128, u128)> {
    if b.universe() != g.n() || c.universe() != g.n() {
        return usage("constraint sets do not match the graph");
    }
    if !b.is_disjoint(c) {
        return usage("B and C overlap");
    }
    let free = full_mask(g.n()) & !b.bits() & !c.bits();
    Ok((b.bits(), free))
}

/// `Σ_{B ⊆ S ⊆ V∖C} x^{|E(S)|} y^{…} z^{|E(S̄)|}` over `x, y, z`.
pub fn z_constrained_trivariate(g: &Graph, b: &VertexSet, c: &VertexSet, conv: YConvention) -> Result<Poly> {
    let (forced, free) = constrained_masks(g, b, c)?;
    if free.count_ones() as usize > SYMBOLIC_CAP {
        return Err(Error::Capacity {
            what: "free vertices for enumeration",
            got: free.count_ones() as usize,
            limit: SYMBOLIC_CAP,
        });
    }
    let adj = g.adjacency_masks()?;
    let full = full_mask(g.n());
    let shift = match conv {
        YConvention::FullSet => 0,
        YConvention::ExcludeForced => forced.count_ones(),
    };
    let mut p = Poly::zero(&XYZ);
    let mut sub: u128 = 0;
    loop {
        let s = forced | sub;
        let (a, cc) = edge_counts(&adj, s, full);
        p.add_term(vec![a, s.count_ones() - shift, cc], Rat::one());
        sub = sub.wrapping_sub(free) & free;
        if sub == 0 {
            break;
        }
    }
    Ok(p)
}

/// `Z(G; B, C; t, y)`: the constrained bivariate sum.
pub fn z_constrained(g: &Graph, b: &VertexSet, c: &VertexSet, conv: YConvention) -> Result<Poly> {
    let p = z_constrained_trivariate(g, b, c, conv)?;
    p.map_vars(&TY, &[Some(0), Some(1), Some(0)])
}

/// Variable names of the multivariate sum: `x_u_v` per edge, `y_u` per
/// vertex, `z_u_v` per edge, in that order.
pub fn multivariate_vars(g: &Graph) -> Vec<String> {
    let es = g.edges();
    es.iter()
        .map(|(u, v)| format!("x_{u}_{v}"))
        .chain((0..g.n()).map(|u| format!("y_{u}")))
        .chain(es.iter().map(|(u, v)| format!("z_{u}_{v}")))
        .collect()
}

/// The multivariate constrained sum with edge-indexed `x`, `z` and
/// vertex-indexed `y`; forced vertices carry no `y`.
pub fn z_multivariate(g: &Graph, b: &VertexSet, c: &VertexSet) -> Result<Poly> {
    let (forced, free) = constrained_masks(g, b, c)?;
    if free.count_ones() > 16 {
        return Err(Error::Capacity {
            what: "free vertices for multivariate enumeration",
            got: free.count_ones() as usize,
            limit: 16,
        });
    }
    let vars = multivariate_vars(g);
    let (m, n) = (g.m(), g.n());
    let mut p = Poly::zero(&vars);
    let mut sub: u128 = 0;
    loop {
        let s = forced | sub;
        let mut e = vec![0u32; 2 * m + n];
        for (k, &(u, v)) in g.edges().iter().enumerate() {
            match (s >> u & 1, s >> v & 1) {
                (1, 1) => e[k] = 1,
                (0, 0) => e[m + n + k] = 1,
                _ => {}
            }
        }
        for u in 0..n {
            if (s & !forced) >> u & 1 == 1 {
                e[m + u] = 1;
            }
        }
        p.add_term(e, Rat::one());
        sub = sub.wrapping_sub(free) & free;
        if sub == 0 {
            break;
        }
    }
    Ok(p)
}

/// Variables of the color-refined polynomial for `k` colors: `y_i`, then
/// `x_i_j` and `z_i_j` for `1 ≤ i ≤ j ≤ k`.
pub fn labeled_vars(k: usize) -> Vec<String> {
    let pairs: Vec<(usize, usize)> = (1..=k).flat_map(|i| (i..=k).map(move |j| (i, j))).collect();
    (1..=k)
        .map(|i| format!("y_{i}"))
        .chain(pairs.iter().map(|(i, j)| format!("x_{i}_{j}")))
        .chain(pairs.iter().map(|(i, j)| format!("z_{i}_{j}")))
        .collect()
}

/// Position of the unordered color pair `{i, j}` (1-based) among the pairs
/// `i ≤ j` listed lexicographically.
pub fn pair_index(k: usize, i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j) - 1, i.max(j) - 1);
    i * k - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Brute-force color-refined polynomial of a labeled graph, with `k` the
/// largest label.
pub fn z_labeled(g: &Graph) -> Result<Poly> {
    z_labeled_k(g, g.labels().and_then(|l| l.iter().copied().max()).unwrap_or(1))
}

/// As [`z_labeled`], over the variables for exactly `k` colors.
pub fn z_labeled_k(g: &Graph, k: usize) -> Result<Poly> {
    let labels = g.labels().ok_or_else(|| Error::Usage("graph has no color labels".into()))?;
    if labels.iter().any(|&c| c > k) {
        return usage(format!("label above k = {k}"));
    }
    check_cap(g, 16)?;
    let vars = labeled_vars(k);
    let np = k * (k + 1) / 2;
    let full = full_mask(g.n());
    let mut p = Poly::zero(&vars);
    for s in 0..=full {
        let mut e = vec![0u32; k + 2 * np];
        for v in 0..g.n() {
            if s >> v & 1 == 1 {
                e[labels[v] - 1] += 1;
            }
        }
        for &(u, v) in g.edges() {
            let pi = pair_index(k, labels[u], labels[v]);
            match (s >> u & 1, s >> v & 1) {
                (1, 1) => e[k + pi] += 1,
                (0, 0) => e[k + np + pi] += 1,
                _ => {}
            }
        }
        p.add_term(e, Rat::one());
    }
    Ok(p)
}

/// `Z(G; γ, δ, ε)` without building the polynomial.
pub fn z_eval_point(g: &Graph, gamma: &Rat, delta: &Rat, epsilon: &Rat) -> Result<Rat> {
    z_eval_point_with(g, gamma, delta, epsilon, NUMERIC_CAP, 8)
}

pub fn z_eval_point_with(
    g: &Graph,
    gamma: &Rat,
    delta: &Rat,
    epsilon: &Rat,
    cap: usize,
    chunk_bits: usize,
) -> Result<Rat> {
    let h = subset_histogram(g, cap, chunk_bits)?;
    Ok(eval_histogram(&h, gamma, delta, epsilon))
}

fn powers(x: &Rat, up_to: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(up_to + 1);
    out.push(Rat::one());
    for k in 1..=up_to {
        let next = &out[k - 1] * x;
        out.push(next);
    }
    out
}

pub fn eval_histogram(h: &Histogram, gamma: &Rat, delta: &Rat, epsilon: &Rat) -> Rat {
    let (pg, pd, pe) = (powers(gamma, h.m), powers(delta, h.n), powers(epsilon, h.m));
    let mut acc = Rat::zero();
    for ((a, s, c), k) in h.entries() {
        acc += &pg[a as usize] * &pd[s as usize] * &pe[c as usize] * Rat::from_integer(k.into());
    }
    acc
}

/// `Z(G; γ, δ)` of the bivariate polynomial at a rational point.
pub fn z_eval_bivariate(g: &Graph, gamma: &Rat, delta: &Rat) -> Result<Rat> {
    z_eval_point(g, gamma, delta, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, rat};
    use crate::graph::{complete, cycle, path, Graph};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn p3(vars: &[&str], terms: &[(&[u32], i64)]) -> Poly {
        Poly::from_terms(vars, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c)))).unwrap()
    }

    #[test]
    fn trivariate_examples() {
        assert_eq!(z_trivariate(&Graph::empty(1)).unwrap(), p3(&XYZ, &[(&[0, 0, 0], 1), (&[0, 1, 0], 1)]));
        assert_eq!(z_trivariate(&complete(2)).unwrap(), p3(&XYZ, &[(&[0, 0, 1], 1), (&[0, 1, 0], 2), (&[1, 2, 0], 1)]));
        assert_eq!(
            z_trivariate(&path(3)).unwrap(),
            p3(
                &XYZ,
                &[(&[0, 0, 2], 1), (&[0, 1, 0], 1), (&[0, 1, 1], 2), (&[0, 2, 0], 1), (&[1, 2, 0], 2), (&[2, 3, 0], 1)]
            )
        );
    }

    #[test]
    fn bivariate_examples() {
        assert_eq!(z_bivariate(&complete(2)).unwrap(), p3(&TY, &[(&[1, 0], 1), (&[0, 1], 2), (&[1, 2], 1)]));
        assert_eq!(
            z_bivariate(&path(3)).unwrap(),
            p3(&TY, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 1], 1), (&[1, 2], 2), (&[0, 2], 1), (&[2, 3], 1)])
        );
        let k4 = complete(4);
        let z = z_bivariate(&k4).unwrap();
        assert_eq!(z.coefficients_in(1)[0], Poly::monomial(&TY, vec![6, 0], rat(1)));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(z_trivariate(&Graph::empty(23)), Err(Error::Capacity { .. })));
        assert!(z_eval_point(&Graph::empty(31), &rat(1), &rat(1), &rat(1)).is_err());
    }

    #[test]
    fn constrained_examples() {
        let k3 = complete(3);
        let none = VertexSet::empty(3).unwrap();
        assert_eq!(z_constrained(&k3, &none, &none, YConvention::FullSet).unwrap(), z_bivariate(&k3).unwrap());
        // the 3-path tr1 - hd - tr2 with hd in the middle
        let l0 = path(3);
        let b = VertexSet::from_indices(3, [0, 1]).unwrap();
        let c = VertexSet::from_indices(3, [2]).unwrap();
        assert_eq!(z_constrained(&l0, &b, &c, YConvention::FullSet).unwrap(), Poly::monomial(&TY, vec![1, 2], rat(1)));
        let all = VertexSet::full(3).unwrap();
        assert_eq!(
            z_constrained(&l0, &all, &none, YConvention::FullSet).unwrap(),
            Poly::monomial(&TY, vec![2, 3], rat(1))
        );
        assert_eq!(
            z_constrained(&l0, &all, &none, YConvention::ExcludeForced).unwrap(),
            Poly::monomial(&TY, vec![2, 0], rat(1))
        );
        let overlap = VertexSet::from_indices(3, [0]).unwrap();
        assert!(matches!(z_constrained(&l0, &overlap, &overlap, YConvention::FullSet), Err(Error::Usage(_))));
    }

    #[test]
    fn multivariate_examples() {
        let k2 = complete(2);
        let none = VertexSet::empty(2).unwrap();
        let vars = multivariate_vars(&k2);
        assert_eq!(vars, ["x_0_1", "y_0", "y_1", "z_0_1"]);
        let p = z_multivariate(&k2, &none, &none).unwrap();
        let expect = p3(
            &["x_0_1", "y_0", "y_1", "z_0_1"],
            &[(&[0, 0, 0, 1], 1), (&[0, 1, 0, 0], 1), (&[0, 0, 1, 0], 1), (&[1, 1, 1, 0], 1)],
        );
        assert_eq!(p, expect);
        let b = VertexSet::from_indices(2, [0]).unwrap();
        let p = z_multivariate(&k2, &b, &none).unwrap();
        assert_eq!(p, p3(&["x_0_1", "y_0", "y_1", "z_0_1"], &[(&[0, 0, 0, 0], 1), (&[1, 0, 1, 0], 1)]));
        let g = path(3);
        let all = VertexSet::full(3).unwrap();
        let p = z_multivariate(&g, &all, &VertexSet::empty(3).unwrap()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.terms().next().unwrap().0, &[1, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn multivariate_specializes_to_constrained() {
        let g = cycle(4).unwrap();
        let b = VertexSet::from_indices(4, [1]).unwrap();
        let c = VertexSet::from_indices(4, [3]).unwrap();
        let mv = z_multivariate(&g, &b, &c).unwrap();
        let (m, n) = (g.m(), g.n());
        let map: Vec<_> = (0..2 * m + n)
            .map(|i| {
                Some(if i < m {
                    0
                } else if i < m + n {
                    1
                } else {
                    2
                })
            })
            .collect();
        let specialized = mv.map_vars(&XYZ, &map).unwrap();
        assert_eq!(specialized, z_constrained_trivariate(&g, &b, &c, YConvention::ExcludeForced).unwrap());
    }

    #[test]
    fn labeled_examples() {
        let k2 = complete(2).with_labels(vec![1, 2]).unwrap();
        let p = z_labeled(&k2).unwrap();
        let vars = labeled_vars(2);
        assert_eq!(vars, ["y_1", "y_2", "x_1_1", "x_1_2", "x_2_2", "z_1_1", "z_1_2", "z_2_2"]);
        let expect = p3(
            &["y_1", "y_2", "x_1_1", "x_1_2", "x_2_2", "z_1_1", "z_1_2", "z_2_2"],
            &[
                (&[0, 0, 0, 0, 0, 0, 1, 0], 1),
                (&[1, 0, 0, 0, 0, 0, 0, 0], 1),
                (&[0, 1, 0, 0, 0, 0, 0, 0], 1),
                (&[1, 1, 0, 1, 0, 0, 0, 0], 1),
            ],
        );
        assert_eq!(p, expect);
        let k1 = Graph::empty(1).with_labels(vec![3]).unwrap();
        let p = z_labeled(&k1).unwrap();
        assert_eq!(p.len(), 2);
        let two = Graph::empty(2).with_labels(vec![1, 1]).unwrap();
        let p = z_labeled(&two).unwrap();
        let y = Poly::var(&labeled_vars(1), 0);
        let one = Poly::one(&labeled_vars(1));
        assert_eq!(p, (&one + &y).pow(2));
    }

    #[test]
    fn pair_indices_are_dense() {
        for k in 1..6 {
            let mut seen = Vec::new();
            for i in 1..=k {
                for j in i..=k {
                    seen.push(pair_index(k, i, j));
                    assert_eq!(pair_index(k, i, j), pair_index(k, j, i));
                }
            }
            assert_eq!(seen, (0..k * (k + 1) / 2).collect::<Vec<_>>());
        }
    }

    #[test]
    fn labeled_projects_to_trivariate() {
        let g = cycle(5).unwrap().with_labels(vec![1, 2, 1, 3, 2]).unwrap();
        let p = z_labeled(&g).unwrap();
        let k = 3;
        let np = k * (k + 1) / 2;
        let map: Vec<_> = (0..k + 2 * np)
            .map(|i| {
                Some(if i < k {
                    1
                } else if i < k + np {
                    0
                } else {
                    2
                })
            })
            .collect();
        assert_eq!(p.map_vars(&XYZ, &map).unwrap(), z_trivariate(&g).unwrap());
    }

    #[test]
    fn point_examples() {
        assert_eq!(z_eval_point(&complete(2), &rat(2), &rat(3), &rat(5)).unwrap(), rat(29));
        let g = cycle(7).unwrap();
        assert_eq!(z_eval_point(&g, &rat(1), &rat(1), &rat(1)).unwrap(), rat(128));
        assert_eq!(z_eval_point(&g, &rat(4), &rat(0), &frac(1, 2)).unwrap(), frac(1, 128));
    }

    #[test]
    fn chunking_does_not_change_the_result() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = 11;
        let edges: Vec<_> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.4)).collect();
        let g = Graph::new(n, edges).unwrap();
        let base = subset_histogram(&g, NUMERIC_CAP, 0).unwrap();
        assert_eq!(base.total(), 1 << n);
        for bits in [1, 3, 5, 11, 20] {
            assert_eq!(subset_histogram(&g, NUMERIC_CAP, bits).unwrap(), base);
        }
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn bivariate_is_specialized_trivariate(g in arb_graph(10)) {
            let tri = z_trivariate(&g).unwrap();
            let x = Poly::var(&XYZ, 0);
            let specialized = tri.substitute(2, &x).unwrap().map_vars(&TY, &[Some(0), Some(1), None]).unwrap();
            prop_assert_eq!(specialized, z_bivariate(&g).unwrap());
        }

        #[test]
        fn cut_form(g in arb_graph(9)) {
            // t^m Σ_S t^{-cut} y^{|S|}, with both sides multiplied out
            let adj = g.adjacency_masks().unwrap();
            let mut rhs = Poly::zero(&TY);
            for s in 0..(1u128 << g.n()) {
                let cut: u32 = (0..g.n()).filter(|&v| s >> v & 1 == 1).map(|v| (adj[v] & !s).count_ones()).sum();
                rhs.add_term(vec![g.m() as u32 - cut, s.count_ones()], rat(1));
            }
            prop_assert_eq!(z_bivariate(&g).unwrap(), rhs);
        }

        #[test]
        fn coefficients_nonnegative(g in arb_graph(9)) {
            let z = z_trivariate(&g).unwrap();
            prop_assert!(z.has_nonnegative_integer_coeffs());
            prop_assert_eq!(z.coeff_sum(), rat(1 << g.n()));
        }

        #[test]
        fn point_matches_polynomial(g in arb_graph(9), a in -4i64..4, b in -4i64..4, c in 1i64..4) {
            let pt = [rat(a), frac(b, c), rat(c)];
            let z = z_trivariate(&g).unwrap().eval(&pt).unwrap();
            prop_assert_eq!(z_eval_point(&g, &pt[0], &pt[1], &pt[2]).unwrap(), z);
        }
    }
}
