//! Interpolation pipelines that recover polynomials from point evaluations,
//! and the point evaluations that need no interpolation at all.
//!
//! Every division by a prefactor is preceded by a nonzero check, and every
//! interpolation checks that its nodes are distinct, so a successful run is
//! its own certificate.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{lagrange_interpolate, rat, rat_div, rat_to_string, GaussRat, Poly, Rat, Ring};
use crate::closed_forms::{e_constants, f_p_h, f_r_constants, f_t_h, g_p_h, g_y_h, ReductionConstants};
use crate::error::{Error, Result};
use crate::gadgets::{build_otimes, build_pendant, build_r, build_s_h_of};
use crate::graph::Graph;
use crate::ising::{z_eval_point_with, z_t_only, TY};

fn is_trivial(v: &Rat) -> bool {
    v.is_zero() || v.abs().is_one()
}

// ---------------------------------------------------------------------------
// Equal-sum families of even integers

/// Sets `H_0..H_q̂` of positive even integers sharing one element sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HFamily {
    pub sets: Vec<Vec<u32>>,
    pub sigma: u64,
    pub m0: u32,
    pub spacing: u32,
    pub qprime: u32,
    /// Number of candidate sets minus one, `q' · ⌈log q'⌉³`.
    pub q: u64,
    /// Largest binary digit index, `⌊log q⌋`.
    pub ell: u32,
    /// `⌈log q⌉`, the spacing multiplier.
    pub log_q: u32,
}

/// Structural checks on an [`HFamily`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HFamilyCertificate {
    pub distinct: bool,
    pub equal_cardinality: bool,
    pub even_and_bounded: bool,
    pub gap: bool,
    pub equal_sigma: bool,
    /// `σ / ⌈log q'⌉³`, the constant in the sum bound.
    pub sigma_ratio: f64,
}

impl HFamilyCertificate {
    pub fn all(&self) -> bool {
        self.distinct && self.equal_cardinality && self.even_and_bounded && self.gap && self.equal_sigma
    }
}

fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Build the binary-digit sets `{m0 + Δ⌈log q⌉(2j + i[j]) : 0 ≤ j ≤ ℓ}` for
/// `0 ≤ i ≤ q` and keep the largest class sharing one sum (the smallest sum
/// on ties).
pub fn build_h_family(qprime: u32, m0: u32, spacing: u32) -> Result<HFamily> {
    if qprime < 2 {
        return Err(Error::Usage("q' must be at least 2".into()));
    }
    if m0 == 0 || m0 % 2 == 1 || spacing == 0 || spacing % 2 == 1 {
        return Err(Error::Usage("m0 and the spacing must be positive and even".into()));
    }
    let lq = ceil_log2(qprime as u64) as u64;
    let q = qprime as u64 * lq.pow(3);
    let ell = 63 - q.leading_zeros();
    let log_q = ceil_log2(q);
    let step = spacing as u64 * log_q as u64;
    let mut by_sum: BTreeMap<u64, Vec<Vec<u32>>> = BTreeMap::new();
    for i in 0..=q {
        let set: Vec<u32> = (0..=ell)
            .map(|j| {
                let v = m0 as u64 + step * (2 * j as u64 + (i >> j & 1));
                u32::try_from(v).expect("family element fits in u32")
            })
            .collect();
        by_sum.entry(set.iter().map(|&h| h as u64).sum()).or_default().push(set);
    }
    let (sigma, sets) = by_sum
        .into_iter()
        .fold(None::<(u64, Vec<Vec<u32>>)>, |best, (s, v)| match best {
            Some((bs, bv)) if bv.len() >= v.len() => Some((bs, bv)),
            _ => Some((s, v)),
        })
        .expect("at least one candidate set");
    Ok(HFamily { sets, sigma, m0, spacing, qprime, q, ell, log_q })
}

impl HFamily {
    pub fn certify(&self) -> HFamilyCertificate {
        let mut sorted = self.sets.clone();
        sorted.sort();
        let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
        let card = self.ell as usize + 1;
        let equal_cardinality = self.sets.iter().all(|s| s.len() == card);
        let upper = self.m0 as u64 + self.spacing as u64 * (self.log_q as u64 + 1) * (2 * self.log_q as u64 + 1);
        let even_and_bounded = self.sets.iter().flatten().all(|&h| h % 2 == 0 && h >= self.m0 && (h as u64) <= upper);
        let mut values: Vec<u32> = self.sets.iter().flatten().copied().collect();
        values.sort_unstable();
        values.dedup();
        let min_gap = self.spacing as u64 * self.log_q as u64;
        let gap = values.windows(2).all(|w| (w[1] - w[0]) as u64 >= min_gap);
        let equal_sigma = self.sets.iter().all(|s| s.iter().map(|&h| h as u64).sum::<u64>() == self.sigma);
        let lq = ceil_log2(self.qprime as u64).max(1) as f64;
        HFamilyCertificate {
            distinct,
            equal_cardinality,
            even_and_bounded,
            gap,
            equal_sigma,
            sigma_ratio: self.sigma as f64 / lq.powi(3),
        }
    }

    /// The edge-substitution values `f_t_H` are pairwise distinct at `rc`.
    pub fn f_t_distinct(&self, rc: &ReductionConstants) -> Result<bool> {
        let mut nodes = self.sets.iter().map(|s| f_t_h(rc, s)).collect::<Result<Vec<_>>>()?;
        nodes.sort();
        Ok(nodes.windows(2).all(|w| w[0] != w[1]))
    }

    /// The vertex-substitution values `g_y_H` are pairwise distinct and every
    /// `g_p_H` is nonzero.
    pub fn g_y_certified(&self, gamma: &Rat, delta: &Rat) -> Result<bool> {
        let mut nodes = Vec::with_capacity(self.sets.len());
        for s in &self.sets {
            if g_p_h(gamma, delta, s, 1).is_zero() {
                return Ok(false);
            }
            nodes.push(g_y_h(gamma, delta, s)?);
        }
        nodes.sort();
        Ok(nodes.windows(2).all(|w| w[0] != w[1]))
    }
}

/// Smallest even `(m0, Δ)`, each at most `limit`, whose family passes the
/// structural certificate and the distinctness checks at `(γ, δ)`. The
/// `g_y` checks apply only when `δ ∉ {−1, 1}` and `γ ≠ −δ`.
pub fn search_h_family(qprime: u32, gamma: &Rat, delta: &Rat, limit: u32) -> Result<HFamily> {
    let rc = ReductionConstants::new(gamma, delta)?;
    let need_y = !delta.abs().is_one() && *gamma != -delta;
    for total in (4..=2 * limit).step_by(2) {
        for m0 in (2..total).step_by(2) {
            let spacing = total - m0;
            if m0 > limit || spacing > limit {
                continue;
            }
            let fam = build_h_family(qprime, m0, spacing)?;
            if fam.certify().all() && fam.f_t_distinct(&rc)? && (!need_y || fam.g_y_certified(gamma, delta)?) {
                return Ok(fam);
            }
        }
    }
    Err(Error::Interpolation(format!("no certified family with m0, Δ ≤ {limit}")))
}

// ---------------------------------------------------------------------------
// Oracle access

type OracleFn = dyn Fn(&Graph) -> Result<Rat> + Send + Sync;

/// Access to `Z(−; γ, δ)` or `Z(−; γ, δ, ε)` with query accounting.
pub struct EvalOracle {
    gamma: Rat,
    delta: Rat,
    epsilon: Option<Rat>,
    cap: Option<usize>,
    f: Box<OracleFn>,
    calls: AtomicUsize,
    max_size: AtomicUsize,
}

impl std::fmt::Debug for EvalOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EvalOracle")
            .field("gamma", &self.gamma)
            .field("delta", &self.delta)
            .field("epsilon", &self.epsilon)
            .field("cap", &self.cap)
            .field("calls", &self.calls())
            .finish()
    }
}

impl EvalOracle {
    /// Wrap an arbitrary evaluator. It must be deterministic.
    pub fn from_fn(
        gamma: Rat,
        delta: Rat,
        epsilon: Option<Rat>,
        f: impl Fn(&Graph) -> Result<Rat> + Send + Sync + 'static,
    ) -> Self {
        Self {
            gamma,
            delta,
            epsilon,
            cap: None,
            f: Box::new(f),
            calls: AtomicUsize::new(0),
            max_size: AtomicUsize::new(0),
        }
    }

    /// Exhaustive evaluation of the bivariate polynomial at `(γ, δ)`,
    /// refusing graphs with more than `cap` vertices.
    pub fn brute_force(gamma: Rat, delta: Rat, cap: usize) -> Self {
        let (g2, d2) = (gamma.clone(), delta.clone());
        Self::from_fn(gamma, delta, None, move |g| z_eval_point_with(g, &g2, &d2, &g2, usize::MAX, 8)).with_cap(cap)
    }

    /// Exhaustive evaluation of the trivariate polynomial at `(γ, δ, ε)`.
    pub fn brute_force_trivariate(gamma: Rat, delta: Rat, epsilon: Rat, cap: usize) -> Self {
        let (g2, d2, e2) = (gamma.clone(), delta.clone(), epsilon.clone());
        Self::from_fn(gamma, delta, Some(epsilon), move |g| z_eval_point_with(g, &g2, &d2, &e2, usize::MAX, 8))
            .with_cap(cap)
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = Some(cap);
        self
    }

    pub fn gamma(&self) -> &Rat {
        &self.gamma
    }

    pub fn delta(&self) -> &Rat {
        &self.delta
    }

    pub fn epsilon(&self) -> Option<&Rat> {
        self.epsilon.as_ref()
    }

    pub fn query(&self, g: &Graph) -> Result<Rat> {
        if let Some(cap) = self.cap {
            if g.n() > cap {
                return Err(Error::OracleRefused { n: g.n(), cap });
            }
        }
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.max_size.fetch_max(g.n(), Ordering::Relaxed);
        (self.f)(g)
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::Relaxed)
    }

    /// Vertex count of the largest graph queried so far.
    pub fn max_queried(&self) -> usize {
        self.max_size.load(Ordering::Relaxed)
    }

    fn bivariate_only(&self) -> Result<()> {
        match &self.epsilon {
            Some(e) if *e != self.gamma => Err(Error::Usage("this step needs a bivariate oracle (ε = γ)".into())),
            _ => Ok(()),
        }
    }
}

// ---------------------------------------------------------------------------
// Gadget choice

/// Sets of distinct positive integers in order of `Σ_{h∈H} (h + 1)`, the
/// number of vertices a gadget built from `H` adds, then lexicographically.
/// The empty set comes first.
pub fn sets_by_weight() -> impl Iterator<Item = Vec<u32>> {
    fn parts(w: u32, min: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if w == 0 {
            out.push(acc.clone());
            return;
        }
        for p in min..=w {
            acc.push(p - 1);
            parts(w - p, p + 1, acc, out);
            acc.pop();
        }
    }
    (0u32..).flat_map(|w| {
        let mut out = Vec::new();
        parts(w, 2, &mut Vec::new(), &mut out);
        out.sort();
        out
    })
}

const MAX_GADGET_WEIGHT: u32 = 60;

/// The first `count` sets in [`sets_by_weight`] order whose node values
/// (from `node`, `None` meaning unusable) are pairwise distinct.
pub fn pick_sets(count: usize, mut node: impl FnMut(&[u32]) -> Result<Option<Rat>>) -> Result<Vec<(Vec<u32>, Rat)>> {
    let mut picked: Vec<(Vec<u32>, Rat)> = Vec::with_capacity(count);
    for set in sets_by_weight() {
        if picked.len() == count {
            break;
        }
        if set.iter().map(|h| h + 1).sum::<u32>() > MAX_GADGET_WEIGHT {
            return Err(Error::Interpolation(format!("found only {} of {count} distinct nodes", picked.len())));
        }
        if let Some(v) = node(&set)? {
            if picked.iter().all(|(_, w)| *w != v) {
                picked.push((set, v));
            }
        }
    }
    Ok(picked)
}

/// Families for the vertex stage at `(γ, δ)`: distinct `g_y`, nonzero `g_p`.
pub fn y_families(gamma: &Rat, delta: &Rat, count: usize) -> Result<Vec<Vec<u32>>> {
    let picked = pick_sets(count, |s| {
        if g_p_h(gamma, delta, s, 1).is_zero() {
            return Ok(None);
        }
        g_y_h(gamma, delta, s).map(Some)
    })?;
    Ok(picked.into_iter().map(|(s, _)| s).collect())
}

/// Families for the edge stage at `γ`: distinct `f_t`.
pub fn t_families(gamma: &Rat, count: usize) -> Result<Vec<Vec<u32>>> {
    let rc = ReductionConstants::new(gamma, &rat(1))?;
    let picked = pick_sets(count, |s| f_t_h(&rc, s).map(Some))?;
    Ok(picked.into_iter().map(|(s, _)| s).collect())
}

// ---------------------------------------------------------------------------
// Stages

/// One interpolation node with the prefactor that was divided out.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeRecord {
    pub family: Vec<u32>,
    pub node: String,
    pub prefactor: String,
    pub query_size: usize,
}

fn record(family: &[u32], node: &Rat, prefactor: &Rat, query_size: usize) -> NodeRecord {
    NodeRecord { family: family.to_vec(), node: rat_to_string(node), prefactor: rat_to_string(prefactor), query_size }
}

fn check_vertex_stage_point(gamma: &Rat, delta: &Rat) -> Result<()> {
    if is_trivial(gamma) || is_trivial(delta) {
        return Err(Error::Inadmissible("vertex stage needs γ, δ ∉ {−1, 0, 1}".into()));
    }
    if *gamma == -delta {
        return Err(Error::Inadmissible("vertex stage needs γ ≠ −δ".into()));
    }
    Ok(())
}

fn vertex_stage(
    query: &dyn Fn(&Graph) -> Result<Rat>,
    gamma: &Rat,
    delta: &Rat,
    g: &Graph,
    families: &[Vec<u32>],
) -> Result<(Poly, Vec<NodeRecord>)> {
    check_vertex_stage_point(gamma, delta)?;
    let mut points = Vec::with_capacity(families.len());
    let mut records = Vec::with_capacity(families.len());
    for h in families {
        let gp = g_p_h(gamma, delta, h, g.n());
        if gp.is_zero() {
            return Err(Error::Degenerate(format!("vertex prefactor vanishes for {h:?}")));
        }
        let node = g_y_h(gamma, delta, h)?;
        let big = build_s_h_of(g, h)?;
        let value = query(&big)? / &gp;
        records.push(record(h, &node, &gp, big.n()));
        points.push((node, value));
    }
    let poly = lagrange_interpolate(&points, g.n(), "y")?;
    Ok((poly, records))
}

/// Recover `Z(g; γ, y)` from oracle values on the rooted products
/// `S_{H_i}(g)`, dividing out `g_p` and interpolating at the nodes `g_y`.
pub fn interpolate_y(oracle: &EvalOracle, g: &Graph, families: &[Vec<u32>]) -> Result<Poly> {
    oracle.bivariate_only()?;
    Ok(interpolate_y_with_nodes(oracle, g, families)?.0)
}

/// [`interpolate_y`] together with the node and prefactor of each family.
pub fn interpolate_y_with_nodes(
    oracle: &EvalOracle,
    g: &Graph,
    families: &[Vec<u32>],
) -> Result<(Poly, Vec<NodeRecord>)> {
    oracle.bivariate_only()?;
    vertex_stage(&|h| oracle.query(h), oracle.gamma(), oracle.delta(), g, families)
}

/// Recover `Z(g; t, 1)` from values `Z(g ⊗ H_k; γ, 1)`, given as
/// `(H_k, value)` pairs, by dividing out `f_p` and interpolating at the
/// nodes `f_t`.
pub fn interpolate_t(values: &[(Vec<u32>, Rat)], gamma: &Rat, g: &Graph) -> Result<Poly> {
    Ok(edge_stage_points(values, gamma, g)?.0)
}

fn edge_stage_points(values: &[(Vec<u32>, Rat)], gamma: &Rat, g: &Graph) -> Result<(Poly, Vec<(Rat, Rat)>)> {
    let rc = ReductionConstants::new(gamma, &rat(1))?;
    let mut points = Vec::with_capacity(values.len());
    for (h, v) in values {
        let fp = f_p_h(gamma, h, g.m());
        if fp.is_zero() {
            return Err(Error::Degenerate(format!("edge prefactor vanishes for {h:?}")));
        }
        points.push((f_t_h(&rc, h)?, v / &fp));
    }
    Ok((lagrange_interpolate(&points, g.m(), "t")?, points))
}

/// `Z(g; γ, 1)` from an oracle at `(γ, −1)` through the pendant graph.
pub fn minus_one_transform(oracle: &EvalOracle, g: &Graph) -> Result<Rat> {
    oracle.bivariate_only()?;
    if *oracle.delta() != rat(-1) {
        return Err(Error::Usage("pendant transform needs an oracle at δ = −1".into()));
    }
    minus_one_with(&|h| oracle.query(h), oracle.gamma(), g)
}

fn minus_one_with(query: &dyn Fn(&Graph) -> Result<Rat>, gamma: &Rat, g: &Graph) -> Result<Rat> {
    let scale = gamma - rat(1);
    if scale.is_zero() {
        return Err(Error::Degenerate("γ = 1".into()));
    }
    let v = query(&build_pendant(g))?;
    Ok(v / scale.pow_u(g.n() as u64))
}

/// `Z(g; γ, −δ²)` from an oracle at `(γ, δ)` with `γ = −δ`, through
/// `S_{{1}}(g)`.
pub fn shift_gamma_eq_minus_delta(oracle: &EvalOracle, g: &Graph) -> Result<Rat> {
    oracle.bivariate_only()?;
    shift_with(&|h| oracle.query(h), oracle.gamma(), oracle.delta(), g)
}

fn shift_with(query: &dyn Fn(&Graph) -> Result<Rat>, gamma: &Rat, delta: &Rat, g: &Graph) -> Result<Rat> {
    if is_trivial(delta) {
        return Err(Error::Inadmissible("shift needs δ ∉ {−1, 0, 1}".into()));
    }
    if *gamma != -delta {
        return Err(Error::Usage("shift applies only at γ = −δ".into()));
    }
    let gp = g_p_h(gamma, delta, &[1], g.n());
    let expect = (delta * (rat(1) - delta * delta)).pow_u(g.n() as u64);
    let gy = g_y_h(gamma, delta, &[1])?;
    if gp != expect || gy != -(delta * delta) {
        return Err(Error::Internal("S_{1} constants disagree with the shift formula".into()));
    }
    Ok(query(&build_s_h_of(g, &[1])?)? / gp)
}

type Query<'a> = &'a dyn Fn(&Graph) -> Result<Rat>;

/// How the values at `δ = 1` were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Direct,
    Pendant,
    VertexInterpolation,
    ShiftedVertexInterpolation,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexStageReport {
    pub graph_size: usize,
    pub nodes: Vec<NodeRecord>,
}

/// Everything the composed pipeline did, for inspection.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    #[serde(skip)]
    pub poly: Poly,
    pub route: Route,
    pub edge_nodes: Vec<NodeRecord>,
    pub vertex_stages: Vec<VertexStageReport>,
    pub queries: usize,
    pub max_query_size: usize,
}

/// Recover `Z(g; t, 1)` from an oracle at `(γ, δ)` with `γ ∉ {−1, 0, 1}` and
/// `δ ≠ 0`.
///
/// The edge stage queries `g ⊗ H_k` at `δ = 1`. Those values come directly
/// when `δ = 1`, from pendant graphs when `δ = −1`, and otherwise from a vertex
/// stage on each `g ⊗ H_k` evaluated at `y = 1`. When `γ = −δ` the vertex
/// stage runs at the shifted point `(γ, −δ²)`.
///
/// Families are the smallest sets (by added vertices) with distinct nodes,
/// unless given.
pub fn recover_t_polynomial(oracle: &EvalOracle, g: &Graph, t_fams: Option<Vec<Vec<u32>>>) -> Result<PipelineReport> {
    oracle.bivariate_only()?;
    let (gamma, delta) = (oracle.gamma().clone(), oracle.delta().clone());
    if is_trivial(&gamma) || delta.is_zero() {
        return Err(Error::Inadmissible("needs γ ∉ {−1, 0, 1} and δ ≠ 0; see special_case_eval".into()));
    }
    let t_fams = match t_fams {
        Some(f) => f,
        None => t_families(&gamma, g.m() + 1)?,
    };
    let route = if delta.is_one() {
        Route::Direct
    } else if delta == rat(-1) {
        Route::Pendant
    } else if gamma == -&delta {
        Route::ShiftedVertexInterpolation
    } else {
        Route::VertexInterpolation
    };
    let base: Query = &|h| oracle.query(h);
    let shifted = |h: &Graph| shift_with(base, &gamma, &delta, h);
    let (query, y_delta): (Query, Rat) = match route {
        Route::ShiftedVertexInterpolation => (&shifted, -(&delta * &delta)),
        _ => (base, delta.clone()),
    };
    let y_fams = match route {
        Route::VertexInterpolation | Route::ShiftedVertexInterpolation => {
            let most = t_fams.iter().map(|h| build_otimes(g, h).map(|x| x.n())).collect::<Result<Vec<_>>>()?;
            y_families(&gamma, &y_delta, most.into_iter().max().unwrap_or(0) + 1)?
        }
        _ => Vec::new(),
    };

    let mut values = Vec::with_capacity(t_fams.len());
    let mut vertex_stages = Vec::new();
    let mut sizes = Vec::with_capacity(t_fams.len());
    for h in &t_fams {
        let big = build_otimes(g, h)?;
        let v = match route {
            Route::Direct => query(&big)?,
            Route::Pendant => minus_one_with(query, &gamma, &big)?,
            _ => {
                let (p, nodes) = vertex_stage(query, &gamma, &y_delta, &big, &y_fams[..big.n() + 1])?;
                vertex_stages.push(VertexStageReport { graph_size: big.n(), nodes });
                p.eval(&[rat(1)])?
            }
        };
        sizes.push(match route {
            Route::Pendant => 2 * big.n(),
            _ => big.n(),
        });
        values.push((h.clone(), v));
    }
    let (poly, points) = edge_stage_points(&values, &gamma, g)?;
    let edge_nodes = t_fams
        .iter()
        .zip(&points)
        .zip(&sizes)
        .map(|((h, (node, _)), &size)| record(h, node, &f_p_h(&gamma, h, g.m()), size))
        .collect();
    Ok(PipelineReport {
        poly,
        route,
        edge_nodes,
        vertex_stages,
        queries: oracle.calls(),
        max_query_size: oracle.max_queried(),
    })
}

// ---------------------------------------------------------------------------
// Points needing no interpolation

/// Whether `(γ, δ)` is a point handled by [`special_case_eval`].
pub fn is_special_point(gamma: &Rat, delta: &Rat) -> bool {
    is_trivial(gamma) || delta.is_zero()
}

fn bipartition(g: &Graph, comp: &[usize]) -> Option<(usize, usize)> {
    let mut side = vec![None; g.n()];
    let mut stack = vec![comp[0]];
    side[comp[0]] = Some(false);
    while let Some(v) = stack.pop() {
        let s = side[v].expect("visited");
        for &w in g.neighbors(v) {
            match side[w] {
                None => {
                    side[w] = Some(!s);
                    stack.push(w);
                }
                Some(sw) if sw == s => return None,
                _ => {}
            }
        }
    }
    let a = comp.iter().filter(|&&v| side[v] == Some(false)).count();
    Some((a, comp.len() - a))
}

/// `Z(g; γ, δ)` in polynomial time at `γ ∈ {−1, 0, 1}` or `δ = 0`.
///
/// - `δ = 0`: only `S = ∅` contributes, giving `γ^m`.
/// - `γ = 1`: `(1 + δ)^n`.
/// - `γ = 0`: only proper 2-colorings contribute, so each component gives
///   `δ^{|A|} + δ^{|B|}` for its bipartition, or 0 if it has an odd cycle.
/// - `γ = −1`: `Π_v (δ·i^{deg v} + (−i)^{deg v})`, computed over `Q(i)`.
pub fn special_case_eval(g: &Graph, gamma: &Rat, delta: &Rat) -> Result<Rat> {
    if delta.is_zero() {
        return Ok(gamma.pow_u(g.m() as u64));
    }
    if gamma.is_one() {
        return Ok((rat(1) + delta).pow_u(g.n() as u64));
    }
    if gamma.is_zero() {
        let mut acc = Rat::one();
        for comp in g.components() {
            match bipartition(g, &comp) {
                Some((a, b)) => acc *= delta.pow_u(a as u64) + delta.pow_u(b as u64),
                None => return Ok(Rat::zero()),
            }
        }
        return Ok(acc);
    }
    if *gamma == rat(-1) {
        let i = GaussRat::i();
        let minus_i = -&i;
        let d = GaussRat::real(delta.clone());
        let mut acc = GaussRat::real(Rat::one());
        for v in 0..g.n() {
            let deg = g.degree(v) as u64;
            acc = &acc * &(&(&d * &i.pow(deg)) + &minus_i.pow(deg));
        }
        return acc.real_part_only();
    }
    Err(Error::Usage(format!("({}, {}) is not a special point", rat_to_string(gamma), rat_to_string(delta))))
}

/// `(maximum cut, number of subsets S attaining it)` read off `Z(g; t, 1)`,
/// in which `S` contributes `t^{m − cut(S)}`.
pub fn max_cut_count(g: &Graph) -> Result<(usize, Rat)> {
    let p = z_t_only(g)?;
    let (e, c) = p
        .terms()
        .min_by_key(|(e, _)| e[0])
        .map(|(e, c)| (e[0], c.clone()))
        .ok_or_else(|| Error::Internal("empty partition function".into()))?;
    Ok((g.m() - e as usize, c))
}

// ---------------------------------------------------------------------------
// Trivariate grid

/// The admissibility requirements of the grid pipeline at `(γ, δ, ε)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridCondition {
    /// `δ ∉ {−1, 0, 1}`.
    DeltaNontrivial,
    /// `δ + ε² ∉ {−1, 0, 1}`.
    LeafWeightNontrivial,
    /// `δ + ε² ≠ ±(δγ² + 1)`.
    WeightsUnbalanced,
    /// `δγ² + 1 ≠ 0`.
    InsideWeightNonzero,
    /// `γδ + ε ≠ 0`.
    MixedWeightNonzero,
    /// `(γδ + ε)⁴ ≠ (δγ² + 1)²(δ + ε²)²`.
    EdgeRatioNotOne,
}

impl GridCondition {
    pub const ALL: [GridCondition; 6] = [
        GridCondition::DeltaNontrivial,
        GridCondition::LeafWeightNontrivial,
        GridCondition::WeightsUnbalanced,
        GridCondition::InsideWeightNonzero,
        GridCondition::MixedWeightNonzero,
        GridCondition::EdgeRatioNotOne,
    ];

    pub fn holds(self, gamma: &Rat, delta: &Rat, epsilon: &Rat) -> bool {
        let a = delta * gamma * gamma + rat(1);
        let b = delta + epsilon * epsilon;
        let c = gamma * delta + epsilon;
        match self {
            GridCondition::DeltaNontrivial => !is_trivial(delta),
            GridCondition::LeafWeightNontrivial => !is_trivial(&b),
            GridCondition::WeightsUnbalanced => b != a && b != -&a,
            GridCondition::InsideWeightNonzero => !a.is_zero(),
            GridCondition::MixedWeightNonzero => !c.is_zero(),
            GridCondition::EdgeRatioNotOne => c.pow_u(4) != a.pow_u(2) * b.pow_u(2),
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            GridCondition::DeltaNontrivial => "δ ∉ {−1, 0, 1}",
            GridCondition::LeafWeightNontrivial => "δ + ε² ∉ {−1, 0, 1}",
            GridCondition::WeightsUnbalanced => "δ + ε² ≠ ±(δγ² + 1)",
            GridCondition::InsideWeightNonzero => "δγ² + 1 ≠ 0",
            GridCondition::MixedWeightNonzero => "γδ + ε ≠ 0",
            GridCondition::EdgeRatioNotOne => "(γδ + ε)⁴ ≠ (δγ² + 1)²(δ + ε²)²",
        }
    }
}

/// The first violated grid condition, if any.
pub fn violated_grid_condition(gamma: &Rat, delta: &Rat, epsilon: &Rat) -> Option<GridCondition> {
    GridCondition::ALL.into_iter().find(|c| !c.holds(gamma, delta, epsilon))
}

pub fn check_grid_conditions(gamma: &Rat, delta: &Rat, epsilon: &Rat) -> Result<()> {
    match violated_grid_condition(gamma, delta, epsilon) {
        None => Ok(()),
        Some(c) => Err(Error::Inadmissible(format!("grid pipeline needs {}", c.describe()))),
    }
}

/// The chosen grid and its certificate.
#[derive(Debug, Clone, Serialize)]
pub struct GridReport {
    #[serde(skip)]
    pub poly: Poly,
    pub l_values: Vec<u32>,
    pub q_values: Vec<u32>,
    pub t_nodes: Vec<String>,
    /// `y` nodes per `ℓ`.
    pub y_nodes: Vec<Vec<String>>,
}

/// The smallest `ℓ₀ ≥ 1` (searching up to `limit`) such that for every
/// `ℓ ∈ [ℓ₀, ℓ₀ + m]` all prefactors are nonzero and the `y` nodes over
/// `q ∈ [1, n + 1]` are distinct, and the `t` nodes over the window are
/// distinct.
pub fn certified_l_start(gamma: &Rat, delta: &Rat, epsilon: &Rat, g: &Graph, limit: u32) -> Result<u32> {
    let d = g.regular_degree().ok_or_else(|| Error::Usage("grid pipeline needs a regular graph".into()))?;
    let ok = |l: u32| -> Result<bool> {
        let mut ys = Vec::new();
        for q in 1..=g.n() as u32 + 1 {
            let rc = match f_r_constants(gamma, delta, epsilon, l, q, d, g.n()) {
                Ok(rc) => rc,
                Err(Error::Degenerate(_)) => return Ok(false),
                Err(e) => return Err(e),
            };
            if rc.f_p.is_zero() {
                return Ok(false);
            }
            ys.push(rc.f_y);
        }
        ys.sort();
        Ok(ys.windows(2).all(|w| w[0] != w[1]))
    };
    let et = e_constants(gamma, delta, epsilon, 1)?.e_t;
    if et.is_zero() || et.abs().is_one() {
        return Err(Error::Degenerate("edge ratio is 0 or ±1".into()));
    }
    let window = g.m() as u32 + 1;
    let mut run = 0;
    for l in 1..=limit {
        run = if ok(l)? { run + 1 } else { 0 };
        if run == window {
            return Ok(l + 1 - window);
        }
    }
    Err(Error::Interpolation(format!("no certified window of {window} values of ℓ below {limit}")))
}

/// A query function for the grid pipeline that builds `R^{ℓ,q}(g)` and asks
/// `oracle`.
pub fn r_graph_query<'a>(oracle: &'a EvalOracle, g: &'a Graph) -> impl Fn(u32, u32) -> Result<Rat> + 'a {
    move |l, q| oracle.query(&build_r(g, l as usize, q as usize)?)
}

/// Recover `Z(g; t, y)` of a regular graph from values of
/// `Z(R^{ℓ,q}(g); γ, δ, ε)`, supplied by `query(ℓ, q)`.
///
/// Each value divided by its prefactor is `Σ_S f_t^{cut(S)} f_y^{|S|}` with
/// `f_t = E_t^ℓ`. The pipeline interpolates this cut-weighted polynomial in
/// `y` for each `ℓ`, then in `t` coefficientwise, then reverses the `t`
/// exponents.
pub fn grid_interpolate_trivariate(
    query: impl Fn(u32, u32) -> Result<Rat>,
    gamma: &Rat,
    delta: &Rat,
    epsilon: &Rat,
    g: &Graph,
    l_values: Option<Vec<u32>>,
    q_values: Option<Vec<u32>>,
) -> Result<GridReport> {
    check_grid_conditions(gamma, delta, epsilon)?;
    let d = g.regular_degree().ok_or_else(|| Error::Usage("grid pipeline needs a regular graph".into()))?;
    let (n, m) = (g.n(), g.m());
    let l_values = match l_values {
        Some(v) => v,
        None => {
            let l0 = certified_l_start(gamma, delta, epsilon, g, 64)?;
            (l0..=l0 + m as u32).collect()
        }
    };
    let q_values = q_values.unwrap_or_else(|| (1..=n as u32 + 1).collect());
    if l_values.len() < m + 1 || q_values.len() < n + 1 {
        return Err(Error::Interpolation(format!("a {}×{} grid is needed", m + 1, n + 1)));
    }

    let mut t_points: Vec<Rat> = Vec::with_capacity(l_values.len());
    let mut rows: Vec<Poly> = Vec::with_capacity(l_values.len());
    let mut y_nodes = Vec::with_capacity(l_values.len());
    for &l in &l_values {
        let mut points = Vec::with_capacity(q_values.len());
        let mut f_t = None;
        for &q in &q_values {
            let rc = f_r_constants(gamma, delta, epsilon, l, q, d, n)?;
            if rc.f_p.is_zero() {
                return Err(Error::Degenerate(format!("prefactor vanishes at ℓ = {l}, q = {q}")));
            }
            let v = rat_div(&query(l, q)?, &rc.f_p, "prefactor")?;
            points.push((rc.f_y, v));
            f_t = Some(rc.f_t);
        }
        y_nodes.push(points.iter().map(|(y, _)| rat_to_string(y)).collect());
        rows.push(lagrange_interpolate(&points, n, "y")?);
        t_points.push(f_t.expect("q values nonempty"));
    }

    let mut z = Poly::zero(&TY);
    for s in 0..=n {
        let points: Vec<(Rat, Rat)> = t_points.iter().cloned().zip(rows.iter().map(|r| r.coeff1(s as u32))).collect();
        let col = lagrange_interpolate(&points, m, "t")?;
        for (e, c) in col.terms() {
            z.add_term(vec![(m as u32) - e[0], s as u32], c.clone());
        }
    }
    Ok(GridReport { poly: z, l_values, q_values, t_nodes: t_points.iter().map(rat_to_string).collect(), y_nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac;
    use crate::closed_forms::z_r_closed_form;
    use crate::graph::{complete, path};
    use crate::ising::{oracles::count_max_cuts, z_bivariate, z_eval_bivariate, z_eval_point};
    use proptest::prelude::*;

    fn tpoly(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs("t", coeffs.iter().map(|&c| rat(c)))
    }

    #[test]
    fn small_h_family() {
        let f = build_h_family(2, 2, 2).unwrap();
        assert_eq!((f.q, f.ell, f.log_q), (2, 1, 1));
        // candidates {2,6}, {4,6}, {2,8}; the last two share σ = 10
        assert_eq!(f.sets, vec![vec![4, 6], vec![2, 8]]);
        assert_eq!(f.sigma, 10);
        assert!(f.certify().all());
        assert!(build_h_family(1, 2, 2).is_err());
        assert!(build_h_family(4, 3, 2).is_err());
    }

    #[test]
    fn h_family_search_certifies() {
        let fam = search_h_family(4, &rat(2), &rat(3), 12).unwrap();
        assert!(fam.certify().all());
        let rc = ReductionConstants::new(&rat(2), &rat(3)).unwrap();
        assert!(fam.f_t_distinct(&rc).unwrap());
        assert!(fam.g_y_certified(&rat(2), &rat(3)).unwrap());
    }

    #[test]
    fn sets_in_weight_order() {
        let first: Vec<Vec<u32>> = sets_by_weight().take(7).collect();
        assert_eq!(first, vec![vec![], vec![1], vec![2], vec![3], vec![1, 2], vec![4], vec![1, 3]]);
    }

    #[test]
    fn y_stage_examples() {
        let o = EvalOracle::brute_force(rat(2), rat(3), 22);
        let p = interpolate_y(&o, &complete(2), &[vec![2], vec![4], vec![6]]).unwrap();
        assert_eq!(p, Poly::from_coeffs("y", [rat(2), rat(2), rat(2)]));
        let p = interpolate_y(&o, &Graph::empty(1), &[vec![2], vec![4]]).unwrap();
        assert_eq!(p, Poly::from_coeffs("y", [rat(1), rat(1)]));
        let dup = interpolate_y(&o, &complete(2), &[vec![2], vec![2], vec![4]]);
        assert!(matches!(dup, Err(Error::Interpolation(_))));
        let bad = EvalOracle::brute_force(rat(2), rat(1), 22);
        assert!(matches!(interpolate_y(&bad, &complete(2), &[vec![1]]), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn y_stage_reproduces_oracle_values() {
        let o = EvalOracle::brute_force(rat(3), frac(-1, 2), 22);
        let g = path(3);
        let fams = y_families(&rat(3), &frac(-1, 2), 4).unwrap();
        let p = interpolate_y(&o, &g, &fams).unwrap();
        for h in &fams {
            let gy = g_y_h(&rat(3), &frac(-1, 2), h).unwrap();
            let gp = g_p_h(&rat(3), &frac(-1, 2), h, 3);
            let direct = o.query(&build_s_h_of(&g, h).unwrap()).unwrap();
            assert_eq!(p.eval(&[gy]).unwrap() * gp, direct);
        }
    }

    #[test]
    fn t_stage_examples() {
        for (g, want) in [(complete(2), tpoly(&[2, 2])), (complete(3), tpoly(&[0, 6, 0, 2]))] {
            let fams = t_families(&rat(2), g.m() + 1).unwrap();
            let values: Vec<_> = fams
                .iter()
                .map(|h| (h.clone(), z_eval_bivariate(&build_otimes(&g, h).unwrap(), &rat(2), &rat(1)).unwrap()))
                .collect();
            assert_eq!(interpolate_t(&values, &rat(2), &g).unwrap(), want);
        }
        let g = Graph::empty(3);
        let p = interpolate_t(&[(vec![1], rat(8))], &rat(2), &g).unwrap();
        assert_eq!(p, tpoly(&[8]));
    }

    #[test]
    fn pendant_transform() {
        for (g, gamma) in [(Graph::empty(1), rat(2)), (complete(2), rat(3))] {
            let o = EvalOracle::brute_force(gamma.clone(), rat(-1), 22);
            let want = z_eval_bivariate(&g, &gamma, &rat(1)).unwrap();
            assert_eq!(minus_one_transform(&o, &g).unwrap(), want);
        }
        let o = EvalOracle::brute_force(rat(1), rat(-1), 22);
        assert!(matches!(minus_one_transform(&o, &Graph::empty(1)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn shift_examples() {
        let o = EvalOracle::brute_force(rat(2), rat(-2), 22);
        assert_eq!(o.query(&path(3)).unwrap(), rat(-18));
        assert_eq!(shift_gamma_eq_minus_delta(&o, &Graph::empty(1)).unwrap(), rat(-3));
        for (gamma, g) in [(frac(1, 3), complete(2)), (rat(-3), path(3))] {
            let o = EvalOracle::brute_force(gamma.clone(), -&gamma, 22);
            let want = z_eval_bivariate(&g, &gamma, &-(&gamma * &gamma)).unwrap();
            assert_eq!(shift_gamma_eq_minus_delta(&o, &g).unwrap(), want);
        }
    }

    #[test]
    fn pipeline_routes() {
        for (gamma, delta, route) in [
            (rat(-2), rat(1), Route::Direct),
            (rat(3), rat(-1), Route::Pendant),
            (rat(2), rat(3), Route::VertexInterpolation),
            (rat(2), rat(-2), Route::ShiftedVertexInterpolation),
        ] {
            let o = EvalOracle::brute_force(gamma, delta, 22);
            let rep = recover_t_polynomial(&o, &Graph::empty(1), None).unwrap();
            assert_eq!(rep.route, route);
            assert_eq!(rep.poly, tpoly(&[2]));
        }
        let o = EvalOracle::brute_force(rat(-2), rat(1), 22);
        let rep = recover_t_polynomial(&o, &complete(3), None).unwrap();
        assert_eq!(rep.poly, tpoly(&[0, 6, 0, 2]));
        assert_eq!(rep.max_query_size, 15);
        assert_eq!(rep.queries, 4);
        let o = EvalOracle::brute_force(rat(1), rat(2), 22);
        assert!(matches!(recover_t_polynomial(&o, &complete(2), None), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn pipeline_with_vertex_stage_within_cap() {
        // K2 through an edgeless ⊗ node and the single-element family
        let o = EvalOracle::brute_force(rat(2), rat(3), 22);
        let rep = recover_t_polynomial(&o, &complete(2), Some(vec![vec![], vec![1]]));
        // the second node needs 5 vertex-stage graphs over 4 vertices
        assert!(matches!(rep, Err(Error::OracleRefused { n: 24, cap: 22 })));
        let o = EvalOracle::brute_force(rat(2), rat(3), 24);
        let rep = recover_t_polynomial(&o, &complete(2), Some(vec![vec![], vec![1]])).unwrap();
        assert_eq!(rep.poly, tpoly(&[2, 2]));
        assert_eq!(rep.max_query_size, 24);
    }

    #[test]
    fn special_examples() {
        let k2 = complete(2);
        for d in [rat(2), frac(-1, 3)] {
            assert_eq!(special_case_eval(&k2, &rat(0), &d).unwrap(), rat(2) * &d);
            let dm1 = &d - rat(1);
            assert_eq!(special_case_eval(&k2, &rat(-1), &d).unwrap(), -(&dm1 * &dm1));
        }
        assert_eq!(special_case_eval(&path(5), &rat(1), &rat(1)).unwrap(), rat(32));
        assert_eq!(special_case_eval(&complete(3), &rat(0), &rat(5)).unwrap(), rat(0));
        assert!(special_case_eval(&k2, &rat(2), &rat(3)).is_err());
    }

    #[test]
    fn max_cut_examples() {
        assert_eq!(max_cut_count(&complete(2)).unwrap(), (1, rat(2)));
        assert_eq!(max_cut_count(&complete(3)).unwrap(), (2, rat(6)));
        assert_eq!(max_cut_count(&Graph::empty(4)).unwrap(), (0, rat(16)));
    }

    #[test]
    fn grid_conditions() {
        assert_eq!(violated_grid_condition(&rat(2), &rat(1), &rat(3)), Some(GridCondition::DeltaNontrivial));
        assert_eq!(violated_grid_condition(&rat(2), &rat(3), &rat(5)), None);
        // γδ + ε = 9/2 and (δγ² + 1)(δ + ε²) = 9 · 9/4
        assert_eq!(violated_grid_condition(&rat(2), &rat(2), &frac(1, 2)), Some(GridCondition::EdgeRatioNotOne));
        assert_eq!(violated_grid_condition(&rat(1), &rat(3), &rat(1)), Some(GridCondition::WeightsUnbalanced));
        assert!(check_grid_conditions(&rat(2), &rat(3), &rat(5)).is_ok());
    }

    #[test]
    fn grid_recovers_k4_from_closed_form_oracle() {
        let g = complete(4);
        let zg = z_bivariate(&g).unwrap();
        let (gamma, delta, epsilon) = (rat(2), rat(3), rat(5));
        let zg2 = zg.clone();
        let (gm, dl, ep) = (gamma.clone(), delta.clone(), epsilon.clone());
        let query = move |l: u32, q: u32| {
            let rc = f_r_constants(&gm, &dl, &ep, l, q, 3, 4)?;
            Ok(z_r_closed_form(&zg2, 6, &rc))
        };
        let rep = grid_interpolate_trivariate(query, &gamma, &delta, &epsilon, &g, None, None).unwrap();
        assert_eq!(rep.poly, zg);
        assert_eq!(rep.l_values.len(), 7);
        assert!(grid_interpolate_trivariate(|_, _| Ok(rat(0)), &gamma, &delta, &epsilon, &path(3), None, None).is_err());
    }

    #[test]
    fn grid_against_brute_force_on_k1() {
        // R^{ℓ,q}(K1) has 1 + 2q + 8ℓq vertices; ℓ = 1, q ∈ {1, 2} stays small
        let g = Graph::empty(1);
        let (gamma, delta, epsilon) = (frac(1, 2), rat(-2), rat(3));
        let o = EvalOracle::brute_force_trivariate(gamma.clone(), delta.clone(), epsilon.clone(), 22);
        let rep = grid_interpolate_trivariate(
            r_graph_query(&o, &g),
            &gamma,
            &delta,
            &epsilon,
            &g,
            Some(vec![1]),
            Some(vec![1, 2]),
        )
        .unwrap();
        assert_eq!(rep.poly, z_bivariate(&g).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn special_cases_match_enumeration(g in crate::graph::tests::arb_graph_upto(7), gi in 0usize..3, di in 0usize..4) {
            let gamma = [rat(1), rat(0), rat(-1)][gi].clone();
            let delta = [rat(2), rat(-2), frac(1, 2), rat(0)][di].clone();
            prop_assert_eq!(special_case_eval(&g, &gamma, &delta).unwrap(), z_eval_point(&g, &gamma, &delta, &gamma).unwrap());
        }

        #[test]
        fn max_cut_matches_counter(g in crate::graph::tests::arb_graph_upto(7)) {
            let (cut, count) = max_cut_count(&g).unwrap();
            let (c2, n2) = count_max_cuts(&g).unwrap();
            prop_assert_eq!((cut, count), (c2, rat(n2 as i64)));
        }
    }
}
