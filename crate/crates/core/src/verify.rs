//! Self-checking suites: each compares a closed form, recurrence or pipeline
//! against exhaustive enumeration on concrete instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{frac, rat, rat_to_string, Poly, Rat, Ring};
use crate::closed_forms::{
    b_all, b_pair, b_recurrence, b_single, e_constants, f_p_h, f_r_constants, f_t_h, f_t_h_direct, g_lq, g_p_h, g_y_h,
    h_lq, omega1, phi_split, phi_split_recurrence, rooted_product_poly, s_h_split, star_split, z_r_closed_form,
    z_r_standard_substitution, ReductionConstants, SpectralData,
};
use crate::cwdp::{dp_z_labeled, eval_kexpr, project_trivariate, KExpr};
use crate::error::{Error, Result};
use crate::gadgets::{
    build_l, build_otimes, build_pendant, build_phi, build_r, build_s_h, build_s_h_of, build_star, build_sth,
};
use crate::graph::{complete, path, star, Graph, VertexSet};
use crate::ising::oracles::count_max_cuts;
use crate::ising::{
    bivariate_from_histogram, subset_histogram, z_bivariate, z_constrained, z_constrained_trivariate, z_eval_bivariate,
    z_eval_point, z_t_only, z_trivariate, Histogram, YConvention, NUMERIC_CAP, XYZ,
};
use crate::reduction::{
    check_grid_conditions, grid_interpolate_trivariate, max_cut_count, recover_t_polynomial, search_h_family,
    special_case_eval, violated_grid_condition, EvalOracle, GridCondition,
};

/// Outcome of one suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Default)]
struct Check {
    checked: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

const MAX_REPORTED: usize = 20;

impl Check {
    fn that(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < MAX_REPORTED {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: impl FnOnce() -> String, got: T, want: T) {
        let ok = got == want;
        self.that(ok, || format!("{}: got {got:?}, want {want:?}", what()));
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

struct Suite {
    id: &'static str,
    title: &'static str,
    run: fn(&mut Check) -> Result<()>,
}

const SUITES: &[Suite] = &[
    Suite { id: "l-gadget", title: "L_h: spectral closed form, recurrence and enumeration agree", run: l_gadget },
    Suite { id: "phi", title: "Φ_H: terminal-constrained sums as products over H", run: phi },
    Suite { id: "otimes", title: "G ⊗ H: edge substitution with prefactor f_p", run: otimes },
    Suite { id: "pendant", title: "Pendant graphs move δ = −1 to δ = 1", run: pendant },
    Suite { id: "star-gadgets", title: "Stars, S_H and the rooted product S_H(G)", run: star_gadgets },
    Suite { id: "thickening", title: "Thickened edges and thickened stars", run: thickening },
    Suite { id: "r-graph", title: "R^{ℓ,q}(K1) against the cut-weighted closed form", run: r_graph_small },
    Suite {
        id: "r-graph-large",
        title: "R^{1,1}(K2) (26 vertices) against the cut-weighted closed form",
        run: r_graph_large,
    },
    Suite { id: "grid", title: "Trivariate grid: factorized constants, conditions, interpolation", run: grid },
    Suite { id: "cwdp", title: "Clique-width DP against enumeration on random k-expressions", run: cwdp },
    Suite { id: "pipeline", title: "Recovering Z(G; t, 1) from a 22-vertex oracle", run: pipeline },
    Suite { id: "special-cases", title: "Closed forms at γ ∈ {−1, 0, 1} and δ = 0", run: special_cases },
    Suite { id: "maxcut", title: "Maximum cut and its multiplicity from Z(G; t, 1)", run: maxcut },
    Suite { id: "h-family", title: "Equal-sum gadget families and their certificates", run: h_family },
];

pub fn suite_ids() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.id).collect()
}

/// Run one suite by id, or every suite for `"all"`.
pub fn run(id: &str) -> Result<Vec<SuiteReport>> {
    let chosen: Vec<&Suite> = if id == "all" {
        SUITES.iter().collect()
    } else {
        match SUITES.iter().find(|s| s.id == id) {
            Some(s) => vec![s],
            None => return Err(Error::Usage(format!("unknown suite {id:?}; known: all, {}", suite_ids().join(", ")))),
        }
    };
    Ok(chosen.into_iter().map(run_suite).collect())
}

fn run_suite(s: &Suite) -> SuiteReport {
    let mut c = Check::default();
    if let Err(e) = (s.run)(&mut c) {
        c.failures.push(format!("aborted: {e}"));
    }
    SuiteReport {
        id: s.id,
        title: s.title,
        passed: c.failures.is_empty(),
        checked: c.checked,
        failures: c.failures,
        notes: c.notes,
    }
}

// ---------------------------------------------------------------------------
// helpers

fn set(n: usize, vs: &[usize]) -> Result<VertexSet> {
    VertexSet::from_indices(n, vs.iter().copied())
}

/// `p(t, y)` at `y = 1`, as a polynomial in `t`.
fn at_y1(p: &Poly) -> Result<Poly> {
    p.map_vars(&["t"], &[Some(0), None])
}

fn t_var() -> Poly {
    Poly::var(&["t"], 0)
}

/// `Σ_S t^{e(S) + e(S̄)} y0^{|S|}` as a polynomial in `t`.
fn t_poly_at_y(h: &Histogram, y0: &Rat) -> Poly {
    let mut p = Poly::zero(&["t"]);
    for ((a, s, c), k) in h.entries() {
        p.add_term(vec![a + c], Rat::from_integer(k.into()) * y0.pow_u(s as u64));
    }
    p
}

fn bivariate_fast(g: &Graph) -> Result<Poly> {
    Ok(bivariate_from_histogram(&subset_histogram(g, NUMERIC_CAP, 8)?))
}

/// `count` random graphs on at most `max_n` vertices, reproducible from `seed`.
pub fn seeded_graphs(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graph(&mut rng, max_n)).collect()
}

/// `count` random k-expressions with `k ≤ max_k` and at most `max_leaves`
/// leaves, reproducible from `seed`.
pub fn seeded_kexprs(seed: u64, count: usize, max_k: usize, max_leaves: usize) -> Vec<KExpr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=max_k);
            let leaves = rng.gen_range(1..=max_leaves);
            random_kexpr(&mut rng, k, leaves)
        })
        .collect()
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.2..0.8);
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect::<Vec<_>>();
    Graph::new(n, edges).expect("simple by construction")
}

fn random_kexpr(rng: &mut ChaCha8Rng, k: usize, leaves: usize) -> KExpr {
    let mut e = if leaves == 1 {
        KExpr::Singleton(rng.gen_range(1..=k))
    } else {
        let left = rng.gen_range(1..leaves);
        KExpr::Union(Box::new(random_kexpr(rng, k, left)), Box::new(random_kexpr(rng, k, leaves - left)))
    };
    for _ in 0..rng.gen_range(0..=2) {
        let (i, j) = (rng.gen_range(1..=k), rng.gen_range(1..=k));
        e = if rng.gen_bool(0.6) { KExpr::AddEdges(i, j, Box::new(e)) } else { KExpr::Relabel(i, j, Box::new(e)) };
    }
    e
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    let num = rng.gen_range(-6i64..=6);
    let den = rng.gen_range(1i64..=3);
    frac(num, den)
}

fn subsets_of(universe: &[u32]) -> Vec<Vec<u32>> {
    (0..1u32 << universe.len())
        .map(|mask| universe.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &h)| h).collect())
        .collect()
}

fn sample_ts() -> Vec<Rat> {
    vec![rat(2), rat(-2), rat(3), frac(1, 2)]
}

// ---------------------------------------------------------------------------
// suites

fn l_gadget(c: &mut Check) -> Result<()> {
    for t in sample_ts() {
        let sd = SpectralData::new(&t)?;
        let t2 = &t * &t;
        c.eq(|| format!("b_all(0) at t={t}"), b_all(&sd, 0)?, t2.clone());
        c.eq(|| format!("b_all(1) at t={t}"), b_all(&sd, 1)?, t2.pow_u(2) * &t + &t2);
        c.eq(|| format!("b_pair(0) at t={t}"), b_pair(&sd, 0)?, rat(1));
        c.eq(|| format!("b_pair(1) at t={t}"), b_pair(&sd, 1)?, &t2 + &t);
    }
    for h in 0..=6 {
        let l = build_l(h);
        let n = l.graph.n();
        let (tr1, tr2, hd) = (l.mark("tr1")?, l.mark("tr2")?, l.mark("hd")?);
        let brute = |b: &[usize], cc: &[usize]| -> Result<Poly> {
            at_y1(&z_constrained(&l.graph, &set(n, b)?, &set(n, cc)?, YConvention::FullSet)?)
        };
        let all = brute(&[tr1, tr2, hd], &[])?;
        let pair = brute(&[tr1, tr2], &[hd])?;
        let single = brute(&[tr1, hd], &[tr2])?;
        let (ra, rp) = b_recurrence(&t_var(), h);
        c.eq(|| format!("b_all recurrence, h={h}"), ra, all.clone());
        c.eq(|| format!("b_pair recurrence, h={h}"), rp, pair.clone());
        c.eq(|| format!("single-terminal recurrence, h={h}"), b_single(&t_var(), h), single);
        for t in sample_ts() {
            let sd = SpectralData::new(&t)?;
            c.eq(|| format!("b_all closed form, h={h}, t={t}"), b_all(&sd, h)?, all.eval(std::slice::from_ref(&t))?);
            c.eq(|| format!("b_pair closed form, h={h}, t={t}"), b_pair(&sd, h)?, pair.eval(std::slice::from_ref(&t))?);
        }
    }
    Ok(())
}

fn phi(c: &mut Check) -> Result<()> {
    let t = t_var();
    for hs in subsets_of(&[1, 2, 3]).into_iter().filter(|h| !h.is_empty()) {
        let p = build_phi(&hs)?;
        let n = p.graph.n();
        let (a, b) = (p.mark("tr1")?, p.mark("tr2")?);
        let brute = |bs: &[usize], cs: &[usize]| -> Result<Poly> {
            at_y1(&z_constrained(&p.graph, &set(n, bs)?, &set(n, cs)?, YConvention::FullSet)?)
        };
        let opp = brute(&[a], &[b])?;
        let same_in = brute(&[a, b], &[])?;
        let same_out = brute(&[], &[a, b])?;
        let mut formula = t.one_like();
        for &h in &hs {
            let t2t = &(&t * &t) + &t;
            formula = &formula * &(&t.scale(&rat(2)) * &t2t.pow(h));
        }
        c.eq(|| format!("opposite terminals, H={hs:?}"), opp.clone(), formula);
        c.eq(|| format!("both terminals in vs out, H={hs:?}"), same_in.clone(), same_out);
        let (ro, rs) = phi_split_recurrence(&t, &hs);
        c.eq(|| format!("recurrence, H={hs:?}"), (ro, rs), (opp.clone(), same_in.clone()));
        for tv in sample_ts() {
            let sd = SpectralData::new(&tv)?;
            let (co, cs) = phi_split(&sd, &hs)?;
            let x = std::slice::from_ref(&tv);
            c.eq(|| format!("spectral form, H={hs:?}, t={tv}"), (co, cs), (opp.eval(x)?, same_in.eval(x)?));
        }
    }
    Ok(())
}

fn otimes(c: &mut Check) -> Result<()> {
    let graphs = [("K2", complete(2)), ("P3", path(3)), ("K3", complete(3))];
    for t in [rat(2), rat(3), frac(1, 2)] {
        let rc = ReductionConstants::new(&t, &rat(1))?;
        for (name, g) in &graphs {
            for hs in [vec![1], vec![2], vec![1, 2]] {
                // the radical parts cancel, otherwise f_t_h reports an error
                let ft = f_t_h(&rc, &hs)?;
                c.eq(|| format!("f_t two ways, H={hs:?}, t={t}"), ft.clone(), f_t_h_direct(&t, &hs)?);
                let lhs = z_eval_bivariate(&build_otimes(g, &hs)?, &t, &rat(1))?;
                let rhs = f_p_h(&t, &hs, g.m()) * z_eval_bivariate(g, &ft, &rat(1))?;
                c.eq(|| format!("{name} ⊗ {hs:?} at t={t}"), lhs, rhs);
            }
        }
    }
    Ok(())
}

fn pendant(c: &mut Check) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let t = t_var();
    for trial in 0..20 {
        let g = random_graph(&mut rng, 10);
        let lhs = t_poly_at_y(&subset_histogram(&build_pendant(&g), NUMERIC_CAP, 8)?, &rat(-1));
        let z1 = t_poly_at_y(&subset_histogram(&g, NUMERIC_CAP, 8)?, &rat(1));
        let scale = (&t - &t.one_like()).pow(g.n() as u32);
        c.eq(|| format!("graph #{trial} (n={}, m={})", g.n(), g.m()), lhs, &scale * &z1);
    }
    Ok(())
}

fn star_gadgets(c: &mut Check) -> Result<()> {
    let vars = ["t", "y"];
    let (t, y) = (Poly::var(&vars, 0), Poly::var(&vars, 1));
    for leaves in 1..=3 {
        let s = build_star(leaves);
        let n = s.graph.n();
        let cent = s.mark("cent")?;
        let (i, o) = star_split(&t, &y, leaves as u32);
        c.eq(
            || format!("S_{leaves} with center in S"),
            i,
            z_constrained(&s.graph, &set(n, &[cent])?, &set(n, &[])?, YConvention::FullSet)?,
        );
        c.eq(
            || format!("S_{leaves} with center out"),
            o,
            z_constrained(&s.graph, &set(n, &[])?, &set(n, &[cent])?, YConvention::FullSet)?,
        );
    }
    for hs in subsets_of(&[1, 2, 3]) {
        let s = build_s_h(&hs)?;
        let n = s.graph.n();
        let (i, o) = s_h_split(&t, &y, &hs);
        c.eq(
            || format!("S_H center in, H={hs:?}"),
            i,
            z_constrained(&s.graph, &set(n, &[0])?, &set(n, &[])?, YConvention::FullSet)?,
        );
        c.eq(
            || format!("S_H center out, H={hs:?}"),
            o,
            z_constrained(&s.graph, &set(n, &[])?, &set(n, &[0])?, YConvention::FullSet)?,
        );
    }
    let mut skipped = 0;
    for (name, g) in [("K1", Graph::empty(1)), ("K2", complete(2)), ("P3", path(3))] {
        let zg = z_bivariate(&g)?;
        for hs in subsets_of(&[1, 2, 3]).into_iter().filter(|h| !h.is_empty()) {
            let big = build_s_h_of(&g, &hs)?;
            if big.n() > 22 {
                skipped += 1;
                continue;
            }
            let (i, o) = s_h_split(&t, &y, &hs);
            let brute = bivariate_fast(&big)?;
            c.eq(|| format!("S_H({name}), H={hs:?}"), brute.clone(), rooted_product_poly(&zg, &i, &o, g.n()));
            let (tv, yv) = (rat(2), rat(3));
            let gy = g_y_h(&tv, &yv, &hs)?;
            let rhs = g_p_h(&tv, &yv, &hs, g.n()) * zg.eval(&[tv.clone(), gy])?;
            c.eq(|| format!("S_H({name}) at (2, 3), H={hs:?}"), brute.eval(&[tv, yv])?, rhs);
        }
    }
    c.note(format!("{skipped} rooted products above 22 vertices skipped"));
    Ok(())
}

fn thickening(c: &mut Check) -> Result<()> {
    let (x, y, z) = (Poly::var(&XYZ, 0), Poly::var(&XYZ, 1), Poly::var(&XYZ, 2));
    for l in 1..=2usize {
        let th = build_sth(&complete(2), l)?;
        let np = th.n_plus(0)?;
        let n = np.graph.n();
        let (u, w) = (np.mark("u")?, np.mark("w")?);
        let cases: [(&[usize], &[usize], u8); 4] =
            [(&[], &[u, w], 0), (&[u], &[w], 1), (&[w], &[u], 1), (&[u, w], &[], 2)];
        for (b, cc, k) in cases {
            let brute = z_constrained_trivariate(&np.graph, &set(n, b)?, &set(n, cc)?, YConvention::ExcludeForced)?;
            c.eq(|| format!("thickened edge, ℓ={l}, B={b:?}"), brute, omega1(&x, &y, &z, l as u32, k)?);
        }
    }
    for q in 1..=1u32 {
        let th = build_sth(&star(2 * q as usize), 1)?;
        let n = th.graph.n();
        let inside = z_constrained_trivariate(&th.graph, &set(n, &[0])?, &set(n, &[])?, YConvention::ExcludeForced)?;
        let outside = z_constrained_trivariate(&th.graph, &set(n, &[])?, &set(n, &[0])?, YConvention::ExcludeForced)?;
        c.eq(|| format!("thickened star center in, q={q}"), inside, g_lq(&x, &y, &z, 1).pow(2 * q));
        c.eq(|| format!("thickened star center out, q={q}"), outside, h_lq(&x, &y, &z, 1).pow(2 * q));
    }
    Ok(())
}

fn r_graph_points() -> [(Rat, Rat, Rat); 2] {
    [(rat(2), rat(3), rat(5)), (frac(1, 2), rat(-2), rat(3))]
}

fn r_graph_check(c: &mut Check, name: &str, g: &Graph, lq: &[(usize, usize)]) -> Result<()> {
    let d = g.regular_degree().ok_or_else(|| Error::Usage("regular base graph needed".into()))?;
    let zg = z_bivariate(g)?;
    for &(l, q) in lq {
        let r = build_r(g, l, q)?;
        for (x, y, z) in r_graph_points() {
            let rc = f_r_constants(&x, &y, &z, l as u32, q as u32, d, g.n())?;
            let brute = z_eval_point(&r, &x, &y, &z)?;
            let closed = z_r_closed_form(&zg, g.m(), &rc);
            c.eq(|| format!("R^{{{l},{q}}}({name}) ({} vertices) at ({x}, {y}, {z})", r.n()), brute.clone(), closed);
            if g.m() > 0 && z_r_standard_substitution(&zg, &rc)? != brute {
                c.note(format!(
                    "R^{{{l},{q}}}({name}) at ({x}, {y}, {z}): f_p·Z(G; f_t, f_y) differs from the enumerated value"
                ));
            }
        }
    }
    Ok(())
}

fn r_graph_small(c: &mut Check) -> Result<()> {
    r_graph_check(c, "K1", &Graph::empty(1), &[(1, 1), (1, 2)])
}

fn r_graph_large(c: &mut Check) -> Result<()> {
    r_graph_check(c, "K2", &complete(2), &[(1, 1)])
}

fn grid(c: &mut Check) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let mut points = 0;
    while points < 5 {
        let (g, d, e) = (small_rat(&mut rng), small_rat(&mut rng), small_rat(&mut rng));
        if check_grid_conditions(&g, &d, &e).is_err() || e_constants(&g, &d, &e, 1).is_err() {
            continue;
        }
        points += 1;
        for l in 1..=2u32 {
            let ec = e_constants(&g, &d, &e, l)?;
            for q in 1..=2u32 {
                for deg in 0..=3usize {
                    let rc = f_r_constants(&g, &d, &e, l, q, deg, 4)?;
                    let at = || format!("({g}, {d}, {e}), ℓ={l}, q={q}, d={deg}");
                    c.eq(|| format!("edge factor {}", at()), rc.f_t, ec.e_t.pow_u(l as u64));
                    let fy = &d * ec.e_y1.pow_u(2 * deg as u64 * l as u64) * ec.e_y2.pow_u(2 * q as u64);
                    c.eq(|| format!("vertex factor {}", at()), rc.f_y, fy);
                }
            }
        }
    }
    let cases: Vec<((Rat, Rat, Rat), Option<GridCondition>)> = vec![
        ((rat(2), rat(3), rat(5)), None),
        ((frac(1, 2), rat(-2), rat(3)), None),
        ((rat(2), rat(1), rat(3)), Some(GridCondition::DeltaNontrivial)),
        ((rat(2), rat(0), rat(3)), Some(GridCondition::DeltaNontrivial)),
        ((rat(2), rat(-1), rat(3)), Some(GridCondition::DeltaNontrivial)),
        ((rat(2), rat(-2), rat(1)), Some(GridCondition::LeafWeightNontrivial)),
        ((rat(2), rat(-4), rat(2)), Some(GridCondition::LeafWeightNontrivial)),
        ((rat(2), rat(-3), rat(2)), Some(GridCondition::LeafWeightNontrivial)),
        ((rat(1), rat(3), rat(1)), Some(GridCondition::WeightsUnbalanced)),
        ((frac(1, 2), rat(-4), rat(3)), Some(GridCondition::InsideWeightNonzero)),
        ((rat(2), rat(3), rat(-6)), Some(GridCondition::MixedWeightNonzero)),
        ((rat(2), rat(2), frac(1, 2)), Some(GridCondition::EdgeRatioNotOne)),
    ];
    for ((g, d, e), want) in cases {
        c.eq(|| format!("conditions at ({g}, {d}, {e})"), violated_grid_condition(&g, &d, &e), want);
    }

    let k4 = complete(4);
    let zg = z_bivariate(&k4)?;
    let (g, d, e) = (rat(2), rat(3), rat(5));
    let zq = zg.clone();
    let (g2, d2, e2) = (g.clone(), d.clone(), e.clone());
    let query = move |l: u32, q: u32| Ok(z_r_closed_form(&zq, 6, &f_r_constants(&g2, &d2, &e2, l, q, 3, 4)?));
    let rep = grid_interpolate_trivariate(query, &g, &d, &e, &k4, None, None)?;
    c.eq(|| "K4 from closed-form oracle".to_string(), rep.poly, zg);
    c.note(format!("ℓ window {:?}", rep.l_values));
    Ok(())
}

fn cwdp(c: &mut Check) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_000c);
    for trial in 0..50 {
        let k = rng.gen_range(1..=4);
        let leaves = rng.gen_range(1..=14);
        let e = random_kexpr(&mut rng, k, leaves);
        let tbl = dp_z_labeled(&e)?;
        tbl.validate()?;
        let g = eval_kexpr(&e)?;
        c.eq(|| format!("expression #{trial}: {e}"), project_trivariate(&tbl), z_trivariate(&g)?);
    }
    Ok(())
}

/// `(γ, δ)` and base graphs for the pipeline suite.
pub fn pipeline_instances() -> Vec<((Rat, Rat), &'static str, Graph)> {
    let points = [(rat(2), rat(3)), (rat(2), rat(-3)), (rat(-2), rat(1)), (rat(3), rat(-1))];
    let graphs = [("K2", complete(2)), ("P3", path(3)), ("K3", complete(3))];
    points.iter().flat_map(|p| graphs.iter().map(move |(n, g)| (p.clone(), *n, g.clone()))).collect()
}

/// Oracle size limit in the pipeline suite.
pub const PIPELINE_CAP: usize = 22;

fn pipeline(c: &mut Check) -> Result<()> {
    for ((gamma, delta), name, g) in pipeline_instances() {
        let want = z_t_only(&g)?;
        let o = EvalOracle::brute_force(gamma.clone(), delta.clone(), PIPELINE_CAP);
        let at = format!("{name} at ({}, {})", rat_to_string(&gamma), rat_to_string(&delta));
        match recover_t_polynomial(&o, &g, None) {
            Ok(rep) => {
                c.eq(|| at.clone(), rep.poly, want);
                c.note(format!(
                    "{at}: {:?}, {} queries, largest {} vertices",
                    rep.route, rep.queries, rep.max_query_size
                ));
            }
            Err(e) => c.that(false, || format!("{at}: {e}")),
        }
    }
    Ok(())
}

fn special_cases(c: &mut Check) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_000b);
    let deltas = [rat(2), rat(-2), frac(1, 2)];
    for trial in 0..30 {
        let g = random_graph(&mut rng, 10);
        let tag = || format!("graph #{trial} (n={}, m={})", g.n(), g.m());
        for gamma in [rat(1), rat(0), rat(-1)] {
            for delta in &deltas {
                c.eq(
                    || format!("{} at ({gamma}, {delta})", tag()),
                    special_case_eval(&g, &gamma, delta)?,
                    z_eval_point(&g, &gamma, delta, &gamma)?,
                );
            }
        }
        for gamma in [rat(1), rat(0), rat(-1), rat(2), frac(-1, 3)] {
            let v = special_case_eval(&g, &gamma, &rat(0))?;
            c.eq(|| format!("{} at ({gamma}, 0)", tag()), v.clone(), z_eval_point(&g, &gamma, &rat(0), &gamma)?);
            c.eq(|| format!("{} at ({gamma}, 0) is γ^m", tag()), v, gamma.pow_u(g.m() as u64));
        }
        for delta in &deltas {
            c.eq(
                || format!("{} at (1, {delta}) is (1+δ)^n", tag()),
                z_eval_point(&g, &rat(1), delta, &rat(1))?,
                (rat(1) + delta).pow_u(g.n() as u64),
            );
        }
    }
    Ok(())
}

fn maxcut(c: &mut Check) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_000d);
    c.eq(|| "K3".to_string(), max_cut_count(&complete(3))?, (2, rat(6)));
    for trial in 0..30 {
        let g = random_graph(&mut rng, 10);
        let (cut, count) = count_max_cuts(&g)?;
        c.eq(|| format!("graph #{trial} (n={}, m={})", g.n(), g.m()), max_cut_count(&g)?, (cut, rat(count as i64)));
    }
    Ok(())
}

fn h_family(c: &mut Check) -> Result<()> {
    let (gamma, delta) = (rat(2), rat(3));
    let rc = ReductionConstants::new(&gamma, &delta)?;
    for qp in [2u32, 4, 8, 16] {
        let fam = search_h_family(qp, &gamma, &delta, 12)?;
        let cert = fam.certify();
        c.that(cert.all(), || format!("q'={qp}: structural certificate {cert:?}"));
        c.that(fam.f_t_distinct(&rc)?, || format!("q'={qp}: coincident edge nodes"));
        c.note(format!(
            "q'={qp}: m0={}, Δ={}, {} sets of {} elements, σ={} (σ/⌈log q'⌉³ = {:.2})",
            fam.m0,
            fam.spacing,
            fam.sets.len(),
            fam.ell + 1,
            fam.sigma,
            cert.sigma_ratio
        ));
    }
    Ok(())
}
