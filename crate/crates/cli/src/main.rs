use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ising_core::algebra::{parse_rat, rat_to_string};
use ising_core::cwdp::{dp_z_labeled, parse_kexpr, project_trivariate};
use ising_core::gadgets::{
    build_l, build_otimes, build_pendant, build_phi, build_r, build_s_h, build_s_h_of, build_star, build_sth,
    GadgetGraph,
};
use ising_core::ising::{
    z_bivariate, z_constrained, z_constrained_trivariate, z_eval_bivariate, z_eval_point, z_trivariate, YConvention,
};
use ising_core::reduction::{
    build_h_family, grid_interpolate_trivariate, interpolate_y_with_nodes, max_cut_count, r_graph_query,
    recover_t_polynomial, special_case_eval, y_families, EvalOracle,
};
use ising_core::{verify, Error, Graph, Poly, Rat, VertexSet};

#[derive(Parser)]
#[command(name = "ising", version, about = "Exact Ising partition-function polynomials of simple graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Partition-function polynomial of a graph (trivariate by default).
    Compute {
        graph: PathBuf,
        /// Emit Z(G; t, y) instead of Z(G; x, y, z).
        #[arg(long)]
        bivariate: bool,
        /// Evaluate at a point instead: x,y,z (or t,y with --bivariate).
        #[arg(long, value_name = "POINT")]
        eval: Option<String>,
        /// Force the vertices in B into S and those in C out of S; each a
        /// comma-separated vertex list, possibly empty.
        #[arg(long, num_args = 2, value_names = ["B", "C"], allow_hyphen_values = true)]
        constrain: Option<Vec<String>>,
        /// With --constrain, count only the free vertices of S in the y-exponent.
        #[arg(long)]
        exclude_forced: bool,
    },
    /// Emit a gadget construction as graph JSON.
    Gadget {
        #[arg(value_enum)]
        name: GadgetName,
        /// Path length h (l-path).
        #[arg(long, default_value_t = 1)]
        h: u32,
        /// Gadget set, comma separated (phi, otimes, s-h, s-h-of).
        #[arg(long, default_value = "1")]
        set: String,
        /// Base graph JSON (otimes, pendant, s-h-of, thickening, r-graph).
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        leaves: usize,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
    },
    /// Clique-width DP on a k-expression file.
    Cwdp {
        #[arg(long)]
        kexpr: PathBuf,
        /// Project the labeled table to Z(G; x, y, z).
        #[arg(long)]
        project: bool,
    },
    /// Run an identity suite by id, or all of them.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        /// List the suite ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Recover polynomials from a brute-force evaluation oracle.
    Reduce {
        /// γ,δ or γ,δ,ε.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        pipeline: PipelineKind,
        /// Smallest element of an equal-sum gadget family (y pipeline).
        #[arg(long)]
        m0: Option<u32>,
        /// Spacing of an equal-sum gadget family (y pipeline).
        #[arg(long)]
        delta_param: Option<u32>,
        /// Largest graph the oracle will evaluate.
        #[arg(long, default_value_t = 26)]
        cap: usize,
    },
    /// Maximum cut size and the number of maximum cuts.
    Maxcut { graph: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetName {
    LPath,
    Phi,
    Otimes,
    Pendant,
    Star,
    SH,
    SHOf,
    Thickening,
    RGraph,
}

#[derive(Clone, Copy, ValueEnum)]
enum PipelineKind {
    Y,
    T,
    Grid,
    Special,
    Maxcut,
}

enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// A computation or a check failed: exit 1.
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Interpolation(_) | Error::Internal(_) | Error::OracleRefused { .. } => {
                Failure::Failed(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("ising: {msg}");
        return ExitCode::from(2);
    }
    match run(cli.cmd) {
        Ok((out, ok)) => {
            println!("{out}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("ising: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("ising: {msg}");
            ExitCode::from(1)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("ISING_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("ISING_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("ISING_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> CliResult<Graph> {
    Ok(Graph::from_json(&read(path)?)?)
}

fn poly_value(p: &Poly) -> Value {
    serde_json::from_str(&p.to_json()).expect("poly json is valid")
}

fn graph_value(g: &Graph) -> Value {
    serde_json::from_str(&g.to_json()).expect("graph json is valid")
}

fn rat_list(text: &str, what: &str) -> CliResult<Vec<Rat>> {
    text.split(',').map(|s| parse_rat(s.trim()).map_err(|e| Failure::Usage(format!("{what}: {e}")))).collect()
}

fn u32_list(text: &str) -> CliResult<Vec<u32>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| Failure::Usage(format!("bad set element {s:?}"))))
        .collect()
}

fn vertex_set(n: usize, text: &str) -> CliResult<VertexSet> {
    let vs = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad vertex {s:?}"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(VertexSet::from_indices(n, vs)?)
}

fn run(cmd: Cmd) -> CliResult<(Value, bool)> {
    match cmd {
        Cmd::Compute { graph, bivariate, eval, constrain, exclude_forced } => {
            let g = read_graph(&graph)?;
            compute(&g, bivariate, eval, constrain, exclude_forced).map(|v| (v, true))
        }
        Cmd::Gadget { name, h, set, graph, leaves, l, q } => {
            let need_graph = || -> CliResult<Graph> {
                read_graph(graph.as_deref().ok_or_else(|| Failure::Usage("this gadget needs --graph".into()))?)
            };
            let marked = |gg: GadgetGraph| json!({ "graph": graph_value(&gg.graph), "marks": gg.marks });
            let plain = |g: Graph| json!({ "graph": graph_value(&g) });
            let hs = u32_list(&set)?;
            let out = match name {
                GadgetName::LPath => marked(build_l(h)),
                GadgetName::Phi => marked(build_phi(&hs)?),
                GadgetName::Otimes => plain(build_otimes(&need_graph()?, &hs)?),
                GadgetName::Pendant => plain(build_pendant(&need_graph()?)),
                GadgetName::Star => marked(build_star(leaves)),
                GadgetName::SH => marked(build_s_h(&hs)?),
                GadgetName::SHOf => plain(build_s_h_of(&need_graph()?, &hs)?),
                GadgetName::Thickening => plain(build_sth(&need_graph()?, l)?.graph),
                GadgetName::RGraph => plain(build_r(&need_graph()?, l, q)?),
            };
            Ok((out, true))
        }
        Cmd::Cwdp { kexpr, project } => {
            let e = parse_kexpr(&read(&kexpr)?)?;
            let tbl = dp_z_labeled(&e)?;
            let p = if project { project_trivariate(&tbl) } else { tbl.to_labeled_poly() };
            Ok((poly_value(&p), true))
        }
        Cmd::Verify { suite, list } => {
            if list {
                return Ok((json!(verify::suite_ids()), true));
            }
            let reports = verify::run(&suite)?;
            let ok = reports.iter().all(|r| r.passed);
            for r in &reports {
                eprintln!("{} {}", if r.passed { "PASS" } else { "FAIL" }, r.id);
            }
            Ok((json!({ "passed": ok, "suites": reports }), ok))
        }
        Cmd::Reduce { point, graph, pipeline, m0, delta_param, cap } => {
            let g = read_graph(&graph)?;
            let pt = rat_list(&point, "--point")?;
            reduce(&g, &pt, pipeline, m0, delta_param, cap).map(|v| (v, true))
        }
        Cmd::Maxcut { graph } => {
            let (cut, count) = max_cut_count(&read_graph(&graph)?)?;
            Ok((json!({ "maxcut": cut, "count": integer_value(&count) }), true))
        }
    }
}

/// A JSON number when it fits, otherwise a decimal string.
fn integer_value(q: &Rat) -> Value {
    match q.to_integer().to_string().parse::<u64>() {
        Ok(v) if q.is_integer() => json!(v),
        _ => json!(rat_to_string(q)),
    }
}

fn compute(
    g: &Graph,
    bivariate: bool,
    eval: Option<String>,
    constrain: Option<Vec<String>>,
    exclude_forced: bool,
) -> CliResult<Value> {
    if let Some(point) = eval {
        if constrain.is_some() {
            return Err(Failure::Usage("--eval and --constrain cannot be combined".into()));
        }
        let p = rat_list(&point, "--eval")?;
        let v = match (bivariate, p.as_slice()) {
            (true, [t, y]) => z_eval_bivariate(g, t, y)?,
            (false, [x, y, z]) => z_eval_point(g, x, y, z)?,
            _ => return Err(Failure::Usage(format!("--eval needs {} values", if bivariate { 2 } else { 3 }))),
        };
        return Ok(json!({ "value": rat_to_string(&v) }));
    }
    let p = match constrain {
        Some(bc) => {
            let (b, c) = (vertex_set(g.n(), &bc[0])?, vertex_set(g.n(), &bc[1])?);
            let conv = if exclude_forced { YConvention::ExcludeForced } else { YConvention::FullSet };
            if bivariate {
                z_constrained(g, &b, &c, conv)?
            } else {
                z_constrained_trivariate(g, &b, &c, conv)?
            }
        }
        None if bivariate => z_bivariate(g)?,
        None => z_trivariate(g)?,
    };
    Ok(poly_value(&p))
}

fn reduce(
    g: &Graph,
    pt: &[Rat],
    kind: PipelineKind,
    m0: Option<u32>,
    spacing: Option<u32>,
    cap: usize,
) -> CliResult<Value> {
    let (gamma, delta) = match pt {
        [a, b] | [a, b, _] => (a.clone(), b.clone()),
        _ => return Err(Failure::Usage("--point needs γ,δ or γ,δ,ε".into())),
    };
    match kind {
        PipelineKind::Y => {
            let oracle = EvalOracle::brute_force(gamma.clone(), delta.clone(), cap);
            let families = match (m0, spacing) {
                (None, None) => y_families(&gamma, &delta, g.n() + 1)?,
                (Some(m0), Some(sp)) => {
                    let fam = build_h_family((g.n() as u32 + 1).max(2), m0, sp)?;
                    if !fam.certify().all() {
                        return Err(Failure::Failed("gadget family fails its structural certificate".into()));
                    }
                    if fam.sets.len() < g.n() + 1 {
                        return Err(Failure::Failed(format!(
                            "family has {} sets, {} are needed",
                            fam.sets.len(),
                            g.n() + 1
                        )));
                    }
                    fam.sets[..g.n() + 1].to_vec()
                }
                _ => return Err(Failure::Usage("--m0 and --delta-param go together".into())),
            };
            let (p, nodes) = interpolate_y_with_nodes(&oracle, g, &families)?;
            Ok(json!({
                "poly": poly_value(&p),
                "report": { "nodes": nodes, "queries": oracle.calls(), "max_query_size": oracle.max_queried() },
            }))
        }
        PipelineKind::T | PipelineKind::Maxcut => {
            let oracle = EvalOracle::brute_force(gamma, delta, cap);
            let rep = recover_t_polynomial(&oracle, g, None)?;
            if matches!(kind, PipelineKind::T) {
                return Ok(json!({ "poly": poly_value(&rep.poly), "report": rep }));
            }
            // Z(G; t, 1) = Σ_S t^{m − cut(S)}: the lowest exponent is m − maxcut
            let (low, count) = rep
                .poly
                .terms()
                .min_by_key(|(e, _)| e[0])
                .map(|(e, c)| (e[0] as usize, c.clone()))
                .ok_or_else(|| Failure::Failed("recovered polynomial is zero".into()))?;
            Ok(json!({ "maxcut": g.m() - low, "count": integer_value(&count), "report": rep }))
        }
        PipelineKind::Grid => {
            let [_, _, epsilon] = pt else {
                return Err(Failure::Usage("the grid pipeline needs --point γ,δ,ε".into()));
            };
            let oracle = EvalOracle::brute_force_trivariate(gamma.clone(), delta.clone(), epsilon.clone(), cap);
            let rep = grid_interpolate_trivariate(r_graph_query(&oracle, g), &gamma, &delta, epsilon, g, None, None)?;
            Ok(json!({
                "poly": poly_value(&rep.poly),
                "report": rep,
                "queries": oracle.calls(),
                "max_query_size": oracle.max_queried(),
            }))
        }
        PipelineKind::Special => {
            let v = special_case_eval(g, &gamma, &delta)?;
            Ok(json!({ "value": rat_to_string(&v), "point": [rat_to_string(&gamma), rat_to_string(&delta)] }))
        }
    }
}
