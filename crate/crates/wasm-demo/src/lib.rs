//! Browser bindings: compute partition-function polynomials, run the
//! clique-width DP, and count maximum cuts.
//!
//! Every export takes and returns JSON strings. Errors become JS exceptions.

use serde_json::json;
use wasm_bindgen::prelude::*;

use ising_core::cwdp::{dp_z_labeled, eval_kexpr, parse_kexpr, project_trivariate};
use ising_core::ising::{z_bivariate, z_trivariate};
use ising_core::reduction::max_cut_count;
use ising_core::Graph;

/// Largest graph the page will enumerate, to keep the tab responsive.
pub const DEMO_CAP: usize = 20;

fn graph_from(text: &str) -> Result<Graph, String> {
    let g = parse_graph(text)?;
    if g.n() > DEMO_CAP {
        return Err(format!("the demo enumerates at most {DEMO_CAP} vertices, got {}", g.n()));
    }
    Ok(g)
}

/// Graph JSON, or an edge list with one `u v` pair per line and an optional
/// first line `n N`.
fn parse_graph(text: &str) -> Result<Graph, String> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return Graph::from_json(trimmed).map_err(|e| e.to_string());
    }
    let mut n = 0usize;
    let mut edges = Vec::new();
    for (i, line) in trimmed.lines().enumerate() {
        let nums: Vec<&str> =
            line.split(|c: char| c.is_whitespace() || c == ',' || c == '-').filter(|s| !s.is_empty()).collect();
        let parse = |s: &str| s.parse::<usize>().map_err(|_| format!("line {}: bad vertex {s:?}", i + 1));
        match nums.as_slice() {
            [] => {}
            ["n", k] => n = n.max(parse(k)?),
            [u, v] => {
                let (u, v) = (parse(u)?, parse(v)?);
                n = n.max(u.max(v) + 1);
                edges.push((u, v));
            }
            _ => return Err(format!("line {}: expected two vertices", i + 1)),
        }
    }
    Graph::new(n, edges).map_err(|e| e.to_string())
}

pub fn polynomial_json(graph: &str, bivariate: bool) -> Result<String, String> {
    let g = graph_from(graph)?;
    let p = if bivariate { z_bivariate(&g) } else { z_trivariate(&g) }.map_err(|e| e.to_string())?;
    let poly: serde_json::Value = serde_json::from_str(&p.to_json()).map_err(|e| e.to_string())?;
    Ok(json!({ "n": g.n(), "m": g.m(), "text": p.to_string(), "poly": poly }).to_string())
}

pub fn cwdp_json(kexpr: &str) -> Result<String, String> {
    let e = parse_kexpr(kexpr).map_err(|e| e.to_string())?;
    let tbl = dp_z_labeled(&e).map_err(|e| e.to_string())?;
    let g = eval_kexpr(&e).map_err(|e| e.to_string())?;
    let p = project_trivariate(&tbl);
    let graph: serde_json::Value = serde_json::from_str(&g.to_json()).map_err(|e| e.to_string())?;
    Ok(json!({
        "width": e.width(),
        "table_rows": tbl.len(),
        "graph": graph,
        "text": p.to_string(),
    })
    .to_string())
}

pub fn maxcut_json(graph: &str) -> Result<String, String> {
    let g = graph_from(graph)?;
    let (cut, count) = max_cut_count(&g).map_err(|e| e.to_string())?;
    Ok(json!({ "maxcut": cut, "count": count.to_string() }).to_string())
}

#[wasm_bindgen]
pub fn polynomial(graph: &str, bivariate: bool) -> Result<String, JsError> {
    polynomial_json(graph, bivariate).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn cwdp(kexpr: &str) -> Result<String, JsError> {
    cwdp_json(kexpr).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn maxcut(graph: &str) -> Result<String, JsError> {
    maxcut_json(graph).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_lists_and_json_agree() {
        let a = polynomial_json("0 1\n1-2\n", true).unwrap();
        let b = polynomial_json(r#"{"n":3,"edges":[[0,1],[1,2]]}"#, true).unwrap();
        assert_eq!(a, b);
        let isolated = parse_graph("n 4\n0 1").unwrap();
        assert_eq!((isolated.n(), isolated.m()), (4, 1));
    }

    #[test]
    fn maxcut_of_triangle() {
        let v: serde_json::Value = serde_json::from_str(&maxcut_json("0 1\n1 2\n0 2").unwrap()).unwrap();
        assert_eq!(v, json!({"maxcut": 2, "count": "6"}));
    }

    #[test]
    fn cwdp_reports_the_built_graph() {
        let v: serde_json::Value = serde_json::from_str(&cwdp_json("e(1,2,u(v(1),v(2)))").unwrap()).unwrap();
        assert_eq!(v["width"], 2);
        assert_eq!(v["graph"]["edges"], json!([[0, 1]]));
    }

    #[test]
    fn bad_input_is_reported() {
        assert!(polynomial_json("0 0", false).is_err());
        assert!(polynomial_json("0 1 2", false).is_err());
        assert!(cwdp_json("u(v(1)").unwrap_err().contains("byte 6"));
        let big: String = (0..DEMO_CAP).map(|i| format!("{i} {}\n", i + 1)).collect();
        assert!(maxcut_json(&big).is_err());
    }
}
