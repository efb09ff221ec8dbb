//! Direct combinatorial counters, written independently of the polynomial
//! code so they can cross-check it.

use crate::error::{Error, Result};
use crate::graph::Graph;

const CAP: usize = 24;

fn check(g: &Graph) -> Result<()> {
    if g.n() > CAP {
        return Err(Error::OracleRefused { n: g.n(), cap: CAP });
    }
    Ok(())
}

/// Number of perfect matchings, by always matching the lowest free vertex.
pub fn count_perfect_matchings(g: &Graph) -> Result<u64> {
    check(g)?;
    fn go(g: &Graph, free: &mut Vec<bool>) -> u64 {
        let Some(v) = free.iter().position(|&f| f) else {
            return 1;
        };
        free[v] = false;
        let mut total = 0;
        for &w in g.neighbors(v) {
            if free[w] {
                free[w] = false;
                total += go(g, free);
                free[w] = true;
            }
        }
        free[v] = true;
        total
    }
    Ok(go(g, &mut vec![true; g.n()]))
}

/// `(max cut size, number of subsets S achieving it)`, counting `S` and its
/// complement separately.
pub fn count_max_cuts(g: &Graph) -> Result<(usize, u64)> {
    check(g)?;
    let mut best = (0usize, 0u64);
    for s in 0u64..(1u64 << g.n()) {
        let cut = g.edges().iter().filter(|&&(u, v)| (s >> u & 1) != (s >> v & 1)).count();
        if cut > best.0 {
            best = (cut, 1);
        } else if cut == best.0 {
            best.1 += 1;
        }
    }
    Ok(best)
}

/// Coefficients of `Σ_{I independent} x^{|I|}`.
pub fn independent_set_polynomial(g: &Graph) -> Result<Vec<u64>> {
    check(g)?;
    let mut out = vec![0u64; g.n() + 1];
    for s in 0u64..(1u64 << g.n()) {
        if g.edges().iter().all(|&(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0) {
            out[s.count_ones() as usize] += 1;
        }
    }
    Ok(out)
}

/// Number of vertex covers (subsets touching every edge).
pub fn vertex_cover_count(g: &Graph) -> Result<u64> {
    check(g)?;
    let mut count = 0;
    for s in 0u64..(1u64 << g.n()) {
        if g.edges().iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1) {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};

    #[test]
    fn matchings() {
        assert_eq!(count_perfect_matchings(&complete(4)).unwrap(), 3);
        assert_eq!(count_perfect_matchings(&cycle(6).unwrap()).unwrap(), 2);
        assert_eq!(count_perfect_matchings(&path(3)).unwrap(), 0);
        assert_eq!(count_perfect_matchings(&Graph::empty(0)).unwrap(), 1);
    }

    #[test]
    fn max_cuts() {
        assert_eq!(count_max_cuts(&complete(2)).unwrap(), (1, 2));
        assert_eq!(count_max_cuts(&complete(3)).unwrap(), (2, 6));
        assert_eq!(count_max_cuts(&Graph::empty(3)).unwrap(), (0, 8));
    }

    #[test]
    fn independent_sets_and_covers() {
        assert_eq!(independent_set_polynomial(&path(3)).unwrap(), vec![1, 3, 1, 0]);
        // covers are complements of independent sets
        let g = cycle(5).unwrap();
        let total: u64 = independent_set_polynomial(&g).unwrap().iter().sum();
        assert_eq!(vertex_cover_count(&g).unwrap(), total);
    }

    #[test]
    fn refuses_large_graphs() {
        assert!(matches!(count_max_cuts(&Graph::empty(25)), Err(Error::OracleRefused { .. })));
    }
}
