use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::KExpr;
use crate::algebra::{Poly, Rat};
use crate::error::{Error, Result};
use crate::ising::{labeled_vars, pair_index, XYZ};

/// Above this many entry pairs a union convolution is split across threads.
const PAR_UNION_PAIRS: usize = 1 << 14;

/// Coefficients `t_{a,b,c}` of the color-refined polynomial of a labeled
/// graph. A key is laid out as `a_1..a_k`, then `b` over the color pairs
/// `i ≤ j`, then `c` over the same pairs, matching [`labeled_vars`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    k: usize,
    entries: BTreeMap<Vec<u32>, BigUint>,
    /// Vertices of each color.
    pop: Vec<u32>,
    /// Edges between each color pair.
    pair_edges: Vec<u32>,
}

fn pairs(k: usize) -> usize {
    k * (k + 1) / 2
}

fn choose2(n: u32) -> u32 {
    n * n.saturating_sub(1) / 2
}

impl CoeffTable {
    fn singleton(k: usize, color: usize) -> Self {
        let len = k + 2 * pairs(k);
        let mut entries = BTreeMap::new();
        entries.insert(vec![0; len], BigUint::one());
        let mut with = vec![0; len];
        with[color - 1] = 1;
        entries.insert(with, BigUint::one());
        let mut pop = vec![0; k];
        pop[color - 1] = 1;
        CoeffTable { k, entries, pop, pair_edges: vec![0; pairs(k)] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[u32], &BigUint)> {
        self.entries.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, key: &[u32]) -> BigUint {
        self.entries.get(key).cloned().unwrap_or_default()
    }

    /// Vertex count of color `i` (1-based).
    pub fn population(&self, i: usize) -> u32 {
        self.pop[i - 1]
    }

    pub fn vertex_count(&self) -> u32 {
        self.pop.iter().sum()
    }

    pub fn edge_count(&self) -> u32 {
        self.pair_edges.iter().sum()
    }

    /// Check that every stored key is realizable by some subset: no zero
    /// coefficients, `a_i ≤ d_i`, `b_ij + c_ij ≤ e_ij`, and the coefficients
    /// sum to `2^n`.
    pub fn validate(&self) -> Result<()> {
        let (k, np) = (self.k, pairs(self.k));
        let mut total = BigUint::zero();
        for (key, c) in &self.entries {
            if key.len() != k + 2 * np {
                return Err(Error::Internal(format!("key of length {} for k = {k}", key.len())));
            }
            if c.is_zero() {
                return Err(Error::Internal(format!("zero entry at {key:?}")));
            }
            if (0..k).any(|i| key[i] > self.pop[i]) {
                return Err(Error::Internal(format!("color count above population at {key:?}")));
            }
            if (0..np).any(|p| key[k + p] + key[k + np + p] > self.pair_edges[p]) {
                return Err(Error::Internal(format!("edge counts above pair total at {key:?}")));
            }
            total += c;
        }
        if total != BigUint::one() << self.vertex_count() {
            return Err(Error::Internal(format!("coefficients sum to {total}")));
        }
        Ok(())
    }

    fn union(&self, other: &CoeffTable) -> CoeffTable {
        let combine = |ka: &Vec<u32>, ca: &BigUint, acc: &mut BTreeMap<Vec<u32>, BigUint>| {
            for (kb, cb) in &other.entries {
                let key: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                *acc.entry(key).or_default() += ca * cb;
            }
        };
        let entries = if self.entries.len() * other.entries.len() >= PAR_UNION_PAIRS {
            let left: Vec<_> = self.entries.iter().collect();
            left.par_iter()
                .fold(BTreeMap::new, |mut acc, (ka, ca)| {
                    combine(ka, ca, &mut acc);
                    acc
                })
                .reduce(BTreeMap::new, |mut a, b| {
                    for (key, c) in b {
                        *a.entry(key).or_default() += c;
                    }
                    a
                })
        } else {
            let mut acc = BTreeMap::new();
            for (ka, ca) in &self.entries {
                combine(ka, ca, &mut acc);
            }
            acc
        };
        CoeffTable {
            k: self.k,
            entries,
            pop: self.pop.iter().zip(&other.pop).map(|(x, y)| x + y).collect(),
            pair_edges: self.pair_edges.iter().zip(&other.pair_edges).map(|(x, y)| x + y).collect(),
        }
    }

    fn add_edges(mut self, p: usize, r: usize) -> CoeffTable {
        let (k, np) = (self.k, pairs(self.k));
        let pr = pair_index(k, p, r);
        let (dp, dr) = (self.pop[p - 1], self.pop[r - 1]);
        let mut entries = BTreeMap::new();
        for (mut key, c) in std::mem::take(&mut self.entries) {
            let (ap, ar) = (key[p - 1], key[r - 1]);
            let (inside, outside) =
                if p == r { (choose2(ap), choose2(dp - ap)) } else { (ap * ar, (dp - ap) * (dr - ar)) };
            key[k + pr] = inside;
            key[k + np + pr] = outside;
            *entries.entry(key).or_insert_with(BigUint::zero) += c;
        }
        self.pair_edges[pr] = if p == r { choose2(dp) } else { dp * dr };
        self.entries = entries;
        self
    }

    fn relabel(mut self, p: usize, r: usize) -> CoeffTable {
        if p == r {
            return self;
        }
        let (k, np) = (self.k, pairs(self.k));
        // New index of every pair after p merges into r.
        let target = |i: usize, j: usize| {
            let i = if i == p { r } else { i };
            let j = if j == p { r } else { j };
            pair_index(k, i, j)
        };
        let moves: Vec<(usize, usize)> = (1..=k)
            .flat_map(|i| (i..=k).map(move |j| (i, j)))
            .filter(|&(i, j)| i == p || j == p)
            .map(|(i, j)| (pair_index(k, i, j), target(i, j)))
            .collect();
        let merge = |v: &mut [u32]| {
            for &(from, to) in &moves {
                let x = std::mem::take(&mut v[from]);
                v[to] += x;
            }
        };
        let mut entries = BTreeMap::new();
        for (mut key, c) in std::mem::take(&mut self.entries) {
            key[r - 1] += std::mem::take(&mut key[p - 1]);
            merge(&mut key[k..k + np]);
            merge(&mut key[k + np..]);
            *entries.entry(key).or_insert_with(BigUint::zero) += c;
        }
        self.pop[r - 1] += std::mem::take(&mut self.pop[p - 1]);
        merge(&mut self.pair_edges);
        self.entries = entries;
        self
    }

    /// The table as a polynomial over [`labeled_vars`]`(k)`.
    pub fn to_labeled_poly(&self) -> Poly {
        let vars = labeled_vars(self.k);
        let mut p = Poly::zero(&vars);
        for (key, c) in &self.entries {
            p.add_term(key.clone(), big_to_rat(c));
        }
        p
    }
}

fn big_to_rat(c: &BigUint) -> Rat {
    Rat::from_integer(BigInt::from(c.clone()))
}

/// Run the table recurrence over the expression tree.
pub fn dp_z_labeled(e: &KExpr) -> Result<CoeffTable> {
    dp_z_labeled_k(e, e.width())
}

/// As [`dp_z_labeled`] with `k` colors, which must cover every color used.
pub fn dp_z_labeled_k(e: &KExpr, k: usize) -> Result<CoeffTable> {
    if e.width() > k {
        return Err(Error::Usage(format!("expression uses color {} but k = {k}", e.width())));
    }
    fn go(e: &KExpr, k: usize) -> Result<CoeffTable> {
        Ok(match e {
            KExpr::Singleton(i) if *i == 0 => return Err(Error::Usage("colors are 1-based".into())),
            KExpr::Singleton(i) => CoeffTable::singleton(k, *i),
            KExpr::Union(a, b) => go(a, k)?.union(&go(b, k)?),
            KExpr::AddEdges(p, r, c) | KExpr::Relabel(p, r, c) if *p == 0 || *r == 0 => {
                let _ = c;
                return Err(Error::Usage("colors are 1-based".into()));
            }
            KExpr::AddEdges(p, r, c) => go(c, k)?.add_edges(*p, *r),
            KExpr::Relabel(p, r, c) => go(c, k)?.relabel(*p, *r),
        })
    }
    let tbl = go(e, k)?;
    if tbl.vertex_count() as u64 > u32::MAX as u64 / 2 {
        return Err(Error::Capacity {
            what: "vertices",
            got: tbl.vertex_count() as usize,
            limit: u32::MAX as usize / 2,
        });
    }
    Ok(tbl)
}

/// Substitute `x_ij → x`, `y_i → y`, `z_ij → z`.
pub fn project_trivariate(tbl: &CoeffTable) -> Poly {
    let (k, np) = (tbl.k, pairs(tbl.k));
    let mut p = Poly::zero(&XYZ);
    for (key, c) in &tbl.entries {
        let a: u32 = key[..k].iter().sum();
        let b: u32 = key[k..k + np].iter().sum();
        let cc: u32 = key[k + np..].iter().sum();
        p.add_term(vec![b, a, cc], big_to_rat(c));
    }
    p
}
