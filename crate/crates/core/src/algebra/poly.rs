use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{parse_rat, rat_to_string, Rat, Ring};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with rational coefficients over a fixed
/// ordered list of named variables.
///
/// Terms are keyed by exponent vectors of length `vars.len()`; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        Self { vars: vars.iter().map(|s| s.as_ref().to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        let k = vec![0; p.vars.len()];
        p.insert(k, c);
        p
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, Rat::one())
    }

    /// The monomial consisting of variable `i`.
    pub fn var<S: AsRef<str>>(vars: &[S], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rat::one())
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: Vec<u32>, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        assert_eq!(exps.len(), p.vars.len(), "exponent vector length");
        p.insert(exps, c);
        p
    }

    /// Univariate polynomial from coefficients in increasing degree.
    pub fn from_coeffs(var: &str, coeffs: impl IntoIterator<Item = Rat>) -> Self {
        let mut p = Self::zero(&[var]);
        for (k, c) in coeffs.into_iter().enumerate() {
            p.insert(vec![k as u32], c);
        }
        p
    }

    pub fn from_terms<S: AsRef<str>>(vars: &[S], terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::Arity { expected: p.vars.len(), got: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn insert(&mut self, e: Vec<u32>, c: Rat) {
        if !c.is_zero() {
            self.terms.insert(e, c);
        }
    }

    /// Adds `c·x^e` in place.
    pub fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(e.len(), self.vars.len());
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of a univariate polynomial at degree `k`.
    pub fn coeff1(&self, k: u32) -> Rat {
        self.coeff(&[k])
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `true` when every coefficient is a nonnegative integer.
    pub fn has_nonnegative_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && *c >= Rat::zero())
    }

    /// Sum of all coefficients, i.e. the value at the all-ones point.
    pub fn coeff_sum(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |a, c| a + c)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut p = Self::zero(&self.vars);
        if !c.is_zero() {
            for (e, v) in &self.terms {
                p.terms.insert(e.clone(), v * c);
            }
        }
        p
    }

    pub fn pow(&self, exp: u32) -> Self {
        self.pow_u(exp as u64)
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.arity() {
            return Err(Error::Arity { expected: self.arity(), got: point.len() });
        }
        let mut powers: Vec<Vec<Rat>> = Vec::with_capacity(point.len());
        for (i, x) in point.iter().enumerate() {
            let d = self.degree_in(i).unwrap_or(0) as usize;
            let mut row = Vec::with_capacity(d + 1);
            row.push(Rat::one());
            for k in 1..=d {
                let next = &row[k - 1] * x;
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term *= &powers[i][k as usize];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Replaces variable `var` by `value`, which must be a polynomial over
    /// the same variable list.
    pub fn substitute(&self, var: usize, value: &Poly) -> Result<Poly> {
        if var >= self.arity() {
            return Err(Error::Arity { expected: self.arity(), got: var + 1 });
        }
        if value.vars != self.vars {
            return Err(Error::Arity { expected: self.arity(), got: value.arity() });
        }
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut powers = vec![Poly::one(&self.vars)];
        for k in 1..=d {
            let next = &powers[k - 1] * value;
            powers.push(next);
        }
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[var] = 0;
            let mono = Poly::monomial(&self.vars, rest, c.clone());
            out = &out + &(&mono * &powers[e[var] as usize]);
        }
        Ok(out)
    }

    /// Moves to a new variable list: old variable `i` becomes new variable
    /// `map[i]` (several old variables may land on the same new one, or on
    /// `None`, meaning they are set to 1).
    pub fn map_vars<S: AsRef<str>>(&self, new_vars: &[S], map: &[Option<usize>]) -> Result<Poly> {
        if map.len() != self.arity() {
            return Err(Error::Arity { expected: self.arity(), got: map.len() });
        }
        if let Some(&bad) = map.iter().flatten().find(|&&j| j >= new_vars.len()) {
            return Err(Error::Arity { expected: new_vars.len(), got: bad + 1 });
        }
        let mut out = Poly::zero(new_vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; new_vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] += k;
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Renames variables without changing the exponent layout.
    pub fn with_vars<S: AsRef<str>>(&self, new_vars: &[S]) -> Result<Poly> {
        if new_vars.len() != self.arity() {
            return Err(Error::Arity { expected: self.arity(), got: new_vars.len() });
        }
        Ok(Poly { vars: new_vars.iter().map(|s| s.as_ref().to_string()).collect(), terms: self.terms.clone() })
    }

    /// Coefficients with respect to variable `var`, as polynomials over the
    /// same variable list (with `var` absent), indexed by degree.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let d = self.degree_in(var).map_or(0, |d| d as usize + 1);
        let mut out = vec![Poly::zero(&self.vars); d];
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[var] = 0;
            out[e[var] as usize].terms.insert(rest, c.clone());
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = PolyJson {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), rat_to_string(c))).collect(),
        };
        serde_json::to_string(&doc).expect("poly json")
    }

    pub fn from_json(text: &str) -> Result<Poly> {
        let doc: PolyJson =
            serde_json::from_str(text).map_err(|e| Error::Usage(format!("malformed polynomial JSON: {e}")))?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for (e, c) in doc.terms {
            terms.push((e, parse_rat(&c)?));
        }
        Poly::from_terms(&doc.vars, terms)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<(Vec<u32>, String)>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{}", rat_to_string(c))?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "({})*{}", rat_to_string(c), mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "adding polynomials over different variables");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "subtracting polynomials over different variables");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "multiplying polynomials over different variables");
        let mut out = Poly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Ring for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(&self.vars)
    }
    fn one_like(&self) -> Self {
        Poly::one(&self.vars)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn int_like(&self, k: i64) -> Self {
        Poly::constant(&self.vars, super::rat(k))
    }
}
