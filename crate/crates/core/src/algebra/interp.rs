use std::collections::BTreeSet;

use num_traits::Zero;

use super::{rat_to_string, Poly, Rat};
use crate::error::{Error, Result};

/// Divided-difference coefficients of the Newton form through `points`.
pub fn newton_coefficients(points: &[(Rat, Rat)]) -> Result<Vec<Rat>> {
    let mut seen = BTreeSet::new();
    for (x, _) in points {
        if !seen.insert(x) {
            return Err(Error::Interpolation(format!("duplicate node {}", rat_to_string(x))));
        }
    }
    let mut coef: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
    for j in 1..points.len() {
        for i in (j..points.len()).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &points[i].0 - &points[i - j].0;
            coef[i] = num / den;
        }
    }
    Ok(coef)
}

/// The unique polynomial in `var` of degree at most `degree_bound` through
/// the given points.
///
/// At least `degree_bound + 1` points are required and all abscissae must be
/// distinct. Any points beyond the first `degree_bound + 1` are used as a
/// consistency check.
pub fn lagrange_interpolate(points: &[(Rat, Rat)], degree_bound: usize, var: &str) -> Result<Poly> {
    if points.len() < degree_bound + 1 {
        return Err(Error::Interpolation(format!(
            "{} points cannot determine a polynomial of degree {degree_bound}",
            points.len()
        )));
    }
    newton_coefficients(points)?;
    let (used, extra) = points.split_at(degree_bound + 1);
    let coef = newton_coefficients(used)?;

    // expand the Newton form by Horner's rule on coefficient vectors
    let mut acc: Vec<Rat> = vec![coef[degree_bound].clone()];
    for k in (0..degree_bound).rev() {
        let xk = &used[k].0;
        let mut next = vec![Rat::zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * xk;
        }
        next[0] += &coef[k];
        acc = next;
    }
    let p = Poly::from_coeffs(var, acc);
    for (x, y) in extra {
        let v = p.eval(std::slice::from_ref(x))?;
        if v != *y {
            return Err(Error::Interpolation(format!(
                "point ({}, {}) is inconsistent with degree {degree_bound}",
                rat_to_string(x),
                rat_to_string(y)
            )));
        }
    }
    Ok(p)
}
