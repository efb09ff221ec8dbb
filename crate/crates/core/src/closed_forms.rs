//! Closed-form evaluations of the gadget partition functions.
//!
//! Formulas that involve no division are generic over [`Ring`] so the same
//! code expands symbolically (over [`Poly`]) or evaluates at a rational
//! point. The `L_h` eigen-decomposition lives in `Q(√D)`, `D = t⁴ − 2t² + 5`.

use num_traits::{One, Signed, Zero};

use crate::algebra::{rat, rat_div, Poly, QuadExt, Rat, Ring};
use crate::error::{Error, Result};

/// Eigen-data of the 2×2 transfer matrix `[[t³, t²], [1, t]]` of `L_h`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    pub t: Rat,
    pub d: Rat,
    pub lambda1: QuadExt,
    pub lambda2: QuadExt,
    pub c1: QuadExt,
    pub c2: QuadExt,
    pub d1: QuadExt,
    pub d2: QuadExt,
}

impl SpectralData {
    /// Errors at `t = 0`, where the two eigenvalues coincide.
    pub fn new(t: &Rat) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::Degenerate("t = 0 makes both eigenvalues vanish".into()));
        }
        let t2 = t * t;
        let d = &t2 * &t2 - rat(2) * &t2 + rat(5);
        let sq = QuadExt::sqrt_d(&d);
        let q = |a: Rat| QuadExt::from_rat(a, &d);
        let half_t = t / rat(2);
        let base = q(rat(1) + &t2);
        let lambda1 = (&base + &sq).scale(&half_t);
        let lambda2 = (&base - &sq).scale(&half_t);
        let two_sq = sq.scale(&rat(2));
        // c2 = t(−t³ − 2 + t + t√D) / (2√D)
        let c2_num = &q(-(&t2 * t) - rat(2) + t) + &sq.scale(t);
        let c2 = c2_num.scale(t).checked_div(&two_sq)?;
        let c1 = &q(t2.clone()) - &c2;
        // d2 = (−1 − 2t + t² + √D) / (2√D)
        let d2_num = &q(rat(-1) - rat(2) * t + &t2) + &sq;
        let d2 = d2_num.checked_div(&two_sq)?;
        let d1 = &q(rat(1)) - &d2;
        if lambda1 == lambda2 {
            return Err(Error::Internal("eigenvalues coincide".into()));
        }
        Ok(Self { t: t.clone(), d, lambda1, lambda2, c1, c2, d1, d2 })
    }
}

/// `b_{{tr1,hd},{tr2}}(h) = (t² + t)^h · t`.
pub fn b_single<R: Ring>(t: &R, h: u32) -> R {
    t.times(t).plus(t).pow_u(h as u64).times(t)
}

/// The mutual recurrence for `(b_all(h), b_pair(h))`, where `b_all` forces
/// `tr1, tr2, hd` into `S` and `b_pair` forces `tr1, tr2` in and `hd` out
/// (both at `y = 1`).
pub fn b_recurrence<R: Ring>(t: &R, h: u32) -> (R, R) {
    let t2 = t.times(t);
    let t3 = t2.times(t);
    let (mut all, mut pair) = (t2.clone(), t.one_like());
    for _ in 0..h {
        let next_all = all.times(&t3).plus(&pair.times(&t2));
        let next_pair = all.plus(&pair.times(t));
        all = next_all;
        pair = next_pair;
    }
    (all, pair)
}

fn symmetric_sum(u1: &QuadExt, l1: &QuadExt, u2: &QuadExt, l2: &QuadExt, h: u32) -> QuadExt {
    &(u1 * &l1.pow(h as u64)) + &(u2 * &l2.pow(h as u64))
}

/// `b_all(h) = c₁λ₁^h + c₂λ₂^h`, checked to be rational.
pub fn b_all(sd: &SpectralData, h: u32) -> Result<Rat> {
    symmetric_sum(&sd.c1, &sd.lambda1, &sd.c2, &sd.lambda2, h).rational_part_only()
}

/// `b_pair(h) = d₁λ₁^h + d₂λ₂^h`, checked to be rational.
pub fn b_pair(sd: &SpectralData, h: u32) -> Result<Rat> {
    symmetric_sum(&sd.d1, &sd.lambda1, &sd.d2, &sd.lambda2, h).rational_part_only()
}

/// `(Z(L_h; {tr1}, {tr2}; t, 1), Z(L_h; {tr1, tr2}, ∅; t, 1))`.
pub fn z_lh_split(sd: &SpectralData, h: u32) -> Result<(Rat, Rat)> {
    let single = rat(2) * b_single(&sd.t, h);
    let c = [&sd.c1 + &sd.d1, &sd.c2 + &sd.d2];
    let both = symmetric_sum(&c[0], &sd.lambda1, &c[1], &sd.lambda2, h).rational_part_only()?;
    Ok((single, both))
}

/// `(Z(Φ_H; {tr1}, {tr2}; t, 1), Z(Φ_H; {tr1, tr2}, ∅; t, 1))`.
pub fn phi_split(sd: &SpectralData, hs: &[u32]) -> Result<(Rat, Rat)> {
    let two_t = rat(2) * &sd.t;
    let t2t = &sd.t * &sd.t + &sd.t;
    let mut opposite = Rat::one();
    let mut same = Rat::one();
    for &h in hs {
        opposite *= &two_t * t2t.pow_u(h as u64);
        same *= z_lh_split(sd, h)?.1;
    }
    Ok((opposite, same))
}

/// The same pair as [`phi_split`], from the recurrence, over any ring.
pub fn phi_split_recurrence<R: Ring>(t: &R, hs: &[u32]) -> (R, R) {
    let two = t.int_like(2);
    let mut opposite = t.one_like();
    let mut same = t.one_like();
    for &h in hs {
        opposite = opposite.times(&two.times(&b_single(t, h)));
        let (all, pair) = b_recurrence(t, h);
        same = same.times(&all.plus(&pair));
    }
    (opposite, same)
}

/// Constants of the edge and vertex substitutions at a point `(γ, δ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionConstants {
    pub gamma: Rat,
    pub delta: Rat,
    pub e1: QuadExt,
    pub e2: QuadExt,
    pub r1: QuadExt,
    pub r2: QuadExt,
    pub u1: Rat,
    pub u2: Rat,
    pub w: Rat,
}

impl ReductionConstants {
    pub fn new(gamma: &Rat, delta: &Rat) -> Result<Self> {
        let sd = SpectralData::new(gamma)?;
        let t2t = gamma * gamma + gamma;
        if t2t.is_zero() {
            return Err(Error::Degenerate("t² + t = 0".into()));
        }
        let two_t = QuadExt::from_rat(rat(2) * gamma, &sd.d);
        let e1 = (&sd.c1 + &sd.d1).checked_div(&two_t)?;
        let e2 = (&sd.c2 + &sd.d2).checked_div(&two_t)?;
        let inv = t2t.recip();
        let r1 = sd.lambda1.scale(&inv);
        let r2 = sd.lambda2.scale(&inv);
        let g2m1 = gamma * gamma - rat(1);
        let u1 = rat_div(&rat(1), &g2m1, "γ² − 1")?;
        let u2 = rat_div(gamma, &(delta * &g2m1), "δ(γ² − 1)")?;
        let w = rat_div(&(delta + gamma), &(delta * gamma + rat(1)), "δγ + 1")?;
        Ok(Self { gamma: gamma.clone(), delta: delta.clone(), e1, e2, r1, r2, u1, u2, w })
    }
}

/// Edge substitution value `Π_{h∈H} (e₁r₁^h + e₂r₂^h)`.
pub fn f_t_h(rc: &ReductionConstants, hs: &[u32]) -> Result<Rat> {
    let mut acc = Rat::one();
    for &h in hs {
        acc *= symmetric_sum(&rc.e1, &rc.r1, &rc.e2, &rc.r2, h).rational_part_only()?;
    }
    Ok(acc)
}

/// `f_t_h` without the eigen-decomposition: the ratio of the two
/// `Φ_H` sums, from the recurrence.
pub fn f_t_h_direct(t: &Rat, hs: &[u32]) -> Result<Rat> {
    let (opp, same) = phi_split_recurrence(t, hs);
    rat_div(&same, &opp, "opposite-side sum of Φ_H")
}

/// Edge prefactor `((2t)^{|H|} Π (t² + t)^h)^m`.
pub fn f_p_h<R: Ring>(t: &R, hs: &[u32], m: usize) -> R {
    let (opp, _) = phi_split_recurrence(t, hs);
    opp.pow_u(m as u64)
}

/// `(Z(S_n; {cent}, ∅), Z(S_n; ∅, {cent}))` = `(y(yt+1)^n, (y+t)^n)`.
pub fn star_split<R: Ring>(t: &R, y: &R, n: u32) -> (R, R) {
    let one = t.one_like();
    let yt1 = y.times(t).plus(&one);
    (y.times(&yt1.pow_u(n as u64)), y.plus(t).pow_u(n as u64))
}

/// `(Z(S_H; {cent}, ∅), Z(S_H; ∅, {cent}))`.
pub fn s_h_split<R: Ring>(t: &R, y: &R, hs: &[u32]) -> (R, R) {
    let mut inside = y.clone();
    let mut outside = t.one_like();
    for &h in hs {
        let (ci, co) = star_split(t, y, h);
        // the star center's edge to cent(H) is monochromatic in the first
        // case of each side
        inside = inside.times(&t.times(&ci).plus(&co));
        outside = outside.times(&ci.plus(&t.times(&co)));
    }
    (inside, outside)
}

/// `g_p = (Z(S_H; ∅, {cent}))^{n_G}`.
pub fn g_p_h<R: Ring>(t: &R, y: &R, hs: &[u32], n_g: usize) -> R {
    s_h_split(t, y, hs).1.pow_u(n_g as u64)
}

/// Vertex substitution `g_y = Z(S_H; {cent}, ∅) / Z(S_H; ∅, {cent})`.
pub fn g_y_h(t: &Rat, y: &Rat, hs: &[u32]) -> Result<Rat> {
    let (i, o) = s_h_split(t, y, hs);
    rat_div(&i, &o, "outside sum of S_H")
}

/// `h_y = Π_{h∈H} (1 + 1/(u₁ + u₂w^h))`.
pub fn h_y_h(u1: &Rat, u2: &Rat, w: &Rat, hs: &[u32]) -> Result<Rat> {
    let mut acc = Rat::one();
    for &h in hs {
        let den = u1 + u2 * w.pow_u(h as u64);
        acc *= Rat::one() + rat_div(&Rat::one(), &den, "u₁ + u₂w^h")?;
    }
    Ok(acc)
}

/// `Σ_S t^{e(S)} inside^{|S|} outside^{n−|S|}` from the bivariate
/// polynomial of `G`: the rooted-product sum with denominators cleared.
pub fn rooted_product_poly(zg: &Poly, inside: &Poly, outside: &Poly, n: usize) -> Poly {
    let vars = inside.vars().to_vec();
    let t = Poly::var(&vars, 0);
    let mut acc = Poly::zero(&vars);
    for (e, c) in zg.terms() {
        let term = t.pow(e[0]).times(&inside.pow(e[1])).times(&outside.pow(n as u32 - e[1])).scale(c);
        acc = &acc + &term;
    }
    acc
}

/// `ω₁` of one thickened edge with `k` of its endpoints in `S`.
pub fn omega1<R: Ring>(x: &R, y: &R, z: &R, l: u32, k: u8) -> Result<R> {
    let one = x.one_like();
    let base = match k {
        0 => y.plus(&z.times(z)),
        1 => x.times(y).plus(z),
        2 => y.times(&x.times(x)).plus(&one),
        _ => return Err(Error::Usage(format!("an edge has 2 endpoints, got {k}"))),
    };
    Ok(base.pow_u(4 * l as u64))
}

/// `g = y(yx² + 1)^{4ℓ} + (yx + z)^{4ℓ}`.
pub fn g_lq<R: Ring>(x: &R, y: &R, z: &R, l: u32) -> R {
    let one = x.one_like();
    let a = y.times(&x.times(x)).plus(&one).pow_u(4 * l as u64);
    let b = y.times(x).plus(z).pow_u(4 * l as u64);
    y.times(&a).plus(&b)
}

/// `h = (y + z²)^{4ℓ} + y(yx + z)^{4ℓ}`.
pub fn h_lq<R: Ring>(x: &R, y: &R, z: &R, l: u32) -> R {
    let a = y.plus(&z.times(z)).pow_u(4 * l as u64);
    let b = y.times(x).plus(z).pow_u(4 * l as u64);
    a.plus(&y.times(&b))
}

/// `ω₂` of a thickened star with `2q` leaves: `g^{2q}` if the center is in
/// `S`, else `h^{2q}`.
pub fn omega2<R: Ring>(x: &R, y: &R, z: &R, l: u32, q: u32, in_s: bool) -> R {
    let base = if in_s { g_lq(x, y, z, l) } else { h_lq(x, y, z, l) };
    base.pow_u(2 * q as u64)
}

/// Prefactor and substitution values for `R^{ℓ,q}(G)` with `G` d-regular.
#[derive(Debug, Clone, PartialEq)]
pub struct RConstants {
    pub f_p: Rat,
    pub f_t: Rat,
    pub f_y: Rat,
}

pub fn f_r_constants(x: &Rat, y: &Rat, z: &Rat, l: u32, q: u32, d: usize, n_g: usize) -> Result<RConstants> {
    let a = y * x * x + rat(1);
    let b = y + z * z;
    let c = y * x + z;
    let h = h_lq(x, y, z, l);
    let g = g_lq(x, y, z, l);
    let f_p = h.pow_u(2 * q as u64 * n_g as u64) * b.pow_u(2 * l as u64 * d as u64 * n_g as u64);
    let f_t = rat_div(&(&c * &c), &(&a * &b), "(yx² + 1)(y + z²)")?.pow_u(2 * l as u64);
    let ratio = rat_div(&a, &b, "y + z²")?;
    let gh = rat_div(&g, &h, "h")?;
    let f_y = y * ratio.pow_u(2 * l as u64 * d as u64) * gh.pow_u(2 * q as u64);
    Ok(RConstants { f_p, f_t, f_y })
}

/// `Σ_S t^{cut(S)} y^{|S|}` at a point, from `Z(G; t, y)`.
///
/// Every term `t^e y^s` of `Z(G; t, y)` has `e = m − cut`.
pub fn cut_form_eval(zg: &Poly, m: usize, t: &Rat, y: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for (e, c) in zg.terms() {
        acc += c * t.pow_u(m as u64 - e[0] as u64) * y.pow_u(e[1] as u64);
    }
    acc
}

/// `Z(R^{ℓ,q}(G); x, y, z)` from the constants and `Z(G; t, y)` of the
/// d-regular base graph, via the cut-weighted sum over `S ⊆ V(G)`.
pub fn z_r_closed_form(zg: &Poly, m: usize, rc: &RConstants) -> Rat {
    &rc.f_p * cut_form_eval(zg, m, &rc.f_t, &rc.f_y)
}

/// The same quantity through the literal standard-form substitution
/// `f_p · Z(G; f_t, f_y)`. Agrees with [`z_r_closed_form`] only when `G` has
/// no edges.
pub fn z_r_standard_substitution(zg: &Poly, rc: &RConstants) -> Result<Rat> {
    Ok(&rc.f_p * zg.eval(&[rc.f_t.clone(), rc.f_y.clone()])?)
}

/// The factors of the vertex and edge substitutions at `(γ, δ, ε)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EConstants {
    pub e_y1: Rat,
    pub e_y2: Rat,
    pub e_t: Rat,
}

/// `E_y1 = (δγ² + 1)/(δ + ε²)`.
pub fn e_y1(gamma: &Rat, delta: &Rat, epsilon: &Rat) -> Result<Rat> {
    rat_div(&(delta * gamma * gamma + rat(1)), &(delta + epsilon * epsilon), "δ + ε²")
}

/// `E_t = ((γδ + ε)²/((δγ² + 1)(δ + ε²)))²`.
pub fn e_t(gamma: &Rat, delta: &Rat, epsilon: &Rat) -> Result<Rat> {
    let a = delta * gamma * gamma + rat(1);
    let b = delta + epsilon * epsilon;
    let c = gamma * delta + epsilon;
    Ok(rat_div(&(&c * &c), &(&a * &b), "(δγ² + 1)(δ + ε²)")?.pow_u(2))
}

pub fn e_constants(gamma: &Rat, delta: &Rat, epsilon: &Rat, l: u32) -> Result<EConstants> {
    let h = h_lq(gamma, delta, epsilon, l);
    let e_y2 = rat_div(&g_lq(gamma, delta, epsilon, l), &h, "h")?;
    Ok(EConstants { e_y1: e_y1(gamma, delta, epsilon)?, e_y2, e_t: e_t(gamma, delta, epsilon)? })
}

/// Start of the longest strictly monotone run of
/// `h(ℓ) = (e·b^ℓ + a^ℓ)/(c^ℓ + e·a^ℓ)` ending at `horizon`.
///
/// Requires `a, b, c > 0` and `b ≠ c`. Returns `None` when the value at
/// `horizon` or `horizon − 1` is undefined (zero denominator).
pub fn monotone_horizon(e: &Rat, a: &Rat, b: &Rat, c: &Rat, horizon: usize) -> Result<Option<usize>> {
    if !(a.is_positive() && b.is_positive() && c.is_positive()) {
        return Err(Error::Usage("a, b, c must be positive".into()));
    }
    if b == c {
        return Err(Error::Usage("b and c must differ".into()));
    }
    let value = |l: usize| -> Option<Rat> {
        let al = a.pow_u(l as u64);
        let den = c.pow_u(l as u64) + e * &al;
        (!den.is_zero()).then(|| (e * b.pow_u(l as u64) + al) / den)
    };
    let vals: Vec<Option<Rat>> = (0..=horizon).map(value).collect();
    if horizon == 0 || vals[horizon].is_none() || vals[horizon - 1].is_none() {
        return Ok(None);
    }
    let cmp = |i: usize| vals[i].as_ref().unwrap().cmp(vals[i + 1].as_ref().unwrap());
    let dir = cmp(horizon - 1);
    if dir == std::cmp::Ordering::Equal {
        return Ok(None);
    }
    let mut start = horizon - 1;
    while start > 0 && vals[start - 1].is_some() && cmp(start - 1) == dir {
        start -= 1;
    }
    Ok(Some(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac;
    use crate::gadgets::{build_l, build_phi, build_s_h, build_star};
    use crate::graph::VertexSet;
    use crate::ising::{z_constrained, YConvention};

    fn ts() -> Vec<Rat> {
        vec![rat(2), rat(-2), rat(3), frac(1, 2)]
    }

    fn at_y1(p: &Poly, t: &Rat) -> Rat {
        p.eval(&[t.clone(), rat(1)]).unwrap()
    }

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn spectral_invariants() {
        for t in ts() {
            let sd = SpectralData::new(&t).unwrap();
            assert_eq!((&sd.c1 + &sd.c2).rational_part_only().unwrap(), &t * &t);
            assert_eq!((&sd.d1 + &sd.d2).rational_part_only().unwrap(), rat(1));
            assert_ne!(sd.lambda1, sd.lambda2);
            // trace and determinant of the transfer matrix
            let t3 = &t * &t * &t;
            assert_eq!((&sd.lambda1 + &sd.lambda2).rational_part_only().unwrap(), &t3 + &t);
            assert_eq!((&sd.lambda1 * &sd.lambda2).rational_part_only().unwrap(), &t3 * &t - &t * &t);
        }
        assert!(matches!(SpectralData::new(&rat(0)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn initial_conditions() {
        for t in ts() {
            let sd = SpectralData::new(&t).unwrap();
            let t2 = &t * &t;
            assert_eq!(b_all(&sd, 0).unwrap(), t2);
            assert_eq!(b_all(&sd, 1).unwrap(), t2.pow_u(2) * &t + &t2);
            assert_eq!(b_pair(&sd, 0).unwrap(), rat(1));
            assert_eq!(b_pair(&sd, 1).unwrap(), &t2 + &t);
        }
    }

    #[test]
    fn b_single_examples() {
        assert_eq!(b_single(&rat(5), 0), rat(5));
        assert_eq!(b_single(&rat(2), 1), rat(12));
        let t = Poly::var(&["t"], 0);
        let expect = Poly::from_coeffs("t", [0, 0, 0, 1, 2, 1].map(rat));
        assert_eq!(b_single(&t, 2), expect);
    }

    #[test]
    fn three_way_agreement_on_l() {
        for h in 0..=4 {
            let l = build_l(h);
            let n = l.graph.n();
            let (tr1, tr2, hd) = (l.mark("tr1").unwrap(), l.mark("tr2").unwrap(), l.mark("hd").unwrap());
            let all = z_constrained(&l.graph, &set(n, &[tr1, tr2, hd]), &set(n, &[]), YConvention::FullSet).unwrap();
            let pair = z_constrained(&l.graph, &set(n, &[tr1, tr2]), &set(n, &[hd]), YConvention::FullSet).unwrap();
            let single = z_constrained(&l.graph, &set(n, &[tr1, hd]), &set(n, &[tr2]), YConvention::FullSet).unwrap();
            for t in ts() {
                let sd = SpectralData::new(&t).unwrap();
                let (ra, rp) = b_recurrence(&t, h);
                assert_eq!(b_all(&sd, h).unwrap(), ra);
                assert_eq!(b_pair(&sd, h).unwrap(), rp);
                assert_eq!(at_y1(&all, &t), ra);
                assert_eq!(at_y1(&pair, &t), rp);
                assert_eq!(at_y1(&single, &t), b_single(&t, h));
            }
        }
    }

    #[test]
    fn lh_split_examples() {
        let t = rat(2);
        let sd = SpectralData::new(&t).unwrap();
        assert_eq!(z_lh_split(&sd, 0).unwrap(), (rat(4), rat(5)));
        assert_eq!(z_lh_split(&sd, 1).unwrap().0, rat(24));
        let l = build_l(3);
        let n = l.graph.n();
        let both = z_constrained(&l.graph, &set(n, &[0, 1]), &set(n, &[]), YConvention::FullSet).unwrap();
        let single = z_constrained(&l.graph, &set(n, &[0]), &set(n, &[1]), YConvention::FullSet).unwrap();
        assert_eq!(z_lh_split(&sd, 3).unwrap(), (at_y1(&single, &t), at_y1(&both, &t)));
    }

    #[test]
    fn phi_split_examples() {
        let t = rat(2);
        let sd = SpectralData::new(&t).unwrap();
        assert_eq!(phi_split(&sd, &[1]).unwrap().0, rat(24));
        assert_eq!(phi_split(&sd, &[]).unwrap(), (rat(1), rat(1)));
        let phi = build_phi(&[1, 2]).unwrap();
        let n = phi.graph.n();
        let opp = z_constrained(&phi.graph, &set(n, &[0]), &set(n, &[1]), YConvention::FullSet).unwrap();
        let same = z_constrained(&phi.graph, &set(n, &[0, 1]), &set(n, &[]), YConvention::FullSet).unwrap();
        assert_eq!(phi_split(&sd, &[1, 2]).unwrap(), (at_y1(&opp, &t), at_y1(&same, &t)));
        assert_eq!(phi_split_recurrence(&t, &[1, 2]), (at_y1(&opp, &t), at_y1(&same, &t)));
    }

    #[test]
    fn edge_substitution_two_ways() {
        for t in [rat(2), rat(3), frac(1, 2), rat(-3)] {
            let rc = ReductionConstants::new(&t, &rat(3)).unwrap();
            for hs in [&[][..], &[1], &[2], &[1, 2], &[2, 4, 6]] {
                assert_eq!(f_t_h(&rc, hs).unwrap(), f_t_h_direct(&t, hs).unwrap());
            }
        }
        assert!(ReductionConstants::new(&rat(-1), &rat(2)).is_err());
        assert!(ReductionConstants::new(&rat(2), &frac(-1, 2)).is_err());
    }

    #[test]
    fn star_polynomials() {
        let vars = ["t", "y"];
        let t = Poly::var(&vars, 0);
        let y = Poly::var(&vars, 1);
        let (inside, outside) = star_split(&t, &y, 2);
        let s2 = build_star(2);
        let c = s2.mark("cent").unwrap();
        let n = s2.graph.n();
        assert_eq!(inside, z_constrained(&s2.graph, &set(n, &[c]), &set(n, &[]), YConvention::FullSet).unwrap());
        assert_eq!(outside, z_constrained(&s2.graph, &set(n, &[]), &set(n, &[c]), YConvention::FullSet).unwrap());
        let expect =
            Poly::from_terms(&vars, [(vec![2, 3], rat(1)), (vec![1, 2], rat(2)), (vec![0, 1], rat(1))]).unwrap();
        assert_eq!(inside, expect);

        let sh = build_s_h(&[1, 2]).unwrap();
        let n = sh.graph.n();
        let (i2, o2) = s_h_split(&t, &y, &[1, 2]);
        assert_eq!(i2, z_constrained(&sh.graph, &set(n, &[0]), &set(n, &[]), YConvention::FullSet).unwrap());
        assert_eq!(o2, z_constrained(&sh.graph, &set(n, &[]), &set(n, &[0]), YConvention::FullSet).unwrap());
    }

    #[test]
    fn vertex_substitution_values() {
        let (t, y) = (rat(2), rat(3));
        assert_eq!(g_y_h(&t, &y, &[]).unwrap(), y);
        assert_eq!(g_p_h(&t, &y, &[], 4), rat(1));
        // H = {2}: (yt(yt+1)² + (y+t)²) · y / (y(yt+1)² + t(y+t)²)
        let expect = (rat(6) * rat(49) + rat(25)) * rat(3) / (rat(3) * rat(49) + rat(2) * rat(25));
        assert_eq!(g_y_h(&t, &y, &[2]).unwrap(), expect);
    }

    #[test]
    fn g_y_is_a_rescaled_h_y() {
        for (g, d) in [(rat(2), rat(3)), (rat(3), rat(-2)), (frac(1, 2), rat(5)), (rat(-2), rat(3))] {
            let rc = ReductionConstants::new(&g, &d).unwrap();
            for hs in [&[1][..], &[2, 3], &[2, 4, 6]] {
                let lhs = g_y_h(&g, &d, hs).unwrap();
                let scale = &d / g.pow_u(hs.len() as u64);
                assert_eq!(lhs, scale * h_y_h(&rc.u1, &rc.u2, &rc.w, hs).unwrap());
            }
        }
    }

    #[test]
    fn omega_values() {
        let p = |k| omega1(&rat(2), &rat(3), &rat(5), 1, k).unwrap();
        assert_eq!(p(0), rat(28).pow_u(4));
        assert_eq!(p(2), rat(13).pow_u(4));
        assert_eq!(p(1), rat(11).pow_u(4));
        assert!(omega1(&rat(2), &rat(3), &rat(5), 1, 3).is_err());
        let x = Poly::var(&["x", "y", "z"], 0);
        let y = Poly::var(&["x", "y", "z"], 1);
        let z = Poly::var(&["x", "y", "z"], 2);
        let one = x.one_like();
        assert_eq!(omega1(&x, &y, &z, 1, 2).unwrap(), (&(&y * &(&x * &x)) + &one).pow(4));
        assert_eq!(omega2(&x, &y, &z, 1, 2, true), g_lq(&x, &y, &z, 1).pow(4));
    }

    #[test]
    fn r_constants_degenerate_and_trivial() {
        // y = 0 sends the edge substitution to 1
        let rc = f_r_constants(&rat(2), &rat(0), &rat(5), 1, 1, 3, 4).unwrap();
        assert_eq!(rc.f_t, rat(1));
        // y + z² = 0
        assert!(f_r_constants(&rat(2), &rat(-4), &rat(2), 1, 1, 3, 4).is_err());
    }

    #[test]
    fn e_constants_factor_r_constants() {
        for (g, d, e) in [(rat(2), rat(3), rat(5)), (frac(1, 2), rat(-2), rat(3)), (rat(3), rat(2), rat(-1))] {
            for l in 1..3 {
                for q in 1..3 {
                    for deg in 0..4usize {
                        let rc = f_r_constants(&g, &d, &e, l, q, deg, 4).unwrap();
                        let ec = e_constants(&g, &d, &e, l).unwrap();
                        assert_eq!(rc.f_t, ec.e_t.pow_u(l as u64));
                        assert_eq!(rc.f_y, &d * ec.e_y1.pow_u(2 * deg as u64 * l as u64) * ec.e_y2.pow_u(2 * q as u64));
                    }
                }
            }
        }
        // on the excluded hypersurface the edge factor is 1
        let (g, d) = (rat(1), rat(1));
        let e = rat(1);
        assert_eq!(e_constants(&g, &d, &e, 1).unwrap().e_t, rat(1));
        assert_eq!(e_y1(&rat(1), &rat(-1), &rat(3)).unwrap(), rat(0));
    }

    #[test]
    fn monotone_examples() {
        assert!(monotone_horizon(&rat(3), &rat(1), &rat(2), &rat(2), 10).is_err());
        assert!(monotone_horizon(&rat(3), &rat(0), &rat(2), &rat(3), 10).is_err());
        assert_eq!(monotone_horizon(&rat(2), &rat(1), &rat(2), &rat(3), 50).unwrap(), Some(1));
        assert_eq!(monotone_horizon(&rat(1), &rat(1), &rat(4), &rat(9), 50).unwrap(), Some(0));
        // e = -1 makes the denominator vanish at ℓ = 0 only
        assert_eq!(monotone_horizon(&rat(-1), &rat(1), &rat(2), &rat(3), 20).unwrap(), Some(1));
    }
}
