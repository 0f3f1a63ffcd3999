//! Enriched Schubert polynomials of vexillary and 321-avoiding
//! permutations, as determinants and as tableau sums.
//!
//! Positive-index variables stand in for nonpositive ones through
//! `x̃_i = −x_{1−i}` and `ỹ_j = −y_{1−j}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::Poly;
use crate::schur::{expand_in_schur_basis, lr_coefficient, schur_det, schur_three, SchurExpansion};
use crate::series::ChernSeries;
use crate::shapes::{decreasing_between, partitions_of, sub_partitions, trim, BarCase, Triple};
use crate::tableaux::{dual_weight_sum_with, flagged_weight_sum_with, FlagData};

pub fn x_tilde(i: i64) -> Poly {
    -Poly::x((1 - i) as i32)
}

pub fn y_tilde(j: i64) -> Poly {
    -Poly::y((1 - j) as i32)
}

/// `a(p,q) = Π_{p<i≤0}(1 − x_i t) Π_{1≤j≤q}(1 + y_j t) / Π_{1≤i≤p}(1 − x_i t) Π_{q<j≤0}(1 + y_j t)`.
pub fn vexillary_series(p: i64, q: i64, cutoff: usize) -> ChernSeries {
    let mut numer: Vec<Poly> = (1..=q).map(|j| Poly::y(j as i32)).collect();
    numer.extend((p + 1..=0).map(|i| -Poly::x(i as i32)));
    let mut denom: Vec<Poly> = (1..=p).map(|i| Poly::x(i as i32)).collect();
    denom.extend((q + 1..=0).map(|j| -Poly::y(j as i32)));
    ChernSeries::from_factors(numer, denom, false, cutoff)
}

/// `Σ_{μ ⊂ λ} S_{λ/μ}(a(•)) S_μ(c)` with `a(k) = a(p_i, q_i)` for the
/// minimal `i` with `k_i ≥ k`. Weak and incomplete triples are accepted.
pub fn vexillary_expansion(tau: &Triple) -> Result<SchurExpansion> {
    let lambda = tau.partition();
    let n = lambda.len();
    let cutoff = (lambda.first().copied().unwrap_or(0) + n as i64) as usize;
    let rows: Vec<ChernSeries> = (1..=n as i64)
        .map(|k| {
            let i = tau.row_source(k);
            vexillary_series(tau.p[i], tau.q[i], cutoff)
        })
        .collect();
    let mut out = SchurExpansion::new();
    for mu in sub_partitions(&lambda) {
        out.add_term(&trim(&mu), &schur_det(&lambda, &mu, &rows)?);
    }
    Ok(out)
}

/// The specialization of the `u` and `v` alphabets for a complete triple.
///
/// Row `i` of `a(•)` has numerator variables `y_1..y_{q_i}` and
/// `x̃_1..x̃_{−p_i}`, and denominator variables `x_1..x_{p_i}` and
/// `ỹ_1..ỹ_{−q_i}`. Numerator sets shrink and denominator sets grow down
/// the rows, so listing each row's new variables in turn makes every row's
/// set an initial segment: `v` from the last row up, `u` from the first row
/// down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Specialization {
    pub flags: FlagData,
    pub u: Vec<Poly>,
    pub v: Vec<Poly>,
}

pub fn specialization(tau: &Triple) -> Result<Specialization> {
    if !tau.is_complete() {
        return Err(Error::InvalidTriple("the tableau formula needs a complete triple".into()));
    }
    let bar = tau.bar()?;
    let n = tau.len();
    let (p, q) = (&tau.p, &tau.q);
    let plus = |v: i64| v.max(0);
    let minus = |v: i64| (-v).max(0);
    // in the nonpositive case x̃ blocks come before y blocks
    let x_first = bar.case == BarCase::Nonpositive;

    let mut v = Vec::new();
    let (mut ys, mut xs) = (0, 0);
    for i in (0..n).rev() {
        let new_y: Vec<Poly> = (ys + 1..=plus(q[i])).map(|j| Poly::y(j as i32)).collect();
        let new_x: Vec<Poly> = (xs + 1..=minus(p[i])).map(x_tilde).collect();
        let (first, second) = if x_first { (new_x, new_y) } else { (new_y, new_x) };
        v.extend(first);
        v.extend(second);
        ys = ys.max(plus(q[i]));
        xs = xs.max(minus(p[i]));
    }
    let mut u = Vec::new();
    let (mut xs, mut ys) = (0, 0);
    for i in 0..n {
        let new_x: Vec<Poly> = (xs + 1..=plus(p[i])).map(|a| Poly::x(a as i32)).collect();
        let new_y: Vec<Poly> = (ys + 1..=minus(q[i])).map(y_tilde).collect();
        let (first, second) = if x_first { (new_y, new_x) } else { (new_x, new_y) };
        u.extend(first);
        u.extend(second);
        xs = xs.max(plus(p[i]));
        ys = ys.max(minus(q[i]));
    }
    let flags = FlagData::new(
        (0..n).map(|i| plus(p[i]) + minus(q[i])).collect(),
        (0..n).map(|i| plus(q[i]) + minus(p[i])).collect(),
    )?;
    Ok(Specialization { flags, u, v })
}

/// Tableau sums on `λ/μ` for the flags of the specialization, with plain
/// `k` weighing `u_k` and primed `l` weighing `v_l`.
pub fn vexillary_tableau_expansion(tau: &Triple) -> Result<SchurExpansion> {
    let spec = specialization(tau)?;
    let lambda = tau.partition();
    let plain = |k: i64| spec.u[k as usize - 1].clone();
    let primed = |l: i64| spec.v[l as usize - 1].clone();
    let mut out = SchurExpansion::new();
    for mu in sub_partitions(&lambda) {
        let w = flagged_weight_sum_with(&lambda, &mu, &spec.flags, 0, &plain, &primed)?;
        out.add_term(&trim(&mu), &w);
    }
    Ok(out)
}

/// `Ψ_λ(c, y)` by tableaux: primed `l` weighs `y_l`, plain `k` weighs `ỹ_k`.
pub fn molev_expansion(lambda: &[i64]) -> Result<SchurExpansion> {
    let lambda = trim(lambda);
    let n = lambda.len() as i64;
    let q: Vec<i64> = (1..=n).map(|i| lambda[i as usize - 1] - i).collect();
    let flags = FlagData::new(q.iter().map(|&v| (-v).max(0)).collect(), q.iter().map(|&v| v.max(0)).collect())?;
    let mut out = SchurExpansion::new();
    for mu in sub_partitions(&lambda) {
        let w = flagged_weight_sum_with(&lambda, &mu, &flags, 0, &y_tilde, &|l| Poly::y(l as i32))?;
        out.add_term(&trim(&mu), &w);
    }
    Ok(out)
}

/// The complete triple `(0, λ_i − i)` whose polynomial is `Ψ_λ(c, y)`.
pub fn molev_triple(lambda: &[i64]) -> Result<Triple> {
    let lambda = trim(lambda);
    let n = lambda.len() as i64;
    Triple::complete(vec![0; n as usize], (1..=n).map(|i| lambda[i as usize - 1] - i).collect())
}

/// A 321-avoiding permutation: `w(p_i) = q_i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct W321Data {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
}

impl W321Data {
    pub fn new(p: Vec<i64>, q: Vec<i64>) -> Result<Self> {
        let bad = |m: &str| Err(Error::Invalid(m.into()));
        if p.len() != q.len() {
            return bad("p and q must have equal length");
        }
        if p.windows(2).any(|w| w[0] <= w[1]) || q.windows(2).any(|w| w[0] <= w[1]) {
            return bad("p and q must be strictly decreasing");
        }
        if p.iter().zip(&q).any(|(a, b)| a > b) {
            return bad("p_i <= q_i is required");
        }
        Ok(W321Data { p, q })
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// `κ_i = q_i + 1 + i`.
    pub fn kappa(&self) -> Vec<i64> {
        self.q.iter().enumerate().map(|(i, q)| q + 2 + i as i64).collect()
    }

    /// `ρ_i = p_i + i`.
    pub fn rho(&self) -> Vec<i64> {
        self.p.iter().enumerate().map(|(i, p)| p + 1 + i as i64).collect()
    }

    fn cutoff(&self) -> usize {
        let k = self.kappa();
        let r = self.rho();
        let total = (k.iter().zip(&r).map(|(a, b)| (a - b).abs()).sum::<i64>() + 2 * self.len() as i64) as usize;
        total.max(crate::schur::determinant_cutoff(&k, &r))
    }

    pub fn a_series(&self, cutoff: usize) -> Vec<ChernSeries> {
        self.q.iter().map(|&q| vexillary_series(0, q, cutoff)).collect()
    }

    pub fn b_series(&self, cutoff: usize) -> Vec<ChernSeries> {
        self.p.iter().map(|&p| vexillary_series(p, 0, cutoff)).collect()
    }
}

/// `Det((a(i)·c·b(j))_{q_i + 1 − p_j})`.
pub fn w321_polynomial(w: &W321Data) -> Result<Poly> {
    let d = w.cutoff();
    schur_three(&w.kappa(), &w.rho(), &w.a_series(d), &w.b_series(d), true)
}

/// Σ over `κ ⊃ λ ⊃ ν ⊃ ρ` and partitions `μ` of
/// `c^λ_{μν} · wt(tableaux on κ/λ) · wt(dual tableaux on ν/ρ) · S_μ(c)`.
pub fn w321_tableau_expansion(w: &W321Data) -> Result<SchurExpansion> {
    let n = w.len();
    let (kappa, rho) = (w.kappa(), w.rho());
    // a-side: plain k ↦ ỹ_k up to −q_i, primed l ↦ y_l up to q_i
    let a_flags = FlagData::new(
        w.q.iter().map(|&q| (-q).max(0)).collect(),
        w.q.iter().map(|&q| q.max(0)).collect(),
    )?;
    // b-side: plain k ↦ x_k up to p_j, primed l ↦ x̃_l up to −p_j
    let b_flags = FlagData::new_dual(
        w.p.iter().map(|&p| p.max(0)).collect(),
        w.p.iter().map(|&p| (-p).max(0)).collect(),
    )?;
    let mut out = SchurExpansion::new();
    if n == 0 {
        out.add_term(&[], &Poly::one());
        return Ok(out);
    }
    for lambda in decreasing_between(&rho, &kappa, false) {
        let left = flagged_weight_sum_with(&kappa, &lambda, &a_flags, 1, &y_tilde, &|l| Poly::y(l as i32))?;
        if left.is_zero() {
            continue;
        }
        for nu in decreasing_between(&rho, &lambda, false) {
            let right = dual_weight_sum_with(&nu, &rho, &b_flags, &|k| Poly::x(k as i32), &x_tilde)?;
            if right.is_zero() {
                continue;
            }
            let weight = &left * &right;
            let size: i64 = lambda.iter().sum::<i64>() - nu.iter().sum::<i64>();
            for mu in partitions_of(size) {
                if mu.len() > n {
                    continue;
                }
                let lr = lr_coefficient(&lambda, &mu, &nu)?;
                if !lr.is_zero() {
                    out.add_term(&mu, &weight.scale(&lr));
                }
            }
        }
    }
    Ok(out)
}

/// The basis expansion of the determinant, for cross-checks.
pub fn w321_expansion(w: &W321Data) -> Result<SchurExpansion> {
    Ok(expand_in_schur_basis(&w321_polynomial(w)?))
}
