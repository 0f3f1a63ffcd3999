//! Operators on `Λ̄[x,y]` (type A) and `Γ̄[x,y]` (type C), each evaluated
//! twice: directly by substitution, and in closed form on a basis element.
//!
//! Direct evaluations act on polynomials in `ℤ[z, c, x, y]`. A Chern-class
//! variable `c_k` is sent to the `k`-th coefficient of an image series.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pfaffian::{expand_in_q_basis, q_poly, QExpansion};
use crate::ring::{binomial, Integer, Poly, Var};
use crate::schur::{expand_in_schur_basis, schur_det, schur_poly, Expansion, SchurExpansion};
use crate::series::ChernSeries;
use crate::shapes::{durfee, frobenius, is_partition, is_strict, sub_partitions, trim};
use crate::tableaux::{border_strip_expansion, durfee_tableaux, primed_weight_sum_with};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    ClosedForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    TypeAS0,
    TypeAPartial0,
    Gamma(i64),
    Theta,
    TypeCS0,
    TypeCPartial0,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorResult {
    pub expansion: Expansion,
    pub method: Method,
}

fn max_chern_index(p: &Poly) -> usize {
    p.vars()
        .into_iter()
        .filter_map(|v| match v {
            Var::C(k) => Some(k as usize),
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

/// Applies `c ↦ factor · c` together with a substitution of other variables.
fn twist_chern(p: &Poly, numer: Vec<Poly>, denom: Vec<Poly>, vars: impl Fn(Var) -> Option<Poly>) -> Poly {
    let image = ChernSeries::from_factors(numer, denom, true, max_chern_index(p));
    p.substitute_with(|v| match v {
        Var::C(k) => Some(image.at(k as i64).clone()),
        _ => vars(v),
    })
}

fn checked_partition(lambda: &[i64]) -> Result<Vec<i64>> {
    let lambda = trim(lambda);
    if !is_partition(&lambda) {
        return Err(Error::InvalidShape(format!("{lambda:?} is not a partition")));
    }
    Ok(lambda)
}

fn checked_strict(lambda: &[i64]) -> Result<Vec<i64>> {
    let lambda = checked_partition(lambda)?;
    if !is_strict(&lambda) {
        return Err(Error::InvalidShape(format!("{lambda:?} is not strict")));
    }
    Ok(lambda)
}

/// `x₀ ↔ x₁`, `c ↦ c · (1 + (z − x₀)t) / (1 + (z − x₁)t)`; `y` and `z` fixed.
pub fn type_a_s0(p: &Poly) -> Poly {
    let (x0, x1, z) = (Poly::x(0), Poly::x(1), Poly::z());
    twist_chern(p, vec![&z - &x0], vec![&x1 - &z], |v| match v {
        Var::X(0) => Some(x1.clone()),
        Var::X(1) => Some(x0.clone()),
        _ => None,
    })
}

/// `(f − s₀f) / (x₀ − x₁)`.
pub fn type_a_partial0(p: &Poly) -> Result<Poly> {
    (p - &type_a_s0(p))
        .div_linear(Var::X(0), &Poly::x(1))
        .ok_or_else(|| Error::NotDivisible("x0 - x1".into()))
}

/// `x_i ↦ x_{i+m}`, `y_i ↦ y_{i+m}`, and `c` times
/// `Π_{1≤i≤m} (1 + y_i t)/(1 + (z − x_i)t)` for `m > 0` or
/// `Π_{m<i≤0} (1 + (z − x_i)t)/(1 + y_i t)` for `m < 0`.
pub fn gamma_shift(p: &Poly, m: i64) -> Poly {
    let z = Poly::z();
    let (mut numer, mut denom) = (Vec::new(), Vec::new());
    for i in 1..=m {
        numer.push(Poly::y(i as i32));
        denom.push(&Poly::x(i as i32) - &z);
    }
    for i in (m + 1)..=0 {
        numer.push(&z - &Poly::x(i as i32));
        denom.push(-Poly::y(i as i32));
    }
    let shift = m as i32;
    twist_chern(p, numer, denom, |v| match v {
        Var::X(i) => Some(Poly::x(i + shift)),
        Var::Y(i) => Some(Poly::y(i + shift)),
        _ => None,
    })
}

/// `c_k ↦ Σ_{i=1}^{k} C(k−1, i−1) z^{k−i} c_i`, other variables fixed.
pub fn theta(p: &Poly) -> Poly {
    p.substitute_with(|v| match v {
        Var::C(k) => {
            let k = k as i64;
            let img = (1..=k)
                .map(|i| {
                    Poly::z()
                        .pow((k - i) as u32)
                        .scale(&binomial(k - 1, i - 1))
                        * Poly::c(i as u32)
                })
                .sum();
            Some(img)
        }
        _ => None,
    })
}

/// `Det(c(i)_{λ_i+j−i})` with `c(i) = (1 + z t)^{λ_i − i} · c`.
pub fn theta_determinant(lambda: &[i64]) -> Result<Poly> {
    let lambda = checked_partition(lambda)?;
    let cutoff = (lambda.iter().sum::<i64>() + lambda.len() as i64) as usize;
    let rows: Vec<ChernSeries> = lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let a = ChernSeries::linear_power(&Poly::z(), l - i as i64 - 1, cutoff);
            a.mul(&ChernSeries::generic(cutoff))
        })
        .collect::<Result<_>>()?;
    schur_det(&lambda, &vec![0; lambda.len()], &rows)
}

/// Σ over `μ ⊂ λ` with `d(μ) = d(λ)` of `N(λ/μ) z^{λ/μ} S_μ(c)`, with `N`
/// counted by tableaux.
pub fn theta_expansion(lambda: &[i64]) -> Result<SchurExpansion> {
    let lambda = checked_partition(lambda)?;
    let mut out = SchurExpansion::new();
    for mu in sub_partitions(&lambda) {
        if durfee(&mu) != durfee(&lambda) {
            continue;
        }
        let (n, mono) = durfee_tableaux(&lambda, &mu)?;
        out.add_term(&trim(&mu), &mono.scale(&n));
    }
    Ok(out)
}

/// `N(λ/μ)` as the product of binomial determinants in Frobenius coordinates.
pub fn durfee_count_binomial(lambda: &[i64], mu: &[i64]) -> Integer {
    let ((a, b), (a2, b2)) = (frobenius(lambda), frobenius(mu));
    if a.len() != a2.len() {
        return Integer::ZERO;
    }
    let bin_det = |top: &[i64], bottom: &[i64]| {
        let m: Vec<Vec<Poly>> = top
            .iter()
            .map(|&t| bottom.iter().map(|&s| Poly::constant(binomial(t, s))).collect())
            .collect();
        crate::det::det(&m).as_constant().unwrap_or(Integer::ZERO)
    };
    &bin_det(&a, &a2) * &bin_det(&b, &b2)
}

/// Border-strip expansion with the exponent of `x + y` lowered by one and
/// the empty strip dropped.
fn strip_quotient(lambda: &[i64], x: &Poly, y: &Poly, shifted: bool) -> Result<Expansion> {
    let xy = x + y;
    let mut out = Expansion::new();
    for s in crate::shapes::border_strips(lambda, shifted)? {
        if s.k == 0 {
            continue;
        }
        out.add_term(&s.mu, &(&(&x.pow(s.v) * &y.pow(s.h)) * &xy.pow(s.k - 1)));
    }
    Ok(out)
}

/// Type A: `x = x₁ − z`, `y = z − x₀`, so `x + y = x₁ − x₀`.
fn type_a_strip_vars() -> (Poly, Poly) {
    (&Poly::x(1) - &Poly::z(), &Poly::z() - &Poly::x(0))
}

/// Type C: `x = x₁ − z`, `y = x₁`, so `x + y = 2x₁ − z`.
fn type_c_strip_vars() -> (Poly, Poly) {
    (&Poly::x(1) - &Poly::z(), Poly::x(1))
}

pub fn type_a_s0_expansion(lambda: &[i64]) -> Result<SchurExpansion> {
    let (x, y) = type_a_strip_vars();
    Ok(border_strip_expansion(&checked_partition(lambda)?, &x, &y, false)?.into_iter().collect())
}

pub fn type_a_partial0_expansion(lambda: &[i64]) -> Result<SchurExpansion> {
    let (x, y) = type_a_strip_vars();
    strip_quotient(&checked_partition(lambda)?, &x, &y, false)
}

/// Σ over primed tableaux on `λ/μ` in `|m|` letters. For `m > 0` a plain `k`
/// weighs `x_k − z` and `k′` weighs `y_k`; for `m < 0` letter `k` stands for
/// index `k + m`, a plain entry weighs `−y` and a primed one `z − x`.
pub fn gamma_expansion(lambda: &[i64], m: i64) -> Result<SchurExpansion> {
    let lambda = checked_partition(lambda)?;
    let z = Poly::z();
    let letters = m.abs();
    let plain = |k: i64| -> Poly {
        if m > 0 {
            &Poly::x(k as i32) - &z
        } else {
            -Poly::y((k + m) as i32)
        }
    };
    let primed = |k: i64| -> Poly {
        if m > 0 {
            Poly::y(k as i32)
        } else {
            &z - &Poly::x((k + m) as i32)
        }
    };
    let mut out = SchurExpansion::new();
    for mu in sub_partitions(&lambda) {
        let w = primed_weight_sum_with(&lambda, &mu, letters, false, &plain, &primed)?;
        out.add_term(&trim(&mu), &w);
    }
    Ok(out)
}

/// `x₁ ↦ z − x₁`, `c ↦ c · (1 + x₁ t) / (1 + (z − x₁)t)`.
pub fn type_c_s0(p: &Poly) -> Poly {
    let (x1, z) = (Poly::x(1), Poly::z());
    twist_chern(p, vec![x1.clone()], vec![&x1 - &z], |v| match v {
        Var::X(1) => Some(&z - &x1),
        _ => None,
    })
}

/// `c_k + (2x₁ − z) Σ_{i+j=k−1} (x₁ − z)^i c_j`.
pub fn type_c_s0_chern(k: u32) -> Poly {
    let x1 = Poly::x(1);
    let (d, u) = (&(&x1 + &x1) - &Poly::z(), &x1 - &Poly::z());
    let sum: Poly = (0..k)
        .map(|j| {
            let c = if j == 0 { Poly::one() } else { Poly::c(j) };
            &u.pow(k - 1 - j) * &c
        })
        .sum();
    &Poly::c(k) + &(&d * &sum)
}

/// `(f − s₀f) / (z − 2x₁)`.
pub fn type_c_partial0(p: &Poly) -> Result<Poly> {
    let x1 = Poly::x(1);
    (p - &type_c_s0(p))
        .div_linear(Var::Z, &(&x1 + &x1))
        .ok_or_else(|| Error::NotDivisible("z - 2*x1".into()))
}

pub fn type_c_s0_expansion(lambda: &[i64]) -> Result<QExpansion> {
    let (x, y) = type_c_strip_vars();
    Ok(border_strip_expansion(&checked_strict(lambda)?, &x, &y, true)?.into_iter().collect())
}

pub fn type_c_partial0_expansion(lambda: &[i64]) -> Result<QExpansion> {
    let (x, y) = type_c_strip_vars();
    strip_quotient(&checked_strict(lambda)?, &x, &y, true)
}

/// The operator applied to `S_λ(c)` (type A) or `Q_λ` (type C).
pub fn evaluate(op: Operator, lambda: &[i64], method: Method) -> Result<OperatorResult> {
    let expansion = match (op, method) {
        (Operator::TypeCS0 | Operator::TypeCPartial0, Method::Direct) => {
            let q = q_poly(&checked_strict(lambda)?)?;
            let image = match op {
                Operator::TypeCS0 => type_c_s0(&q),
                _ => type_c_partial0(&q)?,
            };
            expand_in_q_basis(&image)?
        }
        (Operator::TypeCS0, Method::ClosedForm) => type_c_s0_expansion(lambda)?,
        (Operator::TypeCPartial0, Method::ClosedForm) => type_c_partial0_expansion(lambda)?,
        (_, Method::Direct) => {
            let s = schur_poly(&checked_partition(lambda)?);
            let image = match op {
                Operator::TypeAS0 => type_a_s0(&s),
                Operator::TypeAPartial0 => type_a_partial0(&s)?,
                Operator::Gamma(m) => gamma_shift(&s, m),
                _ => theta(&s),
            };
            expand_in_schur_basis(&image)
        }
        (Operator::TypeAS0, Method::ClosedForm) => type_a_s0_expansion(lambda)?,
        (Operator::TypeAPartial0, Method::ClosedForm) => type_a_partial0_expansion(lambda)?,
        (Operator::Gamma(m), Method::ClosedForm) => gamma_expansion(lambda, m)?,
        (Operator::Theta, Method::ClosedForm) => theta_expansion(lambda)?,
    };
    Ok(OperatorResult { expansion, method })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{partitions_of, strict_partitions_of};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn agree(op: Operator, lambda: &[i64]) {
        let d = evaluate(op, lambda, Method::Direct).unwrap();
        let c = evaluate(op, lambda, Method::ClosedForm).unwrap();
        assert_eq!(d.expansion, c.expansion, "{op:?} on {lambda:?}");
    }

    #[test]
    fn type_a_small_values() {
        assert_eq!(type_a_s0(&Poly::x(0)), Poly::x(1));
        assert_eq!(type_a_s0(&p("c1")), p("c1 + x[1] - x[0]"));
        assert!(type_a_partial0(&p("c1")).unwrap().is_one());
        assert!(type_a_partial0(&Poly::one()).unwrap().is_zero());
        let f = p("c2*x[0] + z*c1^2 - y[3]*x[1]");
        assert_eq!(type_a_s0(&type_a_s0(&f)), f);
    }

    #[test]
    fn type_a_propositions() {
        for n in 0..=4 {
            for lam in partitions_of(n) {
                agree(Operator::TypeAS0, &lam);
                agree(Operator::TypeAPartial0, &lam);
            }
        }
    }

    #[test]
    fn untwisted_partial0() {
        let lam = [3, 1];
        let at_zero = |e: &Expansion| e.map_coeffs(|c| c.substitute_with(|v| (v == Var::Z).then(Poly::zero)));
        let direct = at_zero(&evaluate(Operator::TypeAPartial0, &lam, Method::Direct).unwrap().expansion);
        let mut expect = Expansion::new();
        for s in crate::shapes::border_strips(&lam, false).unwrap() {
            if s.k > 0 {
                let c = &(&Poly::x(1).pow(s.v) * &(-Poly::x(0)).pow(s.h)) * &(&Poly::x(1) - &Poly::x(0)).pow(s.k - 1);
                expect.add_term(&s.mu, &c);
            }
        }
        assert_eq!(direct, expect);
    }

    #[test]
    fn gamma_and_theta() {
        assert_eq!(gamma_shift(&p("c2 + x[1]"), 0), p("c2 + x[1]"));
        assert_eq!(theta(&p("c1")), p("c1"));
        assert_eq!(theta(&p("c2")), p("c2 + z*c1"));
        for n in 0..=4 {
            for lam in partitions_of(n) {
                for m in [-2, -1, 1, 2] {
                    agree(Operator::Gamma(m), &lam);
                }
                agree(Operator::Theta, &lam);
                assert_eq!(theta_determinant(&lam).unwrap(), theta(&schur_poly(&lam)));
                for (mu, _) in theta_expansion(&lam).unwrap().iter() {
                    let (count, _) = durfee_tableaux(&lam, mu).unwrap();
                    assert_eq!(durfee_count_binomial(&lam, mu), count);
                }
            }
        }
    }

    #[test]
    fn type_c_small_values() {
        let z = Poly::z();
        assert_eq!(type_c_s0(&Poly::x(1)), &z - &Poly::x(1));
        assert_eq!(type_c_s0(&p("c1")), p("c1 + 2*x[1] - z"));
        assert_eq!(type_c_partial0(&Poly::x(1)).unwrap(), p("-1"));
        assert!(type_c_partial0(&p("c1")).unwrap().is_one());
        assert!(type_c_partial0(&p("z^3 - 2*z")).unwrap().is_zero());
        for k in 1..=6 {
            assert_eq!(type_c_s0(&Poly::c(k)), type_c_s0_chern(k));
        }
    }

    #[test]
    fn type_c_propositions() {
        for n in 0..=5 {
            for lam in strict_partitions_of(n) {
                agree(Operator::TypeCS0, &lam);
                agree(Operator::TypeCPartial0, &lam);
                let q = q_poly(&lam).unwrap();
                let once = type_c_partial0(&q).unwrap();
                assert!(type_c_partial0(&once).unwrap().is_zero());
                assert_eq!(type_c_s0(&type_c_s0(&q)), q);
            }
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(type_c_s0_expansion(&[2, 2]).is_err());
        assert!(evaluate(Operator::Theta, &[1, 2], Method::Direct).is_err());
    }
}
