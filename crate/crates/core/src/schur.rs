//! Schur determinants with row- or column-dependent Chern series, the
//! three-factor identity, and expansion in the Schur basis of `ℤ[c]`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::det::det;
use crate::error::{Error, Result};
use crate::ring::{Integer, Monomial, Poly, Var};
use crate::series::ChernSeries;
use crate::shapes::{bar, decreasing_between, is_partition, seq_contains, sort_with_sign, trim};

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, got })
    }
}

/// `Det(a(i)_{κ̄_i − ρ̄_j})`.
pub fn schur_det(kappa: &[i64], rho: &[i64], rows: &[ChernSeries]) -> Result<Poly> {
    let n = kappa.len();
    check_len(n, rho.len())?;
    check_len(n, rows.len())?;
    let (kb, rb) = (bar(kappa), bar(rho));
    let m = kb
        .iter()
        .zip(rows)
        .map(|(k, row)| rb.iter().map(|r| row.coeff(k - r).cloned()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(det(&m))
}

/// `Det(b(j)_{κ̄_i − ρ̄_j})`, the series indexed by column.
pub fn schur_det_prime(kappa: &[i64], rho: &[i64], cols: &[ChernSeries]) -> Result<Poly> {
    let n = kappa.len();
    check_len(n, rho.len())?;
    check_len(n, cols.len())?;
    let (kb, rb) = (bar(kappa), bar(rho));
    let m = kb
        .iter()
        .map(|k| rb.iter().zip(cols).map(|(r, col)| col.coeff(k - r).cloned()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(det(&m))
}

/// `S_{κ/ρ}(c)` for the generic series, cached per thread.
pub fn schur_generic(kappa: &[i64], rho: &[i64]) -> Poly {
    type Cache = HashMap<(Vec<i64>, Vec<i64>), Poly>;
    thread_local! {
        static CACHE: RefCell<Cache> = RefCell::new(HashMap::new());
    }
    let key = (kappa.to_vec(), rho.to_vec());
    if let Some(p) = CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return p;
    }
    let (kb, rb) = (bar(kappa), bar(rho));
    let m: Vec<Vec<Poly>> = kb
        .iter()
        .map(|&k| {
            rb.iter()
                .map(|&r| match k - r {
                    d if d < 0 => Poly::zero(),
                    0 => Poly::one(),
                    d => Poly::c(d as u32),
                })
                .collect()
        })
        .collect();
    let p = det(&m);
    CACHE.with(|c| c.borrow_mut().insert(key, p.clone()));
    p
}

/// `S_μ(c)` for a partition `μ`.
pub fn schur_poly(mu: &[i64]) -> Poly {
    let mu = trim(mu);
    schur_generic(&mu, &vec![0; mu.len()])
}

fn common_cutoff(series: &[&ChernSeries]) -> Result<usize> {
    let d = series.first().map_or(0, |s| s.cutoff());
    for s in series {
        if s.cutoff() != d {
            return Err(Error::CutoffMismatch(d, s.cutoff()));
        }
    }
    Ok(d)
}

/// `Det((a(i)·c·b(j))_{κ̄_i − ρ̄_j})`, with `c` generic or `1`.
pub fn schur_three(
    kappa: &[i64],
    rho: &[i64],
    a: &[ChernSeries],
    b: &[ChernSeries],
    with_generic_c: bool,
) -> Result<Poly> {
    let n = kappa.len();
    check_len(n, rho.len())?;
    check_len(n, a.len())?;
    check_len(n, b.len())?;
    let all: Vec<&ChernSeries> = a.iter().chain(b).collect();
    let d = common_cutoff(&all)?;
    let c = if with_generic_c {
        ChernSeries::generic(d)
    } else {
        ChernSeries::one(d)
    };
    let (kb, rb) = (bar(kappa), bar(rho));
    let ac: Vec<ChernSeries> = a.iter().map(|s| s.mul(&c)).collect::<Result<_>>()?;
    let mut m = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let e = kb[i] - rb[j];
            if e < 0 {
                row.push(Poly::zero());
            } else {
                row.push(ac[i].mul(&b[j])?.coeff(e)?.clone());
            }
        }
        m.push(row);
    }
    Ok(det(&m))
}

/// `Σ_{κ ⊃ λ ⊃ μ ⊃ ρ} S_{κ/λ}(a(•)) S_{λ/μ}(c) S'_{μ/ρ}(b(•))`.
///
/// `λ̄` and `μ̄` run over strictly decreasing sequences between the sorted
/// bar sequences of `ρ` and `κ`; every other term vanishes.
pub fn theorem1_rhs(
    kappa: &[i64],
    rho: &[i64],
    a: &[ChernSeries],
    b: &[ChernSeries],
    with_generic_c: bool,
) -> Result<Poly> {
    let n = kappa.len();
    check_len(n, rho.len())?;
    check_len(n, a.len())?;
    check_len(n, b.len())?;
    let (upper, _) = sort_with_sign(&bar(kappa));
    let (lower, _) = sort_with_sign(&bar(rho));
    if upper.iter().zip(&lower).any(|(u, l)| u < l) {
        return Ok(Poly::zero());
    }
    let unbar = |s: &[i64]| -> Vec<i64> { s.iter().enumerate().map(|(i, x)| x + i as i64 + 1).collect() };
    // summed once at the end: repeated `+=` on a growing sum is quadratic
    let mut parts: Vec<Poly> = Vec::new();
    let mut b_cache: HashMap<Vec<i64>, Poly> = HashMap::new();
    for lam_bar in decreasing_between(&lower, &upper, true) {
        let lam = unbar(&lam_bar);
        let left = schur_det(kappa, &lam, a)?;
        if left.is_zero() {
            continue;
        }
        for mu_bar in decreasing_between(&lower, &lam_bar, true) {
            let mu = unbar(&mu_bar);
            let middle = if with_generic_c {
                schur_generic(&lam, &mu)
            } else if lam == mu {
                Poly::one()
            } else {
                continue;
            };
            if middle.is_zero() {
                continue;
            }
            let right = match b_cache.get(&mu) {
                Some(p) => p.clone(),
                None => {
                    let p = schur_det_prime(&mu, rho, b)?;
                    b_cache.insert(mu.clone(), p.clone());
                    p
                }
            };
            if right.is_zero() {
                continue;
            }
            parts.push(&(&left * &middle) * &right);
        }
    }
    Ok(parts.into_iter().sum())
}

pub type SchurExpansion = Expansion;

/// A polynomial written as `Σ coeff_μ · B_μ` over a basis indexed by
/// partitions, with coefficients free of the `c_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expansion {
    terms: BTreeMap<Vec<i64>, Poly>,
}

impl Expansion {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coeff · S_μ`; `μ` is trimmed of trailing zeros.
    pub fn add_term(&mut self, mu: &[i64], coeff: &Poly) {
        let key = trim(mu);
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn get(&self, mu: &[i64]) -> Poly {
        self.terms.get(&trim(mu)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms ordered by `|μ|`, then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &Poly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(mu, _)| (mu.iter().sum::<i64>(), (*mu).clone()));
        v.into_iter()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Expansion {
        let mut out = Expansion::new();
        for (mu, c) in &self.terms {
            out.add_term(mu, &f(c));
        }
        out
    }

    /// `Σ coeff_μ · S_μ(c)` as a polynomial.
    pub fn reconstruct(&self) -> Poly {
        self.terms
            .iter()
            .map(|(mu, c)| c * &schur_poly(mu))
            .sum()
    }
}

impl FromIterator<(Vec<i64>, Poly)> for Expansion {
    fn from_iter<I: IntoIterator<Item = (Vec<i64>, Poly)>>(iter: I) -> Self {
        let mut out = Expansion::new();
        for (mu, c) in iter {
            out.add_term(&mu, &c);
        }
        out
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    mu: &'a [i64],
    coeff: String,
}

impl Serialize for Expansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (mu, c) in self.iter() {
            seq.serialize_element(&TermJson {
                mu,
                coeff: c.to_string(),
            })?;
        }
        seq.end()
    }
}

/// Partition read off a monomial in the `c_k`.
pub(crate) fn c_partition(m: &Monomial) -> Vec<i64> {
    let mut parts = Vec::new();
    for &(v, e) in m.factors() {
        if let Var::C(k) = v {
            parts.extend(std::iter::repeat_n(k as i64, e as usize));
        }
    }
    parts.sort_by(|a, b| b.cmp(a));
    parts
}

/// Unique expansion `p = Σ coeff_μ S_μ(c)`.
///
/// `S_μ(c) = c^μ + Σ_{ν ▷ μ} (…) c^ν`, so the lexicographically smallest
/// `c`-monomial of each degree occurs only in its own `S_μ`; peeling those
/// off one at a time terminates.
pub fn expand_in_schur_basis(p: &Poly) -> Expansion {
    // key (|ν|, ν) with ν increasing lexicographically
    let mut rest: BTreeMap<(i64, Vec<i64>), Poly> = p
        .split_by(Var::is_chern)
        .into_iter()
        .map(|(m, c)| {
            let nu = c_partition(&m);
            ((nu.iter().sum(), nu), c)
        })
        .collect();
    let mut out = Expansion::new();
    while let Some(((_, nu), coeff)) = rest.pop_first() {
        let s = schur_poly(&nu);
        for (m, c) in s.split_by(Var::is_chern) {
            let key = c_partition(&m);
            let key = (key.iter().sum(), key);
            if key.1 == nu {
                debug_assert!(c.is_one());
                continue;
            }
            let entry = rest.entry(key.clone()).or_default();
            *entry -= &(&coeff * &c);
            if entry.is_zero() {
                rest.remove(&key);
            }
        }
        out.add_term(&nu, &coeff);
    }
    out
}

/// `c^λ_{μ ν}`: the coefficient of `S_μ(c)` in `S_{λ/ν}(c)`. Sequences
/// are shifted by a common constant so that both become partitions.
pub fn lr_coefficient(lambda: &[i64], mu: &[i64], nu: &[i64]) -> Result<Integer> {
    check_len(lambda.len(), nu.len())?;
    if !is_partition(mu) {
        return Err(Error::InvalidShape(format!("{mu:?} is not a partition")));
    }
    let shapes_ok = crate::shapes::is_weakly_decreasing(lambda)
        && crate::shapes::is_weakly_decreasing(nu)
        && lambda.iter().zip(nu).all(|(l, n)| l >= n);
    if !shapes_ok || !seq_contains(lambda, nu)? {
        return Err(Error::InvalidShape(format!("{lambda:?} does not contain {nu:?}")));
    }
    let t = -nu.iter().copied().min().unwrap_or(0).min(0);
    let l: Vec<i64> = lambda.iter().map(|x| x + t).collect();
    let n: Vec<i64> = nu.iter().map(|x| x + t).collect();
    let e = expand_in_schur_basis(&schur_generic(&l, &n));
    Ok(e.get(mu).as_constant().expect("skew Schur coefficients are integers"))
}

/// `Σ|κ̄ − ρ̄| + 2`, raised to the largest entry index of the determinant:
/// entries beyond the total degree only occur in vanishing terms, but they
/// are still read.
pub fn determinant_cutoff(kappa: &[i64], rho: &[i64]) -> usize {
    let total = crate::shapes::bar(kappa).iter().zip(crate::shapes::bar(rho)).map(|(k, r)| (k - r).abs()).sum::<i64>() + 2;
    let n = kappa.len() as i64;
    let entry = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| kappa[i as usize] - rho[j as usize] + j - i)
        .max()
        .unwrap_or(0);
    total.max(entry) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::partitions_of;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn special(cutoff: usize) -> ChernSeries {
        ChernSeries::from_factors(vec![Poly::y(1)], vec![Poly::x(1)], false, cutoff)
    }

    /// Independent oracle: cofactor expansion along the first row.
    fn cofactor(m: &[Vec<Poly>]) -> Poly {
        if m.is_empty() {
            return Poly::one();
        }
        let mut total = Poly::zero();
        for j in 0..m.len() {
            let minor: Vec<Vec<Poly>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let t = &m[0][j] * &cofactor(&minor);
            if j % 2 == 0 {
                total += &t;
            } else {
                total -= &t;
            }
        }
        total
    }

    #[test]
    fn determinant_basics() {
        let c = ChernSeries::generic(6);
        let rows = vec![special(6), c.clone(), special(6)];
        assert!(schur_det(&[3, 1, 0], &[3, 1, 0], &rows).unwrap().is_one());
        assert_eq!(schur_det(&[4], &[0], std::slice::from_ref(&c)).unwrap(), Poly::c(4));
        assert!(schur_det(&[1, 0], &[0], &rows[..2]).is_err());
        assert!(schur_det_prime(&[2, 1], &[2, 1], &rows[..2]).unwrap().is_one());
    }

    #[test]
    fn determinant_matches_cofactor_oracle() {
        let rows = vec![
            ChernSeries::from_factors(vec![Poly::y(1)], vec![Poly::x(1)], false, 8),
            ChernSeries::from_factors(vec![Poly::y(2), Poly::z()], vec![], true, 8),
            ChernSeries::from_factors(vec![], vec![Poly::x(2), Poly::x(3)], false, 8),
        ];
        for (k, r) in [([3, 2, 0], [1, 0, 0]), ([2, 4, 1], [0, 1, -1]), ([1, 1, 1], [2, -1, 0])] {
            let (kb, rb) = (bar(&k), bar(&r));
            let m: Vec<Vec<Poly>> = (0..3)
                .map(|i| (0..3).map(|j| rows[i].at(kb[i] - rb[j]).clone()).collect())
                .collect();
            assert_eq!(schur_det(&k, &r, &rows).unwrap(), cofactor(&m));
            let mp: Vec<Vec<Poly>> = (0..3)
                .map(|i| (0..3).map(|j| rows[j].at(kb[i] - rb[j]).clone()).collect())
                .collect();
            assert_eq!(schur_det_prime(&k, &r, &rows).unwrap(), cofactor(&mp));
        }
    }

    #[test]
    fn three_factor_tautology() {
        let one = vec![ChernSeries::one(6); 3];
        assert_eq!(
            schur_three(&[3, 2, 1], &[0, 0, 0], &one, &one, true).unwrap(),
            schur_poly(&[3, 2, 1])
        );
        // κ small relative to ρ: both sides vanish
        let a = vec![special(6); 2];
        assert!(schur_three(&[0, 0], &[3, 3], &a, &a, true).unwrap().is_zero());
        assert!(theorem1_rhs(&[0, 0], &[3, 3], &a, &a, true).unwrap().is_zero());
    }

    #[test]
    fn three_factor_identity_small() {
        let a = vec![
            ChernSeries::from_factors(vec![Poly::y(1)], vec![Poly::x(1)], false, 7),
            ChernSeries::from_factors(vec![Poly::y(2)], vec![], false, 7),
        ];
        let b = vec![
            ChernSeries::from_factors(vec![], vec![Poly::x(3)], false, 7),
            ChernSeries::from_factors(vec![Poly::y(3)], vec![Poly::x(4)], false, 7),
        ];
        for (k, r) in [([3, 1], [0, 0]), ([1, 3], [0, -1]), ([2, 2], [1, -2])] {
            assert_eq!(
                schur_three(&k, &r, &a, &b, true).unwrap(),
                theorem1_rhs(&k, &r, &a, &b, true).unwrap(),
                "κ={k:?} ρ={r:?}"
            );
        }
        let ones = vec![ChernSeries::one(7); 2];
        assert_eq!(
            theorem1_rhs(&[3, 1], &[1, 0], &ones, &ones, true).unwrap(),
            schur_generic(&[3, 1], &[1, 0])
        );
    }

    #[test]
    fn basis_expansion_examples() {
        let e = expand_in_schur_basis(&schur_poly(&[3, 1, 1]));
        assert_eq!(e.len(), 1);
        assert!(e.get(&[3, 1, 1]).is_one());
        let e = expand_in_schur_basis(&p("c1^2"));
        assert!(e.get(&[2]).is_one() && e.get(&[1, 1]).is_one() && e.len() == 2);
        assert!(expand_in_schur_basis(&Poly::zero()).is_empty());
    }

    #[test]
    fn border_strip_example_coefficient() {
        let ac = special(8).mul(&ChernSeries::generic(8)).unwrap();
        let s = schur_det(&[4, 3, 1], &[0, 0, 0], &vec![ac; 3]).unwrap();
        let e = expand_in_schur_basis(&s);
        assert_eq!(e.get(&[2, 1]), p("x^2*y*(x+y)^2"));
        assert_eq!(e.reconstruct(), s);
    }

    #[test]
    fn expansion_roundtrip_random_sums() {
        for n in 0..6 {
            for (i, lam) in partitions_of(n).into_iter().enumerate() {
                let coeff = &Poly::x(i as i32) + &Poly::constant(n);
                let mut src = Expansion::new();
                src.add_term(&lam, &coeff);
                src.add_term(&[1], &Poly::z());
                assert_eq!(expand_in_schur_basis(&src.reconstruct()), src);
            }
        }
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&[2, 1], &[2, 1], &[0, 0]).unwrap(), Integer::ONE);
        assert_eq!(lr_coefficient(&[2, 1], &[1, 1], &[1, 0]).unwrap(), Integer::ONE);
        assert_eq!(lr_coefficient(&[2, 1], &[2], &[1, 0]).unwrap(), Integer::ONE);
        assert_eq!(lr_coefficient(&[3, 2, 1], &[2, 1], &[2, 1, 0]).unwrap(), Integer::from(2));
        assert_eq!(
            lr_coefficient(&[1, 0, -1], &[2, 1], &[0, -1, -1]).unwrap(),
            lr_coefficient(&[2, 1, 0], &[2, 1], &[1, 0, 0]).unwrap()
        );
        assert!(lr_coefficient(&[1, 0], &[1], &[2, 0]).is_err());
    }

    #[test]
    fn lr_coefficients_are_nonnegative() {
        for n in 0..7 {
            for lam in partitions_of(n) {
                let l = crate::shapes::pad(&lam, 3);
                if lam.len() > 3 {
                    continue;
                }
                for nu in crate::shapes::sub_partitions(&l) {
                    let e = expand_in_schur_basis(&schur_generic(&l, &nu));
                    for (_, c) in e.iter() {
                        let v = c.as_constant().unwrap();
                        assert!(!v.is_negative(), "λ={l:?} ν={nu:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn flipped_prime_determinant() {
        // S'_{λ/μ}(b) = S_{λ̃/μ̃}(b̃) with λ̃_i = −μ_{n+1−i}, μ̃_i = −λ_{n+1−i}, b̃(i) = b(n+1−i)
        let b = vec![
            ChernSeries::from_factors(vec![Poly::y(1)], vec![Poly::x(1)], false, 8),
            ChernSeries::from_factors(vec![], vec![Poly::x(2)], false, 8),
            ChernSeries::from_factors(vec![Poly::y(3), Poly::z()], vec![], false, 8),
        ];
        for (l, m) in [([4, 2, 1], [1, 1, 0]), ([3, 3, 2], [2, 0, 0]), ([2, 1, 1], [0, 0, -1])] {
            let lt: Vec<i64> = m.iter().rev().map(|x| -x).collect();
            let mt: Vec<i64> = l.iter().rev().map(|x| -x).collect();
            let bt: Vec<ChernSeries> = b.iter().rev().cloned().collect();
            assert_eq!(
                schur_det_prime(&l, &m, &b).unwrap(),
                schur_det(&lt, &mt, &bt).unwrap()
            );
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn form() -> impl Strategy<Value = Poly> {
            prop_oneof![(1i32..4).prop_map(Poly::x), (1i32..4).prop_map(Poly::y), Just(Poly::z())]
        }

        fn series() -> impl Strategy<Value = ChernSeries> {
            (prop::collection::vec(form(), 0..2), prop::collection::vec(form(), 0..2))
                .prop_map(|(n, d)| ChernSeries::from_factors(n, d, false, 9))
        }

        fn seq(n: usize) -> impl Strategy<Value = Vec<i64>> {
            prop::collection::vec(-1i64..4, n)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(40))]

            #[test]
            fn row_linearity(a in prop::collection::vec(series(), 3), l in seq(3), m in seq(3),
                             k in 0usize..3, x in form()) {
                let mut at = a.clone();
                at[k] = a[k].mul(&ChernSeries::from_factors(vec![x.clone()], vec![], false, 9)).unwrap();
                let mut lt = l.clone();
                lt[k] -= 1;
                let lhs = schur_det(&l, &m, &at).unwrap();
                let rhs = &schur_det(&l, &m, &a).unwrap() + &(&x * &schur_det(&lt, &m, &a).unwrap());
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn column_linearity(b in prop::collection::vec(series(), 3), l in seq(3), m in seq(3),
                                k in 0usize..3, y in form()) {
                let mut bt = b.clone();
                bt[k] = b[k].mul(&ChernSeries::from_factors(vec![y.clone()], vec![], false, 9)).unwrap();
                let mut mt = m.clone();
                mt[k] += 1;
                let lhs = schur_det_prime(&l, &m, &bt).unwrap();
                let rhs = &schur_det_prime(&l, &m, &b).unwrap() + &(&y * &schur_det_prime(&l, &mt, &b).unwrap());
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn row_swap_antisymmetry(a in prop::collection::vec(series(), 3), l in seq(3), m in seq(3)) {
                // swapping rows i, i+1 with λ̄ swapped: λ'_i = λ_{i+1} − 1, λ'_{i+1} = λ_i + 1
                let mut a2 = a.clone();
                a2.swap(0, 1);
                let l2 = vec![l[1] - 1, l[0] + 1, l[2]];
                let lhs = schur_det(&l2, &m, &a2).unwrap();
                prop_assert_eq!(lhs, -schur_det(&l, &m, &a).unwrap());
            }
        }
    }
}
