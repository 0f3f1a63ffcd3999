//! Integer sequences, partitions, skew and shifted diagrams, border strips,
//! Frobenius coordinates and vexillary triples.
//!
//! Sequences are plain `Vec<i64>`; a partition is a weakly decreasing
//! nonnegative sequence (trailing zeros allowed), a strict partition a
//! strictly decreasing positive one.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};

pub fn is_weakly_decreasing(s: &[i64]) -> bool {
    s.windows(2).all(|w| w[0] >= w[1])
}

pub fn is_partition(s: &[i64]) -> bool {
    is_weakly_decreasing(s) && s.iter().all(|&x| x >= 0)
}

/// Strictly decreasing positive parts, ignoring trailing zeros.
pub fn is_strict(s: &[i64]) -> bool {
    let t = trim(s);
    is_partition(&t) && t.windows(2).all(|w| w[0] > w[1])
}

/// Drops trailing zeros.
pub fn trim(s: &[i64]) -> Vec<i64> {
    let mut v = s.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Pads with zeros to length `n` (never truncates).
pub fn pad(s: &[i64], n: usize) -> Vec<i64> {
    let mut v = s.to_vec();
    if v.len() < n {
        v.resize(n, 0);
    }
    v
}

pub fn size(s: &[i64]) -> i64 {
    s.iter().sum()
}

/// `κ ⊃ ρ` after both are sorted into decreasing order.
pub fn seq_contains(kappa: &[i64], rho: &[i64]) -> Result<bool> {
    if kappa.len() != rho.len() {
        return Err(Error::LengthMismatch {
            expected: kappa.len(),
            got: rho.len(),
        });
    }
    let (k, _) = sort_with_sign(kappa);
    let (r, _) = sort_with_sign(rho);
    Ok(k.iter().zip(&r).all(|(a, b)| a >= b))
}

/// `κ̄_i = κ_i − i` with 1-based `i`.
pub fn bar(kappa: &[i64]) -> Vec<i64> {
    kappa
        .iter()
        .enumerate()
        .map(|(i, &k)| k - i as i64 - 1)
        .collect()
}

/// Decreasing rearrangement and the sign of the stable sorting permutation.
pub fn sort_with_sign(kappa: &[i64]) -> (Vec<i64>, i32) {
    let mut inversions = 0usize;
    for i in 0..kappa.len() {
        for j in i + 1..kappa.len() {
            if kappa[i] < kappa[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = kappa.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    (sorted, if inversions.is_multiple_of(2) { 1 } else { -1 })
}

pub fn conjugate(lambda: &[i64]) -> Vec<i64> {
    let t = trim(lambda);
    let first = t.first().copied().unwrap_or(0);
    (1..=first)
        .map(|j| t.iter().filter(|&&x| x >= j).count() as i64)
        .collect()
}

/// Largest `d` with `λ_d ≥ d`.
pub fn durfee(lambda: &[i64]) -> usize {
    lambda
        .iter()
        .enumerate()
        .take_while(|(i, &x)| x > *i as i64)
        .count()
}

/// Frobenius coordinates `(α | β)` with `α_i = λ_i − i`, `β_i = λ'_i − i`.
pub fn frobenius(lambda: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let d = durfee(lambda);
    let conj = conjugate(lambda);
    let alpha = (0..d).map(|i| lambda[i] - i as i64 - 1).collect();
    let beta = (0..d).map(|i| conj[i] - i as i64 - 1).collect();
    (alpha, beta)
}

pub fn from_frobenius(alpha: &[i64], beta: &[i64]) -> Vec<i64> {
    let d = alpha.len();
    let rows = beta.first().map_or(0, |b| b + 1) as usize;
    let mut lambda = vec![0i64; rows.max(d)];
    for (i, a) in alpha.iter().enumerate() {
        lambda[i] = a + i as i64 + 1;
    }
    // below the diagonal, row i has one box in each column j with β_j ≥ i − j
    for (i, row) in lambda.iter_mut().enumerate().skip(d) {
        *row = beta.iter().enumerate().filter(|(j, &b)| b + *j as i64 >= i as i64).count() as i64;
    }
    trim(&lambda)
}

/// Boxes `(row, column)` of `λ/μ`, 1-based. Row `i` of a shifted diagram
/// starts in column `i`.
pub fn skew_boxes(lambda: &[i64], mu: &[i64], shifted: bool) -> Vec<(i64, i64)> {
    let mu = pad(mu, lambda.len());
    let mut out = Vec::new();
    for (i, (&l, &m)) in lambda.iter().zip(&mu).enumerate() {
        let row = i as i64 + 1;
        let offset = if shifted { i as i64 } else { 0 };
        for j in m + 1..=l {
            out.push((row, j + offset));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BorderStripRemoval {
    /// The remaining partition, without trailing zeros.
    pub mu: Vec<i64>,
    /// Lines between horizontally adjacent boxes.
    pub v: u32,
    /// Lines between vertically adjacent boxes.
    pub h: u32,
    /// Connected components.
    pub k: u32,
}

/// Statistics `(v, h, k)` of a set of boxes.
pub fn strip_statistics(boxes: &[(i64, i64)]) -> (u32, u32, u32) {
    let set: HashSet<(i64, i64)> = boxes.iter().copied().collect();
    let v = boxes.iter().filter(|&&(i, j)| set.contains(&(i, j + 1))).count() as u32;
    let h = boxes.iter().filter(|&&(i, j)| set.contains(&(i + 1, j))).count() as u32;
    let mut seen: HashSet<(i64, i64)> = HashSet::new();
    let mut k = 0;
    for &b in boxes {
        if !seen.insert(b) {
            continue;
        }
        k += 1;
        let mut stack = vec![b];
        while let Some((i, j)) = stack.pop() {
            for nb in [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)] {
                if set.contains(&nb) && seen.insert(nb) {
                    stack.push(nb);
                }
            }
        }
    }
    (v, h, k)
}

pub fn has_two_by_two(boxes: &[(i64, i64)]) -> bool {
    let set: HashSet<(i64, i64)> = boxes.iter().copied().collect();
    boxes.iter().any(|&(i, j)| {
        set.contains(&(i + 1, j)) && set.contains(&(i, j + 1)) && set.contains(&(i + 1, j + 1))
    })
}

/// All removals of a border strip from `λ`, including the empty one.
///
/// In the shifted case `μ` is strict and may be shorter than `λ` by at most
/// one row: a strip reaching the diagonal in two rows is excluded.
pub fn border_strips(lambda: &[i64], shifted: bool) -> Result<Vec<BorderStripRemoval>> {
    let lambda = trim(lambda);
    if !is_partition(&lambda) {
        return Err(Error::InvalidShape(format!("{lambda:?} is not a partition")));
    }
    if shifted && !is_strict(&lambda) {
        return Err(Error::InvalidShape(format!("{lambda:?} is not strict")));
    }
    let mut out = Vec::new();
    for mu in sub_partitions(&lambda) {
        let len_mu = trim(&mu).len();
        if shifted && (!is_strict(&mu) || len_mu + 1 < lambda.len()) {
            continue;
        }
        let boxes = skew_boxes(&lambda, &mu, shifted);
        if has_two_by_two(&boxes) {
            continue;
        }
        let (v, h, k) = strip_statistics(&boxes);
        out.push(BorderStripRemoval {
            mu: trim(&mu),
            v,
            h,
            k,
        });
    }
    Ok(out)
}

/// All partitions `μ ⊂ λ`, padded to the length of `λ`, in lexicographic order.
pub fn sub_partitions(lambda: &[i64]) -> Vec<Vec<i64>> {
    let lower = vec![0; lambda.len()];
    decreasing_between(&lower, lambda, false)
}

/// All sequences `s` with `lower ≤ s ≤ upper` entrywise that are weakly
/// (or, if `strict`, strictly) decreasing.
pub fn decreasing_between(lower: &[i64], upper: &[i64], strict: bool) -> Vec<Vec<i64>> {
    assert_eq!(lower.len(), upper.len());
    let n = lower.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(
        i: usize,
        lower: &[i64],
        upper: &[i64],
        strict: bool,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if i == lower.len() {
            out.push(cur.clone());
            return;
        }
        let mut hi = upper[i];
        if let Some(&prev) = cur.last() {
            hi = hi.min(if strict { prev - 1 } else { prev });
        }
        for v in lower[i]..=hi {
            cur.push(v);
            rec(i + 1, lower, upper, strict, cur, out);
            cur.pop();
        }
    }
    rec(0, lower, upper, strict, &mut cur, &mut out);
    out
}

/// All partitions of `n`, largest first in lexicographic order.
pub fn partitions_of(n: i64) -> Vec<Vec<i64>> {
    fn rec(rest: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn strict_partitions_of(n: i64) -> Vec<Vec<i64>> {
    partitions_of(n).into_iter().filter(|p| is_strict(p)).collect()
}

/// Distinct rearrangements of a multiset, in lexicographic order.
pub fn distinct_permutations(items: &[i64]) -> Vec<Vec<i64>> {
    let mut v = items.to_vec();
    v.sort();
    let mut out = vec![v.clone()];
    // next lexicographic permutation
    while let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) {
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
    out
}

/// Sign of the permutation carrying `from` to `to` by the fewest
/// transpositions; both must be rearrangements of one multiset.
///
/// Brute force over all matchings, so only for short sequences.
pub fn min_transposition_sign(from: &[i64], to: &[i64]) -> i32 {
    let n = from.len();
    assert!(n <= 9, "min_transposition_sign is exponential in the length");
    let mut best = usize::MAX;
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn cycles(perm: &[usize]) -> usize {
        let mut seen = vec![false; perm.len()];
        let mut c = 0;
        for i in 0..perm.len() {
            if !seen[i] {
                c += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = perm[j];
                }
            }
        }
        c
    }
    fn rec(
        from: &[i64],
        to: &[i64],
        perm: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut usize,
    ) {
        let i = perm.len();
        if i == from.len() {
            *best = (*best).min(from.len() - cycles(perm));
            return;
        }
        for j in 0..from.len() {
            if !used[j] && from[j] == to[i] {
                used[j] = true;
                perm.push(j);
                rec(from, to, perm, used, best);
                perm.pop();
                used[j] = false;
            }
        }
    }
    rec(from, to, &mut perm, &mut used, &mut best);
    assert!(best != usize::MAX, "not a rearrangement");
    if best % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Parity of the inversion count of `s` relative to decreasing order.
pub fn inversion_sign(s: &[i64]) -> i32 {
    sort_with_sign(s).1
}

/// A (weak) vexillary triple `τ = (k, p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triple {
    pub k: Vec<i64>,
    pub p: Vec<i64>,
    pub q: Vec<i64>,
}

/// How the middle rows `r < i < s` of a complete triple look.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BarCase {
    /// All middle `p_i, q_i ≥ 0`.
    Nonnegative,
    /// All middle `p_i, q_i ≤ 0`.
    Nonpositive,
    /// All middle `p_i = 0`, `q_i` of both signs.
    MixedQ,
    /// All middle `q_i = 0`, `p_i` of both signs.
    MixedP,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleBar {
    pub pbar: Vec<i64>,
    pub qbar: Vec<i64>,
    pub case: BarCase,
    /// Number of leading rows with `p < 0 < q`.
    pub r: usize,
    /// 1-based first row with `q < 0 < p`, or `n + 1`.
    pub s: usize,
}

impl Triple {
    pub fn new(k: Vec<i64>, p: Vec<i64>, q: Vec<i64>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidTriple(m.into()));
        if k.len() != p.len() || k.len() != q.len() {
            return bad("k, p, q must have equal length");
        }
        if k.first().is_some_and(|&k1| k1 <= 0) || k.windows(2).any(|w| w[0] >= w[1]) {
            return bad("k must be strictly increasing and positive");
        }
        if p.windows(2).any(|w| w[0] > w[1]) {
            return bad("p must be weakly increasing");
        }
        if q.windows(2).any(|w| w[0] < w[1]) {
            return bad("q must be weakly decreasing");
        }
        let t = Triple { k, p, q };
        let l = t.l();
        if !is_weakly_decreasing(&l) || l.last().is_some_and(|&x| x <= 0) {
            return bad("l_i = q_i - p_i + k_i must be weakly decreasing and positive");
        }
        Ok(t)
    }

    pub fn complete(p: Vec<i64>, q: Vec<i64>) -> Result<Self> {
        let k = (1..=p.len() as i64).collect();
        Self::new(k, p, q)
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    pub fn l(&self) -> Vec<i64> {
        (0..self.k.len())
            .map(|i| self.q[i] - self.p[i] + self.k[i])
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.k.iter().enumerate().all(|(i, &k)| k == i as i64 + 1)
    }

    /// `λ_k = l_i` for the minimal `i` with `k_i ≥ k`.
    pub fn partition(&self) -> Vec<i64> {
        let l = self.l();
        let n = self.k.last().copied().unwrap_or(0);
        (1..=n)
            .map(|kk| l[self.k.iter().position(|&ki| ki >= kk).unwrap()])
            .collect()
    }

    /// Index `i` (0-based) of the data governing row `kk` (1-based).
    pub fn row_source(&self, kk: i64) -> usize {
        self.k.iter().position(|&ki| ki >= kk).unwrap()
    }

    /// The strong triple obtained by dropping entries with `l_i = l_{i+1}`.
    pub fn strong(&self) -> Triple {
        let l = self.l();
        let keep: Vec<usize> = (0..l.len())
            .filter(|&i| i + 1 == l.len() || l[i] != l[i + 1])
            .collect();
        Triple {
            k: keep.iter().map(|&i| self.k[i]).collect(),
            p: keep.iter().map(|&i| self.p[i]).collect(),
            q: keep.iter().map(|&i| self.q[i]).collect(),
        }
    }

    /// The complete triple `τ̄` and the shape of the middle rows.
    pub fn bar(&self) -> Result<TripleBar> {
        if !self.is_complete() {
            return Err(Error::InvalidTriple("bar needs a complete triple".into()));
        }
        let n = self.len();
        let (p, q) = (&self.p, &self.q);
        let r = (1..=n).rev().find(|&i| p[i - 1] < 0 && q[i - 1] > 0).unwrap_or(0);
        let s = (1..=n).find(|&i| p[i - 1] > 0 && q[i - 1] < 0).unwrap_or(n + 1);
        let middle: Vec<usize> = (r + 1..s).map(|i| i - 1).collect();
        let case = if middle.iter().all(|&i| p[i] >= 0 && q[i] >= 0) {
            BarCase::Nonnegative
        } else if middle.iter().all(|&i| p[i] <= 0 && q[i] <= 0) {
            BarCase::Nonpositive
        } else if middle.iter().all(|&i| p[i] == 0) {
            BarCase::MixedQ
        } else if middle.iter().all(|&i| q[i] == 0) {
            BarCase::MixedP
        } else {
            unreachable!("middle rows of a triple are sign-coherent")
        };
        let mut pbar = Vec::with_capacity(n);
        let mut qbar = Vec::with_capacity(n);
        // the nonpositive case mirrors the outer rows so that τ̄ ≤ 0 throughout
        let mirror = case == BarCase::Nonpositive;
        for i in 1..=n {
            let (pi, qi) = (p[i - 1], q[i - 1]);
            let (pb, qb) = if r < i && i < s {
                (pi, qi)
            } else if (i <= r) != mirror {
                (0, qi - pi)
            } else {
                (pi - qi, 0)
            };
            pbar.push(pb);
            qbar.push(qb);
        }
        Ok(TripleBar {
            pbar,
            qbar,
            case,
            r,
            s,
        })
    }
}

/// Sorted set of all entries of several sequences; handy for window bounds.
pub fn value_range(seqs: &[&[i64]]) -> Option<(i64, i64)> {
    let all: BTreeSet<i64> = seqs.iter().flat_map(|s| s.iter().copied()).collect();
    Some((*all.first()?, *all.last()?))
}
