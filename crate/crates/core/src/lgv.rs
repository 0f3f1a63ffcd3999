//! The lattice-path network behind the flagged-tableau theorem.
//!
//! Vertex `(a, b)` has a weight-1 edge to `(a + 1, b)` and, when the weight
//! is nonzero, an edge up to `(a, b + 1)`. Path `i` runs from
//! `(left, μ_i − i)` to `(right, λ_i − i)`; its vertical steps read left to
//! right are the entries of row `i` of the matching tableau.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::packed::Semiring;
use crate::ring::Poly;
use crate::tableaux::{Entry, FlagData, Tableau};

#[derive(Clone, Debug, Serialize)]
pub struct Network {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    /// source heights `μ_i − i`
    pub sources: Vec<i64>,
    /// target heights `λ_i − i`
    pub targets: Vec<i64>,
    pub left: i64,
    pub right: i64,
    pub lo: i64,
    pub hi: i64,
    /// `t` subtracted from `λ` and `μ` before placing the endpoints
    pub offset: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeRecord {
    pub a: i64,
    pub b: i64,
    pub weight: Poly,
}

/// How a vertical edge is labelled; its weight is `x_k`, `y_l` or `x_k + y_l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeLabel {
    Plain(i64),
    Primed(i64),
    Pair(i64, i64),
}

impl EdgeLabel {
    pub fn weight(self) -> Poly {
        match self {
            EdgeLabel::Plain(k) => Poly::x(k as i32),
            EdgeLabel::Primed(l) => Poly::y(l as i32),
            EdgeLabel::Pair(k, l) => &Poly::x(k as i32) + &Poly::y(l as i32),
        }
    }

    fn entry(self) -> Entry {
        match self {
            EdgeLabel::Plain(k) => Entry::Plain(k),
            EdgeLabel::Primed(l) => Entry::Primed(l),
            EdgeLabel::Pair(k, l) => Entry::Pair(k, l),
        }
    }
}

impl Network {
    /// Label of the edge `(a, b) → (a, b + 1)`:
    /// `y_{a+b+1}` for `a ≤ 0 ≤ a + b`; `x_a + y_{a+b+1}` for `a ≥ 1`, `a + b ≥ 0`
    /// and some row with `a ≤ p_i`, `a + b + 1 ≤ q_i`; `x_a` for `a ≥ 1 > a + b + 1`.
    pub fn label(&self, a: i64, b: i64) -> Option<EdgeLabel> {
        let l = a + b + 1;
        let rule1 = a <= 0 && a + b >= 0;
        let rule2 = a >= 1 && a + b >= 0 && self.p.iter().zip(&self.q).any(|(&p, &q)| a <= p && l <= q);
        let rule3 = a >= 1 && a + b < 0;
        debug_assert!(u8::from(rule1) + u8::from(rule2) + u8::from(rule3) <= 1);
        if rule1 {
            Some(EdgeLabel::Primed(l))
        } else if rule2 {
            Some(EdgeLabel::Pair(a, l))
        } else if rule3 {
            Some(EdgeLabel::Plain(a))
        } else {
            None
        }
    }

    pub fn vertical_weight(&self, a: i64, b: i64) -> Poly {
        self.label(a, b).map_or_else(Poly::zero, EdgeLabel::weight)
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    /// Weighted vertical edges inside the bounding box.
    pub fn edges(&self) -> Vec<EdgeRecord> {
        let mut out = Vec::new();
        for a in self.left..=self.right {
            for b in self.lo..self.hi {
                if self.label(a, b).is_some() {
                    out.push(EdgeRecord {
                        a,
                        b,
                        weight: self.vertical_weight(a, b),
                    });
                }
            }
        }
        out
    }

    /// Text picture of the columns that carry weighted edges: `|` for a
    /// weighted vertical edge above the vertex, `S`/`T` for endpoints.
    pub fn to_grid(&self) -> String {
        let first = (self.left..=self.right)
            .find(|&a| (self.lo..self.hi).any(|b| self.label(a, b).is_some()))
            .unwrap_or(self.right);
        let mut s = String::new();
        for b in (self.lo..=self.hi).rev() {
            s.push_str(&format!("{b:>4} "));
            s.push(if self.sources.contains(&b) { 'S' } else { ' ' });
            for a in first..=self.right {
                s.push(if b < self.hi && self.label(a, b).is_some() { '|' } else { '.' });
            }
            s.push(if self.targets.contains(&b) { 'T' } else { ' ' });
            s.push('\n');
        }
        s
    }

    /// Sum over single paths from `m` steps below `T_i` on the left boundary
    /// to `T_i` (`i` 1-based).
    pub fn flow_coefficient(&self, i: usize, m: i64) -> Poly {
        let target = self.targets[i - 1];
        self.single_path_sum(target - m, target)
    }

    fn single_path_sum(&self, from: i64, to: i64) -> Poly {
        if to < from {
            return Poly::zero();
        }
        // f[b - from] = weighted count of paths reaching (a, b)
        let mut f: Vec<Poly> = vec![Poly::zero(); (to - from + 1) as usize];
        f[0] = Poly::one();
        for a in self.left..=self.right {
            for b in from + 1..=to {
                let below = f[(b - from - 1) as usize].clone();
                if below.is_zero() {
                    continue;
                }
                if let Some(l) = self.label(a, b - 1) {
                    let add = &below * &l.weight();
                    f[(b - from) as usize] += &add;
                }
            }
        }
        f[(to - from) as usize].clone()
    }

    /// Visit every vertex-disjoint family, top path first.
    pub fn for_each_family(&self, mut visit: impl FnMut(&PathFamily)) {
        let n = self.len();
        let mut steps: Vec<Vec<(i64, i64)>> = vec![Vec::new(); n];
        let heights = self.sources.clone();
        self.sweep(self.left, &heights, &mut steps, &mut visit);
    }

    fn sweep(&self, a: i64, heights: &[i64], steps: &mut Vec<Vec<(i64, i64)>>, visit: &mut impl FnMut(&PathFamily)) {
        let mut choices = Vec::new();
        self.column_choices(a, heights, 0, &mut Vec::new(), &mut choices);
        for exits in choices {
            let marks: Vec<usize> = steps.iter().map(Vec::len).collect();
            for (i, (&h, &e)) in heights.iter().zip(&exits).enumerate() {
                steps[i].extend((h..e).map(|b| (a, b)));
            }
            if a == self.right {
                let labels = steps
                    .iter()
                    .map(|s| s.iter().map(|&(a, b)| self.label(a, b).expect("walked edges are weighted")).collect())
                    .collect();
                visit(&PathFamily {
                    steps: steps.clone(),
                    labels,
                });
            } else {
                self.sweep(a + 1, &exits, steps, visit);
            }
            for (s, m) in steps.iter_mut().zip(marks) {
                s.truncate(m);
            }
        }
    }

    /// Exit heights in column `a` for paths `i..`, given entry heights;
    /// path `i` climbs from `heights[i]` and must stay below the entry of path `i − 1`.
    fn column_choices(&self, a: i64, heights: &[i64], i: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == heights.len() {
            out.push(cur.clone());
            return;
        }
        let h = heights[i];
        let cap = if i == 0 { self.targets[0] } else { (heights[i - 1] - 1).min(self.targets[i]) };
        let mut e = h;
        loop {
            if e > cap {
                break;
            }
            if a != self.right || e == self.targets[i] {
                cur.push(e);
                self.column_choices(a, heights, i + 1, cur, out);
                cur.pop();
            }
            if self.label(a, e).is_none() {
                break;
            }
            e += 1;
        }
    }

    /// Σ over families of their weights.
    pub fn family_weight_sum(&self) -> Poly {
        self.family_weight_sum_with(&|l: EdgeLabel| l.weight())
    }

    /// Σ over families, choosing paths top to bottom. Ordered paths are
    /// disjoint exactly when each climbs strictly below the entry height of
    /// the path above it in every column, so only the path above matters.
    pub fn family_weight_sum_with<W: Semiring>(&self, w: &dyn Fn(EdgeLabel) -> W) -> W {
        let columns: Vec<HashMap<i64, W>> = (self.left..=self.right)
            .map(|a| (self.lo..self.hi).filter_map(|b| self.label(a, b).map(|l| (b, w(l)))).collect())
            .collect();
        let mut memo = HashMap::new();
        self.paths_from(0, None, &columns, &mut memo)
    }

    fn paths_from<W: Semiring>(
        &self,
        i: usize,
        above: Option<&[i64]>,
        columns: &[HashMap<i64, W>],
        memo: &mut HashMap<(usize, Vec<i64>), W>,
    ) -> W {
        if i == self.len() {
            return W::one();
        }
        let key = (i, above.map(<[i64]>::to_vec).unwrap_or_default());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut paths = Vec::new();
        self.single_paths(i, above, columns, 0, self.sources[i], &mut Vec::new(), W::one(), &mut paths);
        let mut total = W::zero();
        for (exits, weight) in paths {
            let rest = self.paths_from(i + 1, Some(&exits), columns, memo);
            if !rest.is_zero() {
                total.add_assign(&weight.mul(&rest));
            }
        }
        memo.insert(key, total.clone());
        total
    }

    /// Paths for row `i` as exit heights per column, with their weights.
    #[allow(clippy::too_many_arguments)]
    fn single_paths<W: Semiring>(
        &self,
        i: usize,
        above: Option<&[i64]>,
        columns: &[HashMap<i64, W>],
        col: usize,
        enter: i64,
        exits: &mut Vec<i64>,
        weight: W,
        out: &mut Vec<(Vec<i64>, W)>,
    ) {
        if col == columns.len() {
            out.push((exits.clone(), weight));
            return;
        }
        let target = self.targets[i];
        let cap = match above {
            Some(p) => {
                let above_enter = if col == 0 { self.sources[i - 1] } else { p[col - 1] };
                (above_enter - 1).min(target)
            }
            None => target,
        };
        let last = col + 1 == columns.len();
        let mut e = enter;
        let mut wt = weight;
        while e <= cap {
            if !last || e == target {
                exits.push(e);
                self.single_paths(i, above, columns, col + 1, e, exits, wt.clone(), out);
                exits.pop();
            }
            match columns[col].get(&e) {
                Some(step) => wt = wt.mul(step),
                None => break,
            }
            e += 1;
        }
    }

    pub fn nonintersecting_families(&self) -> Vec<PathFamily> {
        let mut out = Vec::new();
        self.for_each_family(|f| out.push(f.clone()));
        out
    }
}

/// Vertical steps `(a, b) → (a, b + 1)` of each path, in walking order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFamily {
    pub steps: Vec<Vec<(i64, i64)>>,
    pub labels: Vec<Vec<EdgeLabel>>,
}

impl PathFamily {
    pub fn path_weight(&self, i: usize) -> Poly {
        self.labels[i - 1].iter().fold(Poly::one(), |w, l| &w * &l.weight())
    }

    pub fn weight(&self) -> Poly {
        (1..=self.labels.len()).fold(Poly::one(), |w, i| &w * &self.path_weight(i))
    }

    /// Row `i` of the tableau lists the labels of path `i`.
    pub fn to_tableau(&self, lambda: &[i64], mu: &[i64]) -> Tableau {
        Tableau {
            lambda: lambda.to_vec(),
            mu: mu.to_vec(),
            shifted: false,
            rows: self.labels.iter().map(|r| r.iter().map(|l| l.entry()).collect()).collect(),
        }
    }

    /// No vertex is shared between two paths.
    pub fn is_disjoint(&self, net: &Network) -> bool {
        let mut seen = std::collections::HashSet::new();
        for (i, steps) in self.steps.iter().enumerate() {
            for v in path_vertices(net, net.sources[i], net.targets[i], steps) {
                if !seen.insert(v) {
                    return false;
                }
            }
        }
        true
    }
}

fn path_vertices(net: &Network, from: i64, to: i64, steps: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut out = vec![(net.left, from)];
    let (mut a, mut b) = (net.left, from);
    for &(sa, sb) in steps {
        while a < sa {
            a += 1;
            out.push((a, b));
        }
        debug_assert_eq!(sb, b);
        b += 1;
        out.push((a, b));
    }
    while a < net.right {
        a += 1;
        out.push((a, b));
    }
    debug_assert_eq!(b, to);
    out
}

/// The network for `λ/μ` with `λ_i = q_i − p_i + i + t`.
pub fn build_network(flags: &FlagData, lambda: &[i64], mu: &[i64]) -> Result<Network> {
    let t = flags.offset_of(lambda)?;
    build_network_at(flags, lambda, mu, t)
}

/// The network with an explicit offset `t` and `λ_i ≤ q_i − p_i + i + t`.
/// Path families compute the determinant only when every row but the last
/// sits at its top value: a lower target cuts the flow into it short.
pub fn build_network_at(flags: &FlagData, lambda: &[i64], mu: &[i64], t: i64) -> Result<Network> {
    let n = flags.len();
    if lambda.len() != n || mu.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: if lambda.len() != n { lambda.len() } else { mu.len() },
        });
    }
    for i in 1..=n {
        let top = flags.base(i) + t;
        if lambda[i - 1] > top {
            return Err(Error::InvalidShape(format!("λ_{i} = {} exceeds {top}", lambda[i - 1])));
        }
        if mu[i - 1] > lambda[i - 1] || (i < n && mu[i] > mu[i - 1]) {
            return Err(Error::InvalidShape(format!("{mu:?} is not weakly decreasing inside {lambda:?}")));
        }
    }
    if !crate::shapes::is_weakly_decreasing(lambda) {
        return Err(Error::InvalidShape(format!("{lambda:?} is not weakly decreasing")));
    }
    let sources: Vec<i64> = (0..n).map(|i| mu[i] - t - i as i64 - 1).collect();
    let targets: Vec<i64> = (0..n).map(|i| lambda[i] - t - i as i64 - 1).collect();
    let lo = sources.iter().copied().min().unwrap_or(0);
    let hi = targets.iter().copied().max().unwrap_or(0);
    let spread: i64 = lambda.iter().map(|l| (l - t).abs()).sum();
    // far enough left that no weighted vertical edge is cut off
    let left = (-hi - 2).min(lo - 1 - spread) - 1;
    let right = flags.p.iter().copied().max().unwrap_or(0).max(0);
    Ok(Network {
        p: flags.p.clone(),
        q: flags.q.clone(),
        sources,
        targets,
        left,
        right,
        lo,
        hi,
        offset: t,
    })
}
