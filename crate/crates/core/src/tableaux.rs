//! Tableau families and their weight generating functions.
//!
//! Every family here is generated by one row-by-row engine: boxes are visited
//! row after row, each box has a fixed candidate list, and a candidate is
//! accepted by comparing it with the previously visited box in its row and
//! with the box at the same column in the previously visited row.

use std::collections::{BTreeMap, HashMap};

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::packed::{PackedPoly, Semiring, VarTable};
use crate::ring::{Integer, Poly};
use crate::series::ChernSeries;
use crate::shapes::{border_strips, conjugate, durfee, is_strict, is_weakly_decreasing, skew_boxes, trim};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    Plain(i64),
    Primed(i64),
    Pair(i64, i64),
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match *self {
            Entry::Plain(k) => m.serialize_entry("k", &k)?,
            Entry::Primed(l) => m.serialize_entry("l", &l)?,
            Entry::Pair(k, l) => {
                m.serialize_entry("k", &k)?;
                m.serialize_entry("l", &l)?;
            }
        }
        m.end()
    }
}

impl std::fmt::Display for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Entry::Plain(k) => write!(f, "{k}"),
            Entry::Primed(l) => write!(f, "{l}'"),
            Entry::Pair(k, l) => write!(f, "{k},{l}'"),
        }
    }
}

/// One row's boxes as `(column, entry)`.
type RowFilling = Vec<(i64, Entry)>;

/// A filling of `λ/μ`; `rows[i]` holds the boxes of row `i + 1` left to right,
/// starting at column `μ_{i+1} + 1` (or at the shifted column when `shifted`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub shifted: bool,
    pub rows: Vec<Vec<Entry>>,
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

impl Tableau {
    /// Column of the first box in row `i` (0-based row index).
    pub fn first_column(&self, i: usize) -> i64 {
        self.mu[i] + 1 + if self.shifted { i as i64 } else { 0 }
    }

    /// `((row, column), entry)` with 1-based rows.
    pub fn boxes(&self) -> impl Iterator<Item = ((i64, i64), Entry)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(i, row)| {
            let start = self.first_column(i);
            row.iter().enumerate().map(move |(j, &e)| ((i as i64 + 1, start + j as i64), e))
        })
    }

    pub fn get(&self, i: i64, j: i64) -> Option<Entry> {
        if i < 1 || i as usize > self.rows.len() {
            return None;
        }
        let row = &self.rows[i as usize - 1];
        let off = j - self.first_column(i as usize - 1);
        (off >= 0 && (off as usize) < row.len()).then(|| row[off as usize])
    }

    pub fn weight_with(&self, plain: impl Fn(i64) -> Poly, primed: impl Fn(i64) -> Poly) -> Poly {
        let mut w = Poly::one();
        for (_, e) in self.boxes() {
            let f = entry_weight(&e, &plain, &primed);
            w = &w * &f;
        }
        w
    }

    /// `k ↦ x_k`, `l′ ↦ y_l`, `(k, l′) ↦ x_k + y_l`.
    pub fn weight(&self) -> Poly {
        self.weight_with(|k| Poly::x(k as i32), |l| Poly::y(l as i32))
    }

    pub fn rotate(&self) -> Tableau {
        let n = self.rows.len();
        Tableau {
            lambda: (0..n).map(|i| -self.mu[n - 1 - i]).collect(),
            mu: (0..n).map(|i| -self.lambda[n - 1 - i]).collect(),
            shifted: false,
            rows: self.rows.iter().rev().map(|r| r.iter().rev().copied().collect()).collect(),
        }
    }
}

impl std::fmt::Display for Tableau {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let lo = (0..self.rows.len()).map(|i| self.first_column(i)).min().unwrap_or(1);
        for (i, row) in self.rows.iter().enumerate() {
            let pad = (self.first_column(i) - lo) as usize;
            let cells: Vec<String> = row.iter().map(|e| format!("{e:>5}")).collect();
            writeln!(f, "{}{}", " ".repeat(5 * pad), cells.join(""))?;
        }
        Ok(())
    }
}

fn entry_weight<W: Semiring>(e: &Entry, plain: &impl Fn(i64) -> W, primed: &impl Fn(i64) -> W) -> W {
    match *e {
        Entry::Plain(k) => plain(k),
        Entry::Primed(l) => primed(l),
        Entry::Pair(k, l) => {
            let mut w = plain(k);
            w.add_assign(&primed(l));
            w
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rel {
    /// the candidate follows the reference box in its row
    Row,
    /// the candidate lies under the reference box
    Col,
}

type Rule = fn(&Entry, &Entry, Rel) -> bool;

/// Flagged-tableau ordering: `prev` is left of or above `e`.
fn flagged_rule(prev: &Entry, e: &Entry, rel: Rel) -> bool {
    use Entry::*;
    match (rel, *prev, *e) {
        (Rel::Row, Plain(a), Plain(k) | Pair(k, _)) => k >= a,
        (Rel::Row, Primed(a), Primed(l) | Pair(_, l)) => l > a,
        (Rel::Row, Pair(a, b), Pair(k, l)) => k >= a && l - b == k - a + 1,
        (Rel::Col, Plain(a), Plain(k) | Pair(k, _)) => k > a,
        (Rel::Col, Primed(a), Primed(l) | Pair(_, l)) => l >= a,
        (Rel::Col, Pair(a, b), Pair(k, l)) => k > a && l - b == k - a - 1,
        _ => false,
    }
}

fn primed_order(e: &Entry) -> i64 {
    match *e {
        Entry::Primed(k) => 2 * k - 1,
        Entry::Plain(k) => 2 * k,
        Entry::Pair(..) => unreachable!("primed tableaux have no pairs"),
    }
}

/// `1′ < 1 < 2′ < …`, weak in rows and columns, no `k′` twice in a row and no
/// `k` twice in a column.
fn primed_rule(prev: &Entry, e: &Entry, rel: Rel) -> bool {
    let (a, b) = (primed_order(prev), primed_order(e));
    if a > b {
        return false;
    }
    match rel {
        Rel::Row => !(a == b && matches!(e, Entry::Primed(_))),
        Rel::Col => !(a == b && matches!(e, Entry::Plain(_))),
    }
}

/// Durfee fillings: `Plain` marks boxes right of the diagonal (strict in rows,
/// weak in columns), `Primed` boxes below it (weak in rows, strict in columns).
/// The two regions never touch.
fn durfee_rule(prev: &Entry, e: &Entry, rel: Rel) -> bool {
    match (*prev, *e, rel) {
        (Entry::Plain(a), Entry::Plain(b), Rel::Row) => b > a,
        (Entry::Plain(a), Entry::Plain(b), Rel::Col) => b >= a,
        (Entry::Primed(a), Entry::Primed(b), Rel::Row) => b >= a,
        (Entry::Primed(a), Entry::Primed(b), Rel::Col) => b > a,
        _ => false,
    }
}

/// Boxes of a skew shape arranged for row-by-row generation.
struct Engine {
    /// rows in visiting order; boxes within a row in visiting order
    rows: Vec<EngineRow>,
    rule: Rule,
    template: Tableau,
}

struct EngineRow {
    /// 0-based index of the row in the tableau
    index: usize,
    cols: Vec<i64>,
    cands: Vec<Vec<Entry>>,
}

impl Engine {
    fn new(template: Tableau, rule: Rule, reversed: bool, cands: impl Fn(i64, i64) -> Vec<Entry>) -> Engine {
        let n = template.rows.len();
        let mut rows = Vec::with_capacity(n);
        for idx in 0..n {
            let len = template.rows[idx].len() as i64;
            let start = template.first_column(idx);
            let mut cols: Vec<i64> = (start..start + len).collect();
            if reversed {
                cols.reverse();
            }
            let cands = cols.iter().map(|&j| cands(idx as i64 + 1, j)).collect();
            rows.push(EngineRow { index: idx, cols, cands });
        }
        if reversed {
            rows.reverse();
        }
        Engine {
            rows,
            rule,
            template,
        }
    }

    /// All valid fillings of row `r` given the filling of the previously
    /// visited row, as `(column, entry)` lists.
    fn row_fillings(&self, r: usize, prev: &[(i64, Entry)]) -> Vec<Vec<(i64, Entry)>> {
        let row = &self.rows[r];
        let mut out = Vec::new();
        let mut cur: Vec<(i64, Entry)> = Vec::with_capacity(row.cols.len());
        self.fill_row(row, prev, &mut cur, &mut out);
        out
    }

    fn fill_row(&self, row: &EngineRow, prev: &[(i64, Entry)], cur: &mut Vec<(i64, Entry)>, out: &mut Vec<Vec<(i64, Entry)>>) {
        let pos = cur.len();
        if pos == row.cols.len() {
            out.push(cur.clone());
            return;
        }
        let j = row.cols[pos];
        let above = prev.iter().find(|(c, _)| *c == j).map(|(_, e)| *e);
        for e in &row.cands[pos] {
            if let Some((_, left)) = cur.last() {
                if !(self.rule)(left, e, Rel::Row) {
                    continue;
                }
            }
            if let Some(a) = above {
                if !(self.rule)(&a, e, Rel::Col) {
                    continue;
                }
            }
            cur.push((j, *e));
            self.fill_row(row, prev, cur, out);
            cur.pop();
        }
    }

    /// Σ over all fillings of the product of entry weights, memoized on the
    /// previous row's filling.
    fn weight_sum<W: Semiring>(&self, w: &dyn Fn(&Entry) -> W) -> W {
        let mut memo: HashMap<(usize, Vec<(i64, Entry)>), W> = HashMap::new();
        self.weight_from(0, Vec::new(), w, &mut memo)
    }

    fn weight_from<W: Semiring>(
        &self,
        r: usize,
        prev: Vec<(i64, Entry)>,
        w: &dyn Fn(&Entry) -> W,
        memo: &mut HashMap<(usize, RowFilling), W>,
    ) -> W {
        if r == self.rows.len() {
            return W::one();
        }
        // only the overlap with this row's columns matters
        let cols = &self.rows[r].cols;
        let key_prev: Vec<(i64, Entry)> = prev.into_iter().filter(|(c, _)| cols.contains(c)).collect();
        let key = (r, key_prev);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut total = W::zero();
        for filling in self.row_fillings(r, &key.1) {
            let rest = self.weight_from(r + 1, filling.clone(), w, memo);
            if rest.is_zero() {
                continue;
            }
            let mut prod = rest;
            for (_, e) in &filling {
                prod = prod.mul(&w(e));
            }
            total.add_assign(&prod);
        }
        memo.insert(key, total.clone());
        total
    }

    fn count(&self) -> Integer {
        let sum: Poly = self.weight_sum(&|_| Poly::one());
        sum.as_constant().unwrap_or(Integer::ZERO)
    }

    fn iter(self) -> TableauIter {
        TableauIter {
            engine: self,
            stack: Vec::new(),
            started: false,
            done: false,
        }
    }
}

/// Lazy depth-first enumeration over rows.
pub struct TableauIter {
    engine: Engine,
    /// per visited row: its fillings and the index of the current one
    stack: Vec<(Vec<RowFilling>, usize)>,
    started: bool,
    done: bool,
}

impl TableauIter {
    fn current(&self) -> Tableau {
        let mut t = self.engine.template.clone();
        for (r, (fills, at)) in self.stack.iter().enumerate() {
            let idx = self.engine.rows[r].index;
            let mut row: Vec<(i64, Entry)> = fills[*at].clone();
            row.sort_by_key(|(c, _)| *c);
            t.rows[idx] = row.into_iter().map(|(_, e)| e).collect();
        }
        t
    }

    fn prev_row(&self) -> Vec<(i64, Entry)> {
        self.stack.last().map(|(f, at)| f[*at].clone()).unwrap_or_default()
    }

    /// Push rows until the stack is full, backtracking past dead ends.
    fn descend(&mut self) -> bool {
        loop {
            let r = self.stack.len();
            if r == self.engine.rows.len() {
                return true;
            }
            let fills = self.engine.row_fillings(r, &self.prev_row());
            if fills.is_empty() {
                if !self.bump() {
                    return false;
                }
            } else {
                self.stack.push((fills, 0));
            }
        }
    }

    /// Advance the deepest row that has another filling.
    fn bump(&mut self) -> bool {
        while let Some((fills, at)) = self.stack.last_mut() {
            if *at + 1 < fills.len() {
                *at += 1;
                return true;
            }
            self.stack.pop();
        }
        false
    }
}

impl Iterator for TableauIter {
    type Item = Tableau;

    fn next(&mut self) -> Option<Tableau> {
        if self.done {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            self.descend()
        } else if self.engine.rows.is_empty() {
            false
        } else {
            self.bump() && self.descend()
        };
        if ok {
            Some(self.current())
        } else {
            self.done = true;
            None
        }
    }
}

/// Flag sequences for the flagged-tableau theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagData {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
}

impl FlagData {
    /// `p` weakly increasing, `q` weakly decreasing, both nonnegative, and at
    /// each step at least one of them moves.
    pub fn new(p: Vec<i64>, q: Vec<i64>) -> Result<Self> {
        Self::checked(p, q, false)
    }

    /// Flags for dual tableaux: `p` weakly decreasing, `q` weakly increasing.
    pub fn new_dual(p: Vec<i64>, q: Vec<i64>) -> Result<Self> {
        Self::checked(p, q, true)
    }

    fn checked(p: Vec<i64>, q: Vec<i64>, dual: bool) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::LengthMismatch {
                expected: p.len(),
                got: q.len(),
            });
        }
        if p.iter().chain(&q).any(|&v| v < 0) {
            return Err(Error::InvalidFlags("flags must be nonnegative".into()));
        }
        for i in 1..p.len() {
            let (dp, dq) = if dual {
                (p[i - 1] - p[i], q[i] - q[i - 1])
            } else {
                (p[i] - p[i - 1], q[i - 1] - q[i])
            };
            if dp < 0 || dq < 0 || (dp == 0 && dq == 0) {
                return Err(Error::InvalidFlags(format!("flags p={p:?}, q={q:?} fail monotonicity at step {i}")));
            }
        }
        Ok(FlagData { p, q })
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// `Π_{b ≤ q_i}(1 + y_b t) / Π_{a ≤ p_i}(1 − x_a t)`, `i` 1-based.
    pub fn series(&self, i: usize, cutoff: usize) -> ChernSeries {
        ChernSeries::from_factors(
            (1..=self.q[i - 1]).map(|b| Poly::y(b as i32)).collect(),
            (1..=self.p[i - 1]).map(|a| Poly::x(a as i32)).collect(),
            false,
            cutoff,
        )
    }

    pub fn all_series(&self, cutoff: usize) -> Vec<ChernSeries> {
        (1..=self.len()).map(|i| self.series(i, cutoff)).collect()
    }

    /// `q_i − p_i + i`.
    pub fn base(&self, i: usize) -> i64 {
        self.q[i - 1] - self.p[i - 1] + i as i64
    }

    /// The `t` with `λ_i = q_i − p_i + i + t` for every `i`.
    pub fn offset_of(&self, lambda: &[i64]) -> Result<i64> {
        self.common_offset(lambda, |i| self.base(i))
    }

    /// The `t` with `μ_i = p_i − q_i + i + t` for every `i`.
    pub fn dual_offset_of(&self, mu: &[i64]) -> Result<i64> {
        self.common_offset(mu, |i| self.p[i - 1] - self.q[i - 1] + i as i64)
    }

    fn common_offset(&self, seq: &[i64], base: impl Fn(usize) -> i64) -> Result<i64> {
        if seq.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: seq.len(),
            });
        }
        if seq.is_empty() {
            return Ok(0);
        }
        let t = seq[0] - base(1);
        if (1..=seq.len()).any(|i| seq[i - 1] - base(i) != t) {
            return Err(Error::InvalidShape(format!("{seq:?} is not q − p + i + t for the given flags")));
        }
        Ok(t)
    }
}

fn check_skew(lambda: &[i64], mu: &[i64]) -> Result<()> {
    if lambda.len() != mu.len() {
        return Err(Error::LengthMismatch {
            expected: lambda.len(),
            got: mu.len(),
        });
    }
    if !is_weakly_decreasing(lambda) || !is_weakly_decreasing(mu) || mu.iter().zip(lambda).any(|(m, l)| m > l) {
        return Err(Error::InvalidShape(format!("{lambda:?}/{mu:?} is not a skew shape")));
    }
    Ok(())
}

fn empty_template(lambda: &[i64], mu: &[i64], shifted: bool) -> Tableau {
    Tableau {
        lambda: lambda.to_vec(),
        mu: mu.to_vec(),
        shifted,
        rows: lambda
            .iter()
            .zip(mu)
            .map(|(l, m)| vec![Entry::Plain(0); (l - m) as usize])
            .collect(),
    }
}

/// Candidates at box `(i, j)` of content `c = j − i − t`: plain `k` with
/// `k + c ≤ 0`, primed `l` with `l ≤ c`, pairs with `l − k = c`.
fn flagged_candidates(flags: &FlagData, i: i64, j: i64, t: i64) -> Vec<Entry> {
    let c = j - i - t;
    let (p, q) = (flags.p[i as usize - 1], flags.q[i as usize - 1]);
    let mut out: Vec<Entry> = (1..=p.min(-c)).map(Entry::Plain).collect();
    out.extend((1..=q.min(c)).map(Entry::Primed));
    out.extend((1..=p).filter(|k| (1..=q).contains(&(k + c))).map(|k| Entry::Pair(k, k + c)));
    out
}

/// Dual candidates at content `c = j − i − t`: plain `k ≤ c − 1`, primed
/// `l ≤ 1 − c`, pairs with `l − k = 1 − c`.
fn dual_candidates(flags: &FlagData, i: i64, j: i64, t: i64) -> Vec<Entry> {
    let c = j - i - t;
    let (p, q) = (flags.p[i as usize - 1], flags.q[i as usize - 1]);
    let mut out: Vec<Entry> = (1..=p.min(c - 1)).map(Entry::Plain).collect();
    out.extend((1..=q.min(1 - c)).map(Entry::Primed));
    out.extend((1..=p).filter(|k| (1..=q).contains(&(k + 1 - c))).map(|k| Entry::Pair(k, k + 1 - c)));
    out
}

fn flagged_engine(lambda: &[i64], mu: &[i64], flags: &FlagData, t: i64) -> Result<Engine> {
    check_skew(lambda, mu)?;
    if flags.len() != lambda.len() {
        return Err(Error::LengthMismatch {
            expected: lambda.len(),
            got: flags.len(),
        });
    }
    let f = flags.clone();
    Ok(Engine::new(empty_template(lambda, mu, false), flagged_rule, false, move |i, j| {
        flagged_candidates(&f, i, j, t)
    }))
}

/// Tableaux on `λ/μ` for the flags, with `λ_i = q_i − p_i + i + t`.
pub fn flagged_tableaux(lambda: &[i64], mu: &[i64], flags: &FlagData) -> Result<TableauIter> {
    let t = flags.offset_of(lambda)?;
    Ok(flagged_engine(lambda, mu, flags, t)?.iter())
}

/// Σ weights of all flagged tableaux, without materializing them.
pub fn flagged_weight_sum(lambda: &[i64], mu: &[i64], flags: &FlagData) -> Result<Poly> {
    let t = flags.offset_of(lambda)?;
    flagged_weight_sum_with(lambda, mu, flags, t, &|k| Poly::x(k as i32), &|l| Poly::y(l as i32))
}

/// Σ weights with explicit offset and variable maps for plain and primed parts.
pub fn flagged_weight_sum_with<W: Semiring>(
    lambda: &[i64],
    mu: &[i64],
    flags: &FlagData,
    t: i64,
    plain: &dyn Fn(i64) -> W,
    primed: &dyn Fn(i64) -> W,
) -> Result<W> {
    let engine = flagged_engine(lambda, mu, flags, t)?;
    Ok(engine.weight_sum(&|e| entry_weight(e, &plain, &primed)))
}

/// Number of flagged tableaux, counted without materializing them.
pub fn flagged_count(lambda: &[i64], mu: &[i64], flags: &FlagData) -> Result<Integer> {
    let t = flags.offset_of(lambda)?;
    let engine = flagged_engine(lambda, mu, flags, t)?;
    let total = engine.weight_sum(&|_| PackedPoly::one());
    Ok(VarTable::new(Vec::new()).unpack(&total).as_constant().unwrap_or(Integer::ZERO))
}

fn dual_engine(lambda: &[i64], mu: &[i64], flags: &FlagData) -> Result<Engine> {
    check_skew(lambda, mu)?;
    let t = flags.dual_offset_of(mu)?;
    let f = flags.clone();
    Ok(Engine::new(empty_template(lambda, mu, false), flagged_rule, true, move |i, j| {
        dual_candidates(&f, i, j, t)
    }))
}

/// Dual tableaux on `λ/μ` with `μ_i = p_i − q_i + i + t`; every ordering
/// condition is reversed, so generation runs from the bottom-right box.
pub fn dual_tableaux(lambda: &[i64], mu: &[i64], flags: &FlagData) -> Result<TableauIter> {
    Ok(dual_engine(lambda, mu, flags)?.iter())
}

pub fn dual_weight_sum_with(
    lambda: &[i64],
    mu: &[i64],
    flags: &FlagData,
    plain: &dyn Fn(i64) -> Poly,
    primed: &dyn Fn(i64) -> Poly,
) -> Result<Poly> {
    let engine = dual_engine(lambda, mu, flags)?;
    Ok(engine.weight_sum(&|e| entry_weight(e, &plain, &primed)))
}

fn primed_engine(lambda: &[i64], mu: &[i64], m: i64, shifted: bool) -> Result<Engine> {
    let n = lambda.len();
    let mu = crate::shapes::pad(&trim(mu), n);
    check_skew(lambda, &mu)?;
    if lambda.iter().any(|&l| l < 0) {
        return Err(Error::InvalidShape(format!("{lambda:?} is not a partition")));
    }
    if shifted && !(is_strict(lambda) && is_strict(&mu)) {
        return Err(Error::InvalidShape(format!("shifted shape {lambda:?}/{mu:?} needs strict partitions")));
    }
    let cands: Vec<Entry> = (1..=m).flat_map(|k| [Entry::Primed(k), Entry::Plain(k)]).collect();
    Ok(Engine::new(empty_template(lambda, &mu, shifted), primed_rule, false, move |_, _| cands.clone()))
}

/// Fillings by `1′ < 1 < … < m′ < m` of `λ/μ`, shifted or not.
pub fn primed_tableaux(lambda: &[i64], mu: &[i64], m: i64, shifted: bool) -> Result<TableauIter> {
    Ok(primed_engine(lambda, mu, m, shifted)?.iter())
}

/// Σ over primed tableaux of `Π plain(k) · Π primed(k)`.
pub fn primed_weight_sum_with(
    lambda: &[i64],
    mu: &[i64],
    m: i64,
    shifted: bool,
    plain: &dyn Fn(i64) -> Poly,
    primed: &dyn Fn(i64) -> Poly,
) -> Result<Poly> {
    let engine = primed_engine(lambda, mu, m, shifted)?;
    Ok(engine.weight_sum(&|e| entry_weight(e, &plain, &primed)))
}

pub fn primed_weight_sum(lambda: &[i64], mu: &[i64], m: i64, shifted: bool) -> Result<Poly> {
    primed_weight_sum_with(lambda, mu, m, shifted, &|k| Poly::x(k as i32), &|k| Poly::y(k as i32))
}

/// `μ ↦ x^v y^h (x + y)^k` over border-strip removals from `λ`, `μ = λ` included.
pub fn border_strip_expansion(lambda: &[i64], x: &Poly, y: &Poly, shifted: bool) -> Result<BTreeMap<Vec<i64>, Poly>> {
    let xy = x + y;
    let mut out = BTreeMap::new();
    for s in border_strips(lambda, shifted)? {
        let coeff = &(&x.pow(s.v) * &y.pow(s.h)) * &xy.pow(s.k);
        out.insert(trim(&s.mu), coeff);
    }
    Ok(out)
}

/// `N(λ/μ)` and `z^{boxes right of the diagonal} (−z)^{boxes below it}`.
pub fn durfee_tableaux(lambda: &[i64], mu: &[i64]) -> Result<(Integer, Poly)> {
    let n = lambda.len();
    let mu = crate::shapes::pad(&trim(mu), n);
    check_skew(lambda, &mu)?;
    let d = durfee(lambda);
    if durfee(&mu) != d {
        return Err(Error::InvalidShape(format!("{lambda:?} and {mu:?} have different Durfee squares")));
    }
    let conj = conjugate(lambda);
    let lam = lambda.to_vec();
    let bound_row = move |i: i64| lam[i as usize - 1] - i;
    let bound_col = move |j: i64| conj.get(j as usize - 1).copied().unwrap_or(0) - j;
    let engine = Engine::new(empty_template(lambda, &mu, false), durfee_rule, false, move |i, j| {
        if j > i {
            (1..=bound_row(i)).map(Entry::Plain).collect()
        } else {
            (1..=bound_col(j)).map(Entry::Primed).collect()
        }
    });
    let boxes = skew_boxes(lambda, &mu, false);
    let above = boxes.iter().filter(|(i, j)| j > i).count() as u32;
    let below = boxes.len() as u32 - above;
    let mono = &Poly::z().pow(above) * &(-Poly::z()).pow(below);
    Ok((engine.count(), mono))
}

/// Independent check of a flagged (or dual) tableau against every rule.
pub fn validate_flagged(tab: &Tableau, flags: &FlagData, t: i64, dual: bool) -> std::result::Result<(), String> {
    for ((i, j), e) in tab.boxes() {
        let c = j - i - t;
        let (p, q) = (flags.p[i as usize - 1], flags.q[i as usize - 1]);
        let (k, l) = match e {
            Entry::Plain(k) => (Some(k), None),
            Entry::Primed(l) => (None, Some(l)),
            Entry::Pair(k, l) => (Some(k), Some(l)),
        };
        if k.is_some_and(|k| !(1..=p).contains(&k)) || l.is_some_and(|l| !(1..=q).contains(&l)) {
            return Err(format!("entry {e} out of flag range in row {i}"));
        }
        let content_ok = match (e, dual) {
            (Entry::Plain(k), false) => k + c <= 0,
            (Entry::Primed(l), false) => l <= c,
            (Entry::Pair(k, l), false) => l - k == c,
            (Entry::Plain(k), true) => k < c,
            (Entry::Primed(l), true) => l <= 1 - c,
            (Entry::Pair(k, l), true) => l - k == 1 - c,
        };
        if !content_ok {
            return Err(format!("entry {e} at ({i},{j}) has the wrong content"));
        }
        // neighbours that must be "later" in the ordering
        let dir = if dual { -1 } else { 1 };
        for (ni, nj, along_row) in [(i, j + dir, true), (i + dir, j, false)] {
            let Some(f) = tab.get(ni, nj) else { continue };
            let fine = match (e, f) {
                (Entry::Plain(a), Entry::Plain(b) | Entry::Pair(b, _)) => if along_row { b >= a } else { b > a },
                (Entry::Primed(a), Entry::Primed(b) | Entry::Pair(_, b)) => if along_row { b > a } else { b >= a },
                (Entry::Pair(a, b), Entry::Pair(k2, l2)) => {
                    let m = k2 - a - if along_row { 0 } else { 1 };
                    m >= 0 && l2 == b + m + if along_row { 1 } else { 0 }
                }
                _ => false,
            };
            if !fine {
                return Err(format!("entries {e} and {f} at ({i},{j}),({ni},{nj}) break the ordering"));
            }
        }
    }
    Ok(())
}

/// Independent check of a primed tableau.
pub fn validate_primed(tab: &Tableau, m: i64) -> std::result::Result<(), String> {
    let rank = |e: Entry| match e {
        Entry::Primed(k) if (1..=m).contains(&k) => Ok(2 * k - 1),
        Entry::Plain(k) if (1..=m).contains(&k) => Ok(2 * k),
        other => Err(format!("entry {other} not in the alphabet")),
    };
    for ((i, j), e) in tab.boxes() {
        let r = rank(e)?;
        if let Some(f) = tab.get(i, j + 1) {
            let s = rank(f)?;
            if s < r || (s == r && r % 2 == 1) {
                return Err(format!("row {i} breaks at column {j}"));
            }
        }
        if let Some(f) = tab.get(i + 1, j) {
            let s = rank(f)?;
            if s < r || (s == r && r % 2 == 0) {
                return Err(format!("column {j} breaks at row {i}"));
            }
        }
    }
    Ok(())
}

/// The seven-row worked instance of the flagged-tableau identity.
pub mod figure1 {
    use super::*;

    pub const P: [i64; 7] = [0, 0, 1, 3, 3, 5, 6];
    pub const Q: [i64; 7] = [9, 7, 6, 4, 2, 0, 0];
    pub const LAMBDA: [i64; 7] = [10, 9, 8, 5, 4, 1, 1];
    pub const MU: [i64; 7] = [6, 4, 4, 1, 0, 0, 0];

    pub fn flags() -> FlagData {
        FlagData::new(P.to_vec(), Q.to_vec()).expect("instance flags are valid")
    }

    /// A tableau known to occur in the instance.
    pub fn displayed() -> Tableau {
        use Entry::*;
        Tableau {
            lambda: LAMBDA.to_vec(),
            mu: MU.to_vec(),
            shifted: false,
            rows: vec![
                vec![Primed(2), Primed(4), Primed(5), Primed(9)],
                vec![Primed(1), Primed(2), Primed(3), Primed(4), Primed(7)],
                vec![Primed(1), Primed(3), Pair(1, 5), Pair(1, 6)],
                vec![Plain(1), Plain(1), Pair(2, 2), Pair(3, 4)],
                vec![Plain(1), Plain(2), Pair(3, 1), Pair(3, 2)],
                vec![Plain(3)],
                vec![Plain(4)],
            ],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::{schur_det, schur_det_prime};
    use crate::shapes::{decreasing_between, pad};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn all_flags(n: usize, max: i64) -> Vec<FlagData> {
        let mut out = Vec::new();
        let ps = decreasing_between(&vec![-max; n], &vec![0; n], false);
        let qs = decreasing_between(&vec![0; n], &vec![max; n], false);
        for pn in &ps {
            let pv: Vec<i64> = pn.iter().map(|v| -v).collect();
            for qv in &qs {
                if let Ok(f) = FlagData::new(pv.clone(), qv.clone()) {
                    out.push(f);
                }
            }
        }
        out
    }

    #[test]
    fn figure1_tableau_is_generated() {
        let f = figure1::flags();
        let d = figure1::displayed();
        validate_flagged(&d, &f, 0, false).unwrap();
        assert_eq!(d.rows[2].iter().fold(Poly::one(), |w, e| &w * &entry_weight(e, &|k| Poly::x(k as i32), &|l| Poly::y(l as i32))), p("y1*y3*(x1+y5)*(x1+y6)"));
        assert!(flagged_tableaux(&figure1::LAMBDA, &figure1::MU, &f).unwrap().any(|t| t == d));
    }

    #[test]
    fn empty_shape_has_one_tableau() {
        let f = FlagData::new(vec![0, 1], vec![2, 1]).unwrap();
        let lam = [3, 2];
        let all: Vec<Tableau> = flagged_tableaux(&lam, &lam, &f).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].weight().is_one());
    }

    #[test]
    fn flag_validation() {
        assert!(FlagData::new(vec![1, 0], vec![0, 0]).is_err());
        assert!(FlagData::new(vec![0, 0], vec![1, 1]).is_err());
        assert!(FlagData::new(vec![0, -1], vec![1, 0]).is_err());
        assert!(FlagData::new_dual(vec![2, 1], vec![0, 0]).is_ok());
        let f = FlagData::new(vec![0, 1], vec![2, 1]).unwrap();
        assert!(flagged_tableaux(&[3, 3], &[0, 0], &f).is_err());
    }

    #[test]
    fn flagged_sum_matches_determinant() {
        for n in 1..=3 {
            for f in all_flags(n, 2) {
                let lam: Vec<i64> = (1..=n).map(|i| f.base(i)).collect();
                let rows = f.all_series(12);
                let lo: Vec<i64> = lam.iter().map(|l| l - 3).collect();
                for mu in decreasing_between(&lo, &lam, false) {
                    let tabs: Vec<Tableau> = flagged_tableaux(&lam, &mu, &f).unwrap().collect();
                    let mut sum = Poly::zero();
                    for t in &tabs {
                        validate_flagged(t, &f, 0, false).unwrap();
                        sum += &t.weight();
                    }
                    assert_eq!(sum, flagged_weight_sum(&lam, &mu, &f).unwrap());
                    assert_eq!(sum, schur_det(&lam, &mu, &rows).unwrap(), "{f:?} {lam:?}/{mu:?}");
                }
            }
        }
    }

    #[test]
    fn no_pairs_when_flags_are_separated() {
        let f = FlagData::new(vec![0, 0, 2], vec![3, 1, 0]).unwrap();
        let lam: Vec<i64> = (1..=3).map(|i| f.base(i) + 2).collect();
        for t in flagged_tableaux(&lam, &[0, 0, 0], &f).unwrap() {
            assert!(t.boxes().all(|(_, e)| !matches!(e, Entry::Pair(..))));
        }
    }

    #[test]
    fn dual_sum_and_rotation() {
        let mut seen = 0;
        for f in all_flags(3, 2) {
            let dual = FlagData::new_dual(f.p.iter().rev().copied().collect(), f.q.iter().rev().copied().collect()).unwrap();
            let mu: Vec<i64> = (1..=3).map(|i| dual.p[i - 1] - dual.q[i - 1] + i as i64).collect();
            let b: Vec<ChernSeries> = (1..=3).map(|j| dual.series(j, 12)).collect();
            let hi: Vec<i64> = mu.iter().map(|m| m + 3).collect();
            for lam in decreasing_between(&mu, &hi, false) {
                let tabs: Vec<Tableau> = dual_tableaux(&lam, &mu, &dual).unwrap().collect();
                let mut sum = Poly::zero();
                for t in &tabs {
                    validate_flagged(t, &dual, 0, true).unwrap();
                    sum += &t.weight();
                }
                assert_eq!(sum, schur_det_prime(&lam, &mu, &b).unwrap(), "{dual:?} {lam:?}/{mu:?}");
                // rotation onto the ordinary tableaux of the reversed data
                let lt: Vec<i64> = (0..3).map(|i| -mu[2 - i]).collect();
                let mt: Vec<i64> = (0..3).map(|i| -lam[2 - i]).collect();
                let mut rotated: Vec<Tableau> = tabs.iter().map(|t| t.rotate()).collect();
                let mut ordinary: Vec<Tableau> = flagged_tableaux(&lt, &mt, &f).unwrap().collect();
                rotated.sort_by(|a, b| a.rows.cmp(&b.rows));
                ordinary.sort_by(|a, b| a.rows.cmp(&b.rows));
                assert_eq!(rotated, ordinary);
                seen += tabs.len();
            }
        }
        assert!(seen > 100);
    }

    #[test]
    fn primed_example_monomial() {
        use Entry::*;
        let t = Tableau {
            lambda: vec![4, 3, 1],
            mu: vec![0, 0, 0],
            shifted: false,
            rows: vec![
                vec![Primed(1), Plain(1), Primed(2), Plain(3)],
                vec![Primed(1), Plain(2), Plain(2)],
                vec![Plain(1)],
            ],
        };
        validate_primed(&t, 3).unwrap();
        assert_eq!(t.weight(), p("x1^2*x2^2*x3*y1^2*y2"));
        assert!(primed_tableaux(&[4, 3, 1], &[], 3, false).unwrap().any(|u| u == t));
    }

    #[test]
    fn primed_unshifted_matches_determinant() {
        for m in 0..=2i64 {
            let a = ChernSeries::from_factors(
                (1..=m).map(|i| Poly::y(i as i32)).collect(),
                (1..=m).map(|i| Poly::x(i as i32)).collect(),
                false,
                12,
            );
            for lam in [vec![2, 1], vec![3, 1, 1], vec![2, 2], vec![3]] {
                for mu in crate::shapes::sub_partitions(&lam) {
                    let n = lam.len();
                    let mu = pad(&mu, n);
                    let tabs: Vec<Tableau> = primed_tableaux(&lam, &mu, m, false).unwrap().collect();
                    for t in &tabs {
                        validate_primed(t, m).unwrap();
                    }
                    let sum: Poly = tabs.iter().map(|t| t.weight()).sum();
                    assert_eq!(sum, primed_weight_sum(&lam, &mu, m, false).unwrap());
                    assert_eq!(sum, schur_det(&lam, &mu, &vec![a.clone(); n]).unwrap(), "m={m} {lam:?}/{mu:?}");
                    if m == 0 {
                        assert_eq!(tabs.len(), usize::from(mu == lam));
                    }
                }
            }
        }
    }

    #[test]
    fn shifted_primed_matches_skew_pfaffian() {
        for m in 1..=2i64 {
            let a = ChernSeries::from_factors(
                (1..=m).map(|i| &Poly::x(i as i32) + &Poly::z()).collect(),
                (1..=m).map(|i| Poly::x(i as i32)).collect(),
                false,
                12,
            );
            for lam in [vec![3, 1], vec![4, 2, 1], vec![3, 2], vec![2]] {
                let n = lam.len();
                for mu in crate::shapes::sub_partitions(&lam) {
                    if !is_strict(&mu) {
                        continue;
                    }
                    let plain = |k: i64| Poly::x(k as i32);
                    let primed = |k: i64| &Poly::x(k as i32) + &Poly::z();
                    let sum = primed_weight_sum_with(&lam, &mu, m, true, &plain, &primed).unwrap();
                    let pf = crate::pfaffian::skew_pf(&lam, &pad(&mu, n), &vec![a.clone(); n]).unwrap();
                    assert_eq!(sum, pf, "m={m} {lam:?}/{mu:?}");
                }
            }
        }
    }

    #[test]
    fn border_strip_example() {
        let (x, y) = (Poly::x(1), Poly::y(1));
        let e = border_strip_expansion(&[4, 3, 1], &x, &y, false).unwrap();
        assert_eq!(e[&vec![2, 1]], p("x1^2*y1*(x1+y1)^2"));
        assert!(e[&vec![4, 3, 1]].is_one());
    }

    #[test]
    fn border_strips_reproduce_schur_expansion() {
        let a = ChernSeries::from_factors(vec![Poly::y(1)], vec![Poly::x(1)], true, 10);
        for lam in [vec![4, 3, 1], vec![2, 2], vec![3, 1], vec![2, 1, 1]] {
            let direct = crate::schur::schur_det(&lam, &vec![0; lam.len()], &vec![a.clone(); lam.len()]).unwrap();
            let e = border_strip_expansion(&lam, &Poly::x(1), &Poly::y(1), false).unwrap();
            let mut via = Poly::zero();
            for (mu, coeff) in &e {
                via += &(coeff * &crate::schur::schur_poly(mu));
            }
            assert_eq!(direct, via, "{lam:?}");
        }
    }

    fn binomial_det(a: &[i64], b: &[i64]) -> Integer {
        let m: Vec<Vec<Poly>> = a
            .iter()
            .map(|&ai| b.iter().map(|&bj| Poly::constant(crate::ring::binomial(ai, bj))).collect())
            .collect();
        crate::det::det(&m).as_constant().unwrap_or(Integer::ZERO)
    }

    #[test]
    fn durfee_counts_are_binomial_determinants() {
        let mut checked = 0;
        for size in 1..=7 {
            for lam in crate::shapes::partitions_of(size) {
                for mu in crate::shapes::sub_partitions(&lam) {
                    if durfee(&mu) != durfee(&lam) {
                        assert!(durfee_tableaux(&lam, &mu).is_err());
                        continue;
                    }
                    let (n, mono) = durfee_tableaux(&lam, &mu).unwrap();
                    let (a, b) = crate::shapes::frobenius(&lam);
                    let (a2, b2) = crate::shapes::frobenius(&mu);
                    assert_eq!(n, &binomial_det(&a, &a2) * &binomial_det(&b, &b2), "{lam:?}/{mu:?}");
                    let boxes = skew_boxes(&lam, &mu, false).len() as u32;
                    assert_eq!(mono.degree().unwrap_or(0), boxes);
                    checked += 1;
                }
            }
        }
        assert!(checked > 100);
        let (n, mono) = durfee_tableaux(&[3, 1], &[3, 1]).unwrap();
        assert!(n.is_one() && mono.is_one());
        assert_eq!(durfee_tableaux(&[3, 2, 1], &[2, 2]).unwrap().1, p("-z^2"));
    }

    #[test]
    fn json_layout() {
        use Entry::*;
        let t = Tableau {
            lambda: vec![2, 1],
            mu: vec![0, 0],
            shifted: false,
            rows: vec![vec![Plain(3), Primed(5)], vec![Pair(1, 6)]],
        };
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"[[{"k":3},{"l":5}],[{"k":1,"l":6}]]"#);
    }
}
