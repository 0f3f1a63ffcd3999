//! Sparse multivariate polynomials with exact integer coefficients.
//!
//! The variable alphabet is fixed: the twist `z`, the generic Chern classes
//! `c_k` (of degree `k`), the integer-indexed `x_i` and `y_i`, and two
//! auxiliary families `u_k`, `v_l` used when a tableau formula is proved in
//! fresh variables and then specialized.
//!
//! A [`Poly`] is a sorted vector of `(Monomial, Integer)` pairs with no zero
//! coefficients, so structural equality is polynomial equality.

mod int;
pub mod packed;
mod parse;

pub use int::{binomial, Integer};
pub use parse::ParsePolyError;

use std::collections::{BTreeMap, HashMap};
use rustc_hash::FxHashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

/// A ring variable. The derived order (kind, then index) is the global
/// variable order used to canonicalize monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z,
    /// Generic Chern class `c_k`, `k >= 1`.
    C(u32),
    X(i32),
    Y(i32),
    U(u32),
    V(u32),
}

impl Var {
    /// Graded degree: `c_k` has degree `k`, everything else degree one.
    pub fn degree(self) -> u32 {
        match self {
            Var::C(k) => k,
            _ => 1,
        }
    }

    pub fn is_chern(self) -> bool {
        matches!(self, Var::C(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z => write!(f, "z"),
            Var::C(k) => write!(f, "c{k}"),
            Var::X(i) => write!(f, "x[{i}]"),
            Var::Y(i) => write!(f, "y[{i}]"),
            Var::U(k) => write!(f, "u[{k}]"),
            Var::V(l) => write!(f, "v[{l}]"),
        }
    }
}

/// A monomial as a sorted list of `(variable, exponent)` with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Self::from_pairs([(v, 1)])
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping
    /// zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut v: SmallVec<[(Var, u32); 4]> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_by_key(|p| p.0);
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, var: Var) -> u32 {
        self.0
            .binary_search_by_key(&var, |p| p.0)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(v, e)| v.degree() * e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Splits into the part whose variables satisfy `pred` and the rest.
    pub fn split(&self, pred: impl Fn(Var) -> bool) -> (Monomial, Monomial) {
        let (yes, no): (SmallVec<_>, SmallVec<_>) = self.0.iter().copied().partition(|p| pred(p.0));
        (Monomial(yes), Monomial(no))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// An exact polynomial. Immutable in spirit: every operation returns a new
/// canonical value.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(Monomial, Integer)>,
}

impl Poly {
    pub const ZERO: Poly = Poly { terms: Vec::new() };

    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<Integer>) -> Self {
        Self::monomial(Monomial::one(), c.into())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Integer::ONE)
    }

    pub fn z() -> Self {
        Self::var(Var::Z)
    }
    pub fn c(k: u32) -> Self {
        Self::var(Var::C(k))
    }
    pub fn x(i: i32) -> Self {
        Self::var(Var::X(i))
    }
    pub fn y(i: i32) -> Self {
        Self::var(Var::Y(i))
    }
    pub fn u(k: u32) -> Self {
        Self::var(Var::U(k))
    }
    pub fn v(l: u32) -> Self {
        Self::var(Var::V(l))
    }

    pub fn monomial(m: Monomial, c: Integer) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Canonicalizes an arbitrary list of terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Integer)>>(terms: I) -> Self {
        let mut acc: FxHashMap<Monomial, Integer> = FxHashMap::default();
        for (m, c) in terms {
            *acc.entry(m).or_default() += &c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: FxHashMap<Monomial, Integer>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Integer)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<Integer> {
        match self.terms.as_slice() {
            [] => Some(Integer::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coefficient_of(&self, m: &Monomial) -> Integer {
        self.terms
            .binary_search_by(|t| t.0.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or(Integer::ZERO)
    }

    /// Maximal graded degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|t| t.0.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self
            .terms
            .iter()
            .flat_map(|t| t.0.factors().iter().map(|p| p.0))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn contains_var(&self, pred: impl Fn(Var) -> bool) -> bool {
        self.terms
            .iter()
            .any(|t| t.0.factors().iter().any(|p| pred(p.0)))
    }

    pub fn scale(&self, c: &Integer) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Integer) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut terms: Vec<_> = self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect();
        // the lexicographic order on factor lists is not multiplicative
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Poly { terms }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution. Variables for which `map` returns `None`
    /// are left in place.
    pub fn substitute_with(&self, map: impl Fn(Var) -> Option<Poly>) -> Poly {
        let mut images: HashMap<Var, Option<Poly>> = HashMap::new();
        let mut powers: HashMap<(Var, u32), Poly> = HashMap::new();
        let mut acc: FxHashMap<Monomial, Integer> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut kept: Vec<(Var, u32)> = Vec::new();
            let mut factor = Poly::constant(c.clone());
            for &(v, e) in m.factors() {
                let img = images.entry(v).or_insert_with(|| map(v));
                match img {
                    None => kept.push((v, e)),
                    Some(p) => {
                        let p = p.clone();
                        let pe = powers.entry((v, e)).or_insert_with(|| p.pow(e)).clone();
                        factor = &factor * &pe;
                    }
                }
            }
            let keep = Monomial::from_pairs(kept);
            for (n, d) in factor.terms {
                *acc.entry(n.mul(&keep)).or_default() += &d;
            }
        }
        Self::from_map(acc)
    }

    pub fn substitute(&self, map: &HashMap<Var, Poly>) -> Poly {
        self.substitute_with(|v| map.get(&v).cloned())
    }

    /// Groups terms by the part of each monomial made of variables that
    /// satisfy `pred`; the values are the cofactors in the other variables.
    pub fn split_by(&self, pred: impl Fn(Var) -> bool + Copy) -> BTreeMap<Monomial, Poly> {
        let mut groups: BTreeMap<Monomial, Vec<(Monomial, Integer)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (yes, no) = m.split(pred);
            groups.entry(yes).or_default().push((no, c.clone()));
        }
        groups
            .into_iter()
            .map(|(k, v)| (k, Poly::from_terms(v)))
            .collect()
    }

    /// Coefficients of `self` as a polynomial in `var`: index `k` holds the
    /// cofactor of `var^k`.
    pub fn coefficients_in(&self, var: Var) -> Vec<Poly> {
        let mut by_exp: BTreeMap<u32, Vec<(Monomial, Integer)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let rest = Monomial::from_pairs(m.factors().iter().copied().filter(|p| p.0 != var));
            by_exp.entry(e).or_default().push((rest, c.clone()));
        }
        let top = by_exp.keys().next_back().copied().unwrap_or(0);
        let mut out = vec![Poly::zero(); top as usize + 1];
        for (e, ts) in by_exp {
            out[e as usize] = Poly::from_terms(ts);
        }
        out
    }

    /// Exact quotient by `var - root`, where `root` must not involve `var`.
    /// Returns `None` when the remainder is nonzero.
    pub fn div_linear(&self, var: Var, root: &Poly) -> Option<Poly> {
        assert!(
            !root.contains_var(|v| v == var),
            "root of a linear divisor must not contain the division variable"
        );
        let coeffs = self.coefficients_in(var);
        if coeffs.len() == 1 {
            return if coeffs[0].is_zero() { Some(Poly::zero()) } else { None };
        }
        // synthetic division from the top coefficient down
        let d = coeffs.len() - 1;
        let mut quot = vec![Poly::zero(); d];
        let mut carry = Poly::zero();
        for k in (1..=d).rev() {
            carry = &coeffs[k] + &(&carry * root);
            quot[k - 1] = carry.clone();
        }
        let remainder = &coeffs[0] + &(&carry * root);
        if !remainder.is_zero() {
            return None;
        }
        let x = Poly::var(var);
        let mut out = Poly::zero();
        for q in quot.iter().rev() {
            out = &(&out * &x) + q;
        }
        Some(out)
    }

    /// Evaluates with every variable replaced by an integer.
    pub fn evaluate(&self, value: impl Fn(Var) -> Integer) -> Integer {
        let mut total = Integer::ZERO;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.factors() {
                t = &t * &value(v).pow(e);
            }
            total += &t;
        }
        total
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn merge(a: &[(Monomial, Integer)], b: &[(Monomial, Integer)], negate_b: bool) -> Poly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let sign = |c: &Integer| if negate_b { -c.clone() } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0.clone(), sign(&b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let s = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !s.is_zero() {
                    out.push((a[i].0.clone(), s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
    Poly { terms: out }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if self.terms.len() == 1 {
            return rhs.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        if rhs.terms.len() == 1 {
            return self.mul_monomial(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        let mut acc: FxHashMap<Monomial, Integer> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * rhs.terms.len() / 2 + 1, Default::default());
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                *acc.entry(m.mul(n)).or_default() += &(c * d);
            }
        }
        Poly::from_map(acc)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self - rhs;
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::constant(c)
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc: FxHashMap<Monomial, Integer> = FxHashMap::default();
        for p in iter {
            for (m, c) in p.terms {
                *acc.entry(m).or_default() += &c;
            }
        }
        Poly::from_map(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn additive_examples() {
        assert!((&Poly::x(1) + &(-Poly::x(1))).is_zero());
        assert_eq!(&Poly::c(2) + &Poly::c(2), p("2*c2"));
        assert_eq!(&p("c1^2 - 2*c2") + &p("2*c2 + z*c1"), p("c1^2 + z*c1"));
    }

    #[test]
    fn multiplicative_examples() {
        let q = p("x[1] + y[5]");
        assert_eq!(&Poly::one() * &q, q);
        assert_eq!(
            &q * &p("x[1] + y[6]"),
            p("x[1]^2 + x[1]*y[5] + x[1]*y[6] + y[5]*y[6]")
        );
        let lhs = &p("x^2*y") * &p("x + y").pow(2);
        assert_eq!(lhs, p("x^4*y + 2*x^3*y^2 + x^2*y^3"));
    }

    #[test]
    fn substitution_examples() {
        // x~_1 = -x_0 is expressed as a substitution of an auxiliary variable
        let s = Poly::v(1).substitute_with(|v| (v == Var::V(1)).then(|| -Poly::x(0)));
        assert_eq!(s, -Poly::x(0));
        let s = p("v[1]*v[2]").substitute_with(|v| (v == Var::V(1)).then(|| Poly::y(1)));
        assert_eq!(s, p("y[1]*v[2]"));
        let s = p("u[1] + u[2]").substitute_with(|v| match v {
            Var::U(1) => Some(Poly::x(1)),
            Var::U(2) => Some(-Poly::y(0)),
            _ => None,
        });
        assert_eq!(s, p("x[1] - y[0]"));
    }

    #[test]
    fn coefficient_reads() {
        let q = p("c1^2 - 2*c2");
        assert_eq!(q.coefficient_of(&Monomial::var(Var::C(2))), Integer::from(-2));
        assert_eq!(q.coefficient_of(&Monomial::var(Var::Z)), Integer::ZERO);
    }

    #[test]
    fn exact_linear_division() {
        let f = p("x[0]^2 - x[1]^2 + c1*x[0] - c1*x[1]");
        let q = f.div_linear(Var::X(0), &Poly::x(1)).unwrap();
        assert_eq!(q, p("x[0] + x[1] + c1"));
        assert!(p("x[0] + 1").div_linear(Var::X(0), &Poly::x(1)).is_none());
        assert_eq!(Poly::zero().div_linear(Var::Z, &Poly::x(1)), Some(Poly::zero()));
    }

    #[test]
    fn display_is_canonical() {
        let q = p("2*c2 + z*c1 - x[0]*y[3]");
        assert_eq!(q.to_string().parse::<Poly>().unwrap(), q);
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn var() -> impl Strategy<Value = Var> {
            prop_oneof![
                Just(Var::Z),
                (1u32..4).prop_map(Var::C),
                (-2i32..3).prop_map(Var::X),
                (-2i32..3).prop_map(Var::Y),
            ]
        }

        fn poly() -> impl Strategy<Value = Poly> {
            let term = (prop::collection::vec((var(), 1u32..3), 0..3), -5i64..6);
            prop::collection::vec(term, 0..5).prop_map(|ts| {
                Poly::from_terms(
                    ts.into_iter()
                        .map(|(m, c)| (Monomial::from_pairs(m), Integer::from(c))),
                )
            })
        }

        proptest! {
            #[test]
            fn ring_axioms(a in poly(), b in poly(), c in poly()) {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert!((&a - &a).is_zero());
            }

            #[test]
            fn degree_is_additive(a in poly(), b in poly()) {
                prop_assume!(!a.is_zero() && !b.is_zero());
                let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
                // top graded parts multiply without cancellation over an integral domain
                prop_assert_eq!((&a * &b).degree(), Some(da + db));
            }

            #[test]
            fn substitution_composes(a in poly(), shift in 1i32..3) {
                let sigma = |v: Var| match v {
                    Var::X(i) => Some(Poly::x(i + shift)),
                    _ => None,
                };
                let tau = |v: Var| match v {
                    Var::X(i) => Some(Poly::y(i)),
                    _ => None,
                };
                let composed = |v: Var| match v {
                    Var::X(i) => Some(Poly::y(i + shift)),
                    _ => None,
                };
                prop_assert_eq!(
                    a.substitute_with(sigma).substitute_with(tau),
                    a.substitute_with(composed)
                );
            }

            #[test]
            fn text_roundtrip(a in poly()) {
                prop_assert_eq!(a.to_string().parse::<Poly>().unwrap(), a);
            }
        }
    }
}
