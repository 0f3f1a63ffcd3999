//! Dense-key polynomials for large exact sums: up to 16 variables, exponents
//! below 256, packed one byte per variable into a `u128`.

use rustc_hash::FxHashMap;

use super::{Integer, Monomial, Poly, Var};

/// Carry bits that land on a byte boundary mean some exponent overflowed.
const BYTE_CARRIES: u128 = {
    let mut m = 0u128;
    let mut k = 1;
    while k < 16 {
        m |= 1u128 << (8 * k);
        k += 1;
    }
    m
};

/// The variables a packed polynomial may use, in slot order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    vars: Vec<Var>,
}

impl VarTable {
    pub fn new(vars: Vec<Var>) -> Self {
        assert!(vars.len() <= 16, "at most 16 packed variables");
        VarTable { vars }
    }

    pub fn slot(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|&w| w == v)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn pack(&self, p: &Poly) -> Option<PackedPoly> {
        let mut out = PackedPoly::zero();
        for (m, c) in p.terms() {
            let mut key = 0u128;
            for &(v, e) in m.factors() {
                if e > 255 {
                    return None;
                }
                key |= (e as u128) << (8 * self.slot(v)?);
            }
            let c = c.to_i128()?;
            out.terms.insert(key, c);
        }
        Some(out)
    }

    pub fn unpack(&self, p: &PackedPoly) -> Poly {
        Poly::from_terms(p.terms.iter().map(|(&key, &c)| {
            let pairs = self
                .vars
                .iter()
                .enumerate()
                .map(|(s, &v)| (v, ((key >> (8 * s)) & 0xff) as u32))
                .filter(|&(_, e)| e > 0);
            (Monomial::from_pairs(pairs), Integer::from(c))
        }))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PackedPoly {
    terms: FxHashMap<u128, i128>,
}

impl PackedPoly {
    pub fn zero() -> Self {
        PackedPoly::default()
    }

    pub fn one() -> Self {
        let mut p = PackedPoly::zero();
        p.terms.insert(0, 1);
        p
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

    pub fn add_assign(&mut self, other: &PackedPoly) {
        for (&k, &c) in &other.terms {
            add_term(&mut self.terms, k, c);
        }
    }

    pub fn neg(&self) -> PackedPoly {
        PackedPoly {
            terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &PackedPoly) -> PackedPoly {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut out: FxHashMap<u128, i128> = FxHashMap::default();
        out.reserve(large.len() * small.len().min(4));
        for (&a, &ca) in &small.terms {
            for (&b, &cb) in &large.terms {
                let key = a.wrapping_add(b);
                assert!((a ^ b ^ key) & BYTE_CARRIES == 0 && key >= a, "packed exponent overflow");
                let c = ca.checked_mul(cb).expect("packed coefficient overflow");
                add_term(&mut out, key, c);
            }
        }
        PackedPoly { terms: out }
    }
}

fn add_term(map: &mut FxHashMap<u128, i128>, key: u128, c: i128) {
    use std::collections::hash_map::Entry;
    match map.entry(key) {
        Entry::Occupied(mut e) => {
            let v = e.get().checked_add(c).expect("packed coefficient overflow");
            if v == 0 {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        Entry::Vacant(e) => {
            if c != 0 {
                e.insert(c);
            }
        }
    }
}

/// The operations a weight generating function needs.
pub trait Semiring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Semiring for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl Semiring for PackedPoly {
    fn zero() -> Self {
        PackedPoly::zero()
    }
    fn one() -> Self {
        PackedPoly::one()
    }
    fn add_assign(&mut self, other: &Self) {
        PackedPoly::add_assign(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        PackedPoly::mul(self, other)
    }
    fn is_zero(&self) -> bool {
        PackedPoly::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_arithmetic() {
        let t = VarTable::new(vec![Var::X(1), Var::X(2), Var::Y(1)]);
        let a: Poly = "x1^2 + 3*x2*y1 - 1".parse().unwrap();
        let b: Poly = "x1 - y1^3".parse().unwrap();
        let (pa, pb) = (t.pack(&a).unwrap(), t.pack(&b).unwrap());
        assert_eq!(t.unpack(&pa), a);
        assert_eq!(t.unpack(&pa.mul(&pb)), &a * &b);
        let mut s = pa.clone();
        s.add_assign(&pb);
        assert_eq!(t.unpack(&s), &a + &b);
        let mut z = pa.clone();
        z.add_assign(&t.pack(&-a.clone()).unwrap());
        assert!(z.is_zero());
        assert!(t.pack(&Poly::z()).is_none());
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn exponent_overflow_is_caught() {
        let t = VarTable::new(vec![Var::X(1)]);
        let p = t.pack(&Poly::x(1).pow(200)).unwrap();
        let _ = p.mul(&p);
    }
}
