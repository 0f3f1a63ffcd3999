//! Chern series: power series with constant term 1, truncated at a cutoff.
//!
//! A series is kept in factored form
//! `Π (1 + L t) · Π (1 − M t)⁻¹ · cᵉ`, where `c = Σ c_k tᵏ` is the generic
//! series in the variables `C(k)`, together with its coefficient vector
//! up to the cutoff. Factored form makes products, inverses and
//! re-expansion at a different cutoff exact.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct ChernSeries {
    numer: Vec<Poly>,
    denom: Vec<Poly>,
    c_power: i32,
    coeffs: Vec<Poly>,
}

static ZERO: Poly = Poly::ZERO;

impl ChernSeries {
    pub fn one(cutoff: usize) -> Self {
        Self::from_factors(Vec::new(), Vec::new(), false, cutoff)
    }

    /// The generic series `c` with `c_k = C(k)`.
    pub fn generic(cutoff: usize) -> Self {
        Self::from_factors(Vec::new(), Vec::new(), true, cutoff)
    }

    /// `Π (1 + L t) / Π (1 − M t)`, optionally times the generic series.
    pub fn from_factors(numer: Vec<Poly>, denom: Vec<Poly>, with_generic_c: bool, cutoff: usize) -> Self {
        Self::build(numer, denom, i32::from(with_generic_c), cutoff)
    }

    /// `(1 + L t)^e` for any integer `e`.
    pub fn linear_power(l: &Poly, e: i64, cutoff: usize) -> Self {
        let n = e.unsigned_abs() as usize;
        if e >= 0 {
            Self::from_factors(vec![l.clone(); n], Vec::new(), false, cutoff)
        } else {
            Self::from_factors(Vec::new(), vec![-l; n], false, cutoff)
        }
    }

    fn build(mut numer: Vec<Poly>, mut denom: Vec<Poly>, c_power: i32, cutoff: usize) -> Self {
        // (1 + L t) cancels against (1 − M t)⁻¹ exactly when M = −L
        let mut i = 0;
        while i < numer.len() {
            let neg = -&numer[i];
            if let Some(j) = denom.iter().position(|m| *m == neg) {
                numer.swap_remove(i);
                denom.swap_remove(j);
            } else {
                i += 1;
            }
        }
        numer.retain(|l| !l.is_zero());
        denom.retain(|m| !m.is_zero());
        numer.sort_by_cached_key(|p| p.to_string());
        denom.sort_by_cached_key(|p| p.to_string());
        let coeffs = expand(&numer, &denom, c_power, cutoff);
        ChernSeries {
            numer,
            denom,
            c_power,
            coeffs,
        }
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn numer(&self) -> &[Poly] {
        &self.numer
    }

    pub fn denom(&self) -> &[Poly] {
        &self.denom
    }

    /// Exponent of the generic series `c` in the factored form.
    pub fn c_power(&self) -> i32 {
        self.c_power
    }

    pub fn has_generic_c(&self) -> bool {
        self.c_power != 0
    }

    pub fn is_one(&self) -> bool {
        self.numer.is_empty() && self.denom.is_empty() && self.c_power == 0
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Coefficient of `tᵏ`; zero for negative `k`.
    pub fn coeff(&self, k: i64) -> Result<&Poly> {
        if k < 0 {
            Ok(&ZERO)
        } else if k as usize >= self.coeffs.len() {
            Err(Error::BeyondCutoff {
                k,
                cutoff: self.cutoff(),
            })
        } else {
            Ok(&self.coeffs[k as usize])
        }
    }

    /// Like [`coeff`](Self::coeff) but panics beyond the cutoff; for callers
    /// that chose the cutoff themselves.
    pub fn at(&self, k: i64) -> &Poly {
        match self.coeff(k) {
            Ok(p) => p,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn mul(&self, other: &ChernSeries) -> Result<ChernSeries> {
        if self.cutoff() != other.cutoff() {
            return Err(Error::CutoffMismatch(self.cutoff(), other.cutoff()));
        }
        let numer = self.numer.iter().chain(&other.numer).cloned().collect();
        let denom = self.denom.iter().chain(&other.denom).cloned().collect();
        Ok(Self::build(numer, denom, self.c_power + other.c_power, self.cutoff()))
    }

    pub fn inverse(&self) -> ChernSeries {
        let numer = self.denom.iter().map(|m| -m).collect();
        let denom = self.numer.iter().map(|l| -l).collect();
        Self::build(numer, denom, -self.c_power, self.cutoff())
    }

    /// The same series re-expanded at another cutoff.
    pub fn with_cutoff(&self, cutoff: usize) -> ChernSeries {
        Self::build(self.numer.clone(), self.denom.clone(), self.c_power, cutoff)
    }

    /// Applies a ring map to every linear form, keeping the generic part.
    pub fn map_forms(&self, f: impl Fn(&Poly) -> Poly) -> ChernSeries {
        let numer = self.numer.iter().map(&f).collect();
        let denom = self.denom.iter().map(&f).collect();
        Self::build(numer, denom, self.c_power, self.cutoff())
    }
}

fn expand(numer: &[Poly], denom: &[Poly], c_power: i32, cutoff: usize) -> Vec<Poly> {
    let mut v = vec![Poly::zero(); cutoff + 1];
    v[0] = Poly::one();
    for l in numer {
        for k in (1..=cutoff).rev() {
            let t = &v[k - 1] * l;
            v[k] += &t;
        }
    }
    for m in denom {
        for k in 1..=cutoff {
            let t = &v[k - 1] * m;
            v[k] += &t;
        }
    }
    if c_power != 0 {
        let mut c: Vec<Poly> = (0..=cutoff)
            .map(|k| if k == 0 { Poly::one() } else { Poly::c(k as u32) })
            .collect();
        if c_power < 0 {
            c = invert(&c);
        }
        for _ in 0..c_power.unsigned_abs() {
            v = cauchy(&v, &c);
        }
    }
    v
}

fn cauchy(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    (0..a.len())
        .map(|k| (0..=k).map(|i| &a[i] * &b[k - i]).sum())
        .collect()
}

fn invert(a: &[Poly]) -> Vec<Poly> {
    let mut b = vec![Poly::one()];
    for k in 1..a.len() {
        let s: Poly = (1..=k).map(|i| &a[i] * &b[k - i]).sum();
        b.push(-s);
    }
    b
}

impl fmt::Debug for ChernSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ChernSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for l in &self.numer {
            parts.push(format!("(1+({l})*t)"));
        }
        for m in &self.denom {
            parts.push(format!("1/(1-({m})*t)"));
        }
        match self.c_power {
            0 => {}
            1 => parts.push("c".into()),
            e => parts.push(format!("c^{e}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Parses a product or quotient of linear factors such as
/// `(1+y*t)/(1-x*t)`, `(1+y[2]*t)*(1-x[0]*t)^-1*c` or `1`.
pub fn parse_series(src: &str, cutoff: usize) -> Result<ChernSeries> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let bytes = s.as_bytes();
    let mut numer = Vec::new();
    let mut denom = Vec::new();
    let mut c_power = 0i32;
    let mut pos = 0;
    let mut dividing = false;
    let bad = |msg: &str| Error::Invalid(format!("series '{src}': {msg}"));
    while pos < bytes.len() {
        let (form, next) = match bytes[pos] {
            b'(' => {
                let close = matching_paren(bytes, pos).ok_or_else(|| bad("unbalanced parentheses"))?;
                let form = parse_linear_factor(&s[pos + 1..close]).map_err(|m| bad(&m))?;
                (Some(form), close + 1)
            }
            b'c' => (None, pos + 1),
            b'1' => (Some(Poly::zero()), pos + 1),
            _ => return Err(bad("expected a factor")),
        };
        pos = next;
        let mut exp: i64 = 1;
        if bytes.get(pos) == Some(&b'^') {
            let start = pos + 1;
            let mut end = start;
            if bytes.get(end) == Some(&b'-') {
                end += 1;
            }
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            exp = s[start..end].parse().map_err(|_| bad("bad exponent"))?;
            pos = end;
        }
        if dividing {
            exp = -exp;
        }
        match form {
            None => c_power += exp as i32,
            Some(l) if l.is_zero() => {}
            Some(l) => {
                for _ in 0..exp.unsigned_abs() {
                    if exp > 0 {
                        numer.push(l.clone());
                    } else {
                        denom.push(-&l);
                    }
                }
            }
        }
        match bytes.get(pos) {
            None => break,
            Some(b'*') => dividing = false,
            Some(b'/') => dividing = true,
            Some(_) => return Err(bad("expected '*' or '/'")),
        }
        pos += 1;
        if pos == bytes.len() {
            return Err(bad("dangling operator"));
        }
    }
    Ok(ChernSeries::build(numer, denom, c_power, cutoff))
}

fn matching_paren(b: &[u8], open: usize) -> Option<usize> {
    let mut depth = 0;
    for (i, &ch) in b.iter().enumerate().skip(open) {
        match ch {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// `1+L*t` or `1-L*t` (also `1+t`), returning the signed form `±L`.
fn parse_linear_factor(inner: &str) -> std::result::Result<Poly, String> {
    let rest = inner
        .strip_prefix('1')
        .ok_or_else(|| format!("factor '({inner})' must start with 1"))?;
    let (neg, body) = match rest.as_bytes().first() {
        Some(b'+') => (false, &rest[1..]),
        Some(b'-') => (true, &rest[1..]),
        _ => return Err(format!("factor '({inner})' must be 1±L*t")),
    };
    let l_text = if body == "t" {
        "1"
    } else {
        body.strip_suffix("*t")
            .ok_or_else(|| format!("factor '({inner})' must end in *t"))?
    };
    let l: Poly = l_text.parse().map_err(|e| format!("{e}"))?;
    Ok(if neg { -l } else { l })
}
