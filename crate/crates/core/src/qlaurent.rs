//! Laurent polynomials in one variable `v` with exact coefficients.
//!
//! - [`LaurentPoly`] lives in ℤ[v,v⁻¹], [`RatLaurentPoly`] in ℚ[v,v⁻¹].
//! - Terms are stored sorted by exponent with no zero coefficients, so the
//!   derived `Eq` is ring equality.
//! - Quantum integers follow the balanced convention `[0]_s = 0`,
//!   `[-n]_s = -[n]_s`.
//! - Root-of-unity tests reduce modulo the cyclotomic polynomial exactly.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Coefficient ring of a [`Laurent`] polynomial.
pub trait Coeff:
    Clone
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Send
    + Sync
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn mul_ref(&self, rhs: &Self) -> Self;
}

impl Coeff for BigInt {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Coeff for BigRational {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent<C> {
    terms: Vec<(i64, C)>,
}

/// Element of ℤ[v,v⁻¹].
pub type LaurentPoly = Laurent<BigInt>;
/// Element of ℚ[v,v⁻¹].
pub type RatLaurentPoly = Laurent<BigRational>;

impl<C: Coeff> Default for Laurent<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Laurent<C> {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: C, e: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Laurent { terms: vec![(e, c)] }
        }
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(C::one(), e)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// summing repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(it: I) -> Self {
        let mut v: Vec<(i64, C)> = it.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, C)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += &c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((e, c));
                }
            }
        }
        if out.last().is_some_and(|t| t.1.is_zero()) {
            out.pop();
        }
        Laurent { terms: out }
    }

    /// Dense coefficients starting at exponent `lo`.
    pub fn from_dense(lo: i64, coeffs: Vec<C>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + i as i64, c))
            .collect();
        Laurent { terms }
    }

    pub fn terms(&self) -> &[(i64, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(i64, C)> {
        self.terms
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
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    /// Difference between the highest and lowest exponent (0 for zero).
    pub fn span(&self) -> u64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => (b - a) as u64,
            _ => 0,
        }
    }

    pub fn coeff(&self, e: i64) -> C {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.last().map(|t| &t.1)
    }

    /// The involution `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        let terms = self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect();
        Laurent { terms }
    }

    pub fn is_bar_invariant(&self) -> bool {
        let n = self.terms.len();
        (0..n).all(|i| {
            let (e, c) = &self.terms[i];
            let (f, d) = &self.terms[n - 1 - i];
            *e == -*f && c == d
        })
    }

    /// Substitutes `v ↦ v^s`.
    pub fn subst_power(&self, s: i64) -> Result<Self> {
        if s == 0 {
            return invalid("subst_power: exponent must be nonzero");
        }
        let mut terms: Vec<(i64, C)> = self.terms.iter().map(|(e, c)| (e * s, c.clone())).collect();
        if s < 0 {
            terms.reverse();
        }
        Ok(Laurent { terms })
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect();
        Laurent { terms }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, c)| (*e, c.mul_ref(k))).collect();
        Laurent { terms }
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> Laurent<D> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    fn merge(&self, rhs: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (ea, eb) = (a[i].0, b[j].0);
            if ea < eb {
                out.push(a[i].clone());
                i += 1;
            } else if eb < ea {
                let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                out.push((eb, c));
                j += 1;
            } else {
                let mut c = a[i].1.clone();
                if negate {
                    c -= &b[j].1;
                } else {
                    c += &b[j].1;
                }
                if !c.is_zero() {
                    out.push((ea, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -t.1.clone() } else { t.1.clone() };
            out.push((t.0, c));
        }
        Laurent { terms: out }
    }

    fn product(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 || rhs.terms.len() == 1 {
            let (m, p) = if self.terms.len() == 1 { (self, rhs) } else { (rhs, self) };
            let (e0, c0) = &m.terms[0];
            let terms = p.terms.iter().map(|(e, c)| (e + e0, c.mul_ref(c0))).collect();
            return Laurent { terms };
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let width = (self.span() + rhs.span() + 1) as usize;
        let pairs = self.terms.len() * rhs.terms.len();
        if width <= 4 * pairs + 64 {
            let mut acc = vec![C::zero(); width];
            for (ea, ca) in &self.terms {
                for (eb, cb) in &rhs.terms {
                    acc[(ea + eb - lo) as usize] += &ca.mul_ref(cb);
                }
            }
            Self::from_dense(lo, acc)
        } else {
            let mut map: HashMap<i64, C> = HashMap::with_capacity(pairs);
            for (ea, ca) in &self.terms {
                for (eb, cb) in &rhs.terms {
                    *map.entry(ea + eb).or_insert_with(C::zero) += &ca.mul_ref(cb);
                }
            }
            Self::from_terms(map)
        }
    }
}

impl<'a, C: Coeff> Add<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, rhs: &'a Laurent<C>) -> Laurent<C> {
        self.merge(rhs, false)
    }
}

impl<'a, C: Coeff> Sub<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, rhs: &'a Laurent<C>) -> Laurent<C> {
        self.merge(rhs, true)
    }
}

impl<'a, C: Coeff> Mul<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, rhs: &'a Laurent<C>) -> Laurent<C> {
        self.product(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr<Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $m(self, rhs: Laurent<C>) -> Laurent<C> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, C: Coeff> $tr<&'a Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $m(self, rhs: &'a Laurent<C>) -> Laurent<C> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<'a, C: Coeff> AddAssign<&'a Laurent<C>> for Laurent<C> {
    fn add_assign(&mut self, rhs: &'a Laurent<C>) {
        *self = self.merge(rhs, false);
    }
}

impl<'a, C: Coeff> SubAssign<&'a Laurent<C>> for Laurent<C> {
    fn sub_assign(&mut self, rhs: &'a Laurent<C>) {
        *self = self.merge(rhs, true);
    }
}

impl<'a, C: Coeff> MulAssign<&'a Laurent<C>> for Laurent<C> {
    fn mul_assign(&mut self, rhs: &'a Laurent<C>) {
        *self = self.product(rhs);
    }
}

impl<C: Coeff> Neg for Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<C: Coeff> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        -(self.clone())
    }
}

impl<C: Coeff> Sum for Laurent<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<C: Coeff> Product for Laurent<C> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

// ---------------------------------------------------------------------------
// Integer-specific operations

impl LaurentPoly {
    pub fn from_i64(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }

    pub fn eval_one(&self) -> BigInt {
        self.terms.iter().map(|t| &t.1).sum()
    }

    /// Positive gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, t| g.gcd(&t.1))
    }

    pub fn to_rational(&self) -> RatLaurentPoly {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, BigRational::from_integer(c.clone()))).collect(),
        }
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.terms.iter().map(|t| t.1.abs()).sum()
    }

    /// Divides every coefficient by `k`, returning `None` if some division is inexact.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            terms.push((*e, q));
        }
        Some(Laurent { terms })
    }

    /// True when this equals `[n]_s` for some `n ≥ 2`, returning `(n, s)`.
    pub fn as_quantum_int(&self) -> Option<(u64, u64)> {
        let n = self.terms.len();
        if n < 2 || !self.terms.iter().all(|t| t.1.is_one()) {
            return None;
        }
        let step = self.terms[1].0 - self.terms[0].0;
        if step <= 0 || step % 2 != 0 {
            return None;
        }
        let s = step / 2;
        let expect_lo = -((n as i64) - 1) * s;
        if self.terms[0].0 != expect_lo {
            return None;
        }
        if self.terms.windows(2).any(|w| w[1].0 - w[0].0 != step) {
            return None;
        }
        Some((n as u64, s as u64))
    }

    /// Term string `c1*v^e1 + c2*v^e2 + …` in descending exponent order.
    pub fn term_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| format!("{c}*v^{e}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// LaTeX rendering; quantum integers are printed as brackets.
    pub fn to_latex(&self) -> String {
        if let Some((n, s)) = self.as_quantum_int() {
            return if s == 1 { format!("[{n}]") } else { format!("[{n}]_{{{s}}}") };
        }
        if let Some((n, s)) = (-self).as_quantum_int() {
            return if s == 1 { format!("-[{n}]") } else { format!("-[{n}]_{{{s}}}") };
        }
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match *e {
                0 => String::new(),
                1 => "v".to_string(),
                e => format!("v^{{{e}}}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}{mono}"));
            }
        }
        out
    }
}

impl RatLaurentPoly {
    /// Returns the integer polynomial when every coefficient is an integer.
    pub fn to_integral(&self) -> Option<LaurentPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            terms.push((*e, c.to_integer()));
        }
        Some(Laurent { terms })
    }

    pub fn eval_one(&self) -> BigRational {
        self.terms.iter().map(|t| &t.1).sum()
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.iter().fold(BigInt::one(), |l, t| l.lcm(t.1.denom()))
    }

    /// Clears denominators and the rational content, returning `(k, p)` with
    /// `self = k·p` and `p` a primitive integer polynomial.
    pub fn primitive_part(&self) -> (BigRational, LaurentPoly) {
        if self.is_zero() {
            return (BigRational::zero(), LaurentPoly::zero());
        }
        let l = self.denominator_lcm();
        let ints = LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, (c * &l).to_integer())).collect(),
        };
        let g = ints.content();
        let prim = ints.div_scalar_exact(&g).expect("content divides");
        (BigRational::new(g, l), prim)
    }
}

// ---------------------------------------------------------------------------
// Display, parsing, serde

fn fmt_terms<C: Coeff>(p: &Laurent<C>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (e, c)) in p.terms.iter().rev().enumerate() {
        let s = c.to_string();
        let (neg, mag) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        let unit = mag == "1";
        match (*e, unit) {
            (0, _) => write!(f, "{mag}")?,
            (1, true) => write!(f, "v")?,
            (1, false) => write!(f, "{mag}*v")?,
            (e, true) => write!(f, "v^{e}")?,
            (e, false) => write!(f, "{mag}*v^{e}")?,
        }
    }
    Ok(())
}

impl<C: Coeff> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(self, f)
    }
}

impl<C: Coeff> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(self, f)
    }
}

fn parse_coeff_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad integer coefficient '{s}'")))
}

fn parse_coeff_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_coeff_int(n)?;
            let d = parse_coeff_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(parse_coeff_int(s)?)),
    }
}

/// Parses the human format produced by `Display`, e.g. `v^2 - 3*v^-1 + 2`.
/// Bare terms may also be written `c*v^e`, `c v^e` or `v`.
fn parse_human<C: Coeff>(s: &str, coeff: fn(&str) -> Result<C>) -> Result<Laurent<C>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let bytes: Vec<char> = s.chars().collect();
    for (i, &ch) in bytes.iter().enumerate() {
        let after_caret = i > 0 && bytes[i - 1] == '^';
        if (ch == '+' || ch == '-') && !after_caret {
            if !cur.is_empty() {
                pieces.push((neg, std::mem::take(&mut cur)));
            } else if i > 0 && ch == '-' {
                neg = !neg;
                continue;
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        pieces.push((neg, cur));
    }
    let mut terms = Vec::new();
    for (neg, t) in pieces {
        let (c, e) = match t.find('v') {
            None => (coeff(&t)?, 0i64),
            Some(pos) => {
                let cpart = t[..pos].trim_end_matches('*');
                let c = if cpart.is_empty() { C::one() } else { coeff(cpart)? };
                let rest = &t[pos + 1..];
                let e = if rest.is_empty() {
                    1
                } else {
                    let r = rest
                        .strip_prefix('^')
                        .ok_or_else(|| Error::Parse(format!("bad term '{t}'")))?;
                    let r = r.trim_start_matches('{').trim_end_matches('}');
                    r.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in '{t}'")))?
                };
                (c, e)
            }
        };
        terms.push((e, if neg { -c } else { c }));
    }
    Ok(Laurent::from_terms(terms))
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_human(s, parse_coeff_int)
    }
}

impl FromStr for RatLaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_human(s, parse_coeff_rat)
    }
}

struct TermMap<'a, C>(&'a [(i64, C)], fn(&C) -> String);

impl<C> Serialize for TermMap<'_, C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (e, c) in self.0 {
            m.serialize_entry(&e.to_string(), &(self.1)(c))?;
        }
        m.end()
    }
}

fn rat_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LaurentPoly", 1)?;
        st.serialize_field("terms", &TermMap(&self.terms, |c: &BigInt| c.to_string()))?;
        st.end()
    }
}

impl Serialize for RatLaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RatLaurentPoly", 1)?;
        st.serialize_field("terms", &TermMap(&self.terms, rat_string))?;
        st.end()
    }
}

struct TermsVisitor<C>(fn(&str) -> Result<C>);

impl<'de, C: Coeff> Visitor<'de> for TermsVisitor<C> {
    type Value = Laurent<C>;
    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "an object {{\"terms\": {{\"<exp>\": \"<coeff>\"}}}}")
    }
    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Self::Value, A::Error> {
        let mut out = None;
        while let Some(key) = map.next_key::<String>()? {
            if key != "terms" {
                return Err(de::Error::unknown_field(&key, &["terms"]));
            }
            let raw: std::collections::BTreeMap<String, serde_json::Value> = map.next_value()?;
            let mut terms = Vec::with_capacity(raw.len());
            for (k, v) in raw {
                let e: i64 = k.trim().parse().map_err(|_| de::Error::custom(format!("bad exponent '{k}'")))?;
                let text = match v {
                    serde_json::Value::String(s) => s,
                    serde_json::Value::Number(n) => n.to_string(),
                    other => return Err(de::Error::custom(format!("bad coefficient {other}"))),
                };
                let c = (self.0)(&text).map_err(de::Error::custom)?;
                terms.push((e, c));
            }
            out = Some(Laurent::from_terms(terms));
        }
        out.ok_or_else(|| de::Error::missing_field("terms"))
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_map(TermsVisitor(parse_coeff_int))
    }
}

impl<'de> Deserialize<'de> for RatLaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_map(TermsVisitor(parse_coeff_rat))
    }
}

// ---------------------------------------------------------------------------
// Units and exact division

/// A unit `±v^k` of ℤ[v,v⁻¹].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Unit {
    pub negative: bool,
    pub exp: i64,
}

impl Unit {
    pub const ONE: Unit = Unit { negative: false, exp: 0 };

    pub fn to_poly(self) -> LaurentPoly {
        let c = if self.negative { -BigInt::one() } else { BigInt::one() };
        LaurentPoly::monomial(c, self.exp)
    }

    pub fn inverse(self) -> Unit {
        Unit { negative: self.negative, exp: -self.exp }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

/// Splits `a = unit · canonical` where `canonical` has lowest exponent 0 and a
/// positive top coefficient.
pub fn normalize_unit(a: &LaurentPoly) -> Result<(Unit, LaurentPoly)> {
    let lo = match a.min_exp() {
        Some(lo) => lo,
        None => return invalid("normalize_unit: zero has no unit normalization"),
    };
    let negative = a.leading_coeff().is_some_and(|c| c.is_negative());
    let mut canon = a.shift(-lo);
    if negative {
        canon = -canon;
    }
    Ok((Unit { negative, exp: lo }, canon))
}

/// Unit-normalized representative; zero maps to zero.
pub fn canonical(a: &LaurentPoly) -> LaurentPoly {
    match normalize_unit(a) {
        Ok((_, c)) => c,
        Err(_) => LaurentPoly::zero(),
    }
}

/// Exact quotient `a / b` in ℤ[v,v⁻¹]; `Ok(None)` when `b` does not divide `a`.
pub fn divide_exact(a: &LaurentPoly, b: &LaurentPoly) -> Result<Option<LaurentPoly>> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if a.is_zero() {
        return Ok(Some(LaurentPoly::zero()));
    }
    let (alo, blo) = (a.min_exp().unwrap(), b.min_exp().unwrap());
    let da = (a.max_exp().unwrap() - alo) as usize;
    let db = (b.max_exp().unwrap() - blo) as usize;
    if da < db {
        return Ok(None);
    }
    let mut rem = vec![BigInt::zero(); da + 1];
    for (e, c) in &a.terms {
        rem[(e - alo) as usize] = c.clone();
    }
    let bt: Vec<(usize, &BigInt)> = b.terms.iter().map(|(e, c)| ((e - blo) as usize, c)).collect();
    let lead = b.leading_coeff().unwrap();
    let unit_lead = lead.is_one();
    let mut q = vec![BigInt::zero(); da - db + 1];
    for i in (db..=da).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = if unit_lead {
            std::mem::take(&mut rem[i])
        } else {
            let (qq, r) = rem[i].div_rem(lead);
            if !r.is_zero() {
                return Ok(None);
            }
            rem[i] = BigInt::zero();
            qq
        };
        let base = i - db;
        for &(k, bc) in &bt[..bt.len() - 1] {
            rem[base + k] -= &c * bc;
        }
        q[base] = c;
    }
    if rem[..db].iter().any(|c| !c.is_zero()) {
        return Ok(None);
    }
    Ok(Some(LaurentPoly::from_dense(alo - blo, q)))
}

fn must_divide(a: &LaurentPoly, b: &LaurentPoly, what: &str) -> Result<LaurentPoly> {
    divide_exact(a, b)?.ok_or_else(|| Error::Internal(format!("{what}: inexact division")))
}

// ---------------------------------------------------------------------------
// Quantum numbers

/// `[n]_s = Σ_{k=1}^{n} v^{(n+1-2k)s}`, extended by `[0]_s = 0`, `[-n]_s = -[n]_s`.
pub fn quantum_int(n: i64, s: u32) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    let m = n.abs();
    let s = s as i64;
    let one = if n > 0 { BigInt::one() } else { -BigInt::one() };
    let terms = (1..=m).rev().map(|k| ((m + 1 - 2 * k) * s, one.clone())).collect();
    Laurent { terms }
}

pub fn quantum_factorial(n: u64, s: u32) -> LaurentPoly {
    (1..=n as i64).map(|k| quantum_int(k, s)).product()
}

/// Gaussian binomial `[n]_s! / ([m]_s! [n-m]_s!)`.
pub fn quantum_binomial(n: u64, m: u64, s: u32) -> Result<LaurentPoly> {
    if m > n {
        return invalid(format!("quantum_binomial: m = {m} exceeds n = {n}"));
    }
    let m = m.min(n - m);
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for k in 0..m {
        num = &num * &quantum_int((n - k) as i64, s);
        den = &den * &quantum_int((k + 1) as i64, s);
    }
    must_divide(&num, &den, "quantum_binomial")
}

/// `{n}_s = (v^{ns} + (-1)^s v^{-ns}) / (v^s + (-1)^s v^{-s})` for odd `n`.
pub fn kss_bracket(n: i64, s: u32) -> Result<LaurentPoly> {
    if n <= 0 || n % 2 == 0 {
        return invalid(format!("kss_bracket: n = {n} must be odd and positive"));
    }
    if s == 0 {
        return invalid("kss_bracket: s must be positive");
    }
    let s = s as i64;
    let sign = if s % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let num = LaurentPoly::from_terms([(n * s, BigInt::one()), (-n * s, sign.clone())]);
    let den = LaurentPoly::from_terms([(s, BigInt::one()), (-s, sign)]);
    must_divide(&num, &den, "kss_bracket")
}

/// `[p]^su = (v^p + v^{-p}) / (v + v^{-1})` for odd `p`.
pub fn su_bracket(p: i64) -> Result<LaurentPoly> {
    if p <= 0 || p % 2 == 0 {
        return invalid(format!("su_bracket: p = {p} must be odd and positive"));
    }
    let num = LaurentPoly::from_terms([(p, BigInt::one()), (-p, BigInt::one())]);
    let den = LaurentPoly::from_terms([(1, BigInt::one()), (-1, BigInt::one())]);
    must_divide(&num, &den, "su_bracket")
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials and residues

fn cyclotomic_cache() -> &'static RwLock<HashMap<u64, Arc<LaurentPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<LaurentPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `m`-th cyclotomic polynomial, from `v^m - 1 = ∏_{d|m} Φ_d`.
pub fn cyclotomic(m: u64) -> Result<Arc<LaurentPoly>> {
    if m == 0 {
        return invalid("cyclotomic: index must be positive");
    }
    if let Some(p) = cyclotomic_cache().read().unwrap().get(&m) {
        return Ok(p.clone());
    }
    let mut p = LaurentPoly::from_terms([(m as i64, BigInt::one()), (0, -BigInt::one())]);
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi = cyclotomic(d)?;
            p = must_divide(&p, &phi, "cyclotomic")?;
        }
    }
    let p = Arc::new(p);
    cyclotomic_cache().write().unwrap().insert(m, p.clone());
    Ok(p)
}

/// Residue of a Laurent polynomial in ℤ[v]/(Φ_m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicResidue {
    pub m: u64,
    /// Coefficients of `1, v, …`, of length `deg Φ_m`.
    pub residue: Vec<BigInt>,
}

impl CyclotomicResidue {
    pub fn is_zero(&self) -> bool {
        self.residue.iter().all(|c| c.is_zero())
    }
}

/// Reduces `a` modulo `Φ_m`. Since `v^m ≡ 1`, exponents are first folded mod `m`,
/// which also absorbs negative powers of `v`.
pub fn reduce_mod_cyclotomic(a: &LaurentPoly, m: u64) -> Result<CyclotomicResidue> {
    let phi = cyclotomic(m)?;
    let deg = phi.max_exp().unwrap() as usize;
    let mm = m as i64;
    let mut r = vec![BigInt::zero(); m as usize];
    for (e, c) in a.terms() {
        r[e.rem_euclid(mm) as usize] += c;
    }
    let pt: Vec<(usize, &BigInt)> = phi.terms().iter().map(|(e, c)| (*e as usize, c)).collect();
    for i in (deg..m as usize).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut r[i]);
        for &(k, pc) in &pt[..pt.len() - 1] {
            r[i - deg + k] -= &c * pc;
        }
    }
    r.truncate(deg);
    Ok(CyclotomicResidue { m, residue: r })
}

/// Whether `a` vanishes at a primitive `m`-th root of unity, decided exactly.
pub fn vanishes_at_primitive_root(a: &LaurentPoly, m: u64) -> Result<bool> {
    Ok(reduce_mod_cyclotomic(a, m)?.is_zero())
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

impl LaurentPoly {
    /// Value as an `i64` if the polynomial is a small constant.
    pub fn as_i64(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        if self.is_constant() {
            self.terms[0].1.to_i64()
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("v + v^-1") * &p("v + v^-1"), p("v^2 + 2 + v^-2"));
        let x = p("3*v^5 - v^-2");
        assert_eq!(&x + &LaurentPoly::zero(), x);
        assert_eq!(&quantum_int(2, 1) * &quantum_int(2, 2), p("v^3 + v + v^-1 + v^-3"));
        assert_eq!(&x - &x, LaurentPoly::zero());
    }

    #[test]
    fn bar_and_subst() {
        assert_eq!(p("v^2 + 3").bar(), p("v^-2 + 3"));
        assert_eq!(LaurentPoly::zero().bar(), LaurentPoly::zero());
        for n in 0..8 {
            for s in 1..4 {
                assert_eq!(quantum_int(n, s).bar(), quantum_int(n, s));
            }
        }
        assert_eq!(p("v + v^-1").subst_power(2).unwrap(), p("v^2 + v^-2"));
        assert_eq!(p("v").subst_power(-1).unwrap(), p("v^-1"));
        assert!(p("v").subst_power(0).is_err());
    }

    #[test]
    fn quantum_examples() {
        assert_eq!(quantum_int(2, 1), p("v + v^-1"));
        assert_eq!(quantum_int(1, 7), LaurentPoly::one());
        assert_eq!(quantum_int(3, 2), p("v^4 + 1 + v^-4"));
        assert_eq!(quantum_int(-1, 3), LaurentPoly::from_i64(-1));
        assert_eq!(quantum_int(0, 3), LaurentPoly::zero());
        assert_eq!(quantum_factorial(2, 1), p("v + v^-1"));
        assert_eq!(quantum_binomial(5, 0, 2).unwrap(), LaurentPoly::one());
        assert_eq!(quantum_binomial(4, 2, 1).unwrap(), p("v^4 + v^2 + 2 + v^-2 + v^-4"));
        assert!(quantum_binomial(2, 3, 1).is_err());
    }

    #[test]
    fn brackets() {
        assert_eq!(kss_bracket(3, 1).unwrap(), quantum_int(3, 1));
        assert_eq!(kss_bracket(3, 2).unwrap(), p("v^4 - 1 + v^-4"));
        assert_eq!(kss_bracket(1, 4).unwrap(), LaurentPoly::one());
        assert_eq!(kss_bracket(3, 2).unwrap().eval_one(), BigInt::one());
        assert!(kss_bracket(4, 1).is_err());
        assert_eq!(su_bracket(1).unwrap(), LaurentPoly::one());
        assert_eq!(su_bracket(3).unwrap(), p("v^2 - 1 + v^-2"));
        assert!(su_bracket(2).is_err());
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(*cyclotomic(1).unwrap(), p("v - 1"));
        assert_eq!(*cyclotomic(4).unwrap(), p("v^2 + 1"));
        assert_eq!(*cyclotomic(6).unwrap(), p("v^2 - v + 1"));
    }

    #[test]
    fn unit_normalization() {
        let (u, c) = normalize_unit(&p("-v^-1 - v^-3")).unwrap();
        assert_eq!(u, Unit { negative: true, exp: -3 });
        assert_eq!(c, p("v^2 + 1"));
        let (u, c) = normalize_unit(&p("v + v^-1")).unwrap();
        assert_eq!(u.to_poly(), p("v^-1"));
        assert_eq!(c, p("v^2 + 1"));
        let (u, c) = normalize_unit(&LaurentPoly::from_i64(5)).unwrap();
        assert_eq!(u, Unit::ONE);
        assert_eq!(c, LaurentPoly::from_i64(5));
        assert!(normalize_unit(&LaurentPoly::zero()).is_err());
    }

    #[test]
    fn exact_division() {
        assert_eq!(divide_exact(&p("v^2 - v^-2"), &p("v - v^-1")).unwrap(), Some(p("v + v^-1")));
        assert_eq!(divide_exact(&p("v + 1"), &p("v - 1")).unwrap(), None);
        assert!(divide_exact(&p("v"), &LaurentPoly::zero()).is_err());
        assert_eq!(divide_exact(&quantum_int(6, 1), &quantum_int(3, 1)).unwrap(), Some(quantum_int(2, 3)));
        assert_eq!(divide_exact(&quantum_int(6, 1), &quantum_int(2, 3)).unwrap(), Some(quantum_int(3, 1)));
        assert_eq!(divide_exact(&quantum_int(6, 1), &quantum_int(4, 1)).unwrap(), None);
        assert_eq!(divide_exact(&p("2*v + 2"), &p("2")).unwrap(), Some(p("v + 1")));
        assert_eq!(divide_exact(&p("2*v + 1"), &p("2")).unwrap(), None);
    }

    #[test]
    fn root_of_unity_vanishing() {
        assert!(vanishes_at_primitive_root(&quantum_int(4, 1), 4).unwrap());
        assert!(!vanishes_at_primitive_root(&quantum_int(3, 1), 2).unwrap());
        for m in 1..20 {
            assert!(!vanishes_at_primitive_root(&LaurentPoly::one(), m).unwrap());
        }
        assert!(vanishes_at_primitive_root(&p("v^-3 + v^3"), 12).unwrap());
    }

    #[test]
    fn display_and_parse_roundtrip() {
        for s in ["v^2 + 2 + v^-2", "-3*v^-1", "0", "v - 1", "-v^4 + 7*v"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("2*v^0 + -1*v^1"), p("2 - v"));
        assert_eq!(p("v^3 + v + v^-1 + v^-3").term_string(), "1*v^3 + 1*v^1 + 1*v^-1 + 1*v^-3");
        assert_eq!(quantum_int(3, 2).to_latex(), "[3]_{2}");
        assert_eq!(p("v^2 + 1").to_latex(), "v^{2} + 1");
    }

    #[test]
    fn serde_roundtrip() {
        let a = p("v^2 - 12345678901234567890123*v^-3");
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"{"terms":{"-3":"-12345678901234567890123","2":"1"}}"#);
        let b: LaurentPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(a, b);
        let r: RatLaurentPoly = "1/2*v - 3".parse().unwrap();
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, r#"{"terms":{"0":"-3/1","1":"1/2"}}"#);
        let back: RatLaurentPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn totients() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(60), 16);
        assert_eq!(totient(36), 12);
    }
}
