//! Smith normal forms and invariant-factor comparisons.
//!
//! - Over ℤ: local elimination modulo `p^k` for each prime dividing the
//!   determinant (computed multimodularly), with a classical gcd-based
//!   elimination for small or singular inputs.
//! - Over ℚ[v,v⁻¹]: Euclidean elimination on primitive integer
//!   representatives, with the span as Euclidean function, followed by a
//!   gcd/lcm pass that restores the divisibility chain.
//! - Over ℤ[v,v⁻¹]: a greedy reduction that either returns a diagonal
//!   reached by unimodular operations or gives up.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{det_bareiss_int, det_bareiss_poly, IntMatrix, PolyMatrix};
use crate::modp::{det_int_multimodular, is_prime_u64, Mont};
use crate::qlaurent::{divide_exact, normalize_unit, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingTag {
    ZInt,
    QLaurent,
    ZLaurent,
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RingTag::ZInt => "zint",
            RingTag::QLaurent => "qlaurent",
            RingTag::ZLaurent => "zlaurent",
        };
        f.write_str(s)
    }
}

/// Representative of `x` modulo the units of the ring.
pub fn canonical_in(ring: RingTag, x: &LaurentPoly) -> Result<LaurentPoly> {
    if x.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    match ring {
        RingTag::ZInt => match x.as_i64() {
            Some(c) => Ok(LaurentPoly::from_i64(c.abs())),
            None if x.is_constant() => Ok(LaurentPoly::constant(x.coeff(0).abs())),
            None => invalid(format!("{x} is not an integer")),
        },
        RingTag::ZLaurent => Ok(normalize_unit(x)?.1),
        RingTag::QLaurent => {
            let g = x.content();
            let prim = x.div_scalar_exact(&g).expect("content divides");
            Ok(normalize_unit(&prim)?.1)
        }
    }
}

/// A multiset of unit-normalized ring elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantMultiset {
    pub ring: RingTag,
    pub elements: Vec<LaurentPoly>,
}

impl InvariantMultiset {
    pub fn new<I: IntoIterator<Item = LaurentPoly>>(ring: RingTag, elements: I) -> Result<Self> {
        let mut v = elements.into_iter().map(|x| canonical_in(ring, &x)).collect::<Result<Vec<_>>>()?;
        v.sort();
        Ok(InvariantMultiset { ring, elements: v })
    }

    pub fn from_ints<I: IntoIterator<Item = BigInt>>(elements: I) -> Self {
        Self::new(RingTag::ZInt, elements.into_iter().map(LaurentPoly::constant)).expect("integers")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Drops the unit elements.
    pub fn non_units(&self) -> InvariantMultiset {
        InvariantMultiset { ring: self.ring, elements: self.elements.iter().filter(|x| !x.is_one()).cloned().collect() }
    }

    /// Pads with units up to `n` elements.
    pub fn padded(&self, n: usize) -> Result<InvariantMultiset> {
        if self.len() > n {
            return invalid(format!("multiset has {} elements, more than {n}", self.len()));
        }
        let extra = std::iter::repeat_n(LaurentPoly::one(), n - self.len());
        Self::new(self.ring, self.elements.iter().cloned().chain(extra))
    }

    pub fn product(&self) -> LaurentPoly {
        self.elements.iter().fold(LaurentPoly::one(), |a, b| &a * b)
    }

    pub fn as_integers(&self) -> Option<Vec<BigInt>> {
        self.elements.iter().map(|x| if x.is_constant() { Some(x.coeff(0)) } else { None }).collect()
    }
}

pub fn multiset_equal_up_to_units(a: &InvariantMultiset, b: &InvariantMultiset) -> Result<bool> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch(a.ring.to_string(), b.ring.to_string()));
    }
    // both sides are canonical already, but inputs may be hand-built
    let ca = InvariantMultiset::new(a.ring, a.elements.iter().cloned())?;
    let cb = InvariantMultiset::new(b.ring, b.elements.iter().cloned())?;
    Ok(ca.elements == cb.elements)
}

// ---------------------------------------------------------------------------
// Over ℤ

fn check_square<T>(m: &[Vec<T>]) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return invalid("matrix is not square");
    }
    Ok(n)
}

/// Classical elimination: repeatedly pivot on the smallest entry.
pub fn smith_int_classic(m: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
    let n = check_square(m)?;
    let mut a: IntMatrix = m.to_vec();
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.extend(std::iter::repeat_n(BigInt::zero(), n - t));
                return Ok(finish_int_chain(diag));
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..n {
                    let sub = &q * &a[t][j];
                    a[i][j] -= sub;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for i in t..n {
                    let sub = &q * &a[i][t];
                    a[i][j] -= sub;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the remaining block
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..n {
                        let x = a[i][j].clone();
                        a[t][j] += x;
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    Ok(finish_int_chain(diag))
}

/// Invariant factors of a diagonal integer matrix.
pub fn int_chain_from_diagonal(diag: &[BigInt]) -> Vec<BigInt> {
    finish_int_chain(diag.iter().map(|x| x.abs()).collect())
}

fn finish_int_chain(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = diag[i].gcd(&diag[j]);
            if g.is_zero() {
                continue;
            }
            let l = &diag[i] / &g * &diag[j];
            diag[i] = g;
            diag[j] = l.abs();
        }
    }
    // zeros last
    diag.sort_by_key(|x| x.is_zero());
    diag
}

/// Residues modulo `p^k` in a representation where valuations can be read off.
enum LocalCtx {
    Odd(Mont, u64),
    Pow2(u64),
}

impl LocalCtx {
    fn modulus(&self) -> u64 {
        match self {
            LocalCtx::Odd(m, _) => m.p,
            LocalCtx::Pow2(mask) => mask.wrapping_add(1),
        }
    }
    fn from_bigint(&self, x: &BigInt) -> u64 {
        match self {
            LocalCtx::Odd(m, _) => m.from_bigint(x),
            LocalCtx::Pow2(mask) => {
                let r = x.mod_floor(&BigInt::from(mask + 1));
                r.to_u64().unwrap()
            }
        }
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            LocalCtx::Odd(m, _) => m.mul(a, b),
            LocalCtx::Pow2(mask) => a.wrapping_mul(b) & mask,
        }
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        match self {
            LocalCtx::Odd(m, _) => m.sub(a, b),
            LocalCtx::Pow2(mask) => a.wrapping_sub(b) & mask,
        }
    }
    /// Inverse of a unit: `u^{φ(p^k) - 1}`.
    fn inv_unit(&self, u: u64) -> u64 {
        match self {
            LocalCtx::Odd(m, phi) => m.pow(u, phi - 1),
            LocalCtx::Pow2(mask) => {
                // Newton iteration for odd u modulo 2^64
                let mut x: u64 = u;
                for _ in 0..6 {
                    x = x.wrapping_mul(2u64.wrapping_sub(u.wrapping_mul(x)));
                }
                x & mask
            }
        }
    }
}

fn val_u64(mut x: u64, p: u64, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Valuations of the local invariant factors at `p`, computed modulo `p^k`;
/// entries equal to `k` mean "at least `k`".
fn local_valuations_u64(m: &[Vec<BigInt>], p: u64, k: u32) -> Vec<u32> {
    let n = m.len();
    let pk = p.pow(k);
    let ctx = if p == 2 {
        LocalCtx::Pow2(pk - 1)
    } else {
        LocalCtx::Odd(Mont::new(pk), pk / p * (p - 1))
    };
    debug_assert_eq!(ctx.modulus(), pk);
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|x| ctx.from_bigint(x)).collect()).collect();
    let mut vals = Vec::with_capacity(n);
    for t in 0..n {
        // minimal valuation in the remaining block, stopping at the first unit
        let mut best: Option<(usize, usize, u32)> = None;
        'search: for i in t..n {
            for j in t..n {
                let v = val_u64(a[i][j], p, k);
                if v < best.map_or(k, |b| b.2) {
                    best = Some((i, j, v));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else {
            vals.extend(std::iter::repeat_n(k, n - t));
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let pv = p.pow(v);
        // in Montgomery form x·R, and R is prime to p, so the quotient by p^v stays consistent
        let unit = a[t][t] / pv;
        let uinv = ctx.inv_unit(unit);
        let (top, bottom) = a.split_at_mut(t + 1);
        let prow = &top[t];
        for row in bottom.iter_mut() {
            if row[t] == 0 {
                continue;
            }
            let f = ctx.mul(row[t] / pv, uinv);
            for (x, &y) in row[t + 1..].iter_mut().zip(&prow[t + 1..]) {
                *x = ctx.sub(*x, ctx.mul(f, y));
            }
            row[t] = 0;
        }
        vals.push(v);
    }
    vals.sort_unstable();
    vals
}

fn trial_factor(n: &BigInt) -> Option<Vec<(u64, u32)>> {
    let mut rest = n.abs();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while d < 1 << 20 {
        let db = BigInt::from(d);
        if rest.is_multiple_of(&db) {
            let mut e = 0;
            while rest.is_multiple_of(&db) {
                rest /= &db;
                e += 1;
            }
            out.push((d, e));
        }
        if rest.is_one() {
            return Some(out);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let r = rest.to_u64()?;
    if is_prime_u64(r) {
        out.push((r, 1));
        Some(out)
    } else {
        None
    }
}

/// Invariant factors over ℤ in divisibility order.
pub fn smith_int(m: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
    let n = check_square(m)?;
    if n <= 12 {
        return smith_int_classic(m);
    }
    let det = det_int_multimodular(m)?;
    if det.is_zero() {
        return smith_int_classic(m);
    }
    let Some(factors) = trial_factor(&det) else {
        log::warn!("determinant has a large prime factor; using classical elimination");
        return smith_int_classic(m);
    };
    let mut diag = vec![BigInt::one(); n];
    for (p, e) in factors {
        // largest k with p^k below 2^62
        let mut k = 1;
        while (p as u128).pow(k + 1) < 1u128 << 62 {
            k += 1;
        }
        let k = k.min(e + 1);
        let vals = local_valuations_u64(m, p, k);
        let total: u32 = vals.iter().sum();
        if vals.iter().any(|&v| v >= k) {
            log::warn!("local valuation at {p} reaches the working precision; using classical elimination");
            return smith_int_classic(m);
        }
        if total != e {
            return Err(Error::Internal(format!("local valuations at {p} sum to {total}, expected {e}")));
        }
        for (slot, v) in diag.iter_mut().zip(vals) {
            *slot *= BigInt::from(p).pow(v);
        }
    }
    Ok(diag)
}

pub fn snf_int(m: &[Vec<BigInt>]) -> Result<InvariantMultiset> {
    Ok(InvariantMultiset::from_ints(smith_int(m)?))
}

// ---------------------------------------------------------------------------
// Over ℚ[v,v⁻¹]

/// Dense integer polynomial, index = degree.
type Dense = Vec<BigInt>;

fn dense_trim(mut a: Dense) -> Dense {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn to_dense(a: &LaurentPoly) -> (i64, Dense) {
    let Some(lo) = a.min_exp() else {
        return (0, Vec::new());
    };
    let mut out = vec![BigInt::zero(); (a.max_exp().unwrap() - lo) as usize + 1];
    for (e, c) in a.terms() {
        out[(e - lo) as usize] = c.clone();
    }
    (lo, out)
}

fn from_dense(lo: i64, d: Dense) -> LaurentPoly {
    LaurentPoly::from_dense(lo, d)
}

/// `mult · a = q · b + r` with `deg r < deg b`; `b` nonzero.
fn pseudo_divmod(a: &Dense, b: &Dense) -> (BigInt, Dense, Dense) {
    let lb = b.last().unwrap().clone();
    let db = b.len() - 1;
    let mut r = a.clone();
    let mut mult = BigInt::one();
    if r.len() <= db {
        return (mult, Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        let g = lr.gcd(&lb);
        let (fr, fb) = (&lb / &g, &lr / &g);
        // r ← fr·r − fb·v^shift·b ; q ← fr·q + fb·v^shift
        if !fr.is_one() {
            for c in r.iter_mut() {
                *c *= &fr;
            }
            for c in q.iter_mut() {
                *c *= &fr;
            }
            mult *= &fr;
        }
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &fb * bc;
        }
        q[shift] += &fb;
        r = dense_trim(r);
    }
    (mult, dense_trim(q), r)
}

fn dense_content(a: &Dense) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn dense_primitive(a: &Dense) -> Dense {
    let g = dense_content(a);
    if g.is_zero() || g.is_one() {
        return a.clone();
    }
    a.iter().map(|c| c / &g).collect()
}

/// gcd over ℚ[v] as a primitive integer polynomial.
fn dense_gcd(a: &Dense, b: &Dense) -> Dense {
    let (mut x, mut y) = (dense_primitive(a), dense_primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let (_, _, r) = pseudo_divmod(&x, &y);
        x = y;
        y = dense_primitive(&r);
    }
    x
}

fn laurent_gcd_q(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let g = dense_gcd(&to_dense(a).1, &to_dense(b).1);
    from_dense(0, g)
}

/// Exact quotient over ℚ[v,v⁻¹] of primitive representatives, rescaled to be primitive.
fn laurent_div_q(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    let (la, da) = to_dense(a);
    let (lb, db) = to_dense(b);
    let (_, q, r) = pseudo_divmod(&da, &db);
    if !r.is_empty() {
        return Err(Error::Internal("inexact division over Q[v]".into()));
    }
    Ok(from_dense(la - lb, dense_primitive(&q)))
}

fn row_content_reduce(row: &mut [LaurentPoly]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(&x.content()));
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x = x.div_scalar_exact(&g).expect("content divides");
    }
}

fn pivot_key(x: &LaurentPoly) -> (u64, usize, u64) {
    let maxbits = x.terms().iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
    (x.span(), x.len(), maxbits)
}

/// Diagonalizes over ℚ[v,v⁻¹] by exact Euclidean elimination; the output is
/// in divisibility order with zeros last, each entry primitive and
/// unit-normalized. Coefficients swell quickly, so this is only used for
/// small matrices and as a reference.
pub fn smith_laurent_field_exact(m: &[Vec<LaurentPoly>]) -> Result<Vec<LaurentPoly>> {
    let n = check_square(m)?;
    let mut a: PolyMatrix = m.to_vec();
    for row in a.iter_mut() {
        row_content_reduce(row);
    }
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| pivot_key(&a[i][j]) < pivot_key(&a[bi][bj]))
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.extend(std::iter::repeat_n(LaurentPoly::zero(), n - t));
                return finish_q_chain(diag);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let (plo, pd) = to_dense(&a[t][t]);
            let mut clean = true;
            // rows
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let (lo, d) = to_dense(&a[i][t]);
                let (mult, q, _) = pseudo_divmod(&d, &pd);
                let ql = from_dense(lo - plo, q);
                let (top, bottom) = a.split_at_mut(i);
                let prow = &top[t];
                let row = &mut bottom[0];
                for j in t..n {
                    let mut x = row[j].scale(&mult);
                    if !ql.is_zero() && !prow[j].is_zero() {
                        x -= &(&ql * &prow[j]);
                    }
                    row[j] = x;
                }
                row_content_reduce(row);
                clean &= row[t].is_zero();
            }
            // columns
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let (lo, d) = to_dense(&a[t][j]);
                let (mult, q, _) = pseudo_divmod(&d, &pd);
                let ql = from_dense(lo - plo, q);
                for row in a.iter_mut().skip(t) {
                    let mut x = row[j].scale(&mult);
                    if !ql.is_zero() && !row[t].is_zero() {
                        x -= &(&ql * &row[t]);
                    }
                    row[j] = x;
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                diag.push(a[t][t].clone());
                break;
            }
        }
    }
    finish_q_chain(diag)
}

/// Invariant factors of a diagonal matrix over ℚ[v,v⁻¹].
pub fn chain_from_diagonal(diag: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
    finish_q_chain(diag.to_vec())
}

fn finish_q_chain(mut diag: Vec<LaurentPoly>) -> Result<Vec<LaurentPoly>> {
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            if diag[i].is_zero() || diag[j].is_zero() {
                continue;
            }
            let g = laurent_gcd_q(&diag[i], &diag[j]);
            let prod = &diag[i] * &diag[j];
            let l = laurent_div_q(&prod, &g)?;
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag.sort_by_key(|x| x.is_zero());
    diag.iter().map(|x| canonical_in(RingTag::QLaurent, x)).collect()
}

/// Largest dimension handled by [`smith_laurent_field_exact`] in [`smith_laurent_field`].
pub const FIELD_EXACT_MAX_DIM: usize = 6;

/// Invariant factors over ℚ[v,v⁻¹] in divisibility order, zeros last.
///
/// Small inputs use exact elimination. Larger ones are eliminated over
/// `F_p[v]` for several primes and lifted by rational reconstruction; the lift
/// is accepted only if every prime agrees, a further prime reproduces it and
/// the product matches the exact determinant up to a unit.
pub fn smith_laurent_field(m: &[Vec<LaurentPoly>]) -> Result<Vec<LaurentPoly>> {
    let n = check_square(m)?;
    if n <= FIELD_EXACT_MAX_DIM {
        return smith_laurent_field_exact(m);
    }
    let det = crate::modp::det_laurent_multimodular(m)?;
    if det.is_zero() {
        log::warn!("singular matrix; using exact elimination over Q[v]");
        return smith_laurent_field_exact(m);
    }
    let det_canon = canonical_in(RingTag::QLaurent, &det)?;
    let primes = crate::modp::large_primes(FIELD_MAX_PRIMES);
    let mut used: Vec<(u64, Vec<Vec<u64>>)> = Vec::new();
    let expected_deg = det.span() as usize;
    for &p in &primes {
        let mont = Mont::new(p);
        let inv = fp::smith(m, &mont);
        let total: usize = inv.iter().map(|f| f.len() - 1).sum();
        if total != expected_deg {
            // p divides a leading coefficient somewhere
            continue;
        }
        let plain: Vec<Vec<u64>> = inv.iter().map(|f| f.iter().map(|&c| mont.from_mont(c)).collect()).collect();
        if let Some((_, first)) = used.first() {
            let same_shape = first.len() == plain.len() && first.iter().zip(&plain).all(|(a, b)| a.len() == b.len());
            if !same_shape {
                log::warn!("invariant degrees modulo {p} disagree with the first prime; skipping it");
                continue;
            }
        }
        used.push((p, plain));
        if used.len() < FIELD_MIN_PRIMES {
            continue;
        }
        // lift from all but the newest prime, confirm with the newest
        let (check_p, check) = used.last().unwrap().clone();
        let Some(lift) = fp::reconstruct(&used[..used.len() - 1]) else {
            continue;
        };
        let cm = Mont::new(check_p);
        let agrees = lift.iter().zip(&check).all(|(f, g)| fp::monic_reduction(f, &cm) == *g);
        if !agrees {
            continue;
        }
        let prod = lift.iter().fold(LaurentPoly::one(), |a, b| &a * b);
        if canonical_in(RingTag::QLaurent, &prod)? != det_canon {
            continue;
        }
        let mut out: Vec<LaurentPoly> = vec![LaurentPoly::one(); n - lift.len()];
        out.extend(lift);
        return out.iter().map(|x| canonical_in(RingTag::QLaurent, x)).collect();
    }
    Err(Error::Internal("modular field SNF did not stabilize".into()))
}

const FIELD_MIN_PRIMES: usize = 3;
const FIELD_MAX_PRIMES: usize = 12;

pub fn snf_laurent_field(m: &[Vec<LaurentPoly>]) -> Result<InvariantMultiset> {
    InvariantMultiset::new(RingTag::QLaurent, smith_laurent_field(m)?)
}

/// gcd over ℚ[v,v⁻¹] of all `k×k` minors for `k = 1..=n`; exponential in `n`.
pub fn det_ideal_gcds(m: &[Vec<LaurentPoly>]) -> Result<Vec<LaurentPoly>> {
    let n = check_square(m)?;
    if n > 8 {
        return invalid("det_ideal_gcds enumerates all minors; size limit is 8");
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let subs = subsets(n, k);
        let mut g = LaurentPoly::zero();
        for rows in &subs {
            for cols in &subs {
                let minor: PolyMatrix = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect();
                let d = det_bareiss_poly(&minor)?;
                g = laurent_gcd_q(&g, &d);
            }
        }
        out.push(canonical_in(RingTag::QLaurent, &g)?);
    }
    Ok(out)
}


/// Polynomials over `F_p` as dense Montgomery-form coefficient vectors.
mod fp {
    use super::*;

    pub type Poly = Vec<u64>;

    fn trim(a: &mut Poly) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn monic(a: &mut Poly, m: &Mont) {
        if let Some(&lc) = a.last() {
            let inv = m.inv(lc);
            for c in a.iter_mut() {
                *c = m.mul(*c, inv);
            }
        }
    }

    /// `(q, r)` with `a = q b + r`; `b` nonzero.
    fn divmod(a: &Poly, b: &Poly, m: &Mont) -> (Poly, Poly) {
        let db = b.len() - 1;
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let inv = m.inv(*b.last().unwrap());
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = m.mul(r[k + db], inv);
            q[k] = c;
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = m.sub(r[k + j], m.mul(c, bj));
                }
            }
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    /// `x -= q·y`.
    fn sub_mul(x: &mut Poly, q: &Poly, y: &Poly, m: &Mont) {
        if q.is_empty() || y.is_empty() {
            return;
        }
        let need = q.len() + y.len() - 1;
        if x.len() < need {
            x.resize(need, 0);
        }
        for (i, &qi) in q.iter().enumerate() {
            if qi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                x[i + j] = m.sub(x[i + j], m.mul(qi, yj));
            }
        }
        trim(x);
    }

    fn mul(a: &Poly, b: &Poly, m: &Mont) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = m.add(out[i + j], m.mul(ai, bj));
            }
        }
        out
    }

    fn gcd(a: &Poly, b: &Poly, m: &Mont) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let (_, r) = divmod(&x, &y, m);
            x = y;
            y = r;
        }
        monic(&mut x, m);
        x
    }

    /// Monic invariant factors different from 1, in divisibility order, with
    /// factors of `v` removed.
    pub fn smith(mat: &[Vec<LaurentPoly>], m: &Mont) -> Vec<Poly> {
        let n = mat.len();
        let lo = mat.iter().flatten().filter_map(|x| x.min_exp()).min().unwrap_or(0);
        let mut a: Vec<Vec<Poly>> = mat
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let mut f = vec![0u64; x.max_exp().map_or(0, |h| (h - lo) as usize + 1)];
                        for (e, c) in x.terms() {
                            f[(e - lo) as usize] = m.from_bigint(c);
                        }
                        trim(&mut f);
                        f
                    })
                    .collect()
            })
            .collect();
        let mut diag: Vec<Poly> = Vec::with_capacity(n);
        for t in 0..n {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..n {
                    for j in t..n {
                        if !a[i][j].is_empty() && best.is_none_or(|(bi, bj)| a[i][j].len() < a[bi][bj].len()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    diag.extend(std::iter::repeat_n(Vec::new(), n - t));
                    break;
                };
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                let piv = a[t][t].clone();
                let mut clean = true;
                for i in t + 1..n {
                    if a[i][t].is_empty() {
                        continue;
                    }
                    let (q, _) = divmod(&a[i][t], &piv, m);
                    let (top, bottom) = a.split_at_mut(i);
                    for j in t..n {
                        sub_mul(&mut bottom[0][j], &q, &top[t][j], m);
                    }
                    clean &= bottom[0][t].is_empty();
                }
                for j in t + 1..n {
                    if a[t][j].is_empty() {
                        continue;
                    }
                    let (q, _) = divmod(&a[t][j], &piv, m);
                    for row in a.iter_mut().skip(t) {
                        let y = row[t].clone();
                        sub_mul(&mut row[j], &q, &y, m);
                    }
                    clean &= a[t][j].is_empty();
                }
                if clean {
                    diag.push(piv);
                    break;
                }
            }
            if diag.len() == n {
                break;
            }
        }
        // strip v and normalize
        for f in diag.iter_mut() {
            let z = f.iter().take_while(|&&c| c == 0).count();
            if z < f.len() {
                f.drain(..z);
            }
            monic(f, m);
        }
        let mut rest: Vec<Poly> = diag.into_iter().filter(|f| f.len() != 1).collect();
        let k = rest.len();
        for i in 0..k {
            for j in i + 1..k {
                if rest[i].is_empty() || rest[j].is_empty() || rest[i].len() == 1 {
                    continue;
                }
                let g = gcd(&rest[i], &rest[j], m);
                if g.len() == rest[i].len() {
                    continue;
                }
                let (q, _) = divmod(&rest[i], &g, m);
                rest[j] = mul(&rest[j], &q, m);
                monic(&mut rest[j], m);
                rest[i] = g;
            }
        }
        rest.retain(|f| f.len() != 1);
        rest.sort_by_key(|f| if f.is_empty() { usize::MAX } else { f.len() });
        rest
    }

    /// Rational reconstruction of `a mod md`, numerator and denominator below `sqrt(md/2)`.
    fn ratrecon(a: &BigInt, md: &BigInt) -> Option<(BigInt, BigInt)> {
        let bound = num_integer::Roots::sqrt(&(md / 2u32));
        let (mut r0, mut r1) = (md.clone(), a.mod_floor(md));
        let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
        while r1 > bound {
            let q = &r0 / &r1;
            let r2 = &r0 - &q * &r1;
            let t2 = &t0 - &q * &t1;
            r0 = std::mem::replace(&mut r1, r2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if t1.is_zero() || t1.abs() > bound {
            return None;
        }
        if t1.is_negative() {
            Some((-r1, -t1))
        } else {
            Some((r1, t1))
        }
    }

    /// Integer primitive lifts of monic residues (given in plain form) modulo several primes.
    pub fn reconstruct(res: &[(u64, Vec<Vec<u64>>)]) -> Option<Vec<LaurentPoly>> {
        let modulus: BigInt = res.iter().map(|(p, _)| BigInt::from(*p)).product();
        let count = res[0].1.len();
        let mut out = Vec::with_capacity(count);
        for idx in 0..count {
            let len = res[0].1[idx].len();
            if len == 0 {
                out.push(LaurentPoly::zero());
                continue;
            }
            let mut nums = Vec::with_capacity(len);
            let mut dens = Vec::with_capacity(len);
            for c in 0..len {
                // CRT
                let mut acc = BigInt::zero();
                let mut md = BigInt::one();
                for (p, polys) in res {
                    let pb = BigInt::from(*p);
                    let r = BigInt::from(polys[idx][c]);
                    let diff = (&r - &acc).mod_floor(&pb);
                    let inv = md.modpow(&(&pb - 2u32), &pb);
                    let k = (diff * inv).mod_floor(&pb);
                    acc += &md * k;
                    md *= &pb;
                }
                let (nu, de) = ratrecon(&acc, &modulus)?;
                nums.push(nu);
                dens.push(de);
            }
            let l = dens.iter().fold(BigInt::one(), |l, d| l.lcm(d));
            let coeffs: Vec<BigInt> = nums.iter().zip(&dens).map(|(nu, de)| nu * (&l / de)).collect();
            let g = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            out.push(LaurentPoly::from_dense(0, coeffs.into_iter().map(|c| c / &g).collect()));
        }
        Some(out)
    }

    /// Plain-form monic reduction of an integer polynomial modulo `m.p`.
    pub fn monic_reduction(f: &LaurentPoly, m: &Mont) -> Vec<u64> {
        let lo = f.min_exp().unwrap_or(0);
        let mut g = vec![0u64; f.max_exp().map_or(0, |h| (h - lo) as usize + 1)];
        for (e, c) in f.terms() {
            g[(e - lo) as usize] = m.from_bigint(c);
        }
        trim(&mut g);
        monic(&mut g, m);
        g.into_iter().map(|c| m.from_mont(c)).collect()
    }
}

// ---------------------------------------------------------------------------
// Over ℤ[v,v⁻¹]

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagOutcome {
    Success(Vec<LaurentPoly>),
    Inconclusive { steps: usize, reason: String },
}

/// Division with remainder by `b` when its top coefficient is `±1`, reducing
/// `a` until its top exponent drops below that of `b` shifted to `a`'s bottom.
fn reduce_top(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let lead = b.leading_coeff()?.clone();
    if !lead.abs().is_one() {
        return None;
    }
    let (alo, blo, bhi) = (a.min_exp()?, b.min_exp()?, b.max_exp()?);
    let mut r = a.clone();
    let mut q = LaurentPoly::zero();
    while let Some(rhi) = r.max_exp() {
        if rhi - alo < bhi - blo {
            break;
        }
        let c = r.leading_coeff().unwrap() * &lead;
        let term = LaurentPoly::monomial(c, rhi - bhi);
        r -= &(&term * b);
        q += &term;
    }
    Some(q)
}

/// Same as [`reduce_top`] from the bottom end, for `b` with trailing coefficient `±1`.
fn reduce_bottom(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let (ra, rb) = (a.bar(), b.bar());
    reduce_top(&ra, &rb).map(|q| q.bar())
}

fn is_unit_zl(x: &LaurentPoly) -> bool {
    x.is_monomial() && x.terms()[0].1.abs().is_one()
}

/// Greedy unimodular reduction over ℤ[v,v⁻¹]. Never claims non-equivalence.
pub fn try_diagonalize_zlaurent(m: &[Vec<LaurentPoly>], budget: usize) -> Result<DiagOutcome> {
    let n = check_square(m)?;
    let mut a: PolyMatrix = m.to_vec();
    let mut steps = 0usize;
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            steps += 1;
            if steps > budget {
                return Ok(DiagOutcome::Inconclusive { steps, reason: "step budget exhausted".into() });
            }
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    let key = |x: &LaurentPoly| {
                        let monic = x.leading_coeff().is_some_and(|c| c.abs().is_one())
                            || x.terms()[0].1.abs().is_one();
                        (!monic, pivot_key(x))
                    };
                    if best.is_none_or(|(bi, bj)| key(&a[i][j]) < key(&a[bi][bj])) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.extend(std::iter::repeat_n(LaurentPoly::zero(), n - t));
                return Ok(DiagOutcome::Success(diag));
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut progress = false;
            let mut clean = true;
            let quotient = |x: &LaurentPoly| -> Result<Option<LaurentPoly>> {
                if let Some(q) = divide_exact(x, &p)? {
                    return Ok(Some(q));
                }
                if let Some(q) = reduce_top(x, &p).filter(|q| !q.is_zero()) {
                    return Ok(Some(q));
                }
                Ok(reduce_bottom(x, &p).filter(|q| !q.is_zero()))
            };
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                match quotient(&a[i][t])? {
                    Some(q) => {
                        let (top, bottom) = a.split_at_mut(i);
                        let prow = &top[t];
                        for j in t..n {
                            if !prow[j].is_zero() {
                                let sub = &q * &prow[j];
                                bottom[0][j] -= &sub;
                            }
                        }
                        progress = true;
                        clean &= bottom[0][t].is_zero();
                    }
                    None => clean = false,
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                match quotient(&a[t][j])? {
                    Some(q) => {
                        for row in a.iter_mut().skip(t) {
                            if !row[t].is_zero() {
                                let sub = &q * &row[t];
                                row[j] -= &sub;
                            }
                        }
                        progress = true;
                        clean &= a[t][j].is_zero();
                    }
                    None => clean = false,
                }
            }
            if clean {
                diag.push(p);
                break;
            }
            if !progress {
                return Ok(DiagOutcome::Inconclusive {
                    steps,
                    reason: format!("no unimodular reduction available at pivot {t}"),
                });
            }
        }
    }
    // the greedy pass may leave units anywhere; sort for presentation only
    diag.sort_by_key(|x| !is_unit_zl(x));
    Ok(DiagOutcome::Success(diag))
}

/// Cross-checks a claimed diagonal form `diag` of `m` against field and `v = 1`
/// invariants.
pub fn cross_check_diagonal(m: &[Vec<LaurentPoly>], diag: &[LaurentPoly]) -> Result<bool> {
    let n = check_square(m)?;
    if diag.len() != n {
        return Ok(false);
    }
    let field_d = InvariantMultiset::new(RingTag::QLaurent, chain_from_diagonal(diag)?)?;
    if field_d != snf_laurent_field(m)? {
        return Ok(false);
    }
    let ones_d = InvariantMultiset::from_ints(finish_int_chain(diag.iter().map(|x| x.eval_one().abs()).collect()));
    Ok(ones_d == snf_int(&crate::linalg::at_one(m))?)
}

/// Integer determinant, choosing Bareiss for small inputs.
pub fn det_int(m: &[Vec<BigInt>]) -> Result<BigInt> {
    if m.len() <= 16 {
        det_bareiss_int(m)
    } else {
        det_int_multimodular(m)
    }
}
