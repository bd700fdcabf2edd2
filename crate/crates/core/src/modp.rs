//! Word-size modular arithmetic and multimodular determinants.
//!
//! Determinants of integer and Laurent polynomial matrices are computed modulo
//! a sequence of 62-bit primes and recombined by CRT. For polynomial matrices
//! each prime handles evaluation at enough points to pin the determinant and
//! interpolates. The number of primes comes from a Hadamard-type bound, so the
//! result is exact.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qlaurent::LaurentPoly;

/// Montgomery context for an odd modulus below `2^63`.
#[derive(Clone, Copy, Debug)]
pub struct Mont {
    pub p: u64,
    ninv: u64,
    r2: u64,
}

impl Mont {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < (1 << 63));
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Mont { p, ninv: inv.wrapping_neg(), r2 }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.ninv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        // branch-free conditional subtraction
        u.min(u.wrapping_sub(self.p))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        s.min(s.wrapping_sub(self.p))
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        let r = a.wrapping_sub(b);
        r.min(r.wrapping_add(self.p))
    }

    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        let r = a.rem_euclid(self.p as i64) as u64;
        self.to_mont(r)
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        let r = a.mod_floor(&BigInt::from(self.p));
        self.to_mont(r.to_u64().expect("residue fits"))
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The first `count` primes below `2^62`, descending.
pub fn large_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime_u64(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

const PRIME_BITS: f64 = 61.9;

/// Determinant of a square matrix with entries in Montgomery form; consumes the matrix.
pub fn det_mod(a: &mut [Vec<u64>], m: &Mont) -> u64 {
    let n = a.len();
    let mut det = m.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if piv != k {
            a.swap(piv, k);
            det = m.sub(0, det);
        }
        det = m.mul(det, a[k][k]);
        let inv = m.inv(a[k][k]);
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            if row[k] == 0 {
                continue;
            }
            let f = m.mul(row[k], inv);
            for (x, &y) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                *x = m.sub(*x, m.mul(f, y));
            }
            row[k] = 0;
        }
    }
    det
}

/// Garner-style CRT accumulation with a symmetric final lift.
struct Crt {
    value: BigInt,
    modulus: BigInt,
}

impl Crt {
    fn new() -> Self {
        Crt { value: BigInt::zero(), modulus: BigInt::one() }
    }

    fn push(&mut self, residue: u64, p: u64) {
        let pb = BigInt::from(p);
        let cur = self.value.mod_floor(&pb).to_u64().unwrap();
        let mmod = self.modulus.mod_floor(&pb).to_u64().unwrap();
        let diff = (residue as u128 + p as u128 - cur as u128) as u64 % p;
        let t = mulmod(diff, powmod(mmod, p - 2, p), p);
        self.value += &self.modulus * BigInt::from(t);
        self.modulus *= pb;
    }

    fn symmetric(&self) -> BigInt {
        let half = &self.modulus >> 1;
        if self.value > half {
            &self.value - &self.modulus
        } else {
            self.value.clone()
        }
    }
}

fn log2_big(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits < 1000 {
        return x.abs().to_f64().unwrap().log2();
    }
    let shifted: BigInt = x.abs() >> (bits - 64);
    shifted.to_f64().unwrap().log2() + (bits - 64) as f64
}

/// `log2` of Hadamard's bound `∏_i ‖row_i‖_2` applied to the given magnitudes.
fn hadamard_log2(mags: &[Vec<BigInt>]) -> f64 {
    let mut total = 0.0;
    for row in mags {
        let mut sq = BigInt::zero();
        for x in row {
            sq += x * x;
        }
        if sq.is_zero() {
            return f64::NEG_INFINITY;
        }
        total += log2_big(&sq) / 2.0;
    }
    total
}

fn primes_for(bits: f64) -> usize {
    ((bits + 2.0) / PRIME_BITS).ceil().max(1.0) as usize + 1
}

/// Exact integer determinant by CRT over word-size primes.
pub fn det_int_multimodular(m: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let bound = hadamard_log2(m);
    if bound == f64::NEG_INFINITY {
        return Ok(BigInt::zero());
    }
    let primes = large_primes(primes_for(bound));
    let residues: Vec<u64> = primes
        .par_iter()
        .map(|&p| {
            let ctx = Mont::new(p);
            let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|x| ctx.from_bigint(x)).collect()).collect();
            ctx.from_mont(det_mod(&mut a, &ctx))
        })
        .collect();
    let mut crt = Crt::new();
    for (&r, &p) in residues.iter().zip(&primes) {
        crt.push(r, p);
    }
    Ok(crt.symmetric())
}

/// Sparse Laurent entry reduced mod a prime: `(exponent, coefficient)` pairs.
type SparseEntry = Vec<(i64, u64)>;

fn eval_entry(e: &SparseEntry, powers: &dyn Fn(i64) -> u64, ctx: &Mont) -> u64 {
    let mut acc = 0;
    for &(k, c) in e {
        acc = ctx.add(acc, ctx.mul(c, powers(k)));
    }
    acc
}

/// Inverses of nonzero residues with a single modular inversion.
fn batch_inverse(xs: &[u64], ctx: &Mont) -> Vec<u64> {
    let mut prefix = Vec::with_capacity(xs.len());
    let mut acc = ctx.one();
    for &x in xs {
        prefix.push(acc);
        acc = ctx.mul(acc, x);
    }
    let mut inv = ctx.inv(acc);
    let mut out = vec![0; xs.len()];
    for i in (0..xs.len()).rev() {
        out[i] = ctx.mul(inv, prefix[i]);
        inv = ctx.mul(inv, xs[i]);
    }
    out
}

/// Newton interpolation through `(xs[i], ys[i])`, returning monomial coefficients.
fn interpolate(xs: &[u64], ys: &[u64], ctx: &Mont) -> Vec<u64> {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        let dens: Vec<u64> = (j..n).map(|i| ctx.sub(xs[i], xs[i - j])).collect();
        let invs = batch_inverse(&dens, ctx);
        for i in (j..n).rev() {
            let num = ctx.sub(coef[i], coef[i - 1]);
            coef[i] = ctx.mul(num, invs[i - j]);
        }
    }
    let mut poly = vec![0u64; n];
    for i in (0..n).rev() {
        // poly = poly * (x - xs[i]) + coef[i]
        let mut next = vec![0u64; n];
        for k in 0..n {
            if poly[k] == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = ctx.add(next[k + 1], poly[k]);
            }
            next[k] = ctx.sub(next[k], ctx.mul(poly[k], xs[i]));
        }
        next[0] = ctx.add(next[0], coef[i]);
        poly = next;
    }
    poly
}

/// Exact determinant over `ℤ[v,v⁻¹]` by evaluation, interpolation and CRT.
///
/// When every entry is bar-invariant the determinant is too, and it is
/// interpolated as a polynomial in `w = v + v⁻¹`, halving the number of points.
pub fn det_laurent_multimodular(m: &[Vec<LaurentPoly>]) -> Result<LaurentPoly> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut lo_total: i64 = 0;
    let mut hi_total: i64 = 0;
    for row in m {
        let lo = row.iter().filter_map(|x| x.min_exp()).min();
        let hi = row.iter().filter_map(|x| x.max_exp()).max();
        match (lo, hi) {
            (Some(lo), Some(hi)) => {
                lo_total += lo;
                hi_total += hi;
            }
            _ => return Ok(LaurentPoly::zero()),
        }
    }
    let mags: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|x| x.l1_norm()).collect()).collect();
    let bound = hadamard_log2(&mags);
    let symmetric = m.iter().all(|r| r.iter().all(|x| x.is_bar_invariant()));
    // in the symmetric case the determinant lives in [-K, K] with K = min(hi_total, -lo_total)
    let sym_k = hi_total.min(-lo_total);
    let use_w = symmetric && sym_k >= 0;
    let npoints = if use_w { sym_k as usize + 1 } else { (hi_total - lo_total) as usize + 1 };
    if !use_w && symmetric {
        return Ok(LaurentPoly::zero());
    }
    let primes = large_primes(primes_for(bound));
    let per_prime: Vec<Vec<u64>> = primes
        .par_iter()
        .map(|&p| {
            let ctx = Mont::new(p);
            let entries: Vec<Vec<SparseEntry>> = m
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.terms().iter().map(|(k, c)| (*k, ctx.from_bigint(c))).collect())
                        .collect()
                })
                .collect();
            let (emin, emax) = (
                m.iter().flatten().filter_map(|x| x.min_exp()).min().unwrap_or(0),
                m.iter().flatten().filter_map(|x| x.max_exp()).max().unwrap_or(0),
            );
            let mut xs = Vec::with_capacity(npoints);
            let mut ys = Vec::with_capacity(npoints);
            for idx in 0..npoints {
                let t = ctx.to_mont(idx as u64 + 2);
                let tinv = ctx.inv(t);
                let mut table = Vec::with_capacity((emax - emin + 1) as usize);
                let mut cur = if emin >= 0 { ctx.pow(t, emin as u64) } else { ctx.pow(tinv, (-emin) as u64) };
                for _ in emin..=emax {
                    table.push(cur);
                    cur = ctx.mul(cur, t);
                }
                let powers = |k: i64| table[(k - emin) as usize];
                let mut a: Vec<Vec<u64>> =
                    entries.iter().map(|r| r.iter().map(|e| eval_entry(e, &powers, &ctx)).collect()).collect();
                let d = det_mod(&mut a, &ctx);
                if use_w {
                    xs.push(ctx.add(t, tinv));
                    ys.push(d);
                } else {
                    // strip v^{lo_total} so that the values come from a polynomial
                    let shift = if lo_total >= 0 { ctx.pow(tinv, lo_total as u64) } else { ctx.pow(t, (-lo_total) as u64) };
                    xs.push(t);
                    ys.push(ctx.mul(d, shift));
                }
            }
            let poly = interpolate(&xs, &ys, &ctx);
            if use_w {
                // expand Σ r_j (v + v⁻¹)^j; coefficient of v^{k} sits at index k + K
                let k = sym_k as usize;
                let mut out = vec![0u64; 2 * k + 1];
                let mut binom = vec![ctx.one()];
                for (j, &r) in poly.iter().enumerate() {
                    if j > 0 {
                        let mut next = vec![ctx.one(); j + 1];
                        for i in 1..j {
                            next[i] = ctx.add(binom[i - 1], binom[i]);
                        }
                        binom = next;
                    }
                    if r == 0 {
                        continue;
                    }
                    for (i, &b) in binom.iter().enumerate() {
                        let e = j as i64 - 2 * i as i64 + k as i64;
                        out[e as usize] = ctx.add(out[e as usize], ctx.mul(r, b));
                    }
                }
                out.into_iter().map(|x| ctx.from_mont(x)).collect()
            } else {
                poly.into_iter().map(|x| ctx.from_mont(x)).collect()
            }
        })
        .collect();
    let width = per_prime[0].len();
    let base = if use_w { -sym_k } else { lo_total };
    let mut terms = Vec::new();
    for i in 0..width {
        let mut crt = Crt::new();
        for (res, &p) in per_prime.iter().zip(&primes) {
            crt.push(res[i], p);
        }
        let c = crt.symmetric();
        if c.sign() != Sign::NoSign {
            terms.push((base + i as i64, c));
        }
    }
    Ok(LaurentPoly::from_terms(terms))
}
