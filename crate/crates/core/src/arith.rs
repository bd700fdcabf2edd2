//! Small integer helpers: primality, valuations, prime supports.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order (`PRS(n)`).
pub fn prime_support(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `ν_p(n)` for `n ≥ 1`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p > 1);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Writes `n = a·p^v` with `p ∤ a`; `n` must be positive.
pub fn split_power(n: u64, p: u64) -> (u64, u32) {
    let v = valuation(n, p);
    (n / p.pow(v), v)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `p^r` as a `u64`, if `n = p^r` for a prime `p` and `r ≥ 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let prs = prime_support(n);
    if prs.len() != 1 {
        return None;
    }
    let p = prs[0];
    Some((p, valuation(n, p)))
}
