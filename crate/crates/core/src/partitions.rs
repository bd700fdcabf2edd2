//! Partition combinatorics.
//!
//! - [`Partition`], [`Multipartition`], [`ColoredPartition`] and [`BlockLabel`].
//! - Enumeration of `Par(n)` in lexicographically descending order.
//! - ℓ-cores through beta-numbers on an ℓ-runner abacus.
//! - The operators `CUT`, `INFL`, `RED`, `Sort` and the sets `Ψ^{p,r}_a`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, split_power};
use crate::error::{invalid, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl TryFrom<Vec<u32>> for Partition {
    type Error = crate::Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl Partition {
    /// Checks that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return invalid("partition parts must be positive");
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid("partition parts must be weakly decreasing");
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    /// Number of parts, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `m_k(λ)`.
    pub fn multiplicity(&self, k: u32) -> u32 {
        self.0.iter().filter(|&&x| x == k).count() as u32
    }

    /// Nonzero multiplicities keyed by part size.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &x in &self.0 {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    }

    pub fn from_multiplicities(m: &BTreeMap<u32, u32>) -> Self {
        let mut parts = Vec::new();
        for (&k, &c) in m.iter().rev() {
            parts.extend(std::iter::repeat_n(k, c as usize));
        }
        Partition(parts)
    }

    /// Conjugate partition.
    pub fn conjugate(&self) -> Self {
        let n = self.0.first().copied().unwrap_or(0);
        Partition((1..=n).map(|j| self.0.iter().filter(|&&x| x >= j).count() as u32).collect())
    }

    /// Hook length of the box in row `i`, column `j` (0-based).
    pub fn hook_length(&self, i: usize, j: usize) -> u32 {
        let arm = self.0[i] - j as u32 - 1;
        let leg = self.0[i + 1..].iter().filter(|&&x| x as usize > j).count() as u32;
        arm + leg + 1
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

fn gen_partitions(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for k in (1..=max.min(n)).rev() {
        cur.push(k);
        gen_partitions(n - k, k, cur, out);
        cur.pop();
    }
}

/// All partitions of `n`, lexicographically descending: `(n), (n-1,1), …, (1^n)`.
pub fn enum_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    gen_partitions(n, n, &mut Vec::new(), &mut out);
    out
}

/// `p(0), …, p(nmax)`.
pub fn partition_counts(nmax: usize) -> Vec<u128> {
    u_table(1, nmax)
}

/// `u(m, 0), …, u(m, nmax)`: coefficients of `∏_{k≥1} (1-q^k)^{-m}`.
pub fn u_table(m: u32, nmax: usize) -> Vec<u128> {
    let mut f = vec![0u128; nmax + 1];
    f[0] = 1;
    for _ in 0..m {
        for k in 1..=nmax {
            for n in k..=nmax {
                f[n] += f[n - k];
            }
        }
    }
    f
}

/// Number of `m`-multipartitions of `n`; `u(0, 0) = 1` and `u(0, n) = 0` for `n ≥ 1`.
pub fn u_count(m: u32, n: u32) -> u128 {
    u_table(m, n as usize)[n as usize]
}

/// Beta-numbers `λ_i + L - i` (0-based `i`) for `L = ℓ(λ)` beads.
fn beta_numbers(lambda: &Partition) -> Vec<u64> {
    let l = lambda.len() as u64;
    lambda.0.iter().enumerate().map(|(i, &x)| x as u64 + l - 1 - i as u64).collect()
}

/// ℓ-core: slide every bead on the ℓ-runner abacus as far up as it goes.
pub fn ell_core(lambda: &Partition, ell: u32) -> Partition {
    let ell = ell as u64;
    let mut runners = vec![0u64; ell as usize];
    for b in beta_numbers(lambda) {
        runners[(b % ell) as usize] += 1;
    }
    let mut beads: Vec<u64> = Vec::with_capacity(lambda.len());
    for (r, &count) in runners.iter().enumerate() {
        for k in 0..count {
            beads.push(r as u64 + k * ell);
        }
    }
    beads.sort_unstable_by(|a, b| b.cmp(a));
    let l = beads.len() as u64;
    Partition::from_unsorted(beads.iter().enumerate().map(|(i, &b)| (b + i as u64 + 1 - l) as u32).collect())
}

/// ℓ-weight: number of rim ℓ-hooks removed to reach the core.
pub fn ell_weight(lambda: &Partition, ell: u32) -> u64 {
    (lambda.size() - ell_core(lambda, ell).size()) / ell as u64
}

pub fn is_ell_core(lambda: &Partition, ell: u32) -> bool {
    ell_core(lambda, ell) == *lambda
}

/// `CRP_ℓ(n)`: partitions of `n` with no part divisible by `ℓ`.
pub fn enum_class_regular(n: u32, ell: u32) -> Vec<Partition> {
    enum_partitions(n).into_iter().filter(|l| l.0.iter().all(|&x| x % ell != 0)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Multipartition {
    pub components: Vec<Partition>,
}

impl Multipartition {
    pub fn size(&self) -> u64 {
        self.components.iter().map(|p| p.size()).sum()
    }
}

/// All `m`-multipartitions of `n`.
pub fn enum_multipartitions(m: u32, n: u32) -> Vec<Multipartition> {
    fn rec(m: u32, n: u32, cur: &mut Vec<Partition>, out: &mut Vec<Multipartition>) {
        if m == 0 {
            if n == 0 {
                out.push(Multipartition { components: cur.clone() });
            }
            return;
        }
        for k in (0..=n).rev() {
            for p in enum_partitions(k) {
                cur.push(p);
                rec(m - 1, n - k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(m, n, &mut Vec::new(), &mut out);
    out
}

/// A partition whose parts carry colors; parts are sorted by size descending,
/// then color descending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<(u32, u32)>", into = "Vec<(u32, u32)>")]
pub struct ColoredPartition {
    parts: Vec<(u32, u32)>,
}

impl From<Vec<(u32, u32)>> for ColoredPartition {
    fn from(v: Vec<(u32, u32)>) -> Self {
        ColoredPartition::new(v)
    }
}

impl From<ColoredPartition> for Vec<(u32, u32)> {
    fn from(c: ColoredPartition) -> Self {
        c.parts
    }
}

impl ColoredPartition {
    /// Sorts `(size, color)` pairs into canonical order; zero sizes are dropped.
    pub fn new(mut parts: Vec<(u32, u32)>) -> Self {
        parts.retain(|p| p.0 > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        ColoredPartition { parts }
    }

    pub fn empty() -> Self {
        ColoredPartition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[(u32, u32)] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|p| p.0 as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn shape(&self) -> Partition {
        Partition(self.parts.iter().map(|p| p.0).collect())
    }

    /// Colors attached to parts of size `s`, in stored (descending) order.
    pub fn colors_of(&self, s: u32) -> Vec<u32> {
        self.parts.iter().filter(|p| p.0 == s).map(|p| p.1).collect()
    }

    /// Concatenates two colored partitions.
    pub fn merge(&self, other: &ColoredPartition) -> ColoredPartition {
        let mut v = self.parts.clone();
        v.extend_from_slice(&other.parts);
        ColoredPartition::new(v)
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|(k, c)| format!("{k}:{c}")).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Weakly decreasing color sequences of length `m` over `0..colors`, in
/// lexicographically ascending order.
fn decreasing_sequences(m: usize, colors: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, bound: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for c in 0..=bound {
            cur.push(c);
            rec(m, c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if colors == 0 {
        if m == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = Vec::with_capacity(m);
    if m == 0 {
        out.push(Vec::new());
        return out;
    }
    for c in 0..colors {
        cur.push(c);
        rec(m, c, &mut cur, &mut out);
        cur.pop();
    }
    out
}

/// All colorings of `λ` in canonical form, lexicographically ascending in the
/// color vector.
pub fn colorings(lambda: &Partition, colors: u32) -> Vec<ColoredPartition> {
    let groups: Vec<(u32, u32)> = lambda.multiplicities().into_iter().rev().collect();
    let mut out = vec![Vec::<(u32, u32)>::new()];
    for (size, mult) in groups {
        let seqs = decreasing_sequences(mult as usize, colors);
        let mut next = Vec::with_capacity(out.len() * seqs.len());
        for prefix in &out {
            for seq in &seqs {
                let mut v = prefix.clone();
                v.extend(seq.iter().map(|&c| (size, c)));
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(|parts| ColoredPartition { parts }).collect()
}

/// `Ω_d` for `colors` colors: partitions of `d` in enumeration order, each
/// followed by its colorings.
pub fn enum_colored(d: u32, colors: u32) -> Vec<ColoredPartition> {
    enum_partitions(d).iter().flat_map(|l| colorings(l, colors)).collect()
}

/// A block `(ρ, d)` of the symmetric group: an ℓ-core and a weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockLabel {
    pub core: Partition,
    pub weight: u32,
    pub ell: u32,
}

impl BlockLabel {
    pub fn n(&self) -> u64 {
        self.core.size() + self.ell as u64 * self.weight as u64
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(core {}, weight {}, ell {})", self.core, self.weight, self.ell)
    }
}

/// `Bl_ℓ(n)` ordered by weight descending, then core in enumeration order.
pub fn blocks(n: u32, ell: u32) -> Vec<BlockLabel> {
    let mut out = Vec::new();
    for weight in (0..=n / ell).rev() {
        let rest = n - ell * weight;
        for core in enum_partitions(rest) {
            if is_ell_core(&core, ell) {
                out.push(BlockLabel { core, weight, ell });
            }
        }
    }
    out
}

/// Residues `j - i mod p` of the core's boxes plus `d` copies of each residue.
pub fn residue_content(b: &BlockLabel, p: u32) -> Result<BTreeMap<u32, u64>> {
    if b.ell != p {
        return invalid(format!("residue_content: block has ell = {} but p = {p}", b.ell));
    }
    let mut m = BTreeMap::new();
    for (i, &row) in b.core.parts().iter().enumerate() {
        for j in 0..row as i64 {
            let res = (j - i as i64).rem_euclid(p as i64) as u32;
            *m.entry(res).or_insert(0) += 1;
        }
    }
    if b.weight > 0 {
        for r in 0..p {
            *m.entry(r).or_insert(0) += b.weight as u64;
        }
    }
    Ok(m)
}

/// `CUT_d`: removes the parts divisible by `d`.
pub fn cut(lambda: &Partition, d: u32) -> Partition {
    Partition(lambda.0.iter().copied().filter(|&x| x % d != 0).collect())
}

/// `INFL_d`: multiplies every part by `d`.
pub fn infl(lambda: &Partition, d: u32) -> Partition {
    Partition(lambda.0.iter().map(|&x| x * d).collect())
}

/// `RED_ℓ`: floor-divides every multiplicity by `ℓ`.
pub fn red(lambda: &Partition, ell: u32) -> Partition {
    let m: BTreeMap<u32, u32> = lambda.multiplicities().into_iter().map(|(k, c)| (k, c / ell)).collect();
    Partition::from_multiplicities(&m)
}

/// `Sort`: concatenates the parts and re-sorts.
pub fn sort_merge(seq: &[Partition]) -> Partition {
    Partition::from_unsorted(seq.iter().flat_map(|p| p.0.iter().copied()).collect())
}

/// `n = a·p^v` with `p ∤ a`.
pub fn p_adic_split(n: u64, p: u64) -> Result<(u64, u32)> {
    if n == 0 {
        return invalid("p_adic_split: n must be positive");
    }
    if p < 2 {
        return invalid("p_adic_split: p must be at least 2");
    }
    Ok(split_power(n, p))
}

/// Digits `a_0, …, a_{r-1}` with `a = Σ a_i p^i`, `0 ≤ a_i < p` for `i < r-1`.
pub fn truncated_digits(a: u64, p: u64, r: u32) -> Vec<u64> {
    let mut digits = Vec::with_capacity(r as usize);
    let mut rest = a;
    for i in 0..r {
        if i + 1 == r {
            digits.push(rest);
        } else {
            digits.push(rest % p);
            rest /= p;
        }
    }
    digits
}

/// `Ψ^{p,r}_a`: partitions of `a` into parts `p^h`, `h < r`, satisfying the
/// digit inequalities and the closing equality.
pub fn psi_set(p: u64, r: u32, a: u64) -> Result<Vec<Partition>> {
    if !is_prime(p) {
        return invalid(format!("psi_set: {p} is not prime"));
    }
    if r == 0 || a == 0 {
        return invalid("psi_set: r and a must be positive");
    }
    let digits = truncated_digits(a, p, r);
    let powers: Vec<u64> = (0..r).map(|h| p.pow(h)).collect();
    let mut out = Vec::new();
    // multiplicities m_h of p^h, chosen from the largest power down
    fn rec(h: usize, left: u64, powers: &[u64], m: &mut Vec<u64>, found: &mut Vec<Vec<u64>>) {
        if h == 0 {
            m[0] = left;
            found.push(m.clone());
            return;
        }
        for c in (0..=left / powers[h]).rev() {
            m[h] = c;
            rec(h - 1, left - c * powers[h], powers, m, found);
        }
    }
    let mut found = Vec::new();
    let mut m = vec![0u64; r as usize];
    rec(r as usize - 1, a, &powers, &mut m, &mut found);
    for m in found {
        let ok_ineq = (0..r as usize).all(|k| {
            let lhs: u64 = (k..r as usize).map(|h| digits[h] * powers[h - k]).sum();
            let rhs: u64 = (k..r as usize).map(|h| m[h] * powers[h - k]).sum();
            lhs >= rhs
        });
        let ok_eq = (0..r as usize).map(|h| digits[h] * powers[h]).sum::<u64>()
            == (0..r as usize).map(|h| m[h] * powers[h]).sum::<u64>();
        if ok_ineq && ok_eq {
            let mut parts = Vec::new();
            for h in (0..r as usize).rev() {
                parts.extend(std::iter::repeat_n(powers[h] as u32, m[h] as usize));
            }
            out.push(Partition(parts));
        }
    }
    Ok(out)
}

/// Multiset of items as a sorted count map.
pub fn multiset<T: Ord, I: IntoIterator<Item = T>>(it: I) -> BTreeMap<T, u64> {
    let mut m = BTreeMap::new();
    for x in it {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}
