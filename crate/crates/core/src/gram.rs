//! Gram matrices of the Heisenberg pairing on the `x`-basis.
//!
//! The weight space `Λ_0 - dδ` is a polynomial ring in colored generators
//! `y^{(i)}_r`; the pairing of two `y`-monomials vanishes unless the
//! underlying partitions agree and is otherwise
//! `Σ_π ∏_k A^{(r_k)}[i_k, j_{π(k)}] / r_k`
//! over part-size preserving bijections `π`. Peeling one factor `y^{(i)}_r`
//! off the left argument turns it into `Σ_j A^{(r)}_{ij} ∂/∂y^{(j)}_r` on the
//! right; iterating gives exactly the matching sum, so the result does not
//! depend on the order of peeling.
//!
//! The lattice basis is `x^{(i)}_λ = ∏_k x^{(i_k)}_{λ_k}` with
//! `1 + Σ x_n z^n = exp(Σ y_n z^n)`. With `P` the `x`-to-`y` change of basis
//! the Gram matrix is `P · G_y · Pᵀ`; denominators are cleared up front so
//! that all arithmetic is over the integers, and the final division is
//! checked to be exact.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, PolyMatrix};
use crate::partitions::{blocks, enum_colored, enum_partitions, BlockLabel, ColoredPartition, Partition};
use crate::qcartan::DynkinDiagram;
use crate::qlaurent::{quantum_int, LaurentPoly, RatLaurentPoly};

/// Scalars a Gram matrix can be computed over.
pub trait GramScalar: Clone + Send + Sync + PartialEq {
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn is_null(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn mul_int(&self, k: &BigInt) -> Self;
    fn div_int_exact(&self, k: &BigInt) -> Option<Self>;
}

impl GramScalar for LaurentPoly {
    fn zero_value() -> Self {
        LaurentPoly::zero()
    }
    fn one_value() -> Self {
        LaurentPoly::one()
    }
    fn is_null(&self) -> bool {
        self.is_zero()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_int(&self, k: &BigInt) -> Self {
        self.scale(k)
    }
    fn div_int_exact(&self, k: &BigInt) -> Option<Self> {
        self.div_scalar_exact(k)
    }
}

impl GramScalar for BigInt {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn one_value() -> Self {
        One::one()
    }
    fn is_null(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_int(&self, k: &BigInt) -> Self {
        self * k
    }
    fn div_int_exact(&self, k: &BigInt) -> Option<Self> {
        let (q, r) = self.div_rem(k);
        r.is_zero().then_some(q)
    }
}

/// The matrices `A^{(s)}` driving the pairing.
pub trait PairingFamily<R>: Sync {
    fn colors(&self) -> u32;
    fn entry(&self, s: u32, i: u32, j: u32) -> R;
}

/// `A^{(s)} = ([a_ij]_s)` for a symmetric integer matrix `(a_ij)`; over `ℤ`
/// the same family is read at `v = 1`, i.e. `A^{(s)} = (a_ij)`.
#[derive(Clone, Debug)]
pub struct CartanPairing {
    pub matrix: Vec<Vec<i64>>,
}

impl CartanPairing {
    pub fn new(matrix: Vec<Vec<i64>>) -> Self {
        CartanPairing { matrix }
    }

    pub fn of(dg: DynkinDiagram) -> Result<Self> {
        Ok(CartanPairing { matrix: dg.cartan_matrix()? })
    }

    /// The single-color family `A^{(s)} = [1]` of the K-pairing.
    pub fn k_pairing() -> Self {
        CartanPairing { matrix: vec![vec![1]] }
    }
}

impl PairingFamily<LaurentPoly> for CartanPairing {
    fn colors(&self) -> u32 {
        self.matrix.len() as u32
    }
    fn entry(&self, s: u32, i: u32, j: u32) -> LaurentPoly {
        quantum_int(self.matrix[i as usize][j as usize], s)
    }
}

impl PairingFamily<BigInt> for CartanPairing {
    fn colors(&self) -> u32 {
        self.matrix.len() as u32
    }
    fn entry(&self, _s: u32, i: u32, j: u32) -> BigInt {
        BigInt::from(self.matrix[i as usize][j as usize])
    }
}

/// `x^{(c)}_λ` written in the `y`-monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XExpansion {
    pub index: ColoredPartition,
    pub combination: BTreeMap<ColoredPartition, BigRational>,
}

fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// `x^{(c)}_n = Σ_{κ⊢n} y^{(c)}_κ / ∏_u m_u(κ)!`.
pub fn x_expand(n: u32, color: u32) -> XExpansion {
    let mut combination = BTreeMap::new();
    for kappa in enum_partitions(n) {
        let den: BigInt = kappa.multiplicities().values().map(|&m| factorial(m)).product();
        let mono = ColoredPartition::new(kappa.parts().iter().map(|&k| (k, color)).collect());
        combination.insert(mono, BigRational::new(BigInt::one(), den));
    }
    XExpansion { index: ColoredPartition::new(vec![(n, color)]), combination }
}

/// Multiplicative extension of [`x_expand`] to an `x`-monomial.
pub fn x_expand_monomial(index: &ColoredPartition) -> XExpansion {
    let mut acc: BTreeMap<ColoredPartition, BigRational> = BTreeMap::new();
    acc.insert(ColoredPartition::empty(), BigRational::one());
    for &(n, c) in index.parts() {
        let factor = x_expand(n, c);
        let mut next = BTreeMap::new();
        for (m1, c1) in &acc {
            for (m2, c2) in &factor.combination {
                *next.entry(m1.merge(m2)).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        acc = next;
    }
    XExpansion { index: index.clone(), combination: acc }
}

fn permanent_naive<R: GramScalar>(m: &[Vec<R>]) -> R {
    fn rec<R: GramScalar>(m: &[Vec<R>], row: usize, used: &mut Vec<bool>) -> R {
        let n = m.len();
        if row == n {
            return R::one_value();
        }
        let mut acc = R::zero_value();
        for j in 0..n {
            if used[j] || m[row][j].is_null() {
                continue;
            }
            used[j] = true;
            let rest = rec(m, row + 1, used);
            used[j] = false;
            if !rest.is_null() {
                acc.add_assign_ref(&m[row][j].mul_ref(&rest));
            }
        }
        acc
    }
    rec(m, 0, &mut vec![false; m.len()])
}

/// Ryser's formula `per A = (-1)^n Σ_{S} (-1)^{|S|} ∏_i Σ_{j∈S} a_ij`.
fn permanent_ryser<R: GramScalar>(m: &[Vec<R>]) -> R {
    let n = m.len();
    let mut total = R::zero_value();
    for mask in 1u64..(1 << n) {
        let mut prod = R::one_value();
        for row in m {
            let mut s = R::zero_value();
            for (j, x) in row.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    s.add_assign_ref(x);
                }
            }
            prod = prod.mul_ref(&s);
            if prod.is_null() {
                break;
            }
        }
        if (n as u32 - mask.count_ones()).is_multiple_of(2) {
            total.add_assign_ref(&prod);
        } else {
            total.sub_assign_ref(&prod);
        }
    }
    total
}

pub fn permanent<R: GramScalar>(m: &[Vec<R>]) -> R {
    if m.len() > 6 {
        permanent_ryser(m)
    } else {
        permanent_naive(m)
    }
}

/// `∏_s per(A^{(s)}[colors of m1 at s, colors of m2 at s])`, the pairing
/// times `∏_s s^{m_s}`; zero when the shapes differ.
fn y_pair_scaled<R: GramScalar>(m1: &ColoredPartition, m2: &ColoredPartition, fam: &dyn PairingFamily<R>) -> R {
    let shape = m1.shape();
    if shape != m2.shape() {
        return R::zero_value();
    }
    let mut acc = R::one_value();
    for &s in shape.multiplicities().keys() {
        let (c1, c2) = (m1.colors_of(s), m2.colors_of(s));
        let block: Vec<Vec<R>> = c1.iter().map(|&i| c2.iter().map(|&j| fam.entry(s, i, j)).collect()).collect();
        let per = permanent(&block);
        if per.is_null() {
            return R::zero_value();
        }
        acc = acc.mul_ref(&per);
    }
    acc
}

fn shape_denominator(shape: &Partition) -> BigInt {
    shape.multiplicities().iter().map(|(&s, &m)| BigInt::from(s).pow(m)).product()
}

/// `⟨y_{m1}, y_{m2}⟩` for the family `A^{(s)}`.
pub fn y_pair(m1: &ColoredPartition, m2: &ColoredPartition, fam: &dyn PairingFamily<LaurentPoly>) -> RatLaurentPoly {
    let num = y_pair_scaled(m1, m2, fam);
    let den = shape_denominator(&m1.shape());
    num.to_rational().map_coeffs(|c| c / BigRational::from_integer(den.clone()))
}

/// Gram matrix of the `x`-basis on `Ω_d` for an arbitrary family.
pub fn gram_with<R: GramScalar>(fam: &dyn PairingFamily<R>, d: u32) -> Result<(Vec<ColoredPartition>, Vec<Vec<R>>)> {
    let colors = fam.colors();
    let index = enum_colored(d, colors);
    let n = index.len();
    let pos: HashMap<&ColoredPartition, usize> = index.iter().enumerate().map(|(i, c)| (c, i)).collect();

    // rows of P over a common denominator D1
    let expansions: Vec<XExpansion> = index.iter().map(x_expand_monomial).collect();
    let d1 = expansions
        .iter()
        .flat_map(|e| e.combination.values())
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let p_rows: Vec<Vec<(usize, BigInt)>> = expansions
        .iter()
        .map(|e| {
            e.combination
                .iter()
                .map(|(m, c)| (pos[m], (c * BigRational::from_integer(d1.clone())).to_integer()))
                .collect()
        })
        .collect();

    // G_y is block diagonal by shape; scale by D2 = lcm of the shape denominators
    let mut by_shape: BTreeMap<Partition, Vec<usize>> = BTreeMap::new();
    for (i, c) in index.iter().enumerate() {
        by_shape.entry(c.shape()).or_default().push(i);
    }
    let d2 = by_shape.keys().fold(BigInt::one(), |l, s| l.lcm(&shape_denominator(s)));
    let mut gy: HashMap<(usize, usize), R> = HashMap::new();
    for (shape, members) in &by_shape {
        let factor = &d2 / shape_denominator(shape);
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a..] {
                let val = y_pair_scaled(&index[i], &index[j], fam).mul_int(&factor);
                if !val.is_null() {
                    gy.insert((i, j), val.clone());
                    gy.insert((j, i), val);
                }
            }
        }
    }
    let shape_of: Vec<&Vec<usize>> = index.iter().map(|c| &by_shape[&c.shape()]).collect();

    // w_a[ν] = Σ_μ P[a,μ] G_y[μ,ν]
    let w: Vec<HashMap<usize, R>> = p_rows
        .par_iter()
        .map(|row| {
            let mut acc: HashMap<usize, R> = HashMap::new();
            for (mu, c) in row {
                for &nu in shape_of[*mu] {
                    if let Some(g) = gy.get(&(*mu, nu)) {
                        acc.entry(nu).or_insert_with(R::zero_value).add_assign_ref(&g.mul_int(c));
                    }
                }
            }
            acc
        })
        .collect();

    let total_den = &d1 * &d1 * &d2;
    let rows: Vec<Result<Vec<(usize, R)>>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::with_capacity(n - a);
            for b in a..n {
                let mut s = R::zero_value();
                for (nu, c) in &p_rows[b] {
                    if let Some(x) = w[a].get(nu) {
                        s.add_assign_ref(&x.mul_int(c));
                    }
                }
                let q = s
                    .div_int_exact(&total_den)
                    .ok_or_else(|| Error::Internal(format!("Gram entry ({a},{b}) is not integral")))?;
                out.push((b, q));
            }
            Ok(out)
        })
        .collect();
    let mut g = vec![vec![R::zero_value(); n]; n];
    for (a, row) in rows.into_iter().enumerate() {
        for (b, val) in row? {
            g[b][a] = val.clone();
            g[a][b] = val;
        }
    }
    Ok((index, g))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub diagram: String,
    pub d: u32,
    pub index: Vec<ColoredPartition>,
    pub entries: PolyMatrix,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn is_symmetric(&self) -> bool {
        crate::linalg::is_symmetric(&self.entries)
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_bar_invariant())
    }

    pub fn at_one(&self) -> IntMatrix {
        crate::linalg::at_one(&self.entries)
    }
}

/// The Gram matrix for `dg` on `Λ_0 - dδ`; for `A_{ℓ-1}` this is `C^v_{ℓ,d}`.
pub fn gram_matrix(dg: DynkinDiagram, d: u32) -> Result<GramMatrix> {
    let fam = CartanPairing::of(dg)?;
    let (index, entries) = gram_with::<LaurentPoly>(&fam, d)?;
    Ok(GramMatrix { diagram: dg.to_string(), d, index, entries })
}

/// `C^v_{ℓ,d}`.
pub fn graded_cartan(ell: u32, d: u32) -> Result<GramMatrix> {
    gram_matrix(DynkinDiagram::type_a_for_ell(ell)?, d)
}

/// The Gram matrix specialized at `v = 1`, computed directly over `ℤ`.
pub fn gram_matrix_at_one(dg: DynkinDiagram, d: u32) -> Result<(Vec<ColoredPartition>, IntMatrix)> {
    let fam = CartanPairing::of(dg)?;
    gram_with::<BigInt>(&fam, d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSum {
    pub n: u32,
    pub ell: u32,
    pub blocks: Vec<(BlockLabel, GramMatrix)>,
}

impl BlockSum {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.1.dim()).sum()
    }

    /// The block-diagonal matrix.
    pub fn to_matrix(&self) -> PolyMatrix {
        let n = self.dim();
        let mut m = vec![vec![LaurentPoly::zero(); n]; n];
        let mut off = 0;
        for (_, g) in &self.blocks {
            for (i, row) in g.entries.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    m[off + i][off + j] = x.clone();
                }
            }
            off += g.dim();
        }
        m
    }
}

/// `⊕_{(ρ,d) ∈ Bl_ℓ(n)} C^v_{ℓ,d}`.
pub fn block_sum(n: u32, ell: u32) -> Result<BlockSum> {
    let mut cache: HashMap<u32, GramMatrix> = HashMap::new();
    let mut out = Vec::new();
    for b in blocks(n, ell) {
        let g = match cache.get(&b.weight) {
            Some(g) => g.clone(),
            None => {
                let g = graded_cartan(ell, b.weight)?;
                cache.insert(b.weight, g.clone());
                g
            }
        };
        out.push((b, g));
    }
    Ok(BlockSum { n, ell, blocks: out })
}

/// A single-color polynomial in the `x_n`: `x_λ = ∏_i x_{λ_i}` ↦ coefficient.
pub type XPoly = BTreeMap<Partition, BigInt>;

fn xpoly_mul(a: &XPoly, b: &XPoly) -> XPoly {
    let mut out = XPoly::new();
    for (l1, c1) in a {
        for (l2, c2) in b {
            let mut parts = l1.parts().to_vec();
            parts.extend_from_slice(l2.parts());
            *out.entry(Partition::from_unsorted(parts)).or_insert_with(BigInt::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `x_m` with `x_0 = 1` and `x_m = 0` for `m < 0`.
fn x_single(m: i64) -> XPoly {
    let mut out = XPoly::new();
    if m == 0 {
        out.insert(Partition::empty(), BigInt::one());
    } else if m > 0 {
        out.insert(Partition::from_unsorted(vec![m as u32]), BigInt::one());
    }
    out
}

/// Jacobi-Trudi: `s_λ = det(x_{λ_i - i + j})`.
pub fn schur_in_x(lambda: &Partition) -> XPoly {
    let n = lambda.len();
    if n == 0 {
        return x_single(0);
    }
    let entry = |i: usize, j: usize| lambda.parts()[i] as i64 - i as i64 + j as i64;
    // Laplace expansion along rows with memo on the set of used columns
    fn rec(
        row: usize,
        used: u32,
        n: usize,
        entry: &dyn Fn(usize, usize) -> i64,
        memo: &mut HashMap<u32, XPoly>,
    ) -> XPoly {
        if row == n {
            return x_single(0);
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = XPoly::new();
        let mut sign_pos = 0;
        for j in 0..n {
            if used >> j & 1 == 1 {
                continue;
            }
            let e = entry(row, j);
            if e >= 0 {
                let minor = rec(row + 1, used | 1 << j, n, entry, memo);
                let term = xpoly_mul(&x_single(e), &minor);
                for (k, c) in term {
                    let slot = acc.entry(k).or_insert_with(BigInt::zero);
                    if sign_pos % 2 == 0 {
                        *slot += c;
                    } else {
                        *slot -= c;
                    }
                }
            }
            sign_pos += 1;
        }
        acc.retain(|_, c| !c.is_zero());
        memo.insert(used, acc.clone());
        acc
    }
    rec(0, 0, n, &entry, &mut HashMap::new())
}

fn x_monomial(lambda: &Partition) -> ColoredPartition {
    ColoredPartition::new(lambda.parts().iter().map(|&k| (k, 0)).collect())
}

/// `⟨x_λ, x_μ⟩_K`.
pub fn k_pair_monomials(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    let fam = CartanPairing::k_pairing();
    let (e1, e2) = (x_expand_monomial(&x_monomial(lambda)), x_expand_monomial(&x_monomial(mu)));
    let mut total = BigRational::zero();
    for (m1, c1) in &e1.combination {
        for (m2, c2) in &e2.combination {
            let num: BigInt = y_pair_scaled(m1, m2, &fam as &dyn PairingFamily<BigInt>);
            if num.is_zero() {
                continue;
            }
            total += c1 * c2 * BigRational::new(num, shape_denominator(&m1.shape()));
        }
    }
    if !total.is_integer() {
        return Err(Error::Internal(format!("K-pairing of {lambda} and {mu} is not integral")));
    }
    Ok(total.to_integer())
}

/// `⟨f, g⟩_K` extended bilinearly.
pub fn k_pair(f: &XPoly, g: &XPoly) -> Result<LaurentPoly> {
    let mut memo: HashMap<(Partition, Partition), BigInt> = HashMap::new();
    let mut total = BigInt::zero();
    for (l1, c1) in f {
        for (l2, c2) in g {
            if l1.size() != l2.size() {
                continue;
            }
            let key = if l1 <= l2 { (l1.clone(), l2.clone()) } else { (l2.clone(), l1.clone()) };
            let val = match memo.get(&key) {
                Some(v) => v.clone(),
                None => {
                    let v = k_pair_monomials(&key.0, &key.1)?;
                    memo.insert(key, v.clone());
                    v
                }
            };
            total += c1 * c2 * val;
        }
    }
    Ok(LaurentPoly::constant(total))
}

/// Checks `⟨s_λ, s_μ⟩_K = δ_{λμ}` for all `λ, μ ⊢ n ≤ nmax`.
pub fn schur_orthonormality(nmax: u32) -> Result<bool> {
    for n in 0..=nmax {
        let parts = enum_partitions(n);
        let schur: Vec<XPoly> = parts.iter().map(schur_in_x).collect();
        // K-Gram of the x-monomials, reused across pairs
        let gram: Vec<Vec<BigInt>> = parts
            .par_iter()
            .map(|a| parts.iter().map(|b| k_pair_monomials(a, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let pos: HashMap<&Partition, usize> = parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
        for (i, si) in schur.iter().enumerate() {
            for (j, sj) in schur.iter().enumerate().skip(i) {
                let mut v = BigInt::zero();
                for (l1, c1) in si {
                    for (l2, c2) in sj {
                        v += c1 * c2 * &gram[pos[l1]][pos[l2]];
                    }
                }
                let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                if v != expect {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn x_expansion_examples() {
        let e = x_expand(2, 0);
        assert_eq!(e.combination.len(), 2);
        assert_eq!(e.combination[&ColoredPartition::new(vec![(2, 0)])], BigRational::one());
        assert_eq!(
            e.combination[&ColoredPartition::new(vec![(1, 0), (1, 0)])],
            BigRational::new(1.into(), 2.into())
        );
        let e3 = x_expand(3, 0);
        assert_eq!(
            e3.combination[&ColoredPartition::new(vec![(1, 0); 3])],
            BigRational::new(1.into(), 6.into())
        );
    }

    #[test]
    fn y_pair_examples() {
        let fam = CartanPairing::of(DynkinDiagram::A(1)).unwrap();
        let y1 = ColoredPartition::new(vec![(1, 0)]);
        assert_eq!(y_pair(&y1, &y1, &fam).to_integral().unwrap(), quantum_int(2, 1));
        let y11 = ColoredPartition::new(vec![(1, 0), (1, 0)]);
        let y2 = ColoredPartition::new(vec![(2, 0)]);
        assert!(y_pair(&y11, &y2, &fam).is_zero());
        let two = quantum_int(2, 1);
        assert_eq!(y_pair(&y11, &y11, &fam).to_integral().unwrap(), (&two * &two).scale(&2.into()));
    }

    #[test]
    fn gram_examples() {
        let g = gram_matrix(DynkinDiagram::A(1), 1).unwrap();
        assert_eq!(g.entries, vec![vec![quantum_int(2, 1)]]);
        let g = gram_matrix(DynkinDiagram::A(1), 2).unwrap();
        let sq = q("v^2 + 2 + v^-2");
        assert_eq!(g.entries, vec![vec![q("v^2 + 1 + v^-2"), sq.clone()], vec![sq.clone(), sq.scale(&2.into())]]);
        let g = gram_matrix(DynkinDiagram::E(6), 0).unwrap();
        assert_eq!(g.entries, vec![vec![LaurentPoly::one()]]);
    }

    #[test]
    fn permanents_agree() {
        let m: Vec<Vec<BigInt>> =
            (0..7).map(|i| (0..7).map(|j| BigInt::from((i * 3 + j * 5) % 4 + 1)).collect()).collect();
        assert_eq!(permanent_naive(&m), permanent_ryser(&m));
    }

    #[test]
    fn schur_examples() {
        let s11 = schur_in_x(&Partition::new(vec![1, 1]).unwrap());
        let mut expect = XPoly::new();
        expect.insert(Partition::new(vec![1, 1]).unwrap(), BigInt::one());
        expect.insert(Partition::new(vec![2]).unwrap(), BigInt::from(-1));
        assert_eq!(s11, expect);
        assert!(schur_orthonormality(4).unwrap());
    }

    #[test]
    fn block_sum_examples() {
        let b = block_sum(2, 2).unwrap();
        assert_eq!(b.blocks.len(), 1);
        assert_eq!(b.to_matrix(), vec![vec![quantum_int(2, 1)]]);
        let b = block_sum(1, 3).unwrap();
        assert_eq!(b.to_matrix(), vec![vec![LaurentPoly::one()]]);
    }
}
