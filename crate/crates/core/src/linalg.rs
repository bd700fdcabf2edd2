//! Exact dense linear algebra over ℤ and ℤ[v,v⁻¹].
//!
//! Determinants use Bareiss fraction-free elimination; every division is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qlaurent::{divide_exact, LaurentPoly};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type PolyMatrix = Vec<Vec<LaurentPoly>>;

fn check_square<T>(m: &[Vec<T>]) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    Ok(n)
}

/// Bareiss determinant over ℤ[v,v⁻¹].
pub fn det_bareiss_poly(m: &[Vec<LaurentPoly>]) -> Result<LaurentPoly> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut a: PolyMatrix = m.to_vec();
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(LaurentPoly::zero());
            };
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = divide_exact(&num, &prev)?
                    .ok_or_else(|| Error::Internal("Bareiss step is not exact".into()))?;
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Bareiss determinant over ℤ.
pub fn det_bareiss_int(m: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: IntMatrix = m.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Monomials of degree `m` in `n` variables as sorted index multisets, in
/// lexicographic order.
pub fn monomial_basis(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, m, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, m, 0, &mut Vec::new(), &mut out);
    out
}

/// Matrix of `Sym^m f` on the monomial basis, where column `j` of `f` is the
/// image of the `j`-th basis vector.
pub fn symmetric_power(f: &[Vec<BigInt>], m: usize) -> Result<IntMatrix> {
    let n = check_square(f)?;
    let basis = monomial_basis(n, m);
    let index: std::collections::HashMap<Vec<usize>, usize> =
        basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let dim = basis.len();
    let mut out = vec![vec![BigInt::zero(); dim]; dim];
    for (col, mono) in basis.iter().enumerate() {
        // expand ∏_k f(e_{mono[k]}) as a polynomial in the basis vectors
        let mut acc: std::collections::HashMap<Vec<usize>, BigInt> = std::collections::HashMap::new();
        acc.insert(Vec::new(), BigInt::one());
        for &var in mono {
            let mut next: std::collections::HashMap<Vec<usize>, BigInt> = std::collections::HashMap::new();
            for (key, c) in &acc {
                for row in 0..n {
                    let entry = &f[row][var];
                    if entry.is_zero() {
                        continue;
                    }
                    let mut k = key.clone();
                    let pos = k.partition_point(|&x| x <= row);
                    k.insert(pos, row);
                    *next.entry(k).or_insert_with(BigInt::zero) += c * entry;
                }
            }
            acc = next;
        }
        for (key, c) in acc {
            if !c.is_zero() {
                out[index[&key]][col] += c;
            }
        }
    }
    Ok(out)
}

pub fn identity_poly(n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }).collect())
        .collect()
}

/// Evaluates a polynomial matrix at `v = 1`.
pub fn at_one(m: &[Vec<LaurentPoly>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|x| x.eval_one()).collect()).collect()
}

pub fn is_symmetric<T: PartialEq>(m: &[Vec<T>]) -> bool {
    let n = m.len();
    (0..n).all(|i| m[i].len() == n && (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Absolute value helper shared by bound computations.
pub fn abs_max(m: &[Vec<BigInt>]) -> BigInt {
    m.iter().flat_map(|r| r.iter()).map(|x| x.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::quantum_int;

    fn ints(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn integer_determinants() {
        assert_eq!(det_bareiss_int(&ints(&[&[3, 4], &[4, 8]])).unwrap(), BigInt::from(8));
        assert_eq!(det_bareiss_int(&ints(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(det_bareiss_int(&ints(&[&[1, 2], &[2, 4]])).unwrap(), BigInt::zero());
        assert_eq!(det_bareiss_int(&[]).unwrap(), BigInt::one());
        let m = ints(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(det_bareiss_int(&m).unwrap(), BigInt::from(4));
    }

    #[test]
    fn polynomial_determinant() {
        let two = quantum_int(2, 1);
        let m = vec![
            vec![two.clone(), -LaurentPoly::one()],
            vec![-LaurentPoly::one(), two.clone()],
        ];
        assert_eq!(det_bareiss_poly(&m).unwrap(), quantum_int(3, 1));
    }

    #[test]
    fn symmetric_square_of_diagonal() {
        let f = ints(&[&[2, 0], &[0, 3]]);
        let s = symmetric_power(&f, 2).unwrap();
        assert_eq!(s, ints(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 9]]));
        assert_eq!(monomial_basis(3, 2).len(), 6);
    }
}
