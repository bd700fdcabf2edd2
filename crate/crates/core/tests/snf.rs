use gcart_core::gram::graded_cartan;
use gcart_core::modp::det_laurent_multimodular;
use gcart_core::snf::{
    chain_from_diagonal, cross_check_diagonal, det_ideal_gcds, det_int, int_chain_from_diagonal,
    multiset_equal_up_to_units, smith_int, smith_int_classic, smith_laurent_field, smith_laurent_field_exact, snf_int,
    snf_laurent_field, try_diagonalize_zlaurent, DiagOutcome,
};
use gcart_core::qlaurent::{canonical, quantum_int};
use gcart_core::{InvariantMultiset, LaurentPoly, RingTag};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SEED: u64 = 0x5eed_0005;

fn det_laplace(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * det_laplace(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|b| b.count_ones() as usize == k).map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect()).collect()
}

/// Invariant factors from determinantal divisors `D_k = gcd of k×k minors`.
fn invariants_by_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=n {
        let mut g = BigInt::zero();
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let minor: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                g = g.gcd(&BigInt::from(det_laplace(&minor)));
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat_n(BigInt::zero(), n - k + 1));
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// `P · diag · Q` with `P`, `Q` products of random elementary operations.
fn scramble<T: Clone>(diag: &[T], zero: T, rng: &mut StdRng, ops: usize, mul_add: impl Fn(&T, &T, i64) -> T) -> Vec<Vec<T>> {
    let n = diag.len();
    let mut m: Vec<Vec<T>> = (0..n).map(|i| (0..n).map(|j| if i == j { diag[i].clone() } else { zero.clone() }).collect()).collect();
    for _ in 0..ops {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = rng.gen_range(-2i64..=2);
        let e = rng.gen_range(-1i64..=1);
        if rng.gen_bool(0.5) {
            for k in 0..n {
                m[i][k] = mul_add(&m[i][k], &m[j][k], c * 8 + e);
            }
        } else {
            for row in m.iter_mut() {
                row[i] = mul_add(&row[i], &row[j], c * 8 + e);
            }
        }
    }
    m
}

fn int_mul_add(a: &BigInt, b: &BigInt, code: i64) -> BigInt {
    a + b * BigInt::from(code.div_euclid(8))
}

fn poly_mul_add(a: &LaurentPoly, b: &LaurentPoly, code: i64) -> LaurentPoly {
    let (c, e) = (code.div_euclid(8), code.rem_euclid(8));
    let e = if e == 7 { -1 } else { e };
    let k = LaurentPoly::monomial(BigInt::from(c), e);
    a + &(b * &k)
}

#[test]
fn integer_snf_matches_determinantal_divisors() {
    let mut rng = StdRng::seed_from_u64(SEED);
    for _ in 0..300 {
        let n = rng.gen_range(1..=4);
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let want = InvariantMultiset::from_ints(invariants_by_minors(&m));
        assert_eq!(snf_int(&to_big(&m)).unwrap(), want, "{m:?}");
    }
}

#[test]
fn local_elimination_recovers_scrambled_diagonal() {
    let mut rng = StdRng::seed_from_u64(SEED + 1);
    for n in [14usize, 18, 24] {
        let diag: Vec<BigInt> = (0..n)
            .map(|i| {
                let a = BigInt::from(2u32).pow(rng.gen_range(0..6)) * BigInt::from(3u32).pow(rng.gen_range(0..4));
                if i % 5 == 0 { a * BigInt::from(1_000_003u64) } else { a }
            })
            .collect();
        let m = scramble(&diag, BigInt::zero(), &mut rng, 6 * n * n, int_mul_add);
        let want = int_chain_from_diagonal(&diag);
        assert_eq!(smith_int(&m).unwrap(), want);
        assert_eq!(smith_int_classic(&m).unwrap(), want);
        let prod: BigInt = want.iter().product();
        assert_eq!(det_int(&m).unwrap().abs(), prod);
    }
}

#[test]
fn modular_field_snf_recovers_scrambled_diagonal() {
    let mut rng = StdRng::seed_from_u64(SEED + 2);
    let pool = [quantum_int(2, 1), quantum_int(3, 1), quantum_int(2, 2), quantum_int(4, 1), LaurentPoly::one()];
    for n in [7usize, 9, 12] {
        let diag: Vec<LaurentPoly> = (0..n)
            .map(|_| (0..rng.gen_range(0..3)).map(|_| pool[rng.gen_range(0..pool.len())].clone()).product())
            .collect();
        let m = scramble(&diag, LaurentPoly::zero(), &mut rng, 3 * n * n, poly_mul_add);
        let got = InvariantMultiset::new(RingTag::QLaurent, smith_laurent_field(&m).unwrap()).unwrap();
        let want = InvariantMultiset::new(RingTag::QLaurent, chain_from_diagonal(&diag).unwrap()).unwrap();
        assert_eq!(got, want, "n={n}");
        if let DiagOutcome::Success(d) = try_diagonalize_zlaurent(&m, 100_000).unwrap() {
            assert!(cross_check_diagonal(&m, &d).unwrap());
            let found = InvariantMultiset::new(RingTag::QLaurent, chain_from_diagonal(&d).unwrap()).unwrap();
            assert_eq!(found, want);
        }
    }
}

#[test]
fn field_snf_product_equals_determinant() {
    for (ell, d) in [(2, 4), (3, 2), (3, 3), (4, 2)] {
        let g = graded_cartan(ell, d).unwrap();
        let inv = snf_laurent_field(&g.entries).unwrap();
        let det = det_laurent_multimodular(&g.entries).unwrap();
        assert_eq!(canonical(&inv.product()), canonical(&det), "ell={ell} d={d}");
        let chain = smith_laurent_field(&g.entries).unwrap();
        for w in chain.windows(2) {
            assert!(gcart_core::qlaurent::divide_exact(&w[1], &w[0]).unwrap().is_some() || w[0].is_zero());
        }
    }
}

#[test]
fn c22_matches_bracket_products() {
    let g = graded_cartan(2, 2).unwrap();
    let got = snf_laurent_field(&g.entries).unwrap();
    let two = quantum_int(2, 1);
    // gcd([3], [2]^2) = 1, so the first invariant is a unit
    let want = InvariantMultiset::new(RingTag::QLaurent, [LaurentPoly::one(), &two * &quantum_int(4, 1)]).unwrap();
    assert_eq!(canonical(&(&two * &quantum_int(4, 1))), canonical(&(&(&two * &two) * &quantum_int(2, 2))));
    assert!(multiset_equal_up_to_units(&got, &want).unwrap());
}

fn laurent_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-2i64..=2, -3i64..=3), 0..4)
        .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn integer_chain_divides_and_multiplies_to_det(entries in prop::collection::vec(-20i64..=20, 25)) {
        let m: Vec<Vec<i64>> = entries.chunks(5).map(|c| c.to_vec()).collect();
        let chain = smith_int(&to_big(&m)).unwrap();
        for w in chain.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
        let prod: BigInt = chain.iter().product();
        prop_assert_eq!(prod, BigInt::from(det_laplace(&m)).abs());
    }

    #[test]
    fn field_snf_matches_exact_and_minor_gcds(entries in prop::collection::vec(laurent_strategy(), 9)) {
        let m: Vec<Vec<LaurentPoly>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let exact = smith_laurent_field_exact(&m).unwrap();
        let fast = smith_laurent_field(&m).unwrap();
        let canon = |v: &[LaurentPoly]| InvariantMultiset::new(RingTag::QLaurent, v.iter().cloned()).unwrap();
        prop_assert_eq!(canon(&exact), canon(&fast));
        // d_k = D_k / D_{k-1} over Q[v, 1/v]
        let gcds = det_ideal_gcds(&m).unwrap();
        let mut prev = LaurentPoly::one();
        for (k, g) in gcds.iter().enumerate() {
            if g.is_zero() {
                prop_assert!(exact[k..].iter().all(|x| x.is_zero()));
                break;
            }
            let q = gcart_core::qlaurent::divide_exact(g, &prev).unwrap();
            let q = q.map(|q| canon(&[q]));
            prop_assert_eq!(q, Some(canon(&exact[k..=k])));
            prev = g.clone();
        }
    }
}
