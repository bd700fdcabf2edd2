use std::collections::BTreeMap;

use gcart_core::invariants::{
    asy_q, graded_hill, graded_kor, hill_invariant, hill_log, kor_invariant, rhs_multiset, tsaigo_check, RhsKind,
};
use gcart_core::partitions::{cut, enum_partitions, red, u_count};
use gcart_core::qlaurent::quantum_int;
use gcart_core::{LaurentPoly, Partition};
use num_bigint::BigInt;

const PRIME_POWERS: [(u64, u32); 6] = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)];

fn nu(mut n: u64, p: u64) -> u64 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// `Σ_{n ∉ p^r ℤ} ((r - ν_p(n)) m_n + ν_p(m_n!))`.
fn hill_log_oracle(p: u64, r: u32, lam: &Partition) -> u64 {
    let ell = p.pow(r);
    lam.multiplicities()
        .into_iter()
        .filter(|(n, _)| !(*n as u64).is_multiple_of(ell))
        .map(|(n, m)| {
            let m = m as u64;
            let fact: u64 = (1..=m).map(|k| nu(k, p)).sum();
            (r as u64 - nu(n as u64, p)) * m + fact
        })
        .sum()
}

#[test]
fn hill_log_matches_oracle() {
    for (p, r) in PRIME_POWERS {
        for n in 0..=12 {
            for lam in enum_partitions(n) {
                let e = hill_log_oracle(p, r, &lam);
                assert_eq!(hill_log(p, r, &lam).unwrap(), e, "p={p} r={r} {lam}");
                assert_eq!(hill_invariant(p, r, &lam).unwrap(), num_traits::pow(BigInt::from(p), e as usize));
            }
        }
    }
    assert!(hill_invariant(4, 1, &Partition::empty()).is_err());
}

#[test]
fn graded_hill_specializes_and_ignores_multiples_of_ell() {
    for (p, r) in PRIME_POWERS {
        let ell = p.pow(r) as u32;
        for n in 0..=10 {
            for lam in enum_partitions(n) {
                let g = graded_hill(p, r, &lam).unwrap();
                assert!(g.is_bar_invariant());
                assert_eq!(g.eval_one(), hill_invariant(p, r, &lam).unwrap(), "p={p} r={r} {lam}");
                assert_eq!(g, graded_hill(p, r, &cut(&lam, ell)).unwrap());
            }
        }
    }
}

#[test]
fn graded_kor_is_graded_hill_of_reduction() {
    for (p, r) in PRIME_POWERS {
        let ell = p.pow(r) as u32;
        for n in 0..=12 {
            for lam in enum_partitions(n) {
                let want = graded_hill(p, r, &red(&lam, ell)).unwrap();
                assert_eq!(graded_kor(p, r, &lam).unwrap(), want, "p={p} r={r} {lam}");
            }
        }
    }
}

#[test]
fn kor_invariant_is_hill_of_reduction() {
    for (p, r) in PRIME_POWERS {
        let ell = p.pow(r);
        for n in 0..=12 {
            for lam in enum_partitions(n) {
                let want = hill_invariant(p, r, &red(&lam, ell as u32)).unwrap();
                assert_eq!(kor_invariant(ell, &lam).unwrap(), want, "ell={ell} {lam}");
            }
        }
    }
}

#[test]
fn graded_hill_for_r_one_is_asy_q() {
    for p in [2u64, 3, 5, 7] {
        for n in 0..=10 {
            for lam in enum_partitions(n) {
                assert_eq!(graded_hill(p, 1, &lam).unwrap(), asy_q(p, &lam).unwrap(), "p={p} {lam}");
            }
        }
    }
}

#[test]
fn small_values() {
    let two = quantum_int(2, 1);
    let one = Partition::new(vec![1]).unwrap();
    assert_eq!(graded_hill(2, 1, &one).unwrap(), two);
    assert_eq!(graded_hill(2, 2, &Partition::new(vec![2]).unwrap()).unwrap(), quantum_int(2, 2));
    assert_eq!(graded_hill(3, 1, &Partition::empty()).unwrap(), LaurentPoly::one());
    assert_eq!(graded_kor(2, 1, &Partition::new(vec![1, 1]).unwrap()).unwrap(), two);
    assert_eq!(kor_invariant(2, &Partition::new(vec![1, 1]).unwrap()).unwrap(), BigInt::from(2));
    assert_eq!(kor_invariant(6, &Partition::new(vec![1; 12]).unwrap()).unwrap(), BigInt::from(72));
}

#[test]
fn rhs_cardinality() {
    for (p, r) in PRIME_POWERS {
        let ell = p.pow(r) as u32;
        for d in 1..=5 {
            let want = (u_count(ell - 1, d) - u_count(ell - 2, d)) as usize;
            assert_eq!(rhs_multiset(RhsKind::Hill, p, r, d).unwrap().len(), want);
            assert_eq!(rhs_multiset(RhsKind::GradedHill, p, r, d).unwrap().len(), want);
        }
    }
}

/// Valuation multisets with `n` ranging over every part, including multiples of `p^r`.
fn tsaigo_unrestricted(p: u64, r: u32, d: u32, u: u64) -> (BTreeMap<u64, u64>, BTreeMap<u64, u64>) {
    let (mut left, mut right) = (BTreeMap::new(), BTreeMap::new());
    for lam in enum_partitions(d) {
        for (n, m) in lam.multiplicities() {
            for k in 1..=m as u64 {
                let vk = nu(k, p);
                if k / p.pow(vk as u32) != u {
                    continue;
                }
                *left.entry(nu(n as u64, p)).or_insert(0) += 1;
                *right.entry(vk % r as u64).or_insert(0) += 1;
            }
        }
    }
    (left, right)
}

#[test]
fn tsaigo_needs_the_restriction() {
    let (l, r) = tsaigo_unrestricted(2, 1, 3, 1);
    assert_ne!(l, r);
    assert_eq!(l.get(&1), Some(&1));
    assert!(tsaigo_check(2, 1, 3, 1).unwrap().holds);
    // for r large enough that p^r exceeds d the two readings coincide
    for d in 1..=7 {
        for u in [1u64, 3, 5, 7].into_iter().filter(|&u| u <= d as u64) {
            let (l, r) = tsaigo_unrestricted(2, 3, d, u);
            assert_eq!(l == r, tsaigo_check(2, 3, d, u).unwrap().holds, "d={d} u={u}");
        }
    }
}
