use num_bigint::BigUint;
use opencat::homology::{betti_f2, coreduce, homology, normalized_chains, rank_f2, smith, IntMatrix};
use opencat::sset::SimplicialSet;
use proptest::prelude::*;

/// Rank over the rationals by fraction-free elimination.
fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let (m, n) = (a.len(), a.first().map_or(0, Vec::len));
    let (mut rank, mut prev) = (0usize, 1i128);
    for c in 0..n {
        let Some(p) = (rank..m).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..m {
            for k in c + 1..n {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    rank
}

fn det(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let (mut prev, mut sign) = (1i128, 1i128);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != 0) else { return 0 };
        if p != c {
            a.swap(c, p);
            sign = -sign;
        }
        for r in c + 1..n {
            for k in c + 1..n {
                a[r][k] = (a[c][c] * a[r][k] - a[r][c] * a[c][k]) / prev;
            }
        }
        prev = a[c][c];
    }
    sign * a[n - 1][n - 1]
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=12, 1usize..=12).prop_flat_map(|(m, n)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], n), m)
    })
}

fn square() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=8).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n))
}

fn complex() -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::btree_set(0usize..7, 1..=4), 1..8)
        .prop_map(|fs| fs.into_iter().map(|s| s.into_iter().collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_rank_matches_rational_rank(rows in matrix()) {
        let m = IntMatrix::from_dense(&rows);
        prop_assert_eq!(smith(&m).len(), bareiss_rank(&rows));
    }

    #[test]
    fn smith_product_is_determinant(rows in square()) {
        let m = IntMatrix::from_dense(&rows);
        let d = det(&rows);
        let factors = smith(&m);
        if d == 0 {
            prop_assert!(factors.len() < rows.len());
        } else {
            let prod: BigUint = factors.iter().product();
            prop_assert_eq!(prod, BigUint::from(d.unsigned_abs()));
            prop_assert!(factors.windows(2).all(|w| &w[1] % &w[0] == BigUint::from(0u32)));
        }
    }

    #[test]
    fn f2_rank_at_most_rational_rank(rows in matrix()) {
        let m = IntMatrix::from_dense(&rows);
        prop_assert!(rank_f2(&m) <= bareiss_rank(&rows));
    }

    #[test]
    fn coreduction_preserves_homology(facets in complex()) {
        let x = SimplicialSet::from_complex(&facets);
        let cc = normalized_chains(&x, x.top()).unwrap();
        let (small, log) = coreduce(&cc);
        let top = x.top();
        let a = homology(&cc, top).unwrap();
        let b = homology(&small, top).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(cc.euler_characteristic(), small.euler_characteristic());
        prop_assert_eq!(log.ranks_after.as_slice(), small.ranks());
        let chi: i64 = a.betti.iter().enumerate().map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(chi, cc.euler_characteristic());
        prop_assert!(a.f2_consistent(&betti_f2(&cc, top).unwrap()));
    }
}
