use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use plovlab::incidence;
use plovlab::partitions::{self, Partition};
use plovlab::symfun::{self, CoeffVector};
use plovlab::{ExactMatrix, Rational, SparseMultiPoly};

/// Every weakly decreasing `d`-tuple in `[0, k]` of size `n`, by brute force
/// over `[0, k]^d`.
fn brute_force(k: u32, d: u32, n: i64) -> Vec<Vec<u32>> {
    let mut out = BTreeSet::new();
    let total = (k as u64 + 1).pow(d);
    for code in 0..total {
        let mut c = code;
        let mut v: Vec<u32> = (0..d)
            .map(|_| {
                let x = (c % (k as u64 + 1)) as u32;
                c /= k as u64 + 1;
                x
            })
            .collect();
        if v.iter().map(|&x| i64::from(x)).sum::<i64>() == n {
            v.sort_unstable_by(|a, b| b.cmp(a));
            out.insert(v);
        }
    }
    out.into_iter().rev().collect()
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..7)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn q(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn poly_strategy(arity: usize) -> impl Strategy<Value = SparseMultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, arity), -4i64..=4), 0..5).prop_map(
        move |terms| {
            let mut p = SparseMultiPoly::zero(arity);
            for (e, c) in terms {
                p.add_term(e, q(c));
            }
            p
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_brute_force(k in 0u32..5, d in 0u32..5, n in -1i64..14) {
        let got: Vec<Vec<u32>> = partitions::enumerate(k, d, n)
            .iter()
            .map(|p| p.parts().to_vec())
            .collect();
        let expected = brute_force(k, d, n);
        prop_assert_eq!(partitions::count(k, d, n) as usize, expected.len());
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn rank_ignores_permutations(rows in matrix_strategy(), seed in any::<u64>()) {
        let m = ExactMatrix::from_i64_rows(&rows);
        let (r, c) = (m.nrows(), m.ncols());
        let mut rp: Vec<usize> = (0..r).collect();
        let mut cp: Vec<usize> = (0..c).collect();
        // Cheap deterministic shuffle from the seed.
        let mut s = seed;
        for v in [&mut rp, &mut cp] {
            for i in (1..v.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                v.swap(i, (s >> 33) as usize % (i + 1));
            }
        }
        let shuffled = m.submatrix(&rp, &cp);
        prop_assert_eq!(shuffled.rank(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
        prop_assert_eq!(m.rank() + m.nullity(), c);
        for v in m.nullspace_basis() {
            prop_assert!(v.iter().any(|x| !x.is_zero()));
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn polynomial_ring_laws(
        a in poly_strategy(3),
        b in poly_strategy(3),
        c in poly_strategy(3),
    ) {
        let ab = a.product(&b).unwrap();
        prop_assert_eq!(&ab, &b.product(&a).unwrap());
        prop_assert_eq!(ab.product(&c).unwrap(), a.product(&b.product(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.product(&b.add(&c).unwrap()).unwrap(),
            ab.add(&a.product(&c).unwrap()).unwrap()
        );
        // Leibniz rule for the derivation.
        let lhs = ab.total_derivative();
        let rhs = a.total_derivative().product(&b).unwrap()
            .add(&a.product(&b.total_derivative()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn incidence_line_sums(k in 1u32..6, d in 1u32..5, n in 1i64..16) {
        let a = incidence::build_incidence(k, d, n);
        let dense = a.data.to_dense();
        for (i, mu) in a.rows.iter().enumerate() {
            let sum: Rational = dense[i].iter().sum();
            let below_k = mu.parts().iter().filter(|&&p| p < k).count() as i64;
            prop_assert_eq!(sum, q(below_k));
        }
        for (j, lambda) in a.cols.iter().enumerate() {
            let sum: Rational = dense.iter().map(|r| &r[j]).sum();
            // Reverse bumps: lower one copy of each distinct part j >= 1.
            let distinct: BTreeSet<u32> = lambda.parts().iter().copied().filter(|&p| p >= 1).collect();
            let expected: i64 = distinct
                .iter()
                .map(|&p| lambda.parts().iter().filter(|&&x| x == p - 1).count() as i64 + 1)
                .sum();
            prop_assert_eq!(sum, q(expected));
        }
    }

    #[test]
    fn block_form_reassembles(k in 1u32..7, d in 2u32..5, n in 0i64..25) {
        let bf = incidence::block_form(k, d, n).unwrap();
        prop_assert!(bf.top_right_zero);
        prop_assert_eq!(bf.reassemble().unwrap(), bf.full.data);
    }

    #[test]
    fn derivation_is_the_incidence_action(
        k in 1u32..5,
        d in 1u32..4,
        n in 1i64..10,
        seed in prop::collection::vec((-20i64..=20, 1i64..=6), 64),
    ) {
        let a = incidence::build_incidence(k, d, n);
        let values: Vec<Rational> = (0..a.cols.len())
            .map(|i| {
                let (p, qd) = seed[i % seed.len()];
                Rational::new(BigInt::from(p + i as i64), BigInt::from(qd))
            })
            .collect();
        let x = CoeffVector::new(a.cols.clone(), values).unwrap();
        let lhs = symfun::apply_derivation(&x).unwrap();
        prop_assert_eq!(lhs.values, a.data.mul_vec(&x.values).unwrap());
        // Same result by differentiating the polynomial itself.
        let direct = symfun::mhat_expand(&x.to_poly().total_derivative(), k, d, n - 1).unwrap();
        prop_assert_eq!(direct.values, a.data.mul_vec(&x.values).unwrap());
    }
}

#[test]
fn vandermonde_vectors_are_in_the_kernel() {
    for d in 2..=5u32 {
        for r in 1..d {
            let v = symfun::vandermonde_coeff_vector(r, d).unwrap();
            let a = incidence::build_incidence(v.index.k, v.index.d, v.index.n);
            let image = a.data.mul_vec(&v.values).unwrap();
            assert!(image.iter().all(Zero::is_zero), "v_{{{r},{d}}}");
            assert!(!v.is_zero());
        }
    }
}

#[test]
fn mhat_round_trip() {
    for lambda in partitions::enumerate(4, 3, 6).iter() {
        let unit = CoeffVector::unit(4, 3, lambda).unwrap();
        let back = symfun::mhat_expand(&unit.to_poly(), 4, 3, 6).unwrap();
        assert_eq!(back, unit);
    }
    let lambda: Partition = "2,1,0".parse().unwrap();
    assert_eq!(symfun::mhat_poly(&lambda).len(), 6);
}
