//! Randomized invariants across the crate.

use proptest::prelude::*;

use krlab_core::bijection::{all_tuples, decode, encode};
use krlab_core::genfun::RankPoly;
use krlab_core::gordon::{extract_clusters, gordon_mark};
use krlab_core::partitions::{enumerate_congruence, members_of_weight, satisfies};
use krlab_core::qseries::product_series_inverse;
use krlab_core::{Coeff, Partition, TruncatedSeries, VariantId};

const ORDER: usize = 12;

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((0..=ORDER, 0..=4usize, -20i64..=20), 0..12).prop_map(|terms| {
        let mut s = TruncatedSeries::zero(ORDER, 4);
        for (n, m, c) in terms {
            s.add_coeff(n, m, Coeff::from(c));
        }
        s
    })
}

/// Series whose x-degree stays at most 2, so products never lose terms to the x truncation.
fn low_x_series() -> impl Strategy<Value = TruncatedSeries> {
    series().prop_map(|s| {
        let mut out = TruncatedSeries::zero(ORDER, 4);
        for (n, m, c) in s.nonzero_terms().filter(|&(_, m, _)| m <= 2) {
            out.add_coeff(n, m, c);
        }
        out
    })
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=16, 0..9).prop_map(|v| Partition::from_unsorted(v).unwrap())
}

fn family() -> impl Strategy<Value = VariantId> {
    prop::sample::select(VariantId::FAMILIES.to_vec())
}

proptest! {
    #[test]
    fn addition_commutes(a in series(), b in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn subtraction_inverts_addition(a in series(), b in series()) {
        prop_assert_eq!(a.add(&b).sub(&b), a);
    }

    #[test]
    fn multiplication_is_a_commutative_monoid(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&TruncatedSeries::one(ORDER, 4)), a);
    }

    #[test]
    fn multiplication_distributes(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn x1_specialization_is_a_ring_map(a in low_x_series(), b in low_x_series()) {
        prop_assert_eq!(a.mul(&b).specialize_x1(), a.specialize_x1().mul(&b.specialize_x1()));
        prop_assert_eq!(a.add(&b).specialize_x1(), a.specialize_x1().add(&b.specialize_x1()));
    }

    #[test]
    fn shifting_down_undoes_shifting_up(a in series(), k in 0i64..5) {
        let up = a.scalar_shift(k, 0).unwrap();
        let down = up.scalar_shift(-k, 0).unwrap();
        prop_assert_eq!(down, a.truncate(ORDER - k as usize, 4));
    }

    #[test]
    fn marking_is_canonical(p in partition()) {
        let mp = gordon_mark(&p);
        prop_assert_eq!(mp.partition(), &p);
        prop_assert_eq!(gordon_mark(mp.partition()), mp.clone());
        // equal parts carry distinct marks
        for (i, (&a, &r)) in mp.parts().iter().zip(mp.marks()).enumerate() {
            for (&b, &s) in mp.parts().iter().zip(mp.marks()).skip(i + 1) {
                prop_assert!(a != b || r != s);
            }
        }
    }

    #[test]
    fn clusters_partition_the_parts(p in partition()) {
        let mp = gordon_mark(&p);
        if let Ok(d) = extract_clusters(&mp) {
            let mut used: Vec<usize> = d.clusters.iter().flat_map(|c| c.positions.clone()).collect();
            used.sort_unstable();
            prop_assert_eq!(used, (0..p.len()).collect::<Vec<_>>());
            let w: u64 = d.clusters.iter().map(|c| c.weight).sum();
            prop_assert_eq!(w, p.weight());
        }
    }

    #[test]
    fn decode_then_encode_is_identity(v in family(), n in 0u32..=30, pick in any::<prop::sample::Index>()) {
        let members = members_of_weight(v, n);
        prop_assume!(!members.is_empty());
        let lambda = pick.get(&members);
        let t = decode(v, lambda).unwrap();
        prop_assert_eq!(t.weight(), lambda.weight());
        prop_assert_eq!(&encode(v, &t).unwrap(), lambda);
    }

    #[test]
    fn encode_then_decode_is_identity(v in family(), pick in any::<prop::sample::Index>()) {
        let tuples = all_tuples(v, 26).unwrap();
        let t = pick.get(&tuples);
        let lambda = encode(v, t).unwrap();
        prop_assert!(satisfies(v, &lambda));
        prop_assert_eq!(&decode(v, &lambda).unwrap(), t);
    }

    #[test]
    fn congruence_counts_match_products(
        modulus in 2u32..=12,
        mask in 1u32..4096,
        n in 0u32..=25,
    ) {
        let residues: Vec<u32> = (1..=modulus).filter(|r| mask & (1 << (r - 1)) != 0).collect();
        prop_assume!(!residues.is_empty());
        let t = enumerate_congruence(modulus, &residues, n).unwrap();
        let s = product_series_inverse(modulus, &residues, n as usize).unwrap();
        for k in 0..=n {
            prop_assert_eq!(Coeff::from(t.row_total(k)), s.coeff(k as usize, 0));
        }
    }

    #[test]
    fn rank_polynomials_evaluate_like_their_text(a in -6i64..=6, b in 0i64..=6, c in 0i64..=6) {
        let ranks: Vec<String> = ["n1", "n2", "n3"].iter().map(|s| s.to_string()).collect();
        let p = RankPoly::parse("9/2 n3^2 + 5/2 n3 + 2 n2^2 + n2 + n1^2 + 6 n3 n2 + 3 n3 n1 + 2 n2 n1 - 1", &ranks).unwrap();
        let expected = (9 * c * c + 5 * c) / 2 + 2 * b * b + b + a * a + 6 * c * b + 3 * c * a + 2 * b * a - 1;
        prop_assert_eq!(p.eval(&[a, b, c]).unwrap(), expected);
    }
}
