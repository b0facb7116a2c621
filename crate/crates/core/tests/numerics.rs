use flophelix::numerics::{derive_ns, euler_sequence, for_length, n_at, rank_at, reduce_index, Provenance};
use flophelix::Error;
use proptest::prelude::*;

const ROWS: [(i64, usize, &[i64], &[i64]); 6] = [
    (1, 1, &[1], &[2]),
    (2, 2, &[1, 2], &[4, 1]),
    (3, 4, &[1, 3, 2, 3], &[6, 1, 3, 1]),
    (4, 6, &[1, 4, 3, 2, 3, 4], &[8, 1, 2, 3, 2, 1]),
    (5, 10, &[1, 5, 4, 3, 5, 2, 5, 3, 4, 5], &[10, 1, 2, 3, 1, 5, 1, 3, 2, 1]),
    (6, 12, &[1, 6, 5, 4, 3, 5, 2, 5, 3, 4, 5, 6], &[12, 1, 2, 2, 3, 1, 5, 1, 3, 2, 2, 1]),
];

#[test]
fn rows_match_wall_table() {
    for (ell, n, ranks, ns) in ROWS {
        let h = for_length(ell).unwrap();
        assert_eq!(h.period, n);
        assert_eq!(h.ranks, ranks);
        assert_eq!(h.ns, ns);
        let want = if ell == 3 { Provenance::FigureDerived } else { Provenance::Table };
        assert_eq!(h.provenance, want);
    }
}

#[test]
fn ns_follow_from_ranks() {
    for (_, _, ranks, ns) in ROWS {
        assert_eq!(derive_ns(ranks).unwrap(), ns);
    }
}

#[test]
fn lengths_outside_range_are_rejected() {
    for ell in [0, 7, -1, 100] {
        assert_eq!(for_length(ell).unwrap_err(), Error::LengthOutOfRange(ell));
    }
}

#[test]
fn inconsistent_ranks_are_rejected() {
    assert!(derive_ns(&[1, 3, 3, 3]).is_err());
    assert!(derive_ns(&[]).is_err());
}

#[test]
fn euler_sequences_are_additive() {
    for (ell, n, _, _) in ROWS {
        for i in 0..n as i64 {
            let e = euler_sequence(i, ell).unwrap();
            assert_eq!(e.left + e.right, e.multiplicity * e.middle_rank);
        }
    }
    let e = euler_sequence(0, 3).unwrap();
    assert_eq!((e.left, e.middle_rank, e.multiplicity, e.right), (3, 1, 6, 3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sequences_are_periodic(ell in 1i64..=6, i in -10_000i64..10_000) {
        let n = for_length(ell).unwrap().period as i64;
        prop_assert_eq!(rank_at(i + n, ell).unwrap(), rank_at(i, ell).unwrap());
        prop_assert_eq!(n_at(i - n, ell).unwrap(), n_at(i, ell).unwrap());
        prop_assert!(reduce_index(i, n as usize) < n as usize);
    }

    #[test]
    fn sequences_are_palindromic(ell in 1i64..=6, i in -1000i64..1000) {
        prop_assert_eq!(rank_at(i, ell).unwrap(), rank_at(-i, ell).unwrap());
        prop_assert_eq!(n_at(i, ell).unwrap(), n_at(-i, ell).unwrap());
    }
}
