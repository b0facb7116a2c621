use flophelix::monodromy::{
    bwd, det, fwd, mat_mul, puncture_count, trace, FunctorWord, Gen, Letter, Node, Strip, IDENTITY,
};
use flophelix::Error;
use proptest::prelude::*;

/// A random algebraic path from `p_0`, one letter per choice.
fn walk(period: usize, choices: &[u8]) -> FunctorWord {
    let n = period as i64;
    let mut at = 0i64;
    let mut letters = Vec::new();
    for &c in choices {
        let (l, to) = match c % 6 {
            0 => (fwd(at), at + 1),
            1 => (fwd(at - 1).inverse(), at - 1),
            2 => (bwd(at - 1), at - 1),
            3 => (bwd(at).inverse(), at + 1),
            4 => (Letter::new(Gen::Beta(at)), at + n),
            _ => (Letter::new(Gen::Beta(at - n)).inverse(), at - n),
        };
        letters.push(l);
        at = to;
    }
    FunctorWord::new(Node::Alg(0), letters, period).unwrap()
}

#[test]
fn length_one_relation() {
    let s = Strip::new(1).unwrap();
    assert!(s.short_relation().reduce().is_empty());
    assert_eq!(s.parse("inv(q0).qplus.qminus").unwrap().reduce().render(), "identity");
}

#[test]
fn sphere_relation_for_every_length() {
    for ell in 1..=6 {
        let s = Strip::new(ell).unwrap();
        assert!(s.sphere_relation().reduce().is_empty(), "ℓ={ell}");
        assert_eq!(s.k_matrix_closed(&s.short_relation()).unwrap(), IDENTITY);
    }
}

#[test]
fn equatorial_loops_act_trivially() {
    for ell in 1..=6 {
        let s = Strip::new(ell).unwrap();
        for i in 0..s.period() as i64 {
            let m = s.mutation_matrix(i);
            assert_eq!(mat_mul(&m, &m), IDENTITY);
            assert_eq!(det(&m), -1);
            assert_eq!(s.k_matrix_closed(&s.loop_q(i).unwrap()).unwrap(), IDENTITY);
        }
    }
}

#[test]
fn pole_loops_are_unipotent() {
    let s = Strip::new(2).unwrap();
    assert_eq!(s.k_matrix(&s.loop_q_minus()).unwrap(), [[3, -1], [4, -1]]);
    let s = Strip::new(1).unwrap();
    assert_eq!(s.k_matrix(&s.loop_q_minus()).unwrap(), [[2, -1], [1, 0]]);
    assert_eq!(s.k_matrix(&s.loop_q_plus()).unwrap(), [[0, 1], [-1, 2]]);
    for ell in 1..=6 {
        let s = Strip::new(ell).unwrap();
        let a = s.k_matrix_closed(&s.loop_q_minus()).unwrap();
        let b = s.k_matrix_closed(&s.loop_q_plus()).unwrap();
        assert_eq!(mat_mul(&a, &b), IDENTITY);
        assert_eq!((trace(&a), det(&a)), (2, 1));
        assert_eq!((trace(&b), det(&b)), (2, 1));
    }
}

#[test]
fn two_basepoint_words() {
    for ell in 1..=6 {
        let s = Strip::new(ell).unwrap();
        let notes = s.check_two_basepoint().unwrap();
        assert!(!notes.is_empty());
        let w = s.two_basepoint_words();
        let h = (s.period() / 2).max(1);
        assert_eq!(w.b.len(), h);
        assert_eq!(w.c.len(), if s.period() == 1 { 0 } else { h });
    }
}

#[test]
fn puncture_counts() {
    for (ell, n) in [(1, 1), (2, 2), (3, 4), (4, 6), (5, 10), (6, 12)] {
        assert_eq!(puncture_count(ell).unwrap(), n + 2);
    }
}

#[test]
fn typing_and_evaluation_errors() {
    let s = Strip::new(3).unwrap();
    assert!(matches!(s.k_matrix_closed(&s.kappa(2).unwrap()), Err(Error::OpenWord(_))));
    assert!(s.k_matrix(&s.kappa(2).unwrap()).is_ok());
    assert!(matches!(s.parse("phi_fwd(0).phi_fwd(0)"), Err(Error::IllTyped(_))));
    assert!(matches!(s.k_matrix(&s.parse("flop_up").unwrap()), Err(Error::NonAlgebraic(_))));
    assert!(s.parse("q9").is_err());
    assert!(matches!(s.parse("qminus.("), Err(Error::Parse(_))));
}

proptest! {
    #[test]
    fn reduction_preserves_k_matrix(ell in 1i64..=6, choices in proptest::collection::vec(0u8..6, 0..40)) {
        let s = Strip::new(ell).unwrap();
        let w = walk(s.period(), &choices);
        let r = w.reduce();
        prop_assert_eq!(s.k_matrix(&r).unwrap(), s.k_matrix(&w).unwrap());
        prop_assert!(r.letters.len() <= w.letters.len());
        prop_assert_eq!(r.reduce(), r.clone());
        prop_assert_eq!((r.source, r.target), (w.source, w.target));
    }

    #[test]
    fn word_times_inverse_is_empty(ell in 1i64..=6, choices in proptest::collection::vec(0u8..6, 0..40)) {
        let s = Strip::new(ell).unwrap();
        let w = walk(s.period(), &choices);
        prop_assert!(w.then(&w.inverse()).unwrap().reduce().is_empty());
        prop_assert!(w.inverse().then(&w).unwrap().reduce().is_empty());
    }

    #[test]
    fn render_parse_round_trip(ell in 1i64..=6, choices in proptest::collection::vec(0u8..6, 1..30)) {
        let s = Strip::new(ell).unwrap();
        let w = walk(s.period(), &choices);
        prop_assert_eq!(s.parse(&w.render()).unwrap(), w);
    }
}
