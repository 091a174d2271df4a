use super::*;
use crate::ca::equal;
use crate::paut::{eval_word, make_partial_shift_pow, Registry};

fn z2(size: usize) -> AbelianAction {
    AbelianAction::new(vec![2], size).unwrap()
}

fn setting() -> FreeSetting {
    FreeSetting::new(2, 2, z2(2), z2(2)).unwrap()
}

fn exact_eq(f: &Ca, g: &Ca) -> bool {
    let v = equal(f, g, 1 << 22, 0).unwrap();
    v.is_exact() && v.is_equal()
}

#[test]
fn group_actions() {
    let g = AbelianAction::parse("Z2xZ3", 7).unwrap();
    assert_eq!(g.order(), 6);
    assert_eq!(g.elements().len(), 6);
    // regular on 0..6, fixes 6
    for e in g.elements() {
        assert_eq!(g.act(&e, 6), 6);
        let moved = g.act(&e, 1);
        assert_eq!(moved == 1, g.is_identity(&e));
        assert_eq!(g.act(&g.neg(&e), moved), 1);
    }
    assert!(matches!(AbelianAction::new(vec![3], 2), Err(Error::NonFreeOrbit(_))));
    assert!(AbelianAction::parse("Q8", 8).is_err());
}

#[test]
fn generators_are_conjugates_of_a_symbol_permutation() {
    let a = Alphabet::product(&[3, 2]).unwrap();
    let g = AbelianAction::new(vec![3], 3).unwrap();
    let h = z2(2);
    let id = free_gen(3, 2, &g, &[0], 2, 1).unwrap();
    assert!(exact_eq(&id, &Ca::identity(&a)));
    let f0 = free_gen(3, 2, &g, &[1], 0, 1).unwrap();
    assert_eq!(f0.width(), 1);
    for i in 1..4 {
        let fi = free_gen(3, 2, &g, &[1], i, 1).unwrap();
        assert_eq!(fi.interval(), (-i, 0));
        // f_{g,i} = σ₂^i ∘ f_{g,0} ∘ σ₂^{-i}
        let conj = compose(&make_partial_shift_pow(&a, 2, i).unwrap(), &compose(&f0, &make_partial_shift_pow(&a, 2, -i).unwrap()).unwrap()).unwrap();
        assert!(exact_eq(&fi, &conj));
        let hi = free_gen(3, 2, &h, &[1], i, 2).unwrap();
        let h0 = free_gen(3, 2, &h, &[1], 0, 2).unwrap();
        let conj = compose(&make_partial_shift_pow(&a, 1, i).unwrap(), &compose(&h0, &make_partial_shift_pow(&a, 1, -i).unwrap()).unwrap()).unwrap();
        assert!(exact_eq(&hi, &conj));
    }
    assert!(free_gen(3, 2, &g, &[1], 1, 2).is_err());
}

#[test]
fn same_family_generators_commute() {
    let s = setting();
    let f1 = free_gen(2, 2, &s.g, &[1], 1, 1).unwrap();
    let f2 = free_gen(2, 2, &s.g, &[1], 2, 1).unwrap();
    assert!(exact_eq(&compose(&f1, &f2).unwrap(), &compose(&f2, &f1).unwrap()));
    let h1 = free_gen(2, 2, &s.h, &[1], 1, 2).unwrap();
    assert!(!exact_eq(&compose(&f1, &h1).unwrap(), &compose(&h1, &f1).unwrap()));
}

#[test]
fn witness_examples() {
    let s = setting();
    let single = ReducedWord { first_track: 1, blocks: vec![vec![(vec![1], 1)]] };
    let x = s.witness_config(&single).unwrap();
    // over Z2, g⁻¹·1 = 0
    assert_eq!(x.center(), &[1, 0]);
    assert_ne!(s.eval(&single).unwrap().apply(&x).unwrap(), x);
    let empty = ReducedWord { first_track: 2, blocks: vec![] };
    let y = s.witness_config(&empty).unwrap();
    assert_eq!(s.act(&empty, &y).unwrap(), y);
    let four = ReducedWord {
        first_track: 1,
        blocks: vec![vec![(vec![1], 2)], vec![(vec![1], 1), (vec![1], 3)], vec![(vec![1], 1)], vec![(vec![1], 2)]],
    };
    let z = s.witness_config(&four).unwrap();
    let fz = s.eval(&four).unwrap().apply(&z).unwrap();
    assert_ne!(fz, z);
    assert_eq!(fz, s.act(&four, &z).unwrap());
    // blocks sit at 2, 2+3, 5+1, 6+2; the last one leaves a 1 on track 2 there
    assert_eq!(fz.at(8), 1);
}

#[test]
fn non_reduced_words_are_rejected() {
    let s = setting();
    let cancel = ReducedWord { first_track: 1, blocks: vec![vec![(vec![1], 1), (vec![1], 1)]] };
    assert!(s.check_reduced(&cancel).is_err());
    let zero = ReducedWord { first_track: 1, blocks: vec![vec![(vec![1], 0)]] };
    assert!(s.check_reduced(&zero).is_err());
}

#[test]
fn every_short_reduced_word_moves_its_witness() {
    let s = setting();
    let subsets: Vec<Vec<(GroupElem, i64)>> =
        (1u32..8).map(|m| (1..=3).filter(|i| m >> (i - 1) & 1 == 1).map(|i| (vec![1], i as i64)).collect()).collect();
    let mut count = 0;
    for first_track in [1, 2] {
        let mut frontier: Vec<Vec<Vec<(GroupElem, i64)>>> = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for blocks in &frontier {
                for sub in &subsets {
                    let mut b = blocks.clone();
                    b.push(sub.clone());
                    let w = ReducedWord { first_track, blocks: b.clone() };
                    let x = s.witness_config(&w).unwrap();
                    assert_ne!(s.act(&w, &x).unwrap(), x, "{w:?}");
                    count += 1;
                    next.push(b);
                }
            }
            frontier = next;
        }
    }
    assert_eq!(count, 2 * (7 + 49 + 343 + 2401));
}

#[test]
fn word_json() {
    let s = setting();
    let v = serde_json::json!({"first_track": 2, "blocks": [[[1, 1]], [[[1], 2]]]});
    let w = s.word_from_json(&v).unwrap();
    assert_eq!(w.blocks[1], vec![(vec![1], 2)]);
    assert!(s.word_from_json(&serde_json::json!({"blocks": []})).is_err());
}

#[test]
fn swap_parity_matches_permutation_signs() {
    for m in 1..=4 {
        for n in 1..=4 {
            let (sb, sc) = swap_perms(m, n);
            assert_eq!(swap_parity(m, n), sb.is_even() && sc.is_even(), "({m}, {n})");
        }
    }
    assert!(swap_parity(2, 4));
    assert!(!swap_parity(2, 3));
    assert!(swap_parity(1, 5));
    assert_eq!(swap_perms(2, 3).0.sign(), -1);
}

#[test]
fn parity_violation_is_reported() {
    assert!(matches!(six_involutions(2, 3, 0), Err(Error::ParityViolation { b: 2, c: 3 })));
}

#[test]
fn commutator_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [4, 9, 16] {
        let p = random_even_involution(n, &mut rng);
        let cert = involution_certificate(&p).unwrap();
        assert!(cert.all_even());
        assert_eq!(cert.product(n), p);
    }
    let odd = Permutation::transposition(5, 0, 1);
    assert!(involution_certificate(&odd).is_err());
}

fn check_six(six: &SixInvolutions) {
    let a = &six.alphabet;
    let id = Ca::identity(a);
    for f in &six.gens {
        assert!(exact_eq(&compose(f, f).unwrap(), &id));
    }
    let (sb, sc) = swap_perms(six.b, six.c);
    let preg = six.perm_registry();
    let h = diagonal_shift();
    let shifts = |t1: usize, t2: usize| {
        GroupWord::new(vec![Token::shift(t1, 2), Token::shift(t2, -2)])
    };
    for (word, perm, (t1, t2)) in [(&six.swap_b, &sb, (1, 3)), (&six.swap_c, &sc, (2, 4))] {
        let f = eval_word(a, word, &preg).unwrap();
        assert!(exact_eq(&f, &make_symbol_perm(a, perm).unwrap()));
        let up = GroupWord::single(Token::perm(perm.clone()));
        let diag = up.conj(&h);
        let comm = eval_word(a, &GroupWord::commutator(&up, &diag), &Registry::new()).unwrap();
        let expect = eval_word(a, &shifts(t1, t2), &Registry::new()).unwrap();
        assert!(exact_eq(&comm, &expect));
    }
    // f_{i+3} = h⁻¹ f_i h, so renaming f_i to f_{i+3} conjugates any word by h
    for k in 0..3 {
        let w = GroupWord::single(Token::named(&six_names()[k], 1)).conj(&h);
        assert!(exact_eq(&six.gens[k + 3], &eval_word(a, &w, &six.registry()).unwrap()));
    }
    let mut renamed = Registry::new();
    for (name, p) in six_names()[3..].iter().zip(&six.perms) {
        renamed = renamed.with_perm(name, p.clone());
    }
    let back = eval_word(a, &SixInvolutions::conjugated(&six.swap_b), &renamed).unwrap();
    assert!(exact_eq(&back, &make_symbol_perm(a, &sb).unwrap()));
    let n = a.size();
    for (p, cert) in six.perms.iter().zip(six.certificates().unwrap()) {
        assert!(cert.all_even());
        assert_eq!(&cert.product(n), p);
    }
}

#[test]
fn six_involutions_small() {
    let six = six_involutions(2, 2, 0).unwrap();
    assert_eq!(six.gens.len(), 6);
    check_six(&six);
}

#[test]
fn six_involutions_for_two_and_four() {
    let six = six_involutions(2, 4, 0).unwrap();
    assert_eq!(six.alphabet.size(), 64);
    check_six(&six);
}
