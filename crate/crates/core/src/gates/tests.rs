use super::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn controlled_cycle_matches_definition() {
    for (k, n) in [(3, 3), (4, 3), (5, 2), (3, 4)] {
        for j in 0..n {
            let w = controlled_cycle(k, n, j).unwrap();
            for i in 0..k.pow(n as u32) {
                let u = unrank(i, k, n);
                let mut expect = u.clone();
                if u.iter().enumerate().all(|(c, &v)| c == j || v == 0) && u[j] <= 2 {
                    expect[j] = (u[j] + 1) % 3;
                }
                assert_eq!(w.apply(&u).unwrap(), expect, "k={k} n={n} j={j} u={u:?}");
            }
        }
    }
}

#[test]
fn random_even_permutations_three_letters() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let pi = Permutation::random_even(27, &mut rng);
        let w = decompose_even(3, 3, &pi).unwrap();
        assert!(w.gates.iter().all(|(_, g)| g.is_even()));
        assert_eq!(w.to_perm(), pi);
    }
}

#[test]
fn four_letters() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..3 {
        let pi = Permutation::random_even(64, &mut rng);
        let w = decompose_even(4, 3, &pi).unwrap();
        assert!(w.gates.iter().all(|(_, g)| g.is_even()));
        assert_eq!(w.to_perm(), pi);
    }
}

#[test]
fn odd_rejected() {
    let t = Permutation::transposition(27, 0, 1);
    assert!(matches!(decompose_even(3, 3, &t), Err(Error::NotEven)));
}

#[test]
fn alt_word_of_small_hypergraph() {
    let edges = [[0u32, 1, 2], [2, 3, 4]];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let pi = Permutation::random_even(5, &mut rng);
        let steps = alt_word_from_3cycles(5, &edges, &pi).unwrap();
        let mut acc = Permutation::identity(5);
        for (e, inv) in steps {
            acc = cycle_perm(5, &edges[e], inv).compose(&acc);
        }
        assert_eq!(acc, pi);
    }
    assert!(alt_word_from_3cycles(6, &edges, &Permutation::identity(6)).is_err());
}

#[test]
fn spec_style_hypergraph_cases() {
    let edges = [[0u32, 1, 2], [2, 3, 4]];
    let target = Permutation::from_cycles(5, &[vec![0, 1], vec![3, 4]]).unwrap();
    let steps = alt_word_from_3cycles(5, &edges, &target).unwrap();
    let acc = steps
        .iter()
        .fold(Permutation::identity(5), |acc, &(e, inv)| cycle_perm(5, &edges[e], inv).compose(&acc));
    assert_eq!(acc, target);
    let c = cycle_perm(5, &edges[1], false);
    assert_eq!(alt_word_from_3cycles(5, &edges, &c).unwrap(), vec![(1, false)]);
    assert!(matches!(
        alt_word_from_3cycles(5, &[[0, 1, 2]], &Permutation::identity(5)),
        Err(Error::NotWeaklyConnected)
    ));
}

#[test]
fn trivial_cases() {
    assert!(decompose_even(3, 3, &Permutation::identity(27)).unwrap().is_empty());
    let c = Permutation::from_cycles(9, &[vec![0, 4, 8]]).unwrap();
    let w = decompose_even(3, 2, &c).unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w.to_perm(), c);
    assert!(matches!(decompose_even(2, 3, &Permutation::identity(8)), Err(Error::AlphabetTooSmall(_))));
    assert_eq!(gate_word_apply(&GateWord::empty(3, 3, 2), &[1, 2, 0]).unwrap(), vec![1, 2, 0]);
    assert!(gate_word_apply(&GateWord::empty(3, 3, 2), &[1, 2]).is_err());
}

#[test]
fn single_gate_applies_to_first_pair() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = Permutation::random_even(9, &mut rng);
    let mut gw = GateWord::empty(3, 4, 2);
    gw.push(0, g.clone());
    for i in 0..81 {
        let w = unrank(i, 3, 4);
        let v = g.apply(w[0] * 3 + w[1]);
        let expect = vec![v / 3, v % 3, w[2], w[3]];
        assert_eq!(gw.apply(&w).unwrap(), expect);
    }
}

#[test]
fn binary_controlled_blocks() {
    for n in [4, 5] {
        for i in 0..n - 1 {
            let w = controlled_block_cycle(n, i).unwrap();
            let c = [1u32, 2, 0, 3];
            for x in 0..1usize << n {
                let u = unrank(x, 2, n);
                let mut expect = u.clone();
                if u.iter().enumerate().all(|(m, &v)| m == i || m == i + 1 || v == 0) {
                    let b = c[(u[i] * 2 + u[i + 1]) as usize];
                    expect[i] = b >> 1;
                    expect[i + 1] = b & 1;
                }
                assert_eq!(w.apply(&u).unwrap(), expect, "n={n} i={i} u={u:?}");
            }
        }
    }
}

#[test]
fn binary_random_even_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let pi = Permutation::random_even(16, &mut rng);
        let w = decompose_even_binary(4, &pi).unwrap();
        assert!(w.gates.iter().all(|(p, g)| g.is_even() && p + 3 <= 4));
        assert_eq!(w.to_perm(), pi);
    }
    let pi = Permutation::random_even(32, &mut rng);
    assert_eq!(decompose_even_binary(5, &pi).unwrap().to_perm(), pi);
    let pi = Permutation::random_even(8, &mut rng);
    let w = decompose_even_binary(3, &pi).unwrap();
    assert_eq!(w.len(), 1);
    assert!(decompose_even_binary(4, &Permutation::transposition(16, 0, 1)).is_err());
}

#[test]
fn width_two_binary_gates_do_not_generate() {
    let group = even_gate_closure(2, 3, 2).unwrap();
    assert!(group.len() < 20160);
    assert_eq!(20160 % group.len(), 0);
    assert!(group.iter().all(|g| g.is_even()));
    assert_eq!(even_gate_closure(2, 3, 3).unwrap().len(), 20160);
}

#[test]
fn json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pi = Permutation::random_even(27, &mut rng);
    let w = decompose_even(3, 3, &pi).unwrap();
    let back = GateWord::from_json(3, 3, 2, &w.to_json()).unwrap();
    assert_eq!(back, w);
}
