use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn bin() -> Alphabet {
    Alphabet::new(2).unwrap()
}

fn shift(a: &Alphabet, k: i64) -> Ca {
    Ca::from_fn(a.clone(), k, k, |w| w[0]).unwrap()
}

fn random_rule(rng: &mut ChaCha8Rng, a: &Alphabet, lo: i64, hi: i64) -> Ca {
    let n = a.size() as Symbol;
    Ca::from_fn(a.clone(), lo, hi, |_| rng.gen_range(0..n)).unwrap()
}

#[test]
fn shift_moves_the_one_left() {
    let a = bin();
    let x = SupportedConfig::parse(&a, "0|1|0").unwrap();
    let y = shift(&a, 1).apply(&x).unwrap();
    assert_eq!(y.at(-1), 1);
    assert_eq!(y.window(-3, 3), vec![0, 0, 1, 0, 0, 0]);
    assert_eq!(Ca::identity(&a).apply(&x).unwrap(), x);
}

#[test]
fn shift_and_inverse_cancel() {
    let a = bin();
    let id = compose(&shift(&a, 1), &shift(&a, -1)).unwrap();
    assert_eq!(id.interval(), (0, 0));
    assert_eq!(equal(&id, &Ca::identity(&a), DEFAULT_BUDGET, 0).unwrap(), EqualityVerdict::ExactEqual);
}

#[test]
fn shift_versus_square_has_three_letter_witness() {
    let a = bin();
    let s2 = compose(&shift(&a, 1), &shift(&a, 1)).unwrap();
    match equal(&shift(&a, 1), &s2, DEFAULT_BUDGET, 0).unwrap() {
        EqualityVerdict::ExactUnequal { witness, start } => {
            assert_eq!(witness.len(), 3);
            assert_eq!(start, 0);
            assert_ne!(witness[1], witness[2]);
        }
        v => panic!("unexpected verdict {v:?}"),
    }
}

#[test]
fn composition_interval_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = Alphabet::new(3).unwrap();
    for _ in 0..30 {
        let f = random_rule(&mut rng, &a, -1, 1);
        let g = random_rule(&mut rng, &a, -1, 0);
        let h = compose(&f, &g).unwrap();
        let (lo, hi) = h.interval();
        assert!(lo >= -2 && hi <= 1);
        // oracle: evaluate the two rules one after the other on windows
        let x = SupportedConfig::new(a.clone(), vec![0, 2, 1], vec![1, 1, 2, 0, 0, 2], vec![2, 0]).unwrap();
        assert_eq!(h.apply(&x).unwrap(), f.apply(&g.apply(&x).unwrap()).unwrap());
    }
}

#[test]
fn apply_commutes_with_shift() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = Alphabet::new(3).unwrap();
    for _ in 0..30 {
        let f = random_rule(&mut rng, &a, -1, 2);
        let gen = |rng: &mut ChaCha8Rng, len| (0..len).map(|_| rng.gen_range(0..3)).collect::<Vec<Symbol>>();
        let lp = rng.gen_range(1..4);
        let cl = rng.gen_range(0..6);
        let rp = rng.gen_range(1..4);
        let x = SupportedConfig::new(a.clone(), gen(&mut rng, lp), gen(&mut rng, cl), gen(&mut rng, rp)).unwrap();
        let k = rng.gen_range(-3..4);
        assert_eq!(f.apply(&x.shifted(k)).unwrap(), f.apply(&x).unwrap().shifted(k));
    }
}

#[test]
fn xor_is_not_reversible() {
    let xor = Ca::from_fn(bin(), 0, 1, |w| w[0] ^ w[1]).unwrap();
    assert!(!is_reversible(&xor).unwrap());
    assert_eq!(invert(&xor, 4).unwrap_err(), Error::NotReversible);
}

#[test]
fn inverse_of_shift_is_right_shift() {
    let a = bin();
    let inv = invert(&shift(&a, 1), DEFAULT_INVERSE_RADIUS).unwrap();
    assert_eq!(inv.interval(), (-1, -1));
}

#[test]
fn inverse_of_symbol_permutation() {
    let a = Alphabet::new(4).unwrap();
    let p = Ca::from_table(a.clone(), 0, 0, vec![1, 2, 3, 0]).unwrap();
    let inv = invert(&p, 0).unwrap();
    assert_eq!(inv.table().unwrap(), &[3, 0, 1, 2]);
}

#[test]
fn inverse_of_a_toffoli_like_rule() {
    // flip the centre when both neighbours are 1: an involution
    let t = Ca::from_fn(bin(), -1, 1, |w| w[1] ^ (w[0] & w[2])).unwrap();
    assert!(!is_reversible(&t).unwrap());
    // flip the centre when left neighbour is 1 and cell two to the right is 0,
    // preceded by a partitioned structure: use a marker-free involution instead
    let two = Alphabet::product(&[2, 2]).unwrap();
    let g = Ca::from_fn(two.clone(), 0, 1, |w| {
        let (x0, y0) = (w[0] / 2, w[0] % 2);
        let x1 = w[1] / 2;
        2 * x0 + (y0 ^ x1)
    })
    .unwrap();
    assert!(is_reversible(&g).unwrap());
    let inv = invert(&g, 4).unwrap();
    assert_eq!(equal(&compose(&g, &inv).unwrap(), &Ca::identity(&two), DEFAULT_BUDGET, 0).unwrap(), EqualityVerdict::ExactEqual);
}

#[test]
fn reversal_of_shift() {
    let a = bin();
    let r = shift(&a, 1).reverse_conjugate();
    assert_eq!(r.interval(), (-1, -1));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = random_rule(&mut rng, &Alphabet::new(3).unwrap(), -1, 2);
    let back = f.reverse_conjugate().reverse_conjugate();
    assert_eq!(back.table(), f.table());
    assert_eq!(back.interval(), f.interval());
}

/// Injectivity oracle on all spatially periodic points of period at most 6.
fn injective_on_periodic_points(f: &Ca) -> bool {
    let n = f.alphabet().size();
    let (lo, hi) = f.interval();
    for p in 1..=6usize {
        let total = n.pow(p as u32);
        let mut seen = std::collections::HashSet::new();
        for idx in 0..total {
            let mut w = vec![0 as Symbol; p];
            let mut v = idx;
            for s in w.iter_mut() {
                *s = (v % n) as Symbol;
                v /= n;
            }
            let image: Vec<Symbol> = (0..p as i64)
                .map(|i| {
                    let win: Vec<Symbol> = (i + lo..=i + hi).map(|j| w[j.rem_euclid(p as i64) as usize]).collect();
                    f.local(&win)
                })
                .collect();
            if !seen.insert(image) {
                return false;
            }
        }
    }
    true
}

#[test]
fn reversibility_agrees_with_periodic_oracle_on_binary_radius_one() {
    for code in 0..256u32 {
        let f = Ca::from_fn(bin(), -1, 1, |w| (code >> (4 * w[0] + 2 * w[1] + w[2])) & 1).unwrap();
        assert_eq!(is_reversible(&f).unwrap(), injective_on_periodic_points(&f), "rule {code}");
    }
}

#[test]
fn equality_by_dependencies_on_a_large_product_alphabet() {
    // 64 symbols, neighbourhood of width 5: too many windows, few dependencies
    let a = Alphabet::product(&[2, 4, 2, 4]).unwrap();
    let move_track = |t: usize, k: i64| {
        let a2 = a.clone();
        Ca::from_fn(a.clone(), k.min(0), k.max(0), move |w| {
            let src = w[(k - k.min(0)) as usize];
            let here = w[(-k.min(0)) as usize];
            a2.with_track(here, t, a2.track_of(src, t))
        })
        .unwrap()
    };
    let s1 = move_track(0, 1);
    let s3 = move_track(2, -1);
    let lhs = compose_all(&a, &[s1.clone(), s1.clone(), s3.clone(), s3.clone()]).unwrap();
    let rhs = compose_all(&a, &[s3.clone(), s1.clone(), s3, s1.clone()]).unwrap();
    assert!(!lhs.is_tabulated() || lhs.width() <= 4);
    assert_eq!(equal(&lhs, &rhs, DEFAULT_BUDGET, 0).unwrap(), EqualityVerdict::ExactEqual);
    let v = equal(&lhs, &compose(&s1, &s1).unwrap(), DEFAULT_BUDGET, 0).unwrap();
    assert!(matches!(v, EqualityVerdict::ExactUnequal { .. }));
}

#[test]
fn rule_file_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f = random_rule(&mut rng, &Alphabet::new(3).unwrap(), -1, 1).tabulated(DEFAULT_BUDGET).unwrap();
    let rf = RuleFile::from_ca(&f).unwrap();
    let text = serde_json::to_string(&rf).unwrap();
    let g = serde_json::from_str::<RuleFile>(&text).unwrap().to_ca().unwrap();
    assert_eq!(equal(&f, &g, DEFAULT_BUDGET, 0).unwrap(), EqualityVerdict::ExactEqual);
}

#[test]
fn sampled_mode_finds_differences() {
    let a = bin();
    let f = shift(&a, 1);
    let g = Ca::from_fn(a.clone(), 1, 1, |w| w[0]).unwrap();
    let h = Ca::from_fn(a.clone(), 0, 1, |w| w[1] ^ (w[0] & w[1] & 0)).unwrap();
    let gen = |rng: &mut ChaCha8Rng| {
        let p: Vec<Symbol> = (0..5).map(|_| rng.gen_range(0..2)).collect();
        SupportedConfig::new(bin(), p.clone(), vec![], p).unwrap()
    };
    assert!(equal_sampled_with(&f, &g, 200, 1, gen).is_equal());
    assert!(equal_sampled_with(&f, &h, 200, 1, gen).is_equal());
    let k = Ca::identity(&a);
    assert!(!equal_sampled_with(&f, &k, 200, 1, gen).is_equal());
}
