use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::ca::{compose, equal, EqualityVerdict};
use crate::paut::{eval_word, Registry};

fn exact_eq(f: &Ca, g: &Ca) -> bool {
    equal(f, g, DEFAULT_BUDGET, 0).unwrap() == EqualityVerdict::ExactEqual
}

fn bits(s: &str) -> Vec<Symbol> {
    s.bytes().map(|b| (b - b'0') as Symbol).collect()
}

fn cyl(b: usize, m: i64, w: &str) -> ClopenSet {
    ClopenSet::cylinder(Alphabet::new(b).unwrap(), m, bits(w)).unwrap()
}

/// The block permutation `00 → 10 → 01 → 00` of `{0,1}^2`.
fn example_pi() -> Permutation {
    Permutation::from_images(vec![2, 0, 1, 3]).unwrap()
}

#[test]
fn example_local_rule_cases() {
    let f = build_ctrl(2, &example_pi(), &cyl(2, 0, "01")).unwrap();
    assert_eq!(f.interval(), (-1, 1));
    let sym = |x: u32, y: u32| 2 * x + y;
    // (window cells given, output) with None meaning "any symbol"
    type Cell = Option<(u32, u32)>;
    let cases: [([Cell; 3], (u32, u32)); 6] = [
        ([None, Some((0, 0)), Some((1, 0))], (0, 1)),
        ([None, Some((0, 0)), Some((1, 1))], (0, 0)),
        ([None, Some((0, 1)), Some((1, 0))], (0, 0)),
        ([Some((0, 0)), Some((1, 0)), None], (1, 0)),
        ([Some((0, 0)), Some((1, 1)), None], (1, 0)),
        ([Some((0, 1)), Some((1, 0)), None], (1, 1)),
    ];
    let mut covered = std::collections::HashSet::new();
    for (cells, out) in cases {
        for fill in 0..4u32 {
            let w: Vec<Symbol> = cells.iter().map(|c| c.map(|(x, y)| sym(x, y)).unwrap_or(fill)).collect();
            assert_eq!(f.local(&w), sym(out.0, out.1), "{w:?}");
            covered.insert(w);
        }
    }
    // everything else keeps the centre
    for i in 0..64u32 {
        let w = vec![i / 16, (i / 4) % 4, i % 4];
        if !covered.contains(&w) {
            assert_eq!(f.local(&w), w[1], "{w:?}");
        }
    }
}

#[test]
fn example_configuration_pair() {
    let top = bits("0100111001001001001000110010010");
    let bottom = bits("0101110011010011010101001001010");
    let expected = bits("0001110011001011001100101101000");
    let a = two_track(2, 2).unwrap();
    let center: Vec<Symbol> = top.iter().zip(&bottom).map(|(x, y)| 2 * x + y).collect();
    let x = SupportedConfig::new(a.clone(), vec![0], center, vec![0]).unwrap();
    let f = build_ctrl(2, &example_pi(), &cyl(2, 0, "01")).unwrap();
    let y = f.apply(&x).unwrap();
    let n = top.len() as i64;
    let out = y.window(0, n);
    assert_eq!(out.iter().map(|s| s / 2).collect::<Vec<_>>(), top);
    assert_eq!(out.iter().map(|s| s % 2).collect::<Vec<_>>(), expected);
    assert_eq!(y.window(-5, 0), vec![0; 5]);
    assert_eq!(y.window(n, n + 5), vec![0; 5]);
}

#[test]
fn identity_and_bordered_controls() {
    let f = build_ctrl(2, &Permutation::identity(4), &cyl(2, 0, "01")).unwrap();
    assert!(exact_eq(&f, &Ca::identity(&two_track(2, 2).unwrap())));
    assert_eq!(build_ctrl(2, &example_pi(), &cyl(2, 0, "11")).unwrap_err(), Error::NotUnbordered(2));
}

#[test]
fn control_track_is_never_modified() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = build_ctrl(3, &Permutation::random(9, &mut rng), &cyl(2, -1, "10")).unwrap();
    let a = f.alphabet().clone();
    for _ in 0..50 {
        let gen = |rng: &mut ChaCha8Rng, len| (0..len).map(|_| rng.gen_range(0..6)).collect::<Vec<Symbol>>();
        let x = SupportedConfig::new(a.clone(), gen(&mut rng, 3), gen(&mut rng, 12), gen(&mut rng, 2)).unwrap();
        let y = f.apply(&x).unwrap();
        for i in -10..20 {
            assert_eq!(x.at(i) / 3, y.at(i) / 3);
        }
    }
}

#[test]
fn commutator_law_small_cases() {
    let h = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
    let g = Permutation::transposition(3, 0, 1);
    assert_eq!(ctrl_commutator_law_check(3, &h, &g, &[1], 2, 0).unwrap(), EqualityVerdict::ExactEqual);
    assert_eq!(ctrl_commutator_law_check(3, &h, &h, &[1], 2, 0).unwrap(), EqualityVerdict::ExactEqual);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..5 {
        let h = Permutation::random(4, &mut rng);
        let g = Permutation::random(4, &mut rng);
        assert_eq!(ctrl_commutator_law_check(2, &h, &g, &[1, 0], 1, -1).unwrap(), EqualityVerdict::ExactEqual);
    }
}

#[test]
fn hypocenter_words() {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    assert_eq!(s3.hypocenter.len(), 3);
    let g = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
    let a = two_track(2, 3).unwrap();
    let reg = Registry::new();
    let w = hypocenter_ctrl(&s3, 2, &g, &[1, 0], 0).unwrap();
    let direct = basic_ctrl(2, 3, &g, &[1, 0], 0).unwrap();
    assert!(exact_eq(&eval_word(&a, &w, &reg).unwrap(), &direct));
    let single = hypocenter_ctrl(&s3, 2, &g, &[1], 0).unwrap();
    assert_eq!(single.len(), 1);
    let odd = Permutation::transposition(3, 0, 1);
    assert_eq!(hypocenter_ctrl(&s3, 2, &odd, &[1, 0], 0).unwrap_err(), Error::NotInHypocenter);
}

#[test]
fn even_controls_from_generators() {
    let phi = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
    let f = cyl(2, 0, "1");
    let w = even_ctrl(2, &phi, &f).unwrap();
    let a = two_track(2, 3).unwrap();
    let lhs = eval_word(&a, &w, &Registry::new()).unwrap();
    let rhs = ControlledPerm::new(3, f.clone(), 1, BlockMap::Table(Arc::new(phi.clone()))).unwrap().to_ca().unwrap();
    assert!(exact_eq(&lhs, &rhs));
    // a two-word clopen set at a nonzero offset
    let f2 = ClopenSet::new(Alphabet::new(2).unwrap(), -1, vec![bits("10"), bits("11")]).unwrap();
    let w2 = even_ctrl(2, &phi, &f2).unwrap();
    let rhs2 = ControlledPerm::new(3, f2, 1, BlockMap::Table(Arc::new(phi))).unwrap().to_ca().unwrap();
    assert!(exact_eq(&eval_word(&a, &w2, &Registry::new()).unwrap(), &rhs2));
    assert!(even_ctrl(2, &Permutation::identity(3), &f).unwrap().is_empty());
    assert_eq!(even_ctrl(2, &Permutation::transposition(3, 0, 1), &f).unwrap_err(), Error::NotEven);
}

#[test]
fn events_intersect_under_commutators() {
    let g = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
    let h = Permutation::transposition(3, 1, 2);
    let e = basic_ctrl(2, 3, &g, &[1], 0).unwrap();
    let f = basic_ctrl(2, 3, &h, &[0], 2).unwrap();
    let lhs = commutator_ca(&e, &f).unwrap();
    let both = ClopenSet::new(Alphabet::new(2).unwrap(), 0, vec![bits("100"), bits("110")]).unwrap();
    let rhs = ControlledPerm::new(3, both, 1, BlockMap::Table(Arc::new(Permutation::commutator(&g, &h))))
        .unwrap()
        .to_ca()
        .unwrap();
    assert!(exact_eq(&lhs, &rhs));
}

#[test]
fn disjoint_unions_compose() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pi = Permutation::random(9, &mut rng);
    let u = ClopenSet::new(Alphabet::new(2).unwrap(), 0, vec![bits("100"), bits("101")]).unwrap();
    let whole = ControlledPerm::new(3, u, 2, BlockMap::Table(Arc::new(pi.clone()))).unwrap().to_ca().unwrap();
    let parts: Vec<Ca> = ["100", "101"]
        .iter()
        .map(|w| ControlledPerm::new(3, cyl(2, 0, w), 2, BlockMap::Table(Arc::new(pi.clone()))).unwrap().to_ca().unwrap())
        .collect();
    assert!(exact_eq(&whole, &compose(&parts[0], &parts[1]).unwrap()));
}

#[test]
fn controlled_action_is_simulated_at_the_origin() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (b, c) = (2, 3);
    let a = two_track(b, c).unwrap();
    let reg = Registry::new();
    for _ in 0..20 {
        let len = rng.gen_range(1..6);
        let word = PWord(
            (0..len)
                .map(|_| {
                    if rng.gen_bool(0.4) {
                        PToken::Shift(rng.gen_range(-2..=2))
                    } else {
                        PToken::Ctrl { g: Permutation::random(c, &mut rng), b: rng.gen_range(0..2), m: rng.gen_range(-2..=2) }
                    }
                })
                .collect(),
        );
        let f = eval_word(&a, &word.to_group_word(b, c), &reg).unwrap();
        for _ in 0..50 {
            let ctrl: Vec<Symbol> = (0..9).map(|_| rng.gen_range(0..2)).collect();
            let data: Symbol = rng.gen_range(0..3);
            let xb = SupportedConfig::new(Alphabet::new(b).unwrap(), vec![0], ctrl.clone(), vec![1]).unwrap().shifted(4);
            let (x2, a2) = word.act(&xb, data);
            let joint: Vec<Symbol> = ctrl.iter().enumerate().map(|(i, &s)| s * 3 + if i == 4 { data } else { 0 }).collect();
            let z = SupportedConfig::new(a.clone(), vec![0], joint, vec![3]).unwrap().shifted(4);
            let out = f.apply(&z).unwrap();
            assert_eq!(out.at(0) % 3, a2);
            for i in -6..6 {
                assert_eq!(out.at(i) / 3, x2.at(i));
            }
        }
    }
}
