use super::*;
use crate::ca::{compose, equal, invert};
use crate::config::SupportedConfig;
use crate::paut::{eval_word, make_partial_shift};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    GroupWord::new(
        (0..len)
            .map(|_| match rng.gen_range(0..3) {
                0 => Token::shift(rng.gen_range(1..=2), if rng.gen_bool(0.5) { 1 } else { -1 }),
                _ => Token::perm(Permutation::random(4, rng)),
            })
            .collect(),
    )
}

fn poly(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

#[test]
fn polynomial_text_and_arithmetic() {
    let p = poly("1 + x^-2 + x^3");
    assert_eq!(p.to_string(), "x^-2 + 1 + x^3");
    assert_eq!(poly(&p.to_string()), p);
    assert_eq!(poly("x + x"), LaurentPoly::zero());
    // (1 + x)^2 = 1 + x^2 in characteristic two
    assert_eq!(poly("1 + x").mul(&poly("1 + x")), poly("1 + x^2"));
    assert_eq!(poly("x^-1").mul(&poly("x")), LaurentPoly::one());
    assert!("x^".parse::<LaurentPoly>().is_err());
    assert!("2x".parse::<LaurentPoly>().is_err());
}

#[test]
fn unit_determinant_criterion() {
    assert!(mat_is_invertible(&Mat2::identity()));
    assert!(mat_is_invertible(&Mat2::diag(poly("x"), poly("x^-1"))));
    assert!(!mat_is_invertible(&Mat2::diag(poly("1 + x"), LaurentPoly::one())));
    let m = Mat2::new(poly("1 + x"), poly("x"), LaurentPoly::one(), LaurentPoly::one());
    assert_eq!(m.det(), LaurentPoly::one());
    assert_eq!(m.mul(&m.inverse().unwrap()), Mat2::identity());
    let v = m.to_json();
    assert_eq!(Mat2::from_json(&v).unwrap(), m);
}

#[test]
fn small_words() {
    let a = two_by_two();
    let reg = Registry::new();
    assert!(word_to_affine(&a, &GroupWord::empty(), &reg).unwrap().is_identity());
    // adding (1,0) cellwise: 0<->2, 1<->3
    let add = Permutation::from_images(vec![2, 3, 0, 1]).unwrap();
    let e = word_to_affine(&a, &GroupWord::single(Token::perm(add)), &reg).unwrap();
    assert_eq!(e, AffineElement::translation([1, 0]));
    let back = GroupWord::new(vec![Token::shift(1, 1), Token::shift(1, -1)]);
    assert!(word_to_affine(&a, &back, &reg).unwrap().is_identity());
    let s1 = word_to_affine(&a, &GroupWord::single(Token::shift(1, 1)), &reg).unwrap();
    assert_eq!(s1.m, Mat2::diag(poly("x^-1"), LaurentPoly::one()));
    assert!(word_to_affine(&Alphabet::new(4).unwrap(), &back, &reg).is_err());
}

#[test]
fn affine_to_ca_examples() {
    let a = two_by_two();
    let id = affine_to_ca(&AffineElement::identity()).unwrap();
    assert!(equal(&id, &Ca::identity(&a), 1 << 20, 0).unwrap().is_exact());
    let s1 = affine_to_ca(&AffineElement::linear(Mat2::diag(poly("x^-1"), LaurentPoly::one()))).unwrap();
    let v = equal(&s1, &make_partial_shift(&a, 1).unwrap(), 1 << 20, 0).unwrap();
    assert!(v.is_equal() && v.is_exact());
    let t = affine_to_ca(&AffineElement::translation([1, 1])).unwrap();
    for s in 0..4 {
        assert_eq!(t.local(&[s]), s ^ 3);
    }
    assert!(matches!(
        affine_to_ca(&AffineElement::linear(Mat2::diag(poly("1 + x"), LaurentPoly::one()))),
        Err(Error::NotInvertible)
    ));
}

#[test]
fn every_symbol_permutation_is_affine() {
    let mut seen = std::collections::HashSet::new();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    while seen.len() < 24 {
        let p = Permutation::random(4, &mut rng);
        let e = perm_to_affine(&p).unwrap();
        let f = affine_to_ca(&e).unwrap();
        for s in 0..4 {
            assert_eq!(f.local(&[s]), p.apply(s as u32) as Symbol);
        }
        seen.insert(p.images().to_vec());
    }
}

#[test]
fn round_trip_through_automata() {
    let a = two_by_two();
    let reg = Registry::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let w = random_word(&mut rng, 10);
        let e = word_to_affine(&a, &w, &reg).unwrap();
        let f = eval_word(&a, &w, &reg).unwrap();
        let v = equal(&affine_to_ca(&e).unwrap(), &f, 1 << 22, 0).unwrap();
        assert!(v.is_equal() && v.is_exact(), "{w}");
        assert_eq!(ca_to_affine(&f.tabulated(1 << 22).unwrap()).unwrap(), e);
    }
}

#[test]
fn homomorphism_and_kernel_spot_check() {
    let a = two_by_two();
    let reg = Registry::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let (u, w) = (random_word(&mut rng, 6), random_word(&mut rng, 6));
        let uw = u.then_after(&w);
        let lhs = word_to_affine(&a, &uw, &reg).unwrap();
        let rhs = word_to_affine(&a, &u, &reg).unwrap().mul(&word_to_affine(&a, &w, &reg).unwrap());
        assert_eq!(lhs, rhs);
        // u·u⁻¹ always maps to the identity, and so does its automaton
        let k = u.then_after(&u.inverse());
        assert!(word_to_affine(&a, &k, &reg).unwrap().is_identity());
        assert!(equal(&eval_word(&a, &k, &reg).unwrap(), &Ca::identity(&a), 1 << 22, 0).unwrap().is_equal());
        let e = word_to_affine(&a, &u, &reg).unwrap();
        assert_eq!(e.mul(&e.inverse().unwrap()), AffineElement::identity());
    }
}

#[test]
fn evaluated_words_are_affine_on_finite_support() {
    let a = two_by_two();
    let reg = Registry::new();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let f = eval_word(&a, &random_word(&mut rng, 8), &reg).unwrap();
        let cfg = |rng: &mut ChaCha8Rng| -> Vec<Symbol> { (0..12).map(|_| rng.gen_range(0..4)).collect() };
        let (x, y, z) = (cfg(&mut rng), cfg(&mut rng), cfg(&mut rng));
        let sum: Vec<Symbol> = (0..12).map(|i| x[i] ^ y[i] ^ z[i]).collect();
        let img = |c: &Vec<Symbol>| {
            let s = SupportedConfig::new(a.clone(), vec![0], c.clone(), vec![0]).unwrap();
            f.apply_window(&s, -20, 32)
        };
        let (fx, fy, fz) = (img(&x), img(&y), img(&z));
        let rhs: Vec<Symbol> = (0..fx.len()).map(|i| fx[i] ^ fy[i] ^ fz[i]).collect();
        assert_eq!(img(&sum), rhs);
    }
}

#[test]
fn invertibility_agrees_with_inversion() {
    let m = Mat2::new(poly("1 + x"), poly("x"), LaurentPoly::one(), LaurentPoly::one());
    let f = affine_to_ca(&AffineElement::linear(m.clone())).unwrap();
    let g = affine_to_ca(&AffineElement::linear(m.inverse().unwrap())).unwrap();
    assert!(equal(&invert(&f, 4).unwrap(), &g, 1 << 20, 0).unwrap().is_equal());
    assert!(equal(&compose(&f, &g).unwrap(), &Ca::identity(&two_by_two()), 1 << 20, 0).unwrap().is_equal());
    // x ↦ (1+x)·x on track 1 is a linear automaton that is not injective
    let bad = Ca::from_fn(two_by_two(), -1, 0, |w| (((w[0] >> 1) ^ (w[1] >> 1)) << 1) | (w[1] & 1)).unwrap();
    let e = ca_to_affine(&bad).unwrap();
    assert!(!mat_is_invertible(&e.m));
    assert!(invert(&bad, 4).is_err());
}
