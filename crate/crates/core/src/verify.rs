//! The acceptance suites: each runs a property check against an independent
//! oracle and reports a verdict with enough detail to replay it.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::alphabet::{Alphabet, Symbol};
use crate::ca::{compose, equal, equal_sampled_with, invert, is_reversible, Ca, EqualityVerdict, DEFAULT_BUDGET};
use crate::clopen::ClopenSet;
use crate::compiler::{
    aux_flip_word, compile_ctrl, conveyor_embed, embed_as_controlled_stages, stages_to_ca, stairs, EmbeddingSpec,
};
use crate::config::SupportedConfig;
use crate::control::{build_ctrl, ctrl_commutator_law_check, two_track};
use crate::error::{Error, Result};
use crate::gates::{decompose_even, decompose_even_binary, even_gate_closure};
use crate::linear::{affine_map_ca, affine_to_ca, mat_is_invertible, two_by_two, word_to_affine, LaurentPoly, Mat2};
use crate::linear::AffineElement;
use crate::paut::{eval_word, make_symbol_perm, GroupWord, Registry, Token};
use crate::perm::Permutation;
use crate::witnesses::{
    diagonal_shift, six_involutions, six_names, swap_parity, swap_perms, AbelianAction, FreeSetting, GroupElem,
    ReducedWord, SixInvolutions,
};

/// Names of the suites in the order they are run by [`run_all`].
pub const SUITES: [&str; 12] = [
    "example41",
    "ctrl-law",
    "gates",
    "gate-closure",
    "compiler",
    "stairs",
    "conveyor",
    "stages",
    "linear",
    "six",
    "free",
    "reversibility",
];

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub seed: u64,
    pub budget: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub seed: u64,
    pub millis: u128,
    pub detail: Value,
}

impl SuiteReport {
    pub fn line(&self) -> String {
        format!("{} {} ({} ms)", if self.passed { "PASS" } else { "FAIL" }, self.name, self.millis)
    }
}

pub fn run_suite(name: &str, opts: &Options) -> Result<SuiteReport> {
    let start = Instant::now();
    let (passed, detail) = match name {
        "example41" => example41()?,
        "ctrl-law" => ctrl_law()?,
        "gates" => gates(opts)?,
        "gate-closure" => gate_closure()?,
        "compiler" => compiler(opts)?,
        "stairs" => stair_law()?,
        "conveyor" => conveyor(opts)?,
        "stages" => stages(opts)?,
        "linear" => linear(opts)?,
        "six" => six(opts)?,
        "free" => free()?,
        "reversibility" => reversibility(opts)?,
        other => return Err(Error::Invalid(format!("unknown suite `{other}`; expected one of {}", SUITES.join(", ")))),
    };
    Ok(SuiteReport { name: name.to_string(), passed, seed: opts.seed, millis: start.elapsed().as_millis(), detail })
}

pub fn run_all(opts: &Options) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, opts)).collect()
}

fn exact(f: &Ca, g: &Ca, budget: u64) -> Result<bool> {
    Ok(equal(f, g, budget, 0)? == EqualityVerdict::ExactEqual)
}

fn bits(s: &str) -> Vec<Symbol> {
    s.bytes().map(|b| (b - b'0') as Symbol).collect()
}

fn bit_string(v: &[Symbol]) -> String {
    v.iter().map(|s| char::from(b'0' + *s as u8)).collect()
}

/// A configuration that is uniformly random on `[lo, hi)` and constant
/// (with a random symbol per side) outside.
fn uniform_config(alphabet: &Alphabet, lo: i64, hi: i64, rng: &mut ChaCha8Rng) -> SupportedConfig {
    let n = alphabet.size() as Symbol;
    let center: Vec<Symbol> = (lo..hi).map(|_| rng.gen_range(0..n)).collect();
    let (l, r) = (rng.gen_range(0..n), rng.gen_range(0..n));
    SupportedConfig::with_offset(alphabet.clone(), vec![l], center, vec![r], lo).expect("symbols in range")
}

// ---------------------------------------------------------------- example41

pub const EXAMPLE_TOP: &str = "0100111001001001001000110010010";
pub const EXAMPLE_BOTTOM: &str = "0101110011010011010101001001010";
pub const EXAMPLE_OUTPUT: &str = "0001110011001011001100101101000";

/// `ctrl{00 → 10 → 01 → 00}{[01]_0}` over `B = C = {0, 1}`.
pub fn example_ctrl() -> Result<Ca> {
    let pi = Permutation::from_images(vec![2, 0, 1, 3])?;
    build_ctrl(2, &pi, &ClopenSet::cylinder(Alphabet::new(2)?, 0, vec![0, 1])?)
}

fn example41() -> Result<(bool, Value)> {
    let f = example_ctrl()?;
    let sym = |x: u32, y: u32| 2 * x + y;
    type Cell = Option<(u32, u32)>;
    // window (x_{-1}, x_0, x_1) with None for "any symbol", and the new centre
    let cases: [([Cell; 3], (u32, u32)); 6] = [
        ([None, Some((0, 0)), Some((1, 0))], (0, 1)),
        ([None, Some((0, 0)), Some((1, 1))], (0, 0)),
        ([None, Some((0, 1)), Some((1, 0))], (0, 0)),
        ([Some((0, 0)), Some((1, 0)), None], (1, 0)),
        ([Some((0, 0)), Some((1, 1)), None], (1, 0)),
        ([Some((0, 1)), Some((1, 0)), None], (1, 1)),
    ];
    let mut rules_ok = f.interval() == (-1, 1);
    for (cells, out) in cases {
        for fill in 0..4 {
            let w: Vec<Symbol> = cells.iter().map(|c| c.map(|(x, y)| sym(x, y)).unwrap_or(fill)).collect();
            rules_ok &= f.local(&w) == sym(out.0, out.1);
        }
    }
    let (top, bottom) = (bits(EXAMPLE_TOP), bits(EXAMPLE_BOTTOM));
    let center: Vec<Symbol> = top.iter().zip(&bottom).map(|(x, y)| 2 * x + y).collect();
    let x = SupportedConfig::new(two_track(2, 2)?, vec![0], center, vec![0])?;
    let n = top.len() as i64;
    let out = f.apply(&x)?.window(0, n);
    let new_top: Vec<Symbol> = out.iter().map(|s| s / 2).collect();
    let new_bottom: Vec<Symbol> = out.iter().map(|s| s % 2).collect();
    let pair_ok = new_top == top && bit_string(&new_bottom) == EXAMPLE_OUTPUT;
    Ok((
        rules_ok && pair_ok,
        json!({
            "local_rule_cases": rules_ok,
            "top": EXAMPLE_TOP,
            "bottom_in": EXAMPLE_BOTTOM,
            "bottom_out": bit_string(&new_bottom),
            "expected": EXAMPLE_OUTPUT,
        }),
    ))
}

// ---------------------------------------------------------------- ctrl-law

fn ctrl_law() -> Result<(bool, Value)> {
    let s3: Vec<Permutation> = (0..6u32)
        .map(|i| {
            let mut rest: Vec<u32> = vec![0, 1, 2];
            let a = rest.remove((i / 2) as usize);
            let b = rest.remove((i % 2) as usize);
            Permutation::from_images(vec![a, b, rest[0]]).expect("permutation of three points")
        })
        .collect();
    let mut controls: Vec<Vec<Symbol>> = vec![vec![]];
    controls.extend((0..3).map(|a| vec![a]));
    controls.extend((0..9).map(|a| vec![a / 3, a % 3]));
    let (mut checked, mut failures) = (0u64, Vec::new());
    for h in &s3 {
        for g in &s3 {
            for w in &controls {
                for a in 0..3 {
                    let v = ctrl_commutator_law_check(3, h, g, w, a, 0)?;
                    checked += 1;
                    if v != EqualityVerdict::ExactEqual {
                        failures.push(json!({"h": h.images(), "g": g.images(), "w": w, "a": a, "verdict": v.name()}));
                    }
                }
            }
        }
    }
    Ok((failures.is_empty(), json!({"checked": checked, "failures": failures})))
}

// ---------------------------------------------------------------- gates

fn gates(opts: &Options) -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut ok, mut lengths) = (0, Vec::new());
    for _ in 0..50 {
        let pi = Permutation::random_even(27, &mut rng);
        let w = decompose_even(3, 3, &pi)?;
        ok += (w.to_perm() == pi) as usize;
        lengths.push(w.len());
    }
    let mut ok_bin = 0;
    for _ in 0..20 {
        let pi = Permutation::random_even(16, &mut rng);
        let w = decompose_even_binary(4, &pi)?;
        ok_bin += (w.to_perm() == pi) as usize;
        lengths.push(w.len());
    }
    Ok((
        ok == 50 && ok_bin == 20,
        json!({"ternary_ok": ok, "binary_ok": ok_bin, "max_gates": lengths.iter().max()}),
    ))
}

// ---------------------------------------------------------------- gate-closure

fn gate_closure() -> Result<(bool, Value)> {
    let group = even_gate_closure(2, 3, 2)?;
    let order = group.len();
    let all_even = group.iter().all(|p| p.is_even());
    Ok((
        all_even && order < 20160 && 20160 % order == 0,
        json!({"order": order, "alt8_order": 20160, "all_even": all_even}),
    ))
}

// ---------------------------------------------------------------- compiler

fn compiler(opts: &Options) -> Result<(bool, Value)> {
    let (b, c) = (2, 3);
    let u = vec![1, 0];
    let f = ClopenSet::cylinder(Alphabet::new(b)?, 0, u.clone())?;
    // 00 → 10 → 20 → 00 on the two-cell data block
    let pi = Permutation::from_cycles(9, &[vec![0, 3, 6]])?;
    let alphabet = two_track(b, c)?;
    let word = compile_ctrl(b, c, &pi, &f)?;
    let compiled = eval_word(&alphabet, &word, &Registry::new())?;
    let direct = build_ctrl(c, &pi, &f)?;
    let r = compiled.radius().max(direct.radius()) as i64;
    let v = equal_sampled_with(&compiled, &direct, 100_000, opts.seed, |rng| {
        uniform_config(&alphabet, -3 * r - 1, 3 * r + 2, rng)
    });
    let mut flips = Vec::new();
    for k in [1i64, -1, 2, -2, 3, -3] {
        for a in 0..b as Symbol {
            let got = eval_word(&alphabet, &aux_flip_word(b, c, &u, 0, k, a)?, &Registry::new())?;
            let want = aux_flip_reference(b, c, k, a)?;
            flips.push(json!({"k": k, "a": a, "exact": exact(&got, &want, opts.budget)?}));
        }
    }
    let flips_ok = flips.iter().all(|f| f["exact"] == true);
    Ok((
        v.is_equal() && flips_ok,
        json!({
            "word_tokens": word.expanded_len().to_string(),
            "radius": r,
            "verdict": v.to_json(alphabet.size()),
            "aux_flips": flips,
        }),
    ))
}

/// `y_i ↦ (1 2)(y_i)` when `y_{i+k} = 0`, or, for odd `|B|`, when
/// `x_{i+k} = a`.
fn aux_flip_reference(b: usize, c: usize, k: i64, a: Symbol) -> Result<Ca> {
    let cs = c as Symbol;
    Ca::from_fn(two_track(b, c)?, k.min(0), k.max(0), move |w| {
        let (me, other) = if k > 0 { (w[0], w[w.len() - 1]) } else { (w[w.len() - 1], w[0]) };
        let (x, y) = (me / cs, me % cs);
        let hit = other % cs == 0 || (b % 2 == 1 && other / cs == a);
        let y = match (hit, y) {
            (true, 1) => 2,
            (true, 2) => 1,
            _ => y,
        };
        x * cs + y
    })
}

// ---------------------------------------------------------------- stairs

fn binary_generators() -> Result<[Ca; 3]> {
    let a = Alphabet::new(2)?;
    Ok([
        Ca::from_fn(a.clone(), 1, 1, |w| w[0])?,
        Ca::from_fn(a.clone(), -1, -1, |w| w[0])?,
        Ca::from_fn(a, 0, 0, |w| 1 - w[0])?,
    ])
}

/// `Some(f)` when `f` and its inverse both have radius at most one.
fn biradius_one(f: Ca) -> Result<Option<Ca>> {
    let f = f.tabulated(DEFAULT_BUDGET)?;
    if f.radius() > 1 {
        return Ok(None);
    }
    Ok(invert(&f, 4).ok().filter(|g| g.radius() <= 1).map(|_| f))
}

fn product(gens: &[Ca], idx: &[usize]) -> Result<Ca> {
    let mut f = Ca::identity(gens[0].alphabet());
    for &i in idx {
        f = compose(&gens[i], &f)?;
    }
    Ok(f)
}

fn stair_law() -> Result<(bool, Value)> {
    let gens = binary_generators()?;
    let (mut words, mut checked, mut bad) = (0, 0, Vec::new());
    for len in 0..=4u32 {
        for code in 0..3usize.pow(len) {
            let idx: Vec<usize> = (0..len).map(|j| code / 3usize.pow(j) % 3).collect();
            words += 1;
            let Some(f) = biradius_one(product(&gens, &idx)?)? else { continue };
            let s = stairs(&f, 1)?;
            checked += 1;
            if s.left.len() * s.right.len() != 64 {
                bad.push(json!({"word": idx, "left": s.left.len(), "right": s.right.len()}));
            }
        }
    }
    Ok((bad.is_empty() && checked > 0, json!({"words": words, "biradius_one": checked, "violations": bad})))
}

// ---------------------------------------------------------------- conveyor

fn random_binary_rca(gens: &[Ca], rng: &mut ChaCha8Rng) -> Result<(Vec<usize>, Ca)> {
    loop {
        let idx: Vec<usize> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(0..gens.len())).collect();
        if let Some(f) = biradius_one(product(gens, &idx)?)? {
            return Ok((idx, f));
        }
    }
}

fn conveyor(opts: &Options) -> Result<(bool, Value)> {
    let gens = binary_generators()?;
    let spec = EmbeddingSpec::standard(2, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pairs = Vec::new();
    let mut all = true;
    for k in 0..20u64 {
        let (wf, f) = random_binary_rca(&gens, &mut rng)?;
        let (wg, g) = random_binary_rca(&gens, &mut rng)?;
        let lhs = conveyor_embed(&compose(&f, &g)?, &spec)?;
        let rhs = compose(&conveyor_embed(&f, &spec)?, &conveyor_embed(&g, &spec)?)?;
        let v = equal_sampled_with(&lhs, &rhs, 10_000, opts.seed.wrapping_add(k), |r| spec.sample_config(2, r));
        all &= v.is_equal();
        pairs.push(json!({"f": wf, "g": wg, "verdict": v.name()}));
    }
    let id = Ca::identity(&Alphabet::new(2)?);
    let id_ok = exact(&conveyor_embed(&id, &spec)?, &Ca::identity(&two_track(2, 2)?), opts.budget)?;
    Ok((all && id_ok, json!({"marker_len": spec.block_len(), "pairs": pairs, "identity_exact": id_ok})))
}

// ---------------------------------------------------------------- stages

fn stages(opts: &Options) -> Result<(bool, Value)> {
    let [left, _, flip] = binary_generators()?;
    let f = compose(&left, &flip)?;
    let spec = EmbeddingSpec::standard(2, 1)?;
    let list = embed_as_controlled_stages(&f, &spec)?;
    let composed = stages_to_ca(&list, 2)?;
    let direct = conveyor_embed(&f, &spec)?;
    let v = equal_sampled_with(&composed, &direct, 10_000, opts.seed, |r| spec.sample_config(2, r));
    let signs: Vec<Value> = list.iter().map(|s| json!({"stage": s.label, "n": s.n, "sign": s.sign(2)})).collect();
    let even = list.iter().all(|s| s.sign(2) == 1);
    Ok((v.is_equal() && even, json!({"stages": signs, "verdict": v.to_json(4)})))
}

// ---------------------------------------------------------------- linear

fn random_affine_word(rng: &mut ChaCha8Rng) -> GroupWord {
    let len = rng.gen_range(0..=10);
    GroupWord::new(
        (0..len)
            .map(|_| match rng.gen_range(0..3) {
                0 => Token::shift(rng.gen_range(1..=2), if rng.gen_bool(0.5) { 1 } else { -1 }),
                _ => Token::perm(Permutation::random(4, rng)),
            })
            .collect(),
    )
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    LaurentPoly::from_exponents((-1..=1).filter(|_| rng.gen_bool(0.4)))
}

fn linear(opts: &Options) -> Result<(bool, Value)> {
    let a = two_by_two();
    let reg = Registry::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut round_trip_failures = Vec::new();
    for _ in 0..200 {
        let w = random_affine_word(&mut rng);
        let e = word_to_affine(&a, &w, &reg)?;
        if !exact(&affine_to_ca(&e)?, &eval_word(&a, &w, &reg)?, opts.budget)? {
            round_trip_failures.push(w.to_string());
        }
    }
    let (mut units, mut disagreements) = (0, Vec::new());
    for k in 0..150 {
        let m = if k % 3 == 0 {
            // products of elementary matrices are always invertible
            let mut m = Mat2::identity();
            for j in 0..3 {
                let p = random_poly(&mut rng);
                let e = if j % 2 == 0 {
                    Mat2::new(LaurentPoly::one(), p, LaurentPoly::zero(), LaurentPoly::one())
                } else {
                    Mat2::new(LaurentPoly::one(), LaurentPoly::zero(), p, LaurentPoly::one())
                };
                m = m.mul(&e);
            }
            m
        } else {
            Mat2::new(random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng))
        };
        let unit = mat_is_invertible(&m);
        let inverted = invert(&affine_map_ca(&AffineElement::linear(m.clone()))?, 8).is_ok();
        units += unit as usize;
        if unit != inverted {
            disagreements.push(m.to_json());
        }
    }
    Ok((
        round_trip_failures.is_empty() && disagreements.is_empty(),
        json!({
            "words": 200,
            "round_trip_failures": round_trip_failures,
            "matrices": 150,
            "unit_determinant": units,
            "disagreements": disagreements,
        }),
    ))
}

// ---------------------------------------------------------------- six

fn six(opts: &Options) -> Result<(bool, Value)> {
    let six: SixInvolutions = six_involutions(2, 4, opts.seed)?;
    let a = &six.alphabet;
    let id = Ca::identity(a);
    let mut squares = Vec::new();
    for f in &six.gens {
        squares.push(exact(&compose(f, f)?, &id, opts.budget)?);
    }
    let sb = swap_perms(six.b, six.c).0;
    let h = diagonal_shift();
    // the word for the swap on B evaluates to the swap itself
    let swap_word_ok = exact(&eval_word(a, &six.swap_b, &six.perm_registry())?, &make_symbol_perm(a, &sb)?, opts.budget)?;
    // the last three generators are the first three conjugated by h, so the
    // renamed word is the h-conjugate of the swap
    let mut conj_ok = true;
    for k in 0..3 {
        let w = GroupWord::single(Token::named(&six_names()[k], 1)).conj(&h);
        conj_ok &= exact(&six.gens[k + 3], &eval_word(a, &w, &six.registry())?, opts.budget)?;
    }
    let mut renamed = Registry::new();
    for (name, p) in six_names()[3..].iter().zip(&six.perms) {
        renamed = renamed.with_perm(name, p.clone());
    }
    conj_ok &= exact(
        &eval_word(a, &SixInvolutions::conjugated(&six.swap_b), &renamed)?,
        &make_symbol_perm(a, &sb)?,
        opts.budget,
    )?;
    let up = GroupWord::single(Token::perm(sb.clone()));
    let sigma_b = eval_word(a, &GroupWord::commutator(&up, &up.conj(&h)), &Registry::new())?;
    let target = eval_word(a, &GroupWord::new(vec![Token::shift(1, 2), Token::shift(3, -2)]), &Registry::new())?;
    let sigma_ok = exact(&sigma_b, &target, opts.budget)?;
    let parity_error = matches!(six_involutions(2, 3, opts.seed), Err(Error::ParityViolation { b: 2, c: 3 }));
    let mut signs_ok = true;
    for m in 1..=4 {
        for n in 1..=4 {
            let (p, q) = swap_perms(m, n);
            signs_ok &= swap_parity(m, n) == (p.sign() == 1 && q.sign() == 1);
        }
    }
    signs_ok &= swap_perms(2, 3).0.sign() == -1;
    let ok = squares.iter().all(|&s| s) && swap_word_ok && conj_ok && sigma_ok && parity_error && signs_ok;
    Ok((
        ok,
        json!({
            "squares_identity": squares,
            "swap_word": swap_word_ok,
            "conjugate_word": conj_ok,
            "sigma_b_exact": sigma_ok,
            "parity_violation_2_3": parity_error,
            "brute_force_signs": signs_ok,
            "generators": six.to_json(),
        }),
    ))
}

// ---------------------------------------------------------------- free

fn free() -> Result<(bool, Value)> {
    let z2 = || AbelianAction::new(vec![2], 2);
    let s = FreeSetting::new(2, 2, z2()?, z2()?)?;
    let subsets: Vec<Vec<(GroupElem, i64)>> =
        (1u32..8).map(|m| (1..=3).filter(|i| m >> (i - 1) & 1 == 1).map(|i| (vec![1], i as i64)).collect()).collect();
    let (mut count, mut fixed) = (0u64, Vec::new());
    for first_track in [1, 2] {
        let mut frontier: Vec<Vec<Vec<(GroupElem, i64)>>> = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for blocks in &frontier {
                for sub in &subsets {
                    let mut b = blocks.clone();
                    b.push(sub.clone());
                    let w = ReducedWord { first_track, blocks: b.clone() };
                    let x = s.witness_config(&w)?;
                    if s.act(&w, &x)? == x {
                        fixed.push(format!("{w:?}"));
                    }
                    count += 1;
                    next.push(b);
                }
            }
            frontier = next;
        }
    }
    Ok((fixed.is_empty() && count == 5600, json!({"words": count, "fixed_witnesses": fixed})))
}

// ---------------------------------------------------------------- reversibility

/// Whether `f` is injective on all configurations of period at most `max_p`.
pub fn periodic_injective(f: &Ca, max_p: usize) -> bool {
    let n = f.alphabet().size();
    let (lo, _) = f.interval();
    let w = f.width();
    let mut window = vec![0; w];
    for p in 1..=max_p {
        let total = n.pow(p as u32);
        let mut seen = vec![false; total];
        let mut x = vec![0 as Symbol; p];
        for idx in 0..total {
            let mut t = idx;
            for s in x.iter_mut().rev() {
                *s = (t % n) as Symbol;
                t /= n;
            }
            let mut image = 0usize;
            for i in 0..p as i64 {
                for (j, cell) in window.iter_mut().enumerate() {
                    *cell = x[(i + lo + j as i64).rem_euclid(p as i64) as usize];
                }
                image = image * n + f.local(&window) as usize;
            }
            if std::mem::replace(&mut seen[image], true) {
                return false;
            }
        }
    }
    true
}

fn random_rule(rng: &mut ChaCha8Rng) -> Result<(&'static str, Ca)> {
    let n = rng.gen_range(2..=3);
    let a = Alphabet::new(n)?;
    let (lo, hi) = [(0, 0), (-1, 0), (0, 1), (-1, 1)][rng.gen_range(0..4)];
    let kind = rng.gen_range(0..3);
    if kind == 0 {
        let table: Vec<Symbol> = (0..n.pow((hi - lo + 1) as u32)).map(|_| rng.gen_range(0..n as Symbol)).collect();
        return Ok(("table", Ca::from_table(a, lo, hi, table)?));
    }
    // a reversible rule of radius at most one: a shift and symbol permutations
    let p = make_symbol_perm(&a, &Permutation::random(n, rng))?;
    let q = make_symbol_perm(&a, &Permutation::random(n, rng))?;
    let e = rng.gen_range(-1..=1i64);
    let s = Ca::from_fn(a.clone(), e, e, |w| w[0])?;
    let f = compose(&q, &compose(&s, &p)?)?.tabulated(DEFAULT_BUDGET)?.widened(-1, 1)?;
    if kind == 1 {
        return Ok(("reversible", f));
    }
    // one changed entry breaks injectivity
    let mut table = f.table().expect("tabulated").to_vec();
    let i = rng.gen_range(0..table.len());
    table[i] = (table[i] + rng.gen_range(1..n as Symbol)) % n as Symbol;
    Ok(("perturbed", Ca::from_table(a, -1, 1, table)?))
}

fn reversibility(opts: &Options) -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut reversible, mut disagreements) = (0, Vec::new());
    for _ in 0..500 {
        let (kind, f) = random_rule(&mut rng)?;
        let max_p = if f.alphabet().size() == 2 { 14 } else { 9 };
        let fast = is_reversible(&f)?;
        let brute = periodic_injective(&f, max_p);
        reversible += fast as usize;
        if fast != brute {
            disagreements.push(json!({"kind": kind, "n": f.alphabet().size(), "table": f.table(), "fast": fast}));
        }
    }
    Ok((
        disagreements.is_empty(),
        json!({"rules": 500, "reversible": reversible, "disagreements": disagreements}),
    ))
}
