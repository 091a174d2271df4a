//! Command-line front end. Every command prints one JSON report on stdout
//! and exits with 0 (success or equal), 1 (unequal or a violated property)
//! or 2 (bad usage or a library error).

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rcakit::ca::{self, RuleFile, DEFAULT_BUDGET, DEFAULT_INVERSE_RADIUS};
use rcakit::compiler::{self, EmbeddingSpec};
use rcakit::control::{self, two_track};
use rcakit::linear::{self, AffineElement};
use rcakit::paut::{eval_word, GroupWord, Registry};
use rcakit::verify::{self, Options, SUITES};
use rcakit::witnesses::{AbelianAction, FreeSetting};
use rcakit::word::parse_symbols;
use rcakit::{Alphabet, Ca, ClopenSet, Error, Permutation, SupportedConfig};

#[derive(Parser)]
#[command(name = "rcakit", version, about = "Exact computation with reversible cellular automata")]
struct Cli {
    /// Seed for every randomized procedure.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on exact enumeration size.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Leave elapsed time out of the report, so that reruns are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cellular automata given as rule files (or `id`).
    #[command(subcommand)]
    Ca(CaCmd),
    /// Words over partial shifts and symbol permutations.
    #[command(subcommand)]
    Paut(PautCmd),
    /// Controlled block permutations.
    #[command(subcommand)]
    Ctrl(CtrlCmd),
    /// Gate decompositions of even permutations.
    #[command(subcommand)]
    Gates(GatesCmd),
    /// Embeddings of automata on `C^Z` into `(B x C)^Z`.
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// The affine representation over the 2x2 alphabet.
    #[command(subcommand)]
    Lin(LinCmd),
    /// Free-product witnesses and generating involutions.
    #[command(subcommand)]
    Wit(WitCmd),
    /// Runs an acceptance suite, or `all` of them.
    Verify { suite: String },
}

#[derive(Args, Clone)]
struct RuleOpts {
    /// Alphabet for `id` rules, e.g. `4` or `2x2`.
    #[arg(long)]
    alphabet: Option<String>,
}

#[derive(Subcommand)]
enum CaCmd {
    /// Applies a rule `steps` times to a configuration `LEFT|CENTER|RIGHT[@OFFSET]`.
    Apply {
        rule: String,
        config: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[command(flatten)]
        opts: RuleOpts,
    },
    /// `f ∘ g` as a rule file.
    Compose {
        f: String,
        g: String,
        #[command(flatten)]
        opts: RuleOpts,
    },
    /// The inverse rule.
    Invert {
        rule: String,
        #[arg(long, default_value_t = DEFAULT_INVERSE_RADIUS)]
        max_radius: usize,
        #[command(flatten)]
        opts: RuleOpts,
    },
    /// Decides injectivity.
    CheckRev {
        rule: String,
        #[command(flatten)]
        opts: RuleOpts,
    },
    /// Decides `f = g`.
    Equal {
        f: String,
        g: String,
        #[command(flatten)]
        opts: RuleOpts,
    },
}

#[derive(Subcommand)]
enum PautCmd {
    /// Evaluates a word such as `s1^-1 * p[1,0,3,2] * s2` to a rule file.
    Eval {
        word: String,
        #[arg(long)]
        alphabet: String,
        /// Named automata, `NAME=RULEFILE`.
        #[arg(long = "name")]
        names: Vec<String>,
    },
}

#[derive(Args)]
struct CtrlOpts {
    /// Control alphabet size.
    #[arg(long)]
    b: usize,
    /// Data alphabet size.
    #[arg(long)]
    c: usize,
    /// Block permutation: images `2,0,1,3` or cycles `(0 3 6)(1 2)`.
    #[arg(long)]
    perm: String,
    /// Control set `OFFSET:WORD[,WORD...]`, e.g. `0:01`.
    #[arg(long)]
    clopen: String,
}

#[derive(Subcommand)]
enum CtrlCmd {
    /// `ctrl{π}{F}` as a rule file.
    Build(CtrlOpts),
    /// `ctrl{π}{F}` as a word over partial shifts and symbol permutations.
    Compile {
        #[command(flatten)]
        o: CtrlOpts,
        /// Also compare the compiled word with the direct construction.
        #[arg(long)]
        check: bool,
    },
    /// Checks `[ctrl{h}{[w]_m}, ctrl{g}{[a]_{m+|w|}}] = ctrl{[h,g]}{[wa]_m}`.
    CheckLaw {
        #[arg(long)]
        b: usize,
        /// Data alphabet size; needed when `--h` is given as cycles
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        h: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "")]
        w: String,
        #[arg(long)]
        a: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i64,
    },
}

#[derive(Subcommand)]
enum GatesCmd {
    /// Writes an even permutation of `{0..k}^n` as a product of gates.
    Decompose {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        perm: String,
        /// Binary width-3 gates (implied by k = 2).
        #[arg(long)]
        binary: bool,
    },
}

#[derive(Subcommand)]
enum EmbedCmd {
    /// The conveyor-belt embedding, optionally applied to a configuration.
    Conveyor {
        rule: String,
        #[arg(long, default_value_t = 2)]
        b: usize,
        /// Marker word on the control track; defaults to `1 0^{24r-1}`.
        #[arg(long)]
        marker: Option<String>,
        #[arg(long)]
        config: Option<String>,
        #[command(flatten)]
        opts: RuleOpts,
    },
    /// Left and right stairs of a biradius-`r` automaton.
    Stairs {
        rule: String,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[command(flatten)]
        opts: RuleOpts,
    },
    /// The controlled stages realizing the conveyor embedding.
    Stages {
        rule: String,
        #[arg(long, default_value_t = 2)]
        b: usize,
        /// Also compute the sign of every stage permutation.
        #[arg(long)]
        signs: bool,
        /// Compare the composed stages with the conveyor embedding on this many samples.
        #[arg(long, default_value_t = 0)]
        samples: u64,
        #[command(flatten)]
        opts: RuleOpts,
    },
}

#[derive(Subcommand)]
enum LinCmd {
    /// The affine image `(c, M)` of a word.
    ToMatrix { word: String },
    /// The automaton of an affine element given as JSON.
    ToCa { element: String },
    /// Checks that a word and its affine image define the same automaton.
    CheckRoundtrip { word: String },
}

#[derive(Subcommand)]
enum WitCmd {
    /// Acts with a reduced word on its witness configuration.
    Free {
        #[arg(long, default_value_t = 2)]
        b: usize,
        #[arg(long, default_value_t = 2)]
        c: usize,
        #[arg(long, default_value = "Z2")]
        g: String,
        #[arg(long, default_value = "Z2")]
        h: String,
        /// `{"first_track": 1, "blocks": [[[1, 1], [1, 3]], ...]}`
        #[arg(long)]
        word: String,
    },
    /// Searches for the six generating involutions.
    Six {
        #[arg(long)]
        b: usize,
        #[arg(long)]
        c: usize,
    },
}

/// Outcome of a command: the report and whether it is a positive verdict.
type Outcome = Result<(bool, Value), Error>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let result = run(&cli);
    let mut report = match &result {
        Ok((_, v)) => v.clone(),
        Err(e) => json!({"error": {"kind": e.kind(), "code": e.code(), "message": e.to_string()}}),
    };
    if let Value::Object(m) = &mut report {
        m.insert("seed".into(), json!(cli.seed));
        if !cli.no_timing {
            m.insert("elapsed_ms".into(), json!(start.elapsed().as_millis() as u64));
        }
    }
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&report).expect("json"));
    match result {
        Ok((true, _)) => ExitCode::SUCCESS,
        Ok((false, _)) => ExitCode::from(1),
        Err(_) => ExitCode::from(2),
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.cmd {
        Cmd::Ca(c) => run_ca(cli, c),
        Cmd::Paut(PautCmd::Eval { word, alphabet, names }) => {
            let a = parse_alphabet(alphabet)?;
            let mut reg = Registry::new();
            for n in names {
                let (name, path) =
                    n.split_once('=').ok_or_else(|| Error::Parse(format!("expected NAME=FILE, got `{n}`")))?;
                reg = reg.with_automaton(name, RuleFile::load(Path::new(path))?);
            }
            let w = GroupWord::parse(word, &reg)?;
            let f = eval_word(&a, &w, &reg)?;
            Ok((true, json!({"word": w.to_string(), "rule": rule_json(&f)?})))
        }
        Cmd::Ctrl(c) => run_ctrl(cli, c),
        Cmd::Gates(GatesCmd::Decompose { k, n, perm, binary }) => {
            let pi = parse_perm(perm, k.pow(*n as u32))?;
            // width-2 gates cannot generate over two symbols, so k = 2 means width 3
            let gw = if *binary || *k == 2 {
                if *k != 2 {
                    return Err(Error::Invalid("binary gates need k = 2".into()));
                }
                rcakit::gates::decompose_even_binary(*n, &pi)?
            } else {
                rcakit::gates::decompose_even(*k, *n, &pi)?
            };
            let exact = gw.to_perm() == pi;
            Ok((exact, json!({"gates": gw.len(), "word": gw.to_json(), "remultiplied_exactly": exact})))
        }
        Cmd::Embed(e) => run_embed(cli, e),
        Cmd::Lin(l) => run_lin(cli, l),
        Cmd::Wit(WitCmd::Free { b, c, g, h, word }) => {
            let s = FreeSetting::new(*b, *c, AbelianAction::parse(g, *c)?, AbelianAction::parse(h, *c)?)?;
            let v: Value = serde_json::from_str(word).map_err(|e| Error::Parse(e.to_string()))?;
            let w = s.word_from_json(&v)?;
            let x = s.witness_config(&w)?;
            let y = s.act(&w, &x)?;
            let moved = x != y;
            Ok((moved, json!({"witness": x.to_string(), "image": y.to_string(), "moved": moved})))
        }
        Cmd::Wit(WitCmd::Six { b, c }) => {
            let six = rcakit::witnesses::six_involutions(*b, *c, cli.seed)?;
            Ok((true, six.to_json()))
        }
        Cmd::Verify { suite } => {
            let opts = Options { seed: cli.seed, budget: cli.budget };
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut reports = Vec::new();
            for name in names {
                let mut r = verify::run_suite(name, &opts)?;
                if cli.no_timing {
                    r.millis = 0;
                }
                reports.push(r);
            }
            let passed = reports.iter().all(|r| r.passed);
            let body = if reports.len() == 1 {
                serde_json::to_value(&reports[0])
            } else {
                serde_json::to_value(&reports).map(|v| json!({"suites": v}))
            };
            Ok((passed, body.map_err(|e| Error::Invalid(e.to_string()))?))
        }
    }
}

fn run_ca(cli: &Cli, cmd: &CaCmd) -> Outcome {
    match cmd {
        CaCmd::Apply { rule, config, steps, opts } => {
            let f = load_rule(rule, opts)?;
            let mut x = SupportedConfig::parse(f.alphabet(), config)?;
            for _ in 0..*steps {
                x = f.apply(&x)?;
            }
            Ok((true, json!({"result": x.normalized().to_string()})))
        }
        CaCmd::Compose { f, g, opts } => {
            let h = ca::compose(&load_rule(f, opts)?, &load_rule(g, opts)?)?;
            Ok((true, json!({"rule": rule_json(&h)?})))
        }
        CaCmd::Invert { rule, max_radius, opts } => {
            let g = ca::invert(&load_rule(rule, opts)?, *max_radius)?;
            Ok((true, json!({"rule": rule_json(&g)?})))
        }
        CaCmd::CheckRev { rule, opts } => {
            let rev = ca::is_reversible(&load_rule(rule, opts)?)?;
            Ok((rev, json!({"reversible": rev})))
        }
        CaCmd::Equal { f, g, opts } => {
            let (f, g) = (load_rule(f, opts)?, load_rule(g, opts)?);
            let v = ca::equal(&f, &g, cli.budget, cli.seed)?;
            Ok((v.is_equal(), json!({"verdict": v.to_json(f.alphabet().size())})))
        }
    }
}

fn run_ctrl(cli: &Cli, cmd: &CtrlCmd) -> Outcome {
    match cmd {
        CtrlCmd::Build(o) => {
            let (pi, f) = ctrl_inputs(o)?;
            Ok((true, json!({"rule": rule_json(&control::build_ctrl(o.c, &pi, &f)?)?})))
        }
        CtrlCmd::Compile { o, check } => {
            let (pi, f) = ctrl_inputs(o)?;
            let w = compiler::compile_ctrl(o.b, o.c, &pi, &f)?;
            let mut report = json!({"word": w.to_string(), "expanded_length": w.expanded_len().to_string()});
            let mut ok = true;
            if *check {
                let a = two_track(o.b, o.c)?;
                let got = eval_word(&a, &w, &Registry::new())?;
                let v = ca::equal(&got, &control::build_ctrl(o.c, &pi, &f)?, cli.budget, cli.seed)?;
                ok = v.is_equal();
                report["verdict"] = v.to_json(a.size());
            }
            Ok((ok, report))
        }
        CtrlCmd::CheckLaw { b, c, h, g, w, a, m } => {
            let h = parse_perm(h, c.unwrap_or(0))?;
            let g = parse_perm(g, h.len())?;
            let w = parse_symbols(*b, w)?;
            let v = control::ctrl_commutator_law_check(*b, &h, &g, &w, *a, *m)?;
            Ok((v == ca::EqualityVerdict::ExactEqual, json!({"verdict": v.name()})))
        }
    }
}

fn run_embed(cli: &Cli, cmd: &EmbedCmd) -> Outcome {
    match cmd {
        EmbedCmd::Conveyor { rule, b, marker, config, opts } => {
            let f = load_rule(rule, opts)?;
            let spec = embedding_spec(&f, *b, marker.as_deref())?;
            let g = compiler::conveyor_embed(&f, &spec)?;
            let (lo, hi) = g.interval();
            let mut report = json!({"block_len": spec.block_len(), "interval": [lo, hi]});
            if let Some(text) = config {
                let x = SupportedConfig::parse(g.alphabet(), text)?;
                report["result"] = json!(g.apply(&x)?.normalized().to_string());
            }
            Ok((true, report))
        }
        EmbedCmd::Stairs { rule, r, opts } => {
            let s = compiler::stairs(&load_rule(rule, opts)?, *r)?;
            let ok = s.left.len() * s.right.len() == s.c.pow(6 * s.r as u32);
            Ok((ok, json!({"left": s.left.len(), "right": s.right.len(), "law_holds": ok, "stairs": s.to_json()})))
        }
        EmbedCmd::Stages { rule, b, signs, samples, opts } => {
            let f = load_rule(rule, opts)?;
            let c = f.alphabet().size();
            let spec = embedding_spec(&f, *b, None)?;
            let stages = compiler::embed_as_controlled_stages(&f, &spec)?;
            let mut ok = true;
            let list: Vec<Value> = stages
                .iter()
                .map(|s| {
                    let mut v = json!({"label": s.label, "block_len": s.n, "control_words": s.clopen.words().len()});
                    if *signs {
                        let sign = s.sign(c);
                        ok &= sign == 1;
                        v["sign"] = json!(sign);
                    }
                    v
                })
                .collect();
            let mut report = json!({"stages": list});
            if *samples > 0 {
                let composed = compiler::stages_to_ca(&stages, c)?;
                let direct = compiler::conveyor_embed(&f, &spec)?;
                let v = ca::equal_sampled_with(&composed, &direct, *samples, cli.seed, |r| spec.sample_config(c, r));
                ok &= v.is_equal();
                report["verdict"] = v.to_json(composed.alphabet().size());
            }
            Ok((ok, report))
        }
    }
}

fn run_lin(cli: &Cli, cmd: &LinCmd) -> Outcome {
    let a = linear::two_by_two();
    let reg = Registry::new();
    match cmd {
        LinCmd::ToMatrix { word } => {
            let e = linear::word_to_affine(&a, &GroupWord::parse(word, &reg)?, &reg)?;
            Ok((true, json!({"element": e.to_json(), "invertible": linear::mat_is_invertible(&e.m)})))
        }
        LinCmd::ToCa { element } => {
            let v: Value = serde_json::from_str(element).map_err(|e| Error::Parse(e.to_string()))?;
            let f = linear::affine_to_ca(&AffineElement::from_json(&v)?)?;
            Ok((true, json!({"rule": rule_json(&f)?})))
        }
        LinCmd::CheckRoundtrip { word } => {
            let w = GroupWord::parse(word, &reg)?;
            let e = linear::word_to_affine(&a, &w, &reg)?;
            let v = ca::equal(&linear::affine_to_ca(&e)?, &eval_word(&a, &w, &reg)?, cli.budget, cli.seed)?;
            Ok((v.is_equal(), json!({"element": e.to_json(), "verdict": v.to_json(4)})))
        }
    }
}

fn parse_alphabet(text: &str) -> Result<Alphabet, Error> {
    let factors = text
        .split('x')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad alphabet `{text}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if factors.len() == 1 {
        Alphabet::new(factors[0])
    } else {
        Alphabet::product(&factors)
    }
}

fn load_rule(spec: &str, opts: &RuleOpts) -> Result<Ca, Error> {
    if spec == "id" {
        let a = opts.alphabet.as_deref().unwrap_or("2");
        return Ok(Ca::identity(&parse_alphabet(a)?));
    }
    RuleFile::load(Path::new(spec))
}

fn rule_json(f: &Ca) -> Result<Value, Error> {
    serde_json::to_value(RuleFile::from_ca(f)?).map_err(|e| Error::Invalid(e.to_string()))
}

/// Images `2,0,1,3` or disjoint cycles `(0 3 6)(1 2)` on `degree` points.
fn parse_perm(text: &str, degree: usize) -> Result<Permutation, Error> {
    let t = text.trim();
    let bad = || Error::Parse(format!("bad permutation `{text}`"));
    if t.starts_with('(') {
        let cycles = t
            .split(')')
            .map(str::trim)
            .filter(|c| !c.is_empty())
            .map(|c| {
                c.strip_prefix('(')
                    .ok_or_else(bad)?
                    .split([' ', ','])
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if degree == 0 {
            return Err(Error::Parse("cycle notation needs a known degree; give images instead".into()));
        }
        return Permutation::from_cycles(degree, &cycles);
    }
    let images = t.split(',').map(|s| s.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
    let p = Permutation::from_images(images)?;
    if degree != 0 && p.len() != degree {
        return Err(Error::SizeMismatch { expected: degree, got: p.len() });
    }
    Ok(p)
}

fn ctrl_inputs(o: &CtrlOpts) -> Result<(Permutation, ClopenSet), Error> {
    let (offset, words) =
        o.clopen.split_once(':').ok_or_else(|| Error::Parse("control set must look like OFFSET:WORD[,WORD]".into()))?;
    let offset = offset.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad offset `{offset}`")))?;
    let words = words.split(',').map(|w| parse_symbols(o.b, w.trim())).collect::<Result<Vec<_>, _>>()?;
    let f = ClopenSet::new(Alphabet::new(o.b)?, offset, words)?;
    let pi = parse_perm(&o.perm, o.c.pow(f.width() as u32))?;
    Ok((pi, f))
}

fn embedding_spec(f: &Ca, b: usize, marker: Option<&str>) -> Result<EmbeddingSpec, Error> {
    match marker {
        Some(m) => EmbeddingSpec::new(b, parse_symbols(b, m)?),
        None => {
            let inv = ca::invert(f, DEFAULT_INVERSE_RADIUS)?;
            EmbeddingSpec::standard(b, f.radius().max(inv.radius()).max(1))
        }
    }
}
