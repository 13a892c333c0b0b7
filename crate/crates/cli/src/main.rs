use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use wildred::algebras::{adjoin_identity, decode_pair, encode_pair, radical_and_local, wild_instance, AlgebraStructure};
use wildred::bruteforce::{decide_congruence_exhaustive, decide_pair_class_exhaustive, OracleOptions, ScanMode};
use wildred::gadgets::{
    build_p35, build_t, classify_symmetry, extract_similarity, family_gadget, transport_witness, ExtractMethod,
    ExtractOptions, Family, Multiplicities,
};
use wildred::harness::{
    collect_claims, generate, pipeline, verify_claim, verify_theorem, witness_claim, GenKind, RunConfig, TheoremCheck,
};
use wildred::homspace::{decide_similarity, krull_schmidt, Decision};
use wildred::json::{document, document_field, JsonCodec};
use wildred::{Field, MatTuple, SimilarityWitness, Witness};

/// Exact reductions between matrix problems over finite fields.
///
/// Input paths accept a JSON pointer suffix, e.g. `instance.json#/source`.
#[derive(Parser, Debug)]
#[command(name = "wildred", version)]
struct Cli {
    /// `P` for F_P, `P,2` for its quadratic extension.
    #[arg(long, global = true, default_value = "10007")]
    field: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,
    #[arg(long, global = true, default_value_t = wildred::bruteforce::DEFAULT_BUDGET)]
    budget: u64,
    /// 0 uses every core; 1 runs serially.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Padding multiplicities `identity,zero,ones`.
    #[arg(long, global = true, default_value = "20,10,1")]
    mult: String,
    /// Output file; stdout when absent.
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Hermitian,
    Symmetric,
    Skew,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Auto,
    Decompose,
    Compress,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleKind {
    Congruence,
    Pairclass,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Seeded instances: pair, similar-pair-instance, algebra.
    Gen {
        kind: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        from_pair: Option<String>,
    },
    /// The gadget of a pair, or a family gadget.
    Gadget {
        pair: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        eps: String,
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
    },
    /// Carries a similarity witness to a *congruence of gadgets.
    Transport {
        pair: String,
        witness: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        eps: String,
    },
    /// Recovers a similarity from a *congruence of gadgets.
    Extract {
        source: String,
        target: String,
        witness: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        eps: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// The enlarged pair used for the algebra construction.
    P35 { pair: String },
    /// Randomized simultaneous similarity decision.
    DecideSim { source: String, target: String },
    /// Krull–Schmidt decomposition of a tuple.
    Decompose { tuple: String },
    /// Matrix pair of a local algebra with a two-dimensional square radical.
    EncodeAlg { algebra: String },
    /// Local algebra of a matrix pair.
    DecodeAlg { pair: String },
    /// Adjoins an identity element.
    Adjoin { algebra: String },
    /// Radical basis and the locality verdict.
    Radical { algebra: String },
    /// Local algebra of a pair, with its radical facts.
    WildInstance {
        pair: String,
        /// Include the structure constants.
        #[arg(long)]
        full: bool,
    },
    /// Exhaustive searches over GL(n, F_p).
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        source: String,
        target: String,
        /// Scan every group element instead of stopping at the first hit.
        #[arg(long)]
        full_scan: bool,
        #[arg(long)]
        no_fast_reject: bool,
    },
    /// thm21-forward, thm21-backward-desk, thm3-forward or ranksep.
    VerifyTheorem { which: String },
    /// Decision, gadget transport, extraction and algebra isomorphism.
    Pipeline {
        source: String,
        target: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        eps: String,
    },
    /// Replays every claim in a report or instance file.
    Verify { file: String },
}

fn parse_field(s: &str) -> anyhow::Result<Field> {
    let (p, deg) = match s.split_once(',') {
        Some((p, d)) => (p.trim(), d.trim().parse::<u32>().context("field degree")?),
        None => (s.trim(), 1),
    };
    Ok(Field::new(p.parse().context("field characteristic")?, deg)?)
}

/// Reads `path[#pointer]` and the field its document names.
fn read_doc(spec: &str) -> anyhow::Result<(Field, Value)> {
    let (path, pointer) = match spec.split_once('#') {
        Some((p, ptr)) => (p, Some(ptr)),
        None => (spec, None),
    };
    let text = fs::read_to_string(Path::new(path)).with_context(|| format!("reading {path}"))?;
    let doc: Value = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
    let field = document_field(&doc).with_context(|| format!("{path} is not a document"))?;
    let value = match pointer {
        Some(ptr) => doc.pointer(ptr).cloned().ok_or_else(|| anyhow!("{path} has nothing at {ptr}"))?,
        None => doc,
    };
    Ok((field, value))
}

fn read<T: JsonCodec>(spec: &str) -> anyhow::Result<(Field, T)> {
    let (f, v) = read_doc(spec)?;
    let t = T::from_json(f, &v).with_context(|| format!("decoding {spec}"))?;
    Ok((f, t))
}

/// Witness files may be bare witness documents or claims holding one.
fn read_witness(spec: &str) -> anyhow::Result<(Field, Witness)> {
    let (f, v) = read_doc(spec)?;
    let w = v.get("witness").unwrap_or(&v);
    Ok((f, Witness::from_json(f, w).with_context(|| format!("decoding witness in {spec}"))?))
}

fn read_pair(spec: &str) -> anyhow::Result<(Field, MatTuple)> {
    let (f, t): (Field, MatTuple) = read(spec)?;
    if t.len() != 2 || !t.is_square() {
        bail!("{spec} must hold a pair of square matrices");
    }
    Ok((f, t))
}

fn same_field(a: Field, b: Field) -> anyhow::Result<Field> {
    if a != b {
        bail!("inputs live over different fields");
    }
    Ok(a)
}

fn run(cli: Cli) -> anyhow::Result<Value> {
    let cfg = RunConfig {
        field: parse_field(&cli.field)?,
        seed: cli.seed,
        trials: cli.trials,
        budget: cli.budget,
        threads: cli.threads,
        mult: cli.mult.parse::<Multiplicities>()?,
    };
    if cfg.budget == 0 {
        bail!("budget must be positive");
    }
    let oracle_opts = |full: bool, no_fast: bool| OracleOptions {
        budget: cfg.budget,
        mode: if full { ScanMode::Full } else { ScanMode::Pruned },
        fast_reject: !no_fast,
        threads: cfg.threads,
    };
    Ok(match cli.cmd {
        Cmd::Gen { kind, n, from_pair } => {
            let pair = from_pair.as_deref().map(read_pair).transpose()?;
            let cfg = match &pair {
                Some((f, _)) => RunConfig { field: *f, ..cfg },
                None => cfg,
            };
            generate(kind.parse::<GenKind>()?, n, &cfg, pair.as_ref().map(|(_, p)| p))?
        }
        Cmd::Gadget { pair, eps, family } => {
            let (f, p) = read_pair(&pair)?;
            let g = match family {
                Some(fam) => {
                    let fam = match fam {
                        FamilyArg::Hermitian => Family::Hermitian,
                        FamilyArg::Symmetric => Family::Symmetric,
                        FamilyArg::Skew => Family::Skew,
                    };
                    family_gadget(fam, p.get(0), p.get(1))?
                }
                None => build_t(f.parse(&eps)?, p.get(0), p.get(1))?,
            };
            document(f, json!({"eps": f.format(g.eps), "symmetry": classify_symmetry(&g), "mats": g.pair.to_json()["mats"]}))
        }
        Cmd::Transport { pair, witness, eps } => {
            let (f, p) = read_pair(&pair)?;
            let (g, w) = read_witness(&witness)?;
            let f = same_field(f, g)?;
            let Witness::Similarity(s) = w else { bail!("transport needs a similarity witness") };
            let eps = f.parse(&eps)?;
            let r = transport_witness(&s, eps, p.get(0), p.get(1))?;
            let target = wildred::tuples::apply_similarity(&s, &p)?;
            let g1 = build_t(eps, p.get(0), p.get(1))?;
            let g2 = build_t(eps, target.get(0), target.get(1))?;
            document(f, witness_claim(&Witness::Congruence(r), &g1.pair, &g2.pair))
        }
        Cmd::Extract { source, target, witness, eps, method } => {
            let (f, src) = read_pair(&source)?;
            let (g, tgt) = read_pair(&target)?;
            let (h, w) = read_witness(&witness)?;
            let f = same_field(same_field(f, g)?, h)?;
            let Witness::Congruence(r): Witness = w else { bail!("extract needs a congruence witness") };
            let method = match method {
                MethodArg::Auto => ExtractMethod::Auto,
                MethodArg::Decompose => ExtractMethod::Decompose,
                MethodArg::Compress => ExtractMethod::Compress,
            };
            let opts = ExtractOptions { method, trials: cfg.trials, seed: cfg.seed };
            let ex = extract_similarity(
                &r,
                f.parse(&eps)?,
                (src.get(0), src.get(1)),
                (tgt.get(0), tgt.get(1)),
                &opts,
            )?;
            let mut out = witness_claim(&Witness::Similarity(ex.witness), &src, &tgt);
            out["method"] = json!(ex.method);
            out["caveat"] = json!(ex.caveat);
            document(f, out)
        }
        Cmd::P35 { pair } => {
            let (f, p) = read_pair(&pair)?;
            let big = build_p35(p.get(0), p.get(1), cfg.mult)?;
            let mut out = big.pair.to_json();
            out["mult"] = json!(big.mult);
            document(f, out)
        }
        Cmd::DecideSim { source, target } => {
            let (f, src) = read::<MatTuple>(&source)?;
            let (g, tgt) = read::<MatTuple>(&target)?;
            let f = same_field(f, g)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let d = decide_similarity(&src, &tgt, cfg.trials, &mut rng)?;
            document(f, decision_json(d, &src, &tgt))
        }
        Cmd::Decompose { tuple } => {
            let (f, t) = read::<MatTuple>(&tuple)?;
            let dec = krull_schmidt(&t)?;
            let sum = dec.direct_sum(&t)?;
            document(
                f,
                json!({
                    "extents": dec.extents(),
                    "summands": dec.summands.iter().map(JsonCodec::to_json).collect::<Vec<_>>(),
                    "certificates": dec.certificates,
                    "claim": witness_claim(&Witness::Equivalence(dec.witness.clone()), &t, &sum),
                }),
            )
        }
        Cmd::EncodeAlg { algebra } => {
            let (f, alg) = read::<AlgebraStructure>(&algebra)?;
            let enc = encode_pair(&alg)?;
            let mut out = MatTuple::pair(enc.a, enc.b)?.to_json();
            out["basis"] = enc.basis.to_json();
            document(f, out)
        }
        Cmd::DecodeAlg { pair } => {
            let (f, p) = read_pair(&pair)?;
            document(f, decode_pair(p.get(0), p.get(1))?.to_json())
        }
        Cmd::Adjoin { algebra } => {
            let (f, alg) = read::<AlgebraStructure>(&algebra)?;
            document(f, adjoin_identity(&alg)?.to_json())
        }
        Cmd::Radical { algebra } => {
            let (f, alg) = read::<AlgebraStructure>(&algebra)?;
            let r = radical_and_local(&alg)?;
            let basis: Vec<Vec<String>> =
                r.radical.basis().iter().map(|v| v.iter().map(|&e| f.format(e)).collect()).collect();
            document(f, json!({"radical_dim": r.radical.dim(), "radical": basis, "is_local": r.is_local}))
        }
        Cmd::WildInstance { pair, full } => {
            let (f, p) = read_pair(&pair)?;
            let w = wild_instance(p.get(0), p.get(1), cfg.mult)?;
            let mut out = json!({
                "dim": w.algebra.dim(),
                "mult": w.pair.mult,
                "radical_dim": w.radical_dim,
                "radical_square_dim": w.radical_square_dim,
                "radical_cube_dim": w.radical_cube_dim,
                "is_local": w.is_local,
            });
            if full {
                out["algebra"] = w.algebra.to_json();
            }
            document(f, out)
        }
        Cmd::Oracle { kind, source, target, full_scan, no_fast_reject } => {
            let (f, src) = read::<MatTuple>(&source)?;
            let (g, tgt) = read::<MatTuple>(&target)?;
            let f = same_field(f, g)?;
            let opts = oracle_opts(full_scan, no_fast_reject);
            let (mut out, w) = match kind {
                OracleKind::Congruence => {
                    let r = decide_congruence_exhaustive(&src, &tgt, &opts)?;
                    (serde_json::to_value(&r)?, r.found.map(Witness::Congruence))
                }
                OracleKind::Pairclass => {
                    let r = decide_pair_class_exhaustive(&src, &tgt, &opts)?;
                    (serde_json::to_value(&r)?, r.found.map(Witness::PairClass))
                }
            };
            out["found"] = json!(w.is_some());
            if let Some(w) = w {
                out["claim"] = witness_claim(&w, &src, &tgt);
            }
            document(f, out)
        }
        Cmd::VerifyTheorem { which } => verify_theorem(which.parse::<TheoremCheck>()?, &cfg)?.to_json(),
        Cmd::Pipeline { source, target, eps } => {
            let (f, src) = read::<MatTuple>(&source)?;
            let (g, tgt) = read::<MatTuple>(&target)?;
            let f = same_field(f, g)?;
            pipeline(&RunConfig { field: f, ..cfg }, &src, &tgt, f.parse(&eps)?)?
        }
        Cmd::Verify { file } => {
            let (f, doc) = read_doc(&file)?;
            let claims = collect_claims(&doc);
            let results: Vec<Value> = claims
                .iter()
                .map(|c| match verify_claim(f, c) {
                    Ok(ok) => json!({"kind": c["claim"], "verified": ok}),
                    Err(e) => json!({"kind": c["claim"], "verified": false, "error": e.to_string()}),
                })
                .collect();
            let all = results.iter().all(|r| r["verified"] == true);
            document(f, json!({"claims": claims.len(), "all_verified": all, "results": results}))
        }
    })
}

fn decision_json(d: Decision<SimilarityWitness>, src: &MatTuple, tgt: &MatTuple) -> Value {
    match d {
        Decision::Related(s) => {
            json!({"decision": "similar", "claim": witness_claim(&Witness::Similarity(s), src, tgt)})
        }
        Decision::Unrelated(no) => json!({"decision": "not-similar", "evidence": no}),
        Decision::Inconclusive(cert) => json!({"decision": "inconclusive", "certificate": cert}),
    }
}

fn emit(cli: Cli) -> anyhow::Result<()> {
    let out = cli.out.clone();
    let value = run(cli)?;
    let text = serde_json::to_string_pretty(&value)? + "\n";
    match out {
        Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match emit(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
