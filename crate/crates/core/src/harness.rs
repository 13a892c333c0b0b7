//! Seeded drivers: theorem checks, the end-to-end pipeline, instance
//! generation and replay of the claims embedded in reports.
//!
//! All randomness comes from one ChaCha8 stream seeded by `RunConfig::seed`,
//! and reports hold no timings, so equal inputs give byte-identical output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebras::{algebra_iso_from_pair_witness, decode_pair, lift_to_unital, verify_isomorphism, wild_instance};
use crate::bruteforce::{decide_congruence_exhaustive, OracleOptions, ScanMode, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::gadgets::{
    build_t, extract_similarity, transport_witness, ExtractMethod, ExtractOptions, Multiplicities, CHAR3_CAVEAT,
};
use crate::homspace::{decide_similarity, Decision};
use crate::json::{document, JsonCodec};
use crate::linalg::Mat;
use crate::tuples::{
    apply_similarity, apply_star_congruence, verify_witness, CongruenceWitness, MatTuple, PairClassWitness,
    SimilarityWitness, SubstitutionMatrix, Witness,
};

pub const RNG_LABEL: &str = "chacha8/v1";

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub field: Field,
    pub seed: u64,
    pub trials: usize,
    pub budget: u64,
    pub threads: usize,
    pub mult: Multiplicities,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: Field::prime(10007).expect("prime"),
            seed: 0,
            trials: 20,
            budget: DEFAULT_BUDGET,
            threads: 0,
            mult: Multiplicities::default(),
        }
    }
}

impl RunConfig {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": {"p": self.field.p(), "deg": self.field.deg()},
            "seed": self.seed,
            "rng": RNG_LABEL,
            "trials": self.trials,
            "budget": self.budget,
            "threads": self.threads,
            "mult": [self.mult.identity, self.mult.zero, self.mult.ones],
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremCheck {
    SimilarityForward,
    SimilarityBackwardDesk,
    AlgebraForward,
    RankSeparation,
}

impl TheoremCheck {
    pub fn name(self) -> &'static str {
        match self {
            TheoremCheck::SimilarityForward => "thm21-forward",
            TheoremCheck::SimilarityBackwardDesk => "thm21-backward-desk",
            TheoremCheck::AlgebraForward => "thm3-forward",
            TheoremCheck::RankSeparation => "ranksep",
        }
    }
}

impl std::str::FromStr for TheoremCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<TheoremCheck> {
        match s {
            "thm21-forward" => Ok(TheoremCheck::SimilarityForward),
            "thm21-backward-desk" => Ok(TheoremCheck::SimilarityBackwardDesk),
            "thm3-forward" => Ok(TheoremCheck::AlgebraForward),
            "ranksep" => Ok(TheoremCheck::RankSeparation),
            other => Err(Error::Parse(format!("unknown check {other:?}"))),
        }
    }
}

/// Pass/fail summary with per-case details and replayable counterexamples.
#[derive(Clone, Debug)]
pub struct Report {
    pub check: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub details: Vec<Value>,
    pub counterexamples: Vec<Value>,
    pub notes: Vec<String>,
    pub config: RunConfig,
}

impl Report {
    fn new(check: &str, config: &RunConfig) -> Report {
        Report {
            check: check.into(),
            passed: true,
            cases: 0,
            failures: 0,
            details: Vec::new(),
            counterexamples: Vec::new(),
            notes: Vec::new(),
            config: config.clone(),
        }
    }

    fn record(&mut self, ok: bool, detail: Value, counterexample: impl FnOnce() -> Value) {
        self.cases += 1;
        self.details.push(detail);
        if !ok {
            self.failures += 1;
            self.passed = false;
            self.counterexamples.push(counterexample());
        }
    }

    pub fn to_json(&self) -> Value {
        document(
            self.config.field,
            json!({
                "check": self.check,
                "config": self.config.to_json(),
                "passed": self.passed,
                "cases": self.cases,
                "failures": self.failures,
                "details": self.details,
                "counterexamples": self.counterexamples,
                "notes": self.notes,
            }),
        )
    }
}

/// A replayable claim that `witness` carries `source` onto `target`.
pub fn witness_claim(w: &Witness, source: &MatTuple, target: &MatTuple) -> Value {
    json!({"claim": "witness", "witness": w.to_json(), "source": source.to_json(), "target": target.to_json()})
}

fn pair(a: &Mat, b: &Mat) -> Result<MatTuple> {
    MatTuple::pair(a.clone(), b.clone())
}

pub fn verify_theorem(check: TheoremCheck, cfg: &RunConfig) -> Result<Report> {
    match check {
        TheoremCheck::SimilarityForward => similarity_forward(cfg),
        TheoremCheck::SimilarityBackwardDesk => similarity_backward_desk(cfg),
        TheoremCheck::AlgebraForward => algebra_forward(cfg, 1),
        TheoremCheck::RankSeparation => rank_separation(cfg),
    }
}

fn epsilons(f: Field) -> Vec<Elem> {
    if f.has_nontrivial_involution() {
        vec![Elem::ONE]
    } else {
        vec![Elem::ZERO, Elem::ONE, f.neg(Elem::ONE)]
    }
}

fn similarity_forward(cfg: &RunConfig) -> Result<Report> {
    let f = cfg.field;
    let mut rng = cfg.rng();
    let mut report = Report::new(TheoremCheck::SimilarityForward.name(), cfg);
    let eps_list = epsilons(f);
    for case in 0..cfg.trials {
        let n = 1 + case % 4;
        let eps = eps_list[case % eps_list.len()];
        let a = Mat::random(f, n, n, &mut rng);
        let b = Mat::random(f, n, n, &mut rng);
        let s = SimilarityWitness::new(Mat::random_invertible(f, n, &mut rng))?;
        let outcome = transport_witness(&s, eps, &a, &b).and_then(|r| {
            let moved = apply_similarity(&s, &pair(&a, &b)?)?;
            let g1 = build_t(eps, &a, &b)?;
            let g2 = build_t(eps, moved.get(0), moved.get(1))?;
            Ok(verify_witness(&Witness::Congruence(r), &g1.pair, &g2.pair))
        });
        let ok = matches!(outcome, Ok(true));
        report.record(ok, json!({"case": case, "n": n, "eps": f.format(eps), "ok": ok}), || {
            json!({
                "case": case,
                "eps": f.format(eps),
                "a": a.to_json(),
                "b": b.to_json(),
                "s": s.s.to_json(),
                "error": outcome.err().map(|e| e.to_string()),
            })
        });
    }
    Ok(report)
}

fn scalar(f: Field, v: i64) -> Mat {
    Mat::scalar_matrix(f, 1, f.from_i64(v))
}

fn similarity_backward_desk(cfg: &RunConfig) -> Result<Report> {
    let f = cfg.field;
    if f.deg() != 1 {
        return Err(Error::NeedsPrimeField);
    }
    let mut rng = cfg.rng();
    let mut report = Report::new(TheoremCheck::SimilarityBackwardDesk.name(), cfg);
    let opts = OracleOptions { budget: cfg.budget, mode: ScanMode::Full, fast_reject: false, threads: cfg.threads };
    let caveat = (f.p() == 3).then(|| CHAR3_CAVEAT.to_string());
    let zero = f.zero();
    let t11 = build_t(zero, &scalar(f, 1), &scalar(f, 1))?.pair;
    let t12 = build_t(zero, &scalar(f, 1), &scalar(f, 2))?.pair;
    let t21 = build_t(zero, &scalar(f, 2), &scalar(f, 1))?.pair;
    let shuffle = CongruenceWitness::new(Mat::random_invertible(f, 4, &mut rng))?;
    let t11_moved = apply_star_congruence(&shuffle, &t11)?;

    // (name, source, target, expected hit; None when the outcome is only reported)
    let cases = [
        ("self-congruate", &t11, &t11_moved, Some(true)),
        ("distinct-scalars", &t11, &t12, Some(false)),
        ("swapped-scalars", &t12, &t21, None),
    ];
    for (name, t, u, expected) in cases {
        let r = decide_congruence_exhaustive(t, u, &opts)?;
        let found = r.found.is_some();
        let invariant_agrees = r.fast_reject.is_none() || !found;
        let ok = invariant_agrees && expected.is_none_or(|e| e == found);
        let mut detail = json!({
            "case": name,
            "expected": expected.map_or("reported", |e| if e { "found" } else { "absent" }),
            "found": found,
            "states_examined": r.states_examined,
            "search_space_size": r.search_space_size,
            "fast_reject": r.fast_reject,
            "invariant_agrees": invariant_agrees,
            "caveat": if expected.is_none() { caveat.clone() } else { None },
        });
        if let Some(w) = &r.found {
            detail["claim"] = witness_claim(&Witness::Congruence(w.clone()), t, u);
        }
        report.record(ok, detail, || json!({"case": name, "source": t.to_json(), "target": u.to_json()}));
    }

    // a witness found by the scan, fed back through extraction
    let r = decide_congruence_exhaustive(&t12, &t12, &opts)?;
    let w = r.found.ok_or_else(|| Error::WitnessInvalid("scan missed the identity".into()))?;
    let opts_extract = ExtractOptions { method: ExtractMethod::Auto, trials: cfg.trials, seed: cfg.seed };
    let one = scalar(f, 1);
    let two = scalar(f, 2);
    let extraction = extract_similarity(&w, zero, (&one, &two), (&one, &two), &opts_extract);
    let detail = json!({
        "case": "extract-from-scan",
        "expected": if caveat.is_some() { "reported" } else { "found" },
        "found": extraction.is_ok(),
        "error": extraction.as_ref().err().map(|e| e.to_string()),
        "caveat": caveat,
    });
    let ok = caveat.is_some() || extraction.is_ok();
    report.record(ok, detail, || json!({"case": "extract-from-scan", "witness": w.s.to_json()}));
    if let Some(c) = caveat {
        report.notes.push(c);
    }
    Ok(report)
}

/// Congruence carrying the enlarged pair of `(A, B)` onto that of
/// `S^-1 (A, B) S`: identity on the padding, the transported witness on the
/// gadget block.
pub fn enlarged_pair_witness(s: &SimilarityWitness, a: &Mat, b: &Mat, mult: Multiplicities) -> Result<PairClassWitness> {
    let f = a.field();
    let n = a.rows();
    let pad = Mat::identity(f, (mult.identity + mult.zero + mult.ones) * n);
    let r = transport_witness(s, f.zero(), a, b)?;
    Ok(PairClassWitness {
        congruence: CongruenceWitness::new(pad.direct_sum(&r.s)?)?,
        substitution: SubstitutionMatrix::identity(f),
    })
}

/// Builds both local algebras and the isomorphism induced by `s`; returns
/// the instance facts and the map.
pub fn algebra_isomorphism(
    s: &SimilarityWitness,
    a: &Mat,
    b: &Mat,
    mult: Multiplicities,
) -> Result<(Value, Mat, bool)> {
    let moved = apply_similarity(s, &pair(a, b)?)?;
    let (c, d) = (moved.get(0), moved.get(1));
    let w1 = wild_instance(a, b, mult)?;
    let w2 = wild_instance(c, d, mult)?;
    let pc = enlarged_pair_witness(s, a, b, mult)?;
    let src = decode_pair(w1.pair.first(), w1.pair.second())?;
    let tgt = decode_pair(w2.pair.first(), w2.pair.second())?;
    let phi = lift_to_unital(&algebra_iso_from_pair_witness(&pc, &src, &tgt)?)?;
    let iso = verify_isomorphism(&w1.algebra, &w2.algebra, &phi)?;
    let facts = json!({
        "dim": w1.algebra.dim(),
        "radical_dim": w1.radical_dim,
        "radical_square_dim": w1.radical_square_dim,
        "radical_cube_dim": w1.radical_cube_dim,
        "is_local": w1.is_local && w2.is_local,
        "isomorphism_verified": iso,
    });
    let ok = iso && w1.is_local && w2.is_local && w1.radical_cube_dim == 0 && w1.radical_square_dim == 2;
    Ok((facts, phi, ok))
}

fn algebra_forward(cfg: &RunConfig, n: usize) -> Result<Report> {
    let f = cfg.field;
    let mut rng = cfg.rng();
    let mut report = Report::new(TheoremCheck::AlgebraForward.name(), cfg);
    for case in 0..cfg.trials {
        let a = Mat::random(f, n, n, &mut rng);
        let b = Mat::random(f, n, n, &mut rng);
        let s = SimilarityWitness::new(Mat::random_invertible(f, n, &mut rng))?;
        let outcome = algebra_isomorphism(&s, &a, &b, cfg.mult);
        let ok = matches!(outcome, Ok((_, _, true)));
        let mut detail = json!({"case": case, "n": n, "ok": ok});
        if let Ok((facts, _, _)) = &outcome {
            detail["facts"] = facts.clone();
        }
        report.record(ok, detail, || {
            json!({
                "case": case,
                "a": a.to_json(),
                "b": b.to_json(),
                "s": s.s.to_json(),
                "error": outcome.as_ref().err().map(|e| e.to_string()),
            })
        });
    }
    Ok(report)
}

fn random_substitution<R: rand::Rng>(f: Field, off_diagonal: bool, rng: &mut R) -> SubstitutionMatrix {
    loop {
        let (r11, r22) = (f.random(rng), f.random(rng));
        let (r12, r21) = if off_diagonal { (f.random(rng), f.random(rng)) } else { (f.zero(), f.zero()) };
        if off_diagonal && r12.is_zero() && r21.is_zero() {
            continue;
        }
        if let Ok(r) = SubstitutionMatrix::new(f, r11, r12, r21, r22) {
            return r;
        }
    }
}

fn rank_separation(cfg: &RunConfig) -> Result<Report> {
    let f = cfg.field;
    let mut rng = cfg.rng();
    let mut report = Report::new(TheoremCheck::RankSeparation.name(), cfg);
    for case in 0..cfg.trials {
        let n = 1 + case % 3;
        let a = Mat::random(f, n, n, &mut rng);
        let b = Mat::random(f, n, n, &mut rng);
        for off_diagonal in [true, false] {
            let r = random_substitution(f, off_diagonal, &mut rng);
            let held = crate::gadgets::rank_separation_check(&a, &b, &r, cfg.mult)?;
            let ok = held != off_diagonal;
            report.record(ok, json!({"case": case, "n": n, "off_diagonal": off_diagonal, "equalities_hold": held}), || {
                json!({"case": case, "a": a.to_json(), "b": b.to_json(), "r": r.to_json()})
            });
        }
    }
    Ok(report)
}

fn check_input(source: &MatTuple, target: &MatTuple) -> Result<()> {
    for t in [source, target] {
        if t.len() != 2 {
            return Err(Error::NotPair(t.len()));
        }
        if !t.is_square() {
            return Err(Error::DimensionMismatch("pipeline needs square pairs".into()));
        }
    }
    if source.shape() != target.shape() {
        return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", source.shape(), target.shape())));
    }
    if source.field() != target.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// Similarity decision, gadget transport, extraction back, and the algebra
/// isomorphism, with every witness recorded as a replayable claim.
pub fn pipeline(cfg: &RunConfig, source: &MatTuple, target: &MatTuple, eps: Elem) -> Result<Value> {
    check_input(source, target).map_err(Error::at("input"))?;
    let f = source.field();
    let mut rng = cfg.rng();
    let mut stages = Vec::new();
    let decision = decide_similarity(source, target, cfg.trials, &mut rng).map_err(Error::at("decide-similarity"))?;
    let s = match decision {
        Decision::Related(s) => {
            stages.push(json!({
                "stage": "decide-similarity",
                "status": "related",
                "claim": witness_claim(&Witness::Similarity(s.clone()), source, target),
            }));
            Some(s)
        }
        Decision::Unrelated(no) => {
            stages.push(json!({"stage": "decide-similarity", "status": "unrelated", "evidence": no}));
            None
        }
        Decision::Inconclusive(cert) => {
            stages.push(json!({"stage": "decide-similarity", "status": "inconclusive", "certificate": cert}));
            None
        }
    };
    let downstream = ["gadget", "transport", "extract", "algebra"];
    let Some(s) = s else {
        stages.extend(downstream.iter().map(|name| json!({"stage": name, "status": "skipped"})));
        return Ok(pipeline_doc(cfg, f, eps, false, stages));
    };
    let (a, b) = (source.get(0), source.get(1));
    let (c, d) = (target.get(0), target.get(1));
    let g1 = build_t(eps, a, b).map_err(Error::at("gadget"))?;
    let g2 = build_t(eps, c, d).map_err(Error::at("gadget"))?;
    stages.push(json!({"stage": "gadget", "status": "ok", "size": 4 * g1.n}));

    let r = transport_witness(&s, eps, a, b).map_err(Error::at("transport"))?;
    stages.push(json!({
        "stage": "transport",
        "status": "ok",
        "claim": witness_claim(&Witness::Congruence(r.clone()), &g1.pair, &g2.pair),
    }));

    let opts = ExtractOptions { method: ExtractMethod::Auto, trials: cfg.trials, seed: cfg.seed };
    let ex = extract_similarity(&r, eps, (a, b), (c, d), &opts).map_err(Error::at("extract"))?;
    stages.push(json!({
        "stage": "extract",
        "status": "ok",
        "method": ex.method,
        "caveat": ex.caveat,
        "claim": witness_claim(&Witness::Similarity(ex.witness.clone()), source, target),
    }));

    let (facts, phi, ok) = algebra_isomorphism(&s, a, b, cfg.mult).map_err(Error::at("algebra"))?;
    stages.push(json!({
        "stage": "algebra",
        "status": if ok { "ok" } else { "failed" },
        "facts": facts,
        "claim": {
            "claim": "algebra-isomorphism",
            "source": source.to_json(),
            "target": target.to_json(),
            "mult": [cfg.mult.identity, cfg.mult.zero, cfg.mult.ones],
            "map": phi.to_json(),
        },
    }));
    Ok(pipeline_doc(cfg, f, eps, ok, stages))
}

fn pipeline_doc(cfg: &RunConfig, f: Field, eps: Elem, completed: bool, stages: Vec<Value>) -> Value {
    document(
        f,
        json!({"report": "pipeline", "config": cfg.to_json(), "eps": f.format(eps), "completed": completed, "stages": stages}),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Pair,
    SimilarPairInstance,
    Algebra,
}

impl std::str::FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<GenKind> {
        match s {
            "pair" => Ok(GenKind::Pair),
            "similar-pair-instance" => Ok(GenKind::SimilarPairInstance),
            "algebra" => Ok(GenKind::Algebra),
            other => Err(Error::Parse(format!("unknown instance kind {other:?}"))),
        }
    }
}

/// A seeded instance document. `Algebra` decodes `from_pair` when given,
/// otherwise a fresh random pair.
pub fn generate(kind: GenKind, n: usize, cfg: &RunConfig, from_pair: Option<&MatTuple>) -> Result<Value> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let f = cfg.field;
    let mut rng = cfg.rng();
    let fresh = |rng: &mut ChaCha8Rng| MatTuple::pair(Mat::random(f, n, n, rng), Mat::random(f, n, n, rng));
    match kind {
        GenKind::Pair => Ok(document(f, fresh(&mut rng)?.to_json())),
        GenKind::SimilarPairInstance => {
            let src = fresh(&mut rng)?;
            let s = SimilarityWitness::new(Mat::random_invertible(f, n, &mut rng))?;
            let tgt = apply_similarity(&s, &src)?;
            Ok(document(f, witness_claim(&Witness::Similarity(s), &src, &tgt)))
        }
        GenKind::Algebra => {
            let p = match from_pair {
                Some(p) => p.clone(),
                None => fresh(&mut rng)?,
            };
            if p.len() != 2 {
                return Err(Error::NotPair(p.len()));
            }
            Ok(document(p.field(), decode_pair(p.get(0), p.get(1))?.to_json()))
        }
    }
}

/// Every object with a `"claim"` key, depth first.
pub fn collect_claims(v: &Value) -> Vec<&Value> {
    let mut out = Vec::new();
    fn walk<'a>(v: &'a Value, out: &mut Vec<&'a Value>) {
        match v {
            Value::Object(m) => {
                if m.get("claim").is_some_and(Value::is_string) {
                    out.push(v);
                }
                m.values().for_each(|x| walk(x, out));
            }
            Value::Array(a) => a.iter().for_each(|x| walk(x, out)),
            _ => {}
        }
    }
    walk(v, &mut out);
    out
}

/// Replays one claim.
pub fn verify_claim(field: Field, claim: &Value) -> Result<bool> {
    match claim.get("claim").and_then(Value::as_str) {
        Some("witness") => {
            let w = Witness::from_json(field, &claim["witness"])?;
            let src = MatTuple::from_json(field, &claim["source"])?;
            let tgt = MatTuple::from_json(field, &claim["target"])?;
            Ok(verify_witness(&w, &src, &tgt))
        }
        Some("algebra-isomorphism") => {
            let src = MatTuple::from_json(field, &claim["source"])?;
            let tgt = MatTuple::from_json(field, &claim["target"])?;
            let m: Vec<usize> = serde_json::from_value(claim["mult"].clone()).map_err(|e| Error::Parse(e.to_string()))?;
            let [identity, zero, ones] = m[..] else {
                return Err(Error::Parse("mult must have three entries".into()));
            };
            let mult = Multiplicities { identity, zero, ones };
            let phi = Mat::from_json(field, &claim["map"])?;
            let w1 = wild_instance(src.get(0), src.get(1), mult)?;
            let w2 = wild_instance(tgt.get(0), tgt.get(1), mult)?;
            verify_isomorphism(&w1.algebra, &w2.algebra, &phi)
        }
        other => Err(Error::Parse(format!("unknown claim {other:?}"))),
    }
}
