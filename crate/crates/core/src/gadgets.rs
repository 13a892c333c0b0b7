//! Reduction gadgets: matrix pairs up to simultaneous similarity embedded
//! into pairs of forms up to *congruence, and the enlarged pair used for
//! local algebras.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::homspace::{
    assemble_matching, decide_equivalence, krull_schmidt, match_summands, MIN_RANDOMIZED_FIELD,
};
use crate::linalg::Mat;
use crate::tuples::{
    apply_equivalence, apply_similarity, apply_star_congruence, CongruenceWitness, EquivalenceWitness, MatTuple,
    SimilarityWitness, SubstitutionMatrix,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Gadget,
    ProofTriple,
    FirstPart,
    SecondPart,
    Enlarged,
}

/// `T_eps(A, B)`: a square pair of size `4n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetPair {
    pub pair: MatTuple,
    pub eps: Elem,
    pub n: usize,
    pub provenance: Provenance,
}

impl GadgetPair {
    pub fn first(&self) -> &Mat {
        self.pair.get(0)
    }

    pub fn second(&self) -> &Mat {
        self.pair.get(1)
    }
}

fn check_square_pair(a: &Mat, b: &Mat) -> Result<(Field, usize)> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::DimensionMismatch("gadgets need square matrices".into()));
    }
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", a.shape(), b.shape())));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    Ok((a.field(), a.rows()))
}

/// `[[2I, I], [0, 2I]]` in `n x n` blocks.
pub fn lambda(field: Field, n: usize) -> Mat {
    let two = Mat::scalar_matrix(field, n, field.from_i64(2));
    let id = Mat::identity(field, n);
    Mat::block_assemble(&[vec![two.clone(), id], vec![Mat::zeros(field, n, n), two]]).expect("square blocks")
}

fn antidiagonal(top: &Mat, bottom: &Mat) -> Mat {
    let f = top.field();
    Mat::block_assemble(&[
        vec![Mat::zeros(f, top.rows(), bottom.cols()), top.clone()],
        vec![bottom.clone(), Mat::zeros(f, bottom.rows(), top.cols())],
    ])
    .expect("conforming blocks")
}

pub fn build_t(eps: Elem, a: &Mat, b: &Mat) -> Result<GadgetPair> {
    let (f, n) = check_square_pair(a, b)?;
    if !f.contains(eps) {
        return Err(Error::FieldMismatch);
    }
    let first = antidiagonal(&Mat::identity(f, 2 * n), &lambda(f, n));
    let second = antidiagonal(&a.direct_sum(b)?, &a.star().direct_sum(&b.star())?.scale(eps));
    Ok(GadgetPair { pair: MatTuple::pair(first, second)?, eps, n, provenance: Provenance::Gadget })
}

/// The three families whose classification problems the gadget shows wild.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Hermitian,
    Symmetric,
    Skew,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    Hermitian,
    Symmetric,
    Skew,
    None,
}

/// The gadget whose second matrix lands in `family`.
pub fn family_gadget(family: Family, a: &Mat, b: &Mat) -> Result<GadgetPair> {
    let f = a.field();
    match family {
        Family::Hermitian if f.deg() != 2 => Err(Error::HermitianNeedsExtension),
        Family::Symmetric | Family::Skew if f.deg() != 1 => Err(Error::FamilyNeedsIdentityInvolution),
        Family::Hermitian | Family::Symmetric => build_t(Elem::ONE, a, b),
        Family::Skew => build_t(f.neg(Elem::ONE), a, b),
    }
}

pub fn classify_symmetry(g: &GadgetPair) -> Symmetry {
    let m = g.second();
    let f = m.field();
    if f.has_nontrivial_involution() && m.star() == *m {
        return Symmetry::Hermitian;
    }
    let t = m.transpose();
    if t == *m {
        Symmetry::Symmetric
    } else if t == m.neg() {
        Symmetry::Skew
    } else {
        Symmetry::None
    }
}

/// `R = diag((S*)^-1, (S*)^-1, S, S)`, which carries `T_eps(A, B)` onto
/// `T_eps(S^-1 A S, S^-1 B S)`. Verified before returning.
pub fn transport_witness(s: &SimilarityWitness, eps: Elem, a: &Mat, b: &Mat) -> Result<CongruenceWitness> {
    let (_, n) = check_square_pair(a, b)?;
    if s.s.shape() != (n, n) {
        return Err(Error::DimensionMismatch("similarity witness size".into()));
    }
    let star_inv = s.s.star().inverse()?;
    let r = Mat::direct_sum_all(a.field(), &[star_inv.clone(), star_inv, s.s.clone(), s.s.clone()])?;
    let w = CongruenceWitness::new(r)?;
    let moved = apply_similarity(s, &MatTuple::pair(a.clone(), b.clone())?)?;
    let source = build_t(eps, a, b)?;
    let target = build_t(eps, moved.get(0), moved.get(1))?;
    if apply_star_congruence(&w, &source.pair)? != target.pair {
        return Err(Error::WitnessInvalid("transported witness failed replay".into()));
    }
    Ok(w)
}

/// The three-matrix tuple of the converse argument and its two parts:
/// permuting the columns of `full` gives `first (+) second`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTriples {
    pub full: MatTuple,
    pub first: MatTuple,
    pub second: MatTuple,
}

/// Column order that moves the right half of a `4n` square in front.
fn half_swap(n: usize) -> Vec<usize> {
    (2 * n..4 * n).chain(0..2 * n).collect()
}

pub fn build_proof_triples(eps: Elem, a: &Mat, b: &Mat) -> Result<ProofTriples> {
    let g = build_t(eps, a, b)?;
    let f = a.field();
    let n = g.n;
    let full = MatTuple::new(vec![g.first().clone(), g.first().star(), g.second().clone()])?;
    let l = lambda(f, n);
    let id = Mat::identity(f, 2 * n);
    let first = MatTuple::new(vec![id.clone(), l.transpose(), a.direct_sum(b)?])?;
    let second = MatTuple::new(vec![l, id, a.star().direct_sum(&b.star())?.scale(eps)])?;
    let swapped = full.map(|m| Ok(m.permute_cols(&half_swap(n))))?;
    if swapped != first.direct_sum(&second)? {
        return Err(Error::WitnessInvalid("proof triple does not split as displayed".into()));
    }
    Ok(ProofTriples { full, first, second })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtractMethod {
    /// Krull–Schmidt on both parts, cancellation of the second parts, and
    /// summand matching. Needs a field of at least 100 elements.
    Decompose,
    /// The diagonal block of the equivalence on the first parts. Valid
    /// whenever the first and second parts share no summand.
    Compress,
    /// `Decompose` when the field allows it, `Compress` otherwise.
    Auto,
}

#[derive(Clone, Debug)]
pub struct ExtractOptions {
    pub method: ExtractMethod,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions { method: ExtractMethod::Auto, trials: 20, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct Extraction {
    pub witness: SimilarityWitness,
    pub method: ExtractMethod,
    /// Set for characteristic 3, where the separation of the two parts is
    /// not guaranteed.
    pub caveat: Option<String>,
}

pub const CHAR3_CAVEAT: &str =
    "characteristic 3: 2 = 1/2, so the first and second parts may share summands; outside the verified envelope";

/// Recovers a similarity `(A, B) -> (C, D)` from a *congruence between
/// their gadgets.
pub fn extract_similarity(
    r: &CongruenceWitness,
    eps: Elem,
    source: (&Mat, &Mat),
    target: (&Mat, &Mat),
    opts: &ExtractOptions,
) -> Result<Extraction> {
    let g1 = build_t(eps, source.0, source.1)?;
    let g2 = build_t(eps, target.0, target.1)?;
    if g1.n != g2.n {
        return Err(Error::DimensionMismatch("gadgets of different sizes".into()));
    }
    if apply_star_congruence(r, &g1.pair)? != g2.pair {
        return Err(Error::WitnessInvalid("congruence witness does not relate the gadgets".into()));
    }
    let f = source.0.field();
    let n = g1.n;
    let t1 = build_proof_triples(eps, source.0, source.1)?;
    let t2 = build_proof_triples(eps, target.0, target.1)?;
    let on_triples = r.as_equivalence();
    if apply_equivalence(&on_triples, &t1.full)? != t2.full {
        return Err(Error::WitnessInvalid("congruence does not lift to the proof triples".into()));
    }
    let perm = half_swap(n);
    let split = EquivalenceWitness {
        left: on_triples.left.clone(),
        right: on_triples.right.permute_rows(&perm).permute_cols(&perm),
    };
    let sum1 = t1.first.direct_sum(&t1.second)?;
    let sum2 = t2.first.direct_sum(&t2.second)?;
    if apply_equivalence(&split, &sum1)? != sum2 {
        return Err(Error::WitnessInvalid("permuted witness failed replay".into()));
    }

    let method = match opts.method {
        ExtractMethod::Auto if f.order() >= MIN_RANDOMIZED_FIELD && f.p() > (8 * n * n) as u64 => {
            ExtractMethod::Decompose
        }
        ExtractMethod::Auto => ExtractMethod::Compress,
        m => m,
    };
    let block = match method {
        ExtractMethod::Decompose => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let w = equivalence_by_cancellation(&t1, &t2, opts.trials, &mut rng)?;
            w.left
        }
        _ => split.left.slice(0..2 * n, 0..2 * n),
    };
    let p = block.slice(0..n, 0..n);
    let shaped = block.slice(0..n, n..2 * n).is_zero() && block.slice(n..2 * n, n..2 * n) == p;
    if !shaped {
        return Err(Error::WitnessInvalid("intertwiner of the first parts lacks the [[P,0],[Q,P]] shape".into()));
    }
    let witness = SimilarityWitness::new(p.inverse()?)?;
    let from = MatTuple::pair(source.0.clone(), source.1.clone())?;
    let to = MatTuple::pair(target.0.clone(), target.1.clone())?;
    if apply_similarity(&witness, &from)? != to {
        return Err(Error::WitnessInvalid("extracted similarity failed replay".into()));
    }
    let caveat = (f.p() == 3).then(|| CHAR3_CAVEAT.to_string());
    Ok(Extraction { witness, method, caveat })
}

/// An equivalence between the first parts, obtained from the unique
/// decomposition of both sides after checking that no summand of a first
/// part is equivalent to a summand of the other side's second part.
fn equivalence_by_cancellation<R: rand::Rng>(
    t1: &ProofTriples,
    t2: &ProofTriples,
    trials: usize,
    rng: &mut R,
) -> Result<EquivalenceWitness> {
    let f1 = krull_schmidt(&t1.first)?;
    let g1 = krull_schmidt(&t1.second)?;
    let f2 = krull_schmidt(&t2.first)?;
    let g2 = krull_schmidt(&t2.second)?;
    for (fs, gs) in [(&f1, &g2), (&f2, &g1)] {
        for (i, x) in fs.summands.iter().enumerate() {
            for (j, y) in gs.summands.iter().enumerate() {
                if x.shape() == y.shape() && decide_equivalence(x, y, trials, rng)?.is_related() {
                    return Err(Error::CommonSummand(format!("first-part summand {i} matches second-part summand {j}")));
                }
            }
        }
    }
    let matching = match_summands(&f1.summands, &f2.summands, trials, rng)?;
    let mid = assemble_matching(&f1.summands, &f2.summands, &matching)?;
    let w = f1.witness.then(&mid)?.then(&f2.witness.inverse()?)?;
    if apply_equivalence(&w, &t1.first)? != t2.first {
        return Err(Error::WitnessInvalid("assembled first-part equivalence failed replay".into()));
    }
    Ok(w)
}

/// Multiplicities of the padding summands `(I, 0)`, `(0, I)` and `(I, I)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicities {
    pub identity: usize,
    pub zero: usize,
    pub ones: usize,
}

impl Default for Multiplicities {
    fn default() -> Self {
        Multiplicities { identity: 20, zero: 10, ones: 1 }
    }
}

impl std::str::FromStr for Multiplicities {
    type Err = Error;

    fn from_str(s: &str) -> Result<Multiplicities> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad multiplicities {s:?}")))?;
        match parts[..] {
            [identity, zero, ones] => Ok(Multiplicities { identity, zero, ones }),
            _ => Err(Error::Parse(format!("expected three multiplicities, got {s:?}"))),
        }
    }
}

/// `(I, 0)^a (+) (0, I)^b (+) (I, I)^c (+) T_0(A, B)` with every scalar
/// block scaled to `n x n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigPair {
    pub pair: MatTuple,
    pub n: usize,
    pub mult: Multiplicities,
}

impl BigPair {
    pub fn first(&self) -> &Mat {
        self.pair.get(0)
    }

    pub fn second(&self) -> &Mat {
        self.pair.get(1)
    }
}

pub fn build_p35(a: &Mat, b: &Mat, mult: Multiplicities) -> Result<BigPair> {
    let (f, n) = check_square_pair(a, b)?;
    let g = build_t(f.zero(), a, b)?;
    let id = |k: usize| Mat::identity(f, k * n);
    let zero = |k: usize| Mat::zeros(f, k * n, k * n);
    let parts = [
        MatTuple::pair(id(mult.identity), zero(mult.identity))?,
        MatTuple::pair(zero(mult.zero), id(mult.zero))?,
        MatTuple::pair(id(mult.ones), id(mult.ones))?,
        g.pair,
    ];
    Ok(BigPair { pair: MatTuple::direct_sum_all(&parts)?, n, mult })
}

/// Whether `rank(r11 M1 + r12 M2) = rank M1` and
/// `rank(r21 M1 + r22 M2) = rank M2` for the enlarged pair of `(A, B)`.
pub fn rank_separation_check(a: &Mat, b: &Mat, r: &SubstitutionMatrix, mult: Multiplicities) -> Result<bool> {
    let big = build_p35(a, b, mult)?;
    let mixed = crate::tuples::apply_substitution(r, &big.pair)?;
    Ok(mixed.get(0).rank() == big.first().rank() && mixed.get(1).rank() == big.second().rank())
}

/// `s I` with `s* s = c`, for absorbing a scalar factor into a congruence.
/// Needs `c` to be a square of the base field.
pub fn scalar_congruence(field: Field, c: Elem, n: usize) -> Result<CongruenceWitness> {
    if c.is_zero() {
        return Err(Error::Singular);
    }
    let in_base = c.c1 == 0 && field.is_square(c);
    let s = in_base.then(|| field.sqrt(c)).flatten().ok_or(Error::NotASquare)?;
    // the root lies in F_p, which the involution fixes
    CongruenceWitness::new(Mat::scalar_matrix(field, n, s))
}

/// Opt-in escape hatch for the identity involution: when `c` is not a square
/// of `F_p`, returns `F_{p^2}` and `s I` over it with `(s I)^T (s I) = c I`.
/// The result is meant for plain (transpose) congruence.
pub fn scalar_congruence_in_extension(field: Field, c: Elem, n: usize) -> Result<(Field, Mat)> {
    if field.deg() != 1 {
        return Err(Error::InvalidParameter("escape hatch applies to prime fields".into()));
    }
    let ext = Field::new(field.p(), 2)?;
    let s = ext.sqrt(Elem { c0: c.c0, c1: 0 }).ok_or(Error::NotASquare)?;
    Ok((ext, Mat::scalar_matrix(ext, n, s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn m(f: Field, rows: &[&[i64]]) -> Mat {
        Mat::from_i64(f, rows)
    }

    #[test]
    fn scalar_gadget_matches_display() {
        let f = f(7);
        let g = build_t(f.zero(), &m(f, &[&[3]]), &m(f, &[&[5]])).unwrap();
        assert_eq!(*g.first(), m(f, &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[2, 1, 0, 0], &[0, 2, 0, 0]]));
        assert_eq!(*g.second(), m(f, &[&[0, 0, 3, 0], &[0, 0, 0, 5], &[0, 0, 0, 0], &[0, 0, 0, 0]]));
    }

    #[test]
    fn symmetry_examples() {
        let f7 = f(7);
        let g = build_t(Elem::ONE, &Mat::identity(f7, 1), &Mat::identity(f7, 1)).unwrap();
        assert_eq!(g.second().transpose(), *g.second());
        let g = build_t(f7.neg(Elem::ONE), &m(f7, &[&[2]]), &m(f7, &[&[3]])).unwrap();
        assert_eq!(g.second().transpose(), g.second().neg());
        assert_eq!(classify_symmetry(&g), Symmetry::Skew);
        let g = build_t(f7.zero(), &m(f7, &[&[2]]), &m(f7, &[&[3]])).unwrap();
        assert_eq!(classify_symmetry(&g), Symmetry::None);
        let f9 = Field::new(3, 2).unwrap();
        let a = Mat::from_fn(f9, 2, 2, |i, j| f9.elem(i as i64, 1 + j as i64).unwrap());
        let g = family_gadget(Family::Hermitian, &a, &a.transpose()).unwrap();
        assert_eq!(classify_symmetry(&g), Symmetry::Hermitian);
        assert_eq!(family_gadget(Family::Hermitian, &Mat::identity(f7, 1), &Mat::identity(f7, 1)).unwrap_err(), Error::HermitianNeedsExtension);
        assert_eq!(family_gadget(Family::Skew, &a, &a).unwrap_err(), Error::FamilyNeedsIdentityInvolution);
    }

    #[test]
    fn transport_examples() {
        let f = f(7);
        let (a, b) = (m(f, &[&[1]]), m(f, &[&[2]]));
        let r = transport_witness(&SimilarityWitness::new(m(f, &[&[3]])).unwrap(), f.zero(), &a, &b).unwrap();
        assert_eq!(r.s, Mat::diag(f, &[f.from_i64(5), f.from_i64(5), f.from_i64(3), f.from_i64(3)]));
        let id = transport_witness(&SimilarityWitness::identity(f, 1), f.zero(), &a, &b).unwrap();
        assert!(id.s.is_identity());
    }

    #[test]
    fn proof_triple_examples() {
        let f = f(7);
        let one = m(f, &[&[1]]);
        let t = build_proof_triples(f.zero(), &one, &one).unwrap();
        assert!(t.first.get(0).is_identity());
        assert!(t.second.get(1).is_identity());
        assert!(t.second.get(2).is_zero());
        assert_eq!(*t.first.get(1), m(f, &[&[2, 0], &[1, 2]]));
    }

    #[test]
    fn extract_identity_case() {
        let f = f(101);
        let (a, b) = (m(f, &[&[1]]), m(f, &[&[2]]));
        for method in [ExtractMethod::Decompose, ExtractMethod::Compress] {
            let opts = ExtractOptions { method, ..Default::default() };
            let e = extract_similarity(&CongruenceWitness::identity(f, 4), f.zero(), (&a, &b), (&a, &b), &opts).unwrap();
            assert!(!e.witness.s.get(0, 0).is_zero());
            assert_eq!(e.caveat, None);
        }
    }

    #[test]
    fn extract_round_trip() {
        let f = f(10007);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = Mat::random(f, 2, 2, &mut rng);
        let b = Mat::random(f, 2, 2, &mut rng);
        let s = SimilarityWitness::new(Mat::random_invertible(f, 2, &mut rng)).unwrap();
        let moved = apply_similarity(&s, &MatTuple::pair(a.clone(), b.clone()).unwrap()).unwrap();
        let eps = f.neg(Elem::ONE);
        let r = transport_witness(&s, eps, &a, &b).unwrap();
        for method in [ExtractMethod::Decompose, ExtractMethod::Compress] {
            let opts = ExtractOptions { method, ..Default::default() };
            let e = extract_similarity(&r, eps, (&a, &b), (moved.get(0), moved.get(1)), &opts).unwrap();
            assert_eq!(e.method, method);
        }
        let bad = CongruenceWitness::identity(f, 8);
        let err = extract_similarity(&bad, eps, (&a, &b), (moved.get(0), moved.get(1)), &ExtractOptions::default());
        assert!(matches!(err, Err(Error::WitnessInvalid(_))));
    }

    #[test]
    fn enlarged_pair_ranks() {
        let f = f(7);
        let one = m(f, &[&[1]]);
        let big = build_p35(&one, &one, Multiplicities::default()).unwrap();
        assert_eq!(big.pair.shape(), (35, 35));
        assert_eq!(big.first().rank(), 25);
        assert_eq!(big.second().rank(), 13);
        let zero = m(f, &[&[0]]);
        assert_eq!(build_p35(&zero, &zero, Multiplicities::default()).unwrap().second().rank(), 11);
    }

    #[test]
    fn rank_separation_examples() {
        let f = f(101);
        let (a, b) = (m(f, &[&[4]]), m(f, &[&[9]]));
        let mult = Multiplicities::default();
        let check = |r: [[i64; 2]; 2]| rank_separation_check(&a, &b, &SubstitutionMatrix::from_i64(f, r).unwrap(), mult).unwrap();
        assert!(check([[1, 0], [0, 1]]));
        assert!(!check([[1, 1], [0, 1]]));
        assert!(!check([[0, 1], [1, 0]]));
    }

    #[test]
    fn lambda_minus_transpose_is_invertible() {
        for p in [3, 5, 7, 10007] {
            let f = f(p);
            let g = build_t(f.zero(), &Mat::identity(f, 1), &Mat::identity(f, 1)).unwrap();
            let d = g.first().sub(&g.first().transpose()).unwrap().det().unwrap();
            assert!(!d.is_zero(), "p = {p}");
        }
    }

    #[test]
    fn scalar_absorption() {
        let f = f(7);
        let w = scalar_congruence(f, f.from_i64(2), 3).unwrap();
        let t = MatTuple::pair(Mat::identity(f, 3), Mat::identity(f, 3)).unwrap();
        assert_eq!(apply_star_congruence(&w, &t).unwrap().get(0), &Mat::scalar_matrix(f, 3, f.from_i64(2)));
        assert_eq!(scalar_congruence(f, f.from_i64(3), 3).unwrap_err(), Error::NotASquare);
        let (ext, s) = scalar_congruence_in_extension(f, f.from_i64(3), 2).unwrap();
        assert_eq!(s.transpose().mul(&s).unwrap(), Mat::scalar_matrix(ext, 2, ext.from_i64(3)));
    }
}
