//! Morphisms between matrix tuples.
//!
//! A `t`-tuple of `m x n` matrices is a representation of the quiver with two
//! vertices and `t` parallel arrows `F^n -> F^m`. A morphism to a tuple of
//! `m' x n'` matrices `(B_i)` is a pair `(X0, X1)` of an `n' x n` map on the
//! source spaces and an `m' x m` map on the target spaces with
//! `X1 A_i = B_i X0` for every `i`. Two tuples are equivalent exactly when an
//! invertible morphism exists; the witness is then `(X1, X0^-1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebras::AlgebraStructure;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{Mat, Subspace};
use crate::poly::Poly;
use crate::tuples::{apply_equivalence, EquivalenceWitness, MatTuple, SimilarityWitness};

/// Smallest field order accepted by the randomized deciders.
pub const MIN_RANDOMIZED_FIELD: u64 = 100;

/// A morphism `(X0, X1)` between tuples; see the module docs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub input: Mat,
    pub output: Mat,
}

impl Morphism {
    pub fn identity(field: Field, rows: usize, cols: usize) -> Morphism {
        Morphism { input: Mat::identity(field, cols), output: Mat::identity(field, rows) }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        Ok(Morphism { input: self.input.mul(&other.input)?, output: self.output.mul(&other.output)? })
    }

    pub fn intertwines(&self, source: &MatTuple, target: &MatTuple) -> bool {
        if source.len() != target.len()
            || self.input.shape() != (target.cols(), source.cols())
            || self.output.shape() != (target.rows(), source.rows())
        {
            return false;
        }
        source.mats().iter().zip(target.mats()).all(|(a, b)| {
            matches!((self.output.mul(a), b.mul(&self.input)), (Ok(l), Ok(r)) if l == r)
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.input.is_invertible() && self.output.is_invertible()
    }

    pub fn is_nilpotent(&self) -> bool {
        let k = self.input.rows().max(self.output.rows()) as u64;
        self.input.pow(k).map(|m| m.is_zero()).unwrap_or(false) && self.output.pow(k).map(|m| m.is_zero()).unwrap_or(false)
    }

    /// The equivalence witness `(X1, X0^-1)` of an isomorphism.
    pub fn to_witness(&self) -> Result<EquivalenceWitness> {
        EquivalenceWitness::new(self.output.clone(), self.input.inverse()?)
    }

    pub fn apply_poly(&self, g: &Poly) -> Result<Morphism> {
        Ok(Morphism { input: g.eval_mat(&self.input)?, output: g.eval_mat(&self.output)? })
    }

    fn to_vec(&self) -> Vec<Elem> {
        let mut v = self.input.to_vec();
        v.extend_from_slice(self.output.data());
        v
    }

    fn from_vec(field: Field, v: &[Elem], input: (usize, usize), output: (usize, usize)) -> Morphism {
        let split = input.0 * input.1;
        Morphism {
            input: Mat::new(field, input.0, input.1, v[..split].to_vec()).expect("sized"),
            output: Mat::new(field, output.0, output.1, v[split..].to_vec()).expect("sized"),
        }
    }
}

/// Echelon-canonical basis of `Hom(source, target)`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    source: MatTuple,
    target: MatTuple,
    space: Subspace,
    basis: Vec<Morphism>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Morphism] {
        &self.basis
    }

    pub fn source(&self) -> &MatTuple {
        &self.source
    }

    pub fn target(&self) -> &MatTuple {
        &self.target
    }

    fn shapes(&self) -> ((usize, usize), (usize, usize)) {
        ((self.target.cols(), self.source.cols()), (self.target.rows(), self.source.rows()))
    }

    pub fn combine(&self, coeffs: &[Elem]) -> Morphism {
        let (i, o) = self.shapes();
        Morphism::from_vec(self.source.field(), &self.space.combine(coeffs), i, o)
    }

    /// Coordinates of a morphism in this basis; `None` if it is not one.
    pub fn coords(&self, m: &Morphism) -> Option<Vec<Elem>> {
        self.space.coords(&m.to_vec())
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Morphism {
        let f = self.source.field();
        let c: Vec<Elem> = (0..self.dim()).map(|_| f.random(rng)).collect();
        self.combine(&c)
    }

    /// Structure constants of the endomorphism algebra under composition.
    /// Only meaningful when source and target coincide.
    pub fn algebra(&self) -> Result<AlgebraStructure> {
        let f = self.source.field();
        let d = self.dim();
        let mut gamma = Vec::with_capacity(d * d * d);
        for bi in &self.basis {
            for bj in &self.basis {
                let prod = bi.compose(bj)?;
                let c = self.coords(&prod).ok_or(Error::NotEndomorphism)?;
                gamma.extend(c);
            }
        }
        AlgebraStructure::new(f, d, gamma, None)
    }
}

fn check_layout(t: &MatTuple, u: &MatTuple) -> Result<()> {
    if t.len() != u.len() {
        return Err(Error::LengthMismatch(t.len(), u.len()));
    }
    if t.field() != u.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// All morphisms from `t` to `u`.
pub fn hom_basis(t: &MatTuple, u: &MatTuple) -> Result<HomBasis> {
    check_layout(t, u)?;
    let f = t.field();
    let (m, n) = t.shape();
    let (mp, np) = u.shape();
    let nvars0 = np * n;
    let nvars = nvars0 + mp * m;
    let neg1 = f.neg(Elem::ONE);
    let mut rows = Vec::with_capacity(t.len() * mp * n);
    for (a, b) in t.mats().iter().zip(u.mats()) {
        for r in 0..mp {
            for c in 0..n {
                let mut eq = vec![Elem::ZERO; nvars];
                for k in 0..m {
                    eq[nvars0 + r * m + k] = a.get(k, c);
                }
                for k in 0..np {
                    let v = b.get(r, k);
                    if !v.is_zero() {
                        eq[k * n + c] = f.mul(neg1, v);
                    }
                }
                rows.push(eq);
            }
        }
    }
    let sys = Mat::from_rows_vec(f, nvars, &rows);
    let space = Subspace::span(f, nvars, &sys.kernel());
    let basis = space.basis().iter().map(|v| Morphism::from_vec(f, v, (np, n), (mp, m))).collect();
    Ok(HomBasis { source: t.clone(), target: u.clone(), space, basis })
}

pub fn end_ring(t: &MatTuple) -> Result<HomBasis> {
    hom_basis(t, t)
}

/// `{X : X A_i = C_i X}` for square tuples of equal size.
pub fn intertwiners(t: &MatTuple, u: &MatTuple) -> Result<Vec<Mat>> {
    check_layout(t, u)?;
    if !t.is_square() || !u.is_square() {
        return Err(Error::DimensionMismatch("similarity needs square matrices".into()));
    }
    let f = t.field();
    let n = t.rows();
    let np = u.rows();
    let nvars = np * n;
    let mut rows = Vec::new();
    for (a, c) in t.mats().iter().zip(u.mats()) {
        for r in 0..np {
            for col in 0..n {
                let mut eq = vec![Elem::ZERO; nvars];
                for k in 0..n {
                    let idx = r * n + k;
                    eq[idx] = f.add(eq[idx], a.get(k, col));
                }
                for k in 0..np {
                    let idx = k * n + col;
                    eq[idx] = f.sub(eq[idx], c.get(r, k));
                }
                rows.push(eq);
            }
        }
    }
    let sys = Mat::from_rows_vec(f, nvars, &rows);
    let space = Subspace::span(f, nvars, &sys.kernel());
    Ok(space.basis().iter().map(|v| Mat::new(f, np, n, v.clone()).expect("sized")).collect())
}

/// Why two tuples are certainly not related.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum ExactNo {
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    HomDimensions { forward: usize, backward: usize, end_left: usize, end_right: usize },
}

/// Evidence gathered when no witness turned up. If the tuples were related,
/// a random Hom element would be invertible except with probability at most
/// `degree / field_order`, so all trials fail with probability at most
/// `failure_bound`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NoCertificate {
    pub trials: usize,
    pub hom_dim: usize,
    pub degree: usize,
    pub field_order: u64,
    pub failure_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decision<W> {
    Related(W),
    Unrelated(ExactNo),
    Inconclusive(NoCertificate),
}

impl<W> Decision<W> {
    pub fn witness(&self) -> Option<&W> {
        match self {
            Decision::Related(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_related(&self) -> bool {
        matches!(self, Decision::Related(_))
    }
}

fn certificate(trials: usize, hom_dim: usize, degree: usize, q: u64) -> NoCertificate {
    let per = (degree as f64 / q as f64).min(1.0);
    NoCertificate { trials, hom_dim, degree, field_order: q, failure_bound: per.powi(trials as i32) }
}

fn require_randomized(f: Field) -> Result<()> {
    if f.order() < MIN_RANDOMIZED_FIELD {
        return Err(Error::FieldTooSmall { size: f.order(), min: MIN_RANDOMIZED_FIELD });
    }
    Ok(())
}

/// Monte Carlo equivalence test with an exact Hom-dimension fast reject.
pub fn decide_equivalence<R: Rng + ?Sized>(
    t: &MatTuple,
    u: &MatTuple,
    trials: usize,
    rng: &mut R,
) -> Result<Decision<EquivalenceWitness>> {
    check_layout(t, u)?;
    if t.shape() != u.shape() {
        return Ok(Decision::Unrelated(ExactNo::ShapeMismatch { left: t.shape(), right: u.shape() }));
    }
    if t == u {
        return Ok(Decision::Related(EquivalenceWitness::identity(t.field(), t.rows(), t.cols())));
    }
    let fwd = hom_basis(t, u)?;
    let bwd = hom_basis(u, t)?;
    let el = end_ring(t)?.dim();
    let er = end_ring(u)?.dim();
    if fwd.dim() != bwd.dim() || fwd.dim() != el || el != er {
        return Ok(Decision::Unrelated(ExactNo::HomDimensions {
            forward: fwd.dim(),
            backward: bwd.dim(),
            end_left: el,
            end_right: er,
        }));
    }
    require_randomized(t.field())?;
    for _ in 0..trials {
        let x = fwd.random_element(rng);
        if x.is_invertible() {
            let w = x.to_witness()?;
            if apply_equivalence(&w, t)? != *u {
                return Err(Error::WitnessInvalid("hom element failed replay".into()));
            }
            return Ok(Decision::Related(w));
        }
    }
    Ok(Decision::Inconclusive(certificate(trials, fwd.dim(), t.rows() + t.cols(), t.field().order())))
}

/// Monte Carlo simultaneous-similarity test: finds `S` with
/// `S^-1 A_i S = C_i`.
pub fn decide_similarity<R: Rng + ?Sized>(
    t: &MatTuple,
    u: &MatTuple,
    trials: usize,
    rng: &mut R,
) -> Result<Decision<SimilarityWitness>> {
    check_layout(t, u)?;
    if !t.is_square() || !u.is_square() {
        return Err(Error::DimensionMismatch("similarity needs square matrices".into()));
    }
    if t.shape() != u.shape() {
        return Ok(Decision::Unrelated(ExactNo::ShapeMismatch { left: t.shape(), right: u.shape() }));
    }
    let f = t.field();
    if t == u {
        return Ok(Decision::Related(SimilarityWitness::identity(f, t.rows())));
    }
    let fwd = intertwiners(t, u)?;
    let bwd = intertwiners(u, t)?;
    let el = intertwiners(t, t)?.len();
    let er = intertwiners(u, u)?.len();
    if fwd.len() != bwd.len() || fwd.len() != el || el != er {
        return Ok(Decision::Unrelated(ExactNo::HomDimensions {
            forward: fwd.len(),
            backward: bwd.len(),
            end_left: el,
            end_right: er,
        }));
    }
    require_randomized(f)?;
    let n = t.rows();
    for _ in 0..trials {
        let x = fwd
            .iter()
            .fold(Mat::zeros(f, n, n), |acc, b| acc.add(&b.scale(f.random(rng))).expect("same shape"));
        if let Ok(s) = x.inverse() {
            let w = SimilarityWitness::new(s)?;
            if crate::tuples::apply_similarity(&w, t)? != *u {
                return Err(Error::WitnessInvalid("intertwiner failed replay".into()));
            }
            return Ok(Decision::Related(w));
        }
    }
    Ok(Decision::Inconclusive(certificate(trials, fwd.len(), n, f.order())))
}

/// Jacobson radical of `End(t)` as a list of endomorphisms, computed through
/// the trace form of the regular representation. Needs `p > dim End(t)`.
#[derive(Clone, Debug)]
pub struct EndRadical {
    pub end_dim: usize,
    pub radical: Vec<Morphism>,
}

pub fn radical_of_end(t: &MatTuple) -> Result<EndRadical> {
    let end = end_ring(t)?;
    radical_from_basis(&end)
}

fn radical_from_basis(end: &HomBasis) -> Result<EndRadical> {
    let alg = end.algebra()?;
    let rad = alg.trace_form_radical()?;
    let radical: Vec<Morphism> = rad.basis().iter().map(|c| end.combine(c)).collect();
    if let Some(bad) = radical.iter().position(|m| !m.is_nilpotent()) {
        return Err(Error::Uncertified(format!("radical element {bad} is not nilpotent")));
    }
    Ok(EndRadical { end_dim: end.dim(), radical })
}

/// A two-term splitting `R t S = first (+) second`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub first: MatTuple,
    pub second: MatTuple,
    pub witness: EquivalenceWitness,
}

/// Fitting decomposition `V = im(e^k) (+) ker(e^k)` of the representation.
/// `None` when `e` is nilpotent or invertible.
pub fn fitting_split(t: &MatTuple, e: &Morphism) -> Result<Option<Splitting>> {
    if !e.intertwines(t, t) {
        return Err(Error::NotEndomorphism);
    }
    fitting_unchecked(t, e)
}

fn stable_power(m: &Mat) -> Result<Mat> {
    m.pow(m.rows().max(1) as u64)
}

fn fitting_unchecked(t: &MatTuple, e: &Morphism) -> Result<Option<Splitting>> {
    let f = t.field();
    let (m, n) = t.shape();
    let e0 = stable_power(&e.input)?;
    let e1 = stable_power(&e.output)?;
    let (im0, ker0) = (e0.column_space(), e0.kernel());
    let (im1, ker1) = (e1.column_space(), e1.kernel());
    let (r0, r1) = (im0.len(), im1.len());
    if r0 + r1 == 0 || (n - r0) + (m - r1) == 0 {
        return Ok(None);
    }
    let b0 = Mat::from_columns(f, n, &[im0, ker0].concat());
    let b1 = Mat::from_columns(f, m, &[im1, ker1].concat());
    let w = EquivalenceWitness::new(b1.inverse()?, b0)?;
    let moved = apply_equivalence(&w, t)?;
    let first = moved.slice(0..r1, 0..r0);
    let second = moved.slice(r1..m, r0..n);
    if moved != first.direct_sum(&second)? {
        return Err(Error::NotEndomorphism);
    }
    Ok(Some(Splitting { first, second, witness: w }))
}

/// Why a summand is indecomposable: its endomorphism ring modulo the radical
/// is a field of degree `residue_degree` over the ground field. Degree 1
/// needs nothing more; larger degrees are backed by an endomorphism whose
/// action on End has characteristic polynomial a power of one irreducible
/// of that degree, which then generates the whole quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub end_dim: usize,
    pub radical_dim: usize,
    pub residue_degree: usize,
}

/// `witness` carries the input tuple onto the direct sum of `summands`,
/// which are sorted by extent.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<MatTuple>,
    pub certificates: Vec<Certificate>,
    pub witness: EquivalenceWitness,
}

impl Decomposition {
    pub fn extents(&self) -> Vec<(usize, usize)> {
        self.summands.iter().map(|s| s.shape()).collect()
    }

    pub fn direct_sum(&self, template: &MatTuple) -> Result<MatTuple> {
        if self.summands.is_empty() {
            return Ok(MatTuple::zeros(template.field(), template.len(), 0, 0));
        }
        MatTuple::direct_sum_all(&self.summands)
    }

    /// Replays the witness on `t` and compares with the sum of summands.
    pub fn verify(&self, t: &MatTuple) -> bool {
        match (apply_equivalence(&self.witness, t), self.direct_sum(t)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

const RANDOM_SPLIT_ATTEMPTS: usize = 64;

/// Krull–Schmidt decomposition into indecomposable summands, each certified
/// by `dim End - dim rad End = 1`. Deterministic for a given input.
pub fn krull_schmidt(t: &MatTuple) -> Result<Decomposition> {
    let (m, n) = t.shape();
    let needed = (m * m + n * n) as u64;
    let p = t.field().p();
    if p <= needed {
        return Err(Error::CharacteristicTooSmall { p, needed });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x4b72_756c_6c53);
    let (parts, witness) = decompose_node(t, &mut rng)?;
    let (summands, certificates): (Vec<_>, Vec<_>) = parts.into_iter().unzip();
    let dec = sort_summands(t, summands, certificates, witness)?;
    if !dec.verify(t) {
        return Err(Error::WitnessInvalid("decomposition witness failed replay".into()));
    }
    Ok(dec)
}

type Parts = Vec<(MatTuple, Certificate)>;

fn decompose_node<R: Rng>(t: &MatTuple, rng: &mut R) -> Result<(Parts, EquivalenceWitness)> {
    let f = t.field();
    let (m, n) = t.shape();
    let identity = EquivalenceWitness::identity(f, m, n);
    if m + n == 0 {
        return Ok((Vec::new(), identity));
    }
    let end = end_ring(t)?;
    let rad = radical_from_basis(&end)?;
    let residue = end.dim() - rad.radical.len();
    let leaf = |residue_degree| {
        let cert = Certificate { end_dim: end.dim(), radical_dim: rad.radical.len(), residue_degree };
        Ok((vec![(t.clone(), cert)], identity.clone()))
    };
    if residue == 1 {
        return leaf(1);
    }
    let Some(split) = find_split(t, &end, rng)? else {
        if residue_field_generator(&end, residue, rng)? {
            return leaf(residue);
        }
        return Err(Error::Uncertified(format!(
            "End has dimension {} over a radical of dimension {}, but neither a splitting idempotent \
             nor a generator of a residue field was found",
            end.dim(),
            rad.radical.len()
        )));
    };
    let (mut left, wl) = decompose_node(&split.first, rng)?;
    let (right, wr) = decompose_node(&split.second, rng)?;
    left.extend(right);
    let w = split.witness.then(&wl.direct_sum(&wr)?)?;
    Ok((left, w))
}

fn try_element<R: Rng>(t: &MatTuple, e: &Morphism, rng: &mut R) -> Result<Option<Splitting>> {
    let f = t.field();
    let chi = Poly::charpoly(&e.input)?.mul(&Poly::charpoly(&e.output)?, f);
    if chi.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    for g in chi.irreducible_factors(f, rng)? {
        let ge = e.apply_poly(&g)?;
        if let Some(s) = fitting_unchecked(t, &ge)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Looks for an endomorphism generating End/rad as a field of degree
/// `residue`.
fn residue_field_generator<R: Rng>(end: &HomBasis, residue: usize, rng: &mut R) -> Result<bool> {
    let f = end.source().field();
    let alg = end.algebra()?;
    let d = end.dim();
    let mut candidates: Vec<Vec<Elem>> = (0..d).map(|i| alg.basis_vector(i)).collect();
    for _ in 0..RANDOM_SPLIT_ATTEMPTS {
        candidates.push((0..d).map(|_| f.random(rng)).collect());
    }
    for c in candidates {
        let chi = Poly::charpoly(&alg.left_mul_matrix(&c))?;
        let factors = chi.irreducible_factors(f, rng)?;
        if let [g] = &factors[..] {
            if g.degree() == Some(residue) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn find_split<R: Rng>(t: &MatTuple, end: &HomBasis, rng: &mut R) -> Result<Option<Splitting>> {
    for e in end.basis() {
        if let Some(s) = try_element(t, e, rng)? {
            return Ok(Some(s));
        }
    }
    for _ in 0..RANDOM_SPLIT_ATTEMPTS {
        let e = end.random_element(rng);
        if let Some(s) = try_element(t, &e, rng)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

fn block_offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut acc = 0;
    let mut out = Vec::new();
    for s in sizes {
        out.push(acc);
        acc += s;
    }
    out
}

fn sort_summands(
    t: &MatTuple,
    summands: Vec<MatTuple>,
    certificates: Vec<Certificate>,
    witness: EquivalenceWitness,
) -> Result<Decomposition> {
    let mut order: Vec<usize> = (0..summands.len()).collect();
    order.sort_by_key(|&i| summands[i].shape());
    let row_off = block_offsets(summands.iter().map(|s| s.rows()));
    let col_off = block_offsets(summands.iter().map(|s| s.cols()));
    let mut row_perm = Vec::with_capacity(t.rows());
    let mut col_perm = Vec::with_capacity(t.cols());
    for &i in &order {
        row_perm.extend(row_off[i]..row_off[i] + summands[i].rows());
        col_perm.extend(col_off[i]..col_off[i] + summands[i].cols());
    }
    let witness = EquivalenceWitness {
        left: witness.left.permute_rows(&row_perm),
        right: witness.right.permute_cols(&col_perm),
    };
    let summands_sorted = order.iter().map(|&i| summands[i].clone()).collect();
    let certs_sorted = order.iter().map(|&i| certificates[i].clone()).collect();
    Ok(Decomposition { summands: summands_sorted, certificates: certs_sorted, witness })
}

/// Pairs each tuple of `left` with an equivalent, not yet used tuple of
/// `right`, greedily in order. Returns `(i, j, w)` with `w left[i] = right[j]`.
pub fn match_summands<R: Rng + ?Sized>(
    left: &[MatTuple],
    right: &[MatTuple],
    trials: usize,
    rng: &mut R,
) -> Result<Vec<(usize, usize, EquivalenceWitness)>> {
    if left.len() != right.len() {
        return Err(Error::DimensionMismatch(format!("{} summands vs {}", left.len(), right.len())));
    }
    let mut used = vec![false; right.len()];
    let mut out = Vec::with_capacity(left.len());
    for (i, l) in left.iter().enumerate() {
        let mut hit = None;
        for (j, r) in right.iter().enumerate() {
            if used[j] || l.shape() != r.shape() {
                continue;
            }
            if let Decision::Related(w) = decide_equivalence(l, r, trials, rng)? {
                hit = Some((j, w));
                break;
            }
        }
        let (j, w) = hit.ok_or_else(|| Error::CommonSummand(format!("summand {i} has no equivalent partner")))?;
        used[j] = true;
        out.push((i, j, w));
    }
    Ok(out)
}

/// Witness carrying `(+) left` onto `(+) right` from a summand matching.
pub fn assemble_matching(
    left: &[MatTuple],
    right: &[MatTuple],
    matching: &[(usize, usize, EquivalenceWitness)],
) -> Result<EquivalenceWitness> {
    let first = left.first().or(right.first()).ok_or(Error::EmptyTuple)?;
    let f = first.field();
    let lr = block_offsets(left.iter().map(|s| s.rows()));
    let lc = block_offsets(left.iter().map(|s| s.cols()));
    let rr = block_offsets(right.iter().map(|s| s.rows()));
    let rc = block_offsets(right.iter().map(|s| s.cols()));
    let rows: usize = left.iter().map(|s| s.rows()).sum();
    let cols: usize = left.iter().map(|s| s.cols()).sum();
    let mut big_left = Mat::zeros(f, rows, rows);
    let mut big_right = Mat::zeros(f, cols, cols);
    for (i, j, w) in matching {
        big_left.set_block(rr[*j], lr[*i], &w.left);
        big_right.set_block(lc[*i], rc[*j], &w.right);
    }
    EquivalenceWitness::new(big_left, big_right)
}
