//! Matrix tuples and the group actions on them: equivalence, *congruence,
//! simultaneous similarity and linear substitution of pairs. Every relation
//! is claimed through a witness that can be replayed with [`verify_witness`].

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::Mat;

/// An ordered, nonempty list of matrices of one common size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatTuple {
    mats: Vec<Mat>,
}

impl MatTuple {
    pub fn new(mats: Vec<Mat>) -> Result<MatTuple> {
        let first = mats.first().ok_or(Error::EmptyTuple)?;
        let (shape, field) = (first.shape(), first.field());
        for m in &mats {
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
            if m.shape() != shape {
                return Err(Error::DimensionMismatch(format!("tuple mixes {:?} and {:?}", shape, m.shape())));
            }
        }
        Ok(MatTuple { mats })
    }

    pub fn pair(a: Mat, b: Mat) -> Result<MatTuple> {
        MatTuple::new(vec![a, b])
    }

    /// The `t`-tuple of zero `rows x cols` matrices.
    pub fn zeros(field: Field, t: usize, rows: usize, cols: usize) -> MatTuple {
        MatTuple { mats: vec![Mat::zeros(field, rows, cols); t.max(1)] }
    }

    /// Tuple of `1x1` matrices.
    pub fn scalars(field: Field, vals: &[i64]) -> MatTuple {
        MatTuple::new(vals.iter().map(|&v| Mat::from_i64(field, &[&[v]])).collect()).expect("nonempty scalar tuple")
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rows(&self) -> usize {
        self.mats[0].rows()
    }

    pub fn cols(&self) -> usize {
        self.mats[0].cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.mats[0].shape()
    }

    pub fn field(&self) -> Field {
        self.mats[0].field()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn get(&self, i: usize) -> &Mat {
        &self.mats[i]
    }

    pub fn into_mats(self) -> Vec<Mat> {
        self.mats
    }

    /// Componentwise `(A_i) -> (f(A_i))`.
    pub fn map(&self, mut f: impl FnMut(&Mat) -> Result<Mat>) -> Result<MatTuple> {
        MatTuple::new(self.mats.iter().map(&mut f).collect::<Result<_>>()?)
    }

    pub fn direct_sum(&self, other: &MatTuple) -> Result<MatTuple> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        MatTuple::new(self.mats.iter().zip(&other.mats).map(|(a, b)| a.direct_sum(b)).collect::<Result<_>>()?)
    }

    /// Direct sum of a nonempty list of tuples of equal length.
    pub fn direct_sum_all(parts: &[MatTuple]) -> Result<MatTuple> {
        let (first, rest) = parts.split_first().ok_or(Error::EmptyTuple)?;
        rest.iter().try_fold(first.clone(), |acc, t| acc.direct_sum(t))
    }

    /// `(A_i[rows, cols])`.
    pub fn slice(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> MatTuple {
        MatTuple { mats: self.mats.iter().map(|m| m.slice(rows.clone(), cols.clone())).collect() }
    }

    fn check_pair(&self) -> Result<()> {
        if self.len() != 2 {
            return Err(Error::NotPair(self.len()));
        }
        Ok(())
    }

    fn same_layout(&self, other: &MatTuple) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }
}

/// `R (A_1..A_t) S = (B_1..B_t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub left: Mat,
    pub right: Mat,
}

/// `S* (A_1..A_t) S = (B_1..B_t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceWitness {
    pub s: Mat,
}

/// `S^-1 (A_1..A_t) S = (B_1..B_t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityWitness {
    pub s: Mat,
}

/// A nonsingular `2x2` matrix acting on pairs by
/// `(A, B) -> (r11 A + r12 B, r21 A + r22 B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionMatrix {
    r: Mat,
}

/// Congruence after substitution: `S* (r . (A, B))_i S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClassWitness {
    pub congruence: CongruenceWitness,
    pub substitution: SubstitutionMatrix,
}

impl EquivalenceWitness {
    pub fn new(left: Mat, right: Mat) -> Result<EquivalenceWitness> {
        if !left.is_invertible() || !right.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(EquivalenceWitness { left, right })
    }

    pub fn identity(field: Field, rows: usize, cols: usize) -> EquivalenceWitness {
        EquivalenceWitness { left: Mat::identity(field, rows), right: Mat::identity(field, cols) }
    }

    /// The witness undoing this one.
    pub fn inverse(&self) -> Result<EquivalenceWitness> {
        Ok(EquivalenceWitness { left: self.left.inverse()?, right: self.right.inverse()? })
    }

    /// `other` applied after `self`: `(R'R, SS')`.
    pub fn then(&self, other: &EquivalenceWitness) -> Result<EquivalenceWitness> {
        Ok(EquivalenceWitness { left: other.left.mul(&self.left)?, right: self.right.mul(&other.right)? })
    }

    /// `(R1 + R2, S1 + S2)` block-diagonally; acts on direct sums.
    pub fn direct_sum(&self, other: &EquivalenceWitness) -> Result<EquivalenceWitness> {
        Ok(EquivalenceWitness { left: self.left.direct_sum(&other.left)?, right: self.right.direct_sum(&other.right)? })
    }
}

impl CongruenceWitness {
    pub fn new(s: Mat) -> Result<CongruenceWitness> {
        if !s.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(CongruenceWitness { s })
    }

    pub fn identity(field: Field, n: usize) -> CongruenceWitness {
        CongruenceWitness { s: Mat::identity(field, n) }
    }

    pub fn inverse(&self) -> Result<CongruenceWitness> {
        Ok(CongruenceWitness { s: self.s.inverse()? })
    }

    /// `other` after `self`: `S S'`.
    pub fn then(&self, other: &CongruenceWitness) -> Result<CongruenceWitness> {
        Ok(CongruenceWitness { s: self.s.mul(&other.s)? })
    }

    /// The same transformation viewed as an equivalence `(S*, S)`.
    pub fn as_equivalence(&self) -> EquivalenceWitness {
        EquivalenceWitness { left: self.s.star(), right: self.s.clone() }
    }
}

impl SimilarityWitness {
    pub fn new(s: Mat) -> Result<SimilarityWitness> {
        if !s.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(SimilarityWitness { s })
    }

    pub fn identity(field: Field, n: usize) -> SimilarityWitness {
        SimilarityWitness { s: Mat::identity(field, n) }
    }

    pub fn inverse(&self) -> Result<SimilarityWitness> {
        Ok(SimilarityWitness { s: self.s.inverse()? })
    }

    pub fn then(&self, other: &SimilarityWitness) -> Result<SimilarityWitness> {
        Ok(SimilarityWitness { s: self.s.mul(&other.s)? })
    }
}

impl SubstitutionMatrix {
    pub fn new(field: Field, r11: Elem, r12: Elem, r21: Elem, r22: Elem) -> Result<SubstitutionMatrix> {
        SubstitutionMatrix::from_mat(Mat::new(field, 2, 2, vec![r11, r12, r21, r22])?)
    }

    pub fn from_i64(field: Field, r: [[i64; 2]; 2]) -> Result<SubstitutionMatrix> {
        SubstitutionMatrix::from_mat(Mat::from_i64(field, &[&r[0], &r[1]]))
    }

    pub fn from_mat(r: Mat) -> Result<SubstitutionMatrix> {
        if r.shape() != (2, 2) {
            return Err(Error::DimensionMismatch(format!("substitution matrix is {:?}", r.shape())));
        }
        if r.det()?.is_zero() {
            return Err(Error::SingularSubstitution);
        }
        Ok(SubstitutionMatrix { r })
    }

    pub fn identity(field: Field) -> SubstitutionMatrix {
        SubstitutionMatrix { r: Mat::identity(field, 2) }
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.r.get(i, j)
    }

    pub fn as_mat(&self) -> &Mat {
        &self.r
    }

    pub fn field(&self) -> Field {
        self.r.field()
    }

    pub fn is_diagonal(&self) -> bool {
        self.r.get(0, 1).is_zero() && self.r.get(1, 0).is_zero()
    }

    pub fn inverse(&self) -> Result<SubstitutionMatrix> {
        Ok(SubstitutionMatrix { r: self.r.inverse()? })
    }
}

fn conform(what: &str) -> Error {
    Error::DimensionMismatch(what.to_string())
}

/// `(R A_i S)`.
pub fn apply_equivalence(w: &EquivalenceWitness, t: &MatTuple) -> Result<MatTuple> {
    if w.left.cols() != t.rows() || w.right.rows() != t.cols() || !w.left.is_square() || !w.right.is_square() {
        return Err(conform("equivalence witness does not fit the tuple"));
    }
    if !w.left.is_invertible() || !w.right.is_invertible() {
        return Err(Error::Singular);
    }
    t.map(|a| w.left.mul(a)?.mul(&w.right))
}

/// `(S* A_i S)`.
pub fn apply_star_congruence(w: &CongruenceWitness, t: &MatTuple) -> Result<MatTuple> {
    if !t.is_square() || !w.s.is_square() || w.s.rows() != t.rows() {
        return Err(conform("congruence needs a square tuple matching the witness"));
    }
    if !w.s.is_invertible() {
        return Err(Error::Singular);
    }
    let ss = w.s.star();
    t.map(|a| ss.mul(a)?.mul(&w.s))
}

/// `(S^-1 A_i S)`.
pub fn apply_similarity(w: &SimilarityWitness, t: &MatTuple) -> Result<MatTuple> {
    if !t.is_square() || !w.s.is_square() || w.s.rows() != t.rows() {
        return Err(conform("similarity needs a square tuple matching the witness"));
    }
    let inv = w.s.inverse()?;
    t.map(|a| inv.mul(a)?.mul(&w.s))
}

/// `(r11 A + r12 B, r21 A + r22 B)`.
pub fn apply_substitution(r: &SubstitutionMatrix, pair: &MatTuple) -> Result<MatTuple> {
    pair.check_pair()?;
    if r.field() != pair.field() {
        return Err(Error::FieldMismatch);
    }
    let (a, b) = (pair.get(0), pair.get(1));
    let first = a.scale(r.get(0, 0)).add(&b.scale(r.get(0, 1)))?;
    let second = a.scale(r.get(1, 0)).add(&b.scale(r.get(1, 1)))?;
    MatTuple::pair(first, second)
}

/// Substitution followed by *congruence.
pub fn apply_pair_class(w: &PairClassWitness, pair: &MatTuple) -> Result<MatTuple> {
    apply_star_congruence(&w.congruence, &apply_substitution(&w.substitution, pair)?)
}

/// A witness of any kind, tagged for serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Equivalence(EquivalenceWitness),
    Congruence(CongruenceWitness),
    Similarity(SimilarityWitness),
    Substitution { r: SubstitutionMatrix },
    PairClass(PairClassWitness),
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Equivalence(_) => "equivalence",
            Witness::Congruence(_) => "congruence",
            Witness::Similarity(_) => "similarity",
            Witness::Substitution { .. } => "substitution",
            Witness::PairClass(_) => "pair-class",
        }
    }

    pub fn apply(&self, t: &MatTuple) -> Result<MatTuple> {
        match self {
            Witness::Equivalence(w) => apply_equivalence(w, t),
            Witness::Congruence(w) => apply_star_congruence(w, t),
            Witness::Similarity(w) => apply_similarity(w, t),
            Witness::Substitution { r } => apply_substitution(r, t),
            Witness::PairClass(w) => apply_pair_class(w, t),
        }
    }
}

/// Replays `w` on `t` and compares with `u` entry for entry. Any error in
/// the replay (singular witness, wrong extents) counts as a failed check.
pub fn verify_witness(w: &Witness, t: &MatTuple, u: &MatTuple) -> bool {
    if t.same_layout(u).is_err() {
        return false;
    }
    matches!(w.apply(t), Ok(img) if &img == u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    #[test]
    fn tuple_invariants() {
        let f = f7();
        assert_eq!(MatTuple::new(vec![]), Err(Error::EmptyTuple));
        assert!(MatTuple::new(vec![Mat::zeros(f, 1, 2), Mat::zeros(f, 2, 1)]).is_err());
        let f5 = Field::prime(5).unwrap();
        assert_eq!(MatTuple::new(vec![Mat::zeros(f, 1, 1), Mat::zeros(f5, 1, 1)]), Err(Error::FieldMismatch));
    }

    #[test]
    fn equivalence_examples() {
        let f = f7();
        let t = MatTuple::scalars(f, &[1, 4]);
        let w = EquivalenceWitness::new(Mat::from_i64(f, &[&[2]]), Mat::from_i64(f, &[&[3]])).unwrap();
        assert_eq!(apply_equivalence(&w, &t).unwrap(), MatTuple::scalars(f, &[6, 3]));
        assert_eq!(apply_equivalence(&EquivalenceWitness::identity(f, 1, 1), &t).unwrap(), t);
    }

    #[test]
    fn equivalence_composition_law() {
        let f = f7();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = MatTuple::new(vec![Mat::random(f, 2, 2, &mut rng), Mat::random(f, 2, 2, &mut rng)]).unwrap();
        let w1 = EquivalenceWitness::new(Mat::random_invertible(f, 2, &mut rng), Mat::random_invertible(f, 2, &mut rng)).unwrap();
        let w2 = EquivalenceWitness::new(Mat::random_invertible(f, 2, &mut rng), Mat::random_invertible(f, 2, &mut rng)).unwrap();
        let twice = apply_equivalence(&w2, &apply_equivalence(&w1, &t).unwrap()).unwrap();
        assert_eq!(apply_equivalence(&w1.then(&w2).unwrap(), &t).unwrap(), twice);
    }

    #[test]
    fn star_congruence_examples() {
        let f = f7();
        let t = MatTuple::pair(Mat::from_i64(f, &[&[1, 0], &[0, 2]]), Mat::from_i64(f, &[&[0, 1], &[0, 0]])).unwrap();
        let s = CongruenceWitness::new(Mat::from_i64(f, &[&[0, 1], &[1, 0]])).unwrap();
        let expect = MatTuple::pair(Mat::from_i64(f, &[&[2, 0], &[0, 1]]), Mat::from_i64(f, &[&[0, 0], &[1, 0]])).unwrap();
        assert_eq!(apply_star_congruence(&s, &t).unwrap(), expect);

        let f9 = Field::new(3, 2).unwrap();
        let one = MatTuple::new(vec![Mat::identity(f9, 1)]).unwrap();
        let st = CongruenceWitness::new(Mat::new(f9, 1, 1, vec![f9.t().unwrap()]).unwrap()).unwrap();
        // (-t) * 1 * t = -2 = 1
        assert_eq!(apply_star_congruence(&st, &one).unwrap(), one);
    }

    #[test]
    fn substitution_examples() {
        let f5 = Field::prime(5).unwrap();
        let pair = MatTuple::scalars(f5, &[1, 2]);
        let id = SubstitutionMatrix::identity(f5);
        assert_eq!(apply_substitution(&id, &pair).unwrap(), pair);
        let swap = SubstitutionMatrix::from_i64(f5, [[0, 1], [1, 0]]).unwrap();
        assert_eq!(apply_substitution(&swap, &pair).unwrap(), MatTuple::scalars(f5, &[2, 1]));
        let shear = SubstitutionMatrix::from_i64(f5, [[1, 1], [0, 1]]).unwrap();
        assert_eq!(apply_substitution(&shear, &pair).unwrap(), MatTuple::scalars(f5, &[3, 2]));
        assert_eq!(SubstitutionMatrix::from_i64(f5, [[1, 2], [2, 4]]), Err(Error::SingularSubstitution));
        assert_eq!(apply_substitution(&id, &MatTuple::scalars(f5, &[1, 2, 3])), Err(Error::NotPair(3)));
    }

    #[test]
    fn direct_sum_and_verify() {
        let f = f7();
        let s = MatTuple::scalars(f, &[1, 0]).direct_sum(&MatTuple::scalars(f, &[0, 1])).unwrap();
        assert_eq!(s.get(0), &Mat::from_i64(f, &[&[1, 0], &[0, 0]]));
        assert_eq!(s.get(1), &Mat::from_i64(f, &[&[0, 0], &[0, 1]]));
        assert_eq!(MatTuple::scalars(f, &[1]).direct_sum(&s), Err(Error::LengthMismatch(1, 2)));

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = MatTuple::new(vec![Mat::random(f, 3, 3, &mut rng), Mat::random(f, 3, 3, &mut rng)]).unwrap();
        let id = Witness::Similarity(SimilarityWitness::identity(f, 3));
        assert!(verify_witness(&id, &t, &t));
        let c = CongruenceWitness::new(Mat::random_invertible(f, 3, &mut rng)).unwrap();
        let u = apply_star_congruence(&c, &t).unwrap();
        assert!(verify_witness(&Witness::Congruence(c), &t, &u));
        assert!(!verify_witness(&id, &t, &u) || t == u);
    }
}
