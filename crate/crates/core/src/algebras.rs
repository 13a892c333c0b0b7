//! Finite-dimensional associative algebras given by structure constants,
//! and the correspondence between algebras with `R^3 = 0`, `dim R^2 = 2`
//! and matrix pairs up to congruence and linear substitution.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::gadgets::{build_p35, BigPair, Multiplicities};
use crate::linalg::{Mat, Subspace};
use crate::tuples::{apply_substitution, MatTuple, PairClassWitness};

/// An algebra on `F^dim` with `b_i b_j = sum_k gamma[i][j][k] b_k`.
/// `unital` is the index of a basis element acting as the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraStructure {
    field: Field,
    dim: usize,
    gamma: Vec<Elem>,
    unital: Option<usize>,
}

impl AlgebraStructure {
    pub fn new(field: Field, dim: usize, gamma: Vec<Elem>, unital: Option<usize>) -> Result<AlgebraStructure> {
        if gamma.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!("{} structure constants for dimension {dim}", gamma.len())));
        }
        if gamma.iter().any(|&e| !field.contains(e)) {
            return Err(Error::FieldMismatch);
        }
        let alg = AlgebraStructure { field, dim, gamma, unital: None };
        if let Some(u) = unital {
            if u >= dim || !alg.acts_as_identity(u) {
                return Err(Error::NotUnital);
            }
        }
        Ok(AlgebraStructure { unital, ..alg })
    }

    /// Builds an algebra from a product rule on basis indices.
    pub fn from_fn(
        field: Field,
        dim: usize,
        unital: Option<usize>,
        mut product: impl FnMut(usize, usize) -> Vec<Elem>,
    ) -> Result<AlgebraStructure> {
        let mut gamma = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                if v.len() != dim {
                    return Err(Error::DimensionMismatch("product vector length".into()));
                }
                gamma.extend(v);
            }
        }
        AlgebraStructure::new(field, dim, gamma, unital)
    }

    pub fn zero(field: Field, dim: usize) -> AlgebraStructure {
        AlgebraStructure { field, dim, gamma: vec![Elem::ZERO; dim * dim * dim], unital: None }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unital(&self) -> Option<usize> {
        self.unital
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> Elem {
        self.gamma[(i * self.dim + j) * self.dim + k]
    }

    pub fn set_gamma(&mut self, i: usize, j: usize, k: usize, v: Elem) {
        self.gamma[(i * self.dim + j) * self.dim + k] = v;
        if self.unital.is_some_and(|u| !self.acts_as_identity(u)) {
            self.unital = None;
        }
    }

    /// Coordinates of `b_i b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Elem] {
        let start = (i * self.dim + j) * self.dim;
        &self.gamma[start..start + self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; self.dim];
        v[i] = Elem::ONE;
        v
    }

    pub fn one(&self) -> Option<Vec<Elem>> {
        self.unital.map(|u| self.basis_vector(u))
    }

    pub fn mul(&self, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
        let f = self.field;
        let mut out = vec![Elem::ZERO; self.dim];
        for (i, &ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = f.mul(ui, vj);
                for (o, &g) in out.iter_mut().zip(self.product(i, j)) {
                    if !g.is_zero() {
                        *o = f.mul_add(c, g, *o);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x -> u x` in the basis (column `j` is `u b_j`).
    pub fn left_mul_matrix(&self, u: &[Elem]) -> Mat {
        let cols: Vec<Vec<Elem>> = (0..self.dim).map(|j| self.mul(u, &self.basis_vector(j))).collect();
        Mat::from_columns(self.field, self.dim, &cols)
    }

    fn acts_as_identity(&self, u: usize) -> bool {
        (0..self.dim).all(|j| {
            let e = self.basis_vector(j);
            self.product(u, j) == e.as_slice() && self.product(j, u) == e.as_slice()
        })
    }

    /// First basis triple with `(b_i b_j) b_k != b_i (b_j b_k)`.
    pub fn associativity_defect(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        (0..d).into_par_iter().find_map_first(|i| {
            for j in 0..d {
                let left = self.product(i, j);
                for k in 0..d {
                    let lhs = self.mul(left, &self.basis_vector(k));
                    let rhs = self.mul(&self.basis_vector(i), self.product(j, k));
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
            None
        })
    }

    pub fn check_associativity(&self) -> bool {
        self.associativity_defect().is_none()
    }

    fn require_associative(&self) -> Result<()> {
        match self.associativity_defect() {
            Some((i, j, k)) => Err(Error::NonAssociative(i, j, k)),
            None => Ok(()),
        }
    }

    /// Span of all products `u v` with `u` in `left`, `v` in `right`.
    pub fn product_span(&self, left: &Subspace, right: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for u in left.basis() {
            for v in right.basis() {
                let w = self.mul(u, v);
                if w.iter().any(|e| !e.is_zero()) {
                    vecs.push(w);
                }
            }
        }
        Subspace::span(self.field, self.dim, &vecs)
    }

    pub fn whole(&self) -> Subspace {
        let basis: Vec<Vec<Elem>> = (0..self.dim).map(|i| self.basis_vector(i)).collect();
        Subspace::span(self.field, self.dim, &basis)
    }

    /// `(R^2, R^3)`.
    pub fn power_subspaces(&self) -> (Subspace, Subspace) {
        let whole = self.whole();
        let r2 = self.product_span(&whole, &whole);
        let r3 = self.product_span(&r2, &whole);
        (r2, r3)
    }

    /// Nilpotency index: least `k` with `R^k = 0`, if any.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let whole = self.whole();
        let mut power = whole.clone();
        for k in 1..=self.dim + 1 {
            if power.dim() == 0 {
                return Some(k);
            }
            let next = self.product_span(&power, &whole);
            if next.dim() == power.dim() {
                return None;
            }
            power = next;
        }
        None
    }

    /// Radical of the trace form `(u, v) -> tr(L_{uv})`. For `p > dim` this
    /// is the Jacobson radical.
    pub fn trace_form_radical(&self) -> Result<Subspace> {
        let f = self.field;
        let d = self.dim;
        if f.p() <= d as u64 {
            return Err(Error::CharacteristicTooSmall { p: f.p(), needed: d as u64 });
        }
        let traces: Vec<Elem> = (0..d)
            .map(|l| (0..d).fold(Elem::ZERO, |acc, k| f.add(acc, self.gamma(l, k, k))))
            .collect();
        // row i of the system holds tr(L_{b_j b_i}) over j, so solutions x
        // satisfy tr(L_{x b_i}) = 0 for every i
        let gram = Mat::from_fn(f, d, d, |i, j| {
            self.product(j, i).iter().zip(&traces).fold(Elem::ZERO, |acc, (&g, &t)| f.mul_add(g, t, acc))
        });
        Ok(Subspace::span(f, d, &gram.kernel()))
    }

    pub fn is_nilpotent_element(&self, u: &[Elem]) -> bool {
        let mut power = u.to_vec();
        for _ in 0..=self.dim {
            if power.iter().all(|e| e.is_zero()) {
                return true;
            }
            power = self.mul(&power, u);
        }
        false
    }

    /// Solves `u x = 1`; in a finite-dimensional algebra a right inverse is
    /// two-sided.
    pub fn inverse(&self, u: &[Elem]) -> Result<Option<Vec<Elem>>> {
        let one = self.one().ok_or(Error::NotUnital)?;
        let l = self.left_mul_matrix(u);
        Ok(l.inverse().ok().map(|inv| inv.mul_vec(&one).expect("square")))
    }

    /// Re-expresses the algebra in a new basis; row `i` of `basis` holds the
    /// new `i`-th basis vector in old coordinates.
    pub fn change_basis(&self, basis: &Mat) -> Result<AlgebraStructure> {
        if basis.shape() != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch("basis change must be dim x dim".into()));
        }
        let inv = basis.inverse()?;
        let rows: Vec<Vec<Elem>> = (0..self.dim).map(|i| basis.row(i).to_vec()).collect();
        let to_new = inv.transpose();
        let mut gamma = Vec::with_capacity(self.gamma.len());
        for u in &rows {
            for v in &rows {
                gamma.extend(to_new.mul_vec(&self.mul(u, v))?);
            }
        }
        let unital = self.unital.and_then(|u| {
            let one = self.basis_vector(u);
            rows.iter().position(|r| *r == one)
        });
        let mut out = AlgebraStructure::new(self.field, self.dim, gamma, None)?;
        if let Some(u) = unital {
            if out.acts_as_identity(u) {
                out.unital = Some(u);
            }
        }
        Ok(out)
    }
}

/// The algebra on `F^{2+n}` with basis `e1, e2, f1..fn` where
/// `f_i f_j = a_ij e1 + b_ij e2` and every other basis product is zero.
pub fn decode_pair(a: &Mat, b: &Mat) -> Result<AlgebraStructure> {
    let pair = MatTuple::pair(a.clone(), b.clone())?;
    if !pair.is_square() {
        return Err(Error::DimensionMismatch("decode_pair needs square matrices".into()));
    }
    let f = pair.field();
    let n = a.rows();
    if Mat::from_rows_vec(f, n * n, &[a.to_vec(), b.to_vec()]).rank() < 2 {
        return Err(Error::DependentPair);
    }
    if n == 1 {
        log::warn!("decoding a 1x1 pair; the encoding lemma assumes n >= 2");
    }
    let d = n + 2;
    let mut alg = AlgebraStructure::zero(f, d);
    for i in 0..n {
        for j in 0..n {
            alg.gamma[((2 + i) * d + 2 + j) * d] = a.get(i, j);
            alg.gamma[((2 + i) * d + 2 + j) * d + 1] = b.get(i, j);
        }
    }
    Ok(alg)
}

/// A pair read off an algebra together with the basis used: row `i` of
/// `basis` is the `i`-th new basis vector `e1, e2, f1, ...` in the
/// algebra's coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairEncoding {
    pub a: Mat,
    pub b: Mat,
    pub basis: Mat,
}

pub fn encode_pair(alg: &AlgebraStructure) -> Result<PairEncoding> {
    alg.require_associative()?;
    let (r2, r3) = alg.power_subspaces();
    if r3.dim() != 0 {
        return Err(Error::CubeNonzero);
    }
    if r2.dim() != 2 {
        return Err(Error::SquareDim(r2.dim()));
    }
    let f = alg.field();
    let fs = r2.complete_with_standard();
    let n = fs.len();
    let mut a = Mat::zeros(f, n, n);
    let mut b = Mat::zeros(f, n, n);
    for (i, u) in fs.iter().enumerate() {
        for (j, v) in fs.iter().enumerate() {
            let c = r2.coords(&alg.mul(u, v)).ok_or(Error::SquareDim(r2.dim()))?;
            a.set(i, j, c[0]);
            b.set(i, j, c[1]);
        }
    }
    let rows: Vec<Vec<Elem>> = r2.basis().iter().chain(&fs).cloned().collect();
    let basis = Mat::from_rows_vec(f, alg.dim(), &rows);
    Ok(PairEncoding { a, b, basis })
}

/// Adjoins an identity to a nilpotent algebra; the identity gets index 0 and
/// the old basis is shifted by one.
pub fn adjoin_identity(alg: &AlgebraStructure) -> Result<AlgebraStructure> {
    alg.require_associative()?;
    if alg.nilpotency_index().is_none() {
        return Err(Error::NotNilpotent);
    }
    let d = alg.dim() + 1;
    AlgebraStructure::from_fn(alg.field(), d, Some(0), |i, j| {
        let mut v = vec![Elem::ZERO; d];
        match (i, j) {
            (0, k) | (k, 0) => v[k] = Elem::ONE,
            (i, j) => v[1..].copy_from_slice(alg.product(i - 1, j - 1)),
        }
        v
    })
}

/// Jacobson radical of a unital algebra and whether the algebra is local.
#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub radical: Subspace,
    pub is_local: bool,
}

pub fn radical_and_local(alg: &AlgebraStructure) -> Result<RadicalReport> {
    if alg.unital().is_none() {
        return Err(Error::NotUnital);
    }
    let radical = alg.trace_form_radical()?;
    if let Some(i) = radical.basis().iter().position(|u| !alg.is_nilpotent_element(u)) {
        return Err(Error::Uncertified(format!("radical basis vector {i} is not nilpotent")));
    }
    let is_local = radical.dim() + 1 == alg.dim();
    Ok(RadicalReport { radical, is_local })
}

/// The verified facts about a wild instance.
#[derive(Clone, Debug)]
pub struct WildInstance {
    pub pair: BigPair,
    pub algebra: AlgebraStructure,
    pub radical_dim: usize,
    pub radical_square_dim: usize,
    pub radical_cube_dim: usize,
    pub is_local: bool,
}

/// The local algebra built from the enlarged pair of `(A, B)`: decode, then
/// adjoin an identity.
pub fn wild_instance(a: &Mat, b: &Mat, mult: Multiplicities) -> Result<WildInstance> {
    let pair = build_p35(a, b, mult)?;
    let nonunital = decode_pair(pair.first(), pair.second())?;
    let algebra = adjoin_identity(&nonunital)?;
    let rad = radical_and_local(&algebra)?;
    let sq = algebra.product_span(&rad.radical, &rad.radical);
    let cube = algebra.product_span(&sq, &rad.radical);
    if cube.dim() != 0 {
        return Err(Error::CubeNonzero);
    }
    if sq.dim() != 2 {
        return Err(Error::SquareDim(sq.dim()));
    }
    Ok(WildInstance {
        pair,
        radical_dim: rad.radical.dim(),
        radical_square_dim: sq.dim(),
        radical_cube_dim: cube.dim(),
        is_local: rad.is_local,
        algebra,
    })
}

/// `C = S^T (r11 A + r12 B) S`, `D = S^T (r21 A + r22 B) S`, with the plain
/// transpose whatever the involution.
pub fn apply_plain_pair_class(w: &PairClassWitness, pair: &MatTuple) -> Result<MatTuple> {
    let s = &w.congruence.s;
    let st = s.transpose();
    apply_substitution(&w.substitution, pair)?.map(|m| st.mul(m)?.mul(s))
}

/// The basis change `blockdiag(r, S^-1)` carrying `decode(A, B)` onto
/// `decode(C, D)`; column `j` is the image of basis vector `j`.
pub fn algebra_iso_from_pair_witness(
    w: &PairClassWitness,
    source: &AlgebraStructure,
    target: &AlgebraStructure,
) -> Result<Mat> {
    let from = encode_standard(source)?;
    let to = encode_standard(target)?;
    if apply_plain_pair_class(w, &from)? != to {
        return Err(Error::WitnessInvalid("pair-class witness does not relate the encoded pairs".into()));
    }
    let phi = w.substitution.as_mat().direct_sum(&w.congruence.s.inverse()?)?;
    if !verify_isomorphism(source, target, &phi)? {
        return Err(Error::WitnessInvalid("induced basis change is not multiplicative".into()));
    }
    Ok(phi)
}

/// Reads `(A, B)` off an algebra already in decoded layout.
fn encode_standard(alg: &AlgebraStructure) -> Result<MatTuple> {
    let d = alg.dim();
    if d < 3 {
        return Err(Error::DimensionMismatch("decoded algebras have dimension at least 3".into()));
    }
    let n = d - 2;
    let f = alg.field();
    let a = Mat::from_fn(f, n, n, |i, j| alg.gamma(2 + i, 2 + j, 0));
    let b = Mat::from_fn(f, n, n, |i, j| alg.gamma(2 + i, 2 + j, 1));
    let rebuilt = decode_pair(&a, &b)?;
    if rebuilt.gamma != alg.gamma {
        return Err(Error::InvalidParameter("algebra is not in decoded layout".into()));
    }
    MatTuple::pair(a, b)
}

/// Whether the linear map with matrix `phi` (column `j` = image of `b_j`)
/// is an algebra isomorphism.
pub fn verify_isomorphism(source: &AlgebraStructure, target: &AlgebraStructure, phi: &Mat) -> Result<bool> {
    let d = source.dim();
    if target.dim() != d || phi.shape() != (d, d) {
        return Ok(false);
    }
    if !phi.is_invertible() {
        return Ok(false);
    }
    let images: Vec<Vec<Elem>> = (0..d).map(|j| phi.col(j)).collect();
    let ok = (0..d).into_par_iter().all(|i| {
        (0..d).all(|j| {
            let lhs = phi.mul_vec(source.product(i, j)).expect("sized");
            lhs == target.mul(&images[i], &images[j])
        })
    });
    Ok(ok)
}

/// Lifts a basis change of an algebra to the algebra with an adjoined
/// identity.
pub fn lift_to_unital(phi: &Mat) -> Result<Mat> {
    Mat::identity(phi.field(), 1).direct_sum(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    /// `x, x^2` with `x x = x^2`, optionally with the identity in front.
    fn truncated_poly(field: Field, unital: bool) -> AlgebraStructure {
        let e = |k: usize, d: usize| {
            let mut v = vec![Elem::ZERO; d];
            if k < d {
                v[k] = Elem::ONE;
            }
            v
        };
        if unital {
            // basis 1, x, x^2: b_i b_j = b_{i+j}
            AlgebraStructure::from_fn(field, 3, Some(0), |i, j| e(i + j, 3)).unwrap()
        } else {
            AlgebraStructure::from_fn(field, 2, None, |i, j| e(i + j + 1, 2)).unwrap()
        }
    }

    #[test]
    fn associativity_examples() {
        let f = f(7);
        let alg = truncated_poly(f, true);
        assert!(alg.check_associativity());
        let mut bad = alg.clone();
        // x * x^2 = x^2 instead of 0
        bad.set_gamma(1, 2, 2, Elem::ONE);
        let (i, j, k) = bad.associativity_defect().unwrap();
        let lhs = bad.mul(bad.product(i, j), &bad.basis_vector(k));
        let rhs = bad.mul(&bad.basis_vector(i), bad.product(j, k));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn power_subspace_examples() {
        let f = f(7);
        let a = Mat::from_i64(f, &[&[0, 1], &[0, 0]]);
        let b = Mat::from_i64(f, &[&[0, 0], &[1, 0]]);
        let alg = decode_pair(&a, &b).unwrap();
        let (r2, r3) = alg.power_subspaces();
        assert_eq!((r2.dim(), r3.dim()), (2, 0));
        assert_eq!(alg.product(2, 3), &[Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO]);
        assert_eq!(alg.product(3, 2), &[Elem::ZERO, Elem::ONE, Elem::ZERO, Elem::ZERO]);
        let (z2, z3) = AlgebraStructure::zero(f, 3).power_subspaces();
        assert_eq!((z2.dim(), z3.dim()), (0, 0));
        let (p2, p3) = truncated_poly(f, false).power_subspaces();
        assert_eq!((p2.dim(), p3.dim()), (1, 0));
    }

    #[test]
    fn decode_examples() {
        let f = f(7);
        let alg = decode_pair(&Mat::identity(f, 2), &Mat::diag(f, &[Elem::ONE, f.from_i64(2)])).unwrap();
        let two = f.from_i64(2);
        assert_eq!(alg.product(2, 2), &[Elem::ONE, Elem::ONE, Elem::ZERO, Elem::ZERO]);
        assert_eq!(alg.product(3, 3), &[Elem::ONE, two, Elem::ZERO, Elem::ZERO]);
        assert!(alg.product(2, 3).iter().all(|e| e.is_zero()));
        assert!(alg.check_associativity());
        let err = decode_pair(&Mat::identity(f, 2), &Mat::scalar_matrix(f, 2, two));
        assert_eq!(err.unwrap_err(), Error::DependentPair);
    }

    #[test]
    fn encode_round_trip_and_errors() {
        let f = f(101);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = Mat::random(f, 3, 3, &mut rng);
        let b = Mat::random(f, 3, 3, &mut rng);
        let enc = encode_pair(&decode_pair(&a, &b).unwrap()).unwrap();
        assert_eq!((enc.a, enc.b), (a, b));
        assert!(enc.basis.is_identity());

        let mut thin = AlgebraStructure::zero(f, 3);
        thin.set_gamma(1, 1, 0, Elem::ONE);
        assert_eq!(encode_pair(&thin).unwrap_err(), Error::SquareDim(1));
        assert_eq!(encode_pair(&truncated_poly(f, true)).unwrap_err(), Error::CubeNonzero);
    }

    #[test]
    fn adjoin_examples() {
        let f = f(11);
        let u = adjoin_identity(&AlgebraStructure::zero(f, 1)).unwrap();
        assert_eq!(u.dim(), 2);
        assert_eq!(u.product(1, 1), &[Elem::ZERO, Elem::ZERO]);
        let rad = radical_and_local(&u).unwrap();
        assert!(rad.is_local);

        let g = Field::prime(101).unwrap();
        let alg = decode_pair(&Mat::identity(g, 2), &Mat::from_i64(g, &[&[0, 1], &[0, 0]])).unwrap();
        let lam = adjoin_identity(&alg).unwrap();
        assert_eq!(lam.dim(), 5);
        let r = radical_and_local(&lam).unwrap();
        assert!(r.is_local);
        assert_eq!(r.radical.dim(), 4);
        assert!(adjoin_identity(&truncated_poly(g, true)).is_err());
    }

    #[test]
    fn local_inverse_formula() {
        let f = f(101);
        let lam = adjoin_identity(&decode_pair(&Mat::identity(f, 2), &Mat::from_i64(f, &[&[1, 2], &[3, 4]])).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let a = f.random_nonzero(&mut rng);
            let mut u: Vec<Elem> = (0..lam.dim()).map(|_| f.random(&mut rng)).collect();
            u[0] = Elem::ZERO;
            let mut x = u.clone();
            x[0] = a;
            let ai = f.inv(a).unwrap();
            let u2 = lam.mul(&u, &u);
            let formula: Vec<Elem> = (0..lam.dim())
                .map(|k| {
                    let base = if k == 0 { ai } else { Elem::ZERO };
                    let t1 = f.mul(f.mul(ai, ai), u[k]);
                    let t2 = f.mul(f.pow(ai, 3), u2[k]);
                    f.add(f.sub(base, t1), t2)
                })
                .collect();
            assert_eq!(lam.mul(&x, &formula), lam.one().unwrap());
            assert_eq!(lam.inverse(&u).unwrap(), None);
        }
    }

    #[test]
    fn radical_examples() {
        let f = f(7);
        let split = AlgebraStructure::from_fn(f, 2, None, |i, j| {
            let mut v = vec![Elem::ZERO; 2];
            if i == j {
                v[i] = Elem::ONE;
            }
            v
        })
        .unwrap();
        // F + F has identity (1, 1), which is not a basis vector
        let split = split.change_basis(&Mat::from_i64(f, &[&[1, 1], &[1, 0]])).unwrap();
        let split = AlgebraStructure::new(f, 2, split.gamma.clone(), Some(0)).unwrap();
        let r = radical_and_local(&split).unwrap();
        assert_eq!((r.radical.dim(), r.is_local), (0, false));

        let poly = truncated_poly(f, true);
        let r = radical_and_local(&poly).unwrap();
        assert!(r.is_local);
        assert_eq!(r.radical.basis(), &[
            vec![Elem::ZERO, Elem::ONE, Elem::ZERO],
            vec![Elem::ZERO, Elem::ZERO, Elem::ONE]
        ]);
        assert_eq!(radical_and_local(&truncated_poly(f, false)).unwrap_err(), Error::NotUnital);
    }

    #[test]
    fn change_basis_is_an_isomorphism() {
        let f = f(101);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let alg = decode_pair(&Mat::random(f, 2, 2, &mut rng), &Mat::random(f, 2, 2, &mut rng)).unwrap();
        let p = Mat::random_invertible(f, 4, &mut rng);
        let moved = alg.change_basis(&p).unwrap();
        // old basis vector j has new coordinates given by column j of P^-T
        let phi = p.inverse().unwrap().transpose();
        assert!(verify_isomorphism(&alg, &moved, &phi).unwrap());
        assert!(!verify_isomorphism(&alg, &moved, &Mat::identity(f, 4)).unwrap() || moved == alg);
    }

    #[test]
    fn iso_from_pair_witness_examples() {
        let f = f(101);
        let a = Mat::from_i64(f, &[&[1, 2], &[0, 3]]);
        let b = Mat::from_i64(f, &[&[0, 1], &[4, 0]]);
        let ab = decode_pair(&a, &b).unwrap();
        let ba = decode_pair(&b, &a).unwrap();
        let swap = PairClassWitness {
            congruence: crate::tuples::CongruenceWitness::identity(f, 2),
            substitution: crate::tuples::SubstitutionMatrix::from_i64(f, [[0, 1], [1, 0]]).unwrap(),
        };
        let phi = algebra_iso_from_pair_witness(&swap, &ab, &ba).unwrap();
        assert_eq!(phi, Mat::permutation(f, &[1, 0, 2, 3]));
        let id = PairClassWitness {
            congruence: crate::tuples::CongruenceWitness::identity(f, 2),
            substitution: crate::tuples::SubstitutionMatrix::identity(f),
        };
        assert!(algebra_iso_from_pair_witness(&id, &ab, &ab).unwrap().is_identity());
    }
}
