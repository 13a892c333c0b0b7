//! Univariate polynomials over a [`Field`], just enough to factor small
//! characteristic polynomials: gcd, modular powers, distinct-degree and
//! equal-degree (Cantor–Zassenhaus) splitting.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::Mat;

/// Coefficients, lowest degree first, with no trailing zeros. The zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(pub Vec<Elem>);

impl Poly {
    pub fn new(mut c: Vec<Elem>) -> Poly {
        while c.last().is_some_and(|e| e.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![Elem::ONE])
    }

    /// `x`.
    pub fn x() -> Poly {
        Poly(vec![Elem::ZERO, Elem::ONE])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.0.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.0
    }

    pub fn add(&self, o: &Poly, f: Field) -> Poly {
        let n = self.0.len().max(o.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).copied().unwrap_or(Elem::ZERO);
        Poly::new((0..n).map(|i| f.add(get(self, i), get(o, i))).collect())
    }

    pub fn sub(&self, o: &Poly, f: Field) -> Poly {
        self.add(&o.scale(f.neg(Elem::ONE), f), f)
    }

    pub fn scale(&self, c: Elem, f: Field) -> Poly {
        Poly::new(self.0.iter().map(|a| f.mul(*a, c)).collect())
    }

    pub fn mul(&self, o: &Poly, f: Field) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = f.mul_add(*a, *b, out[i + j]);
            }
        }
        Poly::new(out)
    }

    pub fn monic(&self, f: Field) -> Poly {
        match f.inv(self.lead()) {
            Some(inv) => self.scale(inv, f),
            None => Poly::zero(),
        }
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &Poly, f: Field) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = f.inv(d.lead()).expect("nonzero leading coefficient");
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Elem::ZERO; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            q[k] = c;
            if c.is_zero() {
                continue;
            }
            let nc = f.neg(c);
            for (j, dj) in d.0.iter().enumerate() {
                r[k + j] = f.mul_add(nc, *dj, r[k + j]);
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly, f: Field) -> Poly {
        self.divrem(d, f).1
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly, f: Field) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: Field) -> Poly {
        Poly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| f.mul(f.from_i64(i as i64), *c)).collect())
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly, f: Field) -> Poly {
        let mut acc = Poly::one().rem(m, f);
        let mut base = self.rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(m, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f).rem(m, f);
            }
        }
        acc
    }

    pub fn eval(&self, x: Elem, f: Field) -> Elem {
        self.0.iter().rev().fold(Elem::ZERO, |acc, c| f.mul_add(acc, x, *c))
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_mat(&self, m: &Mat) -> Result<Mat> {
        let f = m.field();
        let n = m.rows();
        let mut acc = Mat::zeros(f, n, n);
        for c in self.0.iter().rev() {
            acc = acc.mul(m)?.add(&Mat::scalar_matrix(f, n, *c))?;
        }
        Ok(acc)
    }

    /// Characteristic polynomial `det(x I - M)` through reduction to upper
    /// Hessenberg form.
    pub fn charpoly(m: &Mat) -> Result<Poly> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch("charpoly of a non-square matrix".into()));
        }
        let f = m.field();
        let n = m.rows();
        let mut h = m.clone();
        for c in 0..n.saturating_sub(2) {
            let Some(piv) = (c + 1..n).find(|&i| !h.get(i, c).is_zero()) else { continue };
            if piv != c + 1 {
                h.swap_rows(piv, c + 1);
                for i in 0..n {
                    let a = h.get(i, piv);
                    let b = h.get(i, c + 1);
                    h.set(i, piv, b);
                    h.set(i, c + 1, a);
                }
            }
            let inv = f.inv(h.get(c + 1, c)).expect("pivot");
            for i in c + 2..n {
                let u = f.mul(h.get(i, c), inv);
                if u.is_zero() {
                    continue;
                }
                let nu = f.neg(u);
                // row_i -= u row_{c+1}
                for j in 0..n {
                    let v = f.mul_add(nu, h.get(c + 1, j), h.get(i, j));
                    h.set(i, j, v);
                }
                // col_{c+1} += u col_i
                for k in 0..n {
                    let v = f.mul_add(u, h.get(k, i), h.get(k, c + 1));
                    h.set(k, c + 1, v);
                }
            }
        }
        // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
        let mut ps: Vec<Poly> = vec![Poly::one()];
        for k in 0..n {
            let mut pk = ps[k].mul(&Poly::new(vec![f.neg(h.get(k, k)), Elem::ONE]), f);
            let mut prod = Elem::ONE;
            for i in (0..k).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                if prod.is_zero() {
                    break;
                }
                let coef = f.mul(h.get(i, k), prod);
                pk = pk.sub(&ps[i].scale(coef, f), f);
            }
            ps.push(pk);
        }
        Ok(ps.pop().expect("nonempty"))
    }

    /// Distinct monic irreducible factors, sorted by (degree, coefficients).
    /// Needs `deg self < p` so that the squarefree reduction is valid.
    pub fn irreducible_factors<R: Rng + ?Sized>(&self, f: Field, rng: &mut R) -> Result<Vec<Poly>> {
        let d = self.degree().ok_or_else(|| Error::InvalidParameter("factoring zero".into()))?;
        if d as u64 >= f.p() {
            return Err(Error::CharacteristicTooSmall { p: f.p(), needed: d as u64 });
        }
        let m = self.monic(f);
        let sqfree = m.divrem(&Poly::gcd(&m, &m.derivative(f), f), f).0.monic(f);
        let mut out = Vec::new();
        for (deg, part) in distinct_degree(&sqfree, f) {
            equal_degree(&part, deg, f, rng, &mut out);
        }
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }
}

/// `x^(q^k)` reduction helper: returns `g^q mod m`.
fn frobenius(g: &Poly, m: &Poly, f: Field) -> Poly {
    g.pow_mod(f.order(), m, f)
}

fn distinct_degree(sqfree: &Poly, f: Field) -> Vec<(usize, Poly)> {
    let mut out = Vec::new();
    let mut rest = sqfree.clone();
    let mut xq = Poly::x();
    let mut d = 0;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            out.push((rest.degree().unwrap(), rest.clone()));
            break;
        }
        xq = frobenius(&xq, &rest, f);
        let g = Poly::gcd(&rest, &xq.sub(&Poly::x(), f), f);
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.divrem(&g, f).0.monic(f);
            xq = xq.rem(&rest, f);
            out.push((d, g));
        }
    }
    out
}

fn equal_degree<R: Rng + ?Sized>(g: &Poly, d: usize, f: Field, rng: &mut R, out: &mut Vec<Poly>) {
    let n = g.degree().unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(g.monic(f));
        return;
    }
    loop {
        let a = Poly::new((0..n).map(|_| f.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2)
        let mut norm = a.rem(g, f);
        let mut conj = norm.clone();
        for _ in 1..d {
            conj = frobenius(&conj, g, f);
            norm = norm.mul(&conj, f).rem(g, f);
        }
        let b = norm.pow_mod((f.order() - 1) / 2, g, f).sub(&Poly::one(), f);
        let h = Poly::gcd(&b, g, f);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < n {
            let other = g.divrem(&h, f).0;
            equal_degree(&h, d, f, rng, out);
            equal_degree(&other, d, f, rng, out);
            return;
        }
    }
}
