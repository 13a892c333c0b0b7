//! Exact arithmetic in `F_p` and `F_{p^2}`.
//!
//! `F_{p^2}` is presented as `F_p[t]/(t^2 - d)` with `d` the smallest positive
//! quadratic nonresidue. The involution is the identity on `F_p` and
//! `c0 + c1 t -> c0 - c1 t` on `F_{p^2}`.
//!
//! Matrices store raw [`Elem`] coordinate pairs and carry their [`Field`]
//! once; [`Scalar`] is the field-tagged value used at API boundaries.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Raw coordinates `c0 + c1 t` of a field element. Meaningless without the
/// [`Field`] it belongs to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    pub c0: u64,
    pub c1: u64,
}

impl Elem {
    pub const ZERO: Elem = Elem { c0: 0, c1: 0 };
    pub const ONE: Elem = Elem { c0: 1, c1: 0 };

    #[inline]
    pub fn is_zero(self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }
}

/// A prime field `F_p` (`deg == 1`) or its quadratic extension (`deg == 2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldSerde", into = "FieldSerde")]
pub struct Field {
    p: u64,
    deg: u32,
    nonresidue: u64,
}

#[derive(Serialize, Deserialize)]
struct FieldSerde {
    p: u64,
    deg: u32,
}

impl TryFrom<FieldSerde> for Field {
    type Error = Error;
    fn try_from(f: FieldSerde) -> Result<Field> {
        Field::new(f.p, f.deg)
    }
}

impl From<Field> for FieldSerde {
    fn from(f: Field) -> FieldSerde {
        FieldSerde { p: f.p, deg: f.deg }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Field {
    /// Builds `F_p` or `F_{p^2}`. For `deg == 2` the nonresidue is the
    /// smallest positive `d` with `d^((p-1)/2) = -1`.
    pub fn new(p: u64, deg: u32) -> Result<Field> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::ModulusTooLarge(p));
        }
        let nonresidue = match deg {
            1 => 0,
            2 => (2..p)
                .find(|&d| pow_mod(d, (p - 1) / 2, p) == p - 1)
                .expect("every odd prime has a nonresidue"),
            other => return Err(Error::BadDegree(other)),
        };
        Ok(Field { p, deg, nonresidue })
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn deg(&self) -> u32 {
        self.deg
    }

    /// The `d` with `t^2 = d`, present only for the quadratic extension.
    pub fn nonresidue(&self) -> Option<u64> {
        (self.deg == 2).then_some(self.nonresidue)
    }

    /// Number of elements, `p^deg`.
    pub fn order(&self) -> u64 {
        self.p.pow(self.deg)
    }

    pub fn has_nontrivial_involution(&self) -> bool {
        self.deg == 2
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The generator `t` of the quadratic extension.
    pub fn t(&self) -> Option<Elem> {
        (self.deg == 2).then_some(Elem { c0: 0, c1: 1 })
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        Elem { c0: v.rem_euclid(self.p as i64) as u64, c1: 0 }
    }

    /// `c0 + c1 t`, reducing both coordinates. Errors if `c1 != 0` on a prime field.
    pub fn elem(&self, c0: i64, c1: i64) -> Result<Elem> {
        let c1 = c1.rem_euclid(self.p as i64) as u64;
        if self.deg == 1 && c1 != 0 {
            return Err(Error::InvalidParameter("t-coefficient on a prime field".into()));
        }
        Ok(Elem { c0: c0.rem_euclid(self.p as i64) as u64, c1 })
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.c0 < self.p && a.c1 < self.p && (self.deg == 2 || a.c1 == 0)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        let mut c0 = a.c0 + b.c0;
        if c0 >= p {
            c0 -= p;
        }
        let mut c1 = a.c1 + b.c1;
        if c1 >= p {
            c1 -= p;
        }
        Elem { c0, c1 }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.p;
        Elem {
            c0: if a.c0 == 0 { 0 } else { p - a.c0 },
            c1: if a.c1 == 0 { 0 } else { p - a.c1 },
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        if self.deg == 1 {
            return Elem { c0: a.c0 * b.c0 % p, c1: 0 };
        }
        let bd = a.c1 * b.c1 % p;
        Elem {
            c0: (a.c0 * b.c0 + bd * self.nonresidue) % p,
            c1: (a.c0 * b.c1 + a.c1 * b.c0) % p,
        }
    }

    /// `a * b + c`.
    #[inline]
    pub fn mul_add(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.add(self.mul(a, b), c)
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        let p = self.p;
        if self.deg == 1 {
            return Some(Elem { c0: pow_mod(a.c0, p - 2, p), c1: 0 });
        }
        // (c0 + c1 t)^-1 = (c0 - c1 t) / (c0^2 - d c1^2)
        let norm = (a.c0 * a.c0 % p + p - a.c1 * a.c1 % p * self.nonresidue % p) % p;
        let ninv = pow_mod(norm, p - 2, p);
        Some(Elem { c0: a.c0 * ninv % p, c1: (p - a.c1) % p * ninv % p })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        let binv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, binv))
    }

    pub fn pow(&self, mut base: Elem, mut exp: u64) -> Elem {
        let mut acc = Elem::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// The involution `a -> a-bar`.
    #[inline]
    pub fn conj(&self, a: Elem) -> Elem {
        if self.deg == 1 {
            a
        } else {
            Elem { c0: a.c0, c1: if a.c1 == 0 { 0 } else { self.p - a.c1 } }
        }
    }

    pub fn is_square(&self, a: Elem) -> bool {
        if a.is_zero() {
            return true;
        }
        let q = self.order();
        self.pow(a, (q - 1) / 2) == Elem::ONE
    }

    /// Square root of an element of the prime subfield, inside this field.
    /// Returns `None` when `a` has no root here.
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        if a.c1 != 0 {
            // Only prime-subfield radicands are needed by the library.
            return None;
        }
        if a.is_zero() {
            return Some(Elem::ZERO);
        }
        if let Some(r) = tonelli_shanks(a.c0, self.p) {
            return Some(Elem { c0: r, c1: 0 });
        }
        if self.deg == 2 {
            // a is a nonresidue, so a/d is a residue and sqrt(a) = sqrt(a/d) t.
            let d_inv = pow_mod(self.nonresidue, self.p - 2, self.p);
            let r = tonelli_shanks(a.c0 * d_inv % self.p, self.p)?;
            return Some(Elem { c0: 0, c1: r });
        }
        None
    }

    /// Elements in a fixed order: index `c0 + p c1`.
    pub fn element(&self, index: u64) -> Elem {
        Elem { c0: index % self.p, c1: index / self.p }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        let c0 = rng.gen_range(0..self.p);
        let c1 = if self.deg == 2 { rng.gen_range(0..self.p) } else { 0 };
        Elem { c0, c1 }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    pub fn scalar(&self, a: Elem) -> Scalar {
        Scalar { field: *self, elem: a }
    }

    /// `"c0"` on a prime field, `"c0+c1*t"` on the extension.
    pub fn format(&self, a: Elem) -> String {
        if self.deg == 1 {
            a.c0.to_string()
        } else {
            format!("{}+{}*t", a.c0, a.c1)
        }
    }

    /// Inverse of [`Field::format`]. Also accepts signed integers and the
    /// short forms `"t"`, `"c1*t"`, `"c0-c1*t"`.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("bad scalar {s:?}"));
        let int = |x: &str| x.parse::<i64>().map_err(|_| bad());
        if !s.contains('t') {
            return Ok(self.from_i64(int(&s)?));
        }
        if self.deg == 1 {
            return Err(Error::Parse(format!("{s:?} uses t on a prime field")));
        }
        let body = s.strip_suffix('t').ok_or_else(bad)?;
        let body = body.strip_suffix('*').unwrap_or(body);
        // split at the last sign that is not leading
        let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').last();
        let (c0, c1) = match split {
            Some((i, _)) => {
                let (a, b) = body.split_at(i);
                let b = if b == "+" || b == "-" { format!("{b}1") } else { b.to_string() };
                (int(a)?, int(b.trim_start_matches('+'))?)
            }
            None => {
                let b = match body {
                    "" | "+" => "1",
                    "-" => "-1",
                    other => other,
                };
                (0, int(b)?)
            }
        };
        self.elem(c0, c1)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^2 (t^2 = {})", self.p, self.nonresidue)
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// `"P"` or `"P,2"`.
    fn from_str(s: &str) -> Result<Field> {
        let mut parts = s.split(',');
        let p = parts
            .next()
            .and_then(|x| x.trim().parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("bad field {s:?}")))?;
        let deg = match parts.next() {
            None => 1,
            Some(d) => d.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad field {s:?}")))?,
        };
        Field::new(p, deg)
    }
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(n, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = tt * tt % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r)
}

/// A field element together with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: Field,
    elem: Elem,
}

/// The four operations of [`Scalar::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn new(field: Field, elem: Elem) -> Result<Scalar> {
        if !field.contains(elem) {
            return Err(Error::InvalidParameter(format!("{elem:?} is not reduced in {field}")));
        }
        Ok(Scalar { field, elem })
    }

    pub fn from_i64(field: Field, v: i64) -> Scalar {
        Scalar { field, elem: field.from_i64(v) }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn c0(&self) -> u64 {
        self.elem.c0
    }

    pub fn c1(&self) -> u64 {
        self.elem.c1
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    pub fn involute(&self) -> Scalar {
        Scalar { field: self.field, elem: self.field.conj(self.elem) }
    }

    pub fn inv(&self) -> Result<Scalar> {
        let e = self.field.inv(self.elem).ok_or(Error::DivisionByZero)?;
        Ok(Scalar { field: self.field, elem: e })
    }

    /// Checked arithmetic: errors on field mismatch and on division by zero.
    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = self.field;
        let (a, b) = (self.elem, other.elem);
        let elem = match op {
            ArithOp::Add => f.add(a, b),
            ArithOp::Sub => f.sub(a, b),
            ArithOp::Mul => f.mul(a, b),
            ArithOp::Div => f.div(a, b)?,
        };
        Ok(Scalar { field: f, elem })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.elem))
    }
}

// Operator sugar; panics on field mismatch or division by zero. Use
// `Scalar::arith` when either can happen.
macro_rules! scalar_op {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.arith(&rhs, $op).expect(concat!("scalar ", stringify!($method)))
            }
        }
    };
}

scalar_op!(Add, add, ArithOp::Add);
scalar_op!(Sub, sub, ArithOp::Sub);
scalar_op!(Mul, mul, ArithOp::Mul);
scalar_op!(Div, div, ArithOp::Div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { field: self.field, elem: self.field.neg(self.elem) }
    }
}
