//! Arithmetic in GF(p^h) backed by exp/log tables.
//!
//! Elements are identified by an index in `0..q`: the base-p digits of the
//! index, least significant first, are the coefficients of the element as a
//! polynomial modulo the field's defining polynomial. Index 0 is zero and
//! index 1 is one. This order is used for every "least element" choice in
//! the crate.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted unless overridden.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 16;

/// Above this order (odd characteristic, h > 1) addition is done digit by
/// digit instead of through a q x q table.
const ADD_TABLE_MAX_ORDER: u32 = 1024;

/// Parameters of a finite field: characteristic, extension degree and the
/// monic defining polynomial (coefficients ascending, length `h + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub h: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u32 {
        self.p.pow(self.h)
    }
}

/// A field element, stored as its index in the field's element order.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Wraps a raw index. Range is only checked by [`Field::elem`].
    pub const fn new(index: u32) -> Elem {
        Elem(index)
    }

    #[inline]
    pub const fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
enum Adder {
    Xor,
    Modular,
    Table(Vec<u32>),
    Digits,
}

/// GF(p^h) with precomputed exp/log tables. Immutable once built.
#[derive(Debug)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    adder: Adder,
    neg: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    primitive: Elem,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p).
fn gfp_poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let t = (lead as u64 * bi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

fn base_p_digits(mut index: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push(index % p);
        index /= p;
    }
    d
}

fn from_base_p(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible_gfp(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for tail in 0..count {
            let mut divisor = base_p_digits(tail, p, d);
            divisor.push(1);
            if gfp_poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds GF(p^h). Without a modulus the least monic irreducible of
    /// degree `h` (in element-index order of its lower coefficients) is used.
    pub fn new(p: u32, h: u32, modulus: Option<&[u32]>) -> Result<Arc<Field>> {
        Self::with_max_order(p, h, modulus, DEFAULT_MAX_ORDER)
    }

    pub fn prime(p: u32) -> Result<Arc<Field>> {
        Self::new(p, 1, None)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Arc<Field>> {
        if spec.h == 1 {
            Self::new(spec.p, 1, None)
        } else {
            Self::new(spec.p, spec.h, Some(&spec.modulus))
        }
    }

    pub fn with_max_order(p: u32, h: u32, modulus: Option<&[u32]>, max_order: u64) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if h == 0 {
            return Err(Error::InvalidParameters("extension degree must be at least 1".into()));
        }
        let size = (p as u64).checked_pow(h).unwrap_or(u64::MAX);
        if size > max_order || size > DEFAULT_MAX_ORDER.max(max_order).min(u32::MAX as u64) {
            return Err(Error::FieldTooLarge { size, max: max_order });
        }
        let q = size as u32;
        let modulus = if h == 1 {
            vec![0, 1]
        } else if let Some(m) = modulus {
            if m.len() != h as usize + 1 || m[h as usize] != 1 {
                return Err(Error::InvalidModulus(format!("expected {} monic coefficients (ascending)", h + 1)));
            }
            if let Some(&bad) = m.iter().find(|&&c| c >= p) {
                return Err(Error::InvalidModulus(format!("coefficient {bad} is not a digit mod {p}")));
            }
            if !is_irreducible_gfp(m, p) {
                return Err(Error::ReducibleModulus(p));
            }
            m.to_vec()
        } else {
            (0..p.pow(h))
                .map(|tail| {
                    let mut m = base_p_digits(tail, p, h as usize);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible_gfp(m, p))
                .expect("an irreducible polynomial of every degree exists")
        };
        let spec = FieldSpec { p, h, modulus };
        Ok(Arc::new(Self::build(spec, q)))
    }

    fn build(spec: FieldSpec, q: u32) -> Field {
        let p = spec.p;
        let h = spec.h as usize;
        let slow_mul = |a: u32, b: u32| -> u32 {
            if h == 1 {
                return (a as u64 * b as u64 % p as u64) as u32;
            }
            let da = base_p_digits(a, p, h);
            let db = base_p_digits(b, p, h);
            let mut prod = vec![0u32; 2 * h - 1];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
                }
            }
            from_base_p(&gfp_poly_rem(&prod, &spec.modulus, p), p)
        };

        let primitive = if q == 2 {
            1
        } else {
            (2..q)
                .find(|&g| {
                    let mut x = g;
                    for _ in 1..q - 1 {
                        if x == 1 {
                            return false;
                        }
                        x = slow_mul(x, g);
                    }
                    x == 1
                })
                .expect("the multiplicative group is cyclic")
        };
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = slow_mul(x, primitive);
        }
        for i in order..exp.len() {
            exp[i] = exp[i - order];
        }

        let add_digits = |a: u32, b: u32| -> u32 {
            let da = base_p_digits(a, p, h);
            let db = base_p_digits(b, p, h);
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            from_base_p(&s, p)
        };
        let adder = if p == 2 {
            Adder::Xor
        } else if h == 1 {
            Adder::Modular
        } else if q <= ADD_TABLE_MAX_ORDER {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(a, b);
                }
            }
            Adder::Table(t)
        } else {
            Adder::Digits
        };
        let neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = base_p_digits(a, p, h).iter().map(|&x| (p - x) % p).collect();
                from_base_p(&d, p)
            })
            .collect();

        Field { spec, q, adder, neg, exp, log, primitive: Elem(primitive) }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn h(&self) -> u32 {
        self.spec.h
    }

    pub fn is_even(&self) -> bool {
        self.spec.p == 2
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.q {
            Ok(Elem(index))
        } else {
            Err(Error::ElementOutOfRange { index, q: self.q })
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(Elem)
    }

    /// Coefficient digits of `a`, lowest degree first.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        base_p_digits(a.0, self.spec.p, self.spec.h as usize)
    }

    /// Image of the integer `n` in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        let p = self.spec.p as i64;
        Elem(n.rem_euclid(p) as u32)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.adder {
            Adder::Xor => Elem(a.0 ^ b.0),
            Adder::Modular => {
                let s = a.0 + b.0;
                Elem(if s >= self.q { s - self.q } else { s })
            }
            Adder::Table(t) => Elem(t[(a.0 * self.q + b.0) as usize]),
            Adder::Digits => {
                let p = self.spec.p;
                let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
                while x > 0 || y > 0 {
                    out += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    place *= p;
                }
                Elem(out)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            Elem::ZERO
        } else {
            Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
        }
    }

    #[inline]
    pub fn try_inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            None
        } else {
            let l = self.log[a.0 as usize];
            Some(Elem(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]))
        }
    }

    /// Panics on zero; use [`Field::try_inv`] when zero is possible.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.try_inv(a).expect("inverse of zero")
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Elem(self.exp[((l * (e % order)) % order) as usize])
    }

    /// Discrete logarithm to the base [`Field::primitive`].
    #[inline]
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a.0 == 0 {
            None
        } else {
            Some(self.log[a.0 as usize])
        }
    }

    #[inline]
    pub fn exp(&self, i: u32) -> Elem {
        Elem(self.exp[(i % (self.q - 1).max(1)) as usize])
    }

    /// Zero counts as a square.
    pub fn is_square(&self, a: Elem) -> bool {
        self.is_even() || a.0 == 0 || self.log[a.0 as usize] % 2 == 0
    }

    /// Least-index non-square of GF(q)^x. Only exists for odd q.
    pub fn nonsquare_epsilon(&self) -> Result<Elem> {
        if self.is_even() {
            return Err(Error::NoNonSquare(self.q));
        }
        Ok(self.nonzero_elements().find(|&a| !self.is_square(a)).expect("odd q has non-squares"))
    }

    /// The set of sums of `k` distinct field elements, sorted by index.
    pub fn sums_of_k_distinct(&self, k: usize) -> Result<Vec<Elem>> {
        let q = self.q as usize;
        if k > q {
            return Err(Error::InvalidParameters(format!("k = {k} exceeds q = {q}")));
        }
        let cost = (q as u64) * (q as u64) * (k.max(1) as u64);
        if cost > crate::search::DEFAULT_BUDGET {
            return Err(Error::BudgetExceeded { needed: cost, budget: crate::search::DEFAULT_BUDGET });
        }
        // reach[j][s]: some j-subset of the elements seen so far sums to s
        let mut reach = vec![vec![false; q]; k + 1];
        reach[0][0] = true;
        for (seen, x) in self.elements().enumerate() {
            for j in (1..=k.min(seen + 1)).rev() {
                let (lo, hi) = reach.split_at_mut(j);
                for s in 0..q {
                    if lo[j - 1][s] {
                        hi[0][self.add(Elem(s as u32), x).0 as usize] = true;
                    }
                }
            }
        }
        Ok((0..q).filter(|&s| reach[k][s]).map(|s| Elem(s as u32)).collect())
    }

    /// Binds an element to this field for operator-style arithmetic.
    pub fn bind(&self, a: Elem) -> Fq<'_> {
        Fq { index: a, field: self }
    }
}

/// A field element carrying a reference to its field.
#[derive(Copy, Clone, Debug)]
pub struct Fq<'f> {
    index: Elem,
    field: &'f Field,
}

impl PartialEq for Fq<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.field == other.field
    }
}

impl Eq for Fq<'_> {}

impl<'f> Fq<'f> {
    pub fn elem(self) -> Elem {
        self.index
    }

    pub fn field(self) -> &'f Field {
        self.field
    }

    fn same_field(self, other: Fq<'_>) -> Result<()> {
        if std::ptr::eq(self.field, other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn checked_add(self, rhs: Fq<'_>) -> Result<Fq<'f>> {
        self.same_field(rhs)?;
        Ok(self.field.bind(self.field.add(self.index, rhs.index)))
    }

    pub fn checked_sub(self, rhs: Fq<'_>) -> Result<Fq<'f>> {
        self.same_field(rhs)?;
        Ok(self.field.bind(self.field.sub(self.index, rhs.index)))
    }

    pub fn checked_mul(self, rhs: Fq<'_>) -> Result<Fq<'f>> {
        self.same_field(rhs)?;
        Ok(self.field.bind(self.field.mul(self.index, rhs.index)))
    }

    pub fn checked_div(self, rhs: Fq<'_>) -> Result<Fq<'f>> {
        self.same_field(rhs)?;
        self.checked_mul(rhs.inv()?)
    }

    pub fn inv(self) -> Result<Fq<'f>> {
        self.field.try_inv(self.index).map(|i| self.field.bind(i)).ok_or(Error::ZeroInverse)
    }

    pub fn pow(self, e: u64) -> Fq<'f> {
        self.field.bind(self.field.pow(self.index, e))
    }
}

macro_rules! fq_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'f> $tr for Fq<'f> {
            type Output = Fq<'f>;

            /// Panics when the operands come from different fields.
            fn $method(self, rhs: Fq<'f>) -> Fq<'f> {
                self.$checked(rhs).expect("field arithmetic")
            }
        }
    };
}

fq_binop!(Add, add, checked_add);
fq_binop!(Sub, sub, checked_sub);
fq_binop!(Mul, mul, checked_mul);
fq_binop!(Div, div, checked_div);

impl<'f> Neg for Fq<'f> {
    type Output = Fq<'f>;

    fn neg(self) -> Fq<'f> {
        self.field.bind(self.field.neg(self.index))
    }
}

impl fmt::Display for Fq<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index.0)
    }
}
