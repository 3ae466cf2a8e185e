//! Projective spaces over GF(q), moment vectors, the rational normal curve
//! and the action of PGL(2,q).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;

/// A point of PG(1,q). Finite points sort by field index, infinity last.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjLinePoint {
    Finite(Elem),
    Infinity,
}

impl ProjLinePoint {
    pub fn finite(self) -> Option<Elem> {
        match self {
            ProjLinePoint::Finite(x) => Some(x),
            ProjLinePoint::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        self == ProjLinePoint::Infinity
    }

    /// All q+1 points, finite ones in index order, infinity last.
    pub fn all(f: &Field) -> Vec<ProjLinePoint> {
        f.elements().map(ProjLinePoint::Finite).chain([ProjLinePoint::Infinity]).collect()
    }

    /// Checks the element index against the field.
    pub fn validate(self, f: &Field) -> Result<ProjLinePoint> {
        if let ProjLinePoint::Finite(x) = self {
            f.elem(x.index())?;
        }
        Ok(self)
    }
}

impl From<Elem> for ProjLinePoint {
    fn from(x: Elem) -> Self {
        ProjLinePoint::Finite(x)
    }
}

impl fmt::Display for ProjLinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjLinePoint::Finite(x) => write!(f, "{x}"),
            ProjLinePoint::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ProjLinePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(ProjLinePoint::Infinity);
        }
        s.parse::<u32>()
            .map(|i| ProjLinePoint::Finite(Elem::new(i)))
            .map_err(|_| Error::InvalidParameters(format!("bad point {s:?}; expected an element index or \"inf\"")))
    }
}

impl Serialize for ProjLinePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ProjLinePoint::Finite(x) => s.serialize_u32(x.index()),
            ProjLinePoint::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ProjLinePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Index(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Index(i) => Ok(ProjLinePoint::Finite(Elem::new(i))),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// `(1, x, ..., x^{m-1})` for finite `x`, `(0, ..., 0, 1)` for infinity.
pub fn moment_vector(f: &Field, m: usize, x: ProjLinePoint) -> Vec<Elem> {
    match x {
        ProjLinePoint::Finite(x) => {
            let mut v = Vec::with_capacity(m);
            let mut p = Elem::ONE;
            for _ in 0..m {
                v.push(p);
                p = f.mul(p, x);
            }
            v
        }
        ProjLinePoint::Infinity => {
            let mut v = vec![Elem::ZERO; m];
            if m > 0 {
                v[m - 1] = Elem::ONE;
            }
            v
        }
    }
}

/// A point of PG(m-1,q), normalized so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint {
    coords: Vec<Elem>,
}

impl ProjPoint {
    pub fn new(f: &Field, coords: &[Elem]) -> Result<ProjPoint> {
        Self::normalize(f, coords).ok_or(Error::ZeroVector)
    }

    /// Normalized class of `coords`, or `None` for the zero vector.
    pub fn normalize(f: &Field, coords: &[Elem]) -> Option<ProjPoint> {
        let lead = coords.iter().copied().find(|c| !c.is_zero())?;
        let inv = f.inv(lead);
        Some(ProjPoint { coords: coords.iter().map(|&c| f.mul(c, inv)).collect() })
    }

    pub fn from_indices(f: &Field, idx: &[u32]) -> Result<ProjPoint> {
        let coords = idx.iter().map(|&i| f.elem(i)).collect::<Result<Vec<_>>>()?;
        Self::new(f, &coords)
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn indices(&self) -> Vec<u32> {
        self.coords.iter().map(|e| e.index()).collect()
    }

    /// The point of PG(1,q) this represents, when `dim() == 2`.
    pub fn to_line_point(&self, f: &Field) -> Option<ProjLinePoint> {
        match self.coords.as_slice() {
            [a, b] if a.is_zero() && !b.is_zero() => Some(ProjLinePoint::Infinity),
            [a, b] => Some(ProjLinePoint::Finite(f.div(*b, *a))),
            _ => None,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Bijection between PG(m-1,q) and `0..size`, following the lexicographic
/// order of normalized coordinate vectors. Index 0 is `(0, ..., 0, 1)`.
/// Every other index lies in a run `1 + j*q .. 1 + (j+1)*q` of points that
/// agree except in the last coordinate, which runs over all of GF(q).
#[derive(Clone, Debug)]
pub struct ProjSpace {
    m: usize,
    q: u64,
    /// offsets[t]: index of the first point whose leading 1 sits at t
    offsets: Vec<u64>,
}

impl ProjSpace {
    pub fn new(q: u32, m: usize) -> Result<ProjSpace> {
        if m == 0 {
            return Err(Error::InvalidParameters("projective space needs m >= 1".into()));
        }
        let q = q as u64;
        let mut offsets = vec![0u64; m];
        let mut acc: u64 = 0;
        for t in (0..m).rev() {
            offsets[t] = acc;
            let block = q.checked_pow((m - 1 - t) as u32).ok_or(Error::BudgetExceeded { needed: u64::MAX, budget: 0 })?;
            acc = acc.checked_add(block).ok_or(Error::BudgetExceeded { needed: u64::MAX, budget: 0 })?;
        }
        Ok(ProjSpace { m, q, offsets })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> u64 {
        self.offsets[0] + self.q.pow((self.m - 1) as u32)
    }

    pub fn point(&self, index: u64) -> Vec<Elem> {
        let m = self.m;
        let t = (0..m).find(|&t| index >= self.offsets[t]).expect("index in range");
        let mut v = vec![Elem::ZERO; m];
        v[t] = Elem::ONE;
        let mut rest = index - self.offsets[t];
        for j in (t + 1..m).rev() {
            v[j] = Elem::new((rest % self.q) as u32);
            rest /= self.q;
        }
        v
    }

    pub fn proj_point(&self, index: u64) -> ProjPoint {
        ProjPoint { coords: self.point(index) }
    }

    /// Index of an already normalized coordinate vector.
    pub fn index_of(&self, coords: &[Elem]) -> u64 {
        let t = coords.iter().position(|c| !c.is_zero()).expect("nonzero vector");
        let mut v: u64 = 0;
        for c in &coords[t + 1..] {
            v = v * self.q + c.index() as u64;
        }
        self.offsets[t] + v
    }
}

/// An element of PGL(2,q) acting by `x -> (c + d x) / (a + b x)`, stored
/// normalized so the first nonzero of `(a, b, c, d)` is 1.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MobiusTransform {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
}

impl Serialize for MobiusTransform {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a.index(), self.b.index(), self.c.index(), self.d.index()].serialize(s)
    }
}

impl MobiusTransform {
    pub const IDENTITY: MobiusTransform = MobiusTransform { a: Elem::ONE, b: Elem::ZERO, c: Elem::ZERO, d: Elem::ONE };

    pub fn new(f: &Field, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<MobiusTransform> {
        if f.sub(f.mul(a, d), f.mul(b, c)).is_zero() {
            return Err(Error::Singular);
        }
        let v = [a, b, c, d];
        let lead = v.iter().copied().find(|x| !x.is_zero()).expect("nonsingular");
        let inv = f.inv(lead);
        Ok(MobiusTransform { a: f.mul(a, inv), b: f.mul(b, inv), c: f.mul(c, inv), d: f.mul(d, inv) })
    }

    pub fn det(&self, f: &Field) -> Elem {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    pub fn apply(&self, f: &Field, x: ProjLinePoint) -> ProjLinePoint {
        let (num, den) = match x {
            ProjLinePoint::Finite(x) => (f.add(self.c, f.mul(self.d, x)), f.add(self.a, f.mul(self.b, x))),
            ProjLinePoint::Infinity => (self.d, self.b),
        };
        if den.is_zero() {
            ProjLinePoint::Infinity
        } else {
            ProjLinePoint::Finite(f.div(num, den))
        }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, f: &Field, other: &MobiusTransform) -> MobiusTransform {
        let m = |x: Elem, y: Elem, z: Elem, w: Elem| f.add(f.mul(x, y), f.mul(z, w));
        MobiusTransform::new(
            f,
            m(self.a, other.a, self.b, other.c),
            m(self.a, other.b, self.b, other.d),
            m(self.c, other.a, self.d, other.c),
            m(self.c, other.b, self.d, other.d),
        )
        .expect("product of invertible matrices")
    }

    pub fn inverse(&self, f: &Field) -> MobiusTransform {
        MobiusTransform::new(f, self.d, f.neg(self.b), f.neg(self.c), self.a).expect("invertible")
    }

    /// The 2x2 matrix `[[a, b], [c, d]]`.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_rows(vec![vec![self.a, self.b], vec![self.c, self.d]]).expect("2x2")
    }

    /// The symmetric-square action on PG(2,q):
    /// `[[a², 2ab, b²], [ac, ad+bc, bd], [c², 2cd, d²]]`.
    pub fn sym2(&self, f: &Field) -> Matrix {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let two = f.from_int(2);
        Matrix::from_rows(vec![
            vec![f.mul(a, a), f.mul(two, f.mul(a, b)), f.mul(b, b)],
            vec![f.mul(a, c), f.add(f.mul(a, d), f.mul(b, c)), f.mul(b, d)],
            vec![f.mul(c, c), f.mul(two, f.mul(c, d)), f.mul(d, d)],
        ])
        .expect("3x3")
    }

    /// Image of a point of PG(2,q) under the symmetric-square action.
    pub fn act_plane(&self, f: &Field, p: &ProjPoint) -> ProjPoint {
        let v = sym2_apply(f, self, p.coords());
        ProjPoint::normalize(f, &v).expect("invertible action")
    }
}

/// `sym2(g) * v` without materializing the matrix.
pub fn sym2_apply(f: &Field, g: &MobiusTransform, v: &[Elem]) -> Vec<Elem> {
    let (a, b, c, d) = (g.a, g.b, g.c, g.d);
    let two = f.from_int(2);
    let dot = |r: [Elem; 3]| f.add(f.add(f.mul(r[0], v[0]), f.mul(r[1], v[1])), f.mul(r[2], v[2]));
    vec![
        dot([f.mul(a, a), f.mul(two, f.mul(a, b)), f.mul(b, b)]),
        dot([f.mul(a, c), f.add(f.mul(a, d), f.mul(b, c)), f.mul(b, d)]),
        dot([f.mul(c, c), f.mul(two, f.mul(c, d)), f.mul(d, d)]),
    ]
}

/// `sym2_matrix(g)` as a free function.
pub fn sym2_matrix(f: &Field, g: &MobiusTransform) -> Matrix {
    g.sym2(f)
}

/// All of PGL(2,q) as normalized transforms in lexicographic order of
/// `(a, b, c, d)`.
pub fn pgl2(f: &Field) -> Vec<MobiusTransform> {
    let q = f.q();
    let mut out = Vec::with_capacity((q as usize) * (q as usize * q as usize - 1));
    // leading 1 at a
    for b in f.elements() {
        for c in f.elements() {
            for d in f.elements() {
                if f.sub(d, f.mul(b, c)) != Elem::ZERO {
                    out.push(MobiusTransform { a: Elem::ONE, b, c, d });
                }
            }
        }
    }
    // a = 0, b = 1: det = -c
    let mut tail = Vec::new();
    for c in f.nonzero_elements() {
        for d in f.elements() {
            tail.push(MobiusTransform { a: Elem::ZERO, b: Elem::ONE, c, d });
        }
    }
    // the a = 0 block precedes the a = 1 block lexicographically
    tail.extend(out);
    tail
}

/// The q+1 points `[c_m(x)]`, finite x in index order and infinity last.
pub fn rnc_points(f: &Field, m: usize) -> Vec<ProjPoint> {
    ProjLinePoint::all(f)
        .into_iter()
        .map(|x| ProjPoint::new(f, &moment_vector(f, m, x)).expect("moment vectors are nonzero"))
        .collect()
}

/// `(0, ..., 0, 1, 0)` in dimension `m`.
pub fn nucleus_vector(m: usize) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; m];
    v[m - 2] = Elem::ONE;
    v
}

/// The point `(0:1:0)` of PG(2,q).
pub fn nucleus3() -> ProjPoint {
    ProjPoint { coords: nucleus_vector(3) }
}
