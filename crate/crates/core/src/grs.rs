//! Evaluation sets, Reed-Solomon generator/parity pairs, syndromes and the
//! interpolation formulas relating syndromes to generating polynomials.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::geometry::{moment_vector, ProjLinePoint, ProjPoint};
use crate::matrix::{binomial, Matrix};
use crate::poly::Poly;

/// Maximal-minor checks at construction are skipped when a matrix has more
/// column subsets than this.
pub const MDS_CHECK_LIMIT: u64 = 20_000;

/// A received word.
pub type ReceivedWord = Vec<Elem>;

/// Ordered distinct points of PG(1,q) with the derived data `s` and `nu`.
///
/// `s` holds the coefficients of `prod (X - x_i)` over the finite points,
/// highest degree first (`s[0] = 1`). `nu[j]` is `prod_{i != j} 1/(x_j - x_i)`
/// over the finite points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvaluationSet {
    points: Vec<ProjLinePoint>,
    s: Vec<Elem>,
    nu_finite: Vec<Elem>,
}

impl EvaluationSet {
    pub fn new(f: &Field, points: &[ProjLinePoint]) -> Result<EvaluationSet> {
        let mut seen = HashSet::new();
        for (i, p) in points.iter().enumerate() {
            p.validate(f)?;
            if !seen.insert(*p) {
                return Err(Error::DuplicatePoint(p.to_string()));
            }
            if p.is_infinity() && i + 1 != points.len() {
                return Err(Error::InfinityNotLast);
            }
        }
        let finite: Vec<Elem> = points.iter().filter_map(|p| p.finite()).collect();
        let prod = Poly::from_roots(f, &finite);
        let s = (0..=finite.len()).map(|j| prod.coeff(finite.len() - j)).collect();
        let nu_finite = finite
            .iter()
            .enumerate()
            .map(|(j, &xj)| {
                let d = finite
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .fold(Elem::ONE, |acc, (_, &xi)| f.mul(acc, f.sub(xj, xi)));
                f.inv(d)
            })
            .collect();
        Ok(EvaluationSet { points: points.to_vec(), s, nu_finite })
    }

    pub fn from_elements(f: &Field, xs: &[Elem]) -> Result<EvaluationSet> {
        let pts: Vec<ProjLinePoint> = xs.iter().map(|&x| ProjLinePoint::Finite(x)).collect();
        Self::new(f, &pts)
    }

    /// The first `n` field elements in index order.
    pub fn first_n(f: &Field, n: usize) -> Result<EvaluationSet> {
        if n > f.q() as usize {
            return Err(Error::InvalidParameters(format!("only {} finite points exist", f.q())));
        }
        Self::from_elements(f, &f.elements().take(n).collect::<Vec<_>>())
    }

    /// All of PG(1,q), infinity last.
    pub fn full_line(f: &Field) -> EvaluationSet {
        Self::new(f, &ProjLinePoint::all(f)).expect("distinct points")
    }

    pub fn points(&self) -> &[ProjLinePoint] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn has_infinity(&self) -> bool {
        self.points.last().is_some_and(|p| p.is_infinity())
    }

    pub fn finite_points(&self) -> Vec<Elem> {
        self.points.iter().filter_map(|p| p.finite()).collect()
    }

    pub fn contains(&self, p: ProjLinePoint) -> bool {
        self.points.contains(&p)
    }

    pub fn s(&self) -> &[Elem] {
        &self.s
    }

    /// `nu_1..nu_n`; only defined when every point is finite.
    pub fn nu(&self) -> Result<&[Elem]> {
        if self.has_infinity() {
            Err(Error::InfinityPresent)
        } else {
            Ok(&self.nu_finite)
        }
    }

    /// Points of PG(1,q) outside the set, in line order.
    pub fn complement(&self, f: &Field) -> Vec<ProjLinePoint> {
        ProjLinePoint::all(f).into_iter().filter(|p| !self.contains(*p)).collect()
    }
}

/// The matrix `[c_m(x_1) | ... | c_m(x_n)]`.
pub fn moment_matrix(f: &Field, m: usize, points: &[ProjLinePoint]) -> Matrix {
    let cols: Vec<Vec<Elem>> = points.iter().map(|&x| moment_vector(f, m, x)).collect();
    Matrix::from_columns(m, &cols)
}

/// Lower triangular Toeplitz matrix `L[i][j] = s[i - j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerToeplitz {
    s: Vec<Elem>,
    size: usize,
}

impl LowerToeplitz {
    pub fn new(s: &[Elem], size: usize) -> LowerToeplitz {
        LowerToeplitz { s: (0..size).map(|i| s.get(i).copied().unwrap_or(Elem::ZERO)).collect(), size }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        if i < j {
            Elem::ZERO
        } else {
            self.s[i - j]
        }
    }

    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.size, self.size);
        for i in 0..self.size {
            for j in 0..=i {
                m.set(i, j, self.s[i - j]);
            }
        }
        m
    }

    pub fn mul_vec(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        (0..self.size)
            .map(|i| (0..=i).fold(Elem::ZERO, |acc, j| f.add(acc, f.mul(self.s[i - j], v[j]))))
            .collect()
    }
}

/// Syndrome of a received word together with its projective class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Syndrome {
    pub s: Vec<Elem>,
    pub projective: Option<ProjPoint>,
}

impl Syndrome {
    pub fn new(f: &Field, s: Vec<Elem>) -> Syndrome {
        let projective = ProjPoint::normalize(f, &s);
        Syndrome { s, projective }
    }

    pub fn is_zero(&self) -> bool {
        self.projective.is_none()
    }
}

/// An `[n, k]` Reed-Solomon code with generator `G` (columns `c_k(x_i)`) and
/// parity matrix `H`.
///
/// `H` has columns `nu_i c_{n-k}(x_i)` when every point is finite, and
/// `c_{q+1-k}(x_i)` when the code lives on the whole projective line. When
/// infinity is one of `n <= q` points, the finite columns use the `nu` of the
/// finite points and the infinite column is `-c_{n-k}(inf)`.
#[derive(Clone, Debug)]
pub struct GrsCode {
    field: Arc<Field>,
    k: usize,
    d: EvaluationSet,
    g: Matrix,
    h: Matrix,
}

impl GrsCode {
    /// Requires `k + 2 <= n <= q + 1` and `2 <= k <= q - 1`.
    pub fn new(field: Arc<Field>, k: usize, d: EvaluationSet) -> Result<GrsCode> {
        Self::with_min_dimension(field, k, d, 2)
    }

    /// As [`GrsCode::new`] but allowing dimensions down to `min_k`.
    pub fn with_min_dimension(field: Arc<Field>, k: usize, d: EvaluationSet, min_k: usize) -> Result<GrsCode> {
        let f = &*field;
        let n = d.n();
        let q = f.q() as usize;
        if k < min_k.max(1) || k + 1 > q {
            return Err(Error::InvalidParameters(format!("dimension k = {k} outside {}..={}", min_k.max(1), q - 1)));
        }
        if n < k + 2 || n > q + 1 {
            return Err(Error::InvalidParameters(format!("length n = {n} outside {}..={}", k + 2, q + 1)));
        }
        let r = n - k;
        let g = moment_matrix(f, k, d.points());
        let h = if n == q + 1 {
            moment_matrix(f, r, d.points())
        } else {
            let finite = d.finite_points();
            let nu = EvaluationSet::from_elements(f, &finite)?.nu_finite;
            let mut cols: Vec<Vec<Elem>> = finite
                .iter()
                .zip(&nu)
                .map(|(&x, &v)| moment_vector(f, r, x.into()).iter().map(|&c| f.mul(c, v)).collect())
                .collect();
            if d.has_infinity() {
                cols.push(moment_vector(f, r, ProjLinePoint::Infinity).iter().map(|&c| f.neg(c)).collect());
            }
            Matrix::from_columns(r, &cols)
        };
        if !g.mul(f, &h.transpose())?.is_zero() {
            return Err(Error::DualityFailure);
        }
        let code = GrsCode { field, k, d, g, h };
        if binomial(n as u64, k as u64) <= MDS_CHECK_LIMIT {
            for m in [&code.g, &code.h] {
                if let Some(w) = m.singular_minor(&code.field) {
                    return Err(Error::NotMds(w));
                }
            }
        }
        Ok(code)
    }

    /// The code with evaluation set `D` = first `n` field elements.
    pub fn first_n(field: Arc<Field>, k: usize, n: usize) -> Result<GrsCode> {
        let d = EvaluationSet::first_n(&field, n)?;
        Self::new(field, k, d)
    }

    pub fn full_line(field: Arc<Field>, k: usize) -> Result<GrsCode> {
        let d = EvaluationSet::full_line(&field);
        Self::new(field, k, d)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.d.n()
    }

    /// Redundancy `n - k`.
    pub fn r(&self) -> usize {
        self.d.n() - self.k
    }

    pub fn eval_set(&self) -> &EvaluationSet {
        &self.d
    }

    pub fn generator(&self) -> &Matrix {
        &self.g
    }

    pub fn parity(&self) -> &Matrix {
        &self.h
    }

    pub fn is_full_line(&self) -> bool {
        self.n() == self.field.q() as usize + 1
    }

    pub fn syndrome(&self, u: &[Elem]) -> Result<Syndrome> {
        let s = self.h.mul_vec(&self.field, u)?;
        Ok(Syndrome::new(&self.field, s))
    }

    /// Codeword `m G` for a message of length `k`.
    pub fn encode(&self, msg: &[Elem]) -> Result<Vec<Elem>> {
        self.g.transpose().mul_vec(&self.field, msg)
    }

    /// A received word with the given syndrome, supported on the first `r`
    /// positions.
    pub fn word_for_syndrome(&self, s: &[Elem]) -> Result<Vec<Elem>> {
        let r = self.r();
        if s.len() != r {
            return Err(Error::LengthMismatch { expected: r, actual: s.len() });
        }
        let hs = self.h.select_columns(&(0..r).collect::<Vec<_>>());
        let y = hs.solve(&self.field, s)?;
        let mut u = vec![Elem::ZERO; self.n()];
        u[..r].copy_from_slice(&y);
        Ok(u)
    }

    /// `[H | s]` for a syndrome vector `s`.
    pub fn augmented_parity(&self, s: &[Elem]) -> Matrix {
        self.h.with_column(s)
    }
}

/// `u(X)` via `[X^{n-1}, ..., 1] L_n [nu_i c_n(x_i)] u`.
pub fn generating_polynomial_toeplitz(f: &Field, d: &EvaluationSet, u: &[Elem]) -> Result<Poly> {
    let n = d.n();
    if u.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: u.len() });
    }
    let nu = d.nu()?;
    let mut v = vec![Elem::ZERO; n];
    for (i, x) in d.finite_points().into_iter().enumerate() {
        let w = f.mul(nu[i], u[i]);
        if w.is_zero() {
            continue;
        }
        for (t, c) in moment_vector(f, n, x.into()).into_iter().enumerate() {
            v[t] = f.add(v[t], f.mul(c, w));
        }
    }
    let w = LowerToeplitz::new(d.s(), n).mul_vec(f, &v);
    Ok(Poly::new(w.into_iter().rev().collect()))
}

/// `u(X)` via Lagrange interpolation.
pub fn generating_polynomial_lagrange(f: &Field, d: &EvaluationSet, u: &[Elem]) -> Result<Poly> {
    if d.has_infinity() {
        return Err(Error::InfinityPresent);
    }
    if u.len() != d.n() {
        return Err(Error::LengthMismatch { expected: d.n(), actual: u.len() });
    }
    Ok(Poly::interpolate(f, &d.finite_points(), u))
}

/// The interpolating polynomial of degree below `n`, computed two ways and
/// cross-checked.
pub fn generating_polynomial(f: &Field, d: &EvaluationSet, u: &[Elem]) -> Result<Poly> {
    let a = generating_polynomial_toeplitz(f, d, u)?;
    let b = generating_polynomial_lagrange(f, d, u)?;
    if a != b {
        return Err(Error::Internal("interpolation formulas disagree".into()));
    }
    Ok(a)
}

/// `[X^{n-1}, ..., X^k] L_{n-k} s` for a syndrome `s`.
pub fn leading_part_from_syndrome(code: &GrsCode, s: &[Elem]) -> Result<Poly> {
    if code.eval_set().has_infinity() {
        return Err(Error::InfinityPresent);
    }
    let (n, r) = (code.n(), code.r());
    if s.len() != r {
        return Err(Error::LengthMismatch { expected: r, actual: s.len() });
    }
    let w = LowerToeplitz::new(code.eval_set().s(), r).mul_vec(code.field(), s);
    let mut coeffs = vec![Elem::ZERO; n];
    for (i, c) in w.into_iter().enumerate() {
        coeffs[n - 1 - i] = c;
    }
    Ok(Poly::new(coeffs))
}

/// The part of the generating polynomial of degree at least `k`.
pub fn leading_part(code: &GrsCode, u: &[Elem]) -> Result<Poly> {
    let s = code.syndrome(u)?;
    leading_part_from_syndrome(code, &s.s)
}

/// The word `u_i = 1/(x_i - delta)`.
pub fn delta_word(f: &Field, d: &EvaluationSet, delta: ProjLinePoint) -> Result<ReceivedWord> {
    if d.has_infinity() {
        return Err(Error::InfinityPresent);
    }
    let delta = delta
        .finite()
        .ok_or_else(|| Error::InvalidParameters("delta must be a finite point".into()))?;
    if d.contains(delta.into()) {
        return Err(Error::InvalidParameters(format!("delta = {delta} lies in the evaluation set")));
    }
    Ok(d.finite_points().iter().map(|&x| f.inv(f.sub(x, delta))).collect())
}

/// `a [X^{n-1}, ..., 1] L_n c_n(delta)` with `a = -1 / prod (delta - x_i)`.
pub fn delta_polynomial(f: &Field, d: &EvaluationSet, delta: Elem) -> Result<Poly> {
    if d.has_infinity() {
        return Err(Error::InfinityPresent);
    }
    let n = d.n();
    let prod = d.finite_points().iter().fold(Elem::ONE, |acc, &x| f.mul(acc, f.sub(delta, x)));
    let a = f.neg(f.try_inv(prod).ok_or_else(|| Error::InvalidParameters("delta lies in the evaluation set".into()))?);
    let w = LowerToeplitz::new(d.s(), n).mul_vec(f, &moment_vector(f, n, delta.into()));
    Ok(Poly::new(w.into_iter().rev().map(|c| f.mul(a, c)).collect()))
}
