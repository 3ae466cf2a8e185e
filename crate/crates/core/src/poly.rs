//! Dense univariate polynomials over a [`Field`].

use serde::{Deserialize, Serialize};

use crate::field::{Elem, Field};

/// Coefficients in ascending degree with no trailing zeros. The zero
/// polynomial has an empty coefficient list and degree `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![Elem::ONE] }
    }

    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `c * X^deg`.
    pub fn monomial(deg: usize, c: Elem) -> Poly {
        let mut coeffs = vec![Elem::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly::new(coeffs)
    }

    /// The monic polynomial with the given roots.
    pub fn from_roots(f: &Field, roots: &[Elem]) -> Poly {
        let mut acc = Poly::one();
        for &r in roots {
            acc = acc.mul(f, &Poly::new(vec![f.neg(r), Elem::ONE]));
        }
        acc
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, f: &Field, c: Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder. Panics if `divisor` is zero.
    pub fn div_rem(&self, f: &Field, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let inv_lead = f.inv(divisor.leading_coeff());
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Elem::ZERO; rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + d], inv_lead);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, b));
            }
        }
        rem.truncate(d);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Keeps only the monomials of degree at least `k`.
    pub fn high_part(&self, k: usize) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().map(|(i, &c)| if i >= k { c } else { Elem::ZERO }).collect())
    }

    /// Keeps only the monomials of degree below `k`.
    pub fn low_part(&self, k: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(k).copied().collect())
    }

    /// Lagrange interpolation through `(xs[i], ys[i])`. The nodes must be
    /// distinct.
    pub fn interpolate(f: &Field, xs: &[Elem], ys: &[Elem]) -> Poly {
        assert_eq!(xs.len(), ys.len());
        let mut acc = Poly::zero();
        for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Poly::one();
            let mut denom = Elem::ONE;
            for (j, &xj) in xs.iter().enumerate() {
                if i != j {
                    basis = basis.mul(f, &Poly::new(vec![f.neg(xj), Elem::ONE]));
                    denom = f.mul(denom, f.sub(xi, xj));
                }
            }
            acc = acc.add(f, &basis.scale(f, f.div(yi, denom)));
        }
        acc
    }
}
