//! Exhaustive sweeps over projective spaces: MDS extension points of a
//! matrix and coset distances of every projective syndrome.

use std::sync::atomic::{AtomicU8, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::geometry::{ProjPoint, ProjSpace};
use crate::matrix::{binomial, next_combination, Matrix};

/// Default work limit, measured in candidate points or column combinations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Upper bound on the work a single sweep may perform.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { limit: DEFAULT_BUDGET }
    }
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { limit }
    }

    pub fn unlimited() -> Budget {
        Budget { limit: u64::MAX }
    }

    pub fn check(&self, needed: u64) -> Result<()> {
        if needed > self.limit {
            Err(Error::BudgetExceeded { needed, budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Nonzero `w` with `det[M_S | x] = c * (w . x)` for an `r x (r-1)` block
/// `M_S` of full rank: the signed maximal minors of `M_S`.
fn cofactor_functional(f: &Field, block: &Matrix) -> Vec<Elem> {
    let r = block.rows();
    (0..r)
        .map(|i| {
            let rows: Vec<Vec<Elem>> = (0..r).filter(|&t| t != i).map(|t| block.row(t)).collect();
            let minor = if rows.is_empty() {
                Elem::ONE
            } else {
                Matrix::from_rows(rows).expect("rectangular").det(f).expect("square")
            };
            if i % 2 == 0 {
                minor
            } else {
                f.neg(minor)
            }
        })
        .collect()
}

/// All points `x` of PG(r-1,q) such that `[M | x]` is MDS, in index order.
/// `M` (`r x c`) is assumed to be MDS itself. The cost charged against the
/// budget is the number of points of PG(r-1,q).
pub fn extension_points(f: &Field, m: &Matrix, budget: Budget) -> Result<Vec<ProjPoint>> {
    let r = m.rows();
    let c = m.cols();
    if r == 0 || c + 1 < r {
        return Err(Error::InvalidParameters(format!("cannot extend a {r}x{c} matrix to an MDS matrix")));
    }
    let q = f.q();
    let space = ProjSpace::new(q, r)?;
    budget.check(space.size())?;
    if r == 1 {
        return Ok(vec![space.proj_point(0)]);
    }

    // one functional per (r-1)-subset; stored as logs of the first r-1
    // coefficients plus the negated inverse of the last one
    struct Functional {
        head: Vec<Option<u32>>,
        last: Option<Elem>,
    }
    let mut functionals = Vec::new();
    let mut subset: Vec<usize> = (0..r - 1).collect();
    loop {
        let w = cofactor_functional(f, &m.select_columns(&subset));
        if w.iter().all(|e| e.is_zero()) {
            return Err(Error::NotMds(subset));
        }
        functionals.push(Functional {
            head: w[..r - 1].iter().map(|&e| f.log(e)).collect(),
            last: f.try_inv(w[r - 1]).map(|i| f.neg(i)),
        });
        if !next_combination(&mut subset, c) {
            break;
        }
    }

    let mut out = Vec::new();
    // point 0 is (0, ..., 0, 1)
    if functionals.iter().all(|fu| fu.last.is_some()) {
        out.push(space.proj_point(0));
    }
    let groups = (space.size() - 1) / q as u64;
    let words = (q as usize).div_ceil(64);
    let found: Vec<Vec<u64>> = (0..groups)
        .into_par_iter()
        .map_init(
            || vec![0u64; words],
            |forbidden, j| {
                let first = 1 + j * q as u64;
                let prefix = space.point(first);
                let logs: Vec<Option<u32>> = prefix[..r - 1].iter().map(|&e| f.log(e)).collect();
                forbidden.iter_mut().for_each(|w| *w = 0);
                let mut count = 0u32;
                for fu in &functionals {
                    let mut partial = Elem::ZERO;
                    for (a, b) in fu.head.iter().zip(&logs) {
                        if let (Some(a), Some(b)) = (a, b) {
                            partial = f.add(partial, f.exp(a + b));
                        }
                    }
                    match fu.last {
                        Some(neg_inv) => {
                            let z = f.mul(partial, neg_inv).index() as usize;
                            let bit = 1u64 << (z % 64);
                            if forbidden[z / 64] & bit == 0 {
                                forbidden[z / 64] |= bit;
                                count += 1;
                            }
                        }
                        None if partial.is_zero() => count = q,
                        None => {}
                    }
                    if count == q {
                        return Vec::new();
                    }
                }
                (0..q as u64).filter(|&z| forbidden[(z / 64) as usize] & (1 << (z % 64)) == 0).map(|z| first + z).collect()
            },
        )
        .collect();
    out.extend(found.into_iter().flatten().map(|i| space.proj_point(i)));
    Ok(out)
}

/// Work needed by [`distance_map`] for an `r x n` matrix over GF(q).
pub fn distance_sweep_cost(q: u32, r: usize, n: usize) -> u64 {
    let mut total = ProjSpace::new(q, r).map(|s| s.size()).unwrap_or(u64::MAX);
    for d in 1..r {
        let term = binomial(n as u64, d as u64).saturating_mul((q as u64 - 1).saturating_pow(d as u32 - 1));
        total = total.saturating_add(term);
    }
    total
}

/// For every point of PG(r-1,q) (in index order) the least number of
/// columns of `h` whose span contains it. `h` must have rank `r` and every
/// `r` columns independent, so unmarked points have distance `r`.
pub fn distance_map(f: &Field, h: &Matrix, budget: Budget) -> Result<Vec<u8>> {
    let (r, n) = (h.rows(), h.cols());
    if r == 0 || r > 255 {
        return Err(Error::InvalidParameters(format!("unsupported redundancy {r}")));
    }
    let q = f.q();
    budget.check(distance_sweep_cost(q, r, n))?;
    let space = ProjSpace::new(q, r)?;
    let dist: Vec<AtomicU8> = (0..space.size()).map(|_| AtomicU8::new(0)).collect();
    let cols = h.columns();
    let nonzero: Vec<Elem> = f.nonzero_elements().collect();
    for d in 1..r {
        let mut subsets = Vec::new();
        let mut c: Vec<usize> = (0..d).collect();
        loop {
            subsets.push(c.clone());
            if !next_combination(&mut c, n) {
                break;
            }
        }
        subsets.par_iter().for_each(|sub| {
            let mut coef = vec![0usize; d - 1];
            let mut v = vec![Elem::ZERO; r];
            loop {
                v.copy_from_slice(&cols[sub[0]]);
                for (t, &ci) in coef.iter().enumerate() {
                    let a = nonzero[ci];
                    for (x, &y) in v.iter_mut().zip(&cols[sub[t + 1]]) {
                        *x = f.add(*x, f.mul(a, y));
                    }
                }
                if let Some(p) = ProjPoint::normalize(f, &v) {
                    let idx = space.index_of(p.coords()) as usize;
                    let _ = dist[idx].compare_exchange(0, d as u8, Ordering::Relaxed, Ordering::Relaxed);
                }
                // advance the mixed-radix counter over (GF(q)^*)^{d-1}
                let mut t = 0;
                while t < coef.len() {
                    coef[t] += 1;
                    if coef[t] < nonzero.len() {
                        break;
                    }
                    coef[t] = 0;
                    t += 1;
                }
                if t == coef.len() {
                    break;
                }
            }
        });
    }
    Ok(dist
        .into_iter()
        .map(|a| match a.into_inner() {
            0 => r as u8,
            d => d,
        })
        .collect())
}

/// Least `d` such that `s` lies in the span of some `d` columns of `h`.
pub fn span_distance(f: &Field, h: &Matrix, s: &[Elem], budget: Budget) -> Result<usize> {
    if s.iter().all(|e| e.is_zero()) {
        return Ok(0);
    }
    let n = h.cols();
    let mut spent: u64 = 0;
    for d in 1..=n {
        spent = spent.saturating_add(binomial(n as u64, d as u64));
        budget.check(spent)?;
        let mut c: Vec<usize> = (0..d).collect();
        loop {
            let sub = h.select_columns(&c);
            let rank = sub.rank(f);
            if sub.with_column(s).rank(f) == rank {
                return Ok(d);
            }
            if !next_combination(&mut c, n) {
                break;
            }
        }
    }
    Err(Error::InvalidParameters("vector is outside the column span".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{moment_vector, ProjLinePoint};

    fn naive_extension_points(f: &Field, m: &Matrix) -> Vec<ProjPoint> {
        let space = ProjSpace::new(f.q(), m.rows()).unwrap();
        (0..space.size())
            .map(|i| space.proj_point(i))
            .filter(|p| m.with_column(p.coords()).is_mds(f))
            .collect()
    }

    fn rnc_matrix(f: &Field, m: usize, pts: &[ProjLinePoint]) -> Matrix {
        Matrix::from_columns(m, &pts.iter().map(|&x| moment_vector(f, m, x)).collect::<Vec<_>>())
    }

    #[test]
    fn sieve_matches_naive() {
        for (p, h, m, n) in [(5, 1, 3, 4), (2, 2, 3, 5), (7, 1, 3, 5), (3, 2, 4, 6), (2, 3, 4, 7), (5, 1, 2, 3)] {
            let f = Field::new(p, h, None).unwrap();
            let pts = ProjLinePoint::all(&f);
            let g = rnc_matrix(&f, m, &pts[..n]);
            assert_eq!(extension_points(&f, &g, Budget::default()).unwrap(), naive_extension_points(&f, &g));
        }
    }

    #[test]
    fn hyperoval_extender() {
        let f = Field::new(2, 2, None).unwrap();
        let g = rnc_matrix(&f, 3, &ProjLinePoint::all(&f));
        let ext = extension_points(&f, &g, Budget::default()).unwrap();
        assert_eq!(ext, vec![crate::geometry::nucleus3()]);
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::prime(7).unwrap();
        let g = rnc_matrix(&f, 4, &ProjLinePoint::all(&f));
        let err = extension_points(&f, &g, Budget::new(10)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 10, .. }));
    }

    #[test]
    fn distances_match_span_search() {
        let f = Field::prime(5).unwrap();
        let pts: Vec<ProjLinePoint> = f.elements().map(ProjLinePoint::Finite).collect();
        let h = rnc_matrix(&f, 3, &pts);
        let dist = distance_map(&f, &h, Budget::default()).unwrap();
        let space = ProjSpace::new(5, 3).unwrap();
        for i in 0..space.size() {
            let want = span_distance(&f, &h, &space.point(i), Budget::default()).unwrap();
            assert_eq!(dist[i as usize] as usize, want);
        }
    }
}
