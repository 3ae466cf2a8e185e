//! Ordered hyperovals of PG(2,q), q even, in the normal form
//! `[[1..1, 0, 0], [x_1..x_q, 1, 0], [u_1..u_q, 0, 1]]`.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;
use crate::search::Budget;

/// Normal-form generator matrix of the ordered hyperoval attached to a deep
/// hole `u` of the `[q+1, 2]` code on the full line (coordinates in line
/// order, infinity last).
///
/// `u` is shifted by a codeword so it vanishes at `0` and at infinity, then
/// scaled so it is 1 at `1`.
pub fn hyperoval_matrix(f: &Field, u: &[Elem]) -> Result<Matrix> {
    let q = f.q() as usize;
    if u.len() != q + 1 {
        return Err(Error::LengthMismatch { expected: q + 1, actual: u.len() });
    }
    let b = u[q];
    let a = u[0];
    let shifted: Vec<Elem> = f.elements().map(|x| f.sub(u[x.index() as usize], f.add(a, f.mul(b, x)))).collect();
    let scale = f.try_inv(shifted[1]).ok_or(Error::NotDeepHole)?;
    let mut rows: Vec<Vec<Elem>> = (0..3).map(|_| Vec::with_capacity(q + 2)).collect();
    for x in f.elements() {
        rows[0].push(Elem::ONE);
        rows[1].push(x);
        rows[2].push(f.mul(shifted[x.index() as usize], scale));
    }
    rows[0].extend([Elem::ZERO, Elem::ZERO]);
    rows[1].extend([Elem::ONE, Elem::ZERO]);
    rows[2].extend([Elem::ZERO, Elem::ONE]);
    let m = Matrix::from_rows(rows)?;
    if !m.is_mds(f) {
        return Err(Error::NotDeepHole);
    }
    Ok(m)
}

fn collinear(f: &Field, p: (Elem, Elem), r: (Elem, Elem), s: (Elem, Elem)) -> bool {
    // det [[1,1,1],[x1,x2,x3],[z1,z2,z3]]
    let d1 = f.sub(f.mul(r.0, s.1), f.mul(s.0, r.1));
    let d2 = f.sub(f.mul(p.0, s.1), f.mul(s.0, p.1));
    let d3 = f.sub(f.mul(p.0, r.1), f.mul(r.0, p.1));
    f.add(f.sub(d1, d2), d3).is_zero()
}

/// Every ordered hyperoval `(P_1, ..., P_{q+2})` of PG(2,q) up to
/// projective equivalence, where `P_1..P_q` project from `P_{q+2}` onto the
/// field elements in index order. Each class is pinned by the frame
/// `P_1 = (1,0,0)`, `P_2 = (1,1,1)`, `P_{q+1} = (0,1,0)`, `P_{q+2} = (0,0,1)`,
/// leaving `P_i = (1, x_i, z_i)`; the returned vectors are the `z`.
/// The budget bounds the number of search nodes.
pub fn ordered_hyperovals(f: &Field, budget: Budget) -> Result<Vec<Vec<Elem>>> {
    if !f.is_even() || f.q() < 4 {
        return Err(Error::InvalidParameters("hyperovals need q even and q >= 4".into()));
    }
    let q = f.q() as usize;
    let xs: Vec<Elem> = f.elements().collect();
    let mut z = vec![Elem::ZERO, Elem::ONE];
    let mut used = vec![false; q];
    used[0] = true;
    used[1] = true;
    let mut out = Vec::new();
    let mut nodes: u64 = 0;

    #[allow(clippy::too_many_arguments)]
    fn extend(
        f: &Field,
        xs: &[Elem],
        z: &mut Vec<Elem>,
        used: &mut [bool],
        out: &mut Vec<Vec<Elem>>,
        nodes: &mut u64,
        budget: Budget,
    ) -> Result<()> {
        let i = z.len();
        if i == xs.len() {
            out.push(z.clone());
            return Ok(());
        }
        for cand in f.elements() {
            *nodes += 1;
            budget.check(*nodes)?;
            // distinct z: no two points collinear with (0,1,0)
            if used[cand.index() as usize] {
                continue;
            }
            let p = (xs[i], cand);
            let ok = (0..i).all(|a| (a + 1..i).all(|b| !collinear(f, (xs[a], z[a]), (xs[b], z[b]), p)));
            if ok {
                used[cand.index() as usize] = true;
                z.push(cand);
                extend(f, xs, z, used, out, nodes, budget)?;
                z.pop();
                used[cand.index() as usize] = false;
            }
        }
        Ok(())
    }

    extend(f, &xs, &mut z, &mut used, &mut out, &mut nodes, budget)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_has_one_normalized_hyperoval() {
        let f = Field::new(2, 2, None).unwrap();
        let all = ordered_hyperovals(&f, Budget::default()).unwrap();
        assert_eq!(all.len(), 1);
        // the conic z = x^2 plus nucleus and the point at infinity
        let squares: Vec<Elem> = f.elements().map(|x| f.mul(x, x)).collect();
        assert_eq!(all[0], squares);
    }

    #[test]
    fn normalized_matrix_is_an_arc() {
        let f = Field::new(2, 3, None).unwrap();
        for z in ordered_hyperovals(&f, Budget::default()).unwrap() {
            let mut u = z.clone();
            u.push(Elem::ZERO);
            let m = hyperoval_matrix(&f, &u).unwrap();
            assert_eq!(m.row(2)[..8], z[..]);
        }
    }

    #[test]
    fn odd_q_rejected() {
        assert!(ordered_hyperovals(&Field::prime(5).unwrap(), Budget::default()).is_err());
    }
}
