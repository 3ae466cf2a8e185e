//! PGL(2,q) acting on PG(2,q) through the symmetric square: the bilinear
//! form attached to a point, orbit labels and stabilizers.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::geometry::{nucleus3, pgl2, MobiusTransform, ProjLinePoint, ProjPoint, ProjSpace};
use crate::matrix::Matrix;

/// The symmetric form `[[P, -N], [-N, M]]` attached to the point
/// `(M : N : P)`, so that `B((1,X), (1,Y)) = MXY - N(X+Y) + P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BilinearForm {
    pub m: Elem,
    pub n: Elem,
    pub p: Elem,
}

impl BilinearForm {
    pub fn matrix(&self, f: &Field) -> Matrix {
        let nn = f.neg(self.n);
        Matrix::from_rows(vec![vec![self.p, nn], vec![nn, self.m]]).expect("2x2")
    }

    /// `B(v, w)` for `v, w` in GF(q)^2.
    pub fn eval(&self, f: &Field, v: (Elem, Elem), w: (Elem, Elem)) -> Elem {
        let nn = f.neg(self.n);
        let t0 = f.add(f.mul(self.p, w.0), f.mul(nn, w.1));
        let t1 = f.add(f.mul(nn, w.0), f.mul(self.m, w.1));
        f.add(f.mul(v.0, t0), f.mul(v.1, t1))
    }

    /// `B` on two points of PG(1,q), using `(1, x)` and `(0, 1)` for infinity.
    pub fn eval_points(&self, f: &Field, x: ProjLinePoint, y: ProjLinePoint) -> Elem {
        let hom = |t: ProjLinePoint| match t {
            ProjLinePoint::Finite(t) => (Elem::ONE, t),
            ProjLinePoint::Infinity => (Elem::ZERO, Elem::ONE),
        };
        self.eval(f, hom(x), hom(y))
    }

    pub fn is_degenerate(&self, f: &Field) -> bool {
        f.sub(f.mul(self.m, self.p), f.mul(self.n, self.n)).is_zero()
    }

    /// Whether `B(v, v) = 0` for some nonzero `v`.
    pub fn is_isotropic(&self, f: &Field) -> bool {
        ProjLinePoint::all(f).into_iter().any(|x| self.eval_points(f, x, x).is_zero())
    }
}

/// The form of a point of PG(2,q) (for its normalized coordinates).
pub fn phi(p: &ProjPoint) -> BilinearForm {
    let c = p.coords();
    BilinearForm { m: c[0], n: c[1], p: c[2] }
}

/// The PGL(2,q)-orbits of PG(2,q).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OrbitLabel {
    #[serde(rename = "O1_RNC")]
    O1Rnc,
    #[serde(rename = "O1_NUCLEUS")]
    O1Nucleus,
    O2,
    O3,
    O4,
}

impl OrbitLabel {
    pub fn name(self) -> &'static str {
        match self {
            OrbitLabel::O1Rnc => "O1_RNC",
            OrbitLabel::O1Nucleus => "O1_NUCLEUS",
            OrbitLabel::O2 => "O2",
            OrbitLabel::O3 => "O3",
            OrbitLabel::O4 => "O4",
        }
    }

    pub fn parse(s: &str) -> Result<OrbitLabel> {
        match s.to_ascii_uppercase().as_str() {
            "O1_RNC" | "RNC" => Ok(OrbitLabel::O1Rnc),
            "O1_NUCLEUS" | "NUCLEUS" => Ok(OrbitLabel::O1Nucleus),
            "O2" => Ok(OrbitLabel::O2),
            "O3" => Ok(OrbitLabel::O3),
            "O4" => Ok(OrbitLabel::O4),
            _ => Err(Error::InvalidParameters(format!("unknown orbit label {s:?}"))),
        }
    }

    /// Whether the label exists for a field of the given parity.
    pub fn exists_for(self, q_even: bool) -> bool {
        match self {
            OrbitLabel::O1Rnc => true,
            OrbitLabel::O1Nucleus | OrbitLabel::O4 => q_even,
            OrbitLabel::O2 | OrbitLabel::O3 => !q_even,
        }
    }
}

pub fn orbit_label(f: &Field, p: &ProjPoint) -> OrbitLabel {
    let form = phi(p);
    if form.is_degenerate(f) {
        OrbitLabel::O1Rnc
    } else if f.is_even() {
        if *p == nucleus3() {
            OrbitLabel::O1Nucleus
        } else {
            OrbitLabel::O4
        }
    } else if form.is_isotropic(f) {
        OrbitLabel::O2
    } else {
        OrbitLabel::O3
    }
}

/// Fixed representative of each orbit: `(1:0:0)` on the RNC, `(0:1:0)` for
/// the nucleus and for O2, `(1:0:-eps)` for O3 and `(1:0:1)` for O4.
pub fn base_point(f: &Field, label: OrbitLabel) -> Result<ProjPoint> {
    if !label.exists_for(f.is_even()) {
        return Err(Error::InvalidParameters(format!("{} does not occur for q = {}", label.name(), f.q())));
    }
    let coords = match label {
        OrbitLabel::O1Rnc => vec![Elem::ONE, Elem::ZERO, Elem::ZERO],
        OrbitLabel::O1Nucleus | OrbitLabel::O2 => vec![Elem::ZERO, Elem::ONE, Elem::ZERO],
        OrbitLabel::O3 => vec![Elem::ONE, Elem::ZERO, f.neg(f.nonsquare_epsilon()?)],
        OrbitLabel::O4 => vec![Elem::ONE, Elem::ZERO, Elem::ONE],
    };
    ProjPoint::new(f, &coords)
}

/// The elements of PGL(2,q) fixing a label's base point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerGroup {
    pub label: OrbitLabel,
    pub base: ProjPoint,
    pub elements: Vec<MobiusTransform>,
}

pub fn stabilizer(f: &Field, label: OrbitLabel) -> Result<StabilizerGroup> {
    if label == OrbitLabel::O1Rnc {
        return Err(Error::InvalidParameters("stabilizers of RNC points are not provided".into()));
    }
    let base = base_point(f, label)?;
    let elements = pgl2(f).into_iter().filter(|g| g.act_plane(f, &base) == base).collect();
    Ok(StabilizerGroup { label, base, elements })
}

/// Exhaustive orbit sizes over all of PG(2,q).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrbitSizes {
    pub rnc: u64,
    pub nucleus: u64,
    pub o2: u64,
    pub o3: u64,
    pub o4: u64,
}

impl OrbitSizes {
    pub fn total(&self) -> u64 {
        self.rnc + self.nucleus + self.o2 + self.o3 + self.o4
    }
}

pub fn orbit_decomposition(f: &Field) -> OrbitSizes {
    let space = ProjSpace::new(f.q(), 3).expect("plane");
    let mut sizes = OrbitSizes::default();
    for i in 0..space.size() {
        match orbit_label(f, &space.proj_point(i)) {
            OrbitLabel::O1Rnc => sizes.rnc += 1,
            OrbitLabel::O1Nucleus => sizes.nucleus += 1,
            OrbitLabel::O2 => sizes.o2 += 1,
            OrbitLabel::O3 => sizes.o3 += 1,
            OrbitLabel::O4 => sizes.o4 += 1,
        }
    }
    sizes
}

/// For each point of a non-RNC orbit, the lexicographically least `g` with
/// `g . base = point`.
#[derive(Clone, Debug)]
pub struct CosetRepresentatives {
    pub label: OrbitLabel,
    pub base: ProjPoint,
    reps: HashMap<ProjPoint, MobiusTransform>,
}

impl CosetRepresentatives {
    pub fn new(f: &Field, label: OrbitLabel) -> Result<CosetRepresentatives> {
        Self::from_group(f, label, &pgl2(f))
    }

    /// `group` must be PGL(2,q) in lexicographic order.
    pub fn from_group(f: &Field, label: OrbitLabel, group: &[MobiusTransform]) -> Result<CosetRepresentatives> {
        let base = base_point(f, label)?;
        let mut reps = HashMap::new();
        for g in group {
            reps.entry(g.act_plane(f, &base)).or_insert(*g);
        }
        Ok(CosetRepresentatives { label, base, reps })
    }

    pub fn get(&self, p: &ProjPoint) -> Option<&MobiusTransform> {
        self.reps.get(p)
    }

    /// Orbit points in sorted order with their representatives.
    pub fn sorted(&self) -> Vec<(ProjPoint, MobiusTransform)> {
        let mut v: Vec<_> = self.reps.iter().map(|(p, g)| (p.clone(), *g)).collect();
        v.sort();
        v
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(f: &Field, idx: &[u32]) -> ProjPoint {
        ProjPoint::from_indices(f, idx).unwrap()
    }

    #[test]
    fn phi_examples() {
        let f = Field::prime(5).unwrap();
        let form = phi(&pt(&f, &[1, 0, 1]));
        assert_eq!(form.matrix(&f), Matrix::identity(2));
        let nuc = phi(&pt(&f, &[0, 1, 0]));
        for x in f.elements() {
            for y in f.elements() {
                let v = nuc.eval(&f, (Elem::ONE, x), (Elem::ONE, y));
                assert_eq!(v, f.neg(f.add(x, y)));
            }
        }
        let t = Elem::new(3);
        assert!(phi(&pt(&f, &[1, 3, f.mul(t, t).index()])).is_degenerate(&f));
    }

    #[test]
    fn orbit_sizes_small() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(orbit_decomposition(&f5), OrbitSizes { rnc: 6, nucleus: 0, o2: 15, o3: 10, o4: 0 });
        let f4 = Field::new(2, 2, None).unwrap();
        assert_eq!(orbit_decomposition(&f4), OrbitSizes { rnc: 5, nucleus: 1, o2: 0, o3: 0, o4: 15 });
        assert_eq!(orbit_label(&f4, &nucleus3()), OrbitLabel::O1Nucleus);
    }

    #[test]
    fn stabilizer_orders() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(stabilizer(&f5, OrbitLabel::O2).unwrap().elements.len(), 8);
        assert_eq!(stabilizer(&f5, OrbitLabel::O3).unwrap().elements.len(), 12);
        let f4 = Field::new(2, 2, None).unwrap();
        let g1 = stabilizer(&f4, OrbitLabel::O4).unwrap();
        assert_eq!(g1.elements.len(), 4);
        // each element has the shape [[1+a, a], [a, 1+a]] up to scaling
        for g in &g1.elements {
            assert_eq!(g.a, g.d);
            assert_eq!(g.b, g.c);
        }
        assert!(stabilizer(&f4, OrbitLabel::O2).is_err());
        assert!(stabilizer(&f5, OrbitLabel::O1Rnc).is_err());
    }

    #[test]
    fn dihedral_stabilizer_shape() {
        let f = Field::prime(7).unwrap();
        for g in stabilizer(&f, OrbitLabel::O2).unwrap().elements {
            let scaling = g.b.is_zero() && g.c.is_zero();
            let inversion = g.a.is_zero() && g.d.is_zero();
            assert!(scaling || inversion);
        }
    }

    #[test]
    fn representatives_cover_orbit() {
        let f = Field::prime(7).unwrap();
        let reps = CosetRepresentatives::new(&f, OrbitLabel::O3).unwrap();
        assert_eq!(reps.len(), 7 * 6 / 2);
        for (p, g) in reps.sorted() {
            assert_eq!(orbit_label(&f, &p), OrbitLabel::O3);
            assert_eq!(g.act_plane(&f, &reps.base), p);
        }
    }
}
