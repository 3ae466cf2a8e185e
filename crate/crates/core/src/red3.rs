//! Redundancy-3 deep holes: admissible sets, the case-by-case syndrome
//! classification, canonical forms of non-GRS `[n+1, 3]` extensions and
//! the counts of the resulting ordered arcs.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::geometry::{moment_vector, nucleus3, pgl2, MobiusTransform, ProjLinePoint, ProjPoint, ProjSpace};
use crate::grs::{EvaluationSet, GrsCode};
use crate::matrix::Matrix;
use crate::orbits::{base_point, orbit_label, CosetRepresentatives, OrbitLabel};
use crate::search::Budget;

/// The partner of `x` under the pairing forbidden in admissible set `i`:
/// `-x` (i = 2), `eps/x` (i = 3), `1/x` (i = 4), with `0` and infinity
/// swapped by inversion.
fn partner(f: &Field, i: u8, eps: Elem, x: ProjLinePoint) -> ProjLinePoint {
    let num = if i == 3 { eps } else { Elem::ONE };
    match (i, x) {
        (2, ProjLinePoint::Finite(x)) => ProjLinePoint::Finite(f.neg(x)),
        (2, ProjLinePoint::Infinity) => ProjLinePoint::Infinity,
        (_, ProjLinePoint::Infinity) => ProjLinePoint::Finite(Elem::ZERO),
        (_, ProjLinePoint::Finite(x)) => match f.try_inv(x) {
            Some(inv) => ProjLinePoint::Finite(f.mul(num, inv)),
            None => ProjLinePoint::Infinity,
        },
    }
}

/// Whether no two distinct members of `pts` are partners.
fn avoids_pairing(f: &Field, i: u8, eps: Elem, pts: &[ProjLinePoint]) -> bool {
    pts.iter().enumerate().all(|(a, &x)| {
        let px = partner(f, i, eps, x);
        pts[a + 1..].iter().all(|&y| y != px)
    })
}

fn label_for(i: u8) -> Result<OrbitLabel> {
    match i {
        2 => Ok(OrbitLabel::O2),
        3 => Ok(OrbitLabel::O3),
        4 => Ok(OrbitLabel::O4),
        _ => Err(Error::InvalidParameters(format!("admissible set index {i} must be 1..=4"))),
    }
}

/// Per-field data shared by admissible-set computations: the orbit
/// representatives are computed once.
#[derive(Clone, Debug)]
pub struct Red3Context {
    field: Arc<Field>,
    eps: Elem,
    reps: Vec<(OrbitLabel, Vec<(ProjPoint, MobiusTransform)>)>,
}

impl Red3Context {
    pub fn new(field: Arc<Field>) -> Result<Red3Context> {
        let f = &*field;
        let group = pgl2(f);
        let labels: &[OrbitLabel] = if f.is_even() { &[OrbitLabel::O4] } else { &[OrbitLabel::O2, OrbitLabel::O3] };
        let mut reps = Vec::new();
        for &l in labels {
            reps.push((l, CosetRepresentatives::from_group(f, l, &group)?.sorted()));
        }
        let eps = if f.is_even() { Elem::ONE } else { f.nonsquare_epsilon()? };
        Ok(Red3Context { field, eps, reps })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// `O_i(D)`, sorted.
    pub fn admissible_set(&self, d: &EvaluationSet, i: u8) -> Result<Vec<ProjPoint>> {
        let f = &*self.field;
        if i == 1 {
            let mut out: Vec<ProjPoint> = d
                .complement(f)
                .into_iter()
                .map(|x| ProjPoint::new(f, &moment_vector(f, 3, x)).expect("nonzero"))
                .collect();
            if f.is_even() {
                out.push(nucleus3());
            }
            out.sort();
            return Ok(out);
        }
        let label = label_for(i)?;
        let reps = self.reps.iter().find(|(l, _)| *l == label).map(|(_, r)| r).ok_or_else(|| {
            Error::InvalidParameters(format!("O{i} requires q {}", if f.is_even() { "odd" } else { "even" }))
        })?;
        Ok(reps
            .iter()
            .filter(|(_, h)| {
                let hinv = h.inverse(f);
                let moved: Vec<ProjLinePoint> = d.points().iter().map(|&x| hinv.apply(f, x)).collect();
                avoids_pairing(f, i, self.eps, &moved)
            })
            .map(|(p, _)| p.clone())
            .collect())
    }

    /// The possible projective syndromes of deep holes of a `[k+3, k]` code.
    pub fn classify(&self, code: &GrsCode) -> Result<Vec<ProjPoint>> {
        let f = &*self.field;
        if code.field().spec() != f.spec() {
            return Err(Error::MixedFields);
        }
        let (k, n) = (code.k(), code.n());
        let q = f.q() as usize;
        if n != k + 3 {
            return Err(Error::InvalidParameters(format!("redundancy is {}, not 3", n - k)));
        }
        if k < 2 || k + 2 > q {
            return Err(Error::InvalidParameters(format!("k = {k} must lie in 2..={}", q - 2)));
        }
        let d = code.eval_set();
        let sets: Vec<u8> = if k + 2 == q {
            if f.is_even() {
                return Ok(vec![nucleus3()]);
            }
            let space = ProjSpace::new(f.q(), 3)?;
            return Ok((0..space.size())
                .map(|i| space.proj_point(i))
                .filter(|p| orbit_label(f, p) != OrbitLabel::O1Rnc)
                .collect());
        } else if k >= (q - 1) / 2 {
            vec![1]
        } else if f.is_even() {
            vec![1, 4]
        } else if 2 * k + 3 == q {
            vec![1, 2]
        } else {
            vec![1, 2, 3]
        };
        let mut all = BTreeSet::new();
        for i in sets {
            all.extend(self.admissible_set(d, i)?);
        }
        Ok(all.into_iter().collect())
    }
}

pub fn admissible_set(field: &Arc<Field>, d: &EvaluationSet, i: u8) -> Result<Vec<ProjPoint>> {
    Red3Context::new(field.clone())?.admissible_set(d, i)
}

pub fn red3_classify(code: &GrsCode) -> Result<Vec<ProjPoint>> {
    Red3Context::new(code.field().clone())?.classify(code)
}

/// The three canonical families of non-GRS `[n+1, 3]` extensions.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    M1,
    M2,
    M3,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.to_ascii_uppercase().as_str() {
            "M1" => Ok(Family::M1),
            "M2" => Ok(Family::M2),
            "M3" => Ok(Family::M3),
            _ => Err(Error::InvalidParameters(format!("unknown family {s:?}"))),
        }
    }

    fn check_parity(self, q_even: bool) -> Result<()> {
        match (self, q_even) {
            (Family::M2, true) => Err(Error::InvalidParameters("M2 needs q odd".into())),
            (Family::M3, false) => Err(Error::InvalidParameters("M3 needs q even".into())),
            _ => Ok(()),
        }
    }

    /// The orbit whose base point is this family's last column.
    pub fn label(self, q_even: bool) -> OrbitLabel {
        match self {
            Family::M1 if q_even => OrbitLabel::O1Nucleus,
            Family::M1 => OrbitLabel::O2,
            Family::M2 => OrbitLabel::O3,
            Family::M3 => OrbitLabel::O4,
        }
    }
}

/// Last column of the family: `(0,1,0)`, `(1,0,-eps)` or `(1,0,1)`.
pub fn family_column(f: &Field, family: Family) -> Result<Vec<Elem>> {
    family.check_parity(f.is_even())?;
    Ok(base_point(f, family.label(f.is_even()))?.coords().to_vec())
}

/// `[c_3(x_1) | ... | c_3(x_n) | last column]`.
pub fn family_matrix(f: &Field, family: Family, points: &[ProjLinePoint]) -> Result<Matrix> {
    let mut cols: Vec<Vec<Elem>> = points.iter().map(|&x| moment_vector(f, 3, x)).collect();
    cols.push(family_column(f, family)?);
    Ok(Matrix::from_columns(3, &cols))
}

/// A non-GRS extension brought to canonical shape: `p * [G | v] * diag(q)`
/// equals `matrix`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalExtensionForm {
    pub family: Family,
    pub points: Vec<ProjLinePoint>,
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: Matrix,
    #[serde(serialize_with = "ser_matrix")]
    pub p: Matrix,
    pub q: Vec<Elem>,
}

fn ser_matrix<S: serde::Serializer>(m: &Matrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    m.to_index_rows().serialize(s)
}

/// The parameter `t` with `[c_3(t)] = [w]`, if `[w]` lies on the RNC.
fn rnc_parameter(f: &Field, w: &[Elem]) -> Option<ProjLinePoint> {
    let p = ProjPoint::normalize(f, w)?;
    let c = p.coords();
    if c[0].is_zero() {
        (c[1].is_zero()).then_some(ProjLinePoint::Infinity)
    } else if f.mul(c[1], c[1]) == c[2] {
        Some(ProjLinePoint::Finite(c[1]))
    } else {
        None
    }
}

/// Canonical form of the code generated by `[G | v]`, where the columns of
/// `G` (3 x n, n >= 5) lie on a conic and `v` does not.
pub fn canonical_form(f: &Field, g: &Matrix, v: &[Elem]) -> Result<CanonicalExtensionForm> {
    let n = g.cols();
    if g.rows() != 3 || v.len() != 3 {
        return Err(Error::InvalidParameters("expected a 3-row matrix and a 3-vector".into()));
    }
    if n < 5 {
        return Err(Error::InvalidParameters(format!("n = {n} must be at least 5")));
    }
    let full = g.with_column(v);
    if let Some(w) = full.singular_minor(f) {
        return Err(Error::NotMds(w));
    }
    let cols = g.columns();
    let base = Matrix::from_columns(3, &cols[..3]);
    let abc = base.solve(f, &cols[3])?;
    let (a, b, c) = (abc[0], abc[1], abc[2]);

    // A with A c_3(0) ~ g_1, A c_3(inf) ~ g_2, A c_3(1) ~ g_3, A c_3(t) = g_4
    let mut found = None;
    for t in f.elements().skip(2) {
        let l1 = f.div(a, f.sub(Elem::ONE, t));
        let l2 = f.div(b, f.mul(t, f.sub(t, Elem::ONE)));
        let l3 = f.div(c, t);
        let a0: Vec<Elem> = cols[0].iter().map(|&x| f.mul(l1, x)).collect();
        let a2: Vec<Elem> = cols[1].iter().map(|&x| f.mul(l2, x)).collect();
        let a1: Vec<Elem> = (0..3).map(|i| f.sub(f.sub(f.mul(l3, cols[2][i]), a0[i]), a2[i])).collect();
        let amat = Matrix::from_columns(3, &[a0, a1, a2]);
        let Ok(ainv) = amat.inverse(f) else { continue };
        let params: Option<Vec<ProjLinePoint>> =
            cols.iter().map(|col| rnc_parameter(f, &ainv.mul_vec(f, col).expect("3-vector"))).collect();
        if let Some(params) = params {
            found = Some((ainv, params));
            break;
        }
    }
    let (ainv, params) = found.ok_or(Error::NotGrs)?;

    let v1 = ProjPoint::new(f, &ainv.mul_vec(f, v)?)?;
    let label = orbit_label(f, &v1);
    let family = match label {
        OrbitLabel::O1Rnc => return Err(Error::ExtensionIsGrs),
        OrbitLabel::O1Nucleus | OrbitLabel::O2 => Family::M1,
        OrbitLabel::O3 => Family::M2,
        OrbitLabel::O4 => Family::M3,
    };
    let target = base_point(f, label)?;
    let h = pgl2(f)
        .into_iter()
        .find(|h| h.act_plane(f, &v1) == target)
        .ok_or_else(|| Error::Internal("orbit representative not found".into()))?;
    let p = h.sym2(f).mul(f, &ainv)?;
    let points: Vec<ProjLinePoint> = params.iter().map(|&t| h.apply(f, t)).collect();
    let matrix = family_matrix(f, family, &points)?;

    let moved = p.mul(f, &full)?;
    let mut qdiag = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let have = moved.column(j);
        let want = matrix.column(j);
        let i = want.iter().position(|e| !e.is_zero()).expect("nonzero column");
        let s = f.div(want[i], have[i]);
        if have.iter().map(|&x| f.mul(x, s)).collect::<Vec<_>>() != want {
            return Err(Error::Internal("column is not a multiple of its canonical form".into()));
        }
        qdiag.push(s);
    }
    Ok(CanonicalExtensionForm { family, points, matrix, p, q: qdiag })
}

/// Whether `points` meet the family's pairwise condition (`x_i != -x_j`,
/// `x_i != eps/x_j`, `x_i != 1/x_j`) and are distinct.
pub fn family_condition(f: &Field, family: Family, points: &[ProjLinePoint]) -> Result<bool> {
    family.check_parity(f.is_even())?;
    let distinct = points.iter().collect::<BTreeSet<_>>().len() == points.len();
    let (i, eps) = match family {
        Family::M1 => (2, Elem::ONE),
        Family::M2 => (3, f.nonsquare_epsilon()?),
        Family::M3 => (4, Elem::ONE),
    };
    Ok(distinct && avoids_pairing(f, i, eps, points))
}

fn fact_ratio(num: i64, den: i64) -> Result<u128> {
    if den < 0 {
        return Ok(0);
    }
    if num < 0 {
        return Err(Error::InvalidParameters("factorial of a negative number in a numerator".into()));
    }
    if num < den {
        return Err(Error::InvalidParameters("non-integral factorial ratio".into()));
    }
    let mut acc: u128 = 1;
    for i in den + 1..=num {
        acc = acc.checked_mul(i as u128).ok_or(Error::CountOverflow)?;
    }
    Ok(acc)
}

fn pow2(e: i64) -> Result<u128> {
    if !(0..128).contains(&e) {
        return Err(Error::CountOverflow);
    }
    Ok(1u128 << e)
}

fn term(num: i64, den: i64, two_pow: i64, mult: i128) -> Result<u128> {
    let r = fact_ratio(num, den)?;
    if r == 0 {
        return Ok(0);
    }
    if mult < 0 {
        return Err(Error::Internal("negative multiplicity".into()));
    }
    r.checked_mul(pow2(two_pow)?)
        .and_then(|x| x.checked_mul(mult as u128))
        .ok_or(Error::CountOverflow)
}

fn check_counting_args(q: u64, n: u64, family: Family) -> Result<(i64, i64)> {
    family.check_parity(q % 2 == 0)?;
    if n < 5 {
        return Err(Error::InvalidParameters(format!("n = {n} must be at least 5")));
    }
    Ok((q as i64, n as i64))
}

/// Closed-form number of ordered `n`-tuples of points of PG(1,q) giving a
/// matrix of the family.
pub fn count_mi_closed(q: u64, n: u64, family: Family) -> Result<u128> {
    let (q, n) = check_counting_args(q, n, family)?;
    let sum = |terms: &[Result<u128>]| -> Result<u128> {
        terms.iter().try_fold(0u128, |acc, t| acc.checked_add(t.clone()?).ok_or(Error::CountOverflow))
    };
    match family {
        Family::M1 if q % 2 == 0 => term(q + 1, q + 1 - n, 0, 1),
        Family::M1 => {
            let h = (q - 1) / 2;
            sum(&[
                term(h, h - n, n, 1),
                term(h, h + 1 - n, n, n as i128),
                term(h, h + 2 - n, n - 2, (n * (n - 1)) as i128),
            ])
        }
        Family::M2 => {
            let h = (q + 1) / 2;
            term(h, h - n, n, 1)
        }
        Family::M3 => {
            let h = q / 2;
            sum(&[term(h, h - n, n, 1), term(h, h + 1 - n, n - 1, n as i128)])
        }
    }
}

/// Closed-form number of projective classes of ordered arc pairs of the
/// family.
pub fn count_arc_pairs_closed(q: u64, n: u64, family: Family) -> Result<u128> {
    let (q, n) = check_counting_args(q, n, family)?;
    match family {
        Family::M1 if q % 2 == 0 => term(q - 2, q + 1 - n, 0, 1),
        Family::M1 => {
            let bracket = ((q + 1) * (q + 3 - 2 * n) + n * (n - 1)) as i128;
            if q + 3 - 2 * n < 0 {
                return Ok(0);
            }
            term((q - 3) / 2, (q + 3 - 2 * n) / 2, n - 4, bracket)
        }
        Family::M2 => term((q - 1) / 2, (q + 1 - 2 * n).div_euclid(2), n - 2, 1),
        Family::M3 => term((q - 2) / 2, (q + 2 - 2 * n).div_euclid(2), n - 2, (q + 2 - n) as i128),
    }
}

/// The stabilizer of the family's last column in PGL(2,q).
pub fn family_stabilizer(f: &Field, family: Family) -> Result<Vec<MobiusTransform>> {
    let col = ProjPoint::new(f, &family_column(f, family)?)?;
    Ok(pgl2(f).into_iter().filter(|g| g.act_plane(f, &col) == col).collect())
}

/// Enumerated counts for one family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyEnumeration {
    /// Ordered tuples whose matrix is an arc.
    pub tuples: u128,
    /// Tuples that are lexicographically least in their stabilizer orbit.
    pub orbits: u128,
    /// Whether no nonidentity stabilizer element fixes a tuple.
    pub free: bool,
    pub stabilizer_order: usize,
}

/// Counts the ordered tuples of distinct points of PG(1,q) whose columns,
/// joined with the family's last column, form an arc, and the number of
/// stabilizer orbits among them. The budget bounds the search nodes.
pub fn enumerate_family(f: &Field, n: usize, family: Family, budget: Budget) -> Result<FamilyEnumeration> {
    check_counting_args(f.q() as u64, n as u64, family)?;
    let last = family_column(f, family)?;
    let line = ProjLinePoint::all(f);
    let size = line.len();
    let cols: Vec<Vec<Elem>> = line.iter().map(|&x| moment_vector(f, 3, x)).collect();
    // pairwise compatibility from the 3x3 determinants with the last column
    let mut compat = vec![false; size * size];
    for i in 0..size {
        for j in 0..size {
            if i != j {
                let m = Matrix::from_columns(3, &[cols[i].clone(), cols[j].clone(), last.clone()]);
                compat[i * size + j] = !m.det(f)?.is_zero();
            }
        }
    }
    let index_of = |x: ProjLinePoint| match x {
        ProjLinePoint::Finite(e) => e.index() as usize,
        ProjLinePoint::Infinity => size - 1,
    };
    let stab = family_stabilizer(f, family)?;
    let actions: Vec<Vec<u16>> = stab
        .iter()
        .filter(|g| **g != MobiusTransform::IDENTITY)
        .map(|g| line.iter().map(|&x| index_of(g.apply(f, x)) as u16).collect())
        .collect();

    struct State<'a> {
        compat: &'a [bool],
        actions: &'a [Vec<u16>],
        size: usize,
        n: usize,
        tuple: Vec<u16>,
        tuples: u128,
        orbits: u128,
        free: bool,
        nodes: u64,
        budget: Budget,
    }

    fn leaf(st: &mut State) {
        st.tuples += 1;
        let mut minimal = true;
        for act in st.actions {
            let mut fixed = true;
            for &t in &st.tuple {
                let img = act[t as usize];
                if img != t {
                    fixed = false;
                    if img < t {
                        minimal = false;
                    }
                    break;
                }
            }
            if fixed {
                st.free = false;
            }
            if !minimal {
                break;
            }
        }
        if minimal {
            st.orbits += 1;
        }
    }

    fn dfs(st: &mut State) -> Result<()> {
        if st.tuple.len() == st.n {
            leaf(st);
            return Ok(());
        }
        for c in 0..st.size {
            st.nodes += 1;
            st.budget.check(st.nodes)?;
            let ok = st.tuple.iter().all(|&t| st.compat[t as usize * st.size + c]);
            if ok {
                st.tuple.push(c as u16);
                dfs(st)?;
                st.tuple.pop();
            }
        }
        Ok(())
    }

    let mut st = State {
        compat: &compat,
        actions: &actions,
        size,
        n,
        tuple: Vec::with_capacity(n),
        tuples: 0,
        orbits: 0,
        free: true,
        nodes: 0,
        budget,
    };
    dfs(&mut st)?;
    Ok(FamilyEnumeration { tuples: st.tuples, orbits: st.orbits, free: st.free, stabilizer_order: stab.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deep_holes::enumerate_deep_holes;

    fn field(p: u32, h: u32) -> Arc<Field> {
        Field::new(p, h, None).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(count_mi_closed(4, 5, Family::M1).unwrap(), 120);
        assert_eq!(count_mi_closed(9, 5, Family::M2).unwrap(), 3840);
        assert_eq!(count_mi_closed(8, 5, Family::M3).unwrap(), 1920);
        assert_eq!(count_arc_pairs_closed(4, 5, Family::M1).unwrap(), 2);
        assert_eq!(count_arc_pairs_closed(9, 5, Family::M2).unwrap(), 192);
        assert_eq!(count_arc_pairs_closed(8, 5, Family::M3).unwrap(), 240);
        assert_eq!(count_mi_closed(5, 5, Family::M2).unwrap(), 0);
        assert!(count_mi_closed(8, 5, Family::M2).is_err());
    }

    #[test]
    fn enumeration_matches_closed_forms() {
        for (p, h, n, fam) in [(2, 2, 5, Family::M1), (7, 1, 5, Family::M1), (2, 3, 5, Family::M3), (3, 2, 5, Family::M2)] {
            let f = field(p, h);
            let q = f.q() as u64;
            let e = enumerate_family(&f, n, fam, Budget::default()).unwrap();
            assert_eq!(e.tuples, count_mi_closed(q, n as u64, fam).unwrap());
            assert_eq!(e.orbits, count_arc_pairs_closed(q, n as u64, fam).unwrap());
            assert!(e.free);
            assert_eq!(e.tuples, e.orbits * e.stabilizer_order as u128);
        }
    }

    #[test]
    fn o1_sizes() {
        let f = field(7, 1);
        let d = EvaluationSet::first_n(&f, 5).unwrap();
        assert_eq!(admissible_set(&f, &d, 1).unwrap().len(), 7 - 2 - 2);
        let f8 = field(2, 3);
        let d = EvaluationSet::first_n(&f8, 5).unwrap();
        assert_eq!(admissible_set(&f8, &d, 1).unwrap().len(), 8 - 2 - 1);
    }

    #[test]
    fn o2_excludes_identity_coset() {
        let f = field(5, 1);
        let d = EvaluationSet::first_n(&f, 5).unwrap();
        let o2 = admissible_set(&f, &d, 2).unwrap();
        assert!(!o2.contains(&nucleus3()));
        let f13 = field(13, 1);
        let d = EvaluationSet::first_n(&f13, 8).unwrap();
        assert!(admissible_set(&f13, &d, 3).unwrap().is_empty());
        assert!(admissible_set(&f13, &d, 4).is_err());
    }

    #[test]
    fn classification_matches_bruteforce_small() {
        for (p, h, k) in [(5, 1, 3), (5, 1, 2), (7, 1, 2), (2, 3, 2), (2, 3, 4), (3, 2, 3), (3, 2, 2)] {
            let f = field(p, h);
            let code = GrsCode::first_n(f.clone(), k, k + 3).or_else(|_| GrsCode::full_line(f.clone(), k)).unwrap();
            let brute: Vec<ProjPoint> =
                enumerate_deep_holes(&code, Budget::default()).unwrap().into_iter().map(|c| c.syndrome).collect();
            assert_eq!(brute, red3_classify(&code).unwrap(), "q = {}, k = {k}", f.q());
        }
    }

    #[test]
    fn canonical_forms_for_each_orbit() {
        for (p, h) in [(7, 1), (2, 3), (3, 2)] {
            let f = field(p, h);
            let d = EvaluationSet::first_n(&f, 5).unwrap();
            let g = crate::grs::moment_matrix(&f, 3, d.points());
            let space = ProjSpace::new(f.q(), 3).unwrap();
            for i in 0..space.size() {
                let v = space.point(i);
                let full = g.with_column(&v);
                let label = orbit_label(&f, &ProjPoint::new(&f, &v).unwrap());
                match canonical_form(&f, &g, &v) {
                    Ok(form) => {
                        let mut moved = form.p.mul(&f, &full).unwrap();
                        for (j, &s) in form.q.iter().enumerate() {
                            moved.scale_column(j, &f, s);
                        }
                        assert_eq!(moved, form.matrix);
                        assert!(form.matrix.is_mds(&f));
                        assert!(family_condition(&f, form.family, &form.points).unwrap());
                        let want = match label {
                            OrbitLabel::O3 => Family::M2,
                            OrbitLabel::O4 => Family::M3,
                            _ => Family::M1,
                        };
                        assert_eq!(form.family, want);
                    }
                    Err(Error::NotMds(_)) => assert!(!full.is_mds(&f)),
                    Err(Error::ExtensionIsGrs) => assert_eq!(label, OrbitLabel::O1Rnc),
                    Err(e) => panic!("unexpected {e:?}"),
                }
            }
        }
    }

    #[test]
    fn grs_extension_is_rejected() {
        let f = field(7, 1);
        let d = EvaluationSet::first_n(&f, 5).unwrap();
        let g = crate::grs::moment_matrix(&f, 3, d.points());
        let v = moment_vector(&f, 3, ProjLinePoint::Finite(Elem::new(6)));
        assert_eq!(canonical_form(&f, &g, &v).unwrap_err(), Error::ExtensionIsGrs);
    }
}
