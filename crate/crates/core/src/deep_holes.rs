//! Coset distances, covering radius, deep-hole enumeration and the
//! predicted deep-hole sets of Reed-Solomon codes.

use std::collections::HashMap;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::geometry::{moment_vector, nucleus_vector, ProjLinePoint, ProjPoint, ProjSpace};
use crate::grs::{delta_polynomial, leading_part_from_syndrome, moment_matrix, EvaluationSet, GrsCode};
use crate::poly::Poly;
use crate::search::{distance_map, extension_points, span_distance, Budget};

/// Why a projective syndrome is a deep hole.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// The syndrome is `[c_r(delta)]`.
    Rnc(ProjLinePoint),
    /// The syndrome is `(0, ..., 0, 1, 0)` in even characteristic.
    Nucleus,
    Other,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(None)?;
        match self {
            Witness::Rnc(delta) => {
                map.serialize_entry("type", "rnc")?;
                map.serialize_entry("delta", delta)?;
            }
            Witness::Nucleus => map.serialize_entry("type", "nucleus")?,
            Witness::Other => map.serialize_entry("type", "other")?,
        }
        map.end()
    }
}

/// One equivalence class of deep holes, identified by its projective
/// syndrome.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DeepHoleClass {
    pub syndrome: ProjPoint,
    pub witness: Witness,
}

/// Tags points of PG(r-1,q) as RNC points, the nucleus, or neither.
#[derive(Clone, Debug)]
pub struct WitnessTagger {
    rnc: HashMap<ProjPoint, ProjLinePoint>,
    nucleus: Option<ProjPoint>,
}

impl WitnessTagger {
    pub fn new(f: &Field, r: usize) -> WitnessTagger {
        let rnc = ProjLinePoint::all(f)
            .into_iter()
            .map(|x| (ProjPoint::new(f, &moment_vector(f, r, x)).expect("nonzero"), x))
            .collect();
        let nucleus = (f.is_even() && r >= 3).then(|| ProjPoint::new(f, &nucleus_vector(r)).expect("nonzero"));
        WitnessTagger { rnc, nucleus }
    }

    pub fn tag(&self, p: &ProjPoint) -> Witness {
        if let Some(&x) = self.rnc.get(p) {
            Witness::Rnc(x)
        } else if self.nucleus.as_ref() == Some(p) {
            Witness::Nucleus
        } else {
            Witness::Other
        }
    }

    pub fn classify(&self, points: Vec<ProjPoint>) -> Vec<DeepHoleClass> {
        points.into_iter().map(|p| DeepHoleClass { witness: self.tag(&p), syndrome: p }).collect()
    }
}

/// Least number of parity columns whose span contains `s`.
pub fn coset_distance(code: &GrsCode, s: &[Elem], budget: Budget) -> Result<usize> {
    if s.len() != code.r() {
        return Err(Error::LengthMismatch { expected: code.r(), actual: s.len() });
    }
    span_distance(code.field(), code.parity(), s, budget)
}

/// Covering radius by a full sweep of the syndrome space.
pub fn covering_radius(code: &GrsCode, budget: Budget) -> Result<usize> {
    let dist = distance_map(code.field(), code.parity(), budget)?;
    Ok(dist.into_iter().max().unwrap_or(0) as usize)
}

/// Whether `u` is a deep hole. For `n <= q` this is the MDS test on
/// `[H | S(u)]`; on the full projective line the covering radius is
/// computed first and compared with the coset distance.
pub fn is_deep_hole(code: &GrsCode, u: &[Elem], budget: Budget) -> Result<bool> {
    let syn = code.syndrome(u)?;
    if syn.is_zero() {
        return Ok(false);
    }
    if !code.is_full_line() {
        return Ok(code.augmented_parity(&syn.s).is_mds(code.field()));
    }
    let rho = covering_radius(code, budget)?;
    Ok(coset_distance(code, &syn.s, budget)? == rho)
}

/// All deep-hole classes, by brute force over projective syndromes.
pub fn enumerate_deep_holes(code: &GrsCode, budget: Budget) -> Result<Vec<DeepHoleClass>> {
    let f = code.field();
    let tagger = WitnessTagger::new(f, code.r());
    if !code.is_full_line() {
        return Ok(tagger.classify(extension_points(f, code.parity(), budget)?));
    }
    let dist = distance_map(f, code.parity(), budget)?;
    let rho = dist.iter().copied().max().unwrap_or(0);
    let space = ProjSpace::new(f.q(), code.r())?;
    let points = dist
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d == rho)
        .map(|(i, _)| space.proj_point(i as u64))
        .collect();
    Ok(tagger.classify(points))
}

/// The deep-hole classes predicted by the RNC description: `[c_r(delta)]`
/// for `delta` outside the evaluation set, plus the nucleus when `q` is even
/// and `n = k + 3`. Requires `k >= (q-1)/2`; on the full line only the case
/// `q` even, `k = q - 2` is covered.
pub fn predicted_deep_holes(code: &GrsCode) -> Result<Vec<DeepHoleClass>> {
    let f = code.field();
    let q = f.q() as usize;
    let (k, r) = (code.k(), code.r());
    if code.is_full_line() {
        if f.is_even() && k + 2 == q {
            return Ok(vec![DeepHoleClass { syndrome: ProjPoint::new(f, &nucleus_vector(3))?, witness: Witness::Nucleus }]);
        }
        return Err(Error::NotApplicable(format!("full-line code with q = {q}, k = {k}")));
    }
    if k < (q - 1) / 2 {
        return Err(Error::NotApplicable(format!("k = {k} is below (q-1)/2 = {}", (q - 1) / 2)));
    }
    let mut out: Vec<DeepHoleClass> = code
        .eval_set()
        .complement(f)
        .into_iter()
        .map(|x| DeepHoleClass { syndrome: ProjPoint::new(f, &moment_vector(f, r, x)).expect("nonzero"), witness: Witness::Rnc(x) })
        .collect();
    if f.is_even() && r == 3 {
        out.push(DeepHoleClass { syndrome: ProjPoint::new(f, &nucleus_vector(3))?, witness: Witness::Nucleus });
    }
    out.sort_by(|a, b| a.syndrome.cmp(&b.syndrome));
    Ok(out)
}

/// Shape of the leading part `u_1(X)` of a deep hole's generating
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum GenPolyForm {
    /// `a X^k`.
    MonomialK,
    /// A multiple of the part of degree `>= k` of the interpolant of
    /// `1/(x_i - delta)`.
    Delta { delta: Elem },
    /// `a (X^{k+1} + s_1 X^k)` with `s_1 = sum x_i`.
    Nucleus { s1: Elem },
}

/// Result of [`classify_generating_polynomial`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyClassification {
    pub form: GenPolyForm,
    /// The leading part of `u(X)`.
    pub leading: Poly,
    /// The equivalent representative `X^k P_u(X)` with `P_u` monic.
    pub monic: Poly,
    /// Evaluations of `monic` on the evaluation set.
    pub representative: Vec<Elem>,
}

fn proportional(f: &Field, a: &Poly, b: &Poly) -> bool {
    if a.is_zero() || b.is_zero() || a.degree() != b.degree() {
        return false;
    }
    let ratio = f.div(a.leading_coeff(), b.leading_coeff());
    *a == b.scale(f, ratio)
}

/// Matches the leading part of `u(X)` against the three known shapes,
/// working from the polynomial alone.
pub fn classify_generating_polynomial(code: &GrsCode, u: &[Elem]) -> Result<PolyClassification> {
    let f = code.field();
    let q = f.q() as usize;
    let k = code.k();
    let d = code.eval_set();
    if d.has_infinity() {
        return Err(Error::InfinityPresent);
    }
    if k < (q - 1) / 2 {
        return Err(Error::NotApplicable(format!("k = {k} is below (q-1)/2 = {}", (q - 1) / 2)));
    }
    let syn = code.syndrome(u)?;
    if syn.is_zero() || !code.augmented_parity(&syn.s).is_mds(f) {
        return Err(Error::NotDeepHole);
    }
    let leading = leading_part_from_syndrome(code, &syn.s)?;
    let form = if proportional(f, &leading, &Poly::monomial(k, Elem::ONE)) {
        Some(GenPolyForm::MonomialK)
    } else {
        d.complement(f)
            .into_iter()
            .filter_map(|x| x.finite())
            .find(|&delta| {
                delta_polynomial(f, d, delta).is_ok_and(|p| proportional(f, &leading, &p.high_part(k)))
            })
            .map(|delta| GenPolyForm::Delta { delta })
    };
    let form = match form {
        Some(form) => form,
        None => {
            let s1 = d.finite_points().into_iter().fold(Elem::ZERO, |acc, x| f.add(acc, x));
            let shape = Poly::monomial(k + 1, Elem::ONE).add(f, &Poly::monomial(k, s1));
            if f.is_even() && code.r() == 3 && proportional(f, &leading, &shape) {
                GenPolyForm::Nucleus { s1 }
            } else {
                return Err(Error::Internal("deep hole with an unrecognized generating polynomial".into()));
            }
        }
    };
    let monic = leading.scale(f, f.inv(leading.leading_coeff()));
    let representative = d.finite_points().into_iter().map(|x| monic.eval(f, x)).collect();
    Ok(PolyClassification { form, leading, monic, representative })
}

/// Brute-force and predicted MDS extensions of `G_l(D)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub ell: usize,
    /// Whether `2 <= l <= n - (q-1)/2`, where the prediction is a theorem.
    pub in_range: bool,
    pub bruteforce: Vec<ProjPoint>,
    pub predicted: Vec<ProjPoint>,
}

impl ExtensionReport {
    pub fn agrees(&self) -> bool {
        self.bruteforce == self.predicted
    }
}

/// All `[g]` with `[G_l(D) | g]` MDS, together with the set
/// `{[c_l(delta)] : delta not in D}` (plus the nucleus for `q` even, `l = 3`).
pub fn roth_seroussi_extensions(f: &Field, ell: usize, d: &EvaluationSet, budget: Budget) -> Result<ExtensionReport> {
    let n = d.n();
    if ell < 1 || ell > n {
        return Err(Error::InvalidParameters(format!("l = {ell} must lie in 1..={n}")));
    }
    let q = f.q() as usize;
    let g = moment_matrix(f, ell, d.points());
    let bruteforce = extension_points(f, &g, budget)?;
    let mut predicted: Vec<ProjPoint> = d
        .complement(f)
        .into_iter()
        .map(|x| ProjPoint::new(f, &moment_vector(f, ell, x)).expect("nonzero"))
        .collect();
    if f.is_even() && ell == 3 {
        predicted.push(ProjPoint::new(f, &nucleus_vector(3))?);
    }
    predicted.sort();
    let in_range = ell >= 2 && n >= (q - 1) / 2 && ell <= n - (q - 1) / 2;
    Ok(ExtensionReport { ell, in_range, bruteforce, predicted })
}

/// Whether the full RNC in PG(m-1,q) is a complete arc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Completeness {
    pub m: usize,
    pub complete: bool,
    pub extenders: Vec<ProjPoint>,
}

pub fn rnc_completeness(f: &Field, m: usize, budget: Budget) -> Result<Completeness> {
    if m < 2 || m > f.q() as usize {
        return Err(Error::InvalidParameters(format!("m = {m} must lie in 2..={}", f.q())));
    }
    let g = moment_matrix(f, m, &ProjLinePoint::all(f));
    let extenders = extension_points(f, &g, budget)?;
    Ok(Completeness { m, complete: extenders.is_empty(), extenders })
}

/// Deep holes of the full-line codes whose classification is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullLineReport {
    pub k: usize,
    pub covering_radius: usize,
    pub classes: Vec<DeepHoleClass>,
    /// For `q` even and `k = 2`: the normalized hyperoval generator matrix
    /// of each class, as row-major element indices.
    pub hyperovals: Vec<Vec<Vec<u32>>>,
}

/// Deep holes of the `[q+1, k]` code for `k = q - 2`, and for `k = 2` when
/// `q` is even. Other parameters are open problems.
pub fn gdrs_deep_holes(field: &std::sync::Arc<Field>, k: usize, budget: Budget) -> Result<FullLineReport> {
    let f = &**field;
    let q = f.q() as usize;
    let covered = k + 2 == q || (f.is_even() && k == 2);
    if !covered {
        return Err(Error::OpenProblem(format!("deep holes of the [{}, {k}] code over GF({q})", q + 1)));
    }
    let code = GrsCode::full_line(field.clone(), k)?;
    let dist = distance_map(f, code.parity(), budget)?;
    let rho = dist.iter().copied().max().unwrap_or(0);
    let classes = enumerate_deep_holes(&code, budget)?;
    let mut hyperovals = Vec::new();
    if f.is_even() && k == 2 {
        for c in &classes {
            let u = code.word_for_syndrome(c.syndrome.coords())?;
            let m = crate::hyperoval::hyperoval_matrix(f, &u)?;
            hyperovals.push(m.to_index_rows());
        }
    }
    Ok(FullLineReport { k, covering_radius: rho as usize, classes, hyperovals })
}

/// Outcome of checking that every deep hole of the `[q, k]` code on GF(q)
/// has syndrome `[c_{q-k}(inf)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub k: usize,
    pub holds: bool,
    /// `q` even and `k = q - 3`, where the nucleus is a known counterexample.
    pub known_exception: bool,
    pub witnesses: Vec<DeepHoleClass>,
}

pub fn conjecture_check(field: &std::sync::Arc<Field>, k: usize, budget: Budget) -> Result<ConjectureReport> {
    let f = &**field;
    let q = f.q() as usize;
    let known_exception = f.is_even() && k + 3 == q;
    let min_k = if known_exception { 1 } else { 2 };
    if k < min_k || k + 2 > q {
        return Err(Error::InvalidParameters(format!("k = {k} must lie in 2..={}", q - 2)));
    }
    let d = EvaluationSet::first_n(f, q)?;
    let code = GrsCode::with_min_dimension(field.clone(), k, d, min_k)?;
    let inf = ProjPoint::new(f, &moment_vector(f, code.r(), ProjLinePoint::Infinity))?;
    let witnesses: Vec<DeepHoleClass> =
        enumerate_deep_holes(&code, budget)?.into_iter().filter(|c| c.syndrome != inf).collect();
    Ok(ConjectureReport { k, holds: witnesses.is_empty(), known_exception, witnesses })
}
