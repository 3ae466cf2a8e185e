use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use deephole_core::deep_holes::{
    classify_generating_polynomial, conjecture_check, covering_radius, enumerate_deep_holes, gdrs_deep_holes,
    predicted_deep_holes, rnc_completeness, roth_seroussi_extensions,
};
use deephole_core::grs::moment_matrix;
use deephole_core::hyperoval::ordered_hyperovals;
use deephole_core::matrix::binomial;
use deephole_core::orbits::{orbit_decomposition, stabilizer, OrbitLabel};
use deephole_core::red3::{
    canonical_form, count_arc_pairs_closed, count_mi_closed, enumerate_family, family_stabilizer, Red3Context,
};
use deephole_core::{Budget, Elem, Error, EvaluationSet, Family, Field, GrsCode, Matrix, ProjLinePoint};

use crate::args::{
    ArcsVerb, CodeVerb, Command, ConjectureVerb, DeepholeVerb, ExtendVerb, FieldVerb, HyperovalVerb, Opts, OrbitsVerb,
    Red3Verb, RncVerb,
};
use crate::fixture::{load_fixture, Fixture};
use crate::report::{class_table, count_json, object, to_json, Report};
use crate::Usage;

const DEFAULT_SAMPLES: usize = 20;

pub fn dispatch(cmd: &Command, o: &Opts) -> Result<Report> {
    match cmd {
        Command::Field { verb: FieldVerb::Info } => field_info(o),
        Command::Code { verb: CodeVerb::Build } => code_build(o),
        Command::Code { verb: CodeVerb::MdsCheck } => mds_check(o),
        Command::Deephole { verb: DeepholeVerb::Enumerate } => deephole_enumerate(o),
        Command::Deephole { verb: DeepholeVerb::Predict } => deephole_predict(o),
        Command::Deephole { verb: DeepholeVerb::Verify } | Command::Verify => deephole_verify(o),
        Command::Deephole { verb: DeepholeVerb::ClassifyPoly } => classify_poly(o),
        Command::Radius => radius(o),
        Command::Extend { verb: ExtendVerb::RothSeroussi } => roth_seroussi(o),
        Command::Rnc { verb: RncVerb::Complete } => rnc_complete(o),
        Command::Orbits { verb: OrbitsVerb::Decompose } => orbits_decompose(o),
        Command::Orbits { verb: OrbitsVerb::Stabilizer } => orbits_stabilizer(o),
        Command::Red3 { verb: Red3Verb::Classify } => red3_classify(o),
        Command::Red3 { verb: Red3Verb::Verify } => red3_verify(o),
        Command::Arcs { verb: ArcsVerb::Canonical } => arcs_canonical(o),
        Command::Arcs { verb: ArcsVerb::Count } => arcs_count(o),
        Command::Hyperoval { verb: HyperovalVerb::Classes } => hyperoval_classes(o),
        Command::Conjecture { verb: ConjectureVerb::Check } => check_conjecture(o),
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

fn budget(o: &Opts) -> Budget {
    if o.force {
        Budget::unlimited()
    } else {
        Budget::new(o.budget)
    }
}

fn field(o: &Opts) -> Result<Arc<Field>> {
    let p = o.p.ok_or_else(|| usage("--p is required"))?;
    Ok(Field::new(p, o.h, o.modulus.as_deref())?)
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("--{flag} is required")))
}

/// The evaluation set from `--eval`, `--full-line` or `--n`; GF(q) if none
/// is given.
fn eval_set(o: &Opts, f: &Field) -> Result<EvaluationSet> {
    let given = [o.eval.is_some(), o.full_line, o.n.is_some()].iter().filter(|&&b| b).count();
    if given > 1 {
        bail!(usage("use only one of --eval, --full-line and --n"));
    }
    if let Some(points) = &o.eval {
        let points = points.iter().map(|p| p.validate(f)).collect::<deephole_core::Result<Vec<_>>>()?;
        return Ok(EvaluationSet::new(f, &points)?);
    }
    if o.full_line {
        return Ok(EvaluationSet::full_line(f));
    }
    Ok(EvaluationSet::first_n(f, o.n.unwrap_or(f.q() as usize))?)
}

fn fixture(o: &Opts) -> Result<Option<Fixture>> {
    o.fixture.as_deref().map(load_fixture).transpose()
}

fn code(o: &Opts) -> Result<(Arc<Field>, GrsCode)> {
    if let Some(fx) = fixture(o)? {
        return Ok((fx.field, fx.code));
    }
    let f = field(o)?;
    let k = need(o.k, "k")?;
    let d = eval_set(o, &f)?;
    let code = GrsCode::new(f.clone(), k, d)?;
    Ok((f, code))
}

fn elems(f: &Field, idx: &[u32], what: &str) -> Result<Vec<Elem>> {
    idx.iter().map(|&i| f.elem(i).with_context(|| format!("--{what}"))).collect()
}

fn code_header(code: &GrsCode) -> Vec<(&'static str, Value)> {
    vec![
        ("field", to_json(code.field().spec())),
        ("k", json!(code.k())),
        ("n", json!(code.n())),
        ("eval", to_json(&code.eval_set().points())),
    ]
}

fn field_info(o: &Opts) -> Result<Report> {
    let f = field(o)?;
    let eps = f.nonsquare_epsilon().ok().map(|e| e.index());
    Ok(Report::new(object(vec![
        ("field", to_json(f.spec())),
        ("q", json!(f.q())),
        ("primitive", json!(f.primitive().index())),
        ("epsilon", json!(eps)),
    ])))
}

fn code_build(o: &Opts) -> Result<Report> {
    let (_, code) = code(o)?;
    let mut pairs = code_header(&code);
    pairs.push(("generator", json!(code.generator().to_index_rows())));
    pairs.push(("parity", json!(code.parity().to_index_rows())));
    Ok(Report::new(object(pairs)))
}

fn mds_check(o: &Opts) -> Result<Report> {
    let (f, matrix) = match fixture(o)? {
        Some(Fixture { field, code, matrix }) => (field, matrix.unwrap_or_else(|| code.generator().clone())),
        None => {
            let (f, code) = code(o)?;
            (f, code.generator().clone())
        }
    };
    let minors = binomial(matrix.cols() as u64, matrix.rows() as u64);
    budget(o).check(minors)?;
    let witness = matrix.singular_minor(&f);
    let mds = witness.is_none();
    Ok(Report::new(object(vec![
        ("matrix", json!(matrix.to_index_rows())),
        ("mds", json!(mds)),
        ("singular_minor", json!(witness)),
    ]))
    .mismatch(!mds))
}

fn deephole_enumerate(o: &Opts) -> Result<Report> {
    let (_, code) = code(o)?;
    let classes = enumerate_deep_holes(&code, budget(o))?;
    let mut pairs = code_header(&code);
    pairs.push(("method", json!("bruteforce")));
    pairs.push(("count", json!(classes.len())));
    pairs.push(("classes", to_json(&classes)));
    Ok(Report::new(object(pairs)).with_table(class_table(&[("bruteforce", &classes)])))
}

fn deephole_predict(o: &Opts) -> Result<Report> {
    let (_, code) = code(o)?;
    let classes = predicted_deep_holes(&code)?;
    let mut pairs = code_header(&code);
    pairs.push(("method", json!("theorem")));
    pairs.push(("count", json!(classes.len())));
    pairs.push(("classes", to_json(&classes)));
    Ok(Report::new(object(pairs)).with_table(class_table(&[("theorem", &classes)])))
}

fn deephole_verify(o: &Opts) -> Result<Report> {
    let (_, code) = code(o)?;
    let predicted = predicted_deep_holes(&code)?;
    let brute = enumerate_deep_holes(&code, budget(o))?;
    let agree = brute == predicted;
    let mut pairs = code_header(&code);
    pairs.push(("bruteforce", json!({"count": brute.len(), "classes": to_json(&brute)})));
    pairs.push(("theorem", json!({"count": predicted.len(), "classes": to_json(&predicted)})));
    pairs.push(("agree", json!(agree)));
    Ok(Report::new(object(pairs))
        .with_table(class_table(&[("bruteforce", &brute), ("theorem", &predicted)]))
        .mismatch(!agree))
}

fn classify_poly(o: &Opts) -> Result<Report> {
    let (f, code) = code(o)?;
    let word = o.word.as_deref().ok_or_else(|| usage("--word is required"))?;
    let u = elems(&f, word, "word")?;
    let syndrome = code.syndrome(&u)?;
    let c = classify_generating_polynomial(&code, &u)?;
    let mut pairs = code_header(&code);
    pairs.push(("word", to_json(&u)));
    pairs.push(("syndrome", to_json(&syndrome.projective)));
    pairs.push(("classification", to_json(&c)));
    Ok(Report::new(object(pairs)))
}

fn radius(o: &Opts) -> Result<Report> {
    let (f, code) = code(o)?;
    let rho = covering_radius(&code, budget(o))?;
    let (n, k, q) = (code.n(), code.k(), f.q() as usize);
    let bounds = if n <= q { json!([n - k, n - k]) } else { json!([q - k, q + 1 - k]) };
    let mut pairs = code_header(&code);
    pairs.push(("covering_radius", json!(rho)));
    pairs.push(("bounds", bounds));
    Ok(Report::new(object(pairs)))
}

fn roth_seroussi(o: &Opts) -> Result<Report> {
    let f = field(o)?;
    let ell = need(o.k, "k")?;
    let d = eval_set(o, &f)?;
    let rep = roth_seroussi_extensions(&f, ell, &d, budget(o))?;
    let mismatch = rep.in_range && !rep.agrees();
    let table = crate::report::Table {
        header: vec!["method".into(), "point".into()],
        rows: [("bruteforce", &rep.bruteforce), ("theorem", &rep.predicted)]
            .iter()
            .flat_map(|(m, pts)| pts.iter().map(move |p| vec![m.to_string(), p.to_string()]))
            .collect(),
    };
    Ok(Report::new(object(vec![
        ("field", to_json(f.spec())),
        ("ell", json!(ell)),
        ("eval", to_json(&d.points())),
        ("in_range", json!(rep.in_range)),
        ("bruteforce", to_json(&rep.bruteforce)),
        ("theorem", to_json(&rep.predicted)),
        ("agree", json!(rep.agrees())),
    ]))
    .with_table(table)
    .mismatch(mismatch))
}

fn rnc_complete(o: &Opts) -> Result<Report> {
    let f = field(o)?;
    let m = need(o.m, "m")?;
    let c = rnc_completeness(&f, m, budget(o))?;
    Ok(Report::new(object(vec![
        ("field", to_json(f.spec())),
        ("m", json!(m)),
        ("complete", json!(c.complete)),
        ("extenders", to_json(&c.extenders)),
    ])))
}

fn labels(f: &Field) -> Vec<OrbitLabel> {
    [OrbitLabel::O1Nucleus, OrbitLabel::O2, OrbitLabel::O3, OrbitLabel::O4]
        .into_iter()
        .filter(|l| l.exists_for(f.is_even()))
        .collect()
}

fn orbits_decompose(o: &Opts) -> Result<Report> {
    let f = field(o)?;
    let sizes = orbit_decomposition(&f);
    let mut orders = serde_json::Map::new();
    for l in labels(&f) {
        orders.insert(l.name().into(), json!(stabilizer(&f, l)?.elements.len()));
    }
    let mut rows = vec![vec!["O1_RNC".to_string(), sizes.rnc.to_string(), String::new()]];
    for l in labels(&f) {
        let size = match l {
            OrbitLabel::O1Nucleus => sizes.nucleus,
            OrbitLabel::O2 => sizes.o2,
            OrbitLabel::O3 => sizes.o3,
            _ => sizes.o4,
        };
        rows.push(vec![l.name().into(), size.to_string(), orders[l.name()].to_string()]);
    }
    let table = crate::report::Table { header: vec!["orbit".into(), "size".into(), "stabilizer_order".into()], rows };
    Ok(Report::new(object(vec![
        ("field", to_json(f.spec())),
        ("orbit_sizes", to_json(&sizes)),
        ("total", json!(sizes.total())),
        ("stabilizer_orders", Value::Object(orders)),
    ]))
    .with_table(table))
}

fn orbits_stabilizer(o: &Opts) -> Result<Report> {
    let f = field(o)?;
    let label = OrbitLabel::parse(o.label.as_deref().ok_or_else(|| usage("--label is required"))?)?;
    let st = stabilizer(&f, label)?;
    Ok(Report::new(object(vec![
        ("field", to_json(f.spec())),
        ("label", json!(label.name())),
        ("base", to_json(&st.base)),
        ("order", json!(st.elements.len())),
        ("elements", to_json(&st.elements)),
    ])))
}

fn red3_code(o: &Opts) -> Result<(Arc<Field>, GrsCode)> {
    let (f, code) = code(o)?;
    if code.n() != code.k() + 3 {
        bail!(usage(format!("redundancy-3 verbs need n = k + 3, got n = {}, k = {}", code.n(), code.k())));
    }
    Ok((f, code))
}

fn red3_classify(o: &Opts) -> Result<Report> {
    let (f, code) = red3_code(o)?;
    let classes = Red3Context::new(f)?.classify(&code)?;
    let mut pairs = code_header(&code);
    pairs.push(("method", json!("theorem")));
    pairs.push(("count", json!(classes.len())));
    pairs.push(("classes", to_json(&classes)));
    Ok(Report::new(object(pairs)))
}

/// Checks one code, or `--samples` seeded evaluation sets of size `k + 3`
/// when no evaluation data is given.
fn red3_verify(o: &Opts) -> Result<Report> {
    let sampled = o.fixture.is_none() && o.eval.is_none() && o.n.is_none() && !o.full_line;
    let (f, codes) = if sampled {
        let f = field(o)?;
        let k = need(o.k, "k")?;
        let n = k + 3;
        if n > f.q() as usize + 1 {
            bail!(usage(format!("k = {k} is too large for GF({})", f.q())));
        }
        let line = ProjLinePoint::all(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
        let mut codes = Vec::new();
        for _ in 0..o.samples.unwrap_or(DEFAULT_SAMPLES) {
            let mut idx = sample(&mut rng, line.len(), n).into_vec();
            idx.sort_unstable();
            let d = EvaluationSet::new(&f, &idx.iter().map(|&i| line[i]).collect::<Vec<_>>())?;
            codes.push(GrsCode::new(f.clone(), k, d)?);
        }
        (f, codes)
    } else {
        let (f, code) = red3_code(o)?;
        (f, vec![code])
    };
    let ctx = Red3Context::new(f.clone())?;
    let mut cases = Vec::new();
    let mut rows = Vec::new();
    let mut all_agree = true;
    for code in &codes {
        let brute: Vec<_> = enumerate_deep_holes(code, budget(o))?.into_iter().map(|c| c.syndrome).collect();
        let theory = ctx.classify(code)?;
        let agree = brute == theory;
        all_agree &= agree;
        let eval: Vec<String> = code.eval_set().points().iter().map(|p| p.to_string()).collect();
        rows.push(vec![eval.join(" "), brute.len().to_string(), theory.len().to_string(), agree.to_string()]);
        cases.push(json!({
            "eval": to_json(&code.eval_set().points()),
            "bruteforce": to_json(&brute),
            "theorem": to_json(&theory),
            "agree": agree,
        }));
    }
    let mut pairs = vec![("field", to_json(f.spec())), ("k", json!(codes[0].k()))];
    if sampled {
        pairs.push(("seed", json!(o.seed)));
        pairs.push(("samples", json!(codes.len())));
    }
    pairs.push(("cases", Value::Array(cases)));
    pairs.push(("agree", json!(all_agree)));
    let table = crate::report::Table {
        header: ["eval", "bruteforce", "theorem", "agree"].map(String::from).to_vec(),
        rows,
    };
    Ok(Report::new(object(pairs)).with_table(table).mismatch(!all_agree))
}

fn arcs_canonical(o: &Opts) -> Result<Report> {
    let (f, g) = match fixture(o)? {
        Some(Fixture { field, code, matrix }) => {
            let g = matrix.unwrap_or_else(|| code.generator().clone());
            (field, g)
        }
        None => {
            let f = field(o)?;
            let d = eval_set(o, &f)?;
            let g: Matrix = moment_matrix(&f, 3, d.points());
            (f, g)
        }
    };
    let column = o.column.as_deref().ok_or_else(|| usage("--column is required"))?;
    let v = elems(&f, column, "column")?;
    let form = canonical_form(&f, &g, &v)?;
    Ok(Report::new(object(vec![
        ("field", to_json(f.spec())),
        ("generator", json!(g.to_index_rows())),
        ("column", to_json(&v)),
        ("canonical", to_json(&form)),
    ])))
}

fn arcs_count(o: &Opts) -> Result<Report> {
    let f = field(o)?;
    let n = need(o.n, "n")?;
    let family = Family::parse(o.family.as_deref().ok_or_else(|| usage("--family is required"))?)?;
    let q = f.q() as u64;
    let mi = count_mi_closed(q, n as u64, family)?;
    let pairs_closed = count_arc_pairs_closed(q, n as u64, family)?;
    let stab = family_stabilizer(&f, family)?.len();
    let mut counts = vec![("closed_form", count_json(mi))];
    let mut arc_pairs = vec![("closed_form", count_json(pairs_closed))];
    let mut mismatch = false;
    let mut free = Value::Null;
    if o.enumerate {
        let e = enumerate_family(&f, n, family, budget(o))?;
        counts.push(("enumerated", count_json(e.tuples)));
        arc_pairs.push(("enumerated", count_json(e.orbits)));
        free = json!(e.free);
        mismatch = e.tuples != mi || e.orbits != pairs_closed || !e.free;
    }
    Ok(Report::new(object(vec![
        ("field", to_json(f.spec())),
        ("family", to_json(&family)),
        ("n", json!(n)),
        ("counts", object(counts)),
        ("arc_pairs", object(arc_pairs)),
        ("stabilizer_order", json!(stab)),
        ("free_action", free),
    ]))
    .mismatch(mismatch))
}

fn hyperoval_classes(o: &Opts) -> Result<Report> {
    let f = field(o)?;
    if !f.is_even() || f.q() < 4 {
        bail!(usage("hyperovals need q even and q >= 4"));
    }
    let rep = gdrs_deep_holes(&f, 2, budget(o))?;
    let mut pairs = vec![
        ("field", to_json(f.spec())),
        ("covering_radius", json!(rep.covering_radius)),
        ("count", json!(rep.classes.len())),
        ("classes", to_json(&rep.classes)),
        ("hyperovals", json!(rep.hyperovals)),
    ];
    let mut mismatch = false;
    if o.enumerate {
        let ovals = ordered_hyperovals(&f, budget(o))?;
        pairs.push(("enumerated", json!(ovals.len())));
        mismatch = ovals.len() != rep.classes.len();
    }
    Ok(Report::new(object(pairs)).with_table(class_table(&[("bruteforce", &rep.classes)])).mismatch(mismatch))
}

/// One `k` if given, otherwise every `k` in `2..=q-2`; parameters that
/// exceed the budget are reported as skipped.
fn check_conjecture(o: &Opts) -> Result<Report> {
    let f = field(o)?;
    let q = f.q() as usize;
    let ks: Vec<usize> = match o.k {
        Some(k) => vec![k],
        None if q >= 4 => (2..=q - 2).collect(),
        None => bail!(usage("no k in 2..=q-2")),
    };
    let mut results = Vec::new();
    let mut rows = Vec::new();
    let mut mismatch = false;
    for k in ks {
        match conjecture_check(&f, k, budget(o)) {
            Ok(rep) => {
                mismatch |= !rep.holds && !rep.known_exception;
                rows.push(vec![k.to_string(), rep.holds.to_string(), rep.known_exception.to_string()]);
                results.push(to_json(&rep));
            }
            Err(Error::BudgetExceeded { needed, budget }) if o.k.is_none() => {
                rows.push(vec![k.to_string(), "skipped".into(), String::new()]);
                results.push(json!({"k": k, "skipped": {"needed": needed, "budget": budget}}));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let table = crate::report::Table {
        header: ["k", "holds", "known_exception"].map(String::from).to_vec(),
        rows,
    };
    Ok(Report::new(object(vec![("field", to_json(f.spec())), ("results", Value::Array(results))]))
        .with_table(table)
        .mismatch(mismatch))
}
