//! JSON fixtures:
//!
//! ```json
//! {"field": {"p": 7, "h": 1}, "k": 3, "eval": [0, 1, 2, 3, 4], "matrix": [[...], ...]}
//! ```
//!
//! `modulus` may be given inside `field`; `matrix` is an optional generator
//! matrix (element indices, one array per row) that must generate the same
//! code as the evaluation data.

use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use deephole_core::{Elem, EvaluationSet, Field, GrsCode, Matrix, ProjLinePoint};

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct FieldEntry {
    p: u32,
    #[serde(default = "one")]
    h: u32,
    #[serde(default)]
    modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct FixtureFile {
    field: FieldEntry,
    k: usize,
    eval: Vec<ProjLinePoint>,
    #[serde(default)]
    matrix: Option<Vec<Vec<u32>>>,
}

/// A validated fixture.
#[derive(Debug)]
pub struct Fixture {
    pub field: Arc<Field>,
    pub code: GrsCode,
    pub matrix: Option<Matrix>,
}

pub fn load_fixture(path: &Path) -> Result<Fixture> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_fixture(&text).with_context(|| format!("fixture {}", path.display()))
}

pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let raw: FixtureFile = serde_json::from_str(text).context("schema error")?;
    let fe = &raw.field;
    let field = Field::new(fe.p, fe.h, fe.modulus.as_deref()).context("field")?;
    let f = &*field;
    let points = raw
        .eval
        .iter()
        .enumerate()
        .map(|(i, p)| p.validate(f).with_context(|| format!("eval[{i}]")))
        .collect::<Result<Vec<ProjLinePoint>>>()?;
    let d = EvaluationSet::new(f, &points).context("eval")?;
    let code = GrsCode::new(field.clone(), raw.k, d).context("k")?;
    let matrix = match raw.matrix {
        None => None,
        Some(rows) => {
            let rows = rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, &x)| f.elem(x).with_context(|| format!("matrix[{i}][{j}]")))
                        .collect::<Result<Vec<Elem>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let m = Matrix::from_rows(rows).context("matrix")?;
            if m.rows() != code.k() || m.cols() != code.n() {
                bail!("matrix is {}x{}, expected {}x{}", m.rows(), m.cols(), code.k(), code.n());
            }
            if m.rank(f) != code.k() || !m.mul(f, &code.parity().transpose())?.is_zero() {
                bail!("integrity error: the matrix does not generate the code (G H^T != 0)");
            }
            Some(m)
        }
    };
    Ok(Fixture { field, code, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_fixture() {
        let fx = parse_fixture(r#"{"field": {"p": 7}, "k": 3, "eval": [0, 1, 2, 3, 4]}"#).unwrap();
        assert_eq!((fx.code.n(), fx.code.k()), (5, 3));
        assert!(fx.matrix.is_none());
    }

    #[test]
    fn duplicate_point() {
        let err = parse_fixture(r#"{"field": {"p": 7}, "k": 3, "eval": [0, 1, 1, 3, 4]}"#).unwrap_err();
        assert!(format!("{err:#}").contains("duplicate"));
    }

    #[test]
    fn matrix_must_generate_the_code() {
        let good = r#"{"field": {"p": 5}, "k": 2, "eval": [0, 1, 2, 3], "matrix": [[1, 1, 1, 1], [0, 1, 2, 3]]}"#;
        assert!(parse_fixture(good).unwrap().matrix.is_some());
        let bad = r#"{"field": {"p": 5}, "k": 2, "eval": [0, 1, 2, 3], "matrix": [[1, 1, 1, 1], [0, 1, 2, 4]]}"#;
        assert!(format!("{:#}", parse_fixture(bad).unwrap_err()).contains("integrity"));
    }

    #[test]
    fn schema_errors_have_a_location() {
        let err = parse_fixture("{\"field\": {\"p\": 7},\n \"k\": \"three\"}").unwrap_err();
        assert!(format!("{err:#}").contains("line 2"));
    }
}
