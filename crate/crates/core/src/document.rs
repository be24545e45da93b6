//! JSON encoding of a datum:
//!
//! ```json
//! {
//!   "group": [2, 2, 2],
//!   "kernels": [[[1, 0, 0]], [[0, 1, 0]], [[0, 0, 1]]],
//!   "vectors": [
//!     {"g_prime": 1, "branch": [[0, 0, 1], [0, 0, 1]], "eta": [[0, 1, 0], [0, 0, 1]]},
//!     {"g_prime": 1, "branch": [[1, 0, 0], [1, 0, 0]], "eta": [[1, 0, 0], [0, 0, 1]]},
//!     {"g_prime": 1, "branch": [[0, 1, 0], [0, 1, 0]], "eta": [[1, 0, 0], [0, 1, 0]]}
//!   ]
//! }
//! ```
//!
//! Every tuple is an exponent vector in `G`, also for elements of `G/K_i`.

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianGroup, GroupElement, Subgroup};
use crate::datum::{AlgebraicDatum, VectorSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorDocument {
    pub g_prime: u32,
    pub branch: Vec<Vec<i64>>,
    pub eta: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumDocument {
    pub group: Vec<i64>,
    pub kernels: Vec<Vec<Vec<i64>>>,
    pub vectors: Vec<VectorDocument>,
}

impl DatumDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical text: the layout of the module example, one vector per
    /// line, with a trailing newline. Equal documents give equal bytes.
    pub fn to_json(&self) -> String {
        let vectors: Vec<String> = self
            .vectors
            .iter()
            .map(|v| {
                format!(
                    "    {{\"g_prime\": {}, \"branch\": {}, \"eta\": {}}}",
                    v.g_prime,
                    compact(&v.branch),
                    compact(&v.eta)
                )
            })
            .collect();
        format!(
            "{{\n  \"group\": {},\n  \"kernels\": {},\n  \"vectors\": [\n{}\n  ]\n}}\n",
            compact(&self.group),
            compact(&self.kernels),
            vectors.join(",\n")
        )
    }

    pub fn from_datum(d: &AlgebraicDatum) -> Self {
        let tuples = |xs: &[GroupElement]| xs.iter().map(|x| x.exponents().to_vec()).collect();
        DatumDocument {
            group: d.group().orders().to_vec(),
            kernels: d.kernels().iter().map(|k| tuples(k.generators())).collect(),
            vectors: d
                .factors()
                .iter()
                .map(|f| VectorDocument {
                    g_prime: f.g_prime(),
                    branch: tuples(f.branch_reps()),
                    eta: tuples(f.eta_reps()),
                })
                .collect(),
        }
    }

    pub fn to_datum(&self) -> Result<AlgebraicDatum> {
        for (j, &n) in self.group.iter().enumerate() {
            if n < 1 {
                return Err(Error::structural(format!("group[{j}]"), format!("order {n} < 1")));
            }
        }
        let g = AbelianGroup::new(self.group.clone())
            .map_err(|e| Error::structural("group", e.to_string()))?;
        if self.kernels.len() != 3 {
            return Err(Error::structural(
                "kernels",
                format!("expected 3 entries, found {}", self.kernels.len()),
            ));
        }
        if self.vectors.len() != 3 {
            return Err(Error::structural(
                "vectors",
                format!("expected 3 entries, found {}", self.vectors.len()),
            ));
        }
        let element = |field: String, v: &[i64]| -> Result<GroupElement> {
            if v.len() != g.rank() {
                return Err(Error::structural(
                    field,
                    format!("tuple of length {}, group has rank {}", v.len(), g.rank()),
                ));
            }
            g.element(v)
        };
        let mut kernels = Vec::with_capacity(3);
        for (i, gens) in self.kernels.iter().enumerate() {
            let elems = gens
                .iter()
                .enumerate()
                .map(|(j, v)| element(format!("kernels[{}][{j}]", i + 1), v))
                .collect::<Result<Vec<_>>>()?;
            kernels.push(Subgroup::generate(&g, &elems)?);
        }
        let mut specs = Vec::with_capacity(3);
        for (i, v) in self.vectors.iter().enumerate() {
            let list = |name: &str, xs: &[Vec<i64>]| -> Result<Vec<GroupElement>> {
                xs.iter()
                    .enumerate()
                    .map(|(j, x)| element(format!("vectors[{}].{name}[{j}]", i + 1), x))
                    .collect()
            };
            specs.push(VectorSpec {
                g_prime: v.g_prime,
                branch: list("branch", &v.branch)?,
                eta: list("eta", &v.eta)?,
            });
        }
        AlgebraicDatum::new(
            g,
            kernels.try_into().expect("three"),
            specs.try_into().expect("three"),
        )
    }
}

/// Compact JSON of nested integer lists with a space after each comma.
fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes").replace(',', ", ")
}

/// Parses a datum document straight to a datum.
pub fn parse_datum(text: &str) -> Result<AlgebraicDatum> {
    DatumDocument::from_json(text)?.to_datum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::example1;

    const SAMPLE: &str = r#"{
        "group": [2, 2, 2],
        "kernels": [[[1, 0, 0]], [[0, 1, 0]], [[0, 0, 1]]],
        "vectors": [
            {"g_prime": 1, "branch": [[0, 0, 1], [0, 0, 1]], "eta": [[0, 1, 0], [0, 0, 1]]},
            {"g_prime": 1, "branch": [[1, 0, 0], [1, 0, 0]], "eta": [[1, 0, 0], [0, 0, 1]]},
            {"g_prime": 1, "branch": [[0, 1, 0], [0, 1, 0]], "eta": [[1, 0, 0], [0, 1, 0]]}
        ]
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let d = parse_datum(SAMPLE).unwrap();
        assert!(d.report().is_valid());
        let doc = DatumDocument::from_datum(&d);
        let text = doc.to_json();
        let again = DatumDocument::from_datum(&parse_datum(&text).unwrap()).to_json();
        assert_eq!(text, again);
        assert_eq!(doc, DatumDocument::from_datum(&example1([1, 1, 1]).unwrap()));
    }

    #[test]
    fn exponents_are_reduced() {
        let raw = SAMPLE.replacen("[[0, 0, 1], [0, 0, 1]]", "[[0, 0, 3], [0, 0, -1]]", 1);
        let doc = DatumDocument::from_datum(&parse_datum(&raw).unwrap());
        assert_eq!(doc.vectors[0].branch, vec![vec![0, 0, 1], vec![0, 0, 1]]);
    }

    #[test]
    fn schema_errors() {
        assert_eq!(parse_datum("{").unwrap_err().code(), "parse_error");
        let extra = SAMPLE.replacen("\"group\"", "\"colour\": 1, \"group\"", 1);
        assert_eq!(parse_datum(&extra).unwrap_err().code(), "parse_error");
        let short = SAMPLE.replacen("[[1, 0, 0]], ", "", 1);
        let e = parse_datum(&short).unwrap_err();
        assert_eq!(e.code(), "structural_error");
        assert!(e.to_string().contains("kernels"));
        let wide = SAMPLE.replacen("[[0, 1, 0], [0, 0, 1]]", "[[0, 1], [0, 0, 1]]", 1);
        assert!(parse_datum(&wide).unwrap_err().to_string().contains("vectors[1].eta[0]"));
        let bad = SAMPLE.replacen("[2, 2, 2]", "[2, 0, 2]", 1);
        assert!(parse_datum(&bad).unwrap_err().to_string().contains("group[1]"));
    }
}
