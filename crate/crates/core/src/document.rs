//! JSON structure documents.
//!
//! A document declares a patch and exactly one payload. Matrices are
//! row-major arrays of expression strings, and frame brackets are listed only
//! for 1-based pairs `a < b`:
//!
//! ```json
//! {
//!   "patch": { "vars": ["x1", "x2", "x3"], "rank": 3 },
//!   "algebroid": {
//!     "anchor": [["0", "-x3", "x2"], ["x3", "0", "-x1"], ["-x2", "x1", "0"]],
//!     "structure": [
//!       { "pair": [1, 2], "bracket": ["0", "0", "1"] },
//!       { "pair": [1, 3], "bracket": ["0", "-1", "0"] },
//!       { "pair": [2, 3], "bracket": ["1", "0", "0"] }
//!     ]
//!   }
//! }
//! ```
//!
//! Other payloads are `jacobi {lambda, x}`, `pi {encoding, ...}` with
//! encodings `trivial {theta, omega}`, `line {lambda, y}` and
//! `frame {matrix}`, `nijenhuis {algebroid, n_matrix}`,
//! `omni {seed, count, degree}` and `poisson {bivector}`.

use serde::{Deserialize, Serialize};

use crate::algebroid::{AlgebroidData, NijenhuisOp};
use crate::bundle::{SectionE, VectorField};
use crate::dirac::PiMap;
use crate::error::{Error, Result};
use crate::jacobi::JacobiData;
use crate::parse::parse_poly;
use crate::poly::{Patch, Poly, PolyMatrix};
use crate::tensor::StructureTensor;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PatchSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub pair: [usize; 2],
    pub bracket: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebroidSpec {
    pub anchor: Vec<Vec<String>>,
    #[serde(default)]
    pub structure: Vec<BracketEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct JacobiSpec {
    pub lambda: Vec<Vec<String>>,
    pub x: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PiSpec {
    pub encoding: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<BracketEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct NijenhuisSpec {
    pub algebroid: AlgebroidSpec,
    pub n_matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OmniSpec {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_count")]
    pub count: usize,
    #[serde(default = "default_degree")]
    pub degree: u32,
}

fn default_count() -> usize {
    25
}

fn default_degree() -> u32 {
    2
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PoissonSpec {
    pub bivector: Vec<Vec<String>>,
}

/// The raw JSON shape of a document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    pub patch: PatchSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebroid: Option<AlgebroidSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jacobi: Option<JacobiSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<PiSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nijenhuis: Option<NijenhuisSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omni: Option<OmniSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poisson: Option<PoissonSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Algebroid(AlgebroidData),
    Jacobi(JacobiData),
    Pi(PiMap),
    Nijenhuis(AlgebroidData, NijenhuisOp),
    Omni(OmniSpec),
    Poisson(PolyMatrix),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Algebroid(_) => "algebroid",
            Payload::Jacobi(_) => "jacobi",
            Payload::Pi(_) => "pi",
            Payload::Nijenhuis(..) => "nijenhuis",
            Payload::Omni(_) => "omni",
            Payload::Poisson(_) => "poisson",
        }
    }
}

/// A validated document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub patch: Patch,
    pub payload: Payload,
}

fn doc_err(path: &str, e: impl std::fmt::Display) -> Error {
    Error::Document(format!("{path}: {e}"))
}

struct Reader<'a> {
    patch: &'a Patch,
}

impl Reader<'_> {
    fn n(&self) -> usize {
        self.patch.dim_m()
    }

    fn k(&self) -> usize {
        self.patch.rank_e()
    }

    fn poly(&self, path: &str, src: &str) -> Result<Poly> {
        parse_poly(src, self.patch).map_err(|e| doc_err(path, e))
    }

    fn vector(&self, path: &str, src: &[String], len: usize) -> Result<Vec<Poly>> {
        if src.len() != len {
            return Err(doc_err(path, format!("expected {len} entries, found {}", src.len())));
        }
        src.iter()
            .enumerate()
            .map(|(i, s)| self.poly(&format!("{path}[{}]", i + 1), s))
            .collect()
    }

    fn matrix(&self, path: &str, src: &[Vec<String>], rows: usize, cols: usize) -> Result<PolyMatrix> {
        if src.len() != rows {
            return Err(doc_err(path, format!("expected {rows} rows, found {}", src.len())));
        }
        let rows: Vec<Vec<Poly>> = src
            .iter()
            .enumerate()
            .map(|(i, r)| self.vector(&format!("{path}[{}]", i + 1), r, cols))
            .collect::<Result<_>>()?;
        if rows.is_empty() {
            return Ok(PolyMatrix::zeros(self.n(), 0, cols));
        }
        PolyMatrix::from_rows(self.n(), rows).map_err(|e| doc_err(path, e))
    }

    fn antisymmetric(&self, path: &str, src: &[Vec<String>]) -> Result<PolyMatrix> {
        let m = self.matrix(path, src, self.n(), self.n())?;
        for i in 0..self.n() {
            for j in i..self.n() {
                if !(m.get(i, j) + m.get(j, i)).is_zero() {
                    return Err(doc_err(path, format!("not antisymmetric at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        Ok(m)
    }

    fn structure(&self, path: &str, entries: &[BracketEntry]) -> Result<StructureTensor> {
        let (n, k) = (self.n(), self.k());
        let mut t = StructureTensor::zero(n, k);
        let mut seen = vec![false; k * k];
        for (idx, e) in entries.iter().enumerate() {
            let here = format!("{path}[{}]", idx + 1);
            let [a, b] = e.pair;
            if a == 0 || b == 0 || a > k || b > k || a >= b {
                return Err(doc_err(&here, format!("pair must satisfy 1 <= a < b <= {k}, found [{a}, {b}]")));
            }
            if std::mem::replace(&mut seen[(a - 1) * k + (b - 1)], true) {
                return Err(doc_err(&here, format!("duplicate pair [{a}, {b}]")));
            }
            let bracket = self.vector(&format!("{here}.bracket"), &e.bracket, k)?;
            t.set_pair(a - 1, b - 1, &SectionE::new(bracket));
        }
        Ok(t)
    }

    fn algebroid(&self, path: &str, spec: &AlgebroidSpec) -> Result<AlgebroidData> {
        let rho = self.matrix(&format!("{path}.anchor"), &spec.anchor, self.n(), self.k())?;
        let c = self.structure(&format!("{path}.structure"), &spec.structure)?;
        AlgebroidData::new(rho, c).map_err(|e| doc_err(path, e))
    }

    fn pi(&self, spec: &PiSpec) -> Result<PiMap> {
        let (n, k) = (self.n(), self.k());
        let stray = |fields: &[(&str, bool)]| -> Result<()> {
            match fields.iter().find(|(_, present)| *present) {
                Some((name, _)) => Err(doc_err("pi", format!("field `{name}` is not used by encoding `{}`", spec.encoding))),
                None => Ok(()),
            }
        };
        let need = |name: &str| doc_err("pi", format!("encoding `{}` requires `{name}`", spec.encoding));
        match spec.encoding.as_str() {
            "trivial" => {
                stray(&[("lambda", spec.lambda.is_some()), ("y", spec.y.is_some()), ("matrix", spec.matrix.is_some())])?;
                let theta = self.matrix("pi.theta", spec.theta.as_ref().ok_or_else(|| need("theta"))?, n, k)?;
                let omega = self.structure("pi.omega", spec.omega.as_deref().unwrap_or(&[]))?;
                PiMap::trivial(theta, omega).map_err(|e| doc_err("pi", e))
            }
            "line" => {
                stray(&[("theta", spec.theta.is_some()), ("omega", spec.omega.is_some()), ("matrix", spec.matrix.is_some())])?;
                if k != 1 {
                    return Err(doc_err("pi", format!("line encoding needs rank 1, patch has rank {k}")));
                }
                let lambda = self.antisymmetric("pi.lambda", spec.lambda.as_ref().ok_or_else(|| need("lambda"))?)?;
                let y = self.vector("pi.y", spec.y.as_ref().ok_or_else(|| need("y"))?, n)?;
                PiMap::line(lambda, VectorField::new(y)).map_err(|e| doc_err("pi", e))
            }
            "frame" => {
                stray(&[
                    ("theta", spec.theta.is_some()),
                    ("omega", spec.omega.is_some()),
                    ("lambda", spec.lambda.is_some()),
                    ("y", spec.y.is_some()),
                ])?;
                let m = spec.matrix.as_ref().ok_or_else(|| need("matrix"))?;
                let matrix = self.matrix("pi.matrix", m, k * k + n, k * n + k)?;
                PiMap::frame(matrix, k).map_err(|e| doc_err("pi", e))
            }
            other => Err(doc_err("pi.encoding", format!("unknown encoding `{other}` (expected trivial, line or frame)"))),
        }
    }
}

impl Document {
    pub fn from_json(src: &str) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(src).map_err(|e| Error::Document(e.to_string()))?;
        Document::from_raw(&raw)
    }

    pub fn from_raw(raw: &RawDocument) -> Result<Self> {
        let vars = match (&raw.patch.vars, raw.patch.dim) {
            (Some(vars), Some(dim)) if vars.len() != dim => {
                return Err(doc_err("patch", format!("dim {dim} but {} variable names", vars.len())));
            }
            (Some(vars), _) => vars.clone(),
            (None, Some(dim)) => (1..=dim).map(|i| format!("x{i}")).collect(),
            (None, None) => return Err(doc_err("patch", "either `vars` or `dim` is required")),
        };
        let patch = Patch::new(vars, raw.patch.rank).map_err(|e| doc_err("patch", e))?;
        let present: Vec<&str> = [
            ("algebroid", raw.algebroid.is_some()),
            ("jacobi", raw.jacobi.is_some()),
            ("pi", raw.pi.is_some()),
            ("nijenhuis", raw.nijenhuis.is_some()),
            ("omni", raw.omni.is_some()),
            ("poisson", raw.poisson.is_some()),
        ]
        .into_iter()
        .filter(|(_, p)| *p)
        .map(|(name, _)| name)
        .collect();
        if present.len() != 1 {
            return Err(Error::Document(format!(
                "exactly one payload is required, found {}",
                if present.is_empty() { "none".to_string() } else { present.join(", ") }
            )));
        }
        let r = Reader { patch: &patch };
        let payload = if let Some(spec) = &raw.algebroid {
            Payload::Algebroid(r.algebroid("algebroid", spec)?)
        } else if let Some(spec) = &raw.jacobi {
            if patch.rank_e() != 1 {
                return Err(doc_err("jacobi", "a Jacobi structure lives on a rank-1 patch"));
            }
            let lambda = r.antisymmetric("jacobi.lambda", &spec.lambda)?;
            let x = r.vector("jacobi.x", &spec.x, patch.dim_m())?;
            Payload::Jacobi(JacobiData::new(lambda, VectorField::new(x)).map_err(|e| doc_err("jacobi", e))?)
        } else if let Some(spec) = &raw.pi {
            Payload::Pi(r.pi(spec)?)
        } else if let Some(spec) = &raw.nijenhuis {
            let a = r.algebroid("nijenhuis.algebroid", &spec.algebroid)?;
            let k = patch.rank_e();
            let n_matrix = r.matrix("nijenhuis.n_matrix", &spec.n_matrix, k, k)?;
            Payload::Nijenhuis(a, NijenhuisOp::new(n_matrix)?)
        } else if let Some(spec) = raw.omni {
            Payload::Omni(spec)
        } else if let Some(spec) = &raw.poisson {
            if patch.rank_e() != patch.dim_m() {
                return Err(doc_err("poisson", "rank must equal the number of coordinates (E = T*M)"));
            }
            Payload::Poisson(r.antisymmetric("poisson.bivector", &spec.bivector)?)
        } else {
            unreachable!("exactly one payload is present")
        };
        Ok(Document { patch, payload })
    }

    pub fn to_raw(&self) -> RawDocument {
        let w = Writer { names: self.patch.var_names() };
        let mut raw = RawDocument {
            patch: PatchSpec {
                dim: None,
                vars: Some(self.patch.var_names().to_vec()),
                rank: self.patch.rank_e(),
            },
            algebroid: None,
            jacobi: None,
            pi: None,
            nijenhuis: None,
            omni: None,
            poisson: None,
        };
        match &self.payload {
            Payload::Algebroid(a) => raw.algebroid = Some(w.algebroid(a)),
            Payload::Jacobi(j) => {
                raw.jacobi = Some(JacobiSpec {
                    lambda: w.matrix(&j.lambda),
                    x: w.vector(j.x_field.components()),
                })
            }
            Payload::Pi(pi) => raw.pi = Some(w.pi(pi)),
            Payload::Nijenhuis(a, nop) => {
                raw.nijenhuis = Some(NijenhuisSpec {
                    algebroid: w.algebroid(a),
                    n_matrix: w.matrix(&nop.n_matrix),
                })
            }
            Payload::Omni(spec) => raw.omni = Some(*spec),
            Payload::Poisson(b) => raw.poisson = Some(PoissonSpec { bivector: w.matrix(b) }),
        }
        raw
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("documents serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("documents serialize")
    }
}

struct Writer<'a> {
    names: &'a [String],
}

impl Writer<'_> {
    fn vector(&self, v: &[Poly]) -> Vec<String> {
        v.iter().map(|p| p.to_string_with(self.names)).collect()
    }

    fn matrix(&self, m: &PolyMatrix) -> Vec<Vec<String>> {
        m.to_rows().iter().map(|r| self.vector(r)).collect()
    }

    fn structure(&self, t: &StructureTensor) -> Vec<BracketEntry> {
        let k = t.rank();
        let mut out = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                let s = t.basis_bracket(a, b);
                if !s.is_zero() {
                    out.push(BracketEntry {
                        pair: [a + 1, b + 1],
                        bracket: self.vector(s.components()),
                    });
                }
            }
        }
        out
    }

    fn algebroid(&self, a: &AlgebroidData) -> AlgebroidSpec {
        AlgebroidSpec {
            anchor: self.matrix(&a.rho),
            structure: self.structure(&a.c),
        }
    }

    fn pi(&self, pi: &PiMap) -> PiSpec {
        let mut spec = PiSpec {
            encoding: pi.encoding().to_string(),
            theta: None,
            omega: None,
            lambda: None,
            y: None,
            matrix: None,
        };
        match pi {
            PiMap::Trivial { theta, omega } => {
                spec.theta = Some(self.matrix(theta));
                spec.omega = Some(self.structure(omega));
            }
            PiMap::Line { lambda, y } => {
                spec.lambda = Some(self.matrix(lambda));
                spec.y = Some(self.vector(y.components()));
            }
            PiMap::Frame { matrix, .. } => spec.matrix = Some(self.matrix(matrix)),
        }
        spec
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SO3_ACTION: &str = r#"{
      "patch": { "vars": ["x1", "x2", "x3"], "rank": 3 },
      "algebroid": {
        "anchor": [["0", "-x3", "x2"], ["x3", "0", "-x1"], ["-x2", "x1", "0"]],
        "structure": [
          { "pair": [1, 2], "bracket": ["0", "0", "1"] },
          { "pair": [1, 3], "bracket": ["0", "-1", "0"] },
          { "pair": [2, 3], "bracket": ["1", "0", "0"] }
        ]
      }
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let doc = Document::from_json(SO3_ACTION).unwrap();
        let Payload::Algebroid(a) = &doc.payload else { panic!("wrong payload") };
        assert_eq!(a.c.get(2, 0, 1), &Poly::one(3));
        assert_eq!(a.c.get(2, 1, 0), &-Poly::one(3));
        let again = Document::from_json(&doc.to_json_pretty()).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            (r#"{"patch":{"dim":1,"rank":1}}"#, "exactly one payload"),
            (r#"{"patch":{"dim":1,"rank":1},"omni":{},"poisson":{"bivector":[["0"]]}}"#, "exactly one payload"),
            (r#"{"patch":{"dim":1,"rank":1},"omni":{},"extra":1}"#, "unknown field"),
            (r#"{"patch":{"dim":2,"rank":1},"jacobi":{"lambda":[["0","y"],["-y","0"]],"x":["0","0"]}}"#, "unknown variable"),
            (r#"{"patch":{"dim":2,"rank":1},"jacobi":{"lambda":[["0","1"],["1","0"]],"x":["0","0"]}}"#, "not antisymmetric"),
            (r#"{"patch":{"dim":1,"rank":2},"algebroid":{"anchor":[["0","0"]],"structure":[{"pair":[2,1],"bracket":["0","0"]}]}}"#, "1 <= a < b"),
            (r#"{"patch":{"dim":1,"rank":2},"algebroid":{"anchor":[["0"]]}}"#, "expected 2 entries"),
            (r#"{"patch":{"dim":1,"rank":1},"pi":{"encoding":"weird"}}"#, "unknown encoding"),
            (r#"{"patch":{"dim":1,"rank":2},"pi":{"encoding":"line","lambda":[["0"]],"y":["0"]}}"#, "rank 1"),
        ];
        for (src, needle) in cases {
            let err = Document::from_json(src).unwrap_err().to_string();
            assert!(err.contains(needle), "{src}: {err}");
        }
    }

    #[test]
    fn error_paths_name_the_entry() {
        let src = r#"{"patch":{"dim":2,"rank":1},"jacobi":{"lambda":[["0","x1"],["-x1","0"]],"x":["x1","2 x2"]}}"#;
        let err = Document::from_json(src).unwrap_err().to_string();
        assert!(err.contains("jacobi.x[2]") && err.contains("column 3"), "{err}");
    }
}
