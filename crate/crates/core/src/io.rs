//! JSON file formats for terms, presentations, algebras, plans and run configuration.
//!
//! Rationals are written as strings; integers are also accepted on input.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::StructureMap;
use crate::linalg::{format_rational, parse_rational, GradedSpace, LinalgError, LinearMap, Matrix, Rational};
use crate::perm::Permutation;
use crate::presentation::{HomInfo, HomPlan, Presentation, PresentationError};
use crate::term::{GeneratorSymbol, LinearTerm, Signature, Term, TermError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },

    #[error("{path}: line {line}, column {column}: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Schema(String),

    #[error(transparent)]
    Term(#[from] TermError),

    #[error(transparent)]
    Presentation(#[from] PresentationError),

    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn json_error(path: &str, e: serde_json::Error) -> IoError {
    IoError::Json {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses a JSON document, reporting `origin` with line and column on failure.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| json_error(origin, e))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: name.clone(),
        source,
    })?;
    parse_json(&text, &name)
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Rationals and matrices

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Int(i64),
    Str(String),
}

impl RationalJson {
    pub fn to_rational(&self) -> Result<Rational, IoError> {
        match self {
            RationalJson::Int(n) => Ok(crate::linalg::rational(*n)),
            RationalJson::Str(s) => Ok(parse_rational(s)?),
        }
    }
}

pub fn matrix_from_json(rows: &[Vec<RationalJson>]) -> Result<Matrix, IoError> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(RationalJson::to_rational).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    Ok(Matrix::from_rows(rows)?)
}

pub fn matrix_to_json(m: &Matrix) -> Vec<Vec<RationalJson>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|q| RationalJson::Str(format_rational(q))).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// Terms

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum TermJson {
    Gen(String),
    Unit(bool),
    Perm(Permutation),
    Tensor(Vec<TermJson>),
    Vcomp(Vec<TermJson>),
}

impl TermJson {
    pub fn to_term(&self) -> Result<Term, IoError> {
        Ok(match self {
            TermJson::Gen(g) => Term::gen(g.clone()),
            TermJson::Unit(true) => Term::Unit,
            TermJson::Unit(false) => return Err(IoError::Schema("`unit` must be true".into())),
            TermJson::Perm(p) => Term::Perm(p.clone()),
            TermJson::Tensor(ts) => {
                Term::tensor_all(ts.iter().map(|t| t.to_term()).collect::<Result<Vec<_>, _>>()?)
            }
            TermJson::Vcomp(ts) => {
                if ts.is_empty() {
                    return Err(IoError::Schema("`vcomp` needs at least one term".into()));
                }
                Term::vcomp_all(ts.iter().map(|t| t.to_term()).collect::<Result<Vec<_>, _>>()?)
            }
        })
    }

    /// Flattens nested binary nodes into n-ary ones.
    pub fn from_term(t: &Term) -> TermJson {
        fn collect_tensor(t: &Term, out: &mut Vec<TermJson>) {
            match t {
                Term::Tensor(a, b) => {
                    collect_tensor(a, out);
                    collect_tensor(b, out);
                }
                Term::Empty => {}
                other => out.push(TermJson::from_term(other)),
            }
        }
        fn collect_vcomp(t: &Term, out: &mut Vec<TermJson>) {
            match t {
                Term::VComp(a, b) => {
                    collect_vcomp(a, out);
                    collect_vcomp(b, out);
                }
                other => out.push(TermJson::from_term(other)),
            }
        }
        match t {
            Term::Gen(g) => TermJson::Gen(g.clone()),
            Term::Unit => TermJson::Unit(true),
            Term::Perm(p) => TermJson::Perm(p.clone()),
            Term::Empty => TermJson::Tensor(vec![]),
            Term::Tensor(..) => {
                let mut v = Vec::new();
                collect_tensor(t, &mut v);
                TermJson::Tensor(v)
            }
            Term::VComp(..) => {
                let mut v = Vec::new();
                collect_vcomp(t, &mut v);
                TermJson::Vcomp(v)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Presentations

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandJson {
    pub coef: RationalJson,
    pub monomial: TermJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub generators: Vec<GeneratorSymbol>,
    pub relations: Vec<Vec<SummandJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom: Option<HomInfo>,
}

impl PresentationFile {
    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationFile {
            generators: p.signature().generators().to_vec(),
            relations: p
                .relations()
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, m)| SummandJson {
                            coef: RationalJson::Str(format_rational(c)),
                            monomial: TermJson::from_term(&m.to_term()),
                        })
                        .collect()
                })
                .collect(),
            hom: p.hom().cloned(),
        }
    }

    pub fn to_presentation(&self) -> Result<Presentation, IoError> {
        let sig = Signature::new(self.generators.clone())?;
        let mut rels = Vec::with_capacity(self.relations.len());
        for (i, r) in self.relations.iter().enumerate() {
            if r.is_empty() {
                return Err(IoError::Schema(format!("relation {} is empty", i + 1)));
            }
            let terms = r
                .iter()
                .map(|s| Ok((s.coef.to_rational()?, s.monomial.to_term()?)))
                .collect::<Result<Vec<_>, IoError>>()?;
            rels.push(LinearTerm::from_terms(terms, &sig)?);
        }
        let p = Presentation::new(sig, rels)?;
        Ok(match &self.hom {
            Some(h) => p.with_hom(h.clone()),
            None => p,
        })
    }
}

pub fn presentation_from_str(text: &str, origin: &str) -> Result<Presentation, IoError> {
    parse_json::<PresentationFile>(text, origin)?.to_presentation()
}

pub fn presentation_to_string(p: &Presentation) -> String {
    to_pretty(&PresentationFile::from_presentation(p))
}

// ---------------------------------------------------------------------------
// Algebras

/// A map entry: either a bare matrix whose arity and degree come from the signature, or a
/// self-describing object.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapJson {
    Full {
        #[serde(rename = "out")]
        outputs: usize,
        #[serde(rename = "in")]
        inputs: usize,
        #[serde(default)]
        degree: i64,
        matrix: Vec<Vec<RationalJson>>,
    },
    Bare(Vec<Vec<RationalJson>>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub space: GradedSpace,
    pub maps: BTreeMap<String, MapJson>,
}

impl AlgebraFile {
    pub fn from_structure(lambda: &StructureMap) -> Self {
        let maps = lambda
            .maps()
            .iter()
            .map(|(name, f)| {
                (
                    name.clone(),
                    MapJson::Full {
                        outputs: f.target().width(),
                        inputs: f.source().width(),
                        degree: f.degree(),
                        matrix: matrix_to_json(f.matrix()),
                    },
                )
            })
            .collect();
        AlgebraFile {
            space: lambda.space().clone(),
            maps,
        }
    }

    /// Bare matrices need `sig` to resolve their arity and degree.
    pub fn to_structure(&self, sig: Option<&Signature>) -> Result<StructureMap, IoError> {
        let mut out = StructureMap::new(self.space.clone());
        for (name, m) in &self.maps {
            let map = match m {
                MapJson::Full {
                    outputs,
                    inputs,
                    degree,
                    matrix,
                } => LinearMap::on_space(&self.space, *outputs, *inputs, *degree, matrix_from_json(matrix)?)?,
                MapJson::Bare(matrix) => {
                    let g = sig.and_then(|s| s.get(name)).ok_or_else(|| {
                        IoError::Schema(format!("map `{name}` is not a generator of the presentation"))
                    })?;
                    LinearMap::on_space(
                        &self.space,
                        g.outputs,
                        g.inputs,
                        g.degree,
                        matrix_from_json(matrix)?,
                    )?
                }
            };
            out.insert(name.clone(), map);
        }
        Ok(out)
    }
}

pub fn algebra_from_str(text: &str, origin: &str, sig: Option<&Signature>) -> Result<StructureMap, IoError> {
    parse_json::<AlgebraFile>(text, origin)?.to_structure(sig)
}

pub fn algebra_to_string(lambda: &StructureMap) -> String {
    to_pretty(&AlgebraFile::from_structure(lambda))
}

/// A single linear map file: a bare matrix (degree 0) or `{"degree": d, "matrix": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LinearMapFile {
    Full {
        #[serde(default)]
        degree: i64,
        matrix: Vec<Vec<RationalJson>>,
    },
    Bare(Vec<Vec<RationalJson>>),
}

impl LinearMapFile {
    pub fn from_map(f: &LinearMap) -> Self {
        LinearMapFile::Full {
            degree: f.degree(),
            matrix: matrix_to_json(f.matrix()),
        }
    }

    pub fn to_map(&self, source: &GradedSpace, target: &GradedSpace) -> Result<LinearMap, IoError> {
        let (degree, matrix) = match self {
            LinearMapFile::Full { degree, matrix } => (*degree, matrix),
            LinearMapFile::Bare(matrix) => (0, matrix),
        };
        Ok(LinearMap::new(
            source.power(1),
            target.power(1),
            degree,
            matrix_from_json(matrix)?,
        )?)
    }
}

// ---------------------------------------------------------------------------
// Plans and configuration

pub fn plan_from_str(text: &str, origin: &str) -> Result<HomPlan, IoError> {
    let plan: HomPlan = parse_json(text, origin)?;
    Ok(HomPlan::new(plan.support, plan.theta)?)
}

/// Convention toggles frozen alongside golden files.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConventions {
    #[serde(default)]
    pub ainf_sign_offset: u8,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{builtin, BUILTIN_NAMES};
    use crate::presentation::homify_multiplicative;

    #[test]
    fn term_json_shapes() {
        let t: TermJson = serde_json::from_str(
            r#"{"vcomp":[{"gen":"mu"},{"tensor":[{"gen":"mu"},{"unit":true}]},{"perm":[2,1,3]}]}"#,
        )
        .unwrap();
        let term = t.to_term().unwrap();
        assert_eq!(TermJson::from_term(&term), t);
        assert!(serde_json::from_str::<TermJson>(r#"{"perm":[1,1]}"#).is_err());
        assert!(serde_json::from_str::<TermJson>(r#"{"glue":"mu"}"#).is_err());
    }

    #[test]
    fn builtins_round_trip() {
        for name in BUILTIN_NAMES {
            let name = &name.replace('N', "3");
            let b = builtin(name, 0).unwrap();
            let text = presentation_to_string(&b.presentation);
            let back = presentation_from_str(&text, name).unwrap();
            assert_eq!(back, b.presentation, "{name}");
            assert_eq!(presentation_to_string(&back), text);
        }
    }

    #[test]
    fn hom_presentation_round_trip() {
        let p = builtin("bialgebra", 0).unwrap().presentation;
        let q = homify_multiplicative(&p).unwrap();
        let back = presentation_from_str(&presentation_to_string(&q), "q").unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn algebra_file() {
        let sig = builtin("as", 0).unwrap().presentation.signature().clone();
        let text = r#"{"space":{"dims":{"0":2}},"maps":{"mu":[[1,0,0,0],["0","1","1",0]]}}"#;
        let lam = algebra_from_str(text, "dual", Some(&sig)).unwrap();
        let again = algebra_from_str(&algebra_to_string(&lam), "again", None).unwrap();
        assert_eq!(again, lam);
        assert!(algebra_from_str(text, "dual", None).is_err());
    }

    #[test]
    fn json_errors_carry_position() {
        let err = presentation_from_str("{\n  \"generators\": [,]\n}", "bad.json").unwrap_err();
        match err {
            IoError::Json { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn plan_file() {
        let plan = plan_from_str(r#"{"S":[1,2,3,4],"theta":[[1,2],[3,4]]}"#, "plan").unwrap();
        assert_eq!(plan.theta.len(), 2);
        assert!(plan_from_str(r#"{"S":[1,2],"theta":[[1],[1,2]]}"#, "plan").is_err());
    }
}
