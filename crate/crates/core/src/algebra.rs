//! Algebras over a presented PROP: generators assigned to exact matrices, relations
//! evaluated and checked for exact vanishing.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{
    format_rational, perm_action_on, GradedSpace, LinalgError, LinearMap, Matrix, TensorSpace,
};
use crate::presentation::Presentation;
use crate::term::{Factor, LayeredMonomial, LinearTerm, Signature, TermError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("no matrix assigned to generator `{0}`")]
    Missing(String),

    #[error("generator `{name}` has biarity ({outputs},{inputs}) but its matrix is {rows}x{cols}")]
    Shape {
        name: String,
        outputs: usize,
        inputs: usize,
        rows: usize,
        cols: usize,
    },

    #[error("generator `{name}` has degree {expected} but its matrix has degree {found}")]
    Degree { name: String, expected: i64, found: i64 },

    #[error("morphism must be a degree 0 map V -> W between single spaces")]
    NotAMorphismShape,

    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error(transparent)]
    Term(#[from] TermError),
}

/// Matrices for the generators of a signature on one graded space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMap {
    space: GradedSpace,
    maps: BTreeMap<String, LinearMap>,
}

impl StructureMap {
    pub fn new(space: GradedSpace) -> Self {
        StructureMap {
            space,
            maps: BTreeMap::new(),
        }
    }

    /// Adds or replaces the matrix of `name`. Shapes are checked against a signature by
    /// [`StructureMap::validate`].
    pub fn with(mut self, name: impl Into<String>, map: LinearMap) -> Self {
        self.maps.insert(name.into(), map);
        self
    }

    pub fn insert(&mut self, name: impl Into<String>, map: LinearMap) {
        self.maps.insert(name.into(), map);
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn maps(&self) -> &BTreeMap<String, LinearMap> {
        &self.maps
    }

    pub fn get(&self, name: &str) -> Result<&LinearMap, AlgebraError> {
        self.maps
            .get(name)
            .ok_or_else(|| AlgebraError::Missing(name.to_string()))
    }

    /// Every generator of `sig` has a matrix `V^{⊗m} → V^{⊗n}` of its degree.
    pub fn validate(&self, sig: &Signature) -> Result<(), AlgebraError> {
        for g in sig.generators() {
            let map = self.get(&g.name)?;
            if map.source() != &self.space.power(g.inputs) || map.target() != &self.space.power(g.outputs) {
                return Err(AlgebraError::Shape {
                    name: g.name.clone(),
                    outputs: g.outputs,
                    inputs: g.inputs,
                    rows: map.matrix().rows(),
                    cols: map.matrix().cols(),
                });
            }
            if map.degree() != g.degree && !map.is_zero() {
                return Err(AlgebraError::Degree {
                    name: g.name.clone(),
                    expected: g.degree,
                    found: map.degree(),
                });
            }
        }
        Ok(())
    }

    /// Assigns the identity of `V` to each name.
    pub fn with_identities<'a>(mut self, names: impl IntoIterator<Item = &'a String>) -> Self {
        for n in names {
            self.maps
                .insert(n.clone(), LinearMap::identity(self.space.power(1)));
        }
        self
    }

    fn factor(&self, f: &Factor) -> Result<LinearMap, AlgebraError> {
        match f {
            Factor::Unit => Ok(LinearMap::identity(self.space.power(1))),
            Factor::Gen(name) => Ok(self.get(name)?.clone()),
        }
    }

    /// `σ0 ∘ (L1 ∘ σ1) ∘ ... ∘ (Lk ∘ σk)` with layers tensored by the Koszul rule.
    pub fn eval_monomial(&self, m: &LayeredMonomial) -> Result<LinearMap, AlgebraError> {
        let top = self.space.power(m.sigma0.arity());
        let mut acc = if m.sigma0.is_identity() {
            LinearMap::identity(top)
        } else {
            perm_action_on(&m.sigma0, &top)?
        };
        for layer in &m.layers {
            let mut row = LinearMap::identity(TensorSpace::new(vec![]));
            for f in &layer.factors {
                row = row.tensor(&self.factor(f)?)?;
            }
            acc = acc.compose(&row)?;
            if !layer.sigma.is_identity() {
                let below = self.space.power(layer.sigma.arity());
                acc = acc.compose(&perm_action_on(&layer.sigma, &below)?)?;
            }
        }
        Ok(acc)
    }

    /// `Σ c_i · eval(m_i)`; `None` for the empty sum.
    pub fn eval_linear(&self, t: &LinearTerm) -> Result<Option<LinearMap>, AlgebraError> {
        let mut acc: Option<LinearMap> = None;
        for (c, m) in &t.terms {
            let v = self.eval_monomial(m)?.scale(c);
            acc = Some(match acc {
                None => v,
                Some(a) if a.is_zero() => v,
                Some(a) if v.is_zero() => a,
                Some(a) => a.add(&v)?,
            });
        }
        Ok(acc)
    }
}

/// Outcome of evaluating one relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RelationCheck {
    Passed {
        relation: usize,
    },
    Failed {
        relation: usize,
        matrix: Vec<Vec<String>>,
        max_entry: (usize, usize, String),
    },
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        matches!(self, RelationCheck::Passed { .. })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub relations: Vec<RelationCheck>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.relations.iter().all(RelationCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.relations.iter().filter(|r| !r.passed())
    }
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

/// Evaluates every relation of `p`; a relation passes iff its matrix is exactly zero.
pub fn check_algebra(lambda: &StructureMap, p: &Presentation) -> Result<CheckReport, AlgebraError> {
    lambda.validate(p.signature())?;
    let mut relations = Vec::with_capacity(p.relations().len());
    for (i, r) in p.relations().iter().enumerate() {
        let value = lambda.eval_linear(r)?;
        relations.push(match value {
            Some(v) if !v.is_zero() => {
                let (row, col, val) = v.matrix().max_entry().expect("nonzero matrix");
                RelationCheck::Failed {
                    relation: i,
                    matrix: matrix_strings(v.matrix()),
                    max_entry: (row, col, format_rational(&val)),
                }
            }
            _ => RelationCheck::Passed { relation: i },
        });
    }
    Ok(CheckReport { relations })
}

/// A generator on which a candidate morphism fails to commute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismWitness {
    pub generator: String,
    /// `f^{⊗n} ∘ λ(x) − ρ(x) ∘ f^{⊗m}`.
    pub difference: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismCheck {
    pub holds: bool,
    pub witness: Option<MorphismWitness>,
}

/// Whether `f: V → W` satisfies `f^{⊗n} ∘ λ(x) = ρ(x) ∘ f^{⊗m}` for every generator `x`.
///
/// Checking generators suffices: both sides are PROP morphisms out of the free PROP, so
/// agreement on generators propagates through `⊗`, `∘` and the symmetric actions.
pub fn is_morphism(
    f: &LinearMap,
    lambda: &StructureMap,
    rho: &StructureMap,
    sig: &Signature,
) -> Result<MorphismCheck, AlgebraError> {
    if f.degree() != 0 || f.source() != &lambda.space().power(1) || f.target() != &rho.space().power(1) {
        return Err(AlgebraError::NotAMorphismShape);
    }
    lambda.validate(sig)?;
    rho.validate(sig)?;
    let mut powers: BTreeMap<usize, LinearMap> = BTreeMap::new();
    let mut power = |k: usize| -> Result<LinearMap, AlgebraError> {
        if let Some(p) = powers.get(&k) {
            return Ok(p.clone());
        }
        let p = f.tensor_power(k)?;
        powers.insert(k, p.clone());
        Ok(p)
    };
    for g in sig.generators() {
        let lhs = power(g.outputs)?.compose(lambda.get(&g.name)?)?;
        let rhs = rho.get(&g.name)?.compose(&power(g.inputs)?)?;
        let diff = lhs.matrix().sub(rhs.matrix())?;
        if !diff.is_zero() {
            return Ok(MorphismCheck {
                holds: false,
                witness: Some(MorphismWitness {
                    generator: g.name.clone(),
                    difference: matrix_strings(&diff),
                }),
            });
        }
    }
    Ok(MorphismCheck {
        holds: true,
        witness: None,
    })
}

/// Entrywise `a == b` for two maps, ignoring degree labels of zero maps.
pub fn maps_equal(a: &LinearMap, b: &LinearMap) -> bool {
    a.source() == b.source() && a.target() == b.target() && a.matrix() == b.matrix()
}
