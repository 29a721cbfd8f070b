//! Presentations by generators and relations, and their hom-ifications.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphprop::{GraphError, GraphSum};
use crate::linalg::Rational;
use crate::term::{
    index_units, substitute, Factor, GeneratorSymbol, LayeredMonomial, LinearTerm, Signature, Substitution,
    TermError, UnitOccurrence,
};

/// Name of the single twisting generator of a multiplicative hom-ification.
pub const ALPHA: &str = "alpha";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PresentationError {
    #[error(transparent)]
    Term(#[from] TermError),

    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error("generator `{0}` already exists; rename it before hom-ifying")]
    NameCollision(String),

    #[error("invalid hom plan: {0}")]
    InvalidPlan(String),

    #[error("the projection onto the multiplicative presentation needs every unit twisted")]
    NotFullSupport,

    #[error("presentation is not hom-ified as required: {0}")]
    WrongKind(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomKind {
    Multiplicative,
    Typed,
}

/// How a presentation arose from hom-ification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomInfo {
    pub kind: HomKind,
    /// Every unit occurrence of the source presentation was twisted.
    pub full_support: bool,
    /// Twisting generators, in block order.
    pub twisting: Vec<String>,
    /// Leading compatibility relations (multiplicative only).
    #[serde(default)]
    pub compatibility: usize,
}

/// A subset `S` of unit labels and a partition of it into blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomPlan {
    #[serde(rename = "S")]
    pub support: Vec<usize>,
    pub theta: Vec<Vec<usize>>,
}

impl HomPlan {
    pub fn new(support: Vec<usize>, theta: Vec<Vec<usize>>) -> Result<Self, PresentationError> {
        let plan = HomPlan { support, theta };
        plan.check_shape()?;
        Ok(plan)
    }

    /// One block containing all of `S`.
    pub fn theta_min(support: &[usize]) -> Result<Self, PresentationError> {
        HomPlan::new(support.to_vec(), vec![support.to_vec()])
    }

    /// One block per element of `S`.
    pub fn theta_max(support: &[usize]) -> Result<Self, PresentationError> {
        HomPlan::new(support.to_vec(), support.iter().map(|&l| vec![l]).collect())
    }

    /// `S` = every label `1..=units`.
    pub fn all_labels(units: usize) -> Vec<usize> {
        (1..=units).collect()
    }

    fn check_shape(&self) -> Result<(), PresentationError> {
        if self.support.is_empty() {
            return Err(PresentationError::InvalidPlan("S is empty".into()));
        }
        let s: BTreeSet<usize> = self.support.iter().copied().collect();
        if s.len() != self.support.len() {
            return Err(PresentationError::InvalidPlan("S repeats a label".into()));
        }
        let mut seen = BTreeSet::new();
        for block in &self.theta {
            if block.is_empty() {
                return Err(PresentationError::InvalidPlan("empty block".into()));
            }
            for &l in block {
                if !s.contains(&l) {
                    return Err(PresentationError::InvalidPlan(format!("label {l} is not in S")));
                }
                if !seen.insert(l) {
                    return Err(PresentationError::InvalidPlan(format!(
                        "label {l} is in two blocks"
                    )));
                }
            }
        }
        if seen != s {
            return Err(PresentationError::InvalidPlan("blocks do not cover S".into()));
        }
        Ok(())
    }

    pub fn validate(&self, units: usize) -> Result<(), PresentationError> {
        self.check_shape()?;
        if let Some(&l) = self.support.iter().find(|&&l| l == 0 || l > units) {
            return Err(PresentationError::InvalidPlan(format!(
                "label {l} out of range 1..={units}"
            )));
        }
        Ok(())
    }

    pub fn is_full(&self, units: usize) -> bool {
        self.support.len() == units
    }

    /// Blocks sorted by least label, each sorted.
    pub fn sorted_blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = self
            .theta
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        blocks
    }
}

/// Degree profile of one relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RelationDegree {
    Homogeneous {
        degree: usize,
    },
    Inhomogeneous {
        monomials: [usize; 2],
        degrees: [usize; 2],
    },
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub relations: Vec<RelationDegree>,
}

impl NormalityReport {
    /// Every relation homogeneous of some degree `k ≥ 1`.
    pub fn is_normal(&self) -> bool {
        self.relations.iter().all(|r| match r {
            RelationDegree::Homogeneous { degree } => *degree >= 1,
            RelationDegree::Inhomogeneous { .. } => false,
            RelationDegree::Empty => true,
        })
    }
}

/// `FX / ⟨R⟩` with relations in layered form and their unit occurrences indexed.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    signature: Signature,
    relations: Vec<LinearTerm>,
    units: Vec<UnitOccurrence>,
    hom: Option<HomInfo>,
}

impl Presentation {
    pub fn new(signature: Signature, relations: Vec<LinearTerm>) -> Result<Self, PresentationError> {
        for r in &relations {
            r.biarity(&signature)?;
        }
        let units = index_units(&relations);
        Ok(Presentation {
            signature,
            relations,
            units,
            hom: None,
        })
    }

    pub fn with_hom(mut self, hom: HomInfo) -> Self {
        self.hom = Some(hom);
        self
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn relations(&self) -> &[LinearTerm] {
        &self.relations
    }

    pub fn units(&self) -> &[UnitOccurrence] {
        &self.units
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    pub fn hom(&self) -> Option<&HomInfo> {
        self.hom.as_ref()
    }

    pub fn normality(&self) -> NormalityReport {
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let Some((_, first)) = r.terms.first() else {
                    return RelationDegree::Empty;
                };
                let k = first.degree();
                match r.terms.iter().position(|(_, m)| m.degree() != k) {
                    None => RelationDegree::Homogeneous { degree: k },
                    Some(j) => RelationDegree::Inhomogeneous {
                        monomials: [0, j],
                        degrees: [k, r.terms[j].1.degree()],
                    },
                }
            })
            .collect();
        NormalityReport { relations }
    }

    pub fn is_normal(&self) -> bool {
        self.normality().is_normal()
    }

    fn check_fresh(&self, name: &str) -> Result<(), PresentationError> {
        if self.signature.contains(name) {
            return Err(PresentationError::NameCollision(name.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .signature
            .generators()
            .iter()
            .map(|g| format!("{}:({},{})", g.name, g.outputs, g.inputs))
            .collect();
        writeln!(f, "generators {}", gens.join(" "))?;
        for r in &self.relations {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

/// `x ∘ α^{⊗m} - α^{⊗n} ∘ x`.
fn compatibility_relation(
    g: &GeneratorSymbol,
    alpha: &str,
    sig: &Signature,
) -> Result<LinearTerm, TermError> {
    let a = Factor::gen(alpha);
    let lhs = LayeredMonomial::from_layers(vec![vec![Factor::gen(&g.name)], vec![a.clone(); g.inputs]], sig)?;
    let rhs = LayeredMonomial::from_layers(vec![vec![a; g.outputs], vec![Factor::gen(&g.name)]], sig)?;
    Ok(LinearTerm::new(vec![
        (Rational::one(), lhs),
        (-Rational::one(), rhs),
    ]))
}

/// Adds one twisting generator `alpha`, a compatibility relation per generator, and
/// replaces every unit of every relation by `alpha`.
pub fn homify_multiplicative(p: &Presentation) -> Result<Presentation, PresentationError> {
    p.check_fresh(ALPHA)?;
    let mut sig = p.signature.clone();
    sig.push(GeneratorSymbol::new(ALPHA, 1, 1))?;
    let mut relations = Vec::new();
    for g in p.signature.generators() {
        relations.push(compatibility_relation(g, ALPHA, &sig)?);
    }
    let sub = Substitution {
        occurrences: p.units.iter().map(|u| (u.label, Factor::gen(ALPHA))).collect(),
        symbols: BTreeMap::new(),
    };
    relations.extend(substitute(&p.relations, &p.units, &sub, &sig)?);
    let compatibility = p.signature.generators().len();
    Ok(Presentation::new(sig, relations)?.with_hom(HomInfo {
        kind: HomKind::Multiplicative,
        full_support: true,
        twisting: vec![ALPHA.to_string()],
        compatibility,
    }))
}

/// Name of the twisting generator of a block.
pub fn block_name(block: &[usize]) -> String {
    format!("{ALPHA}_{}", block.iter().min().copied().unwrap_or(0))
}

/// Adds one twisting generator per block and replaces the units of `S` blockwise.
pub fn homify_typed(p: &Presentation, plan: &HomPlan) -> Result<Presentation, PresentationError> {
    plan.validate(p.unit_count())?;
    let mut sig = p.signature.clone();
    let mut occurrences = BTreeMap::new();
    let mut twisting = Vec::new();
    for block in plan.sorted_blocks() {
        let name = block_name(&block);
        p.check_fresh(&name)?;
        sig.push(GeneratorSymbol::new(&name, 1, 1))?;
        for &l in &block {
            occurrences.insert(l, Factor::gen(&name));
        }
        twisting.push(name);
    }
    let sub = Substitution {
        occurrences,
        symbols: BTreeMap::new(),
    };
    let relations = substitute(&p.relations, &p.units, &sub, &sig)?;
    Ok(Presentation::new(sig, relations)?.with_hom(HomInfo {
        kind: HomKind::Typed,
        full_support: plan.is_full(p.unit_count()),
        twisting,
        compatibility: 0,
    }))
}

/// The maps from a hom-ified presentation back down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectionKind {
    /// Typed hom-ification to the original: every `α_p ↦ 1`.
    Pi,
    /// Typed hom-ification with full support to the multiplicative one: every `α_p ↦ α`.
    Pi1,
    /// Multiplicative hom-ification to the original: `α ↦ 1`.
    Pi2,
}

/// Symbol substitution realizing a projection.
pub fn projection(q: &Presentation, kind: ProjectionKind) -> Result<Substitution, PresentationError> {
    let hom = q
        .hom()
        .ok_or_else(|| PresentationError::WrongKind("no hom-ification recorded".into()))?;
    let image = match (kind, hom.kind) {
        (ProjectionKind::Pi, HomKind::Typed) | (ProjectionKind::Pi2, HomKind::Multiplicative) => Factor::Unit,
        (ProjectionKind::Pi1, HomKind::Typed) => {
            if !hom.full_support {
                return Err(PresentationError::NotFullSupport);
            }
            Factor::gen(ALPHA)
        }
        (k, h) => {
            return Err(PresentationError::WrongKind(format!(
                "{k:?} does not apply to a {h:?} hom-ification"
            )))
        }
    };
    Ok(Substitution {
        occurrences: BTreeMap::new(),
        symbols: hom.twisting.iter().map(|a| (a.clone(), image.clone())).collect(),
    })
}

/// Where one projected relation landed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ProjectedRelation {
    Zero,
    Matches { target: usize },
    Unmatched { relation: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub relations: Vec<ProjectedRelation>,
}

impl ProjectionReport {
    /// Every image is zero or a multiple of a target relation.
    pub fn contained(&self) -> bool {
        self.relations
            .iter()
            .all(|r| !matches!(r, ProjectedRelation::Unmatched { .. }))
    }
}

fn merged_signature(a: &Signature, b: &Signature) -> Result<Signature, PresentationError> {
    let mut sig = a.clone();
    for g in b.generators() {
        match sig.get(&g.name) {
            Some(h) if h == g => {}
            Some(_) => return Err(PresentationError::NameCollision(g.name.clone())),
            None => sig.push(g.clone())?,
        }
    }
    Ok(sig)
}

/// Applies a projection to every relation of `q` and locates each image among the
/// relations of `target`, up to graph isomorphism and a nonzero scalar.
pub fn check_projection(
    q: &Presentation,
    kind: ProjectionKind,
    target: &Presentation,
) -> Result<ProjectionReport, PresentationError> {
    let sub = projection(q, kind)?;
    let mut sig = merged_signature(q.signature(), target.signature())?;
    if kind == ProjectionKind::Pi1 && !sig.contains(ALPHA) {
        sig.push(GeneratorSymbol::new(ALPHA, 1, 1))?;
    }
    let images = substitute(q.relations(), q.units(), &sub, &sig)?;
    let targets: Vec<GraphSum> = target
        .relations()
        .iter()
        .map(|r| GraphSum::from_linear(r, &sig))
        .collect::<Result<_, _>>()?;
    let mut relations = Vec::new();
    for img in &images {
        let g = GraphSum::from_linear(img, &sig)?;
        if g.is_zero() {
            relations.push(ProjectedRelation::Zero);
            continue;
        }
        let mut found = None;
        for (i, t) in targets.iter().enumerate() {
            if g.ratio_to(t)?.is_some() {
                found = Some(i);
                break;
            }
        }
        relations.push(match found {
            Some(target) => ProjectedRelation::Matches { target },
            None => ProjectedRelation::Unmatched {
                relation: img.to_string(),
            },
        });
    }
    Ok(ProjectionReport { relations })
}
