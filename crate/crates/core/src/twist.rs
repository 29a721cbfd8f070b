//! Twisting Hom-algebras along endomorphisms, and the checks that go with it.
//!
//! Every construction re-verifies its output against the relations; a failure after all
//! preconditions held is reported as [`TwistError::Internal`].

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    check_algebra, is_morphism, matrix_strings, AlgebraError, CheckReport, MorphismCheck, MorphismWitness,
    StructureMap,
};
use crate::linalg::{LinalgError, LinearMap, Polynomial};
use crate::presentation::{
    homify_multiplicative, homify_typed, HomKind, HomPlan, NormalityReport, Presentation, PresentationError,
    ALPHA,
};
use crate::term::Signature;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwistError {
    #[error("presentation is not normal")]
    NormalityViolated(NormalityReport),

    #[error("twisting map is not a morphism: fails on `{}`", .0.generator)]
    BetaNotMorphism(MorphismWitness),

    #[error("theorem not applicable: the hom plan does not twist every unit (S ≠ I)")]
    SNotI,

    #[error("presentation is not hom-ified: {0}")]
    NotHomified(String),

    #[error("input structure does not satisfy the relations")]
    InputNotAlgebra(CheckReport),

    #[error("precondition failed: {what}")]
    Precondition {
        what: String,
        difference: Vec<Vec<String>>,
    },

    #[error("map is singular")]
    Singular,

    #[error("{0}")]
    Argument(String),

    #[error("internal error: twisted structure failed verification although every precondition held")]
    Internal(CheckReport),

    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// How a plain presentation is to be hom-ified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomTarget {
    Multiplicative,
    Typed(HomPlan),
}

pub fn homify(p: &Presentation, target: &HomTarget) -> Result<Presentation, PresentationError> {
    match target {
        HomTarget::Multiplicative => homify_multiplicative(p),
        HomTarget::Typed(plan) => homify_typed(p, plan),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Preconditions {
    pub normality: NormalityReport,
    pub input: CheckReport,
    pub beta_morphism: MorphismCheck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistResult {
    pub twisted: StructureMap,
    pub verified: CheckReport,
    pub preconditions: Preconditions,
}

/// `y ↦ β^{⊗q} ∘ λ(y)` on every generator `y` of biarity `(q, p)`.
pub fn twisted_maps(
    lambda: &StructureMap,
    beta: &LinearMap,
    sig: &Signature,
) -> Result<StructureMap, TwistError> {
    lambda.validate(sig)?;
    let mut out = StructureMap::new(lambda.space().clone());
    for g in sig.generators() {
        let power = beta.tensor_power(g.outputs)?;
        out.insert(g.name.clone(), power.compose(lambda.get(&g.name)?)?);
    }
    Ok(out)
}

fn require_normal(p: &Presentation) -> Result<NormalityReport, TwistError> {
    let report = p.normality();
    if !report.is_normal() {
        return Err(TwistError::NormalityViolated(report));
    }
    Ok(report)
}

fn require_algebra(lambda: &StructureMap, p: &Presentation) -> Result<CheckReport, TwistError> {
    let report = check_algebra(lambda, p)?;
    if !report.all_passed() {
        return Err(TwistError::InputNotAlgebra(report));
    }
    Ok(report)
}

fn require_morphism(
    beta: &LinearMap,
    lambda: &StructureMap,
    sig: &Signature,
) -> Result<MorphismCheck, TwistError> {
    let check = is_morphism(beta, lambda, lambda, sig)?;
    match &check.witness {
        Some(w) => Err(TwistError::BetaNotMorphism(w.clone())),
        None => Ok(check),
    }
}

/// Twists a Hom-algebra `λ` over a hom-ified presentation with `S = I` along a
/// morphism `β` of it.
pub fn twist(lambda: &StructureMap, beta: &LinearMap, hom: &Presentation) -> Result<TwistResult, TwistError> {
    let info = hom
        .hom()
        .ok_or_else(|| TwistError::NotHomified("no hom-ification recorded".into()))?;
    if !info.full_support {
        return Err(TwistError::SNotI);
    }
    let normality = require_normal(hom)?;
    let input = require_algebra(lambda, hom)?;
    let beta_morphism = require_morphism(beta, lambda, hom.signature())?;
    let twisted = twisted_maps(lambda, beta, hom.signature())?;
    let verified = check_algebra(&twisted, hom)?;
    if !verified.all_passed() {
        return Err(TwistError::Internal(verified));
    }
    Ok(TwistResult {
        twisted,
        verified,
        preconditions: Preconditions {
            normality,
            input,
            beta_morphism,
        },
    })
}

/// The `n`-th derived structure of a multiplicative Hom-algebra: every operation
/// post-composed with `α^n`, and `α` replaced by `α^{n+1}`.
pub fn derived_sequence(
    lambda: &StructureMap,
    hom: &Presentation,
    n: u32,
) -> Result<TwistResult, TwistError> {
    if n == 0 {
        return Err(TwistError::Argument("derived power must be at least 1".into()));
    }
    match hom.hom() {
        Some(info) if info.kind == HomKind::Multiplicative => {}
        _ => {
            return Err(TwistError::NotHomified(
                "a multiplicative hom-ification is required".into(),
            ))
        }
    }
    require_algebra(lambda, hom)?;
    let alpha_n = lambda.get(ALPHA)?.pow(n)?;
    twist(lambda, &alpha_n, hom)
}

/// Turns a `P`-algebra and an endomorphism `β` of it into a Hom-`P`-algebra whose
/// twisting maps are all `β`. Returns the hom-ified presentation used.
pub fn hom_twist(
    lambda: &StructureMap,
    beta: &LinearMap,
    p: &Presentation,
    target: &HomTarget,
) -> Result<(TwistResult, Presentation), TwistError> {
    if let HomTarget::Typed(plan) = target {
        if !plan.is_full(p.unit_count()) {
            return Err(TwistError::SNotI);
        }
    }
    require_normal(p)?;
    require_algebra(lambda, p)?;
    require_morphism(beta, lambda, p.signature())?;
    let q = homify(p, target)?;
    let twisting = q.hom().expect("just hom-ified").twisting.clone();
    let with_ids = lambda.clone().with_identities(twisting.iter());
    Ok((twist(&with_ids, beta, &q)?, q))
}

/// Assigns `β` to every twisting generator of `q`, on top of `λ`.
pub fn with_twisting(lambda: &StructureMap, q: &Presentation, beta: &LinearMap) -> StructureMap {
    let mut out = lambda.clone();
    if let Some(info) = q.hom() {
        for a in &info.twisting {
            out.insert(a.clone(), beta.clone());
        }
    }
    out
}

fn difference(a: &LinearMap, b: &LinearMap) -> Result<Vec<Vec<String>>, TwistError> {
    Ok(matrix_strings(&a.matrix().sub(b.matrix())?))
}

/// A morphism `f: λ → λ′` with `f∘β = β′∘f` stays a morphism between the twisted structures.
pub fn transport_morphism(
    f: &LinearMap,
    (lambda, beta): (&StructureMap, &LinearMap),
    (lambda2, beta2): (&StructureMap, &LinearMap),
    hom: &Presentation,
) -> Result<MorphismCheck, TwistError> {
    let fb = f.compose(beta)?;
    let bf = beta2.compose(f)?;
    if fb != bf {
        return Err(TwistError::Precondition {
            what: "f ∘ β ≠ β′ ∘ f".into(),
            difference: difference(&fb, &bf)?,
        });
    }
    let base = is_morphism(f, lambda, lambda2, hom.signature())?;
    if let Some(w) = base.witness {
        return Err(TwistError::Precondition {
            what: format!("f is not a morphism on `{}`", w.generator),
            difference: w.difference,
        });
    }
    let t1 = twist(lambda, beta, hom)?;
    let t2 = twist(lambda2, beta2, hom)?;
    let check = is_morphism(f, &t1.twisted, &t2.twisted, hom.signature())?;
    if !check.holds {
        return Err(TwistError::Internal(CheckReport::default()));
    }
    Ok(check)
}

/// Whether a witness `γ` certifies that the two induced Hom-algebras are isomorphic, and whether
/// the converse is available.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// `β′` is injective: isomorphic twists force such a `γ` to exist.
    Equivalence,
    /// Only the direction "witness ⇒ isomorphic" applies.
    SufficiencyOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitnessReport {
    pub gamma_is_isomorphism: bool,
    pub intertwines: bool,
    pub witness: bool,
    pub certification: Certification,
    /// Direct check that `γ` and `γ⁻¹` are morphisms between the twisted structures.
    pub twisted_isomorphic: Option<bool>,
    pub beta_char_poly: Vec<String>,
    pub beta_prime_char_poly: Vec<String>,
    pub invariants_match: bool,
}

fn poly_strings(p: &Polynomial) -> Vec<String> {
    p.coefficients().iter().map(|c| c.to_string()).collect()
}

/// Checks whether `γ` is a `P`-algebra isomorphism `λ → λ′` with `γ∘β = β′∘γ`. When it
/// is, the two induced Hom-algebras are isomorphic via `γ`, which is verified directly.
pub fn iso_witness_check(
    gamma: &LinearMap,
    (lambda, beta): (&StructureMap, &LinearMap),
    (lambda2, beta2): (&StructureMap, &LinearMap),
    p: &Presentation,
    target: &HomTarget,
) -> Result<IsoWitnessReport, TwistError> {
    if gamma.source().dim() != gamma.target().dim() || !gamma.is_injective() {
        return Err(TwistError::Singular);
    }
    let gamma_inv = gamma.inverse()?;
    let gamma_is_isomorphism = is_morphism(gamma, lambda, lambda2, p.signature())?.holds;
    let intertwines = gamma.compose(beta)? == beta2.compose(gamma)?;
    let witness = gamma_is_isomorphism && intertwines;
    let certification = if beta2.is_injective() {
        Certification::Equivalence
    } else {
        Certification::SufficiencyOnly
    };
    let twisted_isomorphic = if witness {
        let (t1, q) = hom_twist(lambda, beta, p, target)?;
        let (t2, _) = hom_twist(lambda2, beta2, p, target)?;
        let fwd = is_morphism(gamma, &t1.twisted, &t2.twisted, q.signature())?.holds;
        let back = is_morphism(&gamma_inv, &t2.twisted, &t1.twisted, q.signature())?.holds;
        if !(fwd && back) {
            return Err(TwistError::Internal(CheckReport::default()));
        }
        Some(true)
    } else {
        None
    };
    let cp1 = conjugacy_invariant(beta)?;
    let cp2 = conjugacy_invariant(beta2)?;
    Ok(IsoWitnessReport {
        gamma_is_isomorphism,
        intertwines,
        witness,
        certification,
        twisted_isomorphic,
        beta_char_poly: poly_strings(&cp1),
        beta_prime_char_poly: poly_strings(&cp2),
        invariants_match: cp1 == cp2,
    })
}

/// Characteristic polynomial of a degree-0 endomorphism: equal for conjugate maps.
pub fn conjugacy_invariant(beta: &LinearMap) -> Result<Polynomial, TwistError> {
    if beta.degree() != 0 || beta.source() != beta.target() {
        return Err(TwistError::Argument(
            "conjugacy invariant needs a degree-0 endomorphism".into(),
        ));
    }
    Ok(beta.char_poly()?)
}
