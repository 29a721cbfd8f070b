//! Ready-made presentations: associativity and its subgroup variants, Nambu, bialgebras,
//! Yang–Baxter, and truncated A∞ and L∞.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linalg::{rational, Rational};
use crate::perm::{block_permutation, unshuffles, Permutation, Sign};
use crate::presentation::{HomPlan, Presentation, PresentationError};
use crate::term::{GeneratorSymbol, LinearTerm, Signature, Term, TermError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuiltinError {
    #[error("unknown builtin `{0}`")]
    Unknown(String),

    #[error("{0}")]
    Argument(String),

    #[error(transparent)]
    Term(#[from] TermError),

    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// A presentation together with the hom plan it is meant to be used with.
#[derive(Clone, Debug, PartialEq)]
pub struct Builtin {
    pub name: String,
    pub presentation: Presentation,
    /// `None` when the presentation has no unit occurrences.
    pub plan: Option<HomPlan>,
}

impl Builtin {
    fn new(name: String, presentation: Presentation, plan: Option<HomPlan>) -> Self {
        Builtin {
            name,
            presentation,
            plan,
        }
    }

    /// Builtins without a dedicated plan twist every unit by one map.
    fn with_theta_min(name: String, presentation: Presentation) -> Result<Self, BuiltinError> {
        let plan = match presentation.unit_count() {
            0 => None,
            n => Some(HomPlan::theta_min(&HomPlan::all_labels(n))?),
        };
        Ok(Builtin::new(name, presentation, plan))
    }
}

/// Subgroups of Σ₃.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupTag {
    Trivial,
    Swap12,
    Swap23,
    Alternating,
    Symmetric,
}

impl SubgroupTag {
    pub const ALL: [SubgroupTag; 5] = [
        SubgroupTag::Trivial,
        SubgroupTag::Swap12,
        SubgroupTag::Swap23,
        SubgroupTag::Alternating,
        SubgroupTag::Symmetric,
    ];

    /// Elements in lexicographic order of their one-line images.
    pub fn elements(self) -> Vec<Permutation> {
        Permutation::all(3)
            .into_iter()
            .filter(|p| match self {
                SubgroupTag::Trivial => p.is_identity(),
                SubgroupTag::Swap12 => p.apply(2) == 2,
                SubgroupTag::Swap23 => p.apply(0) == 0,
                SubgroupTag::Alternating => p.sign() == Sign::Plus,
                SubgroupTag::Symmetric => true,
            })
            .collect()
    }

    pub fn tag(self) -> &'static str {
        match self {
            SubgroupTag::Trivial => "e",
            SubgroupTag::Swap12 => "12",
            SubgroupTag::Swap23 => "23",
            SubgroupTag::Alternating => "a3",
            SubgroupTag::Symmetric => "s3",
        }
    }
}

impl FromStr for SubgroupTag {
    type Err = BuiltinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SubgroupTag::ALL
            .into_iter()
            .find(|g| g.tag() == s)
            .ok_or_else(|| BuiltinError::Argument(format!("unknown subgroup `{s}`")))
    }
}

impl fmt::Display for SubgroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn mu() -> Term {
    Term::gen("mu")
}

fn unit_row(n: usize) -> Vec<Term> {
    vec![Term::Unit; n]
}

fn binary_signature() -> Signature {
    Signature::new(vec![GeneratorSymbol::new("mu", 1, 2)]).expect("one generator")
}

fn left_comb() -> Term {
    Term::vcomp(mu(), Term::tensor(mu(), Term::Unit))
}

fn right_comb() -> Term {
    Term::vcomp(mu(), Term::tensor(Term::Unit, mu()))
}

fn relation(terms: Vec<(Rational, Term)>, sig: &Signature) -> Result<LinearTerm, TermError> {
    LinearTerm::from_terms(terms, sig)
}

fn as_g_relation(g: SubgroupTag, sig: &Signature) -> Result<LinearTerm, TermError> {
    let mut terms = Vec::new();
    for s in g.elements() {
        let c = rational(s.sign().to_i64());
        terms.push((c.clone(), Term::vcomp(left_comb(), Term::Perm(s.clone()))));
        terms.push((-c, Term::vcomp(right_comb(), Term::Perm(s))));
    }
    relation(terms, sig)
}

/// `Σ_{σ∈G} sign σ {μ∘(μ⊗1)∘σ − μ∘(1⊗μ)∘σ}`.
pub fn as_g(g: SubgroupTag) -> Result<Builtin, BuiltinError> {
    let sig = binary_signature();
    let r = as_g_relation(g, &sig)?;
    Builtin::with_theta_min(format!("as-g:{g}"), Presentation::new(sig, vec![r])?)
}

/// Plain associativity.
pub fn associative() -> Result<Builtin, BuiltinError> {
    let mut b = as_g(SubgroupTag::Trivial)?;
    b.name = "as".into();
    Ok(b)
}

/// As(A₃) together with antisymmetry `μ + μ∘(1 2)`: Lie algebras.
pub fn lie() -> Result<Builtin, BuiltinError> {
    let sig = binary_signature();
    let jacobi = as_g_relation(SubgroupTag::Alternating, &sig)?;
    let antisym = relation(
        vec![
            (rational(1), mu()),
            (
                rational(1),
                Term::vcomp(mu(), Term::Perm(Permutation::transposition(2, 0, 1))),
            ),
        ],
        &sig,
    )?;
    Builtin::with_theta_min("lie".into(), Presentation::new(sig, vec![jacobi, antisym])?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsVariant {
    /// `(α(x)α(y))z = x(α(y)α(z))`.
    II1,
    /// `α((xy)z) = α(x(yz))`.
    III,
}

/// Associativity written with an expanded unit pattern, and the support it twists.
pub fn as_variant(kind: AsVariant) -> Result<Builtin, BuiltinError> {
    let sig = binary_signature();
    let (r, support, name) = match kind {
        AsVariant::II1 => (
            relation(
                vec![
                    (
                        rational(1),
                        Term::vcomp(left_comb(), Term::tensor_all(unit_row(3))),
                    ),
                    (
                        rational(-1),
                        Term::vcomp(right_comb(), Term::tensor_all(unit_row(3))),
                    ),
                ],
                &sig,
            )?,
            vec![2, 3, 7, 8],
            "as-ii1",
        ),
        AsVariant::III => (
            relation(
                vec![
                    (rational(1), Term::vcomp(Term::Unit, left_comb())),
                    (rational(-1), Term::vcomp(Term::Unit, right_comb())),
                ],
                &sig,
            )?,
            vec![1, 3],
            "as-iii",
        ),
    };
    let plan = HomPlan::theta_min(&support)?;
    Ok(Builtin::new(
        name.into(),
        Presentation::new(sig, vec![r])?,
        Some(plan),
    ))
}

/// The n-ary Nambu identity, written so that unit `j` of every monomial lands in block `j`.
///
/// Monomial `i` (for `i = 1..=n`) is `μ∘(1^{i-1}⊗μ⊗1^{n-i})∘σ_i` with coefficient `-1`;
/// the last monomial is `μ∘(1^{n-1}⊗μ)`.
pub fn nambu(n: usize) -> Result<Builtin, BuiltinError> {
    if n < 2 {
        return Err(BuiltinError::Argument(format!(
            "nambu arity must be at least 2, got {n}"
        )));
    }
    let sig = Signature::new(vec![GeneratorSymbol::new("mu", 1, n)])?;
    let mut terms = Vec::new();
    for i in 1..=n {
        let mut row = unit_row(i - 1);
        row.push(mu());
        row.extend(unit_row(n - i));
        let sigma = block_permutation(n, i).map_err(TermError::from)?;
        terms.push((
            rational(-1),
            Term::vcomp_all([mu(), Term::tensor_all(row), Term::Perm(sigma)]),
        ));
    }
    let mut row = unit_row(n - 1);
    row.push(mu());
    terms.push((rational(1), Term::vcomp(mu(), Term::tensor_all(row))));
    let p = Presentation::new(sig.clone(), vec![relation(terms, &sig)?])?;
    let blocks: Vec<Vec<usize>> = (1..n)
        .map(|j| (0..=n).map(|i| j + i * (n - 1)).collect())
        .collect();
    let plan = HomPlan::new(HomPlan::all_labels(p.unit_count()), blocks)?;
    Ok(Builtin::new(format!("nambu:{n}"), p, Some(plan)))
}

/// Associativity, coassociativity and the compatibility `Δ∘μ = (μ⊗μ)∘(2 3)∘(Δ⊗Δ)`.
pub fn bialgebra() -> Result<Builtin, BuiltinError> {
    let sig = Signature::new(vec![
        GeneratorSymbol::new("mu", 1, 2),
        GeneratorSymbol::new("delta", 2, 1),
    ])?;
    let delta = || Term::gen("delta");
    let assoc = relation(
        vec![(rational(1), left_comb()), (rational(-1), right_comb())],
        &sig,
    )?;
    let coassoc = relation(
        vec![
            (
                rational(1),
                Term::vcomp(Term::tensor(delta(), Term::Unit), delta()),
            ),
            (
                rational(-1),
                Term::vcomp(Term::tensor(Term::Unit, delta()), delta()),
            ),
        ],
        &sig,
    )?;
    let comp = relation(
        vec![
            (rational(1), Term::vcomp(delta(), mu())),
            (
                rational(-1),
                Term::vcomp_all([
                    Term::tensor(mu(), mu()),
                    Term::Perm(Permutation::transposition(4, 1, 2)),
                    Term::tensor(delta(), delta()),
                ]),
            ),
        ],
        &sig,
    )?;
    Builtin::with_theta_min(
        "bialgebra".into(),
        Presentation::new(sig, vec![assoc, coassoc, comp])?,
    )
}

/// One twisting map for the algebra part and one for the coalgebra part.
pub fn bialgebra_split_plan() -> HomPlan {
    HomPlan::new(vec![1, 2, 3, 4], vec![vec![1, 2], vec![3, 4]]).expect("valid partition")
}

/// `(1⊗B)∘(B⊗1)∘(1⊗B) − (B⊗1)∘(1⊗B)∘(B⊗1)`.
pub fn ybe() -> Result<Builtin, BuiltinError> {
    let sig = Signature::new(vec![GeneratorSymbol::new("B", 2, 2)])?;
    let b = || Term::gen("B");
    let right = || Term::tensor(Term::Unit, b());
    let left = || Term::tensor(b(), Term::Unit);
    let r = relation(
        vec![
            (rational(1), Term::vcomp_all([right(), left(), right()])),
            (rational(-1), Term::vcomp_all([left(), right(), left()])),
        ],
        &sig,
    )?;
    Builtin::with_theta_min("ybe".into(), Presentation::new(sig, vec![r])?)
}

/// Name of the k-ary operation of the A∞ and L∞ builtins.
pub fn infinity_generator(k: usize) -> String {
    format!("mu{k}")
}

fn infinity_signature(n: usize) -> Result<Signature, TermError> {
    Signature::new(
        (1..=n)
            .map(|k| GeneratorSymbol::graded(infinity_generator(k), 1, k, 2 - k as i64))
            .collect(),
    )
}

/// Groups unit occurrences by their slot label: block `i` holds every unit labelled `i`.
fn slot_plan(labels: &[usize]) -> Result<Option<HomPlan>, BuiltinError> {
    if labels.is_empty() {
        return Ok(None);
    }
    let max = labels.iter().copied().max().unwrap_or(0);
    let blocks: Vec<Vec<usize>> = (1..=max)
        .map(|i| {
            labels
                .iter()
                .enumerate()
                .filter(|&(_, &l)| l == i)
                .map(|(occ, _)| occ + 1)
                .collect::<Vec<_>>()
        })
        .filter(|b| !b.is_empty())
        .collect();
    Ok(Some(HomPlan::new(HomPlan::all_labels(labels.len()), blocks)?))
}

/// Truncated A∞: operations `mu1..muN` of degree `2-k`, and for each `n ≤ N`
/// `Σ_{l,k} (-1)^{(k+1)(l+1)-1+kn+offset·l} mu_{n-k+1}∘(1^l⊗mu_k⊗1^{n-l-k})`.
///
/// The part of the classical sign depending on the inputs comes from the Koszul rule at
/// evaluation time. The unit in wire position `i` carries slot label `i`; the plan groups
/// slot labels.
pub fn a_infinity(n_max: usize, sign_offset: u8) -> Result<Builtin, BuiltinError> {
    if n_max < 1 {
        return Err(BuiltinError::Argument("A∞ truncation must be at least 1".into()));
    }
    if sign_offset > 1 {
        return Err(BuiltinError::Argument(format!(
            "sign offset must be 0 or 1, got {sign_offset}"
        )));
    }
    let sig = infinity_signature(n_max)?;
    let g = |k: usize| Term::gen(infinity_generator(k));
    let mut relations = Vec::new();
    let mut labels = Vec::new();
    for n in 1..=n_max {
        let mut terms = Vec::new();
        for l in 0..n {
            for k in 1..=(n - l) {
                let e = ((k + 1) * (l + 1) - 1 + k * n + sign_offset as usize * l) as i64;
                let mut row = unit_row(l);
                row.push(g(k));
                row.extend(unit_row(n - l - k));
                terms.push((
                    rational(Sign::pow_minus_one(e).to_i64()),
                    Term::vcomp(g(n - k + 1), Term::tensor_all(row)),
                ));
                labels.extend(1..=l);
                labels.extend((l + k + 1)..=n);
            }
        }
        relations.push(relation(terms, &sig)?);
    }
    let p = Presentation::new(sig, relations)?;
    debug_assert_eq!(labels.len(), p.unit_count());
    let plan = slot_plan(&labels)?;
    Ok(Builtin::new(format!("ainf:{n_max}"), p, plan))
}

/// Truncated L∞: antisymmetry `mu_k − sign(σ)·mu_k∘σ` for `σ ≠ id`, and for each `n ≤ N`
/// `Σ_{i+j=n+1} Σ_{σ unshuffle} sign(σ)(-1)^{i(j-1)} mu_j∘(mu_i⊗1^{n-i})∘σ⁻¹`.
///
/// As for A∞, the Koszul part of the signs is produced at evaluation time. The `t`-th
/// unit of a monomial carries slot label `t`.
pub fn l_infinity(n_max: usize) -> Result<Builtin, BuiltinError> {
    if n_max < 1 {
        return Err(BuiltinError::Argument("L∞ truncation must be at least 1".into()));
    }
    let sig = infinity_signature(n_max)?;
    let g = |k: usize| Term::gen(infinity_generator(k));
    let mut relations = Vec::new();
    for k in 2..=n_max {
        for s in Permutation::all(k).into_iter().filter(|s| !s.is_identity()) {
            let c = rational(s.sign().to_i64());
            relations.push(relation(
                vec![(rational(1), g(k)), (-c, Term::vcomp(g(k), Term::Perm(s)))],
                &sig,
            )?);
        }
    }
    let mut labels = Vec::new();
    for n in 1..=n_max {
        let mut terms = Vec::new();
        for i in 1..=n {
            let j = n + 1 - i;
            for s in unshuffles(i, n - i) {
                let e = (i * (j - 1)) as i64;
                let c = s.sign() * Sign::pow_minus_one(e);
                let mut row = vec![g(i)];
                row.extend(unit_row(n - i));
                terms.push((
                    rational(c.to_i64()),
                    Term::vcomp_all([g(j), Term::tensor_all(row), Term::Perm(s.inverse())]),
                ));
                labels.extend(1..=(n - i));
            }
        }
        relations.push(relation(terms, &sig)?);
    }
    let p = Presentation::new(sig, relations)?;
    debug_assert_eq!(labels.len(), p.unit_count());
    let plan = slot_plan(&labels)?;
    Ok(Builtin::new(format!("linf:{n_max}"), p, plan))
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "as",
    "as-g:e",
    "as-g:12",
    "as-g:23",
    "as-g:a3",
    "as-g:s3",
    "as-ii1",
    "as-iii",
    "lie",
    "nambu:N",
    "bialgebra",
    "ybe",
    "ainf:N",
    "linf:N",
];

fn parse_count(name: &str, arg: &str) -> Result<usize, BuiltinError> {
    arg.parse()
        .map_err(|_| BuiltinError::Argument(format!("`{name}` needs an integer argument, got `{arg}`")))
}

/// Looks a builtin up by its command-line name.
pub fn builtin(name: &str, ainf_sign_offset: u8) -> Result<Builtin, BuiltinError> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    match (head, arg) {
        ("as", None) => associative(),
        ("as-g", Some(g)) => as_g(g.parse()?),
        ("as-ii1", None) => as_variant(AsVariant::II1),
        ("as-iii", None) => as_variant(AsVariant::III),
        ("lie", None) => lie(),
        ("nambu", Some(n)) => nambu(parse_count(head, n)?),
        ("bialgebra", None) => bialgebra(),
        ("ybe", None) => ybe(),
        ("ainf", Some(n)) => a_infinity(parse_count(head, n)?, ainf_sign_offset),
        ("linf", Some(n)) => l_infinity(parse_count(head, n)?),
        _ => Err(BuiltinError::Unknown(name.to_string())),
    }
}
