//! Free-PROP expressions over a signature.
//!
//! A [`Term`] is raw syntax: generators, units and permutations combined by `⊗` and
//! `∘`. Every monomial is brought into a [`LayeredMonomial`]
//! `σ0 ∘ (L1 ∘ σ1) ∘ ... ∘ (Lk ∘ σk)` by [`layerize`], which applies the interchange
//! law to align factors into full-width layers. The layered form is the stored
//! representation of every relation, and it fixes the set of unit occurrences.
//!
//! In graded settings the interchange law carries a Koszul sign, so [`layerize`]
//! returns it alongside the monomial.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Rational;
use crate::perm::{PermError, Permutation, Sign};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TermError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("vertical composition arity mismatch: upper has {expected} inputs, lower has {found} outputs in `{subterm}`")]
    VCompArityMismatch {
        expected: usize,
        found: usize,
        subterm: String,
    },

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("monomials of one linear term have different biarities: {0:?} vs {1:?}")]
    MixedBiarity((usize, usize), (usize, usize)),

    #[error("cannot replace a unit by `{0}` of biarity {1:?}; need (1,1)")]
    UnitReplacement(String, (usize, usize)),

    #[error("cannot replace `{0}` of biarity {1:?} by something of biarity {2:?}")]
    SymbolReplacement(String, (usize, usize), (usize, usize)),

    #[error("malformed layered monomial: {0}")]
    Malformed(String),

    #[error(transparent)]
    Perm(#[from] PermError),
}

pub type Biarity = (usize, usize);

/// A generator `x ∈ X(n, m)`: `outputs = n`, `inputs = m`, plus a homological degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSymbol {
    pub name: String,
    #[serde(rename = "out")]
    pub outputs: usize,
    #[serde(rename = "in")]
    pub inputs: usize,
    #[serde(default)]
    pub degree: i64,
}

impl GeneratorSymbol {
    pub fn new(name: impl Into<String>, outputs: usize, inputs: usize) -> Self {
        GeneratorSymbol {
            name: name.into(),
            outputs,
            inputs,
            degree: 0,
        }
    }

    pub fn graded(name: impl Into<String>, outputs: usize, inputs: usize, degree: i64) -> Self {
        GeneratorSymbol {
            name: name.into(),
            outputs,
            inputs,
            degree,
        }
    }

    pub fn biarity(&self) -> Biarity {
        (self.outputs, self.inputs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct Signature {
    generators: Vec<GeneratorSymbol>,
}

impl Signature {
    pub fn new(generators: Vec<GeneratorSymbol>) -> Result<Self, TermError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.name.as_str()) {
                return Err(TermError::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Signature { generators })
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.generators
    }

    pub fn get(&self, name: &str) -> Option<&GeneratorSymbol> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn lookup(&self, name: &str) -> Result<&GeneratorSymbol, TermError> {
        self.get(name)
            .ok_or_else(|| TermError::UnknownGenerator(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn push(&mut self, g: GeneratorSymbol) -> Result<(), TermError> {
        if self.contains(&g.name) {
            return Err(TermError::DuplicateGenerator(g.name));
        }
        self.generators.push(g);
        Ok(())
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let gens = Vec::<GeneratorSymbol>::deserialize(d)?;
        Signature::new(gens).map_err(serde::de::Error::custom)
    }
}

/// Raw free-PROP syntax.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Gen(String),
    Unit,
    Perm(Permutation),
    /// The zero-width layer, i.e. an empty `⊗`.
    Empty,
    Tensor(Box<Term>, Box<Term>),
    VComp(Box<Term>, Box<Term>),
}

impl Term {
    pub fn gen(name: impl Into<String>) -> Term {
        Term::Gen(name.into())
    }

    pub fn tensor(a: Term, b: Term) -> Term {
        Term::Tensor(Box::new(a), Box::new(b))
    }

    pub fn vcomp(upper: Term, lower: Term) -> Term {
        Term::VComp(Box::new(upper), Box::new(lower))
    }

    /// Right-associated `t1 ⊗ (t2 ⊗ ...)`; an empty list is [`Term::Empty`].
    pub fn tensor_all(terms: impl IntoIterator<Item = Term>) -> Term {
        let mut v: Vec<Term> = terms.into_iter().collect();
        match v.len() {
            0 => Term::Empty,
            _ => {
                let mut acc = v.pop().unwrap();
                while let Some(t) = v.pop() {
                    acc = Term::tensor(t, acc);
                }
                acc
            }
        }
    }

    /// Right-associated `top ∘ (... ∘ bottom)`.
    pub fn vcomp_all(terms: impl IntoIterator<Item = Term>) -> Term {
        let mut v: Vec<Term> = terms.into_iter().collect();
        let mut acc = v.pop().unwrap_or(Term::Empty);
        while let Some(t) = v.pop() {
            acc = Term::vcomp(t, acc);
        }
        acc
    }

    /// `1^{⊗n}`.
    pub fn units(n: usize) -> Term {
        Term::tensor_all(std::iter::repeat(Term::Unit).take(n))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Gen(g) => write!(f, "{g}"),
            Term::Unit => write!(f, "1"),
            Term::Perm(p) => write!(f, "{p}"),
            Term::Empty => write!(f, "()"),
            Term::Tensor(a, b) => write!(f, "({a} ⊗ {b})"),
            Term::VComp(a, b) => write!(f, "({a} ∘ {b})"),
        }
    }
}

/// Computes `(outputs, inputs)` of a term.
pub fn infer_biarity(t: &Term, sig: &Signature) -> Result<Biarity, TermError> {
    match t {
        Term::Gen(name) => Ok(sig.lookup(name)?.biarity()),
        Term::Unit => Ok((1, 1)),
        Term::Perm(p) => Ok((p.arity(), p.arity())),
        Term::Empty => Ok((0, 0)),
        Term::Tensor(a, b) => {
            let (na, ma) = infer_biarity(a, sig)?;
            let (nb, mb) = infer_biarity(b, sig)?;
            Ok((na + nb, ma + mb))
        }
        Term::VComp(a, b) => {
            let (na, ma) = infer_biarity(a, sig)?;
            let (nb, mb) = infer_biarity(b, sig)?;
            if ma != nb {
                return Err(TermError::VCompArityMismatch {
                    expected: ma,
                    found: nb,
                    subterm: t.to_string(),
                });
            }
            Ok((na, mb))
        }
    }
}

/// A factor inside a layer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Gen(String),
    Unit,
}

impl Factor {
    pub fn gen(name: impl Into<String>) -> Factor {
        Factor::Gen(name.into())
    }

    pub fn biarity(&self, sig: &Signature) -> Result<Biarity, TermError> {
        match self {
            Factor::Unit => Ok((1, 1)),
            Factor::Gen(g) => Ok(sig.lookup(g)?.biarity()),
        }
    }

    pub fn degree(&self, sig: &Signature) -> Result<i64, TermError> {
        match self {
            Factor::Unit => Ok(0),
            Factor::Gen(g) => Ok(sig.lookup(g)?.degree),
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Factor::Unit)
    }

    fn to_term(&self) -> Term {
        match self {
            Factor::Unit => Term::Unit,
            Factor::Gen(g) => Term::Gen(g.clone()),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Unit => write!(f, "1"),
            Factor::Gen(g) => write!(f, "{g}"),
        }
    }
}

/// One layer `x_{N_j+1} ⊗ ... ⊗ x_{N_{j+1}}` followed (below, on its input side) by `sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layer {
    pub factors: Vec<Factor>,
    pub sigma: Permutation,
}

impl Layer {
    pub fn new(factors: Vec<Factor>, sigma: Permutation) -> Self {
        Layer { factors, sigma }
    }

    pub fn biarity(&self, sig: &Signature) -> Result<Biarity, TermError> {
        self.factors.iter().try_fold((0, 0), |(n, m), f| {
            let (fn_, fm) = f.biarity(sig)?;
            Ok((n + fn_, m + fm))
        })
    }

    pub fn degree(&self, sig: &Signature) -> Result<i64, TermError> {
        self.factors.iter().try_fold(0, |acc, f| Ok(acc + f.degree(sig)?))
    }
}

/// `σ0 ∘ (L1 ∘ σ1) ∘ ... ∘ (Lk ∘ σk)`, layers listed top to bottom.
///
/// `k = 0` is a bare permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LayeredMonomial {
    pub sigma0: Permutation,
    pub layers: Vec<Layer>,
}

impl LayeredMonomial {
    /// Builds and type-checks a layered monomial.
    pub fn new(sigma0: Permutation, layers: Vec<Layer>, sig: &Signature) -> Result<Self, TermError> {
        let m = LayeredMonomial { sigma0, layers };
        m.biarity(sig)?;
        Ok(m)
    }

    /// Layers given as factor lists with identity permutations.
    pub fn from_layers(layers: Vec<Vec<Factor>>, sig: &Signature) -> Result<Self, TermError> {
        let mut out = Vec::with_capacity(layers.len());
        for factors in layers {
            let (_, m) = Layer::new(factors.clone(), Permutation::identity(0)).biarity(sig)?;
            out.push(Layer::new(factors, Permutation::identity(m)));
        }
        let n = match out.first() {
            Some(l) => l.biarity(sig)?.0,
            None => 0,
        };
        LayeredMonomial::new(Permutation::identity(n), out, sig)
    }

    /// The number of layers `k`, pure-unit layers included.
    pub fn degree(&self) -> usize {
        self.layers.len()
    }

    pub fn biarity(&self, sig: &Signature) -> Result<Biarity, TermError> {
        let n = self.sigma0.arity();
        let mut width = n;
        for (j, layer) in self.layers.iter().enumerate() {
            let (lo, li) = layer.biarity(sig)?;
            if lo != width {
                return Err(TermError::VCompArityMismatch {
                    expected: width,
                    found: lo,
                    subterm: format!("layer {} of {}", j + 1, self),
                });
            }
            if layer.sigma.arity() != li {
                return Err(TermError::Malformed(format!(
                    "permutation below layer {} has arity {}, layer has {} inputs",
                    j + 1,
                    layer.sigma.arity(),
                    li
                )));
            }
            width = li;
        }
        Ok((n, width))
    }

    pub fn generators(&self) -> impl Iterator<Item = &str> {
        self.layers.iter().flat_map(|l| {
            l.factors.iter().filter_map(|f| match f {
                Factor::Gen(g) => Some(g.as_str()),
                Factor::Unit => None,
            })
        })
    }

    pub fn unit_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.factors.iter().filter(|f| f.is_unit()).count())
            .sum()
    }

    /// Back to syntax: `σ0 ∘ L1 ∘ σ1 ∘ ...`, identity permutations omitted.
    pub fn to_term(&self) -> Term {
        let mut parts = Vec::new();
        if !self.sigma0.is_identity() || self.layers.is_empty() {
            parts.push(Term::Perm(self.sigma0.clone()));
        }
        for layer in &self.layers {
            parts.push(Term::tensor_all(layer.factors.iter().map(Factor::to_term)));
            if !layer.sigma.is_identity() {
                parts.push(Term::Perm(layer.sigma.clone()));
            }
        }
        Term::vcomp_all(parts)
    }

    fn map_factors<E>(
        &self,
        mut f: impl FnMut(usize, usize, &Factor) -> Result<Factor, E>,
    ) -> Result<LayeredMonomial, E> {
        let mut layers = Vec::with_capacity(self.layers.len());
        for (j, layer) in self.layers.iter().enumerate() {
            let mut factors = Vec::with_capacity(layer.factors.len());
            for (s, x) in layer.factors.iter().enumerate() {
                factors.push(f(j, s, x)?);
            }
            layers.push(Layer::new(factors, layer.sigma.clone()));
        }
        Ok(LayeredMonomial {
            sigma0: self.sigma0.clone(),
            layers,
        })
    }
}

impl fmt::Display for LayeredMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                write!(f, " ∘ ")?;
            }
            first = false;
            Ok(())
        };
        if !self.sigma0.is_identity() || self.layers.is_empty() {
            sep(f)?;
            write!(f, "{}", self.sigma0)?;
        }
        for layer in &self.layers {
            sep(f)?;
            match layer.factors.len() {
                0 => write!(f, "()")?,
                1 => write!(f, "{}", layer.factors[0])?,
                _ => {
                    let parts: Vec<String> = layer.factors.iter().map(|x| x.to_string()).collect();
                    write!(f, "({})", parts.join(" ⊗ "))?
                }
            }
            if !layer.sigma.is_identity() {
                sep(f)?;
                write!(f, "{}", layer.sigma)?;
            }
        }
        Ok(())
    }
}

/// Brings a monomial into layered form.
///
/// Every generator and written unit becomes a vertex placed at its longest distance from the
/// outputs; wires crossing a layer are carried by padding units, and factors within a layer
/// are ordered by where their first output lands above. The result depends only on the wiring,
/// so interchange-equivalent terms share it. The returned sign is the Koszul sign of moving
/// the odd generators from their order of appearance in `t` to their order in the layers; it
/// is `+1` whenever all generators have even degree.
pub fn layerize(t: &Term, sig: &Signature) -> Result<(Sign, LayeredMonomial), TermError> {
    infer_biarity(t, sig)?;
    let mut wiring = Wiring::default();
    let (inputs, outputs) = wiring.build(t, sig)?;
    wiring.layer(inputs, outputs, sig)
}

/// Where a wire comes from: a global input or an output port of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Wire {
    Input(usize),
    Port(usize, usize),
}

struct Node {
    factor: Factor,
    outputs: usize,
    inputs: Vec<Wire>,
}

/// Open wiring diagram of a term, vertices in order of appearance.
#[derive(Default)]
struct Wiring {
    nodes: Vec<Node>,
}

impl Wiring {
    /// Adds the vertices of `t`; returns its input count and the wires feeding its outputs.
    fn build(&mut self, t: &Term, sig: &Signature) -> Result<(usize, Vec<Wire>), TermError> {
        Ok(match t {
            Term::Gen(name) => {
                let g = sig.lookup(name)?;
                let v = self.nodes.len();
                self.nodes.push(Node {
                    factor: Factor::Gen(name.clone()),
                    outputs: g.outputs,
                    inputs: (0..g.inputs).map(Wire::Input).collect(),
                });
                (g.inputs, (0..g.outputs).map(|k| Wire::Port(v, k)).collect())
            }
            Term::Unit => {
                let v = self.nodes.len();
                self.nodes.push(Node {
                    factor: Factor::Unit,
                    outputs: 1,
                    inputs: vec![Wire::Input(0)],
                });
                (1, vec![Wire::Port(v, 0)])
            }
            Term::Empty => (0, vec![]),
            Term::Perm(p) => {
                let mut out = vec![Wire::Input(0); p.arity()];
                for i in 0..p.arity() {
                    out[p.apply(i)] = Wire::Input(i);
                }
                (p.arity(), out)
            }
            Term::Tensor(a, b) => {
                let (ma, mut oa) = self.build(a, sig)?;
                let first = self.nodes.len();
                let (mb, ob) = self.build(b, sig)?;
                let shift = |w: Wire| match w {
                    Wire::Input(i) => Wire::Input(i + ma),
                    port => port,
                };
                for node in &mut self.nodes[first..] {
                    node.inputs.iter_mut().for_each(|w| *w = shift(*w));
                }
                oa.extend(ob.into_iter().map(shift));
                (ma + mb, oa)
            }
            Term::VComp(a, b) => {
                let first = self.nodes.len();
                let (_, oa) = self.build(a, sig)?;
                let (mb, ob) = self.build(b, sig)?;
                let resolve = |w: Wire| match w {
                    Wire::Input(i) => ob[i],
                    port => port,
                };
                for node in &mut self.nodes[first..first + vertex_count(a)] {
                    node.inputs.iter_mut().for_each(|w| *w = resolve(*w));
                }
                (mb, oa.into_iter().map(resolve).collect())
            }
        })
    }

    fn layer(
        self,
        inputs: usize,
        outputs: Vec<Wire>,
        sig: &Signature,
    ) -> Result<(Sign, LayeredMonomial), TermError> {
        let n = self.nodes.len();
        // consumers always precede their producers
        let mut level = vec![1usize; n];
        for w in 0..n {
            for wire in &self.nodes[w].inputs {
                if let Wire::Port(v, _) = *wire {
                    level[v] = level[v].max(level[w] + 1);
                }
            }
        }
        let depth = level.iter().copied().max().unwrap_or(0);
        let mut above = outputs;
        let mut sigmas = Vec::with_capacity(depth + 1);
        let mut layers: Vec<Vec<Factor>> = Vec::with_capacity(depth);
        let mut order = Vec::new();
        let position = |above: &[Wire], w: Wire| above.iter().position(|&x| x == w);
        for j in 1..=depth {
            // (destination, vertex or padded wire)
            let mut items: Vec<(usize, Result<usize, Wire>)> = Vec::new();
            let mut sinks = Vec::new();
            for v in (0..n).filter(|&v| level[v] == j) {
                match position(&above, Wire::Port(v, 0)) {
                    Some(p) => items.push((p, Ok(v))),
                    None => sinks.push(v),
                }
            }
            for (p, &w) in above.iter().enumerate() {
                let passes = match w {
                    Wire::Input(_) => true,
                    Wire::Port(v, _) => level[v] > j,
                };
                if passes {
                    items.push((p, Err(w)));
                }
            }
            items.sort_by_key(|(p, _)| *p);
            let mut factors = Vec::new();
            let mut tops = Vec::new();
            let mut below = Vec::new();
            for (_, item) in items
                .into_iter()
                .chain(sinks.into_iter().map(|v| (usize::MAX, Ok(v))))
            {
                match item {
                    Ok(v) => {
                        let node = &self.nodes[v];
                        factors.push(node.factor.clone());
                        tops.extend((0..node.outputs).map(|k| Wire::Port(v, k)));
                        below.extend(node.inputs.iter().copied());
                        order.push(v);
                    }
                    Err(w) => {
                        factors.push(Factor::Unit);
                        tops.push(w);
                        below.push(w);
                    }
                }
            }
            let images = tops
                .iter()
                .map(|&w| position(&above, w).expect("every crossing wire is carried"))
                .collect();
            sigmas.push(Permutation::new(images)?);
            layers.push(factors);
            above = below;
        }
        let mut images = vec![0; inputs];
        for (p, w) in above.iter().enumerate() {
            match *w {
                Wire::Input(i) => images[i] = p,
                Wire::Port(..) => unreachable!("vertices below the last layer"),
            }
        }
        sigmas.push(Permutation::new(images)?);

        let odd: Vec<bool> = (0..n)
            .map(|v| self.nodes[v].factor.degree(sig).map(|d| d % 2 != 0))
            .collect::<Result<_, _>>()?;
        let mut sign = Sign::Plus;
        for (a, &u) in order.iter().enumerate() {
            for &v in &order[a + 1..] {
                if u > v && odd[u] && odd[v] {
                    sign = sign * Sign::Minus;
                }
            }
        }
        let mut sigmas = sigmas.into_iter();
        let sigma0 = sigmas.next().expect("at least one permutation");
        let layers = layers
            .into_iter()
            .zip(sigmas)
            .map(|(factors, sigma)| Layer::new(factors, sigma))
            .collect();
        Ok((sign, LayeredMonomial { sigma0, layers }))
    }
}

fn vertex_count(t: &Term) -> usize {
    match t {
        Term::Gen(_) | Term::Unit => 1,
        Term::Perm(_) | Term::Empty => 0,
        Term::Tensor(a, b) | Term::VComp(a, b) => vertex_count(a) + vertex_count(b),
    }
}

/// A finite sum `Σ c_i · m_i` of layered monomials of one biarity.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearTerm {
    pub terms: Vec<(Rational, LayeredMonomial)>,
}

impl LinearTerm {
    pub fn new(terms: Vec<(Rational, LayeredMonomial)>) -> Self {
        LinearTerm { terms }
    }

    /// Layerizes each monomial, folding the interchange sign into its coefficient.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Rational, Term)>,
        sig: &Signature,
    ) -> Result<Self, TermError> {
        let mut out = Vec::new();
        for (c, t) in terms {
            let (s, m) = layerize(&t, sig)?;
            out.push((c * Rational::from_integer(s.to_i64().into()), m));
        }
        let lt = LinearTerm { terms: out };
        lt.biarity(sig)?;
        Ok(lt)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &LayeredMonomial> {
        self.terms.iter().map(|(_, m)| m)
    }

    /// `None` for the empty sum.
    pub fn biarity(&self, sig: &Signature) -> Result<Option<Biarity>, TermError> {
        let mut found: Option<Biarity> = None;
        for (_, m) in &self.terms {
            let b = m.biarity(sig)?;
            match found {
                Some(prev) if prev != b => return Err(TermError::MixedBiarity(prev, b)),
                _ => found = Some(b),
            }
        }
        Ok(found)
    }

    /// Merges syntactically equal monomials (first occurrence keeps its position) and
    /// drops zero coefficients.
    pub fn normalized(&self) -> LinearTerm {
        let mut order: Vec<LayeredMonomial> = Vec::new();
        let mut coef: BTreeMap<LayeredMonomial, Rational> = BTreeMap::new();
        for (c, m) in &self.terms {
            match coef.get_mut(m) {
                Some(acc) => *acc += c,
                None => {
                    order.push(m.clone());
                    coef.insert(m.clone(), c.clone());
                }
            }
        }
        LinearTerm {
            terms: order
                .into_iter()
                .filter_map(|m| {
                    let c = coef.remove(&m).unwrap();
                    (!c.is_zero()).then_some((c, m))
                })
                .collect(),
        }
    }

    /// Replaces generator symbols everywhere (units untouched).
    pub fn rename(&self, map: &BTreeMap<String, Factor>) -> LinearTerm {
        LinearTerm {
            terms: self
                .terms
                .iter()
                .map(|(c, m)| {
                    let m = m
                        .map_factors::<()>(|_, _, f| {
                            Ok(match f {
                                Factor::Gen(g) => map.get(g).cloned().unwrap_or_else(|| f.clone()),
                                Factor::Unit => Factor::Unit,
                            })
                        })
                        .unwrap();
                    (c.clone(), m)
                })
                .collect(),
        }
    }
}

impl fmt::Display for LinearTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}·")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Address of one unit leaf in a stored relation list. `label` is one-indexed, the
/// `i` of `1_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitOccurrence {
    pub relation: usize,
    pub monomial: usize,
    pub layer: usize,
    pub slot: usize,
    pub label: usize,
}

/// Labels every unit leaf: relations in order, monomials in order, layers top to
/// bottom, slots left to right.
pub fn index_units(rels: &[LinearTerm]) -> Vec<UnitOccurrence> {
    let mut out = Vec::new();
    for (r, rel) in rels.iter().enumerate() {
        for (mi, (_, m)) in rel.terms.iter().enumerate() {
            for (j, layer) in m.layers.iter().enumerate() {
                for (s, f) in layer.factors.iter().enumerate() {
                    if f.is_unit() {
                        out.push(UnitOccurrence {
                            relation: r,
                            monomial: mi,
                            layer: j,
                            slot: s,
                            label: out.len() + 1,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Replacement instructions: individual unit occurrences (by label) and whole
/// generator symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    pub occurrences: BTreeMap<usize, Factor>,
    pub symbols: BTreeMap<String, Factor>,
}

impl Substitution {
    pub fn is_empty(&self) -> bool {
        self.occurrences.is_empty() && self.symbols.is_empty()
    }
}

/// Applies `sub` to a relation list whose unit occurrences are `units`
/// (normally `index_units(rels)`). Biarities are preserved; the result is normalized.
pub fn substitute(
    rels: &[LinearTerm],
    units: &[UnitOccurrence],
    sub: &Substitution,
    sig: &Signature,
) -> Result<Vec<LinearTerm>, TermError> {
    for target in sub.occurrences.values() {
        let b = target.biarity(sig)?;
        if b != (1, 1) {
            return Err(TermError::UnitReplacement(target.to_string(), b));
        }
    }
    for (name, target) in &sub.symbols {
        let from = sig.lookup(name)?.biarity();
        let to = target.biarity(sig)?;
        if from != to {
            return Err(TermError::SymbolReplacement(name.clone(), from, to));
        }
    }
    let by_address: BTreeMap<(usize, usize, usize, usize), usize> = units
        .iter()
        .map(|u| ((u.relation, u.monomial, u.layer, u.slot), u.label))
        .collect();
    let mut out = Vec::with_capacity(rels.len());
    for (r, rel) in rels.iter().enumerate() {
        let mut terms = Vec::with_capacity(rel.terms.len());
        for (mi, (c, m)) in rel.terms.iter().enumerate() {
            let m = m.map_factors::<TermError>(|j, s, f| {
                Ok(match f {
                    Factor::Unit => by_address
                        .get(&(r, mi, j, s))
                        .and_then(|label| sub.occurrences.get(label))
                        .cloned()
                        .unwrap_or(Factor::Unit),
                    Factor::Gen(g) => sub.symbols.get(g).cloned().unwrap_or_else(|| f.clone()),
                })
            })?;
            terms.push((c.clone(), m));
        }
        out.push(LinearTerm::new(terms).normalized());
    }
    Ok(out)
}
