//! Free PROPs as isomorphism classes of decorated directed graphs.
//!
//! A graph has `m` input ports, `n` output ports and a list of vertices. Every vertex
//! input slot and every output port is fed by exactly one [`Source`]: a graph input or
//! an output slot of some vertex. Units and permutations leave no vertices.
//!
//! [`term_to_graph`] lists vertices top layer first, left to right, which is the order
//! in which a layered monomial tensors its decorations. Two isomorphic monomials
//! therefore agree up to the Koszul sign of the vertex bijection on odd decorations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::Rational;
use crate::perm::{GradedTuple, Permutation, Sign};
use crate::term::{Factor, LayeredMonomial, LinearTerm, Signature, TermError};

/// Largest vertex count accepted by the isomorphism search.
pub const MAX_ISO_VERTICES: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("cannot graft: upper graph has {upper_inputs} inputs, lower graph has {lower_outputs} outputs")]
    GraftMismatch {
        upper_inputs: usize,
        lower_outputs: usize,
    },

    #[error("graph has {0} vertices, isomorphism search is limited to {MAX_ISO_VERTICES}")]
    TooLarge(usize),

    #[error(transparent)]
    Term(#[from] TermError),
}

/// Where an edge starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Input(usize),
    Vertex(usize, usize),
}

/// Where an edge ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Output(usize),
    Vertex(usize, usize),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Input(i) => write!(f, "in{i}"),
            Source::Vertex(v, k) => write!(f, "v{v}.out{k}"),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Output(i) => write!(f, "out{i}"),
            Target::Vertex(v, k) => write!(f, "v{v}.in{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPorts {
    pub outputs: usize,
    /// The source feeding each input slot.
    pub inputs: Vec<Source>,
}

/// An acyclic directed `(n, m)`-graph with ordered ports.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedGraph {
    pub inputs: usize,
    pub vertices: Vec<VertexPorts>,
    /// The source feeding each output port.
    pub outputs: Vec<Source>,
}

impl DirectedGraph {
    /// `n` bare strands.
    pub fn exceptional(n: usize) -> Self {
        DirectedGraph {
            inputs: n,
            vertices: Vec::new(),
            outputs: (0..n).map(Source::Input).collect(),
        }
    }

    /// Bare strands with input `i` wired to output `p(i)`.
    pub fn permutation(p: &Permutation) -> Self {
        let mut outputs = vec![Source::Input(0); p.arity()];
        for i in 0..p.arity() {
            outputs[p.apply(i)] = Source::Input(i);
        }
        DirectedGraph {
            inputs: p.arity(),
            vertices: Vec::new(),
            outputs,
        }
    }

    /// `(outputs, inputs)`.
    pub fn biarity(&self) -> (usize, usize) {
        (self.outputs.len(), self.inputs)
    }

    /// Edges sorted by target.
    pub fn edges(&self) -> Vec<(Source, Target)> {
        let mut out: Vec<(Source, Target)> = Vec::new();
        for (v, vp) in self.vertices.iter().enumerate() {
            for (k, s) in vp.inputs.iter().enumerate() {
                out.push((*s, Target::Vertex(v, k)));
            }
        }
        for (i, s) in self.outputs.iter().enumerate() {
            out.push((*s, Target::Output(i)));
        }
        out.sort_by_key(|&(s, t)| (t, s));
        out
    }

    /// The target fed by each source.
    pub fn targets(&self) -> BTreeMap<Source, Target> {
        self.edges().into_iter().collect()
    }

    /// Every source feeds exactly one target.
    pub fn is_well_formed(&self) -> bool {
        let mut sources: BTreeSet<Source> = (0..self.inputs).map(Source::Input).collect();
        for (v, vp) in self.vertices.iter().enumerate() {
            sources.extend((0..vp.outputs).map(|k| Source::Vertex(v, k)));
        }
        let edges = self.edges();
        let used: BTreeSet<Source> = edges.iter().map(|&(s, _)| s).collect();
        used.len() == edges.len() && used == sources
    }

    pub fn is_acyclic(&self) -> bool {
        // 0 unvisited, 1 on stack, 2 done; edges point from a vertex to the vertices feeding it.
        fn visit(g: &DirectedGraph, v: usize, state: &mut [u8]) -> bool {
            match state[v] {
                1 => return false,
                2 => return true,
                _ => {}
            }
            state[v] = 1;
            for s in &g.vertices[v].inputs {
                if let Source::Vertex(u, _) = s {
                    if !visit(g, *u, state) {
                        return false;
                    }
                }
            }
            state[v] = 2;
            true
        }
        let mut state = vec![0u8; self.vertices.len()];
        (0..self.vertices.len()).all(|v| visit(self, v, &mut state))
    }

    fn shifted(&self, dv: usize, di: usize) -> Self {
        let shift = |s: &Source| match *s {
            Source::Input(i) => Source::Input(i + di),
            Source::Vertex(v, k) => Source::Vertex(v + dv, k),
        };
        DirectedGraph {
            inputs: self.inputs,
            vertices: self
                .vertices
                .iter()
                .map(|vp| VertexPorts {
                    outputs: vp.outputs,
                    inputs: vp.inputs.iter().map(shift).collect(),
                })
                .collect(),
            outputs: self.outputs.iter().map(shift).collect(),
        }
    }

    /// Juxtaposition: ports and vertices of `self` precede those of `other`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let b = other.shifted(self.vertices.len(), self.inputs);
        let mut vertices = self.vertices.clone();
        vertices.extend(b.vertices);
        let mut outputs = self.outputs.clone();
        outputs.extend(b.outputs);
        DirectedGraph {
            inputs: self.inputs + other.inputs,
            vertices,
            outputs,
        }
    }

    /// Output `i` of `lower` is fused with input `i` of `upper`. Vertices of `upper` come first.
    pub fn graft(&self, lower: &Self) -> Result<Self, GraphError> {
        if self.inputs != lower.outputs.len() {
            return Err(GraphError::GraftMismatch {
                upper_inputs: self.inputs,
                lower_outputs: lower.outputs.len(),
            });
        }
        let low = lower.shifted(self.vertices.len(), 0);
        let reroute = |s: &Source| match *s {
            Source::Input(i) => low.outputs[i],
            other => other,
        };
        let mut vertices: Vec<VertexPorts> = self
            .vertices
            .iter()
            .map(|vp| VertexPorts {
                outputs: vp.outputs,
                inputs: vp.inputs.iter().map(reroute).collect(),
            })
            .collect();
        vertices.extend(low.vertices.iter().cloned());
        let g = DirectedGraph {
            inputs: lower.inputs,
            vertices,
            outputs: self.outputs.iter().map(reroute).collect(),
        };
        debug_assert!(g.is_acyclic());
        Ok(g)
    }

    /// Number of connected components touching no port.
    pub fn closed_components(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut open = vec![false; n];
        for (v, vp) in self.vertices.iter().enumerate() {
            for s in &vp.inputs {
                match *s {
                    Source::Input(_) => open[v] = true,
                    Source::Vertex(u, _) => {
                        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                        parent[a] = b;
                    }
                }
            }
        }
        for s in &self.outputs {
            if let Source::Vertex(v, _) = *s {
                open[v] = true;
            }
        }
        let mut roots_open: BTreeMap<usize, bool> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            *roots_open.entry(r).or_insert(false) |= open[v];
        }
        roots_open.values().filter(|&&o| !o).count()
    }
}

/// The generator decorating a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decoration {
    pub name: String,
    pub degree: i64,
}

/// A directed graph with a generator on every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedGraph {
    pub graph: DirectedGraph,
    pub decorations: Vec<Decoration>,
}

impl DecoratedGraph {
    pub fn exceptional(n: usize) -> Self {
        DecoratedGraph {
            graph: DirectedGraph::exceptional(n),
            decorations: Vec::new(),
        }
    }

    pub fn permutation(p: &Permutation) -> Self {
        DecoratedGraph {
            graph: DirectedGraph::permutation(p),
            decorations: Vec::new(),
        }
    }

    /// One vertex with `inputs` inputs and `outputs` outputs, wired to the ports in order.
    pub fn corolla(name: &str, outputs: usize, inputs: usize, degree: i64) -> Self {
        DecoratedGraph {
            graph: DirectedGraph {
                inputs,
                vertices: vec![VertexPorts {
                    outputs,
                    inputs: (0..inputs).map(Source::Input).collect(),
                }],
                outputs: (0..outputs).map(|k| Source::Vertex(0, k)).collect(),
            },
            decorations: vec![Decoration {
                name: name.to_string(),
                degree,
            }],
        }
    }

    pub fn corolla_of(g: &crate::term::GeneratorSymbol) -> Self {
        DecoratedGraph::corolla(&g.name, g.outputs, g.inputs, g.degree)
    }

    pub fn biarity(&self) -> (usize, usize) {
        self.graph.biarity()
    }

    pub fn vertex_count(&self) -> usize {
        self.decorations.len()
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut decorations = self.decorations.clone();
        decorations.extend(other.decorations.iter().cloned());
        DecoratedGraph {
            graph: self.graph.disjoint_union(&other.graph),
            decorations,
        }
    }

    pub fn graft(&self, lower: &Self) -> Result<Self, GraphError> {
        let mut decorations = self.decorations.clone();
        decorations.extend(lower.decorations.iter().cloned());
        Ok(DecoratedGraph {
            graph: self.graph.graft(&lower.graph)?,
            decorations,
        })
    }

    fn has_odd_decoration(&self) -> bool {
        self.decorations.iter().any(|d| d.degree % 2 != 0)
    }

    /// Deterministic text listing for golden files.
    pub fn dump(&self) -> String {
        let (n, m) = self.biarity();
        let mut s = format!("graph ({n},{m}) vertices={}\n", self.vertex_count());
        let targets = self.graph.targets();
        for (v, (vp, d)) in self.graph.vertices.iter().zip(&self.decorations).enumerate() {
            let ins: Vec<String> = vp.inputs.iter().map(|x| x.to_string()).collect();
            let outs: Vec<String> = (0..vp.outputs)
                .map(|k| targets[&Source::Vertex(v, k)].to_string())
                .collect();
            s.push_str(&format!(
                "v{v} {} deg={} in=[{}] out=[{}]\n",
                d.name,
                d.degree,
                ins.join(","),
                outs.join(",")
            ));
        }
        for (i, src) in self.graph.outputs.iter().enumerate() {
            s.push_str(&format!("out{i} <- {src}\n"));
        }
        s
    }
}

/// Lowers a layered monomial: corollas for generators, bare strands for units,
/// juxtaposition within a layer, grafting down the layers.
pub fn term_to_graph(m: &LayeredMonomial, sig: &Signature) -> Result<DecoratedGraph, GraphError> {
    m.biarity(sig)?;
    let mut g = DecoratedGraph::permutation(&m.sigma0);
    for layer in &m.layers {
        let mut row = DecoratedGraph::exceptional(0);
        for f in &layer.factors {
            let piece = match f {
                Factor::Unit => DecoratedGraph::exceptional(1),
                Factor::Gen(name) => DecoratedGraph::corolla_of(sig.lookup(name)?),
            };
            row = row.disjoint_union(&piece);
        }
        g = g.graft(&row)?.graft(&DecoratedGraph::permutation(&layer.sigma))?;
    }
    Ok(g)
}

/// A decoration- and port-preserving bijection `a → b`, with the Koszul sign of the
/// induced reordering of odd-degree vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertex_map: Vec<usize>,
    pub sign: Sign,
}

struct Search<'a> {
    a: &'a DecoratedGraph,
    b: &'a DecoratedGraph,
    ta: BTreeMap<Source, Target>,
    tb: BTreeMap<Source, Target>,
    limit: usize,
    found: Vec<Vec<usize>>,
}

#[derive(Clone)]
struct Partial {
    map: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn compatible(&self, v: usize, w: usize) -> bool {
        self.a.decorations[v] == self.b.decorations[w]
            && self.a.graph.vertices[v].outputs == self.b.graph.vertices[w].outputs
            && self.a.graph.vertices[v].inputs.len() == self.b.graph.vertices[w].inputs.len()
    }

    fn bind(&self, p: &mut Partial, v: usize, w: usize, queue: &mut Vec<usize>) -> bool {
        match p.map[v] {
            Some(x) => x == w,
            None => {
                if p.used[w] || !self.compatible(v, w) {
                    return false;
                }
                p.map[v] = Some(w);
                p.used[w] = true;
                queue.push(v);
                true
            }
        }
    }

    fn match_source(&self, p: &mut Partial, sa: Source, sb: Source, q: &mut Vec<usize>) -> bool {
        match (sa, sb) {
            (Source::Input(i), Source::Input(j)) => i == j,
            (Source::Vertex(u, k), Source::Vertex(w, l)) => k == l && self.bind(p, u, w, q),
            _ => false,
        }
    }

    fn match_target(&self, p: &mut Partial, ta: Target, tb: Target, q: &mut Vec<usize>) -> bool {
        match (ta, tb) {
            (Target::Output(i), Target::Output(j)) => i == j,
            (Target::Vertex(u, k), Target::Vertex(w, l)) => k == l && self.bind(p, u, w, q),
            _ => false,
        }
    }

    /// Follows every edge out of newly bound vertices until nothing new is forced.
    fn propagate(&self, p: &mut Partial, mut queue: Vec<usize>) -> bool {
        while let Some(v) = queue.pop() {
            let w = p.map[v].expect("queued vertices are bound");
            let (va, vb) = (&self.a.graph.vertices[v], &self.b.graph.vertices[w]);
            for (&sa, &sb) in va.inputs.iter().zip(&vb.inputs) {
                if !self.match_source(p, sa, sb, &mut queue) {
                    return false;
                }
            }
            for k in 0..va.outputs {
                let ta = self.ta[&Source::Vertex(v, k)];
                let tb = self.tb[&Source::Vertex(w, k)];
                if !self.match_target(p, ta, tb, &mut queue) {
                    return false;
                }
            }
        }
        true
    }

    fn seed(&self, p: &mut Partial) -> bool {
        let mut queue = Vec::new();
        for (&sa, &sb) in self.a.graph.outputs.iter().zip(&self.b.graph.outputs) {
            if !self.match_source(p, sa, sb, &mut queue) {
                return false;
            }
        }
        for i in 0..self.a.graph.inputs {
            let ta = self.ta[&Source::Input(i)];
            let tb = self.tb[&Source::Input(i)];
            if !self.match_target(p, ta, tb, &mut queue) {
                return false;
            }
        }
        self.propagate(p, queue)
    }

    fn extend(&mut self, p: Partial) {
        if self.found.len() >= self.limit {
            return;
        }
        let Some(v) = p.map.iter().position(Option::is_none) else {
            self.found.push(p.map.iter().map(|x| x.unwrap()).collect());
            return;
        };
        for w in 0..self.b.vertex_count() {
            if p.used[w] || !self.compatible(v, w) {
                continue;
            }
            let mut next = p.clone();
            let mut queue = Vec::new();
            if self.bind(&mut next, v, w, &mut queue) && self.propagate(&mut next, queue) {
                self.extend(next);
            }
        }
    }
}

fn search(a: &DecoratedGraph, b: &DecoratedGraph, limit: usize) -> Result<Vec<Vec<usize>>, GraphError> {
    for g in [a, b] {
        if g.vertex_count() > MAX_ISO_VERTICES {
            return Err(GraphError::TooLarge(g.vertex_count()));
        }
    }
    if a.biarity() != b.biarity() || a.vertex_count() != b.vertex_count() {
        return Ok(Vec::new());
    }
    let mut da = a.decorations.clone();
    let mut db = b.decorations.clone();
    da.sort();
    db.sort();
    if da != db {
        return Ok(Vec::new());
    }
    let mut s = Search {
        a,
        b,
        ta: a.graph.targets(),
        tb: b.graph.targets(),
        limit,
        found: Vec::new(),
    };
    let n = a.vertex_count();
    let mut p = Partial {
        map: vec![None; n],
        used: vec![false; n],
    };
    if s.seed(&mut p) {
        s.extend(p);
    }
    Ok(s.found)
}

fn iso_sign(a: &DecoratedGraph, map: &[usize]) -> Sign {
    let perm = Permutation::new(map.to_vec()).expect("vertex map is a bijection");
    let degs = GradedTuple(a.decorations.iter().map(|d| d.degree).collect());
    perm.koszul_sign(&degs).expect("arity matches")
}

/// A decoration- and label-preserving isomorphism, if any.
pub fn isomorphic(a: &DecoratedGraph, b: &DecoratedGraph) -> Result<Option<Isomorphism>, GraphError> {
    Ok(search(a, b, 1)?.into_iter().next().map(|vertex_map| Isomorphism {
        sign: iso_sign(a, &vertex_map),
        vertex_map,
    }))
}

/// Automorphisms of `g`, at most `limit` of them.
pub fn automorphisms(g: &DecoratedGraph, limit: usize) -> Result<Vec<Isomorphism>, GraphError> {
    Ok(search(g, g, limit)?
        .into_iter()
        .map(|vertex_map| Isomorphism {
            sign: iso_sign(g, &vertex_map),
            vertex_map,
        })
        .collect())
}

/// True when a nontrivial automorphism meets odd-degree decorations: the coinvariant
/// identification may then carry a sign this module does not model.
pub fn sign_hazard(g: &DecoratedGraph) -> Result<bool, GraphError> {
    if !g.has_odd_decoration() || g.graph.closed_components() == 0 {
        // Port-connected graphs have only the trivial automorphism.
        return Ok(false);
    }
    Ok(automorphisms(g, 2)?.len() > 1)
}

/// A linear combination of isomorphism classes of decorated graphs.
#[derive(Clone, Debug, Default)]
pub struct GraphSum {
    classes: Vec<(Rational, DecoratedGraph)>,
    hazard: bool,
}

impl GraphSum {
    pub fn from_linear(lt: &LinearTerm, sig: &Signature) -> Result<Self, GraphError> {
        let mut sum = GraphSum::default();
        for (c, m) in &lt.terms {
            let g = term_to_graph(m, sig)?;
            if sign_hazard(&g)? {
                log::warn!("odd decorations under a nontrivial automorphism in {m}");
                sum.hazard = true;
            }
            sum.add(c.clone(), g)?;
        }
        sum.classes.retain(|(c, _)| !c.is_zero());
        Ok(sum)
    }

    fn add(&mut self, c: Rational, g: DecoratedGraph) -> Result<(), GraphError> {
        for (acc, rep) in &mut self.classes {
            if let Some(iso) = isomorphic(&g, rep)? {
                *acc += c * Rational::from_integer(iso.sign.to_i64().into());
                return Ok(());
            }
        }
        self.classes.push((c, g));
        Ok(())
    }

    pub fn classes(&self) -> &[(Rational, DecoratedGraph)] {
        &self.classes
    }

    pub fn is_zero(&self) -> bool {
        self.classes.is_empty()
    }

    /// Whether some class carried an unmodelled automorphism sign.
    pub fn hazard(&self) -> bool {
        self.hazard
    }

    /// `Some(c)` with `self = c · other`, `c ≠ 0`.
    pub fn ratio_to(&self, other: &GraphSum) -> Result<Option<Rational>, GraphError> {
        if self.classes.len() != other.classes.len() || self.is_zero() {
            return Ok(None);
        }
        let mut ratio: Option<Rational> = None;
        for (c, g) in &self.classes {
            let mut matched = None;
            for (d, h) in &other.classes {
                if let Some(iso) = isomorphic(g, h)? {
                    matched = Some(c * Rational::from_integer(iso.sign.to_i64().into()) / d);
                    break;
                }
            }
            let Some(r) = matched else { return Ok(None) };
            match &ratio {
                Some(prev) if *prev != r => return Ok(None),
                _ => ratio = Some(r),
            }
        }
        Ok(ratio)
    }

    pub fn equals(&self, other: &GraphSum) -> Result<bool, GraphError> {
        if self.is_zero() || other.is_zero() {
            return Ok(self.is_zero() && other.is_zero());
        }
        Ok(self.ratio_to(other)?.is_some_and(|r| r.is_one()))
    }
}

/// Equality of two linear terms in the free PROP.
pub fn graph_equal(a: &LinearTerm, b: &LinearTerm, sig: &Signature) -> Result<bool, GraphError> {
    GraphSum::from_linear(a, sig)?.equals(&GraphSum::from_linear(b, sig)?)
}

/// Whether `a` is a nonzero multiple of `b` in the free PROP.
pub fn graph_proportional(a: &LinearTerm, b: &LinearTerm, sig: &Signature) -> Result<bool, GraphError> {
    Ok(GraphSum::from_linear(a, sig)?
        .ratio_to(&GraphSum::from_linear(b, sig)?)?
        .is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;
    use crate::term::{layerize, GeneratorSymbol, Term};

    fn sig() -> Signature {
        Signature::new(vec![
            GeneratorSymbol::new("mu", 1, 2),
            GeneratorSymbol::new("delta", 2, 1),
            GeneratorSymbol::new("alpha", 1, 1),
            GeneratorSymbol::graded("d", 1, 1, 1),
        ])
        .unwrap()
    }

    fn graph(t: &Term) -> DecoratedGraph {
        let (_, m) = layerize(t, &sig()).unwrap();
        term_to_graph(&m, &sig()).unwrap()
    }

    fn mu() -> Term {
        Term::gen("mu")
    }

    #[test]
    fn corollas() {
        let g = DecoratedGraph::corolla("mu", 1, 2, 0);
        assert_eq!(g.biarity(), (1, 2));
        assert_eq!(g.vertex_count(), 1);
        assert!(g.graph.is_well_formed());
        assert_eq!(DecoratedGraph::corolla("alpha", 1, 1, 0).biarity(), (1, 1));
        assert_eq!(DecoratedGraph::corolla("delta", 2, 1, 0).biarity(), (2, 1));
    }

    #[test]
    fn unions_and_grafts() {
        let m = DecoratedGraph::corolla("mu", 1, 2, 0);
        assert_eq!(DecoratedGraph::exceptional(0).disjoint_union(&m), m);
        let mm = m.disjoint_union(&m);
        assert_eq!((mm.biarity(), mm.vertex_count()), ((2, 4), 2));
        let sm = DecoratedGraph::exceptional(1).disjoint_union(&m);
        assert_eq!((sm.biarity(), sm.vertex_count()), ((2, 3), 1));

        assert_eq!(DecoratedGraph::exceptional(1).graft(&m).unwrap(), m);
        assert_eq!(m.graft(&DecoratedGraph::exceptional(2)).unwrap(), m);

        let right = m.graft(&sm).unwrap();
        assert!(right.graph.is_acyclic() && right.graph.is_well_formed());
        assert!(
            isomorphic(&right, &graph(&Term::vcomp(mu(), Term::tensor(Term::Unit, mu()))))
                .unwrap()
                .is_some()
        );
        assert!(matches!(
            m.graft(&m),
            Err(GraphError::GraftMismatch {
                upper_inputs: 2,
                lower_outputs: 1
            })
        ));
    }

    #[test]
    fn associativity_trees_differ() {
        let left = graph(&Term::vcomp(mu(), Term::tensor(mu(), Term::Unit)));
        let right = graph(&Term::vcomp(mu(), Term::tensor(Term::Unit, mu())));
        assert_eq!(left.vertex_count(), 2);
        assert!(isomorphic(&left, &right).unwrap().is_none());
        let iso = isomorphic(&left, &left).unwrap().unwrap();
        assert_eq!(iso.vertex_map, vec![0, 1]);
        assert_eq!(iso.sign, Sign::Plus);
    }

    #[test]
    fn different_vertex_orders_are_isomorphic() {
        let m = DecoratedGraph::corolla("mu", 1, 2, 0);
        let strand = DecoratedGraph::exceptional(1);
        // Build μ∘(1⊗μ) with the lower vertex listed first.
        let lower_first = {
            let low = strand.disjoint_union(&m);
            let mut g = m.graft(&low).unwrap();
            g.graph.vertices.swap(0, 1);
            g.decorations.swap(0, 1);
            let swap = |s: &mut Source| {
                if let Source::Vertex(v, k) = *s {
                    *s = Source::Vertex(1 - v, k);
                }
            };
            for vp in &mut g.graph.vertices {
                vp.inputs.iter_mut().for_each(swap);
            }
            g.graph.outputs.iter_mut().for_each(swap);
            g
        };
        let canonical = graph(&Term::vcomp(mu(), Term::tensor(Term::Unit, mu())));
        let iso = isomorphic(&lower_first, &canonical).unwrap().unwrap();
        assert_eq!(iso.vertex_map, vec![1, 0]);
    }

    #[test]
    fn permutation_graphs() {
        let p = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        let g = DecoratedGraph::permutation(&p);
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(
            g.graph.outputs,
            vec![Source::Input(2), Source::Input(0), Source::Input(1)]
        );
        let q = Permutation::from_one_based(&[3, 1, 2]).unwrap();
        assert!(isomorphic(&g, &DecoratedGraph::permutation(&q))
            .unwrap()
            .is_none());
    }

    #[test]
    fn bialgebra_compatibility_monomial() {
        let t = Term::vcomp_all([
            Term::tensor(mu(), mu()),
            Term::Perm(Permutation::transposition(4, 1, 2)),
            Term::tensor(Term::gen("delta"), Term::gen("delta")),
        ]);
        let g = graph(&t);
        assert_eq!((g.biarity(), g.vertex_count()), ((2, 2), 4));
        // The crossing: the second output of the left Δ feeds the first input of the right μ.
        assert_eq!(g.graph.vertices[1].inputs[0], Source::Vertex(2, 1));
        assert_eq!(g.graph.vertices[0].inputs[1], Source::Vertex(3, 0));
    }

    #[test]
    fn interchange_gives_isomorphic_graphs() {
        let a = Term::gen("alpha");
        let lhs = Term::tensor(
            Term::vcomp(a.clone(), a.clone()),
            Term::vcomp(mu(), Term::tensor(a.clone(), a.clone())),
        );
        let rhs = Term::vcomp(
            Term::tensor(a.clone(), mu()),
            Term::tensor_all([a.clone(), a.clone(), a.clone()]),
        );
        assert!(isomorphic(&graph(&lhs), &graph(&rhs)).unwrap().is_some());
    }

    #[test]
    fn odd_vertices_reorder_with_sign() {
        // d ⊗ d written in the two layer orders.
        let d = Term::gen("d");
        let upper_left = Term::vcomp(
            Term::tensor(d.clone(), Term::Unit),
            Term::tensor(Term::Unit, d.clone()),
        );
        let upper_right = Term::vcomp(
            Term::tensor(Term::Unit, d.clone()),
            Term::tensor(d.clone(), Term::Unit),
        );
        let iso = isomorphic(&graph(&upper_left), &graph(&upper_right))
            .unwrap()
            .unwrap();
        assert_eq!(iso.sign, Sign::Minus);
    }

    #[test]
    fn graph_sums() {
        let s = sig();
        let assoc = |c: i64| {
            LinearTerm::from_terms(
                [
                    (rational(c), Term::vcomp(mu(), Term::tensor(mu(), Term::Unit))),
                    (rational(-c), Term::vcomp(mu(), Term::tensor(Term::Unit, mu()))),
                ],
                &s,
            )
            .unwrap()
        };
        assert!(graph_equal(&assoc(1), &assoc(1), &s).unwrap());
        assert!(!graph_equal(&assoc(1), &assoc(-1), &s).unwrap());
        assert!(graph_proportional(&assoc(1), &assoc(-3), &s).unwrap());
        let zero = LinearTerm::from_terms(
            [
                (
                    rational(1),
                    Term::vcomp(mu(), Term::tensor(Term::Unit, Term::Unit)),
                ),
                (rational(-1), mu()),
            ],
            &s,
        )
        .unwrap();
        assert!(GraphSum::from_linear(&zero, &s).unwrap().is_zero());
    }

    #[test]
    fn size_limit() {
        let a = DecoratedGraph::corolla("alpha", 1, 1, 0);
        let mut g = a.clone();
        for _ in 0..MAX_ISO_VERTICES {
            g = g.graft(&a).unwrap();
        }
        assert!(matches!(isomorphic(&g, &g), Err(GraphError::TooLarge(13))));
    }

    #[test]
    fn closed_components_and_hazard() {
        let point = DecoratedGraph::corolla("c", 0, 0, 1);
        let two = point.disjoint_union(&point);
        assert_eq!(two.graph.closed_components(), 2);
        assert!(sign_hazard(&two).unwrap());
        assert!(!sign_hazard(&graph(&mu())).unwrap());
    }

    #[test]
    fn dump_is_stable() {
        let g = graph(&Term::vcomp(mu(), Term::tensor(Term::Unit, mu())));
        assert_eq!(
            g.dump(),
            "graph (1,3) vertices=2\n\
             v0 mu deg=0 in=[in0,v1.out0] out=[out0]\n\
             v1 mu deg=0 in=[in1,in2] out=[v0.in1]\n\
             out0 <- v0.out0\n"
        );
    }
}
