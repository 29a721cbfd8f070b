//! Small algebras used across the integration tests.
#![allow(dead_code)]

use homprop::algebra::StructureMap;
use homprop::linalg::{ratio, rational, GradedSpace, LinearMap, Matrix, Rational};

pub fn q(n: i64) -> Rational {
    rational(n)
}

/// A binary operation from its values on basis pairs.
pub fn binary(
    space: &GradedSpace,
    degree: i64,
    f: impl Fn(usize, usize) -> Vec<(usize, Rational)>,
) -> LinearMap {
    let d = space.dim();
    let mut m = Matrix::zeros(d, d * d);
    for i in 0..d {
        for j in 0..d {
            for (k, c) in f(i, j) {
                m.set(k, i * d + j, m.get(k, i * d + j).clone() + c);
            }
        }
    }
    LinearMap::on_space(space, 1, 2, degree, m).unwrap()
}

/// A cobinary operation `V → V⊗V` from its values on basis vectors.
pub fn cobinary(space: &GradedSpace, f: impl Fn(usize) -> Vec<(usize, usize, Rational)>) -> LinearMap {
    let d = space.dim();
    let mut m = Matrix::zeros(d * d, d);
    for i in 0..d {
        for (a, b, c) in f(i) {
            m.set(a * d + b, i, c);
        }
    }
    LinearMap::on_space(space, 2, 1, 0, m).unwrap()
}

pub fn unary(space: &GradedSpace, degree: i64, f: impl Fn(usize) -> Vec<(usize, Rational)>) -> LinearMap {
    let d = space.dim();
    let mut m = Matrix::zeros(d, d);
    for i in 0..d {
        for (k, c) in f(i) {
            m.set(k, i, c);
        }
    }
    LinearMap::on_space(space, 1, 1, degree, m).unwrap()
}

pub fn endo(space: &GradedSpace, rows: &[&[i64]]) -> LinearMap {
    LinearMap::endo(space, Matrix::from_i64(rows)).unwrap()
}

pub fn diag(space: &GradedSpace, entries: &[Rational]) -> LinearMap {
    LinearMap::endo(space, Matrix::diagonal(entries)).unwrap()
}

/// A corpus entry: an algebra over a builtin and non-identity endomorphisms of it.
pub struct Example {
    pub name: &'static str,
    pub builtin: &'static str,
    pub algebra: StructureMap,
    pub betas: Vec<LinearMap>,
}

/// `k[x]/(x²)` on the basis `(e, x)`.
pub fn dual_numbers() -> StructureMap {
    let v = GradedSpace::ungraded(2);
    let mu = binary(&v, 0, |i, j| match (i, j) {
        (0, 0) => vec![(0, q(1))],
        (0, 1) | (1, 0) => vec![(1, q(1))],
        _ => vec![],
    });
    StructureMap::new(v).with("mu", mu)
}

/// Dual numbers with `x·e` corrupted to `e`.
pub fn dual_numbers_corrupted() -> StructureMap {
    let v = GradedSpace::ungraded(2);
    let mu = binary(&v, 0, |i, j| match (i, j) {
        (0, 0) | (1, 0) => vec![(0, q(1))],
        (0, 1) => vec![(1, q(1))],
        _ => vec![],
    });
    StructureMap::new(v).with("mu", mu)
}

pub fn dual_beta() -> LinearMap {
    diag(&GradedSpace::ungraded(2), &[q(1), q(2)])
}

/// sl₂ on the basis `(h, e, f)`.
pub fn sl2() -> StructureMap {
    let v = GradedSpace::ungraded(3);
    let mu = binary(&v, 0, |i, j| match (i, j) {
        (0, 1) => vec![(1, q(2))],
        (1, 0) => vec![(1, q(-2))],
        (0, 2) => vec![(2, q(-2))],
        (2, 0) => vec![(2, q(2))],
        (1, 2) => vec![(0, q(1))],
        (2, 1) => vec![(0, q(-1))],
        _ => vec![],
    });
    StructureMap::new(v).with("mu", mu)
}

pub fn sl2_beta() -> LinearMap {
    diag(&GradedSpace::ungraded(3), &[q(1), q(2), ratio(1, 2)])
}

/// `e ↔ f`, `h ↦ −h`.
pub fn sl2_gamma() -> LinearMap {
    endo(&GradedSpace::ungraded(3), &[&[-1, 0, 0], &[0, 0, 1], &[0, 1, 0]])
}

/// The 2-dimensional Lie algebra `[a, b] = b`.
pub fn affine_lie() -> StructureMap {
    let v = GradedSpace::ungraded(2);
    let mu = binary(&v, 0, |i, j| match (i, j) {
        (0, 1) => vec![(1, q(1))],
        (1, 0) => vec![(1, q(-1))],
        _ => vec![],
    });
    StructureMap::new(v).with("mu", mu)
}

/// The group bialgebra of C₂ on `(1, g)`, both basis vectors group-like.
pub fn c2_bialgebra() -> StructureMap {
    let v = GradedSpace::ungraded(2);
    let mu = binary(&v, 0, |i, j| vec![((i + j) % 2, q(1))]);
    let delta = cobinary(&v, |i| vec![(i, i, q(1))]);
    StructureMap::new(v).with("mu", mu).with("delta", delta)
}

/// The flip `x⊗y ↦ y⊗x` on a 2-dimensional space.
pub fn flip() -> StructureMap {
    let v = GradedSpace::ungraded(2);
    let d = 2;
    let mut m = Matrix::zeros(4, 4);
    for i in 0..d {
        for j in 0..d {
            m.set(j * d + i, i * d + j, q(1));
        }
    }
    StructureMap::new(v.clone()).with("B", LinearMap::on_space(&v, 2, 2, 0, m).unwrap())
}

/// `Λ(t) ⊗ k[e]/(e²)` with `|t| = −1`, `|e| = 0` and `dt = e`, on the basis `(t, te, 1, e)`.
pub fn truncated_dga() -> StructureMap {
    let v = GradedSpace::from_pairs(&[(-1, 2), (0, 2)]);
    // monomials t^a e^b as (a, b)
    let mono = [(1, 0), (1, 1), (0, 0), (0, 1)];
    let index = |a: usize, b: usize| mono.iter().position(|&m| m == (a, b));
    let mu = binary(&v, 0, |i, j| {
        let (a1, b1) = mono[i];
        let (a2, b2) = mono[j];
        match index(a1 + a2, b1 + b2) {
            Some(k) if a1 + a2 <= 1 && b1 + b2 <= 1 => vec![(k, q(1))],
            _ => vec![],
        }
    });
    let d = unary(&v, 1, |i| if i == 0 { vec![(3, q(1))] } else { vec![] });
    let m3 = LinearMap::zero(v.power(3), v.power(1), -1);
    StructureMap::new(v)
        .with("mu1", d)
        .with("mu2", mu)
        .with("mu3", m3)
}

pub fn truncated_dga_beta() -> LinearMap {
    let v = GradedSpace::from_pairs(&[(-1, 2), (0, 2)]);
    diag(&v, &[q(2), q(4), q(1), q(2)])
}

/// `[a, b] = b`, `[a, c] = c`, `db = c`, with `|a| = |b| = 0`, `|c| = 1`, on `(a, b, c)`.
pub fn truncated_dgla() -> StructureMap {
    let v = GradedSpace::from_pairs(&[(0, 2), (1, 1)]);
    let bracket = binary(&v, 0, |i, j| match (i, j) {
        (0, 1) => vec![(1, q(1))],
        (1, 0) => vec![(1, q(-1))],
        (0, 2) => vec![(2, q(1))],
        (2, 0) => vec![(2, q(-1))],
        _ => vec![],
    });
    let d = unary(&v, 1, |i| if i == 1 { vec![(2, q(1))] } else { vec![] });
    let l3 = LinearMap::zero(v.power(3), v.power(1), -1);
    StructureMap::new(v)
        .with("mu1", d)
        .with("mu2", bracket)
        .with("mu3", l3)
}

pub fn truncated_dgla_beta() -> LinearMap {
    let v = GradedSpace::from_pairs(&[(0, 2), (1, 1)]);
    diag(&v, &[q(1), q(2), q(2)])
}

/// `End(W)` for `W = k w₁ ⊕ k w₂` with `|w₁| = 0`, `|w₂| = 1`, on `(E12, E11, E22, E21)`.
pub fn graded_matrix_space() -> (GradedSpace, [(usize, usize); 4], [i64; 4]) {
    let v = GradedSpace::from_pairs(&[(-1, 1), (0, 2), (1, 1)]);
    let units = [(0, 1), (0, 0), (1, 1), (1, 0)];
    let degrees = [-1, 0, 0, 1];
    (v, units, degrees)
}

/// The graded matrix algebra as an A∞-algebra with only `m₂`, up to arity `n`.
pub fn graded_matrices_ainf(n: usize) -> StructureMap {
    let (v, units, _) = graded_matrix_space();
    let mu = binary(&v, 0, |i, j| {
        let (a, b) = units[i];
        let (c, d) = units[j];
        if b == c {
            vec![(units.iter().position(|&u| u == (a, d)).unwrap(), q(1))]
        } else {
            vec![]
        }
    });
    higher_zero(StructureMap::new(v).with("mu2", mu), n)
}

/// `gl(1|1)` with the graded commutator as an L∞-algebra with only `l₂`, up to arity `n`.
pub fn gl11_linf(n: usize) -> StructureMap {
    let (v, units, degrees) = graded_matrix_space();
    let prod = |i: usize, j: usize| -> Option<usize> {
        let (a, b) = units[i];
        let (c, d) = units[j];
        (b == c).then(|| units.iter().position(|&u| u == (a, d)).unwrap())
    };
    let bracket = binary(&v, 0, |i, j| {
        let mut out = Vec::new();
        if let Some(k) = prod(i, j) {
            out.push((k, q(1)));
        }
        if let Some(k) = prod(j, i) {
            let s = if (degrees[i] * degrees[j]).rem_euclid(2) == 1 {
                1
            } else {
                -1
            };
            out.push((k, q(s)));
        }
        out
    });
    higher_zero(StructureMap::new(v).with("mu2", bracket), n)
}

/// Sets `mu_k = 0` for every `k ≠ 2` up to `n`.
fn higher_zero(mut lambda: StructureMap, n: usize) -> StructureMap {
    let v = lambda.space().clone();
    for k in (1..=n).filter(|&k| k != 2) {
        lambda.insert(
            format!("mu{k}"),
            LinearMap::zero(v.power(k), v.power(1), 2 - k as i64),
        );
    }
    lambda
}

/// The seven corpus entries of the twisting checks.
pub fn corpus() -> Vec<Example> {
    let two = GradedSpace::ungraded(2);
    vec![
        Example {
            name: "dual numbers",
            builtin: "as",
            algebra: dual_numbers(),
            betas: vec![dual_beta(), diag(&two, &[q(1), q(-3)])],
        },
        Example {
            name: "sl2",
            builtin: "lie",
            algebra: sl2(),
            betas: vec![sl2_beta(), sl2_gamma()],
        },
        Example {
            name: "affine Lie algebra as 2-ary Nambu",
            builtin: "nambu:2",
            algebra: affine_lie(),
            betas: vec![diag(&two, &[q(1), q(3)])],
        },
        Example {
            name: "C2 group bialgebra",
            builtin: "bialgebra",
            algebra: c2_bialgebra(),
            betas: vec![endo(&two, &[&[1, 1], &[0, 0]]), endo(&two, &[&[1, 0], &[0, 1]])],
        },
        Example {
            name: "flip",
            builtin: "ybe",
            algebra: flip(),
            betas: vec![endo(&two, &[&[1, 1], &[0, 1]]), endo(&two, &[&[2, 1], &[3, 5]])],
        },
        Example {
            name: "truncated dga",
            builtin: "ainf:3",
            algebra: truncated_dga(),
            betas: vec![truncated_dga_beta()],
        },
        Example {
            name: "truncated dgla",
            builtin: "linf:3",
            algebra: truncated_dgla(),
            betas: vec![truncated_dgla_beta()],
        },
    ]
}
