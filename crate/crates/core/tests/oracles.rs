//! Corpus algebras checked elementwise by hand-written identities, independently of relation
//! evaluation, and corrupted structures that relation evaluation must reject.

mod common;

use homprop::algebra::{check_algebra, StructureMap};
use homprop::builtins::builtin;
use homprop::linalg::{rational, GradedSpace, LinearMap, Rational};

use common::*;

type Vector = Vec<Rational>;

fn basis(d: usize, i: usize) -> Vector {
    (0..d).map(|k| rational((k == i) as i64)).collect()
}

fn add(a: &Vector, b: &Vector) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(c: i64, a: &Vector) -> Vector {
    a.iter().map(|x| x * rational(c)).collect()
}

fn apply1(f: &LinearMap, v: &Vector) -> Vector {
    let m = f.matrix();
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c) * &v[c]).sum())
        .collect()
}

/// Bilinear extension of a binary map, with no signs: the value on `x ⊗ y` by definition.
fn apply2(f: &LinearMap, x: &Vector, y: &Vector) -> Vector {
    let d = x.len();
    let m = f.matrix();
    let mut out = vec![rational(0); m.rows()];
    for i in 0..d {
        for j in 0..d {
            let c = &x[i] * &y[j];
            if c == rational(0) {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                *o += m.get(r, i * d + j) * &c;
            }
        }
    }
    out
}

fn zero(d: usize) -> Vector {
    vec![rational(0); d]
}

fn passes(lambda: &StructureMap, name: &str) -> bool {
    check_algebra(lambda, &builtin(name, 0).unwrap().presentation)
        .unwrap()
        .all_passed()
}

#[test]
fn associative_corpus_is_associative() {
    for lambda in [dual_numbers(), c2_bialgebra()] {
        let mu = lambda.get("mu").unwrap();
        let d = lambda.space().dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (basis(d, i), basis(d, j), basis(d, k));
                    assert_eq!(
                        apply2(mu, &apply2(mu, &x, &y), &z),
                        apply2(mu, &x, &apply2(mu, &y, &z))
                    );
                }
            }
        }
    }
    assert!(!passes(&dual_numbers_corrupted(), "as"));
}

#[test]
fn lie_corpus_satisfies_jacobi() {
    for lambda in [sl2(), affine_lie()] {
        let br = lambda.get("mu").unwrap();
        let d = lambda.space().dim();
        for i in 0..d {
            for j in 0..d {
                let (x, y) = (basis(d, i), basis(d, j));
                assert_eq!(apply2(br, &x, &y), scale(-1, &apply2(br, &y, &x)));
                for k in 0..d {
                    let z = basis(d, k);
                    let s = add(
                        &add(
                            &apply2(br, &x, &apply2(br, &y, &z)),
                            &apply2(br, &y, &apply2(br, &z, &x)),
                        ),
                        &apply2(br, &z, &apply2(br, &x, &y)),
                    );
                    assert_eq!(s, zero(d));
                }
            }
        }
    }
    assert!(passes(&sl2(), "lie"));
    assert!(passes(&affine_lie(), "nambu:2"));
}

#[test]
fn sl2_automorphisms() {
    let lambda = sl2();
    let br = lambda.get("mu").unwrap();
    for f in [sl2_beta(), sl2_gamma()] {
        for i in 0..3 {
            for j in 0..3 {
                let (x, y) = (basis(3, i), basis(3, j));
                assert_eq!(
                    apply1(&f, &apply2(br, &x, &y)),
                    apply2(br, &apply1(&f, &x), &apply1(&f, &y))
                );
            }
        }
    }
}

#[test]
fn c2_is_a_bialgebra() {
    let lambda = c2_bialgebra();
    let (mu, delta) = (lambda.get("mu").unwrap(), lambda.get("delta").unwrap());
    // group-like basis: Δ(g) = g ⊗ g, so Δ(gh) = Δ(g)Δ(h) reduces to closure of the basis
    for i in 0..2 {
        let g = basis(2, i);
        let dg = apply1(delta, &g);
        assert_eq!(dg, basis(4, 3 * i));
        for j in 0..2 {
            let h = basis(2, j);
            let gh = apply2(mu, &g, &h);
            let k = gh.iter().position(|c| c == &rational(1)).unwrap();
            assert_eq!(apply1(delta, &gh), basis(4, 3 * k));
        }
    }
    assert!(passes(&lambda, "bialgebra"));
}

#[test]
fn flip_solves_ybe() {
    // the flip acts on basis triples by permuting indices; both sides reverse (i, j, k)
    let b = |t: [usize; 3], pos: usize| {
        let mut t = t;
        t.swap(pos, pos + 1);
        t
    };
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let t = [i, j, k];
                assert_eq!(b(b(b(t, 1), 0), 1), b(b(b(t, 0), 1), 0));
            }
        }
    }
    assert!(passes(&flip(), "ybe"));
}

fn space_degrees(v: &GradedSpace) -> Vec<i64> {
    v.basis_degrees()
}

#[test]
fn truncated_dga_is_a_dga() {
    let lambda = truncated_dga();
    let (d, mu) = (lambda.get("mu1").unwrap(), lambda.get("mu2").unwrap());
    let deg = space_degrees(lambda.space());
    let n = deg.len();
    for i in 0..n {
        let x = basis(n, i);
        assert_eq!(apply1(d, &apply1(d, &x)), zero(n));
        for j in 0..n {
            let y = basis(n, j);
            let lhs = apply1(d, &apply2(mu, &x, &y));
            let sign = if deg[i].rem_euclid(2) == 1 { -1 } else { 1 };
            let rhs = add(
                &apply2(mu, &apply1(d, &x), &y),
                &scale(sign, &apply2(mu, &x, &apply1(d, &y))),
            );
            assert_eq!(lhs, rhs, "Leibniz on ({i}, {j})");
            for k in 0..n {
                let z = basis(n, k);
                assert_eq!(
                    apply2(mu, &apply2(mu, &x, &y), &z),
                    apply2(mu, &x, &apply2(mu, &y, &z))
                );
            }
        }
    }
    assert!(passes(&lambda, "ainf:3"));

    // d(te) = e is not a derivation
    let mut bad = lambda.clone();
    let v = lambda.space().clone();
    bad.insert(
        "mu1",
        unary(&v, 1, |i| match i {
            0 | 1 => vec![(3, q(1))],
            _ => vec![],
        }),
    );
    assert!(!passes(&bad, "ainf:3"));
}

#[test]
fn truncated_dgla_is_a_dgla() {
    let lambda = truncated_dgla();
    let (d, br) = (lambda.get("mu1").unwrap(), lambda.get("mu2").unwrap());
    let deg = space_degrees(lambda.space());
    let n = deg.len();
    let odd = |i: usize| deg[i].rem_euclid(2) == 1;
    for i in 0..n {
        let x = basis(n, i);
        assert_eq!(apply1(d, &apply1(d, &x)), zero(n));
        for j in 0..n {
            let y = basis(n, j);
            let s = if odd(i) && odd(j) { 1 } else { -1 };
            assert_eq!(apply2(br, &x, &y), scale(s, &apply2(br, &y, &x)));
            let sx = if odd(i) { -1 } else { 1 };
            assert_eq!(
                apply1(d, &apply2(br, &x, &y)),
                add(
                    &apply2(br, &apply1(d, &x), &y),
                    &scale(sx, &apply2(br, &x, &apply1(d, &y)))
                )
            );
        }
    }
    assert!(passes(&lambda, "linf:3"));
}

#[test]
fn graded_oracles_reject_wrong_signs() {
    // (−1)^{|x|} x·y is not associative on odd elements
    let good = graded_matrices_ainf(4);
    let v = good.space().clone();
    let deg = space_degrees(&v);
    let mu = good.get("mu2").unwrap();
    let twisted = binary(&v, 0, |i, j| {
        let s = if deg[i].rem_euclid(2) == 1 { -1 } else { 1 };
        apply2(mu, &basis(4, i), &basis(4, j))
            .into_iter()
            .enumerate()
            .filter(|(_, c)| c != &rational(0))
            .map(|(k, c)| (k, c * rational(s)))
            .collect()
    });
    let mut bad = good.clone();
    bad.insert("mu2", twisted);
    assert!(passes(&good, "ainf:4"));
    assert!(!passes(&bad, "ainf:4"));

    // the ungraded commutator on gl(1|1) is not graded antisymmetric
    let (_, units, _) = graded_matrix_space();
    let prod = |i: usize, j: usize| -> Option<usize> {
        let (a, b) = units[i];
        let (c, d) = units[j];
        (b == c).then(|| units.iter().position(|&u| u == (a, d)).unwrap())
    };
    let ungraded = binary(&v, 0, |i, j| {
        let mut out = Vec::new();
        if let Some(k) = prod(i, j) {
            out.push((k, q(1)));
        }
        if let Some(k) = prod(j, i) {
            out.push((k, q(-1)));
        }
        out
    });
    let mut bad = gl11_linf(4);
    bad.insert("mu2", ungraded);
    assert!(passes(&gl11_linf(4), "linf:4"));
    assert!(!passes(&bad, "linf:4"));
}
