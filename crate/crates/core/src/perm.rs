//! Symmetric-group elements and the sign bookkeeping shared by every other module.
//!
//! A [`Permutation`] is stored in one-line image notation, zero-indexed: `images[i]` is
//! the position that slot `i` is moved to. Composition applies the right operand first,
//! so `p.compose(&q)` sends `i` to `p(q(i))`. Acting on a tensor `v_1 ⊗ ... ⊗ v_n`, the
//! permutation places `v_i` in position `p(i)`; with this convention the action is a
//! homomorphism for [`Permutation::compose`].
//!
//! Files use one-indexed image arrays such as `[2,1,3]`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image list {0:?} is not a bijection on 1..={1}")]
    NotBijection(Vec<usize>, usize),

    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    #[error("block index {i} out of range 1..={n}")]
    BlockOutOfRange { n: usize, i: usize },

    #[error("block permutation needs n >= 2, got {0}")]
    BlockArity(usize),
}

/// A sign `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// `(-1)^e`, for any integer exponent.
    pub fn pow_minus_one(e: i64) -> Self {
        Sign::from_parity(e.rem_euclid(2) == 1)
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != rhs.is_minus())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// Degrees of the tensor slots a permutation acts on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedTuple(pub Vec<i64>);

impl GradedTuple {
    pub fn zeros(n: usize) -> Self {
        GradedTuple(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<i64>> for GradedTuple {
    fn from(v: Vec<i64>) -> Self {
        GradedTuple(v)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from zero-indexed images.
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(PermError::NotBijection(images.iter().map(|i| i + 1).collect(), n));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from one-indexed images, the file convention.
    pub fn from_one_based(images: &[usize]) -> Result<Self, PermError> {
        if images.contains(&0) {
            return Err(PermError::NotBijection(images.to_vec(), images.len()));
        }
        Permutation::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Swaps zero-indexed slots `a` and `b` of an `n`-slot tensor.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// The cycle sending each listed (zero-indexed) slot to the next one.
    pub fn cycle(n: usize, cycle: &[usize]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        for (k, &c) in cycle.iter().enumerate() {
            if c >= n {
                return Err(PermError::NotBijection(cycle.to_vec(), n));
            }
            images[c] = cycle[(k + 1) % cycle.len()];
        }
        Permutation::new(images)
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Self, PermError> {
        if self.arity() != other.arity() {
            return Err(PermError::ArityMismatch(self.arity(), other.arity()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        })
    }

    /// Block sum: `self` on the first slots, `other` shifted onto the rest.
    pub fn block_sum(&self, other: &Permutation) -> Self {
        let shift = self.arity();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&j| j + shift));
        Permutation { images }
    }

    pub fn inversions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.arity();
        (0..n).flat_map(move |i| {
            ((i + 1)..n)
                .filter(move |&j| self.images[i] > self.images[j])
                .map(move |j| (i, j))
        })
    }

    pub fn sign(&self) -> Sign {
        Sign::from_parity(self.inversions().count() % 2 == 1)
    }

    /// Koszul sign of moving graded slots: the product over inverted slot pairs
    /// `(a, b)` of `(-1)^(deg_a * deg_b)`.
    pub fn koszul_sign(&self, degs: &GradedTuple) -> Result<Sign, PermError> {
        if degs.len() != self.arity() {
            return Err(PermError::ArityMismatch(self.arity(), degs.len()));
        }
        let odd = self
            .inversions()
            .filter(|&(a, b)| degs.0[a] * degs.0[b] % 2 != 0)
            .count();
        Ok(Sign::from_parity(odd % 2 == 1))
    }

    /// `χ = sign · koszul`, the combined sign used for graded antisymmetry.
    pub fn chi(&self, degs: &GradedTuple) -> Result<Sign, PermError> {
        Ok(self.sign() * self.koszul_sign(degs)?)
    }

    /// Degrees after the action: the degree of slot `i` lands in position `self(i)`.
    pub fn permute_degrees(&self, degs: &GradedTuple) -> Result<GradedTuple, PermError> {
        if degs.len() != self.arity() {
            return Err(PermError::ArityMismatch(self.arity(), degs.len()));
        }
        let mut out = vec![0; degs.len()];
        for (i, &d) in degs.0.iter().enumerate() {
            out[self.images[i]] = d;
        }
        Ok(GradedTuple(out))
    }

    /// Every element of `Σ_n`, lexicographic in the image list.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation {
                    images: current.clone(),
                });
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    rec(n, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.to_one_based())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_one_based())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

/// The block move `σ_i ∈ Σ_{2n-1}` sending `(x_1..x_{n-1}, y_1..y_n)` to
/// `(y_1..y_{i-1}, x_1..x_{n-1}, y_i..y_n)`. `i` is one-indexed.
pub fn block_permutation(n: usize, i: usize) -> Result<Permutation, PermError> {
    if n < 2 {
        return Err(PermError::BlockArity(n));
    }
    if i == 0 || i > n {
        return Err(PermError::BlockOutOfRange { n, i });
    }
    let mut images = Vec::with_capacity(2 * n - 1);
    // x_a sits in slot a-1 and moves to position (i-1) + (a-1).
    for a in 0..(n - 1) {
        images.push(i - 1 + a);
    }
    // y_b sits in slot n-1+(b-1).
    for b in 1..=n {
        if b < i {
            images.push(b - 1);
        } else {
            images.push(n - 1 + b - 1);
        }
    }
    Permutation::new(images)
}

/// All `(i, j)`-unshuffles: permutations `σ` of `i + j` letters with
/// `σ(1) < ... < σ(i)` and `σ(i+1) < ... < σ(i+j)`, in lexicographic order of the
/// first block. There are `binomial(i + j, i)` of them.
pub fn unshuffles(i: usize, j: usize) -> Vec<Permutation> {
    let n = i + j;
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(i);
    fn rec(start: usize, n: usize, i: usize, chosen: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if chosen.len() == i {
            let mut images = chosen.clone();
            images.extend((0..n).filter(|v| !chosen.contains(v)));
            out.push(Permutation { images });
            return;
        }
        for v in start..n {
            chosen.push(v);
            rec(v + 1, n, i, chosen, out);
            chosen.pop();
        }
    }
    rec(0, n, i, &mut chosen, &mut out);
    out
}
