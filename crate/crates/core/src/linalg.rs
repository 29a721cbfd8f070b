//! Exact rational, ℤ-graded, finite-dimensional linear algebra: the endomorphism PROP.
//!
//! Conventions, fixed once:
//! - basis of a graded space: degrees ascending, then index within the degree;
//! - basis of a tensor product: lexicographic, leftmost factor most significant;
//! - matrices: rows index the target basis, columns the source basis;
//! - Koszul rule `(f ⊗ g)(x ⊗ y) = (-1)^{|g||x|} f(x) ⊗ g(y)`, applied in [`LinearMap::tensor`]
//!   and [`perm_action`] only. Composition is sign-free.
//!
//! With these signs the interchange law reads
//! `(a ⊗ b) ∘ (c ⊗ d) = (-1)^{|b||c|} (a ∘ c) ⊗ (b ∘ d)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{GradedTuple, Permutation, Sign};

pub type Rational = BigRational;

/// Maximum number of tensor factors on either side of a map.
pub const MAX_TENSOR_WIDTH: usize = 8;
/// Maximum number of matrix entries of a single dense map.
pub const MAX_ENTRIES: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("entry ({row},{col}) = {value} violates homogeneous degree {degree}: target degree {target_degree}, source degree {source_degree}")]
    NotHomogeneous {
        row: usize,
        col: usize,
        value: String,
        degree: i64,
        target_degree: i64,
        source_degree: i64,
    },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("tensor width {0} exceeds the limit of {MAX_TENSOR_WIDTH} factors")]
    TooWide(usize),

    #[error("dense map would have {0} entries, above the limit of {MAX_ENTRIES}")]
    TooLarge(usize),

    #[error("cannot parse rational `{0}`")]
    Parse(String),
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| LinalgError::Parse(s.to_string()))
}

/// `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::ShapeMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rational(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|c| c.to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `(row, col, value)` of the first entry of largest magnitude, if any is nonzero.
    pub fn max_entry(&self) -> Option<(usize, usize, Rational)> {
        let mut best: Option<(usize, usize, Rational)> = None;
        for (k, v) in self.data.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if best.as_ref().map_or(true, |(_, _, b)| v.abs() > b.abs()) {
                best = Some((k / self.cols, k % self.cols, v.clone()));
            }
        }
        best
    }

    fn nonzeros_by_row(&self) -> Vec<Vec<(usize, &Rational)>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .filter_map(|c| {
                        let v = self.get(r, c);
                        (!v.is_zero()).then_some((c, v))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let rhs = other.nonzeros_by_row();
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for &(c, b) in &rhs[k] {
                    let slot = &mut out.data[r * other.cols + c];
                    *slot += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Plain Kronecker product, no signs.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if !b.is_zero() {
                            out.set(r1 * other.rows + r2, c1 * other.cols + c2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    fn row_echelon(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let pivot = m.get(row, col).clone();
            for r in (row + 1)..m.rows {
                let factor = m.get(r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(row, c) * &factor;
                    let slot = &mut m.data[r * m.cols + c];
                    *slot -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().1.len()
    }

    pub fn trace(&self) -> Result<Rational, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        Ok((0..self.rows).map(|i| self.get(i, i).clone()).sum())
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(LinalgError::Singular)?;
            if p != col {
                for c in 0..n {
                    a.data.swap(p * n + c, col * n + c);
                    inv.data.swap(p * n + c, col * n + c);
                }
            }
            let pivot = a.get(col, col).clone();
            for c in 0..n {
                let v = a.get(col, c) / &pivot;
                a.set(col, c, v);
                let w = inv.get(col, c) / &pivot;
                inv.set(col, c, w);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = a.get(col, c) * &factor;
                    a.data[r * n + c] -= v;
                    let w = inv.get(col, c) * &factor;
                    inv.data[r * n + c] -= w;
                }
            }
        }
        Ok(inv)
    }

    pub fn pow(&self, e: u32) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A finite-dimensional ℤ-graded vector space, `dims[d]` = dimension in degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedSpace {
    dims: BTreeMap<i64, usize>,
}

impl GradedSpace {
    pub fn new(dims: BTreeMap<i64, usize>) -> Self {
        GradedSpace {
            dims: dims.into_iter().filter(|&(_, d)| d > 0).collect(),
        }
    }

    pub fn from_pairs(pairs: &[(i64, usize)]) -> Self {
        let mut dims = BTreeMap::new();
        for &(deg, d) in pairs {
            *dims.entry(deg).or_insert(0) += d;
        }
        GradedSpace::new(dims)
    }

    /// Concentrated in degree 0.
    pub fn ungraded(dim: usize) -> Self {
        GradedSpace::from_pairs(&[(0, dim)])
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn basis_degrees(&self) -> Vec<i64> {
        self.dims
            .iter()
            .flat_map(|(&deg, &d)| std::iter::repeat(deg).take(d))
            .collect()
    }

    pub fn is_ungraded(&self) -> bool {
        self.dims.keys().all(|&d| d == 0)
    }

    pub fn power(&self, n: usize) -> TensorSpace {
        TensorSpace::new(vec![self.clone(); n])
    }
}

/// `V_1 ⊗ ... ⊗ V_n`; the empty product is the ground field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorSpace {
    factors: Vec<GradedSpace>,
}

impl TensorSpace {
    pub fn new(factors: Vec<GradedSpace>) -> Self {
        TensorSpace { factors }
    }

    pub fn factors(&self) -> &[GradedSpace] {
        &self.factors
    }

    pub fn width(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(GradedSpace::dim).product()
    }

    pub fn concat(&self, other: &TensorSpace) -> TensorSpace {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        TensorSpace { factors }
    }

    /// Per-factor basis indices of flat basis element `idx`.
    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (k, f) in self.factors.iter().enumerate().rev() {
            let d = f.dim();
            out[k] = idx % d;
            idx /= d;
        }
        out
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        self.factors
            .iter()
            .zip(digits)
            .fold(0, |acc, (f, &i)| acc * f.dim() + i)
    }

    /// Total degree of every flat basis element.
    pub fn basis_degrees(&self) -> Vec<i64> {
        let per: Vec<Vec<i64>> = self.factors.iter().map(GradedSpace::basis_degrees).collect();
        (0..self.dim())
            .map(|idx| self.decode(idx).iter().enumerate().map(|(k, &i)| per[k][i]).sum())
            .collect()
    }

    fn check_width(&self) -> Result<(), LinalgError> {
        if self.width() > MAX_TENSOR_WIDTH {
            return Err(LinalgError::TooWide(self.width()));
        }
        Ok(())
    }
}

/// A homogeneous linear map between tensor spaces: an element of the endomorphism PROP.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    source: TensorSpace,
    target: TensorSpace,
    degree: i64,
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(
        source: TensorSpace,
        target: TensorSpace,
        degree: i64,
        matrix: Matrix,
    ) -> Result<Self, LinalgError> {
        source.check_width()?;
        target.check_width()?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(LinalgError::ShapeMismatch(format!(
                "matrix is {}x{}, spaces need {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let sdeg = source.basis_degrees();
        let tdeg = target.basis_degrees();
        for r in 0..matrix.rows() {
            for c in 0..matrix.cols() {
                let v = matrix.get(r, c);
                if !v.is_zero() && tdeg[r] != sdeg[c] + degree {
                    return Err(LinalgError::NotHomogeneous {
                        row: r,
                        col: c,
                        value: v.to_string(),
                        degree,
                        target_degree: tdeg[r],
                        source_degree: sdeg[c],
                    });
                }
            }
        }
        Ok(LinearMap {
            source,
            target,
            degree,
            matrix,
        })
    }

    /// A map `V^{⊗inputs} → V^{⊗outputs}`.
    pub fn on_space(
        space: &GradedSpace,
        outputs: usize,
        inputs: usize,
        degree: i64,
        matrix: Matrix,
    ) -> Result<Self, LinalgError> {
        LinearMap::new(space.power(inputs), space.power(outputs), degree, matrix)
    }

    /// A degree-zero map `V → V`.
    pub fn endo(space: &GradedSpace, matrix: Matrix) -> Result<Self, LinalgError> {
        LinearMap::on_space(space, 1, 1, 0, matrix)
    }

    pub fn identity(space: TensorSpace) -> Self {
        let n = space.dim();
        LinearMap {
            source: space.clone(),
            target: space,
            degree: 0,
            matrix: Matrix::identity(n),
        }
    }

    pub fn zero(source: TensorSpace, target: TensorSpace, degree: i64) -> Self {
        let matrix = Matrix::zeros(target.dim(), source.dim());
        LinearMap {
            source,
            target,
            degree,
            matrix,
        }
    }

    pub fn source(&self) -> &TensorSpace {
        &self.source
    }

    pub fn target(&self) -> &TensorSpace {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap, LinalgError> {
        if self.source != other.target {
            return Err(LinalgError::ShapeMismatch(format!(
                "cannot compose: source has {} factors of dim {}, target has {} factors of dim {}",
                self.source.width(),
                self.source.dim(),
                other.target.width(),
                other.target.dim()
            )));
        }
        Ok(LinearMap {
            source: other.source.clone(),
            target: self.target.clone(),
            degree: self.degree + other.degree,
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    /// Koszul-signed tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &LinearMap) -> Result<LinearMap, LinalgError> {
        let source = self.source.concat(&other.source);
        let target = self.target.concat(&other.target);
        source.check_width()?;
        target.check_width()?;
        let entries = source.dim() * target.dim();
        if entries > MAX_ENTRIES {
            return Err(LinalgError::TooLarge(entries));
        }
        let mut matrix = self.matrix.kron(&other.matrix);
        if other.degree % 2 != 0 {
            let sdeg = self.source.basis_degrees();
            let inner = other.source.dim();
            for c in 0..matrix.cols() {
                if sdeg[c / inner] % 2 != 0 {
                    for r in 0..matrix.rows() {
                        let v = matrix.get(r, c);
                        if !v.is_zero() {
                            let neg = -v.clone();
                            matrix.set(r, c, neg);
                        }
                    }
                }
            }
        }
        Ok(LinearMap {
            source,
            target,
            degree: self.degree + other.degree,
            matrix,
        })
    }

    /// `self^{⊗n}`; `n = 0` gives the identity of the ground field.
    pub fn tensor_power(&self, n: usize) -> Result<LinearMap, LinalgError> {
        let mut acc = LinearMap::identity(TensorSpace::new(vec![]));
        for _ in 0..n {
            acc = acc.tensor(self)?;
        }
        Ok(acc)
    }

    /// Iterated composition of an endomorphism.
    pub fn pow(&self, e: u32) -> Result<LinearMap, LinalgError> {
        if self.source != self.target {
            return Err(LinalgError::NotSquare(self.target.dim(), self.source.dim()));
        }
        let mut acc = LinearMap::identity(self.source.clone());
        for _ in 0..e {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap, LinalgError> {
        self.same_shape(other)?;
        Ok(LinearMap {
            matrix: self.matrix.add(&other.matrix)?,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap, LinalgError> {
        self.same_shape(other)?;
        Ok(LinearMap {
            matrix: self.matrix.sub(&other.matrix)?,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Rational) -> LinearMap {
        LinearMap {
            matrix: self.matrix.scale(c),
            ..self.clone()
        }
    }

    fn same_shape(&self, other: &LinearMap) -> Result<(), LinalgError> {
        if self.source != other.source || self.target != other.target {
            return Err(LinalgError::ShapeMismatch(
                "sum of maps between different spaces".into(),
            ));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(LinalgError::ShapeMismatch(format!(
                "sum of maps of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn inverse(&self) -> Result<LinearMap, LinalgError> {
        Ok(LinearMap {
            source: self.target.clone(),
            target: self.source.clone(),
            degree: -self.degree,
            matrix: self.matrix.inverse()?,
        })
    }

    pub fn char_poly(&self) -> Result<Polynomial, LinalgError> {
        char_poly(&self.matrix)
    }
}

/// The signed permutation of tensor factors: slot `i` moves to position `p(i)`,
/// with the Koszul sign of the crossing slots.
pub fn perm_action(p: &Permutation, space: &GradedSpace) -> Result<LinearMap, LinalgError> {
    perm_action_on(p, &space.power(p.arity()))
}

/// [`perm_action`] on a product of possibly different spaces.
pub fn perm_action_on(p: &Permutation, source: &TensorSpace) -> Result<LinearMap, LinalgError> {
    if p.arity() != source.width() {
        return Err(LinalgError::ShapeMismatch(format!(
            "permutation of {} letters on {} tensor factors",
            p.arity(),
            source.width()
        )));
    }
    source.check_width()?;
    let n = p.arity();
    let mut tfactors = source.factors().to_vec();
    for (i, f) in source.factors().iter().enumerate() {
        tfactors[p.apply(i)] = f.clone();
    }
    let target = TensorSpace::new(tfactors);
    let per: Vec<Vec<i64>> = source.factors().iter().map(GradedSpace::basis_degrees).collect();
    let dim = source.dim();
    let mut matrix = Matrix::zeros(dim, dim);
    for col in 0..dim {
        let digits = source.decode(col);
        let degs = GradedTuple((0..n).map(|k| per[k][digits[k]]).collect());
        let sign = p.koszul_sign(&degs).expect("arity checked");
        let mut moved = vec![0; n];
        for (i, &d) in digits.iter().enumerate() {
            moved[p.apply(i)] = d;
        }
        let row = target.encode(&moved);
        matrix.set(row, col, rational(sign.to_i64()));
    }
    Ok(LinearMap {
        source: source.clone(),
        target,
        degree: 0,
        matrix,
    })
}

/// Sign of the graded interchange law for maps of degrees `|b|` and `|c|`.
pub fn interchange_sign(b_degree: i64, c_degree: i64) -> Sign {
    Sign::from_parity(b_degree * c_degree % 2 != 0)
}

/// Polynomial with coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial(pub Vec<Rational>);

impl Polynomial {
    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// `Π (t - r_i)`.
    pub fn from_roots(roots: &[Rational]) -> Self {
        let mut coeffs = vec![Rational::one()];
        for r in roots {
            let mut next = vec![Rational::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        Polynomial(coeffs)
    }

    pub fn eval_matrix(&self, a: &Matrix) -> Result<Matrix, LinalgError> {
        let mut acc = Matrix::zeros(a.rows(), a.cols());
        for c in self.0.iter().rev() {
            acc = acc.mul(a)?.add(&Matrix::identity(a.rows()).scale(c))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let coef = if c.is_one() && k > 0 {
                String::new()
            } else if *c == -Rational::one() && k > 0 {
                "-".to_string()
            } else if k > 0 {
                format!("{c}·")
            } else {
                c.to_string()
            };
            parts.push(format!("{coef}{mono}"));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// Characteristic polynomial `det(t·I - A)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &Matrix) -> Result<Polynomial, LinalgError> {
    if a.rows() != a.cols() {
        return Err(LinalgError::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m)?.add(&Matrix::identity(n).scale(&coeffs[n + 1 - k]))?;
        let am = a.mul(&m)?;
        coeffs[n - k] = -am.trace()? / rational(k as i64);
    }
    Ok(Polynomial(coeffs))
}
