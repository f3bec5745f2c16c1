//! Dense complex linear algebra kernel and toleranced operator predicates.
//!
//! Matrices are stored row-major in double precision. All predicates compare
//! entrywise against an absolute tolerance ([`Tolerance`], default `1e-9`);
//! the matrices handled here are small (at most 81×81), so absolute
//! max-modulus bounds compose cleanly across checks.

use crate::{Error, Result};

pub use num_complex::Complex64;

/// Shorthand for a complex scalar.
#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Shorthand for a real scalar as a complex number.
#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Absolute entrywise tolerance for all predicates, constrained to (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps > 0.0 && eps < 1.0 {
            Ok(Self { eps })
        } else {
            Err(Error::Domain(format!(
                "tolerance must lie strictly between 0 and 1, got {eps}"
            )))
        }
    }

    #[inline]
    pub fn eps(self) -> f64 {
        self.eps
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { eps: Self::DEFAULT_EPS }
    }
}

impl std::fmt::Display for Tolerance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.eps)
    }
}

/// Dense complex matrix, row-major.
///
/// Column vectors are n×1 matrices. Entries are expected to stay finite;
/// constructors that ingest external data check this.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![Complex64::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::ONE;
        }
        m
    }

    /// The computational basis column vector |k⟩ in dimension `n`.
    pub fn basis_vector(n: usize, k: usize) -> Self {
        assert!(k < n, "basis index {k} out of range for dimension {n}");
        let mut v = Self::zeros(n, 1);
        v.data[k] = Complex64::ONE;
        v
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    /// Build from nested row data, rejecting ragged or non-finite input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Shape("matrix must have at least one row and column".into()));
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for z in row {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::Shape(format!("non-finite entry in row {i}")));
                }
                data.push(*z);
            }
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    /// Column vector from a slice of entries.
    pub fn col_from_slice(entries: &[Complex64]) -> Self {
        assert!(!entries.is_empty());
        Self { rows: entries.len(), cols: 1, data: entries.to_vec() }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn is_col_vector(&self) -> bool {
        self.cols == 1
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.cols + j] = z;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|w| w * z).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Matrix product; panics on inner-dimension mismatch (internal callers
    /// guarantee shapes, external surfaces validate first).
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "inner dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise |self - other|; shapes must agree.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in diff");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise max deviation from the identity of the same size.
    pub fn max_abs_diff_identity(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
                worst = worst.max((self.get(i, j) - target).norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.max_abs_diff(other) <= eps
    }

    /// Hermitian inner product ⟨self|other⟩ = Σ conj(self)·other over entries.
    pub fn hermitian_inner(&self, other: &Self) -> Complex64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in inner");
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    /// Outer product |self⟩⟨other| of two column vectors.
    pub fn outer(&self, other: &Self) -> Self {
        assert!(self.is_col_vector() && other.is_col_vector(), "outer product needs column vectors");
        Self::from_fn(self.rows, other.rows, |i, j| self.data[i] * other.data[j].conj())
    }

    /// Kronecker product with index convention
    /// `(i·b.rows + k, j·b.cols + l) ↦ a[i,j]·b[k,l]`.
    pub fn kron(&self, b: &Self) -> Self {
        let mut out = Self::zeros(self.rows * b.rows, self.cols * b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == Complex64::ZERO {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        out.set(i * b.rows + k, j * b.cols + l, a * b.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Row-major stacking of the entries into a (rows·cols)×1 column.
    ///
    /// Fixed globally so that Gram-based and column-stacking-based
    /// orthogonality routes agree bit for bit:
    /// `trace_inner(a, b) == vectorize(a)·vectorize(b)` as Hermitian inner
    /// products.
    pub fn vectorize(&self) -> Self {
        Self { rows: self.rows * self.cols, cols: 1, data: self.data.clone() }
    }

    /// Partial trace over the tensor factors *not* listed in `keep`.
    ///
    /// `dims` are the factor dimensions (row-major index order, matching
    /// [`CMatrix::kron`]); their product must equal the matrix dimension.
    /// `keep` must be strictly increasing. Kept factors retain their relative
    /// order; keeping nothing returns the 1×1 total trace.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "partial trace needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Dimension("factor dimensions must be positive".into()));
        }
        let total: usize = dims.iter().product();
        if total != self.rows {
            return Err(Error::Dimension(format!(
                "factor dimensions {:?} multiply to {total}, matrix dimension is {}",
                dims, self.rows
            )));
        }
        if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&f| f >= dims.len()) {
            return Err(Error::Dimension(format!(
                "kept factors {:?} must be strictly increasing and < {}",
                keep,
                dims.len()
            )));
        }

        let traced: Vec<usize> = (0..dims.len()).filter(|f| !keep.contains(f)).collect();
        // Row-major strides of the factor multi-index.
        let mut stride = vec![1usize; dims.len()];
        for f in (0..dims.len().saturating_sub(1)).rev() {
            stride[f] = stride[f + 1] * dims[f + 1];
        }
        let kept_dim: usize = keep.iter().map(|&f| dims[f]).product::<usize>().max(1);
        let traced_dim: usize = traced.iter().map(|&f| dims[f]).product::<usize>().max(1);

        // Offset of a composite index within the full matrix.
        let offset = |composite: usize, factors: &[usize]| -> usize {
            let mut rem = composite;
            let mut off = 0;
            for &f in factors.iter().rev() {
                off += (rem % dims[f]) * stride[f];
                rem /= dims[f];
            }
            off
        };

        let mut out = Self::zeros(kept_dim, kept_dim);
        for r in 0..kept_dim {
            let r_off = offset(r, keep);
            for s in 0..kept_dim {
                let s_off = offset(s, keep);
                let mut acc = Complex64::ZERO;
                for t in 0..traced_dim {
                    let t_off = offset(t, &traced);
                    acc += self.get(r_off + t_off, s_off + t_off);
                }
                out.set(r, s, acc);
            }
        }
        Ok(out)
    }
}

/// Trace inner product Tr(a† ∘ b).
pub fn trace_inner(a: &CMatrix, b: &CMatrix) -> Result<Complex64> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(Error::Shape(format!(
            "trace inner product needs equal shapes, got {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(a.dagger().matmul(b).trace())
}

/// Operator classification against a tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorClassReport {
    /// m†m = I within tolerance.
    pub is_isometry: bool,
    /// Square isometry.
    pub is_unitary: bool,
    /// ‖m m† m − m‖_max within tolerance.
    pub is_partial_isometry: bool,
    /// Square, idempotent, and Hermitian within tolerance.
    pub is_projector: bool,
    /// round(Tr(m†m)) when m is a partial isometry; the trace then equals the
    /// rank.
    pub rank_estimate: Option<usize>,
    /// False when Tr(m†m) strays from the rounded rank by more than dim·eps.
    pub rank_consistent: bool,
}

/// Classify `m` as isometry / unitary / partial isometry / projector.
pub fn classify_operator(m: &CMatrix, tol: Tolerance) -> OperatorClassReport {
    let eps = tol.eps();
    let gram = m.dagger().matmul(m);
    let is_isometry = gram.max_abs_diff_identity() <= eps;
    let is_unitary = is_isometry && m.is_square();
    let is_partial_isometry = m.matmul(&m.dagger()).matmul(m).max_abs_diff(m) <= eps;
    let is_projector = m.is_square()
        && m.matmul(m).max_abs_diff(m) <= eps
        && m.dagger().max_abs_diff(m) <= eps;

    let (rank_estimate, rank_consistent) = if is_partial_isometry {
        let t = gram.trace().re;
        let r = t.round();
        let guard = (m.rows.max(m.cols) as f64) * eps;
        if (t - r).abs() <= guard && r >= 0.0 {
            (Some(r as usize), true)
        } else {
            (None, false)
        }
    } else {
        (None, true)
    };

    OperatorClassReport {
        is_isometry,
        is_unitary,
        is_partial_isometry,
        is_projector,
        rank_estimate,
        rank_consistent,
    }
}
