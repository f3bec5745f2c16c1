//! Quantum Latin squares.
//!
//! A quantum Latin square of dimension `n` is an n×n array of unit vectors in
//! ℂⁿ whose every row and every column is an orthonormal basis. Classical
//! Latin squares are the special case where every entry is a computational
//! basis vector.
//!
//! Two squares `a`, `b` are orthogonal when the n² tensor products
//! `a_ij ⊗ b_ij` form an orthonormal basis of ℂⁿ⊗ℂⁿ. Four equivalent
//! formulations are implemented as separate checker methods so they can be
//! cross-checked against each other on every input; see [`check_orthogonal`].

use crate::linalg::{CMatrix, Complex64, Tolerance};
use crate::{Error, Result};

/// n×n array of n×1 unit vectors; rows and columns form orthonormal bases.
///
/// Construction checks shapes only; the numeric conditions are checked by
/// [`validate_qls`], which callers run on untrusted data.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumLatinSquare {
    n: usize,
    entries: Vec<Vec<CMatrix>>,
}

impl QuantumLatinSquare {
    pub fn from_entries(entries: Vec<Vec<CMatrix>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::Shape("a quantum Latin square needs at least one row".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                if v.rows() != n || v.cols() != 1 {
                    return Err(Error::Shape(format!(
                        "entry ({i},{j}) has shape {}x{}, expected {n}x1",
                        v.rows(),
                        v.cols()
                    )));
                }
            }
        }
        Ok(Self { n, entries })
    }

    /// Build from a classical symbol array: entry (i,j) becomes |L[i][j]⟩.
    pub fn from_classical(symbols: &[Vec<usize>]) -> Result<Self> {
        let n = symbols.len();
        let entries = symbols
            .iter()
            .map(|row| {
                if row.len() != n {
                    return Err(Error::Shape("classical square must be n×n".into()));
                }
                row.iter()
                    .map(|&s| {
                        if s >= n {
                            return Err(Error::Shape(format!("symbol {s} out of range for n={n}")));
                        }
                        Ok(CMatrix::basis_vector(n, s))
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<CMatrix>>>>()?;
        Self::from_entries(entries)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &CMatrix {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<CMatrix>] {
        &self.entries
    }

    /// Entrywise complex conjugate; the conjugate of a valid square is valid.
    pub fn conjugate(&self) -> Self {
        Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|v| v.conj()).collect())
                .collect(),
        }
    }
}

/// Worst Gram deviation from the identity for a family of column vectors.
fn gram_violation(vectors: &[&CMatrix]) -> f64 {
    let mut worst = 0.0f64;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate() {
            let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
            worst = worst.max((a.hermitian_inner(b) - target).norm());
        }
    }
    worst
}

/// Per-row and per-column Gram deviations of a quantum Latin square.
#[derive(Debug, Clone, PartialEq)]
pub struct QlsValidationReport {
    pub n: usize,
    pub row_violations: Vec<f64>,
    pub col_violations: Vec<f64>,
    pub worst: f64,
    pub pass: bool,
}

/// Check that every row and every column forms an orthonormal basis.
pub fn validate_qls(q: &QuantumLatinSquare, tol: Tolerance) -> QlsValidationReport {
    let n = q.n;
    let row_violations: Vec<f64> = (0..n)
        .map(|i| gram_violation(&(0..n).map(|j| q.entry(i, j)).collect::<Vec<_>>()))
        .collect();
    let col_violations: Vec<f64> = (0..n)
        .map(|j| gram_violation(&(0..n).map(|i| q.entry(i, j)).collect::<Vec<_>>()))
        .collect();
    let worst = row_violations
        .iter()
        .chain(col_violations.iter())
        .fold(0.0f64, |acc, &v| acc.max(v));
    QlsValidationReport { n, row_violations, col_violations, worst, pass: worst <= tol.eps() }
}

/// True when every entry is a computational basis vector up to a modulus-1
/// phase.
pub fn is_classical(q: &QuantumLatinSquare, tol: Tolerance) -> bool {
    let eps = tol.eps();
    q.entries.iter().flatten().all(|v| {
        let mut big = 0usize;
        for k in 0..v.rows() {
            let m = v.get(k, 0).norm();
            if (m - 1.0).abs() <= eps {
                big += 1;
            } else if m > eps {
                return false;
            }
        }
        big == 1
    })
}

/// A relabeling of a quantum Latin square: a global unitary, entrywise
/// phases, and a row and a column permutation.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceTransform {
    pub unitary: CMatrix,
    pub phases: Vec<Vec<Complex64>>,
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
}

fn is_permutation(perm: &[usize]) -> bool {
    let n = perm.len();
    let mut seen = vec![false; n];
    perm.iter().all(|&p| p < n && !std::mem::replace(&mut seen[p], true))
}

impl EquivalenceTransform {
    pub fn identity(n: usize) -> Self {
        Self {
            unitary: CMatrix::identity(n),
            phases: vec![vec![Complex64::ONE; n]; n],
            row_perm: (0..n).collect(),
            col_perm: (0..n).collect(),
        }
    }

    /// Check the transform invariants against dimension `n`.
    pub fn validate(&self, n: usize, tol: Tolerance) -> Result<()> {
        if self.unitary.rows() != n || self.unitary.cols() != n {
            return Err(Error::Dimension(format!(
                "transform unitary is {}x{}, square dimension is {n}",
                self.unitary.rows(),
                self.unitary.cols()
            )));
        }
        let report = crate::linalg::classify_operator(&self.unitary, tol);
        if !report.is_unitary {
            return Err(Error::Domain("transform operator is not unitary".into()));
        }
        if self.phases.len() != n || self.phases.iter().any(|row| row.len() != n) {
            return Err(Error::Shape("phase array must be n×n".into()));
        }
        for row in &self.phases {
            for p in row {
                if (p.norm() - 1.0).abs() > tol.eps() {
                    return Err(Error::Domain(format!("phase {p} does not have modulus 1")));
                }
            }
        }
        if self.row_perm.len() != n
            || self.col_perm.len() != n
            || !is_permutation(&self.row_perm)
            || !is_permutation(&self.col_perm)
        {
            return Err(Error::Shape("row and column permutations must be bijections of 0..n".into()));
        }
        Ok(())
    }
}

/// Apply an equivalence: entry (i,j) of the result is
/// `phases[i][j] · unitary · q[row_perm(i)][col_perm(j)]`.
pub fn apply_equivalence(q: &QuantumLatinSquare, t: &EquivalenceTransform) -> Result<QuantumLatinSquare> {
    let n = q.n;
    if t.unitary.rows() != n || t.unitary.cols() != n {
        return Err(Error::Dimension(format!(
            "transform unitary is {}x{}, square dimension is {n}",
            t.unitary.rows(),
            t.unitary.cols()
        )));
    }
    if t.phases.len() != n || t.row_perm.len() != n || t.col_perm.len() != n {
        return Err(Error::Dimension("transform data does not match square dimension".into()));
    }
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    t.unitary
                        .matmul(q.entry(t.row_perm[i], t.col_perm[j]))
                        .scale(t.phases[i][j])
                })
                .collect()
        })
        .collect();
    QuantumLatinSquare::from_entries(entries)
}

/// Return an equivalent square whose first row is the ordered computational
/// basis, along with the unitary that achieves it (the sum of
/// |i⟩⟨first-row entry i|).
pub fn canonicalize_first_row(q: &QuantumLatinSquare) -> (QuantumLatinSquare, CMatrix) {
    let n = q.n;
    // Row i of W is the dagger of first-row entry i.
    let w = CMatrix::from_fn(n, n, |i, k| q.entry(0, i).get(k, 0).conj());
    let mut t = EquivalenceTransform::identity(n);
    t.unitary = w.clone();
    let canonical = apply_equivalence(q, &t).expect("dimensions agree by construction");
    (canonical, w)
}

/// Which formulation of orthogonality to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Gram matrix of the n² tensor-product vectors.
    Basis,
    /// Sum of the n² rank-1 tensor projectors against the identity.
    ProjectorSum,
    /// Products of the small inner products against the identity Gram.
    Gram,
    /// The three partial-trace conditions over the tensor factors.
    Grmz,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Basis, Method::ProjectorSum, Method::Gram, Method::Grmz];

    pub fn name(self) -> &'static str {
        match self {
            Method::Basis => "basis",
            Method::ProjectorSum => "projector_sum",
            Method::Gram => "gram",
            Method::Grmz => "grmz",
        }
    }
}

/// Outcome of one orthogonality check.
///
/// The verdict agrees across methods; `max_violation` is on the scale of the
/// chosen formulation. `witness` is the worst Gram index tuple (i,j,p,q) for
/// the Gram-shaped methods.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityReport {
    pub method: Method,
    pub pass: bool,
    pub max_violation: f64,
    pub witness: Option<(usize, usize, usize, usize)>,
    /// Per-factor deviations for [`Method::Grmz`], in traced-factor order
    /// (first square, second square, index system).
    pub grmz_conditions: Option<[f64; 3]>,
}

/// Check orthogonality of two quantum Latin squares with the given method.
pub fn check_orthogonal(
    a: &QuantumLatinSquare,
    b: &QuantumLatinSquare,
    method: Method,
    tol: Tolerance,
) -> Result<OrthogonalityReport> {
    if a.n != b.n {
        return Err(Error::Dimension(format!(
            "squares have dimensions {} and {}",
            a.n, b.n
        )));
    }
    let n = a.n;
    let eps = tol.eps();

    let report = match method {
        Method::Basis => {
            let vectors: Vec<CMatrix> = iter_cells(n)
                .map(|(i, j)| a.entry(i, j).kron(b.entry(i, j)))
                .collect();
            let (max_violation, witness) =
                worst_gram_entry(n, |ij, pq| vectors[ij].hermitian_inner(&vectors[pq]));
            OrthogonalityReport {
                method,
                pass: max_violation <= eps,
                max_violation,
                witness: Some(witness),
                grmz_conditions: None,
            }
        }
        Method::Gram => {
            let (max_violation, witness) = worst_gram_entry(n, |ij, pq| {
                let (i, j) = (ij / n, ij % n);
                let (p, q) = (pq / n, pq % n);
                a.entry(i, j).hermitian_inner(a.entry(p, q))
                    * b.entry(i, j).hermitian_inner(b.entry(p, q))
            });
            OrthogonalityReport {
                method,
                pass: max_violation <= eps,
                max_violation,
                witness: Some(witness),
                grmz_conditions: None,
            }
        }
        Method::ProjectorSum => {
            let mut sum = CMatrix::zeros(n * n, n * n);
            for (i, j) in iter_cells(n) {
                let v = a.entry(i, j).kron(b.entry(i, j));
                sum = sum.add(&v.outer(&v));
            }
            let max_violation = sum.max_abs_diff_identity();
            OrthogonalityReport {
                method,
                pass: max_violation <= eps,
                max_violation,
                witness: None,
                grmz_conditions: None,
            }
        }
        Method::Grmz => {
            let conditions = grmz_pair_conditions(a, b);
            let max_violation = conditions.iter().fold(0.0f64, |acc, &v| acc.max(v));
            OrthogonalityReport {
                method,
                pass: max_violation <= eps,
                max_violation,
                witness: None,
                grmz_conditions: Some(conditions),
            }
        }
    };
    Ok(report)
}

fn iter_cells(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

/// Worst |G − I| entry over pairs of flattened cell indices, with the
/// lexicographically first (i,j,p,q) attaining it.
fn worst_gram_entry(
    n: usize,
    mut entry: impl FnMut(usize, usize) -> Complex64,
) -> (f64, (usize, usize, usize, usize)) {
    let cells = n * n;
    let mut worst = -1.0f64;
    let mut witness = (0, 0, 0, 0);
    for ij in 0..cells {
        for pq in 0..cells {
            let target = if ij == pq { Complex64::ONE } else { Complex64::ZERO };
            let dev = (entry(ij, pq) - target).norm();
            if dev > worst {
                worst = dev;
                witness = (ij / n, ij % n, pq / n, pq % n);
            }
        }
    }
    (worst.max(0.0), witness)
}

/// The three traced conditions of the partial-trace orthogonality
/// formulation, each as a deviation from the identity on ℂⁿ⊗ℂⁿ.
///
/// The underlying three-factor operator is
/// Σ_{i,p,j} |a_ij⟩⟨a_pj| ⊗ |b_ij⟩⟨b_pj| ⊗ |i⟩⟨p|. Tracing the third factor
/// yields the orthogonality condition proper; tracing either of the first two
/// yields conditions that hold for every pair of valid squares. Each trace is
/// evaluated in contracted form; an explicit kron-then-partial-trace oracle
/// cross-checks this in the integration tests.
fn grmz_pair_conditions(a: &QuantumLatinSquare, b: &QuantumLatinSquare) -> [f64; 3] {
    let n = a.n;
    let dim = n * n;

    // Inner-product tables within each column: inner[j][p][i] = ⟨x_pj|x_ij⟩.
    let col_inner = |x: &QuantumLatinSquare| -> Vec<Vec<Vec<Complex64>>> {
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|p| {
                        (0..n)
                            .map(|i| x.entry(p, j).hermitian_inner(x.entry(i, j)))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    };
    let a_inner = col_inner(a);
    let b_inner = col_inner(b);

    // Trace over the first-square factor: Σ ⟨a_pj|a_ij⟩ |b_ij⟩⟨b_pj| ⊗ |i⟩⟨p|,
    // and symmetrically for the second-square factor.
    let mut traced_a = CMatrix::zeros(dim, dim);
    let mut traced_b = CMatrix::zeros(dim, dim);
    for j in 0..n {
        for i in 0..n {
            for p in 0..n {
                let sa = a_inner[j][p][i];
                let sb = b_inner[j][p][i];
                for u in 0..n {
                    let bu = b.entry(i, j).get(u, 0);
                    let au = a.entry(i, j).get(u, 0);
                    for v in 0..n {
                        let term_a = sa * bu * b.entry(p, j).get(v, 0).conj();
                        let term_b = sb * au * a.entry(p, j).get(v, 0).conj();
                        let (r, c) = (u * n + i, v * n + p);
                        traced_a.set(r, c, traced_a.get(r, c) + term_a);
                        traced_b.set(r, c, traced_b.get(r, c) + term_b);
                    }
                }
            }
        }
    }

    // Trace over the index factor: Σ_ij |a_ij⟩⟨a_ij| ⊗ |b_ij⟩⟨b_ij|.
    let mut traced_c = CMatrix::zeros(dim, dim);
    for (i, j) in iter_cells(n) {
        let proj = a.entry(i, j).outer(a.entry(i, j)).kron(&b.entry(i, j).outer(b.entry(i, j)));
        traced_c = traced_c.add(&proj);
    }

    [
        traced_a.max_abs_diff_identity(),
        traced_b.max_abs_diff_identity(),
        traced_c.max_abs_diff_identity(),
    ]
}

/// How to check a family of squares for mutual orthogonality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyMode {
    /// All pairs pass [`check_orthogonal`].
    Pairwise,
    /// Every partial trace of the (m+2)-factor family operator equals the
    /// identity.
    Grmz,
}

impl FamilyMode {
    pub fn name(self) -> &'static str {
        match self {
            FamilyMode::Pairwise => "pairwise",
            FamilyMode::Grmz => "grmz",
        }
    }
}

/// Family verdict with per-check violations.
///
/// In `Pairwise` mode the index pairs are square indices. In `Grmz` mode they
/// are the two *kept* tensor-factor labels: 0..m are the squares, m and m+1
/// the two halves of the cell-index system. Worst violation wins; ties break
/// lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyReport {
    pub mode: FamilyMode,
    pub pass: bool,
    pub max_violation: f64,
    pub worst_index: Option<(usize, usize)>,
    pub violations: Vec<((usize, usize), f64)>,
}

/// Check a family of quantum Latin squares for mutual orthogonality.
pub fn check_mutually_orthogonal(
    family: &[QuantumLatinSquare],
    mode: FamilyMode,
    tol: Tolerance,
) -> Result<FamilyReport> {
    if family.len() < 2 {
        return Err(Error::Usage(format!(
            "a family needs at least 2 squares, got {}",
            family.len()
        )));
    }
    let n = family[0].n;
    if family.iter().any(|q| q.n != n) {
        return Err(Error::Dimension("family members have mixed dimensions".into()));
    }
    let m = family.len();

    let violations: Vec<((usize, usize), f64)> = match mode {
        FamilyMode::Pairwise => {
            let mut out = Vec::new();
            for k in 0..m {
                for l in (k + 1)..m {
                    let report = check_orthogonal(&family[k], &family[l], Method::Gram, tol)?;
                    out.push(((k, l), report.max_violation));
                }
            }
            out
        }
        FamilyMode::Grmz => {
            let mut out = Vec::new();
            for u in 0..(m + 2) {
                for v in (u + 1)..(m + 2) {
                    out.push(((u, v), grmz_family_condition(family, u, v)));
                }
            }
            out
        }
    };

    let mut max_violation = 0.0f64;
    let mut worst_index = None;
    for &(idx, v) in &violations {
        if v > max_violation {
            max_violation = v;
            worst_index = Some(idx);
        }
    }
    Ok(FamilyReport {
        mode,
        pass: max_violation <= tol.eps(),
        max_violation,
        worst_index,
        violations,
    })
}

/// One traced condition of the family orthogonality equation: all factors
/// except the kept labels `u < v` are traced out and the result is compared
/// to the identity on ℂⁿ⊗ℂⁿ.
///
/// The family operator is Σ_{i,j,p,q} (⊗_k |Φᵏ_ij⟩⟨Φᵏ_pq|) ⊗ |ij⟩⟨pq| over
/// labels A_0..A_{m-1}, α, β; a traced square factor contributes the scalar
/// ⟨Φᵏ_pq|Φᵏ_ij⟩ and a traced index factor a Kronecker delta.
#[allow(clippy::needless_range_loop)]
fn grmz_family_condition(family: &[QuantumLatinSquare], u: usize, v: usize) -> f64 {
    let m = family.len();
    let n = family[0].n;
    let dim = n * n;
    let alpha = m;
    let beta = m + 1;

    // inner[k][ij][pq] = ⟨Φᵏ_pq|Φᵏ_ij⟩, the trace of |Φᵏ_ij⟩⟨Φᵏ_pq|.
    let inner: Vec<Vec<Vec<Complex64>>> = family
        .iter()
        .map(|sq| {
            (0..dim)
                .map(|ij| {
                    (0..dim)
                        .map(|pq| {
                            sq.entry(pq / n, pq % n).hermitian_inner(sq.entry(ij / n, ij % n))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let basis: Vec<CMatrix> = (0..n).map(|k| CMatrix::basis_vector(n, k)).collect();
    let mut acc = CMatrix::zeros(dim, dim);
    for ij in 0..dim {
        let (i, j) = (ij / n, ij % n);
        for pq in 0..dim {
            let (p, q) = (pq / n, pq % n);
            // Kronecker deltas from traced index factors.
            if (u != alpha && v != alpha && i != p) || (u != beta && v != beta && j != q) {
                continue;
            }
            let mut scalar = Complex64::ONE;
            for k in 0..m {
                if k != u && k != v {
                    scalar *= inner[k][ij][pq];
                }
            }
            if scalar.norm() == 0.0 {
                continue;
            }
            let factor = |label: usize| -> (&CMatrix, &CMatrix) {
                if label == alpha {
                    (&basis[i], &basis[p])
                } else if label == beta {
                    (&basis[j], &basis[q])
                } else {
                    (family[label].entry(i, j), family[label].entry(p, q))
                }
            };
            let (ket_u, bra_u) = factor(u);
            let (ket_v, bra_v) = factor(v);
            for a in 0..n {
                let fa = ket_u.get(a, 0);
                if fa == Complex64::ZERO {
                    continue;
                }
                for b in 0..n {
                    let fb = ket_v.get(b, 0);
                    if fb == Complex64::ZERO {
                        continue;
                    }
                    for cc in 0..n {
                        let ga = bra_u.get(cc, 0).conj();
                        if ga == Complex64::ZERO {
                            continue;
                        }
                        for dd in 0..n {
                            let gb = bra_v.get(dd, 0).conj();
                            let term = scalar * fa * fb * ga * gb;
                            let (r, col) = (a * n + b, cc * n + dd);
                            acc.set(r, col, acc.get(r, col) + term);
                        }
                    }
                }
            }
        }
    }
    acc.max_abs_diff_identity()
}

/// A pair of cells whose inner-product modulus is neither 0 nor 1,
/// certifying that no phase/unitary relabeling can make the square classical.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionWitness {
    pub row_a: usize,
    pub col_a: usize,
    pub row_b: usize,
    pub col_b: usize,
    /// |⟨entry_a | entry_b⟩|.
    pub value: f64,
}

/// Scan all cell pairs for an inner-product modulus outside {0, 1}.
///
/// Returns the witness with the largest such modulus (ties broken by the
/// first pair in lexicographic cell order), or `None` when every modulus is
/// within tolerance of {0, 1}. A `None` result is inconclusive: the modulus
/// test is necessary for classicality up to equivalence, not sufficient.
pub fn classicality_obstruction(
    q: &QuantumLatinSquare,
    tol: Tolerance,
) -> Option<ObstructionWitness> {
    let n = q.n;
    let eps = tol.eps();
    let cells = n * n;
    let mut best: Option<ObstructionWitness> = None;
    for ij in 0..cells {
        for pq in (ij + 1)..cells {
            let value = q
                .entry(ij / n, ij % n)
                .hermitian_inner(q.entry(pq / n, pq % n))
                .norm();
            let outside = value.min((value - 1.0).abs());
            if outside > eps && best.as_ref().is_none_or(|b| value > b.value) {
                best = Some(ObstructionWitness {
                    row_a: ij / n,
                    col_a: ij % n,
                    row_b: pq / n,
                    col_b: pq % n,
                    value,
                });
            }
        }
    }
    best
}

fn is_prime(p: usize) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The cyclic family of mutually orthogonal Latin squares of prime order:
/// square k has entry (i,j) = |(k·i + j) mod p⟩ for k = 1..=count.
pub fn generate_cyclic_mols(p: usize, count: usize) -> Result<Vec<QuantumLatinSquare>> {
    if !is_prime(p) {
        return Err(Error::Usage(format!("{p} is not prime")));
    }
    if count == 0 || count > p - 1 {
        return Err(Error::Usage(format!(
            "count must lie in 1..={}, got {count}",
            p - 1
        )));
    }
    (1..=count)
        .map(|k| {
            let symbols: Vec<Vec<usize>> = (0..p)
                .map(|i| (0..p).map(|j| (k * i + j) % p).collect())
                .collect();
            QuantumLatinSquare::from_classical(&symbols)
        })
        .collect()
}
