//! Quantum Latin isometry squares and skew projective permutation matrices.
//!
//! An isometry square is an n×n array of isometries `k_ij: ℂ^{a_ij} → ℂ^d`
//! whose ranges are orthogonal along every row and column and complete: for
//! every row and every column, Σ k_ij k_ij† = I_d. A quantum Latin square is
//! the special case with all `a_ij = 1`.
//!
//! Composing two squares with cellwise-equal block dimensions gives a skew
//! projective permutation matrix `T_ij = q_ij ∘ k_ij†`: an array of partial
//! isometries whose initial and final spaces partition ℂ^d along every row
//! and column. A pair of squares is orthogonal when the nonzero `T_ij` span
//! the d²-dimensional operator space with a common trace norm; the Gram
//! formulation and a column-stacking frame test are both implemented and must
//! agree.

use crate::linalg::{classify_operator, trace_inner, CMatrix, Complex64, Tolerance};
use crate::{Error, Result};

/// n×n array of isometry blocks ℂ^{a_ij} → ℂ^d; `None` marks `a_ij = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsometrySquare {
    n: usize,
    d: usize,
    blocks: Vec<Vec<Option<CMatrix>>>,
}

impl IsometrySquare {
    /// Shape-checked construction: each present block must be d×a with
    /// 1 ≤ a ≤ d. The isometry conditions are checked by [`validate_qlis`].
    pub fn new(n: usize, d: usize, blocks: Vec<Vec<Option<CMatrix>>>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::Shape("array size and block dimension must be positive".into()));
        }
        if blocks.len() != n || blocks.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("block array must be {n}×{n}")));
        }
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if let Some(m) = b {
                    if m.rows() != d || m.cols() == 0 || m.cols() > d {
                        return Err(Error::Shape(format!(
                            "block ({i},{j}) has shape {}x{}, expected {d}×a with 1 ≤ a ≤ {d}",
                            m.rows(),
                            m.cols()
                        )));
                    }
                }
            }
        }
        Ok(Self { n, d, blocks })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn block(&self, i: usize, j: usize) -> Option<&CMatrix> {
        self.blocks[i][j].as_ref()
    }

    /// Domain dimension a_ij of the block at (i,j); 0 for an absent block.
    #[inline]
    pub fn block_dim(&self, i: usize, j: usize) -> usize {
        self.blocks[i][j].as_ref().map_or(0, |m| m.cols())
    }

    pub fn block_dims(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.block_dim(i, j)).collect())
            .collect()
    }

    pub fn blocks(&self) -> &[Vec<Option<CMatrix>>] {
        &self.blocks
    }

    /// True when only the leading diagonal carries blocks.
    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| (i == j) || self.blocks[i][j].is_none()))
    }
}

/// Per-condition worst violations for an isometry square.
#[derive(Debug, Clone, PartialEq)]
pub struct QlisValidationReport {
    /// Worst ‖k†k − I_a‖ over present blocks.
    pub block_isometry: f64,
    /// Worst ‖k_ip† k_iq‖ over distinct blocks in a row.
    pub row_orthogonality: f64,
    /// Worst ‖k_pj† k_qj‖ over distinct blocks in a column.
    pub col_orthogonality: f64,
    /// Worst ‖Σ k k† − I_d‖ over rows and over columns.
    pub completeness: f64,
    /// Row and column sums of the block dimensions all equal d.
    pub dims_ok: bool,
    pub worst: f64,
    pub pass: bool,
}

/// Check the isometry-square conditions: per-block isometry, range
/// orthogonality along rows and columns, completeness of each row and column,
/// and the block-dimension accounting.
pub fn validate_qlis(s: &IsometrySquare, tol: Tolerance) -> QlisValidationReport {
    let (n, d) = (s.n, s.d);
    let mut block_isometry = 0.0f64;
    let mut row_orthogonality = 0.0f64;
    let mut col_orthogonality = 0.0f64;
    let mut completeness = 0.0f64;

    for i in 0..n {
        for j in 0..n {
            if let Some(k) = s.block(i, j) {
                block_isometry =
                    block_isometry.max(k.dagger().matmul(k).max_abs_diff_identity());
            }
        }
    }

    for i in 0..n {
        for p in 0..n {
            for q in (p + 1)..n {
                if let (Some(a), Some(b)) = (s.block(i, p), s.block(i, q)) {
                    row_orthogonality = row_orthogonality.max(a.dagger().matmul(b).max_abs());
                }
                if let (Some(a), Some(b)) = (s.block(p, i), s.block(q, i)) {
                    col_orthogonality = col_orthogonality.max(a.dagger().matmul(b).max_abs());
                }
            }
        }
    }

    let mut dims_ok = true;
    for i in 0..n {
        let mut row_sum = CMatrix::zeros(d, d);
        let mut col_sum = CMatrix::zeros(d, d);
        let mut row_dims = 0usize;
        let mut col_dims = 0usize;
        for j in 0..n {
            if let Some(k) = s.block(i, j) {
                row_sum = row_sum.add(&k.matmul(&k.dagger()));
                row_dims += k.cols();
            }
            if let Some(k) = s.block(j, i) {
                col_sum = col_sum.add(&k.matmul(&k.dagger()));
                col_dims += k.cols();
            }
        }
        completeness = completeness.max(row_sum.max_abs_diff_identity());
        completeness = completeness.max(col_sum.max_abs_diff_identity());
        dims_ok &= row_dims == d && col_dims == d;
    }

    let worst = block_isometry.max(row_orthogonality).max(col_orthogonality).max(completeness);
    QlisValidationReport {
        block_isometry,
        row_orthogonality,
        col_orthogonality,
        completeness,
        dims_ok,
        worst,
        pass: dims_ok && worst <= tol.eps(),
    }
}

/// View a quantum Latin square as an isometry square with all a_ij = 1.
pub fn embed_qls_as_qlis(q: &crate::qls::QuantumLatinSquare) -> IsometrySquare {
    let n = q.n();
    let blocks = (0..n)
        .map(|i| (0..n).map(|j| Some(q.entry(i, j).clone())).collect())
        .collect();
    IsometrySquare::new(n, n, blocks).expect("embedded blocks are n×1 by construction")
}

/// Diagonal isometry square built from a family of unitaries on ℂ^d.
pub fn diagonal_from_unitaries(members: &[CMatrix], tol: Tolerance) -> Result<IsometrySquare> {
    if members.is_empty() {
        return Err(Error::Shape("need at least one unitary".into()));
    }
    let d = members[0].rows();
    for (i, u) in members.iter().enumerate() {
        if u.rows() != d || u.cols() != d {
            return Err(Error::Dimension(format!(
                "member {i} has shape {}x{}, expected {d}x{d}",
                u.rows(),
                u.cols()
            )));
        }
        if !classify_operator(u, tol).is_unitary {
            return Err(Error::Domain(format!("member {i} is not unitary")));
        }
    }
    let m = members.len();
    let blocks = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { Some(members[i].clone()) } else { None })
                .collect()
        })
        .collect();
    IsometrySquare::new(m, d, blocks)
}

/// The m×m diagonal square with identity blocks I_d; also a valid skew PPM.
pub fn identity_square(m: usize, d: usize) -> IsometrySquare {
    let blocks = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { Some(CMatrix::identity(d)) } else { None })
                .collect()
        })
        .collect();
    IsometrySquare::new(m, d, blocks).expect("identity blocks are d×d")
}

/// n×n array of d×d partial isometries whose initial and final spaces
/// partition ℂ^d along every row and column.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewPpm {
    n: usize,
    d: usize,
    parts: Vec<Vec<CMatrix>>,
}

impl SkewPpm {
    pub fn new(n: usize, d: usize, parts: Vec<Vec<CMatrix>>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::Shape("array size and dimension must be positive".into()));
        }
        if parts.len() != n || parts.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("parts array must be {n}×{n}")));
        }
        for (i, row) in parts.iter().enumerate() {
            for (j, t) in row.iter().enumerate() {
                if t.rows() != d || t.cols() != d {
                    return Err(Error::Shape(format!(
                        "part ({i},{j}) has shape {}x{}, expected {d}x{d}",
                        t.rows(),
                        t.cols()
                    )));
                }
            }
        }
        Ok(Self { n, d, parts })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn part(&self, i: usize, j: usize) -> &CMatrix {
        &self.parts[i][j]
    }

    pub fn parts(&self) -> &[Vec<CMatrix>] {
        &self.parts
    }

    /// Copy with one part replaced (shape-checked); handy for perturbation
    /// experiments.
    pub fn with_part(&self, i: usize, j: usize, part: CMatrix) -> Result<Self> {
        if i >= self.n || j >= self.n {
            return Err(Error::Shape(format!("cell ({i},{j}) out of range for n={}", self.n)));
        }
        if part.rows() != self.d || part.cols() != self.d {
            return Err(Error::Shape(format!(
                "replacement part has shape {}x{}, expected {}x{}",
                part.rows(),
                part.cols(),
                self.d,
                self.d
            )));
        }
        let mut parts = self.parts.clone();
        parts[i][j] = part;
        Ok(Self { n: self.n, d: self.d, parts })
    }
}

/// Compose two isometry squares into the skew PPM with parts
/// `T_ij = q_ij ∘ k_ij†` (the d×d zero matrix where a_ij = 0).
///
/// Composability requires cellwise-equal block dimensions, which the cellwise
/// product forces; empty cells must coincide too.
pub fn compose_skew_ppm(k: &IsometrySquare, q: &IsometrySquare) -> Result<SkewPpm> {
    if k.n != q.n || k.d != q.d {
        return Err(Error::Dimension(format!(
            "squares are {}×{} (d={}) and {}×{} (d={})",
            k.n, k.n, k.d, q.n, q.n, q.d
        )));
    }
    let (n, d) = (k.n, k.d);
    let mut parts = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let t = match (k.block(i, j), q.block(i, j)) {
                (None, None) => CMatrix::zeros(d, d),
                (Some(kb), Some(qb)) => {
                    if kb.cols() != qb.cols() {
                        return Err(Error::Dimension(format!(
                            "block dimensions differ at ({i},{j}): {} vs {}",
                            kb.cols(),
                            qb.cols()
                        )));
                    }
                    qb.matmul(&kb.dagger())
                }
                _ => {
                    return Err(Error::Dimension(format!(
                        "block present in only one square at ({i},{j})"
                    )))
                }
            };
            row.push(t);
        }
        parts.push(row);
    }
    SkewPpm::new(n, d, parts)
}

/// Per-condition worst violations for a skew PPM.
#[derive(Debug, Clone, PartialEq)]
pub struct SppmValidationReport {
    /// Worst ‖T T† T − T‖ over parts.
    pub partial_isometry: f64,
    /// Worst deviation of Σ T†T and Σ TT† from I_d over rows and columns.
    pub completeness: f64,
    /// Worst cross product ‖T_ip† T_iq‖ / ‖T_ip T_iq†‖ (and column analogues)
    /// over distinct cells.
    pub cross_orthogonality: f64,
    pub worst: f64,
    pub pass: bool,
}

/// Check that every part is a partial isometry and that initial and final
/// spaces partition ℂ^d along every row and every column.
pub fn validate_skew_ppm(t: &SkewPpm, tol: Tolerance) -> SppmValidationReport {
    let (n, d) = (t.n, t.d);
    let mut partial_isometry = 0.0f64;
    let mut completeness = 0.0f64;
    let mut cross = 0.0f64;

    for i in 0..n {
        for j in 0..n {
            let part = t.part(i, j);
            partial_isometry = partial_isometry
                .max(part.matmul(&part.dagger()).matmul(part).max_abs_diff(part));
        }
    }

    for i in 0..n {
        let mut row_initial = CMatrix::zeros(d, d);
        let mut row_final = CMatrix::zeros(d, d);
        let mut col_initial = CMatrix::zeros(d, d);
        let mut col_final = CMatrix::zeros(d, d);
        for j in 0..n {
            let r = t.part(i, j);
            row_initial = row_initial.add(&r.dagger().matmul(r));
            row_final = row_final.add(&r.matmul(&r.dagger()));
            let c = t.part(j, i);
            col_initial = col_initial.add(&c.dagger().matmul(c));
            col_final = col_final.add(&c.matmul(&c.dagger()));
        }
        for m in [row_initial, row_final, col_initial, col_final] {
            completeness = completeness.max(m.max_abs_diff_identity());
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let (a, b) = (t.part(i, p), t.part(i, q));
                cross = cross.max(a.dagger().matmul(b).max_abs());
                cross = cross.max(a.matmul(&b.dagger()).max_abs());
                let (a, b) = (t.part(p, i), t.part(q, i));
                cross = cross.max(a.dagger().matmul(b).max_abs());
                cross = cross.max(a.matmul(&b.dagger()).max_abs());
            }
        }
    }

    let worst = partial_isometry.max(completeness).max(cross);
    SppmValidationReport {
        partial_isometry,
        completeness,
        cross_orthogonality: cross,
        worst,
        pass: worst <= tol.eps(),
    }
}

/// Orthogonality verdict for a skew PPM (equivalently, for the pair of
/// isometry squares that composed to it).
///
/// Passing requires all of: exactly d² nonzero parts, a common trace norm on
/// the nonzero parts, pairwise trace-orthogonality of distinct parts, and the
/// column-stacking frame condition.
#[derive(Debug, Clone, PartialEq)]
pub struct QlisOrthogonalityReport {
    pub pass: bool,
    pub nonzero_count: usize,
    /// Mean of Tr(T†T) over nonzero parts; the common value when passing.
    pub common_trace: f64,
    /// Worst Gram deviation: off-diagonal |Tr(T_ij† T_pq)| or diagonal
    /// |Tr(T†T) − a|.
    pub gram_violation: f64,
    /// Deviation of W W† from I_{d²} for the d²×n² matrix W whose columns are
    /// vectorize(T_ij)/√a.
    pub s_isometry_violation: f64,
}

impl QlisOrthogonalityReport {
    /// Gram-route verdict alone (count, common trace, trace-orthogonality).
    pub fn gram_pass(&self, d: usize, tol: Tolerance) -> bool {
        self.nonzero_count == d * d && self.gram_violation <= tol.eps()
    }

    /// Frame-route verdict alone.
    pub fn s_pass(&self, tol: Tolerance) -> bool {
        self.s_isometry_violation <= tol.eps()
    }
}

/// Check orthogonality of a skew PPM directly from its parts.
pub fn check_orthogonal_sppm(t: &SkewPpm, tol: Tolerance) -> QlisOrthogonalityReport {
    let (n, d) = (t.n, t.d);
    let eps = tol.eps();

    let mut nonzero: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if t.part(i, j).max_abs() > eps {
                nonzero.push((i, j));
            }
        }
    }
    let nonzero_count = nonzero.len();

    let traces: Vec<f64> = nonzero
        .iter()
        .map(|&(i, j)| trace_inner(t.part(i, j), t.part(i, j)).expect("equal shapes").re)
        .collect();
    let common_trace = if traces.is_empty() {
        0.0
    } else {
        traces.iter().sum::<f64>() / traces.len() as f64
    };

    let mut gram_violation = 0.0f64;
    for (x, &(i, j)) in nonzero.iter().enumerate() {
        gram_violation = gram_violation.max((traces[x] - common_trace).abs());
        for &(p, q) in nonzero.iter().skip(x + 1) {
            let g = trace_inner(t.part(i, j), t.part(p, q)).expect("equal shapes");
            gram_violation = gram_violation.max(g.norm());
        }
    }

    // Frame route: stack the normalized vectorized parts as columns of W and
    // compare W W† with I_{d²}. Equal to the adjoint-isometry condition on
    // the cell-indexed stacking map, normalized so "isometry up to the common
    // trace" becomes an exact identity test.
    let scale = if common_trace > eps { 1.0 / common_trace.sqrt() } else { 1.0 };
    let dim = d * d;
    let mut w = CMatrix::zeros(dim, n * n);
    for i in 0..n {
        for j in 0..n {
            let col = t.part(i, j).vectorize();
            for r in 0..dim {
                w.set(r, i * n + j, col.get(r, 0) * Complex64::new(scale, 0.0));
            }
        }
    }
    let s_isometry_violation = w.matmul(&w.dagger()).max_abs_diff_identity();

    QlisOrthogonalityReport {
        pass: nonzero_count == d * d && gram_violation <= eps && s_isometry_violation <= eps,
        nonzero_count,
        common_trace,
        gram_violation,
        s_isometry_violation,
    }
}

/// Compose two isometry squares and check orthogonality of the result.
pub fn check_orthogonal_qlis(
    k: &IsometrySquare,
    q: &IsometrySquare,
    tol: Tolerance,
) -> Result<QlisOrthogonalityReport> {
    let t = compose_skew_ppm(k, q)?;
    Ok(check_orthogonal_sppm(&t, tol))
}

/// Mutual orthogonality for a family of isometry squares is pairwise.
pub fn check_family_orthogonal_qlis(
    family: &[IsometrySquare],
    tol: Tolerance,
) -> Result<bool> {
    if family.len() < 2 {
        return Err(Error::Usage(format!(
            "a family needs at least 2 squares, got {}",
            family.len()
        )));
    }
    for x in 0..family.len() {
        for y in (x + 1)..family.len() {
            if !check_orthogonal_qlis(&family[x], &family[y], tol)?.pass {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cr;
    use crate::qls::QuantumLatinSquare;

    fn cyclic(n: usize) -> QuantumLatinSquare {
        let symbols: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        QuantumLatinSquare::from_classical(&symbols).unwrap()
    }

    fn paulis() -> Vec<CMatrix> {
        let x =
            CMatrix::from_rows(&[vec![cr(0.0), cr(1.0)], vec![cr(1.0), cr(0.0)]]).unwrap();
        let y = CMatrix::from_rows(&[
            vec![cr(0.0), Complex64::new(0.0, -1.0)],
            vec![Complex64::I, cr(0.0)],
        ])
        .unwrap();
        let z =
            CMatrix::from_rows(&[vec![cr(1.0), cr(0.0)], vec![cr(0.0), cr(-1.0)]]).unwrap();
        vec![CMatrix::identity(2), x, y, z]
    }

    #[test]
    fn identity_square_validates_and_is_a_ppm() {
        let s = identity_square(4, 3);
        let report = validate_qlis(&s, Tolerance::default());
        assert!(report.pass);
        assert!(s.is_diagonal());

        let t = compose_skew_ppm(&s, &s).unwrap();
        assert!(validate_skew_ppm(&t, Tolerance::default()).pass);
        for i in 0..4 {
            assert!(t.part(i, i).max_abs_diff(&CMatrix::identity(3)) < 1e-15);
        }
    }

    #[test]
    fn embedded_qls_validates_with_unit_blocks() {
        let q = cyclic(3);
        let s = embed_qls_as_qlis(&q);
        assert_eq!((s.n(), s.d()), (3, 3));
        assert!((0..3).all(|i| (0..3).all(|j| s.block_dim(i, j) == 1)));
        assert!(validate_qlis(&s, Tolerance::default()).pass);
    }

    #[test]
    fn pauli_diagonal_square_validates() {
        let s = diagonal_from_unitaries(&paulis(), Tolerance::default()).unwrap();
        assert_eq!((s.n(), s.d()), (4, 2));
        assert!(validate_qlis(&s, Tolerance::default()).pass);
    }

    #[test]
    fn diagonal_from_unitaries_rejects_non_unitaries_and_mixed_dims() {
        let bad = vec![CMatrix::identity(2).scale(cr(0.5))];
        assert!(matches!(
            diagonal_from_unitaries(&bad, Tolerance::default()),
            Err(Error::Domain(_))
        ));
        let mixed = vec![CMatrix::identity(2), CMatrix::identity(3)];
        assert!(matches!(
            diagonal_from_unitaries(&mixed, Tolerance::default()),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn zeroed_block_column_fails_validation() {
        let q = cyclic(3);
        let mut blocks: Vec<Vec<Option<CMatrix>>> = (0..3)
            .map(|i| (0..3).map(|j| Some(q.entry(i, j).clone())).collect())
            .collect();
        blocks[0][0] = Some(CMatrix::zeros(3, 1));
        let s = IsometrySquare::new(3, 3, blocks).unwrap();
        let report = validate_qlis(&s, Tolerance::default());
        assert!(!report.pass);
        assert!(report.block_isometry >= 1.0);
    }

    #[test]
    fn compose_requires_matching_block_dims() {
        let a = identity_square(2, 2);
        let b = embed_qls_as_qlis(&cyclic(2));
        assert!(matches!(compose_skew_ppm(&a, &b), Err(Error::Dimension(_))));
    }

    #[test]
    fn compose_with_self_gives_projectors() {
        let s = embed_qls_as_qlis(&cyclic(3));
        let t = compose_skew_ppm(&s, &s).unwrap();
        assert!(validate_skew_ppm(&t, Tolerance::default()).pass);
        for i in 0..3 {
            for j in 0..3 {
                let part = t.part(i, j);
                let report = classify_operator(part, Tolerance::default());
                assert!(report.is_projector && report.is_partial_isometry);
            }
        }
    }

    #[test]
    fn broken_part_fails_sppm_validation() {
        let s = identity_square(2, 4);
        let mut t = compose_skew_ppm(&s, &s).unwrap();
        let mut bad = CMatrix::zeros(4, 4);
        bad.set(0, 0, cr(1.0));
        bad.set(1, 1, cr(0.5));
        t.parts[0][0] = bad;
        let report = validate_skew_ppm(&t, Tolerance::default());
        assert!(!report.pass);
        assert!(report.partial_isometry > 0.1);
    }

    #[test]
    fn identity_pair_is_never_orthogonal() {
        // A PPM spans the operator space of each row on its own, so the full
        // array cannot be trace-orthogonal.
        let s = identity_square(4, 2);
        let report = check_orthogonal_qlis(&s, &s, Tolerance::default()).unwrap();
        assert!(!report.pass);
        assert_eq!(report.nonzero_count, 4);
        assert!(report.gram_violation > 1.0);
        assert!(!report.s_pass(Tolerance::default()));
    }

    #[test]
    fn pauli_square_is_orthogonal_to_identity_square() {
        let u = diagonal_from_unitaries(&paulis(), Tolerance::default()).unwrap();
        let id = identity_square(4, 2);
        let report = check_orthogonal_qlis(&id, &u, Tolerance::default()).unwrap();
        assert!(report.pass, "report: {report:?}");
        assert_eq!(report.nonzero_count, 4);
        assert!((report.common_trace - 2.0).abs() < 1e-12);
        assert!(report.gram_pass(2, Tolerance::default()));
        assert!(report.s_pass(Tolerance::default()));
    }

    #[test]
    fn embedded_orthogonal_pair_matches_qls_verdict() {
        let mols = crate::qls::generate_cyclic_mols(5, 2).unwrap();
        let qlis_report = check_orthogonal_qlis(
            &embed_qls_as_qlis(&mols[0]),
            &embed_qls_as_qlis(&mols[1]),
            Tolerance::default(),
        )
        .unwrap();
        let qls_report = crate::qls::check_orthogonal(
            &mols[0],
            &mols[1],
            crate::qls::Method::Gram,
            Tolerance::default(),
        )
        .unwrap();
        assert_eq!(qlis_report.pass, qls_report.pass);
        assert!(qlis_report.pass);
        assert_eq!(qlis_report.nonzero_count, 25);
        assert!((qlis_report.common_trace - 1.0).abs() < 1e-12);

        // Non-orthogonal self pair agrees too.
        let self_qlis = check_orthogonal_qlis(
            &embed_qls_as_qlis(&mols[0]),
            &embed_qls_as_qlis(&mols[0]),
            Tolerance::default(),
        )
        .unwrap();
        assert!(!self_qlis.pass);
    }

    #[test]
    fn family_orthogonality_is_pairwise() {
        let id = identity_square(4, 2);
        let u = diagonal_from_unitaries(&paulis(), Tolerance::default()).unwrap();
        assert!(matches!(
            check_family_orthogonal_qlis(std::slice::from_ref(&id), Tolerance::default()),
            Err(Error::Usage(_))
        ));
        assert!(check_family_orthogonal_qlis(&[id.clone(), u], Tolerance::default()).unwrap());
        assert!(!check_family_orthogonal_qlis(&[id.clone(), id], Tolerance::default()).unwrap());
    }
}
