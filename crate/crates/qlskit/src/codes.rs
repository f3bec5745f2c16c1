//! Quantum error-detecting encoders and unitary error bases.
//!
//! An orthogonal skew PPM `T` yields the one-to-three encoding map
//! `V = (1/√n) Σ_{i,j} |i⟩ ⊗ T_ij ⊗ |j⟩ : ℂ^d → ℂⁿ⊗ℂ^d⊗ℂⁿ`. The raw sum
//! satisfies Σ T_ij† T_ij = n·I_d for any composable pair, so the stored map
//! is normalized by 1/√n to make it an honest isometry; the single-error
//! detection conditions then hold with the scalar constants this induces.
//!
//! Detection is checked two ways that must agree: [`check_kl_paper`]
//! evaluates the three per-leg matrix-unit sum conditions directly, and
//! [`check_kl_generic`] sweeps a full shift/clock operator basis over each
//! leg, testing V†ẼV against its predicted multiple of the identity.

use crate::linalg::{classify_operator, trace_inner, CMatrix, Complex64, Tolerance};
use crate::qlis::{diagonal_from_unitaries, identity_square, IsometrySquare, SkewPpm};
use crate::{Error, Result};

/// One-to-three encoding map ℂ^d → ℂⁿ⊗ℂ^d⊗ℂⁿ with legs ordered
/// (row index, middle, column index).
#[derive(Debug, Clone, PartialEq)]
pub struct EncoderTensor {
    n: usize,
    d: usize,
    map: CMatrix,
    normalization: f64,
}

impl EncoderTensor {
    /// Shape-checked construction from an explicit map (used by the file
    /// formats). `normalization` records the scalar already applied.
    pub fn new(n: usize, d: usize, map: CMatrix, normalization: f64) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::Shape("leg dimensions must be positive".into()));
        }
        if map.rows() != n * d * n || map.cols() != d {
            return Err(Error::Shape(format!(
                "encoder map has shape {}x{}, expected {}x{d}",
                map.rows(),
                map.cols(),
                n * d * n
            )));
        }
        if !(normalization.is_finite() && normalization > 0.0) {
            return Err(Error::Shape("normalization must be a positive real".into()));
        }
        Ok(Self { n, d, map, normalization })
    }

    /// Assemble (1/√n) Σ |i⟩ ⊗ T_ij ⊗ |j⟩ from a skew PPM.
    ///
    /// No orthogonality check is made here; a non-orthogonal input yields an
    /// isometry that fails the middle-leg detection condition, which the
    /// checkers report.
    pub fn from_sppm(t: &SkewPpm) -> Self {
        let (n, d) = (t.n(), t.d());
        let normalization = 1.0 / (n as f64).sqrt();
        let mut map = CMatrix::zeros(n * d * n, d);
        for i in 0..n {
            for j in 0..n {
                let part = t.part(i, j);
                for x in 0..d {
                    for y in 0..d {
                        map.set(
                            Self::leg_index(n, d, i, x, j),
                            y,
                            part.get(x, y) * Complex64::new(normalization, 0.0),
                        );
                    }
                }
            }
        }
        Self { n, d, map, normalization }
    }

    #[inline]
    fn leg_index(n: usize, d: usize, i: usize, x: usize, j: usize) -> usize {
        debug_assert!(i < n && x < d && j < n);
        (i * d + x) * n + j
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn map(&self) -> &CMatrix {
        &self.map
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// ‖V†V − I_d‖_max.
    pub fn isometry_violation(&self) -> f64 {
        self.map.dagger().matmul(&self.map).max_abs_diff_identity()
    }

    /// Dimensions of the three output legs.
    pub fn leg_dims(&self) -> [usize; 3] {
        [self.n, self.d, self.n]
    }

    /// Apply a single-leg operator: Ẽ = I ⊗ … ⊗ e ⊗ … ⊗ I acting on `leg`.
    fn apply_on_leg(&self, leg: usize, e: &CMatrix) -> CMatrix {
        let (n, d) = (self.n, self.d);
        let dim_leg = self.leg_dims()[leg];
        assert_eq!((e.rows(), e.cols()), (dim_leg, dim_leg), "leg operator shape");
        let mut out = CMatrix::zeros(self.map.rows(), self.map.cols());
        for i in 0..n {
            for x in 0..d {
                for j in 0..n {
                    let r = Self::leg_index(n, d, i, x, j);
                    for c in 0..self.map.cols() {
                        let mut acc = Complex64::ZERO;
                        match leg {
                            0 => {
                                for s in 0..n {
                                    acc += e.get(i, s)
                                        * self.map.get(Self::leg_index(n, d, s, x, j), c);
                                }
                            }
                            1 => {
                                for s in 0..d {
                                    acc += e.get(x, s)
                                        * self.map.get(Self::leg_index(n, d, i, s, j), c);
                                }
                            }
                            2 => {
                                for s in 0..n {
                                    acc += e.get(j, s)
                                        * self.map.get(Self::leg_index(n, d, i, x, s), c);
                                }
                            }
                            _ => unreachable!("three legs"),
                        }
                        out.set(r, c, acc);
                    }
                }
            }
        }
        out
    }

    /// V†(Ẽ on `leg`)V as a d×d matrix.
    pub fn sandwich(&self, leg: usize, e: &CMatrix) -> CMatrix {
        self.map.dagger().matmul(&self.apply_on_leg(leg, e))
    }
}

/// Build the encoder from an orthogonal pair of isometry squares,
/// rejecting pairs that fail the orthogonality check.
pub fn build_encoder(
    k: &IsometrySquare,
    q: &IsometrySquare,
    tol: Tolerance,
) -> Result<EncoderTensor> {
    let t = crate::qlis::compose_skew_ppm(k, q)?;
    let report = crate::qlis::check_orthogonal_sppm(&t, tol);
    if !report.pass {
        return Err(Error::Domain(format!(
            "squares are not orthogonal (nonzero parts {}, gram violation {:.3e}, frame violation {:.3e})",
            report.nonzero_count, report.gram_violation, report.s_isometry_violation
        )));
    }
    Ok(EncoderTensor::from_sppm(&t))
}

/// Worst deviations of the three per-leg sum conditions from their predicted
/// identity multiples (1/n on the index legs, 1/d on the middle leg).
#[derive(Debug, Clone, PartialEq)]
pub struct KlPaperReport {
    pub row_violation: f64,
    pub middle_violation: f64,
    pub col_violation: f64,
    pub pass: bool,
}

impl KlPaperReport {
    pub fn worst(&self) -> f64 {
        self.row_violation.max(self.middle_violation).max(self.col_violation)
    }
}

/// Evaluate the three single-error detection sum conditions on matrix units.
///
/// For each pair of basis labels on a leg, V†(unit on leg)V must equal
/// δ/(leg dimension)·I_d: the index-leg conditions follow from the isometry
/// square axioms alone, while the middle-leg condition requires
/// orthogonality, so a non-orthogonal source fails exactly there.
pub fn check_kl_paper(e: &EncoderTensor, tol: Tolerance) -> KlPaperReport {
    let (n, d) = (e.n, e.d);
    let v = &e.map;
    let idx = |i, x, j| EncoderTensor::leg_index(n, d, i, x, j);

    let mut row_violation = 0.0f64;
    for l in 0..n {
        for i in 0..n {
            let target = if l == i { 1.0 / n as f64 } else { 0.0 };
            let mut worst = 0.0f64;
            for r in 0..d {
                for c in 0..d {
                    let mut acc = Complex64::ZERO;
                    for x in 0..d {
                        for j in 0..n {
                            acc += v.get(idx(l, x, j), r).conj() * v.get(idx(i, x, j), c);
                        }
                    }
                    let t = if r == c { target } else { 0.0 };
                    worst = worst.max((acc - Complex64::new(t, 0.0)).norm());
                }
            }
            row_violation = row_violation.max(worst);
        }
    }

    let mut middle_violation = 0.0f64;
    for y in 0..d {
        for x in 0..d {
            let target = if y == x { 1.0 / d as f64 } else { 0.0 };
            for r in 0..d {
                for c in 0..d {
                    let mut acc = Complex64::ZERO;
                    for i in 0..n {
                        for j in 0..n {
                            acc += v.get(idx(i, y, j), r).conj() * v.get(idx(i, x, j), c);
                        }
                    }
                    let t = if r == c { target } else { 0.0 };
                    middle_violation = middle_violation.max((acc - Complex64::new(t, 0.0)).norm());
                }
            }
        }
    }

    let mut col_violation = 0.0f64;
    for l in 0..n {
        for k in 0..n {
            let target = if l == k { 1.0 / n as f64 } else { 0.0 };
            for r in 0..d {
                for c in 0..d {
                    let mut acc = Complex64::ZERO;
                    for i in 0..n {
                        for x in 0..d {
                            acc += v.get(idx(i, x, l), r).conj() * v.get(idx(i, x, k), c);
                        }
                    }
                    let t = if r == c { target } else { 0.0 };
                    col_violation = col_violation.max((acc - Complex64::new(t, 0.0)).norm());
                }
            }
        }
    }

    let eps = tol.eps();
    KlPaperReport {
        row_violation,
        middle_violation,
        col_violation,
        pass: row_violation <= eps && middle_violation <= eps && col_violation <= eps,
    }
}

/// The worst offender in the operator-basis sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct KlWitness {
    /// Leg index (0 row, 1 middle, 2 column).
    pub leg: usize,
    /// Shift exponent of the basis element.
    pub shift: usize,
    /// Clock exponent of the basis element.
    pub clock: usize,
    pub violation: f64,
}

/// Result of sweeping the full shift/clock basis over every leg.
#[derive(Debug, Clone, PartialEq)]
pub struct KlGenericReport {
    pub pass: bool,
    pub worst_violation: f64,
    /// Worst basis element; meaningful mainly when the check fails.
    pub witness: Option<KlWitness>,
}

/// Sweep a trace-orthogonal unitary operator basis over each leg and test
/// V†ẼV = Tr(E)/(leg dimension)·I_d for every element.
///
/// Equivalent to [`check_kl_paper`] by a change of operator basis, so the two
/// verdicts must agree on every encoder; this route additionally names the
/// offending leg and basis element on failure.
pub fn check_kl_generic(e: &EncoderTensor, tol: Tolerance) -> KlGenericReport {
    let mut worst_violation = 0.0f64;
    let mut witness = None;
    for leg in 0..3 {
        let dim = e.leg_dims()[leg];
        for s in 0..dim {
            for t in 0..dim {
                let w = weyl_element(dim, s, t);
                let target = w.trace() / Complex64::new(dim as f64, 0.0);
                let a = e.sandwich(leg, &w);
                let mut dev = 0.0f64;
                for r in 0..e.d {
                    for c in 0..e.d {
                        let want = if r == c { target } else { Complex64::ZERO };
                        dev = dev.max((a.get(r, c) - want).norm());
                    }
                }
                if dev > worst_violation {
                    worst_violation = dev;
                    witness = Some(KlWitness { leg, shift: s, clock: t, violation: dev });
                }
            }
        }
    }
    KlGenericReport { pass: worst_violation <= tol.eps(), worst_violation, witness }
}

/// Cyclic shift on ℂ^d: |k⟩ ↦ |k+1 mod d⟩.
pub fn shift_matrix(d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |r, c| {
        if r == (c + 1) % d {
            Complex64::ONE
        } else {
            Complex64::ZERO
        }
    })
}

/// Diagonal phase on ℂ^d: |k⟩ ↦ ω^k |k⟩ with ω = e^{2πi/d}.
pub fn clock_matrix(d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |r, c| {
        if r == c {
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / d as f64)
        } else {
            Complex64::ZERO
        }
    })
}

/// shift^s ∘ clock^t.
pub fn weyl_element(d: usize, s: usize, t: usize) -> CMatrix {
    let mut m = CMatrix::identity(d);
    let shift = shift_matrix(d);
    for _ in 0..s {
        m = shift.matmul(&m);
    }
    let clock = clock_matrix(d);
    for _ in 0..t {
        m = m.matmul(&clock);
    }
    m
}

/// A family of unitary operators on ℂ^d; unitarity is checked at
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryFamily {
    d: usize,
    members: Vec<CMatrix>,
}

impl UnitaryFamily {
    pub fn new(d: usize, members: Vec<CMatrix>, tol: Tolerance) -> Result<Self> {
        if d == 0 || members.is_empty() {
            return Err(Error::Shape("need a positive dimension and at least one member".into()));
        }
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
        Ok(Self { d, members })
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn members(&self) -> &[CMatrix] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The Pauli family {I, X, Y, Z} on ℂ².
pub fn pauli_family() -> UnitaryFamily {
    use crate::linalg::cr;
    let x = CMatrix::from_fn(2, 2, |r, c| if r != c { Complex64::ONE } else { Complex64::ZERO });
    let y = CMatrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 1) => Complex64::new(0.0, -1.0),
        (1, 0) => Complex64::I,
        _ => Complex64::ZERO,
    });
    let z = CMatrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 0) => cr(1.0),
        (1, 1) => cr(-1.0),
        _ => Complex64::ZERO,
    });
    UnitaryFamily::new(2, vec![CMatrix::identity(2), x, y, z], Tolerance::default())
        .expect("pauli matrices are unitary")
}

/// The d² shift/clock unitaries on ℂ^d.
pub fn weyl_family(d: usize) -> UnitaryFamily {
    let members = (0..d)
        .flat_map(|s| (0..d).map(move |t| (s, t)))
        .map(|(s, t)| weyl_element(d, s, t))
        .collect();
    UnitaryFamily::new(d, members, Tolerance::default()).expect("weyl elements are unitary")
}

/// Trace-orthogonality verdict for a unitary family.
#[derive(Debug, Clone, PartialEq)]
pub struct UebReport {
    pub pass: bool,
    pub member_count: usize,
    /// d², the count required to span the operator space.
    pub expected_count: usize,
    /// Worst |Tr(U_i† U_j)| over distinct members.
    pub worst_offdiag: f64,
    /// Worst |Tr(U_i† U_i) − d|.
    pub worst_self: f64,
}

/// A family is a unitary error basis when it has exactly d² members that are
/// orthogonal under the trace inner product (self inner products equal d).
pub fn is_ueb(f: &UnitaryFamily, tol: Tolerance) -> UebReport {
    let d = f.d;
    let mut worst_offdiag = 0.0f64;
    let mut worst_self = 0.0f64;
    for (i, a) in f.members.iter().enumerate() {
        for (j, b) in f.members.iter().enumerate() {
            let g = trace_inner(a, b).expect("members share shape");
            if i == j {
                worst_self = worst_self.max((g - Complex64::new(d as f64, 0.0)).norm());
            } else {
                worst_offdiag = worst_offdiag.max(g.norm());
            }
        }
    }
    let eps = tol.eps();
    UebReport {
        pass: f.members.len() == d * d && worst_offdiag <= eps && worst_self <= eps,
        member_count: f.members.len(),
        expected_count: d * d,
        worst_offdiag,
        worst_self,
    }
}

/// Place a unitary error basis on the diagonal of a d²×d² isometry square;
/// the result is orthogonal to the d²-cell identity square with common trace
/// d.
pub fn ueb_to_qlis(f: &UnitaryFamily, tol: Tolerance) -> Result<IsometrySquare> {
    let report = is_ueb(f, tol);
    if !report.pass {
        return Err(Error::Domain(format!(
            "family is not a unitary error basis ({} members, expected {}; offdiag {:.3e}, self {:.3e})",
            report.member_count, report.expected_count, report.worst_offdiag, report.worst_self
        )));
    }
    diagonal_from_unitaries(&f.members, tol)
}

/// Recover the unitary family from a diagonal isometry square orthogonal to
/// the identity square. Inverts [`ueb_to_qlis`] exactly.
pub fn qlis_to_ueb(s: &IsometrySquare, tol: Tolerance) -> Result<UnitaryFamily> {
    let d = s.d();
    if !s.is_diagonal() || (0..s.n()).any(|i| s.block_dim(i, i) != d) {
        return Err(Error::Domain(
            "square must be diagonal with full-dimensional blocks".into(),
        ));
    }
    let id = identity_square(s.n(), d);
    let report = crate::qlis::check_orthogonal_qlis(&id, s, tol)?;
    if !report.pass {
        return Err(Error::Domain(format!(
            "square is not orthogonal to the identity square (nonzero parts {}, gram violation {:.3e})",
            report.nonzero_count, report.gram_violation
        )));
    }
    let members: Vec<CMatrix> =
        (0..s.n()).map(|i| s.block(i, i).expect("diagonal block").clone()).collect();
    UnitaryFamily::new(d, members, tol)
}
