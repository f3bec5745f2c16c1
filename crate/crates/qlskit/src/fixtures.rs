//! Worked examples shipped as constructors and as JSON files under `data/`.
//!
//! Each fixture is encoded exactly as typeset in its source, with irrational
//! constants expanded from the symbolic tag catalog
//! ([`crate::json::symbolic_constant`]) at build time rather than pre-rounded
//! decimals, so the data files stay auditable. The constructors here and the
//! shipped files must parse to bit-identical objects; an integration test
//! enforces that.
//!
//! Fixture ids: `qls4`, `u9`, `oqls9_left`, `oqls9_right`, `qlis8_q`,
//! `qlis8_k`, `sppm8_t`.

use crate::json::symbolic_constant;
use crate::linalg::{CMatrix, Complex64};
use crate::qlis::{IsometrySquare, SkewPpm};
use crate::qls::QuantumLatinSquare;

fn tag(t: &str) -> Complex64 {
    symbolic_constant(t).expect("fixture tag is in the catalog")
}

fn col4(entries: [Complex64; 4]) -> CMatrix {
    CMatrix::col_from_slice(&entries)
}

/// The 4×4 quantum Latin square with superposition middle rows:
/// first row |0⟩..|3⟩, last row reversed, and rows 1–2 mixing
/// (|1⟩±|2⟩)/√2 with (i|0⟩+2|3⟩)/√5 and (2|0⟩+i|3⟩)/√5.
pub fn example_qls_dim4() -> QuantumLatinSquare {
    let o = Complex64::ZERO;
    let r2 = tag("1/sqrt2");
    let m2 = tag("-1/sqrt2");
    let i5 = tag("i/sqrt5");
    let t5 = tag("2/sqrt5");

    let rows: Vec<Vec<CMatrix>> = vec![
        vec![
            CMatrix::basis_vector(4, 0),
            CMatrix::basis_vector(4, 1),
            CMatrix::basis_vector(4, 2),
            CMatrix::basis_vector(4, 3),
        ],
        vec![
            col4([o, r2, m2, o]),
            col4([i5, o, o, t5]),
            col4([t5, o, o, i5]),
            col4([o, r2, r2, o]),
        ],
        vec![
            col4([o, r2, r2, o]),
            col4([t5, o, o, i5]),
            col4([i5, o, o, t5]),
            col4([o, r2, m2, o]),
        ],
        vec![
            CMatrix::basis_vector(4, 3),
            CMatrix::basis_vector(4, 2),
            CMatrix::basis_vector(4, 1),
            CMatrix::basis_vector(4, 0),
        ],
    ];
    QuantumLatinSquare::from_entries(rows).expect("fixture entries are 4x1")
}

/// The 9×9 block-diagonal unitary with a discrete-Fourier 3×3 block, a
/// twisted middle 3×3 block, a 2×2 sign block, and a fixed last axis; the
/// global 1/√3 factor is folded into every entry.
pub fn example_unitary_u() -> CMatrix {
    let o = "0";
    let rows: [[&str; 9]; 9] = [
        ["1/sqrt3", "1/sqrt3", "1/sqrt3", o, o, o, o, o, o],
        ["1/sqrt3", "w/sqrt3", "w*/sqrt3", o, o, o, o, o, o],
        ["1/sqrt3", "w*/sqrt3", "w/sqrt3", o, o, o, o, o, o],
        [o, o, o, "(1+i)/sqrt3", "(1-i)/sqrt6", o, o, o, o],
        [o, o, o, "-i/sqrt6", "1/sqrt3", "1/sqrt6+i/sqrt3", o, o, o],
        [o, o, o, "1/sqrt6", "i/sqrt3", "1/sqrt3-i/sqrt6", o, o, o],
        [o, o, o, o, o, o, "1/sqrt2", "1/sqrt2", o],
        [o, o, o, o, o, o, "1/sqrt2", "-1/sqrt2", o],
        [o, o, o, o, o, o, o, o, "1"],
    ];
    CMatrix::from_fn(9, 9, |i, j| match rows[i][j] {
        "0" => Complex64::ZERO,
        "1" => Complex64::ONE,
        t => tag(t),
    })
}

/// The orthogonal pair of dimension 9, assembled from a 3×3 grid of 3×3
/// blocks: block (R,C) of each square carries one symbol alphabet of a
/// block-level Latin square, the inner cells follow an order-3 pattern, and
/// selected blocks are twisted by [`example_unitary_u`].
///
/// Left square: inner pattern (−r−c) mod 3, block alphabets (C−R) mod 3,
/// twists at blocks (2,0) and (2,2). Right square: inner pattern (r−c) mod 3,
/// block alphabets (R+C) mod 3, twists at blocks (1,2) and (2,0).
pub fn example_orthogonal_pair_dim9() -> (QuantumLatinSquare, QuantumLatinSquare) {
    let u = example_unitary_u();
    let build = |inner: &dyn Fn(usize, usize) -> usize,
                 alphabet: &dyn Fn(usize, usize) -> usize,
                 twisted: &[(usize, usize)]| {
        let entries: Vec<Vec<CMatrix>> = (0..9)
            .map(|row| {
                (0..9)
                    .map(|col| {
                        let (big_r, r) = (row / 3, row % 3);
                        let (big_c, c) = (col / 3, col % 3);
                        let symbol = 3 * alphabet(big_r, big_c) + inner(r, c);
                        let e = CMatrix::basis_vector(9, symbol);
                        if twisted.contains(&(big_r, big_c)) {
                            u.matmul(&e)
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        QuantumLatinSquare::from_entries(entries).expect("fixture entries are 9x1")
    };

    let left = build(
        &|r, c| (6 - r - c) % 3,
        &|big_r, big_c| (3 + big_c - big_r) % 3,
        &[(2, 0), (2, 2)],
    );
    let right = build(
        &|r, c| (3 + r - c) % 3,
        &|big_r, big_c| (big_r + big_c) % 3,
        &[(1, 2), (2, 0)],
    );
    (left, right)
}

/// Isometry block ℂ²→ℂ⁴ with columns sign_a·|ket_a⟩ and sign_b·|ket_b⟩.
fn iso_block(a: (f64, usize), b: (f64, usize)) -> CMatrix {
    let mut m = CMatrix::zeros(4, 2);
    m.set(a.1, 0, Complex64::new(a.0, 0.0));
    m.set(b.1, 1, Complex64::new(b.0, 0.0));
    m
}

/// 4×4 operator Σ sign·|ket⟩⟨bra| over the listed terms.
fn part_block(terms: [(f64, usize, usize); 2]) -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    for (sign, ket, bra) in terms {
        m.set(ket, bra, Complex64::new(sign, 0.0));
    }
    m
}

type IsoCell = (usize, usize, (f64, usize), (f64, usize));

// (row, col, a-column, b-column) of each nonzero block, as typeset.
const Q_CELLS: [IsoCell; 16] = [
    (0, 0, (1.0, 0), (1.0, 1)),
    (0, 1, (1.0, 2), (1.0, 3)),
    (1, 0, (1.0, 2), (1.0, 3)),
    (1, 1, (1.0, 1), (1.0, 0)),
    (2, 2, (1.0, 0), (-1.0, 1)),
    (2, 3, (-1.0, 2), (1.0, 3)),
    (3, 2, (1.0, 2), (-1.0, 3)),
    (3, 3, (1.0, 0), (-1.0, 1)),
    (4, 4, (1.0, 1), (1.0, 2)),
    (4, 5, (1.0, 0), (1.0, 3)),
    (5, 4, (-1.0, 0), (1.0, 3)),
    (5, 5, (-1.0, 1), (1.0, 2)),
    (6, 6, (1.0, 0), (1.0, 2)),
    (6, 7, (-1.0, 1), (1.0, 3)),
    (7, 6, (1.0, 1), (1.0, 3)),
    (7, 7, (-1.0, 0), (1.0, 2)),
];

const K_CELLS: [IsoCell; 16] = [
    (0, 0, (1.0, 0), (1.0, 1)),
    (0, 1, (1.0, 2), (1.0, 3)),
    (1, 0, (1.0, 2), (1.0, 3)),
    (1, 1, (1.0, 0), (1.0, 1)),
    (2, 2, (1.0, 0), (1.0, 1)),
    (2, 3, (1.0, 3), (1.0, 2)),
    (3, 2, (1.0, 2), (1.0, 3)),
    (3, 3, (1.0, 1), (1.0, 0)),
    (4, 4, (1.0, 2), (1.0, 1)),
    (4, 5, (1.0, 3), (1.0, 0)),
    (5, 4, (1.0, 3), (1.0, 0)),
    (5, 5, (1.0, 2), (1.0, 1)),
    (6, 6, (1.0, 2), (1.0, 0)),
    (6, 7, (1.0, 3), (1.0, 1)),
    (7, 6, (1.0, 3), (1.0, 1)),
    (7, 7, (1.0, 2), (1.0, 0)),
];

type PartCell = (usize, usize, [(f64, usize, usize); 2]);

// (row, col, two signed |ket⟩⟨bra| terms) of each nonzero part, as typeset.
const T_CELLS: [PartCell; 16] = [
    (0, 0, [(1.0, 0, 0), (1.0, 1, 1)]),
    (0, 1, [(1.0, 3, 2), (1.0, 2, 3)]),
    (1, 0, [(1.0, 2, 2), (1.0, 3, 3)]),
    (1, 1, [(1.0, 1, 0), (1.0, 0, 1)]),
    (2, 2, [(1.0, 0, 0), (-1.0, 1, 1)]),
    (2, 3, [(1.0, 3, 2), (-1.0, 2, 3)]),
    (3, 2, [(1.0, 2, 2), (-1.0, 3, 3)]),
    (3, 3, [(1.0, 0, 1), (-1.0, 1, 0)]),
    (4, 4, [(1.0, 2, 1), (1.0, 1, 2)]),
    (4, 5, [(1.0, 3, 0), (1.0, 0, 3)]),
    (5, 4, [(1.0, 3, 0), (-1.0, 0, 3)]),
    (5, 5, [(1.0, 2, 1), (-1.0, 1, 2)]),
    (6, 6, [(1.0, 2, 0), (1.0, 0, 2)]),
    (6, 7, [(1.0, 3, 1), (-1.0, 1, 3)]),
    (7, 6, [(1.0, 3, 1), (1.0, 1, 3)]),
    (7, 7, [(1.0, 2, 0), (-1.0, 0, 2)]),
];

fn iso_square_from_cells(cells: &[IsoCell]) -> IsometrySquare {
    let mut blocks: Vec<Vec<Option<CMatrix>>> = vec![vec![None; 8]; 8];
    for &(i, j, a, b) in cells {
        blocks[i][j] = Some(iso_block(a, b));
    }
    IsometrySquare::new(8, 4, blocks).expect("fixture blocks are 4x2")
}

/// The 8×8 pair of isometry squares Q, K (n=8, d=4, block dimensions 2 or 0)
/// and the skew PPM T printed alongside them, each encoded exactly as
/// typeset, signs included.
///
/// The three arrays are returned independently: T is the printed array, not
/// the composition of the returned Q and K. As typeset, `compose(K, Q)`
/// reproduces the printed T at 15 of the 16 nonzero cells but yields
/// |2⟩⟨2|+|3⟩⟨3| at cell (0,1) where the printed T has |3⟩⟨2|+|2⟩⟨3| — and
/// the printed Q, K therefore fail the orthogonality check (the (0,1) and
/// (1,0) parts coincide), while the printed T alone is a valid orthogonal
/// skew PPM. Tests assert this state of affairs rather than patching either
/// array.
pub fn example_qlis_pair_dim8() -> (IsometrySquare, IsometrySquare, SkewPpm) {
    let q = iso_square_from_cells(&Q_CELLS);
    let k = iso_square_from_cells(&K_CELLS);
    let mut parts: Vec<Vec<CMatrix>> = vec![vec![CMatrix::zeros(4, 4); 8]; 8];
    for &(i, j, terms) in &T_CELLS {
        parts[i][j] = part_block(terms);
    }
    let t = SkewPpm::new(8, 4, parts).expect("fixture parts are 4x4");
    (q, k, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{classify_operator, Tolerance};
    use crate::qlis::{check_orthogonal_sppm, compose_skew_ppm, validate_qlis, validate_skew_ppm};
    use crate::qls::{
        apply_equivalence, check_orthogonal, classicality_obstruction, is_classical,
        validate_qls, EquivalenceTransform, Method,
    };

    #[test]
    fn qls4_validates_and_is_not_classical() {
        let q = example_qls_dim4();
        let report = validate_qls(&q, Tolerance::default());
        assert!(report.pass, "worst violation {}", report.worst);
        assert!(!is_classical(&q, Tolerance::default()));
        for (j, want) in [3, 2, 1, 0].into_iter().enumerate() {
            assert_eq!(q.entry(3, j), &CMatrix::basis_vector(4, want));
        }
    }

    #[test]
    fn qls4_conjugate_entry() {
        let q = example_qls_dim4().conjugate();
        // (i|0⟩+2|3⟩)/√5 conjugates to (−i|0⟩+2|3⟩)/√5.
        let e = q.entry(1, 1);
        assert_eq!(e.get(0, 0), -tag("i/sqrt5"));
        assert_eq!(e.get(3, 0), tag("2/sqrt5"));
    }

    #[test]
    fn qls4_obstruction_value() {
        let witness = classicality_obstruction(&example_qls_dim4(), Tolerance::default())
            .expect("superposition entries give a witness");
        let expected = 2.0 / 5f64.sqrt();
        assert!(
            (witness.value - expected).abs() < 1e-12,
            "got {} expected {expected}",
            witness.value
        );
    }

    #[test]
    fn u9_is_unitary_with_expected_entries() {
        let u = example_unitary_u();
        let report = classify_operator(&u, Tolerance::default());
        assert!(report.is_unitary, "U must be unitary");
        assert_eq!(u.get(3, 3), tag("(1+i)/sqrt3"));
        assert_eq!(u.get(8, 8), Complex64::ONE);
    }

    #[test]
    fn dim9_pair_validates_and_is_orthogonal_under_all_methods() {
        let (left, right) = example_orthogonal_pair_dim9();
        assert!(validate_qls(&left, Tolerance::default()).pass);
        assert!(validate_qls(&right, Tolerance::default()).pass);
        for method in Method::ALL {
            let report = check_orthogonal(&left, &right, method, Tolerance::default()).unwrap();
            assert!(
                report.pass,
                "method {:?} violation {}",
                method, report.max_violation
            );
        }
    }

    #[test]
    fn dim9_left_printed_spot_checks() {
        let u = example_unitary_u();
        let (left, right) = example_orthogonal_pair_dim9();
        // Row 0 of both squares as typeset.
        for (j, want) in [0, 2, 1, 3, 5, 4, 6, 8, 7].into_iter().enumerate() {
            assert_eq!(left.entry(0, j), &CMatrix::basis_vector(9, want));
            assert_eq!(right.entry(0, j), &CMatrix::basis_vector(9, want));
        }
        // Left row 6 starts U|3⟩, U|5⟩, U|4⟩ then |6⟩, |8⟩, |7⟩.
        assert!(left.entry(6, 0).max_abs_diff(&u.matmul(&CMatrix::basis_vector(9, 3))) == 0.0);
        assert!(left.entry(6, 1).max_abs_diff(&u.matmul(&CMatrix::basis_vector(9, 5))) == 0.0);
        assert!(left.entry(6, 2).max_abs_diff(&u.matmul(&CMatrix::basis_vector(9, 4))) == 0.0);
        assert_eq!(left.entry(6, 3), &CMatrix::basis_vector(9, 6));
        // Right row 3 ends U|0⟩, U|2⟩, U|1⟩.
        assert!(right.entry(3, 6).max_abs_diff(&u.matmul(&CMatrix::basis_vector(9, 0))) == 0.0);
        assert!(right.entry(3, 8).max_abs_diff(&u.matmul(&CMatrix::basis_vector(9, 1))) == 0.0);
    }

    #[test]
    fn dim9_left_u_blocks_reproduced_by_equivalence() {
        // Applying U globally to the untwisted block pattern must reproduce
        // the left square exactly on its twisted blocks.
        let (left, _) = example_orthogonal_pair_dim9();
        let untwisted = {
            let entries: Vec<Vec<CMatrix>> = (0..9)
                .map(|row| {
                    (0..9)
                        .map(|col| {
                            let (big_r, r) = (row / 3, row % 3);
                            let (big_c, c) = (col / 3, col % 3);
                            let symbol = 3 * ((3 + big_c - big_r) % 3) + (6 - r - c) % 3;
                            CMatrix::basis_vector(9, symbol)
                        })
                        .collect()
                })
                .collect();
            QuantumLatinSquare::from_entries(entries).unwrap()
        };
        let mut t = EquivalenceTransform::identity(9);
        t.unitary = example_unitary_u();
        let twisted_everywhere = apply_equivalence(&untwisted, &t).unwrap();
        for &(big_r, big_c) in &[(2usize, 0usize), (2, 2)] {
            for r in 0..3 {
                for c in 0..3 {
                    let (i, j) = (3 * big_r + r, 3 * big_c + c);
                    assert!(
                        left.entry(i, j).max_abs_diff(twisted_everywhere.entry(i, j)) < 1e-15,
                        "mismatch at ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn dim9_left_obstruction_is_sqrt_two_thirds() {
        let (left, _) = example_orthogonal_pair_dim9();
        let witness = classicality_obstruction(&left, Tolerance::default()).unwrap();
        let expected = (2.0f64 / 3.0).sqrt();
        assert!(
            (witness.value - expected).abs() < 1e-12,
            "got {} expected {expected}",
            witness.value
        );
        // The witness pairs a plain |3⟩ cell with a U|3⟩ cell.
        assert_eq!((witness.row_a, witness.col_a), (0, 3));
        assert_eq!((witness.row_b, witness.col_b), (6, 0));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn dim9_pair_matches_the_full_literal_tables() {
        // Every cell as typeset: (twisted, symbol) per position.
        const T: bool = true;
        const F: bool = false;
        #[rustfmt::skip]
        let left: [[(bool, usize); 9]; 9] = [
            [(F,0),(F,2),(F,1), (F,3),(F,5),(F,4), (F,6),(F,8),(F,7)],
            [(F,2),(F,1),(F,0), (F,5),(F,4),(F,3), (F,8),(F,7),(F,6)],
            [(F,1),(F,0),(F,2), (F,4),(F,3),(F,5), (F,7),(F,6),(F,8)],
            [(F,6),(F,8),(F,7), (F,0),(F,2),(F,1), (F,3),(F,5),(F,4)],
            [(F,8),(F,7),(F,6), (F,2),(F,1),(F,0), (F,5),(F,4),(F,3)],
            [(F,7),(F,6),(F,8), (F,1),(F,0),(F,2), (F,4),(F,3),(F,5)],
            [(T,3),(T,5),(T,4), (F,6),(F,8),(F,7), (T,0),(T,2),(T,1)],
            [(T,5),(T,4),(T,3), (F,8),(F,7),(F,6), (T,2),(T,1),(T,0)],
            [(T,4),(T,3),(T,5), (F,7),(F,6),(F,8), (T,1),(T,0),(T,2)],
        ];
        #[rustfmt::skip]
        let right: [[(bool, usize); 9]; 9] = [
            [(F,0),(F,2),(F,1), (F,3),(F,5),(F,4), (F,6),(F,8),(F,7)],
            [(F,1),(F,0),(F,2), (F,4),(F,3),(F,5), (F,7),(F,6),(F,8)],
            [(F,2),(F,1),(F,0), (F,5),(F,4),(F,3), (F,8),(F,7),(F,6)],
            [(F,3),(F,5),(F,4), (F,6),(F,8),(F,7), (T,0),(T,2),(T,1)],
            [(F,4),(F,3),(F,5), (F,7),(F,6),(F,8), (T,1),(T,0),(T,2)],
            [(F,5),(F,4),(F,3), (F,8),(F,7),(F,6), (T,2),(T,1),(T,0)],
            [(T,6),(T,8),(T,7), (F,0),(F,2),(F,1), (F,3),(F,5),(F,4)],
            [(T,7),(T,6),(T,8), (F,1),(F,0),(F,2), (F,4),(F,3),(F,5)],
            [(T,8),(T,7),(T,6), (F,2),(F,1),(F,0), (F,5),(F,4),(F,3)],
        ];

        let u = example_unitary_u();
        let (built_left, built_right) = example_orthogonal_pair_dim9();
        for (square, table, name) in
            [(&built_left, &left, "left"), (&built_right, &right, "right")]
        {
            for i in 0..9 {
                for j in 0..9 {
                    let (twisted, symbol) = table[i][j];
                    let base = CMatrix::basis_vector(9, symbol);
                    let expected = if twisted { u.matmul(&base) } else { base };
                    assert!(
                        square.entry(i, j).max_abs_diff(&expected) == 0.0,
                        "{name} square cell ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn dim9_pair_compatibility_and_two_member_family() {
        let (left, right) = example_orthogonal_pair_dim9();

        // Embedded as isometry squares, the pair stays orthogonal and the
        // verdict matches the square-level checker.
        let embedded = crate::qlis::check_orthogonal_qlis(
            &crate::qlis::embed_qls_as_qlis(&left),
            &crate::qlis::embed_qls_as_qlis(&right),
            Tolerance::default(),
        )
        .unwrap();
        let square =
            check_orthogonal(&left, &right, Method::Gram, Tolerance::default()).unwrap();
        assert_eq!(embedded.pass, square.pass);
        assert!(embedded.pass);
        assert_eq!(embedded.nonzero_count, 81);
        assert!((embedded.common_trace - 1.0).abs() < 1e-12);

        // As a two-member family, both family modes accept it.
        let family = [left, right];
        for mode in [crate::qls::FamilyMode::Pairwise, crate::qls::FamilyMode::Grmz] {
            let report =
                crate::qls::check_mutually_orthogonal(&family, mode, Tolerance::default())
                    .unwrap();
            assert!(report.pass, "mode {:?}: {:?}", mode, report.max_violation);
        }
    }

    #[test]
    fn qls4_embeds_and_canonicalizes_trivially() {
        let q = example_qls_dim4();
        let embedded = crate::qlis::embed_qls_as_qlis(&q);
        assert_eq!((embedded.n(), embedded.d()), (4, 4));
        assert!(crate::qlis::validate_qlis(&embedded, Tolerance::default()).pass);

        // First row is already the ordered basis, so canonicalization is a
        // no-op with W = I.
        let (canon, w) = crate::qls::canonicalize_first_row(&q);
        assert!(w.max_abs_diff(&CMatrix::identity(4)) < 1e-15);
        assert!(canon.entry(1, 1).max_abs_diff(q.entry(1, 1)) < 1e-15);
    }

    #[test]
    fn u9_as_singleton_diagonal_square() {
        let s =
            crate::qlis::diagonal_from_unitaries(&[example_unitary_u()], Tolerance::default())
                .unwrap();
        assert_eq!((s.n(), s.d()), (1, 9));
        assert!(crate::qlis::validate_qlis(&s, Tolerance::default()).pass);
    }

    #[test]
    fn printed_t_part_traces() {
        let (_, _, t) = example_qlis_pair_dim8();
        // T_00 = |0⟩⟨0|+|1⟩⟨1| has trace inner product 2 with itself.
        let g = crate::linalg::trace_inner(t.part(0, 0), t.part(0, 0)).unwrap();
        assert_eq!(g, Complex64::new(2.0, 0.0));
        // Nonzero parts all share that trace; a·d² accounts for n·d.
        let mut total = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                total += crate::linalg::trace_inner(t.part(i, j), t.part(i, j)).unwrap().re;
            }
        }
        assert!((total - 32.0).abs() < 1e-12);
    }

    #[test]
    fn qlis8_squares_validate() {
        let (q, k, _) = example_qlis_pair_dim8();
        assert_eq!((q.n(), q.d()), (8, 4));
        assert!(validate_qlis(&q, Tolerance::default()).pass);
        assert!(validate_qlis(&k, Tolerance::default()).pass);
        let dims_flat: Vec<usize> = q.block_dims().into_iter().flatten().collect();
        assert_eq!(dims_flat.iter().sum::<usize>(), 32);
        assert!(dims_flat.iter().all(|&a| a == 0 || a == 2));
    }

    #[test]
    fn printed_t_is_a_valid_orthogonal_sppm() {
        let (_, _, t) = example_qlis_pair_dim8();
        assert!(validate_skew_ppm(&t, Tolerance::default()).pass);
        let report = check_orthogonal_sppm(&t, Tolerance::default());
        assert!(report.pass, "{report:?}");
        assert_eq!(report.nonzero_count, 16);
        assert!((report.common_trace - 2.0).abs() < 1e-12);
    }

    #[test]
    fn composition_matches_printed_t_except_one_typeset_cell() {
        // As typeset, the composed array agrees with the printed T at every
        // nonzero cell except (0,1); see the constructor docs.
        let (q, k, t) = example_qlis_pair_dim8();
        let composed = compose_skew_ppm(&k, &q).unwrap();
        let mut mismatches = Vec::new();
        for i in 0..8 {
            for j in 0..8 {
                if composed.part(i, j).max_abs_diff(t.part(i, j)) > 1e-12 {
                    mismatches.push((i, j));
                }
            }
        }
        assert_eq!(mismatches, vec![(0, 1)], "unexpected mismatch set");

        let expected_composed_01 = part_block([(1.0, 2, 2), (1.0, 3, 3)]);
        assert!(composed.part(0, 1).max_abs_diff(&expected_composed_01) < 1e-15);

        // The composition is still a valid skew PPM, but the coincidence of
        // parts (0,1) and (1,0) breaks orthogonality.
        assert!(validate_skew_ppm(&composed, Tolerance::default()).pass);
        let report = check_orthogonal_sppm(&composed, Tolerance::default());
        assert!(!report.pass);
        assert_eq!(report.nonzero_count, 16);
        assert!(report.gram_violation > 1.0);

        // The opposite orientation strays further from the printed array
        // (sign flips on the antisymmetric parts on top of the (0,1) cell),
        // confirming which composition the printed array was meant to be.
        let reversed = compose_skew_ppm(&q, &k).unwrap();
        let mut reversed_mismatches = Vec::new();
        for i in 0..8 {
            for j in 0..8 {
                if reversed.part(i, j).max_abs_diff(t.part(i, j)) > 1e-12 {
                    reversed_mismatches.push((i, j));
                }
            }
        }
        assert!(reversed_mismatches.len() > 1, "got {reversed_mismatches:?}");
        assert!(reversed_mismatches.contains(&(3, 3)));
    }
}
