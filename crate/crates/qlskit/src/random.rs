//! Seeded random generators for property tests and randomized suites.
//!
//! Everything here takes an explicit `Rng` so runs are reproducible from a
//! seed; [`rng_from_seed`] gives the standard ChaCha stream used throughout
//! the test suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::linalg::{CMatrix, Complex64};
use crate::qls::{apply_equivalence, EquivalenceTransform, QuantumLatinSquare};

pub fn rng_from_seed(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn standard_normal(rng: &mut impl Rng) -> f64 {
    // Box–Muller from two uniforms.
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn random_gaussian_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

/// Haar-ish random unitary: Gram–Schmidt on a complex Gaussian matrix, with a
/// re-orthogonalization pass for numerical headroom.
#[allow(clippy::needless_range_loop)]
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| (0..n).map(|_| random_gaussian_complex(rng)).collect())
        .collect();
    for pass in 0..2 {
        for j in 0..n {
            for i in 0..j {
                let proj: Complex64 = (0..n).map(|k| cols[i][k].conj() * cols[j][k]).sum();
                for k in 0..n {
                    let v = cols[i][k];
                    cols[j][k] -= proj * v;
                }
            }
            let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 && pass == 0 {
                // Degenerate draw; replace the column and redo it.
                cols[j] = (0..n).map(|_| random_gaussian_complex(rng)).collect();
            }
            let inv = 1.0 / norm;
            for z in cols[j].iter_mut() {
                *z *= inv;
            }
        }
    }
    CMatrix::from_fn(n, n, |r, c| cols[c][r])
}

pub fn random_phase(rng: &mut impl Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.random::<f64>() * 2.0 * std::f64::consts::PI)
}

pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

/// Random equivalence transform: random unitary, phases, and permutations.
pub fn random_equivalence(n: usize, rng: &mut impl Rng) -> EquivalenceTransform {
    EquivalenceTransform {
        unitary: random_unitary(n, rng),
        phases: (0..n).map(|_| (0..n).map(|_| random_phase(rng)).collect()).collect(),
        row_perm: random_permutation(n, rng),
        col_perm: random_permutation(n, rng),
    }
}

/// Random valid quantum Latin square: a cyclic classical square pushed
/// through a random equivalence.
pub fn random_qls(n: usize, rng: &mut impl Rng) -> QuantumLatinSquare {
    let symbols: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let base = QuantumLatinSquare::from_classical(&symbols).expect("cyclic square is well-formed");
    apply_equivalence(&base, &random_equivalence(n, rng)).expect("dimensions agree")
}

/// Random pair with a known orthogonality verdict, built from two cyclic
/// Latin squares of prime order pushed through equivalences that share their
/// permutations (which preserves the verdict): slope pairs (1,2) stay
/// orthogonal, a repeated slope stays non-orthogonal.
pub fn random_qls_pair(
    p: usize,
    orthogonal: bool,
    rng: &mut impl Rng,
) -> (QuantumLatinSquare, QuantumLatinSquare) {
    let mols = crate::qls::generate_cyclic_mols(p, 2).expect("prime order");
    let (base_a, base_b) = if orthogonal {
        (mols[0].clone(), mols[1].clone())
    } else {
        (mols[0].clone(), mols[0].clone())
    };
    let shared_rows = random_permutation(p, rng);
    let shared_cols = random_permutation(p, rng);
    let mut ta = random_equivalence(p, rng);
    let mut tb = random_equivalence(p, rng);
    ta.row_perm = shared_rows.clone();
    ta.col_perm = shared_cols.clone();
    tb.row_perm = shared_rows;
    tb.col_perm = shared_cols;
    (
        apply_equivalence(&base_a, &ta).expect("dimensions agree"),
        apply_equivalence(&base_b, &tb).expect("dimensions agree"),
    )
}
