//! Independent oracles shared by the integration tests. Nothing here goes through the
//! library's basis tables: states live in the plain binary Fock basis `|n_f n_d1 n_d2⟩`
//! with `n_f` as the most significant bit, and operators are built by Jordan–Wigner.
#![allow(dead_code)]

use num_complex::Complex64;
use qdwire::linalg::ComplexMatrix;
use qdwire::ModelParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Dense = [[Complex64; 8]; 8];

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_params(r: &mut impl Rng) -> ModelParams {
    ModelParams::new(
        r.gen_range(0.05..3.0),
        r.gen_range(-2.0..2.0),
        r.gen_range(-2.0..2.0),
        r.gen_range(-2.0..2.0),
        r.gen_range(-2.0..2.0),
        r.gen_range(0.0..3.0),
    )
    .unwrap()
}

fn zero() -> Dense {
    [[c(0.0, 0.0); 8]; 8]
}

fn mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = zero();
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn add(a: &Dense, b: &Dense, s: Complex64) -> Dense {
    let mut out = *a;
    for i in 0..8 {
        for j in 0..8 {
            out[i][j] += s * b[i][j];
        }
    }
    out
}

fn dagger(a: &Dense) -> Dense {
    let mut out = zero();
    for i in 0..8 {
        for j in 0..8 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

/// Creation operator of mode `k` (0 = f, 1 = d₁, 2 = d₂) with a Jordan–Wigner string on
/// the modes to its left.
pub fn creation(k: usize) -> Dense {
    let mut out = zero();
    for s in 0..8usize {
        let bit = 1 << (2 - k);
        if s & bit != 0 {
            continue;
        }
        let left = (0..k).filter(|&m| s & (1 << (2 - m)) != 0).count();
        let sign = if left % 2 == 0 { 1.0 } else { -1.0 };
        out[s | bit][s] = c(sign, 0.0);
    }
    out
}

/// The model Hamiltonian built from dot operators and the two Majorana modes, in the
/// binary Fock basis.
pub fn fock_hamiltonian(p: &ModelParams) -> Dense {
    let (fd, d1d, d2d) = (creation(0), creation(1), creation(2));
    let (f, d1, d2) = (dagger(&fd), dagger(&d1d), dagger(&d2d));
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let g1 = add(&fd, &f, c(1.0, 0.0));
    let g1 = add(&zero(), &g1, c(r, 0.0));
    let g2 = add(&zero(), &add(&fd, &f, c(-1.0, 0.0)), c(0.0, r));
    let mut h = zero();
    h = add(&h, &mul(&d1d, &d1), c(p.eps1, 0.0));
    h = add(&h, &mul(&d2d, &d2), c(p.eps2, 0.0));
    h = add(&h, &mul(&g1, &g2), c(0.0, p.eps_m));
    h = add(&h, &mul(&add(&d1d, &d1, c(-1.0, 0.0)), &g1), c(p.lam1, 0.0));
    h = add(&h, &mul(&g2, &add(&d2d, &d2, c(1.0, 0.0))), c(0.0, p.lam2));
    h
}

/// Binary Fock index of `|n_f n_d1 n_d2⟩`.
pub fn fock_index(nf: u8, n1: u8, n2: u8) -> usize {
    4 * nf as usize + 2 * n1 as usize + n2 as usize
}

/// Occupations of the φ₁…φ₈ ordering: odd parity first, then even.
pub const PHI: [(u8, u8, u8); 8] = [
    (1, 0, 0),
    (0, 0, 1),
    (0, 1, 0),
    (1, 1, 1),
    (0, 0, 0),
    (1, 0, 1),
    (1, 1, 0),
    (0, 1, 1),
];

/// Two-dot index in the ψ ordering `|00⟩, |10⟩, |01⟩, |11⟩`.
pub fn psi(n1: u8, n2: u8) -> usize {
    n1 as usize + 2 * n2 as usize
}

/// Fock-space operator rewritten in the φ ordering.
pub fn to_phi_basis(a: &Dense) -> Dense {
    let mut out = zero();
    for (i, &(fi, ai, bi)) in PHI.iter().enumerate() {
        for (j, &(fj, aj, bj)) in PHI.iter().enumerate() {
            out[i][j] = a[fock_index(fi, ai, bi)][fock_index(fj, aj, bj)];
        }
    }
    out
}

/// `Tr_f |ψ⟩⟨ψ|` for amplitudes given over φ₁…φ₈, computed in the Fock basis.
pub fn brute_force_reduce(amps: &[Complex64; 8]) -> [[Complex64; 4]; 4] {
    let mut ket = [c(0.0, 0.0); 8];
    for (n, &(f, a, b)) in PHI.iter().enumerate() {
        ket[fock_index(f, a, b)] = amps[n];
    }
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for nf in 0..2 {
        for a1 in 0..2 {
            for a2 in 0..2 {
                for b1 in 0..2 {
                    for b2 in 0..2 {
                        out[psi(a1, a2)][psi(b1, b2)] +=
                            ket[fock_index(nf, a1, a2)] * ket[fock_index(nf, b1, b2)].conj();
                    }
                }
            }
        }
    }
    out
}

pub fn random_complex(r: &mut impl Rng) -> Complex64 {
    c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn random_amplitudes(r: &mut impl Rng) -> [Complex64; 8] {
    let mut v = [c(0.0, 0.0); 8];
    for x in v.iter_mut() {
        *x = random_complex(r);
    }
    let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    v.map(|x| x / n)
}

pub fn random_hermitian(dim: usize, r: &mut impl Rng) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = c(r.gen_range(-2.0..2.0), 0.0);
        for j in i + 1..dim {
            let z = random_complex(r);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Haar-ish random unitary from Gram–Schmidt on a random complex matrix.
pub fn random_unitary(dim: usize, r: &mut impl Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| random_complex(r)).collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-6 {
            cols.push(v.into_iter().map(|x| x / n).collect());
        }
    }
    let mut m = ComplexMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    m
}

/// Random mixed two-dot state `A A† / Tr(A A†)`.
pub fn random_density(dim: usize, r: &mut impl Rng) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            a[(i, j)] = random_complex(r);
        }
    }
    let m = &a * &a.adjoint();
    let tr = m.trace().re;
    m.scale(c(1.0 / tr, 0.0))
}

pub fn max_diff4(a: &ComplexMatrix, b: &[[Complex64; 4]; 4]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            d = d.max((a[(i, j)] - b[i][j]).norm());
        }
    }
    d
}

/// Bell vectors `Φ±`, `Ψ±` in the ψ ordering.
pub fn bell(k: usize) -> [Complex64; 4] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    match k {
        0 => [c(r, 0.0), z, z, c(r, 0.0)],
        1 => [c(r, 0.0), z, z, c(-r, 0.0)],
        2 => [z, c(r, 0.0), c(r, 0.0), z],
        _ => [z, c(r, 0.0), c(-r, 0.0), z],
    }
}
