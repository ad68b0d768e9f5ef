//! Fermionic partial transpose of the two-dot state and the logarithmic negativity.
//!
//! Transposing dot 1 maps `|n'₁,n'₂⟩⟨n₁,n₂|` to `e^{iπα}|n₁,n'₂⟩⟨n'₁,n₂|` with
//!
//! ```text
//! α = n₂n'₂ + n'₁n'₂ + n₁n₂ + (n₁+n₂)(n'₁+n'₂) + n'₁(n'₁+2)/2 + n₁(n₁+2)/2
//! ```
//!
//! α takes half-integer values, so the phase is always one of `±1, ±i` and is computed
//! exactly as a power of `i`.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{self, ComplexMatrix, LinalgError, CLAMP_TOL};
use crate::states::{psi_index, psi_occupations, DensityMatrix, Sector, WaveFunction};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NegativityError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("analytic negativity needs a {expected:?}-sector state, got {got:?}")]
    WrongSector { expected: Sector, got: Sector },
    #[error("analytic negativity needs real amplitudes (max imaginary part {0:e})")]
    ComplexAmplitudes(f64),
}

/// Twice the phase exponent α, so that the value is an integer.
pub fn alpha_twice(n1p: u8, n2p: u8, n1: u8, n2: u8) -> u32 {
    let (n1p, n2p, n1, n2) = (n1p as u32, n2p as u32, n1 as u32, n2 as u32);
    2 * (n2 * n2p + n1p * n2p + n1 * n2 + (n1 + n2) * (n1p + n2p)) + n1p * (n1p + 2) + n1 * (n1 + 2)
}

/// `e^{iπα} = i^{2α}`.
pub fn phase(n1p: u8, n2p: u8, n1: u8, n2: u8) -> Complex64 {
    match alpha_twice(n1p, n2p, n1, n2) % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Where one slot of the transposed matrix comes from: `out[row][col] = phase · ρ[src]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slot {
    pub phase: Complex64,
    /// Zero-based source `(row, col)` in the original matrix.
    pub source: (usize, usize),
}

/// The full 4×4 slot table of the dot-1 fermionic partial transpose.
pub fn transpose_slots() -> [[Slot; 4]; 4] {
    let mut table = [[Slot {
        phase: Complex64::new(0.0, 0.0),
        source: (0, 0),
    }; 4]; 4];
    for src_row in 0..4 {
        let (n1p, n2p) = psi_occupations(src_row);
        for src_col in 0..4 {
            let (n1, n2) = psi_occupations(src_col);
            let dst = (psi_index(n1, n2p), psi_index(n1p, n2));
            table[dst.0][dst.1] = Slot {
                phase: phase(n1p, n2p, n1, n2),
                source: (src_row, src_col),
            };
        }
    }
    table
}

fn apply_slots(m: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(m.dim(), 4, "partial transpose acts on two-dot states");
    let slots = transpose_slots();
    let mut out = ComplexMatrix::zeros(4);
    for (i, row) in slots.iter().enumerate() {
        for (j, slot) in row.iter().enumerate() {
            out[(i, j)] = slot.phase * m[slot.source];
        }
    }
    out
}

/// Fermionic partial transpose with respect to dot 1.
pub fn fermionic_partial_transpose(rho: &DensityMatrix) -> ComplexMatrix {
    apply_slots(rho.matrix())
}

/// Reorders the dots (`|n₁n₂⟩ → ±|n₂n₁⟩`, minus on `|11⟩` from `d₁†d₂† = −d₂†d₁†`).
fn swap_dots(m: &ComplexMatrix) -> ComplexMatrix {
    let sign = |k: usize| if k == 3 { -1.0 } else { 1.0 };
    let target = |k: usize| {
        let (a, b) = psi_occupations(k);
        psi_index(b, a)
    };
    let mut out = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            out[(target(i), target(j))] = m[(i, j)] * (sign(i) * sign(j));
        }
    }
    out
}

/// Fermionic partial transpose with respect to dot 2, obtained by putting dot 2 first
/// and reusing the dot-1 rule.
pub fn fermionic_partial_transpose_dot2(rho: &DensityMatrix) -> ComplexMatrix {
    apply_slots(&swap_dots(rho.matrix()))
}

/// `ln ‖ρ^{T_f}‖₁`, clamped at zero.
pub fn logarithmic_negativity(rho: &DensityMatrix) -> Result<f64, LinalgError> {
    negativity_of_transposed(&fermionic_partial_transpose(rho))
}

pub fn logarithmic_negativity_dot2(rho: &DensityMatrix) -> Result<f64, LinalgError> {
    negativity_of_transposed(&fermionic_partial_transpose_dot2(rho))
}

fn negativity_of_transposed(t: &ComplexMatrix) -> Result<f64, LinalgError> {
    Ok(linalg::trace_norm(t)?.ln().max(0.0))
}

/// Which parity sector the analytic formulas are written for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorSign {
    /// Even sector, amplitudes `C₅…C₈`.
    Plus,
    /// Odd sector, amplitudes `C₁…C₄`.
    Minus,
}

impl SectorSign {
    pub fn sector(self) -> Sector {
        match self {
            SectorSign::Plus => Sector::Even,
            SectorSign::Minus => Sector::Odd,
        }
    }
}

/// Block entries of `ρ^{T_f}(ρ^{T_f})†` and its eigenvalues for a sector-pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticNegativityIntermediates {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma0: f64,
    pub delta: f64,
    pub mu: f64,
    pub nu: f64,
    /// `r₁, r₂` from the (β, γ₀, μ) block, `r₃, r₄` from the (α, δ, ν) block.
    pub r: [f64; 4],
    pub negativity: f64,
}

impl AnalyticNegativityIntermediates {
    pub fn from_latin(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Self {
        let alpha = a * a + e * e;
        let beta = b * b + f * f;
        let gamma0 = c * c + f * f;
        let delta = e * e + d * d;
        let mu = (b - c) * f;
        let nu = (a - d) * e;
        // each 2×2 block has determinant (product)², so the small root follows from the
        // large one without cancellation
        let pair = |x: f64, y: f64, off: f64, product: f64| {
            let root = ((x - y) * (x - y) + 4.0 * off * off).sqrt();
            let big = 0.5 * (x + y + root);
            let small = if big > 0.0 { product.abs() / big.sqrt() } else { 0.0 };
            (big.sqrt(), small)
        };
        let (s1, s2) = pair(beta, gamma0, mu, b * c + f * f);
        let (s3, s4) = pair(alpha, delta, nu, a * d + e * e);
        let r = [s1 * s1, s2 * s2, s3 * s3, s4 * s4];
        let sum: f64 = [s1, s2, s3, s4].iter().filter(|&&x| x >= CLAMP_TOL).sum();
        Self {
            a,
            b,
            c,
            d,
            e,
            f,
            alpha,
            beta,
            gamma0,
            delta,
            mu,
            nu,
            r,
            negativity: sum.ln().max(0.0),
        }
    }
}

/// Closed-form negativity of a sector-pure ground state with real amplitudes.
pub fn negativity_pure_analytic(
    w: &WaveFunction,
    sign: SectorSign,
) -> Result<AnalyticNegativityIntermediates, NegativityError> {
    if w.sector != sign.sector() {
        return Err(NegativityError::WrongSector {
            expected: sign.sector(),
            got: w.sector,
        });
    }
    let max_im = w.amplitudes.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    if max_im > 1e-14 {
        return Err(NegativityError::ComplexAmplitudes(max_im));
    }
    let c = |n: usize| w.c(n).re;
    let (a, b, cc, d, e, f) = match sign {
        SectorSign::Plus => (
            c(5) * c(5),
            c(7) * c(7),
            c(6) * c(6),
            c(8) * c(8),
            c(6) * c(7),
            c(5) * c(8),
        ),
        SectorSign::Minus => (
            c(1) * c(1),
            c(3) * c(3),
            c(2) * c(2),
            c(4) * c(4),
            c(2) * c(3),
            c(1) * c(4),
        ),
    };
    Ok(AnalyticNegativityIntermediates::from_latin(a, b, cc, d, e, f))
}
