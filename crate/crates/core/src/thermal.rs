//! Finite-temperature measures: the special-set eigenbasis, Bell-diagonal dot states,
//! Wootters concurrence and quantum mutual information.
//!
//! The special set is `ε_M = 2ω`, `ε₁ = ε₂ = 0`, `λ₁ = −λ₂ = √2·λ`. Each of its four levels
//! `−Δ, −ω, ω, Δ` (with `Δ = √(ω² + 4λ²)`) holds one odd and one even eigenvector:
//!
//! | level | odd sector                     | even sector                    |
//! |-------|--------------------------------|--------------------------------|
//! | −Δ    | `η₊|1⟩Φ⁻ + ζ₊|0⟩Ψ⁺` (up to sign) | `ζ₊|0⟩Φ⁺ + η₊|1⟩Ψ⁻` (up to sign) |
//! | −ω    | `|0⟩Ψ⁻`                        | `|0⟩Φ⁻`                        |
//! | ω     | `|1⟩Φ⁺`                        | `|1⟩Ψ⁺`                        |
//! | Δ     | `ζ₊|1⟩Φ⁻ + η₊|0⟩Ψ⁺` (up to sign) | `η₊|0⟩Φ⁺ + ζ₊|1⟩Ψ⁻` (up to sign) |
//!
//! Tracing out `f` leaves a Bell-diagonal dot state whose weights are collected in
//! [`ThermalWeights::exact`]. [`ThermalWeights::printed`] keeps the lumped variant that
//! assigns both `−Δ` eigenvectors to the odd block; it does not match the Gibbs state and
//! is only used for the closed-form mutual information.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{self, ComplexMatrix, LinalgError, CLAMP_TOL};
use crate::states::{marginal, DensityMatrix, Dot};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThermalError {
    #[error("omega must be positive, got {0}")]
    NonPositiveOmega(f64),
    #[error("lambda must be non-negative, got {0}")]
    NegativeLambda(f64),
    #[error("temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialEigenbasis {
    pub omega: f64,
    pub lam: f64,
    pub delta: f64,
    pub eta_plus: f64,
    pub eta_minus: f64,
    pub zeta_plus: f64,
    pub zeta_minus: f64,
    /// `E₁ = −Δ, E₂ = −ω, E₃ = ω, E₄ = Δ`.
    pub energies: [f64; 4],
}

pub fn special_eigenbasis(omega: f64, lam: f64) -> Result<SpecialEigenbasis, ThermalError> {
    if !(omega > 0.0) {
        return Err(ThermalError::NonPositiveOmega(omega));
    }
    if !(lam >= 0.0) {
        return Err(ThermalError::NegativeLambda(lam));
    }
    let delta = (omega * omega + 4.0 * lam * lam).sqrt();
    let two_l = 2.0 * lam;
    let plus = omega + delta;
    let norm_plus = (two_l * two_l + plus * plus).sqrt();
    let (eta_plus, zeta_plus) = (two_l / norm_plus, plus / norm_plus);
    // ω − Δ cancels catastrophically for small λ; ω − Δ = −4λ²/(ω + Δ) is exact
    let minus = -4.0 * lam * lam / plus;
    let norm_minus = (two_l * two_l + minus * minus).sqrt();
    let (eta_minus, zeta_minus) = if norm_minus == 0.0 {
        (1.0, 0.0)
    } else {
        (two_l / norm_minus, minus / norm_minus)
    };
    Ok(SpecialEigenbasis {
        omega,
        lam,
        delta,
        eta_plus,
        eta_minus,
        zeta_plus,
        zeta_minus,
        energies: [-delta, -omega, omega, delta],
    })
}

/// Unnormalized Bell weights together with their normalizer.
///
/// Energies enter as `e^{−(Eₙ − E₁)/T}`, so `z` is `2Σₙe^{−Eₙ/T}` rescaled by `e^{E₁/T}`;
/// the ratios are unaffected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalWeights {
    pub phi_plus: f64,
    pub phi_minus: f64,
    pub psi_plus: f64,
    pub psi_minus: f64,
    pub z: f64,
}

fn boltzmann_factors(basis: &SpecialEigenbasis, temperature: f64) -> Result<[f64; 4], ThermalError> {
    if !(temperature > 0.0) {
        return Err(ThermalError::NonPositiveTemperature(temperature));
    }
    let e0 = basis.energies[0];
    Ok(basis.energies.map(|e| (-(e - e0) / temperature).exp()))
}

impl ThermalWeights {
    /// Weights of the traced-out Gibbs state.
    pub fn exact(basis: &SpecialEigenbasis, temperature: f64) -> Result<Self, ThermalError> {
        let [x1, x2, x3, x4] = boltzmann_factors(basis, temperature)?;
        let (ep2, em2) = (basis.eta_plus.powi(2), basis.eta_minus.powi(2));
        let (zp2, zm2) = (basis.zeta_plus.powi(2), basis.zeta_minus.powi(2));
        Ok(Self {
            phi_plus: zp2 * x1 + x3 + ep2 * x4,
            phi_minus: ep2 * x1 + x2 + em2 * x4,
            psi_plus: zp2 * x1 + x3 + zm2 * x4,
            psi_minus: ep2 * x1 + x2 + zp2 * x4,
            z: 2.0 * (x1 + x2 + x3 + x4),
        })
    }

    /// The lumped weights in which both `−Δ` eigenvectors sit in the odd block.
    pub fn printed(basis: &SpecialEigenbasis, temperature: f64) -> Result<Self, ThermalError> {
        let [x1, x2, x3, x4] = boltzmann_factors(basis, temperature)?;
        let (ep2, em2) = (basis.eta_plus.powi(2), basis.eta_minus.powi(2));
        let (zp2, zm2) = (basis.zeta_plus.powi(2), basis.zeta_minus.powi(2));
        Ok(Self {
            phi_minus: (ep2 + em2) * x1 + x2 + em2 * x4,
            psi_plus: (zp2 + zm2) * x1 + x3 + zm2 * x4,
            phi_plus: x3 + ep2 * x4,
            psi_minus: x2 + zp2 * x4,
            z: 2.0 * (x1 + x2 + x3 + x4),
        })
    }

    pub fn sum(&self) -> f64 {
        self.phi_plus + self.phi_minus + self.psi_plus + self.psi_minus
    }

    /// `[Φ⁺, Φ⁻, Ψ⁺, Ψ⁻] / Z`.
    pub fn probabilities(&self) -> [f64; 4] {
        [self.phi_plus, self.phi_minus, self.psi_plus, self.psi_minus].map(|w| w / self.z)
    }
}

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Bell vectors `Φ⁺, Φ⁻, Ψ⁺, Ψ⁻` in the ψ basis, `Φ± = (|00⟩ ± |11⟩)/√2`,
/// `Ψ± = (|10⟩ ± |01⟩)/√2`.
pub fn bell_vectors() -> [[Complex64; 4]; 4] {
    let c = |x: f64| Complex64::new(x, 0.0);
    [
        [c(S), c(0.0), c(0.0), c(S)],
        [c(S), c(0.0), c(0.0), c(-S)],
        [c(0.0), c(S), c(S), c(0.0)],
        [c(0.0), c(S), c(-S), c(0.0)],
    ]
}

/// `Σ_k p_k |B_k⟩⟨B_k|` over the Bell basis.
pub fn bell_diagonal(p: [f64; 4]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    for (w, v) in p.iter().zip(bell_vectors()) {
        let proj = ComplexMatrix::outer(&v).scale(Complex64::new(*w, 0.0));
        m = &m + &proj;
    }
    m
}

/// Thermal two-dot state of the special set, from the exact Bell weights.
pub fn thermal_dot_state(omega: f64, lam: f64, temperature: f64) -> Result<DensityMatrix, ThermalError> {
    let basis = special_eigenbasis(omega, lam)?;
    let w = ThermalWeights::exact(&basis, temperature)?;
    Ok(DensityMatrix::new_unchecked(bell_diagonal(w.probabilities())))
}

/// `σ_y ⊗ σ_y` in the ψ basis.
fn sigma_yy() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    m[(0, 3)] = Complex64::new(-1.0, 0.0);
    m[(3, 0)] = Complex64::new(-1.0, 0.0);
    m[(1, 2)] = Complex64::new(1.0, 0.0);
    m[(2, 1)] = Complex64::new(1.0, 0.0);
    m
}

/// Square roots of the eigenvalues of `R = ρ(σ_y⊗σ_y)ρ*(σ_y⊗σ_y)`, descending.
///
/// `R` is not Hermitian, so the eigenvalues are taken from `√ρ ρ̃ √ρ`, which is Hermitian
/// and has the same spectrum.
pub fn wootters_roots(rho: &DensityMatrix) -> Result<[f64; 4], LinalgError> {
    let m = rho.matrix();
    let yy = sigma_yy();
    let tilde = &(&yy * &m.conj()) * &yy;
    let sqrt_rho = m.hermitian_map(|x| if x <= 0.0 { 0.0 } else { x.sqrt() })?;
    let mut h = &(&sqrt_rho * &tilde) * &sqrt_rho;
    // symmetrize away rounding before the Hermitian solver
    h = (&h + &h.adjoint()).scale(Complex64::new(0.5, 0.0));
    let es = linalg::eigh(&h)?;
    let mut roots = [0.0; 4];
    for (k, &v) in es.values.iter().rev().enumerate() {
        roots[k] = if v < CLAMP_TOL { 0.0 } else { v.sqrt() };
    }
    Ok(roots)
}

pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64, LinalgError> {
    let l = wootters_roots(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalConcurrence {
    /// Wootters concurrence of [`thermal_dot_state`].
    pub value: f64,
    /// `max(0, 2·max(pₖ) − 1)` over the Bell weights.
    pub bell_shortcut: f64,
}

pub fn thermal_concurrence(omega: f64, lam: f64, temperature: f64) -> Result<ThermalConcurrence, ThermalError> {
    let basis = special_eigenbasis(omega, lam)?;
    let w = ThermalWeights::exact(&basis, temperature)?;
    let p = w.probabilities();
    let rho = DensityMatrix::new_unchecked(bell_diagonal(p));
    let value = wootters_concurrence(&rho)?;
    let pmax = p.iter().copied().fold(0.0, f64::max);
    let bell_shortcut = (2.0 * pmax - 1.0).max(0.0);
    debug_assert!((value - bell_shortcut).abs() <= 1e-12);
    Ok(ThermalConcurrence { value, bell_shortcut })
}

/// `|1 − η₊² − η₋²|`, the low-temperature strong-coupling formula taken literally.
pub fn low_temperature_concurrence(omega: f64, lam: f64) -> Result<f64, ThermalError> {
    let b = special_eigenbasis(omega, lam)?;
    Ok((1.0 - b.eta_plus.powi(2) - b.eta_minus.powi(2)).abs())
}

/// `−Σ p log₂ p` over a probability vector, with `0·log 0 = 0`.
pub fn shannon_bits(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64, LinalgError> {
    let values = rho.eigenvalues()?;
    Ok(shannon_bits(&values).max(0.0))
}

/// `S(ρ₁) + S(ρ₂) − S(ρ)` in bits, clamped at zero.
pub fn quantum_mutual_information(rho: &DensityMatrix) -> Result<f64, LinalgError> {
    let s1 = von_neumann_entropy(&marginal(rho, Dot::Dot1))?;
    let s2 = von_neumann_entropy(&marginal(rho, Dot::Dot2))?;
    let s12 = von_neumann_entropy(rho)?;
    Ok((s1 + s2 - s12).max(0.0))
}

/// Mutual information from four sorted Bell-sector populations, grouped as
/// `S(d₁)` over `(ρ₁₁+ρ₂₂, ρ₃₃+ρ₄₄)` and `S(d₂)` over `(ρ₁₁+ρ₃₃, ρ₂₂+ρ₄₄)`.
pub fn closed_form_qmi(w: &ThermalWeights) -> f64 {
    let [pp, pm, sp, sm] = w.probabilities();
    let r11 = 0.5 * (pp + pm + (pp - pm).abs());
    let r22 = 0.5 * (sp + sm + (sp - sm).abs());
    let r33 = 0.5 * (pp + pm - (pp - pm).abs());
    let r44 = 0.5 * (sp + sm - (sp - sm).abs());
    let s1 = shannon_bits(&[r11 + r22, r33 + r44]);
    let s2 = shannon_bits(&[r11 + r33, r22 + r44]);
    s1 + s2 - shannon_bits(&[r11, r22, r33, r44])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalQmi {
    /// Mutual information of [`thermal_dot_state`] through partial traces and eigenvalues.
    pub value: f64,
    /// [`closed_form_qmi`] of the printed (lumped) weights.
    pub closed_form: f64,
}

pub fn thermal_qmi(omega: f64, lam: f64, temperature: f64) -> Result<ThermalQmi, ThermalError> {
    let basis = special_eigenbasis(omega, lam)?;
    let rho = thermal_dot_state(omega, lam, temperature)?;
    let value = quantum_mutual_information(&rho)?;
    let closed_form = closed_form_qmi(&ThermalWeights::printed(&basis, temperature)?);
    Ok(ThermalQmi { value, closed_form })
}
