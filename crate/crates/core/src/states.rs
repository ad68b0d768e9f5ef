//! Ground states, the reduced two-dot density matrix and single-dot marginals.
//!
//! The two-dot basis is `ψ₁=|00⟩, ψ₂=|10⟩, ψ₃=|01⟩, ψ₄=|11⟩` with `|n_d1 n_d2⟩`. Tracing out
//! the Majorana fermion needs no extra signs because `f` is the leftmost mode of every ket.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::linalg::{self, ComplexMatrix, LinalgError};
use crate::model::{build_hamiltonian, ModelParams, Parity, BASIS, BLOCK, DIM};

/// Tolerance for unit trace and Hermiticity of a [`DensityMatrix`].
pub const STATE_TOL: f64 = 1e-12;
/// Most negative eigenvalue accepted in a [`DensityMatrix`].
pub const PSD_TOL: f64 = 1e-10;
/// Sector ground energies closer than this are treated as a tie.
pub const SECTOR_TIE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("density matrix trace is {0}, expected 1")]
    Trace(f64),
    #[error("density matrix has a negative eigenvalue {0:e}")]
    NotPositive(f64),
    #[error("density matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("{0}")]
    Shape(String),
}

/// Index into the ψ basis for the occupations `(n_d1, n_d2)`.
pub fn psi_index(n_d1: u8, n_d2: u8) -> usize {
    match (n_d1, n_d2) {
        (0, 0) => 0,
        (1, 0) => 1,
        (0, 1) => 2,
        (1, 1) => 3,
        _ => panic!("occupations must be 0 or 1"),
    }
}

/// Occupations `(n_d1, n_d2)` of ψ index `k` (zero-based).
pub fn psi_occupations(k: usize) -> (u8, u8) {
    [(0, 0), (1, 0), (0, 1), (1, 1)][k]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sector {
    Odd,
    Even,
    Mixed,
}

impl From<Parity> for Sector {
    fn from(p: Parity) -> Self {
        match p {
            Parity::Odd => Sector::Odd,
            Parity::Even => Sector::Even,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum TieRule {
    #[default]
    #[serde(rename = "even-first")]
    EvenFirst,
    #[serde(rename = "odd-first")]
    OddFirst,
    #[serde(rename = "both")]
    Both,
}

impl TieRule {
    pub fn label(self) -> &'static str {
        match self {
            TieRule::EvenFirst => "even-first",
            TieRule::OddFirst => "odd-first",
            TieRule::Both => "both",
        }
    }
}

impl fmt::Display for TieRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TieRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "even-first" => Ok(TieRule::EvenFirst),
            "odd-first" => Ok(TieRule::OddFirst),
            "both" => Ok(TieRule::Both),
            other => Err(format!("unknown tie rule `{other}`")),
        }
    }
}

/// Amplitudes `C₁…C₈` over `φ₁…φ₈`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    pub amplitudes: [Complex64; DIM],
    pub sector: Sector,
    pub energy: f64,
}

impl WaveFunction {
    /// Normalizes the amplitudes and infers the sector from which half is populated.
    pub fn new(amplitudes: [Complex64; DIM], energy: f64) -> Result<Self, StateError> {
        let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(StateError::Shape("amplitude vector has zero norm".into()));
        }
        let amplitudes = amplitudes.map(|c| c / norm);
        let odd = amplitudes[..BLOCK].iter().any(|c| c.norm() > 0.0);
        let even = amplitudes[BLOCK..].iter().any(|c| c.norm() > 0.0);
        let sector = match (odd, even) {
            (true, false) => Sector::Odd,
            (false, true) => Sector::Even,
            _ => Sector::Mixed,
        };
        Ok(Self {
            amplitudes,
            sector,
            energy,
        })
    }

    pub fn from_real(amplitudes: [f64; DIM], energy: f64) -> Result<Self, StateError> {
        Self::new(amplitudes.map(|x| Complex64::new(x, 0.0)), energy)
    }

    /// `C_n` with the 1-based φ numbering.
    pub fn c(&self, n: usize) -> Complex64 {
        self.amplitudes[n - 1]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix of dimension 2, 4 or 8.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self, StateError> {
        let herm = m.hermiticity_error();
        if herm > STATE_TOL {
            return Err(StateError::NotHermitian(herm));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(StateError::Trace(tr.re));
        }
        let es = linalg::eigh(&m)?;
        if es.values[0] < -PSD_TOL {
            return Err(StateError::NotPositive(es.values[0]));
        }
        Ok(Self(m))
    }

    /// Skips validation; for matrices that are density matrices by construction.
    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)))
    }

    /// Projector onto a normalized pure state.
    pub fn pure(v: &[Complex64]) -> Result<Self, StateError> {
        Self::new(ComplexMatrix::outer(v))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// 1-based element `ρ_ij`.
    pub fn rho(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i - 1, j - 1)]
    }

    pub fn purity(&self) -> f64 {
        (&self.0 * &self.0).trace().re
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>, LinalgError> {
        Ok(linalg::eigh(&self.0)?.values)
    }
}

/// Result of a ground-state search.
#[derive(Debug, Clone)]
pub struct GroundState {
    /// One state, or both sector ground states when the tie rule is `Both` and they tie.
    pub states: Vec<WaveFunction>,
    /// The two sector minima tie, or the chosen sector's minimum is itself degenerate.
    pub degenerate: bool,
    pub tie_rule: TieRule,
}

impl GroundState {
    pub fn primary(&self) -> &WaveFunction {
        &self.states[0]
    }
}

struct SectorGround {
    energy: f64,
    state: WaveFunction,
    degenerate: bool,
}

fn sector_ground(p: &ModelParams, parity: Parity) -> Result<SectorGround, StateError> {
    let h = build_hamiltonian(p);
    let block = h.block(parity);
    let flat: Vec<f64> = block.iter().flatten().copied().collect();
    let es = linalg::eigh(&ComplexMatrix::from_real(BLOCK, &flat)?)?;
    let offset = match parity {
        Parity::Odd => 0,
        Parity::Even => BLOCK,
    };
    let mut amps = [Complex64::new(0.0, 0.0); DIM];
    for i in 0..BLOCK {
        amps[offset + i] = es.vectors[(i, 0)];
    }
    let degenerate = es.degenerate_clusters()[0].len() > 1;
    Ok(SectorGround {
        energy: es.values[0],
        state: WaveFunction {
            amplitudes: amps,
            sector: parity.into(),
            energy: es.values[0],
        },
        degenerate,
    })
}

/// Lowest-energy eigenstate, found by diagonalizing each parity block separately.
pub fn ground_state(p: &ModelParams, tie_rule: TieRule) -> Result<GroundState, StateError> {
    let odd = sector_ground(p, Parity::Odd)?;
    let even = sector_ground(p, Parity::Even)?;
    if (odd.energy - even.energy).abs() < SECTOR_TIE_TOL {
        let states = match tie_rule {
            TieRule::EvenFirst => vec![even.state],
            TieRule::OddFirst => vec![odd.state],
            TieRule::Both => vec![even.state, odd.state],
        };
        return Ok(GroundState {
            states,
            degenerate: true,
            tie_rule,
        });
    }
    let best = if odd.energy < even.energy { odd } else { even };
    Ok(GroundState {
        states: vec![best.state],
        degenerate: best.degenerate,
        tie_rule,
    })
}

/// Reduced two-dot density matrix from the closed-form element list
/// (`ρ₁₂ = C₁C₇* + C₅C₃*`, `ρ₁₄ = C₁C₄* + C₅C₈*`, …).
pub fn reduce_over_majorana(w: &WaveFunction) -> DensityMatrix {
    let c = |n: usize| w.c(n);
    let pair = |a: usize, b: usize, x: usize, y: usize| c(a) * c(b).conj() + c(x) * c(y).conj();
    let mut m = ComplexMatrix::zeros(4);
    let set = |m: &mut ComplexMatrix, i: usize, j: usize, v: Complex64| {
        m[(i - 1, j - 1)] = v;
        m[(j - 1, i - 1)] = v.conj();
    };
    set(&mut m, 1, 2, pair(1, 7, 5, 3));
    set(&mut m, 1, 3, pair(1, 6, 5, 2));
    set(&mut m, 1, 4, pair(1, 4, 5, 8));
    set(&mut m, 2, 3, pair(3, 2, 7, 6));
    set(&mut m, 2, 4, pair(3, 8, 7, 4));
    set(&mut m, 3, 4, pair(2, 8, 6, 4));
    let sq = |a: usize, b: usize| Complex64::new(c(a).norm_sqr() + c(b).norm_sqr(), 0.0);
    m[(0, 0)] = sq(1, 5);
    m[(1, 1)] = sq(3, 7);
    m[(2, 2)] = sq(2, 6);
    m[(3, 3)] = sq(4, 8);
    DensityMatrix::new_unchecked(m)
}

/// Partial trace over the `f` mode of an 8×8 matrix in the φ basis.
pub fn trace_out_majorana(rho8: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(4);
    for (i, &(fi, a1, a2)) in BASIS.iter().enumerate() {
        for (j, &(fj, b1, b2)) in BASIS.iter().enumerate() {
            if fi == fj {
                out[(psi_index(a1, a2), psi_index(b1, b2))] += rho8[(i, j)];
            }
        }
    }
    out
}

/// Two-dot state of the thermal 8×8 Gibbs state.
pub fn reduce_thermal(p: &ModelParams) -> Result<DensityMatrix, StateError> {
    let rho8 = linalg::gibbs_state(&build_hamiltonian(p), p.temperature)?;
    Ok(DensityMatrix::new_unchecked(trace_out_majorana(&rho8)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dot {
    Dot1,
    Dot2,
}

/// Single-dot state, tracing out the other dot.
pub fn marginal(rho: &DensityMatrix, which: Dot) -> DensityMatrix {
    let m = rho.matrix();
    assert_eq!(m.dim(), 4, "marginal expects a two-dot state");
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..4 {
        let (i1, i2) = psi_occupations(i);
        for j in 0..4 {
            let (j1, j2) = psi_occupations(j);
            let (keep_i, keep_j, same_traced) = match which {
                Dot::Dot1 => (i1, j1, i2 == j2),
                Dot::Dot2 => (i2, j2, i1 == j1),
            };
            if same_traced {
                out[(keep_i as usize, keep_j as usize)] += m[(i, j)];
            }
        }
    }
    DensityMatrix::new_unchecked(out)
}
