//! Model parameters, the occupation basis and the 8×8 parity-block Hamiltonian.
//!
//! Basis kets are `|n_f, n_d1, n_d2⟩ = (f†)^n_f (d1†)^n_d1 (d2†)^n_d2 |0,0,0⟩`. The eight
//! kets are numbered φ₁…φ₈ and arranged odd sector first:
//!
//! ```text
//! φ₁=|1,0,0⟩ φ₂=|0,0,1⟩ φ₃=|0,1,0⟩ φ₄=|1,1,1⟩ | φ₅=|0,0,0⟩ φ₆=|1,0,1⟩ φ₇=|1,1,0⟩ φ₈=|0,1,1⟩
//! ```
//!
//! The Hamiltonian is assembled twice: once from the closed-form matrix
//! ([`build_hamiltonian`]) and once by acting with every second-quantized term on every
//! basis ket ([`build_hamiltonian_from_operators`]). Both must agree bit for bit.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub const DIM: usize = 8;
pub const BLOCK: usize = 4;

const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("parameter `{name}` is not finite ({value})")]
    NotFinite { name: &'static str, value: f64 },
    #[error("temperature must be non-negative, got {0}")]
    NegativeTemperature(f64),
}

/// Energy unit used by a run. The stored parameters are always in one absolute unit; the
/// convention only fixes what `ε_M` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum UnitConvention {
    /// `ε_M = 1`.
    #[serde(rename = "eps_m=1")]
    EpsM,
    /// `ω = ε_M / 2 = 1`, i.e. `ε_M = 2`.
    #[default]
    #[serde(rename = "omega=1")]
    Omega,
}

impl UnitConvention {
    pub fn eps_m(self) -> f64 {
        match self {
            UnitConvention::EpsM => 1.0,
            UnitConvention::Omega => 2.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            UnitConvention::EpsM => "eps_m=1",
            UnitConvention::Omega => "omega=1",
        }
    }
}

impl fmt::Display for UnitConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for UnitConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "eps_m=1" | "eps_m" => Ok(UnitConvention::EpsM),
            "omega=1" | "omega" => Ok(UnitConvention::Omega),
            other => Err(format!(
                "unknown unit convention `{other}` (expected eps_m=1 or omega=1)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Majorana overlap ε_M.
    pub eps_m: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub lam1: f64,
    pub lam2: f64,
    /// k_B·T with k_B = 1.
    pub temperature: f64,
}

impl ModelParams {
    pub fn new(eps_m: f64, eps1: f64, eps2: f64, lam1: f64, lam2: f64, temperature: f64) -> Result<Self, ParamError> {
        let p = Self {
            eps_m,
            eps1,
            eps2,
            lam1,
            lam2,
            temperature,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameters given in a unit convention; `ε_M` is fixed by the convention.
    pub fn in_units(
        units: UnitConvention,
        eps1: f64,
        eps2: f64,
        lam1: f64,
        lam2: f64,
        temperature: f64,
    ) -> Result<Self, ParamError> {
        Self::new(units.eps_m(), eps1, eps2, lam1, lam2, temperature)
    }

    /// The thermal special case `ε_M = 2ω`, `ε₁ = ε₂ = 0`, `λ₁ = −λ₂ = √2·λ`.
    pub fn special_set(omega: f64, lam: f64, temperature: f64) -> Result<Self, ParamError> {
        let l = std::f64::consts::SQRT_2 * lam;
        Self::new(2.0 * omega, 0.0, 0.0, l, -l, temperature)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        for (name, value) in [
            ("eps_m", self.eps_m),
            ("eps1", self.eps1),
            ("eps2", self.eps2),
            ("lam1", self.lam1),
            ("lam2", self.lam2),
            ("temperature", self.temperature),
        ] {
            if !value.is_finite() {
                return Err(ParamError::NotFinite { name, value });
            }
        }
        if self.temperature < 0.0 {
            return Err(ParamError::NegativeTemperature(self.temperature));
        }
        Ok(())
    }

    /// ω = ε_M / 2.
    pub fn omega(&self) -> f64 {
        0.5 * self.eps_m
    }

    pub fn with_couplings(self, lam1: f64, lam2: f64) -> Self {
        Self { lam1, lam2, ..self }
    }

    pub fn with_temperature(self, temperature: f64) -> Self {
        Self { temperature, ..self }
    }
}

/// Mean-field Coulomb correction: only shifts the dot levels.
pub fn coulomb_shifted(p: ModelParams, shift1: f64, shift2: f64) -> Result<ModelParams, ParamError> {
    ModelParams::new(p.eps_m, p.eps1 + shift1, p.eps2 + shift2, p.lam1, p.lam2, p.temperature)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OccupationState {
    pub n_f: u8,
    pub n_d1: u8,
    pub n_d2: u8,
    /// 1-based φ index.
    pub index: usize,
    pub parity: Parity,
}

impl OccupationState {
    /// Zero-based row/column in the parity-ordered Hamiltonian.
    pub fn position(&self) -> usize {
        self.index - 1
    }

    fn occupations(&self) -> [u8; 3] {
        [self.n_f, self.n_d1, self.n_d2]
    }
}

/// Occupations `(n_f, n_d1, n_d2)` of φ₁…φ₈.
pub const BASIS: [(u8, u8, u8); DIM] = [
    (1, 0, 0),
    (0, 0, 1),
    (0, 1, 0),
    (1, 1, 1),
    (0, 0, 0),
    (1, 0, 1),
    (1, 1, 0),
    (0, 1, 1),
];

/// Looks up the φ index of an occupation triple. Panics if an occupation is not 0 or 1.
pub fn basis_index(n_f: u8, n_d1: u8, n_d2: u8) -> OccupationState {
    assert!(
        n_f <= 1 && n_d1 <= 1 && n_d2 <= 1,
        "occupations must be 0 or 1, got ({n_f},{n_d1},{n_d2})"
    );
    let position = BASIS
        .iter()
        .position(|&b| b == (n_f, n_d1, n_d2))
        .expect("basis covers all eight occupation triples");
    let parity = if (n_f + n_d1 + n_d2) % 2 == 1 {
        Parity::Odd
    } else {
        Parity::Even
    };
    OccupationState {
        n_f,
        n_d1,
        n_d2,
        index: position + 1,
        parity,
    }
}

pub fn basis_state(position: usize) -> OccupationState {
    let (f, d1, d2) = BASIS[position];
    basis_index(f, d1, d2)
}

/// Real symmetric 8×8 Hamiltonian in the parity-ordered φ basis.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianMatrix {
    entries: [[f64; DIM]; DIM],
}

impl HamiltonianMatrix {
    pub fn zeros() -> Self {
        Self {
            entries: [[0.0; DIM]; DIM],
        }
    }

    pub fn entries(&self) -> &[[f64; DIM]; DIM] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row][col]
    }

    /// 1-based accessor, matching the φ numbering.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row - 1][col - 1]
    }

    /// One 4×4 parity block.
    pub fn block(&self, parity: Parity) -> [[f64; BLOCK]; BLOCK] {
        let off = match parity {
            Parity::Odd => 0,
            Parity::Even => BLOCK,
        };
        let mut b = [[0.0; BLOCK]; BLOCK];
        for (i, row) in b.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.entries[off + i][off + j];
            }
        }
        b
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..DIM {
            for j in 0..DIM {
                m = m.max((self.entries[i][j] - other.entries[i][j]).abs());
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        (0..DIM).all(|i| (0..DIM).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// True when every odd/even coupling entry is exactly zero.
    pub fn cross_parity_is_zero(&self) -> bool {
        (0..BLOCK).all(|i| (BLOCK..DIM).all(|j| self.entries[i][j] == 0.0 && self.entries[j][i] == 0.0))
    }

    pub fn shifted(&self, c: f64) -> Self {
        let mut out = self.clone();
        for i in 0..DIM {
            out.entries[i][i] += c;
        }
        out
    }

    fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i - 1][j - 1] = v;
        self.entries[j - 1][i - 1] = v;
    }
}

/// Diagonal energy `n_d1·ε₁ + n_d2·ε₂ + (n_f − ½)·ε_M` of an occupation state.
pub fn diagonal_energy(p: &ModelParams, s: &OccupationState) -> f64 {
    f64::from(s.n_d1) * p.eps1 + f64::from(s.n_d2) * p.eps2 + (f64::from(s.n_f) - 0.5) * p.eps_m
}

/// Closed-form Hamiltonian matrix.
pub fn build_hamiltonian(p: &ModelParams) -> HamiltonianMatrix {
    let mut h = HamiltonianMatrix::zeros();
    for pos in 0..DIM {
        let s = basis_state(pos);
        h.entries[pos][pos] = diagonal_energy(p, &s);
    }
    let a = p.lam1 * INV_SQRT2;
    let b = p.lam2 * INV_SQRT2;
    // odd block
    h.set_sym(1, 2, -b);
    h.set_sym(1, 3, a);
    h.set_sym(2, 4, -a);
    h.set_sym(3, 4, b);
    // even block
    h.set_sym(5, 6, -b);
    h.set_sym(5, 7, -a);
    h.set_sym(6, 8, a);
    h.set_sym(7, 8, b);
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    F = 0,
    D1 = 1,
    D2 = 2,
}

#[derive(Debug, Clone, Copy)]
enum Ladder {
    Create(Mode),
    Annihilate(Mode),
}

/// Applies one ladder operator to an occupation ket, returning the fermionic sign.
fn apply_ladder(op: Ladder, occ: [u8; 3]) -> Option<(f64, [u8; 3])> {
    let (mode, create) = match op {
        Ladder::Create(m) => (m as usize, true),
        Ladder::Annihilate(m) => (m as usize, false),
    };
    if (occ[mode] == 1) == create {
        return None;
    }
    let passed: u8 = occ[..mode].iter().sum();
    let sign = if passed.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut out = occ;
    out[mode] = u8::from(create);
    Some((sign, out))
}

/// Applies a product of ladder operators (written left to right, acting right to left).
fn apply_product(ops: &[Ladder], occ: [u8; 3]) -> Option<(f64, [u8; 3])> {
    let mut sign = 1.0;
    let mut state = occ;
    for &op in ops.iter().rev() {
        let (s, next) = apply_ladder(op, state)?;
        sign *= s;
        state = next;
    }
    Some((sign, state))
}

/// Builds the Hamiltonian by applying each second-quantized term of `Σ εᵢ dᵢ†dᵢ + V` to
/// every basis ket, with the Majorana operators already expanded into `f`, `f†`.
pub fn build_hamiltonian_from_operators(p: &ModelParams) -> HamiltonianMatrix {
    use Ladder::{Annihilate as A, Create as C};
    use Mode::{D1, D2, F};

    let a = p.lam1 * INV_SQRT2;
    let b = p.lam2 * INV_SQRT2;
    let half_m = 0.5 * p.eps_m;
    let terms: [(f64, &[Ladder]); 12] = [
        (p.eps1, &[C(D1), A(D1)]),
        (p.eps2, &[C(D2), A(D2)]),
        (half_m, &[C(F), A(F)]),
        (-half_m, &[A(F), C(F)]),
        (-a, &[C(F), C(D1)]),
        (-a, &[A(F), C(D1)]),
        (-a, &[A(D1), C(F)]),
        (-a, &[A(D1), A(F)]),
        (-b, &[C(F), C(D2)]),
        (b, &[A(F), C(D2)]),
        (b, &[A(D2), C(F)]),
        (-b, &[A(D2), A(F)]),
    ];

    let mut h = HamiltonianMatrix::zeros();
    for col in 0..DIM {
        let ket = basis_state(col).occupations();
        for (coef, ops) in terms.iter() {
            if let Some((sign, out)) = apply_product(ops, ket) {
                let row = basis_index(out[0], out[1], out[2]).position();
                h.entries[row][col] += sign * coef;
            }
        }
    }
    h
}
