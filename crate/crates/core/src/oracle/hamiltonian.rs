//! Matrix representations of the two-atom dispersive Hamiltonian and of the
//! full dissipative atoms-plus-cavity Hamiltonian.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{RepeaterError, Result};
use crate::params::{DerivedParams, ModelParams};
use crate::state::ket_name;

pub type CMat = DMatrix<Complex64>;

/// Smallest cavity cutoff that holds every excitation of the initial data.
pub const MIN_PHOTON_CUTOFF: usize = 2;
pub const DEFAULT_PHOTON_CUTOFF: usize = 3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum HamiltonianKind {
    /// Dispersive exchange Hamiltonian on two atoms, basis `ee, eg, ge, gg`.
    Effective,
    /// Two atoms and one cavity mode, basis `atoms ⊗ |n⟩` with `n ≤ photon_cutoff`.
    Full {
        /// Field frequency `ω`.
        omega: f64,
        /// Atomic transition frequency `ω_a = ω + Δ`.
        omega_atom: f64,
        photon_cutoff: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleHamiltonian {
    pub kind: HamiltonianKind,
    pub matrix: CMat,
    /// Human-readable name of each basis vector, in matrix order.
    pub basis: Vec<String>,
}

impl OracleHamiltonian {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Diagonal free part `H₀` of a full Hamiltonian (`None` for the effective one).
    pub fn free_part(&self, p: &ModelParams) -> Option<Vec<Complex64>> {
        match self.kind {
            HamiltonianKind::Effective => None,
            HamiltonianKind::Full {
                omega,
                omega_atom,
                photon_cutoff,
            } => Some(free_diagonal(p, omega, omega_atom, photon_cutoff)),
        }
    }
}

/// `σ⁺ = |e⟩⟨g|` in the `(e, g)` basis.
fn sigma_plus() -> CMat {
    CMat::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO])
}

fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// `λ(σ₁⁺σ₁⁻ + σ₂⁺σ₂⁻) + λ(σ₁⁺σ₂⁻ + σ₂⁺σ₁⁻)` for an interacting atom pair.
pub fn build_effective(d: &DerivedParams) -> OracleHamiltonian {
    let id = CMat::identity(2, 2);
    let sp = sigma_plus();
    let sm = sp.adjoint();
    let sp1 = kron(&sp, &id);
    let sm1 = kron(&sm, &id);
    let sp2 = kron(&id, &sp);
    let sm2 = kron(&id, &sm);
    let stark = &sp1 * &sm1 + &sp2 * &sm2;
    let exchange = &sp1 * &sm2 + &sp2 * &sm1;
    let matrix = (stark + exchange) * d.lambda;
    OracleHamiltonian {
        kind: HamiltonianKind::Effective,
        matrix,
        basis: (0..4).map(|i| ket_name(i, 2)).collect(),
    }
}

fn full_index(atoms: usize, n: usize, cutoff: usize) -> usize {
    atoms * (cutoff + 1) + n
}

fn excited_count(atoms: usize) -> usize {
    2 - atoms.count_ones() as usize
}

fn free_diagonal(p: &ModelParams, omega: f64, omega_atom: f64, cutoff: usize) -> Vec<Complex64> {
    let mut diag = vec![ZERO; 4 * (cutoff + 1)];
    for atoms in 0..4 {
        let excited = excited_count(atoms) as f64;
        // Σ σz/2 over two atoms = (excited − ground)/2 = excited − 1
        let atomic = omega_atom * (excited - 1.0);
        for n in 0..=cutoff {
            let nf = n as f64;
            diag[full_index(atoms, n, cutoff)] = Complex64::new(
                omega * nf + atomic,
                -0.5 * p.gamma * excited - 0.5 * p.kappa * nf,
            );
        }
    }
    diag
}

/// Full dissipative Jaynes–Cummings Hamiltonian of two atoms in one lossy mode.
///
/// `H₀ = ωa†a + Σᵢ ω_a σᵢᶻ/2 − (iΓ/2)Σᵢ σᵢ⁺σᵢ⁻ − (iκ/2)a†a`,
/// `H₁ = g Σᵢ (aσᵢ⁺ + a†σᵢ⁻)`, with the atomic frequency set to `ω + Δ`.
pub fn build_full(p: &ModelParams, omega: f64, photon_cutoff: usize) -> Result<OracleHamiltonian> {
    if photon_cutoff < MIN_PHOTON_CUTOFF {
        return Err(RepeaterError::CutoffTooSmall {
            cutoff: photon_cutoff,
            minimum: MIN_PHOTON_CUTOFF,
        });
    }
    validate_rates(p)?;
    let omega_atom = omega + p.delta;
    let cutoff = photon_cutoff;
    let dim = 4 * (cutoff + 1);
    let mut h = CMat::zeros(dim, dim);
    for (k, e) in free_diagonal(p, omega, omega_atom, cutoff)
        .into_iter()
        .enumerate()
    {
        h[(k, k)] = e;
    }
    let coupling = Complex64::new(p.g, 0.0);
    for atoms in 0..4usize {
        for which in 0..2 {
            // Atom `which` is the most significant bit for which = 0.
            let bit = 1usize << (1 - which);
            if atoms & bit == 0 {
                continue; // only start from a ground-state atom
            }
            let raised = atoms & !bit;
            for n in 1..=cutoff {
                // a σ⁺ : |g, n⟩ → √n |e, n−1⟩, and its adjoint a†σ⁻.
                let from = full_index(atoms, n, cutoff);
                let to = full_index(raised, n - 1, cutoff);
                let amp = coupling * (n as f64).sqrt();
                h[(to, from)] += amp;
                h[(from, to)] += amp;
            }
        }
    }
    let basis = (0..4)
        .flat_map(|a| (0..=cutoff).map(move |n| format!("{},{n}", ket_name(a, 2))))
        .collect();
    Ok(OracleHamiltonian {
        kind: HamiltonianKind::Full {
            omega,
            omega_atom,
            photon_cutoff,
        },
        matrix: h,
        basis,
    })
}

/// Rate checks that, unlike [`ModelParams::validate`], also admit `g = 0`.
pub(crate) fn validate_rates(p: &ModelParams) -> Result<()> {
    if p.g == 0.0 {
        ModelParams { g: 1.0, ..*p }.validate()
    } else {
        p.validate()
    }
}

/// Index of `|atoms, n⟩` in a full Hamiltonian with the given cutoff.
pub fn full_basis_index(atom_ket: usize, photons: usize, photon_cutoff: usize) -> usize {
    full_index(atom_ket, photons, photon_cutoff)
}

/// Total excitation number of a full-model basis vector.
pub fn excitations(index: usize, photon_cutoff: usize) -> usize {
    let atoms = index / (photon_cutoff + 1);
    let n = index % (photon_cutoff + 1);
    excited_count(atoms) + n
}

/// Lifts a two-atom operator acting on register positions `positions` to
/// the full `2^atoms`-dimensional register.
pub fn embed_pair_operator(op: &CMat, positions: [usize; 2], atoms: usize) -> CMat {
    assert_eq!(op.nrows(), 4, "pair operator must be 4x4");
    assert!(positions[0] != positions[1] && positions.iter().all(|&p| p < atoms));
    let dim = 1usize << atoms;
    let shift = |pos: usize| atoms - 1 - pos;
    let (s0, s1) = (shift(positions[0]), shift(positions[1]));
    let mask = (1 << s0) | (1 << s1);
    let pair_of = |i: usize| (((i >> s0) & 1) << 1) | ((i >> s1) & 1);
    let mut out = CMat::zeros(dim, dim);
    for col in 0..dim {
        let rest = col & !mask;
        let pc = pair_of(col);
        for pr in 0..4 {
            let v = op[(pr, pc)];
            if v == ZERO {
                continue;
            }
            let row = rest | ((pr >> 1) << s0) | ((pr & 1) << s1);
            out[(row, col)] += v;
        }
    }
    out
}
