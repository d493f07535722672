//! PT-symmetric tight-binding lattices with a local two-state pseudospin.
//!
//! Builds the single-particle Hamiltonian of a chain or ring whose sites carry
//! two modes, with a balanced gain/loss pair at mirror sites; computes complex
//! spectra with a dense eigensolver; splits exchange-symmetric lattices into two
//! uncoupled scalar lattices; and locates PT-symmetry-breaking thresholds and
//! their dependence on the impurity position.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`). The `*64`
//! aliases at the crate root are the double-precision types used by the CLI.

pub mod diagram;
pub mod eigen;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod profile;
pub mod ring;
pub mod scalar;
pub mod sector;
pub mod spectrum;
pub mod spin;
pub mod threshold;

pub use diagram::{all_sites, phase_diagram, scalar_phase_diagram, DiagramMetadata, PhaseDiagram, PhaseRow};
pub use eigen::{eigenpairs, eigenvalues, EigenPairs, EigenSolver};
pub use error::{Error, Result};
pub use lattice::{assemble_hamiltonian, check_pt_symmetry, check_pt_symmetry_local, is_exchange_symmetric, LatticeSpec};
pub use matrix::ComplexMatrix;
pub use profile::{build_profile, Boundary, ProfileKind, TunnelingProfile};
pub use ring::{ring_threshold_formula, RingSpec};
pub use scalar::Real;
pub use sector::{
    assemble_scalar_hamiltonian, decompose, decomposition_basis, recompose, verify_direct_sum, DirectSumReport,
    ScalarLatticeSpec, SectorBasis, Sectors,
};
pub use spectrum::{classify_spectrum, multiset_distance, residual_check, Phase, Spectrum};
pub use spin::SpinMatrix;
pub use threshold::{
    find_threshold, sector_threshold_min, GainFamily, GainRay, SectorThreshold, ThresholdOptions, ThresholdResult,
    ThresholdStatus,
};

pub type SpinMatrix64 = SpinMatrix<f64>;
pub type TunnelingProfile64 = TunnelingProfile<f64>;
pub type LatticeSpec64 = LatticeSpec<f64>;
pub type ScalarLatticeSpec64 = ScalarLatticeSpec<f64>;
pub type RingSpec64 = RingSpec<f64>;
pub type ComplexMatrix64 = ComplexMatrix<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type GainRay64 = GainRay<f64>;
pub type ThresholdResult64 = ThresholdResult<f64>;
pub type PhaseDiagram64 = PhaseDiagram<f64>;

pub type SpinMatrix32 = SpinMatrix<f32>;
pub type LatticeSpec32 = LatticeSpec<f32>;
pub type ComplexMatrix32 = ComplexMatrix<f32>;
pub type Spectrum32 = Spectrum<f32>;
