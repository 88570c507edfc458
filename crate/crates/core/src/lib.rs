//! Categorical dualities in one-dimensional quantum lattice models.
//!
//! The pipeline: encode a spherical fusion category `D` (objects, fusion
//! multiplicities, F-symbols) and a (possibly fermionic) module category
//! `M` over it; enumerate the constrained chain Hilbert space built from
//! the module action; assemble categorically symmetric bond operators
//! from the module associator; construct symmetry and intertwiner matrix
//! product operators; and verify duality claims by tensor identities and
//! sector-resolved exact diagonalization at desk scale.
//!
//! Modules map onto the stages of that pipeline:
//!
//! - [`fusion_core`]: fusion ring + F-symbols + pentagon verification,
//!   with built-in categories (graded vector spaces, Ising, Deligne
//!   products, truncated quantum-group representation categories).
//! - [`module_data`]: module categories, module associators (F◁),
//!   mixed pentagon, fermionic (Z2-graded) support.
//! - [`chain_space`]: constrained path bases on rings and open chains,
//!   symmetry-twisted closures.
//! - [`operators`]: sparse bond operators and Hamiltonians, plus
//!   occupation-basis fermionic presets.
//! - [`bond_algebra`]: numerical bond-algebra bases and structure
//!   constants, the formal duality criterion.
//! - [`mpo_engine`]: symmetry MPOs, intertwiner MPOs, pulling-through
//!   checks, the gauging map.
//! - [`spectra`]: exact diagonalization, sector decomposition, duality
//!   reports.
//! - [`harness`]: model registry, JSON configs, CSV/report emitters and
//!   the CLI entry points.

pub mod fusion_core;
pub mod linalg;
pub mod module_data;
pub mod chain_space;
pub mod operators;
pub mod bond_algebra;
pub mod mpo_engine;
pub mod spectra;
pub mod harness;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Default tolerance for consistency checks (pentagon, commutators).
pub const CONSISTENCY_TOL: f64 = 1e-10;

/// Default tolerance for spectral comparisons.
pub const SPECTRAL_TOL: f64 = 1e-8;
