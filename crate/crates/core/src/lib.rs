//! Vietoris–Rips complexes of integer-lattice boxes under the Manhattan
//! metric, with machine-checkable evidence about their topology:
//! dismantling certificates, a discrete Morse matching with its critical-cell
//! census, and an independent Z/2 homology computation.

pub mod caps;
pub mod complex;
pub mod digest;
pub mod error;
pub mod homology;
pub mod lattice;
pub mod morse;
pub mod reduce;

pub use caps::Caps;
pub use complex::{build_complex, gamma_complex, grid_complex, FlagComplex, Simplex};
pub use error::{Error, Result};
pub use lattice::{GammaSpec, GridSpec, IndexSet, LatticePoint};
