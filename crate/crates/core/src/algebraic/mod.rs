//! Guessing and checking algebraic equations for series, kernel extraction
//! for the slice functional equation, and growth rates.

pub mod growth;
pub mod guess;
pub mod kernel;
pub mod linalg;
pub mod verify;

pub use growth::{growth_estimate, growth_exact, GrowthCandidates, GrowthMode};
pub use guess::{guess_min_poly, AlgebraicGuess, GuessConfig};
pub use kernel::{kernel_extract, kernel_root_check, KernelDecomposition, KernelRootReport};
pub use verify::verify_annihilation;
