//! Complete `A_α` spectra of bug graphs.
//!
//! `A_α(G) = α·D(G) + (1 − α)·A(G)` interpolates between the adjacency matrix
//! (`α = 0`) and half the signless Laplacian (`α = ½`). A bug of order `n`
//! and diameter `d` has `(n − d + 2)·α − 1` as an eigenvalue of multiplicity
//! `n − d − 1`; its other `d + 1` eigenvalues are those of a symmetric
//! tridiagonal quotient matrix. For symmetric bugs (`d` even, `i = d/2`) the
//! spectral radius already comes from a tridiagonal matrix of order `d/2 + 1`.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`] | [`BugSpec`], [`HJoinSpec`], dense `A_α` assembly |
//! | [`structured`] | quotient matrices, bug spectra, halving |
//! | [`eigensolve`] | Sturm bisection, cyclic Jacobi, power iteration |
//! | [`verify`] | structured-vs-dense cross-checks and extremal scans |
//!
//! ```
//! use bug_spectra::{bug_spectrum, Alpha, BugSpec, SolveConfig};
//!
//! let bug = BugSpec::from_pqr(8, 2, 3).unwrap();
//! let spectrum = bug_spectrum(&bug, Alpha::new(0.6).unwrap(), &SolveConfig::default());
//! assert_eq!(spectrum.total_multiplicity(), 11);
//! assert!((spectrum.max().unwrap() - 6.9144).abs() < 5e-5);
//! ```

pub mod alpha;
pub mod eigensolve;
pub mod error;
pub mod graph;
pub mod spectrum;
pub mod structured;
pub mod tridiag;
pub mod verify;

pub use alpha::Alpha;
pub use eigensolve::{
    gershgorin_interval, jacobi_eigenvalues, perron_pair, sturm_count, tridiag_eigenvalues, tridiag_largest,
    PerronPair, SolveConfig,
};
pub use error::{Error, Result};
pub use graph::{
    assemble_dense_alpha, bug_from_pqr, bug_to_hjoin, complete_graph_alpha_spectrum, BugSpec, DenseSym, HJoinSpec,
    RegularComponent,
};
pub use spectrum::{Eigenvalue, Source, Spectrum};
pub use structured::{
    bug_closed_form, bug_spectrum, bug_tridiagonal, halved_spectral_radius, halved_tridiagonal, hjoin_spectrum,
    proof_decomposition, quotient_matrix, spectral_radius, HalvingDecomposition,
};
pub use tridiag::SymTridiag;
