//! Coadjoint invariants of regular factors of the unitriangular Lie algebra.
//!
//! Given a regular ideal `M`, the crate builds the symbol diagram of the
//! factor `L = n/m`, the attached permutation and reflection products, and
//! one extremal minor of the characteristic matrix per cross cell. The top
//! `lambda`-coefficients of those minors are invariants of the coadjoint
//! representation; [`verify`] checks that, and the counting identities,
//! with exact rational arithmetic.

pub mod diagram;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod minors;
pub mod poly;
pub mod roots;
pub mod verify;
pub mod weyl;

pub use diagram::{build_diagram, diagram_counts, Diagram, DiagramCounts, Symbol};
pub use error::{Error, Result};
pub use invariants::{
    all_invariants, invariant_for, triangular_decomposition, Case, InvariantRecord,
};
pub use minors::{build_phi, enumerate_extremal, is_extremal, minor_lambda, CharMatrix, MinorSpec};
pub use poly::{LambdaPolynomial, Polynomial, Rational};
pub use roots::{
    close_ideal, compare_prec, ideal_from_pairs, root_sum, RegularIdeal, Root, RootSet,
};
pub use verify::{full_report, VerificationReport, VerifyOptions};
pub use weyl::{build_w, inversions, reflection_product, Permutation};
