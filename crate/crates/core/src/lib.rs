//! Exact Hamming distances from a function `f: F_q^m → F_q` to every
//! codeword of the first-order generalized Reed-Muller code.
//!
//! The codeword `u ↦ <u,v> + t` is at distance `q^m - N_{v,t}(f)` from `f`,
//! where `N_{v,t}(f)` counts the points on which they agree. The counts are
//! available by four independent routes:
//!
//! * [`profile_bruteforce`]: direct enumeration;
//! * [`profile_via_transform`] / [`profile_via_fast_transform`]: coefficients
//!   of the group-algebra transform of `Z^f`;
//! * [`profile_via_linsys`]: the unique solution of a square integer system;
//! * [`incidence_counts`] of the hyperplane arrangement attached to `f`.
//!
//! All arithmetic is exact.

pub mod arrangement;
pub mod distance;
pub mod error;
pub mod field;
pub mod group_algebra;
pub mod linalg;
pub mod linsys;
pub mod transform;

pub use arrangement::{arrangement_of, incidence_counts, is_centered, Arrangement};
pub use distance::{
    covering_radius, distances, lift, profile_bruteforce, profile_via_fast_transform,
    profile_via_transform, CoveringRadius, DistanceProfile, DistanceSummary, FTable,
    ProfileViolation,
};
pub use error::{Error, Result};
pub use field::{FieldSpec, Fq, VecM};
pub use group_algebra::GaElem;
pub use linsys::{
    build_cramer, build_system, profile_via_linsys, profiles_via_linsys, solution_space_check,
    verify_block_structure, BlockStructure, Hyperplane, LinearSystem, RowKind, SolutionSpaceReport,
};
pub use transform::{
    double_transform, double_transform_closed_form, image_basis_index, kernel_basis,
    transform_fast, transform_fast_counted, transform_naive, transform_naive_counted, GFunction,
};
