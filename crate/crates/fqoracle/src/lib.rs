//! Finite-field counting oracle for plane quartics. Everything here is
//! exact integer arithmetic: table-backed small fields, linear systems of
//! quartics cut out by tangency conditions, singularity detection by
//! scanning points of bounded degree, an elimination-based reference for
//! validating that scan, and configuration counts weighted by Frobenius
//! action. The module is deliberately independent of the symbolic side of
//! the workspace so that its counts can serve as an external check.

pub mod count;
pub mod field;
pub mod poly;
pub mod singular;
pub mod slowref;
pub mod system;

pub use count::{count_configurations, count_nonsingular, ConfigSpace, CountError};
pub use field::{field, parse_prime_power, Fq, MAX_FIELD_SIZE};
pub use poly::{monomials, mul_forms, quartic_monomials, Form, Quartic};
pub use singular::{is_singular, is_singular_at, is_singular_with, scan_points_budget, ScanCtx};
pub use slowref::slow_is_singular;
pub use system::{projective_plane_points, solve_system, LinearSystemSpec, SystemError};
