//! Exact symbolic computation in the polynomial representation of the Hecke
//! algebra of the symmetric group.
//!
//! The crate builds, entirely over exact rational arithmetic:
//!
//! - [`exactalg`]: Laurent polynomials and rational functions in the formal
//!   parameter `t`, t-numbers `[u]`, the combination `tau = -(t + t^-1)` and
//!   the deformation weights `y_k = -[v_k]/[v_k+1]`;
//! - [`polyring`]: sparse multivariate polynomials in `z_1..z_N` with
//!   rational-function coefficients, divided differences, Hecke generators
//!   `T_i` and Baxterised operators `T_i(u)`, t-Vandermonde products;
//! - [`shapes`]: partitions in a staircase, Yamanouchi words, labeled
//!   diagrams and operator schedules for both bases, Dyck ribbons and the
//!   signed box count `n_lambda`;
//! - [`bases`]: the cyclic vector `ΔΔ`, Kazhdan-Lusztig elements and
//!   (integer-deformed) specialised Macdonald elements as explicit
//!   polynomials, plus the vanishing-property report;
//! - [`transition`]: the expansion of the maximal Macdonald element into KL
//!   elements with y-monomial coefficients, computed by the Dyck-ribbon
//!   recursion, and its full polynomial verification;
//! - [`ctengine`]: homogeneous-limit constant terms `A` (exact Laurent) and
//!   `N` (truncated geometric series), punctured variants, and the
//!   cross-identities tying them to the polynomial evaluations;
//! - [`schubert`]: double Schubert polynomials, the divided-difference
//!   recursion, flagged Jacobi-Trudi determinants and the even-partition
//!   Schubert sum equal to `N`;
//! - [`tableaux`]: weighted enumeration of augmented non-intersecting
//!   lattice paths, staircase fillings and flagged skew tableaux.
//!
//! Three independent routes to the homogeneous evaluations (constant term,
//! Schubert determinants, weighted path enumeration) are cross-checked
//! against each other and against the polynomial side in [`verify`].

pub mod error;
pub mod exactalg;
pub mod qpoly;
pub mod shapes;
pub mod polyring;
pub mod bases;
pub mod transition;
pub mod ctengine;
pub mod schubert;
pub mod tableaux;
pub mod verify;
pub mod cli;

pub use error::PhkError;

/// Bound on enumeration sizes read from the `PHK_MAX_N` environment
/// variable, falling back to `default` when unset or unparseable.
pub fn max_n(default: usize) -> usize {
    std::env::var("PHK_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}
