//! Dimension lifting between parabolic and elliptic monotonicity formulas.
//!
//! A function `u(x, t)` on `ℝ^d × (0, ∞)` lifts to `v(y) = u(f(y), |y|²/(2d))`
//! on `ℝ^{n·d}`, where `f` sums blocks of `n` coordinates. Backward caloric `u`
//! (`Δu + ∂_t u = 0`) lift to harmonic `v`, spheres in `ℝ^{n·d}` push forward
//! to the weight `G_{t,n}`, and `G_{t,n} → G_t` as `n → ∞`. Elliptic
//! functionals of `v` therefore converge to parabolic functionals of `u`.
//!
//! * [`lift`]: the maps and the chain rule.
//! * [`weights`]: `G_t`, `G_{t,n}` and their comparison.
//! * [`integrate`]: weighted quadrature, Monte Carlo and the push-forward checks.
//! * [`fields`]: test fields with closed-form derivatives.
//! * [`functionals`]: frequencies, Carleman inequalities, two-phase, harmonic-map
//!   and minimal-surface functionals, and monotonicity sweeps.
//!
//! The guide in `book/` walks through each piece; its code blocks run as
//! doc-tests of this crate.

pub mod error;
pub mod fields;
pub mod functionals;
pub mod integrate;
pub mod lift;
pub mod weights;

pub use error::{Error, Result};
pub use lift::{chain_rule_check, ChainRuleCheck, lift_point, lift_point_time, lifted_derivatives, sphere_area, DomainSpec, LiftConfig};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lifting.md")]
    mod lifting {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/integration.md")]
    mod integration {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/frequency.md")]
    mod frequency {}
    #[doc = include_str!("../../../book/src/carleman.md")]
    mod carleman {}
    #[doc = include_str!("../../../book/src/two_phase.md")]
    mod two_phase {}
    #[doc = include_str!("../../../book/src/harmonic_maps.md")]
    mod harmonic_maps {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    mod surfaces {}
}
