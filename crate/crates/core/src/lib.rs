//! Exact-rational computational Lie theory at desk scale.
//!
//! The crate works with finite-dimensional Lie algebras over ℚ given by
//! structure constants (optionally with a faithful matrix realization) and
//! provides:
//!
//! * [`lie`]: brackets, Killing form, radicals, Levi classes, Jordan
//!   decomposition and ranks of solvable subalgebras;
//! * [`grassmann`]: canonical points of `Gr(k, g)`, Plücker coordinates,
//!   the equations of the subvariety of Lie subalgebras and exact limits of
//!   polynomial curves;
//! * [`algebraicity`]: algebraic hulls, replicas and orbit data;
//! * [`families`]: one-parameter families of subalgebras and
//!   semicontinuity scans;
//! * [`integration`]: integration of algebraic subalgebras to parametrized
//!   matrix groups;
//! * [`bouquet`]: gluing patterns, bouquets and the one-dimensional moduli
//!   slice of `SL3`.
//!
//! Sample-parallel loops run on rayon when the `parallel` feature is enabled
//! (the default) and sequentially otherwise; see [`exec`].

pub mod algebraicity;
pub mod bouquet;
pub mod error;
pub mod exec;
pub mod families;
pub mod grassmann;
pub mod integration;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
