//! Lie algebras over ℚ given by structure constants, their subalgebras,
//! Jordan decomposition and Levi classes.

pub mod algebra;
pub mod builtins;
pub mod jordan;
pub mod levi;
pub mod subalgebra;

pub use algebra::{BracketEntry, LieAlgebra};
pub use jordan::{jordan_decompose, JordanPair};
pub use levi::{levi_semisimple_class, semisimple_class_leq, LeviDecomposition, SemisimpleClass};
pub use subalgebra::{RadicalSeries, Subalgebra};
