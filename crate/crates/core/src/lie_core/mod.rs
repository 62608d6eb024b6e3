//! Free Lie algebras on Lyndon bases and finite-dimensional nilpotent Lie algebras.

pub mod free;
pub mod nilpotent;
pub mod word;

pub use free::{lyndon_basis, Alphabet, FreeLieAlgebra, Generator, LieElement, DEFAULT_CLASS, MAX_CLASS};
pub use nilpotent::{evaluate, NilpotentAlgebra};
pub use word::{lyndon_words, witt_dimension, Word};
