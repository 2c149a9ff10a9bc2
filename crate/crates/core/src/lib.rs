//! Monoids defined by permutation relations of abelian type.
//!
//! A subgroup `H` of the symmetric group on `{1, …, n}` together with a
//! relation length `l >= 2` presents the monoid
//!
//! ```text
//! S = < x_1, …, x_n | x_{i_1} ⋯ x_{i_l} = x_{σ(i_1)} ⋯ x_{σ(i_l)}  for all σ in H >
//! ```
//!
//! All relations preserve length, so `S` is graded by word length and every
//! element is a finite equivalence class of words. The crate decides the word
//! problem ([`rewriting`]), certifies cancellativity by searching for finite
//! counterexamples ([`rewriting::MonoidInstance::cancellativity_witness`]),
//! computes in the group of fractions when `H` is transitive abelian
//! ([`fractions`]), checks the embedding of `S` into its universal group when
//! `H` is semiregular abelian ([`embedding`]), and computes radicals and
//! nilpotency in the associated semigroup algebras ([`algebra`]).
//!
//! Letters, permutation points, and rewrite positions are 1-based throughout.

pub mod algebra;
pub mod embedding;
pub mod fractions;
pub mod permgroup;
pub mod rewriting;

pub use permgroup::{generate_closure, GroupClassification, Permutation, PermutationGroup};
pub use rewriting::{MonoidInstance, Word};
