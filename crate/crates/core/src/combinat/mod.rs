//! Index combinatorics: tuples, the comparison order, generator sets,
//! standardness, enumeration, the poset P and the θ index map.

pub mod doset;
pub mod enumerate;
pub mod poset;
pub mod theta;
pub mod tuple;

pub use doset::{
    canonical, fmt_word, h_pairs, is_standard, is_standard_monomial, pairs_of_sizes, symbol_ge, DosetContext,
    MinorPair, Symbol, Word,
};
pub use enumerate::{
    check_t, dt_pairs, enumerate_monomials, enumerate_standard, family_generators, monomials_of_length, symbol_blocks,
    word_blocks, Family, Grading,
};
pub use poset::{doset_axioms_check, embed, lattice_check, poset_ge, GroundPoset, PosetElement};
pub use theta::{is_symplectic, symplectic_indices, theta_map, theta_sets, SymplecticIndex};
pub use tuple::{tup, tuple_ge, tuple_gt, tuple_linear_cmp, tuples, IndexTuple};
