//! Exact word algebra in free groups of finite rank.

mod automorphism;
mod literal;
mod nielsen;
mod word;

pub use automorphism::{
    conjugator, solve_twist, verify_conjugacy, verify_conjugacy_up_to_lift, AutError,
    FreeGroupAut,
};
pub use literal::{parse_word, WordParseError};
pub use nielsen::{column_matrix, nielsen_lift};
pub use word::{reduce, Letter, Syllable, Word};
