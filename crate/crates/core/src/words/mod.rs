//! Free-group words, presentations, abelianization and Tietze moves.

mod abelian;
mod presentation;
mod tietze;
mod word;

pub use abelian::{abelianization, AbelianizationMap};
pub(crate) use abelian::integer_kernel;
pub use presentation::{Mark, Presentation};
pub use tietze::{random_move, tietze_apply, validate_wirtinger, RelatorShape, TietzeMove, TietzeOutcome, WirtingerReport};
pub use word::{free_reduce, parse_word, Letter, Word};
