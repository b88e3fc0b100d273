//! Function-free first-order logic with named individuals: syntax, theories,
//! textual format, and grounding over a finite domain.

mod ast;
mod ground;
mod text;
mod theory;

pub use ast::{Formula, Individual, Predicate, Term};
pub use ground::{
    expand_quantifiers, ground, substitute, to_nnf, GroundAtom, GroundClauseSet, Lit,
};
pub use text::{parse_fol, parse_mace4_assumptions, write_mace4, write_mace4_goal};
pub use theory::{ground_atom, individuals, Clue, Theory};
