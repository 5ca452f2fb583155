//! First-order logic substrate: terms, unification, a depth-bounded SLD
//! prover, the encapsulation transform and a bottom-up fixpoint oracle.

pub mod encapsulate;
pub mod fixpoint;
pub mod solve;
pub mod term;
pub mod unify;

pub use encapsulate::{
    encapsulate_clause, encapsulate_literal, encapsulate_program, excapsulate_clause,
    excapsulate_literal, excapsulate_program, EncapsulationError, ENC_PREDICATE,
};
pub use fixpoint::{ground_fixpoint, herbrand_universe, FixpointError};
pub use solve::{
    entails, is_builtin, prove, solutions, ClauseIndex, Entailment, Exhaustion, Proof,
    ProofBudget, SolveOptions, Solutions,
};
pub use term::{display_var, print_atom, Clause, Literal, Program, Symbol, Term, Var};
pub use unify::{rename_apart, unify, unify_in, unify_terms, Substitution};
