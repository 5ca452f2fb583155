//! The encapsulation transform and its inverse.
//!
//! A literal p(s1..sn) becomes $m(p,s1..sn), so metarule heads and
//! first-order heads unify by ordinary first-order unification. Builtin
//! literals stay as they are, except apply(P,args), whose encapsulation is
//! $m(P,args) directly: with P unbound this is exactly the higher-order
//! literal the builtin emulates in first-order programs.

use std::fmt;

use super::solve::is_builtin;
use super::term::{Clause, Literal, Program, Symbol, Term};

/// Reserved predicate carrying encapsulated literals. The leading '$' keeps
/// it out of the problem-file namespace.
pub const ENC_PREDICATE: &str = "$m";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EncapsulationError {
    /// An encapsulated literal whose predicate slot is still a variable
    /// cannot be mapped back: some metasubstitution was never applied.
    UnboundPredicateSlot(Literal),
    /// Not an encapsulated literal at all.
    NotEncapsulated(Literal),
}

impl fmt::Display for EncapsulationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EncapsulationError::UnboundPredicateSlot(lit) => {
                write!(f, "unbound predicate slot in {}", lit)
            }
            EncapsulationError::NotEncapsulated(lit) => {
                write!(f, "literal {} is not encapsulated", lit)
            }
        }
    }
}

impl std::error::Error for EncapsulationError {}

pub fn encapsulate_literal(lit: &Literal) -> Literal {
    if lit.predicate.as_str() == "apply" && lit.arity() >= 2 {
        return Literal {
            predicate: Symbol::new(ENC_PREDICATE),
            args: lit.args.clone(),
        };
    }
    if is_builtin(&lit.predicate, lit.arity()) {
        return lit.clone();
    }
    let mut args = Vec::with_capacity(lit.args.len() + 1);
    args.push(Term::Const(lit.predicate.clone()));
    args.extend(lit.args.iter().cloned());
    Literal {
        predicate: Symbol::new(ENC_PREDICATE),
        args,
    }
}

pub fn encapsulate_clause(clause: &Clause) -> Clause {
    Clause {
        head: encapsulate_literal(&clause.head),
        body: clause.body.iter().map(encapsulate_literal).collect(),
    }
}

pub fn encapsulate_program(program: &Program) -> Program {
    program.iter().map(encapsulate_clause).collect()
}

pub fn excapsulate_literal(lit: &Literal) -> Result<Literal, EncapsulationError> {
    if is_builtin(&lit.predicate, lit.arity()) {
        return Ok(lit.clone());
    }
    if lit.predicate.as_str() != ENC_PREDICATE || lit.args.is_empty() {
        return Err(EncapsulationError::NotEncapsulated(lit.clone()));
    }
    match &lit.args[0] {
        Term::Const(p) => Ok(Literal {
            predicate: p.clone(),
            args: lit.args[1..].to_vec(),
        }),
        _ => Err(EncapsulationError::UnboundPredicateSlot(lit.clone())),
    }
}

pub fn excapsulate_clause(clause: &Clause) -> Result<Clause, EncapsulationError> {
    Ok(Clause {
        head: excapsulate_literal(&clause.head)?,
        body: clause
            .body
            .iter()
            .map(excapsulate_literal)
            .collect::<Result<_, _>>()?,
    })
}

pub fn excapsulate_program(program: &Program) -> Result<Program, EncapsulationError> {
    program.iter().map(excapsulate_clause).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::term::Var;

    #[test]
    fn atom_gains_predicate_argument() {
        let lit = Literal::new("edge", vec![Term::constant("a"), Term::constant("b")]);
        let enc = encapsulate_literal(&lit);
        assert_eq!(enc.to_string(), "'$m'(edge,a,b)");
        assert_eq!(excapsulate_literal(&enc).unwrap(), lit);
    }

    #[test]
    fn clause_maps_elementwise() {
        let c = Clause::new(
            Literal::new("path", vec![Term::var("X"), Term::var("Y")]),
            vec![
                Literal::new("edge", vec![Term::var("X"), Term::var("Z")]),
                Literal::new("edge", vec![Term::var("Z"), Term::var("Y")]),
            ],
        );
        let enc = encapsulate_clause(&c);
        assert_eq!(
            enc.to_string(),
            "'$m'(path,X,Y):-'$m'(edge,X,Z),'$m'(edge,Z,Y)"
        );
        assert_eq!(excapsulate_clause(&enc).unwrap(), c);
    }

    #[test]
    fn empty_program_round_trips() {
        let p = Program::empty();
        assert_eq!(excapsulate_program(&encapsulate_program(&p)).unwrap(), p);
    }

    #[test]
    fn unbound_predicate_slot_is_an_error() {
        let enc = Literal::new(
            ENC_PREDICATE,
            vec![Term::Var(Var::new("P", 0)), Term::var("x"), Term::var("y")],
        );
        match excapsulate_literal(&enc) {
            Err(EncapsulationError::UnboundPredicateSlot(_)) => {}
            other => panic!("expected unbound-slot error, got {:?}", other),
        }
    }

    #[test]
    fn apply_encapsulates_to_open_slot() {
        let lit = Literal::new(
            "apply",
            vec![Term::Var(Var::new("M", 0)), Term::var("X"), Term::var("Y")],
        );
        let enc = encapsulate_literal(&lit);
        assert_eq!(enc.to_string(), "'$m'(M,X,Y)");
    }

    #[test]
    fn builtins_pass_through() {
        let lit = Literal::new(
            "succ_within",
            vec![Term::var("A"), Term::var("B"), Term::int(0), Term::int(4)],
        );
        assert_eq!(encapsulate_literal(&lit), lit);
        assert_eq!(excapsulate_literal(&lit).unwrap(), lit);
    }
}
