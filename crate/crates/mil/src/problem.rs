//! The learning problem: examples, background knowledge and metarules.

use std::collections::BTreeSet;

use crate::logic::term::{Literal, Program, Symbol, Term};
use crate::metarules::Metarule;

/// Positive examples are ground atoms; negative examples are the atoms of
/// ground Horn goals. Target predicates are whatever the examples mention.
/// Positives and negatives may overlap when a noise generator produced the
/// problem.
#[derive(Clone, Debug)]
pub struct MILProblem {
    pub positive: Vec<Literal>,
    pub negative: Vec<Literal>,
    pub background: Program,
    pub metarules: Vec<Metarule>,
    /// Engine builtins the problem declares (informational; the engine
    /// always evaluates its builtins).
    pub builtins: BTreeSet<(Symbol, usize)>,
    pub target_predicates: BTreeSet<(Symbol, usize)>,
}

impl MILProblem {
    pub fn new(
        positive: Vec<Literal>,
        negative: Vec<Literal>,
        background: Program,
        metarules: Vec<Metarule>,
        builtins: BTreeSet<(Symbol, usize)>,
    ) -> MILProblem {
        let target_predicates = positive
            .iter()
            .chain(&negative)
            .map(Literal::key)
            .collect();
        MILProblem {
            positive,
            negative,
            background,
            metarules,
            builtins,
            target_predicates,
        }
    }

    pub fn is_target(&self, key: &(Symbol, usize)) -> bool {
        self.target_predicates.contains(key)
    }

    /// Predicate symbols visible to hypotheses: targets plus background
    /// definitions, sorted.
    pub fn predicate_pool(&self) -> Vec<(Symbol, usize)> {
        let mut pool: BTreeSet<(Symbol, usize)> = self.target_predicates.clone();
        for key in self.background.head_predicates() {
            pool.insert(key);
        }
        pool.into_iter().collect()
    }

    /// Constants occurring in examples and background, sorted.
    pub fn constant_pool(&self) -> Vec<Term> {
        let mut consts: BTreeSet<Symbol> = BTreeSet::new();
        fn scan(t: &Term, out: &mut BTreeSet<Symbol>) {
            match t {
                Term::Var(_) => {}
                Term::Const(c) => {
                    out.insert(c.clone());
                }
                Term::App(_, args) => {
                    for a in args {
                        scan(a, out);
                    }
                }
            }
        }
        for lit in self.positive.iter().chain(&self.negative) {
            for a in &lit.args {
                scan(a, &mut consts);
            }
        }
        for c in self.background.iter() {
            for lit in c.literals() {
                for a in &lit.args {
                    scan(a, &mut consts);
                }
            }
        }
        consts.into_iter().map(Term::Const).collect()
    }

    pub fn metarule(&self, name: &Symbol) -> Option<&Metarule> {
        self.metarules.iter().find(|m| m.name == *name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::term::Clause;

    #[test]
    fn targets_derive_from_examples() {
        let pos = vec![
            Literal::new("even", vec![Term::int(0)]),
            Literal::new("odd", vec![Term::app("s", vec![Term::int(0)])]),
        ];
        let neg = vec![Literal::new("even", vec![Term::app("s", vec![Term::int(0)])])];
        let problem = MILProblem::new(pos, neg, Program::empty(), vec![], BTreeSet::new());
        assert!(problem.is_target(&(Symbol::new("even"), 1)));
        assert!(problem.is_target(&(Symbol::new("odd"), 1)));
        assert!(!problem.is_target(&(Symbol::new("predecessor"), 2)));
    }

    #[test]
    fn pools_are_sorted_and_deduplicated() {
        let pos = vec![Literal::new("p", vec![Term::constant("b"), Term::constant("a")])];
        let bk = Program::new(vec![
            Clause::fact(Literal::new("q", vec![Term::constant("a"), Term::constant("c")])),
            Clause::fact(Literal::new("q", vec![Term::constant("c"), Term::constant("b")])),
        ]);
        let problem = MILProblem::new(pos, vec![], bk, vec![], BTreeSet::new());
        let pool = problem.predicate_pool();
        assert_eq!(pool, vec![(Symbol::new("p"), 2), (Symbol::new("q"), 2)]);
        let consts: Vec<String> = problem.constant_pool().iter().map(|t| t.to_string()).collect();
        assert_eq!(consts, vec!["a", "b", "c"]);
    }
}
