//! Bottom-up evaluation over a truncated Herbrand universe.
//!
//! This is the independent oracle the resolution engine is checked against:
//! naive fixpoint iteration with clause grounding, no search involved.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use super::solve::is_builtin;
use super::term::{Clause, Literal, Program, Symbol, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixpointError {
    /// The truncated universe would exceed the atom cap.
    UniverseTooLarge { atoms: usize, cap: usize },
}

impl fmt::Display for FixpointError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixpointError::UniverseTooLarge { atoms, cap } => {
                write!(f, "truncated Herbrand base has {} atoms, cap is {}", atoms, cap)
            }
        }
    }
}

impl std::error::Error for FixpointError {}

/// Ground terms built from the program's constants and function symbols,
/// nested up to `depth_cap` function applications.
pub fn herbrand_universe(programs: &[&Program], depth_cap: usize) -> Vec<Term> {
    let mut constants: BTreeSet<Symbol> = BTreeSet::new();
    let mut functors: BTreeSet<(Symbol, usize)> = BTreeSet::new();
    fn scan(t: &Term, constants: &mut BTreeSet<Symbol>, functors: &mut BTreeSet<(Symbol, usize)>) {
        match t {
            Term::Var(_) => {}
            Term::Const(c) => {
                constants.insert(c.clone());
            }
            Term::App(f, args) => {
                functors.insert((f.clone(), args.len()));
                for a in args {
                    scan(a, constants, functors);
                }
            }
        }
    }
    for p in programs {
        for c in p.iter() {
            for lit in c.literals() {
                for a in &lit.args {
                    scan(a, &mut constants, &mut functors);
                }
            }
        }
    }
    let mut layers: Vec<Term> = constants.into_iter().map(Term::Const).collect();
    let mut current: Vec<Term> = layers.clone();
    for _ in 0..depth_cap {
        let mut next = Vec::new();
        for (f, arity) in &functors {
            // Tuples with at least one argument from the newest layer keep
            // the nesting depth honest without recomputing everything.
            let tuples = cartesian(&layers, &current, *arity);
            for args in tuples {
                next.push(Term::App(f.clone(), args));
            }
        }
        if next.is_empty() {
            break;
        }
        layers.extend(next.iter().cloned());
        current = next;
    }
    layers
}

fn cartesian(all: &[Term], newest: &[Term], arity: usize) -> Vec<Vec<Term>> {
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<Term>, bool)> = vec![(Vec::new(), false)];
    while let Some((prefix, has_new)) = stack.pop() {
        if prefix.len() == arity {
            if has_new {
                out.push(prefix);
            }
            continue;
        }
        for t in all {
            let mut p = prefix.clone();
            let is_new = newest.contains(t);
            p.push(t.clone());
            stack.push((p, has_new || is_new));
        }
    }
    out
}

/// All groundings of the clause's variables over the universe, yielding the
/// head atoms whose bodies hold in `facts`.
fn fire_clause(clause: &Clause, universe: &[Term], facts: &HashSet<Literal>) -> Vec<Literal> {
    let vars: Vec<Var> = clause.distinct_vars();
    if !vars.is_empty() && universe.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut assignment: Vec<usize> = vec![0; vars.len()];
    loop {
        let map: HashMap<Var, Term> = vars
            .iter()
            .cloned()
            .zip(assignment.iter().map(|&i| universe[i].clone()))
            .collect();
        let grounded =
            clause.map_vars(&|v| map.get(v).cloned().unwrap_or(Term::Var(v.clone())));
        if grounded
            .body
            .iter()
            .all(|lit| body_literal_holds(lit, facts))
        {
            out.push(grounded.head.clone());
        }
        // Advance the odometer.
        let mut i = 0;
        loop {
            if i == assignment.len() {
                return out;
            }
            assignment[i] += 1;
            if assignment[i] < universe.len() {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

fn body_literal_holds(lit: &Literal, facts: &HashSet<Literal>) -> bool {
    if is_builtin(&lit.predicate, lit.arity()) {
        return ground_builtin_holds(lit, facts);
    }
    facts.contains(lit)
}

fn ground_builtin_holds(lit: &Literal, facts: &HashSet<Literal>) -> bool {
    match lit.predicate.as_str() {
        "succ_within" => {
            let ints: Option<Vec<i64>> = lit.args.iter().map(Term::as_int).collect();
            match ints {
                Some(v) => v[1] == v[0] + 1 && v[0] >= v[2] && v[1] <= v[3],
                None => false,
            }
        }
        "apply" => match &lit.args[0] {
            Term::Const(p) => facts.contains(&Literal {
                predicate: p.clone(),
                args: lit.args[1..].to_vec(),
            }),
            _ => false,
        },
        _ => false,
    }
}

/// Least fixpoint of the program over a truncated universe: the set of all
/// derivable ground atoms. `atom_cap` guards against blowup; atoms are
/// counted as sum over head predicates of |universe|^arity.
pub fn ground_fixpoint(
    programs: &[&Program],
    depth_cap: usize,
    atom_cap: usize,
) -> Result<HashSet<Literal>, FixpointError> {
    let universe = herbrand_universe(programs, depth_cap);
    let mut predicates: BTreeSet<(Symbol, usize)> = BTreeSet::new();
    for p in programs {
        for c in p.iter() {
            predicates.insert(c.head.key());
        }
    }
    let mut atoms: usize = 0;
    for (_, arity) in &predicates {
        let count = universe.len().checked_pow(*arity as u32);
        atoms = match count.and_then(|c| atoms.checked_add(c)) {
            Some(a) => a,
            None => usize::MAX,
        };
    }
    if atoms > atom_cap {
        return Err(FixpointError::UniverseTooLarge { atoms, cap: atom_cap });
    }

    let mut facts: HashSet<Literal> = HashSet::new();
    loop {
        let mut added = false;
        for p in programs {
            for clause in p.iter() {
                if clause.is_fact() && clause.head.is_ground() {
                    if facts.insert(clause.head.clone()) {
                        added = true;
                    }
                    continue;
                }
                for head in fire_clause(clause, &universe, &facts) {
                    if head.is_ground() && facts.insert(head) {
                        added = true;
                    }
                }
            }
        }
        if !added {
            return Ok(facts);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Term {
        Term::constant(s)
    }

    #[test]
    fn transitive_closure() {
        let program = Program::new(vec![
            Clause::fact(Literal::new("edge", vec![c("a"), c("b")])),
            Clause::fact(Literal::new("edge", vec![c("b"), c("c")])),
            Clause::new(
                Literal::new("path", vec![Term::var("X"), Term::var("Y")]),
                vec![Literal::new("edge", vec![Term::var("X"), Term::var("Y")])],
            ),
            Clause::new(
                Literal::new("path", vec![Term::var("X"), Term::var("Y")]),
                vec![
                    Literal::new("path", vec![Term::var("X"), Term::var("Z")]),
                    Literal::new("edge", vec![Term::var("Z"), Term::var("Y")]),
                ],
            ),
        ]);
        let facts = ground_fixpoint(&[&program], 0, 100_000).unwrap();
        let paths: Vec<&Literal> = facts
            .iter()
            .filter(|l| l.predicate.as_str() == "path")
            .collect();
        assert_eq!(paths.len(), 3); // ab, bc, ac
        assert!(facts.contains(&Literal::new("path", vec![c("a"), c("c")])));
    }

    #[test]
    fn function_terms_up_to_cap() {
        let s = |t: Term| Term::app("s", vec![t]);
        let zero = Term::int(0);
        let program = Program::new(vec![
            Clause::fact(Literal::new("even", vec![zero.clone()])),
            Clause::new(
                Literal::new("even", vec![s(s(Term::var("X")))]),
                vec![Literal::new("even", vec![Term::var("X")])],
            ),
        ]);
        let facts = ground_fixpoint(&[&program], 4, 100_000).unwrap();
        let evens: Vec<&Literal> = facts
            .iter()
            .filter(|l| l.predicate.as_str() == "even")
            .collect();
        // 0, s(s(0)), s(s(s(s(0))))
        assert_eq!(evens.len(), 3);
    }

    #[test]
    fn cap_is_enforced() {
        let clauses: Vec<Clause> = (0..40)
            .map(|i| {
                Clause::fact(Literal::new(
                    "p",
                    vec![c(&format!("k{}", i)), c(&format!("k{}", i)), c(&format!("k{}", i))],
                ))
            })
            .collect();
        let program = Program::new(clauses);
        assert!(ground_fixpoint(&[&program], 0, 1000).is_err());
    }
}
