//! First-order terms, literals, definite clauses and programs.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// An interned-ish name: cheap to clone, compared by content.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        Symbol(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Symbol {
        Symbol::new(s)
    }
}

/// A logic variable: a display name plus an index used when standardizing
/// apart. Renaming bumps indices and never touches names, so variables stay
/// readable when printed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub name: Symbol,
    pub index: u32,
}

impl Var {
    pub fn new(name: &str, index: u32) -> Var {
        Var {
            name: Symbol::new(name),
            index,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 0 {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}_{}", self.name, self.index)
        }
    }
}

/// A first-order term. Compound arity is always at least 1; nullary symbols
/// are `Const`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Var(Var),
    Const(Symbol),
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name, 0))
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(Symbol::new(name))
    }

    pub fn app(functor: &str, args: Vec<Term>) -> Term {
        assert!(!args.is_empty(), "compound terms need at least one argument");
        Term::App(Symbol::new(functor), args)
    }

    /// Integer constants are plain constants whose name is the decimal form.
    pub fn int(n: i64) -> Term {
        Term::Const(Symbol::new(&n.to_string()))
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Term::Const(s) => s.as_str().parse().ok(),
            _ => None,
        }
    }

    pub fn as_const(&self) -> Option<&Symbol> {
        match self {
            Term::Const(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn visit_vars<'a>(&'a self, out: &mut Vec<&'a Var>) {
        match self {
            Term::Var(v) => out.push(v),
            Term::Const(_) => {}
            Term::App(_, args) => {
                for a in args {
                    a.visit_vars(out);
                }
            }
        }
    }

    /// Builds the cons-list term `[t1, ..., tn | tail]`.
    pub fn list(items: Vec<Term>, tail: Term) -> Term {
        let mut t = tail;
        for item in items.into_iter().rev() {
            t = Term::App(Symbol::new("."), vec![item, t]);
        }
        t
    }

    pub fn nil() -> Term {
        Term::Const(Symbol::new("[]"))
    }

    /// Splits a cons-list term into its prefix items and final tail.
    pub fn uncons(&self) -> (Vec<&Term>, &Term) {
        let mut items = Vec::new();
        let mut cur = self;
        while let Term::App(f, args) = cur {
            if f.as_str() == "." && args.len() == 2 {
                items.push(&args[0]);
                cur = &args[1];
            } else {
                break;
            }
        }
        (items, cur)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{}", v),
            Term::Const(s) => write!(f, "{}", print_atom(s.as_str())),
            Term::App(functor, args) => {
                if functor.as_str() == "." && args.len() == 2 {
                    return print_list(self, f);
                }
                if functor.as_str() == "/" && args.len() == 2 {
                    return write!(f, "{}/{}", args[0], args[1]);
                }
                write!(f, "{}(", print_atom(functor.as_str()))?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", a)?;
                }
                write!(f, ")")
            }
        }
    }
}

fn print_list(term: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let (items, tail) = term.uncons();
    write!(f, "[")?;
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{}", item)?;
    }
    match tail {
        Term::Const(s) if s.as_str() == "[]" => {}
        other => write!(f, "|{}", other)?,
    }
    write!(f, "]")
}

/// Quotes an atom name when it would not re-read as a bare identifier or
/// integer.
pub fn print_atom(name: &str) -> String {
    let bare_ident = name
        .chars()
        .next()
        .map(|c| c.is_ascii_lowercase())
        .unwrap_or(false)
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    let integer = !name.is_empty()
        && name.chars().enumerate().all(|(i, c)| {
            c.is_ascii_digit() || (i == 0 && c == '-' && name.len() > 1)
        });
    if bare_ident || integer || name == "[]" {
        name.to_string()
    } else {
        let escaped = name.replace('\\', "\\\\").replace('\'', "\\'");
        format!("'{}'", escaped)
    }
}

/// An atomic formula: predicate symbol applied to terms. Arity 0 is allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Literal {
    pub predicate: Symbol,
    pub args: Vec<Term>,
}

impl Literal {
    pub fn new(predicate: &str, args: Vec<Term>) -> Literal {
        Literal {
            predicate: Symbol::new(predicate),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn key(&self) -> (Symbol, usize) {
        (self.predicate.clone(), self.args.len())
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn vars(&self) -> Vec<&Var> {
        let mut out = Vec::new();
        for a in &self.args {
            a.visit_vars(&mut out);
        }
        out
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_atom(self.predicate.as_str()))?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", a)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A definite clause: one head literal and zero or more body literals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Clause {
    pub head: Literal,
    pub body: Vec<Literal>,
}

impl Clause {
    pub fn new(head: Literal, body: Vec<Literal>) -> Clause {
        Clause { head, body }
    }

    pub fn fact(head: Literal) -> Clause {
        Clause { head, body: Vec::new() }
    }

    pub fn is_fact(&self) -> bool {
        self.body.is_empty()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        std::iter::once(&self.head).chain(self.body.iter())
    }

    pub fn vars(&self) -> Vec<&Var> {
        let mut out = Vec::new();
        for lit in self.literals() {
            for a in &lit.args {
                a.visit_vars(&mut out);
            }
        }
        out
    }

    /// Distinct variables in first-occurrence order.
    pub fn distinct_vars(&self) -> Vec<Var> {
        let mut seen = Vec::new();
        for v in self.vars() {
            if !seen.contains(v) {
                seen.push(v.clone());
            }
        }
        seen
    }

    /// Renames variables to the display alphabet x, y, z, x1, y1, z1, ... in
    /// first-occurrence order. Two clauses are alphabetic variants exactly
    /// when their canonical forms are equal.
    pub fn canonical(&self) -> Clause {
        let order = self.distinct_vars();
        let mut map = HashMap::new();
        for (i, v) in order.iter().enumerate() {
            map.insert(v.clone(), display_var(i));
        }
        self.map_vars(&|v| Term::Var(map[v].clone()))
    }

    pub fn map_vars(&self, f: &dyn Fn(&Var) -> Term) -> Clause {
        fn go(t: &Term, f: &dyn Fn(&Var) -> Term) -> Term {
            match t {
                Term::Var(v) => f(v),
                Term::Const(_) => t.clone(),
                Term::App(functor, args) => {
                    Term::App(functor.clone(), args.iter().map(|a| go(a, f)).collect())
                }
            }
        }
        let lit = |l: &Literal| Literal {
            predicate: l.predicate.clone(),
            args: l.args.iter().map(|a| go(a, f)).collect(),
        };
        Clause {
            head: lit(&self.head),
            body: self.body.iter().map(lit).collect(),
        }
    }

    pub fn alpha_eq(&self, other: &Clause) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn is_ground(&self) -> bool {
        self.literals().all(Literal::is_ground)
    }
}

/// The display variable alphabet used when printing hypotheses.
pub fn display_var(i: usize) -> Var {
    let base = ["x", "y", "z"];
    let name = base[i % 3];
    let round = i / 3;
    if round == 0 {
        Var::new(name, 0)
    } else {
        Var {
            name: Symbol::new(&format!("{}{}", name, round)),
            index: 0,
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            write!(f, ":-")?;
            for (i, lit) in self.body.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", lit)?;
            }
        }
        Ok(())
    }
}

/// An ordered sequence of clauses. Resolution and reduction tie-breaking
/// depend on the stored order, so it is preserved from input.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Program {
    pub clauses: Vec<Clause>,
}

impl Program {
    pub fn new(clauses: Vec<Clause>) -> Program {
        Program { clauses }
    }

    pub fn empty() -> Program {
        Program { clauses: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clause> {
        self.clauses.iter()
    }

    pub fn push(&mut self, clause: Clause) {
        self.clauses.push(clause);
    }

    pub fn extend(&mut self, other: &Program) {
        self.clauses.extend(other.clauses.iter().cloned());
    }

    /// Predicate symbols defined by clause heads, with arity, in first
    /// definition order.
    pub fn head_predicates(&self) -> Vec<(Symbol, usize)> {
        let mut out: Vec<(Symbol, usize)> = Vec::new();
        for c in &self.clauses {
            let key = c.head.key();
            if !out.contains(&key) {
                out.push(key);
            }
        }
        out
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "{}.", c)?;
        }
        Ok(())
    }
}

impl FromIterator<Clause> for Program {
    fn from_iter<T: IntoIterator<Item = Clause>>(iter: T) -> Program {
        Program {
            clauses: iter.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(a: &str, b: &str) -> Literal {
        Literal::new("edge", vec![Term::constant(a), Term::constant(b)])
    }

    #[test]
    fn display_forms() {
        let lit = Literal::new(
            "path",
            vec![Term::var("X"), Term::app("s", vec![Term::int(0)])],
        );
        assert_eq!(lit.to_string(), "path(X,s(0))");
        let pair = Term::app("/", vec![Term::int(0), Term::int(3)]);
        assert_eq!(pair.to_string(), "0/3");
        let list = Term::list(
            vec![Term::constant("destroy"), Term::constant("target")],
            Term::nil(),
        );
        assert_eq!(list.to_string(), "[destroy,target]");
        let open = Term::list(vec![Term::constant("a")], Term::var("T"));
        assert_eq!(open.to_string(), "[a|T]");
    }

    #[test]
    fn quoted_atoms() {
        assert_eq!(print_atom("owner's"), "'owner\\'s'");
        assert_eq!(print_atom("Djinns"), "'Djinns'");
        assert_eq!(print_atom("abc_1"), "abc_1");
        assert_eq!(print_atom("42"), "42");
    }

    #[test]
    fn canonical_renames_in_first_occurrence_order() {
        let c = Clause::new(
            Literal::new("path", vec![Term::var("A"), Term::var("B")]),
            vec![
                Literal::new("path", vec![Term::var("A"), Term::var("C")]),
                Literal::new("edge", vec![Term::var("C"), Term::var("B")]),
            ],
        );
        assert_eq!(c.canonical().to_string(), "path(x,y):-path(x,z),edge(z,y)");
    }

    #[test]
    fn alpha_equivalence() {
        let a = Clause::new(
            Literal::new("p", vec![Term::var("X")]),
            vec![Literal::new("q", vec![Term::var("X"), Term::var("Y")])],
        );
        let b = Clause::new(
            Literal::new("p", vec![Term::var("V")]),
            vec![Literal::new("q", vec![Term::var("V"), Term::var("W")])],
        );
        let c = Clause::new(
            Literal::new("p", vec![Term::var("X")]),
            vec![Literal::new("q", vec![Term::var("Y"), Term::var("X")])],
        );
        assert!(a.alpha_eq(&b));
        assert!(!a.alpha_eq(&c));
    }

    #[test]
    fn program_preserves_order() {
        let p = Program::new(vec![Clause::fact(edge("b", "c")), Clause::fact(edge("a", "b"))]);
        assert_eq!(p.clauses[0].head.args[0], Term::constant("b"));
        assert_eq!(p.head_predicates(), vec![(Symbol::new("edge"), 2)]);
    }
}
