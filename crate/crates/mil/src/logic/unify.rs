//! Substitutions, most general unifiers and standardizing apart.

use std::collections::HashMap;

use super::term::{Clause, Literal, Term, Var};

/// A binding of variables to terms. Bindings may chain (x -> y, y -> a);
/// `apply` resolves chains fully, so applying a substitution twice equals
/// applying it once.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Substitution {
    bindings: HashMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.bindings.get(v)
    }

    /// Never records x -> x.
    pub fn bind(&mut self, v: Var, t: Term) {
        if let Term::Var(ref w) = t {
            if *w == v {
                return;
            }
        }
        self.bindings.insert(v, t);
    }

    /// Follows variable chains until a non-variable or an unbound variable.
    pub fn walk<'a>(&'a self, t: &'a Term) -> &'a Term {
        let mut cur = t;
        while let Term::Var(v) = cur {
            match self.bindings.get(v) {
                Some(next) => cur = next,
                None => break,
            }
        }
        cur
    }

    /// Fully resolves a term under this substitution.
    pub fn apply(&self, t: &Term) -> Term {
        let t = self.walk(t);
        match t {
            Term::Var(_) | Term::Const(_) => t.clone(),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| self.apply(a)).collect())
            }
        }
    }

    pub fn apply_literal(&self, lit: &Literal) -> Literal {
        Literal {
            predicate: lit.predicate.clone(),
            args: lit.args.iter().map(|a| self.apply(a)).collect(),
        }
    }

    pub fn apply_clause(&self, c: &Clause) -> Clause {
        Clause {
            head: self.apply_literal(&c.head),
            body: c.body.iter().map(|l| self.apply_literal(l)).collect(),
        }
    }

    /// Restricts to the variables of interest, fully resolved.
    pub fn restricted_to(&self, vars: &[Var]) -> Substitution {
        let mut out = Substitution::new();
        for v in vars {
            if self.bindings.contains_key(v) {
                out.bind(v.clone(), self.apply(&Term::Var(v.clone())));
            }
        }
        out
    }
}

fn occurs(v: &Var, t: &Term, subst: &Substitution) -> bool {
    match subst.walk(t) {
        Term::Var(w) => w == v,
        Term::Const(_) => false,
        Term::App(_, args) => args.iter().any(|a| occurs(v, a, subst)),
    }
}

/// Extends `subst` to a unifier of `a` and `b`, or gives `None` back.
/// The occurs check is off by default, matching conventional resolution
/// engines; pass `occurs_check = true` to enable it.
pub fn unify_terms(
    a: &Term,
    b: &Term,
    mut subst: Substitution,
    occurs_check: bool,
) -> Option<Substitution> {
    let mut work = vec![(a.clone(), b.clone())];
    while let Some((s, t)) = work.pop() {
        let s = subst.walk(&s).clone();
        let t = subst.walk(&t).clone();
        match (s, t) {
            (Term::Var(v), Term::Var(w)) if v == w => {}
            (Term::Var(v), t) => {
                if occurs_check && occurs(&v, &t, &subst) {
                    return None;
                }
                subst.bind(v, t);
            }
            (s, Term::Var(w)) => {
                if occurs_check && occurs(&w, &s, &subst) {
                    return None;
                }
                subst.bind(w, s);
            }
            (Term::Const(x), Term::Const(y)) => {
                if x != y {
                    return None;
                }
            }
            (Term::App(f, xs), Term::App(g, ys)) => {
                if f != g || xs.len() != ys.len() {
                    return None;
                }
                for (x, y) in xs.into_iter().zip(ys) {
                    work.push((x, y));
                }
            }
            _ => return None,
        }
    }
    Some(subst)
}

/// Most general unifier of two literals, if any.
pub fn unify(a: &Literal, b: &Literal, occurs_check: bool) -> Option<Substitution> {
    unify_in(a, b, Substitution::new(), occurs_check)
}

pub fn unify_in(
    a: &Literal,
    b: &Literal,
    mut subst: Substitution,
    occurs_check: bool,
) -> Option<Substitution> {
    if a.predicate != b.predicate || a.args.len() != b.args.len() {
        return None;
    }
    for (x, y) in a.args.iter().zip(&b.args) {
        subst = unify_terms(x, y, subst, occurs_check)?;
    }
    Some(subst)
}

/// Returns a variant of the clause whose variable indices all sit at or
/// above `fresh_base`, assigned in first-occurrence order. The result shares
/// no variables with any clause renamed from a disjoint base range.
pub fn rename_apart(clause: &Clause, fresh_base: u32) -> Clause {
    let order = clause.distinct_vars();
    let mut map: HashMap<Var, Var> = HashMap::new();
    for (i, v) in order.iter().enumerate() {
        map.insert(
            v.clone(),
            Var {
                name: v.name.clone(),
                index: fresh_base + i as u32,
            },
        );
    }
    clause.map_vars(&|v| Term::Var(map[v].clone()))
}
