//! Second-order metarules: the standard catalog, metasubstitution
//! application, extraction from first-order programs and hypothesis-language
//! enumeration.

use std::collections::HashMap;
use std::fmt;

use crate::logic::term::{Clause, Literal, Program, Symbol, Term, Var};
use crate::logic::ENC_PREDICATE;

/// Head of the clause form a metarule takes inside a reduction context:
/// `'$metasub'(name, P, Q, ...) :- <encapsulated literals>`. The dedicated
/// head predicate keeps metarules from resolving against encapsulated
/// program clauses.
pub const METASUB_PREDICATE: &str = "$metasub";

/// One literal pattern of a metarule: a predicate-position name applied to
/// argument names. Every name is classified by the metarule's variable
/// lists.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pattern {
    pub predicate: Symbol,
    pub args: Vec<Symbol>,
}

impl Pattern {
    pub fn new(predicate: &str, args: &[&str]) -> Pattern {
        Pattern {
            predicate: Symbol::new(predicate),
            args: args.iter().map(|a| Symbol::new(a)).collect(),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.predicate)?;
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

/// A second-order definite clause template. Predicate-position names are
/// existentially quantified over predicate symbols; argument names are
/// either existential (quantified over ground terms) or universal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Metarule {
    pub name: Symbol,
    pub second_order: Vec<Symbol>,
    pub first_order: Vec<Symbol>,
    pub universal: Vec<Symbol>,
    pub head: Pattern,
    pub body: Vec<Pattern>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetaruleError {
    PredicateNotExistential { metarule: Symbol, name: Symbol },
    UnclassifiedArgument { metarule: Symbol, name: Symbol },
    OverlappingVariableLists { metarule: Symbol, name: Symbol },
    BindingDomainMismatch { metarule: Symbol },
    LanguageCapExceeded { bound: usize, cap: usize },
}

impl fmt::Display for MetaruleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetaruleError::PredicateNotExistential { metarule, name } => write!(
                f,
                "metarule {}: predicate-position name {} is not existential",
                metarule, name
            ),
            MetaruleError::UnclassifiedArgument { metarule, name } => write!(
                f,
                "metarule {}: argument {} is neither existential nor universal",
                metarule, name
            ),
            MetaruleError::OverlappingVariableLists { metarule, name } => write!(
                f,
                "metarule {}: name {} appears in more than one variable list",
                metarule, name
            ),
            MetaruleError::BindingDomainMismatch { metarule } => {
                write!(f, "metasubstitution domain does not match metarule {}", metarule)
            }
            MetaruleError::LanguageCapExceeded { bound, cap } => {
                write!(f, "language enumeration would yield {} clauses, cap is {}", bound, cap)
            }
        }
    }
}

impl std::error::Error for MetaruleError {}

impl Metarule {
    pub fn new(
        name: &str,
        second_order: &[&str],
        first_order: &[&str],
        universal: &[&str],
        head: Pattern,
        body: Vec<Pattern>,
    ) -> Result<Metarule, MetaruleError> {
        let m = Metarule {
            name: Symbol::new(name),
            second_order: second_order.iter().map(|s| Symbol::new(s)).collect(),
            first_order: first_order.iter().map(|s| Symbol::new(s)).collect(),
            universal: universal.iter().map(|s| Symbol::new(s)).collect(),
            head,
            body,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), MetaruleError> {
        let mut seen: Vec<&Symbol> = Vec::new();
        for name in self
            .second_order
            .iter()
            .chain(&self.first_order)
            .chain(&self.universal)
        {
            if seen.contains(&name) {
                return Err(MetaruleError::OverlappingVariableLists {
                    metarule: self.name.clone(),
                    name: name.clone(),
                });
            }
            seen.push(name);
        }
        for p in self.patterns() {
            if !self.second_order.contains(&p.predicate) {
                return Err(MetaruleError::PredicateNotExistential {
                    metarule: self.name.clone(),
                    name: p.predicate.clone(),
                });
            }
            for a in &p.args {
                if !self.first_order.contains(a) && !self.universal.contains(a) {
                    return Err(MetaruleError::UnclassifiedArgument {
                        metarule: self.name.clone(),
                        name: a.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn patterns(&self) -> impl Iterator<Item = &Pattern> {
        std::iter::once(&self.head).chain(self.body.iter())
    }

    /// Arity each second-order variable is used at. Consistent use is the
    /// caller's lookout; the first occurrence wins here.
    pub fn second_order_arities(&self) -> HashMap<Symbol, usize> {
        let mut map = HashMap::new();
        for p in self.patterns() {
            map.entry(p.predicate.clone()).or_insert(p.args.len());
        }
        map
    }

    /// Body positions whose predicate variable is the head's: explicit
    /// recursion, exempt from lexicographic ordering constraints.
    pub fn is_explicitly_recursive(&self) -> bool {
        self.body.iter().any(|p| p.predicate == self.head.predicate)
    }

    /// The metarule as a plain first-order clause over the encapsulation
    /// predicate, with every quantified name turned into a variable.
    /// Resolution against it is ordinary unification.
    pub fn encapsulate(&self) -> Clause {
        let lit = |p: &Pattern| {
            let mut args = Vec::with_capacity(p.args.len() + 1);
            args.push(Term::Var(Var::new(p.predicate.as_str(), 0)));
            for a in &p.args {
                args.push(Term::Var(Var::new(a.as_str(), 0)));
            }
            Literal {
                predicate: Symbol::new(ENC_PREDICATE),
                args,
            }
        };
        Clause {
            head: lit(&self.head),
            body: self.body.iter().map(lit).collect(),
        }
    }

    /// The inert clause form used in reduction contexts: head is a
    /// metasubstitution atom over `$metasub`, body is the encapsulated
    /// patterns.
    pub fn metasub_clause(&self) -> Clause {
        let enc = self.encapsulate();
        let mut args = vec![Term::Const(self.name.clone())];
        for v in &self.second_order {
            args.push(Term::Var(Var::new(v.as_str(), 0)));
        }
        let mut body = vec![enc.head];
        body.extend(enc.body);
        Clause {
            head: Literal {
                predicate: Symbol::new(METASUB_PREDICATE),
                args,
            },
            body,
        }
    }
}

impl fmt::Display for Metarule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.head)?;
        for (i, p) in self.body.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { " :- " } else { ", " }, p)?;
        }
        Ok(())
    }
}

/// An assignment of predicate symbols to a metarule's second-order variables
/// and ground terms to its first-order existential variables. Bindings are
/// kept in metarule declaration order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Metasubstitution {
    pub metarule: Symbol,
    pub second_order: Vec<(Symbol, Symbol)>,
    pub first_order: Vec<(Symbol, Term)>,
}

impl Metasubstitution {
    /// Deterministic sort key: metarule name, then bindings.
    pub fn key(&self) -> String {
        let mut s = self.metarule.as_str().to_string();
        for (_, v) in &self.second_order {
            s.push(' ');
            s.push_str(v.as_str());
        }
        for (_, t) in &self.first_order {
            s.push(' ');
            s.push_str(&t.to_string());
        }
        s
    }
}

impl fmt::Display for Metasubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.metarule)?;
        let mut first = true;
        for (k, v) in &self.second_order {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}/{}", k, v)?;
            first = false;
        }
        for (k, t) in &self.first_order {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}/{}", k, t)?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// Instantiates a metarule: second-order variables become the bound
/// predicate symbols, existential first-order variables the bound terms,
/// universal variables fresh clause variables.
pub fn apply_metasub(mu: &Metasubstitution, m: &Metarule) -> Result<Clause, MetaruleError> {
    let domain_matches = mu.metarule == m.name
        && mu.second_order.len() == m.second_order.len()
        && mu
            .second_order
            .iter()
            .zip(&m.second_order)
            .all(|((k, _), want)| k == want)
        && mu.first_order.len() == m.first_order.len()
        && mu
            .first_order
            .iter()
            .zip(&m.first_order)
            .all(|((k, _), want)| k == want);
    if !domain_matches {
        return Err(MetaruleError::BindingDomainMismatch { metarule: m.name.clone() });
    }
    let so: HashMap<&Symbol, &Symbol> = mu.second_order.iter().map(|(k, v)| (k, v)).collect();
    let fo: HashMap<&Symbol, &Term> = mu.first_order.iter().map(|(k, v)| (k, v)).collect();
    let lit = |p: &Pattern| Literal {
        predicate: (*so[&p.predicate]).clone(),
        args: p
            .args
            .iter()
            .map(|a| match fo.get(a) {
                Some(t) => (*t).clone(),
                None => Term::Var(Var::new(a.as_str(), 0)),
            })
            .collect(),
    };
    Ok(Clause {
        head: lit(&m.head),
        body: m.body.iter().map(lit).collect(),
    })
}

fn mr(
    name: &str,
    so: &[&str],
    fo: &[&str],
    uni: &[&str],
    head: Pattern,
    body: Vec<Pattern>,
) -> Metarule {
    Metarule::new(name, so, fo, uni, head, body).expect("catalog metarule is valid")
}

/// The standard catalog: the H2,2 metarules plus the three triadic chain
/// variants used with arity-3 higher-order background predicates.
pub fn catalog() -> Vec<Metarule> {
    vec![
        mr("abduced", &["P"], &["X", "Y"], &[], Pattern::new("P", &["X", "Y"]), vec![]),
        mr(
            "identity",
            &["P", "Q"],
            &[],
            &["x", "y"],
            Pattern::new("P", &["x", "y"]),
            vec![Pattern::new("Q", &["x", "y"])],
        ),
        mr(
            "inverse",
            &["P", "Q"],
            &[],
            &["x", "y"],
            Pattern::new("P", &["x", "y"]),
            vec![Pattern::new("Q", &["y", "x"])],
        ),
        mr(
            "chain",
            &["P", "Q", "R"],
            &[],
            &["x", "y", "z"],
            Pattern::new("P", &["x", "y"]),
            vec![Pattern::new("Q", &["x", "z"]), Pattern::new("R", &["z", "y"])],
        ),
        mr(
            "stack",
            &["P", "Q", "R"],
            &[],
            &["x", "y", "z"],
            Pattern::new("P", &["x", "y"]),
            vec![Pattern::new("Q", &["x", "z"]), Pattern::new("R", &["y", "z"])],
        ),
        mr(
            "queue",
            &["P", "Q", "R"],
            &[],
            &["x", "y", "z"],
            Pattern::new("P", &["x", "y"]),
            vec![Pattern::new("Q", &["z", "x"]), Pattern::new("R", &["z", "y"])],
        ),
        mr(
            "tailrec",
            &["P", "Q"],
            &[],
            &["x", "y", "z"],
            Pattern::new("P", &["x", "y"]),
            vec![Pattern::new("Q", &["x", "z"]), Pattern::new("P", &["z", "y"])],
        ),
        mr(
            "precon",
            &["P", "Q", "R"],
            &[],
            &["x", "y"],
            Pattern::new("P", &["x", "y"]),
            vec![Pattern::new("Q", &["x"]), Pattern::new("R", &["x", "y"])],
        ),
        mr(
            "postcon",
            &["P", "Q", "R"],
            &[],
            &["x", "y"],
            Pattern::new("P", &["x", "y"]),
            vec![Pattern::new("Q", &["x", "y"]), Pattern::new("R", &["y"])],
        ),
        mr(
            "tri_chain_1",
            &["P", "Q", "R"],
            &["M"],
            &["x", "y", "z"],
            Pattern::new("P", &["x", "y"]),
            vec![Pattern::new("Q", &["M", "x", "z"]), Pattern::new("R", &["z", "y"])],
        ),
        mr(
            "tri_chain_2",
            &["P", "Q", "R"],
            &["M"],
            &["x", "y", "z"],
            Pattern::new("P", &["x", "y"]),
            vec![Pattern::new("Q", &["x", "z"]), Pattern::new("R", &["M", "z", "y"])],
        ),
        mr(
            "tri_chain_3",
            &["P", "Q", "R"],
            &["M1", "M2"],
            &["x", "y", "z"],
            Pattern::new("P", &["x", "y"]),
            vec![
                Pattern::new("Q", &["M1", "x", "z"]),
                Pattern::new("R", &["M2", "z", "y"]),
            ],
        ),
    ]
}

pub fn catalog_metarule(name: &str) -> Option<Metarule> {
    catalog().into_iter().find(|m| m.name.as_str() == name)
}

/// Structural identity up to renaming of all three variable classes.
pub fn same_shape(a: &Metarule, b: &Metarule) -> bool {
    shape_fingerprint(a) == shape_fingerprint(b)
}

fn shape_fingerprint(m: &Metarule) -> String {
    let mut so: Vec<&Symbol> = Vec::new();
    let mut fo: Vec<&Symbol> = Vec::new();
    let mut uni: Vec<&Symbol> = Vec::new();
    let mut out = String::new();
    fn idx<'a>(pool: &mut Vec<&'a Symbol>, name: &'a Symbol) -> usize {
        match pool.iter().position(|s| *s == name) {
            Some(i) => i,
            None => {
                pool.push(name);
                pool.len() - 1
            }
        }
    }
    for p in m.patterns() {
        out.push_str(&format!("s{}(", idx(&mut so, &p.predicate)));
        for a in &p.args {
            if m.first_order.contains(a) {
                out.push_str(&format!("e{},", idx(&mut fo, a)));
            } else {
                out.push_str(&format!("u{},", idx(&mut uni, a)));
            }
        }
        out.push(')');
    }
    out
}

/// Lifts program clauses to metarules: predicate symbols become second-order
/// variables, ground argument terms become first-order existential
/// variables, variables become universal variables. Duplicates modulo
/// renaming are merged; names are generated in discovery order.
pub fn extract_metarules(program: &Program) -> Vec<Metarule> {
    let mut out: Vec<Metarule> = Vec::new();
    for clause in program.iter() {
        let lifted = lift_clause(clause, out.len());
        if !out.iter().any(|m| same_shape(m, &lifted)) {
            out.push(lifted);
        }
    }
    out
}

fn lift_clause(clause: &Clause, ordinal: usize) -> Metarule {
    const SO_NAMES: [&str; 8] = ["P", "Q", "R", "S", "T", "U", "V", "W"];
    let mut so: Vec<(Symbol, Symbol)> = Vec::new(); // predicate symbol -> variable name
    let mut fo: Vec<(Term, Symbol)> = Vec::new(); // ground term -> variable name
    let mut uni: Vec<(Term, Symbol)> = Vec::new(); // variable -> variable name
    let mut pattern = |lit: &Literal,
                       so: &mut Vec<(Symbol, Symbol)>,
                       fo: &mut Vec<(Term, Symbol)>,
                       uni: &mut Vec<(Term, Symbol)>| {
        let pred = match so.iter().find(|(p, _)| *p == lit.predicate) {
            Some((_, v)) => v.clone(),
            None => {
                let v = Symbol::new(SO_NAMES.get(so.len()).copied().unwrap_or("W"));
                so.push((lit.predicate.clone(), v.clone()));
                v
            }
        };
        let args = lit
            .args
            .iter()
            .map(|t| match t {
                Term::Var(_) => match uni.iter().find(|(u, _)| u == t) {
                    Some((_, v)) => v.clone(),
                    None => {
                        let v = Symbol::new(&universal_name(uni.len()));
                        uni.push((t.clone(), v.clone()));
                        v
                    }
                },
                _ => match fo.iter().find(|(g, _)| g == t) {
                    Some((_, v)) => v.clone(),
                    None => {
                        let v = Symbol::new(&existential_name(fo.len()));
                        fo.push((t.clone(), v.clone()));
                        v
                    }
                },
            })
            .collect();
        Pattern { predicate: pred, args }
    };
    let head = pattern(&clause.head, &mut so, &mut fo, &mut uni);
    let body: Vec<Pattern> = clause
        .body
        .iter()
        .map(|l| pattern(l, &mut so, &mut fo, &mut uni))
        .collect();
    Metarule {
        name: Symbol::new(&format!("extracted_{}", ordinal + 1)),
        second_order: so.into_iter().map(|(_, v)| v).collect(),
        first_order: fo.into_iter().map(|(_, v)| v).collect(),
        universal: uni.into_iter().map(|(_, v)| v).collect(),
        head,
        body,
    }
}

fn universal_name(i: usize) -> String {
    let base = ["x", "y", "z"];
    if i < 3 {
        base[i].to_string()
    } else {
        format!("{}{}", base[i % 3], i / 3)
    }
}

fn existential_name(i: usize) -> String {
    let base = ["X", "Y", "Z"];
    if i < 3 {
        base[i].to_string()
    } else {
        format!("{}{}", base[i % 3], i / 3)
    }
}

/// Every distinct first-order clause obtainable by a total metasubstitution
/// over the given predicate and constant pools. Oracle use only: errors out
/// rather than materializing more than `cap` instantiations.
pub fn enumerate_language(
    predicates: &[(Symbol, usize)],
    constants: &[Term],
    metarules: &[Metarule],
    cap: usize,
) -> Result<Vec<Clause>, MetaruleError> {
    let mut bound: usize = 0;
    for m in metarules {
        let arities = m.second_order_arities();
        let mut count: usize = 1;
        for v in &m.second_order {
            let n = predicates.iter().filter(|(_, a)| *a == arities[v]).count();
            count = count.saturating_mul(n);
        }
        for _ in &m.first_order {
            count = count.saturating_mul(constants.len());
        }
        bound = bound.saturating_add(count);
    }
    if bound > cap {
        return Err(MetaruleError::LanguageCapExceeded { bound, cap });
    }

    let mut seen: Vec<Clause> = Vec::new();
    let mut out: Vec<Clause> = Vec::new();
    for m in metarules {
        let arities = m.second_order_arities();
        let so_choices: Vec<Vec<Symbol>> = m
            .second_order
            .iter()
            .map(|v| {
                predicates
                    .iter()
                    .filter(|(_, a)| *a == arities[v])
                    .map(|(p, _)| p.clone())
                    .collect()
            })
            .collect();
        let fo_choices: Vec<Vec<Term>> = m.first_order.iter().map(|_| constants.to_vec()).collect();
        let mut so_idx = vec![0usize; so_choices.len()];
        let mut fo_idx = vec![0usize; fo_choices.len()];
        if so_choices.iter().any(Vec::is_empty) || fo_choices.iter().any(Vec::is_empty) {
            continue;
        }
        'grid: loop {
            let mu = Metasubstitution {
                metarule: m.name.clone(),
                second_order: m
                    .second_order
                    .iter()
                    .zip(&so_idx)
                    .map(|(v, &i)| (v.clone(), so_choices_at(&so_choices, v, m)[i].clone()))
                    .collect(),
                first_order: m
                    .first_order
                    .iter()
                    .zip(&fo_idx)
                    .map(|(v, &i)| (v.clone(), constants[i].clone()))
                    .collect(),
            };
            let clause = apply_metasub(&mu, m).expect("total metasubstitution applies");
            let canon = clause.canonical();
            if !seen.contains(&canon) {
                seen.push(canon);
                out.push(clause);
            }
            // Advance.
            let mut carried = true;
            for (i, idx) in fo_idx.iter_mut().enumerate() {
                *idx += 1;
                if *idx < fo_choices[i].len() {
                    carried = false;
                    break;
                }
                *idx = 0;
            }
            if carried {
                for (i, idx) in so_idx.iter_mut().enumerate() {
                    *idx += 1;
                    if *idx < so_choices[i].len() {
                        carried = false;
                        break;
                    }
                    *idx = 0;
                }
            }
            if carried {
                break 'grid;
            }
        }
    }
    Ok(out)
}

fn so_choices_at<'a>(
    so_choices: &'a [Vec<Symbol>],
    v: &Symbol,
    m: &Metarule,
) -> &'a Vec<Symbol> {
    let pos = m
        .second_order
        .iter()
        .position(|s| s == v)
        .expect("second-order variable belongs to its metarule");
    &so_choices[pos]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_twelve_rules_with_expected_shapes() {
        let cat = catalog();
        assert_eq!(cat.len(), 12);
        let chain = catalog_metarule("chain").unwrap();
        assert_eq!(chain.to_string(), "chain: P(x,y) :- Q(x,z), R(z,y)");
        let abduced = catalog_metarule("abduced").unwrap();
        assert_eq!(abduced.to_string(), "abduced: P(X,Y)");
        assert_eq!(abduced.first_order.len(), 2);
        let tri = catalog_metarule("tri_chain_1").unwrap();
        assert_eq!(tri.to_string(), "tri_chain_1: P(x,y) :- Q(M,x,z), R(z,y)");
        assert!(catalog_metarule("tailrec").unwrap().is_explicitly_recursive());
        assert!(!chain.is_explicitly_recursive());
    }

    #[test]
    fn apply_identity_binding() {
        let identity = catalog_metarule("identity").unwrap();
        let mu = Metasubstitution {
            metarule: Symbol::new("identity"),
            second_order: vec![
                (Symbol::new("P"), Symbol::new("path")),
                (Symbol::new("Q"), Symbol::new("edge_alpha")),
            ],
            first_order: vec![],
        };
        let c = apply_metasub(&mu, &identity).unwrap();
        assert_eq!(c.canonical().to_string(), "path(x,y):-edge_alpha(x,y)");
    }

    #[test]
    fn apply_unit_metarule_grounds_fully() {
        let abduced = catalog_metarule("abduced").unwrap();
        let mu = Metasubstitution {
            metarule: Symbol::new("abduced"),
            second_order: vec![(Symbol::new("P"), Symbol::new("p"))],
            first_order: vec![
                (Symbol::new("X"), Term::constant("a")),
                (Symbol::new("Y"), Term::constant("b")),
            ],
        };
        let c = apply_metasub(&mu, &abduced).unwrap();
        assert_eq!(c.to_string(), "p(a,b)");
        assert!(c.is_fact());
    }

    #[test]
    fn apply_rejects_domain_mismatch() {
        let identity = catalog_metarule("identity").unwrap();
        let mu = Metasubstitution {
            metarule: Symbol::new("identity"),
            second_order: vec![(Symbol::new("P"), Symbol::new("p"))],
            first_order: vec![],
        };
        assert!(apply_metasub(&mu, &identity).is_err());
    }

    #[test]
    fn postcon_shape_for_parity_clauses() {
        // P(x) :- Q(x,y), R(y), as used for even/odd.
        let m = Metarule::new(
            "postcon_unit",
            &["P", "Q", "R"],
            &[],
            &["x", "y"],
            Pattern::new("P", &["x"]),
            vec![Pattern::new("Q", &["x", "y"]), Pattern::new("R", &["y"])],
        )
        .unwrap();
        let mu = Metasubstitution {
            metarule: Symbol::new("postcon_unit"),
            second_order: vec![
                (Symbol::new("P"), Symbol::new("even")),
                (Symbol::new("Q"), Symbol::new("predecessor")),
                (Symbol::new("R"), Symbol::new("odd")),
            ],
            first_order: vec![],
        };
        let c = apply_metasub(&mu, &m).unwrap();
        assert_eq!(c.canonical().to_string(), "even(x):-predecessor(x,y),odd(y)");
    }

    #[test]
    fn encapsulated_chain_is_first_order() {
        let chain = catalog_metarule("chain").unwrap();
        let enc = chain.encapsulate();
        assert_eq!(enc.to_string(), "'$m'(P,x,y):-'$m'(Q,x,z),'$m'(R,z,y)");
        let identity = catalog_metarule("identity").unwrap();
        assert_eq!(identity.encapsulate().to_string(), "'$m'(P,x,y):-'$m'(Q,x,y)");
        let abduced = catalog_metarule("abduced").unwrap();
        assert_eq!(abduced.encapsulate().to_string(), "'$m'(P,X,Y)");
    }

    #[test]
    fn extraction_lifts_and_merges() {
        let program = Program::new(vec![Clause::new(
            Literal::new("path", vec![Term::var("A"), Term::var("B")]),
            vec![
                Literal::new("edge", vec![Term::var("A"), Term::var("C")]),
                Literal::new("edge", vec![Term::var("C"), Term::var("B")]),
            ],
        )]);
        let extracted = extract_metarules(&program);
        assert_eq!(extracted.len(), 1);
        assert!(same_shape(&extracted[0], &catalog_metarule("chain").unwrap()));
    }

    #[test]
    fn extraction_of_fact_is_unit_shaped() {
        let program = Program::new(vec![Clause::fact(Literal::new(
            "edge",
            vec![Term::constant("a"), Term::constant("b")],
        ))]);
        let extracted = extract_metarules(&program);
        assert_eq!(extracted.len(), 1);
        assert!(same_shape(&extracted[0], &catalog_metarule("abduced").unwrap()));
    }

    #[test]
    fn extraction_of_connectedness_theory() {
        let v = |s: &str| Term::var(s);
        let lit = |p: &str, args: Vec<Term>| Literal::new(p, args);
        let program = Program::new(vec![
            Clause::new(lit("connected", vec![v("X"), v("Y")]), vec![lit("ancestor", vec![v("X"), v("Y")])]),
            Clause::new(lit("connected", vec![v("X"), v("Y")]), vec![lit("ancestor", vec![v("Y"), v("X")])]),
            Clause::new(
                lit("connected", vec![v("X"), v("Y")]),
                vec![lit("ancestor", vec![v("Z"), v("X")]), lit("ancestor", vec![v("Z"), v("Y")])],
            ),
            Clause::new(
                lit("connected", vec![v("X"), v("Y")]),
                vec![lit("ancestor", vec![v("X"), v("Z")]), lit("ancestor", vec![v("Y"), v("Z")])],
            ),
        ]);
        let extracted = extract_metarules(&program);
        assert_eq!(extracted.len(), 4);
        for want in ["identity", "inverse", "queue", "stack"] {
            let cat = catalog_metarule(want).unwrap();
            assert!(
                extracted.iter().any(|m| same_shape(m, &cat)),
                "missing shape {}",
                want
            );
        }
    }

    #[test]
    fn roundtrip_lift_of_instantiation() {
        for name in ["identity", "inverse", "chain", "stack", "queue", "precon", "postcon"] {
            let m = catalog_metarule(name).unwrap();
            let mu = Metasubstitution {
                metarule: m.name.clone(),
                second_order: m
                    .second_order
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v.clone(), Symbol::new(&format!("pred{}", i))))
                    .collect(),
                first_order: vec![],
            };
            let clause = apply_metasub(&mu, &m).unwrap();
            let lifted = extract_metarules(&Program::new(vec![clause]));
            assert_eq!(lifted.len(), 1);
            assert!(same_shape(&lifted[0], &m), "lift of {} instantiation", name);
        }
    }

    #[test]
    fn single_symbol_language() {
        let preds = vec![(Symbol::new("path"), 2)];
        let lang = enumerate_language(&preds, &[], &[catalog_metarule("identity").unwrap()], 1000)
            .unwrap();
        assert_eq!(lang.len(), 1);
        assert_eq!(lang[0].canonical().to_string(), "path(x,y):-path(x,y)");
    }

    #[test]
    fn three_symbol_language_counts() {
        let preds: Vec<(Symbol, usize)> = ["path", "edge_alpha", "edge_alnum"]
            .iter()
            .map(|p| (Symbol::new(p), 2))
            .collect();
        let rules = vec![
            catalog_metarule("identity").unwrap(),
            catalog_metarule("chain").unwrap(),
        ];
        let lang = enumerate_language(&preds, &[], &rules, 1000).unwrap();
        // 3^2 identity instances plus 3^3 chain instances.
        assert_eq!(lang.len(), 36);
        let path_headed = lang
            .iter()
            .filter(|c| c.head.predicate.as_str() == "path")
            .count();
        assert_eq!(path_headed, 12);
    }

    #[test]
    fn language_cap_guard() {
        let preds: Vec<(Symbol, usize)> = (0..200).map(|i| (Symbol::new(&format!("p{}", i)), 2)).collect();
        let err = enumerate_language(&preds, &[], &[catalog_metarule("chain").unwrap()], 1000);
        assert!(err.is_err());
    }

    #[test]
    fn arity_typed_slots() {
        let preds = vec![
            (Symbol::new("move"), 2),
            (Symbol::new("double_move"), 3),
        ];
        let lang = enumerate_language(
            &preds,
            &[Term::constant("move_up")],
            &[catalog_metarule("tri_chain_1").unwrap()],
            1000,
        )
        .unwrap();
        // P and R range over the arity-2 symbols, Q over the arity-3 one,
        // M over the single constant.
        assert_eq!(lang.len(), 2 * 1 * 2);
        for c in &lang {
            assert_eq!(c.body[0].predicate.as_str(), "double_move");
        }
    }
}
