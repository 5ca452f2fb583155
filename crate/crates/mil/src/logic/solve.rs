//! Depth-bounded SLD resolution with leftmost selection and clause-order
//! search.
//!
//! The prover enumerates answer substitutions depth-first. Budgets make every
//! query terminate: exceeding the per-branch depth bound prunes that branch,
//! while exceeding the inference count or the deadline aborts the whole
//! query. An aborted or pruned query that found no answer reports
//! `Exhausted`, which callers must keep distinguishable from plain failure.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use super::term::{Clause, Literal, Program, Symbol, Term, Var};
use super::unify::{rename_apart, unify_in, unify_terms, Substitution};

pub const DEFAULT_MAX_DEPTH: usize = 500;
pub const DEFAULT_MAX_INFERENCES: u64 = 1_000_000;

/// Termination guard for a single query.
#[derive(Clone, Copy, Debug)]
pub struct ProofBudget {
    pub max_depth: usize,
    pub max_inferences: u64,
    pub deadline: Option<Instant>,
}

impl Default for ProofBudget {
    fn default() -> ProofBudget {
        ProofBudget {
            max_depth: DEFAULT_MAX_DEPTH,
            max_inferences: DEFAULT_MAX_INFERENCES,
            deadline: None,
        }
    }
}

impl ProofBudget {
    pub fn with_deadline(mut self, deadline: Option<Instant>) -> ProofBudget {
        self.deadline = deadline;
        self
    }
}

/// Which budget component cut the search.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Exhaustion {
    Depth,
    Inferences,
    Deadline,
    /// A branch repeated a variant of one of its own ancestor goals and was
    /// pruned (only with `loop_check` on).
    Loop,
}

/// Outcome of a single-solution proof attempt.
#[derive(Clone, Debug)]
pub enum Proof {
    Success(Substitution),
    Failure,
    Exhausted(Exhaustion),
}

impl Proof {
    pub fn succeeded(&self) -> bool {
        matches!(self, Proof::Success(_))
    }
}

/// Yes/no entailment plus whether a "no" might be a budget artefact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entailment {
    pub holds: bool,
    pub truncated: bool,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    pub occurs_check: bool,
    /// Prune a branch when a selected goal is a variant of one of its own
    /// ancestors. Sound for answers; a pruned failure reports `Loop`.
    pub loop_check: bool,
}

/// Program clauses grouped by (predicate, arity), preserving program order
/// within each group.
pub struct ClauseIndex {
    clauses: Vec<Clause>,
    by_key: HashMap<(Symbol, usize), Vec<usize>>,
}

impl ClauseIndex {
    pub fn new(program: &Program) -> ClauseIndex {
        ClauseIndex::build(&[program])
    }

    pub fn build(programs: &[&Program]) -> ClauseIndex {
        let mut clauses = Vec::new();
        let mut by_key: HashMap<(Symbol, usize), Vec<usize>> = HashMap::new();
        for p in programs {
            for c in p.iter() {
                let id = clauses.len();
                by_key.entry(c.head.key()).or_default().push(id);
                clauses.push(c.clone());
            }
        }
        ClauseIndex { clauses, by_key }
    }

    fn candidates(&self, key: &(Symbol, usize)) -> &[usize] {
        self.by_key.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }
}

const BUILTIN_APPLY: &str = "apply";
const BUILTIN_SUCC_WITHIN: &str = "succ_within";

/// True for literals the engine evaluates directly instead of resolving
/// against program clauses.
pub fn is_builtin(predicate: &Symbol, arity: usize) -> bool {
    (predicate.as_str() == BUILTIN_APPLY && arity >= 2)
        || (predicate.as_str() == BUILTIN_SUCC_WITHIN && arity == 4)
}

struct AncestorNode {
    form: String,
    parent: Ancestors,
}

type Ancestors = Option<Arc<AncestorNode>>;

fn ancestors_contain(mut chain: &Ancestors, form: &str) -> bool {
    while let Some(node) = chain {
        if node.form == form {
            return true;
        }
        chain = &node.parent;
    }
    false
}

#[derive(Clone)]
struct GoalEntry {
    lit: Literal,
    depth: usize,
    ancestors: Ancestors,
}

#[derive(Clone)]
struct Node {
    /// Remaining goals, leftmost first.
    goals: Vec<GoalEntry>,
    subst: Substitution,
    next_fresh: u32,
    /// Next candidate clause position to try for `goals[0]`.
    cursor: usize,
}

/// A lazy stream of answer substitutions for one query.
pub struct Solutions<'a> {
    index: &'a ClauseIndex,
    budget: ProofBudget,
    options: SolveOptions,
    stack: Vec<Node>,
    inferences: u64,
    branch_cut: Option<Exhaustion>,
    aborted: Option<Exhaustion>,
}

impl<'a> Solutions<'a> {
    pub fn new(
        goals: &[Literal],
        index: &'a ClauseIndex,
        budget: ProofBudget,
        options: SolveOptions,
    ) -> Solutions<'a> {
        Solutions::with_subst(goals, Substitution::new(), index, budget, options)
    }

    pub fn with_subst(
        goals: &[Literal],
        subst: Substitution,
        index: &'a ClauseIndex,
        budget: ProofBudget,
        options: SolveOptions,
    ) -> Solutions<'a> {
        let mut max_index = 0;
        for g in goals {
            for v in g.vars() {
                max_index = max_index.max(v.index + 1);
            }
        }
        let entries = goals
            .iter()
            .map(|lit| GoalEntry {
                lit: lit.clone(),
                depth: 0,
                ancestors: None,
            })
            .collect();
        let root = Node {
            goals: entries,
            subst,
            next_fresh: max_index,
            cursor: 0,
        };
        Solutions {
            index,
            budget,
            options,
            stack: vec![root],
            inferences: 0,
            branch_cut: None,
            aborted: None,
        }
    }

    /// Set when the whole query was aborted, or when some failing branch was
    /// cut short. A query that yielded no answer but has an exhaustion mark
    /// cannot be read as finite failure.
    pub fn exhaustion(&self) -> Option<Exhaustion> {
        self.aborted.or(self.branch_cut)
    }

    pub fn inferences(&self) -> u64 {
        self.inferences
    }

    fn charge(&mut self) -> bool {
        self.inferences += 1;
        if self.inferences > self.budget.max_inferences {
            self.aborted = Some(Exhaustion::Inferences);
            self.stack.clear();
            return false;
        }
        if self.inferences % 256 == 0 {
            if let Some(deadline) = self.budget.deadline {
                if Instant::now() >= deadline {
                    self.aborted = Some(Exhaustion::Deadline);
                    self.stack.clear();
                    return false;
                }
            }
        }
        true
    }

    /// Evaluates a builtin goal. Builtins are deterministic: at most one
    /// continuation.
    fn eval_builtin(&mut self, node: &Node, entry: &GoalEntry) -> Option<Node> {
        let lit = &entry.lit;
        let rest = || node.goals[1..].to_vec();
        if lit.predicate.as_str() == BUILTIN_APPLY {
            // apply(P, a1..ak) with P bound to a constant resolves as
            // p(a1..ak); an unbound P fails the branch.
            let target = node.subst.walk(&lit.args[0]).clone();
            if let Term::Const(p) = target {
                let rewritten = Literal {
                    predicate: p,
                    args: lit.args[1..].to_vec(),
                };
                let mut goals = vec![GoalEntry {
                    lit: rewritten,
                    depth: entry.depth,
                    ancestors: entry.ancestors.clone(),
                }];
                goals.extend(rest());
                return Some(Node {
                    goals,
                    subst: node.subst.clone(),
                    next_fresh: node.next_fresh,
                    cursor: 0,
                });
            }
            return None;
        }
        // succ_within(A, B, Lo, Hi): B = A+1 with Lo <= A and B <= Hi.
        // Works with either of A, B bound to an integer.
        let lo = node.subst.apply(&lit.args[2]).as_int()?;
        let hi = node.subst.apply(&lit.args[3]).as_int()?;
        let a = node.subst.apply(&lit.args[0]);
        let b = node.subst.apply(&lit.args[1]);
        let (av, bv) = match (a.as_int(), b.as_int()) {
            (Some(av), _) => (av, av + 1),
            (None, Some(bv)) => (bv - 1, bv),
            (None, None) => return None,
        };
        if av < lo || bv > hi {
            return None;
        }
        let subst = unify_terms(&a, &Term::int(av), node.subst.clone(), false)?;
        let subst = unify_terms(&b, &Term::int(bv), subst, false)?;
        Some(Node {
            goals: rest(),
            subst,
            next_fresh: node.next_fresh,
            cursor: 0,
        })
    }
}

impl Iterator for Solutions<'_> {
    type Item = Substitution;

    fn next(&mut self) -> Option<Substitution> {
        'search: while let Some(mut node) = self.stack.pop() {
            let entry = match node.goals.first() {
                None => return Some(node.subst),
                Some(e) => e.clone(),
            };

            if is_builtin(&entry.lit.predicate, entry.lit.arity()) {
                if !self.charge() {
                    return None;
                }
                if let Some(next) = self.eval_builtin(&node, &entry) {
                    self.stack.push(next);
                }
                continue 'search;
            }

            if entry.depth >= self.budget.max_depth {
                self.branch_cut.get_or_insert(Exhaustion::Depth);
                continue 'search;
            }

            let mut child_ancestors = entry.ancestors.clone();
            if self.options.loop_check && node.cursor == 0 {
                let form = node.subst.apply_literal(&entry.lit);
                let form = Clause::fact(form).canonical().to_string();
                if ancestors_contain(&entry.ancestors, &form) {
                    self.branch_cut.get_or_insert(Exhaustion::Loop);
                    continue 'search;
                }
                child_ancestors = Some(Arc::new(AncestorNode {
                    form,
                    parent: entry.ancestors.clone(),
                }));
            } else if self.options.loop_check {
                let form = node.subst.apply_literal(&entry.lit);
                let form = Clause::fact(form).canonical().to_string();
                child_ancestors = Some(Arc::new(AncestorNode {
                    form,
                    parent: entry.ancestors.clone(),
                }));
            }

            let key = entry.lit.key();
            let candidates = self.index.candidates(&key).to_vec();
            let goal_first_arg = entry
                .lit
                .args
                .first()
                .map(|t| node.subst.walk(t).clone());
            while node.cursor < candidates.len() {
                let clause_id = candidates[node.cursor];
                node.cursor += 1;
                let clause = &self.index.clauses[clause_id];
                // First-argument prefilter: constant heads that cannot match
                // are skipped without charging an inference.
                if let (Some(Term::Const(g)), Some(Term::Const(h))) =
                    (goal_first_arg.as_ref(), clause.head.args.first())
                {
                    if g != h {
                        continue;
                    }
                }
                if !self.charge() {
                    return None;
                }
                let renamed = rename_apart(clause, node.next_fresh);
                let fresh = node.next_fresh + renamed.distinct_vars().len() as u32;
                if let Some(subst) =
                    unify_in(&entry.lit, &renamed.head, node.subst.clone(), self.options.occurs_check)
                {
                    let mut goals = Vec::with_capacity(renamed.body.len() + node.goals.len() - 1);
                    for lit in renamed.body {
                        goals.push(GoalEntry {
                            lit,
                            depth: entry.depth + 1,
                            ancestors: child_ancestors.clone(),
                        });
                    }
                    goals.extend_from_slice(&node.goals[1..]);
                    let child = Node {
                        goals,
                        subst,
                        next_fresh: fresh,
                        cursor: 0,
                    };
                    if node.cursor < candidates.len() {
                        self.stack.push(node);
                    }
                    self.stack.push(child);
                    continue 'search;
                }
            }
            // No candidate resolved: backtrack.
        }
        None
    }
}

/// Enumerates answers for a goal conjunction. The program is standardized
/// apart from the goal automatically (clauses are renamed on use).
pub fn solutions<'a>(
    goals: &[Literal],
    index: &'a ClauseIndex,
    budget: ProofBudget,
    options: SolveOptions,
) -> Solutions<'a> {
    Solutions::new(goals, index, budget, options)
}

/// First-solution view of `solutions`.
pub fn prove(
    goals: &[Literal],
    index: &ClauseIndex,
    budget: ProofBudget,
    options: SolveOptions,
) -> Proof {
    let mut stream = Solutions::new(goals, index, budget, options);
    match stream.next() {
        Some(subst) => Proof::Success(subst),
        None => match stream.exhaustion() {
            Some(kind) => Proof::Exhausted(kind),
            None => Proof::Failure,
        },
    }
}

/// True iff at least one answer exists within budget. A `false` with
/// `truncated` set may be a budget artefact rather than finite failure.
pub fn entails(atom: &Literal, index: &ClauseIndex, budget: ProofBudget, options: SolveOptions) -> Entailment {
    match prove(std::slice::from_ref(atom), index, budget, options) {
        Proof::Success(_) => Entailment { holds: true, truncated: false },
        Proof::Failure => Entailment { holds: false, truncated: false },
        Proof::Exhausted(_) => Entailment { holds: false, truncated: true },
    }
}
