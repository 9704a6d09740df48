//! Abstract syntax of LO and LO1 programs and goals.
//!
//! Concrete syntax:
//!
//! ```text
//! % comment
//! dialect lo1.
//! atoms a b c.
//! a <- 1.
//! a | b <- top.
//! b <- (d | e) & f.
//! (c <- a) & (c <- b).
//! ```
//!
//! `<-` is reversed linear implication, `|` is par, `&` is with, `top` and `1`
//! are the units. `&` binds looser than `|`.

mod lexer;
mod parser;
mod printer;

pub(crate) use lexer::{Lexer, Token, TokenKind};
pub use parser::{parse_goal, parse_program};

use std::fmt;

use crate::multiset::{Fact, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dialect {
    Lo,
    Lo1,
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dialect::Lo => "lo",
            Dialect::Lo1 => "lo1",
        })
    }
}

/// A goal formula. Atoms are signature positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Goal {
    Atom(usize),
    Top,
    One,
    Par(Box<Goal>, Box<Goal>),
    With(Box<Goal>, Box<Goal>),
}

impl Goal {
    pub fn par(l: Goal, r: Goal) -> Goal {
        Goal::Par(Box::new(l), Box::new(r))
    }

    pub fn with(l: Goal, r: Goal) -> Goal {
        Goal::With(Box::new(l), Box::new(r))
    }

    /// Left-nested par of the given atoms; `None` when `atoms` is empty.
    pub fn par_of_atoms(atoms: impl IntoIterator<Item = usize>) -> Option<Goal> {
        atoms.into_iter().map(Goal::Atom).reduce(Goal::par)
    }

    pub fn contains_one(&self) -> bool {
        match self {
            Goal::One => true,
            Goal::Atom(_) | Goal::Top => false,
            Goal::Par(l, r) | Goal::With(l, r) => l.contains_one() || r.contains_one(),
        }
    }

    /// Number of connectives on the longest path from the root.
    pub fn depth(&self) -> usize {
        match self {
            Goal::Atom(_) | Goal::Top | Goal::One => 0,
            Goal::Par(l, r) | Goal::With(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// `true` for `top` or a `&`-conjunction of `|`-disjunctions of atoms.
    pub fn is_flat(&self) -> bool {
        fn disjunction(g: &Goal) -> bool {
            match g {
                Goal::Atom(_) => true,
                Goal::Par(l, r) => disjunction(l) && disjunction(r),
                _ => false,
            }
        }
        fn conjunction(g: &Goal) -> bool {
            match g {
                Goal::With(l, r) => conjunction(l) && conjunction(r),
                g => disjunction(g),
            }
        }
        matches!(self, Goal::Top) || conjunction(self)
    }

    /// The `&`-conjuncts of a flat body, each as a multiset of atoms.
    /// Returns an empty list for `top`.
    pub fn conjuncts(&self, width: usize) -> Vec<Fact> {
        fn collect_atoms(g: &Goal, acc: &mut Fact) {
            match g {
                Goal::Atom(i) => acc.add_one(*i),
                Goal::Par(l, r) | Goal::With(l, r) => {
                    collect_atoms(l, acc);
                    collect_atoms(r, acc);
                }
                Goal::Top | Goal::One => {}
            }
        }
        fn go(g: &Goal, width: usize, out: &mut Vec<Fact>) {
            match g {
                Goal::Top => {}
                Goal::With(l, r) => {
                    go(l, width, out);
                    go(r, width, out);
                }
                g => {
                    let mut f = Fact::empty(width);
                    collect_atoms(g, &mut f);
                    out.push(f);
                }
            }
        }
        let mut out = Vec::new();
        go(self, width, &mut out);
        out
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        printer::GoalDisplay { goal: self, sig }
    }
}

/// A multiset of goals, kept sorted so equal multisets compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Context {
    goals: Vec<Goal>,
}

impl Context {
    pub fn new(mut goals: Vec<Goal>) -> Self {
        goals.sort();
        Context { goals }
    }

    pub fn single(goal: Goal) -> Self {
        Context { goals: vec![goal] }
    }

    pub fn from_fact(fact: &Fact) -> Self {
        Context { goals: fact.atoms().map(Goal::Atom).collect() }
    }

    pub fn goals(&self) -> &[Goal] {
        &self.goals
    }

    pub fn len(&self) -> usize {
        self.goals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.goals.is_empty()
    }

    pub fn contains(&self, g: &Goal) -> bool {
        self.goals.binary_search(g).is_ok()
    }

    /// The fact this context denotes when every goal is an atom.
    pub fn as_fact(&self, width: usize) -> Option<Fact> {
        let mut f = Fact::empty(width);
        for g in &self.goals {
            match g {
                Goal::Atom(i) => f.add_one(*i),
                _ => return None,
            }
        }
        Some(f)
    }

    /// Position of the first goal that is not an atom.
    pub fn first_compound(&self) -> Option<usize> {
        self.goals.iter().position(|g| !matches!(g, Goal::Atom(_)))
    }

    /// A copy with the goal at `idx` replaced by `replacement`.
    pub fn replace(&self, idx: usize, replacement: impl IntoIterator<Item = Goal>) -> Context {
        let mut goals = self.goals.clone();
        goals.remove(idx);
        goals.extend(replacement);
        Context::new(goals)
    }

    /// Multiset sum with extra goals.
    pub fn plus(&self, extra: impl IntoIterator<Item = Goal>) -> Context {
        let mut goals = self.goals.clone();
        goals.extend(extra);
        Context::new(goals)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        printer::ContextDisplay { ctx: self, sig }
    }
}

/// A clause `head <- body`; the head is the multiset of its disjuncts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pub head: Fact,
    pub body: Goal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub signature: Signature,
    pub clauses: Vec<Clause>,
    pub dialect: Dialect,
}

impl Program {
    /// Builds a program, inferring the dialect from the bodies.
    pub fn new(signature: Signature, clauses: Vec<Clause>) -> Self {
        let dialect = if clauses.iter().any(|c| c.body.contains_one()) { Dialect::Lo1 } else { Dialect::Lo };
        Program { signature, clauses, dialect }
    }

    pub fn width(&self) -> usize {
        self.signature.len()
    }

    pub fn uses_one(&self) -> bool {
        self.clauses.iter().any(|c| c.body.contains_one())
    }

    /// Whether every body lies in the flat (DLP-image) fragment.
    pub fn is_flat(&self) -> bool {
        self.clauses.iter().all(|c| c.body.is_flat())
    }

    /// Pretty-prints the program in its source syntax.
    pub fn to_source(&self) -> String {
        printer::program_to_string(self)
    }
}

/// Whether every clause body of `p` lies in the flat fragment.
pub fn is_flat(p: &Program) -> bool {
    p.is_flat()
}
