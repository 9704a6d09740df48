//! Goal-directed proof search for LO and LO1 sequents `P => Δ`.
//!
//! Search follows the uniform-proof discipline: compound goals are decomposed
//! before any backchaining happens, and backchaining only fires on contexts
//! made entirely of atoms.

use std::fmt::{self, Write};

use serde::Serialize;

use crate::multiset::Signature;
use crate::syntax::{Context, Goal, Program};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    TopR,
    OneR,
    ParR,
    WithR,
    /// Backchaining on the clause with this index.
    Bc(usize),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::TopR => f.write_str("top_r"),
            Rule::OneR => f.write_str("one_r"),
            Rule::ParR => f.write_str("par_r"),
            Rule::WithR => f.write_str("with_r"),
            Rule::Bc(k) => write!(f, "bc({})", k + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTree {
    pub conclusion: Context,
    pub rule: Rule,
    pub premises: Vec<ProofTree>,
}

/// A rendering-friendly copy of a proof tree with goals printed as text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofView {
    pub conclusion: String,
    pub rule: String,
    pub premises: Vec<ProofView>,
}

impl ProofTree {
    /// Number of nodes on the longest branch.
    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::depth).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn view(&self, sig: &Signature) -> ProofView {
        ProofView {
            conclusion: self.conclusion.display(sig).to_string(),
            rule: self.rule.to_string(),
            premises: self.premises.iter().map(|t| t.view(sig)).collect(),
        }
    }

    /// Indented text, conclusion first and premises below.
    pub fn render(&self, sig: &Signature) -> String {
        let mut out = String::new();
        self.render_into(&mut out, sig, 0);
        out
    }

    fn render_into(&self, out: &mut String, sig: &Signature, indent: usize) {
        let _ = writeln!(out, "{:indent$}{}  [{}]", "", self.conclusion.display(sig), self.rule, indent = indent);
        for t in &self.premises {
            t.render_into(out, sig, indent + 2);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProveOutcome {
    Proved(ProofTree),
    /// Every branch was closed or failed without reaching the depth bound.
    Exhausted,
    DepthLimit,
}

enum Search {
    Found(ProofTree),
    Failed { hit_limit: bool },
}

struct Prover<'a> {
    p: &'a Program,
    path: Vec<Context>,
}

/// The premises each applicable rule would need, in the order they are tried.
fn candidates(p: &Program, ctx: &Context) -> Vec<(Rule, Vec<Context>)> {
    if ctx.contains(&Goal::Top) {
        return vec![(Rule::TopR, vec![])];
    }
    if ctx.goals() == [Goal::One] {
        return vec![(Rule::OneR, vec![])];
    }
    if let Some(k) = ctx.goals().iter().position(|g| matches!(g, Goal::Par(..) | Goal::With(..))) {
        return match &ctx.goals()[k] {
            Goal::Par(l, r) => vec![(Rule::ParR, vec![ctx.replace(k, [(**l).clone(), (**r).clone()])])],
            Goal::With(l, r) => {
                vec![(Rule::WithR, vec![ctx.replace(k, [(**l).clone()]), ctx.replace(k, [(**r).clone()])])]
            }
            _ => unreachable!(),
        };
    }
    let Some(fact) = ctx.as_fact(p.width()) else {
        return vec![];
    };
    p.clauses
        .iter()
        .enumerate()
        .filter(|(_, c)| c.head.leq(&fact))
        .map(|(k, c)| {
            let rest = Context::from_fact(&fact.diff(&c.head)).plus([c.body.clone()]);
            (Rule::Bc(k), vec![rest])
        })
        .collect()
}

impl Prover<'_> {
    fn search(&mut self, ctx: &Context, budget: usize) -> Search {
        let options = candidates(self.p, ctx);
        let mut hit_limit = false;
        for (rule, premises) in options {
            if premises.is_empty() {
                return Search::Found(ProofTree { conclusion: ctx.clone(), rule, premises: vec![] });
            }
            if budget <= 1 {
                hit_limit = true;
                continue;
            }
            if premises.iter().any(|c| c == ctx || self.path.contains(c)) {
                continue;
            }
            self.path.push(ctx.clone());
            let mut proofs = Vec::with_capacity(premises.len());
            let mut failed = false;
            for c in &premises {
                match self.search(c, budget - 1) {
                    Search::Found(t) => proofs.push(t),
                    Search::Failed { hit_limit: h } => {
                        hit_limit |= h;
                        failed = true;
                        break;
                    }
                }
            }
            self.path.pop();
            if !failed {
                return Search::Found(ProofTree { conclusion: ctx.clone(), rule, premises: proofs });
            }
        }
        Search::Failed { hit_limit }
    }
}

/// Iterative deepening up to `depth_limit` nodes per branch.
pub fn prove(p: &Program, goal: &Context, depth_limit: usize) -> ProveOutcome {
    assert!(depth_limit >= 1, "usage error: depth limit must be positive");
    let mut prover = Prover { p, path: Vec::new() };
    for budget in 1..=depth_limit {
        match prover.search(goal, budget) {
            Search::Found(t) => return ProveOutcome::Proved(t),
            Search::Failed { hit_limit: false } => return ProveOutcome::Exhausted,
            Search::Failed { hit_limit: true } => {}
        }
    }
    ProveOutcome::DepthLimit
}

/// Where [`check`] found the first invalid node: child indices from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckError {
    pub path: Vec<usize>,
    pub reason: String,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid node at {:?}: {}", self.path, self.reason)
    }
}

impl std::error::Error for CheckError {}

/// Verifies that every node of `t` is a correct rule instance for `p`.
pub fn check(p: &Program, t: &ProofTree) -> Result<(), CheckError> {
    let mut path = Vec::new();
    check_node(p, t, &mut path)
}

fn local_error(p: &Program, t: &ProofTree) -> Option<String> {
    let ctx = &t.conclusion;
    let premises: Vec<&Context> = t.premises.iter().map(|t| &t.conclusion).collect();
    let arity = |n: usize| (premises.len() != n).then(|| format!("{} expects {n} premises", t.rule));
    match t.rule {
        Rule::TopR => arity(0).or_else(|| (!ctx.contains(&Goal::Top)).then(|| "no `top` in context".into())),
        Rule::OneR => arity(0).or_else(|| (ctx.goals() != [Goal::One]).then(|| "context is not exactly `1`".into())),
        Rule::ParR => arity(1).or_else(|| {
            let ok = ctx.goals().iter().enumerate().any(|(k, g)| match g {
                Goal::Par(l, r) => ctx.replace(k, [(**l).clone(), (**r).clone()]) == *premises[0],
                _ => false,
            });
            (!ok).then(|| "premise is not a par decomposition".into())
        }),
        Rule::WithR => arity(2).or_else(|| {
            let ok = ctx.goals().iter().enumerate().any(|(k, g)| match g {
                Goal::With(l, r) => {
                    ctx.replace(k, [(**l).clone()]) == *premises[0] && ctx.replace(k, [(**r).clone()]) == *premises[1]
                }
                _ => false,
            });
            (!ok).then(|| "premises are not a with decomposition".into())
        }),
        Rule::Bc(k) => arity(1).or_else(|| {
            let Some(clause) = p.clauses.get(k) else {
                return Some(format!("no clause {}", k + 1));
            };
            let Some(fact) = ctx.as_fact(p.width()) else {
                return Some("backchaining on a non-atomic context".into());
            };
            if !clause.head.leq(&fact) {
                return Some("clause head is not contained in the context".into());
            }
            let expected = Context::from_fact(&fact.diff(&clause.head)).plus([clause.body.clone()]);
            (expected != *premises[0]).then(|| "premise does not match the clause body".into())
        }),
    }
}

fn check_node(p: &Program, t: &ProofTree, path: &mut Vec<usize>) -> Result<(), CheckError> {
    if let Some(reason) = local_error(p, t) {
        return Err(CheckError { path: path.clone(), reason });
    }
    for (i, sub) in t.premises.iter().enumerate() {
        path.push(i);
        check_node(p, sub, path)?;
        path.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_goal, parse_program};

    fn running_example() -> Program {
        parse_program("a <- b | c.\nb <- (d | e) & f.\nc | d <- top.\ne | e <- b | c.\nc | f <- top.").unwrap()
    }

    fn transfer_program() -> Program {
        parse_program(
            "a | trans <- b | trans.\ntrans <- done & check.\ncheck | b <- check.\ncheck | c <- check.\ncheck <- 1.\ndone <- top.",
        )
        .unwrap()
    }

    fn proved(o: ProveOutcome) -> ProofTree {
        match o {
            ProveOutcome::Proved(t) => t,
            other => panic!("expected a proof, got {other:?}"),
        }
    }

    #[test]
    fn proof_shape_for_e_e() {
        let p = running_example();
        let goal = parse_goal("e, e", &p.signature).unwrap();
        let t = proved(prove(&p, &goal, 20));
        check(&p, &t).unwrap();
        assert_eq!(t.depth(), 7);
        assert_eq!(t.rule, Rule::Bc(3));
        assert_eq!(t.premises[0].rule, Rule::ParR);
        assert_eq!(t.premises[0].premises[0].rule, Rule::Bc(1));
        let with = &t.premises[0].premises[0].premises[0];
        assert_eq!(with.rule, Rule::WithR);
        let rules: Vec<Rule> = with.premises.iter().map(|b| b.rule).collect();
        assert_eq!(rules, [Rule::ParR, Rule::Bc(4)]);
        assert_eq!(with.premises[0].premises[0].rule, Rule::Bc(2));
    }

    #[test]
    fn transfer_proof() {
        let p = transfer_program();
        let goal = parse_goal("a, a, c, trans", &p.signature).unwrap();
        let t = proved(prove(&p, &goal, 20));
        check(&p, &t).unwrap();
        assert_eq!(t.depth(), 11);
        assert_eq!(t.rule, Rule::Bc(0));
        let leftover = parse_goal("a, b, trans", &p.signature).unwrap();
        assert!(matches!(prove(&p, &leftover, 20), ProveOutcome::Proved(_)));
        let blocked = parse_goal("a, check", &p.signature).unwrap();
        assert_eq!(prove(&p, &blocked, 20), ProveOutcome::Exhausted);
    }

    #[test]
    fn transfer_without_done_fails() {
        let p = parse_program(
            "a | trans <- b | trans.\ntrans <- done & check.\ncheck | b <- check.\ncheck | c <- check.\ncheck <- 1.",
        )
        .unwrap();
        let goal = parse_goal("a, a, c, trans", &p.signature).unwrap();
        assert_eq!(prove(&p, &goal, 30), ProveOutcome::Exhausted);
    }

    #[test]
    fn top_is_immediate() {
        let p = running_example();
        let t = proved(prove(&p, &Context::single(Goal::Top), 1));
        assert_eq!(t.rule, Rule::TopR);
        assert_eq!(t.size(), 1);
    }

    #[test]
    fn exhausted_and_depth_limit() {
        let p = running_example();
        let e = parse_goal("e", &p.signature).unwrap();
        assert_eq!(prove(&p, &e, 30), ProveOutcome::Exhausted);
        let ee = parse_goal("e, e", &p.signature).unwrap();
        assert_eq!(prove(&p, &ee, 6), ProveOutcome::DepthLimit);
        let grow = parse_program("a <- a | a.").unwrap();
        let g = parse_goal("a", &grow.signature).unwrap();
        assert_eq!(prove(&grow, &g, 10), ProveOutcome::DepthLimit);
    }

    #[test]
    fn one_requires_empty_context() {
        let p = parse_program("a <- 1.").unwrap();
        assert!(matches!(prove(&p, &parse_goal("a", &p.signature).unwrap(), 5), ProveOutcome::Proved(_)));
        assert_eq!(prove(&p, &parse_goal("a, a", &p.signature).unwrap(), 5), ProveOutcome::Exhausted);
    }

    #[test]
    fn checker_rejects_bad_trees() {
        let p = running_example();
        let s = &p.signature;
        let bad_bc = ProofTree {
            conclusion: parse_goal("b | c", s).unwrap(),
            rule: Rule::Bc(0),
            premises: vec![ProofTree { conclusion: Context::single(Goal::Top), rule: Rule::TopR, premises: vec![] }],
        };
        let err = check(&p, &bad_bc).unwrap_err();
        assert_eq!(err.path, Vec::<usize>::new());
        let bad_leaf = ProofTree {
            conclusion: parse_goal("a", s).unwrap(),
            rule: Rule::Bc(0),
            premises: vec![ProofTree {
                conclusion: parse_goal("b | c", s).unwrap(),
                rule: Rule::TopR,
                premises: vec![],
            }],
        };
        assert_eq!(check(&p, &bad_leaf).unwrap_err().path, vec![0]);
    }

    #[test]
    fn hand_written_proof() {
        let p = running_example();
        let s = &p.signature;
        let node = |g: &str, rule: Rule, premises: Vec<ProofTree>| ProofTree {
            conclusion: parse_goal(g, s).unwrap(),
            rule,
            premises,
        };
        let t = node(
            "e, e",
            Rule::Bc(3),
            vec![node(
                "b | c",
                Rule::ParR,
                vec![node(
                    "b, c",
                    Rule::Bc(1),
                    vec![node(
                        "c, (d | e) & f",
                        Rule::WithR,
                        vec![
                            node(
                                "c, d | e",
                                Rule::ParR,
                                vec![node("c, d, e", Rule::Bc(2), vec![node("e, top", Rule::TopR, vec![])])],
                            ),
                            node("c, f", Rule::Bc(4), vec![node("top", Rule::TopR, vec![])]),
                        ],
                    )],
                )],
            )],
        );
        check(&p, &t).unwrap();
        assert_eq!(t.depth(), 7);
        assert!(t.render(s).starts_with("e, e  [bc(4)]\n  b | c  [par_r]\n"));
    }
}
