//! Symbolic bottom-up semantics for LO.
//!
//! An interpretation is a finite antichain of facts standing for its upward
//! closure. Because multiset inclusion is a well-quasi-order, the saturation
//! loop in [`saturate`] always terminates.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::error::DialectError;
use crate::multiset::Fact;
use crate::syntax::{Context, Goal, Program};

/// A set of pairwise ⪯-incomparable facts, kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Antichain {
    elems: Vec<Fact>,
}

impl Antichain {
    pub fn new() -> Self {
        Antichain::default()
    }

    /// The minimal elements of `facts`.
    pub fn from_facts(facts: impl IntoIterator<Item = Fact>) -> Self {
        let mut a = Antichain::new();
        for f in facts {
            a.insert_minimal(f);
        }
        a
    }

    pub fn elems(&self) -> &[Fact] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Adds `a` unless some member is below it; members above `a` are
    /// dropped. Returns whether the antichain changed.
    pub fn insert_minimal(&mut self, a: Fact) -> bool {
        if self.elems.iter().any(|b| b.leq(&a)) {
            return false;
        }
        self.elems.retain(|b| !a.leq(b));
        let pos = self.elems.binary_search(&a).unwrap_err();
        self.elems.insert(pos, a);
        true
    }

    /// `self ⊑ other`: every member of `self` is above some member of `other`.
    pub fn subsumed_by(&self, other: &Antichain) -> bool {
        self.elems.iter().all(|b| other.covers(b))
    }

    /// Whether `f` lies in the upward closure of the antichain.
    pub fn covers(&self, f: &Fact) -> bool {
        self.elems.iter().any(|a| a.leq(f))
    }

    /// Least upper bound `self ⊔ other`, normalized.
    pub fn join(&mut self, other: &Antichain) -> bool {
        let mut changed = false;
        for f in &other.elems {
            changed |= self.insert_minimal(f.clone());
        }
        changed
    }

    /// Whether the antichain invariant holds (no two members comparable).
    pub fn is_antichain(&self) -> bool {
        self.elems.iter().enumerate().all(|(i, a)| self.elems.iter().skip(i + 1).all(|b| !a.leq(b) && !b.leq(a)))
    }
}

impl FromIterator<Fact> for Antichain {
    fn from_iter<T: IntoIterator<Item = Fact>>(iter: T) -> Self {
        Antichain::from_facts(iter)
    }
}

/// Insert `a` into `i`, returning the normalized result.
pub fn insert_minimal(i: &Antichain, a: Fact) -> Antichain {
    let mut out = i.clone();
    out.insert_minimal(a);
    out
}

/// `i ⊑ j`.
pub fn subsumed(i: &Antichain, j: &Antichain) -> bool {
    i.subsumed_by(j)
}

/// All output facts `A` with `I ⊩ Δ[A]`, over facts of the given width.
///
/// Every rule-derivable output is returned, including non-minimal ones.
pub fn judge(i: &Antichain, delta: &Context, width: usize) -> BTreeSet<Fact> {
    judge_facts(i.elems(), delta, width, false)
}

/// The ⪯-minimal elements of [`judge`]; pruning intermediate results is
/// exact because `•` and `∖` are monotone in each argument.
pub fn judge_minimal(i: &Antichain, delta: &Context, width: usize) -> Antichain {
    Antichain::from_facts(judge_facts(i.elems(), delta, width, true))
}

fn minimize(set: BTreeSet<Fact>) -> BTreeSet<Fact> {
    Antichain::from_facts(set).elems.into_iter().collect()
}

pub(crate) fn judge_facts(i: &[Fact], delta: &Context, width: usize, prune: bool) -> BTreeSet<Fact> {
    if delta.contains(&Goal::Top) {
        return BTreeSet::from([Fact::empty(width)]);
    }
    let split = delta.goals().iter().position(|g| matches!(g, Goal::Par(..) | Goal::With(..)));
    match split.map(|k| (k, &delta.goals()[k])) {
        Some((k, Goal::Par(l, r))) => judge_facts(i, &delta.replace(k, [(**l).clone(), (**r).clone()]), width, prune),
        Some((k, Goal::With(l, r))) => {
            let left = judge_facts(i, &delta.replace(k, [(**l).clone()]), width, prune);
            if left.is_empty() {
                return BTreeSet::new();
            }
            let right = judge_facts(i, &delta.replace(k, [(**r).clone()]), width, prune);
            let out = left.iter().flat_map(|a| right.iter().map(move |b| a.lub(b))).collect();
            if prune {
                minimize(out)
            } else {
                out
            }
        }
        Some(_) => unreachable!(),
        None => {
            if delta.contains(&Goal::One) {
                return BTreeSet::new();
            }
            let fact = delta.as_fact(width).expect("atomic context");
            let out = i.iter().map(|b| b.diff(&fact)).collect();
            if prune {
                minimize(out)
            } else {
                out
            }
        }
    }
}

fn check_dialect(p: &Program) -> Result<(), DialectError> {
    match p.clauses.iter().position(|c| c.body.contains_one()) {
        Some(clause) => Err(DialectError { clause }),
        None => Ok(()),
    }
}

/// One application of the symbolic immediate-consequence operator.
pub fn sp_step(p: &Program, i: &Antichain) -> Result<Antichain, DialectError> {
    check_dialect(p)?;
    let width = p.width();
    let mut out = Antichain::new();
    for clause in &p.clauses {
        let body = Context::single(clause.body.clone());
        for a in judge_facts(i.elems(), &body, width, true) {
            out.insert_minimal(clause.head.union(&a));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SaturateError {
    #[error(transparent)]
    Dialect(#[from] DialectError),
    #[error("saturation did not stabilize within {0} iterations")]
    Watchdog(usize),
}

/// Result of [`saturate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    pub fixpoint: Antichain,
    /// Number of operator applications, including the final one that added
    /// nothing new.
    pub iterations: usize,
    /// Accumulated interpretation after each productive step.
    pub trace: Vec<Antichain>,
}

pub const DEFAULT_WATCHDOG: usize = 1_000_000;

/// Least fixpoint of [`sp_step`], computed by accumulating `Old ⊔ S_P(Old)`
/// until the new step is subsumed by what is already known.
pub fn saturate(p: &Program) -> Result<Saturation, SaturateError> {
    saturate_with_watchdog(p, DEFAULT_WATCHDOG)
}

pub fn saturate_with_watchdog(p: &Program, watchdog: usize) -> Result<Saturation, SaturateError> {
    check_dialect(p)?;
    let eps = Fact::empty(p.width());
    let mut old = Antichain::new();
    let mut trace = Vec::new();
    let mut iterations = 0;
    loop {
        if iterations >= watchdog {
            return Err(SaturateError::Watchdog(watchdog));
        }
        let new = sp_step(p, &old)?;
        iterations += 1;
        if new.subsumed_by(&old) {
            break;
        }
        old.join(&new);
        trace.push(old.clone());
        if old.elems() == [eps.clone()] {
            break;
        }
    }
    Ok(Saturation { fixpoint: old, iterations, trace })
}

/// Decides `P ⇒ g` from a saturated interpretation: provable iff the empty
/// fact is a possible output for `g`.
pub fn query(sat: &Antichain, g: &Context, width: usize) -> bool {
    judge_facts(sat.elems(), g, width, true).iter().any(Fact::is_empty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_goal, parse_program};
    use crate::Signature;

    fn facts(s: &Signature, lists: &[&[&str]]) -> Vec<Fact> {
        lists.iter().map(|l| s.fact(l).unwrap()).collect()
    }

    fn running_example() -> Program {
        parse_program("a <- b | c.\n b <- (d | e) & f.\n c | d <- top.\n e | e <- b | c.\n c | f <- top.").unwrap()
    }

    #[test]
    fn insert_makes_redundant_facts_disappear() {
        let s = Signature::new(["a", "b", "c", "d", "f"]).unwrap();
        let i = Antichain::from_facts(facts(&s, &[&["a", "d"], &["a", "f"], &["b", "c"]]));
        let j = insert_minimal(&i, s.fact(&["a"]).unwrap());
        assert_eq!(j, Antichain::from_facts(facts(&s, &[&["b", "c"], &["a"]])));
        assert_eq!(j.len(), 2);
        let top = insert_minimal(&i, s.empty_fact());
        assert_eq!(top.elems(), [s.empty_fact()]);
        let cd = Antichain::from_facts(facts(&s, &[&["c", "d"]]));
        assert_eq!(insert_minimal(&cd, s.fact(&["c", "d"]).unwrap()), cd);
    }

    #[test]
    fn subsumption() {
        let s = Signature::new(["a", "d"]).unwrap();
        let ad = Antichain::from_facts(facts(&s, &[&["a", "d"]]));
        let a = Antichain::from_facts(facts(&s, &[&["a"]]));
        assert!(subsumed(&ad, &a));
        assert!(!subsumed(&a, &ad));
        assert!(subsumed(&Antichain::new(), &a));
    }

    #[test]
    fn judge_with_body() {
        let p = running_example();
        let s = &p.signature;
        let i = Antichain::from_facts(facts(s, &[&["c", "d"], &["c", "f"]]));
        let body = Context::single(p.clauses[1].body.clone());
        let expected: BTreeSet<Fact> =
            facts(s, &[&["c"], &["c", "f"], &["c", "d"], &["c", "d", "f"]]).into_iter().collect();
        assert_eq!(judge(&i, &body, 6), expected);
        assert_eq!(judge_minimal(&i, &body, 6).elems(), [s.fact(&["c"]).unwrap()]);
    }

    #[test]
    fn judge_top_and_atoms() {
        let p = running_example();
        let s = &p.signature;
        let i = Antichain::from_facts(facts(s, &[&["c", "d"], &["c", "f"]]));
        let top = parse_goal("top", s).unwrap();
        assert_eq!(judge(&i, &top, 6), BTreeSet::from([s.empty_fact()]));
        let bc = parse_goal("b, c", s).unwrap();
        assert_eq!(judge(&i, &bc, 6), facts(s, &[&["d"], &["f"]]).into_iter().collect());
    }

    #[test]
    fn first_steps_of_example() {
        let p = running_example();
        let s = &p.signature;
        let i1 = sp_step(&p, &Antichain::new()).unwrap();
        assert_eq!(i1, Antichain::from_facts(facts(s, &[&["c", "d"], &["c", "f"]])));
        let i2 = sp_step(&p, &i1).unwrap();
        let mut acc = i1.clone();
        acc.join(&i2);
        let expected = Antichain::from_facts(facts(
            s,
            &[&["c", "d"], &["c", "f"], &["a", "d"], &["a", "f"], &["b", "c"], &["d", "e", "e"], &["e", "e", "f"]],
        ));
        assert_eq!(acc, expected);
    }

    #[test]
    fn saturation_of_example() {
        let p = running_example();
        let s = &p.signature;
        let sat = saturate(&p).unwrap();
        let expected = Antichain::from_facts(facts(s, &[&["c", "d"], &["c", "f"], &["b", "c"], &["a"], &["e", "e"]]));
        assert_eq!(sat.fixpoint, expected);
        assert_eq!(sat.iterations, 4);
        assert_eq!(sat.trace.len(), 3);
        assert!(query(&sat.fixpoint, &parse_goal("e, e", s).unwrap(), 6));
        assert!(query(&sat.fixpoint, &parse_goal("a", s).unwrap(), 6));
        assert!(!query(&sat.fixpoint, &parse_goal("e", s).unwrap(), 6));
        assert!(query(&sat.fixpoint, &parse_goal("b, e, e", s).unwrap(), 6));
    }

    #[test]
    fn trivial_programs() {
        let p = parse_program("a | b <- top.").unwrap();
        let sat = saturate(&p).unwrap();
        assert_eq!(sat.fixpoint.elems(), [p.signature.fact(&["a", "b"]).unwrap()]);
        let q = parse_program("a <- a.").unwrap();
        let sat = saturate(&q).unwrap();
        assert!(sat.fixpoint.is_empty());
        assert_eq!(sat.iterations, 1);
        let empty = parse_program("atoms a.").unwrap();
        assert!(sp_step(&empty, &Antichain::new()).unwrap().is_empty());
    }

    #[test]
    fn one_is_rejected() {
        let p = parse_program("a <- top.\nb <- 1.").unwrap();
        assert_eq!(sp_step(&p, &Antichain::new()), Err(DialectError { clause: 1 }));
        assert!(matches!(saturate(&p), Err(SaturateError::Dialect(_))));
    }

    #[test]
    fn chained_axioms() {
        let p = parse_program("a <- top.\nb <- a.\nc <- b | a.").unwrap();
        let s = &p.signature;
        let sat = saturate(&p).unwrap();
        let expected = Antichain::from_facts(facts(s, &[&["a"], &["b"], &["c"]]));
        assert_eq!(sat.fixpoint, expected);
        let q = parse_program("atoms a.\na <- a.\na <- top.").unwrap();
        let sat = saturate(&q).unwrap();
        assert_eq!(sat.fixpoint.elems(), [q.signature.fact(&["a"]).unwrap()]);
    }
}
