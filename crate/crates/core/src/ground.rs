//! Ground semantics over explicitly enumerated, size-bounded fact sets.
//!
//! This module is deliberately naive: it enumerates candidate output facts
//! instead of solving for them, so it can serve as an independent oracle for
//! the symbolic engines. Everything is truncated at a total-size cap, which
//! makes the least fixpoint an under-approximation: a small provable fact
//! whose only derivations pass through facts larger than the cap is missed.

use std::collections::BTreeSet;

use crate::multiset::{facts_up_to, Fact};
use crate::syntax::{Context, Dialect, Goal, Program};

/// A finite set of facts, each of total size at most `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundInterp {
    pub facts: BTreeSet<Fact>,
    pub cap: u32,
}

impl GroundInterp {
    pub fn empty(cap: u32) -> Self {
        GroundInterp { facts: BTreeSet::new(), cap }
    }

    /// Builds an interpretation from arbitrary facts, dropping the ones above
    /// the cap.
    pub fn from_facts(facts: impl IntoIterator<Item = Fact>, cap: u32) -> Self {
        let facts = facts.into_iter().filter(|f| f.size() <= cap as u64).collect();
        GroundInterp { facts, cap }
    }

    pub fn contains(&self, f: &Fact) -> bool {
        self.facts.contains(f)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn is_subset(&self, other: &GroundInterp) -> bool {
        self.facts.is_subset(&other.facts)
    }

    /// Facts of size at most `k`.
    pub fn restrict(&self, k: u32) -> BTreeSet<Fact> {
        self.facts.iter().filter(|f| f.size() <= k as u64).cloned().collect()
    }
}

/// `I ⊨ Δ[A]`: does `Δ` extended with the output fact `a` hold in `i`?
///
/// Rules: a context containing `top` holds for any output; a context that is
/// exactly `1` holds only with the empty output (LO1 only); par splits into
/// its two goals; with requires both branches for the same output; an atomic
/// context holds iff its fact plus `a` belongs to `i`.
pub fn sat_ground(i: &GroundInterp, delta: &Context, a: &Fact, dialect: Dialect) -> bool {
    if delta.contains(&Goal::Top) {
        return true;
    }
    let split = delta.goals().iter().position(|g| matches!(g, Goal::Par(..) | Goal::With(..)));
    match split.map(|k| (k, &delta.goals()[k])) {
        Some((k, Goal::Par(l, r))) => sat_ground(i, &delta.replace(k, [(**l).clone(), (**r).clone()]), a, dialect),
        Some((k, Goal::With(l, r))) => {
            sat_ground(i, &delta.replace(k, [(**l).clone()]), a, dialect)
                && sat_ground(i, &delta.replace(k, [(**r).clone()]), a, dialect)
        }
        Some(_) => unreachable!(),
        None => {
            if delta.contains(&Goal::One) {
                dialect == Dialect::Lo1 && delta.len() == 1 && a.is_empty()
            } else {
                let fact = delta.as_fact(a.width()).expect("atomic context");
                i.contains(&fact.union(a))
            }
        }
    }
}

/// One non-cumulative application of the immediate-consequence operator,
/// restricted to facts of size at most `i.cap`.
pub fn tp_image(p: &Program, i: &GroundInterp) -> GroundInterp {
    let candidates = facts_up_to(p.width(), i.cap);
    let mut out = BTreeSet::new();
    for clause in &p.clauses {
        let body = Context::single(clause.body.clone());
        let head_size = clause.head.size();
        for a in &candidates {
            if head_size + a.size() > i.cap as u64 {
                continue;
            }
            if sat_ground(i, &body, a, p.dialect) {
                out.insert(clause.head.union(a));
            }
        }
    }
    GroundInterp { facts: out, cap: i.cap }
}

/// Cumulative step: `tp_image(p, i) ∪ i`.
pub fn tp_step(p: &Program, i: &GroundInterp) -> GroundInterp {
    let mut next = tp_image(p, i);
    next.facts.extend(i.facts.iter().cloned());
    next
}

/// Least fixpoint of [`tp_step`] over facts of size at most `cap`.
pub fn lfp_bounded(p: &Program, cap: u32) -> GroundInterp {
    let mut cur = GroundInterp::empty(cap);
    loop {
        let next = tp_step(p, &cur);
        if next.len() == cur.len() {
            return cur;
        }
        cur = next;
    }
}
