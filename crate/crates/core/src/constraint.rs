//! Counting constraints for LO1.
//!
//! Every constraint reachable from the LO1 rules is a conjunction of one
//! bound per atom, either `x = c` or `x >= c`. That class is closed under
//! conjunction and both shifts, so entailment is a cheap pointwise check.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::multiset::{Fact, Signature, MAX_OCCURRENCE};
use crate::syntax::{Context, Goal, Program};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Eq,
    Geq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bound {
    pub mode: Mode,
    pub value: u32,
}

impl Bound {
    pub fn eq(value: u32) -> Self {
        Bound { mode: Mode::Eq, value }
    }

    pub fn geq(value: u32) -> Self {
        Bound { mode: Mode::Geq, value }
    }

    pub fn admits(&self, x: u32) -> bool {
        match self.mode {
            Mode::Eq => x == self.value,
            Mode::Geq => x >= self.value,
        }
    }

    fn conj(self, other: Bound) -> Option<Bound> {
        match (self.mode, other.mode) {
            (Mode::Geq, Mode::Geq) => Some(Bound::geq(self.value.max(other.value))),
            (Mode::Eq, Mode::Geq) => (self.value >= other.value).then_some(self),
            (Mode::Geq, Mode::Eq) => (other.value >= self.value).then_some(other),
            (Mode::Eq, Mode::Eq) => (self.value == other.value).then_some(self),
        }
    }

    fn shift_down(self, k: u32) -> Option<Bound> {
        match self.mode {
            Mode::Eq => self.value.checked_sub(k).map(Bound::eq),
            Mode::Geq => Some(Bound::geq(self.value.saturating_sub(k))),
        }
    }

    fn shift_up(self, k: u32) -> Bound {
        let value = self.value.checked_add(k).filter(|v| *v <= MAX_OCCURRENCE);
        let value = value.unwrap_or_else(|| panic!("constraint bound exceeds {MAX_OCCURRENCE}"));
        Bound { mode: self.mode, value }
    }

    /// Whether every solution of `other` is a solution of `self`.
    fn subsumes(self, other: Bound) -> bool {
        match (self.mode, other.mode) {
            (Mode::Geq, _) => other.value >= self.value,
            (Mode::Eq, Mode::Eq) => other.value == self.value,
            (Mode::Eq, Mode::Geq) => false,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            Mode::Eq => write!(f, "={}", self.value),
            Mode::Geq => write!(f, ">={}", self.value),
        }
    }
}

/// A conjunction with exactly one bound per atom of the signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountConstraint {
    bounds: Vec<Bound>,
}

/// One entry of the JSON encoding of a constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintEntry {
    pub atom: String,
    pub op: Mode,
    pub value: u32,
}

fn same_width(a: usize, b: usize) {
    assert_eq!(a, b, "usage error: constraints over signatures of different size");
}

impl CountConstraint {
    pub fn from_bounds(bounds: Vec<Bound>) -> Self {
        CountConstraint { bounds }
    }

    /// `x = occ(A)` for every atom.
    pub fn exactly(a: &Fact) -> Self {
        CountConstraint { bounds: a.counts().iter().map(|&c| Bound::eq(c)).collect() }
    }

    /// `x >= occ(A)` for every atom; denotes the upward closure of `A`.
    pub fn at_least(a: &Fact) -> Self {
        CountConstraint { bounds: a.counts().iter().map(|&c| Bound::geq(c)).collect() }
    }

    pub fn bounds(&self) -> &[Bound] {
        &self.bounds
    }

    pub fn width(&self) -> usize {
        self.bounds.len()
    }

    pub fn conj(&self, other: &CountConstraint) -> Option<CountConstraint> {
        same_width(self.width(), other.width());
        let bounds = self.bounds.iter().zip(&other.bounds).map(|(a, b)| a.conj(*b)).collect::<Option<_>>()?;
        Some(CountConstraint { bounds })
    }

    /// Removes the occurrences of `a`; absent when some `x = c` has `c < occ(a)`.
    pub fn shift_down(&self, a: &Fact) -> Option<CountConstraint> {
        same_width(self.width(), a.width());
        let bounds = self.bounds.iter().zip(a.counts()).map(|(b, &k)| b.shift_down(k)).collect::<Option<_>>()?;
        Some(CountConstraint { bounds })
    }

    pub fn shift_up(&self, a: &Fact) -> CountConstraint {
        same_width(self.width(), a.width());
        CountConstraint { bounds: self.bounds.iter().zip(a.counts()).map(|(b, &k)| b.shift_up(k)).collect() }
    }

    /// `self ⪯ other`, i.e. the solutions of `other` are among those of `self`.
    pub fn entails(&self, other: &CountConstraint) -> bool {
        same_width(self.width(), other.width());
        self.bounds.iter().zip(&other.bounds).all(|(a, b)| a.subsumes(*b))
    }

    pub fn member(&self, a: &Fact) -> bool {
        same_width(self.width(), a.width());
        self.bounds.iter().zip(a.counts()).all(|(b, &x)| b.admits(x))
    }

    pub fn admits_empty(&self) -> bool {
        self.bounds.iter().all(|b| b.admits(0))
    }

    /// The least solution.
    pub fn base(&self) -> Fact {
        Fact::from_counts(self.bounds.iter().map(|b| b.value).collect())
    }

    pub fn is_upward_closed(&self) -> bool {
        self.bounds.iter().all(|b| b.mode == Mode::Geq)
    }

    pub fn to_entries(&self, sig: &Signature) -> Vec<ConstraintEntry> {
        self.bounds
            .iter()
            .enumerate()
            .map(|(i, b)| ConstraintEntry { atom: sig.name(i).to_string(), op: b.mode, value: b.value })
            .collect()
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        ConstraintDisplay { c: self, sig }
    }
}

struct ConstraintDisplay<'a> {
    c: &'a CountConstraint,
    sig: &'a Signature,
}

impl fmt::Display for ConstraintDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.c.bounds.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}{}", self.sig.name(i), b)?;
        }
        f.write_str("]")
    }
}

/// A set of constraints with no member entailing another.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ConstraintSet {
    elems: Vec<CountConstraint>,
}

impl ConstraintSet {
    pub fn new() -> Self {
        ConstraintSet::default()
    }

    pub fn from_constraints(cs: impl IntoIterator<Item = CountConstraint>) -> Self {
        let mut s = ConstraintSet::new();
        for c in cs {
            s.insert_minimal(c);
        }
        s
    }

    pub fn elems(&self) -> &[CountConstraint] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn insert_minimal(&mut self, c: CountConstraint) -> bool {
        if self.elems.iter().any(|d| d.entails(&c)) {
            return false;
        }
        self.elems.retain(|d| !c.entails(d));
        let pos = self.elems.binary_search(&c).unwrap_err();
        self.elems.insert(pos, c);
        true
    }

    pub fn join(&mut self, other: &ConstraintSet) -> bool {
        let mut changed = false;
        for c in &other.elems {
            changed |= self.insert_minimal(c.clone());
        }
        changed
    }

    /// `self ⊑ other`: every member of `self` is entailed by a member of `other`.
    pub fn subsumed_by(&self, other: &ConstraintSet) -> bool {
        self.elems.iter().all(|c| other.elems.iter().any(|d| d.entails(c)))
    }

    pub fn member(&self, a: &Fact) -> bool {
        self.elems.iter().any(|c| c.member(a))
    }
}

impl FromIterator<CountConstraint> for ConstraintSet {
    fn from_iter<T: IntoIterator<Item = CountConstraint>>(iter: T) -> Self {
        ConstraintSet::from_constraints(iter)
    }
}

/// All satisfiable constraints `φ` with `I ⊩ Δ[φ]`.
pub fn judge_one(i: &ConstraintSet, delta: &Context, width: usize) -> BTreeSet<CountConstraint> {
    judge_rec(i, delta, width, false)
}

/// The entailment-minimal part of [`judge_one`].
pub fn judge_one_minimal(i: &ConstraintSet, delta: &Context, width: usize) -> ConstraintSet {
    ConstraintSet::from_constraints(judge_rec(i, delta, width, true))
}

fn minimize(set: BTreeSet<CountConstraint>) -> BTreeSet<CountConstraint> {
    ConstraintSet::from_constraints(set).elems.into_iter().collect()
}

fn judge_rec(i: &ConstraintSet, delta: &Context, width: usize, prune: bool) -> BTreeSet<CountConstraint> {
    if delta.contains(&Goal::Top) {
        return BTreeSet::from([CountConstraint::at_least(&Fact::empty(width))]);
    }
    let split = delta.goals().iter().position(|g| matches!(g, Goal::Par(..) | Goal::With(..)));
    let out = match split.map(|k| (k, &delta.goals()[k])) {
        Some((k, Goal::Par(l, r))) => {
            return judge_rec(i, &delta.replace(k, [(**l).clone(), (**r).clone()]), width, prune);
        }
        Some((k, Goal::With(l, r))) => {
            let left = judge_rec(i, &delta.replace(k, [(**l).clone()]), width, prune);
            if left.is_empty() {
                return BTreeSet::new();
            }
            let right = judge_rec(i, &delta.replace(k, [(**r).clone()]), width, prune);
            left.iter().flat_map(|a| right.iter().filter_map(move |b| a.conj(b))).collect()
        }
        Some(_) => unreachable!(),
        None if delta.contains(&Goal::One) => {
            if delta.len() == 1 {
                return BTreeSet::from([CountConstraint::exactly(&Fact::empty(width))]);
            }
            return BTreeSet::new();
        }
        None => {
            let fact = delta.as_fact(width).expect("atomic context");
            i.elems.iter().filter_map(|c| c.shift_down(&fact)).collect()
        }
    };
    if prune {
        minimize(out)
    } else {
        out
    }
}

/// One application of the LO1 symbolic operator.
pub fn sp1_step(p: &Program, i: &ConstraintSet) -> ConstraintSet {
    let width = p.width();
    let mut out = ConstraintSet::new();
    for clause in &p.clauses {
        let body = Context::single(clause.body.clone());
        for c in judge_rec(i, &body, width, true) {
            out.insert_minimal(c.shift_up(&clause.head));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Fixpoint,
    IterationBound,
    /// The caller's stopping condition held before a fixpoint was reached.
    Stopped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation1 {
    pub status: Status,
    pub result: ConstraintSet,
    pub iterations: usize,
    pub trace: Vec<ConstraintSet>,
}

/// Iterates [`sp1_step`] from the empty set for at most `max_iters` steps.
pub fn saturate_one(p: &Program, max_iters: usize) -> Saturation1 {
    saturate_one_until(p, max_iters, |_| false)
}

/// Like [`saturate_one`], but stops early once `stop` holds for the
/// accumulated set. Since the accumulated set only grows, any upward-closed
/// property that holds at that point also holds at the fixpoint.
pub fn saturate_one_until(p: &Program, max_iters: usize, stop: impl Fn(&ConstraintSet) -> bool) -> Saturation1 {
    let mut old = ConstraintSet::new();
    let mut trace = Vec::new();
    let mut iterations = 0;
    while iterations < max_iters {
        let new = sp1_step(p, &old);
        iterations += 1;
        if new.subsumed_by(&old) {
            return Saturation1 { status: Status::Fixpoint, result: old, iterations, trace };
        }
        old.join(&new);
        trace.push(old.clone());
        if stop(&old) {
            return Saturation1 { status: Status::Stopped, result: old, iterations, trace };
        }
    }
    Saturation1 { status: Status::IterationBound, result: old, iterations, trace }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Answer {
    Provable,
    NotProvable,
    Unknown,
}

/// Whether some constraint judged for `g` admits the empty output.
pub fn provable_in(set: &ConstraintSet, g: &Context, width: usize) -> bool {
    judge_rec(set, g, width, true).iter().any(CountConstraint::admits_empty)
}

/// A negative answer is only trusted at a fixpoint.
pub fn query_one(sat: &Saturation1, g: &Context, width: usize) -> Answer {
    if provable_in(&sat.result, g, width) {
        Answer::Provable
    } else if sat.status == Status::Fixpoint {
        Answer::NotProvable
    } else {
        Answer::Unknown
    }
}
