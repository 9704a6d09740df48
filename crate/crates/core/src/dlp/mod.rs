//! Propositional disjunctive logic programs and their relation to LO.
//!
//! A positive clause is a set of atoms read as their disjunction. Flat LO
//! programs translate into DLP by reading `|` as `∨`, `&` as `∧` and `top` as
//! truth, and abstracting a fact to its underlying set maps LO interpretations
//! to DLP interpretations.

mod text;

pub use text::{parse_dlp, parse_dlp_goal};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::TranslateError;
use crate::multiset::{Fact, Signature};
use crate::symbolic::{saturate, sp_step, Antichain, SaturateError};
use crate::syntax::{Clause, Goal, Program};

/// A disjunction of distinct atoms; the empty clause is `false`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PositiveClause {
    atoms: BTreeSet<usize>,
}

impl PositiveClause {
    pub fn new(atoms: impl IntoIterator<Item = usize>) -> Self {
        PositiveClause { atoms: atoms.into_iter().collect() }
    }

    pub fn empty() -> Self {
        PositiveClause::default()
    }

    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        self.atoms.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.atoms.contains(&atom)
    }

    /// `self ⊆ other`, i.e. `self` implies `other`.
    pub fn is_subset(&self, other: &PositiveClause) -> bool {
        self.atoms.is_subset(&other.atoms)
    }

    pub fn union(&self, other: &PositiveClause) -> PositiveClause {
        PositiveClause { atoms: self.atoms.union(&other.atoms).copied().collect() }
    }

    pub fn difference(&self, other: &PositiveClause) -> PositiveClause {
        PositiveClause { atoms: self.atoms.difference(&other.atoms).copied().collect() }
    }

    /// The clause as a fact where every atom occurs once.
    pub fn to_fact(&self, width: usize) -> Fact {
        Fact::from_counts((0..width).map(|i| u32::from(self.contains(i))).collect())
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        ClauseDisplay { c: self, sig }
    }
}

struct ClauseDisplay<'a> {
    c: &'a PositiveClause,
    sig: &'a Signature,
}

impl fmt::Display for ClauseDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return f.write_str("false");
        }
        for (k, a) in self.c.atoms().enumerate() {
            if k > 0 {
                f.write_str(" ; ")?;
            }
            f.write_str(self.sig.name(a))?;
        }
        Ok(())
    }
}

/// `head <- body_1 , ... , body_m`; an empty body makes a unit clause.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DlpClause {
    pub head: PositiveClause,
    pub body: Vec<PositiveClause>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DlpProgram {
    pub signature: Signature,
    pub clauses: Vec<DlpClause>,
}

impl DlpProgram {
    pub fn to_source(&self) -> String {
        text::program_to_string(self)
    }
}

/// A set of positive clauses, none containing another.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DlpInterp {
    clauses: Vec<PositiveClause>,
}

impl DlpInterp {
    pub fn new() -> Self {
        DlpInterp::default()
    }

    pub fn from_clauses(cs: impl IntoIterator<Item = PositiveClause>) -> Self {
        let mut i = DlpInterp::new();
        for c in cs {
            i.insert_minimal(c);
        }
        i
    }

    pub fn clauses(&self) -> &[PositiveClause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn insert_minimal(&mut self, c: PositiveClause) -> bool {
        if self.covers(&c) {
            return false;
        }
        self.clauses.retain(|d| !c.is_subset(d));
        let pos = self.clauses.binary_search(&c).unwrap_err();
        self.clauses.insert(pos, c);
        true
    }

    pub fn join(&mut self, other: &DlpInterp) -> bool {
        let mut changed = false;
        for c in &other.clauses {
            changed |= self.insert_minimal(c.clone());
        }
        changed
    }

    /// Whether some member implies `c`.
    pub fn covers(&self, c: &PositiveClause) -> bool {
        self.clauses.iter().any(|d| d.is_subset(c))
    }

    /// `self ⊑ other`.
    pub fn subsumed_by(&self, other: &DlpInterp) -> bool {
        self.clauses.iter().all(|c| other.covers(c))
    }

    /// First member of `self` not implied by any member of `other`.
    pub fn first_uncovered<'a>(&'a self, other: &DlpInterp) -> Option<&'a PositiveClause> {
        self.clauses.iter().find(|c| !other.covers(c))
    }
}

impl FromIterator<PositiveClause> for DlpInterp {
    fn from_iter<T: IntoIterator<Item = PositiveClause>>(iter: T) -> Self {
        DlpInterp::from_clauses(iter)
    }
}

fn fact_as_set(f: &Fact, clause: usize, sig: &Signature, head: bool) -> Result<PositiveClause, TranslateError> {
    if let Some(i) = f.atoms().find(|&i| f.occ(i) > 1) {
        let atom = sig.name(i).to_string();
        return Err(if head {
            TranslateError::RepeatedHeadAtom { clause, atom }
        } else {
            TranslateError::RepeatedBodyAtom { clause, atom }
        });
    }
    Ok(PositiveClause::new(f.atoms()))
}

/// Reads a flat LO program as a DLP program.
pub fn translate(p: &Program) -> Result<DlpProgram, TranslateError> {
    let width = p.width();
    let mut clauses = Vec::with_capacity(p.clauses.len());
    for (k, c) in p.clauses.iter().enumerate() {
        if !c.body.is_flat() {
            return Err(TranslateError::NotFlat { clause: k });
        }
        let head = fact_as_set(&c.head, k, &p.signature, true)?;
        let body =
            c.body.conjuncts(width).iter().map(|d| fact_as_set(d, k, &p.signature, false)).collect::<Result<_, _>>()?;
        clauses.push(DlpClause { head, body });
    }
    Ok(DlpProgram { signature: p.signature.clone(), clauses })
}

/// Inverse of [`translate`]: disjuncts become left-nested pars in atom order.
pub fn untranslate(d: &DlpProgram) -> Program {
    let width = d.signature.len();
    let clauses = d
        .clauses
        .iter()
        .map(|c| {
            let body = c
                .body
                .iter()
                .map(|b| Goal::par_of_atoms(b.atoms()).expect("body disjunct is never empty"))
                .reduce(Goal::with)
                .unwrap_or(Goal::Top);
            Clause { head: c.head.to_fact(width), body }
        })
        .collect();
    Program::new(d.signature.clone(), clauses)
}

/// Every choice of one member of `i` per body disjunct.
fn for_each_choice<'a>(i: &'a [PositiveClause], n: usize, f: &mut impl FnMut(&[&'a PositiveClause])) {
    fn go<'a>(
        i: &'a [PositiveClause],
        n: usize,
        acc: &mut Vec<&'a PositiveClause>,
        f: &mut impl FnMut(&[&'a PositiveClause]),
    ) {
        if acc.len() == n {
            f(acc);
            return;
        }
        for c in i {
            acc.push(c);
            go(i, n, acc, f);
            acc.pop();
        }
    }
    go(i, n, &mut Vec::with_capacity(n), f);
}

/// One application of the disjunctive immediate-consequence operator.
///
/// For a body disjunct `D` and a known clause `E`, the weakest clause of the
/// form `D ∨ C` implied by `E` has `C = E ∖ D`.
pub fn tpd_step(d: &DlpProgram, i: &DlpInterp) -> DlpInterp {
    let mut out = DlpInterp::new();
    for c in &d.clauses {
        if c.body.is_empty() {
            out.insert_minimal(c.head.clone());
            continue;
        }
        for_each_choice(&i.clauses, c.body.len(), &mut |es| {
            let derived = c.body.iter().zip(es).fold(c.head.clone(), |acc, (dj, e)| acc.union(&e.difference(dj)));
            out.insert_minimal(derived);
        });
    }
    out
}

/// Least fixpoint of [`tpd_step`].
pub fn dlp_lfp(d: &DlpProgram) -> DlpInterp {
    let mut cur = DlpInterp::new();
    loop {
        let next = tpd_step(d, &cur);
        if next.subsumed_by(&cur) {
            return cur;
        }
        cur.join(&next);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefuteOutcome {
    /// The goals of a leftmost SLO-refutation, from the input to the empty goal.
    Refuted(Vec<Vec<PositiveClause>>),
    Exhausted,
    DepthLimit,
}

const UNREFUTABLE: u64 = u64::MAX;

struct Refuter<'a> {
    d: &'a DlpProgram,
    /// Fewest resolution steps refuting a single goal clause, with the
    /// program clause that achieves it.
    cost: HashMap<PositiveClause, (u64, Option<usize>)>,
}

impl Refuter<'_> {
    /// A step on `C` with some body disjunct already inside `C` reproduces `C`
    /// itself as a subgoal and can be skipped; every remaining step strictly
    /// enlarges the selected clause, so the search below is finite.
    fn cost(&mut self, c: &PositiveClause) -> u64 {
        if let Some(&(k, _)) = self.cost.get(c) {
            return k;
        }
        let mut best = (UNREFUTABLE, None);
        for (idx, clause) in self.d.clauses.iter().enumerate() {
            if !clause.head.is_subset(c) || clause.body.iter().any(|b| b.is_subset(c)) {
                continue;
            }
            let mut total: u64 = 1;
            for b in &clause.body {
                let k = self.cost(&b.union(c));
                total = total.saturating_add(k);
                if k == UNREFUTABLE {
                    total = UNREFUTABLE;
                    break;
                }
            }
            if total < best.0 {
                best = (total, Some(idx));
            }
        }
        self.cost.insert(c.clone(), best);
        best.0
    }

    fn derivation(&self, goal: &[PositiveClause]) -> Vec<Vec<PositiveClause>> {
        let mut cur = goal.to_vec();
        let mut out = vec![cur.clone()];
        while let Some(c) = cur.first().cloned() {
            let idx = self.cost[&c].1.expect("refutable clause has a step");
            let clause = &self.d.clauses[idx];
            let mut next: Vec<PositiveClause> = clause.body.iter().map(|b| b.union(&c)).collect();
            next.extend(cur.drain(1..));
            cur = next;
            out.push(cur.clone());
        }
        out
    }
}

/// Searches for an SLO-refutation of the goal `<- C_1, ..., C_k` using at
/// most `depth` resolution steps, always resolving on the leftmost clause.
pub fn slo_refute(d: &DlpProgram, goal: &[PositiveClause], depth: usize) -> RefuteOutcome {
    let mut r = Refuter { d, cost: HashMap::new() };
    let mut total: u64 = 0;
    for c in goal {
        let k = r.cost(c);
        if k == UNREFUTABLE {
            return RefuteOutcome::Exhausted;
        }
        total = total.saturating_add(k);
    }
    if total > depth as u64 {
        return RefuteOutcome::DepthLimit;
    }
    RefuteOutcome::Refuted(r.derivation(goal))
}

/// The underlying set of a fact.
pub fn abstract_fact(a: &Fact) -> PositiveClause {
    PositiveClause::new(a.atoms())
}

pub fn abstract_interp(i: &Antichain) -> DlpInterp {
    i.elems().iter().map(abstract_fact).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompareError {
    Translate(TranslateError),
    Saturate(SaturateError),
}

impl fmt::Display for CompareError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompareError::Translate(e) => e.fmt(f),
            CompareError::Saturate(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CompareError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub abstracted: DlpInterp,
    pub dlp: DlpInterp,
    pub sound: bool,
    /// `None` when some body has more than one conjunct.
    pub complete: Option<bool>,
    /// A clause witnessing the first failed check.
    pub witness: Option<PositiveClause>,
}

/// Runs both bottom-up engines on a flat program and compares the results
/// through the set abstraction.
pub fn compare(p: &Program) -> Result<CompareReport, CompareError> {
    let d = translate(p).map_err(CompareError::Translate)?;
    let sat = saturate(p).map_err(CompareError::Saturate)?;
    let abstracted = abstract_interp(&sat.fixpoint);
    let dlp = dlp_lfp(&d);
    let unsound = abstracted.first_uncovered(&dlp).cloned();
    let sound = unsound.is_none();
    let one_conjunct = d.clauses.iter().all(|c| c.body.len() <= 1);
    let missing = if one_conjunct { dlp.first_uncovered(&abstracted).cloned() } else { None };
    let complete = one_conjunct.then(|| missing.is_none());
    let witness = unsound.or(missing);
    Ok(CompareReport { abstracted, dlp, sound, complete, witness })
}

/// Step-level soundness: `α(S_P(I)) ⊑ T^d(α(I))`.
pub fn step_sound(p: &Program, d: &DlpProgram, i: &Antichain) -> bool {
    let lo = sp_step(p, i).expect("flat programs never use 1");
    abstract_interp(&lo).subsumed_by(&tpd_step(d, &abstract_interp(i)))
}
