#![allow(dead_code)]

use loft_core::{Clause, Fact, Goal, Program, Signature};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

pub fn signature(n: usize) -> Signature {
    Signature::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}

pub fn arb_goal(n: usize, depth: u32, allow_one: bool) -> BoxedStrategy<Goal> {
    let atom = (0..n).prop_map(Goal::Atom);
    let leaf = if allow_one {
        prop_oneof![6 => atom, 1 => Just(Goal::Top), 1 => Just(Goal::One)].boxed()
    } else {
        prop_oneof![6 => atom, 1 => Just(Goal::Top)].boxed()
    };
    leaf.prop_recursive(depth, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Goal::par(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Goal::with(l, r)),
        ]
    })
    .boxed()
}

pub fn from_atoms(n: usize, atoms: impl IntoIterator<Item = usize>) -> Fact {
    let mut occ = vec![0; n];
    for a in atoms {
        occ[a] += 1;
    }
    Fact::from_counts(occ)
}

/// A head with one or two atoms, repetitions allowed.
fn arb_head(n: usize) -> impl Strategy<Value = Fact> {
    prop::collection::vec(0..n, 1..=2).prop_map(move |atoms| from_atoms(n, atoms))
}

/// A non-empty set of distinct atoms, as a fact.
fn arb_atom_set(n: usize, max: usize) -> impl Strategy<Value = Fact> {
    prop::collection::btree_set(0..n, 1..=max.min(n)).prop_map(move |s| from_atoms(n, s))
}

fn build(n: usize, clauses: Vec<(Fact, Goal)>) -> Program {
    let clauses = clauses.into_iter().map(|(head, body)| Clause { head, body }).collect();
    Program::new(signature(n), clauses)
}

/// Programs over exactly `n` atoms with up to `max_clauses` clauses.
pub fn arb_program_over(n: usize, max_clauses: usize, depth: u32, allow_one: bool) -> BoxedStrategy<Program> {
    prop::collection::vec((arb_head(n), arb_goal(n, depth, allow_one)), 1..=max_clauses)
        .prop_map(move |cs| build(n, cs))
        .boxed()
}

/// Programs over `1..=max_n` atoms with up to `max_clauses` clauses.
pub fn arb_program(max_n: usize, max_clauses: usize, depth: u32, allow_one: bool) -> BoxedStrategy<Program> {
    (1..=max_n).prop_flat_map(move |n| arb_program_over(n, max_clauses, depth, allow_one)).boxed()
}

fn par_of(f: &Fact) -> Goal {
    Goal::par_of_atoms(f.atoms()).expect("non-empty")
}

/// Flat programs whose heads and body disjunctions have distinct atoms.
pub fn arb_flat_program(max_n: usize, max_clauses: usize, max_conjuncts: usize) -> BoxedStrategy<Program> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            let body = prop_oneof![
                1 => Just(None),
                4 => prop::collection::vec(arb_atom_set(n, 2), 1..=max_conjuncts).prop_map(Some),
            ]
            .prop_map(|conj| match conj {
                None => Goal::Top,
                Some(cs) => cs.iter().map(par_of).reduce(Goal::with).unwrap(),
            });
            prop::collection::vec((arb_atom_set(n, 2), body), 1..=max_clauses).prop_map(move |cs| build(n, cs))
        })
        .boxed()
}

/// Draws `count` values from `s` with a fixed seed.
pub fn sample<S: Strategy>(s: S, count: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..count).map(|_| s.new_tree(&mut runner).unwrap().current()).collect()
}

/// Random nets in the line format: three places, a few transitions with
/// non-empty post-sets, one target.
pub fn arb_net_source(with_transfer: bool) -> BoxedStrategy<String> {
    const PLACES: [&str; 3] = ["p", "q", "r"];
    let marking = |min: usize| prop::collection::vec((0usize..3, 1u32..=2), min..=2);
    let words =
        move |m: Vec<(usize, u32)>| m.iter().map(|(p, c)| format!("{}:{c}", PLACES[*p])).collect::<Vec<_>>().join(" ");
    let transitions = prop::collection::vec((marking(1), marking(1)), 1..=3);
    let transfer = if with_transfer { prop::option::of((0usize..3, 0usize..3)).boxed() } else { Just(None).boxed() };
    (transitions, transfer, marking(1), marking(1))
        .prop_map(move |(ts, tr, init, target)| {
            let mut src = String::from("place p q r\n");
            for (k, (pre, post)) in ts.into_iter().enumerate() {
                src.push_str(&format!("trans t{k} pre {} post {}\n", words(pre), words(post)));
            }
            if let Some((from, to)) = tr.filter(|(f, t)| f != t) {
                src.push_str(&format!("transfer x from {} to {}\n", PLACES[from], PLACES[to]));
            }
            src.push_str(&format!("init {}\ntarget {}\n", words(init), words(target)));
            src
        })
        .boxed()
}
