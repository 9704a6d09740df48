//! Petri nets, their encoding as LO/LO1 programs, and coverability.
//!
//! A transition `pre -> post` becomes the clause `pre <- post`: backchaining
//! fires the transition forward, so the provable facts of the encoded program
//! together with `F <- top` for each target `F` are exactly the markings from
//! which some target can be covered.
//!
//! Transfer arcs need LO1. Nets with transfers are encoded with a control
//! atom `run` that is present whenever no transfer is in progress:
//!
//! ```text
//! pre | run <- post | run.            ordinary transition
//! run <- trans_t.                     start transfer t
//! from | trans_t <- to | trans_t.     move one token
//! trans_t <- done_t & check_t.        stop moving
//! check_t | p <- check_t.             one per place p other than `from`
//! check_t <- 1.                       nothing else left
//! done_t <- run.                      resume
//! F | run <- top.                     target F
//! ```
//!
//! The `check_t` branch succeeds only when `from` has been emptied, and the
//! `done_t` branch carries on with the marking after the transfer.

use std::collections::{BTreeSet, VecDeque};

use crate::constraint::{saturate_one_until, Saturation1, Status};
use crate::error::PetriError;
use crate::multiset::{Fact, Signature};
use crate::symbolic::{saturate, Saturation};
use crate::syntax::{Clause, Goal, Program};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub name: String,
    pub pre: Fact,
    pub post: Fact,
}

/// Moves every token in `from` to `to` in one step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriNet {
    pub places: Signature,
    pub transitions: Vec<Transition>,
    pub transfers: Vec<Transfer>,
    pub initial: Fact,
    /// Each target stands for its upward closure.
    pub targets: Vec<Fact>,
}

fn syntax(line: usize, message: impl Into<String>) -> PetriError {
    PetriError::Syntax { line, message: message.into() }
}

fn parse_marking(places: &Signature, words: &[&str], line: usize) -> Result<Fact, PetriError> {
    let mut f = places.empty_fact();
    for w in words {
        let (name, count) = match w.split_once(':') {
            Some((n, c)) => (n, c.parse::<u32>().map_err(|_| syntax(line, format!("bad token count in `{w}`")))?),
            None => (*w, 1),
        };
        let i = places.index_of(name).ok_or_else(|| syntax(line, format!("unknown place `{name}`")))?;
        f = f.union(&Fact::singleton(places.len(), i).power(count));
    }
    Ok(f)
}

impl PetriNet {
    /// Reads the line-based net format:
    ///
    /// ```text
    /// place a b c
    /// trans t1 pre a:1 b:1 post c:2
    /// transfer t2 from a to b
    /// init a:2 c:1
    /// target c:2
    /// ```
    ///
    /// `#` starts a comment. Places must be declared before use; a count
    /// may be omitted and defaults to 1.
    pub fn parse(text: &str) -> Result<PetriNet, PetriError> {
        let mut places = Signature::new(Vec::<String>::new())?;
        let mut raw = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line_no = k + 1;
            let content = line.split('#').next().unwrap_or("");
            let words: Vec<&str> = content.split_whitespace().collect();
            let Some((&kw, rest)) = words.split_first() else { continue };
            if kw == "place" {
                for p in rest {
                    if places.index_of(p).is_some() {
                        return Err(syntax(line_no, format!("place `{p}` declared twice")));
                    }
                    places.intern(p);
                }
            } else {
                raw.push((line_no, kw, rest.to_vec()));
            }
        }
        let mut net = PetriNet {
            initial: places.empty_fact(),
            places,
            transitions: Vec::new(),
            transfers: Vec::new(),
            targets: Vec::new(),
        };
        let mut seen_init = false;
        for (line, kw, rest) in raw {
            match kw {
                "trans" => {
                    let (&name, rest) = rest.split_first().ok_or_else(|| syntax(line, "transition needs a name"))?;
                    if rest.first() != Some(&"pre") {
                        return Err(syntax(line, "expected `pre` after the transition name"));
                    }
                    let post_at = rest
                        .iter()
                        .position(|w| *w == "post")
                        .ok_or_else(|| syntax(line, "expected `post` in transition"))?;
                    let pre = parse_marking(&net.places, &rest[1..post_at], line)?;
                    let post = parse_marking(&net.places, &rest[post_at + 1..], line)?;
                    net.transitions.push(Transition { name: name.to_string(), pre, post });
                }
                "transfer" => {
                    let [name, "from", from, "to", to] = rest[..] else {
                        return Err(syntax(line, "expected `transfer NAME from PLACE to PLACE`"));
                    };
                    let idx =
                        |p: &str| net.places.index_of(p).ok_or_else(|| syntax(line, format!("unknown place `{p}`")));
                    let (from, to) = (idx(from)?, idx(to)?);
                    if from == to {
                        return Err(PetriError::SelfTransfer(name.to_string()));
                    }
                    net.transfers.push(Transfer { name: name.to_string(), from, to });
                }
                "init" => {
                    if seen_init {
                        return Err(syntax(line, "initial marking given twice"));
                    }
                    seen_init = true;
                    net.initial = parse_marking(&net.places, &rest, line)?;
                }
                "target" => net.targets.push(parse_marking(&net.places, &rest, line)?),
                other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
            }
        }
        Ok(net)
    }

    pub fn has_transfers(&self) -> bool {
        !self.transfers.is_empty()
    }

    /// Markings reachable in one firing.
    pub fn successors(&self, m: &Fact) -> Vec<Fact> {
        let mut out = Vec::new();
        for t in &self.transitions {
            if t.pre.leq(m) {
                out.push(m.diff(&t.pre).union(&t.post));
            }
        }
        for t in &self.transfers {
            let mut counts = m.counts().to_vec();
            counts[t.to] += counts[t.from];
            counts[t.from] = 0;
            out.push(Fact::from_counts(counts));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EncodeOptions {
    /// Encode empty post-sets with body `1`, so the transition fires only
    /// when its pre-set is the whole marking.
    pub strict: bool,
}

/// An encoded net: the program plus the initial marking over its signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoding {
    pub program: Program,
    pub initial: Fact,
    /// Index of the `run` control atom when the net has transfers.
    pub run: Option<usize>,
}

fn body_of(post: &Fact, extra: Option<usize>) -> Option<Goal> {
    Goal::par_of_atoms(post.atoms().chain(extra))
}

pub fn encode(net: &PetriNet, opts: EncodeOptions) -> Result<Encoding, PetriError> {
    let mut sig = net.places.clone();
    let fresh = |name: String, sig: &mut Signature| {
        if sig.index_of(&name).is_some() {
            return Err(PetriError::NameCollision(name));
        }
        Ok(sig.intern(&name))
    };
    let run = if net.has_transfers() { Some(fresh("run".into(), &mut sig)?) } else { None };
    let mut control = Vec::new();
    for t in &net.transfers {
        let trans = fresh(format!("trans_{}", t.name), &mut sig)?;
        let check = fresh(format!("check_{}", t.name), &mut sig)?;
        let done = fresh(format!("done_{}", t.name), &mut sig)?;
        control.push((trans, check, done));
    }
    let n = sig.len();
    let widen = |f: &Fact| {
        let mut counts = f.counts().to_vec();
        counts.resize(n, 0);
        Fact::from_counts(counts)
    };
    let atom = |i: usize| Fact::singleton(n, i);
    let mut clauses = Vec::new();
    for t in &net.transitions {
        let mut head = widen(&t.pre);
        if let Some(r) = run {
            head = head.union(&atom(r));
        }
        let body = match body_of(&t.post, run) {
            Some(b) => b,
            None if opts.strict => Goal::One,
            None => return Err(PetriError::EmptyPost(t.name.clone())),
        };
        clauses.push(Clause { head, body });
    }
    if let Some(r) = run {
        for (t, &(trans, check, done)) in net.transfers.iter().zip(&control) {
            clauses.push(Clause { head: atom(r), body: Goal::Atom(trans) });
            clauses.push(Clause {
                head: atom(t.from).union(&atom(trans)),
                body: Goal::par(Goal::Atom(t.to), Goal::Atom(trans)),
            });
            clauses.push(Clause { head: atom(trans), body: Goal::with(Goal::Atom(done), Goal::Atom(check)) });
            for p in (0..net.places.len()).filter(|&p| p != t.from) {
                clauses.push(Clause { head: atom(check).union(&atom(p)), body: Goal::Atom(check) });
            }
            clauses.push(Clause { head: atom(check), body: Goal::One });
            clauses.push(Clause { head: atom(done), body: Goal::Atom(r) });
        }
    }
    for f in &net.targets {
        let mut head = widen(f);
        if let Some(r) = run {
            head = head.union(&atom(r));
        }
        clauses.push(Clause { head, body: Goal::Top });
    }
    let mut initial = widen(&net.initial);
    if let Some(r) = run {
        initial = initial.union(&atom(r));
    }
    Ok(Encoding { program: Program::new(sig, clauses), initial, run })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Covered,
    NotCovered,
    /// The LO1 saturation hit its iteration bound before covering the
    /// initial marking.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backward {
    Lo(Saturation),
    Lo1(Saturation1),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    pub verdict: Verdict,
    pub encoding: Encoding,
    pub backward: Backward,
}

impl CoverResult {
    pub fn iterations(&self) -> usize {
        match &self.backward {
            Backward::Lo(s) => s.iterations,
            Backward::Lo1(s) => s.iterations,
        }
    }
}

/// Decides whether some target is coverable from the initial marking by
/// saturating the encoded program backwards from the targets.
pub fn cover(net: &PetriNet, opts: EncodeOptions, max_iters: usize) -> Result<CoverResult, PetriError> {
    if net.targets.is_empty() {
        return Err(PetriError::NoTarget);
    }
    let encoding = encode(net, opts)?;
    let p = &encoding.program;
    let (verdict, backward) = if p.uses_one() {
        let initial = &encoding.initial;
        let sat = saturate_one_until(p, max_iters, |i| i.member(initial));
        let verdict = if sat.result.member(&encoding.initial) {
            Verdict::Covered
        } else if sat.status == Status::Fixpoint {
            Verdict::NotCovered
        } else {
            Verdict::Unknown
        };
        (verdict, Backward::Lo1(sat))
    } else {
        let sat = saturate(p).expect("encoding without 1 is plain LO");
        let verdict = if sat.fixpoint.covers(&encoding.initial) { Verdict::Covered } else { Verdict::NotCovered };
        (verdict, Backward::Lo(sat))
    };
    Ok(CoverResult { verdict, encoding, backward })
}

/// Markings reachable from the initial one in at most `step_bound` firings,
/// never passing through a marking with more than `size_bound` tokens.
pub fn forward_explore(net: &PetriNet, step_bound: usize, size_bound: u64) -> BTreeSet<Fact> {
    let mut seen = BTreeSet::from([net.initial.clone()]);
    let mut frontier = VecDeque::from([(net.initial.clone(), 0usize)]);
    while let Some((m, steps)) = frontier.pop_front() {
        if steps == step_bound {
            continue;
        }
        for next in net.successors(&m) {
            if next.size() <= size_bound && seen.insert(next.clone()) {
                frontier.push_back((next, steps + 1));
            }
        }
    }
    seen
}

/// Whether some explored marking covers some target.
pub fn forward_covers(net: &PetriNet, step_bound: usize, size_bound: u64) -> bool {
    forward_explore(net, step_bound, size_bound).iter().any(|m| net.targets.iter().any(|t| t.leq(m)))
}
