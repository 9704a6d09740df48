//! Facts: finite multisets over a fixed propositional signature.
//!
//! A [`Fact`] is stored as a dense occurrence vector indexed by signature
//! position. All operations are pure and assume both operands were built over
//! the same [`Signature`]; mixing signatures is a programming error and panics.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SignatureError;

/// Largest occurrence count the engines accept before aborting.
pub const MAX_OCCURRENCE: u32 = i32::MAX as u32;

/// An ordered list of distinct atom names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Signature {
    names: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl Signature {
    pub fn new<I, S>(names: I) -> Result<Self, SignatureError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut sig = Signature { names: Vec::new(), index: HashMap::new() };
        for name in names {
            let name = name.into();
            if sig.index.contains_key(&name) {
                return Err(SignatureError::Duplicate(name));
            }
            sig.push(name);
        }
        Ok(sig)
    }

    /// Appends `name` unless it is already present and returns its position.
    pub fn intern(&mut self, name: &str) -> usize {
        match self.index.get(name) {
            Some(&i) => i,
            None => self.push(name.to_string()),
        }
    }

    fn push(&mut self, name: String) -> usize {
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        i
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The empty fact over this signature.
    pub fn empty_fact(&self) -> Fact {
        Fact::empty(self.len())
    }

    /// Builds a fact from a list of atom names, counting repetitions.
    pub fn fact<S: AsRef<str>>(&self, atoms: &[S]) -> Result<Fact, SignatureError> {
        let mut fact = self.empty_fact();
        for a in atoms {
            let i = self.index_of(a.as_ref()).ok_or_else(|| SignatureError::UnknownAtom(a.as_ref().to_string()))?;
            fact.add_one(i);
        }
        Ok(fact)
    }

    /// Parses the canonical text form `{a:2, c:1}`. A bare atom counts once.
    pub fn parse_fact(&self, text: &str) -> Result<Fact, SignatureError> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| SignatureError::BadFact(text.to_string()))?;
        let mut fact = self.empty_fact();
        for item in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, count) = match item.split_once(':') {
                Some((n, c)) => {
                    let c: u32 = c.trim().parse().map_err(|_| SignatureError::BadFact(text.to_string()))?;
                    (n.trim(), c)
                }
                None => (item, 1),
            };
            let i = self.index_of(name).ok_or_else(|| SignatureError::UnknownAtom(name.to_string()))?;
            fact.occ[i] = checked(fact.occ[i] as u64 + count as u64);
        }
        Ok(fact)
    }
}

impl TryFrom<Vec<String>> for Signature {
    type Error = SignatureError;

    fn try_from(names: Vec<String>) -> Result<Self, Self::Error> {
        Signature::new(names)
    }
}

impl From<Signature> for Vec<String> {
    fn from(sig: Signature) -> Self {
        sig.names
    }
}

fn checked(v: u64) -> u32 {
    if v > MAX_OCCURRENCE as u64 {
        panic!("occurrence count {v} exceeds the supported maximum {MAX_OCCURRENCE}");
    }
    v as u32
}

/// A multiset of atoms, i.e. a vector of occurrence counts.
///
/// The derived ordering is lexicographic on the occurrence vector and is used
/// only to make output deterministic; the semantic order is [`Fact::leq`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fact {
    occ: Vec<u32>,
}

impl Fact {
    /// ε over a signature of `n` atoms.
    pub fn empty(n: usize) -> Self {
        Fact { occ: vec![0; n] }
    }

    pub fn from_counts(occ: Vec<u32>) -> Self {
        for &c in &occ {
            checked(c as u64);
        }
        Fact { occ }
    }

    pub fn singleton(n: usize, atom: usize) -> Self {
        let mut f = Fact::empty(n);
        f.occ[atom] = 1;
        f
    }

    pub fn counts(&self) -> &[u32] {
        &self.occ
    }

    pub fn occ(&self, atom: usize) -> u32 {
        self.occ[atom]
    }

    /// Number of positions, i.e. the signature size.
    pub fn width(&self) -> usize {
        self.occ.len()
    }

    /// Total number of atom occurrences.
    pub fn size(&self) -> u64 {
        self.occ.iter().map(|&c| c as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.occ.iter().all(|&c| c == 0)
    }

    pub(crate) fn add_one(&mut self, atom: usize) {
        self.occ[atom] = checked(self.occ[atom] as u64 + 1);
    }

    fn same_width(&self, other: &Fact) {
        assert_eq!(self.occ.len(), other.occ.len(), "usage error: facts over different signatures");
    }

    /// Multiset inclusion `self ⪯ other`.
    pub fn leq(&self, other: &Fact) -> bool {
        self.same_width(other);
        self.occ.iter().zip(&other.occ).all(|(a, b)| a <= b)
    }

    /// Multiset union `self + other`.
    pub fn union(&self, other: &Fact) -> Fact {
        self.same_width(other);
        let occ = self.occ.iter().zip(&other.occ).map(|(&a, &b)| checked(a as u64 + b as u64)).collect();
        Fact { occ }
    }

    /// Multiset difference, clamped at zero.
    pub fn diff(&self, other: &Fact) -> Fact {
        self.same_width(other);
        let occ = self.occ.iter().zip(&other.occ).map(|(&a, &b)| a.saturating_sub(b)).collect();
        Fact { occ }
    }

    /// Least upper bound `self • other` (pointwise maximum).
    pub fn lub(&self, other: &Fact) -> Fact {
        self.same_width(other);
        let occ = self.occ.iter().zip(&other.occ).map(|(&a, &b)| a.max(b)).collect();
        Fact { occ }
    }

    /// `self` added to itself `k` times.
    pub fn power(&self, k: u32) -> Fact {
        let occ = self.occ.iter().map(|&a| checked(a as u64 * k as u64)).collect();
        Fact { occ }
    }

    /// The underlying set: every positive count becomes one.
    pub fn support(&self) -> Fact {
        Fact { occ: self.occ.iter().map(|&c| c.min(1)).collect() }
    }

    /// Atom indices in signature order, repeated by multiplicity.
    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        self.occ.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> FactDisplay<'a> {
        FactDisplay { fact: self, sig }
    }
}

/// Canonical text rendering of a fact: `{a:2, c:1}`, `{}` for ε.
pub struct FactDisplay<'a> {
    fact: &'a Fact,
    sig: &'a Signature,
}

impl fmt::Display for FactDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (i, &c) in self.fact.occ.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{}:{}", self.sig.name(i), c)?;
        }
        f.write_str("}")
    }
}

/// All facts over `n` atoms whose total size is at most `cap`, in
/// lexicographic order.
pub fn facts_up_to(n: usize, cap: u32) -> Vec<Fact> {
    fn go(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Fact>) {
        if i == n {
            out.push(Fact { occ: cur.clone() });
            return;
        }
        for c in 0..=left {
            cur.push(c);
            go(n, i + 1, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, cap, &mut Vec::with_capacity(n), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new(["a", "b", "c", "d", "e", "f"]).unwrap()
    }

    fn f(s: &Signature, atoms: &[&str]) -> Fact {
        s.fact(atoms).unwrap()
    }

    #[test]
    fn leq_examples() {
        let s = sig();
        assert!(f(&s, &["c"]).leq(&f(&s, &["c", "f"])));
        assert!(!f(&s, &["e", "e"]).leq(&f(&s, &["e"])));
        assert!(!f(&s, &["a", "d"]).leq(&f(&s, &["a"])));
        assert!(f(&s, &["a"]).leq(&f(&s, &["a", "d"])));
    }

    #[test]
    fn union_examples() {
        let s = sig();
        assert_eq!(s.empty_fact().union(&f(&s, &["a"])), f(&s, &["a"]));
        assert_eq!(f(&s, &["b"]).union(&f(&s, &["b"])), f(&s, &["b", "b"]));
        assert_eq!(f(&s, &["a", "b"]).union(&f(&s, &["b", "c"])), f(&s, &["a", "b", "b", "c"]));
    }

    #[test]
    fn diff_examples() {
        let s = sig();
        assert_eq!(f(&s, &["c", "d"]).diff(&f(&s, &["d", "e"])), f(&s, &["c"]));
        assert_eq!(f(&s, &["c", "f"]).diff(&f(&s, &["d", "e"])), f(&s, &["c", "f"]));
        let x = f(&s, &["a", "b", "b"]);
        assert_eq!(x.diff(&x), s.empty_fact());
    }

    #[test]
    fn lub_examples() {
        let s = sig();
        assert_eq!(f(&s, &["c"]).lub(&f(&s, &["c"])), f(&s, &["c"]));
        assert_eq!(f(&s, &["c", "d"]).lub(&f(&s, &["c", "f"])), f(&s, &["c", "d", "f"]));
        let x = f(&s, &["a", "e", "e"]);
        assert_eq!(s.empty_fact().lub(&x), x);
    }

    #[test]
    fn power_examples() {
        let s = sig();
        assert_eq!(f(&s, &["b"]).power(2), f(&s, &["b", "b"]));
        assert_eq!(f(&s, &["a", "b"]).power(0), s.empty_fact());
        assert_eq!(f(&s, &["a", "c"]).power(3), f(&s, &["a", "a", "a", "c", "c", "c"]));
    }

    #[test]
    fn canonical_text() {
        let s = sig();
        let x = f(&s, &["c", "a", "a"]);
        assert_eq!(x.display(&s).to_string(), "{a:2, c:1}");
        assert_eq!(s.empty_fact().display(&s).to_string(), "{}");
        assert_eq!(s.parse_fact("{a:2, c:1}").unwrap(), x);
        assert_eq!(s.parse_fact("{}").unwrap(), s.empty_fact());
        assert!(s.parse_fact("{z:1}").is_err());
    }

    #[test]
    fn duplicate_signature_rejected() {
        assert!(matches!(Signature::new(["a", "a"]), Err(SignatureError::Duplicate(_))));
    }

    #[test]
    #[should_panic(expected = "usage error")]
    fn mismatched_width_panics() {
        Fact::empty(2).leq(&Fact::empty(3));
    }

    #[test]
    #[should_panic(expected = "exceeds")]
    fn overflow_aborts() {
        Fact::from_counts(vec![MAX_OCCURRENCE]).union(&Fact::from_counts(vec![1]));
    }

    #[test]
    fn enumeration_counts() {
        // C(cap + n, n)
        assert_eq!(facts_up_to(3, 2).len(), 10);
        assert_eq!(facts_up_to(4, 8).len(), 495);
        assert!(facts_up_to(2, 3).windows(2).all(|w| w[0] < w[1]));
    }

    /// Exhaustive check of the algebraic laws over facts with counts ≤ 3 and
    /// up to three atoms.
    #[test]
    fn algebraic_laws_exhaustive() {
        for n in 1..=3usize {
            let all: Vec<Fact> = (0..4u32.pow(n as u32))
                .map(|mut code| {
                    let mut occ = Vec::new();
                    for _ in 0..n {
                        occ.push(code % 4);
                        code /= 4;
                    }
                    Fact::from_counts(occ)
                })
                .collect();
            let eps = Fact::empty(n);
            for a in &all {
                assert!(eps.leq(a));
                assert!(a.leq(a));
                assert_eq!(a.union(&eps), *a);
                assert_eq!(a.lub(a), *a);
                for b in &all {
                    assert!(a.leq(&a.union(b)));
                    assert!(a.leq(&a.diff(b).union(b)));
                    assert_eq!(a.union(b), b.union(a));
                    assert_eq!(a.lub(b), b.lub(a));
                    if a.leq(b) && b.leq(a) {
                        assert_eq!(a, b);
                    }
                    let l = a.lub(b);
                    assert!(a.leq(&l) && b.leq(&l));
                    for c in &all {
                        // least upper bound
                        if a.leq(c) && b.leq(c) {
                            assert!(l.leq(c));
                        }
                        if a.leq(b) && b.leq(c) {
                            assert!(a.leq(c));
                        }
                        assert_eq!(a.union(b).union(c), a.union(&b.union(c)));
                        assert_eq!(a.lub(b).lub(c), a.lub(&b.lub(c)));
                    }
                }
            }
        }
    }
}
