use std::fmt::{self, Write};

use super::{Context, Dialect, Goal, Program};
use crate::multiset::{Fact, Signature};

// Precedence levels: `&` < `|` < atoms/units.
const WITH: u8 = 1;
const PAR: u8 = 2;
const ATOM: u8 = 3;

fn write_goal(out: &mut impl Write, g: &Goal, sig: &Signature, min: u8) -> fmt::Result {
    let (prec, l, r, op, lmin, rmin) = match g {
        Goal::Atom(i) => return out.write_str(sig.name(*i)),
        Goal::Top => return out.write_str("top"),
        Goal::One => return out.write_str("1"),
        Goal::With(l, r) => (WITH, l, r, " & ", WITH, PAR),
        Goal::Par(l, r) => (PAR, l, r, " | ", PAR, ATOM),
    };
    let paren = prec < min;
    if paren {
        out.write_char('(')?;
    }
    write_goal(out, l, sig, lmin)?;
    out.write_str(op)?;
    write_goal(out, r, sig, rmin)?;
    if paren {
        out.write_char(')')?;
    }
    Ok(())
}

pub(super) struct GoalDisplay<'a> {
    pub goal: &'a Goal,
    pub sig: &'a Signature,
}

impl fmt::Display for GoalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_goal(f, self.goal, self.sig, WITH)
    }
}

pub(super) struct ContextDisplay<'a> {
    pub ctx: &'a Context,
    pub sig: &'a Signature,
}

impl fmt::Display for ContextDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.ctx.goals().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write_goal(f, g, self.sig, WITH)?;
        }
        Ok(())
    }
}

fn write_head(out: &mut String, head: &Fact, sig: &Signature) {
    for (k, i) in head.atoms().enumerate() {
        if k > 0 {
            out.push_str(" | ");
        }
        out.push_str(sig.name(i));
    }
}

pub(super) fn program_to_string(p: &Program) -> String {
    let mut out = String::new();
    if p.dialect == Dialect::Lo1 {
        out.push_str("dialect lo1.\n");
    }
    out.push_str("atoms");
    for n in p.signature.names() {
        out.push(' ');
        out.push_str(n);
    }
    out.push_str(".\n");
    for c in &p.clauses {
        write_head(&mut out, &c.head, &p.signature);
        out.push_str(" <- ");
        write_goal(&mut out, &c.body, &p.signature, WITH).unwrap();
        out.push_str(".\n");
    }
    out
}
