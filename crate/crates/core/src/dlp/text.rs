//! Text format for DLP programs.
//!
//! ```text
//! atoms p q r s.
//! p ; q <- r , s.
//! r.
//! ```
//!
//! `;` is disjunction and binds tighter than `,`, which is conjunction. A
//! clause without `<-` (or with body `top`) is a unit clause. In goals,
//! `false` stands for the empty clause.

use super::{DlpClause, DlpProgram, PositiveClause};
use crate::error::{ParseError, ParseErrorKind};
use crate::multiset::Signature;
use crate::syntax::{Lexer, Token, TokenKind};

const RESERVED: &[&str] = &["atoms", "top", "false"];

struct Reader {
    tokens: Vec<Token>,
    pos: usize,
    sig: Signature,
    fixed: bool,
}

impl Reader {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, k: &TokenKind) -> bool {
        if &self.peek().kind == k {
            self.next();
            true
        } else {
            false
        }
    }

    fn expected(t: &Token, what: &str) -> ParseError {
        ParseError::new(t.line, t.column, ParseErrorKind::Expected { expected: what.into(), found: t.kind.describe() })
    }

    fn atom(&mut self) -> Result<usize, ParseError> {
        let t = self.next();
        match &t.kind {
            TokenKind::Ident(s) if !RESERVED.contains(&s.as_str()) => match self.sig.index_of(s) {
                Some(i) => Ok(i),
                None if !self.fixed => Ok(self.sig.intern(s)),
                None => Err(ParseError::new(t.line, t.column, ParseErrorKind::UnknownAtom(s.clone()))),
            },
            _ => Err(Reader::expected(&t, "atom")),
        }
    }

    fn disjunction(&mut self) -> Result<PositiveClause, ParseError> {
        let start = self.peek().clone();
        let mut atoms = vec![self.atom()?];
        while self.eat(&TokenKind::Semi) {
            atoms.push(self.atom()?);
        }
        let c = PositiveClause::new(atoms.iter().copied());
        if c.len() != atoms.len() {
            let kind = ParseErrorKind::Other("atom repeated in a disjunction".into());
            return Err(ParseError::new(start.line, start.column, kind));
        }
        Ok(c)
    }

    fn goal_clause(&mut self) -> Result<PositiveClause, ParseError> {
        if matches!(&self.peek().kind, TokenKind::Ident(s) if s == "false") {
            self.next();
            return Ok(PositiveClause::empty());
        }
        self.disjunction()
    }

    fn is_top(&self) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if s == "top")
    }
}

fn reader(text: &str, sig: Signature, fixed: bool) -> Result<Reader, ParseError> {
    Ok(Reader { tokens: Lexer::new(text).tokenize()?, pos: 0, sig, fixed })
}

pub fn parse_dlp(text: &str) -> Result<DlpProgram, ParseError> {
    let mut r = reader(text, Signature::new(Vec::<String>::new()).unwrap(), false)?;
    let mut clauses = Vec::new();
    while r.peek().kind != TokenKind::Eof {
        if matches!(&r.peek().kind, TokenKind::Ident(s) if s == "atoms") {
            let t = r.next();
            if !clauses.is_empty() {
                return Err(ParseError::new(t.line, t.column, ParseErrorKind::LateHeader("atoms".into())));
            }
            while !r.eat(&TokenKind::Dot) {
                let t = r.peek().clone();
                let before = r.sig.len();
                r.atom()?;
                if r.sig.len() == before {
                    let name = t.kind.describe().trim_matches('`').to_string();
                    return Err(ParseError::new(t.line, t.column, ParseErrorKind::DuplicateAtom(name)));
                }
            }
            r.fixed = true;
            continue;
        }
        let head = r.disjunction()?;
        let mut body = Vec::new();
        if r.eat(&TokenKind::Arrow) {
            if r.is_top() {
                r.next();
            } else {
                body.push(r.disjunction()?);
                while r.eat(&TokenKind::Comma) {
                    body.push(r.disjunction()?);
                }
            }
        }
        let t = r.next();
        if t.kind != TokenKind::Dot {
            return Err(Reader::expected(&t, "`.`"));
        }
        clauses.push(DlpClause { head, body });
    }
    Ok(DlpProgram { signature: r.sig, clauses })
}

/// Parses `C_1 , ... , C_k` over a fixed signature.
pub fn parse_dlp_goal(text: &str, sig: &Signature) -> Result<Vec<PositiveClause>, ParseError> {
    let mut r = reader(text, sig.clone(), true)?;
    let mut goal = Vec::new();
    if !matches!(r.peek().kind, TokenKind::Eof | TokenKind::Dot) {
        goal.push(r.goal_clause()?);
        while r.eat(&TokenKind::Comma) {
            goal.push(r.goal_clause()?);
        }
    }
    r.eat(&TokenKind::Dot);
    let t = r.next();
    if t.kind != TokenKind::Eof {
        return Err(Reader::expected(&t, "`,` or end of goal"));
    }
    Ok(goal)
}

pub(super) fn program_to_string(d: &DlpProgram) -> String {
    let mut out = String::from("atoms");
    for n in d.signature.names() {
        out.push(' ');
        out.push_str(n);
    }
    out.push_str(".\n");
    for c in &d.clauses {
        out.push_str(&c.head.display(&d.signature).to_string());
        if !c.body.is_empty() {
            out.push_str(" <- ");
            let body: Vec<String> = c.body.iter().map(|b| b.display(&d.signature).to_string()).collect();
            out.push_str(&body.join(" , "));
        }
        out.push_str(".\n");
    }
    out
}
