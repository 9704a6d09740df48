use super::lexer::{Lexer, Token, TokenKind};
use super::{Clause, Context, Dialect, Goal, Program};
use crate::error::{ParseError, ParseErrorKind};
use crate::multiset::{Fact, Signature};

const RESERVED: &[&str] = &["top", "dialect", "atoms"];

/// Parses a program. Clauses joined by `&` at the top level (in parentheses)
/// are flattened into separate clauses.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let tokens = Lexer::new(text).tokenize()?;
    let mut p = Parser::new(tokens, Signature::new(Vec::<String>::new()).unwrap(), false);
    let mut raw: Vec<(Vec<usize>, Goal)> = Vec::new();
    let mut header_dialect = None;
    while !p.at(&TokenKind::Eof) {
        match p.peek_ident() {
            Some("dialect") => {
                let tok = p.next();
                if !raw.is_empty() {
                    return Err(p.err_at(&tok, ParseErrorKind::LateHeader("dialect".into())));
                }
                let name = p.next();
                let d = match &name.kind {
                    TokenKind::Ident(s) if s == "lo" => Dialect::Lo,
                    TokenKind::Ident(s) if s == "lo1" => Dialect::Lo1,
                    TokenKind::Number(s) | TokenKind::Ident(s) => {
                        return Err(p.err_at(&name, ParseErrorKind::UnknownDialect(s.clone())))
                    }
                    other => return Err(p.expected_at(&name, "dialect name", other)),
                };
                header_dialect = Some(d);
                p.dialect = Some(d);
                p.expect(TokenKind::Dot, "`.`")?;
            }
            Some("atoms") => {
                let tok = p.next();
                if !raw.is_empty() {
                    return Err(p.err_at(&tok, ParseErrorKind::LateHeader("atoms".into())));
                }
                loop {
                    let t = p.next();
                    match &t.kind {
                        TokenKind::Dot => break,
                        TokenKind::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                            if p.sig.index_of(s).is_some() {
                                return Err(p.err_at(&t, ParseErrorKind::DuplicateAtom(s.clone())));
                            }
                            p.sig.intern(s);
                        }
                        other => return Err(p.expected_at(&t, "atom name or `.`", other)),
                    }
                }
                p.fixed = true;
            }
            _ => {
                p.dformula(&mut raw)?;
                p.expect(TokenKind::Dot, "`.`")?;
            }
        }
    }
    let width = p.sig.len();
    let clauses = raw
        .into_iter()
        .map(|(head, body)| {
            let mut f = Fact::empty(width);
            for i in head {
                f.add_one(i);
            }
            Clause { head: f, body }
        })
        .collect();
    let mut program = Program::new(p.sig, clauses);
    if let Some(d) = header_dialect {
        program.dialect = d;
    }
    Ok(program)
}

/// Parses a comma-separated list of goals over a fixed signature.
pub fn parse_goal(text: &str, sig: &Signature) -> Result<Context, ParseError> {
    let tokens = Lexer::new(text).tokenize()?;
    let mut p = Parser::new(tokens, sig.clone(), true);
    let mut goals = Vec::new();
    if !p.at(&TokenKind::Eof) && !p.at(&TokenKind::Dot) {
        goals.push(p.with_expr()?);
        while p.eat(&TokenKind::Comma) {
            goals.push(p.with_expr()?);
        }
    }
    p.eat(&TokenKind::Dot);
    if !p.at(&TokenKind::Eof) {
        let t = p.next();
        return Err(p.expected_at(&t, "`,` or end of goal", &t.kind));
    }
    Ok(Context::new(goals))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    sig: Signature,
    fixed: bool,
    dialect: Option<Dialect>,
}

impl Parser {
    fn new(tokens: Vec<Token>, sig: Signature, fixed: bool) -> Self {
        Parser { tokens, pos: 0, sig, fixed, dialect: None }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_ident(&self) -> Option<&str> {
        match &self.peek().kind {
            TokenKind::Ident(s) => Some(s),
            _ => None,
        }
    }

    fn at(&self, k: &TokenKind) -> bool {
        &self.peek().kind == k
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, k: &TokenKind) -> bool {
        if self.at(k) {
            self.next();
            true
        } else {
            false
        }
    }

    fn err_at(&self, t: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError::new(t.line, t.column, kind)
    }

    fn expected_at(&self, t: &Token, expected: &str, found: &TokenKind) -> ParseError {
        self.err_at(t, ParseErrorKind::Expected { expected: expected.into(), found: found.describe() })
    }

    fn expect(&mut self, k: TokenKind, what: &str) -> Result<Token, ParseError> {
        let t = self.next();
        if t.kind == k {
            Ok(t)
        } else if t.kind == TokenKind::Arrow {
            Err(self.err_at(&t, ParseErrorKind::NestedImplication))
        } else {
            Err(self.expected_at(&t, what, &t.kind))
        }
    }

    fn atom(&mut self, t: &Token, name: &str) -> Result<usize, ParseError> {
        if self.fixed {
            self.sig.index_of(name).ok_or_else(|| self.err_at(t, ParseErrorKind::UnknownAtom(name.to_string())))
        } else {
            Ok(self.sig.intern(name))
        }
    }

    fn dformula(&mut self, out: &mut Vec<(Vec<usize>, Goal)>) -> Result<(), ParseError> {
        self.dprimary(out)?;
        while self.eat(&TokenKind::Amp) {
            self.dprimary(out)?;
        }
        Ok(())
    }

    fn dprimary(&mut self, out: &mut Vec<(Vec<usize>, Goal)>) -> Result<(), ParseError> {
        if self.eat(&TokenKind::LParen) {
            self.dformula(out)?;
            self.expect(TokenKind::RParen, "`)`")?;
            return Ok(());
        }
        let head = self.head()?;
        let body = self.with_expr()?;
        out.push((head, body));
        Ok(())
    }

    fn head(&mut self) -> Result<Vec<usize>, ParseError> {
        let mut atoms = Vec::new();
        loop {
            let t = self.next();
            match &t.kind {
                TokenKind::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                    let i = self.atom(&t, s)?;
                    atoms.push(i);
                }
                TokenKind::Eof | TokenKind::Dot | TokenKind::Arrow => {
                    return Err(self.expected_at(&t, "head atom", &t.kind))
                }
                other => return Err(self.err_at(&t, ParseErrorKind::NonAtomicHead(other.describe()))),
            }
            let t = self.next();
            match &t.kind {
                TokenKind::Bar => continue,
                TokenKind::Arrow => return Ok(atoms),
                TokenKind::Amp | TokenKind::LParen | TokenKind::RParen => {
                    return Err(self.err_at(&t, ParseErrorKind::NonAtomicHead(t.kind.describe())))
                }
                other => return Err(self.expected_at(&t, "`|` or `<-`", other)),
            }
        }
    }

    fn with_expr(&mut self) -> Result<Goal, ParseError> {
        let mut g = self.par_expr()?;
        while self.eat(&TokenKind::Amp) {
            let r = self.par_expr()?;
            g = Goal::with(g, r);
        }
        Ok(g)
    }

    fn par_expr(&mut self) -> Result<Goal, ParseError> {
        let mut g = self.primary()?;
        while self.eat(&TokenKind::Bar) {
            let r = self.primary()?;
            g = Goal::par(g, r);
        }
        Ok(g)
    }

    fn primary(&mut self) -> Result<Goal, ParseError> {
        let t = self.next();
        match &t.kind {
            TokenKind::Ident(s) if s == "top" => Ok(Goal::Top),
            TokenKind::Ident(s) if !RESERVED.contains(&s.as_str()) => Ok(Goal::Atom(self.atom(&t, s)?)),
            TokenKind::Number(s) if s == "1" => {
                if self.dialect == Some(Dialect::Lo) {
                    Err(self.err_at(&t, ParseErrorKind::OneInLo))
                } else {
                    Ok(Goal::One)
                }
            }
            TokenKind::LParen => {
                let g = self.with_expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(g)
            }
            TokenKind::Arrow => Err(self.err_at(&t, ParseErrorKind::NestedImplication)),
            other => Err(self.expected_at(&t, "goal", other)),
        }
    }
}
