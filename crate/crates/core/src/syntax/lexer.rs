use crate::error::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident(String),
    Number(String),
    Arrow,
    Bar,
    Amp,
    Semi,
    Comma,
    Dot,
    LParen,
    RParen,
    Eof,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::Number(s) => format!("`{s}`"),
            TokenKind::Arrow => "`<-`".into(),
            TokenKind::Bar => "`|`".into(),
            TokenKind::Amp => "`&`".into(),
            TokenKind::Semi => "`;`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Dot => "`.`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

/// Tokenizer shared by the LO and DLP readers. `%` starts a line comment.
pub(crate) struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lexer { chars: text.chars().peekable(), line: 1, column: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    pub(crate) fn tokenize(mut self) -> Result<Vec<Token>, ParseError> {
        let mut out = Vec::new();
        loop {
            while let Some(&c) = self.chars.peek() {
                if c.is_whitespace() {
                    self.bump();
                } else if c == '%' {
                    while let Some(&c) = self.chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                } else {
                    break;
                }
            }
            let (line, column) = (self.line, self.column);
            let Some(c) = self.bump() else {
                out.push(Token { kind: TokenKind::Eof, line, column });
                return Ok(out);
            };
            let kind = match c {
                '<' => {
                    if self.chars.peek() == Some(&'-') {
                        self.bump();
                        TokenKind::Arrow
                    } else {
                        return Err(ParseError::new(line, column, ParseErrorKind::UnexpectedChar(c)));
                    }
                }
                '|' => TokenKind::Bar,
                '&' => TokenKind::Amp,
                ';' => TokenKind::Semi,
                ',' => TokenKind::Comma,
                '.' => TokenKind::Dot,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                c if c.is_ascii_digit() => {
                    let mut s = c.to_string();
                    while let Some(&d) = self.chars.peek() {
                        if !d.is_ascii_digit() {
                            break;
                        }
                        s.push(d);
                        self.bump();
                    }
                    TokenKind::Number(s)
                }
                c if c.is_alphabetic() || c == '_' => {
                    let mut s = c.to_string();
                    while let Some(&d) = self.chars.peek() {
                        if !(d.is_alphanumeric() || d == '_' || d == '\'') {
                            break;
                        }
                        s.push(d);
                        self.bump();
                    }
                    TokenKind::Ident(s)
                }
                c => return Err(ParseError::new(line, column, ParseErrorKind::UnexpectedChar(c))),
            };
            out.push(Token { kind, line, column });
        }
    }
}
