use std::fmt;

use thiserror::Error;

use super::{Atom, DFormula, Question, SForm};

/// A syntax error with the 1-based column where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}", column = self.column())]
pub struct ParseError {
    offset: usize,
    message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }

    /// 1-based column of the offending character.
    pub fn column(&self) -> usize {
        self.offset + 1
    }

    pub fn message(&self) -> &str {
        &self.message
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token {
    Atom(String),
    Tilde,
    Amp,
    Bar,
    Turnstile,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Colon,
    QMark,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Token::Atom(a) => return write!(f, "atom `{a}`"),
            Token::Tilde => "`~`",
            Token::Amp => "`&`",
            Token::Bar => "`|`",
            Token::Turnstile => "`|-`",
            Token::LParen => "`(`",
            Token::RParen => "`)`",
            Token::LBrace => "`{`",
            Token::RBrace => "`}`",
            Token::LBracket => "`[`",
            Token::RBracket => "`]`",
            Token::Comma => "`,`",
            Token::Colon => "`:`",
            Token::QMark => "`?`",
            Token::End => "end of input",
        };
        f.write_str(s)
    }
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        i += 1;
        let tok = match c {
            c if c.is_whitespace() => continue,
            '~' => Token::Tilde,
            '&' => Token::Amp,
            '|' if chars.get(i) == Some(&'-') => {
                i += 1;
                Token::Turnstile
            }
            '|' => Token::Bar,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '{' => Token::LBrace,
            '}' => Token::RBrace,
            '[' => Token::LBracket,
            ']' => Token::RBracket,
            ',' => Token::Comma,
            ':' => Token::Colon,
            '?' => Token::QMark,
            'a'..='z' => {
                while i < chars.len() && matches!(chars[i], 'a'..='z' | '0'..='9' | '_') {
                    i += 1;
                }
                Token::Atom(chars[start..i].iter().collect())
            }
            other => {
                return Err(ParseError::new(start, format!("unexpected character {other:?}")));
            }
        };
        out.push((tok, start));
    }
    out.push((Token::End, chars.len()));
    Ok(out)
}

/// Recursive-descent parser shared by formulas, sequents and assignment
/// files.
pub(crate) struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            tokens: lex(text)?,
            pos: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    pub(crate) fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].0.clone();
        if t != Token::End {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        *self.peek() == Token::End
    }

    pub(crate) fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.offset(), message)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    pub(crate) fn expect(&mut self, t: &Token) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(&t.to_string()))
        }
    }

    pub(crate) fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    pub(crate) fn atom(&mut self) -> Result<Atom, ParseError> {
        match self.peek().clone() {
            Token::Atom(name) => {
                self.bump();
                Ok(Atom::new(&name).expect("lexer only produces valid atom names"))
            }
            _ => Err(self.unexpected("an atom")),
        }
    }

    pub(crate) fn dformula(&mut self) -> Result<DFormula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Token::Bar) {
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<DFormula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::Amp) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<DFormula, ParseError> {
        match self.peek() {
            Token::Tilde => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Token::LParen => {
                self.bump();
                let inner = self.dformula()?;
                self.expect(&Token::RParen)?;
                Ok(inner)
            }
            Token::Atom(_) => Ok(DFormula::Atom(self.atom()?)),
            Token::QMark => Err(self.error("a question cannot occur inside a declarative formula")),
            _ => Err(self.unexpected("a formula")),
        }
    }

    pub(crate) fn sform(&mut self) -> Result<SForm, ParseError> {
        if *self.peek() != Token::QMark {
            return Ok(SForm::D(self.dformula()?));
        }
        let start = self.offset();
        self.bump();
        self.expect(&Token::LBrace)?;
        let mut answers = vec![self.dformula()?];
        while self.eat(&Token::Comma) {
            answers.push(self.dformula()?);
        }
        self.expect(&Token::RBrace)?;
        Question::new(answers)
            .map(SForm::Q)
            .map_err(|e| ParseError::new(start, e.to_string()))
    }
}
