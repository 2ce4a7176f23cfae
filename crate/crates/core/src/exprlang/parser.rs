//! Recursive-descent parser for the expression grammar.
//!
//! Every rejection carries the byte offset where parsing stopped and the set
//! of tokens that would have been accepted there; no input panics.

use super::{BinaryOp, Expr, UnaryOp};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: found {found}, expected {}", expected.join(", "))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("unknown identifier '{name}' at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("bare '-' is ambiguous next to '^' at offset {offset}; parenthesize, e.g. (-x)^2")]
    NegativePowOperand { offset: usize },
    #[error("invalid number literal at offset {offset}")]
    BadNumber { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::NegativePowOperand { offset }
            | ParseError::BadNumber { offset } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Number(v) => write!(f, "number {v}"),
            Token::Ident(s) => write!(f, "identifier '{s}'"),
            Token::Plus => write!(f, "'+'"),
            Token::Minus => write!(f, "'-'"),
            Token::Star => write!(f, "'*'"),
            Token::Slash => write!(f, "'/'"),
            Token::Caret => write!(f, "'^'"),
            Token::LParen => write!(f, "'('"),
            Token::RParen => write!(f, "')'"),
            Token::End => write!(f, "end of input"),
        }
    }
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(source: &'a str) -> Self {
        Lexer {
            bytes: source.as_bytes(),
            pos: 0,
        }
    }

    fn skip_whitespace(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next_token(&mut self) -> Result<(Token, usize), ParseError> {
        self.skip_whitespace();
        let start = self.pos;
        if self.pos >= self.bytes.len() {
            return Ok((Token::End, start));
        }
        let byte = self.bytes[self.pos];
        let single = match byte {
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'/' => Some(Token::Slash),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(token) = single {
            self.pos += 1;
            return Ok((token, start));
        }
        if byte.is_ascii_digit() || byte == b'.' {
            return self.lex_number(start);
        }
        if byte.is_ascii_alphabetic() || byte == b'_' {
            while self.pos < self.bytes.len()
                && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.bytes[start..self.pos])
                .expect("ascii range")
                .to_string();
            return Ok((Token::Ident(name), start));
        }
        Err(ParseError::Syntax {
            offset: start,
            found: format!("'{}'", self.bytes[start] as char),
            expected: vec!["number", "'x'", "function", "operator", "'('", "')'"],
        })
    }

    fn lex_number(&mut self, start: usize) -> Result<(Token, usize), ParseError> {
        // decimal digits, optional fraction, optional e/E exponent
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        if self.pos < self.bytes.len() && matches!(self.bytes[self.pos], b'e' | b'E') {
            let mark = self.pos;
            self.pos += 1;
            if self.pos < self.bytes.len() && matches!(self.bytes[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            if self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            } else {
                // 'e' was not an exponent after all ("2e" would be 2 * e?
                // no such constant; treat as a malformed literal)
                self.pos = mark;
                return Err(ParseError::BadNumber { offset: start });
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii range");
        match text.parse::<f64>() {
            Ok(value) if value.is_finite() => Ok((Token::Number(value), start)),
            _ => Err(ParseError::BadNumber { offset: start }),
        }
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    index: usize,
}

impl Parser {
    fn peek(&self) -> &(Token, usize) {
        &self.tokens[self.index]
    }

    fn advance(&mut self) -> (Token, usize) {
        let t = self.tokens[self.index].clone();
        if self.index + 1 < self.tokens.len() {
            self.index += 1;
        }
        t
    }

    fn expect(&mut self, token: Token, description: &'static str) -> Result<usize, ParseError> {
        let (found, offset) = self.peek().clone();
        if found == token {
            self.advance();
            Ok(offset)
        } else {
            Err(ParseError::Syntax {
                offset,
                found: found.to_string(),
                expected: vec![description],
            })
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_term()?;
        loop {
            let op = match self.peek().0 {
                Token::Plus => BinaryOp::Add,
                Token::Minus => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.parse_term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_factor()?.0;
        loop {
            let op = match self.peek().0 {
                Token::Star => BinaryOp::Mul,
                Token::Slash => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.parse_factor()?.0;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    /// Returns the parsed factor plus whether it is a bare '-' atom, which
    /// is rejected next to '^'.
    fn parse_factor(&mut self) -> Result<(Expr, bool), ParseError> {
        let (base, base_is_bare_neg) = self.parse_atom()?;
        if let (Token::Caret, caret_offset) = self.peek().clone() {
            if base_is_bare_neg {
                return Err(ParseError::NegativePowOperand {
                    offset: caret_offset,
                });
            }
            self.advance();
            let exponent_offset = self.peek().1;
            let (exponent, exp_is_bare_neg) = self.parse_factor()?;
            if exp_is_bare_neg {
                return Err(ParseError::NegativePowOperand {
                    offset: exponent_offset,
                });
            }
            return Ok((
                Expr::Binary(BinaryOp::Pow, Box::new(base), Box::new(exponent)),
                false,
            ));
        }
        Ok((base, base_is_bare_neg))
    }

    fn parse_atom(&mut self) -> Result<(Expr, bool), ParseError> {
        let (token, offset) = self.peek().clone();
        match token {
            Token::Number(value) => {
                self.advance();
                Ok((Expr::Literal(value), false))
            }
            Token::Minus => {
                self.advance();
                let (inner, _) = self.parse_atom()?;
                // fold a negated literal so printing round-trips
                let negated = match inner {
                    Expr::Literal(v) => Expr::Literal(-v),
                    other => Expr::Unary(UnaryOp::Neg, Box::new(other)),
                };
                Ok((negated, true))
            }
            Token::LParen => {
                self.advance();
                let inner = self.parse_expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok((inner, false))
            }
            Token::Ident(name) => {
                self.advance();
                if name == "x" {
                    return Ok((Expr::Var, false));
                }
                let func = match name.as_str() {
                    "exp" => UnaryOp::Exp,
                    "ln" => UnaryOp::Ln,
                    "sqrt" => UnaryOp::Sqrt,
                    "abs" => UnaryOp::Abs,
                    _ => return Err(ParseError::UnknownIdentifier { offset, name }),
                };
                self.expect(Token::LParen, "'('")?;
                let argument = self.parse_expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok((Expr::Unary(func, Box::new(argument)), false))
            }
            other => Err(ParseError::Syntax {
                offset,
                found: other.to_string(),
                expected: vec!["number", "'x'", "function", "'('", "'-'"],
            }),
        }
    }
}

/// Parses a source string into an expression tree.
pub fn parse(source: &str) -> Result<Expr, ParseError> {
    let mut lexer = Lexer::new(source);
    let mut tokens = Vec::new();
    loop {
        let (token, offset) = lexer.next_token()?;
        let is_end = token == Token::End;
        tokens.push((token, offset));
        if is_end {
            break;
        }
    }
    let mut parser = Parser { tokens, index: 0 };
    let expr = parser.parse_expr()?;
    let (trailing, offset) = parser.peek().clone();
    if trailing != Token::End {
        return Err(ParseError::Syntax {
            offset,
            found: trailing.to_string(),
            expected: vec!["operator", "end of input"],
        });
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_power_of_variable() {
        assert_eq!(
            parse("x^2").unwrap(),
            Expr::Binary(
                BinaryOp::Pow,
                Box::new(Expr::Var),
                Box::new(Expr::Literal(2.0))
            )
        );
    }

    #[test]
    fn parses_function_application() {
        assert_eq!(
            parse("exp(x) + 1").unwrap(),
            Expr::Binary(
                BinaryOp::Add,
                Box::new(Expr::Unary(UnaryOp::Exp, Box::new(Expr::Var))),
                Box::new(Expr::Literal(1.0))
            )
        );
    }

    #[test]
    fn incomplete_input_reports_offset() {
        match parse("x +") {
            Err(e) => assert_eq!(e.offset(), 3),
            Ok(_) => panic!("expected failure"),
        }
    }

    #[test]
    fn caret_is_right_associative() {
        assert_eq!(
            parse("x^2^3").unwrap(),
            Expr::Binary(
                BinaryOp::Pow,
                Box::new(Expr::Var),
                Box::new(Expr::Binary(
                    BinaryOp::Pow,
                    Box::new(Expr::Literal(2.0)),
                    Box::new(Expr::Literal(3.0))
                ))
            )
        );
    }

    #[test]
    fn bare_minus_next_to_caret_is_rejected() {
        assert!(matches!(
            parse("-x^2"),
            Err(ParseError::NegativePowOperand { .. })
        ));
        assert!(matches!(
            parse("x^-2"),
            Err(ParseError::NegativePowOperand { .. })
        ));
        // parenthesized forms are fine
        assert!(parse("(-x)^2").is_ok());
        assert!(parse("x^(-2)").is_ok());
    }

    #[test]
    fn unknown_identifier_is_reported() {
        match parse("sin(x)") {
            Err(ParseError::UnknownIdentifier { offset, name }) => {
                assert_eq!(offset, 0);
                assert_eq!(name, "sin");
            }
            other => panic!("expected unknown identifier, got {other:?}"),
        }
    }

    #[test]
    fn number_forms() {
        assert_eq!(parse("0.5").unwrap(), Expr::Literal(0.5));
        assert_eq!(parse("1e-3").unwrap(), Expr::Literal(1e-3));
        assert_eq!(parse("2.5E+2").unwrap(), Expr::Literal(250.0));
        assert_eq!(parse("-2").unwrap(), Expr::Literal(-2.0));
        assert!(matches!(parse("2e"), Err(ParseError::BadNumber { .. })));
    }

    #[test]
    fn trailing_garbage_is_rejected() {
        match parse("x 2") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parser_never_panics_on_junk() {
        let junk = [
            "", "(", ")", "((x)", "x)", "^", "x^", "*x", "x*", "1..2", "x x", "exp", "exp x",
            "exp()", "@", "x + * 2", "--", "-",
        ];
        for source in junk {
            match parse(source) {
                Ok(_) => panic!("junk input '{source}' parsed"),
                Err(e) => {
                    let _ = e.offset();
                }
            }
        }
    }
}
