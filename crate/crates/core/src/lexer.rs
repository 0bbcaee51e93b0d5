//! Tokenizer for chase scripts.
//!
//! `#` starts a comment running to the end of the line. A newline and a `;`
//! both produce a [`TokenKind::Newline`] statement separator.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::diag::{Code, Diagnostic, SourceSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Word,
    Number,
    LeftParen,
    RightParen,
    Comma,
    Dot,
    Equals,
    LeftBracket,
    RightBracket,
    Newline,
}

impl TokenKind {
    pub fn describe(self) -> &'static str {
        match self {
            TokenKind::Word => "word",
            TokenKind::Number => "number",
            TokenKind::LeftParen => "'('",
            TokenKind::RightParen => "')'",
            TokenKind::Comma => "','",
            TokenKind::Dot => "'.'",
            TokenKind::Equals => "'='",
            TokenKind::LeftBracket => "'['",
            TokenKind::RightBracket => "']'",
            TokenKind::Newline => "end of statement",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: SourceSpan,
}

fn is_word_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_word_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Splits `source` into tokens. Every illegal character is reported, not
/// just the first.
pub fn tokenize(source: &str) -> Result<Vec<Token>, Vec<Diagnostic>> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let mut errors = Vec::new();
    let mut i = 0;
    let mut line = 1u32;
    let mut column = 1u32;

    while i < chars.len() {
        let c = chars[i];
        let start_col = column;
        let single = |kind: TokenKind| Token {
            kind,
            text: String::from(c),
            span: SourceSpan::new(line, start_col, 1),
        };
        match c {
            '\n' => {
                tokens.push(single(TokenKind::Newline));
                i += 1;
                line += 1;
                column = 1;
                continue;
            }
            ' ' | '\t' | '\r' => {}
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                    column += 1;
                }
                continue;
            }
            ';' => tokens.push(single(TokenKind::Newline)),
            '(' => tokens.push(single(TokenKind::LeftParen)),
            ')' => tokens.push(single(TokenKind::RightParen)),
            ',' => tokens.push(single(TokenKind::Comma)),
            '.' => tokens.push(single(TokenKind::Dot)),
            '=' => tokens.push(single(TokenKind::Equals)),
            '[' => tokens.push(single(TokenKind::LeftBracket)),
            ']' => tokens.push(single(TokenKind::RightBracket)),
            c if c.is_ascii_digit() => {
                let mut end = i;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                // A fraction needs a digit after the dot; otherwise the dot is
                // a chain separator.
                if end + 1 < chars.len() && chars[end] == '.' && chars[end + 1].is_ascii_digit() {
                    end += 1;
                    while end < chars.len() && chars[end].is_ascii_digit() {
                        end += 1;
                    }
                }
                let text: String = chars[i..end].iter().collect();
                let len = (end - i) as u32;
                tokens.push(Token {
                    kind: TokenKind::Number,
                    text,
                    span: SourceSpan::new(line, start_col, len),
                });
                column += len;
                i = end;
                continue;
            }
            c if is_word_start(c) => {
                let mut end = i + 1;
                while end < chars.len() && is_word_continue(chars[end]) {
                    end += 1;
                }
                let text: String = chars[i..end].iter().collect();
                let len = (end - i) as u32;
                tokens.push(Token {
                    kind: TokenKind::Word,
                    text,
                    span: SourceSpan::new(line, start_col, len),
                });
                column += len;
                i = end;
                continue;
            }
            other => errors.push(Diagnostic::error(
                Code::IllegalChar,
                SourceSpan::new(line, start_col, 1),
                format!("illegal character {other:?}"),
            )),
        }
        i += 1;
        column += 1;
    }

    if errors.is_empty() {
        Ok(tokens)
    } else {
        Err(errors)
    }
}
