//! Recursive-descent parser.
//!
//! ```text
//! script    := { sep } [ statement { sep { sep } statement } ] { sep }
//! statement := [ lhs "=" ] chain
//! lhs       := ("task" | "tasks") "[" index "]" [ "[" index "]" ]
//! chain     := base { "." modifier }
//! base      := verb "(" arg { "," arg } ")"
//! modifier  := "do" "(" arg { "," arg } ")" | "characterName" "(" word { word } ")"
//! arg       := number | word { word }
//! ```
//!
//! Keywords are case-insensitive. After an error the parser skips to the next
//! statement separator and keeps going, so one run reports every broken
//! statement.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ast::{Arg, ArgValue, BaseCommand, CharacterRef, CommandChain, Mode, ScriptAst, Statement, Verb};
use crate::diag::{Code, Diagnostic, SourceSpan};
use crate::lexer::{Token, TokenKind};

type PResult<T> = Result<T, Diagnostic>;

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn peek_kind_at(&self, offset: usize) -> Option<TokenKind> {
        self.tokens.get(self.pos + offset).map(|t| t.kind)
    }

    fn bump(&mut self) -> &'a Token {
        let tok = &self.tokens[self.pos];
        self.pos += 1;
        tok
    }

    /// Span used when the input ends unexpectedly.
    fn eof_span(&self) -> SourceSpan {
        match self.tokens.last() {
            Some(t) => SourceSpan::new(t.span.line, t.span.column + t.span.length, 1),
            None => SourceSpan::SYNTHETIC,
        }
    }

    fn here(&self) -> SourceSpan {
        self.peek().map(|t| t.span).unwrap_or_else(|| self.eof_span())
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Word || t.kind == TokenKind::Number => {
                format!("'{}'", t.text)
            }
            Some(t) => String::from(t.kind.describe()),
            None => String::from("end of input"),
        }
    }

    fn unexpected(&self, expected: &str) -> Diagnostic {
        Diagnostic::error(
            Code::UnexpectedToken,
            self.here(),
            format!("expected {expected}, found {}", self.found()),
        )
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> PResult<&'a Token> {
        if self.peek_kind() == Some(kind) {
            Ok(self.bump())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn at_statement_end(&self) -> bool {
        matches!(self.peek_kind(), None | Some(TokenKind::Newline))
    }

    fn skip_statement(&mut self) {
        while !self.at_statement_end() {
            self.pos += 1;
        }
    }

    fn statement(&mut self) -> PResult<Statement> {
        let is_array = self.peek_kind() == Some(TokenKind::Word)
            && self.peek_kind_at(1) == Some(TokenKind::LeftBracket);
        let stmt = if is_array {
            let name = self.bump();
            if !(name.text.eq_ignore_ascii_case("task") || name.text.eq_ignore_ascii_case("tasks")) {
                return Err(Diagnostic::error(
                    Code::UnknownArray,
                    name.span,
                    format!("unknown array '{}', expected 'task' or 'tasks'", name.text),
                ));
            }
            let first = self.index()?;
            let second = if self.peek_kind() == Some(TokenKind::LeftBracket) {
                Some(self.index()?)
            } else {
                None
            };
            let close = &self.tokens[self.pos - 1];
            let lhs_span = name.span.join(close.span);
            self.expect(TokenKind::Equals, "'='")?;
            let chain = self.chain()?;
            match second {
                None => Statement::Task1d { index: first, chain, lhs_span },
                Some(col) => Statement::Task2d { row: first, col, chain, lhs_span },
            }
        } else {
            Statement::Bare(self.chain()?)
        };
        match self.peek_kind() {
            None | Some(TokenKind::Newline) => Ok(stmt),
            Some(TokenKind::RightParen) => Err(Diagnostic::error(
                Code::UnbalancedParens,
                self.here(),
                "unmatched ')'",
            )),
            Some(_) => Err(self.unexpected("end of statement")),
        }
    }

    fn index(&mut self) -> PResult<u32> {
        self.expect(TokenKind::LeftBracket, "'['")?;
        let tok = self.expect(TokenKind::Number, "array index")?;
        let value = if tok.text.contains('.') {
            None
        } else {
            tok.text.parse::<u32>().ok().filter(|&v| v >= 1)
        };
        let Some(value) = value else {
            return Err(Diagnostic::error(
                Code::BadIndex,
                tok.span,
                format!("array index must be a positive integer, found {}", tok.text),
            ));
        };
        self.expect(TokenKind::RightBracket, "']'")?;
        Ok(value)
    }

    fn chain(&mut self) -> PResult<CommandChain> {
        let base = self.command()?;
        let mut span = base.span;
        let mut overlay: Option<BaseCommand> = None;
        let mut character: Option<CharacterRef> = None;

        while self.peek_kind() == Some(TokenKind::Dot) {
            self.bump();
            let Some(word) = self.peek().filter(|t| t.kind == TokenKind::Word) else {
                return Err(self.unexpected("'do' or 'characterName' after '.'"));
            };
            if word.text.eq_ignore_ascii_case("do") {
                if base.verb == Verb::Do {
                    return Err(Diagnostic::error(
                        Code::ChainOnDo,
                        word.span,
                        "an overlay can only be attached to goTo or interactWith",
                    ));
                }
                if overlay.is_some() {
                    return Err(Diagnostic::error(
                        Code::DuplicateOverlay,
                        word.span,
                        "a command takes at most one overlay",
                    ));
                }
                let cmd = self.command()?;
                span = span.join(cmd.span);
                overlay = Some(cmd);
            } else if word.text.eq_ignore_ascii_case("charactername") {
                if character.is_some() {
                    return Err(Diagnostic::error(
                        Code::DuplicateCharacterName,
                        word.span,
                        "characterName given twice",
                    ));
                }
                self.bump();
                let open = self.expect(TokenKind::LeftParen, "'(' after characterName")?;
                if self.peek_kind() == Some(TokenKind::RightParen) {
                    return Err(Diagnostic::error(
                        Code::EmptyArgs,
                        self.here(),
                        "characterName needs a name",
                    ));
                }
                let mut words = Vec::new();
                let mut name_span = self.here();
                while self.peek_kind() == Some(TokenKind::Word) {
                    let w = self.bump();
                    name_span = name_span.join(w.span);
                    words.push(w.text.clone());
                }
                if words.is_empty() {
                    return Err(self.unexpected("character name"));
                }
                let close = self.close_paren(open)?;
                span = span.join(word.span).join(close.span);
                character = Some(CharacterRef {
                    name: words.join(" "),
                    span: name_span,
                });
            } else {
                return Err(self.unexpected("'do' or 'characterName' after '.'"));
            }
        }

        Ok(CommandChain {
            base,
            overlay,
            character,
            span,
        })
    }

    fn command(&mut self) -> PResult<BaseCommand> {
        let Some(word) = self.peek().filter(|t| t.kind == TokenKind::Word) else {
            return Err(self.unexpected("a command (do, goTo or interactWith)"));
        };
        let Some(verb) = Verb::from_keyword(&word.text) else {
            return Err(Diagnostic::error(
                Code::UnknownVerb,
                word.span,
                format!("unknown command '{}', expected do, goTo or interactWith", word.text),
            ));
        };
        self.bump();
        let open = self.expect(TokenKind::LeftParen, "'(' after command")?;
        if self.peek_kind() == Some(TokenKind::RightParen) {
            return Err(Diagnostic::error(
                Code::EmptyArgs,
                self.here(),
                format!("{} needs at least one argument", verb.keyword()),
            ));
        }
        let mut args = Vec::new();
        loop {
            args.push(self.arg(open)?);
            match self.peek_kind() {
                Some(TokenKind::Comma) => {
                    self.bump();
                }
                _ => break,
            }
        }
        let close = self.close_paren(open)?;
        Ok(BaseCommand {
            verb,
            args,
            span: word.span.join(close.span),
        })
    }

    fn close_paren(&mut self, open: &Token) -> PResult<&'a Token> {
        match self.peek_kind() {
            Some(TokenKind::RightParen) => Ok(self.bump()),
            None | Some(TokenKind::Newline) => Err(Diagnostic::error(
                Code::UnbalancedParens,
                open.span,
                "unclosed '('",
            )),
            Some(_) => Err(self.unexpected("',' or ')'")),
        }
    }

    fn arg(&mut self, open: &Token) -> PResult<Arg> {
        match self.peek_kind() {
            Some(TokenKind::Number) => {
                let tok = self.bump();
                let value: f64 = tok.text.parse().map_err(|_| {
                    Diagnostic::error(Code::UnexpectedToken, tok.span, "malformed number")
                })?;
                Ok(Arg {
                    value: ArgValue::Number(value),
                    span: tok.span,
                })
            }
            Some(TokenKind::Word) => {
                let first = self.bump();
                let mut span = first.span;
                let mut words = alloc::vec![first.text.clone()];
                while self.peek_kind() == Some(TokenKind::Word) {
                    let w = self.bump();
                    span = span.join(w.span);
                    words.push(w.text.clone());
                }
                Ok(Arg {
                    value: ArgValue::Words(words),
                    span,
                })
            }
            None | Some(TokenKind::Newline) => Err(Diagnostic::error(
                Code::UnbalancedParens,
                open.span,
                "unclosed '('",
            )),
            Some(_) => Err(self.unexpected("an argument")),
        }
    }
}

/// Parses a token stream into a [`ScriptAst`]. The script's mode is taken
/// from its first statement; all others must match.
pub fn parse(tokens: &[Token]) -> Result<ScriptAst, Vec<Diagnostic>> {
    let mut p = Parser { tokens, pos: 0 };
    let mut statements = Vec::new();
    let mut errors = Vec::new();
    let mut mode: Option<Mode> = None;
    let mut cells: BTreeSet<(u32, u32)> = BTreeSet::new();

    loop {
        while p.peek_kind() == Some(TokenKind::Newline) {
            p.bump();
        }
        if p.peek().is_none() {
            break;
        }
        match p.statement() {
            Ok(stmt) => {
                let this_mode = stmt.mode();
                match mode {
                    None => mode = Some(this_mode),
                    Some(m) if m != this_mode => {
                        errors.push(Diagnostic::error(
                            Code::MixedModes,
                            stmt.head_span(),
                            format!(
                                "{} statement in a script of {} statements",
                                mode_name(this_mode),
                                mode_name(m)
                            ),
                        ));
                        continue;
                    }
                    Some(_) => {}
                }
                let cell = match &stmt {
                    Statement::Bare(_) => None,
                    Statement::Task1d { index, .. } => Some((*index, 0)),
                    Statement::Task2d { row, col, .. } => Some((*row, *col)),
                };
                if let Some(cell) = cell {
                    if !cells.insert(cell) {
                        errors.push(Diagnostic::error(
                            Code::DuplicateCell,
                            stmt.head_span(),
                            "this task cell is already assigned",
                        ));
                        continue;
                    }
                }
                statements.push(stmt);
            }
            Err(diag) => {
                errors.push(diag);
                p.skip_statement();
            }
        }
    }

    if errors.is_empty() {
        Ok(ScriptAst {
            statements,
            mode: mode.unwrap_or_default(),
        })
    } else {
        Err(errors)
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Bare => "bare",
        Mode::Task1d => "task[i]",
        Mode::Task2d => "tasks[r][c]",
    }
}
