//! Syntax tree for chase scripts.
//!
//! Nodes carry [`SourceSpan`]s for diagnostics. Use
//! [`ScriptAst::without_spans`] to compare trees structurally.

use alloc::string::String;
use alloc::vec::Vec;

use crate::diag::SourceSpan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verb {
    Do,
    GoTo,
    InteractWith,
}

impl Verb {
    /// Case-insensitive keyword match.
    pub fn from_keyword(word: &str) -> Option<Verb> {
        if word.eq_ignore_ascii_case("do") {
            Some(Verb::Do)
        } else if word.eq_ignore_ascii_case("goto") {
            Some(Verb::GoTo)
        } else if word.eq_ignore_ascii_case("interactwith") {
            Some(Verb::InteractWith)
        } else {
            None
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Verb::Do => "do",
            Verb::GoTo => "goTo",
            Verb::InteractWith => "interactWith",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ArgValue {
    /// One or more words, e.g. `wave hand`.
    Words(Vec<String>),
    /// Non-negative decimal; a duration in seconds wherever it is accepted.
    Number(f64),
}

impl ArgValue {
    /// Words joined by single spaces, or `None` for numbers.
    pub fn as_phrase(&self) -> Option<String> {
        match self {
            ArgValue::Words(words) => Some(words.join(" ")),
            ArgValue::Number(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arg {
    pub value: ArgValue,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaseCommand {
    pub verb: Verb,
    pub args: Vec<Arg>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterRef {
    pub name: String,
    pub span: SourceSpan,
}

/// A base command plus its optional `.do(...)` overlay and
/// `.characterName(...)` routing.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandChain {
    pub base: BaseCommand,
    pub overlay: Option<BaseCommand>,
    pub character: Option<CharacterRef>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Bare(CommandChain),
    Task1d {
        index: u32,
        chain: CommandChain,
        lhs_span: SourceSpan,
    },
    Task2d {
        row: u32,
        col: u32,
        chain: CommandChain,
        lhs_span: SourceSpan,
    },
}

impl Statement {
    pub fn chain(&self) -> &CommandChain {
        match self {
            Statement::Bare(chain)
            | Statement::Task1d { chain, .. }
            | Statement::Task2d { chain, .. } => chain,
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Statement::Bare(_) => Mode::Bare,
            Statement::Task1d { .. } => Mode::Task1d,
            Statement::Task2d { .. } => Mode::Task2d,
        }
    }

    /// Span of the array left-hand side, or of the chain for bare statements.
    pub fn head_span(&self) -> SourceSpan {
        match self {
            Statement::Bare(chain) => chain.span,
            Statement::Task1d { lhs_span, .. } | Statement::Task2d { lhs_span, .. } => *lhs_span,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Bare,
    Task1d,
    Task2d,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScriptAst {
    pub statements: Vec<Statement>,
    pub mode: Mode,
}

impl ScriptAst {
    /// Copy with every span replaced by [`SourceSpan::SYNTHETIC`].
    pub fn without_spans(&self) -> ScriptAst {
        fn base(cmd: &BaseCommand) -> BaseCommand {
            BaseCommand {
                verb: cmd.verb,
                args: cmd
                    .args
                    .iter()
                    .map(|a| Arg {
                        value: a.value.clone(),
                        span: SourceSpan::SYNTHETIC,
                    })
                    .collect(),
                span: SourceSpan::SYNTHETIC,
            }
        }
        fn chain(c: &CommandChain) -> CommandChain {
            CommandChain {
                base: base(&c.base),
                overlay: c.overlay.as_ref().map(base),
                character: c.character.as_ref().map(|r| CharacterRef {
                    name: r.name.clone(),
                    span: SourceSpan::SYNTHETIC,
                }),
                span: SourceSpan::SYNTHETIC,
            }
        }
        let statements = self
            .statements
            .iter()
            .map(|s| match s {
                Statement::Bare(c) => Statement::Bare(chain(c)),
                Statement::Task1d { index, chain: c, .. } => Statement::Task1d {
                    index: *index,
                    chain: chain(c),
                    lhs_span: SourceSpan::SYNTHETIC,
                },
                Statement::Task2d { row, col, chain: c, .. } => Statement::Task2d {
                    row: *row,
                    col: *col,
                    chain: chain(c),
                    lhs_span: SourceSpan::SYNTHETIC,
                },
            })
            .collect();
        ScriptAst {
            statements,
            mode: self.mode,
        }
    }

    /// Equality ignoring source locations.
    pub fn structurally_eq(&self, other: &ScriptAst) -> bool {
        self.without_spans() == other.without_spans()
    }
}
