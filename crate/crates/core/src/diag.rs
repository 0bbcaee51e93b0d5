//! Source locations and the diagnostic catalogue.

use alloc::string::String;
use core::fmt;

/// A 1-based line/column location covering `length` characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl SourceSpan {
    pub const fn new(line: u32, column: u32, length: u32) -> Self {
        SourceSpan {
            line,
            column,
            length: if length == 0 { 1 } else { length },
        }
    }

    /// Placeholder for nodes built in code rather than parsed.
    pub const SYNTHETIC: SourceSpan = SourceSpan::new(1, 1, 1);

    /// Smallest single-line span covering both, or `self` when they are on
    /// different lines.
    pub fn join(self, other: SourceSpan) -> SourceSpan {
        if self.line != other.line {
            return self;
        }
        let start = self.column.min(other.column);
        let end = (self.column + self.length).max(other.column + other.length);
        SourceSpan::new(self.line, start, end - start)
    }
}

impl Default for SourceSpan {
    fn default() -> Self {
        SourceSpan::SYNTHETIC
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

macro_rules! codes {
    ($($(#[$meta:meta])* $variant:ident => $text:literal,)*) => {
        /// Stable diagnostic codes. The string form never changes between
        /// releases; tooling matches on it.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Code {
            $($(#[$meta])* $variant,)*
        }

        impl Code {
            pub const ALL: &'static [Code] = &[$(Code::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(Code::$variant => $text,)*
                }
            }
        }
    };
}

codes! {
    // lexical / syntax
    IllegalChar => "ILLEGAL-CHAR",
    UnexpectedToken => "UNEXPECTED-TOKEN",
    UnknownVerb => "UNKNOWN-VERB",
    UnknownArray => "UNKNOWN-ARRAY",
    BadIndex => "BAD-INDEX",
    EmptyArgs => "EMPTY-ARGS",
    UnbalancedParens => "UNBALANCED-PARENS",
    MixedModes => "MIXED-MODES",
    DuplicateCell => "DUPLICATE-CELL",
    ChainOnDo => "CHAIN-ON-DO",
    DuplicateOverlay => "DUPLICATE-OVERLAY",
    DuplicateCharacterName => "DUPLICATE-CHARACTER-NAME",
    // resolution
    UnknownAction => "UNKNOWN-ACTION",
    UnknownEntity => "UNKNOWN-ENTITY",
    UnknownCharacter => "UNKNOWN-CHARACTER",
    UnknownStyle => "UNKNOWN-STYLE",
    UnexpectedArg => "UNEXPECTED-ARG",
    MissingArg => "MISSING-ARG",
    TooManyArgs => "TOO-MANY-ARGS",
    BadDuration => "BAD-DURATION",
    NotInteraction => "NOT-INTERACTION",
    SelfTarget => "SELF-TARGET",
    PartNotAllowed => "PART-NOT-ALLOWED",
    AmbiguousCharacter => "AMBIGUOUS-CHARACTER",
    RowGap => "ROW-GAP",
    ColumnCharacterMismatch => "COLUMN-CHARACTER-MISMATCH",
    DuplicateParamClass => "DUPLICATE-PARAM-CLASS",
    OverlayChannelConflict => "OVERLAY-CHANNEL-CONFLICT",
    // scheduling
    Unreachable => "UNREACHABLE",
    NoApproach => "NO-APPROACH",
    /// Warning: an overlay asked for longer than its base command runs.
    OverlayClipped => "OVERLAY-CLIPPED",
    /// Warning: the base command took no time, so its overlay never plays.
    OverlayDropped => "OVERLAY-DROPPED",
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub span: SourceSpan,
}

impl Diagnostic {
    pub fn error(code: Code, span: SourceSpan, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            message: message.into(),
            span,
        }
    }

    pub fn warning(code: Code, span: SourceSpan, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            code,
            message: message.into(),
            span,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

/// Renders as `line:col: severity CODE: message`; the CLI prefixes the file.
impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {}: {}",
            self.span,
            self.severity.as_str(),
            self.code,
            self.message
        )
    }
}
