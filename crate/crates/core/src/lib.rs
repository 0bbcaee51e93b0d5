#![cfg_attr(not(test), no_std)]

//! Core of the chase character-animation scripting language.
//!
//! A script is three verbs (`do`, `goTo`, `interactWith`) with optional
//! chained modifiers (`.do(...)` overlays, `.characterName(...)` routing),
//! written either as bare statements or as `task[i]` / `tasks[r][c]` arrays.
//! The pipeline is:
//!
//! ```text
//! source --tokenize--> tokens --parse--> ScriptAst
//!        --resolve(registry, scene)--> TaskMatrix
//!        --schedule(config)--> Timeline --sample/render_frames--> Frames
//! ```
//!
//! This crate depends only on `core` and `alloc`. File formats, IO and the
//! command-line front end live in the `chase-cli` crate.

extern crate alloc;

pub mod ast;
pub mod config;
pub mod diag;
pub mod format;
pub mod lexer;
pub mod parser;
pub mod path;
pub mod registry;
pub mod resolve;
pub mod scene;
pub mod schedule;
pub mod synth;
pub mod timeline;

use alloc::vec::Vec;

pub use ast::{Arg, ArgValue, BaseCommand, CommandChain, Mode, ScriptAst, Statement, Verb};
pub use config::EngineConfig;
pub use diag::{Code, Diagnostic, Severity, SourceSpan};
pub use format::format;
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::parse;
pub use path::{approach_cell, find_path, OctileCost, Path, PathError};
pub use registry::{
    ActionDef, ActionKind, Behavior, BodyPart, MotionStyle, PartSlot, Registry, RegistryError,
    RepeatPolicy, StyleSpeeds,
};
pub use resolve::{resolve, CommandKind, ResolvedCommand, SoloSpec, TaskMatrix};
pub use scene::{Grid, GridPos, Scene, SceneError};
pub use schedule::{schedule, Schedule};
pub use synth::{render_frames, sample, CharacterFrame, Frame, SampleError};
pub use timeline::{Channel, EventParams, EventRole, Timeline, TimelineEvent, TrackPoint};

/// Tokenize and parse in one step.
pub fn parse_source(source: &str) -> Result<ScriptAst, Vec<Diagnostic>> {
    let tokens = tokenize(source)?;
    parse(&tokens)
}

/// Full pipeline from script text to a scheduled timeline.
pub fn compile(
    source: &str,
    registry: &Registry,
    scene: &Scene,
    config: &EngineConfig,
) -> Result<Schedule, Vec<Diagnostic>> {
    let ast = parse_source(source)?;
    let matrix = resolve(&ast, registry, scene)?;
    schedule(&matrix, scene, config)
}
