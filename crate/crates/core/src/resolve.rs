//! Binds parsed statements to registry actions, scene entities and
//! characters, producing a row-ordered [`TaskMatrix`].
//!
//! Argument classification per verb:
//!
//! * `do(action, ...)`: the rest are a body part, a duration (number) or a
//!   scene entity to face, in any order, each at most once.
//! * `goTo(entity[, style])`: style defaults to walk.
//! * `interactWith(entity, module, ...)`: the rest are a body part and/or a
//!   duration, in any order, each at most once.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::ast::{Arg, ArgValue, BaseCommand, CommandChain, Mode, ScriptAst, Statement, Verb};
use crate::diag::{Code, Diagnostic, SourceSpan};
use crate::registry::{ActionDef, ActionKind, MotionStyle, PartSlot, Registry};
use crate::scene::Scene;

/// A `do` action with its parameters settled.
#[derive(Debug, Clone, PartialEq)]
pub struct SoloSpec {
    pub action: ActionDef,
    pub part: PartSlot,
    pub duration_s: f64,
    /// Whether `duration_s` was written in the script.
    pub explicit_duration: bool,
    pub facing_target: Option<String>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CommandKind {
    Solo(SoloSpec),
    /// Walk or run to the approach cell of `target`. The cell itself is
    /// chosen at scheduling time, from wherever the character is by then.
    Locomotion { target: String, style: MotionStyle },
    Interaction {
        target: String,
        module: ActionDef,
        part: PartSlot,
        duration_s: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedCommand {
    pub character: String,
    pub kind: CommandKind,
    /// Only present on locomotion and interaction commands.
    pub overlay: Option<SoloSpec>,
    pub span: SourceSpan,
}

/// Rows of commands, row `r` at index `r - 1`. Within a row every character
/// appears at most once, in column order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TaskMatrix {
    pub rows: Vec<Vec<ResolvedCommand>>,
}

struct Resolver<'a> {
    registry: &'a Registry,
    scene: &'a Scene,
    errors: Vec<Diagnostic>,
}

pub fn resolve(ast: &ScriptAst, registry: &Registry, scene: &Scene) -> Result<TaskMatrix, Vec<Diagnostic>> {
    let mut r = Resolver {
        registry,
        scene,
        errors: Vec::new(),
    };

    let mut cells: Vec<(u32, u32, &Statement)> = ast
        .statements
        .iter()
        .enumerate()
        .map(|(i, s)| match s {
            Statement::Bare(_) => (i as u32 + 1, 1, s),
            Statement::Task1d { index, .. } => (*index, 1, s),
            Statement::Task2d { row, col, .. } => (*row, *col, s),
        })
        .collect();
    cells.sort_by_key(|&(row, col, _)| (row, col));

    let mut expected = 1;
    for &(row, _, stmt) in &cells {
        if row == expected {
            expected += 1;
        } else if row > expected {
            r.errors.push(Diagnostic::error(
                Code::RowGap,
                stmt.head_span(),
                format!("row {expected} is missing; task rows must be numbered 1..N without gaps"),
            ));
            break;
        }
    }

    let row_count = cells.last().map_or(0, |c| c.0) as usize;
    let mut rows: Vec<Vec<ResolvedCommand>> = (0..row_count).map(|_| Vec::new()).collect();
    let mut column_of: BTreeMap<String, u32> = BTreeMap::new();
    let mut character_of: BTreeMap<u32, String> = BTreeMap::new();

    let bind_columns = ast.mode == Mode::Task2d;
    for &(row, col, stmt) in &cells {
        let chain = stmt.chain();
        let routed = if bind_columns {
            r.route(chain, col, &mut column_of, &mut character_of)
        } else {
            r.route_free(chain)
        };
        let Some(character) = routed else {
            continue;
        };
        if let Some(cmd) = r.command(chain, character) {
            rows[row as usize - 1].push(cmd);
        }
    }

    if r.errors.is_empty() {
        Ok(TaskMatrix { rows })
    } else {
        Err(r.errors)
    }
}

/// Optional arguments after classification: part, duration, facing target.
type Optionals = (Option<(PartSlot, SourceSpan)>, Option<f64>, Option<(String, SourceSpan)>);

enum Class {
    Part(PartSlot),
    Duration(f64),
    Entity(String),
}

impl<'a> Resolver<'a> {
    fn error(&mut self, code: Code, span: SourceSpan, message: impl Into<String>) {
        self.errors.push(Diagnostic::error(code, span, message));
    }

    /// Picks the character performing `chain` outside of a two-dimensional
    /// task array.
    fn route_free(&mut self, chain: &CommandChain) -> Option<String> {
        self.route(chain, 0, &mut BTreeMap::new(), &mut BTreeMap::new())
    }

    /// Picks the character performing `chain`. Columns bind to characters by
    /// first use, one-to-one.
    fn route(
        &mut self,
        chain: &CommandChain,
        col: u32,
        column_of: &mut BTreeMap<String, u32>,
        character_of: &mut BTreeMap<u32, String>,
    ) -> Option<String> {
        let (name, span) = match &chain.character {
            Some(c) => {
                if !self.scene.characters().contains_key(&c.name) {
                    self.error(
                        Code::UnknownCharacter,
                        c.span,
                        format!("'{}' is not a character in the scene", c.name),
                    );
                    return None;
                }
                (c.name.clone(), c.span)
            }
            None => {
                if let Some(bound) = character_of.get(&col) {
                    return Some(bound.clone());
                }
                let mut names = self.scene.characters().keys();
                match (names.next(), names.next()) {
                    (Some(only), None) => (only.clone(), chain.span),
                    (None, _) => {
                        self.error(Code::UnknownCharacter, chain.span, "the scene has no characters");
                        return None;
                    }
                    (Some(_), Some(_)) => {
                        self.error(
                            Code::AmbiguousCharacter,
                            chain.base.span,
                            "the scene has several characters; add .characterName(...)",
                        );
                        return None;
                    }
                }
            }
        };
        match (character_of.get(&col), column_of.get(&name)) {
            (Some(bound), _) if *bound != name => {
                self.error(
                    Code::ColumnCharacterMismatch,
                    span,
                    format!("column {col} belongs to '{bound}', not '{name}'"),
                );
                None
            }
            (_, Some(&other)) if other != col => {
                self.error(
                    Code::ColumnCharacterMismatch,
                    span,
                    format!("'{name}' already uses column {other}, not column {col}"),
                );
                None
            }
            _ => {
                character_of.insert(col, name.clone());
                column_of.insert(name.clone(), col);
                Some(name)
            }
        }
    }

    fn command(&mut self, chain: &CommandChain, character: String) -> Option<ResolvedCommand> {
        let base = &chain.base;
        let kind = match base.verb {
            Verb::Do => CommandKind::Solo(self.solo(base, &character)?),
            Verb::GoTo => self.locomotion(base, &character)?,
            Verb::InteractWith => self.interaction(base, &character)?,
        };
        let overlay = match &chain.overlay {
            Some(cmd) => Some(self.overlay(cmd, &kind, &character)?),
            None => None,
        };
        Some(ResolvedCommand {
            character,
            kind,
            overlay,
            span: chain.span,
        })
    }

    fn action(&mut self, arg: &Arg) -> Option<ActionDef> {
        let ArgValue::Words(_) = &arg.value else {
            self.error(Code::UnexpectedArg, arg.span, "expected an action keyword, found a number");
            return None;
        };
        let phrase = arg.value.as_phrase().unwrap_or_default();
        match self.registry.lookup(&phrase) {
            Ok(def) => Some(def.clone()),
            Err(e) => {
                let message = match &e.hint {
                    Some(hint) => format!("unknown action '{phrase}'; did you mean '{hint}'?"),
                    None => format!("unknown action '{phrase}'"),
                };
                self.error(Code::UnknownAction, arg.span, message);
                None
            }
        }
    }

    fn entity(&mut self, arg: &Arg, character: &str) -> Option<String> {
        let Some(name) = arg.value.as_phrase() else {
            self.error(Code::UnexpectedArg, arg.span, "expected a scene entity, found a number");
            return None;
        };
        if self.scene.entity(&name).is_none() {
            self.error(Code::UnknownEntity, arg.span, format!("no entity named '{name}' in the scene"));
            return None;
        }
        if name == character {
            self.error(Code::SelfTarget, arg.span, format!("'{name}' cannot target itself"));
            return None;
        }
        Some(name)
    }

    fn classify(&mut self, arg: &Arg, allow_entity: bool) -> Option<Class> {
        match &arg.value {
            ArgValue::Number(n) => {
                if *n > 0.0 && n.is_finite() {
                    Some(Class::Duration(*n))
                } else {
                    self.error(Code::BadDuration, arg.span, "duration must be greater than zero seconds");
                    None
                }
            }
            ArgValue::Words(words) => {
                let phrase = words.join(" ");
                if let Some(part) = PartSlot::from_keyword(&phrase) {
                    return Some(Class::Part(part));
                }
                if allow_entity {
                    if self.scene.entity(&phrase).is_some() {
                        return Some(Class::Entity(phrase));
                    }
                    self.error(
                        Code::UnknownEntity,
                        arg.span,
                        format!("'{phrase}' is neither a body part nor a scene entity"),
                    );
                } else {
                    self.error(
                        Code::UnexpectedArg,
                        arg.span,
                        format!("'{phrase}' is not a body part"),
                    );
                }
                None
            }
        }
    }

    /// Sorts optional arguments into part / duration / facing target.
    fn optionals(
        &mut self,
        args: &[Arg],
        allow_entity: bool,
    ) -> Option<Optionals> {
        let mut part = None;
        let mut duration = None;
        let mut facing = None;
        let mut ok = true;
        for arg in args {
            let (slot_taken, what) = match self.classify(arg, allow_entity) {
                None => {
                    ok = false;
                    continue;
                }
                Some(Class::Part(p)) => (part.replace((p, arg.span)).is_some(), "body part"),
                Some(Class::Duration(d)) => (duration.replace(d).is_some(), "duration"),
                Some(Class::Entity(e)) => (facing.replace((e, arg.span)).is_some(), "facing target"),
            };
            if slot_taken {
                self.error(
                    Code::DuplicateParamClass,
                    arg.span,
                    format!("{what} given more than once"),
                );
                ok = false;
            }
        }
        ok.then_some((part, duration, facing))
    }

    fn check_part(&mut self, def: &ActionDef, part: Option<(PartSlot, SourceSpan)>) -> Option<PartSlot> {
        match part {
            None => Some(def.default_part),
            Some((p, _)) if def.allows(p) => Some(p),
            Some((p, span)) => {
                let allowed: Vec<&str> = def.allowed_parts.iter().map(|a| a.keyword()).collect();
                self.error(
                    Code::PartNotAllowed,
                    span,
                    format!(
                        "'{}' cannot be performed with {}; allowed: {}",
                        def.keyword,
                        p.keyword(),
                        allowed.join(", ")
                    ),
                );
                None
            }
        }
    }

    fn solo(&mut self, cmd: &BaseCommand, character: &str) -> Option<SoloSpec> {
        let action = self.action(&cmd.args[0]);
        let opts = self.optionals(&cmd.args[1..], true);
        let (action, (part, duration, facing)) = (action?, opts?);
        let part = self.check_part(&action, part)?;
        let facing_target = match facing {
            Some((name, span)) if name == character => {
                self.error(Code::SelfTarget, span, format!("'{name}' cannot face itself"));
                return None;
            }
            Some((name, _)) => Some(name),
            None => None,
        };
        Some(SoloSpec {
            duration_s: duration.unwrap_or(action.default_duration_s),
            explicit_duration: duration.is_some(),
            part,
            facing_target,
            action,
            span: cmd.span,
        })
    }

    fn locomotion(&mut self, cmd: &BaseCommand, character: &str) -> Option<CommandKind> {
        let target = self.entity(&cmd.args[0], character);
        let style = match cmd.args.get(1) {
            None => Some(MotionStyle::Walk),
            Some(arg) => {
                let phrase = arg.value.as_phrase().unwrap_or_else(|| "a number".to_string());
                let style = MotionStyle::from_keyword(&phrase);
                if style.is_none() {
                    self.error(
                        Code::UnknownStyle,
                        arg.span,
                        format!("unknown motion style '{phrase}', expected walk or run"),
                    );
                }
                style
            }
        };
        if let Some(extra) = cmd.args.get(2) {
            self.error(Code::TooManyArgs, extra.span, "goTo takes a target and an optional style");
            return None;
        }
        Some(CommandKind::Locomotion {
            target: target?,
            style: style?,
        })
    }

    fn interaction(&mut self, cmd: &BaseCommand, character: &str) -> Option<CommandKind> {
        let target = self.entity(&cmd.args[0], character);
        let Some(module_arg) = cmd.args.get(1) else {
            self.error(
                Code::MissingArg,
                cmd.span,
                "interactWith needs a target and an interaction module",
            );
            return None;
        };
        let module = self.action(module_arg);
        let opts = self.optionals(&cmd.args[2..], false);
        let (target, module, (part, duration, _)) = (target?, module?, opts?);
        if module.kind != ActionKind::InteractionModule {
            self.error(
                Code::NotInteraction,
                module_arg.span,
                format!("'{}' is not an interaction module; use do(...)", module.keyword),
            );
            return None;
        }
        let part = self.check_part(&module, part)?;
        Some(CommandKind::Interaction {
            target,
            duration_s: duration.unwrap_or(module.default_duration_s),
            module,
            part,
        })
    }

    fn overlay(&mut self, cmd: &BaseCommand, base: &CommandKind, character: &str) -> Option<SoloSpec> {
        let spec = self.solo(cmd, character)?;
        if spec.facing_target.is_some() {
            self.error(
                Code::UnexpectedArg,
                cmd.span,
                "an overlay cannot take a facing target",
            );
            return None;
        }
        let part_span = cmd.args[1..]
            .iter()
            .find(|a| a.value.as_phrase().is_some_and(|p| PartSlot::from_keyword(&p).is_some()))
            .map_or(cmd.span, |a| a.span);
        let conflict = match (spec.part, base) {
            (PartSlot::WholeBody, _) => Some("the body channel is taken by the base command"),
            (p, CommandKind::Interaction { part, .. }) if p == *part => {
                Some("the base interaction already uses this limb")
            }
            _ => None,
        };
        if let Some(why) = conflict {
            self.error(
                Code::OverlayChannelConflict,
                part_span,
                format!("overlay '{}' on {}: {why}", spec.action.keyword, spec.part.keyword()),
            );
            return None;
        }
        Some(spec)
    }
}
