//! Turns a [`TaskMatrix`] into a [`Timeline`].
//!
//! Rows run under barrier semantics: row `r` starts when every command of
//! row `r - 1` has finished. Inside a row each character's command starts at
//! the row start and is compiled independently, against character positions
//! as they stood when the row began. Positions carry over between rows.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::config::EngineConfig;
use crate::diag::{Code, Diagnostic, SourceSpan};
use crate::path::{approach_cell_at, find_path, PathError};
use crate::registry::{MotionStyle, RepeatPolicy};
use crate::resolve::{CommandKind, ResolvedCommand, SoloSpec, TaskMatrix};
use crate::scene::{GridPos, Scene};
use crate::timeline::{Channel, EventParams, EventRole, Timeline, TimelineEvent, TrackPoint};

#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub timeline: Timeline,
    pub warnings: Vec<Diagnostic>,
}

struct Scheduler<'a> {
    scene: &'a Scene,
    config: &'a EngineConfig,
    events: Vec<TimelineEvent>,
    warnings: Vec<Diagnostic>,
}

pub fn schedule(matrix: &TaskMatrix, scene: &Scene, config: &EngineConfig) -> Result<Schedule, Vec<Diagnostic>> {
    let mut s = Scheduler {
        scene,
        config,
        events: Vec::new(),
        warnings: Vec::new(),
    };
    let mut positions: BTreeMap<String, GridPos> = scene.characters().clone();
    let mut row_start = 0.0_f64;

    for (i, row) in matrix.rows.iter().enumerate() {
        let row_no = i as u32 + 1;
        let snapshot = positions.clone();
        let mut row_end = row_start;
        for cmd in row {
            let (end, pos) = s
                .command(cmd, row_no, row_start, &snapshot)
                .map_err(|e| alloc::vec![path_diagnostic(e, cmd.span, row_no)])?;
            row_end = row_end.max(end);
            positions.insert(cmd.character.clone(), pos);
        }
        row_start = row_end;
    }

    Ok(Schedule {
        timeline: Timeline::new(s.events),
        warnings: s.warnings,
    })
}

fn path_diagnostic(err: PathError, span: SourceSpan, row: u32) -> Diagnostic {
    let code = match err {
        PathError::NoApproach(_) => Code::NoApproach,
        _ => Code::Unreachable,
    };
    Diagnostic::error(code, span, format!("row {row}: {err}"))
}

impl<'a> Scheduler<'a> {
    fn entity_cell(&self, name: &str, positions: &BTreeMap<String, GridPos>) -> GridPos {
        positions
            .get(name)
            .copied()
            .or_else(|| self.scene.objects().get(name).copied())
            .expect("resolved entity exists")
    }

    /// Emits the events of one command; returns its end time and the
    /// character's cell afterwards.
    fn command(
        &mut self,
        cmd: &ResolvedCommand,
        row: u32,
        start: f64,
        positions: &BTreeMap<String, GridPos>,
    ) -> Result<(f64, GridPos), PathError> {
        let here = positions[&cmd.character];
        let (end, cell) = match &cmd.kind {
            CommandKind::Solo(spec) => {
                let facing = spec
                    .facing_target
                    .as_ref()
                    .map(|t| self.scene.grid().cell_center_m(self.entity_cell(t, positions)));
                let end = self.solo(cmd, spec, row, start, facing);
                (end, here)
            }
            CommandKind::Locomotion { target, style } => {
                let goal = approach_cell_at(self.scene, self.entity_cell(target, positions), here)?;
                let end = self.walk(cmd, row, EventRole::Base, *style, target, here, goal, start)?;
                (end, goal)
            }
            CommandKind::Interaction {
                target,
                module,
                part,
                duration_s,
            } => {
                let target_cell = self.entity_cell(target, positions);
                let (t, cell) = if here.is_neighbor(target_cell) {
                    (start, here)
                } else {
                    let goal = approach_cell_at(self.scene, target_cell, here)?;
                    let t = self.walk(cmd, row, EventRole::Approach, MotionStyle::Walk, target, here, goal, start)?;
                    (t, goal)
                };
                let mut params = EventParams::new(row, EventRole::Base);
                params.part = Some(*part);
                params.target = Some(target.clone());
                params.facing_point = Some(self.scene.grid().cell_center_m(target_cell));
                params.repetitions = Some(module.repetitions_for(*duration_s));
                let end = t + duration_s;
                self.events.push(TimelineEvent {
                    character: cmd.character.clone(),
                    channel: Channel::from(*part),
                    action: module.keyword.clone(),
                    start_s: t,
                    end_s: end,
                    params,
                    track: Vec::new(),
                });
                (end, cell)
            }
        };
        if let Some(overlay) = &cmd.overlay {
            self.overlay(cmd, overlay, row, start, end);
        }
        Ok((end, cell))
    }

    fn solo(&mut self, cmd: &ResolvedCommand, spec: &SoloSpec, row: u32, start: f64, facing: Option<(f64, f64)>) -> f64 {
        let mut params = EventParams::new(row, EventRole::Base);
        params.part = Some(spec.part);
        params.facing_target = spec.facing_target.clone();
        params.facing_point = facing;
        params.repetitions = Some(spec.action.repetitions_for(spec.duration_s));
        let end = start + spec.duration_s;
        self.events.push(TimelineEvent {
            character: cmd.character.clone(),
            channel: Channel::from(spec.part),
            action: spec.action.keyword.clone(),
            start_s: start,
            end_s: end,
            params,
            track: Vec::new(),
        });
        end
    }

    /// Locomotion from `from` to `goal`. A zero-length move emits nothing.
    #[allow(clippy::too_many_arguments)]
    fn walk(
        &mut self,
        cmd: &ResolvedCommand,
        row: u32,
        role: EventRole,
        style: MotionStyle,
        target: &str,
        from: GridPos,
        goal: GridPos,
        start: f64,
    ) -> Result<f64, PathError> {
        let path = find_path(self.scene, from, goal)?;
        if path.waypoints.len() < 2 {
            return Ok(start);
        }
        let grid = self.scene.grid();
        let cell = grid.cell_size_m();
        let speed = self.config.speeds.get(style);
        let end = start + path.length_m / speed;
        let prefix = path.prefix_costs();
        let last = path.waypoints.len() - 1;
        let track = path
            .waypoints
            .iter()
            .zip(&prefix)
            .enumerate()
            .map(|(i, (p, c))| {
                let (x, y) = grid.cell_center_m(*p);
                let t_s = if i == last { end } else { start + c.value() * cell / speed };
                TrackPoint { t_s, x, y }
            })
            .collect();
        let mut params = EventParams::new(row, role);
        params.style = Some(style);
        params.target = Some(target.to_string());
        self.events.push(TimelineEvent {
            character: cmd.character.clone(),
            channel: Channel::Body,
            action: style.keyword().to_string(),
            start_s: start,
            end_s: end,
            params,
            track,
        });
        Ok(end)
    }

    /// Overlays start with their base command and never outlast it.
    fn overlay(&mut self, cmd: &ResolvedCommand, spec: &SoloSpec, row: u32, start: f64, base_end: f64) {
        if base_end <= start {
            self.warnings.push(Diagnostic::warning(
                Code::OverlayDropped,
                spec.span,
                format!(
                    "row {row}: '{}' has nothing to overlay; the base command takes no time",
                    spec.action.keyword
                ),
            ));
            return;
        }
        let wanted_end = if spec.explicit_duration {
            Some(start + spec.duration_s)
        } else {
            match spec.action.repeat_policy {
                RepeatPolicy::LoopUntilDuration => None,
                RepeatPolicy::Once => Some(start + spec.duration_s),
            }
        };
        let end = match wanted_end {
            Some(e) if e <= base_end => e,
            Some(_) => {
                if spec.explicit_duration {
                    self.warnings.push(Diagnostic::warning(
                        Code::OverlayClipped,
                        spec.span,
                        format!(
                            "row {row}: overlay '{}' asks for {} s but its base command ends sooner; clipped",
                            spec.action.keyword, spec.duration_s
                        ),
                    ));
                }
                base_end
            }
            None => base_end,
        };
        let mut params = EventParams::new(row, EventRole::Overlay);
        params.part = Some(spec.part);
        params.repetitions = Some(spec.action.repetitions_for(end - start));
        self.events.push(TimelineEvent {
            character: cmd.character.clone(),
            channel: Channel::from(spec.part),
            action: spec.action.keyword.clone(),
            start_s: start,
            end_s: end,
            params,
            track: Vec::new(),
        });
    }
}
