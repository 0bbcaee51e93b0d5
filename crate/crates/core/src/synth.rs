//! Samples a timeline into per-frame character state: position, heading
//! and which action each channel is playing.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::config::EngineConfig;
use crate::scene::Scene;
use crate::timeline::{Channel, Timeline, TimelineEvent, TrackPoint};

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterFrame {
    /// Meters.
    pub pos: (f64, f64),
    /// Unit heading.
    pub facing: (f64, f64),
    /// Channels currently playing; absent channels are idle.
    pub active: BTreeMap<Channel, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub t_s: f64,
    pub characters: BTreeMap<String, CharacterFrame>,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SampleError {
    #[error("time {t_s} s is outside the timeline [0, {total_s}] s")]
    OutOfRange { t_s: f64, total_s: f64 },
}

/// Heading every character starts with.
pub const INITIAL_FACING: (f64, f64) = (1.0, 0.0);

fn normalize(dx: f64, dy: f64) -> Option<(f64, f64)> {
    let n = libm::sqrt(dx * dx + dy * dy);
    (n > 1e-12).then(|| (dx / n, dy / n))
}

/// Segment index of `track` in use at `t` (clamped to the ends).
fn segment_at(track: &[TrackPoint], t: f64) -> usize {
    let last = track.len().saturating_sub(2);
    (0..=last).find(|&i| t < track[i + 1].t_s).unwrap_or(last)
}

fn interpolate(track: &[TrackPoint], t: f64) -> (f64, f64) {
    if track.len() == 1 {
        return (track[0].x, track[0].y);
    }
    let i = segment_at(track, t);
    let (a, b) = (track[i], track[i + 1]);
    let alpha = ((t - a.t_s) / (b.t_s - a.t_s)).clamp(0.0, 1.0);
    (a.x + alpha * (b.x - a.x), a.y + alpha * (b.y - a.y))
}

fn heading(track: &[TrackPoint], t: f64) -> Option<(f64, f64)> {
    if track.len() < 2 {
        return None;
    }
    let i = segment_at(track, t);
    normalize(track[i + 1].x - track[i].x, track[i + 1].y - track[i].y)
}

struct CharacterTrack<'a> {
    home: (f64, f64),
    events: Vec<&'a TimelineEvent>,
}

impl<'a> CharacterTrack<'a> {
    fn position(&self, t: f64) -> (f64, f64) {
        self.events
            .iter()
            .rfind(|e| !e.track.is_empty() && e.start_s <= t)
            .map_or(self.home, |e| {
                if t <= e.end_s {
                    interpolate(&e.track, t)
                } else {
                    let p = e.track[e.track.len() - 1];
                    (p.x, p.y)
                }
            })
    }

    fn facing(&self, t: f64) -> (f64, f64) {
        let mut facing = INITIAL_FACING;
        for e in self.events.iter().filter(|e| e.start_s <= t) {
            if !e.track.is_empty() {
                if let Some(h) = heading(&e.track, t.min(e.end_s)) {
                    facing = h;
                }
            } else if let Some((fx, fy)) = e.params.facing_point {
                let (px, py) = self.position(e.start_s);
                if let Some(h) = normalize(fx - px, fy - py) {
                    facing = h;
                }
            }
        }
        facing
    }
}

/// State of every scene character at `t_s`.
pub fn sample(timeline: &Timeline, scene: &Scene, t_s: f64) -> Result<Frame, SampleError> {
    if !(t_s >= 0.0 && t_s <= timeline.total_s) {
        return Err(SampleError::OutOfRange {
            t_s,
            total_s: timeline.total_s,
        });
    }
    let grid = scene.grid();
    let characters = scene
        .characters()
        .iter()
        .map(|(name, cell)| {
            let track = CharacterTrack {
                home: grid.cell_center_m(*cell),
                events: timeline.events_for(name).collect(),
            };
            let active = track
                .events
                .iter()
                .filter(|e| e.is_active_at(t_s))
                .map(|e| (e.channel, e.action.clone()))
                .collect();
            let frame = CharacterFrame {
                pos: track.position(t_s),
                facing: track.facing(t_s),
                active,
            };
            (name.clone(), frame)
        })
        .collect();
    Ok(Frame { t_s, characters })
}

/// Frame times `0, 1/fps, 2/fps, ...` plus a final frame at exactly
/// `total_s` when it does not fall on the grid.
pub fn frame_times(total_s: f64, fps: f64) -> Vec<f64> {
    let product = total_s * fps;
    let whole = libm::floor(product);
    let n = whole as u64;
    let mut times: Vec<f64> = (0..n).map(|k| k as f64 / fps).collect();
    if product == whole {
        times.push(total_s);
    } else {
        times.push((n as f64 / fps).min(total_s));
        times.push(total_s);
    }
    times
}

pub fn render_frames(timeline: &Timeline, scene: &Scene, config: &EngineConfig) -> Vec<Frame> {
    frame_times(timeline.total_s, config.fps)
        .into_iter()
        .map(|t| sample(timeline, scene, t).expect("frame times lie inside the timeline"))
        .collect()
}
