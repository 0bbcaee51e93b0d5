//! Scheduled output: timed events on per-character body-part channels.

use alloc::string::String;
use alloc::vec::Vec;

use crate::registry::{BodyPart, MotionStyle, PartSlot};

/// Animation lane of one character. `Body` carries locomotion and
/// whole-body actions; limb channels carry everything layered on top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Channel {
    Body,
    HandR,
    HandL,
    FootR,
    FootL,
}

impl Channel {
    pub const ALL: [Channel; 5] = [
        Channel::Body,
        Channel::HandR,
        Channel::HandL,
        Channel::FootR,
        Channel::FootL,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Channel::Body => "body",
            Channel::HandR => "handR",
            Channel::HandL => "handL",
            Channel::FootR => "footR",
            Channel::FootL => "footL",
        }
    }
}

impl From<PartSlot> for Channel {
    fn from(part: PartSlot) -> Channel {
        match part {
            PartSlot::WholeBody => Channel::Body,
            PartSlot::Limb(BodyPart::HandR) => Channel::HandR,
            PartSlot::Limb(BodyPart::HandL) => Channel::HandL,
            PartSlot::Limb(BodyPart::FootR) => Channel::FootR,
            PartSlot::Limb(BodyPart::FootL) => Channel::FootL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventRole {
    /// The command itself.
    Base,
    /// Walk inserted before an interaction with a distant target.
    Approach,
    /// Concurrent `.do(...)` layered on a base command.
    Overlay,
}

impl EventRole {
    pub fn as_str(self) -> &'static str {
        match self {
            EventRole::Base => "base",
            EventRole::Approach => "approach",
            EventRole::Overlay => "overlay",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackPoint {
    pub t_s: f64,
    /// Meters.
    pub x: f64,
    pub y: f64,
}

/// Resolved parameters recorded on an event.
#[derive(Debug, Clone, PartialEq)]
pub struct EventParams {
    /// 1-based task row that produced the event.
    pub row: u32,
    pub role: EventRole,
    pub part: Option<PartSlot>,
    pub style: Option<MotionStyle>,
    pub target: Option<String>,
    pub facing_target: Option<String>,
    /// Point in meters the character turns toward when the event starts.
    pub facing_point: Option<(f64, f64)>,
    pub repetitions: Option<u32>,
}

impl EventParams {
    pub fn new(row: u32, role: EventRole) -> Self {
        EventParams {
            row,
            role,
            part: None,
            style: None,
            target: None,
            facing_target: None,
            facing_point: None,
            repetitions: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimelineEvent {
    pub character: String,
    pub channel: Channel,
    /// Action keyword, or the motion style for locomotion.
    pub action: String,
    pub start_s: f64,
    pub end_s: f64,
    pub params: EventParams,
    /// Timed waypoints for locomotion, empty otherwise.
    pub track: Vec<TrackPoint>,
}

impl TimelineEvent {
    pub fn duration_s(&self) -> f64 {
        self.end_s - self.start_s
    }

    /// Half-open: an event is active on `[start, end)`.
    pub fn is_active_at(&self, t_s: f64) -> bool {
        self.start_s <= t_s && t_s < self.end_s
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Timeline {
    pub events: Vec<TimelineEvent>,
    pub total_s: f64,
}

impl Timeline {
    /// Sorts events by (start, character, channel) and sets the total.
    pub fn new(mut events: Vec<TimelineEvent>) -> Timeline {
        events.sort_by(|a, b| {
            a.start_s
                .total_cmp(&b.start_s)
                .then_with(|| a.character.cmp(&b.character))
                .then_with(|| a.channel.cmp(&b.channel))
        });
        let total_s = events.iter().map(|e| e.end_s).fold(0.0, f64::max);
        Timeline { events, total_s }
    }

    pub fn events_for<'a>(&'a self, character: &'a str) -> impl Iterator<Item = &'a TimelineEvent> + 'a {
        self.events.iter().filter(move |e| e.character == character)
    }
}
