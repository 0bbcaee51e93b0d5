//! Catalogue of performable actions, body parts and locomotion styles.
//!
//! The registry is data: every action is an [`ActionDef`] carrying timing and
//! channel metadata, looked up case-insensitively by keyword. The built-in
//! [`Registry::seed`] covers the keywords the language ships with; callers can
//! load a larger catalogue through [`Registry::new`].

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BodyPart {
    HandR,
    HandL,
    FootR,
    FootL,
}

impl BodyPart {
    pub const ALL: [BodyPart; 4] = [BodyPart::HandR, BodyPart::HandL, BodyPart::FootR, BodyPart::FootL];

    pub fn keyword(self) -> &'static str {
        match self {
            BodyPart::HandR => "handR",
            BodyPart::HandL => "handL",
            BodyPart::FootR => "footR",
            BodyPart::FootL => "footL",
        }
    }

    pub fn from_keyword(word: &str) -> Option<BodyPart> {
        BodyPart::ALL
            .into_iter()
            .find(|p| p.keyword().eq_ignore_ascii_case(word))
    }
}

/// Where an action plays: one limb, or the whole body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PartSlot {
    Limb(BodyPart),
    WholeBody,
}

impl PartSlot {
    pub fn keyword(self) -> &'static str {
        match self {
            PartSlot::Limb(p) => p.keyword(),
            PartSlot::WholeBody => "wholeBody",
        }
    }

    pub fn from_keyword(word: &str) -> Option<PartSlot> {
        if word.eq_ignore_ascii_case("wholeBody") {
            Some(PartSlot::WholeBody)
        } else {
            BodyPart::from_keyword(word).map(PartSlot::Limb)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionKind {
    SoloAction,
    InteractionModule,
}

impl ActionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ActionKind::SoloAction => "solo-action",
            ActionKind::InteractionModule => "interaction-module",
        }
    }

    pub fn parse(s: &str) -> Option<ActionKind> {
        match s {
            "solo-action" => Some(ActionKind::SoloAction),
            "interaction-module" => Some(ActionKind::InteractionModule),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepeatPolicy {
    /// One repetition, however long the event.
    Once,
    /// Repeat the clip until the requested duration is filled.
    LoopUntilDuration,
}

impl RepeatPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            RepeatPolicy::Once => "once",
            RepeatPolicy::LoopUntilDuration => "loop-until-duration",
        }
    }

    pub fn parse(s: &str) -> Option<RepeatPolicy> {
        match s {
            "once" => Some(RepeatPolicy::Once),
            "loop-until-duration" => Some(RepeatPolicy::LoopUntilDuration),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MotionStyle {
    Walk,
    Run,
}

impl MotionStyle {
    pub const ALL: [MotionStyle; 2] = [MotionStyle::Walk, MotionStyle::Run];

    pub fn keyword(self) -> &'static str {
        match self {
            MotionStyle::Walk => "walk",
            MotionStyle::Run => "run",
        }
    }

    pub fn from_keyword(word: &str) -> Option<MotionStyle> {
        MotionStyle::ALL
            .into_iter()
            .find(|s| s.keyword().eq_ignore_ascii_case(word))
    }
}

/// Locomotion speeds in meters per second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StyleSpeeds {
    pub walk: f64,
    pub run: f64,
}

impl StyleSpeeds {
    pub fn get(&self, style: MotionStyle) -> f64 {
        match style {
            MotionStyle::Walk => self.walk,
            MotionStyle::Run => self.run,
        }
    }

    pub fn set(&mut self, style: MotionStyle, speed: f64) {
        match style {
            MotionStyle::Walk => self.walk = speed,
            MotionStyle::Run => self.run = speed,
        }
    }

    pub fn max(&self) -> f64 {
        self.walk.max(self.run)
    }

    pub fn validate(&self) -> Result<(), RegistryError> {
        for style in MotionStyle::ALL {
            let v = self.get(style);
            if !(v.is_finite() && v > 0.0) {
                return Err(RegistryError::BadSpeed(style.keyword()));
            }
        }
        Ok(())
    }
}

impl Default for StyleSpeeds {
    fn default() -> Self {
        StyleSpeeds { walk: 1.4, run: 3.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ActionDef {
    pub keyword: String,
    pub kind: ActionKind,
    pub allowed_parts: Vec<PartSlot>,
    pub default_part: PartSlot,
    /// Default event length; also the cycle length for looping actions.
    pub default_duration_s: f64,
    pub repeat_policy: RepeatPolicy,
}

/// Concrete timing for one performance of an action.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Behavior {
    pub duration_s: f64,
    pub part: PartSlot,
    pub repetitions: u32,
}

impl ActionDef {
    pub fn allows(&self, part: PartSlot) -> bool {
        self.allowed_parts.contains(&part)
    }

    /// Timing when no optional parameters are given.
    pub fn default_behavior(&self) -> Behavior {
        self.behavior(None)
    }

    /// Timing for an event lasting `duration_s` (or the default length).
    pub fn behavior(&self, duration_s: Option<f64>) -> Behavior {
        let duration_s = duration_s.unwrap_or(self.default_duration_s);
        Behavior {
            duration_s,
            part: self.default_part,
            repetitions: self.repetitions_for(duration_s),
        }
    }

    /// Number of clip repetitions that fit an event of `duration_s`.
    pub fn repetitions_for(&self, duration_s: f64) -> u32 {
        match self.repeat_policy {
            RepeatPolicy::Once => 1,
            RepeatPolicy::LoopUntilDuration => {
                let cycles = libm::ceil(duration_s / self.default_duration_s);
                if cycles < 1.0 {
                    1
                } else {
                    cycles as u32
                }
            }
        }
    }

    fn validate(&self) -> Result<(), RegistryError> {
        if self.keyword.trim().is_empty() {
            return Err(RegistryError::EmptyKeyword);
        }
        if self.allowed_parts.is_empty() {
            return Err(RegistryError::NoParts(self.keyword.clone()));
        }
        if !self.allows(self.default_part) {
            return Err(RegistryError::DefaultPartNotAllowed(self.keyword.clone()));
        }
        if !(self.default_duration_s.is_finite() && self.default_duration_s > 0.0) {
            return Err(RegistryError::BadDuration(self.keyword.clone()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("action keyword is empty")]
    EmptyKeyword,
    #[error("action '{0}' is defined more than once")]
    DuplicateKeyword(String),
    #[error("action '{0}' allows no body parts")]
    NoParts(String),
    #[error("default part of action '{0}' is not among its allowed parts")]
    DefaultPartNotAllowed(String),
    #[error("default duration of action '{0}' must be a positive number of seconds")]
    BadDuration(String),
    #[error("speed for style '{0}' must be a positive number of meters per second")]
    BadSpeed(&'static str),
    #[error("registry is missing the core action '{0}'")]
    MissingCoreAction(&'static str),
}

impl RegistryError {
    pub fn code(&self) -> &'static str {
        match self {
            RegistryError::EmptyKeyword => "EMPTY-KEYWORD",
            RegistryError::DuplicateKeyword(_) => "DUPLICATE-KEYWORD",
            RegistryError::NoParts(_) => "NO-PARTS",
            RegistryError::DefaultPartNotAllowed(_) => "DEFAULT-PART-NOT-ALLOWED",
            RegistryError::BadDuration(_) => "BAD-DURATION",
            RegistryError::BadSpeed(_) => "BAD-SPEED",
            RegistryError::MissingCoreAction(_) => "MISSING-CORE-ACTION",
        }
    }
}

/// Failed [`Registry::lookup`]: the closest known keyword within edit
/// distance 2, if any, is offered as a hint.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown action '{keyword}'")]
pub struct UnknownAction {
    pub keyword: String,
    pub hint: Option<String>,
}

pub const CORE_ACTIONS: [&str; 5] = ["wave hand", "jump", "kick", "punch", "knock"];

#[derive(Debug, Clone, PartialEq)]
pub struct Registry {
    actions: BTreeMap<String, ActionDef>,
    speeds: StyleSpeeds,
}

/// Lowercase, whitespace-collapsed form used as the lookup key.
pub fn normalize_keyword(keyword: &str) -> String {
    let lowered = keyword.to_lowercase();
    let words: Vec<&str> = lowered.split_whitespace().collect();
    words.join(" ")
}

impl Registry {
    pub fn new(actions: Vec<ActionDef>, speeds: StyleSpeeds) -> Result<Registry, RegistryError> {
        speeds.validate()?;
        let mut map = BTreeMap::new();
        for def in actions {
            def.validate()?;
            let key = normalize_keyword(&def.keyword);
            if map.contains_key(&key) {
                return Err(RegistryError::DuplicateKeyword(def.keyword));
            }
            map.insert(key, def);
        }
        for core in CORE_ACTIONS {
            if !map.contains_key(core) {
                return Err(RegistryError::MissingCoreAction(core));
            }
        }
        Ok(Registry {
            actions: map,
            speeds,
        })
    }

    /// The built-in catalogue. Durations are engine defaults.
    pub fn seed() -> Registry {
        use BodyPart::*;
        use PartSlot::{Limb, WholeBody};
        let def = |keyword: &str,
                   kind,
                   allowed_parts: &[PartSlot],
                   default_part,
                   default_duration_s,
                   repeat_policy| ActionDef {
            keyword: keyword.to_string(),
            kind,
            allowed_parts: allowed_parts.to_vec(),
            default_part,
            default_duration_s,
            repeat_policy,
        };
        let hands = [Limb(HandR), Limb(HandL)];
        let feet = [Limb(FootR), Limb(FootL)];
        let actions = alloc::vec![
            def("wave hand", ActionKind::SoloAction, &hands, Limb(HandR), 2.0, RepeatPolicy::LoopUntilDuration),
            def("jump", ActionKind::SoloAction, &[WholeBody], WholeBody, 1.0, RepeatPolicy::Once),
            def("kick", ActionKind::InteractionModule, &feet, Limb(FootR), 1.0, RepeatPolicy::Once),
            def("punch", ActionKind::InteractionModule, &hands, Limb(HandR), 1.0, RepeatPolicy::Once),
            def("knock", ActionKind::InteractionModule, &hands, Limb(HandR), 1.5, RepeatPolicy::LoopUntilDuration),
        ];
        Registry::new(actions, StyleSpeeds::default()).expect("seed registry is valid")
    }

    pub fn speeds(&self) -> &StyleSpeeds {
        &self.speeds
    }

    /// Actions in keyword order.
    pub fn actions(&self) -> impl Iterator<Item = &ActionDef> {
        self.actions.values()
    }

    pub fn lookup(&self, keyword: &str) -> Result<&ActionDef, UnknownAction> {
        let key = normalize_keyword(keyword);
        if let Some(def) = self.actions.get(&key) {
            return Ok(def);
        }
        let hint = self
            .actions
            .iter()
            .map(|(k, def)| (edit_distance(&key, k), k, def))
            .filter(|(d, _, _)| *d <= 2)
            .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)))
            .map(|(_, _, def)| def.keyword.clone());
        Err(UnknownAction {
            keyword: keyword.to_string(),
            hint,
        })
    }
}

impl Default for Registry {
    fn default() -> Self {
        Registry::seed()
    }
}

/// Levenshtein distance over chars.
pub fn edit_distance(a: &str, b: &str) -> usize {
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = alloc::vec![0; b.len() + 1];
    for (i, ca) in a.chars().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let subst = prev[j] + usize::from(ca != *cb);
            cur[j + 1] = subst.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}
