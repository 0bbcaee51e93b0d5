use thiserror::Error;

use crate::registry::{Registry, StyleSpeeds};

pub const DEFAULT_FPS: f64 = 30.0;

/// Engine-wide settings: locomotion speeds and playback rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    pub speeds: StyleSpeeds,
    pub fps: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("fps must be a positive number, got {0}")]
    BadFps(f64),
    #[error("speed for style '{0}' must be a positive number of meters per second")]
    BadSpeed(&'static str),
}

impl EngineConfig {
    pub fn new(speeds: StyleSpeeds, fps: f64) -> Result<EngineConfig, ConfigError> {
        if !(fps.is_finite() && fps > 0.0) {
            return Err(ConfigError::BadFps(fps));
        }
        speeds.validate().map_err(|e| match e {
            crate::registry::RegistryError::BadSpeed(s) => ConfigError::BadSpeed(s),
            _ => unreachable!("speed validation only reports speeds"),
        })?;
        Ok(EngineConfig { speeds, fps })
    }

    /// Speeds from the registry, default frame rate.
    pub fn from_registry(registry: &Registry) -> EngineConfig {
        EngineConfig {
            speeds: *registry.speeds(),
            fps: DEFAULT_FPS,
        }
    }
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            speeds: StyleSpeeds::default(),
            fps: DEFAULT_FPS,
        }
    }
}
