//! JSON input documents: registry, scene and speed overrides.

use std::fmt;
use std::path::{Path, PathBuf};

use chase_core::{
    ActionDef, ActionKind, Grid, GridPos, PartSlot, Registry, RepeatPolicy, Scene, StyleSpeeds,
};
use serde::Deserialize;

const SEED_REGISTRY: &str = include_str!("seed_registry.json");

/// A problem with an input document as a whole (no script position).
#[derive(Debug, Clone, PartialEq)]
pub struct DocError {
    pub file: PathBuf,
    pub code: &'static str,
    pub message: String,
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: error {}: {}", self.file.display(), self.code, self.message)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegistryDoc {
    actions: Vec<ActionDoc>,
    styles: StylesDoc,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionDoc {
    keyword: String,
    kind: String,
    allowed_parts: Vec<String>,
    default_part: String,
    default_duration_s: f64,
    repeat_policy: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StylesDoc {
    walk: f64,
    run: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneDoc {
    grid: GridDoc,
    #[serde(default)]
    characters: Vec<EntityDoc>,
    #[serde(default)]
    objects: Vec<EntityDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GridDoc {
    width: u32,
    height: u32,
    #[serde(default = "default_cell_size")]
    cell_size_m: f64,
    #[serde(default)]
    obstacles: Vec<[u32; 2]>,
}

fn default_cell_size() -> f64 {
    chase_core::scene::DEFAULT_CELL_SIZE_M
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntityDoc {
    name: String,
    pos: [u32; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    #[serde(default)]
    styles: Option<PartialStyles>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialStyles {
    walk: Option<f64>,
    run: Option<f64>,
}

fn malformed(file: &Path, code: &'static str, message: impl fmt::Display) -> DocError {
    DocError {
        file: file.to_path_buf(),
        code,
        message: message.to_string(),
    }
}

fn part(file: &Path, keyword: &str, word: &str) -> Result<PartSlot, DocError> {
    PartSlot::from_keyword(word).ok_or_else(|| {
        malformed(
            file,
            "MALFORMED-REGISTRY",
            format!("action '{keyword}': unknown body part '{word}'"),
        )
    })
}

/// Parses a registry document. `file` is only used in error reports.
pub fn parse_registry(text: &str, file: &Path) -> Result<Registry, DocError> {
    let doc: RegistryDoc =
        serde_json::from_str(text).map_err(|e| malformed(file, "MALFORMED-REGISTRY", e))?;
    let mut actions = Vec::with_capacity(doc.actions.len());
    for a in doc.actions {
        let bad = |what: &str, value: &str| {
            malformed(
                file,
                "MALFORMED-REGISTRY",
                format!("action '{}': unknown {what} '{value}'", a.keyword),
            )
        };
        let kind = ActionKind::parse(&a.kind).ok_or_else(|| bad("kind", &a.kind))?;
        let repeat_policy = RepeatPolicy::parse(&a.repeat_policy)
            .ok_or_else(|| bad("repeat_policy", &a.repeat_policy))?;
        let allowed_parts = a
            .allowed_parts
            .iter()
            .map(|p| part(file, &a.keyword, p))
            .collect::<Result<Vec<_>, _>>()?;
        let default_part = part(file, &a.keyword, &a.default_part)?;
        actions.push(ActionDef {
            keyword: a.keyword,
            kind,
            allowed_parts,
            default_part,
            default_duration_s: a.default_duration_s,
            repeat_policy,
        });
    }
    let speeds = StyleSpeeds {
        walk: doc.styles.walk,
        run: doc.styles.run,
    };
    Registry::new(actions, speeds).map_err(|e| malformed(file, e.code(), e))
}

/// The registry shipped inside the binary.
pub fn embedded_registry() -> Registry {
    parse_registry(SEED_REGISTRY, Path::new("<embedded registry>"))
        .expect("embedded registry is valid")
}

pub fn parse_scene(text: &str, file: &Path) -> Result<Scene, DocError> {
    let doc: SceneDoc =
        serde_json::from_str(text).map_err(|e| malformed(file, "MALFORMED-SCENE", e))?;
    let fail = |e: chase_core::SceneError| malformed(file, e.code(), e);
    let obstacles = doc.grid.obstacles.iter().map(|&[x, y]| GridPos::new(x, y));
    let grid = Grid::new(doc.grid.width, doc.grid.height, doc.grid.cell_size_m, obstacles)
        .map_err(fail)?;
    let entities = |list: Vec<EntityDoc>| {
        list.into_iter()
            .map(|e| (e.name, GridPos::new(e.pos[0], e.pos[1])))
            .collect::<Vec<_>>()
    };
    Scene::new(grid, entities(doc.characters), entities(doc.objects)).map_err(fail)
}

/// Applies a config document's speed overrides on top of `speeds`.
pub fn apply_config(text: &str, file: &Path, speeds: &mut StyleSpeeds) -> Result<(), DocError> {
    let doc: ConfigDoc =
        serde_json::from_str(text).map_err(|e| malformed(file, "MALFORMED-CONFIG", e))?;
    if let Some(styles) = doc.styles {
        if let Some(walk) = styles.walk {
            speeds.walk = walk;
        }
        if let Some(run) = styles.run {
            speeds.run = run;
        }
    }
    speeds
        .validate()
        .map_err(|e| malformed(file, e.code(), e))
}
