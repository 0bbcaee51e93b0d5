//! Named characters and objects placed on an obstacle grid.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use thiserror::Error;

/// A grid cell. Ordered by `y` first, then `x`, which is the tie-break order
/// used throughout navigation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridPos {
    pub x: u32,
    pub y: u32,
}

impl GridPos {
    pub const fn new(x: u32, y: u32) -> Self {
        GridPos { x, y }
    }

    /// True for the eight surrounding cells (not the cell itself).
    pub fn is_neighbor(self, other: GridPos) -> bool {
        let dx = self.x.abs_diff(other.x);
        let dy = self.y.abs_diff(other.y);
        dx <= 1 && dy <= 1 && (dx, dy) != (0, 0)
    }
}

impl Ord for GridPos {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for GridPos {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GridPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    width: u32,
    height: u32,
    cell_size_m: f64,
    obstacles: Vec<bool>,
}

pub const DEFAULT_CELL_SIZE_M: f64 = 0.5;

impl Grid {
    pub fn new(
        width: u32,
        height: u32,
        cell_size_m: f64,
        obstacles: impl IntoIterator<Item = GridPos>,
    ) -> Result<Grid, SceneError> {
        if width == 0 || height == 0 {
            return Err(SceneError::EmptyGrid);
        }
        if !(cell_size_m.is_finite() && cell_size_m > 0.0) {
            return Err(SceneError::BadCellSize);
        }
        let mut grid = Grid {
            width,
            height,
            cell_size_m,
            obstacles: alloc::vec![false; width as usize * height as usize],
        };
        for pos in obstacles {
            if !grid.contains(pos) {
                return Err(SceneError::OutOfBounds {
                    name: "obstacle".to_string(),
                    pos,
                });
            }
            let i = grid.index(pos);
            grid.obstacles[i] = true;
        }
        Ok(grid)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn cell_size_m(&self) -> f64 {
        self.cell_size_m
    }

    pub fn contains(&self, pos: GridPos) -> bool {
        pos.x < self.width && pos.y < self.height
    }

    pub(crate) fn index(&self, pos: GridPos) -> usize {
        pos.y as usize * self.width as usize + pos.x as usize
    }

    pub fn is_obstacle(&self, pos: GridPos) -> bool {
        self.contains(pos) && self.obstacles[self.index(pos)]
    }

    /// Obstacle cells in (y, x) order.
    pub fn obstacles(&self) -> impl Iterator<Item = GridPos> + '_ {
        (0..self.height)
            .flat_map(move |y| (0..self.width).map(move |x| GridPos::new(x, y)))
            .filter(move |p| self.is_obstacle(*p))
    }

    /// Center of a cell in meters.
    pub fn cell_center_m(&self, pos: GridPos) -> (f64, f64) {
        (
            (pos.x as f64 + 0.5) * self.cell_size_m,
            (pos.y as f64 + 0.5) * self.cell_size_m,
        )
    }

    /// In-bounds neighbors in (y, x) order.
    pub fn neighbors(&self, pos: GridPos) -> impl Iterator<Item = GridPos> + '_ {
        const DELTAS: [(i64, i64); 8] = [
            (-1, -1),
            (0, -1),
            (1, -1),
            (-1, 0),
            (1, 0),
            (-1, 1),
            (0, 1),
            (1, 1),
        ];
        DELTAS.iter().filter_map(move |&(dx, dy)| {
            let x = pos.x as i64 + dx;
            let y = pos.y as i64 + dy;
            let p = GridPos::new(u32::try_from(x).ok()?, u32::try_from(y).ok()?);
            self.contains(p).then_some(p)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntityKind {
    Character,
    Object,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    grid: Grid,
    characters: BTreeMap<String, GridPos>,
    objects: BTreeMap<String, GridPos>,
    /// Obstacles plus object cells.
    blocked: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SceneError {
    #[error("malformed scene document: {0}")]
    Malformed(String),
    #[error("grid must be at least 1x1")]
    EmptyGrid,
    #[error("cell_size_m must be a positive number")]
    BadCellSize,
    #[error("name '{0}' is used more than once")]
    DuplicateName(String),
    #[error("'{name}' at {pos} is outside the grid")]
    OutOfBounds { name: String, pos: GridPos },
    #[error("'{name}' starts on obstacle cell {pos}")]
    EntityOnObstacle { name: String, pos: GridPos },
    #[error("'{first}' and '{second}' share cell {pos}")]
    EntityOverlap {
        first: String,
        second: String,
        pos: GridPos,
    },
}

impl SceneError {
    pub fn code(&self) -> &'static str {
        match self {
            SceneError::Malformed(_) => "MALFORMED-SCENE",
            SceneError::EmptyGrid => "EMPTY-GRID",
            SceneError::BadCellSize => "BAD-CELL-SIZE",
            SceneError::DuplicateName(_) => "DUPLICATE-NAME",
            SceneError::OutOfBounds { .. } => "OUT-OF-BOUNDS",
            SceneError::EntityOnObstacle { .. } => "ENTITY-ON-OBSTACLE",
            SceneError::EntityOverlap { .. } => "ENTITY-OVERLAP",
        }
    }
}

impl Scene {
    /// Validates names and placements. Names must be unique across
    /// characters and objects, every entity must sit on its own free
    /// in-bounds cell.
    pub fn new(
        grid: Grid,
        characters: impl IntoIterator<Item = (String, GridPos)>,
        objects: impl IntoIterator<Item = (String, GridPos)>,
    ) -> Result<Scene, SceneError> {
        let mut chars = BTreeMap::new();
        let mut objs = BTreeMap::new();
        let mut occupied: BTreeMap<GridPos, String> = BTreeMap::new();
        let entries = characters
            .into_iter()
            .map(|e| (e, EntityKind::Character))
            .chain(objects.into_iter().map(|e| (e, EntityKind::Object)));
        for ((name, pos), kind) in entries {
            if chars.contains_key(&name) || objs.contains_key(&name) {
                return Err(SceneError::DuplicateName(name));
            }
            if !grid.contains(pos) {
                return Err(SceneError::OutOfBounds { name, pos });
            }
            if grid.is_obstacle(pos) {
                return Err(SceneError::EntityOnObstacle { name, pos });
            }
            if let Some(first) = occupied.get(&pos) {
                return Err(SceneError::EntityOverlap {
                    first: first.clone(),
                    second: name,
                    pos,
                });
            }
            occupied.insert(pos, name.clone());
            match kind {
                EntityKind::Character => chars.insert(name, pos),
                EntityKind::Object => objs.insert(name, pos),
            };
        }
        let mut blocked = grid.obstacles.clone();
        for pos in objs.values() {
            blocked[grid.index(*pos)] = true;
        }
        Ok(Scene {
            grid,
            characters: chars,
            objects: objs,
            blocked,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Characters in name order.
    pub fn characters(&self) -> &BTreeMap<String, GridPos> {
        &self.characters
    }

    pub fn objects(&self) -> &BTreeMap<String, GridPos> {
        &self.objects
    }

    pub fn entity(&self, name: &str) -> Option<(EntityKind, GridPos)> {
        if let Some(pos) = self.characters.get(name) {
            Some((EntityKind::Character, *pos))
        } else {
            self.objects.get(name).map(|pos| (EntityKind::Object, *pos))
        }
    }

    pub fn entity_count(&self) -> usize {
        self.characters.len() + self.objects.len()
    }

    /// Obstacles and objects are impassable; characters are not.
    pub fn is_blocked(&self, pos: GridPos) -> bool {
        !self.grid.contains(pos) || self.blocked[self.grid.index(pos)]
    }
}
