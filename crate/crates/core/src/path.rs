//! Grid navigation: A* over 8-connected cells with octile costs.
//!
//! Straight steps cost 1, diagonal steps cost √2, and a diagonal step is only
//! allowed when both orthogonal cells it passes are free (no corner cutting).
//! Costs are kept as exact `(straight, diagonal)` step counts so that two
//! searches agree bit-for-bit on optimal cost.

use alloc::collections::BinaryHeap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};
use core::f64::consts::SQRT_2;
use core::ops::Add;

use thiserror::Error;

use crate::scene::{GridPos, Scene};

/// Exact octile cost `straight + diagonal·√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OctileCost {
    pub straight: u32,
    pub diagonal: u32,
}

impl OctileCost {
    pub const ZERO: OctileCost = OctileCost {
        straight: 0,
        diagonal: 0,
    };
    pub const STRAIGHT: OctileCost = OctileCost {
        straight: 1,
        diagonal: 0,
    };
    pub const DIAGONAL: OctileCost = OctileCost {
        straight: 0,
        diagonal: 1,
    };

    /// Admissible, consistent distance estimate between two cells.
    pub fn heuristic(a: GridPos, b: GridPos) -> OctileCost {
        let dx = a.x.abs_diff(b.x);
        let dy = a.y.abs_diff(b.y);
        let diagonal = dx.min(dy);
        OctileCost {
            straight: dx.max(dy) - diagonal,
            diagonal,
        }
    }

    /// Cost in cells.
    pub fn value(self) -> f64 {
        self.straight as f64 + self.diagonal as f64 * SQRT_2
    }
}

impl Add for OctileCost {
    type Output = OctileCost;

    fn add(self, rhs: OctileCost) -> OctileCost {
        OctileCost {
            straight: self.straight + rhs.straight,
            diagonal: self.diagonal + rhs.diagonal,
        }
    }
}

impl Ord for OctileCost {
    fn cmp(&self, other: &Self) -> Ordering {
        // a1 + b1√2 vs a2 + b2√2  <=>  (a1 - a2) vs (b2 - b1)√2.
        // t ↦ t·|t| is monotone, so compare da·|da| with 2·db·|db|.
        let da = self.straight as i128 - other.straight as i128;
        let db = other.diagonal as i128 - self.diagonal as i128;
        (da * da.abs()).cmp(&(2 * db * db.abs()))
    }
}

impl PartialOrd for OctileCost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    pub waypoints: Vec<GridPos>,
    pub cost: OctileCost,
    pub length_m: f64,
}

impl Path {
    /// Exact cost from the first waypoint to each waypoint.
    pub fn prefix_costs(&self) -> Vec<OctileCost> {
        let mut acc = OctileCost::ZERO;
        let mut out = Vec::with_capacity(self.waypoints.len());
        out.push(acc);
        for pair in self.waypoints.windows(2) {
            acc = acc + step_cost(pair[0], pair[1]);
            out.push(acc);
        }
        out
    }
}

fn step_cost(a: GridPos, b: GridPos) -> OctileCost {
    if a.x != b.x && a.y != b.y {
        OctileCost::DIAGONAL
    } else {
        OctileCost::STRAIGHT
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("cell {0} is blocked or outside the grid")]
    InvalidEndpoint(GridPos),
    #[error("no path from {start} to {goal}")]
    Unreachable { start: GridPos, goal: GridPos },
    #[error("no free cell next to {0}")]
    NoApproach(GridPos),
    #[error("unknown entity '{0}'")]
    UnknownEntity(String),
}

/// True when moving from `from` to the adjacent `to` is legal.
pub fn can_step(scene: &Scene, from: GridPos, to: GridPos) -> bool {
    if scene.is_blocked(to) {
        return false;
    }
    if from.x != to.x && from.y != to.y {
        let side_a = GridPos::new(to.x, from.y);
        let side_b = GridPos::new(from.x, to.y);
        if scene.is_blocked(side_a) || scene.is_blocked(side_b) {
            return false;
        }
    }
    true
}

/// Minimum-cost path from `start` to `goal`.
///
/// The open list is ordered by (f, y, x) and a node's parent only changes on
/// a strict improvement, so identical inputs always give the same waypoints.
pub fn find_path(scene: &Scene, start: GridPos, goal: GridPos) -> Result<Path, PathError> {
    for p in [start, goal] {
        if scene.is_blocked(p) {
            return Err(PathError::InvalidEndpoint(p));
        }
    }
    let grid = scene.grid();
    let cells = grid.width() as usize * grid.height() as usize;
    let mut best: Vec<Option<OctileCost>> = alloc::vec![None; cells];
    let mut parent: Vec<Option<GridPos>> = alloc::vec![None; cells];
    let mut closed = alloc::vec![false; cells];
    let mut open = BinaryHeap::new();

    best[grid.index(start)] = Some(OctileCost::ZERO);
    open.push(Reverse((OctileCost::heuristic(start, goal), start)));

    while let Some(Reverse((_, current))) = open.pop() {
        let ci = grid.index(current);
        if closed[ci] {
            continue;
        }
        closed[ci] = true;
        if current == goal {
            return Ok(reconstruct(scene, &parent, start, goal, best[ci].unwrap_or_default()));
        }
        let g = best[ci].unwrap_or_default();
        for next in grid.neighbors(current) {
            let ni = grid.index(next);
            if closed[ni] || !can_step(scene, current, next) {
                continue;
            }
            let tentative = g + step_cost(current, next);
            if best[ni].is_none_or(|old| tentative < old) {
                best[ni] = Some(tentative);
                parent[ni] = Some(current);
                open.push(Reverse((tentative + OctileCost::heuristic(next, goal), next)));
            }
        }
    }
    Err(PathError::Unreachable { start, goal })
}

fn reconstruct(
    scene: &Scene,
    parent: &[Option<GridPos>],
    start: GridPos,
    goal: GridPos,
    cost: OctileCost,
) -> Path {
    let grid = scene.grid();
    let mut waypoints = alloc::vec![goal];
    let mut cur = goal;
    while cur != start {
        cur = parent[grid.index(cur)].expect("closed node has a parent");
        waypoints.push(cur);
    }
    waypoints.reverse();
    Path {
        waypoints,
        cost,
        length_m: cost.value() * grid.cell_size_m(),
    }
}

/// Cell where a character coming from `from` should stop to reach the
/// entity named `target`: the cheapest reachable free neighbor of the
/// entity's scene position, ties going to lower (y, x).
pub fn approach_cell(scene: &Scene, target: &str, from: GridPos) -> Result<GridPos, PathError> {
    let (_, pos) = scene
        .entity(target)
        .ok_or_else(|| PathError::UnknownEntity(target.to_string()))?;
    approach_cell_at(scene, pos, from)
}

/// [`approach_cell`] for an explicit target cell, used when the target is a
/// character that has moved since the scene was loaded.
///
/// Returns [`PathError::NoApproach`] when every neighbor is blocked and
/// [`PathError::Unreachable`] when free neighbors exist but none can be
/// reached.
pub fn approach_cell_at(scene: &Scene, target: GridPos, from: GridPos) -> Result<GridPos, PathError> {
    if scene.is_blocked(from) {
        return Err(PathError::InvalidEndpoint(from));
    }
    let mut any_free = false;
    let mut best: Option<(OctileCost, GridPos)> = None;
    for cand in scene.grid().neighbors(target) {
        if scene.is_blocked(cand) {
            continue;
        }
        any_free = true;
        if let Ok(path) = find_path(scene, from, cand) {
            if best.is_none_or(|(c, _)| path.cost < c) {
                best = Some((path.cost, cand));
            }
        }
    }
    match best {
        Some((_, cell)) => Ok(cell),
        None if any_free => Err(PathError::Unreachable {
            start: from,
            goal: target,
        }),
        None => Err(PathError::NoApproach(target)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::Grid;

    fn scene(w: u32, h: u32, obstacles: &[(u32, u32)], objects: &[(&str, u32, u32)]) -> Scene {
        let grid = Grid::new(w, h, 0.5, obstacles.iter().map(|&(x, y)| GridPos::new(x, y))).unwrap();
        Scene::new(
            grid,
            [],
            objects.iter().map(|&(n, x, y)| (n.to_string(), GridPos::new(x, y))),
        )
        .unwrap()
    }

    #[test]
    fn cost_ordering_is_exact() {
        let c = |s, d| OctileCost { straight: s, diagonal: d };
        assert!(c(2, 0) < c(0, 2)); // 2 < 2.83
        assert!(c(0, 1) < c(2, 0)); // 1.41 < 2
        assert!(c(3, 0) > c(0, 2)); // 3 > 2.83
        assert!(c(7, 0) < c(0, 5)); // 7 < 7.07
        assert!(c(99, 0) > c(0, 70)); // 99 > 98.99
        assert_eq!(c(1, 1).cmp(&c(1, 1)), Ordering::Equal);
    }

    #[test]
    fn degenerate_path() {
        let s = scene(5, 5, &[], &[]);
        let p = find_path(&s, GridPos::new(2, 2), GridPos::new(2, 2)).unwrap();
        assert_eq!(p.waypoints, [GridPos::new(2, 2)]);
        assert_eq!(p.length_m, 0.0);
    }

    #[test]
    fn free_space_diagonal() {
        let s = scene(5, 5, &[], &[]);
        let p = find_path(&s, GridPos::new(0, 0), GridPos::new(4, 4)).unwrap();
        assert_eq!(p.cost, OctileCost { straight: 0, diagonal: 4 });
        assert_eq!(p.length_m, 4.0 * SQRT_2 * 0.5);
        assert_eq!(p.waypoints.len(), 5);
    }

    #[test]
    fn no_corner_cutting() {
        // (0,1)->(1,0) diagonally would clip the corner of (1,1).
        let s = scene(2, 2, &[(1, 1)], &[]);
        let p = find_path(&s, GridPos::new(0, 1), GridPos::new(1, 0)).unwrap();
        assert_eq!(p.cost, OctileCost { straight: 2, diagonal: 0 });
        // Only diagonal connection between the two free cells: forbidden.
        let s = scene(2, 2, &[(1, 0), (0, 1)], &[]);
        assert!(matches!(
            find_path(&s, GridPos::new(0, 0), GridPos::new(1, 1)),
            Err(PathError::Unreachable { .. })
        ));
    }

    #[test]
    fn blocked_endpoints_rejected() {
        let s = scene(3, 3, &[(1, 1)], &[("ball", 2, 2)]);
        assert_eq!(
            find_path(&s, GridPos::new(0, 0), GridPos::new(1, 1)),
            Err(PathError::InvalidEndpoint(GridPos::new(1, 1)))
        );
        assert_eq!(
            find_path(&s, GridPos::new(2, 2), GridPos::new(0, 0)),
            Err(PathError::InvalidEndpoint(GridPos::new(2, 2)))
        );
    }

    #[test]
    fn walls_force_detour() {
        // wall at x=2 for y in 0..4, gap at y=4
        let s = scene(5, 5, &[(2, 0), (2, 1), (2, 2), (2, 3)], &[]);
        let p = find_path(&s, GridPos::new(0, 0), GridPos::new(4, 0)).unwrap();
        for w in p.waypoints.windows(2) {
            assert!(w[0].is_neighbor(w[1]));
            assert!(can_step(&s, w[0], w[1]));
        }
        assert!(p.waypoints.contains(&GridPos::new(2, 4)));
    }

    #[test]
    fn approach_nearest_neighbor() {
        let s = scene(7, 3, &[], &[("ball", 4, 1)]);
        let cell = approach_cell(&s, "ball", GridPos::new(0, 1)).unwrap();
        assert_eq!(cell, GridPos::new(3, 1));
        // already adjacent: stay put
        let cell = approach_cell(&s, "ball", GridPos::new(5, 2)).unwrap();
        assert_eq!(cell, GridPos::new(5, 2));
    }

    #[test]
    fn approach_walled_in() {
        let walls = [(1, 0), (2, 0), (3, 0), (1, 1), (3, 1), (1, 2), (2, 2), (3, 2)];
        let s = scene(6, 4, &walls, &[("box", 2, 1)]);
        assert_eq!(
            approach_cell(&s, "box", GridPos::new(5, 3)),
            Err(PathError::NoApproach(GridPos::new(2, 1)))
        );
        assert!(matches!(
            approach_cell(&s, "nope", GridPos::new(5, 3)),
            Err(PathError::UnknownEntity(_))
        ));
    }

    #[test]
    fn approach_enclosed_room_is_unreachable() {
        // room interior (1..=3, 1..=2) closed off by walls; box at (2,1)
        let mut walls = alloc::vec![];
        for x in 0..5 {
            walls.push((x, 0));
            walls.push((x, 3));
        }
        walls.extend([(0, 1), (0, 2), (4, 1), (4, 2)]);
        let s = scene(7, 5, &walls, &[("box", 2, 1)]);
        assert!(matches!(
            approach_cell(&s, "box", GridPos::new(6, 4)),
            Err(PathError::Unreachable { .. })
        ));
    }
}
