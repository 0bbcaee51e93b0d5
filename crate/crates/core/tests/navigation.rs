use chase_core::path::can_step;
use chase_core::{approach_cell, find_path, Grid, GridPos, OctileCost, Scene};
use chase_testkit::{dijkstra, Bitmap};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn steps(c: OctileCost) -> (u64, u64) {
    (c.straight as u64, c.diagonal as u64)
}

fn pos((x, y): (u32, u32)) -> GridPos {
    GridPos::new(x, y)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn astar_matches_dijkstra_and_paths_are_valid(seed in any::<u64>(), density in 0.0f64..0.4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let map = Bitmap::random(&mut rng, 12, 12, density);
        let free = map.free_cells();
        prop_assume!(free.len() >= 2);
        let scene = map.to_scene(0.5);
        let start = free[rng.gen_range(0..free.len())];
        let oracle = dijkstra(&map, start);
        for _ in 0..10 {
            let goal = free[rng.gen_range(0..free.len())];
            let expected = oracle[(goal.1 * map.width + goal.0) as usize];
            match find_path(&scene, pos(start), pos(goal)) {
                Ok(path) => {
                    prop_assert_eq!(Some(steps(path.cost)), expected);
                    prop_assert_eq!(path.waypoints[0], pos(start));
                    prop_assert_eq!(*path.waypoints.last().unwrap(), pos(goal));
                    let mut sum = OctileCost::ZERO;
                    for w in path.waypoints.windows(2) {
                        prop_assert!(w[0].is_neighbor(w[1]));
                        prop_assert!(can_step(&scene, w[0], w[1]));
                        sum = sum + OctileCost::heuristic(w[0], w[1]);
                    }
                    prop_assert_eq!(sum, path.cost);
                    prop_assert_eq!(path.length_m, path.cost.value() * 0.5);
                }
                Err(_) => prop_assert_eq!(expected, None),
            }
        }
    }

    #[test]
    fn cost_is_symmetric_and_paths_deterministic(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let map = Bitmap::random(&mut rng, 10, 10, 0.25);
        let free = map.free_cells();
        prop_assume!(free.len() >= 2);
        let scene = map.to_scene(1.0);
        let a = pos(free[rng.gen_range(0..free.len())]);
        let b = pos(free[rng.gen_range(0..free.len())]);
        let ab = find_path(&scene, a, b);
        let ba = find_path(&scene, b, a);
        prop_assert_eq!(ab.as_ref().map(|p| p.cost).ok(), ba.as_ref().map(|p| p.cost).ok());
        prop_assert_eq!(ab, find_path(&scene, a, b));
    }
}

/// Brute force: Dijkstra cost to each of the eight neighbors, cheapest
/// wins, ties to lower (y, x).
fn approach_oracle(map: &Bitmap, target: (u32, u32), from: (u32, u32)) -> Option<(u32, u32)> {
    let dist = dijkstra(map, from);
    let mut best: Option<((u64, u64), (u32, u32))> = None;
    for dy in -1i64..=1 {
        for dx in -1i64..=1 {
            let (x, y) = (target.0 as i64 + dx, target.1 as i64 + dy);
            if (dx, dy) == (0, 0) || !map.is_free(x, y) {
                continue;
            }
            let Some(d) = dist[(y * map.width as i64 + x) as usize] else { continue };
            let better = match best {
                None => true,
                Some((bd, bc)) => {
                    chase_testkit::steps_less(d, bd) || (d == bd && (y as u32, x as u32) < (bc.1, bc.0))
                }
            };
            if better {
                best = Some((d, (x as u32, y as u32)));
            }
        }
    }
    best.map(|b| b.1)
}

#[test]
fn approach_cell_matches_brute_force() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 200 {
        let mut map = Bitmap::random(&mut rng, 10, 8, 0.2);
        let free = map.free_cells();
        if free.len() < 3 {
            continue;
        }
        let target = free[rng.gen_range(0..free.len())];
        let from = free[rng.gen_range(0..free.len())];
        if from == target {
            continue;
        }
        let objects = [("thing".to_string(), pos(target))];
        let grid_obstacles = (0..map.height)
            .flat_map(|y| (0..map.width).map(move |x| (x, y)))
            .filter(|&(x, y)| !map.is_free(x as i64, y as i64))
            .map(pos);
        let grid = Grid::new(map.width, map.height, 0.5, grid_obstacles).unwrap();
        let scene = Scene::new(grid, [], objects).unwrap();
        // the object blocks its own cell for the oracle too
        map.blocked[(target.1 * map.width + target.0) as usize] = true;
        let expected = approach_oracle(&map, target, from);
        let got = approach_cell(&scene, "thing", pos(from)).ok();
        assert_eq!(got, expected.map(pos), "target {target:?} from {from:?}");
        checked += 1;
    }
}

#[test]
fn approach_for_the_multitask_ball_fixture() {
    // Same layout as the CLI's single-character golden scene.
    let obstacles = [(5, 1), (5, 2), (5, 6), (9, 2)].map(pos);
    let grid = Grid::new(12, 8, 0.5, obstacles).unwrap();
    let scene = Scene::new(
        grid,
        [("Rudy".to_string(), pos((1, 4)))],
        [("ball".to_string(), pos((8, 4)))],
    )
    .unwrap();
    let mut map = Bitmap {
        width: 12,
        height: 8,
        blocked: vec![false; 96],
    };
    for (x, y) in [(5, 1), (5, 2), (5, 6), (9, 2), (8, 4)] {
        map.blocked[y * 12 + x] = true;
    }
    let expected = approach_oracle(&map, (8, 4), (1, 4)).unwrap();
    assert_eq!(approach_cell(&scene, "ball", pos((1, 4))).unwrap(), pos(expected));
    assert_eq!(expected, (7, 4));
}
