//! Test-only oracles and generators for the chase suites.
//!
//! Nothing here calls into the navigation or scheduling code it is used to
//! check: the Dijkstra oracle works on a raw obstacle bitmap, the invariant
//! checker reads only the finished timeline, and the generators build inputs
//! from first principles.

use std::collections::{BTreeMap, BTreeSet};

use chase_core::{
    Arg, ArgValue, BaseCommand, Channel, CommandChain, EventRole, Grid, GridPos, Mode, Scene,
    ScriptAst, SourceSpan, Statement, Timeline, Verb,
};
use chase_core::ast::CharacterRef;
use rand::seq::SliceRandom;
use rand::Rng;

// ---------------------------------------------------------------------------
// Pathfinding oracle
// ---------------------------------------------------------------------------

/// Plain obstacle bitmap, row-major.
#[derive(Debug, Clone)]
pub struct Bitmap {
    pub width: u32,
    pub height: u32,
    pub blocked: Vec<bool>,
}

impl Bitmap {
    pub fn random(rng: &mut impl Rng, width: u32, height: u32, density: f64) -> Bitmap {
        let blocked = (0..width * height).map(|_| rng.gen_bool(density)).collect();
        Bitmap {
            width,
            height,
            blocked,
        }
    }

    pub fn is_free(&self, x: i64, y: i64) -> bool {
        x >= 0
            && y >= 0
            && x < self.width as i64
            && y < self.height as i64
            && !self.blocked[(y * self.width as i64 + x) as usize]
    }

    pub fn free_cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for y in 0..self.height {
            for x in 0..self.width {
                if self.is_free(x as i64, y as i64) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn to_scene(&self, cell_size_m: f64) -> Scene {
        let obstacles = (0..self.height)
            .flat_map(|y| (0..self.width).map(move |x| (x, y)))
            .filter(|&(x, y)| !self.is_free(x as i64, y as i64))
            .map(|(x, y)| GridPos::new(x, y));
        let grid = Grid::new(self.width, self.height, cell_size_m, obstacles).unwrap();
        Scene::new(grid, [], []).unwrap()
    }
}

/// Exact octile distance as (straight steps, diagonal steps).
pub type Steps = (u64, u64);

/// `a` strictly cheaper than `b` under `straight + diagonal * sqrt(2)`.
pub fn steps_less(a: Steps, b: Steps) -> bool {
    // a.0 + a.1 r < b.0 + b.1 r  with r = sqrt 2
    let lhs = a.0 as i128 - b.0 as i128; // compare lhs < (b.1 - a.1) r
    let rhs = b.1 as i128 - a.1 as i128;
    match (lhs >= 0, rhs >= 0) {
        (true, true) => lhs * lhs < 2 * rhs * rhs,
        (true, false) => false,
        (false, true) => true,
        (false, false) => lhs * lhs > 2 * rhs * rhs,
    }
}

/// Single-source Dijkstra with an O(V^2) scan, no corner cutting.
pub fn dijkstra(map: &Bitmap, start: (u32, u32)) -> Vec<Option<Steps>> {
    let n = (map.width * map.height) as usize;
    let idx = |x: i64, y: i64| (y * map.width as i64 + x) as usize;
    let mut dist: Vec<Option<Steps>> = vec![None; n];
    let mut done = vec![false; n];
    if !map.is_free(start.0 as i64, start.1 as i64) {
        return dist;
    }
    dist[idx(start.0 as i64, start.1 as i64)] = Some((0, 0));
    loop {
        let mut pick: Option<usize> = None;
        for i in 0..n {
            if done[i] {
                continue;
            }
            if let Some(d) = dist[i] {
                if pick.is_none_or(|p| steps_less(d, dist[p].unwrap())) {
                    pick = Some(i);
                }
            }
        }
        let Some(u) = pick else { break };
        done[u] = true;
        let (ux, uy) = ((u as u32 % map.width) as i64, (u as u32 / map.width) as i64);
        let du = dist[u].unwrap();
        for dy in -1..=1i64 {
            for dx in -1..=1i64 {
                if dx == 0 && dy == 0 {
                    continue;
                }
                let (vx, vy) = (ux + dx, uy + dy);
                if !map.is_free(vx, vy) {
                    continue;
                }
                let diagonal = dx != 0 && dy != 0;
                if diagonal && !(map.is_free(ux + dx, uy) && map.is_free(ux, uy + dy)) {
                    continue;
                }
                let cand = if diagonal { (du.0, du.1 + 1) } else { (du.0 + 1, du.1) };
                let v = idx(vx, vy);
                if dist[v].is_none_or(|old| steps_less(cand, old)) {
                    dist[v] = Some(cand);
                }
            }
        }
    }
    dist
}

// ---------------------------------------------------------------------------
// Edit distance oracle
// ---------------------------------------------------------------------------

/// Memoized recursive Levenshtein distance.
pub fn edit_distance_oracle(a: &str, b: &str) -> usize {
    fn go(a: &[char], b: &[char], memo: &mut BTreeMap<(usize, usize), usize>) -> usize {
        if a.is_empty() {
            return b.len();
        }
        if b.is_empty() {
            return a.len();
        }
        if let Some(&v) = memo.get(&(a.len(), b.len())) {
            return v;
        }
        let v = if a[0] == b[0] {
            go(&a[1..], &b[1..], memo)
        } else {
            1 + go(&a[1..], b, memo)
                .min(go(a, &b[1..], memo))
                .min(go(&a[1..], &b[1..], memo))
        };
        memo.insert((a.len(), b.len()), v);
        v
    }
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    go(&a, &b, &mut BTreeMap::new())
}

// ---------------------------------------------------------------------------
// Random syntax trees
// ---------------------------------------------------------------------------

const WORDS: &[&str] = &[
    "wave", "hand", "jump", "kick", "punch", "knock", "ball", "target", "door", "walk", "run",
    "handR", "handL", "footR", "footL", "Rudy", "characterA", "characterB", "x", "_tmp", "A1",
    "task", "tasks", "do", "goTo", "characterName", "é",
];

fn span() -> SourceSpan {
    SourceSpan::SYNTHETIC
}

fn random_words(rng: &mut impl Rng) -> Vec<String> {
    let n = rng.gen_range(1..=3);
    (0..n).map(|_| WORDS.choose(rng).unwrap().to_string()).collect()
}

fn random_number(rng: &mut impl Rng) -> f64 {
    match rng.gen_range(0..4) {
        0 => rng.gen_range(0..100) as f64,
        1 => rng.gen_range(0..4000) as f64 / 8.0,
        2 => rng.gen_range(0.0..1000.0),
        _ => rng.gen_range(0..1_000_000) as f64 / 1000.0,
    }
}

fn random_command(rng: &mut impl Rng, verb: Verb) -> BaseCommand {
    let n = rng.gen_range(1..=4);
    let args = (0..n)
        .map(|_| Arg {
            value: if rng.gen_bool(0.3) {
                ArgValue::Number(random_number(rng))
            } else {
                ArgValue::Words(random_words(rng))
            },
            span: span(),
        })
        .collect();
    BaseCommand {
        verb,
        args,
        span: span(),
    }
}

fn random_chain(rng: &mut impl Rng) -> CommandChain {
    let verb = *[Verb::Do, Verb::GoTo, Verb::InteractWith].choose(rng).unwrap();
    let base = random_command(rng, verb);
    let overlay = (verb != Verb::Do && rng.gen_bool(0.4)).then(|| random_command(rng, Verb::Do));
    let character = rng.gen_bool(0.4).then(|| CharacterRef {
        name: random_words(rng).join(" "),
        span: span(),
    });
    CommandChain {
        base,
        overlay,
        character,
        span: span(),
    }
}

/// A random well-formed tree: one mode, no duplicate cells, overlays only on
/// goTo/interactWith.
pub fn random_ast(rng: &mut impl Rng) -> ScriptAst {
    let mode = *[Mode::Bare, Mode::Task1d, Mode::Task2d].choose(rng).unwrap();
    let n = rng.gen_range(0..=6);
    let mut used = BTreeSet::new();
    let mut statements = Vec::new();
    for _ in 0..n {
        let chain = random_chain(rng);
        let stmt = match mode {
            Mode::Bare => Statement::Bare(chain),
            Mode::Task1d => {
                let index = rng.gen_range(1..=20);
                if !used.insert((index, 0)) {
                    continue;
                }
                Statement::Task1d {
                    index,
                    chain,
                    lhs_span: span(),
                }
            }
            Mode::Task2d => {
                let (row, col) = (rng.gen_range(1..=6), rng.gen_range(1..=4));
                if !used.insert((row, col)) {
                    continue;
                }
                Statement::Task2d {
                    row,
                    col,
                    chain,
                    lhs_span: span(),
                }
            }
        };
        statements.push(stmt);
    }
    let mode = if statements.is_empty() { Mode::Bare } else { mode };
    ScriptAst { statements, mode }
}

// ---------------------------------------------------------------------------
// Random valid scripts against the fuzz scene
// ---------------------------------------------------------------------------

/// Open 14x10 room with a few pillars; three characters and three objects.
pub fn fuzz_scene() -> Scene {
    let obstacles = [(5, 3), (5, 4), (9, 6), (10, 6), (3, 8)]
        .into_iter()
        .map(|(x, y)| GridPos::new(x, y));
    let grid = Grid::new(14, 10, 0.5, obstacles).unwrap();
    Scene::new(
        grid,
        [
            ("A".to_string(), GridPos::new(1, 1)),
            ("B".to_string(), GridPos::new(12, 1)),
            ("C".to_string(), GridPos::new(1, 8)),
        ],
        [
            ("ball".to_string(), GridPos::new(7, 5)),
            ("door".to_string(), GridPos::new(13, 9)),
            ("box".to_string(), GridPos::new(2, 4)),
        ],
    )
    .unwrap()
}

const CHARACTERS: [&str; 3] = ["A", "B", "C"];
const ENTITIES: [&str; 6] = ["A", "B", "C", "ball", "door", "box"];
const HANDS: [&str; 2] = ["handR", "handL"];
const FEET: [&str; 2] = ["footR", "footL"];

fn duration_text(rng: &mut impl Rng) -> String {
    format!("{}", rng.gen_range(1..=16) as f64 / 4.0)
}

fn other_entity(rng: &mut impl Rng, me: &str) -> String {
    loop {
        let e = *ENTITIES.choose(rng).unwrap();
        if e != me {
            return e.to_string();
        }
    }
}

/// Shuffled optional arguments, each present with probability 1/2.
fn optionals(rng: &mut impl Rng, mut parts: Vec<String>) -> String {
    parts.retain(|_| rng.gen_bool(0.5));
    parts.shuffle(rng);
    parts.iter().map(|p| format!(", {p}")).collect()
}

fn solo_text(rng: &mut impl Rng, me: &str) -> String {
    let (action, limbs): (&str, &[&str]) = match rng.gen_range(0..5) {
        0 => ("wave hand", &HANDS),
        1 => ("jump", &[]),
        2 => ("kick", &FEET),
        3 => ("punch", &HANDS),
        _ => ("knock", &HANDS),
    };
    let mut opts = vec![duration_text(rng), other_entity(rng, me)];
    if let Some(l) = limbs.choose(rng) {
        opts.push(l.to_string());
    }
    format!("do({action}{})", optionals(rng, opts))
}

fn overlay_text(rng: &mut impl Rng, forbidden_limb: Option<&str>) -> String {
    loop {
        let (action, limbs): (&str, &[&str]) = match rng.gen_range(0..3) {
            0 => ("wave hand", &HANDS),
            1 => ("kick", &FEET),
            _ => ("knock", &HANDS),
        };
        let limb = *limbs.choose(rng).unwrap();
        if Some(limb) == forbidden_limb {
            continue;
        }
        let dur = if rng.gen_bool(0.3) {
            format!(", {}", duration_text(rng))
        } else {
            String::new()
        };
        return format!(".do({action}, {limb}{dur})");
    }
}

fn command_text(rng: &mut impl Rng, me: &str) -> String {
    match rng.gen_range(0..3) {
        0 => solo_text(rng, me),
        1 => {
            let style = ["", ", walk", ", run"].choose(rng).unwrap();
            let overlay = if rng.gen_bool(0.5) { overlay_text(rng, None) } else { String::new() };
            format!("goTo({}{style}){overlay}", other_entity(rng, me))
        }
        _ => {
            let (module, limbs): (&str, &[&str]) = match rng.gen_range(0..3) {
                0 => ("kick", &FEET),
                1 => ("punch", &HANDS),
                _ => ("knock", &HANDS),
            };
            let limb = *limbs.choose(rng).unwrap();
            let explicit_limb = rng.gen_bool(0.5);
            let default_limb = limbs[0];
            let used = if explicit_limb { limb } else { default_limb };
            let mut text = format!("interactWith({}, {module}", other_entity(rng, me));
            if explicit_limb {
                text.push_str(&format!(", {limb}"));
            }
            if rng.gen_bool(0.5) {
                text.push_str(&format!(", {}", duration_text(rng)));
            }
            text.push(')');
            if rng.gen_bool(0.5) {
                text.push_str(&overlay_text(rng, Some(used)));
            }
            text
        }
    }
}

/// A random script that should compile against [`fuzz_scene`].
pub fn random_script(rng: &mut impl Rng) -> String {
    let rows = rng.gen_range(1..=6);
    let mut lines = Vec::new();
    match rng.gen_range(0..3) {
        0 => {
            for _ in 0..rows {
                let me = *CHARACTERS.choose(rng).unwrap();
                lines.push(format!("{}.characterName({me})", command_text(rng, me)));
            }
        }
        1 => {
            let mut order: Vec<u32> = (1..=rows).collect();
            order.shuffle(rng);
            for i in order {
                let me = *CHARACTERS.choose(rng).unwrap();
                lines.push(format!("task[{i}] = {}.characterName({me})", command_text(rng, me)));
            }
        }
        _ => {
            let mut cast = CHARACTERS.to_vec();
            cast.shuffle(rng);
            for r in 1..=rows {
                for (c, me) in cast.iter().enumerate() {
                    // keep every row non-empty
                    if c > 0 && rng.gen_bool(0.4) {
                        continue;
                    }
                    lines.push(format!(
                        "tasks[{r}][{}] = {}.characterName({me})",
                        c + 1,
                        command_text(rng, me)
                    ));
                }
            }
            lines.shuffle(rng);
        }
    }
    lines.join("\n")
}

// ---------------------------------------------------------------------------
// Timeline invariants
// ---------------------------------------------------------------------------

const EPS: f64 = 1e-9;

/// Every violated timeline invariant, as a readable message. Empty means
/// the timeline is consistent.
pub fn timeline_violations(timeline: &Timeline, scene: &Scene) -> Vec<String> {
    let mut out = Vec::new();
    let ev = &timeline.events;

    for w in ev.windows(2) {
        let key = |e: &chase_core::TimelineEvent| (e.start_s, e.character.clone(), e.channel);
        let (a, b) = (key(&w[0]), key(&w[1]));
        if a.0 > b.0 || (a.0 == b.0 && (a.1.clone(), a.2) >= (b.1.clone(), b.2)) {
            out.push(format!("events out of order: {a:?} then {b:?}"));
        }
    }
    let total = ev.iter().map(|e| e.end_s).fold(0.0, f64::max);
    if total != timeline.total_s {
        out.push(format!("total_s {} != max end {}", timeline.total_s, total));
    }
    for e in ev {
        if !(e.start_s >= 0.0 && e.start_s < e.end_s) {
            out.push(format!("bad interval [{}, {}] for {}", e.start_s, e.end_s, e.action));
        }
    }

    // channel exclusivity
    let mut lanes: BTreeMap<(String, Channel), Vec<(f64, f64)>> = BTreeMap::new();
    for e in ev {
        lanes
            .entry((e.character.clone(), e.channel))
            .or_default()
            .push((e.start_s, e.end_s));
    }
    for ((who, ch), mut spans) in lanes {
        spans.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in spans.windows(2) {
            if w[0].1 > w[1].0 {
                out.push(format!("{who}/{ch:?}: {:?} overlaps {:?}", w[0], w[1]));
            }
        }
    }

    // overlay containment: inside the union of the same row's base events
    let mut command_span: BTreeMap<(String, u32), (f64, f64)> = BTreeMap::new();
    for e in ev.iter().filter(|e| e.params.role != EventRole::Overlay) {
        let s = command_span
            .entry((e.character.clone(), e.params.row))
            .or_insert((e.start_s, e.end_s));
        s.0 = s.0.min(e.start_s);
        s.1 = s.1.max(e.end_s);
    }
    for e in ev.iter().filter(|e| e.params.role == EventRole::Overlay) {
        match command_span.get(&(e.character.clone(), e.params.row)) {
            Some(&(s, t)) if e.start_s >= s && e.end_s <= t => {}
            other => out.push(format!(
                "overlay {} [{}, {}] of {} row {} not inside base {:?}",
                e.action, e.start_s, e.end_s, e.character, e.params.row, other
            )),
        }
    }

    // barrier: every event of row r+1 starts after all of row r ended
    let mut row_bounds: BTreeMap<u32, (f64, f64)> = BTreeMap::new();
    for e in ev {
        let b = row_bounds.entry(e.params.row).or_insert((e.start_s, e.end_s));
        b.0 = b.0.min(e.start_s);
        b.1 = b.1.max(e.end_s);
    }
    let rows: Vec<_> = row_bounds.iter().collect();
    for w in rows.windows(2) {
        if w[1].1 .0 < w[0].1 .1 {
            out.push(format!("row {} starts before row {} ends", w[1].0, w[0].0));
        }
    }

    // tracks and position continuity
    let cell = scene.grid().cell_size_m();
    for (name, home) in scene.characters() {
        let mut at = scene.grid().cell_center_m(*home);
        for e in ev.iter().filter(|e| &e.character == name && !e.track.is_empty()) {
            let first = e.track[0];
            let last = e.track[e.track.len() - 1];
            if (first.x - at.0).abs() > EPS || (first.y - at.1).abs() > EPS {
                out.push(format!("{name}: locomotion starts at ({}, {}) but was at {at:?}", first.x, first.y));
            }
            if first.t_s != e.start_s || last.t_s != e.end_s {
                out.push(format!("{name}: track does not span its event"));
            }
            for w in e.track.windows(2) {
                if w[0].t_s >= w[1].t_s {
                    out.push(format!("{name}: track times not increasing"));
                }
                let step = ((w[1].x - w[0].x).powi(2) + (w[1].y - w[0].y).powi(2)).sqrt();
                if step < cell - EPS || step > cell * std::f64::consts::SQRT_2 + EPS {
                    out.push(format!("{name}: track step of {step} m is not one cell"));
                }
            }
            at = (last.x, last.y);
        }
    }
    out
}
