use chase_core::registry::edit_distance;
use chase_core::{compile, Channel, EngineConfig, EventRole, Registry};
use chase_testkit::{edit_distance_oracle, fuzz_scene, random_script, timeline_violations};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn random_scripts_keep_timeline_invariants() {
    let scene = fuzz_scene();
    let registry = Registry::seed();
    let config = EngineConfig::default();
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..200 {
        let src = random_script(&mut rng);
        let schedule = compile(&src, &registry, &scene, &config)
            .unwrap_or_else(|e| panic!("{src}\n{e:?}"));
        let violations = timeline_violations(&schedule.timeline, &scene);
        assert!(violations.is_empty(), "{src}\n{violations:#?}");
        assert_eq!(
            compile(&src, &registry, &scene, &config).unwrap(),
            schedule,
            "determinism"
        );
    }
}

#[test]
fn explicit_durations_are_exact_and_loops_count_cycles() {
    let scene = fuzz_scene();
    let registry = Registry::seed();
    let src = "do(wave hand, 5).characterName(A)\ndo(knock, 3).characterName(B)\ndo(kick, 2.25).characterName(C)";
    let s = compile(src, &registry, &scene, &EngineConfig::default()).unwrap();
    let ev = &s.timeline.events;
    assert_eq!(ev.len(), 3);
    assert_eq!(ev[0].end_s - ev[0].start_s, 5.0);
    assert_eq!(ev[0].params.repetitions, Some(3)); // ceil(5 / 2)
    assert_eq!(ev[1].end_s - ev[1].start_s, 3.0);
    assert_eq!(ev[1].params.repetitions, Some(2)); // ceil(3 / 1.5)
    assert_eq!(ev[2].end_s - ev[2].start_s, 2.25);
    assert_eq!(ev[2].params.repetitions, Some(1));
    assert_eq!(ev[2].channel, Channel::FootR);
}

#[test]
fn same_row_characters_start_together() {
    let scene = fuzz_scene();
    let src = "tasks[1][1] = goTo(ball).characterName(A)
tasks[1][2] = goTo(door, run).characterName(B)
tasks[2][1] = do(jump)
tasks[2][2] = do(jump)";
    let s = compile(src, &Registry::seed(), &scene, &EngineConfig::default()).unwrap();
    let row1: Vec<_> = s.timeline.events.iter().filter(|e| e.params.row == 1).collect();
    assert!(row1.iter().all(|e| e.start_s == 0.0));
    let barrier = row1.iter().map(|e| e.end_s).fold(0.0, f64::max);
    let row2: Vec<_> = s.timeline.events.iter().filter(|e| e.params.row == 2).collect();
    assert_eq!(row2.len(), 2);
    assert!(row2.iter().all(|e| e.start_s == barrier && e.params.role == EventRole::Base));
}

#[test]
fn speeds_come_from_config() {
    let scene = fuzz_scene();
    let registry = Registry::seed();
    let mut fast = EngineConfig::default();
    fast.speeds.walk = 2.8;
    let slow = compile("goTo(door).characterName(A)", &registry, &scene, &EngineConfig::default()).unwrap();
    let quick = compile("goTo(door).characterName(A)", &registry, &scene, &fast).unwrap();
    let ratio = slow.timeline.total_s / quick.timeline.total_s;
    assert!((ratio - 2.0).abs() < 1e-12);
}

#[test]
fn lookup_hint_is_the_nearest_key() {
    let registry = Registry::seed();
    for probe in ["wavee hand", "jmp", "kik", "pnch", "knocks", "wave", "xyz", "pouch"] {
        let keys: Vec<&str> = registry.actions().map(|d| d.keyword.as_str()).collect();
        let expected = keys
            .iter()
            .map(|k| (edit_distance_oracle(probe, k), *k))
            .filter(|(d, _)| *d <= 2)
            .min()
            .map(|(_, k)| k.to_string());
        let hint = registry.lookup(probe).unwrap_err().hint;
        assert_eq!(hint, expected, "{probe}");
        for k in keys {
            assert_eq!(edit_distance(probe, k), edit_distance_oracle(probe, k));
        }
    }
}

#[test]
fn lookup_is_total_and_case_insensitive() {
    let registry = Registry::seed();
    for def in registry.actions() {
        assert_eq!(registry.lookup(&def.keyword).unwrap(), def);
        assert_eq!(registry.lookup(&def.keyword.to_uppercase()).unwrap(), def);
        assert!(def.allows(def.default_part));
    }
}
