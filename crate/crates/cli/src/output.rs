//! Line-oriented JSON writers for timelines and frames. Numbers are
//! printed with six decimals so output is byte-stable.

use std::fmt::Write as _;

use chase_core::{Frame, Timeline, TimelineEvent};

/// Six decimals, never "-0.000000".
pub fn fixed6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn params(out: &mut String, e: &TimelineEvent) {
    let p = &e.params;
    let _ = write!(out, "{{\"row\":{},\"role\":{}", p.row, string(p.role.as_str()));
    if let Some(part) = p.part {
        let _ = write!(out, ",\"part\":{}", string(part.keyword()));
    }
    if let Some(style) = p.style {
        let _ = write!(out, ",\"style\":{}", string(style.keyword()));
    }
    if let Some(target) = &p.target {
        let _ = write!(out, ",\"target\":{}", string(target));
    }
    if let Some(facing) = &p.facing_target {
        let _ = write!(out, ",\"facing_target\":{}", string(facing));
    }
    if let Some((x, y)) = p.facing_point {
        let _ = write!(out, ",\"facing_point\":[{},{}]", fixed6(x), fixed6(y));
    }
    if let Some(n) = p.repetitions {
        let _ = write!(out, ",\"repetitions\":{n}");
    }
    out.push('}');
}

fn event(out: &mut String, e: &TimelineEvent) {
    let _ = write!(
        out,
        "{{\"character\":{},\"channel\":{},\"action\":{},\"start_s\":{},\"end_s\":{},\"params\":",
        string(&e.character),
        string(e.channel.as_str()),
        string(&e.action),
        fixed6(e.start_s),
        fixed6(e.end_s),
    );
    params(out, e);
    out.push_str(",\"track\":[");
    for (i, p) in e.track.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "[{},{},{}]", fixed6(p.t_s), fixed6(p.x), fixed6(p.y));
    }
    out.push_str("]}");
}

/// Timeline document: one event per line inside the `events` array.
pub fn timeline_json(timeline: &Timeline) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{\"total_s\":{},\"events\":[", fixed6(timeline.total_s));
    for (i, e) in timeline.events.iter().enumerate() {
        event(&mut out, e);
        if i + 1 < timeline.events.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]}\n");
    out
}

pub fn frame_line(frame: &Frame) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\"t_s\":{},\"characters\":{{", fixed6(frame.t_s));
    for (i, (name, c)) in frame.characters.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(
            out,
            "{}:{{\"pos\":[{},{}],\"facing\":[{},{}],\"active\":{{",
            string(name),
            fixed6(c.pos.0),
            fixed6(c.pos.1),
            fixed6(c.facing.0),
            fixed6(c.facing.1),
        );
        for (j, (channel, action)) in c.active.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}:{}", string(channel.as_str()), string(action));
        }
        out.push_str("}}");
    }
    out.push_str("}}");
    out
}

/// Frames document: one JSON object per line.
pub fn frames_jsonl(frames: &[Frame]) -> String {
    let mut out = String::new();
    for f in frames {
        out.push_str(&frame_line(f));
        out.push('\n');
    }
    out
}
