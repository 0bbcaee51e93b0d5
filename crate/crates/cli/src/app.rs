//! Command implementations. Each returns the process exit code.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use chase_core::config::DEFAULT_FPS;
use chase_core::{
    compile, parse_source, render_frames, Diagnostic, EngineConfig, Registry, Scene, Timeline,
};
use clap::{Parser, Subcommand};

use crate::docs::{self, DocError};
use crate::output;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIAGNOSTICS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "chase", version, about = "Compile chase character scripts into timelines and frames")]
pub struct Cli {
    /// Action registry document replacing the built-in one.
    #[arg(long, global = true, value_name = "FILE")]
    pub registry: Option<PathBuf>,
    /// Config document overriding locomotion speeds.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report diagnostics for a script.
    Check {
        script: PathBuf,
        #[arg(long, value_name = "FILE")]
        scene: Option<PathBuf>,
    },
    /// Write the timeline document.
    Build {
        script: PathBuf,
        #[arg(long, value_name = "FILE")]
        scene: PathBuf,
        #[arg(short, long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Write sampled frames, one JSON object per line.
    Run {
        script: PathBuf,
        #[arg(long, value_name = "FILE")]
        scene: PathBuf,
        #[arg(short, long, value_name = "FILE")]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FPS)]
        fps: f64,
    },
}

enum Failure {
    Io(String),
    Doc(DocError),
    Diagnostics,
}

struct Ctx<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn diagnostics(&mut self, file: &Path, diags: &[Diagnostic]) {
        for d in diags {
            let _ = writeln!(self.stderr, "{}:{d}", file.display());
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn load_registry(cli: &Cli) -> Result<Registry, Failure> {
    match &cli.registry {
        Some(path) => docs::parse_registry(&read(path)?, path).map_err(Failure::Doc),
        None => Ok(docs::embedded_registry()),
    }
}

fn load_config(cli: &Cli, registry: &Registry, fps: f64) -> Result<EngineConfig, Failure> {
    let mut speeds = *registry.speeds();
    if let Some(path) = &cli.config {
        docs::apply_config(&read(path)?, path, &mut speeds).map_err(Failure::Doc)?;
    }
    EngineConfig::new(speeds, fps).map_err(|e| Failure::Io(e.to_string()))
}

fn load_scene(path: &Path) -> Result<Scene, Failure> {
    docs::parse_scene(&read(path)?, path).map_err(Failure::Doc)
}

/// Compiles and prints diagnostics; warnings alone do not fail.
fn build_timeline(
    ctx: &mut Ctx,
    script: &Path,
    source: &str,
    registry: &Registry,
    scene: &Scene,
    config: &EngineConfig,
) -> Result<Timeline, Failure> {
    match compile(source, registry, scene, config) {
        Ok(schedule) => {
            ctx.diagnostics(script, &schedule.warnings);
            Ok(schedule.timeline)
        }
        Err(diags) => {
            ctx.diagnostics(script, &diags);
            Err(Failure::Diagnostics)
        }
    }
}

fn check(ctx: &mut Ctx, cli: &Cli, script: &Path, scene: Option<&Path>) -> Result<(), Failure> {
    let source = read(script)?;
    let Some(scene_path) = scene else {
        return parse_source(&source).map(|_| ()).map_err(|diags| {
            ctx.diagnostics(script, &diags);
            Failure::Diagnostics
        });
    };
    let registry = load_registry(cli)?;
    let config = load_config(cli, &registry, DEFAULT_FPS)?;
    let scene = load_scene(scene_path)?;
    build_timeline(ctx, script, &source, &registry, &scene, &config).map(|_| ())
}

fn build(ctx: &mut Ctx, cli: &Cli, script: &Path, scene: &Path, out: &Path) -> Result<(), Failure> {
    let source = read(script)?;
    let registry = load_registry(cli)?;
    let config = load_config(cli, &registry, DEFAULT_FPS)?;
    let scene = load_scene(scene)?;
    let timeline = build_timeline(ctx, script, &source, &registry, &scene, &config)?;
    write_atomic(out, &output::timeline_json(&timeline))
        .map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
    let _ = writeln!(
        ctx.stdout,
        "{} events, {} total seconds",
        timeline.events.len(),
        output::fixed6(timeline.total_s)
    );
    Ok(())
}

fn run_frames(
    ctx: &mut Ctx,
    cli: &Cli,
    script: &Path,
    scene: &Path,
    out: &Path,
    fps: f64,
) -> Result<(), Failure> {
    if !(fps.is_finite() && fps > 0.0) {
        return Err(Failure::Io(format!("--fps must be a positive number, got {fps}")));
    }
    let source = read(script)?;
    let registry = load_registry(cli)?;
    let config = load_config(cli, &registry, fps)?;
    let scene = load_scene(scene)?;
    let timeline = build_timeline(ctx, script, &source, &registry, &scene, &config)?;
    let frames = render_frames(&timeline, &scene, &config);
    write_atomic(out, &output::frames_jsonl(&frames))
        .map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
    let _ = writeln!(
        ctx.stdout,
        "{} frames, {} total seconds",
        frames.len(),
        output::fixed6(timeline.total_s)
    );
    Ok(())
}

/// Runs a parsed command line, writing reports to the given streams.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut ctx = Ctx { stdout, stderr };
    let result = match &cli.command {
        Command::Check { script, scene } => check(&mut ctx, cli, script, scene.as_deref()),
        Command::Build { script, scene, out } => build(&mut ctx, cli, script, scene, out),
        Command::Run {
            script,
            scene,
            out,
            fps,
        } => run_frames(&mut ctx, cli, script, scene, out, *fps),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Diagnostics) => EXIT_DIAGNOSTICS,
        Err(Failure::Doc(e)) => {
            let _ = writeln!(ctx.stderr, "{e}");
            EXIT_DIAGNOSTICS
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(ctx.stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}
