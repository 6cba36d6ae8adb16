use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use shield_tilings::angle::AlphaSpec;
use shield_tilings::atlas::{exceptional_alphas_with, Atlas};
use shield_tilings::classify::classify;
use shield_tilings::enumerate::{count_patterns, dodecagon_fillings, SearchOptions, DEFAULT_BUDGET};
use shield_tilings::format::{read_patch, write_patch};
use shield_tilings::generators::{
    gen_dodecagon_tiling, gen_line_tiling, gen_triangle_tiling, DodecagonChoice, OrientationWord, TriangleOrder,
};
use shield_tilings::render::{render_svg, RenderStyle};
use shield_tilings::root::{disk_radius_root, roots_in_unit_interval, PACKING_ALPHA_DEG};

#[derive(Parser)]
#[command(name = "shield", version, about = "Tilings by unit triangles and shields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex configurations for one α (`generic`, `s/t` for sπ/t, or degrees).
    Atlas {
        #[arg(long)]
        alpha: AlphaSpec,
    },
    /// The α values where extra vertex configurations close.
    Exceptional {
        /// Also list α = π/2.
        #[arg(long)]
        include_right: bool,
    },
    /// Write a window of a known tiling as SHIELD/1.
    Generate {
        #[command(subcommand)]
        family: Family,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Identify the family of a patch.
    Classify { file: PathBuf },
    /// Count vertex-centred balls of radius n (P_n).
    Enumerate {
        #[arg(long)]
        alpha: AlphaSpec,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Extra radius a ball must extend to before it is counted.
        #[arg(long, default_value_t = 1.0)]
        lookahead: f64,
        /// Seconds.
        #[arg(long)]
        time_limit: Option<u64>,
        #[arg(long)]
        no_pruning: bool,
        /// Print the canonical key of every pattern.
        #[arg(long)]
        keys: bool,
    },
    /// The fillings of the unit dodecagon by right shields and triangles.
    Fillings,
    /// Draw a patch.
    Render {
        file: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
        /// Mark interior vertices by configuration.
        #[arg(long)]
        markers: bool,
    },
    /// The packing radius r ≈ 0.54.
    Root,
}

#[derive(Subcommand)]
enum Family {
    Line {
        /// Orientation word over + and -, e.g. `+-+`.
        #[arg(long, allow_hyphen_values = true)]
        word: OrientationWord,
        #[arg(long, default_value_t = 4)]
        extent: usize,
        #[arg(long, default_value = "generic")]
        alpha: AlphaSpec,
    },
    Triangle {
        /// A non-negative integer or `inf`.
        #[arg(long)]
        order: TriangleOrder,
        #[arg(long, default_value_t = 4)]
        extent: usize,
        #[arg(long, default_value = "generic")]
        alpha: AlphaSpec,
    },
    Dodecagon {
        /// Index into the list printed by `fillings`.
        #[arg(long, default_value_t = 0)]
        filling: usize,
        #[arg(long, default_value_t = 2)]
        extent: usize,
    },
}

/// Everything printed to stdout is collected first and written once.
fn run(cli: Cli, out: &mut String) -> Result<ExitCode, String> {
    macro_rules! say {
        ($($t:tt)*) => { writeln!(out, $($t)*).unwrap() };
    }
    match cli.command {
        Command::Atlas { alpha } => {
            let atlas = Atlas::new(alpha);
            say!("alpha {alpha}: {} count triples, {} configurations", atlas.counts().len(), atlas.configs().len());
            for c in atlas.configs() {
                match c.name() {
                    Some(name) => say!("{c} {} {name}", c.counts()),
                    None => say!("{c} {}", c.counts()),
                }
            }
        }
        Command::Exceptional { include_right } => {
            for e in exceptional_alphas_with(include_right) {
                let w: Vec<String> = e.witnesses.iter().map(|c| c.to_string()).collect();
                let deg = e.alpha.radians().unwrap_or_default().to_degrees();
                say!("{} ({deg:.4}°) {}", e.alpha, w.join(" "));
            }
        }
        Command::Generate { family, out: dest } => {
            let patch = match family {
                Family::Line { word, extent, alpha } => gen_line_tiling(&word, extent, alpha),
                Family::Triangle { order, extent, alpha } => gen_triangle_tiling(order, extent, alpha),
                Family::Dodecagon { filling, extent } => {
                    gen_dodecagon_tiling(&DodecagonChoice::constant(filling), extent).map_err(|e| e.to_string())?
                }
            };
            let text = write_patch(&patch);
            match dest {
                Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => out.push_str(&text),
            }
        }
        Command::Classify { file } => {
            let patch = load(&file)?;
            let verdict = classify(&patch);
            say!("{verdict}");
            if !verdict.is_conclusive() {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Enumerate { alpha, radius, budget, lookahead, time_limit, no_pruning, keys } => {
            let opts = SearchOptions {
                budget,
                time_limit: time_limit.map(Duration::from_secs),
                pruning: !no_pruning,
                lookahead,
            };
            let count = count_patterns(radius, alpha, &opts).map_err(|e| e.to_string())?;
            say!("P_n = {}", count.count);
            say!("alpha {alpha}, n {radius}, {} nodes", count.nodes);
            if keys {
                for k in &count.patterns {
                    say!("{k}");
                }
            }
        }
        Command::Fillings => {
            for (i, f) in dodecagon_fillings().iter().enumerate() {
                say!("# filling {i}");
                out.push_str(&write_patch(&f.patch));
                say!();
            }
        }
        Command::Render { file, svg, scale, markers } => {
            if scale <= 0.0 {
                return Err("scale must be positive".into());
            }
            let patch = load(&file)?;
            let style = RenderStyle { scale, vertex_markers: markers, ..RenderStyle::default() };
            fs::write(&svg, render_svg(&patch, &style)).map_err(|e| format!("{}: {e}", svg.display()))?;
        }
        Command::Root => {
            let r = disk_radius_root();
            say!("r = {:.12}", r.value);
            say!("|P(r)| = {:.3e}", r.residual);
            say!("alpha ≈ {PACKING_ALPHA_DEG}°");
            let all: Vec<String> = roots_in_unit_interval().iter().map(|r| format!("{:.9}", r.value)).collect();
            say!("roots in (0,1): {}", all.join(" "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Read and validate a SHIELD/1 file.
fn load(path: &PathBuf) -> Result<shield_tilings::patch::Patch, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let patch = read_patch(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let report = patch.validate();
    if !report.is_valid() {
        return Err(format!("{}: invalid patch\n{report}", path.display()));
    }
    Ok(patch)
}

fn main() -> ExitCode {
    let mut out = String::new();
    let result = run(Cli::parse(), &mut out);
    // a closed pipe (e.g. `| head`) is not an error
    let _ = std::io::stdout().write_all(out.as_bytes());
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
