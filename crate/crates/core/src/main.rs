use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use thickfold::document::WeightStrategy;
use thickfold::exec::Exec;
use thickfold::export::{folded_obj, layout_svg, solid_obj, thickened_json};
use thickfold::geometry::Tolerance;
use thickfold::pattern::{parse_pattern, PatternDocument};
use thickfold::pipeline::{thicken, validate, ScaleRequest, ThickenOptions, Thickened};
use thickfold::solidify::{apply_thickness, check_solid_local, max_thickness, ThicknessConfig};
use thickfold::thickener::check_folded_intersections;
use thickfold::Result;

#[derive(Parser)]
#[command(name = "thickfold", version, about = "Thicken flat-foldable crease patterns")]
struct Cli {
    /// Absolute and relative geometric tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    /// Run pairwise checks on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the input describes a valid flat folded state.
    Validate { input: PathBuf },
    /// Write the thickened crease pattern as JSON.
    Thicken(Run),
    /// Write the folded state with separated layers as OBJ.
    Fold(Run),
    /// Write thick panels as OBJ.
    Solidify {
        #[command(flatten)]
        run: Run,
        /// Panel thickness.
        #[arg(long)]
        thickness: f64,
        /// Fraction of the thickness on the front of the paper.
        #[arg(long, default_value_t = 0.5)]
        split: f64,
        /// Leave out the relief strips.
        #[arg(long, hide = true)]
        no_relief: bool,
    },
    /// Write a drawing (SVG) or mesh (OBJ) of the result.
    Export {
        #[command(flatten)]
        run: Run,
        #[arg(long, value_enum)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Obj,
}

#[derive(Args)]
struct Run {
    input: PathBuf,
    /// Scale as a fraction of the upper bound.
    #[arg(long, conflicts_with = "scale")]
    scale_fraction: Option<f64>,
    /// Absolute scale.
    #[arg(long)]
    scale: Option<f64>,
    /// `auto` or a JSON file of weights.
    #[arg(long, default_value = "auto")]
    weights: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

struct Ctx {
    tol: Tolerance,
    exec: Exec,
}

fn read_doc(path: &Path) -> Result<PatternDocument> {
    parse_pattern(&fs::read_to_string(path)?)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run_thicken(ctx: &Ctx, run: &Run) -> Result<(PatternDocument, Thickened)> {
    let doc = read_doc(&run.input)?;
    let weights = match run.weights.as_str() {
        "auto" => None,
        path => Some(WeightStrategy::from_json(&fs::read_to_string(path)?)?),
    };
    let scale = match (run.scale_fraction, run.scale) {
        (_, Some(s)) => ScaleRequest::Absolute(s),
        (Some(f), None) => ScaleRequest::Fraction(f),
        (None, None) => ScaleRequest::default(),
    };
    let opts = ThickenOptions {
        scale,
        weights,
        tolerance: ctx.tol,
        exec: ctx.exec,
    };
    let th = thicken(&doc, &opts)?;
    eprintln!("scale upper bound  {}", th.bound.s_star);
    eprintln!("scale              {}", th.scale);
    eprintln!("strips             {}", doc.pattern.creases().count());
    eprintln!("holes              {}", th.layout.holes().count());
    for e in doc.pattern.creases() {
        eprintln!("  crease {e:<4} width {}", th.flat.widths.get(e));
    }
    Ok((doc, th))
}

fn execute(ctx: &Ctx, command: &Command) -> Result<u8> {
    match command {
        Command::Validate { input } => {
            let doc = read_doc(input)?;
            let v = validate(&doc, &ctx.tol, ctx.exec);
            print!("{}", v.summary());
            Ok(if v.passed() { 0 } else { 1 })
        }
        Command::Thicken(run) => {
            let (doc, th) = run_thicken(ctx, run)?;
            write_out(run.output.as_deref(), &thickened_json(&doc, &th))?;
            Ok(0)
        }
        Command::Fold(run) => {
            let (_, th) = run_thicken(ctx, run)?;
            eprint!("{}", check_folded_intersections(&th.folded, &ctx.tol, ctx.exec));
            write_out(run.output.as_deref(), &folded_obj(&th.folded))?;
            Ok(0)
        }
        Command::Solidify {
            run,
            thickness,
            split,
            no_relief,
        } => {
            let (doc, th) = run_thicken(ctx, run)?;
            if let Some((t_max, _)) = max_thickness(&th.flat.widths, th.scale) {
                eprintln!("max thickness      {t_max}");
            }
            let cfg = ThicknessConfig {
                t: *thickness,
                split: *split,
                relief: !no_relief,
            };
            let sm = apply_thickness(&doc.pattern, &th.flat, &th.construction, &th.layout, &th.folded, &cfg)?;
            let report = check_solid_local(&doc.pattern, &sm, &ctx.tol, ctx.exec);
            eprintln!("solids             {}", sm.solids.len());
            eprint!("{report}");
            write_out(run.output.as_deref(), &solid_obj(&sm))?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Export { run, format } => {
            let (doc, th) = run_thicken(ctx, run)?;
            let text = match format {
                Format::Svg => layout_svg(&doc.pattern, &th.layout, &th.flat.widths, &th.flat.assignment),
                Format::Obj => folded_obj(&th.folded),
            };
            write_out(run.output.as_deref(), &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match Tolerance::new(cli.tolerance, cli.tolerance) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match execute(&Ctx { tol, exec }, &cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
