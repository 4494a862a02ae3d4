use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use biglide::dataset::MechanismDataset;
use biglide::modal::DEFAULT_ELEMENTS;
use biglide::spatial::Vec3;
use biglide::sweep::{
    alpha_grid, alpha_sweep, frequency_map, stiffness_map, trend_report, LinkModel, ModelKind, Station, StationSet,
    SweepOptions, SweepRecord, DEFAULT_GRID, DEFAULT_SHRINK,
};
use biglide_cli::dataset_file::{dataset_to_string, load_dataset, read_dataset, BUILT_IN};
use biglide_cli::records::{emit_csv, write_csv};
use biglide_cli::IoError;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Stiffness and vibration maps of a two-rail planar parallel mechanism.
#[derive(Parser, Debug)]
#[command(name = "biglide", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Deflections under 1 kN loads along the workspace.
    StiffnessMap(MapArgs),
    /// First two natural frequencies along the workspace.
    FrequencyMap(MapArgs),
    /// Leg-length scaling study at fixed stroke.
    AlphaSweep(SweepArgs),
    /// Checks a dataset and lists the repairs it needs.
    Validate(DatasetArg),
    /// Prints a dataset in the file format.
    ShowDataset(DatasetArg),
}

#[derive(Args, Debug)]
struct DatasetArg {
    /// Dataset file, or `ifw` for the built-in one.
    #[arg(long, default_value = BUILT_IN)]
    dataset: String,
}

#[derive(Args, Debug)]
struct Common {
    #[command(flatten)]
    dataset: DatasetArg,
    /// Rigid elements per leg in the refined modal model.
    #[arg(long, default_value_t = DEFAULT_ELEMENTS)]
    elements: usize,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    tool_compliance: Switch,
    /// Where the refined stiffness model takes its output point.
    #[arg(long, value_enum, default_value_t = ToolPoint::Hinge)]
    tool_point: ToolPoint,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MapArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Model::Simplified)]
    model: Model,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    /// Leg compliances for the refined stiffness model.
    #[arg(long, value_enum, default_value_t = Links::Appendix)]
    links: Links,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = SweepModel::All)]
    model: SweepModel,
    #[arg(long, default_value_t = 0.7)]
    alpha_min: f64,
    #[arg(long, default_value_t = 1.3)]
    alpha_max: f64,
    #[arg(long, default_value_t = 0.1)]
    alpha_step: f64,
    /// Comma-separated subset of left, center, right.
    #[arg(long, value_delimiter = ',', default_value = "left,center,right")]
    stations: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Model {
    Simplified,
    Refined,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SweepModel {
    Simplified,
    Refined,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Switch {
    On,
    Off,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ToolPoint {
    /// The common joint of the two legs.
    Hinge,
    /// One tool length below the joint, along -z.
    ToolTip,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Links {
    Appendix,
    Beam,
}

fn options(c: &Common, ds: &MechanismDataset) -> SweepOptions {
    SweepOptions {
        elements: c.elements,
        tool_compliance: c.tool_compliance == Switch::On,
        tool_offset: match c.tool_point {
            ToolPoint::Hinge => Vec3::ZERO,
            ToolPoint::ToolTip => Vec3::new(0.0, 0.0, -ds.geometry.l_tool),
        },
        ..SweepOptions::default()
    }
}

fn output(records: &[SweepRecord], out: &Option<PathBuf>) -> Result<(), IoError> {
    match out {
        Some(path) => emit_csv(records, path),
        None => write_csv(records, std::io::stdout().lock()),
    }
}

fn load(arg: &DatasetArg) -> Result<MechanismDataset, IoError> {
    let (ds, report) = load_dataset(&arg.dataset)?;
    for note in &report.notes {
        eprintln!("note: {note}");
    }
    Ok(ds)
}

fn run(cli: Cli) -> Result<(), IoError> {
    match cli.command {
        Command::StiffnessMap(a) => {
            let ds = load(&a.common.dataset)?;
            let opts = SweepOptions {
                grid: a.grid,
                link_model: match a.links {
                    Links::Appendix => LinkModel::Appendix,
                    Links::Beam => LinkModel::EquivalentBeam,
                },
                ..options(&a.common, &ds)
            };
            let model = match a.model {
                Model::Simplified => ModelKind::SimplifiedStiffness,
                Model::Refined => ModelKind::RefinedStiffness,
            };
            output(&stiffness_map(&ds, model, &opts)?, &a.common.out)
        }
        Command::FrequencyMap(a) => {
            let ds = load(&a.common.dataset)?;
            let opts = SweepOptions {
                grid: a.grid,
                shrink: DEFAULT_SHRINK,
                ..options(&a.common, &ds)
            };
            let model = match a.model {
                Model::Simplified => ModelKind::SimplifiedModal,
                Model::Refined => ModelKind::RefinedModal,
            };
            output(&frequency_map(&ds, model, &opts)?, &a.common.out)
        }
        Command::AlphaSweep(a) => {
            let ds = load(&a.common.dataset)?;
            let alphas = alpha_grid(a.alpha_min, a.alpha_max, a.alpha_step);
            if alphas.is_empty() {
                return Err(IoError::Validation("empty alpha grid".into()));
            }
            let stations = a
                .stations
                .iter()
                .map(|s| Station::from_name(s).ok_or_else(|| IoError::Validation(format!("unknown station {s:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let models: &[ModelKind] = match a.model {
                SweepModel::Simplified => &[ModelKind::SimplifiedStiffness, ModelKind::SimplifiedModal],
                SweepModel::Refined => &[ModelKind::RefinedStiffness, ModelKind::RefinedModal],
                SweepModel::All => &ModelKind::ALL,
            };
            let records = alpha_sweep(&ds, &alphas, &StationSet { stations }, models, &options(&a.common, &ds))?;
            for v in trend_report(&records) {
                let station = v.station.map_or("", |s| s.name());
                eprintln!("trend {} {}@{}: {}", v.model.name(), v.metric, station, v.trend.name());
            }
            output(&records, &a.common.out)
        }
        Command::Validate(a) => {
            let ds = read_dataset(&a.dataset)?;
            match ds.validate() {
                Ok(report) => {
                    let mut out = std::io::stdout().lock();
                    let _ = writeln!(out, "{}: valid", ds.name);
                    for n in report.notes {
                        let _ = writeln!(out, "  {n}");
                    }
                    Ok(())
                }
                Err(e) => Err(IoError::Validation(e.to_string())),
            }
        }
        Command::ShowDataset(a) => {
            let ds = read_dataset(&a.dataset)?;
            print!("{}", dataset_to_string(&ds));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
