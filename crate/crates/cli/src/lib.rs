//! Command-line front end. [`run`] takes its streams explicitly so tests
//! can drive it in-process.

pub mod bob;
pub mod document;

use std::fmt;
use std::fs::File;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use threebox::classical::{ClassicalGame, ObservedBox, Side, SimplifiedVariant, SuitSearch, UNIFORM_BOXES};
use threebox::scenarios::{ScenarioId, SPIN_DOWN_IN_A, SPIN_UP_IN_A};
use threebox::twostate::{meter_mean, weak_value};
use threebox::{discriminator_table, enumerate_exact, monte_carlo, GameModel, QuantumGame};

pub use document::{ExactValue, MonteCarloSection, OutputDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "threebox", version, about = "Three-box experiment and its classical look-alikes, exact and Monte Carlo")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pre- and post-selected quantum scenario.
    Quantum(QuantumArgs),
    /// One of the classical card or ball games.
    Classical(ClassicalArgs),
    /// Post-selection rates with and without the intermediate observation.
    Compare(CompareArgs),
    /// Weak values and post-selected Gaussian meter means over couplings.
    Weak(WeakArgs),
    /// Play Bob against Alice's post-selection.
    Bob(BobArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Mc,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SamplingArgs {
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    #[arg(long, default_value_t = 100_000)]
    runs: u64,
    /// Generated and reported when omitted.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScenarioArg {
    ThreeBox,
    SpinBox,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    A,
    B,
    C,
    Up,
    Down,
    None,
}

#[derive(Debug, Args)]
struct QuantumArgs {
    #[arg(long, value_enum, default_value = "three-box")]
    scenario: ScenarioArg,
    #[arg(long, value_enum, default_value = "none", ignore_case = true)]
    measure: MeasureArg,
    #[command(flatten)]
    sampling: SamplingArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GameArg {
    Kirkpatrick,
    Simplified,
    LeiferSpekkens,
    MoveGame,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchArg {
    S,
    D,
    Left,
    Right,
    Box1,
    Box2,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Faithful,
    Literal,
}

#[derive(Debug, Args)]
struct ClassicalArgs {
    #[arg(long, value_enum)]
    game: GameArg,
    /// Defaults to S, left or box1 depending on the game.
    #[arg(long, value_enum, ignore_case = true)]
    search: Option<SearchArg>,
    /// Simplified game only.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    #[command(flatten)]
    sampling: SamplingArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    sampling: SamplingArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WeakArgs {
    #[arg(long, value_enum, default_value = "three-box")]
    scenario: ScenarioArg,
    /// Projector to read; all of the scenario's projectors when omitted.
    #[arg(long, value_enum, ignore_case = true)]
    measure: Option<MeasureArg>,
    /// Meter width.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Coupling strengths to sweep.
    #[arg(long = "coupling", value_delimiter = ',', default_values_t = vec![0.01, 0.1, 0.5, 1.0, 2.0, 5.0])]
    couplings: Vec<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct BobArgs {
    #[arg(long, default_value_t = 18)]
    rounds: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Internal(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Internal(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<threebox::Error> for CliError {
    fn from(e: threebox::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

/// Terminal streams handed to [`run`].
pub struct Io<'a> {
    pub input: &'a mut dyn BufRead,
    /// Whether `input` is a live terminal; `bob` falls back to a scripted
    /// strategy otherwise.
    pub interactive: bool,
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and executes the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, io: Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { io.err } else { io.out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, io.input, io.interactive, io.out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(io.err, "{e}");
            match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Internal(_) => EXIT_INTERNAL,
            }
        }
    }
}

fn execute(command: Command, input: &mut dyn BufRead, interactive: bool, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Quantum(args) => {
            let doc = cmd_quantum(&args)?;
            emit(&doc, args.output.format, args.output.out.as_ref(), out)
        }
        Command::Classical(args) => {
            let doc = cmd_classical(&args)?;
            emit(&doc, args.output.format, args.output.out.as_ref(), out)
        }
        Command::Compare(args) => {
            let doc = cmd_compare(&args.sampling)?;
            if args.format == Format::Text {
                let mut sink = open_sink(args.out.as_ref(), out)?;
                write_compare_table(&doc, sink.as_mut())?;
                return Ok(());
            }
            emit(&doc, args.format, args.out.as_ref(), out)
        }
        Command::Weak(args) => {
            let doc = cmd_weak(&args)?;
            emit(&doc, args.output.format, args.output.out.as_ref(), out)
        }
        Command::Bob(args) => {
            let seed = args.seed.unwrap_or_else(rand::random);
            let script: Option<&mut dyn BufRead> = if interactive { Some(input) } else { None };
            let session = bob::play_session(seed, args.rounds, script, out)?;
            let mut sink = open_sink(args.out.as_ref(), out)?;
            match args.format {
                Format::Text => session.write_summary(sink.as_mut())?,
                Format::Json => session.document().write_json(sink.as_mut())?,
                Format::Csv => session.document().write_csv(sink.as_mut())?,
            }
            sink.flush()?;
            Ok(())
        }
    }
}

fn open_sink<'a>(path: Option<&PathBuf>, out: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, CliError> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).map_err(|e| CliError::Internal(format!("{}: {e}", p.display())))?),
        None => Box::new(out),
    })
}

fn emit(doc: &OutputDocument, format: Format, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<(), CliError> {
    let mut sink = open_sink(path, out)?;
    match format {
        Format::Json => doc.write_json(sink.as_mut())?,
        Format::Csv => doc.write_csv(sink.as_mut())?,
        Format::Text => doc.write_text(sink.as_mut())?,
    }
    sink.flush()?;
    Ok(())
}

fn scenario_id(arg: ScenarioArg) -> ScenarioId {
    match arg {
        ScenarioArg::ThreeBox => ScenarioId::ThreeBox,
        ScenarioArg::SpinBox => ScenarioId::SpinBox,
    }
}

/// Projector name for `measure` in `scenario`, `None` for no observation.
fn projector_name(scenario: ScenarioId, measure: MeasureArg) -> Result<Option<&'static str>, CliError> {
    match (scenario, measure) {
        (_, MeasureArg::None) => Ok(None),
        (ScenarioId::ThreeBox, MeasureArg::A) => Ok(Some("A")),
        (ScenarioId::ThreeBox, MeasureArg::B) => Ok(Some("B")),
        (ScenarioId::ThreeBox, MeasureArg::C) => Ok(Some("C")),
        (ScenarioId::SpinBox, MeasureArg::Up) => Ok(Some(SPIN_UP_IN_A)),
        (ScenarioId::SpinBox, MeasureArg::Down) => Ok(Some(SPIN_DOWN_IN_A)),
        (s, m) => Err(CliError::Usage(format!(
            "--measure {} is not available for {s} (three-box: A, B, C, none; spin-box: up, down, none)",
            m.to_possible_value().unwrap().get_name()
        ))),
    }
}

fn sample_into(doc: &mut OutputDocument, game: &dyn GameModel, sampling: &SamplingArgs) -> Result<(), CliError> {
    if sampling.mode == Mode::Mc {
        if sampling.runs == 0 {
            return Err(CliError::Usage("--runs must be at least 1".into()));
        }
        let seed = sampling.seed.unwrap_or_else(rand::random);
        let stats = monte_carlo(game, sampling.runs, seed)?;
        doc.parameters.insert("seed".into(), seed.to_string());
        doc.parameters.insert("runs".into(), sampling.runs.to_string());
        doc.monte_carlo = Some(MonteCarloSection::from_stats(&stats));
    }
    Ok(())
}

fn add_exact(doc: &mut OutputDocument, game: &dyn GameModel) {
    let exact = enumerate_exact(game);
    for (record, p) in &exact.outcomes {
        doc.exact.insert(record.event_name().to_owned(), (*p).into());
    }
    doc.exact.insert("p_post".into(), exact.p_post().into());
    if let Some(p) = exact.p_found() {
        doc.exact.insert("p_found".into(), p.into());
    }
    if let Some(p) = exact.p_found_given_post() {
        doc.exact.insert("found_given_post".into(), p.into());
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Exact => "exact",
        Mode::Mc => "mc",
    }
}

fn cmd_quantum(args: &QuantumArgs) -> Result<OutputDocument, CliError> {
    let id = scenario_id(args.scenario);
    let observe = projector_name(id, args.measure)?;
    let game = QuantumGame::new(id, observe)?;
    let mut doc = OutputDocument::new(id.name())
        .param("measure", observe.unwrap_or("none"))
        .param("mode", mode_name(args.sampling.mode));
    add_exact(&mut doc, &game);
    if id == ScenarioId::ThreeBox {
        let scenario = game.scenario();
        for (name, p) in &scenario.projectors {
            let wv = weak_value(&scenario.tsv, p)?;
            doc.exact.insert(format!("weak_value.{name}"), ExactValue::Decimal(wv.re));
        }
    }
    sample_into(&mut doc, &game, &args.sampling)?;
    Ok(doc)
}

fn classical_game(args: &ClassicalArgs) -> Result<ClassicalGame, CliError> {
    let bad_search = |s: SearchArg| {
        CliError::Usage(format!(
            "--search {} is not valid for {}",
            s.to_possible_value().unwrap().get_name(),
            args.game.to_possible_value().unwrap().get_name()
        ))
    };
    if args.variant.is_some() && args.game != GameArg::Simplified {
        return Err(CliError::Usage("--variant applies to the simplified game only".into()));
    }
    let suit = |s: Option<SearchArg>| match s.unwrap_or(SearchArg::S) {
        SearchArg::S => Ok(Some(SuitSearch::Spades)),
        SearchArg::D => Ok(Some(SuitSearch::Diamonds)),
        SearchArg::None => Ok(None),
        other => Err(bad_search(other)),
    };
    Ok(match args.game {
        GameArg::Kirkpatrick => ClassicalGame::Kirkpatrick { search: suit(args.search)? },
        GameArg::Simplified => ClassicalGame::Simplified {
            search: suit(args.search)?,
            variant: match args.variant.unwrap_or(VariantArg::Faithful) {
                VariantArg::Faithful => SimplifiedVariant::Faithful,
                VariantArg::Literal => SimplifiedVariant::LiteralText,
            },
        },
        GameArg::LeiferSpekkens => ClassicalGame::LeiferSpekkens {
            search: match args.search.unwrap_or(SearchArg::Left) {
                SearchArg::Left => Some(Side::Left),
                SearchArg::Right => Some(Side::Right),
                SearchArg::None => None,
                other => return Err(bad_search(other)),
            },
        },
        GameArg::MoveGame => ClassicalGame::MoveGame {
            observe: match args.search.unwrap_or(SearchArg::Box1) {
                SearchArg::Box1 => Some(ObservedBox::Box1),
                SearchArg::Box2 => Some(ObservedBox::Box2),
                SearchArg::None => None,
                other => return Err(bad_search(other)),
            },
            initial: UNIFORM_BOXES,
        },
    })
}

fn cmd_classical(args: &ClassicalArgs) -> Result<OutputDocument, CliError> {
    let game = classical_game(args)?;
    let search = match args.search {
        Some(s) => s.to_possible_value().unwrap().get_name().to_owned(),
        None => match args.game {
            GameArg::Kirkpatrick | GameArg::Simplified => "s",
            GameArg::LeiferSpekkens => "left",
            GameArg::MoveGame => "box1",
        }
        .to_owned(),
    };
    let mut doc = OutputDocument::new(game.name())
        .param("search", search)
        .param("mode", mode_name(args.sampling.mode));
    if let ClassicalGame::Simplified { variant, .. } = game {
        doc = doc.param(
            "variant",
            match variant {
                SimplifiedVariant::Faithful => "faithful",
                SimplifiedVariant::LiteralText => "literal",
            },
        );
    }
    add_exact(&mut doc, &game);
    sample_into(&mut doc, &game, &args.sampling)?;
    Ok(doc)
}

const COMPARE_COLUMNS: [&str; 3] = ["post_without_observation", "post_with_observation", "found_given_post"];

fn cmd_compare(sampling: &SamplingArgs) -> Result<OutputDocument, CliError> {
    let mut doc = OutputDocument::new("compare").param("mode", mode_name(sampling.mode));
    for row in discriminator_table() {
        let name = row.system.name();
        doc.exact.insert(format!("{name}.{}", COMPARE_COLUMNS[0]), row.post_without_observation.into());
        doc.exact.insert(format!("{name}.{}", COMPARE_COLUMNS[1]), row.post_with_observation.into());
        if let Some(p) = row.found_given_post {
            doc.exact.insert(format!("{name}.{}", COMPARE_COLUMNS[2]), p.into());
        }
    }
    if sampling.mode == Mode::Mc {
        if sampling.runs == 0 {
            return Err(CliError::Usage("--runs must be at least 1".into()));
        }
        let seed = sampling.seed.unwrap_or_else(rand::random);
        let mut section = MonteCarloSection::new(sampling.runs, seed);
        for system in threebox::System::ALL {
            let name = system.name();
            let without = monte_carlo(system.model(false).as_ref(), sampling.runs, seed)?;
            let with = monte_carlo(system.model(true).as_ref(), sampling.runs, seed)?;
            section.push_estimate(&format!("{name}.{}", COMPARE_COLUMNS[0]), &without.post);
            section.push_estimate(&format!("{name}.{}", COMPARE_COLUMNS[1]), &with.post);
            if let Some(est) = &with.found_given_post {
                section.push_estimate(&format!("{name}.{}", COMPARE_COLUMNS[2]), est);
            }
        }
        doc.parameters.insert("seed".into(), seed.to_string());
        doc.parameters.insert("runs".into(), sampling.runs.to_string());
        doc.monte_carlo = Some(section);
    }
    Ok(doc)
}

fn write_compare_table(doc: &OutputDocument, out: &mut dyn Write) -> Result<(), CliError> {
    let headers = ["system", "P(post | no observation)", "P(post | observation)", "P(found | post)"];
    let mut rows = vec![headers.map(str::to_owned).to_vec()];
    for system in threebox::System::ALL {
        let mut row = vec![system.name().to_owned()];
        for column in COMPARE_COLUMNS {
            let key = format!("{}.{column}", system.name());
            let mut cell = doc.exact.get(&key).map(ExactValue::render).unwrap_or_else(|| "-".into());
            if let Some(f) = doc.monte_carlo.as_ref().and_then(|m| m.frequencies.get(&key)) {
                cell.push_str(&format!(" | mc {f:.4}"));
            }
            row.push(cell);
        }
        rows.push(row);
    }
    let widths: Vec<usize> = (0..headers.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    for row in &rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell}{}", " ".repeat(w - cell.chars().count())))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end())?;
    }
    if let Some(m) = &doc.monte_carlo {
        writeln!(out, "runs = {}, seed = {}", m.runs, m.seed)?;
    }
    Ok(())
}

fn cmd_weak(args: &WeakArgs) -> Result<OutputDocument, CliError> {
    let id = scenario_id(args.scenario);
    if !(args.sigma.is_finite() && args.sigma > 0.0) {
        return Err(CliError::Usage("--sigma must be positive".into()));
    }
    if let Some(g) = args.couplings.iter().find(|g| !(g.is_finite() && **g > 0.0)) {
        return Err(CliError::Usage(format!("--coupling {g} must be positive")));
    }
    let game = QuantumGame::new(id, None)?;
    let scenario = game.scenario();
    let names: Vec<&str> = match args.measure {
        Some(m) => vec![projector_name(id, m)?.ok_or_else(|| CliError::Usage("--measure none has no weak value".into()))?],
        None => scenario.projectors.keys().map(String::as_str).collect(),
    };
    let mut doc = OutputDocument::new(id.name()).param("sigma", args.sigma).param(
        "couplings",
        args.couplings.iter().map(f64::to_string).collect::<Vec<_>>().join(","),
    );
    for name in names {
        let p = &scenario.projectors[name];
        let wv = weak_value(&scenario.tsv, p)?;
        doc.exact.insert(format!("{name}.weak_value"), ExactValue::Decimal(wv.re));
        for &g in &args.couplings {
            let mean = meter_mean(&scenario.tsv, p, g, args.sigma)?;
            doc.exact.insert(format!("{name}.meter_mean.g={g}"), ExactValue::Decimal(mean));
            doc.exact.insert(format!("{name}.meter_mean_over_g.g={g}"), ExactValue::Decimal(mean / g));
        }
    }
    Ok(doc)
}
