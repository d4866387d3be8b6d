//! `breathline` command-line surface.
//!
//! Exit codes: 0 success (a "no-estimate" result included), 1 usage error, 2 I/O error,
//! 3 data-format error.

use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde::{Deserialize, Serialize};

use crate::audio::{
    frames_covered, label_audio_traced, wav, BandpassSpec, ConsistencySpec, LabelingConfig,
    WindowStatistic,
};
use crate::detector::{
    detect_frames, features_of, load_external_predictions, read_frames_dir, train_linear_rows,
    BrightnessBaseline, Detector, LinearModel, TrainParams,
};
use crate::domain::{
    read_labels_csv, render_labels_csv, states, LabeledFrame, RespirationEstimate,
};
use crate::evaluate::{
    krippendorff_alpha_interval, percent_agreement, relative_error, relative_error_values,
    weighted_report, ErrorReport, RaterMatrix, WeightedReport,
};
use crate::manifest::{sidecar_path, RunManifest};
use crate::simulate::{generate, ScenarioConfig};
use crate::tracker::{predict_respiration_rate_with, TrackerOptions};
use crate::{Error, Result, DEFAULT_FPS};

pub const LOG_ENV: &str = "BREATHLINE_LOG";

#[derive(Debug, Parser)]
#[command(
    name = "breathline",
    version,
    about = "Respiration-rate estimation from exhalation evidence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a ground-truth scenario (WAV, PGM frames, truth labels and transitions).
    Simulate(SimulateArgs),
    /// Label frames from a mono WAV file.
    Label(LabelArgs),
    /// Estimate the respiration rate of a label stream.
    Track(TrackArgs),
    /// Train the linear frame detector.
    Train(TrainArgs),
    /// Label frames with a detector, or convert external predictions.
    Detect(DetectArgs),
    /// Compute classification, reliability and relative-error metrics.
    Eval(EvalArgs),
    /// Simulate, label, track and compare against ground truth.
    E2e(E2eArgs),
}

#[derive(Debug, Args, Clone, Default)]
pub struct ScenarioOverrides {
    /// Scenario config JSON; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub rate_bpm: Option<f64>,
    #[arg(long)]
    pub duration_s: Option<f64>,
    #[arg(long)]
    pub period_jitter_frac: Option<f64>,
    #[arg(long)]
    pub label_lag_frames: Option<usize>,
}

impl ScenarioOverrides {
    pub fn resolve(&self) -> Result<ScenarioConfig> {
        let mut cfg = match &self.config {
            Some(path) => ScenarioConfig::load(path)?,
            None => ScenarioConfig::default(),
        };
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.rate_bpm {
            cfg.rate_bpm = v;
        }
        if let Some(v) = self.duration_s {
            cfg.duration_s = v;
        }
        if let Some(v) = self.period_jitter_frac {
            cfg.period_jitter_frac = v;
        }
        if let Some(v) = self.label_lag_frames {
            cfg.label_lag_frames = v;
        }
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub scenario: ScenarioOverrides,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Band {
    /// 325-600 Hz
    Wide,
    /// 400-600 Hz
    Narrow,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StatisticArg {
    PeakAbs,
    Rms,
}

#[derive(Debug, Args, Clone, Default)]
pub struct LabelingFlags {
    /// Labeling config JSON ({bandpass, threshold, consistency}); flags override its values.
    #[arg(long)]
    pub labeling_config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub band: Option<Band>,
    #[arg(long)]
    pub low_hz: Option<f64>,
    #[arg(long)]
    pub high_hz: Option<f64>,
    #[arg(long)]
    pub taps: Option<usize>,
    /// Amplitude threshold (presets: 0.009, 0.01, 0.0125).
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long, value_enum)]
    pub statistic: Option<StatisticArg>,
    /// Consistency radius in frames (0 disables smoothing).
    #[arg(long)]
    pub delta: Option<usize>,
}

impl LabelingFlags {
    pub fn resolve(&self) -> Result<LabelingConfig> {
        let mut cfg = match &self.labeling_config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                serde_json::from_str(&text)
                    .map_err(|e| Error::parse(path.display().to_string(), e.line(), e))?
            }
            None => LabelingConfig::default(),
        };
        match self.band {
            Some(Band::Wide) => {
                cfg.bandpass = BandpassSpec {
                    taps: cfg.bandpass.taps,
                    ..BandpassSpec::wide()
                }
            }
            Some(Band::Narrow) => {
                cfg.bandpass = BandpassSpec {
                    taps: cfg.bandpass.taps,
                    ..BandpassSpec::narrow()
                }
            }
            None => {}
        }
        if let Some(v) = self.low_hz {
            cfg.bandpass.low_hz = v;
        }
        if let Some(v) = self.high_hz {
            cfg.bandpass.high_hz = v;
        }
        if let Some(v) = self.taps {
            cfg.bandpass.taps = v;
        }
        if let Some(v) = self.threshold {
            cfg.threshold.threshold = v;
        }
        match self.statistic {
            Some(StatisticArg::PeakAbs) => cfg.threshold.statistic = WindowStatistic::PeakAbs,
            Some(StatisticArg::Rms) => cfg.threshold.statistic = WindowStatistic::Rms,
            None => {}
        }
        if let Some(v) = self.delta {
            cfg.consistency = ConsistencySpec { delta: v };
        }
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct LabelArgs {
    #[arg(long)]
    pub wav: PathBuf,
    #[arg(long, default_value_t = DEFAULT_FPS)]
    pub fps: f64,
    /// Number of frames to label; defaults to every whole frame the audio covers.
    #[arg(long)]
    pub frame_count: Option<usize>,
    #[command(flatten)]
    pub labeling: LabelingFlags,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the thresholded labels before the consistency pass.
    #[arg(long)]
    pub raw_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrackArgs {
    #[arg(long)]
    pub labels: PathBuf,
    /// Ignore transitions closer than this to the previous one (off by default).
    #[arg(long)]
    pub min_gap_s: Option<f64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub frames_dir: PathBuf,
    /// Truth labels CSV, one row per frame in the directory.
    #[arg(long)]
    pub labels: PathBuf,
    #[arg(long, default_value_t = 50)]
    pub epochs: usize,
    #[arg(long, default_value_t = 0.001)]
    pub learning_rate: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["frames_dir", "predictions"])))]
pub struct DetectArgs {
    #[arg(long, conflicts_with = "predictions")]
    pub frames_dir: Option<PathBuf>,
    #[arg(long, conflicts_with = "baseline")]
    pub model: Option<PathBuf>,
    /// Use the brightness heuristic instead of a trained model.
    #[arg(long)]
    pub baseline: bool,
    /// External predictions (JSON lines) to convert into a labels CSV.
    #[arg(long)]
    pub predictions: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_FPS)]
    pub fps: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
#[command(group(
    ArgGroup::new("inputs")
        .required(true)
        .multiple(true)
        .args(["pred", "ratings", "estimate", "table"])
))]
pub struct EvalArgs {
    /// Predicted labels CSV (compared against --truth).
    #[arg(long, requires = "truth")]
    pub pred: Option<PathBuf>,
    #[arg(long, requires = "pred")]
    pub truth: Option<PathBuf>,
    /// Ratings CSV: header of item names, one row per rater, blank = missing.
    #[arg(long)]
    pub ratings: Option<PathBuf>,
    /// Tracker JSON report compared against --observer-mean/--observer-std.
    #[arg(long, requires = "observer_mean")]
    pub estimate: Option<PathBuf>,
    #[arg(long)]
    pub observer_mean: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub observer_std: f64,
    /// Error table CSV: method,item,pred_rate,pred_std,obs_mean,obs_std (blank pred_rate = no estimate).
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct E2eArgs {
    #[command(flatten)]
    pub scenario: ScenarioOverrides,
    #[command(flatten)]
    pub labeling: LabelingFlags,
    #[arg(long)]
    pub out_dir: PathBuf,
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn init_logging() {
    let env = env_logger::Env::new().filter_or(LOG_ENV, "warn");
    let _ = env_logger::Builder::from_env(env)
        .format_timestamp(None)
        .try_init();
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Label(a) => cmd_label(&a),
        Command::Track(a) => cmd_track(&a),
        Command::Train(a) => cmd_train(&a),
        Command::Detect(a) => cmd_detect(&a),
        Command::Eval(a) => cmd_eval(&a),
        Command::E2e(a) => cmd_e2e(&a),
    }
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes `text` to `out` (plus its manifest sidecar) or prints it; without an output file the
/// manifest goes to stderr.
fn emit(text: &str, out: Option<&Path>, manifest: RunManifest) -> Result<()> {
    match out {
        Some(path) => {
            write_file(path, text)?;
            manifest.output(path).save(&sidecar_path(path))
        }
        None => {
            print!("{text}");
            eprint!("{}", manifest.to_json());
            Ok(())
        }
    }
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<()> {
    let cfg = args.scenario.resolve()?;
    let scenario = generate(&cfg)?;
    info!(
        "generated {} frames, {} truth transitions",
        scenario.frame_count(),
        scenario.truth_transition_times_s.len()
    );
    let written = scenario.save(&args.out_dir)?;
    write_file(&args.out_dir.join("scenario.json"), cfg.to_json() + "\n")?;
    let mut manifest = RunManifest::new("simulate", &cfg, Some(cfg.seed));
    if let Some(c) = &args.scenario.config {
        manifest = manifest.input(c);
    }
    for p in written {
        manifest = manifest.output(p);
    }
    manifest
        .output(args.out_dir.join("scenario.json"))
        .save(&args.out_dir.join("manifest.json"))
}

#[derive(Serialize)]
struct LabelRun<'a> {
    fps: f64,
    frame_count: usize,
    labeling: &'a LabelingConfig,
}

pub fn cmd_label(args: &LabelArgs) -> Result<()> {
    let cfg = args.labeling.resolve()?;
    let track = wav::read_wav(&args.wav)?;
    let frame_count = match args.frame_count {
        Some(n) => n,
        None => frames_covered(&track, args.fps),
    };
    let trace = label_audio_traced(&track, args.fps, frame_count, &cfg)?;
    let exhaling = trace
        .frames
        .iter()
        .filter(|f| f.label.is_exhalation())
        .count();
    info!("labeled {frame_count} frames, {exhaling} exhalation");

    let run = LabelRun {
        fps: args.fps,
        frame_count,
        labeling: &cfg,
    };
    let mut manifest = RunManifest::new("label", &run, None).input(&args.wav);
    if let Some(raw_path) = &args.raw_out {
        let raw: Vec<LabeledFrame> = trace
            .raw
            .iter()
            .enumerate()
            .map(|(i, &l)| LabeledFrame::new(i as u64, i as f64 / args.fps, l))
            .collect();
        write_file(raw_path, render_labels_csv(&raw))?;
        manifest = manifest.output(raw_path);
    }
    write_file(&args.out, render_labels_csv(&trace.frames))?;
    manifest.output(&args.out).save(&sidecar_path(&args.out))
}

pub fn cmd_track(args: &TrackArgs) -> Result<()> {
    let frames = read_labels_csv(&args.labels)?;
    let options = TrackerOptions {
        min_gap_s: args.min_gap_s,
    };
    let estimate = predict_respiration_rate_with(&frames, &options)?;
    if !estimate.is_ok() {
        warn!("fewer than two end-of-exhalation transitions: no estimate");
    }
    let manifest = RunManifest::new(
        "track",
        &serde_json::json!({ "min_gap_s": args.min_gap_s }),
        None,
    )
    .input(&args.labels);
    emit(&(estimate.to_json() + "\n"), args.out.as_deref(), manifest)
}

pub fn cmd_train(args: &TrainArgs) -> Result<()> {
    let frames = read_frames_dir(&args.frames_dir)?;
    let labels = read_labels_csv(&args.labels)?;
    if frames.len() != labels.len() {
        return Err(Error::InvalidInput(format!(
            "{} frames but {} labels",
            frames.len(),
            labels.len()
        )));
    }
    let params = TrainParams {
        epochs: args.epochs,
        learning_rate: args.learning_rate,
        lambda: args.lambda,
        seed: args.seed,
        standardize: true,
    };
    let rows: Vec<Vec<f64>> = features_of(&frames)
        .into_iter()
        .map(|f| f.values().to_vec())
        .collect();
    let model = train_linear_rows(&rows, &states(&labels), &params)?;
    write_file(&args.out, model.to_json() + "\n")?;
    RunManifest::new("train", &params, Some(params.seed))
        .input(&args.frames_dir)
        .input(&args.labels)
        .output(&args.out)
        .save(&sidecar_path(&args.out))
}

pub fn cmd_detect(args: &DetectArgs) -> Result<()> {
    let (frames, manifest) = if let Some(pred) = &args.predictions {
        let frames = load_external_predictions(pred)?;
        let manifest =
            RunManifest::new("detect", &serde_json::json!({ "source": "external" }), None)
                .input(pred);
        (frames, manifest)
    } else {
        let dir = args.frames_dir.as_ref().ok_or_else(|| {
            Error::InvalidInput("detect needs --frames-dir or --predictions".into())
        })?;
        let images = read_frames_dir(dir)?;
        let (detector, config, model_path): (
            Box<dyn Detector>,
            serde_json::Value,
            Option<&PathBuf>,
        ) = match (&args.model, args.baseline) {
            (Some(path), _) => (
                Box::new(LinearModel::load(path)?),
                serde_json::json!({ "source": "linear", "fps": args.fps }),
                Some(path),
            ),
            (None, true) => {
                let b = BrightnessBaseline::default();
                (
                    Box::new(b),
                    serde_json::json!({ "source": "baseline", "cutoff": b.cutoff, "fraction": b.fraction, "fps": args.fps }),
                    None,
                )
            }
            (None, false) => {
                return Err(Error::InvalidInput(
                    "detect needs --model or --baseline with --frames-dir".into(),
                ))
            }
        };
        let frames = detect_frames(detector.as_ref(), &images, args.fps)?;
        let mut manifest = RunManifest::new("detect", &config, None).input(dir);
        if let Some(p) = model_path {
            manifest = manifest.input(p);
        }
        (frames, manifest)
    };
    write_file(&args.out, render_labels_csv(&frames))?;
    manifest.output(&args.out).save(&sidecar_path(&args.out))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityReport {
    pub items: Vec<String>,
    pub percent_agreement: Vec<f64>,
    pub mean_rate: Vec<f64>,
    pub std_rate: Vec<f64>,
    /// `None` when alpha is undefined (no variation at all).
    pub krippendorff_alpha: Option<f64>,
    pub alpha_note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub method: String,
    pub item: String,
    pub predicted: String,
    pub error: Option<ErrorReport>,
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MetricsReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<WeightedReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reliability: Option<ReliabilityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate_error: Option<ErrorRow>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub error_table: Vec<ErrorRow>,
}

pub fn reliability_report(ratings: &RaterMatrix) -> Result<ReliabilityReport> {
    let (mean_rate, std_rate) = ratings.item_stats().into_iter().unzip();
    let (alpha, note) = match krippendorff_alpha_interval(ratings) {
        Ok(a) => (Some(a), None),
        Err(e @ Error::UndefinedAlpha(_)) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(ReliabilityReport {
        items: ratings.items().to_vec(),
        percent_agreement: percent_agreement(ratings)?,
        mean_rate,
        std_rate,
        krippendorff_alpha: alpha,
        alpha_note: note,
    })
}

fn error_row(
    method: &str,
    item: &str,
    pred: Option<(f64, f64)>,
    obs: (f64, f64),
) -> Result<ErrorRow> {
    let (predicted, error) = match pred {
        Some((p, sp)) => (
            format!("{p:.0}±{sp:.0}"),
            Some(relative_error_values(p, sp, obs.0, obs.1)?),
        ),
        None => ("-".to_string(), None),
    };
    let display = error.map_or_else(|| "-".to_string(), |e| e.display());
    Ok(ErrorRow {
        method: method.to_string(),
        item: item.to_string(),
        predicted,
        error,
        display,
    })
}

#[derive(Debug, Deserialize)]
struct TableRecord {
    method: String,
    item: String,
    pred_rate: Option<f64>,
    pred_std: Option<f64>,
    obs_mean: f64,
    obs_std: f64,
}

/// Parses an error table CSV (`method,item,pred_rate,pred_std,obs_mean,obs_std`) and computes
/// one row per line.
pub fn error_table<R: std::io::Read>(reader: R, source_name: &str) -> Result<Vec<ErrorRow>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = Vec::new();
    for (i, rec) in rdr.deserialize::<TableRecord>().enumerate() {
        let rec = rec.map_err(|e| Error::parse(source_name, i + 2, e))?;
        let pred = rec.pred_rate.map(|p| (p, rec.pred_std.unwrap_or(0.0)));
        rows.push(error_row(
            &rec.method,
            &rec.item,
            pred,
            (rec.obs_mean, rec.obs_std),
        )?);
    }
    Ok(rows)
}

pub fn cmd_eval(args: &EvalArgs) -> Result<()> {
    let mut report = MetricsReport::default();
    let mut manifest = RunManifest::new(
        "eval",
        &serde_json::json!({ "observer_mean": args.observer_mean, "observer_std": args.observer_std }),
        None,
    );

    if let (Some(pred), Some(truth)) = (&args.pred, &args.truth) {
        let p = read_labels_csv(pred)?;
        let t = read_labels_csv(truth)?;
        report.classification = Some(weighted_report(&states(&p), &states(&t))?);
        manifest = manifest.input(pred).input(truth);
    }
    if let Some(path) = &args.ratings {
        report.reliability = Some(reliability_report(&RaterMatrix::load_csv(path)?)?);
        manifest = manifest.input(path);
    }
    if let Some(path) = &args.estimate {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let estimate: RespirationEstimate = serde_json::from_str(&text)
            .map_err(|e| Error::parse(path.display().to_string(), e.line(), e))?;
        let obs_mean = args.observer_mean.unwrap_or_default();
        let error = relative_error(&estimate, obs_mean, args.observer_std)?;
        report.estimate_error = Some(ErrorRow {
            method: "estimate".into(),
            item: path.display().to_string(),
            predicted: estimate.display_rate(),
            display: error.map_or_else(|| "-".to_string(), |e| e.display()),
            error,
        });
        manifest = manifest.input(path);
    }
    if let Some(path) = &args.table {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        report.error_table = error_table(file, &path.display().to_string())?;
        manifest = manifest.input(path);
    }
    if report == MetricsReport::default() {
        return Err(Error::InvalidInput(
            "eval needs --pred/--truth, --ratings, --estimate or --table".into(),
        ));
    }
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    emit(&text, args.out.as_deref(), manifest)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct E2eReport {
    pub scenario: ScenarioConfig,
    pub truth: RespirationEstimate,
    pub estimate: RespirationEstimate,
    pub abs_error_bpm: Option<f64>,
    pub error_vs_truth: Option<ErrorReport>,
    pub label_agreement: f64,
    pub classification: Option<WeightedReport>,
}

pub fn cmd_e2e(args: &E2eArgs) -> Result<()> {
    let cfg = args.scenario.resolve()?;
    let labeling = args.labeling.resolve()?;
    let scenario = generate(&cfg)?;
    scenario.save(&args.out_dir)?;

    let track = wav::read_wav(&args.out_dir.join("audio.wav"))?;
    let trace = label_audio_traced(&track, cfg.fps, scenario.frame_count(), &labeling)?;
    let labels_path = args.out_dir.join("labels.csv");
    write_file(&labels_path, render_labels_csv(&trace.frames))?;

    let options = TrackerOptions::default();
    let truth = predict_respiration_rate_with(&scenario.truth_labels, &options)?;
    let estimate = predict_respiration_rate_with(&trace.frames, &options)?;
    let truth_states = scenario.truth_states();
    let predicted = states(&trace.frames);
    let agree = truth_states
        .iter()
        .zip(&predicted)
        .filter(|(a, b)| a == b)
        .count();

    let (abs_error_bpm, error_vs_truth) = match (estimate.rate_bpm, truth.rate_bpm) {
        (Some(e), Some(t)) => (
            Some((e - t).abs()),
            relative_error(&estimate, t, truth.std_bpm.unwrap_or(0.0))?,
        ),
        _ => (None, None),
    };
    let report = E2eReport {
        scenario: cfg.clone(),
        truth,
        estimate,
        abs_error_bpm,
        error_vs_truth,
        label_agreement: agree as f64 / truth_states.len().max(1) as f64,
        classification: weighted_report(&predicted, &truth_states).ok(),
    };
    let report_path = args.out_dir.join("e2e_report.json");
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    write_file(&report_path, &text)?;
    print!("{text}");

    #[derive(Serialize)]
    struct E2eConfig<'a> {
        scenario: &'a ScenarioConfig,
        labeling: &'a LabelingConfig,
    }
    RunManifest::new(
        "e2e",
        &E2eConfig {
            scenario: &cfg,
            labeling: &labeling,
        },
        Some(cfg.seed),
    )
    .output(&labels_path)
    .output(&report_path)
    .save(&args.out_dir.join("manifest.json"))
}
