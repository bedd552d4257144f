//! Command-line front end.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};

use crate::algebra::{is_prime, MAX_MODULUS};
use crate::image::{
    compute_image_barcode_with, compute_single_barcode_with, Barcode, Interval, PipelineError,
    PipelineOptions,
};
use crate::oracle::image_barcode_oracle;
use crate::rips::{
    parse_distance_input, DistanceMatrix, DominanceError, FiltrationPair, InputFormat, PairError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMINANCE: i32 = 3;
pub const EXIT_ORACLE_MISMATCH: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Image of H_*(domain) -> H_*(codomain).
    Image,
    /// Ordinary barcode of the codomain alone.
    Single,
    /// Image barcode, checked against the brute-force oracle.
    OracleCheck,
}

/// Image persistence barcodes for a pair of Vietoris-Rips filtrations.
#[derive(Clone, Debug, Parser)]
#[command(name = "rips-image", version)]
pub struct RunConfig {
    /// Domain dissimilarities (the larger of the two).
    pub domain: PathBuf,
    /// Codomain dissimilarities. Defaults to the domain.
    pub codomain: Option<PathBuf>,
    /// Maximum homology degree.
    #[arg(long = "dim", default_value_t = 1)]
    pub max_dim: usize,
    /// Largest filtration value considered; "inf" for no limit.
    #[arg(long, default_value_t = f64::INFINITY)]
    pub threshold: f64,
    /// Prime coefficient field.
    #[arg(long, default_value_t = 2, value_parser = parse_modulus)]
    pub modulus: u32,
    #[arg(long, value_enum, default_value_t = InputFormat::LowerDistance)]
    pub format: InputFormat,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Print the birth and death simplices of every bar.
    #[arg(long)]
    pub witnesses: bool,
    #[arg(long, value_enum, default_value_t = Mode::Image)]
    pub mode: Mode,
    #[arg(long)]
    pub no_clearing: bool,
    #[arg(long)]
    pub no_shortcut: bool,
}

fn parse_modulus(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|e| format!("{e}"))?;
    if p < MAX_MODULUS && is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not a prime below {MAX_MODULUS}"))
    }
}

impl RunConfig {
    pub fn options(&self) -> PipelineOptions {
        PipelineOptions {
            clearing: !self.no_clearing,
            emergent_shortcut: !self.no_shortcut,
            ..PipelineOptions::default()
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

fn read_matrix(path: &Path, format: InputFormat) -> Result<DistanceMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    parse_distance_input(&text, format)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn pipeline_failure(e: PipelineError) -> Failure {
    match e {
        PipelineError::Pair(p) => pair_failure(p),
        PipelineError::Algebra(a) => Failure::new(EXIT_INPUT, a.to_string()),
    }
}

fn pair_failure(e: PairError) -> Failure {
    match e {
        PairError::Dominance(DominanceError::Violations { total, examples }) => {
            let mut msg = format!("domain does not dominate codomain at {total} pairs:");
            for v in examples {
                let _ = write!(msg, "\n  {v}");
            }
            Failure::new(EXIT_DOMINANCE, msg)
        }
        other => Failure::new(EXIT_INPUT, other.to_string()),
    }
}

fn compute(config: &RunConfig) -> Result<Barcode, Failure> {
    let domain = read_matrix(&config.domain, config.format)?;
    let codomain = match &config.codomain {
        Some(path) => read_matrix(path, config.format)?,
        None => domain.clone(),
    };
    let options = config.options();
    if config.mode == Mode::Single {
        let (b, _) = compute_single_barcode_with(
            &codomain,
            config.max_dim,
            config.threshold,
            config.modulus,
            &options,
        )
        .map_err(pipeline_failure)?;
        return Ok(b);
    }
    let pair = FiltrationPair::new(domain, codomain, config.max_dim, config.threshold)
        .map_err(pair_failure)?;
    let (barcode, stats) =
        compute_image_barcode_with(&pair, config.modulus, &options).map_err(pipeline_failure)?;
    if stats.mixed_zero_after_clearing() > 0 {
        return Err(Failure::new(
            EXIT_INTERNAL,
            "internal error: a cleared mixed reduction produced a zero column",
        ));
    }
    if config.mode == Mode::OracleCheck {
        let expected = image_barcode_oracle(&pair, config.modulus)
            .map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
        if let Some(diff) = barcode.difference(&expected) {
            return Err(Failure::new(
                EXIT_ORACLE_MISMATCH,
                format!("pipeline and oracle disagree (pipeline vs oracle):\n{diff}"),
            ));
        }
    }
    Ok(barcode)
}

/// Runs one invocation, writing the report to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match compute(config) {
        Ok(barcode) => {
            let report = render(&barcode.sorted(), config.output, config.witnesses);
            match out.write_all(report.as_bytes()).and_then(|_| out.flush()) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_INTERNAL
                }
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn vertex_list(vs: &Option<Vec<usize>>, sep: &str) -> String {
    vs.as_ref().map_or_else(String::new, |v| {
        v.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)
    })
}

fn death_text(i: &Interval) -> String {
    if i.is_essential() {
        String::new()
    } else {
        i.death.to_string()
    }
}

/// Formats a barcode. Intervals are written in the order given.
pub fn render(barcode: &Barcode, output: OutputFormat, witnesses: bool) -> String {
    let mut s = String::new();
    match output {
        OutputFormat::Text => {
            for i in barcode.intervals() {
                let _ = write!(s, "dim {}: [{}, {})", i.degree, i.birth, death_text(i));
                if witnesses {
                    let _ = write!(
                        s,
                        " birth {{{}}} death {{{}}}",
                        vertex_list(&i.birth_simplex, ","),
                        vertex_list(&i.death_simplex, ",")
                    );
                }
                s.push('\n');
            }
        }
        OutputFormat::Csv => {
            s.push_str(if witnesses {
                "degree,birth,death,birth_simplex,death_simplex\n"
            } else {
                "degree,birth,death\n"
            });
            for i in barcode.intervals() {
                let _ = write!(s, "{},{},{}", i.degree, i.birth, death_text(i));
                if witnesses {
                    let _ = write!(
                        s,
                        ",{},{}",
                        vertex_list(&i.birth_simplex, " "),
                        vertex_list(&i.death_simplex, " ")
                    );
                }
                s.push('\n');
            }
        }
        OutputFormat::Json => {
            let stripped;
            let shown = if witnesses {
                barcode
            } else {
                stripped = barcode.without_witnesses();
                &stripped
            };
            s = serde_json::to_string_pretty(shown.intervals()).expect("intervals serialize");
            s.push('\n');
        }
    }
    s
}

/// Parses a JSON report back into a barcode.
pub fn parse_json(text: &str) -> Result<Barcode, serde_json::Error> {
    let intervals: Vec<Interval> = serde_json::from_str(text)?;
    Ok(intervals.into_iter().collect())
}
