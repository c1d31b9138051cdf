use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use raynaud::bounds::{basepoint_min_rank, fit_rank_polynomial, prop7_bound};
use raynaud::exact::{parse_rational, rational_string, sci_string};
use raynaud::general;
use raynaud::oracle::{run_verification, GridCaps};
use raynaud::table::{render_basepoint_table, render_raynaud_table, Format, TableSpec};
use raynaud::theta;

#[derive(Parser)]
#[command(name = "raynaud", version, about = "Exact invariants, thresholds and base-point bounds of Raynaud-type bundles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Args)]
struct CommonOut {
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
    /// significant digits for scientific rank rendering
    #[arg(long, default_value_t = 12)]
    sci_digits: usize,
    /// write output to a file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of S_{mu,R,m} (general) or S_{R,m}(M0) (--theta)
    Invariants {
        #[arg(short, long)]
        genus: u32,
        /// slope "D" or "D/R"; required without --theta
        #[arg(long, allow_hyphen_values = true)]
        slope: Option<String>,
        #[arg(short = 'R', long)]
        level: u32,
        #[arg(long)]
        m: u64,
        /// use the slope g-1 fine-tuned construction
        #[arg(long)]
        theta: bool,
        #[command(flatten)]
        common: CommonOut,
    },
    /// Rank and slope of the dual bundles R^r(M0) over a (g, r) sweep
    RaynaudTable {
        #[arg(long, default_value = "2..4", value_parser = parse_range)]
        genus: (u32, u32),
        #[arg(long, default_value = "2..4", value_parser = parse_range)]
        rank: (u32, u32),
        /// digit count past which text output switches to scientific
        #[arg(long, default_value_t = 48)]
        sci_threshold: usize,
        #[command(flatten)]
        common: CommonOut,
    },
    /// Minimal ranks for which |R.Theta| is known to have base points
    BasepointTable {
        #[arg(long, default_value = "2..5", value_parser = parse_range)]
        genus: (u32, u32),
        #[arg(long, default_value = "2..4", value_parser = parse_range)]
        level: (u32, u32),
        #[command(flatten)]
        common: CommonOut,
    },
    /// Slope decomposition -a/(Rm+b) and the minimal exponent solver
    Cor3 {
        #[arg(short, long)]
        genus: u32,
        #[arg(short = 'R', long)]
        level: u32,
        #[command(flatten)]
        common: CommonOut,
    },
    /// The quadratic base-point bound for |2.Theta|
    Bounds {
        #[arg(short, long)]
        genus: u32,
        #[command(flatten)]
        common: CommonOut,
    },
    /// Fit the minimal base-point rank as an exact polynomial in g
    Fit {
        #[arg(short = 'R', long)]
        level: u32,
        /// comma-separated genus samples; defaults to R..2R
        #[arg(long, value_delimiter = ',')]
        samples: Option<Vec<u32>>,
        #[command(flatten)]
        common: CommonOut,
    },
    /// Run the oracle grid and property suite
    Verify {
        /// caps like "g=2..3,R=2..3,m=0..30,r=1..2"
        #[arg(long)]
        grid: Option<String>,
        /// deliberately corrupt one check (failure-path testing)
        #[arg(long, hide = true)]
        negative_control: bool,
        #[command(flatten)]
        common: CommonOut,
    },
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s}"))?;
    let lo: u32 = a.trim().parse().map_err(|_| format!("bad bound {a}"))?;
    let hi: u32 = b.trim().parse().map_err(|_| format!("bad bound {b}"))?;
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}

fn parse_grid(s: &str) -> Result<GridCaps, String> {
    let mut caps = GridCaps::default();
    for part in s.split(',') {
        let (key, range) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=A..B, got {part}"))?;
        let (_, hi) = parse_range(range)?;
        match key.trim() {
            "g" => caps.g_max = hi,
            "R" => caps.level_max = hi,
            "m" => caps.m_max = hi as u64,
            "r" => caps.denom_max = hi as u64,
            other => return Err(format!("unknown grid key {other}")),
        }
    }
    Ok(caps)
}

fn emit(common: &CommonOut, text: String) -> ExitCode {
    let result = match &common.out {
        None => std::io::stdout().write_all(text.as_bytes()),
        Some(path) => std::fs::write(path, text),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit_ok(common: &CommonOut, text: String) -> bool {
    let result = match &common.out {
        None => std::io::stdout().write_all(text.as_bytes()),
        Some(path) => std::fs::write(path, text),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        false
    } else {
        true
    }
}

fn invariants_text(inv: &general::BundleInvariants, sci_digits: usize, format: Format) -> String {
    match format {
        Format::Json => {
            let v = json!({
                "rank": inv.rank.to_string(),
                "rank_sci": sci_string(&inv.rank, sci_digits),
                "degree": inv.degree.to_string(),
                "slope": { "num": inv.slope.numer().to_string(), "den": inv.slope.denom().to_string() },
            });
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        Format::Csv => format!(
            "rank,rank_sci,degree,slope\n{},{},{},{}\n",
            inv.rank,
            sci_string(&inv.rank, sci_digits),
            inv.degree,
            rational_string(&inv.slope)
        ),
        Format::Text => format!(
            "rank   = {} ({})\ndegree = {}\nslope  = {}\n",
            inv.rank,
            sci_string(&inv.rank, sci_digits),
            inv.degree,
            rational_string(&inv.slope)
        ),
    }
}

fn run(cli: Cli) -> Result<ExitCode, raynaud::Error> {
    match cli.command {
        Command::Invariants {
            genus,
            slope,
            level,
            m,
            theta: use_theta,
            common,
        } => {
            let inv = if use_theta {
                theta::theta_s_invariants(genus, level, m)?
            } else {
                let slope = slope.ok_or(raynaud::Error::Parse {
                    what: "slope",
                    detail: "--slope is required without --theta".into(),
                })?;
                let mu = general::SlopeSpec::from_rational(&parse_rational(&slope)?);
                general::s_invariants(genus, &mu, level, m)?
            };
            Ok(emit(&common, invariants_text(&inv, common.sci_digits, common.format.into())))
        }
        Command::RaynaudTable {
            genus,
            rank,
            sci_threshold,
            common,
        } => {
            let mut spec = TableSpec::new(genus, rank);
            spec.format = common.format.into();
            spec.sci_digits = common.sci_digits;
            spec.sci_threshold = sci_threshold;
            let text = render_raynaud_table(&spec)?;
            Ok(emit(&common, text))
        }
        Command::BasepointTable { genus, level, common } => {
            let mut spec = TableSpec::new(genus, level);
            spec.format = common.format.into();
            spec.sci_digits = common.sci_digits;
            let text = render_basepoint_table(&spec)?;
            Ok(emit(&common, text))
        }
        Command::Cor3 { genus, level, common } => {
            let (a, b) = theta::cor3_decomposition(genus, level)?;
            let (threshold, m_min) = theta::cor3_min_m(genus, level)?;
            let text = match Format::from(common.format) {
                Format::Json => {
                    let v = json!({
                        "a": a.to_string(),
                        "b": b.to_string(),
                        "threshold": rational_string(&threshold),
                        "m_min": m_min,
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
                }
                _ => format!(
                    "slope(S_{{R,m}}(M0)) = -{a}/({level}m + {b})\nthreshold = {}\nm_min = {m_min}\n",
                    rational_string(&threshold)
                ),
            };
            Ok(emit(&common, text))
        }
        Command::Bounds { genus, common } => {
            let bound = prop7_bound(genus)?;
            let same = bound == basepoint_min_rank(genus, 2)?;
            let text = match Format::from(common.format) {
                Format::Json => {
                    let v = json!({
                        "genus": genus,
                        "two_theta_basepoint_rank": bound.to_string(),
                        "equals_min_rank_table": same,
                        "su_x_remark": "the same threshold applies to |Theta| on SU_X(r)",
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
                }
                _ => format!(
                    "|2.Theta| on U_X(r, r(g-1)) has base points for r >= {bound} \
                     (equals table entry: {same})\nthe same threshold applies to |Theta| on SU_X(r)\n"
                ),
            };
            Ok(emit(&common, text))
        }
        Command::Fit { level, samples, common } => {
            let samples = samples.unwrap_or_else(|| (level..=2 * level).collect());
            let poly = fit_rank_polynomial(level, &samples)?;
            let coeffs: Vec<String> = poly.coefficients().iter().map(rational_string).collect();
            let text = match Format::from(common.format) {
                Format::Json => {
                    let v = json!({
                        "level": level,
                        "samples": samples,
                        "degree": poly.degree(),
                        "coefficients_constant_first": coeffs,
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
                }
                _ => format!(
                    "degree = {}\ncoefficients (constant first) = [{}]\n",
                    poly.degree(),
                    coeffs.join(", ")
                ),
            };
            Ok(emit(&common, text))
        }
        Command::Verify {
            grid,
            negative_control,
            common,
        } => {
            let caps = match grid {
                None => GridCaps::default(),
                Some(s) => parse_grid(&s).map_err(|detail| raynaud::Error::Parse {
                    what: "grid",
                    detail,
                })?,
            };
            let results = run_verification(&caps, negative_control);
            let all_pass = results.iter().all(|c| c.passed());
            let text = match Format::from(common.format) {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&results).unwrap()),
                _ => {
                    let mut out = String::new();
                    for c in &results {
                        out.push_str(&format!("[{}] {} ({})\n", c.status, c.check, c.inputs));
                    }
                    out.push_str(&format!(
                        "{} checks, {} failed\n",
                        results.len(),
                        results.iter().filter(|c| !c.passed()).count()
                    ));
                    out
                }
            };
            if !emit_ok(&common, text) {
                Ok(ExitCode::from(1))
            } else if all_pass {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
