use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use knotquiver::knotpipeline::{self, delta_vector, homology_generators};
use knotquiver::quiverstate::{Convention, Pipeline, QuiverData};
use knotquiver::skein::framed_reduced_homfly;
use knotquiver::tangles::{enumerate_rational_knots, parse_link, presentation, slopes_up_to, Slope};
use knotquiver::verify::{verify_data, VerificationReport};

#[derive(Parser)]
#[command(name = "knotquiver", version, about = "Quiver data and colored HOMFLY-PT invariants of rational links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quiver data of one link as JSON.
    Compute {
        #[command(flatten)]
        link: LinkArg,
        #[command(flatten)]
        output: OutputOpts,
        /// Also check the data against the invariants up to this color.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Checks quiver data against the skein invariants.
    Verify {
        #[command(flatten)]
        link: LinkArg,
        /// Highest color checked (default 3 for knots, 2 for links).
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum)]
        pipeline: Option<PipelineArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quiver data of every rational knot up to a crossing budget, one JSON record per line.
    Batch {
        #[arg(long, default_value_t = 12)]
        max_crossings: u64,
        #[command(flatten)]
        output: OutputOpts,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, env = "KNOTQUIVER_JOBS")]
        jobs: Option<usize>,
    },
    /// Lists canonical slopes, one per line.
    Enumerate {
        #[arg(long, default_value_t = 12)]
        max_crossings: u64,
        /// Include two-component links.
        #[arg(long)]
        links: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduced colored HOMFLY-PT polynomials from skein theory.
    Oracle {
        #[command(flatten)]
        link: LinkArg,
        #[arg(long, default_value = "0..3", value_parser = parse_colors)]
        colors: RangeInclusive<usize>,
        /// Specialize `a = q^2`.
        #[arg(long)]
        jones: bool,
        /// Framing of the invariant.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        frame: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LinkArg {
    /// `p/q` or `[a1,...,ar]`.
    #[arg(value_name = "LINK")]
    positional: Option<String>,
    #[arg(long)]
    slope: Option<String>,
    #[arg(long)]
    cf: Option<String>,
}

impl LinkArg {
    fn slope(&self) -> Result<Slope, CliError> {
        let text = self.positional.as_ref().or(self.slope.as_ref()).or(self.cf.as_ref()).expect("clap enforces one input");
        parse_link(text).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Args)]
struct OutputOpts {
    /// `canonical`, `raw` or an integer shift.
    #[arg(long, default_value = "canonical", allow_hyphen_values = true)]
    frame: Frame,
    #[arg(long, value_enum, default_value_t = ConventionArg::Sym)]
    convention: ConventionArg,
    #[arg(long, value_enum)]
    pipeline: Option<PipelineArg>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug)]
enum Frame {
    Canonical,
    Raw,
    Shift(i64),
}

impl FromStr for Frame {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "canonical" => Ok(Frame::Canonical),
            "raw" => Ok(Frame::Raw),
            n => n.parse().map(Frame::Shift).map_err(|_| format!("expected canonical, raw or an integer, got {n:?}")),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Anti,
    Sym,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PipelineArg {
    Knot,
    Link,
    Both,
}

fn parse_colors(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected A..B, got {s:?}");
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(knotquiver::Error),
    Io(std::io::Error),
    Mismatch(String),
}

impl From<knotquiver::Error> for CliError {
    fn from(e: knotquiver::Error) -> Self {
        CliError::Compute(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// One exported quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Record {
    p: u64,
    q: u64,
    cf: String,
    convention: Convention,
    framing: i64,
    vertices: usize,
    #[serde(rename = "Q")]
    quiver: Vec<Vec<i64>>,
    a_vec: Vec<i64>,
    q_vec: Vec<i64>,
    delta: Vec<i64>,
    signature: Option<i64>,
    verified_order: Option<usize>,
    homology: Option<Vec<[i64; 3]>>,
    pipeline: Pipeline,
}

fn pipelines(s: Slope, arg: Option<PipelineArg>) -> Result<Vec<Pipeline>, CliError> {
    let routes = match arg {
        None if s.is_knot() => vec![Pipeline::Knot],
        None | Some(PipelineArg::Link) => vec![Pipeline::Link],
        Some(PipelineArg::Knot) => vec![Pipeline::Knot],
        Some(PipelineArg::Both) => vec![Pipeline::Knot, Pipeline::Link],
    };
    if routes.contains(&Pipeline::Knot) && !s.is_knot() {
        return Err(CliError::Usage(format!("{s} is a two-component link; use --pipeline link")));
    }
    Ok(routes)
}

fn raw_data(s: Slope, route: Pipeline) -> knotquiver::Result<QuiverData> {
    match route {
        Pipeline::Knot => knotpipeline::knot_quiver(s),
        Pipeline::Link => knotpipeline::link_quiver(s),
    }
}

fn record(s: Slope, route: Pipeline, opts: &OutputOpts, order: Option<usize>) -> Result<Record, CliError> {
    let anti = raw_data(s, route)?;
    let mut qd = match opts.convention {
        ConventionArg::Anti => anti.clone(),
        ConventionArg::Sym => anti.q_invert()?,
    };
    qd = match opts.frame {
        Frame::Canonical => qd.to_canonical_frame(),
        Frame::Raw => qd,
        Frame::Shift(f) => qd.framing_shift(f),
    };
    if let Some(n) = order {
        let report = verify_data(&qd, 0..=n)?;
        if let Some(m) = report.first_mismatch {
            return Err(CliError::Mismatch(format!("{s}: color {} expected {} got {}", m.color, m.expected, m.actual)));
        }
    }
    let knot = route == Pipeline::Knot;
    Ok(Record {
        p: s.p,
        q: s.q,
        cf: presentation(s)?.cf.to_string(),
        convention: qd.convention,
        framing: qd.framing,
        vertices: qd.vertices(),
        quiver: qd.quiver.clone(),
        a_vec: qd.a_vec.clone(),
        q_vec: qd.q_vec.clone(),
        delta: delta_vector(&anti),
        signature: if s.is_knot() { Some(knotpipeline::signature(s)?) } else { None },
        verified_order: order,
        homology: knot.then(|| homology_generators(&anti).iter().map(|g| [g.a_deg, g.q_deg, g.t_deg]).collect()),
        pipeline: route,
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Pretty JSON with arrays of scalars (matrix rows, vectors) kept on one line.
fn pretty<T: Serialize>(v: &T) -> String {
    fn render(v: &serde_json::Value, indent: usize, out: &mut String) {
        use serde_json::Value;
        let pad = "  ".repeat(indent + 1);
        match v {
            Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
                out.push_str("[\n");
                for (i, x) in items.iter().enumerate() {
                    out.push_str(&pad);
                    render(x, indent + 1, out);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            Value::Object(map) if !map.is_empty() => {
                out.push_str("{\n");
                for (i, (k, x)) in map.iter().enumerate() {
                    out.push_str(&format!("{pad}{}: ", Value::String(k.clone())));
                    render(x, indent + 1, out);
                    out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
            scalar => out.push_str(&scalar.to_string()),
        }
    }
    let value = serde_json::to_value(v).expect("plain data serializes");
    let mut out = String::new();
    render(&value, 0, &mut out);
    out + "\n"
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute { link, output, order } => {
            let s = link.slope()?;
            let records = pipelines(s, output.pipeline)?
                .into_iter()
                .map(|r| record(s, r, &output, order))
                .collect::<Result<Vec<_>, _>>()?;
            let text = if records.len() == 1 { pretty(&records[0]) } else { pretty(&records) };
            emit(&output.out, &text)
        }
        Command::Verify { link, order, pipeline, out } => {
            let s = link.slope()?;
            let mut reports: Vec<VerificationReport> = Vec::new();
            for route in pipelines(s, pipeline)? {
                let n = order.unwrap_or(if route == Pipeline::Knot { 3 } else { 2 });
                let report = verify_data(&raw_data(s, route)?, 0..=n)?;
                eprintln!("{s} {route:?}: {} colors in {:.3?}", report.colors.len(), report.elapsed);
                reports.push(report);
            }
            let text = if reports.len() == 1 { pretty(&reports[0]) } else { pretty(&reports) };
            emit(&out, &text)?;
            match reports.iter().find(|r| !r.passed) {
                Some(r) => Err(CliError::Mismatch(format!("{}/{} failed at color {}", r.p, r.q, r.first_mismatch.as_ref().map_or(0, |m| m.color)))),
                None => Ok(()),
            }
        }
        Command::Batch { max_crossings, output, order, jobs } => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build().map_err(|e| CliError::Usage(e.to_string()))?;
            let start = Instant::now();
            let knots = enumerate_rational_knots(max_crossings);
            let records = pool.install(|| {
                knots
                    .par_iter()
                    .map(|&s| pipelines(s, output.pipeline)?.into_iter().map(|r| record(s, r, &output, order)).collect())
                    .collect::<Result<Vec<Vec<_>>, _>>()
            })?;
            let records: Vec<Record> = records.into_iter().flatten().collect();
            let mut text = String::new();
            for r in &records {
                text += &serde_json::to_string(r).expect("plain data serializes");
                text.push('\n');
            }
            emit(&output.out, &text)?;
            eprintln!("computed {} knots in {:.3?}", records.len(), start.elapsed());
            Ok(())
        }
        Command::Enumerate { max_crossings, links, out } => {
            let slopes = if links { slopes_up_to(max_crossings, true) } else { enumerate_rational_knots(max_crossings) };
            let text: String = slopes.iter().map(|s| format!("{s}\n")).collect();
            emit(&out, &text)
        }
        Command::Oracle { link, colors, jones, frame, out } => {
            let s = link.slope()?;
            #[derive(Serialize)]
            struct Value {
                j: usize,
                value: String,
            }
            let values = colors
                .map(|j| {
                    let v = framed_reduced_homfly(s, j, frame)?;
                    let v = if jones { v.a_to_q2() } else { v };
                    Ok(Value { j, value: v.to_string() })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            #[derive(Serialize)]
            struct Oracle {
                p: u64,
                q: u64,
                framing: i64,
                jones: bool,
                colors: Vec<Value>,
            }
            emit(&out, &pretty(&Oracle { p: s.p, q: s.q, framing: frame, jones, colors: values }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Mismatch(m)) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_round_trips_through_json() {
        let opts = OutputOpts { frame: Frame::Canonical, convention: ConventionArg::Sym, pipeline: None, out: None };
        let r = record(Slope::new(13, 3).unwrap(), Pipeline::Knot, &opts, Some(1)).unwrap();
        let back: Record = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn color_ranges() {
        assert_eq!(parse_colors("0..3").unwrap(), 0..=3);
        assert_eq!(parse_colors("1..=2").unwrap(), 1..=2);
        assert!(parse_colors("3..1").is_err());
        assert!(parse_colors("x").is_err());
    }
}
