use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use paramodular::characters::{Group, HighestWeight};
use paramodular::coweights::{basis_cardinality, dim_formula, Coweight};
use paramodular::exactalg::parse_rational;
use paramodular::oldforms::compare_bases;
use paramodular::rankin::{default_truncation, phi_factor, xi, Symbolic};
use paramodular::whittaker::{SatakeParamsSO, WhittakerData};
use paramodular::SymLaurent;
use paramodular_cli::{
    emit, parse_suite, run_suite, thread_pool, CliError, Format, Mode, Result, VerifyConfig,
    THREADS_ENV,
};

#[derive(Parser, Debug)]
#[command(
    name = "paramodular",
    version,
    about = "Exact verification of Rankin-Selberg identities for paramodular forms"
)]
struct Cli {
    /// Worker threads for case-level parallelism.
    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Json,
    Text,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Symbolic,
    Evaluation,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GroupArg {
    Gl,
    Sp,
    So,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite and report per-case verdicts.
    Verify {
        /// unramified, gsp4-raising, eta-lemma, dims, prop4, level-a1,
        /// oldform-bases, dependence, kernel, fe, oracles, properties
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        trunc: Option<u32>,
        #[arg(long)]
        window: Option<u32>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        max_level: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Omit wall-clock fields so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Compute the normalized Rankin-Selberg polynomial of user-supplied data.
    Xi {
        /// Whittaker data as JSON: {n, entries: [{lambda, value}], horizon?}
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        trunc: Option<u32>,
        #[arg(long, default_value_t = 4)]
        window: u32,
        /// Satake parameters for the L-factor numerator, comma separated.
        #[arg(long, value_delimiter = ',')]
        beta: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Print a Weyl character.
    Char {
        #[arg(long, value_enum)]
        group: GroupArg,
        /// Highest weight, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i32>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Tabulate oldform basis sizes against the dimension formula.
    Dims {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 8)]
        max_level: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Compare the operator-monomial and Hecke oldform bases at rank two.
    CompareBases {
        #[arg(long)]
        m_minus_a: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<bool> {
    let mut out = open_out(&cli.out)?;
    let ok = match cli.command {
        Command::Verify {
            suite,
            n,
            r,
            trunc,
            window,
            trials,
            seed,
            mode,
            max_level,
            format,
            no_timing,
        } => {
            let mut cfg = VerifyConfig::for_suite(parse_suite(&suite)?);
            cfg.n = n.or(cfg.n);
            cfg.r = r.or(cfg.r);
            cfg.trunc = trunc.unwrap_or(cfg.trunc);
            cfg.window = window.unwrap_or(cfg.window);
            cfg.trials = trials.unwrap_or(cfg.trials);
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.max_level = max_level.unwrap_or(cfg.max_level);
            if let Some(m) = mode {
                cfg.mode = match m {
                    ModeArg::Symbolic => Mode::Symbolic,
                    ModeArg::Evaluation => Mode::Evaluation,
                };
            }
            cfg.validate()?;
            let pool = thread_pool(cli.threads)?;
            let mut report = pool.install(|| run_suite(&cfg))?;
            if no_timing {
                report = report.without_timing();
            }
            emit(&report, format.into(), &mut out)?;
            report.all_passed()
        }
        Command::Xi {
            data,
            n,
            r,
            trunc,
            window,
            beta,
            format,
        } => {
            xi_command(&data, n, r, trunc, window, &beta, format.into(), &mut out)?;
            true
        }
        Command::Char {
            group,
            lambda,
            format,
        } => {
            char_command(group, lambda, format.into(), &mut out)?;
            true
        }
        Command::Dims {
            n,
            max_level,
            format,
        } => dims_command(n, max_level, format.into(), &mut out)?,
        Command::CompareBases { m_minus_a, format } => {
            let c = compare_bases(m_minus_a)?;
            match Format::from(format) {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut out, &c)?;
                    writeln!(out)?;
                }
                _ => {
                    writeln!(out, "m - a = {m_minus_a}")?;
                    for (name, list) in [("monomial", &c.monomial), ("hecke", &c.hecke)] {
                        writeln!(out, "{name}:")?;
                        for x in list {
                            let flag = if x.stand_in { " [stand-in]" } else { "" };
                            writeln!(out, "  {}: {}{flag}", x.label, x.poly)?;
                        }
                    }
                    writeln!(
                        out,
                        "ranks {} / {} / joint {}; sets {}; spans {}",
                        c.monomial_rank,
                        c.hecke_rank,
                        c.joint_rank,
                        if c.sets_equal { "equal" } else { "differ" },
                        if c.spans_equal { "equal" } else { "differ" }
                    )?;
                }
            }
            c.spans_equal
        }
    };
    out.flush()?;
    Ok(ok)
}

#[derive(Serialize)]
struct SeriesTerm {
    degree: i32,
    coeff: String,
}

#[derive(Serialize)]
struct XiOutput {
    n: usize,
    r: usize,
    trunc: i32,
    window: u32,
    stabilized: bool,
    detected_degree: Option<i32>,
    poly: SymLaurent,
    poly_text: String,
    series: Vec<SeriesTerm>,
}

#[allow(clippy::too_many_arguments)]
fn xi_command(
    path: &PathBuf,
    n: Option<usize>,
    r: Option<usize>,
    trunc: Option<u32>,
    window: u32,
    beta: &[String],
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    let d: WhittakerData = serde_json::from_reader(io::BufReader::new(File::open(path)?))?;
    let n_data = d.n();
    if let Some(n) = n {
        if n != n_data {
            return Err(CliError::Usage(format!(
                "--n {n} does not match data rank {n_data}"
            )));
        }
    }
    let r = r.unwrap_or(n_data);
    let t = trunc.map_or_else(|| default_truncation(&d, n_data, r, window), |t| t as i32);
    let backend = Symbolic { r };
    let params = if beta.is_empty() {
        None
    } else {
        let values = beta
            .iter()
            .map(|s| parse_rational(s.trim()))
            .collect::<paramodular::Result<Vec<_>>>()?;
        Some(SatakeParamsSO::new(values)?)
    };
    let p = phi_factor(&backend, params.as_ref())?;
    let x = xi(&backend, &d, n_data, &p, t, window)?;
    let output = XiOutput {
        n: n_data,
        r,
        trunc: x.order(),
        window,
        stabilized: x.stabilized,
        detected_degree: x.detected_degree,
        poly_text: x.poly.to_string(),
        series: x
            .series
            .coeffs()
            .map(|(degree, c)| SeriesTerm {
                degree,
                coeff: c.to_string(),
            })
            .collect(),
        poly: x.poly,
    };
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &output)?;
            writeln!(out)?;
        }
        _ => {
            writeln!(out, "{}", output.poly_text)?;
            if !output.stabilized {
                writeln!(out, "warning: not stabilized through Y^{}", output.trunc)?;
            }
        }
    }
    Ok(())
}

fn char_command(
    group: GroupArg,
    lambda: Vec<i32>,
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    let group = match group {
        GroupArg::Gl => Group::Gl,
        GroupArg::Sp => Group::Sp,
        GroupArg::So => Group::SoEven,
    };
    let hw = HighestWeight::new(Coweight::new(lambda), group)?;
    let chi = hw.character()?;
    match format {
        Format::Json => {
            let v = serde_json::json!({
                "group": group,
                "lambda": hw.lambda(),
                "character": &chi,
                "text": chi.to_string(),
            });
            serde_json::to_writer_pretty(&mut *out, &v)?;
            writeln!(out)?;
        }
        _ => writeln!(out, "{chi}")?,
    }
    Ok(())
}

#[derive(Serialize)]
struct DimRow {
    n: usize,
    m_minus_a: u32,
    enumerated: u64,
    formula: u64,
    equal: bool,
}

fn dims_command(
    n: Option<usize>,
    max_level: u32,
    format: Format,
    out: &mut dyn Write,
) -> Result<bool> {
    let ns: Vec<usize> = n.map_or_else(|| (1..=4).collect(), |n| vec![n]);
    let rows: Vec<DimRow> = ns
        .iter()
        .flat_map(|&n| {
            (0..=max_level).map(move |d| {
                let (enumerated, formula) = (basis_cardinality(n, d, 0), dim_formula(n, d, 0));
                DimRow {
                    n,
                    m_minus_a: d,
                    enumerated,
                    formula,
                    equal: enumerated == formula,
                }
            })
        })
        .collect();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "n,m_minus_a,enumerated,formula,equal")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.n, r.m_minus_a, r.enumerated, r.formula, r.equal
                )?;
            }
        }
        Format::Text => {
            for r in &rows {
                let mark = if r.equal { "ok" } else { "MISMATCH" };
                writeln!(
                    out,
                    "n={} m-a={}: {} = {} {mark}",
                    r.n, r.m_minus_a, r.enumerated, r.formula
                )?;
            }
        }
    }
    Ok(rows.iter().all(|r| r.equal))
}
