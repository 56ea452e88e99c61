//! The `cjones` command line.
//!
//! Every subcommand writes a table to stdout: CSV with a header row by
//! default, or one JSON object per line with `--json`. Reals are printed
//! with 17 significant digits. Diagnostics go to stderr only.
//!
//! Exit status: 0 on success, 2 for usage errors, 3 for domain and
//! evaluation errors, 4 for parse errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::{Complex, Float};
use serde_json::{Map, Value};

use crate::alexander::alexander_poly;
use crate::asym::{fit_expansion_with, sweep, volume_conjecture_check};
use crate::deltacalc::{delta_rep, RepClass, RepKind};
use crate::error::{Error, Result};
use crate::geometry::{action_s, torsion_fig8, torsion_fig8_zero};
use crate::jones::{jones_eval, jones_reduced, kashaev_fig8_log, EvalPoint};
use crate::knotlang::{parse_braid, parse_knot, presentation_from_braid};
use crate::numkit::{FitModel, PrecisionCfg};

#[derive(Debug, Parser)]
#[command(name = "cjones", version, about = "Colored Jones asymptotics of the figure-eight knot")]
struct Cli {
    /// Significant decimal digits of the working precision.
    #[arg(long, global = true, env = "CJONES_DIGITS", default_value_t = 64)]
    digits: u32,

    /// Emit one JSON object per row instead of CSV.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for sweeps and fits (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Colored Jones value at q = exp(2πi r/N).
    Jones {
        #[arg(long)]
        knot: String,
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        r: f64,
        /// Divide by J_N(U) = [N].
        #[arg(long)]
        reduced: bool,
    },
    /// Kashaev invariant of 4_1 and its growth rate (2π/N)·log.
    Kashaev {
        #[arg(long = "N")]
        n: u64,
    },
    /// Actions, volume and Chern–Simons invariant at u.
    Action {
        #[arg(long = "u-re", allow_negative_numbers = true)]
        u_re: f64,
        #[arg(long = "u-im", allow_negative_numbers = true)]
        u_im: f64,
    },
    /// Torsion of the figure-eight complement at a cone angle.
    Torsion(TorsionArgs),
    /// Log-term coefficient δ from the cohomological rules.
    Delta {
        #[arg(long)]
        knot: String,
        #[arg(long, value_enum)]
        rep: RepArg,
        #[arg(long)]
        annulus_central: bool,
        /// Asserted satellite hypotheses, e.g. `i,ii,iii,iv`.
        #[arg(long = "satellite-hyp", value_delimiter = ',')]
        satellite_hyp: Vec<String>,
    },
    /// Alexander polynomial of a braid closure.
    Alexander {
        #[arg(long)]
        braid: String,
    },
    /// Residuals over an r grid at fixed N.
    Residual {
        #[arg(long = "N")]
        n: u64,
        #[arg(long = "r-min")]
        r_min: f64,
        #[arg(long = "r-max")]
        r_max: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Fit a·N + b·log N + c to Re log J_N.
    Fit {
        #[arg(long)]
        r: f64,
        #[arg(long = "N-list", value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
        #[arg(long, default_value = "4_1")]
        knot: String,
        /// Add a d/N term to the model.
        #[arg(long)]
        inverse_term: bool,
    },
    /// 2π times the fitted growth rate of the Kashaev invariant.
    Volcheck {
        #[arg(long = "N-max")]
        n_max: u64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct TorsionArgs {
    #[arg(long)]
    alpha: Option<f64>,
    /// The trivial-deformation value 2π²/√3.
    #[arg(long)]
    zero: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RepArg {
    Abelian,
    Nonabelian,
    Holonomy,
}

impl From<RepArg> for RepKind {
    fn from(r: RepArg) -> Self {
        match r {
            RepArg::Abelian => RepKind::AbelianNearIdentity,
            RepArg::Nonabelian => RepKind::NonAbelian,
            RepArg::Holonomy => RepKind::Holonomy,
        }
    }
}

enum Cell {
    Int(i64),
    Real(f64),
    Big(Float),
    Text(String),
    Missing,
}

fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_big(x: &Float) -> String {
    if x.is_finite() {
        format!("{:.17e}", x)
    } else {
        fmt_real(x.to_f64())
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => fmt_real(*x),
            Cell::Big(x) => fmt_big(x),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Real(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Big(x) => Value::String(fmt_big(x)),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Missing => Value::Null,
        }
    }
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn write(&self, out: &mut dyn Write, json: bool) -> std::io::Result<()> {
        if json {
            for row in &self.rows {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(h, c)| (h.to_string(), c.json()))
                    .collect();
                writeln!(out, "{}", Value::Object(obj))?;
            }
        } else {
            writeln!(out, "{}", self.header.join(","))?;
            for row in &self.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        Ok(())
    }
}

fn complex_cells(z: &Complex) -> [Cell; 2] {
    [Cell::Real(z.real().to_f64()), Cell::Real(z.imag().to_f64())]
}

fn parse_hypotheses(names: &[String]) -> Result<[bool; 4]> {
    let mut flags = [false; 4];
    for name in names {
        let idx = match name.trim() {
            "i" => 0,
            "ii" => 1,
            "iii" => 2,
            "iv" => 3,
            other => return Err(Error::Config(format!("unknown satellite hypothesis `{other}`"))),
        };
        flags[idx] = true;
    }
    Ok(flags)
}

fn execute(command: Command, cfg: &PrecisionCfg, notes: &mut Vec<String>) -> Result<Table> {
    match command {
        Command::Jones { knot, n, r, reduced } => {
            let expr = parse_knot(&knot)?;
            let p = EvalPoint::new(n, r)?;
            let z = if reduced {
                jones_reduced(&expr, &p, cfg)?
            } else {
                jones_eval(&expr, &p, cfg)?
            };
            let mut t = Table::new(vec!["N", "r", "log_mag", "phase"]);
            t.push(vec![
                Cell::Int(n as i64),
                Cell::Real(r),
                Cell::Big(z.log_mag().clone()),
                Cell::Big(z.phase().clone()),
            ]);
            Ok(t)
        }
        Command::Kashaev { n } => {
            let v = kashaev_fig8_log(n, cfg)?;
            let value = Float::with_val(cfg.bits(), v.log_mag().exp_ref());
            let growth = Float::with_val(cfg.bits(), v.log_mag() * cfg.pi()) * 2u32 / n;
            let mut t = Table::new(vec!["N", "value", "growth"]);
            t.push(vec![Cell::Int(n as i64), Cell::Big(value), Cell::Big(growth)]);
            Ok(t)
        }
        Command::Action { u_re, u_im } => {
            let a = action_s(&cfg.complex(u_re, u_im), cfg)?;
            let mut t = Table::new(vec![
                "u_re", "u_im", "sprime_re", "sprime_im", "s_re", "s_im", "vol", "cs", "v_re", "v_im",
            ]);
            let mut row = Vec::new();
            row.extend(complex_cells(&a.u));
            row.extend(complex_cells(&a.s_prime));
            row.extend(complex_cells(&a.s));
            row.push(Cell::Big(a.vol));
            row.push(Cell::Big(a.cs));
            row.extend(complex_cells(&a.v));
            t.push(row);
            Ok(t)
        }
        Command::Torsion(TorsionArgs { alpha, zero }) => {
            let mut t = Table::new(vec!["mode", "alpha", "torsion"]);
            if zero {
                t.push(vec![Cell::Text("trivial".into()), Cell::Real(0.0), Cell::Big(torsion_fig8_zero(cfg))]);
            } else {
                let alpha = alpha.expect("clap enforces one of --alpha/--zero");
                let value = torsion_fig8(&cfg.float(alpha), cfg)?;
                t.push(vec![Cell::Text("cone".into()), Cell::Real(alpha), Cell::Big(value)]);
            }
            Ok(t)
        }
        Command::Delta {
            knot,
            rep,
            annulus_central,
            satellite_hyp,
        } => {
            let expr = parse_knot(&knot)?;
            let class = RepClass::new(rep.into())
                .with_annulus_central(annulus_central)
                .with_satellite_hypotheses(parse_hypotheses(&satellite_hyp)?);
            let d = delta_rep(&expr, &class)?;
            let mut t = Table::new(vec!["knot", "rep", "delta", "h0", "h1_ker", "trace"]);
            t.push(vec![
                Cell::Text(expr.render()),
                Cell::Text(class.kind.to_string()),
                Cell::Int(d.delta.into()),
                Cell::Int(d.h0.into()),
                Cell::Int(d.h1_ker.into()),
                Cell::Text(d.trace.join(";")),
            ]);
            Ok(t)
        }
        Command::Alexander { braid } => {
            let word = parse_braid(&braid)?;
            let poly = alexander_poly(&presentation_from_braid(&word)?)?;
            let pairs: Vec<String> = poly.terms().map(|(c, e)| format!("{c}:{e}")).collect();
            let mut t = Table::new(vec!["braid", "poly", "delta_at_1", "delta_at_minus_1"]);
            t.push(vec![
                Cell::Text(word.to_string()),
                Cell::Text(pairs.join(" ")),
                Cell::Int(poly.eval_int(1) as i64),
                Cell::Int(poly.eval_int(-1) as i64),
            ]);
            Ok(t)
        }
        Command::Residual { n, r_min, r_max, steps } => {
            if n == 0 {
                return Err(Error::Domain("the color N must be at least 1".into()));
            }
            let rows = sweep(n, r_min, r_max, steps, cfg)?;
            let mut t = Table::new(vec!["N", "r", "log_jones", "prediction", "residual", "status"]);
            for row in rows {
                match row.outcome {
                    Ok(res) => t.push(vec![
                        Cell::Int(res.n as i64),
                        Cell::Real(res.r),
                        Cell::Real(res.log_jones),
                        Cell::Real(res.prediction),
                        Cell::Real(res.residual),
                        Cell::Text("ok".into()),
                    ]),
                    Err(e) => {
                        notes.push(format!("N = {}, r = {}: {e}", row.n, fmt_real(row.r)));
                        t.push(vec![
                            Cell::Int(row.n as i64),
                            Cell::Real(row.r),
                            Cell::Missing,
                            Cell::Missing,
                            Cell::Missing,
                            Cell::Text("error".into()),
                        ]);
                    }
                }
            }
            Ok(t)
        }
        Command::Fit {
            r,
            n_list,
            knot,
            inverse_term,
        } => {
            let expr = parse_knot(&knot)?;
            let model = if inverse_term {
                FitModel::LogAffineWithInverse
            } else {
                FitModel::LogAffine
            };
            let rep = fit_expansion_with(&expr, &n_list, r, model, cfg)?;
            let mut t = Table::new(vec![
                "knot",
                "r",
                "a",
                "b",
                "c",
                "d",
                "vol_est",
                "delta_est",
                "torsion_const_est",
                "rms",
            ]);
            t.push(vec![
                Cell::Text(rep.knot),
                Cell::Real(rep.r),
                Cell::Real(rep.a),
                Cell::Real(rep.b),
                Cell::Real(rep.c),
                rep.d.map_or(Cell::Missing, Cell::Real),
                Cell::Real(rep.vol_est),
                Cell::Real(rep.delta_est),
                Cell::Real(rep.torsion_const_est),
                Cell::Real(rep.rms),
            ]);
            Ok(t)
        }
        Command::Volcheck { n_max } => {
            let v = volume_conjecture_check(n_max, cfg)?;
            let mut t = Table::new(vec!["N_max", "vol_est"]);
            t.push(vec![Cell::Int(n_max as i64), Cell::Big(v)]);
            Ok(t)
        }
    }
}

fn report(e: &Error, err: &mut dyn Write) -> i32 {
    let _ = match e {
        Error::Parse { .. } => writeln!(err, "{e}"),
        _ => writeln!(err, "error: {e}"),
    };
    e.exit_code()
}

/// Runs the command line with explicit output streams; returns the exit
/// status.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let cfg = match PrecisionCfg::new(cli.digits) {
        Ok(cfg) => cfg,
        Err(e) => return report(&e, err),
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return report(&Error::Config("--jobs must be at least 1".into()), err);
        }
        builder = builder.num_threads(jobs);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => return report(&Error::Config(format!("cannot start worker pool: {e}")), err),
    };
    let json = cli.json;
    let mut notes = Vec::new();
    let result = pool.install(|| execute(cli.command, &cfg, &mut notes));
    for note in &notes {
        let _ = writeln!(err, "{note}");
    }
    match result {
        Ok(table) => match table.write(out, json) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                3
            }
        },
        Err(e) => report(&e, err),
    }
}

/// Runs the command line against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

