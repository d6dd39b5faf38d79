//! Front end for the `gysin` binary: space and class parsing, request
//! execution and report formatting.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use gysin::oracle::{abbv_pushforward, OracleError};
use gysin::residue::ResidueError;
use gysin::schur::{partitions, schur_at, schur_poly, two_mu_plus_rho};
use gysin::spaces::{pushforward, pushforward_unsimplified, weyl_order, Family, SpaceError, SpaceSpec};
use gysin::text::{parse_with, ParseError, ResolveError, Resolver};
use gysin::{Polynomial, VarId};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid space `{input}`: {reason}")]
    BadSpace { input: String, reason: String },
    #[error("invalid class: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Space(String),
    #[error("oracle failed: {0}")]
    Oracle(#[from] OracleError),
    #[error("--unsimplified needs a type-A flag space (flA:...), got {0}")]
    UnsimplifiedNeedsFlagA(String),
    #[error("invalid table `{input}`: expected pr:n,maxweight")]
    BadTable { input: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl From<SpaceError> for CliError {
    fn from(e: SpaceError) -> Self {
        let msg = match &e {
            SpaceError::NotWeylSymmetric { block } => format!(
                "class is not symmetric in the variables of block z[{block},*]; \
                 symmetrize it, e.g. with elementary or Schur polynomials such as s[1](z[{block}])"
            ),
            SpaceError::ForeignVariable(v) => format!("variable {v} does not belong to this space"),
            SpaceError::Residue(ResidueError::NotNormalCrossing { factor, var }) => format!(
                "integrand is not normal crossing: factor {factor} involves {var} outside the residue order"
            ),
            SpaceError::Residue(ResidueError::NotPolynomial) => {
                "residue did not produce a polynomial in t".to_string()
            }
            _ => e.to_string(),
        };
        CliError::Space(msg)
    }
}

fn bad_space(input: &str, reason: impl Into<String>) -> CliError {
    CliError::BadSpace {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn numbers(input: &str, list: &str) -> Result<Vec<u16>, CliError> {
    list.split(',')
        .map(|s| {
            s.trim()
                .parse::<u16>()
                .map_err(|_| bad_space(input, format!("`{}` is not a positive integer", s.trim())))
        })
        .collect()
}

/// Parses `gr:k,n`, `lg:n`, `og:n,2n`, `og:n,2n+1`, `flA:d1,...,dk;n` and
/// likewise `flC`, `flB` (symmetric form on `C^{2n}`), `flD` (on `C^{2n+1}`).
pub fn parse_space(input: &str) -> Result<SpaceSpec, CliError> {
    let (head, rest) = input
        .trim()
        .split_once(':')
        .ok_or_else(|| bad_space(input, "missing `:`"))?;
    let wrap = |r: Result<SpaceSpec, SpaceError>| r.map_err(|e| bad_space(input, e.to_string()));
    match head {
        "gr" => match numbers(input, rest)?[..] {
            [k, n] => wrap(SpaceSpec::gr(k, n)),
            _ => Err(bad_space(input, "expected gr:k,n")),
        },
        "lg" => match numbers(input, rest)?[..] {
            [n] => wrap(SpaceSpec::lg(n)),
            _ => Err(bad_space(input, "expected lg:n")),
        },
        "og" => {
            let (n, dim) = rest
                .split_once(',')
                .ok_or_else(|| bad_space(input, "expected og:n,2n or og:n,2n+1"))?;
            let n: u16 = n
                .trim()
                .parse()
                .map_err(|_| bad_space(input, "n is not a positive integer"))?;
            let dim = dim.trim();
            let size: u32 = match dim {
                "2n" => 2 * n as u32,
                "2n+1" => 2 * n as u32 + 1,
                _ => dim
                    .parse()
                    .map_err(|_| bad_space(input, "expected 2n, 2n+1 or a number"))?,
            };
            if size == 2 * n as u32 {
                wrap(SpaceSpec::og_even(n))
            } else if size == 2 * n as u32 + 1 {
                wrap(SpaceSpec::og_odd(n))
            } else {
                Err(bad_space(input, format!("ambient dimension {size} is neither 2n nor 2n+1")))
            }
        }
        "flA" | "flC" | "flB" | "flD" => {
            let family = match head {
                "flA" => Family::FlagA,
                "flC" => Family::FlagC,
                "flB" => Family::FlagSym2n,
                _ => Family::FlagSym2n1,
            };
            let (d, n) = rest
                .split_once(';')
                .ok_or_else(|| bad_space(input, format!("expected {head}:d1,...,dk;n")))?;
            let d = numbers(input, d)?;
            let n = match numbers(input, n)?[..] {
                [n] => n,
                _ => return Err(bad_space(input, "n must be a single integer")),
            };
            wrap(SpaceSpec::flag(family, d, n))
        }
        _ => Err(bad_space(input, format!("unknown family `{head}`"))),
    }
}

/// Resolves names against a space: `z[i]` is the last z-block, `z[g,i]` is
/// block `g`, `t[i]` is bounded by `n`.
pub struct SpaceResolver<'a> {
    pub spec: &'a SpaceSpec,
}

impl SpaceResolver<'_> {
    fn z(&self, g: u32, i: u32) -> Result<VarId, ResolveError> {
        let k = self.spec.steps() as u32;
        if g == 0 || g > k || i == 0 || i > self.spec.d()[g as usize - 1] as u32 {
            return Err(ResolveError::Unknown);
        }
        Ok(VarId::z(g as u16, i as u16))
    }
}

impl Resolver for SpaceResolver<'_> {
    fn variable(&self, name: &str, idx: &[u32]) -> Result<VarId, ResolveError> {
        match (name, idx) {
            ("z", [i]) => self.z(self.spec.steps() as u32, *i),
            ("z", [g, i]) => self.z(*g, *i),
            ("t", [i]) if *i >= 1 && *i <= self.spec.n() as u32 => Ok(VarId::t(*i as u16)),
            _ => Err(ResolveError::Unknown),
        }
    }

    fn block(&self, name: &str, group: Option<u32>) -> Result<Vec<VarId>, ResolveError> {
        match (name, group) {
            ("z", None) => Ok(self.spec.last_block()),
            ("z", Some(g)) if g >= 1 && g <= self.spec.steps() as u32 => {
                Ok(self.spec.block_vars(g as u16))
            }
            ("t", None) => Ok(self.spec.params()),
            _ => Err(ResolveError::Unknown),
        }
    }
}

pub fn parse_class(expr: &str, spec: &SpaceSpec) -> Result<Polynomial, CliError> {
    Ok(parse_with(expr, &SpaceResolver { spec })?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct Request {
    pub space: SpaceSpec,
    pub class_expr: String,
    pub check_oracle: bool,
    pub output_format: OutputFormat,
    pub unsimplified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub space: String,
    pub class: String,
    pub result: String,
    /// `None` for the zero polynomial.
    pub degree: Option<u32>,
    pub weyl_order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn disagrees(&self) -> bool {
        self.agree == Some(false)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "space: {}", self.space);
        let _ = writeln!(s, "class: {}", self.class);
        let _ = writeln!(s, "result: {}", self.result);
        match self.degree {
            Some(d) => {
                let _ = writeln!(s, "degree: {d}");
            }
            None => {
                let _ = writeln!(s, "degree: none");
            }
        }
        let _ = writeln!(s, "weyl_order: {}", self.weyl_order);
        if let Some(o) = &self.oracle {
            let _ = writeln!(s, "oracle: {o}");
        }
        if let Some(a) = self.agree {
            let _ = writeln!(s, "agree: {a}");
        }
        let _ = writeln!(s, "time: {:.3} ms", self.elapsed.as_secs_f64() * 1e3);
        s
    }
}

pub fn run(request: &Request) -> Result<Report, CliError> {
    let start = Instant::now();
    let spec = &request.space;
    let alpha = parse_class(&request.class_expr, spec)?;
    let result = if request.unsimplified {
        if spec.family() != Family::FlagA {
            return Err(CliError::UnsimplifiedNeedsFlagA(spec.to_string()));
        }
        pushforward_unsimplified(spec, &alpha)?
    } else {
        pushforward(spec, &alpha)?
    };
    let oracle = if request.check_oracle {
        Some(abbv_pushforward(spec, &alpha)?)
    } else {
        None
    };
    Ok(Report {
        space: spec.to_string(),
        class: alpha.to_string(),
        result: result.to_string(),
        degree: result.total_degree(),
        weyl_order: weyl_order(spec),
        agree: oracle.as_ref().map(|o| *o == result),
        oracle: oracle.map(|o| o.to_string()),
        elapsed: start.elapsed(),
    })
}

/// One row of the Lagrangian Schur table.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub lambda: String,
    pub mu: String,
    pub result: String,
    pub expected: String,
    pub agree: bool,
}

/// `int_{LG(n)} s_{2mu+rho}(z)` against `s_mu(t_1^2, ..., t_n^2)` for every
/// `mu` with at most `n` parts and `|mu| <= max_weight`.
pub fn pr_table(n: u16, max_weight: u32) -> Result<Vec<TableRow>, CliError> {
    let spec = SpaceSpec::lg(n).map_err(|e| bad_space(&format!("lg:{n}"), e.to_string()))?;
    let z = spec.last_block();
    let squares: Vec<Polynomial> = (1..=n).map(|i| Polynomial::var(VarId::t(i)).pow(2)).collect();
    let mus: Vec<_> = (0..=max_weight)
        .flat_map(|w| partitions(w, n as usize))
        .collect();
    mus.par_iter()
        .map(|mu| {
            let lambda = two_mu_plus_rho(mu, n as usize);
            let result = pushforward(&spec, &schur_poly(&lambda, &z))?;
            let expected = schur_at(mu, &squares);
            Ok(TableRow {
                lambda: lambda.to_string(),
                mu: mu.to_string(),
                agree: result == expected,
                result: result.to_string(),
                expected: expected.to_string(),
            })
        })
        .collect()
}

pub fn parse_table(input: &str) -> Result<(u16, u32), CliError> {
    let err = || CliError::BadTable {
        input: input.to_string(),
    };
    let rest = input.trim().strip_prefix("pr:").ok_or_else(err)?;
    let (n, w) = rest.split_once(',').ok_or_else(err)?;
    let n: u16 = n.trim().parse().map_err(|_| err())?;
    let w: u32 = w.trim().parse().map_err(|_| err())?;
    if n == 0 {
        return Err(err());
    }
    Ok((n, w))
}

#[derive(Debug, Parser)]
#[command(name = "gysin", version, about = "Equivariant push-forwards on classical homogeneous spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Push a class forward to a point.
    Pushforward {
        /// gr:k,n | lg:n | og:n,2n | og:n,2n+1 | flA:d1,...,dk;n | flC:... | flB:... | flD:...
        #[arg(long)]
        space: String,
        /// Polynomial in z[i], z[g,i], t[i] and s[partition](z); `-` reads stdin.
        #[arg(long)]
        class: String,
        /// Cross-check against fixed-point localization.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Use the full (u, v) integrand of a type-A flag.
        #[arg(long)]
        unsimplified: bool,
    },
    /// Print the Lagrangian Schur table, e.g. `pr:3,4`.
    Table {
        spec: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

/// Binds rayon's global pool to `GYSIN_THREADS` when set.
pub fn configure_threads(value: Option<&str>) -> Result<(), String> {
    let Some(v) = value else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| format!("GYSIN_THREADS must be a positive integer, got `{v}`"))?;
    if n == 0 {
        return Err("GYSIN_THREADS must be at least 1".into());
    }
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn execute(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Pushforward {
            space,
            class,
            oracle,
            format,
            unsimplified,
        } => {
            let class_expr = if class == "-" {
                let mut s = String::new();
                stdin.read_to_string(&mut s)?;
                s.trim().to_string()
            } else {
                class
            };
            let request = Request {
                space: parse_space(&space)?,
                class_expr,
                check_oracle: oracle,
                output_format: format,
                unsimplified,
            };
            let report = run(&request)?;
            match request.output_format {
                OutputFormat::Text => out.write_all(report.to_text().as_bytes())?,
                OutputFormat::Json => writeln!(out, "{}", report.to_json())?,
            }
            Ok(if report.disagrees() { 2 } else { 0 })
        }
        Command::Table { spec, format } => {
            let (n, w) = parse_table(&spec)?;
            let rows = pr_table(n, w)?;
            match format {
                OutputFormat::Text => {
                    for r in &rows {
                        writeln!(out, "{}\t{}\t{}", r.lambda, r.mu, r.result)?;
                    }
                }
                OutputFormat::Json => {
                    writeln!(out, "{}", serde_json::to_string(&rows).expect("rows serialize"))?
                }
            }
            Ok(if rows.iter().all(|r| r.agree) { 0 } else { 2 })
        }
    }
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 2 when a cross-check disagrees, 1 on any error.
pub fn main_with<I, T>(
    args: I,
    threads: Option<&str>,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    if let Err(m) = configure_threads(threads) {
        let _ = writeln!(err, "error: {m}");
        return 1;
    }
    match execute(cli, stdin, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
