use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use derham_core::derham::{filtration, FiltrationReport};
use derham_core::jacobian::{jacobian_homology, milnor_profile};
use derham_core::parser::scan_identifiers;
use derham_core::report::{align, homology_label, DerhamBlock, DerhamStatus};
use derham_core::{
    derham_homology, emit_report, format_polynomial, parse_polynomial, run_selftest,
    verify_main_theorem, Error, Format, Hypersurface, PoleCap, Polynomial, RingContext,
    TheoremStatus, VerifyOptions,
};

#[derive(Parser, Debug)]
#[command(
    name = "derham",
    version,
    about = "Exact de Rham homology of localized hypersurface rings"
)]
struct Cli {
    /// Comma-separated variable names; inferred from the polynomial if omitted.
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Comma-separated positive weights; all 1 if omitted.
    #[arg(long, global = true, value_delimiter = ',')]
    weights: Option<Vec<u32>>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Upper degree for Jacobian scans.
    #[arg(long, global = true, allow_hyphen_values = true)]
    degree_cap: Option<i64>,
    /// Seed for `selftest`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock timings in `verify` output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse, Euler identity, smoothness and Milnor profile.
    Check {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Hilbert function of the Milnor algebra.
    Milnor {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        scan_bound: Option<i64>,
    },
    /// Dimensions of H_p(∂f; A)_t.
    Jkoszul {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        p: usize,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "t_range")]
        t: Option<i64>,
        /// Inclusive range `A..B`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        t_range: Option<(i64, i64)>,
    },
    /// Truncated de Rham homology H_p(∂; R_f)_j.
    Derham {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        p: usize,
        /// A positive integer or `auto`.
        #[arg(long, default_value = "auto", value_parser = parse_cap)]
        pole_cap: PoleCap,
        /// Defaults to −ω.
        #[arg(long, allow_hyphen_values = true)]
        internal_degree: Option<i64>,
    },
    /// Full verification of the vanishing theorem.
    Verify {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Seeded randomized property checks.
    Selftest {
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let a: i64 = a
        .trim()
        .parse()
        .map_err(|e| format!("bad range start: {e}"))?;
    let b: i64 = b
        .trim()
        .parse()
        .map_err(|e| format!("bad range end: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn parse_cap(s: &str) -> Result<PoleCap, String> {
    if s == "auto" {
        return Ok(PoleCap::Auto);
    }
    s.parse::<u32>()
        .map(PoleCap::Fixed)
        .map_err(|_| format!("expected a non-negative integer or `auto`, got `{s}`"))
}

struct Failure {
    code: u8,
    kind: &'static str,
    position: Option<usize>,
    message: String,
}

impl Failure {
    fn input(kind: &'static str, message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            kind,
            position: None,
            message: message.into(),
        }
    }

    fn line(&self) -> String {
        let pos = self
            .position
            .map(|p| format!(" position={p}"))
            .unwrap_or_default();
        format!("error: kind={}{pos} message={:?}", self.kind, self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        let (code, kind, position) = match &e {
            Error::Syntax { position, .. } => (2, "parse", Some(*position)),
            Error::UnknownIdentifier { position, .. } => (2, "unknown_identifier", Some(*position)),
            Error::BadExponent { position, .. } => (2, "bad_exponent", Some(*position)),
            Error::InvalidContext(_) => (2, "weights", None),
            Error::NotHomogeneous => (2, "not_homogeneous", None),
            Error::ZeroPolynomial => (2, "zero_polynomial", None),
            Error::ContextMismatch => (2, "context_mismatch", None),
            Error::Precondition(_) => (2, "precondition", None),
            Error::AutoCapUnavailable(_) => (2, "auto_cap_unavailable", None),
            Error::DegreeCapRequired => (2, "degree_cap_required", None),
            Error::NotStabilized { .. } => (3, "not_stabilized", None),
            Error::HypothesisNotMet(_) => (4, "hypothesis_not_met", None),
            Error::Internal(_) => (1, "internal", None),
        };
        Failure {
            code,
            kind,
            position,
            message,
        }
    }
}

type CliResult = Result<(String, u8), Failure>;

fn ring(cli: &Cli, f: &str) -> Result<Arc<RingContext>, Failure> {
    let vars = match &cli.vars {
        Some(v) => v.clone(),
        None => scan_identifiers(f)?,
    };
    if vars.is_empty() {
        return Err(Failure::input("weights", "no variables: pass --vars"));
    }
    let weights = match &cli.weights {
        Some(w) if w.len() != vars.len() => {
            return Err(Failure::input(
                "weights",
                format!("{} weights for {} variables", w.len(), vars.len()),
            ))
        }
        Some(w) => w.clone(),
        None => vec![1; vars.len()],
    };
    Ok(RingContext::new(vars, weights)?)
}

fn polynomial(cli: &Cli, f: &str) -> Result<Polynomial, Failure> {
    let ctx = ring(cli, f)?;
    Ok(parse_polynomial(f, &ctx)?)
}

fn hypersurface(cli: &Cli, f: &str) -> Result<Hypersurface, Failure> {
    let poly = polynomial(cli, f)?;
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial.into());
    }
    Ok(Hypersurface::new(poly)?)
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn row<const N: usize>(cells: [String; N]) -> Vec<String> {
    cells.to_vec()
}

fn check(cli: &Cli, f: &str) -> CliResult {
    let h = hypersurface(cli, f)?;
    let ctx = h.ctx();
    let m = h.milnor();
    let smooth = m.is_artinian;
    let out = match cli.format {
        OutputFormat::Json => render_json(&json!({
            "f": format_polynomial(h.f()),
            "vars": ctx.var_names(),
            "weights": ctx.weights(),
            "n": h.n(),
            "d": h.degree(),
            "omega": h.omega(),
            "quasi_homogeneous": true,
            "euler_identity": true,
            "smooth_isolated": smooth,
            "milnor": {
                "scan_bound": m.scan_bound,
                "hilbert": m.hilbert,
                "is_artinian": smooth,
                "top_degree": m.top_degree,
                "milnor_number": smooth.then(|| m.total()),
            },
        })),
        OutputFormat::Table => align(&[
            row(["f".into(), format_polynomial(h.f())]),
            row(["variables".into(), ctx.var_names().join(",")]),
            row([
                "weights".into(),
                ctx.weights()
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            ]),
            row(["degree".into(), h.degree().to_string()]),
            row(["ω".into(), h.omega().to_string()]),
            row(["quasi-homogeneous".into(), "true".into()]),
            row(["Euler identity".into(), "true".into()]),
            row(["smooth (isolated)".into(), smooth.to_string()]),
            row([
                "Milnor number".into(),
                if smooth {
                    m.total().to_string()
                } else {
                    "infinite".into()
                },
            ]),
            row([
                "top degree".into(),
                m.top_degree.map_or_else(|| "-".into(), |t| t.to_string()),
            ]),
        ]),
    };
    Ok((out, if smooth { 0 } else { 4 }))
}

fn milnor(cli: &Cli, f: &str, scan_bound: Option<i64>) -> CliResult {
    let h = hypersurface(cli, f)?;
    let bound = scan_bound.unwrap_or_else(|| h.milnor_scan_bound());
    let m = milnor_profile(&h, bound)?;
    let out = match cli.format {
        OutputFormat::Json => render_json(&json!({
            "scan_bound": m.scan_bound,
            "hilbert": m.hilbert,
            "is_artinian": m.is_artinian,
            "top_degree": m.top_degree,
            "milnor_number": m.is_artinian.then(|| m.total()),
        })),
        OutputFormat::Table => {
            let mut rows = vec![row(["t".into(), "dim M_t".into()])];
            for (t, d) in m.hilbert.iter().enumerate() {
                rows.push(row([t.to_string(), d.to_string()]));
            }
            let mut s = align(&rows);
            s.push_str(&format!(
                "artinian: {}, top degree {}\n",
                m.is_artinian,
                m.top_degree.map_or_else(|| "-".into(), |t| t.to_string())
            ));
            s
        }
    };
    Ok((out, 0))
}

fn jkoszul(cli: &Cli, f: &str, p: usize, t: Option<i64>, range: Option<(i64, i64)>) -> CliResult {
    let h = hypersurface(cli, f)?;
    if p > h.n() {
        return Err(Failure::input(
            "precondition",
            format!("p = {p} exceeds n = {}", h.n()),
        ));
    }
    let (a, b) = match (t, range) {
        (Some(t), _) => (t, t),
        (None, Some(r)) => r,
        (None, None) => {
            let r = h.jacobian_scan_range(p);
            (*r.start(), cli.degree_cap.unwrap_or(*r.end()))
        }
    };
    let mut slices = Vec::new();
    for t in a..=b {
        slices.push(jacobian_homology(&h, p, t)?);
    }
    let out = match cli.format {
        OutputFormat::Json => {
            let dims: serde_json::Map<String, Value> = slices
                .iter()
                .map(|s| (s.t.to_string(), json!(s.dim())))
                .collect();
            let detail: Vec<Value> = slices
                .iter()
                .map(|s| {
                    json!({
                        "t": s.t,
                        "chain_dim": s.layer.dim(),
                        "cycle_dim": s.cycle_dim,
                        "boundary_rank": s.boundary_rank(),
                        "dim": s.dim(),
                    })
                })
                .collect();
            render_json(&json!({ "p": p, "t_min": a, "t_max": b, "dims": dims, "slices": detail }))
        }
        OutputFormat::Table => {
            let mut rows = vec![row([
                "t".into(),
                "dim K'_p".into(),
                "dim Z".into(),
                "rank B".into(),
                format!("dim H_{p}(∂f;A)_t"),
            ])];
            for s in &slices {
                rows.push(row([
                    s.t.to_string(),
                    s.layer.dim().to_string(),
                    s.cycle_dim.to_string(),
                    s.boundary_rank().to_string(),
                    s.dim().to_string(),
                ]));
            }
            align(&rows)
        }
    };
    Ok((out, 0))
}

fn derham(cli: &Cli, f: &str, p: usize, cap: PoleCap, j: Option<i64>) -> CliResult {
    let h = hypersurface(cli, f)?;
    let omega = h.omega();
    let j = j.unwrap_or(-omega);
    let (block, code, failure) = match derham_homology(&h, p, j, cap, cli.degree_cap) {
        Ok(hom) => {
            let (filt, note): (Option<FiltrationReport>, Option<String>) =
                if j == -omega && p >= 1 && p < h.n() {
                    match filtration(&h, &hom, cli.degree_cap) {
                        Ok(r) => (Some(r), None),
                        Err(Error::HypothesisNotMet(msg)) => (None, Some(msg)),
                        Err(e) => return Err(e.into()),
                    }
                } else {
                    (None, None)
                };
            let block = DerhamBlock {
                p,
                internal_degree: j,
                pole_cap: Some(hom.pole_cap),
                auto_cap: hom.auto_cap,
                status: DerhamStatus::Stabilized,
                transition_ranks: hom.transition_ranks.clone(),
                dim: Some(hom.dim),
                asserted_dim: None,
                filtration: filt,
                note,
            };
            (block, 0, None)
        }
        Err(e @ Error::NotStabilized { .. }) => {
            let Error::NotStabilized {
                cap: reached,
                ranks,
            } = &e
            else {
                unreachable!()
            };
            let block = DerhamBlock {
                p,
                internal_degree: j,
                pole_cap: Some(*reached),
                auto_cap: matches!(cap, PoleCap::Auto),
                status: DerhamStatus::NotStabilized,
                transition_ranks: ranks.clone(),
                dim: None,
                asserted_dim: None,
                filtration: None,
                note: Some(e.to_string()),
            };
            (block, 3, Some(Failure::from(e)))
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(fail) = failure {
        eprintln!("{}", fail.line());
    }
    let out = match cli.format {
        OutputFormat::Json => render_json(&serde_json::to_value(&block).expect("block serializes")),
        OutputFormat::Table => {
            let cap_text = block.pole_cap.map_or_else(|| "-".into(), |c| c.to_string());
            let mut rows = vec![
                row([
                    format!("{} at j = {j}", homology_label(p, h.n())),
                    block.dim.map_or_else(|| "-".into(), |d| d.to_string()),
                ]),
                row([
                    "pole cap".into(),
                    if block.auto_cap {
                        format!("{cap_text} (auto)")
                    } else {
                        cap_text
                    },
                ]),
                row([
                    "transition ranks".into(),
                    block
                        .transition_ranks
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(","),
                ]),
            ];
            if let Some(filt) = &block.filtration {
                rows.push(row([
                    "dim F_ν".into(),
                    filt.levels
                        .iter()
                        .map(|l| l.dim_f.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                ]));
                rows.push(row([
                    "η ranks".into(),
                    filt.levels
                        .iter()
                        .map(|l| l.eta_rank.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                ]));
                rows.push(row(["filtration theorem".into(), filt.holds().to_string()]));
            }
            if let Some(note) = &block.note {
                rows.push(row(["note".into(), note.clone()]));
            }
            align(&rows)
        }
    };
    Ok((out, code))
}

fn verify(cli: &Cli, f: &str) -> CliResult {
    let poly = polynomial(cli, f)?;
    let opts = VerifyOptions {
        degree_cap: cli.degree_cap,
        timing: cli.timing,
    };
    let report = verify_main_theorem(&poly, opts)?;
    let format = match cli.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Table => Format::Table,
    };
    let code = match report.theorem.status {
        TheoremStatus::Verified => 0,
        TheoremStatus::Failed => 1,
        TheoremStatus::Inconclusive => 3,
        TheoremStatus::HypothesisNotMet => 4,
    };
    if code != 0 {
        let kind = report.theorem.status.as_str();
        let reason = report.theorem.reason.clone().unwrap_or_default();
        eprintln!("error: kind={kind} message={reason:?}");
    }
    Ok((emit_report(&report, format), code))
}

fn selftest(cli: &Cli, cases: usize) -> CliResult {
    let r = run_selftest(cli.seed, cases)?;
    let out = match cli.format {
        OutputFormat::Json => render_json(&json!({
            "seed": r.seed,
            "checks": r.checks.iter().map(|c| json!({
                "name": c.name, "cases": c.cases, "passed": c.passed,
            })).collect::<Vec<_>>(),
            "all_passed": r.all_passed(),
        })),
        OutputFormat::Table => {
            let mut rows = vec![row(["check".into(), "passed".into(), "cases".into()])];
            for c in &r.checks {
                rows.push(row([
                    c.name.clone(),
                    c.passed.to_string(),
                    c.cases.to_string(),
                ]));
            }
            let mut s = align(&rows);
            s.push_str(&format!("seed {}\n", r.seed));
            s
        }
    };
    if !r.all_passed() {
        eprintln!(
            "error: kind=selftest_failed message={:?}",
            format!("seed {}", r.seed)
        );
    }
    Ok((out, if r.all_passed() { 0 } else { 1 }))
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Check { f } => check(cli, f),
        Command::Milnor { f, scan_bound } => milnor(cli, f, *scan_bound),
        Command::Jkoszul { f, p, t, t_range } => jkoszul(cli, f, *p, *t, *t_range),
        Command::Derham {
            f,
            p,
            pole_cap,
            internal_degree,
        } => derham(cli, f, *p, *pole_cap, *internal_degree),
        Command::Verify { f } => verify(cli, f),
        Command::Selftest { cases } => selftest(cli, *cases),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            eprintln!("error: kind=usage message={first:?}");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(fail) => {
            eprintln!("{}", fail.line());
            ExitCode::from(fail.code)
        }
    }
}
