//! Command implementations behind the `hadsec` binary. Each command returns
//! its rendered output and whether it passed; `main` maps that to an exit
//! code.

use std::fs;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use hadsec_core::degeneration::{default_nu_sequence, limit_check, parse_nu, sample_base_points};
use hadsec_core::hadamard::DEFAULT_HRANK_MARGIN;
use hadsec_core::tropical::{binomial_witness, classify_support, Support, SupportVerdict};
use hadsec_core::{
    generic_hrank, hadamard_dimension, normalize, secant_dimension, verify_table, DimConfig,
    Error as CoreError, ExponentMatrix, HadamardSpec, HrankOutcome, TableKind, VarietyDescriptor,
    DEFAULT_PRIME,
};
use serde::Serialize;

/// Version of the JSON envelope.
pub const SCHEMA: u32 = 1;

/// Column order of every CSV summary.
pub const CSV_HEADER: [&str; 6] = ["descriptor", "r", "m", "dim", "expected", "status"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub prime: u64,
    pub trials: usize,
    pub seed: u64,
    pub max_retries: usize,
    #[serde(skip)]
    pub format: Format,
    #[serde(skip)]
    pub parallel: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            prime: DEFAULT_PRIME,
            trials: 3,
            seed: 0,
            max_retries: 5,
            format: Format::Json,
            parallel: true,
        }
    }
}

impl RunConfig {
    pub fn dim_config(&self) -> Result<DimConfig> {
        let cfg = DimConfig {
            prime: self.prime,
            trials: self.trials,
            seed: self.seed,
            max_retries: self.max_retries,
            parallel: self.parallel,
            ..DimConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Rendered output of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub pass: bool,
}

fn parse_err(pos: usize, msg: impl Into<String>) -> CoreError {
    CoreError::Parse {
        pos,
        msg: msg.into(),
    }
}

/// Comma-separated non-negative integers; `offset` is the position of
/// `text` inside the full descriptor, for error messages.
fn parse_uints(text: &str, offset: usize) -> Result<Vec<u32>, CoreError> {
    let mut out = Vec::new();
    let mut pos = offset;
    for tok in text.split(',') {
        let v = tok.trim().parse::<u32>().map_err(|_| {
            parse_err(
                pos,
                format!("expected a non-negative integer, found {tok:?}"),
            )
        })?;
        out.push(v);
        pos += tok.len() + 1;
    }
    Ok(out)
}

/// Split `key=value` and check the key; returns the value and its offset.
fn keyed<'a>(text: &'a str, key: &str, offset: usize) -> Result<(&'a str, usize), CoreError> {
    match text.split_once('=') {
        Some((k, v)) if k.trim() == key => Ok((v, offset + k.len() + 1)),
        _ => Err(parse_err(offset, format!("expected `{key}=...`"))),
    }
}

/// Parse `veronese:d=<int>,n=<int>`, `segre:n=<ints>`,
/// `sv:d=<ints>;n=<ints>`, `rnc:<int>` or `matrix:<path>`.
pub fn parse_descriptor(text: &str) -> Result<VarietyDescriptor> {
    let Some((family, rest)) = text.split_once(':') else {
        return Err(parse_err(0, "missing `<family>:`").into());
    };
    let off = family.len() + 1;
    let desc = match family {
        "veronese" => {
            let Some((d_part, n_part)) = rest.split_once(",n=") else {
                return Err(parse_err(off, "expected `d=<int>,n=<int>`").into());
            };
            let (d, d_off) = keyed(d_part, "d", off)?;
            let n_off = off + d_part.len() + 3;
            let d = parse_uints(d, d_off)?;
            let n = parse_uints(n_part, n_off)?;
            if d.len() != 1 || n.len() != 1 {
                return Err(parse_err(off, "veronese takes a single degree and dimension").into());
            }
            VarietyDescriptor::veronese(d[0], n[0])?
        }
        "segre" => {
            let (n, n_off) = keyed(rest, "n", off)?;
            VarietyDescriptor::segre(&parse_uints(n, n_off)?)?
        }
        "sv" => {
            let Some((d_part, n_part)) = rest.split_once(';') else {
                return Err(parse_err(off, "expected `d=<ints>;n=<ints>`").into());
            };
            let (d, d_off) = keyed(d_part, "d", off)?;
            let (n, n_off) = keyed(n_part, "n", off + d_part.len() + 1)?;
            let d = parse_uints(d, d_off)?;
            let n = parse_uints(n, n_off)?;
            if d.len() != n.len() {
                return Err(parse_err(
                    n_off,
                    format!("d has {} entries but n has {}", d.len(), n.len()),
                )
                .into());
            }
            VarietyDescriptor::segre_veronese(&d, &n)?
        }
        "rnc" => {
            let v = parse_uints(rest, off)?;
            if v.len() != 1 {
                return Err(parse_err(off, "rnc takes a single degree").into());
            }
            VarietyDescriptor::rnc(v[0])?
        }
        "matrix" => {
            if rest.is_empty() {
                return Err(parse_err(off, "missing matrix path").into());
            }
            let csv = fs::read_to_string(rest).with_context(|| format!("reading {rest}"))?;
            VarietyDescriptor::custom(ExponentMatrix::from_csv(&csv)?, rest)?
        }
        other => {
            return Err(parse_err(0, format!("unknown family {other:?}")).into());
        }
    };
    Ok(desc)
}

/// Comma-separated r-vector.
pub fn parse_r_vector(text: &str) -> Result<Vec<usize>> {
    let v = parse_uints(text, 0)?;
    if v.is_empty() || v.contains(&0) {
        bail!("r-vector entries must be positive");
    }
    Ok(v.into_iter().map(|x| x as usize).collect())
}

fn r_label(r: &[usize]) -> String {
    let parts: Vec<String> = r.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    config: &'a RunConfig,
    report: &'a T,
}

fn json<T: Serialize>(command: &str, cfg: &RunConfig, report: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Envelope {
        schema: SCHEMA,
        command,
        config: cfg,
        report,
    })?;
    s.push('\n');
    Ok(s)
}

fn csv<R: IntoIterator<Item = [String; 6]>>(rows: R) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn dim_secant(cfg: &RunConfig, desc: &VarietyDescriptor, r: usize) -> Result<Outcome> {
    let rep = secant_dimension(desc, r, &cfg.dim_config()?)?;
    let pass = rep.computed_dim <= rep.expected_dim;
    let output = match cfg.format {
        Format::Json => json("dim-secant", cfg, &rep)?,
        Format::Csv => csv([[
            rep.descriptor.clone(),
            r.to_string(),
            "1".into(),
            rep.computed_dim.to_string(),
            rep.expected_dim.to_string(),
            rep.status.clone(),
        ]])?,
        Format::Text => format!(
            "{}  sigma_{}: dim {} (expected {}, ambient P^{})  {}\n",
            rep.descriptor, r, rep.computed_dim, rep.expected_dim, rep.ambient_dim, rep.status
        ),
    };
    Ok(Outcome { output, pass })
}

pub fn dim_hadamard(cfg: &RunConfig, desc: &VarietyDescriptor, r: &[usize]) -> Result<Outcome> {
    let spec = HadamardSpec::new(r.to_vec())?;
    let rep = hadamard_dimension(desc, &spec, &cfg.dim_config()?)?;
    let pass = rep.chain_holds();
    let output = match cfg.format {
        Format::Json => json("dim-hadamard", cfg, &rep)?,
        Format::Csv => csv([[
            rep.descriptor.clone(),
            r_label(&rep.r),
            rep.m.to_string(),
            rep.computed_dim.to_string(),
            rep.expected_dim_hadamard.to_string(),
            rep.status.clone(),
        ]])?,
        Format::Text => format!(
            "{}  sigma_{}: dim {} in P^{}\n  chain: {} <= {} <= {} <= {}  ({})\n  {}\n",
            rep.descriptor,
            r_label(&rep.r),
            rep.computed_dim,
            rep.ambient_dim,
            rep.lower_bound_dim_r,
            rep.computed_dim,
            rep.expected_dim_hadamard,
            rep.expected_dim_r,
            if pass { "holds" } else { "VIOLATED" },
            rep.status
        ),
    };
    Ok(Outcome { output, pass })
}

pub fn generic_hrank_cmd(
    cfg: &RunConfig,
    desc: &VarietyDescriptor,
    r: usize,
    margin: Option<usize>,
) -> Result<Outcome> {
    let rep = generic_hrank(
        desc,
        r,
        &cfg.dim_config()?,
        margin.unwrap_or(DEFAULT_HRANK_MARGIN),
    )?;
    let pass = !matches!(rep.outcome, HrankOutcome::NotFilled { .. });
    let verdict = match rep.outcome {
        HrankOutcome::Found { m } => format!("m = {m}"),
        HrankOutcome::InfiniteToricIdempotent => "infinite (toric idempotent)".into(),
        HrankOutcome::NotFilled { cap } => format!("not filled up to m = {cap} (probabilistic)"),
    };
    let output = match cfg.format {
        Format::Json => json("generic-hrank", cfg, &rep)?,
        Format::Csv => csv(rep.trace.iter().map(|t| {
            [
                rep.descriptor.clone(),
                r_label(&vec![r; t.m]),
                t.m.to_string(),
                t.computed_dim.to_string(),
                rep.ambient_dim.to_string(),
                if t.computed_dim == rep.ambient_dim {
                    "fills"
                } else {
                    "below"
                }
                .to_string(),
            ]
        }))?,
        Format::Text => {
            let mut s = format!(
                "{}  generic Hadamard rank for r = {}: {}  (expected {})\n",
                rep.descriptor,
                r,
                verdict,
                rep.expected_m.map_or("-".into(), |m| m.to_string())
            );
            for t in &rep.trace {
                s.push_str(&format!(
                    "  m = {}: dim {} of {}\n",
                    t.m, t.computed_dim, rep.ambient_dim
                ));
            }
            s
        }
    };
    Ok(Outcome { output, pass })
}

pub fn verify_table_cmd(cfg: &RunConfig, kind: TableKind, extended: bool) -> Result<Outcome> {
    let rows = verify_table(kind, extended, &cfg.dim_config()?)?;
    let pass = rows.iter().all(|r| r.pass);
    let command = match kind {
        TableKind::Veronese => "verify-table veronese",
        TableKind::Binary => "verify-table binary",
        TableKind::Experiments => "verify-table experiments",
    };
    let output = match cfg.format {
        Format::Json => json(command, cfg, &rows)?,
        Format::Csv => csv(rows.iter().map(|row| {
            [
                row.descriptor.clone(),
                r_label(&row.r),
                row.m.to_string(),
                row.dim.to_string(),
                row.expected.to_string(),
                row.status().to_string(),
            ]
        }))?,
        Format::Text => {
            let mut s = String::new();
            for row in &rows {
                s.push_str(&format!(
                    "{:<24} {:<28} dim {:>4} expected {:>4}  {}\n",
                    row.descriptor,
                    r_label(&row.r),
                    row.dim,
                    row.expected,
                    row.status()
                ));
            }
            let passed = rows.iter().filter(|r| r.pass).count();
            s.push_str(&format!("{passed}/{} rows pass\n", rows.len()));
            s
        }
    };
    Ok(Outcome { output, pass })
}

pub fn degeneration_demo(
    cfg: &RunConfig,
    desc: &VarietyDescriptor,
    r: &[usize],
    nus: Option<&str>,
) -> Result<Outcome> {
    let spec = HadamardSpec::new(r.to_vec())?;
    let abar = normalize(desc.matrix())?;
    let nus = match nus {
        Some(text) => text
            .split(',')
            .map(parse_nu)
            .collect::<Result<Vec<_>, _>>()?,
        None => default_nu_sequence(),
    };
    let y = sample_base_points(abar.nrows(), spec.big_r(), cfg.seed)?;
    let rep = limit_check(&abar, &spec, &y, &nus)?;
    let output = match cfg.format {
        Format::Json => json("degeneration-demo", cfg, &rep)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "nu",
                "max_error",
                "fitted_constant",
                "row0_exact",
                "jacobian_rank",
            ])?;
            for s in &rep.steps {
                w.write_record([
                    s.nu.clone(),
                    format!("{:e}", s.max_error),
                    format!("{:e}", s.fitted_constant),
                    s.row0_exact.to_string(),
                    s.jacobian_rank.to_string(),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let mut s = format!(
                "{}  spec {}  R = {}\n{:>10} {:>14} {:>14} {:>6} {:>6}\n",
                desc.label(),
                r_label(&rep.spec),
                rep.big_r,
                "nu",
                "max |M - lim|",
                "error / nu",
                "row0",
                "rank"
            );
            for st in &rep.steps {
                s.push_str(&format!(
                    "{:>10} {:>14.6e} {:>14.6e} {:>6} {:>6}\n",
                    st.nu, st.max_error, st.fitted_constant, st.row0_exact, st.jacobian_rank
                ));
            }
            let ratios: Vec<String> = rep.error_ratios.iter().map(|x| format!("{x:.3}")).collect();
            s.push_str(&format!("error ratios: {}\n", ratios.join(", ")));
            s.push_str(&format!(
                "row spans: rank(stack) = {}, rank(secant eta) = {}\n",
                rep.span_ranks.0, rep.span_ranks.1
            ));
            s.push_str(&format!(
                "rank of limit Jacobian {} => dim >= {}\n",
                rep.limit_rank, rep.lower_bound
            ));
            for f in &rep.failures {
                s.push_str(&format!("FAIL: {f}\n"));
            }
            s.push_str(if rep.passed {
                "verdict: pass\n"
            } else {
                "verdict: fail\n"
            });
            s
        }
    };
    Ok(Outcome {
        output,
        pass: rep.passed,
    })
}

#[derive(Serialize)]
struct BinomialReport {
    points: usize,
    affine_dim: usize,
    verdict: SupportVerdict,
    is_binomial: bool,
}

pub fn binomial_check(cfg: &RunConfig, text: &str) -> Result<Outcome> {
    let support = Support::parse(text)?;
    let verdict = classify_support(&support);
    let rep = BinomialReport {
        points: support.len(),
        affine_dim: support.affine_dim(),
        verdict,
        is_binomial: verdict == SupportVerdict::Binomial,
    };
    let name = serde_json::to_value(verdict)?
        .as_str()
        .unwrap_or_default()
        .to_string();
    let output = match cfg.format {
        Format::Json => json("binomial-check", cfg, &rep)?,
        Format::Csv => format!(
            "points,affine_dim,verdict\n{},{},{}\n",
            rep.points, rep.affine_dim, name
        ),
        Format::Text => format!(
            "{} support points, Newton polytope of dimension {}: {}\n",
            rep.points, rep.affine_dim, name
        ),
    };
    Ok(Outcome { output, pass: true })
}

/// Binomial in the toric ideal of a descriptor, when it is not `P^N`.
pub fn toric_binomial(desc: &VarietyDescriptor) -> Option<(Vec<i64>, Vec<i64>)> {
    binomial_witness(desc.matrix()).map(|w| (w.plus, w.minus))
}
