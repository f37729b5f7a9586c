mod cache;

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ncpart_core::algebra::{MultiPoly, TruncatedSeries, DEFAULT_ORDER};
use ncpart_core::bijections::{
    map_descent_code, map_equiv, map_equiv_inverse, map_f, map_f_inverse, map_g, map_runrev,
};
use ncpart_core::checks::{run_target, Target};
use ncpart_core::formulas::{gf_staircase_joint_rep, series_for_family, total_occurrences};
use ncpart_core::partition::{
    classify_pattern, enumerate_nc, parse_letters, Letter, NCPartition, PatternFamily, SubwordPattern,
};
use ncpart_core::recurrence::RecurrenceTable;
use ncpart_core::Error;
use num::BigRational;
use serde_json::{json, Value};

use cache::Cache;

#[derive(Parser, Debug)]
#[command(name = "ncpart", version, about = "Subword pattern statistics on non-crossing partitions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Ignore NCPART_CACHE and recompute everything.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the members of NC_n.
    Enum {
        #[arg(long)]
        n: usize,
    },
    /// Distribution of a pattern over NC_n, or its series up to an order.
    Dist {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long, conflicts_with = "order", required_unless_present = "order")]
        n: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
    },
    /// Closed-form generating function, optionally jointly with the smallest
    /// repeated letter (marker v specialized to --rep-v).
    Series {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long, default_value_t = 13)]
        order: usize,
        /// Rational value such as 2 or -1/3.
        #[arg(long)]
        rep_v: Option<String>,
    },
    /// Total number of occurrences over NC_n.
    Total {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TotalMethod::Auto)]
        method: TotalMethod,
    },
    /// Cross-check closed forms, the recurrence and the bijections against
    /// brute force.
    Verify {
        #[arg(long, default_value = "all")]
        target: String,
        #[arg(long, default_value_t = 13)]
        order: usize,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a bijection to one partition.
    Bij {
        #[arg(long, value_enum)]
        map: MapName,
        #[arg(long)]
        pi: String,
        #[arg(long)]
        tau: Option<String>,
        #[arg(long)]
        tau2: Option<String>,
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        rho: Option<String>,
        #[arg(long)]
        b: Option<usize>,
    },
    /// Group all patterns of a length by their distributions.
    Equivclasses {
        #[arg(long)]
        len: usize,
        /// Inclusive range such as 2..9, or a single n.
        #[arg(long, default_value = "0..8")]
        n: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Closed,
    Recurrence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TotalMethod {
    Auto,
    Closed,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapName {
    F,
    FInverse,
    G,
    Equiv,
    EquivInverse,
    Runrev,
    Descent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Run,
    RunAscent,
    RhoTail,
    Sandwich,
    StaircaseTail,
    RunStaircase,
}

/// A pattern given literally or through family parameters.
#[derive(Args, Debug)]
struct PatternArgs {
    /// Digit string or comma-separated letters.
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    pattern: Option<String>,
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    #[arg(long, requires = "family")]
    a: Option<usize>,
    #[arg(long, requires = "family")]
    b: Option<usize>,
    #[arg(long, requires = "family")]
    m: Option<usize>,
    #[arg(long, requires = "family")]
    rho: Option<String>,
}

impl PatternArgs {
    fn resolve(&self) -> Result<(SubwordPattern, PatternFamily)> {
        if let Some(p) = &self.pattern {
            let tau: SubwordPattern = p.parse()?;
            let family = classify_pattern(&tau).principal;
            return Ok((tau, family));
        }
        let need = |v: Option<usize>, name: &str| v.ok_or_else(|| anyhow!("--family needs --{name}"));
        let rho = || -> Result<NCPartition> {
            let r = self.rho.as_deref().ok_or_else(|| anyhow!("--family needs --rho"))?;
            Ok(r.parse()?)
        };
        let family = match self.family.expect("clap requires pattern or family") {
            FamilyName::Run => PatternFamily::Run { a: need(self.a, "a")? },
            FamilyName::RunAscent => PatternFamily::RunAscent { a: need(self.a, "a")? },
            FamilyName::RhoTail => PatternFamily::RhoTail { rho: rho()?, b: need(self.b, "b")? },
            FamilyName::Sandwich => {
                PatternFamily::Sandwich { a: need(self.a, "a")?, rho: rho()?, b: need(self.b, "b")? }
            }
            FamilyName::StaircaseTail => PatternFamily::StaircaseTail { m: need(self.m, "m")?, a: need(self.a, "a")? },
            FamilyName::RunStaircase => PatternFamily::RunStaircase { a: need(self.a, "a")?, m: need(self.m, "m")? },
        };
        Ok((family.pattern()?, family))
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > DEFAULT_ORDER {
        bail!("order must be in 1..={DEFAULT_ORDER}, got {order}");
    }
    Ok(())
}

fn methods_for(family: &PatternFamily) -> String {
    let mut m = vec!["brute"];
    if *family != PatternFamily::Generic {
        m.push("closed");
    }
    if matches!(family, PatternFamily::StaircaseTail { .. }) {
        m.push("recurrence");
    }
    m.join(", ")
}

fn staircase_params(family: &PatternFamily, what: &str) -> Result<(usize, usize)> {
    match family {
        PatternFamily::StaircaseTail { m, a } => Ok((*m, *a)),
        _ => Err(Error::UnsupportedFamily { what: format!("{what} for {family}"), hint: methods_for(family) }.into()),
    }
}

fn closed_series(family: &PatternFamily, order: usize) -> Result<TruncatedSeries> {
    series_for_family(family, order).map(|(_, s)| s).map_err(|e| match e {
        Error::UnsupportedFamily { what, .. } => Error::UnsupportedFamily { what, hint: methods_for(family) }.into(),
        e => e.into(),
    })
}

fn poly_json(p: &MultiPoly) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

/// Coefficients `0..order` by the chosen method.
fn coefficients(
    cache: &Cache,
    tau: &SubwordPattern,
    family: &PatternFamily,
    method: Method,
    order: usize,
) -> Result<Vec<MultiPoly>> {
    Ok(match method {
        Method::Brute => (0..order).map(|n| cache.distribution(n, tau)).collect::<ncpart_core::Result<_>>()?,
        Method::Closed => closed_series(family, order)?.coeffs().to_vec(),
        Method::Recurrence => {
            let (m, a) = staircase_params(family, "the recurrence")?;
            RecurrenceTable::new(m, a)?.series(order).coeffs().to_vec()
        }
    })
}

fn print(format: Format, text: String, value: Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
    }
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse()?, hi.trim().trim_start_matches('=').parse()?),
        None => {
            let n = s.trim().parse()?;
            (n, n)
        }
    };
    if lo > hi {
        bail!("empty range {s}");
    }
    Ok((lo, hi))
}

/// Every word of length `len` whose letters are exactly `{1, ..., k}`.
fn all_patterns(len: usize) -> Vec<SubwordPattern> {
    fn rec(len: usize, w: &mut Vec<Letter>, out: &mut Vec<SubwordPattern>) {
        if w.len() == len {
            if let Ok(p) = SubwordPattern::new(w.clone()) {
                out.push(p);
            }
            return;
        }
        for c in 1..=len as Letter {
            w.push(c);
            rec(len, w, out);
            w.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, &mut Vec::new(), &mut out);
    out
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cache = Cache::from_env(cli.no_cache);
    let format = cli.format;
    match cli.command {
        Command::Enum { n } => {
            let all = enumerate_nc(n)?;
            let words: Vec<String> = all.iter().map(|p| p.to_string()).collect();
            let value = json!({ "n": n, "count": words.len(), "partitions": words });
            print(format, words.join("\n"), value);
        }
        Command::Dist { pattern, n, order, method } => {
            let (tau, family) = pattern.resolve()?;
            if let Some(n) = n {
                let d = match method {
                    Method::Brute => cache.distribution(n, &tau)?,
                    _ => coefficients(&cache, &tau, &family, method, n + 1)?.swap_remove(n),
                };
                let value = json!({ "pattern": tau.to_string(), "method": method_name(method), "n": n, "distribution": poly_json(&d) });
                print(format, d.to_string(), value);
            } else {
                let order = order.expect("clap requires n or order");
                check_order(order)?;
                let coeffs = coefficients(&cache, &tau, &family, method, order)?;
                let text = coeffs.iter().enumerate().map(|(k, c)| format!("{k}: {c}")).collect::<Vec<_>>().join("\n");
                let value = json!({
                    "pattern": tau.to_string(),
                    "method": method_name(method),
                    "order": order,
                    "coeffs": coeffs.iter().map(poly_json).collect::<Vec<_>>(),
                });
                print(format, text, value);
            }
        }
        Command::Series { pattern, order, rep_v } => {
            check_order(order)?;
            let (tau, family) = pattern.resolve()?;
            let series = match &rep_v {
                None => closed_series(&family, order)?,
                Some(v) => {
                    let v: BigRational = v.parse().map_err(|_| anyhow!("bad rational {v:?}"))?;
                    let (m, a) = staircase_params(&family, "the joint series with rep")?;
                    gf_staircase_joint_rep(m, a, order, &v)?
                }
            };
            let value = json!({
                "pattern": tau.to_string(),
                "family": family.to_string(),
                "rep_v": rep_v,
                "series": serde_json::to_value(&series)?,
            });
            print(format, series.to_string(), value);
        }
        Command::Total { pattern, n, method } => {
            let (tau, family) = pattern.resolve()?;
            let closed = match method {
                TotalMethod::Brute => None,
                _ => match total_occurrences(&family, n) {
                    Ok(t) => t,
                    Err(Error::UnsupportedFamily { .. }) if method == TotalMethod::Auto => None,
                    Err(e) => return Err(e.into()),
                },
            };
            let (total, source) = match closed {
                Some(t) => (t.to_string(), "closed"),
                None if method == TotalMethod::Closed => {
                    bail!("no closed-form total for {tau} at n = {n}; use --method brute")
                }
                None => {
                    let d = cache.distribution(n, &tau)?;
                    let t = d.derivative(ncpart_core::algebra::Marker::Q).sum_of_coefficients();
                    (t.to_string(), "brute")
                }
            };
            let value = json!({ "pattern": tau.to_string(), "n": n, "total": total, "source": source });
            print(format, total, value);
        }
        Command::Verify { target, order, out } => {
            check_order(order)?;
            let target: Target = target.parse()?;
            let report = run_target(target, order);
            let json = serde_json::to_string_pretty(&report)?;
            if let Some(path) = out {
                fs::write(&path, &json).with_context(|| format!("writing {}", path.display()))?;
            }
            match format {
                Format::Text => print!("{}", report.to_table()),
                Format::Json => println!("{json}"),
            }
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Bij { map, pi, tau, tau2, sigma, a, rho, b } => {
            let input: NCPartition = pi.parse()?;
            let pattern = |p: &Option<String>, name: &str| -> Result<SubwordPattern> {
                Ok(p.as_deref().ok_or_else(|| anyhow!("--map needs --{name}"))?.parse()?)
            };
            let need = |v: Option<usize>, name: &str| v.ok_or_else(|| anyhow!("--map needs --{name}"));
            let output = match map {
                MapName::F => map_f(&input, &pattern(&tau, "tau")?, &pattern(&tau2, "tau2")?)?,
                MapName::FInverse => map_f_inverse(&input, &pattern(&tau, "tau")?, &pattern(&tau2, "tau2")?)?,
                MapName::Equiv => map_equiv(&input, &pattern(&tau, "tau")?, &pattern(&tau2, "tau2")?)?,
                MapName::EquivInverse => map_equiv_inverse(&input, &pattern(&tau, "tau")?, &pattern(&tau2, "tau2")?)?,
                MapName::G => {
                    let sigma = parse_letters(sigma.as_deref().unwrap_or(""))?;
                    map_g(&input, &sigma, need(b, "b")?)?
                }
                MapName::Runrev => {
                    let rho: NCPartition = rho.as_deref().ok_or_else(|| anyhow!("--map needs --rho"))?.parse()?;
                    map_runrev(&input, need(a, "a")?, &rho, need(b, "b")?)?
                }
                MapName::Descent => map_descent_code(&input)?,
            };
            let name = map.to_possible_value().expect("named").get_name().to_string();
            let value = json!({ "map": name, "input": input.to_string(), "output": output.to_string() });
            print(format, output.to_string(), value);
        }
        Command::Equivclasses { len, n } => {
            let (lo, hi) = parse_range(&n)?;
            let mut classes: HashMap<Vec<MultiPoly>, Vec<String>> = HashMap::new();
            for tau in all_patterns(len) {
                let key = (lo..=hi).map(|k| cache.distribution(k, &tau)).collect::<ncpart_core::Result<Vec<_>>>()?;
                classes.entry(key).or_default().push(tau.to_string());
            }
            let mut groups: Vec<Vec<String>> = classes.into_values().collect();
            for g in &mut groups {
                g.sort();
            }
            groups.sort();
            let text = groups.iter().map(|g| g.join(" ")).collect::<Vec<_>>().join("\n");
            print(format, text, json!({ "len": len, "n": [lo, hi], "classes": groups }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Brute => "brute",
        Method::Closed => "closed",
        Method::Recurrence => "recurrence",
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
