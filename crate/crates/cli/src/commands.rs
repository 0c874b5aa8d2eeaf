use std::collections::BTreeMap;
use std::io::Write;
use std::str::FromStr;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;
use vertex_core::kp::{run_kp_check, KpError};
use vertex_core::partitions::{enumerate_upto, Partition};
use vertex_core::qnum::{half_lattice_check, QRat, ScalarMode};
use vertex_core::vertex::{
    evaluate, f_entry, CacheError, EntryFn, Framing, Pipeline, ResultCache, VertexKey, VertexRecord,
};

use crate::args::{CacheAction, Cli, Command, ComputeArgs, Format, KpArgs, TableArgs, VerifyArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error(transparent)]
    Kp(#[from] KpError),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
    #[error("writing csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Whether the command's check succeeded.
#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Failed,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_partition(flag: &str, s: &str) -> Result<Partition, CliError> {
    let v: Vec<i64> =
        serde_json::from_str(s).map_err(|e| usage(format!("{flag}: expected a JSON array of integers ({e})")))?;
    Partition::from_signed(&v).map_err(|e| usage(format!("{flag}: {e}")))
}

fn parse_framing(s: &str) -> Result<Framing, CliError> {
    Framing::from_str(s).map_err(|e| usage(e.to_string()))
}

fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || usage(format!("--framings: expected lo..hi, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_pipelines(s: &str) -> Result<Vec<Pipeline>, CliError> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let p = Pipeline::from_str(part).map_err(|e| usage(e.to_string()))?;
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

fn parse_u0(s: &str) -> Result<BigRational, CliError> {
    let u0 = BigRational::from_str(s.trim()).map_err(|_| usage(format!("--u0: expected p/q, got {s:?}")))?;
    ScalarMode::numeric_half(u0.clone()).map_err(|e| usage(e.to_string()))?;
    Ok(u0)
}

fn parse_fault(s: &str) -> Result<(usize, usize, u32, u32), CliError> {
    let bad = || usage(format!("--inject-fault: expected i,j,m,n, got {s:?}"));
    let v: Vec<u32> = s
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    match v.as_slice() {
        [i @ 1..=3, j @ 1..=3, m, n] => Ok((*i as usize, *j as usize, *m, *n)),
        _ => Err(bad()),
    }
}

fn check_size(n: u32, limit: u32) -> Result<(), CliError> {
    if n > limit {
        return Err(usage(format!("--max-size {n} exceeds the hard limit {limit}")));
    }
    Ok(())
}

fn open_cache(cli: &Cli) -> Result<Option<ResultCache>, CliError> {
    cli.cache_dir.as_ref().map(ResultCache::open).transpose().map_err(Into::into)
}

fn report_cache(cache: &Option<ResultCache>) {
    if let Some(c) = cache {
        eprintln!("cache_hits={} cache_misses={}", c.hits(), c.misses());
    }
}

/// Keys `(μ¹, μ², μ³)` with `|μ^i| ≤ n` in enumeration order.
fn triples(n: u32) -> Vec<(Partition, Partition, Partition)> {
    let ps = enumerate_upto(n);
    let mut out = Vec::with_capacity(ps.len().pow(3));
    for a in &ps {
        for b in &ps {
            for c in &ps {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

/// A record for `key`, served from the cache when present. Fresh values are
/// cached only when every selected pipeline agrees.
fn record(key: &VertexKey, pipelines: &[Pipeline], cache: &Option<ResultCache>) -> Result<VertexRecord, CliError> {
    if let Some(c) = cache {
        if let Some(w) = c.get(key)? {
            return Ok(VertexRecord {
                key: key.clone(),
                half_lattice: half_lattice_check(&w),
                w,
                pipelines_agree: true,
            });
        }
    }
    let (rec, _) = evaluate(key, pipelines, None);
    if let Some(c) = cache {
        if rec.pipelines_agree {
            c.put(key, &rec.w)?;
        }
    }
    Ok(rec)
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Compute(a) => compute(cli, a, out),
        Command::Verify(a) => verify(cli, a, out),
        Command::KpCheck(a) => kp_check(a, out),
        Command::Table(a) => table(cli, a, out),
        Command::Cache { action } => match action {
            CacheAction::Clear => {
                let cache = open_cache(cli)?.ok_or_else(|| usage("cache clear needs --cache-dir or VERTEX_CACHE_DIR"))?;
                let n = cache.clear()?;
                writeln!(out, "{}", serde_json::json!({ "removed": n }))?;
                Ok(Outcome::Ok)
            }
        },
    }
}

fn compute(cli: &Cli, a: &ComputeArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let key = VertexKey::new(
        parse_partition("--mu1", &a.mu1)?,
        parse_partition("--mu2", &a.mu2)?,
        parse_partition("--mu3", &a.mu3)?,
        parse_framing(&a.framing)?,
    );
    let pipelines = parse_pipelines(&a.pipelines)?;
    let cache = open_cache(cli)?;
    let rec = record(&key, &pipelines, &cache)?;
    writeln!(out, "{}", serde_json::to_string(&rec).expect("records serialize"))?;
    report_cache(&cache);
    Ok(if rec.pipelines_agree && rec.half_lattice {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}

#[derive(Serialize)]
struct Mismatch {
    key: VertexKey,
    values: BTreeMap<String, QRat>,
}

#[derive(Serialize)]
struct VerifySummary {
    keys: usize,
    max_size: u32,
    framings: [i64; 2],
    pipelines: Vec<&'static str>,
    agree: usize,
    half_lattice: usize,
    mismatches: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_mismatch: Option<Mismatch>,
}

fn verify(cli: &Cli, a: &VerifyArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    check_size(a.max_size, a.hard_limit)?;
    let (lo, hi) = parse_range(&a.framings)?;
    let pipelines = parse_pipelines(&a.pipelines)?;
    let fault = a.inject_fault.as_deref().map(parse_fault).transpose()?;
    let patched = move |i: usize, j: usize, m: u32, n: u32, f: &Framing| {
        let v = f_entry(i, j, m, n, f);
        if fault == Some((i, j, m, n)) {
            v + QRat::one()
        } else {
            v
        }
    };
    let entry: Option<&EntryFn> = if fault.is_some() { Some(&patched) } else { None };
    let cache = open_cache(cli)?;

    let keys: Vec<VertexKey> = triples(a.max_size)
        .into_iter()
        .flat_map(|(x, y, z)| {
            Framing::cube(lo, hi)
                .into_iter()
                .map(move |f| VertexKey::new(x.clone(), y.clone(), z.clone(), f))
        })
        .collect();

    type Checked = (bool, bool, Vec<(String, QRat)>);
    let results: Vec<Checked> = keys
        .par_iter()
        .map(|key| -> Result<Checked, CliError> {
            let (rec, vals) = evaluate(key, &pipelines, entry);
            let mut vals: Vec<(String, QRat)> = vals.into_iter().map(|(p, v)| (p.name().to_string(), v)).collect();
            let mut agree = rec.pipelines_agree;
            if let Some(c) = &cache {
                match c.get(key)? {
                    Some(w) if w != rec.w => {
                        agree = false;
                        vals.push(("cache".into(), w));
                    }
                    Some(_) => {}
                    None if agree => c.put(key, &rec.w)?,
                    None => {}
                }
            }
            Ok((agree, rec.half_lattice, vals))
        })
        .collect::<Result<_, _>>()?;

    let agree = results.iter().filter(|r| r.0).count();
    let half = results.iter().filter(|r| r.1).count();
    let first = keys.iter().zip(&results).find(|(_, r)| !(r.0 && r.1)).map(|(k, r)| Mismatch {
        key: k.clone(),
        values: r.2.iter().cloned().collect(),
    });
    if let Some(m) = &first {
        eprintln!("first mismatch at {}", m.key.canonical_json());
        for (name, v) in &m.values {
            eprintln!("  {name}: {}", serde_json::to_string(v).expect("values serialize"));
        }
    }
    let summary = VerifySummary {
        keys: keys.len(),
        max_size: a.max_size,
        framings: [lo, hi],
        pipelines: pipelines.iter().map(|p| p.name()).collect(),
        agree,
        half_lattice: half,
        mismatches: results.iter().filter(|r| !(r.0 && r.1)).count(),
        first_mismatch: first,
    };
    writeln!(out, "{}", serde_json::to_string(&summary).expect("summary serializes"))?;
    report_cache(&cache);
    Ok(if summary.mismatches == 0 { Outcome::Ok } else { Outcome::Failed })
}

fn kp_check(a: &KpArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let (n_default, d_default) = match a.components {
        1 => (6, 3),
        3 => (4, 2),
        c => return Err(usage(format!("--components must be 1 or 3, got {c}"))),
    };
    let n = a.cutoff.unwrap_or(n_default);
    let d = a.degree.unwrap_or(d_default);
    let u0 = parse_u0(&a.u0)?;
    let framing = parse_framing(&a.framing)?;
    let (summary, report) = run_kp_check(a.components, framing, n, d, &u0)?;
    writeln!(out, "{}", serde_json::to_string(&summary).expect("summary serializes"))?;
    if let Some(e) = report.entries.iter().find(|e| e.cutoff_stable && e.value != BigRational::from_integer(0.into())) {
        eprintln!("nonzero cutoff-stable coefficient at monomial {:?}: {}", e.monomial, e.value);
        return Ok(Outcome::Failed);
    }
    Ok(Outcome::Ok)
}

fn table(cli: &Cli, a: &TableArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    check_size(a.max_size, a.hard_limit)?;
    let framing = parse_framing(&a.framing)?;
    let pipelines = parse_pipelines(&a.pipelines)?;
    let cache = open_cache(cli)?;
    let keys: Vec<VertexKey> = triples(a.max_size)
        .into_iter()
        .map(|(x, y, z)| VertexKey::new(x, y, z, framing))
        .collect();
    let records: Vec<VertexRecord> = keys
        .par_iter()
        .map(|k| record(k, &pipelines, &cache))
        .collect::<Result<_, _>>()?;
    match a.format {
        Format::Json => {
            for r in &records {
                writeln!(out, "{}", serde_json::to_string(r).expect("records serialize"))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["mu1", "mu2", "mu3", "framing", "w", "pipelines_agree", "half_lattice"])?;
            for r in &records {
                let json = |p: &Partition| serde_json::to_string(p).expect("partitions serialize");
                w.write_record([
                    json(&r.key.mu1),
                    json(&r.key.mu2),
                    json(&r.key.mu3),
                    r.key.framing.to_string(),
                    serde_json::to_string(&r.w).expect("values serialize"),
                    r.pipelines_agree.to_string(),
                    r.half_lattice.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    report_cache(&cache);
    let ok = records.iter().all(|r| r.pipelines_agree && r.half_lattice);
    Ok(if ok { Outcome::Ok } else { Outcome::Failed })
}
