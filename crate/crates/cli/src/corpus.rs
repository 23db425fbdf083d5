//! Batch runs over a `.corpus` file.
//!
//! ```text
//! seeds 0..10
//! output runs
//! lattice b3 boolean(3)
//! lattice bowtie bowtie
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Result};
use omlkit::bsa::enumerate_bsas;
use omlkit::builders::Family;
use omlkit::format::{oml, poset};
use omlkit::iso::{check_reconstruction, RoundTripOptions, RoundTripReport};
use omlkit::Lattice;
use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub family: Family,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub entries: Vec<Entry>,
    pub seeds: Vec<u64>,
    pub output: Option<PathBuf>,
}

impl CorpusSpec {
    pub fn parse(text: &str) -> Result<CorpusSpec, String> {
        let mut entries: Vec<Entry> = Vec::new();
        let mut seeds = None;
        let mut output = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let at = |m: String| format!("line {}: {m}", i + 1);
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match head {
                "seeds" => seeds = Some(parse_seeds(rest).map_err(at)?),
                "output" if !rest.is_empty() => output = Some(PathBuf::from(rest)),
                "lattice" => {
                    let (name, expr) = rest
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| at("expected `lattice NAME EXPR`".into()))?;
                    if entries.iter().any(|e| e.name == name) {
                        return Err(at(format!("duplicate lattice name {name:?}")));
                    }
                    let family = expr.trim().parse::<Family>().map_err(|e| at(e.to_string()))?;
                    entries.push(Entry { name: name.to_string(), family });
                }
                other => return Err(at(format!("unknown directive {other:?}"))),
            }
        }
        if entries.is_empty() {
            return Err("no `lattice` lines".into());
        }
        Ok(CorpusSpec { entries, seeds: seeds.unwrap_or_else(|| vec![0]), output })
    }
}

/// `0 1 5` or `0..10`.
fn parse_seeds(s: &str) -> Result<Vec<u64>, String> {
    let bad = || format!("bad seed list {s:?}");
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if a >= b {
            return Err(bad());
        }
        return Ok((a..b).collect());
    }
    let v: Vec<u64> = s.split_whitespace().map(|t| t.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    if v.is_empty() {
        return Err(bad());
    }
    Ok(v)
}

struct Row {
    name: String,
    size: String,
    nodes: String,
    cases: String,
    verdict: String,
    ok: bool,
    millis: f64,
    lattice: Option<Lattice>,
}

fn run_entry(entry: &Entry, seeds: &[u64], opts: RoundTripOptions) -> Row {
    let start = Instant::now();
    let mut row = Row {
        name: entry.name.clone(),
        size: "-".into(),
        nodes: "-".into(),
        cases: "-".into(),
        verdict: String::new(),
        ok: false,
        millis: 0.0,
        lattice: None,
    };
    match entry.family.build() {
        Err(e) => row.verdict = format!("build failure: {e}"),
        Ok(l) => {
            row.size = l.size().to_string();
            let reports: Vec<RoundTripReport> =
                seeds.iter().map(|&seed| check_reconstruction(&l, &RoundTripOptions { seed, ..opts })).collect();
            let first = &reports[0];
            row.nodes = first.nodes.map_or("-".into(), |n| n.to_string());
            if let Some(cases) = &first.cases {
                row.cases = cases.iter().map(|(c, k)| format!("{}={k}", c.name())).collect::<Vec<_>>().join(",");
            }
            let bad = reports.iter().find(|r| !r.verdict.is_isomorphic());
            row.ok = bad.is_none();
            row.verdict = bad.unwrap_or(first).verdict.to_string();
            row.lattice = Some(l);
        }
    }
    row.millis = start.elapsed().as_secs_f64() * 1e3;
    row
}

fn table(rows: &[Row]) -> String {
    let headers = ["lattice", "|L|", "nodes", "cases", "verdict", "ms"];
    let cells: Vec<[String; 6]> = rows
        .iter()
        .map(|r| {
            [
                r.name.clone(),
                r.size.clone(),
                r.nodes.clone(),
                r.cases.clone(),
                r.verdict.clone(),
                format!("{:.1}", r.millis),
            ]
        })
        .collect();
    let mut width = headers.map(str::len);
    for c in &cells {
        for (w, s) in width.iter_mut().zip(c) {
            *w = (*w).max(s.len());
        }
    }
    let mut out = String::new();
    let mut line = |fields: Vec<&str>| {
        let padded: Vec<String> = fields.iter().zip(width).map(|(f, w)| format!("{f:<w$}")).collect();
        writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
    };
    line(headers.to_vec());
    for c in &cells {
        line(c.iter().map(String::as_str).collect());
    }
    out
}

fn write_outputs(dir: &Path, rows: &[Row], opts: &RoundTripOptions, summary: &str) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| anyhow!("write: {}: {e}", dir.display()))?;
    let put = |name: String, text: &str| {
        let p = dir.join(name);
        fs::write(&p, text).map_err(|e| anyhow!("write: {}: {e}", p.display()))
    };
    for r in rows {
        if let Some(l) = &r.lattice {
            put(format!("{}.oml", r.name), &oml::serialize(l))?;
            if let Ok(b) = enumerate_bsas(l, &opts.enumerate) {
                put(format!("{}.poset", r.name), &poset::serialize(b.poset(), Some(&b.dimensions())))?;
            }
        }
    }
    put("summary.txt".into(), summary)
}

/// Prints the summary table; `Ok(true)` iff every verdict is isomorphic.
pub fn run(spec: &CorpusSpec, jobs: usize, out: Option<&Path>) -> Result<bool> {
    let (enumerate, iso_budget) = crate::budgets()?;
    let opts = RoundTripOptions { enumerate, iso_budget, ..Default::default() };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| anyhow!("threads: {e}"))?;
    let rows: Vec<Row> = pool.install(|| spec.entries.par_iter().map(|e| run_entry(e, &spec.seeds, opts)).collect());
    let summary = table(&rows);
    print!("{summary}");
    let passed = rows.iter().filter(|r| r.ok).count();
    println!("{passed}/{} isomorphic over {} seeds", rows.len(), spec.seeds.len());
    if let Some(dir) = out {
        write_outputs(dir, &rows, &opts, &summary)?;
    }
    Ok(passed == rows.len())
}
