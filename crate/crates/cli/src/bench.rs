use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Args;
use rayon::prelude::*;
use serde_json::json;
use sublogic::boolfun::identify_clone;
use sublogic::solvers::{dispatch, Choice};
use sublogic::syntax::{signature, ProblemInstance};
use sublogic::Error;

use crate::{load_instance, Outcome, Session};

#[derive(Args)]
pub struct BenchArgs {
    /// Methods to run on every instance, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "auto")]
    methods: Vec<Choice>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Directory of instance files; every `.dl` file is read, in name order.
    dir: PathBuf,
}

struct Row {
    id: String,
    profile: String,
    method: String,
    status: String,
    ms: f64,
    types: u64,
    rules: u64,
}

fn profile(inst: &ProblemInstance) -> String {
    let sig = signature(inst);
    let clone = identify_clone(&sig.operators.tables())
        .ok()
        .and_then(|d| d.named.filter(|_| !d.approximate))
        .map_or_else(|| "unnamed".to_string(), |c| c.to_string());
    format!("{}/{}/{}", inst.kind.name(), sig.quantifiers.keyword(), clone)
}

fn label(choice: Choice) -> String {
    match choice {
        Choice::Auto => "auto".into(),
        Choice::Fixed(m) => m.to_string(),
    }
}

fn solve_one(ctx: &Session, id: &str, inst: &ProblemInstance, choice: Choice) -> Row {
    let start = Instant::now();
    let result = dispatch(inst, choice, false, &ctx.limits);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let mut row = Row {
        id: id.to_string(),
        profile: profile(inst),
        method: label(choice),
        status: String::new(),
        ms,
        types: 0,
        rules: 0,
    };
    match result {
        Ok(r) => {
            row.method = r.method.to_string();
            row.status = r.status.to_string();
            row.types = r.stats.types;
            row.rules = r.stats.rules;
        }
        Err(Error::Limit(_)) => row.status = "LIMIT".into(),
        Err(Error::Fragment(_) | Error::Unsupported(_)) => row.status = "N/A".into(),
        Err(e) => row.status = format!("ERROR {}", e.to_string().replace(',', ";")),
    }
    row
}

fn instance_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("cannot list {}", dir.display()))? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "dl") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn run(ctx: &Session, a: &BenchArgs) -> Result<Outcome> {
    let mut instances = Vec::new();
    for path in instance_files(&a.dir)? {
        let id = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        instances.push((id, load_instance(ctx, &path)?));
    }
    let jobs: Vec<(usize, Choice)> = (0..instances.len())
        .flat_map(|i| a.methods.iter().map(move |&m| (i, m)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(a.jobs).build()?;
    // `collect` on an indexed parallel iterator keeps input order.
    let rows: Vec<Row> = pool.install(|| {
        jobs.par_iter()
            .map(|&(i, m)| solve_one(ctx, &instances[i].0, &instances[i].1, m))
            .collect()
    });
    if ctx.json {
        let rows: Vec<_> = rows
            .iter()
            .map(|r| {
                json!({"id": r.id, "profile": r.profile, "method": r.method, "status": r.status,
                       "ms": r.ms, "types": r.types, "rules": r.rules})
            })
            .collect();
        out!("{}", json!(rows));
    } else {
        out!("id,profile,method,status,ms,types,rules");
        for r in rows {
            out!("{},{},{},{},{:.3},{},{}", r.id, r.profile, r.method, r.status, r.ms, r.types, r.rules);
        }
    }
    Ok(Outcome::Done)
}
