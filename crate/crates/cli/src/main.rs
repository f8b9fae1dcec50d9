//! `ncpcat`: command-line access to the category of noncrossing partitions.
//!
//! Payloads are JSON (or DOT/text for `export`) on stdout; summaries and
//! errors go to stderr. Exit status is 0 on success, 1 on a verification
//! failure or an unmatched input, 2 on a usage or input error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ncpcat::verify::{self, Suite};
use ncpcat::{
    compose, enumerate_partitions, g_matrix, presentation, reconstruct, vertex_link, ClusterMorphism, HomCache,
    MatrixError, NoncrossingPartition, SimplicialComplex, UnipotentMatrix,
};
use serde::Serialize;

const OBJECTS_CAP: usize = 10;

#[derive(Parser)]
#[command(name = "ncpcat", version, about = "Noncrossing partitions with binary-forest morphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or count the noncrossing partitions of {1..n}.
    Objects {
        n: usize,
        #[arg(long, conflicts_with_all = ["by_rank", "json"])]
        count: bool,
        /// Histogram of objects by rank.
        #[arg(long, conflicts_with = "json")]
        by_rank: bool,
        #[arg(long)]
        json: bool,
    },
    /// List or count the morphisms between two partitions.
    Hom {
        n: usize,
        source: String,
        target: String,
        #[arg(long, conflicts_with = "json")]
        count: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compose two morphisms, first then second (JSON, or @file).
    Compose { n: usize, first: String, second: String },
    /// The unipotent matrix of a morphism (JSON, or @file).
    Matrix { n: usize, morphism: String },
    /// Recover the morphism source -> target with the given matrix (JSON, or @file).
    Reconstruct { n: usize, source: String, target: String, matrix: String },
    /// Run an exhaustive verification suite.
    Verify { n: usize, suite: String },
    /// Export the refinement Hasse diagram, a vertex link, or the presentation.
    Export {
        n: usize,
        what: String,
        /// Partition whose link is exported (`link` only).
        object: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Text,
}

enum Failure {
    Usage(String),
    Check(String),
}

type Outcome = Result<(String, String), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((payload, summary)) => {
            println!("{payload}");
            eprintln!("{summary}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Objects { n, count, by_rank, .. } => objects(n, count, by_rank),
        Command::Hom { n, source, target, count, .. } => hom(n, &source, &target, count),
        Command::Compose { n, first, second } => {
            let a = morphism(n, &first)?;
            let b = morphism(n, &second)?;
            let c = compose(&a, &b).map_err(|e| Failure::Check(format!("not composable: {e}")))?;
            Ok((json(&c), format!("{c}")))
        }
        Command::Matrix { n, morphism: m } => {
            let m = morphism(n, &m)?;
            let g = g_matrix(&m);
            Ok((json(&g), g.to_string()))
        }
        Command::Reconstruct { n, source, target, matrix } => {
            let s = partition(n, &source)?;
            let t = partition(n, &target)?;
            let g: UnipotentMatrix = load_json(&matrix)?;
            match reconstruct(&s, &t, &g) {
                Ok(m) => Ok((json(&m), format!("{m}"))),
                Err(MatrixError::NoMatch) => Err(Failure::Check(format!("no morphism {s} -> {t} has this matrix"))),
                Err(e) => Err(Failure::Usage(e.to_string())),
            }
        }
        Command::Verify { n, suite } => run_verify(n, &suite),
        Command::Export { n, what, object, format } => export(n, &what, object.as_deref(), format),
    }
}

fn cap(default: usize) -> usize {
    std::env::var("NCPCAT_MAX_N").ok().and_then(|v| v.parse().ok()).unwrap_or(default)
}

fn check_n(n: usize, limit: usize) -> Result<(), Failure> {
    if n == 0 || n > limit {
        return Err(Failure::Usage(format!("n = {n} is outside 1..={limit} (set NCPCAT_MAX_N to raise the cap)")));
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn read_arg(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn load_json<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T, Failure> {
    serde_json::from_str(&read_arg(arg)?).map_err(|e| Failure::Usage(e.to_string()))
}

fn partition(n: usize, text: &str) -> Result<NoncrossingPartition, Failure> {
    let p: NoncrossingPartition = text.parse().map_err(|e| Failure::Usage(format!("{text:?}: {e}")))?;
    if p.n() != n {
        return Err(Failure::Usage(format!("{text:?} is a partition of {{1..{}}}, not {{1..{n}}}", p.n())));
    }
    Ok(p)
}

fn morphism(n: usize, arg: &str) -> Result<ClusterMorphism, Failure> {
    let m: ClusterMorphism = load_json(arg)?;
    if m.source().n() != n {
        return Err(Failure::Usage(format!("morphism lives on {{1..{}}}, not {{1..{n}}}", m.source().n())));
    }
    Ok(m)
}

fn objects(n: usize, count: bool, by_rank: bool) -> Outcome {
    check_n(n, cap(OBJECTS_CAP))?;
    let all = enumerate_partitions(n);
    let summary = format!("{} noncrossing partitions of {{1..{n}}}", all.len());
    if count {
        return Ok((all.len().to_string(), summary));
    }
    if by_rank {
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        for p in &all {
            *hist.entry(p.rank()).or_insert(0) += 1;
        }
        return Ok((json(&hist), summary));
    }
    Ok((json(&all), summary))
}

fn hom(n: usize, source: &str, target: &str, count: bool) -> Outcome {
    check_n(n, cap(OBJECTS_CAP))?;
    let s = partition(n, source)?;
    let t = partition(n, target)?;
    let homs = ncpcat::hom(&s, &t);
    let summary = format!("{} morphisms {s} -> {t}", homs.len());
    if count {
        return Ok((homs.len().to_string(), summary));
    }
    Ok((json(&homs), summary))
}

fn run_verify(n: usize, suite: &str) -> Outcome {
    let suite: Suite = suite.parse().map_err(Failure::Usage)?;
    check_n(n, cap(suite.default_cap()))?;
    let report = verify::run(n, suite, &HomCache::new());
    let checks: u64 = report.counts.iter().filter(|(k, _)| k.as_str() != "objects" && !k.starts_with("rank")).map(|(_, v)| v).sum();
    let payload = json(&report);
    if report.passed {
        Ok((payload, format!("verify {n} {suite}: passed")))
    } else {
        println!("{payload}");
        Err(Failure::Check(format!(
            "verify {n} {suite}: FAILED ({} witnesses over {checks} counted items)\n{}",
            report.failures.len(),
            report.failures.first().map_or("", String::as_str)
        )))
    }
}

fn export(n: usize, what: &str, object: Option<&str>, format: Format) -> Outcome {
    check_n(n, cap(OBJECTS_CAP))?;
    match (what, object) {
        ("hasse", None) => Ok((hasse(n, format), format!("refinement order on {{1..{n}}}"))),
        ("link", Some(text)) => {
            check_n(n, cap(Suite::Links.default_cap()))?;
            let x = partition(n, text)?;
            let link = vertex_link(&x, &HomCache::new()).map_err(|e| Failure::Check(e.to_string()))?;
            let summary = format!("link of {x}: {} vertices, {} facets", link.vertices().len(), link.facets().len());
            Ok((complex(&link, format), summary))
        }
        ("link", None) => Err(Failure::Usage("export link needs a partition".into())),
        ("presentation", None) => {
            let p = presentation(n);
            let summary = format!("{} generators, {} relators", p.generators.len(), p.relators.len());
            match format {
                Format::Json => Ok((json(&p), summary)),
                Format::Text => Ok((p.to_string().trim_end().to_string(), summary)),
                Format::Dot => Err(Failure::Usage("presentation has no dot form".into())),
            }
        }
        ("hasse" | "presentation", Some(_)) => Err(Failure::Usage(format!("export {what} takes no partition"))),
        _ => Err(Failure::Usage(format!("unknown export target {what:?}"))),
    }
}

fn hasse(n: usize, format: Format) -> String {
    let all = enumerate_partitions(n);
    let index: BTreeMap<&NoncrossingPartition, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut covers = Vec::new();
    for p in &all {
        for q in all.iter().filter(|q| q.rank() + 1 == p.rank() && q.refines(p).unwrap_or(false)) {
            covers.push((index[p], index[q], ncpcat::hom(p, q).len()));
        }
    }
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Cover {
                from: usize,
                to: usize,
                morphisms: usize,
            }
            #[derive(Serialize)]
            struct Hasse<'a> {
                nodes: &'a [NoncrossingPartition],
                covers: Vec<Cover>,
            }
            let covers = covers.iter().map(|&(from, to, morphisms)| Cover { from, to, morphisms }).collect();
            json(&Hasse { nodes: &all, covers })
        }
        Format::Text => covers
            .iter()
            .map(|&(a, b, k)| format!("{} -> {} {k}", all[a], all[b]))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Dot => {
            let mut out = String::from("digraph hasse {\n");
            for (i, p) in all.iter().enumerate() {
                let _ = writeln!(out, "  n{i} [label=\"{p}\"];");
            }
            for &(a, b, k) in &covers {
                let _ = writeln!(out, "  n{a} -> n{b} [label=\"{k}\"];");
            }
            out.push('}');
            out
        }
    }
}

fn complex(k: &SimplicialComplex, format: Format) -> String {
    match format {
        Format::Json => json(k),
        Format::Text => k
            .labeled_facets()
            .iter()
            .map(|f| f.iter().cloned().collect::<Vec<_>>().join(" | "))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Dot => {
            let mut out = String::from("graph link {\n");
            for (i, v) in k.vertices().iter().enumerate() {
                let _ = writeln!(out, "  v{i} [label=\"{v}\"];");
            }
            for (a, b) in k.edges() {
                let _ = writeln!(out, "  v{a} -- v{b};");
            }
            out.push('}');
            out
        }
    }
}
