//! Command-line workbench over the `widecolor` library: build the graph
//! families, construct and check the wide-to-Kneser homomorphism with an
//! on-disk certificate, re-verify stored certificates, and run the full
//! reproducibility report.
//!
//! Exit codes: 0 success/verified, 1 refuted/failed, 2 budget-exhausted or
//! unconfirmed, 64 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use widecolor::family::{self, FamilySpec};
use widecolor::graph::kneser;
use widecolor::hom::{
    verify_homomorphism, verify_wide_to_kneser_streamed, wide_to_kneser, CertCounts, ChoicePolicy,
    HomCertificate, VerifyOutcome, VertexMap, CERT_SCHEMA,
};
use widecolor::io::{write_dimacs, write_json};
use widecolor::report::{
    render_text, report_to_json, run_all, run_criterion, CriterionStatus, ReportConfig,
};
use widecolor::Error;

const FAMILY_GRAMMAR: &str = "\
Family grammar (used by --family, --source, --target):
  K:t           complete graph on t vertices
  C:n           cycle on n vertices
  KG:n,k        Kneser graph on the k-subsets of {1..n}
  W:s,t         universal graph for s-wide t-colorings (coordinate form)
  Omega:s,t     the same graph in its set-chain form
  M:h(SPEC)     generalized Mycielskian with h levels over SPEC
  M:h^d(SPEC)   the d-fold iterated Mycielskian

Examples: W:2,5   KG:5,2   M:4(C:9)   M:2^2(K:2)";

#[derive(Parser)]
#[command(
    name = "widecolor",
    version,
    about = "Workbench for the universal graphs of wide colorings",
    after_help = FAMILY_GRAMMAR
)]
struct Cli {
    /// Cap internal parallelism at this many threads.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family graph and write it to disk.
    #[command(after_help = FAMILY_GRAMMAR)]
    Build {
        /// Family spec, e.g. "W:2,5" (see the grammar below).
        #[arg(long)]
        family: String,
        /// Output path.  DIMACS output adds a "<stem>.labels.json" sidecar
        /// carrying the vertex labels, which DIMACS itself cannot.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = OutFormat::Dimacs)]
        format: OutFormat,
    },
    /// Construct the homomorphism from W:s,t into KG:t+2(s-1),s, verify it
    /// edge by edge, and write a replayable certificate.
    Theorem12 {
        /// Width parameter of the source graph (s >= 1).
        #[arg(long)]
        s: u32,
        /// Number of colors of the source graph (t >= 2).
        #[arg(long)]
        t: u32,
        /// How ties in the image construction are broken.
        #[arg(long, value_enum, default_value_t = PolicyArg::Smallest)]
        policy: PolicyArg,
        /// Seed for --policy random; recorded in the certificate.
        #[arg(long, required_if_eq("policy", "random"))]
        seed: Option<u64>,
        /// Certificate output path (JSON).
        #[arg(long)]
        cert: PathBuf,
        /// Verify against streamed neighbor enumeration instead of
        /// materialized graphs (for the larger instances).
        #[arg(long)]
        streamed: bool,
    },
    /// Rebuild the graphs named by a certificate and re-verify it bit for
    /// bit: vertex counts, edge preservation, and byte-exact replay of the
    /// recorded construction policy.
    Verify {
        /// Certificate file written by `theorem12`.
        #[arg(long)]
        cert: PathBuf,
        /// Override the source family recorded in the certificate.
        #[arg(long)]
        source: Option<String>,
        /// Override the target family recorded in the certificate.
        #[arg(long)]
        target: Option<String>,
    },
    /// Run the reproducibility checks and print a pass/fail table.
    Report {
        /// Emit the versioned JSON document instead of the text table.
        #[arg(long)]
        json: bool,
        /// Use the reduced budget preset: fast, but strict rows may come
        /// out unconfirmed.
        #[arg(long)]
        reduced: bool,
        /// Override the node budget for homomorphism search.
        #[arg(long)]
        search_budget: Option<u64>,
        /// Override the budget for exact chromatic computations.
        #[arg(long)]
        chromatic_budget: Option<u64>,
        /// Override the number of random seeds sampled per randomized check.
        #[arg(long)]
        seeds: Option<u64>,
        /// Run a single criterion (1..=9) instead of all of them.
        #[arg(long)]
        criterion: Option<u32>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Dimacs,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    /// Deterministic smallest admissible element.
    Smallest,
    /// Seeded uniform pick (requires --seed).
    Random,
}

/// A command failure bound to the exit code it should produce.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Display) -> Failure {
    Failure { code: 64, message: message.to_string() }
}

fn failed(message: impl Display) -> Failure {
    Failure { code: 1, message: message.to_string() }
}

type CmdResult = Result<i32, Failure>;

fn main() {
    let code = match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                0
            } else {
                eprint!("{e}");
                64
            }
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> i32 {
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return 64;
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure the thread pool: {e}");
            return 1;
        }
    }
    let outcome = match cli.command {
        Command::Build { family, out, format } => cmd_build(&family, &out, format),
        Command::Theorem12 { s, t, policy, seed, cert, streamed } => {
            cmd_theorem12(s, t, policy, seed, &cert, streamed)
        }
        Command::Verify { cert, source, target } => cmd_verify(&cert, source, target),
        Command::Report { json, reduced, search_budget, chromatic_budget, seeds, criterion } => {
            cmd_report(json, reduced, search_budget, chromatic_budget, seeds, criterion)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

// ---------------------------------------------------------------------------
// build
// ---------------------------------------------------------------------------

fn cmd_build(family: &str, out: &Path, format: OutFormat) -> CmdResult {
    let spec = family::parse_spec(family).map_err(usage)?;
    let g = family::build(&spec).map_err(usage)?;
    let json_doc = write_json(&g).map_err(failed)?;
    match format {
        OutFormat::Dimacs => {
            write_file(out, write_dimacs(&g))?;
            let sidecar = out.with_extension("labels.json");
            write_file(&sidecar, json_doc)?;
            println!(
                "wrote {} ({} vertices, {} edges) to {} and {}",
                g.name,
                g.n(),
                g.m(),
                out.display(),
                sidecar.display()
            );
        }
        OutFormat::Json => {
            write_file(out, json_doc)?;
            println!("wrote {} ({} vertices, {} edges) to {}", g.name, g.n(), g.m(), out.display());
        }
    }
    Ok(0)
}

fn write_file(path: &Path, content: String) -> Result<(), Failure> {
    fs::write(path, content).map_err(|e| failed(format!("cannot write {}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// theorem12
// ---------------------------------------------------------------------------

fn resolve_policy(policy: PolicyArg, seed: Option<u64>) -> ChoicePolicy {
    match policy {
        PolicyArg::Smallest => ChoicePolicy::Smallest,
        // clap enforces --seed for --policy random.
        PolicyArg::Random => ChoicePolicy::SeededRandom(seed.expect("seed required")),
    }
}

fn cmd_theorem12(
    s: u32,
    t: u32,
    policy: PolicyArg,
    seed: Option<u64>,
    cert_path: &Path,
    streamed: bool,
) -> CmdResult {
    let policy = resolve_policy(policy, seed);
    let mut map = wide_to_kneser(s, t, policy).map_err(usage)?;
    let n = t + 2 * (s - 1);
    let kg = kneser(n, s).map_err(usage)?;

    let cert = if streamed {
        let sv = verify_wide_to_kneser_streamed(s, t, policy).map_err(|e| failed(e.to_string()))?;
        let counts = CertCounts {
            source_vertices: sv.vertices,
            source_edges: sv.edges,
            target_vertices: kg.n() as u64,
            target_edges: kg.m() as u64,
        };
        // The streamed check covers every edge of the source, so the map is
        // verified even though no graph was materialized.
        HomCertificate {
            schema: CERT_SCHEMA.to_string(),
            source: map.source.clone(),
            target: map.target.clone(),
            policy: policy.as_str().to_string(),
            seed: policy.seed(),
            images: map.image.clone(),
            certificate: "verified-hom".to_string(),
            counts,
        }
    } else {
        let source = family::build_named(&map.source).map_err(usage)?;
        match verify_homomorphism(&source, &kg, &mut map).map_err(|e| failed(e.to_string()))? {
            VerifyOutcome::Verified => {}
            VerifyOutcome::Refuted { edge } => {
                return Err(failed(describe_refutation(&source, edge)));
            }
        }
        let counts = CertCounts {
            source_vertices: source.n() as u64,
            source_edges: source.m() as u64,
            target_vertices: kg.n() as u64,
            target_edges: kg.m() as u64,
        };
        HomCertificate::from_map(&map, policy, counts)
    };

    let doc = serde_json::to_string_pretty(&cert)
        .map_err(|e| failed(format!("cannot serialize certificate: {e}")))?;
    write_file(cert_path, doc)?;
    println!(
        "verified {} -> {} ({} vertices, {} edges); certificate in {}",
        cert.source,
        cert.target,
        cert.counts.source_vertices,
        cert.counts.source_edges,
        cert_path.display()
    );
    Ok(0)
}

fn describe_refutation(source: &widecolor::graph::Graph, edge: (usize, usize)) -> String {
    let (u, v) = edge;
    match (source.label(u), source.label(v)) {
        (Some(a), Some(b)) => {
            format!("refuted on edge ({u}, {v}): endpoints {a} and {b} receive intersecting images")
        }
        _ => format!("refuted on edge ({u}, {v}): endpoints receive intersecting images"),
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

/// `(s, t)` when the certificate endpoints have the canonical shape produced
/// by `theorem12`: W:1,t or Omega:s,t into KG:t+2(s-1),s.
fn canonical_endpoints(source: &str, target: &str) -> Option<(u32, u32)> {
    let (s, t) = match family::parse_spec(source).ok()? {
        FamilySpec::Wide(1, t) => (1, t),
        FamilySpec::Chain(s, t) => (s, t),
        _ => return None,
    };
    match family::parse_spec(target).ok()? {
        FamilySpec::Kneser(n, k) if k == s && n == t + 2 * (s - 1) => Some((s, t)),
        _ => None,
    }
}

fn recorded_policy(cert: &HomCertificate) -> Result<ChoicePolicy, Failure> {
    match cert.policy.as_str() {
        "smallest" => Ok(ChoicePolicy::Smallest),
        "seeded-random" => match cert.seed {
            Some(seed) => Ok(ChoicePolicy::SeededRandom(seed)),
            None => Err(usage("certificate policy 'seeded-random' lacks a seed")),
        },
        other => Err(usage(format!("unknown certificate policy '{other}'"))),
    }
}

/// Compare the stored images against a fresh run of the recorded
/// construction; any deviation means the file does not describe the map it
/// claims to.
fn replay_images(cert: &HomCertificate, s: u32, t: u32) -> Result<(), Failure> {
    let policy = recorded_policy(cert)?;
    let expected = wide_to_kneser(s, t, policy).map_err(|e| failed(e.to_string()))?;
    if cert.images.len() != expected.image.len() {
        return Err(failed(format!(
            "certificate stores {} images, the recorded construction yields {}",
            cert.images.len(),
            expected.image.len()
        )));
    }
    for (v, (&got, &want)) in cert.images.iter().zip(&expected.image).enumerate() {
        if got != want {
            return Err(failed(format!(
                "certificate deviates from the deterministic replay at vertex {v}: \
                 stores image {got}, replay yields {want}"
            )));
        }
    }
    Ok(())
}

fn check_counts(label: &str, recorded: u64, rebuilt: u64) -> Result<(), Failure> {
    if recorded != rebuilt {
        return Err(failed(format!(
            "count mismatch: certificate records {recorded} {label}, rebuilt graph has {rebuilt}"
        )));
    }
    Ok(())
}

fn cmd_verify(cert_path: &Path, source: Option<String>, target: Option<String>) -> CmdResult {
    let text = fs::read_to_string(cert_path)
        .map_err(|e| usage(format!("cannot read {}: {e}", cert_path.display())))?;
    let cert: HomCertificate = serde_json::from_str(&text)
        .map_err(|e| usage(format!("bad certificate JSON in {}: {e}", cert_path.display())))?;
    if cert.schema != CERT_SCHEMA {
        return Err(usage(format!(
            "unsupported certificate schema '{}', expected '{CERT_SCHEMA}'",
            cert.schema
        )));
    }
    let overridden = source.is_some() || target.is_some();
    let source_name = source.unwrap_or_else(|| cert.source.clone());
    let target_name = target.unwrap_or_else(|| cert.target.clone());

    let target_graph = family::build_named(&target_name).map_err(usage)?;
    check_counts("target vertices", cert.counts.target_vertices, target_graph.n() as u64)?;
    check_counts("target edges", cert.counts.target_edges, target_graph.m() as u64)?;

    match family::build_named(&source_name) {
        Ok(source_graph) => {
            check_counts("source vertices", cert.counts.source_vertices, source_graph.n() as u64)?;
            check_counts("source edges", cert.counts.source_edges, source_graph.m() as u64)?;
            let mut map =
                VertexMap::new(source_name.clone(), target_name.clone(), cert.images.clone());
            match verify_homomorphism(&source_graph, &target_graph, &mut map)
                .map_err(|e| failed(e.to_string()))?
            {
                VerifyOutcome::Verified => {}
                VerifyOutcome::Refuted { edge } => {
                    return Err(failed(describe_refutation(&source_graph, edge)));
                }
            }
            if !overridden {
                if let Some((s, t)) = canonical_endpoints(&cert.source, &cert.target) {
                    replay_images(&cert, s, t)?;
                }
            }
            println!(
                "verified {} -> {} ({} vertices, {} edges)",
                source_name,
                target_name,
                source_graph.n(),
                source_graph.m()
            );
            Ok(0)
        }
        // Sources too large to materialize are verified the same way they
        // were produced: byte-exact replay plus the streamed edge check.
        Err(Error::CapExceeded(_)) if !overridden => {
            let (s, t) = canonical_endpoints(&cert.source, &cert.target).ok_or_else(|| {
                failed(format!("cannot rebuild source {source_name} to verify the certificate"))
            })?;
            replay_images(&cert, s, t)?;
            let policy = recorded_policy(&cert)?;
            let sv =
                verify_wide_to_kneser_streamed(s, t, policy).map_err(|e| failed(e.to_string()))?;
            check_counts("source vertices", cert.counts.source_vertices, sv.vertices)?;
            check_counts("source edges", cert.counts.source_edges, sv.edges)?;
            println!(
                "verified {} -> {} over streamed edges ({} vertices, {} edges)",
                source_name, target_name, sv.vertices, sv.edges
            );
            Ok(0)
        }
        Err(e) => Err(usage(e)),
    }
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn cmd_report(
    json: bool,
    reduced: bool,
    search_budget: Option<u64>,
    chromatic_budget: Option<u64>,
    seeds: Option<u64>,
    criterion: Option<u32>,
) -> CmdResult {
    let mut cfg = if reduced { ReportConfig::reduced() } else { ReportConfig::default() };
    if let Some(b) = search_budget {
        cfg.search_budget = b;
    }
    if let Some(b) = chromatic_budget {
        cfg.chromatic_budget = b;
    }
    if let Some(n) = seeds {
        if n == 0 {
            return Err(usage("--seeds must be at least 1"));
        }
        cfg.seeds = n;
    }
    let results = match criterion {
        None => run_all(&cfg),
        Some(id) if (1..=9).contains(&id) => vec![run_criterion(id, &cfg)],
        Some(id) => return Err(usage(format!("criterion {id} is outside 1..=9"))),
    };
    let rendered = if json {
        let mut doc = serde_json::to_string_pretty(&report_to_json(&results))
            .map_err(|e| failed(format!("cannot serialize report: {e}")))?;
        doc.push('\n');
        doc
    } else {
        render_text(&results)
    };
    // Tolerate a closed pipe (e.g. piping into `head`) instead of panicking.
    let _ = std::io::Write::write_all(&mut std::io::stdout(), rendered.as_bytes());
    if results.iter().any(|r| r.status == CriterionStatus::Fail) {
        Ok(1)
    } else if results.iter().any(|r| r.status == CriterionStatus::Unconfirmed) {
        Ok(2)
    } else {
        Ok(0)
    }
}
