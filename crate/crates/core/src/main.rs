//! Command-line front end. Exit status 0 means accepted or done, 1 means
//! rejected or refused, 2 means malformed input. Diagnostics go to stderr
//! as JSON lines.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use diskiso::arrangements::{verify_acc, verify_isolation, verify_multiterminal_cut, verify_udmc, Verdict};
use diskiso::gadgets::DiskInstance;
use diskiso::geometry::params::min_line_gap_sq;
use diskiso::geometry::{check_constraints, min_grid_angle_exceeds, min_grid_line_point_distance_sq, ParamMode, ToyOverrides};
use diskiso::graphs::GraphFile;
use diskiso::pipeline::corpus::{corpus_file, random_plane_graph};
use diskiso::pipeline::render::{render_drawing, render_instance, RenderOptions};
use diskiso::pipeline::{embedding_for, lift, reduce, Claim, ParamChoice, ReductionKind, ReductionRecord};
use diskiso::scalar::{format_rational, parse_rational};
use diskiso::solvers::{
    brute_min_acc, brute_min_fvs, brute_min_isolation, brute_min_multiterminal_cut, brute_min_subdivision,
    is_forest, solve_udmc, Caps, ProblemTag,
};
use diskiso::{Error, Rational, Result};

#[derive(Parser)]
#[command(name = "diskiso", version, about = "Unit-disk separation reductions, verifiers and exact solvers")]
struct Cli {
    #[command(flatten)]
    params: ParamFlags,
    /// Seed for generated corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file, or directory for `reduce` and `corpus`; stdout if absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sound,
    Toy,
}

#[derive(Args)]
struct ParamFlags {
    /// Parameter regime.
    #[arg(long = "params", global = true, value_enum, default_value = "sound")]
    mode: Mode,
    /// Disk radius override, as `num/den` (toy mode).
    #[arg(long, global = true)]
    r: Option<String>,
    /// Hallway width override (toy mode).
    #[arg(long, global = true)]
    h: Option<String>,
    /// Ring radius override (toy mode).
    #[arg(long, global = true)]
    s: Option<String>,
    /// Cabin offset override (toy mode).
    #[arg(long, global = true)]
    a: Option<String>,
    /// Disk spacing override (toy mode).
    #[arg(long, global = true)]
    spacing: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a source instance; writes instance.json and record.json.
    Reduce {
        /// pmc-subdivision, subdivision-isolation, fvs-acc or mc-udmc.
        kind: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Check a certificate against an instance.
    Verify {
        /// isolation, acc, udmc, multiterminal, fvs or subdivision.
        problem: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Exact optimum with a witness, refusing beyond the caps.
    Solve {
        problem: String,
        #[arg(long)]
        input: PathBuf,
        /// Largest candidate cardinality enumerated.
        #[arg(long, default_value_t = 12)]
        cap_subset: usize,
        /// Largest ground set enumerated.
        #[arg(long, default_value_t = 40)]
        cap_ground: usize,
    },
    /// Map a verified target solution back through a reduction record.
    Lift {
        #[arg(long)]
        record: PathBuf,
        /// The target instance the record was produced with.
        #[arg(long)]
        instance: PathBuf,
        /// Certificate or optimum certificate holding the target solution.
        #[arg(long)]
        solution: PathBuf,
    },
    /// SVG picture of a disk instance or a graph file.
    Render {
        #[arg(long)]
        input: PathBuf,
        /// Draw unit grid lines.
        #[arg(long)]
        grid: bool,
    },
    /// Evaluate the parameter inequalities at grid size N.
    CheckParams {
        #[arg(long)]
        n: u64,
    },
    /// Brute-force the grid distance and angle bounds at grid size N.
    LemmaOracle {
        #[arg(long)]
        n: u64,
    },
    /// Seeded random plane graphs, one graph file per instance.
    Corpus {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        /// Survival probability of edges outside a spanning tree.
        #[arg(long, default_value_t = 0.5)]
        keep: f64,
    },
}

/// One JSON diagnostic line on stderr.
fn diag(level: &str, fields: serde_json::Value) {
    let mut v = json!({ "level": level });
    if let (Some(m), Some(f)) = (v.as_object_mut(), fields.as_object()) {
        m.extend(f.clone());
    }
    eprintln!("{v}");
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Json(_) | Error::Io(_) | Error::Structural(_) | Error::Boundary(_) => 2,
        _ => 1,
    }
}

fn read(p: &Path) -> Result<String> {
    Ok(fs::read_to_string(p)?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            fs::write(p, text)?;
            diag("info", json!({ "event": "wrote", "path": p.display().to_string() }));
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn rational(s: &Option<String>) -> Result<Option<Rational>> {
    s.as_deref().map(parse_rational).transpose()
}

impl ParamFlags {
    fn choice(&self) -> Result<ParamChoice> {
        let overrides = ToyOverrides {
            r: rational(&self.r)?,
            h: rational(&self.h)?,
            s: rational(&self.s)?,
            a: rational(&self.a)?,
            spacing: rational(&self.spacing)?,
            ..Default::default()
        };
        let mode = match self.mode {
            Mode::Sound => ParamMode::Sound,
            Mode::Toy => ParamMode::Toy,
        };
        Ok(ParamChoice { mode, overrides })
    }
}

fn verdict_exit(v: &Verdict) -> u8 {
    println!("{}", serde_json::to_string(v).expect("verdicts serialize"));
    if v.accept {
        0
    } else {
        diag("reject", json!({ "reason": v.reason }));
        1
    }
}

fn verify(problem: ProblemTag, input: &str, cert: &str) -> Result<Verdict> {
    let claim = Claim::parse(cert)?;
    if claim.problem.is_some_and(|p| p != problem) {
        return Err(Error::Parse(format!("certificate is for {:?}, not {problem:?}", claim.problem.unwrap())));
    }
    let budget = claim.budget.unwrap_or(claim.items.len() as u64);
    let items = &claim.items;
    match problem {
        ProblemTag::Isolation => verify_isolation(&DiskInstance::parse(input)?, items, budget),
        ProblemTag::Acc => verify_acc(&DiskInstance::parse(input)?, items, budget),
        ProblemTag::Udmc => verify_udmc(&DiskInstance::parse(input)?, items, budget),
        ProblemTag::Multiterminal => {
            let i = GraphFile::parse(input)?.to_multiterminal()?;
            let g = &i.graph;
            verify_multiterminal_cut(g.n(), g.edges(), &i.weights, &i.terminals, items, budget)
        }
        ProblemTag::Fvs => {
            let g = GraphFile::parse(input)?.to_graph()?;
            diskiso::gadgets::check_subset(items, g.n())?;
            if items.len() as u64 > budget {
                return Ok(Verdict::reject(format!("budget: {} vertices exceed {budget}", items.len())));
            }
            let mut alive = vec![true; g.n()];
            for &v in items {
                alive[v] = false;
            }
            Ok(if is_forest(g.n(), g.edges(), &alive) { Verdict::accept() } else { Verdict::reject("a cycle remains") })
        }
        ProblemTag::Subdivision => {
            let sub = GraphFile::parse(input)?.to_subdivision()?;
            diskiso::gadgets::check_subset(items, sub.graph.m())?;
            if items.len() as u64 > budget {
                return Ok(Verdict::reject(format!("budget: {} edges exceed {budget}", items.len())));
            }
            let mut keep = vec![false; sub.graph.m()];
            for &e in items {
                keep[e] = true;
            }
            Ok(if sub.separated_by(&sub.graph.facial_walks(), &keep) {
                Verdict::accept()
            } else {
                Verdict::reject("two terminals share a face")
            })
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.cmd {
        Command::Reduce { kind, input } => {
            let kind = ReductionKind::parse(kind)?;
            let red = reduce(kind, &read(input)?, &cli.params.choice()?)?;
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            fs::create_dir_all(&dir)?;
            fs::write(dir.join("instance.json"), &red.target)?;
            fs::write(dir.join("record.json"), red.record.to_json())?;
            diag(
                "info",
                json!({ "event": "reduced", "kind": kind, "dir": dir.display().to_string(), "target_digest": red.record.target_digest }),
            );
            Ok(0)
        }
        Command::Verify { problem, input, cert } => {
            let v = verify(ProblemTag::parse(problem)?, &read(input)?, &read(cert)?)?;
            Ok(verdict_exit(&v))
        }
        Command::Solve { problem, input, cap_subset, cap_ground } => {
            let caps = Caps { subset: *cap_subset, ground: *cap_ground };
            let text = read(input)?;
            let cert = match ProblemTag::parse(problem)? {
                ProblemTag::Isolation => brute_min_isolation(&DiskInstance::parse(&text)?, &caps)?,
                ProblemTag::Acc => brute_min_acc(&DiskInstance::parse(&text)?, &caps)?,
                ProblemTag::Udmc => solve_udmc(&DiskInstance::parse(&text)?, &caps)?,
                ProblemTag::Subdivision => brute_min_subdivision(&GraphFile::parse(&text)?.to_subdivision()?, &caps)?,
                ProblemTag::Fvs => brute_min_fvs(&GraphFile::parse(&text)?.to_graph()?, &caps)?,
                ProblemTag::Multiterminal => brute_min_multiterminal_cut(&GraphFile::parse(&text)?.to_multiterminal()?, &caps)?,
            };
            emit(&cli.out, &cert.to_json())?;
            Ok(0)
        }
        Command::Lift { record, instance, solution } => {
            let rec = ReductionRecord::parse(&read(record)?)?;
            let claim = Claim::parse(&read(solution)?)?;
            if claim.problem.is_some_and(|p| p != rec.kind.target_problem()) {
                return Err(Error::Parse("solution is for a different problem than the record's target".into()));
            }
            let lifted = lift(&rec, &read(instance)?, &claim.items)?;
            emit(&cli.out, &serde_json::to_string_pretty(&lifted)?)?;
            Ok(0)
        }
        Command::Render { input, grid } => {
            let text = read(input)?;
            let v: serde_json::Value = serde_json::from_str(&text)?;
            let opts = RenderOptions { grid: *grid };
            let svg = if v.get("disks").is_some() {
                render_instance(&DiskInstance::parse(&text)?, opts)
            } else {
                let file = GraphFile::parse(&text)?;
                let g = file.to_graph()?;
                let emb = embedding_for(&file, &g)?;
                render_drawing(&g, &emb.coords, &file.terminals, opts)
            };
            emit(&cli.out, &svg)?;
            Ok(0)
        }
        Command::CheckParams { n } => {
            let choice = cli.params.choice()?;
            let p = diskiso::geometry::compute_params(*n, choice.mode, &choice.overrides)?;
            let report = check_constraints(&p);
            let out = json!({ "params": p, "report": report, "all_hold": report.all_hold() });
            emit(&cli.out, &serde_json::to_string_pretty(&out)?)?;
            Ok(if report.all_hold() { 0 } else { 1 })
        }
        Command::LemmaOracle { n } => {
            if *n < 2 {
                return Err(Error::Parse("lemma-oracle needs N >= 2".into()));
            }
            let (d2, witness) = min_grid_line_point_distance_sq(*n);
            let expected = min_line_gap_sq(*n);
            let angle = min_grid_angle_exceeds(*n);
            let ok = d2 == expected && angle.holds;
            let out = json!({
                "n": n,
                "distance_sq": format_rational(&d2),
                "expected_distance_sq": format_rational(&expected),
                "distance_witness": witness,
                "angle": angle,
                "holds": ok,
            });
            emit(&cli.out, &serde_json::to_string_pretty(&out)?)?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Corpus { count, vertices, keep } => {
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            fs::create_dir_all(&dir)?;
            for k in 0..*count {
                let (g, coords) = random_plane_graph(cli.seed.wrapping_add(k as u64), *vertices, *keep)?;
                fs::write(dir.join(format!("graph_{k:03}.json")), corpus_file(&g, &coords).to_json())?;
            }
            diag("info", json!({ "event": "corpus", "count": count, "seed": cli.seed }));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            diag("error", json!({ "kind": e.kind(), "message": e.to_string() }));
            ExitCode::from(exit_for(&e))
        }
    }
}
