mod fixtures;
mod report;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use posetop::cylinder::{
    build_cylinder, check_hypothesis_x, check_hypothesis_y, verify_homology_version,
};
use posetop::homology::homology;
use posetop::mapper::{filter, mapper_completion, IntervalCover, PointCloud};
use posetop::nerve::{classify_cover, completion_poset, complex_to_dot, cw_to_dot, nerve, x_zero};
use posetop::reduction::{
    collapse_search_within, core_of, reduce, simplicial_collapse_search, CollapseOutcome,
    ReductionKind,
};
use posetop::{io, Budget, Error, Poset, RegularCWComplex, SimplicialComplex, TrivialityOracle};

use report::{Attachment, ReportStatus, RunReport};
use verify::{profile, Context};

#[derive(Parser)]
#[command(name = "posetop", version, about = "Homotopy theory of finite posets")]
struct Cli {
    /// Node budget for collapse searches.
    #[arg(long, global = true, env = "POSETOP_BUDGET", default_value_t = 100_000)]
    budget: u64,
    #[arg(long, global = true, env = "POSETOP_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, env = "POSETOP_OUT")]
    out: Option<PathBuf>,
    /// Seed for commands that sample; they refuse to run without one.
    #[arg(long, global = true, env = "POSETOP_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy reduction by beat, weak or gamma points.
    Reduce {
        poset: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Weak)]
        kind: Kind,
        /// Start from this subset (comma separated) instead of the whole poset.
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
    },
    /// Core of a poset by beat point removal.
    Core { poset: PathBuf },
    /// Search for a collapse to a point or onto a target.
    Collapse {
        input: PathBuf,
        /// Induced subposet (or subcomplex with --complex) to collapse onto.
        #[arg(long)]
        target: Option<PathBuf>,
        /// Read a simplicial complex and search for simplicial collapses.
        #[arg(long)]
        complex: bool,
    },
    /// Cylinder of a relation read from DIR (source, target, relation or map).
    Cylinder {
        #[arg(value_enum)]
        action: CylinderAction,
        dir: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Nerve of a cover read from DIR (poset or complex, and cover).
    Nerve {
        dir: PathBuf,
        /// Complex rendered by --format dot.
        #[arg(long, value_enum, default_value_t = NerveEmit::Nerve)]
        emit: NerveEmit,
        /// Replace each cover part by its open hull instead of rejecting it.
        #[arg(long)]
        open_hull: bool,
    },
    /// Completion of the nerve of a cover read from DIR.
    Completion {
        dir: PathBuf,
        #[arg(long)]
        open_hull: bool,
    },
    /// Integer homology of a poset, complex or CW complex.
    Homology {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InputKind::Auto)]
        kind: InputKind,
        #[arg(long)]
        reduced: bool,
    },
    /// Verify a theorem on a fixture directory, or every fixture under --batch.
    Verify {
        theorem: Option<String>,
        dir: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["theorem", "dir"])]
        batch: Option<PathBuf>,
        #[arg(long)]
        degree: Option<usize>,
        /// Replace each cover part by its open hull instead of rejecting it.
        #[arg(long)]
        open_hull: bool,
        /// List theorem ids.
        #[arg(long)]
        list: bool,
    },
    /// Mapper with the completion of the nerve.
    Mapper {
        /// CSV, one point per row.
        points: Option<PathBuf>,
        /// Generate a sample instead of reading one; needs --seed.
        #[arg(long, value_enum, conflicts_with = "points")]
        sample: Option<Sample>,
        #[arg(long, default_value_t = 60)]
        size: usize,
        #[arg(long, default_value = "x")]
        filter: String,
        #[arg(long, default_value_t = 4)]
        intervals: usize,
        #[arg(long, default_value_t = 0.3)]
        overlap: f64,
        #[arg(long, default_value_t = 0.25)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = MapperEmit::Completion)]
        emit: MapperEmit,
    },
    /// The shipped fixture set.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Beat,
    Weak,
    Gamma,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CylinderAction {
    Build,
    CheckX,
    CheckY,
    VerifyA,
    VerifyHomology,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum NerveEmit {
    Nerve,
    XZero,
    Completion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InputKind {
    Auto,
    Poset,
    Complex,
    Cw,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Sample {
    Circle,
    FigureEight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapperEmit {
    Nerve,
    ComponentNerve,
    Completion,
}

#[derive(Subcommand)]
enum FixturesAction {
    List,
    /// Write the shipped fixtures under DIR.
    Write {
        dir: PathBuf,
    },
    /// Check that the fixtures under DIR match the shipped ones.
    Check {
        dir: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("POSETOP_LOG", "warn")).init();
    let cli = Cli::parse();
    let oracle = match Budget::new(cli.budget) {
        Ok(b) => TrivialityOracle::new(b),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let code = match &cli.command {
        Command::Verify {
            batch: Some(dir),
            degree,
            open_hull,
            ..
        } => run_batch(dir, &oracle, *degree, *open_hull, &cli),
        Command::Verify { list: true, .. } => {
            for v in verify::registry() {
                println!("{:16} {}", v.id(), v.summary());
            }
            0
        }
        Command::Fixtures { action } => run_fixtures(action),
        command => {
            let mut report = RunReport::new(command_name(command));
            if let Err(e) = run(command, &cli, &oracle, &mut report) {
                report.fail(&e);
            }
            let report = report.finalize();
            emit(&report, &cli)
        }
    };
    ExitCode::from(code as u8)
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Reduce { .. } => "reduce".into(),
        Command::Core { .. } => "core".into(),
        Command::Collapse { .. } => "collapse".into(),
        Command::Cylinder { action, .. } => format!(
            "cylinder {}",
            action.to_possible_value().expect("named").get_name()
        ),
        Command::Nerve { .. } => "nerve".into(),
        Command::Completion { .. } => "completion".into(),
        Command::Homology { .. } => "homology".into(),
        Command::Verify { theorem, .. } => {
            format!("verify {}", theorem.as_deref().unwrap_or(""))
        }
        Command::Mapper { .. } => "mapper".into(),
        Command::Fixtures { .. } => "fixtures".into(),
    }
}

/// Writes the report in the chosen format and returns the exit code.
fn emit(report: &RunReport, cli: &Cli) -> i32 {
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Text => {
            let mut t = format!("{}: {}\n", report.command, report.status.as_str());
            t.push_str(&report.text);
            for c in &report.certificates {
                t.push_str(&format!(
                    "certificate {}: {} steps, {}\n",
                    c.name,
                    c.steps,
                    if c.replayed {
                        "replays"
                    } else {
                        "DOES NOT REPLAY"
                    }
                ));
            }
            t
        }
        Format::Dot => match &report.dot {
            Some(d) if report.status != ReportStatus::Error => d.clone(),
            _ => {
                eprintln!(
                    "error: {}",
                    report
                        .error
                        .as_ref()
                        .map(|e| e.message.clone())
                        .unwrap_or_else(|| format!("{} has no DOT rendering", report.command))
                );
                return if report.status == ReportStatus::Error {
                    report.exit_code()
                } else {
                    3
                };
            }
        },
    };
    if let Err(e) = write_out(&body, cli.out.as_deref()) {
        eprintln!("error: {e}");
        return 3;
    }
    if let (Some(err), false) = (&report.error, cli.format == Format::Text) {
        eprintln!("error: {}", err.message);
    }
    report.exit_code()
}

fn write_out(body: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, body),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(body.as_bytes())
        }
    }
}

fn run(
    command: &Command,
    cli: &Cli,
    oracle: &TrivialityOracle,
    report: &mut RunReport,
) -> Result<(), Error> {
    match command {
        Command::Reduce { poset, kind, set } => {
            let p = io::parse_poset(&report.read(poset)?)?;
            let start = if set.is_empty() {
                p.full_set()
            } else {
                p.element_set(set)?
            };
            let kind = match kind {
                Kind::Beat => ReductionKind::Beat,
                Kind::Weak => ReductionKind::Weak,
                Kind::Gamma => ReductionKind::Gamma,
            };
            let (rest, cert) = reduce(&p, &start, kind, oracle)?;
            for step in &cert.steps {
                report.line(step.to_string());
            }
            report.line(format!("remaining: {}", p.names(&rest).join(" ")));
            report.set_result(&serde_json::json!({ "remaining": p.names(&rest) }));
            report.attach(
                "reduction",
                Attachment::Poset {
                    poset: p,
                    start,
                    end: rest,
                },
                cert,
            );
        }
        Command::Core { poset } => {
            let p = io::parse_poset(&report.read(poset)?)?;
            let (rest, cert) = core_of(&p, &p.full_set())?;
            let core = p.induced_subposet(&rest)?;
            report.line(format!("core has {} of {} elements", core.len(), p.len()));
            report.line(io::poset_to_text(&core).trim_end());
            report.dot = Some(poset_dot("core", &core));
            report.set_result(&serde_json::json!({ "core": core.to_json() }));
            report.attach(
                "dismantling",
                Attachment::Poset {
                    poset: p.clone(),
                    start: p.full_set(),
                    end: rest,
                },
                cert,
            );
        }
        Command::Collapse {
            input,
            target,
            complex,
        } => {
            let text = report.read(input)?;
            let target_text = match target {
                Some(t) => Some(report.read(t)?),
                None => None,
            };
            let budget = oracle.budget();
            if *complex {
                let k = io::parse_complex(&text)?;
                let t = target_text.as_deref().map(io::parse_complex).transpose()?;
                let outcome = simplicial_collapse_search(&k, t.as_ref(), budget)?;
                if let CollapseOutcome::Found { certificate } = &outcome {
                    let end = certificate.replay_complex(&k)?;
                    report.line(format!("collapses in {} steps", certificate.len()));
                    report.attach(
                        "simplicial-collapse",
                        Attachment::Complex {
                            complex: k.clone(),
                            end: end.canonical_form(),
                        },
                        certificate.clone(),
                    );
                }
                collapse_status(report, &outcome);
            } else {
                let p = io::parse_poset(&text)?;
                let t = match &target_text {
                    Some(t) => Some(p.element_set(io::parse_poset(t)?.ids())?),
                    None => None,
                };
                let outcome = collapse_search_within(&p, &p.full_set(), t.as_ref(), budget)?;
                if let CollapseOutcome::Found { certificate } = &outcome {
                    let end = certificate.replay(&p, &p.full_set())?;
                    report.line(format!("collapses in {} steps", certificate.len()));
                    report.attach(
                        "weak-collapse",
                        Attachment::Poset {
                            poset: p.clone(),
                            start: p.full_set(),
                            end,
                        },
                        certificate.clone(),
                    );
                }
                collapse_status(report, &outcome);
            }
        }
        Command::Cylinder {
            action: CylinderAction::VerifyA,
            dir,
            degree,
        } => {
            let ctx = Context {
                oracle: oracle.clone(),
                degree: *degree,
                open_hull: false,
            };
            verify::verifier("thm-a")
                .expect("registered")
                .run(dir, &ctx, report)?;
        }
        Command::Cylinder {
            action,
            dir,
            degree,
        } => {
            let r = verify::load_relation(dir, report)?;
            match action {
                CylinderAction::Build => {
                    let c = build_cylinder(&r);
                    report.line(io::poset_to_text(c.poset()).trim_end());
                    report.dot = Some(poset_dot("cylinder", c.poset()));
                    report.set_result(&c.poset().to_json());
                }
                CylinderAction::CheckX | CylinderAction::CheckY => {
                    let h = if matches!(action, CylinderAction::CheckX) {
                        check_hypothesis_x(&r, oracle)
                    } else {
                        check_hypothesis_y(&r, oracle)
                    };
                    report.status = h.status.into();
                    for e in &h.entries {
                        report.line(format!(
                            "{}: {} {{{}}}",
                            e.element,
                            e.verdict.value,
                            e.set.join(", ")
                        ));
                    }
                    report.set_result(&h);
                }
                CylinderAction::VerifyA => {
                    unreachable!("handled above")
                }
                CylinderAction::VerifyHomology => {
                    let n = degree
                        .ok_or_else(|| Error::Invalid("verify-homology needs --degree".into()))?;
                    let h = verify_homology_version(&r, n)?;
                    report.status = h.status.into();
                    report.line(format!("through degree {n}: {}", h.status));
                    report.set_result(&h);
                }
            }
        }
        Command::Nerve {
            dir,
            emit,
            open_hull,
        } => {
            let c = verify::load_poset_cover(dir, *open_hull, report)?;
            let n = nerve(&c);
            let classification = classify_cover(&c, oracle);
            let x0 = x_zero(&c, oracle);
            report.line(format!("nerve f-vector: {:?}", n.f_vector()));
            report.line(format!("cover: {}", classification.status));
            report.line(format!("X_0: {}", x0.poset.ids().join(" ")));
            let mut completion_json = None;
            match emit {
                NerveEmit::Nerve => report.dot = Some(complex_to_dot(&n)),
                NerveEmit::XZero => report.dot = Some(poset_dot("x_zero", &x0.poset)),
                NerveEmit::Completion => {
                    let cw = completion_poset(&c)?.cw()?;
                    report.line(format!("completion f-vector: {:?}", cw.f_vector()));
                    report.dot = Some(cw_to_dot(&cw));
                    completion_json = Some(cw.to_json());
                }
            }
            report.set_result(&serde_json::json!({
                "nerve": n.to_json(),
                "classification": classification,
                "x_zero": x0.poset.to_json(),
                "undecided": x0.undecided,
                "completion": completion_json,
            }));
        }
        Command::Completion { dir, open_hull } => {
            let c = verify::load_poset_cover(dir, *open_hull, report)?;
            let completion = completion_poset(&c)?;
            let cw = completion.cw()?;
            let h = homology(&cw, false);
            report.line(format!("f-vector: {:?}", cw.f_vector()));
            report.line(format!("H = {}", profile(&h)));
            for cell in &completion.cells {
                report.line(format!("  {}: {}", cell.id, cell.component.join(" ")));
            }
            report.dot = Some(cw_to_dot(&cw));
            report.set_result(&serde_json::json!({
                "complex": cw.to_json(),
                "f_vector": cw.f_vector(),
                "cells": completion.cells,
                "homology": h,
            }));
        }
        Command::Homology {
            input,
            kind,
            reduced,
        } => {
            let text = report.read(input)?;
            let h = match read_homological(&text, *kind)? {
                Input::Poset(p) => {
                    report.dot = Some(poset_dot("poset", &p));
                    homology(&p, *reduced)
                }
                Input::Complex(k) => {
                    report.dot = Some(complex_to_dot(&k));
                    homology(&k, *reduced)
                }
                Input::Cw(cw) => {
                    report.dot = Some(cw_to_dot(&cw));
                    homology(&cw, *reduced)
                }
            };
            if h.degrees.is_empty() {
                report.line("all groups vanish");
            } else {
                report.line(format!("{:>6}  group", "degree"));
            }
            for (d, g) in h.degrees.iter().enumerate() {
                report.line(format!("{d:>6}  {g}"));
            }
            report.set_result(&h);
        }
        Command::Verify {
            theorem,
            dir,
            degree,
            open_hull,
            ..
        } => {
            let (Some(theorem), Some(dir)) = (theorem, dir) else {
                return Err(Error::Invalid(
                    "verify needs a theorem id and a fixture directory, or --batch".into(),
                ));
            };
            let v = verify::verifier(theorem).ok_or_else(|| {
                Error::Invalid(format!(
                    "unknown theorem `{theorem}` (expected one of {})",
                    verify::ids().join(", ")
                ))
            })?;
            let manifest_degree = fixtures::read_manifest(dir).ok().and_then(|m| m.degree);
            let ctx = Context {
                oracle: oracle.clone(),
                degree: degree.or(manifest_degree),
                open_hull: *open_hull,
            };
            v.run(dir, &ctx, report)?;
        }
        Command::Mapper {
            points,
            sample,
            size,
            filter: filter_name,
            intervals,
            overlap,
            epsilon,
            emit,
        } => {
            let pc = match (points, sample) {
                (Some(path), _) => io::parse_points_csv(&report.read(path)?)?,
                (None, Some(sample)) => {
                    let seed = cli.seed.ok_or_else(|| {
                        Error::Invalid("--sample needs an explicit --seed".into())
                    })?;
                    match sample {
                        Sample::Circle => PointCloud::noisy_circle(*size, seed),
                        Sample::FigureEight => PointCloud::noisy_figure_eight(*size, seed),
                    }
                }
                (None, None) => return Err(Error::Invalid("give a CSV file or --sample".into())),
            };
            let f = filter(filter_name)?;
            let cover = IntervalCover::new(*intervals, *overlap)?;
            let m = mapper_completion(&pc, f.as_ref(), &cover, *epsilon)?;
            let h = m.homology();
            for w in &m.pullback.warnings {
                report.line(format!("warning: {w}"));
            }
            for p in &m.pullback.parts {
                report.line(format!(
                    "{}: [{:.4}, {:.4}] {} points",
                    p.name,
                    p.interval.0,
                    p.interval.1,
                    p.points.len()
                ));
            }
            report.line(format!("nerve betti: {:?}", h.nerve.betti_numbers()));
            report.line(format!(
                "component nerve betti: {:?}",
                h.component_nerve.betti_numbers()
            ));
            report.line(format!(
                "completion betti: {:?}",
                h.completion.betti_numbers()
            ));
            report.dot = Some(match emit {
                MapperEmit::Nerve => complex_to_dot(&m.nerve),
                MapperEmit::ComponentNerve => complex_to_dot(&m.component_nerve),
                MapperEmit::Completion => cw_to_dot(&m.completion_cw),
            });
            #[derive(Serialize)]
            struct Part<'a> {
                name: &'a str,
                interval: (f64, f64),
                points: Vec<&'a str>,
            }
            let parts: Vec<Part> = m
                .pullback
                .parts
                .iter()
                .map(|p| Part {
                    name: &p.name,
                    interval: p.interval,
                    points: p.points.iter().map(|&i| pc.ids()[i].as_str()).collect(),
                })
                .collect();
            report.set_result(&serde_json::json!({
                "filter": f.name(),
                "intervals": intervals,
                "overlap": overlap,
                "epsilon": epsilon,
                "parts": parts,
                "warnings": m.pullback.warnings,
                "nerve": m.nerve.to_json(),
                "component_nerve": m.component_nerve.to_json(),
                "completion": m.completion_cw.to_json(),
                "homology": h,
            }));
        }
        Command::Fixtures { .. } => unreachable!("handled before dispatch"),
    }
    Ok(())
}

fn collapse_status(report: &mut RunReport, outcome: &CollapseOutcome) {
    report.status = match outcome {
        CollapseOutcome::Found { .. } => ReportStatus::Certified,
        CollapseOutcome::Exhausted { nodes } => {
            report.line(format!("no collapse exists; {nodes} states searched"));
            ReportStatus::Refuted
        }
        CollapseOutcome::BudgetExhausted { nodes } => {
            report.line(format!("budget exhausted after {nodes} states"));
            ReportStatus::Unknown
        }
    };
    report.set_result(outcome);
}

enum Input {
    Poset(Poset),
    Complex(SimplicialComplex),
    Cw(RegularCWComplex),
}

/// Poset text uses `<`; JSON is told apart by its keys.
fn read_homological(text: &str, kind: InputKind) -> Result<Input, Error> {
    let kind = match kind {
        InputKind::Auto if text.trim_start().starts_with('{') => {
            let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            if v.get("facets").is_some() {
                InputKind::Complex
            } else if v.get("dim").is_some() {
                InputKind::Cw
            } else {
                InputKind::Poset
            }
        }
        InputKind::Auto => {
            let ordered = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or(""))
                .any(|l| l.split_whitespace().any(|t| t == "<"));
            if ordered {
                InputKind::Poset
            } else {
                InputKind::Complex
            }
        }
        k => k,
    };
    Ok(match kind {
        InputKind::Poset => Input::Poset(io::parse_poset(text)?),
        InputKind::Complex => Input::Complex(io::parse_complex(text)?),
        InputKind::Cw => Input::Cw(io::parse_cw(text)?),
        InputKind::Auto => unreachable!(),
    })
}

fn poset_dot(name: &str, p: &Poset) -> String {
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n");
    for id in p.ids() {
        out.push_str(&format!("  {id:?};\n"));
    }
    for (a, b) in p.hasse_edges() {
        out.push_str(&format!("  {a:?} -> {b:?};\n"));
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct BatchEntry {
    fixture: String,
    theorem: String,
    expected: String,
    status: ReportStatus,
    matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct BatchReport {
    command: &'static str,
    status: ReportStatus,
    fixtures: Vec<BatchEntry>,
}

/// Runs every fixture directory with a manifest under `dir` in parallel.
/// Exit code 0 when every status matches its manifest, 1 otherwise.
fn run_batch(
    dir: &Path,
    oracle: &TrivialityOracle,
    degree: Option<usize>,
    open_hull: bool,
    cli: &Cli,
) -> i32 {
    let mut dirs: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.join(fixtures::MANIFEST).is_file())
            .collect(),
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", dir.display());
            return 3;
        }
    };
    dirs.sort();
    let fixtures: Vec<BatchEntry> = dirs
        .par_iter()
        .map(|d| {
            let name = d
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            let manifest = match fixtures::read_manifest(d) {
                Ok(m) => m,
                Err(e) => {
                    return BatchEntry {
                        fixture: name,
                        theorem: String::new(),
                        expected: String::new(),
                        status: ReportStatus::Error,
                        matches: false,
                        error: Some(e.to_string()),
                    }
                }
            };
            let mut report = RunReport::new(format!("verify {}", manifest.theorem));
            let result = match verify::verifier(&manifest.theorem) {
                Some(v) => {
                    let ctx = Context {
                        oracle: oracle.clone(),
                        degree: degree.or(manifest.degree),
                        open_hull,
                    };
                    v.run(d, &ctx, &mut report)
                }
                None => Err(Error::Invalid(format!(
                    "unknown theorem `{}`",
                    manifest.theorem
                ))),
            };
            if let Err(e) = result {
                report.fail(&e);
            }
            let report = report.finalize();
            BatchEntry {
                fixture: name,
                theorem: manifest.theorem,
                matches: report.status.as_str() == manifest.expect,
                expected: manifest.expect,
                status: report.status,
                error: report.error.map(|e| e.message),
            }
        })
        .collect();
    let all = fixtures.iter().all(|f| f.matches);
    let batch = BatchReport {
        command: "verify --batch",
        status: if all {
            ReportStatus::Certified
        } else {
            ReportStatus::Refuted
        },
        fixtures,
    };
    let body = match cli.format {
        Format::Text => batch
            .fixtures
            .iter()
            .map(|f| {
                format!(
                    "{} {:28} {:16} {} (expected {})\n",
                    if f.matches { "ok  " } else { "FAIL" },
                    f.fixture,
                    f.theorem,
                    f.status.as_str(),
                    f.expected
                )
            })
            .collect(),
        _ => serde_json::to_string_pretty(&batch).expect("serializes") + "\n",
    };
    if let Err(e) = write_out(&body, cli.out.as_deref()) {
        eprintln!("error: {e}");
        return 3;
    }
    if all {
        0
    } else {
        1
    }
}

fn run_fixtures(action: &FixturesAction) -> i32 {
    match action {
        FixturesAction::List => {
            for f in fixtures::shipped() {
                match &f.manifest {
                    Some(m) => println!(
                        "{:28} {:16} {:10} {}",
                        f.name, m.theorem, m.expect, m.description
                    ),
                    None => println!("{:28} {:16} {:10} {}", f.name, "-", "-", f.description),
                }
            }
            0
        }
        FixturesAction::Write { dir } => match fixtures::write_all(dir) {
            Ok(paths) => {
                for p in paths {
                    println!("{}", p.display());
                }
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                3
            }
        },
        FixturesAction::Check { dir } => {
            let stale = fixtures::check_all(dir);
            for s in &stale {
                println!("stale: {s}");
            }
            i32::from(!stale.is_empty())
        }
    }
}
