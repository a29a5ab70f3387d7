//! Command-line front end: family canonicalization, symbolic volumes, ring
//! presentations, push-pull verification, Grossberg-Karshon checks, FFLV
//! builders, the full tower pipeline and figure emission.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed (the JSON witness
//! goes to stdout), 2 bad input.

mod figures;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use pushpull_core::gallery;
use pushpull_core::khp::{KhpRing, RingReport};
use pushpull_core::polytope::{ParamPolytope, ParamPolytopeJson};
use pushpull_core::pushpull::{trapezoid_truncation, verify_theorem_main, TruncationSpecJson};
use pushpull_core::rat::{parse_rat, Rat};
use pushpull_core::sample::{Sampler, DEFAULT_SEED};
use pushpull_core::tower::tower_report;
use pushpull_core::weyl::{
    dominant_vertex, gk_cube, verify_chevalley_pieri, verify_lemma_demazure,
    word_to_betas_type_a,
};
use pushpull_core::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "pushpull",
    about = "Exact push-pull polytope calculus and Khovanskii-Pukhlikov rings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a polytope-family JSON, canonicalize its inequalities and re-emit it
    Build {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the symbolic volume polynomial of a family
    Volume { input: PathBuf },
    /// Ring presentation, Hilbert function and annihilator report of a family
    Ring {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verify the projective-bundle theorem on a truncation spec
    PushpullVerify {
        /// Truncation-spec JSON; defaults to the built-in trapezoid example
        input: Option<PathBuf>,
        #[arg(long)]
        fail_fast: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Seeded Grossberg-Karshon cube checks in types A2/A3
    Gk {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build an FFLV polytope family from a weakly increasing weight list
    Fflv {
        /// Comma-separated weights, e.g. "0,1,2,2"
        weights: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the full five-step tower pipeline and emit its report
    Tower {
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit SVG/OFF figures of the two small worked Cayley-sum examples
    Figures {
        #[arg(long, default_value = "figures")]
        outdir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_family(path: &PathBuf) -> Result<ParamPolytope> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let js: ParamPolytopeJson = serde_json::from_str(&text).context("parsing polytope JSON")?;
    js.to_family().map_err(|e| anyhow!("{e}"))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build { input, output } => {
            let fam = read_family(&input)?;
            let (canon, removed) = fam.canonicalize().map_err(|e| anyhow!("{e}"))?;
            let js = ParamPolytopeJson::from(&canon);
            let mut text = serde_json::to_string_pretty(&js)?;
            text.push('\n');
            emit(&output, &text)?;
            if !removed.is_empty() {
                eprintln!("removed redundant inequalities at rows {removed:?}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Volume { input } => {
            let fam = read_family(&input)?;
            let vol = fam.volume_polynomial().map_err(|e| anyhow!("{e}"))?;
            println!("{vol}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Ring { input, output } => {
            let fam = read_family(&input)?;
            let vol = fam.volume_polynomial().map_err(|e| anyhow!("{e}"))?;
            // translation-like parameters never reach the volume polynomial;
            // build the ring over the variables that actually occur
            let occurring: Vec<&str> = fam
                .params
                .iter()
                .map(|s| s.as_str())
                .filter(|p| !vol.is_independent_of(p).unwrap_or(false))
                .collect();
            let vol = if occurring.len() == fam.params.len() {
                vol
            } else {
                vol.with_vars(&occurring).map_err(|e| anyhow!("{e}"))?
            };
            let ring = KhpRing::build(vol).map_err(|e| anyhow!("{e}"))?;
            let report = RingReport::new(&ring);
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            emit(&output, &text)?;
            eprintln!("{}", ring.presentation());
            Ok(ExitCode::SUCCESS)
        }
        Command::PushpullVerify {
            input,
            fail_fast,
            output,
        } => {
            let (spec, s_name) = match input {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    let js: TruncationSpecJson =
                        serde_json::from_str(&text).context("parsing truncation JSON")?;
                    js.to_spec().map_err(|e| anyhow!("{e}"))?
                }
                None => (trapezoid_truncation(), "s".to_string()),
            };
            let verification =
                verify_theorem_main(&spec, &s_name, fail_fast).map_err(|e| anyhow!("{e}"))?;
            let mut text = serde_json::to_string_pretty(&verification.report)?;
            text.push('\n');
            emit(&output, &text)?;
            Ok(if verification.report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Gk {
            samples,
            seed,
            output,
        } => {
            let report = gk_report(samples, seed)?;
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            emit(&output, &text)?;
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Fflv { weights, output } => {
            let ws: Result<Vec<Rat>> = weights
                .split(',')
                .map(|w| parse_rat(w.trim()).map_err(|e| anyhow!("{e}")))
                .collect();
            let fam = pushpull_core::fflv::fflv_polytope(&ws?).map_err(|e| anyhow!("{e}"))?;
            let js = ParamPolytopeJson::from(&fam);
            let mut text = serde_json::to_string_pretty(&js)?;
            text.push('\n');
            emit(&output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Tower {
            samples,
            seed,
            output,
        } => {
            let report = tower_report(samples, seed).map_err(|e| anyhow!("{e}"))?;
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            emit(&output, &text)?;
            for step in &report.steps {
                eprintln!(
                    "step {:?}: hilbert {:?} relations_ok={} routes_ok={}",
                    step.word,
                    step.hilbert,
                    step.relations_annihilate,
                    step.routes.as_ref().map_or(true, |r| r.hrep_equal
                        && r.fan_equal
                        && r.volume_equal),
                );
            }
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Figures { outdir } => {
            fs::create_dir_all(&outdir)
                .with_context(|| format!("creating {}", outdir.display()))?;
            let write = |name: &str, text: String| -> Result<()> {
                let path = outdir.join(name);
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                println!("wrote {}", path.display());
                Ok(())
            };
            // first worked example: triangle, triangle + segment, their Cayley sum
            let tri = gallery::unit_triangle();
            let seg = gallery::unit_vertical_segment();
            let q1 = tri.minkowski_sum(&seg).map_err(|e| anyhow!("{e}"))?;
            let delta1 = tri.cayley_sum(&q1).map_err(|e| anyhow!("{e}"))?;
            write("triangle_p.svg", figures::svg_polygon(&tri, "P")?)?;
            write("triangle_q.svg", figures::svg_polygon(&q1, "Q = P + I")?)?;
            write("triangle_cayley.off", figures::off_polytope(&delta1)?)?;
            // second worked example: trapezoid, pentagon, their Cayley sum
            let trap = gallery::trapezoid_family_ab()
                .instantiate(&[parse_rat("1").unwrap(), parse_rat("1").unwrap()])
                .map_err(|e| anyhow!("{e}"))?;
            let q2 = trap.minkowski_sum(&seg).map_err(|e| anyhow!("{e}"))?;
            let delta2 = trap.cayley_sum(&q2).map_err(|e| anyhow!("{e}"))?;
            write("trapezoid_p.svg", figures::svg_polygon(&trap, "P")?)?;
            write("trapezoid_q.svg", figures::svg_polygon(&q2, "Q = P + I")?)?;
            write("trapezoid_cayley.off", figures::off_polytope(&delta2)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

// ---------------------------------------------------------------------------
// Seeded Grossberg-Karshon report
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct GkReport {
    seed: u64,
    samples: usize,
    instances: Vec<GkInstance>,
    vertex_formula_checked: usize,
    lemma_checked: usize,
    chevalley_checked: usize,
    passed: bool,
}

#[derive(Serialize)]
struct GkInstance {
    rank: usize,
    word: Vec<usize>,
    lambda: Vec<String>,
    is_virtual: bool,
    vertex_formula_ok: Option<bool>,
    lemma_ok: Option<bool>,
    chevalley_ok: Option<bool>,
}

fn gk_report(samples: usize, seed: u64) -> Result<GkReport> {
    let mut sampler = Sampler::new(seed);
    let mut instances = Vec::new();
    let mut vertex_formula_checked = 0;
    let mut lemma_checked = 0;
    let mut chevalley_checked = 0;
    let mut passed = true;
    let mut produced = 0;
    while produced < samples {
        let rank = if sampler.index(2) == 0 { 2 } else { 3 };
        let len = 2 + sampler.index(rank);
        let word: Vec<usize> = (0..len).map(|_| 1 + sampler.index(rank)).collect();
        let betas = word_to_betas_type_a(rank, &word).map_err(|e| anyhow!("{e}"))?;
        let lambda = sampler.rat_vec(rank + 1, -2, 6);
        let cube = gk_cube(&betas, &lambda).map_err(|e| anyhow!("{e}"))?;
        let mut inst = GkInstance {
            rank,
            word: word.clone(),
            lambda: lambda.iter().map(pushpull_core::rat::fmt_rat).collect(),
            is_virtual: cube.virtual_flag,
            vertex_formula_ok: None,
            lemma_ok: None,
            chevalley_ok: None,
        };
        if !cube.virtual_flag {
            produced += 1;
            // closed-form vertex lies in the enumerated vertex set
            let member = cube.family.instantiate_ref().map_err(|e| anyhow!("{e}"))?;
            let dv = dominant_vertex(&betas, &lambda);
            let ok = member.vertices.contains(&dv);
            inst.vertex_formula_ok = Some(ok);
            passed &= ok;
            vertex_formula_checked += 1;
            // inductive lemma where its precondition holds
            match verify_lemma_demazure(&betas, &lambda) {
                Ok(ok) => {
                    inst.lemma_ok = Some(ok);
                    passed &= ok;
                    lemma_checked += 1;
                }
                // twisted or lower-dimensional cubes fail the precondition
                Err(CoreError::VirtualPolytope(_)) | Err(CoreError::Degenerate(_)) => {}
                Err(e) => return Err(anyhow!("{e}")),
            }
            // chevalley-pieri decomposition for full-dimensional cubes
            if member.is_full_dimensional() {
                let ok = verify_chevalley_pieri(&betas, &lambda).map_err(|e| anyhow!("{e}"))?;
                inst.chevalley_ok = Some(ok);
                passed &= ok;
                chevalley_checked += 1;
            }
        }
        instances.push(inst);
    }
    Ok(GkReport {
        seed,
        samples,
        instances,
        vertex_formula_checked,
        lemma_checked,
        chevalley_checked,
        passed,
    })
}
