// Copyright 2026 The mzsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! `mzsim`: run interferometer presets or `.mzc` circuits from the command
//! line.

mod verify;

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};
use mzsim_core::circuit::{parse_circuit, preset, Circuit, PhaseAssignment};
use mzsim_core::measurement::pattern_probability;
use mzsim_core::optics::evolve;
use mzsim_core::scenarios::{
    engineered_fock, engineered_noon, fit_fringe, one_one, sample_many, Classification, Observable,
    Sweep,
};
use mzsim_core::{DetectionPattern, Error, FockState};
use serde_json::json;

const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Simulate photons through braced Mach-Zehnder interferometers.
///
/// Toggleable elements (the closing beam splitters) are left out unless named
/// in --toggles. Phase parameters not given in --phases are 0. Phases are in
/// radians.
#[derive(Debug, Parser)]
#[command(name = "mzsim", version)]
#[command(group(ArgGroup::new("source").args(["preset", "circuit"])))]
#[command(group(ArgGroup::new("mode").args(["sweep", "verify"])))]
struct Cli {
    /// Built-in circuit: fig1, fig2, fig3 or braced_n(N) with N in 3..=5.
    #[arg(long)]
    preset: Option<String>,

    /// Circuit file in the .mzc format.
    #[arg(long, value_name = "FILE")]
    circuit: Option<String>,

    /// Input state: one-one, engineered-noon:N, engineered-fock:A,B or
    /// json:<path>.
    #[arg(long, default_value = "one-one")]
    input: String,

    /// Comma-separated toggleable elements to insert, or `all`.
    #[arg(long, value_name = "NAMES")]
    toggles: Option<String>,

    /// Detection pattern, e.g. D10:1,D11:1.
    #[arg(long)]
    pattern: Option<String>,

    /// Only constrain the listed detectors (default: all others must stay dark).
    #[arg(long)]
    non_exclusive: bool,

    /// Sweep one phase: param:start:end:samples (at least 64 samples).
    #[arg(long, value_name = "SPEC")]
    sweep: Option<String>,

    /// Fixed phases: name=value,...
    #[arg(long, value_name = "LIST")]
    phases: Option<String>,

    #[arg(long, value_enum, default_value = "csv")]
    format: Format,

    /// Run the built-in golden checks and print a summary table.
    #[arg(long)]
    verify: bool,

    /// Accepted for reproducibility records; the simulation is deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_PARSE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn load_circuit(cli: &Cli) -> Result<(String, Circuit), Failure> {
    match (&cli.preset, &cli.circuit) {
        (Some(name), None) => Ok((format!("preset {name}"), preset(name)?)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {path}: {e}")))?;
            let circuit = parse_circuit(&text).map_err(|e| Failure {
                code: EXIT_PARSE,
                message: format!("{path}: {e}"),
            })?;
            Ok((format!("circuit {path}"), circuit))
        }
        _ => Err(usage("exactly one of --preset or --circuit is required")),
    }
}

fn load_input(spec: &str, circuit: &Circuit) -> Result<FockState, Failure> {
    let bad = || usage(format!("unrecognised --input `{spec}`"));
    if spec == "one-one" {
        return Ok(one_one(circuit.mode_count())?);
    }
    if let Some(n) = spec.strip_prefix("engineered-noon:") {
        let n: usize = n.parse().map_err(|_| bad())?;
        return Ok(engineered_noon(circuit, n)?);
    }
    if let Some(ab) = spec.strip_prefix("engineered-fock:") {
        let (a, b) = ab.split_once(',').ok_or_else(bad)?;
        let (a, b) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
        return Ok(engineered_fock(circuit, a, b)?);
    }
    if let Some(path) = spec.strip_prefix("json:") {
        let text =
            std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
        let state = FockState::from_json(&text).map_err(|e| Failure {
            code: EXIT_PARSE,
            message: format!("{path}: {e}"),
        })?;
        if state.mode_count() != circuit.mode_count() {
            return Err(Error::Dimension {
                expected: circuit.mode_count(),
                found: state.mode_count(),
            }
            .into());
        }
        return Ok(state.normalize()?);
    }
    Err(bad())
}

fn load_toggles(spec: Option<&str>, circuit: &Circuit) -> Result<BTreeSet<String>, Failure> {
    match spec.map(str::trim) {
        None | Some("") | Some("none") => Ok(BTreeSet::new()),
        Some("all") => Ok(circuit.toggles().clone()),
        Some(list) => {
            let names: BTreeSet<String> = list.split(',').map(|s| s.trim().to_string()).collect();
            if let Some(t) = names.iter().find(|t| !circuit.toggles().contains(*t)) {
                return Err(Error::UnknownToggle(t.clone()).into());
            }
            Ok(names)
        }
    }
}

fn load_phases(spec: Option<&str>, circuit: &Circuit) -> Result<PhaseAssignment, Failure> {
    let given = match spec {
        Some(text) => PhaseAssignment::parse(text).map_err(|e| usage(e.to_string()))?,
        None => PhaseAssignment::new(),
    };
    let known = circuit.parameters();
    if let Some((name, _)) = given.iter().find(|(n, _)| !known.contains(*n)) {
        return Err(usage(format!("circuit has no phase parameter `{name}`")));
    }
    Ok(known
        .iter()
        .fold(given.clone(), |p, name| match given.get(name) {
            Some(_) => p,
            None => p.with(name, 0.0),
        }))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let (source, circuit) = load_circuit(cli)?;
    let input = load_input(&cli.input, &circuit)?;
    let toggles = load_toggles(cli.toggles.as_deref(), &circuit)?;
    let phases = load_phases(cli.phases.as_deref(), &circuit)?;
    let pattern_text = cli
        .pattern
        .as_deref()
        .ok_or_else(|| usage("--pattern is required"))?;
    let mut pattern = DetectionPattern::parse(pattern_text)?;
    if cli.non_exclusive {
        pattern = pattern.non_exclusive();
    }
    let resolved = pattern.resolve(&circuit)?;
    let toggle_list: Vec<&str> = toggles.iter().map(String::as_str).collect();
    let phase_list: Vec<String> = phases.iter().map(|(k, v)| format!("{k}={v}")).collect();

    let Some(sweep_spec) = &cli.sweep else {
        let u = circuit.compile(&phases, &toggles)?;
        let p = pattern_probability(&evolve(&input, &u)?, &resolved);
        match cli.format {
            Format::Csv => println!("{p}"),
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "source": source,
                    "input": cli.input,
                    "toggles": toggle_list,
                    "phases": phases.iter().collect::<std::collections::BTreeMap<_, _>>(),
                    "pattern": pattern.to_string(),
                    "probability": p,
                }))
                .expect("json value serializes")
            ),
        }
        return Ok(());
    };

    let sweep = Sweep::parse(sweep_spec)?;
    let samples = sample_many(
        &circuit,
        &toggles,
        &input,
        &[Observable::Pattern(resolved)],
        &sweep,
        &phases,
    )?
    .remove(0);
    let fit = fit_fringe(&samples);
    match cli.format {
        Format::Csv => {
            println!("# {source}");
            println!("# input {}", cli.input);
            println!(
                "# toggles {}",
                if toggle_list.is_empty() {
                    "none".to_string()
                } else {
                    toggle_list.join(",")
                }
            );
            println!("# pattern {pattern}");
            println!(
                "# sweep {} over [{}, {}) with {} samples",
                sweep.parameter, sweep.start, sweep.end, sweep.samples
            );
            println!("# fixed {}", phase_list.join(","));
            match &fit {
                Ok(f) => println!(
                    "# fit mean={} amplitude={} frequency={} offset={} visibility={}",
                    f.mean, f.amplitude, f.spatial_frequency, f.phase_offset, f.visibility
                ),
                Err(e) => println!("# fit unavailable: {e}"),
            }
            println!("swept_value,probability");
            for (x, y) in &samples {
                println!("{x},{y}");
            }
        }
        Format::Json => {
            let (fit_json, class) = match &fit {
                Ok(f) => (json!(f), json!(Classification::of(f))),
                Err(e) => (json!({ "error": e.to_string() }), json!(null)),
            };
            let value = json!({
                "source": source,
                "input": cli.input,
                "toggles": toggle_list,
                "pattern": pattern.to_string(),
                "sweep": sweep,
                "fixed": phases.iter().collect::<std::collections::BTreeMap<_, _>>(),
                "samples": samples,
                "fit": fit_json,
                "classification": class,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("json value serializes")
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if cli.verify {
        let report = verify::run_all();
        print!("{}", verify::render(&report));
        return if report.iter().all(|c| c.pass) {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(EXIT_VERIFY)
        };
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("mzsim: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
