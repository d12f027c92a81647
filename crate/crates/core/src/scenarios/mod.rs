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

//! Executable experiments: phase sweeps with fringe fits, engineered inputs,
//! the triple coincidence, and the multi-stage classification.

mod fit;
mod table;

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::{Circuit, ElementKind, PhaseAssignment};
use crate::error::{Error, Result};
use crate::fock::{FockState, OccupationVector};
use crate::measurement::{correlation, pattern_probability, DetectionPattern, ModePattern};
use crate::optics::{bs_unitary, evolve, BeamSplitterCoeffs};

pub use fit::{fit_fringe, FringeFit, FREQUENCY_CANDIDATES, MAX_RELATIVE_RESIDUAL, ZERO_SCAN};
pub use table::{classify_table1, Configuration, Table1Row};

pub const MIN_SCAN_SAMPLES: usize = 64;

/// Fringes above this visibility, flat below [`FLAT_VISIBILITY`].
pub const FRINGE_VISIBILITY: f64 = 0.9;
pub const FLAT_VISIBILITY: f64 = 0.01;

/// Uniform samples of one phase parameter over `[start, end)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sweep {
    pub parameter: String,
    pub start: f64,
    pub end: f64,
    pub samples: usize,
}

impl Sweep {
    /// `[0, 4π)` with the minimum sample count.
    pub fn standard(parameter: &str) -> Self {
        Sweep {
            parameter: parameter.to_string(),
            start: 0.0,
            end: 4.0 * PI,
            samples: MIN_SCAN_SAMPLES,
        }
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    /// Parses `param:start:end:n`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let [parameter, start, end, samples] = parts[..] else {
            return Err(Error::InvalidSweep(format!(
                "`{text}` is not param:start:end:n"
            )));
        };
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidSweep(format!("bad number `{s}`")))
        };
        Ok(Sweep {
            parameter: parameter.trim().to_string(),
            start: num(start)?,
            end: num(end)?,
            samples: samples
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSweep(format!("bad sample count `{samples}`")))?,
        })
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.end - self.start) / self.samples as f64;
        (0..self.samples)
            .map(|i| self.start + step * i as f64)
            .collect()
    }

    fn check(&self, circuit: &Circuit) -> Result<()> {
        if self.samples < MIN_SCAN_SAMPLES {
            return Err(Error::InvalidSweep(format!(
                "{} samples requested, at least {MIN_SCAN_SAMPLES} needed",
                self.samples
            )));
        }
        if self.end.partial_cmp(&self.start) != Some(std::cmp::Ordering::Greater)
            || !self.start.is_finite()
            || !self.end.is_finite()
        {
            return Err(Error::InvalidSweep("empty or non-finite range".into()));
        }
        if !circuit.parameters().contains(&self.parameter) {
            return Err(Error::InvalidSweep(format!(
                "circuit has no phase parameter `{}`",
                self.parameter
            )));
        }
        Ok(())
    }
}

/// A scalar read off the output state.
#[derive(Clone, Debug, PartialEq)]
pub enum Observable {
    /// Probability of a detection pattern.
    Pattern(ModePattern),
    /// Normally ordered correlation of the pattern's counts.
    Correlation(ModePattern),
    /// Squared overlap with a fixed state.
    Projection(FockState),
}

impl Observable {
    pub fn evaluate(&self, state: &FockState) -> Result<f64> {
        match self {
            Observable::Pattern(p) => Ok(pattern_probability(state, p)),
            Observable::Correlation(p) => Ok(correlation(state, p)),
            Observable::Projection(s) => crate::measurement::projected_probability(state, s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FringeScan {
    pub parameter: String,
    /// `(phase, value)` in sweep order.
    pub samples: Vec<(f64, f64)>,
    pub fit: FringeFit,
}

impl FringeScan {
    pub fn max_deviation_from(&self, value: f64) -> f64 {
        self.samples
            .iter()
            .map(|s| (s.1 - value).abs())
            .fold(0.0, f64::max)
    }

    /// CSV with `# ` comment lines, then `swept_value,probability` rows.
    pub fn to_csv(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        out.push_str("swept_value,probability\n");
        for (x, y) in &self.samples {
            let _ = writeln!(out, "{x},{y}");
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Fringes,
    Flat,
    /// Neither clearly fringing nor flat; never expected in these circuits.
    Partial,
}

impl Classification {
    pub fn of(fit: &FringeFit) -> Self {
        if fit.visibility > FRINGE_VISIBILITY {
            Classification::Fringes
        } else if fit.visibility < FLAT_VISIBILITY {
            Classification::Flat
        } else {
            Classification::Partial
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub toggles: Vec<String>,
    pub pattern: String,
    pub scan: FringeScan,
    pub classification: Classification,
    pub which_path_available: bool,
}

impl ScenarioReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Evolves `input` once per sweep point and evaluates every observable on the
/// same output. Samples are computed in parallel and returned in sweep order,
/// one `(phase, value)` series per observable.
pub fn sample_many(
    circuit: &Circuit,
    toggles: &BTreeSet<String>,
    input: &FockState,
    observables: &[Observable],
    sweep: &Sweep,
    fixed: &PhaseAssignment,
) -> Result<Vec<Vec<(f64, f64)>>> {
    sweep.check(circuit)?;
    let rows = sweep
        .points()
        .into_par_iter()
        .map(|phi| {
            let phases = fixed.clone().with(&sweep.parameter, phi);
            let out = evolve(input, &circuit.compile(&phases, toggles)?)?;
            observables
                .iter()
                .map(|o| o.evaluate(&out))
                .collect::<Result<Vec<f64>>>()
                .map(|v| (phi, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..observables.len())
        .map(|k| rows.iter().map(|(phi, v)| (*phi, v[k])).collect())
        .collect())
}

/// [`sample_many`] followed by a fringe fit of every series.
pub fn scan_many(
    circuit: &Circuit,
    toggles: &BTreeSet<String>,
    input: &FockState,
    observables: &[Observable],
    sweep: &Sweep,
    fixed: &PhaseAssignment,
) -> Result<Vec<FringeScan>> {
    sample_many(circuit, toggles, input, observables, sweep, fixed)?
        .into_iter()
        .map(|samples| {
            Ok(FringeScan {
                parameter: sweep.parameter.clone(),
                fit: fit_fringe(&samples)?,
                samples,
            })
        })
        .collect()
}

/// Sweeps one phase and records a pattern probability at each point.
pub fn run_scan(
    circuit: &Circuit,
    toggles: &BTreeSet<String>,
    input: &FockState,
    pattern: &DetectionPattern,
    sweep: &Sweep,
    fixed: &PhaseAssignment,
) -> Result<FringeScan> {
    let obs = Observable::Pattern(pattern.resolve(circuit)?);
    let mut scans = scan_many(circuit, toggles, input, &[obs], sweep, fixed)?;
    Ok(scans.remove(0))
}

/// [`run_scan`] wrapped in a report.
pub fn report(
    scenario: &str,
    circuit: &Circuit,
    toggles: &BTreeSet<String>,
    input: &FockState,
    pattern: &DetectionPattern,
    sweep: &Sweep,
    fixed: &PhaseAssignment,
) -> Result<ScenarioReport> {
    let scan = run_scan(circuit, toggles, input, pattern, sweep, fixed)?;
    Ok(ScenarioReport {
        scenario: scenario.to_string(),
        toggles: toggles.iter().cloned().collect(),
        pattern: pattern.to_string(),
        classification: Classification::of(&scan.fit),
        which_path_available: toggles.len() < circuit.toggles().len(),
        scan,
    })
}

/// `|1⟩` in each of the first two modes.
pub fn one_one(mode_count: usize) -> Result<FockState> {
    FockState::basis(mode_count, &[(0, 1), (1, 1)])
}

/// `(|N,0⟩ + |0,N⟩)/√2` on modes `a`, `b`.
pub fn noon_target(mode_count: usize, n: usize, a: usize, b: usize) -> Result<FockState> {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    FockState::from_sparse_terms(mode_count, &[(&[(a, n)], h), (&[(b, n)], h)])
}

fn input_splitter(circuit: &Circuit) -> Result<([usize; 2], BeamSplitterCoeffs)> {
    match circuit.element("BS1").map(|e| &e.kind) {
        Some(ElementKind::BeamSplitter { modes, coeffs }) => Ok((*modes, *coeffs)),
        _ => Err(Error::InvalidCircuit(
            "circuit has no beam splitter `BS1`".into(),
        )),
    }
}

/// The input that BS1 turns into `target`: `target` evolved by BS1's inverse.
/// `target` must live on BS1's two modes.
pub fn engineered_input(circuit: &Circuit, target: &FockState) -> Result<FockState> {
    let ([a, b], coeffs) = input_splitter(circuit)?;
    if target.mode_count() != circuit.mode_count() {
        return Err(Error::Dimension {
            expected: circuit.mode_count(),
            found: target.mode_count(),
        });
    }
    let outside = |occ: &OccupationVector| occ.total() != occ.get(a) + occ.get(b);
    if target.iter().any(|(occ, _)| outside(occ)) {
        return Err(Error::WrongModes(a, b));
    }
    let inverse = bs_unitary(coeffs, a, b, circuit.mode_count())?.adjoint();
    evolve(target, &inverse)
}

/// Engineered input producing a NOON state with `n` photons behind BS1.
pub fn engineered_noon(circuit: &Circuit, n: usize) -> Result<FockState> {
    let ([a, b], _) = input_splitter(circuit)?;
    engineered_input(circuit, &noon_target(circuit.mode_count(), n, a, b)?)
}

/// Engineered input producing `|na, nb⟩` behind BS1.
pub fn engineered_fock(circuit: &Circuit, na: usize, nb: usize) -> Result<FockState> {
    let ([a, b], _) = input_splitter(circuit)?;
    engineered_input(
        circuit,
        &FockState::basis(circuit.mode_count(), &[(a, na), (b, nb)])?,
    )
}

/// The three-fold coincidence `{D6p, D6, D10}` for the engineered NOON-3
/// input.
pub fn run_triple(
    circuit: &Circuit,
    toggles: &BTreeSet<String>,
    phases: &PhaseAssignment,
) -> Result<f64> {
    let input = engineered_noon(circuit, 3)?;
    let pattern = DetectionPattern::new([("D6p", 1), ("D6", 1), ("D10", 1)]).resolve(circuit)?;
    let out = evolve(&input, &circuit.compile(phases, toggles)?)?;
    Ok(pattern_probability(&out, &pattern))
}

/// Closed form of [`run_triple`] with both closing splitters balanced and
/// enabled: `(3/4)|T1 T1'² R1 R1'|² (1 + sin(3φ_C − φ_B − φ_S − φ_S'))`.
pub fn triple_closed_form(
    inner: BeamSplitterCoeffs,
    outer: BeamSplitterCoeffs,
    phases: &PhaseAssignment,
) -> Result<f64> {
    let get = |p: &str| {
        phases
            .get(p)
            .ok_or_else(|| Error::MissingPhase(p.to_string()))
    };
    let arg = 3.0 * get("phi_C")? - get("phi_B")? - get("phi_S")? - get("phi_Sp")?;
    let w = (inner.transmission()
        * outer.transmission().powi(2)
        * inner.reflection()
        * outer.reflection())
    .norm_sqr();
    Ok(0.75 * w * (1.0 + arg.sin()))
}

/// Moves the closing splitter BS2 and its delay behind every other element:
/// the erasure decision is taken after the interfering photon has been
/// detected. On disjoint modes this cannot change any outcome.
pub fn delayed_choice(circuit: &Circuit) -> Result<Circuit> {
    let late = ["PS", "BS2"];
    let mut order: Vec<&str> = circuit
        .elements()
        .iter()
        .map(|e| e.name.as_str())
        .filter(|n| !late.contains(n))
        .collect();
    for name in late {
        if circuit.element(name).is_none() {
            return Err(Error::InvalidCircuit(format!("no element `{name}`")));
        }
        order.push(name);
    }
    circuit.reordered(&order)
}
