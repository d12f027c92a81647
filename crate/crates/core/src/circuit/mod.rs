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

//! Circuits: ordered optical elements, detectors, and delayed-choice toggles.
//!
//! Mode indices follow the port labels used throughout the crate: `0`, `1`
//! are the inputs, `6`, `7` the inner tap detectors, `10`, `11` the outer
//! detectors, and `2`, `3`, `8`, `9` the interferometer arms. See [`presets`]
//! for the full table.

mod parse;
pub mod presets;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::optics::{bs_block, swap_block, BeamSplitterCoeffs, ModeUnitary};

pub use parse::{format_complex, parse_circuit, parse_complex};
pub use presets::{braced_n, fig1, fig2, fig3, preset, Couplers};

#[derive(Clone, Debug, PartialEq)]
pub enum ElementKind {
    BeamSplitter {
        modes: [usize; 2],
        coeffs: BeamSplitterCoeffs,
    },
    Phase {
        mode: usize,
        param: String,
    },
    /// Mode exchange; models mirrors and the routing between labelled ports.
    Swap {
        modes: [usize; 2],
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircuitElement {
    pub name: String,
    pub kind: ElementKind,
}

impl CircuitElement {
    pub fn beam_splitter(name: &str, a: usize, b: usize, coeffs: BeamSplitterCoeffs) -> Self {
        CircuitElement {
            name: name.to_string(),
            kind: ElementKind::BeamSplitter {
                modes: [a, b],
                coeffs,
            },
        }
    }

    pub fn phase(name: &str, mode: usize, param: &str) -> Self {
        CircuitElement {
            name: name.to_string(),
            kind: ElementKind::Phase {
                mode,
                param: param.to_string(),
            },
        }
    }

    pub fn swap(name: &str, a: usize, b: usize) -> Self {
        CircuitElement {
            name: name.to_string(),
            kind: ElementKind::Swap { modes: [a, b] },
        }
    }

    pub fn modes(&self) -> Vec<usize> {
        match &self.kind {
            ElementKind::BeamSplitter { modes, .. } | ElementKind::Swap { modes } => modes.to_vec(),
            ElementKind::Phase { mode, .. } => vec![*mode],
        }
    }
}

/// Named phase values in radians.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PhaseAssignment {
    values: BTreeMap<String, f64>,
}

impl PhaseAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        PhaseAssignment {
            values: pairs.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }

    /// Parses `name=value,name=value`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::parse(1, format!("expected name=value, got `{item}`")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::parse(1, format!("bad phase value `{value}`")))?;
            values.insert(name.trim().to_string(), value);
        }
        Ok(PhaseAssignment { values })
    }

    pub fn set(&mut self, name: &str, value: f64) -> &mut Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

/// A validated circuit. Construct with [`Circuit::new`], [`parse_circuit`], or
/// one of the [`presets`].
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    mode_count: usize,
    elements: Vec<CircuitElement>,
    detectors: Vec<(String, usize)>,
    toggles: BTreeSet<String>,
}

impl Circuit {
    pub fn new(
        mode_count: usize,
        elements: Vec<CircuitElement>,
        detectors: Vec<(String, usize)>,
        toggles: BTreeSet<String>,
    ) -> Result<Self> {
        if mode_count == 0 {
            return Err(Error::InvalidCircuit("mode count must be positive".into()));
        }
        let mut names = BTreeSet::new();
        for el in &elements {
            if !names.insert(el.name.as_str()) {
                return Err(Error::InvalidCircuit(format!(
                    "duplicate element name `{}`",
                    el.name
                )));
            }
            for mode in el.modes() {
                if mode >= mode_count {
                    return Err(Error::ModeOutOfRange { mode, mode_count });
                }
            }
            if let ElementKind::BeamSplitter { modes, .. } | ElementKind::Swap { modes } = &el.kind
            {
                if modes[0] == modes[1] {
                    return Err(Error::InvalidCircuit(format!(
                        "`{}` acts on mode {} twice",
                        el.name, modes[0]
                    )));
                }
            }
        }
        let mut det_names = BTreeSet::new();
        let mut det_modes = BTreeSet::new();
        for (name, mode) in &detectors {
            if !det_names.insert(name.as_str()) {
                return Err(Error::InvalidCircuit(format!(
                    "duplicate detector `{name}`"
                )));
            }
            if *mode >= mode_count {
                return Err(Error::ModeOutOfRange {
                    mode: *mode,
                    mode_count,
                });
            }
            if !det_modes.insert(*mode) {
                return Err(Error::InvalidCircuit(format!(
                    "detector `{name}` shares mode {mode} with another detector"
                )));
            }
        }
        for t in &toggles {
            if !names.contains(t.as_str()) {
                return Err(Error::UnknownToggle(t.clone()));
            }
        }
        Ok(Circuit {
            mode_count,
            elements,
            detectors,
            toggles,
        })
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn elements(&self) -> &[CircuitElement] {
        &self.elements
    }

    pub fn element(&self, name: &str) -> Option<&CircuitElement> {
        self.elements.iter().find(|e| e.name == name)
    }

    /// Detectors in declaration order.
    pub fn detectors(&self) -> &[(String, usize)] {
        &self.detectors
    }

    pub fn detector_mode(&self, name: &str) -> Option<usize> {
        self.detectors
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| *m)
    }

    pub fn detector_modes(&self) -> Vec<usize> {
        self.detectors.iter().map(|(_, m)| *m).collect()
    }

    pub fn toggles(&self) -> &BTreeSet<String> {
        &self.toggles
    }

    /// Phase parameters referenced by any element.
    pub fn parameters(&self) -> BTreeSet<String> {
        self.elements
            .iter()
            .filter_map(|e| match &e.kind {
                ElementKind::Phase { param, .. } => Some(param.clone()),
                _ => None,
            })
            .collect()
    }

    fn is_enabled(&self, el: &CircuitElement, enabled: &BTreeSet<String>) -> bool {
        !self.toggles.contains(&el.name) || enabled.contains(&el.name)
    }

    /// Product of the element unitaries in propagation order. Toggleable
    /// elements not listed in `enabled_toggles` are left out (identity).
    pub fn compile(
        &self,
        phases: &PhaseAssignment,
        enabled_toggles: &BTreeSet<String>,
    ) -> Result<ModeUnitary> {
        if let Some(t) = enabled_toggles.iter().find(|t| !self.toggles.contains(*t)) {
            return Err(Error::UnknownToggle(t.clone()));
        }
        let mut u = ModeUnitary::identity(self.mode_count);
        for el in self
            .elements
            .iter()
            .filter(|e| self.is_enabled(e, enabled_toggles))
        {
            match &el.kind {
                ElementKind::BeamSplitter { modes, coeffs } => {
                    u.apply_two_mode(modes[0], modes[1], bs_block(*coeffs))
                }
                ElementKind::Swap { modes } => u.apply_two_mode(modes[0], modes[1], swap_block()),
                ElementKind::Phase { mode, param } => {
                    let phi = phases
                        .get(param)
                        .ok_or_else(|| Error::MissingPhase(param.clone()))?;
                    u.apply_phase(*mode, phi);
                }
            }
        }
        Ok(u)
    }

    /// Compiles with every toggle enabled.
    pub fn compile_all(&self, phases: &PhaseAssignment) -> Result<ModeUnitary> {
        self.compile(phases, &self.toggles)
    }

    /// The same circuit restricted to the elements after `name`.
    pub fn after(&self, name: &str) -> Result<Circuit> {
        let idx = self
            .elements
            .iter()
            .position(|e| e.name == name)
            .ok_or_else(|| Error::InvalidCircuit(format!("no element `{name}`")))?;
        let elements = self.elements[idx + 1..].to_vec();
        let toggles = self
            .toggles
            .iter()
            .filter(|t| elements.iter().any(|e| &e.name == *t))
            .cloned()
            .collect();
        Circuit::new(self.mode_count, elements, self.detectors.clone(), toggles)
    }

    /// A copy with the elements permuted; `order` lists element names.
    pub fn reordered(&self, order: &[&str]) -> Result<Circuit> {
        let elements = order
            .iter()
            .map(|n| {
                self.element(n)
                    .cloned()
                    .ok_or_else(|| Error::InvalidCircuit(format!("no element `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if elements.len() != self.elements.len() {
            return Err(Error::InvalidCircuit(
                "reordering must list every element once".into(),
            ));
        }
        Circuit::new(
            self.mode_count,
            elements,
            self.detectors.clone(),
            self.toggles.clone(),
        )
    }

    /// Renders the circuit in the `.mzc` text format.
    pub fn to_mzc(&self) -> String {
        let mut out = format!("modes {}\n", self.mode_count);
        for el in &self.elements {
            let line = match &el.kind {
                ElementKind::BeamSplitter { modes, coeffs } => format!(
                    "bs {} {} {} T={} R={}{}",
                    el.name,
                    modes[0],
                    modes[1],
                    format_complex(coeffs.transmission()),
                    format_complex(coeffs.reflection()),
                    if self.toggles.contains(&el.name) {
                        " toggle"
                    } else {
                        ""
                    }
                ),
                ElementKind::Phase { mode, param } => {
                    format!("phase {} {} {}", el.name, mode, param)
                }
                ElementKind::Swap { modes } => {
                    format!("swap {} {} {}", el.name, modes[0], modes[1])
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        for (name, mode) in &self.detectors {
            out.push_str(&format!("detect {name} {mode}\n"));
        }
        out
    }
}
