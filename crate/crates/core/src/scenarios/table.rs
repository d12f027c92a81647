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

//! Fringe/flat classification over toggle configurations and coincidence
//! orders of the `N`-stage braced circuits.
//!
//! Stage 0 is the output interferometer (D10, D11, never removable); stage
//! `s ≥ 1` is the tap stage with detectors `D6`/`D7` carrying `s − 1` primes
//! and closing splitter `BS2` with `s − 1` primes. Every configuration feeds
//! the engineered NOON-N input and sweeps `φ_C`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::{engineered_noon, scan_many, Classification, Observable, Sweep};
use crate::circuit::presets::{stage_detectors, stage_toggle};
use crate::circuit::{braced_n, Couplers, PhaseAssignment};
use crate::error::Result;
use crate::measurement::DetectionPattern;

/// Which closing splitters are in place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Configuration {
    /// Every tap stage erased.
    AllErased,
    /// Only tap stage `s` keeps its which-path information.
    Distinguishing(usize),
    /// Stages `0..M` cooperate: tap stages `1..M` erased, the rest removed.
    Cooperating(usize),
}

impl Configuration {
    fn erased(&self, stage: usize) -> bool {
        match *self {
            _ if stage == 0 => true,
            Configuration::AllErased => true,
            Configuration::Distinguishing(s) => stage != s,
            Configuration::Cooperating(m) => stage < m,
        }
    }

    fn toggles(&self, stages: usize) -> BTreeSet<String> {
        (1..stages)
            .filter(|&s| self.erased(s))
            .filter_map(stage_toggle)
            .collect()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Configuration::AllErased => write!(f, "all erased"),
            Configuration::Distinguishing(s) => write!(f, "stage {s} distinguishing"),
            Configuration::Cooperating(m) => write!(f, "{m} cooperating"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Row {
    pub stages: usize,
    pub configuration: Configuration,
    pub toggles: Vec<String>,
    pub pattern: String,
    /// Number of photons the pattern asks for.
    pub order: usize,
    /// `true` for a full-order pattern probability, `false` for a lower-order
    /// correlation.
    pub full_order: bool,
    pub expected: Classification,
    pub classification: Classification,
    pub visibility: f64,
    pub spatial_frequency: f64,
}

impl Table1Row {
    pub fn agrees(&self) -> bool {
        self.expected == self.classification
    }
}

struct Probe {
    pattern: DetectionPattern,
    stages: Vec<usize>,
}

/// One click at the first detector of each of the stages `0..k`.
fn ladder(k: usize) -> Probe {
    Probe {
        pattern: DetectionPattern::new((0..k).map(|s| (stage_detectors(s)[0].clone(), 1))),
        stages: (0..k).collect(),
    }
}

/// `N − M + 1` photons at D10 plus one click on each cooperating tap stage.
fn cooperative(n: usize, m: usize) -> Probe {
    let mut counts = vec![(stage_detectors(0)[0].clone(), n - m + 1)];
    counts.extend((1..m).map(|s| (stage_detectors(s)[0].clone(), 1)));
    Probe {
        pattern: DetectionPattern::new(counts),
        stages: (0..m).collect(),
    }
}

/// Runs every configuration for `n` stages (3 ≤ n ≤ 5) and reports the
/// observed classification next to the expected one: fringes exactly for
/// full-order patterns whose clicked stages are all erased.
pub fn classify_table1(n: usize) -> Result<Vec<Table1Row>> {
    let circuit = braced_n(n, &Couplers::default())?;
    let input = engineered_noon(&circuit, n)?;
    let fixed = circuit
        .parameters()
        .iter()
        .fold(PhaseAssignment::new(), |p, name| p.with(name, 0.0));
    let sweep = Sweep::standard("phi_C");

    let mut configs = vec![Configuration::AllErased];
    configs.extend((1..n).map(Configuration::Distinguishing));
    configs.extend((1..n).map(Configuration::Cooperating));

    let mut rows = Vec::new();
    for config in configs {
        let toggles = config.toggles(n);
        let mut probes: Vec<Probe> = (1..=n).map(ladder).collect();
        if let Configuration::Cooperating(m) = config {
            probes.push(cooperative(n, m));
        }
        let observables = probes
            .iter()
            .map(|p| {
                let mode_pattern = p.pattern.resolve(&circuit)?;
                Ok(if p.pattern.total() == n {
                    Observable::Pattern(mode_pattern)
                } else {
                    Observable::Correlation(mode_pattern)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let scans = scan_many(&circuit, &toggles, &input, &observables, &sweep, &fixed)?;
        for (probe, scan) in probes.iter().zip(scans) {
            let order = probe.pattern.total();
            let fringes = order == n && probe.stages.iter().all(|&s| config.erased(s));
            rows.push(Table1Row {
                stages: n,
                configuration: config,
                toggles: toggles.iter().cloned().collect(),
                pattern: probe.pattern.to_string(),
                order,
                full_order: order == n,
                expected: if fringes {
                    Classification::Fringes
                } else {
                    Classification::Flat
                },
                classification: Classification::of(&scan.fit),
                visibility: scan.fit.visibility,
                spatial_frequency: scan.fit.spatial_frequency,
            });
        }
    }
    Ok(rows)
}
