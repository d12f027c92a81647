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

//! Built-in braced Mach-Zehnder topologies.
//!
//! Mode table (index: role):
//!
//! | mode | role |
//! |------|------|
//! | 0, 1 | inputs of BS1 |
//! | 2, 3 | upper/lower arm entering the inner tap stage (BS4, BS5) |
//! | 4, 5 | unused, always vacuum |
//! | 6, 7 | inner tap detectors D6, D7 (BS5 and BS4 reflections) |
//! | 8, 9 | upper/lower arm after the taps, into BS3 |
//! | 10, 11 | outer detectors D10, D11 |
//! | 12 + 4(s-1) + {0,1,2,3} | stage `s` ≥ 1 (primes): arms 2⁽ˢ⁾, 3⁽ˢ⁾ and detectors 6⁽ˢ⁾, 7⁽ˢ⁾ |
//!
//! Beam splitters act in place on their two modes; `swap` elements route the
//! transmitted arms onto the next labels. `φ_C` sits on the upper arm right
//! after BS1 and is seen by every photon in that arm. Each tap stage `s`
//! carries `φ_S` (with `s` primes) on its lower reflected arm and a removable
//! closing splitter BS2 (with `s` primes).
//!
//! Element names use a `p` per prime: `BS2p`, `phi_Sp`, `D6p`, `BS4pp`.

use std::collections::BTreeSet;

use super::{Circuit, CircuitElement};
use crate::error::{Error, Result};
use crate::optics::BeamSplitterCoeffs;

/// Splitter coefficients for a preset.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Couplers {
    /// BS1, BS2, BS3 and every outer BS2; balanced by default.
    pub main: BeamSplitterCoeffs,
    /// Tap coefficients per stage: `taps[0]` for BS4/BS5, `taps[1]` for
    /// BS4p/BS5p, and so on. Missing stages default to balanced.
    pub taps: Vec<BeamSplitterCoeffs>,
}

impl Couplers {
    pub fn with_taps(taps: Vec<BeamSplitterCoeffs>) -> Self {
        Couplers {
            taps,
            ..Self::default()
        }
    }

    fn tap(&self, stage: usize) -> BeamSplitterCoeffs {
        self.taps.get(stage).copied().unwrap_or_default()
    }
}

pub const MIN_STAGES: usize = 3;
pub const MAX_STAGES: usize = 5;

fn primes(stage: usize) -> String {
    "p".repeat(stage)
}

fn stage_modes(stage: usize) -> [usize; 4] {
    if stage == 0 {
        [2, 3, 6, 7]
    } else {
        let base = 12 + 4 * (stage - 1);
        [base, base + 1, base + 2, base + 3]
    }
}

/// Detector names for stage `s`: `(D10, D11)` for the output stage is stage
/// index 0 in [`stage_detectors`]; tap stages follow from 1.
pub fn stage_detectors(stage: usize) -> [String; 2] {
    if stage == 0 {
        ["D10".into(), "D11".into()]
    } else {
        let p = primes(stage - 1);
        [format!("D6{p}"), format!("D7{p}")]
    }
}

/// Name of the removable splitter closing tap stage `s ≥ 1` (same indexing as
/// [`stage_detectors`]).
pub fn stage_toggle(stage: usize) -> Option<String> {
    (stage > 0).then(|| format!("BS2{}", primes(stage - 1)))
}

/// Builds a braced circuit with `tap_stages` tap stages; the inner one may
/// omit its closing splitter (the which-path layout).
fn build(tap_stages: usize, inner_closed: bool, couplers: &Couplers) -> Result<Circuit> {
    let outer = tap_stages - 1;
    let mode_count = 12 + 4 * outer;
    let mut els = Vec::new();
    let mut toggles = BTreeSet::new();
    let mut detectors = vec![
        ("D6".to_string(), 6),
        ("D7".to_string(), 7),
        ("D10".to_string(), 10),
        ("D11".to_string(), 11),
    ];

    els.push(CircuitElement::beam_splitter("BS1", 0, 1, couplers.main));
    let [first_up, first_lo, _, _] = stage_modes(outer);
    let label = |stage: usize, arm: &str| format!("route{arm}{}", primes(stage));
    els.push(CircuitElement::swap(&label(outer, "2"), 0, first_up));
    els.push(CircuitElement::swap(&label(outer, "3"), 1, first_lo));
    els.push(CircuitElement::phase("PC", first_up, "phi_C"));

    for stage in (1..=outer).rev() {
        let p = primes(stage);
        let [up, lo, d6, d7] = stage_modes(stage);
        let tap = couplers.tap(stage);
        els.push(CircuitElement::beam_splitter(
            &format!("BS4{p}"),
            up,
            d6,
            tap,
        ));
        els.push(CircuitElement::beam_splitter(
            &format!("BS5{p}"),
            lo,
            d7,
            tap,
        ));
        els.push(CircuitElement::phase(
            &format!("PS{p}"),
            d7,
            &format!("phi_S{p}"),
        ));
        let closing = format!("BS2{p}");
        els.push(CircuitElement::beam_splitter(
            &closing,
            d6,
            d7,
            couplers.main,
        ));
        toggles.insert(closing);
        let [next_up, next_lo, _, _] = stage_modes(stage - 1);
        els.push(CircuitElement::swap(&label(stage - 1, "2"), up, next_up));
        els.push(CircuitElement::swap(&label(stage - 1, "3"), lo, next_lo));
        detectors.push((format!("D6{p}"), d6));
        detectors.push((format!("D7{p}"), d7));
    }

    let tap = couplers.tap(0);
    els.push(CircuitElement::beam_splitter("BS4", 2, 7, tap));
    els.push(CircuitElement::beam_splitter("BS5", 3, 6, tap));
    if inner_closed {
        els.push(CircuitElement::phase("PS", 6, "phi_S"));
        els.push(CircuitElement::beam_splitter("BS2", 7, 6, couplers.main));
        toggles.insert("BS2".to_string());
    }
    els.push(CircuitElement::swap("M1", 2, 8));
    els.push(CircuitElement::swap("M2", 3, 9));
    els.push(CircuitElement::phase("PB", 9, "phi_B"));
    els.push(CircuitElement::beam_splitter("BS3", 8, 9, couplers.main));
    els.push(CircuitElement::swap("route10", 8, 10));
    els.push(CircuitElement::swap("route11", 9, 11));

    Circuit::new(mode_count, els, detectors, toggles)
}

/// Mach-Zehnder interferometer (BS1, BS3) with a tap splitter in each arm and
/// detectors D6, D7 on the taps: which-path information is available.
pub fn fig1(couplers: &Couplers) -> Circuit {
    build(1, false, couplers).expect("preset is valid")
}

/// [`fig1`] with the taps recombined on a removable BS2 behind delay `φ_S`.
pub fn fig2(couplers: &Couplers) -> Circuit {
    build(1, true, couplers).expect("preset is valid")
}

/// Three braced interferometers: [`fig2`] behind an outer tap stage
/// (BS4p, BS5p, removable BS2p, delay `φ_Sp`, detectors D6p, D7p).
pub fn fig3(couplers: &Couplers) -> Circuit {
    build(2, true, couplers).expect("preset is valid")
}

/// `stages` braced interferometers (detector pairs), `3 ≤ stages ≤ 5`.
pub fn braced_n(stages: usize, couplers: &Couplers) -> Result<Circuit> {
    if !(MIN_STAGES..=MAX_STAGES).contains(&stages) {
        return Err(Error::UnsupportedStages(stages));
    }
    build(stages - 1, true, couplers)
}

/// Preset by name with balanced couplers: `fig1`, `fig2`, `fig3`,
/// `braced_n(N)` (also `braced:N`).
pub fn preset(name: &str) -> Result<Circuit> {
    let couplers = Couplers::default();
    match name {
        "fig1" => Ok(fig1(&couplers)),
        "fig2" => Ok(fig2(&couplers)),
        "fig3" => Ok(fig3(&couplers)),
        _ => {
            let n = name
                .strip_prefix("braced_n(")
                .and_then(|s| s.strip_suffix(')'))
                .or_else(|| name.strip_prefix("braced:"))
                .ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| Error::UnknownPreset(name.to_string()))?;
            braced_n(n, &couplers)
        }
    }
}
