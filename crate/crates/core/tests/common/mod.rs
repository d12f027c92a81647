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

//! Shared fixtures for the integration tests: seeded randomness, coupler
//! draws and closed-form output states.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use mzsim_core::circuit::{Circuit, Couplers, PhaseAssignment};
use mzsim_core::optics::evolve;
use mzsim_core::{BeamSplitterCoeffs, Complex64, FockState, OccupationVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn cis(phi: f64) -> Complex64 {
    Complex64::from_polar(1.0, phi)
}

/// `T = cos θ e^{iα}`, `R = ±i sin θ e^{iα}`.
pub fn random_tap(rng: &mut impl Rng) -> BeamSplitterCoeffs {
    let theta = rng.gen_range(0.0..PI / 2.0);
    let alpha = rng.gen_range(0.0..2.0 * PI);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    BeamSplitterCoeffs::new(
        Complex64::from_polar(theta.cos(), alpha),
        c(0.0, sign * theta.sin()) * cis(alpha),
    )
    .unwrap()
}

pub fn random_phase(rng: &mut impl Rng) -> f64 {
    rng.gen_range(0.0..2.0 * PI)
}

pub fn phases(pairs: &[(&str, f64)]) -> PhaseAssignment {
    PhaseAssignment::from_pairs(pairs.iter().copied())
}

pub fn toggles(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Every subset of the circuit's toggles.
pub fn toggle_subsets(circuit: &Circuit) -> Vec<BTreeSet<String>> {
    let all: Vec<&String> = circuit.toggles().iter().collect();
    (0..1usize << all.len())
        .map(|mask| {
            all.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| (*s).clone())
                .collect()
        })
        .collect()
}

pub fn run(
    circuit: &Circuit,
    input: &FockState,
    ph: &PhaseAssignment,
    on: &BTreeSet<String>,
) -> FockState {
    evolve(input, &circuit.compile(ph, on).unwrap()).unwrap()
}

/// Sparse ket over the 12 modes of the two-detector-pair layouts.
pub type Ket = Vec<(usize, usize)>;

/// Named groups of `(ket, amplitude)` terms.
pub type Families = Vec<(&'static str, Vec<(Ket, Complex64)>)>;

/// Largest amplitude error of each family against `state`.
pub fn family_errors(state: &FockState, families: &Families) -> Vec<(&'static str, f64)> {
    families
        .iter()
        .map(|(name, terms)| {
            let err = terms
                .iter()
                .map(|(ket, amp)| (state.amplitude_of(ket) - amp).norm())
                .fold(0.0, f64::max);
            (*name, err)
        })
        .collect()
}

/// Norm not covered by any family term: must vanish if the families list the
/// whole state.
pub fn uncovered_weight(state: &FockState, families: &Families) -> f64 {
    let kets: Vec<OccupationVector> = families
        .iter()
        .flat_map(|(_, t)| t.iter())
        .map(|(k, _)| OccupationVector::from_sparse(state.mode_count(), k).unwrap())
        .collect();
    state
        .iter()
        .filter(|(o, _)| !kets.contains(o))
        .map(|(_, a)| a.norm_sqr())
        .fold(0.0, |acc, w| acc + w)
}

/// Which-path output for `|1,1⟩`, terms as printed in the reference
/// derivation (balanced BS1, BS3).
pub fn which_path_printed(t1: Complex64, r1: Complex64, pc: f64, pb: f64) -> Families {
    which_path(t1, r1, pc, pb, 1.0)
}

/// Same state with every `D7` term carrying `e^{2iφ_C}`: both photons reaching
/// D7 crossed the upper-arm delay, as the single-photon maps already imply.
pub fn which_path_consistent(t1: Complex64, r1: Complex64, pc: f64, pb: f64) -> Families {
    which_path(t1, r1, pc, pb, 2.0)
}

fn which_path(t1: Complex64, r1: Complex64, pc: f64, pb: f64, d7_power: f64) -> Families {
    let s = FRAC_1_SQRT_2;
    let db = pb - pc;
    let g = t1 * t1 * cis(pc + pb);
    let d7 = cis(d7_power * pc);
    let x = t1 * r1 * s;
    vec![
        (
            "outer",
            vec![
                (vec![(10, 2)], g * s * db.sin()),
                (vec![(11, 2)], -g * s * db.sin()),
                (vec![(10, 1), (11, 1)], -g * db.cos()),
            ],
        ),
        (
            "inner",
            vec![
                (vec![(6, 2)], c(0.0, s) * r1 * r1),
                (vec![(7, 2)], c(0.0, s) * r1 * r1 * d7),
            ],
        ),
        (
            "cross",
            vec![
                (vec![(6, 1), (10, 1)], -x * cis(pb)),
                (vec![(7, 1), (10, 1)], c(0.0, 1.0) * x * d7),
                (vec![(6, 1), (11, 1)], c(0.0, 1.0) * x * cis(pb)),
                (vec![(7, 1), (11, 1)], -x * d7),
            ],
        ),
    ]
}

/// Braced-interferometer output for `|1,1⟩` as printed (balanced BS1-3).
pub fn braced_printed(t1: Complex64, r1: Complex64, pc: f64, pb: f64, ps: f64) -> Families {
    braced(t1, r1, pc, pb, ps, c(1.0, 0.0))
}

/// Same state with the cross family carrying the extra `−e^{iφ_C}` that the
/// single-photon maps produce.
pub fn braced_consistent(t1: Complex64, r1: Complex64, pc: f64, pb: f64, ps: f64) -> Families {
    braced(t1, r1, pc, pb, ps, -cis(pc))
}

fn braced(t1: Complex64, r1: Complex64, pc: f64, pb: f64, ps: f64, cross: Complex64) -> Families {
    let s = FRAC_1_SQRT_2;
    let (db, ds) = (pb - pc, ps - pc);
    let h = (db + ds) / 2.0;
    let g = t1 * t1 * cis(pc + pb);
    let r = r1 * r1 * cis(pc + ps);
    let x = cross * t1 * r1 * cis((pb + ps) / 2.0);
    vec![
        (
            "outer",
            vec![
                (vec![(10, 2)], g * s * db.sin()),
                (vec![(11, 2)], -g * s * db.sin()),
                (vec![(10, 1), (11, 1)], -g * db.cos()),
            ],
        ),
        (
            "inner",
            vec![
                (vec![(6, 1), (7, 1)], -r * ds.cos()),
                (vec![(7, 2)], r * s * ds.sin()),
                (vec![(6, 2)], -r * s * ds.sin()),
            ],
        ),
        (
            "cross",
            vec![
                (vec![(6, 1), (10, 1)], x * h.cos()),
                (vec![(6, 1), (11, 1)], x * h.sin()),
                (vec![(7, 1), (10, 1)], -x * h.sin()),
                (vec![(7, 1), (11, 1)], x * h.cos()),
            ],
        ),
    ]
}

/// Couplers with the given inner (and optional outer) tap.
pub fn couplers(taps: &[BeamSplitterCoeffs]) -> Couplers {
    Couplers::with_taps(taps.to_vec())
}

/// `(max − min)/(max + min)` over the samples; 0 for an all-zero scan.
pub fn sample_visibility(samples: &[(f64, f64)]) -> f64 {
    let max = samples.iter().map(|s| s.1).fold(f64::MIN, f64::max);
    let min = samples.iter().map(|s| s.1).fold(f64::MAX, f64::min);
    if max + min <= 0.0 {
        0.0
    } else {
        (max - min) / (max + min)
    }
}

/// All ways to place `n` photons on the given modes.
pub fn distributions(modes: &[usize], n: usize) -> Vec<Vec<(usize, usize)>> {
    match modes.split_first() {
        None => {
            if n == 0 {
                vec![vec![]]
            } else {
                vec![]
            }
        }
        Some((&first, rest)) => (0..=n)
            .flat_map(|k| {
                distributions(rest, n - k).into_iter().map(move |mut d| {
                    if k > 0 {
                        d.insert(0, (first, k));
                    }
                    d
                })
            })
            .collect(),
    }
}
