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

//! Fock-state simulation of passive linear-optical interferometers.
//!
//! Overview
//! ========
//!
//! `mzsim-core` evolves multimode bosonic Fock states through networks of
//! beam splitters and phase delays, and evaluates coincidence probabilities,
//! reduced density matrices and fringe visibilities at the detectors. It is
//! built around braced Mach-Zehnder interferometers, where tapping a photon out
//! of each arm can hand an observer which-path information, and where a second
//! beam splitter in front of the tap detectors erases it again.
//!
//! * [`fock`]: occupation vectors and sparse pure states.
//! * [`optics`]: beam-splitter and phase unitaries, state evolution, and a
//!   permanent-based amplitude oracle.
//! * [`circuit`]: the `.mzc` circuit format, built-in presets and compilation
//!   to a mode unitary.
//! * [`measurement`]: detection patterns, density matrices and partial traces.
//! * [`scenarios`]: phase sweeps, sinusoid fits and the experiment catalogue.
//!
//! ```
//! use mzsim_core::{circuit, fock::FockState, measurement::DetectionPattern};
//!
//! let fig1 = circuit::preset("fig1").unwrap();
//! let phases = circuit::PhaseAssignment::from_pairs([("phi_C", 0.0), ("phi_B", 0.0)]);
//! let u = fig1.compile(&phases, &Default::default()).unwrap();
//! let input = FockState::basis(fig1.mode_count(), &[(0, 1), (1, 1)]).unwrap();
//! let out = mzsim_core::optics::evolve(&input, &u).unwrap();
//! let pattern = DetectionPattern::parse("D10:1,D11:1").unwrap().resolve(&fig1).unwrap();
//! let p = mzsim_core::measurement::pattern_probability(&out, &pattern);
//! assert!((p - 0.25).abs() < 1e-12);
//! ```

pub mod circuit;
pub mod error;
pub mod fock;
pub mod measurement;
pub mod optics;
pub mod scenarios;

pub use circuit::{Circuit, CircuitElement, ElementKind, PhaseAssignment};
pub use error::{Error, Result};
pub use fock::{FockState, OccupationVector};
pub use measurement::{DensityMatrix, DetectionPattern, ModePattern};
pub use num_complex::Complex64;
pub use optics::{BeamSplitterCoeffs, ModeUnitary};
